//! Projective multiplicities of quotient curves: on the fiber product
//! y^2 = x(x-1)(x-lambda), z^3 - z = 1/x with its order-6 group, compare
//! b(G,T) + d(G,X,T) against b(H,T) + d(H,Y,T) for the quotient by the
//! translation subgroup.
//!
//! Run with: cargo run --example quotient_invariants

use pranklab::job::{build_job, JobConfig};

fn main() {
    let config = r#"{
        "field": {"p": 3, "k": 3},
        "curve": {"family": "as_x_hyper", "f": "1/x", "h": "x*(x-1)*(x-g^25)"},
        "group": [
            {"kind": "as_translation", "c": 1},
            {"kind": "hyperelliptic_involution"}
        ],
        "divisor": [],
        "normal_subgroup": [0],
        "command": "all",
        "seed": 0
    }"#;
    let cfg: JobConfig = serde_json::from_str(config).unwrap();
    let job = build_job(cfg).unwrap();
    println!(
        "curve genus {}, group order {}, {} marked places ({} with nontrivial stabilizer)",
        job.eq.curve.genus,
        job.eq.group.order(),
        job.eq.places.len(),
        job.eq.r_count()
    );
    let report = job.run("all").unwrap();
    println!("p-rank: {}", report.p_rank);
    println!("projective multiplicities of the differential module:");
    for (label, b) in &report.borne {
        println!("  b(G, {label}) = {b}");
    }
    println!("verdicts:");
    for (label, v) in &report.verdicts {
        println!("  {label}: {} [{} | {}]", v.status, v.lhs, v.rhs);
    }
    std::process::exit(report.exit_code());
}
