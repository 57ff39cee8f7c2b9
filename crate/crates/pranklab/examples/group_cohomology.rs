//! First group cohomology: cocycle spaces, restriction to subgroups, and
//! locally trivial classes.
//!
//! Run with: cargo run --example group_cohomology

use pranklab::cohomology::{h1_restriction_matrix, locally_trivial_dim, z1_b1};
use pranklab::field::FieldCtx;
use pranklab::group::FiniteGroup;
use pranklab::rep::Rep;
use std::sync::Arc;

fn main() {
    let f3 = Arc::new(FieldCtx::new(3, 1).unwrap());

    // H^1(Z/3, k) is one-dimensional in characteristic 3
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let triv = Rep::trivial(z3.clone(), f3.clone());
    let coc = z1_b1(&triv).unwrap();
    println!(
        "Z/3 with trivial coefficients: dim Z^1 = {}, dim B^1 = {}, dim H^1 = {}",
        coc.z1.cols(),
        coc.b1.cols(),
        coc.h1_dim()
    );

    // restriction to the whole group is injective, to the trivial subgroup zero
    let all: Vec<u32> = z3.elements().collect();
    let r_full = h1_restriction_matrix(&triv, &coc, &all).unwrap();
    println!("restriction to the full group has rank {}", r_full.rank(&f3));
    println!(
        "locally trivial classes with stabilizer list [Z/3]: {}",
        locally_trivial_dim(&triv, &[all]).unwrap()
    );
    println!(
        "locally trivial classes with no stabilizers: {}",
        locally_trivial_dim(&triv, &[]).unwrap()
    );

    // index prime to p makes restriction injective: S3 restricted to its Sylow
    let s3 = Arc::new(FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap());
    let triv_s3 = Rep::trivial(s3.clone(), f3.clone());
    let coc_s3 = z1_b1(&triv_s3).unwrap();
    let sylow = s3.sylow(3);
    let restr = h1_restriction_matrix(&triv_s3, &coc_s3, &sylow).unwrap();
    println!(
        "S3: dim H^1(S3, k) = {} and the Sylow restriction has rank {}",
        coc_s3.h1_dim(),
        restr.rank(&f3)
    );
}
