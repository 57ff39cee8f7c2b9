//! The core formula end-to-end: the non-projective part of the module of
//! semisimple differentials is computed twice, once geometrically (Cartier
//! stable part, then core extraction) and once from ramification data alone
//! (loop space of the permutation module on the fixed places), and the two
//! results are matched by an explicit isomorphism.
//!
//! Run with: cargo run --example core_formula

use pranklab::curve::autos::{AutoMap, EquivCurve};
use pranklab::curve::omega::prank_rep;
use pranklab::curve::ram::core_module;
use pranklab::curve::ratfun::parse_rational_function;
use pranklab::curve::{CurveSpec, Family};
use pranklab::field::FieldCtx;
use pranklab::pims::GroupAlgebra;
use pranklab::rep::IsoOutcome;
use std::sync::Arc;

fn main() {
    let f3 = Arc::new(FieldCtx::new(3, 1).unwrap());
    let f = parse_rational_function(&f3, "1/x + 1/(x-1)").unwrap();
    let curve = CurveSpec::build(f3.clone(), Family::ArtinSchreier { f }).unwrap();
    let eq = EquivCurve::new(curve, &[AutoMap::as_translation(1)], &[]).unwrap();
    let ga = GroupAlgebra::new(eq.group.clone(), eq.ctx().clone()).unwrap();

    println!("curve: z^3 - z = 1/x + 1/(x-1), group: Z/3 by z-translations");

    // geometric side: semisimple differentials, then strip projectives
    let v = prank_rep(&eq, &eq.empty_divisor()).unwrap();
    println!("semisimple differential module V has dimension {}", v.dim);
    let (core, stripped) = ga.core(&v);
    println!(
        "core of V: dimension {}, projective summands stripped: {}",
        core.dim,
        stripped.len()
    );

    // arithmetic side: the loop space of the ramification module
    let c = core_module(&eq, &ga, &eq.empty_divisor()).unwrap();
    println!("loop space of the ramification module: dimension {}", c.dim);

    match core.iso_test(&c, 0) {
        IsoOutcome::Yes(w) => {
            println!("the two sides are isomorphic; witness is a {}x{} matrix", w.rows(), w.cols());
        }
        other => println!("unexpected outcome: {other:?}"),
    }

    // the congruence that falls out: p-rank = 1 - r modulo p
    let h = v.dim as i64;
    let r = eq.r_count() as i64;
    println!(
        "congruence: p-rank {} = 1 - {} (mod 3) is {}",
        h,
        r,
        (h - (1 - r)) % 3 == 0
    );
}
