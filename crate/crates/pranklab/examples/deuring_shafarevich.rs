//! The Deuring-Shafarevich formula on Artin-Schreier curves: for the Z/p
//! translation action, h_X - 1 = p (h_Y - 1) + sum (|G_x| - 1), which for s
//! simple affine poles gives p-rank (s-1)(p-1).
//!
//! Run with: cargo run --example deuring_shafarevich

use pranklab::curve::autos::{AutoMap, EquivCurve};
use pranklab::curve::omega::prank;
use pranklab::curve::quot::quotient_data;
use pranklab::curve::ratfun::RatFun;
use pranklab::curve::{CurveSpec, Family};
use pranklab::field::FieldCtx;
use pranklab::poly::Poly;
use std::sync::Arc;

fn main() {
    for p in [2u64, 3, 5] {
        // a field with three affine rational points for the poles
        let k = if p == 2 { 2 } else { 1 };
        let f = Arc::new(FieldCtx::new(p, k).unwrap());
        println!("characteristic {p} (working over GF({}^{k})):", p);
        for s in 1..=3usize {
            let mut rat = RatFun::zero();
            for c in f.elements().take(s) {
                let den = Poly::from_coeffs(vec![f.neg(c), 1]);
                rat = rat.add(&f, &RatFun::new(&f, Poly::one(), den));
            }
            let curve = CurveSpec::build(f.clone(), Family::ArtinSchreier { f: rat }).unwrap();
            let genus = curve.genus;
            let eq = EquivCurve::new(curve, &[AutoMap::as_translation(1)], &[]).unwrap();
            let h_x = prank(&eq).unwrap();
            let all: Vec<u32> = eq.group.elements().collect();
            let qd = quotient_data(&eq, &all).unwrap();
            let h_y = prank(&qd.quotient).unwrap();
            let ram: i64 = eq.stabilizers.iter().map(|st| st.len() as i64 - 1).sum();
            let balanced = h_x as i64 - 1 == p as i64 * (h_y as i64 - 1) + ram;
            println!(
                "  s = {s} poles: genus {genus}, p-rank {h_x} (expected {}), formula balances: {balanced}",
                (s - 1) * (p as usize - 1)
            );
        }
    }
}
