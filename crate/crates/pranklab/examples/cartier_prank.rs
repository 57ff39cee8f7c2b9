//! Curves, differentials and the Cartier operator: holomorphic bases,
//! Cartier matrices, and p-ranks, including the Hasse-invariant sweep on the
//! Legendre family.
//!
//! Run with: cargo run --example cartier_prank

use pranklab::curve::autos::{AutoMap, EquivCurve};
use pranklab::curve::omega::{cartier_matrix, omega_basis, prank};
use pranklab::curve::ratfun::parse_rational_function;
use pranklab::curve::{CurveSpec, Family};
use pranklab::field::FieldCtx;
use pranklab::poly::Poly;
use std::sync::Arc;

fn main() {
    // an Artin-Schreier curve with two wild points: z^3 - z = 1/x + 1/(x-1)
    let f3 = Arc::new(FieldCtx::new(3, 1).unwrap());
    let f = parse_rational_function(&f3, "1/x + 1/(x-1)").unwrap();
    let curve = CurveSpec::build(f3.clone(), Family::ArtinSchreier { f }).unwrap();
    println!("z^3 - z = 1/x + 1/(x-1): genus {}", curve.genus);
    let eq = EquivCurve::new(curve, &[AutoMap::as_translation(1)], &[]).unwrap();
    let space = omega_basis(&eq, &eq.empty_divisor()).unwrap();
    println!("holomorphic differentials: dimension {}", space.dim());
    let gamma = cartier_matrix(&eq, &space);
    println!("Cartier matrix (twist {:?}):", gamma.twist);
    for i in 0..gamma.dim() {
        let row: Vec<u64> = (0..gamma.dim()).map(|j| gamma.mat[(i, j)]).collect();
        println!("  {row:?}");
    }
    println!("p-rank: {}", prank(&eq).unwrap());
    println!("marked places: {} (of which {} have nontrivial stabilizer)", eq.places.len(), eq.r_count());

    // Hasse sweep: y^2 = x(x-1)(x-lambda) over GF(9) is supersingular exactly
    // at lambda = 2, where the Cartier matrix vanishes
    let f9 = Arc::new(FieldCtx::new(3, 2).unwrap());
    println!("\nLegendre family over GF(9): lambda -> p-rank");
    for lam in f9.elements() {
        if lam == 0 || lam == 1 {
            continue;
        }
        let x = Poly::x();
        let h = x
            .mul(&f9, &Poly::from_coeffs(vec![f9.neg(1), 1]))
            .mul(&f9, &Poly::from_coeffs(vec![f9.neg(lam), 1]));
        let curve = CurveSpec::build(f9.clone(), Family::Hyperelliptic { h }).unwrap();
        let eq = EquivCurve::plain(curve).unwrap();
        println!("  lambda = {lam}: p-rank {}", prank(&eq).unwrap());
    }
}
