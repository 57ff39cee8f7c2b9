//! Structure theory of p-linear maps: stable/nilpotent decomposition, fixed
//! vectors, and duality.
//!
//! Run with: cargo run --example semilinear_structure

use pranklab::{FieldCtx, Mat, SemilinearMap, Twist};

fn main() {
    let f9 = FieldCtx::new(3, 2).unwrap();
    println!(
        "working in GF(9), defining polynomial coefficients (low to high): {:?}",
        f9.modulus()
    );

    // a p-linear map F(v) = A v^[3] mixing a bijective and a nilpotent part
    let a = Mat::from_rows(vec![
        vec![1, 0, 4, 0],
        vec![0, 2, 0, 5],
        vec![0, 0, 0, 7],
        vec![0, 0, 0, 0],
    ]);
    let map = SemilinearMap::new(a, Twist::PLinear);
    let (vs, vn) = map.stable_decomposition(&f9);
    println!(
        "dim V = 4 splits as dim V^s = {} (bijective part) + dim V^n = {} (nilpotent part)",
        vs.cols(),
        vn.cols()
    );
    println!("stable rank: {}", map.stable_rank(&f9));

    // the dual 1/p-linear map has the same stable rank
    let dual = map.dualize(&f9);
    println!(
        "dual map twist: {:?}, stable rank: {}",
        dual.twist,
        dual.stable_rank(&f9)
    );

    // counting fixed vectors of the untwisted identity: the prime field
    let id = SemilinearMap::new(Mat::identity(2), Twist::PLinear);
    println!(
        "fixed vectors of v -> v^[3] on GF(9)^2: 3^{} (the prime-field points)",
        id.fixed_space_count(&f9).unwrap()
    );
}
