//! Modular representation theory of S3 in characteristic 3: simple modules,
//! projective covers, loop spaces, cores and summand multiplicities.
//!
//! Run with: cargo run --example modular_representations

use pranklab::field::FieldCtx;
use pranklab::group::FiniteGroup;
use pranklab::pims::GroupAlgebra;
use pranklab::rep::Rep;
use std::sync::Arc;

fn main() {
    let s3 = Arc::new(FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap());
    let f3 = Arc::new(FieldCtx::new(3, 1).unwrap());
    let ga = GroupAlgebra::new(s3.clone(), f3.clone()).unwrap();

    println!("group: S3, coefficient field: GF(3)");
    println!("simple modules: {:?}", ga.simples.iter().map(|s| s.dim).collect::<Vec<_>>());
    println!("radical dimension of k[S3]: {}", ga.radical_dim());
    println!(
        "projective indecomposables: {:?}",
        ga.pims.iter().map(|p| p.dim).collect::<Vec<_>>()
    );

    // the trivial module is not projective; its cover is P(S0)
    let triv = Rep::trivial(s3.clone(), f3.clone());
    let (cover, _pi) = ga.projective_cover(&triv);
    println!("projective cover of the trivial module has dimension {}", cover.dim);

    // loop spaces: kernel of the cover, always projective-free
    let omega = ga.loop_space(&triv, 1);
    println!("first loop space of the trivial module: dim {}", omega.dim);
    let omega2 = ga.loop_space(&triv, 2);
    println!(
        "second loop space is the sign module again: {}",
        omega2.iso_test(&ga.simples[1], 0).is_yes() || omega2.iso_test(&triv, 0).is_yes()
    );

    // core extraction on a mixed module
    let reg = Rep::regular(s3.clone(), f3.clone());
    let mixed = omega.direct_sum(&reg);
    let (core, stripped) = ga.core(&mixed);
    println!(
        "core of (loop space + k[S3]): dim {}, stripped projective summands: {:?}",
        core.dim,
        stripped.iter().map(|&i| format!("P(S{i})")).collect::<Vec<_>>()
    );
    println!("multiplicity table of k[S3]: {:?}", ga.borne_table(&reg));

    // full decomposition with Krull-Schmidt-stable summand dimensions
    let parts = ga.decompose(&mixed, 0).unwrap();
    println!(
        "indecomposable summand dimensions of the mixed module: {:?}",
        parts.iter().map(|r| r.dim).collect::<Vec<_>>()
    );
}
