//! Configuration ingestion, verification commands, and reporting.
//!
//! A job is described by a JSON config naming the field, the curve, the
//! automorphism generators, an optional divisor and normal subgroup, a
//! command and a seed. Every command produces a [`VerificationReport`] whose
//! serialization is byte-identical across runs with the same config and seed
//! (wall-clock timing goes to stderr, not into the report). Verdicts are
//! tri-state: a `holds` is only emitted when two independently computed sides
//! agree, and an undecided isomorphism search reports `inconclusive`, never
//! `holds`.

use crate::cohomology;
use crate::curve::autos::{AutoMap, EquivCurve};
use crate::curve::omega::{prank, prank_rep};
use crate::curve::quot::{quotient_data, QuotientData};
use crate::curve::ram::core_module;
use crate::curve::ratfun::{parse_field_element, parse_rational_function};
use crate::curve::{BasePoint, CurveError, CurveSpec, Divisor, Family};
use crate::field::{splitting_field_degree, FieldCtx};
use crate::pims::GroupAlgebra;
use crate::rep::{IsoOutcome, Rep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("config I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0}")]
    Algebra(#[from] crate::pims::PimsError),
}

fn invalid(path: &str, message: impl Into<String>) -> JobError {
    JobError::Invalid { path: path.into(), message: message.into() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldCfg {
    pub p: u64,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveCfg {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

/// Field-element parameters accept either a JSON integer or a literal string
/// like "g^2".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemCfg {
    Int(i64),
    Literal(String),
}

impl ElemCfg {
    fn resolve(&self, ctx: &FieldCtx, path: &str) -> Result<u64, JobError> {
        match self {
            ElemCfg::Int(n) => Ok(ctx.from_int(*n)),
            ElemCfg::Literal(s) => {
                parse_field_element(ctx, s).map_err(|e| invalid(path, e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutoCfg {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<ElemCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElemCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ElemCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<ElemCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<ElemCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ElemCfg>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorCfg {
    /// Base x-value: "inf" or a field-element literal; selects all places of
    /// the curve over this value.
    pub x: String,
    #[serde(default = "default_mult")]
    pub mult: usize,
}

fn default_mult() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobConfig {
    pub field: FieldCfg,
    pub curve: CurveCfg,
    #[serde(default)]
    pub group: Vec<AutoCfg>,
    #[serde(default)]
    pub divisor: Vec<DivisorCfg>,
    #[serde(default)]
    pub normal_subgroup: Option<Vec<usize>>,
    pub command: String,
    #[serde(default)]
    pub seed: u64,
}

pub fn load_config(path: &std::path::Path) -> Result<JobConfig, JobError> {
    let text = std::fs::read_to_string(path)?;
    let cfg: JobConfig = serde_json::from_str(&text)?;
    Ok(cfg)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreSummary {
    pub dim: usize,
    pub summand_dims: Vec<usize>,
    pub fingerprint: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    fn holds(lhs: impl Into<String>, rhs: impl Into<String>, witness: Option<String>) -> Verdict {
        Verdict { status: "holds".into(), lhs: lhs.into(), rhs: rhs.into(), witness }
    }

    fn fails(lhs: impl Into<String>, rhs: impl Into<String>) -> Verdict {
        Verdict { status: "fails".into(), lhs: lhs.into(), rhs: rhs.into(), witness: None }
    }

    fn inconclusive(lhs: impl Into<String>, rhs: impl Into<String>) -> Verdict {
        Verdict {
            status: "inconclusive".into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: None,
        }
    }

    fn from_bool(ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Verdict {
        if ok {
            Verdict::holds(lhs, rhs, None)
        } else {
            Verdict::fails(lhs, rhs)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub inputs: JobConfig,
    pub genus: usize,
    pub p_rank: usize,
    pub r: usize,
    pub p_part: u64,
    pub core: Option<CoreSummary>,
    pub borne: BTreeMap<String, usize>,
    pub lt_dims: BTreeMap<String, usize>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub seed: u64,
    pub timing_ms: u64,
}

impl VerificationReport {
    /// Exit-code contract: 0 when everything holds, 2 on any failure, 3 when
    /// something was inconclusive (failures dominate).
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.values().any(|v| v.status == "fails") {
            2
        } else if self.verdicts.values().any(|v| v.status == "inconclusive") {
            3
        } else {
            0
        }
    }

    /// Canonical serialization: JSON with alphabetically sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report prints")
    }
}

pub fn emit_report(report: &VerificationReport, out: Option<&std::path::Path>) -> Result<i32, JobError> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(report.exit_code())
}

/// A fully resolved job: curve, group, algebra and divisor.
pub struct Job {
    pub cfg: JobConfig,
    pub eq: EquivCurve,
    pub algebra: GroupAlgebra,
    pub divisor: Divisor,
    pub normal: Option<Vec<u32>>,
}

pub fn build_job(cfg: JobConfig) -> Result<Job, JobError> {
    let ctx = Arc::new(
        FieldCtx::new(cfg.field.p, cfg.field.k)
            .map_err(|e| invalid("field", e.to_string()))?,
    );
    let family = match cfg.curve.family.as_str() {
        "proj_line" => Family::ProjLine,
        "hyperelliptic" => {
            let h = cfg
                .curve
                .h
                .as_ref()
                .ok_or_else(|| invalid("curve.h", "hyperelliptic curves need h"))?;
            let h = parse_rational_function(&ctx, h)
                .map_err(|e| invalid("curve.h", e.to_string()))?;
            if h.den.deg() != 0 {
                return Err(invalid("curve.h", "h must be a polynomial"));
            }
            Family::Hyperelliptic { h: h.num }
        }
        "artin_schreier" => {
            let f = cfg
                .curve
                .f
                .as_ref()
                .ok_or_else(|| invalid("curve.f", "Artin-Schreier curves need f"))?;
            let f = parse_rational_function(&ctx, f)
                .map_err(|e| invalid("curve.f", e.to_string()))?;
            Family::ArtinSchreier { f }
        }
        "as_x_hyper" => {
            let f = cfg
                .curve
                .f
                .as_ref()
                .ok_or_else(|| invalid("curve.f", "fiber products need f"))?;
            let f = parse_rational_function(&ctx, f)
                .map_err(|e| invalid("curve.f", e.to_string()))?;
            let h = cfg
                .curve
                .h
                .as_ref()
                .ok_or_else(|| invalid("curve.h", "fiber products need h"))?;
            let h = parse_rational_function(&ctx, h)
                .map_err(|e| invalid("curve.h", e.to_string()))?;
            if h.den.deg() != 0 {
                return Err(invalid("curve.h", "h must be a polynomial"));
            }
            Family::AsXHyper { f, h: h.num }
        }
        other => return Err(invalid("curve.family", format!("unknown family {other:?}"))),
    };
    let curve = CurveSpec::build(ctx.clone(), family)?;

    let mut autos = Vec::new();
    for (i, a) in cfg.group.iter().enumerate() {
        let path = format!("group[{i}]");
        let map = match a.kind.as_str() {
            "as_translation" => {
                let c = a
                    .c
                    .as_ref()
                    .ok_or_else(|| invalid(&path, "as_translation needs c"))?
                    .resolve(&ctx, &path)?;
                if c >= ctx.prime() {
                    return Err(invalid(&path, "c must lie in the prime field"));
                }
                AutoMap::as_translation(c)
            }
            "hyperelliptic_involution" => AutoMap::hyperelliptic_involution(&ctx),
            "x_symmetry" => {
                let get = |v: &Option<ElemCfg>, dflt: u64| -> Result<u64, JobError> {
                    v.as_ref().map_or(Ok(dflt), |e| e.resolve(&ctx, &path))
                };
                AutoMap::x_symmetry(
                    get(&a.a, 1)?,
                    get(&a.b, 0)?,
                    get(&a.mu, 1)?,
                    get(&a.eps, 1)?,
                    get(&a.gamma, 0)?,
                )
            }
            other => return Err(invalid(&path, format!("unknown automorphism kind {other:?}"))),
        };
        autos.push(map);
    }

    // divisor bases become marked places
    let mut extra_bases = Vec::new();
    let mut parsed_selectors = Vec::new();
    for (i, sel) in cfg.divisor.iter().enumerate() {
        let path = format!("divisor[{i}]");
        let base = if sel.x == "inf" {
            BasePoint::Infinity
        } else {
            let v = parse_field_element(&ctx, &sel.x).map_err(|e| invalid(&path, e.to_string()))?;
            BasePoint::Finite(v)
        };
        extra_bases.push(base);
        parsed_selectors.push((base, sel.mult, path));
    }

    let eq = EquivCurve::new(curve, &autos, &extra_bases).map_err(|e| match e {
        CurveError::NotAnAutomorphism(m) => invalid("group", m),
        other => JobError::Curve(other),
    })?;

    // splitting-field requirement
    let m = eq.group.exponent_p_prime_part(ctx.prime());
    let need = splitting_field_degree(m, ctx.prime()).expect("p-prime part");
    if ctx.degree() % need != 0 {
        return Err(invalid(
            "field.k",
            format!(
                "GF({}^{}) is not a splitting field for the group; k must be a multiple of {need}",
                ctx.prime(),
                ctx.degree()
            ),
        ));
    }

    let mut divisor = eq.empty_divisor();
    for (base, mult, path) in parsed_selectors {
        let mut hit = false;
        for (i, pl) in eq.places.iter().enumerate() {
            if pl.base == base {
                divisor.mults[i] += mult;
                hit = true;
            }
        }
        if !hit {
            return Err(invalid(&path, format!("no place over {base}")));
        }
    }
    if !eq.is_invariant(&divisor) {
        return Err(invalid("divisor", "divisor is not invariant under the group"));
    }

    let normal = match &cfg.normal_subgroup {
        None => None,
        Some(indices) => {
            let mut gens = Vec::new();
            for &i in indices {
                if i >= autos.len() {
                    return Err(invalid(
                        "normal_subgroup",
                        format!("index {i} out of range of the group list"),
                    ));
                }
                // locate the element realizing this declared generator
                let g = eq
                    .autos
                    .iter()
                    .position(|s| *s == autos[i])
                    .expect("declared generators are in the closure") as u32;
                gens.push(g);
            }
            let sub = eq.group.subgroup_closure(&gens);
            if !eq.group.is_normal(&sub) {
                return Err(invalid("normal_subgroup", "generated subgroup is not normal"));
            }
            Some(sub)
        }
    };

    let algebra = GroupAlgebra::new(eq.group.clone(), ctx)?;
    Ok(Job { cfg, eq, algebra, divisor, normal })
}

impl Job {
    fn base_report(&self) -> Result<VerificationReport, JobError> {
        Ok(VerificationReport {
            inputs: self.cfg.clone(),
            genus: self.eq.curve.genus,
            p_rank: prank(&self.eq)?,
            r: self.eq.r_count(),
            p_part: self.eq.group.p_part(self.eq.ctx().prime()),
            core: None,
            borne: BTreeMap::new(),
            lt_dims: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            seed: self.cfg.seed,
            timing_ms: 0,
        })
    }

    fn simple_label(&self, idx: usize) -> String {
        format!("S{idx}")
    }

    /// Hom-dimension fingerprint of a module against the canonical simples.
    fn hom_fingerprint(&self, m: &Rep) -> String {
        let parts: Vec<String> = self
            .algebra
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                format!("S{i}:{}/{}", m.hom_space(s).dim(), s.hom_space(m).dim())
            })
            .collect();
        parts.join(",")
    }

    pub fn cmd_prank(&self) -> Result<VerificationReport, JobError> {
        self.base_report()
    }

    pub fn cmd_decompose(&self) -> Result<VerificationReport, JobError> {
        let mut report = self.base_report()?;
        let v = prank_rep(&self.eq, &self.divisor)?;
        let (core, _) = self.algebra.core(&v);
        let summands = self.algebra.decompose(&core, self.cfg.seed)?;
        report.core = Some(CoreSummary {
            dim: core.dim,
            summand_dims: summands.iter().map(|s| s.dim).collect(),
            fingerprint: self.hom_fingerprint(&core),
        });
        for (i, b) in self.algebra.borne_table(&v).iter().enumerate() {
            report.borne.insert(self.simple_label(i), *b);
        }
        Ok(report)
    }

    pub fn cmd_verify_theorem_a(&self) -> Result<VerificationReport, JobError> {
        let mut report = self.base_report()?;
        self.verdict_theorem_a(&mut report, &self.divisor, "theorem_a")?;
        Ok(report)
    }

    fn verdict_theorem_a(
        &self,
        report: &mut VerificationReport,
        d: &Divisor,
        label: &str,
    ) -> Result<(), JobError> {
        let v = prank_rep(&self.eq, d)?;
        let (lhs, _) = self.algebra.core(&v);
        let rhs = core_module(&self.eq, &self.algebra, d)?;
        let ldesc = format!("core of the p-rank module, dim {}", lhs.dim);
        let rdesc = format!("loop space of the ramification module, dim {}", rhs.dim);
        let verdict = match lhs.iso_test(&rhs, self.cfg.seed) {
            IsoOutcome::Yes(w) => {
                let witness = format!("{}x{} change of basis", w.rows(), w.cols());
                Verdict::holds(ldesc, rdesc, Some(witness))
            }
            IsoOutcome::No => Verdict::fails(ldesc, rdesc),
            IsoOutcome::Inconclusive => Verdict::inconclusive(ldesc, rdesc),
        };
        report.verdicts.insert(label.to_string(), verdict);
        Ok(())
    }

    pub fn cmd_verify_congruence(&self) -> Result<VerificationReport, JobError> {
        let mut report = self.base_report()?;
        let pn = report.p_part;
        let h = report.p_rank as i64;
        let r = report.r as i64;
        let lhs = h.rem_euclid(pn as i64);
        let rhs = (1 - r).rem_euclid(pn as i64);
        report.verdicts.insert(
            "congruence".into(),
            Verdict::from_bool(
                lhs == rhs,
                format!("p-rank {h} = {lhs} mod {pn}"),
                format!("1 - r = {} = {rhs} mod {pn}", 1 - r),
            ),
        );
        Ok(report)
    }

    pub fn cmd_verify_ds(&self) -> Result<VerificationReport, JobError> {
        let mut report = self.base_report()?;
        let p = self.eq.ctx().prime();
        if !self.eq.group.is_p_group(p) {
            return Err(invalid("group", "the Deuring-Shafarevich check needs a p-group"));
        }
        let all: Vec<u32> = self.eq.group.elements().collect();
        let qd = quotient_data(&self.eq, &all)?;
        let h_x = report.p_rank as i64;
        let h_y = prank(&qd.quotient)? as i64;
        let n = self.eq.group.order() as i64;
        let ram_sum: i64 = self
            .eq
            .stabilizers
            .iter()
            .map(|s| s.len() as i64 - 1)
            .sum();
        let lhs = h_x - 1;
        let rhs = n * (h_y - 1) + ram_sum;
        report.verdicts.insert(
            "deuring_shafarevich".into(),
            Verdict::from_bool(
                lhs == rhs,
                format!("h_X - 1 = {lhs}"),
                format!("|G|(h_Y - 1) + sum (|G_x| - 1) = {n}*({h_y} - 1) + {ram_sum} = {rhs}"),
            ),
        );
        Ok(report)
    }

    pub fn cmd_verify_theorem_b(&self) -> Result<VerificationReport, JobError> {
        let normal = self
            .normal
            .clone()
            .ok_or_else(|| invalid("normal_subgroup", "theorem B needs a normal subgroup"))?;
        let mut report = self.base_report()?;
        self.verdict_theorem_b(&mut report, &normal)?;
        Ok(report)
    }

    fn verdict_theorem_b(
        &self,
        report: &mut VerificationReport,
        normal: &[u32],
    ) -> Result<(), JobError> {
        let ctx = self.eq.ctx().clone();
        let p = ctx.prime();
        let qd: QuotientData = quotient_data(&self.eq, normal)?;
        let algebra_h = GroupAlgebra::new(qd.h_group.clone(), ctx.clone())?;
        let v_x = prank_rep(&self.eq, &self.eq.empty_divisor())?;
        let v_y = prank_rep(&qd.quotient, &qd.quotient.empty_divisor())?;
        let stabs_x: Vec<Vec<u32>> = self
            .eq
            .fixed_locus()
            .into_iter()
            .map(|i| self.eq.stabilizers[i].clone())
            .collect();
        let stabs_y: Vec<Vec<u32>> = qd
            .quotient
            .fixed_locus()
            .into_iter()
            .map(|i| qd.quotient.stabilizers[i].clone())
            .collect();
        // equality clause of the monotonicity statement: some place with
        // p-prime index of its stabilizer in G or in N
        let equality_clause = (0..self.eq.places.len()).any(|i| {
            let gx = self.eq.stabilizers[i].len() as u64;
            let nx = self.eq.stabilizers[i]
                .iter()
                .filter(|g| normal.contains(g))
                .count() as u64;
            let g_index = self.eq.group.order() as u64 / gx;
            let n_index = normal.len() as u64 / nx;
            g_index % p != 0 || n_index % p != 0
        });
        for (ti, t) in algebra_h.simples.iter().enumerate() {
            let label = format!("S{ti}");
            let t_on_g = t.inflated(self.eq.group.clone(), &qd.proj);
            let gi = self
                .algebra
                .simple_index(&t_on_g)
                .expect("inflated simple appears among the simples of G");
            let b_g = self.algebra.borne_multiplicity(&v_x, gi);
            let b_h = algebra_h.borne_multiplicity(&v_y, ti);
            let d_g = cohomology::locally_trivial_dim(&t_on_g, &stabs_x)
                .map_err(|e| invalid("group", e.to_string()))?;
            let d_h = cohomology::locally_trivial_dim(t, &stabs_y)
                .map_err(|e| invalid("group", e.to_string()))?;
            report.lt_dims.insert(label.clone(), d_g);
            report.borne.insert(label.clone(), b_g);
            report.verdicts.insert(
                format!("theorem_b[{label}]"),
                Verdict::from_bool(
                    b_g + d_g == b_h + d_h,
                    format!("b(G,{label}) + d(G,X,{label}) = {b_g} + {d_g}"),
                    format!("b(H,{label}) + d(H,Y,{label}) = {b_h} + {d_h}"),
                ),
            );
            report.verdicts.insert(
                format!("borne_monotonicity[{label}]"),
                Verdict::from_bool(
                    b_g <= b_h && (!equality_clause || b_g == b_h),
                    format!("b(G,{label}) = {b_g}"),
                    format!(
                        "b(H,{label}) = {b_h}{}",
                        if equality_clause { " (equality clause active)" } else { "" }
                    ),
                ),
            );
        }
        Ok(())
    }

    pub fn cmd_all(&self) -> Result<VerificationReport, JobError> {
        let mut report = self.cmd_decompose()?;
        self.verdict_theorem_a(&mut report, &self.divisor, "theorem_a")?;
        let cong = self.cmd_verify_congruence()?;
        report.verdicts.extend(cong.verdicts);
        if self.eq.group.is_p_group(self.eq.ctx().prime()) && self.eq.group.order() > 1 {
            if let Ok(ds) = self.cmd_verify_ds() {
                report.verdicts.extend(ds.verdicts);
            }
        }
        if let Some(normal) = self.normal.clone() {
            self.verdict_theorem_b(&mut report, &normal)?;
        }
        Ok(report)
    }

    pub fn run(&self, command: &str) -> Result<VerificationReport, JobError> {
        match command {
            "prank" => self.cmd_prank(),
            "decompose" => self.cmd_decompose(),
            "verify_theorem_a" => self.cmd_verify_theorem_a(),
            "verify_congruence" => self.cmd_verify_congruence(),
            "verify_theorem_b" => self.cmd_verify_theorem_b(),
            "verify_ds" => self.cmd_verify_ds(),
            "all" => self.cmd_all(),
            other => Err(invalid("command", format!("unknown command {other:?}"))),
        }
    }
}

/// Convenience entry point: load, build, run the configured command.
pub fn run_config_file(
    path: &std::path::Path,
    command_override: Option<&str>,
    seed_override: Option<u64>,
) -> Result<VerificationReport, JobError> {
    let mut cfg = load_config(path)?;
    if let Some(seed) = seed_override {
        cfg.seed = seed;
    }
    let command = command_override
        .map(|s| s.to_string())
        .unwrap_or_else(|| cfg.command.clone());
    let job = build_job(cfg)?;
    job.run(&command)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_config() -> &'static str {
        r#"{"field":{"p":3,"k":1},"curve":{"family":"artin_schreier","f":"1/x + 1/(x-1)"},"group":[{"kind":"as_translation","c":1}],"divisor":[],"normal_subgroup":null,"command":"verify_theorem_a","seed":42}"#
    }

    #[test]
    fn loads_and_builds_the_sample() {
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let job = build_job(cfg).unwrap();
        assert_eq!(job.eq.curve.genus, 2);
        assert_eq!(job.eq.group.order(), 3);
    }

    fn build_error(cfg: JobConfig) -> String {
        match build_job(cfg) {
            Err(e) => e.to_string(),
            Ok(_) => panic!("expected the config to be rejected"),
        }
    }

    #[test]
    fn unknown_family_is_rejected_with_path() {
        let text = sample_config().replace("artin_schreier", "weierstrass");
        let cfg: JobConfig = serde_json::from_str(&text).unwrap();
        let err = build_error(cfg);
        assert!(err.contains("curve.family"), "{err}");
    }

    #[test]
    fn bad_divisor_is_rejected_with_path() {
        let text = sample_config().replace(
            r#""divisor":[]"#,
            r#""divisor":[{"x":"(","mult":1}]"#,
        );
        let cfg: JobConfig = serde_json::from_str(&text).unwrap();
        let err = build_error(cfg);
        assert!(err.contains("divisor[0]"), "{err}");
    }

    #[test]
    fn theorem_a_holds_on_the_sample() {
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let job = build_job(cfg).unwrap();
        let report = job.run("verify_theorem_a").unwrap();
        assert_eq!(report.p_rank, 2);
        assert_eq!(report.r, 2);
        assert_eq!(report.verdicts["theorem_a"].status, "holds");
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn congruence_and_ds_hold_on_the_sample() {
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let job = build_job(cfg).unwrap();
        let rep1 = job.run("verify_congruence").unwrap();
        assert_eq!(rep1.verdicts["congruence"].status, "holds");
        let rep2 = job.run("verify_ds").unwrap();
        assert_eq!(rep2.verdicts["deuring_shafarevich"].status, "holds");
    }

    #[test]
    fn decompose_reports_the_core() {
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let job = build_job(cfg).unwrap();
        let report = job.run("decompose").unwrap();
        let core = report.core.unwrap();
        assert_eq!(core.dim, 2);
        assert_eq!(core.summand_dims, vec![2]);
        assert_eq!(report.borne["S0"], 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let job = build_job(cfg.clone()).unwrap();
        let a = job.run("all").unwrap().to_json();
        let job2 = build_job(cfg).unwrap();
        let b = job2.run("all").unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn exit_codes() {
        let mut verdicts = BTreeMap::new();
        verdicts.insert("x".into(), Verdict::holds("a", "a", None));
        let cfg: JobConfig = serde_json::from_str(sample_config()).unwrap();
        let mut report = VerificationReport {
            inputs: cfg,
            genus: 0,
            p_rank: 0,
            r: 0,
            p_part: 1,
            core: None,
            borne: BTreeMap::new(),
            lt_dims: BTreeMap::new(),
            verdicts,
            seed: 0,
            timing_ms: 0,
        };
        assert_eq!(report.exit_code(), 0);
        report
            .verdicts
            .insert("y".into(), Verdict::inconclusive("a", "b"));
        assert_eq!(report.exit_code(), 3);
        report.verdicts.insert("z".into(), Verdict::fails("a", "b"));
        assert_eq!(report.exit_code(), 2);
    }
}
