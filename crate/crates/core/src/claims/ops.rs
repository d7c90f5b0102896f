//! Named operations a claim can call. Each takes JSON parameters and
//! returns a JSON value that is compared exactly against the expectation.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chow::{ac_hat_numbers, canonical_class, pushforward_degree, ChowError};
use crate::groebner::{GbError, Limits};
use crate::lindual::{lemma22_verify, LinError, Subspace};
use crate::multigraded::{canonical_quadric_count, ci_curve_invariants, rr_h0, CISpec, MultigradedError};
use crate::par::{self, ExecMode};
use crate::piclattice::{prop73_suite, rem45_suite};
use crate::polycore::Field;
use crate::rng;
use crate::varieties::{
    bundle_chern_data, cor46_random_input, cor46_section, cor63_probe, cubic_identity_check, fiber_dims, fiber_sample,
    jacobian_rank_samples, lemma42_probe, linear_section_invariants, sing_gradient_check, CaseId, Lemma42Kind,
    RankSite, VarError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("malformed params: {0}")]
    Params(String),
    #[error("resource limit: {0}")]
    Limit(String),
    #[error("{0}")]
    Failed(String),
}

impl From<GbError> for OpError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::Limit { .. } => OpError::Limit(e.to_string()),
            other => OpError::Failed(other.to_string()),
        }
    }
}

impl From<VarError> for OpError {
    fn from(e: VarError) -> Self {
        match e {
            VarError::Groebner(g) => g.into(),
            VarError::UnknownCase(_) | VarError::UnknownComponent(_) | VarError::Param(_) => {
                OpError::Params(e.to_string())
            }
            other => OpError::Failed(other.to_string()),
        }
    }
}

impl From<ChowError> for OpError {
    fn from(e: ChowError) -> Self {
        OpError::Failed(e.to_string())
    }
}

impl From<LinError> for OpError {
    fn from(e: LinError) -> Self {
        OpError::Failed(e.to_string())
    }
}

impl From<MultigradedError> for OpError {
    fn from(e: MultigradedError) -> Self {
        OpError::Failed(e.to_string())
    }
}

pub(crate) struct Ctx {
    pub field: Field,
    pub seed: u64,
    pub samples: usize,
    pub limits: Limits,
}

pub(crate) struct Outcome {
    pub computed: Value,
    pub detail: Option<Value>,
}

impl From<Value> for Outcome {
    fn from(computed: Value) -> Self {
        Outcome { computed, detail: None }
    }
}

type OpFn = fn(&Value, &Ctx) -> Result<Outcome, OpError>;

const OPS: &[(&str, OpFn)] = &[
    ("groebner.dual_ideal", dual_ideal),
    ("groebner.span_defects", span_defects),
    ("chow.pushforward_degrees", pushforward_degrees),
    ("chow.dual_chern_class", dual_chern_class),
    ("chow.canonical_classes", canonical_classes),
    ("chow.ac_hat_numbers", ac_hat),
    ("chow.self_duality", self_duality),
    ("multigraded.ci_curve_invariants", ci_curves),
    ("multigraded.rr_counts", rr_counts),
    ("varieties.linear_sections", linear_sections),
    ("varieties.cor46_section", curve_section),
    ("varieties.singular_checks", singular_checks),
    ("varieties.rank_probes", rank_probes),
    ("varieties.cor63_probe", node_probe),
    ("varieties.lemma42_probe", secant_probe),
    ("lindual.lemma22", annihilator_identity),
    ("piclattice.suites", lattice_suites),
];

/// Names accepted in a claim's `op` field.
pub fn known_ops() -> Vec<&'static str> {
    OPS.iter().map(|(n, _)| *n).collect()
}

pub(crate) fn dispatch(op: &str, params: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let f = OPS.iter().find(|(n, _)| *n == op).map(|(_, f)| f).ok_or_else(|| OpError::UnknownOp(op.into()))?;
    f(params, ctx)
}

fn params<T: DeserializeOwned + Default>(v: &Value) -> Result<T, OpError> {
    if v.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(v.clone()).map_err(|e| OpError::Params(e.to_string()))
}

fn case(s: &str) -> Result<CaseId, OpError> {
    Ok(s.parse::<CaseId>()?)
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CaseParam {
    case: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CasesParam {
    cases: Vec<String>,
    #[serde(default)]
    cross_check: Vec<String>,
}

fn dual_ideal(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: CaseParam = params(p)?;
    let inv = linear_section_invariants(case(&p.case)?, 0, ctx.field, ctx.seed, &ctx.limits)?;
    Ok(Outcome {
        computed: json!({ "dim": inv.dim, "degree": inv.degree }),
        detail: Some(json!({ "basis_size": inv.basis_size, "span_defect": inv.span_defect })),
    })
}

fn span_defects(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: CasesParam = params(p)?;
    let mut out = BTreeMap::new();
    for c in &p.cases {
        let inv = linear_section_invariants(case(c)?, 0, ctx.field, ctx.seed, &ctx.limits)?;
        out.insert(c.clone(), inv.span_defect);
    }
    Ok(json!(out).into())
}

fn pushforward_degrees(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: CasesParam = params(p)?;
    let mut degrees = Vec::new();
    for c in &p.cases {
        degrees.push(pushforward_degree(&bundle_chern_data(case(c)?)?.e_perp));
    }
    let mut agrees = Vec::new();
    for c in &p.cross_check {
        let id = case(c)?;
        let chow = pushforward_degree(&bundle_chern_data(id)?.e_perp);
        let gb = linear_section_invariants(id, 0, ctx.field, ctx.seed, &ctx.limits)?.degree;
        agrees.push(chow == gb);
    }
    Ok(json!({ "degrees": degrees, "groebner_agrees": agrees }).into())
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SideParam {
    case: String,
    #[serde(default)]
    side: Side,
}

#[derive(Deserialize, Default, Clone, Copy)]
enum Side {
    #[serde(rename = "E")]
    E,
    #[default]
    #[serde(rename = "E_perp")]
    EPerp,
}

fn dual_chern_class(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: SideParam = params(p)?;
    let d = bundle_chern_data(case(&p.case)?)?;
    let b = match p.side {
        Side::E => d.e,
        Side::EPerp => d.e_perp,
    };
    Ok(json!(b.dual_chern.total().to_string()).into())
}

fn canonical_classes(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: CasesParam = params(p)?;
    let mut out = Vec::new();
    for c in &p.cases {
        let d = bundle_chern_data(case(c)?)?;
        let (k, base) = canonical_class(&d.e_perp, &d.minus_ks)?;
        out.push(if base.is_zero() { format!("{k}H") } else { format!("{k}H + {base}") });
    }
    Ok(json!(out).into())
}

fn ac_hat(_: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let n = ac_hat_numbers();
    Ok(Outcome {
        computed: json!({ "cA^3*cB": n.ca3_cb, "cA*cB^3": n.ca_cb3, "cB^4": n.cb4, "cB^3*Fb": n.cb3_fb }),
        detail: Some(json!({ "cB^2*Fb^2": n.cb2_fb2, "Fb^3*cB": n.fb3_cb })),
    })
}

fn self_duality(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: CaseParam = params(p)?;
    let d = bundle_chern_data(case(&p.case)?)?;
    let (a, b) = (pushforward_degree(&d.e), pushforward_degree(&d.e_perp));
    Ok(Outcome { computed: json!({ "equal": a == b }), detail: Some(json!({ "E": a, "E_perp": b })) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CiSpecParam {
    m: usize,
    n: usize,
    degrees: Vec<(u32, u32)>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CiParams {
    specs: Vec<CiSpecParam>,
}

fn ci_curves(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: CiParams = params(p)?;
    let mut out = Vec::new();
    for s in &p.specs {
        let spec = CISpec::new(s.m, s.n, &s.degrees).map_err(|e| OpError::Params(e.to_string()))?;
        let c = ci_curve_invariants(&spec)?;
        out.push(json!({ "d1": c.d1, "d2": c.d2, "g": c.genus, "canonical": c.d1 + c.d2 == 2 * c.genus - 2 }));
    }
    Ok(json!(out).into())
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RrParams {
    d: i64,
    g: i64,
}

fn rr_counts(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: RrParams = params(p)?;
    Ok(json!({ "rr_h0": rr_h0(p.d, p.g)?, "canonical_quadrics": canonical_quadric_count(p.g)? }).into())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionRun {
    case: String,
    codim: usize,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SectionParams {
    runs: Vec<SectionRun>,
    seeds: u64,
}

fn linear_sections(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: SectionParams = params(p)?;
    if p.seeds == 0 {
        return Err(OpError::Params("seeds must be positive".into()));
    }
    let mut out = Vec::new();
    for run in &p.runs {
        let id = case(&run.case)?;
        let mut seen = Vec::new();
        for i in 0..p.seeds {
            let inv = linear_section_invariants(id, run.codim, ctx.field, rng::sub_seed(ctx.seed, i), &ctx.limits)?;
            seen.push((inv.dim, inv.degree, inv.hilbert_poly));
        }
        let (dim, degree, hp) = seen[0].clone();
        let stable = seen.iter().all(|s| *s == seen[0]);
        out.push(json!({ "case": run.case, "dim": dim, "degree": degree, "hilbert_poly": hp, "stable": stable }));
    }
    Ok(json!(out).into())
}

fn curve_section(_: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let (eta, xi) = cor46_random_input(ctx.field, ctx.seed);
    let inv = cor46_section(&eta, &xi, &ctx.limits)?.invariants;
    let ci = ci_curve_invariants(&CISpec::new(2, 3, &[(1, 1), (1, 1), (1, 1), (1, 2)])?)?;
    let matches = inv.degree == ci.d1 + ci.d2 && inv.genus == Some(ci.genus);
    Ok(Outcome {
        computed: json!({
            "dim": inv.dim, "degree": inv.degree, "genus": inv.genus,
            "hilbert_poly": inv.hilbert_poly, "matches_ci": matches
        }),
        detail: Some(json!({ "ci": [ci.d1, ci.d2, ci.genus] })),
    })
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ComponentParams {
    components: Vec<String>,
}

fn singular_checks(p: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let p: ComponentParams = params(p)?;
    let mut out = BTreeMap::new();
    out.insert("cubic_identity".to_string(), cubic_identity_check()?);
    for c in &p.components {
        out.insert(c.clone(), sing_gradient_check(c)?);
    }
    Ok(json!(out).into())
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SamplesParam {
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    seeds: Option<u64>,
}

fn rank_probes(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: SamplesParam = params(p)?;
    let n = p.samples.unwrap_or(ctx.samples);
    let sites = [
        ("G4:generic", CaseId::G4, RankSite::Generic),
        ("G5:D=0", CaseId::G5, RankSite::ZeroD),
        ("G5:generic", CaseId::G5, RankSite::Generic),
    ];
    let mut out = BTreeMap::new();
    for (name, id, site) in sites {
        let seed = rng::derive(ctx.seed, name);
        let ranks = jacobian_rank_samples(id, site, ctx.field, n, seed, ExecMode::Parallel)?;
        out.insert(name, ranks.into_iter().collect::<BTreeSet<_>>());
    }
    Ok(Outcome { computed: json!(out), detail: Some(json!({ "samples": n })) })
}

fn node_probe(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: SamplesParam = params(p)?;
    let n = p.seeds.unwrap_or(5);
    let runs = par::map_range(n as usize, ExecMode::Parallel, |i| {
        cor63_probe(ctx.field, rng::sub_seed(ctx.seed, i as u64), &ctx.limits)
    });
    let mut distinct = Vec::new();
    for r in runs {
        let r = serde_json::to_value(r?).expect("plain struct");
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    Ok(Outcome { computed: json!(distinct), detail: Some(json!({ "seeds": n })) })
}

fn secant_probe(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: SamplesParam = params(p)?;
    let n = p.seeds.unwrap_or(10);
    let mut out = BTreeMap::new();
    for (name, kind) in [("line2", Lemma42Kind::Line2), ("plane3", Lemma42Kind::Plane3)] {
        let seed = rng::derive(ctx.seed, name);
        let degs = par::map_range(n as usize, ExecMode::Parallel, |i| {
            lemma42_probe(kind, ctx.field, rng::sub_seed(seed, i as u64), &ctx.limits)
        });
        let set = degs.into_iter().collect::<Result<BTreeSet<_>, _>>()?;
        out.insert(name, set);
    }
    Ok(Outcome { computed: json!(out), detail: Some(json!({ "seeds": n })) })
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct IdentityParams {
    configs: usize,
    ambient: usize,
    #[serde(default)]
    fiber_samples: Option<usize>,
    #[serde(default)]
    cases: Vec<String>,
}

/// A pair `(E, Λ)` with prescribed overlap: `Λ` takes some vectors of `E`,
/// some of `ann E` and some generic ones, so both sides of the identity
/// are usually nonzero.
fn identity_config(field: Field, n: usize, seed: u64) -> Result<(Subspace, Subspace), LinError> {
    let mut r = rng::stream(seed, "lemma22");
    let a = r.gen_range(0..=n);
    let e = Subspace::random(field, n, a, &mut r);
    let ann = e.annihilator();
    let mut vecs = Vec::new();
    let pick = |s: &Subspace, k: usize, r: &mut rng::DetRng, vecs: &mut Vec<_>| {
        for _ in 0..k {
            let mut v = vec![field.zero(); n];
            for b in s.basis() {
                let c = rng::scalar(field, r);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(&c * y);
                }
            }
            vecs.push(v);
        }
    };
    let (k1, k2) = (r.gen_range(0..=a), r.gen_range(0..=n - a));
    pick(&e, k1, &mut r, &mut vecs);
    pick(&ann, k2, &mut r, &mut vecs);
    let k3 = r.gen_range(0..=(n - vecs.len().min(n)));
    pick(&Subspace::full(field, n), k3, &mut r, &mut vecs);
    Ok((e, Subspace::span(field, n, vecs)?))
}

fn annihilator_identity(p: &Value, ctx: &Ctx) -> Result<Outcome, OpError> {
    let p: IdentityParams = params(p)?;
    let results = par::map_range(p.configs, ExecMode::Parallel, |i| -> Result<(bool, i64), OpError> {
        let (e, l) = identity_config(ctx.field, p.ambient, rng::sub_seed(ctx.seed, i as u64))?;
        let v = lemma22_verify(&e, &l)?;
        Ok((v.holds, v.lhs))
    });
    let mut failures = 0;
    let mut nonzero = 0;
    for r in results {
        let (holds, lhs) = r?;
        failures += usize::from(!holds);
        nonzero += usize::from(lhs > 0);
    }
    let n = p.fiber_samples.unwrap_or(ctx.samples);
    let mut orth = BTreeMap::new();
    for c in &p.cases {
        let id = case(c)?;
        let dims = fiber_dims(id).ok_or_else(|| OpError::Params(format!("no fiber sampler for {c}")))?;
        let seed = rng::derive(ctx.seed, c);
        let bad = par::map_range(n, ExecMode::Parallel, |i| -> Result<bool, VarError> {
            let fp = fiber_sample(id, ctx.field, rng::sub_seed(seed, i as u64))?;
            Ok(!fp.e.pairs_to_zero(&fp.e_perp) || (fp.e.dim(), fp.e_perp.dim()) != dims)
        });
        let mut count = 0;
        for b in bad {
            count += usize::from(b?);
        }
        orth.insert(c.clone(), count);
    }
    Ok(Outcome {
        computed: json!({ "lemma22_failures": failures, "orthogonality_failures": orth }),
        detail: Some(json!({ "configs": p.configs, "nonzero_lhs": nonzero, "fiber_samples": n })),
    })
}

fn lattice_suites(_: &Value, _: &Ctx) -> Result<Outcome, OpError> {
    let (a, b) = (prop73_suite(), rem45_suite());
    Ok(json!({ "prop73": a, "rem45": b }).into())
}
