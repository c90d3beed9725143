use super::{backend_name, with_category};
use crate::input::{self, InputError};
use crate::report::{Outcome, Report};
use crate::{BackendArg, FraisseCmd, Opts, Run, VariantArg};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use wfr_core::category::EnumerableCategory;
use wfr_core::fraisse::{back_and_forth, build_weak_fraisse_prefix, verify_w0, verify_w1_step, BuildOptions, SequencePrefix};
use wfr_core::trees::Variant;
use wfr_core::Verdict;

// the part of a build report needed to rebuild the category
#[derive(Deserialize)]
struct Header {
    backend: String,
    #[serde(default)]
    m: Vec<u32>,
    #[serde(default)]
    variant: Option<String>,
    prefix: Value,
}

struct Loaded {
    backend: BackendArg,
    m: Vec<u32>,
    variant: Variant,
    prefix: Value,
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Tw => "tw",
        Variant::Tc => "tc",
        Variant::Ta => "ta",
        Variant::Leveless => "leveless",
    }
}

// a build report, or just its `result` object
fn load(path: &str) -> Result<Loaded, InputError> {
    let mut v: Value = input::read(path)?;
    if v.get("schema").is_some() {
        v = v["result"].take();
    }
    let h: Header = serde_json::from_value(v).map_err(|e| InputError::new(format!("{path}: {e}")))?;
    let backend = match h.backend.as_str() {
        "lo" => BackendArg::Lo,
        "alo" => BackendArg::Alo,
        "tree" => BackendArg::Tree,
        other => return Err(InputError::new(format!("{path}: unknown backend {other:?}"))),
    };
    let variant = match h.variant.as_deref().unwrap_or("ta") {
        "tw" => Variant::Tw,
        "tc" => Variant::Tc,
        "ta" => Variant::Ta,
        "leveless" => Variant::Leveless,
        other => return Err(InputError::new(format!("{path}: unknown variant {other:?}"))),
    };
    let m = if h.m.is_empty() { vec![1, 2] } else { h.m };
    Ok(Loaded { backend, m, variant, prefix: h.prefix })
}

fn prefix<C: EnumerableCategory>(c: &C, v: &Value) -> Result<SequencePrefix<C::Obj, C::Arr>, InputError>
where
    C::Obj: DeserializeOwned,
    C::Arr: DeserializeOwned,
{
    let p: SequencePrefix<C::Obj, C::Arr> =
        serde_json::from_value(v.clone()).map_err(|e| InputError::new(format!("prefix: {e}")))?;
    // rebuild so every connecting arrow is rechecked
    let mut q = SequencePrefix::new(c, p.objects, p.arrows).map_err(InputError::new)?;
    q.bounds = p.bounds;
    Ok(q)
}

pub fn run(cmd: &FraisseCmd, o: &Opts) -> Run {
    match cmd {
        FraisseCmd::Build { cat, length, w0_bound, headroom } => {
            // trees default to the decided category here
            let variant = if o.variant == VariantArg::Tc && cat.backend == BackendArg::Tree { Variant::Ta } else { o.variant() };
            let opts = BuildOptions { w0_bound: *w0_bound, headroom: *headroom, budget: o.budget()?, certify: true };
            let header = json!({"backend": backend_name(cat.backend), "m": cat.m, "variant": variant_name(variant)});
            with_category!(cat.backend, &cat.m, variant, |c| build(c, header, *length, &opts))
        }
        FraisseCmd::Verify { input, w0_bound, headroom } => {
            let l = load(input)?;
            let budget = o.budget()?;
            with_category!(l.backend, &l.m, l.variant, |c| verify(c, &l.prefix, *w0_bound, *headroom, &budget))
        }
        FraisseCmd::Zigzag { u, v, steps } => {
            let (lu, lv) = (load(u)?, load(v)?);
            if lu.backend != lv.backend || lu.m != lv.m || lu.variant != lv.variant {
                return Err(InputError::new("the two prefixes live in different categories"));
            }
            with_category!(lu.backend, &lu.m, lu.variant, |c| zigzag(c, &lu.prefix, &lv.prefix, *steps))
        }
    }
}

fn build<C: EnumerableCategory>(c: &C, mut header: Value, length: usize, opts: &BuildOptions) -> Run {
    let p = build_weak_fraisse_prefix(c, length, opts).map_err(InputError::new)?;
    let grades: Vec<usize> = p.objects.iter().map(|x| c.grade(x)).collect();
    let line = format!("sizes {grades:?}, cofinal to {:?}, absorbed at {:?}", p.bounds.w0, p.bounds.w1);
    header["prefix"] = json!(p);
    Ok(Report::new(Outcome::Ok, header).budget(&opts.budget).line(line))
}

fn verify<C: EnumerableCategory>(c: &C, v: &Value, w0_bound: usize, headroom: usize, budget: &wfr_core::SearchBudget) -> Run
where
    C::Obj: DeserializeOwned,
    C::Arr: DeserializeOwned,
{
    let p = prefix(c, v)?;
    if let Some((i, j, k)) = p.functoriality_failure(c) {
        return Err(InputError::new(format!("composites {i}->{j}->{k} disagree")));
    }
    let w0 = verify_w0(c, &p, w0_bound);
    let mut steps = Vec::new();
    let mut outcome = Outcome::of(&w0);
    let mut r = Report::new(Outcome::Ok, Value::Null).budget(budget).line(format!("cofinal up to {w0_bound}: {}", w0.label()));
    // the last object has no later connector, so absorption is only asked before it
    for n in 0..p.len().saturating_sub(1) {
        let s = verify_w1_step(c, &p, n, headroom, budget).map_err(InputError::new)?;
        if outcome == Outcome::Yes && !s.is_yes() {
            outcome = Outcome::of(&s);
            r = r.spent(&s);
        }
        r.trace.push(match &s {
            Verdict::Yes(w) => format!("u_{n} absorbed at {} ({} arrows)", w.m, w.absorbed.len()),
            other => format!("u_{n}: {}", other.label()),
        });
        steps.push(s);
    }
    r.verdict = outcome;
    r.result = json!({"w0": w0, "w1": steps, "headroom": headroom});
    Ok(r)
}

fn zigzag<C: EnumerableCategory>(c: &C, u: &Value, v: &Value, steps: usize) -> Run
where
    C::Obj: DeserializeOwned,
    C::Arr: DeserializeOwned,
{
    let (pu, pv) = (prefix(c, u)?, prefix(c, v)?);
    match back_and_forth(c, &pu, &pv, steps) {
        Ok(z) => {
            let ok = z.check(c, &pu, &pv);
            Ok(Report::new(Outcome::from_bool(ok), json!({"zigzag": z, "checked": ok}))
                .line(format!("u indices {:?}, v indices {:?}", z.k, z.l)))
        }
        Err(e) => Ok(Report::new(Outcome::Unknown, json!({"error": e.to_string()})).line(e.to_string())),
    }
}
