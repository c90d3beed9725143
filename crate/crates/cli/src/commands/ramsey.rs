use super::backend_name;
use crate::input::{self, InputError};
use crate::report::{Outcome, Report};
use crate::{BackendArg, Opts, RamseyCmd, Run};
use serde::Deserialize;
use serde_json::json;
use wfr_core::category::{
    check_bad_coloring, find_bad_coloring, search_ramsey_witness, BadColoring, EnumerableCategory, WitnessSearch,
};
use wfr_core::orders::{AloArrow, AlmostLinearOrder, AlmostLinearOrders, LinearOrders};

// what `search` writes and `verify` reads back
#[derive(Deserialize)]
struct Found {
    backend: String,
    a: usize,
    b: usize,
    colors: usize,
    witness: Option<AlmostLinearOrder>,
    refuted: Vec<(AlmostLinearOrder, BadColoring<AloArrow>)>,
}

#[derive(Deserialize)]
struct ReportIn {
    result: Found,
}

pub fn run(cmd: &RamseyCmd, o: &Opts) -> Run {
    match cmd {
        RamseyCmd::Search { backend, a, b } => {
            match backend {
                BackendArg::Lo => search(&LinearOrders, *backend, *a, *b, o),
                BackendArg::Alo => search(&AlmostLinearOrders, *backend, *a, *b, o),
                BackendArg::Tree => Err(InputError::new("ramsey search takes --backend lo or alo")),
            }
        }
        RamseyCmd::Verify { input } => {
            let r: ReportIn = input::read(input)?;
            match r.result.backend.as_str() {
                "lo" => verify(&LinearOrders, &r.result),
                "alo" => verify(&AlmostLinearOrders, &r.result),
                other => Err(InputError::new(format!("unknown backend {other:?}"))),
            }
        }
    }
}

fn search<C>(c: &C, backend: BackendArg, a: usize, b: usize, o: &Opts) -> Run
where
    C: EnumerableCategory<Obj = AlmostLinearOrder, Arr = AloArrow>,
{
    let budget = o.budget()?;
    let alpha = AloArrow::identity(AlmostLinearOrder::linear(a));
    let bo = AlmostLinearOrder::linear(b);
    let res = search_ramsey_witness(c, &alpha, &bo, None, o.colors, &budget).map_err(InputError::new)?;
    let base = |witness: Option<AlmostLinearOrder>, refuted: Vec<(AlmostLinearOrder, BadColoring<AloArrow>)>| {
        json!({"backend": backend_name(backend), "a": a, "b": b, "colors": o.colors, "witness": witness, "refuted": refuted})
    };
    Ok(match res {
        WitnessSearch::Found(v) => {
            // bad colorings for every earlier candidate show that v is least
            let mut refuted = Vec::new();
            'outer: for g in c.grade(&bo)..=c.grade(&v) {
                for w in c.objects_of_grade(g) {
                    if w == v {
                        break 'outer;
                    }
                    if c.hom(&bo, &w).is_empty() {
                        continue;
                    }
                    let bad = find_bad_coloring(c, &alpha, &w, &bo, None, o.colors).map_err(InputError::new)?;
                    refuted.push((w, bad.ok_or_else(|| InputError::new("candidate order changed during search"))?));
                }
            }
            Report::new(Outcome::Yes, base(Some(v), refuted)).line(format!("N = {}", v.size())).line(format!("witness {v:?}"))
        }
        WitnessSearch::AllBad { colorings, exhaustive } => {
            let outcome = if exhaustive { Outcome::No } else { Outcome::Unknown };
            Report::new(outcome, base(None, colorings)).line("every candidate has a bad coloring")
        }
        WitnessSearch::Exhausted(r) => {
            let mut rep = Report::new(Outcome::Unknown, base(None, Vec::new())).line("no witness within the budget");
            rep.budget_used = Some(r);
            rep
        }
    }
    .budget(&budget))
}

fn verify<C>(c: &C, f: &Found) -> Run
where
    C: EnumerableCategory<Obj = AlmostLinearOrder, Arr = AloArrow>,
{
    let alpha = AloArrow::identity(AlmostLinearOrder::linear(f.a));
    let bo = AlmostLinearOrder::linear(f.b);
    let mut problems = Vec::new();
    for (w, bc) in &f.refuted {
        if !check_bad_coloring(c, &alpha, w, &bo, None, f.colors, bc) {
            problems.push(format!("coloring for {w:?} is not bad"));
        }
    }
    if let Some(v) = &f.witness {
        if find_bad_coloring(c, &alpha, v, &bo, None, f.colors).map_err(InputError::new)?.is_some() {
            problems.push(format!("{v:?} has a bad coloring"));
        }
    }
    let mut r = Report::new(Outcome::from_bool(problems.is_empty()), json!({"checked": f.refuted.len() + f.witness.is_some() as usize, "problems": problems}))
        .line(format!("{} colorings rechecked", f.refuted.len()));
    for p in &problems {
        r = r.line(p.clone());
    }
    Ok(r)
}
