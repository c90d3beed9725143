use crate::input::{self, ArrowData, InputError};
use crate::report::{Outcome, Report};
use crate::{Opts, Run, TreeCmd};
use serde::Deserialize;
use serde_json::json;
use wfr_core::trees::{
    amalgamate, amalgamate_leveless, build_v, canonical_nonterminal_form, canonical_terminal_form, decompose_extension,
    embeddings, level_dominate, nodes_of_incompatibility, recompose_nonterminal, recompose_terminal, MorphismFlags,
    TreeData, Variant,
};

#[derive(Deserialize)]
struct Pair {
    f1: ArrowData,
    f2: ArrowData,
}

#[derive(Deserialize)]
struct DomCod {
    dom: TreeData,
    cod: TreeData,
}

pub fn run(cmd: &TreeCmd, o: &Opts) -> Run {
    let variant = o.variant();
    let flags = variant.flags();
    match cmd {
        TreeCmd::Amalgamate { input } => {
            let p: Pair = input::read(input)?;
            let f1 = input::tree_arrow(&p.f1, flags)?;
            let f2 = input::tree_arrow(&p.f2, flags)?;
            if f1.dom != f2.dom {
                return Err(InputError::new("f1 and f2 have different sources"));
            }
            let bad = nodes_of_incompatibility(&f1, &f2).map_err(InputError::new)?;
            if !bad.is_empty() {
                return Ok(Report::new(Outcome::No, json!({"f1": f1, "f2": f2, "incompatible_nodes": bad}))
                    .line(format!("decided degrees clash at source nodes {bad:?}")));
            }
            let a = if variant == Variant::Leveless { amalgamate_leveless(&f1, &f2) } else { amalgamate(&f1, &f2) }
                .map_err(InputError::new)?;
            let mut r = Report::new(Outcome::Yes, json!({"f1": f1, "f2": f2, "amalgam": a}))
                .line(format!("amalgam {} ({} nodes), case {:?}{}", a.tree, a.tree.len(), a.case, if a.free { ", free" } else { "" }));
            r.trace = a.trace.iter().enumerate().map(|(i, s)| format!("step {}: case {:?}: {}", i + 1, s.case, s.detail)).collect();
            Ok(r)
        }
        TreeCmd::Decompose { input } => {
            let f = input::tree_arrow(&input::read(input)?, MorphismFlags::STRONG)?;
            let d = decompose_extension(&f).map_err(InputError::new)?;
            let lower = canonical_nonterminal_form(&d.lower).map_err(InputError::new)?;
            let upper = canonical_terminal_form(&d.upper).map_err(InputError::new)?;
            // recomposition needs a nonempty source to hang the surgeries on
            let again = (!f.dom.is_empty())
                .then(|| -> Result<bool, InputError> {
                    let low = recompose_nonterminal(&f.dom, &lower).map_err(InputError::new)?;
                    let up = recompose_terminal(&low.cod, &upper).map_err(InputError::new)?;
                    Ok(low.then(&up) == f)
                })
                .transpose()?;
            let outcome = if again == Some(false) { Outcome::No } else { Outcome::Ok };
            Ok(Report::new(
                outcome,
                json!({"arrow": f, "lower": d.lower, "upper": d.upper, "surgeries": lower, "plantings": upper, "recomposes": again}),
            )
            .line(format!("{} -> {} -> {}", f.dom, d.lower.cod, f.cod))
            .line(format!("{} surgeries, {} plantings", lower.len(), upper.len())))
        }
        TreeCmd::Embeddings { input } => {
            let p: DomCod = input::read(input)?;
            let (s, _) = input::tree(&p.dom)?;
            let (t, _) = input::tree(&p.cod)?;
            let es = embeddings(&s, &t, flags);
            let maps: Vec<&Vec<usize>> = es.iter().map(|e| &e.map).collect();
            let mut r = Report::new(Outcome::from_bool(!es.is_empty()), json!({"dom": s, "cod": t, "maps": maps}))
                .line(format!("{} embeddings of {s} into {t}", es.len()));
            r.trace = maps.iter().map(|m| format!("{m:?}")).collect();
            Ok(r)
        }
        TreeCmd::Dominate { input } => {
            let f = input::tree_arrow(&input::read(input)?, MorphismFlags::LEVELESS)?;
            let d = level_dominate(&f).map_err(InputError::new)?;
            Ok(Report::new(Outcome::Ok, json!({"arrow": f, "domination": d}))
                .line(format!("{} padded to {} with {} new nodes", f.cod, d.tree, d.padding)))
        }
        TreeCmd::Buildv { s, y } => {
            let v = build_v(*s, *y).map_err(InputError::new)?;
            let mut r = Report::new(Outcome::Ok, json!({"s": s, "y": y, "tree": v.tree, "sequences": v.nodes}))
                .line(format!("{} ({} nodes)", v.tree, v.tree.len()));
            r.trace = v.nodes.iter().enumerate().map(|(i, q)| format!("{i}: {q:?}")).collect();
            Ok(r)
        }
    }
}
