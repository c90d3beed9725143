use crate::input::{self, InputError};
use crate::report::{Outcome, Report};
use crate::{Opts, OrderCmd, Run};
use serde_json::json;
use wfr_core::category::is_amalgamable_arrow;
use wfr_core::orders::{classify_arrow, is_amalgamable_alo_arrow, AloArrow, AlmostLinearOrder, AlmostLinearOrders, TernaryStructure};

pub fn run(cmd: &OrderCmd, o: &Opts) -> Run {
    match cmd {
        OrderCmd::Roundtrip { input } => {
            let text = input::read_text(input)?;
            let v: serde_json::Value = input::parse(input, &text)?;
            if v.get("kind").is_some() {
                order_roundtrip(input::parse(input, &text)?)
            } else {
                ternary_roundtrip(input::parse(input, &text)?)
            }
        }
        OrderCmd::Classify { input } => {
            let f: AloArrow = input::read(input)?;
            f.validate().map_err(InputError::new)?;
            classify(&f, o)
        }
    }
}

fn order_roundtrip(x: AlmostLinearOrder) -> Run {
    let t = TernaryStructure::from_order(&x);
    let (back, map) = t.to_order().map_err(InputError::new)?;
    let ok = back == x.forget_top();
    Ok(Report::new(Outcome::from_bool(ok), json!({"order": x, "ternary": t, "back": back, "map": map, "forget_top": x.forget_top()}))
        .line(format!("{x:?} -> {} triples -> {back:?}", t.triples.len())))
}

fn ternary_roundtrip(t: TernaryStructure) -> Run {
    let t = TernaryStructure::new(t.size, t.triples);
    match t.to_order() {
        Err(e) => Ok(Report::new(Outcome::No, json!({"ternary": t, "axiom_failure": e.to_string()})).line(e.to_string())),
        Ok((x, map)) => {
            let back = TernaryStructure::from_order_along(&x, &map);
            let ok = back == t;
            Ok(Report::new(Outcome::from_bool(ok), json!({"ternary": t, "order": x, "map": map, "back": back}))
                .line(format!("{} triples -> {x:?} along {map:?}", t.triples.len())))
        }
    }
}

fn classify(f: &AloArrow, o: &Opts) -> Run {
    let class = classify_arrow(f).map_err(InputError::new)?;
    let closed = is_amalgamable_alo_arrow(f).map_err(InputError::new)?;
    let budget = o.budget()?;
    let generic = is_amalgamable_arrow(&AlmostLinearOrders, f, &budget).map_err(InputError::new)?;
    let kind = match &class {
        wfr_core::orders::ArrowClass::Embedding => "embedding".to_string(),
        wfr_core::orders::ArrowClass::RefinementThenEmbedding { choice, .. } => format!("refinement {choice} then embedding"),
    };
    Ok(Report::new(Outcome::from_bool(closed), json!({"arrow": f, "class": class, "amalgamable": closed, "search": generic}))
        .budget(&budget)
        .line(kind)
        .line(format!("amalgamable: {closed} (bounded search: {})", generic.label())))
}
