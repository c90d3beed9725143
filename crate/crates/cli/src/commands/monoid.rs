use crate::input::{self, InputError};
use crate::report::{Outcome, Report};
use crate::{MonoidCmd, Opts, Run};
use serde_json::json;
use wfr_core::gen;
use wfr_core::monoids::{canonical_form, enumerate_monoids, FiniteMonoid, WordMonoid};

pub fn run(cmd: &MonoidCmd, o: &Opts) -> Run {
    match cmd {
        MonoidCmd::Check { input } => {
            let text = input::read_text(input)?;
            let v: serde_json::Value = input::parse(input, &text)?;
            if v.get("generators").is_some() {
                check_word(&input::parse(input, &text)?)
            } else {
                check_finite(&input::parse(input, &text)?)
            }
        }
        MonoidCmd::Sweep { max_order, random } => sweep(*max_order, *random, o.seed),
    }
}

fn check_finite(m: &FiniteMonoid) -> Run {
    let zeros = m.left_zeros();
    let mut elements = Vec::new();
    for a in m.elements() {
        let r = m.is_ramsey_element(a).map_err(InputError::new)?;
        let le = m.satisfies_le(a).map_err(InputError::new)?;
        elements.push(json!({"element": a, "ramsey": r, "left_equalizing": le}));
    }
    let ramsey = m.has_ramsey_property();
    let result = json!({
        "monoid": m,
        "ramsey": ramsey,
        "left_zeros": zeros,
        "flags": m.classify(),
        "weak_ramsey": m.has_weak_ramsey_property(),
        "elements": elements,
    });
    Ok(Report::new(Outcome::from_bool(ramsey), result)
        .line(format!("Ramsey property: {ramsey}"))
        .line(format!("left zeros: {zeros:?}")))
}

fn check_word(w: &WordMonoid) -> Run {
    let v = w.has_weak_ramsey_property();
    Ok(Report::new(Outcome::of(&v), json!({"monoid": w, "weak_ramsey": v}))
        .line(format!("weak Ramsey property: {}", v.label())))
}

fn sweep(max_order: usize, random: usize, seed: u64) -> Run {
    let mut counts = Vec::new();
    let mut exceptions = Vec::new();
    // reported, not judged: elements where the two element tests part ways, and
    // nontrivial left-cancellative monoids with the weak property
    let mut le_disagreements = Vec::new();
    let mut cancellative_weak = Vec::new();
    let mut check = |m: &FiniteMonoid| -> Result<(), InputError> {
        let zero = (0..m.order()).any(|z| m.elements().all(|x| m.mul(z, x) == z));
        if m.has_ramsey_property() != zero {
            exceptions.push(canonical_form(m));
        }
        for a in m.elements() {
            let r = m.is_ramsey_element(a).map_err(InputError::new)?.decided();
            let le = m.satisfies_le(a).map_err(InputError::new)?;
            if r != Some(le) {
                le_disagreements.push(json!({"monoid": canonical_form(m), "element": a, "ramsey": r, "left_equalizing": le}));
            }
        }
        if m.order() > 1 && m.classify().left_cancellative && m.has_weak_ramsey_property().is_yes() {
            cancellative_weak.push(canonical_form(m));
        }
        Ok(())
    };
    for n in 1..=max_order {
        let ms = enumerate_monoids(n).map_err(InputError::new)?;
        let with_zero = ms.iter().filter(|m| !m.left_zeros().is_empty()).count();
        ms.iter().try_for_each(&mut check)?;
        counts.push(json!({"order": n, "monoids": ms.len(), "with_left_zero": with_zero}));
    }
    let mut rng = gen::rng(seed);
    for _ in 0..random {
        check(&gen::random_monoid(4, &mut rng))?;
    }
    let ok = exceptions.is_empty();
    let mut r = Report::new(
        Outcome::from_bool(ok),
        json!({
            "max_order": max_order,
            "random": random,
            "seed": seed,
            "counts": counts,
            "exceptions": exceptions,
            "le_disagreements": le_disagreements,
            "cancellative_weak_ramsey": cancellative_weak,
        }),
    );
    for c in &counts {
        r = r.line(format!("order {}: {} monoids, {} with a left zero", c["order"], c["monoids"], c["with_left_zero"]));
    }
    Ok(r.line(format!("Ramsey iff left zero: {} exceptions", exceptions.len()))
        .line(format!("Ramsey element vs left equalizing: {} disagreements", le_disagreements.len()))
        .line(format!("nontrivial left-cancellative with the weak property: {}", cancellative_weak.len())))
}
