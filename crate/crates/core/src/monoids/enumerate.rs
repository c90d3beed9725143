use super::{first_non_associative, FiniteMonoid};
use std::collections::BTreeSet;

pub const MAX_ENUMERATION_ORDER: usize = 4;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order {0} not supported (1..={MAX_ENUMERATION_ORDER})")]
    Order(usize),
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Isomorphism-invariant form: the unit relabelled to 0 and the remaining
/// elements permuted to make the row-major table lexicographically least.
pub fn canonical_form(m: &FiniteMonoid) -> FiniteMonoid {
    let n = m.order();
    let others: Vec<usize> = (1..n).collect();
    let non_unit: Vec<usize> = m.elements().filter(|&x| x != m.unit()).collect();
    let mut best: Option<FiniteMonoid> = None;
    for p in permutations(&others) {
        let mut perm = vec![0; n];
        for (i, &x) in non_unit.iter().enumerate() {
            perm[x] = p[i];
        }
        let r = m.relabel(&perm);
        if best.as_ref().is_none_or(|b| r.table() < b.table()) {
            best = Some(r);
        }
    }
    best.unwrap()
}

/// Every monoid of order `n` up to isomorphism, unit at 0, sorted by table.
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>, EnumerateError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerateError::Order(n));
    }
    let free = (n - 1) * (n - 1);
    let mut table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let total = n.pow(free as u32);
    for code in 0..total {
        let mut c = code;
        for k in 0..free {
            table[1 + k / (n - 1)][1 + k % (n - 1)] = c % n;
            c /= n;
        }
        if first_non_associative(&table).is_none() {
            let m = FiniteMonoid::new(n, 0, table.clone()).unwrap();
            seen.insert(canonical_form(&m).table().to_vec());
        }
    }
    Ok(seen.into_iter().map(|t| FiniteMonoid::new(n, 0, t).unwrap()).collect())
}
