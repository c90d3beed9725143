use crate::verdict::Verdict;
use serde::{Deserialize, Serialize};

/// Free monoid over `generators`, optionally with a right zero `0` added:
/// multiplying by a word containing `0` discards everything to its left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordMonoid {
    pub generators: Vec<String>,
    pub right_zero: bool,
}

/// A normal form: `zero` records an occurrence of `0`, `letters` is what
/// follows the last one (the whole word if there is none).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub zero: bool,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn unit() -> Self {
        Word { zero: false, letters: Vec::new() }
    }
    pub fn zero() -> Self {
        Word { zero: true, letters: Vec::new() }
    }
    pub fn letters(ls: &[usize]) -> Self {
        Word { zero: false, letters: ls.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRamseyWitness {
    /// `Mα` is the single point `{α}` or `{1, 0}` collapsed by `0`.
    pub collapser: Word,
}

/// Colour `x ∈ Mα` by the parity of the number of letters after its last
/// `0`. For `F = {α, gα}` the two members of `eF` always differ by one
/// letter, so no `e` makes the colouring constant on `eF`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCertificate {
    pub family: [Word; 2],
}

impl WordMonoid {
    pub fn new(generators: Vec<String>, right_zero: bool) -> Self {
        WordMonoid { generators, right_zero }
    }

    pub fn free(n: usize) -> Self {
        let gens = (0..n).map(|i| if n == 1 { "x".to_string() } else { format!("x{i}") }).collect();
        WordMonoid::new(gens, false)
    }

    pub fn contains(&self, w: &Word) -> bool {
        (!w.zero || self.right_zero) && w.letters.iter().all(|&l| l < self.generators.len())
    }

    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        if v.zero {
            v.clone()
        } else {
            let mut letters = u.letters.clone();
            letters.extend_from_slice(&v.letters);
            Word { zero: u.zero, letters }
        }
    }

    /// Every element with at most `len` letters in its normal form.
    pub fn elements_up_to(&self, len: usize) -> Vec<Word> {
        let g = self.generators.len();
        let mut layer = vec![Vec::new()];
        let mut tails = vec![Vec::new()];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..g).map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
            tails.extend(layer.iter().cloned());
        }
        let mut out: Vec<Word> = tails.iter().map(|t| Word { zero: false, letters: t.clone() }).collect();
        if self.right_zero {
            out.extend(tails.into_iter().map(|t| Word { zero: true, letters: t }));
        }
        out
    }

    fn collapsing(&self, a: &Word) -> Option<Word> {
        if a.zero {
            // Mα = {α}
            Some(Word::unit())
        } else if self.generators.is_empty() {
            // α = 1 and M is {1} or {1, 0}
            Some(if self.right_zero { Word::zero() } else { Word::unit() })
        } else {
            None
        }
    }

    /// (LE) by the length argument: a zero-free `α` over a nonempty alphabet
    /// has `α, gα ∈ Mα` whose left multiples always differ in length.
    pub fn satisfies_le(&self, a: &Word) -> bool {
        self.collapsing(a).is_some()
    }

    pub fn is_ramsey_element(&self, a: &Word) -> Verdict<WordRamseyWitness, ParityCertificate> {
        match self.collapsing(a) {
            Some(collapser) => Verdict::Yes(WordRamseyWitness { collapser }),
            None => {
                let g = Word::letters(&[0]);
                Verdict::No(ParityCertificate { family: [a.clone(), self.mul(&g, a)] })
            }
        }
    }

    pub fn has_weak_ramsey_property(&self) -> Verdict<Word, ParityCertificate> {
        if self.right_zero {
            return Verdict::Yes(Word::zero());
        }
        match self.is_ramsey_element(&Word::unit()) {
            Verdict::Yes(_) => Verdict::Yes(Word::unit()),
            Verdict::No(c) => Verdict::No(c),
            Verdict::Unknown(r) => Verdict::Unknown(r),
        }
    }
}

impl ParityCertificate {
    fn colour(w: &Word) -> usize {
        w.letters.len() % 2
    }

    /// Check the certificate for `α` against every multiplier with at most
    /// `len` letters.
    pub fn check(&self, m: &WordMonoid, a: &Word, len: usize) -> bool {
        let [f0, f1] = &self.family;
        // both members lie in Mα
        let in_orbit = |f: &Word| {
            !f.zero && f.letters.len() >= a.letters.len() && f.letters.ends_with(&a.letters) && !a.zero
        };
        in_orbit(f0)
            && in_orbit(f1)
            && m.elements_up_to(len).iter().all(|e| {
                Self::colour(&m.mul(e, f0)) != Self::colour(&m.mul(e, f1))
            })
    }
}
