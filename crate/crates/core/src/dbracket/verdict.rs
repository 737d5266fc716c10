use std::fmt;

use rayon::prelude::*;

use crate::bimodule::BimodKind;
use crate::freealg::{Names, Tensor3, Transposition, Word};

use super::jacobi::{jacobiator_words, weak_jacobiator_words};
use super::DoubleBracket;

pub const DEFAULT_DEGREE_BOUND: usize = 4;

/// Outcome of a (weak) Poisson test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacVerdict {
    /// Proved: the triple bracket vanishes identically.
    Poisson,
    /// Proved: the `[σ,σ']` weak triple bracket vanishes identically.
    WeakPoisson(Transposition, Transposition),
    /// A monomial triple with nonzero defect.
    NotPoisson { witness: [Word; 3], defect: Tensor3 },
    /// No defect on monomial triples whose entries all have length at most the bound.
    VerifiedUpToDegree(usize),
}

impl JacVerdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, JacVerdict::NotPoisson { .. })
    }

    pub fn render(&self, names: &Names) -> String {
        match self {
            JacVerdict::Poisson => "Poisson".to_string(),
            JacVerdict::WeakPoisson(s, t) => format!("WeakPoisson(({s}),({t}))"),
            JacVerdict::NotPoisson { witness, defect } => format!(
                "NotPoisson witness=({}) defect={}",
                witness.iter().map(|w| names.word(w)).collect::<Vec<_>>().join(", "),
                names.tensor(defect)
            ),
            JacVerdict::VerifiedUpToDegree(d) => format!("VerifiedUpToDegree({d})"),
        }
    }
}

impl fmt::Display for JacVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            JacVerdict::NotPoisson { witness, defect } => witness
                .iter()
                .chain(defect.keys().flatten())
                .filter_map(Word::max_gen)
                .map(|g| g.index() + 1)
                .max()
                .unwrap_or(0),
            _ => 0,
        };
        f.write_str(&self.render(&Names::indexed(n)))
    }
}

/// Monomial triples with each entry of length `1..=max_len`, in sweep order.
///
/// Sweep order: increasing total length; within a total length the third argument
/// varies slowest, then the second, then the first, each running down the
/// degree-lexicographic order of words.
pub fn sweep_triples(ngens: usize, max_len: usize) -> Vec<[Word; 3]> {
    let mut words = Word::all_up_to(ngens, max_len);
    words.reverse();
    let mut out = Vec::new();
    for total in 3..=3 * max_len {
        for c in &words {
            for b in &words {
                let used = b.len() + c.len();
                if used >= total || total - used > max_len {
                    continue;
                }
                let la = total - used;
                for a in words.iter().filter(|a| a.len() == la) {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    out
}

pub fn generator_triples(ngens: usize) -> Vec<[Word; 3]> {
    sweep_triples(ngens, 1)
}

fn first_defect(triples: &[[Word; 3]], defect: impl Fn(&[Word; 3]) -> Tensor3 + Sync) -> Option<JacVerdict> {
    triples
        .par_iter()
        .filter_map(|t| {
            let d = defect(t);
            (!d.is_zero()).then(|| JacVerdict::NotPoisson { witness: t.clone(), defect: d })
        })
        .find_first(|_| true)
}

/// Generator triples decide the full Poisson property exactly when the triple bracket
/// is a derivation in its last argument: untwisted outer and inner brackets.
fn generators_decide_poisson(db: &DoubleBracket) -> bool {
    db.bimodule().is_untwisted() && matches!(db.kind(), BimodKind::Outer | BimodKind::Inner)
}

/// Weak triple brackets that are derivations in the last argument.
fn generators_decide_weak(db: &DoubleBracket, sigma: Transposition, sigma_prime: Transposition) -> bool {
    db.bimodule().is_untwisted()
        && match db.kind() {
            BimodKind::Right => sigma == Transposition::T12 && sigma_prime == Transposition::T12,
            BimodKind::Left => sigma == Transposition::T12 && sigma_prime == Transposition::T13,
            _ => false,
        }
}

/// Decides whether the triple bracket vanishes.
///
/// Exact for untwisted outer and inner brackets. Otherwise every monomial triple with
/// entries of length at most `degree_bound` is checked and the first defect in sweep
/// order is reported.
pub fn is_poisson(db: &DoubleBracket, degree_bound: usize) -> JacVerdict {
    if db.is_zero() {
        return JacVerdict::Poisson;
    }
    if generators_decide_poisson(db) {
        return first_defect(&generator_triples(db.ngens()), |t| jacobiator_words(db, t))
            .unwrap_or(JacVerdict::Poisson);
    }
    first_defect(&sweep_triples(db.ngens(), degree_bound), |t| jacobiator_words(db, t))
        .unwrap_or(JacVerdict::VerifiedUpToDegree(degree_bound))
}

/// Decides whether the `[σ,σ']` weak triple bracket vanishes.
///
/// Exact for untwisted right brackets with `((12),(12))`, untwisted left brackets with
/// `((12),(13))`, and untwisted outer or inner brackets that are Poisson. Otherwise a
/// bounded sweep as in [`is_poisson`].
pub fn is_weak_poisson(
    db: &DoubleBracket,
    sigma: Transposition,
    sigma_prime: Transposition,
    degree_bound: usize,
) -> JacVerdict {
    if db.is_zero() {
        return JacVerdict::WeakPoisson(sigma, sigma_prime);
    }
    let weak = |t: &[Word; 3]| weak_jacobiator_words(db, sigma, sigma_prime, t);
    if generators_decide_weak(db, sigma, sigma_prime) {
        return first_defect(&generator_triples(db.ngens()), weak)
            .unwrap_or(JacVerdict::WeakPoisson(sigma, sigma_prime));
    }
    if generators_decide_poisson(db) && is_poisson(db, degree_bound) == JacVerdict::Poisson {
        return JacVerdict::WeakPoisson(sigma, sigma_prime);
    }
    first_defect(&sweep_triples(db.ngens(), degree_bound), weak)
        .unwrap_or(JacVerdict::VerifiedUpToDegree(degree_bound))
}
