//! Gradient double brackets `<x_i, x_j>_f = Σ_k ε^{ijk} ∂_k(f)` on `K<x1, x2, x3>`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bimodule::{BimodKind, Bimodule};
use crate::dbracket::{is_poisson, BracketError, DoubleBracket, JacVerdict};
use crate::freealg::{degree, gen, homogeneous_part, letters_needed, pow, q, Gen, NCPoly, Rational, Tensor2, Word};

/// Longest word [`symmetrize`] accepts; the sum has `len!` terms.
pub const SYMMETRIZE_BOUND: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradientError {
    #[error("polynomial is not fully non-commutative, so its gradient bracket is not antisymmetric")]
    NotFullyNoncommutative,
    #[error("gradient brackets live on three generators, polynomial uses {0}")]
    TooManyGenerators(usize),
    #[error("word of length {len} exceeds the symmetrization bound {bound}")]
    LengthOverBound { len: usize, bound: usize },
    #[error("the zero polynomial has no leading part")]
    ZeroPolynomial,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// The double derivation with `∂_j(x_k) = δ_jk 1⊗1` for the outer structure:
/// each occurrence of `x_j` in a word splits it into prefix ⊗ suffix.
pub fn double_derivation(j: Gen, p: &NCPoly) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (w, c) in p.iter() {
        for (t, &g) in w.letters().iter().enumerate() {
            if g == j {
                out.add_term([w.prefix(t), w.suffix(t + 1)], c.clone());
            }
        }
    }
    out
}

fn multinomial(counts: &[usize]) -> usize {
    let mut total = 0;
    let mut out: u128 = 1;
    for &c in counts {
        for i in 1..=c {
            total += 1;
            out = out * total as u128 / i as u128;
        }
    }
    out as usize
}

/// Whether each homogeneous part has coefficients constant on words with the same letters.
pub fn is_fully_noncommutative(f: &NCPoly) -> bool {
    let mut classes: BTreeMap<Vec<Gen>, Vec<&Rational>> = BTreeMap::new();
    for (w, c) in f.iter() {
        let mut key = w.letters().to_vec();
        key.sort();
        classes.entry(key).or_default().push(c);
    }
    classes.iter().all(|(letters, coeffs)| {
        let mut counts: BTreeMap<Gen, usize> = BTreeMap::new();
        for g in letters {
            *counts.entry(*g).or_default() += 1;
        }
        let size = multinomial(&counts.values().copied().collect::<Vec<_>>());
        coeffs.len() == size && coeffs.iter().all(|c| *c == coeffs[0])
    })
}

/// The same property read off the derivations: `∂_i(f) = ∂_i(f)°` for every generator.
pub fn is_fully_noncommutative_by_derivations(f: &NCPoly) -> bool {
    let r = letters_needed(&f.map_keys(|w| [w.clone()]));
    (0..r).all(|i| {
        let d = double_derivation(Gen(i as u16), f);
        d == crate::freealg::swap(&d)
    })
}

/// Totally antisymmetric with `ε(0,1,2) = 1`.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn gradient_table(f: &NCPoly) -> Result<Vec<Tensor2>, GradientError> {
    let used = letters_needed(&f.map_keys(|w| [w.clone()]));
    if used > 3 {
        return Err(GradientError::TooManyGenerators(used));
    }
    let partials: Vec<Tensor2> = (0..3).map(|k| double_derivation(Gen(k), f)).collect();
    let mut table = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut d = Tensor2::zero();
            for (k, p) in partials.iter().enumerate() {
                d.add_scaled(p, &q(epsilon(i, j, k)));
            }
            table.push(d);
        }
    }
    Ok(table)
}

/// `<x_i, x_j>_f = Σ_k ε^{ijk} ∂_k(f)`, an untwisted outer double bracket.
pub fn gradient_bracket(f: &NCPoly) -> Result<DoubleBracket, GradientError> {
    let table = gradient_table(f)?;
    if !is_fully_noncommutative(f) {
        return Err(GradientError::NotFullyNoncommutative);
    }
    Ok(DoubleBracket::from_table(Bimodule::untwisted(BimodKind::Outer, 3), table)?)
}

/// The same table without the antisymmetry requirement, to exhibit its failure.
pub fn gradient_bracket_unchecked(f: &NCPoly) -> Result<DoubleBracket, GradientError> {
    let table = gradient_table(f)?;
    Ok(DoubleBracket::from_table_unchecked(Bimodule::untwisted(BimodKind::Outer, 3), table)?)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `Σ_{σ ∈ S_w} x_{j_σ(1)} ... x_{j_σ(w)}`, repeated words counted with multiplicity.
pub fn symmetrize(w: &Word) -> Result<NCPoly, GradientError> {
    if w.len() > SYMMETRIZE_BOUND {
        return Err(GradientError::LengthOverBound { len: w.len(), bound: SYMMETRIZE_BOUND });
    }
    let mut out = NCPoly::zero();
    for p in permutations(w.len()) {
        out.add_term(Word(p.iter().map(|&i| w.letters()[i]).collect()), q(1));
    }
    Ok(out)
}

/// `C^d(x1^e x2^{d-e})`.
pub fn hquad(d: usize, e: usize) -> Result<NCPoly, GradientError> {
    let letters = [vec![0u16; e], vec![1u16; d - e]].concat();
    symmetrize(&Word::from_indices(&letters))
}

/// `(x1 + x2 + x3)^d`.
pub fn sum_power(d: u32) -> NCPoly {
    pow(&(&(&gen(0) + &gen(1)) + &gen(2)), d)
}

/// Potentials whose gradient brackets are classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x_j^d`, with `j` zero-based.
    Monomial(usize, u32),
    SumPower(u32),
    /// `ζ0 + ζ1 x1 + ζ2 x2 + ζ3 x3`.
    Linear([Rational; 4]),
    Custom(NCPoly),
}

impl Family {
    pub fn polynomial(&self) -> Result<NCPoly, GradientError> {
        Ok(match self {
            Family::Monomial(j, d) => {
                if *j >= 3 {
                    return Err(GradientError::BadGenerator(j + 1));
                }
                pow(&gen(*j as u16), *d)
            }
            Family::SumPower(d) => sum_power(*d),
            Family::Linear(z) => {
                let mut f = NCPoly::constant(z[0].clone());
                for k in 0..3 {
                    f.add_scaled(&gen(k as u16), &z[k + 1]);
                }
                f
            }
            Family::Custom(f) => f.clone(),
        })
    }
}

/// Verdict for a gradient bracket together with the values `<f, x_k>_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub potential: NCPoly,
    pub verdict: JacVerdict,
    pub casimir: Vec<Tensor2>,
}

impl Classification {
    /// `<f, x_k>_f = 0` for every `k`.
    pub fn casimir_holds(&self) -> bool {
        self.casimir.iter().all(Tensor2::is_zero)
    }
}

pub fn classify(family: &Family, degree_bound: usize) -> Result<Classification, GradientError> {
    let f = family.polynomial()?;
    let db = gradient_bracket(&f)?;
    let verdict = is_poisson(&db, degree_bound);
    let casimir = (0..3).map(|k| db.eval(&f, &gen(k))).collect();
    Ok(Classification { potential: f, verdict, casimir })
}

/// Verdict for the bracket of the top homogeneous part of `f`.
pub fn leading_part_poisson(f: &NCPoly, degree_bound: usize) -> Result<JacVerdict, GradientError> {
    let d = degree(f).ok_or(GradientError::ZeroPolynomial)?;
    let top = homogeneous_part(f, d);
    Ok(is_poisson(&gradient_bracket(&top)?, degree_bound))
}
