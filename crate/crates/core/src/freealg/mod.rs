//! Free associative algebras over the rationals and their tensor powers.

mod endo;
mod fmt;
mod lincomb;
mod necklace;
mod perm;
mod word;

use num_bigint::BigInt;
use thiserror::Error;

pub use endo::AlgMap;
pub use fmt::{render, Names};
pub use lincomb::{LinComb, Monomial};
pub use necklace::{necklace_project, Necklace};
pub use perm::{Perm3, Transposition};
pub use word::{Gen, Word};

pub type Rational = num_rational::BigRational;

/// Element of the free algebra.
pub type NCPoly = LinComb<Word>;
/// Element of `A ⊗ A`.
pub type Tensor2 = LinComb<[Word; 2]>;
/// Element of `A ⊗ A ⊗ A`.
pub type Tensor3 = LinComb<[Word; 3]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator tables differ: {left} vs {right} generators")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("letter x{letter} is outside an algebra with {ngens} generators")]
    LetterOutOfRange { letter: usize, ngens: usize },
    #[error("invalid permutation {0}")]
    InvalidPermutation(String),
    #[error("supplied map is not an inverse")]
    NotAnInverse,
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gen(i: u16) -> NCPoly {
    NCPoly::from_key(Word::letter(Gen(i)))
}

pub fn word(idx: &[u16]) -> NCPoly {
    NCPoly::from_key(Word::from_indices(idx))
}

pub fn tensor2(a: &NCPoly, b: &NCPoly) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_term([u.clone(), v.clone()], cu * cv);
        }
    }
    out
}

pub fn tensor3(a: &NCPoly, b: &NCPoly, c: &NCPoly) -> Tensor3 {
    let mut out = Tensor3::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let cuv = cu * cv;
            for (w, cw) in c.iter() {
                out.add_term([u.clone(), v.clone(), w.clone()], &cuv * cw);
            }
        }
    }
    out
}

/// `d° = d'' ⊗ d'`.
pub fn swap(d: &Tensor2) -> Tensor2 {
    d.map_keys(|[a, b]| [b.clone(), a.clone()])
}

/// `d ⊗ p`.
pub fn append(d: &Tensor2, p: &NCPoly) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ([a, b], cd) in d.iter() {
        for (w, cw) in p.iter() {
            out.add_term([a.clone(), b.clone(), w.clone()], cd * cw);
        }
    }
    out
}

/// `p ⊗ d`.
pub fn prepend(p: &NCPoly, d: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero();
    for (w, cw) in p.iter() {
        for ([a, b], cd) in d.iter() {
            out.add_term([w.clone(), a.clone(), b.clone()], cw * cd);
        }
    }
    out
}

/// Multiplication map `A ⊗ A -> A`.
pub fn mult(d: &Tensor2) -> NCPoly {
    d.map_keys(|[a, b]| a.concat(b))
}

pub fn degree(p: &NCPoly) -> Option<usize> {
    p.keys().map(Word::len).max()
}

pub fn homogeneous_part(p: &NCPoly, d: usize) -> NCPoly {
    p.filter(|w| w.len() == d)
}

pub fn pow(p: &NCPoly, k: u32) -> NCPoly {
    let mut out = NCPoly::one();
    for _ in 0..k {
        out = &out * p;
    }
    out
}

/// Largest generator index occurring in a polynomial, plus one.
pub fn letters_needed<const N: usize>(t: &LinComb<[Word; N]>) -> usize {
    t.keys()
        .flat_map(|k| k.iter().filter_map(Word::max_gen))
        .map(|g| g.index() + 1)
        .max()
        .unwrap_or(0)
}

/// A free algebra with a fixed generator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    names: Names,
}

impl FreeAlgebra {
    pub fn new(names: Names) -> Self {
        FreeAlgebra { names }
    }

    pub fn indexed(r: usize) -> Self {
        FreeAlgebra::new(Names::indexed(r))
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn gen(&self, i: usize) -> NCPoly {
        assert!(i < self.ngens());
        gen(i as u16)
    }

    pub fn check(&self, p: &NCPoly) -> Result<(), AlgebraError> {
        for w in p.keys() {
            if let Some(g) = w.max_gen() {
                if g.index() >= self.ngens() {
                    return Err(AlgebraError::LetterOutOfRange { letter: g.index() + 1, ngens: self.ngens() });
                }
            }
        }
        Ok(())
    }

    /// Product of two elements, both validated against this algebra.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    pub fn same_table(&self, other: &FreeAlgebra) -> Result<(), AlgebraError> {
        if self.ngens() != other.ngens() {
            return Err(AlgebraError::GeneratorMismatch { left: self.ngens(), right: other.ngens() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_words_concatenates() {
        let p = &word(&[0, 1]) * &word(&[1]);
        assert_eq!(p, word(&[0, 1, 1]));
    }

    #[test]
    fn noncommutative() {
        let x = gen(0);
        let y = gen(1);
        assert_ne!(&x * &y, &y * &x);
    }

    #[test]
    fn binomial_square() {
        let x = gen(0);
        let y = gen(1);
        let s = &x + &y;
        let expected = &(&(&(&x * &x) + &(&x * &y)) + &(&y * &x)) + &(&y * &y);
        assert_eq!(pow(&s, 2), expected);
    }

    #[test]
    fn tensor_product_is_componentwise() {
        let a = tensor2(&gen(0), &NCPoly::one());
        let b = tensor2(&gen(1), &gen(0));
        assert_eq!(&a * &b, tensor2(&word(&[0, 1]), &gen(0)));
    }

    #[test]
    fn swap_reverses_factors() {
        let d = tensor2(&gen(0), &word(&[1, 1]));
        assert_eq!(swap(&d), tensor2(&word(&[1, 1]), &gen(0)));
        assert_eq!(swap(&swap(&d)), d);
    }

    #[test]
    fn algebra_rejects_foreign_letters() {
        let a = FreeAlgebra::indexed(2);
        assert!(a.mul(&gen(0), &gen(2)).is_err());
        assert!(a.mul(&gen(0), &gen(1)).is_ok());
        assert!(a.same_table(&FreeAlgebra::indexed(3)).is_err());
    }

    #[test]
    fn homogeneous_split() {
        let p = &(&gen(0) + &word(&[0, 1])) + &NCPoly::one();
        assert_eq!(degree(&p), Some(2));
        assert_eq!(homogeneous_part(&p, 1), gen(0));
        assert_eq!(degree(&NCPoly::zero()), None);
    }
}
