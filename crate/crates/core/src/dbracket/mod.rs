//! Double brackets: generator tables, Leibniz extension, Jacobiators and verdicts.

mod equiv;
mod jacobi;
mod products;
mod verdict;

use thiserror::Error;

use crate::bimodule::{BimodKind, Bimodule};
use crate::freealg::{swap, AlgebraError, Gen, NCPoly, Names, Tensor2, Word};

pub use equiv::{apply_equivalence, check_morphism, swap_equivalent, Tensor2Auto};
pub use jacobi::{jacobiator, jacobiator_form, weak_jacobiator, JacForm};
pub use products::{
    bracket_on_necklaces, bullet_bracket, loday_defect, mult_bracket, necklace_bracket, sym_bracket,
    sym_jacobiator, twisted_jacobiator, LodaySide, SymPoly, TwistSide,
};
pub use verdict::{
    generator_triples, is_poisson, is_weak_poisson, sweep_triples, JacVerdict, DEFAULT_DEGREE_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("generator index {index} out of range for {ngens} generators")]
    GeneratorOutOfRange { index: usize, ngens: usize },
    #[error("entry <x{i},x{j}> violates antisymmetry: got {got}, antisymmetry forces {expected}")]
    Antisymmetry { i: usize, j: usize, got: String, expected: String },
    #[error("conflicting declarations for <x{i},x{j}>")]
    Conflict { i: usize, j: usize },
    #[error("table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("bimodule and bracket disagree on the number of generators ({bimodule} vs {bracket})")]
    GeneratorCount { bimodule: usize, bracket: usize },
    #[error("bimodule kinds differ: {0} vs {1}")]
    KindMismatch(BimodKind, BimodKind),
    #[error("morphism checks need untwisted brackets")]
    Twisted,
    #[error("necklace brackets need equal left and right twists")]
    UnequalTwists,
    #[error("this operation needs a {expected} bracket, got {got}")]
    WrongKind { expected: &'static str, got: BimodKind },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Order in which the two Leibniz rules are unfolded during evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionOrder {
    /// Split the first argument outermost (the default).
    FirstArgumentOuter,
    /// Split the second argument outermost.
    SecondArgumentOuter,
}

/// A double bracket on a free algebra, determined by its values on generator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBracket {
    bimodule: Bimodule,
    star: Bimodule,
    ngens: usize,
    table: Vec<Tensor2>,
}

impl DoubleBracket {
    /// Builds a bracket from declared entries; `<x_j,x_i> = -<x_i,x_j>°` is filled in.
    ///
    /// Pairs never mentioned are zero. Declaring both orders is allowed when they agree.
    pub fn new(
        bimodule: Bimodule,
        entries: impl IntoIterator<Item = ((Gen, Gen), Tensor2)>,
    ) -> Result<Self, BracketError> {
        let ngens = bimodule.ngens();
        let mut table: Vec<Option<Tensor2>> = vec![None; ngens * ngens];
        for ((gi, gj), d) in entries {
            let (i, j) = (gi.index(), gj.index());
            for idx in [i, j] {
                if idx >= ngens {
                    return Err(BracketError::GeneratorOutOfRange { index: idx + 1, ngens });
                }
            }
            let mirror = -swap(&d);
            if i == j && mirror != d {
                return Err(BracketError::Antisymmetry {
                    i: i + 1,
                    j: j + 1,
                    got: Names::indexed(ngens).tensor(&d),
                    expected: Names::indexed(ngens).tensor(&mirror),
                });
            }
            for (slot, value) in [(i * ngens + j, d), (j * ngens + i, mirror)] {
                match &table[slot] {
                    Some(old) if *old != value => return Err(BracketError::Conflict { i: i + 1, j: j + 1 }),
                    _ => table[slot] = Some(value),
                }
            }
        }
        let table = table.into_iter().map(Option::unwrap_or_default).collect();
        Self::assemble(bimodule, ngens, table)
    }

    /// Builds a bracket from a full row-major `r × r` table, validating antisymmetry.
    pub fn from_table(bimodule: Bimodule, table: Vec<Tensor2>) -> Result<Self, BracketError> {
        let db = Self::from_table_unchecked(bimodule, table)?;
        let names = Names::indexed(db.ngens);
        for i in 0..db.ngens {
            for j in i..db.ngens {
                let expected = -swap(db.entry(j, i));
                if *db.entry(i, j) != expected {
                    return Err(BracketError::Antisymmetry {
                        i: i + 1,
                        j: j + 1,
                        got: names.tensor(db.entry(i, j)),
                        expected: names.tensor(&expected),
                    });
                }
            }
        }
        Ok(db)
    }

    /// Like [`DoubleBracket::from_table`] but skips the antisymmetry check.
    ///
    /// The result is a Leibniz extension of an arbitrary table, useful for exhibiting
    /// what goes wrong when the table is not antisymmetric.
    pub fn from_table_unchecked(bimodule: Bimodule, table: Vec<Tensor2>) -> Result<Self, BracketError> {
        let ngens = bimodule.ngens();
        if table.len() != ngens * ngens {
            return Err(BracketError::TableSize { got: table.len(), expected: ngens * ngens });
        }
        Self::assemble(bimodule, ngens, table)
    }

    fn assemble(bimodule: Bimodule, ngens: usize, table: Vec<Tensor2>) -> Result<Self, BracketError> {
        for d in &table {
            let needed = crate::freealg::letters_needed(d);
            if needed > ngens {
                return Err(BracketError::GeneratorOutOfRange { index: needed, ngens });
            }
        }
        let star = bimodule.swap();
        Ok(DoubleBracket { bimodule, star, ngens, table })
    }

    pub fn zero(bimodule: Bimodule) -> Self {
        let n = bimodule.ngens();
        Self::assemble(bimodule, n, vec![Tensor2::zero(); n * n]).expect("zero table is valid")
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn kind(&self) -> BimodKind {
        self.bimodule.kind()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn entry(&self, i: usize, j: usize) -> &Tensor2 {
        &self.table[i * self.ngens + j]
    }

    pub fn table(&self) -> &[Tensor2] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Tensor2::is_zero)
    }

    /// The declared upper-triangular entries, including the diagonal.
    pub fn upper_entries(&self) -> Vec<((Gen, Gen), Tensor2)> {
        let mut out = Vec::new();
        for i in 0..self.ngens {
            for j in i..self.ngens {
                if !self.entry(i, j).is_zero() {
                    out.push(((Gen(i as u16), Gen(j as u16)), self.entry(i, j).clone()));
                }
            }
        }
        out
    }

    fn gen_entry(&self, a: Gen, b: Gen) -> &Tensor2 {
        self.entry(a.index(), b.index())
    }

    /// `<u, v>` for words.
    pub fn eval_words(&self, u: &Word, v: &Word) -> Tensor2 {
        self.eval_words_ordered(u, v, ExpansionOrder::FirstArgumentOuter)
    }

    pub fn eval_words_ordered(&self, u: &Word, v: &Word, order: ExpansionOrder) -> Tensor2 {
        let mut out = Tensor2::zero();
        match order {
            ExpansionOrder::FirstArgumentOuter => {
                for (k, &uk) in u.letters().iter().enumerate() {
                    let mut inner = Tensor2::zero();
                    for (l, &vl) in v.letters().iter().enumerate() {
                        let t = self.gen_entry(uk, vl);
                        if t.is_zero() {
                            continue;
                        }
                        inner += &self.bimodule.act_words(&v.prefix(l), t, &v.suffix(l + 1));
                    }
                    if !inner.is_zero() {
                        out += &self.star.act_words(&u.prefix(k), &inner, &u.suffix(k + 1));
                    }
                }
            }
            ExpansionOrder::SecondArgumentOuter => {
                for (l, &vl) in v.letters().iter().enumerate() {
                    let mut inner = Tensor2::zero();
                    for (k, &uk) in u.letters().iter().enumerate() {
                        let t = self.gen_entry(uk, vl);
                        if t.is_zero() {
                            continue;
                        }
                        inner += &self.star.act_words(&u.prefix(k), t, &u.suffix(k + 1));
                    }
                    if !inner.is_zero() {
                        out += &self.bimodule.act_words(&v.prefix(l), &inner, &v.suffix(l + 1));
                    }
                }
            }
        }
        out
    }

    /// `<a, b>`, extended bilinearly and by the two Leibniz rules.
    pub fn eval(&self, a: &NCPoly, b: &NCPoly) -> Tensor2 {
        self.eval_ordered(a, b, ExpansionOrder::FirstArgumentOuter)
    }

    pub fn eval_ordered(&self, a: &NCPoly, b: &NCPoly, order: ExpansionOrder) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.eval_words_ordered(u, v, order), &(cu * cv));
            }
        }
        out
    }

    /// First monomial pair `(a, b)` with `<a,b> != -<b,a>°`, scanning words up to `degree_bound`.
    pub fn antisymmetry_witness(&self, degree_bound: usize) -> Option<(Word, Word, Tensor2, Tensor2)> {
        let words = Word::all_up_to(self.ngens, degree_bound);
        for a in &words {
            for b in &words {
                let ab = self.eval_words(a, b);
                let mirror = -swap(&self.eval_words(b, a));
                if ab != mirror {
                    return Some((a.clone(), b.clone(), ab, mirror));
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self, degree_bound: usize) -> bool {
        self.antisymmetry_witness(degree_bound).is_none()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::freealg::{gen, q, tensor2, word, AlgMap};

    pub(crate) fn one() -> NCPoly {
        NCPoly::one()
    }

    /// `<x,x> = x⊗1 - 1⊗x`, `<y,y> = y⊗1 - 1⊗y`, `<x,y> = 0`.
    pub(crate) fn van_den_bergh() -> DoubleBracket {
        let x = gen(0);
        let y = gen(1);
        DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Outer, 2),
            [
                ((Gen(0), Gen(0)), &tensor2(&x, &one()) - &tensor2(&one(), &x)),
                ((Gen(1), Gen(1)), &tensor2(&y, &one()) - &tensor2(&one(), &y)),
            ],
        )
        .unwrap()
    }

    pub(crate) fn right_unit() -> DoubleBracket {
        DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Right, 2),
            [((Gen(0), Gen(1)), tensor2(&one(), &one()))],
        )
        .unwrap()
    }

    #[test]
    fn antisymmetric_partner_is_filled() {
        let db = right_unit();
        assert_eq!(db.entry(1, 0), &tensor2(&one(), &one()).scale(&q(-1)));
    }

    #[test]
    fn diagonal_must_be_antisymmetric() {
        let bad = DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Outer, 1),
            [((Gen(0), Gen(0)), tensor2(&gen(0), &one()))],
        );
        assert!(matches!(bad, Err(BracketError::Antisymmetry { .. })));
    }

    #[test]
    fn conflicting_orders_are_rejected() {
        let t = tensor2(&one(), &one());
        let bad = DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Right, 2),
            [((Gen(0), Gen(1)), t.clone()), ((Gen(1), Gen(0)), t)],
        );
        assert!(matches!(bad, Err(BracketError::Conflict { .. })));
    }

    #[test]
    fn full_table_is_validated() {
        let t = tensor2(&one(), &one());
        let m = Bimodule::untwisted(BimodKind::Right, 2);
        let bad = vec![Tensor2::zero(), t.clone(), t.clone(), Tensor2::zero()];
        assert!(DoubleBracket::from_table(m.clone(), bad.clone()).is_err());
        assert!(DoubleBracket::from_table_unchecked(m.clone(), bad).is_ok());
        assert!(DoubleBracket::from_table(m, vec![Tensor2::zero(), t.clone(), -t, Tensor2::zero()]).is_ok());
    }

    #[test]
    fn out_of_range_letters_are_rejected() {
        let m = Bimodule::untwisted(BimodKind::Outer, 2);
        let r = DoubleBracket::new(m, [((Gen(0), Gen(1)), tensor2(&gen(2), &one()))]);
        assert!(matches!(r, Err(BracketError::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn outer_monomial_formula() {
        // <x, y^2> = y·<x,y> + <x,y>·y with <x,y> = 1⊗1 in the outer structure.
        let m = Bimodule::untwisted(BimodKind::Outer, 2);
        let db = DoubleBracket::new(m, [((Gen(0), Gen(1)), tensor2(&one(), &one()))]).unwrap();
        let got = db.eval(&gen(0), &word(&[1, 1]));
        assert_eq!(got, &tensor2(&gen(1), &one()) + &tensor2(&one(), &gen(1)));
        // <x^2, y> = x * <x,y> + <x,y> * x, where * is the inner structure.
        let got = db.eval(&word(&[0, 0]), &gen(1));
        assert_eq!(got, &tensor2(&one(), &gen(0)) + &tensor2(&gen(0), &one()));
    }

    #[test]
    fn right_leibniz_in_second_slot() {
        let db = right_unit();
        // <x, y^2> = 1⊗y + 1⊗y.
        assert_eq!(db.eval(&gen(0), &word(&[1, 1])), tensor2(&one(), &gen(1)).scale(&q(2)));
        // <y^2, x> = -(1⊗y + 1⊗y)° = -2 y⊗1.
        assert_eq!(db.eval(&word(&[1, 1]), &gen(0)), tensor2(&gen(1), &one()).scale(&q(-2)));
    }

    #[test]
    fn expansion_orders_agree() {
        let s = AlgMap::permutation(&[1, 0]);
        let twisted = Bimodule::twisted(BimodKind::Outer, s.clone(), s).unwrap();
        let tw = DoubleBracket::new(
            twisted,
            [((Gen(0), Gen(0)), &tensor2(&gen(1), &one()) - &tensor2(&one(), &gen(1)))],
        )
        .unwrap();
        for db in [van_den_bergh(), right_unit(), tw] {
            for a in Word::all_up_to(2, 3) {
                for b in Word::all_up_to(2, 2) {
                    assert_eq!(
                        db.eval_words_ordered(&a, &b, ExpansionOrder::FirstArgumentOuter),
                        db.eval_words_ordered(&a, &b, ExpansionOrder::SecondArgumentOuter),
                    );
                }
            }
        }
    }

    #[test]
    fn extension_stays_antisymmetric() {
        assert!(van_den_bergh().is_antisymmetric(3));
        assert!(right_unit().is_antisymmetric(3));
    }

    #[test]
    fn unchecked_table_shows_antisymmetry_failure() {
        let t = tensor2(&one(), &one());
        let m = Bimodule::untwisted(BimodKind::Outer, 2);
        let db = DoubleBracket::from_table_unchecked(m, vec![Tensor2::zero(), t, Tensor2::zero(), Tensor2::zero()]).unwrap();
        let (a, b, _, _) = db.antisymmetry_witness(2).unwrap();
        assert_eq!((a, b), (Word::from_indices(&[0]), Word::from_indices(&[1])));
    }
}
