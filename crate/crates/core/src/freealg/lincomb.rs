use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Rational;

/// A key that can be multiplied: words, word tuples, commutative monomials.
pub trait Monomial: Ord + Clone {
    fn unit() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// Finite rational linear combination of keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_key(key: K) -> Self {
        Self::from_term(key, Rational::one())
    }

    pub fn from_term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Re-key every term; colliding keys are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of a map defined on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            if keep(k) {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }
}

impl<K: Monomial> LinComb<K> {
    pub fn one() -> Self {
        Self::from_key(K::unit())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(K::unit(), c)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in rhs.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in rhs.iter() {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        -&self
    }
}

impl<K: Monomial> Mul<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn mul(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = LinComb::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in rhs.iter() {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl<K: Monomial> Mul for LinComb<K> {
    type Output = LinComb<K>;
    fn mul(self, rhs: LinComb<K>) -> LinComb<K> {
        &self * &rhs
    }
}
