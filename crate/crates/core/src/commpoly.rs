//! Commutative polynomials over the rationals in an arbitrary ordered variable set,
//! biderivation extension of brackets, and exact linear solving.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::freealg::{q, LinComb, Monomial, Rational};

/// A commutative monomial: variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMono<V>(Vec<(V, u32)>);

impl<V: Ord + Clone> CMono<V> {
    pub fn var(v: V) -> Self {
        CMono(vec![(v, 1)])
    }

    pub fn from_vars(vars: impl IntoIterator<Item = V>) -> Self {
        let mut m = CMono(Vec::new());
        for v in vars {
            m = m.mul(&CMono::var(v));
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.0
    }

    /// Removes one copy of `v`, which must occur.
    pub fn without_one(&self, v: &V) -> CMono<V> {
        let mut out = Vec::with_capacity(self.0.len());
        for (w, e) in &self.0 {
            if w == v {
                if *e > 1 {
                    out.push((w.clone(), e - 1));
                }
            } else {
                out.push((w.clone(), *e));
            }
        }
        CMono(out)
    }
}

impl<V: Ord + Clone> Ord for CMono<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<V: Ord + Clone> PartialOrd for CMono<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Ord + Clone> Monomial for CMono<V> {
    fn unit() -> Self {
        CMono(Vec::new())
    }

    fn mul(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        CMono(out)
    }
}

pub type CPoly<V> = LinComb<CMono<V>>;

pub fn var<V: Ord + Clone>(v: V) -> CPoly<V> {
    CPoly::from_key(CMono::var(v))
}

/// Ring homomorphism fixed by images of variables.
pub fn substitute<V: Ord + Clone, W: Ord + Clone>(p: &CPoly<V>, image: impl Fn(&V) -> CPoly<W>) -> CPoly<W> {
    let mut cache: BTreeMap<V, CPoly<W>> = BTreeMap::new();
    let mut out = CPoly::zero();
    for (m, c) in p.iter() {
        let mut term = CPoly::<W>::constant(c.clone());
        for (v, e) in m.factors() {
            let img = cache.entry(v.clone()).or_insert_with(|| image(v)).clone();
            for _ in 0..*e {
                term = &term * &img;
            }
        }
        out += &term;
    }
    out
}

/// Extends a bracket on variables to polynomials by the Leibniz rule in each slot.
///
/// With `twist`, the cofactors are passed through the ring map
/// (`{f, gh} = twist(g){f,h} + {f,g}twist(h)`).
pub fn biderivation<V: Ord + Clone>(
    f: &CPoly<V>,
    g: &CPoly<V>,
    on_vars: impl Fn(&V, &V) -> CPoly<V>,
    twist: Option<&dyn Fn(&CPoly<V>) -> CPoly<V>>,
) -> CPoly<V> {
    let mut cache: BTreeMap<(V, V), CPoly<V>> = BTreeMap::new();
    let mut out = CPoly::zero();
    for (mf, cf) in f.iter() {
        for (mg, cg) in g.iter() {
            let c = cf * cg;
            for (u, eu) in mf.factors() {
                let rest_f = CPoly::from_key(mf.without_one(u));
                for (v, ev) in mg.factors() {
                    let uv = cache.entry((u.clone(), v.clone())).or_insert_with(|| on_vars(u, v));
                    if uv.is_zero() {
                        continue;
                    }
                    let rest_g = CPoly::from_key(mg.without_one(v));
                    let (rf, rg) = match twist {
                        Some(t) => (t(&rest_f), t(&rest_g)),
                        None => (rest_f.clone(), rest_g),
                    };
                    let mult = &c * q(i64::from(*eu) * i64::from(*ev));
                    out.add_scaled(&(&(&rf * &rg) * uv), &mult);
                }
            }
        }
    }
    out
}

/// Finds `c` with `Σ c_i columns[i] = target`, or `None` when no solution exists.
pub fn solve_linear<V: Ord + Clone>(columns: &[CPoly<V>], target: &CPoly<V>) -> Option<Vec<Rational>> {
    let mut rows: BTreeMap<CMono<V>, usize> = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for m in p.keys() {
            let n = rows.len();
            rows.entry(m.clone()).or_insert(n);
        }
    }
    let ncols = columns.len();
    let mut mat = vec![vec![Rational::zero(); ncols + 1]; rows.len()];
    for (j, p) in columns.iter().enumerate() {
        for (m, c) in p.iter() {
            mat[rows[m]][j] = c.clone();
        }
    }
    for (m, c) in target.iter() {
        mat[rows[m]][ncols] = c.clone();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = Rational::one() / &mat[r][col];
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for k in col..=ncols {
                    let d = &f * &mat[r][k];
                    mat[i][k] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if mat[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = mat[i][ncols].clone();
    }
    Some(sol)
}
