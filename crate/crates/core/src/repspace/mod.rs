//! Representation spaces `Rep(A, n)` of free algebras: generic matrices, the brackets
//! induced on their coordinate rings, traces and morphisms.

mod matrix;
mod trace;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bimodule::BimodKind;
use crate::commpoly::{biderivation, substitute, var, CMono, CPoly};
use crate::dbracket::{BracketError, DoubleBracket};
use crate::freealg::{render, AlgMap, Gen, NCPoly, Names, Word};

pub use matrix::{abelianized_bracket, check_rep_morphism, matrix_tensor_bracket, EntryTensor, TensorConvention};
pub use trace::{express_in_traces, trace_bracket, trace_of, DEFAULT_TRACE_WORD_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("matrix size must be at least 1")]
    ZeroDimension,
    #[error("representation brackets need equal left and right twists")]
    UnequalTwists,
    #[error("the Jacobi sweep only runs on untwisted structures; Poisson is only established for trivial twists")]
    TwistedSweep,
    #[error("this operation needs a {expected} bracket, got {got}")]
    WrongKind { expected: &'static str, got: BimodKind },
    #[error("bimodule kinds differ: {0} vs {1}")]
    KindMismatch(BimodKind, BimodKind),
    #[error("morphism checks need untwisted brackets")]
    Twisted,
    #[error("map has {map} source generators but the bracket has {bracket}")]
    GeneratorCount { map: usize, bracket: usize },
    #[error("degree {degree} part is not a polynomial in traces of words of length at most {bound}")]
    NotInTraceRing { degree: u32, bound: usize },
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// The coordinate `(x_g)_{row,col}` of `Rep(A, n)`, zero-based internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntryVar {
    pub gen: Gen,
    pub row: u16,
    pub col: u16,
}

impl EntryVar {
    pub fn new(gen: usize, row: usize, col: usize) -> Self {
        EntryVar { gen: Gen(gen as u16), row: row as u16, col: col as u16 }
    }

    pub fn render(&self, names: &Names) -> String {
        format!("{}[{},{}]", names.get(self.gen.index()), self.row + 1, self.col + 1)
    }
}

impl fmt::Display for EntryVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Names::indexed(self.gen.index() + 1)))
    }
}

/// Polynomial functions on `Rep(A, n)`.
pub type RepPoly = CPoly<EntryVar>;

pub fn entry(gen: usize, row: usize, col: usize) -> RepPoly {
    var(EntryVar::new(gen, row, col))
}

/// Renders a commutative polynomial with `name^e` powers.
pub fn render_cpoly<V: Ord + Clone>(p: &CPoly<V>, name: impl Fn(&V) -> String) -> String {
    render(
        p,
        |m: &CMono<V>| vec![m.degree() as usize],
        |m| {
            if m.factors().is_empty() {
                return "1".to_string();
            }
            m.factors()
                .iter()
                .map(|(v, e)| if *e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                .collect::<Vec<_>>()
                .join("*")
        },
    )
}

pub fn render_rep(p: &RepPoly, names: &Names) -> String {
    render_cpoly(p, |v| v.render(names))
}

/// An `n × n` matrix of polynomial functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    n: usize,
    entries: Vec<RepPoly>,
}

impl MatPoly {
    pub fn zero(n: usize) -> Self {
        MatPoly { n, entries: vec![RepPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatPoly::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = RepPoly::one();
        }
        m
    }

    /// The generic matrix `X(x_g)`.
    pub fn generic(gen: usize, n: usize) -> Self {
        let entries = (0..n * n).map(|k| entry(gen, k / n, k % n)).collect();
        MatPoly { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RepPoly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &MatPoly) -> MatPoly {
        let n = self.n;
        let mut out = MatPoly::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &MatPoly, c: &crate::freealg::Rational) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_scaled(b, c);
        }
    }

    pub fn trace(&self) -> RepPoly {
        let mut t = RepPoly::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn render(&self, names: &Names) -> String {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| render_rep(self.get(i, j), names)).collect::<Vec<_>>().join(" | "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn eval_word(w: &Word, n: usize) -> MatPoly {
    w.letters()
        .iter()
        .fold(MatPoly::identity(n), |acc, g| acc.mul(&MatPoly::generic(g.index(), n)))
}

/// `X(p)`: the algebra map `A -> Mat_n(K[Rep(A,n)])` sending `x_g` to its generic matrix.
pub fn eval_nc(p: &NCPoly, n: usize) -> MatPoly {
    let mut out = MatPoly::zero(n);
    for (w, c) in p.iter() {
        out.add_scaled(&eval_word(w, n), c);
    }
    out
}

/// Antisymmetric biderivation on `K[Rep(A, n)]` given on generator entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    n: usize,
    ngens: usize,
    kind: BimodKind,
    twist: AlgMap,
    /// `α_n` on each entry variable; empty when untwisted.
    twist_images: Vec<RepPoly>,
    table: Vec<RepPoly>,
}

/// Index arrangement `{a_ij, b_kl} = d'_{pq} d''_{rs}` for each kind.
fn arrangement(kind: BimodKind, i: usize, j: usize, k: usize, l: usize) -> [(usize, usize); 2] {
    match kind {
        BimodKind::Outer => [(k, j), (i, l)],
        BimodKind::Inner => [(i, l), (k, j)],
        BimodKind::Right => [(i, j), (k, l)],
        BimodKind::Left => [(k, l), (i, j)],
    }
}

/// The bracket on `K[Rep(A, n)]` induced by a double bracket with `α = β`.
pub fn induce(db: &DoubleBracket, n: usize) -> Result<PoissonStructure, RepError> {
    if n == 0 {
        return Err(RepError::ZeroDimension);
    }
    let m = db.bimodule();
    if m.alpha() != m.beta() {
        return Err(RepError::UnequalTwists);
    }
    let r = db.ngens();
    let nv = r * n * n;
    let mut table = vec![RepPoly::zero(); nv * nv];
    for a in 0..r {
        for b in 0..r {
            let d = db.entry(a, b);
            if d.is_zero() {
                continue;
            }
            let mats: Vec<(MatPoly, MatPoly, &crate::freealg::Rational)> =
                d.iter().map(|([u, v], c)| (eval_word(u, n), eval_word(v, n), c)).collect();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let [(p, q), (s, t)] = arrangement(db.kind(), i, j, k, l);
                            let mut val = RepPoly::zero();
                            for (x, y, c) in &mats {
                                val.add_scaled(&(x.get(p, q) * y.get(s, t)), c);
                            }
                            let v = var_index(n, EntryVar::new(a, i, j));
                            let w = var_index(n, EntryVar::new(b, k, l));
                            table[v * nv + w] = val;
                        }
                    }
                }
            }
        }
    }
    let twist = m.alpha().clone();
    let twist_images = if m.is_untwisted() {
        Vec::new()
    } else {
        (0..nv)
            .map(|idx| {
                let v = var_at(n, idx);
                eval_nc(twist.image(v.gen), n).get(v.row as usize, v.col as usize).clone()
            })
            .collect()
    };
    Ok(PoissonStructure { n, ngens: r, kind: db.kind(), twist, twist_images, table })
}

fn var_index(n: usize, v: EntryVar) -> usize {
    (v.gen.index() * n + v.row as usize) * n + v.col as usize
}

fn var_at(n: usize, idx: usize) -> EntryVar {
    EntryVar::new(idx / (n * n), (idx / n) % n, idx % n)
}

/// Outcome of sweeping the Jacobi identity over generator-entry triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepJacobiReport {
    pub n: usize,
    pub ngens: usize,
    pub tuples_checked: usize,
    pub witness: Option<([EntryVar; 3], RepPoly)>,
}

impl RepJacobiReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl PoissonStructure {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn kind(&self) -> BimodKind {
        self.kind
    }

    pub fn twist(&self) -> &AlgMap {
        &self.twist
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist_images.is_empty()
    }

    pub fn vars(&self) -> Vec<EntryVar> {
        (0..self.ngens * self.n * self.n).map(|i| var_at(self.n, i)).collect()
    }

    fn in_range(&self, v: &EntryVar) -> bool {
        v.gen.index() < self.ngens && (v.row as usize) < self.n && (v.col as usize) < self.n
    }

    /// `{v, w}` on entry variables. Variables outside the table bracket to zero.
    pub fn table(&self, v: &EntryVar, w: &EntryVar) -> RepPoly {
        if !self.in_range(v) || !self.in_range(w) {
            return RepPoly::zero();
        }
        let nv = self.ngens * self.n * self.n;
        self.table[var_index(self.n, *v) * nv + var_index(self.n, *w)].clone()
    }

    /// `α_n`, the ring map induced by the twist.
    pub fn apply_twist(&self, p: &RepPoly) -> RepPoly {
        if self.is_untwisted() {
            return p.clone();
        }
        substitute(p, |v| {
            if self.in_range(v) {
                self.twist_images[var_index(self.n, *v)].clone()
            } else {
                var(*v)
            }
        })
    }

    /// `{f, g}`, extended from the table by the (twisted) Leibniz rules.
    pub fn poisson_eval(&self, f: &RepPoly, g: &RepPoly) -> RepPoly {
        let on = |v: &EntryVar, w: &EntryVar| self.table(v, w);
        if self.is_untwisted() {
            biderivation(f, g, on, None)
        } else {
            let tw = |p: &RepPoly| self.apply_twist(p);
            biderivation(f, g, on, Some(&tw))
        }
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobi_defect(&self, f: &RepPoly, g: &RepPoly, h: &RepPoly) -> RepPoly {
        let mut out = self.poisson_eval(f, &self.poisson_eval(g, h));
        out += &self.poisson_eval(g, &self.poisson_eval(h, f));
        out += &self.poisson_eval(h, &self.poisson_eval(f, g));
        out
    }

    /// Checks the Jacobi identity on all triples of generator entries.
    pub fn jacobi_sweep(&self) -> Result<RepJacobiReport, RepError> {
        if !self.is_untwisted() {
            return Err(RepError::TwistedSweep);
        }
        let vars = self.vars();
        let nv = vars.len();
        let total = nv * nv * nv;
        let triple = |idx: usize| [vars[idx / (nv * nv)], vars[(idx / nv) % nv], vars[idx % nv]];
        let found = (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let [u, v, w] = triple(idx);
                let d = self.jacobi_defect(&var(u), &var(v), &var(w));
                (!d.is_zero()).then_some((idx, d))
            })
            .find_first(|_| true);
        Ok(match found {
            Some((idx, d)) => RepJacobiReport {
                n: self.n,
                ngens: self.ngens,
                tuples_checked: idx + 1,
                witness: Some((triple(idx), d)),
            },
            None => RepJacobiReport { n: self.n, ngens: self.ngens, tuples_checked: total, witness: None },
        })
    }
}
