//! The classical Yang–Baxter equation in `Mat_N^{⊗3}` and the linear Poisson bracket
//! an `r`-matrix induces on the entries of a generic matrix.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::commpoly::{biderivation, var};
use crate::freealg::{frac, q, Names, Rational};
use crate::repspace::{render_rep, EntryVar, RepPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YbeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// `Σ r_{ij,kl} e_ij ⊗ e_kl`, indices zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatTensor2 {
    n: usize,
    entries: BTreeMap<[usize; 4], Rational>,
}

/// An element of `Mat_N^{⊗3}` in the basis `e_ij ⊗ e_kl ⊗ e_pq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatTensor3 {
    n: usize,
    entries: BTreeMap<[usize; 6], Rational>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl MatTensor2 {
    pub fn zero(n: usize) -> Self {
        MatTensor2 { n, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `c · e_ij ⊗ e_kl`.
    pub fn add(&mut self, idx: [usize; 4], c: Rational) {
        assert!(idx.iter().all(|&i| i < self.n), "index out of range");
        add_into(&mut self.entries, idx, c);
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        self.entries.get(&[i, j, k, l]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<[usize; 4], Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `r° = r'' ⊗ r'`.
    pub fn swap(&self) -> MatTensor2 {
        let entries = self.entries.iter().map(|(&[i, j, k, l], c)| ([k, l, i, j], c.clone())).collect();
        MatTensor2 { n: self.n, entries }
    }

    pub fn sub(&self, other: &MatTensor2) -> MatTensor2 {
        let mut out = self.clone();
        for (&k, c) in &other.entries {
            add_into(&mut out.entries, k, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MatTensor2 {
        let mut out = MatTensor2::zero(self.n);
        for (&k, v) in &self.entries {
            add_into(&mut out.entries, k, v * c);
        }
        out
    }

    /// Places `r` in two of three tensor slots, the third carrying the identity.
    /// `slots = [s, t]` puts `r'` in slot `s` and `r''` in slot `t`.
    fn embed(&self, slots: [usize; 2]) -> MatTensor3 {
        let mut out = MatTensor3::zero(self.n);
        let free = 3 - slots[0] - slots[1];
        for (&[i, j, k, l], c) in &self.entries {
            for m in 0..self.n {
                let mut idx = [0; 6];
                idx[2 * slots[0]] = i;
                idx[2 * slots[0] + 1] = j;
                idx[2 * slots[1]] = k;
                idx[2 * slots[1] + 1] = l;
                idx[2 * free] = m;
                idx[2 * free + 1] = m;
                add_into(&mut out.entries, idx, c.clone());
            }
        }
        out
    }

    /// Parses lines `i j k l coeff` with one-based indices. `#` starts a comment; an
    /// optional `dim N` line fixes the size, otherwise the largest index is used.
    pub fn parse(text: &str) -> Result<MatTensor2, YbeError> {
        let mut dim = None;
        let mut terms = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| YbeError::Parse { line: no + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "dim" {
                let n: usize = fields
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| err("expected `dim N` with N >= 1".into()))?;
                dim = Some(n);
                continue;
            }
            if fields.len() != 5 {
                return Err(err(format!("expected `i j k l coeff`, found {} fields", fields.len())));
            }
            let mut idx = [0usize; 4];
            for (slot, f) in idx.iter_mut().zip(&fields[..4]) {
                *slot = f
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| err(format!("bad index `{f}`")))?
                    - 1;
            }
            let c: Rational = fields[4].parse().map_err(|_| err(format!("bad coefficient `{}`", fields[4])))?;
            terms.push((no + 1, idx, c));
        }
        let largest = terms.iter().flat_map(|(_, idx, _)| idx.iter().map(|i| i + 1)).max().unwrap_or(0);
        let n = dim.unwrap_or(largest);
        if n == 0 {
            return Err(YbeError::ZeroDimension);
        }
        let mut r = MatTensor2::zero(n);
        for (line, idx, c) in terms {
            if idx.iter().any(|&i| i >= n) {
                return Err(YbeError::Parse { line, msg: format!("index exceeds dimension {n}") });
            }
            r.add(idx, c);
        }
        Ok(r)
    }
}

/// One term per line, `i j k l coeff`, one-based.
impl std::fmt::Display for MatTensor2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "dim {}", self.n)?;
        for (&[i, j, k, l], c) in &self.entries {
            writeln!(f, "{} {} {} {} {c}", i + 1, j + 1, k + 1, l + 1)?;
        }
        Ok(())
    }
}

impl MatTensor3 {
    pub fn zero(n: usize) -> Self {
        MatTensor3 { n, entries: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<[usize; 6], Rational> {
        &self.entries
    }

    pub fn mul(&self, other: &MatTensor3) -> MatTensor3 {
        // Index the right factor by its three row indices.
        let mut by_rows: BTreeMap<[usize; 3], Vec<(&[usize; 6], &Rational)>> = BTreeMap::new();
        for (k, c) in &other.entries {
            by_rows.entry([k[0], k[2], k[4]]).or_default().push((k, c));
        }
        let mut out = MatTensor3::zero(self.n);
        for (a, ca) in &self.entries {
            if let Some(rs) = by_rows.get(&[a[1], a[3], a[5]]) {
                for (b, cb) in rs {
                    add_into(&mut out.entries, [a[0], b[1], a[2], b[3], a[4], b[5]], ca * *cb);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatTensor3) -> MatTensor3 {
        let mut out = self.clone();
        for (&k, c) in &other.entries {
            add_into(&mut out.entries, k, c.clone());
        }
        out
    }

    pub fn commutator(&self, other: &MatTensor3) -> MatTensor3 {
        let mut out = self.mul(other);
        for (&k, c) in &other.mul(self).entries {
            add_into(&mut out.entries, k, -c.clone());
        }
        out
    }
}

fn commutator_sum(n: usize, pairs: &[(&MatTensor3, &MatTensor3)]) -> MatTensor3 {
    let parts: Vec<MatTensor3> = pairs.par_iter().map(|(a, b)| a.commutator(b)).collect();
    parts.iter().fold(MatTensor3::zero(n), |acc, p| acc.add(p))
}

/// `[r12, r13] + [r12, r23] + [r32, r13]`, with `r32 = 1 ⊗ r'' ⊗ r'`.
///
/// This is the condition under which the entry bracket of [`entry_bracket`] satisfies
/// Jacobi. For skew `r` it agrees with [`classical_cybe_defect`]; otherwise the two differ.
pub fn cybe_defect(r: &MatTensor2) -> MatTensor3 {
    let (r12, r13, r23, r32) = (r.embed([0, 1]), r.embed([0, 2]), r.embed([1, 2]), r.embed([2, 1]));
    commutator_sum(r.n, &[(&r12, &r13), (&r12, &r23), (&r32, &r13)])
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`, the textbook form solved by [`standard_r`].
pub fn classical_cybe_defect(r: &MatTensor2) -> MatTensor3 {
    let (r12, r13, r23) = (r.embed([0, 1]), r.embed([0, 2]), r.embed([1, 2]));
    commutator_sum(r.n, &[(&r12, &r13), (&r12, &r23), (&r13, &r23)])
}

/// `h ⊗ e - e ⊗ h` with `h = e11 - e22`, `e = e12`: a skew solution on `Mat_2`.
pub fn jordanian_r() -> MatTensor2 {
    let mut r = MatTensor2::zero(2);
    r.add([0, 0, 0, 1], q(1));
    r.add([1, 1, 0, 1], q(-1));
    r.add([0, 1, 0, 0], q(-1));
    r.add([0, 1, 1, 1], q(1));
    r
}

/// `Σ_{i<j} e_ij ⊗ e_ji + ½ Σ_i e_ii ⊗ e_ii`.
pub fn standard_r(n: usize) -> MatTensor2 {
    let mut r = MatTensor2::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            r.add([i, j, j, i], q(1));
        }
        r.add([i, i, i, i], frac(1, 2));
    }
    r
}

/// `Σ_{i,j} e_ij ⊗ e_ji`.
pub fn casimir(n: usize) -> MatTensor2 {
    let mut r = MatTensor2::zero(n);
    for i in 0..n {
        for j in 0..n {
            r.add([i, j, j, i], q(1));
        }
    }
    r
}

/// The entry of a generic matrix `V`, as a variable.
pub fn v(i: usize, j: usize) -> EntryVar {
    EntryVar::new(0, i, j)
}

/// Linear brackets `{v_ij, v_kl}` on the entries of a generic `N × N` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryBracket {
    n: usize,
    table: Vec<RepPoly>,
}

/// `{v_ij, v_kl}`: the `(ij, kl)` coefficient of `[r, V ⊗ 1] - [r°, 1 ⊗ V]`.
pub fn entry_bracket(r: &MatTensor2) -> EntryBracket {
    let n = r.dim();
    let rs = r.swap();
    let mut table = vec![RepPoly::zero(); n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut p = RepPoly::zero();
                    for a in 0..n {
                        p.add_scaled(&var(v(a, j)), &r.get(i, a, k, l));
                        p.add_scaled(&var(v(i, a)), &-r.get(a, j, k, l));
                        p.add_scaled(&var(v(a, l)), &-rs.get(i, j, k, a));
                        p.add_scaled(&var(v(k, a)), &rs.get(i, j, a, l));
                    }
                    table[((i * n + j) * n + k) * n + l] = p;
                }
            }
        }
    }
    EntryBracket { n, table }
}

/// Outcome of the Jacobi sweep over triples of entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryJacobiReport {
    pub n: usize,
    pub tuples_checked: usize,
    pub witness: Option<([EntryVar; 3], RepPoly)>,
}

impl EntryJacobiReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl EntryBracket {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &RepPoly {
        &self.table[((i * self.n + j) * self.n + k) * self.n + l]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(RepPoly::is_zero)
    }

    fn on_vars(&self, a: &EntryVar, b: &EntryVar) -> RepPoly {
        self.get(a.row as usize, a.col as usize, b.row as usize, b.col as usize).clone()
    }

    pub fn eval(&self, f: &RepPoly, g: &RepPoly) -> RepPoly {
        biderivation(f, g, |a, b| self.on_vars(a, b), None)
    }

    pub fn jacobi_defect(&self, f: &RepPoly, g: &RepPoly, h: &RepPoly) -> RepPoly {
        let mut out = self.eval(f, &self.eval(g, h));
        out += &self.eval(g, &self.eval(h, f));
        out += &self.eval(h, &self.eval(f, g));
        out
    }

    pub fn render(&self, i: usize, j: usize, k: usize, l: usize) -> String {
        render_rep(self.get(i, j, k, l), &Names::new(vec!["v".into()]))
    }
}

/// Checks the Jacobi identity on every triple of entries.
pub fn check_entry_jacobi(eb: &EntryBracket) -> EntryJacobiReport {
    let n = eb.n;
    let vars: Vec<EntryVar> = (0..n * n).map(|k| v(k / n, k % n)).collect();
    let m = vars.len();
    let total = m * m * m;
    let triple = |idx: usize| [vars[idx / (m * m)], vars[(idx / m) % m], vars[idx % m]];
    let found = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let [a, b, c] = triple(idx);
            let d = eb.jacobi_defect(&var(a), &var(b), &var(c));
            (!d.is_zero()).then_some((idx, d))
        })
        .find_first(|_| true);
    match found {
        Some((idx, d)) => EntryJacobiReport { n, tuples_checked: idx + 1, witness: Some((triple(idx), d)) },
        None => EntryJacobiReport { n, tuples_checked: total, witness: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e12e12() -> MatTensor2 {
        let mut r = MatTensor2::zero(2);
        r.add([0, 1, 0, 1], q(1));
        r
    }

    #[test]
    fn standard_solutions() {
        assert_eq!(standard_r(1).entries().iter().collect::<Vec<_>>(), vec![(&[0, 0, 0, 0], &frac(1, 2))]);
        let r2 = standard_r(2);
        let mut expected = MatTensor2::zero(2);
        expected.add([0, 1, 1, 0], q(1));
        expected.add([0, 0, 0, 0], frac(1, 2));
        expected.add([1, 1, 1, 1], frac(1, 2));
        assert_eq!(r2, expected);
        for n in 1..=3 {
            assert!(classical_cybe_defect(&standard_r(n)).is_zero(), "N = {n}");
        }
        // Not a solution of the form with r32 once N >= 2; N = 1 is commutative.
        assert!(cybe_defect(&standard_r(1)).is_zero());
        for n in 2..=3 {
            assert!(!cybe_defect(&standard_r(n)).is_zero(), "N = {n}");
        }
    }

    #[test]
    fn forms_agree_on_skew_solutions() {
        let r = jordanian_r();
        assert_eq!(r.swap(), r.scale(&q(-1)));
        assert!(cybe_defect(&r).is_zero());
        assert!(classical_cybe_defect(&r).is_zero());
        let eb = entry_bracket(&r);
        assert!(!eb.is_zero());
        assert!(check_entry_jacobi(&eb).holds());
    }

    #[test]
    fn corrected_standard_r_is_skew() {
        for n in 2..=3 {
            let s = standard_r(n).sub(&casimir(n).scale(&frac(1, 2)));
            assert_eq!(s.swap(), s.scale(&q(-1)));
        }
    }

    #[test]
    fn casimir_values() {
        assert_eq!(casimir(1).entries().len(), 1);
        let c = casimir(2);
        assert_eq!(c.entries().len(), 4);
        assert_eq!(c.get(0, 1, 1, 0), q(1));
        assert_eq!(c.swap(), c);
    }

    #[test]
    fn square_zero_tensor_solves_both_forms() {
        // Every product of two embeddings of e12⊗e12 contains e12·e12 = 0.
        assert!(cybe_defect(&MatTensor2::zero(2)).is_zero());
        assert!(cybe_defect(&e12e12()).is_zero());
        assert!(classical_cybe_defect(&e12e12()).is_zero());
        assert!(check_entry_jacobi(&entry_bracket(&e12e12())).holds());
    }

    #[test]
    fn standard_entry_brackets() {
        // Expanding the commutators by hand for N = 2:
        // {v11, v22} = 0, {v12, v21} = v22 - v11, {v11, v12} = -1/2 v12.
        let eb = entry_bracket(&standard_r(2));
        assert!(eb.get(0, 0, 1, 1).is_zero());
        assert!(eb.get(1, 1, 0, 0).is_zero());
        assert_eq!(eb.get(0, 1, 1, 0), &(&var(v(1, 1)) - &var(v(0, 0))));
        assert_eq!(eb.get(0, 0, 0, 1), &var(v(0, 1)).scale(&frac(-1, 2)));
        assert_eq!(eb.render(0, 1, 1, 0), "-v[1,1] + v[2,2]");
        for n in 2..=3 {
            let eb = entry_bracket(&standard_r(n));
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            assert_eq!(eb.get(i, j, k, l), &-eb.get(k, l, i, j).clone());
                            assert!(eb.get(i, j, k, l).keys().all(|m| m.degree() == 1));
                        }
                    }
                }
            }
            assert!(!check_entry_jacobi(&eb).holds(), "N = {n}");
        }
    }

    #[test]
    fn zero_r_gives_zero_bracket() {
        let eb = entry_bracket(&MatTensor2::zero(2));
        assert!(eb.is_zero());
        assert!(check_entry_jacobi(&eb).holds());
    }

    #[test]
    fn sparse_file_round_trip() {
        let r = standard_r(3);
        assert_eq!(MatTensor2::parse(&r.to_string()).unwrap(), r);
        let parsed = MatTensor2::parse("# r\n1 2 2 1 1\n1 1 1 1 1/2\n2 2 2 2 1/2\n").unwrap();
        assert_eq!(parsed, standard_r(2));
        assert!(matches!(MatTensor2::parse("1 2 3\n"), Err(YbeError::Parse { line: 1, .. })));
        assert!(matches!(MatTensor2::parse("dim 2\n1 3 1 1 1\n"), Err(YbeError::Parse { line: 2, .. })));
        assert!(MatTensor2::parse("0 1 1 1 1").is_err());
    }
}
