use crate::bimodule::BimodKind;
use crate::commpoly::substitute;
use crate::dbracket::DoubleBracket;
use crate::freealg::{AlgMap, Gen, NCPoly, Tensor2};

use super::{eval_nc, induce, EntryVar, MatPoly, PoissonStructure, RepError, RepPoly};

/// How the entry brackets `{X_ij, Y_kl}` are laid out in `Mat_n ⊗ Mat_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorConvention {
    /// `Σ {X_ij, Y_kl} E_kj ⊗ E_il`.
    Vdb,
    /// `Σ {X_ij, Y_kl} E_ij ⊗ E_kl`.
    Tensor,
}

/// An element `Σ T[p,q,r,s] E_pq ⊗ E_rs` of `Mat_n ⊗ Mat_n` over `K[Rep(A, n)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryTensor {
    n: usize,
    entries: Vec<RepPoly>,
}

impl EntryTensor {
    pub fn zero(n: usize) -> Self {
        EntryTensor { n, entries: vec![RepPoly::zero(); n * n * n * n] }
    }

    fn slot(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n + q) * self.n + r) * self.n + s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> &RepPoly {
        &self.entries[self.slot(p, q, r, s)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RepPoly::is_zero)
    }

    /// `X ⊗ Y`.
    pub fn product(x: &MatPoly, y: &MatPoly) -> Self {
        let n = x.dim();
        let mut out = EntryTensor::zero(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let i = out.slot(p, q, r, s);
                        out.entries[i] = x.get(p, q) * y.get(r, s);
                    }
                }
            }
        }
        out
    }

    /// `Σ X(d') ⊗ X(d'')`.
    pub fn of_tensor(d: &Tensor2, n: usize) -> Self {
        let mut out = EntryTensor::zero(n);
        for ([u, v], c) in d.iter() {
            let t = EntryTensor::product(&eval_nc(&NCPoly::from_key(u.clone()), n), &eval_nc(&NCPoly::from_key(v.clone()), n));
            for (a, b) in out.entries.iter_mut().zip(&t.entries) {
                a.add_scaled(b, c);
            }
        }
        out
    }
}

/// The entry brackets of `X(a)` and `X(b)` laid out by `convention`.
pub fn matrix_tensor_bracket(ps: &PoissonStructure, convention: TensorConvention, a: &NCPoly, b: &NCPoly) -> EntryTensor {
    let n = ps.dim();
    let (x, y) = (eval_nc(a, n), eval_nc(b, n));
    let mut out = EntryTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = ps.poisson_eval(x.get(i, j), y.get(k, l));
                    let slot = match convention {
                        TensorConvention::Vdb => out.slot(k, j, i, l),
                        TensorConvention::Tensor => out.slot(i, j, k, l),
                    };
                    out.entries[slot] = v;
                }
            }
        }
    }
    out
}

/// Whether `φ_n` intertwines the brackets induced on `K[Rep(A_1,n)]` and `K[Rep(A_2,n)]`,
/// checked on all pairs of generator entries.
pub fn check_rep_morphism(phi: &AlgMap, db1: &DoubleBracket, db2: &DoubleBracket, n: usize) -> Result<bool, RepError> {
    if !db1.bimodule().is_untwisted() || !db2.bimodule().is_untwisted() {
        return Err(RepError::Twisted);
    }
    if db1.kind() != db2.kind() {
        return Err(RepError::KindMismatch(db1.kind(), db2.kind()));
    }
    if !matches!(db1.kind(), BimodKind::Outer | BimodKind::Right) {
        return Err(RepError::WrongKind { expected: "outer or right", got: db1.kind() });
    }
    if phi.source_gens() != db1.ngens() {
        return Err(RepError::GeneratorCount { map: phi.source_gens(), bracket: db1.ngens() });
    }
    let ps1 = induce(db1, n)?;
    let ps2 = induce(db2, n)?;
    let images: Vec<MatPoly> = (0..db1.ngens()).map(|g| eval_nc(phi.image(Gen(g as u16)), n)).collect();
    let phi_n = |v: &EntryVar| images[v.gen.index()].get(v.row as usize, v.col as usize).clone();
    let vars = ps1.vars();
    for v in &vars {
        for w in &vars {
            let lhs = ps2.poisson_eval(&phi_n(v), &phi_n(w));
            let rhs = substitute(&ps1.table(v, w), phi_n);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The bracket a right (or left) double bracket induces on the abelianization,
/// identified with `K[x_1, ..., x_r]` through `x_i -> (x_i)_{11}`.
pub fn abelianized_bracket(db: &DoubleBracket) -> Result<PoissonStructure, RepError> {
    if !matches!(db.kind(), BimodKind::Right | BimodKind::Left) {
        return Err(RepError::WrongKind { expected: "right or left", got: db.kind() });
    }
    induce(db, 1)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{one, unit_bracket};
    use super::super::entry;
    use super::*;
    use crate::bimodule::Bimodule;
    use crate::dbracket::{check_morphism, is_weak_poisson, tests::van_den_bergh, DEFAULT_DEGREE_BOUND};
    use crate::freealg::{frac, gen, q, tensor2, word, Transposition};

    fn e(n: usize, i: usize, j: usize) -> MatPoly {
        let mut m = MatPoly::zero(n);
        m.entries[i * n + j] = RepPoly::one();
        m
    }

    #[test]
    fn unit_bracket_tensor_conventions() {
        let n = 2;
        let ps = induce(&unit_bracket(BimodKind::Right), n).unwrap();
        let t = matrix_tensor_bracket(&ps, TensorConvention::Tensor, &gen(0), &gen(1));
        assert_eq!(t, EntryTensor::product(&MatPoly::identity(n), &MatPoly::identity(n)));
        let v = matrix_tensor_bracket(&ps, TensorConvention::Vdb, &gen(0), &gen(1));
        let mut expected = EntryTensor::zero(n);
        for i in 0..n {
            for j in 0..n {
                let p = EntryTensor::product(&e(n, i, j), &e(n, j, i));
                for (a, b) in expected.entries.iter_mut().zip(&p.entries) {
                    *a += b;
                }
            }
        }
        assert_eq!(v, expected);
    }

    #[test]
    fn zero_bracket_gives_zero_array() {
        let ps = induce(&DoubleBracket::zero(Bimodule::untwisted(BimodKind::Outer, 2)), 2).unwrap();
        assert!(matrix_tensor_bracket(&ps, TensorConvention::Vdb, &gen(0), &word(&[0, 1])).is_zero());
    }

    #[test]
    fn arrays_are_images_of_the_double_bracket() {
        let cases = [
            (van_den_bergh(), TensorConvention::Vdb),
            (unit_bracket(BimodKind::Right), TensorConvention::Tensor),
        ];
        for (db, conv) in cases {
            let ps = induce(&db, 2).unwrap();
            for a in &crate::freealg::Word::all_up_to(2, 2) {
                for b in &crate::freealg::Word::all_up_to(2, 2) {
                    let (a, b) = (NCPoly::from_key(a.clone()), NCPoly::from_key(b.clone()));
                    let got = matrix_tensor_bracket(&ps, conv, &a, &b);
                    assert_eq!(got, EntryTensor::of_tensor(&db.eval(&a, &b), 2));
                }
            }
        }
    }

    #[test]
    fn identity_and_surjection_intertwine() {
        let db = unit_bracket(BimodKind::Right);
        assert!(check_rep_morphism(&AlgMap::identity(2), &db, &db, 2).unwrap());
        let vdb = van_den_bergh();
        assert!(check_rep_morphism(&AlgMap::identity(2), &vdb, &vdb, 2).unwrap());
        // K<x,y,z> -> K<x,y>, z -> 0, both carrying <x,y> = 1⊗1.
        let db3 = DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Right, 3),
            [((Gen(0), Gen(1)), tensor2(&one(), &one()))],
        )
        .unwrap();
        let phi = AlgMap::new(vec![gen(0), gen(1), NCPoly::zero()]);
        assert!(check_morphism(&phi, &db3, &db).unwrap());
        for n in 1..=2 {
            assert!(check_rep_morphism(&phi, &db3, &db, n).unwrap());
        }
        let t12 = Transposition::T12;
        assert!(matches!(is_weak_poisson(&db3, t12, t12, DEFAULT_DEGREE_BOUND), crate::dbracket::JacVerdict::WeakPoisson(..)));
        assert!(matches!(is_weak_poisson(&db, t12, t12, DEFAULT_DEGREE_BOUND), crate::dbracket::JacVerdict::WeakPoisson(..)));
    }

    #[test]
    fn morphism_intertwines_on_products() {
        // x -> x + y, y -> y is a morphism of <x,y> = 1⊗1 to itself in the right structure.
        let db = unit_bracket(BimodKind::Right);
        let phi = AlgMap::new(vec![&gen(0) + &gen(1), gen(1)]);
        assert!(check_morphism(&phi, &db, &db).unwrap());
        assert!(check_rep_morphism(&phi, &db, &db, 2).unwrap());
        let ps = induce(&db, 2).unwrap();
        let images: Vec<MatPoly> = (0..2).map(|g| eval_nc(phi.image(Gen(g)), 2)).collect();
        let phi_n = |p: &RepPoly| substitute(p, |v: &EntryVar| images[v.gen.index()].get(v.row as usize, v.col as usize).clone());
        let f = &(&entry(0, 0, 1) * &entry(1, 1, 1)) + &entry(0, 1, 0);
        let g = &entry(1, 0, 0) * &entry(0, 1, 1);
        assert_eq!(ps.poisson_eval(&phi_n(&f), &phi_n(&g)), phi_n(&ps.poisson_eval(&f, &g)));
    }

    #[test]
    fn morphism_kind_errors() {
        let r = unit_bracket(BimodKind::Right);
        let o = unit_bracket(BimodKind::Outer);
        let id = AlgMap::identity(2);
        assert_eq!(check_rep_morphism(&id, &r, &o, 1), Err(RepError::KindMismatch(BimodKind::Right, BimodKind::Outer)));
        let l = unit_bracket(BimodKind::Left);
        assert!(matches!(check_rep_morphism(&id, &l, &l, 1), Err(RepError::WrongKind { .. })));
    }

    #[test]
    fn abelianized_constant_bracket() {
        // <x_i, x_j> = λ_ij 1⊗1 with λ_12 = 2, λ_13 = -1/3, λ_23 = 5.
        let lambda = [(0u16, 1u16, q(2)), (0, 2, frac(-1, 3)), (1, 2, q(5))];
        let db = DoubleBracket::new(
            Bimodule::untwisted(BimodKind::Right, 3),
            lambda.iter().map(|(i, j, l)| ((Gen(*i), Gen(*j)), tensor2(&one(), &one()).scale(l))),
        )
        .unwrap();
        let ps = abelianized_bracket(&db).unwrap();
        assert_eq!(ps, induce(&db, 1).unwrap());
        for (i, j, l) in &lambda {
            let (xi, xj) = (entry(*i as usize, 0, 0), entry(*j as usize, 0, 0));
            assert_eq!(ps.poisson_eval(&xi, &xj), RepPoly::constant(l.clone()));
            assert_eq!(ps.poisson_eval(&xj, &xi), RepPoly::constant(-l.clone()));
        }
        assert!(ps.jacobi_sweep().unwrap().holds());
        let zero = abelianized_bracket(&DoubleBracket::zero(Bimodule::untwisted(BimodKind::Left, 2))).unwrap();
        assert!(zero.vars().iter().all(|v| zero.vars().iter().all(|w| zero.table(v, w).is_zero())));
        assert!(abelianized_bracket(&van_den_bergh()).is_err());
    }
}
