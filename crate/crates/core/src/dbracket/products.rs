use crate::bimodule::BimodKind;
use crate::commpoly::{biderivation, CMono, CPoly};
use crate::freealg::{mult, necklace_project, AlgMap, LinComb, NCPoly, Necklace, Perm3, Tensor3};

use super::{BracketError, DoubleBracket};

/// Polynomials in necklaces, i.e. elements of `Sym(A/[A,A])`.
pub type SymPoly = CPoly<Necklace>;

/// `{a,b}_m = <a,b>'<a,b>''`.
pub fn mult_bracket(db: &DoubleBracket, a: &NCPoly, b: &NCPoly) -> NCPoly {
    mult(&db.eval(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LodaySide {
    /// `{a,{b,c}} - {{a,b},c} - {b,{a,c}}`.
    Left,
    /// `{{a,b},c} - {a,{b,c}} - {{a,c},b}`.
    Right,
}

pub fn loday_defect(db: &DoubleBracket, side: LodaySide, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> NCPoly {
    let m = |u: &NCPoly, v: &NCPoly| mult_bracket(db, u, v);
    match side {
        LodaySide::Left => &(&m(a, &m(b, c)) - &m(&m(a, b), c)) - &m(b, &m(a, c)),
        LodaySide::Right => &(&m(&m(a, b), c) - &m(a, &m(b, c))) - &m(&m(a, c), b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistSide {
    /// `α_3<a,<b,c>>_L + τ_(123)α_3<b,<c,a>>_L + τ_(132)α_3<c,<a,b>>_L`.
    Left,
    /// `α_1<<a,b>,c>_R + τ_(123)α_1<<b,c>,a>_R + τ_(132)α_1<<c,a>,b>_R`.
    Right,
}

fn twist_factor(t: &Tensor3, alpha: &AlgMap, k: usize) -> Tensor3 {
    t.map_linear(|key| {
        let mut out = Tensor3::zero();
        for (w, c) in alpha.apply_word(&key[k]).iter() {
            let mut nk = key.clone();
            nk[k] = w.clone();
            out.add_term(nk, c.clone());
        }
        out
    })
}

/// Triple bracket with `α` applied to one tensor factor of each summand.
pub fn twisted_jacobiator(
    db: &DoubleBracket,
    alpha: &AlgMap,
    side: TwistSide,
    a: &NCPoly,
    b: &NCPoly,
    c: &NCPoly,
) -> Tensor3 {
    let part = |x: &NCPoly, y: &NCPoly, z: &NCPoly| match side {
        TwistSide::Left => twist_factor(&db.ext_left(x, &db.eval(y, z)), alpha, 2),
        TwistSide::Right => twist_factor(&db.pair_right(&db.eval(x, y), z), alpha, 0),
    };
    let mut out = part(a, b, c);
    out += &Perm3::P123.act(&part(b, c, a));
    out += &Perm3::P132.act(&part(c, a, b));
    out
}

/// `{ā, b̄} = class of <a,b>'<a,b>''` on `A/[A,A]`, for outer and inner brackets.
pub fn necklace_bracket(
    db: &DoubleBracket,
    a: &LinComb<Necklace>,
    b: &LinComb<Necklace>,
) -> Result<LinComb<Necklace>, BracketError> {
    if !matches!(db.kind(), BimodKind::Outer | BimodKind::Inner) {
        return Err(BracketError::WrongKind { expected: "outer or inner", got: db.kind() });
    }
    if db.bimodule().alpha() != db.bimodule().beta() {
        return Err(BracketError::UnequalTwists);
    }
    let lift = |p: &LinComb<Necklace>| p.map_linear(Necklace::lift);
    Ok(necklace_project(&mult_bracket(db, &lift(a), &lift(b))))
}

/// The necklace Lie bracket as a closure, after checking the kind once.
pub fn bracket_on_necklaces(
    db: &DoubleBracket,
) -> Result<impl Fn(&LinComb<Necklace>, &LinComb<Necklace>) -> LinComb<Necklace> + '_, BracketError> {
    necklace_bracket(db, &LinComb::zero(), &LinComb::zero())?;
    Ok(move |a: &LinComb<Necklace>, b: &LinComb<Necklace>| necklace_bracket(db, a, b).expect("kind checked"))
}

/// `•<ā, b̄>• = π(<a,b>') ⊗ π(<a,b>'')` for right brackets.
pub fn bullet_bracket(db: &DoubleBracket, a: &Necklace, b: &Necklace) -> Result<LinComb<[Necklace; 2]>, BracketError> {
    if db.kind() != BimodKind::Right {
        return Err(BracketError::WrongKind { expected: "right", got: db.kind() });
    }
    Ok(db.eval(&a.lift(), &b.lift()).map_keys(|[u, v]| [Necklace::of(u), Necklace::of(v)]))
}

/// Bracket on `Sym(A/[A,A])` from a right bracket: product of the two classes, extended
/// as a biderivation.
pub fn sym_bracket(db: &DoubleBracket, f: &SymPoly, g: &SymPoly) -> Result<SymPoly, BracketError> {
    if db.kind() != BimodKind::Right {
        return Err(BracketError::WrongKind { expected: "right", got: db.kind() });
    }
    let on = |a: &Necklace, b: &Necklace| {
        bullet_bracket(db, a, b)
            .expect("kind checked")
            .map_keys(|[u, v]| CMono::from_vars([u.clone(), v.clone()]))
    };
    Ok(biderivation(f, g, on, None))
}

/// `{a,{b,c}} + {b,{c,a}} + {c,{a,b}}` in `Sym(A/[A,A])`.
pub fn sym_jacobiator(db: &DoubleBracket, a: &Necklace, b: &Necklace, c: &Necklace) -> Result<SymPoly, BracketError> {
    let v = |n: &Necklace| crate::commpoly::var(n.clone());
    let (a, b, c) = (v(a), v(b), v(c));
    let mut out = sym_bracket(db, &a, &sym_bracket(db, &b, &c)?)?;
    out += &sym_bracket(db, &b, &sym_bracket(db, &c, &a)?)?;
    out += &sym_bracket(db, &c, &sym_bracket(db, &a, &b)?)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{one, right_unit, van_den_bergh};
    use super::super::{jacobiator, swap_equivalent};
    use super::*;
    use crate::freealg::{gen, Perm3, Word};

    fn nk(idx: &[u16]) -> Necklace {
        Necklace::of(&Word::from_indices(idx))
    }

    #[test]
    fn untwisted_forms_are_conjugate() {
        let id = AlgMap::identity(2);
        for db in [van_den_bergh(), right_unit()] {
            for t in super::super::sweep_triples(2, 2) {
                let [a, b, c] = t.map(NCPoly::from_key);
                let left = twisted_jacobiator(&db, &id, TwistSide::Left, &a, &b, &c);
                assert_eq!(left, jacobiator(&db, &a, &b, &c));
                let right = twisted_jacobiator(&db, &id, TwistSide::Right, &b, &a, &c);
                assert_eq!(left, Perm3::P12.act(&right));
            }
        }
    }

    #[test]
    fn bullet_of_unit_bracket() {
        let got = bullet_bracket(&right_unit(), &nk(&[0]), &nk(&[1])).unwrap();
        assert_eq!(got, LinComb::from_key([nk(&[]), nk(&[])]));
        assert!(bullet_bracket(&van_den_bergh(), &nk(&[0]), &nk(&[1])).is_err());
    }

    #[test]
    fn necklace_bracket_of_van_den_bergh() {
        // {x, x} = class of x - x = 0; {x, xy} = class of <x,x>·y-terms.
        let db = van_den_bergh();
        let n = |i: &[u16]| LinComb::from_key(nk(i));
        assert!(necklace_bracket(&db, &n(&[0]), &n(&[0])).unwrap().is_zero());
        let br = bracket_on_necklaces(&db).unwrap();
        let ab = br(&n(&[0, 0]), &n(&[0, 1]));
        let ba = br(&n(&[0, 1]), &n(&[0, 0]));
        assert_eq!(ab, -ba);
        assert!(bracket_on_necklaces(&right_unit()).is_err());
    }

    #[test]
    fn mult_bracket_swaps_with_sign() {
        let db = van_den_bergh();
        let sw = swap_equivalent(&db);
        for a in Word::all_up_to(2, 2) {
            for b in Word::all_up_to(2, 2) {
                let (a, b) = (NCPoly::from_key(a.clone()), NCPoly::from_key(b.clone()));
                assert_eq!(mult_bracket(&sw, &a, &b), -mult_bracket(&db, &b, &a));
            }
        }
    }

    #[test]
    fn sym_jacobi_for_unit_bracket() {
        let db = right_unit();
        let ns: Vec<Necklace> = (1..=2).flat_map(|l| Necklace::all_of_length(2, l)).collect();
        for a in &ns {
            for b in &ns {
                for c in &ns {
                    assert!(sym_jacobiator(&db, a, b, c).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn loday_identities_for_van_den_bergh() {
        let db = van_den_bergh();
        let sw = swap_equivalent(&db);
        for t in super::super::sweep_triples(2, 2) {
            let [a, b, c] = t.map(NCPoly::from_key);
            assert!(loday_defect(&db, LodaySide::Left, &a, &b, &c).is_zero());
            assert!(loday_defect(&sw, LodaySide::Right, &a, &b, &c).is_zero());
        }
    }

    #[test]
    fn unit_bracket_products() {
        assert_eq!(mult_bracket(&right_unit(), &gen(0), &gen(1)), one());
        assert!(mult_bracket(&van_den_bergh(), &gen(0), &gen(0)).is_zero());
    }
}
