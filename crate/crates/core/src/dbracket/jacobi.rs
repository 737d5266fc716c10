use crate::freealg::{NCPoly, Perm3, Tensor2, Tensor3, Transposition, Word};

use super::DoubleBracket;

/// Equivalent ways of writing the triple bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacForm {
    /// `<a,<b,c>>_L + τ_(123)<b,<c,a>>_L + τ_(132)<c,<a,b>>_L`.
    Standard,
    /// `<a,<b,c>>_L - <b,<a,c>>_R - <<a,b>,c>_L`.
    Dskv,
    /// `-<b,<a,c>>_R - τ_(123)<c,<b,a>>_R - τ_(132)<a,<c,b>>_R`.
    Right,
    /// `τ_(12)(<<b,a>,c>_R + τ_(123)<<a,c>,b>_R + τ_(132)<<c,b>,a>_R)`.
    InnerRight,
}

impl JacForm {
    pub const ALL: [JacForm; 4] = [JacForm::Standard, JacForm::Dskv, JacForm::Right, JacForm::InnerRight];
}

impl DoubleBracket {
    /// `<a, d>_L = <a, d'> ⊗ d''`.
    pub fn ext_left(&self, a: &NCPoly, d: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero();
        for (u, cu) in a.iter() {
            for ([d1, d2], cd) in d.iter() {
                let c = cu * cd;
                for ([p, q], cb) in self.eval_words(u, d1).iter() {
                    out.add_term([p.clone(), q.clone(), d2.clone()], cb * &c);
                }
            }
        }
        out
    }

    /// `<a, d>_R = d' ⊗ <a, d''>`.
    pub fn ext_right(&self, a: &NCPoly, d: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero();
        for (u, cu) in a.iter() {
            for ([d1, d2], cd) in d.iter() {
                let c = cu * cd;
                for ([p, q], cb) in self.eval_words(u, d2).iter() {
                    out.add_term([d1.clone(), p.clone(), q.clone()], cb * &c);
                }
            }
        }
        out
    }

    /// `<d, b>_L = <d', b>' ⊗ d'' ⊗ <d', b>''`.
    pub fn pair_left(&self, d: &Tensor2, b: &NCPoly) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([d1, d2], cd) in d.iter() {
            for (v, cv) in b.iter() {
                let c = cd * cv;
                for ([p, q], cb) in self.eval_words(d1, v).iter() {
                    out.add_term([p.clone(), d2.clone(), q.clone()], cb * &c);
                }
            }
        }
        out
    }

    /// `<d, b>_R = d' ⊗ <d'', b>`.
    pub fn pair_right(&self, d: &Tensor2, b: &NCPoly) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([d1, d2], cd) in d.iter() {
            for (v, cv) in b.iter() {
                let c = cd * cv;
                for ([p, q], cb) in self.eval_words(d2, v).iter() {
                    out.add_term([d1.clone(), p.clone(), q.clone()], cb * &c);
                }
            }
        }
        out
    }
}

/// The triple bracket `<a,b,c>`.
pub fn jacobiator(db: &DoubleBracket, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> Tensor3 {
    jacobiator_form(db, JacForm::Standard, a, b, c)
}

pub fn jacobiator_form(db: &DoubleBracket, form: JacForm, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> Tensor3 {
    match form {
        JacForm::Standard => {
            let mut out = db.ext_left(a, &db.eval(b, c));
            out += &Perm3::P123.act(&db.ext_left(b, &db.eval(c, a)));
            out += &Perm3::P132.act(&db.ext_left(c, &db.eval(a, b)));
            out
        }
        JacForm::Dskv => {
            let mut out = db.ext_left(a, &db.eval(b, c));
            out -= &db.ext_right(b, &db.eval(a, c));
            out -= &db.pair_left(&db.eval(a, b), c);
            out
        }
        JacForm::Right => {
            let mut out = -db.ext_right(b, &db.eval(a, c));
            out -= &Perm3::P123.act(&db.ext_right(c, &db.eval(b, a)));
            out -= &Perm3::P132.act(&db.ext_right(a, &db.eval(c, b)));
            out
        }
        JacForm::InnerRight => {
            let mut inner = db.pair_right(&db.eval(b, a), c);
            inner += &Perm3::P123.act(&db.pair_right(&db.eval(a, c), b));
            inner += &Perm3::P132.act(&db.pair_right(&db.eval(c, b), a));
            Perm3::P12.act(&inner)
        }
    }
}

/// `[σ,σ']wk<a,b,c> = <a,b,c> - τ_σ⁻¹ <τ_σ'(a,b,c)>`.
///
/// `τ_σ'` permutes the arguments exactly as it permutes tensor factors, so
/// `τ_(12)(a,b,c) = (b,a,c)` and `τ_(123)(a,b,c) = (c,a,b)`.
pub fn weak_jacobiator(
    db: &DoubleBracket,
    sigma: Transposition,
    sigma_prime: Transposition,
    a: &NCPoly,
    b: &NCPoly,
    c: &NCPoly,
) -> Tensor3 {
    let [pa, pb, pc] = sigma_prime.perm().permute(&[a, b, c]);
    let moved = sigma.perm().inverse().act(&jacobiator(db, pa, pb, pc));
    &jacobiator(db, a, b, c) - &moved
}

/// The triple bracket on words, the unit of work in sweeps.
pub(crate) fn jacobiator_words(db: &DoubleBracket, t: &[Word; 3]) -> Tensor3 {
    let [a, b, c] = t.clone().map(NCPoly::from_key);
    jacobiator(db, &a, &b, &c)
}

pub(crate) fn weak_jacobiator_words(
    db: &DoubleBracket,
    sigma: Transposition,
    sigma_prime: Transposition,
    t: &[Word; 3],
) -> Tensor3 {
    let [a, b, c] = t.clone().map(NCPoly::from_key);
    weak_jacobiator(db, sigma, sigma_prime, &a, &b, &c)
}
