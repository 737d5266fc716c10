//! The four `A`-bimodule structures on `A ⊗ A`, their twists, and swap bimodules.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freealg::{
    q, swap, tensor2, AlgMap, AlgebraError, Gen, NCPoly, Names, Tensor2, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BimodKind {
    Left,
    Right,
    Outer,
    Inner,
}

impl BimodKind {
    pub const ALL: [BimodKind; 4] = [BimodKind::Left, BimodKind::Right, BimodKind::Outer, BimodKind::Inner];

    /// Kind of the swap bimodule.
    pub fn swapped(self) -> BimodKind {
        match self {
            BimodKind::Left => BimodKind::Right,
            BimodKind::Right => BimodKind::Left,
            BimodKind::Outer => BimodKind::Inner,
            BimodKind::Inner => BimodKind::Outer,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BimodKind::Left => "left",
            BimodKind::Right => "right",
            BimodKind::Outer => "outer",
            BimodKind::Inner => "inner",
        }
    }
}

impl fmt::Display for BimodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown bimodule kind `{0}`")]
pub struct UnknownKind(pub String);

impl FromStr for BimodKind {
    type Err = UnknownKind;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(BimodKind::Left),
            "right" => Ok(BimodKind::Right),
            "outer" => Ok(BimodKind::Outer),
            "inner" => Ok(BimodKind::Inner),
            _ => Err(UnknownKind(s.to_string())),
        }
    }
}

/// Anything that multiplies elements of `A ⊗ A` on both sides.
pub trait BimoduleAction: Sync {
    fn act(&self, a: &NCPoly, d: &Tensor2, b: &NCPoly) -> Tensor2;
}

/// One of the four standard structures with twists: `α(a)·d·β(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimodule {
    kind: BimodKind,
    alpha: AlgMap,
    beta: AlgMap,
    untwisted: bool,
}

impl Bimodule {
    pub fn untwisted(kind: BimodKind, ngens: usize) -> Self {
        Bimodule { kind, alpha: AlgMap::identity(ngens), beta: AlgMap::identity(ngens), untwisted: true }
    }

    pub fn twisted(kind: BimodKind, alpha: AlgMap, beta: AlgMap) -> Result<Self, AlgebraError> {
        if alpha.source_gens() != beta.source_gens() {
            return Err(AlgebraError::GeneratorMismatch { left: alpha.source_gens(), right: beta.source_gens() });
        }
        let untwisted = alpha.is_identity() && beta.is_identity();
        Ok(Bimodule { kind, alpha, beta, untwisted })
    }

    pub fn kind(&self) -> BimodKind {
        self.kind
    }

    pub fn alpha(&self) -> &AlgMap {
        &self.alpha
    }

    pub fn beta(&self) -> &AlgMap {
        &self.beta
    }

    pub fn ngens(&self) -> usize {
        self.alpha.source_gens()
    }

    pub fn is_untwisted(&self) -> bool {
        self.untwisted
    }

    /// `a * d * b = (a · d° · b)°`: same twists, mirrored kind.
    pub fn swap(&self) -> Bimodule {
        Bimodule { kind: self.kind.swapped(), ..self.clone() }
    }

    /// Post-composes both twists with `phi`.
    pub fn retwist(&self, phi: &AlgMap) -> Bimodule {
        let alpha = phi.compose(&self.alpha);
        let beta = phi.compose(&self.beta);
        let untwisted = alpha.is_identity() && beta.is_identity();
        Bimodule { kind: self.kind, alpha, beta, untwisted }
    }

    /// Action on a pure tensor of words by words, the hot path of bracket evaluation.
    pub fn act_words(&self, a: &Word, d: &Tensor2, b: &Word) -> Tensor2 {
        if self.untwisted {
            let (l, r) = (a, b);
            return d.map_keys(|[u, v]| match self.kind {
                BimodKind::Outer => [l.concat(u), v.concat(r)],
                BimodKind::Inner => [u.concat(r), l.concat(v)],
                BimodKind::Left => [l.concat(u).concat(r), v.clone()],
                BimodKind::Right => [u.clone(), l.concat(v).concat(r)],
            });
        }
        self.act(&NCPoly::from_key(a.clone()), d, &NCPoly::from_key(b.clone()))
    }

    pub fn describe(&self, names: &Names) -> String {
        if self.untwisted {
            return self.kind.to_string();
        }
        let show = |m: &AlgMap| {
            m.images()
                .iter()
                .enumerate()
                .map(|(i, p)| format!("{} -> {}", names.get(i), names.poly(p)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("{} ; alpha: {} ; beta: {}", self.kind, show(&self.alpha), show(&self.beta))
    }
}

impl BimoduleAction for Bimodule {
    fn act(&self, a: &NCPoly, d: &Tensor2, b: &NCPoly) -> Tensor2 {
        let a = self.alpha.apply(a);
        let b = self.beta.apply(b);
        let one = NCPoly::one();
        let (left, right) = match self.kind {
            BimodKind::Outer => (tensor2(&a, &one), tensor2(&one, &b)),
            BimodKind::Inner => (tensor2(&one, &a), tensor2(&b, &one)),
            BimodKind::Left => (tensor2(&a, &one), tensor2(&b, &one)),
            BimodKind::Right => (tensor2(&one, &a), tensor2(&one, &b)),
        };
        &(&left * d) * &right
    }
}

/// Swap bimodule of an arbitrary action.
pub struct SwapOf<'a, M: ?Sized>(pub &'a M);

impl<M: BimoduleAction + ?Sized> BimoduleAction for SwapOf<'_, M> {
    fn act(&self, a: &NCPoly, d: &Tensor2, b: &NCPoly) -> Tensor2 {
        swap(&self.0.act(a, &swap(d), b))
    }
}

/// An action given by a closure.
pub struct FnAction<F>(pub F);

impl<F> BimoduleAction for FnAction<F>
where
    F: Fn(&NCPoly, &Tensor2, &NCPoly) -> Tensor2 + Sync,
{
    fn act(&self, a: &NCPoly, d: &Tensor2, b: &NCPoly) -> Tensor2 {
        (self.0)(a, d, b)
    }
}

/// `a · d · b = a d' ⊗ ν(b) d''` with `ν` the word-reversing anti-automorphism.
///
/// A genuine bimodule structure whose swap does not commute with it.
pub fn reversal_action() -> FnAction<impl Fn(&NCPoly, &Tensor2, &NCPoly) -> Tensor2 + Sync> {
    FnAction(|a: &NCPoly, d: &Tensor2, b: &NCPoly| {
        let nu_b = b.map_keys(Word::reversed);
        let one = NCPoly::one();
        &tensor2(a, &one) * &(&tensor2(&one, &nu_b) * d)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapWitness {
    pub a1: NCPoly,
    pub a2: NCPoly,
    pub b1: NCPoly,
    pub b2: NCPoly,
    pub d: Tensor2,
    pub lhs: Tensor2,
    pub rhs: Tensor2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapCommutingReport {
    pub degree_bound: usize,
    pub cases_checked: usize,
    pub witness: Option<SwapWitness>,
}

impl SwapCommutingReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn swap_commuting_case(
    m: &(impl BimoduleAction + ?Sized),
    [a1, a2, b1, b2]: [&NCPoly; 4],
    d: &Tensor2,
) -> Option<SwapWitness> {
    let star = SwapOf(m);
    let lhs = m.act(a1, &star.act(a2, d, b2), b1);
    let rhs = star.act(a2, &m.act(a1, d, b1), b2);
    (lhs != rhs).then(|| SwapWitness {
        a1: a1.clone(),
        a2: a2.clone(),
        b1: b1.clone(),
        b2: b2.clone(),
        d: d.clone(),
        lhs,
        rhs,
    })
}

/// Tests `a1·(a2 * d * b2)·b1 = a2 * (a1·d·b1) * b2`.
///
/// Exhaustive over `a_i, b_i ∈ {1, generators}` and `d = u ⊗ v` with `|u| + |v| <= degree_bound`,
/// then `trials` random polynomial cases from a fixed seed.
pub fn check_swap_commuting(
    m: &(impl BimoduleAction + ?Sized),
    ngens: usize,
    degree_bound: usize,
    trials: usize,
    seed: u64,
) -> SwapCommutingReport {
    let mut scalars = vec![NCPoly::one()];
    scalars.extend((0..ngens).map(|i| NCPoly::from_key(Word::letter(Gen(i as u16)))));
    let mut words = vec![Word::empty()];
    words.extend(Word::all_up_to(ngens, degree_bound));
    let mut cases = 0;
    for u in &words {
        for v in &words {
            if u.len() + v.len() > degree_bound {
                continue;
            }
            let d = Tensor2::from_key([u.clone(), v.clone()]);
            for a1 in &scalars {
                for a2 in &scalars {
                    for b1 in &scalars {
                        for b2 in &scalars {
                            cases += 1;
                            if let Some(w) = swap_commuting_case(m, [a1, a2, b1, b2], &d) {
                                return SwapCommutingReport { degree_bound, cases_checked: cases, witness: Some(w) };
                            }
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let polys: Vec<NCPoly> = (0..4).map(|_| random_poly(&mut rng, ngens, 2, 3)).collect();
        let d = tensor2(&random_poly(&mut rng, ngens, 2, 2), &random_poly(&mut rng, ngens, 2, 2));
        cases += 1;
        if let Some(w) = swap_commuting_case(m, [&polys[0], &polys[1], &polys[2], &polys[3]], &d) {
            return SwapCommutingReport { degree_bound, cases_checked: cases, witness: Some(w) };
        }
    }
    SwapCommutingReport { degree_bound, cases_checked: cases, witness: None }
}

/// A polynomial with up to `terms` small integer coefficients on words of length `<= max_len`.
pub fn random_poly(rng: &mut impl Rng, ngens: usize, max_len: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let len = rng.gen_range(0..=max_len);
        let w = Word((0..len).map(|_| Gen(rng.gen_range(0..ngens) as u16)).collect());
        p.add_term(w, q(rng.gen_range(-3..=3)));
    }
    p
}
