#![allow(dead_code)]

use double_brackets::bimodule::{BimodKind, Bimodule};
use double_brackets::dbracket::{swap_equivalent, DoubleBracket};
use double_brackets::freealg::{gen, q, tensor2, AlgMap, Gen, NCPoly, Word};
use double_brackets::gradient::gradient_bracket;
use rayon::prelude::*;

pub fn one() -> NCPoly {
    NCPoly::one()
}

/// `u⊗1 - 1⊗u`.
pub fn commutator_tensor(u: &NCPoly) -> double_brackets::freealg::Tensor2 {
    &tensor2(u, &one()) - &tensor2(&one(), u)
}

pub fn van_den_bergh() -> DoubleBracket {
    DoubleBracket::new(
        Bimodule::untwisted(BimodKind::Outer, 2),
        [((Gen(0), Gen(0)), commutator_tensor(&gen(0))), ((Gen(1), Gen(1)), commutator_tensor(&gen(1)))],
    )
    .unwrap()
}

/// The transport of [`van_den_bergh`] along `x <-> y`: values swapped, both twists `x <-> y`.
pub fn twisted_van_den_bergh() -> DoubleBracket {
    let swap = AlgMap::permutation(&[1, 0]);
    DoubleBracket::new(
        Bimodule::twisted(BimodKind::Outer, swap.clone(), swap).unwrap(),
        [((Gen(0), Gen(0)), commutator_tensor(&gen(1))), ((Gen(1), Gen(1)), commutator_tensor(&gen(0)))],
    )
    .unwrap()
}

/// `<x,y> = 1⊗1` for the given kind on two generators.
pub fn unit(kind: BimodKind) -> DoubleBracket {
    DoubleBracket::new(Bimodule::untwisted(kind, 2), [((Gen(0), Gen(1)), tensor2(&one(), &one()))]).unwrap()
}

pub fn right_unit() -> DoubleBracket {
    unit(BimodKind::Right)
}

/// Outer constant brackets `λ_ij 1⊗1` on three generators.
pub fn outer_constant() -> DoubleBracket {
    let c = |k: i64| tensor2(&one(), &one()).scale(&q(k));
    DoubleBracket::new(
        Bimodule::untwisted(BimodKind::Outer, 3),
        [((Gen(0), Gen(1)), c(1)), ((Gen(0), Gen(2)), c(2)), ((Gen(1), Gen(2)), c(-1))],
    )
    .unwrap()
}

/// A right bracket mixing linear and diagonal entries.
pub fn right_mixed() -> DoubleBracket {
    DoubleBracket::new(
        Bimodule::untwisted(BimodKind::Right, 2),
        [
            ((Gen(0), Gen(0)), commutator_tensor(&gen(0))),
            ((Gen(0), Gen(1)), &tensor2(&gen(0), &one()) + &tensor2(&one(), &gen(1))),
        ],
    )
    .unwrap()
}

/// `<x,y> = y⊗x` on the inner structure with `α = β: x -> 2x`.
pub fn inner_twisted() -> DoubleBracket {
    let alpha = AlgMap::new(vec![gen(0).scale(&q(2)), gen(1)]);
    DoubleBracket::new(
        Bimodule::twisted(BimodKind::Inner, alpha.clone(), alpha).unwrap(),
        [((Gen(0), Gen(1)), tensor2(&gen(1), &gen(0)))],
    )
    .unwrap()
}

/// The gradient bracket of `x1 x2 + x2 x1`.
pub fn gradient_quadratic() -> DoubleBracket {
    let f = &(&gen(0) * &gen(1)) + &(&gen(1) * &gen(0));
    gradient_bracket(&f).unwrap()
}

/// Named brackets covering all four kinds, twisted and untwisted, Poisson or not.
pub fn fixtures() -> Vec<(&'static str, DoubleBracket)> {
    vec![
        ("outer van den Bergh", van_den_bergh()),
        ("inner van den Bergh", swap_equivalent(&van_den_bergh())),
        ("twisted outer van den Bergh", twisted_van_den_bergh()),
        ("right unit", right_unit()),
        ("left unit", swap_equivalent(&right_unit())),
        ("outer constant", outer_constant()),
        ("right mixed", right_mixed()),
        ("twisted inner", inner_twisted()),
        ("gradient of x1x2+x2x1", gradient_quadratic()),
    ]
}

/// The four kinds on two generators, untwisted and with `α = (x <-> y)`, `β = (x -> 2x)`.
pub fn all_bimodules() -> Vec<Bimodule> {
    let kinds = [BimodKind::Outer, BimodKind::Inner, BimodKind::Left, BimodKind::Right];
    let mut out: Vec<Bimodule> = kinds.iter().map(|&k| Bimodule::untwisted(k, 2)).collect();
    let swap_xy = AlgMap::permutation(&[1, 0]);
    let scale = AlgMap::new(vec![gen(0).scale(&q(2)), gen(1)]);
    for &k in &kinds {
        out.push(Bimodule::twisted(k, swap_xy.clone(), scale.clone()).unwrap());
    }
    out
}

/// Monomials of length `1..=max_len`.
pub fn monomials(ngens: usize, max_len: usize) -> Vec<NCPoly> {
    Word::all_up_to(ngens, max_len).into_iter().map(NCPoly::from_key).collect()
}

/// Every triple of monomials with each entry of length at most `max_len` and total
/// length at most `max_total`.
pub fn triples(ngens: usize, max_len: usize, max_total: usize) -> Vec<[NCPoly; 3]> {
    let words = Word::all_up_to(ngens, max_len);
    let mut out = Vec::new();
    for a in &words {
        for b in &words {
            for c in &words {
                if a.len() + b.len() + c.len() <= max_total {
                    out.push([a, b, c].map(|w| NCPoly::from_key(w.clone())));
                }
            }
        }
    }
    out
}

/// The first triple on which `check` fails, searching in parallel.
pub fn first_failure(ts: &[[NCPoly; 3]], check: impl Fn(&[NCPoly; 3]) -> bool + Sync) -> Option<[NCPoly; 3]> {
    ts.par_iter().find_first(|t| !check(t)).cloned()
}
