use std::collections::BTreeMap;

use num_traits::Zero;

use crate::commpoly::{solve_linear, substitute, CMono};
use crate::dbracket::SymPoly;
use crate::freealg::{NCPoly, Necklace};

use super::{eval_nc, PoissonStructure, RepError, RepPoly};

/// Longest word whose trace is used when re-expressing functions through traces.
pub const DEFAULT_TRACE_WORD_BOUND: usize = 3;

/// `{tr X(a), tr X(b)}`.
pub fn trace_bracket(ps: &PoissonStructure, a: &NCPoly, b: &NCPoly) -> RepPoly {
    let n = ps.dim();
    ps.poisson_eval(&eval_nc(a, n).trace(), &eval_nc(b, n).trace())
}

/// Evaluates a polynomial in necklaces by sending `[w]` to `tr X(w)`.
pub fn trace_of(s: &SymPoly, n: usize) -> RepPoly {
    substitute(s, |nk: &Necklace| eval_nc(&nk.lift(), n).trace())
}

/// Multisets of indices into `lens` with total length exactly `target`, nondecreasing.
fn multisets(lens: &[usize], target: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if target == 0 {
        out.push(acc.clone());
        return;
    }
    for i in start..lens.len() {
        if lens[i] <= target {
            acc.push(i);
            multisets(lens, target - lens[i], i, acc, out);
            acc.pop();
        }
    }
}

/// Writes `p` as a polynomial in traces of words of length at most `max_len`.
///
/// Each homogeneous part is solved separately over the products of traces of the right
/// total length. Fails when some part is not in their span.
pub fn express_in_traces(p: &RepPoly, ngens: usize, n: usize, max_len: usize) -> Result<SymPoly, RepError> {
    let mut parts: BTreeMap<u32, RepPoly> = BTreeMap::new();
    for (m, c) in p.iter() {
        parts.entry(m.degree()).or_insert_with(RepPoly::zero).add_term(m.clone(), c.clone());
    }
    let necklaces: Vec<Necklace> = (1..=max_len).flat_map(|l| Necklace::all_of_length(ngens, l)).collect();
    let lens: Vec<usize> = necklaces.iter().map(Necklace::len).collect();
    let traces: Vec<RepPoly> = necklaces.iter().map(|nk| eval_nc(&nk.lift(), n).trace()).collect();
    let mut out = SymPoly::zero();
    for (degree, part) in parts {
        let mut basis = Vec::new();
        multisets(&lens, degree as usize, 0, &mut Vec::new(), &mut basis);
        let columns: Vec<RepPoly> =
            basis.iter().map(|ms| ms.iter().fold(RepPoly::one(), |acc, &i| &acc * &traces[i])).collect();
        let sol = solve_linear(&columns, &part).ok_or(RepError::NotInTraceRing { degree, bound: max_len })?;
        for (ms, c) in basis.iter().zip(sol) {
            if !c.is_zero() {
                out.add_term(CMono::from_vars(ms.iter().map(|&i| necklaces[i].clone())), c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{unit_bracket, van_den_bergh_one};
    use super::super::{entry, induce};
    use super::*;
    use crate::bimodule::BimodKind;
    use crate::dbracket::{mult_bracket, tests::van_den_bergh};
    use crate::freealg::{gen, q, word, Word};

    #[test]
    fn right_unit_trace_bracket() {
        let ps = induce(&unit_bracket(BimodKind::Right), 2).unwrap();
        assert_eq!(trace_bracket(&ps, &gen(0), &gen(1)), RepPoly::constant(q(4)));
    }

    #[test]
    fn outer_trace_bracket_vanishes_on_commuting_generators() {
        let ps = induce(&van_den_bergh(), 2).unwrap();
        assert!(trace_bracket(&ps, &gen(0), &gen(1)).is_zero());
    }

    #[test]
    fn outer_trace_bracket_is_trace_of_product_bracket() {
        // {x, x^2}_m = m(x^2⊗1 - 1⊗x^2) = 0, worked out by the Leibniz rule.
        let db = van_den_bergh_one();
        let ps = induce(&db, 2).unwrap();
        assert!(mult_bracket(&db, &gen(0), &word(&[0, 0])).is_zero());
        assert!(trace_bracket(&ps, &gen(0), &word(&[0, 0])).is_zero());
        let vdb = van_den_bergh();
        let ps = induce(&vdb, 2).unwrap();
        for a in &Word::all_up_to(2, 2) {
            for b in &Word::all_up_to(2, 2) {
                let (a, b) = (NCPoly::from_key(a.clone()), NCPoly::from_key(b.clone()));
                let expected = eval_nc(&mult_bracket(&vdb, &a, &b), 2).trace();
                assert_eq!(trace_bracket(&ps, &a, &b), expected);
            }
        }
    }

    #[test]
    fn traces_are_recovered() {
        let p = &(&trace_of(&crate::commpoly::var(Necklace::of(&Word::from_indices(&[0, 1]))), 2)
            * &eval_nc(&gen(0), 2).trace())
            + &RepPoly::constant(q(7));
        let s = express_in_traces(&p, 2, 2, 3).unwrap();
        assert_eq!(trace_of(&s, 2), p);
    }

    #[test]
    fn non_invariant_function_is_refused() {
        let err = express_in_traces(&entry(0, 0, 1), 1, 2, 3).unwrap_err();
        assert_eq!(err, RepError::NotInTraceRing { degree: 1, bound: 3 });
    }

    #[test]
    fn trace_brackets_stay_in_the_trace_ring() {
        let vdb = van_den_bergh();
        let ps = induce(&vdb, 2).unwrap();
        for a in &Word::all_up_to(2, 2) {
            for b in &Word::all_up_to(2, 2) {
                let t = trace_bracket(&ps, &NCPoly::from_key(a.clone()), &NCPoly::from_key(b.clone()));
                let s = express_in_traces(&t, 2, 2, DEFAULT_TRACE_WORD_BOUND).unwrap();
                assert_eq!(trace_of(&s, 2), t);
            }
        }
    }
}
