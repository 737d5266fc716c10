use super::{LinComb, NCPoly, Word};

/// A word up to cyclic rotation, stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace(Word);

impl Necklace {
    pub fn of(w: &Word) -> Necklace {
        let best = (0..w.len().max(1))
            .map(|k| w.rotate(k))
            .min()
            .unwrap_or_default();
        Necklace(best)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn lift(&self) -> NCPoly {
        NCPoly::from_key(self.0.clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every necklace of length `len` over `ngens` letters.
    pub fn all_of_length(ngens: usize, len: usize) -> Vec<Necklace> {
        let mut out: Vec<Necklace> = if len == 0 {
            vec![Necklace(Word::empty())]
        } else {
            Word::all_up_to(ngens, len)
                .into_iter()
                .filter(|w| w.len() == len)
                .map(|w| Necklace::of(&w))
                .collect()
        };
        out.sort();
        out.dedup();
        out
    }
}

/// Image of a polynomial in `A/[A,A]`.
pub fn necklace_project(p: &NCPoly) -> LinComb<Necklace> {
    p.map_keys(Necklace::of)
}
