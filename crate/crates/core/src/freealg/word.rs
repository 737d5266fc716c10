use std::cmp::Ordering;

use super::lincomb::Monomial;

/// Index of a free generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u16);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A monomial of the free algebra. The empty word is the unit.
///
/// Ordered degree-lexicographically: shorter words first, then by generator index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn from_indices(idx: &[u16]) -> Self {
        Word(idx.iter().map(|&i| Gen(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn prefix(&self, k: usize) -> Word {
        self.slice(0, k)
    }

    pub fn suffix(&self, k: usize) -> Word {
        self.slice(k, self.len())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn max_gen(&self) -> Option<Gen> {
        self.0.iter().copied().max()
    }

    /// All words over `ngens` letters with length in `1..=max_len`, in ascending order.
    pub fn all_up_to(ngens: usize, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * ngens);
            for w in &layer {
                for g in 0..ngens {
                    let mut v = w.0.clone();
                    v.push(Gen(g as u16));
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for Word {
    fn unit() -> Self {
        Word::empty()
    }
    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
}

impl<const N: usize> Monomial for [Word; N] {
    fn unit() -> Self {
        std::array::from_fn(|_| Word::empty())
    }
    fn mul(&self, other: &Self) -> Self {
        std::array::from_fn(|i| self[i].concat(&other[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_puts_shorter_words_first() {
        let a = Word::from_indices(&[1]);
        let b = Word::from_indices(&[0, 0]);
        assert!(a < b);
        assert!(Word::empty() < a);
        assert!(Word::from_indices(&[0, 1]) < Word::from_indices(&[1, 0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word::all_up_to(2, 3).len(), 2 + 4 + 8);
        assert_eq!(Word::all_up_to(3, 2).len(), 3 + 9);
    }

    #[test]
    fn enumeration_is_sorted() {
        let ws = Word::all_up_to(2, 3);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn rotation_wraps() {
        let w = Word::from_indices(&[0, 1, 2]);
        assert_eq!(w.rotate(1), Word::from_indices(&[1, 2, 0]));
        assert_eq!(w.rotate(3), w);
    }
}
