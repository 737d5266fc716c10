use std::collections::HashMap;

use super::{AlgebraError, Gen, NCPoly, Tensor2, Word};

/// Algebra homomorphism out of a free algebra, fixed by the images of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgMap {
    images: Vec<NCPoly>,
}

impl AlgMap {
    pub fn new(images: Vec<NCPoly>) -> Self {
        AlgMap { images }
    }

    pub fn identity(ngens: usize) -> Self {
        AlgMap::new((0..ngens).map(|i| NCPoly::from_key(Word::letter(Gen(i as u16)))).collect())
    }

    /// The generator permutation `x_i -> x_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        AlgMap::new(perm.iter().map(|&j| NCPoly::from_key(Word::letter(Gen(j as u16)))).collect())
    }

    pub fn source_gens(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[NCPoly] {
        &self.images
    }

    pub fn image(&self, g: Gen) -> &NCPoly {
        &self.images[g.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| *p == NCPoly::from_key(Word::letter(Gen(i as u16))))
    }

    pub fn apply_word(&self, w: &Word) -> NCPoly {
        let mut out = NCPoly::one();
        for g in w.letters() {
            out = &out * self.image(*g);
        }
        out
    }

    pub fn apply(&self, p: &NCPoly) -> NCPoly {
        if self.is_identity() {
            return p.clone();
        }
        let mut cache: HashMap<&Word, NCPoly> = HashMap::new();
        let mut out = NCPoly::zero();
        for (w, c) in p.iter() {
            let img = cache.entry(w).or_insert_with(|| self.apply_word(w));
            out.add_scaled(img, c);
        }
        out
    }

    /// `(self ⊗ self)(d)`.
    pub fn apply_tensor2(&self, d: &Tensor2) -> Tensor2 {
        d.map_linear(|[a, b]| {
            super::tensor2(&self.apply_word(a), &self.apply_word(b))
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgMap) -> AlgMap {
        AlgMap::new(inner.images.iter().map(|p| self.apply(p)).collect())
    }

    /// Checks that `self ∘ inv` and `inv ∘ self` fix every generator.
    pub fn verify_inverse(&self, inv: &AlgMap) -> Result<(), AlgebraError> {
        if self.source_gens() != inv.source_gens() {
            return Err(AlgebraError::GeneratorMismatch {
                left: self.source_gens(),
                right: inv.source_gens(),
            });
        }
        let n = self.source_gens();
        if !self.compose(inv).is_identity() || !inv.compose(self).is_identity() {
            return Err(AlgebraError::NotAnInverse);
        }
        debug_assert!(AlgMap::identity(n).is_identity());
        Ok(())
    }

    /// True when every image is a single generator and they are pairwise distinct.
    pub fn is_generator_permutation(&self) -> bool {
        let mut seen = vec![false; self.source_gens()];
        for p in &self.images {
            if p.len() != 1 {
                return false;
            }
            let (w, c) = p.iter().next().expect("one term");
            if w.len() != 1 || *c != num_traits::One::one() {
                return false;
            }
            let j = w.letters()[0].index();
            if j >= seen.len() || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }
}
