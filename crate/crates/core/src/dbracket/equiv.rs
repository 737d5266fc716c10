use crate::freealg::{letters_needed, swap, AlgMap, AlgebraError, Gen, Tensor2};

use super::{BracketError, DoubleBracket};

/// Algebra automorphisms of `A ⊗ A` used to transport double brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tensor2Auto {
    /// `d -> d°`.
    Swap,
    /// `α ⊗ α` with a verified inverse `α⁻¹ ⊗ α⁻¹`.
    TwistPair { alpha: AlgMap, alpha_inv: AlgMap },
    /// Applies the parts left to right.
    Composite(Vec<Tensor2Auto>),
}

impl Tensor2Auto {
    pub fn twist_pair(alpha: AlgMap, alpha_inv: AlgMap) -> Result<Self, AlgebraError> {
        alpha.verify_inverse(&alpha_inv)?;
        Ok(Tensor2Auto::TwistPair { alpha, alpha_inv })
    }

    pub fn apply(&self, d: &Tensor2) -> Tensor2 {
        match self {
            Tensor2Auto::Swap => swap(d),
            Tensor2Auto::TwistPair { alpha, .. } => alpha.apply_tensor2(d),
            Tensor2Auto::Composite(parts) => parts.iter().fold(d.clone(), |acc, p| p.apply(&acc)),
        }
    }

    pub fn inverse(&self) -> Tensor2Auto {
        match self {
            Tensor2Auto::Swap => Tensor2Auto::Swap,
            Tensor2Auto::TwistPair { alpha, alpha_inv } => {
                Tensor2Auto::TwistPair { alpha: alpha_inv.clone(), alpha_inv: alpha.clone() }
            }
            Tensor2Auto::Composite(parts) => Tensor2Auto::Composite(parts.iter().rev().map(|p| p.inverse()).collect()),
        }
    }
}

/// The bracket `<a,b>°`, a double bracket for the swap bimodule.
pub fn swap_equivalent(db: &DoubleBracket) -> DoubleBracket {
    let table = db.table().iter().map(swap).collect();
    DoubleBracket::from_table_unchecked(db.bimodule().swap(), table).expect("same shape")
}

/// `Ψ ∘ <-,->`, with the bimodule transported so that the result is again a double bracket.
pub fn apply_equivalence(db: &DoubleBracket, psi: &Tensor2Auto) -> Result<DoubleBracket, BracketError> {
    match psi {
        Tensor2Auto::Swap => Ok(swap_equivalent(db)),
        Tensor2Auto::TwistPair { alpha, alpha_inv } => {
            if alpha.source_gens() != db.ngens() {
                return Err(BracketError::GeneratorCount { bimodule: alpha.source_gens(), bracket: db.ngens() });
            }
            alpha.verify_inverse(alpha_inv)?;
            let table = db.table().iter().map(|d| alpha.apply_tensor2(d)).collect();
            DoubleBracket::from_table(db.bimodule().retwist(alpha), table)
        }
        Tensor2Auto::Composite(parts) => parts.iter().try_fold(db.clone(), |acc, p| apply_equivalence(&acc, p)),
    }
}

/// Whether `phi` carries `db1` to `db2`: `<phi(x_i), phi(x_j)>_2 = (phi ⊗ phi)<x_i, x_j>_1`.
pub fn check_morphism(phi: &AlgMap, db1: &DoubleBracket, db2: &DoubleBracket) -> Result<bool, BracketError> {
    if !db1.bimodule().is_untwisted() || !db2.bimodule().is_untwisted() {
        return Err(BracketError::Twisted);
    }
    if db1.kind() != db2.kind() {
        return Err(BracketError::KindMismatch(db1.kind(), db2.kind()));
    }
    if phi.source_gens() != db1.ngens() {
        return Err(BracketError::GeneratorCount { bimodule: phi.source_gens(), bracket: db1.ngens() });
    }
    for img in phi.images() {
        let needed = letters_needed(&img.map_keys(|w| [w.clone()]));
        if needed > db2.ngens() {
            return Err(BracketError::GeneratorOutOfRange { index: needed, ngens: db2.ngens() });
        }
    }
    for i in 0..db1.ngens() {
        for j in 0..db1.ngens() {
            let lhs = db2.eval(phi.image(Gen(i as u16)), phi.image(Gen(j as u16)));
            let rhs = phi.apply_tensor2(db1.entry(i, j));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
