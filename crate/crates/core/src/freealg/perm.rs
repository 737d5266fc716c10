use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, Tensor3};

/// Permutation of {1, 2, 3}, stored as the images of 0, 1, 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub const ID: Perm3 = Perm3([0, 1, 2]);
    pub const P12: Perm3 = Perm3([1, 0, 2]);
    pub const P13: Perm3 = Perm3([2, 1, 0]);
    pub const P23: Perm3 = Perm3([0, 2, 1]);
    pub const P123: Perm3 = Perm3([1, 2, 0]);
    pub const P132: Perm3 = Perm3([2, 0, 1]);

    pub const ALL: [Perm3; 6] = [
        Perm3::ID,
        Perm3::P12,
        Perm3::P13,
        Perm3::P23,
        Perm3::P123,
        Perm3::P132,
    ];

    pub fn from_images(images: [usize; 3]) -> Result<Self, AlgebraError> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return Err(AlgebraError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm3(images))
    }

    pub fn image(self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(self) -> Perm3 {
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[self.0[i]] = i;
        }
        Perm3(inv)
    }

    /// Moves the entry in position `i` to position `self(i)`.
    pub fn permute<T: Clone>(self, items: &[T; 3]) -> [T; 3] {
        let inv = self.inverse();
        std::array::from_fn(|j| items[inv.0[j]].clone())
    }

    pub fn act(self, t: &Tensor3) -> Tensor3 {
        if self == Perm3::ID {
            return t.clone();
        }
        t.map_keys(|k| self.permute(k))
    }

    pub fn is_transposition(self) -> bool {
        (0..3).filter(|&i| self.0[i] == i).count() == 1
    }
}

/// One of `(12)`, `(13)`, `(23)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition(Perm3);

impl Transposition {
    pub const T12: Transposition = Transposition(Perm3::P12);
    pub const T13: Transposition = Transposition(Perm3::P13);
    pub const T23: Transposition = Transposition(Perm3::P23);
    pub const ALL: [Transposition; 3] = [Transposition::T12, Transposition::T13, Transposition::T23];

    pub fn new(p: Perm3) -> Result<Self, AlgebraError> {
        if p.is_transposition() {
            Ok(Transposition(p))
        } else {
            Err(AlgebraError::InvalidPermutation(format!("({p}) is not a transposition")))
        }
    }

    pub fn perm(self) -> Perm3 {
        self.0
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Transposition {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Transposition::new(s.parse()?)
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match *self {
            Perm3::ID => "id",
            Perm3::P12 => "12",
            Perm3::P13 => "13",
            Perm3::P23 => "23",
            Perm3::P123 => "123",
            _ => "132",
        };
        f.write_str(s)
    }
}

impl FromStr for Perm3 {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        Ok(match t {
            "id" | "" | "1" => Perm3::ID,
            "12" | "21" => Perm3::P12,
            "13" | "31" => Perm3::P13,
            "23" | "32" => Perm3::P23,
            "123" | "231" | "312" => Perm3::P123,
            "132" | "321" | "213" => Perm3::P132,
            _ => return Err(AlgebraError::InvalidPermutation(s.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_moves_last_factor_to_front() {
        assert_eq!(Perm3::P123.permute(&['x', 'y', 'z']), ['z', 'x', 'y']);
        assert_eq!(Perm3::P132.permute(&['x', 'y', 'z']), ['y', 'z', 'x']);
        assert_eq!(Perm3::P13.permute(&['a', 'b', 'c']), ['c', 'b', 'a']);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let items = ['a', 'b', 'c'];
        for s in Perm3::ALL {
            for r in Perm3::ALL {
                assert_eq!(s.permute(&r.permute(&items)), s.compose(r).permute(&items));
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(Perm3::P123.inverse(), Perm3::P132);
        for s in Perm3::ALL {
            assert_eq!(s.compose(s.inverse()), Perm3::ID);
        }
    }

    #[test]
    fn only_transpositions_are_accepted() {
        assert!("123".parse::<Transposition>().is_err());
        assert_eq!("21".parse::<Transposition>().unwrap(), Transposition::T12);
        assert!(Transposition::new(Perm3::ID).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("14".parse::<Perm3>().is_err());
        assert_eq!("(13)".parse::<Perm3>().unwrap(), Perm3::P13);
        assert!(Perm3::from_images([0, 0, 1]).is_err());
    }
}
