//! Finite ground sets with power-set σ-fields encoded as bitmasks.

use std::fmt;

/// A subset of a finite ground set, one bit per element.
pub type Mask = u32;

/// Largest supported ground-set cardinality. The full subset table has
/// `2^n` entries and every checker is exhaustive, so this stays desk-scale.
pub const MAX_ELEMENTS: u32 = 24;

/// A ground set `{0, 1, ..., n-1}` whose σ-field is the full power set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    n: u32,
}

impl FiniteSpace {
    /// A space with `n` elements, `1 <= n <= 24`.
    pub fn new(n: u32) -> Result<FiniteSpace, SpaceError> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(SpaceError::BadCardinality(n));
        }
        Ok(FiniteSpace { n })
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.n
    }

    /// The mask of the whole space.
    pub fn full(&self) -> Mask {
        ((1usize << self.n) - 1) as Mask
    }

    /// All subsets in numeric mask order.
    pub fn masks(&self) -> impl Iterator<Item = Mask> {
        0..(self.subset_count() as Mask)
    }

    /// All subsets ordered by (popcount, numeric mask value).
    pub fn masks_canonical(&self) -> Vec<Mask> {
        let mut v: Vec<Mask> = self.masks().collect();
        v.sort_by_key(|m| (m.count_ones(), *m));
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n
    }

    pub fn complement(&self, mask: Mask) -> Mask {
        self.full() & !mask
    }
}

/// Elements of a mask in ascending order.
pub fn mask_elements(mask: Mask) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Render a mask as a sorted comma-separated element list (`""` for `∅`).
pub fn mask_to_string(mask: Mask) -> String {
    let parts: Vec<String> = mask_elements(mask).map(|i| i.to_string()).collect();
    parts.join(",")
}

/// Parse a comma-separated element list into a mask within the space.
pub fn mask_from_string(space: &FiniteSpace, s: &str) -> Result<Mask, SpaceError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(0);
    }
    let mut mask: Mask = 0;
    for part in s.split(',') {
        let i: u32 = part
            .trim()
            .parse()
            .map_err(|_| SpaceError::BadElement(part.trim().to_string()))?;
        if i >= space.len() {
            return Err(SpaceError::ElementOutOfRange(i, space.len()));
        }
        if mask & (1 << i) != 0 {
            return Err(SpaceError::BadElement(format!("duplicate element {i}")));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("ground-set cardinality {0} out of range 1..={MAX_ELEMENTS}")]
    BadCardinality(u32),
    #[error("invalid element {0:?} in subset key")]
    BadElement(String),
    #[error("element {0} out of range for a space of {1} elements")]
    ElementOutOfRange(u32, u32),
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({})", self.n)
    }
}
