//! Measurable real-valued functions on a finite ground set. Every function on
//! a finite space is simple; values are exact rationals and may be negative.

use crate::space::{FiniteSpace, Mask};
use crate::value::parse_rational_str;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFn {
    space: FiniteSpace,
    values: Vec<BigRational>,
}

impl SimpleFn {
    pub fn new(space: FiniteSpace, values: Vec<BigRational>) -> Result<SimpleFn, String> {
        if values.len() != space.len() as usize {
            return Err(format!(
                "expected {} values, got {}",
                space.len(),
                values.len()
            ));
        }
        Ok(SimpleFn { space, values })
    }

    /// Parse a comma-separated rational list, one value per element.
    pub fn parse(space: FiniteSpace, literal: &str) -> Result<SimpleFn, String> {
        let values: Result<Vec<BigRational>, String> =
            literal.split(',').map(parse_rational_str).collect();
        SimpleFn::new(space, values?)
    }

    pub fn zero(space: FiniteSpace) -> SimpleFn {
        SimpleFn {
            space,
            values: vec![BigRational::zero(); space.len() as usize],
        }
    }

    /// `c · χ_A`.
    pub fn indicator(space: FiniteSpace, mask: Mask, c: BigRational) -> SimpleFn {
        let values = space
            .elements()
            .map(|i| {
                if mask & (1 << i) != 0 {
                    c.clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        SimpleFn { space, values }
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, element: u32) -> &BigRational {
        &self.values[element as usize]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Index of the first element with a negative value, if any.
    pub fn first_negative(&self) -> Option<u32> {
        self.values.iter().position(|v| v.is_negative()).map(|i| i as u32)
    }

    pub fn abs(&self) -> SimpleFn {
        self.map(|v| v.abs())
    }

    pub fn scale(&self, c: &BigRational) -> SimpleFn {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &SimpleFn) -> SimpleFn {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SimpleFn) -> SimpleFn {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise `f ∧ r`.
    pub fn clamp_max(&self, r: &BigRational) -> SimpleFn {
        self.map(|v| if v > r { r.clone() } else { v.clone() })
    }

    /// Pointwise `(f - r)⁺`.
    pub fn truncate_above(&self, r: &BigRational) -> SimpleFn {
        self.map(|v| {
            let d = v - r;
            if d.is_negative() {
                BigRational::zero()
            } else {
                d
            }
        })
    }

    pub fn le(&self, other: &SimpleFn) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a <= b)
    }

    /// `{f > t}` as a mask.
    pub fn level_gt(&self, t: &BigRational) -> Mask {
        self.level(|v| v > t)
    }

    /// `{f >= t}` as a mask.
    pub fn level_ge(&self, t: &BigRational) -> Mask {
        self.level(|v| v >= t)
    }

    /// Support `{f != 0}` as a mask.
    pub fn support(&self) -> Mask {
        self.level(|v| !v.is_zero())
    }

    pub fn max_abs(&self) -> BigRational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .expect("nonempty space")
    }

    /// Distinct positive values in increasing order.
    pub fn distinct_positive(&self) -> Vec<BigRational> {
        let mut vals: Vec<BigRational> = self
            .values
            .iter()
            .filter(|v| v.is_positive())
            .cloned()
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }

    fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> SimpleFn {
        SimpleFn {
            space: self.space,
            values: self.values.iter().map(f).collect(),
        }
    }

    fn zip(
        &self,
        other: &SimpleFn,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> SimpleFn {
        assert_eq!(self.space, other.space, "mismatched spaces");
        SimpleFn {
            space: self.space,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn level(&self, pred: impl Fn(&BigRational) -> bool) -> Mask {
        let mut mask: Mask = 0;
        for (i, v) in self.values.iter().enumerate() {
            if pred(v) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Render as the comma-separated literal accepted by [`SimpleFn::parse`].
    pub fn to_literal(&self) -> String {
        self.values
            .iter()
            .map(crate::value::rational_to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parse_and_levels() {
        let sp = FiniteSpace::new(3).unwrap();
        let f = SimpleFn::parse(sp, "1/2,-3,0").unwrap();
        assert!(!f.is_nonnegative());
        assert_eq!(f.first_negative(), Some(1));
        assert_eq!(f.abs().values()[1], rat(3, 1));
        assert_eq!(f.support(), 0b011);
        assert_eq!(f.level_gt(&rat(0, 1)), 0b001);
        assert_eq!(f.abs().level_ge(&rat(3, 1)), 0b010);
        assert_eq!(f.to_literal(), "1/2,-3,0");
    }

    #[test]
    fn pointwise_ops() {
        let sp = FiniteSpace::new(2).unwrap();
        let f = SimpleFn::parse(sp, "2,1").unwrap();
        let g = SimpleFn::parse(sp, "1,3").unwrap();
        assert_eq!(f.add(&g), SimpleFn::parse(sp, "3,4").unwrap());
        assert_eq!(f.sub(&g), SimpleFn::parse(sp, "1,-2").unwrap());
        assert_eq!(f.clamp_max(&rat(1, 1)), SimpleFn::parse(sp, "1,1").unwrap());
        assert_eq!(
            f.truncate_above(&rat(3, 2)),
            SimpleFn::parse(sp, "1/2,0").unwrap()
        );
        assert!(f.clamp_max(&rat(1, 1)).le(&f));
        assert_eq!(f.distinct_positive(), vec![rat(1, 1), rat(2, 1)]);
    }
}
