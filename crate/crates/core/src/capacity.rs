//! Capacities (nonadditive measures) on finite power-set σ-fields: grounded,
//! monotone set functions with values in `[0, ∞]`, stored as full subset
//! tables and validated exhaustively at construction.

use crate::space::{mask_from_string, mask_to_string, FiniteSpace, Mask, SpaceError};
use crate::value::{parse_value_str, Value};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Capacity {
    space: FiniteSpace,
    table: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CapacityError {
    #[error("μ(∅) must be 0, got {0}")]
    NonzeroEmptySet(String),
    #[error("monotonicity violated: μ({{{}}}) = {va} > {vb} = μ({{{}}})", mask_to_string(*a), mask_to_string(*b))]
    MonotonicityViolation {
        a: Mask,
        b: Mask,
        va: String,
        vb: String,
    },
    #[error("table has {got} entries, expected {expected}")]
    WrongTableSize { got: usize, expected: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Errors from reading or writing the capacity JSON format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing field {0:?}")]
    MissingField(&'static str),
    #[error("subset {0:?} assigned twice")]
    DuplicateSubset(String),
    #[error("no value for subset {0:?} (omitted subsets are an error)")]
    MissingSubset(String),
    #[error("bad subset key {0:?}: {1}")]
    BadSubset(String, String),
    #[error("bad value for subset {0:?}: {1}")]
    BadValue(String, String),
    #[error("capacity with non-rational values cannot be emitted as JSON")]
    NotExactlyRepresentable,
}

impl Capacity {
    /// Validates groundedness and monotonicity. Monotonicity is checked over
    /// all covering pairs `A ⊂ A ∪ {x}`, which is equivalent to checking all
    /// nested pairs and exponentially cheaper.
    pub fn new(space: FiniteSpace, table: Vec<Value>) -> Result<Capacity, CapacityError> {
        if table.len() != space.subset_count() {
            return Err(CapacityError::WrongTableSize {
                got: table.len(),
                expected: space.subset_count(),
            });
        }
        if !table[0].is_zero() {
            return Err(CapacityError::NonzeroEmptySet(table[0].to_string()));
        }
        for mask in space.masks() {
            for x in space.elements() {
                if mask & (1 << x) == 0 {
                    let bigger = mask | (1 << x);
                    if table[mask as usize] > table[bigger as usize] {
                        return Err(CapacityError::MonotonicityViolation {
                            a: mask,
                            b: bigger,
                            va: table[mask as usize].to_string(),
                            vb: table[bigger as usize].to_string(),
                        });
                    }
                }
            }
        }
        Ok(Capacity { space, table })
    }

    /// The σ-additive extension of per-singleton weights.
    pub fn additive(space: FiniteSpace, singletons: &[BigRational]) -> Result<Capacity, CapacityError> {
        assert_eq!(singletons.len(), space.len() as usize);
        let table = space
            .masks()
            .map(|m| {
                let s: BigRational = crate::space::mask_elements(m)
                    .map(|i| singletons[i as usize].clone())
                    .fold(BigRational::zero(), |a, b| a + b);
                Value::rational(s)
            })
            .collect();
        Capacity::new(space, table)
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    /// `μ(A)` for the subset encoded by `mask`.
    pub fn at(&self, mask: Mask) -> &Value {
        &self.table[mask as usize]
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    /// Whether `μ(A) = 0`.
    pub fn is_null(&self, mask: Mask) -> bool {
        self.table[mask as usize].is_zero()
    }

    /// All null sets in numeric mask order.
    pub fn null_sets(&self) -> Vec<Mask> {
        self.space.masks().filter(|m| self.is_null(*m)).collect()
    }

    /// The power transform `μ^r(A) := μ(A)^r`, exact when each `μ(A)^r` is
    /// rational and symbolic otherwise. Monotonicity is validated post-hoc.
    pub fn power(&self, r: &BigRational) -> Capacity {
        assert!(r > &BigRational::zero(), "power exponent must be positive");
        let table: Vec<Value> = self.table.iter().map(|v| v.pow(r)).collect();
        Capacity::new(self.space, table).expect("powers of a monotone table stay monotone")
    }

    /// The clamp `(μ ∧ s)(A) := μ(A) ∧ s`; monotone and grounded by construction.
    pub fn clamp(&self, s: &Value) -> Capacity {
        let table = self.table.iter().map(|v| v.min_val(s)).collect();
        Capacity {
            space: self.space,
            table,
        }
    }

    /// Whether every table entry is a rational or `∞` (required for emission).
    pub fn is_rational_valued(&self) -> bool {
        self.table
            .iter()
            .all(|v| matches!(v, Value::Rational(_) | Value::Infinity))
    }

    /// Emit the canonical JSON form: subsets ordered by (popcount, mask).
    pub fn to_json(&self) -> Result<serde_json::Value, FormatError> {
        if !self.is_rational_valued() {
            return Err(FormatError::NotExactlyRepresentable);
        }
        let mut values = Map::new();
        for mask in self.space.masks_canonical() {
            values.insert(mask_to_string(mask), json!(self.at(mask).to_string()));
        }
        Ok(json!({ "n": self.space.len(), "values": values }))
    }

    pub fn to_json_string(&self) -> Result<String, FormatError> {
        Ok(self.to_json()?.to_string())
    }

    /// Parse the JSON form. Every subset must be assigned exactly once.
    pub fn from_json(v: &serde_json::Value) -> Result<Capacity, CapacityFromJsonError> {
        let obj = v
            .as_object()
            .ok_or(FormatError::Json("expected an object".into()))?;
        let n = obj
            .get("n")
            .ok_or(FormatError::MissingField("n"))?
            .as_u64()
            .ok_or(FormatError::Json("\"n\" must be an integer".into()))?;
        let space = FiniteSpace::new(n as u32).map_err(CapacityError::from)?;
        let values = obj
            .get("values")
            .ok_or(FormatError::MissingField("values"))?
            .as_object()
            .ok_or(FormatError::Json("\"values\" must be an object".into()))?;

        let mut table: Vec<Option<Value>> = vec![None; space.subset_count()];
        for (key, raw) in values {
            let mask = mask_from_string(&space, key)
                .map_err(|e| FormatError::BadSubset(key.clone(), e.to_string()))?;
            let s = raw
                .as_str()
                .ok_or_else(|| FormatError::BadValue(key.clone(), "expected a string".into()))?;
            let val =
                parse_value_str(s).map_err(|e| FormatError::BadValue(key.clone(), e))?;
            if table[mask as usize].is_some() {
                return Err(FormatError::DuplicateSubset(key.clone()).into());
            }
            table[mask as usize] = Some(val);
        }
        let mut full = Vec::with_capacity(space.subset_count());
        for (i, slot) in table.into_iter().enumerate() {
            match slot {
                Some(v) => full.push(v),
                None => {
                    return Err(FormatError::MissingSubset(mask_to_string(i as Mask)).into())
                }
            }
        }
        Ok(Capacity::new(space, full)?)
    }

    pub fn from_json_str(s: &str) -> Result<Capacity, CapacityFromJsonError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| FormatError::Json(e.to_string()))?;
        Capacity::from_json(&v)
    }
}

/// Reading a capacity can fail at the format level or the validation level;
/// the CLI maps these to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CapacityFromJsonError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Invalid(#[from] CapacityError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn cap(n: u32, vals: &[(&str, &str)]) -> Result<Capacity, CapacityFromJsonError> {
        let mut values = Map::new();
        for (k, v) in vals {
            values.insert(k.to_string(), json!(v));
        }
        Capacity::from_json(&json!({ "n": n, "values": values }))
    }

    #[test]
    fn smallest_nondegenerate_case() {
        let c = cap(1, &[("", "0"), ("0", "1")]).unwrap();
        assert_eq!(c.at(0b1), &Value::from_int(1));
    }

    #[test]
    fn covering_pair_example() {
        let c = cap(2, &[("", "0"), ("0", "1/2"), ("1", "1/3"), ("0,1", "1")]).unwrap();
        assert_eq!(c.at(0b01), &Value::ratio(1, 2));
        assert_eq!(c.at(0b11), &Value::from_int(1));
    }

    #[test]
    fn monotonicity_violation_names_the_pair() {
        let err = cap(2, &[("", "0"), ("0", "1"), ("1", "0"), ("0,1", "1/2")]).unwrap_err();
        match err {
            CapacityFromJsonError::Invalid(CapacityError::MonotonicityViolation {
                a, b, ..
            }) => {
                assert_eq!((a, b), (0b01, 0b11));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn nonzero_empty_set_rejected() {
        let err = cap(1, &[("", "1/4"), ("0", "1")]).unwrap_err();
        assert!(matches!(
            err,
            CapacityFromJsonError::Invalid(CapacityError::NonzeroEmptySet(_))
        ));
    }

    #[test]
    fn omitted_subset_is_an_error() {
        let err = cap(2, &[("", "0"), ("0", "1/2"), ("0,1", "1")]).unwrap_err();
        assert!(matches!(
            err,
            CapacityFromJsonError::Format(FormatError::MissingSubset(_))
        ));
    }

    #[test]
    fn duplicate_subset_is_an_error() {
        // "1,0" and "0,1" name the same subset
        let err = cap(
            2,
            &[("", "0"), ("0", "1/2"), ("1", "1/2"), ("0,1", "1"), ("1,0", "1")],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            CapacityFromJsonError::Format(FormatError::DuplicateSubset(_))
        ));
    }

    #[test]
    fn serialization_round_trip_is_bit_exact() {
        let c = cap(
            3,
            &[
                ("", "0"),
                ("0", "1/7"),
                ("1", "1/7"),
                ("2", "0"),
                ("0,1", "2/7"),
                ("0,2", "1/7"),
                ("1,2", "1/7"),
                ("0,1,2", "inf"),
            ],
        )
        .unwrap();
        let s = c.to_json_string().unwrap();
        let back = Capacity::from_json_str(&s).unwrap();
        assert_eq!(c, back);
        // canonical order: popcount then mask value
        let emitted = c.to_json().unwrap();
        let keys: Vec<&str> = emitted
            .get("values")
            .unwrap()
            .as_object()
            .unwrap()
            .keys()
            .map(|s| s.as_str())
            .collect();
        assert_eq!(keys, vec!["", "0", "1", "2", "0,1", "0,2", "1,2", "0,1,2"]);
    }

    #[test]
    fn power_transform_examples() {
        let c = cap(2, &[("", "0"), ("0", "1/4"), ("1", "1/2"), ("0,1", "1")]).unwrap();
        let half = rat(1, 2);
        let p = c.power(&half);
        // (1/4)^(1/2) = 1/2 exact
        assert_eq!(p.at(0b01), &Value::ratio(1, 2));
        // (1/2)^(1/2) symbolic, float within 1e-15
        assert!(p.at(0b10).is_exact());
        assert!((p.at(0b10).to_f64() - 0.7071067811865476).abs() < 1e-15);
        // ∞^3 = ∞
        let ci = cap(1, &[("", "0"), ("0", "inf")]).unwrap();
        assert_eq!(ci.power(&rat(3, 1)).at(0b1), &Value::Infinity);
    }

    #[test]
    fn power_compose_pointwise() {
        let c = cap(2, &[("", "0"), ("0", "1/4"), ("1", "1/2"), ("0,1", "2")]).unwrap();
        let r = rat(1, 2);
        let s = rat(3, 1);
        let lhs = c.power(&r).power(&s);
        let rhs = c.power(&(&r * &s));
        for m in c.space().masks() {
            assert_eq!(lhs.at(m), rhs.at(m));
        }
    }

    #[test]
    fn clamp_examples() {
        let c = cap(1, &[("", "0"), ("0", "2")]).unwrap();
        let clamped = c.clamp(&Value::from_int(1));
        assert_eq!(clamped.at(0b1), &Value::from_int(1));
        let same = c.clamp(&Value::Infinity);
        assert_eq!(same.table(), c.table());
    }

    #[test]
    fn additive_builder() {
        let sp = FiniteSpace::new(3).unwrap();
        let c = Capacity::additive(sp, &[rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        assert_eq!(c.at(0b111), &Value::from_int(1));
        assert_eq!(c.at(0b011), &Value::ratio(5, 6));
    }
}
