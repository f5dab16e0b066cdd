//! Values in `[0, ∞]` with two-tier arithmetic.
//!
//! Tier 1 is exact: nonnegative rationals, `+∞`, and symbolic radicals
//! `base^(1/root)` kept in a canonical minimal-root form. The radical form is
//! closed under multiplication, division, and rational powers, so power
//! transforms of measures and the integral/prenorm formulas built from them
//! stay exact whenever the mathematics is algebraic.
//!
//! Tier 2 is a float path for everything else (mixed sums, transcendental
//! distortions). Expressions are evaluated as dyadic fixed-point numbers with
//! [`EVAL_BITS`] mantissa bits before the single final rounding to `f64`, and
//! results carry their inexactness in the [`Value::Approx`] variant so callers
//! can pick the right comparator ([`FLOAT_TOL`]).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Mantissa bits carried by the dyadic evaluator on the float path.
pub const EVAL_BITS: u32 = 128;

/// Documented comparison tolerance for float-path results.
pub const FLOAT_TOL: f64 = 1e-12;

/// A value in `[0, ∞]`.
#[derive(Clone, Debug)]
pub enum Value {
    /// Exact nonnegative rational.
    Rational(BigRational),
    /// `base^(1/root)`: `base` a positive rational that is not a perfect
    /// `p`-th power for any prime `p` dividing `root`, `root >= 2`.
    /// Irrational by construction.
    Radical { base: BigRational, root: u32 },
    /// Float-tier value; always finite and nonnegative.
    Approx(f64),
    /// Positive infinity.
    Infinity,
}

fn nth_root_exact(x: &BigUint, n: u32) -> Option<BigUint> {
    let r = x.nth_root(n);
    if r.pow(n) == *x {
        Some(r)
    } else {
        None
    }
}

/// Exact `n`-th root of a positive rational, if one exists.
fn rational_root_exact(x: &BigRational, n: u32) -> Option<BigRational> {
    let num = nth_root_exact(x.numer().magnitude(), n)?;
    let den = nth_root_exact(x.denom().magnitude(), n)?;
    Some(BigRational::new(num.into(), den.into()))
}

fn rational_pow(x: &BigRational, n: u32) -> BigRational {
    BigRational::new(x.numer().pow(n), x.denom().pow(n))
}

fn small_u32(x: &BigInt) -> u32 {
    x.to_u32().expect("exponent component exceeds u32")
}

impl Value {
    pub fn zero() -> Value {
        Value::Rational(BigRational::zero())
    }

    pub fn one() -> Value {
        Value::Rational(BigRational::one())
    }

    /// Exact rational value; panics if negative.
    pub fn rational(r: BigRational) -> Value {
        assert!(!r.is_negative(), "measure values must be nonnegative");
        Value::Rational(r)
    }

    pub fn from_int(n: u64) -> Value {
        Value::Rational(BigRational::from_integer(n.into()))
    }

    /// `a/b` as an exact value.
    pub fn ratio(a: u64, b: u64) -> Value {
        Value::Rational(BigRational::new(a.into(), b.into()))
    }

    /// Float-tier constructor; clamps rounding dust below zero.
    pub fn approx(a: f64) -> Value {
        assert!(a.is_finite() || a == f64::INFINITY, "approx value must not be NaN");
        if a == f64::INFINITY {
            return Value::Infinity;
        }
        let a = if a < 0.0 {
            assert!(a > -1e-9, "approx value significantly negative: {a}");
            0.0
        } else {
            a
        };
        Value::Approx(a)
    }

    /// `base^(1/root)` in canonical form: the root index is minimized by
    /// extracting exact prime-indexed roots, and the result collapses to
    /// [`Value::Rational`] when the radical is a perfect power.
    pub fn radical(mut base: BigRational, mut root: u32) -> Value {
        assert!(base.is_positive(), "radical base must be positive");
        assert!(root >= 1, "radical root must be >= 1");
        let mut p = 2u32;
        while p <= root {
            if root % p == 0 {
                if let Some(r) = rational_root_exact(&base, p) {
                    base = r;
                    root /= p;
                    continue;
                }
            }
            p += 1;
        }
        if root == 1 {
            Value::Rational(base)
        } else {
            Value::Radical { base, root }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::Approx(a) => *a == 0.0,
            _ => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    /// Whether this value is on the exact tier.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Approx(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Multiplication with the convention `∞·0 = 0·∞ = 0`.
    pub fn mul(&self, other: &Value) -> Value {
        if self.is_zero() || other.is_zero() {
            return Value::zero();
        }
        match (self, other) {
            (Value::Infinity, _) | (_, Value::Infinity) => Value::Infinity,
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Rational(c), Value::Radical { base, root })
            | (Value::Radical { base, root }, Value::Rational(c)) => {
                Value::radical(rational_pow(c, *root) * base, *root)
            }
            (
                Value::Radical { base: b1, root: r1 },
                Value::Radical { base: b2, root: r2 },
            ) => {
                let l = r1.lcm(r2);
                Value::radical(rational_pow(b1, l / r1) * rational_pow(b2, l / r2), l)
            }
            _ => Value::approx(self.to_f64() * other.to_f64()),
        }
    }

    /// Multiplicative inverse of a positive value; `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Value {
        match self {
            Value::Infinity => Value::zero(),
            Value::Rational(r) if r.is_zero() => Value::Infinity,
            Value::Rational(r) => Value::Rational(r.recip()),
            Value::Radical { base, root } => Value::Radical {
                base: base.recip(),
                root: *root,
            },
            Value::Approx(a) => Value::approx(1.0 / a),
        }
    }

    /// `self / other`; `other` must not be infinite when `self` is.
    pub fn div(&self, other: &Value) -> Value {
        debug_assert!(
            !(self.is_infinite() && other.is_infinite()),
            "∞/∞ is undefined"
        );
        self.mul(&other.recip())
    }

    /// `self^e` for a rational exponent; `0^e = 0` and `∞^e = ∞` for `e > 0`.
    pub fn pow(&self, e: &BigRational) -> Value {
        if e.is_zero() {
            return Value::one();
        }
        let pos = self.pow_positive(&e.abs());
        if e.is_negative() {
            pos.recip()
        } else {
            pos
        }
    }

    fn pow_positive(&self, e: &BigRational) -> Value {
        let n = small_u32(e.numer());
        let d = small_u32(e.denom());
        match self {
            Value::Infinity => Value::Infinity,
            Value::Rational(r) if r.is_zero() => Value::zero(),
            Value::Rational(r) => Value::radical(rational_pow(r, n), d),
            Value::Radical { base, root } => match root.checked_mul(d) {
                Some(rd) if rd <= 1 << 16 => Value::radical(rational_pow(base, n), rd),
                _ => Value::approx(self.to_f64().powf(e.to_f64().unwrap())),
            },
            Value::Approx(a) => Value::approx(a.powf(e.to_f64().unwrap())),
        }
    }

    /// Addition when the result stays on the exact tier. Rationals add
    /// exactly; radicals combine when they are rational multiples of a
    /// common radical (`√8 + √2 = √18`).
    pub fn add_exact(&self, other: &Value) -> Option<Value> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        match (self, other) {
            (Value::Infinity, _) | (_, Value::Infinity) => Some(Value::Infinity),
            (Value::Rational(a), Value::Rational(b)) => Some(Value::Rational(a + b)),
            (
                Value::Radical { base: b1, root: r1 },
                Value::Radical { base: b2, root: r2 },
            ) if r1 == r2 => {
                let t = rational_root_exact(&(b1 / b2), *r1)?;
                let combined = rational_pow(&(t + BigRational::one()), *r1) * b2;
                Some(Value::radical(combined, *r1))
            }
            _ => None,
        }
    }

    /// `a + b`, exact when possible, otherwise a dyadic evaluation.
    pub fn add(&self, other: &Value) -> Value {
        self.add_exact(other)
            .unwrap_or_else(|| Value::sum([self, other]))
    }

    fn sub_exact(&self, other: &Value) -> Option<Value> {
        if other.is_zero() {
            return Some(self.clone());
        }
        match (self, other) {
            (Value::Infinity, x) if !x.is_infinite() => Some(Value::Infinity),
            (Value::Rational(a), Value::Rational(b)) => {
                let d = a - b;
                assert!(!d.is_negative(), "subtraction would go negative");
                Some(Value::Rational(d))
            }
            (
                Value::Radical { base: b1, root: r1 },
                Value::Radical { base: b2, root: r2 },
            ) if r1 == r2 => {
                let t = rational_root_exact(&(b1 / b2), *r1)?;
                let one = BigRational::one();
                assert!(t >= one, "subtraction would go negative");
                if t == one {
                    return Some(Value::zero());
                }
                Some(Value::radical(rational_pow(&(t - one), *r1) * b2, *r1))
            }
            _ => None,
        }
    }

    /// `self - other`, requiring `self >= other`.
    pub fn sub(&self, other: &Value) -> Value {
        self.sub_exact(other).unwrap_or_else(|| {
            let (a, b) = (
                self.to_dyadic(EVAL_BITS).expect("finite"),
                other.to_dyadic(EVAL_BITS).expect("finite"),
            );
            dyadic_to_f64_value(a - b)
        })
    }

    /// `|self - other|`; equal infinities give zero.
    pub fn abs_diff(&self, other: &Value) -> Value {
        match self.cmp_val(other) {
            Ordering::Equal => Value::zero(),
            Ordering::Greater => self.sub(other),
            Ordering::Less => other.sub(self),
        }
    }

    /// Sum of a family, exact whenever every partial sum is; a single dyadic
    /// pass otherwise, so precision does not degrade per term.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a Value>) -> Value {
        let terms: Vec<&Value> = terms.into_iter().collect();
        if terms.iter().any(|v| v.is_infinite()) {
            return Value::Infinity;
        }
        let mut acc = Some(Value::zero());
        for t in &terms {
            acc = acc.and_then(|a| a.add_exact(t));
        }
        if let Some(v) = acc {
            return v;
        }
        let total: BigInt = terms
            .iter()
            .map(|v| v.to_dyadic(EVAL_BITS).expect("finite"))
            .sum();
        dyadic_to_f64_value(total)
    }

    pub fn max_val(&self, other: &Value) -> Value {
        if self.cmp_val(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn min_val(&self, other: &Value) -> Value {
        if self.cmp_val(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Total order. Comparisons between exact tiers are decided exactly by
    /// clearing roots; an `Approx` operand is compared through its exact
    /// dyadic value.
    pub fn cmp_val(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
            (Value::Infinity, _) => Ordering::Greater,
            (_, Value::Infinity) => Ordering::Less,
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::Rational(q), Value::Radical { base, root }) => {
                rational_pow(q, *root).cmp(base)
            }
            (Value::Radical { base, root }, Value::Rational(q)) => {
                base.cmp(&rational_pow(q, *root))
            }
            (
                Value::Radical { base: b1, root: r1 },
                Value::Radical { base: b2, root: r2 },
            ) => {
                let l = r1.lcm(r2);
                rational_pow(b1, l / r1).cmp(&rational_pow(b2, l / r2))
            }
            (Value::Approx(a), Value::Approx(b)) => {
                a.partial_cmp(b).expect("approx values are finite")
            }
            (Value::Approx(a), _) => {
                let ar = BigRational::from_float(*a).expect("finite");
                Value::Rational(ar).cmp_val(other)
            }
            (_, Value::Approx(_)) => other.cmp_val(self).reverse(),
        }
    }

    /// `self <= other + tol`, with the exact comparator when both sides are
    /// exact and the float comparator otherwise.
    pub fn le_with_tol(&self, other: &Value, tol: f64) -> bool {
        if self.is_exact() && other.is_exact() {
            return self.cmp_val(other) != Ordering::Greater;
        }
        if other.is_infinite() {
            return true;
        }
        if self.is_infinite() {
            return false;
        }
        self.to_f64() <= other.to_f64() + tol
    }

    /// Dyadic mantissa `m` with `self ≈ m / 2^bits`; `None` for `∞`.
    pub fn to_dyadic(&self, bits: u32) -> Option<BigInt> {
        match self {
            Value::Infinity => None,
            Value::Rational(r) => Some((r.numer() << bits) / r.denom()),
            Value::Radical { base, root } => {
                let scaled =
                    (base.numer().magnitude() << (bits as u64 * *root as u64)) / base.denom().magnitude();
                Some(BigInt::from(scaled.nth_root(*root)))
            }
            Value::Approx(a) => {
                let r = BigRational::from_float(*a).expect("finite");
                Some((r.numer() << bits) / r.denom())
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Infinity => f64::INFINITY,
            Value::Rational(r) => {
                let m = (r.numer() << 96u32) / r.denom();
                m.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(96)
            }
            Value::Approx(a) => *a,
            _ => {
                let m = self.to_dyadic(96).expect("finite");
                m.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(96)
            }
        }
    }
}

fn dyadic_to_f64_value(m: BigInt) -> Value {
    Value::approx(m.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(EVAL_BITS as i32))
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_val(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_val(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_val(other)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Radical { base, root } => {
                if base.is_integer() {
                    write!(f, "{}^(1/{})", base.numer(), root)
                } else {
                    write!(f, "({}/{})^(1/{})", base.numer(), base.denom(), root)
                }
            }
            Value::Approx(a) => write!(f, "{:.16e}", a),
            Value::Infinity => write!(f, "inf"),
        }
    }
}

/// Parse a measure value string: `a/b`, an integer, or `inf`.
pub fn parse_value_str(s: &str) -> Result<Value, String> {
    let s = s.trim();
    if s == "inf" {
        return Ok(Value::Infinity);
    }
    let r = parse_rational_str(s)?;
    if r.is_negative() {
        return Err(format!("negative measure value: {s}"));
    }
    Ok(Value::Rational(r))
}

/// Parse a signed rational string: `a/b` or an integer.
pub fn parse_rational_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational: {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational: {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator: {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Render a signed rational as `a/b` or an integer.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
