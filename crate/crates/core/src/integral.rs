//! Choquet and Shilkret integrals of nonnegative simple functions, computed
//! through the nested level-set decomposition, plus instance checkers for the
//! transformation formulas, relaxed subadditivity, and marginal continuity.

use crate::capacity::Capacity;
use crate::simple_fn::SimpleFn;
use crate::space::{FiniteSpace, Mask};
use crate::value::{Value, FLOAT_TOL};
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntegralError {
    #[error("function is negative at element {0}")]
    NegativeValue(u32),
    #[error("proved inequality violated ({0}); this indicates an implementation bug")]
    InequalityViolated(String),
}

/// Thresholds `0 < c_1 < ... < c_n` with the nested chain
/// `A_1 ⊇ A_2 ⊇ ... ⊇ A_n`, `A_k = {h >= c_k}`. Reconstructs
/// `h = Σ (c_k − c_{k−1}) χ_{A_k} = ⋁ c_k χ_{A_k}` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub thresholds: Vec<BigRational>,
    pub chain: Vec<Mask>,
}

/// Decomposition with thresholds in the full value algebra, used when the
/// integrand is a rational power of a simple function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDecomposition {
    pub thresholds: Vec<Value>,
    pub chain: Vec<Mask>,
}

/// Level-set decomposition of a nonnegative simple function. Ties collapse
/// into one threshold, so the thresholds are strictly increasing.
pub fn decompose(h: &SimpleFn) -> Result<Decomposition, IntegralError> {
    if let Some(x) = h.first_negative() {
        return Err(IntegralError::NegativeValue(x));
    }
    let thresholds = h.distinct_positive();
    let chain = thresholds.iter().map(|c| h.level_ge(c)).collect();
    Ok(Decomposition { thresholds, chain })
}

/// Rebuild the function from its decomposition (test oracle for round trips).
pub fn reconstruct(space: FiniteSpace, dec: &Decomposition) -> SimpleFn {
    let mut acc = SimpleFn::zero(space);
    let mut prev = BigRational::zero();
    for (c, mask) in dec.thresholds.iter().zip(&dec.chain) {
        acc = acc.add(&SimpleFn::indicator(space, *mask, c - &prev));
        prev = c.clone();
    }
    acc
}

fn decompose_values(space: FiniteSpace, vals: &[Value]) -> ValueDecomposition {
    let mut thresholds: Vec<Value> = vals.iter().filter(|v| !v.is_zero()).cloned().collect();
    thresholds.sort();
    thresholds.dedup();
    let chain = thresholds
        .iter()
        .map(|c| {
            let mut mask: Mask = 0;
            for (i, v) in vals.iter().enumerate() {
                if v >= c {
                    mask |= 1 << i;
                }
            }
            let _ = space;
            mask
        })
        .collect();
    ValueDecomposition { thresholds, chain }
}

fn choquet_of(dec: &ValueDecomposition, mu: &Capacity) -> Value {
    let mut terms = Vec::with_capacity(dec.thresholds.len());
    let mut prev = Value::zero();
    for (c, mask) in dec.thresholds.iter().zip(&dec.chain) {
        terms.push(c.sub(&prev).mul(mu.at(*mask)));
        prev = c.clone();
    }
    Value::sum(&terms)
}

fn shilkret_of(dec: &ValueDecomposition, mu: &Capacity) -> Value {
    dec.thresholds
        .iter()
        .zip(&dec.chain)
        .map(|(c, mask)| c.mul(mu.at(*mask)))
        .fold(Value::zero(), |a, b| a.max_val(&b))
}

fn to_value_decomposition(dec: &Decomposition) -> ValueDecomposition {
    ValueDecomposition {
        thresholds: dec
            .thresholds
            .iter()
            .map(|c| Value::rational(c.clone()))
            .collect(),
        chain: dec.chain.clone(),
    }
}

/// `Ch(μ,h) = Σ (c_k − c_{k−1}) μ(A_k)`, with `∞·0 = 0` inside the sum.
pub fn choquet(mu: &Capacity, h: &SimpleFn) -> Result<Value, IntegralError> {
    let dec = decompose(h)?;
    Ok(choquet_of(&to_value_decomposition(&dec), mu))
}

/// `Sh(μ,h) = ⋁ c_k μ(A_k)` over the decomposition.
pub fn shilkret(mu: &Capacity, h: &SimpleFn) -> Result<Value, IntegralError> {
    let dec = decompose(h)?;
    Ok(shilkret_of(&to_value_decomposition(&dec), mu))
}

/// Both sides of a two-route identity together with `|lhs − rhs|`.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub lhs: Value,
    pub rhs: Value,
    pub gap: Value,
}

impl IdentityCheck {
    fn new(lhs: Value, rhs: Value) -> IdentityCheck {
        let gap = lhs.abs_diff(&rhs);
        IdentityCheck { lhs, rhs, gap }
    }

    /// Exact equality on the exact path, `|gap| <= tol` otherwise.
    pub fn within(&self, tol: f64) -> bool {
        if self.lhs.is_exact() && self.rhs.is_exact() {
            self.lhs == self.rhs
        } else {
            !self.gap.is_infinite() && self.gap.to_f64() <= tol
        }
    }
}

/// `Ch(μ, h^p)` via the decomposition of `h^p` against the weighted
/// threshold form `Σ μ(A_k)(c_k^p − c_{k−1}^p)` computed from `h` directly.
pub fn choquet_power_identity(
    mu: &Capacity,
    h: &SimpleFn,
    p: &BigRational,
) -> Result<IdentityCheck, IntegralError> {
    if let Some(x) = h.first_negative() {
        return Err(IntegralError::NegativeValue(x));
    }
    let powered: Vec<Value> = h
        .values()
        .iter()
        .map(|v| Value::rational(v.clone()).pow(p))
        .collect();
    let lhs = choquet_of(&decompose_values(h.space(), &powered), mu);

    let dec = decompose(h)?;
    let mut terms = Vec::with_capacity(dec.thresholds.len());
    let mut prev = Value::zero();
    for (c, mask) in dec.thresholds.iter().zip(&dec.chain) {
        let cp = Value::rational(c.clone()).pow(p);
        terms.push(mu.at(*mask).mul(&cp.sub(&prev)));
        prev = cp;
    }
    let rhs = Value::sum(&terms);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `Sh(μ, h^p)` against `Sh(μ^{1/p}, h)^p`.
pub fn shilkret_power_identity(
    mu: &Capacity,
    h: &SimpleFn,
    p: &BigRational,
) -> Result<IdentityCheck, IntegralError> {
    if let Some(x) = h.first_negative() {
        return Err(IntegralError::NegativeValue(x));
    }
    let powered: Vec<Value> = h
        .values()
        .iter()
        .map(|v| Value::rational(v.clone()).pow(p))
        .collect();
    let lhs = shilkret_of(&decompose_values(h.space(), &powered), mu);
    let rhs = shilkret(&mu.power(&p.recip()), h)?.pow(p);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// The four integrals of a relaxed-subadditivity instance and its verdicts.
#[derive(Debug, Clone)]
pub struct RelaxedSubadditivityCheck {
    pub choquet_sum: Value,
    pub choquet_f: Value,
    pub choquet_g: Value,
    pub shilkret_sum: Value,
    pub shilkret_f: Value,
    pub shilkret_g: Value,
    pub choquet_bound: Value,
    pub shilkret_bound: Value,
}

/// Asserts `Ch(μ,f+g) ≤ 2K{Ch(μ,f)+Ch(μ,g)}` and the Shilkret twin for a
/// measure with relaxed-subadditivity constant `K`.
pub fn relaxed_subadditivity_check(
    mu: &Capacity,
    k: &Value,
    f: &SimpleFn,
    g: &SimpleFn,
) -> Result<RelaxedSubadditivityCheck, IntegralError> {
    let sum = f.add(g);
    let two_k = Value::from_int(2).mul(k);
    let ch_f = choquet(mu, f)?;
    let ch_g = choquet(mu, g)?;
    let ch_sum = choquet(mu, &sum)?;
    let ch_bound = two_k.mul(&ch_f.add(&ch_g));
    let sh_f = shilkret(mu, f)?;
    let sh_g = shilkret(mu, g)?;
    let sh_sum = shilkret(mu, &sum)?;
    let sh_bound = two_k.mul(&sh_f.add(&sh_g));
    if !ch_sum.le_with_tol(&ch_bound, FLOAT_TOL) {
        return Err(IntegralError::InequalityViolated(format!(
            "Ch(μ,f+g) = {ch_sum} > {ch_bound}"
        )));
    }
    if !sh_sum.le_with_tol(&sh_bound, FLOAT_TOL) {
        return Err(IntegralError::InequalityViolated(format!(
            "Sh(μ,f+g) = {sh_sum} > {sh_bound}"
        )));
    }
    Ok(RelaxedSubadditivityCheck {
        choquet_sum: ch_sum,
        choquet_f: ch_f,
        choquet_g: ch_g,
        shilkret_sum: sh_sum,
        shilkret_f: sh_f,
        shilkret_g: sh_g,
        choquet_bound: ch_bound,
        shilkret_bound: sh_bound,
    })
}

/// Values of `Ch(μ, h ∧ r)` and `Sh(μ, h ∧ r)` at the clamp levels checked by
/// [`upper_marginal_continuity_check`].
#[derive(Debug, Clone)]
pub struct MarginalContinuityCheck {
    pub choquet_full: Value,
    pub shilkret_full: Value,
    /// `(r, Ch(μ,h∧r), Sh(μ,h∧r))` for each requested clamp level.
    pub clamped: Vec<(BigRational, Value, Value)>,
}

/// Verifies `Ch(μ,h) = Ch(μ, h ∧ r_max)` (and Shilkret likewise) where
/// `r_max = max h`; on finite functions the supremum over `r` is attained.
/// Extra clamp levels may be supplied to tabulate monotonicity in `r`.
pub fn upper_marginal_continuity_check(
    mu: &Capacity,
    h: &SimpleFn,
    extra_levels: &[BigRational],
) -> Result<MarginalContinuityCheck, IntegralError> {
    if let Some(x) = h.first_negative() {
        return Err(IntegralError::NegativeValue(x));
    }
    let r_max = h.max_abs();
    let ch_full = choquet(mu, h)?;
    let sh_full = shilkret(mu, h)?;
    let clamped_top = h.clamp_max(&r_max);
    let ch_top = choquet(mu, &clamped_top)?;
    let sh_top = shilkret(mu, &clamped_top)?;
    if ch_top != ch_full || sh_top != sh_full {
        return Err(IntegralError::InequalityViolated(
            "clamp at max h changed an integral".into(),
        ));
    }
    let mut clamped = Vec::new();
    for r in extra_levels {
        let hr = h.clamp_max(r);
        let ch_r = choquet(mu, &hr)?;
        let sh_r = shilkret(mu, &hr)?;
        if !ch_r.le_with_tol(&ch_full, FLOAT_TOL) || !sh_r.le_with_tol(&sh_full, FLOAT_TOL) {
            return Err(IntegralError::InequalityViolated(
                "integral of a clamp exceeded the full integral".into(),
            ));
        }
        clamped.push((r.clone(), ch_r, sh_r));
    }
    clamped.push((r_max, ch_top, sh_top));
    Ok(MarginalContinuityCheck {
        choquet_full: ch_full,
        shilkret_full: sh_full,
        clamped,
    })
}
