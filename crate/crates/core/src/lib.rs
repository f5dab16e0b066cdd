//! Exact-arithmetic toolkit for nonadditive measures (capacities) on finite
//! power-set σ-fields and on the closed-form countable families used as
//! counterexamples: Choquet and Shilkret integrals, the four function-space
//! prenorms, exhaustive property checkers with replayable witnesses, a seeded
//! implication scanner, and convergence-mode evaluators.

pub mod capacity;
pub mod integral;
pub mod simple_fn;
pub mod space;
pub mod value;

pub use capacity::{Capacity, CapacityError};
pub use simple_fn::SimpleFn;
pub use space::{FiniteSpace, Mask};
pub use value::Value;
