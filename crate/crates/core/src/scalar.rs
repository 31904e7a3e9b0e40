//! Numeric abstraction for relevance weights and scores.
//!
//! Relevance is a weighted count, so every operation the ranking code needs
//! is ring arithmetic plus a conversion from paper counts. Floating types are
//! the everyday choice; [`num_rational::Ratio`] gives exact scores, which the
//! test-suite uses to cross-check the floating path.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Scalar usable as a relevance weight.
pub trait Scalar:
    Num + Signed + FromPrimitive + ToPrimitive + PartialOrd + Copy + Debug + Send + Sync + 'static
{
    /// Tolerance used when checking that the two weights sum to one.
    fn weight_tolerance() -> Self;

    /// Converts a paper count into the scalar domain.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("paper count fits in scalar")
    }

    /// Lossy conversion used for rendering and persistence.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn weight_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn weight_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for Ratio<i64> {
    fn weight_tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

/// Exact rational scalar.
pub type Exact = Ratio<i64>;
