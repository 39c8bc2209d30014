//! Arithmetic classification of `σ = p/q`.
//!
//! The two non-accumulating conditions overlap: `4 ∤ p` and `q` even can both
//! hold (e.g. `1/2`). A single label is still reported, with `q` even taking
//! precedence, and the raw divisibility facts are kept alongside it.

use serde::Serialize;

use crate::asymptotics::f_of;
use crate::error::{Error, Result};

/// Divisibility class of a reduced `p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// `4 ∤ p` and `q` odd.
    C1,
    /// `q` even.
    C2,
    /// `4 | p` and `q` odd: the spectrum has a finite accumulation point.
    C3,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaRational {
    pub p: u64,
    pub q: u64,
    pub sigma: f64,
    pub alpha: f64,
    pub condition: Condition,
    pub has_accumulation: bool,
    /// `4 ∤ p`.
    pub four_not_dividing_p: bool,
    /// `q` even.
    pub q_even: bool,
}

impl SigmaRational {
    /// Is `ℓ = σk − σ/4` for this `(ℓ, k)`, i.e. `4qℓ = p(4k − 1)`?
    pub fn on_sigma_star(&self, l: u64, k: u64) -> bool {
        if k == 0 {
            return false;
        }
        (4 * self.q as u128) * l as u128 == self.p as u128 * (4 * k as u128 - 1)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Label for an already reduced pair.
pub fn condition_of(p: u64, q: u64) -> Condition {
    if q % 2 == 0 {
        Condition::C2
    } else if p % 4 != 0 {
        Condition::C1
    } else {
        Condition::C3
    }
}

/// Reduces `p/q` and classifies it; `α = f(p/q)`.
pub fn classify(p: u64, q: u64) -> Result<SigmaRational> {
    if p == 0 || q == 0 {
        return Err(Error::domain(format!("p and q must be positive, got {p}/{q}")));
    }
    let d = gcd(p, q);
    let (p, q) = (p / d, q / d);
    let sigma = p as f64 / q as f64;
    let alpha = f_of(sigma)?;
    let condition = condition_of(p, q);
    Ok(SigmaRational {
        p,
        q,
        sigma,
        alpha,
        condition,
        has_accumulation: condition == Condition::C3,
        four_not_dividing_p: p % 4 != 0,
        q_even: q % 2 == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_cases() {
        assert_eq!(classify(1, 1).unwrap().condition, Condition::C1);
        assert_eq!(classify(1, 3).unwrap().condition, Condition::C1);
        assert_eq!(classify(3, 2).unwrap().condition, Condition::C2);
        let s = classify(8, 3).unwrap();
        assert_eq!(s.condition, Condition::C3);
        assert!(s.has_accumulation);
        // 1/2 meets both non-accumulating conditions
        let h = classify(1, 2).unwrap();
        assert!(h.four_not_dividing_p && h.q_even);
        assert!(!h.has_accumulation);
    }

    #[test]
    fn reduces_before_classifying() {
        let s = classify(16, 6).unwrap();
        assert_eq!((s.p, s.q, s.condition), (8, 3, Condition::C3));
        assert!((s.alpha - f_of(8.0 / 3.0).unwrap()).abs() == 0.0);
    }

    #[test]
    fn zero_is_domain_error() {
        assert!(classify(0, 3).unwrap_err().is_domain());
        assert!(classify(3, 0).unwrap_err().is_domain());
    }

    proptest! {
        #[test]
        fn trichotomy(p in 1u64..100_000, q in 1u64..100_000) {
            let d = gcd(p, q);
            let (p, q) = (p / d, q / d);
            let c = condition_of(p, q);
            let c1 = p % 4 != 0;
            let c2 = q % 2 == 0;
            prop_assert_eq!(c == Condition::C3, !c1 && !c2);
            prop_assert_eq!(c == Condition::C3, p % 4 == 0 && q % 2 == 1);
        }
    }
}
