use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest order accepted by the evaluators.
pub const MAX_ORDER: u32 = 256;

/// A nonnegative integer or half-odd-integer Bessel order, stored as `2*nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub struct Order(u32);

impl Order {
    pub const fn integer(n: u32) -> Self {
        Order(2 * n)
    }

    /// The order `n + 1/2`.
    pub const fn half_odd(n: u32) -> Self {
        Order(2 * n + 1)
    }

    pub fn from_f64(nu: f64) -> Result<Self> {
        let twice = 2.0 * nu;
        if !(twice >= 0.0) || twice.fract() != 0.0 || twice > f64::from(2 * MAX_ORDER + 1) {
            return Err(domain(format!("order {nu} is not a supported half-integer")));
        }
        Ok(Order(twice as u32))
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<u32> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Index on the ladder `k + offset`, with offset 0 or 1/2.
    pub(crate) fn ladder_index(self) -> i64 {
        i64::from(self.0 / 2)
    }

    pub(crate) fn offset(self) -> f64 {
        if self.is_integer() {
            0.0
        } else {
            0.5
        }
    }

    pub(crate) fn check_envelope(self) -> Result<()> {
        if self.value() > f64::from(MAX_ORDER) {
            return Err(domain(format!("order {} exceeds maximum {MAX_ORDER}", self.value())));
        }
        Ok(())
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.value()
    }
}

impl TryFrom<f64> for Order {
    type Error = crate::error::Error;
    fn try_from(v: f64) -> Result<Self> {
        Order::from_f64(v)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
