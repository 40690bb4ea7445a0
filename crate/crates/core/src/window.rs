use crate::error::{Error, Result};

/// Finite segment of a bi-infinite real sequence with constant tails.
///
/// The sequence takes `values[i]` at index `first_index + i`, `left_tail` at
/// every index below `first_index`, and `right_tail` at every index above
/// `last_index`. All angles are stored unwrapped; no mod-2π reduction is ever
/// applied, since orbits of interest traverse several periods.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    first_index: i64,
    values: Vec<f64>,
    left_tail: f64,
    right_tail: f64,
}

impl Window {
    pub fn new(first_index: i64, values: Vec<f64>, left_tail: f64, right_tail: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "window must contain at least one value".into(),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "window values must be finite, found {bad}"
            )));
        }
        if !left_tail.is_finite() || !right_tail.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "window tails must be finite, got ({left_tail}, {right_tail})"
            )));
        }
        Ok(Self {
            first_index,
            values,
            left_tail,
            right_tail,
        })
    }

    /// Constant sequence: a one-sample window whose tails equal the sample.
    pub fn constant(value: f64) -> Self {
        Self::new(0, vec![value], value, value).expect("finite constant")
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_tail(&self) -> f64 {
        self.left_tail
    }

    pub fn right_tail(&self) -> f64 {
        self.right_tail
    }

    /// Value at an arbitrary index, using the constant-tail extension.
    pub fn value_at(&self, n: i64) -> f64 {
        if n < self.first_index {
            self.left_tail
        } else if n > self.last_index() {
            self.right_tail
        } else {
            self.values[(n - self.first_index) as usize]
        }
    }

    /// Every value and both tails shifted by `offset`.
    pub fn translated(&self, offset: f64) -> Window {
        Window {
            first_index: self.first_index,
            values: self.values.iter().map(|v| v + offset).collect(),
            left_tail: self.left_tail + offset,
            right_tail: self.right_tail + offset,
        }
    }

    /// Index reversal `n ↦ -n`: the sample order flips and the tails swap.
    pub fn reversed(&self) -> Window {
        let mut values = self.values.clone();
        values.reverse();
        Window {
            first_index: -self.last_index(),
            values,
            left_tail: self.right_tail,
            right_tail: self.left_tail,
        }
    }
}
