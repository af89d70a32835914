use serde::{Deserialize, Serialize};

/// Running count, mean and sum of squared deviations `M` of the selected
/// expected returns (Welford). The portfolio risk is `sqrt(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RunningStats {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flip {
    /// Bit goes 0 -> 1.
    Add,
    /// Bit goes 1 -> 0.
    Remove,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> Self {
        values.into_iter().fold(Self::new(), |s, g| s.add(g))
    }

    pub fn risk(&self) -> f64 {
        self.m2.max(0.0).sqrt()
    }

    #[must_use]
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, g: f64) -> Self {
        let n = self.n + 1;
        let mean = self.mean + (g - self.mean) / n as f64;
        let m2 = if n == 1 {
            0.0
        } else {
            self.m2 + (g - self.mean) * (g - mean)
        };
        Self { n, mean, m2 }
    }

    /// Inverse of [`add`](Self::add). The caller guarantees `g` was added.
    #[must_use]
    pub fn remove(self, g: f64) -> Self {
        debug_assert!(self.n >= 1, "remove from empty statistics");
        if self.n <= 1 {
            return Self::new();
        }
        let n = self.n - 1;
        let mean = (self.n as f64 * self.mean - g) / n as f64;
        let m2 = if n == 1 {
            0.0
        } else {
            (self.m2 - (g - mean) * (g - self.mean)).max(0.0)
        };
        Self { n, mean, m2 }
    }

    /// Change in `M` if `g` were added or removed; `self` is untouched.
    /// Removing from empty statistics is reported as no change.
    pub fn delta_m(&self, g: f64, flip: Flip) -> f64 {
        match flip {
            Flip::Add => self.add(g).m2 - self.m2,
            Flip::Remove if self.n == 0 => 0.0,
            Flip::Remove => self.remove(g).m2 - self.m2,
        }
    }
}
