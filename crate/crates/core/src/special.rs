//! Binomial coefficients with the extended convention `C(k, n) = 0` for
//! `n ∉ {0, ..., k}`.

/// `ln k!`, accumulated as `Σ ln i` so it stays finite far past 170!.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln C(k, n)`; `-∞` outside the support.
pub fn ln_binomial(k: i64, n: i64) -> f64 {
    if k < 0 || n < 0 || n > k {
        return f64::NEG_INFINITY;
    }
    let n = n.min(k - n);
    // Σ ln((k - n + i) / i) avoids forming two large factorials
    (1..=n).map(|i| ((k - n + i) as f64).ln() - (i as f64).ln()).sum()
}

/// `C(k, n)` by the multiplicative formula; exact while the result fits in
/// the 53-bit mantissa.
pub fn binomial(k: i64, n: i64) -> f64 {
    if k < 0 || n < 0 || n > k {
        return 0.0;
    }
    let n = n.min(k - n);
    let mut c = 1.0f64;
    for i in 1..=n {
        c = c * (k - n + i) as f64 / i as f64;
    }
    c.round_if_exact()
}

trait RoundIfExact {
    fn round_if_exact(self) -> Self;
}

impl RoundIfExact for f64 {
    fn round_if_exact(self) -> f64 {
        if self < 9.0e15 {
            self.round()
        } else {
            self
        }
    }
}
