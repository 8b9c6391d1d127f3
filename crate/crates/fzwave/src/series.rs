//! Truncated power series in one variable, enough to expand `l_1(1/w)` and
//! friends around `w = 0`.

/// Coefficients `c[0] + c[1] w + … + c[n-1] w^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<f64>);

impl Series {
    pub fn zeros(len: usize) -> Self {
        Series(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ln(1 + c w)`.
    pub fn log1p_linear(c: f64, len: usize) -> Self {
        let mut out = Self::zeros(len);
        let mut pow = 1.0;
        for n in 1..len {
            pow *= c;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            out.0[n] = sign * pow / n as f64;
        }
        out
    }

    /// `1/(1 + c w²)`.
    pub fn inv_one_plus_square(c: f64, len: usize) -> Self {
        let mut out = Self::zeros(len);
        let mut term = 1.0;
        for n in (0..len).step_by(2) {
            out.0[n] = term;
            term *= -c;
        }
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        Series(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut out = Self::zeros(n);
        for i in 0..n {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                out.0[i + j] += self.0[i] * other.0[j];
            }
        }
        out
    }

    /// `exp` of a series (the constant term is handled exactly).
    pub fn exp(&self) -> Self {
        let n = self.len();
        let mut out = Self::zeros(n);
        if n == 0 {
            return out;
        }
        out.0[0] = 1.0;
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.0[j] * out.0[k - j];
            }
            out.0[k] = acc / k as f64;
        }
        let c0 = self.0[0].exp();
        out.scale(c0)
    }

    /// Drops the constant term and divides by `w`.
    pub fn shift_down(&self) -> Self {
        Series(self.0.iter().skip(1).copied().chain(std::iter::once(0.0)).collect())
    }

    /// Multiplies by `w^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.len();
        let mut out = Self::zeros(n);
        for i in 0..n.saturating_sub(k) {
            out.0[i + k] = self.0[i];
        }
        out
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * w + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_log_is_identity() {
        let s = Series::log1p_linear(0.3, 12).exp();
        assert!((s.0[0] - 1.0).abs() < 1e-15);
        assert!((s.0[1] - 0.3).abs() < 1e-15);
        assert!(s.0[2..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn eval_matches_closed_form() {
        let s = Series::inv_one_plus_square(2.0, 40);
        assert!((s.eval(0.1) - 1.0 / 1.02).abs() < 1e-14);
    }
}
