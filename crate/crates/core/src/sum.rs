//! Error-free floating-point accumulation.
//!
//! [`ExactSum`] keeps the running total as a list of non-overlapping partials
//! (Shewchuk's algorithm), so the rounded result is the correctly rounded
//! exact sum of all inputs. The result therefore does not depend on the order
//! of additions or on how the inputs were split across workers.

use num_complex::Complex64;

#[derive(Clone, Debug, Default)]
pub struct ExactSum {
    partials: Vec<f64>,
    /// Set once a non-finite value has been added; the sum then falls back to
    /// plain IEEE semantics.
    special: Option<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        if !x.is_finite() {
            self.special = Some(self.special.map_or(x, |s| s + x));
            return;
        }
        let mut x = x;
        let mut i = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        self.partials.truncate(i);
        self.partials.push(x);
    }

    pub fn merge(&mut self, other: &ExactSum) {
        for &p in &other.partials {
            self.add(p);
        }
        if let Some(s) = other.special {
            self.add(s);
        }
    }

    /// Correctly rounded value of the exact sum.
    pub fn value(&self) -> f64 {
        if let Some(s) = self.special {
            return s;
        }
        let p = &self.partials;
        let Some(mut n) = p.len().checked_sub(1) else {
            return 0.0;
        };
        let mut hi = p[n];
        let mut lo = 0.0;
        while n > 0 {
            n -= 1;
            let x = hi;
            let y = p[n];
            hi = x + y;
            let yr = hi - x;
            lo = y - yr;
            if lo != 0.0 {
                break;
            }
        }
        // Round-half-even correction when the remaining partials push the
        // tail past the halfway point.
        if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            let yr = x - hi;
            if y == yr {
                hi = x;
            }
        }
        hi
    }
}

impl Extend<f64> for ExactSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Exact accumulation of complex numbers, componentwise.
#[derive(Clone, Debug, Default)]
pub struct ExactComplexSum {
    re: ExactSum,
    im: ExactSum,
}

impl ExactComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ExactComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cancels_catastrophically_large_terms() {
        let mut s = ExactSum::new();
        s.extend([1e100, 1.0, -1e100, 1e-100]);
        assert_eq!(s.value(), 1.0 + 1e-100);
        let mut t = ExactSum::new();
        t.extend([0.1; 10]);
        assert_eq!(t.value(), 1.0);
    }

    #[test]
    fn empty_is_zero() {
        assert_eq!(ExactSum::new().value(), 0.0);
    }

    proptest! {
        #[test]
        fn order_and_split_independent(
            xs in proptest::collection::vec(-1e12f64..1e12, 0..60),
            split in 0usize..60,
        ) {
            let mut fwd = ExactSum::new();
            fwd.extend(xs.iter().copied());
            let mut rev = ExactSum::new();
            rev.extend(xs.iter().rev().copied());
            prop_assert_eq!(fwd.value().to_bits(), rev.value().to_bits());

            let cut = split.min(xs.len());
            let mut a = ExactSum::new();
            a.extend(xs[..cut].iter().copied());
            let mut b = ExactSum::new();
            b.extend(xs[cut..].iter().copied());
            b.merge(&a);
            prop_assert_eq!(fwd.value().to_bits(), b.value().to_bits());
        }

        #[test]
        fn matches_integer_sums(xs in proptest::collection::vec(-1_000_000i64..1_000_000, 0..50)) {
            let mut s = ExactSum::new();
            s.extend(xs.iter().map(|&x| x as f64 * 0.5));
            let exact: i64 = xs.iter().sum();
            prop_assert_eq!(s.value(), exact as f64 * 0.5);
        }
    }
}
