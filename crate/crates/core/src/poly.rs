//! Dense univariate polynomials and Sturm-sequence root isolation, generic over
//! exact rationals and doubles.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Coefficient field for [`Polynomial`].
pub trait Coefficient: Clone + PartialOrd + Signed {
    /// Whether `self` should be treated as zero next to a quantity of size `scale`.
    fn negligible(&self, scale: &Self) -> bool;
    fn half(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Coefficient for f64 {
    fn negligible(&self, scale: &f64) -> bool {
        self.abs() <= 1e-12 * scale.abs().max(f64::MIN_POSITIVE) || !self.is_finite()
    }

    fn half(&self) -> f64 {
        0.5 * self
    }

    fn from_i64(v: i64) -> f64 {
        v as f64
    }
}

impl Coefficient for Rational {
    fn negligible(&self, _scale: &Rational) -> bool {
        self.is_zero()
    }

    fn half(&self) -> Rational {
        self / Rational::from_integer(2.into())
    }

    fn from_i64(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }
}

/// Coefficients are stored lowest degree first; the leading coefficient is
/// never negligible, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        let scale = coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        while coeffs.last().is_some_and(|c| c.negligible(&scale)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_i64(k as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                let b = other.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Polynomial::new(coeffs)
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let q = r[top].clone() / lead.clone();
            for k in 0..=d {
                let sub = q.clone() * divisor.coeffs[k].clone();
                r[top - d + k] = r[top - d + k].clone() - sub;
            }
            r.pop();
            while r.last().is_some_and(|c| c.negligible(&scale)) {
                r.pop();
            }
        }
        let mut out = Polynomial { coeffs: r };
        while out.coeffs.last().is_some_and(|c| c.negligible(&scale)) {
            out.coeffs.pop();
        }
        out
    }

    pub fn sturm_chain(&self) -> SturmChain<T> {
        SturmChain::new(self)
    }
}

impl Polynomial<Rational> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::new(self.coeffs.iter().map(crate::rational::to_f64).collect())
    }
}

/// The sequence `p, p′, −rem(p, p′), …` used to count distinct real roots.
#[derive(Clone, Debug)]
pub struct SturmChain<T> {
    chain: Vec<Polynomial<T>>,
}

impl<T: Coefficient> SturmChain<T> {
    pub fn new(p: &Polynomial<T>) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.clone());
        let mut next = p.derivative();
        while !next.is_zero() {
            chain.push(next);
            let k = chain.len();
            next = chain[k - 2].rem(&chain[k - 1]).neg();
        }
        SturmChain { chain }
    }

    pub fn polynomials(&self) -> &[Polynomial<T>] {
        &self.chain
    }

    pub fn sign_variations(&self, x: &T) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &T, b: &T) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }

    /// Disjoint intervals `(lo, hi]` inside `(a, b]`, each holding exactly one
    /// distinct root, in increasing order.
    pub fn isolate_roots(&self, a: &T, b: &T) -> Vec<(T, T)> {
        let mut out = Vec::new();
        self.isolate_into(a.clone(), b.clone(), 0, &mut out);
        out
    }

    fn isolate_into(&self, a: T, b: T, depth: usize, out: &mut Vec<(T, T)>) {
        match self.count_roots(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ if depth >= 200 => out.push((a, b)),
            _ => {
                let mid = (a.clone() + b.clone()).half();
                self.isolate_into(a, mid.clone(), depth + 1, out);
                self.isolate_into(mid, b, depth + 1, out);
            }
        }
    }

    /// Shrinks an isolating interval by counting bisection until `hi − lo ≤ tol`
    /// or `iterations` halvings have been made.
    pub fn refine(&self, interval: (T, T), tol: &T, iterations: usize) -> (T, T) {
        let (mut lo, mut hi) = interval;
        for _ in 0..iterations {
            if (hi.clone() - lo.clone()) <= *tol {
                break;
            }
            let mid = (lo.clone() + hi.clone()).half();
            if self.count_roots(&lo, &mid) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

/// Maximiser of `p` over `[a, b]` from the endpoints and the isolated roots of
/// `p′`; ties go to the larger abscissa.
pub fn maximize_on_interval(p: &Polynomial<f64>, a: f64, b: f64) -> (f64, f64) {
    let dp = p.derivative();
    let mut best = (b, p.eval(&b));
    let mut consider = |x: f64| {
        let v = p.eval(&x);
        if v > best.1 || (v == best.1 && x > best.0) {
            best = (x, v);
        }
    };
    consider(a);
    if !dp.is_zero() {
        let chain = dp.sturm_chain();
        for interval in chain.isolate_roots(&a, &b) {
            let (mut lo, mut hi) = chain.refine(interval, &1e-6, 64);
            let (slo, shi) = (dp.eval(&lo), dp.eval(&hi));
            if slo * shi < 0.0 {
                // simple root: plain bisection on the sign is enough
                while hi - lo > 1e-15 * hi.abs().max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    if (dp.eval(&mid) < 0.0) == (slo < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            } else {
                (lo, hi) = chain.refine((lo, hi), &1e-12, 64);
            }
            consider(lo);
            consider(hi);
            consider(0.5 * (lo + hi));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    fn qp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&v| integer(v)).collect())
    }

    #[test]
    fn eval_and_derivative() {
        let p = qp(&[1, -3, 0, 2]);
        assert_eq!(p.eval(&integer(2)), integer(11));
        assert_eq!(p.derivative(), qp(&[-3, 0, 6]));
        assert_eq!(qp(&[0, 0]).degree(), None);
    }

    #[test]
    fn remainder() {
        // x³ − 1 = (x − 1)(x² + x + 1)
        assert!(qp(&[-1, 0, 0, 1]).rem(&qp(&[-1, 1])).is_zero());
        assert_eq!(qp(&[1, 0, 1]).rem(&qp(&[0, 1])), qp(&[1]));
    }

    #[test]
    fn counts_roots_exactly() {
        // (x − 1/4)(x − 1/2)(x − 3)
        let p = Polynomial::new(vec![ratio(-3, 8), ratio(19, 8), ratio(-15, 4), integer(1)]);
        let s = p.sturm_chain();
        assert_eq!(s.count_roots(&integer(0), &integer(1)), 2);
        assert_eq!(s.count_roots(&integer(-5), &integer(5)), 3);
        let roots = s.isolate_roots(&integer(0), &integer(4));
        assert_eq!(roots.len(), 3);
        let (lo, hi) = s.refine(roots[1].clone(), &ratio(1, 1 << 20), 100);
        assert!(lo < ratio(1, 2) && ratio(1, 2) <= hi);
    }

    #[test]
    fn repeated_root_counted_once() {
        // (x − 1)²
        let s = qp(&[1, -2, 1]).sturm_chain();
        assert_eq!(s.count_roots(&integer(0), &integer(2)), 1);
    }

    #[test]
    fn float_agrees_with_exact() {
        let exact = Polynomial::new(vec![ratio(-3, 8), ratio(19, 8), ratio(-15, 4), integer(1)]);
        let float = exact.to_f64();
        let s = float.sturm_chain();
        assert_eq!(s.count_roots(&0.0, &1.0), 2);
        let r = s.isolate_roots(&0.0, &1.0);
        let (lo, hi) = s.refine(r[0], &1e-14, 80);
        assert!((0.5 * (lo + hi) - 0.25).abs() < 1e-13);
    }

    #[test]
    fn maximum_on_interval() {
        // −(x − 0.3)² has its maximum inside
        let p = Polynomial::new(vec![-0.09, 0.6, -1.0]);
        let (x, v) = maximize_on_interval(&p, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-9 && v.abs() < 1e-15);
        // constant: ties resolved toward the larger abscissa
        let (x, _) = maximize_on_interval(&Polynomial::new(vec![2.0]), 0.0, 1.0);
        assert_eq!(x, 1.0);
    }
}
