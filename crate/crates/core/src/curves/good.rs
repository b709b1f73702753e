use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, integer, ratio, Rational};

/// `f_α(x) = −αx⁷ + 2αx⁶ − αx⁵ − x² + x` for a rational `0 < α < 1`.
///
/// Equivalently `f_α(x) = x(1 − x) − α·w(x)` with the gap weight
/// `w(x) = x⁵(1 − x)²`, which makes the pointwise decrease in `α` explicit.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodFunction {
    alpha: Rational,
    alpha_f64: f64,
}

impl GoodFunction {
    pub fn new(alpha: Rational) -> Result<Self> {
        if !rational::in_open_unit(&alpha) {
            return Err(Error::Domain(format!(
                "alpha = {} must lie in (0, 1)",
                rational::format(&alpha)
            )));
        }
        let alpha_f64 = rational::to_f64(&alpha);
        Ok(GoodFunction { alpha, alpha_f64 })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha_f64
    }

    /// Exact coefficients, lowest degree first.
    pub fn polynomial(&self) -> Polynomial<Rational> {
        polynomial_for(&self.alpha)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        check_unit(x)?;
        Ok(self.polynomial().eval(x))
    }

    /// Exact `(f′(x), f″(x))`.
    pub fn derivatives(&self, x: &Rational) -> Result<(Rational, Rational)> {
        check_unit(x)?;
        let d1 = self.polynomial().derivative();
        let d2 = d1.derivative();
        Ok((d1.eval(x), d2.eval(x)))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        eval_f64(self.alpha_f64, x)
    }

    pub fn derivative_f64(&self, x: f64) -> f64 {
        derivative_f64(self.alpha_f64, x)
    }

    pub fn second_derivative_f64(&self, x: f64) -> f64 {
        let a = self.alpha_f64;
        x * x * x * (a * (-42.0 * x * x + 60.0 * x - 20.0)) - 2.0
    }
}

fn check_unit(x: &Rational) -> Result<()> {
    if x < &Rational::zero() || x > &Rational::one() {
        return Err(Error::Domain(format!(
            "x = {} must lie in [0, 1]",
            rational::format(x)
        )));
    }
    Ok(())
}

fn polynomial_for(alpha: &Rational) -> Polynomial<Rational> {
    let a = alpha.clone();
    Polynomial::new(vec![
        Rational::zero(),
        Rational::one(),
        -Rational::one(),
        Rational::zero(),
        Rational::zero(),
        -a.clone(),
        a.clone() * integer(2),
        -a,
    ])
}

pub fn eval_good_function(alpha: &Rational, x: &Rational) -> Result<Rational> {
    GoodFunction::new(alpha.clone())?.eval(x)
}

pub fn good_function_derivatives(alpha: &Rational, x: &Rational) -> Result<(Rational, Rational)> {
    GoodFunction::new(alpha.clone())?.derivatives(x)
}

/// `f_α(x)` in double precision for any real `α`.
pub fn eval_f64(alpha: f64, x: f64) -> f64 {
    x * (1.0 - x) - alpha * gap_weight(x)
}

pub fn derivative_f64(alpha: f64, x: f64) -> f64 {
    let x4 = x * x * x * x;
    1.0 - 2.0 * x - alpha * x4 * (7.0 * x * x - 12.0 * x + 5.0)
}

/// `w(x) = x⁵(1 − x)²`, so that `f_α − f_β = (β − α)·w`.
pub fn gap_weight(x: f64) -> f64 {
    let x2 = x * x;
    let y = 1.0 - x;
    x2 * x2 * x * y * y
}

/// `a(x) = −20x⁵ + 20x⁴`; `a(x) < 2` on `[0, 1]` forces `f″_α < 0`.
pub fn auxiliary(x: &Rational) -> Rational {
    let x4 = num_traits::pow(x.clone(), 4);
    integer(20) * &x4 - integer(20) * x4 * x
}

/// `a(4/5)`, the maximum of the auxiliary polynomial on `[0, 1]`.
pub fn auxiliary_max_check() -> Rational {
    auxiliary(&ratio(4, 5))
}

/// `U = (0,0)`, `V = (1/2,1/2)`, `W = (1,0)`: the graph of every `f_α` lies in
/// this triangle, tangent to `UV` at `U` and to `VW` at `W`.
pub fn standard_triangle() -> [[f64; 2]; 3] {
    [[0.0, 0.0], [0.5, 0.5], [1.0, 0.0]]
}
