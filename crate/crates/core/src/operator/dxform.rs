//! Conversion between theta-form and the monic d/dx form, and the formal
//! adjoint.

use num_traits::{One, Zero};

use crate::exact::poly::Poly;
use crate::exact::ratfunc::RatFunc;
use crate::exact::scalar::{binomial_rational, Rational, Scalar};
use crate::{QPoly, QRatFunc};

use super::{theta_power_expand, OpResult, OperatorError, ThetaOperator};

/// Monic form `y^(N) + a_{N-1} y^(N-1) + ... + a_0 y` with `a_i` rational
/// functions of x.
#[derive(Clone, Debug, PartialEq)]
pub struct DxForm {
    coeffs: Vec<QRatFunc>,
}

impl DxForm {
    pub fn new(coeffs: Vec<QRatFunc>) -> Self {
        assert!(!coeffs.is_empty());
        DxForm { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// a_i for i < order (the D^order coefficient is 1).
    pub fn coeff(&self, i: usize) -> &QRatFunc {
        &self.coeffs[i]
    }
}

/// The polynomials q_0..q_N with `L = sum_j x^j q_j(x) D^j` (so the leading
/// D^N coefficient is `x^N q_N(x)` and the singular points are the roots of
/// `q_N` together with 0 and infinity).
pub fn theta_leading_polys(op: &ThetaOperator) -> Vec<QPoly> {
    let n = op.order();
    let mut q = vec![QPoly::zero_poly(); n + 1];
    for (i, p) in op.theta_polys().iter().enumerate() {
        for (k, coeff) in p.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (j, s) in theta_power_expand(k) {
                q[j] = &q[j] + &QPoly::monomial(coeff * &s, i);
            }
        }
    }
    q
}

/// Monic d/dx form over Q(x); errors when the expanded leading coefficient
/// vanishes identically.
pub fn theta_to_dx(op: &ThetaOperator) -> OpResult<DxForm> {
    let n = op.order();
    let q = theta_leading_polys(op);
    if q[n].is_zero_poly() {
        return Err(OperatorError::DegenerateLeading(n));
    }
    let lead = RatFunc::from_poly(q[n].clone().shift_up(n));
    let coeffs = (0..n)
        .map(|j| &RatFunc::from_poly(q[j].clone().shift_up(j)) / &lead)
        .collect();
    Ok(DxForm::new(coeffs))
}

/// Formal adjoint `L*(y) = y^(N) - (a_{N-1} y)^(N-1) + ... + (-1)^N a_0 y`,
/// renormalized to monic form.
pub fn adjoint(dx: &DxForm) -> DxForm {
    let n = dx.order();
    // (-1)^i D^i (a_i y) contributes (-1)^i C(i,j) a_i^(i-j) to D^j.
    let mut out = vec![QRatFunc::constant(Rational::zero()); n];
    let one = QRatFunc::constant(Rational::one());
    for i in 0..=n {
        let a_i = if i == n { &one } else { dx.coeff(i) };
        let mut deriv = a_i.clone();
        let sign_i = if i % 2 == 0 { 1 } else { -1 };
        for j in (0..=i).rev() {
            // deriv = a_i^(i-j) once we reach j
            if j < n {
                let binom = binomial_rational(&Rational::from_int(i as i64), i - j)
                    * Rational::from_int(sign_i);
                let term = &out[j] + &deriv.scale(&binom);
                out[j] = term;
            }
            if j > 0 {
                deriv = deriv.derivative();
            }
        }
    }
    // Leading D^N coefficient is (-1)^N; divide through.
    if n % 2 == 1 {
        for c in &mut out {
            *c = -&*c;
        }
    }
    DxForm::new(out)
}

pub(crate) fn rf_const(n: i64, d: i64) -> QRatFunc {
    RatFunc::constant(Rational::new(n.into(), d.into()))
}
