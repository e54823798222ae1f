//! Differential operators in theta-form `L = P_0(th) + x P_1(th) + ... +
//! x^r P_r(th)` with exact rational polynomial coefficients, their monic
//! d/dx form, the adjoint, the Calabi-Yau quantities, and Riemann symbols.

mod cycond;
mod dxform;
mod parse;
mod riemann;

pub use cycond::{
    discriminant_poly,
    cy_numerator_coeffs, cy_quantity_q, cy_quantity_w, printed_q_eval, self_adjoint_witness,
};
pub use dxform::{adjoint, theta_to_dx, DxForm};
pub use parse::parse_operator;
pub use riemann::{riemann_symbol, Exponent, RiemannSymbol, SingularPoint};

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::poly::Poly;
use crate::exact::scalar::{Rational, Scalar};
use crate::exact::series::PowerSeries;
use crate::{QPoly, QSeries};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OperatorError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression does not normalize to a differential operator: {0}")]
    NotAnOperator(String),
    #[error("operator has order {found}, expected {expected}")]
    WrongOrder { expected: usize, found: usize },
    #[error("operator is not in the required shape: {0}")]
    WrongShape(String),
    #[error("leading coefficient degenerates; true order drops below {0}")]
    DegenerateLeading(usize),
    #[error("irregular singularity at {0}: an indicial limit diverges")]
    IrregularSingularity(String),
    #[error("discriminant factor of degree > 2: {0}")]
    HighDegreeDiscriminant(String),
}

pub type OpResult<T> = Result<T, OperatorError>;

/// Stirling numbers of the second kind as theta-expansion coefficients:
/// `th^k = sum_j S(k,j) x^j D^j`. Returns the nonzero `(j, S(k,j))` pairs.
pub fn theta_power_expand(k: usize) -> Vec<(usize, Rational)> {
    let mut row: Vec<Rational> = vec![Rational::one()];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); row.len() + 1];
        for (j, s) in row.iter().enumerate() {
            next[j] += s * Rational::from_int(j as i64);
            next[j + 1] += s;
        }
        row = next;
    }
    row.into_iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .collect()
}

/// An order-N, degree-r operator `sum_i x^i P_i(theta)` in canonical trimmed
/// form: `P_r` nonzero, every `P_i` stored exactly.
#[derive(Clone, PartialEq)]
pub struct ThetaOperator {
    polys: Vec<QPoly>,
}

impl ThetaOperator {
    pub fn new(polys: Vec<QPoly>) -> OpResult<Self> {
        let raw = RawThetaOp { polys };
        raw.into_operator()
    }

    /// theta^k.
    pub fn theta_power(k: usize) -> Self {
        ThetaOperator {
            polys: vec![QPoly::monomial(Rational::one(), k)],
        }
    }

    /// Largest power of theta across the coefficients.
    pub fn order(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest i with P_i nonzero (the length of the coefficient recursion).
    pub fn degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// P_i(theta); zero polynomial beyond the degree.
    pub fn theta_poly(&self, i: usize) -> QPoly {
        self.polys.get(i).cloned().unwrap_or_else(QPoly::zero_poly)
    }

    pub fn theta_polys(&self) -> &[QPoly] {
        &self.polys
    }

    pub fn is_mum(&self) -> bool {
        self.order() == 4 && self.theta_poly(0) == QPoly::monomial(Rational::one(), 4)
    }

    /// Applies the operator to a truncated series (exact; the truncation
    /// order is preserved).
    pub fn apply_series(&self, s: &QSeries) -> QSeries {
        let n = s.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, p) in self.polys.iter().enumerate() {
            if p.is_zero_poly() {
                continue;
            }
            for m in i..=n {
                out[m] += p.eval(&Rational::from_int((m - i) as i64)) * s.coeff(m - i);
            }
        }
        PowerSeries::new(out)
    }

    pub fn neg(&self) -> Self {
        ThetaOperator {
            polys: self.polys.iter().map(|p| -p).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> OpResult<Self> {
        self.raw().add(&rhs.raw()).into_operator()
    }

    pub fn sub(&self, rhs: &Self) -> OpResult<Self> {
        self.raw().add(&rhs.raw().neg()).into_operator()
    }

    /// Operator composition (noncommutative): `x^i P(th) * x^j Q(th) =
    /// x^(i+j) P(th + j) Q(th)`.
    pub fn compose(&self, rhs: &Self) -> OpResult<Self> {
        self.raw().mul(&rhs.raw()).into_operator()
    }

    /// Left-multiplies by the polynomial `g(x)`.
    pub fn mul_x_poly(&self, g: &QPoly) -> OpResult<Self> {
        let mut polys = vec![QPoly::zero_poly(); self.polys.len() + g.coeffs().len()];
        for (j, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.polys.iter().enumerate() {
                polys[i + j] = &polys[i + j] + &p.scale(c);
            }
        }
        RawThetaOp { polys }.into_operator()
    }

    fn raw(&self) -> RawThetaOp {
        RawThetaOp {
            polys: self.polys.clone(),
        }
    }

    /// Canonical text form; grouped by x-power, lowest first, `T` for theta.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.polys.iter().enumerate() {
            if p.is_zero_poly() {
                continue;
            }
            let body = p.format_with_var("T");
            let (sign, mag) = match body.strip_prefix('-') {
                Some(rest) if !body.contains(" + ") && !body.contains(" - ") => {
                    ("-", rest.to_string())
                }
                _ => ("+", body.clone()),
            };
            let needs_parens = mag.contains(" + ") || mag.contains(" - ");
            let term = match (i, needs_parens) {
                (0, true) => format!("({mag})"),
                (0, false) => mag,
                (1, _) => format!("x*({mag})"),
                (_, _) => format!("x^{i}*({mag})"),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThetaOperator[{}]", self.format())
    }
}

/// Unnormalized element of Q[x]<theta> (theta x = x (theta + 1)); the
/// parser's working value, not yet subject to the order >= 1 invariant.
#[derive(Clone, PartialEq)]
pub(crate) struct RawThetaOp {
    pub polys: Vec<QPoly>,
}

impl RawThetaOp {
    pub fn constant(c: Rational) -> Self {
        RawThetaOp {
            polys: vec![QPoly::constant(c)],
        }
    }

    pub fn theta() -> Self {
        RawThetaOp {
            polys: vec![QPoly::x()],
        }
    }

    pub fn x() -> Self {
        RawThetaOp {
            polys: vec![QPoly::zero_poly(), QPoly::constant(Rational::one())],
        }
    }

    pub fn neg(&self) -> Self {
        RawThetaOp {
            polys: self.polys.iter().map(|p| -p).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.polys.len().max(rhs.polys.len());
        let zero = QPoly::zero_poly();
        RawThetaOp {
            polys: (0..n)
                .map(|i| {
                    let a = self.polys.get(i).unwrap_or(&zero);
                    let b = rhs.polys.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut polys =
            vec![QPoly::zero_poly(); self.polys.len() + rhs.polys.len()];
        for (j, q) in rhs.polys.iter().enumerate() {
            if q.is_zero_poly() {
                continue;
            }
            let shift = Rational::from_int(j as i64);
            for (i, p) in self.polys.iter().enumerate() {
                if p.is_zero_poly() {
                    continue;
                }
                let shifted = p.compose_shift(&shift);
                polys[i + j] = &polys[i + j] + &(&shifted * q);
            }
        }
        RawThetaOp { polys }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = RawThetaOp::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn into_operator(mut self) -> OpResult<ThetaOperator> {
        while self.polys.last().is_some_and(Poly::is_zero_poly) {
            self.polys.pop();
        }
        if self.polys.is_empty() {
            return Err(OperatorError::NotAnOperator("the zero operator".into()));
        }
        let order = self
            .polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        if order == 0 {
            return Err(OperatorError::NotAnOperator(
                "a multiplication operator with no theta part".into(),
            ));
        }
        Ok(ThetaOperator { polys: self.polys })
    }
}

/// Sign convention for the two-term degree-two family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// theta^4 + x(a th^4 + b th^3 + c th^2 + d th + e) + f x^2 (th+al)...
    Plus,
    /// theta^4 - x(a th^4 + ...) + f x^2 (...), the convention of the
    /// catalog tables.
    Minus,
}

/// Parameters of the degree-two family; the classification and catalog
/// currency.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeTwoParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    pub sign_convention: SignConvention,
}

impl DegreeTwoParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
        f: Rational,
        exponents: [Rational; 4],
        sign_convention: SignConvention,
    ) -> Self {
        let [alpha, beta, gamma, delta] = exponents;
        DegreeTwoParams {
            a,
            b,
            c,
            d,
            e,
            f,
            alpha,
            beta,
            gamma,
            delta,
            sign_convention,
        }
    }

    pub fn exponents(&self) -> [Rational; 4] {
        [
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.delta.clone(),
        ]
    }

    /// Internal normal form: all classification predicates are stated in the
    /// plus convention; the minus convention (x -> -x) negates a..e.
    pub fn to_plus(&self) -> Self {
        match self.sign_convention {
            SignConvention::Plus => self.clone(),
            SignConvention::Minus => DegreeTwoParams {
                a: -self.a.clone(),
                b: -self.b.clone(),
                c: -self.c.clone(),
                d: -self.d.clone(),
                e: -self.e.clone(),
                f: self.f.clone(),
                alpha: self.alpha.clone(),
                beta: self.beta.clone(),
                gamma: self.gamma.clone(),
                delta: self.delta.clone(),
                sign_convention: SignConvention::Plus,
            },
        }
    }

    /// Builds the operator `th^4 +- x(a th^4 + ... + e) + f x^2
    /// (th+al)(th+be)(th+ga)(th+de)`.
    pub fn operator(&self) -> ThetaOperator {
        let p = self.to_plus();
        let p1 = QPoly::new(vec![
            p.e.clone(),
            p.d.clone(),
            p.c.clone(),
            p.b.clone(),
            p.a.clone(),
        ]);
        let mut p2 = QPoly::constant(p.f.clone());
        for ex in p.exponents() {
            p2 = &p2 * &QPoly::new(vec![ex, Rational::one()]);
        }
        ThetaOperator::new(vec![QPoly::monomial(Rational::one(), 4), p1, p2])
            .expect("degree-two family operator is well formed")
    }
}

/// Pairs the four infinity-exponents into two pairs with a common sum sigma.
///
/// Tries the three pairings in a fixed order and returns the first valid one
/// as `(sigma, alpha, beta)` with `alpha` from the first pair and `beta` from
/// the second; `None` when no pairing exists. When several pairings are
/// valid, sigma and Delta do not depend on the choice.
pub(crate) fn pair_exponents(exps: &[Rational; 4]) -> Option<(Rational, Rational, Rational)> {
    let pairings: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    for idx in pairings {
        let s1 = &exps[idx[0]] + &exps[idx[1]];
        let s2 = &exps[idx[2]] + &exps[idx[3]];
        if s1 == s2 {
            return Some((s1, exps[idx[0]].clone(), exps[idx[2]].clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, ratio};

    #[test]
    fn stirling_rows() {
        assert_eq!(theta_power_expand(0), vec![(0, rat(1))]);
        assert_eq!(theta_power_expand(2), vec![(1, rat(1)), (2, rat(1))]);
        // recurrence S(k,j) = j S(k-1,j) + S(k-1,j-1)
        assert_eq!(
            theta_power_expand(4),
            vec![(1, rat(1)), (2, rat(7)), (3, rat(6)), (4, rat(1))]
        );
    }

    #[test]
    fn theta_powers_act_diagonally() {
        // sum_j S(k,j) x^j D^j applied to x^n is n^k x^n
        for k in 0..=8usize {
            let expansion = theta_power_expand(k);
            for n in 0..=10i64 {
                let mut acc = rat(0);
                for (j, s) in &expansion {
                    // x^j D^j x^n = n(n-1)...(n-j+1) x^n
                    let mut fall = rat(1);
                    for t in 0..*j {
                        fall *= rat(n - t as i64);
                    }
                    acc += s * fall;
                }
                assert_eq!(acc, num_traits::pow::pow(rat(n), k));
            }
        }
    }

    #[test]
    fn operator_algebra_normalizes() {
        let t = ThetaOperator::theta_power(1);
        let t2 = t.compose(&t).unwrap();
        assert_eq!(t2, ThetaOperator::theta_power(2));
        // theta * x = x * (theta + 1)
        let x = RawThetaOp::x();
        let tx = RawThetaOp::theta().mul(&x);
        let expect = x.mul(&RawThetaOp {
            polys: vec![QPoly::new(vec![rat(1), rat(1)])],
        });
        assert_eq!(tx.polys.len(), expect.polys.len());
        for (a, b) in tx.polys.iter().zip(&expect.polys) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn apply_series_kills_solution() {
        // theta - x(4 theta + 2) annihilates sum C(2n,n) x^n
        let op = ThetaOperator::new(vec![
            QPoly::x(),
            QPoly::new(vec![rat(-2), rat(-4)]),
        ])
        .unwrap();
        let s = PowerSeries::new(vec![rat(1), rat(2), rat(6), rat(20), rat(70)]);
        assert!(op.apply_series(&s).is_zero_series());
    }

    #[test]
    fn degree_two_params_and_conventions() {
        let p = DegreeTwoParams::new(
            rat(112),
            rat(224),
            rat(172),
            rat(60),
            rat(8),
            rat(-2048),
            [ratio(1, 2), ratio(1, 2), ratio(3, 2), ratio(3, 2)],
            SignConvention::Minus,
        );
        let op = p.operator();
        assert_eq!(op.order(), 4);
        assert_eq!(op.degree(), 2);
        assert_eq!(op.theta_poly(1).coeff(0), rat(-8));
        let plus = p.to_plus();
        assert_eq!(plus.a, rat(-112));
        assert_eq!(plus.f, rat(-2048));
    }

    #[test]
    fn exponent_pairing() {
        let (sigma, ..) =
            pair_exponents(&[ratio(1, 2), ratio(1, 2), ratio(3, 2), ratio(3, 2)]).unwrap();
        assert_eq!(sigma, rat(2));
        assert!(pair_exponents(&[rat(1), rat(2), rat(3), rat(7)]).is_none());
    }
}
