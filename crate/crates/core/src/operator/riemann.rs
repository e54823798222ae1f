//! Riemann symbols: the table of singular points and exponent multisets.
//!
//! Exponents at 0 are the roots of P_0, at infinity the roots of P_r(-th).
//! At a finite singular point x0 (a root of the leading polynomial q_N) the
//! indicial coefficients are the exact limits `c_i = lim (x-x0)^(N-i) a_i(x)`
//! read off the factored leading polynomial, and the indicial polynomial is
//! `rho(rho-1)..(rho-N+1) + sum_i c_i rho(rho-1)..(rho-i+1)`. Rational roots
//! are found by exact search; residual quadratics are solved in a quadratic
//! extension; anything deeper is reported symbolically.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::poly::{quadratic_roots, rational_roots, Poly};
use crate::exact::scalar::{rat_pow, QuadExt, Rational, Scalar};
use crate::QPoly;

use super::dxform::theta_leading_polys;
use super::{OpResult, OperatorError, ThetaOperator};

#[derive(Clone, Debug, PartialEq)]
pub enum SingularPoint {
    Zero,
    Infinity,
    Rat(Rational),
    Quad(QuadExt),
}

impl SingularPoint {
    fn sort_key(&self) -> (u8, f64, f64) {
        use num_traits::ToPrimitive;
        match self {
            SingularPoint::Zero => (0, 0.0, 0.0),
            SingularPoint::Rat(r) => (1, r.to_f64().unwrap_or(f64::MAX), 0.0),
            SingularPoint::Quad(q) => {
                let (re, im) = q.approx();
                (1, re, im)
            }
            SingularPoint::Infinity => (2, 0.0, 0.0),
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularPoint::Zero => write!(f, "0"),
            SingularPoint::Infinity => write!(f, "infinity"),
            SingularPoint::Rat(r) => write!(f, "{r}"),
            SingularPoint::Quad(q) => {
                let (re, im) = q.approx();
                if im == 0.0 {
                    write!(f, "{re:.6} [= {q}]")
                } else {
                    write!(f, "{re:.6}{im:+.6}i [= {q}]")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Rat(Rational),
    Quad(QuadExt),
    /// Residual indicial factor that resists rational/quadratic solving;
    /// carries its degree (the number of exponents it accounts for).
    Unsolved { factor: String, degree: usize },
}

impl Exponent {
    pub fn count(&self) -> usize {
        match self {
            Exponent::Unsolved { degree, .. } => *degree,
            _ => 1,
        }
    }

    fn sort_key(&self) -> (u8, f64, f64) {
        use num_traits::ToPrimitive;
        match self {
            Exponent::Rat(r) => (0, r.to_f64().unwrap_or(f64::MAX), 0.0),
            Exponent::Quad(q) => {
                let (re, im) = q.approx();
                (1, re, im)
            }
            Exponent::Unsolved { .. } => (2, 0.0, 0.0),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rat(r) => write!(f, "{r}"),
            Exponent::Quad(q) => write!(f, "{q}"),
            Exponent::Unsolved { factor, .. } => write!(f, "root of {factor}"),
        }
    }
}

/// The full table; exactly one entry for 0 and one for infinity, the finite
/// singular points in between, each with an exponent multiset of size equal
/// to the operator order.
#[derive(Clone, Debug, PartialEq)]
pub struct RiemannSymbol {
    pub entries: Vec<(SingularPoint, Vec<Exponent>)>,
}

impl RiemannSymbol {
    pub fn exponents_at(&self, point: &SingularPoint) -> Option<&[Exponent]> {
        self.entries
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, e)| e.as_slice())
    }

    /// Rational exponents at a point, when they all are.
    pub fn rational_exponents_at(&self, point: &SingularPoint) -> Option<Vec<Rational>> {
        let exps = self.exponents_at(point)?;
        exps.iter()
            .map(|e| match e {
                Exponent::Rat(r) => Some(r.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for RiemannSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (point, exps) in &self.entries {
            let list = exps
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "{point}: {list}")?;
        }
        Ok(())
    }
}

/// Computes the Riemann symbol of the operator.
pub fn riemann_symbol(op: &ThetaOperator) -> OpResult<RiemannSymbol> {
    let n = op.order();
    let q = theta_leading_polys(op);

    let p0 = op.theta_poly(0);
    if p0.degree() != Some(n) {
        return Err(OperatorError::IrregularSingularity("0".into()));
    }
    let exps0 = poly_exponents(&p0);

    let pr = op.theta_poly(op.degree());
    if pr.degree() != Some(n) {
        return Err(OperatorError::IrregularSingularity("infinity".into()));
    }
    let exps_inf = poly_exponents(&pr.compose_neg());

    let mut entries = vec![(SingularPoint::Zero, exps0)];

    let (mut points, residual) = rational_roots(&q[n]);
    points.dedup();
    for x0 in points {
        debug_assert!(!x0.is_zero(), "q_N(0) != 0 for a theta-form of full order");
        let exps = indicial_exponents_rational(&q, n, &x0)?;
        entries.push((SingularPoint::Rat(x0), exps));
    }
    match residual.degree() {
        None | Some(0) => {}
        Some(2) => {
            let (r1, r2) = quadratic_roots(&residual)
                .expect("rational roots already extracted, residual is irreducible");
            for x0 in [r1, r2] {
                let exps = indicial_exponents_quad(&q, n, &x0)?;
                entries.push((SingularPoint::Quad(x0), exps));
            }
        }
        Some(_) => {
            return Err(OperatorError::HighDegreeDiscriminant(residual.to_string()));
        }
    }

    entries.push((SingularPoint::Infinity, exps_inf));
    entries.sort_by(|(p1, _), (p2, _)| {
        p1.sort_key()
            .partial_cmp(&p2.sort_key())
            .unwrap_or(Ordering::Equal)
    });
    Ok(RiemannSymbol { entries })
}

/// Roots of a rational polynomial as an exponent multiset.
fn poly_exponents(p: &QPoly) -> Vec<Exponent> {
    let (roots, residual) = rational_roots(p);
    let mut exps: Vec<Exponent> = roots.into_iter().map(Exponent::Rat).collect();
    match residual.degree() {
        None | Some(0) => {}
        Some(2) => {
            let (r1, r2) = quadratic_roots(&residual)
                .expect("irreducible quadratic residual");
            exps.push(Exponent::Quad(r1));
            exps.push(Exponent::Quad(r2));
        }
        Some(d) => exps.push(Exponent::Unsolved {
            factor: residual.format_with_var("rho"),
            degree: d,
        }),
    }
    sort_exponents(&mut exps);
    exps
}

fn sort_exponents(exps: &mut [Exponent]) {
    exps.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .unwrap_or(Ordering::Equal)
    });
}

/// Multiplicity of (x - x0) in p, together with the deflated polynomial.
fn strip_root<T: Scalar>(p: &Poly<T>, x0: &T) -> (usize, Poly<T>) {
    let mut mult = 0;
    let mut cur = p.clone();
    while !cur.is_zero_poly() && cur.eval(x0).is_zero() {
        let (q, _) = cur.div_linear(x0);
        cur = q;
        mult += 1;
    }
    (mult, cur)
}

/// Falling factorial rho (rho-1) ... (rho-i+1) as a polynomial.
fn falling_poly<T: Scalar>(i: usize) -> Poly<T> {
    let mut acc = Poly::constant(T::one());
    for t in 0..i {
        acc = &acc * &Poly::new(vec![-T::from_int(t as i64), T::one()]);
    }
    acc
}

fn indicial_exponents_rational(
    q: &[QPoly],
    n: usize,
    x0: &Rational,
) -> OpResult<Vec<Exponent>> {
    let (m, qn_tilde) = strip_root(&q[n], x0);
    let qn_val = qn_tilde.eval(x0);
    let mut chi = falling_poly::<Rational>(n);
    for (i, qi) in q.iter().enumerate().take(n) {
        if qi.is_zero_poly() {
            continue;
        }
        let (k, qi_tilde) = strip_root(qi, x0);
        let e = (n - i) as i64 + k as i64 - m as i64;
        if e < 0 {
            return Err(OperatorError::IrregularSingularity(x0.to_string()));
        }
        if e > 0 {
            continue;
        }
        let c = rat_pow(x0, i as i64 - n as i64) * qi_tilde.eval(x0) / &qn_val;
        chi = &chi + &falling_poly::<Rational>(i).scale(&c);
    }
    Ok(poly_exponents(&chi))
}

fn indicial_exponents_quad(q: &[QPoly], n: usize, x0: &QuadExt) -> OpResult<Vec<Exponent>> {
    let modulus = x0.modulus.clone();
    let lift =
        |p: &QPoly| -> Poly<QuadExt> { p.map(|c| QuadExt::constant(c.clone(), modulus.clone())) };
    let (m, qn_tilde) = strip_root(&lift(&q[n]), x0);
    let qn_val = qn_tilde.eval(x0);
    let mut chi = falling_poly::<QuadExt>(n);
    for (i, qi) in q.iter().enumerate().take(n) {
        if qi.is_zero_poly() {
            continue;
        }
        let (k, qi_tilde) = strip_root(&lift(qi), x0);
        let e = (n - i) as i64 + k as i64 - m as i64;
        if e < 0 {
            return Err(OperatorError::IrregularSingularity(format!("{x0}")));
        }
        if e > 0 {
            continue;
        }
        // x0^(i-n) via inversion
        let mut pw = QuadExt::constant(Rational::one(), modulus.clone());
        for _ in 0..(n - i) {
            pw = pw * x0.clone();
        }
        let c = qi_tilde.eval(x0) / (pw * qn_val.clone());
        chi = &chi + &falling_poly::<QuadExt>(i).scale(&c);
    }
    Ok(quad_poly_exponents(&chi))
}

/// Rational roots of a polynomial with quadratic-extension coefficients: a
/// rational rho is a root iff it kills both the rational and the irrational
/// part, i.e. is a rational root of their gcd.
fn quad_poly_exponents(chi: &Poly<QuadExt>) -> Vec<Exponent> {
    let part_a = QPoly::new(chi.coeffs().iter().map(|c| c.a.clone()).collect());
    let part_b = QPoly::new(chi.coeffs().iter().map(|c| c.b.clone()).collect());
    let g = if part_b.is_zero_poly() {
        part_a
    } else {
        part_a.gcd(&part_b)
    };
    let (candidates, _) = rational_roots(&g);
    let mut exps = Vec::new();
    let mut cur = chi.clone();
    let modulus = chi
        .coeffs()
        .iter()
        .find(|c| !c.b.is_zero())
        .map(|c| c.modulus.clone());
    for r in {
        let mut c = candidates;
        c.dedup();
        c
    } {
        let rq = QuadExt::constant(
            r.clone(),
            modulus.clone().unwrap_or((Rational::zero(), Rational::one())),
        );
        loop {
            if cur.is_zero_poly() || !cur.eval(&rq).is_zero() {
                break;
            }
            let (q2, _) = cur.div_linear(&rq);
            cur = q2;
            exps.push(Exponent::Rat(r.clone()));
        }
    }
    match cur.degree() {
        None | Some(0) => {}
        Some(d) => exps.push(Exponent::Unsolved {
            factor: cur.format_with_var("rho"),
            degree: d,
        }),
    }
    sort_exponents(&mut exps);
    exps
}
