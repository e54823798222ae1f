//! Series-level transforms (Hadamard product, Moebius pullback), the named
//! operator registry, operator fitting from series, and the identity checks
//! (twist, shift propositions, tilde Wronskians, the 2F1^2 theorem).

mod fit;
mod registry;

pub use fit::{fit_operator, FitResult};
pub use registry::{build_named, hyp4_data, registry_keys, tilde_mu_nu, NamedOperator};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::scalar::{ratio, Rational, Scalar};
use crate::exact::series::PowerSeries;
use crate::exact::ExactError;
use crate::frobenius::{frobenius_basis, holomorphic_solution, FrobeniusError};
use crate::operator::{OperatorError, ThetaOperator};
use crate::{QPoly, QSeries};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TransformsError {
    #[error("unknown registry name {0:?}")]
    UnknownName(String),
    #[error("unknown twist pair ({0:?}, {1:?}): need a bzb:* and a bzb3:* key")]
    UnknownPair(String, String),
    #[error("family {family} takes {expected} parameters, got {got}")]
    BadArity {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type TrResult<T> = Result<T, TransformsError>;

/// Coefficientwise product of two power series.
pub fn hadamard(s: &QSeries, t: &QSeries) -> QSeries {
    s.hadamard(t)
}

/// The Moebius pullback `Y(x) = 1/(1-Nx) * y(-x/(1-Nx))` that swaps the
/// singular point 1/N with infinity.
pub fn moebius_pullback(s: &QSeries, n: &Rational) -> QSeries {
    let order = s.order();
    // 1/(1-Nx) as a geometric series
    let mut geo: QSeries = PowerSeries::one(order);
    for k in 1..=order {
        let prev = geo.coeff(k - 1).clone();
        geo.set_coeff(k, prev * n.clone());
    }
    let inner = PowerSeries::x(order).mul(&geo).neg();
    s.compose(&inner).mul(&geo)
}

/// The closed tilde-operator formula: the Yifan Yang pullback of the
/// fifth-order hypergeometric operator with scale N, written in terms of
/// `mu = alpha_3 - 1/2` and `nu = alpha_4 - 1/2`. Its infinity exponents are
/// `1 +- (mu+nu)/2` and `1 +- (mu-nu)/2`.
pub fn tilde_operator(n: &Rational, mu: &Rational, nu: &Rational) -> ThetaOperator {
    let half = ratio(1, 2);
    let quarter = ratio(1, 4);
    let mu2 = mu * mu;
    let nu2 = nu * nu;
    // 2 (th+1/2)^4 + 1/2 (7/2 - mu^2 - nu^2) (th+1/2)^2 + 1/16 - 1/4 (mu^2+1/4)(nu^2+1/4)
    let shift = QPoly::new(vec![half, Rational::one()]);
    let shift2 = &shift * &shift;
    let shift4 = &shift2 * &shift2;
    let c2 = (ratio(7, 2) - &mu2 - &nu2) * ratio(1, 2);
    let c0 = ratio(1, 16) - (&mu2 + &quarter) * (&nu2 + &quarter) * quarter;
    let inner = &(&shift4.scale(&Rational::from_int(2)) + &shift2.scale(&c2))
        + &QPoly::constant(c0);
    let four_n = Rational::from_int(4) * n;
    let p1 = inner.scale(&-&four_n);
    let s = (mu + nu) * ratio(1, 2);
    let d = (mu - nu) * ratio(1, 2);
    let mut p2 = QPoly::constant(&four_n * &four_n);
    for e in [
        Rational::one() + &s,
        Rational::one() - &s,
        Rational::one() + &d,
        Rational::one() - &d,
    ] {
        p2 = &p2 * &QPoly::new(vec![e, Rational::one()]);
    }
    ThetaOperator::new(vec![QPoly::monomial(Rational::one(), 4), p1, p2])
        .expect("tilde operator")
}

/// Verifies the BZB/BZB' twist identity `Y0(-x/Q(x)) = Q(x) y0(x)^2` to
/// order 10, where `Q` is the discriminant of the second-order operator.
/// True exactly on the printed correspondence (a-delta, c-alpha, g-gamma,
/// d-epsilon, f-zeta, b-eta).
pub fn twist_check(bzb2: &str, bzb3: &str) -> TrResult<bool> {
    if !bzb2.starts_with("bzb:") || !bzb3.starts_with("bzb3:") {
        return Err(TransformsError::UnknownPair(bzb2.into(), bzb3.into()));
    }
    let order = 10;
    let second = build_named(bzb2)?;
    let third = build_named(bzb3)?;
    // discriminant 1 - a x + c x^2 read off the theta-leading polynomial
    let q_poly = crate::operator::discriminant_poly(&second.op);
    let mut q_series = PowerSeries::zero_series(order);
    for (k, c) in q_poly.coeffs().iter().enumerate() {
        q_series.set_coeff(k, c.clone());
    }
    let y0 = holomorphic_solution(&second.op, order)?;
    let big_y0 = holomorphic_solution(&third.op, order)?;
    let inner = PowerSeries::x(order).div(&q_series)?.neg();
    let lhs = big_y0.compose(&inner);
    let rhs = q_series.mul(&y0.mul(&y0));
    Ok(lhs == rhs)
}

/// The five operator families of the small components (sigma = 0, 1, 2, 3, 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallFamily {
    P0,
    P1,
    P2,
    P3,
    P4,
}

/// Builds a member of one of the small-component families.
///
/// Arities: `P0(a, e, f, A)`, `P1(a, d, e, alpha, beta)`, `P2(a, d, e, A)`,
/// `P3(c, d, e, alpha, beta)`, `P4(a, e, f, A)`. The degree-two contract is
/// enforced: a vanishing x^2 part is rejected.
pub fn small_family(which: SmallFamily, params: &[Rational]) -> TrResult<ThetaOperator> {
    let op = small_family_raw(which, params)?;
    if op.degree() < 2 {
        return Err(TransformsError::DegenerateParams(format!(
            "{which:?} member degenerates to degree {}",
            op.degree()
        )));
    }
    Ok(op)
}

fn small_family_raw(which: SmallFamily, params: &[Rational]) -> TrResult<ThetaOperator> {
    let arity = match which {
        SmallFamily::P0 | SmallFamily::P2 | SmallFamily::P4 => 4,
        SmallFamily::P1 | SmallFamily::P3 => 5,
    };
    if params.len() != arity {
        return Err(TransformsError::BadArity {
            family: match which {
                SmallFamily::P0 => "P0",
                SmallFamily::P1 => "P1",
                SmallFamily::P2 => "P2",
                SmallFamily::P3 => "P3",
                SmallFamily::P4 => "P4",
            },
            expected: arity,
            got: params.len(),
        });
    }
    let theta4 = QPoly::monomial(Rational::one(), 4);
    let build = |p1: QPoly, p2: QPoly| -> TrResult<ThetaOperator> {
        Ok(ThetaOperator::new(vec![theta4.clone(), p1, p2])?)
    };
    match which {
        SmallFamily::P0 => {
            // theta^4 + x (a th^4 + e) + f x^2 (th^4 - A^2)
            let (a, e, f, big_a) = (&params[0], &params[1], &params[2], &params[3]);
            let p1 = QPoly::new(vec![
                e.clone(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                a.clone(),
            ]);
            let p2 = &QPoly::monomial(f.clone(), 4)
                + &QPoly::constant(-(big_a * big_a) * f);
            build(p1, p2)
        }
        SmallFamily::P2 => {
            // theta^4 + x (a th^4 + d th^3 + 3/2 d th^2 + d th + e)
            //   + d(4a-d)/16 x^2 ((th+1)^4 - (A-1)^2)
            let (a, d, e, big_a) = (&params[0], &params[1], &params[2], &params[3]);
            let p1 = QPoly::new(vec![
                e.clone(),
                d.clone(),
                d * ratio(3, 2),
                d.clone(),
                a.clone(),
            ]);
            let f = d * (Rational::from_int(4) * a - d) * ratio(1, 16);
            let shifted = QPoly::new(vec![Rational::one(), Rational::one()]).pow(4);
            let am1 = big_a - Rational::one();
            let p2 = (&shifted + &QPoly::constant(-(&am1 * &am1))).scale(&f);
            build(p1, p2)
        }
        SmallFamily::P4 => {
            // theta^4 + x (a th^4 + 4a th^3 + 6a th^2 + 4a th + e)
            //   + f x^2 (th^4 + 8 th^3 + 24 th^2 + 32 th + A(8-A))
            let (a, e, f, big_a) = (&params[0], &params[1], &params[2], &params[3]);
            let p1 = QPoly::new(vec![
                e.clone(),
                a * Rational::from_int(4),
                a * Rational::from_int(6),
                a * Rational::from_int(4),
                a.clone(),
            ]);
            let p2 = QPoly::new(vec![
                big_a * (Rational::from_int(8) - big_a),
                Rational::from_int(32),
                Rational::from_int(24),
                Rational::from_int(8),
                Rational::one(),
            ])
            .scale(f);
            build(p1, p2)
        }
        SmallFamily::P1 => {
            // sigma = 1 family with Delta = alpha^2 + beta^2 - alpha - beta
            let (a, d, e, al, be) =
                (&params[0], &params[1], &params[2], &params[3], &params[4]);
            let delta = al * al + be * be - al - be;
            if delta.is_zero() {
                return Err(TransformsError::DegenerateParams("Delta = 0 in P1".into()));
            }
            let b = -(Rational::from_int(2) * d) / &delta;
            let c = d * (&delta - Rational::one()) / &delta;
            let p1 = QPoly::new(vec![e.clone(), d.clone(), c, b, a.clone()]);
            let f = -(d * (d + a * &delta)) / (&delta * &delta);
            let mut p2 = QPoly::constant(f);
            for ex in [
                al.clone(),
                be.clone(),
                Rational::one() - al,
                Rational::one() - be,
            ] {
                p2 = &p2 * &QPoly::new(vec![ex, Rational::one()]);
            }
            build(p1, p2)
        }
        SmallFamily::P3 => {
            // sigma = 3 family with Delta = alpha^2 + beta^2 - 3 alpha - 3 beta
            let (c, d, e, al, be) =
                (&params[0], &params[1], &params[2], &params[3], &params[4]);
            let delta = al * al + be * be - Rational::from_int(3) * (al + be);
            let dpl6 = &delta + Rational::from_int(6);
            if dpl6.is_zero() {
                return Err(TransformsError::DegenerateParams("Delta = -6 in P3".into()));
            }
            let a = ((&delta + Rational::from_int(8)) * c
                - (&delta + Rational::from_int(9)) * d)
                / (Rational::from_int(2) * &dpl6);
            let f = (Rational::from_int(2) * c - Rational::from_int(3) * d)
                * ((&delta + Rational::from_int(4)) * c - (&delta + Rational::from_int(3)) * d)
                / (Rational::from_int(2) * &dpl6 * &dpl6);
            let b = Rational::from_int(2) * (c - d);
            let p1 = QPoly::new(vec![e.clone(), d.clone(), c.clone(), b, a]);
            let mut p2 = QPoly::constant(f);
            for ex in [
                al.clone(),
                be.clone(),
                Rational::from_int(3) - al,
                Rational::from_int(3) - be,
            ] {
                p2 = &p2 * &QPoly::new(vec![ex, Rational::one()]);
            }
            build(p1, p2)
        }
    }
}

/// Verifies the shift proposition between the sigma = 0, 2, 4 families to
/// series order 10: `y` solves `P2(a,d,e,A)` implies `(1+dx/4) y` solves
/// `P0(a, e-d/4, (4a-d)d/16, A-1)` and `(1+(4a-d)x/4)^(-1) y` solves
/// `P4(a, e+(4a-d)/4, (4a-d)d/16, A+3)`: the P2 exponents 1 +- s, 1 +- is
/// (s^2 = A-1) shift to 2 +- s, 2 +- is, and the P4 parameter satisfies
/// A4 - 4 = s^2.
pub fn shift_equivalence_check(
    a: &Rational,
    d: &Rational,
    e: &Rational,
    big_a: &Rational,
) -> TrResult<bool> {
    let order = 10;
    let p2 = small_family_raw(SmallFamily::P2, &[a.clone(), d.clone(), e.clone(), big_a.clone()])?;
    let y = holomorphic_solution(&p2, order)?;
    let four = Rational::from_int(4);
    let f_shift = (&four * a - d) * d / Rational::from_int(16);

    let quarter = ratio(1, 4);
    let mut pre0 = PowerSeries::one(order);
    pre0.set_coeff(1, d * &quarter);
    let z0 = pre0.mul(&y);
    let p0 = small_family_raw(
        SmallFamily::P0,
        &[
            a.clone(),
            e - d * &quarter,
            f_shift.clone(),
            big_a - Rational::one(),
        ],
    )?;
    if !p0.apply_series(&z0).is_zero_series() {
        return Ok(false);
    }

    let mut pre4 = PowerSeries::one(order);
    pre4.set_coeff(1, (&four * a - d) * &quarter);
    let z4 = y.div(&pre4)?;
    let p4 = small_family_raw(
        SmallFamily::P4,
        &[
            a.clone(),
            e + (&four * a - d) * &quarter,
            f_shift,
            big_a + Rational::from_int(3),
        ],
    )?;
    Ok(p4.apply_series(&z4).is_zero_series())
}

/// Verifies the sigma = 1 / sigma = 3 shift proposition to order 10:
/// `y` solves `P1(a,d,e,alpha,beta)` implies `(Delta - (d + a Delta) x) y`
/// solves `P3(d(Delta-1)/Delta, d, e, alpha+1, beta+1)`.
pub fn shift_equivalence_check_p1p3(
    a: &Rational,
    d: &Rational,
    e: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> TrResult<bool> {
    let order = 10;
    let delta = alpha * alpha + beta * beta - alpha - beta;
    if delta.is_zero() {
        return Err(TransformsError::DegenerateParams("Delta = 0".into()));
    }
    let p1 = small_family_raw(
        SmallFamily::P1,
        &[a.clone(), d.clone(), e.clone(), alpha.clone(), beta.clone()],
    )?;
    let y = holomorphic_solution(&p1, order)?;
    let mut pre = PowerSeries::zero_series(order);
    pre.set_coeff(0, delta.clone());
    pre.set_coeff(1, -(d + a * &delta));
    let z = pre.mul(&y);
    let c3 = d * (&delta - Rational::one()) / &delta;
    let p3 = small_family_raw(
        SmallFamily::P3,
        &[
            c3,
            d.clone(),
            e.clone(),
            alpha + Rational::one(),
            beta + Rational::one(),
        ],
    )?;
    // P3 solutions are normalized with constant term 1; rescale.
    let z_normalized = z.scale(&delta.recip());
    Ok(p3.apply_series(&z_normalized).is_zero_series())
}

/// The miscellaneous third-order family
/// `theta^3 - x(2th+1)(th^2 + th - d^2/2 + k^2/2 + 1/2)
///  + x^2 (th+1-d)(th+1)(th+1+d)`.
pub fn misc_third_order(d: &Rational, k: &Rational) -> ThetaOperator {
    let half = ratio(1, 2);
    let c0 = &half * (k * k) - &half * (d * d) + &half;
    let quad = QPoly::new(vec![c0, Rational::one(), Rational::one()]);
    let p1 = -&(&QPoly::new(vec![Rational::one(), Rational::from_int(2)]) * &quad);
    let mut p2 = QPoly::constant(Rational::one());
    for ex in [
        Rational::one() - d,
        Rational::one(),
        Rational::one() + d,
    ] {
        p2 = &p2 * &QPoly::new(vec![ex, Rational::one()]);
    }
    ThetaOperator::new(vec![QPoly::monomial(Rational::one(), 3), p1, p2])
        .expect("misc third-order operator")
}

/// Verifies that `(1-x)^k 2F1((1-d+k)/2, (1+d+k)/2; 1; x)^2` is annihilated
/// by [`misc_third_order`]`(d, k)` to order 10.
pub fn misc_third_order_identity_check(d: &Rational, k: &Rational) -> bool {
    let order = 10;
    let op = misc_third_order(d, k);
    let sol = misc_third_order_solution(d, k, order);
    op.apply_series(&sol).is_zero_series()
}

/// The closed-form solution of the miscellaneous third-order family.
pub fn misc_third_order_solution(d: &Rational, k: &Rational, order: usize) -> QSeries {
    let half = ratio(1, 2);
    let a = (Rational::one() - d + k) * &half;
    let b = (Rational::one() + d + k) * &half;
    let f = PowerSeries::hyp2f1(&a, &b, &Rational::one(), order);
    let pre = PowerSeries::binomial_power(&Rational::from_int(-1), k, order);
    pre.mul(&f.mul(&f))
}

/// Wronskian check for a tilde case: the 2x2 Wronskian of (y0, y1) of the
/// tilde operator reduces to the pure series `f0^2 + f0 theta(f1) - f1
/// theta(f0)`; multiplied by `(1-4Nx)^(3/2)` it must be annihilated by the
/// fifth-order hypergeometric operator
/// `th^5 - 4Nx (th+a1)(th+a2)(th+1/2)(th+a3)(th+a4)` to order 8.
pub fn wronskian5_check(case: usize) -> TrResult<bool> {
    let (exps, n) = hyp4_data(case)?;
    wronskian5_check_scaled(case, &n, &n, &exps)
}

fn wronskian5_check_scaled(
    case: usize,
    n: &Rational,
    n5: &Rational,
    exps: &[Rational; 4],
) -> TrResult<bool> {
    let order = 8;
    let (_, mu, nu) = tilde_mu_nu(case)?;
    let tilde = tilde_operator(n, &mu, &nu);
    let basis = frobenius_basis(&tilde, order)?;
    let (f0, f1) = (basis.f(0), basis.f(1));
    let w = f0.mul(f0).add(&f0.mul(&f1.theta())).sub(&f1.mul(&f0.theta()));
    let four_n = Rational::from_int(4) * n;
    let s = w.mul(&PowerSeries::binomial_power(&-&four_n, &ratio(3, 2), order));
    let half = ratio(1, 2);
    let mut p1 = QPoly::constant(-(Rational::from_int(4) * n5));
    for e in [&exps[0], &exps[1], &half, &exps[2], &exps[3]] {
        p1 = &p1 * &QPoly::new(vec![e.clone(), Rational::one()]);
    }
    let hyp5 = ThetaOperator::new(vec![QPoly::monomial(Rational::one(), 5), p1])?;
    Ok(hyp5.apply_series(&s).is_zero_series())
}

/// Perturbation probe used in tests: the identity is N-rigid in the sense
/// that the fifth-order operator with the wrong scale fails to annihilate.
pub fn wronskian5_check_perturbed(case: usize, shift: i64) -> TrResult<bool> {
    let (exps, n) = hyp4_data(case)?;
    wronskian5_check_scaled(case, &n, &(&n + Rational::from_int(shift)), &exps)
}

/// The main family `L = theta^2 P theta^2 + theta Qp theta + R` expanded as
/// `P th^4 + 2 P' th^3 + (Qp + P'') th^2 + Qp' th + R` with `' = x d/dx`
/// acting on the x-polynomials; satisfies the Calabi-Yau condition by
/// construction.
pub fn main_family_build(p: &QPoly, qp: &QPoly, r: &QPoly) -> TrResult<ThetaOperator> {
    if p.coeff(0) != Rational::one() || !qp.coeff(0).is_zero() || !r.coeff(0).is_zero() {
        return Err(TransformsError::DegenerateParams(
            "main family needs P(0) = 1, Q(0) = R(0) = 0".into(),
        ));
    }
    let p_t = p.theta_action();
    let p_tt = p_t.theta_action();
    let qp_t = qp.theta_action();
    let coeffs_by_theta = [
        r.clone(),
        qp_t,
        qp + &p_tt,
        p_t.scale(&Rational::from_int(2)),
        p.clone(),
    ];
    let len = coeffs_by_theta
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
        + 1;
    let polys = (0..len)
        .map(|i| {
            QPoly::new(
                (0..5)
                    .map(|t| coeffs_by_theta[t].coeff(i))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Ok(ThetaOperator::new(polys)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use crate::frobenius::{frobenius_basis, instanton_report, q_coordinate, yukawa_coupling};
    use crate::operator::{cy_quantity_q, riemann_symbol, SingularPoint};
    use num_traits::{One, Zero};

    #[test]
    fn registry_heads_reproduce() {
        for key in registry_keys() {
            let entry = build_named(&key).unwrap();
            if let Some(head) = &entry.solution_head {
                let sol = holomorphic_solution(&entry.op, head.order()).unwrap();
                assert_eq!(&sol, head, "solution head mismatch for {key}");
            }
        }
    }

    #[test]
    fn unknown_name_is_reported() {
        assert!(matches!(
            build_named("nonsense"),
            Err(TransformsError::UnknownName(_))
        ));
    }

    #[test]
    fn hadamard_examples() {
        let i_head = build_named("I").unwrap().solution_head.unwrap();
        let a_head = build_named("A").unwrap().solution_head.unwrap();
        assert_eq!(hadamard(&i_head, &i_head), a_head);

        // A-head * b-head = head of operator 2.5
        let b_head = build_named("bzb:b").unwrap().solution_head.unwrap();
        let prod = hadamard(&a_head, &b_head);
        let op25 = crate::operator::parse_operator(
            "T^4 - 4*x*(2*T+1)^2*(11*T^2+11*T+3) - 16*x^2*(2*T+1)^2*(2*T+3)^2",
        )
        .unwrap();
        let sol = holomorphic_solution(&op25, 3).unwrap();
        assert_eq!(prod.coeffs()[..4], sol.coeffs()[..4]);
        assert_eq!(prod.coeff(2), &rat(36 * 19));
    }

    #[test]
    fn moebius_examples() {
        let a_sol = holomorphic_solution(&build_named("A").unwrap().op, 6).unwrap();
        let e_sol = holomorphic_solution(&build_named("mu(A)").unwrap().op, 6).unwrap();
        assert_eq!(moebius_pullback(&a_sol, &rat(16)), e_sol);

        let d_sol = holomorphic_solution(&build_named("D").unwrap().op, 6).unwrap();
        let j_sol = holomorphic_solution(&build_named("mu(D)").unwrap().op, 6).unwrap();
        assert_eq!(moebius_pullback(&d_sol, &rat(432)), j_sol);

        // constant 1 pulls back to the geometric series
        let one = PowerSeries::one(4);
        let geo = moebius_pullback(&one, &rat(3));
        assert_eq!(
            geo.coeffs(),
            &[rat(1), rat(3), rat(9), rat(27), rat(81)]
        );

        // the remaining mu-transform table rows
        for (src, dst, n) in [("B", "mu(B)", 27), ("C", "mu(C)", 64)] {
            let s = holomorphic_solution(&build_named(src).unwrap().op, 6).unwrap();
            let t = holomorphic_solution(&build_named(dst).unwrap().op, 6).unwrap();
            assert_eq!(moebius_pullback(&s, &rat(n)), t, "mu({src})");
        }
    }

    #[test]
    fn sym2_consistency() {
        for x in ["A", "B", "C", "D"] {
            let base = holomorphic_solution(&build_named(x).unwrap().op, 10).unwrap();
            let sq = base.mul(&base);
            let sym2 = build_named(&format!("sym2:{x}")).unwrap().op;
            assert!(
                sym2.apply_series(&sq).is_zero_series(),
                "sym2:{x} does not annihilate the squared solution"
            );
            // and the transformed symmetric square annihilates the pullback
            let a = match x {
                "A" => 16,
                "B" => 27,
                "C" => 64,
                _ => 432,
            };
            let pulled = moebius_pullback(&sq, &rat(a));
            let mu_sym2 = build_named(&format!("mu(sym2:{x})")).unwrap().op;
            assert!(
                mu_sym2.apply_series(&pulled).is_zero_series(),
                "mu(sym2:{x}) does not annihilate the pulled-back square"
            );
        }
    }

    #[test]
    fn c_times_h_is_a_third_symmetric_power() {
        // C * mu(B) has the cube of the solution of
        // theta^2 - 12x(12 th + 7)(12 th + 1) among its solutions.
        let base = crate::operator::parse_operator(
            "T^2 - 12*x*(12*T+7)*(12*T+1)",
        )
        .unwrap();
        let y = holomorphic_solution(&base, 10).unwrap();
        let cube = y.mul(&y).mul(&y);
        let ch = crate::operator::parse_operator(
            "T^4 - 12*x*(4*T+1)*(4*T+3)*(18*T^2+18*T+7) + 11664*x^2*(4*T+1)*(4*T+3)*(4*T+5)*(4*T+7)",
        )
        .unwrap();
        assert!(ch.apply_series(&cube).is_zero_series());
    }

    #[test]
    fn tilde_operator_examples() {
        // case 1: infinity exponents (4/5, 9/10, 11/10, 6/5)
        let entry = build_named("tilde:1").unwrap();
        let sym = riemann_symbol(&entry.op).unwrap();
        let inf = sym
            .rational_exponents_at(&SingularPoint::Infinity)
            .unwrap();
        assert_eq!(
            inf,
            vec![ratio(4, 5), ratio(9, 10), ratio(11, 10), ratio(6, 5)]
        );

        // mu = nu = 0 collapses the infinity exponents to all ones
        let sym0 = riemann_symbol(&tilde_operator(&rat(7), &rat(0), &rat(0))).unwrap();
        assert_eq!(
            sym0.rational_exponents_at(&SingularPoint::Infinity).unwrap(),
            vec![rat(1); 4]
        );
    }

    #[test]
    fn tilde3_fingerprint_matches_2_33() {
        let entry = build_named("tilde:3").unwrap();
        let report = instanton_report(&entry.op, 4, 3).unwrap();
        assert_eq!(report.n[0], rat(-160));
        assert_eq!(report.n[2], rat(-539680));
    }

    #[test]
    fn twist_table() {
        for (b2, b3) in [
            ("bzb:a", "bzb3:delta"),
            ("bzb:c", "bzb3:alpha"),
            ("bzb:g", "bzb3:gamma"),
            ("bzb:d", "bzb3:epsilon"),
            ("bzb:f", "bzb3:zeta"),
            ("bzb:b", "bzb3:eta"),
        ] {
            assert_eq!(twist_check(b2, b3), Ok(true), "twist pair ({b2}, {b3})");
        }
        // mismatched pair: series disagree at low order
        assert_eq!(twist_check("bzb:b", "bzb3:delta"), Ok(false));
        assert!(matches!(
            twist_check("A", "bzb3:eta"),
            Err(TransformsError::UnknownPair(..))
        ));
    }

    #[test]
    fn small_families_satisfy_cy() {
        let p2 = small_family(SmallFamily::P2, &[rat(4), rat(2), rat(0), rat(1)]).unwrap();
        assert!(cy_quantity_q(&p2).unwrap().is_zero_func());

        let p0 = small_family(SmallFamily::P0, &[rat(3), rat(1), rat(2), rat(5)]).unwrap();
        assert!(cy_quantity_q(&p0).unwrap().is_zero_func());

        let p4 = small_family(SmallFamily::P4, &[rat(2), rat(1), rat(3), rat(7)]).unwrap();
        assert!(cy_quantity_q(&p4).unwrap().is_zero_func());

        let p1 = small_family(
            SmallFamily::P1,
            &[rat(3), rat(2), rat(1), ratio(1, 5), ratio(2, 5)],
        )
        .unwrap();
        assert!(cy_quantity_q(&p1).unwrap().is_zero_func());

        let p3 = small_family(
            SmallFamily::P3,
            &[rat(5), rat(1), rat(0), ratio(1, 2), ratio(1, 3)],
        )
        .unwrap();
        assert!(cy_quantity_q(&p3).unwrap().is_zero_func());

        // degree contract: P0 with f = 0 is rejected
        assert!(matches!(
            small_family(SmallFamily::P0, &[rat(3), rat(1), rat(0), rat(5)]),
            Err(TransformsError::DegenerateParams(_))
        ));
        assert!(matches!(
            small_family(SmallFamily::P0, &[rat(3), rat(1)]),
            Err(TransformsError::BadArity { .. })
        ));
    }

    #[test]
    fn shift_equivalences() {
        assert_eq!(
            shift_equivalence_check(&rat(4), &rat(2), &rat(1), &rat(1)),
            Ok(true)
        );
        // d = 0: prefactors are 1 and the relation is the trivial e shift
        assert_eq!(
            shift_equivalence_check(&rat(4), &rat(0), &rat(1), &rat(2)),
            Ok(true)
        );
        assert_eq!(
            shift_equivalence_check_p1p3(&rat(3), &rat(2), &rat(1), &ratio(1, 5), &ratio(2, 5)),
            Ok(true)
        );
    }

    #[test]
    fn misc_third_order_identities() {
        // d=1, k=0: the constant 1 is a solution
        let op = misc_third_order(&rat(1), &rat(0));
        assert!(op
            .apply_series(&PowerSeries::one(6))
            .is_zero_series());

        assert!(misc_third_order_identity_check(&rat(3), &rat(1)));
        assert!(misc_third_order_identity_check(&ratio(1, 2), &ratio(1, 3)));

        // denominators of the d=1/2, k=1/3 solution only involve 2 and 3
        let sol = misc_third_order_solution(&ratio(1, 2), &ratio(1, 3), 8);
        for c in sol.coeffs() {
            let mut den = c.denom().clone();
            for p in [2u32, 3] {
                while (&den % p).is_zero() {
                    den /= p;
                }
            }
            assert!(den.is_one(), "unexpected prime in denominator of {c}");
        }
    }

    #[test]
    fn wronskian_cases() {
        assert_eq!(wronskian5_check(3), Ok(true));
        assert_eq!(wronskian5_check(1), Ok(true));
        assert_eq!(wronskian5_check_perturbed(3, 1), Ok(false));
    }

    #[test]
    fn main_family_examples() {
        let one = QPoly::constant(rat(1));
        let zero = QPoly::zero_poly();
        assert_eq!(
            main_family_build(&one, &zero, &zero).unwrap(),
            ThetaOperator::theta_power(4)
        );

        let p = QPoly::new(vec![rat(1), rat(2)]);
        let qp = QPoly::new(vec![rat(0), rat(3)]);
        let r = QPoly::new(vec![rat(0), rat(5)]);
        let op = main_family_build(&p, &qp, &r).unwrap();
        assert_eq!(op.degree(), 1);
        assert!(cy_quantity_q(&op).unwrap().is_zero_func());

        let p2 = QPoly::new(vec![rat(1), rat(1), rat(1)]);
        let qp2 = QPoly::new(vec![rat(0), rat(1), rat(-1)]);
        let r2 = QPoly::new(vec![rat(0), rat(1)]);
        let op2 = main_family_build(&p2, &qp2, &r2).unwrap();
        assert_eq!(op2.degree(), 2);
        assert!(cy_quantity_q(&op2).unwrap().is_zero_func());

        assert!(main_family_build(&p2, &one, &r2).is_err());
    }

    #[test]
    fn strange_pipeline_heads() {
        let entry = build_named("strange").unwrap();
        let basis = frobenius_basis(&entry.op, 5).unwrap();
        let q = q_coordinate(&basis).unwrap();
        assert_eq!(q.coeffs()[1..5], [rat(1), rat(40), rat(1984), rat(106496)]);
        let k = yukawa_coupling(&basis).unwrap();
        assert_eq!(k.coeff(0), &rat(1));
    }
}

#[doc(hidden)]
pub fn small_family_raw_probe(which: SmallFamily, params: &[Rational]) -> TrResult<ThetaOperator> {
    small_family_raw(which, params)
}
