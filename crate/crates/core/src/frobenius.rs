//! The MUM-point analytic pipeline: series solution by the coefficient
//! recursion, Frobenius basis via epsilon-jets, q-coordinate, Yukawa
//! coupling, instanton numbers and integrality diagnostics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::scalar::{Jet4, Rational, Scalar};
use crate::exact::series::PowerSeries;
use crate::exact::ExactError;
use crate::operator::ThetaOperator;
use crate::{QPoly, QSeries};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FrobeniusError {
    #[error("operator is not MUM: P_0 must be theta^4")]
    NotMum,
    #[error("resonant recursion: P_0({0}) = 0")]
    ResonantRecursion(i64),
    #[error("insufficient series order for the requested quantity")]
    InsufficientOrder,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type FrobResult<T> = Result<T, FrobeniusError>;

/// Normalized holomorphic solution `1 + a_1 x + ...`: the coefficients
/// satisfy `P_0(n) a_n + P_1(n-1) a_{n-1} + ... + P_r(n-r) a_{n-r} = 0`.
pub fn holomorphic_solution(op: &ThetaOperator, order: usize) -> FrobResult<QSeries> {
    let p0 = op.theta_poly(0);
    if !p0.eval(&Rational::zero()).is_zero() {
        return Err(FrobeniusError::ResonantRecursion(0));
    }
    let mut a = Vec::with_capacity(order + 1);
    a.push(Rational::one());
    for n in 1..=order {
        let lead = p0.eval(&Rational::from_int(n as i64));
        if lead.is_zero() {
            return Err(FrobeniusError::ResonantRecursion(n as i64));
        }
        let mut acc = Rational::zero();
        for i in 1..=op.degree().min(n) {
            let p = op.theta_poly(i);
            if p.is_zero_poly() {
                continue;
            }
            acc += p.eval(&Rational::from_int((n - i) as i64)) * &a[n - i];
        }
        a.push(-acc / lead);
    }
    Ok(PowerSeries::new(a))
}

/// The four log-graded components of the Frobenius basis at a MUM point:
/// `y_k = sum_{j<=k} (log^j x / j!) f_{k-j}` with `f_0(0) = 1` and
/// `f_j(0) = 0` for j >= 1.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusBasis {
    f: [QSeries; 4],
}

impl FrobeniusBasis {
    pub fn f(&self, j: usize) -> &QSeries {
        &self.f[j]
    }

    pub fn order(&self) -> usize {
        self.f[0].order()
    }

    /// y_k as a log-graded series (component j is the coefficient of
    /// log^j x / j!).
    pub fn y(&self, k: usize) -> LogSeries {
        assert!(k < 4);
        let order = self.order();
        let comps = (0..4)
            .map(|j| {
                if j <= k {
                    self.f[k - j].clone()
                } else {
                    PowerSeries::zero_series(order)
                }
            })
            .collect();
        LogSeries { comps }
    }
}

/// Frobenius basis by the epsilon-jet recursion
/// `a_n(eps) = -(sum_i P_i(n-i+eps) a_{n-i}(eps)) / (n+eps)^4` in
/// Q[eps]/(eps^4), with `a_0(eps) = 1`; `f_j` collects the eps^j parts.
pub fn frobenius_basis(op: &ThetaOperator, order: usize) -> FrobResult<FrobeniusBasis> {
    if !op.is_mum() {
        return Err(FrobeniusError::NotMum);
    }
    let mut a: Vec<Jet4> = Vec::with_capacity(order + 1);
    a.push(Jet4::one());
    for n in 1..=order {
        let mut acc = Jet4::zero();
        for i in 1..=op.degree().min(n) {
            let p = op.theta_poly(i);
            if p.is_zero_poly() {
                continue;
            }
            let arg = Jet4::linear(Rational::from_int((n - i) as i64));
            let val = p.eval_in(&arg, |c| Jet4::constant(c.clone()));
            acc = acc + val * a[n - i].clone();
        }
        let lead = Jet4::linear(Rational::from_int(n as i64));
        let lead4 = lead.clone() * lead.clone() * lead.clone() * lead;
        a.push(-acc * lead4.inv());
    }
    let f = std::array::from_fn(|j| {
        PowerSeries::new(a.iter().map(|jet| jet.coeff(j).clone()).collect())
    });
    Ok(FrobeniusBasis { f })
}

/// A log-graded series `sum_j (log^j x / j!) g_j(x)` with at most log^3.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    /// Component j is the coefficient series of log^j x / j!.
    pub comps: Vec<QSeries>,
}

impl LogSeries {
    pub fn pure(s: QSeries) -> Self {
        LogSeries { comps: vec![s] }
    }

    /// theta = x d/dx: theta(log^j/j! g) = log^j/j! (theta g) +
    /// log^(j-1)/(j-1)! g.
    pub fn theta(&self) -> Self {
        let n = self.comps.len();
        let order = self.comps[0].order();
        let comps = (0..n)
            .map(|j| {
                let mut s = self.comps[j].theta();
                if j + 1 < n {
                    s = s.add(&self.comps[j + 1]);
                } else {
                    s = s.truncate(order);
                }
                s
            })
            .collect();
        LogSeries { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PowerSeries::is_zero_series)
    }

    /// Applies a theta-form operator; each x^i P_i(theta) acts componentwise
    /// after the log-aware theta.
    pub fn apply_operator(&self, op: &ThetaOperator) -> Self {
        let order = self.comps[0].order();
        let zero = || LogSeries {
            comps: vec![PowerSeries::zero_series(order); self.comps.len()],
        };
        let mut out = zero();
        for (i, p) in op.theta_polys().iter().enumerate() {
            if p.is_zero_poly() {
                continue;
            }
            let acted = self.apply_poly_in_theta(p);
            for (j, comp) in acted.comps.iter().enumerate() {
                out.comps[j] = out.comps[j].add(&comp.shift_up(i));
            }
        }
        out
    }

    fn apply_poly_in_theta(&self, p: &QPoly) -> Self {
        let order = self.comps[0].order();
        let mut out = LogSeries {
            comps: vec![PowerSeries::zero_series(order); self.comps.len()],
        };
        let mut power = self.clone();
        for (k, c) in p.coeffs().iter().enumerate() {
            if k > 0 {
                power = power.theta();
            }
            if c.is_zero() {
                continue;
            }
            for (j, comp) in power.comps.iter().enumerate() {
                out.comps[j] = out.comps[j].add(&comp.scale(c));
            }
        }
        out
    }
}

/// q-coordinate `q = x exp(f_1/f_0) = x + O(x^2)`.
pub fn q_coordinate(basis: &FrobeniusBasis) -> FrobResult<QSeries> {
    let ratio = basis.f(1).div(basis.f(0))?;
    Ok(ratio.exp()?.shift_up(1))
}

/// Yukawa coupling `K(q) = (q d/dq)^2 (y_2/y_0)`, normalized K(0) = 1,
/// re-expanded in the q-coordinate.
///
/// The log grading drops out through `y_2/y_0 = t^2/2 + G(x)` with
/// `t = log q` and `G = (f_2 f_0 - f_1^2/2)/f_0^2`, so
/// `K = 1 + (d/dt)^2 G` with `d/dt = theta / theta(t)`.
pub fn yukawa_coupling(basis: &FrobeniusBasis) -> FrobResult<QSeries> {
    if basis.order() < 1 {
        return Err(FrobeniusError::InsufficientOrder);
    }
    let f0 = basis.f(0);
    let f1 = basis.f(1);
    let f2 = basis.f(2);
    let half = Rational::new(1.into(), 2.into());
    let g = f2
        .mul(f0)
        .sub(&f1.mul(f1).scale(&half))
        .div(&f0.mul(f0))?;
    let theta_t = PowerSeries::one(basis.order()).add(&f1.div(f0)?.theta());
    let d_dt = |s: &QSeries| -> FrobResult<QSeries> { Ok(s.theta().div(&theta_t)?) };
    let kx = PowerSeries::one(basis.order()).add(&d_dt(&d_dt(&g)?)?);
    let q = q_coordinate(basis)?;
    let x_of_q = q.revert().map_err(|_| FrobeniusError::InsufficientOrder)?;
    Ok(kx.compose(&x_of_q))
}

/// Lambert-series inversion: from `K(q) = 1 + sum_k k^3 n_k q^k/(1-q^k)`
/// recover `n_m = (K_m - sum_{k|m, k<m} k^3 n_k)/m^3`.
pub fn instanton_numbers(k: &QSeries, count: usize) -> Vec<Rational> {
    assert!(k.coeff(0).is_one(), "Yukawa coupling must have K(0) = 1");
    assert!(count <= k.order(), "not enough q-coefficients");
    let mut n: Vec<Rational> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut acc = k.coeff(m).clone();
        for d in 1..m {
            if m % d == 0 {
                acc -= Rational::from_int((d * d * d) as i64) * &n[d - 1];
            }
        }
        n.push(acc / Rational::from_int((m * m * m) as i64));
    }
    n
}

/// Rebuilds the Yukawa coupling from instanton numbers (the Lambert series
/// truncated at the given order).
pub fn lambert_series(n: &[Rational], order: usize) -> QSeries {
    let mut k = PowerSeries::one(order);
    for m in 1..=order {
        let mut acc = Rational::zero();
        for d in 1..=m {
            if m % d == 0 && d <= n.len() {
                acc += Rational::from_int((d * d * d) as i64) * &n[d - 1];
            }
        }
        k.set_coeff(m, acc);
    }
    k
}

/// Prime factorization of the denominator of each value, and the minimal
/// rescaling denominator N for which `N^k v_k` is integral.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport {
    /// (label, index k, denominator prime factorization) per value.
    pub values: Vec<(String, usize, Vec<(BigUint, u32)>)>,
    /// Minimal N with N^k v_k integral for all reported values; 1 = integral.
    pub minimal_n: BigUint,
}

impl IntegralityReport {
    pub fn is_integral(&self) -> bool {
        self.minimal_n.is_one()
    }

    /// All primes appearing in denominators, with the largest exponent seen.
    pub fn offending_primes(&self) -> Vec<(BigUint, u32)> {
        let mut map: Vec<(BigUint, u32)> = Vec::new();
        for (_, _, primes) in &self.values {
            for (p, e) in primes {
                match map.iter_mut().find(|(q, _)| q == p) {
                    Some((_, me)) => *me = (*me).max(*e),
                    None => map.push((p.clone(), *e)),
                }
            }
        }
        map.sort();
        map
    }
}

impl fmt::Display for IntegralityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            return write!(f, "integral");
        }
        write!(f, "N-integral for N = {}; denominators:", self.minimal_n)?;
        for (label, _, primes) in &self.values {
            if primes.is_empty() {
                continue;
            }
            let ps = primes
                .iter()
                .map(|(p, e)| {
                    if *e == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            write!(f, " {label}: {ps};")?;
        }
        Ok(())
    }
}

/// Denominator diagnostics for a series and an instanton sequence together.
pub fn integrality_report(series: &QSeries, n: &[Rational]) -> IntegralityReport {
    let mut values = Vec::new();
    for (k, c) in series.coeffs().iter().enumerate() {
        values.push((format!("q_{k}"), k, factor(&c.denom().to_biguint().unwrap())));
    }
    for (k, v) in n.iter().enumerate() {
        values.push((
            format!("n_{}", k + 1),
            k + 1,
            factor(&v.denom().to_biguint().unwrap()),
        ));
    }
    let mut minimal_n = BigUint::one();
    let mut prime_needs: Vec<(BigUint, u32)> = Vec::new();
    for (_, k, primes) in &values {
        for (p, e) in primes {
            let need = if *k == 0 {
                u32::MAX // constant term with a denominator never rescales away
            } else {
                e.div_ceil(*k as u32)
            };
            match prime_needs.iter_mut().find(|(q, _)| q == p) {
                Some((_, m)) => *m = (*m).max(need),
                None => prime_needs.push((p.clone(), need)),
            }
        }
    }
    for (p, e) in prime_needs {
        minimal_n *= p.pow(e);
    }
    IntegralityReport { values, minimal_n }
}

fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let one = BigUint::one();
    if rest <= one {
        return out;
    }
    let mut p = BigUint::from(2u32);
    let limit = BigUint::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = if p == BigUint::from(2u32) {
            BigUint::from(3u32)
        } else {
            p + BigUint::from(2u32)
        };
    }
    if rest > one {
        out.push((rest, 1));
    }
    out
}

/// The full per-operator pipeline at a given truncation order.
#[derive(Clone, Debug)]
pub struct InstantonReport {
    pub n: Vec<Rational>,
    pub q_series: QSeries,
    pub yukawa: QSeries,
    pub integrality: IntegralityReport,
}

pub fn instanton_report(
    op: &ThetaOperator,
    order: usize,
    count: usize,
) -> FrobResult<InstantonReport> {
    let basis = frobenius_basis(op, order)?;
    let q = q_coordinate(&basis)?;
    let k = yukawa_coupling(&basis)?;
    if count > k.order() {
        return Err(FrobeniusError::InsufficientOrder);
    }
    let n = instanton_numbers(&k, count);
    debug_assert_eq!(
        lambert_series(&n, count),
        k.truncate(count),
        "Lambert reconstruction must reproduce K"
    );
    let integrality = integrality_report(&q, &n);
    Ok(InstantonReport {
        n,
        q_series: q,
        yukawa: k,
        integrality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, ratio};
    use crate::operator::parse_operator;

    fn quintic() -> ThetaOperator {
        parse_operator("T^4 - 3125*x*(T+1/5)*(T+2/5)*(T+3/5)*(T+4/5)").unwrap()
    }

    /// The strange operator of Bogner: I * (third-order L).
    fn strange() -> ThetaOperator {
        parse_operator(
            "T^4 - 8*x*(2*T+1)^2*(5*T^2+5*T+2) + 192*x^2*(2*T+1)*(3*T+2)*(3*T+4)*(2*T+3)",
        )
        .unwrap()
    }

    #[test]
    fn quintic_series_head() {
        let s = holomorphic_solution(&quintic(), 2).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(120), rat(113400)]);
    }

    #[test]
    fn apery_head() {
        // operator 2.5 = A * b: head 1 + 12x (C(2,1)^2 * A_1, A_1 = 3)
        let op = parse_operator(
            "T^4 - 4*x*(2*T+1)^2*(11*T^2+11*T+3) - 16*x^2*(2*T+1)^2*(2*T+3)^2",
        )
        .unwrap();
        let s = holomorphic_solution(&op, 1).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(12)]);
    }

    #[test]
    fn euler_operator_has_constant_solution() {
        let s = holomorphic_solution(&parse_operator("T^4").unwrap(), 5).unwrap();
        assert_eq!(s, PowerSeries::one(5));
    }

    #[test]
    fn resonance_is_detected() {
        let op = parse_operator("T^2 - 2*T - x").unwrap();
        assert_eq!(
            holomorphic_solution(&op, 4),
            Err(FrobeniusError::ResonantRecursion(2))
        );
    }

    #[test]
    fn recursion_soundness() {
        for op in [quintic(), strange()] {
            let s = holomorphic_solution(&op, 12).unwrap();
            assert!(op.apply_series(&s).is_zero_series());
        }
    }

    #[test]
    fn frobenius_basis_of_quintic() {
        let basis = frobenius_basis(&quintic(), 6).unwrap();
        assert_eq!(basis.f(0), &holomorphic_solution(&quintic(), 6).unwrap());
        assert_eq!(basis.f(1).coeff(0), &rat(0));
        assert_eq!(basis.f(1).coeff(1), &rat(770));
        // substitution oracle with symbolic log bookkeeping
        for k in 0..4 {
            let y = basis.y(k);
            assert!(
                y.apply_operator(&quintic()).is_zero(),
                "y_{k} not annihilated"
            );
        }
    }

    #[test]
    fn frobenius_basis_of_euler_operator() {
        let basis = frobenius_basis(&parse_operator("T^4").unwrap(), 4).unwrap();
        assert_eq!(basis.f(0), &PowerSeries::one(4));
        for j in 1..4 {
            assert!(basis.f(j).is_zero_series());
        }
    }

    #[test]
    fn not_mum_is_rejected() {
        let op = parse_operator("T^4 + T^3 - x").unwrap();
        assert_eq!(frobenius_basis(&op, 3), Err(FrobeniusError::NotMum));
        let op3 = parse_operator("T^3 - x").unwrap();
        assert_eq!(frobenius_basis(&op3, 3), Err(FrobeniusError::NotMum));
    }

    #[test]
    fn q_coordinate_examples() {
        let basis = frobenius_basis(&strange(), 5).unwrap();
        let q = q_coordinate(&basis).unwrap();
        assert_eq!(
            q.coeffs()[..5],
            [rat(0), rat(1), rat(40), rat(1984), rat(106496)]
        );

        // reducible operator 2.66
        let red = parse_operator(
            "T^4 - 12*x*(6*T+1)*(6*T+5)*(2*T^2+2*T+1) + 144*x^2*(6*T+1)*(6*T+5)*(6*T+7)*(6*T+11)",
        )
        .unwrap();
        let rb = frobenius_basis(&red, 3).unwrap();
        assert_eq!(
            holomorphic_solution(&red, 3).unwrap().coeffs(),
            &[rat(1), rat(60), rat(13860), rat(4084080)]
        );
        assert_eq!(
            q_coordinate(&rb).unwrap().coeffs(),
            &[rat(0), rat(1), rat(312), rat(107604)]
        );

        let trivial = frobenius_basis(&parse_operator("T^4").unwrap(), 3).unwrap();
        assert_eq!(q_coordinate(&trivial).unwrap(), PowerSeries::x(3));
    }

    #[test]
    fn yukawa_examples() {
        let basis = frobenius_basis(&strange(), 6).unwrap();
        let k = yukawa_coupling(&basis).unwrap();
        // Lambert oracle from the printed n's: K_1 = n_1 = 8, K_2 = n_1 +
        // 8 n_2 = 0, K_3 = n_1 + 27 n_3 = -5632, K_4 = n_1 + 8 n_2 + 64 n_4.
        assert_eq!(
            k.coeffs()[..5],
            [rat(1), rat(8), rat(0), rat(-5632), rat(-456064)]
        );

        let trivial = frobenius_basis(&parse_operator("T^4").unwrap(), 4).unwrap();
        assert_eq!(yukawa_coupling(&trivial).unwrap(), PowerSeries::one(4));

        let kq = yukawa_coupling(&frobenius_basis(&quintic(), 3).unwrap()).unwrap();
        assert_eq!(kq.coeff(1), &rat(575));
    }

    #[test]
    fn yukawa_gauge_independence() {
        // adding c*f0 to f2 shifts G by a constant; K is unchanged
        let basis = frobenius_basis(&strange(), 6).unwrap();
        let k = yukawa_coupling(&basis).unwrap();
        let mut perturbed = basis.clone();
        perturbed.f[2] = perturbed.f[2].add(&perturbed.f[0].scale(&ratio(7, 3)));
        assert_eq!(yukawa_coupling(&perturbed).unwrap(), k);

        // t-linear gauge: (d/dt)^2 applied to t itself vanishes, i.e.
        // (d/dt)^2 (f1/f0) = -(d/dt)^2 (log x) as pure series.
        let f1_over_f0 = basis.f(1).div(basis.f(0)).unwrap();
        let theta_t = PowerSeries::one(basis.order()).add(&f1_over_f0.theta());
        let d_dt = |s: &QSeries| s.theta().div(&theta_t).unwrap();
        let lhs = d_dt(&d_dt(&f1_over_f0));
        // d/dt log x = theta(log x)/theta(t) = 1/theta(t)
        let dlog = PowerSeries::one(basis.order()).div(&theta_t).unwrap();
        let rhs = d_dt(&dlog).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn instanton_inversion_and_round_trip() {
        // K = 1 + 5q/(1-q): a single Lambert term with n_1 = 5
        let k = PowerSeries::new(vec![rat(1), rat(5), rat(5), rat(5), rat(5)]);
        let n = instanton_numbers(&k, 4);
        assert_eq!(n, vec![rat(5), rat(0), rat(0), rat(0)]);
        assert_eq!(lambert_series(&n, 4), k);
    }

    #[test]
    fn strange_operator_instantons() {
        let report = instanton_report(&strange(), 6, 5).unwrap();
        assert_eq!(
            report.n,
            vec![
                rat(8),
                rat(-1),
                ratio(-1880, 9),
                rat(-7126),
                ratio(-3541608, 25)
            ]
        );
        let offenders = report.integrality.offending_primes();
        assert_eq!(
            offenders,
            vec![(BigUint::from(3u32), 2), (BigUint::from(5u32), 2)]
        );
        assert!(!report.integrality.is_integral());
    }

    #[test]
    fn integrality_classification() {
        let integral = integrality_report(&PowerSeries::new(vec![rat(1), rat(3)]), &[rat(7)]);
        assert!(integral.is_integral());
        assert_eq!(integral.to_string(), "integral");

        // n_2 = 291/2 is 2-integral
        let half_int = integrality_report(
            &PowerSeries::new(vec![rat(1), rat(3)]),
            &[rat(24), ratio(291, 2), rat(5832)],
        );
        assert_eq!(half_int.minimal_n, BigUint::from(2u32));
    }
}
