//! Operator fitting: recover a theta-form operator of prescribed order and
//! degree that annihilates a given series, by exact linear algebra on the
//! coefficient recursion. This is the linear step of a Zagier-type search.

use num_traits::{One, Zero};

use crate::exact::linalg::{solve, LinearOutcome, Matrix};
use crate::exact::scalar::{Rational, Scalar};
use crate::operator::ThetaOperator;
use crate::{QPoly, QSeries};

use super::TrResult;

/// Outcome of a fit: the operator (verified against held-out coefficients),
/// or a diagnosis of why there is none / more than one.
#[derive(Clone, Debug)]
pub enum FitResult {
    Fitted {
        op: ThetaOperator,
        rank_info: String,
    },
    NoFit {
        rank_info: String,
    },
    Ambiguous {
        nullspace_dim: usize,
        rank_info: String,
    },
}

impl FitResult {
    pub fn operator(&self) -> Option<&ThetaOperator> {
        match self {
            FitResult::Fitted { op, .. } => Some(op),
            _ => None,
        }
    }
}

/// Fits `P_0 = theta^order` plus unknown `P_1..P_degree` of theta-degree
/// `order` to the recursion `sum_i P_i(n-i) a_{n-i} = 0`, solving on all but
/// the last `holdout` coefficient rows and verifying on the rest.
pub fn fit_operator(s: &QSeries, order: usize, degree: usize) -> TrResult<FitResult> {
    let holdout = 5.min(s.order().saturating_sub(1) / 4);
    fit_operator_with_holdout(s, order, degree, holdout)
}

pub fn fit_operator_with_holdout(
    s: &QSeries,
    order: usize,
    degree: usize,
    holdout: usize,
) -> TrResult<FitResult> {
    let unknowns = degree * (order + 1);
    let total_rows = s.order();
    let solve_rows = total_rows.saturating_sub(holdout);
    let mut data = Vec::with_capacity(solve_rows * unknowns.max(1));
    let mut rhs = Vec::with_capacity(solve_rows);
    let row_of = |n: usize| -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); unknowns];
        for i in 1..=degree.min(n) {
            let base = Rational::from_int((n - i) as i64);
            let mut pw = s.coeff(n - i).clone();
            for k in 0..=order {
                row[(i - 1) * (order + 1) + k] = pw.clone();
                pw = pw * base.clone();
            }
        }
        let lead = num_traits::pow::pow(Rational::from_int(n as i64), order);
        (row, -lead * s.coeff(n))
    };
    for n in 1..=solve_rows {
        let (row, r) = row_of(n);
        data.extend(row);
        rhs.push(r);
    }
    if unknowns == 0 {
        // degree 0: nothing to solve, the recursion is a direct constraint
        let ok = rhs.iter().all(Rational::is_zero);
        return Ok(if ok {
            FitResult::Fitted {
                op: ThetaOperator::theta_power(order),
                rank_info: "degree 0: no unknowns".into(),
            }
        } else {
            FitResult::NoFit {
                rank_info: "degree 0: recursion violated".into(),
            }
        });
    }
    let matrix = Matrix::new(solve_rows, unknowns, data);
    match solve(&matrix, &rhs) {
        LinearOutcome::Inconsistent => Ok(FitResult::NoFit {
            rank_info: format!("{solve_rows} constraints are inconsistent"),
        }),
        LinearOutcome::Family { nullspace, .. } => Ok(FitResult::Ambiguous {
            nullspace_dim: nullspace.len(),
            rank_info: format!(
                "solution space has dimension {}; need more coefficients",
                nullspace.len()
            ),
        }),
        LinearOutcome::Unique(u) => {
            let mut polys = vec![QPoly::monomial(Rational::one(), order)];
            for i in 0..degree {
                polys.push(QPoly::new(
                    u[i * (order + 1)..(i + 1) * (order + 1)].to_vec(),
                ));
            }
            let op = ThetaOperator::new(polys)?;
            // held-out verification on the remaining rows
            for n in (solve_rows + 1)..=total_rows {
                let (row, r) = row_of(n);
                let mut acc = Rational::zero();
                for (c, v) in row.iter().zip(&u) {
                    acc += c * v;
                }
                if acc != r {
                    return Ok(FitResult::NoFit {
                        rank_info: format!("held-out coefficient {n} violates the fit"),
                    });
                }
            }
            Ok(FitResult::Fitted {
                op,
                rank_info: format!(
                    "unique fit from {solve_rows} rows, {holdout} held out",
                ),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use crate::exact::series::PowerSeries;
    use crate::frobenius::holomorphic_solution;
    use crate::operator::parse_operator;
    use crate::transforms::build_named;

    #[test]
    fn recovers_the_central_binomial_operator() {
        let s = PowerSeries::new(
            [1i64, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756]
                .iter()
                .map(|&c| rat(c))
                .collect(),
        );
        let fit = fit_operator(&s, 1, 1).unwrap();
        let op = fit.operator().expect("unique fit");
        assert_eq!(op, &build_named("I").unwrap().op);
    }

    #[test]
    fn recovers_the_quintic_operator() {
        let quintic =
            parse_operator("T^4 - 3125*x*(T+1/5)*(T+2/5)*(T+3/5)*(T+4/5)").unwrap();
        let s = holomorphic_solution(&quintic, 20).unwrap();
        let fit = fit_operator(&s, 4, 1).unwrap();
        assert_eq!(fit.operator().expect("unique fit"), &quintic);
    }

    #[test]
    fn random_sequence_has_no_fit() {
        // a generic sequence satisfies no first-order recursion
        let s = PowerSeries::new(
            [1i64, 3, 7, 13, 29, 31, 64, 101, 9, 57]
                .iter()
                .map(|&c| rat(c))
                .collect(),
        );
        match fit_operator(&s, 1, 0).unwrap() {
            FitResult::NoFit { .. } => {}
            other => panic!("expected NoFit, got {other:?}"),
        }
        match fit_operator(&s, 1, 1).unwrap() {
            FitResult::NoFit { .. } => {}
            other => panic!("expected NoFit, got {other:?}"),
        }
    }

    #[test]
    fn underdetermined_fit_is_ambiguous() {
        let s = PowerSeries::new(vec![rat(1), rat(2), rat(4)]);
        match fit_operator_with_holdout(&s, 2, 2, 0).unwrap() {
            FitResult::Ambiguous { nullspace_dim, .. } => assert!(nullspace_dim > 0),
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }
}
