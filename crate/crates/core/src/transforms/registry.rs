//! The registry of named lower-order operators and special fourth-order
//! operators: the first-order operator I, the hypergeometric second-order
//! operators A-D and their Moebius transforms e,h,i,j, the six BZB Heun
//! operators, symmetric squares and their transforms, the six BZB'
//! operators, the three sporadic third-order operators, the fourteen
//! fourth-order hypergeometric operators and their tilde pullbacks.

use num_traits::One;

use crate::exact::scalar::{ratio, Rational, Scalar};
use crate::exact::series::PowerSeries;
use crate::{QPoly, QSeries};

use crate::operator::ThetaOperator;

use super::{tilde_operator, TransformsError, TrResult};

/// A registry entry: the operator plus the printed solution head (when the
/// source tables print one) and opaque monodromy text (never computed).
#[derive(Clone, Debug)]
pub struct NamedOperator {
    pub key: String,
    pub op: ThetaOperator,
    pub solution_head: Option<QSeries>,
    pub monodromy_text: Option<String>,
}

/// Exponent quadruples and scale factors N of the fourteen hypergeometric
/// fourth-order operators, ordered as in the source table.
pub fn hyp4_data(case: usize) -> TrResult<([Rational; 4], Rational)> {
    if !(1..=14).contains(&case) {
        return Err(TransformsError::UnknownName(format!("hyp4:{case}")));
    }
    let table: [([(i64, i64); 4], i64); 14] = [
        ([(1, 5), (2, 5), (3, 5), (4, 5)], 3125),
        ([(1, 10), (3, 10), (7, 10), (9, 10)], 800000),
        ([(1, 2), (1, 2), (1, 2), (1, 2)], 256),
        ([(1, 3), (1, 3), (2, 3), (2, 3)], 729),
        ([(1, 3), (1, 2), (1, 2), (2, 3)], 432),
        ([(1, 4), (1, 2), (1, 2), (3, 4)], 1024),
        ([(1, 8), (3, 8), (5, 8), (7, 8)], 65536),
        ([(1, 6), (1, 3), (2, 3), (5, 6)], 11664),
        ([(1, 12), (5, 12), (7, 12), (11, 12)], 2985984),
        ([(1, 4), (1, 4), (3, 4), (3, 4)], 4096),
        ([(1, 4), (1, 3), (2, 3), (3, 4)], 1728),
        ([(1, 6), (1, 4), (3, 4), (5, 6)], 27648),
        ([(1, 6), (1, 6), (5, 6), (5, 6)], 186624),
        ([(1, 6), (1, 2), (1, 2), (5, 6)], 6912),
    ];
    let (exps, n) = &table[case - 1];
    Ok((
        std::array::from_fn(|i| ratio(exps[i].0, exps[i].1)),
        Rational::from_int(*n),
    ))
}

/// Monodromy-data strings of the hypergeometric/tilde table, stored verbatim
/// as opaque text (never computed).
fn hyp4_monodromy(case: usize) -> &'static str {
    [
        "5, 0, 25/12, -200*lambda",
        "1, 0, 17/12, -288*lambda",
        "16, 0, 8/3, -128*lambda",
        "9, 0, 9/4, -144*lambda",
        "12, 0, 5/2, -144*lambda",
        "8, 0, 7/3, -296*lambda",
        "2, 0, 11/6, -296*lambda",
        "3, 0, 7/4, -204*lambda",
        "1, 0, 23/12, -484*lambda",
        "4, 0, 5/3, -144*lambda",
        "6, 0, 2, -156*lambda",
        "2, 0, 4/3, -156*lambda",
        "1, 0, 11/12, -120*lambda",
        "4, 0, 13/6, -256*lambda",
    ][case - 1]
}

fn tilde_monodromy(case: usize) -> &'static str {
    [
        "11*sqrt(5)/24, sqrt(5), -84*sqrt(5)*lambda - 29*sqrt(5)/2880",
        "35/24, 1, -580*lambda, -649/576",
        "5/6, 4, -80*lambda",
        "7/8, 3, -108*lambda, 5/64",
        "sqrt(3)/2, 2*sqrt(3), -56*sqrt(3)*lambda, sqrt(3)/24",
        "2*sqrt(2)/3, 2*sqrt(2), -96*sqrt(2)*lambda, sqrt(2)/36",
        "23*sqrt(2)/24, sqrt(2), -300*sqrt(2)*lambda, -241*sqrt(2)/576",
        "5*sqrt(3)/8, sqrt(3), -140*sqrt(3)*lambda, -11*sqrt(3)/192",
        "47/24, 1, -972*lambda, -1633/576",
        "11/12, 2, -152*lambda, 23/288",
        "3*sqrt(6)/8, sqrt(6), -56*sqrt(6)*lambda, 5*sqrt(6)/192",
        "17*sqrt(2)/24, sqrt(2), -160*sqrt(2)*lambda, -sqrt(2)/576",
        "23/24, 1, -244*lambda, 47/576",
        "7/6, 2, -264*lambda, -13/72",
    ][case - 1]
}

/// `(mu, nu)` of a tilde operator from the exponents of its hypergeometric
/// case: `mu = alpha_3 - 1/2`, `nu = alpha_4 - 1/2`.
pub fn tilde_mu_nu(case: usize) -> TrResult<(Rational, Rational, Rational)> {
    let (exps, n) = hyp4_data(case)?;
    let half = ratio(1, 2);
    Ok((n, &exps[2] - &half, &exps[3] - &half))
}

fn poly_from_roots(scale: Rational, roots: &[Rational]) -> QPoly {
    let mut p = QPoly::constant(scale);
    for r in roots {
        p = &p * &QPoly::new(vec![r.clone(), Rational::one()]);
    }
    p
}

fn theta_pow_poly(k: usize) -> QPoly {
    QPoly::monomial(Rational::one(), k)
}

/// theta^N - N x (th+e1)...(th+eN) hypergeometric form.
fn hypergeometric(order: usize, n: &Rational, exps: &[Rational]) -> ThetaOperator {
    ThetaOperator::new(vec![
        theta_pow_poly(order),
        poly_from_roots(-n.clone(), exps),
    ])
    .expect("hypergeometric operator")
}

/// theta^2 - x (a th^2 + a th + b) + c x^2 (th+1)^2 Heun form shared by the
/// Moebius-transformed hypergeometric operators and the BZB operators.
fn heun2(a: i64, b: i64, c: i64) -> ThetaOperator {
    let (a, b, c) = (Rational::from_int(a), Rational::from_int(b), Rational::from_int(c));
    ThetaOperator::new(vec![
        theta_pow_poly(2),
        QPoly::new(vec![-b, -a.clone(), -a]),
        poly_from_roots(c, &[Rational::one(), Rational::one()]),
    ])
    .expect("second-order Heun form")
}

/// theta^3 - x (2th+1)(a th^2 + a th + b) + c x^2 (th+e1)(th+e2)(th+e3).
fn third_order(a: Rational, b: Rational, c: Rational, exps: [Rational; 3]) -> ThetaOperator {
    let quad = QPoly::new(vec![b, a.clone(), a]);
    let p1 = -&(&QPoly::new(vec![Rational::one(), Rational::from_int(2)]) * &quad);
    ThetaOperator::new(vec![theta_pow_poly(3), p1, poly_from_roots(c, &exps)])
        .expect("third-order family")
}

fn head(cs: &[i64]) -> QSeries {
    PowerSeries::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
}

fn named(key: &str, op: ThetaOperator, head_opt: Option<QSeries>) -> NamedOperator {
    NamedOperator {
        key: key.to_string(),
        op,
        solution_head: head_opt,
        monodromy_text: None,
    }
}

/// Builds a registry operator by key. Stable keys (aliases in parens):
/// `I`; `A`..`D`; `mu(A)`..`mu(D)` (`e`,`h`,`i`,`j`); `bzb:a`..`bzb:g`;
/// `sym2:A`..`sym2:D`; `mu(sym2:A)`.. (`beta`,`iota`,`theta`,`kappa`);
/// `bzb3:alpha`..`bzb3:eta`; `sporadic:1`..`3`; `hyp4:1`..`14` (`quintic`);
/// `tilde:1`..`14`; `strange3`, `strange`.
pub fn build_named(key: &str) -> TrResult<NamedOperator> {
    let one = Rational::one();
    let half = ratio(1, 2);
    match key {
        "I" => {
            // theta - 4x(theta + 1/2); solution sum C(2n,n) x^n
            let op = ThetaOperator::new(vec![
                QPoly::x(),
                QPoly::new(vec![Rational::from_int(-2), Rational::from_int(-4)]),
            ])
            .expect("first-order operator");
            Ok(named("I", op, Some(head(&[1, 2, 6, 20]))))
        }
        "A" => Ok(named(
            "A",
            hypergeometric(2, &Rational::from_int(16), &[half.clone(), half]),
            Some(head(&[1, 4, 36, 400])),
        )),
        "B" => Ok(named(
            "B",
            hypergeometric(2, &Rational::from_int(27), &[ratio(1, 3), ratio(2, 3)]),
            Some(head(&[1, 6, 90, 1680])),
        )),
        "C" => Ok(named(
            "C",
            hypergeometric(2, &Rational::from_int(64), &[ratio(1, 4), ratio(3, 4)]),
            Some(head(&[1, 12, 420, 18480])),
        )),
        "D" => Ok(named(
            "D",
            hypergeometric(2, &Rational::from_int(432), &[ratio(1, 6), ratio(5, 6)]),
            Some(head(&[1, 60, 13860, 4084080])),
        )),
        "mu(A)" | "e" => Ok(named("mu(A)", heun2(32, 12, 256), Some(head(&[1, 12, 164])))),
        "mu(B)" | "h" => Ok(named("mu(B)", heun2(54, 21, 729), Some(head(&[1, 21, 495])))),
        "mu(C)" | "i" => Ok(named("mu(C)", heun2(128, 52, 4096), Some(head(&[1, 52, 2980])))),
        "mu(D)" | "j" => Ok(named(
            "mu(D)",
            heun2(864, 372, 186624),
            Some(head(&[1, 372, 148644])),
        )),
        "bzb:a" => Ok(named("bzb:a", heun2(7, 2, -8), Some(head(&[1, 2, 10, 56])))),
        "bzb:b" => Ok(named("bzb:b", heun2(11, 3, -1), Some(head(&[1, 3, 19, 147])))),
        "bzb:c" => Ok(named("bzb:c", heun2(10, 3, 9), Some(head(&[1, 3, 15, 93])))),
        "bzb:d" => Ok(named("bzb:d", heun2(12, 4, 32), Some(head(&[1, 4, 20, 112])))),
        "bzb:f" => Ok(named("bzb:f", heun2(9, 3, 27), Some(head(&[1, 3, 9, 21])))),
        "bzb:g" => Ok(named("bzb:g", heun2(17, 6, 72), Some(head(&[1, 6, 42, 312])))),
        "sym2:A" | "sym2:B" | "sym2:C" | "sym2:D" => {
            // (a, b, w) with infinity exponents (1-w, 1, 1+w)
            let (a, b, w) = match key {
                "sym2:A" => (16, 8, ratio(0, 1)),
                "sym2:B" => (27, 12, ratio(1, 3)),
                "sym2:C" => (64, 24, half),
                _ => (432, 120, ratio(2, 3)),
            };
            let exps = [&one - &w, one.clone(), &one + &w];
            let op = third_order(
                Rational::from_int(a),
                Rational::from_int(b),
                Rational::from_int(a * a),
                exps,
            );
            Ok(named(key, op, None))
        }
        "mu(sym2:A)" | "beta" => Ok(named(
            "mu(sym2:A)",
            third_order(
                Rational::from_int(16),
                Rational::from_int(8),
                Rational::from_int(256),
                [one.clone(), one.clone(), one],
            ),
            Some(head(&[1, 8, 88, 1088])),
        )),
        "mu(sym2:B)" | "iota" => Ok(named(
            "mu(sym2:B)",
            third_order(
                Rational::from_int(27),
                Rational::from_int(15),
                Rational::from_int(729),
                [one.clone(), one.clone(), one],
            ),
            Some(head(&[1, 15, 297, 6495])),
        )),
        "mu(sym2:C)" | "theta" => Ok(named(
            "mu(sym2:C)",
            third_order(
                Rational::from_int(64),
                Rational::from_int(40),
                Rational::from_int(4096),
                [one.clone(), one.clone(), one],
            ),
            Some(head(&[1, 40, 2008, 109120])),
        )),
        "mu(sym2:D)" | "kappa" => Ok(named(
            "mu(sym2:D)",
            third_order(
                Rational::from_int(432),
                Rational::from_int(312),
                Rational::from_int(186624),
                [one.clone(), one.clone(), one],
            ),
            Some(head(&[1, 312, 114264, 44196288])),
        )),
        "bzb3:alpha" | "bzb3:gamma" | "bzb3:delta" | "bzb3:epsilon" | "bzb3:zeta"
        | "bzb3:eta" => {
            let (a, b, c, hd): (i64, i64, i64, &[i64]) = match key {
                "bzb3:alpha" => (10, 4, 64, &[1, 4, 28, 256]),
                "bzb3:gamma" => (17, 5, 1, &[1, 5, 73, 1445]),
                "bzb3:delta" => (7, 3, 81, &[1, 3, 9, 3, -279]),
                "bzb3:epsilon" => (12, 4, 16, &[1, 4, 40, 544]),
                "bzb3:zeta" => (9, 3, -27, &[1, 3, 27, 309]),
                _ => (11, 5, 125, &[1, 5, 35, 275]),
            };
            let op = third_order(
                Rational::from_int(a),
                Rational::from_int(b),
                Rational::from_int(c),
                [one.clone(), one.clone(), one],
            );
            Ok(named(key, op, Some(head(hd))))
        }
        "sporadic:1" => {
            // theta^3 - 2x(2th+1)(3th^2+3th+1) - 4x^2(4th+3)(th+1)(4th+5)
            let op = third_order(
                Rational::from_int(6),
                Rational::from_int(2),
                Rational::from_int(-64),
                [ratio(3, 4), one, ratio(5, 4)],
            );
            Ok(named(key, op, Some(head(&[1, 2, 18, 164, 1810, 21252, 263844]))))
        }
        "sporadic:2" => {
            let op = third_order(
                Rational::from_int(13),
                Rational::from_int(4),
                Rational::from_int(-27),
                [ratio(2, 3), one, ratio(4, 3)],
            );
            Ok(named(key, op, Some(head(&[1, 4, 48, 760, 13840, 273504, 5703096]))))
        }
        "sporadic:3" => {
            let op = third_order(
                Rational::from_int(14),
                Rational::from_int(6),
                Rational::from_int(192),
                [ratio(3, 4), one, ratio(5, 4)],
            );
            Ok(named(key, op, Some(head(&[1, 6, 54, 564, 6390, 76356, 948276]))))
        }
        "quintic" => {
            let mut named_op = build_named("hyp4:1")?;
            named_op.key = "quintic".into();
            named_op.solution_head = Some(head(&[1, 120, 113400]));
            Ok(named_op)
        }
        "strange3" => {
            // theta^3 - 4x(2th+1)(5th^2+5th+2) + 48x^2(3th+2)(3th+4)(th+1)
            let op = third_order(
                Rational::from_int(20),
                Rational::from_int(8),
                Rational::from_int(432),
                [ratio(2, 3), one, ratio(4, 3)],
            );
            Ok(named(key, op, Some(head(&[1, 8, 96, 1280, 17440, 231168]))))
        }
        "strange" => {
            // I * strange3
            let op = crate::operator::parse_operator(
                "T^4 - 8*x*(2*T+1)^2*(5*T^2+5*T+2) + 192*x^2*(2*T+1)*(3*T+2)*(3*T+4)*(2*T+3)",
            )
            .expect("strange operator");
            Ok(named(
                key,
                op,
                Some(head(&[1, 16, 576, 25600, 1220800, 58254336])),
            ))
        }
        _ => {
            if let Some(num) = key.strip_prefix("hyp4:") {
                let case: usize = num
                    .parse()
                    .map_err(|_| TransformsError::UnknownName(key.into()))?;
                let (exps, n) = hyp4_data(case)?;
                let mut entry = named(key, hypergeometric(4, &n, &exps), None);
                entry.monodromy_text = Some(hyp4_monodromy(case).to_string());
                return Ok(entry);
            }
            if let Some(num) = key.strip_prefix("tilde:") {
                let case: usize = num
                    .parse()
                    .map_err(|_| TransformsError::UnknownName(key.into()))?;
                let (n, mu, nu) = tilde_mu_nu(case)?;
                let mut entry = named(key, tilde_operator(&n, &mu, &nu), None);
                entry.monodromy_text = Some(tilde_monodromy(case).to_string());
                return Ok(entry);
            }
            Err(TransformsError::UnknownName(key.into()))
        }
    }
}

/// Canonical registry keys (aliases excluded), for listings.
pub fn registry_keys() -> Vec<String> {
    let mut keys: Vec<String> = vec![
        "I", "A", "B", "C", "D", "mu(A)", "mu(B)", "mu(C)", "mu(D)", "bzb:a", "bzb:b", "bzb:c",
        "bzb:d", "bzb:f", "bzb:g", "sym2:A", "sym2:B", "sym2:C", "sym2:D", "mu(sym2:A)",
        "mu(sym2:B)", "mu(sym2:C)", "mu(sym2:D)", "bzb3:alpha", "bzb3:gamma", "bzb3:delta",
        "bzb3:epsilon", "bzb3:zeta", "bzb3:eta", "sporadic:1", "sporadic:2", "sporadic:3",
        "quintic", "strange3", "strange",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    for i in 1..=14 {
        keys.push(format!("hyp4:{i}"));
        keys.push(format!("tilde:{i}"));
    }
    keys
}
