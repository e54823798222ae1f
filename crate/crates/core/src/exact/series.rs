//! Truncated power series with exact coefficients.
//!
//! A series carries its truncation order explicitly: `coeffs` has length
//! `order + 1` and binary operations return the minimum of the input orders.
//! Asking for a coefficient beyond the order is a panic, never a silent zero.

use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{binomial_rational, pochhammer, Rational, Scalar};
use super::{ExactError, ExactResult};

#[derive(Clone, PartialEq)]
pub struct PowerSeries<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PowerSeries<T> {
    /// Builds from coefficients c0..c_order (length fixes the order).
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c0");
        PowerSeries { coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut v = vec![T::zero(); order + 1];
        v[0] = c;
        PowerSeries { coeffs: v }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn zero_series(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    /// The series x + O(x^(order+1)).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero_series(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        assert!(
            k < self.coeffs.len(),
            "coefficient {k} beyond truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: T) {
        assert!(k < self.coeffs.len());
        self.coeffs[k] = c;
    }

    pub fn is_zero_series(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncate to a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a series by truncation");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PowerSeries<U> {
        PowerSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        PowerSeries::new(
            (0..=n)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        PowerSeries::new(
            (0..=n)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                let t = out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
                out[i + j] = t;
            }
        }
        PowerSeries::new(out)
    }

    /// Exact division; the divisor needs a unit constant term.
    pub fn div(&self, rhs: &Self) -> ExactResult<Self> {
        if !rhs.coeffs[0].is_unit() {
            return Err(ExactError::DivisionByZeroSeries);
        }
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc = acc - out[j].clone() * rhs.coeffs[k - j].clone();
            }
            out[k] = acc / rhs.coeffs[0].clone();
        }
        Ok(PowerSeries::new(out))
    }

    /// Multiply by x^k (shifting the top k coefficients out of range drops
    /// them: the order is preserved).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for j in k..=n {
            out[j] = self.coeffs[j - k].clone();
        }
        PowerSeries::new(out)
    }

    /// Theta action x d/dx.
    pub fn theta(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> ExactResult<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(ExactError::BadConstantTerm {
                expected: "0".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        // e' = s' e  =>  k e_k = sum_{j=1..k} j s_j e_{k-j}
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc
                    + self.coeffs[j].clone() * T::from_int(j as i64) * out[k - j].clone();
            }
            out[k] = acc / T::from_int(k as i64);
        }
        Ok(PowerSeries::new(out))
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> ExactResult<Self> {
        if !self.coeffs[0].is_one() {
            return Err(ExactError::BadConstantTerm {
                expected: "1".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        // l' = s'/s  =>  k s_0 l_k = k s_k - sum_{j=1..k-1} j l_j s_{k-j}
        let mut out = vec![T::zero(); n + 1];
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone() * T::from_int(k as i64);
            for j in 1..k {
                acc = acc - out[j].clone() * T::from_int(j as i64) * self.coeffs[k - j].clone();
            }
            out[k] = acc / T::from_int(k as i64);
        }
        Ok(PowerSeries::new(out))
    }

    /// Composition self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "series composition needs inner constant term 0"
        );
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::zero_series(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        acc
    }

    /// Compositional inverse of s = x + O(x^2): returns r with s(r(q)) = q.
    pub fn revert(&self) -> ExactResult<Self> {
        if !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(ExactError::NotReversible);
        }
        let n = self.order();
        let mut r = PowerSeries::zero_series(n);
        if n >= 1 {
            r.coeffs[1] = T::one();
        }
        // Triangular: the q^k coefficient of s(r) depends on r_k only through
        // the linear term of s, so each step reads off one new coefficient.
        for k in 2..=n {
            let composed = self.truncate(k).compose(&r.truncate(k));
            r.coeffs[k] = -composed.coeffs[k].clone();
        }
        Ok(r)
    }
}

impl PowerSeries<Rational> {
    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        PowerSeries::new(
            (0..=n)
                .map(|k| &self.coeffs[k] * &rhs.coeffs[k])
                .collect(),
        )
    }

    /// (1 + c x)^r for rational r, by the binomial series.
    pub fn binomial_power(c: &Rational, r: &Rational, order: usize) -> Self {
        PowerSeries::new(
            (0..=order)
                .map(|k| binomial_rational(r, k) * num_traits::pow::pow(c.clone(), k))
                .collect(),
        )
    }

    /// Gauss hypergeometric series 2F1(a, b; c; x).
    pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Self {
        let mut fact = Rational::one();
        PowerSeries::new(
            (0..=order)
                .map(|n| {
                    if n > 0 {
                        fact *= Rational::from_int(n as i64);
                    }
                    pochhammer(a, n) * pochhammer(b, n) / (pochhammer(c, n) * &fact)
                })
                .collect(),
        )
    }

    /// True when every retained coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Parses `c0 + c1*x + ... + ck*x^k + O(x^(k+1))`.
    pub fn parse(text: &str) -> ExactResult<Self> {
        parse_series(text)
    }
}

impl<T: Scalar> fmt::Debug for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(k == 0 && self.is_zero_series()) {
                continue;
            }
            let s = c.to_string();
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if sign == "-" { "-" } else { "+" })?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*x")?,
                _ => write!(f, "{mag}*x^{k}")?,
            }
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

fn parse_series(text: &str) -> ExactResult<PowerSeries<Rational>> {
    use super::scalar::parse_rational;
    let t = text.trim();
    let err = |pos: usize, msg: &str| ExactError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let (body, tail) = match t.rfind("+ O(x^") {
        Some(i) => (&t[..i], &t[i..]),
        None => return Err(err(t.len(), "missing + O(x^(k+1)) tail")),
    };
    let inner = tail
        .trim_start_matches("+ O(x^")
        .trim_end_matches(')')
        .trim_matches(|c| c == '(' || c == ')');
    let bound: usize = inner
        .parse()
        .map_err(|_| err(t.len(), "bad truncation bound in O(x^...)"))?;
    if bound == 0 {
        return Err(err(t.len(), "truncation bound must be positive"));
    }
    let order = bound - 1;
    let mut coeffs = vec![Rational::zero(); order + 1];
    // Split the body into signed terms.
    let body = body.trim();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for (i, ch) in body.chars().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && i > 0 && !cur.trim().is_empty() => {
                terms.push(cur.clone());
                cur.clear();
                if ch == '-' {
                    cur.push('-');
                }
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        terms.push(cur);
    }
    for term in terms {
        let term = term.replace(' ', "");
        if term.is_empty() {
            continue;
        }
        let (coeff_str, power) = if let Some(i) = term.find("*x^") {
            let p: usize = term[i + 3..]
                .parse()
                .map_err(|_| err(0, "bad power in series term"))?;
            (term[..i].to_string(), p)
        } else if let Some(stripped) = term.strip_suffix("*x") {
            (stripped.to_string(), 1)
        } else if let Some(i) = term.find("x^") {
            let p: usize = term[i + 2..]
                .parse()
                .map_err(|_| err(0, "bad power in series term"))?;
            let c = &term[..i];
            (if c == "-" { "-1".into() } else { "1".into() }, p)
        } else if term.ends_with('x') {
            let c = &term[..term.len() - 1];
            (
                if c.is_empty() || c == "-" {
                    format!("{c}1")
                } else {
                    c.to_string()
                },
                1,
            )
        } else {
            (term.clone(), 0)
        };
        let c = parse_rational(&coeff_str)?;
        if power > order {
            return Err(err(0, "term power beyond the stated truncation"));
        }
        coeffs[power] += c;
    }
    Ok(PowerSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, ratio};

    fn qs(cs: &[i64]) -> PowerSeries<Rational> {
        PowerSeries::new(cs.iter().map(|&c| rat(c)).collect())
    }

    /// Long-division oracle: numerator * divisor^{-1} computed by schoolbook
    /// long division (independent of `div`'s recurrence).
    fn long_division_oracle(
        num: &PowerSeries<Rational>,
        den: &PowerSeries<Rational>,
    ) -> PowerSeries<Rational> {
        let n = num.order().min(den.order());
        let mut rem: Vec<Rational> = num.coeffs()[..=n].to_vec();
        let mut out = vec![Rational::zero(); n + 1];
        for k in 0..=n {
            let q = &rem[k] / den.coeff(0);
            out[k] = q.clone();
            for j in k..=n {
                let t = &rem[j] - &q * den.coeff(j - k);
                rem[j] = t;
            }
        }
        PowerSeries::new(out)
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = qs(&[1, 1, 0]);
        let b = qs(&[1, -1, 0]);
        assert_eq!(a.mul(&b), qs(&[1, 0, -1]));
    }

    #[test]
    fn div_geometric() {
        let one = PowerSeries::one(3);
        let den = qs(&[1, -1, 0, 0]);
        assert_eq!(one.div(&den).unwrap(), qs(&[1, 1, 1, 1]));
        assert!(qs(&[1, 0]).div(&qs(&[0, 1])).is_err());
    }

    #[test]
    fn div_matches_long_division_oracle() {
        let num = qs(&[1, 120, 113400]);
        let den = qs(&[1, 120, 0]);
        let expect = long_division_oracle(&num, &den);
        // subtracting 1*(1+120x) leaves exactly 113400*x^2
        assert_eq!(expect, qs(&[1, 0, 113400]));
        assert_eq!(num.div(&den).unwrap(), expect);
        let mul_back = num.div(&den).unwrap().mul(&den);
        assert_eq!(mul_back, num);
    }

    #[test]
    fn exp_log_basics() {
        let x = PowerSeries::<Rational>::x(2);
        let e = x.exp().unwrap();
        assert_eq!(e.coeffs(), &[rat(1), rat(1), ratio(1, 2)]);
        let l = qs(&[1, 1, 0, 0]).log().unwrap();
        assert_eq!(l.coeffs(), &[rat(0), rat(1), ratio(-1, 2), ratio(1, 3)]);
        let s = qs(&[1, 3, 5]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
        assert!(qs(&[1, 0]).exp().is_err());
        assert!(qs(&[2, 0]).log().is_err());
    }

    /// Lagrange-inversion oracle: [q^m] r = (1/m) [x^(m-1)] (x/s)^m.
    fn lagrange_invert(s: &PowerSeries<Rational>) -> PowerSeries<Rational> {
        use num_traits::Zero;
        let n = s.order();
        let s_over_x = PowerSeries::new(s.coeffs()[1..].to_vec());
        let x_over_s = PowerSeries::one(n - 1).div(&s_over_x).unwrap();
        let mut out = vec![Rational::zero(); n + 1];
        let mut pw = PowerSeries::one(n - 1);
        for m in 1..=n {
            pw = pw.mul(&x_over_s);
            out[m] = pw.coeff(m - 1) / rat(m as i64);
        }
        PowerSeries::new(out)
    }

    #[test]
    fn revert_examples() {
        assert_eq!(PowerSeries::<Rational>::x(4).revert().unwrap(), PowerSeries::x(4));

        let s = qs(&[0, 1, 2, 0]);
        let r = s.revert().unwrap();
        assert_eq!(r, qs(&[0, 1, -2, 8]));
        // back-substitution oracle
        assert_eq!(s.compose(&r), PowerSeries::x(3));

        let s2 = qs(&[0, 1, 770, 0, 0]);
        let r2 = s2.revert().unwrap();
        assert_eq!(r2.coeff(2), &rat(-770));
        assert_eq!(r2, lagrange_invert(&s2));

        assert!(qs(&[1, 1]).revert().is_err());
        assert!(qs(&[0, 2]).revert().is_err());
    }

    #[test]
    fn revert_is_an_involution() {
        let s = PowerSeries::new(vec![rat(0), rat(1), ratio(3, 7), rat(-2), ratio(5, 2), rat(9)]);
        let r = s.revert().unwrap();
        assert_eq!(r.revert().unwrap(), s);
    }

    #[test]
    fn parse_print_round_trip() {
        let s = PowerSeries::new(vec![rat(1), rat(0), ratio(-1880, 9), rat(3)]);
        let text = s.to_string();
        assert_eq!(PowerSeries::parse(&text).unwrap(), s);
        let t = PowerSeries::parse("1 + 40*x + 1984*x^2 + O(x^3)").unwrap();
        assert_eq!(t, qs(&[1, 40, 1984]));
    }

    #[test]
    fn hadamard_identity_element() {
        let s = qs(&[1, 2, 6, 20]);
        let ones = qs(&[1, 1, 1, 1]);
        assert_eq!(s.hadamard(&ones), s);
        assert_eq!(s.hadamard(&s).coeffs(), qs(&[1, 4, 36, 400]).coeffs());
    }

    #[test]
    fn binomial_power_square_root() {
        // (1 - 4x)^(-1/2) = sum C(2n,n) x^n
        let s = PowerSeries::binomial_power(&rat(-4), &ratio(-1, 2), 4);
        assert_eq!(s, qs(&[1, 2, 6, 20, 70]));
    }
}
