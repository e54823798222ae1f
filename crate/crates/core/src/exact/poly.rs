//! Dense univariate polynomials over a [`Scalar`], kept in canonical trimmed
//! form (no trailing zero coefficient; the zero polynomial has degree `None`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{QuadExt, Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Poly<T: Scalar> {
    /// Coefficient of x^i at index i; trimmed.
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero_poly() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c*x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The variable x.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Degree, `None` for the zero polynomial ("minus infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate with coefficients lifted into another scalar type.
    pub fn eval_in<U: Scalar>(&self, x: &U, lift: impl Fn(&T) -> U) -> U {
        let mut acc = U::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero_poly();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Formal derivative d/dx.
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// Theta action x d/dx (coefficientwise k * c_k).
    pub fn theta_action(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// Composition p(x + c), by Horner in (x + c).
    pub fn compose_shift(&self, c: &T) -> Self {
        let shift = Poly::new(vec![c.clone(), T::one()]);
        let mut acc = Poly::zero_poly();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(a.clone());
        }
        acc
    }

    /// Composition p(-x).
    pub fn compose_neg(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
                .collect(),
        )
    }

    /// Synthetic division by (x - r): returns (quotient, remainder value).
    pub fn div_linear(&self, r: &T) -> (Self, T) {
        let mut q = vec![T::zero(); self.coeffs.len().saturating_sub(1)];
        let mut carry = T::zero();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let v = c.clone() + carry.clone() * r.clone();
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        (Poly::zero_poly(), T::zero())
    }

    /// Euclidean division; divisor leading coefficient must be a unit.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        assert!(lead.is_unit(), "divisor leading coefficient must be a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero_poly(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quot[k - d] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = rem[k - d + j].clone() - c.clone() * dc.clone();
                rem[k - d + j] = t;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd (field scalars only).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Divide through by the leading coefficient.
    pub fn into_monic(self) -> Self {
        match self.leading() {
            None => self,
            Some(l) => {
                let l = l.clone();
                Poly::new(self.coeffs.into_iter().map(|c| c / l.clone()).collect())
            }
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::constant(T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k) + rhs.coeff(k))
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k) - rhs.coeff(k))
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero_poly() || rhs.is_zero_poly() {
            return Poly::zero_poly();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.format_with_var("x"))
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_var("x"))
    }
}

impl<T: Scalar> Poly<T> {
    /// Renders in descending powers, e.g. `-3125*T^4 - 120`.
    pub fn format_with_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let one = T::one();
        let minus_one = -T::one();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let unit_mag = *c == one || *c == minus_one;
            match (k, unit_mag) {
                (0, _) => out.push_str(&mag),
                (1, true) => out.push_str(var),
                (1, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(var);
                }
                (_, true) => out.push_str(&format!("{var}^{k}")),
                (_, false) => out.push_str(&format!("{mag}*{var}^{k}")),
            }
        }
        out
    }
}

/// Rational roots of a rational-coefficient polynomial, with multiplicity,
/// by the rational-root theorem followed by deflation. Returns the roots and
/// the (rational-root-free) residual factor.
pub fn rational_roots(p: &Poly<Rational>) -> (Vec<Rational>, Poly<Rational>) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Signed;

    let mut roots = Vec::new();
    let mut cur = p.clone();
    if cur.is_zero_poly() {
        return (roots, cur);
    }
    // Strip roots at zero first.
    while cur.degree().is_some() && cur.coeff(0).is_zero() {
        roots.push(Rational::zero());
        let (q, _) = cur.div_linear(&Rational::zero());
        cur = q;
    }
    while cur.degree().unwrap_or(0) >= 1 {
        // Clear denominators to an integer polynomial.
        let mut den = BigInt::one();
        for c in cur.coeffs() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = cur
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let trailing = ints.iter().find(|c| !c.is_zero()).unwrap().abs();
        let leading = ints.last().unwrap().abs();
        let mut found = None;
        'search: for pd in divisors(&trailing) {
            for qd in divisors(&leading) {
                for sign in [1i64, -1] {
                    let cand = Rational::new(&pd * BigInt::from(sign), qd.clone());
                    if cur.eval(&cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                let (q, rem) = cur.div_linear(&r);
                debug_assert!(rem.is_zero());
                roots.push(r);
                cur = q;
            }
            None => break,
        }
    }
    roots.sort();
    (roots, cur)
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut divs = vec![BigInt::one()];
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    // Trial division; catalog coefficients are smooth.
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            let mut powers = vec![BigInt::one()];
            while (&rest % &p).is_zero() {
                rest /= &p;
                powers.push(powers.last().unwrap() * &p);
            }
            divs = divs
                .iter()
                .flat_map(|d| powers.iter().map(move |q| d * q))
                .collect();
        }
        p += 1;
        if p.bits() > 22 {
            break; // give up on large prime factors; remainder handled below
        }
    }
    if rest > BigInt::one() {
        let more: Vec<BigInt> = divs.iter().map(|d| d * &rest).collect();
        divs.extend(more);
    }
    divs.sort();
    divs.dedup();
    divs
}

/// Roots of a monic rational quadratic as a conjugate pair in the quadratic
/// extension Q[t]/(t^2 - disc); `None` when the roots are rational.
pub fn quadratic_roots(p: &Poly<Rational>) -> Option<(QuadExt, QuadExt)> {
    assert_eq!(p.degree(), Some(2));
    let a = p.coeff(2);
    let b = p.coeff(1) / a.clone();
    let c = p.coeff(0) / a;
    let disc = &b * &b - Rational::from_int(4) * &c;
    if is_rational_square(&disc).is_some() {
        return None;
    }
    let t = QuadExt::sqrt_of(disc);
    let half = Rational::new(1.into(), 2.into());
    let mb = QuadExt::constant(-b * &half, t.modulus.clone());
    let ht = QuadExt::new(Rational::zero(), half, t.modulus.clone());
    Some((mb.clone() + ht.clone(), mb - ht))
}

/// `Some(sqrt)` when r is the square of a rational.
pub fn is_rational_square(r: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}
