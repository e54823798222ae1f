//! Scalar types: exact rationals, quadratic extensions of the rationals and
//! truncated epsilon-jets, together with the [`Scalar`] trait that makes the
//! polynomial / series / matrix machinery generic over all of them.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, ExactResult};

/// Exact rational number: arbitrary-precision, always reduced, denominator
/// positive. `num_rational::BigRational` maintains these invariants.
pub type Rational = BigRational;

/// Coefficient ring for the generic exact machinery. Implemented by
/// [`Rational`], [`QuadExt`] and [`Jet4`]; division is partial (panics on a
/// non-unit divisor, which the algorithms never produce).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// True when the element has a multiplicative inverse.
    fn is_unit(&self) -> bool;
}

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

/// Shorthand constructors for rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `-1880/9` style text: optional sign, integer, optional `/` positive
/// integer.
pub fn parse_rational(text: &str) -> ExactResult<Rational> {
    let t = text.trim();
    let bad = |msg: &str| ExactError::Parse {
        pos: 0,
        msg: format!("{msg} in rational literal {t:?}"),
    };
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = match den_str {
        Some(d) => d.trim().parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if !den.is_positive() {
        return Err(bad("denominator must be positive"));
    }
    Ok(BigRational::new(num, den))
}

/// Integer power with negative exponents allowed (base must be a unit then).
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.clone(), (-exp) as usize)
            .recip()
    }
}

/// Element `a + b*t` of the quadratic extension `Q[t]/(t^2 + p t + q)`.
///
/// The modulus is carried by value; mixed-modulus arithmetic is a programming
/// error and panics. All irrational singular points of the catalog live in
/// `Q(sqrt(disc))`, i.e. modulus `t^2 - disc`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    /// Monic modulus t^2 + p t + q as the pair (p, q); irreducible over Q.
    pub modulus: (Rational, Rational),
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, modulus: (Rational, Rational)) -> Self {
        QuadExt { a, b, modulus }
    }

    /// Embeds a rational with the given modulus.
    pub fn constant(a: Rational, modulus: (Rational, Rational)) -> Self {
        QuadExt::new(a, Rational::zero(), modulus)
    }

    /// `sqrt(disc)` as the generator of `Q[t]/(t^2 - disc)`.
    pub fn sqrt_of(disc: Rational) -> Self {
        QuadExt::new(
            Rational::zero(),
            Rational::one(),
            (Rational::zero(), -disc),
        )
    }

    /// Galois conjugate: the other root of the modulus is `-p - t`.
    pub fn conjugate(&self) -> Self {
        let (p, _) = &self.modulus;
        QuadExt::new(
            self.a.clone() - self.b.clone() * p.clone(),
            -self.b.clone(),
            self.modulus.clone(),
        )
    }

    /// Field norm `x * conj(x)` as a rational.
    pub fn norm(&self) -> Rational {
        let (p, q) = &self.modulus;
        // (a + bt)(a - bp - bt) = a^2 - abp + b^2 q
        self.a.clone() * self.a.clone() - self.a.clone() * self.b.clone() * p.clone()
            + self.b.clone() * self.b.clone() * q.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in quadratic extension");
        let c = self.conjugate();
        QuadExt::new(c.a / n.clone(), c.b / n, self.modulus.clone())
    }

    fn same_modulus(&self, other: &Self) -> (Rational, Rational) {
        if self.b.is_zero() {
            return other.modulus.clone();
        }
        if other.b.is_zero() {
            return self.modulus.clone();
        }
        assert_eq!(
            self.modulus, other.modulus,
            "mixed quadratic-extension moduli"
        );
        self.modulus.clone()
    }

    /// Decimal approximation of the two real/complex values; used only for
    /// display. Returns (real part, imaginary part) of `a + b*root`.
    pub fn approx(&self) -> (f64, f64) {
        let (p, q) = &self.modulus;
        let pf = p.to_f64().unwrap_or(f64::NAN);
        let qf = q.to_f64().unwrap_or(f64::NAN);
        let disc = pf * pf - 4.0 * qf;
        let af = self.a.to_f64().unwrap_or(f64::NAN);
        let bf = self.b.to_f64().unwrap_or(f64::NAN);
        if disc >= 0.0 {
            (af + bf * (-pf + disc.sqrt()) / 2.0, 0.0)
        } else {
            (af + bf * (-pf) / 2.0, bf * (-disc).sqrt() / 2.0)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let (p, q) = &self.modulus;
        if p.is_zero() {
            let d = -q.clone();
            if self.a.is_zero() {
                write!(f, "{}*sqrt({})", self.b, d)
            } else {
                write!(f, "{} + {}*sqrt({})", self.a, self.b, d)
            }
        } else {
            write!(f, "{} + {}*t  (t^2 + {}*t + {} = 0)", self.a, self.b, p, q)
        }
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = self.same_modulus(&rhs);
        QuadExt::new(self.a + rhs.a, self.b + rhs.b, m)
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let m = self.same_modulus(&rhs);
        QuadExt::new(self.a - rhs.a, self.b - rhs.b, m)
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt::new(-self.a, -self.b, self.modulus)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = self.same_modulus(&rhs);
        let (p, q) = m.clone();
        // (a1 + b1 t)(a2 + b2 t), t^2 = -p t - q
        let t2 = self.b.clone() * rhs.b.clone();
        QuadExt::new(
            self.a.clone() * rhs.a.clone() - t2.clone() * q,
            self.a * rhs.b + self.b * rhs.a - t2 * p,
            m,
        )
    }
}

impl Div for QuadExt {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let m = self.same_modulus(&rhs);
        let rhs = QuadExt { modulus: m, ..rhs };
        self * rhs.inv()
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        // Placeholder modulus; absorbed on first arithmetic with a genuine value.
        QuadExt::new(
            Rational::zero(),
            Rational::zero(),
            (Rational::zero(), Rational::one()),
        )
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::new(
            Rational::one(),
            Rational::zero(),
            (Rational::zero(), Rational::one()),
        )
    }
}

impl Scalar for QuadExt {
    fn from_int(n: i64) -> Self {
        QuadExt::new(
            Rational::from_int(n),
            Rational::zero(),
            (Rational::zero(), Rational::one()),
        )
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

/// Truncated jet `c0 + c1*eps + c2*eps^2 + c3*eps^3` modulo `eps^4`.
///
/// The epsilon bound is fixed at 4, the order of the operators whose
/// Frobenius deformation these jets carry; third-order work leaves the top
/// slot unused.
#[derive(Clone, PartialEq)]
pub struct Jet4(pub [Rational; 4]);

impl Jet4 {
    pub fn constant(c: Rational) -> Self {
        Jet4([c, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    /// The jet of `c + eps`.
    pub fn linear(c: Rational) -> Self {
        Jet4([c, Rational::one(), Rational::zero(), Rational::zero()])
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.0[k]
    }

    pub fn inv(&self) -> Self {
        let c0 = &self.0[0];
        assert!(!c0.is_zero(), "jet inverse needs a unit constant term");
        let i0 = c0.recip();
        // Series inversion truncated at eps^4.
        let i1 = -&self.0[1] * &i0 * &i0;
        let i2 = -(&self.0[1] * &i1 + &self.0[2] * &i0) * &i0;
        let i3 = -(&self.0[1] * &i2 + &self.0[2] * &i1 + &self.0[3] * &i0) * &i0;
        Jet4([i0, i1, i2, i3])
    }
}

impl fmt::Debug for Jet4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Jet4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}*e + {}*e^2 + {}*e^3)",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl Add for Jet4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Jet4([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl Sub for Jet4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Jet4([a0 - b0, a1 - b1, a2 - b2, a3 - b3])
    }
}

impl Neg for Jet4 {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        Jet4([-a0, -a1, -a2, -a3])
    }
}

impl Mul for Jet4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for i in 0..4 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..4 - i {
                out[i + j] += &a[i] * &b[j];
            }
        }
        Jet4(out)
    }
}

impl Div for Jet4 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Zero for Jet4 {
    fn zero() -> Self {
        Jet4::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl One for Jet4 {
    fn one() -> Self {
        Jet4::constant(Rational::one())
    }
}

impl Scalar for Jet4 {
    fn from_int(n: i64) -> Self {
        Jet4::constant(Rational::from_int(n))
    }

    fn is_unit(&self) -> bool {
        !self.0[0].is_zero()
    }
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for k in 0..n {
        acc *= a + Rational::from_int(k as i64);
    }
    acc
}

/// Generalized binomial coefficient `C(r, k)` for rational `r`.
pub fn binomial_rational(r: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= r - Rational::from_int(j as i64);
        acc /= Rational::from_int((j + 1) as i64);
    }
    acc
}

/// Integer binomial with the empty convention `C(m, k) = 0` for `m < 0` or
/// `k > m`.
pub fn binomial_int(m: i64, k: i64) -> Rational {
    if m < 0 || k < 0 || k > m {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= Rational::from_int(m - j);
        acc /= Rational::from_int(j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-1880/9").unwrap();
        assert_eq!(r, ratio(-1880, 9));
        assert_eq!(r.to_string(), "-1880/9");
        assert_eq!(parse_rational("42").unwrap(), rat(42));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn quadext_field_ops() {
        // t = sqrt(2)
        let t = QuadExt::sqrt_of(rat(2));
        let x = QuadExt::new(rat(1), rat(3), t.modulus.clone()); // 1 + 3 sqrt2
        let y = x.clone() * x.clone(); // 19 + 6 sqrt2
        assert_eq!(y.a, rat(19));
        assert_eq!(y.b, rat(6));
        let z = y / x.clone();
        assert_eq!(z, x);
        assert_eq!(x.clone() * x.inv(), QuadExt::one() * QuadExt::constant(rat(1), t.modulus));
    }

    #[test]
    fn jet_mul_div_round_trip() {
        let a = Jet4([rat(2), rat(1), rat(5), ratio(-1, 3)]);
        let b = Jet4([rat(3), rat(-4), rat(0), rat(7)]);
        let c = a.clone() * b.clone();
        assert_eq!(c.clone() / b, a);
        let inv4 = Jet4::linear(rat(3)).inv(); // 1/(3+eps)
        assert_eq!(inv4.0[0], ratio(1, 3));
        assert_eq!(inv4.0[1], ratio(-1, 9));
        assert_eq!(inv4.0[2], ratio(1, 27));
        assert_eq!(inv4.0[3], ratio(-1, 81));
    }

    #[test]
    fn binomial_edge_conventions() {
        assert_eq!(binomial_int(-1, 0), rat(0));
        assert_eq!(binomial_int(5, 2), rat(10));
        assert_eq!(binomial_int(3, 5), rat(0));
        assert_eq!(binomial_rational(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(pochhammer(&ratio(1, 5), 2), ratio(6, 25));
    }
}
