//! Rational functions num/den over a field scalar, reduced (gcd one) with a
//! monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct RatFunc<T: Scalar> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RatFunc<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Self {
        assert!(!den.is_zero_poly(), "rational function with zero denominator");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(T::one()),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero_poly() {
            self.den = Poly::constant(T::one());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            self.num = self
                .num
                .map(|c| c.clone() / lead.clone());
            self.den = self
                .den
                .map(|c| c.clone() / lead.clone());
        }
    }

    pub fn is_zero_func(&self) -> bool {
        self.num.is_zero_poly()
    }

    /// True when the reduced form is a polynomial.
    pub fn as_poly(&self) -> Option<&Poly<T>> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    pub fn scale(&self, c: &T) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// Formal derivative d/dx by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    /// Evaluation; `None` on a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if !d.is_unit() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl<T: Scalar> Add for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn add(self, rhs: Self) -> RatFunc<T> {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Sub for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn sub(self, rhs: Self) -> RatFunc<T> {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Mul for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn mul(self, rhs: Self) -> RatFunc<T> {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Div for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn div(self, rhs: Self) -> RatFunc<T> {
        assert!(!rhs.num.is_zero_poly(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Scalar> Neg for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Scalar> fmt::Debug for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
