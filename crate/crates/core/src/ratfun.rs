//! Rational functions as unreduced numerator/denominator pairs.
//!
//! Equality is decided by cross-multiplication, never by gcd reduction:
//! a/b = c/d iff a*d = c*b as polynomials. The denominator is normalized so
//! its leading coefficient (canonical term order) is 1, which makes the
//! representation of any fixed construction deterministic. Addition detects
//! equal denominators and keeps them, so sums built over a common
//! denominator do not blow up.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::poly::{MultiPoly, Rat, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Build `num/den`. Panics if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_poly(MultiPoly::from_int(n))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Scale so the denominator's leading coefficient is 1; collapse the
    /// canonical zero to 0/1.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return;
        }
        let lc = self.den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Cross-multiplication equality: a.num*b.den = b.num*a.den.
    pub fn eq_cross(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// The polynomial this function equals, when the denominator divides
    /// the numerator exactly.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.exact_div(&self.den)
    }

    pub fn recip(&self) -> RationalFunction {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction::new(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &Rat) -> RationalFunction {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RationalFunction {
        RationalFunction::new(&self.num * p, self.den.clone())
    }

    /// Formal derivative in a formal variable, by the quotient rule.
    pub fn diff_univar(&self, v: VarId) -> Result<RationalFunction, Error> {
        if !v.is_formal() {
            return Err(Error::NotFormalVariable(v));
        }
        let dn = self.num.diff(v);
        let dd = self.den.diff(v);
        if dd.is_zero() {
            // Denominator free of v: differentiate the numerator only.
            return Ok(RationalFunction::new(dn, self.den.clone()));
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Ok(RationalFunction::new(num, den))
    }

    /// Substitute a polynomial for a variable in both parts. Errors if the
    /// substituted denominator vanishes.
    pub fn subst_poly(&self, v: VarId, value: &MultiPoly) -> Result<RationalFunction, Error> {
        let den = self.den.subst_poly(v, value);
        if den.is_zero() {
            return Err(Error::DenominatorVanished);
        }
        Ok(RationalFunction::new(self.num.subst_poly(v, value), den))
    }

    /// Substitute a rational constant for a variable (valid for q).
    pub fn subst_rat(&self, v: VarId, value: &Rat) -> Result<RationalFunction, Error> {
        let den = self.den.subst_rat(v, value)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanished);
        }
        Ok(RationalFunction::new(self.num.subst_rat(v, value)?, den))
    }

    /// Exact evaluation; errors if the denominator vanishes at the point.
    pub fn eval(&self, point: &BTreeMap<VarId, Rat>) -> Result<Rat, Error> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanished);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// All variables occurring in numerator or denominator.
    pub fn variables(&self) -> alloc::vec::Vec<VarId> {
        let mut vars = self.num.variables();
        for v in self.den.variables() {
            if let Err(pos) = vars.binary_search(&v) {
                vars.insert(pos, v);
            }
        }
        vars
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            alloc::format!("({}) / ({})", self.num.render(), self.den.render())
        }
    }
}

/// Convenience for the spec-level operation name.
pub fn ratfun_eq(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.eq_cross(b)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn mu(i: usize) -> MultiPoly {
        MultiPoly::var(VarId::mu(i))
    }

    fn nu(j: usize) -> MultiPoly {
        MultiPoly::var(VarId::nu(j))
    }

    #[test]
    fn cancellation_without_gcd() {
        let a = RationalFunction::new(mu(0), mu(0));
        assert!(ratfun_eq(&a, &RationalFunction::one()));
    }

    #[test]
    fn factored_quotient_equality() {
        // (mu1^2 - nu1^2)/(mu1 - nu1) = mu1 + nu1
        let num = &(&mu(0) * &mu(0)) - &(&nu(0) * &nu(0));
        let lhs = RationalFunction::new(num, &mu(0) - &nu(0));
        let rhs = RationalFunction::from_poly(&mu(0) + &nu(0));
        assert!(ratfun_eq(&lhs, &rhs));
    }

    #[test]
    fn distinct_monomials_differ() {
        let a = RationalFunction::from_poly(MultiPoly::q_pow(1));
        let b = RationalFunction::from_poly(MultiPoly::q_pow(-1));
        assert!(!ratfun_eq(&a, &b));
    }

    #[test]
    fn quotient_rule_simple_pole() {
        // d/dy 1/(1 - mu1 y) = mu1/(1 - mu1 y)^2
        let y = VarId::y();
        let den = &MultiPoly::one() - &(&mu(0) * &MultiPoly::var(y));
        let f = RationalFunction::new(MultiPoly::one(), den.clone());
        let df = f.diff_univar(y).unwrap();
        let expect = RationalFunction::new(mu(0), &den * &den);
        assert!(ratfun_eq(&df, &expect));
    }

    #[test]
    fn derivative_of_constant_and_power() {
        let y = VarId::y();
        let c = RationalFunction::from_poly(mu(0));
        assert!(c.diff_univar(y).unwrap().is_zero());
        let y2 = RationalFunction::from_poly(MultiPoly::var_pow(y, 2));
        let expect = RationalFunction::from_poly(MultiPoly::var(y).scale(&rat_int(2)));
        assert!(ratfun_eq(&y2.diff_univar(y).unwrap(), &expect));
    }

    #[test]
    fn diff_rejects_spectral_variables() {
        let f = RationalFunction::from_poly(mu(0));
        assert_eq!(
            f.diff_univar(VarId::mu(0)),
            Err(Error::NotFormalVariable(VarId::mu(0)))
        );
    }

    #[test]
    fn common_denominator_fast_path() {
        let d = &mu(0) - &nu(0);
        let a = RationalFunction::new(mu(0), d.clone());
        let b = RationalFunction::new(nu(0), d.clone());
        let s = &a + &b;
        assert_eq!(s.den(), &d);
    }
}
