//! Truncated formal power series with rational-function coefficients.
//!
//! A series holds coefficients of `1, t, ..., t^K` for one formal variable
//! and never reads beyond its truncation order. Binary operations require
//! matching variable and order; truncation is the caller's job (see
//! [`TruncatedSeries::truncated`]).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::poly::{rat_int, VarId};
use crate::ratfun::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    formal: VarId,
    order: usize,
    coeffs: Vec<RationalFunction>,
}

impl TruncatedSeries {
    pub fn zero(formal: VarId, order: usize) -> Self {
        assert!(formal.is_formal(), "series variable must be formal");
        TruncatedSeries {
            formal,
            order,
            coeffs: vec![RationalFunction::zero(); order + 1],
        }
    }

    pub fn one(formal: VarId, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(formal, order);
        s.coeffs[0] = RationalFunction::one();
        s
    }

    pub fn from_coeffs(formal: VarId, coeffs: Vec<RationalFunction>) -> Self {
        assert!(formal.is_formal(), "series variable must be formal");
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        TruncatedSeries {
            formal,
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn formal(&self) -> VarId {
        self.formal
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &RationalFunction {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    fn check_compat(&self, other: &Self) -> Result<(), Error> {
        if self.formal != other.formal {
            return Err(Error::FormalVarMismatch);
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries::from_coeffs(self.formal, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries::from_coeffs(self.formal, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        TruncatedSeries::from_coeffs(self.formal, coeffs)
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let mut coeffs = vec![RationalFunction::zero(); self.order + 1];
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        Ok(TruncatedSeries::from_coeffs(self.formal, coeffs))
    }

    /// Multiply every coefficient by a scalar rational function.
    pub fn scale(&self, c: &RationalFunction) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        TruncatedSeries::from_coeffs(self.formal, coeffs)
    }

    /// Substitute t -> c*t for an invertible scalar c: coefficient k picks
    /// up a factor c^k.
    pub fn compose_scale(&self, c: &RationalFunction) -> Self {
        let mut power = RationalFunction::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if k > 0 {
                    power = &power * c;
                }
                a * &power
            })
            .collect();
        TruncatedSeries::from_coeffs(self.formal, coeffs)
    }

    /// Drop coefficients beyond `order` (which must not exceed the current
    /// order).
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        TruncatedSeries::from_coeffs(self.formal, self.coeffs[..=order].to_vec())
    }

    /// Termwise derivative d/dt; output order drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order >= 1, "derivative needs order >= 1");
        let coeffs = (1..=self.order)
            .map(|k| self.coeffs[k].scale(&rat_int(k as i64)))
            .collect();
        TruncatedSeries::from_coeffs(self.formal, coeffs)
    }

    /// Logarithmic derivative a'/a of a series with constant term 1,
    /// through order K-1. Uses the recursion a' = (a'/a) * a coefficientwise.
    pub fn log_derivative(&self) -> Result<Self, Error> {
        if !crate::ratfun::ratfun_eq(&self.coeffs[0], &RationalFunction::one()) {
            return Err(Error::NonUnitConstantTerm);
        }
        assert!(self.order >= 1, "log-derivative needs order >= 1");
        // a_0 equals 1 but may be represented as a nontrivial quotient.
        let a0_inv = self.coeffs[0].recip();
        let mut b: Vec<RationalFunction> = Vec::with_capacity(self.order);
        for k in 0..self.order {
            // (k+1) a_{k+1} = sum_{i=0}^{k} b_i a_{k-i}.
            let mut rhs = self.coeffs[k + 1].scale(&rat_int((k + 1) as i64));
            for (i, bi) in b.iter().enumerate() {
                rhs = &rhs - &(bi * &self.coeffs[k - i]);
            }
            b.push(&rhs * &a0_inv);
        }
        Ok(TruncatedSeries::from_coeffs(self.formal, b))
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = self.formal;
            let body = c.render();
            match k {
                0 => parts.push(body),
                1 => parts.push(alloc::format!("({body})*{v}")),
                _ => parts.push(alloc::format!("({body})*{v}^{k}")),
            }
        }
        if parts.is_empty() {
            parts.push(String::from("0"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
