//! Sparse multivariate polynomials over exact big rationals.
//!
//! The variable universe is fixed: the deformation parameter `q` (the only
//! variable allowed Laurent, i.e. negative, exponents), the "even" spectral
//! variables `mu1..`, the "odd" spectral variables `nu1..`, and a small set
//! of formal expansion symbols (`t`, `z`, `y`). Terms are kept in a BTreeMap
//! under a graded-lexicographic order on that universe, so iteration, leading
//! terms and text rendering are deterministic.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational coefficient. `num_rational` keeps the invariants
/// (reduced, positive denominator) on construction.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// The deformation parameter; exactly one such variable exists.
    Q,
    /// Even spectral variable mu_{index+1}.
    Mu,
    /// Odd spectral variable nu_{index+1}.
    Nu,
    /// Formal expansion symbol (t, z, y, ...).
    Formal,
}

/// A variable: kind plus index. The index is unused for `Q` and names the
/// formal symbol for `Formal`. The derived ordering (Q, then mu by index,
/// then nu by index, then formals) is the canonical variable order used
/// everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub kind: VarKind,
    pub index: u32,
}

impl VarId {
    pub fn q() -> Self {
        VarId { kind: VarKind::Q, index: 0 }
    }

    pub fn mu(index: usize) -> Self {
        VarId { kind: VarKind::Mu, index: index as u32 }
    }

    pub fn nu(index: usize) -> Self {
        VarId { kind: VarKind::Nu, index: index as u32 }
    }

    pub fn formal(index: usize) -> Self {
        VarId { kind: VarKind::Formal, index: index as u32 }
    }

    /// The generating-function symbol t.
    pub fn t() -> Self {
        VarId::formal(0)
    }

    /// The partial-fraction symbol z.
    pub fn z() -> Self {
        VarId::formal(1)
    }

    /// The reciprocal symbol y = 1/z.
    pub fn y() -> Self {
        VarId::formal(2)
    }

    pub fn is_formal(&self) -> bool {
        self.kind == VarKind::Formal
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Q => write!(f, "q"),
            VarKind::Mu => write!(f, "mu{}", self.index + 1),
            VarKind::Nu => write!(f, "nu{}", self.index + 1),
            VarKind::Formal => match self.index {
                0 => write!(f, "t"),
                1 => write!(f, "z"),
                2 => write!(f, "y"),
                i => write!(f, "f{i}"),
            },
        }
    }
}

/// Exponent vector: sorted by `VarId`, zero exponents never stored.
/// Only `Q` may carry a negative exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, i64)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId, exp: i64) -> Self {
        debug_assert!(exp >= 0 || v.kind == VarKind::Q);
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.0.iter().copied()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Total degree over the non-q variables. The grading part of the term
    /// order ignores q, whose Laurent exponents act as coefficients.
    fn grade(&self) -> i64 {
        self.0
            .iter()
            .filter(|(v, _)| v.kind != VarKind::Q)
            .map(|(_, e)| e)
            .sum()
    }

    /// Product of two monomials: exponents add, zeros drop out.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Whether `other` divides `self` (componentwise exponent comparison,
    /// with implicit zeros). Only meaningful for nonnegative exponents.
    fn divisible_by(&self, other: &Monomial) -> bool {
        other.vars().all(|(v, e)| self.exponent(v) >= e)
    }

    /// `self / other`, assuming divisibility.
    fn div(&self, other: &Monomial) -> Monomial {
        let inv = Monomial(other.0.iter().map(|&(v, e)| (v, -e)).collect());
        self.mul(&inv)
    }
}

/// Graded-lexicographic with q demoted to a tiebreak: total degree over
/// the non-q variables first, then lexicographic over mu/nu/formal
/// exponents in canonical order, then the q exponent. q scalings act like
/// coefficients, so `q^-1*mu1` outranks `q*nu1`. The order is
/// multiplication-compatible and a well-order once q exponents are
/// nonnegative, which exact division relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let q = VarId::q();
        let mut a = self.0.iter().filter(|(v, _)| v.kind != VarKind::Q);
        let mut b = other.0.iter().filter(|(v, _)| v.kind != VarKind::Q);
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (None, None) => break,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // A variable missing on one side has exponent 0 there;
                    // stored exponents are nonzero, so the earlier variable
                    // decides.
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            na = a.next();
                            nb = b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
        self.exponent(q).cmp(&other.exponent(q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. No zero coefficients are stored; the
/// zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(rat_int(n))
    }

    /// The variable `v` itself.
    pub fn var(v: VarId) -> Self {
        MultiPoly::monomial(Monomial::var(v, 1), Rat::one())
    }

    /// `q^e` for any integer e (the only Laurent variable).
    pub fn q_pow(e: i64) -> Self {
        MultiPoly::monomial(Monomial::var(VarId::q(), e), Rat::one())
    }

    /// `v^e` with a nonnegative exponent for non-q variables.
    pub fn var_pow(v: VarId, e: i64) -> Self {
        assert!(e >= 0 || v.kind == VarKind::Q, "negative exponent on {v}");
        MultiPoly::monomial(Monomial::var(v, e), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading (maximal) term in the canonical graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.into_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_term(&mut self, m: Monomial, c: Rat) {
        Self::insert_term(&mut self.terms, m, c);
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// All distinct variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<VarId> {
        let mut out: Vec<VarId> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                if let Err(pos) = out.binary_search(&v) {
                    out.insert(pos, v);
                }
            }
        }
        out
    }

    /// Highest exponent of `v` (0 if absent).
    pub fn degree_in(&self, v: VarId) -> i64 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Lowest exponent of `v` (0 if absent); negative only for q.
    pub fn min_exponent_in(&self, v: VarId) -> i64 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Coefficient of `v^e`, a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: VarId, e: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == e {
                out.add_assign_term(m.div(&Monomial::var(v, e)), c.clone());
            }
        }
        out
    }

    /// Exact evaluation at a point assigning every occurring variable.
    pub fn eval(&self, point: &BTreeMap<VarId, Rat>) -> Result<Rat, Error> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let x = point.get(&v).ok_or(Error::MissingAssignment(v))?;
                if e < 0 {
                    if x.is_zero() {
                        return Err(Error::ZeroBaseNegativeExponent(v));
                    }
                    term *= pow_rat(&(Rat::one() / x), (-e) as u64);
                } else {
                    term *= pow_rat(x, e as u64);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for a variable. Requires all exponents of
    /// `v` to be nonnegative (so not usable for q; see `subst_rat`).
    pub fn subst_poly(&self, v: VarId, value: &MultiPoly) -> MultiPoly {
        let deg = self.degree_in(v);
        assert!(
            self.min_exponent_in(v) >= 0,
            "substituting into negative exponents of {v}"
        );
        // Horner over the powers of v.
        let mut acc = MultiPoly::zero();
        for e in (0..=deg).rev() {
            acc = &acc * value;
            acc = &acc + &self.coefficient_of(v, e);
        }
        acc
    }

    /// Substitute a nonzero rational constant for a variable; valid for
    /// Laurent exponents.
    pub fn subst_rat(&self, v: VarId, value: &Rat) -> Result<MultiPoly, Error> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let factor = if e == 0 {
                Rat::one()
            } else if e > 0 {
                pow_rat(value, e as u64)
            } else {
                if value.is_zero() {
                    return Err(Error::ZeroBaseNegativeExponent(v));
                }
                pow_rat(&(Rat::one() / value), (-e) as u64)
            };
            out.add_assign_term(m.div(&Monomial::var(v, e)), c * factor);
        }
        Ok(out)
    }

    /// Exchange two variables everywhere.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let swapped: Vec<(VarId, i64)> = m
                .vars()
                .map(|(v, e)| {
                    if v == a {
                        (b, e)
                    } else if v == b {
                        (a, e)
                    } else {
                        (v, e)
                    }
                })
                .collect();
            let mut mono = Monomial::unit();
            for (v, e) in swapped {
                mono = mono.mul(&Monomial::var(v, e));
            }
            out.add_assign_term(mono, c.clone());
        }
        out
    }

    /// Partial derivative with respect to `v` (nonnegative exponents only).
    pub fn diff(&self, v: VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_assign_term(m.div(&Monomial::var(v, 1)), c * rat_int(e));
        }
        out
    }

    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, `None` otherwise. Laurent powers of q are factored out of
    /// both operands first so the division algorithm runs over ordinary
    /// exponents, where the graded-lex order is a well-order.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        // q is invertible, so powers of q never obstruct divisibility:
        // shift both operands to minimal q-exponent 0 (the minimum is
        // additive over products), divide over ordinary exponents, and
        // reattach the net shift.
        let q = VarId::q();
        let sn = self.min_exponent_in(q);
        let sd = divisor.min_exponent_in(q);
        let num = self.mul_monomial(&Monomial::var(q, -sn), &Rat::one());
        let den = divisor.mul_monomial(&Monomial::var(q, -sd), &Rat::one());

        let (dlm, dlc) = den.leading_term()?;
        let dlm = dlm.clone();
        let dlc = dlc.clone();
        let mut rem = num;
        let mut quot = MultiPoly::zero();
        while !rem.is_zero() {
            let (rlm, rlc) = rem.leading_term().expect("nonzero remainder");
            if !rlm.divisible_by(&dlm) {
                return None;
            }
            let qm = rlm.div(&dlm);
            let qc = rlc / &dlc;
            rem = &rem - &den.mul_monomial(&qm, &qc);
            quot.add_assign_term(qm, qc);
        }
        // Reattach the net q shift.
        Some(quot.mul_monomial(&Monomial::var(q, sn - sd), &Rat::one()))
    }

    /// Multiply by a single term.
    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    /// Canonical text rendering, leading term first.
    pub fn render(&self) -> String {
        self.render_truncated(usize::MAX)
    }

    /// Rendering capped at `max_terms` leading terms.
    pub fn render_truncated(&self, max_terms: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == max_terms {
                out.push_str(&alloc::format!(
                    " ... ({} more terms)",
                    self.terms.len() - max_terms
                ));
                break;
            }
            let negative = c.is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(m);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&alloc::format!("({mag})*{mono}"));
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (v, e) in m.vars() {
        if e == 1 {
            parts.push(v.to_string());
        } else {
            parts.push(alloc::format!("{v}^{e}"));
        }
    }
    parts.join("*")
}

pub fn pow_rat(x: &Rat, e: u64) -> Rat {
    let mut result = Rat::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            MultiPoly::insert_term(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            MultiPoly::insert_term(&mut terms, m.clone(), -c.clone());
        }
        MultiPoly { terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = BTreeMap::new();
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                MultiPoly::insert_term(&mut terms, ms.mul(mb), cs * cb);
            }
        }
        MultiPoly { terms }
    }
}
