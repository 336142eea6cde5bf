//! Classical and supersymmetric symmetric-function layer.
//!
//! - q-numbers `k_q = (q^k - q^-k)/(q - q^-1)` as expanded Laurent
//!   polynomials;
//! - elementary, complete and power-sum symmetric polynomials on scaled
//!   alphabets (the scaling prefactor is carried by the alphabet, matching
//!   the constant rescalings `q^-1 mu`, `-q nu`, `q t` of the super
//!   calculus);
//! - generating series E, H, P and their super analogues A, S, Pi;
//! - Jacobi-Trudi determinants over an arbitrary h-provider, used to extend
//!   the spectral homomorphism from single-row Schur functions to all of
//!   them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::poly::{rat_int, Monomial, MultiPoly, Rat, VarId};
use crate::ratfun::RationalFunction;
use crate::series::TruncatedSeries;

/// An ordered list of variables together with a single invertible monomial
/// prefactor c*q^d. `e_k`, `h_k`, `p_k` of the alphabet are the symmetric
/// polynomials in the scaled variables (prefactor * var).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    vars: Vec<VarId>,
    prefactor: MultiPoly,
}

impl Alphabet {
    /// Unscaled alphabet.
    pub fn plain(vars: Vec<VarId>) -> Self {
        Alphabet { vars, prefactor: MultiPoly::one() }
    }

    /// Alphabet with scalar prefactor `c * q^d`.
    pub fn scaled(prefactor: MultiPoly, vars: Vec<VarId>) -> Self {
        assert_eq!(prefactor.num_terms(), 1, "prefactor must be a single monomial");
        Alphabet { vars, prefactor }
    }

    /// The mu variables of a rank-(m|n) context.
    pub fn mu_vars(m: usize) -> Vec<VarId> {
        (0..m).map(VarId::mu).collect()
    }

    /// The nu variables of a rank-(m|n) context.
    pub fn nu_vars(n: usize) -> Vec<VarId> {
        (0..n).map(VarId::nu).collect()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn prefactor(&self) -> &MultiPoly {
        &self.prefactor
    }

    pub fn size(&self) -> usize {
        self.vars.len()
    }

    /// Same variables, negated prefactor: the alphabet `-X`.
    pub fn negated(&self) -> Alphabet {
        Alphabet {
            vars: self.vars.clone(),
            prefactor: -&self.prefactor,
        }
    }
}

/// The q-number k_q as an expanded Laurent polynomial:
/// `q^(k-1) + q^(k-3) + ... + q^(1-k)` for k >= 1, with 0_q = 0 and
/// (-k)_q = -(k_q).
pub fn q_number(k: i64) -> MultiPoly {
    if k == 0 {
        return MultiPoly::zero();
    }
    if k < 0 {
        return -&q_number(-k);
    }
    let mut out = MultiPoly::zero();
    let mut e = k - 1;
    while e >= 1 - k {
        out.add_assign_term(Monomial::var(VarId::q(), e), Rat::one());
        e -= 2;
    }
    out
}

/// Elementary symmetric polynomial e_k of the (scaled) alphabet.
/// e_0 = 1; e_k = 0 for k > |A|.
pub fn elem_sym(k: usize, alphabet: &Alphabet) -> MultiPoly {
    if k == 0 {
        return MultiPoly::one();
    }
    if k > alphabet.size() {
        return MultiPoly::zero();
    }
    // Sum over k-subsets, then scale by prefactor^k (e_k is homogeneous).
    let mut sum = MultiPoly::zero();
    let vars = alphabet.vars();
    let mut choice: Vec<usize> = (0..k).collect();
    loop {
        let mut mono = Monomial::unit();
        for &i in &choice {
            mono = mono.mul(&Monomial::var(vars[i], 1));
        }
        sum.add_assign_term(mono, Rat::one());
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return &sum * &alphabet.prefactor().pow(k as u32);
            }
            i -= 1;
            if choice[i] != i + vars.len() - k {
                break;
            }
        }
        choice[i] += 1;
        for j in i + 1..k {
            choice[j] = choice[j - 1] + 1;
        }
    }
}

/// Complete homogeneous symmetric polynomial h_k of the (scaled) alphabet.
/// h_0 = 1; h_k of the empty alphabet is 0 for k >= 1.
pub fn complete_sym(k: usize, alphabet: &Alphabet) -> MultiPoly {
    if k == 0 {
        return MultiPoly::one();
    }
    if alphabet.size() == 0 {
        return MultiPoly::zero();
    }
    // Multisets of size k over the variables: recursive accumulation.
    let vars = alphabet.vars();
    let mut sum = MultiPoly::zero();
    fn rec(vars: &[VarId], start: usize, left: usize, mono: &Monomial, sum: &mut MultiPoly) {
        if left == 0 {
            sum.add_assign_term(mono.clone(), Rat::one());
            return;
        }
        for i in start..vars.len() {
            rec(vars, i, left - 1, &mono.mul(&Monomial::var(vars[i], 1)), sum);
        }
    }
    rec(vars, 0, k, &Monomial::unit(), &mut sum);
    &sum * &alphabet.prefactor().pow(k as u32)
}

/// Power sum p_k = sum (prefactor * x_i)^k, k >= 1.
pub fn power_sum_classical(k: usize, alphabet: &Alphabet) -> MultiPoly {
    assert!(k >= 1, "power sums start at k = 1");
    let mut sum = MultiPoly::zero();
    for &v in alphabet.vars() {
        sum.add_assign_term(Monomial::var(v, k as i64), Rat::one());
    }
    &sum * &alphabet.prefactor().pow(k as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenSeries {
    /// E(x|t) = sum e_k t^k = prod (1 + x_i t)
    E,
    /// H(x|t) = sum h_k t^k = prod (1 - x_i t)^-1
    H,
    /// P(x|t) = sum p_k t^(k-1)
    P,
}

/// Generating series of e/h/p in the formal variable t, truncated at
/// `order`. P's coefficient of t^(k-1) is p_k.
pub fn gen_series(which: GenSeries, alphabet: &Alphabet, order: usize) -> TruncatedSeries {
    let t = VarId::t();
    let coeffs: Vec<RationalFunction> = (0..=order)
        .map(|k| {
            let p = match which {
                GenSeries::E => elem_sym(k, alphabet),
                GenSeries::H => complete_sym(k, alphabet),
                GenSeries::P => power_sum_classical(k + 1, alphabet),
            };
            RationalFunction::from_poly(p)
        })
        .collect();
    TruncatedSeries::from_coeffs(t, coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperSeries {
    /// A(x,y|t) = E(x|t) H(-y|t)
    A,
    /// S(x,y|t) = H(x|t) E(-y|t)
    S,
    /// Pi(x,y|t) = P(x|t) - P(y|t)
    Pi,
}

/// Super generating series on a pair of alphabets.
pub fn super_series(
    which: SuperSeries,
    x: &Alphabet,
    y: &Alphabet,
    order: usize,
) -> TruncatedSeries {
    match which {
        SuperSeries::A => gen_series(GenSeries::E, x, order)
            .mul(&gen_series(GenSeries::H, &y.negated(), order))
            .expect("same variable and order"),
        SuperSeries::S => gen_series(GenSeries::H, x, order)
            .mul(&gen_series(GenSeries::E, &y.negated(), order))
            .expect("same variable and order"),
        SuperSeries::Pi => gen_series(GenSeries::P, x, order)
            .sub(&gen_series(GenSeries::P, y, order))
            .expect("same variable and order"),
    }
}

/// Jacobi-Trudi determinant `det(h(lambda_i - i + j))` for 1 <= i,j <=
/// l(lambda), expanded exactly over the rational-function field. The
/// provider must return 0 for negative arguments and 1 at 0.
pub fn jacobi_trudi<F>(lambda: &crate::partition::Partition, h_provider: F) -> RationalFunction
where
    F: Fn(i64) -> RationalFunction,
{
    let l = lambda.len();
    if l == 0 {
        return RationalFunction::one();
    }
    let entries: Vec<Vec<RationalFunction>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| h_provider(lambda.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    det(&entries)
}

/// Determinant by expansion along the first remaining column, with
/// memoization on the set of remaining rows (the remaining columns are
/// always a suffix, so the row set determines the minor).
fn det(entries: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = entries.len();
    assert!(n <= 63, "determinant dimension too large for bitmask memo");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: BTreeMap<u64, RationalFunction> = BTreeMap::new();
    memo.insert(0, RationalFunction::one());

    fn minor(
        rows: u64,
        n: usize,
        entries: &[Vec<RationalFunction>],
        memo: &mut BTreeMap<u64, RationalFunction>,
    ) -> RationalFunction {
        if let Some(v) = memo.get(&rows) {
            return v.clone();
        }
        let col = n - rows.count_ones() as usize;
        let mut acc = RationalFunction::zero();
        let mut sign = Rat::one();
        for i in 0..n {
            if rows & (1 << i) == 0 {
                continue;
            }
            let e = &entries[i][col];
            if !e.is_zero() {
                let sub = minor(rows & !(1 << i), n, entries, memo);
                let term = (e * &sub).scale(&sign);
                acc = &acc + &term;
            }
            sign = -sign;
        }
        memo.insert(rows, acc.clone());
        acc
    }

    minor(full, n, entries, &mut memo)
}

/// k! as a rational.
pub fn factorial(k: usize) -> Rat {
    let mut f = Rat::one();
    for i in 2..=k {
        f *= rat_int(i as i64);
    }
    f
}
