//! Spectral images for the GL(m|n) characteristic subalgebra: the
//! single-column and single-row images a_k, s_k, the auxiliary power sums
//! pi_k on the scaled alphabets, the weighted power sums p_k with their
//! closed-form weights d_i and d~_j, the residue function f(z), the
//! derivative function u(y), and the Schur-function images obtained by
//! extending the homomorphism through Jacobi-Trudi determinants.
//!
//! All spectral variables are algebraically independent, so every
//! denominator built from their pairwise differences is nonzero.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::partition::Partition;
use crate::poly::{MultiPoly, Rat, VarId};
use crate::ratfun::{ratfun_eq, RationalFunction};
use crate::symfunc::{
    complete_sym, elem_sym, factorial, jacobi_trudi, q_number, Alphabet,
};

/// Problem size: m even and n odd spectral variables, plus the series
/// truncation order used by the generating-function identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralContext {
    pub m: usize,
    pub n: usize,
    pub order: usize,
}

impl SpectralContext {
    pub fn new(m: usize, n: usize, order: usize) -> Self {
        SpectralContext { m, n, order }
    }

    /// The alphabet q^-1 mu.
    pub fn scaled_mu(&self) -> Alphabet {
        Alphabet::scaled(MultiPoly::q_pow(-1), Alphabet::mu_vars(self.m))
    }

    /// The alphabet q nu.
    pub fn scaled_nu(&self) -> Alphabet {
        Alphabet::scaled(MultiPoly::q_pow(1), Alphabet::nu_vars(self.n))
    }

    /// The alphabet -q nu.
    pub fn neg_scaled_nu(&self) -> Alphabet {
        self.scaled_nu().negated()
    }

    pub fn mu(&self, i: usize) -> MultiPoly {
        debug_assert!(i < self.m);
        MultiPoly::var(VarId::mu(i))
    }

    pub fn nu(&self, j: usize) -> MultiPoly {
        debug_assert!(j < self.n);
        MultiPoly::var(VarId::nu(j))
    }
}

/// The power-sum weights: d_i on the even variables, d~_j on the odd ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub d: Vec<RationalFunction>,
    pub d_tilde: Vec<RationalFunction>,
}

/// A failed exact check, with enough context to debug it.
#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub what: String,
    pub witness: String,
}

impl CheckFailure {
    fn mismatch(what: &str, lhs: &RationalFunction, rhs: &RationalFunction) -> Self {
        let diff = &(lhs.num() * rhs.den()) - &(rhs.num() * lhs.den());
        CheckFailure {
            what: String::from(what),
            witness: diff.render_truncated(40),
        }
    }
}

/// pi_k = sum_i (q^-1 mu_i)^k - sum_j (q nu_j)^k, k >= 1. The second sum
/// runs over all n odd variables.
pub fn pi_k(k: usize, ctx: &SpectralContext) -> MultiPoly {
    assert!(k >= 1, "pi_k starts at k = 1");
    let mut out = MultiPoly::zero();
    let qk = MultiPoly::q_pow(-(k as i64));
    for i in 0..ctx.m {
        out = &out + &(&qk * &MultiPoly::var_pow(VarId::mu(i), k as i64));
    }
    let qk = MultiPoly::q_pow(k as i64);
    for j in 0..ctx.n {
        out = &out - &(&qk * &MultiPoly::var_pow(VarId::nu(j), k as i64));
    }
    out
}

/// a_k = sum_{r=0..k} e_r(q^-1 mu) h_{k-r}(-q nu); the single-column image.
pub fn a_image(k: usize, ctx: &SpectralContext) -> MultiPoly {
    let x = ctx.scaled_mu();
    let y_neg = ctx.neg_scaled_nu();
    let mut out = MultiPoly::zero();
    for r in 0..=k {
        let e = elem_sym(r, &x);
        if e.is_zero() {
            continue;
        }
        out = &out + &(&e * &complete_sym(k - r, &y_neg));
    }
    out
}

/// s_k = sum_{r=0..k} e_r(-q nu) h_{k-r}(q^-1 mu); the single-row image.
pub fn s_image(k: usize, ctx: &SpectralContext) -> MultiPoly {
    let x = ctx.scaled_mu();
    let y_neg = ctx.neg_scaled_nu();
    let mut out = MultiPoly::zero();
    for r in 0..=k {
        let e = elem_sym(r, &y_neg);
        if e.is_zero() {
            continue;
        }
        out = &out + &(&e * &complete_sym(k - r, &x));
    }
    out
}

/// The closed-form weights:
///
/// d_i   =  q^-1 prod_{p != i} (mu_i - q^-2 mu_p)/(mu_i - mu_p)
///               prod_j (mu_i - q^2 nu_j)/(mu_i - nu_j)
/// d~_j  = -q    prod_i (nu_j - q^-2 mu_i)/(nu_j - mu_i)
///               prod_{p != j} (nu_j - q^2 nu_p)/(nu_j - nu_p)
///
/// Empty products are 1. Each weight is built as an explicit product of
/// linear-factor quotients.
pub fn weights(ctx: &SpectralContext) -> WeightVector {
    assert!(ctx.m + ctx.n >= 1, "weights need at least one spectral variable");
    let q2 = MultiPoly::q_pow(2);
    let q_minus2 = MultiPoly::q_pow(-2);

    let mut d = Vec::with_capacity(ctx.m);
    for i in 0..ctx.m {
        let mut w = RationalFunction::from_poly(MultiPoly::q_pow(-1));
        for p in 0..ctx.m {
            if p == i {
                continue;
            }
            let num = &ctx.mu(i) - &(&q_minus2 * &ctx.mu(p));
            let den = &ctx.mu(i) - &ctx.mu(p);
            w = &w * &RationalFunction::new(num, den);
        }
        for j in 0..ctx.n {
            let num = &ctx.mu(i) - &(&q2 * &ctx.nu(j));
            let den = &ctx.mu(i) - &ctx.nu(j);
            w = &w * &RationalFunction::new(num, den);
        }
        d.push(w);
    }

    let mut d_tilde = Vec::with_capacity(ctx.n);
    for j in 0..ctx.n {
        let mut w = RationalFunction::from_poly(-&MultiPoly::q_pow(1));
        for i in 0..ctx.m {
            let num = &ctx.nu(j) - &(&q_minus2 * &ctx.mu(i));
            let den = &ctx.nu(j) - &ctx.mu(i);
            w = &w * &RationalFunction::new(num, den);
        }
        for p in 0..ctx.n {
            if p == j {
                continue;
            }
            let num = &ctx.nu(j) - &(&q2 * &ctx.nu(p));
            let den = &ctx.nu(j) - &ctx.nu(p);
            w = &w * &RationalFunction::new(num, den);
        }
        d_tilde.push(w);
    }

    WeightVector { d, d_tilde }
}

/// The GL(m|0) weights written out independently of [`weights`]:
/// `d_i = q^-1 prod_{j != i} (mu_i - q^-2 mu_j)/(mu_i - mu_j)`, the known
/// reflection-equation-algebra result that the general formula must reduce
/// to at n = 0.
pub fn weights_gl_m0(m: usize) -> Vec<RationalFunction> {
    let q_minus1 = RationalFunction::from_poly(MultiPoly::q_pow(-1));
    (0..m)
        .map(|i| {
            let mut num = MultiPoly::one();
            let mut den = MultiPoly::one();
            for j in 0..m {
                if j == i {
                    continue;
                }
                let mu_i = MultiPoly::var(VarId::mu(i));
                let mu_j = MultiPoly::var(VarId::mu(j));
                num = &num * &(&mu_i - &(&MultiPoly::q_pow(-2) * &mu_j));
                den = &den * &(&mu_i - &mu_j);
            }
            &q_minus1 * &RationalFunction::new(num, den)
        })
        .collect()
}

/// p_k = sum_i d_i mu_i^k + sum_j d~_j nu_j^k. Returned as a rational
/// function; that it is in fact a polynomial is a theorem, asserted in the
/// test suite rather than baked into the construction.
pub fn p_image(k: usize, ctx: &SpectralContext) -> RationalFunction {
    p_image_with(k, &weights(ctx))
}

/// Weighted power sum with externally supplied weights. Addition order is
/// fixed so every k produces the same denominator, which keeps downstream
/// sums over a common denominator.
pub fn p_image_with(k: usize, w: &WeightVector) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (i, d) in w.d.iter().enumerate() {
        acc = &acc + &d.mul_poly(&MultiPoly::var_pow(VarId::mu(i), k as i64));
    }
    for (j, dt) in w.d_tilde.iter().enumerate() {
        acc = &acc + &dt.mul_poly(&MultiPoly::var_pow(VarId::nu(j), k as i64));
    }
    acc
}

/// f(z) = prod_i (z - q^-2 mu_i)/(z - mu_i) prod_j (z - q^2 nu_j)/(z - nu_j).
pub fn f_of_z(ctx: &SpectralContext) -> RationalFunction {
    assert!(ctx.m + ctx.n >= 1);
    let z = MultiPoly::var(VarId::z());
    let mut f = RationalFunction::one();
    for i in 0..ctx.m {
        let num = &z - &(&MultiPoly::q_pow(-2) * &ctx.mu(i));
        let den = &z - &ctx.mu(i);
        f = &f * &RationalFunction::new(num, den);
    }
    for j in 0..ctx.n {
        let num = &z - &(&MultiPoly::q_pow(2) * &ctx.nu(j));
        let den = &z - &ctx.nu(j);
        f = &f * &RationalFunction::new(num, den);
    }
    f
}

/// f rewritten in the reciprocal variable y = 1/z:
/// prod_i (1 - q^-2 mu_i y)/(1 - mu_i y) prod_j (1 - q^2 nu_j y)/(1 - nu_j y).
/// Regular at y = 0 with value 1.
pub fn f_of_y(ctx: &SpectralContext) -> RationalFunction {
    assert!(ctx.m + ctx.n >= 1);
    let y = MultiPoly::var(VarId::y());
    let one = MultiPoly::one();
    let mut f = RationalFunction::one();
    for i in 0..ctx.m {
        let num = &one - &(&(&MultiPoly::q_pow(-2) * &ctx.mu(i)) * &y);
        let den = &one - &(&ctx.mu(i) * &y);
        f = &f * &RationalFunction::new(num, den);
    }
    for j in 0..ctx.n {
        let num = &one - &(&(&MultiPoly::q_pow(2) * &ctx.nu(j)) * &y);
        let den = &one - &(&ctx.nu(j) * &y);
        f = &f * &RationalFunction::new(num, den);
    }
    f
}

/// u(y) = sum_i q^-1 mu_i / ((1 - mu_i y)(1 - q^-2 mu_i y))
///      - sum_j q nu_j / ((1 - nu_j y)(1 - q^2 nu_j y)).
pub fn u_of_y(ctx: &SpectralContext) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for t in u_terms(ctx) {
        acc = &acc + &t;
    }
    acc
}

/// The m + n simple summands of u(y). Each involves a single spectral
/// variable, so iterated differentiation stays small termwise.
pub fn u_terms(ctx: &SpectralContext) -> Vec<RationalFunction> {
    assert!(ctx.m + ctx.n >= 1);
    let y = MultiPoly::var(VarId::y());
    let one = MultiPoly::one();
    let mut terms = Vec::with_capacity(ctx.m + ctx.n);
    for i in 0..ctx.m {
        let num = &MultiPoly::q_pow(-1) * &ctx.mu(i);
        let f1 = &one - &(&ctx.mu(i) * &y);
        let f2 = &one - &(&(&MultiPoly::q_pow(-2) * &ctx.mu(i)) * &y);
        terms.push(RationalFunction::new(num, &f1 * &f2));
    }
    for j in 0..ctx.n {
        let num = -&(&MultiPoly::q_pow(1) * &ctx.nu(j));
        let f1 = &one - &(&ctx.nu(j) * &y);
        let f2 = &one - &(&(&MultiPoly::q_pow(2) * &ctx.nu(j)) * &y);
        terms.push(RationalFunction::new(num, &f1 * &f2));
    }
    terms
}

/// The ingredients of the partial-fraction expansion of f(z): the
/// function itself and, per pole, the exact residue computed by the
/// substitute-after-cancel rule.
#[derive(Debug, Clone)]
pub struct PartialFractionData {
    pub f: RationalFunction,
    /// (pole variable as polynomial, exact residue, expected residue
    /// (q - q^-1) * pole * weight, pole display name)
    pub poles: Vec<PoleResidue>,
}

#[derive(Debug, Clone)]
pub struct PoleResidue {
    pub pole: MultiPoly,
    pub residue: RationalFunction,
    pub expected: RationalFunction,
    pub name: String,
}

/// Exact residues of f(z) at every pole, paired with the closed-form
/// values (q - q^-1) mu_i d_i and (q - q^-1) nu_j d~_j they must equal.
pub fn partial_fraction_data(ctx: &SpectralContext) -> PartialFractionData {
    let f = f_of_z(ctx);
    let w = weights(ctx);
    let q_diff = &MultiPoly::q_pow(1) - &MultiPoly::q_pow(-1);
    let mut poles = Vec::with_capacity(ctx.m + ctx.n);
    for i in 0..ctx.m {
        let pole = ctx.mu(i);
        poles.push(PoleResidue {
            residue: residue_at(ctx, i, true),
            expected: w.d[i].mul_poly(&(&q_diff * &pole)),
            name: alloc::format!("mu{}", i + 1),
            pole,
        });
    }
    for j in 0..ctx.n {
        let pole = ctx.nu(j);
        poles.push(PoleResidue {
            residue: residue_at(ctx, j, false),
            expected: w.d_tilde[j].mul_poly(&(&q_diff * &pole)),
            name: alloc::format!("nu{}", j + 1),
            pole,
        });
    }
    PartialFractionData { f, poles }
}

/// Sum of simple fractions 1 + sum residue/(z - pole).
pub fn simple_fraction_sum(data: &PartialFractionData) -> RationalFunction {
    let z = VarId::z();
    let mut expansion = RationalFunction::one();
    for p in &data.poles {
        let frac =
            &RationalFunction::new(MultiPoly::one(), &MultiPoly::var(z) - &p.pole) * &p.residue;
        expansion = &expansion + &frac;
    }
    expansion
}

/// Partial-fraction content of f(z): every residue at mu_i equals
/// (q - q^-1) mu_i d_i (and at nu_j equals (q - q^-1) nu_j d~_j), the sum
/// of simple fractions reproduces f(z), f(0) = q^(2(n-m)), and numerator
/// and denominator are monic of the same degree in z (so f -> 1 at
/// infinity).
pub fn partial_fraction_check(ctx: &SpectralContext) -> Result<(), CheckFailure> {
    let data = partial_fraction_data(ctx);
    let z = VarId::z();

    for p in &data.poles {
        if !ratfun_eq(&p.residue, &p.expected) {
            return Err(CheckFailure::mismatch(
                &alloc::format!("residue of f(z) at {}", p.name),
                &p.residue,
                &p.expected,
            ));
        }
    }

    let expansion = simple_fraction_sum(&data);
    if !ratfun_eq(&data.f, &expansion) {
        return Err(CheckFailure::mismatch(
            "partial-fraction expansion of f(z)",
            &data.f,
            &expansion,
        ));
    }

    // f(0) = q^(2(n-m))
    let f0 = data
        .f
        .subst_poly(z, &MultiPoly::zero())
        .expect("poles are nonzero spectral variables");
    let expect0 = RationalFunction::from_poly(MultiPoly::q_pow(2 * (ctx.n as i64 - ctx.m as i64)));
    if !ratfun_eq(&f0, &expect0) {
        return Err(CheckFailure::mismatch("f(0)", &f0, &expect0));
    }

    degree_check(ctx, &data.f).map_err(|witness| CheckFailure {
        what: String::from("behaviour of f(z) at infinity"),
        witness,
    })
}

/// Numerator and denominator of f(z) must share degree m + n in z with
/// equal leading coefficients, so f -> 1 at infinity.
pub fn degree_check(ctx: &SpectralContext, f: &RationalFunction) -> Result<(), String> {
    let z = VarId::z();
    let deg = (ctx.m + ctx.n) as i64;
    let dn = f.num().degree_in(z);
    let dd = f.den().degree_in(z);
    if dn != deg || dd != deg {
        return Err(alloc::format!(
            "num degree {dn}, den degree {dd}, expected {deg}"
        ));
    }
    let lead_num = f.num().coefficient_of(z, deg);
    let lead_den = f.den().coefficient_of(z, deg);
    if lead_num != lead_den {
        return Err(alloc::format!(
            "leading z-coefficients differ: {} vs {}",
            lead_num.render(),
            lead_den.render()
        ));
    }
    Ok(())
}

/// Exact residue of f(z) at the chosen pole: build f with the pole's
/// denominator factor removed, then substitute z = pole.
fn residue_at(ctx: &SpectralContext, index: usize, even: bool) -> RationalFunction {
    let z = MultiPoly::var(VarId::z());
    let mut g = RationalFunction::one();
    for i in 0..ctx.m {
        let num = &z - &(&MultiPoly::q_pow(-2) * &ctx.mu(i));
        if even && i == index {
            g = g.mul_poly(&num);
        } else {
            g = &g * &RationalFunction::new(num, &z - &ctx.mu(i));
        }
    }
    for j in 0..ctx.n {
        let num = &z - &(&MultiPoly::q_pow(2) * &ctx.nu(j));
        if !even && j == index {
            g = g.mul_poly(&num);
        } else {
            g = &g * &RationalFunction::new(num, &z - &ctx.nu(j));
        }
    }
    let pole = if even { ctx.mu(index) } else { ctx.nu(index) };
    g.subst_poly(VarId::z(), &pole)
        .expect("remaining denominator is a product of differences of independent variables")
}

/// d^k u / dy^k at y = 0 must equal k! (k+1)_q pi_{k+1} for 0 <= k <= kmax.
/// Differentiation is iterated termwise over the simple summands of u.
pub fn u_derivatives_check(ctx: &SpectralContext, kmax: usize) -> Result<(), CheckFailure> {
    for k in 0..=kmax {
        check_u_derivative(ctx, k)?;
    }
    Ok(())
}

/// d^k u / dy^k evaluated at y = 0, computed by iterating the quotient
/// rule termwise over the simple summands.
pub fn u_derivative_at_zero(ctx: &SpectralContext, k: usize) -> RationalFunction {
    let y = VarId::y();
    let mut value = RationalFunction::zero();
    for term in u_terms(ctx) {
        let mut d = term;
        for _ in 0..k {
            d = d.diff_univar(y).expect("y is formal");
        }
        let at0 = d
            .subst_poly(y, &MultiPoly::zero())
            .expect("denominators are 1 at y = 0");
        value = &value + &at0;
    }
    value
}

/// The closed form k! (k+1)_q pi_{k+1} that d^k u / dy^k |_{y=0} must equal.
pub fn u_derivative_closed_form(ctx: &SpectralContext, k: usize) -> RationalFunction {
    RationalFunction::from_poly(
        (&q_number(k as i64 + 1) * &pi_k(k + 1, ctx)).scale(&factorial(k)),
    )
}

/// The single-order check behind [`u_derivatives_check`].
pub fn check_u_derivative(ctx: &SpectralContext, k: usize) -> Result<(), CheckFailure> {
    let value = u_derivative_at_zero(ctx, k);
    let expect = u_derivative_closed_form(ctx, k);
    if !ratfun_eq(&value, &expect) {
        return Err(CheckFailure::mismatch(
            &alloc::format!("u_{k}(0) vs {k}! ({})_q pi_{}", k + 1, k + 1),
            &value,
            &expect,
        ));
    }
    Ok(())
}

/// Image of the Schur function s_lambda under the spectral homomorphism:
/// the Jacobi-Trudi determinant over the single-row images.
pub fn schur_image(lambda: &Partition, ctx: &SpectralContext) -> RationalFunction {
    jacobi_trudi(lambda, |k| {
        if k < 0 {
            RationalFunction::zero()
        } else {
            RationalFunction::from_poly(s_image(k as usize, ctx))
        }
    })
}

/// The factorized image of the rectangle (n^m):
/// prod_i prod_j (q^-1 mu_i - q nu_j).
pub fn rectangle_product(ctx: &SpectralContext) -> MultiPoly {
    let mut prod = MultiPoly::one();
    for i in 0..ctx.m {
        for j in 0..ctx.n {
            let factor = &(&MultiPoly::q_pow(-1) * &ctx.mu(i))
                - &(&MultiPoly::q_pow(1) * &ctx.nu(j));
            prod = &prod * &factor;
        }
    }
    prod
}

/// Images of the Cayley-Hamilton coefficient partitions. For 0 <= k <= m
/// the image of [m|n]^k must equal s_[m|n] e_k(q^-1 mu); for 0 <= r <= n
/// the image of [m|n]_r must equal s_[m|n] e_r(-q nu), where s_[m|n] is
/// the rectangle product. Returns the verified (partition, image) pairs.
pub fn ch_coeff_images(
    ctx: &SpectralContext,
) -> Result<Vec<(Partition, RationalFunction)>, CheckFailure> {
    assert!(ctx.m >= 1 && ctx.n >= 1, "Cayley-Hamilton images need m, n >= 1");
    let base = rectangle_product(ctx);
    let x = ctx.scaled_mu();
    let y_neg = ctx.neg_scaled_nu();
    let mut out = Vec::new();

    for k in 0..=ctx.m {
        let (upper, _) = crate::partition::ch_partitions(ctx.m, ctx.n, k as i64, 0)
            .expect("k within 0..=m");
        let image = schur_image(&upper, ctx);
        let product = RationalFunction::from_poly(&base * &elem_sym(k, &x));
        if !ratfun_eq(&image, &product) {
            return Err(CheckFailure::mismatch(
                &alloc::format!("image of [{}|{}]^{} = {}", ctx.m, ctx.n, k, upper),
                &image,
                &product,
            ));
        }
        out.push((upper, image));
    }
    for r in 0..=ctx.n {
        let (_, lower) = crate::partition::ch_partitions(ctx.m, ctx.n, 0, r as i64)
            .expect("r within 0..=n");
        let image = schur_image(&lower, ctx);
        let product = RationalFunction::from_poly(&base * &elem_sym(r, &y_neg));
        if !ratfun_eq(&image, &product) {
            return Err(CheckFailure::mismatch(
                &alloc::format!("image of [{}|{}]_{} = {}", ctx.m, ctx.n, r, lower),
                &image,
                &product,
            ));
        }
        out.push((lower, image));
    }
    Ok(out)
}

/// p_0 = sum d_i + sum d~_j, which the trace identity pins to
/// q^(n-m) (m-n)_q.
pub fn p0_closed_form(ctx: &SpectralContext) -> MultiPoly {
    let shift = MultiPoly::q_pow(ctx.n as i64 - ctx.m as i64);
    &shift * &q_number(ctx.m as i64 - ctx.n as i64)
}

/// q = 1 specialization of a rational function.
pub fn classical_limit(f: &RationalFunction) -> RationalFunction {
    f.subst_rat(VarId::q(), &Rat::one())
        .expect("q = 1 never kills a difference of independent variables")
}

/// The classical supertrace power sum sum mu_i^k - sum nu_j^k.
pub fn supertrace_power(k: usize, ctx: &SpectralContext) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 0..ctx.m {
        out = &out + &MultiPoly::var_pow(VarId::mu(i), k as i64);
    }
    for j in 0..ctx.n {
        out = &out - &MultiPoly::var_pow(VarId::nu(j), k as i64);
    }
    out
}
