//! The identity-verification engine.
//!
//! Each named identity is compiled, per grid cell (m, n, k), into a list of
//! proof obligations: pairs of rational functions that must agree, plus the
//! occasional structural fact (degree bounds). Symbolic mode decides every
//! obligation by exact cross-multiplication; evaluated mode substitutes
//! seeded random rational points of bounded height, resampling when a
//! denominator vanishes. Symbolic mode is the source of truth; evaluation
//! is the fast smoke layer, and any divergence between the two is a bug.
//!
//! Reports are deterministic: cells are processed in grid order, random
//! points derive from the seed and the cell coordinates alone, and all
//! rendering is canonical.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::partition::{ch_partitions, lr_coeff, Partition};
use crate::poly::{rat_int, MultiPoly, Rat, VarId};
use crate::ratfun::{ratfun_eq, RationalFunction};
use crate::series::TruncatedSeries;
use crate::spectral::{
    self, classical_limit, p0_closed_form, partial_fraction_data, simple_fraction_sum,
    supertrace_power, SpectralContext, WeightVector,
};
use crate::symfunc::{elem_sym, power_sum_classical, q_number, Alphabet};

/// The named identities the engine can verify. Names are the stable CLI
/// identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityId {
    /// q-deformed Newton recursion for the single-column images.
    NewtonAnti,
    /// q-deformed Newton recursion for the single-row images.
    NewtonSimm,
    /// Wronski pairing of column and row images.
    Wronski,
    /// Generating-function forms: P(-t)A(qt) = A(q^-1 t),
    /// P(t)S(q^-1 t) = S(qt), A(t)S(-t) = 1.
    GfNewton2,
    /// Integer-coefficient Newton recursion between a_k and pi_k.
    Lemma1A,
    /// Integer-coefficient Newton recursion between s_k and pi_k.
    Lemma1S,
    /// k p_k = k_q pi_k + (q - q^-1) sum r_q pi_r p_{k-r}.
    Lemma2,
    /// Generating-function form of Lemma 2.
    GfPpi,
    /// Residues and simple-fraction expansion of f(z).
    PartialFrac,
    /// u_k(0) = k! (k+1)_q pi_{k+1}.
    UPi,
    /// p_0 = q^(n-m) (m-n)_q.
    P0,
    /// n = 0 reduction of the weights to the reflection-equation formula.
    GsReduction,
    /// q = 1 limit: classical Newton identity and the supertrace.
    ClassicalLimit,
    /// Images of the Cayley-Hamilton coefficient partitions factor through
    /// the rectangle product.
    ChImages,
    /// Schur images vanish outside the fat hook H(m,n).
    SchurVanishing,
    /// Schur images respect Littlewood-Richardson multiplication.
    LrHomomorphism,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::NewtonAnti,
        IdentityId::NewtonSimm,
        IdentityId::Wronski,
        IdentityId::GfNewton2,
        IdentityId::Lemma1A,
        IdentityId::Lemma1S,
        IdentityId::Lemma2,
        IdentityId::GfPpi,
        IdentityId::PartialFrac,
        IdentityId::UPi,
        IdentityId::P0,
        IdentityId::GsReduction,
        IdentityId::ClassicalLimit,
        IdentityId::ChImages,
        IdentityId::SchurVanishing,
        IdentityId::LrHomomorphism,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::NewtonAnti => "newton-anti",
            IdentityId::NewtonSimm => "newton-simm",
            IdentityId::Wronski => "wronski",
            IdentityId::GfNewton2 => "gf-newton2",
            IdentityId::Lemma1A => "lemma1-a",
            IdentityId::Lemma1S => "lemma1-s",
            IdentityId::Lemma2 => "lemma2",
            IdentityId::GfPpi => "gf-ppi",
            IdentityId::PartialFrac => "partial-frac",
            IdentityId::UPi => "u-pi",
            IdentityId::P0 => "p0",
            IdentityId::GsReduction => "gs-reduction",
            IdentityId::ClassicalLimit => "classical-limit",
            IdentityId::ChImages => "ch-images",
            IdentityId::SchurVanishing => "schur-vanishing",
            IdentityId::LrHomomorphism => "lr-homomorphism",
        }
    }

    pub fn from_name(name: &str) -> Option<IdentityId> {
        IdentityId::ALL.iter().copied().find(|id| id.name() == name)
    }

    fn index(&self) -> u64 {
        IdentityId::ALL
            .iter()
            .position(|id| id == self)
            .expect("identity is in ALL") as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Symbolic,
    Evaluated,
}

impl VerifyMode {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyMode::Symbolic => "symbolic",
            VerifyMode::Evaluated => "evaluated",
        }
    }

    pub fn from_name(name: &str) -> Option<VerifyMode> {
        match name {
            "symbolic" => Some(VerifyMode::Symbolic),
            "evaluated" => Some(VerifyMode::Evaluated),
            _ => None,
        }
    }
}

/// One verified instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    /// Rendered nonzero difference, present exactly when the cell fails.
    pub witness: Option<String>,
    /// Wall time, filled by the caller's clock (0 without one).
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub mode: VerifyMode,
    pub seed: u64,
    pub cells: Vec<CellResult>,
}

impl VerificationReport {
    pub fn pass_count(&self) -> usize {
        self.cells.iter().filter(|c| c.pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.cells.len() - self.pass_count()
    }

    pub fn all_pass(&self) -> bool {
        self.fail_count() == 0
    }
}

/// A full verification request. `order` is the configured series order K;
/// `kmax` must not exceed it.
#[derive(Debug, Clone, Copy)]
pub struct VerifyRequest {
    pub id: IdentityId,
    pub m: usize,
    pub n: usize,
    pub kmax: usize,
    pub order: usize,
    pub mode: VerifyMode,
    pub seed: u64,
}

/// Default verification grid: pure-even, pure-odd, and genuinely super
/// ranks up to (2,2).
pub const DEFAULT_GRID: [(usize, usize); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)];

/// Default series order / maximal identity degree.
pub const DEFAULT_ORDER: usize = 8;

/// Rank pairs an identity runs over when no explicit (m, n) is requested.
pub fn default_pairs(id: IdentityId) -> &'static [(usize, usize)] {
    match id {
        IdentityId::GsReduction => &[(1, 0), (2, 0), (3, 0), (4, 0)],
        IdentityId::ChImages | IdentityId::SchurVanishing => &[(1, 1), (2, 1), (1, 2)],
        IdentityId::LrHomomorphism => &[(1, 1), (2, 1)],
        _ => &DEFAULT_GRID,
    }
}

/// Default degree cap per identity. Derivative orders beyond 5 and LR
/// weights beyond 6 grow quickly; the caps match the supported desk-scale
/// grids. An explicit kmax always wins.
pub fn default_kmax(id: IdentityId) -> usize {
    match id {
        IdentityId::UPi => 5,
        IdentityId::ClassicalLimit | IdentityId::LrHomomorphism => 6,
        _ => DEFAULT_ORDER,
    }
}

/// Verify one identity at one rank (m, n). Cell timing is zero; see
/// [`verify_identity_timed`].
pub fn verify_identity(req: &VerifyRequest) -> Result<VerificationReport, Error> {
    verify_identity_timed(req, &mut || 0)
}

/// Verify one identity at one rank, timing each cell with the supplied
/// millisecond clock.
pub fn verify_identity_timed(
    req: &VerifyRequest,
    clock: &mut dyn FnMut() -> u64,
) -> Result<VerificationReport, Error> {
    if req.kmax > req.order {
        return Err(Error::OrderExceeded { kmax: req.kmax, order: req.order });
    }
    let cells = cells_for(req.id, req.m, req.n, req.kmax);
    let mut report = VerificationReport {
        identity: req.id,
        mode: req.mode,
        seed: req.seed,
        cells: Vec::with_capacity(cells.len()),
    };
    let mut ws = Workspace::new(req.order);
    for (m, n, k) in cells {
        let started = clock();
        let obligations = build_obligations(req.id, m, n, k, req.kmax, &mut ws);
        let outcome = check_obligations(&obligations, req, m, n, k)?;
        let ms = clock().saturating_sub(started);
        let (pass, witness) = match outcome {
            None => (true, None),
            Some(w) => (false, Some(w)),
        };
        report.cells.push(CellResult { m, n, k, pass, witness, ms });
    }
    Ok(report)
}

/// Verify one identity over its default rank grid, merging all cells into
/// a single report. `kmax` falls back to the identity's default degree cap
/// (clamped to the series order) when not given.
pub fn verify_identity_default_grid(
    id: IdentityId,
    kmax: Option<usize>,
    order: usize,
    mode: VerifyMode,
    seed: u64,
    clock: &mut dyn FnMut() -> u64,
) -> Result<VerificationReport, Error> {
    let kmax = kmax.unwrap_or_else(|| default_kmax(id).min(order));
    let mut merged = VerificationReport { identity: id, mode, seed, cells: Vec::new() };
    for &(m, n) in default_pairs(id) {
        let req = VerifyRequest { id, m, n, kmax, order, mode, seed };
        let sub = verify_identity_timed(&req, clock)?;
        merged.cells.extend(sub.cells);
    }
    Ok(merged)
}

/// Grid cells (m, n, k) for one identity at one rank.
fn cells_for(id: IdentityId, m: usize, n: usize, kmax: usize) -> Vec<(usize, usize, usize)> {
    match id {
        IdentityId::NewtonAnti
        | IdentityId::NewtonSimm
        | IdentityId::Wronski
        | IdentityId::GfNewton2
        | IdentityId::Lemma1A
        | IdentityId::Lemma1S
        | IdentityId::Lemma2
        | IdentityId::GfPpi
        | IdentityId::ClassicalLimit => (1..=kmax).map(|k| (m, n, k)).collect(),
        IdentityId::UPi => (0..=kmax).map(|k| (m, n, k)).collect(),
        IdentityId::P0 | IdentityId::PartialFrac => vec![(m, n, 0)],
        // The reflection-equation reduction is a statement about n = 0
        // (and needs at least one even variable).
        IdentityId::GsReduction => {
            if m >= 1 {
                vec![(m, 0, 0)]
            } else {
                Vec::new()
            }
        }
        IdentityId::ChImages => {
            if m >= 1 && n >= 1 {
                vec![(m, n, 0)]
            } else {
                Vec::new()
            }
        }
        IdentityId::SchurVanishing => {
            let base = (m + 1) * (n + 1);
            (base..=base + 2).map(|w| (m, n, w)).collect()
        }
        IdentityId::LrHomomorphism => (1..=kmax).map(|w| (m, n, w)).collect(),
    }
}

/// One thing to prove: either an equality of rational functions, or an
/// already-decided structural fact.
enum Obligation {
    Eq {
        label: String,
        lhs: RationalFunction,
        rhs: RationalFunction,
    },
    Fact {
        label: String,
        pass: bool,
        detail: String,
    },
}

/// Per-rank cache of everything the identities share. Entries are grown on
/// demand; keys are (m, n).
struct Workspace {
    order: usize,
    entries: BTreeMap<(usize, usize), RankData>,
}

struct RankData {
    ctx: SpectralContext,
    weights: Option<WeightVector>,
    p: Vec<RationalFunction>,
    a: Vec<MultiPoly>,
    s: Vec<MultiPoly>,
    pi: Vec<MultiPoly>,
    schur: BTreeMap<Partition, RationalFunction>,
    /// Current u-derivative order with the per-summand derivatives at that
    /// order, advanced incrementally as cells walk k upward.
    u_state: Option<(usize, Vec<RationalFunction>)>,
    /// LHS - RHS of the three generating-function Newton relations at a
    /// given order, built once per rank.
    gf_newton2_diffs: Option<(usize, Vec<TruncatedSeries>)>,
    /// LHS - RHS of the generating-function form of Lemma 2.
    gf_ppi_diff: Option<(usize, TruncatedSeries)>,
}

impl Workspace {
    fn new(order: usize) -> Self {
        Workspace { order, entries: BTreeMap::new() }
    }

    fn rank(&mut self, m: usize, n: usize) -> &mut RankData {
        let order = self.order;
        self.entries.entry((m, n)).or_insert_with(|| RankData {
            ctx: SpectralContext::new(m, n, order),
            weights: None,
            p: Vec::new(),
            a: Vec::new(),
            s: Vec::new(),
            pi: Vec::new(),
            schur: BTreeMap::new(),
            u_state: None,
            gf_newton2_diffs: None,
            gf_ppi_diff: None,
        })
    }
}

impl RankData {
    fn weights(&mut self) -> &WeightVector {
        if self.weights.is_none() {
            self.weights = Some(spectral::weights(&self.ctx));
        }
        self.weights.as_ref().expect("just filled")
    }

    fn p(&mut self, k: usize) -> RationalFunction {
        while self.p.len() <= k {
            let next = self.p.len();
            let w = self.weights().clone();
            self.p.push(spectral::p_image_with(next, &w));
        }
        self.p[k].clone()
    }

    fn a(&mut self, k: usize) -> MultiPoly {
        while self.a.len() <= k {
            self.a.push(spectral::a_image(self.a.len(), &self.ctx));
        }
        self.a[k].clone()
    }

    fn s(&mut self, k: usize) -> MultiPoly {
        while self.s.len() <= k {
            self.s.push(spectral::s_image(self.s.len(), &self.ctx));
        }
        self.s[k].clone()
    }

    /// pi_k for k >= 1 (index shifted by one internally).
    fn pi(&mut self, k: usize) -> MultiPoly {
        debug_assert!(k >= 1);
        while self.pi.len() < k {
            self.pi.push(spectral::pi_k(self.pi.len() + 1, &self.ctx));
        }
        self.pi[k - 1].clone()
    }

    fn schur(&mut self, lambda: &Partition) -> RationalFunction {
        if let Some(v) = self.schur.get(lambda) {
            return v.clone();
        }
        let v = spectral::schur_image(lambda, &self.ctx);
        self.schur.insert(lambda.clone(), v.clone());
        v
    }

    /// d^k u/dy^k at y = 0, advancing the per-summand derivatives
    /// incrementally (cells visit k in increasing order; any other access
    /// pattern falls back to recomputation).
    fn u_derivative_at_zero(&mut self, k: usize) -> RationalFunction {
        let y = VarId::y();
        let needs_reset = match &self.u_state {
            Some((level, _)) => *level > k,
            None => true,
        };
        if needs_reset {
            self.u_state = Some((0, spectral::u_terms(&self.ctx)));
        }
        let (level, terms) = self.u_state.as_mut().expect("just set");
        while *level < k {
            for t in terms.iter_mut() {
                *t = t.diff_univar(y).expect("y is formal");
            }
            *level += 1;
        }
        let mut value = RationalFunction::zero();
        for t in terms.iter() {
            let at0 = t
                .subst_poly(y, &MultiPoly::zero())
                .expect("denominators are 1 at y = 0");
            value = &value + &at0;
        }
        value
    }

    /// A(t), S(t), P(t) at the given order, with
    /// P(t) = 1 + (q - q^-1) sum p_k t^k.
    fn series_asp(&mut self, order: usize) -> (TruncatedSeries, TruncatedSeries, TruncatedSeries) {
        let t = VarId::t();
        let a: Vec<RationalFunction> = (0..=order)
            .map(|k| RationalFunction::from_poly(self.a(k)))
            .collect();
        let s: Vec<RationalFunction> = (0..=order)
            .map(|k| RationalFunction::from_poly(self.s(k)))
            .collect();
        let q_diff = &MultiPoly::q_pow(1) - &MultiPoly::q_pow(-1);
        let p: Vec<RationalFunction> = (0..=order)
            .map(|k| {
                if k == 0 {
                    RationalFunction::one()
                } else {
                    self.p(k).mul_poly(&q_diff)
                }
            })
            .collect();
        (
            TruncatedSeries::from_coeffs(t, a),
            TruncatedSeries::from_coeffs(t, s),
            TruncatedSeries::from_coeffs(t, p),
        )
    }

    /// Pi(q^-1 mu, q nu | t) truncated at `order - 1`: coefficient of
    /// t^(k-1) is pi_k.
    fn series_pi(&mut self, order: usize) -> TruncatedSeries {
        let t = VarId::t();
        let coeffs: Vec<RationalFunction> = (1..=order)
            .map(|k| RationalFunction::from_poly(self.pi(k)))
            .collect();
        TruncatedSeries::from_coeffs(t, coeffs)
    }

    /// Differences of the three relations P(-t)A(qt) = A(q^-1 t),
    /// P(t)S(q^-1 t) = S(qt), A(t)S(-t) = 1, cached per order.
    fn gf_newton2_diffs(&mut self, order: usize) -> &[TruncatedSeries] {
        if !matches!(&self.gf_newton2_diffs, Some((o, _)) if *o == order) {
            let (a, s, p) = self.series_asp(order);
            let q = poly_rf(MultiPoly::q_pow(1));
            let q_inv = poly_rf(MultiPoly::q_pow(-1));
            let minus_one = RationalFunction::from_int(-1);
            let d1 = p
                .compose_scale(&minus_one)
                .mul(&a.compose_scale(&q))
                .and_then(|lhs| lhs.sub(&a.compose_scale(&q_inv)))
                .expect("same shape");
            let d2 = p
                .mul(&s.compose_scale(&q_inv))
                .and_then(|lhs| lhs.sub(&s.compose_scale(&q)))
                .expect("same shape");
            let d3 = a
                .mul(&s.compose_scale(&minus_one))
                .and_then(|lhs| lhs.sub(&TruncatedSeries::one(VarId::t(), order)))
                .expect("same shape");
            self.gf_newton2_diffs = Some((order, vec![d1, d2, d3]));
        }
        &self.gf_newton2_diffs.as_ref().expect("just filled").1
    }

    /// Difference P(t)(q Pi(qt) - q^-1 Pi(q^-1 t)) - dP/dt, cached per
    /// order; lives at order - 1.
    fn gf_ppi_diff(&mut self, order: usize) -> &TruncatedSeries {
        if !matches!(&self.gf_ppi_diff, Some((o, _)) if *o == order) {
            let (_, _, p) = self.series_asp(order);
            let pi = self.series_pi(order);
            let q = poly_rf(MultiPoly::q_pow(1));
            let q_inv = poly_rf(MultiPoly::q_pow(-1));
            let bracket = pi
                .compose_scale(&q)
                .scale(&q)
                .sub(&pi.compose_scale(&q_inv).scale(&q_inv))
                .expect("same shape");
            let diff = p
                .truncated(order - 1)
                .mul(&bracket)
                .and_then(|lhs| lhs.sub(&p.derivative()))
                .expect("same shape");
            self.gf_ppi_diff = Some((order, diff));
        }
        &self.gf_ppi_diff.as_ref().expect("just filled").1
    }
}

fn poly_rf(p: MultiPoly) -> RationalFunction {
    RationalFunction::from_poly(p)
}

/// Compile one grid cell into proof obligations.
fn build_obligations(
    id: IdentityId,
    m: usize,
    n: usize,
    k: usize,
    kmax: usize,
    ws: &mut Workspace,
) -> Vec<Obligation> {
    let rank = ws.rank(m, n);
    match id {
        IdentityId::NewtonAnti => {
            // (-1)^k k_q a_k + sum_{r=0}^{k-1} (-q)^r a_r p_{k-r} = 0
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut acc = poly_rf((&q_number(k as i64) * &rank.a(k)).scale(&rat_int(sign)));
            for r in 0..k {
                let coeff = MultiPoly::q_pow(r as i64)
                    .scale(&rat_int(if r % 2 == 0 { 1 } else { -1 }));
                let term = rank.p(k - r).mul_poly(&(&coeff * &rank.a(r)));
                acc = &acc + &term;
            }
            vec![Obligation::Eq {
                label: alloc::format!("newton-anti k={k}"),
                lhs: acc,
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::NewtonSimm => {
            // k_q s_k - sum_{r=0}^{k-1} q^-r s_r p_{k-r} = 0
            let mut acc = poly_rf(&q_number(k as i64) * &rank.s(k));
            for r in 0..k {
                let coeff = MultiPoly::q_pow(-(r as i64));
                let term = rank.p(k - r).mul_poly(&(&coeff * &rank.s(r)));
                acc = &acc - &term;
            }
            vec![Obligation::Eq {
                label: alloc::format!("newton-simm k={k}"),
                lhs: acc,
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::Wronski => {
            // sum_{r=0}^k (-1)^r a_r s_{k-r} = 0
            let mut acc = MultiPoly::zero();
            for r in 0..=k {
                let term = &rank.a(r) * &rank.s(k - r);
                acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            vec![Obligation::Eq {
                label: alloc::format!("wronski k={k}"),
                lhs: poly_rf(acc),
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::GfNewton2 => {
            let labels = [
                "P(-t)A(qt) = A(q^-1 t)",
                "P(t)S(q^-1 t) = S(qt)",
                "A(t)S(-t) = 1",
            ];
            rank.gf_newton2_diffs(kmax)
                .iter()
                .zip(labels)
                .map(|(diff, label)| Obligation::Eq {
                    label: alloc::format!("{label}, coefficient t^{k}"),
                    lhs: diff.coeff(k).clone(),
                    rhs: RationalFunction::zero(),
                })
                .collect()
        }
        IdentityId::Lemma1A => {
            // (-1)^k k a_k + sum_{r=0}^{k-1} (-1)^r a_r pi_{k-r} = 0
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut acc = rank.a(k).scale(&rat_int(sign * k as i64));
            for r in 0..k {
                let term = &rank.a(r) * &rank.pi(k - r);
                acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            vec![Obligation::Eq {
                label: alloc::format!("lemma1-a k={k}"),
                lhs: poly_rf(acc),
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::Lemma1S => {
            // k s_k - sum_{r=0}^{k-1} s_r pi_{k-r} = 0
            let mut acc = rank.s(k).scale(&rat_int(k as i64));
            for r in 0..k {
                acc = &acc - &(&rank.s(r) * &rank.pi(k - r));
            }
            vec![Obligation::Eq {
                label: alloc::format!("lemma1-s k={k}"),
                lhs: poly_rf(acc),
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::Lemma2 => {
            // k p_k = k_q pi_k + (q - q^-1) sum_{r=1}^{k-1} r_q pi_r p_{k-r}
            let lhs = rank.p(k).scale(&rat_int(k as i64));
            let q_diff = &MultiPoly::q_pow(1) - &MultiPoly::q_pow(-1);
            let mut rhs = poly_rf(&q_number(k as i64) * &rank.pi(k));
            for r in 1..k {
                let mult = &(&q_diff * &q_number(r as i64)) * &rank.pi(r);
                rhs = &rhs + &rank.p(k - r).mul_poly(&mult);
            }
            vec![Obligation::Eq {
                label: alloc::format!("lemma2 k={k}"),
                lhs,
                rhs,
            }]
        }
        IdentityId::GfPpi => {
            // P(t) (q Pi(qt) - q^-1 Pi(q^-1 t)) = dP/dt, coefficient t^(k-1)
            let diff = rank.gf_ppi_diff(kmax);
            vec![Obligation::Eq {
                label: alloc::format!("gf-ppi coefficient t^{}", k - 1),
                lhs: diff.coeff(k - 1).clone(),
                rhs: RationalFunction::zero(),
            }]
        }
        IdentityId::PartialFrac => {
            let data = partial_fraction_data(&rank.ctx);
            let mut obligations = Vec::new();
            for p in &data.poles {
                obligations.push(Obligation::Eq {
                    label: alloc::format!("residue of f(z) at {}", p.name),
                    lhs: p.residue.clone(),
                    rhs: p.expected.clone(),
                });
            }
            obligations.push(Obligation::Eq {
                label: String::from("f(z) = 1 + sum residue/(z - pole)"),
                lhs: data.f.clone(),
                rhs: simple_fraction_sum(&data),
            });
            let f0 = data
                .f
                .subst_poly(VarId::z(), &MultiPoly::zero())
                .expect("poles are nonzero");
            obligations.push(Obligation::Eq {
                label: String::from("f(0) = q^(2(n-m))"),
                lhs: f0,
                rhs: poly_rf(MultiPoly::q_pow(2 * (n as i64 - m as i64))),
            });
            let degrees = spectral::degree_check(&rank.ctx, &data.f);
            obligations.push(Obligation::Fact {
                label: String::from("f(z) -> 1 at infinity (degrees and leading coefficients)"),
                pass: degrees.is_ok(),
                detail: degrees.err().unwrap_or_default(),
            });
            obligations
        }
        IdentityId::UPi => {
            let lhs = rank.u_derivative_at_zero(k);
            let rhs = spectral::u_derivative_closed_form(&rank.ctx, k);
            vec![Obligation::Eq {
                label: alloc::format!("u_{k}(0) = {k}! ({})_q pi_{}", k + 1, k + 1),
                lhs,
                rhs,
            }]
        }
        IdentityId::P0 => {
            vec![Obligation::Eq {
                label: String::from("p_0 = q^(n-m) (m-n)_q"),
                lhs: rank.p(0),
                rhs: poly_rf(p0_closed_form(&rank.ctx)),
            }]
        }
        IdentityId::GsReduction => {
            let general = rank.weights().clone();
            let reduced = spectral::weights_gl_m0(m);
            general
                .d
                .iter()
                .zip(reduced)
                .enumerate()
                .map(|(i, (g, r))| Obligation::Eq {
                    label: alloc::format!("d{} reduces to the GL({m}|0) formula", i + 1),
                    lhs: g.clone(),
                    rhs: r,
                })
                .collect()
        }
        IdentityId::ClassicalLimit => {
            let mut obligations = Vec::new();
            // p_k at q = 1 is the classical supertrace power sum.
            let p_q1 = classical_limit(&rank.p(k));
            obligations.push(Obligation::Eq {
                label: alloc::format!("p_{k} at q=1 is the supertrace"),
                lhs: p_q1.clone(),
                rhs: poly_rf(supertrace_power(k, &rank.ctx)),
            });
            // The q = 1 images satisfy the classical Newton recursion
            // (-1)^k k a_k + sum (-1)^r a_r p_{k-r} = 0.
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let a_q1: Vec<RationalFunction> = (0..=k)
                .map(|r| classical_limit(&poly_rf(rank.a(r))))
                .collect();
            let mut acc = a_q1[k].scale(&rat_int(sign * k as i64));
            for r in 0..k {
                let p_lim = classical_limit(&rank.p(k - r));
                let term = &a_q1[r] * &p_lim;
                acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            obligations.push(Obligation::Eq {
                label: alloc::format!("classical Newton identity at q=1, k={k}"),
                lhs: acc,
                rhs: RationalFunction::zero(),
            });
            // At n = 0 the pieces are literally e_k and the power sums.
            if n == 0 {
                let plain = Alphabet::plain(Alphabet::mu_vars(m));
                obligations.push(Obligation::Eq {
                    label: alloc::format!("a_{k} at q=1 is e_{k}(mu)"),
                    lhs: a_q1[k].clone(),
                    rhs: poly_rf(elem_sym(k, &plain)),
                });
                obligations.push(Obligation::Eq {
                    label: alloc::format!("p_{k} at q=1 is the classical power sum"),
                    lhs: p_q1,
                    rhs: poly_rf(power_sum_classical(k, &plain)),
                });
            }
            obligations
        }
        IdentityId::ChImages => {
            let ctx = rank.ctx;
            let base = spectral::rectangle_product(&ctx);
            let x = ctx.scaled_mu();
            let y_neg = ctx.neg_scaled_nu();
            let mut obligations = Vec::new();
            for kk in 0..=m {
                let (upper, _) = ch_partitions(m, n, kk as i64, 0).expect("kk within range");
                obligations.push(Obligation::Eq {
                    label: alloc::format!("image of [{m}|{n}]^{kk} = s_[m|n] e_{kk}(q^-1 mu)"),
                    lhs: rank.schur(&upper),
                    rhs: poly_rf(&base * &elem_sym(kk, &x)),
                });
            }
            for r in 0..=n {
                let (_, lower) = ch_partitions(m, n, 0, r as i64).expect("r within range");
                obligations.push(Obligation::Eq {
                    label: alloc::format!("image of [{m}|{n}]_{r} = s_[m|n] e_{r}(-q nu)"),
                    lhs: rank.schur(&lower),
                    rhs: poly_rf(&base * &elem_sym(r, &y_neg)),
                });
            }
            obligations
        }
        IdentityId::SchurVanishing => {
            let excluded = Partition::lambda_mn(m, n);
            Partition::all_of_weight(k as u32)
                .into_iter()
                .filter(|nu| excluded.contained_in(nu))
                .map(|nu| Obligation::Eq {
                    label: alloc::format!("schur image of {nu} vanishes"),
                    lhs: rank.schur(&nu),
                    rhs: RationalFunction::zero(),
                })
                .collect()
        }
        IdentityId::LrHomomorphism => {
            let w = k as u32;
            let mut obligations = Vec::new();
            let nus = Partition::all_of_weight(w);
            for a in 0..=w {
                for lam in Partition::all_of_weight(a) {
                    for mu in Partition::all_of_weight(w - a) {
                        let lhs = &rank.schur(&lam) * &rank.schur(&mu);
                        let mut rhs = RationalFunction::zero();
                        for nu in &nus {
                            let c = lr_coeff(&lam, &mu, nu);
                            if c != 0 {
                                rhs = &rhs + &rank.schur(nu).scale(&rat_int(c as i64));
                            }
                        }
                        obligations.push(Obligation::Eq {
                            label: alloc::format!(
                                "schur({lam}) schur({mu}) = sum of LR multiples"
                            ),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
            obligations
        }
    }
}

/// Decide a cell's obligations in the requested mode. Returns the first
/// failure witness, if any.
fn check_obligations(
    obligations: &[Obligation],
    req: &VerifyRequest,
    m: usize,
    n: usize,
    k: usize,
) -> Result<Option<String>, Error> {
    for (idx, ob) in obligations.iter().enumerate() {
        match ob {
            Obligation::Fact { label, pass, detail } => {
                if !pass {
                    return Ok(Some(alloc::format!("{label}: {detail}")));
                }
            }
            Obligation::Eq { label, lhs, rhs } => match req.mode {
                VerifyMode::Symbolic => {
                    if !ratfun_eq(lhs, rhs) {
                        let diff = &(lhs.num() * rhs.den()) - &(rhs.num() * lhs.den());
                        return Ok(Some(alloc::format!(
                            "{label}: cleared difference {}",
                            diff.render_truncated(40)
                        )));
                    }
                }
                VerifyMode::Evaluated => {
                    let seed = mix_seed(&[
                        req.seed,
                        req.id.index(),
                        m as u64,
                        n as u64,
                        k as u64,
                        idx as u64,
                    ]);
                    if !random_eval_check(lhs, rhs, seed, EVAL_TRIALS)? {
                        return Ok(Some(alloc::format!(
                            "{label}: random-point evaluation mismatch (derived seed {seed})"
                        )));
                    }
                }
            },
        }
    }
    Ok(None)
}

/// Trials per obligation in evaluated mode.
const EVAL_TRIALS: u32 = 2;

/// Height bound on the numerators and denominators of sampled points.
const EVAL_HEIGHT: u64 = 99;

/// Attempts before giving up on a denominator-avoiding point.
const RESAMPLE_CAP: u32 = 100;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministically fold several u64 components into one PRNG seed.
fn mix_seed(parts: &[u64]) -> u64 {
    let mut state: u64 = 0x243F_6A88_85A3_08D3;
    for &p in parts {
        state ^= p;
        splitmix64(&mut state);
    }
    state
}

/// Probabilistic identity check: sample rational points of height at most
/// 99 for every variable on either side, resample while any denominator
/// vanishes (up to a cap), and compare exact values. Deterministic for a
/// given seed; `false` on any mismatch.
pub fn random_eval_check(
    lhs: &RationalFunction,
    rhs: &RationalFunction,
    seed: u64,
    trials: u32,
) -> Result<bool, Error> {
    assert!(trials >= 1, "at least one trial");
    let mut vars = lhs.variables();
    for v in rhs.variables() {
        if let Err(pos) = vars.binary_search(&v) {
            vars.insert(pos, v);
        }
    }
    let mut state = seed;
    for _ in 0..trials {
        let mut found = false;
        for _ in 0..RESAMPLE_CAP {
            let candidate = sample_point(&vars, &mut state);
            match (lhs.eval(&candidate), rhs.eval(&candidate)) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        return Ok(false);
                    }
                    found = true;
                    break;
                }
                // A vanished denominator or a q = 0 draw: resample.
                _ => continue,
            }
        }
        if !found {
            return Err(Error::ResampleCapExceeded);
        }
    }
    Ok(true)
}

fn sample_point(vars: &[VarId], state: &mut u64) -> BTreeMap<VarId, Rat> {
    let mut point = BTreeMap::new();
    for &v in vars {
        let span = 2 * EVAL_HEIGHT + 1;
        let mut num = (splitmix64(state) % span) as i64 - EVAL_HEIGHT as i64;
        let den = (splitmix64(state) % EVAL_HEIGHT) as i64 + 1;
        if v == VarId::q() && num == 0 {
            num = 1;
        }
        point.insert(v, Rat::new(num.into(), den.into()));
    }
    point
}
