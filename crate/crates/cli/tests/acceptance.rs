//! Acceptance suite: every headline result, one test per criterion, each
//! printing a single pass/fail line (run with `-- --nocapture` to see them
//! alongside cargo's own output). All checks are exact; there are no
//! tolerances anywhere.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use qspectra_core::partition::{lr_coeff, Partition};
use qspectra_core::poly::{rat_int, MultiPoly};
use qspectra_core::ratfun::{ratfun_eq, RationalFunction};
use qspectra_core::spectral::{a_image, p_image_with, weights, SpectralContext, WeightVector};
use qspectra_core::symfunc::q_number;
use qspectra_core::verify::{
    verify_identity, IdentityId, VerifyMode, VerifyRequest, DEFAULT_GRID, DEFAULT_ORDER,
};

struct Criterion {
    number: u32,
    what: &'static str,
    started: Instant,
}

impl Criterion {
    fn begin(number: u32, what: &'static str) -> Self {
        Criterion { number, what, started: Instant::now() }
    }

    fn finish(self, pass: bool) {
        let ms = self.started.elapsed().as_millis();
        println!(
            "criterion {:02} ({}): {} [{} ms]",
            self.number,
            self.what,
            if pass { "PASS" } else { "FAIL" },
            ms
        );
        assert!(pass, "criterion {:02} failed: {}", self.number, self.what);
    }
}

/// Run one identity symbolically over a rank grid; true iff every cell
/// passes exactly.
fn grid_passes(id: IdentityId, pairs: &[(usize, usize)], kmax: usize) -> bool {
    pairs.iter().all(|&(m, n)| {
        let req = VerifyRequest {
            id,
            m,
            n,
            kmax,
            order: DEFAULT_ORDER,
            mode: VerifyMode::Symbolic,
            seed: 0,
        };
        let report = verify_identity(&req).expect("engine runs");
        if !report.all_pass() {
            for cell in report.cells.iter().filter(|c| !c.pass) {
                eprintln!(
                    "  {} (m={}, n={}, k={}): {}",
                    id.name(),
                    cell.m,
                    cell.n,
                    cell.k,
                    cell.witness.as_deref().unwrap_or("")
                );
            }
        }
        report.all_pass()
    })
}

#[test]
fn criterion_01_newton_recursions() {
    let c = Criterion::begin(1, "q-Newton recursions for a_k and s_k, full grid, k <= 8");
    let pass = grid_passes(IdentityId::NewtonAnti, &DEFAULT_GRID, 8)
        && grid_passes(IdentityId::NewtonSimm, &DEFAULT_GRID, 8);
    c.finish(pass);
}

#[test]
fn criterion_02_lemmas_one_and_two() {
    let c = Criterion::begin(2, "integer Newton recursions and the p/pi recursion, full grid");
    let pass = grid_passes(IdentityId::Lemma1A, &DEFAULT_GRID, 8)
        && grid_passes(IdentityId::Lemma1S, &DEFAULT_GRID, 8)
        && grid_passes(IdentityId::Lemma2, &DEFAULT_GRID, 8)
        && grid_passes(IdentityId::GfPpi, &DEFAULT_GRID, 8);
    c.finish(pass);
}

#[test]
fn criterion_03_zeroth_power_sum() {
    let c = Criterion::begin(3, "sum of weights equals q^(n-m)(m-n)_q, full grid");
    c.finish(grid_passes(IdentityId::P0, &DEFAULT_GRID, 1));
}

#[test]
fn criterion_04_partial_fractions() {
    let c = Criterion::begin(
        4,
        "residues, simple-fraction expansion, f(0), and behaviour at infinity",
    );
    c.finish(grid_passes(IdentityId::PartialFrac, &DEFAULT_GRID, 1));
}

#[test]
fn criterion_05_u_derivatives() {
    let c = Criterion::begin(5, "u_k(0) = k! (k+1)_q pi_(k+1) for k <= 5, up to rank (2,2)");
    c.finish(grid_passes(IdentityId::UPi, &DEFAULT_GRID, 5));
}

#[test]
fn criterion_06_reflection_equation_reduction() {
    let c = Criterion::begin(6, "n = 0 weights reduce to the GL(m|0) formula, m <= 4");
    let pairs: Vec<(usize, usize)> = (1..=4).map(|m| (m, 0)).collect();
    c.finish(grid_passes(IdentityId::GsReduction, &pairs, 1));
}

#[test]
fn criterion_07_classical_limit() {
    let c = Criterion::begin(7, "q = 1 gives the classical Newton identity and supertrace, k <= 6");
    c.finish(grid_passes(IdentityId::ClassicalLimit, &DEFAULT_GRID, 6));
}

#[test]
fn criterion_08_cayley_hamilton_coefficient_images() {
    let c = Criterion::begin(
        8,
        "images of [m|n]^k and [m|n]_r factor through prod (q^-1 mu - q nu)",
    );
    c.finish(grid_passes(IdentityId::ChImages, &[(1, 1), (2, 1), (1, 2)], 1));
}

#[test]
fn criterion_09_littlewood_richardson_consistency() {
    let c = Criterion::begin(
        9,
        "Schur images multiply by LR; LR matches the Schur-product oracle to weight 8",
    );
    let homomorphism =
        grid_passes(IdentityId::LrHomomorphism, &[(1, 1), (2, 1)], 6);

    // Independent oracle: expand products of Schur polynomials as monomial
    // sums and peel them back into the Schur basis.
    let mut oracle_ok = true;
    'outer: for total in 0..=8u32 {
        for a in 0..=total {
            for lambda in Partition::all_of_weight(a) {
                for mu in Partition::all_of_weight(total - a) {
                    let table = oracle::lr_table(&lambda, &mu);
                    for nu in Partition::all_of_weight(total) {
                        let expect = table.get(&nu).copied().unwrap_or(0);
                        if lr_coeff(&lambda, &mu, &nu) as i64 != expect {
                            eprintln!("  oracle mismatch at ({lambda},{mu},{nu})");
                            oracle_ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    c.finish(homomorphism && oracle_ok);
}

#[test]
fn criterion_10_vanishing_outside_the_hook() {
    let c = Criterion::begin(
        10,
        "Schur images vanish on every partition containing the (m+1)x(n+1) rectangle",
    );
    c.finish(grid_passes(IdentityId::SchurVanishing, &[(1, 1), (2, 1), (1, 2)], 1));
}

#[test]
fn criterion_11_mutation_sensitivity() {
    let c = Criterion::begin(
        11,
        "corrupting one exponent in d_i breaks the Newton recursion at rank (1,1)",
    );
    let ctx = SpectralContext::new(1, 1, DEFAULT_ORDER);

    // The honest weights, then the same product with q^2 replaced by q^3
    // inside the mu-over-nu factor.
    let good = weights(&ctx);
    let mu = ctx.mu(0);
    let nu = ctx.nu(0);
    let bad_d = &RationalFunction::from_poly(MultiPoly::q_pow(-1))
        * &RationalFunction::new(&mu - &(&MultiPoly::q_pow(3) * &nu), &mu - &nu);
    let bad = WeightVector { d: vec![bad_d], d_tilde: good.d_tilde.clone() };

    let newton_residual = |w: &WeightVector, k: usize| -> RationalFunction {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut acc = RationalFunction::from_poly(
            (&q_number(k as i64) * &a_image(k, &ctx)).scale(&rat_int(sign)),
        );
        for r in 0..k {
            let coeff =
                MultiPoly::q_pow(r as i64).scale(&rat_int(if r % 2 == 0 { 1 } else { -1 }));
            acc = &acc + &p_image_with(k - r, w).mul_poly(&(&coeff * &a_image(r, &ctx)));
        }
        acc
    };

    let corrupted_fails = (1..=4).any(|k| {
        !ratfun_eq(&newton_residual(&bad, k), &RationalFunction::zero())
    });
    let honest_passes = (1..=4).all(|k| {
        ratfun_eq(&newton_residual(&good, k), &RationalFunction::zero())
    });
    c.finish(corrupted_fails && honest_passes);
}

#[test]
fn criterion_12_byte_identical_reports() {
    let c = Criterion::begin(
        12,
        "two runs of `verify all --mode evaluated --seed 7 --format json` agree byte for byte",
    );
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_qspectra"))
            .args(["verify", "all", "--mode", "evaluated", "--seed", "7", "--format", "json"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify all failed");
        out.stdout
    };
    let first = run();
    let second = run();
    let parses: Result<serde_json::Value, _> = serde_json::from_slice(&first);
    c.finish(first == second && !first.is_empty() && parses.is_ok());
}

/// Brute-force Littlewood-Richardson oracle, independent of the library's
/// lattice-word enumeration: multiply semistandard-tableau monomial
/// expansions and peel off Schur polynomials in decreasing lexicographic
/// order.
mod oracle {
    use super::*;

    type Poly = BTreeMap<Vec<u8>, i64>;

    fn schur_poly(shape: &Partition, nvars: usize) -> Poly {
        let mut poly = Poly::new();
        if shape.is_empty() {
            poly.insert(vec![0; nvars], 1);
            return poly;
        }
        let rows = shape.len();
        let mut grid: Vec<Vec<u8>> =
            (0..rows).map(|r| vec![0; shape.part(r) as usize]).collect();
        fill(0, 0, rows, shape, nvars, &mut grid, &mut poly);
        poly
    }

    fn fill(
        r: usize,
        cidx: usize,
        rows: usize,
        shape: &Partition,
        nvars: usize,
        grid: &mut Vec<Vec<u8>>,
        poly: &mut Poly,
    ) {
        if r == rows {
            let mut exps = vec![0u8; nvars];
            for row in grid.iter() {
                for &e in row {
                    exps[(e - 1) as usize] += 1;
                }
            }
            *poly.entry(exps).or_insert(0) += 1;
            return;
        }
        let (nr, nc) = if cidx + 1 < shape.part(r) as usize {
            (r, cidx + 1)
        } else {
            (r + 1, 0)
        };
        let min_left = if cidx > 0 { grid[r][cidx - 1] } else { 1 };
        let min_above = if r > 0 && cidx < grid[r - 1].len() {
            grid[r - 1][cidx] + 1
        } else {
            1
        };
        for e in min_left.max(min_above)..=(nvars as u8) {
            grid[r][cidx] = e;
            fill(nr, nc, rows, shape, nvars, grid, poly);
        }
        grid[r][cidx] = 0;
    }

    fn poly_mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                *out.entry(m).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn lr_table(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, i64> {
        let w = (lambda.weight() + mu.weight()) as usize;
        let nvars = w.max(1);
        let mut product = poly_mul(&schur_poly(lambda, nvars), &schur_poly(mu, nvars));
        let mut table = BTreeMap::new();
        for kappa in Partition::all_of_weight(w as u32) {
            let mut key = vec![0u8; nvars];
            for (i, &part) in kappa.parts().iter().enumerate() {
                key[i] = part as u8;
            }
            let coeff = product.get(&key).copied().unwrap_or(0);
            if coeff != 0 {
                for (m, cb) in schur_poly(&kappa, nvars) {
                    let entry = product.entry(m).or_insert(0);
                    *entry -= coeff * cb;
                }
                product.retain(|_, c| *c != 0);
                table.insert(kappa, coeff);
            }
        }
        assert!(product.is_empty(), "Schur peel left a remainder");
        table
    }
}
