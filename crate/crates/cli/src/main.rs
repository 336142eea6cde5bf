//! qspectra: compute spectral quantities and verify the power-sum
//! identities of GL(m|n) quantum matrix algebras.
//!
//! Subcommands:
//!   `compute <quantity>`    render one named quantity
//!   `verify <identity|all>` run an identity over a rank grid
//!   `report`                JSON report for every identity on the default grid
//!
//! Exit codes: 0 all checks pass, 1 an identity failed, 2 usage error.

mod render;

use std::process::ExitCode;
use std::time::Instant;

use qspectra_core::partition::{lr_coeff, Partition};
use qspectra_core::spectral::{
    a_image, f_of_z, p_image, pi_k, s_image, schur_image, u_of_y, weights, SpectralContext,
};
use qspectra_core::symfunc::{complete_sym, elem_sym, power_sum_classical, Alphabet};
use qspectra_core::verify::{
    verify_identity_default_grid, verify_identity_timed, IdentityId, VerificationReport,
    VerifyMode, VerifyRequest, DEFAULT_ORDER,
};

const USAGE: &str = "\
usage: qspectra <command> [flags]

commands:
  compute <quantity>   quantities: ek hk pk-classical ak sk pik weights
                       p-image schur f u lr
  verify <identity>    one of the identity names below, or `all`
  report               verify everything on the default grid, JSON output

identities:
  newton-anti newton-simm wronski gf-newton2 lemma1-a lemma1-s lemma2
  gf-ppi partial-frac u-pi p0 gs-reduction classical-limit ch-images
  schur-vanishing lr-homomorphism

flags:
  --m M --n N          rank (omit both to use the default grid in verify)
  --k K                degree for compute quantities
  --kmax K             highest identity degree to verify
  --order K            series truncation order (default 8, env QSPECTRA_ORDER)
  --mode MODE          symbolic (default) or evaluated
  --seed S             PRNG seed for evaluated mode (default 0)
  --format FMT         text (default) or json; report defaults to json
  --timing             include per-cell milliseconds in JSON output
  --lam/--mu/--nu P    partitions, written (a,b,c) or [a,b,c]
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!();
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    let Some(command) = args.first() else {
        return Err("missing command".into());
    };
    match command.as_str() {
        "compute" => cmd_compute(args.get(1), &parse_flags(args.get(2..).unwrap_or(&[]))?),
        "verify" => cmd_verify(args.get(1), &parse_flags(args.get(2..).unwrap_or(&[]))?),
        "report" => {
            let mut flags = parse_flags(args.get(1..).unwrap_or(&[]))?;
            if flags.format.is_none() {
                flags.format = Some(Format::Json);
            }
            cmd_verify(Some(&"all".to_string()), &flags)
        }
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!("unknown command `{other}`")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Default)]
struct Flags {
    m: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    kmax: Option<usize>,
    order: Option<usize>,
    mode: Option<VerifyMode>,
    seed: Option<u64>,
    format: Option<Format>,
    timing: bool,
    lam: Option<Partition>,
    mu: Option<Partition>,
    nu: Option<Partition>,
}

impl Flags {
    fn order(&self) -> usize {
        self.order
            .or_else(|| {
                std::env::var("QSPECTRA_ORDER")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(DEFAULT_ORDER)
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(Format::Text)
    }
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags::default();
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        if flag == "--timing" {
            flags.timing = true;
            continue;
        }
        let value = it
            .next()
            .ok_or_else(|| format!("flag {flag} needs a value"))?;
        match flag.as_str() {
            "--m" => flags.m = Some(parse_num(flag, value)?),
            "--n" => flags.n = Some(parse_num(flag, value)?),
            "--k" => flags.k = Some(parse_num(flag, value)?),
            "--kmax" => flags.kmax = Some(parse_num(flag, value)?),
            "--order" => flags.order = Some(parse_num(flag, value)?),
            "--seed" => flags.seed = Some(parse_num(flag, value)?),
            "--mode" => {
                flags.mode = Some(
                    VerifyMode::from_name(value)
                        .ok_or_else(|| format!("unknown mode `{value}`"))?,
                )
            }
            "--format" => {
                flags.format = Some(match value.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    other => return Err(format!("unknown format `{other}`")),
                })
            }
            "--lam" => flags.lam = Some(parse_partition(value)?),
            "--mu" => flags.mu = Some(parse_partition(value)?),
            "--nu" => flags.nu = Some(parse_partition(value)?),
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(flags)
}

fn parse_num<T: std::str::FromStr>(flag: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("flag {flag} expects a number, got `{value}`"))
}

/// Accepts `(a,b,c)`, `[a,b,c]`, `()`, `[]`, or a bare comma list.
fn parse_partition(text: &str) -> Result<Partition, String> {
    let trimmed = text.trim();
    let inner = if (trimmed.starts_with('(') && trimmed.ends_with(')'))
        || (trimmed.starts_with('[') && trimmed.ends_with(']'))
    {
        &trimmed[1..trimmed.len() - 1]
    } else {
        trimmed
    };
    let mut parts = Vec::new();
    for piece in inner.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let v: u32 = piece
            .parse()
            .map_err(|_| format!("bad partition entry `{piece}` in `{text}`"))?;
        parts.push(v);
    }
    if !parts.windows(2).all(|w| w[0] >= w[1]) {
        return Err(format!("partition `{text}` is not weakly decreasing"));
    }
    Ok(Partition::new(parts))
}

fn require_k(flags: &Flags) -> Result<usize, String> {
    flags.k.ok_or_else(|| "this quantity needs --k".into())
}

fn cmd_compute(quantity: Option<&String>, flags: &Flags) -> Result<ExitCode, String> {
    let Some(quantity) = quantity else {
        return Err("compute needs a quantity".into());
    };
    let m = flags.m.unwrap_or(0);
    let n = flags.n.unwrap_or(0);
    let ctx = SpectralContext::new(m, n, flags.order());
    let mut lines: Vec<String> = Vec::new();
    match quantity.as_str() {
        "ek" | "hk" | "pk-classical" => {
            let k = require_k(flags)?;
            let alphabet = Alphabet::plain(Alphabet::mu_vars(m));
            let value = match quantity.as_str() {
                "ek" => elem_sym(k, &alphabet),
                "hk" => complete_sym(k, &alphabet),
                _ => {
                    if k == 0 {
                        return Err("classical power sums start at k = 1".into());
                    }
                    power_sum_classical(k, &alphabet)
                }
            };
            lines.push(value.render());
        }
        "ak" => lines.push(a_image(require_k(flags)?, &ctx).render()),
        "sk" => lines.push(s_image(require_k(flags)?, &ctx).render()),
        "pik" => {
            let k = require_k(flags)?;
            if k == 0 {
                return Err("pi_k starts at k = 1".into());
            }
            lines.push(pi_k(k, &ctx).render());
        }
        "weights" => {
            if m + n == 0 {
                return Err("weights need m + n >= 1".into());
            }
            let w = weights(&ctx);
            for (i, d) in w.d.iter().enumerate() {
                lines.push(format!("d{} = {}", i + 1, d.render()));
            }
            for (j, dt) in w.d_tilde.iter().enumerate() {
                lines.push(format!("dtilde{} = {}", j + 1, dt.render()));
            }
        }
        "p-image" => {
            if m + n == 0 {
                return Err("p-image needs m + n >= 1".into());
            }
            let value = p_image(require_k(flags)?, &ctx);
            // The weighted power sums are polynomials; show the cleared
            // form when the division goes through.
            match value.as_poly() {
                Some(poly) => lines.push(poly.render()),
                None => lines.push(value.render()),
            }
        }
        "schur" => {
            let lam = flags
                .lam
                .clone()
                .ok_or_else(|| String::from("schur needs --lam"))?;
            lines.push(schur_image(&lam, &ctx).render());
        }
        "f" => {
            if m + n == 0 {
                return Err("f needs m + n >= 1".into());
            }
            lines.push(f_of_z(&ctx).render());
        }
        "u" => {
            if m + n == 0 {
                return Err("u needs m + n >= 1".into());
            }
            lines.push(u_of_y(&ctx).render());
        }
        "lr" => {
            let (lam, mu, nu) = match (&flags.lam, &flags.mu, &flags.nu) {
                (Some(l), Some(m), Some(n)) => (l, m, n),
                _ => return Err("lr needs --lam, --mu and --nu".into()),
            };
            lines.push(lr_coeff(lam, mu, nu).to_string());
        }
        other => return Err(format!("unknown quantity `{other}`")),
    }
    match flags.format() {
        Format::Text => {
            for line in &lines {
                println!("{line}");
            }
        }
        Format::Json => {
            let values: Vec<String> = lines.iter().map(|l| render::json_string(l)).collect();
            println!(
                "{{\"quantity\":{},\"m\":{m},\"n\":{n},\"value\":[{}]}}",
                render::json_string(quantity),
                values.join(",")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(id_arg: Option<&String>, flags: &Flags) -> Result<ExitCode, String> {
    let Some(id_arg) = id_arg else {
        return Err("verify needs an identity name or `all`".into());
    };
    let ids: Vec<IdentityId> = if id_arg == "all" {
        IdentityId::ALL.to_vec()
    } else {
        vec![IdentityId::from_name(id_arg)
            .ok_or_else(|| format!("unknown identity `{id_arg}`"))?]
    };

    if flags.m.unwrap_or(0) + flags.n.unwrap_or(0) == 0
        && (flags.m.is_some() || flags.n.is_some())
    {
        return Err("verification needs at least one spectral variable (m + n >= 1)".into());
    }
    let order = flags.order();
    let mode = flags.mode.unwrap_or(VerifyMode::Symbolic);
    let seed = flags.seed.unwrap_or(0);
    let started = Instant::now();
    let mut clock = move || started.elapsed().as_millis() as u64;

    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in &ids {
        let report = if flags.m.is_none() && flags.n.is_none() {
            verify_identity_default_grid(*id, flags.kmax, order, mode, seed, &mut clock)
        } else {
            let kmax = flags
                .kmax
                .unwrap_or_else(|| qspectra_core::verify::default_kmax(*id).min(order));
            let req = VerifyRequest {
                id: *id,
                m: flags.m.unwrap_or(0),
                n: flags.n.unwrap_or(0),
                kmax,
                order,
                mode,
                seed,
            };
            verify_identity_timed(&req, &mut clock)
        }
        .map_err(|e| e.to_string())?;
        reports.push(report);
    }

    let all_pass = reports.iter().all(|r| r.all_pass());
    match flags.format() {
        Format::Json => {
            if reports.len() == 1 {
                println!("{}", render::report_to_json(&reports[0], flags.timing));
            } else {
                println!("{}", render::reports_to_json(&reports, flags.timing));
            }
        }
        Format::Text => {
            for report in &reports {
                print!("{}", render::report_to_text(report));
            }
            let pass: usize = reports.iter().map(|r| r.pass_count()).sum();
            let fail: usize = reports.iter().map(|r| r.fail_count()).sum();
            println!("total: {pass} pass, {fail} fail");
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
