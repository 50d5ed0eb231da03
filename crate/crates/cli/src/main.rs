use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quadring::builder::{
    classify_support, construct_auto, construct_d10, construct_thm12, construct_thm13,
    default_budget, exceptional_family, lemma21_search, AutoOptions, ExceptionalFamily,
    SearchBounds,
};
use quadring::oracle::{brute_force_search, verify_quadruple};
use quadring::pell::{
    cf_expand, enumerate_norm_class, fundamental_neg, fundamental_unit, is_admissible,
    solve_norm6, admissible_d_scan,
};
use quadring::{Error, QuadrupleCertificate, RingContext, RingElement, SupportTag};
use quadring_cli::coverage::{coverage, write_csv, write_text, Family};
use quadring_cli::document::CertificateDocument;
use quadring_cli::{exit, exit_code};

#[derive(Parser)]
#[command(name = "quadring", version, about = "D(n)-quadruples in Z[sqrt(d)]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction of sqrt(d) and the fundamental solutions of norm 1 and -1.
    Pell {
        #[arg(long)]
        d: u64,
    },
    /// Fundamental solutions of x^2 - d y^2 = +6 or -6.
    Norm6 {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i8,
        /// Also list this many elements of the class in the canonical quadrant.
        #[arg(long, default_value_t = 0)]
        count: usize,
    },
    /// Admissible d up to the limit.
    Scan {
        #[arg(long)]
        limit: u64,
    },
    /// Build and verify a D(n)-quadruple; prints a certificate document.
    Construct {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: RingElement,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Unit exponent for the ex3/ex4 recipes; by default 1, 0, 3, 2 are tried.
        #[arg(long)]
        t: Option<u32>,
        /// Candidate pairs per recipe; defaults to QUADRING_RETRY_BUDGET or 64.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        allow_inadmissible: bool,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate document: a path, inline JSON, or `-` for stdin.
    Verify { document: String },
    /// Exhaustive search of the box |x|, |y| <= bound.
    Search {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: RingElement,
        #[arg(long)]
        bound: u32,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Support status and constructions over an (m, k) grid of one family.
    Coverage {
        #[arg(long)]
        d: u64,
        /// thm12, thm13, s1, s2, s3 or s4.
        #[arg(long)]
        family: Family,
        /// Inclusive range `lo:hi`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-6:6")]
        m_range: RangeInclusive<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-6:6")]
        k_range: RangeInclusive<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        allow_inadmissible: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Thm12,
    Thm13,
    Ex3,
    Ex4,
    Search,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Largest |norm| of the small factor of alpha1 in the search.
    #[arg(long)]
    factor_bound: Option<u64>,
    /// Largest |norm| of the small factor of a in the search.
    #[arg(long)]
    a_bound: Option<u64>,
    #[arg(long)]
    unit_power_bound: Option<u32>,
}

impl BoundArgs {
    fn resolve(&self) -> SearchBounds {
        let def = SearchBounds::default();
        SearchBounds {
            factor_norm_bound: self.factor_bound.unwrap_or(def.factor_norm_bound),
            a_norm_bound: self.a_bound.unwrap_or(def.a_norm_bound),
            unit_power_bound: self.unit_power_bound.unwrap_or(def.unit_power_bound),
        }
    }
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" | "+6" | "6" => Ok(1),
        "-" | "-1" | "-6" => Ok(-1),
        _ => Err(format!("sign must be + or -, got {s:?}")),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// A failure already reported on stderr, carrying its exit code.
struct Fail(u8);

fn fail(code: u8, msg: impl AsRef<str>) -> Fail {
    eprintln!("error: {}", msg.as_ref());
    Fail(code)
}

fn context(d: u64) -> Result<RingContext, Fail> {
    RingContext::new(d).map_err(|e| fail(exit::INVALID, e.to_string()))
}

fn admissible_context(d: u64, allow: bool) -> Result<RingContext, Fail> {
    let ctx = context(d)?;
    if !allow && !is_admissible(&ctx) {
        return Err(fail(
            exit::INVALID,
            format!(
                "d = {d} is not admissible (x^2 - {d}y^2 = -1 and = 6 must both be solvable); \
                 pass --allow-inadmissible to proceed anyway"
            ),
        ));
    }
    Ok(ctx)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| fail(exit::INVALID, format!("writing {}: {e}", path.display()))),
        None => write_stdout(&format!("{text}\n")),
    }
}

/// A closed pipe downstream (`| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), Fail> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(fail(exit::INVALID, e.to_string())),
        _ => Ok(()),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes")
}

fn construction_error(err: Error) -> Fail {
    match &err {
        Error::Excluded { status, .. } if status.tag == SupportTag::ExcludedS => {
            fail(exit::EXCLUDED, format!("excluded: n ∈ S; {err}"))
        }
        Error::Excluded { .. } => fail(exit::EXCLUDED, format!("excluded: {err}")),
        _ => fail(exit_code(&err), err.to_string()),
    }
}

fn by_example(
    ctx: &RingContext,
    n: &RingElement,
    tag: &str,
    t: Option<u32>,
) -> quadring::Result<QuadrupleCertificate> {
    let family = exceptional_family(n).map(|f| f.0);
    let expected = match family {
        Some(ExceptionalFamily::E1 | ExceptionalFamily::E2) => "ex3",
        Some(ExceptionalFamily::E3 | ExceptionalFamily::E4) => "ex4",
        None => "",
    };
    if expected != tag {
        return Err(Error::WrongClass {
            n: n.to_string(),
            what: format!("the {tag} families"),
        });
    }
    let ts = t.map_or(vec![1, 0, 3, 2], |t| vec![t]);
    let mut last = None;
    for t in ts {
        match construct_d10(ctx, n, t) {
            Ok(cert) => return Ok(cert),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one t"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    d: u64,
    n: RingElement,
    method: Method,
    t: Option<u32>,
    budget: Option<usize>,
    bounds: SearchBounds,
    allow_inadmissible: bool,
    out: Option<&PathBuf>,
) -> Result<(), Fail> {
    let ctx = admissible_context(d, allow_inadmissible)?;
    let budget = budget.unwrap_or_else(default_budget);
    let status = classify_support(&n, &ctx).map_err(construction_error)?;
    if status.tag == SupportTag::ExcludedS {
        return Err(construction_error(Error::Excluded {
            n: n.to_string(),
            status,
        }));
    }
    let built = match method {
        Method::Auto => construct_auto(&n, &ctx, AutoOptions { budget, bounds }),
        Method::Thm12 => construct_thm12(&n, &ctx, budget),
        Method::Thm13 => construct_thm13(&n, &ctx, budget),
        Method::Ex3 => by_example(&ctx, &n, "ex3", t),
        Method::Ex4 => by_example(&ctx, &n, "ex4", t),
        Method::Search => {
            lemma21_search(&n, &ctx, bounds).ok_or_else(|| Error::NotFound { n: n.to_string() })
        }
    };
    let cert = built.map_err(construction_error)?;
    let verified = verify_quadruple(&cert.elements, &n, &ctx);
    let doc = CertificateDocument::from_certificate(&cert, verified.is_ok());
    emit(out, &doc.to_json())?;
    match verified {
        Ok(_) => Ok(()),
        Err(f) => Err(fail(exit::VERIFY_FAILED, format!("constructed quadruple fails: {f}"))),
    }
}

fn cmd_verify(source: &str) -> Result<(), Fail> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| fail(exit::INVALID, format!("reading stdin: {e}")))?;
        s
    } else if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        fs::read_to_string(source).map_err(|e| fail(exit::INVALID, format!("reading {source}: {e}")))?
    };
    let doc = CertificateDocument::from_json(&text).map_err(|e| fail(exit::INVALID, e.to_string()))?;
    let verdict = doc.reverify().map_err(|e| fail(exit::INVALID, e.to_string()))?;
    let mut report = format!("d = {}, n = {}\n", doc.d, doc.n);
    let cert = match verdict {
        Ok(cert) => cert,
        Err(f) => {
            report.push_str(&format!("not verified: {f}\n"));
            write_stdout(&report)?;
            return Err(Fail(exit::VERIFY_FAILED));
        }
    };
    for (label, root) in quadring::builder::PAIR_LABELS.iter().zip(&cert.witnesses) {
        report.push_str(&format!("{label}: {root}\n"));
    }
    let stored_ok = doc
        .to_certificate()
        .map(|c| c.check(&doc.context().expect("context built above")))
        .unwrap_or(false);
    if !stored_ok {
        report.push_str("not verified: the stored witnesses do not match the elements\n");
        write_stdout(&report)?;
        return Err(Fail(exit::VERIFY_FAILED));
    }
    report.push_str("verified\n");
    write_stdout(&report)
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Pell { d } => {
            let ctx = context(d)?;
            let cf = cf_expand(&ctx);
            let unit = fundamental_unit(&ctx);
            let neg = fundamental_neg(&ctx);
            let value = json!({
                "d": d.to_string(),
                "a0": cf.a0.to_string(),
                "period": cf.period.iter().map(u64::to_string).collect::<Vec<_>>(),
                "period_length": cf.period_length().to_string(),
                "unit": unit.value,
                "neg": neg.map(|s| s.value),
            });
            emit(None, &pretty(&value))
        }
        Command::Norm6 { d, sign, count } => {
            let ctx = context(d)?;
            let target = 6 * i64::from(sign);
            let reps: Vec<RingElement> =
                solve_norm6(&ctx, sign).into_iter().map(|s| s.value).collect();
            let mut value = json!({
                "d": d.to_string(),
                "target": target.to_string(),
                "representatives": reps,
            });
            if count > 0 {
                let class = enumerate_norm_class(&ctx, target, count).unwrap_or_default();
                value["class"] = json!(class);
            }
            emit(None, &pretty(&value))
        }
        Command::Scan { limit } => {
            let ds: Vec<String> = admissible_d_scan(limit).iter().map(u64::to_string).collect();
            emit(None, &pretty(&json!({ "limit": limit.to_string(), "admissible": ds })))
        }
        Command::Construct {
            d,
            n,
            method,
            t,
            budget,
            bounds,
            allow_inadmissible,
            out,
        } => cmd_construct(
            d,
            n,
            method,
            t,
            budget,
            bounds.resolve(),
            allow_inadmissible,
            out.as_ref(),
        ),
        Command::Verify { document } => cmd_verify(&document),
        Command::Search { d, n, bound, limit } => {
            let ctx = context(d)?;
            if bound == 0 {
                return Err(fail(exit::INVALID, "bound must be at least 1"));
            }
            let docs: Vec<CertificateDocument> = brute_force_search(&n, &ctx, bound, limit)
                .iter()
                .map(|c| CertificateDocument::from_certificate(c, true))
                .collect();
            let found = !docs.is_empty();
            let value = json!({
                "d": d.to_string(),
                "n": n,
                "bound": bound.to_string(),
                "limit": limit.to_string(),
                "certificates": docs,
            });
            emit(None, &pretty(&value))?;
            if found {
                Ok(())
            } else {
                Err(fail(exit::NOT_FOUND, format!("no quadruple for n = {n} within the box")))
            }
        }
        Command::Coverage {
            d,
            family,
            m_range,
            k_range,
            format,
            allow_inadmissible,
            out,
        } => {
            let ctx = admissible_context(d, allow_inadmissible)?;
            let rows = coverage(&ctx, family, m_range, k_range);
            let mut buf = Vec::new();
            match format {
                Format::Csv => write_csv(&rows, &mut buf)
                    .map_err(|e| fail(exit::INVALID, e.to_string()))?,
                Format::Text => write_text(&rows, &mut buf)
                    .map_err(|e| fail(exit::INVALID, e.to_string()))?,
            }
            let text = String::from_utf8(buf).expect("utf-8 table");
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| fail(exit::INVALID, format!("writing {}: {e}", path.display()))),
                None => write_stdout(&text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INVALID } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(Fail(code)) => ExitCode::from(code),
    }
}
