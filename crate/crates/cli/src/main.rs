//! `minw`: command-line front end.
//!
//! Every subcommand prints one JSON object `{status, reason, citation, data}`
//! (or a flat text rendering with `--format text`). Exit code 0 on a
//! definite answer, 2 on `unknown`, 1 on errors and failed checks.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minw_core::aplus::{check_inequalities, boundary_report};
use minw_core::charser::{denominator_check, Bounds};
use minw_core::rootsys::AlgebraSpec;
use minw_core::sl2verma::compare_with_oracle;
use minw_core::vacuum::{length_two_test, mu0_from, y_sets, LengthVerdict};
use minw_core::verdict::{self, Status, Superconformal};
use minw_core::weights::{parse_rational, to_i64};
use minw_core::Rational;

#[derive(Parser)]
#[command(name = "minw", version, about = "Simplicity of universal minimal W-algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root datum summary.
    Info {
        #[arg(long)]
        algebra: String,
    },
    /// Simple / NotSimple / Unknown for W^k.
    Simplicity {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        /// Attach a length-two test to NotSimple verdicts when it is cheap.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        ddeg: Option<i64>,
        #[arg(long)]
        height: Option<i64>,
    },
    CentralCharge {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
    },
    /// Irreducibility of the superconformal vacuum module.
    Superconformal {
        /// 0..4 or big4:a
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Finite denominator identity up to a height.
    DenomCheck {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
    /// q_J + q_L = 0 test on the vacuum module.
    Jantzen {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, default_value_t = 4)]
        ddeg: i64,
        #[arg(long, default_value_t = 8)]
        height: i64,
    },
    /// Inequality scan over odd subsets, plus the boundary-set report.
    AplusScan {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, default_value_t = 8)]
        height: i64,
    },
    /// Y_J and Y_L supports at μ₀ = Σ m_i (given as comma-separated m_i).
    Ysets {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu0: Vec<i64>,
        #[arg(long, default_value_t = 3)]
        ddeg: i64,
        #[arg(long, default_value_t = 8)]
        height: i64,
    },
    /// Closed-form maximal submodule against Gram ranks for affine sl2.
    Sl2Verma {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        label: i64,
        #[arg(long, default_value_t = 3)]
        depth: i64,
    },
}

struct Out {
    status: &'static str,
    reason: String,
    citation: String,
    data: Value,
}

impl Out {
    fn check(ok: bool, reason: &str, citation: &str, data: Value) -> Self {
        Out {
            status: if ok { "ok" } else { "failed" },
            reason: reason.into(),
            citation: citation.into(),
            data,
        }
    }

    fn exit_code(&self) -> u8 {
        match self.status {
            "unknown" => 2,
            "failed" | "error" => 1,
            _ => 0,
        }
    }
}

fn spec(id: &str) -> Result<AlgebraSpec> {
    AlgebraSpec::from_id(id).with_context(|| format!("algebra {id:?}"))
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Simple => "simple",
        Status::NotSimple => "not_simple",
        Status::Unknown => "unknown",
    }
}

fn verdict_out(v: verdict::Verdict) -> Result<Out> {
    let reason = serde_json::to_value(v.reason)?
        .as_str()
        .unwrap_or_default()
        .to_string();
    Ok(Out {
        status: status_str(v.status),
        reason,
        citation: v.citation,
        data: serde_json::to_value(&v.data)?,
    })
}

/// Default truncation for --certify: coroot-line translations need δ-degree
/// 9 to separate q_J from −q_L in rank two.
fn certify_bounds(s: &AlgebraSpec) -> Option<Bounds> {
    match s.rank() {
        0..=2 => Some(Bounds::new(9, 10)),
        3 => Some(Bounds::new(4, 8)),
        _ => None,
    }
}

fn run(cmd: Cmd) -> Result<Out> {
    match cmd {
        Cmd::Info { algebra } => {
            let s = spec(&algebra)?;
            Ok(Out::check(true, "root_datum", "catalog", serde_json::to_value(s.report())?))
        }
        Cmd::Simplicity {
            algebra,
            level,
            certify,
            ddeg,
            height,
        } => {
            let s = spec(&algebra)?;
            let k = rational(&level)?;
            let v = verdict::simplicity(&s, &k)?;
            let long = v.citation.starts_with("long.");
            let mut out = verdict_out(v)?;
            if certify && long {
                let small = to_i64(&k).is_some_and(|k| (0..=3).contains(&k));
                let bounds = match (ddeg, height) {
                    (Some(d), Some(h)) => Some(Bounds::new(d, h)),
                    _ => certify_bounds(&s).filter(|_| small),
                };
                out.data["certificate"] = match bounds {
                    Some(b) => {
                        let rep = verdict::certify(&s, &k, b)?;
                        let found = matches!(rep.verdict, LengthVerdict::LengthGreaterThanTwo { .. });
                        json!({"witness_found": found, "report": rep})
                    }
                    None => json!({"skipped": "rank or level too large for the default truncation"}),
                };
            }
            Ok(out)
        }
        Cmd::CentralCharge { algebra, level } => {
            let s = spec(&algebra)?;
            let k = rational(&level)?;
            let c = verdict::central_charge(&s, &k)?;
            let removable = k == -s.h_dual.clone();
            Ok(Out::check(
                true,
                if removable { "removable_limit" } else { "formula" },
                "cc",
                json!({"algebra": s.id, "k": k.to_string(), "c": c.to_string(), "sdim": s.sdim(), "h_dual": s.h_dual.to_string()}),
            ))
        }
        Cmd::Superconformal { n, c } => {
            let sc = Superconformal::parse(&n)?;
            let c = rational(&c)?;
            verdict_out(verdict::superconformal_verdict(&sc, &c)?)
        }
        Cmd::DenomCheck { algebra, height } => {
            let s = spec(&algebra)?;
            let rep = denominator_check(&s, Bounds::finite(height))?;
            Ok(Out::check(rep.ok, "denominator_identity", "denom", serde_json::to_value(rep)?))
        }
        Cmd::Jantzen {
            algebra,
            level,
            ddeg,
            height,
        } => {
            let s = spec(&algebra)?;
            let k = rational(&level)?;
            let rep = length_two_test(&s, &k, Bounds::new(ddeg, height))?;
            let reason = match rep.verdict {
                LengthVerdict::ConsistentWithLengthTwo => "consistent_with_length_two",
                LengthVerdict::LengthGreaterThanTwo { .. } => "length_greater_than_two",
            };
            Ok(Out::check(true, reason, "jantzen", serde_json::to_value(rep)?))
        }
        Cmd::AplusScan { algebra, level, height } => {
            let s = spec(&algebra)?;
            let k = rational(&level)?;
            let rep = check_inequalities(&s, &k, height)?;
            let boundary = boundary_report(&s, &k)?;
            Ok(Out::check(
                rep.all_pass,
                "check_inequalities",
                "aplus",
                json!({"scan": rep, "boundary": boundary}),
            ))
        }
        Cmd::Ysets {
            algebra,
            level,
            mu0,
            ddeg,
            height,
        } => {
            let s = spec(&algebra)?;
            let k = rational(&level)?;
            let m = mu0_from(&s, &mu0)?;
            let (yj, yl) = y_sets(&s, &k, &m, Bounds::new(ddeg, height))?;
            Ok(Out::check(true, "supports", "ysets", json!({"y_j": yj, "y_l": yl})))
        }
        Cmd::Sl2Verma { k, label, depth } => {
            let c = compare_with_oracle(k, label, depth)?;
            Ok(Out::check(c.agree, "oracle_comparison", "sl2verma", serde_json::to_value(c)?))
        }
    }
}

fn render_text(out: &Out) -> String {
    let mut s = format!(
        "status:   {}\nreason:   {}\ncitation: {}\n",
        out.status, out.reason, out.citation
    );
    if let Value::Object(map) = &out.data {
        for (k, v) in map {
            let v = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {v}\n"));
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(cli.cmd).unwrap_or_else(|e| Out {
        status: "error",
        reason: format!("{e:#}"),
        citation: String::new(),
        data: Value::Null,
    });
    let text = match cli.format {
        Format::Json => {
            let v = json!({
                "status": out.status,
                "reason": out.reason,
                "citation": out.citation,
                "data": out.data,
            });
            let body = serde_json::to_string_pretty(&v).unwrap_or_else(|e| anyhow!(e).to_string());
            body + "\n"
        }
        Format::Text => render_text(&out),
    };
    // a closed pipe (e.g. `| head`) is not worth a panic
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(out.exit_code())
}
