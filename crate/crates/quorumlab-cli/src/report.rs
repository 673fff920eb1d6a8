//! Report envelopes and JSON/CSV rendering.
//!
//! Every command wraps its payload in an envelope carrying the tool
//! version, the command name and a digest of the effective input, and
//! all rendering is canonical: object keys sort alphabetically, rationals
//! print as lowest-terms `p/q` strings, decimals only where a column is
//! explicitly human-facing. Identical inputs produce identical bytes.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use quorumlab::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use quorumlab::json::rational_to_string;
use quorumlab::{
    rational_to_f64, CatalogCheck, ClauseOutcome, DecompositionReport, DimensionCertificate,
    LowerEvidence, Proposition1Report, RefutationTranscript, SwapWitness, SweepRow,
};

pub fn envelope(command: &str, input_digest: &str, result: Value) -> Value {
    json!({
        "tool": format!("quorumlab {}", env!("CARGO_PKG_VERSION")),
        "command": command,
        "input_digest": input_digest,
        "result": result,
    })
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

/// Renders a rational to `digits` significant decimal digits.
pub fn decimal(r: &BigRational, digits: u32) -> String {
    decimal_f64(rational_to_f64(r), digits)
}

pub fn decimal_f64(v: f64, digits: u32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{v:.places$}")
}

pub fn rational_value(r: &BigRational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn clause_value(c: &ClauseOutcome) -> Value {
    match c {
        ClauseOutcome::Fail { detail } => json!({"status": "fail", "detail": detail}),
        other => Value::String(other.label().to_string()),
    }
}

pub fn proposition1_value(report: &Proposition1Report) -> Value {
    json!({
        "a": clause_value(&report.a),
        "b": clause_value(&report.b),
        "c": clause_value(&report.c),
        "d": clause_value(&report.d),
    })
}

pub fn swap_witness_value(w: &SwapWitness) -> Value {
    let (r1, r2) = w.results();
    json!({
        "winning": [coalition_value(w.s1), coalition_value(w.s2)],
        "moved_out": w.moved_out.index(),
        "moved_in": w.moved_in.index(),
        "losing_results": [coalition_value(r1), coalition_value(r2)],
    })
}

pub fn coalition_value(c: quorumlab::Coalition) -> Value {
    Value::Array(
        c.players()
            .map(|p| Value::Number(p.index().into()))
            .collect(),
    )
}

pub fn transcript_value(t: &RefutationTranscript) -> Value {
    json!({
        "rows": t.m,
        "minimal_winning_profiles": t.minimal_winning,
        "maximal_losing_profiles": t.maximal_losing,
        "refuted": t.refuted,
        "cases": t.cases.iter().map(|c| json!({
            "assignment": c.assignment,
            "infeasible_row": c.infeasible_row,
            "rejection": c.rejection.as_ref().map(|y| {
                y.iter().map(rational_value).collect::<Vec<_>>()
            }),
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_value(cert: &DimensionCertificate) -> Value {
    json!({
        "upper": cert.upper,
        "lower": cert.lower,
        "certified": cert.certified,
        "realization_rows": cert.realization.rows().iter().map(|row| json!({
            "q": rational_value(row.threshold()),
            "w": row.weights().iter().map(rational_value).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "evidence": cert.evidence.iter().map(|e| match e {
            LowerEvidence::SwapViolation(w) => json!({
                "kind": "swap_violation",
                "witness": swap_witness_value(w),
            }),
            LowerEvidence::Refutation(t) => json!({
                "kind": "symmetric_realization_refuted",
                "transcript": transcript_value(t),
            }),
        }).collect::<Vec<_>>(),
        "symmetry_basis": cert.symmetry_basis,
    })
}

fn catalog_value(checks: &[CatalogCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected_winning": c.expected_winning,
                    "observed_winning": c.observed_winning,
                    "holds": c.holds(),
                })
            })
            .collect(),
    )
}

pub fn decomposition_value(report: &DecompositionReport) -> Value {
    let claim = |c: &quorumlab::DimensionClaim| {
        json!({
            "value": c.value,
            "status": match c.status {
                quorumlab::ClaimStatus::MachineChecked => "machine_checked",
                quorumlab::ClaimStatus::AssertedOnly => "asserted_only",
            },
            "note": c.note,
        })
    };
    json!({
        "n": report.n,
        "weakly_complete": report.weakly_complete,
        "government_weak_comparison": report.government_weak_comparison.map(|c| format!("{c:?}")),
        "swap_violation": report.swap_violation.as_ref().map(swap_witness_value),
        "factors_equal_game": report.factors_equal_game,
        "factors_swap_robust": report.factors_swap_robust,
        "factors_weakly_complete": report.factors_weakly_complete,
        "catalog": catalog_value(&report.catalog),
        "exchanges_consistent": report.exchanges_consistent,
        "w_dimension": claim(&report.w_dimension),
        "c_dimension": claim(&report.c_dimension),
        "passed": report.passed,
    })
}

pub fn sweep_row_value(row: &SweepRow, digits: u32) -> Value {
    json!({
        "n": row.n,
        "parity": row.parity(),
        "b_ord": row.b_ord.to_string(),
        "b_gov": row.b_gov.to_string(),
        "bi_ratio": rational_value(&row.bi_ratio),
        "bi_ratio_decimal": decimal(&row.bi_ratio, digits),
        "bi_ratio_asymptotic": decimal_f64(row.bi_ratio_asymptotic, digits),
        "ssi_gov": rational_value(&row.ssi_gov),
        "ssi_gov_decimal": decimal(&row.ssi_gov, digits),
        "ssi_ord": rational_value(&row.ssi_ord),
        "ssi_ord_decimal": decimal(&row.ssi_ord, digits),
        "ssi_ratio": rational_value(&row.ssi_ratio),
        "ssi_ratio_decimal": decimal(&row.ssi_ratio, digits),
    })
}

pub const SWEEP_CSV_HEADER: &str =
    "n,parity,b_ord,b_gov,bi_ratio,bi_ratio_asymptotic,ssi_gov,ssi_ord,ssi_ratio";

pub fn sweep_row_csv(row: &SweepRow, digits: u32) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.n,
        row.parity(),
        row.b_ord,
        row.b_gov,
        decimal(&row.bi_ratio, digits),
        decimal_f64(row.bi_ratio_asymptotic, digits),
        decimal(&row.ssi_gov, digits),
        decimal(&row.ssi_ord, digits),
        decimal(&row.ssi_ratio, digits),
    )
}

/// Writes output once and atomically: temp file in the target directory,
/// then rename. `None` writes to stdout.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
            let tmp = match dir {
                Some(d) => d.join(format!(
                    ".{}.tmp",
                    path.file_name().unwrap_or_default().to_string_lossy()
                )),
                None => std::path::PathBuf::from(format!(
                    ".{}.tmp",
                    path.file_name().unwrap_or_default().to_string_lossy()
                )),
            };
            std::fs::write(&tmp, content)
                .with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, path)
                .with_context(|| format!("renaming into {}", path.display()))?;
            Ok(())
        }
    }
}

pub fn to_canonical_string(value: &Value) -> String {
    // serde_json maps are ordered (BTreeMap keys), so this is canonical.
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}
