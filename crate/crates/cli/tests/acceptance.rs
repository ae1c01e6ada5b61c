//! One pass/fail line per acceptance criterion, driven through the same
//! suite as `hilbert-ops verify all`.

use hilbert_cli::report::{CheckRecord, Mode};
use hilbert_cli::{run_verify, SuiteConfig, Target};

const CRITERIA: [(&str, &str, &[&str]); 11] = [
    ("A1", "multiplier vs quadrature on the line", &["A01"]),
    ("A2", "involution on the line and circle", &["A02-line", "A02-circle"]),
    ("A3", "line commutation with the affine group", &["A03"]),
    ("A4", "Plemelj chain on the circle", &["A04"]),
    ("A5", "semigroup closed form vs root-of-unity average", &["A05"]),
    ("A6", "circle commutation with the semigroup", &["A06"]),
    (
        "A7",
        "decomposition round trip and +-H classifier",
        &["A07-roundtrip", "A07-classify"],
    ),
    ("A8", "three-scalar circle decomposition", &["A08"]),
    ("A9", "rotation/orbit scalarity test", &["A09-certify", "A09-flag"]),
    ("A10", "zero-set lemma witnesses", &["A10-zero", "A10-witness"]),
    (
        "A11",
        "Moebius unitarity, commutators reported",
        &["A11-unitary", "A11-commutator-jacobian", "A11-commutator-szego"],
    ),
];

fn describe(r: &CheckRecord) -> String {
    let value = r.measured.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "error".into());
    match (r.mode, r.tolerance) {
        (Mode::AtMost, Some(t)) => format!("{}={value}<={t:.0e}", r.check_id),
        (Mode::AtLeast, Some(t)) => format!("{}={value}>={t:.1}", r.check_id),
        _ => format!("{}={value} (reported)", r.check_id),
    }
}

fn main() {
    let report = run_verify(Target::All, &SuiteConfig::default());
    let mut failed = Vec::new();
    for (id, title, checks) in CRITERIA {
        let records: Vec<&CheckRecord> = checks
            .iter()
            .map(|c| report.record(c).unwrap_or_else(|| panic!("missing check {c}")))
            .collect();
        let pass = records.iter().all(|r| r.pass);
        let parts: Vec<String> = records.iter().map(|r| describe(r)).collect();
        println!(
            "{} {id:<4} {title}: {}",
            if pass { "PASS" } else { "FAIL" },
            parts.join(", ")
        );
        if !pass {
            failed.push(id);
        }
    }
    let extra_failures: Vec<&str> = report
        .records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.check_id.as_str())
        .collect();
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed.len(),
        CRITERIA.len()
    );
    if !extra_failures.is_empty() {
        println!("failed supporting checks: {extra_failures:?}");
    }
    if !(failed.is_empty() && extra_failures.is_empty()) {
        std::process::exit(1);
    }
}
