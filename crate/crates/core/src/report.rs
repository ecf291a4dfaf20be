//! Check records and deterministic report rendering.
//!
//! Every verification suite emits a flat list of [`CheckRecord`]s. A record
//! is either asserted (`Pass`/`Fail`, failures drive the exit status) or
//! informational (`Report`, never fails a run: used for claims outside the
//! asserted scope and for inconclusive search outcomes). Reports render as
//! line-delimited text, sorted by (suite, spec, check id), so identical runs
//! produce byte-identical files.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckRecord {
    pub status: Status,
    pub suite: String,
    pub spec: String,
    pub check_id: String,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(suite: &str, spec: &str, check_id: impl Into<String>) -> Self {
        CheckRecord {
            status: Status::Pass,
            suite: suite.to_string(),
            spec: spec.to_string(),
            check_id: check_id.into(),
            witness: None,
        }
    }

    pub fn fail(
        suite: &str,
        spec: &str,
        check_id: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            status: Status::Fail,
            suite: suite.to_string(),
            spec: spec.to_string(),
            check_id: check_id.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn report(
        suite: &str,
        spec: &str,
        check_id: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            status: Status::Report,
            suite: suite.to_string(),
            spec: spec.to_string(),
            check_id: check_id.into(),
            witness: Some(witness.into()),
        }
    }

    /// Asserted outcome in one step: pass when `ok`, otherwise fail with the
    /// witness produced lazily.
    pub fn assert(
        suite: &str,
        spec: &str,
        check_id: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(suite, spec, check_id)
        } else {
            Self::fail(suite, spec, check_id, witness())
        }
    }
}

/// Whether a record list contains an asserted failure (report-only findings
/// do not count).
pub fn has_failure(records: &[CheckRecord]) -> bool {
    records.iter().any(|r| r.status == Status::Fail)
}

/// Renders the report: a header line, then one tab-separated line per
/// record in (suite, spec, check-id) order. Witness column only when
/// present. Stable across runs for equal inputs.
pub fn render_report(records: &[CheckRecord]) -> String {
    let mut sorted: Vec<&CheckRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.suite, &a.spec, &a.check_id, a.status)
            .cmp(&(&b.suite, &b.spec, &b.check_id, b.status))
    });
    let mut out = String::from("status\tsuite\tspec\tcheck-id\twitness\n");
    for r in sorted {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}",
            r.status, r.suite, r.spec, r.check_id
        ));
        if let Some(w) = &r.witness {
            out.push('\t');
            // Keep the line structure intact no matter what the witness is.
            out.push_str(&w.replace(['\t', '\n'], " "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(render_report(&[]), "status\tsuite\tspec\tcheck-id\twitness\n");
    }

    #[test]
    fn sorted_and_tab_separated() {
        let records = vec![
            CheckRecord::pass("zeta", "r=(1,1) m=2 p=2", "b"),
            CheckRecord::fail("alpha", "r=(1,1) m=2 p=2", "z", "residue x[1,1]"),
            CheckRecord::report("alpha", "r=(1,1) m=2 p=2", "a", "support {}"),
        ];
        let text = render_report(&records);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "REPORT\talpha\tr=(1,1) m=2 p=2\ta\tsupport {}");
        assert_eq!(lines[2], "FAIL\talpha\tr=(1,1) m=2 p=2\tz\tresidue x[1,1]");
        assert_eq!(lines[3], "PASS\tzeta\tr=(1,1) m=2 p=2\tb");
        assert!(has_failure(&records));
        assert!(!has_failure(&records[..1]));
        // Report-only findings are not failures.
        assert!(!has_failure(&[CheckRecord::report("s", "x", "c", "w")]));
    }

    #[test]
    fn witness_newlines_are_flattened() {
        let r = CheckRecord::fail("s", "x", "c", "line1\nline2\tcol");
        let text = render_report(&[r]);
        assert!(text.contains("line1 line2 col"));
    }

    #[test]
    fn determinism_under_permutation() {
        let a = CheckRecord::pass("s", "spec1", "c1");
        let b = CheckRecord::fail("s", "spec1", "c2", "w");
        let c = CheckRecord::pass("r", "spec2", "c0");
        let one = render_report(&[a.clone(), b.clone(), c.clone()]);
        let two = render_report(&[c, b, a]);
        assert_eq!(one, two);
    }
}
