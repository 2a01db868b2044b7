use std::fmt::Write as _;

use crate::expected::{lookup, Expected};

/// Text report with one PASS/FAIL line per checked value.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
    failures: usize,
    checks: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn block(&mut self, title: &str, body: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{title}");
        for l in body.to_string().lines() {
            let _ = writeln!(self.text, "  {l}");
        }
    }

    /// Compares `got` with the table entry `key`.
    pub fn expect(&mut self, label: &str, got: f64, key: &str) {
        let e = lookup(key);
        self.compare(label, got, e, (got - e.value).abs() <= e.tol);
    }

    /// Passes if `got` does not exceed the table's tolerance for `key`.
    pub fn within(&mut self, label: &str, got: f64, key: &str) {
        let e = lookup(key);
        self.compare(label, got, e, got.abs() <= e.tol);
    }

    pub fn flag(&mut self, label: &str, ok: bool) {
        self.record(ok, label.to_string());
    }

    fn compare(&mut self, label: &str, got: f64, e: &Expected, ok: bool) {
        let body = if e.tol == 0.0 || e.value != 0.0 {
            format!("{label} = {got:.9}  (expected {:.9} ± {:.0e}; {})", e.value, e.tol, e.note)
        } else {
            format!("{label} = {got:.3e}  (bound {:.0e}; {})", e.tol, e.note)
        };
        self.record(ok, body);
    }

    fn record(&mut self, ok: bool, body: String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        let _ = writeln!(self.text, "{}  {body}", if ok { "PASS" } else { "FAIL" });
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn finish(mut self) -> (String, bool) {
        let _ = writeln!(
            self.text,
            "{} of {} checks passed",
            self.checks - self.failures,
            self.checks
        );
        let ok = self.passed();
        (self.text, ok)
    }
}
