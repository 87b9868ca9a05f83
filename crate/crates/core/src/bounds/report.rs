use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

/// One evaluated inequality, lhs ≤ rhs_main.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs_main: f64,
    pub slack: f64,
    pub assertable: bool,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Compact JSON of the inputs; also the golden-file key.
    pub fingerprint: String,
    pub context: Value,
    /// Comparison with the stored golden value; never affects the verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub golden: Option<GoldenDiff>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenDiff {
    /// match, drift, missing or unreadable.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stored_lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stored_rhs: Option<f64>,
}

impl BoundReport {
    /// A constant-free inequality: passes when lhs ≤ rhs + tolerance.
    pub fn asserted(name: &str, lhs: f64, rhs: f64, tolerance: f64, context: Value) -> Self {
        let slack = rhs - lhs;
        let ok = slack >= -tolerance && lhs.is_finite() && rhs.is_finite();
        Self::build(name, lhs, rhs, true, if ok { Verdict::Pass } else { Verdict::Fail }, tolerance, context)
    }

    /// A check that is either true or false (lhs = 0 on success, 1 on failure).
    pub fn check(name: &str, ok: bool, context: Value) -> Self {
        let lhs = if ok { 0.0 } else { 1.0 };
        Self::build(name, lhs, 0.0, true, if ok { Verdict::Pass } else { Verdict::Fail }, 0.0, context)
    }

    /// A big-O statement: recorded, never failed.
    pub fn report_only(name: &str, lhs: f64, rhs: f64, context: Value) -> Self {
        Self::build(name, lhs, rhs, false, Verdict::ReportOnly, 0.0, context)
    }

    fn build(name: &str, lhs: f64, rhs: f64, assertable: bool, verdict: Verdict, tolerance: f64, context: Value) -> Self {
        BoundReport {
            name: name.to_string(),
            lhs,
            rhs_main: rhs,
            slack: rhs - lhs,
            assertable,
            verdict,
            tolerance,
            fingerprint: context.to_string(),
            context,
            golden: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// lhs / rhs_main, the measured constant of a report-only envelope.
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs_main
    }

    /// Key under which the golden file stores this report.
    pub fn golden_key(&self) -> String {
        format!("{}|{}|{}", self.name, self.fingerprint, crate::VERSION)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts() {
        assert_eq!(BoundReport::asserted("a", 1.0, 1.0 - 1e-12, 1e-9, json!({})).verdict, Verdict::Pass);
        assert_eq!(BoundReport::asserted("a", 1.0, 0.9, 1e-9, json!({})).verdict, Verdict::Fail);
        assert_eq!(BoundReport::asserted("a", f64::NAN, 0.9, 1e-9, json!({})).verdict, Verdict::Fail);
        let r = BoundReport::report_only("b", 5.0, 1.0, json!({"x": 10}));
        assert!(!r.failed() && r.ratio() == 5.0);
        assert_eq!(r.fingerprint, r#"{"x":10}"#);
        let back: BoundReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back.verdict, Verdict::ReportOnly);
    }
}
