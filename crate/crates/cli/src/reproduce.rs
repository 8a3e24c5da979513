use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::checks::{self, Check};
use sedgeo_core::Result;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub bound: Option<Duration>,
    pub run: fn() -> Result<Check>,
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        name: "table reproduction",
        bound: Some(Duration::from_secs(1)),
        run: checks::table_reproduction,
    },
    Criterion {
        id: 2,
        name: "algebra properties",
        bound: Some(Duration::from_secs(5)),
        run: checks::algebra_properties,
    },
    Criterion {
        id: 3,
        name: "g2 certification",
        bound: Some(Duration::from_secs(5)),
        run: checks::g2_certification,
    },
    Criterion {
        id: 4,
        name: "metric at the pair origin",
        bound: None,
        run: checks::origin_metric,
    },
    Criterion {
        id: 5,
        name: "Ricci of the pair metric",
        bound: None,
        run: checks::ricci_z,
    },
    Criterion {
        id: 6,
        name: "metric at u0",
        bound: None,
        run: checks::zd_origin_metric,
    },
    Criterion {
        id: 7,
        name: "g_r curvature",
        bound: Some(Duration::from_secs(60)),
        run: checks::gr_curvature,
    },
    Criterion {
        id: 8,
        name: "Killing criterion",
        bound: None,
        run: checks::killing_criterion,
    },
    Criterion {
        id: 9,
        name: "F_r golden match",
        bound: Some(Duration::from_secs(120)),
        run: checks::polynomial_golden_match,
    },
    Criterion {
        id: 10,
        name: "SOS verification",
        bound: Some(Duration::from_secs(600)),
        run: checks::sos_verification,
    },
    Criterion {
        id: 11,
        name: "interval certificate",
        bound: None,
        run: checks::interval_certificate,
    },
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub within_bound: bool,
    pub elapsed: Duration,
    pub bound: Option<Duration>,
    pub text: String,
    pub details: Value,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.pass && self.within_bound
    }

    /// One line: id, verdict, name, timing against the bound.
    pub fn line(&self) -> String {
        let bound = self
            .bound
            .map(|b| format!(" (bound {} ms)", b.as_millis()))
            .unwrap_or_default();
        let verdict = match (self.pass, self.within_bound) {
            (true, true) => "pass",
            (true, false) => "FAIL (too slow)",
            _ => "FAIL",
        };
        format!(
            "criterion {:>2} {verdict}: {} [{} ms{bound}]",
            self.id,
            self.name,
            self.elapsed.as_millis()
        )
    }
}

pub fn run(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let res = (c.run)();
    let elapsed = start.elapsed();
    let (pass, text, details) = match res {
        Ok(Check {
            pass,
            text,
            details,
        }) => (pass, text, details),
        Err(e) => (
            false,
            format!("FAIL {e}\n"),
            json!({ "error": e.to_string() }),
        ),
    };
    Outcome {
        id: c.id,
        name: c.name,
        pass,
        within_bound: c.bound.is_none_or(|b| elapsed < b),
        elapsed,
        bound: c.bound,
        text,
        details,
    }
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        for (i, c) in CRITERIA.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
        }
    }

    #[test]
    fn slow_runs_fail_the_bound() {
        let o = Outcome {
            id: 1,
            name: "x",
            pass: true,
            within_bound: false,
            elapsed: Duration::from_millis(1500),
            bound: Some(Duration::from_secs(1)),
            text: String::new(),
            details: json!({}),
        };
        assert!(!o.ok());
        assert_eq!(
            o.line(),
            "criterion  1 FAIL (too slow): x [1500 ms (bound 1000 ms)]"
        );
    }
}
