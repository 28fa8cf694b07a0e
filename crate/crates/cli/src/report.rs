//! The combined report: every check, one section each.

use rowlab_core::audit::{run_all, AuditConfig, Check, Status};
use serde::Serialize;

use crate::{Format, Output};

#[derive(Serialize)]
pub struct Report {
    pub max_sum: usize,
    pub max_boxes: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "rowlab report: a+b <= {}, shapes up to {} boxes, seed {:#x}\n{} passed, {} failed, {} skipped\n",
            self.max_sum, self.max_boxes, self.seed, self.passed, self.failed, self.skipped
        );
        for c in &self.checks {
            s.push_str(&format!("\n[{}] {:>2}. {}\n    {}\n    {}\n", c.status, c.id, c.key, c.title, c.detail));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,key,status,detail\n");
        for c in &self.checks {
            s.push_str(&format!("{},{},{},\"{}\"\n", c.id, c.key, c.status, c.detail.replace('"', "\"\"")));
        }
        s
    }
}

pub fn build(config: &AuditConfig, max_sum: usize) -> Report {
    let checks = run_all(config);
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Report {
        max_sum,
        max_boxes: config.max_boxes,
        seed: config.seed,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        checks,
    }
}

/// The report in the requested format. With `--out`, JSON and text are both written.
pub fn output(report: &Report, format: Format) -> Output {
    let body = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Ascii => report.to_text(),
    };
    let summary = format!("{} passed, {} failed, {} skipped", report.passed, report.failed, report.skipped);
    let mut out = Output::new(body, summary, report.all_passed());
    if format != Format::Json {
        out.extra.push(("report.json".into(), report.to_json()));
    }
    if format != Format::Ascii {
        out.extra.push(("report.txt".into(), report.to_text()));
    }
    out
}
