use rowlab_cli::report;
use rowlab_core::audit::{AuditConfig, Status};
use rowlab_core::{Ideal, Poset};

/// Rowmotion followed by one stray toggle at the first minimal element.
fn broken_rowmotion(p: &Poset, i: &Ideal) -> Ideal {
    p.toggle(&p.row(i), p.linear_extension()[0])
}

fn small() -> AuditConfig {
    AuditConfig { max_boxes: 5, slide_samples: 100, mixtures: 10, ..AuditConfig::with_max_sum(4) }
}

#[test]
fn small_report_all_pass() {
    let r = report::build(&small(), 4);
    assert_eq!(r.checks.len(), 14);
    for c in &r.checks {
        assert_eq!(c.status, Status::Pass, "{} {}", c.key, c.detail);
    }
    assert!(r.all_passed());
}

#[test]
fn injected_rowmotion_bug_is_caught() {
    let config = AuditConfig { row: broken_rowmotion, ..small() };
    let r = report::build(&config, 4);
    let square = r.checks.iter().find(|c| c.key == "commuting-square").unwrap();
    assert_eq!(square.status, Status::Fail, "{}", square.detail);
    assert!(!r.all_passed());
    assert!(r.to_text().contains("[FAIL]  2. commuting-square"));
}
