mod common;

use assertlint_core::discover::{discover, DiscoverOptions};
use assertlint_core::report::{from_json, to_json};
use assertlint_core::{Analyzer, AnalyzerConfig};

#[test]
fn listings_report_two_test_classes() {
    let analyses = common::analyze_dir("listings");
    let report = Analyzer::new(AnalyzerConfig::default()).summarize(&analyses);
    assert_eq!(report.totals.test_classes, 2);
    assert!(report.totals.with_message >= 2);
    assert_eq!(report.projects.len(), 1);
    assert_eq!(report.projects[0].name, "listings");
}

#[test]
fn parallel_and_sequential_agree() {
    let roots = [common::fixtures()];
    let inputs = discover(&roots, &DiscoverOptions::default()).unwrap();
    let analyzer = Analyzer::new(AnalyzerConfig::default());
    let sequential = analyzer.analyze_sequential(&inputs);
    for jobs in [None, Some(2), Some(4)] {
        let other = analyzer.analyze_files(&inputs, jobs);
        assert_eq!(other, sequential);
        assert_eq!(
            to_json(&analyzer.summarize(&other)).unwrap(),
            to_json(&analyzer.summarize(&sequential)).unwrap()
        );
    }
}

#[test]
fn json_report_round_trips() {
    let analyses = common::analyze_dir("message-examples");
    let report = Analyzer::new(AnalyzerConfig::default()).summarize(&analyses);
    let json = to_json(&report).unwrap();
    let back = from_json(&json).unwrap();
    assert_eq!(back, report);
    assert_eq!(to_json(&back).unwrap(), json);
}

#[test]
fn empty_directory_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let inputs = discover(&[dir.path().to_path_buf()], &DiscoverOptions::default()).unwrap();
    let analyzer = Analyzer::new(AnalyzerConfig::default());
    let report = analyzer.summarize(&analyzer.analyze_files(&inputs, None));
    assert_eq!(report.totals.assertions, 0);
    assert!(report.categories.is_empty());
    assert!(report.readability.is_empty());
}

#[test]
fn recorded_percentages_match_counts() {
    let analyses = common::analyze_dir("message-examples");
    let report = Analyzer::new(AnalyzerConfig::default()).summarize(&analyses);
    let total: u64 = report.categories.iter().map(|r| r.count).sum();
    for row in &report.categories {
        let recomputed = row.count as f64 * 100.0 / total as f64;
        assert_eq!(format!("{recomputed:.2}"), format!("{:.2}", row.percent));
    }
    let with = report.totals.with_message;
    assert_eq!(with + report.totals.without_message, report.totals.assertions);
    assert_eq!(report.categories.iter().map(|r| r.count).sum::<u64>() + report.totals.unclassifiable, with);
}
