use std::path::Path;

use braidcov::config::{parse_budget_override, Config};
use braidcov_core::rewriting::Budget;

#[test]
fn defaults_and_partial_files() {
    let c = Config::from_toml("", Path::new("x")).unwrap();
    assert_eq!(c, Config::default());
    let c = Config::from_toml("seed = 9\n[geometry]\nsamples = 400\n[budget]\nmax_nodes = 77\n", Path::new("x")).unwrap();
    assert_eq!(c.seed, 9);
    assert_eq!(c.geometry.samples, 400);
    assert_eq!(c.geometry.unit_tolerance, 1e-9);
    assert_eq!(c.budget.max_nodes, Some(77));
    assert!(Config::from_toml("[geometry]\nbogus = 1\n", Path::new("x")).is_err());
}

#[test]
fn budget_overrides() {
    let o = parse_budget_override("max_expansions=5000, max_length=40").unwrap();
    assert_eq!((o.max_expansions, o.max_length, o.max_nodes), (Some(5000), Some(40), None));
    assert!(parse_budget_override("max_expansions=lots").is_err());
    assert!(parse_budget_override("depth=3").is_err());
    assert_eq!(parse_budget_override("").unwrap(), Default::default());
    let c = Config::from_toml("[budget]\nmax_expansions = 10\n", Path::new("x")).unwrap();
    let b = c.budget().unwrap();
    if std::env::var_os(braidcov::config::BUDGET_VAR).is_none() {
        assert_eq!(b, Budget { max_expansions: 10, ..Budget::default() });
    }
}
