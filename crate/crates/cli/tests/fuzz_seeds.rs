//! Replays the checked-in fuzz corpus through the fuzz-target properties.

use std::path::PathBuf;

use eiwe_cli::config::{parse_methods, parse_value_list, PartialConfig, SweepConfig, MAX_RANGE_POINTS};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn config_seeds() {
    let mut resolved = 0;
    for s in seeds("config_json") {
        let Ok(partial) = PartialConfig::from_json_str(&s) else {
            continue;
        };
        let Ok(cfg) = partial.resolve() else { continue };
        cfg.validate().unwrap();
        assert_eq!(SweepConfig::from_json_str(&cfg.to_json()).unwrap(), cfg);
        resolved += 1;
    }
    assert!(resolved >= 3);
}

#[test]
fn value_list_seeds() {
    for s in seeds("value_list") {
        if let Ok(v) = parse_value_list(&s) {
            assert!(!v.is_empty() && v.len() <= MAX_RANGE_POINTS);
            assert!(v.iter().all(|x| x.is_finite()), "{s}: {v:?}");
        }
    }
}

#[test]
fn method_seeds() {
    for s in seeds("methods") {
        if let Ok(m) = parse_methods(&s) {
            let joined: Vec<&str> = m.iter().map(|x| x.as_str()).collect();
            assert_eq!(parse_methods(&joined.join(",")).unwrap(), m);
        }
    }
}
