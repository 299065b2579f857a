#![no_main]

use eiwe_cli::config::{parse_value_list, MAX_RANGE_POINTS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_value_list(text) {
        assert!(!values.is_empty());
        assert!(values.len() <= MAX_RANGE_POINTS);
        assert!(values.iter().all(|v| v.is_finite()));
    }
});
