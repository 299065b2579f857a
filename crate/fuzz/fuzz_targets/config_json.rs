#![no_main]

use eiwe_cli::config::{PartialConfig, SweepConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(partial) = PartialConfig::from_json_str(text) else {
        return;
    };
    let Ok(cfg) = partial.resolve() else { return };
    cfg.validate().expect("resolved config validates");
    let again = SweepConfig::from_json_str(&cfg.to_json()).expect("serialized config parses");
    assert_eq!(again, cfg);
});
