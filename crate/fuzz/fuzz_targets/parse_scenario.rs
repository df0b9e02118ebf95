#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // any input is either rejected with an error or yields a normalized mixture
        if let Ok(r) = beamalign_cli::parse_scenario_str(text) {
            let total = r.scenario.mixture().total_mass();
            assert!((total - 1.0).abs() < 1e-6, "mixture mass {total}");
        }
    }
});
