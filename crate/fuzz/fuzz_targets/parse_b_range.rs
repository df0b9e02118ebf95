#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = beamalign_cli::parse_b_range(text) {
            assert!(*r.start() >= 1 && r.start() <= r.end());
        }
    }
});
