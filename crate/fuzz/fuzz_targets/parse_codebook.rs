#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cb) = beamalign_cli::parse_codebook_str(text) {
            // re-emitting and re-reading must succeed
            let again = beamalign_cli::CodebookFile::from_codebook(&cb).to_json();
            beamalign_cli::parse_codebook_str(&again).expect("round trip");
            let _ = cb.induced_partition();
        }
    }
});
