#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Err(e) = curvekit_cli::parse(text) {
            // Rendering the error must not panic either.
            let _ = curvekit_cli::table::config_error_json(&e);
        }
    }
});
