//! Replays the fuzz corpus through the config parser.

use std::path::Path;

use curvekit_cli::table::config_error_json;

#[test]
fn fuzz_seeds_parse_without_panicking() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/config_parse");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let bytes = std::fs::read(entry.unwrap().path()).unwrap();
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        if let Err(e) = curvekit_cli::parse(text) {
            let doc: serde_json::Value = serde_json::from_str(&config_error_json(&e)).unwrap();
            assert!(doc["error"]["kind"].is_string());
        }
        seen += 1;
    }
    assert!(seen >= 10, "corpus at {} looks empty", dir.display());
}

#[test]
fn truncated_and_mangled_configs_are_errors() {
    let text =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/example1_vanishing.json")).unwrap();
    assert!(curvekit_cli::parse(&text).is_ok());
    for cut in (0..text.len()).step_by(7) {
        if text.is_char_boundary(cut) {
            let _ = curvekit_cli::parse(&text[..cut]);
        }
    }
    assert!(curvekit_cli::parse(&text.replace("\"grid\"", "\"grdi\"")).is_err());
    assert!(curvekit_cli::parse("[1, 2, 3]").is_err());
}
