//! The structure files under `fixtures/` are the canonical serialization of
//! the built-in fixtures. Set `TPAIRS_BLESS=1` to rewrite them.

use std::path::PathBuf;

use tpairs::format::{load_structure, shipped_fixture_texts};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn shipped_files_match_builtins() {
    let dir = fixture_dir();
    let bless = std::env::var("TPAIRS_BLESS").is_ok_and(|v| v == "1");
    for (name, text) in shipped_fixture_texts() {
        let path = dir.join(name);
        if bless {
            std::fs::write(&path, &text).expect("write fixture");
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name} is stale");
        let parsed = load_structure(&on_disk).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parsed.to_text(), on_disk, "{name} does not round-trip");
    }
}
