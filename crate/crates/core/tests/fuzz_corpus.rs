//! Replays the checked-in fuzz corpus through the fuzz targets' properties.

#[path = "../../../fuzz/checks.rs"]
mod checks;

fn replay(target: &str, check: fn(&[u8])) {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut n = 0;
    for e in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
        let path = e.unwrap().path();
        let data = std::fs::read(&path).unwrap();
        let r = std::panic::catch_unwind(|| check(&data));
        assert!(r.is_ok(), "{target} failed on {}", path.display());
        n += 1;
    }
    assert!(n > 0, "empty corpus for {target}");
}

macro_rules! corpus {
    ($($t:ident),*) => { $( #[test] fn $t() { replay(stringify!($t), checks::$t); } )* };
}

corpus!(rat, cyc, series, weyl_text, weyl_json, hcp_text, hcp_json, graded_json, tame_word, gen_word, weight, suite_bounds);
