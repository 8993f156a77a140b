#![no_main]

use cardwriter::{best_match, builtin_registry, normalize_name, MatchKind, Threshold};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(query) = std::str::from_utf8(data) else {
        return;
    };
    let reg = builtin_registry();
    let m = best_match(&reg, query, Threshold::DEFAULT);
    match m.kind() {
        MatchKind::Exact => {
            assert_eq!(normalize_name(m.entry().unwrap().model()), normalize_name(query));
        }
        MatchKind::Fuzzy => {
            let s = m.score().unwrap();
            assert!((0.75..1.0).contains(&s));
        }
        MatchKind::None => assert!(m.entry().is_none()),
    }
});
