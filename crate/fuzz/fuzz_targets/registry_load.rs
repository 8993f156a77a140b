#![no_main]

use cardwriter::registry::{load_registry, serialize_registry};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(reg) = load_registry(data) {
        let bytes = serialize_registry(&reg);
        let back = load_registry(bytes.as_slice()).expect("serialized registry reloads");
        assert_eq!(back.entries(), reg.entries());
    }
});
