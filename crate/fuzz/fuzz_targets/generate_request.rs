#![no_main]

use cardwriter::api::{handle_generate, GenerateRequest};
use cardwriter::Engine;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(req) = serde_json::from_slice::<GenerateRequest>(data) {
        let engine = Engine::default();
        if let Ok(resp) = handle_generate(&engine, &req) {
            assert_eq!(resp, handle_generate(&engine, &req).unwrap());
        }
    }
});
