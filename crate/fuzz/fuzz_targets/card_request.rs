#![no_main]

use cardwriter::{Engine, RenderFormat, WireCardRequest};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(wire) = WireCardRequest::from_json(data) else {
        return;
    };
    let engine = Engine::default();
    for format in RenderFormat::ALL {
        if let Ok(g) = engine.generate(&wire, format) {
            for span in g.card.sections().iter().flat_map(|s| s.url_spans()) {
                assert!(g.rendered.body.contains(&span.href));
            }
        }
    }
});
