#![no_main]

use cardwriter::catalog::catalog_from_slice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(catalog) = catalog_from_slice(data) {
        for c in catalog.categories() {
            assert_eq!(catalog.get(&c.id), Some(c));
        }
    }
});
