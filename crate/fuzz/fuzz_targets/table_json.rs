//! Fuzz the multiplication table JSON decoder: arbitrary bytes must either
//! be rejected with an error or produce a table every consumer can process.

#![no_main]

use libfuzzer_sys::fuzz_target;

use zdr::semigroup::{is_associative, validate, zero_divisor_graph, MulTable};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(t) = MulTable::from_json(text) else {
        return;
    };
    // Anything accepted must survive a round trip unchanged, and the
    // checkers must run without panicking on hostile but well-shaped input.
    let reparsed = MulTable::from_json(&t.to_json()).expect("emitted JSON must parse");
    assert_eq!(reparsed.serialize_bytes(), t.serialize_bytes());
    let _ = validate(&t);
    let _ = is_associative(&t);
    let _ = zero_divisor_graph(&t);
});
