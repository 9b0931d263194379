//! Fuzz the graph JSON decoder: arbitrary bytes must either be rejected
//! with an error or produce a graph whose emitters and re-parse round-trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

use zdr::graph::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = Graph::from_json(text) else {
        return;
    };
    // Anything accepted must survive a round trip unchanged and render in
    // every output format without panicking.
    let reparsed = Graph::from_json(&g.to_json()).expect("emitted JSON must parse");
    assert_eq!(reparsed, g);
    let _ = g.to_dot();
    let _ = g.to_text();
    if g.vertex_count() > 0 {
        let _ = g.distances(0);
    }
});
