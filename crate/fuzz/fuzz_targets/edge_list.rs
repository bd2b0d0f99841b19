#![no_main]

use cosetforge::graph::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Cap the implied vertex count so hostile ids cannot balloon memory.
    if text
        .split_whitespace()
        .filter_map(|t| t.parse::<u64>().ok())
        .any(|v| v > 10_000)
    {
        return;
    }
    let Ok(parsed) = parse_edge_list(text) else {
        return;
    };
    let written = write_edge_list(&parsed);
    let again = parse_edge_list(&written).expect("writer output parses");
    assert_eq!(again, parsed);
});
