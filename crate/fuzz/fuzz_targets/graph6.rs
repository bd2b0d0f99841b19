#![no_main]

use cosetforge::graph::{certificate, parse_graph6, write_graph6, CertificateMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(parsed) = parse_graph6(text) else {
        return;
    };
    // Accepted records must round-trip bit-exactly through the writer.
    let written = write_graph6(parsed.graph());
    let again = parse_graph6(&written).expect("writer output parses");
    assert_eq!(again.edges(), parsed.edges());
    assert_eq!(write_graph6(again.graph()), written);
    // Certificates stay deterministic; keep the search small.
    if parsed.n() <= 16 {
        let a = certificate(&parsed, CertificateMode::PreserveClasses);
        let b = certificate(&again, CertificateMode::PreserveClasses);
        assert_eq!(a, b);
    }
});
