#![no_main]

use cosetforge::geometry::{is_connected_geometry, levi_graph, parse_geometry, write_geometry};
use cosetforge::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Small caps keep hostile inputs from walking huge coset spaces.
    let config = RunConfig {
        element_cap: 2_000,
        flag_cap: 4_000,
        ..RunConfig::default()
    };
    // Degrees are capped too; the parser enforces its own bound but the
    // fuzzer stays in cheap territory.
    if text.len() > 4_096 {
        return;
    }
    let Ok(geom) = parse_geometry(text, &config) else {
        return;
    };
    let written = write_geometry(&geom);
    let again = parse_geometry(&written, &config).expect("writer output parses");
    assert_eq!(again.group().order(), geom.group().order());
    assert_eq!(again.borel().order(), geom.borel().order());
    let _ = is_connected_geometry(&geom);
    // Walking cosets on a big adversarial group is correct but slow; keep
    // each exec snappy.
    if geom.group().degree() <= 64 && geom.group().order() <= 5_000 {
        if let Ok(levi) = levi_graph(&geom, &config) {
            assert_eq!(
                levi.graph.edges().len() as u128,
                geom.group().order() / geom.borel().order()
            );
        }
    }
});
