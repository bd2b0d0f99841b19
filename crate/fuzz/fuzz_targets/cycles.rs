#![no_main]

use cosetforge::perm::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let degree = (data[0] as usize % 64) + 1;
    let Ok(text) = std::str::from_utf8(&data[1..]) else {
        return;
    };
    let Ok(perm) = Permutation::parse_cycles(text, degree) else {
        return;
    };
    let shown = perm.to_string();
    let again = Permutation::parse_cycles(&shown, degree).expect("display output parses");
    assert_eq!(again, perm);
    assert!(perm.compose(&perm.inverse()).is_identity());
});
