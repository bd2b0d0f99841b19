#![no_main]

use cosetforge::analysis::CsvRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rec) = CsvRecord::parse_line(text) else {
        return;
    };
    let line = rec.to_line();
    let again = CsvRecord::parse_line(&line).expect("serialized row parses");
    assert_eq!(again.to_line(), line);
});
