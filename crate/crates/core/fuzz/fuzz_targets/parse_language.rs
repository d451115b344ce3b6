#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    // Parsing may fail but must not panic; accepted input must round-trip.
    if let Ok(lang) = cspk::io::parse_language_with(input, 8) {
        let text = cspk::io::write_language(&lang);
        assert_eq!(cspk::io::parse_language(&text).unwrap(), lang);
    }
});
