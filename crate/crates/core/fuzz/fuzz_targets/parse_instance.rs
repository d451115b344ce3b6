#![no_main]

use libfuzzer_sys::fuzz_target;

use cspk::relation::{catalog, BooleanRelation, ConstraintLanguage};

fuzz_target!(|input: &str| {
    let lang = ConstraintLanguage::new(vec![
        catalog::one_in_three(),
        catalog::nae3(),
        catalog::equality(),
        BooleanRelation::k_or(2).unwrap(),
    ])
    .unwrap();
    if let Ok(inst) = cspk::io::parse_instance(input, &lang) {
        let text = cspk::io::write_instance(&inst);
        assert_eq!(cspk::io::parse_instance(&text, &lang).unwrap(), inst);
    }
});
