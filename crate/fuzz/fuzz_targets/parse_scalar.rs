//! Rational literals: parsing never panics, and the canonical form
//! parses back to the same value.

#![no_main]

use libfuzzer_sys::fuzz_target;
use num_traits::Zero;
use ooclab::linalg::{format_scalar, parse_scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_scalar(text) {
        let canonical = format_scalar(&value);
        assert_eq!(parse_scalar(&canonical).expect("canonical form parses"), value);
        assert!(!value.denom().is_zero());
    }
});
