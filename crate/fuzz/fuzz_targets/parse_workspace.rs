//! Workspace documents: parsing never panics, and anything that parses
//! survives emit -> parse unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ooclab::workspace::{emit_workspace, parse_workspace_str};

const MAX_INPUT_SIZE: usize = 64 * 1024;

fuzz_target!(|data: &[u8]| {
    if data.len() > MAX_INPUT_SIZE {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ws) = parse_workspace_str(text) {
        let emitted = emit_workspace(&ws);
        let reparsed = parse_workspace_str(&emitted).expect("emitted workspace parses");
        assert_eq!(reparsed, ws);
        assert_eq!(emit_workspace(&reparsed), emitted);
    }
});
