// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use phonon_pump::cli::config::{apply_override, parse_override};
use phonon_pump::cli::RunConfig;
use serde_json::{Map, Value};

// first line: base config; every following line: one `key=value` override
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut lines = text.split('\n');
    let base = lines.next().filter(|l| !l.trim().is_empty());
    let overrides: Vec<String> = lines.map(str::to_owned).collect();

    let mut root = Value::Object(Map::new());
    for raw in &overrides {
        if let Ok((key, value)) = parse_override(raw) {
            assert!(!key.is_empty());
            let _ = apply_override(&mut root, &key, value);
        }
    }
    let _ = RunConfig::load(base, &overrides);
});
