// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use phonon_pump::cli::RunConfig;
use phonon_pump::model::PhysicalParams;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = RunConfig::from_json_str(text) else {
        return;
    };
    if let Ok(p) = cfg.params(PhysicalParams::default()) {
        assert!(p.validate().is_ok());
        let _ = cfg.duration(p.rabi_period(), 1.0);
    }
    if let Some(sweep) = &cfg.sweep {
        if sweep.validate().is_ok() {
            let grid = sweep.grid();
            assert_eq!(grid.len(), sweep.points);
        }
    }
    // accepted configs survive a serialization round trip
    let again = serde_json::to_string(&cfg).unwrap();
    assert_eq!(RunConfig::from_json_str(&again).unwrap(), cfg);
});
