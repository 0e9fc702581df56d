// Copyright 2026 The phonon-pump Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};

/// Rectangular table of finite numbers with a mandatory header.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::Config(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        if let Some((k, v)) = row.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Config(format!(
                "non-finite value {v} in column {}",
                self.header[k]
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&format_significant(*v, 9));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }
}

/// `%.{digits}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".to_owned();
    }
    let digits = digits.max(1);
    // round first so that 9.999999999 → 1e1 picks the right exponent
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let mut out = String::new();
    if exp < -5 || exp >= digits as i32 {
        let _ = write!(out, "{}e{exp}", trim_zeros(mantissa));
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        out = trim_zeros(&format!("{value:.decimals$}")).to_owned();
    }
    out
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
