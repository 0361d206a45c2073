//! Text and JSON rendering. Polynomials are always written highest power first.

use std::fmt::Display;

use clap::ValueEnum;
use qrook::exactpoly::QPoly;
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn strings<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

/// One `label_i = value` line per entry.
pub fn indexed_lines<T: Display>(label: &str, xs: &[T]) -> String {
    xs.iter().enumerate().map(|(i, x)| format!("{label}_{i} = {x}\n")).collect()
}

pub fn m_profile(m: usize, n: usize, board_size: usize, entries: &[QPoly], format: Format) -> String {
    match format {
        Format::Json => json(&json!({ "m": m, "n": n, "board_size": board_size, "M": strings(entries) })),
        Format::Text => indexed_lines("M", entries),
    }
}

pub fn h_profile(m: usize, n: usize, hits: &[QPoly], poly: &str, partition_check: bool, format: Format) -> String {
    match format {
        Format::Json => json(&json!({
            "m": m,
            "n": n,
            "H": strings(hits),
            "P": poly,
            "partition_check": partition_check,
        })),
        Format::Text => {
            let mut s = indexed_lines("H", hits);
            s += &format!("P = {poly}\npartition_check = {partition_check}\n");
            s
        }
    }
}
