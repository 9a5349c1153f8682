//! Shared by the integration suites and the acceptance test.
#![allow(dead_code)]

pub mod beta;
pub mod criteria;
pub mod enumerate;
pub mod gen;

use std::path::PathBuf;

use lfr::load::Loaded;
use lfr::{load_str, Options};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

pub fn golden_path(name: &str) -> PathBuf {
    golden_dir().join(name)
}

pub fn golden_text(name: &str) -> String {
    let p = golden_path(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn load_golden(name: &str) -> Loaded {
    load_str(&golden_text(name), &Options::default()).unwrap_or_else(|d| panic!("{name}: {}", d.render(name)))
}

/// Every golden source file, sorted by name.
pub fn golden_sources() -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".lfr"))
        .collect();
    out.sort();
    out
}
