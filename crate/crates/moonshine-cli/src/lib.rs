//! Library side of the command-line front end: configuration, table
//! writers, and the command implementations (kept as a library so the
//! acceptance suite can drive the same code paths the binary uses).

pub mod output;
pub mod runs;

use std::path::PathBuf;

use clap::ValueEnum;

use moonshine_core::precision::PrecisionContext;
use moonshine_core::thompson::{ThompsonData, MtOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Config {
    pub ctx: PrecisionContext,
    pub mt: MtOptions,
    pub trunc: i64,
    pub format: Format,
    pub jobs: usize,
    pub data: ThompsonData,
}

pub fn load_data(dir: &Option<PathBuf>) -> Result<ThompsonData, String> {
    let dir = dir
        .clone()
        .or_else(|| std::env::var_os("MOONSHINE_DATA_DIR").map(PathBuf::from));
    match dir {
        None => Ok(ThompsonData::embedded()),
        Some(dir) => {
            let table = std::fs::read_to_string(dir.join("thompson_character_table.csv"))
                .map_err(|e| format!("cannot read character table: {e}"))?;
            let classes = std::fs::read_to_string(dir.join("classes.csv"))
                .map_err(|e| format!("cannot read class metadata: {e}"))?;
            ThompsonData::from_csv(&table, &classes).map_err(|e| e.to_string())
        }
    }
}

