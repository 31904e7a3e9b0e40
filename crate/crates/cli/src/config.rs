//! Ingest filter from flags, optionally layered over a TOML or JSON file.
//!
//! The file holds the same fields as [`IngestFilter`]:
//!
//! ```toml
//! venues = ["Computer Graphics Forum", "ACM Trans. Graph."]
//! year_min = 1995
//! year_max = 2018
//! cleaning = ["preface", "editorial"]
//! ```
//!
//! Flags win over the file.

use std::path::{Path, PathBuf};

use clap::Args;
use finder_core::{CleaningRules, IngestFilter};

use crate::Failure;

#[derive(Args, Clone, Default)]
pub struct FilterArgs {
    /// Filter config file (.toml or .json).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Keep only this venue; repeatable.
    #[arg(long = "venue")]
    pub venues: Vec<String>,
    #[arg(long)]
    pub year_min: Option<i32>,
    #[arg(long)]
    pub year_max: Option<i32>,
    /// Title prefix marking a non-paper; repeatable. Replaces the defaults.
    #[arg(long = "exclude-title")]
    pub exclude_titles: Vec<String>,
}

fn read_config(path: &Path) -> Result<IngestFilter, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::from_str(&text).map_err(|e| e.to_string()),
        _ => toml::from_str(&text).map_err(|e| e.to_string()),
    };
    parsed.map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))
}

impl FilterArgs {
    pub fn resolve(&self) -> Result<IngestFilter, Failure> {
        let mut filter = match &self.config {
            Some(path) => read_config(path)?,
            None => IngestFilter::default(),
        };
        if !self.venues.is_empty() {
            filter.venues = self.venues.clone();
        }
        if let Some(y) = self.year_min {
            filter.year_min = y;
        }
        if let Some(y) = self.year_max {
            filter.year_max = y;
        }
        if !self.exclude_titles.is_empty() {
            filter.cleaning = CleaningRules::new(&self.exclude_titles);
        }
        filter
            .validate()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(filter)
    }
}
