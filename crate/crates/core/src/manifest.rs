//! Known optima for the benchmark instances.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::instance::Time;

const BUNDLED: &str = include_str!("../../../data/manifest.csv");

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest: {0}")]
    Csv(#[from] csv::Error),
    #[error("manifest: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub n_jobs: usize,
    pub n_machines: usize,
    pub known_optimum: Option<Time>,
}

#[derive(Debug, Clone, Default)]
pub struct Manifest {
    entries: BTreeMap<String, ManifestEntry>,
}

impl Manifest {
    /// The manifest compiled into the crate (`data/manifest.csv`).
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled manifest is valid")
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut entries = BTreeMap::new();
        for row in reader.deserialize() {
            let entry: ManifestEntry = row?;
            entries.insert(entry.name.clone(), entry);
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ManifestError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, name: &str) -> Option<&ManifestEntry> {
        self.entries.get(name)
    }

    pub fn optimum(&self, name: &str) -> Option<Time> {
        self.get(name).and_then(|e| e.known_optimum)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
