use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;

use super::CliError;
use crate::treebank::{parse_conllu, read_manifest, ManifestEntry, ManifestError, ParsedCorpus};

pub struct LoadedCorpus {
    pub entry: ManifestEntry,
    pub parsed: ParsedCorpus,
}

pub struct EntryError {
    pub entry: ManifestEntry,
    pub message: String,
}

/// Reads the manifest and parses every selected corpus. Fails only when
/// the manifest is unusable or every entry fails.
pub fn load(manifest: Option<&Path>, collections: &[String]) -> Result<(Vec<LoadedCorpus>, Vec<EntryError>), CliError> {
    let path = manifest.ok_or_else(|| CliError::Usage("--manifest is required".into()))?;
    let file = File::open(path).map_err(|e| CliError::Ingestion(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let entries = read_manifest(BufReader::new(file), base).map_err(|e| match e {
        ManifestError::Io(io) => CliError::Ingestion(format!("{}: {io}", path.display())),
        other => CliError::Usage(format!("{}: {other}", path.display())),
    })?;
    let entries: Vec<ManifestEntry> = entries
        .into_iter()
        .filter(|e| collections.is_empty() || collections.contains(&e.collection))
        .collect();
    if entries.is_empty() {
        return Err(CliError::Usage(format!(
            "no manifest entries match collections {collections:?}"
        )));
    }
    let results: Vec<Result<LoadedCorpus, EntryError>> = entries
        .into_par_iter()
        .map(|entry| {
            let parsed = File::open(&entry.path)
                .map_err(|e| e.to_string())
                .and_then(|f| parse_conllu(BufReader::new(f)).map_err(|e| e.to_string()));
            match parsed {
                Ok(parsed) => Ok(LoadedCorpus { entry, parsed }),
                Err(message) => Err(EntryError {
                    message: format!("{}: {message}", entry.path.display()),
                    entry,
                }),
            }
        })
        .collect();
    let mut ok = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(c) => ok.push(c),
            Err(e) => errors.push(e),
        }
    }
    for e in &errors {
        eprintln!("depdist: skipping {}", e.message);
    }
    if ok.is_empty() {
        return Err(CliError::Ingestion(
            errors.iter().map(|e| e.message.as_str()).collect::<Vec<_>>().join("; "),
        ));
    }
    Ok((ok, errors))
}

/// File-name-safe version of a label.
pub fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
