use std::io::BufRead;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// One corpus file with its collection (annotation style) and language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub collection: String,
    pub language: String,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest line {line}: expected `path collection language`")]
    Malformed { line: usize },
    #[error("manifest has no entries")]
    Empty,
    #[error("i/o error reading manifest: {0}")]
    Io(#[from] std::io::Error),
}

/// Reads a whitespace- or tab-separated manifest. Blank lines and `#`
/// comments are ignored; relative paths resolve against `base`.
pub fn read_manifest<R: BufRead>(reader: R, base: &Path) -> Result<Vec<ManifestEntry>, ManifestError> {
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = if line.contains('\t') {
            line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect()
        } else {
            line.split_whitespace().collect()
        };
        let [path, collection, language] = fields[..] else {
            return Err(ManifestError::Malformed { line: i + 1 });
        };
        let path = Path::new(path);
        entries.push(ManifestEntry {
            path: if path.is_absolute() {
                path.to_path_buf()
            } else {
                base.join(path)
            },
            collection: collection.to_string(),
            language: language.to_string(),
        });
    }
    if entries.is_empty() {
        return Err(ManifestError::Empty);
    }
    Ok(entries)
}
