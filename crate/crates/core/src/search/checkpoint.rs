//! Resumable record of which top-level branches of a search are finished.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    /// Identifies the problem; a checkpoint is only reused for the same one.
    pub problem: String,
    /// Number of top-level branches.
    pub frontier: usize,
    /// Branches explored to the end without a witness.
    pub completed: BTreeSet<usize>,
    /// Nodes spent inside completed branches.
    pub branch_nodes: u64,
}

impl Checkpoint {
    pub fn new(problem: String, frontier: usize) -> Self {
        Self {
            version: VERSION,
            problem,
            frontier,
            completed: BTreeSet::new(),
            branch_nodes: 0,
        }
    }

    /// Loads `path` if it exists. A file for a different problem is an error
    /// rather than silently discarded.
    pub fn load(path: &Path, problem: &str, frontier: usize) -> Result<Option<Self>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
        };
        let cp: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.version != VERSION || cp.problem != problem || cp.frontier != frontier {
            return Err(Error::Checkpoint(format!(
                "{} belongs to a different search ({})",
                path.display(),
                cp.problem
            )));
        }
        if cp.completed.iter().any(|&b| b >= frontier) {
            return Err(Error::Checkpoint(format!(
                "{}: branch index out of range",
                path.display()
            )));
        }
        Ok(Some(cp))
    }

    /// Writes atomically: a sibling temporary file renamed over the target.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = temp_path(path);
        let err = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let json = serde_json::to_vec(self).expect("checkpoint serializes");
        let mut f = fs::File::create(&tmp).map_err(err)?;
        f.write_all(&json).map_err(err)?;
        f.sync_all().map_err(err)?;
        fs::rename(&tmp, path).map_err(err)
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        assert_eq!(Checkpoint::load(&path, "p", 4).unwrap(), None);
        let mut cp = Checkpoint::new("p".into(), 4);
        cp.completed.insert(2);
        cp.branch_nodes = 17;
        cp.save(&path).unwrap();
        assert_eq!(Checkpoint::load(&path, "p", 4).unwrap(), Some(cp));
        assert!(Checkpoint::load(&path, "q", 4).is_err());
        assert!(Checkpoint::load(&path, "p", 5).is_err());
        fs::write(&path, "not json").unwrap();
        assert!(Checkpoint::load(&path, "p", 4).is_err());
    }
}
