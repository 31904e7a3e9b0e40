//! Session persistence backends.

use std::collections::HashMap;
use std::fs;
use std::io::{self, ErrorKind};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Stores serialized sessions by id.
pub trait SessionStore: Send + Sync {
    fn load(&self, id: &str) -> io::Result<Option<String>>;
    fn save(&self, id: &str, blob: &str) -> io::Result<()>;
    fn delete(&self, id: &str) -> io::Result<bool>;
}

/// One `<id>.json` file per session in a directory.
#[derive(Debug, Clone)]
pub struct DirStore {
    dir: PathBuf,
}

impl DirStore {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> io::Result<PathBuf> {
        let valid = !id.is_empty()
            && id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
        if !valid {
            return Err(io::Error::new(
                ErrorKind::InvalidInput,
                "invalid session id",
            ));
        }
        Ok(self.dir.join(format!("{id}.json")))
    }
}

impl SessionStore for DirStore {
    fn load(&self, id: &str) -> io::Result<Option<String>> {
        let path = match self.path(id) {
            Ok(p) => p,
            Err(_) => return Ok(None),
        };
        match fs::read_to_string(path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn save(&self, id: &str, blob: &str) -> io::Result<()> {
        let path = self.path(id)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, blob)?;
        fs::rename(tmp, path)
    }

    fn delete(&self, id: &str) -> io::Result<bool> {
        let Ok(path) = self.path(id) else {
            return Ok(false);
        };
        match fs::remove_file(path) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(false),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Default)]
pub struct MemoryStore {
    blobs: Mutex<HashMap<String, String>>,
}

impl SessionStore for MemoryStore {
    fn load(&self, id: &str) -> io::Result<Option<String>> {
        Ok(self.blobs.lock().unwrap().get(id).cloned())
    }

    fn save(&self, id: &str, blob: &str) -> io::Result<()> {
        self.blobs
            .lock()
            .unwrap()
            .insert(id.to_owned(), blob.to_owned());
        Ok(())
    }

    fn delete(&self, id: &str) -> io::Result<bool> {
        Ok(self.blobs.lock().unwrap().remove(id).is_some())
    }
}
