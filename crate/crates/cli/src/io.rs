use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::Failure;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn require_in(path: &Option<PathBuf>) -> Result<&Path, Failure> {
    path.as_deref()
        .ok_or_else(|| Failure::Input("missing --in <FILE>".into()))
}

/// Pretty JSON with a trailing newline, to `out` or stdout. Files are written
/// to a temporary sibling first and renamed into place.
pub fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    match out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("cannot write stdout: {e}")))?;
        }
        Some(path) => {
            let mut tmp = path.clone().into_os_string();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, &text)
                .and_then(|_| fs::rename(&tmp, path))
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    Ok(())
}
