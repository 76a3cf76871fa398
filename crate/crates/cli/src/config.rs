//! Resolution of flags, config files and defaults, and provenance output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

pub const BUILD_ID: &str = env!("ACHLIOPTAS_BUILD_ID");

/// A failure with its exit code: 1 for failed verification, 2 for usage,
/// configuration and runtime errors.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn verify(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<achlioptas_core::Error> for Failure {
    fn from(e: achlioptas_core::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("json error: {e}"))
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

/// Loads the subcommand's section of a JSON config file. The file is either
/// an object keyed by subcommand name or a flat object for this command.
pub fn load_section<T: DeserializeOwned + Default>(
    path: Option<&Path>,
    command: &str,
) -> CmdResult<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))?;
    let section = match value.get(command) {
        Some(v) if value.as_object().is_some_and(|o| o.len() == 1) => v.clone(),
        _ => value,
    };
    serde_json::from_value(section)
        .map_err(|e| Failure::usage(format!("bad {command} config in {}: {e}", path.display())))
}

/// Overwrites `slot` when the flag was given.
pub fn set<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

/// The resolved configuration recorded next to every result.
pub fn provenance<C: Serialize>(command: &str, threads: usize, config: &C) -> Value {
    json!({
        "command": command,
        "build": BUILD_ID,
        "threads": threads,
        "config": config,
    })
}

/// Writes provenance as `#` comment lines ahead of a CSV body.
pub fn write_csv_preamble<W: Write>(mut out: W, prov: &Value) -> io::Result<()> {
    writeln!(out, "# achlioptas {}", BUILD_ID)?;
    writeln!(
        out,
        "# config: {}",
        serde_json::to_string(prov).expect("json value")
    )
}

pub fn create(path: &Path) -> CmdResult<io::BufWriter<fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::File::create(path)
        .map(io::BufWriter::new)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> CmdResult {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Comma-separated list; the empty string gives an empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}
