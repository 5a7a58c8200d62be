use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use tmd_core::{TmdError, Tree, Vertex};

/// Reads a tree in the text format: vertex count, then one edge per line.
pub fn read_tree(path: &Path) -> Result<Tree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Tree::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_tree(path: &Path, tree: &Tree) -> Result<()> {
    fs::write(path, tree.to_text()).with_context(|| format!("writing {}", path.display()))
}

/// Comma-separated ids, as given on the command line.
pub fn parse_sensor_list(list: &str) -> Result<Vec<Vertex>, TmdError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| TmdError::Parse { line: 1, message: format!("bad sensor id {s:?}") })
        })
        .collect()
}

/// One id per line; blank lines and `#` comments are skipped.
pub fn read_sensor_file(path: &Path) -> Result<Vec<Vertex>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let id = line.parse().map_err(|_| TmdError::Parse {
            line: i + 1,
            message: format!("bad sensor id {line:?}"),
        });
        ids.push(id.with_context(|| format!("parsing {}", path.display()))?);
    }
    Ok(ids)
}

pub fn write_sensor_file(path: &Path, ids: &[Vertex]) -> Result<()> {
    let text: String = ids.iter().map(|id| format!("{id}\n")).collect();
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
