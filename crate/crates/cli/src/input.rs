use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, Context, Result};

use diamchrome::builtin;
use diamchrome::colouring::{parse_lists, Colour};
use diamchrome::gadgets::{parse_dimacs, CnfFormula};
use diamchrome::io::parse_graph;
use diamchrome::{Graph, ListAssignment};

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// A graph file, `-`, or `builtin:<name>`.
pub fn load_graph(source: &str) -> Result<Graph> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin::by_name(name)
            .ok_or_else(|| anyhow!("unknown builtin graph `{name}`; known: {}", builtin::NAMES.join(", ")));
    }
    let text = read_text(source)?;
    parse_graph(&text).with_context(|| format!("parsing graph {source}"))
}

/// The lists file if given, else `{1..k}` everywhere.
pub fn load_lists(path: Option<&Path>, n: usize, k: Colour) -> Result<ListAssignment> {
    match path {
        Some(p) => {
            let shown = p.display().to_string();
            let text = read_text(&shown)?;
            parse_lists(&text, n, k).with_context(|| format!("parsing lists {shown}"))
        }
        None => Ok(ListAssignment::full(n, k)),
    }
}

pub fn load_cnf(path: &Path) -> Result<CnfFormula> {
    let shown = path.display().to_string();
    let text = read_text(&shown)?;
    parse_dimacs(&text).with_context(|| format!("parsing formula {shown}"))
}
