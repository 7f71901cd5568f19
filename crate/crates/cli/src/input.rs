//! Resolving command-line values into documents.

use std::path::Path;

use serde::de::DeserializeOwned;
use ultranorm_core::group::finite::TableDocument;
use ultranorm_core::topo::{builtin, Complex, ComplexDocument};
use ultranorm_core::{Error, FieldDescriptor, FiniteGroup, GroupDescriptor, Result};

pub const BUDGET_VAR: &str = "ULTRANORM_BUDGET";

/// `@path` and paths of existing files are read; anything else is the value itself.
pub fn load(arg: &str) -> Result<String> {
    let path = arg.strip_prefix('@').or_else(|| Path::new(arg).is_file().then_some(arg));
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Input(format!("cannot read {p}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn is_document(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with('{') || t.starts_with('[')
}

pub fn field(arg: &str) -> Result<FieldDescriptor> {
    let text = load(arg)?;
    if is_document(&text) {
        let fd: FieldDescriptor =
            serde_json::from_str(&text).map_err(|e| Error::Descriptor(format!("field descriptor: {e}")))?;
        fd.validate()?;
        Ok(fd)
    } else {
        FieldDescriptor::from_label(text.trim())
    }
}

pub fn group_descriptor(arg: &str) -> Result<GroupDescriptor> {
    let g = GroupDescriptor::parse(&load(arg)?)?;
    g.validate()?;
    Ok(g)
}

pub fn finite_group(arg: &str) -> Result<FiniteGroup> {
    let text = load(arg)?;
    if is_document(&text) {
        FiniteGroup::from_document(&parse_json::<TableDocument>(&text, "group table")?)
    } else {
        FiniteGroup::from_name(text.trim())
    }
}

pub fn complex(arg: &str) -> Result<Complex> {
    let text = load(arg)?;
    if is_document(&text) {
        // Choose the schema first so errors name the offending field and position.
        let value: serde_json::Value = parse_json(&text, "complex")?;
        let doc = if value.get("boundary").is_some() {
            ComplexDocument::Cell(parse_json(&text, "cell complex")?)
        } else {
            ComplexDocument::Simplicial(parse_json(&text, "simplicial complex")?)
        };
        Complex::from_document(&doc)
    } else {
        builtin(text.trim())
    }
}

/// A list of maximal simplices, each a list of vertex names.
pub fn simplices(arg: &str) -> Result<Vec<Vec<String>>> {
    parse_json(&load(arg)?, "simplex list")
}

/// The budget and where it came from: the flag, the environment, or the default.
pub fn budget(flag: Option<usize>, default: usize) -> Result<(usize, &'static str)> {
    if let Some(b) = flag {
        return Ok((b, "flag"));
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|b| (b, "env"))
            .map_err(|_| Error::Input(format!("{BUDGET_VAR}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok((default, "default")),
    }
}
