//! The JSON file formats.
//!
//! An algebra file holds
//! `{"name": .., "signature": [{"op": .., "arity": ..}], "size": .., "tables": {..}}`.
//! A table for an `n`-ary symbol is an array nested `n` deep, indexed by the
//! arguments in order; a constant's table is a bare element. A class file is
//! a list of algebra names.

use kspec::{FiniteAlgebra, Signature};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub op: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub signature: Vec<SymbolSpec>,
    pub size: usize,
    pub tables: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    Algebra(String, FiniteAlgebra),
    Class(Vec<String>),
}

fn json_error(path: &str, e: serde_json::Error) -> CliError {
    CliError::schema(
        format!("{path}:{}:{}", e.line(), e.column()),
        e.to_string(),
    )
}

/// Parses an algebra or class file. `path` only labels diagnostics.
pub fn parse_entry(path: &str, text: &str) -> Result<Entry> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    if value.is_array() {
        let names: Vec<String> = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
        if names.is_empty() {
            return Err(CliError::schema(path, "a class needs at least one member"));
        }
        return Ok(Entry::Class(names));
    }
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    let alg = build(path, &file)?;
    Ok(Entry::Algebra(file.name, alg))
}

/// Checks a parsed file and builds the algebra, reporting the first bad field.
pub fn build(path: &str, file: &AlgebraFile) -> Result<FiniteAlgebra> {
    if file.size == 0 {
        return Err(CliError::schema(format!("{path}: size"), "must be at least 1"));
    }
    let signature = Signature::new(file.signature.iter().map(|s| (s.op.clone(), s.arity)))
        .map_err(|e| CliError::schema(format!("{path}: signature"), e.to_string()))?;
    for name in file.tables.keys() {
        if signature.index_of(name).is_none() {
            return Err(CliError::schema(
                format!("{path}: tables.{name}"),
                "symbol is not in the signature",
            ));
        }
    }
    let mut tables = Vec::new();
    for sym in signature.symbols() {
        let field = format!("{path}: tables.{}", sym.name);
        let value = file
            .tables
            .get(&sym.name)
            .ok_or_else(|| CliError::schema(&field, "missing table"))?;
        let mut flat = Vec::new();
        flatten(value, sym.arity, file.size, &field, &mut Vec::new(), &mut flat)?;
        tables.push(flat);
    }
    FiniteAlgebra::new(signature, file.size, tables)
        .map_err(|e| CliError::schema(format!("{path}: tables"), e.to_string()))
}

fn flatten(
    value: &Value,
    depth: usize,
    size: usize,
    field: &str,
    row: &mut Vec<usize>,
    out: &mut Vec<usize>,
) -> Result<()> {
    let at = || {
        let idx: String = row.iter().map(|i| format!("[{i}]")).collect();
        format!("{field}{idx}")
    };
    if depth == 0 {
        let entry = value
            .as_u64()
            .ok_or_else(|| CliError::schema(at(), format!("expected an element, found {value}")))?;
        if entry as usize >= size || entry > usize::MAX as u64 {
            return Err(CliError::schema(
                at(),
                format!("entry {entry} out of range for size {size}"),
            ));
        }
        out.push(entry as usize);
        return Ok(());
    }
    let items = value
        .as_array()
        .ok_or_else(|| CliError::schema(at(), format!("expected an array of {size} rows")))?;
    if items.len() != size {
        return Err(CliError::schema(
            at(),
            format!("expected {size} entries, found {}", items.len()),
        ));
    }
    for (i, item) in items.iter().enumerate() {
        row.push(i);
        flatten(item, depth - 1, size, field, row, out)?;
        row.pop();
    }
    Ok(())
}

fn nest(flat: &[usize], arity: usize, size: usize) -> Value {
    if arity == 0 {
        return Value::from(flat[0]);
    }
    let stride = flat.len() / size;
    Value::Array(
        (0..size)
            .map(|i| nest(&flat[i * stride..(i + 1) * stride], arity - 1, size))
            .collect(),
    )
}

pub fn to_file(name: &str, alg: &FiniteAlgebra) -> AlgebraFile {
    let signature = alg
        .signature()
        .symbols()
        .iter()
        .map(|s| SymbolSpec {
            op: s.name.clone(),
            arity: s.arity,
        })
        .collect();
    let tables = alg
        .signature()
        .symbols()
        .iter()
        .enumerate()
        .map(|(op, s)| (s.name.clone(), nest(alg.table(op), s.arity, alg.size())))
        .collect();
    AlgebraFile {
        name: name.to_string(),
        signature,
        size: alg.size(),
        tables,
    }
}

/// Pretty JSON for an algebra; [`parse_entry`] reads it back unchanged.
pub fn emit(name: &str, alg: &FiniteAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(name, alg)).expect("plain data");
    s.push('\n');
    s
}
