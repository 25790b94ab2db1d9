//! Example corpus: blank-line separated blocks of `key: value` lines.
//!
//! `name`, `source` and `command` describe the entry, `input` lines become
//! positional arguments, `expect.<path>` lines are compared against the JSON
//! output (dotted path), and every other key becomes a `--key value` flag.

use clap::Parser;
use serde_json::{json, Value};

use crate::cli::Cli;
use crate::{commands, CliError};

pub const BUNDLED: &str = include_str!("../corpus/examples.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub source: String,
    pub command: String,
    pub inputs: Vec<String>,
    pub flags: Vec<(String, String)>,
    pub expected: Vec<(String, String)>,
    pub line: usize,
}

impl CorpusEntry {
    fn argv(&self) -> Vec<String> {
        let mut argv = vec!["woundlab".to_string(), "--json".to_string()];
        argv.extend(self.command.split_whitespace().map(String::from));
        for (k, v) in &self.flags {
            if v == "true" {
                argv.push(format!("--{k}"));
            } else {
                argv.push(format!("--{k}={v}"));
            }
        }
        argv.extend(self.inputs.iter().cloned());
        argv
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    for (no, line) in lines.chain(std::iter::once((0, ""))) {
        if line.starts_with('#') {
            continue;
        }
        if !line.is_empty() {
            block.push((no, line));
            continue;
        }
        if block.is_empty() {
            continue;
        }
        entries.push(parse_block(&block)?);
        block.clear();
    }
    let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    names.sort();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::Usage(format!("corpus: duplicate entry name `{}`", w[0])));
    }
    Ok(entries)
}

fn parse_block(block: &[(usize, &str)]) -> Result<CorpusEntry, CliError> {
    let line = block[0].0;
    let mut e = CorpusEntry {
        name: String::new(),
        source: String::new(),
        command: String::new(),
        inputs: Vec::new(),
        flags: Vec::new(),
        expected: Vec::new(),
        line,
    };
    for &(no, text) in block {
        let (key, value) = text
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("corpus line {no}: expected `key: value`")))?;
        let (key, value) = (key.trim(), value.trim().to_string());
        match key {
            "name" => e.name = value,
            "source" => e.source = value,
            "command" => e.command = value,
            "input" => e.inputs.push(value),
            k if k.starts_with("expect.") => e.expected.push((k["expect.".len()..].to_string(), value)),
            k => e.flags.push((k.to_string(), value)),
        }
    }
    if e.name.is_empty() || e.command.is_empty() {
        return Err(CliError::Usage(format!("corpus entry at line {line}: `name` and `command` are required")));
    }
    if e.expected.is_empty() {
        return Err(CliError::Usage(format!("corpus entry `{}` has no expectations", e.name)));
    }
    Ok(e)
}

fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Object(map) => map.get(key),
        Value::Array(items) => key.parse::<usize>().ok().and_then(|i| items.get(i)),
        _ => None,
    })
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug)]
pub struct EntryResult {
    pub name: String,
    pub source: String,
    pub mismatches: Vec<String>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn run_entry(entry: &CorpusEntry) -> EntryResult {
    let mut result = EntryResult { name: entry.name.clone(), source: entry.source.clone(), mismatches: Vec::new() };
    let output = Cli::try_parse_from(entry.argv())
        .map_err(|e| CliError::Usage(e.to_string().lines().next().unwrap_or_default().to_string()))
        .and_then(|cli| commands::run(&cli));
    match output {
        Err(e) => result.mismatches.push(format!("error: {e}")),
        Ok(out) => {
            for (path, expected) in &entry.expected {
                match lookup(&out.json, path) {
                    None => result.mismatches.push(format!("{path}: missing (expected {expected})")),
                    Some(v) if render(v) != *expected => {
                        result.mismatches.push(format!("{path}: expected {expected}, got {}", render(v)))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    result
}

/// Runs every entry; results are ordered by name.
pub fn run_corpus(entries: &[CorpusEntry]) -> Vec<EntryResult> {
    let mut results: Vec<EntryResult> = entries.iter().map(run_entry).collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

pub fn results_json(results: &[EntryResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| json!({"name": r.name, "source": r.source, "pass": r.passed(), "mismatches": r.mismatches}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let entries = parse_corpus(BUNDLED).unwrap();
        assert!(entries.len() >= 20);
        assert!(entries.iter().all(|e| !e.source.is_empty()));
    }

    #[test]
    fn blocks_and_flags() {
        let text = "# comment\nname: a\nsource: x\ncommand: genus\np: 3\nn: 1\nm: 1\nexpect.genus: 1\n\n\nname: b\ncommand: torsor reduce\nf: t^-2\nexpect.trivial: false\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].argv(), ["woundlab", "--json", "genus", "--p=3", "--n=1", "--m=1"]);
        assert_eq!(entries[1].command, "torsor reduce");
        assert!(parse_corpus("").unwrap().is_empty());
    }

    #[test]
    fn malformed_corpora() {
        assert!(parse_corpus("name: a\nexpect.x: 1\n").is_err());
        assert!(parse_corpus("name: a\ncommand: genus\nno colon here\n").is_err());
        assert!(parse_corpus("name: a\ncommand: genus\nexpect.x: 1\n\nname: a\ncommand: genus\nexpect.x: 1\n").is_err());
    }

    #[test]
    fn paths() {
        let v = json!({"h1G": {"rank": 4}, "trace": [{"kind": "u-move"}]});
        assert_eq!(lookup(&v, "h1G.rank"), Some(&json!(4)));
        assert_eq!(lookup(&v, "trace.0.kind"), Some(&json!("u-move")));
        assert_eq!(lookup(&v, "nope"), None);
    }
}
