use std::collections::HashMap;

use super::ParseError;
use crate::dummy::Metric;
use crate::perm::SignedPerm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSymbol {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<SignedPerm>,
    pub declared_base: Option<Vec<usize>>,
}

impl TensorSymbol {
    pub fn new(name: impl Into<String>, rank: usize) -> Self {
        TensorSymbol {
            name: name.into(),
            rank,
            generators: Vec::new(),
            declared_base: None,
        }
    }
}

/// Symmetry definitions for every tensor symbol, plus the metric mode.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    symbols: HashMap<String, TensorSymbol>,
    pub metric: Metric,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Adds a symbol; a symbol of the same name is replaced.
    pub fn insert(&mut self, symbol: TensorSymbol) -> Result<(), ParseError> {
        if let Some(g) = symbol.generators.iter().find(|g| g.degree() != symbol.rank) {
            return Err(ParseError::Definitions {
                line: 0,
                msg: format!("generator {g} has degree {} but '{}' has rank {}", g.degree(), symbol.name, symbol.rank),
            });
        }
        self.symbols.insert(symbol.name.clone(), symbol);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&TensorSymbol> {
        self.symbols.get(name)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Parses the line-oriented definitions format:
///
/// ```text
/// # Riemann tensor
/// tensor R rank 4
/// gen -(1,2)
/// gen -(3,4)
/// gen +(1,3)(2,4)
/// metric symmetric
/// ```
///
/// `gen` lines belong to the most recent `tensor` line.
pub fn parse_definitions(text: &str) -> Result<Registry, ParseError> {
    let mut registry = Registry::new();
    let mut current: Option<TensorSymbol> = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let err = |msg: String| ParseError::Definitions { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("tensor") => {
                let name = words.next().ok_or_else(|| err("missing tensor name".into()))?;
                if !is_name(name) {
                    return Err(err(format!("invalid tensor name '{name}'")));
                }
                if words.next() != Some("rank") {
                    return Err(err("expected 'rank' after the tensor name".into()));
                }
                let rank: usize = words
                    .next()
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| err("rank must be a non-negative integer".into()))?;
                if let Some(extra) = words.next() {
                    return Err(err(format!("unexpected '{extra}'")));
                }
                if let Some(done) = current.take() {
                    registry.insert(done).map_err(|e| err(e.to_string()))?;
                }
                if registry.get(name).is_some() {
                    return Err(err(format!("tensor '{name}' defined twice")));
                }
                current = Some(TensorSymbol::new(name, rank));
            }
            Some("gen") => {
                let sym = current
                    .as_mut()
                    .ok_or_else(|| err("'gen' before any 'tensor' line".into()))?;
                let cycles = line["gen".len()..].trim();
                let g = SignedPerm::parse_cycles(cycles, sym.rank).map_err(|e| err(e.to_string()))?;
                sym.generators.push(g);
            }
            Some("metric") => {
                let mode = words.next().ok_or_else(|| err("missing metric mode".into()))?;
                registry.metric = mode.parse().map_err(|_| err(format!("unknown metric mode '{mode}'")))?;
                if let Some(extra) = words.next() {
                    return Err(err(format!("unexpected '{extra}'")));
                }
            }
            Some(other) => return Err(err(format!("unknown directive '{other}'"))),
            None => unreachable!("line is not empty"),
        }
    }
    if let Some(done) = current.take() {
        if registry.get(&done.name).is_some() {
            return Err(ParseError::Definitions {
                line: text.lines().count(),
                msg: format!("tensor '{}' defined twice", done.name),
            });
        }
        registry.insert(done)?;
    }
    Ok(registry)
}

pub(crate) fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}
