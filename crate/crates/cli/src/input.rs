//! Reading graphs, digraphs, systems, indicators and monoids from files.

use endoreg::graph::Carrier;
use endoreg::{
    parse_d6, parse_g6, parse_system, Digraph, Graph, Indicator, Monoid, ParseError, RelSystem,
};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        source: ParseError,
    },
    #[error("{path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("{path}: no structures found")]
    Empty { path: PathBuf },
    #[error("{0}")]
    Monoid(String),
}

/// One parsed input structure.
#[derive(Clone, Debug)]
pub enum Structure {
    Graph(Graph),
    Digraph(Digraph),
    System(RelSystem),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Graph(_) => "graph",
            Structure::Digraph(_) => "digraph",
            Structure::System(_) => "system",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Structure::Graph(g) => g.n(),
            Structure::Digraph(d) => d.n(),
            Structure::System(s) => s.n(),
        }
    }
}

/// Indicator file: exactly one of `graph6` and `digraph6`, plus the distinguished pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicatorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digraph6: Option<String>,
    pub input: usize,
    pub output: usize,
}

impl IndicatorFile {
    pub fn from_indicator(s: &Indicator) -> Self {
        let (graph6, digraph6) = match s.carrier() {
            Carrier::Graph(g) => (Some(endoreg::emit_g6(g)), None),
            Carrier::Digraph(d) => (None, Some(endoreg::emit_d6(d))),
        };
        IndicatorFile {
            graph6,
            digraph6,
            input: s.input(),
            output: s.output(),
        }
    }
}

pub fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.into(),
        source,
    })
}

/// All structures in a file: a JSON system, or one graph6/digraph6 code per line.
pub fn load_all(path: &Path) -> Result<Vec<Structure>, InputError> {
    let text = read(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let s = parse_system(trimmed).map_err(|source| InputError::Parse {
            path: path.into(),
            line: 1,
            source,
        })?;
        return Ok(vec![Structure::System(s)]);
    }
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |source| InputError::Parse {
            path: path.into(),
            line: k + 1,
            source,
        };
        let body = line
            .strip_prefix(">>digraph6<<")
            .or_else(|| line.strip_prefix(">>graph6<<"))
            .unwrap_or(line);
        if body.starts_with('&') {
            out.push(Structure::Digraph(parse_d6(line).map_err(err)?));
        } else {
            out.push(Structure::Graph(parse_g6(line).map_err(err)?));
        }
    }
    if out.is_empty() {
        return Err(InputError::Empty { path: path.into() });
    }
    Ok(out)
}

pub fn load_one(path: &Path) -> Result<Structure, InputError> {
    let mut all = load_all(path)?;
    if all.len() > 1 {
        return Err(InputError::Format {
            path: path.into(),
            msg: format!("expected one structure, found {}", all.len()),
        });
    }
    Ok(all.remove(0))
}

pub fn load_graph(path: &Path) -> Result<Graph, InputError> {
    match load_one(path)? {
        Structure::Graph(g) => Ok(g),
        other => Err(InputError::Format {
            path: path.into(),
            msg: format!("expected a graph, found a {}", other.kind()),
        }),
    }
}

/// Graphs from a graph6 stream, e.g. the output of an external generator.
pub fn load_graphs(path: &Path) -> Result<Vec<Graph>, InputError> {
    load_all(path)?
        .into_iter()
        .map(|s| match s {
            Structure::Graph(g) => Ok(g),
            other => Err(InputError::Format {
                path: path.into(),
                msg: format!("expected graphs, found a {}", other.kind()),
            }),
        })
        .collect()
}

/// A system file, or a digraph lifted to a one-colour system.
pub fn load_system(path: &Path) -> Result<RelSystem, InputError> {
    match load_one(path)? {
        Structure::System(s) => Ok(s),
        Structure::Digraph(d) => Ok(RelSystem::from_digraph(&d, "a")),
        Structure::Graph(_) => Err(InputError::Format {
            path: path.into(),
            msg: "expected a system or digraph".into(),
        }),
    }
}

pub fn load_indicator(path: &Path) -> Result<Indicator, InputError> {
    let text = read(path)?;
    let js: IndicatorFile = serde_json::from_str(&text).map_err(|e| InputError::Format {
        path: path.into(),
        msg: e.to_string(),
    })?;
    let err = |source| InputError::Parse {
        path: path.into(),
        line: 1,
        source,
    };
    let carrier = match (js.graph6, js.digraph6) {
        (Some(g), None) => Carrier::Graph(parse_g6(&g).map_err(err)?),
        (None, Some(d)) => Carrier::Digraph(parse_d6(&d).map_err(err)?),
        _ => {
            return Err(InputError::Format {
                path: path.into(),
                msg: "give exactly one of graph6 and digraph6".into(),
            })
        }
    };
    Indicator::new(carrier, js.input, js.output).map_err(|e| InputError::Parse {
        path: path.into(),
        line: 1,
        source: e.into(),
    })
}

/// `trivial`, `semilattice`, `cyclic:N`, or a path to a monoid JSON file.
pub fn load_monoid(spec: &str) -> Result<Monoid, InputError> {
    match spec {
        "trivial" => return Ok(Monoid::trivial()),
        "semilattice" => return Ok(Monoid::two_element_semilattice()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("cyclic:") {
        return match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Monoid::cyclic_group(n)),
            _ => Err(InputError::Monoid(format!("bad cyclic order in {spec:?}"))),
        };
    }
    let path = Path::new(spec);
    Monoid::from_json(&read(path)?)
        .map_err(|e| InputError::Monoid(format!("{}: {e}", path.display())))
}
