use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{AdjacencyMode, GraphError, KneserGraph, VertexSet};

/// Provenance carried alongside a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoringMeta {
    pub method: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub repairs: u64,
}

impl ColoringMeta {
    pub fn new(method: impl Into<String>, seed: u64) -> Self {
        Self {
            method: method.into(),
            seed,
            ..Self::default()
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// A total vertex coloring of a [`KneserGraph`] with contiguous color ids
/// `0..k`. Colors are stored by lexicographic vertex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    graph: KneserGraph,
    colors: Vec<u32>,
    num_colors: usize,
    pub meta: ColoringMeta,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} listed twice")]
    Duplicate { line: usize, vertex: String },
    #[error("coloring is partial: {missing} of {total} vertices have no color")]
    Partial { missing: u64, total: u64 },
    #[error("color ids are not contiguous: {0}")]
    NonContiguous(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Coloring {
    /// Wraps a color vector indexed by vertex rank; ids must already be
    /// contiguous.
    pub fn new(graph: KneserGraph, colors: Vec<u32>, meta: ColoringMeta) -> Result<Self, ParseError> {
        if colors.len() as u64 != graph.vertex_count() {
            return Err(ParseError::Partial {
                missing: graph.vertex_count().saturating_sub(colors.len() as u64),
                total: graph.vertex_count(),
            });
        }
        let num_colors = contiguous_count(&colors).map_err(ParseError::NonContiguous)?;
        Ok(Self {
            graph,
            colors,
            num_colors,
            meta,
        })
    }

    /// Renumbers arbitrary ids densely, preserving their relative order.
    pub fn compacted(graph: KneserGraph, mut colors: Vec<u32>, meta: ColoringMeta) -> Result<Self, ParseError> {
        compact_in_place(&mut colors);
        Self::new(graph, colors, meta)
    }

    pub fn graph(&self) -> &KneserGraph {
        &self.graph
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Colors by lexicographic vertex rank.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of(&self, v: &VertexSet) -> Result<u32, GraphError> {
        Ok(self.colors[self.graph.rank(v)? as usize])
    }

    /// Vertex ranks grouped by color.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        let mut classes = vec![Vec::new(); self.num_colors];
        for (rank, &c) in self.colors.iter().enumerate() {
            classes[c as usize].push(rank as u64);
        }
        classes
    }

    pub fn write_to(&self, mut out: impl Write) -> io::Result<()> {
        let g = &self.graph;
        writeln!(
            out,
            "#kneser n={} r={} s={} mode={} method={} seed={}",
            g.n(),
            g.r(),
            g.s(),
            g.mode().as_str(),
            self.meta.method,
            self.meta.seed
        )?;
        let mut line = String::new();
        for (v, c) in g.vertices().zip(&self.colors) {
            line.clear();
            let _ = write!(line, "{v}\t{c}");
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses the text format written by [`Coloring::write_to`]. Vertex lines
    /// may come in any order but must cover every vertex exactly once.
    pub fn read_from(input: impl BufRead) -> Result<Self, ParseError> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::Syntax {
            line: 1,
            msg: "empty file".into(),
        })?;
        let header = header?;
        let fields = parse_header(&header, "#kneser").map_err(|msg| ParseError::Syntax { line: 1, msg })?;
        let num = |k: &str| -> Result<u64, ParseError> {
            fields
                .get(k)
                .ok_or_else(|| ParseError::Syntax {
                    line: 1,
                    msg: format!("missing `{k}` in header"),
                })?
                .parse::<u64>()
                .map_err(|e| ParseError::Syntax {
                    line: 1,
                    msg: format!("bad `{k}`: {e}"),
                })
        };
        let (n, r, s) = (num("n")? as u32, num("r")? as u32, num("s")? as u32);
        let seed = num("seed")?;
        let mode: AdjacencyMode = fields
            .get("mode")
            .map(String::as_str)
            .unwrap_or("exact")
            .parse()
            .map_err(|msg| ParseError::Syntax { line: 1, msg })?;
        let method = fields.get("method").cloned().unwrap_or_default();
        let graph = KneserGraph::new(n, r, s, mode)?;

        let total = graph.vertex_count();
        let mut colors = vec![u32::MAX; total as usize];
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |msg: String| ParseError::Syntax { line: line_no, msg };
            let (v, c) = line
                .split_once('\t')
                .ok_or_else(|| syntax("expected `<vertex>\\t<color>`".into()))?;
            let v: VertexSet = v.parse().map_err(syntax)?;
            let c: u32 = c.trim().parse().map_err(|e| ParseError::Syntax {
                line: line_no,
                msg: format!("bad color: {e}"),
            })?;
            if c == u32::MAX {
                return Err(syntax("color id too large".into()));
            }
            let rank = graph.rank(&v).map_err(|e| syntax(e.to_string()))? as usize;
            if colors[rank] != u32::MAX {
                return Err(ParseError::Duplicate {
                    line: line_no,
                    vertex: v.to_string(),
                });
            }
            colors[rank] = c;
        }
        let missing = colors.iter().filter(|&&c| c == u32::MAX).count() as u64;
        if missing > 0 {
            return Err(ParseError::Partial { missing, total });
        }
        Self::new(graph, colors, ColoringMeta::new(method, seed))
    }
}

/// Parses `#tag key=value key=value ...`.
pub(crate) fn parse_header(line: &str, tag: &str) -> Result<BTreeMap<String, String>, String> {
    let rest = line
        .trim()
        .strip_prefix(tag)
        .ok_or_else(|| format!("header must start with `{tag}`"))?;
    let mut out = BTreeMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| format!("header token `{tok}` is not key=value"))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn contiguous_count(colors: &[u32]) -> Result<usize, String> {
    let Some(&max) = colors.iter().max() else {
        return Ok(0);
    };
    let mut seen = vec![false; max as usize + 1];
    for &c in colors {
        seen[c as usize] = true;
    }
    match seen.iter().position(|&s| !s) {
        Some(gap) => Err(format!("color {gap} unused but {max} present")),
        None => Ok(max as usize + 1),
    }
}

/// Dense renumbering preserving the order of the original ids.
pub(crate) fn compact_in_place(colors: &mut [u32]) -> usize {
    let mut ids: Vec<u32> = colors.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for c in colors.iter_mut() {
        *c = ids.binary_search(c).expect("present") as u32;
    }
    ids.len()
}
