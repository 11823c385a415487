//! Block designs, resolutions into sub-designs, and the coloring they
//! induce on `G(n, r, s)`.
//!
//! If the `(2r-s-1)`-sets of a strength-`r` design are split into parts that
//! are themselves strength-`s` designs, coloring each `r`-set by the part of
//! its unique containing block is proper: two `r`-sets of one color either
//! sit in the same block (and meet in at least `s+1` elements) or in two
//! blocks of the same part, which share at most `s-1` elements.

use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Coloring, ColoringMeta, KneserGraph, VertexSet};
use crate::subsets::{binom, for_each_sub, BinomTable, Combinations};

/// Largest number of `s`-subsets a design check will tabulate.
pub const MAX_DESIGN_SUBSETS: u64 = 1 << 27;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("block {block} is not a {r}-subset of [{n}]")]
    BadBlock { block: String, n: u32, r: u32 },
    #[error("block {0} appears twice")]
    DuplicateBlock(String),
    #[error("invalid design parameters n={n} r={r} s={s}")]
    BadParameters { n: u32, r: u32, s: u32 },
    #[error("C({n},{s}) subsets exceed the tabulation limit")]
    TooLarge { n: u32, s: u32 },
    #[error("n={0} must be even and at least 2")]
    OddOrder(u32),
    #[error("resolution is invalid: {0}")]
    InvalidResolution(String),
    #[error("{set} lies in no block of the resolution")]
    Uncontained { set: VertexSet },
    #[error("{set} lies in blocks of two different parts ({a} and {b})")]
    Ambiguous { set: VertexSet, a: usize, b: usize },
    #[error("resolution blocks have size {found}, expected 2r-s-1 = {expected}")]
    BlockSizeMismatch { found: u32, expected: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Exact designs cover every `s`-subset exactly once, approximate ones at
/// most once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignMode {
    Exact,
    Approximate,
}

/// A family of `r`-subsets of `[n]`, to be read as a design of strength `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFamily {
    n: u32,
    r: u32,
    s: u32,
    blocks: Vec<VertexSet>,
}

impl DesignFamily {
    pub fn new(n: u32, r: u32, s: u32, mut blocks: Vec<VertexSet>) -> Result<Self, DesignError> {
        if r > n || s > r {
            return Err(DesignError::BadParameters { n, r, s });
        }
        for b in &blocks {
            if b.len() != r as usize || b.elements().last().is_some_and(|&e| e > n) {
                return Err(DesignError::BadBlock {
                    block: b.to_string(),
                    n,
                    r,
                });
            }
        }
        blocks.sort();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlock(w[0].to_string()));
        }
        Ok(Self { n, r, s, blocks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Blocks in lexicographic order.
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    /// The same blocks read at another strength.
    pub fn with_strength(&self, s: u32) -> Result<Self, DesignError> {
        Self::new(self.n, self.r, s, self.blocks.clone())
    }
}

/// Coverage of the `s`-subsets of `[n]` by a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignReport {
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub blocks: usize,
    pub total_subsets: u64,
    pub exact_pass: bool,
    pub approx_pass: bool,
    pub uncovered_count: u64,
    pub uncovered_fraction: f64,
    pub multi_covered_count: u64,
}

impl DesignReport {
    pub fn passes(&self, mode: DesignMode) -> bool {
        match mode {
            DesignMode::Exact => self.exact_pass,
            DesignMode::Approximate => self.approx_pass,
        }
    }
}

/// Counts, for every `s`-subset, the blocks containing it.
pub fn check_design(f: &DesignFamily) -> Result<DesignReport, DesignError> {
    let total = binom(f.n as u64, f.s as u64);
    if total > MAX_DESIGN_SUBSETS {
        return Err(DesignError::TooLarge { n: f.n, s: f.s });
    }
    let bt = BinomTable::new(f.n as usize, f.s as usize);
    let mut hits = vec![0u8; total as usize];
    let mut sub = Vec::new();
    for b in &f.blocks {
        let idx = b.to_zero_based();
        for_each_sub(&idx, f.s as usize, &mut sub, &mut |t| {
            let h = &mut hits[bt.colex_rank(t) as usize];
            *h = h.saturating_add(1);
        });
    }
    let uncovered = hits.iter().filter(|&&h| h == 0).count() as u64;
    let multi = hits.iter().filter(|&&h| h > 1).count() as u64;
    Ok(DesignReport {
        n: f.n,
        r: f.r,
        s: f.s,
        blocks: f.blocks.len(),
        total_subsets: total,
        exact_pass: uncovered == 0 && multi == 0,
        approx_pass: multi == 0,
        uncovered_count: uncovered,
        uncovered_fraction: if total == 0 {
            0.0
        } else {
            uncovered as f64 / total as f64
        },
        multi_covered_count: multi,
    })
}

/// A design split into sub-designs of lower strength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub design: DesignFamily,
    pub parts: Vec<DesignFamily>,
}

impl Resolution {
    /// Assembles a resolution from its parts; the union is read at
    /// strength `union_s`.
    pub fn from_parts(parts: Vec<DesignFamily>, union_s: u32) -> Result<Self, DesignError> {
        let first = parts
            .first()
            .ok_or_else(|| DesignError::InvalidResolution("no parts".into()))?;
        let (n, r) = (first.n, first.r);
        let mut all = Vec::new();
        for p in &parts {
            if (p.n, p.r) != (n, r) {
                return Err(DesignError::InvalidResolution("parts disagree on n or r".into()));
            }
            all.extend(p.blocks.iter().cloned());
        }
        let design = DesignFamily::new(n, r, union_s, all).map_err(|e| match e {
            DesignError::DuplicateBlock(b) => DesignError::InvalidResolution(format!("block {b} is in two parts")),
            other => other,
        })?;
        Ok(Self { design, parts })
    }

    /// Checks that the union is an exact design and every part is an exact
    /// design of its own strength.
    pub fn validate(&self) -> Result<(), DesignError> {
        let rep = check_design(&self.design)?;
        if !rep.exact_pass {
            return Err(DesignError::InvalidResolution(format!(
                "union is not an exact ({}, {}, {})-design",
                self.design.n, self.design.r, self.design.s
            )));
        }
        for (i, p) in self.parts.iter().enumerate() {
            if !check_design(p)?.exact_pass {
                return Err(DesignError::InvalidResolution(format!(
                    "part {i} is not an exact ({}, {}, {})-design",
                    p.n, p.r, p.s
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// `[C(n,r)/C(k,r)] / [C(n,s)/C(k,s)]` with `k = 2r-s-1`: the number of
/// parts of a complete resolution, hence of colors.
pub fn resolution_color_count(n: u32, r: u32, s: u32) -> Option<u64> {
    let k = (2 * r).checked_sub(s + 1)? as u64;
    let (n, r, s) = (n as u64, r as u64, s as u64);
    let blocks = binom(n, r).checked_div(binom(k, r))?;
    let per_part = binom(n, s).checked_div(binom(k, s))?;
    blocks.checked_div(per_part)
}

/// Colors each `r`-set by the part holding its unique containing block.
pub fn resolution_coloring(res: &Resolution, target: &KneserGraph) -> Result<Coloring, DesignError> {
    let (n, r, s) = (target.n(), target.r(), target.s());
    let k = 2 * r - s - 1;
    if res.design.r != k {
        return Err(DesignError::BlockSizeMismatch {
            found: res.design.r,
            expected: k,
        });
    }
    if res.design.n != n {
        return Err(DesignError::InvalidResolution(format!(
            "resolution is on [{}], graph on [{n}]",
            res.design.n
        )));
    }
    let mut colors = vec![u32::MAX; target.vertex_count() as usize];
    let mut sub = Vec::new();
    for (pi, part) in res.parts.iter().enumerate() {
        for b in &part.blocks {
            let idx = b.to_zero_based();
            let mut clash = None;
            for_each_sub(&idx, r as usize, &mut sub, &mut |a| {
                let slot = &mut colors[target.rank_zero_based(a) as usize];
                if *slot != u32::MAX && clash.is_none() {
                    clash = Some((a.to_vec(), *slot as usize));
                }
                *slot = pi as u32;
            });
            if let Some((a, other)) = clash {
                return Err(DesignError::Ambiguous {
                    set: VertexSet::from_zero_based(&a),
                    a: other,
                    b: pi,
                });
            }
        }
    }
    if let Some(rank) = colors.iter().position(|&c| c == u32::MAX) {
        return Err(DesignError::Uncontained {
            set: target.unrank(rank as u64).expect("rank"),
        });
    }
    let meta = ColoringMeta::new("factorization", 0).with_param("parts", res.parts.len());
    Coloring::compacted(target.clone(), colors, meta).map_err(|e| DesignError::InvalidResolution(e.to_string()))
}

/// Round-robin schedule: `n-1` perfect matchings of `K_n` (circle method),
/// as a resolution of the `(n,2,2)`-design into `(n,2,1)`-designs.
pub fn one_factorization(n: u32) -> Result<Resolution, DesignError> {
    if n < 2 || n % 2 == 1 {
        return Err(DesignError::OddOrder(n));
    }
    let m = n - 1;
    let mut parts = Vec::with_capacity(m as usize);
    for round in 0..m {
        // vertex n stays fixed; 1..=m rotate
        let mut blocks = vec![pair(round + 1, n)];
        for k in 1..n / 2 {
            let a = (round + k) % m + 1;
            let b = (round + m - k) % m + 1;
            blocks.push(pair(a, b));
        }
        parts.push(DesignFamily::new(n, 2, 1, blocks)?);
    }
    Resolution::from_parts(parts, 2)
}

fn pair(a: u32, b: u32) -> VertexSet {
    VertexSet::from_unsorted(vec![a, b]).expect("distinct")
}

/// All `r`-subsets of `[n]` containing `core`.
pub fn star_family(n: u32, r: u32, core: &VertexSet) -> Vec<VertexSet> {
    let k = core.len();
    if k > r as usize || core.elements().last().is_some_and(|&e| e > n) {
        return Vec::new();
    }
    let rest: Vec<u32> = (1..=n).filter(|e| !core.contains(*e)).collect();
    Combinations::new(rest.len(), r as usize - k)
        .map(|c| {
            let mut v: Vec<u32> = core.elements().to_vec();
            v.extend(c.iter().map(|&i| rest[i]));
            VertexSet::from_unsorted(v).expect("distinct")
        })
        .collect()
}

/// Contents of a design file: header parameters and one or more parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    pub n: u32,
    pub r: u32,
    pub s: u32,
    /// strength of the union when the file holds a resolution
    pub union_s: Option<u32>,
    pub parts: Vec<Vec<VertexSet>>,
}

impl DesignFile {
    pub fn read_from(input: impl BufRead) -> Result<Self, DesignError> {
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, l)) => l?,
            None => {
                return Err(DesignError::Parse {
                    line: 1,
                    msg: "empty file".into(),
                })
            }
        };
        let fields =
            crate::graph::parse_header(&header, "#design").map_err(|msg| DesignError::Parse { line: 1, msg })?;
        let get = |k: &str| -> Result<Option<u32>, DesignError> {
            fields
                .get(k)
                .map(|v| {
                    v.parse().map_err(|e| DesignError::Parse {
                        line: 1,
                        msg: format!("bad `{k}`: {e}"),
                    })
                })
                .transpose()
        };
        let need = |k: &str| -> Result<u32, DesignError> {
            get(k)?.ok_or_else(|| DesignError::Parse {
                line: 1,
                msg: format!("missing `{k}` in header"),
            })
        };
        let (n, r, s) = (need("n")?, need("r")?, need("s")?);
        let union_s = get("union_s")?;
        let mut parts = vec![Vec::new()];
        for (idx, line) in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || (line.starts_with('#')) {
                continue;
            }
            if line == "%" {
                parts.push(Vec::new());
                continue;
            }
            let b: VertexSet = line.parse().map_err(|msg| DesignError::Parse { line: idx + 1, msg })?;
            parts.last_mut().expect("nonempty").push(b);
        }
        parts.retain(|p| !p.is_empty());
        Ok(Self {
            n,
            r,
            s,
            union_s,
            parts,
        })
    }

    /// All blocks as one family of strength `s`.
    pub fn family(&self) -> Result<DesignFamily, DesignError> {
        DesignFamily::new(self.n, self.r, self.s, self.parts.concat())
    }

    /// The parts as a resolution; the union strength defaults to `r`.
    pub fn resolution(&self) -> Result<Resolution, DesignError> {
        let parts = self
            .parts
            .iter()
            .map(|p| DesignFamily::new(self.n, self.r, self.s, p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Resolution::from_parts(parts, self.union_s.unwrap_or(self.r))
    }

    pub fn write_resolution(res: &Resolution, mut out: impl Write) -> io::Result<()> {
        let d = &res.design;
        let s = res.parts.first().map_or(d.s, |p| p.s);
        writeln!(out, "#design n={} r={} s={} union_s={}", d.n, d.r, s, d.s)?;
        for (i, p) in res.parts.iter().enumerate() {
            if i > 0 {
                writeln!(out, "%")?;
            }
            for b in &p.blocks {
                writeln!(out, "{b}")?;
            }
        }
        Ok(())
    }
}
