//! End-to-end coloring of `G(p^2 - 1, 4, 2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{verify_coloring, Coloring, ColoringMeta, KneserGraph, VerificationReport};
use crate::solver::{cover_combine_kneser, greedy_extend, KneserTracker, ScanTracker, UNCOLORED};

use super::cayley::{cayley_color_orbit, Psi, NO_COLOR};
use super::dependence::{all_orderings, ShortDetector, DEFAULT_CLASS_BUDGET};
use super::family::{ATuple, Family};
use super::orbits::orbit_decompose;
use super::residual::{residual_cover, Classification, VertexClass, DEFAULT_D_BUDGET};
use super::wall::build_wall;
use super::G42Error;

/// Which family members are withheld from the orbit coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Routing {
    /// Short orbits, orbits with repeated determinants and wall members
    /// all go to the residual pass.
    Strict,
    /// Every member is orbit-colored; members closing a monochromatic
    /// edge are evicted to the residual pass.
    Repair,
}

impl Routing {
    pub fn as_str(self) -> &'static str {
        match self {
            Routing::Strict => "strict",
            Routing::Repair => "repair",
        }
    }
}

impl fmt::Display for Routing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Routing {
    type Err = G42Error;
    fn from_str(s: &str) -> Result<Self, G42Error> {
        match s {
            "strict" => Ok(Routing::Strict),
            "repair" => Ok(Routing::Repair),
            _ => Err(G42Error::BadParams(format!("unknown routing `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineParams {
    pub p: u32,
    /// dependence length threshold
    pub t: u32,
    /// box radius
    pub lambda: u32,
    /// number of box translates
    pub q: u32,
    pub seed: u64,
    pub routing: Routing,
}

impl PipelineParams {
    /// Defaults `t = 3`, `λ = 1`, `q = p`, seed 0, strict routing.
    pub fn new(p: u32) -> Self {
        Self {
            p,
            t: 3,
            lambda: 1,
            q: p,
            seed: 0,
            routing: Routing::Strict,
        }
    }

    pub fn validate(&self) -> Result<(), G42Error> {
        if self.p < 5 {
            return Err(G42Error::PrimeTooSmall(self.p));
        }
        crate::algebra::PrimeField::new(self.p)?;
        if self.t < 1 || self.lambda < 1 || self.q < 1 {
            return Err(G42Error::BadParams("t, lambda and q must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub p: u32,
    pub n: u32,
    pub params: PipelineParams,
    pub family_size: usize,
    pub short_count: usize,
    pub orbit_count: usize,
    pub short_orbits: usize,
    pub degenerate_orbits: usize,
    pub wall_total: usize,
    /// Non-identity dependence classes that are identically 1.
    pub trivial_classes: usize,
    pub cayley_conflicts: usize,
    pub evicted: usize,
    pub components: usize,
    pub max_colors_per_orbit: usize,
    pub good_vertices: usize,
    pub u1_size: usize,
    pub u2_size: usize,
    pub u_star_size: usize,
    pub cover_parts: usize,
    pub cover_l: usize,
    pub cover_d: usize,
    pub cover_d_measured: bool,
    pub delta_u_star: u64,
    pub colors_good: usize,
    pub colors_u1: usize,
    pub colors_residual: usize,
    pub colors_total: usize,
    /// `Δ + 1` of the whole graph.
    pub greedy_bound: u64,
    pub ratio_to_n2_over_6: f64,
    pub proper: bool,
}

#[derive(Clone, Debug)]
pub struct G42Output {
    pub coloring: Coloring,
    pub report: PipelineReport,
    pub verification: VerificationReport,
}

/// Builds, colors, repairs and verifies.
pub fn color_g42(params: &PipelineParams) -> Result<G42Output, G42Error> {
    params.validate()?;
    let family = Family::build(params.p)?;
    let field = family.field();
    let n = family.n();

    let mut dec = orbit_decompose(&family);
    let reference: Vec<ATuple> = dec
        .orbits
        .iter()
        .flat_map(|o| all_orderings(&o.representative))
        .collect();
    let detector = ShortDetector::new(field, params.t, DEFAULT_CLASS_BUDGET, &reference)?;
    dec.mark_short(&detector);
    let walls = build_wall(&mut dec, field, params.lambda, params.q, params.seed);

    // orbit colors, per family member
    let psi = Psi::default();
    let mut member_color = vec![u32::MAX; family.len()];
    let (mut conflicts, mut evicted, mut components, mut max_per_orbit) = (0, 0, 0, 0);
    for (j, o) in dec.orbits.iter().enumerate() {
        let skip_orbit = params.routing == Routing::Strict && (o.short || walls[j].degenerate);
        let active: Vec<bool> = o
            .wall
            .iter()
            .map(|&w| !skip_orbit && !(w && params.routing != Routing::Repair))
            .collect();
        if !active.iter().any(|&a| a) {
            continue;
        }
        let cc = cayley_color_orbit(&family, &dec, j, &active, &psi);
        conflicts += cc.conflicts.len();
        evicted += cc.evicted_count();
        components += cc.components;
        max_per_orbit = max_per_orbit.max(cc.colors_used());
        for (m, &c) in o.members.iter().zip(&cc.colors) {
            if c != NO_COLOR {
                member_color[m.set as usize] = j as u32 * 20 + c as u32;
            }
        }
    }

    let g = KneserGraph::exact(n, 4, 2).expect("valid parameters");
    let cls = Classification::new(&family, |i| member_color[i] != u32::MAX);
    let rc = residual_cover(&family, &g, &cls, DEFAULT_D_BUDGET);

    let total = g.vertex_count() as usize;
    let mut reserve = vec![UNCOLORED; total];
    let u2 = cls.ranks(VertexClass::U2);
    let (colors_u1, _) = match KneserTracker::new(&g) {
        Ok(mut tr) => {
            let a = cover_combine_kneser(&g, &rc.cover, &mut reserve, &mut tr)?;
            (a, greedy_extend(&g, u2.iter().copied(), &mut reserve, &mut tr))
        }
        Err(_) => {
            let mut tr = ScanTracker::new(&g);
            let a = cover_combine_kneser(&g, &rc.cover, &mut reserve, &mut tr)?;
            (a, greedy_extend(&g, u2.iter().copied(), &mut reserve, &mut tr))
        }
    };
    let colors_u1 = colors_u1 as usize;

    // good colors first, densely renumbered, then the reserve palette
    let mut good_index: BTreeMap<u32, u32> = BTreeMap::new();
    for (r, &c) in cls.class.iter().enumerate() {
        if c == VertexClass::Good {
            good_index.insert(member_color[cls.completion[r] as usize], 0);
        }
    }
    for (i, v) in good_index.values_mut().enumerate() {
        *v = i as u32;
    }
    let colors_good = good_index.len();
    let colors: Vec<u32> = (0..total)
        .map(|r| match cls.class[r] {
            VertexClass::Good => good_index[&member_color[cls.completion[r] as usize]],
            _ => colors_good as u32 + reserve[r],
        })
        .collect();

    let meta = ColoringMeta::new("g42", params.seed)
        .with_param("p", params.p)
        .with_param("t", params.t)
        .with_param("lambda", params.lambda)
        .with_param("q", params.q)
        .with_param("routing", params.routing);
    let coloring = Coloring::compacted(g.clone(), colors, meta).expect("every vertex colored");
    let verification = verify_coloring(&g, &coloring).expect("same graph");
    if !verification.proper {
        return Err(G42Error::Improper {
            violation_count: verification.violation_count,
            violations: verification
                .violations
                .iter()
                .map(|(a, b)| format!("{a} {b}"))
                .collect(),
        });
    }

    let colors_total = coloring.num_colors();
    let report = PipelineReport {
        p: params.p,
        n,
        params: *params,
        family_size: family.len(),
        short_count: dec.short_sets(),
        orbit_count: dec.orbits.len(),
        short_orbits: dec.orbits.iter().filter(|o| o.short).count(),
        degenerate_orbits: walls.iter().filter(|w| w.degenerate).count(),
        wall_total: walls.iter().map(|w| w.wall_size).sum(),
        trivial_classes: detector.trivial_classes().len(),
        cayley_conflicts: conflicts,
        evicted,
        components,
        max_colors_per_orbit: max_per_orbit,
        good_vertices: cls.count(VertexClass::Good),
        u1_size: cls.count(VertexClass::U1),
        u2_size: u2.len(),
        u_star_size: rc.u_star_size,
        cover_parts: rc.cover.parts.len(),
        cover_l: rc.cover.l,
        cover_d: rc.cover.d,
        cover_d_measured: rc.d_measured,
        delta_u_star: rc.delta_u_star,
        colors_good,
        colors_u1,
        colors_residual: colors_total - colors_good,
        colors_total,
        greedy_bound: g.regular_degree() + 1,
        ratio_to_n2_over_6: colors_total as f64 / (n as f64 * n as f64 / 6.0),
        proper: verification.proper,
    };
    Ok(G42Output {
        coloring,
        report,
        verification,
    })
}

/// Family statistics without coloring.
#[derive(Clone, Debug, Serialize)]
pub struct G42Stats {
    pub p: u32,
    pub n: u32,
    pub t: u32,
    pub family_size: usize,
    /// `n^4 / 120`
    pub family_estimate: f64,
    pub orbit_count: usize,
    /// `n^2 / 120`
    pub orbit_estimate: f64,
    pub short_count: usize,
    pub short_fraction: f64,
    pub trivial_classes: usize,
    pub classes_scanned: usize,
    /// orbit size -> number of orbits
    pub orbit_sizes: BTreeMap<usize, usize>,
    /// number of distinct determinants -> number of orbits
    pub distinct_dets: BTreeMap<usize, usize>,
}

pub fn g42_stats(p: u32, t: u32) -> Result<G42Stats, G42Error> {
    if p < 5 {
        return Err(G42Error::PrimeTooSmall(p));
    }
    let family = Family::build(p)?;
    let mut dec = orbit_decompose(&family);
    let reference: Vec<ATuple> = dec
        .orbits
        .iter()
        .flat_map(|o| all_orderings(&o.representative))
        .collect();
    let detector = ShortDetector::new(family.field(), t, DEFAULT_CLASS_BUDGET, &reference)?;
    dec.mark_short(&detector);
    let n = family.n();
    let mut orbit_sizes = BTreeMap::new();
    let mut distinct_dets = BTreeMap::new();
    for o in &dec.orbits {
        *orbit_sizes.entry(o.len()).or_insert(0) += 1;
        *distinct_dets.entry(o.tilde_t().len()).or_insert(0) += 1;
    }
    let short_count = dec.short_sets();
    Ok(G42Stats {
        p,
        n,
        t,
        family_size: family.len(),
        family_estimate: (n as f64).powi(4) / 120.0,
        orbit_count: dec.orbits.len(),
        orbit_estimate: (n as f64).powi(2) / 120.0,
        short_count,
        short_fraction: short_count as f64 / family.len() as f64,
        trivial_classes: detector.trivial_classes().len(),
        classes_scanned: detector.class_count(),
        orbit_sizes,
        distinct_dets,
    })
}
