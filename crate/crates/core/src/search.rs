//! Desk-scale enumeration: 5-cap censuses, Mermin squares in W(3,2), and
//! rectangles of the Harvey-Chryssanthacopoulos shape in W(7,2).
//!
//! Every search walks candidates in canonical integer order and filters
//! through the same verifiers the rest of the crate exposes, so identical
//! options give identical output.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::classify::{classify_set, GeometryKind};
use crate::error::{Error, Result};
use crate::geometry::{all_points, SymplecticPoint, Subspace};
use crate::magic::{complement_config, parity_witness, quadric_contexts, Context, MagicConfiguration};
use crate::pauli::{PauliObservable, Sign};

pub const DEFAULT_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    MerminSquare,
    HcRectangle,
    OvoidCensus,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mermin_square" => Ok(Shape::MerminSquare),
            "hc_rectangle" => Ok(Shape::HcRectangle),
            "ovoid_census" => Ok(Shape::OvoidCensus),
            other => Err(Error::UnsupportedSearch(format!("unknown shape {other:?}"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::MerminSquare => "mermin_square",
            Shape::HcRectangle => "hc_rectangle",
            Shape::OvoidCensus => "ovoid_census",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub qubit_count: usize,
    pub anchor: Option<SymplecticPoint>,
    pub shape: Shape,
    pub limit: usize,
    pub dedup: bool,
    /// Ambient generators to search inside (rectangles only); `None` searches
    /// every maximal totally isotropic subspace through the anchor.
    pub seed: Option<Vec<Subspace>>,
}

impl SearchOptions {
    pub fn new(shape: Shape, qubit_count: usize) -> Self {
        Self {
            qubit_count,
            anchor: None,
            shape,
            limit: DEFAULT_LIMIT,
            dedup: true,
            seed: None,
        }
    }

    pub fn anchor(mut self, anchor: SymplecticPoint) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn seed(mut self, seed: Vec<Subspace>) -> Self {
        self.seed = Some(seed);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.limit == 0 {
            return Err(Error::UnsupportedSearch("limit must be at least 1".into()));
        }
        if let Some(a) = self.anchor {
            if a.qubits() != self.qubit_count {
                return Err(Error::QubitMismatch {
                    left: self.qubit_count,
                    right: a.qubits(),
                });
            }
        }
        Ok(())
    }
}

/// The point of `IXII`, the default rectangle anchor.
pub fn default_anchor() -> SymplecticPoint {
    "IXII"
        .parse::<PauliObservable>()
        .and_then(|o| o.to_point())
        .expect("valid word")
}

/// Ambient PG(3,2)s spanned by the built-in rectangle's four quadric contexts.
pub fn rectangle_seed() -> Vec<Subspace> {
    crate::catalog::hc_rectangle().contexts()[..4]
        .iter()
        .map(Context::span)
        .collect()
}

/// All elliptic quadrics (5-caps with no four coplanar) of a PG(3,2).
pub fn enumerate_caps(s: &Subspace) -> Result<Vec<[SymplecticPoint; 5]>> {
    if s.rank() != 4 {
        return Err(Error::WrongRank {
            expected: 4,
            actual: s.rank(),
        });
    }
    let points = s.points();
    let mut caps = Vec::new();
    for combo in points.iter().copied().combinations(5) {
        if classify_set(&combo)?.kind == GeometryKind::CapEllipticQuadric {
            caps.push([combo[0], combo[1], combo[2], combo[3], combo[4]]);
        }
    }
    Ok(caps)
}

/// Every maximal totally isotropic subspace containing `anchor`, sorted by basis.
pub fn maximal_isotropic_through(anchor: SymplecticPoint) -> Vec<Subspace> {
    let mut level: BTreeSet<Subspace> =
        BTreeSet::from([Subspace::span(&[anchor]).expect("one point")]);
    loop {
        let mut next = BTreeSet::new();
        let mut grew = false;
        for s in &level {
            let extensions = s.isotropic_extensions();
            if extensions.is_empty() {
                next.insert(s.clone());
                continue;
            }
            grew = true;
            for p in extensions {
                next.insert(s.extended(p).expect("same qubits"));
            }
        }
        level = next;
        if !grew {
            return level.into_iter().collect();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapCensus {
    pub ambient: Vec<SymplecticPoint>,
    pub count: usize,
    pub caps: Vec<[SymplecticPoint; 5]>,
}

/// Quadric census of PG(3,2)s: the whole point space at two qubits, or the
/// maximal totally isotropic subspaces through the anchor at four.
pub fn ovoid_census(options: &SearchOptions) -> Result<Vec<CapCensus>> {
    options.validate()?;
    let ambients = match options.qubit_count {
        2 => vec![Subspace::from_vectors(1..16, 2)?],
        4 => {
            let anchor = options.anchor.unwrap_or_else(default_anchor);
            match &options.seed {
                Some(seed) => seed.clone(),
                None => maximal_isotropic_through(anchor),
            }
        }
        n => {
            return Err(Error::UnsupportedSearch(format!(
                "ovoid_census needs a PG(3,2): supported at 2 or 4 qubits, not {n}"
            )))
        }
    };
    ambients
        .iter()
        .take(options.limit)
        .map(|s| {
            let caps = enumerate_caps(s)?;
            Ok(CapCensus {
                ambient: s.points(),
                count: caps.len(),
                caps,
            })
        })
        .collect()
}

fn plus(p: SymplecticPoint) -> PauliObservable {
    PauliObservable::from_point(p)
}

/// Lines of a point set (triples closed under XOR), each sorted, in canonical order.
fn lines_within(points: &[SymplecticPoint]) -> Vec<[SymplecticPoint; 3]> {
    let set: HashSet<u32> = points.iter().map(|p| p.bits()).collect();
    let mut out = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let r = p.third_point(q).expect("distinct");
            if r > q && set.contains(&r.bits()) {
                out.push([p, q, r]);
            }
        }
    }
    out.sort();
    out
}

fn push_result(
    out: &mut Vec<MagicConfiguration>,
    seen: &mut HashSet<Vec<Vec<u32>>>,
    m: MagicConfiguration,
    dedup: bool,
) {
    if !dedup || seen.insert(m.canonical_key()) {
        out.push(m);
    }
}

/// 3×3 grids of two-qubit observables whose rows and columns are contexts
/// with an odd number of -identity products. Observables carry sign +1;
/// flipping any one sign flips two contexts and keeps the parity.
pub fn find_mermin_squares(options: &SearchOptions) -> Result<Vec<MagicConfiguration>> {
    options.validate()?;
    if options.qubit_count != 2 {
        return Err(Error::UnsupportedSearch(
            "mermin_square searches two qubits".into(),
        ));
    }
    let points = all_points(2)?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for combo in points.iter().copied().combinations(9) {
        if out.len() >= options.limit {
            break;
        }
        if let Some(a) = options.anchor {
            if !combo.contains(&a) {
                continue;
            }
        }
        if classify_set(&combo)?.kind != GeometryKind::HyperbolicQuadricGrid {
            continue;
        }
        let lines = lines_within(&combo);
        let isotropic = lines.iter().all(|l| {
            !l[0].form_unchecked(l[1]) && !l[0].form_unchecked(l[2]) && !l[1].form_unchecked(l[2])
        });
        if !isotropic {
            continue;
        }
        // rows: the first line and the two disjoint from it; columns: the rest
        let first = lines[0];
        let (rows, cols): (Vec<[SymplecticPoint; 3]>, Vec<_>) = lines
            .iter()
            .partition(|l| **l == first || l.iter().all(|p| !first.contains(p)));
        let mut contexts = Vec::with_capacity(6);
        for (tag, group) in [("R", &rows), ("C", &cols)] {
            for (k, line) in group.iter().enumerate() {
                let ctx = Context::new(line.iter().map(|&p| plus(p)).collect(), None)?;
                contexts.push(ctx.named(format!("{tag}{}", k + 1)));
            }
        }
        let m = MagicConfiguration::new(contexts)?;
        if parity_witness(&m)?.certified() {
            push_result(&mut out, &mut seen, m, options.dedup);
        }
    }
    Ok(out)
}

/// Structural check for the rectangle shape anchored at `anchor`: four
/// quadric contexts with product +identity through the anchor whose spans
/// meet pairwise in lines through it, one affine-plane context with product
/// -identity, and a certified parity contradiction.
pub fn is_hc_shaped(m: &MagicConfiguration, anchor: SymplecticPoint) -> bool {
    let contexts = m.contexts();
    if contexts.len() != 5 || m.qubits() != Some(anchor.qubits()) {
        return false;
    }
    let quadrics = quadric_contexts(m);
    if quadrics.len() != 4 {
        return false;
    }
    let Some(affine) = (0..5).find(|i| !quadrics.contains(i)) else {
        return false;
    };
    let affine_ok = classify_set(&contexts[affine].points())
        .is_ok_and(|l| l.kind == GeometryKind::AffinePlaneOrder2)
        && contexts[affine].sign() == Sign::Minus;
    if !affine_ok {
        return false;
    }
    let spans: Vec<Subspace> = quadrics.iter().map(|&i| contexts[i].span()).collect();
    let quadrics_ok = quadrics.iter().zip(&spans).all(|(&i, span)| {
        contexts[i].sign() == Sign::Plus
            && contexts[i].points().contains(&anchor)
            && span.rank() == 4
            && span.is_totally_isotropic()
    });
    if !quadrics_ok {
        return false;
    }
    let lines_ok = spans.iter().tuple_combinations().all(|(a, b)| {
        let meet = a.intersect(b).expect("same qubits");
        meet.rank() == 2 && meet.contains_bits(anchor.bits())
    });
    lines_ok && parity_witness(m).is_ok_and(|c| c.certified() && !c.nchv_assignment_exists)
}

/// Rectangles whose four quadric contexts live in the given generators.
fn rectangles_in(
    generators: &[Subspace],
    anchor: SymplecticPoint,
    emit: &mut dyn FnMut(MagicConfiguration) -> bool,
) -> Result<bool> {
    let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
    let mut line_points = Vec::with_capacity(6);
    for &(i, j) in &pairs {
        let meet = generators[i].intersect(&generators[j])?;
        if meet.rank() != 2 || !meet.contains_bits(anchor.bits()) {
            return Ok(true);
        }
        let others: Vec<SymplecticPoint> =
            meet.points().into_iter().filter(|&p| p != anchor).collect();
        line_points.push(others);
    }
    let on_lines: HashSet<SymplecticPoint> = line_points.iter().flatten().copied().collect();

    for choice in 0u32..64 {
        // bit k (from the top) picks which non-anchor point of line k is shared
        let shared: Vec<SymplecticPoint> = (0..6)
            .map(|k| line_points[k][((choice >> (5 - k)) & 1) as usize])
            .collect();
        if shared.iter().collect::<HashSet<_>>().len() != 6 {
            continue;
        }
        let mut bases = Vec::with_capacity(4);
        let mut candidates = Vec::with_capacity(4);
        for i in 0..4 {
            let mut base = vec![anchor];
            base.extend(
                pairs
                    .iter()
                    .zip(&shared)
                    .filter(|((a, b), _)| *a == i || *b == i)
                    .map(|(_, &q)| q),
            );
            let mut fitting = Vec::new();
            for r in generators[i].points() {
                if r == anchor || on_lines.contains(&r) {
                    continue;
                }
                let mut set = base.clone();
                set.push(r);
                if classify_set(&set)?.kind == GeometryKind::CapEllipticQuadric {
                    fitting.push(r);
                }
            }
            bases.push(base);
            candidates.push(fitting);
        }
        for affine in candidates.iter().multi_cartesian_product() {
            let affine: Vec<SymplecticPoint> = affine.into_iter().copied().collect();
            if affine.iter().collect::<HashSet<_>>().len() != 4 {
                continue;
            }
            let commuting = affine
                .iter()
                .tuple_combinations()
                .all(|(a, b)| !a.form_unchecked(*b));
            if !commuting
                || classify_set(&affine)?.kind != GeometryKind::AffinePlaneOrder2
            {
                continue;
            }
            let mut contexts = Vec::with_capacity(5);
            let mut affine_obs = Vec::with_capacity(4);
            for (i, base) in bases.iter().enumerate() {
                let mut obs: Vec<PauliObservable> = base.iter().map(|&p| plus(p)).collect();
                let r = plus(affine[i]);
                obs.push(r);
                // choose r's sign so the quadric context multiplies to +identity
                let r = if crate::magic::context_sign(&obs)?.is_minus() {
                    -r
                } else {
                    r
                };
                *obs.last_mut().unwrap() = r;
                affine_obs.push(r);
                contexts.push(Context::new(obs, None)?.named(format!("S{}", i + 1)));
            }
            contexts.push(Context::new(affine_obs, None)?.named("S5"));
            let m = MagicConfiguration::new(contexts)?;
            if is_hc_shaped(&m, anchor) && !emit(m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rectangles of the four-quadrics-plus-affine-plane shape anchored at a point.
pub fn find_hc_rectangles(options: &SearchOptions) -> Result<Vec<MagicConfiguration>> {
    options.validate()?;
    if options.qubit_count != 4 {
        return Err(Error::UnsupportedSearch(
            "hc_rectangle searches four qubits".into(),
        ));
    }
    let anchor = options.anchor.unwrap_or_else(default_anchor);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    // each new rectangle is followed by its twin, so prefixes of even length stay twin-closed
    let mut emit = |m: MagicConfiguration| {
        if options.dedup && seen.contains(&m.canonical_key()) {
            return true;
        }
        let twin = complement_config(&m, anchor)
            .ok()
            .filter(|t| is_hc_shaped(t, anchor));
        push_result(&mut out, &mut seen, m, options.dedup);
        if let Some(t) = twin {
            if out.len() < options.limit {
                push_result(&mut out, &mut seen, t, options.dedup);
            }
        }
        out.len() < options.limit
    };

    if let Some(seed) = &options.seed {
        if seed.len() != 4 {
            return Err(Error::UnsupportedSearch(
                "a rectangle seed is four generators".into(),
            ));
        }
        for s in seed {
            if s.qubits() != 4 {
                return Err(Error::QubitMismatch {
                    left: 4,
                    right: s.qubits(),
                });
            }
        }
        rectangles_in(seed, anchor, &mut emit)?;
        return Ok(out);
    }

    let generators = maximal_isotropic_through(anchor);
    let count = generators.len();
    let meets_in_line = |a: &Subspace, b: &Subspace| a.intersect(b).is_ok_and(|m| m.rank() == 2);
    let adjacent: Vec<Vec<bool>> = generators
        .iter()
        .map(|a| generators.iter().map(|b| meets_in_line(a, b)).collect())
        .collect();
    for i in 0..count {
        for j in (i + 1..count).filter(|&j| adjacent[i][j]) {
            for k in (j + 1..count).filter(|&k| adjacent[i][k] && adjacent[j][k]) {
                for l in (k + 1..count)
                    .filter(|&l| adjacent[i][l] && adjacent[j][l] && adjacent[k][l])
                {
                    let quad = [
                        generators[i].clone(),
                        generators[j].clone(),
                        generators[k].clone(),
                        generators[l].clone(),
                    ];
                    if !rectangles_in(&quad, anchor, &mut emit)? {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Configurations(Vec<MagicConfiguration>),
    Census(Vec<CapCensus>),
}

pub fn run_search(options: &SearchOptions) -> Result<SearchOutcome> {
    match options.shape {
        Shape::MerminSquare => find_mermin_squares(options).map(SearchOutcome::Configurations),
        Shape::HcRectangle => find_hc_rectangles(options).map(SearchOutcome::Configurations),
        Shape::OvoidCensus => ovoid_census(options).map(SearchOutcome::Census),
    }
}
