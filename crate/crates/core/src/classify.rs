//! Recognition of small classical geometries inside a point set's span.
//!
//! Everything is combinatorial over XOR: three distinct points are collinear
//! iff they XOR to zero, and four distinct points with no three collinear are
//! coplanar iff they XOR to zero.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{SymplecticPoint, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    SinglePoint,
    Line,
    Triangle,
    AffinePlaneOrder2,
    FanoPlane,
    CapEllipticQuadric,
    HyperbolicQuadricGrid,
    Generic,
}

impl GeometryKind {
    pub fn description(self) -> &'static str {
        match self {
            GeometryKind::SinglePoint => "single point",
            GeometryKind::Line => "line",
            GeometryKind::Triangle => "triangle",
            GeometryKind::AffinePlaneOrder2 => "affine plane of order 2",
            GeometryKind::FanoPlane => "Fano plane",
            GeometryKind::CapEllipticQuadric => "elliptic quadric",
            GeometryKind::HyperbolicQuadricGrid => "hyperbolic quadric grid",
            GeometryKind::Generic => "generic",
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationLabel {
    pub kind: GeometryKind,
    /// Rank of the projective closure (projective dimension + 1).
    pub ambient_rank: usize,
    /// Witness or summary, e.g. the collinear triple that rules out a cap.
    pub detail: String,
}

/// Validates distinctness and qubit agreement; returns the points as a lookup set.
fn point_set(points: &[SymplecticPoint]) -> Result<HashSet<u32>> {
    let first = points.first().ok_or(Error::Empty)?;
    let mut set = HashSet::with_capacity(points.len());
    for p in points {
        if p.qubits() != first.qubits() {
            return Err(Error::QubitMismatch {
                left: first.qubits(),
                right: p.qubits(),
            });
        }
        if !set.insert(p.bits()) {
            return Err(Error::DuplicatePoint(*p));
        }
    }
    Ok(set)
}

fn collinear_triple(
    points: &[SymplecticPoint],
    set: &HashSet<u32>,
) -> Option<(SymplecticPoint, SymplecticPoint, SymplecticPoint)> {
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let r = p.bits() ^ q.bits();
            if set.contains(&r) {
                return Some((p, q, SymplecticPoint::new_unchecked(r, p.qubits())));
            }
        }
    }
    None
}

/// A quadruple of points within the set that XOR to zero (the fourth is the XOR of three).
fn coplanar_quadruple(points: &[SymplecticPoint], set: &HashSet<u32>) -> Option<[SymplecticPoint; 4]> {
    for (i, &p) in points.iter().enumerate() {
        for (j, &q) in points.iter().enumerate().skip(i + 1) {
            for &r in &points[j + 1..] {
                let s = p.bits() ^ q.bits() ^ r.bits();
                if s != 0 && set.contains(&s) && s != p.bits() && s != q.bits() && s != r.bits() {
                    return Some([p, q, r, SymplecticPoint::new_unchecked(s, p.qubits())]);
                }
            }
        }
    }
    None
}

/// True iff no three of the points are collinear.
pub fn is_cap(points: &[SymplecticPoint]) -> Result<bool> {
    let set = point_set(points)?;
    Ok(collinear_triple(points, &set).is_none())
}

fn words(points: &[SymplecticPoint]) -> String {
    points.iter().map(|p| p.word()).collect::<Vec<_>>().join(", ")
}

/// Number of full lines inside the set and, per point, how many of them pass through it.
fn internal_lines(points: &[SymplecticPoint], set: &HashSet<u32>) -> (usize, Vec<usize>) {
    let mut per_point = vec![0usize; points.len()];
    let mut lines = 0;
    for (i, &p) in points.iter().enumerate() {
        for (j, &q) in points.iter().enumerate().skip(i + 1) {
            let r = p.bits() ^ q.bits();
            if !set.contains(&r) {
                continue;
            }
            // each line is seen from each of its three pairs; count it from its lowest pair
            let k = points.iter().position(|x| x.bits() == r).unwrap();
            if k > j {
                lines += 1;
                per_point[i] += 1;
                per_point[j] += 1;
                per_point[k] += 1;
            }
        }
    }
    (lines, per_point)
}

pub fn classify_set(points: &[SymplecticPoint]) -> Result<ClassificationLabel> {
    let set = point_set(points)?;
    let rank = Subspace::span(points)?.rank();
    let label = |kind, detail: String| ClassificationLabel {
        kind,
        ambient_rank: rank,
        detail,
    };
    let collinear = collinear_triple(points, &set);
    let xor_all = points.iter().fold(0u32, |acc, p| acc ^ p.bits());

    match (points.len(), rank) {
        (1, _) => return Ok(label(GeometryKind::SinglePoint, words(points))),
        (3, 2) => return Ok(label(GeometryKind::Line, words(points))),
        (3, 3) => return Ok(label(GeometryKind::Triangle, words(points))),
        (4, 3) if collinear.is_none() && xor_all == 0 => {
            return Ok(label(
                GeometryKind::AffinePlaneOrder2,
                "quadrangle whose diagonal points form a line".into(),
            ))
        }
        (5, 4) if collinear.is_none() && coplanar_quadruple(points, &set).is_none() => {
            return Ok(label(
                GeometryKind::CapEllipticQuadric,
                "no three collinear, no four coplanar".into(),
            ))
        }
        (7, 3) if points
            .iter()
            .enumerate()
            .all(|(i, p)| points[i + 1..].iter().all(|q| set.contains(&(p.bits() ^ q.bits())))) =>
        {
            return Ok(label(GeometryKind::FanoPlane, "closed under addition".into()))
        }
        (9, 4) => {
            let (lines, per_point) = internal_lines(points, &set);
            if lines == 6 && per_point.iter().all(|&c| c == 2) {
                return Ok(label(
                    GeometryKind::HyperbolicQuadricGrid,
                    "six lines, two through each point".into(),
                ));
            }
        }
        _ => {}
    }

    let detail = if let Some((p, q, r)) = collinear {
        format!("collinear triple {}", words(&[p, q, r]))
    } else if let Some(quad) = coplanar_quadruple(points, &set) {
        format!("coplanar quadruple {}", words(&quad))
    } else {
        format!("{} points spanning rank {}", points.len(), rank)
    };
    Ok(label(GeometryKind::Generic, detail))
}

/// The span of a point set together with the part of it the set does not cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub span: Subspace,
    pub label: ClassificationLabel,
    /// Closure points not in the input set, canonical order.
    pub complement: Vec<SymplecticPoint>,
    /// `None` when the set already fills its span.
    pub complement_label: Option<ClassificationLabel>,
}

pub fn projective_closure(points: &[SymplecticPoint]) -> Result<Closure> {
    let label = classify_set(points)?;
    let span = Subspace::span(points)?;
    let set: HashSet<u32> = points.iter().map(|p| p.bits()).collect();
    let complement: Vec<SymplecticPoint> = span
        .points()
        .into_iter()
        .filter(|p| !set.contains(&p.bits()))
        .collect();
    let complement_label = if complement.is_empty() {
        None
    } else {
        Some(classify_set(&complement)?)
    };
    Ok(Closure {
        span,
        label,
        complement,
        complement_label,
    })
}
