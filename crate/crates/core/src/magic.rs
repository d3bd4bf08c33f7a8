//! Contexts, the parity contradiction certificate, and the projection that
//! produces a configuration's twin.
//!
//! A valuation assigns ±1 to every sign-stripped point of the universe, with
//! `v(-O) = -v(O)`. It is non-contextual when every context's product of
//! values equals the context sign. Each context is therefore one GF(2)
//! equation over the universe: `sum of minus-bits = parity(context target)`,
//! where the target folds in the signs written on the observables.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::classify::{classify_set, GeometryKind};
use crate::error::{Error, Result};
use crate::geometry::{SymplecticPoint, Subspace};
use crate::pauli::{product_of_set, PauliObservable, Sign};

/// Largest universe the exhaustive valuation scan accepts.
pub const EXHAUSTIVE_LIMIT: usize = 30;

/// Sign of the product of a mutually commuting list whose product is ±identity.
pub fn context_sign(observables: &[PauliObservable]) -> Result<Sign> {
    for (i, a) in observables.iter().enumerate() {
        for b in &observables[i + 1..] {
            if !a.commutes(b)? {
                return Err(Error::NonCommuting(*a, *b));
            }
        }
    }
    let product = product_of_set(observables)?;
    if !product.is_identity() {
        return Err(Error::ProductNotIdentity(product));
    }
    Ok(product.sign())
}

/// A validated, mutually commuting set of observables with ±identity product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    name: Option<String>,
    observables: Vec<PauliObservable>,
    sign: Sign,
}

impl Context {
    pub fn new(observables: Vec<PauliObservable>, expected_sign: Option<Sign>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for o in &observables {
            if !seen.insert((o.x_bits(), o.z_bits())) {
                return Err(Error::DuplicateObservable(*o));
            }
        }
        let sign = context_sign(&observables)?;
        if let Some(expected) = expected_sign {
            if expected != sign {
                return Err(Error::SignMismatch {
                    expected,
                    actual: sign,
                });
            }
        }
        Ok(Self {
            name: None,
            observables,
            sign,
        })
    }

    pub fn from_words(words: &[&str]) -> Result<Self> {
        let observables = words
            .iter()
            .map(|w| w.parse())
            .collect::<Result<Vec<PauliObservable>>>()?;
        Self::new(observables, None)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn observables(&self) -> &[PauliObservable] {
        &self.observables
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn qubits(&self) -> usize {
        self.observables[0].qubits()
    }

    /// Points of the non-identity members, canonical order.
    pub fn points(&self) -> Vec<SymplecticPoint> {
        let mut pts: Vec<_> = self
            .observables
            .iter()
            .filter_map(|o| o.to_point().ok())
            .collect();
        pts.sort_unstable();
        pts
    }

    /// Span of the context's points; the empty subspace for an identity-only context.
    pub fn span(&self) -> Subspace {
        Subspace::from_vectors(self.points().iter().map(|p| p.bits()), self.qubits())
            .expect("qubit count validated at construction")
    }

    /// Observables in canonical point order (identities first).
    pub fn canonical_observables(&self) -> Vec<PauliObservable> {
        let mut obs = self.observables.clone();
        obs.sort_by_key(|o| ((o.x_bits() as u32) << o.qubits()) | o.z_bits() as u32);
        obs
    }

    /// Sign the product of the values must take once each observable's own
    /// sign is moved to the right-hand side.
    fn valuation_target(&self) -> Sign {
        self.observables
            .iter()
            .fold(self.sign, |acc, o| acc * o.sign())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicConfiguration {
    contexts: Vec<Context>,
}

impl MagicConfiguration {
    pub fn new(contexts: Vec<Context>) -> Result<Self> {
        if let Some(first) = contexts.first() {
            for c in &contexts[1..] {
                if c.qubits() != first.qubits() {
                    return Err(Error::QubitMismatch {
                        left: first.qubits(),
                        right: c.qubits(),
                    });
                }
            }
        }
        Ok(Self { contexts })
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn qubits(&self) -> Option<usize> {
        self.contexts.first().map(Context::qubits)
    }

    /// Distinct sign-stripped points over all contexts, canonical order.
    pub fn universe(&self) -> Vec<SymplecticPoint> {
        self.multiplicity().into_keys().collect()
    }

    pub fn multiplicity(&self) -> BTreeMap<SymplecticPoint, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.contexts {
            for p in c.points() {
                *counts.entry(p).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Canonical key: each context's sorted points, contexts sorted. Ignores
    /// observable signs and context order.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let mut key: Vec<Vec<u32>> = self
            .contexts
            .iter()
            .map(|c| c.points().iter().map(|p| p.bits()).collect())
            .collect();
        key.sort();
        key
    }

    /// One GF(2) row per context: (bitmask over universe indices, target is minus).
    /// Universe index `k` maps to bit `len - 1 - k` so integer order is lexicographic order.
    fn equations(&self, universe: &[SymplecticPoint]) -> Vec<(Vec<usize>, bool)> {
        self.contexts
            .iter()
            .map(|c| {
                let cols = c
                    .points()
                    .iter()
                    .map(|p| universe.binary_search(p).expect("point in universe"))
                    .collect();
                (cols, c.valuation_target().is_minus())
            })
            .collect()
    }
}

/// ±1 values on a universe, in canonical point order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Valuation(pub Vec<(SymplecticPoint, Sign)>);

impl Valuation {
    pub fn value(&self, p: SymplecticPoint) -> Option<Sign> {
        self.0.iter().find(|(q, _)| *q == p).map(|&(_, s)| s)
    }

    /// True iff every context's product of values matches its sign.
    pub fn satisfies(&self, m: &MagicConfiguration) -> bool {
        m.contexts().iter().all(|c| {
            let product = c.observables().iter().try_fold(Sign::Plus, |acc, o| {
                if o.is_identity() {
                    return Some(acc * o.sign());
                }
                let p = o.to_point().ok()?;
                Some(acc * o.sign() * self.value(p)?)
            });
            product == Some(c.sign())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NchvOutcome {
    pub satisfiable: bool,
    pub witness: Option<Valuation>,
}

/// Scans all 2^|universe| valuations and returns the lexicographically least
/// satisfying one (with +1 before -1), if any.
pub fn exhaustive_nchv_check(m: &MagicConfiguration) -> Result<NchvOutcome> {
    let universe = m.universe();
    let size = universe.len();
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::UniverseTooLarge {
            size,
            max: EXHAUSTIVE_LIMIT,
        });
    }
    let rows: Vec<(u32, bool)> = m
        .equations(&universe)
        .into_iter()
        .map(|(cols, odd)| {
            let mask = cols.iter().fold(0u32, |acc, &k| acc | 1 << (size - 1 - k));
            (mask, odd)
        })
        .collect();
    let found = (0u64..1u64 << size).map(|v| v as u32).find(|&v| {
        rows.iter()
            .all(|&(mask, odd)| ((v & mask).count_ones() & 1 == 1) == odd)
    });
    Ok(NchvOutcome {
        satisfiable: found.is_some(),
        witness: found.map(|v| valuation_from_bits(&universe, |k| (v >> (size - 1 - k)) & 1 == 1)),
    })
}

fn valuation_from_bits(universe: &[SymplecticPoint], minus: impl Fn(usize) -> bool) -> Valuation {
    Valuation(
        universe
            .iter()
            .enumerate()
            .map(|(k, &p)| (p, Sign::from_parity(minus(k))))
            .collect(),
    )
}

/// Decides valuation existence by Gaussian elimination over GF(2); any universe size.
pub fn solve_valuation(m: &MagicConfiguration) -> NchvOutcome {
    let universe = m.universe();
    let n = universe.len();
    let words = n / 64 + 1;
    // augmented rows: bit n is the right-hand side
    let mut rows: Vec<Vec<u64>> = m
        .equations(&universe)
        .into_iter()
        .map(|(cols, odd)| {
            let mut row = vec![0u64; words];
            for k in cols {
                row[k / 64] |= 1 << (k % 64);
            }
            if odd {
                row[n / 64] |= 1 << (n % 64);
            }
            row
        })
        .collect();
    let bit = |row: &[u64], k: usize| (row[k / 64] >> (k % 64)) & 1 == 1;
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(found) = (next..rows.len()).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && bit(row, col) {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|row| bit(row, n)) {
        return NchvOutcome {
            satisfiable: false,
            witness: None,
        };
    }
    // free variables at +1; pivots read off the reduced rows
    let mut minus = vec![false; n];
    for (r, &col) in pivots.iter().enumerate() {
        minus[col] = bit(&rows[r], n);
    }
    NchvOutcome {
        satisfiable: true,
        witness: Some(valuation_from_bits(&universe, |k| minus[k])),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionCertificate {
    pub context_signs: Vec<Sign>,
    /// Product of the context signs, with each observable's written sign folded in.
    pub sign_product: Sign,
    pub all_multiplicities_even: bool,
    pub nchv_assignment_exists: bool,
    pub witness: Option<Valuation>,
    /// Whether the assignment question was settled by the exhaustive scan (else elimination).
    pub exhaustive: bool,
}

impl ContradictionCertificate {
    /// Every point in an even number of contexts, yet the signs multiply to -1.
    pub fn certified(&self) -> bool {
        self.all_multiplicities_even && self.sign_product.is_minus()
    }
}

pub fn parity_witness(m: &MagicConfiguration) -> Result<ContradictionCertificate> {
    let context_signs: Vec<Sign> = m.contexts().iter().map(Context::sign).collect();
    let sign_product = m
        .contexts()
        .iter()
        .fold(Sign::Plus, |acc, c| acc * c.valuation_target());
    let all_multiplicities_even = m.multiplicity().values().all(|&c| c % 2 == 0);
    let (outcome, exhaustive) = if m.universe().len() <= EXHAUSTIVE_LIMIT {
        (exhaustive_nchv_check(m)?, true)
    } else {
        (solve_valuation(m), false)
    };
    let cert = ContradictionCertificate {
        context_signs,
        sign_product,
        all_multiplicities_even,
        nchv_assignment_exists: outcome.satisfiable,
        witness: outcome.witness,
        exhaustive,
    };
    debug_assert!(!(cert.certified() && cert.nchv_assignment_exists));
    Ok(cert)
}

/// Pairwise span intersections of rank ≥ 1, keyed by context indices `(i, j)`, `i < j`.
pub fn intersection_lines(m: &MagicConfiguration) -> BTreeMap<(usize, usize), Subspace> {
    let spans: Vec<Subspace> = m.contexts().iter().map(Context::span).collect();
    let mut out = BTreeMap::new();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let meet = spans[i].intersect(&spans[j]).expect("same qubit count");
            if meet.rank() > 0 {
                out.insert((i, j), meet);
            }
        }
    }
    out
}

/// Indices of contexts whose point sets are elliptic quadrics.
pub fn quadric_contexts(m: &MagicConfiguration) -> Vec<usize> {
    m.contexts()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let pts = c.points();
            !pts.is_empty()
                && classify_set(&pts).is_ok_and(|l| l.kind == GeometryKind::CapEllipticQuadric)
        })
        .map(|(i, _)| i)
        .collect()
}

/// The unique point common to all pairwise intersections of the quadric
/// contexts (or of all contexts when fewer than two are quadrics).
pub fn shared_point(m: &MagicConfiguration) -> Result<SymplecticPoint> {
    let mut members = quadric_contexts(m);
    if members.len() < 2 {
        members = (0..m.contexts().len()).collect();
    }
    if members.len() < 2 {
        return Err(Error::NoCommonPoint);
    }
    let spans: Vec<Subspace> = members.iter().map(|&i| m.contexts()[i].span()).collect();
    let mut common: Option<Subspace> = None;
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let meet = spans[i].intersect(&spans[j])?;
            common = Some(match common {
                None => meet,
                Some(c) => c.intersect(&meet)?,
            });
        }
    }
    let common = common.expect("at least one pair");
    match common.rank() {
        0 => Err(Error::NoCommonPoint),
        1 => Ok(common.points()[0]),
        _ => Err(Error::AmbiguousCommonPoint(common.point_count())),
    }
}

/// Multiplies every observable by the sign-+1 observable at `p`, keeping `p`
/// itself in place. An involution whenever that observable squares to +identity.
pub fn complement_config(m: &MagicConfiguration, p: SymplecticPoint) -> Result<MagicConfiguration> {
    if let Some(n) = m.qubits() {
        if n != p.qubits() {
            return Err(Error::QubitMismatch {
                left: n,
                right: p.qubits(),
            });
        }
    }
    let projector = PauliObservable::from_point(p);
    if projector.square_sign().is_minus() {
        return Err(Error::SignAmbiguousProjection(projector));
    }
    let contexts = m
        .contexts()
        .iter()
        .map(|c| {
            let observables = c
                .observables()
                .iter()
                .map(|o| {
                    if o.to_point().ok() == Some(p) {
                        Ok(*o)
                    } else {
                        projector.multiply(o)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let projected = Context::new(observables, None)?;
            Ok(match c.name() {
                Some(name) => projected.named(name),
                None => projected,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MagicConfiguration::new(contexts)
}
