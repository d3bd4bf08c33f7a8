//! Linear and projective geometry over GF(2).
//!
//! A point of PG(2N-1, 2) is a nonzero vector of GF(2)^{2N}, stored as one
//! machine word. The layout is fixed: the N X-exponents come first, then the
//! N Z-exponents, and qubit 1 is the most significant bit of each half. The
//! integer value of that word is the canonical order for every point list.
//!
//! Subspaces keep a reduced-row-echelon basis (pivot = highest set bit, rows
//! sorted by descending pivot), so equal subspaces compare equal bitwise.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pauli::MAX_QUBITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticPoint {
    // field order matters for the derived Ord: qubit count first, then the word
    qubits: u8,
    bits: u32,
}

fn check_qubits(qubits: usize) -> Result<()> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn word_mask(qubits: usize) -> u32 {
    if 2 * qubits >= 32 {
        u32::MAX
    } else {
        (1u32 << (2 * qubits)) - 1
    }
}

fn same_qubits(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::QubitMismatch { left, right });
    }
    Ok(())
}

impl SymplecticPoint {
    pub fn new(bits: u32, qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        if bits & !word_mask(qubits) != 0 {
            return Err(Error::BitsOutOfRange { bits, qubits });
        }
        if bits == 0 {
            return Err(Error::IdentityPoint);
        }
        Ok(Self {
            qubits: qubits as u8,
            bits,
        })
    }

    /// Builds a point from its X and Z halves (qubit 1 in the top bit of each).
    pub fn from_parts(x: u32, z: u32, qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let half = (1u32 << qubits) - 1;
        if x & !half != 0 || z & !half != 0 {
            return Err(Error::BitsOutOfRange {
                bits: (x << qubits) | z,
                qubits,
            });
        }
        Self::new((x << qubits) | z, qubits)
    }

    pub(crate) fn new_unchecked(bits: u32, qubits: usize) -> Self {
        debug_assert!(bits != 0);
        Self {
            qubits: qubits as u8,
            bits,
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn qubits(self) -> usize {
        self.qubits as usize
    }

    #[inline]
    pub fn x_part(self) -> u32 {
        self.bits >> self.qubits
    }

    #[inline]
    pub fn z_part(self) -> u32 {
        self.bits & ((1u32 << self.qubits) - 1)
    }

    /// The symplectic form sum_j x_j(u) z_j(v) + z_j(u) x_j(v) mod 2.
    pub fn symplectic_form(self, other: Self) -> Result<bool> {
        same_qubits(self.qubits(), other.qubits())?;
        Ok(self.form_unchecked(other))
    }

    #[inline]
    pub(crate) fn form_unchecked(self, other: Self) -> bool {
        form_bits(self.bits, other.bits, self.qubits())
    }

    /// Third point of the line through `self` and `other`.
    pub fn third_point(self, other: Self) -> Result<Self> {
        same_qubits(self.qubits(), other.qubits())?;
        if self == other {
            return Err(Error::CoincidentPoints(self));
        }
        Ok(Self::new_unchecked(self.bits ^ other.bits, self.qubits()))
    }

    /// Renders the sign-free Pauli word of this point, e.g. `IXII`.
    pub fn word(self) -> String {
        let n = self.qubits();
        let (x, z) = (self.x_part(), self.z_part());
        (0..n)
            .map(|q| {
                let shift = n - 1 - q;
                match ((x >> shift) & 1, (z >> shift) & 1) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                }
            })
            .collect()
    }
}

#[inline]
pub(crate) fn form_bits(u: u32, v: u32, qubits: usize) -> bool {
    let half = (1u32 << qubits) - 1;
    let (ux, uz) = (u >> qubits, u & half);
    let (vx, vz) = (v >> qubits, v & half);
    ((ux & vz) ^ (uz & vx)).count_ones() & 1 == 1
}

impl fmt::Display for SymplecticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl Serialize for SymplecticPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.word())
    }
}

/// Every point of W(2N-1, 2), i.e. all 2^{2N} - 1 nonzero vectors, in canonical order.
pub fn all_points(qubits: usize) -> Result<Vec<SymplecticPoint>> {
    check_qubits(qubits)?;
    if qubits > 8 {
        // 2^32 points do not fit in memory anyway
        return Err(Error::TooManyQubits { qubits, max: 8 });
    }
    Ok((1..=word_mask(qubits))
        .map(|b| SymplecticPoint::new_unchecked(b, qubits))
        .collect())
}

/// A linear subspace of GF(2)^{2N} with a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    qubits: u8,
    basis: Vec<u32>,
}

/// Reduces `v` against a canonical basis. The result has a zero in every pivot column.
#[inline]
fn reduce_against(basis: &[u32], mut v: u32) -> u32 {
    for &row in basis {
        let pivot = 1u32 << (31 - row.leading_zeros());
        if v & pivot != 0 {
            v ^= row;
        }
    }
    v
}

/// Inserts `v` into a canonical basis, keeping it in RREF. Returns whether the rank grew.
fn insert_row(basis: &mut Vec<u32>, v: u32) -> bool {
    let v = reduce_against(basis, v);
    if v == 0 {
        return false;
    }
    let pivot = 1u32 << (31 - v.leading_zeros());
    for row in basis.iter_mut() {
        if *row & pivot != 0 {
            *row ^= v;
        }
    }
    let at = basis.partition_point(|&row| row > v);
    basis.insert(at, v);
    true
}

impl Subspace {
    pub fn empty(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        Ok(Self {
            qubits: qubits as u8,
            basis: Vec::new(),
        })
    }

    /// The GF(2) linear span of `points`.
    pub fn span(points: &[SymplecticPoint]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty)?;
        let qubits = first.qubits();
        let mut basis = Vec::new();
        for p in points {
            same_qubits(qubits, p.qubits())?;
            insert_row(&mut basis, p.bits);
        }
        Ok(Self {
            qubits: qubits as u8,
            basis,
        })
    }

    /// Span of raw vectors; zero vectors are ignored.
    pub fn from_vectors(vectors: impl IntoIterator<Item = u32>, qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let mut basis = Vec::new();
        for v in vectors {
            if v & !word_mask(qubits) != 0 {
                return Err(Error::BitsOutOfRange { bits: v, qubits });
            }
            insert_row(&mut basis, v);
        }
        Ok(Self {
            qubits: qubits as u8,
            basis,
        })
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.qubits as usize
    }

    #[inline]
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension, `rank - 1`; the empty subspace has dimension -1.
    pub fn projective_dimension(&self) -> isize {
        self.rank() as isize - 1
    }

    pub fn point_count(&self) -> usize {
        (1usize << self.rank()) - 1
    }

    /// All points of the subspace, ascending by canonical integer value.
    pub fn points(&self) -> Vec<SymplecticPoint> {
        let rank = self.rank();
        let mut out = Vec::with_capacity(self.point_count());
        // Gray-code walk: each step flips a single basis row in
        let mut v = 0u32;
        for step in 1u32..(1u32 << rank) {
            v ^= self.basis[step.trailing_zeros() as usize];
            out.push(SymplecticPoint::new_unchecked(v, self.qubits()));
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, p: SymplecticPoint) -> Result<bool> {
        same_qubits(self.qubits(), p.qubits())?;
        Ok(self.contains_bits(p.bits))
    }

    #[inline]
    pub(crate) fn contains_bits(&self, v: u32) -> bool {
        reduce_against(&self.basis, v) == 0
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        same_qubits(self.qubits(), other.qubits())?;
        Ok(self.basis.iter().all(|&row| other.contains_bits(row)))
    }

    /// The sum (join) of two subspaces.
    pub fn join(&self, other: &Self) -> Result<Self> {
        same_qubits(self.qubits(), other.qubits())?;
        let mut basis = self.basis.clone();
        for &row in &other.basis {
            insert_row(&mut basis, row);
        }
        Ok(Self {
            qubits: self.qubits,
            basis,
        })
    }

    /// Adds one point to the span.
    pub fn extended(&self, p: SymplecticPoint) -> Result<Self> {
        same_qubits(self.qubits(), p.qubits())?;
        let mut basis = self.basis.clone();
        insert_row(&mut basis, p.bits);
        Ok(Self {
            qubits: self.qubits,
            basis,
        })
    }

    /// Set-theoretic intersection of two subspaces.
    ///
    /// Works on the stacked system `[a | a]`, `[b | 0]` in doubled width: after
    /// elimination, the rows whose left half vanishes carry exactly the
    /// vectors expressible in both bases.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        same_qubits(self.qubits(), other.qubits())?;
        let width = 2 * self.qubits();
        let mut rows: Vec<u64> = Vec::with_capacity(self.rank() + other.rank());
        let stacked = self
            .basis
            .iter()
            .map(|&a| ((a as u64) << width) | a as u64)
            .chain(other.basis.iter().map(|&b| (b as u64) << width));
        for mut v in stacked {
            for &row in &rows {
                let pivot = 1u64 << (63 - row.leading_zeros());
                if v & pivot != 0 {
                    v ^= row;
                }
            }
            if v != 0 {
                rows.push(v);
                rows.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        let low = (1u64 << width) - 1;
        let common = rows
            .iter()
            .filter(|&&row| row >> width == 0)
            .map(|&row| (row & low) as u32);
        Self::from_vectors(common, self.qubits())
    }

    /// True iff the symplectic form vanishes on every pair of basis rows.
    pub fn is_totally_isotropic(&self) -> bool {
        let n = self.qubits();
        self.basis.iter().enumerate().all(|(i, &u)| {
            self.basis[i + 1..]
                .iter()
                .all(|&v| !form_bits(u, v, n))
        })
    }

    /// The symplectic polar (perp) of this subspace: every vector orthogonal to all basis rows.
    pub fn polar(&self) -> Self {
        let n = self.qubits();
        let vectors = (1..=word_mask(n))
            .filter(|&v| self.basis.iter().all(|&row| !form_bits(row, v, n)));
        // perp of a subspace is itself a subspace; spanning its vectors keeps RREF canonical
        Self::from_vectors(vectors, n).expect("qubit count already validated")
    }

    /// Points outside this subspace that keep it totally isotropic when added.
    /// Empty exactly when the subspace is maximal totally isotropic.
    pub fn isotropic_extensions(&self) -> Vec<SymplecticPoint> {
        let n = self.qubits();
        (1..=word_mask(n))
            .filter(|&v| !self.contains_bits(v))
            .filter(|&v| self.basis.iter().all(|&row| !form_bits(row, v, n)))
            .map(|v| SymplecticPoint::new_unchecked(v, n))
            .collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.points().iter().map(|p| p.word()).collect();
        write!(f, "{{{}}}", words.join(", "))
    }
}
