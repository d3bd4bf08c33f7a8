//! The real N-qubit Pauli group.
//!
//! An observable is `sign * (X^a1 Z^b1) ⊗ ... ⊗ (X^aN Z^bN)` with the sign in
//! {+1, -1}. `Y` is shorthand for `XZ` and carries no imaginary unit, so
//! `Y^2 = -I` and every product stays real. Per qubit
//!
//! ```text
//! (X^a Z^b)(X^a' Z^b') = (-1)^(b a') X^(a+a') Z^(b+b')
//! ```
//!
//! which is all the sign bookkeeping the group needs.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::SymplecticPoint;

pub const MAX_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() ^ rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_parity(!self.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.value())
    }
}

/// A signed element of the real Pauli group on `qubits` qubits.
///
/// `x` and `z` hold the exponents with qubit 1 in the most significant of the
/// `qubits` low bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliObservable {
    sign: Sign,
    qubits: u8,
    x: u16,
    z: u16,
}

impl PauliObservable {
    pub fn new(sign: Sign, x: u16, z: u16, qubits: usize) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits,
                max: MAX_QUBITS,
            });
        }
        let half = ((1u32 << qubits) - 1) as u16;
        if x & !half != 0 || z & !half != 0 {
            return Err(Error::BitsOutOfRange {
                bits: ((x as u32) << qubits) | z as u32,
                qubits,
            });
        }
        Ok(Self {
            sign,
            qubits: qubits as u8,
            x,
            z,
        })
    }

    pub fn identity(qubits: usize) -> Result<Self> {
        Self::new(Sign::Plus, 0, 0, qubits)
    }

    /// The sign-+1 observable sitting over a point.
    pub fn from_point(p: SymplecticPoint) -> Self {
        Self {
            sign: Sign::Plus,
            qubits: p.qubits() as u8,
            x: p.x_part() as u16,
            z: p.z_part() as u16,
        }
    }

    /// Strips the sign. Fails on the identity, which is not a projective point.
    pub fn to_point(&self) -> Result<SymplecticPoint> {
        SymplecticPoint::from_parts(self.x as u32, self.z as u32, self.qubits())
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.qubits as usize
    }

    #[inline]
    pub fn x_bits(&self) -> u16 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u16 {
        self.z
    }

    /// Exponents `(a, b)` of `X^a Z^b` on qubit `index` (0-based, leftmost first).
    pub fn pair(&self, index: usize) -> (bool, bool) {
        let shift = self.qubits() - 1 - index;
        ((self.x >> shift) & 1 == 1, (self.z >> shift) & 1 == 1)
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// The sign of `self * self`, i.e. `(-1)^(number of Y letters)`.
    pub fn square_sign(&self) -> Sign {
        Sign::from_parity(self.y_count() & 1 == 1)
    }

    pub fn with_sign(self, sign: Sign) -> Self {
        Self { sign, ..self }
    }

    pub fn unsigned(self) -> Self {
        self.with_sign(Sign::Plus)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::QubitMismatch {
                left: self.qubits(),
                right: other.qubits(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        // moving other's X factors left past self's Z factors
        let swaps = (self.z & other.x).count_ones();
        Ok(Self {
            sign: self.sign * other.sign * Sign::from_parity(swaps & 1 == 1),
            qubits: self.qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        let overlap = (self.x & other.z) ^ (self.z & other.x);
        Ok(overlap.count_ones() & 1 == 0)
    }
}

/// Left-to-right product of a non-empty list of observables.
pub fn product_of_set(observables: &[PauliObservable]) -> Result<PauliObservable> {
    let (first, rest) = observables.split_first().ok_or(Error::Empty)?;
    rest.iter().try_fold(*first, |acc, o| acc.multiply(o))
}

impl Mul for PauliObservable {
    type Output = PauliObservable;

    /// Panics on mismatched qubit counts; use [`PauliObservable::multiply`] otherwise.
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs).expect("qubit count mismatch")
    }
}

impl Neg for PauliObservable {
    type Output = PauliObservable;

    fn neg(self) -> Self {
        self.with_sign(-self.sign)
    }
}

impl FromStr for PauliObservable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut chars = text.chars().enumerate().peekable();
        let sign = match chars.peek() {
            Some((_, '+')) => {
                chars.next();
                Sign::Plus
            }
            Some((_, '-' | '−')) => {
                chars.next();
                Sign::Minus
            }
            _ => Sign::Plus,
        };
        let (mut x, mut z, mut qubits) = (0u16, 0u16, 0usize);
        for (position, c) in chars {
            let (a, b) = match c {
                'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => (1, 1),
                found => return Err(Error::InvalidCharacter { position, found }),
            };
            qubits += 1;
            if qubits > MAX_QUBITS {
                return Err(Error::TooManyQubits {
                    qubits,
                    max: MAX_QUBITS,
                });
            }
            x = (x << 1) | a;
            z = (z << 1) | b;
        }
        if qubits == 0 {
            return Err(Error::EmptyWord);
        }
        Self::new(sign, x, z, qubits)
    }
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_minus() {
            f.write_str("-")?;
        }
        for q in 0..self.qubits() {
            let letter = match self.pair(q) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl Serialize for PauliObservable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
