//! Exact arithmetic on angles of the circle R/Z, the doubling map, orbits,
//! kneading sequences, and arc/chord geometry.
//!
//! An [`Angle`] is a reduced rational in `[0, 1)` measured in full turns.
//! All arithmetic is exact and normalizes eagerly, so structural equality
//! coincides with mathematical equality on the circle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("cannot parse `{0}` as an angle (expected `num/den` or an integer)")]
    Parse(String),
    #[error("degenerate arc: start and end coincide")]
    DegenerateArc,
    #[error("chord endpoints must be pairwise distinct")]
    SharedEndpoint,
    #[error("angle 0 has a degenerate kneading partition")]
    ZeroAngle,
}

/// A point of R/Z as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

impl Angle {
    pub fn new(num: u64, den: u64) -> Result<Self, AngleError> {
        Self::from_big(BigUint::from(num), BigUint::from(den))
    }

    pub fn from_big(num: BigUint, den: BigUint) -> Result<Self, AngleError> {
        if den.is_zero() {
            return Err(AngleError::ZeroDenominator);
        }
        let num = num % &den;
        let g = num.gcd(&den);
        Ok(Angle {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// The doubling map: `theta -> 2 theta mod 1`.
    pub fn double(&self) -> Self {
        Angle::from_big(&self.num << 1u32, self.den.clone()).expect("den > 0")
    }

    /// The halving branch selected by `bit`: `(theta + bit) / 2`.
    /// Both branches are sections of [`Angle::double`].
    pub fn halve(&self, bit: bool) -> Self {
        let num = if bit { &self.num + &self.den } else { self.num.clone() };
        Angle::from_big(num, &self.den << 1u32).expect("den > 0")
    }

    pub fn add(&self, other: &Angle) -> Self {
        let num = &self.num * &other.den + &other.num * &self.den;
        Angle::from_big(num, &self.den * &other.den).expect("den > 0")
    }

    /// `self - other` on the circle.
    pub fn sub(&self, other: &Angle) -> Self {
        self.add(&other.neg())
    }

    /// The additive inverse `-theta mod 1`.
    pub fn neg(&self) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        Angle {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    /// True iff the angle is periodic under doubling, i.e. its denominator is odd.
    pub fn is_periodic(&self) -> bool {
        self.den.is_odd()
    }

    /// Exact period under doubling for periodic angles: the multiplicative
    /// order of 2 modulo the denominator. `None` when the angle is strictly
    /// preperiodic (even denominator).
    pub fn exact_period(&self) -> Option<u32> {
        if !self.is_periodic() {
            return None;
        }
        if self.den.is_one() {
            return Some(1);
        }
        let two = BigUint::from(2u32);
        let mut pow = two.clone() % &self.den;
        let mut k = 1u32;
        while !pow.is_one() {
            pow = (pow * &two) % &self.den;
            k += 1;
        }
        Some(k)
    }

    /// The doubling orbit split into its preperiodic prefix and its cycle.
    pub fn orbit(&self) -> Orbit {
        // den = 2^a * q with q odd: the prefix has length a, the cycle ord_2(q).
        let mut prefix = Vec::new();
        let mut x = self.clone();
        while !x.is_periodic() {
            prefix.push(x.clone());
            x = x.double();
        }
        let mut cycle = vec![x.clone()];
        let mut y = x.double();
        while y != x {
            cycle.push(y.clone());
            y = y.double();
        }
        Orbit { prefix, cycle }
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int =
            |t: &str| BigUint::from_str(t.trim()).map_err(|_| AngleError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => Angle::from_big(parse_int(n)?, parse_int(d)?),
            None => Angle::from_big(parse_int(s)?, BigUint::one()),
        }
    }
}

/// The doubling orbit of a rational angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub prefix: Vec<Angle>,
    pub cycle: Vec<Angle>,
}

/// Counterclockwise arc from `start` to `end`, with `start != end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedArc {
    start: Angle,
    end: Angle,
}

impl DirectedArc {
    pub fn new(start: Angle, end: Angle) -> Result<Self, AngleError> {
        if start == end {
            return Err(AngleError::DegenerateArc);
        }
        Ok(DirectedArc { start, end })
    }

    pub fn start(&self) -> &Angle {
        &self.start
    }

    pub fn end(&self) -> &Angle {
        &self.end
    }

    /// Arc length `(end - start) mod 1`, an exact rational in (0, 1).
    pub fn length(&self) -> Angle {
        self.end.sub(&self.start)
    }

    /// Membership in the open arc (endpoints excluded).
    pub fn contains_open(&self, theta: &Angle) -> bool {
        if theta == &self.start || theta == &self.end {
            return false;
        }
        theta.sub(&self.start) < self.length()
    }

    /// Membership in the closed arc (endpoints included).
    pub fn contains_closed(&self, theta: &Angle) -> bool {
        theta == &self.start || theta == &self.end || self.contains_open(theta)
    }
}

impl fmt::Display for DirectedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.start, self.end)
    }
}

/// True iff the chords spanned by the two endpoint pairs intersect inside the
/// disk, i.e. the endpoints interleave in circular order. All four angles must
/// be distinct.
pub fn chords_cross(
    pair1: (&Angle, &Angle),
    pair2: (&Angle, &Angle),
) -> Result<bool, AngleError> {
    let (a, b) = pair1;
    let (c, d) = pair2;
    if a == b || c == d || a == c || a == d || b == c || b == d {
        return Err(AngleError::SharedEndpoint);
    }
    let arc = DirectedArc::new(a.clone(), b.clone())?;
    Ok(arc.contains_open(c) != arc.contains_open(d))
}

/// Itinerary symbol of the kneading sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    /// Inequality for the internal-address rho function: the boundary symbol
    /// counts as different from everything, itself included.
    pub fn differs(self, other: Symbol) -> bool {
        matches!(self, Symbol::Star) || matches!(other, Symbol::Star) || self != other
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '*',
        };
        write!(f, "{c}")
    }
}

/// Itinerary of an angle under doubling with respect to the partition by
/// `theta/2` and `(theta+1)/2`. Eventually periodic; `symbols` stores the
/// prefix followed by one full period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneadingSequence {
    symbols: Vec<Symbol>,
    preperiod: usize,
    period: usize,
}

impl KneadingSequence {
    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Symbol at 1-indexed position `k`, continuing periodically.
    pub fn symbol(&self, k: usize) -> Symbol {
        assert!(k >= 1);
        let i = k - 1;
        if i < self.symbols.len() {
            self.symbols[i]
        } else {
            self.symbols[self.preperiod + (i - self.preperiod) % self.period]
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i == self.preperiod && i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Kneading sequence of `theta != 0`: the k-th symbol records where
/// `2^(k-1) theta` sits relative to the partition points `theta/2` and
/// `(theta+1)/2`, with `*` exactly on the partition boundary.
pub fn kneading_sequence(theta: &Angle) -> Result<KneadingSequence, AngleError> {
    if theta.is_zero() {
        return Err(AngleError::ZeroAngle);
    }
    let lo = theta.halve(false);
    let hi = theta.halve(true);
    // (lo -> hi) is the half circle containing theta itself.
    let one_arc = DirectedArc::new(lo.clone(), hi.clone()).expect("theta != 0");
    let orbit = theta.orbit();
    let preperiod = orbit.prefix.len();
    let period = orbit.cycle.len();
    let symbols = orbit
        .prefix
        .iter()
        .chain(orbit.cycle.iter())
        .map(|x| {
            if *x == lo || *x == hi {
                Symbol::Star
            } else if one_arc.contains_open(x) {
                Symbol::One
            } else {
                Symbol::Zero
            }
        })
        .collect();
    Ok(KneadingSequence {
        symbols,
        preperiod,
        period,
    })
}
