//! Formal orbit portraits: validation against the defining axioms,
//! realization from a characteristic angle pair, derived arcs, rotation
//! numbers, and the rotation-rigidity sweep.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::angle::{chords_cross, Angle, AngleError, DirectedArc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PortraitError {
    #[error("portrait violates the axioms: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("valence-1 portrait has no complementary-arc structure")]
    TrivialPortrait,
    #[error("no unique shortest complementary arc")]
    NonUniqueShortestArc,
    #[error("no complementary arc of length > 1/2")]
    NoCriticalArc,
    #[error("rotation number is defined only for satellite portraits")]
    NotSatellite,
    #[error("angle {0} is not periodic under doubling")]
    NotPeriodic(Angle),
    #[error("angles {0} and {1} have different exact periods")]
    PeriodMismatch(Angle, Angle),
    #[error("the arc from {0} to {1} is not the shorter one")]
    NotShortestFirst(Angle, Angle),
    #[error("the pair ({0}, {1}) realizes no valid orbit portrait")]
    NotRealizable(Angle, Angle),
    #[error("the pair ({0}, {1}) realizes more than one valid portrait")]
    AmbiguousRealization(Angle, Angle),
    #[error(transparent)]
    Angle(#[from] AngleError),
}

/// A single broken portrait axiom, reported as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyClass,
    DuplicateAngle(Angle),
    /// An angle is preperiodic or its exact period differs from the rest.
    PeriodMismatch(Angle),
    UnequalCardinality,
    /// Doubling does not map class `i` onto class `i+1 mod p`.
    NotForwardInvariant(usize),
    /// Doubling breaks the cyclic order within class `i`.
    CyclicOrderBroken(usize),
    /// Chords of classes `i` and `j` cross.
    LinkedClasses(usize, usize),
}

/// Primitive/satellite classification of a nontrivial portrait.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortraitKind {
    Trivial,
    Satellite,
    Primitive,
}

impl fmt::Display for PortraitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PortraitKind::Trivial => "trivial",
            PortraitKind::Satellite => "satellite",
            PortraitKind::Primitive => "primitive",
        };
        write!(f, "{s}")
    }
}

/// Cyclically arranged angle classes `A_1..A_p` closed under doubling.
///
/// Stored in canonical form: angles within a class increasing, classes in
/// forward-orbit order starting from the class that contains the
/// characteristic-arc endpoints (the smallest angle for valence-1 portraits).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPortrait {
    classes: Vec<Vec<Angle>>,
    valence: usize,
    ray_period: u32,
}

/// Check the candidate classes against the four portrait axioms.
/// The empty list means the candidate is a valid portrait.
pub fn validate_classes(classes: &[Vec<Angle>]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if classes.is_empty() || classes.iter().any(|c| c.is_empty()) {
        violations.push(Violation::EmptyClass);
        return violations;
    }
    let mut seen = BTreeSet::new();
    for theta in classes.iter().flatten() {
        if !seen.insert(theta.clone()) {
            violations.push(Violation::DuplicateAngle(theta.clone()));
            return violations;
        }
    }

    // Axiom: every angle periodic with one common exact period.
    let ray_period = classes[0][0].exact_period();
    for theta in classes.iter().flatten() {
        if theta.exact_period() != ray_period || ray_period.is_none() {
            violations.push(Violation::PeriodMismatch(theta.clone()));
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    // Axiom: all classes share one cardinality.
    let v = classes[0].len();
    if classes.iter().any(|c| c.len() != v) {
        violations.push(Violation::UnequalCardinality);
        return violations;
    }

    let p = classes.len();
    let sorted: Vec<Vec<Angle>> = classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort();
            c
        })
        .collect();

    // Axiom: doubling maps A_i bijectively onto A_{i+1 mod p}, preserving
    // cyclic order.
    for i in 0..p {
        let image: BTreeSet<Angle> = sorted[i].iter().map(Angle::double).collect();
        let next: BTreeSet<Angle> = sorted[(i + 1) % p].iter().cloned().collect();
        if image != next {
            violations.push(Violation::NotForwardInvariant(i));
            continue;
        }
        if v >= 2 {
            let next = &sorted[(i + 1) % p];
            let first = sorted[i][0].double();
            let offset = next.iter().position(|x| *x == first).expect("image == next");
            let ordered = (0..v).all(|j| sorted[i][j].double() == next[(offset + j) % v]);
            if !ordered {
                violations.push(Violation::CyclicOrderBroken(i));
            }
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    // Axiom: classes are pairwise unlinked.
    for i in 0..p {
        if sorted[i].len() < 2 {
            continue;
        }
        for j in (i + 1)..p {
            if !unlinked(&sorted[i], &sorted[j]) {
                violations.push(Violation::LinkedClasses(i, j));
            }
        }
    }
    violations
}

/// True iff every angle of `other` lies in a single complementary arc of
/// `class` (both sorted increasingly, `class.len() >= 2`).
fn unlinked(class: &[Angle], other: &[Angle]) -> bool {
    let v = class.len();
    (0..v).any(|t| {
        let arc = DirectedArc::new(class[t].clone(), class[(t + 1) % v].clone())
            .expect("distinct class angles");
        other.iter().all(|b| arc.contains_open(b))
    })
}

impl OrbitPortrait {
    /// Build a portrait from candidate classes, validating the axioms and
    /// canonicalizing the representation.
    pub fn new(classes: Vec<Vec<Angle>>) -> Result<Self, PortraitError> {
        let violations = validate_classes(&classes);
        if !violations.is_empty() {
            return Err(PortraitError::Invalid(violations));
        }
        let sorted: Vec<Vec<Angle>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        let valence = sorted[0].len();
        let ray_period = sorted[0][0].exact_period().expect("validated");

        // Canonical class order: forward-orbit order starting from the class
        // holding the characteristic-arc endpoints (smallest angle if v = 1).
        let start = if valence >= 2 {
            let arc = shortest_complementary_arc(&sorted)?;
            sorted
                .iter()
                .position(|c| c.contains(arc.start()))
                .expect("arc endpoints belong to a class")
        } else {
            let min = sorted.iter().map(|c| &c[0]).min().expect("nonempty");
            sorted.iter().position(|c| &c[0] == min).expect("present")
        };
        let p = sorted.len();
        let mut ordered = Vec::with_capacity(p);
        let mut idx = start;
        for _ in 0..p {
            ordered.push(sorted[idx].clone());
            let image = sorted[idx][0].double();
            idx = sorted
                .iter()
                .position(|c| c.contains(&image))
                .expect("validated forward invariance");
        }
        Ok(OrbitPortrait {
            classes: ordered,
            valence,
            ray_period,
        })
    }

    pub fn classes(&self) -> &[Vec<Angle>] {
        &self.classes
    }

    pub fn point_period(&self) -> usize {
        self.classes.len()
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn ray_period(&self) -> u32 {
        self.ray_period
    }

    /// All angles of the portrait, sorted increasingly.
    pub fn support(&self) -> Vec<Angle> {
        let mut all: Vec<Angle> = self.classes.iter().flatten().cloned().collect();
        all.sort();
        all
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        self.classes.iter().any(|c| c.contains(theta))
    }

    /// Kind as a function of (point period, valence, ray period).
    pub fn kind(&self) -> PortraitKind {
        let p = self.point_period() as u32;
        let v = self.valence as u32;
        if v == 1 {
            PortraitKind::Trivial
        } else if self.ray_period == p * v {
            PortraitKind::Satellite
        } else if v == 2 && self.ray_period == p {
            PortraitKind::Primitive
        } else {
            // Ruled out for valid portraits by Milnor's classification;
            // exhaustively confirmed for small periods in the test suite.
            unreachable!("valid portrait outside the satellite/primitive shapes")
        }
    }

    /// The unique shortest complementary arc over all classes.
    pub fn characteristic_arc(&self) -> Result<DirectedArc, PortraitError> {
        if self.valence < 2 {
            return Err(PortraitError::TrivialPortrait);
        }
        shortest_complementary_arc(&self.classes)
    }

    /// The doubling preimage of the characteristic arc bounded by the rays
    /// crashing into the critical sector: the unique arc of length > 1/2
    /// whose endpoints halve the characteristic endpoints and whose interior
    /// avoids the characteristic class. Note it is a complementary arc of a
    /// class only when the portrait is primitive or has point period 1; for
    /// deeper satellites its endpoints are not support angles at all.
    pub fn critical_arc(&self) -> Result<DirectedArc, PortraitError> {
        if self.valence < 2 {
            return Err(PortraitError::TrivialPortrait);
        }
        let half = Angle::new(1, 2).expect("1/2");
        let chr = self.characteristic_arc()?;
        let class = &self.classes[0]; // holds the characteristic endpoints
        let mut found = None;
        for x_bit in [false, true] {
            for y_bit in [false, true] {
                let arc =
                    DirectedArc::new(chr.start().halve(x_bit), chr.end().halve(y_bit))?;
                if arc.length() > half && class.iter().all(|t| !arc.contains_open(t)) {
                    if found.is_some() {
                        return Err(PortraitError::NoCriticalArc);
                    }
                    found = Some(arc);
                }
            }
        }
        found.ok_or(PortraitError::NoCriticalArc)
    }

    /// The critical arc computed from the characteristic arc endpoints as
    /// `(theta1/2 + 1/2 -> theta2/2)`; must agree with [`Self::critical_arc`].
    pub fn critical_arc_by_formula(&self) -> Result<DirectedArc, PortraitError> {
        let chr = self.characteristic_arc()?;
        let eta1 = chr.start().halve(true);
        let eta2 = chr.end().halve(false);
        Ok(DirectedArc::new(eta1, eta2)?)
    }

    /// Cyclic shift of the first-return map on `A_1`, as a reduced fraction
    /// of the valence. Defined for satellite portraits only.
    pub fn rotation_number(&self) -> Result<Ratio<u64>, PortraitError> {
        if self.kind() != PortraitKind::Satellite {
            return Err(PortraitError::NotSatellite);
        }
        let class = &self.classes[0]; // sorted increasingly
        let v = self.valence;
        let p = self.point_period();
        let mut image = class[0].clone();
        for _ in 0..p {
            image = image.double();
        }
        let shift = class.iter().position(|x| *x == image).expect("A_1 invariant under D^p");
        // The return map advances every angle by the same count; validation
        // of cyclic-order preservation guarantees it, so one probe suffices.
        Ok(Ratio::new(shift as u64, v as u64))
    }

    /// Add `theta` to every angle. The result is a raw candidate that may
    /// fail validation.
    pub fn rotate(&self, theta: &Angle) -> Vec<Vec<Angle>> {
        self.classes
            .iter()
            .map(|c| {
                let mut c: Vec<Angle> = c.iter().map(|x| x.add(theta)).collect();
                c.sort();
                c
            })
            .collect()
    }

    /// The portrait as an unordered family of angle sets, for equality tests
    /// against rotated candidates.
    pub fn family(&self) -> BTreeSet<Vec<Angle>> {
        self.classes.iter().cloned().collect()
    }

    /// Mirror portrait: negate every angle. Valid whenever `self` is.
    pub fn mirror(&self) -> OrbitPortrait {
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(Angle::neg).collect())
            .collect();
        OrbitPortrait::new(classes).expect("negation preserves the axioms")
    }
}

impl fmt::Display for OrbitPortrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, theta) in class.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{theta}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// All complementary arcs of all classes (classes assumed sorted).
fn complementary_arcs(classes: &[Vec<Angle>]) -> Vec<DirectedArc> {
    let mut arcs = Vec::new();
    for class in classes {
        let v = class.len();
        if v < 2 {
            continue;
        }
        for t in 0..v {
            arcs.push(
                DirectedArc::new(class[t].clone(), class[(t + 1) % v].clone())
                    .expect("distinct class angles"),
            );
        }
    }
    arcs
}

fn shortest_complementary_arc(classes: &[Vec<Angle>]) -> Result<DirectedArc, PortraitError> {
    let arcs = complementary_arcs(classes);
    let shortest = arcs
        .iter()
        .min_by(|a, b| a.length().cmp(&b.length()))
        .ok_or(PortraitError::TrivialPortrait)?
        .clone();
    let ties = arcs
        .iter()
        .filter(|a| a.length() == shortest.length())
        .count();
    if ties != 1 {
        return Err(PortraitError::NonUniqueShortestArc);
    }
    Ok(shortest)
}

/// Realize the unique valid portrait whose characteristic arc is
/// `(theta1 -> theta2)`, or report that the pair is not a root pair.
pub fn realize_portrait(theta1: &Angle, theta2: &Angle) -> Result<OrbitPortrait, PortraitError> {
    let n1 = theta1
        .exact_period()
        .ok_or_else(|| PortraitError::NotPeriodic(theta1.clone()))?;
    let n2 = theta2
        .exact_period()
        .ok_or_else(|| PortraitError::NotPeriodic(theta2.clone()))?;
    if n1 != n2 {
        return Err(PortraitError::PeriodMismatch(theta1.clone(), theta2.clone()));
    }
    if theta1 == theta2 {
        return Err(PortraitError::NotRealizable(theta1.clone(), theta2.clone()));
    }
    let half = Angle::new(1, 2).expect("1/2");
    let arc = DirectedArc::new(theta1.clone(), theta2.clone())?;
    if arc.length() >= half {
        return Err(PortraitError::NotShortestFirst(theta1.clone(), theta2.clone()));
    }
    let n = n1 as usize;
    let cycle1 = theta1.orbit().cycle;

    let mut candidates = Vec::new();
    if cycle1.contains(theta2) {
        // One cycle: satellite shape. Classes are the orbits of D^p inside
        // the cycle, for each proper divisor p of n with theta2 in the
        // D^p-orbit of theta1.
        for p in 1..n {
            if n % p != 0 {
                continue;
            }
            let v = n / p;
            let class1: Vec<Angle> = (0..v).map(|k| cycle1[(k * p) % n].clone()).collect();
            if !class1.contains(theta2) {
                continue;
            }
            let classes: Vec<Vec<Angle>> = (0..p)
                .map(|i| class1.iter().map(|x| cycle1_shift(&cycle1, x, i)).collect())
                .collect();
            if validate_classes(&classes).is_empty() {
                candidates.push(OrbitPortrait::new(classes).expect("validated"));
            }
        }
    } else {
        // Two cycles: primitive shape with valence 2.
        let classes: Vec<Vec<Angle>> = (0..n)
            .map(|i| {
                let mut x = theta1.clone();
                let mut y = theta2.clone();
                for _ in 0..i {
                    x = x.double();
                    y = y.double();
                }
                vec![x, y]
            })
            .collect();
        if validate_classes(&classes).is_empty() {
            candidates.push(OrbitPortrait::new(classes).expect("validated"));
        }
    }

    candidates.retain(|p| {
        p.characteristic_arc()
            .map(|a| a.start() == theta1 && a.end() == theta2)
            .unwrap_or(false)
    });
    match candidates.len() {
        0 => Err(PortraitError::NotRealizable(theta1.clone(), theta2.clone())),
        1 => Ok(candidates.pop().expect("len 1")),
        _ => Err(PortraitError::AmbiguousRealization(theta1.clone(), theta2.clone())),
    }
}

fn cycle1_shift(cycle: &[Angle], x: &Angle, steps: usize) -> Angle {
    let i = cycle.iter().position(|c| c == x).expect("on cycle");
    cycle[(i + steps) % cycle.len()].clone()
}

/// All doubling cycles of exact period `n`, each as the forward orbit of its
/// smallest angle.
pub fn cycles_of_period(n: u32) -> Vec<Vec<Angle>> {
    let mut cycles = Vec::new();
    let mut seen: BTreeSet<Angle> = BTreeSet::new();
    for theta in crate::atlas::enumerate_periodic_angles(n) {
        if seen.contains(&theta) {
            continue;
        }
        let cycle = theta.orbit().cycle;
        for x in &cycle {
            seen.insert(x.clone());
        }
        cycles.push(cycle);
    }
    cycles
}

/// Every valid portrait with valence >= 2 and ray period <= `max_ray_period`.
///
/// Doubling-invariance pins the possible groupings: a nontrivial portrait is
/// either one cycle split into the orbits of D^p (satellite shape) or two
/// cycles paired angle by angle (primitive shape). Each shape is enumerated
/// and filtered through the axioms.
pub fn enumerate_nontrivial_portraits(max_ray_period: u32) -> Vec<OrbitPortrait> {
    let mut portraits = Vec::new();
    for n in 2..=max_ray_period {
        let cycles = cycles_of_period(n);
        let n = n as usize;
        for cycle in &cycles {
            for p in 1..n {
                if n % p != 0 {
                    continue;
                }
                let v = n / p;
                let classes: Vec<Vec<Angle>> = (0..p)
                    .map(|i| (0..v).map(|k| cycle[(i + k * p) % n].clone()).collect())
                    .collect();
                if validate_classes(&classes).is_empty() {
                    portraits.push(OrbitPortrait::new(classes).expect("validated"));
                }
            }
        }
        for i in 0..cycles.len() {
            for j in (i + 1)..cycles.len() {
                for offset in 0..n {
                    let classes: Vec<Vec<Angle>> = (0..n)
                        .map(|k| vec![cycles[i][k].clone(), cycles[j][(k + offset) % n].clone()])
                        .collect();
                    if validate_classes(&classes).is_empty() {
                        portraits.push(OrbitPortrait::new(classes).expect("validated"));
                    }
                }
            }
        }
    }
    portraits
}

/// One rotation-equivalence counterexample: two distinct valid portraits
/// exchanged by a nonzero rotation.
#[derive(Debug, Clone)]
pub struct RigidityCounterexample {
    pub first: OrbitPortrait,
    pub second: OrbitPortrait,
    pub rotation: Angle,
}

#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub max_ray_period: u32,
    pub portraits_checked: usize,
    pub counterexamples: Vec<RigidityCounterexample>,
}

/// Sweep all valid nontrivial portraits of ray period at most
/// `max_ray_period` for rotation-equivalent distinct pairs. The expected
/// outcome is an empty counterexample list.
pub fn rigidity_sweep(max_ray_period: u32) -> RigidityReport {
    let portraits = enumerate_nontrivial_portraits(max_ray_period);
    let supports: Vec<Vec<Angle>> = portraits.iter().map(|p| p.support()).collect();
    // Sorted gap multisets are rotation-invariant: unequal gaps rule a pair
    // out before any rotation is tried.
    let gaps: Vec<Vec<Angle>> = supports
        .iter()
        .map(|s| {
            let mut g: Vec<Angle> = (0..s.len())
                .map(|i| s[(i + 1) % s.len()].sub(&s[i]))
                .collect();
            g.sort();
            g
        })
        .collect();
    let families: Vec<BTreeSet<Vec<Angle>>> = portraits.iter().map(|p| p.family()).collect();

    let counterexamples: Vec<RigidityCounterexample> = (0..portraits.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let portraits = &portraits;
            let supports = &supports;
            let gaps = &gaps;
            let families = &families;
            (i..portraits.len()).flat_map(move |j| {
                let mut found = Vec::new();
                if gaps[i] != gaps[j] {
                    return found;
                }
                let mut rotations: BTreeSet<Angle> = BTreeSet::new();
                for a in &supports[i] {
                    for b in &supports[j] {
                        rotations.insert(b.sub(a));
                    }
                }
                for theta in rotations {
                    let rotated: BTreeSet<Vec<Angle>> =
                        portraits[i].rotate(&theta).into_iter().collect();
                    if rotated == families[j] && !(i == j && theta.is_zero()) {
                        found.push(RigidityCounterexample {
                            first: portraits[i].clone(),
                            second: portraits[j].clone(),
                            rotation: theta,
                        });
                    }
                }
                found
            })
        })
        .collect();

    RigidityReport {
        max_ray_period,
        portraits_checked: portraits.len(),
        counterexamples,
    }
}

/// Chord-crossing check between the class hulls of two portraits, used by
/// callers reasoning about compatibility of portraits in one dynamical plane.
pub fn portraits_linked(a: &OrbitPortrait, b: &OrbitPortrait) -> bool {
    for ca in a.classes() {
        for cb in b.classes() {
            let va = ca.len();
            let vb = cb.len();
            if va < 2 || vb < 2 {
                continue;
            }
            for s in 0..va {
                for t in 0..vb {
                    let p1 = (&ca[s], &ca[(s + 1) % va]);
                    let p2 = (&cb[t], &cb[(t + 1) % vb]);
                    if let Ok(true) = chords_cross(p1, p2) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn classes(spec: &[&[&str]]) -> Vec<Vec<Angle>> {
        spec.iter()
            .map(|c| c.iter().map(|s| a(s)).collect())
            .collect()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_classes(&classes(&[&["1/3", "2/3"]])).is_empty());
        assert!(validate_classes(&classes(&[&["1/7", "2/7", "4/7"]])).is_empty());
        let bad = validate_classes(&classes(&[&["1/7", "3/7"]]));
        assert!(bad
            .iter()
            .any(|v| matches!(v, Violation::NotForwardInvariant(_))));
    }

    #[test]
    fn airplane_is_valid_and_primitive() {
        let p = OrbitPortrait::new(classes(&[
            &["3/7", "4/7"],
            &["6/7", "1/7"],
            &["5/7", "2/7"],
        ]))
        .unwrap();
        assert_eq!(p.kind(), PortraitKind::Primitive);
        assert_eq!(p.point_period(), 3);
        assert_eq!(p.valence(), 2);
        assert_eq!(p.ray_period(), 3);
    }

    #[test]
    fn characteristic_arcs() {
        let basilica = OrbitPortrait::new(classes(&[&["1/3", "2/3"]])).unwrap();
        let arc = basilica.characteristic_arc().unwrap();
        assert_eq!((arc.start(), arc.end()), (&a("1/3"), &a("2/3")));

        let rabbit = OrbitPortrait::new(classes(&[&["1/7", "2/7", "4/7"]])).unwrap();
        let arc = rabbit.characteristic_arc().unwrap();
        assert_eq!((arc.start(), arc.end()), (&a("1/7"), &a("2/7")));

        let airplane = OrbitPortrait::new(classes(&[
            &["3/7", "4/7"],
            &["6/7", "1/7"],
            &["5/7", "2/7"],
        ]))
        .unwrap();
        let arc = airplane.characteristic_arc().unwrap();
        assert_eq!((arc.start(), arc.end()), (&a("3/7"), &a("4/7")));
    }

    #[test]
    fn critical_arcs_match_formula() {
        for spec in [
            vec![vec!["1/3", "2/3"]],
            vec![vec!["1/7", "2/7", "4/7"]],
            vec![vec!["3/7", "4/7"], vec!["6/7", "1/7"], vec!["5/7", "2/7"]],
        ] {
            let cls: Vec<Vec<Angle>> = spec
                .iter()
                .map(|c| c.iter().map(|s| a(s)).collect())
                .collect();
            let p = OrbitPortrait::new(cls).unwrap();
            assert_eq!(p.critical_arc().unwrap(), p.critical_arc_by_formula().unwrap());
        }
        let basilica = OrbitPortrait::new(classes(&[&["1/3", "2/3"]])).unwrap();
        let crit = basilica.critical_arc().unwrap();
        assert_eq!((crit.start(), crit.end()), (&a("2/3"), &a("1/3")));
        assert_eq!(crit.length(), a("2/3"));

        let airplane = OrbitPortrait::new(classes(&[
            &["3/7", "4/7"],
            &["6/7", "1/7"],
            &["5/7", "2/7"],
        ]))
        .unwrap();
        let crit = airplane.critical_arc().unwrap();
        assert_eq!((crit.start(), crit.end()), (&a("5/7"), &a("2/7")));
        assert_eq!(crit.length(), a("4/7"));
    }

    #[test]
    fn realization_examples() {
        let rabbit = realize_portrait(&a("1/7"), &a("2/7")).unwrap();
        assert_eq!(rabbit.kind(), PortraitKind::Satellite);
        assert_eq!(rabbit.point_period(), 1);
        assert_eq!(rabbit.valence(), 3);

        let airplane = realize_portrait(&a("3/7"), &a("4/7")).unwrap();
        assert_eq!(airplane.kind(), PortraitKind::Primitive);
        assert_eq!(airplane.point_period(), 3);

        assert!(matches!(
            realize_portrait(&a("1/7"), &a("3/7")),
            Err(PortraitError::NotRealizable(_, _))
        ));
    }

    #[test]
    fn realization_round_trip() {
        for p in enumerate_nontrivial_portraits(6) {
            let arc = p.characteristic_arc().unwrap();
            let q = realize_portrait(arc.start(), arc.end()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn rotation_numbers() {
        let rabbit = OrbitPortrait::new(classes(&[&["1/7", "2/7", "4/7"]])).unwrap();
        assert_eq!(rabbit.rotation_number().unwrap(), Ratio::new(1, 3));

        let corabbit = OrbitPortrait::new(classes(&[&["3/7", "5/7", "6/7"]])).unwrap();
        assert_eq!(corabbit.rotation_number().unwrap(), Ratio::new(2, 3));

        let basilica = OrbitPortrait::new(classes(&[&["1/3", "2/3"]])).unwrap();
        assert_eq!(basilica.rotation_number().unwrap(), Ratio::new(1, 2));

        let airplane = OrbitPortrait::new(classes(&[
            &["3/7", "4/7"],
            &["6/7", "1/7"],
            &["5/7", "2/7"],
        ]))
        .unwrap();
        assert!(airplane.rotation_number().is_err());
    }

    #[test]
    fn rotate_is_componentwise() {
        let basilica = OrbitPortrait::new(classes(&[&["1/3", "2/3"]])).unwrap();
        assert_eq!(basilica.rotate(&a("0")), vec![vec![a("1/3"), a("2/3")]]);
        assert_eq!(basilica.rotate(&a("1/3")), vec![vec![a("0"), a("2/3")]]);

        let rabbit = OrbitPortrait::new(classes(&[&["1/7", "2/7", "4/7"]])).unwrap();
        assert_eq!(
            rabbit.rotate(&a("1/2")),
            vec![vec![a("1/14"), a("9/14"), a("11/14")]]
        );
    }

    #[test]
    fn rigidity_small_sweeps() {
        let r = rigidity_sweep(2);
        assert_eq!(r.portraits_checked, 1);
        assert!(r.counterexamples.is_empty());

        let r = rigidity_sweep(3);
        assert_eq!(r.portraits_checked, 4);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn satellite_primitive_relations() {
        for p in enumerate_nontrivial_portraits(6) {
            match p.kind() {
                PortraitKind::Satellite => {
                    assert_eq!(
                        p.ray_period() as usize,
                        p.point_period() * p.valence()
                    );
                }
                PortraitKind::Primitive => {
                    assert_eq!(p.valence(), 2);
                    assert_eq!(p.ray_period() as usize, p.point_period());
                }
                PortraitKind::Trivial => unreachable!("nontrivial enumeration"),
            }
            let half = a("1/2");
            assert!(p.characteristic_arc().unwrap().length() < half);
            assert!(p.critical_arc().unwrap().length() > half);
            // Doubling the critical arc endpoints recovers the characteristic arc.
            let crit = p.critical_arc().unwrap();
            let chr = p.characteristic_arc().unwrap();
            assert_eq!(&crit.start().double(), chr.start());
            assert_eq!(&crit.end().double(), chr.end());
        }
    }
}
