//! Topological invariants of regular leaf spaces: unbounded-Fatou-component
//! counts per periodic leaf, LU profiles from internal addresses and from
//! realized portraits, irregular-point counts, and the separating invariant
//! bundle with its injectivity comparison.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::angle::Angle;
use crate::atlas::{Atlas, AtlasError, ComponentKind, HyperbolicComponent, LabelledAddress};
use crate::portrait::{OrbitPortrait, PortraitKind};

#[derive(Debug, Error)]
pub enum LeafError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileSource {
    AddressRule,
    PortraitRule,
}

/// One cycle of periodic leaves and its unbounded-Fatou-component count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeafCycleRecord {
    /// Period of the underlying repelling cycle's rays.
    pub cycle_period: u32,
    pub leaf_count: u32,
    pub unbounded_count: u32,
    pub source: ProfileSource,
}

impl fmt::Display for LeafCycleRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{}u@{}",
            self.leaf_count, self.unbounded_count, self.cycle_period
        )
    }
}

/// Number of unbounded Fatou components of a periodic leaf over a cycle with
/// the given portrait: the valence off the dynamic root, twice the valence at
/// a satellite dynamic root, and exactly 3 at a primitive dynamic root.
pub fn unbounded_count(
    portrait: &OrbitPortrait,
    is_dynamic_root: bool,
    kind: PortraitKind,
) -> u32 {
    let v = portrait.valence() as u32;
    if !is_dynamic_root {
        v
    } else {
        match kind {
            PortraitKind::Satellite => 2 * v,
            PortraitKind::Primitive => 3,
            PortraitKind::Trivial => v,
        }
    }
}

/// LU profile read off the internal address alone: one record per arrow,
/// counts depending on divisibility of consecutive entries and on whether
/// the arrow is final.
pub fn lu_profile_from_address(address: &LabelledAddress) -> Vec<LeafCycleRecord> {
    let periods = address.periods();
    let mut records = Vec::new();
    for j in 1..periods.len() {
        let prev = periods[j - 1];
        let cur = periods[j];
        let last = j == periods.len() - 1;
        let unbounded_count = if cur % prev == 0 {
            if last {
                2 * cur / prev
            } else {
                cur / prev
            }
        } else if last {
            3
        } else {
            2
        };
        records.push(LeafCycleRecord {
            cycle_period: cur,
            leaf_count: cur,
            unbounded_count,
            source: ProfileSource::AddressRule,
        });
    }
    records
}

/// LU profile computed independently from the portraits realized along the
/// combinatorial arc: leaves per cycle equal the portrait's point period.
pub fn lu_profile_from_portraits(
    component: &HyperbolicComponent,
    atlas: &Atlas,
) -> Result<Vec<LeafCycleRecord>, LeafError> {
    let chain = atlas.address_chain(component)?;
    let mut records = Vec::new();
    for (i, step) in chain.iter().enumerate() {
        let portrait = step.root_portrait()?;
        let is_root = i == chain.len() - 1;
        records.push(LeafCycleRecord {
            cycle_period: step.period,
            leaf_count: portrait.point_period() as u32,
            unbounded_count: unbounded_count(&portrait, is_root, portrait.kind()),
            source: ProfileSource::PortraitRule,
        });
    }
    Ok(records)
}

/// Per-step comparison of the two LU-profile routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuStepComparison {
    pub cycle_period: u32,
    pub address_record: LeafCycleRecord,
    pub portrait_record: LeafCycleRecord,
    pub step_kind: ComponentKind,
}

impl LuStepComparison {
    pub fn unbounded_agree(&self) -> bool {
        self.address_record.unbounded_count == self.portrait_record.unbounded_count
    }

    pub fn leaf_count_agree(&self) -> bool {
        self.address_record.leaf_count == self.portrait_record.leaf_count
    }
}

/// Machine-readable discrepancy report between the address rule and the
/// portrait rule; neither route is silently preferred.
pub fn lu_discrepancy_report(
    component: &HyperbolicComponent,
    atlas: &Atlas,
) -> Result<Vec<LuStepComparison>, LeafError> {
    let from_address = lu_profile_from_address(&component.address);
    let from_portraits = lu_profile_from_portraits(component, atlas)?;
    let chain = atlas.address_chain(component)?;
    assert_eq!(from_address.len(), from_portraits.len());
    Ok(from_address
        .into_iter()
        .zip(from_portraits)
        .zip(chain)
        .map(|((a, p), step)| LuStepComparison {
            cycle_period: a.cycle_period,
            address_record: a,
            portrait_record: p,
            step_kind: step.kind,
        })
        .collect())
}

/// The separating topological data of a superattracting parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBundle {
    pub period: u32,
    pub root_portrait: OrbitPortrait,
    pub kind: ComponentKind,
    pub labelled_address: LabelledAddress,
    pub lu_profile: Vec<LeafCycleRecord>,
    pub irregular_points: u32,
}

pub fn invariant_bundle(
    component: &HyperbolicComponent,
    atlas: &Atlas,
) -> Result<InvariantBundle, LeafError> {
    if component.kind != ComponentKind::MainCardioid {
        // Every address step must be present in the atlas.
        atlas.address_chain(component)?;
    }
    Ok(InvariantBundle {
        period: component.period,
        root_portrait: component.root_portrait()?,
        kind: component.kind,
        labelled_address: component.address.clone(),
        lu_profile: lu_profile_from_address(&component.address),
        irregular_points: component.period + 1,
    })
}

/// Orientation reversal: every portrait angle negated and every rotation
/// label inverted. Mirror bundles are deliberately distinct from their
/// originals, matching the orientation-preserving hypothesis.
pub fn mirror_bundle(bundle: &InvariantBundle) -> InvariantBundle {
    let entries = bundle
        .labelled_address
        .entries
        .iter()
        .map(|e| crate::atlas::AddressEntry {
            period: e.period,
            label: e.label.map(|r| Ratio::new(r.denom() - r.numer(), *r.denom())),
        })
        .collect();
    InvariantBundle {
        period: bundle.period,
        root_portrait: bundle.root_portrait.mirror(),
        kind: bundle.kind,
        labelled_address: LabelledAddress { entries },
        lu_profile: bundle.lu_profile.clone(),
        irregular_points: bundle.irregular_points,
    }
}

/// The first bundle field on which two bundles differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Period,
    Kind,
    LuProfile,
    LabelledAddress,
    RootPortrait,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinction {
    Equal,
    Distinguished(Witness),
}

/// Compare bundles field by field in invariant order; `Equal` only when all
/// fields agree.
pub fn distinguish(b1: &InvariantBundle, b2: &InvariantBundle) -> Distinction {
    if b1.period != b2.period {
        Distinction::Distinguished(Witness::Period)
    } else if b1.kind != b2.kind {
        Distinction::Distinguished(Witness::Kind)
    } else if b1.lu_profile != b2.lu_profile {
        Distinction::Distinguished(Witness::LuProfile)
    } else if b1.labelled_address != b2.labelled_address {
        Distinction::Distinguished(Witness::LabelledAddress)
    } else if b1.root_portrait != b2.root_portrait {
        Distinction::Distinguished(Witness::RootPortrait)
    } else {
        Distinction::Equal
    }
}

/// Pairs of distinct atlas components whose bundles compare `Equal`; the
/// expected result is empty (the injectivity sweep).
pub fn bundle_collisions(atlas: &Atlas) -> Result<Vec<(usize, usize)>, LeafError> {
    let bundles: Vec<InvariantBundle> = atlas
        .components()
        .iter()
        .map(|c| invariant_bundle(c, atlas))
        .collect::<Result<_, _>>()?;
    Ok((0..bundles.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let bundles = &bundles;
            ((i + 1)..bundles.len())
                .filter(move |&j| distinguish(&bundles[i], &bundles[j]) == Distinction::Equal)
                .map(move |j| (i, j))
        })
        .collect())
}

/// Pairs of distinct components sharing a labelled internal address;
/// expected empty.
pub fn labelled_address_collisions(atlas: &Atlas) -> Vec<(usize, usize)> {
    let comps = atlas.components();
    let mut collisions = Vec::new();
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            if comps[i].address == comps[j].address {
                collisions.push((i, j));
            }
        }
    }
    collisions
}

/// A pair of distinct components sharing an unlabelled internal address,
/// witnessing that labels are necessary.
pub fn unlabelled_address_collision(atlas: &Atlas) -> Option<(usize, usize)> {
    let comps = atlas.components();
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            if comps[i].address.periods() == comps[j].address.periods() {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct BoundViolation {
    pub component_root: Angle,
    pub ancestor_root: Angle,
    pub angle: Angle,
    pub valence: usize,
}

#[derive(Debug, Clone)]
pub struct NonperiodicBoundReport {
    pub components_checked: usize,
    pub violations: Vec<BoundViolation>,
}

/// Valence bound for cycles off the combinatorial arc. The angle
/// identifications of a parameter's plane are those of the portraits of all
/// ancestors by wake containment (including its own root portrait); a cycle
/// carrying three or more rays per point is a branch cycle and must sit at an
/// internal-address entry — its point period must appear in the address. Note
/// the branching portrait at an entry need not be the chain component's root
/// portrait: inside a p/q sublimb with q >= 3 it is the sublimb satellite's
/// portrait on the same cycle.
pub fn nonperiodic_bound_check(
    atlas: &Atlas,
    max_period: u32,
) -> Result<NonperiodicBoundReport, LeafError> {
    let comps: Vec<&HyperbolicComponent> = atlas
        .components()
        .iter()
        .filter(|c| c.kind != ComponentKind::MainCardioid)
        .collect();
    let mut violations = Vec::new();
    for h in &comps {
        let address = h.address.periods();
        for g in &comps {
            if g.period > max_period {
                continue;
            }
            let is_ancestor = g.root_pair == h.root_pair
                || g
                    .wake()?
                    .contains_open(&h.root_pair.0) && g.wake()?.contains_open(&h.root_pair.1);
            if !is_ancestor {
                continue;
            }
            let portrait = g.root_portrait()?;
            if portrait.valence() < 3 {
                continue;
            }
            let branch_period = portrait.point_period() as u32;
            if !address.contains(&branch_period) {
                violations.push(BoundViolation {
                    component_root: h.root_pair.0.clone(),
                    ancestor_root: g.root_pair.0.clone(),
                    angle: portrait.classes()[0][0].clone(),
                    valence: portrait.valence(),
                });
            }
        }
    }
    Ok(NonperiodicBoundReport {
        components_checked: comps.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::realize_portrait;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn record(cycle_period: u32, leaf_count: u32, unbounded: u32) -> LeafCycleRecord {
        LeafCycleRecord {
            cycle_period,
            leaf_count,
            unbounded_count: unbounded,
            source: ProfileSource::AddressRule,
        }
    }

    #[test]
    fn unbounded_count_known_values() {
        let rabbit = realize_portrait(&a("1/7"), &a("2/7")).unwrap();
        assert_eq!(unbounded_count(&rabbit, true, rabbit.kind()), 6);

        let airplane = realize_portrait(&a("3/7"), &a("4/7")).unwrap();
        assert_eq!(unbounded_count(&airplane, true, airplane.kind()), 3);

        let basilica = realize_portrait(&a("1/3"), &a("2/3")).unwrap();
        assert_eq!(unbounded_count(&basilica, true, basilica.kind()), 4);

        // beta fixed point: trivial valence-1 portrait, not a root.
        let beta = OrbitPortrait::new(vec![vec![Angle::zero()]]).unwrap();
        assert_eq!(unbounded_count(&beta, false, beta.kind()), 1);
    }

    #[test]
    fn address_rule_examples() {
        let addr: LabelledAddress = "1->2->3".parse().unwrap();
        assert_eq!(
            lu_profile_from_address(&addr),
            vec![record(2, 2, 2), record(3, 3, 3)]
        );

        let addr: LabelledAddress = "1->3".parse().unwrap();
        assert_eq!(lu_profile_from_address(&addr), vec![record(3, 3, 6)]);

        let addr: LabelledAddress = "1->2->4".parse().unwrap();
        assert_eq!(
            lu_profile_from_address(&addr),
            vec![record(2, 2, 2), record(4, 4, 4)]
        );

        let addr: LabelledAddress = "1".parse().unwrap();
        assert!(lu_profile_from_address(&addr).is_empty());
    }

    #[test]
    fn portrait_rule_examples() {
        let atlas = Atlas::build(3).unwrap();
        let airplane = atlas.find_by_root_angle(&a("3/7")).unwrap();
        let prof = lu_profile_from_portraits(airplane, &atlas).unwrap();
        // Root cycle has point period 3 and exactly 3 unbounded components.
        assert_eq!(prof.last().unwrap().leaf_count, 3);
        assert_eq!(prof.last().unwrap().unbounded_count, 3);

        let rabbit = atlas.find_by_root_angle(&a("1/7")).unwrap();
        let prof = lu_profile_from_portraits(rabbit, &atlas).unwrap();
        // The rabbit's dynamic root is the fixed alpha point: one leaf,
        // six unbounded components.
        assert_eq!(prof, vec![LeafCycleRecord {
            cycle_period: 3,
            leaf_count: 1,
            unbounded_count: 6,
            source: ProfileSource::PortraitRule,
        }]);

        let basilica = atlas.find_by_root_angle(&a("1/3")).unwrap();
        let prof = lu_profile_from_portraits(basilica, &atlas).unwrap();
        assert_eq!(prof[0].leaf_count, 1);
        assert_eq!(prof[0].unbounded_count, 4);
    }

    #[test]
    fn discrepancies_confined_to_satellite_steps() {
        let atlas = Atlas::build(5).unwrap();
        for c in atlas.components() {
            if c.kind == ComponentKind::MainCardioid {
                continue;
            }
            for step in lu_discrepancy_report(c, &atlas).unwrap() {
                assert!(step.unbounded_agree(), "{c:?} at {}", step.cycle_period);
                if !step.leaf_count_agree() {
                    assert_eq!(step.step_kind, ComponentKind::Satellite);
                    assert_eq!(
                        step.address_record.leaf_count,
                        step.cycle_period
                    );
                }
            }
        }
    }

    #[test]
    fn bundles_and_witnesses() {
        let atlas = Atlas::build(3).unwrap();
        let rabbit = invariant_bundle(atlas.find_by_root_angle(&a("1/7")).unwrap(), &atlas).unwrap();
        let corabbit =
            invariant_bundle(atlas.find_by_root_angle(&a("5/7")).unwrap(), &atlas).unwrap();
        let airplane =
            invariant_bundle(atlas.find_by_root_angle(&a("3/7")).unwrap(), &atlas).unwrap();
        let basilica =
            invariant_bundle(atlas.find_by_root_angle(&a("1/3")).unwrap(), &atlas).unwrap();

        assert_eq!(
            distinguish(&rabbit, &corabbit),
            Distinction::Distinguished(Witness::LabelledAddress)
        );
        assert_eq!(
            distinguish(&airplane, &rabbit),
            Distinction::Distinguished(Witness::Kind)
        );
        assert_eq!(distinguish(&basilica, &basilica.clone()), Distinction::Equal);

        assert_eq!(basilica.irregular_points, 3);
        assert_eq!(airplane.irregular_points, 4);
        let cardioid = invariant_bundle(atlas.main_cardioid(), &atlas).unwrap();
        assert_eq!(cardioid.irregular_points, 2);
    }

    #[test]
    fn mirror_exchanges_conjugate_components() {
        let atlas = Atlas::build(3).unwrap();
        let rabbit = invariant_bundle(atlas.find_by_root_angle(&a("1/7")).unwrap(), &atlas).unwrap();
        let corabbit =
            invariant_bundle(atlas.find_by_root_angle(&a("5/7")).unwrap(), &atlas).unwrap();
        assert_eq!(mirror_bundle(&rabbit), corabbit);
        assert_eq!(distinguish(&rabbit, &mirror_bundle(&rabbit)),
            Distinction::Distinguished(Witness::LabelledAddress));
    }

    #[test]
    fn small_injectivity() {
        let atlas = Atlas::build(5).unwrap();
        assert!(bundle_collisions(&atlas).unwrap().is_empty());
        assert!(labelled_address_collisions(&atlas).is_empty());
        assert!(unlabelled_address_collision(&atlas).is_some());
    }

    #[test]
    fn nonperiodic_bounds_small() {
        let atlas = Atlas::build(5).unwrap();
        let report = nonperiodic_bound_check(&atlas, 5).unwrap();
        assert_eq!(report.violations.len(), 0);
    }
}
