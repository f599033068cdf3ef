//! Enumeration of hyperbolic components of the Mandelbrot set up to a period
//! bound: root-angle pairing, wakes, visibility, internal addresses, and a
//! persistent atlas of the results.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use thiserror::Error;

use crate::angle::{chords_cross, kneading_sequence, Angle, AngleError, DirectedArc};
use crate::portrait::{realize_portrait, OrbitPortrait, PortraitError, PortraitKind};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("internal address is defined for nonzero periodic angles, got {0}")]
    NotPeriodic(Angle),
    #[error("pairing failed at period {0}: no non-crossing adjacent pair left")]
    PairingStuck(u32),
    #[error("root pair ({0}, {1}) failed to realize a portrait: {2}")]
    RootPairNotRealizable(Angle, Angle, PortraitError),
    #[error("no component of period {period} on the combinatorial arc of {root}")]
    MissingChainComponent { period: u32, root: Angle },
    #[error("no sublimb of the period-{parent} component contains {theta}")]
    SublimbNotFound { parent: u32, theta: Angle },
    #[error("unknown root angle {0}")]
    UnknownAngle(Angle),
    #[error("no component with address {0:?}")]
    UnknownAddress(Vec<u32>),
    #[error("the main cardioid has no wake")]
    MainCardioidWake,
    #[error("atlas file parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Angle(#[from] AngleError),
}

/// Primitive/satellite classification of a component, with the main cardioid
/// kept apart since it has no root pair of its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    MainCardioid,
    Primitive,
    Satellite,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentKind::MainCardioid => "main_cardioid",
            ComponentKind::Primitive => "primitive",
            ComponentKind::Satellite => "satellite",
        };
        write!(f, "{s}")
    }
}

impl FromStr for ComponentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "main_cardioid" => Ok(ComponentKind::MainCardioid),
            "primitive" => Ok(ComponentKind::Primitive),
            "satellite" => Ok(ComponentKind::Satellite),
            other => Err(format!("unknown component kind `{other}`")),
        }
    }
}

/// One entry of a labelled internal address: a period, plus the label on the
/// arrow leading into it. A satellite step is labelled by its rotation
/// number; a primitive step by the sublimb p/q of the previous step in which
/// it sits, omitted when q = 2 since the numerator is then forced. Labels
/// with q >= 3 are exactly what separates complex-conjugate components
/// sharing an unlabelled address.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AddressEntry {
    pub period: u32,
    pub label: Option<Ratio<u64>>,
}

/// Internal address with satellite arrows labelled by rotation numbers.
/// Periods are strictly increasing and the first entry is always 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledAddress {
    pub entries: Vec<AddressEntry>,
}

impl LabelledAddress {
    pub fn periods(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.period).collect()
    }
}

impl fmt::Display for LabelledAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                match &e.label {
                    Some(r) => write!(f, "-({}/{})->", r.numer(), r.denom())?,
                    None => write!(f, "->")?,
                }
            }
            write!(f, "{}", e.period)?;
        }
        Ok(())
    }
}

impl FromStr for LabelledAddress {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        let mut rest = s;
        let mut label = None;
        loop {
            let end = rest.find('-').unwrap_or(rest.len());
            let period: u32 = rest[..end]
                .parse()
                .map_err(|_| format!("bad period in address `{s}`"))?;
            entries.push(AddressEntry { period, label });
            rest = &rest[end..];
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix("->") {
                label = None;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("-(") {
                let close = r.find(")->").ok_or_else(|| format!("bad label in `{s}`"))?;
                let (n, d) = r[..close]
                    .split_once('/')
                    .ok_or_else(|| format!("bad label in `{s}`"))?;
                let n: u64 = n.parse().map_err(|_| format!("bad label in `{s}`"))?;
                let d: u64 = d.parse().map_err(|_| format!("bad label in `{s}`"))?;
                label = Some(Ratio::new(n, d));
                rest = &r[close + 3..];
            } else {
                return Err(format!("bad arrow in address `{s}`"));
            }
        }
        Ok(LabelledAddress { entries })
    }
}

/// A hyperbolic component recorded by its combinatorial data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicComponent {
    pub period: u32,
    /// Root angle pair with the characteristic arc directed shortest-first;
    /// the main cardioid stores (0, 0).
    pub root_pair: (Angle, Angle),
    pub kind: ComponentKind,
    pub rotation: Option<Ratio<u64>>,
    pub address: LabelledAddress,
}

impl HyperbolicComponent {
    /// The wake: the characteristic arc spanned by the root pair.
    pub fn wake(&self) -> Result<DirectedArc, AtlasError> {
        if self.kind == ComponentKind::MainCardioid {
            return Err(AtlasError::MainCardioidWake);
        }
        Ok(DirectedArc::new(
            self.root_pair.0.clone(),
            self.root_pair.1.clone(),
        )?)
    }

    /// Realize the orbit portrait of the root pair.
    pub fn root_portrait(&self) -> Result<OrbitPortrait, AtlasError> {
        if self.kind == ComponentKind::MainCardioid {
            // The fixed ray at angle 0 forms the trivial portrait {{0}}.
            return Ok(OrbitPortrait::new(vec![vec![Angle::zero()]])
                .expect("trivial fixed portrait"));
        }
        realize_portrait(&self.root_pair.0, &self.root_pair.1).map_err(|e| {
            AtlasError::RootPairNotRealizable(self.root_pair.0.clone(), self.root_pair.1.clone(), e)
        })
    }
}

/// True iff `h2` lies strictly inside the wake of `h1`, i.e. the rays landing
/// at the root of `h1` separate `h2` from the main cardioid.
pub fn visible(h1: &HyperbolicComponent, h2: &HyperbolicComponent) -> Result<bool, AtlasError> {
    let wake = h1.wake()?;
    Ok(wake.contains_open(&h2.root_pair.0) && wake.contains_open(&h2.root_pair.1))
}

/// All angles of exact period `n` under doubling, sorted increasingly.
pub fn enumerate_periodic_angles(n: u32) -> Vec<Angle> {
    if n == 1 {
        return vec![Angle::zero()];
    }
    let den = (1u128 << n) - 1;
    let mut out = Vec::new();
    for k in 1..den {
        let theta = Angle::from_big(k.into(), den.into()).expect("den > 0");
        if theta.exact_period() == Some(n) {
            out.push(theta);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Count of exact-period-`n` angles by Moebius inversion over `2^d - 1`.
pub fn count_exact_period_angles(n: u32) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mu = moebius(n / d);
        total += mu * (((1u64 << d) - 1) as i64);
    }
    total as u64
}

fn moebius(mut m: u32) -> i64 {
    let mut factors = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Internal address of a nonzero periodic angle, computed from the kneading
/// sequence via the rho function: a_{k+1} is the first position after a_k
/// where the sequence disagrees with its own shift by a_k.
pub fn internal_address(theta: &Angle) -> Result<Vec<u32>, AtlasError> {
    if theta.is_zero() || !theta.is_periodic() {
        return Err(AtlasError::NotPeriodic(theta.clone()));
    }
    let n = theta.exact_period().expect("periodic") as usize;
    let nu = kneading_sequence(theta).expect("theta != 0");
    let mut address = vec![1u32];
    let mut a = 1usize;
    while a < n {
        let mut j = a + 1;
        while !nu.symbol(j).differs(nu.symbol(j - a)) {
            j += 1;
        }
        a = j;
        address.push(a as u32);
    }
    debug_assert_eq!(a, n, "address must terminate at the exact period");
    Ok(address)
}

/// Lavaurs' non-crossing pairing: per period, nearest available angles are
/// paired first, never crossing a chord of equal or lower period. Index `i`
/// of the result holds the pairs of period `i + 2`.
pub fn pair_root_angles(max_period: u32) -> Result<Vec<Vec<(Angle, Angle)>>, AtlasError> {
    let mut existing: Vec<(Angle, Angle)> = Vec::new();
    let mut out = Vec::new();
    for n in 2..=max_period {
        let mut unpaired = enumerate_periodic_angles(n);
        let mut pairs = Vec::new();
        while !unpaired.is_empty() {
            let len = unpaired.len();
            let mut chosen = None;
            for i in 0..len {
                let a = &unpaired[i];
                let b = &unpaired[(i + 1) % len];
                let crosses = existing
                    .iter()
                    .any(|(c, d)| chords_cross((a, b), (c, d)).unwrap_or(false));
                if !crosses {
                    chosen = Some(i);
                    break;
                }
            }
            let i = chosen.ok_or(AtlasError::PairingStuck(n))?;
            let a = unpaired[i].clone();
            let b = unpaired[(i + 1) % len].clone();
            // Characteristic arc is directed shortest-first.
            let pair = if DirectedArc::new(a.clone(), b.clone())?.length()
                < DirectedArc::new(b.clone(), a.clone())?.length()
            {
                (a, b)
            } else {
                (b, a)
            };
            existing.push(pair.clone());
            pairs.push(pair);
            let j = (i + 1) % len;
            if j > i {
                unpaired.remove(j);
                unpaired.remove(i);
            } else {
                unpaired.remove(i);
                unpaired.remove(j);
            }
        }
        pairs.sort();
        out.push(pairs);
    }
    Ok(out)
}

/// Immutable collection of all hyperbolic components up to a period bound.
#[derive(Debug, Clone)]
pub struct Atlas {
    max_period: u32,
    components: Vec<HyperbolicComponent>,
    by_root_angle: BTreeMap<Angle, usize>,
}

impl Atlas {
    /// Enumerate every component of period at most `max_period`: pair root
    /// angles, realize each pair's portrait, and compute labelled addresses.
    pub fn build(max_period: u32) -> Result<Atlas, AtlasError> {
        let mut components = vec![HyperbolicComponent {
            period: 1,
            root_pair: (Angle::zero(), Angle::zero()),
            kind: ComponentKind::MainCardioid,
            rotation: None,
            address: LabelledAddress {
                entries: vec![AddressEntry { period: 1, label: None }],
            },
        }];

        if max_period >= 2 {
            for (idx, pairs) in pair_root_angles(max_period)?.into_iter().enumerate() {
                let period = idx as u32 + 2;
                for (a, b) in pairs {
                    let portrait = realize_portrait(&a, &b).map_err(|e| {
                        AtlasError::RootPairNotRealizable(a.clone(), b.clone(), e)
                    })?;
                    let (kind, rotation) = match portrait.kind() {
                        PortraitKind::Satellite => (
                            ComponentKind::Satellite,
                            Some(portrait.rotation_number().expect("satellite")),
                        ),
                        PortraitKind::Primitive => (ComponentKind::Primitive, None),
                        PortraitKind::Trivial => unreachable!("root portraits are nontrivial"),
                    };
                    components.push(HyperbolicComponent {
                        period,
                        root_pair: (a, b),
                        kind,
                        rotation,
                        // Filled in below once all components exist.
                        address: LabelledAddress { entries: Vec::new() },
                    });
                }
            }
        }

        let addresses: Vec<LabelledAddress> = components
            .iter()
            .map(|c| labelled_address_of(c, &components))
            .collect::<Result<_, _>>()?;
        for (c, addr) in components.iter_mut().zip(addresses) {
            c.address = addr;
        }

        let mut by_root_angle = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            by_root_angle.insert(c.root_pair.0.clone(), i);
            by_root_angle.insert(c.root_pair.1.clone(), i);
        }
        Ok(Atlas {
            max_period,
            components,
            by_root_angle,
        })
    }

    pub fn max_period(&self) -> u32 {
        self.max_period
    }

    pub fn components(&self) -> &[HyperbolicComponent] {
        &self.components
    }

    pub fn main_cardioid(&self) -> &HyperbolicComponent {
        &self.components[0]
    }

    /// Component counts indexed by period (1..=max_period).
    pub fn per_period_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.components {
            *counts.entry(c.period).or_insert(0) += 1;
        }
        counts
    }

    /// Exact root-angle lookup.
    pub fn find_by_root_angle(&self, theta: &Angle) -> Option<&HyperbolicComponent> {
        self.by_root_angle.get(theta).map(|&i| &self.components[i])
    }

    /// The component with the innermost wake strictly containing `theta`.
    pub fn enclosing_component(&self, theta: &Angle) -> Option<&HyperbolicComponent> {
        self.components
            .iter()
            .filter(|c| {
                c.wake()
                    .map(|w| w.contains_open(theta))
                    .unwrap_or(false)
            })
            .min_by(|a, b| {
                let wa = a.wake().expect("filtered").length();
                let wb = b.wake().expect("filtered").length();
                wa.cmp(&wb)
            })
    }

    /// All components whose unlabelled internal address equals `periods`.
    pub fn find_by_address(&self, periods: &[u32]) -> Vec<&HyperbolicComponent> {
        self.components
            .iter()
            .filter(|c| c.address.periods() == periods)
            .collect()
    }

    /// The component with the given labelled internal address, if any.
    pub fn find_by_labelled_address(
        &self,
        address: &LabelledAddress,
    ) -> Option<&HyperbolicComponent> {
        self.components.iter().find(|c| &c.address == address)
    }

    /// The components crossed by the combinatorial arc of `component`, one
    /// per internal-address entry past the main cardioid, innermost wakes
    /// first-to-last; ends with `component` itself.
    pub fn address_chain(
        &self,
        component: &HyperbolicComponent,
    ) -> Result<Vec<&HyperbolicComponent>, AtlasError> {
        let mut chain = Vec::new();
        for entry in &component.address.entries {
            if entry.period == 1 {
                continue;
            }
            if entry.period == component.period {
                let own = self
                    .find_by_root_angle(&component.root_pair.0)
                    .ok_or_else(|| AtlasError::UnknownAngle(component.root_pair.0.clone()))?;
                chain.push(own);
            } else {
                chain.push(chain_component_at(component, entry.period, &self.components)?);
            }
        }
        Ok(chain)
    }

    pub fn save(&self, path: &Path) -> Result<(), AtlasError> {
        let mut file = std::fs::File::create(path)?;
        writeln!(file, "qlam-atlas v1 max_period={}", self.max_period)?;
        for c in &self.components {
            writeln!(file, "{}", component_record(c))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Atlas, AtlasError> {
        let file = std::fs::File::open(path)?;
        let mut lines = BufReader::new(file).lines().enumerate();
        let (_, header) = lines.next().ok_or(AtlasError::Parse {
            line: 1,
            message: "empty file".into(),
        })?;
        let header = header?;
        let max_period = header
            .strip_prefix("qlam-atlas v1 max_period=")
            .and_then(|s| s.parse().ok())
            .ok_or(AtlasError::Parse {
                line: 1,
                message: format!("bad header `{header}`"),
            })?;
        let mut components = Vec::new();
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            components.push(parse_component_record(&line).map_err(|message| {
                AtlasError::Parse { line: i + 1, message }
            })?);
        }
        let mut by_root_angle = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            by_root_angle.insert(c.root_pair.0.clone(), i);
            by_root_angle.insert(c.root_pair.1.clone(), i);
        }
        Ok(Atlas {
            max_period,
            components,
            by_root_angle,
        })
    }
}

/// One-line record for a component: stable field order, exact rationals.
pub fn component_record(c: &HyperbolicComponent) -> String {
    let rotation = match &c.rotation {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => "-".to_string(),
    };
    format!(
        "period={} root={},{} kind={} rotation={} address={}",
        c.period, c.root_pair.0, c.root_pair.1, c.kind, rotation, c.address
    )
}

fn parse_component_record(line: &str) -> Result<HyperbolicComponent, String> {
    let mut fields = BTreeMap::new();
    for part in line.split_whitespace() {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("bad field `{part}`"))?;
        fields.insert(k, v);
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| format!("missing field `{k}`"))
    };
    let period: u32 = get("period")?.parse().map_err(|e| format!("period: {e}"))?;
    let (a, b) = get("root")?
        .split_once(',')
        .ok_or_else(|| "root must be two angles".to_string())?;
    let root_pair = (
        a.parse::<Angle>().map_err(|e| e.to_string())?,
        b.parse::<Angle>().map_err(|e| e.to_string())?,
    );
    let kind: ComponentKind = get("kind")?.parse()?;
    let rotation = match get("rotation")? {
        "-" => None,
        s => {
            let (n, d) = s.split_once('/').ok_or_else(|| "bad rotation".to_string())?;
            Some(Ratio::new(
                n.parse::<u64>().map_err(|e| format!("rotation: {e}"))?,
                d.parse::<u64>().map_err(|e| format!("rotation: {e}"))?,
            ))
        }
    };
    let address: LabelledAddress = get("address")?.parse()?;
    Ok(HyperbolicComponent {
        period,
        root_pair,
        kind,
        rotation,
        address,
    })
}

/// The unique period-`period` component whose wake contains the root pair of
/// `of`, innermost when nested.
fn chain_component_at<'a>(
    of: &HyperbolicComponent,
    period: u32,
    components: &'a [HyperbolicComponent],
) -> Result<&'a HyperbolicComponent, AtlasError> {
    components
        .iter()
        .filter(|c| c.period == period && c.kind != ComponentKind::MainCardioid)
        .filter(|c| {
            c.wake()
                .map(|w| w.contains_open(&of.root_pair.0) && w.contains_open(&of.root_pair.1))
                .unwrap_or(false)
        })
        .min_by(|a, b| {
            let wa = a.wake().expect("filtered").length();
            let wb = b.wake().expect("filtered").length();
            wa.cmp(&wb)
        })
        .ok_or(AtlasError::MissingChainComponent {
            period,
            root: of.root_pair.0.clone(),
        })
}

/// Binary word of a periodic angle at the given period: the digits of
/// `theta * (2^period - 1)`, most significant first, padded to `period`.
fn binary_word(theta: &Angle, period: u32) -> Vec<bool> {
    let full = (BigUint::one() << period) - BigUint::one();
    let k = theta.num() * (&full / theta.den());
    (0..u64::from(period)).rev().map(|i| k.bit(i)).collect()
}

/// Douady tuning on external angles: substitute the host's root-angle words
/// for the binary digits of a period-`q` angle, yielding an angle of period
/// `q * host.period` inside the host's wake.
fn tune_angle(host: &HyperbolicComponent, theta: &Angle, q: u32) -> Angle {
    let m = host.period;
    let words = [
        binary_word(&host.root_pair.0, m),
        binary_word(&host.root_pair.1, m),
    ];
    let mut val = BigUint::ZERO;
    for bit in binary_word(theta, q) {
        for &b in &words[usize::from(bit)] {
            val = (val << 1u32) | BigUint::from(u8::from(b));
        }
    }
    let den = (BigUint::one() << (q * m)) - BigUint::one();
    Angle::from_big(val, den).expect("nonzero denominator")
}

/// Wake of the main cardioid's p/q satellite: the characteristic arc of the
/// unique period-q cycle on which doubling acts as rotation by p/q.
fn cardioid_limb_wake(rotation: Ratio<u64>) -> Option<DirectedArc> {
    let q = u32::try_from(*rotation.denom()).ok()?;
    for cycle in crate::portrait::cycles_of_period(q) {
        if let Ok(portrait) = OrbitPortrait::new(vec![cycle]) {
            if portrait.rotation_number().ok() == Some(rotation) {
                return portrait.characteristic_arc().ok();
            }
        }
    }
    None
}

/// The sublimb p/q of `parent` whose wake strictly contains `theta`; the
/// sublimb wakes are the cardioid limb wakes tuned by the parent's root pair.
fn sublimb_label(
    parent: &HyperbolicComponent,
    theta: &Angle,
    child_period: u32,
) -> Result<Ratio<u64>, AtlasError> {
    // A direct address successor of period n inside a p/q sublimb satisfies
    // n > (q - 1) * parent.period, so the search below always terminates
    // well before this generous cutoff.
    for q in 2..=child_period + 2 {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let rotation = Ratio::new(u64::from(p), u64::from(q));
            let Some(limb) = cardioid_limb_wake(rotation) else {
                continue;
            };
            let wake = if parent.kind == ComponentKind::MainCardioid {
                limb
            } else {
                DirectedArc::new(
                    tune_angle(parent, limb.start(), q),
                    tune_angle(parent, limb.end(), q),
                )?
            };
            if wake.contains_open(theta) {
                return Ok(rotation);
            }
        }
    }
    Err(AtlasError::SublimbNotFound {
        parent: parent.period,
        theta: theta.clone(),
    })
}

/// Labelled internal address of a component: the unlabelled address of its
/// root angle, with each arrow into a satellite step labelled by the step's
/// rotation number, and each arrow into a primitive step labelled by the
/// sublimb of the previous step containing it (omitted for half sublimbs,
/// where the numerator carries no information).
fn labelled_address_of(
    component: &HyperbolicComponent,
    components: &[HyperbolicComponent],
) -> Result<LabelledAddress, AtlasError> {
    let mut entries = vec![AddressEntry { period: 1, label: None }];
    if component.kind == ComponentKind::MainCardioid {
        return Ok(LabelledAddress { entries });
    }
    let periods = internal_address(&component.root_pair.0)?;
    let mut prev = &components[0];
    for &p in periods.iter().skip(1) {
        let step = if p == component.period {
            component
        } else {
            chain_component_at(component, p, components)?
        };
        let label = match step.kind {
            ComponentKind::Satellite => step.rotation,
            _ => {
                let rotation = sublimb_label(prev, &step.root_pair.0, p)?;
                (*rotation.denom() >= 3).then_some(rotation)
            }
        };
        entries.push(AddressEntry { period: p, label });
        prev = step;
    }
    Ok(LabelledAddress { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn periodic_angle_enumeration() {
        assert_eq!(enumerate_periodic_angles(2), vec![a("1/3"), a("2/3")]);
        assert_eq!(
            enumerate_periodic_angles(3),
            vec![a("1/7"), a("2/7"), a("3/7"), a("4/7"), a("5/7"), a("6/7")]
        );
        let p4 = enumerate_periodic_angles(4);
        assert_eq!(p4.len(), 12);
        assert!(p4.contains(&a("1/5")));
        assert!(p4.contains(&a("1/15")));
    }

    #[test]
    fn moebius_counts_match_enumeration() {
        for n in 1..=12 {
            assert_eq!(
                count_exact_period_angles(n),
                enumerate_periodic_angles(n).len() as u64,
                "period {n}"
            );
        }
    }

    #[test]
    fn lavaurs_pairing_small_periods() {
        let pairs = pair_root_angles(4).unwrap();
        assert_eq!(pairs[0], vec![(a("1/3"), a("2/3"))]);
        let mut p3 = pairs[1].clone();
        p3.sort();
        assert_eq!(
            p3,
            vec![
                (a("1/7"), a("2/7")),
                (a("3/7"), a("4/7")),
                (a("5/7"), a("6/7")),
            ]
        );
        assert_eq!(pairs[2].len(), 6);
        assert!(pairs[2].contains(&(a("1/15"), a("2/15"))));
        assert!(pairs[2].contains(&(a("3/15"), a("4/15"))));
    }

    #[test]
    fn internal_addresses() {
        assert_eq!(internal_address(&a("1/3")).unwrap(), vec![1, 2]);
        assert_eq!(internal_address(&a("3/7")).unwrap(), vec![1, 2, 3]);
        assert_eq!(internal_address(&a("1/7")).unwrap(), vec![1, 3]);
        assert!(internal_address(&a("0")).is_err());
        assert!(internal_address(&a("1/4")).is_err());
    }

    #[test]
    fn atlas_small_build() {
        let atlas = Atlas::build(3).unwrap();
        assert_eq!(atlas.components().len(), 5);
        let counts = atlas.per_period_counts();
        assert_eq!(counts[&1], 1);
        assert_eq!(counts[&2], 1);
        assert_eq!(counts[&3], 3);

        let basilica = atlas.find_by_root_angle(&a("1/3")).unwrap();
        assert_eq!(basilica.kind, ComponentKind::Satellite);
        assert_eq!(basilica.rotation, Some(Ratio::new(1, 2)));
        assert_eq!(basilica.address.to_string(), "1-(1/2)->2");

        let rabbit = atlas.find_by_root_angle(&a("1/7")).unwrap();
        assert_eq!(rabbit.address.to_string(), "1-(1/3)->3");

        let airplane = atlas.find_by_root_angle(&a("3/7")).unwrap();
        assert_eq!(airplane.kind, ComponentKind::Primitive);
        assert_eq!(airplane.address.to_string(), "1-(1/2)->2->3");
    }

    #[test]
    fn visibility() {
        let atlas = Atlas::build(4).unwrap();
        let basilica = atlas.find_by_root_angle(&a("1/3")).unwrap();
        let rabbit = atlas.find_by_root_angle(&a("1/7")).unwrap();
        let airplane = atlas.find_by_root_angle(&a("3/7")).unwrap();
        let seven15 = atlas.find_by_root_angle(&a("7/15")).unwrap();
        assert!(visible(basilica, seven15).unwrap());
        assert!(!visible(rabbit, airplane).unwrap());
        assert!(visible(basilica, airplane).unwrap());
    }

    #[test]
    fn wake_query() {
        let atlas = Atlas::build(4).unwrap();
        let inner = atlas.enclosing_component(&a("7/15")).unwrap();
        // 7/15 is a root angle; the period-4 wake excludes its own endpoints,
        // so the innermost strictly-enclosing wake is the airplane's.
        assert_eq!(inner.period, 3);
        let by_addr = atlas.find_by_address(&[1, 2, 3]);
        assert_eq!(by_addr.len(), 1);
        assert_eq!(by_addr[0].root_pair.0, a("3/7"));
    }

    #[test]
    fn save_load_round_trip() {
        let atlas = Atlas::build(5).unwrap();
        let dir = std::env::temp_dir().join("qlam-atlas-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("atlas5.txt");
        atlas.save(&path).unwrap();
        let loaded = Atlas::load(&path).unwrap();
        assert_eq!(loaded.max_period(), 5);
        assert_eq!(loaded.components(), atlas.components());
    }

    #[test]
    fn address_round_trip() {
        for s in ["1", "1-(1/2)->2", "1-(1/2)->2->3", "1-(2/3)->3-(1/2)->6"] {
            let addr: LabelledAddress = s.parse().unwrap();
            assert_eq!(addr.to_string(), s);
        }
    }

    #[test]
    fn wakes_nested_or_disjoint() {
        let atlas = Atlas::build(5).unwrap();
        let comps: Vec<_> = atlas
            .components()
            .iter()
            .filter(|c| c.kind != ComponentKind::MainCardioid)
            .collect();
        for (i, c1) in comps.iter().enumerate() {
            for c2 in comps.iter().skip(i + 1) {
                let w1 = c1.wake().unwrap();
                let w2 = c2.wake().unwrap();
                let in1 = [w2.start(), w2.end()]
                    .iter()
                    .filter(|x| w1.contains_open(x))
                    .count();
                let in2 = [w1.start(), w1.end()]
                    .iter()
                    .filter(|x| w2.contains_open(x))
                    .count();
                // Either disjoint (0/0) or strictly nested (2 on one side).
                assert!(
                    (in1 == 0 && in2 == 0) || in1 == 2 || in2 == 2,
                    "{} vs {}",
                    component_record(c1),
                    component_record(c2)
                );
            }
        }
    }
}
