//! Exact combinatorial invariants of quadratic polynomial laminations.
//!
//! The crate computes, with exact rational arithmetic throughout:
//!
//! * angle dynamics under doubling on the circle ([`angle`]);
//! * orbit portraits, their arcs, rotation numbers, and rotation rigidity
//!   ([`portrait`]);
//! * the atlas of hyperbolic components of the Mandelbrot set up to a period
//!   bound, with wakes and labelled internal addresses ([`atlas`]);
//! * the truncated dyadic solenoid with its group law, adding machine, and
//!   affine normal forms ([`solenoid`]);
//! * unbounded-Fatou-component counts per periodic leaf and the separating
//!   invariant bundles ([`leaf`]);
//! * SVG diagrams of portraits and wakes ([`render`]).

pub mod angle;
pub mod atlas;
pub mod leaf;
pub mod portrait;
pub mod render;
pub mod solenoid;

pub use angle::{Angle, DirectedArc, KneadingSequence};
pub use atlas::{Atlas, HyperbolicComponent, LabelledAddress};
pub use leaf::{InvariantBundle, LeafCycleRecord};
pub use portrait::{OrbitPortrait, PortraitKind};
pub use solenoid::{AffineSolenoidMap, SolenoidPoint};
