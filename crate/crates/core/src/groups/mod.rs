//! Matrix groups `UT_n(F_p)`, `T_n(F_p)` and their pattern subgroups, the
//! nilpotent algebras `J` and duals `J*`, and orbit computations on them.

pub mod forms;
pub mod group;
pub mod matrix;
pub mod orbits;
pub mod superclasses;

pub use forms::{kernel_basis, LinearForm, RightStabilizer};
pub use group::{GroupKind, Limits, MatrixGroup, DEFAULT_SIZE_CAP};
pub use matrix::{upper_positions, Coordinates, Matrix};
pub use orbits::{Action, Ambient, Orbit, OrbitDecomposition};
pub use superclasses::{
    classify_regular, dual_two_sided_orbits, rho_orbits, superclasses_triangular, superclasses_ut,
    triangular_class_labels, two_sided_orbits, DualOrbit, Idempotent, Regularity, TriClassLabel,
};
