//! Unit groups of coefficient rings, the subgroup `N`, and multiparameter
//! independence in `R*/N`.

pub mod intmat;
mod lattice;
mod log;

pub use lattice::{Certificate, Independence, NLattice, UnitGroup, DEFAULT_PRIME_BOUND};
pub use log::{discrete_log, primitive_root, refine, torsion_order, unit_log, LogAtom, UnitLog};
