//! Verification of congruences between theta elements: Kummer, the
//! minus-part twist congruence, twists of `delta_T` and Euler factors,
//! p-integrality, and grid sweeps over all of them.

mod checks;
mod report;
mod sweep;

pub use checks::{
    integrality_from, minus_congruence_from, reduce_mod, verify_delta_twist, verify_integrality,
    verify_kummer, verify_minus_congruence,
};
pub use report::{CheckKind, CongruenceReport, Status, Summary, Witness};
pub use sweep::{sweep, CheckSelection, FaultInjection, GridSpec, TPolicy};
