//! Finite abelian groups `(Z/f)^x` and their quotients, group rings over
//! pluggable coefficient rings, Dirichlet characters, idempotents and the
//! cyclotomic twists `tw_a`.

mod character;
mod group;
mod ops;
mod ring;

pub use character::{characters, DirichletCharacter, Parity};
#[allow(unused_imports)]
pub(crate) use character::characters_at_level;
pub use group::{unit_group, FiniteAbelianGroup, GroupKind};
pub use ops::{
    cyclotomic_character, parity_idempotent, parity_idempotent_mod, project, project_to_modulus,
    push_forward, twist,
};
pub use ring::{
    Coefficient, ComplexGroupRing, CyclotomicGroupRing, GroupRingElement, RationalGroupRing,
    Residue, ResidueGroupRing, ResidueRing, RingElement, RingTag,
};
