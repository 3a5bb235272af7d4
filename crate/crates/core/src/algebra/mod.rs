//! Relativized transposition set algebras `℘(D)` for `D ⊆ ^n u`.

mod carrier;
mod elem;
mod product;
mod relativize;
mod small;
mod subalgebra;
mod subst;

pub use carrier::{Carrier, CarrierId};
pub use elem::Elem;
pub use product::{Product, ProductElem};
pub use relativize::{canonicalize_base, relativize, BaseRenaming, Rebase, Relativization};
pub use small::SmallAlgebra;
pub use subalgebra::{generate_subalgebra, generate_subalgebra_capped, subalgebra_atoms};
pub use subst::SubstMap;
