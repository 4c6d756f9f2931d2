//! Classical group data: the signed index set, the involution `†`, positive
//! roots, the Levi factor, the Cayley map and the parabolic subgroup `G = LU`.

mod levi;
mod matrix;
mod parabolic;
mod roots;
mod spec;
mod springer;

pub use levi::{enumerate_levi, general_linear};
pub use matrix::SignedMatrix;
pub use parabolic::{GElem, Parabolic, SubgroupTag};
pub use roots::{root_system, Root};
pub use spec::{Family, GroupSpec, Segment};
pub use springer::{springer_inv, springer_map};
