pub mod characters;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod geometry;
pub mod group;
pub mod orbits;
pub mod superchars;
pub mod verify;

pub use characters::{CharCombination, LinChar};
pub use cyclo::{ClassFunction, CycInt, CycRat, Cyclotomic, GroupTable};
pub use error::{Error, Result};
pub use field::{Fe, GaloisField};
pub use geometry::{Family, LieType, Pos, Region};
pub use group::{Mat, Sylow};
pub use orbits::{Conditions, LimbData, Orbit};
