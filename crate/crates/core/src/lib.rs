pub mod arith;
pub mod chartable;
pub mod classfun;
pub mod cuspform;
pub mod cyclotomic;
pub mod error;
pub mod group;

pub use chartable::{CharacterTable, IrrLabel, Irreducible};
pub use classfun::ClassFunction;
pub use cyclotomic::{Cyc, CycBuilder, Rational};
pub use error::{Error, Result};
pub use group::{GroupElement, Sl2Group, TorusType};
