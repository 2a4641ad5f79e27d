//! CR maps between hyperquadrics and Winkelmann hypersurfaces: mapping
//! equations, Ahlfors tensors, automorphisms, Möbius checks and Kähler geometry.

pub mod ahlfors;
pub mod automorphism;
pub mod catalog;
pub mod error;
pub mod hypersurface;
pub mod kahler;
pub mod maps;
pub mod mobius;
pub mod sampling;

pub use error::{CrError, Result};
pub use hypersurface::{Hypersurface, Kind, SurfacePoint};
pub use maps::{AnyFn, Components, HoloMap, QuotientResult, Side};
