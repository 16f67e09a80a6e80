//! Numerical laboratory for composition operators `C_φ f = f∘φ` on Paley–Wiener spaces.
//!
//! Elements of `PW_a` are stored by their samples on the node grid `πn/a` (see
//! [`function::PwFunction`]); symbols are the admissible affine maps `φ(z) = cz + d`,
//! `c` real, `0 < |c| ≤ 1`. Every operator quantity has two routes: the sampling picture
//! in `function`/`spectral`, and the weighted composition picture on `L²[−a, a]` in
//! [`equivalence`].

pub mod dynamics;
pub mod equivalence;
pub mod error;
pub mod function;
pub mod io;
pub mod kernel;
pub mod random;
pub mod spectral;
pub mod symbol;
pub mod verify;

pub use error::{PwError, Result};
pub use function::{PwFunction, Window};
pub use kernel::KernelPoint;
pub use symbol::{AffineSymbol, Bandwidth};

pub use num_complex::Complex64;
