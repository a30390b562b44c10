//! Homological algebra over GF(2) on the lattice of subspaces of `F2^n`.
//!
//! The crate builds Steinberg modules and Lusztig complexes, derived limits
//! of functors on subspace posets (two independent ways), explicit
//! projective and injective resolutions, and the degree-by-degree derived
//! finite parts `M(V;h)` of ideals generated by powers of the product of all
//! nonzero linear forms.
//!
//! Runnable tours live in `examples/`:
//!
//! ```text
//! cargo run --example steinberg_dims
//! cargo run --example lusztig_complexes
//! cargo run --example derived_limits
//! cargo run --example resolutions
//! cargo run --example ext_and_bridge
//! cargo run --example steenrod_squares
//! cargo run --example finite_part
//! cargo run --example steinberg_dual
//! ```

pub mod error;
pub mod gf2;
pub mod functor;
pub mod subspace;
pub mod cache;
pub mod steinberg;
pub mod resolutions;
pub mod steenrod;
pub mod pf;
pub mod cli;

pub use error::{Error, Result};
