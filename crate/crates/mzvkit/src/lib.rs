//! Exact computer algebra for the depth-graded double shuffle equations.
//!
//! The crate constructs and verifies, in exact rational arithmetic:
//!
//! - the linearized Ihara action and bracket on words and on sparse
//!   rational-function representations ([`ihara`]),
//! - canonical zeta elements in depths up to four and the explicit
//!   rational associator in depths up to three ([`canonical`]),
//! - the geometric derivations of the elliptic Lie algebra, the morphism
//!   from the genus-zero side, and the lifting theorems ([`elliptic`]),
//! - period-polynomial spaces, the kernel of the depth-2 bracket and the
//!   cuspidal depth-4 elements ([`modforms`]),
//! - defect computations for every flavor of the double shuffle equations
//!   together with dimension tables ([`dshuffle`]).
//!
//! Every identity checked here is exact: there is no floating point
//! anywhere, and all verification routines return residuals that are
//! required to vanish identically.
//!
//! The `examples/` directory contains one runnable walk-through per major
//! capability; the thin `mzvkit` binary exposes the same functionality as
//! subcommands with JSON output.

pub mod rat;
pub mod words;
pub mod poly;
pub mod linalg;
pub mod ihara;
pub mod dshuffle;
pub mod canonical;
pub mod elliptic;
pub mod modforms;
pub mod cli;
