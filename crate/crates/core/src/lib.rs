pub mod braid;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod markov;
pub mod ring;
pub mod twisting;
pub mod verify;

pub use braid::BraidWord;
pub use diagram::{Crossing, UprightDiagram};
pub use error::{Error, Result};
pub use invariants::{KnotInvariants, Positivity, ZPoly};
pub use markov::{Multicycle, Region, TangleChain};
pub use ring::{LaurentPoly, Matrix, PolyMatrix, RatFun, RatMatrix, TruncatedSeries};
pub use twisting::{GrowthReport, TwistedFamily};
