//! Randomized vanishing test for Schubert structure constants of the
//! classical types.

pub mod cli;
pub mod decide;
pub mod exactla;
pub mod generic;
pub mod oracle;
pub mod rootsys;
pub mod weyl;

pub use decide::{
    lr_vanishing, replay, vanishing, Arithmetic, DecideError, Decision, Instance, Method, Options,
    PartitionTriple, Verdict, Witness,
};
pub use exactla::{IntMatrix, LinalgError};
pub use rootsys::{Root, RootError, RootSystemData};
pub use weyl::{LieType, WeylElement, WeylError};
