//! Computable pieces of the theory of bundle gerbes over compact simple Lie
//! groups: exact root and alcove data, a discrete Čech–Deligne cochain
//! engine, surface holonomy, finite group cohomology, and numerical checks of
//! the differential-form identities on SU(2) and SU(3).

pub mod deligne;
pub mod cli;
pub mod error;
pub mod grpcoh;
pub mod holonomy;
pub mod io;
pub mod lienum;
pub mod report;
pub mod rootsys;
pub mod snf;

pub use error::{Error, Result};
