//! Convex bodies, continuous sections of restricted linear maps, and
//! numerical tests of the locally nonconical property.

pub mod bodies;
pub mod config;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod lnc;
pub mod sections;
pub mod solvers;

pub use bodies::{Body, Membership};
pub use config::ToolConfig;
pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix, Vector};
