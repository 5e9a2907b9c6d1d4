pub mod error;
pub mod ring;
pub mod mat;
pub mod base;
pub mod serialmod;
pub mod quiver;
pub mod rep;
pub mod enumerate;
pub mod io;
pub mod suite;
