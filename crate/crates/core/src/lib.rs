//! Curve calculus on punctured spheres and connectivity certification for
//! finite slices of their curve graphs.

pub mod geom;
pub mod model;
pub mod diagram;
pub mod isect;
pub mod extract;
pub mod curve;
pub mod pl;
pub mod mcg;
