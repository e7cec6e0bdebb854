//! Products on total cohomology, the simplicial cup-product oracle, and ring models of
//! polyhedral products and compositions.

pub mod aw;
pub mod engine;
pub mod families;
pub mod linalg;
pub mod local;
pub mod models;
pub mod polygon;
pub mod table;
