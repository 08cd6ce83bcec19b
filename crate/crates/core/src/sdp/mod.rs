pub mod blocks;
pub mod orbit;
pub mod poly;
pub mod problem;
pub mod sdpa;
pub mod solver;
pub mod theta;
