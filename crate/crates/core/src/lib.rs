pub mod bertini;
pub mod bounds;
pub mod campaign;
pub mod cli;
pub mod counting;
pub mod factor;
pub mod gf;
pub mod linalg;
pub mod mpoly;
pub mod project;
pub mod upoly;
