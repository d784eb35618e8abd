pub mod linalg;
pub mod algebra;
pub mod bimodule;
pub mod depth_two;
pub mod bialgebroid;
pub mod galois;
pub mod input;
pub mod report;
pub mod scan;
