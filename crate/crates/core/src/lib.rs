pub mod algebra;
pub mod cli;
pub mod complex;
pub mod diagram;
pub mod doubles;
pub mod exact;
pub mod hopf;
pub mod invariant;
