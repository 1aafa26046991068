pub mod boolean;
pub mod catalog;
pub mod cli;
pub mod ergodic;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod symbolic;
pub mod word;
