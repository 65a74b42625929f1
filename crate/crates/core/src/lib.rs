pub mod cli;
pub mod cocycle;
pub mod convolution;
pub mod cyclotomic;
pub mod datum;
pub mod error;
pub mod freehopf;
pub mod lin;
pub mod linalg;
pub mod presented;
pub mod rational;
