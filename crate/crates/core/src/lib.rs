pub mod cli;
pub mod exactla;
pub mod geometry;
pub mod hodge;
pub mod jacobian;
pub mod koszul;
pub mod milnor;
pub mod poly;
