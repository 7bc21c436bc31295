pub mod catalog;
pub mod charpoly;
pub mod ddg;
pub mod designs;
pub mod field;
pub mod graphs;
pub mod matrix;
pub mod symplectic;
