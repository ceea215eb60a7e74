pub mod group;
pub mod cyclotomic;
pub mod matrix;
pub mod character;
pub mod marks;
pub mod coefficients;
pub mod complex;
pub mod homology;
pub mod gcw;
pub mod datasets;
pub mod theorems;
pub mod random;
pub mod ahss;
