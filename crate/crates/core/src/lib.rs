pub mod budget;
pub mod datafit;
pub mod estimate;
pub mod groebner;
pub mod interval;
pub mod isolate;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod prolong;
pub mod rur;
pub mod univariate;
