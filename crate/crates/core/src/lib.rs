pub mod groebner;
pub mod linalg;
pub mod path;
pub mod quiver;
pub mod potential;
pub mod coxeter;
pub mod findim;
pub mod mesh;
pub mod pipeline;
