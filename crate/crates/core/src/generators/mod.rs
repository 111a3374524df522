//! Instance generators: the hardness constructions as concrete
//! transformations, plus seeded random families.

mod random;
mod reductions;

pub use random::{gen_random, Family, RandomSpec};
pub use reductions::{
    gen_complete_reduction, gen_gap_reduction, gen_split_reduction, gen_subdivision,
    gen_vc_reduction, GapInstance, TripartiteGraph,
};
