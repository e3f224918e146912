//! Diversity and degrees of freedom of multi-antenna relay networks.

pub mod cli;
pub mod cuts;
pub mod galois;
pub mod model;
pub mod outage;
pub mod random;
pub mod relay;
pub mod rng;
