//! Random simplicial complexes under the multi-parameter measure `P_{r,p}`:
//! exact probabilities, seeded sampling, parameter laws for links and
//! intersections, topology checks and a small experiment lab.

mod bits;
pub mod complex;
pub mod measure;
pub mod rng;
pub mod sampler;
pub mod params;
pub mod topology;
pub mod lab;
