//! Exact integer and rational combinatorics.

pub mod counts;
pub mod dimensions;
pub mod partitions;
pub mod sequences;

pub use counts::{
    binomial, compositions_enum, lattice_count, stuffle_count, stuffle_count_closed_a,
    stuffle_count_closed_b, stuffle_count_recursive,
};
pub use dimensions::{dimension_exponents, DimensionTarget, ExponentTable};
pub use partitions::{partitions_calpha, tau_brute_force, tau_factorizations, Partition};
pub use sequences::{bernoulli, nonpositive_limit, stirling1, stirling2, LimitOrder};
