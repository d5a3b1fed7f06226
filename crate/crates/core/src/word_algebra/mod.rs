//! Words, noncommutative polynomials and their shuffle-type products.

pub mod coeff;
pub mod constructions;
pub mod ncpoly;
pub mod products;
pub mod word;

pub use coeff::GaussianRational;
pub use constructions::{
    broadhurst_series_words, insertion_composition, phi_insertion, s_word_set, t_word_sum,
    ZSeries,
};
pub use ncpoly::NcPoly;
pub use products::{
    eta_shift, forget_shifts, qshuffle, qshuffle_poly, shuffle, shuffle_compositions,
    shuffle_poly, shuffle_right_recursive, stuffle, CompositionMultiset,
};
pub use word::{
    composition_to_word, dual_composition, word_to_composition, Composition, Letter, Word,
};
