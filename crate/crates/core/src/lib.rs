pub mod accum;
pub mod charcore;
pub mod error;
pub mod experiment;
pub mod fft;
pub mod lowerbound;
pub mod maxsearch;
pub mod plot;
pub mod prescribe;
pub mod randmodels;
pub mod sums;
pub mod weil;
