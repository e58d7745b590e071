//! The fixed-point process `X_n` (number of level-`n` vertices fixed by a
//! Haar-random element) and the fixed-point proportion
//! `FPP(G) = lim μ(X_n ≥ 1)`: exact tables on enumerated quotients, closed
//! forms for `Aut(T)` and the dihedral family, and Monte-Carlo estimates.

mod closed_form;
mod monte_carlo;
mod table;

pub use closed_form::{aut_tree_fpp, derangements, dihedral_fpp_closed_form, AutTreeSequence, AUT_TREE_EXACT_BITS};
pub use monte_carlo::{
    monte_carlo_fpp, random_word_fpp_heuristic, wilson_interval, FppEstimate, SampleSource, HEURISTIC_WARNING,
    Z_99,
};
pub use table::{
    HistogramBin,
    fixed_point_table, martingale_fiber_check, FiberMean, FixedPointLevel, FixedPointTable, MartingaleReport,
};
