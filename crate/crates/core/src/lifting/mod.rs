//! Lifting problems against generating families of inclusions: the solver,
//! right-lifting-property reports, fibrancy checks, and bounded cell
//! attachment for factorizations.

mod checks;
mod factor;
mod families;
mod solve;

pub use checks::{
    is_complete_semi_segal, is_inner_fibration, is_inner_kan, is_kan, is_left_fibration,
    is_marked_inner_fibration, is_marked_inner_kan, is_marked_left_fibration,
    is_marked_right_fibration, is_right_fibration, is_trivial_fibration, MarkedInnerKanReport,
};
pub use factor::{attach_cells, bounded_factorization, AttachOutcome, Attachment, FactorRound, Factorization};
pub use families::{Family, Generator};
pub use solve::{
    has_rlp, has_rlp_object, is_orthogonal, is_orthogonal_object, solve_lift, LiftFailure,
    LiftReport, LiftSolution, LiftingProblem,
};
