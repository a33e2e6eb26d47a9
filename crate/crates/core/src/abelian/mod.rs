//! Finitely generated abelian groups, boundary slopes and projective intervals.

mod group;
mod slope;
mod snf;

pub use group::{FinAbGroup, GroupElement};
pub use slope::{
    apply_gluing_interval, apply_gluing_slope, dot, fmt_rat, intersects, pairing_and_label,
    same_points, sample_points, union_covers, GluingMatrix, ProjInterval, Slope,
};
pub(crate) use slope::{ceil_div, floor_div};
pub use snf::{smith_normal_form, Quotient, Snf};
