//! Companion profiles, pattern class tables, the general counting engine and
//! the closed-form mountain ranges of satellites.

mod profile;
mod ranges;
mod render;
mod table;

pub use profile::{valleys, Flags, KnotProfile, ValleyData};
pub use ranges::{
    count_general, range_cable, range_two_braid_satellite, range_whitehead_double, transverse_braid_satellite,
    transverse_whitehead_double, transverse_whitehead_value, whitehead_double_count, whitehead_ray_limit,
    MountainRange, RangeKind, DEFAULT_DEPTH,
};
pub use render::render;
pub use table::{pattern_table, satellite_table, ClassTable, PatternTable};
