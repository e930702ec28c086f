use crate::field::DEFAULT_MAX_ORDER;

/// Size guards shared by every enumeration. All are configurable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest Grassmannian (predicted point count) that may be enumerated.
    pub max_points: u64,
    /// Largest field order `p^m` that may be constructed.
    pub max_field_order: u64,
    /// Largest number of torus elements tried per stabilizer check.
    pub max_torus_loop: u64,
    /// Largest number of linear factors in a Moore product.
    pub max_moore_factors: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 4_000_000,
            max_field_order: DEFAULT_MAX_ORDER,
            max_torus_loop: 1_000_000,
            max_moore_factors: 1 << 20,
        }
    }
}
