/// Limits on exhaustive work.
///
/// `enumeration` bounds both `q^(n²)` for scans of the full matrix space and
/// `|GL_n| · |G|` for orbit enumeration; `fixed_point_slots` bounds the total
/// dimension of the free row spaces handed to the generic fixed-point
/// counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub enumeration: u64,
    pub fixed_point_slots: usize,
}

impl Budget {
    pub const DEFAULT_ENUMERATION: u64 = 1 << 32;
    pub const DEFAULT_SLOTS: usize = 16;
    pub const ENV_VAR: &'static str = "EVOCOUNT_BUDGET";

    pub fn with_enumeration(enumeration: u64) -> Self {
        Budget {
            enumeration,
            ..Budget::default()
        }
    }

    /// Default budget, with the enumeration limit overridden by
    /// `EVOCOUNT_BUDGET` when that variable holds an integer.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::with_enumeration)
            .unwrap_or_default()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: Self::DEFAULT_ENUMERATION,
            fixed_point_slots: Self::DEFAULT_SLOTS,
        }
    }
}
