//! Enumeration budgets for the exhaustive components.

/// Caps bounding exhaustive enumeration. All searches in this crate are
/// exponential by design; the caps keep them at desk scale and turn anything
/// bigger into an explicit resource error instead of a hang.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest ground set whose subpartitions are enumerated.
    pub subpartition_ground: usize,
    /// Largest ground set for explicit set-function tables.
    pub table_ground: usize,
    /// Largest matroid ground set for explicit rank tables and profile search.
    pub matroid_ground: usize,
    /// Largest vertex count for the brute-force packing oracle.
    pub oracle_n: usize,
    /// Largest edge count (hyperedges plus dyperedges) for the oracle.
    pub oracle_edges: usize,
    /// Largest product of tail-set sizes tried when trimming one member.
    pub trim_product: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subpartition_ground: 10,
            table_ground: 16,
            matroid_ground: 16,
            oracle_n: 5,
            oracle_edges: 8,
            trim_product: 1 << 16,
        }
    }
}

impl Caps {
    /// Default caps, with the subpartition cap overridable through the
    /// `ARBOPACK_CAP` environment variable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("ARBOPACK_CAP") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps.subpartition_ground = n;
            }
        }
        caps
    }
}
