/// Caps and knobs for the analysis pipeline.
///
/// The defaults cover every bundled fixture; raise them for larger inputs at
/// your own expense.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Largest group order for which subgroup classes are enumerated.
    pub subgroup_order_cap: u128,
    /// Largest group order for which elements are listed explicitly
    /// (normalizers, transporters, fingerprints, element-order scans).
    pub element_cap: u128,
    /// k-arc transitivity search stops here; larger values are reported as
    /// lower bounds.
    pub k_arc_cap: u32,
    /// Budget on the number of k-arcs enumerated before giving up.
    pub k_arc_budget: usize,
    /// Largest number of flags (cosets of the Borel subgroup) a Levi graph
    /// construction may enumerate.
    pub flag_cap: u128,
    /// Override for the base edge used by the ten-question analysis.
    pub seed_edge_override: Option<(usize, usize)>,
    /// Require dualities to normalize the subgroup at hand (the tables use
    /// the normalizing variant; set to false to accept any duality).
    pub duality_normalizes: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            subgroup_order_cap: 5_000,
            element_cap: 20_000,
            k_arc_cap: 8,
            k_arc_budget: 200_000,
            flag_cap: 200_000,
            seed_edge_override: None,
            duality_normalizes: true,
        }
    }
}
