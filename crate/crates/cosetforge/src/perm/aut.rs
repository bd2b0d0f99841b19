use super::PermGroup;
use crate::graph::{canonical_form, ColoredBipartiteGraph};

/// Which automorphisms to collect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutMode {
    /// Every automorphism of the underlying graph.
    Full,
    /// Automorphisms preserving the partition into classes, possibly
    /// swapping them.
    ColorRespecting,
    /// Automorphisms fixing each class setwise.
    ColorPreserving,
}

/// Automorphism group via partition-refinement backtracking. For connected
/// bipartite graphs `Full` and `ColorRespecting` coincide.
pub fn automorphism_group(g: &ColoredBipartiteGraph, mode: AutMode) -> PermGroup {
    let n = g.n();
    match mode {
        AutMode::Full => {
            let res = canonical_form(g.graph(), &[(0..n).collect()]);
            PermGroup::from_generators_reduced(n, &res.automorphisms).expect("degrees match")
        }
        AutMode::ColorPreserving => {
            let res = canonical_form(g.graph(), &[g.black_vertices(), g.white_vertices()]);
            PermGroup::from_generators_reduced(n, &res.automorphisms).expect("degrees match")
        }
        AutMode::ColorRespecting => {
            let res = canonical_form(g.graph(), &[g.black_vertices(), g.white_vertices()]);
            let mut gens = res.automorphisms;
            if let Some(d) = crate::graph::canon_find_duality(g) {
                gens.push(d);
            }
            PermGroup::from_generators_reduced(n, &gens).expect("degrees match")
        }
    }
}
