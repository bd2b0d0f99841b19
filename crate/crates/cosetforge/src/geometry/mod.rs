//! Coset geometries, Levi graphs (both directions), core-freeness,
//! stability, duality, and edge-transitivity classification.

pub mod fixtures;
mod format;

pub use format::{parse_geometry, write_geometry};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::graph::{canon_find_duality, Color, ColoredBipartiteGraph, SimpleGraph};
use crate::perm::{
    automorphism_group, closure, core_in, AutMode, PermGroup, Permutation,
};
use serde::Serialize;
use std::collections::HashMap;

/// A rank-two coset geometry: a group with two distinguished subgroups whose
/// intersection is the Borel subgroup (the flag stabilizer).
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    group: PermGroup,
    sub0: PermGroup,
    sub1: PermGroup,
    borel: PermGroup,
}

impl CosetGeometry {
    /// Builds the geometry, computing the Borel subgroup by filtering the
    /// smaller subgroup's elements through the other's membership test.
    pub fn new(
        group: PermGroup,
        sub0: PermGroup,
        sub1: PermGroup,
        element_cap: u128,
    ) -> Result<Self> {
        check_subgroup(&group, &sub0, "sub0")?;
        check_subgroup(&group, &sub1, "sub1")?;
        let (small, large) = if sub0.order() <= sub1.order() {
            (&sub0, &sub1)
        } else {
            (&sub1, &sub0)
        };
        let members: Vec<Permutation> = small
            .elements(element_cap)?
            .into_iter()
            .filter(|e| large.member(e))
            .collect();
        let borel = PermGroup::from_generators_reduced(group.degree(), &members)?;
        Ok(CosetGeometry {
            group,
            sub0,
            sub1,
            borel,
        })
    }

    /// Builds the geometry with a precomputed Borel subgroup. The caller
    /// guarantees `borel = sub0 ∩ sub1`.
    pub fn with_borel(
        group: PermGroup,
        sub0: PermGroup,
        sub1: PermGroup,
        borel: PermGroup,
    ) -> Result<Self> {
        check_subgroup(&group, &sub0, "sub0")?;
        check_subgroup(&group, &sub1, "sub1")?;
        check_subgroup(&sub0, &borel, "borel in sub0")?;
        check_subgroup(&sub1, &borel, "borel in sub1")?;
        Ok(CosetGeometry {
            group,
            sub0,
            sub1,
            borel,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn sub0(&self) -> &PermGroup {
        &self.sub0
    }

    pub fn sub1(&self) -> &PermGroup {
        &self.sub1
    }

    pub fn borel(&self) -> &PermGroup {
        &self.borel
    }

    /// The dual geometry: points and lines exchanged.
    pub fn dual(&self) -> CosetGeometry {
        CosetGeometry {
            group: self.group.clone(),
            sub0: self.sub1.clone(),
            sub1: self.sub0.clone(),
            borel: self.borel.clone(),
        }
    }
}

fn check_subgroup(group: &PermGroup, sub: &PermGroup, what: &str) -> Result<()> {
    if sub.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            got: sub.degree(),
        });
    }
    if !group.has_subgroup(sub) {
        return Err(Error::NotSubgroup(format!("{what} is not inside the group")));
    }
    Ok(())
}

/// Builds a coset geometry from a group and two generator lists.
pub fn make_coset_geometry(
    group: &PermGroup,
    gens0: &[Permutation],
    gens1: &[Permutation],
    config: &RunConfig,
) -> Result<CosetGeometry> {
    let sub0 = PermGroup::from_generators(group.degree(), gens0)?;
    let sub1 = PermGroup::from_generators(group.degree(), gens1)?;
    CosetGeometry::new(group.clone(), sub0, sub1, config.element_cap)
}

/// A Levi graph together with the coset labeling that produced it.
///
/// Black vertices are left cosets of `sub0`, white vertices left cosets of
/// `sub1`, flags left cosets of the Borel subgroup; the edge of flag `cB` is
/// `(cG0, cG1)`. Cosets are represented by their lexicographically least
/// element, so the construction is reproducible byte for byte.
#[derive(Clone, Debug)]
pub struct LeviBuild {
    pub graph: ColoredBipartiteGraph,
    /// One label per vertex: the coset representative in cycle notation.
    pub labels: Vec<String>,
    black_reps: Vec<Permutation>,
    white_reps: Vec<Permutation>,
    black_index: HashMap<Permutation, usize>,
    white_index: HashMap<Permutation, usize>,
    g0_elements: Vec<Permutation>,
    g1_elements: Vec<Permutation>,
}

impl LeviBuild {
    /// The vertex for the coset `e·G0`.
    pub fn base_black_vertex(&self) -> usize {
        let id = Permutation::identity(self.g0_elements[0].degree());
        self.black_index[&coset_min(&id, &self.g0_elements)]
    }

    /// The vertex for the coset `e·G1`.
    pub fn base_white_vertex(&self) -> usize {
        let id = Permutation::identity(self.g1_elements[0].degree());
        self.black_reps.len() + self.white_index[&coset_min(&id, &self.g1_elements)]
    }

    /// The permutation `g` induces on the Levi graph's vertices.
    pub fn vertex_action(&self, g: &Permutation) -> Permutation {
        let nb = self.black_reps.len();
        let mut images = Vec::with_capacity(nb + self.white_reps.len());
        for rep in &self.black_reps {
            images.push(self.black_index[&coset_min(&g.compose(rep), &self.g0_elements)]);
        }
        for rep in &self.white_reps {
            images.push(nb + self.white_index[&coset_min(&g.compose(rep), &self.g1_elements)]);
        }
        Permutation::from_images(images).expect("group elements act bijectively on cosets")
    }
}

/// Least element of the left coset `x·H`, given `H`'s elements.
fn coset_min(x: &Permutation, h_elements: &[Permutation]) -> Permutation {
    h_elements
        .iter()
        .map(|e| x.compose(e))
        .min()
        .expect("subgroup is nonempty")
}

/// Builds the Levi graph of a coset geometry by walking flag cosets.
pub fn levi_graph(geom: &CosetGeometry, config: &RunConfig) -> Result<LeviBuild> {
    let group = geom.group();
    if !group.order_exact() {
        return Err(Error::CapExceeded {
            what: "group order",
            value: group.order(),
            cap: config.flag_cap,
        });
    }
    let flag_count = group.order() / geom.borel().order();
    if flag_count > config.flag_cap {
        return Err(Error::CapExceeded {
            what: "flag count",
            value: flag_count,
            cap: config.flag_cap,
        });
    }
    let b_elems = geom.borel().elements(config.element_cap)?;
    let g0_elements = geom.sub0().elements(config.element_cap)?;
    let g1_elements = geom.sub1().elements(config.element_cap)?;

    // Flag cosets by BFS over left multiplication.
    let start = coset_min(&Permutation::identity(group.degree()), &b_elems);
    let mut flag_seen: HashMap<Permutation, ()> = HashMap::new();
    flag_seen.insert(start.clone(), ());
    let mut flags = vec![start];
    let mut head = 0;
    while head < flags.len() {
        let rep = flags[head].clone();
        head += 1;
        for gen in group.generators() {
            let next = coset_min(&gen.compose(&rep), &b_elems);
            if !flag_seen.contains_key(&next) {
                flag_seen.insert(next.clone(), ());
                flags.push(next);
            }
        }
    }
    // Left multiplication is transitive on cosets, so the walk finds every
    // flag even when the geometry itself is disconnected.
    debug_assert_eq!(flags.len() as u128, flag_count);

    let mut black_set: HashMap<Permutation, ()> = HashMap::new();
    let mut white_set: HashMap<Permutation, ()> = HashMap::new();
    let mut incidences = Vec::with_capacity(flags.len());
    for rep in &flags {
        let b = coset_min(rep, &g0_elements);
        let w = coset_min(rep, &g1_elements);
        black_set.insert(b.clone(), ());
        white_set.insert(w.clone(), ());
        incidences.push((b, w));
    }
    let mut black_reps: Vec<Permutation> = black_set.into_keys().collect();
    black_reps.sort_unstable();
    let mut white_reps: Vec<Permutation> = white_set.into_keys().collect();
    white_reps.sort_unstable();
    let black_index: HashMap<Permutation, usize> = black_reps
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let white_index: HashMap<Permutation, usize> = white_reps
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let nb = black_reps.len();
    let edges: Vec<(usize, usize)> = incidences
        .iter()
        .map(|(b, w)| (black_index[b], nb + white_index[w]))
        .collect();
    let graph = SimpleGraph::from_edges(nb + white_reps.len(), &edges)?;
    let colors: Vec<Color> = (0..graph.n())
        .map(|v| if v < nb { Color::Black } else { Color::White })
        .collect();
    let graph = ColoredBipartiteGraph::new(graph, colors, None)?;
    let labels: Vec<String> = black_reps
        .iter()
        .chain(&white_reps)
        .map(|r| r.to_string())
        .collect();
    Ok(LeviBuild {
        graph,
        labels,
        black_reps,
        white_reps,
        black_index,
        white_index,
        g0_elements,
        g1_elements,
    })
}

/// Connectivity plus the number of connected components, which equals the
/// index of `⟨G0 ∪ G1⟩` in the group.
pub fn is_connected_geometry(geom: &CosetGeometry) -> Result<(bool, u128)> {
    let joined = closure(geom.sub0(), geom.sub1().generators())?;
    let components = geom.group().order() / joined.order();
    Ok((components == 1, components))
}

/// Whether the Borel subgroup is core-free in the group; cross-checked
/// against faithfulness of the flag action.
pub fn is_core_free(geom: &CosetGeometry, config: &RunConfig) -> Result<bool> {
    let core = core_in(
        geom.borel(),
        geom.group(),
        config.element_cap,
        config.flag_cap,
    )?;
    let core_free = core.is_trivial();
    // Independent route: the flag action is faithful iff its image has full
    // order.
    let (_, action) = crate::perm::ops_coset_action(
        geom.group(),
        geom.borel(),
        config.element_cap,
        config.flag_cap,
    )?;
    let flag_count = geom.group().order() / geom.borel().order();
    let image = PermGroup::from_generators(flag_count as usize, &action)?;
    let faithful = image.order() == geom.group().order();
    assert_eq!(
        core_free, faithful,
        "core-freeness and flag-action faithfulness must agree"
    );
    Ok(core_free)
}

/// Whether the group of `geom` is edge-transitive on `x` (orbit of one edge
/// covers all edges).
pub(crate) fn edge_transitive_on(x: &ColoredBipartiteGraph, h: &PermGroup) -> bool {
    let edges = x.edges();
    if edges.is_empty() {
        return false;
    }
    let target = edges.len();
    let start = edges[0];
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    seen.insert(start);
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let (u, v) = queue[head];
        head += 1;
        for gen in h.generators() {
            let (a, b) = (gen.apply(u), gen.apply(v));
            let e = (a.min(b), a.max(b));
            if seen.insert(e) {
                queue.push(e);
            }
        }
    }
    seen.len() == target
}

/// The largest core-free coset geometry of `x`: the full color-preserving
/// automorphism group with the stabilizers of the endpoints of the least
/// edge (or of the configured override edge).
pub fn gamma_psi(x: &ColoredBipartiteGraph, config: &RunConfig) -> Result<CosetGeometry> {
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let aut = automorphism_group(x, AutMode::ColorPreserving);
    if !edge_transitive_on(x, &aut) {
        return Err(Error::NotEdgeTransitive);
    }
    let (b, w) = base_edge(x, config)?;
    let sub0 = aut.point_stabilizer(b);
    let sub1 = aut.point_stabilizer(w);
    let borel = aut.pointwise_stabilizer(&[b, w]);
    CosetGeometry::with_borel(aut, sub0, sub1, borel)
}

/// The lexicographically least (black, white) adjacent pair, or the
/// validated override from the config.
pub(crate) fn base_edge(x: &ColoredBipartiteGraph, config: &RunConfig) -> Result<(usize, usize)> {
    match config.seed_edge_override {
        Some((b, w)) => {
            if b >= x.n() || w >= x.n() || x.color(b) != Color::Black || x.color(w) != Color::White
            {
                return Err(Error::Parse(format!(
                    "seed edge override ({b},{w}) is not a (black, white) pair"
                )));
            }
            if !x.graph().has_edge(b, w) {
                return Err(Error::Parse(format!(
                    "seed edge override ({b},{w}) is not an edge"
                )));
            }
            Ok((b, w))
        }
        None => x
            .flags()
            .first()
            .copied()
            .ok_or(Error::NotEdgeTransitive),
    }
}

/// Whether a connected core-free geometry equals the largest core-free
/// geometry of its own Levi graph: the faithful image of the group must fill
/// all of the color-preserving automorphism group, with the stabilizers
/// landing on the images of the parabolic subgroups.
pub fn is_stable(geom: &CosetGeometry, config: &RunConfig) -> Result<bool> {
    let (connected, _) = is_connected_geometry(geom)?;
    if !connected {
        return Err(Error::NotConnected);
    }
    if !is_core_free(geom, config)? {
        return Err(Error::NotCoreFree);
    }
    let levi = levi_graph(geom, config)?;
    let aut = automorphism_group(&levi.graph, AutMode::ColorPreserving);
    let image_gens: Vec<Permutation> = geom
        .group()
        .generators()
        .iter()
        .map(|g| levi.vertex_action(g))
        .collect();
    let image = PermGroup::from_generators(levi.graph.n(), &image_gens)?;
    debug_assert_eq!(image.order(), geom.group().order(), "core-free action is faithful");
    let orders_match = image.order() == aut.order();

    let image0_gens: Vec<Permutation> = geom
        .sub0()
        .generators()
        .iter()
        .map(|g| levi.vertex_action(g))
        .collect();
    let image0 = PermGroup::from_generators(levi.graph.n(), &image0_gens)?;
    let stab0 = aut.point_stabilizer(levi.base_black_vertex());
    let stab0_match = stab0.order() == image0.order() && stab0.has_subgroup(&image0);

    let image1_gens: Vec<Permutation> = geom
        .sub1()
        .generators()
        .iter()
        .map(|g| levi.vertex_action(g))
        .collect();
    let image1 = PermGroup::from_generators(levi.graph.n(), &image1_gens)?;
    let stab1 = aut.point_stabilizer(levi.base_white_vertex());
    let stab1_match = stab1.order() == image1.order() && stab1.has_subgroup(&image1);

    Ok(orders_match && stab0_match && stab1_match)
}

/// Result of the duality search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityInfo {
    /// Smallest order among the qualifying dualities.
    pub min_order: u64,
    /// Whether an order-2 duality (a polarity) exists.
    pub polar: bool,
}

/// Searches the color-swapping automorphisms of `x` for dualities; when
/// `config.duality_normalizes` is set (the default, used by the tables) the
/// duality must normalize `h`.
pub fn dualities(
    x: &ColoredBipartiteGraph,
    h: &PermGroup,
    config: &RunConfig,
) -> Result<Option<DualityInfo>> {
    let aut_o = automorphism_group(x, AutMode::ColorPreserving);
    if !aut_o.has_subgroup(h) {
        return Err(Error::NotSubgroup(
            "dualities requires H ≤ Aut_o(X)".to_string(),
        ));
    }
    let swap = match canon_find_duality(x) {
        Some(d) => d,
        None => return Ok(None),
    };
    let elements = aut_o.elements(config.element_cap)?;
    duality_scan(&swap, &elements, h, config.duality_normalizes)
}

/// Shared scan over the swapping coset `d·Aut_o`.
pub(crate) fn duality_scan(
    swap: &Permutation,
    aut_o_elements: &[Permutation],
    h: &PermGroup,
    must_normalize: bool,
) -> Result<Option<DualityInfo>> {
    let mut min_order: Option<u64> = None;
    for a in aut_o_elements {
        let d = swap.compose(a);
        if must_normalize
            && !h
                .generators()
                .iter()
                .all(|hg| h.member(&d.conjugate(hg)))
        {
            continue;
        }
        let o = d.order();
        if min_order.is_none_or(|m| o < m) {
            min_order = Some(o);
        }
        if o == 2 {
            break;
        }
    }
    Ok(min_order.map(|m| DualityInfo {
        min_order: m,
        polar: m == 2,
    }))
}

/// Trichotomy for an edge-transitive action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitivityKind {
    ArcTransitive,
    HalfArcTransitive,
    SemiSymmetric,
}

/// Exactly one kind holds; `k` is the largest arc-transitivity level when
/// applicable, reported as a lower bound when the search hit its cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityClass {
    pub kind: TransitivityKind,
    pub k: Option<u32>,
    pub k_is_lower_bound: bool,
}

/// Classifies the action of an edge-transitive `h ≤ Aut(x)`:
/// vertex-intransitive actions are semi-symmetric (in the generalized,
/// regularity-free sense); vertex-transitive ones split into arc-transitive
/// (with the largest k for k-arc transitivity) and half-arc-transitive.
pub fn classify_edge_transitivity(
    x: &ColoredBipartiteGraph,
    h: &PermGroup,
    config: &RunConfig,
) -> Result<TransitivityClass> {
    if !edge_transitive_on(x, h) {
        return Err(Error::NotEdgeTransitive);
    }
    let vertex_orbits = h.orbits().len();
    if vertex_orbits > 1 {
        return Ok(TransitivityClass {
            kind: TransitivityKind::SemiSymmetric,
            k: None,
            k_is_lower_bound: false,
        });
    }
    // Arcs: ordered incident pairs.
    let mut arcs: Vec<Vec<usize>> = Vec::new();
    for &(u, v) in x.edges() {
        arcs.push(vec![u, v]);
        arcs.push(vec![v, u]);
    }
    arcs.sort_unstable();
    if !tuples_transitive(h, &arcs) {
        return Ok(TransitivityClass {
            kind: TransitivityKind::HalfArcTransitive,
            k: None,
            k_is_lower_bound: false,
        });
    }
    let mut level = 1u32;
    let mut current = arcs;
    while level < config.k_arc_cap {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for arc in &current {
            let last = arc[arc.len() - 1];
            let prev = arc[arc.len() - 2];
            for &w in x.graph().neighbors(last) {
                if w != prev {
                    let mut ext = arc.clone();
                    ext.push(w);
                    next.push(ext);
                    if next.len() > config.k_arc_budget {
                        return Ok(TransitivityClass {
                            kind: TransitivityKind::ArcTransitive,
                            k: Some(level),
                            k_is_lower_bound: true,
                        });
                    }
                }
            }
        }
        if next.is_empty() || !tuples_transitive(h, &next) {
            return Ok(TransitivityClass {
                kind: TransitivityKind::ArcTransitive,
                k: Some(level),
                k_is_lower_bound: false,
            });
        }
        level += 1;
        current = next;
    }
    Ok(TransitivityClass {
        kind: TransitivityKind::ArcTransitive,
        k: Some(level),
        k_is_lower_bound: true,
    })
}

fn tuples_transitive(h: &PermGroup, tuples: &[Vec<usize>]) -> bool {
    if tuples.is_empty() {
        return false;
    }
    if (tuples.len() as u128) > h.order() {
        return false;
    }
    let all: std::collections::HashSet<&[usize]> = tuples.iter().map(|t| t.as_slice()).collect();
    debug_assert_eq!(all.len(), tuples.len());
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    seen.insert(tuples[0].clone());
    let mut queue = vec![tuples[0].clone()];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head].clone();
        head += 1;
        for gen in h.generators() {
            let img: Vec<usize> = t.iter().map(|&p| gen.apply(p)).collect();
            if !seen.contains(&img) {
                seen.insert(img.clone());
                queue.push(img);
            }
        }
    }
    seen.len() == tuples.len()
}

/// Whether `x` is the Levi graph of a combinatorial configuration: one
/// degree per class and girth at least 6 (forests pass vacuously).
pub fn is_configuration(x: &ColoredBipartiteGraph) -> bool {
    let uniform = |vs: &[usize]| -> bool {
        vs.windows(2)
            .all(|w| x.graph().degree(w[0]) == x.graph().degree(w[1]))
    };
    if !uniform(&x.black_vertices()) || !uniform(&x.white_vertices()) {
        return false;
    }
    match x.girth() {
        None => true,
        Some(g) => g >= 6,
    }
}
