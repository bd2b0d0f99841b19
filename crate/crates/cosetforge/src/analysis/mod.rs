//! The forward pipeline: enumerate edge-transitive subgroups of the
//! color-preserving automorphism group and answer the structural questions
//! behind the Max/Norm/Dual/MaxOrd tables.

mod output;

pub use output::{csv_header, markdown_header, markdown_row, CsvRecord};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::geometry::{
    base_edge, classify_edge_transitivity, duality_scan, edge_transitive_on, TransitivityClass,
};
use crate::graph::{canon_find_duality, ColoredBipartiteGraph};
use crate::perm::{
    automorphism_group, closure, core_in, fingerprint, is_maximal_in, is_normal_in,
    max_element_order, subgroup_classes, transitivity_degree, AutMode, GroupFingerprint,
    PermGroup, Permutation,
};
use serde::Serialize;

/// One table row per edge-transitive subgroup class.
///
/// `max_string` positions answer, in order: is the Borel subgroup maximal in
/// H0 / in H1 (or is the local action doubly transitive), and is H0 / H1
/// maximal in H (or the class action doubly transitive). "2T" wins over "M";
/// "X" means neither. `norm_string` records normality of H, H0, H1, H01 in
/// the full color-preserving group.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRow {
    pub graph_id: String,
    pub h_fingerprint: GroupFingerprint,
    pub h_order: u128,
    pub h0_order: u128,
    pub h1_order: u128,
    pub h01_order: u128,
    pub max_string: String,
    pub norm_string: String,
    /// Minimum order of a duality normalizing H, when one exists.
    pub dual: Option<u64>,
    pub maxord: u64,
    pub core_free: bool,
    pub connected: bool,
    pub transitivity: TransitivityClass,
}

/// Coarse classification of how much symmetry moves the edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeTransitivityFlag {
    /// The color-preserving group is edge-transitive: rows can be produced.
    FlagTransitive,
    /// Only the full group (with dualities) is edge-transitive; such graphs
    /// are flagged and not analyzed further.
    WeaklyFlagTransitive,
    NotEdgeTransitive,
}

/// Classifies the input without enumerating subgroups.
pub fn edge_transitivity_flag(x: &ColoredBipartiteGraph) -> EdgeTransitivityFlag {
    let aut_o = automorphism_group(x, AutMode::ColorPreserving);
    if edge_transitive_on(x, &aut_o) {
        return EdgeTransitivityFlag::FlagTransitive;
    }
    let full = automorphism_group(x, AutMode::Full);
    if edge_transitive_on(x, &full) {
        EdgeTransitivityFlag::WeaklyFlagTransitive
    } else {
        EdgeTransitivityFlag::NotEdgeTransitive
    }
}

/// Shared per-graph context so row computations reuse the automorphism
/// group, its element list, and the swap witness.
pub struct GraphContext {
    pub aut_o: PermGroup,
    aut_o_elements: Vec<Permutation>,
    duality: Option<Permutation>,
    base: (usize, usize),
    graph_id: String,
}

impl GraphContext {
    pub fn build(x: &ColoredBipartiteGraph, config: &RunConfig) -> Result<GraphContext> {
        let aut_o = automorphism_group(x, AutMode::ColorPreserving);
        if !edge_transitive_on(x, &aut_o) {
            return Err(Error::NotEdgeTransitive);
        }
        let aut_o_elements = aut_o.elements(config.element_cap)?;
        let duality = canon_find_duality(x);
        let base = base_edge(x, config)?;
        Ok(GraphContext {
            aut_o,
            aut_o_elements,
            duality,
            base,
            graph_id: x.id().unwrap_or("graph").to_string(),
        })
    }
}

/// All subgroups of the color-preserving automorphism group (up to its
/// conjugacy) that act transitively on the edge set.
pub fn edge_transitive_subgroups(
    x: &ColoredBipartiteGraph,
    config: &RunConfig,
) -> Result<Vec<PermGroup>> {
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let ctx = GraphContext::build(x, config)?;
    edge_transitive_subgroups_with(x, &ctx, config)
}

fn edge_transitive_subgroups_with(
    x: &ColoredBipartiteGraph,
    ctx: &GraphContext,
    config: &RunConfig,
) -> Result<Vec<PermGroup>> {
    let classes = subgroup_classes(&ctx.aut_o, config.subgroup_order_cap)?;
    let edge_count = x.edges().len() as u128;
    Ok(classes
        .into_iter()
        .filter(|h| h.order() % edge_count == 0 && edge_transitive_on(x, h))
        .collect())
}

/// Answers the ten questions for one edge-transitive subgroup.
pub fn answer_ten_questions(
    x: &ColoredBipartiteGraph,
    h: &PermGroup,
    config: &RunConfig,
) -> Result<AnalysisRow> {
    let ctx = GraphContext::build(x, config)?;
    row_for(x, &ctx, h, config)
}

fn max_symbol(
    sub: &PermGroup,
    big: &PermGroup,
    action_set: &[usize],
    config: &RunConfig,
) -> Result<&'static str> {
    if transitivity_degree(big, action_set)? == 2 {
        return Ok("2T");
    }
    if big.order() > sub.order() && is_maximal_in(sub, big, config.element_cap)? {
        return Ok("M");
    }
    Ok("X")
}

fn row_for(
    x: &ColoredBipartiteGraph,
    ctx: &GraphContext,
    h: &PermGroup,
    config: &RunConfig,
) -> Result<AnalysisRow> {
    if !edge_transitive_on(x, h) {
        return Err(Error::NotEdgeTransitive);
    }
    let (b, w) = ctx.base;
    let h0 = h.point_stabilizer(b);
    let h1 = h.point_stabilizer(w);
    let h01 = h.pointwise_stabilizer(&[b, w]);

    let blacks = x.black_vertices();
    let whites = x.white_vertices();
    let max_string = [
        max_symbol(&h01, &h0, x.graph().neighbors(b), config)?,
        max_symbol(&h01, &h1, x.graph().neighbors(w), config)?,
        max_symbol(&h0, h, &blacks, config)?,
        max_symbol(&h1, h, &whites, config)?,
    ]
    .concat();

    let norm_string: String = [
        is_normal_in(h, &ctx.aut_o)?,
        is_normal_in(&h0, &ctx.aut_o)?,
        is_normal_in(&h1, &ctx.aut_o)?,
        is_normal_in(&h01, &ctx.aut_o)?,
    ]
    .iter()
    .map(|&yes| if yes { 'Y' } else { 'N' })
    .collect();

    let dual = match &ctx.duality {
        None => None,
        Some(d) => duality_scan(d, &ctx.aut_o_elements, h, config.duality_normalizes)?
            .map(|info| info.min_order),
    };

    let maxord = max_element_order(h, config.element_cap)?;
    let core_free = core_in(&h01, h, config.element_cap, config.flag_cap)?.is_trivial();
    let connected = closure(&h0, h1.generators())?.order() == h.order();
    let transitivity = classify_edge_transitivity(x, h, config)?;
    let h_fingerprint = fingerprint(h, config.element_cap)?;

    Ok(AnalysisRow {
        graph_id: ctx.graph_id.clone(),
        h_fingerprint,
        h_order: h.order(),
        h0_order: h0.order(),
        h1_order: h1.order(),
        h01_order: h01.order(),
        max_string,
        norm_string,
        dual,
        maxord,
        core_free,
        connected,
        transitivity,
    })
}

/// One row per edge-transitive subgroup class, sorted by descending order,
/// fingerprint, then max string — a deterministic table.
pub fn analyze_graph(x: &ColoredBipartiteGraph, config: &RunConfig) -> Result<Vec<AnalysisRow>> {
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let ctx = GraphContext::build(x, config)?;
    let subgroups = edge_transitive_subgroups_with(x, &ctx, config)?;
    let mut rows = Vec::with_capacity(subgroups.len());
    for h in &subgroups {
        rows.push(row_for(x, &ctx, h, config)?);
    }
    rows.sort_by(|a, b| {
        b.h_order
            .cmp(&a.h_order)
            .then_with(|| a.h_fingerprint.cmp(&b.h_fingerprint))
            .then_with(|| a.max_string.cmp(&b.max_string))
            .then_with(|| a.norm_string.cmp(&b.norm_string))
    });
    Ok(rows)
}
