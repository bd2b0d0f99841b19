use super::{ColoredBipartiteGraph, SimpleGraph};
use crate::perm::Permutation;
use std::collections::BTreeMap;

/// Which color behavior a certificate encodes.
///
/// `PreserveClasses` forbids black/white swaps, `RespectClasses` permits one
/// global swap, `Ignore` drops colors. The three modes yield distinct byte
/// streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateMode {
    PreserveClasses,
    RespectClasses,
    Ignore,
}

/// Canonical adjacency encoding: equal bytes under a mode iff the graphs are
/// isomorphic under that mode's allowed color behavior.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphCertificate {
    pub bytes: Vec<u8>,
    pub mode: CertificateMode,
}

/// Canonical form of a graph relative to an ordered initial cell partition.
#[derive(Clone, Debug)]
pub struct CanonResult {
    /// Vertex count, cell sizes, and canonical adjacency bits.
    pub body: Vec<u8>,
    /// First minimal leaf labeling: vertex -> canonical position.
    pub labeling: Permutation,
    /// Every automorphism respecting the initial cells (the full group, not
    /// just generators).
    pub automorphisms: Vec<Permutation>,
}

struct SearchCtx<'a> {
    g: &'a SimpleGraph,
    best: Option<Vec<u64>>,
    min_labelings: Vec<Vec<usize>>,
}

/// Iterated neighbor-count refinement followed by exhaustive backtracking
/// over target cells (first smallest non-singleton cell, vertices in
/// ascending id order). Every leaf is visited, so the minimal-leaf set yields
/// the whole automorphism group.
pub fn canonical_form(g: &SimpleGraph, initial_cells: &[Vec<usize>]) -> CanonResult {
    let cells: Vec<Vec<usize>> = initial_cells
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s
        })
        .collect();
    debug_assert_eq!(cells.iter().map(|c| c.len()).sum::<usize>(), g.n());
    let mut ctx = SearchCtx {
        g,
        best: None,
        min_labelings: Vec::new(),
    };
    search(cells.clone(), &mut ctx);

    let first = ctx.min_labelings.first().expect("at least one leaf");
    let labeling = Permutation::from_images(first.clone()).expect("leaf labeling is a bijection");
    let automorphisms: Vec<Permutation> = ctx
        .min_labelings
        .iter()
        .map(|lab| {
            let lam = Permutation::from_images(lab.clone()).expect("bijection");
            lam.inverse().compose(&labeling)
        })
        .collect();

    let mut body = Vec::new();
    push_u32(&mut body, g.n() as u32);
    push_u32(&mut body, cells.len() as u32);
    for c in &cells {
        push_u32(&mut body, c.len() as u32);
    }
    for word in ctx.best.as_ref().expect("leaf reached") {
        body.extend_from_slice(&word.to_be_bytes());
    }
    CanonResult {
        body,
        labeling,
        automorphisms,
    }
}

fn search(cells: Vec<Vec<usize>>, ctx: &mut SearchCtx) {
    let mut cells = cells;
    refine(&mut cells, ctx.g);
    match cells.iter().position(|c| c.len() > 1).map(|_| {
        // first smallest non-singleton cell
        let min_len = cells.iter().map(|c| c.len()).filter(|&l| l > 1).min().unwrap();
        cells.iter().position(|c| c.len() == min_len).unwrap()
    }) {
        None => {
            // Discrete partition: record the leaf.
            let mut labeling = vec![0usize; ctx.g.n()];
            for (pos, cell) in cells.iter().enumerate() {
                labeling[cell[0]] = pos;
            }
            let enc = encode(ctx.g, &labeling);
            match &ctx.best {
                None => {
                    ctx.best = Some(enc);
                    ctx.min_labelings.push(labeling);
                }
                Some(b) => match enc.cmp(b) {
                    std::cmp::Ordering::Less => {
                        ctx.best = Some(enc);
                        ctx.min_labelings.clear();
                        ctx.min_labelings.push(labeling);
                    }
                    std::cmp::Ordering::Equal => ctx.min_labelings.push(labeling),
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
        Some(target) => {
            let vertices = cells[target].clone();
            for &v in &vertices {
                let mut child = Vec::with_capacity(cells.len() + 1);
                for (i, cell) in cells.iter().enumerate() {
                    if i == target {
                        child.push(vec![v]);
                        child.push(cell.iter().copied().filter(|&u| u != v).collect());
                    } else {
                        child.push(cell.clone());
                    }
                }
                search(child, ctx);
            }
        }
    }
}

/// Splits cells by neighbor counts into each shattering cell until stable;
/// subcells are ordered by ascending count.
fn refine(cells: &mut Vec<Vec<usize>>, g: &SimpleGraph) {
    let n = g.n();
    let mut counts = vec![0usize; n];
    loop {
        let mut split_any = false;
        let snapshot = cells.clone();
        for shatter in &snapshot {
            let mut in_shatter = vec![false; n];
            for &v in shatter {
                in_shatter[v] = true;
            }
            for (v, count) in counts.iter_mut().enumerate() {
                *count = g.neighbors(v).iter().filter(|&&w| in_shatter[w]).count();
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups.entry(counts[v]).or_default().push(v);
                }
                if groups.len() > 1 {
                    split_any = true;
                }
                for (_, group) in groups {
                    next.push(group);
                }
            }
            *cells = next;
        }
        if !split_any {
            break;
        }
    }
}

/// Adjacency bits of the relabeled graph, packed row-major over i < j.
fn encode(g: &SimpleGraph, labeling: &[usize]) -> Vec<u64> {
    let n = g.n();
    let bits = n * n.saturating_sub(1) / 2;
    let mut words = vec![0u64; bits.div_ceil(64)];
    let mut inverse = vec![0usize; n];
    for (v, &pos) in labeling.iter().enumerate() {
        inverse[pos] = v;
    }
    let mut idx = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(inverse[i], inverse[j]) {
                words[idx / 64] |= 1u64 << (63 - (idx % 64));
            }
            idx += 1;
        }
    }
    words
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_be_bytes());
}

fn mode_tag(mode: CertificateMode) -> u8 {
    match mode {
        CertificateMode::PreserveClasses => 1,
        CertificateMode::RespectClasses => 2,
        CertificateMode::Ignore => 3,
    }
}

fn class_cells(g: &ColoredBipartiteGraph, swapped: bool) -> Vec<Vec<usize>> {
    let blacks = g.black_vertices();
    let whites = g.white_vertices();
    if swapped {
        vec![whites, blacks]
    } else {
        vec![blacks, whites]
    }
}

/// Canonical certificate of a colored bipartite graph under the given mode.
/// Class sizes are encoded explicitly (empty classes included), so the mode
/// semantics survive degenerate colorings.
pub fn certificate(g: &ColoredBipartiteGraph, mode: CertificateMode) -> GraphCertificate {
    // (first class size, second class size, canonical body) for a given
    // class orientation.
    let oriented = |swapped: bool| -> Vec<u8> {
        let cells = class_cells(g, swapped);
        let mut out = Vec::new();
        push_u32(&mut out, cells[0].len() as u32);
        push_u32(&mut out, cells[1].len() as u32);
        out.extend(canonical_form(g.graph(), &cells).body);
        out
    };
    let body = match mode {
        CertificateMode::PreserveClasses => oriented(false),
        CertificateMode::RespectClasses => oriented(false).min(oriented(true)),
        CertificateMode::Ignore => canonical_form(g.graph(), &[(0..g.n()).collect()]).body,
    };
    let mut bytes = vec![mode_tag(mode)];
    bytes.extend(body);
    GraphCertificate { bytes, mode }
}

/// A color-swapping automorphism (duality) of `g`, when one exists.
pub(crate) fn find_duality(g: &ColoredBipartiteGraph) -> Option<Permutation> {
    if g.black_vertices().len() != g.white_vertices().len() {
        return None;
    }
    let bw = canonical_form(g.graph(), &class_cells(g, false));
    let wb = canonical_form(g.graph(), &class_cells(g, true));
    if bw.body != wb.body {
        return None;
    }
    // Both labelings hit the same canonical form, so composing them swaps
    // the classes.
    Some(wb.labeling.inverse().compose(&bw.labeling))
}
