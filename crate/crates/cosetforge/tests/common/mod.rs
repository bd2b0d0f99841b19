//! Oracles and instance generators shared by the integration suites. All of
//! them are deliberately naive and independent of the library's search
//! machinery.
#![allow(dead_code)]

use cosetforge::graph::{Color, ColoredBipartiteGraph, SimpleGraph};
use cosetforge::perm::{PermGroup, Permutation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

/// Closure of a generator list by plain breadth-first multiplication.
pub fn brute_closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(Permutation::identity(degree));
    let mut frontier = vec![Permutation::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every subgroup of the group with the given element list, as element sets.
/// Breadth-first over single-element extensions with quadratic closure.
pub fn brute_subgroup_sets(elements: &[Permutation]) -> BTreeSet<Vec<Permutation>> {
    let degree = elements[0].degree();
    let full = elements.len();
    let id = Permutation::identity(degree);
    let mut all: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    all.insert(vec![id.clone()]);
    let mut queue: Vec<Vec<Permutation>> = vec![vec![id]];
    let full_sorted: Vec<Permutation> = {
        let mut v = elements.to_vec();
        v.sort_unstable();
        v
    };
    while let Some(sub) = queue.pop() {
        for e in elements {
            if sub.binary_search(e).is_ok() {
                continue;
            }
            let mut grown: BTreeSet<Permutation> = sub.iter().cloned().collect();
            grown.insert(e.clone());
            loop {
                if grown.len() == full {
                    break;
                }
                let snapshot: Vec<Permutation> = grown.iter().cloned().collect();
                let before = grown.len();
                'outer: for a in &snapshot {
                    for b in &snapshot {
                        grown.insert(a.compose(b));
                        if grown.len() == full {
                            break 'outer;
                        }
                    }
                }
                if grown.len() == before {
                    break;
                }
            }
            let v: Vec<Permutation> = if grown.len() == full {
                full_sorted.clone()
            } else {
                grown.into_iter().collect()
            };
            if all.insert(v.clone()) {
                queue.push(v);
            }
        }
    }
    all
}

/// Color-preserving (or arbitrary) automorphism count by plain backtracking:
/// vertices are mapped in breadth-first order and every candidate image is
/// checked against all previously mapped vertices.
pub fn backtrack_aut_count(g: &ColoredBipartiteGraph, color_preserving: bool) -> usize {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.graph().neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    struct Ctx<'a> {
        g: &'a ColoredBipartiteGraph,
        color_preserving: bool,
        order: Vec<usize>,
        image: Vec<usize>,
        used: Vec<bool>,
        count: usize,
    }
    fn consistent(ctx: &Ctx, step: usize, cand: usize) -> bool {
        let v = ctx.order[step];
        if ctx.color_preserving && ctx.g.color(v) != ctx.g.color(cand) {
            return false;
        }
        if ctx.g.graph().degree(v) != ctx.g.graph().degree(cand) {
            return false;
        }
        for &w in &ctx.order[..step] {
            let adj = ctx.g.graph().has_edge(v, w);
            if adj != ctx.g.graph().has_edge(cand, ctx.image[w]) {
                return false;
            }
        }
        true
    }
    fn rec(ctx: &mut Ctx, step: usize) {
        if step == ctx.g.n() {
            ctx.count += 1;
            return;
        }
        for cand in 0..ctx.g.n() {
            if !ctx.used[cand] && consistent(ctx, step, cand) {
                ctx.image[ctx.order[step]] = cand;
                ctx.used[cand] = true;
                rec(ctx, step + 1);
                ctx.used[cand] = false;
            }
        }
    }
    let mut ctx = Ctx {
        g,
        color_preserving,
        order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        count: 0,
    };
    rec(&mut ctx, 0);
    ctx.count
}

/// Deterministic random permutation.
pub fn random_permutation(rng: &mut StdRng, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Random group on a small domain: 1..=3 random generators.
pub fn random_group(rng: &mut StdRng, max_degree: usize) -> PermGroup {
    let degree = rng.gen_range(3..=max_degree);
    let count = rng.gen_range(1..=3);
    let gens: Vec<Permutation> = (0..count).map(|_| random_permutation(rng, degree)).collect();
    PermGroup::from_generators(degree, &gens).unwrap()
}

/// Random connected bipartite graph with pinned classes: a spanning tree
/// between the classes plus extra random cross edges.
pub fn random_connected_bipartite(rng: &mut StdRng, max_side: usize) -> ColoredBipartiteGraph {
    let nb = rng.gen_range(1..=max_side);
    let nw = rng.gen_range(1..=max_side);
    let n = nb + nw;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    // Spanning structure: attach every vertex to the opposite class.
    for b in 0..nb {
        let w = nb + rng.gen_range(0..nw);
        edges.insert((b, w));
    }
    for w in nb..n {
        let b = rng.gen_range(0..nb);
        edges.insert((b, w));
    }
    // A couple of extra edges.
    for _ in 0..rng.gen_range(0..=nb * nw / 2) {
        let b = rng.gen_range(0..nb);
        let w = nb + rng.gen_range(0..nw);
        edges.insert((b, w));
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    let graph = SimpleGraph::from_edges(n, &edge_list).unwrap();
    let colors: Vec<Color> = (0..n)
        .map(|v| if v < nb { Color::Black } else { Color::White })
        .collect();
    let g = ColoredBipartiteGraph::new(graph, colors, None).unwrap();
    if g.is_connected() {
        g
    } else {
        // The two-sided attachment always links each vertex across, but a
        // class can still split; stitch with one more edge and retry.
        random_connected_bipartite(rng, max_side)
    }
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
