//! Colored bipartite graphs, ingestion formats, and structural predicates.

mod canon;
mod dot;
mod edge_list;
mod graph6;

pub use canon::{certificate, canonical_form, CanonResult, CertificateMode, GraphCertificate};
pub(crate) use canon::find_duality as canon_find_duality;
pub use dot::to_dot;
pub use edge_list::{parse_edge_list, write_edge_list};
pub use graph6::{parse_graph6, parse_graph6_file, write_graph6};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::Serialize;
use std::collections::BTreeMap;

/// Vertex color; black vertices are the points of a geometry, white vertices
/// the lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Color {
    Black,
    White,
}

/// A simple undirected graph on `0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Builds the graph, rejecting loops, duplicate edges, and out-of-range
    /// endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if u >= n || v >= n {
                return Err(Error::Parse(format!(
                    "edge {u}-{v} mentions a vertex outside 0..{n}"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            adj,
            edges: norm,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted ascending, each with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Length of the shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // No shorter cycle through this root can appear deeper.
                    if dist[u] * 2 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if w != parent[u] {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Applies `perm` to the vertex labels.
    pub fn relabel(&self, perm: &Permutation) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm.apply(u), perm.apply(v)))
            .collect();
        SimpleGraph::from_edges(self.n, &edges).expect("relabeling preserves simplicity")
    }

    /// Proper 2-coloring with the lowest-id vertex of each component black,
    /// or the odd-cycle witness.
    pub fn bipartition(&self) -> Result<Vec<Color>> {
        let mut colors: Vec<Option<Color>> = vec![None; self.n];
        for start in 0..self.n {
            if colors[start].is_some() {
                continue;
            }
            colors[start] = Some(Color::Black);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colors[u].unwrap();
                let cw = match cu {
                    Color::Black => Color::White,
                    Color::White => Color::Black,
                };
                for &w in &self.adj[u] {
                    match colors[w] {
                        None => {
                            colors[w] = Some(cw);
                            queue.push_back(w);
                        }
                        Some(c) if c == cu => return Err(Error::NotBipartite { vertex: w }),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(colors.into_iter().map(|c| c.unwrap()).collect())
    }
}

/// A Levi graph: a simple bipartite graph with a fixed black/white coloring.
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredBipartiteGraph {
    graph: SimpleGraph,
    colors: Vec<Color>,
    id: Option<String>,
}

impl ColoredBipartiteGraph {
    /// Wraps a graph with an explicit coloring, validating that every edge
    /// joins a black vertex to a white one.
    pub fn new(graph: SimpleGraph, colors: Vec<Color>, id: Option<String>) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::Parse(format!(
                "coloring lists {} vertices, graph has {}",
                colors.len(),
                graph.n()
            )));
        }
        for &(u, v) in graph.edges() {
            if colors[u] == colors[v] {
                return Err(Error::NotBipartite { vertex: v });
            }
        }
        Ok(ColoredBipartiteGraph { graph, colors, id })
    }

    /// Wraps a graph, computing the bipartition per connected component with
    /// the lowest-id vertex black.
    pub fn with_computed_coloring(graph: SimpleGraph, id: Option<String>) -> Result<Self> {
        let colors = graph.bipartition()?;
        Ok(ColoredBipartiteGraph { graph, colors, id })
    }

    /// Builds from an edge list; vertex count is inferred from the largest
    /// mentioned id. An explicit partial coloring fixes the classes, and is
    /// rejected when improper.
    pub fn from_edge_list(
        pairs: &[(usize, usize)],
        coloring: Option<&BTreeMap<usize, Color>>,
        id: Option<String>,
    ) -> Result<Self> {
        let mut n = 0;
        for &(u, v) in pairs {
            n = n.max(u + 1).max(v + 1);
        }
        if let Some(map) = coloring {
            for &v in map.keys() {
                n = n.max(v + 1);
            }
        }
        let graph = SimpleGraph::from_edges(n, pairs)?;
        match coloring {
            None => Self::with_computed_coloring(graph, id),
            Some(map) => {
                // Propagate the computed bipartition but align each
                // component with the requested colors.
                let computed = graph.bipartition()?;
                let mut colors = computed.clone();
                for comp in graph.connected_components() {
                    let hint = comp.iter().find_map(|&v| map.get(&v).map(|&c| (v, c)));
                    if let Some((v, c)) = hint {
                        if computed[v] != c {
                            for &u in &comp {
                                colors[u] = flip(colors[u]);
                            }
                        }
                    }
                }
                for (&v, &c) in map {
                    if colors[v] != c {
                        return Err(Error::NotBipartite { vertex: v });
                    }
                }
                Self::new(graph, colors, id)
            }
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn set_id(&mut self, id: impl Into<String>) {
        self.id = Some(id.into());
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.colors[v] == Color::Black).collect()
    }

    pub fn white_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.colors[v] == Color::White).collect()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn girth(&self) -> Option<usize> {
        self.graph.girth()
    }

    /// Edges as ordered (black, white) pairs, sorted.
    pub fn flags(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                if self.colors[u] == Color::Black {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The dual: colors reversed, vertices renumbered so the new black class
    /// (the old whites) comes first.
    pub fn dual(&self) -> ColoredBipartiteGraph {
        let whites = self.white_vertices();
        let blacks = self.black_vertices();
        let mut map = vec![0usize; self.n()];
        for (i, &w) in whites.iter().enumerate() {
            map[w] = i;
        }
        for (j, &b) in blacks.iter().enumerate() {
            map[b] = whites.len() + j;
        }
        let edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        let graph = SimpleGraph::from_edges(self.n(), &edges).expect("relabeling is simple");
        let mut colors = vec![Color::White; self.n()];
        colors[..whites.len()].fill(Color::Black);
        ColoredBipartiteGraph::new(graph, colors, self.id.clone()).expect("dual stays bipartite")
    }

    /// Applies `perm` to vertex labels, carrying colors along.
    pub fn relabel(&self, perm: &Permutation) -> ColoredBipartiteGraph {
        let graph = self.graph.relabel(perm);
        let mut colors = vec![Color::Black; self.n()];
        for v in 0..self.n() {
            colors[perm.apply(v)] = self.colors[v];
        }
        ColoredBipartiteGraph::new(graph, colors, self.id.clone()).expect("relabeling preserves coloring")
    }
}

fn flip(c: Color) -> Color {
    match c {
        Color::Black => Color::White,
        Color::White => Color::Black,
    }
}

/// Inserts one white vertex in the middle of every edge; original vertices
/// become black. Vertex `n + i` subdivides the i-th sorted edge.
pub fn subdivide(g: &SimpleGraph) -> ColoredBipartiteGraph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.edges().len());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    let graph = SimpleGraph::from_edges(n + g.edges().len(), &edges).expect("subdivision is simple");
    let colors: Vec<Color> = (0..graph.n())
        .map(|v| if v < n { Color::Black } else { Color::White })
        .collect();
    ColoredBipartiteGraph::new(graph, colors, None).expect("subdivision is bipartite")
}

/// A named fixture; Petersen is not bipartite and is delivered uncolored,
/// for subdivision use only.
#[derive(Clone, Debug)]
pub enum BuiltinGraph {
    Colored(ColoredBipartiteGraph),
    Uncolored(SimpleGraph),
}

/// Builtin names with one-line descriptions, for the CLI listing.
pub const BUILTIN_NAMES: &[(&str, &str)] = &[
    ("k33", "complete bipartite graph on 3+3 vertices"),
    ("k44", "complete bipartite graph on 4+4 vertices"),
    ("cube", "3-cube skeleton, classes by coordinate parity"),
    ("heawood", "point/line incidences of the 7-point projective plane"),
    ("petersen", "Petersen graph (not bipartite; uncolored)"),
    ("petersen_subdivision", "subdivision of the Petersen graph"),
];

/// Fixed fixtures with documented vertex numbering: black class first, edges
/// as listed in each constructor.
pub fn builtin(name: &str) -> Result<BuiltinGraph> {
    match name {
        "k33" => Ok(BuiltinGraph::Colored(complete_bipartite(3, 3, "k33"))),
        "k44" => Ok(BuiltinGraph::Colored(complete_bipartite(4, 4, "k44"))),
        "cube" => {
            // Blacks 0..3 are codes 000, 011, 101, 110; whites 4..7 are
            // 001, 010, 100, 111. Adjacent when codes differ in one bit.
            let black_codes = [0b000, 0b011, 0b101, 0b110];
            let white_codes = [0b001, 0b010, 0b100, 0b111];
            let mut edges = Vec::new();
            for (i, &bc) in black_codes.iter().enumerate() {
                for (j, &wc) in white_codes.iter().enumerate() {
                    if ((bc ^ wc) as u32).count_ones() == 1 {
                        edges.push((i, 4 + j));
                    }
                }
            }
            let g = SimpleGraph::from_edges(8, &edges)?;
            let colors = (0..8)
                .map(|v| if v < 4 { Color::Black } else { Color::White })
                .collect();
            Ok(BuiltinGraph::Colored(ColoredBipartiteGraph::new(
                g,
                colors,
                Some("cube".into()),
            )?))
        }
        "heawood" => {
            // Points 0..6, lines 7..13; line i contains points i+1, i+2,
            // i+4 (mod 7).
            let mut edges = Vec::new();
            for i in 0..7usize {
                for d in [1, 2, 4] {
                    edges.push(((i + d) % 7, 7 + i));
                }
            }
            let g = SimpleGraph::from_edges(14, &edges)?;
            let colors = (0..14)
                .map(|v| if v < 7 { Color::Black } else { Color::White })
                .collect();
            Ok(BuiltinGraph::Colored(ColoredBipartiteGraph::new(
                g,
                colors,
                Some("heawood".into()),
            )?))
        }
        "petersen" => Ok(BuiltinGraph::Uncolored(petersen())),
        "petersen_subdivision" => {
            let mut g = subdivide(&petersen());
            g.set_id("petersen_subdivision");
            Ok(BuiltinGraph::Colored(g))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn complete_bipartite(a: usize, b: usize, id: &str) -> ColoredBipartiteGraph {
    let mut edges = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    let g = SimpleGraph::from_edges(a + b, &edges).expect("complete bipartite is simple");
    let colors = (0..a + b)
        .map(|v| if v < a { Color::Black } else { Color::White })
        .collect();
    ColoredBipartiteGraph::new(g, colors, Some(id.into())).expect("proper 2-coloring")
}

fn petersen() -> SimpleGraph {
    SimpleGraph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .expect("petersen edge list is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colored(name: &str) -> ColoredBipartiteGraph {
        match builtin(name).unwrap() {
            BuiltinGraph::Colored(g) => g,
            BuiltinGraph::Uncolored(_) => panic!("expected colored builtin"),
        }
    }

    #[test]
    fn builtin_shapes() {
        let k33 = colored("k33");
        assert_eq!(k33.n(), 6);
        assert_eq!(k33.edges().len(), 9);
        assert_eq!(k33.black_vertices(), vec![0, 1, 2]);

        let k44 = colored("k44");
        assert_eq!(k44.n(), 8);
        assert_eq!(k44.edges().len(), 16);

        let cube = colored("cube");
        assert_eq!(cube.n(), 8);
        assert_eq!(cube.edges().len(), 12);
        assert!((0..8).all(|v| cube.graph().degree(v) == 3));

        let hw = colored("heawood");
        assert_eq!(hw.n(), 14);
        assert_eq!(hw.edges().len(), 21);
        assert!(hw.is_connected());

        assert!(matches!(builtin("petersen"), Ok(BuiltinGraph::Uncolored(_))));
        assert!(matches!(builtin("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn girth_values() {
        assert_eq!(colored("k33").girth(), Some(4));
        assert_eq!(colored("heawood").girth(), Some(6));
        let k2 = ColoredBipartiteGraph::from_edge_list(&[(0, 1)], None, None).unwrap();
        assert_eq!(k2.girth(), None);
        if let BuiltinGraph::Uncolored(p) = builtin("petersen").unwrap() {
            assert_eq!(p.girth(), Some(5));
        }
    }

    #[test]
    fn girth_matches_brute_force_on_small_graphs() {
        // Oracle: shortest cycle by DFS enumeration of closed walks.
        fn brute_girth(g: &SimpleGraph) -> Option<usize> {
            let mut best = None;
            let n = g.n();
            // Enumerate simple paths by backtracking, close cycles at start.
            fn dfs(
                g: &SimpleGraph,
                start: usize,
                cur: usize,
                visited: &mut Vec<bool>,
                len: usize,
                best: &mut Option<usize>,
            ) {
                for &w in g.neighbors(cur) {
                    if w == start && len >= 2 {
                        let total = len + 1;
                        if best.is_none_or(|b| total < b) {
                            *best = Some(total);
                        }
                    } else if !visited[w] && w > start {
                        visited[w] = true;
                        dfs(g, start, w, visited, len + 1, best);
                        visited[w] = false;
                    }
                }
            }
            for start in 0..n {
                let mut visited = vec![false; n];
                visited[start] = true;
                dfs(g, start, start, &mut visited, 0, &mut best);
            }
            best
        }
        let cases: Vec<SimpleGraph> = vec![
            colored("k33").graph().clone(),
            colored("cube").graph().clone(),
            colored("heawood").graph().clone(),
            SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
            SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
            SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap(),
        ];
        for g in cases {
            assert_eq!(g.girth(), brute_girth(&g), "girth mismatch on {g:?}");
        }
    }

    #[test]
    fn connectivity() {
        assert!(colored("k33").is_connected());
        let two_k2 = ColoredBipartiteGraph::from_edge_list(&[(0, 1), (2, 3)], None, None).unwrap();
        assert!(!two_k2.is_connected());
        assert!(colored("heawood").is_connected());
    }

    #[test]
    fn from_edge_list_basics() {
        let k2 = ColoredBipartiteGraph::from_edge_list(&[(0, 1)], None, None).unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.color(0), Color::Black);
        assert_eq!(k2.color(1), Color::White);

        assert!(matches!(
            ColoredBipartiteGraph::from_edge_list(&[(0, 0)], None, None),
            Err(Error::LoopEdge(0))
        ));
        assert!(matches!(
            ColoredBipartiteGraph::from_edge_list(&[(0, 1), (1, 0)], None, None),
            Err(Error::DuplicateEdge(0, 1))
        ));
    }

    #[test]
    fn petersen_edges_are_not_bipartite() {
        if let BuiltinGraph::Uncolored(p) = builtin("petersen").unwrap() {
            let edges = p.edges().to_vec();
            assert!(matches!(
                ColoredBipartiteGraph::from_edge_list(&edges, None, None),
                Err(Error::NotBipartite { .. })
            ));
            assert!(matches!(
                ColoredBipartiteGraph::with_computed_coloring(p, None),
                Err(Error::NotBipartite { .. })
            ));
        }
    }

    #[test]
    fn subdivided_petersen_is_bipartite_10_15() {
        let g = colored("petersen_subdivision");
        assert_eq!(g.n(), 25);
        assert_eq!(g.edges().len(), 30);
        assert_eq!(g.black_vertices().len(), 10);
        assert_eq!(g.white_vertices().len(), 15);
        assert!(g.is_connected());
    }

    #[test]
    fn subdivision_examples() {
        let k2 = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        let path = subdivide(&k2);
        assert_eq!(path.n(), 3);
        assert_eq!(path.edges(), &[(0, 2), (1, 2)]);

        let c4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let c8 = subdivide(&c4);
        assert_eq!(c8.n(), 8);
        assert_eq!(c8.girth(), Some(8));
    }

    #[test]
    fn subdivision_doubles_girth() {
        for name in ["k33", "cube", "heawood"] {
            let g = colored(name);
            let doubled = subdivide(g.graph());
            assert_eq!(doubled.girth(), g.girth().map(|x| 2 * x));
        }
        if let BuiltinGraph::Uncolored(p) = builtin("petersen").unwrap() {
            assert_eq!(subdivide(&p).girth(), Some(10));
        }
    }

    #[test]
    fn bipartition_unique_up_to_swap() {
        let g = colored("heawood");
        // Recompute the bipartition after a relabeling: classes must match
        // as a partition (up to swapping the two sides).
        let perm = Permutation::parse_cycles("(1,9)(2,12)(5,7,11)", 14).unwrap();
        let relabeled = g.graph().relabel(&perm);
        let colors = relabeled.bipartition().unwrap();
        let class_a: std::collections::BTreeSet<usize> = (0..14)
            .filter(|&v| colors[v] == Color::Black)
            .map(|v| perm.inverse().apply(v))
            .collect();
        let orig_black: std::collections::BTreeSet<usize> = g.black_vertices().into_iter().collect();
        let orig_white: std::collections::BTreeSet<usize> = g.white_vertices().into_iter().collect();
        assert!(class_a == orig_black || class_a == orig_white);
    }

    #[test]
    fn dual_swaps_classes() {
        let hw = colored("heawood");
        let d = hw.dual();
        assert_eq!(d.black_vertices().len(), 7);
        assert_eq!(d.edges().len(), 21);
        // Involution up to the fixed renumbering convention.
        assert_eq!(d.dual().edges(), hw.edges());
    }

    #[test]
    fn explicit_coloring_respected_or_rejected() {
        let mut map = BTreeMap::new();
        map.insert(1usize, Color::Black);
        let g = ColoredBipartiteGraph::from_edge_list(&[(0, 1)], Some(&map), None).unwrap();
        assert_eq!(g.color(1), Color::Black);
        assert_eq!(g.color(0), Color::White);

        let mut bad = BTreeMap::new();
        bad.insert(0usize, Color::Black);
        bad.insert(1usize, Color::Black);
        assert!(ColoredBipartiteGraph::from_edge_list(&[(0, 1)], Some(&bad), None).is_err());
    }
}
