use super::{Color, ColoredBipartiteGraph};

/// DOT export; black vertices render filled. `labels`, when given, must list
/// one label per vertex (Levi graphs pass coset representatives).
pub fn to_dot(g: &ColoredBipartiteGraph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph {\n");
    if let Some(id) = g.id() {
        out.push_str(&format!("  label=\"{}\";\n", escape(id)));
    }
    for v in 0..g.n() {
        let label = match labels {
            Some(ls) => escape(&ls[v]),
            None => v.to_string(),
        };
        let style = match g.color(v) {
            Color::Black => " style=filled fillcolor=black fontcolor=white",
            Color::White => "",
        };
        out.push_str(&format!("  v{v} [label=\"{label}\"{style}];\n"));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  v{u} -- v{v};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
