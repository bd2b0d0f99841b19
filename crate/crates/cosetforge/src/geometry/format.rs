use super::CosetGeometry;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Parses the geometry text format: a `degree` line followed by `group`,
/// `sub0`, and `sub1` lines, each listing whitespace-separated permutations
/// in 1-based cycle notation (`()` for the identity). `#` starts a comment.
///
/// ```text
/// degree 5
/// group (2,3)(4,5) (1,2)(3,4) (2,5)(3,4)
/// sub0 (1,2)(3,4) (2,5)(3,4)
/// sub1 (2,3)(4,5) (2,5)(3,4)
/// ```
pub fn parse_geometry(contents: &str, config: &RunConfig) -> Result<CosetGeometry> {
    let mut degree: Option<usize> = None;
    let mut group_gens: Option<Vec<Permutation>> = None;
    let mut sub0_gens: Option<Vec<Permutation>> = None;
    let mut sub1_gens: Option<Vec<Permutation>> = None;
    for (lineno, raw) in contents.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "degree" => {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad degree `{rest}`")))?;
                if n == 0 || n > 1 << 16 {
                    return Err(bad(format!("degree {n} out of range")));
                }
                degree = Some(n);
            }
            "group" | "sub0" | "sub1" => {
                let n = degree.ok_or_else(|| bad("degree must come first".to_string()))?;
                let mut gens = Vec::new();
                for tok in rest.split_whitespace() {
                    gens.push(Permutation::parse_cycles(tok, n)?);
                }
                match key {
                    "group" => group_gens = Some(gens),
                    "sub0" => sub0_gens = Some(gens),
                    _ => sub1_gens = Some(gens),
                }
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing `degree` line".into()))?;
    let group_gens = group_gens.ok_or_else(|| Error::Parse("missing `group` line".into()))?;
    let sub0_gens = sub0_gens.ok_or_else(|| Error::Parse("missing `sub0` line".into()))?;
    let sub1_gens = sub1_gens.ok_or_else(|| Error::Parse("missing `sub1` line".into()))?;
    let group = PermGroup::from_generators(degree, &group_gens)?;
    super::make_coset_geometry(&group, &sub0_gens, &sub1_gens, config)
}

/// Writes the geometry text format.
pub fn write_geometry(geom: &CosetGeometry) -> String {
    let fmt_gens = |g: &PermGroup| -> String {
        if g.generators().is_empty() {
            "()".to_string()
        } else {
            g.generators()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    format!(
        "degree {}\ngroup {}\nsub0 {}\nsub1 {}\n",
        geom.group().degree(),
        fmt_gens(geom.group()),
        fmt_gens(geom.sub0()),
        fmt_gens(geom.sub1()),
    )
}
