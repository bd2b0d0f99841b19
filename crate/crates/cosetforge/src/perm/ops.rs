use super::{PermGroup, Permutation};
use crate::error::{Error, Result};
use std::collections::HashMap;

fn require_subgroup(h: &PermGroup, g: &PermGroup, what: &str) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            got: h.degree(),
        });
    }
    if !g.has_subgroup(h) {
        return Err(Error::NotSubgroup(what.to_string()));
    }
    Ok(())
}

/// `⟨sub ∪ extra⟩` on the same domain.
pub fn closure(sub: &PermGroup, extra: &[Permutation]) -> Result<PermGroup> {
    let mut gens = sub.generators().to_vec();
    for p in extra {
        if p.degree() != sub.degree() {
            return Err(Error::DegreeMismatch {
                expected: sub.degree(),
                got: p.degree(),
            });
        }
        gens.push(p.clone());
    }
    PermGroup::from_generators(sub.degree(), &gens)
}

/// Whether `h` is normal in `g`; requires `h ≤ g`.
pub fn is_normal_in(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    require_subgroup(h, g, "is_normal_in needs H ≤ G")?;
    for outer in g.generators() {
        for inner in h.generators() {
            if !h.member(&outer.conjugate(inner)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Left cosets of `h` in `g`, each as its lexicographically least element.
/// Returned sorted. `cap` bounds both `|h|` and the index.
pub(crate) fn coset_representatives(
    g: &PermGroup,
    h_elems: &[Permutation],
    cap: u128,
) -> Result<Vec<Permutation>> {
    let canon = |x: &Permutation| -> Permutation {
        h_elems
            .iter()
            .map(|e| x.compose(e))
            .min()
            .expect("subgroup has at least the identity")
    };
    let start = canon(&Permutation::identity(g.degree()));
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let rep = queue[head].clone();
        head += 1;
        for gen in g.generators() {
            let next = canon(&gen.compose(&rep));
            if !seen.contains_key(&next) {
                if queue.len() as u128 + 1 > cap {
                    return Err(Error::CapExceeded {
                        what: "subgroup index",
                        value: queue.len() as u128 + 1,
                        cap,
                    });
                }
                seen.insert(next.clone(), ());
                queue.push(next);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// Maximality of `h` in `g` by the double-coset representative test: for one
/// representative of every non-trivial (h, h)-double coset, `⟨h, rep⟩` must
/// already be the whole group.
pub fn is_maximal_in(h: &PermGroup, g: &PermGroup, cap: u128) -> Result<bool> {
    require_subgroup(h, g, "is_maximal_in needs H ≤ G")?;
    if h.order() == g.order() {
        return Err(Error::NotProper);
    }
    let h_elems = h.elements(cap)?;
    let reps = coset_representatives(g, &h_elems, cap)?;
    let canon = |x: &Permutation| -> Permutation {
        h_elems
            .iter()
            .map(|e| x.compose(e))
            .min()
            .expect("nonempty")
    };
    let identity_rep = canon(&Permutation::identity(g.degree()));
    let mut covered: HashMap<Permutation, ()> = HashMap::new();
    covered.insert(identity_rep, ());
    for rep in &reps {
        if covered.contains_key(rep) {
            continue;
        }
        let grown = closure(h, std::slice::from_ref(rep))?;
        if grown.order() != g.order() {
            return Ok(false);
        }
        // Mark every coset inside the double coset h·rep·h.
        for e in &h_elems {
            covered.insert(canon(&e.compose(rep)), ());
        }
    }
    Ok(true)
}

/// The coset action of `g` on left cosets of `h`: sorted canonical
/// representatives plus the permutation induced by each generator of `g`.
pub(crate) fn coset_action(
    g: &PermGroup,
    h: &PermGroup,
    element_cap: u128,
    index_cap: u128,
) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    let h_elems = h.elements(element_cap)?;
    let reps = coset_representatives(g, &h_elems, index_cap)?;
    let index: HashMap<&Permutation, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let canon = |x: &Permutation| -> Permutation {
        h_elems
            .iter()
            .map(|e| x.compose(e))
            .min()
            .expect("nonempty")
    };
    let mut action = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let images: Vec<usize> = reps
            .iter()
            .map(|r| index[&canon(&gen.compose(r))])
            .collect();
        action.push(Permutation::from_images(images).expect("coset action is a bijection"));
    }
    Ok((reps, action))
}

/// The core of `h` in `g`: the largest normal subgroup of `g` inside `h`,
/// computed as the kernel of the action of `g` on left cosets of `h`.
pub fn core_in(h: &PermGroup, g: &PermGroup, element_cap: u128, index_cap: u128) -> Result<PermGroup> {
    require_subgroup(h, g, "core_in needs H ≤ G")?;
    let (reps, action) = coset_action(g, h, element_cap, index_cap)?;
    let k = reps.len();
    let n = g.degree();
    let mut extended = Vec::with_capacity(g.generators().len());
    for (gen, act) in g.generators().iter().zip(&action) {
        let mut ext = gen.images().to_vec();
        ext.extend(act.images().iter().map(|&j| n + j));
        extended.push(Permutation::from_images(ext).expect("extension is a bijection"));
    }
    let hint: Vec<usize> = (n..n + k).collect();
    let big = PermGroup::from_generators_with_base_hint(n + k, &extended, &hint)?;
    let kernel_gens: Vec<Permutation> = big
        .strong_generators()
        .into_iter()
        .filter(|p| (n..n + k).all(|j| p.apply(j) == j))
        .map(|p| Permutation::from_images(p.images()[..n].to_vec()).expect("restriction valid"))
        .collect();
    PermGroup::from_generators(n, &kernel_gens)
}

/// `{x ∈ g : x h x⁻¹ = h}` by element scan, capped.
pub fn normalizer_in(h: &PermGroup, g: &PermGroup, cap: u128) -> Result<PermGroup> {
    require_subgroup(h, g, "normalizer_in needs H ≤ G")?;
    let elems = g.elements(cap)?;
    let normalizing: Vec<Permutation> = elems
        .into_iter()
        .filter(|x| h.generators().iter().all(|hg| h.member(&x.conjugate(hg))))
        .collect();
    PermGroup::from_generators_reduced(g.degree(), &normalizing)
}

/// Some `x ∈ g` with `x a x⁻¹ = b`, or `None` when `a` and `b` are not
/// conjugate in `g`.
pub fn transporter(
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    cap: u128,
) -> Result<Option<Permutation>> {
    require_subgroup(a, g, "transporter needs A ≤ G")?;
    require_subgroup(b, g, "transporter needs B ≤ G")?;
    if a.order() != b.order() {
        return Ok(None);
    }
    let elems = g.elements(cap)?;
    for x in elems {
        if a.generators().iter().all(|ag| b.member(&x.conjugate(ag))) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Largest element order, by full enumeration under the cap.
pub fn max_element_order(g: &PermGroup, cap: u128) -> Result<u64> {
    let elems = g.elements(cap)?;
    Ok(elems.iter().map(Permutation::order).max().unwrap_or(1))
}

/// 2 when `g` is transitive on ordered pairs of distinct points of `set`
/// (requires `|set| ≥ 2`), else 1 when transitive on `set`, else 0.
pub fn transitivity_degree(g: &PermGroup, set: &[usize]) -> Result<u8> {
    let members: std::collections::HashSet<usize> = set.iter().copied().collect();
    for gen in g.generators() {
        for &p in set {
            if !members.contains(&gen.apply(p)) {
                return Err(Error::NotInvariant(format!(
                    "generator {gen} moves {p} outside the set"
                )));
            }
        }
    }
    if set.is_empty() {
        return Ok(0);
    }
    let orbit = orbit_within(g, set[0]);
    if !set.iter().all(|p| orbit.contains(p)) {
        return Ok(0);
    }
    if set.len() < 2 {
        return Ok(1);
    }
    // Orbit of one ordered pair.
    let target = set.len() * (set.len() - 1);
    let start = (set[0], set[1]);
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    seen.insert(start);
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let (x, y) = queue[head];
        head += 1;
        for gen in g.generators() {
            let next = (gen.apply(x), gen.apply(y));
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    Ok(if seen.len() == target { 2 } else { 1 })
}

fn orbit_within(g: &PermGroup, point: usize) -> std::collections::HashSet<usize> {
    let mut seen = std::collections::HashSet::new();
    seen.insert(point);
    let mut queue = vec![point];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for gen in g.generators() {
            let q = gen.apply(p);
            if seen.insert(q) {
                queue.push(q);
            }
        }
    }
    seen
}
