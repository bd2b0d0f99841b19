use super::{lcm, PermGroup, Permutation};
use crate::error::Result;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// Isomorphism-sensitive descriptor of a finite group. Equal fingerprints
/// are necessary, not sufficient, for isomorphism; the analysis tables carry
/// these instead of structure names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupFingerprint {
    pub order: u128,
    pub abelian: bool,
    pub exponent: u64,
    /// Orders along the derived series, starting at the group itself and
    /// ending at 1 or at the first repetition (perfect groups repeat).
    pub derived_series_lengths: Vec<u128>,
    pub center_order: u128,
    pub element_order_histogram: BTreeMap<u64, u64>,
}

/// Computes the fingerprint by full element enumeration under `cap`.
pub fn fingerprint(group: &PermGroup, cap: u128) -> Result<GroupFingerprint> {
    let elems = group.elements(cap)?;
    let degree = group.degree();
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut exponent = 1u64;
    for e in &elems {
        let o = e.order();
        *histogram.entry(o).or_insert(0) += 1;
        exponent = lcm(exponent, o);
    }
    let abelian = group
        .generators()
        .iter()
        .enumerate()
        .all(|(i, a)| group.generators()[i..].iter().all(|b| a.compose(b) == b.compose(a)));
    let center_order = elems
        .iter()
        .filter(|z| group.generators().iter().all(|g| z.compose(g) == g.compose(z)))
        .count() as u128;

    let mut lengths = vec![elems.len() as u128];
    if elems.len() > 1 {
        let mut current = elems.clone();
        loop {
            let next = derived_subgroup_elements(&current, degree);
            lengths.push(next.len() as u128);
            if next.len() == current.len() || next.len() == 1 {
                break;
            }
            current = next;
        }
    }

    Ok(GroupFingerprint {
        order: elems.len() as u128,
        abelian,
        exponent,
        derived_series_lengths: lengths,
        center_order,
        element_order_histogram: histogram,
    })
}

fn derived_subgroup_elements(elems: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut commutators: HashSet<Permutation> = HashSet::new();
    for a in elems {
        let a_inv = a.inverse();
        for b in elems {
            commutators.insert(a.compose(b).compose(&a_inv).compose(&b.inverse()));
        }
    }
    let gens: Vec<Permutation> = commutators.into_iter().collect();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in &gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
