use super::{PermGroup, Permutation};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Bitset over element indices of an [`ElementTable`].
#[derive(Clone, PartialEq, Eq, Hash)]
struct ElemSet {
    words: Vec<u64>,
    len: u32,
}

impl ElemSet {
    fn empty(n: usize) -> Self {
        ElemSet {
            words: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    fn insert(&mut self, i: u32) -> bool {
        let w = (i / 64) as usize;
        let bit = 1u64 << (i % 64);
        if self.words[w] & bit == 0 {
            self.words[w] |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    fn contains(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }

    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(w as u32 * 64 + b)
                }
            })
        })
    }

    /// Order so that the set with the smaller lowest differing element wins;
    /// for equal-size sets this is lexicographic order on sorted element
    /// lists.
    fn set_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let low = diff.trailing_zeros();
                return if a & (1u64 << low) != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// Element-indexed view of a small group: sorted element list plus fast
/// composition. A full multiplication table is materialized below
/// [`MUL_TABLE_LIMIT`].
pub(crate) struct ElementTable {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul_table: Option<Vec<u32>>,
    inv: Vec<u32>,
    pub orders: Vec<u32>,
    identity: u32,
}

const MUL_TABLE_LIMIT: usize = 2048;

impl ElementTable {
    pub fn build(group: &PermGroup, cap: u128) -> Result<ElementTable> {
        let elements = group.elements(cap)?;
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let identity = index[&Permutation::identity(group.degree())];
        let mul_table = if n <= MUL_TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)];
                }
            }
            Some(t)
        } else {
            None
        };
        let inv: Vec<u32> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let mut orders = vec![0u32; n];
        for i in 0..n as u32 {
            let mut o = 1;
            let mut x = i;
            while x != identity {
                x = Self::mul_raw(&elements, &index, &mul_table, x, i);
                o += 1;
            }
            orders[i as usize] = o;
        }
        Ok(ElementTable {
            elements,
            index,
            mul_table,
            inv,
            orders,
            identity,
        })
    }

    fn mul_raw(
        elements: &[Permutation],
        index: &HashMap<Permutation, u32>,
        table: &Option<Vec<u32>>,
        i: u32,
        j: u32,
    ) -> u32 {
        match table {
            Some(t) => t[i as usize * elements.len() + j as usize],
            None => index[&elements[i as usize].compose(&elements[j as usize])],
        }
    }

    /// Index of `elements[i] ∘ elements[j]` (right factor acts first).
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        Self::mul_raw(&self.elements, &self.index, &self.mul_table, i, j)
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv[g as usize])
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }
}

struct ClassRecord {
    rep_set: ElemSet,
    gens: Vec<u32>,
    canonical: ElemSet,
}

/// All subgroups of `group` up to conjugacy, one representative each.
///
/// Seeded with cyclic subgroups, then closed under extension by prime-power
/// order elements; every distinct subgroup encountered is registered with its
/// full conjugation orbit so duplicates are a single lookup. Representatives
/// are rebuilt from the lexicographically least conjugate, so the output does
/// not depend on discovery order.
pub fn subgroup_classes(group: &PermGroup, order_cap: u128) -> Result<Vec<PermGroup>> {
    if !group.order_exact() || group.order() > order_cap {
        return Err(Error::CapExceeded {
            what: "group order",
            value: group.order(),
            cap: order_cap,
        });
    }
    let tbl = ElementTable::build(group, order_cap)?;
    let n = tbl.len();
    let group_gens: Vec<u32> = group
        .generators()
        .iter()
        .map(|g| tbl.index_of(g).expect("generator is an element"))
        .collect();

    let mut classes: Vec<ClassRecord> = Vec::new();
    let mut registry: HashMap<ElemSet, u32> = HashMap::new();

    let conj_set = |g: u32, s: &ElemSet| -> ElemSet {
        let mut out = ElemSet::empty(n);
        for x in s.iter() {
            out.insert(tbl.conj(g, x));
        }
        out
    };

    let mut register = |set: ElemSet, gens: Vec<u32>, classes: &mut Vec<ClassRecord>| {
        if registry.contains_key(&set) {
            return;
        }
        let id = classes.len() as u32;
        let mut canonical = set.clone();
        let mut frontier = vec![set.clone()];
        registry.insert(set.clone(), id);
        while let Some(cur) = frontier.pop() {
            for &g in &group_gens {
                let img = conj_set(g, &cur);
                if !registry.contains_key(&img) {
                    if img.set_cmp(&canonical) == std::cmp::Ordering::Less {
                        canonical = img.clone();
                    }
                    registry.insert(img.clone(), id);
                    frontier.push(img);
                }
            }
        }
        classes.push(ClassRecord {
            rep_set: set,
            gens,
            canonical,
        });
    };

    // Cyclic seeds (the trivial group comes from the identity element).
    for x in 0..n as u32 {
        let mut set = ElemSet::empty(n);
        let mut y = tbl.identity();
        loop {
            set.insert(y);
            y = tbl.mul(y, x);
            if y == tbl.identity() {
                break;
            }
        }
        let gens = if x == tbl.identity() { vec![] } else { vec![x] };
        register(set, gens, &mut classes);
    }

    // Any subgroup is generated by its elements of prime-power order, so
    // those are the only extension candidates needed.
    let prime_power: Vec<u32> = (0..n as u32)
        .filter(|&i| is_prime_power(tbl.orders[i as usize]))
        .collect();

    let mut next = 0usize;
    while next < classes.len() {
        let rep_set = classes[next].rep_set.clone();
        let gens = classes[next].gens.clone();
        let members: Vec<u32> = rep_set.iter().collect();
        next += 1;
        for &g in &prime_power {
            if rep_set.contains(g) {
                continue;
            }
            let mut grown = rep_set.clone();
            let mut all_gens = gens.clone();
            all_gens.push(g);
            // Coset scan: walk representatives of right cosets of the seed
            // subgroup inside the closure.
            let mut queue = vec![tbl.identity()];
            let mut head = 0;
            while head < queue.len() {
                let r = queue[head];
                head += 1;
                for &a in &all_gens {
                    let t = tbl.mul(r, a);
                    if !grown.contains(t) {
                        for &s in &members {
                            grown.insert(tbl.mul(s, t));
                        }
                        queue.push(t);
                    }
                }
            }
            register(grown, all_gens, &mut classes);
        }
    }

    // Deterministic output: rebuild each representative from its canonical
    // (least) conjugate, sorted by order then by that set.
    let mut keyed: Vec<(&ClassRecord, u32)> = classes.iter().map(|c| (c, c.rep_set.len)).collect();
    keyed.sort_by(|(a, alen), (b, blen)| alen.cmp(blen).then(a.canonical.set_cmp(&b.canonical)));
    let mut out = Vec::with_capacity(keyed.len());
    for (class, _) in keyed {
        let gens = minimal_generators(&tbl, &class.canonical);
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|&i| tbl.elements[i as usize].clone())
            .collect();
        out.push(PermGroup::from_generators(group.degree(), &perms)?);
    }
    Ok(out)
}

/// Greedy generating sequence for the subgroup `set`, scanning elements in
/// index order and keeping those that grow the running closure.
fn minimal_generators(tbl: &ElementTable, set: &ElemSet) -> Vec<u32> {
    let n = tbl.len();
    let target = set.len;
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = ElemSet::empty(n);
    closed.insert(tbl.identity());
    for x in set.iter() {
        if closed.contains(x) {
            continue;
        }
        let members: Vec<u32> = closed.iter().collect();
        gens.push(x);
        let mut queue = vec![tbl.identity()];
        let mut head = 0;
        while head < queue.len() {
            let r = queue[head];
            head += 1;
            for &a in &gens {
                let t = tbl.mul(r, a);
                if !closed.contains(t) {
                    for &s in &members {
                        closed.insert(tbl.mul(s, t));
                    }
                    queue.push(t);
                }
            }
        }
        if closed.len == target {
            break;
        }
    }
    gens
}

fn is_prime_power(mut n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 0;
    for cand in 2..=n {
        if n.is_multiple_of(cand) {
            p = cand;
            break;
        }
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
