use super::Permutation;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// One level of the stabilizer chain: a base point, generators of the group
/// stabilizing every earlier base point, and the basic orbit with an explicit
/// transversal (`transversal[p]` maps the base point to `p`).
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: HashMap<usize, Permutation>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(point, Permutation::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.orbit.push(self.point);
        self.transversal
            .insert(self.point, Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let rep = self.transversal[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(q) {
                    e.insert(g.compose(&rep));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group with a base and strong generating set, built by a
/// deterministic Schreier–Sims pass. Immutable once constructed.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
    order: u128,
    order_exact: bool,
}

impl serde::Serialize for PermGroup {
    /// Degree plus generator image arrays; the chain is reconstruction
    /// detail.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PermGroup", 2)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("generators", &self.generators)?;
        s.end()
    }
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: Vec::new(),
            order: 1,
            order_exact: true,
        }
    }

    /// Builds the group generated by `gens`, with base points chosen as the
    /// smallest moved point first.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::from_generators_with_base_hint(degree, gens, &[])
    }

    /// Builds the same group as [`PermGroup::from_generators`] but keeps
    /// only generators that grow the running closure, so groups handed a
    /// whole element list end up with a short generating sequence.
    pub fn from_generators_reduced(degree: usize, gens: &[Permutation]) -> Result<Self> {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            if !current.member(g) {
                kept.push(g.clone());
                current = PermGroup::from_generators(degree, &kept)?;
            }
        }
        Ok(current)
    }

    /// Like [`PermGroup::from_generators`], but base points are drawn from
    /// `base_hint` (in hint order) before falling back to smallest moved
    /// points. Stabilizers of the hinted points can then be read off the
    /// chain.
    pub fn from_generators_with_base_hint(
        degree: usize,
        gens: &[Permutation],
        base_hint: &[usize],
    ) -> Result<Self> {
        let mut uniq: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            if !g.is_identity() && !uniq.contains(g) {
                uniq.push(g.clone());
            }
        }
        let mut group = PermGroup {
            degree,
            generators: uniq,
            chain: Vec::new(),
            order: 1,
            order_exact: true,
        };
        group.schreier_sims(base_hint);
        Ok(group)
    }

    fn next_base_point(&self, g: &Permutation, base_hint: &[usize]) -> usize {
        let in_base = |p: usize| self.chain.iter().any(|l| l.point == p);
        for &p in base_hint {
            if g.apply(p) != p && !in_base(p) {
                return p;
            }
        }
        (0..self.degree)
            .find(|&p| g.apply(p) != p && !in_base(p))
            .expect("non-identity permutation moves a point")
    }

    fn schreier_sims(&mut self, base_hint: &[usize]) {
        if self.generators.is_empty() {
            return;
        }
        // Hinted points become the base prefix unconditionally (singleton
        // orbits are harmless), so stabilizers of the hint can be read off
        // the chain.
        for &p in base_hint {
            if p < self.degree && !self.chain.iter().any(|l| l.point == p) {
                self.chain.push(Level::new(self.degree, p));
            }
        }
        if self.chain.is_empty() {
            let point = (0..self.degree)
                .find(|&p| self.generators.iter().any(|g| g.apply(p) != p))
                .expect("non-identity generators move a point");
            self.chain.push(Level::new(self.degree, point));
        }
        self.chain[0].gens = self.generators.clone();
        self.chain[0].recompute_orbit(self.degree);

        let mut level = self.chain.len() - 1;
        'outer: loop {
            // Verify that every Schreier generator of `level` sifts through
            // the chain below it.
            let orbit = self.chain[level].orbit.clone();
            let gens = self.chain[level].gens.clone();
            for &p in &orbit {
                let rep = self.chain[level].transversal[&p].clone();
                for s in &gens {
                    let q = s.apply(p);
                    let rep_q = self.chain[level].transversal[&q].clone();
                    let schreier = rep_q.inverse().compose(&s.compose(&rep));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, reached) = self.strip(&schreier, level + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    // New strong generator for levels level+1 ..= reached.
                    if reached == self.chain.len() {
                        let pt = self.next_base_point(&residue, base_hint);
                        self.chain.push(Level::new(self.degree, pt));
                    }
                    for l in (level + 1)..=reached {
                        self.chain[l].gens.push(residue.clone());
                        self.chain[l].recompute_orbit(self.degree);
                    }
                    level = reached;
                    continue 'outer;
                }
            }
            if level == 0 {
                break;
            }
            level -= 1;
        }

        let mut order: u128 = 1;
        let mut exact = true;
        for l in &self.chain {
            let (v, overflow) = order.overflowing_mul(l.orbit.len() as u128);
            if overflow {
                exact = false;
                order = u128::MAX;
                break;
            }
            order = v;
        }
        self.order = order;
        self.order_exact = exact;
    }

    /// Sifts `g` through chain levels starting at `from`, returning the
    /// residue and the first level it could not pass (or the chain length).
    fn strip_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut residue = g.clone();
        for (i, lvl) in self.chain.iter().enumerate().skip(from) {
            let q = residue.apply(lvl.point);
            if q == lvl.point {
                continue;
            }
            match lvl.transversal.get(&q) {
                None => return (residue, i),
                Some(t) => residue = t.inverse().compose(&residue),
            }
        }
        (residue, self.chain.len())
    }

    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        self.strip_from(g, from)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Group order. Saturates at `u128::MAX` for absurdly large groups; see
    /// [`PermGroup::order_exact`].
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn order_exact(&self) -> bool {
        self.order_exact
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.chain {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Membership test by sifting.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: p.degree(),
            });
        }
        Ok(self.member(p))
    }

    pub(crate) fn member(&self, p: &Permutation) -> bool {
        debug_assert_eq!(p.degree(), self.degree);
        self.strip(p, 0).0.is_identity()
    }

    /// True when every generator of `sub` sifts into `self`.
    pub fn has_subgroup(&self, sub: &PermGroup) -> bool {
        sub.degree == self.degree && sub.generators.iter().all(|g| self.member(g))
    }

    /// Orbit of `point` under the group, sorted ascending.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// All orbits on `0..degree`, sorted by their minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p);
                for &q in &orb {
                    seen[q] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    /// The subgroup fixing `point`, via a chain rebuilt with `point` first.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// The subgroup fixing every listed point.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let rebuilt =
            PermGroup::from_generators_with_base_hint(self.degree, &self.generators, points)
                .expect("degrees already validated");
        let gens: Vec<Permutation> = rebuilt
            .strong_generators()
            .into_iter()
            .filter(|g| points.iter().all(|&p| g.apply(p) == p))
            .collect();
        PermGroup::from_generators_with_base_hint(self.degree, &gens, points)
            .expect("degrees already validated")
    }

    /// Lists every element, sorted by image array. Errors when the order
    /// exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        if !self.order_exact || self.order > cap {
            return Err(Error::CapExceeded {
                what: "group order",
                value: self.order,
                cap,
            });
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for lvl in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lvl.orbit.len());
            for &p in &lvl.orbit {
                let u = &lvl.transversal[&p];
                for h in &elems {
                    next.push(u.compose(h));
                }
            }
            elems = next;
        }
        elems.sort_unstable();
        debug_assert_eq!(elems.len() as u128, self.order);
        Ok(elems)
    }

    /// Action on a family of ordered tuples: like
    /// [`PermGroup::induced_action_on_sets`] but tuples match positionally,
    /// so blocks with equal underlying sets stay distinct.
    pub fn induced_action_on_tuples(&self, blocks: &[Vec<usize>]) -> Result<InducedAction> {
        self.induced_action_impl(blocks, false)
    }

    /// Action on a family of vertex sets: the image group on block indices
    /// plus the kernel (elements fixing every block setwise).
    pub fn induced_action_on_sets(&self, blocks: &[Vec<usize>]) -> Result<InducedAction> {
        self.induced_action_impl(blocks, true)
    }

    fn induced_action_impl(&self, blocks: &[Vec<usize>], as_sets: bool) -> Result<InducedAction> {
        let k = blocks.len();
        let mut keyed_blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            let mut s = b.clone();
            if as_sets {
                s.sort_unstable();
                s.dedup();
            }
            if s.iter().any(|&v| v >= self.degree) {
                return Err(Error::NotInvariant(format!(
                    "block {i} mentions a point outside the domain"
                )));
            }
            index.insert(s.clone(), i);
            keyed_blocks.push(s);
        }
        let mut image_gens = Vec::new();
        let mut extended_gens = Vec::new();
        for g in &self.generators {
            let mut block_images = Vec::with_capacity(k);
            for (i, b) in keyed_blocks.iter().enumerate() {
                let mut img: Vec<usize> = b.iter().map(|&v| g.apply(v)).collect();
                if as_sets {
                    img.sort_unstable();
                }
                match index.get(&img) {
                    Some(&j) => block_images.push(j),
                    None => {
                        return Err(Error::NotInvariant(format!(
                            "generator {g} does not map block {i} onto a block"
                        )))
                    }
                }
            }
            image_gens.push(Permutation::from_images(block_images.clone()).map_err(|_| {
                Error::NotInvariant("generator does not permute the blocks".into())
            })?);
            let mut ext = g.images().to_vec();
            ext.extend(block_images.iter().map(|&j| self.degree + j));
            extended_gens.push(Permutation::from_images(ext).expect("extension is a bijection"));
        }
        let image = PermGroup::from_generators(k, &image_gens)?;
        // Kernel: stabilize all block indices first, then read off the chain.
        let hint: Vec<usize> = (self.degree..self.degree + k).collect();
        let extended = PermGroup::from_generators_with_base_hint(
            self.degree + k,
            &extended_gens,
            &hint,
        )?;
        let kernel_gens: Vec<Permutation> = extended
            .strong_generators()
            .into_iter()
            .filter(|g| (self.degree..self.degree + k).all(|j| g.apply(j) == j))
            .map(|g| {
                Permutation::from_images(g.images()[..self.degree].to_vec())
                    .expect("restriction stays a bijection")
            })
            .collect();
        let kernel = PermGroup::from_generators(self.degree, &kernel_gens)?;
        Ok(InducedAction { image, kernel })
    }
}

/// Result of restricting a group action to a family of blocks.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub image: PermGroup,
    pub kernel: PermGroup,
}
