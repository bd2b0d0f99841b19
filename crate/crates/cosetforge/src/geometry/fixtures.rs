//! Worked geometries used by the CLI fixtures and the test suite.

use super::CosetGeometry;
use crate::error::Result;
use crate::perm::{PermGroup, Permutation};

/// The 1-skeleton of the hemidodecahedron as a coset geometry over the
/// even-permutation group on 5 points (order 60): the classic example of a
/// connected core-free geometry that is not stable.
pub fn hemidodecahedron() -> CosetGeometry {
    let n = 5;
    let s0 = Permutation::parse_cycles("(2,3)(4,5)", n).unwrap();
    let s1 = Permutation::parse_cycles("(1,2)(3,4)", n).unwrap();
    let s2 = Permutation::parse_cycles("(2,5)(3,4)", n).unwrap();
    let group = PermGroup::from_generators(n, &[s0.clone(), s1.clone(), s2.clone()]).unwrap();
    let sub0 = PermGroup::from_generators(n, &[s1, s2.clone()]).unwrap();
    let sub1 = PermGroup::from_generators(n, &[s0, s2]).unwrap();
    CosetGeometry::new(group, sub0, sub1, 1000).unwrap()
}

/// PSL(2,31) acting on the 32-point projective line, generated by
/// `z ↦ z+1` and `z ↦ -1/z`.
pub fn psl2_31_group() -> PermGroup {
    const P: usize = 31;
    let inf = P; // point 31 is the point at infinity
    let mut t = Vec::with_capacity(P + 1);
    for z in 0..P {
        t.push((z + 1) % P);
    }
    t.push(inf);
    let mut s = Vec::with_capacity(P + 1);
    for z in 0..P {
        if z == 0 {
            s.push(inf);
        } else {
            s.push((P - mod_inverse(z, P)) % P);
        }
    }
    s.push(0);
    let t = Permutation::from_images(t).unwrap();
    let s = Permutation::from_images(s).unwrap();
    PermGroup::from_generators(P + 1, &[t, s]).unwrap()
}

fn mod_inverse(a: usize, p: usize) -> usize {
    // p is prime, so a^(p-2) works.
    let mut result = 1usize;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// The geometry over PSL(2,31) whose maximal parabolics are a dihedral group
/// of order 30 and a subgroup of order 60 intersecting in a dihedral group
/// of order 10.
///
/// Everything is searched deterministically from scratch: the order-60
/// subgroup comes from the first (involution, 3-element) pair whose product
/// has order 5; its Sylow 5-subgroup centralizes to a cyclic group of order
/// 15, whose normalizer is the dihedral partner.
pub fn psl2_31_geometry() -> Result<CosetGeometry> {
    let group = psl2_31_group();
    let elements = group.elements(20_000)?;

    let mut a5: Option<PermGroup> = None;
    'search: for y in elements.iter().filter(|e| e.order() == 3) {
        for x in elements.iter().filter(|e| e.order() == 2) {
            if x.compose(y).order() == 5 {
                let cand = PermGroup::from_generators(group.degree(), &[x.clone(), y.clone()])?;
                if cand.order() == 60 {
                    a5 = Some(cand);
                    break 'search;
                }
            }
        }
    }
    let a5 = a5.expect("a (2,3,5) pair exists in this group");
    let a5_elements = a5.elements(100)?;
    let p5 = a5_elements
        .iter()
        .find(|e| e.order() == 5)
        .expect("order-60 subgroup has 5-elements")
        .clone();

    let centralizer_elems: Vec<Permutation> = elements
        .iter()
        .filter(|g| g.compose(&p5) == p5.compose(g))
        .cloned()
        .collect();
    let torus = PermGroup::from_generators_reduced(group.degree(), &centralizer_elems)?;
    let torus_elems = torus.elements(100)?;
    let normalizer_elems: Vec<Permutation> = elements
        .iter()
        .filter(|g| torus_elems.iter().all(|c| torus.member(&g.conjugate(c))))
        .cloned()
        .collect();
    let dihedral = PermGroup::from_generators_reduced(group.degree(), &normalizer_elems)?;

    let dihedral_elems = dihedral.elements(100)?;
    let borel_elems: Vec<Permutation> = dihedral_elems
        .into_iter()
        .filter(|e| a5.member(e))
        .collect();
    let borel = PermGroup::from_generators_reduced(group.degree(), &borel_elems)?;
    CosetGeometry::with_borel(group, dihedral, a5, borel)
}
