//! Brute-force reference computations by explicit enumeration.
//!
//! Nothing here touches stabilizer chains or Schreier vectors; these routines
//! exist to check the fast paths on groups small enough to list.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::dummy::CanonResult;
use crate::perm::SignedPerm;
use crate::schreier::point_ranks;

/// Every element of the group generated by `generators`.
pub fn closure(generators: &[SignedPerm], degree: usize) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(degree);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The double coset `<left> * g * <right>` as an explicit set.
pub fn double_coset(left: &[SignedPerm], g: &SignedPerm, right: &[SignedPerm]) -> Vec<SignedPerm> {
    let mut seen: HashSet<SignedPerm> = HashSet::from([g.clone()]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(x) = queue.pop_front() {
        let next = left.iter().map(|s| s * &x).chain(right.iter().map(|d| &x * d));
        for y in next {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Base image of `x` as ranks in the order induced by `extended_base`.
pub fn base_image_key(x: &SignedPerm, extended_base: &[usize]) -> Vec<usize> {
    let ranks = point_ranks(extended_base, x.degree());
    extended_base.iter().map(|&b| ranks[x.image(b)]).collect()
}

/// Element with the least base image, or `Zero` if some permutation occurs
/// with both signs.
pub fn least_by_base(elements: &[SignedPerm], extended_base: &[usize]) -> CanonResult {
    let mut signs: HashMap<Vec<u32>, bool> = HashMap::new();
    for x in elements {
        if let Some(&neg) = signs.get(x.raw()) {
            if neg != x.is_negative() {
                return CanonResult::Zero;
            }
        }
        signs.insert(x.raw().to_vec(), x.is_negative());
    }
    elements
        .iter()
        .min_by_key(|x| base_image_key(x, extended_base))
        .cloned()
        .map_or(CanonResult::Zero, CanonResult::Canonical)
}

/// Canonical representative of `<s_gens> * g * <d_gens>` by enumeration.
pub fn double_coset_rep(
    s_gens: &[SignedPerm],
    g: &SignedPerm,
    d_gens: &[SignedPerm],
    extended_base: &[usize],
) -> CanonResult {
    least_by_base(&double_coset(s_gens, g, d_gens), extended_base)
}

/// Canonical representative of the right coset `<s_gens> * g` by enumeration.
pub fn coset_rep(s_gens: &[SignedPerm], g: &SignedPerm, extended_base: &[usize]) -> CanonResult {
    double_coset_rep(s_gens, g, &[], extended_base)
}
