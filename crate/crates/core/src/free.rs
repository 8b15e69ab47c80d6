//! Single-coset canonicalization for free indices.
//!
//! This is the double-coset search with a trivial dummy group. When only some
//! labels are free, the remaining labels compare equal, so the search fixes
//! the canonical slots of the free labels and leaves the rest of the
//! configuration as found.

use crate::dummy::{CanonResult, DummySpec, Order, Search, SearchOutcome, DEFAULT_MAX_ENTRIES};
use crate::error::{Error, Result};
use crate::perm::SignedPerm;
use crate::schreier::{extend_base, StrongGenSet};

/// Least element of the coset `S * g`, every label being distinguished.
pub fn free_can_rep(g: &SignedPerm, base: &[usize], generators: &[SignedPerm]) -> Result<CanonResult> {
    let all: Vec<usize> = (1..=g.degree()).collect();
    Ok(free_search(g, base, generators, &all)?.result)
}

/// Element of `S * g` placing `free_labels` in their least slots (compared
/// along the extended base); other labels are left where the search finds them.
pub fn free_positions_can_rep(
    g: &SignedPerm,
    base: &[usize],
    generators: &[SignedPerm],
    free_labels: &[usize],
) -> Result<CanonResult> {
    Ok(free_search(g, base, generators, free_labels)?.result)
}

pub fn free_search(
    g: &SignedPerm,
    base: &[usize],
    generators: &[SignedPerm],
    free_labels: &[usize],
) -> Result<SearchOutcome> {
    let degree = g.degree();
    if let Some(&bad) = free_labels.iter().find(|&&l| l == 0 || l > degree) {
        return Err(Error::PointOutOfRange { point: bad, degree });
    }
    let ext_base = extend_base(base, degree);
    let sgs = StrongGenSet::schreier_sims(generators, &ext_base, degree)?;
    let trivial = DummySpec::new(degree, Default::default(), Vec::new())?;
    Search {
        sgs,
        ext_base,
        g,
        dummy: &trivial,
        order: Order::Selected(free_labels.to_vec()),
        max_entries: DEFAULT_MAX_ENTRIES,
    }
    .run()
}
