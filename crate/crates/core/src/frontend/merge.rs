use std::collections::HashMap;

use super::defs::Registry;
use super::natural_key;
use super::parse::Expression;
use super::ParseError;
use crate::dummy::Metric;
use crate::perm::SignedPerm;

/// Whether exchanging two factors of the same symbol is free or costs a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Commutation {
    #[default]
    Commuting,
    Anticommuting,
}

/// A monomial merged into one indexed object.
///
/// Labels of the standard configuration are `1..=p` for the free indices (in
/// natural name order) followed by `p + 2j - 1` (upper) and `p + 2j` (lower)
/// for dummy pair `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedTensor {
    pub total_slots: usize,
    pub p: usize,
    pub q: usize,
    /// Symmetry generators on slots: each factor's own, shifted to its block,
    /// then exchanges of equal factors.
    pub generators: Vec<SignedPerm>,
    pub free_names: Vec<String>,
    /// Variance of each free index as written, restored when rendering.
    pub free_up: Vec<bool>,
    pub dummy_names: Vec<String>,
    /// Symbol and rank of each factor, in slot order.
    pub factors: Vec<(String, usize)>,
    pub metric: Metric,
    pub sign: i8,
}

impl MergedTensor {
    /// `(factor, local slot)` for a 1-based merged slot.
    pub fn split(&self, slot: usize) -> (usize, usize) {
        let mut offset = 0;
        for (k, (_, rank)) in self.factors.iter().enumerate() {
            if slot <= offset + rank {
                return (k, slot - offset);
            }
            offset += rank;
        }
        panic!("slot {slot} beyond {}", self.total_slots);
    }
}

/// Merges the factors of `expr` into a single object that inherits every
/// factor's symmetries, plus block exchanges between factors of the same symbol.
pub fn merge_monomial(
    expr: &Expression,
    registry: &Registry,
    metric: Metric,
    commutation: Commutation,
) -> Result<MergedTensor, ParseError> {
    let mut factors = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0;
    for f in &expr.factors {
        let sym = registry
            .get(&f.symbol)
            .ok_or_else(|| ParseError::UnknownSymbol(f.symbol.clone()))?;
        offsets.push(total);
        factors.push((f.symbol.clone(), sym.rank));
        total += sym.rank;
    }

    let mut generators = Vec::new();
    for (k, f) in expr.factors.iter().enumerate() {
        let sym = registry.get(&f.symbol).expect("checked above");
        for g in &sym.generators {
            generators.push(shift(g, offsets[k], total));
        }
    }
    let exchange_sign = match commutation {
        Commutation::Commuting => 1,
        Commutation::Anticommuting => -1,
    };
    let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
    for (k, (name, _)) in factors.iter().enumerate() {
        match groups.iter_mut().find(|(n, _)| n == name) {
            Some((_, members)) => members.push(k),
            None => groups.push((name.clone(), vec![k])),
        }
    }
    for (_, members) in &groups {
        for w in members.windows(2) {
            let rank = factors[w[0]].1;
            if rank == 0 && exchange_sign == 1 {
                continue;
            }
            let cycles: Vec<[usize; 2]> = (1..=rank).map(|i| [offsets[w[0]] + i, offsets[w[1]] + i]).collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            generators.push(SignedPerm::from_cycles(exchange_sign, total, &refs).expect("disjoint blocks"));
        }
    }

    let counts = expr.index_counts();
    let mut free_names: Vec<String> = counts.iter().filter(|c| c.1 == 1).map(|c| c.0.clone()).collect();
    let mut dummy_names: Vec<String> = counts.iter().filter(|c| c.1 == 2).map(|c| c.0.clone()).collect();
    free_names.sort_by_key(|n| natural_key(n));
    dummy_names.sort_by_key(|n| natural_key(n));
    let free_up = free_names
        .iter()
        .map(|n| {
            expr.factors
                .iter()
                .flat_map(|f| &f.indices)
                .find(|i| &i.name == n)
                .is_some_and(|i| i.up)
        })
        .collect();

    Ok(MergedTensor {
        total_slots: total,
        p: free_names.len(),
        q: dummy_names.len(),
        generators,
        free_names,
        free_up,
        dummy_names,
        factors,
        metric,
        sign: expr.sign,
    })
}

fn shift(g: &SignedPerm, offset: usize, total: usize) -> SignedPerm {
    let mut images: Vec<usize> = (1..=total).collect();
    for i in 1..=g.degree() {
        images[offset + i - 1] = offset + g.image(i);
    }
    SignedPerm::from_images(g.sign(), &images).expect("shifted bijection")
}

/// The element acting on the standard configuration to give the written
/// layout: the image of slot `k` is the label of the index written there.
///
/// A dummy written twice with the same variance is normalized: the first
/// occurrence takes the upper label and the second the lower one.
pub fn g_from_configuration(merged: &MergedTensor, expr: &Expression) -> SignedPerm {
    let free: HashMap<&str, usize> = merged
        .free_names
        .iter()
        .enumerate()
        .map(|(k, n)| (n.as_str(), k + 1))
        .collect();
    let dummy: HashMap<&str, usize> = merged
        .dummy_names
        .iter()
        .enumerate()
        .map(|(j, n)| (n.as_str(), j))
        .collect();
    let slots: Vec<_> = expr.factors.iter().flat_map(|f| &f.indices).collect();
    let mut images = vec![0; slots.len()];
    let mut first_seen: HashMap<&str, usize> = HashMap::new();
    for (k, idx) in slots.iter().enumerate() {
        if let Some(&label) = free.get(idx.name.as_str()) {
            images[k] = label;
            continue;
        }
        let j = dummy[idx.name.as_str()];
        let upper = merged.p + 2 * j + 1;
        match first_seen.get(idx.name.as_str()) {
            None => {
                first_seen.insert(&idx.name, k);
                images[k] = if idx.up { upper } else { upper + 1 };
            }
            Some(&other) => {
                let other_up = slots[other].up;
                if other_up != idx.up {
                    images[k] = if idx.up { upper } else { upper + 1 };
                } else {
                    images[other] = upper;
                    images[k] = upper + 1;
                }
            }
        }
    }
    SignedPerm::from_images(merged.sign, &images).expect("every label used once")
}
