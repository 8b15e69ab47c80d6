//! Canonical representatives of double cosets `S * g * D`, where `S` is the
//! symmetry group of an indexed object and `D` the group of dummy relabelings
//! and metric flips.
//!
//! The search walks the extended base of `S` one point at a time. At each
//! level it keeps a table of witness pairs `(s, d)`, one per reachable prefix
//! of base images, all satisfying `[b_1..b_i]^(s g d) = [p_1..p_i]`. The next
//! image `p_i` is the least point reachable from any entry, and the entries are
//! extended through Schreier-vector traces of the stabilizers `S^(i)` and
//! `D^(i)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::SignedPerm;
use crate::schreier::{d_base_change, extend_base, point_ranks, SchreierVector, StrongGenSet};

/// Symmetry of the metric used to raise and lower dummy indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    #[default]
    Symmetric,
    Antisymmetric,
    None,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(Metric::Symmetric),
            "antisymmetric" => Ok(Metric::Antisymmetric),
            "none" => Ok(Metric::None),
            other => Err(Error::Precondition(format!("unknown metric mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Symmetric => "symmetric",
            Metric::Antisymmetric => "antisymmetric",
            Metric::None => "none",
        })
    }
}

/// Dummy-pair structure: which label pairs are contracted and how the metric
/// behaves. Each pair is `(upper, lower)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DummySpec {
    degree: usize,
    metric: Metric,
    pairs: Vec<(usize, usize)>,
}

impl DummySpec {
    pub fn new(degree: usize, metric: Metric, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; degree + 1];
        for &(a, b) in &pairs {
            for x in [a, b] {
                if x == 0 || x > degree {
                    return Err(Error::BadPairs(format!("point {x} outside 1..={degree}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::BadPairs(format!("point {x} used twice")));
                }
            }
        }
        Ok(DummySpec {
            degree,
            metric,
            pairs,
        })
    }

    /// `n` pairs on slots `(1,2), (3,4), ..`.
    pub fn standard(n: usize, metric: Metric) -> Self {
        let pairs = (0..n).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        DummySpec {
            degree: 2 * n,
            metric,
            pairs,
        }
    }

    /// `q` pairs placed after `p` free labels, on a degree `p + 2q` domain.
    pub fn after_free(p: usize, q: usize, metric: Metric) -> Self {
        let pairs = (0..q).map(|i| (p + 2 * i + 1, p + 2 * i + 2)).collect();
        DummySpec {
            degree: p + 2 * q,
            metric,
            pairs,
        }
    }

    /// The same structure with every label `x` renamed to `x^h`.
    pub fn translated(&self, h: &SignedPerm) -> Result<Self> {
        if h.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: h.degree(),
            });
        }
        let pairs = self.pairs.iter().map(|&(a, b)| (h.image(a), h.image(b))).collect();
        DummySpec::new(self.degree, self.metric, pairs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// Pair representatives (upper slots) in pair order.
    pub fn base(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    /// Strong generating set of `D` with respect to [`DummySpec::base`].
    pub fn generators(&self) -> Vec<SignedPerm> {
        self.generators_on(&self.pairs)
    }

    fn generators_on(&self, pairs: &[(usize, usize)]) -> Vec<SignedPerm> {
        let mut out = Vec::new();
        let swap_sign = match self.metric {
            Metric::Symmetric => Some(1),
            Metric::Antisymmetric => Some(-1),
            Metric::None => None,
        };
        if let Some(sign) = swap_sign {
            for &(a, b) in pairs {
                out.push(SignedPerm::from_cycles(sign, self.degree, &[&[a, b]]).expect("valid pair"));
            }
        }
        for w in pairs.windows(2) {
            let ((a1, b1), (a2, b2)) = (w[0], w[1]);
            out.push(SignedPerm::from_cycles(1, self.degree, &[&[a1, a2], &[b1, b2]]).expect("valid pairs"));
        }
        out
    }

    /// Generators of the pointwise stabilizer of every pair whose
    /// representative is missing from `d_base`.
    pub fn stabilizer_generators(&self, d_base: &[usize]) -> Vec<SignedPerm> {
        let active: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|(a, _)| d_base.contains(a))
            .collect();
        self.generators_on(&active)
    }

    fn pair_of(&self, x: usize) -> Option<(usize, usize)> {
        self.pairs.iter().copied().find(|&(a, b)| a == x || b == x)
    }
}

/// `K_D` and its base for `n` pairs on the given slots.
pub fn build_kd(
    n: usize,
    metric: Metric,
    pair_slots: Option<Vec<(usize, usize)>>,
    degree: usize,
) -> Result<(Vec<SignedPerm>, Vec<usize>)> {
    let pairs = pair_slots.unwrap_or_else(|| (0..n).map(|i| (2 * i + 1, 2 * i + 2)).collect());
    if pairs.len() != n {
        return Err(Error::BadPairs(format!("expected {n} pairs, got {}", pairs.len())));
    }
    let spec = DummySpec::new(degree, metric, pairs)?;
    Ok((spec.generators(), spec.base()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonResult {
    Canonical(SignedPerm),
    /// Both signs of one permutation lie in the coset: the object vanishes.
    Zero,
}

impl CanonResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CanonResult::Zero)
    }

    pub fn canonical(&self) -> Option<&SignedPerm> {
        match self {
            CanonResult::Canonical(g) => Some(g),
            CanonResult::Zero => None,
        }
    }
}

impl std::fmt::Display for CanonResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CanonResult::Canonical(g) => write!(f, "{g}"),
            CanonResult::Zero => f.write_str("0"),
        }
    }
}

/// One row of the witness table: the list of images `L` of the base prefix
/// under `s`, the pair `(s, d)`, and the cached product `s g d`.
#[derive(Debug, Clone)]
pub struct TabEntry {
    pub list: Vec<usize>,
    pub s: SignedPerm,
    pub d: SignedPerm,
    sgd: SignedPerm,
}

impl TabEntry {
    pub fn new(list: Vec<usize>, s: SignedPerm, d: SignedPerm, g: &SignedPerm) -> Self {
        let sgd = s.then(g).then(&d);
        TabEntry { list, s, d, sgd }
    }

    pub fn sgd(&self) -> &SignedPerm {
        &self.sgd
    }
}

/// Partition of the points into orbits of a group.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    component: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn new(generators: &[SignedPerm], degree: usize) -> Self {
        let mut component = vec![usize::MAX; degree + 1];
        let mut members = Vec::new();
        for p in 1..=degree {
            if component[p] != usize::MAX {
                continue;
            }
            let sv = SchreierVector::new(p, generators, degree);
            for &q in sv.orbit() {
                component[q] = members.len();
            }
            members.push(sv.orbit().to_vec());
        }
        OrbitPartition { component, members }
    }

    pub fn orbit_of(&self, point: usize) -> &[usize] {
        &self.members[self.component[point]]
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.members
    }
}

/// `s g d` for a table entry.
pub fn f2(entry: &TabEntry, g: &SignedPerm) -> SignedPerm {
    let sgd = entry.s.then(g).then(&entry.d);
    debug_assert_eq!(&sgd, entry.sgd());
    sgd
}

/// Points of every part of `delta_d` meeting `delta_b^(s g d)`.
pub fn f1(entry: &TabEntry, delta_d: &OrbitPartition, delta_b: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; delta_d.members.len()];
    for &x in delta_b {
        hit[delta_d.component[entry.sgd.image(x)]] = true;
    }
    let mut out: Vec<usize> = hit
        .iter()
        .enumerate()
        .filter(|(_, &h)| h)
        .flat_map(|(c, _)| delta_d.members[c].iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Union of [`f1`] over the table: every image of the current base point.
pub fn images_set(entries: &[TabEntry], delta_d: &OrbitPartition, delta_b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = entries.iter().flat_map(|e| f1(e, delta_d, delta_b)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `delta_b^s ∩ delta_p^((g d)^-1)`, in the order of `delta_b`.
pub fn next_set(
    delta_b: &[usize],
    s: &SignedPerm,
    delta_p: &[usize],
    g: &SignedPerm,
    d: &SignedPerm,
) -> Vec<usize> {
    let mut in_target = vec![false; g.degree() + 1];
    for &q in delta_p {
        in_target[q] = true;
    }
    let gd = g.then(d);
    delta_b
        .iter()
        .map(|&x| s.image(x))
        .filter(|&j| in_target[gd.image(j)])
        .collect()
}

/// True when two entries give the same permutation with opposite signs.
pub fn zero_check(entries: &[TabEntry], g: &SignedPerm) -> bool {
    let mut seen: HashMap<&[u32], bool> = HashMap::new();
    entries.iter().any(|e| {
        debug_assert_eq!(&f2(e, g), e.sgd());
        match seen.insert(e.sgd.raw(), e.sgd.is_negative()) {
            Some(neg) => neg != e.sgd.is_negative(),
            None => false,
        }
    })
}

/// State of the search after some number of levels.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub level: usize,
    pub entries: Vec<TabEntry>,
    pub prefix: Vec<usize>,
    pub d_base: Vec<usize>,
}

/// Result of a search together with the witness pair of the representative.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub result: CanonResult,
    /// `(s, d)` with `s * g * d` equal to the representative.
    pub witness: Option<(SignedPerm, SignedPerm)>,
    /// Base actually walked (the extended base of `S`).
    pub base: Vec<usize>,
    /// Largest table size seen.
    pub peak_entries: usize,
}

/// How labels are compared while searching.
#[derive(Debug, Clone)]
pub(crate) enum Order {
    /// Total order induced by the extended base.
    Base,
    /// Only the listed labels are distinguished, ordered by base rank; all
    /// other labels tie. The search stops once every listed label is placed.
    Selected(Vec<usize>),
}

pub(crate) struct Search<'a> {
    pub sgs: StrongGenSet,
    pub ext_base: Vec<usize>,
    pub g: &'a SignedPerm,
    pub dummy: &'a DummySpec,
    pub order: Order,
    pub max_entries: usize,
}

impl Search<'_> {
    pub fn run(&self) -> Result<SearchOutcome> {
        let degree = self.g.degree();
        let mut outcome = SearchOutcome {
            result: CanonResult::Zero,
            witness: None,
            base: self.ext_base.clone(),
            peak_entries: 1,
        };
        if self.sgs.contains_negative_identity() {
            return Ok(outcome);
        }
        let ranks = point_ranks(&self.ext_base, degree);
        let selected: Option<Vec<bool>> = match &self.order {
            Order::Base => None,
            Order::Selected(labels) => {
                let mut mask = vec![false; degree + 1];
                for &l in labels {
                    mask[l] = true;
                }
                Some(mask)
            }
        };
        let key = |label: usize| match &selected {
            Some(mask) if !mask[label] => usize::MAX,
            _ => ranks[label],
        };
        let mut remaining = match &self.order {
            Order::Selected(labels) => labels.len(),
            Order::Base => usize::MAX,
        };

        let id = SignedPerm::identity(degree);
        let mut state = SearchState {
            level: 0,
            entries: vec![TabEntry::new(Vec::new(), id.clone(), id, self.g)],
            prefix: Vec::new(),
            d_base: self.dummy.base(),
        };
        let mut s_gens: Vec<SignedPerm> = self.sgs.generators().to_vec();

        for (i, &b) in self.ext_base.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            if i > 0 {
                let prev = self.ext_base[i - 1];
                s_gens.retain(|x| !x.moves(prev));
            }
            let nu_s = SchreierVector::new(b, &s_gens, degree);
            let delta_b = nu_s.orbit();
            let d_gens = self.dummy.stabilizer_generators(&state.d_base);
            let delta_d = OrbitPartition::new(&d_gens, degree);

            let images = images_set(&state.entries, &delta_d, delta_b);
            let p = *images
                .iter()
                .min_by_key(|&&x| key(x))
                .expect("images are never empty while the table is not");
            let tie_class = key(p) == usize::MAX;

            // D-side target of this level
            let (delta_p, nu_d) = if tie_class {
                let all: Vec<usize> = (1..=degree).filter(|&x| key(x) == usize::MAX).collect();
                (all, None)
            } else {
                if self.dummy.pair_of(p).is_some() {
                    let prev = state.prefix.last().copied().filter(|&q| self.dummy.pair_of(q).is_some());
                    state.d_base = d_base_change(&state.d_base, self.dummy.pairs(), prev, p)?;
                }
                let sv = SchreierVector::new(p, &d_gens, degree);
                (sv.orbit().to_vec(), Some(sv))
            };

            let mut children: Vec<TabEntry> = Vec::new();
            let mut index: HashMap<Vec<u32>, bool> = HashMap::new();
            for entry in &state.entries {
                let gd = self.g.then(&entry.d);
                for j in next_set(delta_b, &entry.s, &delta_p, self.g, &entry.d) {
                    let s1 = nu_s.trace(entry.s.inverse().image(j))?.then(&entry.s);
                    let d1 = match &nu_d {
                        Some(sv) => entry.d.then(&sv.trace(gd.image(j))?.inverse()),
                        None => entry.d.clone(),
                    };
                    let mut list = entry.list.clone();
                    list.push(j);
                    let child = TabEntry::new(list, s1, d1, self.g);
                    let dedup_key = match &selected {
                        Some(mask) => {
                            let inv = child.sgd.inverse();
                            (1..=degree)
                                .filter(|&l| mask[l])
                                .map(|l| inv.image(l) as u32)
                                .collect()
                        }
                        None => child.sgd.raw().to_vec(),
                    };
                    match index.get(&dedup_key) {
                        Some(&neg) => {
                            if selected.is_none() && neg != child.sgd.is_negative() {
                                outcome.peak_entries = outcome.peak_entries.max(children.len());
                                return Ok(outcome);
                            }
                        }
                        None => {
                            index.insert(dedup_key, child.sgd.is_negative());
                            children.push(child);
                            if children.len() > self.max_entries {
                                return Err(Error::TableCap(self.max_entries));
                            }
                        }
                    }
                }
            }
            if !tie_class {
                if self.dummy.pair_of(p).is_some() {
                    let (a, _) = self.dummy.pair_of(p).expect("checked");
                    state.d_base.retain(|&x| x != a);
                }
                remaining = remaining.saturating_sub(usize::from(selected.is_some()));
            }
            state.entries = children;
            state.prefix.push(p);
            state.level = i + 1;
            outcome.peak_entries = outcome.peak_entries.max(state.entries.len());
            debug_assert!(self.invariant_holds(&state, tie_class));
        }

        let first = state.entries.first().expect("table never empties");
        outcome.result = CanonResult::Canonical(first.sgd.clone());
        outcome.witness = Some((first.s.clone(), first.d.clone()));
        Ok(outcome)
    }

    fn invariant_holds(&self, state: &SearchState, tie_class: bool) -> bool {
        if tie_class || matches!(self.order, Order::Selected(_)) {
            return true;
        }
        state.entries.iter().all(|e| {
            e.sgd == f2(e, self.g)
                && self.ext_base[..state.level]
                    .iter()
                    .zip(&state.prefix)
                    .all(|(&b, &p)| e.sgd.image(b) == p)
        })
    }
}

/// Default limit on the witness table.
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 22;

/// Canonical representative of `S * g * D`.
///
/// `base` and `generators` describe `S`; the base is completed to a full base
/// of the symmetric group (missing points appended in increasing order) and
/// the generating set is verified or completed by Schreier-Sims along it.
pub fn double_coset_can_rep(
    base: &[usize],
    generators: &[SignedPerm],
    g: &SignedPerm,
    dummy: &DummySpec,
) -> Result<CanonResult> {
    Ok(double_coset_search(base, generators, g, dummy, DEFAULT_MAX_ENTRIES)?.result)
}

/// [`double_coset_can_rep`] exposing the witness pair and table statistics.
pub fn double_coset_search(
    base: &[usize],
    generators: &[SignedPerm],
    g: &SignedPerm,
    dummy: &DummySpec,
    max_entries: usize,
) -> Result<SearchOutcome> {
    let degree = g.degree();
    if dummy.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: dummy.degree(),
        });
    }
    if dummy.n() == 0 {
        return Ok(SearchOutcome {
            result: CanonResult::Canonical(g.clone()),
            witness: Some((SignedPerm::identity(degree), SignedPerm::identity(degree))),
            base: extend_base(base, degree),
            peak_entries: 1,
        });
    }
    let ext_base = extend_base(base, degree);
    let sgs = StrongGenSet::schreier_sims(generators, &ext_base, degree)?;
    Search {
        sgs,
        ext_base,
        g,
        dummy,
        order: Order::Base,
        max_entries,
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn p(text: &str, n: usize) -> SignedPerm {
        SignedPerm::parse_cycles(text, n).unwrap()
    }

    fn ps(texts: &[&str], n: usize) -> Vec<SignedPerm> {
        texts.iter().map(|t| p(t, n)).collect()
    }

    fn worked_dummy_stage() -> (Vec<usize>, Vec<SignedPerm>, SignedPerm, DummySpec) {
        let ks = ps(
            &[
                "-(5,6)", "-(7,8)", "-(9,10)", "-(11,12)", "(5,7)(6,8)", "(9,11)(10,12)",
                "(5,9)(6,10)(7,11)(8,12)",
            ],
            12,
        );
        let base: Vec<usize> = [2, 4].into_iter().chain(5..=11).collect();
        let g3 = p("-(2,5,6,8,9,10,7)(4,12,11)", 12);
        let dummy = DummySpec::new(
            12,
            Metric::Symmetric,
            vec![(2, 4), (5, 6), (7, 8), (9, 10), (11, 12)],
        )
        .unwrap();
        (base, ks, g3, dummy)
    }

    #[test]
    fn build_kd_examples() {
        let (gens, base) = build_kd(2, Metric::Symmetric, None, 4).unwrap();
        assert_eq!(gens, ps(&["(1,2)", "(3,4)", "(1,3)(2,4)"], 4));
        assert_eq!(base, vec![1, 3]);
        let (gens, _) = build_kd(2, Metric::Antisymmetric, None, 4).unwrap();
        assert_eq!(gens, ps(&["-(1,2)", "-(3,4)", "(1,3)(2,4)"], 4));
        let (gens, base) = build_kd(1, Metric::None, None, 2).unwrap();
        assert!(gens.is_empty());
        assert_eq!(base, vec![1]);
        assert!(build_kd(2, Metric::None, Some(vec![(1, 2), (2, 3)]), 4).is_err());
    }

    #[test]
    fn translated_kd_matches_conjugated_set() {
        let h = p("(2,3)", 12);
        let translated = DummySpec::after_free(2, 5, Metric::Symmetric).translated(&h).unwrap();
        let want = ps(
            &[
                "(2,4)", "(5,6)", "(7,8)", "(9,10)", "(11,12)", "(2,5)(4,6)", "(5,7)(6,8)",
                "(7,9)(8,10)", "(9,11)(10,12)",
            ],
            12,
        );
        assert_eq!(translated.generators(), want);
        assert_eq!(translated.base(), vec![2, 5, 7, 9, 11]);
        let sgs = StrongGenSet::schreier_sims(&want, &translated.base(), 12).unwrap();
        assert_eq!(sgs.generators(), want.as_slice());
    }

    #[test]
    fn worked_example_dummy_stage() {
        let (base, ks, g3, dummy) = worked_dummy_stage();
        let out = double_coset_search(&base, &ks, &g3, &dummy, DEFAULT_MAX_ENTRIES).unwrap();
        let g4 = p("-(4,5)(6,7,9)(8,11)", 12);
        assert_eq!(out.result, CanonResult::Canonical(g4.clone()));
        let (s, d) = out.witness.unwrap();
        assert_eq!(&(&s * &g3) * &d, g4);
        let sgs = StrongGenSet::schreier_sims(&ks, &[], 12).unwrap();
        assert!(sgs.contains(&s));
        let dsgs = StrongGenSet::schreier_sims(&dummy.generators(), &[], 12).unwrap();
        assert!(dsgs.contains(&d));
    }

    #[test]
    fn worked_example_first_image() {
        let (base, ks, g3, dummy) = worked_dummy_stage();
        let delta_b = crate::schreier::orbit(2, &ks);
        let entry = TabEntry::new(vec![], SignedPerm::identity(12), SignedPerm::identity(12), &g3);
        let partition = OrbitPartition::new(&dummy.generators(), 12);
        let images = images_set(&[entry], &partition, &delta_b);
        let ranks = point_ranks(&extend_base(&base, 12), 12);
        let least = images.iter().min_by_key(|&&x| ranks[x]).copied();
        assert_eq!(least, Some(2));
    }

    #[test]
    fn single_pair_cases() {
        let sym = DummySpec::standard(1, Metric::Symmetric);
        assert_eq!(
            double_coset_can_rep(&[], &[], &p("(1,2)", 2), &sym).unwrap(),
            CanonResult::Canonical(SignedPerm::identity(2))
        );
        assert_eq!(
            double_coset_can_rep(&[], &ps(&["-(1,2)"], 2), &SignedPerm::identity(2), &sym).unwrap(),
            CanonResult::Zero
        );
        let anti = DummySpec::standard(1, Metric::Antisymmetric);
        assert_eq!(
            double_coset_can_rep(&[], &ps(&["(1,2)"], 2), &SignedPerm::identity(2), &anti).unwrap(),
            CanonResult::Zero
        );
        assert_eq!(
            double_coset_can_rep(&[], &[], &p("(1,2)", 2), &anti).unwrap(),
            CanonResult::Canonical(p("-()", 2))
        );
    }

    #[test]
    fn no_dummies_returns_g() {
        let g = p("-(1,3)", 3);
        let spec = DummySpec::new(3, Metric::Symmetric, vec![]).unwrap();
        assert_eq!(
            double_coset_can_rep(&[], &[], &g, &spec).unwrap(),
            CanonResult::Canonical(g)
        );
    }

    #[test]
    fn f1_examples() {
        let g = SignedPerm::identity(4);
        let id = SignedPerm::identity(4);
        let entry = TabEntry::new(vec![], id.clone(), id.clone(), &g);
        let one = OrbitPartition::new(&ps(&["(1,2)", "(3,4)", "(1,3)(2,4)"], 4), 4);
        assert_eq!(f1(&entry, &one, &[2]), vec![1, 2, 3, 4]);
        let two = OrbitPartition::new(&ps(&["(1,2)", "(3,4)"], 4), 4);
        assert_eq!(f1(&entry, &two, &[1, 3]), vec![1, 2, 3, 4]);
        assert_eq!(f1(&entry, &two, &[1]), vec![1, 2]);
        let singletons = OrbitPartition::new(&[], 4);
        assert_eq!(f1(&entry, &singletons, &[4, 2]), vec![2, 4]);
        let moved = TabEntry::new(vec![], id.clone(), id, &p("(1,3)", 4));
        assert_eq!(f1(&moved, &singletons, &[1]), vec![3]);
    }

    #[test]
    fn f2_examples() {
        let g = p("-(1,2,3)", 4);
        let id = SignedPerm::identity(4);
        assert_eq!(f2(&TabEntry::new(vec![], id.clone(), id.clone(), &g), &g), g);
        let s = p("(1,4)", 4);
        let d = p("-(2,3)", 4);
        let e = TabEntry::new(vec![4], s.clone(), d.clone(), &g);
        assert_eq!(f2(&e, &g), &(&s * &g) * &d);
    }

    #[test]
    fn next_set_examples() {
        let id = SignedPerm::identity(4);
        let g = p("(1,2)", 4);
        // trivial groups: constraint holds
        assert_eq!(next_set(&[1], &id, &[2], &g, &id), vec![1]);
        assert!(next_set(&[1], &id, &[3], &g, &id).is_empty());
        // disjoint orbits
        assert!(next_set(&[1, 2], &id, &[3, 4], &id, &id).is_empty());
    }

    #[test]
    fn zero_check_examples() {
        let g = SignedPerm::identity(2);
        let id = SignedPerm::identity(2);
        let a = TabEntry::new(vec![1], id.clone(), id.clone(), &g);
        let b = TabEntry::new(vec![2], p("-(1,2)", 2), p("(1,2)", 2), &g);
        assert!(zero_check(&[a.clone(), b], &g));
        let c = TabEntry::new(vec![2], p("(1,2)", 2), p("(1,2)", 2), &g);
        assert!(!zero_check(&[a, c], &g));
    }

    #[test]
    fn table_cap_is_enforced() {
        let gens = ps(&["(1,2,3,4,5,6)", "(1,2)"], 6);
        let dummy = DummySpec::standard(3, Metric::Symmetric);
        let err = double_coset_search(&[], &gens, &SignedPerm::identity(6), &dummy, 1);
        assert_eq!(err.unwrap_err(), Error::TableCap(1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_signed(n: usize) -> impl Strategy<Value = SignedPerm> {
            (Just((1..=n).collect::<Vec<_>>()).prop_shuffle(), 0u8..3).prop_map(|(img, s)| {
                SignedPerm::from_images(if s == 0 { -1 } else { 1 }, &img).unwrap()
            })
        }

        fn arb_case() -> impl Strategy<Value = (Vec<SignedPerm>, SignedPerm, DummySpec)> {
            (1usize..=3, 0u8..3).prop_flat_map(|(n, m)| {
                let metric = [Metric::Symmetric, Metric::Antisymmetric, Metric::None][m as usize];
                (
                    prop::collection::vec(arb_signed(2 * n), 0..=2),
                    arb_signed(2 * n),
                    Just(DummySpec::standard(n, metric)),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn matches_enumeration((ks, g, dummy) in arb_case()) {
                let n = g.degree();
                let got = double_coset_can_rep(&[], &ks, &g, &dummy).unwrap();
                let want = oracle::double_coset_rep(&ks, &g, &dummy.generators(), &extend_base(&[], n));
                prop_assert_eq!(got, want);
            }

            #[test]
            fn invariant_under_coset_moves((ks, g, dummy) in arb_case(), k in 0usize..1000) {
                let n = g.degree();
                let s_all = oracle::closure(&ks, n);
                let d_all = oracle::closure(&dummy.generators(), n);
                let s = &s_all[k % s_all.len()];
                let d = &d_all[(k / 7) % d_all.len()];
                let moved = &(s * &g) * d;
                let a = double_coset_can_rep(&[], &ks, &g, &dummy).unwrap();
                let b = double_coset_can_rep(&[], &ks, &moved, &dummy).unwrap();
                prop_assert_eq!(&a, &b);
                if let CanonResult::Canonical(c) = &a {
                    prop_assert_eq!(double_coset_can_rep(&[], &ks, c, &dummy).unwrap(), a.clone());
                }
            }
        }
    }
}
