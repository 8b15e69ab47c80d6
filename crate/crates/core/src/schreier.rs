//! Orbits, Schreier vectors and stabilizer chains for groups of signed
//! permutations.
//!
//! Orbits are explored breadth first with generators in declaration order, so
//! every Schreier word (and everything built from one) is reproducible.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::SignedPerm;

/// Orbit of `point` under `generators`, in breadth-first discovery order.
pub fn orbit(point: usize, generators: &[SignedPerm]) -> Vec<usize> {
    let Some(first) = generators.first() else {
        return vec![point];
    };
    SchreierVector::new(point, generators, first.degree()).orbit
}

/// Breadth-first Schreier structure rooted at one point.
#[derive(Debug, Clone)]
pub struct SchreierVector {
    root: usize,
    degree: usize,
    orbit: Vec<usize>,
    // 0-based point -> (generator index, 0-based predecessor); root maps to itself
    links: Vec<Option<(u32, u32)>>,
    generators: Vec<SignedPerm>,
}

impl SchreierVector {
    pub fn new(root: usize, generators: &[SignedPerm], degree: usize) -> Self {
        let mut links = vec![None; degree];
        let mut orbit = vec![root];
        links[root - 1] = Some((u32::MAX, (root - 1) as u32));
        let mut queue = VecDeque::from([root - 1]);
        while let Some(p) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let q = g.image0(p);
                if links[q].is_none() {
                    links[q] = Some((k as u32, p as u32));
                    orbit.push(q + 1);
                    queue.push_back(q);
                }
            }
        }
        SchreierVector {
            root,
            degree,
            orbit,
            links,
            generators: generators.to_vec(),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn contains(&self, point: usize) -> bool {
        point >= 1 && point <= self.degree && self.links[point - 1].is_some()
    }

    /// `(generator index, predecessor)` for a non-root orbit point.
    pub fn link(&self, point: usize) -> Option<(usize, usize)> {
        if point == self.root {
            return None;
        }
        self.links
            .get(point.wrapping_sub(1))
            .copied()
            .flatten()
            .map(|(k, p)| (k as usize, p as usize + 1))
    }

    /// Word in the generators carrying the root to `point`.
    pub fn trace(&self, point: usize) -> Result<SignedPerm> {
        if !self.contains(point) {
            return Err(Error::NotInOrbit(point));
        }
        let mut word = Vec::new();
        let mut p = point - 1;
        while p != self.root - 1 {
            let (k, pred) = self.links[p].expect("orbit point has a link");
            word.push(k as usize);
            p = pred as usize;
        }
        let mut out = SignedPerm::identity(self.degree);
        for &k in word.iter().rev() {
            out = out.then(&self.generators[k]);
        }
        Ok(out)
    }
}

/// Base and strong generating set together with the per-level Schreier
/// structures of the stabilizer chain.
#[derive(Debug, Clone)]
pub struct StrongGenSet {
    degree: usize,
    base: Vec<usize>,
    generators: Vec<SignedPerm>,
    levels: Vec<SchreierVector>,
    transversals: Vec<Vec<Option<SignedPerm>>>,
    negative_identity: bool,
}

impl StrongGenSet {
    /// Deterministic Schreier-Sims. Non-redundant points of `base_hint` lead the
    /// base in the given order; further points are appended when needed, each
    /// the least point moved by the generator that required it.
    pub fn schreier_sims(generators: &[SignedPerm], base_hint: &[usize], degree: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        for &b in base_hint {
            if b == 0 || b > degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in base_hint {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        let mut sgs = StrongGenSet {
            degree,
            base,
            generators: Vec::new(),
            levels: Vec::new(),
            transversals: Vec::new(),
            negative_identity: false,
        };
        for g in generators {
            if g.fixes_all() {
                if g.is_negative() {
                    sgs.note_negative_identity();
                }
                continue;
            }
            if !sgs.generators.contains(g) {
                if sgs.base.iter().all(|&b| !g.moves(b)) {
                    sgs.base.push(least_moved(g));
                }
                sgs.generators.push(g.clone());
            }
        }
        sgs.rebuild_levels(0);
        sgs.complete();
        sgs.drop_redundant();
        if sgs.negative_identity {
            sgs.rebuild_levels(0);
        }
        Ok(sgs)
    }

    fn level_generators(&self, level: usize) -> Vec<SignedPerm> {
        let fixed = &self.base[..level];
        self.generators
            .iter()
            .filter(|g| fixed.iter().all(|&b| !g.moves(b)))
            .cloned()
            .collect()
    }

    fn rebuild_levels(&mut self, from: usize) {
        self.levels.truncate(from);
        self.transversals.truncate(from);
        for level in from..self.base.len() {
            let gens = self.level_generators(level);
            let sv = SchreierVector::new(self.base[level], &gens, self.degree);
            let mut transversal = vec![None; self.degree];
            for &p in sv.orbit() {
                transversal[p - 1] = Some(sv.trace(p).expect("orbit point"));
            }
            self.levels.push(sv);
            self.transversals.push(transversal);
        }
    }

    /// Strips `g` through levels `from..`; returns the residue and the level at
    /// which stripping stopped (`base.len()` when it went all the way through).
    fn sift(&self, g: &SignedPerm, from: usize) -> (SignedPerm, usize) {
        let mut g = g.clone();
        for level in from..self.base.len() {
            let beta = g.image(self.base[level]);
            match &self.transversals[level][beta - 1] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, level),
            }
        }
        (g, self.base.len())
    }

    fn complete(&mut self) {
        let mut level = self.base.len();
        while level > 0 {
            let i = level - 1;
            match self.find_missing(i) {
                Some((residue, j)) => {
                    if j == self.base.len() {
                        self.base.push(least_moved(&residue));
                    }
                    self.generators.push(residue);
                    self.rebuild_levels(i + 1);
                    level = j + 1;
                }
                None => level -= 1,
            }
        }
    }

    fn find_missing(&mut self, level: usize) -> Option<(SignedPerm, usize)> {
        let gens = self.levels[level].generators().to_vec();
        let orbit = self.levels[level].orbit().to_vec();
        for &beta in &orbit {
            let u_beta = self.transversals[level][beta - 1].clone().expect("orbit point");
            for x in &gens {
                let target = x.image(beta);
                let u_target = self.transversals[level][target - 1].as_ref().expect("orbit closed");
                let schreier = u_beta.then(x).then(&u_target.inverse());
                let (residue, j) = self.sift(&schreier, level + 1);
                if residue.fixes_all() {
                    if residue.is_negative() && !self.negative_identity {
                        self.note_negative_identity();
                    }
                    continue;
                }
                return Some((residue, j));
            }
        }
        None
    }

    // -id fixes every point, so it rides along as a generator of every level
    // Transversals are unaffected: -id moves no point.
    fn note_negative_identity(&mut self) {
        self.negative_identity = true;
        self.generators.push(SignedPerm::identity(self.degree).negated());
    }

    fn drop_redundant(&mut self) {
        let keep: Vec<bool> = self.levels.iter().map(|sv| sv.orbit().len() > 1).collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut k = keep.iter();
        self.base.retain(|_| *k.next().unwrap());
        self.rebuild_levels(0);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn levels(&self) -> &[SchreierVector] {
        &self.levels
    }

    /// True when the group holds `-id`, i.e. both signs of every element.
    pub fn contains_negative_identity(&self) -> bool {
        self.negative_identity
    }

    /// Order of the group of signed permutations; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let start: u128 = if self.negative_identity { 2 } else { 1 };
        self.levels
            .iter()
            .try_fold(start, |acc, sv| acc.checked_mul(sv.orbit().len() as u128))
    }

    pub fn contains(&self, g: &SignedPerm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift(g, 0);
        residue.fixes_all() && (!residue.is_negative() || self.negative_identity)
    }
}

fn least_moved(g: &SignedPerm) -> usize {
    (1..=g.degree()).find(|&p| g.moves(p)).expect("non-identity permutation")
}

/// Generators of `generators` that fix `point`.
pub fn stabilizer_restrict(generators: &[SignedPerm], point: usize) -> Vec<SignedPerm> {
    generators.iter().filter(|g| !g.moves(point)).cloned().collect()
}

/// Completes `base` with the missing points of `1..degree-1` in increasing order.
pub fn extend_base(base: &[usize], degree: usize) -> Vec<usize> {
    let domain: Vec<usize> = (1..=degree).collect();
    extend_base_within(base, &domain)
}

/// Completes `base` with missing points of `domain` (increasing order) until it
/// covers all but one point of the domain.
pub fn extend_base_within(base: &[usize], domain: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(domain.len());
    for &b in base {
        if domain.contains(&b) && !out.contains(&b) {
            out.push(b);
        }
    }
    let mut rest: Vec<usize> = domain.iter().copied().filter(|p| !out.contains(p)).collect();
    rest.sort_unstable();
    let target = domain.len().saturating_sub(1);
    for p in rest {
        if out.len() >= target {
            break;
        }
        out.push(p);
    }
    out
}

/// Rank of every point in the total order induced by an extended base:
/// base points first in base order, then the remaining points increasing.
pub fn point_ranks(extended_base: &[usize], degree: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; degree + 1];
    let mut next = 0;
    for &b in extended_base {
        rank[b] = next;
        next += 1;
    }
    for r in rank.iter_mut().skip(1) {
        if *r == usize::MAX {
            *r = next;
            next += 1;
        }
    }
    rank
}

/// Base change for the dummy group: drops the pair of `prev` and moves the
/// pair representative of `p` to the front. Pair representatives are the
/// first slot of each pair.
pub fn d_base_change(
    base: &[usize],
    pairs: &[(usize, usize)],
    prev: Option<usize>,
    p: usize,
) -> Result<Vec<usize>> {
    let rep = |x: usize| {
        pairs
            .iter()
            .find(|&&(a, b)| a == x || b == x)
            .map(|&(a, _)| a)
    };
    let front = rep(p).ok_or(Error::NotInPair(p))?;
    let dropped = prev.and_then(rep);
    let mut out = vec![front];
    out.extend(
        base.iter()
            .copied()
            .filter(|&b| b != front && Some(b) != dropped),
    );
    Ok(out)
}
