use std::fmt;
use std::time::{Duration, Instant};

use super::defs::Registry;
use super::merge::{g_from_configuration, merge_monomial, Commutation, MergedTensor};
use super::parse::{parse_with_metric, Expression, Index, IndexedFactor};
use crate::dummy::{double_coset_search, CanonResult, DummySpec, Metric, DEFAULT_MAX_ENTRIES};
use crate::error::Result;
use crate::free::free_search;
use crate::perm::SignedPerm;
use crate::schreier::{point_ranks, StrongGenSet};

/// Which base of the merged symmetry group orders the canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseChoice {
    /// Slots `1..N-1` in order.
    #[default]
    Natural,
    /// The base found by Schreier-Sims on the merged generators.
    Sgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonOptions {
    /// Overrides the metric of the registry.
    pub metric: Option<Metric>,
    pub commutation: Commutation,
    pub base: BaseChoice,
    pub max_entries: usize,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            metric: None,
            commutation: Commutation::Commuting,
            base: BaseChoice::Natural,
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

/// Intermediate elements of one canonicalization. Stages after a Zero are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub g1: SignedPerm,
    pub g2: Option<SignedPerm>,
    pub h: Option<SignedPerm>,
    pub g3: Option<SignedPerm>,
    pub g4: Option<SignedPerm>,
    pub g5: Option<SignedPerm>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g1 = {}", self.g1)?;
        for (name, value) in [("g2", &self.g2), ("h", &self.h), ("g3", &self.g3), ("g4", &self.g4), ("g5", &self.g5)] {
            match value {
                Some(v) => writeln!(f, "{name} = {v}")?,
                None => writeln!(f, "{name} = 0")?,
            }
        }
        Ok(())
    }
}

/// Relabeling that moves the dummy labels of the standard configuration onto
/// the slots that hold dummies after the free stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DummyTranslation {
    pub h: SignedPerm,
    pub free_positions: Vec<usize>,
    pub dummy_positions: Vec<usize>,
    pub spec: DummySpec,
    /// Base for the dummy stage: the free-stage base without free positions.
    pub base: Vec<usize>,
}

/// Builds `h` and the translated dummy group from the free-stage result `g2`.
/// `ext_base` orders the positions; it is the extended base of the free stage.
pub fn translate_dummy_group(
    g2: &SignedPerm,
    p: usize,
    q: usize,
    metric: Metric,
    ext_base: &[usize],
) -> Result<DummyTranslation> {
    let degree = g2.degree();
    let ranks = point_ranks(ext_base, degree);
    let inv = g2.inverse();
    let mut free_positions: Vec<usize> = (1..=p).map(|l| inv.image(l)).collect();
    let mut dummy_positions: Vec<usize> = (p + 1..=p + 2 * q).map(|l| inv.image(l)).collect();
    free_positions.sort_by_key(|&x| ranks[x]);
    dummy_positions.sort_by_key(|&x| ranks[x]);
    let images: Vec<usize> = free_positions.iter().chain(&dummy_positions).copied().collect();
    let h = SignedPerm::from_images(1, &images)?;
    let spec = DummySpec::after_free(p, q, metric).translated(&h)?;
    let base = ext_base
        .iter()
        .copied()
        .filter(|x| !free_positions.contains(x))
        .collect();
    Ok(DummyTranslation {
        h,
        free_positions,
        dummy_positions,
        spec,
        base,
    })
}

/// Canonical form of a monomial, or `"0"`.
pub fn canonicalize(text: &str, registry: &Registry, options: &CanonOptions) -> Result<String> {
    Ok(canonicalize_traced(text, registry, options)?.0)
}

pub fn canonicalize_traced(text: &str, registry: &Registry, options: &CanonOptions) -> Result<(String, Trace)> {
    let metric = options.metric.unwrap_or(registry.metric);
    let expr = parse_with_metric(text, registry, metric)?;
    let merged = merge_monomial(&expr, registry, metric, options.commutation)?;
    let g1 = g_from_configuration(&merged, &expr);
    let (result, trace) = canonicalize_merged(&merged, &g1, options, None)?;
    Ok((render(&merged, &result), trace))
}

/// Runs both stages on a merged monomial. `slot_generators` replaces the
/// merged symmetry generators when given.
pub fn canonicalize_merged(
    merged: &MergedTensor,
    g1: &SignedPerm,
    options: &CanonOptions,
    slot_generators: Option<&[SignedPerm]>,
) -> Result<(CanonResult, Trace)> {
    let (result, trace, _) = canonicalize_merged_timed(merged, g1, options, slot_generators)?;
    Ok((result, trace))
}

/// [`canonicalize_merged`] also reporting the time spent in the dummy stage.
pub(crate) fn canonicalize_merged_timed(
    merged: &MergedTensor,
    g1: &SignedPerm,
    options: &CanonOptions,
    slot_generators: Option<&[SignedPerm]>,
) -> Result<(CanonResult, Trace, Duration)> {
    let degree = merged.total_slots;
    let gens = slot_generators.unwrap_or(&merged.generators);
    let mut trace = Trace {
        g1: g1.clone(),
        g2: None,
        h: None,
        g3: None,
        g4: None,
        g5: None,
    };
    let base_hint: Vec<usize> = match options.base {
        BaseChoice::Natural => (1..degree).collect(),
        BaseChoice::Sgs => StrongGenSet::schreier_sims(gens, &[], degree)?.base().to_vec(),
    };

    let free_labels: Vec<usize> = (1..=merged.p).collect();
    let free = free_search(g1, &base_hint, gens, &free_labels)?;
    let CanonResult::Canonical(g2) = free.result else {
        return Ok((CanonResult::Zero, trace, Duration::ZERO));
    };
    trace.g2 = Some(g2.clone());

    let tr = translate_dummy_group(&g2, merged.p, merged.q, merged.metric, &free.base)?;
    let g3 = g2.then(&tr.h);
    trace.h = Some(tr.h.clone());
    trace.g3 = Some(g3.clone());

    let hint: Vec<usize> = tr
        .free_positions
        .iter()
        .copied()
        .chain((1..=degree).filter(|x| !tr.free_positions.contains(x)))
        .collect();
    let full = StrongGenSet::schreier_sims(gens, &hint, degree)?;
    let stabilizer: Vec<SignedPerm> = full
        .generators()
        .iter()
        .filter(|s| tr.free_positions.iter().all(|&x| !s.moves(x)))
        .cloned()
        .collect();
    let start = Instant::now();
    let dummy = double_coset_search(&tr.base, &stabilizer, &g3, &tr.spec, options.max_entries)?;
    let elapsed = start.elapsed();
    let CanonResult::Canonical(g4) = dummy.result else {
        return Ok((CanonResult::Zero, trace, elapsed));
    };
    let g5 = g4.then(&tr.h.inverse());
    trace.g4 = Some(g4);
    trace.g5 = Some(g5.clone());
    Ok((CanonResult::Canonical(g5), trace, elapsed))
}

/// Writes the configuration `g` acting on the standard configuration as an
/// expression, naming dummies in order of first appearance.
pub fn render(merged: &MergedTensor, result: &CanonResult) -> String {
    let CanonResult::Canonical(g) = result else {
        return "0".to_string();
    };
    let prefix = dummy_prefix(&merged.free_names);
    let mut names: Vec<Option<usize>> = vec![None; merged.q];
    let mut next = 0;
    let mut factors: Vec<IndexedFactor> = merged
        .factors
        .iter()
        .map(|(symbol, rank)| IndexedFactor {
            symbol: symbol.clone(),
            indices: Vec::with_capacity(*rank),
        })
        .collect();
    for slot in 1..=merged.total_slots {
        let label = g.image(slot);
        let index = if label <= merged.p {
            Index {
                name: merged.free_names[label - 1].clone(),
                up: merged.free_up[label - 1],
            }
        } else {
            let j = (label - merged.p - 1) / 2;
            let n = *names[j].get_or_insert_with(|| {
                next += 1;
                next
            });
            Index {
                name: format!("{prefix}{n}"),
                up: (label - merged.p) % 2 == 1,
            }
        };
        let (k, _) = merged.split(slot);
        factors[k].indices.push(index);
    }
    Expression {
        sign: g.sign(),
        factors,
    }
    .to_string()
}

fn dummy_prefix(free_names: &[String]) -> String {
    let mut prefix = "d".to_string();
    while free_names.iter().any(|n| {
        n.strip_prefix(prefix.as_str())
            .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
    }) {
        prefix.push('d');
    }
    prefix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_definitions, parse_expression};

    const DEFS: &str = "tensor R rank 4\ngen -(1,2)\ngen -(3,4)\ngen (1,3)(2,4)\n\
                        tensor A rank 2\ngen -(1,2)\ntensor S rank 2\ngen (1,2)\ntensor T rank 2\ntensor V rank 1\n";
    const WORKED: &str = "R(-d2,-d3,d1,d4) * R(-d5,b,a,d2) * R(-d4,d3,-d1,d5)";
    const WORKED_OUT: &str = "-R(a,d1,b,d2) * R(-d1,d3,d4,d5) * R(-d2,-d4,-d3,-d5)";

    fn reg() -> Registry {
        parse_definitions(DEFS).unwrap()
    }

    fn canon(text: &str) -> String {
        canonicalize(text, &reg(), &CanonOptions::default()).unwrap()
    }

    fn p(text: &str, n: usize) -> SignedPerm {
        SignedPerm::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn worked_example_end_to_end() {
        assert_eq!(canon(WORKED), WORKED_OUT);
    }

    #[test]
    fn worked_example_trace_with_literal_generators() {
        let registry = reg();
        let text = "R(-d5,b,a,d2) * R(-d2,-d3,d1,d4) * R(-d4,d3,-d1,d5)";
        let expr = parse_expression(text, &registry).unwrap();
        let merged = merge_monomial(&expr, &registry, Metric::Symmetric, Commutation::Commuting).unwrap();
        let g1 = g_from_configuration(&merged, &expr);
        let literal: Vec<SignedPerm> = [
            "-(1,2)", "-(3,4)", "-(5,6)", "-(7,8)", "-(9,10)", "-(11,12)", "(1,3)(2,4)", "(5,7)(6,8)",
            "(9,11)(10,12)", "(5,9)(6,10)(7,11)(8,12)",
        ]
        .iter()
        .map(|t| p(t, 12))
        .collect();
        let (result, trace) = canonicalize_merged(&merged, &g1, &CanonOptions::default(), Some(&literal)).unwrap();
        assert_eq!(trace.g1.to_string(), "+(1,12,11,4,5,6,8,9,10,7,3)");
        assert_eq!(trace.g2.unwrap().to_string(), "-(2,5,6,8,9,10,7,3)(4,12,11)");
        assert_eq!(trace.h.unwrap().to_string(), "+(2,3)");
        assert_eq!(trace.g3.unwrap().to_string(), "-(2,5,6,8,9,10,7)(4,12,11)");
        assert_eq!(trace.g4.unwrap().to_string(), "-(4,5)(6,7,9)(8,11)");
        assert_eq!(trace.g5.unwrap().to_string(), "-(2,3)(4,5)(6,7,9)(8,11)");
        assert_eq!(render(&merged, &result), WORKED_OUT);
    }

    #[test]
    fn translation_of_worked_free_stage() {
        let g2 = p("-(2,5,6,8,9,10,7,3)(4,12,11)", 12);
        let base: Vec<usize> = (1..12).collect();
        let tr = translate_dummy_group(&g2, 2, 5, Metric::Symmetric, &base).unwrap();
        assert_eq!(tr.free_positions, vec![1, 3]);
        assert_eq!(tr.dummy_positions, vec![2, 4, 5, 6, 7, 8, 9, 10, 11, 12]);
        assert_eq!(tr.h, p("(2,3)", 12));
        assert_eq!(tr.spec.pairs(), &[(2, 4), (5, 6), (7, 8), (9, 10), (11, 12)]);
        assert_eq!(tr.base, vec![2, 4, 5, 6, 7, 8, 9, 10, 11]);
        assert_eq!(g2.then(&tr.h), p("-(2,5,6,8,9,10,7)(4,12,11)", 12));
    }

    #[test]
    fn identity_translation() {
        let g2 = SignedPerm::identity(7);
        let tr = translate_dummy_group(&g2, 3, 2, Metric::Antisymmetric, &(1..7).collect::<Vec<_>>()).unwrap();
        assert!(tr.h.fixes_all());
        assert_eq!(tr.spec, DummySpec::after_free(3, 2, Metric::Antisymmetric));
    }

    #[test]
    fn translated_group_stabilizes_dummy_slots() {
        let g2 = p("-(1,6,3)(2,5)", 7);
        let tr = translate_dummy_group(&g2, 2, 2, Metric::Symmetric, &(1..7).collect::<Vec<_>>()).unwrap();
        for x in tr.spec.generators() {
            for &f in &tr.free_positions {
                assert!(!x.moves(f));
            }
        }
        let reps: Vec<usize> = tr.spec.pairs().iter().map(|&(a, _)| a).collect();
        assert_eq!(tr.spec.base(), reps);
        for (a, b) in tr.spec.pairs() {
            assert!(tr.dummy_positions.contains(a) && tr.dummy_positions.contains(b));
        }
    }

    #[test]
    fn zero_cases() {
        assert_eq!(canon("A(d1,-d1)"), "0");
        let anti = CanonOptions {
            metric: Some(Metric::Antisymmetric),
            ..CanonOptions::default()
        };
        assert_eq!(canonicalize("S(d1,-d1)", &reg(), &anti).unwrap(), "0");
        assert_eq!(canonicalize("A(d1,-d1)", &reg(), &anti).unwrap(), "A(d1,-d1)");
        assert_eq!(canon("S(d1,-d1)"), "S(d1,-d1)");
    }

    #[test]
    fn trivial_symmetry_is_untouched() {
        assert_eq!(canon("T(a,b)"), "T(a,b)");
        assert_eq!(canon("T(b,a)"), "T(b,a)");
        assert_eq!(canon("S(b,a)"), "S(a,b)");
        assert_eq!(canon("A(b,a)"), "-A(a,b)");
        assert_eq!(canon("T(-a,b)"), "T(-a,b)");
    }

    #[test]
    fn idempotent_on_worked_output() {
        assert_eq!(canon(WORKED_OUT), WORKED_OUT);
    }

    #[test]
    fn dummy_relabeling_and_factor_order() {
        let renamed = "R(-x2,-x3,x1,x4) * R(-x5,b,a,x2) * R(-x4,x3,-x1,x5)";
        assert_eq!(canon(renamed), WORKED_OUT);
        let reordered = "R(-d4,d3,-d1,d5) * R(-d2,-d3,d1,d4) * R(-d5,b,a,d2)";
        assert_eq!(canon(reordered), WORKED_OUT);
    }

    #[test]
    fn pair_variance_flip() {
        let flipped = "R(d2,-d3,d1,d4) * R(-d5,b,a,-d2) * R(-d4,d3,-d1,d5)";
        assert_eq!(canon(flipped), WORKED_OUT);
        let anti = CanonOptions {
            metric: Some(Metric::Antisymmetric),
            ..CanonOptions::default()
        };
        let a = canonicalize(WORKED, &reg(), &anti).unwrap();
        let b = canonicalize(flipped, &reg(), &anti).unwrap();
        assert_eq!(b.strip_prefix('-').unwrap_or(&format!("-{b}")), a.as_str());
    }

    #[test]
    fn same_variance_pairs_are_normalized() {
        assert_eq!(canon("R(a,a,b,b)"), canon("R(a,-a,b,-b)"));
    }

    #[test]
    fn covariant_free_indices_are_restored() {
        assert_eq!(canon("S(-b,a)"), "S(a,-b)");
        assert_eq!(canon("V(-a) * V(b)"), "V(-a) * V(b)");
        assert_eq!(canon("V(b) * V(-a)"), "V(-a) * V(b)");
    }

    #[test]
    fn dummy_prefix_avoids_free_names() {
        assert_eq!(canon("T(d1,x) * V(-x)"), "T(d1,dd1) * V(-dd1)");
    }

    #[test]
    fn sgs_base_option_gives_a_valid_canonical_form() {
        let opts = CanonOptions {
            base: BaseChoice::Sgs,
            ..CanonOptions::default()
        };
        let out = canonicalize(WORKED, &reg(), &opts).unwrap();
        assert_eq!(canonicalize(&out, &reg(), &opts).unwrap(), out);
    }

    #[test]
    fn scalar_factors() {
        assert_eq!(canon("-V(d1) * V(-d1)"), "-V(d1) * V(-d1)");
    }
}
