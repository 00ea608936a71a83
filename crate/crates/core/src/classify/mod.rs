//! Verdicts for single `(G, m, n)` queries: is `G` generated by `g`, `h` with
//! `o(g) = m`, `o(h) = n` and `(gh)² = 1`?
//!
//! A query runs through a fixed pipeline of refutation rules and searches.
//! Every stage is logged in a JSON transcript; rerunning with the same seed
//! and budgets reproduces the transcript byte for byte.
//!
//! `o(gh) = 1` is accepted only for cyclic `G`: otherwise `h = g⁻¹` and
//! `⟨g, h⟩ = ⟨g⟩` is a proper subgroup.

pub mod coset;
pub mod cycles;
pub mod tables;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_characteristic, OrderPair};
use crate::catalog::{decimal, CertifiedGroup};
use crate::chartab::{brute_force_triple_count, TripleCount};
use crate::error::{Error, Result};
use crate::perm::{ClassData, PermGroup, Permutation, DEFAULT_ELEMENT_BUDGET};

use coset::{coset_parity, CosetReport};
use cycles::{cycle_bound, CycleBoundReport};

pub const DEFAULT_SEED: u64 = 0xC2C2_C2C2;
pub const DEFAULT_SAMPLE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000_000;

/// Samples (or pairs) evaluated together; witnesses are chosen per window.
const WINDOW: usize = 4096;
/// Random draws spent looking for an element whose order is a multiple of `k`.
const POWER_TRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest group order for which conjugacy classes are enumerated.
    pub element_budget: u64,
    /// Random `(g, h)` samples.
    pub sample_budget: u64,
    /// Pair tests allowed in the exhaustive search.
    pub pair_budget: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            element_budget: DEFAULT_ELEMENT_BUDGET,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
            pair_budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub budgets: Budgets,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: DEFAULT_SEED,
            budgets: Budgets::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    ProvenYes,
    ProvenNo,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    CycleBound,
    ZeroStructureConstants,
    ExhaustedSearch,
    CosetParity,
    #[serde(rename = "non-split-order-2")]
    NonSplitOrder2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub g: Permutation,
    pub h: Permutation,
}

impl Witness {
    fn key(&self) -> (&[u32], &[u32]) {
        (self.g.images(), self.h.images())
    }
}

/// One pipeline stage as recorded in the transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "kebab-case")]
pub enum Stage {
    CycleBound {
        report: CycleBoundReport,
    },
    ClassData {
        classes: usize,
        order_m_classes: usize,
        order_n_elements: u64,
        involutions: u64,
    },
    CosetParity {
        report: CosetReport,
    },
    StructureConstants {
        triples: Vec<TripleCount>,
        nonzero: usize,
    },
    RandomSearch {
        samples: u64,
        pairs_drawn: u64,
        product_hits: u64,
        generation_tests: u64,
        found: bool,
    },
    ExhaustiveSearch {
        pair_tests: u64,
        product_hits: u64,
        generation_tests: u64,
        found: bool,
    },
    Skipped {
        name: String,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub seed: u64,
    pub budgets: Budgets,
    pub cyclic: bool,
    pub stages: Vec<Stage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub group: String,
    #[serde(with = "decimal")]
    pub order: BigUint,
    pub degree: usize,
    pub m: u64,
    pub n: u64,
    pub status: Status,
    pub chi: String,
    pub witness: Option<Witness>,
    pub refutation_rule: Option<Rule>,
    pub transcript: Transcript,
}

impl Verdict {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Whether the group generated by `generators` is cyclic: the generators
/// commute and the lcm of their orders is the group order.
pub fn is_cyclic(group: &PermGroup) -> bool {
    let gens = group.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.then(b) != b.then(a) {
                return false;
            }
        }
    }
    let l = gens
        .iter()
        .fold(BigUint::from(1u32), |acc, g| acc.lcm(&BigUint::from(g.order())));
    &l == group.order()
}

fn product_ok(p: &Permutation, cyclic: bool) -> bool {
    p.order() == 2 || (cyclic && p.is_identity())
}

fn generates(g: &Permutation, h: &Permutation, order: &BigUint) -> bool {
    PermGroup::generates_order_at_least(&[g.clone(), h.clone()], order)
}

#[derive(Default)]
struct Counts {
    product_hits: u64,
    generation_tests: u64,
}

/// Tests one candidate pair; returns the witness if it generates.
fn test_pair(g: &Permutation, h: &Permutation, order: &BigUint, cyclic: bool, c: &mut Counts) -> bool {
    if !product_ok(&g.then(h), cyclic) {
        return false;
    }
    c.product_hits += 1;
    c.generation_tests += 1;
    generates(g, h, order)
}

/// An element of order exactly `k`, as a power of a random element.
fn element_of_order(group: &PermGroup, k: u64, rng: &mut ChaCha8Rng) -> Option<Permutation> {
    for _ in 0..POWER_TRIES {
        let x = group.uniform_element(rng);
        let o = x.order_checked()?;
        if o % k == 0 {
            return Some(x.pow(o / k));
        }
    }
    None
}

struct WindowResult {
    drawn: u64,
    counts: Counts,
    witness: Option<Witness>,
}

fn least(a: Option<Witness>, b: Option<Witness>) -> Option<Witness> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.key() < x.key() { y } else { x }),
        (x, y) => x.or(y),
    }
}

fn random_search(group: &PermGroup, pair: OrderPair, cyclic: bool, config: &SearchConfig) -> (Stage, Option<Witness>) {
    let order = group.order();
    let total = config.budgets.sample_budget;
    let mut done = 0u64;
    let mut drawn = 0u64;
    let mut counts = Counts::default();
    let mut witness = None;
    while done < total && witness.is_none() {
        let len = (total - done).min(WINDOW as u64);
        let results: Vec<WindowResult> = (done..done + len)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(i);
                let mut r = WindowResult {
                    drawn: 0,
                    counts: Counts::default(),
                    witness: None,
                };
                let Some(h) = element_of_order(group, pair.n, &mut rng) else {
                    return r;
                };
                let Some(g) = element_of_order(group, pair.m, &mut rng) else {
                    return r;
                };
                r.drawn = 1;
                if test_pair(&g, &h, order, cyclic, &mut r.counts) {
                    r.witness = Some(Witness { g, h });
                }
                r
            })
            .collect();
        for r in results {
            drawn += r.drawn;
            counts.product_hits += r.counts.product_hits;
            counts.generation_tests += r.counts.generation_tests;
            witness = least(witness, r.witness);
        }
        done += len;
    }
    let stage = Stage::RandomSearch {
        samples: done,
        pairs_drawn: drawn,
        product_hits: counts.product_hits,
        generation_tests: counts.generation_tests,
        found: witness.is_some(),
    };
    (stage, witness)
}

/// One representative `g` per class of order `m` against every `h` of order
/// `n`. Conjugating a pair does not change what it generates, so this is
/// complete.
fn exhaustive_search(
    group: &PermGroup,
    classes: &ClassData,
    pair: OrderPair,
    cyclic: bool,
) -> (Stage, Option<Witness>) {
    let order = group.order();
    let chain = group.chain();
    let hs: Vec<u32> = classes
        .classes_of_order(pair.n)
        .into_iter()
        .flat_map(|j| classes.member_ranks(j).iter().copied())
        .collect();
    let mut tests = 0u64;
    let mut counts = Counts::default();
    let mut witness = None;
    'outer: for i in classes.classes_of_order(pair.m) {
        let g = &classes.class(i).representative;
        for chunk in hs.chunks(WINDOW) {
            let results: Vec<(Counts, Option<Witness>)> = chunk
                .par_iter()
                .map(|&r| {
                    let h = chain.unrank(r as u64);
                    let mut c = Counts::default();
                    let w = test_pair(g, &h, order, cyclic, &mut c).then(|| Witness { g: g.clone(), h });
                    (c, w)
                })
                .collect();
            tests += chunk.len() as u64;
            for (c, w) in results {
                counts.product_hits += c.product_hits;
                counts.generation_tests += c.generation_tests;
                witness = least(witness, w);
            }
            if witness.is_some() {
                break 'outer;
            }
        }
    }
    let stage = Stage::ExhaustiveSearch {
        pair_tests: tests,
        product_hits: counts.product_hits,
        generation_tests: counts.generation_tests,
        found: witness.is_some(),
    };
    (stage, witness)
}

/// The exhaustive search on its own, bypassing every refutation rule.
pub fn exhaustive_witness(group: &PermGroup, classes: &ClassData, m: u64, n: u64) -> Result<Option<Witness>> {
    let pair = OrderPair::new(m, n)?;
    Ok(exhaustive_search(group, classes, pair, is_cyclic(group)).1)
}

fn coset_rule(report: &CosetReport) -> Rule {
    let placements = [(true, false), (false, true), (true, true)];
    let by_orders: Vec<bool> = placements
        .iter()
        .filter(|&&(g, h)| {
            (if g { report.m.outside } else { report.m.inside }) && (if h { report.n.outside } else { report.n.inside })
        })
        .map(|&(g, h)| g != h)
        .collect();
    if !by_orders.is_empty() && by_orders.iter().all(|&out| out) && !report.involutions.outside {
        Rule::NonSplitOrder2
    } else {
        Rule::CosetParity
    }
}

/// Decides whether `group` is a `(2, m, n)`-group.
///
/// Class data is computed when `|G|` is within the element budget.
pub fn verify_triple(group: &CertifiedGroup, m: u64, n: u64, config: &SearchConfig) -> Result<Verdict> {
    let classes = match group.group.order_u64() {
        Some(o) if o <= config.budgets.element_budget => Some(ClassData::compute(&group.group, o)?),
        _ => None,
    };
    verify_triple_with(group, m, n, config, classes.as_ref())
}

/// As [`verify_triple`], with class data supplied by the caller.
pub fn verify_triple_with(
    group: &CertifiedGroup,
    m: u64,
    n: u64,
    config: &SearchConfig,
    classes: Option<&ClassData>,
) -> Result<Verdict> {
    let pair = OrderPair::new(m, n)?;
    let g = &group.group;
    let cyclic = is_cyclic(g);
    let mut stages = Vec::new();
    let mut verdict = Verdict {
        group: group.name().to_string(),
        order: g.order().clone(),
        degree: g.degree(),
        m,
        n,
        status: Status::Inconclusive,
        chi: euler_characteristic(g.order(), pair).expr(),
        witness: None,
        refutation_rule: None,
        transcript: Transcript {
            seed: config.seed,
            budgets: config.budgets,
            cyclic,
            stages: Vec::new(),
        },
    };
    let finish = |mut v: Verdict, stages: Vec<Stage>, status: Status, rule: Option<Rule>, w: Option<Witness>| {
        v.status = status;
        v.refutation_rule = rule;
        v.witness = w;
        v.transcript.stages = stages;
        Ok(v)
    };

    match group.entry.natural {
        Some(kind) if g.is_transitive() => match cycle_bound(kind, g.degree(), m, n) {
            Some(report) => {
                let refuted = report.refuted;
                stages.push(Stage::CycleBound { report });
                if refuted {
                    return finish(verdict, stages, Status::ProvenNo, Some(Rule::CycleBound), None);
                }
            }
            None => stages.push(skipped("cycle-bound", "degree outside the supported range")),
        },
        _ => stages.push(skipped("cycle-bound", "not a natural symmetric or alternating action")),
    }

    let classes = match classes {
        Some(c) if BigUint::from(c.group_order()) == *g.order() => c,
        Some(_) => return Err(Error::Precondition("class data belongs to a different group".into())),
        None => {
            stages.push(skipped("class-data", "group order exceeds the element budget"));
            let (stage, w) = random_search(g, pair, cyclic, config);
            stages.push(stage);
            stages.push(skipped("exhaustive-search", "no class data"));
            return match w {
                Some(w) => finish(verdict, stages, Status::ProvenYes, None, Some(w)),
                None => finish(verdict, stages, Status::Inconclusive, None, None),
            };
        }
    };
    let order_m_classes = classes.classes_of_order(m).len();
    let order_n_elements = classes.count_of_order(n);
    stages.push(Stage::ClassData {
        classes: classes.len(),
        order_m_classes,
        order_n_elements,
        involutions: classes.count_of_order(2),
    });

    match (&group.index2, cyclic) {
        (Some(sub), false) => {
            let report = coset_parity(classes, sub, m, n);
            let refuted = report.refuted;
            let rule = coset_rule(&report);
            stages.push(Stage::CosetParity { report });
            if refuted {
                return finish(verdict, stages, Status::ProvenNo, Some(rule), None);
            }
        }
        (Some(_), true) => stages.push(skipped("coset-parity", "cyclic group")),
        (None, _) => stages.push(skipped("coset-parity", "no designated index-2 subgroup")),
    }

    if cyclic {
        stages.push(skipped("structure-constants", "cyclic group admits o(gh) = 1"));
    } else {
        let triples = brute_force_triple_count(g, classes, m, n);
        let nonzero = triples.iter().filter(|t| t.value > 0).count();
        stages.push(Stage::StructureConstants { triples, nonzero });
        if nonzero == 0 {
            return finish(
                verdict,
                stages,
                Status::ProvenNo,
                Some(Rule::ZeroStructureConstants),
                None,
            );
        }
    }

    let pair_tests = order_m_classes as u64 * order_n_elements;
    if pair_tests <= config.budgets.sample_budget {
        stages.push(skipped(
            "random-search",
            "exhaustive search needs no more tests than the sample budget",
        ));
    } else if config.budgets.sample_budget > 0 {
        let (stage, w) = random_search(g, pair, cyclic, config);
        stages.push(stage);
        if w.is_some() {
            return finish(verdict, stages, Status::ProvenYes, None, w);
        }
    } else {
        stages.push(skipped("random-search", "sample budget is zero"));
    }

    if pair_tests > config.budgets.pair_budget {
        stages.push(skipped(
            "exhaustive-search",
            &format!("{pair_tests} pair tests exceed the pair budget"),
        ));
        verdict.transcript.stages = stages;
        return Ok(verdict);
    }
    let (stage, w) = exhaustive_search(g, classes, pair, cyclic);
    stages.push(stage);
    match w {
        Some(w) => finish(verdict, stages, Status::ProvenYes, None, Some(w)),
        None => finish(verdict, stages, Status::ProvenNo, Some(Rule::ExhaustedSearch), None),
    }
}

fn skipped(name: &str, reason: &str) -> Stage {
    Stage::Skipped {
        name: name.into(),
        reason: reason.into(),
    }
}

/// Result of re-checking a witness from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub in_group: bool,
    pub g_order: u64,
    pub h_order: u64,
    pub product_order: u64,
    #[serde(with = "decimal")]
    pub generated_order: BigUint,
    pub valid: bool,
}

/// Checks a witness without trusting the search: membership, element
/// orders, the order of `gh`, and a full stabilizer chain for `⟨g, h⟩`.
pub fn verify_witness(group: &PermGroup, m: u64, n: u64, w: &Witness) -> Result<WitnessCheck> {
    let in_group = group.contains(&w.g)? && group.contains(&w.h)?;
    let generated = PermGroup::new(vec![w.g.clone(), w.h.clone()])?;
    let product_order = w.g.then(&w.h).order();
    let full = generated.order() == group.order();
    let product_ok = product_order == 2 || (product_order == 1 && is_cyclic(group));
    Ok(WitnessCheck {
        in_group,
        g_order: w.g.order(),
        h_order: w.h.order(),
        product_order,
        valid: in_group && w.g.order() == m && w.h.order() == n && product_ok && full,
        generated_order: generated.order().clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub original: String,
    pub rerun: String,
    pub identical: bool,
}

/// Reruns a recorded verdict with its own seed and budgets and compares the
/// canonical JSON of both runs.
pub fn replay(recorded: &str, resolve: impl Fn(&str) -> Result<CertifiedGroup>) -> Result<Replay> {
    let old: Verdict = serde_json::from_str(recorded)?;
    let group = resolve(&old.group)?;
    let config = SearchConfig {
        seed: old.transcript.seed,
        budgets: old.transcript.budgets,
    };
    let new = verify_triple(&group, old.m, old.n, &config)?;
    let original = old.to_json()?;
    let rerun = new.to_json()?;
    Ok(Replay {
        identical: original == rerun,
        original,
        rerun,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::resolve;

    fn run(name: &str, m: u64, n: u64) -> Verdict {
        let g = resolve(name, None).unwrap();
        verify_triple(&g, m, n, &SearchConfig::default()).unwrap()
    }

    fn assert_yes(v: &Verdict) {
        assert_eq!(v.status, Status::ProvenYes, "{}", v.to_json().unwrap());
        let g = resolve(&v.group, None).unwrap();
        let check = verify_witness(&g.group, v.m, v.n, v.witness.as_ref().unwrap()).unwrap();
        assert!(check.valid, "{check:?}");
    }

    #[test]
    fn a5_is_a_2_3_5_group() {
        let v = run("A_5", 3, 5);
        assert_yes(&v);
        assert_eq!(v.chi, "2");
    }

    #[test]
    fn s6_five_six() {
        let v = run("S_6", 5, 6);
        assert_yes(&v);
        assert_eq!(v.chi, "-2^5·3");
    }

    #[test]
    fn m10_four_five_fails_on_cosets() {
        let v = run("M_10", 4, 5);
        assert_eq!(v.status, Status::ProvenNo);
        assert_eq!(v.refutation_rule, Some(Rule::NonSplitOrder2));
    }

    #[test]
    fn s9_cycle_bound() {
        for (m, n) in [(10, 7), (5, 14)] {
            let v = run("S_9", m, n);
            assert_eq!(v.status, Status::ProvenNo);
            assert_eq!(v.refutation_rule, Some(Rule::CycleBound));
        }
    }

    #[test]
    fn su33_is_not_hurwitz() {
        let v = run("SU_3(3)", 3, 7);
        assert_eq!(v.status, Status::ProvenNo);
        assert_eq!(v.refutation_rule, Some(Rule::ExhaustedSearch));
    }

    #[test]
    fn cyclic_groups_use_trivial_products() {
        let v = run("C_6", 6, 6);
        assert_yes(&v);
        assert_eq!(run("C_6", 2, 3).status, Status::ProvenNo);
    }

    #[test]
    fn zero_structure_constants() {
        let v = run("PSL_2(5)", 4, 5);
        assert_eq!(v.status, Status::ProvenNo);
        assert_eq!(v.refutation_rule, Some(Rule::ZeroStructureConstants));
    }

    #[test]
    fn inconclusive_without_budget() {
        let g = resolve("S_6", None).unwrap();
        let config = SearchConfig {
            seed: 1,
            budgets: Budgets {
                element_budget: 10,
                sample_budget: 0,
                pair_budget: 0,
            },
        };
        let v = verify_triple(&g, 5, 6, &config).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
    }

    #[test]
    fn replay_reproduces() {
        let v = run("S_7", 10, 7);
        assert_yes(&v);
        let r = replay(&v.to_json().unwrap(), |name| resolve(name, None)).unwrap();
        assert!(r.identical);
    }
}
