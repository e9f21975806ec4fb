//! The bound computations: subset-sum capacity tightening, LP and surrogate
//! bounds, divisible-size sequence construction, item splitting, and the
//! driver that scans seed items for the best sequential bound.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use thiserror::Error;

use crate::bsmkp::{solve_bsmkp, SolverError};
use crate::instance::{BsmkpClass, BsmkpInstance, MkpInstance};
use crate::kernels::{self, KernelError, KernelItem};
use crate::{rat, Profit, Rat, Weight};

#[derive(Debug, Error)]
pub enum RelaxError {
    #[error("invalid sequence parameters: {0}")]
    InvalidParams(&'static str),
    #[error("item weight {0} is too small to seed a sequence")]
    DegenerateItem(Weight),
    #[error("fractional witness failed its consistency check")]
    WitnessFailure,
    #[error("no sequence iteration produced a bound")]
    NoIterationSucceeded,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Knobs of the sequence scan: the divisor cap, the maximum sequence length,
/// and how many seed items to try.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceParams {
    q_max: Weight,
    l_max: usize,
    it_max: usize,
}

impl Default for SequenceParams {
    fn default() -> Self {
        Self {
            q_max: 10,
            l_max: 5,
            it_max: 10,
        }
    }
}

impl SequenceParams {
    pub fn new(q_max: Weight, l_max: usize, it_max: usize) -> Result<Self, RelaxError> {
        if q_max < 2 {
            return Err(RelaxError::InvalidParams("q_max must be at least 2"));
        }
        if l_max < 2 {
            return Err(RelaxError::InvalidParams("l_max must be at least 2"));
        }
        if it_max < 1 {
            return Err(RelaxError::InvalidParams("it_max must be at least 1"));
        }
        Ok(Self {
            q_max,
            l_max,
            it_max,
        })
    }

    pub fn q_max(&self) -> Weight {
        self.q_max
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn it_max(&self) -> usize {
        self.it_max
    }
}

/// A divisible-size sequence derived from one seed weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceBuild {
    /// The effective divisor cap `min(q_max, weight)`.
    pub q_cap: Weight,
    /// Chosen divisor: the largest value in `[2, q_cap]` minimizing the
    /// remainder of the seed weight.
    pub q: Weight,
    /// Reference size: the largest multiple of `q` not exceeding the weight.
    pub s_bar: Weight,
    /// The sizes, ascending; always contains 1 and `s_bar`, and every element
    /// divides every larger one.
    pub sequence: Vec<Weight>,
}

/// Largest `q` in `[2, q_cap]` minimizing `weight mod q`, and the reference
/// size `weight - (weight mod q)`.
pub fn reference_size(weight: Weight, q_cap: Weight) -> Result<(Weight, Weight), RelaxError> {
    if weight < 2 {
        return Err(RelaxError::DegenerateItem(weight));
    }
    let top = q_cap.min(weight);
    let mut best_q = 2;
    let mut best_rem = weight % 2;
    for q in 2..=top {
        let rem = weight % q;
        if rem <= best_rem {
            best_rem = rem;
            best_q = q;
        }
    }
    Ok((best_q, weight - best_rem))
}

/// Builds the divisible-size sequence for one seed weight: starts from
/// `{1, s_bar}` and scans `s_bar - q, s_bar - 2q, ..., q, q - 1, ..., 2` in
/// that order, keeping every value that preserves the divisibility chain
/// (it divides every larger member; every smaller member divides it), until
/// the sequence holds `l_max` sizes or the scan ends.
pub fn build_sequence(
    weight: Weight,
    params: &SequenceParams,
) -> Result<SequenceBuild, RelaxError> {
    let q_cap = params.q_max.min(weight);
    let (q, s_bar) = reference_size(weight, q_cap)?;
    let mut sequence: Vec<Weight> = vec![1, s_bar];
    sequence.dedup();

    let multiples = (1..)
        .map(|k| s_bar as i128 - (k * q) as i128)
        .take_while(|&t| t >= q as i128)
        .map(|t| t as Weight);
    let tail = (2..q).rev();
    for t in multiples.chain(tail) {
        if sequence.len() >= params.l_max {
            break;
        }
        let chain_ok = sequence
            .iter()
            .all(|&s| if s <= t { t % s == 0 } else { s % t == 0 });
        if chain_ok && !sequence.contains(&t) {
            let at = sequence.partition_point(|&s| s < t);
            sequence.insert(at, t);
        }
    }
    Ok(SequenceBuild {
        q_cap,
        q,
        s_bar,
        sequence,
    })
}

/// Splits every item along the given sizes, largest first: `floor(r / s)`
/// copies of size `s` with profit `(p / w) * s`, then `r mod s` remains for
/// the smaller sizes. Sizes sum back to each item's weight and profits to its
/// profit; classes merge by (size, profit) and capacities carry over.
///
/// Panics if `sequence` is not a divisibility chain containing 1.
pub fn split_items(instance: &MkpInstance, sequence: &[Weight]) -> BsmkpInstance {
    let mut sizes = sequence.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    assert_eq!(sizes.first(), Some(&1), "sequence must contain size 1");
    for pair in sizes.windows(2) {
        assert_eq!(pair[1] % pair[0], 0, "sequence must be a divisibility chain");
    }
    let mut classes = Vec::new();
    for item in instance.items() {
        let mut residual = item.weight;
        for &size in sizes.iter().rev() {
            let copies = residual / size;
            if copies > 0 {
                residual %= size;
                let profit = Rat::new(
                    BigInt::from(item.profit) * BigInt::from(size),
                    BigInt::from(item.weight),
                );
                classes.push(BsmkpClass::new(size, profit, copies));
            }
        }
        debug_assert_eq!(residual, 0);
    }
    BsmkpInstance::validate(classes, instance.capacities().to_vec())
        .expect("split classes are valid by construction")
}

/// A tightened instance plus the knapsacks whose subset-sum solve hit its
/// budget and were left untouched.
#[derive(Debug, Clone)]
pub struct Tightened {
    pub instance: MkpInstance,
    pub untightened: Vec<usize>,
}

/// Replaces each capacity by the largest reachable subset sum of the item
/// weights. Never increases a capacity and never changes the integer optimum.
pub fn tighten_capacities(instance: &MkpInstance) -> Tightened {
    let weights: Vec<Weight> = instance.items().iter().map(|it| it.weight).collect();
    let mut capacities = Vec::with_capacity(instance.m());
    let mut untightened = Vec::new();
    for (i, &c) in instance.capacities().iter().enumerate() {
        match kernels::solve_subset_sum(&weights, c) {
            // A reachable sum of 0 means nothing fits; capacity 1 keeps the
            // instance valid without letting anything in.
            Ok(sum) => capacities.push(sum.max(1)),
            Err(_) => {
                capacities.push(c);
                untightened.push(i);
            }
        }
    }
    Tightened {
        instance: instance.with_capacities(capacities),
        untightened,
    }
}

/// LP-relaxation value of the assignment model: the Dantzig bound over the
/// aggregated capacity. Also builds the greedy fractional solution and checks
/// that it attains the value within the relaxed constraints.
pub fn lp_bound(instance: &MkpInstance) -> Result<Rat, RelaxError> {
    let items: Vec<KernelItem> = instance
        .items()
        .iter()
        .map(|it| KernelItem::new(it.profit, it.weight))
        .collect();
    let total = instance.total_capacity();
    let (value, fractions) = kernels::dantzig_fractions(&items, total);

    // Witness: x_ij = f_j * c_i / C. Each item is used f_j <= 1 times in
    // total, knapsack rows scale from the aggregate row, and the objective
    // matches the bound exactly.
    let zero = Rat::from_integer(0.into());
    let one = rat(1);
    let mut objective = zero.clone();
    let mut load = zero.clone();
    for (item, f) in instance.items().iter().zip(&fractions) {
        if f < &zero || f > &one {
            return Err(RelaxError::WitnessFailure);
        }
        objective += rat(item.profit) * f.clone();
        load += rat(item.weight) * f.clone();
    }
    if objective != value || load > rat(total) {
        return Err(RelaxError::WitnessFailure);
    }
    Ok(value)
}

/// Surrogate-relaxation value: the exact 0-1 knapsack over the aggregated
/// capacity (uniform multipliers are optimal for this relaxation).
pub fn surrogate_bound(instance: &MkpInstance) -> Result<Profit, RelaxError> {
    let items: Vec<KernelItem> = instance
        .items()
        .iter()
        .map(|it| KernelItem::new(it.profit, it.weight))
        .collect();
    let solution = kernels::solve_knapsack_01(&items, instance.total_capacity())?;
    Ok(solution.value)
}

/// One iteration of the sequential-bound scan.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// Seed item index, or `None` for the unit-sequence fallback.
    pub seed_item: Option<usize>,
    pub sequence: Vec<Weight>,
    pub value: Option<Rat>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SequentialBound {
    /// The smallest value over all successful iterations.
    pub value: Rat,
    pub trace: Vec<IterationRecord>,
}

/// Seed order of the default driver: weight descending, ties by lower index.
/// Items lighter than 2 cannot seed a sequence and are left out.
pub fn default_seed_order(instance: &MkpInstance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.n())
        .filter(|&j| instance.items()[j].weight >= 2)
        .collect();
    order.sort_by(|&a, &b| {
        instance.items()[b]
            .weight
            .cmp(&instance.items()[a].weight)
            .then_with(|| a.cmp(&b))
    });
    order
}

/// The sequential upper bound: builds a sequence per seed item, splits,
/// solves the divisible-size relaxation, and keeps the minimum over at most
/// `it_max` seeds.
pub fn sequential_bound(
    instance: &MkpInstance,
    params: &SequenceParams,
) -> Result<SequentialBound, RelaxError> {
    let mut seeds = default_seed_order(instance);
    seeds.truncate(params.it_max);
    sequential_bound_seeded(instance, params, &seeds)
}

/// The same scan over an explicit seed order. An empty order falls back to
/// the unit sequence `{1}`, whose relaxation always exists.
pub fn sequential_bound_seeded(
    instance: &MkpInstance,
    params: &SequenceParams,
    seeds: &[usize],
) -> Result<SequentialBound, RelaxError> {
    let mut trace = Vec::new();
    let mut best: Option<Rat> = None;
    let mut memo: HashMap<Vec<Weight>, Rat> = HashMap::new();

    let run_iteration = |seed_item: Option<usize>,
                             sizes: Vec<Weight>,
                             trace: &mut Vec<IterationRecord>,
                             best: &mut Option<Rat>,
                             memo: &mut HashMap<Vec<Weight>, Rat>| {
        let started = Instant::now();
        let outcome = match memo.get(&sizes) {
            Some(value) => Ok(value.clone()),
            None => solve_bsmkp(&split_items(instance, &sizes)).map(|sol| {
                memo.insert(sizes.clone(), sol.value.clone());
                sol.value
            }),
        };
        match outcome {
            Ok(value) => {
                if best.as_ref().map_or(true, |b| value < *b) {
                    *best = Some(value.clone());
                }
                trace.push(IterationRecord {
                    seed_item,
                    sequence: sizes,
                    value: Some(value),
                    error: None,
                    elapsed: started.elapsed(),
                });
            }
            Err(err) => trace.push(IterationRecord {
                seed_item,
                sequence: sizes,
                value: None,
                error: Some(err.to_string()),
                elapsed: started.elapsed(),
            }),
        }
    };

    for &seed in seeds {
        assert!(seed < instance.n(), "seed item out of range");
        let weight = instance.items()[seed].weight;
        match build_sequence(weight, params) {
            Ok(build) => {
                run_iteration(Some(seed), build.sequence, &mut trace, &mut best, &mut memo)
            }
            Err(err) => trace.push(IterationRecord {
                seed_item: Some(seed),
                sequence: Vec::new(),
                value: None,
                error: Some(err.to_string()),
                elapsed: Duration::ZERO,
            }),
        }
    }
    if seeds.is_empty() {
        run_iteration(None, vec![1], &mut trace, &mut best, &mut memo);
    }

    match best {
        Some(value) => Ok(SequentialBound { value, trace }),
        None => Err(RelaxError::NoIterationSucceeded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::MkpItem;
    use crate::rat_frac;

    fn example_5x2() -> MkpInstance {
        let data = [(99u64, 33u64), (70, 35), (74, 37), (47, 47), (64, 64)];
        let items = data.iter().map(|&(p, w)| MkpItem::new(p, w)).collect();
        MkpInstance::validate(items, vec![47, 64], None).unwrap()
    }

    #[test]
    fn reference_size_examples() {
        assert_eq!(reference_size(64, 10).unwrap(), (8, 64));
        assert_eq!(reference_size(33, 10).unwrap(), (3, 33));
        assert_eq!(reference_size(4, 4).unwrap(), (4, 4));
        assert!(matches!(
            reference_size(1, 10),
            Err(RelaxError::DegenerateItem(1))
        ));
    }

    #[test]
    fn sequence_goldens() {
        let params = SequenceParams::default();
        let b = build_sequence(64, &params).unwrap();
        assert_eq!(b.q_cap, 10);
        assert_eq!(b.q, 8);
        assert_eq!(b.s_bar, 64);
        assert_eq!(b.sequence, vec![1, 8, 16, 32, 64]);

        let b = build_sequence(33, &params).unwrap();
        assert_eq!(b.q, 3);
        assert_eq!(b.s_bar, 33);
        assert_eq!(b.sequence, vec![1, 3, 33]);

        let b = build_sequence(2, &params).unwrap();
        assert_eq!(b.sequence, vec![1, 2]);
    }

    #[test]
    fn sequence_respects_l_max() {
        let params = SequenceParams::new(10, 3, 10).unwrap();
        let b = build_sequence(64, &params).unwrap();
        assert_eq!(b.sequence, vec![1, 32, 64]);
    }

    #[test]
    fn split_reproduces_example_classes() {
        let inst = example_5x2();
        let split = split_items(&inst, &[33, 3, 1]);
        let expect = vec![
            (1, rat(2), 3),
            (1, rat(1), 3),
            (3, rat(6), 1),
            (3, rat(3), 14),
            (33, rat(99), 1),
            (33, rat(66), 2),
            (33, rat(33), 2),
        ];
        let got: Vec<(Weight, Rat, u64)> = split
            .classes()
            .iter()
            .map(|c| (c.size, c.profit.clone(), c.bound))
            .collect();
        assert_eq!(got, expect);
        assert_eq!(split.capacities(), inst.capacities());
    }

    #[test]
    fn split_keeps_exact_item_unsplit() {
        let inst = MkpInstance::validate(vec![MkpItem::new(99, 33)], vec![50], None).unwrap();
        let split = split_items(&inst, &[1, 3, 33]);
        assert_eq!(split.classes().len(), 1);
        assert_eq!(split.classes()[0].size, 33);
        assert_eq!(split.classes()[0].profit, rat(99));
    }

    #[test]
    fn split_conserves_weight_and_profit() {
        let inst = MkpInstance::validate(vec![MkpItem::new(5, 7)], vec![7], None).unwrap();
        let split = split_items(&inst, &[1, 2]);
        let got: Vec<(Weight, Rat, u64)> = split
            .classes()
            .iter()
            .map(|c| (c.size, c.profit.clone(), c.bound))
            .collect();
        assert_eq!(got, vec![(1, rat_frac(5, 7), 1), (2, rat_frac(10, 7), 3)]);
        let total: Rat = split
            .classes()
            .iter()
            .map(|c| c.profit.clone() * rat(c.bound))
            .sum();
        assert_eq!(total, rat(5));
    }

    #[test]
    fn tighten_examples() {
        let inst = example_5x2();
        let t = tighten_capacities(&inst);
        assert_eq!(t.instance.capacities(), &[47, 64]);
        assert!(t.untightened.is_empty());

        let inst = MkpInstance::validate(vec![MkpItem::new(1, 10)], vec![15], None).unwrap();
        assert_eq!(tighten_capacities(&inst).instance.capacities(), &[10]);

        let inst = MkpInstance::validate(
            vec![MkpItem::new(1, 3), MkpItem::new(1, 5)],
            vec![7],
            None,
        )
        .unwrap();
        assert_eq!(tighten_capacities(&inst).instance.capacities(), &[5]);

        // Nothing fits: capacity drops to the 1 placeholder.
        let inst = MkpInstance::validate(vec![MkpItem::new(1, 9)], vec![5], None).unwrap();
        assert_eq!(tighten_capacities(&inst).instance.capacities(), &[1]);
    }

    #[test]
    fn lp_bound_examples() {
        assert_eq!(lp_bound(&example_5x2()).unwrap(), rat(249));
        let inst = MkpInstance::validate(vec![MkpItem::new(10, 10)], vec![5], None).unwrap();
        assert_eq!(lp_bound(&inst).unwrap(), rat(5));
    }

    #[test]
    fn surrogate_bound_example() {
        assert_eq!(surrogate_bound(&example_5x2()).unwrap(), 243);
    }

    #[test]
    fn sequential_bound_forced_seeds() {
        let inst = example_5x2();
        let params = SequenceParams::default();
        let item1 = sequential_bound_seeded(&inst, &params, &[0]).unwrap();
        assert_eq!(item1.value, rat(216));
        assert_eq!(item1.trace.len(), 1);
        assert_eq!(item1.trace[0].sequence, vec![1, 3, 33]);

        let item5 = sequential_bound_seeded(&inst, &params, &[4]).unwrap();
        assert_eq!(item5.value, rat(249));
    }

    #[test]
    fn sequential_bound_default_visits_all_seeds() {
        let inst = example_5x2();
        let bound = sequential_bound(&inst, &SequenceParams::default()).unwrap();
        assert_eq!(bound.trace.len(), 5);
        // Seeds in weight-descending order.
        let seeds: Vec<usize> = bound.trace.iter().map(|r| r.seed_item.unwrap()).collect();
        assert_eq!(seeds, vec![4, 3, 2, 1, 0]);
        assert!(bound.value <= rat(216));
        for record in &bound.trace {
            assert!(record.value.is_some());
        }
    }

    #[test]
    fn sequential_bound_unit_fallback() {
        let inst = MkpInstance::validate(
            vec![MkpItem::new(3, 1), MkpItem::new(2, 1)],
            vec![1],
            None,
        )
        .unwrap();
        let bound = sequential_bound(&inst, &SequenceParams::default()).unwrap();
        assert_eq!(bound.trace.len(), 1);
        assert_eq!(bound.trace[0].seed_item, None);
        assert_eq!(bound.trace[0].sequence, vec![1]);
        assert_eq!(bound.value, rat(3));
    }

    #[test]
    fn identical_sequences_are_memoized() {
        let inst = MkpInstance::validate(
            vec![MkpItem::new(5, 12), MkpItem::new(7, 12)],
            vec![12],
            None,
        )
        .unwrap();
        let bound = sequential_bound(&inst, &SequenceParams::default()).unwrap();
        assert_eq!(bound.trace.len(), 2);
        assert_eq!(bound.trace[0].sequence, bound.trace[1].sequence);
        assert_eq!(bound.trace[0].value, bound.trace[1].value);
    }
}
