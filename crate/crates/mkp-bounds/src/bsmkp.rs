//! Exact solver for the bounded multiple knapsack problem whose item sizes
//! form a divisibility chain.
//!
//! Divisibility makes slot accounting exact: a knapsack of capacity `c` holds
//! `floor(c / s)` slots of size `s`, and placing an item of size `s_u >= s`
//! consumes exactly `s_u / s` of them, because
//! `floor((c - k * s_u) / s) = floor(c / s) - k * s_u / s`. Aggregated over
//! knapsacks, per-level unit counts `K_u` are packable iff for every level
//! `l`: `sum over u >= l of K_u * (s_u / s_l) <= A_l`, where `A_l` is the
//! total slot count at level `l`. That predicate is [`nested_slots_feasible`].
//!
//! The solver is a dynamic program over levels from the largest size down;
//! its state is the number of level slots already consumed by larger items.
//! Items of one size are interchangeable, so only the count per level
//! matters, and a descending-profit prefix is optimal for any count. The
//! smallest level needs no DP row: profits are nonnegative, so each state
//! simply takes as many units as its remaining slots allow. A concrete
//! per-knapsack placement is recovered afterwards by [`realize_assignment`],
//! which doubles as a certificate of the claimed value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::instance::{BsmkpClass, BsmkpInstance, BsmkpSolution};
use crate::{rat, Rat, Weight};

/// Candidate-state budget for the level DP; beyond it the solver falls back
/// to branch-and-bound over levels.
const DP_WORK_LIMIT: u128 = 100_000_000;
/// Node budget for the fallback search.
const FALLBACK_NODE_BUDGET: u64 = 200_000;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("sizes must be positive and nonempty")]
    InvalidSizes,
    #[error("sizes {0} and {1} break the divisibility chain")]
    DivisibilityViolation(Weight, Weight),
    #[error("counts cannot be packed: {0}")]
    InfeasibleCounts(String),
    #[error("search budget exhausted: best {best_value}, upper bound {upper_bound}")]
    ResourceLimit { best_value: Rat, upper_bound: Rat },
    #[error("internal value mismatch: {0}")]
    ValueMismatch(String),
}

/// Slot counts per size level: `slot_caps[l] = sum_i floor(c_i / levels[l])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotProfile {
    levels: Vec<Weight>,
    slot_caps: Vec<u64>,
}

impl SlotProfile {
    /// Distinct sizes, ascending.
    pub fn levels(&self) -> &[Weight] {
        &self.levels
    }

    pub fn slot_caps(&self) -> &[u64] {
        &self.slot_caps
    }
}

/// Builds the slot profile for a divisibility chain of sizes.
pub fn slot_capacities(
    capacities: &[Weight],
    sizes: &[Weight],
) -> Result<SlotProfile, SolverError> {
    let mut levels: Vec<Weight> = sizes.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() || levels[0] == 0 {
        return Err(SolverError::InvalidSizes);
    }
    for pair in levels.windows(2) {
        if pair[1] % pair[0] != 0 {
            return Err(SolverError::DivisibilityViolation(pair[0], pair[1]));
        }
    }
    let slot_caps = levels
        .iter()
        .map(|&s| capacities.iter().map(|&c| c / s).sum())
        .collect();
    Ok(SlotProfile { levels, slot_caps })
}

/// The aggregate packability predicate for per-level unit counts; see the
/// module documentation. `unit_counts[l]` is the number of items taken at
/// size `levels()[l]`.
pub fn nested_slots_feasible(profile: &SlotProfile, unit_counts: &[u64]) -> bool {
    assert_eq!(unit_counts.len(), profile.levels.len());
    let mut consumed: u128 = 0;
    for lvl in (0..profile.levels.len()).rev() {
        if lvl + 1 < profile.levels.len() {
            consumed *= (profile.levels[lvl + 1] / profile.levels[lvl]) as u128;
        }
        consumed += unit_counts[lvl] as u128;
        if consumed > profile.slot_caps[lvl] as u128 {
            return false;
        }
    }
    true
}

/// Classes of one size in descending-profit order, with cumulative sums so
/// the best profit for any take count is a single lookup.
///
/// Profits are scaled by the instance-wide denominator (the lcm of all class
/// profit denominators), turning every DP operation into exact integer
/// arithmetic; the final value is divided back once.
struct Level {
    size: Weight,
    class_start: usize,
    cum_bounds: Vec<u64>,
    cum_profits: Vec<BigInt>,
    /// Per-class scaled profits, aligned with the level's class span.
    unit_profits: Vec<BigInt>,
    /// Largest take count worth considering: min(total units, slot cap).
    unit_cap: u64,
}

impl Level {
    fn class_count(&self) -> usize {
        self.cum_bounds.len() - 1
    }

    fn total_units(&self) -> u64 {
        *self.cum_bounds.last().unwrap()
    }

    /// Scaled profit of the best `k` units at this level.
    fn best_take(&self, k: u64) -> BigInt {
        debug_assert!(k <= self.total_units());
        let idx = self.cum_bounds.partition_point(|&b| b <= k) - 1;
        let mut value = self.cum_profits[idx].clone();
        let rest = k - self.cum_bounds[idx];
        if rest > 0 {
            value += &self.unit_profits[idx] * BigInt::from(rest);
        }
        value
    }

    /// Scaled best profits for every take in `0..=width`.
    fn prefix_vec(&self, width: u64) -> Vec<BigInt> {
        debug_assert!(width <= self.total_units());
        let mut prefix = Vec::with_capacity(width as usize + 1);
        prefix.push(BigInt::zero());
        let mut class = 0;
        let mut left_in_class = if self.class_count() > 0 {
            self.cum_bounds[1]
        } else {
            0
        };
        let mut acc = BigInt::zero();
        for _ in 1..=width {
            while left_in_class == 0 {
                class += 1;
                left_in_class = self.cum_bounds[class + 1] - self.cum_bounds[class];
            }
            acc += &self.unit_profits[class];
            left_in_class -= 1;
            prefix.push(acc.clone());
        }
        prefix
    }
}

/// The common profit denominator and the per-level tables in scaled space.
fn build_levels(instance: &BsmkpInstance, profile: &SlotProfile) -> (Vec<Level>, BigInt) {
    let classes = instance.classes();
    let denominator = classes
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.profit.denom()));
    let mut levels = Vec::with_capacity(profile.levels.len());
    let mut start = 0;
    for (lvl, &size) in profile.levels.iter().enumerate() {
        let end = classes[start..]
            .iter()
            .position(|c| c.size != size)
            .map(|p| start + p)
            .unwrap_or(classes.len());
        let span = &classes[start..end];
        let mut cum_bounds = Vec::with_capacity(span.len() + 1);
        let mut cum_profits = Vec::with_capacity(span.len() + 1);
        let mut unit_profits = Vec::with_capacity(span.len());
        cum_bounds.push(0u64);
        cum_profits.push(BigInt::zero());
        for class in span {
            let scaled = class.profit.numer() * (&denominator / class.profit.denom());
            let total: u64 = cum_bounds.last().unwrap().saturating_add(class.bound);
            cum_bounds.push(total);
            cum_profits.push(cum_profits.last().unwrap() + &scaled * BigInt::from(class.bound));
            unit_profits.push(scaled);
        }
        let unit_cap = (*cum_bounds.last().unwrap()).min(profile.slot_caps[lvl]);
        levels.push(Level {
            size,
            class_start: start,
            cum_bounds,
            cum_profits,
            unit_profits,
            unit_cap,
        });
        start = end;
    }
    debug_assert_eq!(start, classes.len());
    (levels, denominator)
}

/// Upper estimate of DP candidate states, used to decide DP vs fallback.
fn dp_work_estimate(levels: &[Level], profile: &SlotProfile) -> u128 {
    let top = levels.len() - 1;
    let mut reach: u128 = levels[top].unit_cap as u128;
    let mut row_width: u128 = reach + 1;
    let mut work = row_width;
    for lvl in (0..top).rev() {
        let ratio = (profile.levels[lvl + 1] / profile.levels[lvl]) as u128;
        let width = levels[lvl].unit_cap as u128 + 1;
        work = work.saturating_add(row_width.saturating_mul(width));
        if work > DP_WORK_LIMIT {
            return work;
        }
        reach = reach
            .saturating_mul(ratio)
            .saturating_add(levels[lvl].unit_cap as u128)
            .min(profile.slot_caps[lvl] as u128);
        row_width = reach + 1;
    }
    work
}

struct State {
    consumed: u64,
    profit: BigInt,
    take: u64,
    parent: u32,
}

/// Keeps per consumed count the best profit, then drops states dominated by
/// one with fewer consumed slots and at least the same profit. Consuming less
/// never hurts: every level below only gains headroom.
fn dominant_states(mut candidates: Vec<(u64, BigInt, u64, u32)>) -> Vec<State> {
    candidates.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut states: Vec<State> = Vec::new();
    for (consumed, profit, take, parent) in candidates {
        match states.last_mut() {
            Some(last) if last.consumed == consumed => {
                if profit > last.profit {
                    *last = State {
                        consumed,
                        profit,
                        take,
                        parent,
                    };
                }
            }
            Some(last) if profit <= last.profit => {}
            _ => states.push(State {
                consumed,
                profit,
                take,
                parent,
            }),
        }
    }
    states
}

/// The level DP in scaled-profit space. Returns the optimum value and
/// per-level take counts.
fn solve_dp_levels(profile: &SlotProfile, levels: &[Level]) -> (BigInt, Vec<u64>) {
    let top = levels.len() - 1;
    if top == 0 {
        // Profits are nonnegative, so the largest feasible take is optimal.
        let k = levels[0].unit_cap;
        return (levels[0].best_take(k), vec![k]);
    }

    let mut rows: Vec<Vec<State>> = Vec::with_capacity(levels.len());
    rows.resize_with(levels.len(), Vec::new);
    {
        let prefix = levels[top].prefix_vec(levels[top].unit_cap);
        rows[top] = dominant_states(
            (0..=levels[top].unit_cap)
                .map(|k| (k, prefix[k as usize].clone(), k, u32::MAX))
                .collect(),
        );
    }

    // Build rows down to level 1; level 0 is resolved greedily below.
    for lvl in (1..top).rev() {
        let ratio = profile.levels[lvl + 1] / profile.levels[lvl];
        let cap = profile.slot_caps[lvl];
        let level = &levels[lvl];
        let prefix = level.prefix_vec(level.unit_cap);
        let mut candidates = Vec::new();
        for (parent, state) in rows[lvl + 1].iter().enumerate() {
            let base = state.consumed as u128 * ratio as u128;
            if base > cap as u128 {
                break; // states are sorted by consumed
            }
            let base = base as u64;
            let k_max = level.unit_cap.min(cap - base);
            for k in 0..=k_max {
                candidates.push((
                    base + k,
                    &state.profit + &prefix[k as usize],
                    k,
                    parent as u32,
                ));
            }
        }
        rows[lvl] = dominant_states(candidates);
    }

    let ratio = profile.levels[1] / profile.levels[0];
    let cap = profile.slot_caps[0];
    let level = &levels[0];
    let mut best: Option<(BigInt, u64, u32)> = None;
    for (parent, state) in rows[1].iter().enumerate() {
        let base = state.consumed as u128 * ratio as u128;
        if base > cap as u128 {
            break;
        }
        let k = level.unit_cap.min(cap - base as u64);
        let value = &state.profit + &level.best_take(k);
        if best.as_ref().map_or(true, |(b, _, _)| value > *b) {
            best = Some((value, k, parent as u32));
        }
    }
    let (value, k0, mut parent) = best.expect("state rows are never empty");

    let mut takes = vec![0u64; levels.len()];
    takes[0] = k0;
    for lvl in 1..=top {
        let state = &rows[lvl][parent as usize];
        takes[lvl] = state.take;
        parent = state.parent;
    }
    (value, takes)
}

fn distribute_takes(levels: &[Level], classes: &[BsmkpClass], takes: &[u64]) -> Vec<u64> {
    let mut totals = vec![0u64; classes.len()];
    for (lvl, level) in levels.iter().enumerate() {
        let mut rest = takes[lvl];
        for c in 0..level.class_count() {
            if rest == 0 {
                break;
            }
            let idx = level.class_start + c;
            let take = rest.min(classes[idx].bound);
            totals[idx] = take;
            rest -= take;
        }
        debug_assert_eq!(rest, 0);
    }
    totals
}

/// Packs per-class totals into concrete knapsacks, largest size first, each
/// item into the first knapsack with a free slot of that size. Returns
/// `counts[i][t]`. Fails iff the totals violate the nested slot constraints.
pub fn realize_assignment(
    instance: &BsmkpInstance,
    class_totals: &[u64],
) -> Result<Vec<Vec<u64>>, SolverError> {
    let classes = instance.classes();
    assert_eq!(class_totals.len(), classes.len());
    for (t, (&total, class)) in class_totals.iter().zip(classes).enumerate() {
        if total > class.bound {
            return Err(SolverError::InfeasibleCounts(format!(
                "class {t} takes {total} items, bound is {}",
                class.bound
            )));
        }
    }
    let m = instance.capacities().len();
    let mut residual: Vec<Weight> = instance.capacities().to_vec();
    let mut counts = vec![vec![0u64; classes.len()]; m];
    // Classes are stored by ascending size; place in reverse. Batching whole
    // slot runs per knapsack is first fit, items of one size being identical.
    for t in (0..classes.len()).rev() {
        let size = classes[t].size;
        let mut rest = class_totals[t];
        for i in 0..m {
            if rest == 0 {
                break;
            }
            let fit = residual[i] / size;
            let place = rest.min(fit);
            residual[i] -= place * size;
            counts[i][t] += place;
            rest -= place;
        }
        if rest > 0 {
            return Err(SolverError::InfeasibleCounts(format!(
                "{rest} items of size {size} do not fit any knapsack"
            )));
        }
    }
    Ok(counts)
}

/// Exact optimum of the bounded divisible-size multiple knapsack.
///
/// The value is an exact rational; `counts` is a feasible placement attaining
/// it, produced by [`realize_assignment`] and re-checked against the claimed
/// value before returning.
pub fn solve_bsmkp(instance: &BsmkpInstance) -> Result<BsmkpSolution, SolverError> {
    let sizes = instance.sizes();
    let profile = slot_capacities(instance.capacities(), &sizes)?;
    let (levels, denominator) = build_levels(instance, &profile);
    let (scaled, takes) = if dp_work_estimate(&levels, &profile) <= DP_WORK_LIMIT {
        solve_dp_levels(&profile, &levels)
    } else {
        solve_fallback(instance, &profile, &levels, &denominator)?
    };
    let value = Rat::new(scaled, denominator);
    let class_totals = distribute_takes(&levels, instance.classes(), &takes);
    let counts = realize_assignment(instance, &class_totals)?;
    let mut realized = Rat::zero();
    for row in &counts {
        for (y, class) in row.iter().zip(instance.classes()) {
            realized += class.profit.clone() * rat(*y);
        }
    }
    if realized != value {
        return Err(SolverError::ValueMismatch(format!(
            "solver claims {value} but placement is worth {realized}"
        )));
    }
    Ok(BsmkpSolution { counts, value })
}

/// Branch-and-bound over levels for instances whose DP state space would be
/// too large, pruned by a fractional bound on the aggregated capacity.
/// Operates in the same scaled-profit space as the DP.
fn solve_fallback(
    instance: &BsmkpInstance,
    profile: &SlotProfile,
    levels: &[Level],
    denominator: &BigInt,
) -> Result<(BigInt, Vec<u64>), SolverError> {
    let classes = instance.classes();
    let nlevels = levels.len();
    let total_capacity: u64 = instance.capacities().iter().sum();
    let class_level: Vec<usize> = classes
        .iter()
        .map(|c| levels.iter().position(|l| l.size == c.size).unwrap())
        .collect();
    let scaled_profit = |t: usize| -> &BigInt {
        let lvl = class_level[t];
        &levels[lvl].unit_profits[t - levels[lvl].class_start]
    };

    let mut density: Vec<usize> = (0..classes.len()).collect();
    density.sort_by(|&a, &b| {
        let lhs = scaled_profit(a) * BigInt::from(classes[b].size);
        let rhs = scaled_profit(b) * BigInt::from(classes[a].size);
        rhs.cmp(&lhs).then_with(|| a.cmp(&b))
    });

    // Fractional bounded knapsack on the aggregated capacity, restricted to
    // the lowest `level_count` levels. A valid upper bound: it relaxes both
    // integrality and the per-knapsack structure.
    let frac_bound = |level_count: usize, capacity_left: u64| -> Rat {
        let mut left = capacity_left as u128;
        let mut value = Rat::zero();
        for &t in &density {
            if left == 0 {
                break;
            }
            if class_level[t] >= level_count {
                continue;
            }
            let class = &classes[t];
            let mass = (class.bound as u128 * class.size as u128).min(left);
            left -= mass;
            value += Rat::new(
                scaled_profit(t) * BigInt::from(mass),
                BigInt::from(class.size),
            );
        }
        value
    };

    // Greedy feasible start: walk classes by density, take as many units as
    // the nested slot constraints allow.
    let mut used = vec![0u64; nlevels];
    let mut greedy_takes = vec![0u64; nlevels];
    let mut greedy_value = BigInt::zero();
    for &t in &density {
        let class = &classes[t];
        let lvl = class_level[t];
        let mut addable = class.bound;
        for l in 0..=lvl {
            let per_unit = class.size / profile.levels[l];
            addable = addable.min((profile.slot_caps[l] - used[l]) / per_unit);
        }
        if addable == 0 {
            continue;
        }
        for l in 0..=lvl {
            used[l] += addable * (class.size / profile.levels[l]);
        }
        greedy_takes[lvl] += addable;
        greedy_value += scaled_profit(t) * BigInt::from(addable);
    }

    let root_bound = frac_bound(nlevels, total_capacity);
    if Rat::from_integer(greedy_value.clone()) == root_bound {
        return Ok((greedy_value, greedy_takes));
    }

    struct Search<'a> {
        levels: &'a [Level],
        profile: &'a SlotProfile,
        nodes: u64,
        exhausted: bool,
        best_value: BigInt,
        best_takes: Vec<u64>,
    }

    // `remaining` levels are still undecided; the current one is the largest
    // of them. Large takes are tried first.
    fn dfs(
        s: &mut Search,
        remaining: usize,
        used: &mut [u64],
        takes: &mut Vec<u64>,
        profit: BigInt,
        capacity_left: u64,
        frac_bound: &dyn Fn(usize, u64) -> Rat,
    ) {
        if profit > s.best_value {
            s.best_value = profit.clone();
            s.best_takes = takes.clone();
        }
        if remaining == 0 || s.exhausted {
            return;
        }
        let node_bound = Rat::from_integer(profit.clone()) + frac_bound(remaining, capacity_left);
        if node_bound <= Rat::from_integer(s.best_value.clone()) {
            return;
        }
        let lvl = remaining - 1;
        let level = &s.levels[lvl];
        let size = level.size;
        let mut k_max = level.total_units();
        for l in 0..=lvl {
            let per_unit = size / s.profile.levels[l];
            k_max = k_max.min((s.profile.slot_caps[l] - used[l]) / per_unit);
        }
        k_max = k_max.min(capacity_left / size);
        for k in (0..=k_max).rev() {
            s.nodes += 1;
            if s.nodes > FALLBACK_NODE_BUDGET {
                s.exhausted = true;
                return;
            }
            for l in 0..=lvl {
                used[l] += k * (size / s.profile.levels[l]);
            }
            takes[lvl] = k;
            let p = &profit + &level.best_take(k);
            dfs(
                s,
                remaining - 1,
                used,
                takes,
                p,
                capacity_left - k * size,
                frac_bound,
            );
            takes[lvl] = 0;
            for l in 0..=lvl {
                used[l] -= k * (size / s.profile.levels[l]);
            }
            if s.exhausted {
                return;
            }
        }
    }

    let mut search = Search {
        levels,
        profile,
        nodes: 0,
        exhausted: false,
        best_value: greedy_value,
        best_takes: greedy_takes,
    };
    let mut used = vec![0u64; nlevels];
    let mut takes = vec![0u64; nlevels];
    dfs(
        &mut search,
        nlevels,
        &mut used,
        &mut takes,
        BigInt::zero(),
        total_capacity,
        &frac_bound,
    );

    if search.exhausted && Rat::from_integer(search.best_value.clone()) != root_bound {
        return Err(SolverError::ResourceLimit {
            best_value: Rat::new(search.best_value, denominator.clone()),
            upper_bound: root_bound / Rat::from_integer(denominator.clone()),
        });
    }
    Ok((search.best_value, search.best_takes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_frac;

    fn inst(classes: Vec<(Weight, Rat, u64)>, capacities: Vec<Weight>) -> BsmkpInstance {
        let classes = classes
            .into_iter()
            .map(|(s, v, b)| BsmkpClass::new(s, v, b))
            .collect();
        BsmkpInstance::validate(classes, capacities).unwrap()
    }

    /// The five-item example split along sizes {1, 3, 33}.
    fn example_split_33() -> BsmkpInstance {
        inst(
            vec![
                (33, rat(99), 1),
                (33, rat(66), 2),
                (33, rat(33), 2),
                (3, rat(6), 1),
                (3, rat(3), 14),
                (1, rat(2), 3),
                (1, rat(1), 3),
            ],
            vec![47, 64],
        )
    }

    /// The same example split along sizes {1, 8, 16, 32, 64}.
    fn example_split_64() -> BsmkpInstance {
        inst(
            vec![
                (64, rat(64), 1),
                (32, rat(96), 1),
                (32, rat(64), 2),
                (32, rat(32), 1),
                (8, rat(8), 1),
                (1, rat(3), 1),
                (1, rat(2), 8),
                (1, rat(1), 7),
            ],
            vec![47, 64],
        )
    }

    #[test]
    fn slot_profile_examples() {
        let p = slot_capacities(&[47, 64], &[1, 3, 33]).unwrap();
        assert_eq!(p.levels(), &[1, 3, 33]);
        assert_eq!(p.slot_caps(), &[111, 36, 2]);
        let p = slot_capacities(&[10], &[1]).unwrap();
        assert_eq!(p.slot_caps(), &[10]);
        let p = slot_capacities(&[7], &[7]).unwrap();
        assert_eq!(p.slot_caps(), &[1]);
    }

    #[test]
    fn slot_profile_rejects_broken_chain() {
        match slot_capacities(&[10], &[2, 3]) {
            Err(SolverError::DivisibilityViolation(2, 3)) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn nested_predicate_small_cases() {
        let p = slot_capacities(&[47, 64], &[1, 3, 33]).unwrap();
        assert!(nested_slots_feasible(&p, &[3, 14, 2]));
        assert!(!nested_slots_feasible(&p, &[0, 0, 3]));
        assert!(!nested_slots_feasible(&p, &[0, 37, 0]));
        assert!(!nested_slots_feasible(&p, &[4, 14, 2])); // 2*33 + 14*3 + 4 = 112 > 111
    }

    #[test]
    fn solves_example_split_33() {
        let sol = solve_bsmkp(&example_split_33()).unwrap();
        assert_eq!(sol.value, rat(216));
        sol.verify(&example_split_33()).unwrap();
    }

    #[test]
    fn solves_example_split_64() {
        let sol = solve_bsmkp(&example_split_64()).unwrap();
        assert_eq!(sol.value, rat(249));
        sol.verify(&example_split_64()).unwrap();
    }

    #[test]
    fn single_class_capacity_limited() {
        let sol = solve_bsmkp(&inst(vec![(1, rat(1), 5)], vec![3])).unwrap();
        assert_eq!(sol.value, rat(3));
    }

    #[test]
    fn rational_profits_stay_exact() {
        // 3 units of profit 10/7 and one of 5/7 into capacity 7: all fit.
        let sol = solve_bsmkp(&inst(
            vec![(2, rat_frac(10, 7), 3), (1, rat_frac(5, 7), 1)],
            vec![7],
        ))
        .unwrap();
        assert_eq!(sol.value, rat(5));
    }

    #[test]
    fn realize_zero_counts() {
        let inst = example_split_33();
        let counts = realize_assignment(&inst, &vec![0; inst.classes().len()]).unwrap();
        assert!(counts.iter().all(|row| row.iter().all(|&c| c == 0)));
    }

    #[test]
    fn realize_rejects_oversized_counts() {
        let inst = example_split_33();
        // Three items of size 33 never fit capacities {47, 64}.
        let mut totals = vec![0; inst.classes().len()];
        for (t, class) in inst.classes().iter().enumerate() {
            if class.size == 33 {
                totals[t] = class.bound;
            }
        }
        totals[inst.classes().len() - 1] += 0;
        let err = realize_assignment(&inst, &totals).unwrap_err();
        match err {
            SolverError::InfeasibleCounts(_) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn realize_matches_example_packing() {
        let instance = example_split_33();
        // Classes in canonical order: (1,2)b3 (1,1)b3 (3,6)b1 (3,3)b14 (33,99)b1 (33,66)b2 (33,33)b2.
        let totals = vec![3, 0, 1, 13, 1, 1, 0];
        let counts = realize_assignment(&instance, &totals).unwrap();
        let sol = BsmkpSolution {
            counts,
            value: rat(216),
        };
        sol.verify(&instance).unwrap();
    }

    #[test]
    fn monotone_in_capacity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
        for _ in 0..60 {
            let chain = [1u64, 2, 6];
            let nclasses = rng.gen_range(1..=4);
            let classes: Vec<(Weight, Rat, u64)> = (0..nclasses)
                .map(|_| {
                    let s = chain[rng.gen_range(0..3)];
                    (
                        s,
                        rat_frac(rng.gen_range(0..=10), rng.gen_range(1..=3)),
                        rng.gen_range(1..=3),
                    )
                })
                .collect();
            let caps: Vec<Weight> = (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(1..=15))
                .collect();
            let base = solve_bsmkp(&inst(classes.clone(), caps.clone())).unwrap();
            let mut bigger = caps.clone();
            bigger[0] += rng.gen_range(1..=5);
            let grown = solve_bsmkp(&inst(classes.clone(), bigger)).unwrap();
            assert!(grown.value >= base.value);
            let mut extra = caps.clone();
            extra.push(rng.gen_range(1..=15));
            let added = solve_bsmkp(&inst(classes, extra)).unwrap();
            assert!(added.value >= base.value);
        }
    }

    #[test]
    fn fallback_on_huge_state_space() {
        // Slot caps around 3e8 at level 2 push the DP estimate over its
        // limit; the greedy start is optimal here and proven by the bound.
        let instance = inst(
            vec![(2, rat(3), 1 << 40), (1, rat(1), 1 << 40)],
            vec![300_000_000, 300_000_000],
        );
        let sol = solve_bsmkp(&instance).unwrap();
        assert_eq!(sol.value, rat(900_000_000));
        sol.verify(&instance).unwrap();
    }
}
