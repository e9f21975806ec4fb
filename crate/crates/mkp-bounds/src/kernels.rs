//! Exact and fractional single-knapsack primitives: the greedy fractional
//! (Dantzig) bound, an exact 0-1 knapsack solver and a subset-sum solver.
//!
//! The 0-1 solver uses weight-indexed dynamic programming while the table
//! stays small and otherwise a depth-first branch-and-bound ordered by profit
//! density with fractional-bound pruning. Subset-sum runs on a bit-vector DP
//! up to a capacity limit and falls back to the 0-1 solver above it.

use thiserror::Error;

use crate::{rat, Profit, Rat, Weight};

/// Single-knapsack item view. Zero profits are allowed; weights are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelItem {
    pub profit: Profit,
    pub weight: Weight,
}

impl KernelItem {
    pub fn new(profit: Profit, weight: Weight) -> Self {
        debug_assert!(weight >= 1);
        Self { profit, weight }
    }
}

#[derive(Debug, Clone, Error)]
pub enum KernelError {
    /// Search budget exhausted. `best_value` is feasible (attained by
    /// `best_chosen`), `upper_bound` is a valid bound on the true optimum.
    #[error("node budget exhausted: best {best_value}, upper bound {upper_bound}")]
    ResourceLimit {
        best_value: Profit,
        upper_bound: Profit,
        best_chosen: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSolution {
    pub value: Profit,
    /// Chosen item indices, ascending.
    pub chosen: Vec<usize>,
}

const DP_CAPACITY_LIMIT: Weight = 1_000_000;
const DP_BIT_LIMIT: u128 = 100_000_000;
const SUBSET_BITSET_LIMIT: Weight = 10_000_000;
const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Item indices sorted by profit density descending; ties prefer the larger
/// weight, then the lower input index. Fixed so results are reproducible.
pub(crate) fn density_order(items: &[KernelItem]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| {
        let ia = items[a];
        let ib = items[b];
        let lhs = ia.profit as u128 * ib.weight as u128;
        let rhs = ib.profit as u128 * ia.weight as u128;
        rhs.cmp(&lhs)
            .then_with(|| ib.weight.cmp(&ia.weight))
            .then_with(|| a.cmp(&b))
    });
    order
}

/// Greedy fractional value over items already in density order: fill whole
/// items, split the first that does not fit, stop. Exact rational result.
fn dantzig_sorted(items: impl Iterator<Item = KernelItem>, mut capacity: Weight) -> Rat {
    let mut value = Rat::from_integer(0.into());
    for item in items {
        if capacity == 0 {
            break;
        }
        if item.weight <= capacity {
            capacity -= item.weight;
            value += rat(item.profit);
        } else {
            value += rat(item.profit) * crate::rat_frac(capacity, item.weight);
            break;
        }
    }
    value
}

/// Floor of the greedy fractional value, integer arithmetic only. Used as the
/// branch-and-bound pruning bound; items must already be in density order.
pub(crate) fn dantzig_floor_sorted(items: &[KernelItem], mut capacity: Weight) -> Profit {
    let mut whole: u64 = 0;
    for item in items {
        if capacity == 0 {
            break;
        }
        if item.weight <= capacity {
            capacity -= item.weight;
            whole += item.profit;
        } else {
            whole += (capacity as u128 * item.profit as u128 / item.weight as u128) as u64;
            break;
        }
    }
    whole
}

/// Value of the greedy fractional knapsack (the classical upper bound for the
/// 0-1 knapsack; equals the LP optimum of the single-knapsack relaxation).
pub fn dantzig_bound(items: &[KernelItem], capacity: Weight) -> Rat {
    let order = density_order(items);
    dantzig_sorted(order.into_iter().map(|i| items[i]), capacity)
}

/// Dantzig bound together with the per-item fraction taken, in input order.
/// The fractions form the greedy fractional solution attaining the bound.
pub fn dantzig_fractions(items: &[KernelItem], mut capacity: Weight) -> (Rat, Vec<Rat>) {
    let order = density_order(items);
    let mut fractions = vec![Rat::from_integer(0.into()); items.len()];
    let mut value = Rat::from_integer(0.into());
    for idx in order {
        if capacity == 0 {
            break;
        }
        let item = items[idx];
        if item.weight <= capacity {
            capacity -= item.weight;
            value += rat(item.profit);
            fractions[idx] = rat(1);
        } else {
            let f = crate::rat_frac(capacity, item.weight);
            value += rat(item.profit) * f.clone();
            fractions[idx] = f;
            break;
        }
    }
    (value, fractions)
}

/// Exact 0-1 knapsack with the default node budget for the fallback search.
pub fn solve_knapsack_01(
    items: &[KernelItem],
    capacity: Weight,
) -> Result<KnapsackSolution, KernelError> {
    solve_knapsack_01_budgeted(items, capacity, DEFAULT_NODE_BUDGET)
}

/// Exact 0-1 knapsack. Picks DP or branch-and-bound depending on table size;
/// the budget applies only to the branch-and-bound path.
pub fn solve_knapsack_01_budgeted(
    items: &[KernelItem],
    capacity: Weight,
    node_budget: u64,
) -> Result<KnapsackSolution, KernelError> {
    if items.is_empty() || capacity == 0 {
        return Ok(KnapsackSolution {
            value: 0,
            chosen: Vec::new(),
        });
    }
    let bits = (items.len() as u128) * (capacity as u128 + 1);
    if capacity <= DP_CAPACITY_LIMIT && bits <= DP_BIT_LIMIT {
        Ok(solve_dp(items, capacity))
    } else {
        solve_bnb(items, capacity, node_budget)
    }
}

fn solve_dp(items: &[KernelItem], capacity: Weight) -> KnapsackSolution {
    let cap = capacity as usize;
    let words = cap / 64 + 1;
    let mut dp = vec![0u64; cap + 1];
    let mut took = vec![0u64; items.len() * words];
    for (i, item) in items.iter().enumerate() {
        let w = item.weight as usize;
        if w > cap {
            continue;
        }
        let row = &mut took[i * words..(i + 1) * words];
        for c in (w..=cap).rev() {
            let candidate = dp[c - w] + item.profit;
            if candidate > dp[c] {
                dp[c] = candidate;
                row[c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut c = cap;
    let mut chosen = Vec::new();
    for i in (0..items.len()).rev() {
        let row = &took[i * words..(i + 1) * words];
        if row[c / 64] >> (c % 64) & 1 == 1 {
            chosen.push(i);
            c -= items[i].weight as usize;
        }
    }
    chosen.reverse();
    KnapsackSolution {
        value: dp[cap],
        chosen,
    }
}

fn solve_bnb(
    items: &[KernelItem],
    capacity: Weight,
    node_budget: u64,
) -> Result<KnapsackSolution, KernelError> {
    enum Op {
        Visit {
            idx: usize,
            capacity: Weight,
            profit: Profit,
        },
        Unmark(usize),
    }

    let order = density_order(items);
    let sorted: Vec<KernelItem> = order.iter().map(|&i| items[i]).collect();
    let n = sorted.len();
    let mut marked = vec![false; n];
    let mut best_value: Profit = 0;
    let mut best_chosen: Vec<usize> = Vec::new();
    let mut nodes: u64 = 0;
    let mut stack = vec![Op::Visit {
        idx: 0,
        capacity,
        profit: 0,
    }];

    while let Some(op) = stack.pop() {
        match op {
            Op::Unmark(i) => marked[i] = false,
            Op::Visit {
                idx,
                capacity,
                profit,
            } => {
                nodes += 1;
                if nodes > node_budget {
                    let mut upper = best_value.max(profit + dantzig_floor_sorted(&sorted[idx..], capacity));
                    for open in &stack {
                        if let Op::Visit {
                            idx,
                            capacity,
                            profit,
                        } = open
                        {
                            upper = upper
                                .max(profit + dantzig_floor_sorted(&sorted[*idx..], *capacity));
                        }
                    }
                    return Err(KernelError::ResourceLimit {
                        best_value,
                        upper_bound: upper,
                        best_chosen,
                    });
                }
                if profit > best_value {
                    best_value = profit;
                    best_chosen = marked
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m)
                        .map(|(i, _)| order[i])
                        .collect();
                }
                if idx == n {
                    continue;
                }
                if profit + dantzig_floor_sorted(&sorted[idx..], capacity) <= best_value {
                    continue;
                }
                stack.push(Op::Visit {
                    idx: idx + 1,
                    capacity,
                    profit,
                });
                let item = sorted[idx];
                if item.weight <= capacity {
                    marked[idx] = true;
                    stack.push(Op::Unmark(idx));
                    stack.push(Op::Visit {
                        idx: idx + 1,
                        capacity: capacity - item.weight,
                        profit: profit + item.profit,
                    });
                }
            }
        }
    }
    best_chosen.sort_unstable();
    Ok(KnapsackSolution {
        value: best_value,
        chosen: best_chosen,
    })
}

/// Maximum subset weight not exceeding `capacity`.
pub fn solve_subset_sum(weights: &[Weight], capacity: Weight) -> Result<Weight, KernelError> {
    if capacity == 0 || weights.is_empty() {
        return Ok(0);
    }
    if capacity <= SUBSET_BITSET_LIMIT {
        return Ok(subset_sum_bitset(weights, capacity));
    }
    let items: Vec<KernelItem> = weights
        .iter()
        .map(|&w| KernelItem::new(w, w))
        .collect();
    solve_knapsack_01(&items, capacity).map(|s| s.value)
}

fn subset_sum_bitset(weights: &[Weight], capacity: Weight) -> Weight {
    let nbits = capacity as usize + 1;
    let words = nbits.div_ceil(64);
    let mut bits = vec![0u64; words];
    bits[0] = 1;
    for &w in weights {
        if w == 0 || w > capacity {
            continue;
        }
        or_shift(&mut bits, w as usize);
        if bits[capacity as usize / 64] >> (capacity as usize % 64) & 1 == 1 {
            break;
        }
    }
    // Highest reachable sum <= capacity.
    let top = capacity as usize;
    let top_word = top / 64;
    let top_mask = if top % 64 == 63 {
        u64::MAX
    } else {
        (1u64 << (top % 64 + 1)) - 1
    };
    for i in (0..=top_word).rev() {
        let word = if i == top_word { bits[i] & top_mask } else { bits[i] };
        if word != 0 {
            return (i * 64 + 63 - word.leading_zeros() as usize) as Weight;
        }
    }
    0
}

/// `bits |= bits << shift`, in place.
fn or_shift(bits: &mut [u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    for i in (word_shift..bits.len()).rev() {
        let mut v = bits[i - word_shift] << bit_shift;
        if bit_shift > 0 && i > word_shift {
            v |= bits[i - word_shift - 1] >> (64 - bit_shift);
        }
        bits[i] |= v;
    }
}

/// Subset-sum value together with one subset attaining it. Debug helper for
/// small capacities (quadratic memory in `capacity`); panics above 1e6.
pub fn subset_sum_witness(weights: &[Weight], capacity: Weight) -> (Weight, Vec<usize>) {
    assert!(capacity <= 1_000_000, "witness helper is for small capacities");
    let cap = capacity as usize;
    let mut setter: Vec<Option<usize>> = vec![None; cap + 1];
    let mut reachable = vec![false; cap + 1];
    reachable[0] = true;
    for (i, &w) in weights.iter().enumerate() {
        let w = w as usize;
        if w == 0 || w > cap {
            continue;
        }
        for c in (w..=cap).rev() {
            if !reachable[c] && reachable[c - w] {
                reachable[c] = true;
                setter[c] = Some(i);
            }
        }
    }
    let best = (0..=cap).rev().find(|&c| reachable[c]).unwrap_or(0);
    let mut subset = Vec::new();
    let mut c = best;
    while c > 0 {
        let i = setter[c].expect("reachable sums have a setter");
        subset.push(i);
        c -= weights[i] as usize;
    }
    subset.reverse();
    (best as Weight, subset)
}
