//! Independent brute-force solvers and a branch-and-bound for desk-scale
//! optima. These exist to verify the bounds, so they stay deliberately
//! simple: the brute forces enumerate, the branch-and-bound prunes with the
//! surrogate bound at every node and the sequential bound at the root.

use std::time::{Duration, Instant};

use num_traits::Zero;
use thiserror::Error;

use crate::instance::{BsmkpInstance, BsmkpSolution, MkpInstance, MkpSolution};
use crate::kernels::{dantzig_floor_sorted, density_order, KernelItem};
use crate::relax;
use crate::{rat, Profit, Rat, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimits {
    /// Item cap for full MKP enumeration.
    pub max_items: usize,
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_items: 12,
            node_budget: 10_000_000,
            time_budget: Duration::from_secs(10),
        }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large to enumerate: {0}")]
    TooLarge(String),
}

/// Exact optimum by enumerating every assignment (knapsacks in index order,
/// "unassigned" last) with capacity pruning. The assignment returned is the
/// first optimum in enumeration order.
pub fn brute_force_mkp(
    instance: &MkpInstance,
    limits: &OracleLimits,
) -> Result<MkpSolution, OracleError> {
    let n = instance.n();
    let m = instance.m();
    if n > limits.max_items {
        return Err(OracleError::TooLarge(format!(
            "{n} items exceed the cap of {}",
            limits.max_items
        )));
    }
    let states = (m as u128 + 1).saturating_pow(n as u32);
    if states > 2_000_000_000 {
        return Err(OracleError::TooLarge(format!(
            "(m+1)^n = {states} assignments"
        )));
    }

    struct Search<'a> {
        instance: &'a MkpInstance,
        residual: Vec<Weight>,
        assignment: Vec<Option<usize>>,
        best_value: Profit,
        best_assignment: Vec<Option<usize>>,
    }

    fn descend(s: &mut Search, item: usize, value: Profit) {
        if item == s.instance.n() {
            if value > s.best_value {
                s.best_value = value;
                s.best_assignment = s.assignment.clone();
            }
            return;
        }
        let it = s.instance.items()[item];
        for i in 0..s.instance.m() {
            if it.weight <= s.residual[i] {
                s.residual[i] -= it.weight;
                s.assignment[item] = Some(i);
                descend(s, item + 1, value + it.profit);
                s.assignment[item] = None;
                s.residual[i] += it.weight;
            }
        }
        descend(s, item + 1, value);
    }

    let mut search = Search {
        instance,
        residual: instance.capacities().to_vec(),
        assignment: vec![None; n],
        best_value: 0,
        best_assignment: vec![None; n],
    };
    descend(&mut search, 0, 0);
    Ok(MkpSolution {
        assignment: search.best_assignment,
        value: search.best_value,
    })
}

/// Exact optimum of the divisible-size instance by enumerating per-knapsack
/// count matrices cell by cell, with capacity and bound pruning. A live node
/// counter caps the work.
pub fn brute_force_bsmkp(
    instance: &BsmkpInstance,
    limits: &OracleLimits,
) -> Result<BsmkpSolution, OracleError> {
    let classes = instance.classes();
    let m = instance.capacities().len();
    let mut estimate: u128 = 1;
    for class in classes {
        estimate = estimate.saturating_mul((class.bound as u128 + 1).saturating_pow(m as u32));
    }
    if estimate > 1_000_000_000_000 {
        return Err(OracleError::TooLarge(format!("{estimate} count matrices")));
    }

    struct Search<'a> {
        instance: &'a BsmkpInstance,
        residual: Vec<Weight>,
        counts: Vec<Vec<u64>>,
        best_value: Rat,
        best_counts: Vec<Vec<u64>>,
        nodes: u64,
        node_budget: u64,
    }

    fn descend(
        s: &mut Search,
        cell: usize,
        bound_left: u64,
        value: Rat,
    ) -> Result<(), OracleError> {
        s.nodes += 1;
        if s.nodes > s.node_budget {
            return Err(OracleError::TooLarge(format!(
                "node budget {} exhausted",
                s.node_budget
            )));
        }
        let classes = s.instance.classes();
        let m = s.instance.capacities().len();
        if cell == classes.len() * m {
            if value > s.best_value {
                s.best_value = value;
                s.best_counts = s.counts.clone();
            }
            return Ok(());
        }
        let t = cell / m;
        let i = cell % m;
        let class = &classes[t];
        let bound_left = if i == 0 { class.bound } else { bound_left };
        let fit = s.residual[i] / class.size;
        let max_take = bound_left.min(fit);
        for y in 0..=max_take {
            s.residual[i] -= y * class.size;
            s.counts[i][t] = y;
            let next_bound = if i + 1 == m { 0 } else { bound_left - y };
            descend(
                s,
                cell + 1,
                next_bound,
                &value + &(class.profit.clone() * rat(y)),
            )?;
            s.counts[i][t] = 0;
            s.residual[i] += y * class.size;
        }
        Ok(())
    }

    let mut search = Search {
        instance,
        residual: instance.capacities().to_vec(),
        counts: vec![vec![0; classes.len()]; m],
        best_value: Rat::zero(),
        best_counts: vec![vec![0; classes.len()]; m],
        nodes: 0,
        node_budget: limits.node_budget,
    };
    descend(&mut search, 0, 0, Rat::zero())?;
    Ok(BsmkpSolution {
        counts: search.best_counts,
        value: search.best_value,
    })
}

/// Outcome of the branch-and-bound: `lower` is attained by `solution`,
/// `upper` is a proven bound, `exact` means they met within the budget.
#[derive(Debug, Clone)]
pub struct BnbOutcome {
    pub solution: MkpSolution,
    pub lower: Profit,
    pub upper: Profit,
    pub exact: bool,
    pub nodes: u64,
}

/// Depth-first item-to-knapsack branch-and-bound. Items are branched in
/// density order; every node is pruned against the surrogate bound of its
/// remaining items (a suffix knapsack table when memory allows, else the
/// fractional bound), and the root additionally against the sequential bound
/// of one seed.
pub fn bnb_mkp(instance: &MkpInstance, limits: &OracleLimits) -> BnbOutcome {
    let n = instance.n();
    let m = instance.m();
    let kernel: Vec<KernelItem> = instance
        .items()
        .iter()
        .map(|it| KernelItem::new(it.profit, it.weight))
        .collect();
    let order = density_order(&kernel);
    let sorted: Vec<KernelItem> = order.iter().map(|&i| kernel[i]).collect();
    let total_capacity = instance.total_capacity();

    // Suffix surrogate table: table[k][c] = exact knapsack optimum of the
    // items from branch position k on, at capacity c.
    let cells = (n as u128 + 1) * (total_capacity as u128 + 1);
    let width = total_capacity as usize + 1;
    let suffix: Option<Vec<Profit>> = if cells <= 50_000_000 {
        let mut table = vec![0u64; (n + 1) * width];
        for k in (0..n).rev() {
            let item = sorted[k];
            let (rows, tail) = table.split_at_mut((k + 1) * width);
            let row = &mut rows[k * width..];
            let next = &tail[..width];
            for c in 0..width {
                let mut best = next[c];
                if item.weight as usize <= c {
                    best = best.max(next[c - item.weight as usize] + item.profit);
                }
                row[c] = best;
            }
        }
        Some(table)
    } else {
        None
    };
    let node_bound = |k: usize, residual_total: Weight| -> Profit {
        match &suffix {
            Some(table) => table[k * width + residual_total as usize],
            None => dantzig_floor_sorted(&sorted[k..], residual_total),
        }
    };

    // Root bound: surrogate of everything, and the sequential bound of the
    // heaviest seed when one exists.
    let mut root_upper = node_bound(0, total_capacity);
    if let Some(&seed) = relax::default_seed_order(instance).first() {
        if let Ok(seq) =
            relax::sequential_bound_seeded(instance, &relax::SequenceParams::default(), &[seed])
        {
            let seq_floor = seq.value.floor().to_integer();
            if let Ok(v) = Profit::try_from(&seq_floor) {
                root_upper = root_upper.min(v);
            }
        }
    }

    struct Search<'a> {
        sorted: &'a [KernelItem],
        m: usize,
        residual: Vec<Weight>,
        residual_total: Weight,
        assignment: Vec<Option<usize>>, // by branch position
        best_value: Profit,
        best_assignment: Vec<Option<usize>>,
        nodes: u64,
        node_budget: u64,
        deadline: Instant,
        aborted: bool,
        target: Profit,
    }

    fn descend(s: &mut Search, k: usize, value: Profit, bound: &dyn Fn(usize, Weight) -> Profit) {
        s.nodes += 1;
        if s.nodes > s.node_budget || (s.nodes % 1024 == 0 && Instant::now() >= s.deadline) {
            s.aborted = true;
            return;
        }
        if value > s.best_value {
            s.best_value = value;
            s.best_assignment = s.assignment.clone();
        }
        if s.best_value >= s.target || k == s.sorted.len() {
            return;
        }
        if value + bound(k, s.residual_total) <= s.best_value {
            return;
        }
        let item = s.sorted[k];
        for i in 0..s.m {
            if item.weight > s.residual[i] {
                continue;
            }
            // Knapsacks with equal residual are interchangeable here.
            if s.residual[..i].contains(&s.residual[i]) {
                continue;
            }
            s.residual[i] -= item.weight;
            s.residual_total -= item.weight;
            s.assignment[k] = Some(i);
            descend(s, k + 1, value + item.profit, bound);
            s.assignment[k] = None;
            s.residual_total += item.weight;
            s.residual[i] += item.weight;
            if s.aborted || s.best_value >= s.target {
                return;
            }
        }
        descend(s, k + 1, value, bound);
    }

    let mut search = Search {
        sorted: &sorted,
        m,
        residual: instance.capacities().to_vec(),
        residual_total: total_capacity,
        assignment: vec![None; n],
        best_value: 0,
        best_assignment: vec![None; n],
        nodes: 0,
        node_budget: limits.node_budget,
        deadline: Instant::now() + limits.time_budget,
        aborted: false,
        target: root_upper,
    };
    descend(&mut search, 0, 0, &node_bound);

    let mut assignment = vec![None; n];
    for (pos, slot) in search.best_assignment.iter().enumerate() {
        assignment[order[pos]] = *slot;
    }
    let exact = !search.aborted;
    BnbOutcome {
        solution: MkpSolution {
            assignment,
            value: search.best_value,
        },
        lower: search.best_value,
        upper: if exact { search.best_value } else { root_upper },
        exact,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{BsmkpClass, MkpItem};
    use crate::kernels::solve_knapsack_01;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn example_5x2() -> MkpInstance {
        let data = [(99u64, 33u64), (70, 35), (74, 37), (47, 47), (64, 64)];
        let items = data.iter().map(|&(p, w)| MkpItem::new(p, w)).collect();
        MkpInstance::validate(items, vec![47, 64], None).unwrap()
    }

    #[test]
    fn brute_force_example() {
        let sol = brute_force_mkp(&example_5x2(), &OracleLimits::default()).unwrap();
        assert_eq!(sol.value, 173);
        sol.verify(&example_5x2()).unwrap();
        // Items 1 and 3 in one-based terms.
        let packed: Vec<usize> = sol
            .assignment
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(j, _)| j)
            .collect();
        assert_eq!(packed, vec![0, 2]);
    }

    #[test]
    fn brute_force_degenerate_fit() {
        let inst = MkpInstance::validate(
            vec![MkpItem::new(5, 50), MkpItem::new(9, 60)],
            vec![10, 20],
            None,
        )
        .unwrap();
        let sol = brute_force_mkp(&inst, &OracleLimits::default()).unwrap();
        assert_eq!(sol.value, 0);
    }

    #[test]
    fn brute_force_single_knapsack_matches_kernel() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(1..=9);
            let items: Vec<MkpItem> = (0..n)
                .map(|_| MkpItem::new(rng.gen_range(1..=30), rng.gen_range(1..=20)))
                .collect();
            let cap = rng.gen_range(1..=60);
            let inst = MkpInstance::validate(items.clone(), vec![cap], None).unwrap();
            let brute = brute_force_mkp(&inst, &OracleLimits::default()).unwrap();
            let kernel: Vec<KernelItem> = items
                .iter()
                .map(|it| KernelItem::new(it.profit, it.weight))
                .collect();
            assert_eq!(brute.value, solve_knapsack_01(&kernel, cap).unwrap().value);
        }
    }

    #[test]
    fn brute_force_rejects_large() {
        let items = (0..20).map(|_| MkpItem::new(1, 1)).collect();
        let inst = MkpInstance::validate(items, vec![5], None).unwrap();
        assert!(matches!(
            brute_force_mkp(&inst, &OracleLimits::default()),
            Err(OracleError::TooLarge(_))
        ));
    }

    #[test]
    fn bsmkp_brute_single_class() {
        let inst = BsmkpInstance::validate(vec![BsmkpClass::new(3, rat(2), 4)], vec![10]).unwrap();
        let sol = brute_force_bsmkp(&inst, &OracleLimits::default()).unwrap();
        // min(4, floor(10/3)) = 3 items of profit 2.
        assert_eq!(sol.value, rat(6));
        sol.verify(&inst).unwrap();
    }

    #[test]
    fn bsmkp_brute_tiny_capacity() {
        let inst =
            BsmkpInstance::validate(vec![BsmkpClass::new(2, rat(5), 3)], vec![1, 1]).unwrap();
        let sol = brute_force_bsmkp(&inst, &OracleLimits::default()).unwrap();
        assert_eq!(sol.value, Rat::zero());
    }

    #[test]
    fn bnb_example_exact() {
        let out = bnb_mkp(&example_5x2(), &OracleLimits::default());
        assert!(out.exact);
        assert_eq!(out.lower, 173);
        assert_eq!(out.upper, 173);
        out.solution.verify(&example_5x2()).unwrap();
    }

    #[test]
    fn bnb_infeasible_fit() {
        let inst = MkpInstance::validate(vec![MkpItem::new(7, 100)], vec![10], None).unwrap();
        let out = bnb_mkp(&inst, &OracleLimits::default());
        assert!(out.exact);
        assert_eq!(out.lower, 0);
    }

    #[test]
    fn bnb_matches_brute_force() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for case in 0..40 {
            let n = rng.gen_range(2..=9);
            let m = rng.gen_range(1..=3);
            let items: Vec<MkpItem> = (0..n)
                .map(|_| MkpItem::new(rng.gen_range(1..=40), rng.gen_range(1..=25)))
                .collect();
            let caps: Vec<Weight> = (0..m).map(|_| rng.gen_range(5..=50)).collect();
            let inst = MkpInstance::validate(items, caps, None).unwrap();
            let brute = brute_force_mkp(&inst, &OracleLimits::default()).unwrap();
            let bnb = bnb_mkp(&inst, &OracleLimits::default());
            assert!(bnb.exact, "case {case} not exact");
            assert_eq!(bnb.lower, brute.value, "case {case} value mismatch");
            bnb.solution.verify(&inst).unwrap();
        }
    }
}
