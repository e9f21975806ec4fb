//! Core data types, validation and the plain-text instance formats.
//!
//! Instances are immutable after validation and safe to share across threads.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::{rat, Profit, Rat, Weight};

/// A single constraint violation found during validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("empty instance: no {0}")]
    EmptyInstance(&'static str),
    #[error("{field}[{index}] must be positive")]
    NonPositiveValue { field: &'static str, index: usize },
    #[error("negative profit in class {0}")]
    NegativeProfit(usize),
    #[error("sizes {0} and {1} break the divisibility chain")]
    DivisibilityViolation(Weight, Weight),
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid instance: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One MKP item: integer profit and weight, both at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MkpItem {
    pub profit: Profit,
    pub weight: Weight,
}

impl MkpItem {
    pub fn new(profit: Profit, weight: Weight) -> Self {
        Self { profit, weight }
    }
}

/// A validated 0-1 multiple knapsack instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkpInstance {
    items: Vec<MkpItem>,
    capacities: Vec<Weight>,
    name: Option<String>,
}

impl MkpInstance {
    /// Validates raw item and capacity data. Collects every violation rather
    /// than stopping at the first.
    pub fn validate(
        items: Vec<MkpItem>,
        capacities: Vec<Weight>,
        name: Option<String>,
    ) -> Result<Self, InstanceError> {
        let mut violations = Vec::new();
        if items.is_empty() {
            violations.push(Violation::EmptyInstance("items"));
        }
        if capacities.is_empty() {
            violations.push(Violation::EmptyInstance("capacities"));
        }
        for (j, item) in items.iter().enumerate() {
            if item.profit == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "profit",
                    index: j,
                });
            }
            if item.weight == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "weight",
                    index: j,
                });
            }
        }
        for (i, &c) in capacities.iter().enumerate() {
            if c == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "capacity",
                    index: i,
                });
            }
        }
        if violations.is_empty() {
            Ok(Self {
                items,
                capacities,
                name,
            })
        } else {
            Err(InstanceError::Invalid(violations))
        }
    }

    pub fn items(&self) -> &[MkpItem] {
        &self.items
    }

    pub fn capacities(&self) -> &[Weight] {
        &self.capacities
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn m(&self) -> usize {
        self.capacities.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight).sum()
    }

    pub fn total_capacity(&self) -> u64 {
        self.capacities.iter().sum()
    }

    /// True when no item fits any knapsack. Bounds are still defined for such
    /// instances; only packings are trivially empty.
    pub fn is_degenerate(&self) -> bool {
        let max_cap = self.capacities.iter().copied().max().unwrap_or(0);
        self.items.iter().all(|it| it.weight > max_cap)
    }

    /// Same instance with the capacities replaced. The caller must not
    /// increase any capacity beyond its validated value.
    pub(crate) fn with_capacities(&self, capacities: Vec<Weight>) -> Self {
        debug_assert_eq!(capacities.len(), self.capacities.len());
        Self {
            items: self.items.clone(),
            capacities,
            name: self.name.clone(),
        }
    }

    /// Same instance under a different name.
    pub fn renamed(&self, name: Option<String>) -> Self {
        Self {
            items: self.items.clone(),
            capacities: self.capacities.clone(),
            name,
        }
    }

    /// Writes the plain-text format: `n m`, then `p_j w_j` per item, then one
    /// capacity per line. A leading `# name:` comment carries the name.
    pub fn write_to(&self, out: &mut dyn Write) -> io::Result<()> {
        if let Some(name) = &self.name {
            writeln!(out, "# name: {name}")?;
        }
        writeln!(out, "{} {}", self.n(), self.m())?;
        for item in &self.items {
            writeln!(out, "{} {}", item.profit, item.weight)?;
        }
        for c in &self.capacities {
            writeln!(out, "{c}")?;
        }
        Ok(())
    }

    pub fn read_from(reader: impl BufRead) -> Result<Self, InstanceError> {
        let mut lines = ContentLines::new(reader);
        let (line_no, header) = lines.next_content()?;
        let mut header_it = header.split_whitespace();
        let n: usize = parse_token(header_it.next(), line_no, "item count")?;
        let m: usize = parse_token(header_it.next(), line_no, "knapsack count")?;
        let mut items = Vec::with_capacity(n);
        for _ in 0..n {
            let (line_no, line) = lines.next_content()?;
            let mut it = line.split_whitespace();
            let profit: Profit = parse_token(it.next(), line_no, "profit")?;
            let weight: Weight = parse_token(it.next(), line_no, "weight")?;
            items.push(MkpItem::new(profit, weight));
        }
        let mut capacities = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next_content()?;
            let c: Weight = parse_token(line.split_whitespace().next(), line_no, "capacity")?;
            capacities.push(c);
        }
        Self::validate(items, capacities, lines.name)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), InstanceError> {
        let mut file = std::fs::File::create(path)?;
        self.write_to(&mut file)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InstanceError> {
        let file = std::fs::File::open(path)?;
        Self::read_from(io::BufReader::new(file))
    }
}

/// An integral assignment of items to knapsacks; `None` means unassigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkpSolution {
    pub assignment: Vec<Option<usize>>,
    pub value: Profit,
}

impl MkpSolution {
    pub fn empty(n: usize) -> Self {
        Self {
            assignment: vec![None; n],
            value: 0,
        }
    }

    /// Checks capacity feasibility and that `value` matches the assignment.
    pub fn verify(&self, instance: &MkpInstance) -> Result<(), String> {
        if self.assignment.len() != instance.n() {
            return Err(format!(
                "assignment length {} does not match n = {}",
                self.assignment.len(),
                instance.n()
            ));
        }
        let mut loads = vec![0u64; instance.m()];
        let mut value = 0u64;
        for (j, slot) in self.assignment.iter().enumerate() {
            if let Some(i) = slot {
                if *i >= instance.m() {
                    return Err(format!("item {j} assigned to unknown knapsack {i}"));
                }
                loads[*i] += instance.items()[j].weight;
                value += instance.items()[j].profit;
            }
        }
        for (i, (&load, &cap)) in loads.iter().zip(instance.capacities()).enumerate() {
            if load > cap {
                return Err(format!("knapsack {i} overloaded: {load} > {cap}"));
            }
        }
        if value != self.value {
            return Err(format!(
                "claimed value {} but assignment is worth {value}",
                self.value
            ));
        }
        Ok(())
    }
}

/// One item class of a bounded divisible-size instance: `bound` copies of an
/// item with the given size and exact rational profit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsmkpClass {
    pub size: Weight,
    pub profit: Rat,
    pub bound: u64,
}

impl BsmkpClass {
    pub fn new(size: Weight, profit: Rat, bound: u64) -> Self {
        Self {
            size,
            profit,
            bound,
        }
    }
}

/// A validated bounded multiple knapsack instance whose distinct class sizes
/// form a divisibility chain. Classes are kept in canonical order (size
/// ascending, profit descending) and merged by `(size, profit)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsmkpInstance {
    classes: Vec<BsmkpClass>,
    capacities: Vec<Weight>,
}

impl BsmkpInstance {
    pub fn validate(
        classes: Vec<BsmkpClass>,
        capacities: Vec<Weight>,
    ) -> Result<Self, InstanceError> {
        let mut violations = Vec::new();
        if classes.is_empty() {
            violations.push(Violation::EmptyInstance("classes"));
        }
        if capacities.is_empty() {
            violations.push(Violation::EmptyInstance("capacities"));
        }
        for (t, class) in classes.iter().enumerate() {
            if class.size == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "size",
                    index: t,
                });
            }
            if class.bound == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "bound",
                    index: t,
                });
            }
            if class.profit.is_negative() {
                violations.push(Violation::NegativeProfit(t));
            }
        }
        for (i, &c) in capacities.iter().enumerate() {
            if c == 0 {
                violations.push(Violation::NonPositiveValue {
                    field: "capacity",
                    index: i,
                });
            }
        }
        if violations.is_empty() {
            let mut sizes: Vec<Weight> = classes.iter().map(|c| c.size).collect();
            sizes.sort_unstable();
            sizes.dedup();
            for pair in sizes.windows(2) {
                if pair[1] % pair[0] != 0 {
                    violations.push(Violation::DivisibilityViolation(pair[0], pair[1]));
                }
            }
        }
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }

        // Canonical order, then merge duplicate (size, profit) classes by
        // summing their bounds.
        let mut classes = classes;
        classes.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| b.profit.cmp(&a.profit)));
        let mut merged: Vec<BsmkpClass> = Vec::with_capacity(classes.len());
        for class in classes {
            match merged.last_mut() {
                Some(last) if last.size == class.size && last.profit == class.profit => {
                    last.bound += class.bound;
                }
                _ => merged.push(class),
            }
        }
        Ok(Self {
            classes: merged,
            capacities,
        })
    }

    pub fn classes(&self) -> &[BsmkpClass] {
        &self.classes
    }

    pub fn capacities(&self) -> &[Weight] {
        &self.capacities
    }

    /// Distinct sizes, ascending. A divisibility chain by construction.
    pub fn sizes(&self) -> Vec<Weight> {
        let mut sizes: Vec<Weight> = self.classes.iter().map(|c| c.size).collect();
        sizes.dedup();
        sizes
    }

    /// Writes `L m`, then `size numerator denominator bound` per class, then
    /// one capacity per line.
    pub fn write_to(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{} {}", self.classes.len(), self.capacities.len())?;
        for class in &self.classes {
            writeln!(
                out,
                "{} {} {} {}",
                class.size,
                class.profit.numer(),
                class.profit.denom(),
                class.bound
            )?;
        }
        for c in &self.capacities {
            writeln!(out, "{c}")?;
        }
        Ok(())
    }

    pub fn read_from(reader: impl BufRead) -> Result<Self, InstanceError> {
        let mut lines = ContentLines::new(reader);
        let (line_no, header) = lines.next_content()?;
        let mut header_it = header.split_whitespace();
        let l: usize = parse_token(header_it.next(), line_no, "class count")?;
        let m: usize = parse_token(header_it.next(), line_no, "knapsack count")?;
        let mut classes = Vec::with_capacity(l);
        for _ in 0..l {
            let (line_no, line) = lines.next_content()?;
            let mut it = line.split_whitespace();
            let size: Weight = parse_token(it.next(), line_no, "size")?;
            let numer: BigInt = parse_token(it.next(), line_no, "profit numerator")?;
            let denom: BigInt = parse_token(it.next(), line_no, "profit denominator")?;
            let bound: u64 = parse_token(it.next(), line_no, "bound")?;
            if denom.is_zero() {
                return Err(InstanceError::Parse {
                    line: line_no,
                    message: "profit denominator must be nonzero".into(),
                });
            }
            classes.push(BsmkpClass::new(size, Rat::new(numer, denom), bound));
        }
        let mut capacities = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next_content()?;
            let c: Weight = parse_token(line.split_whitespace().next(), line_no, "capacity")?;
            capacities.push(c);
        }
        Self::validate(classes, capacities)
    }
}

/// Per-class, per-knapsack counts together with their exact total profit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsmkpSolution {
    /// `counts[i][t]` = number of class-`t` items placed in knapsack `i`.
    pub counts: Vec<Vec<u64>>,
    pub value: Rat,
}

impl BsmkpSolution {
    /// Checks capacities, class bounds, and the claimed value.
    pub fn verify(&self, instance: &BsmkpInstance) -> Result<(), String> {
        if self.counts.len() != instance.capacities().len() {
            return Err("knapsack count mismatch".into());
        }
        let classes = instance.classes();
        let mut totals = vec![0u64; classes.len()];
        for (i, row) in self.counts.iter().enumerate() {
            if row.len() != classes.len() {
                return Err(format!("class count mismatch in knapsack {i}"));
            }
            let load: u64 = row
                .iter()
                .zip(classes)
                .map(|(&y, class)| y * class.size)
                .sum();
            if load > instance.capacities()[i] {
                return Err(format!(
                    "knapsack {i} overloaded: {load} > {}",
                    instance.capacities()[i]
                ));
            }
            for (t, &y) in row.iter().enumerate() {
                totals[t] += y;
            }
        }
        for (t, (&total, class)) in totals.iter().zip(classes).enumerate() {
            if total > class.bound {
                return Err(format!(
                    "class {t} uses {total} items, bound is {}",
                    class.bound
                ));
            }
        }
        let mut value = Rat::zero();
        for row in &self.counts {
            for (y, class) in row.iter().zip(classes) {
                value += class.profit.clone() * rat(*y);
            }
        }
        if value != self.value {
            return Err("claimed value does not match counts".into());
        }
        Ok(())
    }
}

/// All bound values, timings and gap metrics computed for one instance.
///
/// Fields are optional because the harness lets callers select which bounds
/// to run; gap fields are present exactly when their inputs are.
#[derive(Debug, Clone, Default)]
pub struct BoundReport {
    pub z_seq: Option<Rat>,
    pub t_seq: Option<Duration>,
    pub z_surr: Option<Profit>,
    pub surr_exact: bool,
    pub t_surr: Option<Duration>,
    pub z_lp: Option<Rat>,
    pub t_lp: Option<Duration>,
    pub opt: Option<Profit>,
    pub opt_exact: bool,
    /// Percentage optimality gaps, set only when `opt` is known exactly.
    pub gap_se: Option<Rat>,
    pub gap_su: Option<Rat>,
    pub gap_lp: Option<Rat>,
    /// Percentage by which the LP bound exceeds the sequential / surrogate bound.
    pub g_se_lp: Option<Rat>,
    pub g_su_lp: Option<Rat>,
    /// Per-bound failures and non-exactness flags, in human-readable form.
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Fills every gap field that its inputs allow.
    pub fn compute_gaps(&mut self) {
        let opt = if self.opt_exact {
            self.opt.map(rat)
        } else {
            None
        };
        if let Some(opt) = &opt {
            self.gap_se = self
                .z_seq
                .as_ref()
                .and_then(|z| crate::percent_excess(z, opt));
            self.gap_su = self
                .z_surr
                .and_then(|z| crate::percent_excess(&rat(z), opt));
            self.gap_lp = self
                .z_lp
                .as_ref()
                .and_then(|z| crate::percent_excess(z, opt));
        }
        if let Some(lp) = &self.z_lp {
            self.g_se_lp = self
                .z_seq
                .as_ref()
                .and_then(|z| crate::percent_excess(lp, z));
            self.g_su_lp = self
                .z_surr
                .and_then(|z| crate::percent_excess(lp, &rat(z)));
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt_rat(v: &Option<Rat>) -> String {
            v.as_ref()
                .map(|r| crate::decimal_string(r, 2))
                .unwrap_or_else(|| "-".into())
        }
        write!(
            f,
            "z_seq={} z_surr={} z_lp={} opt={}",
            opt_rat(&self.z_seq),
            self.z_surr
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
            opt_rat(&self.z_lp),
            self.opt
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
        )
    }
}

/// Line reader that skips blank lines and `#` comments, remembering a
/// `# name:` comment when one appears.
struct ContentLines<R> {
    reader: R,
    line_no: usize,
    name: Option<String>,
}

impl<R: BufRead> ContentLines<R> {
    fn new(reader: R) -> Self {
        Self {
            reader,
            line_no: 0,
            name: None,
        }
    }

    fn next_content(&mut self) -> Result<(usize, String), InstanceError> {
        loop {
            let mut line = String::new();
            let read = self.reader.read_line(&mut line)?;
            self.line_no += 1;
            if read == 0 {
                return Err(InstanceError::Parse {
                    line: self.line_no,
                    message: "unexpected end of file".into(),
                });
            }
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if self.name.is_none() {
                    if let Some(name) = comment.trim().strip_prefix("name:") {
                        self.name = Some(name.trim().to_string());
                    }
                }
                continue;
            }
            return Ok((self.line_no, trimmed.to_string()));
        }
    }
}

fn parse_token<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, InstanceError> {
    let token = token.ok_or_else(|| InstanceError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| InstanceError::Parse {
        line,
        message: format!("invalid {what}: {token:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_frac;

    pub(crate) fn example_5x2() -> MkpInstance {
        let profits = [99u64, 70, 74, 47, 64];
        let weights = [33u64, 35, 37, 47, 64];
        let items = profits
            .iter()
            .zip(&weights)
            .map(|(&p, &w)| MkpItem::new(p, w))
            .collect();
        MkpInstance::validate(items, vec![47, 64], Some("example_5x2".into())).unwrap()
    }

    #[test]
    fn validates_example_instance() {
        let inst = example_5x2();
        assert_eq!(inst.n(), 5);
        assert_eq!(inst.m(), 2);
        assert!(!inst.is_degenerate());
        assert_eq!(inst.total_capacity(), 111);
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = MkpInstance::validate(vec![MkpItem::new(1, 1)], vec![1], None).unwrap();
        assert_eq!(inst.n(), 1);
        assert!(!inst.is_degenerate());
    }

    #[test]
    fn zero_capacity_rejected() {
        let err = MkpInstance::validate(vec![MkpItem::new(1, 1)], vec![0], None).unwrap_err();
        match err {
            InstanceError::Invalid(violations) => {
                assert!(violations.contains(&Violation::NonPositiveValue {
                    field: "capacity",
                    index: 0
                }));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn empty_instance_rejected() {
        let err = MkpInstance::validate(vec![], vec![], None).unwrap_err();
        match err {
            InstanceError::Invalid(violations) => {
                assert_eq!(violations.len(), 2);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn degenerate_flag() {
        let inst = MkpInstance::validate(vec![MkpItem::new(5, 100)], vec![10, 20], None).unwrap();
        assert!(inst.is_degenerate());
    }

    #[test]
    fn mkp_round_trip() {
        let inst = example_5x2();
        let mut buf = Vec::new();
        inst.write_to(&mut buf).unwrap();
        let back = MkpInstance::read_from(io::Cursor::new(buf)).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn comments_are_skipped() {
        let text = "# a comment\n1 1\n# another\n5 3\n7\n";
        let inst = MkpInstance::read_from(io::Cursor::new(text)).unwrap();
        assert_eq!(inst.items()[0], MkpItem::new(5, 3));
        assert_eq!(inst.capacities(), &[7]);
        assert_eq!(inst.name(), None);
    }

    #[test]
    fn bsmkp_chain_accepted_and_sorted() {
        let classes = vec![
            BsmkpClass::new(33, rat(99), 1),
            BsmkpClass::new(1, rat(2), 3),
            BsmkpClass::new(3, rat(3), 14),
        ];
        let inst = BsmkpInstance::validate(classes, vec![47, 64]).unwrap();
        assert_eq!(inst.sizes(), vec![1, 3, 33]);
        assert_eq!(inst.classes()[0].size, 1);
    }

    #[test]
    fn bsmkp_chain_violation() {
        let classes = vec![
            BsmkpClass::new(2, rat(1), 1),
            BsmkpClass::new(3, rat(1), 1),
        ];
        let err = BsmkpInstance::validate(classes, vec![10]).unwrap_err();
        match err {
            InstanceError::Invalid(v) => {
                assert_eq!(v, vec![Violation::DivisibilityViolation(2, 3)]);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn bsmkp_merges_duplicate_classes() {
        let classes = vec![
            BsmkpClass::new(3, rat(3), 4),
            BsmkpClass::new(3, rat(3), 10),
        ];
        let inst = BsmkpInstance::validate(classes, vec![10]).unwrap();
        assert_eq!(inst.classes().len(), 1);
        assert_eq!(inst.classes()[0].bound, 14);
    }

    #[test]
    fn bsmkp_validate_idempotent() {
        let classes = vec![
            BsmkpClass::new(3, rat_frac(7, 2), 2),
            BsmkpClass::new(3, rat_frac(7, 2), 3),
            BsmkpClass::new(1, rat(1), 1),
            BsmkpClass::new(9, rat(4), 2),
        ];
        let inst = BsmkpInstance::validate(classes, vec![12, 9]).unwrap();
        let again =
            BsmkpInstance::validate(inst.classes().to_vec(), inst.capacities().to_vec()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn bsmkp_round_trip() {
        let classes = vec![
            BsmkpClass::new(1, rat_frac(5, 7), 1),
            BsmkpClass::new(2, rat_frac(10, 7), 3),
        ];
        let inst = BsmkpInstance::validate(classes, vec![7]).unwrap();
        let mut buf = Vec::new();
        inst.write_to(&mut buf).unwrap();
        let back = BsmkpInstance::read_from(io::Cursor::new(buf)).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn solution_verification_catches_overload() {
        let inst = example_5x2();
        let sol = MkpSolution {
            assignment: vec![Some(0), Some(0), None, None, None],
            value: 169,
        };
        assert!(sol.verify(&inst).unwrap_err().contains("overloaded"));
    }

    #[test]
    fn report_gap_arithmetic() {
        let mut report = BoundReport {
            z_seq: Some(rat(216)),
            z_surr: Some(243),
            surr_exact: true,
            z_lp: Some(rat(249)),
            opt: Some(173),
            opt_exact: true,
            ..Default::default()
        };
        report.compute_gaps();
        assert_eq!(
            crate::decimal_string(&report.g_se_lp.clone().unwrap(), 2),
            "15.28"
        );
        let gap_se = report.gap_se.unwrap();
        assert_eq!(gap_se, rat_frac(4300, 173));
    }
}
