//! Seeded instance generators for the two benchmark families.
//!
//! Draw streams are split per role (weights, profits, capacities) so a
//! capacity retry never perturbs the item draws; identical specs produce
//! byte-identical instance files.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::instance::{InstanceError, MkpInstance, MkpItem};
use crate::Weight;

const WEIGHT_STREAM: u64 = 0;
const PROFIT_STREAM: u64 = 1;
const CAPACITY_STREAM: u64 = 2;
const MAX_CAPACITY_RETRIES: u64 = 100;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("degenerate capacity draw: {0}")]
    DegenerateDraw(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Pisinger,
    Small,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Pisinger => "pisinger",
            Family::Small => "small",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pisinger" => Some(Family::Pisinger),
            "small" => Some(Family::Small),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correlation {
    Uncorrelated,
    Weakly,
    Strongly,
    SubsetSum,
}

impl Correlation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Correlation::Uncorrelated => "unc",
            Correlation::Weakly => "wea",
            Correlation::Strongly => "str",
            Correlation::SubsetSum => "ss",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "unc" | "uncorrelated" => Some(Correlation::Uncorrelated),
            "wea" | "weakly" => Some(Correlation::Weakly),
            "str" | "strongly" => Some(Correlation::Strongly),
            "ss" | "subset_sum" | "subset-sum" => Some(Correlation::SubsetSum),
            _ => None,
        }
    }
}

/// Capacity fraction of the second family; one of 0.25, 0.5, 0.75.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma {
    Quarter,
    Half,
    ThreeQuarters,
}

impl Sigma {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sigma::Quarter => "0.25",
            Sigma::Half => "0.5",
            Sigma::ThreeQuarters => "0.75",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "0.25" => Some(Sigma::Quarter),
            "0.5" | "0.50" => Some(Sigma::Half),
            "0.75" => Some(Sigma::ThreeQuarters),
            _ => None,
        }
    }

    fn as_f64(&self) -> f64 {
        match self {
            Sigma::Quarter => 0.25,
            Sigma::Half => 0.5,
            Sigma::ThreeQuarters => 0.75,
        }
    }
}

/// A fully specified generator call: family, correlation class, sizes, the
/// family parameter (range or sigma) and the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub correlation: Correlation,
    pub n: usize,
    pub m: usize,
    pub range: Option<u64>,
    pub sigma: Option<Sigma>,
    pub seed: u64,
}

impl GenSpec {
    pub fn pisinger(
        correlation: Correlation,
        n: usize,
        m: usize,
        range: u64,
        seed: u64,
    ) -> Result<Self, GenError> {
        let spec = Self {
            family: Family::Pisinger,
            correlation,
            n,
            m,
            range: Some(range),
            sigma: None,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn small(
        correlation: Correlation,
        n: usize,
        m: usize,
        sigma: Sigma,
        seed: u64,
    ) -> Result<Self, GenError> {
        let spec = Self {
            family: Family::Small,
            correlation,
            n,
            m,
            range: None,
            sigma: Some(sigma),
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 || self.m == 0 {
            return Err(GenError::InvalidSpec("n and m must be positive".into()));
        }
        match self.family {
            Family::Pisinger => {
                if self.sigma.is_some() {
                    return Err(GenError::InvalidSpec(
                        "sigma applies only to the small family".into(),
                    ));
                }
                match self.range {
                    None => {
                        return Err(GenError::InvalidSpec(
                            "the pisinger family needs a range R".into(),
                        ))
                    }
                    Some(r) if r < 10 => {
                        return Err(GenError::InvalidSpec("range R must be at least 10".into()))
                    }
                    _ => {}
                }
            }
            Family::Small => {
                if self.range.is_some() {
                    return Err(GenError::InvalidSpec(
                        "R applies only to the pisinger family".into(),
                    ));
                }
                if self.sigma.is_none() {
                    return Err(GenError::InvalidSpec("the small family needs sigma".into()));
                }
                if self.correlation == Correlation::SubsetSum {
                    return Err(GenError::InvalidSpec(
                        "the small family has no subset-sum class".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parameter column rendered for file names and CSV: R or sigma.
    pub fn r_or_sigma(&self) -> String {
        match self.family {
            Family::Pisinger => self.range.unwrap_or_default().to_string(),
            Family::Small => self.sigma.map(|s| s.as_str()).unwrap_or("").to_string(),
        }
    }

    /// Canonical instance file name.
    pub fn file_name(&self) -> String {
        format!(
            "{}_{}_n{}_m{}_R{}_s{}.mkp",
            self.family.as_str(),
            self.correlation.as_str(),
            self.n,
            self.m,
            self.r_or_sigma(),
            self.seed
        )
    }

    fn stream(&self, id: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }
}

/// Generates the instance described by the spec. Deterministic per spec.
pub fn generate(spec: &GenSpec) -> Result<MkpInstance, GenError> {
    spec.validate()?;
    match spec.family {
        Family::Pisinger => gen_pisinger(spec),
        Family::Small => gen_small(spec),
    }
}

/// Weights and profits in `[10, R]` per correlation class; the first `m - 1`
/// capacities uniform in `[0.4 W / m, 0.6 W / m]` and the last balancing the
/// total to `floor(0.5 W)`, where `W` is the total weight.
pub fn gen_pisinger(spec: &GenSpec) -> Result<MkpInstance, GenError> {
    let r = spec.range.expect("validated spec");
    let mut weight_rng = spec.stream(WEIGHT_STREAM);
    let weights: Vec<Weight> = (0..spec.n).map(|_| weight_rng.gen_range(10..=r)).collect();

    let mut profit_rng = spec.stream(PROFIT_STREAM);
    let profits: Vec<u64> = weights
        .iter()
        .map(|&w| match spec.correlation {
            Correlation::Uncorrelated => profit_rng.gen_range(10..=r),
            Correlation::Weakly => {
                let spread = (r / 10) as i64;
                loop {
                    let p = profit_rng.gen_range(w as i64 - spread..=w as i64 + spread);
                    if p >= 1 {
                        break p as u64;
                    }
                }
            }
            Correlation::Strongly => w + 10,
            Correlation::SubsetSum => w,
        })
        .collect();

    let total: u64 = weights.iter().sum();
    let target = total / 2;
    let mut capacities = Vec::new();
    for retry in 0..MAX_CAPACITY_RETRIES {
        let mut cap_rng = spec.stream(CAPACITY_STREAM + retry);
        let mut draw: Vec<Weight> = Vec::with_capacity(spec.m);
        if spec.m > 1 {
            let lo = 2 * total / (5 * spec.m as u64);
            let hi = 3 * total / (5 * spec.m as u64);
            for _ in 0..spec.m - 1 {
                draw.push(cap_rng.gen_range(lo..=hi));
            }
        }
        let used: u64 = draw.iter().sum();
        if used < target {
            draw.push(target - used);
        } else {
            draw.push(0);
        }
        if draw.iter().all(|&c| c >= 1) {
            capacities = draw;
            break;
        }
    }
    if capacities.is_empty() {
        return Err(GenError::DegenerateDraw(format!(
            "no balanced capacity vector after {MAX_CAPACITY_RETRIES} retries"
        )));
    }

    let items = profits
        .into_iter()
        .zip(weights)
        .map(|(p, w)| MkpItem::new(p, w))
        .collect();
    let name = spec.file_name().trim_end_matches(".mkp").to_string();
    Ok(MkpInstance::validate(items, capacities, Some(name))?)
}

/// Weights uniform in `[1, 1000]`; profits per correlation class; capacities
/// `floor(sigma * lambda_i * W)` with normalized uniform `lambda`.
pub fn gen_small(spec: &GenSpec) -> Result<MkpInstance, GenError> {
    let sigma = spec.sigma.expect("validated spec");
    let mut weight_rng = spec.stream(WEIGHT_STREAM);
    let weights: Vec<Weight> = (0..spec.n).map(|_| weight_rng.gen_range(1..=1000)).collect();

    let mut profit_rng = spec.stream(PROFIT_STREAM);
    let profits: Vec<u64> = weights
        .iter()
        .map(|&w| match spec.correlation {
            Correlation::Uncorrelated => profit_rng.gen_range(1..=1000),
            // round(0.6 w) + theta; 0.6 w never lands on .5 exactly.
            Correlation::Weakly => (6 * w + 5) / 10 + profit_rng.gen_range(1..=400),
            Correlation::Strongly => w + 200,
            Correlation::SubsetSum => unreachable!("rejected by validate"),
        })
        .collect();

    let total: u64 = weights.iter().sum();
    let mut capacities = Vec::new();
    for retry in 0..MAX_CAPACITY_RETRIES {
        let mut lambda_rng = spec.stream(CAPACITY_STREAM + retry);
        let lambdas: Vec<f64> = (0..spec.m)
            .map(|_| loop {
                let x = lambda_rng.gen::<f64>();
                if x > 0.0 {
                    break x;
                }
            })
            .collect();
        let sum: f64 = lambdas.iter().sum();
        let draw: Vec<Weight> = lambdas
            .iter()
            .map(|l| (sigma.as_f64() * (l / sum) * total as f64).floor() as Weight)
            .collect();
        if draw.iter().all(|&c| c >= 1) {
            capacities = draw;
            break;
        }
    }
    if capacities.is_empty() {
        return Err(GenError::DegenerateDraw(format!(
            "a capacity stayed zero after {MAX_CAPACITY_RETRIES} retries"
        )));
    }

    let items = profits
        .into_iter()
        .zip(weights)
        .map(|(p, w)| MkpItem::new(p, w))
        .collect();
    let name = spec.file_name().trim_end_matches(".mkp").to_string();
    Ok(MkpInstance::validate(items, capacities, Some(name))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pisinger_capacity_identity() {
        for seed in 0..20 {
            let spec = GenSpec::pisinger(Correlation::Uncorrelated, 60, 30, 1000, seed).unwrap();
            let inst = generate(&spec).unwrap();
            assert_eq!(inst.total_capacity(), inst.total_weight() / 2);
            assert!(inst
                .items()
                .iter()
                .all(|it| (10..=1000).contains(&it.weight) && (10..=1000).contains(&it.profit)));
        }
    }

    #[test]
    fn pisinger_correlation_rules() {
        let spec = GenSpec::pisinger(Correlation::Strongly, 40, 5, 1000, 7).unwrap();
        let inst = generate(&spec).unwrap();
        assert!(inst.items().iter().all(|it| it.profit == it.weight + 10));

        let spec = GenSpec::pisinger(Correlation::SubsetSum, 40, 5, 1000, 7).unwrap();
        let inst = generate(&spec).unwrap();
        assert!(inst.items().iter().all(|it| it.profit == it.weight));

        let spec = GenSpec::pisinger(Correlation::Weakly, 200, 5, 1000, 7).unwrap();
        let inst = generate(&spec).unwrap();
        for it in inst.items() {
            assert!(it.profit >= 1);
            assert!(it.profit as i64 >= it.weight as i64 - 100);
            assert!(it.profit <= it.weight + 100);
        }
    }

    #[test]
    fn weakly_profits_independent_of_capacity_retries() {
        // Streams are split per role, so item draws depend only on the seed.
        let a = generate(&GenSpec::pisinger(Correlation::Weakly, 30, 2, 100, 5).unwrap()).unwrap();
        let b = generate(&GenSpec::pisinger(Correlation::Weakly, 30, 4, 100, 5).unwrap()).unwrap();
        let pa: Vec<_> = a.items().iter().map(|it| (it.profit, it.weight)).collect();
        let pb: Vec<_> = b.items().iter().map(|it| (it.profit, it.weight)).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn small_correlation_rules() {
        let spec = GenSpec::small(Correlation::Strongly, 30, 10, Sigma::Half, 3).unwrap();
        let inst = generate(&spec).unwrap();
        assert!(inst.items().iter().all(|it| it.profit == it.weight + 200));

        let spec = GenSpec::small(Correlation::Weakly, 200, 10, Sigma::Half, 3).unwrap();
        let inst = generate(&spec).unwrap();
        for it in inst.items() {
            let base = (6 * it.weight + 5) / 10;
            assert!(it.profit >= base + 1 && it.profit <= base + 400);
        }
    }

    #[test]
    fn small_capacity_formula() {
        let spec = GenSpec::small(Correlation::Uncorrelated, 60, 10, Sigma::Half, 11).unwrap();
        let inst = generate(&spec).unwrap();
        // Each capacity is floored, so the sum can fall short by at most m.
        let cap_target = inst.total_weight() / 2;
        assert!(inst.total_capacity() <= cap_target);
        assert!(inst.total_capacity() + inst.m() as u64 >= cap_target.saturating_sub(1));
    }

    #[test]
    fn determinism_byte_identical() {
        let spec = GenSpec::small(Correlation::Uncorrelated, 25, 5, Sigma::Quarter, 9).unwrap();
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        a.write_to(&mut buf_a).unwrap();
        b.write_to(&mut buf_b).unwrap();
        assert_eq!(buf_a, buf_b);
    }

    #[test]
    fn spec_invariants_enforced() {
        assert!(GenSpec::small(Correlation::SubsetSum, 10, 2, Sigma::Half, 1).is_err());
        assert!(GenSpec::pisinger(Correlation::Uncorrelated, 0, 2, 100, 1).is_err());
        assert!(GenSpec::pisinger(Correlation::Uncorrelated, 10, 2, 5, 1).is_err());
        let mut bad = GenSpec::pisinger(Correlation::Uncorrelated, 10, 2, 100, 1).unwrap();
        bad.sigma = Some(Sigma::Half);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn file_names() {
        let spec = GenSpec::pisinger(Correlation::Uncorrelated, 60, 30, 1000, 42).unwrap();
        assert_eq!(spec.file_name(), "pisinger_unc_n60_m30_R1000_s42.mkp");
        let spec = GenSpec::small(Correlation::Strongly, 20, 10, Sigma::ThreeQuarters, 3).unwrap();
        assert_eq!(spec.file_name(), "small_str_n20_m10_R0.75_s3.mkp");
    }
}
