use rand::SeedableRng;
use serde_json::{json, Value as Json};

use super::{Algebra, Rng};
use crate::value::Value;

/// Default number of carrier elements examined per check.
pub const DEFAULT_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No violation among the examined elements. Exhaustive when the
    /// report's `exhaustive` flag is set.
    HoldsOnSample,
    Fails,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::HoldsOnSample => "holds-on-sample",
            Verdict::Fails => "fails",
        }
    }
}

/// Verdict for one condition plus the witness of a failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition<W> {
    pub verdict: Verdict,
    pub witness: Option<W>,
}

impl<W> Condition<W> {
    fn from_witness(witness: Option<W>) -> Self {
        let verdict = if witness.is_some() {
            Verdict::Fails
        } else {
            Verdict::HoldsOnSample
        };
        Self { verdict, witness }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSample
    }
}

/// Outcome of checking (a) zero-sum-freeness, (b) absence of zero divisors
/// and (c) 0 annihilating ⊗.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub algebra: String,
    pub zero_sum_free: Condition<(Value, Value)>,
    pub no_zero_divisors: Condition<(Value, Value)>,
    pub annihilator: Condition<Value>,
    /// Ordered pairs examined.
    pub sample_size: usize,
    pub exhaustive: bool,
    pub seed: u64,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.zero_sum_free.holds() && self.no_zero_divisors.holds() && self.annihilator.holds()
    }

    pub fn to_json(&self, alg: &dyn Algebra) -> Json {
        let pair = |c: &Condition<(Value, Value)>| {
            json!({
                "verdict": c.verdict.label(),
                "witness": c.witness.as_ref().map(|(v, w)| json!([alg.encode(v), alg.encode(w)])),
            })
        };
        json!({
            "algebra": self.algebra,
            "zero_sum_free": pair(&self.zero_sum_free),
            "no_zero_divisors": pair(&self.no_zero_divisors),
            "annihilator": {
                "verdict": self.annihilator.verdict.label(),
                "witness": self.annihilator.witness.as_ref().map(|v| alg.encode(v)),
            },
            "sample_size": self.sample_size,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
        })
    }
}

fn push_distinct(alg: &dyn Algebra, out: &mut Vec<Value>, v: Value) {
    if !out.iter().any(|e| alg.equals(e, &v)) {
        out.push(v);
    }
}

/// Elements to examine: the whole carrier when finite and within `budget`,
/// otherwise landmarks plus seeded samples up to `budget` distinct elements.
fn examined_elements(alg: &dyn Algebra, budget: usize, seed: u64) -> (Vec<Value>, bool) {
    if let Some(els) = alg.elements() {
        if els.len() <= budget {
            return (els, true);
        }
    }
    let mut out = Vec::with_capacity(budget);
    for v in alg.landmarks() {
        push_distinct(alg, &mut out, v);
    }
    let mut rng = Rng::seed_from_u64(seed);
    // Bounded so that tiny carriers larger than the budget cannot stall.
    let mut attempts = 0;
    while out.len() < budget.max(2) && attempts < budget * 64 {
        push_distinct(alg, &mut out, alg.sample(&mut rng));
        attempts += 1;
    }
    (out, false)
}

/// Checks the three graph-construction conditions over the examined
/// elements. Witnesses are the first violations in element order.
pub fn check_conditions(alg: &dyn Algebra, budget: usize, seed: u64) -> ConditionReport {
    let budget = budget.max(1);
    let (elements, exhaustive) = examined_elements(alg, budget, seed);
    let zero = alg.zero();
    let is_zero = |v: &Value| alg.equals(v, &zero);

    let mut sum_witness = None;
    let mut divisor_witness = None;
    for v in elements.iter().filter(|v| !is_zero(v)) {
        for w in elements.iter().filter(|w| !is_zero(w)) {
            if sum_witness.is_none() && is_zero(&alg.plus(v, w)) {
                sum_witness = Some((v.clone(), w.clone()));
            }
            if divisor_witness.is_none() && is_zero(&alg.times(v, w)) {
                divisor_witness = Some((v.clone(), w.clone()));
            }
        }
    }

    // Prefer a nonzero witness; 0 ⊗ 0 ≠ 0 is reported only when no nonzero
    // element escapes annihilation.
    let escapes = |v: &Value| !is_zero(&alg.times(v, &zero)) || !is_zero(&alg.times(&zero, v));
    let annihilator_witness = elements
        .iter()
        .find(|v| !is_zero(v) && escapes(v))
        .or_else(|| escapes(&zero).then_some(&zero))
        .cloned();

    ConditionReport {
        algebra: alg.name().to_string(),
        zero_sum_free: Condition::from_witness(sum_witness),
        no_zero_divisors: Condition::from_witness(divisor_witness),
        annihilator: Condition::from_witness(annihilator_witness),
        sample_size: elements.len() * elements.len(),
        exhaustive,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_algebra, custom_algebra, CustomDomain, UnionIntersect, ValueAlgebra};
    use rand::Rng as _;

    fn integers() -> ValueAlgebra {
        let int = |v: &Value| match v {
            Value::Int(i) => *i,
            other => panic!("{other}"),
        };
        custom_algebra(
            "integers",
            CustomDomain::sampled(|rng| Value::Int(rng.gen_range(-3..=3))),
            move |a, b| Value::Int(int(a) + int(b)),
            move |a, b| Value::Int(int(a) * int(b)),
            Value::Int(0),
            Value::Int(1),
            None,
        )
        .unwrap()
    }

    #[test]
    fn plus_times_holds_on_sample() {
        let alg = builtin_algebra("plus.times").unwrap();
        let report = check_conditions(&*alg, DEFAULT_BUDGET, 0);
        assert!(report.all_hold());
        assert!(!report.exhaustive);
        assert!(report.sample_size > 1);
    }

    #[test]
    fn integers_are_not_zero_sum_free() {
        let alg = integers();
        let report = check_conditions(&*alg, DEFAULT_BUDGET, 0);
        assert_eq!(report.zero_sum_free.verdict, Verdict::Fails);
        assert_eq!(
            report.zero_sum_free.witness,
            Some((Value::Int(1), Value::Int(-1)))
        );
        assert!(report.no_zero_divisors.holds());
        assert!(report.annihilator.holds());
    }

    #[test]
    fn power_set_has_zero_divisors() {
        let alg = UnionIntersect::new(["1", "2"]);
        let report = check_conditions(&alg, DEFAULT_BUDGET, 0);
        assert!(report.exhaustive);
        assert_eq!(report.sample_size, 16);
        assert_eq!(
            report.no_zero_divisors.witness,
            Some((Value::set(["1"]), Value::set(["2"])))
        );
        assert!(report.zero_sum_free.holds());
        assert!(report.annihilator.holds());
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let alg = builtin_algebra("max.plus").unwrap();
        assert_eq!(check_conditions(&*alg, 32, 7), check_conditions(&*alg, 32, 7));
    }

    #[test]
    fn budget_below_carrier_size_falls_back_to_sampling() {
        let alg = UnionIntersect::new(["1", "2", "3"]);
        let report = check_conditions(&alg, 4, 0);
        assert!(!report.exhaustive);
        assert!(report.sample_size <= 16);
    }
}
