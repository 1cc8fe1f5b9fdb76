//! Named checks, looked up at run time from a [`Registry`].

use std::collections::BTreeMap;

use fusion_core::cohom::CohomError;
use fusion_core::control::{
    aut_via_normalizer, controls_elementary_fusion, elementary_abelians, mislin_verdict,
    strata_skeleton, HomWitness,
};
use fusion_core::fusion::{FusionError, FusionSystem};
use fusion_core::gcore::GroupError;
use serde::Serialize;
use serde_json::{json, Value};

use crate::scenario::ScenarioContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A predicate evaluated to true.
    Holds,
    /// A predicate evaluated to false without contradicting anything.
    Fails,
    /// The outcome agrees with the theorem being exercised.
    Consistent,
    /// The outcome contradicts the theorem being exercised.
    Inconsistent,
    /// Data recorded with no assertion attached.
    Recorded,
    CapExceeded,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Recorded => "recorded",
            Verdict::CapExceeded => "cap-exceeded",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub detail: String,
    pub dims: Vec<usize>,
    pub data: Value,
}

impl CheckOutcome {
    fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckOutcome {
            verdict,
            detail: detail.into(),
            dims: Vec::new(),
            data: Value::Null,
        }
    }

    fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }
}

#[derive(Debug)]
pub enum CheckError {
    Cap(String),
    Failed(String),
}

impl From<FusionError> for CheckError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::Group(GroupError::ElementCap { .. } | GroupError::SubgroupCap { .. }) => {
                CheckError::Cap(e.to_string())
            }
            other => CheckError::Failed(other.to_string()),
        }
    }
}

impl From<CohomError> for CheckError {
    fn from(e: CohomError) -> Self {
        match e {
            CohomError::CapExceeded { .. } => CheckError::Cap(e.to_string()),
            CohomError::Fusion(f) => f.into(),
            other => CheckError::Failed(other.to_string()),
        }
    }
}

impl CheckError {
    pub fn into_outcome(self) -> CheckOutcome {
        match self {
            CheckError::Cap(msg) => CheckOutcome::new(Verdict::CapExceeded, msg),
            CheckError::Failed(msg) => CheckOutcome::new(Verdict::Error, msg),
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError>;
}

pub struct Registry {
    checks: BTreeMap<&'static str, Box<dyn Check>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            checks: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Saturation));
        r.register(Box::new(Control));
        r.register(Box::new(Mislin));
        r.register(Box::new(Dims));
        r.register(Box::new(Strata));
        r.register(Box::new(Automizers));
        r
    }

    /// Adds a check, replacing any previous one of the same name.
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.keys().copied()
    }
}

fn witness_json(w: &HomWitness) -> Value {
    json!({
        "source": w.source.to_string(),
        "target": w.target.to_string(),
        "missing": w.missing.to_string(),
    })
}

fn dims_str(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

/// Saturation of F_P(G), and of F_P(H) when H is proper. A system realized
/// on a Sylow subgroup that fails to be saturated contradicts the theorem
/// that such systems are saturated.
struct Saturation;

impl Check for Saturation {
    fn name(&self) -> &'static str {
        "saturation"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let whole = ctx.group.whole();
        let mut systems: Vec<(&str, &FusionSystem, bool)> =
            vec![("F_P(G)", &ctx.system, ctx.is_sylow_in(&whole))];
        if !ctx.h_is_whole() {
            systems.push(("F_P(H)", &ctx.subsystem, ctx.is_sylow_in(&ctx.h)));
        }
        let mut details = Vec::new();
        let mut data = Vec::new();
        let mut all = true;
        let mut contradiction = false;
        for (label, sys, sylow) in systems {
            let report = sys.is_saturated()?;
            all &= report.saturated;
            contradiction |= sylow && !report.saturated;
            let failing: Vec<Value> = report
                .failing()
                .map(|c| {
                    json!({
                        "class": c.representative.to_string(),
                        "members": c.members.len(),
                        "aut_s": c.aut_s_order,
                        "aut_f": c.aut_f_order,
                        "fully_automized_member": c.fully_automized.as_ref().map(ToString::to_string),
                        "receptive_member": c.receptive.as_ref().map(ToString::to_string),
                    })
                })
                .collect();
            if report.saturated {
                details.push(format!("{label} saturated"));
            } else {
                for c in report.failing() {
                    let lack = match (&c.fully_automized, &c.receptive) {
                        (None, _) => "no fully automized member",
                        (Some(_), None) => "no receptive member",
                        _ => "no member both fully automized and receptive",
                    };
                    details.push(format!(
                        "{label} not saturated: class of {} has {lack} (|Aut_S| = {}, |Aut_F| = {})",
                        c.representative, c.aut_s_order, c.aut_f_order
                    ));
                }
            }
            data.push(json!({
                "system": label,
                "sylow": sylow,
                "saturated": report.saturated,
                "classes": report.classes.len(),
                "failing": failing,
            }));
        }
        let verdict = if contradiction {
            Verdict::Inconsistent
        } else if all {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Ok(CheckOutcome::new(verdict, details.join("; ")).with_data(Value::Array(data)))
    }
}

/// Whether F_P(H) controls elementary abelian fusion in F_P(G).
struct Control;

impl Check for Control {
    fn name(&self) -> &'static str {
        "control"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let v = controls_elementary_fusion(&ctx.subsystem, &ctx.system)?;
        let detail = match &v.witness {
            None => "controls elementary abelian fusion".to_string(),
            Some(w) => format!("{} from {} to {} is missing", w.missing, w.source, w.target),
        };
        let verdict = if v.controls { Verdict::Holds } else { Verdict::Fails };
        Ok(CheckOutcome::new(verdict, detail).with_data(json!({
            "controls_elem": v.controls,
            "witness": v.witness.as_ref().map(witness_json),
        })))
    }
}

/// For odd p and saturated systems: control of elementary abelian fusion
/// holds exactly when the systems are equal. At p = 2 the pair is recorded
/// without an assertion.
struct Mislin;

impl Check for Mislin {
    fn name(&self) -> &'static str {
        "mislin"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let v = mislin_verdict(&ctx.subsystem, &ctx.system, false)?;
        let both_saturated = v.saturated.0 && v.saturated.1;
        let verdict = if !both_saturated {
            Verdict::Recorded
        } else if !v.consistent_with_theorem {
            Verdict::Inconsistent
        } else if v.hypothesis_applies {
            Verdict::Consistent
        } else {
            Verdict::Recorded
        };
        let mut detail = format!(
            "controls_elem={} systems_equal={}",
            v.controls_elem, v.systems_equal
        );
        if !v.hypothesis_applies {
            detail.push_str(&format!("; p = {}: no consistency assertion", v.p));
        }
        if !both_saturated {
            detail.push_str("; not both saturated: no consistency assertion");
        }
        Ok(CheckOutcome::new(verdict, detail).with_data(json!({
            "p": v.p,
            "controls_elem": v.controls_elem,
            "systems_equal": v.systems_equal,
            "consistent": v.consistent_with_theorem,
            "hypothesis_applies": v.hypothesis_applies,
            "saturated": [v.saturated.0, v.saturated.1],
            "witness": v.witness.as_ref().map(witness_json),
        })))
    }
}

/// Stable-element dimensions of F_P(H) and F_P(G) up to `max_degree`, with
/// the subspace inclusion H*(F_P(G)) <= H*(F_P(H)) checked degreewise.
struct Dims;

/// Degree by which odd-p examples with unequal systems are expected to show
/// a strict inclusion.
const STRICT_BY: usize = 4;

impl Check for Dims {
    fn name(&self) -> &'static str {
        "dims"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let coh = &ctx.cohomology;
        let mut big = Vec::new();
        let mut small = Vec::new();
        let mut total = Vec::new();
        let mut not_contained = Vec::new();
        let mut strict = None;
        for n in 0..=ctx.max_degree {
            let sb = coh.stable_subspace(&ctx.system, n)?;
            let ss = coh.stable_subspace(&ctx.subsystem, n)?;
            if !sb.is_subspace_of(&ss) {
                not_contained.push(n);
            }
            if strict.is_none() && sb.dim() < ss.dim() {
                strict = Some(n);
            }
            total.push(sb.ambient_dim());
            big.push(sb.dim());
            small.push(ss.dim());
        }
        let equal = ctx.subsystem.equals(&ctx.system)?;
        let mut problems = Vec::new();
        if !not_contained.is_empty() {
            problems.push(format!("inclusion fails in degrees {not_contained:?}"));
        }
        if equal && big != small {
            problems.push("equal systems with different dimensions".to_string());
        }
        if !equal && strict.is_none() && ctx.p % 2 == 1 && ctx.max_degree >= STRICT_BY {
            problems.push(format!("systems differ but no strict inclusion up to degree {}", ctx.max_degree));
        }
        let mut detail = format!(
            "H(F_P(G)) {}; H(F_P(H)) {}; H(P) {}",
            dims_str(&big),
            dims_str(&small),
            dims_str(&total)
        );
        match strict {
            Some(n) => detail.push_str(&format!("; strict at n={n}")),
            None if !equal => detail.push_str("; no strict inclusion found"),
            None => {}
        }
        if !problems.is_empty() {
            detail.push_str("; ");
            detail.push_str(&problems.join("; "));
        }
        let verdict = if problems.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        };
        let mut out = CheckOutcome::new(verdict, detail).with_data(json!({
            "system": big,
            "subsystem": small,
            "p_group": total,
            "systems_equal": equal,
            "first_strict_degree": strict,
        }));
        out.dims = big;
        Ok(out)
    }
}

/// F_P(G)-classes of elementary abelian subgroups with automizer orders.
struct Strata;

impl Check for Strata {
    fn name(&self) -> &'static str {
        "strata"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let table = strata_skeleton(&ctx.system)?;
        let detail = table
            .rows
            .iter()
            .map(|r| {
                format!(
                    "rank {} x{} |W|={}",
                    r.rank,
                    r.members.len(),
                    r.automizer_order
                )
            })
            .collect::<Vec<_>>()
            .join("; ");
        let data = serde_json::to_value(&table).expect("table serializes");
        Ok(CheckOutcome::new(Verdict::Recorded, detail).with_data(data))
    }
}

/// `N_G(E)/C_G(E)` acting on E agrees with `Aut_F(E)` for every elementary
/// abelian E <= P, in both G and H.
struct Automizers;

impl Check for Automizers {
    fn name(&self) -> &'static str {
        "automizers"
    }

    fn run(&self, ctx: &ScenarioContext) -> Result<CheckOutcome, CheckError> {
        let whole = ctx.group.whole();
        let mut pairs = vec![(&whole, &ctx.system)];
        if !ctx.h_is_whole() {
            pairs.push((&ctx.h, &ctx.subsystem));
        }
        let mut mismatches = Vec::new();
        let mut compared = 0;
        for (ambient, sys) in pairs {
            for e in elementary_abelians(sys)? {
                let via_n = aut_via_normalizer(ambient, &e)?;
                let aut_f = sys.aut(&e)?;
                compared += 1;
                if via_n.elements() != aut_f.elements() {
                    mismatches.push(format!(
                        "{e}: |N/C| = {} but |Aut_F| = {}",
                        via_n.order(),
                        aut_f.order()
                    ));
                }
            }
        }
        let (verdict, detail) = if mismatches.is_empty() {
            (Verdict::Consistent, format!("{compared} elementary abelian subgroups agree"))
        } else {
            (Verdict::Inconsistent, mismatches.join("; "))
        };
        Ok(CheckOutcome::new(verdict, detail).with_data(json!({
            "compared": compared,
            "mismatches": mismatches,
        })))
    }
}
