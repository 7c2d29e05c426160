use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::positions::PositionSet;
use super::GenerateError;
use crate::matgroup::{expand_factors, Factor, Generator};
use crate::ring::{IdealSpec, NamedSet, RingAdapter, Tag};
use crate::syntax::{format_factors, parse_factors, parse_poly};
use crate::verify::{audit_levels, verify_numeric, verify_symbolic, Bindings, VerificationReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub n: usize,
    /// The target in the word syntax.
    pub target: String,
    pub subgroup: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Basis {
    /// `1`, `2`, `4`, `C` or `5`.
    pub theorem: String,
    pub position_set: Option<PositionSet>,
    /// Ideal of each letter tag, in the free ring.
    pub ideals: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub kind: String,
    pub i: usize,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverse: bool,
    /// Claim on the first argument.
    pub level: Option<String>,
    /// Claims on every argument.
    pub levels: Vec<Option<String>>,
}

impl FactorRecord {
    pub fn from_factor(f: &Factor) -> Self {
        let (i, j) = f.gen.position();
        let (h, k) = match &f.gen {
            Generator::C { h, k, .. } => (Some(*h), Some(*k)),
            _ => (None, None),
        };
        let levels: Vec<Option<String>> = f.levels.iter().map(|l| l.as_ref().map(|s| s.to_string())).collect();
        FactorRecord {
            kind: f.gen.kind().to_string(),
            i,
            j,
            h,
            k,
            args: f.gen.args().iter().map(|p| p.to_string()).collect(),
            inverse: f.inverse,
            level: levels.first().cloned().flatten(),
            levels,
        }
    }

    pub fn to_factor(&self) -> Result<Factor, GenerateError> {
        let bad = |m: &str| GenerateError::Invalid(format!("factor {} ({},{}): {m}", self.kind, self.i, self.j));
        let args =
            self.args.iter().map(|a| parse_poly(a)).collect::<Result<Vec<_>, _>>().map_err(|e| bad(&e.to_string()))?;
        let arity = if self.kind == "T" { 1 } else { 2 };
        if args.len() != arity {
            return Err(bad("wrong number of arguments"));
        }
        let mut a = args.into_iter();
        let x = a.next().expect("arity");
        let gen = match self.kind.as_str() {
            "T" => Generator::t(self.i, self.j, x),
            "Z" => Generator::z(self.i, self.j, x, a.next().expect("arity")),
            "Y" => Generator::y(self.i, self.j, x, a.next().expect("arity")),
            "C" => {
                let (h, k) = self.h.zip(self.k).ok_or_else(|| bad("C needs h and k"))?;
                Generator::c(self.i, self.j, x, h, k, a.next().expect("arity"))
            }
            _ => return Err(bad("unknown kind")),
        };
        let levels = if self.levels.is_empty() {
            let mut v = vec![None; arity];
            v[0] = self.level.clone();
            v
        } else {
            self.levels.clone()
        };
        if levels.len() != arity {
            return Err(bad("wrong number of level claims"));
        }
        let levels = levels
            .iter()
            .map(|l| l.as_deref().map(|s| IdealSpec::parse(RingAdapter::Free, s)).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        let mut f = Factor::with_levels(gen, levels);
        f.inverse = self.inverse;
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolicCheck {
    pub pass: bool,
    pub n: usize,
    pub max_degree: usize,
    /// Transvections in the expanded factor list.
    pub atoms: usize,
    pub level_audit_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub ring: String,
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
    /// Tag name → ideal of the ring.
    pub bindings: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub symbolic: SymbolicCheck,
    pub numeric: Vec<NumericCheck>,
}

/// A concrete ring with ideals for the letter tags, used for numeric checks.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericPlan {
    pub ring: RingAdapter,
    pub bindings: Bindings,
    pub seed: u64,
}

impl NumericPlan {
    /// ℤ/12 with `A = (4)`, `B = (6)`.
    pub fn zmod12(seed: u64) -> Self {
        let r = RingAdapter::Mod(12);
        let p = |d| IdealSpec::principal(r, d).expect("valid");
        NumericPlan { ring: r, bindings: crate::verify::standard_bindings(r, p(4), p(6)).expect("valid"), seed }
    }

    /// Upper triangular 2×2 matrices over ℤ/5 with `A = B` the strictly
    /// upper ideal.
    pub fn triang5(seed: u64) -> Self {
        let r = RingAdapter::Triang(5);
        let u = IdealSpec::named(5, NamedSet::StrictUpper);
        NumericPlan { ring: r, bindings: crate::verify::standard_bindings(r, u.clone(), u).expect("valid"), seed }
    }

    pub fn defaults(seed: u64) -> Vec<Self> {
        vec![NumericPlan::zmod12(seed), NumericPlan::triang5(seed)]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub basis: Basis,
    pub factors: Vec<FactorRecord>,
    pub checks: Checks,
}

fn ideals_ab() -> BTreeMap<String, String> {
    [("A", "A"), ("B", "B"), ("R", "R")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

impl Certificate {
    /// Assemble a certificate and run the symbolic check and level audit.
    pub fn build(
        theorem: &str,
        n: usize,
        target: &[Factor],
        factors: &[Factor],
        position_set: Option<PositionSet>,
        subgroup: &str,
    ) -> Result<Self, GenerateError> {
        let mut ideals = ideals_ab();
        if theorem == "C" {
            ideals.remove("B");
        }
        let mut cert = Certificate {
            claim: Claim { n, target: format_factors(target), subgroup: subgroup.to_string() },
            basis: Basis { theorem: theorem.to_string(), position_set, ideals },
            factors: factors.iter().map(FactorRecord::from_factor).collect(),
            checks: Checks {
                symbolic: SymbolicCheck { pass: false, n, max_degree: 0, atoms: 0, level_audit_failures: 0 },
                numeric: vec![],
            },
        };
        let (sym, audit) = cert.symbolic_reports()?;
        cert.checks.symbolic = SymbolicCheck {
            pass: sym.pass(),
            n,
            max_degree: sym.max_degree,
            atoms: expand_factors(n, factors)?.len(),
            level_audit_failures: audit.failures,
        };
        Ok(cert)
    }

    pub fn target_factors(&self) -> Result<Vec<Factor>, GenerateError> {
        Ok(parse_factors(&self.claim.target)?)
    }

    pub fn factor_list(&self) -> Result<Vec<Factor>, GenerateError> {
        self.factors.iter().map(FactorRecord::to_factor).collect()
    }

    fn id(&self) -> String {
        format!("thm{}:{}", self.basis.theorem, self.claim.target)
    }

    /// Symbolic multiply-back and level audit, from the serialized content.
    pub fn symbolic_reports(&self) -> Result<(VerificationReport, VerificationReport), GenerateError> {
        let n = self.claim.n;
        let target = expand_factors(n, &self.target_factors()?)?;
        let factors = self.factor_list()?;
        let rhs = expand_factors(n, &factors)?;
        let sym = verify_symbolic(&self.id(), &target, &rhs)?;
        let level = self.audit_level();
        let audit = audit_levels(&self.id(), &target, &factors, &level)?;
        Ok((sym, audit))
    }

    /// Level of the target: `A` for relative and partially relative
    /// subgroups, `A∘B` for commutator subgroups.
    pub fn audit_level(&self) -> IdealSpec {
        if self.basis.theorem == "C" || self.basis.theorem == "2" {
            IdealSpec::free_tag(Tag::A)
        } else {
            IdealSpec::free_sym(Tag::A, Tag::B)
        }
    }

    /// Run numeric checks and record them.
    pub fn add_numeric(
        &mut self,
        plans: &[NumericPlan],
        trials: u64,
    ) -> Result<Vec<VerificationReport>, GenerateError> {
        let mut out = Vec::new();
        for plan in plans {
            let rep = self.numeric_report(plan, trials)?;
            self.checks.numeric.push(NumericCheck {
                ring: plan.ring.to_string(),
                trials,
                failures: rep.failures,
                seed: plan.seed,
                bindings: plan.bindings.iter().map(|(t, s)| (t.name(), s.to_string())).collect(),
            });
            out.push(rep);
        }
        Ok(out)
    }

    fn numeric_report(&self, plan: &NumericPlan, trials: u64) -> Result<VerificationReport, GenerateError> {
        let n = self.claim.n;
        let target = expand_factors(n, &self.target_factors()?)?;
        let rhs = expand_factors(n, &self.factor_list()?)?;
        Ok(verify_numeric(&self.id(), &target, &rhs, plan.ring, &plan.bindings, trials, plan.seed)?)
    }

    /// Re-run every check from the certificate's own content. The result
    /// passes only if all reports pass.
    pub fn recheck(&self) -> Result<Vec<VerificationReport>, GenerateError> {
        let (sym, audit) = self.symbolic_reports()?;
        let mut out = vec![sym, audit];
        for c in &self.checks.numeric {
            let ring: RingAdapter = c.ring.parse()?;
            let mut bindings = Bindings::new();
            for (tag, ideal) in &c.bindings {
                let tag = Tag::from_name(tag).ok_or_else(|| GenerateError::Invalid(format!("unknown tag {tag}")))?;
                bindings.insert(tag, IdealSpec::parse(ring, ideal)?);
            }
            let plan = NumericPlan { ring, bindings, seed: c.seed };
            out.push(self.numeric_report(&plan, c.trials)?);
        }
        Ok(out)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serializable")
        } else {
            serde_json::to_string(self).expect("serializable")
        }
    }

    pub fn from_json(s: &str) -> Result<Self, GenerateError> {
        serde_json::from_str(s).map_err(|e| GenerateError::Invalid(format!("certificate JSON: {e}")))
    }
}
