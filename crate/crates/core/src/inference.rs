//! Forward chaining over the implication graph between properties of
//! symmetric pairs: speciality, the tameness ladder, goodness, GK and the
//! Gelfand properties.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::criteria::{OrbitAuditRecord, Partition};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PropertyAtom {
    TraceBoundAllNilpotent,
    Special,
    WeaklyLinearlyTame,
    LinearlyTame,
    Tame,
    Regular,
    AllDescSpecial,
    AllDescWlt,
    AllDescRegular,
    AllDescH1Trivial,
    Good,
    Gk,
    Gp1,
    Gp2,
    Gp3,
    AdmissibleAntiAutomorphism,
    GlnWithTransposeStableH,
    ConnectedOverC,
}

impl PropertyAtom {
    pub const ALL: [PropertyAtom; 18] = [
        PropertyAtom::TraceBoundAllNilpotent,
        PropertyAtom::Special,
        PropertyAtom::WeaklyLinearlyTame,
        PropertyAtom::LinearlyTame,
        PropertyAtom::Tame,
        PropertyAtom::Regular,
        PropertyAtom::AllDescSpecial,
        PropertyAtom::AllDescWlt,
        PropertyAtom::AllDescRegular,
        PropertyAtom::AllDescH1Trivial,
        PropertyAtom::Good,
        PropertyAtom::Gk,
        PropertyAtom::Gp1,
        PropertyAtom::Gp2,
        PropertyAtom::Gp3,
        PropertyAtom::AdmissibleAntiAutomorphism,
        PropertyAtom::GlnWithTransposeStableH,
        PropertyAtom::ConnectedOverC,
    ];

    pub fn name(&self) -> &'static str {
        use PropertyAtom::*;
        match self {
            TraceBoundAllNilpotent => "TRACE_BOUND_ALL_NILPOTENT",
            Special => "SPECIAL",
            WeaklyLinearlyTame => "WEAKLY_LINEARLY_TAME",
            LinearlyTame => "LINEARLY_TAME",
            Tame => "TAME",
            Regular => "REGULAR",
            AllDescSpecial => "ALL_DESC_SPECIAL",
            AllDescWlt => "ALL_DESC_WLT",
            AllDescRegular => "ALL_DESC_REGULAR",
            AllDescH1Trivial => "ALL_DESC_H1_TRIVIAL",
            Good => "GOOD",
            Gk => "GK",
            Gp1 => "GP1",
            Gp2 => "GP2",
            Gp3 => "GP3",
            AdmissibleAntiAutomorphism => "ADMISSIBLE_ANTI_AUTOMORPHISM",
            GlnWithTransposeStableH => "GLN_WITH_TRANSPOSE_STABLE_H",
            ConnectedOverC => "CONNECTED_OVER_C",
        }
    }
}

impl fmt::Display for PropertyAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyAtom::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::input(format!("unknown property atom '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: &'static str,
    pub premises: Vec<PropertyAtom>,
    pub conclusion: PropertyAtom,
    pub citation: &'static str,
    /// A pointwise implication applied to every descendant at once.
    pub lifted: bool,
}

pub fn builtin_rules() -> Vec<Rule> {
    use PropertyAtom::*;
    let r = |id, premises: &[PropertyAtom], conclusion, citation, lifted| Rule {
        id,
        premises: premises.to_vec(),
        conclusion,
        citation,
        lifted,
    };
    vec![
        r("R1", &[TraceBoundAllNilpotent], Special,
          "trace criterion: Tr(ad d(x)|h_x) < dim g^σ for all nilpotent x gives speciality", false),
        r("R2", &[Special], WeaklyLinearlyTame, "special symmetric pairs are weakly linearly tame", false),
        r("R3", &[WeaklyLinearlyTame], Regular, "weakly linearly tame pairs are regular", false),
        r("R4", &[AllDescWlt], Tame, "linearization over descendants: all descendants weakly linearly tame gives tame", false),
        r("R5", &[AllDescWlt], LinearlyTame,
          "linearization over descendants: all descendants weakly linearly tame gives linearly tame", false),
        r("R6", &[LinearlyTame], WeaklyLinearlyTame, "linearly tame implies weakly linearly tame", false),
        r("R7", &[AllDescSpecial], AllDescWlt, "R2 applied to every descendant", true),
        r("R8", &[AllDescH1Trivial], Good, "trivial Galois cohomology of all descendant stabilizers gives goodness", false),
        r("R9", &[Good, Tame], Gk, "good tame symmetric pairs are GK pairs", false),
        r("R10", &[Good, AllDescRegular], Gk, "good pairs with all descendants regular are GK pairs", false),
        r("R11", &[Gk], Gp2, "GK pairs satisfy GP2 (distributional criterion)", false),
        r("R12", &[Gp1], Gp2, "GP1 implies GP2", false),
        r("R13", &[Gp2], Gp3, "GP2 implies GP3", false),
        r("R14", &[Gp2, AdmissibleAntiAutomorphism], Gp1,
          "with an admissible anti-automorphism GP1 is equivalent to GP2", false),
        r("R15", &[GlnWithTransposeStableH], AdmissibleAntiAutomorphism,
          "G = GL_n with H stable under transpose admits transpose as admissible anti-automorphism", false),
        r("R16", &[ConnectedOverC], Good, "connected symmetric pairs over C are good", false),
        r("R17", &[AllDescWlt], AllDescRegular, "R3 applied to every descendant", true),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Source {
    Computed(String),
    UserAsserted,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactBase {
    asserted: BTreeMap<PropertyAtom, Source>,
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = PropertyAtom>) -> Self {
        let mut f = Self::new();
        for a in atoms {
            f.assert(a, Source::UserAsserted);
        }
        f
    }

    /// Parses atom names, rejecting unknown ones.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let atoms = names
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<PropertyAtom>>>()?;
        Ok(Self::from_atoms(atoms))
    }

    /// Keeps the first source recorded for an atom.
    pub fn assert(&mut self, atom: PropertyAtom, source: Source) {
        self.asserted.entry(atom).or_insert(source);
    }

    pub fn merge(&mut self, other: &FactBase) {
        for (a, s) in &other.asserted {
            self.assert(*a, s.clone());
        }
    }

    pub fn atoms(&self) -> BTreeSet<PropertyAtom> {
        self.asserted.keys().copied().collect()
    }

    pub fn asserted(&self) -> &BTreeMap<PropertyAtom, Source> {
        &self.asserted
    }

    pub fn is_empty(&self) -> bool {
        self.asserted.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    /// Rule that produced the atom; `None` for asserted atoms.
    pub rule: Option<&'static str>,
    /// Every rule used, in firing order.
    pub chain: Vec<&'static str>,
    pub round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub facts: FactBase,
    pub derived: BTreeMap<PropertyAtom, Derivation>,
}

impl Closure {
    pub fn atoms(&self) -> BTreeSet<PropertyAtom> {
        self.derived.keys().copied().collect()
    }

    pub fn contains(&self, a: PropertyAtom) -> bool {
        self.derived.contains_key(&a)
    }

    /// Replays every chain from the asserted atoms using only built-in
    /// rules.
    pub fn verify(&self) -> bool {
        let rules = builtin_rules();
        let by_id: BTreeMap<&str, &Rule> = rules.iter().map(|r| (r.id, r)).collect();
        self.derived.iter().all(|(atom, d)| {
            let mut known = self.facts.atoms();
            for id in &d.chain {
                let Some(r) = by_id.get(id) else { return false };
                if !r.premises.iter().all(|p| known.contains(p)) {
                    return false;
                }
                known.insert(r.conclusion);
            }
            known.contains(atom) && d.rule.is_none_or(|id| d.chain.last() == Some(&id))
        })
    }
}

/// Least fixed point of the built-in rules. Atoms are derived in rounds,
/// so each derivation uses the fewest rounds; within a round the lowest
/// rule index wins.
pub fn close(facts: &FactBase) -> Closure {
    let rules = builtin_rules();
    let mut derived: BTreeMap<PropertyAtom, Derivation> = facts
        .atoms()
        .into_iter()
        .map(|a| {
            (
                a,
                Derivation {
                    rule: None,
                    chain: Vec::new(),
                    round: 0,
                },
            )
        })
        .collect();
    let mut round = 0;
    loop {
        round += 1;
        let mut fresh: BTreeMap<PropertyAtom, Derivation> = BTreeMap::new();
        for r in &rules {
            if derived.contains_key(&r.conclusion) || fresh.contains_key(&r.conclusion) {
                continue;
            }
            if !r.premises.iter().all(|p| derived.contains_key(p)) {
                continue;
            }
            let mut chain: Vec<&'static str> = Vec::new();
            for p in &r.premises {
                for id in &derived[p].chain {
                    if !chain.contains(id) {
                        chain.push(id);
                    }
                }
            }
            chain.push(r.id);
            fresh.insert(
                r.conclusion,
                Derivation {
                    rule: Some(r.id),
                    chain,
                    round,
                },
            );
        }
        if fresh.is_empty() {
            break;
        }
        derived.extend(fresh);
    }
    Closure {
        facts: facts.clone(),
        derived,
    }
}

/// Facts justified by an orbit audit of a single pair: the trace bound
/// holds when every expected partition was audited and passed.
pub fn audit_to_facts<F: Scalar>(
    records: &[OrbitAuditRecord<F>],
    expected: &[Partition],
    label: &str,
) -> Result<FactBase> {
    let seen: BTreeSet<&Partition> = records.iter().filter_map(|r| r.partition.as_ref()).collect();
    let missing: Vec<&Partition> = expected.iter().filter(|p| !seen.contains(p)).collect();
    if !missing.is_empty() {
        return Err(Error::pre(format!(
            "incomplete audit for {label}: missing partitions {missing:?}"
        )));
    }
    let mut facts = FactBase::new();
    if records.iter().all(|r| r.archimedean_pass) {
        facts.assert(
            PropertyAtom::TraceBoundAllNilpotent,
            Source::Computed(format!("speciality_audit over all {} orbits of {label}", records.len())),
        );
    }
    Ok(facts)
}

/// Facts for a built-in family audited at every size `1..=n`. The
/// descendants of a member of either family are products of members of
/// the same families of smaller size; that closure is assumed, not
/// computed, and is recorded in the provenance.
pub fn descendant_audits_to_facts<F: Scalar>(
    audits: &[(usize, Vec<OrbitAuditRecord<F>>)],
    expected: &[(usize, Vec<Partition>)],
    label: &str,
) -> Result<FactBase> {
    let mut all_pass = true;
    let mut top = FactBase::new();
    let max = expected.iter().map(|e| e.0).max().unwrap_or(0);
    for (size, parts) in expected {
        let recs = audits
            .iter()
            .find(|a| a.0 == *size)
            .map(|a| a.1.as_slice())
            .ok_or_else(|| Error::pre(format!("incomplete audit for {label}: size {size} missing")))?;
        let f = audit_to_facts(recs, parts, &format!("{label} at size {size}"))?;
        all_pass &= f.atoms().contains(&PropertyAtom::TraceBoundAllNilpotent);
        if *size == max {
            top = f;
        }
    }
    if all_pass && !expected.is_empty() {
        top.assert(
            PropertyAtom::AllDescSpecial,
            Source::Computed(format!(
                "trace bound at sizes 1..={max} of {label}; assumes descendants are products of the same family at those sizes"
            )),
        );
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PropertyAtom::*;

    #[test]
    fn rule_table_shape() {
        let rules = builtin_rules();
        assert_eq!(rules.len(), 17);
        assert!(rules.iter().all(|r| !r.citation.is_empty() && !r.premises.is_empty()));
        assert!(rules.iter().all(|r| r.conclusion != TraceBoundAllNilpotent));
        let ids: BTreeSet<_> = rules.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), 17);
    }

    #[test]
    fn empty_closure() {
        assert!(close(&FactBase::new()).derived.is_empty());
    }

    #[test]
    fn special_chain() {
        let c = close(&FactBase::from_atoms([Special]));
        assert_eq!(c.atoms(), BTreeSet::from([Special, WeaklyLinearlyTame, Regular]));
        assert_eq!(c.derived[&Regular].chain, vec!["R2", "R3"]);
        assert!(c.verify());
    }

    #[test]
    fn descendant_skeleton() {
        let c = close(&FactBase::from_atoms([AllDescSpecial, AllDescH1Trivial]));
        for a in [Tame, Good, Gk, Gp2, Gp3] {
            assert!(c.contains(a), "{a}");
        }
        assert!(!c.contains(Gp1));
        assert!(c.verify());
    }

    #[test]
    fn atom_names_round_trip() {
        for a in PropertyAtom::ALL {
            assert_eq!(a.name().parse::<PropertyAtom>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert!(FactBase::from_names(&["NOT_AN_ATOM"]).is_err());
    }
}
