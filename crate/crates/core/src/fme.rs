//! Fourier–Motzkin elimination over rate variables whose right-hand sides are
//! integer combinations of opaque information-quantity atoms.
//!
//! Atoms are labels such as `I(Y1;U1c|U2c)`; no identity between them is ever
//! inferred. Two labels denote the same quantity only when the system declares
//! it through [`SymbolicSystem::atom_aliases`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer combination of information atoms, zero terms removed, ordered by label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearExpr {
    terms: BTreeMap<String, i64>,
}

impl LinearExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(label: &str) -> Self {
        Self::from_terms([(label, 1)])
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut e = Self::zero();
        for (k, v) in terms {
            e.add_term(k, v);
        }
        e
    }

    fn add_term(&mut self, label: &str, coeff: i64) {
        let c = self.terms.entry(label.to_string()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(label);
        }
    }

    pub fn terms(&self) -> &BTreeMap<String, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(1, other, 1)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.combine(1, other, -1)
    }

    fn combine(&self, a: i64, other: &Self, b: i64) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k, a * v);
        }
        for (k, v) in &other.terms {
            out.add_term(k, b * v);
        }
        out
    }

    pub fn evaluate(&self, values: &BTreeMap<String, f64>) -> Result<f64> {
        self.terms.iter().try_fold(0.0, |acc, (k, &v)| {
            values.get(k).map(|x| acc + v as f64 * x).ok_or_else(|| Error::UnknownVariable(k.clone()))
        })
    }

    fn renamed(&self, aliases: &BTreeMap<String, String>) -> Self {
        let mut out = Self::zero();
        for (k, &v) in &self.terms {
            out.add_term(aliases.get(k).unwrap_or(k), v);
        }
        out
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(k, v)| (k.as_str(), *v)))
    }
}

fn write_combination<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a str, i64)>) -> fmt::Result {
    let mut first = true;
    for (k, v) in terms {
        let sign = if v < 0 { "-" } else { "+" };
        let mag = v.abs();
        if first {
            if v < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mag != 1 {
            write!(f, "{mag} ")?;
        }
        write!(f, "{k}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `Σ coeff·rate ≤ rhs`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicInequality {
    pub rates: BTreeMap<String, i64>,
    pub rhs: LinearExpr,
}

impl SymbolicInequality {
    pub fn new<'a>(rates: impl IntoIterator<Item = (&'a str, i64)>, rhs: LinearExpr) -> Self {
        let mut out = Self { rates: BTreeMap::new(), rhs };
        for (k, v) in rates {
            *out.rates.entry(k.to_string()).or_insert(0) += v;
        }
        out.rates.retain(|_, v| *v != 0);
        out
    }

    pub fn coeff(&self, var: &str) -> i64 {
        self.rates.get(var).copied().unwrap_or(0)
    }

    /// True for `0 ≤ rhs`.
    pub fn is_atom_constraint(&self) -> bool {
        self.rates.is_empty()
    }

    fn scaled_sum(&self, a: i64, other: &Self, b: i64) -> Self {
        let mut rates = BTreeMap::new();
        for (k, v) in &self.rates {
            *rates.entry(k.clone()).or_insert(0) += a * v;
        }
        for (k, v) in &other.rates {
            *rates.entry(k.clone()).or_insert(0) += b * v;
        }
        rates.retain(|_, v: &mut i64| *v != 0);
        Self { rates, rhs: self.rhs.combine(a, &other.rhs, b) }.reduced()
    }

    /// Divides every coefficient by their common gcd.
    fn reduced(mut self) -> Self {
        let g = self.rates.values().chain(self.rhs.terms.values()).fold(0i64, |g, &v| gcd(g, v.abs()));
        if g > 1 {
            self.rates.values_mut().for_each(|v| *v /= g);
            self.rhs.terms.values_mut().for_each(|v| *v /= g);
        }
        self
    }

    pub fn lhs_value(&self, rates: &BTreeMap<String, f64>) -> Result<f64> {
        self.rates.iter().try_fold(0.0, |acc, (k, &v)| {
            rates.get(k).map(|x| acc + v as f64 * x).ok_or_else(|| Error::UnknownVariable(k.clone()))
        })
    }

    /// `lhs ≤ rhs + tol` under the given rate and atom values.
    pub fn holds(&self, rates: &BTreeMap<String, f64>, atoms: &BTreeMap<String, f64>, tol: f64) -> Result<bool> {
        Ok(self.lhs_value(rates)? <= self.rhs.evaluate(atoms)? + tol)
    }

    fn renamed(&self, aliases: &BTreeMap<String, String>) -> Self {
        Self { rates: self.rates.clone(), rhs: self.rhs.renamed(aliases) }
    }
}

impl fmt::Display for SymbolicInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.rates.iter().map(|(k, v)| (k.as_str(), *v)))?;
        write!(f, " <= {}", self.rhs)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `var = Σ sum`. Applying it replaces the last summand by `var − (other summands)`;
/// a single-term sum is a renaming.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub var: String,
    pub sum: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSystem {
    pub variables: Vec<String>,
    pub inequalities: Vec<SymbolicInequality>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitutions: Vec<Substitution>,
    /// Atom labels declared equal to another label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub atom_aliases: BTreeMap<String, String>,
}

impl SymbolicSystem {
    pub fn new(variables: Vec<String>, inequalities: Vec<SymbolicInequality>) -> Result<Self> {
        let sys = Self { variables, inequalities, substitutions: Vec::new(), atom_aliases: BTreeMap::new() };
        sys.validate()?;
        Ok(sys)
    }

    /// Every referenced variable must be declared.
    pub fn validate(&self) -> Result<()> {
        let known: BTreeSet<&str> = self.variables.iter().map(String::as_str).collect();
        let check = |v: &str| {
            if known.contains(v) {
                Ok(())
            } else {
                Err(Error::UnknownVariable(v.to_string()))
            }
        };
        for ineq in &self.inequalities {
            for v in ineq.rates.keys() {
                check(v)?;
            }
        }
        for s in &self.substitutions {
            for v in &s.sum {
                check(v)?;
            }
        }
        Ok(())
    }

    /// Canonical inequality set, for order-insensitive comparison.
    pub fn canonical_set(&self) -> BTreeSet<SymbolicInequality> {
        self.inequalities.iter().cloned().collect()
    }

    /// Replaces atom labels according to `atom_aliases` and clears the table.
    pub fn apply_atom_aliases(&self) -> Self {
        let mut out = self.clone();
        out.inequalities = self.inequalities.iter().map(|i| i.renamed(&self.atom_aliases)).collect();
        out.atom_aliases.clear();
        out
    }
}

impl fmt::Display for SymbolicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.inequalities {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Rewrites the system in terms of the substituted variables.
pub fn apply_substitutions(system: &SymbolicSystem) -> Result<SymbolicSystem> {
    system.validate()?;
    // replaced variable -> its expression in other variables
    let mut replace: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::new();
    for s in &system.substitutions {
        let (last, rest) = s
            .sum
            .split_last()
            .ok_or_else(|| Error::InvalidParameter(format!("empty substitution for `{}`", s.var)))?;
        let mut expr = BTreeMap::new();
        expr.insert(s.var.clone(), 1);
        for r in rest {
            *expr.entry(r.clone()).or_insert(0) -= 1;
        }
        expr.retain(|_, v| *v != 0);
        if replace.insert(last.clone(), expr).is_some() {
            return Err(Error::InvalidParameter(format!("`{last}` substituted twice")));
        }
    }
    for start in replace.keys() {
        detect_cycle(start, &replace, &mut Vec::new())?;
    }

    let expand = |rates: &BTreeMap<String, i64>| -> BTreeMap<String, i64> {
        let mut cur = rates.clone();
        // acyclic, so this terminates within |replace| rounds
        for _ in 0..=replace.len() {
            let mut next: BTreeMap<String, i64> = BTreeMap::new();
            let mut changed = false;
            for (k, &c) in &cur {
                match replace.get(k) {
                    Some(expr) => {
                        changed = true;
                        for (v, &d) in expr {
                            *next.entry(v.clone()).or_insert(0) += c * d;
                        }
                    }
                    None => *next.entry(k.clone()).or_insert(0) += c,
                }
            }
            next.retain(|_, v| *v != 0);
            cur = next;
            if !changed {
                break;
            }
        }
        cur
    };

    let mut variables: Vec<String> = Vec::new();
    for s in &system.substitutions {
        if !variables.contains(&s.var) {
            variables.push(s.var.clone());
        }
    }
    for v in &system.variables {
        if !replace.contains_key(v) && !variables.contains(v) {
            variables.push(v.clone());
        }
    }
    let inequalities = system
        .inequalities
        .iter()
        .map(|i| SymbolicInequality { rates: expand(&i.rates), rhs: i.rhs.clone() })
        .collect();
    Ok(SymbolicSystem {
        variables,
        inequalities,
        substitutions: Vec::new(),
        atom_aliases: system.atom_aliases.clone(),
    })
}

fn detect_cycle(v: &str, replace: &BTreeMap<String, BTreeMap<String, i64>>, stack: &mut Vec<String>) -> Result<()> {
    if stack.iter().any(|s| s == v) {
        return Err(Error::CyclicSubstitution(v.to_string()));
    }
    if let Some(expr) = replace.get(v) {
        stack.push(v.to_string());
        for w in expr.keys() {
            detect_cycle(w, replace, stack)?;
        }
        stack.pop();
    }
    Ok(())
}

/// One Fourier–Motzkin step: every upper bound on `var` is paired with every
/// lower bound; inequalities without `var` pass through unchanged.
pub fn eliminate(system: &SymbolicSystem, var: &str) -> Result<SymbolicSystem> {
    if !system.variables.iter().any(|v| v == var) {
        return Err(Error::UnknownVariable(var.to_string()));
    }
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut out = Vec::new();
    for ineq in &system.inequalities {
        match ineq.coeff(var) {
            c if c > 0 => upper.push(ineq),
            c if c < 0 => lower.push(ineq),
            _ => out.push(ineq.clone()),
        }
    }
    for u in &upper {
        for l in &lower {
            let p = u.coeff(var);
            let q = -l.coeff(var);
            let combined = u.scaled_sum(q, l, p);
            debug_assert_eq!(combined.coeff(var), 0);
            if !out.contains(&combined) {
                out.push(combined);
            }
        }
    }
    Ok(SymbolicSystem {
        variables: system.variables.iter().filter(|v| *v != var).cloned().collect(),
        inequalities: out,
        substitutions: system.substitutions.clone(),
        atom_aliases: system.atom_aliases.clone(),
    })
}

/// Removes duplicates, inequalities equal to the sum of two others, and
/// inequalities dominated by one with the same left side when the difference of
/// right sides is declared nonnegative.
pub fn prune(system: &SymbolicSystem, assumed_nonneg: &[LinearExpr]) -> SymbolicSystem {
    let mut kept: Vec<SymbolicInequality> = Vec::new();
    for ineq in &system.inequalities {
        if !kept.contains(ineq) {
            kept.push(ineq.clone());
        }
    }
    kept.retain(|i| !(i.is_atom_constraint() && (i.rhs.is_zero() || assumed_nonneg.contains(&i.rhs))));

    loop {
        let victim = (0..kept.len()).find(|&p| is_dominated(p, &kept, assumed_nonneg) || is_sum_of_two(p, &kept));
        match victim {
            Some(p) => {
                kept.remove(p);
            }
            None => break,
        }
    }
    SymbolicSystem { inequalities: kept, ..system.clone() }
}

fn is_dominated(p: usize, set: &[SymbolicInequality], assumed_nonneg: &[LinearExpr]) -> bool {
    let target = &set[p];
    set.iter().enumerate().any(|(q, other)| {
        q != p && other.rates == target.rates && assumed_nonneg.contains(&target.rhs.minus(&other.rhs))
    })
}

fn is_sum_of_two(p: usize, set: &[SymbolicInequality]) -> bool {
    let target = &set[p];
    for q in 0..set.len() {
        if q == p {
            continue;
        }
        for r in q..set.len() {
            if r == p {
                continue;
            }
            let s = sum_unreduced(&set[q], &set[r]);
            if s.rates == target.rates && s.rhs == target.rhs {
                return true;
            }
        }
    }
    false
}

fn sum_unreduced(a: &SymbolicInequality, b: &SymbolicInequality) -> SymbolicInequality {
    let mut rates = a.rates.clone();
    for (k, v) in &b.rates {
        *rates.entry(k.clone()).or_insert(0) += v;
    }
    rates.retain(|_, v| *v != 0);
    SymbolicInequality { rates, rhs: a.rhs.plus(&b.rhs) }
}

/// Atom labels of the superposition/binning scheme before elimination.
pub mod atoms {
    pub const BIN: &str = "I(U1c;X2|U2c)";
    pub const Y1_U1C_U2C: &str = "I(Y1;U1c,U2c)";
    pub const Y1_U1C_GIVEN_U2C: &str = "I(Y1;U1c|U2c)";
    pub const Y2_U1C_U2C_X2: &str = "I(Y2;U1c,U2c,X2)";
    pub const Y2_U1C_X2_GIVEN_U2C: &str = "I(Y2;U1c,X2|U2c)";
    pub const Y2_U1C_GIVEN_X2_U2C: &str = "I(Y2;U1c|X2,U2c)";
    pub const Y2_X2_GIVEN_U1C_U2C: &str = "I(Y2;X2|U1c,U2c)";

    pub const Y2_X1_X2: &str = "I(Y2;X1,X2)";
    pub const Y2_X1_X2_GIVEN_U2C: &str = "I(Y2;X1,X2|U2c)";
    pub const Y2_X1_GIVEN_X2_U2C: &str = "I(Y2;X1|X2,U2c)";
}

/// The rate constraints of the rate-split superposition/binning scheme, before
/// elimination. Rates: `R1c` (cognitive), `R1cp` (binning rate R'1c), `R2c`
/// and `R2p` (common and private primary parts). Carries the substitutions
/// `R1 = R1c`, `R2 = R2c + R2p` and the identification of atoms that involve
/// `(U1c, U2c, X2)` with the same atoms in `X1`, valid because `X1` is a
/// deterministic function of `(U1c, U2c, X2)`.
pub fn th2_pre_elimination() -> SymbolicSystem {
    use atoms::*;
    let e = LinearExpr::atom;
    let plus_bin = |a: &str| LinearExpr::from_terms([(a, 1), (BIN, 1)]);
    let inequalities = vec![
        SymbolicInequality::new([("R1cp", -1)], LinearExpr::from_terms([(BIN, -1)])),
        SymbolicInequality::new([("R1c", 1), ("R1cp", 1), ("R2c", 1)], e(Y1_U1C_U2C)),
        SymbolicInequality::new([("R1c", 1), ("R1cp", 1)], e(Y1_U1C_GIVEN_U2C)),
        SymbolicInequality::new([("R2c", 1), ("R1c", 1), ("R1cp", 1), ("R2p", 1)], plus_bin(Y2_U1C_U2C_X2)),
        SymbolicInequality::new([("R1c", 1), ("R1cp", 1), ("R2p", 1)], plus_bin(Y2_U1C_X2_GIVEN_U2C)),
        SymbolicInequality::new([("R1c", 1), ("R1cp", 1)], plus_bin(Y2_U1C_GIVEN_X2_U2C)),
        SymbolicInequality::new([("R2p", 1)], plus_bin(Y2_X2_GIVEN_U1C_U2C)),
    ];
    let atom_aliases = [
        (Y2_U1C_U2C_X2, Y2_X1_X2),
        (Y2_U1C_X2_GIVEN_U2C, Y2_X1_X2_GIVEN_U2C),
        (Y2_U1C_GIVEN_X2_U2C, Y2_X1_GIVEN_X2_U2C),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    SymbolicSystem {
        variables: ["R1c", "R1cp", "R2c", "R2p"].map(String::from).to_vec(),
        inequalities,
        substitutions: vec![
            Substitution { var: "R1".into(), sum: vec!["R1c".into()] },
            Substitution { var: "R2".into(), sum: vec!["R2c".into(), "R2p".into()] },
        ],
        atom_aliases,
    }
}

/// The five bounds of the achievable region over `(R1, R2)`, in printed order.
pub fn th2_expected() -> Vec<SymbolicInequality> {
    use atoms::*;
    let t = |xs: &[(&str, i64)]| LinearExpr::from_terms(xs.iter().copied());
    vec![
        SymbolicInequality::new([("R1", 1)], t(&[(Y1_U1C_GIVEN_U2C, 1), (BIN, -1)])),
        SymbolicInequality::new([("R1", 1)], t(&[(Y2_X1_GIVEN_X2_U2C, 1)])),
        SymbolicInequality::new([("R1", 1), ("R2", 1)], t(&[(Y1_U1C_U2C, 1), (Y2_X2_GIVEN_U1C_U2C, 1)])),
        SymbolicInequality::new([("R1", 1), ("R2", 1)], t(&[(Y2_X1_X2, 1)])),
        SymbolicInequality::new([("R1", 2), ("R2", 1)], t(&[(Y1_U1C_U2C, 1), (Y2_X1_X2_GIVEN_U2C, 1), (BIN, -1)])),
    ]
}

/// Runs substitution, alias resolution, elimination of `eliminate_vars` in
/// order, and optionally pruning.
pub fn run_pipeline(system: &SymbolicSystem, eliminate_vars: &[&str], do_prune: bool) -> Result<SymbolicSystem> {
    let mut sys = apply_substitutions(system)?.apply_atom_aliases();
    for v in eliminate_vars {
        sys = eliminate(&sys, v)?;
    }
    if do_prune {
        sys = prune(&sys, &[]);
    }
    Ok(sys)
}

/// Re-derives the five-bound achievable region from the pre-elimination
/// system, eliminating `R1cp` then `R2c`.
pub fn derive_th2() -> Result<SymbolicSystem> {
    let sys = run_pipeline(&th2_pre_elimination(), &["R1cp", "R2c"], true)?;
    let got = sys.canonical_set();
    let want: BTreeSet<SymbolicInequality> = th2_expected().into_iter().collect();
    if got != want {
        let missing: Vec<String> = want.difference(&got).map(|i| i.to_string()).collect();
        let extra: Vec<String> = got.difference(&want).map(|i| i.to_string()).collect();
        return Err(Error::DerivationMismatch(format!("missing {missing:?}, extra {extra:?}")));
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(vars: &[&str], ineqs: Vec<SymbolicInequality>) -> SymbolicSystem {
        SymbolicSystem::new(vars.iter().map(|s| s.to_string()).collect(), ineqs).unwrap()
    }

    fn a(l: &str) -> LinearExpr {
        LinearExpr::atom(l)
    }

    #[test]
    fn renaming_substitution() {
        let mut s = sys(&["R1c"], vec![SymbolicInequality::new([("R1c", 1)], a("A"))]);
        s.substitutions.push(Substitution { var: "R1".into(), sum: vec!["R1c".into()] });
        let out = apply_substitutions(&s).unwrap();
        assert_eq!(out.variables, vec!["R1"]);
        assert_eq!(out.inequalities[0].to_string(), "R1 <= A");
    }

    #[test]
    fn sum_substitution_keeps_auxiliary() {
        let mut s = sys(&["R2c", "R2p"], vec![SymbolicInequality::new([("R2p", 1)], a("B"))]);
        s.substitutions.push(Substitution { var: "R2".into(), sum: vec!["R2c".into(), "R2p".into()] });
        let out = apply_substitutions(&s).unwrap();
        assert_eq!(out.inequalities[0], SymbolicInequality::new([("R2", 1), ("R2c", -1)], a("B")));
        assert_eq!(out.variables, vec!["R2", "R2c"]);
    }

    #[test]
    fn cyclic_substitution_rejected() {
        let mut s = sys(&["x", "y"], vec![]);
        s.substitutions.push(Substitution { var: "y".into(), sum: vec!["x".into()] });
        s.substitutions.push(Substitution { var: "x".into(), sum: vec!["y".into()] });
        assert!(matches!(apply_substitutions(&s), Err(Error::CyclicSubstitution(_))));
    }

    #[test]
    fn substitution_variables() {
        let out = apply_substitutions(&th2_pre_elimination()).unwrap();
        assert_eq!(out.variables, vec!["R1", "R2", "R1cp", "R2c"]);
        assert!(out.inequalities.iter().all(|i| i.coeff("R1c") == 0 && i.coeff("R2p") == 0));
        // R2p ≤ … became R2 − R2c ≤ …
        assert_eq!(out.inequalities[6].rates, [("R2".to_string(), 1), ("R2c".to_string(), -1)].into());
    }

    #[test]
    fn single_pairing() {
        let s = sys(
            &["x", "y"],
            vec![SymbolicInequality::new([("x", 1)], a("A")), SymbolicInequality::new([("y", 1), ("x", -1)], a("B"))],
        );
        let out = eliminate(&s, "x").unwrap();
        assert_eq!(out.variables, vec!["y"]);
        assert_eq!(out.inequalities, vec![SymbolicInequality::new([("y", 1)], a("A").plus(&a("B")))]);
    }

    #[test]
    fn vacuous_elimination() {
        let s = sys(&["x"], vec![SymbolicInequality::new([("x", -1)], LinearExpr::from_terms([("C", -1)]))]);
        assert!(eliminate(&s, "x").unwrap().inequalities.is_empty());
    }

    #[test]
    fn eliminate_unknown_variable() {
        let s = sys(&["x"], vec![]);
        assert!(eliminate(&s, "z").is_err());
    }

    #[test]
    fn combination_is_gcd_reduced() {
        let s = sys(
            &["x", "y"],
            vec![
                SymbolicInequality::new([("x", 2), ("y", 2)], LinearExpr::from_terms([("A", 2)])),
                SymbolicInequality::new([("x", -2)], LinearExpr::from_terms([("B", 2)])),
            ],
        );
        let out = eliminate(&s, "x").unwrap();
        assert_eq!(out.inequalities, vec![SymbolicInequality::new([("y", 1)], a("A").plus(&a("B")))]);
    }

    #[test]
    fn prune_duplicates() {
        let i = SymbolicInequality::new([("R1", 1)], a("A"));
        let s = sys(&["R1"], vec![i.clone(), i.clone()]);
        assert_eq!(prune(&s, &[]).inequalities, vec![i]);
    }

    #[test]
    fn prune_sum_pattern() {
        let p = SymbolicInequality::new([("R1", 1)], a("A"));
        let q = SymbolicInequality::new([("R2", 1)], a("B"));
        let sum = SymbolicInequality::new([("R1", 1), ("R2", 1)], a("A").plus(&a("B")));
        let s = sys(&["R1", "R2"], vec![p.clone(), q.clone(), sum]);
        assert_eq!(prune(&s, &[]).inequalities, vec![p, q]);
    }

    #[test]
    fn prune_dominance() {
        let p = SymbolicInequality::new([("R1", 1)], a("A"));
        let looser = SymbolicInequality::new([("R1", 1)], a("A").plus(&a("D")));
        let s = sys(&["R1"], vec![p.clone(), looser.clone()]);
        assert_eq!(prune(&s, &[a("D")]).inequalities, vec![p.clone()]);
        assert_eq!(prune(&s, &[]).inequalities.len(), 2);
    }

    #[test]
    fn th2_is_reproduced() {
        let out = derive_th2().unwrap();
        assert_eq!(out.variables, vec!["R1", "R2"]);
        assert_eq!(out.inequalities.len(), 5);
        let r1: Vec<String> = out
            .inequalities
            .iter()
            .filter(|i| i.rates == BTreeMap::from([("R1".to_string(), 1)]))
            .map(|i| i.rhs.to_string())
            .collect();
        assert!(r1.contains(&"-I(U1c;X2|U2c) + I(Y1;U1c|U2c)".to_string()), "{r1:?}");
        let two_r1 = out.inequalities.iter().find(|i| i.coeff("R1") == 2).unwrap();
        assert_eq!(two_r1.rhs.to_string(), "-I(U1c;X2|U2c) + I(Y1;U1c,U2c) + I(Y2;X1,X2|U2c)");
    }

    #[test]
    fn th2_order_independent() {
        let a = run_pipeline(&th2_pre_elimination(), &["R1cp", "R2c"], true).unwrap();
        let b = run_pipeline(&th2_pre_elimination(), &["R2c", "R1cp"], true).unwrap();
        assert_eq!(a.canonical_set(), b.canonical_set());
    }

    #[test]
    fn json_shape() {
        let s = sys(&["R1"], vec![SymbolicInequality::new([("R1", 1)], LinearExpr::from_terms([("I(Y1;U1c|U2c)", 1), ("I(U1c;X2|U2c)", -1)]))]);
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"variables": ["R1"], "inequalities": [{"rates": {"R1": 1}, "rhs": {"I(U1c;X2|U2c)": -1, "I(Y1;U1c|U2c)": 1}}]})
        );
        let back: SymbolicSystem = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
    }
}
