//! Bounded, exact verification suites over the automaton families.
//!
//! Every suite is deterministic: words are enumerated in lexicographic order,
//! shortest first, so the report for a smaller bound is a prefix of the report
//! for a larger one. Exceeding a resource cap stops a suite early and marks
//! the report incomplete rather than failed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    h, make_d, make_dual_of, make_e, make_family, make_pi, make_u, perms, Kind, Permutation, Scope,
};
use crate::machine::{
    apply_state_word, compose_all, composite_witness, distinguishing_word, Alphabet, Limits,
    MealyMachine, PointedMachine,
};
use crate::orbits::{is_level_transitive, orbits_of_level, GeneratorSystem};
use crate::transforms::inverse_automaton;
use crate::words::{
    chi, enumerate_by_marked_pattern, enumerate_by_pattern, enumerate_irreducible_of_length,
    has_double_letter, marked_pattern_of, pattern_of, MarkedPattern, Pattern, SignedAlphabet,
    StateWord,
};

/// One failed check with enough data to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
    pub machine: String,
}

/// Overall outcome of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Incomplete => "incomplete",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Per-item observations in enumeration order.
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, u64>,
    /// Set when a resource cap stopped the suite.
    pub incomplete: Option<String>,
    /// No failures among the checks that ran.
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_owned(),
            parameters: BTreeMap::new(),
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            stats: BTreeMap::new(),
            incomplete: None,
            passed: true,
            elapsed_ms: 0,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_owned(), value.to_string());
    }

    fn fail(
        &mut self,
        check: impl Into<String>,
        witness: impl Into<String>,
        machine: impl Into<String>,
    ) {
        self.failures.push(Failure {
            check: check.into(),
            witness: witness.into(),
            machine: machine.into(),
        });
    }

    fn stat_max(&mut self, key: &str, value: u64) {
        let e = self.stats.entry(key.to_owned()).or_insert(0);
        *e = (*e).max(value);
    }

    fn stat_add(&mut self, key: &str, value: u64) {
        *self.stats.entry(key.to_owned()).or_insert(0) += value;
    }

    fn finish(mut self, started: Instant, outcome: Result<()>) -> Result<Self> {
        match outcome {
            Ok(()) => {}
            Err(e) if e.is_resource() => self.incomplete = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        self.passed = self.failures.is_empty();
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        Ok(self)
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if self.incomplete.is_some() {
            Status::Incomplete
        } else {
            Status::Pass
        }
    }

    /// Line-oriented text form. Timing is included only on request so that
    /// reports for equal parameters compare equal.
    pub fn to_text(&self, with_timing: bool) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for (k, v) in &self.parameters {
            out += &format!("param {k}={v}\n");
        }
        out += &format!("checks {}\n", self.checks);
        for (k, v) in &self.stats {
            out += &format!("stat {k}={v}\n");
        }
        for n in &self.notes {
            out += &format!("note {n}\n");
        }
        for f in &self.failures {
            out += &format!(
                "failure {} | witness {} | machine {}\n",
                f.check, f.witness, f.machine
            );
        }
        if let Some(why) = &self.incomplete {
            out += &format!("incomplete {why}\n");
        }
        if with_timing {
            out += &format!("elapsed_ms {}\n", self.elapsed_ms);
        }
        out += &format!("status {}\n", self.status());
        out
    }
}

/// Suite names accepted by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Freeness,
    FreeProduct,
    Identities,
    Duality,
    Chi,
    Orbits,
    Transitivity,
    Witnesses,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Freeness,
        Suite::FreeProduct,
        Suite::Identities,
        Suite::Duality,
        Suite::Chi,
        Suite::Orbits,
        Suite::Transitivity,
        Suite::Witnesses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Freeness => "freeness",
            Suite::FreeProduct => "free-product",
            Suite::Identities => "identities",
            Suite::Duality => "duality",
            Suite::Chi => "chi",
            Suite::Orbits => "orbits",
            Suite::Transitivity => "transitivity",
            Suite::Witnesses => "witnesses",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

/// Which orbit statement [`check_orbit_classification`] asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitClass {
    /// Irreducible words of one pattern form one orbit of `G(D)`.
    Pattern,
    /// Irreducible words of one marked pattern form one orbit of `G(D^(N))`.
    Marked,
    /// No-double-letter words of one length form one orbit of the dual of `B`.
    NoDoubleLetter,
}

impl OrbitClass {
    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::Pattern => "pattern",
            OrbitClass::Marked => "marked",
            OrbitClass::NoDoubleLetter => "no_double_letter",
        }
    }
}

impl FromStr for OrbitClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pattern" => Ok(OrbitClass::Pattern),
            "marked" => Ok(OrbitClass::Marked),
            "no_double_letter" | "no-double-letter" => Ok(OrbitClass::NoDoubleLetter),
            _ => Err(Error::InvalidParameter(format!(
                "unknown orbit statement `{s}`"
            ))),
        }
    }
}

/// Default word-length bound for freeness: 5 for `n = 1`, 4 for larger
/// single `n`, 3 for unions.
pub fn default_max_len(scope: &Scope) -> usize {
    match scope {
        Scope::Classic => 5,
        Scope::Union(s) if s.len() > 1 => 3,
        Scope::Union(s) if s.contains(&1) => 5,
        Scope::Union(_) => 4,
    }
}

/// Default level bound for transitivity.
pub const DEFAULT_MAX_LEVEL: usize = 6;

fn scope_param(r: &mut VerificationReport, scope: &Scope) {
    r.param("scope", scope);
}

fn pretty(alphabet: &SignedAlphabet, xi: &[usize]) -> String {
    alphabet.pretty_word(&StateWord(xi.to_vec()))
}

fn binary_word(w: &[usize]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.iter().map(usize::to_string).collect()
    }
}

fn u_generators(u: &Arc<MealyMachine>, xi: &[usize]) -> Vec<PointedMachine> {
    xi.iter().map(|&q| u.pointed(q)).collect()
}

/// Every nonempty freely irreducible `ξ` with `|ξ| ≤ max_len` must give a
/// non-identity `U_ξ`.
pub fn check_freeness(
    scope: &Scope,
    max_len: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    if max_len < 1 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    scope.require_positive()?;
    let started = Instant::now();
    let mut r = VerificationReport::new("freeness");
    scope_param(&mut r, scope);
    r.param("max_len", max_len);
    r.param("max_pairs", limits.max_pairs);
    let alphabet = scope.signed_alphabet()?;
    let u = Arc::new(make_u(scope)?);
    let d = Arc::new(make_d(scope)?);
    let outcome = (|| {
        for k in 1..=max_len {
            let mut words = 0u64;
            for xi in enumerate_irreducible_of_length(&alphabet, k) {
                r.checks += 1;
                words += 1;
                match composite_witness(&u_generators(&u, &xi.0), limits)? {
                    Some(w) => r.stat_max("max_witness_depth", w.len() as u64),
                    None => {
                        let consequence = dual_orbit_consequence(&u, &d, &xi.0, limits)?;
                        r.fail(
                            format!("U_ξ ≠ 1 for ξ = {}", pretty(&alphabet, &xi.0)),
                            format!("identity on every word; {consequence}"),
                            format!("{}@{}", u.name(), alphabet.format_word(&xi)),
                        );
                    }
                }
            }
            r.notes.push(format!(
                "length {k}: {words} irreducible words, all non-identity so far"
            ));
            r.stat_add("words", words);
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

/// If `U_ξ = 1` then `U_{D_w(ξ)} = 1` for every `w`; confirms this for
/// `|w| ≤ 2` and describes the outcome.
fn dual_orbit_consequence(
    u: &Arc<MealyMachine>,
    d: &MealyMachine,
    xi: &[usize],
    limits: &Limits,
) -> Result<String> {
    let mut checked = 0;
    for w in words_up_to(d.num_states(), 2) {
        let image = apply_state_word(d, &w, xi)?;
        if composite_witness(&u_generators(u, &image), limits)?.is_some() {
            return Ok(format!(
                "inconsistent: U_{{D_w(ξ)}} ≠ 1 for w = {}",
                binary_word(&w)
            ));
        }
        checked += 1;
    }
    Ok(format!("U_{{D_w(ξ)}} = 1 confirmed for {checked} words w"))
}

/// Every word of length at most `max` over `0..base`, shortest first.
fn words_up_to(base: usize, max: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..base).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Words of length `k` over `0..m` with no two equal adjacent letters,
/// lexicographic.
fn alternating_words(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..m).filter(move |&x| w.last() != Some(&x)).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    layer
}

/// Each `B_q` is an involution and every word with no two equal adjacent
/// letters, `|ξ| ≤ max_len`, gives a non-identity `B_ξ`.
pub fn check_free_product(
    scope: &Scope,
    max_len: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    if max_len < 1 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    let started = Instant::now();
    let mut r = VerificationReport::new("free-product");
    scope_param(&mut r, scope);
    r.param("max_len", max_len);
    r.param("max_pairs", limits.max_pairs);
    let b = Arc::new(make_family(scope, Kind::Bellaterra)?);
    let m = b.num_states();
    let outcome = (|| {
        for q in 0..m {
            r.checks += 1;
            if let Some(w) = composite_witness(&[b.pointed(q), b.pointed(q)], limits)? {
                r.fail(
                    format!("B_{}² = 1", b.state_name(q)),
                    binary_word(&w),
                    format!(
                        "{}@{} ; {}@{}",
                        b.name(),
                        b.state_name(q),
                        b.name(),
                        b.state_name(q)
                    ),
                );
            }
        }
        for k in 1..=max_len {
            let mut words = 0u64;
            for xi in alternating_words(m, k) {
                r.checks += 1;
                words += 1;
                match composite_witness(&u_generators(&b, &xi), limits)? {
                    Some(w) => r.stat_max("max_witness_depth", w.len() as u64),
                    None => r.fail(
                        format!("B_ξ ≠ 1 for ξ = {}", b.alphabet_of_states(&xi)),
                        "identity on every word",
                        b.name(),
                    ),
                }
            }
            r.notes.push(format!(
                "length {k}: {words} alternating words, all non-identity so far"
            ));
            r.stat_add("words", words);
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

trait StateNames {
    fn alphabet_of_states(&self, xi: &[usize]) -> String;
}

impl StateNames for MealyMachine {
    fn alphabet_of_states(&self, xi: &[usize]) -> String {
        xi.iter()
            .map(|&q| self.state_name(q))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

struct IdentityChecker<'a> {
    report: &'a mut VerificationReport,
    limits: &'a Limits,
}

impl IdentityChecker<'_> {
    fn check(&mut self, name: String, lhs: &PointedMachine, rhs: &PointedMachine) -> Result<()> {
        self.report.checks += 1;
        match distinguishing_word(lhs, rhs, self.limits)? {
            None => self.report.notes.push(format!("{name}: holds")),
            Some(w) => {
                self.report.notes.push(format!("{name}: FAILS"));
                let alphabet = lhs.alphabet();
                self.report.fail(
                    name,
                    format!(
                        "{} ↦ {} vs {}",
                        alphabet.format_word(&w),
                        alphabet.format_word(&lhs.apply(&w)?),
                        alphabet.format_word(&rhs.apply(&w)?)
                    ),
                    format!("{lhs} vs {rhs}"),
                );
            }
        }
        Ok(())
    }
}

/// Product `f g` of transformations in function notation: `g` acts first.
fn prod(fs: &[&PointedMachine], limits: &Limits) -> Result<PointedMachine> {
    let seq: Vec<PointedMachine> = fs.iter().rev().map(|&f| f.clone()).collect();
    compose_all(&seq, limits)
}

/// The generating identities for `D`, `E` and `π_τ`, and the relations
/// between the Aleshin-type and Bellaterra-type transformations through `h`.
pub fn check_identities(scope: &Scope, limits: &Limits) -> Result<VerificationReport> {
    scope.require_positive()?;
    let started = Instant::now();
    let mut r = VerificationReport::new("identities");
    scope_param(&mut r, scope);
    let outcome = identities_into(scope, limits, &mut r);
    r.finish(started, outcome)
}

fn identities_into(scope: &Scope, limits: &Limits, r: &mut VerificationReport) -> Result<()> {
    let alphabet = scope.signed_alphabet()?;
    let mut c = IdentityChecker { report: r, limits };
    let d = Arc::new(make_d(scope)?);
    let d_inv = Arc::new(inverse_automaton(&d)?);
    let e = Arc::new(make_e(scope)?);
    let (d0, d1, e0, e1) = (d.pointed(0), d.pointed(1), e.pointed(0), e.pointed(1));
    let (d0i, d1i) = (d_inv.pointed(0), d_inv.pointed(1));
    let one = PointedMachine::identity(d.alphabet());
    let pi = |t: &Permutation| make_pi(&alphabet, t);
    let (t0, t1) = (perms::tau0(&alphabet), perms::tau1(&alphabet));
    let (ab, bc, ac, chain) = (
        perms::swap_ab(&alphabet),
        perms::swap_bc(&alphabet),
        perms::swap_ac(&alphabet),
        perms::chain_c(&alphabet),
    );
    let (pt0, pt1, pab, pbc) = (pi(&t0)?, pi(&t1)?, pi(&ab)?, pi(&bc)?);

    c.check("E0² = 1".into(), &prod(&[&e0, &e0], limits)?, &one)?;
    c.check("E1² = 1".into(), &prod(&[&e1, &e1], limits)?, &one)?;
    c.check(
        format!("E0 E1 = π{}", ab.to_cycle_string()),
        &prod(&[&e0, &e1], limits)?,
        &pab,
    )?;
    c.check(
        format!("E1 E0 = π{}", ab.to_cycle_string()),
        &prod(&[&e1, &e0], limits)?,
        &pab,
    )?;
    c.check("D0 = π_τ0 E0".into(), &d0, &prod(&[&pt0, &e0], limits)?)?;
    c.check("D0 = π_τ1 E1".into(), &d0, &prod(&[&pt1, &e1], limits)?)?;
    c.check("D1 = π_τ1 E0".into(), &d1, &prod(&[&pt1, &e0], limits)?)?;
    c.check("D1 = π_τ0 E1".into(), &d1, &prod(&[&pt0, &e1], limits)?)?;
    c.check(
        format!("D0 D1⁻¹ = π{}", bc.to_cycle_string()),
        &prod(&[&d0, &d1i], limits)?,
        &pbc,
    )?;
    c.check(
        format!("D0⁻¹ D1 = π{}", ab.to_cycle_string()),
        &prod(&[&d0i, &d1], limits)?,
        &pab,
    )?;
    c.check(
        "π_τ0 π_τ1 = π_{τ0 τ1}".into(),
        &prod(&[&pt0, &pt1], limits)?,
        &pi(&t0.compose(&t1))?,
    )?;
    let (pchain, pac) = (pi(&chain)?, pi(&ac)?);
    c.check(
        format!(
            "π{} E0 = π{} D0",
            chain.to_cycle_string(),
            ac.to_cycle_string()
        ),
        &prod(&[&pchain, &e0], limits)?,
        &prod(&[&pac, &d0], limits)?,
    )?;
    let m: usize = scope
        .indices()
        .iter()
        .map(|&n| 2 * n as usize - 1)
        .product();
    let factor = prod(&[&pchain, &e0], limits)?;
    let power = compose_all(&vec![factor; m], limits)?;
    c.check(
        format!("(π{} E0)^{m} = E0", chain.to_cycle_string()),
        &power,
        &e0,
    )?;

    let a = Arc::new(make_family(scope, Kind::Aleshin)?);
    let b = Arc::new(make_family(scope, Kind::Bellaterra)?);
    let a_inv = Arc::new(inverse_automaton(&a)?);
    let h = h();
    let bin = PointedMachine::identity(&Alphabet::binary());
    c.check("h² = 1".into(), &prod(&[&h, &h], limits)?, &bin)?;
    for q in 0..a.num_states() {
        let name = a.state_name(q);
        let (aq, bq, aqi) = (a.pointed(q), b.pointed(q), a_inv.pointed(q));
        c.check(
            format!("A_{name} A_{name}⁻¹ = 1"),
            &prod(&[&aq, &aqi], limits)?,
            &bin,
        )?;
        c.check(format!("B_{name}² = 1"), &prod(&[&bq, &bq], limits)?, &bin)?;
        c.check(
            format!("A_{name} = h B_{name}"),
            &aq,
            &prod(&[&h, &bq], limits)?,
        )?;
        c.check(
            format!("B_{name} = h A_{name}"),
            &bq,
            &prod(&[&h, &aq], limits)?,
        )?;
        c.check(
            format!("h A_{name} h⁻¹ = A_{name}⁻¹"),
            &prod(&[&h, &aq, &h], limits)?,
            &aqi,
        )?;
        c.check(
            format!("B_{name} h = A_{name}⁻¹"),
            &prod(&[&bq, &h], limits)?,
            &aqi,
        )?;
    }
    for p in 0..a.num_states() {
        for q in 0..a.num_states() {
            let (pn, qn) = (a.state_name(p), a.state_name(q));
            c.check(
                format!("A_{pn}⁻¹ A_{qn} = B_{pn} B_{qn}"),
                &prod(&[&a_inv.pointed(p), &a.pointed(q)], limits)?,
                &prod(&[&b.pointed(p), &b.pointed(q)], limits)?,
            )?;
        }
    }
    Ok(())
}

/// `U_ξ(wu) = U_ξ(w) U_{D_w(ξ)}(u)` letter for letter, for every `ξ`, `w`,
/// `u` up to the given lengths (empty words included).
pub fn check_duality(
    scope: &Scope,
    max_xi: usize,
    max_w: usize,
    max_u: usize,
) -> Result<VerificationReport> {
    scope.require_positive()?;
    let started = Instant::now();
    let mut r = VerificationReport::new("duality");
    scope_param(&mut r, scope);
    r.param("max_xi", max_xi);
    r.param("max_w", max_w);
    r.param("max_u", max_u);
    let alphabet = scope.signed_alphabet()?;
    let u = make_u(scope)?;
    let d = make_d(scope)?;
    let outcome = (|| {
        let ws = words_up_to(2, max_w);
        let us = words_up_to(2, max_u);
        for xi in words_up_to(alphabet.len(), max_xi) {
            for w in &ws {
                let head = apply_state_word(&u, &xi, w)?;
                let moved = apply_state_word(&d, w, &xi)?;
                for tail in &us {
                    r.checks += 1;
                    let whole: Vec<usize> = w.iter().chain(tail).copied().collect();
                    let lhs = apply_state_word(&u, &xi, &whole)?;
                    let mut rhs = head.clone();
                    rhs.extend(apply_state_word(&u, &moved, tail)?);
                    if lhs != rhs {
                        r.fail(
                            format!(
                                "U_ξ(wu) = U_ξ(w) U_{{D_w(ξ)}}(u) for ξ = {}",
                                pretty(&alphabet, &xi)
                            ),
                            format!(
                                "w = {}, u = {}: {} vs {}",
                                binary_word(w),
                                binary_word(tail),
                                binary_word(&lhs),
                                binary_word(&rhs)
                            ),
                            u.name(),
                        );
                    }
                }
            }
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

/// `U_ξ` fixes both one-letter words iff `χ(ξ) = 1`, for all `|ξ| ≤ max_len`.
pub fn check_chi_criterion(scope: &Scope, max_len: usize) -> Result<VerificationReport> {
    scope.require_positive()?;
    let started = Instant::now();
    let mut r = VerificationReport::new("chi");
    scope_param(&mut r, scope);
    r.param("max_len", max_len);
    let alphabet = scope.signed_alphabet()?;
    let u = make_u(scope)?;
    let outcome = (|| {
        for xi in words_up_to(alphabet.len(), max_len) {
            r.checks += 1;
            let fixes =
                apply_state_word(&u, &xi, &[0])? == [0] && apply_state_word(&u, &xi, &[1])? == [1];
            let c = chi(&alphabet, &StateWord(xi.clone()));
            if fixes != (c == 1) {
                r.fail(
                    format!(
                        "U_ξ trivial on level 1 iff χ(ξ) = 1, ξ = {}",
                        pretty(&alphabet, &xi)
                    ),
                    format!("χ = {c}, fixes level 1 = {fixes}"),
                    u.name(),
                );
            }
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

/// Compares the orbit partition on each level `k ≤ max_len` with the
/// predicted classes. Orbits of reducible words (or double-letter words) are
/// counted but not asserted.
pub fn check_orbit_classification(
    which: OrbitClass,
    scope: &Scope,
    max_len: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut r = VerificationReport::new("orbits");
    r.param("which", which.name());
    scope_param(&mut r, scope);
    r.param("max_len", max_len);
    let outcome = match which {
        OrbitClass::Pattern | OrbitClass::Marked => {
            irreducible_orbits_into(which, scope, max_len, limits, &mut r)
        }
        OrbitClass::NoDoubleLetter => no_double_letter_into(scope, max_len, limits, &mut r),
    };
    r.finish(started, outcome)
}

fn irreducible_orbits_into(
    which: OrbitClass,
    scope: &Scope,
    max_len: usize,
    limits: &Limits,
    r: &mut VerificationReport,
) -> Result<()> {
    scope.require_positive()?;
    if which == OrbitClass::Pattern && !scope.is_single_component() {
        return Err(Error::InvalidParameter(
            "unmarked patterns classify orbits only for a single component; use marked".into(),
        ));
    }
    let alphabet = scope.signed_alphabet()?;
    let gs = GeneratorSystem::from_machine(make_d(scope)?)?;
    for k in 0..=max_len {
        let orbits = orbits_of_level(&gs, k, limits)?;
        let orbit_of: HashMap<&[usize], usize> = orbits
            .iter()
            .enumerate()
            .flat_map(|(i, o)| o.iter().map(move |w| (w.as_slice(), i)))
            .collect();
        let classes: Vec<(String, Vec<StateWord>)> = match which {
            OrbitClass::Pattern => Pattern::all_of_length(k)
                .into_iter()
                .map(|p| (p.to_string(), enumerate_by_pattern(&alphabet, &p).collect()))
                .collect(),
            _ => MarkedPattern::all_of_length(alphabet.components(), k)
                .into_iter()
                .map(|p| {
                    (
                        p.to_string(),
                        enumerate_by_marked_pattern(&alphabet, &p).collect(),
                    )
                })
                .collect(),
        };
        let mut covered = vec![false; orbits.len()];
        for (label, class) in &classes {
            r.checks += 1;
            let Some(first) = class.first() else {
                r.fail(
                    format!("class {label} nonempty"),
                    "no irreducible word",
                    gs.name(),
                );
                continue;
            };
            let id = orbit_of[first.0.as_slice()];
            covered[id] = true;
            let orbit = &orbits[id];
            if orbit.len() != class.len() || class.iter().any(|w| orbit_of[w.0.as_slice()] != id) {
                let stray = orbit
                    .iter()
                    .find(|w| {
                        let w = StateWord((*w).clone());
                        let same = match which {
                            OrbitClass::Pattern => pattern_of(&alphabet, &w).to_string() == *label,
                            _ => marked_pattern_of(&alphabet, &w).to_string() == *label,
                        };
                        !same || !crate::words::is_freely_irreducible(&alphabet, &w)
                    })
                    .map(|w| pretty(&alphabet, w))
                    .unwrap_or_else(|| "class split across orbits".into());
                r.fail(
                    format!("irreducible words of {label} form one orbit (k = {k})"),
                    format!(
                        "orbit size {} vs class size {}; {stray}",
                        orbit.len(),
                        class.len()
                    ),
                    gs.name(),
                );
            }
        }
        let other: Vec<usize> = orbits
            .iter()
            .zip(&covered)
            .filter(|(_, &c)| !c)
            .map(|(o, _)| o.len())
            .collect();
        r.notes.push(format!(
            "k = {k}: {} orbits; {} irreducible classes; {} other orbits of total size {}",
            orbits.len(),
            classes.len(),
            other.len(),
            other.iter().sum::<usize>()
        ));
        r.stat_add("orbits", orbits.len() as u64);
    }
    Ok(())
}

fn no_double_letter_into(
    scope: &Scope,
    max_len: usize,
    limits: &Limits,
    r: &mut VerificationReport,
) -> Result<()> {
    let dual = make_dual_of(scope, Kind::Bellaterra)?;
    let m = dual.alphabet().len();
    let gs = GeneratorSystem::from_machine(dual)?;
    for k in 0..=max_len {
        r.checks += 1;
        let expected = if k == 0 {
            1
        } else {
            m * (m - 1).pow(k as u32 - 1)
        };
        let orbits = orbits_of_level(&gs, k, limits)?;
        let free: Vec<&Vec<Vec<usize>>> = orbits
            .iter()
            .filter(|o| o.iter().any(|w| !has_double_letter(w)))
            .collect();
        let ok = free.len() == 1
            && free[0].len() == expected
            && free[0].iter().all(|w| !has_double_letter(w));
        if !ok {
            let sizes: Vec<usize> = free.iter().map(|o| o.len()).collect();
            r.fail(
                format!("no-double-letter words of length {k} form one orbit of size {expected}"),
                format!("orbits meeting them have sizes {sizes:?}"),
                gs.name(),
            );
        }
        r.notes.push(format!(
            "k = {k}: {} orbits; no-double-letter orbit size {}",
            orbits.len(),
            free.first().map_or(0, |o| o.len())
        ));
    }
    Ok(())
}

/// The dual of `A^(n)` acts transitively on every level `k ≤ max_level` of
/// the tree of positive state words.
pub fn check_level_transitivity(
    scope: &Scope,
    max_level: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    scope.require_positive()?;
    if !scope.is_single_component() {
        return Err(Error::InvalidParameter(
            "transitivity is stated for a single n".into(),
        ));
    }
    let started = Instant::now();
    let mut r = VerificationReport::new("transitivity");
    scope_param(&mut r, scope);
    r.param("max_level", max_level);
    let gs = GeneratorSystem::from_machine(make_dual_of(scope, Kind::Aleshin)?)?;
    let outcome = (|| {
        let m = gs.alphabet().len();
        for k in 0..=max_level {
            r.checks += 1;
            let size = m.pow(k as u32);
            if is_level_transitive(&gs, k, limits)? {
                r.notes.push(format!("level {k}: one orbit of size {size}"));
            } else {
                r.fail(
                    format!("transitive on level {k}"),
                    format!("orbit of {} is not the level", "0".repeat(k)),
                    gs.name(),
                );
            }
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

fn first_level_moves(u: &MealyMachine, xi: &[usize]) -> Result<bool> {
    Ok(apply_state_word(u, xi, &[0])? != [0])
}

/// For each (marked) pattern of length `1..=max_len`, finds freely
/// irreducible words of that pattern with opposite `χ` and one whose `U_ξ`
/// moves the first level. Single components use patterns; unions use
/// marked patterns and search only the first-level witness.
pub fn check_pattern_witnesses(scope: &Scope, max_len: usize) -> Result<VerificationReport> {
    scope.require_positive()?;
    let started = Instant::now();
    let mut r = VerificationReport::new("witnesses");
    scope_param(&mut r, scope);
    r.param("max_len", max_len);
    let alphabet = scope.signed_alphabet()?;
    let u = make_u(scope)?;
    let outcome = (|| {
        for k in 1..=max_len {
            if scope.is_single_component() {
                for p in Pattern::all_of_length(k) {
                    r.checks += 1;
                    let (mut plus, mut minus, mut moving) = (None, None, None);
                    for xi in enumerate_by_pattern(&alphabet, &p) {
                        let c = chi(&alphabet, &xi);
                        if c == 1 && plus.is_none() {
                            plus = Some(xi.clone());
                        }
                        if c == -1 && minus.is_none() {
                            minus = Some(xi.clone());
                        }
                        if moving.is_none() && first_level_moves(&u, &xi.0)? {
                            moving = Some(xi.clone());
                        }
                        if plus.is_some() && minus.is_some() && moving.is_some() {
                            break;
                        }
                    }
                    match (&plus, &minus, &moving) {
                        (Some(x1), Some(x2), Some(x3)) => r.notes.push(format!(
                            "{p}: χ=+1 {}, χ=−1 {}, moves level 1 {}",
                            alphabet.pretty_word(x1),
                            alphabet.pretty_word(x2),
                            alphabet.pretty_word(x3)
                        )),
                        _ => r.fail(
                            format!("witnesses for pattern {p}"),
                            format!(
                                "χ=+1 found: {}, χ=−1 found: {}, first-level mover found: {}",
                                plus.is_some(),
                                minus.is_some(),
                                moving.is_some()
                            ),
                            u.name(),
                        ),
                    }
                }
            } else {
                for p in MarkedPattern::all_of_length(alphabet.components(), k) {
                    r.checks += 1;
                    let mut found = None;
                    for xi in enumerate_by_marked_pattern(&alphabet, &p) {
                        if first_level_moves(&u, &xi.0)? {
                            found = Some(xi);
                            break;
                        }
                    }
                    match found {
                        Some(xi) => r
                            .notes
                            .push(format!("{p}: moves level 1 {}", alphabet.pretty_word(&xi))),
                        None => r.fail(
                            format!("witness for marked pattern {p}"),
                            "none found",
                            u.name(),
                        ),
                    }
                }
            }
        }
        Ok(())
    })();
    r.finish(started, outcome)
}

/// Parameters shared by [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub scope: Scope,
    pub max_len: Option<usize>,
    pub max_level: Option<usize>,
    pub which: Option<OrbitClass>,
    pub limits: Limits,
}

/// Dispatches a suite by name with defaults for unspecified bounds.
pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<VerificationReport> {
    let scope = &p.scope;
    match suite {
        Suite::Freeness => check_freeness(
            scope,
            p.max_len.unwrap_or_else(|| default_max_len(scope)),
            &p.limits,
        ),
        Suite::FreeProduct => check_free_product(scope, p.max_len.unwrap_or(8), &p.limits),
        Suite::Identities => check_identities(scope, &p.limits),
        Suite::Duality => {
            let l = p.max_len.unwrap_or(3);
            check_duality(scope, l, l, l)
        }
        Suite::Chi => check_chi_criterion(scope, p.max_len.unwrap_or(6)),
        Suite::Orbits => {
            let which = p.which.unwrap_or(if scope.is_single_component() {
                OrbitClass::Pattern
            } else {
                OrbitClass::Marked
            });
            check_orbit_classification(which, scope, p.max_len.unwrap_or(4), &p.limits)
        }
        Suite::Transitivity => {
            check_level_transitivity(scope, p.max_level.unwrap_or(DEFAULT_MAX_LEVEL), &p.limits)
        }
        Suite::Witnesses => check_pattern_witnesses(scope, p.max_len.unwrap_or(6)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn freeness_small() {
        let r = check_freeness(&Scope::Classic, 3, &lim()).unwrap();
        assert_eq!(r.status(), Status::Pass, "{}", r.to_text(false));
        // 6 + 30 + 150 irreducible words
        assert_eq!(r.checks, 186);
        assert!(r.stats["max_witness_depth"] >= 1);
    }

    #[test]
    fn freeness_is_prefix_monotone() {
        let short = check_freeness(&Scope::single(2), 2, &lim()).unwrap();
        let long = check_freeness(&Scope::single(2), 3, &lim()).unwrap();
        assert!(long.notes.starts_with(&short.notes));
        assert!(short.passed && long.passed);
    }

    #[test]
    fn freeness_cap_is_incomplete() {
        let tight = Limits {
            max_pairs: 1,
            ..Limits::default()
        };
        let r = check_freeness(&Scope::Classic, 3, &tight).unwrap();
        assert_eq!(r.status(), Status::Incomplete);
        assert!(r.passed);
    }

    #[test]
    fn identities_hold() {
        for scope in [
            Scope::Classic,
            Scope::single(2),
            Scope::union([1, 2]).unwrap(),
        ] {
            let r = check_identities(&scope, &lim()).unwrap();
            assert_eq!(r.status(), Status::Pass, "{}", r.to_text(false));
        }
    }

    #[test]
    fn free_product_small() {
        let r = check_free_product(&Scope::Classic, 4, &lim()).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.checks, 3 + 3 + 6 + 12 + 24);
        assert!(
            check_free_product(&Scope::single(0), 1, &lim())
                .unwrap()
                .passed
        );
    }

    #[test]
    fn duality_counts() {
        let r = check_duality(&Scope::Classic, 2, 2, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.checks, 43 * 7 * 7);
    }

    #[test]
    fn orbit_suites() {
        let r =
            check_orbit_classification(OrbitClass::Pattern, &Scope::Classic, 3, &lim()).unwrap();
        assert_eq!(r.status(), Status::Pass, "{}", r.to_text(false));
        let r = check_orbit_classification(OrbitClass::NoDoubleLetter, &Scope::Classic, 4, &lim())
            .unwrap();
        assert_eq!(r.status(), Status::Pass, "{}", r.to_text(false));
        assert!(check_orbit_classification(
            OrbitClass::Pattern,
            &Scope::union([1, 2]).unwrap(),
            1,
            &lim()
        )
        .is_err());
    }

    #[test]
    fn dual_of_aleshin_has_one_orbit_on_level_two() {
        // the dual of A is transitive, so no-double-letter words are not an orbit
        let gs_scope = Scope::Classic;
        let dual = make_dual_of(&gs_scope, Kind::Aleshin).unwrap();
        let gs = GeneratorSystem::from_machine(dual).unwrap();
        let orbits = orbits_of_level(&gs, 2, &lim()).unwrap();
        assert_eq!(orbits.len(), 1);
    }

    #[test]
    fn report_text_is_deterministic() {
        let a = check_chi_criterion(&Scope::Classic, 3).unwrap();
        let b = check_chi_criterion(&Scope::Classic, 3).unwrap();
        assert_eq!(a.to_text(false), b.to_text(false));
        assert!(a.to_text(false).ends_with("status pass\n"));
        assert_eq!(a.checks, 1 + 6 + 36 + 216);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(default_max_len(&Scope::single(1)), 5);
        assert_eq!(default_max_len(&Scope::single(3)), 4);
        assert_eq!(default_max_len(&Scope::union([1, 2]).unwrap()), 3);
    }
}
