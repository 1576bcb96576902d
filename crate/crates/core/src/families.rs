//! Constructors for the Aleshin-type automata `A^(n)`, the Bellaterra-type
//! automata `B^(n)` (including the one-state `B^(0)`), their disjoint
//! unions, the machines `I`, `U`, `D`, `E` derived from them, and the
//! letter-permuting machines `π_τ`.
//!
//! State names are canonical: `a.n`, `b.n`, `c.n`, `q.n.i`, with inverse
//! states suffixed `'`. The classic three-state automata use `a`, `b`, `c`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::{Alphabet, MealyMachine, PointedMachine};
use crate::transforms::{disjoint_union, dual_named, inverse_automaton};
use crate::words::{BaseState, Role, SignedAlphabet};

/// Which constituent automata a construction ranges over.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Scope {
    /// The three-state automaton with states `a`, `b`, `c` (same tables as `n = 1`).
    Classic,
    /// Disjoint union over a nonempty set of indices `n`; `{n}` is `A^(n)`.
    Union(BTreeSet<u32>),
}

impl Scope {
    pub fn classic() -> Self {
        Scope::Classic
    }

    pub fn single(n: u32) -> Self {
        Scope::Union(BTreeSet::from([n]))
    }

    pub fn union<I: IntoIterator<Item = u32>>(ns: I) -> Result<Self> {
        let set: BTreeSet<u32> = ns.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidParameter(
                "index set N must be nonempty".into(),
            ));
        }
        Ok(Scope::Union(set))
    }

    /// The indices, with `Classic` reported as `{1}`.
    pub fn indices(&self) -> BTreeSet<u32> {
        match self {
            Scope::Classic => BTreeSet::from([1]),
            Scope::Union(s) => s.clone(),
        }
    }

    pub fn contains_zero(&self) -> bool {
        matches!(self, Scope::Union(s) if s.contains(&0))
    }

    pub fn is_single_component(&self) -> bool {
        self.indices().len() == 1
    }

    /// Aleshin-type constructions need every index positive.
    pub fn require_positive(&self) -> Result<()> {
        if let Scope::Union(s) = self {
            if s.is_empty() {
                return Err(Error::InvalidParameter(
                    "index set N must be nonempty".into(),
                ));
            }
            if s.contains(&0) {
                return Err(Error::InvalidParameter(
                    "index 0 exists only for the Bellaterra series".into(),
                ));
            }
        }
        Ok(())
    }

    /// The positive part of the scope (drops the index 0).
    pub fn positive_part(&self) -> Option<Scope> {
        match self {
            Scope::Classic => Some(Scope::Classic),
            Scope::Union(s) => {
                let rest: BTreeSet<u32> = s.iter().copied().filter(|&n| n > 0).collect();
                (!rest.is_empty()).then_some(Scope::Union(rest))
            }
        }
    }

    /// Base states in canonical order: per index ascending, `a, b, c, q_1, …`.
    pub fn base_states(&self) -> Vec<BaseState> {
        match self {
            Scope::Classic => vec![
                BaseState {
                    name: "a".into(),
                    component: 1,
                    role: Role::A,
                },
                BaseState {
                    name: "b".into(),
                    component: 1,
                    role: Role::B,
                },
                BaseState {
                    name: "c".into(),
                    component: 1,
                    role: Role::C,
                },
            ],
            Scope::Union(s) => s
                .iter()
                .flat_map(|&n| {
                    if n == 0 {
                        return vec![BaseState {
                            name: "c.0".into(),
                            component: 0,
                            role: Role::C,
                        }];
                    }
                    let mut v = vec![
                        BaseState {
                            name: format!("a.{n}"),
                            component: n,
                            role: Role::A,
                        },
                        BaseState {
                            name: format!("b.{n}"),
                            component: n,
                            role: Role::B,
                        },
                        BaseState {
                            name: format!("c.{n}"),
                            component: n,
                            role: Role::C,
                        },
                    ];
                    v.extend((1..=2 * n - 2).map(|i| BaseState {
                        name: format!("q.{n}.{i}"),
                        component: n,
                        role: Role::Chain(i),
                    }));
                    v
                })
                .collect(),
        }
    }

    pub fn signed_alphabet(&self) -> Result<SignedAlphabet> {
        self.require_positive()?;
        SignedAlphabet::new(self.base_states())
    }

    /// Suffix used in machine names: empty, `(n)`, or `({n1,n2})`.
    fn suffix(&self) -> String {
        match self {
            Scope::Classic => String::new(),
            Scope::Union(s) if s.len() == 1 => format!("({})", s.iter().next().unwrap()),
            Scope::Union(s) => format!(
                "({{{}}})",
                s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Classic => write!(f, "classic"),
            Scope::Union(s) => write!(
                f,
                "{{{}}}",
                s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// Aleshin or Bellaterra type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Aleshin,
    Bellaterra,
}

/// A bijection of an ordered symbol list, stored as an index array:
/// `apply(i)` is the image of symbol `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    domain: Vec<String>,
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(domain: Vec<String>) -> Self {
        let map = (0..domain.len()).collect();
        Permutation { domain, map }
    }

    pub fn from_mapping(domain: Vec<String>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(Error::NotAPermutation(
                "mapping length differs from domain".into(),
            ));
        }
        let mut hit = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || std::mem::replace(&mut hit[i], true) {
                return Err(Error::NotAPermutation(format!(
                    "image {i} repeated or out of range"
                )));
            }
        }
        Ok(Permutation { domain, map })
    }

    /// Builds from disjoint cycles written by symbol name; `(x y z)` sends
    /// `x ↦ y ↦ z ↦ x`.
    pub fn from_cycles<C, S>(domain: Vec<String>, cycles: C) -> Result<Self>
    where
        C: IntoIterator,
        C::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut map: Vec<usize> = (0..domain.len()).collect();
        let mut touched = vec![false; domain.len()];
        for cycle in cycles {
            let idx = cycle
                .into_iter()
                .map(|s| {
                    let s = s.as_ref();
                    domain
                        .iter()
                        .position(|d| d == s)
                        .ok_or_else(|| Error::UnknownState(s.to_owned()))
                })
                .collect::<Result<Vec<_>>>()?;
            for (j, &i) in idx.iter().enumerate() {
                if std::mem::replace(&mut touched[i], true) {
                    return Err(Error::NotAPermutation(format!(
                        "`{}` appears in more than one cycle position",
                        domain[i]
                    )));
                }
                map[i] = idx[(j + 1) % idx.len()];
            }
        }
        Ok(Permutation { domain, map })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: `other` is applied first, matching the product `τσ`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.domain, other.domain,
            "permutations over different domains"
        );
        Permutation {
            domain: self.domain.clone(),
            map: other.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation {
            domain: self.domain.clone(),
            map,
        }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        (0..e).fold(Permutation::identity(self.domain.clone()), |acc, _| {
            acc.compose(self)
        })
    }

    /// Cycle notation, fixed points omitted; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let mut seen = vec![false; self.map.len()];
        let mut parts = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(self.domain[i].as_str());
                i = self.map[i];
            }
            parts.push(format!("({})", cycle.join(" ")));
        }
        if parts.is_empty() {
            "()".into()
        } else {
            parts.concat()
        }
    }
}

/// The chain `a, b, c, q_1, …, q_{2n−2}` of component `n` restricted to the
/// roles selected by `keep`, as a cycle of names.
fn component_cycle(alphabet: &SignedAlphabet, n: u32, keep: impl Fn(Role) -> bool) -> Vec<String> {
    alphabet
        .base()
        .iter()
        .filter(|b| b.component == n && keep(b.role))
        .map(|b| b.name.clone())
        .collect()
}

fn product_of_cycles(alphabet: &SignedAlphabet, keep: impl Fn(Role) -> bool + Copy) -> Permutation {
    let cycles: Vec<Vec<String>> = alphabet
        .components()
        .iter()
        .map(|&n| component_cycle(alphabet, n, keep))
        .collect();
    Permutation::from_cycles(alphabet.base_names(), cycles).expect("disjoint cycles")
}

/// Named permutations of the base states used by the machine identities.
pub mod perms {
    use super::*;

    /// `τ0 = Π (a_n c_n q_{n1} … q_{n,2n−2})`.
    pub fn tau0(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |r| r != Role::B)
    }

    /// `τ1 = Π (a_n b_n c_n q_{n1} … q_{n,2n−2})`.
    pub fn tau1(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |_| true)
    }

    /// `Π (a_n b_n)`.
    pub fn swap_ab(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |r| matches!(r, Role::A | Role::B))
    }

    /// `Π (b_n c_n)`.
    pub fn swap_bc(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |r| matches!(r, Role::B | Role::C))
    }

    /// `Π (a_n c_n)`.
    pub fn swap_ac(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |r| matches!(r, Role::A | Role::C))
    }

    /// `Π (c_n q_{n1} … q_{n,2n−2})`, of odd order `2n − 1` per component.
    pub fn chain_c(alphabet: &SignedAlphabet) -> Permutation {
        product_of_cycles(alphabet, |r| matches!(r, Role::C | Role::Chain(_)))
    }
}

/// Builds `A^(scope)` (Aleshin kind) or `B^(scope)` (Bellaterra kind).
///
/// Transitions: `a → c` on 0 and `→ b` on 1; `b → b` on 0 and `→ c` on 1;
/// `c = q_0 → q_1 → … → q_{2n−2} → a` on both letters. Aleshin outputs flip
/// exactly at `a` and `b`; Bellaterra outputs are the complement. Index 0
/// is the one-state flip `c.0`.
pub fn make_family(scope: &Scope, kind: Kind) -> Result<MealyMachine> {
    if kind == Kind::Aleshin {
        scope.require_positive()?;
    }
    let base = scope.base_states();
    let states: Vec<String> = base.iter().map(|b| b.name.clone()).collect();
    let find = |component: u32, role: Role| {
        base.iter()
            .position(|b| b.component == component && b.role == role)
            .expect("role present")
    };
    let letter = if kind == Kind::Aleshin { "A" } else { "B" };
    let name = format!("{letter}{}", scope.suffix());
    MealyMachine::from_fn(name, Alphabet::binary(), states, |q, x| {
        let b = &base[q];
        let n = b.component;
        let (next, flips) = match b.role {
            _ if n == 0 => (q, false),
            Role::A => (
                if x == 0 {
                    find(n, Role::C)
                } else {
                    find(n, Role::B)
                },
                true,
            ),
            Role::B => (
                if x == 0 {
                    find(n, Role::B)
                } else {
                    find(n, Role::C)
                },
                true,
            ),
            Role::C if n == 1 => (find(n, Role::A), false),
            Role::C => (find(n, Role::Chain(1)), false),
            Role::Chain(i) if i == 2 * n - 2 => (find(n, Role::A), false),
            Role::Chain(i) => (find(n, Role::Chain(i + 1)), false),
        };
        // Bellaterra flips exactly where Aleshin does not; B^(0) always flips
        let flips = match kind {
            Kind::Aleshin => flips,
            Kind::Bellaterra => !flips,
        };
        (next, if flips { 1 - x } else { x })
    })
}

/// The Aleshin automaton `A` with states `a`, `b`, `c`.
pub fn aleshin() -> MealyMachine {
    make_family(&Scope::Classic, Kind::Aleshin).expect("classic scope")
}

/// The Bellaterra automaton `B` with states `a`, `b`, `c`.
pub fn bellaterra() -> MealyMachine {
    make_family(&Scope::Classic, Kind::Bellaterra).expect("classic scope")
}

/// `A^(n)`, `n ≥ 1`.
pub fn make_aleshin(n: u32) -> Result<MealyMachine> {
    if n < 1 {
        return Err(Error::InvalidParameter("A^(n) needs n ≥ 1".into()));
    }
    make_family(&Scope::single(n), Kind::Aleshin)
}

/// `B^(n)`, `n ≥ 0`.
pub fn make_bellaterra(n: u32) -> Result<MealyMachine> {
    make_family(&Scope::single(n), Kind::Bellaterra)
}

/// `A^(N)` or `B^(N)`: the disjoint union of the constituents, built from
/// the individual machines.
pub fn make_union_family(ns: &BTreeSet<u32>, kind: Kind) -> Result<MealyMachine> {
    let scope = Scope::union(ns.iter().copied())?;
    let parts = ns
        .iter()
        .map(|&n| match kind {
            Kind::Aleshin => make_aleshin(n),
            Kind::Bellaterra => make_bellaterra(n),
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&MealyMachine> = parts.iter().collect();
    let letter = if kind == Kind::Aleshin { "A" } else { "B" };
    disjoint_union(format!("{letter}{}", scope.suffix()), &refs)
}

/// The transformation `h`: `B^(0)` pointed at `c.0`, which swaps 0 and 1.
pub fn h() -> PointedMachine {
    Arc::new(make_bellaterra(0).expect("n = 0 is valid")).pointed(0)
}

/// `I`: the inverse of `A^(scope)` with every state `q` renamed `q'`.
pub fn make_inverse_series(scope: &Scope) -> Result<MealyMachine> {
    let a = make_family(scope, Kind::Aleshin)?;
    Ok(inverse_automaton(&a)?
        .rename_states(|s| format!("{s}'"))?
        .with_name(format!("I{}", scope.suffix())))
}

/// `U = A ⊔ I`: states `Q^±` in [`SignedAlphabet`] order, so `U` pointed at
/// `q'` computes the inverse of `A` pointed at `q`.
pub fn make_u(scope: &Scope) -> Result<MealyMachine> {
    let a = make_family(scope, Kind::Aleshin)?;
    let i = make_inverse_series(scope)?;
    disjoint_union(format!("U{}", scope.suffix()), &[&a, &i])
}

/// `D`: the dual of `U`, acting on words over `Q^±` with states `0`, `1`.
pub fn make_d(scope: &Scope) -> Result<MealyMachine> {
    let u = make_u(scope)?;
    Ok(dual_named(&u, format!("D{}", scope.suffix())))
}

/// The dual of `A^(scope)` or `B^(scope)` itself, acting on positive words.
pub fn make_dual_of(scope: &Scope, kind: Kind) -> Result<MealyMachine> {
    let m = make_family(scope, kind)?;
    let prefix = if kind == Kind::Aleshin { "D+" } else { "Dhat" };
    Ok(dual_named(&m, format!("{prefix}{}", scope.suffix())))
}

/// `E`: same alphabet, states and transitions as `D`; outputs are
/// `σ0 = Π (a_n⁻¹ b_n⁻¹)` in state 0 and `σ1 = Π (a_n b_n)` in state 1.
pub fn make_e(scope: &Scope) -> Result<MealyMachine> {
    let d = make_d(scope)?;
    let alphabet = scope.signed_alphabet()?;
    let swap = perms::swap_ab(&alphabet);
    MealyMachine::from_fn(
        format!("E{}", scope.suffix()),
        d.alphabet().clone(),
        d.states().to_vec(),
        |state, letter| {
            let base = alphabet.base_of(letter);
            let sign = alphabet.sign_of(letter);
            let swaps_here = (state == 0) == (sign == crate::words::Sign::Neg);
            let out = if swaps_here {
                alphabet.letter(swap.apply(base), sign)
            } else {
                letter
            };
            (d.next(state, letter), out)
        },
    )
}

/// `π_τ`: the one-state machine over `Q^±` sending `q ↦ τ(q)` and
/// `q⁻¹ ↦ τ(q)⁻¹`.
pub fn make_pi(alphabet: &SignedAlphabet, tau: &Permutation) -> Result<PointedMachine> {
    if tau.domain() != alphabet.base_names().as_slice() {
        return Err(Error::InvalidParameter(
            "permutation domain must be the base states of the alphabet".into(),
        ));
    }
    let m = MealyMachine::from_fn(
        format!("pi{}", tau.to_cycle_string()),
        alphabet.to_alphabet(),
        vec!["pi".into()],
        |_, letter| {
            let image = tau.apply(alphabet.base_of(letter));
            (0, alphabet.letter(image, alphabet.sign_of(letter)))
        },
    )?;
    Ok(Arc::new(m).pointed(0))
}

/// Number of states of `A^(N)` / `B^(N)`: `Σ (2n + 1)` with `n = 0` giving 1.
pub fn expected_state_count(ns: &BTreeSet<u32>) -> usize {
    ns.iter()
        .map(|&n| if n == 0 { 1 } else { 2 * n as usize + 1 })
        .sum()
}
