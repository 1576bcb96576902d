//! `kind`, `kind:n` and `kind:{n1,n2}` family specifications, and lookup of
//! state names typed without their component suffix.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use automaton_groups::families::{
    make_d, make_dual_of, make_e, make_family, make_inverse_series, make_u, Kind,
};
use automaton_groups::transforms::{disjoint_union, inverse_automaton};
use automaton_groups::{MealyMachine, Scope};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Aleshin,
    Bellaterra,
    Inverse,
    U,
    D,
    E,
    DualAleshin,
    DualBellaterra,
}

impl FamilyKind {
    const NAMES: [(&'static str, FamilyKind); 8] = [
        ("aleshin", FamilyKind::Aleshin),
        ("bellaterra", FamilyKind::Bellaterra),
        ("inverse", FamilyKind::Inverse),
        ("u", FamilyKind::U),
        ("d", FamilyKind::D),
        ("e", FamilyKind::E),
        ("dual-aleshin", FamilyKind::DualAleshin),
        ("dual-bellaterra", FamilyKind::DualBellaterra),
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES.iter().find(|(_, k)| *k == self).unwrap().0
    }
}

impl FromStr for FamilyKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::NAMES
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(s))
            .map(|&(_, k)| k)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::NAMES.iter().map(|(n, _)| *n).collect();
                CliError::Usage(format!(
                    "unknown family `{s}` (known: {})",
                    known.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub scope: Scope,
}

/// Parses `n`, `{n1,n2}` or `n1,n2` into a scope.
pub fn parse_scope(text: &str) -> Result<Scope, CliError> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(inner);
    let ns = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("`{text}` is not an index or index set")))
        })
        .collect::<Result<BTreeSet<u32>, _>>()?;
    Ok(Scope::union(ns)?)
}

impl FromStr for FamilySpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (kind, scope) = match s.split_once(':') {
            Some((k, n)) => (k.parse()?, parse_scope(n)?),
            None => (s.parse()?, Scope::Classic),
        };
        Ok(FamilySpec { kind, scope })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.scope {
            Scope::Classic => write!(f, "{}", self.kind.name()),
            scope => write!(f, "{}:{scope}", self.kind.name()),
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<MealyMachine, CliError> {
        let s = &self.scope;
        Ok(match self.kind {
            FamilyKind::Aleshin => make_family(s, Kind::Aleshin)?,
            FamilyKind::Bellaterra => make_family(s, Kind::Bellaterra)?,
            FamilyKind::Inverse => make_inverse_series(s)?,
            FamilyKind::U => make_u(s)?,
            FamilyKind::D => make_d(s)?,
            FamilyKind::E => make_e(s)?,
            FamilyKind::DualAleshin => make_dual_of(s, Kind::Aleshin)?,
            FamilyKind::DualBellaterra => make_dual_of(s, Kind::Bellaterra)?,
        })
    }
}

fn split_inverse(token: &str) -> (&str, bool) {
    if let Some(s) = token.strip_suffix('\'') {
        (s, true)
    } else if let Some(s) = token.strip_suffix("⁻¹") {
        (s, true)
    } else {
        (token, false)
    }
}

/// Finds a state by exact name, or by a prefix ending at a `.`: `a` finds
/// `a.1` and `a'` finds `a.1'` when exactly one state matches.
pub fn resolve_state(names: &[String], token: &str) -> Result<usize, CliError> {
    if let Some(i) = names.iter().position(|s| s == token) {
        return Ok(i);
    }
    let (stem, inverse) = split_inverse(token);
    let candidates: Vec<usize> = names
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            let (s_stem, s_inverse) = split_inverse(s);
            s_inverse == inverse
                && s_stem
                    .strip_prefix(stem)
                    .is_some_and(|rest| rest.starts_with('.'))
        })
        .map(|(i, _)| i)
        .collect();
    match candidates.as_slice() {
        [i] => Ok(*i),
        [] => Err(CliError::Usage(format!("unknown state `{token}`"))),
        many => Err(CliError::Usage(format!(
            "state `{token}` is ambiguous: {}",
            many.iter()
                .map(|&i| names[i].as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// Parses a whitespace-separated state word. A single token that names no
/// state is read letter by letter when every state name is one character.
pub fn parse_state_word(names: &[String], text: &str) -> Result<Vec<usize>, CliError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if let [single] = tokens.as_slice() {
        if resolve_state(names, single).is_err() && names.iter().all(|n| n.chars().count() == 1) {
            return single
                .chars()
                .map(|c| resolve_state(names, &c.to_string()))
                .collect();
        }
    }
    tokens.iter().map(|t| resolve_state(names, t)).collect()
}

/// `m` together with its inverse states, named with a trailing `'`, when
/// the state word uses inverse letters that `m` lacks.
pub fn with_inverses_if_needed(m: MealyMachine, text: &str) -> Result<MealyMachine, CliError> {
    let wants_inverse = text
        .split_whitespace()
        .any(|t| split_inverse(t).1 && resolve_state(m.states(), t).is_err());
    if !wants_inverse {
        return Ok(m);
    }
    let inv = inverse_automaton(&m)?.rename_states(|s| format!("{s}'"))?;
    Ok(disjoint_union(format!("{}±", m.name()), &[&m, &inv])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn specs() {
        let s: FamilySpec = "aleshin:1".parse().unwrap();
        assert_eq!(s.scope, Scope::single(1));
        let s: FamilySpec = "bellaterra:{0,2}".parse().unwrap();
        assert_eq!(s.scope, Scope::union([0, 2]).unwrap());
        assert_eq!(s.to_string(), "bellaterra:{0,2}");
        assert_eq!(
            "aleshin".parse::<FamilySpec>().unwrap().scope,
            Scope::Classic
        );
        assert!("aleshin:0".parse::<FamilySpec>().unwrap().build().is_err());
        assert!("nope:1".parse::<FamilySpec>().is_err());
        assert!("aleshin:x".parse::<FamilySpec>().is_err());
        assert!("aleshin:{}".parse::<FamilySpec>().is_err());
        assert_eq!(
            "u:{1,2}"
                .parse::<FamilySpec>()
                .unwrap()
                .build()
                .unwrap()
                .num_states(),
            16
        );
    }

    #[test]
    fn resolver() {
        let n = names(&["a.1", "b.1", "c.1", "a.1'", "q.2.1"]);
        assert_eq!(resolve_state(&n, "a").unwrap(), 0);
        assert_eq!(resolve_state(&n, "a.1").unwrap(), 0);
        assert_eq!(resolve_state(&n, "a'").unwrap(), 3);
        assert_eq!(resolve_state(&n, "a⁻¹").unwrap(), 3);
        assert_eq!(resolve_state(&n, "q.2").unwrap(), 4);
        assert!(resolve_state(&n, "z").is_err());
        let two = names(&["a.1", "a.2"]);
        assert!(resolve_state(&two, "a").is_err());
        let classic = names(&["a", "b", "c"]);
        assert_eq!(parse_state_word(&classic, "abc").unwrap(), [0, 1, 2]);
        assert_eq!(parse_state_word(&classic, "a b").unwrap(), [0, 1]);
        assert_eq!(parse_state_word(&classic, "").unwrap(), Vec::<usize>::new());
    }
}
