//! Inverse, reverse, and dual automata, disjoint unions, and the
//! invertible / reversible / bi-reversible classifiers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::{Alphabet, MealyMachine};

/// Position in `Q × X` where a property fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellWitness {
    pub state: usize,
    pub letter: usize,
}

/// Result of [`classify`].
///
/// Each flag that is `false` has a witness cell: a `(state, letter)` pair
/// whose image under the relevant map collides with an earlier cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomatonClassification {
    pub invertible: bool,
    pub reversible: bool,
    pub bireversible: bool,
    pub invertible_witness: Option<CellWitness>,
    pub reversible_witness: Option<CellWitness>,
    pub bireversible_witness: Option<CellWitness>,
    /// Empty when the equivalent characterizations through the inverse,
    /// reverse, and dual automata agree with the direct computation.
    pub defects: Vec<String>,
}

/// `ψ(q, ·)` collision, if any: the state whose output map is not a bijection.
fn output_collision(m: &MealyMachine) -> Option<CellWitness> {
    let k = m.alphabet().len();
    for q in 0..m.num_states() {
        let mut hit = vec![false; k];
        for x in 0..k {
            let y = m.out(q, x);
            if std::mem::replace(&mut hit[y], true) {
                return Some(CellWitness {
                    state: q,
                    letter: x,
                });
            }
        }
    }
    None
}

/// `φ(·, x)` collision, if any: the letter whose transition map is not a bijection.
fn transition_collision(m: &MealyMachine) -> Option<CellWitness> {
    let n = m.num_states();
    for x in 0..m.alphabet().len() {
        let mut hit = vec![false; n];
        for q in 0..n {
            let p = m.next(q, x);
            if std::mem::replace(&mut hit[p], true) {
                return Some(CellWitness {
                    state: q,
                    letter: x,
                });
            }
        }
    }
    None
}

fn joint_collision(m: &MealyMachine) -> Option<CellWitness> {
    let k = m.alphabet().len();
    let mut hit = vec![false; m.num_states() * k];
    for q in 0..m.num_states() {
        for x in 0..k {
            let cell = m.next(q, x) * k + m.out(q, x);
            if std::mem::replace(&mut hit[cell], true) {
                return Some(CellWitness {
                    state: q,
                    letter: x,
                });
            }
        }
    }
    None
}

pub fn is_invertible(m: &MealyMachine) -> bool {
    output_collision(m).is_none()
}

pub fn is_reversible(m: &MealyMachine) -> bool {
    transition_collision(m).is_none()
}

/// The automaton with every label `x|y` swapped to `y|x`. Pointed at `q` it
/// computes the inverse of `m` pointed at `q`. State names are preserved.
pub fn inverse_automaton(m: &MealyMachine) -> Result<MealyMachine> {
    if let Some(w) = output_collision(m) {
        return Err(Error::NotInvertible {
            machine: m.name().to_owned(),
            state: m.state_name(w.state).to_owned(),
        });
    }
    let k = m.alphabet().len();
    let mut next = vec![0; m.num_states() * k];
    let mut out = vec![0; m.num_states() * k];
    for q in 0..m.num_states() {
        for x in 0..k {
            let y = m.out(q, x);
            next[q * k + y] = m.next(q, x);
            out[q * k + y] = x;
        }
    }
    MealyMachine::new(
        format!("inverse({})", m.name()),
        m.alphabet().clone(),
        m.states().to_vec(),
        next,
        out,
    )
}

/// The automaton with every edge of the Moore diagram reversed.
pub fn reverse_automaton(m: &MealyMachine) -> Result<MealyMachine> {
    if let Some(w) = transition_collision(m) {
        return Err(Error::NotReversible {
            machine: m.name().to_owned(),
            letter: m.alphabet().name(w.letter).to_owned(),
        });
    }
    let k = m.alphabet().len();
    let mut next = vec![0; m.num_states() * k];
    let mut out = vec![0; m.num_states() * k];
    for q in 0..m.num_states() {
        for x in 0..k {
            let p = m.next(q, x);
            next[p * k + x] = q;
            out[p * k + x] = m.out(q, x);
        }
    }
    MealyMachine::new(
        format!("reverse({})", m.name()),
        m.alphabet().clone(),
        m.states().to_vec(),
        next,
        out,
    )
}

/// Swaps states with letters and transitions with outputs:
/// the dual reads states, its states are the letters of `m`,
/// `next(x, q) = ψ(q, x)` and `out(x, q) = φ(q, x)`.
pub fn dual_automaton(m: &MealyMachine) -> MealyMachine {
    dual_named(m, format!("dual({})", m.name()))
}

pub(crate) fn dual_named(m: &MealyMachine, name: String) -> MealyMachine {
    let alphabet =
        Alphabet::new(m.states().iter().cloned()).expect("state names are valid letters");
    let states = m.alphabet().letters().to_vec();
    MealyMachine::from_fn(name, alphabet, states, |x, q| (m.out(q, x), m.next(q, x)))
        .expect("dual of a valid machine is valid")
}

/// Disjoint union over a shared alphabet. State names must already be
/// pairwise distinct across the constituents.
pub fn disjoint_union(name: impl Into<String>, ms: &[&MealyMachine]) -> Result<MealyMachine> {
    let first = ms
        .first()
        .ok_or_else(|| Error::InvalidParameter("disjoint union of no machines".into()))?;
    if ms.len() == 1 {
        return Ok((*first).clone().with_name(name));
    }
    let alphabet = first.alphabet().clone();
    let k = alphabet.len();
    let mut seen = std::collections::HashSet::new();
    let mut states = Vec::new();
    let mut next = Vec::new();
    let mut out = Vec::new();
    for m in ms {
        alphabet.ensure_same(m.alphabet())?;
        let offset = states.len();
        for s in m.states() {
            if !seen.insert(s.clone()) {
                return Err(Error::StateNameCollision(s.clone()));
            }
            states.push(s.clone());
        }
        for q in 0..m.num_states() {
            for x in 0..k {
                next.push(m.next(q, x) + offset);
                out.push(m.out(q, x));
            }
        }
    }
    MealyMachine::new(name, alphabet, states, next, out)
}

/// Decides the three properties from their definitions, then cross-checks
/// the equivalent characterizations through the derived automata.
pub fn classify(m: &MealyMachine) -> AutomatonClassification {
    let inv_w = output_collision(m);
    let rev_w = transition_collision(m);
    let invertible = inv_w.is_none();
    let reversible = rev_w.is_none();
    let joint_w = joint_collision(m);
    let bireversible = invertible && reversible && joint_w.is_none();
    let bireversible_witness = if bireversible {
        None
    } else {
        joint_w.or(inv_w).or(rev_w)
    };

    let mut defects = Vec::new();
    if invertible && reversible {
        let reverse = reverse_automaton(m).expect("reversible");
        let inverse = inverse_automaton(m).expect("invertible");
        if is_invertible(&reverse) != bireversible {
            defects.push("reverse automaton invertibility disagrees with bi-reversibility".into());
        }
        if is_reversible(&inverse) != bireversible {
            defects.push("inverse automaton reversibility disagrees with bi-reversibility".into());
        }
    }
    if invertible {
        let via_dual = is_invertible(&dual_automaton(m))
            && is_invertible(&dual_automaton(&inverse_automaton(m).expect("invertible")));
        if via_dual != bireversible {
            defects.push("dual characterization disagrees with bi-reversibility".into());
        }
    }
    if is_invertible(&dual_automaton(m)) != reversible {
        defects.push("dual invertibility disagrees with reversibility".into());
    }

    AutomatonClassification {
        invertible,
        reversible,
        bireversible,
        invertible_witness: inv_w,
        reversible_witness: rev_w,
        bireversible_witness,
        defects,
    }
}

/// Canonical form of the part of `m` reachable from `root`: states are
/// renumbered in BFS order over letters `0..k`. Two pointed machines over the
/// same alphabet are isomorphic iff their canonical forms coincide.
pub fn canonical_form(m: &MealyMachine, root: usize) -> (Vec<usize>, Vec<usize>) {
    let k = m.alphabet().len();
    let order = m.reachable_from(root);
    let mut rank = vec![usize::MAX; m.num_states()];
    for (i, &q) in order.iter().enumerate() {
        rank[q] = i;
    }
    let mut next = Vec::with_capacity(order.len() * k);
    let mut out = Vec::with_capacity(order.len() * k);
    for &q in &order {
        for x in 0..k {
            next.push(rank[m.next(q, x)]);
            out.push(m.out(q, x));
        }
    }
    (next, out)
}

/// A state bijection `f` with `f(φ₁(q, x)) = φ₂(f(q), x)` and
/// `ψ₁(q, x) = ψ₂(f(q), x)`, letters matched by name. Roots of unmapped
/// regions are matched by backtracking; within a region the mapping is forced.
pub fn isomorphism(m1: &MealyMachine, m2: &MealyMachine) -> Option<Vec<usize>> {
    if m1.num_states() != m2.num_states() || m1.alphabet().len() != m2.alphabet().len() {
        return None;
    }
    let letters: Option<Vec<usize>> = m1
        .alphabet()
        .letters()
        .iter()
        .map(|l| m2.alphabet().index(l))
        .collect();
    let letters = letters?;
    let mut map = vec![usize::MAX; m1.num_states()];
    let mut used = vec![false; m2.num_states()];
    if extend(m1, m2, &letters, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    m1: &MealyMachine,
    m2: &MealyMachine,
    letters: &[usize],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(root) = map.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for candidate in 0..m2.num_states() {
        if used[candidate] {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if propagate(m1, m2, letters, root, candidate, map, used)
            && extend(m1, m2, letters, map, used)
        {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

fn propagate(
    m1: &MealyMachine,
    m2: &MealyMachine,
    letters: &[usize],
    root: usize,
    image: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    map[root] = image;
    used[image] = true;
    let mut stack = vec![root];
    while let Some(q) = stack.pop() {
        let fq = map[q];
        for (x, &x2) in letters.iter().enumerate() {
            if letters[m1.out(q, x)] != m2.out(fq, x2) {
                return false;
            }
            let (p, fp) = (m1.next(q, x), m2.next(fq, x2));
            if map[p] == usize::MAX {
                if used[fp] {
                    return false;
                }
                map[p] = fp;
                used[fp] = true;
                stack.push(p);
            } else if map[p] != fp {
                return false;
            }
        }
    }
    true
}
