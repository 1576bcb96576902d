//! Mealy machines as dense tables, their action on words, composition, and
//! exact decision of equality for the induced tree transformations.
//!
//! Letters and states are dense indices; names are kept in side tables.
//! A [`PointedMachine`] `t` induces a length-preserving map on words, and
//! composition follows the right-action convention used throughout the
//! crate: in `compose(t1, t2)` the first argument acts first, so the result
//! maps `w` to `t2(t1(w))`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on reachable product states explored by composition and
/// equality decisions.
pub const DEFAULT_MAX_PAIRS: usize = 5_000_000;

/// Default cap on the size of a single orbit or enumerated level.
pub const DEFAULT_MAX_ORBIT: usize = 10_000_000;

/// Resource caps guarding product and orbit explosions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_orbit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: DEFAULT_MAX_PAIRS,
            max_orbit: DEFAULT_MAX_ORBIT,
        }
    }
}

/// A finite ordered alphabet of named letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
        }
        check_names(&letters)?;
        Ok(Alphabet { letters })
    }

    /// The binary alphabet `{0, 1}` the Aleshin and Bellaterra automata act on.
    pub fn binary() -> Self {
        Alphabet {
            letters: vec!["0".into(), "1".into()],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, index: usize) -> &str {
        &self.letters[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn check_letter(&self, index: usize) -> Result<()> {
        if index < self.letters.len() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                index,
                size: self.letters.len(),
            })
        }
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated tokens are always accepted; when
    /// every letter is a single character the word may also be written
    /// without separators (`"0110"`).
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.single_char() {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| self.index(t).ok_or_else(|| Error::UnknownLetter(t.clone())))
            .collect()
    }

    /// Inverse of [`Alphabet::parse_word`].
    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&x| self.letters[x].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.letters.join(" "),
                right: other.letters.join(" "),
            })
        }
    }
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if n.is_empty() {
            return Err(Error::InvalidParameter("names must be nonempty".into()));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// A Mealy automaton: states `Q`, alphabet `X`, transition `Q × X → Q` and
/// output `Q × X → X`, stored row-major by state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    next: Vec<usize>,
    out: Vec<usize>,
}

impl MealyMachine {
    /// Builds a machine from flat tables indexed by `state * |X| + letter`.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: Vec<String>,
        next: Vec<usize>,
        out: Vec<usize>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidMachine(
                "machine needs at least one state".into(),
            ));
        }
        check_names(&states)?;
        let k = alphabet.len();
        let cells = states.len() * k;
        if next.len() != cells || out.len() != cells {
            return Err(Error::InvalidMachine(format!(
                "tables must have {} entries (got {} and {})",
                cells,
                next.len(),
                out.len()
            )));
        }
        if let Some(&bad) = next.iter().find(|&&q| q >= states.len()) {
            return Err(Error::StateOutOfRange {
                index: bad,
                size: states.len(),
            });
        }
        if let Some(&bad) = out.iter().find(|&&y| y >= k) {
            return Err(Error::LetterOutOfRange {
                index: bad,
                size: k,
            });
        }
        Ok(MealyMachine {
            name: name.into(),
            alphabet,
            states,
            next,
            out,
        })
    }

    /// Builds a machine from a closure returning `(next state, output)` for
    /// every `(state, letter)` pair.
    pub fn from_fn<F>(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: Vec<String>,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> (usize, usize),
    {
        let k = alphabet.len();
        let mut next = Vec::with_capacity(states.len() * k);
        let mut out = Vec::with_capacity(states.len() * k);
        for q in 0..states.len() {
            for x in 0..k {
                let (p, y) = f(q, x);
                next.push(p);
                out.push(y);
            }
        }
        MealyMachine::new(name, alphabet, states, next, out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn require_state(&self, name: &str) -> Result<usize> {
        self.state_index(name)
            .ok_or_else(|| Error::UnknownState(name.to_owned()))
    }

    /// Transition table entry. Panics on out-of-range indices.
    #[inline]
    pub fn next(&self, q: usize, x: usize) -> usize {
        self.next[q * self.alphabet.len() + x]
    }

    /// Output table entry. Panics on out-of-range indices.
    #[inline]
    pub fn out(&self, q: usize, x: usize) -> usize {
        self.out[q * self.alphabet.len() + x]
    }

    /// Checked single step: `(φ(q, x), ψ(q, x))`.
    pub fn step(&self, q: usize, x: usize) -> Result<(usize, usize)> {
        if q >= self.states.len() {
            return Err(Error::StateOutOfRange {
                index: q,
                size: self.states.len(),
            });
        }
        self.alphabet.check_letter(x)?;
        Ok((self.next(q, x), self.out(q, x)))
    }

    /// [`MealyMachine::step`] addressed by names.
    pub fn step_named(&self, state: &str, letter: &str) -> Result<(&str, &str)> {
        let q = self.require_state(state)?;
        let x = self
            .alphabet
            .index(letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_owned()))?;
        let (p, y) = self.step(q, x)?;
        Ok((self.state_name(p), self.alphabet.name(y)))
    }

    /// Runs the machine from state `q` over `w`, returning the output word
    /// and the final state.
    pub fn run(&self, q: usize, w: &[usize]) -> Result<(Vec<usize>, usize)> {
        if q >= self.states.len() {
            return Err(Error::StateOutOfRange {
                index: q,
                size: self.states.len(),
            });
        }
        let mut state = q;
        let mut output = Vec::with_capacity(w.len());
        for &x in w {
            self.alphabet.check_letter(x)?;
            output.push(self.out(state, x));
            state = self.next(state, x);
        }
        Ok((output, state))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Renames every state; tables are unchanged.
    pub fn rename_states<F: FnMut(&str) -> String>(&self, mut f: F) -> Result<Self> {
        let states: Vec<String> = self.states.iter().map(|s| f(s)).collect();
        MealyMachine::new(
            self.name.clone(),
            self.alphabet.clone(),
            states,
            self.next.clone(),
            self.out.clone(),
        )
    }

    /// Renames every letter; tables are unchanged.
    pub fn rename_letters<F: FnMut(&str) -> String>(&self, mut f: F) -> Result<Self> {
        let alphabet = Alphabet::new(self.alphabet.letters.iter().map(|l| f(l)))?;
        MealyMachine::new(
            self.name.clone(),
            alphabet,
            self.states.clone(),
            self.next.clone(),
            self.out.clone(),
        )
    }

    /// True when both machines have the same letter and state name sets and
    /// agree on every table entry when entries are compared by name. The
    /// machine name and the storage order are ignored.
    pub fn same_tables(&self, other: &MealyMachine) -> bool {
        if self.states.len() != other.states.len() || self.alphabet.len() != other.alphabet.len() {
            return false;
        }
        let letter_map: Option<Vec<usize>> = self
            .alphabet
            .letters
            .iter()
            .map(|l| other.alphabet.index(l))
            .collect();
        let state_map: Option<Vec<usize>> =
            self.states.iter().map(|s| other.state_index(s)).collect();
        let (Some(lm), Some(sm)) = (letter_map, state_map) else {
            return false;
        };
        (0..self.states.len()).all(|q| {
            (0..self.alphabet.len()).all(|x| {
                sm[self.next(q, x)] == other.next(sm[q], lm[x])
                    && lm[self.out(q, x)] == other.out(sm[q], lm[x])
            })
        })
    }

    /// States reachable from `q`, in BFS order.
    pub fn reachable_from(&self, q: usize) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut order = vec![q];
        seen[q] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for x in 0..self.alphabet.len() {
                let p = self.next(s, x);
                if !seen[p] {
                    seen[p] = true;
                    order.push(p);
                }
            }
        }
        order
    }

    /// The machine pointed at state `q`.
    pub fn pointed(self: &Arc<Self>, q: usize) -> PointedMachine {
        assert!(q < self.states.len(), "state index out of range");
        PointedMachine {
            machine: Arc::clone(self),
            initial: q,
        }
    }

    /// The machine pointed at the state called `name`.
    pub fn pointed_at(self: &Arc<Self>, name: &str) -> Result<PointedMachine> {
        let q = self.require_state(name)?;
        Ok(self.pointed(q))
    }

    /// One pointed machine per state, in state order.
    pub fn all_pointed(self: &Arc<Self>) -> Vec<PointedMachine> {
        (0..self.states.len()).map(|q| self.pointed(q)).collect()
    }
}

impl fmt::Display for MealyMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} over [{}]",
            self.name,
            self.alphabet.letters.join(" ")
        )?;
        for q in 0..self.states.len() {
            write!(f, "  {}:", self.states[q])?;
            for x in 0..self.alphabet.len() {
                write!(
                    f,
                    " {}|{}->{}",
                    self.alphabet.name(x),
                    self.alphabet.name(self.out(q, x)),
                    self.states[self.next(q, x)]
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A machine with a distinguished initial state: an endomorphism of the
/// rooted tree of words over its alphabet.
#[derive(Debug, Clone)]
pub struct PointedMachine {
    machine: Arc<MealyMachine>,
    initial: usize,
}

impl PointedMachine {
    pub fn new(machine: Arc<MealyMachine>, initial: &str) -> Result<Self> {
        machine.pointed_at(initial)
    }

    /// The one-state identity transformation over `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let m = MealyMachine::from_fn("1", alphabet.clone(), vec!["1".into()], |_, x| (0, x))
            .expect("identity machine is well formed");
        Arc::new(m).pointed(0)
    }

    pub fn machine(&self) -> &Arc<MealyMachine> {
        &self.machine
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn initial_name(&self) -> &str {
        self.machine.state_name(self.initial)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    /// Output word of the machine run from the initial state; `|output| = |w|`.
    pub fn apply(&self, w: &[usize]) -> Result<Vec<usize>> {
        self.machine.run(self.initial, w).map(|(out, _)| out)
    }

    /// Splits off the first letter: `apply(xw) = y ++ section.apply(w)`.
    pub fn section(&self, x: usize) -> Result<(usize, PointedMachine)> {
        let (p, y) = self.machine.step(self.initial, x)?;
        Ok((y, self.machine.pointed(p)))
    }

    /// Section along a whole word.
    pub fn section_word(&self, w: &[usize]) -> Result<PointedMachine> {
        let (_, p) = self.machine.run(self.initial, w)?;
        Ok(self.machine.pointed(p))
    }
}

impl fmt::Display for PointedMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.machine.name(), self.initial_name())
    }
}

/// Composition with the first argument acting first: `w ↦ t2(t1(w))`.
///
/// Only product states reachable from the pair of initial states are
/// materialized.
pub fn compose(
    t1: &PointedMachine,
    t2: &PointedMachine,
    limits: &Limits,
) -> Result<PointedMachine> {
    compose_all(&[t1.clone(), t2.clone()], limits)
}

/// Composition of a sequence, leftmost acting first. The empty sequence is
/// rejected because it has no alphabet; use [`PointedMachine::identity`].
pub fn compose_all(ts: &[PointedMachine], limits: &Limits) -> Result<PointedMachine> {
    let first = ts
        .first()
        .ok_or_else(|| Error::InvalidParameter("cannot compose an empty sequence".into()))?;
    let alphabet = first.alphabet().clone();
    for t in &ts[1..] {
        alphabet.ensure_same(t.alphabet())?;
    }
    if ts.len() == 1 {
        return Ok(first.clone());
    }
    let k = alphabet.len();
    let start: Vec<usize> = ts.iter().map(|t| t.initial).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    index.insert(start.clone(), 0);
    tuples.push(start);
    let mut next = Vec::new();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        for x in 0..k {
            let mut letter = x;
            let mut target = Vec::with_capacity(ts.len());
            for (t, &q) in ts.iter().zip(&tuples[i]) {
                let m = &t.machine;
                target.push(m.next(q, letter));
                letter = m.out(q, letter);
            }
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = tuples.len();
                    if id >= limits.max_pairs {
                        return Err(Error::CapExceeded {
                            what: "composition product states",
                            cap: limits.max_pairs,
                            reached: id + 1,
                        });
                    }
                    index.insert(target.clone(), id);
                    tuples.push(target);
                    id
                }
            };
            next.push(id);
            out.push(letter);
        }
        i += 1;
    }
    let states = tuples
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .zip(ts)
                .map(|(&q, t)| t.machine.state_name(q))
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect();
    let name = ts
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ; ");
    let m = MealyMachine::new(format!("({name})"), alphabet, states, next, out)?;
    Ok(Arc::new(m).pointed(0))
}

/// The transformation `A_ξ` for a word `ξ` of state indices of `family`,
/// materialized as a pointed machine. `A_{ξ1 ξ2} = A_{ξ2} ∘ A_{ξ1}`: the
/// first letter acts first. The empty word gives the identity.
pub fn state_word_machine(
    family: &Arc<MealyMachine>,
    xi: &[usize],
    limits: &Limits,
) -> Result<PointedMachine> {
    if xi.is_empty() {
        return Ok(PointedMachine::identity(family.alphabet()));
    }
    let ts = xi
        .iter()
        .map(|&q| {
            if q < family.num_states() {
                Ok(family.pointed(q))
            } else {
                Err(Error::StateOutOfRange {
                    index: q,
                    size: family.num_states(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    compose_all(&ts, limits)
}

/// Applies `A_ξ` to `w` directly, letter of `ξ` by letter.
pub fn apply_state_word(family: &MealyMachine, xi: &[usize], w: &[usize]) -> Result<Vec<usize>> {
    let mut word = w.to_vec();
    for &q in xi {
        word = family.run(q, &word)?.0;
    }
    Ok(word)
}

/// Shortest input word on which `t1` and `t2` produce different outputs, or
/// `None` when they induce the same transformation. Explores every pair of
/// states reachable by reading a common input.
pub fn distinguishing_word(
    t1: &PointedMachine,
    t2: &PointedMachine,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    t1.alphabet().ensure_same(t2.alphabet())?;
    let (m1, m2) = (&t1.machine, &t2.machine);
    let k = m1.alphabet().len();
    let start = (t1.initial, t2.initial);
    // parent pointers: (pair index, letter)
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![start];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    index.insert(start, 0);
    let mut i = 0;
    while i < pairs.len() {
        let (q1, q2) = pairs[i];
        for x in 0..k {
            if m1.out(q1, x) != m2.out(q2, x) {
                let mut word = vec![x];
                let mut cur = i;
                while let Some((p, y)) = parent[cur] {
                    word.push(y);
                    cur = p;
                }
                word.reverse();
                return Ok(Some(word));
            }
            let target = (m1.next(q1, x), m2.next(q2, x));
            if let Entry::Vacant(slot) = index.entry(target) {
                if pairs.len() >= limits.max_pairs {
                    return Err(Error::CapExceeded {
                        what: "equality product pairs",
                        cap: limits.max_pairs,
                        reached: pairs.len() + 1,
                    });
                }
                slot.insert(pairs.len());
                pairs.push(target);
                parent.push(Some((i, x)));
            }
        }
        i += 1;
    }
    Ok(None)
}

/// Exact equality of the induced transformations.
pub fn transformations_equal(
    t1: &PointedMachine,
    t2: &PointedMachine,
    limits: &Limits,
) -> Result<bool> {
    distinguishing_word(t1, t2, limits).map(|w| w.is_none())
}

/// Shortest word moved by `t`, or `None` when `t` is the identity.
pub fn nontrivial_witness(t: &PointedMachine, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let m = &t.machine;
    let k = m.alphabet().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m.num_states()];
    let mut seen = vec![false; m.num_states()];
    let mut queue = VecDeque::from([t.initial]);
    seen[t.initial] = true;
    let mut visited = 1usize;
    while let Some(q) = queue.pop_front() {
        for x in 0..k {
            if m.out(q, x) != x {
                let mut word = vec![x];
                let mut cur = q;
                while let Some((p, y)) = parent[cur] {
                    word.push(y);
                    cur = p;
                }
                word.reverse();
                return Ok(Some(word));
            }
            let p = m.next(q, x);
            if !seen[p] {
                visited += 1;
                if visited > limits.max_pairs {
                    return Err(Error::CapExceeded {
                        what: "identity check states",
                        cap: limits.max_pairs,
                        reached: visited,
                    });
                }
                seen[p] = true;
                parent[p] = Some((q, x));
                queue.push_back(p);
            }
        }
    }
    Ok(None)
}

/// Shortest word moved by the composition of `ts` (leftmost acting first),
/// or `None` when the composition is the identity. Explores state tuples
/// lazily and stops at the first moved word, so no product is built.
pub fn composite_witness(ts: &[PointedMachine], limits: &Limits) -> Result<Option<Vec<usize>>> {
    let Some(first) = ts.first() else {
        return Ok(None);
    };
    for t in &ts[1..] {
        first.alphabet().ensure_same(t.alphabet())?;
    }
    let k = first.alphabet().len();
    let start: Vec<usize> = ts.iter().map(|t| t.initial).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut tuples = vec![start];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut i = 0;
    while i < tuples.len() {
        for x in 0..k {
            let mut letter = x;
            let mut target = Vec::with_capacity(ts.len());
            for (t, &q) in ts.iter().zip(&tuples[i]) {
                target.push(t.machine.next(q, letter));
                letter = t.machine.out(q, letter);
            }
            if letter != x {
                let mut word = vec![x];
                let mut cur = i;
                while let Some((p, y)) = parent[cur] {
                    word.push(y);
                    cur = p;
                }
                word.reverse();
                return Ok(Some(word));
            }
            if !index.contains_key(&target) {
                if tuples.len() >= limits.max_pairs {
                    return Err(Error::CapExceeded {
                        what: "identity check states",
                        cap: limits.max_pairs,
                        reached: tuples.len() + 1,
                    });
                }
                index.insert(target.clone(), tuples.len());
                tuples.push(target);
                parent.push(Some((i, x)));
            }
        }
        i += 1;
    }
    Ok(None)
}

/// [`composite_witness`] for the state word `ξ` of `family`.
pub fn state_word_witness(
    family: &Arc<MealyMachine>,
    xi: &[usize],
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let ts = xi
        .iter()
        .map(|&q| {
            if q < family.num_states() {
                Ok(family.pointed(q))
            } else {
                Err(Error::StateOutOfRange {
                    index: q,
                    size: family.num_states(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    composite_witness(&ts, limits)
}

/// True iff `t` fixes every word.
pub fn is_identity(t: &PointedMachine, limits: &Limits) -> Result<bool> {
    nontrivial_witness(t, limits).map(|w| w.is_none())
}

/// Number of state pairs reachable in the equality product of `t1` and `t2`.
/// Words of this length suffice to separate distinct transformations.
pub fn reachable_pairs(t1: &PointedMachine, t2: &PointedMachine) -> usize {
    let (m1, m2) = (&t1.machine, &t2.machine);
    let k = m1.alphabet().len().min(m2.alphabet().len());
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([(t1.initial, t2.initial)]);
    seen.insert((t1.initial, t2.initial));
    while let Some((a, b)) = queue.pop_front() {
        for x in 0..k {
            let t = (m1.next(a, x), m2.next(b, x));
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn aleshin_tables() -> Arc<MealyMachine> {
        // a=0, b=1, c=2
        let next = vec![2, 1, 1, 2, 0, 0];
        let out = vec![1, 0, 1, 0, 0, 1];
        Arc::new(
            MealyMachine::new(
                "A",
                Alphabet::binary(),
                vec!["a".into(), "b".into(), "c".into()],
                next,
                out,
            )
            .unwrap(),
        )
    }

    fn bellaterra_tables() -> Arc<MealyMachine> {
        let next = vec![2, 1, 1, 2, 0, 0];
        let out = vec![0, 1, 0, 1, 1, 0];
        Arc::new(
            MealyMachine::new(
                "B",
                Alphabet::binary(),
                vec!["a".into(), "b".into(), "c".into()],
                next,
                out,
            )
            .unwrap(),
        )
    }

    fn w(s: &str) -> Vec<usize> {
        Alphabet::binary().parse_word(s).unwrap()
    }

    #[test]
    fn step_reads_tables() {
        let a = aleshin_tables();
        assert_eq!(a.step_named("a", "0").unwrap(), ("c", "1"));
        let b = bellaterra_tables();
        assert_eq!(b.step_named("c", "0").unwrap(), ("a", "1"));
        assert!(matches!(
            a.step_named("d", "0"),
            Err(Error::UnknownState(_))
        ));
        assert!(matches!(
            a.step_named("a", "2"),
            Err(Error::UnknownLetter(_))
        ));
        assert!(a.step(0, 2).is_err());
    }

    #[test]
    fn apply_traces_words() {
        let a = aleshin_tables();
        let aa = a.pointed(0);
        assert_eq!(aa.apply(&w("00")).unwrap(), w("10"));
        assert_eq!(aa.apply(&[]).unwrap(), Vec::<usize>::new());
        assert!(aa.apply(&[0, 5]).is_err());
        let ba = bellaterra_tables().pointed(0);
        assert_eq!(ba.apply(&w("01")).unwrap(), w("00"));
        assert_eq!(ba.apply(&w("00")).unwrap(), w("01"));
    }

    #[test]
    fn section_splits_first_letter() {
        let a = aleshin_tables();
        let (y, rest) = a.pointed(0).section(0).unwrap();
        assert_eq!(y, 1);
        assert_eq!(rest.initial_name(), "c");
        let id = PointedMachine::identity(&Alphabet::binary());
        let (y, rest) = id.section(1).unwrap();
        assert_eq!(y, 1);
        assert!(is_identity(&rest, &Limits::default()).unwrap());
    }

    #[test]
    fn composition_acts_left_to_right() {
        let a = aleshin_tables();
        let lim = Limits::default();
        let aa = compose(&a.pointed(0), &a.pointed(0), &lim).unwrap();
        assert_eq!(aa.apply(&w("00")).unwrap(), w("01"));
        let id = PointedMachine::identity(&Alphabet::binary());
        let t = compose(&a.pointed(0), &id, &lim).unwrap();
        assert!(transformations_equal(&t, &a.pointed(0), &lim).unwrap());
        let b = bellaterra_tables();
        let bb = compose(&b.pointed(0), &b.pointed(0), &lim).unwrap();
        assert!(transformations_equal(&bb, &id, &lim).unwrap());
    }

    #[test]
    fn compose_rejects_mismatched_alphabets() {
        let a = aleshin_tables();
        let other = PointedMachine::identity(&Alphabet::new(["x", "y"]).unwrap());
        assert!(matches!(
            compose(&a.pointed(0), &other, &Limits::default()),
            Err(Error::AlphabetMismatch { .. })
        ));
        assert!(transformations_equal(&a.pointed(0), &other, &Limits::default()).is_err());
    }

    #[test]
    fn equality_and_identity_decisions() {
        let lim = Limits::default();
        let a = aleshin_tables();
        let b = bellaterra_tables();
        assert!(transformations_equal(&a.pointed(0), &a.pointed(0), &lim).unwrap());
        assert_eq!(
            distinguishing_word(&a.pointed(0), &b.pointed(0), &lim).unwrap(),
            Some(vec![0])
        );
        assert!(!is_identity(&a.pointed(0), &lim).unwrap());
        assert!(is_identity(&PointedMachine::identity(&Alphabet::binary()), &lim).unwrap());
    }

    #[test]
    fn caps_are_reported() {
        let a = aleshin_tables();
        let tight = Limits {
            max_pairs: 2,
            max_orbit: 10,
        };
        let err = compose_all(&[a.pointed(0), a.pointed(1), a.pointed(2)], &tight).unwrap_err();
        assert!(err.is_resource());
        // A_a and A_b agree on the first level, so the product must grow past one pair
        let err = transformations_equal(
            &a.pointed(0),
            &a.pointed(1),
            &Limits {
                max_pairs: 1,
                max_orbit: 10,
            },
        )
        .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn state_words_act_on_the_right() {
        let a = aleshin_tables();
        let lim = Limits::default();
        let word = w("0110");
        for xi in [vec![0, 1], vec![2, 2, 0], vec![1]] {
            let direct = apply_state_word(&a, &xi, &word).unwrap();
            let machine = state_word_machine(&a, &xi, &lim).unwrap();
            assert_eq!(machine.apply(&word).unwrap(), direct);
        }
        assert_eq!(apply_state_word(&a, &[], &word).unwrap(), word);
        assert!(apply_state_word(&a, &[7], &word).is_err());
    }

    #[test]
    fn word_text_round_trip() {
        let x = Alphabet::binary();
        assert_eq!(x.format_word(&x.parse_word("0110").unwrap()), "0110");
        assert_eq!(x.parse_word("0 1 1").unwrap(), vec![0, 1, 1]);
        let q = Alphabet::new(["a.1", "b.1"]).unwrap();
        assert_eq!(q.parse_word("a.1 b.1").unwrap(), vec![0, 1]);
        assert_eq!(q.format_word(&[1, 0]), "b.1 a.1");
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let x = Alphabet::binary();
        assert!(MealyMachine::new("m", x.clone(), vec!["s".into()], vec![0], vec![0]).is_err());
        assert!(
            MealyMachine::new("m", x.clone(), vec!["s".into()], vec![0, 1], vec![0, 0]).is_err()
        );
        assert!(MealyMachine::new("m", x, vec!["s".into()], vec![0, 0], vec![0, 2]).is_err());
    }
}
