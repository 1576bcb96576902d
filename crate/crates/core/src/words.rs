//! Combinatorics on signed state words: patterns and marked patterns, free
//! reduction, the sign character `χ`, the sets `Z(ξ)`, enumeration of freely
//! irreducible words, and the subscript-erasing collapse map.
//!
//! A [`SignedAlphabet`] over base states `q_0 … q_{m-1}` has `2m` letters:
//! index `i < m` is `q_i` and index `m + i` is `q_i⁻¹`. This is also the
//! state order of the machines `U` built in [`crate::families`], so a
//! [`StateWord`] doubles as a word of `U`-states.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Pos,
    Neg,
}

/// Position of a base state inside its Aleshin-type component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    A,
    B,
    C,
    /// `q_{n,i}` with `1 ≤ i ≤ 2n − 2`.
    Chain(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseState {
    pub name: String,
    pub component: u32,
    pub role: Role,
}

/// The letters `Q^±` of signed generators over a list of base states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedAlphabet {
    base: Vec<BaseState>,
    components: Vec<u32>,
}

impl SignedAlphabet {
    pub fn new(base: Vec<BaseState>) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::InvalidParameter(
                "signed alphabet needs base states".into(),
            ));
        }
        let names: Vec<String> = base.iter().map(|b| b.name.clone()).collect();
        Alphabet::new(names)?;
        let mut components: Vec<u32> = base.iter().map(|b| b.component).collect();
        components.sort_unstable();
        components.dedup();
        Ok(SignedAlphabet { base, components })
    }

    pub fn base(&self) -> &[BaseState] {
        &self.base
    }

    pub fn base_names(&self) -> Vec<String> {
        self.base.iter().map(|b| b.name.clone()).collect()
    }

    /// Components present, ascending.
    pub fn components(&self) -> &[u32] {
        &self.components
    }

    pub fn len(&self) -> usize {
        2 * self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, base: usize, sign: Sign) -> usize {
        match sign {
            Sign::Pos => base,
            Sign::Neg => base + self.base.len(),
        }
    }

    pub fn base_of(&self, letter: usize) -> usize {
        letter % self.base.len()
    }

    pub fn sign_of(&self, letter: usize) -> Sign {
        if letter < self.base.len() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn inverse(&self, letter: usize) -> usize {
        let m = self.base.len();
        (letter + m) % (2 * m)
    }

    pub fn component_of(&self, letter: usize) -> u32 {
        self.base[self.base_of(letter)].component
    }

    pub fn role_of(&self, letter: usize) -> Role {
        self.base[self.base_of(letter)].role
    }

    /// Serialized letter name: base name, with a trailing `'` for inverses.
    pub fn name(&self, letter: usize) -> String {
        let b = &self.base[self.base_of(letter)].name;
        match self.sign_of(letter) {
            Sign::Pos => b.clone(),
            Sign::Neg => format!("{b}'"),
        }
    }

    /// Letter name for reports, with inverses written `q⁻¹`.
    pub fn pretty(&self, letter: usize) -> String {
        let b = &self.base[self.base_of(letter)].name;
        match self.sign_of(letter) {
            Sign::Pos => b.clone(),
            Sign::Neg => format!("{b}⁻¹"),
        }
    }

    /// The letters as a machine alphabet (used by `U`'s states and `D`'s input).
    pub fn to_alphabet(&self) -> Alphabet {
        Alphabet::new((0..self.len()).map(|i| self.name(i))).expect("distinct names")
    }

    /// Parses one letter; accepts `name`, `name'`, and `name⁻¹`.
    pub fn parse_letter(&self, token: &str) -> Result<usize> {
        let (stem, sign) = if let Some(s) = token.strip_suffix('\'') {
            (s, Sign::Neg)
        } else if let Some(s) = token.strip_suffix("⁻¹") {
            (s, Sign::Neg)
        } else {
            (token, Sign::Pos)
        };
        let base = self
            .base
            .iter()
            .position(|b| b.name == stem)
            .ok_or_else(|| Error::UnknownLetter(token.to_owned()))?;
        Ok(self.letter(base, sign))
    }

    /// Parses whitespace-separated letters.
    pub fn parse_word(&self, text: &str) -> Result<StateWord> {
        text.split_whitespace()
            .map(|t| self.parse_letter(t))
            .collect::<Result<Vec<_>>>()
            .map(StateWord)
    }

    pub fn format_word(&self, word: &StateWord) -> String {
        word.0
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn pretty_word(&self, word: &StateWord) -> String {
        if word.is_empty() {
            return "ε".into();
        }
        word.0
            .iter()
            .map(|&l| self.pretty(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check(&self, word: &StateWord) -> Result<()> {
        match word.0.iter().find(|&&l| l >= self.len()) {
            Some(&bad) => Err(Error::LetterOutOfRange {
                index: bad,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// Letters carrying a given mark, in canonical order.
    fn letters_with(&self, mark: Mark) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| {
                self.sign_of(l) == mark.sign
                    && mark.component.is_none_or(|c| self.component_of(l) == c)
            })
            .collect()
    }
}

/// A word over a [`SignedAlphabet`], as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct StateWord(pub Vec<usize>);

impl StateWord {
    pub fn empty() -> Self {
        StateWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &StateWord) -> StateWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        StateWord(v)
    }
}

/// A word over `{*, *⁻¹}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Pattern(pub Vec<Sign>);

impl Pattern {
    /// All patterns of length `k`, `*` before `*⁻¹` at each position.
    pub fn all_of_length(k: usize) -> Vec<Pattern> {
        (0..1usize << k)
            .map(|bits| {
                Pattern(
                    (0..k)
                        .map(|i| {
                            if bits >> (k - 1 - i) & 1 == 0 {
                                Sign::Pos
                            } else {
                                Sign::Neg
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Sign::Pos => "*",
                Sign::Neg => "*⁻¹",
            })
            .collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "ε".into()
            } else {
                parts.join(" ")
            }
        )
    }
}

/// One symbol of a marked pattern: `*_n` or `*_n⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkedSymbol {
    pub component: u32,
    pub sign: Sign,
}

/// A word over `P_N^± = {*_n, *_n⁻¹ : n ∈ N}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct MarkedPattern(pub Vec<MarkedSymbol>);

impl MarkedPattern {
    /// All marked patterns of length `k` over the given components, in
    /// lexicographic order (`*_n` before `*_n⁻¹`, smaller `n` first).
    pub fn all_of_length(components: &[u32], k: usize) -> Vec<MarkedPattern> {
        let symbols: Vec<MarkedSymbol> = [Sign::Pos, Sign::Neg]
            .iter()
            .flat_map(|&sign| {
                components
                    .iter()
                    .map(move |&component| MarkedSymbol { component, sign })
            })
            .collect();
        let mut out = vec![MarkedPattern::default()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|p| {
                    symbols.iter().map(move |&s| {
                        let mut v = p.0.clone();
                        v.push(s);
                        MarkedPattern(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn unmarked(&self) -> Pattern {
        Pattern(self.0.iter().map(|s| s.sign).collect())
    }
}

impl fmt::Display for MarkedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s.sign {
                Sign::Pos => format!("*{}", s.component),
                Sign::Neg => format!("*{}⁻¹", s.component),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy)]
struct Mark {
    sign: Sign,
    component: Option<u32>,
}

pub fn pattern_of(alphabet: &SignedAlphabet, xi: &StateWord) -> Pattern {
    Pattern(xi.0.iter().map(|&l| alphabet.sign_of(l)).collect())
}

pub fn marked_pattern_of(alphabet: &SignedAlphabet, xi: &StateWord) -> MarkedPattern {
    MarkedPattern(
        xi.0.iter()
            .map(|&l| MarkedSymbol {
                component: alphabet.component_of(l),
                sign: alphabet.sign_of(l),
            })
            .collect(),
    )
}

pub fn is_freely_irreducible(alphabet: &SignedAlphabet, xi: &StateWord) -> bool {
    xi.0.windows(2).all(|p| p[1] != alphabet.inverse(p[0]))
}

/// Free reduction: cancels adjacent `q q⁻¹` and `q⁻¹ q` until none remain.
pub fn free_reduce(alphabet: &SignedAlphabet, xi: &StateWord) -> StateWord {
    let mut stack: Vec<usize> = Vec::with_capacity(xi.len());
    for &l in &xi.0 {
        if stack.last() == Some(&alphabet.inverse(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    StateWord(stack)
}

/// Letter value of the sign character: `−1` on `a_n`, `b_n` and their
/// inverses, `+1` elsewhere.
pub fn chi_letter(alphabet: &SignedAlphabet, letter: usize) -> i8 {
    match alphabet.role_of(letter) {
        Role::A | Role::B => -1,
        _ => 1,
    }
}

pub fn chi(alphabet: &SignedAlphabet, xi: &StateWord) -> i8 {
    xi.0.iter().map(|&l| chi_letter(alphabet, l)).product()
}

/// All freely irreducible words with the marked pattern of `xi` that agree
/// with `xi` except possibly in the last letter. For a single-component
/// alphabet the marked pattern is the pattern.
pub fn z_set(alphabet: &SignedAlphabet, xi: &StateWord) -> Result<Vec<StateWord>> {
    alphabet.check(xi)?;
    if xi.is_empty() {
        return Err(Error::InvalidWord("Z-set of the empty word".into()));
    }
    if !is_freely_irreducible(alphabet, xi) {
        return Err(Error::InvalidWord(format!(
            "`{}` is freely reducible",
            alphabet.format_word(xi)
        )));
    }
    let last = *xi.0.last().unwrap();
    let mark = Mark {
        sign: alphabet.sign_of(last),
        component: Some(alphabet.component_of(last)),
    };
    let prefix = &xi.0[..xi.len() - 1];
    Ok(alphabet
        .letters_with(mark)
        .into_iter()
        .filter(|&l| prefix.last().is_none_or(|&p| l != alphabet.inverse(p)))
        .map(|l| {
            let mut v = prefix.to_vec();
            v.push(l);
            StateWord(v)
        })
        .collect())
}

/// Lexicographic stream of freely irreducible words whose letter at each
/// position is drawn from the corresponding candidate list.
pub struct IrreducibleWords<'a> {
    alphabet: &'a SignedAlphabet,
    candidates: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> IrreducibleWords<'a> {
    fn new(alphabet: &'a SignedAlphabet, candidates: Vec<Vec<usize>>) -> Self {
        let done = candidates.iter().any(Vec::is_empty);
        IrreducibleWords {
            alphabet,
            cursor: vec![0; candidates.len()],
            candidates,
            started: false,
            done,
        }
    }

    fn letter(&self, pos: usize) -> usize {
        self.candidates[pos][self.cursor[pos]]
    }

    fn ok_at(&self, pos: usize) -> bool {
        pos == 0 || self.letter(pos) != self.alphabet.inverse(self.letter(pos - 1))
    }

    /// Moves to the first valid completion at or after the current cursor,
    /// starting the scan at `pos`.
    fn settle(&mut self, mut pos: usize) -> bool {
        let n = self.candidates.len();
        loop {
            if pos == n {
                return true;
            }
            if self.ok_at(pos) {
                pos += 1;
                continue;
            }
            // advance at pos, carrying leftwards on overflow
            loop {
                self.cursor[pos] += 1;
                if self.cursor[pos] < self.candidates[pos].len() {
                    break;
                }
                self.cursor[pos] = 0;
                if pos == 0 {
                    return false;
                }
                pos -= 1;
            }
        }
    }
}

impl Iterator for IrreducibleWords<'_> {
    type Item = StateWord;

    fn next(&mut self) -> Option<StateWord> {
        if self.done {
            return None;
        }
        let n = self.candidates.len();
        if !self.started {
            self.started = true;
            if n == 0 {
                self.done = true;
                return Some(StateWord::empty());
            }
            if !self.settle(0) {
                self.done = true;
                return None;
            }
        } else {
            let mut pos = n - 1;
            loop {
                self.cursor[pos] += 1;
                if self.cursor[pos] < self.candidates[pos].len() {
                    break;
                }
                self.cursor[pos] = 0;
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
            }
            if !self.settle(pos) {
                self.done = true;
                return None;
            }
        }
        Some(StateWord((0..n).map(|i| self.letter(i)).collect()))
    }
}

/// Freely irreducible words following `pattern`, lexicographic in the
/// canonical letter order.
pub fn enumerate_by_pattern<'a>(
    alphabet: &'a SignedAlphabet,
    pattern: &Pattern,
) -> IrreducibleWords<'a> {
    let candidates = pattern
        .0
        .iter()
        .map(|&sign| {
            alphabet.letters_with(Mark {
                sign,
                component: None,
            })
        })
        .collect();
    IrreducibleWords::new(alphabet, candidates)
}

/// Freely irreducible words following a marked pattern.
pub fn enumerate_by_marked_pattern<'a>(
    alphabet: &'a SignedAlphabet,
    pattern: &MarkedPattern,
) -> IrreducibleWords<'a> {
    let candidates = pattern
        .0
        .iter()
        .map(|s| {
            alphabet.letters_with(Mark {
                sign: s.sign,
                component: Some(s.component),
            })
        })
        .collect();
    IrreducibleWords::new(alphabet, candidates)
}

/// All freely irreducible words of length `k`, lexicographic.
pub fn enumerate_irreducible_of_length(
    alphabet: &SignedAlphabet,
    k: usize,
) -> IrreducibleWords<'_> {
    IrreducibleWords::new(alphabet, vec![(0..alphabet.len()).collect(); k])
}

/// Number of freely irreducible words following a pattern over `m` base
/// states: `m · Π (m if same sign else m − 1)` over adjacent positions.
pub fn count_by_pattern(base_states: usize, pattern: &Pattern) -> u64 {
    if pattern.0.is_empty() {
        return 1;
    }
    let m = base_states as u64;
    pattern
        .0
        .windows(2)
        .fold(m, |acc, p| acc * if p[0] == p[1] { m } else { m - 1 })
}

/// Erases component subscripts: `a_n ↦ a`, `b_n ↦ b`, `c_n ↦ c`, signs kept.
/// `target` must contain base states with roles `A`, `B`, `C`.
pub fn collapse_h(
    from: &SignedAlphabet,
    target: &SignedAlphabet,
    xi: &StateWord,
) -> Result<StateWord> {
    from.check(xi)?;
    xi.0.iter()
        .map(|&l| {
            let role = from.role_of(l);
            if matches!(role, Role::Chain(_)) {
                return Err(Error::InvalidWord(format!(
                    "`{}` is outside the a/b/c letters",
                    from.name(l)
                )));
            }
            let base = target
                .base
                .iter()
                .position(|b| b.role == role)
                .ok_or_else(|| Error::InvalidParameter("collapse target lacks a/b/c".into()))?;
            Ok(target.letter(base, from.sign_of(l)))
        })
        .collect::<Result<Vec<_>>>()
        .map(StateWord)
}

/// Section of [`collapse_h`]: `a ↦ a_n`, `b ↦ b_n`, `c ↦ c_n` for a chosen
/// component `n` of `target`.
pub fn lift_h(
    from: &SignedAlphabet,
    target: &SignedAlphabet,
    n: u32,
    xi: &StateWord,
) -> Result<StateWord> {
    from.check(xi)?;
    xi.0.iter()
        .map(|&l| {
            let role = from.role_of(l);
            let base = target
                .base
                .iter()
                .position(|b| b.role == role && b.component == n && !matches!(role, Role::Chain(_)))
                .ok_or_else(|| {
                    Error::InvalidWord(format!("cannot lift `{}` into component {n}", from.name(l)))
                })?;
            Ok(target.letter(base, from.sign_of(l)))
        })
        .collect::<Result<Vec<_>>>()
        .map(StateWord)
}

/// True iff two adjacent letters coincide.
pub fn has_double_letter(word: &[usize]) -> bool {
    word.windows(2).any(|p| p[0] == p[1])
}
