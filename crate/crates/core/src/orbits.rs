//! Orbits of finitely generated transformation groups on a fixed level of
//! the tree `X^k`.
//!
//! Words are packed as their lexicographic rank in base `|X|`. The closure
//! uses forward generators only: for a group generated by invertible
//! transformations of a finite set, semigroup orbits and group orbits agree.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::{Alphabet, Limits, MealyMachine, PointedMachine};
use crate::transforms::classify;

/// How many orbit members an [`OrbitReport`] lists before truncating.
pub const MEMBER_LIST_CAP: usize = 4096;

/// A named family of invertible transformations of `X*`.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    name: String,
    alphabet: Alphabet,
    generators: Vec<PointedMachine>,
}

impl GeneratorSystem {
    pub fn new(name: impl Into<String>, generators: Vec<PointedMachine>) -> Result<Self> {
        let name = name.into();
        let first = generators.first().ok_or_else(|| {
            Error::InvalidParameter(format!("generator system `{name}` has no generators"))
        })?;
        let alphabet = first.alphabet().clone();
        for g in &generators {
            g.alphabet().ensure_same(&alphabet)?;
            let c = classify(g.machine());
            if !c.invertible {
                let w = c
                    .invertible_witness
                    .expect("non-invertible machine has a witness");
                return Err(Error::NotInvertible {
                    machine: g.machine().name().to_owned(),
                    state: g.machine().state_name(w.state).to_owned(),
                });
            }
        }
        Ok(GeneratorSystem {
            name,
            alphabet,
            generators,
        })
    }

    /// All states of `m` as generators, in state order.
    pub fn from_machine(m: MealyMachine) -> Result<Self> {
        let m = Arc::new(m);
        GeneratorSystem::new(m.name().to_owned(), m.all_pointed())
    }

    /// Appends further generators over the same alphabet.
    pub fn with_generators(mut self, extra: Vec<PointedMachine>) -> Result<Self> {
        self.generators.extend(extra);
        GeneratorSystem::new(self.name, self.generators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[PointedMachine] {
        &self.generators
    }
}

/// Result of one orbit computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub seed: Vec<usize>,
    pub size: usize,
    /// Members in visiting order, truncated at [`MEMBER_LIST_CAP`].
    pub members: Vec<Vec<usize>>,
    pub members_truncated: bool,
    /// Number of generator applications performed.
    pub applications: u64,
    /// Whether the orbit is the whole level.
    pub transitive: bool,
}

/// Rank codec for words of one fixed length over an alphabet of size `base`.
#[derive(Debug, Clone, Copy)]
struct Level {
    base: u64,
    k: usize,
    size: u64,
}

impl Level {
    fn new(base: usize, k: usize) -> Result<Self> {
        let size = (base as u64)
            .checked_pow(k as u32)
            .ok_or(Error::CapExceeded {
                what: "level size",
                cap: usize::MAX,
                reached: usize::MAX,
            })?;
        Ok(Level {
            base: base as u64,
            k,
            size,
        })
    }

    fn encode(&self, w: &[usize]) -> u64 {
        w.iter().fold(0, |acc, &x| acc * self.base + x as u64)
    }

    fn decode_into(&self, mut r: u64, buf: &mut [usize]) {
        for slot in buf.iter_mut().rev() {
            *slot = (r % self.base) as usize;
            r /= self.base;
        }
    }

    fn decode(&self, r: u64) -> Vec<usize> {
        let mut buf = vec![0; self.k];
        self.decode_into(r, &mut buf);
        buf
    }
}

/// Applies each generator to the word of rank `r`; `f` receives image ranks
/// in generator order.
struct Stepper<'a> {
    gens: Vec<(&'a MealyMachine, usize)>,
    level: Level,
    word: Vec<usize>,
}

impl<'a> Stepper<'a> {
    fn new(gs: &'a GeneratorSystem, level: Level) -> Self {
        Stepper {
            gens: gs
                .generators
                .iter()
                .map(|g| (g.machine().as_ref(), g.initial()))
                .collect(),
            level,
            word: vec![0; level.k],
        }
    }

    fn images(&mut self, r: u64, mut f: impl FnMut(u64)) {
        self.level.decode_into(r, &mut self.word);
        for &(m, q0) in &self.gens {
            let mut q = q0;
            let mut acc = 0u64;
            for &x in &self.word {
                acc = acc * self.level.base + m.out(q, x) as u64;
                q = m.next(q, x);
            }
            f(acc);
        }
    }
}

fn check_word(alphabet: &Alphabet, w: &[usize]) -> Result<()> {
    w.iter().try_for_each(|&x| alphabet.check_letter(x))
}

fn orbit_ranks(
    gs: &GeneratorSystem,
    seed: &[usize],
    limits: &Limits,
) -> Result<(Level, Vec<u64>, u64)> {
    check_word(&gs.alphabet, seed)?;
    let level = Level::new(gs.alphabet.len(), seed.len())?;
    let mut stepper = Stepper::new(gs, level);
    let start = level.encode(seed);
    let mut seen = HashSet::from([start]);
    let mut order = vec![start];
    let mut head = 0;
    let mut applications = 0u64;
    while head < order.len() {
        let r = order[head];
        head += 1;
        let mut overflow = false;
        stepper.images(r, |img| {
            applications += 1;
            if seen.insert(img) {
                order.push(img);
                overflow |= order.len() > limits.max_orbit;
            }
        });
        if overflow {
            return Err(Error::CapExceeded {
                what: "orbit size",
                cap: limits.max_orbit,
                reached: order.len(),
            });
        }
    }
    Ok((level, order, applications))
}

/// BFS closure of `seed` under the generators, in deterministic order
/// (queue order, then generator order).
pub fn orbit(gs: &GeneratorSystem, seed: &[usize], limits: &Limits) -> Result<OrbitReport> {
    let (level, ranks, applications) = orbit_ranks(gs, seed, limits)?;
    Ok(OrbitReport {
        seed: seed.to_vec(),
        size: ranks.len(),
        members: ranks
            .iter()
            .take(MEMBER_LIST_CAP)
            .map(|&r| level.decode(r))
            .collect(),
        members_truncated: ranks.len() > MEMBER_LIST_CAP,
        applications,
        transitive: ranks.len() as u64 == level.size,
    })
}

/// Every member of the orbit of `seed`, sorted lexicographically.
pub fn orbit_members(
    gs: &GeneratorSystem,
    seed: &[usize],
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let (level, mut ranks, _) = orbit_ranks(gs, seed, limits)?;
    ranks.sort_unstable();
    Ok(ranks.into_iter().map(|r| level.decode(r)).collect())
}

/// Whether the group acts transitively on `X^k`: one BFS from `0^k`.
pub fn is_level_transitive(gs: &GeneratorSystem, k: usize, limits: &Limits) -> Result<bool> {
    let level = Level::new(gs.alphabet.len(), k)?;
    if level.size > limits.max_orbit as u64 {
        return Err(Error::CapExceeded {
            what: "level size",
            cap: limits.max_orbit,
            reached: level.size.min(usize::MAX as u64) as usize,
        });
    }
    Ok(orbit(gs, &vec![0; k], limits)?.transitive)
}

/// All orbits on `X^k`. Each orbit is sorted lexicographically; orbits are
/// listed by their least member.
pub fn orbits_of_level(
    gs: &GeneratorSystem,
    k: usize,
    limits: &Limits,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let level = Level::new(gs.alphabet.len(), k)?;
    if level.size > limits.max_orbit as u64 {
        return Err(Error::CapExceeded {
            what: "level size",
            cap: limits.max_orbit,
            reached: level.size.min(usize::MAX as u64) as usize,
        });
    }
    let size = level.size as usize;
    let mut seen = vec![false; size];
    let mut stepper = Stepper::new(gs, level);
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start as u64);
        let mut members = Vec::new();
        while let Some(r) = queue.pop_front() {
            members.push(r);
            stepper.images(r, |img| {
                if !std::mem::replace(&mut seen[img as usize], true) {
                    queue.push_back(img);
                }
            });
        }
        members.sort_unstable();
        orbits.push(members.into_iter().map(|r| level.decode(r)).collect());
    }
    Ok(orbits)
}

/// Orbit sizes on `X^k`, sorted descending; they sum to `|X|^k`.
pub fn orbit_partition(gs: &GeneratorSystem, k: usize, limits: &Limits) -> Result<Vec<usize>> {
    let mut sizes: Vec<usize> = orbits_of_level(gs, k, limits)?
        .iter()
        .map(Vec::len)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}
