//! The geodesic word acceptor built from time-differential profiles.
//!
//! A state is a function `phi` on the undirected ball `B(delta)`. After
//! reading a geodesic word `w`, `phi(x)` estimates `l(w x) - len(w)`,
//! clamped to `[-delta, k delta]`. Reading a letter `a` produces
//!
//! ```text
//! psi(x) = phi(a x) - len(a)                         if a x is in B(delta)
//!        = min { phi(y) + len(b) - len(a) : y b = a x, y in B(delta) }
//!                                                    otherwise
//! ```
//!
//! with an empty minimum read as `k delta`. The run fails as soon as
//! `psi(1) != 0`.

mod dot;
mod minimize;
mod validate;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::group::{asym_constant, ball, undirected_ball, GeneratingSet, GroupElement, Presentation, Word};

pub use dot::export_dot;
pub use minimize::{minimize, minimize_colored};
pub use validate::{cross_validate, language_agreement, Disagreement, ValidationReport};

/// Default cap on the number of live states.
pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// A clamped time-differential function on `B(delta)`, listed in the
/// ball's element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileState(Box<[i32]>);

impl ProfileState {
    pub fn values(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, point: usize) -> i32 {
        self.0[point]
    }
}

/// Options for [`build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub state_cap: usize,
    /// Length up to which inverses of letters are searched for `k`.
    pub asym_cap: u32,
    pub ball_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { state_cap: DEFAULT_STATE_CAP, asym_cap: 32, ball_cap: crate::group::DEFAULT_BALL_CAP }
    }
}

/// Deterministic complete automaton over the letters of a generating set.
///
/// Live states are `0..num_states()`; the fail state is `num_states()`
/// and is the only rejecting state. Automata produced by [`build`] keep
/// their profiles; minimized ones do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicAutomaton {
    delta: u32,
    k: u32,
    names: Vec<String>,
    weights: Vec<u32>,
    ball: Vec<GroupElement>,
    profiles: Vec<ProfileState>,
    transitions: Vec<u32>,
    start: u32,
}

impl GeodesicAutomaton {
    /// Assembles an automaton from a transition table; `transitions[s *
    /// letters + a]` is the target of state `s` on letter `a`, with
    /// `num_states` standing for fail.
    pub fn from_parts(
        delta: u32,
        k: u32,
        names: Vec<String>,
        weights: Vec<u32>,
        transitions: Vec<u32>,
        start: u32,
    ) -> Result<Self> {
        let letters = names.len();
        if letters == 0 || weights.len() != letters {
            return Err(Error::Precondition("alphabet and weights disagree".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Precondition("letter weights must be positive".into()));
        }
        if !transitions.len().is_multiple_of(letters) {
            return Err(Error::Precondition("transition table is not rectangular".into()));
        }
        let n = transitions.len() / letters;
        if n == 0 || start as usize >= n {
            return Err(Error::Precondition("start state out of range".into()));
        }
        if let Some(&bad) = transitions.iter().find(|&&t| t as usize > n) {
            return Err(Error::Precondition(format!("transition target {bad} out of range")));
        }
        Ok(Self { delta, k, names, weights, ball: Vec::new(), profiles: Vec::new(), transitions, start })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// The asymmetry constant used to clamp profiles.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len() / self.names.len()
    }

    pub fn num_letters(&self) -> usize {
        self.names.len()
    }

    pub fn fail(&self) -> u32 {
        self.num_states() as u32
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn letter_names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `B(delta)` in the order used by the profiles; empty after loading
    /// or minimizing.
    pub fn ball_points(&self) -> &[GroupElement] {
        &self.ball
    }

    pub fn profiles(&self) -> Option<&[ProfileState]> {
        if self.profiles.is_empty() {
            None
        } else {
            Some(&self.profiles)
        }
    }

    pub fn transitions(&self) -> &[u32] {
        &self.transitions
    }

    /// Successor of `state` on letter `a`; fail maps to fail.
    pub fn next(&self, state: u32, a: usize) -> u32 {
        if state == self.fail() {
            return state;
        }
        self.transitions[state as usize * self.names.len() + a]
    }

    pub fn run(&self, word: &Word) -> u32 {
        let mut s = self.start;
        for &a in word.letters() {
            s = self.next(s, a);
            if s == self.fail() {
                break;
            }
        }
        s
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run(word) != self.fail()
    }

    pub(crate) fn without_profiles(mut self) -> Self {
        self.ball.clear();
        self.profiles.clear();
        self
    }
}

pub fn accepts(aut: &GeodesicAutomaton, word: &Word) -> bool {
    aut.accepts(word)
}

enum Rule {
    Inside(u32),
    /// Points `y` with `y b = a x`, paired with `len(b)`.
    Outside(Vec<(u32, i32)>),
}

/// The fixed ball and precomputed neighbourhoods the step rule reads.
pub struct StepContext {
    delta: i32,
    k: u32,
    ball: Vec<GroupElement>,
    weights: Vec<i32>,
    rules: Vec<Rule>,
    /// Per ball point `x`: the points `y` with `y b = x`, paired with `len(b)`.
    closure: Vec<Vec<(u32, i32)>>,
    start: ProfileState,
}

impl StepContext {
    pub fn new(pres: &Presentation, gens: &GeneratingSet, delta: u32, options: &BuildOptions) -> Result<Self> {
        let k = asym_constant(pres, gens, options.asym_cap)?;
        let und = undirected_ball(pres, gens, delta, options.ball_cap)?;
        let points: Vec<GroupElement> = und.elements().to_vec();
        let size = points.len();
        let upper = (k * delta) as i32;
        let directed = ball(pres, gens, k * delta)?;
        let start: Box<[i32]> =
            points.iter().map(|x| directed.length(x).map_or(upper, |l| (l as i32).min(upper))).collect();

        let inverses: Vec<GroupElement> =
            gens.letters().iter().map(|l| pres.inverse(&l.value)).collect::<Result<_>>()?;
        let mut rules = Vec::with_capacity(gens.len() * size);
        for letter in gens.letters() {
            for x in &points {
                let ax = pres.multiply(&letter.value, x)?;
                if let Some(i) = und.index_of(&ax) {
                    rules.push(Rule::Inside(i as u32));
                    continue;
                }
                let mut ys = Vec::new();
                for (b, inv) in inverses.iter().enumerate() {
                    let y = pres.multiply(&ax, inv)?;
                    if let Some(j) = und.index_of(&y) {
                        ys.push((j as u32, gens.weight(b) as i32));
                    }
                }
                rules.push(Rule::Outside(ys));
            }
        }
        let mut closure = Vec::with_capacity(size);
        for x in &points {
            let mut ys = Vec::new();
            for (b, inv) in inverses.iter().enumerate() {
                if let Some(j) = und.index_of(&pres.multiply(x, inv)?) {
                    ys.push((j as u32, gens.weight(b) as i32));
                }
            }
            closure.push(ys);
        }
        Ok(Self {
            delta: delta as i32,
            k,
            ball: points,
            weights: gens.letters().iter().map(|l| l.weight as i32).collect(),
            rules,
            closure,
            start: ProfileState(start),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ball(&self) -> &[GroupElement] {
        &self.ball
    }

    pub fn start(&self) -> &ProfileState {
        &self.start
    }

    /// One application of the transition rule; `None` is fail.
    pub fn step(&self, state: &ProfileState, a: usize) -> Option<ProfileState> {
        let size = self.ball.len();
        let wa = self.weights[a];
        let upper = self.k as i32 * self.delta;
        let rules = &self.rules[a * size..(a + 1) * size];
        let mut psi: Vec<i32> = rules
            .iter()
            .map(|rule| match rule {
                Rule::Inside(i) => state.0[*i as usize] - wa,
                Rule::Outside(ys) => ys.iter().map(|&(y, wb)| state.0[y as usize] + wb - wa).min().unwrap_or(upper),
            })
            .collect();
        // The shorter word may take several steps while the input takes one.
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..size {
                for &(y, wb) in &self.closure[x] {
                    if psi[y as usize] + wb < psi[x] {
                        psi[x] = psi[y as usize] + wb;
                        changed = true;
                    }
                }
            }
        }
        for v in psi.iter_mut() {
            *v = (*v).clamp(-self.delta, upper);
        }
        if psi[0] != 0 {
            return None;
        }
        Some(ProfileState(psi.into_boxed_slice()))
    }
}

/// Closure of the step rule from the start state, hash-consed.
pub fn build(pres: &Presentation, gens: &GeneratingSet, delta: u32) -> Result<GeodesicAutomaton> {
    build_with(pres, gens, delta, &BuildOptions::default())
}

pub fn build_with(
    pres: &Presentation,
    gens: &GeneratingSet,
    delta: u32,
    options: &BuildOptions,
) -> Result<GeodesicAutomaton> {
    let ctx = StepContext::new(pres, gens, delta, options)?;
    let letters = gens.len();
    let mut profiles = vec![ctx.start.clone()];
    let mut index: HashMap<ProfileState, u32> = HashMap::new();
    index.insert(ctx.start.clone(), 0);
    let mut targets: Vec<Option<u32>> = Vec::new();
    let mut i = 0;
    while i < profiles.len() {
        for a in 0..letters {
            let next = ctx.step(&profiles[i], a);
            targets.push(next.map(|psi| match index.get(&psi) {
                Some(&j) => j,
                None => {
                    let j = profiles.len() as u32;
                    index.insert(psi.clone(), j);
                    profiles.push(psi);
                    j
                }
            }));
        }
        if profiles.len() > options.state_cap {
            return Err(Error::ResourceCap { what: "automaton states", cap: options.state_cap });
        }
        i += 1;
    }
    let fail = profiles.len() as u32;
    let transitions = targets.into_iter().map(|t| t.unwrap_or(fail)).collect();
    Ok(GeodesicAutomaton {
        delta,
        k: ctx.k,
        names: gens.letters().iter().map(|l| l.name.clone()).collect(),
        weights: gens.letters().iter().map(|l| l.weight).collect(),
        ball: ctx.ball,
        profiles,
        transitions,
        start: 0,
    })
}
