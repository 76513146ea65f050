use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::constraints::{Color, ConstraintRef, ConstraintSystem};

/// Default variable cap for [`count_colorings`].
pub const COUNT_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{0} variables exceed the counting limit {1}")]
    TooLarge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
}

/// One forced assignment and the constraint that forced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub var: usize,
    pub color: Color,
    pub by: ConstraintRef,
    pub constraint: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub var: usize,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// The cited constraint is violated after propagation.
    Conflict { by: ConstraintRef, constraint: String },
    /// Children: the white branch, then the black branch, on one variable.
    Split(Box<[RefutationNode; 2]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationNode {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decision: Option<Decision>,
    pub propagations: Vec<Step>,
    pub outcome: Outcome,
}

impl RefutationNode {
    pub fn node_count(&self) -> usize {
        1 + match &self.outcome {
            Outcome::Conflict { .. } => 0,
            Outcome::Split(ch) => ch[0].node_count() + ch[1].node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.outcome {
            Outcome::Conflict { .. } => 0,
            Outcome::Split(ch) => 1 + ch[0].depth().max(ch[1].depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub num_vars: usize,
    /// White variables of the lexicographically least coloring.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub white: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refutation: Option<RefutationNode>,
}

impl Certificate {
    pub fn coloring(&self) -> Option<Vec<Color>> {
        let white = self.white.as_ref()?;
        let mut c = vec![Color::Black; self.num_vars];
        for &w in white {
            c[w] = Color::White;
        }
        Some(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Constraints touching each variable, in constraint order.
fn watch_lists(cs: &ConstraintSystem) -> Vec<Vec<ConstraintRef>> {
    let mut w = vec![Vec::new(); cs.num_vars];
    for (k, &(a, b)) in cs.ortho_pairs.iter().enumerate() {
        w[a].push(ConstraintRef::Pair(k));
        if b != a {
            w[b].push(ConstraintRef::Pair(k));
        }
    }
    for (k, d) in cs.decompositions.iter().enumerate() {
        for &v in d {
            w[v].push(ConstraintRef::Decomposition(k));
        }
    }
    w
}

enum Eval {
    Conflict,
    Force(Vec<(usize, Color)>),
}

/// Reads the constraint under a partial assignment.
fn evaluate(cs: &ConstraintSystem, c: ConstraintRef, assign: &[Option<Color>]) -> Eval {
    let (vars, exactly_one): (Vec<usize>, bool) = match c {
        ConstraintRef::Pair(k) => {
            let (a, b) = cs.ortho_pairs[k];
            if a == b {
                return match assign[a] {
                    Some(Color::White) => Eval::Conflict,
                    Some(Color::Black) => Eval::Force(vec![]),
                    None => Eval::Force(vec![(a, Color::Black)]),
                };
            }
            (vec![a, b], false)
        }
        ConstraintRef::Decomposition(k) => (cs.decompositions[k].clone(), true),
    };
    let whites = vars.iter().filter(|&&v| assign[v] == Some(Color::White)).count();
    let open: Vec<usize> = vars.iter().copied().filter(|&v| assign[v].is_none()).collect();
    match whites {
        0 if exactly_one && open.is_empty() => Eval::Conflict,
        0 if exactly_one && open.len() == 1 => Eval::Force(vec![(open[0], Color::White)]),
        0 => Eval::Force(vec![]),
        1 => Eval::Force(open.into_iter().map(|v| (v, Color::Black)).collect()),
        _ => Eval::Conflict,
    }
}

struct Solver<'a> {
    cs: &'a ConstraintSystem,
    watches: Vec<Vec<ConstraintRef>>,
    all: Vec<ConstraintRef>,
}

#[derive(Clone)]
struct State {
    assign: Vec<Option<Color>>,
}

enum Search {
    Sat(Vec<Color>),
    Unsat(RefutationNode),
}

impl<'a> Solver<'a> {
    fn new(cs: &'a ConstraintSystem) -> Self {
        let all = (0..cs.ortho_pairs.len())
            .map(ConstraintRef::Pair)
            .chain((0..cs.decompositions.len()).map(ConstraintRef::Decomposition))
            .collect();
        Solver { cs, watches: watch_lists(cs), all }
    }

    fn step(&self, var: usize, color: Color, by: ConstraintRef) -> Step {
        Step { var, color, by, constraint: self.cs.constraint_name(by) }
    }

    /// FIFO unit propagation. `seed = None` scans every constraint once first.
    fn propagate(&self, state: &mut State, seed: Option<usize>, steps: &mut Vec<Step>) -> Result<(), ConstraintRef> {
        let mut queue = std::collections::VecDeque::new();
        let visit = |state: &mut State, c: ConstraintRef, queue: &mut std::collections::VecDeque<usize>, steps: &mut Vec<Step>| {
            match evaluate(self.cs, c, &state.assign) {
                Eval::Conflict => Err(c),
                Eval::Force(forced) => {
                    for (v, color) in forced {
                        state.assign[v] = Some(color);
                        steps.push(self.step(v, color, c));
                        queue.push_back(v);
                    }
                    Ok(())
                }
            }
        };
        match seed {
            None => {
                for &c in &self.all {
                    visit(state, c, &mut queue, steps)?;
                }
            }
            Some(v) => queue.push_back(v),
        }
        while let Some(v) = queue.pop_front() {
            for &c in &self.watches[v] {
                visit(state, c, &mut queue, steps)?;
            }
        }
        Ok(())
    }

    fn node(&self, mut state: State, decision: Option<Decision>, parallel_depth: usize) -> Search {
        let mut steps = Vec::new();
        if let Some(d) = decision {
            state.assign[d.var] = Some(d.color);
        }
        if let Err(c) = self.propagate(&mut state, decision.map(|d| d.var), &mut steps) {
            return Search::Unsat(RefutationNode {
                decision,
                propagations: steps,
                outcome: Outcome::Conflict { by: c, constraint: self.cs.constraint_name(c) },
            });
        }
        let Some(var) = state.assign.iter().position(Option::is_none) else {
            return Search::Sat(state.assign.into_iter().map(|c| c.expect("assigned")).collect());
        };
        let white = Decision { var, color: Color::White };
        let black = Decision { var, color: Color::Black };
        let (w, b) = if parallel_depth > 0 {
            let (sw, sb) = (state.clone(), state);
            rayon::join(|| self.node(sw, Some(white), parallel_depth - 1), || self.node(sb, Some(black), parallel_depth - 1))
        } else {
            let w = self.node(state.clone(), Some(white), 0);
            if matches!(w, Search::Sat(_)) {
                return w;
            }
            (w, self.node(state, Some(black), 0))
        };
        match (w, b) {
            (Search::Sat(c), _) | (_, Search::Sat(c)) => Search::Sat(c),
            (Search::Unsat(w), Search::Unsat(b)) => Search::Unsat(RefutationNode {
                decision,
                propagations: steps,
                outcome: Outcome::Split(Box::new([w, b])),
            }),
        }
    }

    fn count(&self, mut state: State, decision: Option<Decision>, sink: &mut dyn FnMut(&[Option<Color>]) -> bool) -> bool {
        if let Some(d) = decision {
            state.assign[d.var] = Some(d.color);
        }
        if self.propagate(&mut state, decision.map(|d| d.var), &mut Vec::new()).is_err() {
            return true;
        }
        let Some(var) = state.assign.iter().position(Option::is_none) else {
            return sink(&state.assign);
        };
        self.count(state.clone(), Some(Decision { var, color: Color::White }), sink)
            && self.count(state, Some(Decision { var, color: Color::Black }), sink)
    }
}

/// Complete search branching on the lowest unassigned variable, white first.
/// SAT yields the lexicographically least coloring (white < black).
pub fn solve(cs: &ConstraintSystem) -> Certificate {
    solve_parallel(cs, 0)
}

/// As [`solve`], exploring both branches concurrently down to `depth`;
/// the certificate is identical to the sequential one.
pub fn solve_parallel(cs: &ConstraintSystem, depth: usize) -> Certificate {
    let solver = Solver::new(cs);
    let state = State { assign: vec![None; cs.num_vars] };
    match solver.node(state, None, depth) {
        Search::Sat(c) => Certificate {
            verdict: Verdict::Sat,
            num_vars: cs.num_vars,
            white: Some((0..c.len()).filter(|&i| c[i] == Color::White).collect()),
            refutation: None,
        },
        Search::Unsat(node) => Certificate { verdict: Verdict::Unsat, num_vars: cs.num_vars, white: None, refutation: Some(node) },
    }
}

/// Number of valid colorings; refuses more than `limit` variables
/// ([`COUNT_LIMIT`] when `None`).
pub fn count_colorings(cs: &ConstraintSystem, limit: Option<usize>) -> Result<u128, SolverError> {
    let limit = limit.unwrap_or(COUNT_LIMIT);
    if cs.num_vars > limit {
        return Err(SolverError::TooLarge(cs.num_vars, limit));
    }
    let mut n = 0u128;
    Solver::new(cs).count(State { assign: vec![None; cs.num_vars] }, None, &mut |_| {
        n += 1;
        true
    });
    Ok(n)
}

/// Valid colorings in lexicographic order, at most `max` of them.
pub fn all_colorings(cs: &ConstraintSystem, max: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    if max == 0 {
        return out;
    }
    Solver::new(cs).count(State { assign: vec![None; cs.num_vars] }, None, &mut |a| {
        out.push(a.iter().map(|c| c.expect("assigned")).collect());
        out.len() < max
    });
    out
}

/// Every coloring of `2^num_vars`, filtered by [`ConstraintSystem::check`].
pub fn brute_force_count(cs: &ConstraintSystem) -> u128 {
    use rayon::prelude::*;
    assert!(cs.num_vars <= 30, "brute force is limited to 30 variables");
    (0u64..1 << cs.num_vars)
        .into_par_iter()
        .filter(|mask| {
            let c: Vec<Color> = (0..cs.num_vars).map(|i| if mask >> i & 1 == 1 { Color::White } else { Color::Black }).collect();
            cs.check(&c).is_ok()
        })
        .count() as u128
}
