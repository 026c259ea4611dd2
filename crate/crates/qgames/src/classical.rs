//! Finite two-player games and classical randomization environments.
//!
//! A classical environment hands each player a set of random variables on a
//! shared finite sample space; conditioning on a variable's realization is
//! how players randomize. A variable is interchangeable with the partition
//! it induces, so the strategies available through a variable are all of its
//! relabelings. Restricting each player to a single variable recovers
//! Aumann's correlated equilibrium.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{self, rat, Constraint, Relation, Solved};

/// Comparison slack for equilibrium checks.
pub const EQUILIBRIUM_TOL: f64 = 1e-10;

/// Tolerance for probability normalization.
pub const PROBABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// A finite bimatrix game: labelled strategy sets and a full payoff table.
#[derive(Debug, Clone)]
pub struct BimatrixGame {
    strategies: [Vec<String>; 2],
    payoffs: Vec<(f64, f64)>, // row-major over S1 x S2
}

impl BimatrixGame {
    pub fn new(
        strategies_one: Vec<String>,
        strategies_two: Vec<String>,
        payoffs: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if strategies_one.is_empty() || strategies_two.is_empty() {
            return Err(Error::InvalidGame("empty strategy set".into()));
        }
        if payoffs.len() != strategies_one.len() * strategies_two.len() {
            return Err(Error::InvalidGame(format!(
                "payoff table has {} cells, expected {}",
                payoffs.len(),
                strategies_one.len() * strategies_two.len()
            )));
        }
        if payoffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidGame("non-finite payoff".into()));
        }
        Ok(Self {
            strategies: [strategies_one, strategies_two],
            payoffs,
        })
    }

    /// Convenience constructor for 2x2 games, cells row-major.
    pub fn two_by_two(
        labels_one: [&str; 2],
        labels_two: [&str; 2],
        cells: [(f64, f64); 4],
    ) -> Self {
        Self::new(
            labels_one.map(String::from).to_vec(),
            labels_two.map(String::from).to_vec(),
            cells.to_vec(),
        )
        .expect("valid 2x2 game")
    }

    pub fn strategy_count(&self, player: Player) -> usize {
        self.strategies[player.index()].len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.strategies[0].len(), self.strategies[1].len())
    }

    pub fn strategies(&self, player: Player) -> &[String] {
        &self.strategies[player.index()]
    }

    pub fn strategy_index(&self, player: Player, label: &str) -> Option<usize> {
        self.strategies[player.index()]
            .iter()
            .position(|s| s == label)
    }

    pub fn payoff(&self, s1: usize, s2: usize) -> (f64, f64) {
        self.payoffs[s1 * self.strategies[1].len() + s2]
    }

    pub fn payoff_for(&self, player: Player, s1: usize, s2: usize) -> f64 {
        let (a, b) = self.payoff(s1, s2);
        match player {
            Player::One => a,
            Player::Two => b,
        }
    }

    pub fn payoffs(&self) -> &[(f64, f64)] {
        &self.payoffs
    }
}

/// A probability distribution over strategy pairs of a `(n1, n2)` game,
/// stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    shape: (usize, usize),
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(shape: (usize, usize), probs: Vec<f64>) -> Result<Self> {
        if probs.len() != shape.0 * shape.1 {
            return Err(Error::BadDistribution {
                reason: format!("{} entries for shape {:?}", probs.len(), shape),
            });
        }
        for p in &probs {
            if !p.is_finite() || *p < -PROBABILITY_TOL {
                return Err(Error::BadDistribution {
                    reason: format!("entry {p} out of range"),
                });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::BadDistribution {
                reason: format!("sum {sum} != 1"),
            });
        }
        Ok(Self {
            shape,
            probs: probs.into_iter().map(|p| p.max(0.0)).collect(),
        })
    }

    pub fn point_mass(shape: (usize, usize), s1: usize, s2: usize) -> Self {
        let mut probs = vec![0.0; shape.0 * shape.1];
        probs[s1 * shape.1 + s2] = 1.0;
        Self { shape, probs }
    }

    pub fn uniform(shape: (usize, usize)) -> Self {
        let n = shape.0 * shape.1;
        Self {
            shape,
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn probability(&self, s1: usize, s2: usize) -> f64 {
        self.probs[s1 * self.shape.1 + s2]
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn marginal(&self, player: Player) -> Vec<f64> {
        let (n1, n2) = self.shape;
        match player {
            Player::One => (0..n1)
                .map(|i| (0..n2).map(|j| self.probability(i, j)).sum())
                .collect(),
            Player::Two => (0..n2)
                .map(|j| (0..n1).map(|i| self.probability(i, j)).sum())
                .collect(),
        }
    }

    /// Convex combination `w * self + (1 - w) * other`.
    pub fn mix(&self, other: &JointDistribution, w: f64) -> Result<JointDistribution> {
        if self.shape != other.shape {
            return Err(Error::BadDistribution {
                reason: "shape mismatch in mix".into(),
            });
        }
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| w * a + (1.0 - w) * b)
            .collect();
        JointDistribution::new(self.shape, probs)
    }
}

/// A finite probability space; atoms are indices `0..len`.
#[derive(Debug, Clone)]
pub struct FiniteSampleSpace {
    probs: Vec<f64>,
}

impl FiniteSampleSpace {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::BadDistribution {
                reason: "empty sample space".into(),
            });
        }
        for p in &probs {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::BadDistribution {
                    reason: format!("atom probability {p}"),
                });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::BadDistribution {
                reason: format!("atom probabilities sum to {sum}"),
            });
        }
        Ok(Self { probs })
    }

    pub fn uniform(atoms: usize) -> Self {
        Self {
            probs: vec![1.0 / atoms as f64; atoms],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probability(&self, atom: usize) -> f64 {
        self.probs[atom]
    }
}

/// A strategy-valued random variable: one strategy index per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    name: String,
    values: Vec<usize>,
}

impl RandomVariable {
    pub fn new(name: impl Into<String>, values: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    pub fn constant(name: impl Into<String>, atoms: usize, value: usize) -> Self {
        Self {
            name: name.into(),
            values: vec![value; atoms],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value_at(&self, atom: usize) -> usize {
        self.values[atom]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Post-composition with a strategy relabeling.
    pub fn relabeled(&self, map: &[usize], name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            values: self.values.iter().map(|&v| map[v]).collect(),
        }
    }
}

/// Per-player sets of random variables on a shared sample space.
///
/// Each stored variable stands for the partition it induces, so the
/// strategies it makes available are all of its relabelings.
#[derive(Debug, Clone)]
pub struct ClassicalEnvironment {
    space: FiniteSampleSpace,
    variables: [Vec<RandomVariable>; 2],
}

impl ClassicalEnvironment {
    pub fn new(
        space: FiniteSampleSpace,
        variables_one: Vec<RandomVariable>,
        variables_two: Vec<RandomVariable>,
    ) -> Result<Self> {
        for v in variables_one.iter().chain(variables_two.iter()) {
            if v.values.len() != space.len() {
                return Err(Error::InvalidGame(format!(
                    "variable {} defined on {} atoms, space has {}",
                    v.name,
                    v.values.len(),
                    space.len()
                )));
            }
        }
        Ok(Self {
            space,
            variables: [variables_one, variables_two],
        })
    }

    /// Environment containing every map from atoms to strategies.
    /// Exponential in the number of atoms; intended for small spaces.
    pub fn full(space: FiniteSampleSpace, strategy_counts: (usize, usize)) -> Self {
        let atoms = space.len();
        let build = |n: usize, tag: &str| -> Vec<RandomVariable> {
            let total = n.pow(atoms as u32);
            (0..total)
                .map(|code| {
                    let values: Vec<usize> =
                        (0..atoms).map(|a| (code / n.pow(a as u32)) % n).collect();
                    RandomVariable::new(format!("{tag}{code}"), values)
                })
                .collect()
        };
        let variables = [
            build(strategy_counts.0, "f"),
            build(strategy_counts.1, "g"),
        ];
        Self { space, variables }
    }

    pub fn space(&self) -> &FiniteSampleSpace {
        &self.space
    }

    pub fn variables(&self, player: Player) -> &[RandomVariable] {
        &self.variables[player.index()]
    }
}

/// Pushforward distribution of `(x, y)` on the strategy product.
pub fn induced_distribution(
    space: &FiniteSampleSpace,
    x: &RandomVariable,
    y: &RandomVariable,
    shape: (usize, usize),
) -> Result<JointDistribution> {
    if x.values.len() != space.len() || y.values.len() != space.len() {
        return Err(Error::InvalidGame(
            "variable not defined on the sample space".into(),
        ));
    }
    let mut probs = vec![0.0; shape.0 * shape.1];
    for atom in 0..space.len() {
        let (i, j) = (x.value_at(atom), y.value_at(atom));
        if i >= shape.0 || j >= shape.1 {
            return Err(Error::InvalidGame(format!(
                "variable value ({i}, {j}) outside shape {shape:?}"
            )));
        }
        probs[i * shape.1 + j] += space.probability(atom);
    }
    JointDistribution::new(shape, probs)
}

/// Expected payoff pair under a distribution over strategy pairs.
pub fn expected_payoffs(game: &BimatrixGame, dist: &JointDistribution) -> Result<(f64, f64)> {
    if dist.shape() != game.shape() {
        return Err(Error::InvalidGame(format!(
            "distribution shape {:?} does not match game {:?}",
            dist.shape(),
            game.shape()
        )));
    }
    let (n1, n2) = game.shape();
    let mut totals = (0.0, 0.0);
    for i in 0..n1 {
        for j in 0..n2 {
            let p = dist.probability(i, j);
            let (a, b) = game.payoff(i, j);
            totals.0 += p * a;
            totals.1 += p * b;
        }
    }
    Ok(totals)
}

/// Whether strategies `s` and `t` of `player` give both players identical
/// payoffs against every opponent strategy.
pub fn strategies_equivalent(game: &BimatrixGame, player: Player, s: usize, t: usize) -> bool {
    let opponent = game.strategy_count(player.other());
    (0..opponent).all(|u| {
        let (cell_s, cell_t) = match player {
            Player::One => (game.payoff(s, u), game.payoff(t, u)),
            Player::Two => (game.payoff(u, s), game.payoff(u, t)),
        };
        (cell_s.0 - cell_t.0).abs() <= PROBABILITY_TOL && (cell_s.1 - cell_t.1).abs() <= PROBABILITY_TOL
    })
}

/// Aumann obedience: no player can gain more than the slack by remapping a
/// recommended strategy, conditional on receiving it.
pub fn is_correlated_equilibrium(game: &BimatrixGame, dist: &JointDistribution) -> bool {
    if dist.shape() != game.shape() {
        return false;
    }
    let (n1, n2) = game.shape();
    for s in 0..n1 {
        for alt in 0..n1 {
            if alt == s {
                continue;
            }
            let gain: f64 = (0..n2)
                .map(|t| {
                    dist.probability(s, t)
                        * (game.payoff_for(Player::One, alt, t)
                            - game.payoff_for(Player::One, s, t))
                })
                .sum();
            if gain > EQUILIBRIUM_TOL {
                return false;
            }
        }
    }
    for t in 0..n2 {
        for alt in 0..n2 {
            if alt == t {
                continue;
            }
            let gain: f64 = (0..n1)
                .map(|s| {
                    dist.probability(s, t)
                        * (game.payoff_for(Player::Two, s, alt)
                            - game.payoff_for(Player::Two, s, t))
                })
                .sum();
            if gain > EQUILIBRIUM_TOL {
                return false;
            }
        }
    }
    true
}

/// Pure-strategy Nash check within the game's own strategy sets.
pub fn is_nash(game: &BimatrixGame, profile: (usize, usize)) -> bool {
    let (s1, s2) = profile;
    let base_one = game.payoff_for(Player::One, s1, s2);
    let base_two = game.payoff_for(Player::Two, s1, s2);
    let no_gain_one = (0..game.strategy_count(Player::One))
        .all(|alt| game.payoff_for(Player::One, alt, s2) <= base_one + EQUILIBRIUM_TOL);
    let no_gain_two = (0..game.strategy_count(Player::Two))
        .all(|alt| game.payoff_for(Player::Two, s1, alt) <= base_two + EQUILIBRIUM_TOL);
    no_gain_one && no_gain_two
}

fn relabelings(n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|code| (0..n).map(|k| (code / n.pow(k as u32)) % n).collect())
        .collect()
}

fn closure_variables(
    game: &BimatrixGame,
    env: &ClassicalEnvironment,
    player: Player,
) -> Vec<RandomVariable> {
    let n = game.strategy_count(player);
    let maps = relabelings(n);
    let mut out = Vec::new();
    for v in env.variables(player) {
        for map in &maps {
            let desc: String = map
                .iter()
                .map(|&t| game.strategies(player)[t].as_str())
                .collect::<Vec<_>>()
                .join("");
            out.push(v.relabeled(map, format!("{}:{}", v.name(), desc)));
        }
    }
    out
}

/// The game whose strategies are all variables available through the
/// environment (every relabeling of every stored variable) and whose
/// payoffs are expectations over the shared space.
pub fn environment_game(game: &BimatrixGame, env: &ClassicalEnvironment) -> Result<BimatrixGame> {
    let vars_one = closure_variables(game, env, Player::One);
    let vars_two = closure_variables(game, env, Player::Two);
    let mut payoffs = Vec::with_capacity(vars_one.len() * vars_two.len());
    for x in &vars_one {
        for y in &vars_two {
            let dist = induced_distribution(env.space(), x, y, game.shape())?;
            payoffs.push(expected_payoffs(game, &dist)?);
        }
    }
    BimatrixGame::new(
        vars_one.into_iter().map(|v| v.name).collect(),
        vars_two.into_iter().map(|v| v.name).collect(),
        payoffs,
    )
}

/// Whether the profile (indices into each player's stored variable list) is
/// a Nash equilibrium of the environment game: no player gains by switching
/// to any relabeling of any of their variables.
pub fn is_nash_in_environment(
    game: &BimatrixGame,
    env: &ClassicalEnvironment,
    profile: (usize, usize),
) -> Result<bool> {
    for (player, index) in [(Player::One, profile.0), (Player::Two, profile.1)] {
        let len = env.variables(player).len();
        if index >= len {
            return Err(Error::VariableOutsideEnvironment {
                player: player.index() + 1,
                index,
                len,
            });
        }
    }
    let expanded = environment_game(game, env)?;
    // A stored variable appears in the closure at its own block's identity
    // relabeling.
    let identity_offset = |player: Player| -> usize {
        let n = game.strategy_count(player);
        (0..n).map(|k| k * n.pow(k as u32)).sum()
    };
    let per_block = |player: Player| {
        let n = game.strategy_count(player);
        n.pow(n as u32)
    };
    let s1 = profile.0 * per_block(Player::One) + identity_offset(Player::One);
    let s2 = profile.1 * per_block(Player::Two) + identity_offset(Player::Two);
    Ok(is_nash(&expanded, (s1, s2)))
}

/// Maximizes a linear objective over the correlated-equilibrium polytope.
///
/// The polytope is cut out by the Aumann obedience inequalities together
/// with the probability simplex; the optimum is computed in exact rational
/// arithmetic and converted to floats on the way out.
pub fn ce_polytope_optimize(
    game: &BimatrixGame,
    objective: &[f64],
) -> Result<(f64, JointDistribution)> {
    let (n1, n2) = game.shape();
    if objective.len() != n1 * n2 {
        return Err(Error::InvalidGame(format!(
            "objective has {} weights, expected {}",
            objective.len(),
            n1 * n2
        )));
    }
    if objective.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite {
            context: "objective weights",
        });
    }

    let var = |i: usize, j: usize| i * n2 + j;
    let mut constraints = Vec::new();

    let mut simplex = vec![rat(0.0); n1 * n2];
    for v in simplex.iter_mut() {
        *v = rat(1.0);
    }
    constraints.push(Constraint::new(simplex, Relation::Equal, rat(1.0)));

    for s in 0..n1 {
        for alt in 0..n1 {
            if alt == s {
                continue;
            }
            let mut coeffs = vec![rat(0.0); n1 * n2];
            for t in 0..n2 {
                coeffs[var(s, t)] = rat(
                    game.payoff_for(Player::One, alt, t) - game.payoff_for(Player::One, s, t),
                );
            }
            constraints.push(Constraint::new(coeffs, Relation::LessEq, rat(0.0)));
        }
    }
    for t in 0..n2 {
        for alt in 0..n2 {
            if alt == t {
                continue;
            }
            let mut coeffs = vec![rat(0.0); n1 * n2];
            for s in 0..n1 {
                coeffs[var(s, t)] = rat(
                    game.payoff_for(Player::Two, s, alt) - game.payoff_for(Player::Two, s, t),
                );
            }
            constraints.push(Constraint::new(coeffs, Relation::LessEq, rat(0.0)));
        }
    }

    let objective: Vec<_> = objective.iter().map(|&w| rat(w)).collect();
    match lp::maximize(&objective, &constraints)? {
        Solved::Optimal { value, solution } => {
            use num_traits::ToPrimitive;
            let probs: Vec<f64> = solution
                .iter()
                .map(|r| r.to_f64().unwrap_or(0.0))
                .collect();
            let dist = JointDistribution::new((n1, n2), probs)?;
            Ok((value.to_f64().unwrap_or(f64::NAN), dist))
        }
        Solved::Infeasible => Err(Error::Solver(
            "correlated-equilibrium polytope reported infeasible".into(),
        )),
        Solved::Unbounded => Err(Error::Solver(
            "bounded polytope reported unbounded".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Anti-coordination game used throughout: off-diagonal cells pay.
    fn crossing_game() -> BimatrixGame {
        BimatrixGame::two_by_two(
            ["H", "T"],
            ["H", "T"],
            [(0.0, 0.0), (2.0, 1.0), (1.0, 2.0), (0.0, 0.0)],
        )
    }

    // Shared 24-atom space realizing the two pairwise joints used in the
    // crossing-game example: (X, W) with diagonal mass 1/8 and (Y, W) with
    // diagonal mass 1/12. The X/Y coupling is arbitrary.
    fn crossing_environment() -> (ClassicalEnvironment, [RandomVariable; 3]) {
        let space = FiniteSampleSpace::uniform(24);
        let w_vals: Vec<usize> = (0..24).map(|a| usize::from(a >= 12)).collect();
        let x_vals: Vec<usize> = (0..24)
            .map(|a| match a {
                0..=2 => 0,   // W = H block: 3 atoms of X = H
                3..=11 => 1,  // 9 atoms of X = T
                12..=14 => 1, // W = T block: 3 atoms of X = T
                _ => 0,       // 9 atoms of X = H
            })
            .collect();
        let y_vals: Vec<usize> = (0..24)
            .map(|a| match a {
                0..=1 => 0,   // W = H block: 2 atoms of Y = H
                2..=11 => 1,  // 10 atoms of Y = T
                12..=13 => 1, // W = T block: 2 atoms of Y = T
                _ => 0,       // 10 atoms of Y = H
            })
            .collect();
        let x = RandomVariable::new("X", x_vals);
        let y = RandomVariable::new("Y", y_vals);
        let w = RandomVariable::new("W", w_vals);
        let env = ClassicalEnvironment::new(
            space,
            vec![x.clone(), y.clone()],
            vec![w.clone()],
        )
        .unwrap();
        (env, [x, y, w])
    }

    #[test]
    fn constant_variables_induce_point_mass() {
        let space = FiniteSampleSpace::uniform(3);
        let x = RandomVariable::constant("X", 3, 0);
        let y = RandomVariable::constant("Y", 3, 1);
        let dist = induced_distribution(&space, &x, &y, (2, 2)).unwrap();
        assert_eq!(dist.probability(0, 1), 1.0);
    }

    #[test]
    fn perfectly_correlated_coin() {
        let space = FiniteSampleSpace::uniform(2);
        let id = RandomVariable::new("I", vec![0, 1]);
        let dist = induced_distribution(&space, &id, &id, (2, 2)).unwrap();
        assert_abs_diff_eq!(dist.probability(0, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.probability(1, 1), 0.5, epsilon = 1e-15);
        assert_eq!(dist.probability(0, 1), 0.0);
    }

    #[test]
    fn crossing_environment_realizes_both_tables() {
        let (env, [x, y, w]) = crossing_environment();
        let xw = induced_distribution(env.space(), &x, &w, (2, 2)).unwrap();
        assert_abs_diff_eq!(xw.probability(0, 0), 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(xw.probability(1, 1), 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(xw.probability(0, 1), 0.375, epsilon = 1e-12);
        assert_abs_diff_eq!(xw.probability(1, 0), 0.375, epsilon = 1e-12);
        let yw = induced_distribution(env.space(), &y, &w, (2, 2)).unwrap();
        assert_abs_diff_eq!(yw.probability(0, 0), 1.0 / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(yw.probability(0, 1), 5.0 / 12.0, epsilon = 1e-12);
    }

    #[test]
    fn expected_payoffs_reference_values() {
        let game = crossing_game();
        let point = JointDistribution::point_mass((2, 2), 0, 1);
        assert_eq!(expected_payoffs(&game, &point).unwrap(), (2.0, 1.0));

        let uniform = JointDistribution::uniform((2, 2));
        let (a, b) = expected_payoffs(&game, &uniform).unwrap();
        assert_abs_diff_eq!(a, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 0.75, epsilon = 1e-15);

        let xw = JointDistribution::new((2, 2), vec![0.125, 0.375, 0.375, 0.125]).unwrap();
        let (a, _) = expected_payoffs(&game, &xw).unwrap();
        assert_eq!(a, 1.125);
    }

    #[test]
    fn equivalence_checks() {
        let game = crossing_game();
        assert!(strategies_equivalent(&game, Player::One, 0, 0));
        assert!(!strategies_equivalent(&game, Player::One, 0, 1));

        let twin_rows = BimatrixGame::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into()],
            vec![(1.0, 2.0), (3.0, 4.0), (1.0, 2.0), (3.0, 4.0)],
        )
        .unwrap();
        assert!(strategies_equivalent(&twin_rows, Player::One, 0, 1));
    }

    #[test]
    fn correlated_equilibrium_checks() {
        let game = crossing_game();
        let xw = JointDistribution::new((2, 2), vec![0.125, 0.375, 0.375, 0.125]).unwrap();
        let yw = JointDistribution::new(
            (2, 2),
            vec![1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0],
        )
        .unwrap();
        assert!(is_correlated_equilibrium(&game, &xw));
        assert!(is_correlated_equilibrium(&game, &yw));
        let hh = JointDistribution::point_mass((2, 2), 0, 0);
        assert!(!is_correlated_equilibrium(&game, &hh));
    }

    #[test]
    fn nash_in_environment_distinguishes_profiles() {
        let game = crossing_game();
        let (env, _) = crossing_environment();
        // Player One can switch from X to Y (or any relabeling).
        assert!(!is_nash_in_environment(&game, &env, (0, 0)).unwrap());
        assert!(is_nash_in_environment(&game, &env, (1, 0)).unwrap());
    }

    #[test]
    fn singleton_environment_matches_ce_check() {
        let game = crossing_game();
        let (full_env, [x, _, w]) = crossing_environment();
        let env = ClassicalEnvironment::new(
            full_env.space().clone(),
            vec![x.clone()],
            vec![w.clone()],
        )
        .unwrap();
        assert!(is_nash_in_environment(&game, &env, (0, 0)).unwrap());
    }

    #[test]
    fn out_of_range_profile_is_an_error() {
        let game = crossing_game();
        let (env, _) = crossing_environment();
        assert!(matches!(
            is_nash_in_environment(&game, &env, (5, 0)),
            Err(Error::VariableOutsideEnvironment { .. })
        ));
    }

    #[test]
    fn dominant_strategy_game_has_unique_ce() {
        // Defection strictly dominant for both players.
        let game = BimatrixGame::two_by_two(
            ["C", "D"],
            ["C", "D"],
            [(3.0, 3.0), (0.0, 5.0), (5.0, 0.0), (1.0, 1.0)],
        );
        for objective in [
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0, 1.0],
        ] {
            let (value, dist) = ce_polytope_optimize(&game, &objective).unwrap();
            assert_abs_diff_eq!(dist.probability(1, 1), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(value, objective[3], epsilon = 1e-12);
        }
    }

    #[test]
    fn ce_polytope_contains_known_equilibrium() {
        let game = crossing_game();
        let xw = JointDistribution::new((2, 2), vec![0.125, 0.375, 0.375, 0.125]).unwrap();
        let (value, dist) = ce_polytope_optimize(&game, &[0.0, 2.0, 1.0, 0.0]).unwrap();
        // Optimum must dominate the known feasible point and itself be a CE.
        let (p1_at_xw, _) = expected_payoffs(&game, &xw).unwrap();
        assert!(value >= p1_at_xw - 1e-12);
        assert!(is_correlated_equilibrium(&game, &dist));
    }
}
