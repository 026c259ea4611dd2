//! Games of private information and their contingent-strategy expansions.
//!
//! Nature draws a signal pair; each player sees only their own signal and
//! then acts. Folding the signals into contingent plans produces an ordinary
//! bimatrix game. Classically it does not matter whether players randomize
//! before or after forming contingent plans — the two constructions are
//! isomorphic ([`kuhn_check`]) — but with quantum coins the behavioral game
//! can escape every stochastic extension of the contingent game
//! ([`is_stochastic_extension`]).

use serde::Serialize;

use crate::classical::{BimatrixGame, ClassicalEnvironment, Player};
use crate::error::{Error, Result};
use crate::lp::{self, rat, Constraint, Relation, Solved};
use crate::quantum::{outcome_distribution, Outcome, PlayerMove, SpecialUnitary, TwoQubitState};

/// Tolerance for payoff identities.
pub const PAYOFF_TOL: f64 = 1e-12;

/// Slack for convex-hull membership in the stochastic-extension test.
pub const HULL_TOL: f64 = 1e-9;

/// A two-player game of private information: signal sets, a prior over
/// signal pairs, and a payoff table indexed by signals and strategies.
#[derive(Debug, Clone)]
pub struct PrivateInfoGame {
    signals: [Vec<String>; 2],
    strategies: [Vec<String>; 2],
    prior: Vec<f64>,          // over A1 x A2, row-major
    payoffs: Vec<(f64, f64)>, // indexed ((a1 * |A2| + a2) * n1 + s1) * n2 + s2
}

impl PrivateInfoGame {
    pub fn new(
        signals: [Vec<String>; 2],
        strategies: [Vec<String>; 2],
        prior: Vec<f64>,
        payoffs: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if signals[0].is_empty()
            || signals[1].is_empty()
            || strategies[0].is_empty()
            || strategies[1].is_empty()
        {
            return Err(Error::InvalidGame("empty signal or strategy set".into()));
        }
        let pairs = signals[0].len() * signals[1].len();
        if prior.len() != pairs {
            return Err(Error::InvalidGame(format!(
                "prior has {} entries, expected {pairs}",
                prior.len()
            )));
        }
        for p in &prior {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::BadDistribution {
                    reason: format!("prior entry {p}"),
                });
            }
        }
        let sum: f64 = prior.iter().sum();
        if (sum - 1.0).abs() > PAYOFF_TOL {
            return Err(Error::BadDistribution {
                reason: format!("prior sums to {sum}"),
            });
        }
        let cells = pairs * strategies[0].len() * strategies[1].len();
        if payoffs.len() != cells {
            return Err(Error::InvalidGame(format!(
                "payoff table has {} cells, expected {cells}",
                payoffs.len()
            )));
        }
        if payoffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidGame("non-finite payoff".into()));
        }
        Ok(Self {
            signals,
            strategies,
            prior,
            payoffs,
        })
    }

    pub fn signal_count(&self, player: Player) -> usize {
        self.signals[player.index()].len()
    }

    pub fn signals(&self, player: Player) -> &[String] {
        &self.signals[player.index()]
    }

    pub fn strategy_count(&self, player: Player) -> usize {
        self.strategies[player.index()].len()
    }

    pub fn strategies(&self, player: Player) -> &[String] {
        &self.strategies[player.index()]
    }

    pub fn prior(&self, a1: usize, a2: usize) -> f64 {
        self.prior[a1 * self.signals[1].len() + a2]
    }

    pub fn payoff(&self, a1: usize, a2: usize, s1: usize, s2: usize) -> (f64, f64) {
        let (n1, n2) = (self.strategies[0].len(), self.strategies[1].len());
        self.payoffs[((a1 * self.signals[1].len() + a2) * n1 + s1) * n2 + s2]
    }

    pub fn payoff_for(&self, player: Player, a1: usize, a2: usize, s1: usize, s2: usize) -> f64 {
        let (x, y) = self.payoff(a1, a2, s1, s2);
        match player {
            Player::One => x,
            Player::Two => y,
        }
    }

    fn require_binary(&self) -> Result<()> {
        for player in Player::BOTH {
            let got = self.strategy_count(player);
            if got != 2 {
                return Err(Error::StrategyArity { got });
            }
        }
        Ok(())
    }
}

/// A contingent plan: one strategy index per own signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingentStrategy {
    choices: Vec<usize>,
}

impl ContingentStrategy {
    pub fn new(choices: Vec<usize>) -> Self {
        Self { choices }
    }

    pub fn choice(&self, signal: usize) -> usize {
        self.choices[signal]
    }

    /// All contingent plans, first signal varying slowest.
    pub fn enumerate(signal_count: usize, strategy_count: usize) -> Vec<ContingentStrategy> {
        let total = strategy_count.pow(signal_count as u32);
        (0..total)
            .map(|code| {
                let choices = (0..signal_count)
                    .map(|k| {
                        (code / strategy_count.pow((signal_count - 1 - k) as u32)) % strategy_count
                    })
                    .collect();
                ContingentStrategy::new(choices)
            })
            .collect()
    }

    pub fn label(&self, strategy_labels: &[String]) -> String {
        let parts: Vec<&str> = self
            .choices
            .iter()
            .map(|&s| strategy_labels[s].as_str())
            .collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join("|")
        }
    }
}

/// One move per signal for each player.
#[derive(Debug, Clone)]
pub struct BehavioralProfile {
    pub player_one: Vec<PlayerMove>,
    pub player_two: Vec<PlayerMove>,
}

impl BehavioralProfile {
    pub fn moves(&self, player: Player) -> &[PlayerMove] {
        match player {
            Player::One => &self.player_one,
            Player::Two => &self.player_two,
        }
    }
}

/// The contingent-strategy game: strategies are plans `signal -> strategy`
/// and payoffs are prior expectations of the signal-indexed payoffs.
pub fn associated_game(g: &PrivateInfoGame) -> BimatrixGame {
    let plans_one =
        ContingentStrategy::enumerate(g.signal_count(Player::One), g.strategy_count(Player::One));
    let plans_two =
        ContingentStrategy::enumerate(g.signal_count(Player::Two), g.strategy_count(Player::Two));
    let mut payoffs = Vec::with_capacity(plans_one.len() * plans_two.len());
    for f1 in &plans_one {
        for f2 in &plans_two {
            let mut cell = (0.0, 0.0);
            for a1 in 0..g.signal_count(Player::One) {
                for a2 in 0..g.signal_count(Player::Two) {
                    let p = g.prior(a1, a2);
                    let (x, y) = g.payoff(a1, a2, f1.choice(a1), f2.choice(a2));
                    cell.0 += p * x;
                    cell.1 += p * y;
                }
            }
            payoffs.push(cell);
        }
    }
    let labels = |plans: &[ContingentStrategy], player: Player| -> Vec<String> {
        plans
            .iter()
            .map(|f| f.label(g.strategies(player)))
            .collect()
    };
    BimatrixGame::new(
        labels(&plans_one, Player::One),
        labels(&plans_two, Player::Two),
        payoffs,
    )
    .expect("associated game is well formed")
}

fn cell_expectation(
    g: &PrivateInfoGame,
    a1: usize,
    a2: usize,
    dist: &crate::quantum::OutcomeDistribution,
) -> (f64, f64) {
    let mut out = (0.0, 0.0);
    for s in Outcome::BOTH {
        for t in Outcome::BOTH {
            let p = dist.probability(s, t);
            let (x, y) = g.payoff(a1, a2, s.index(), t.index());
            out.0 += p * x;
            out.1 += p * y;
        }
    }
    out
}

/// Ex-ante payoffs of a behavioral profile in the quantum environment `xi`:
/// the prior-weighted expectation of the per-signal measurement payoffs.
/// Strategy index 0 is identified with heads.
pub fn behavioral_payoff(
    g: &PrivateInfoGame,
    xi: &TwoQubitState,
    profile: &BehavioralProfile,
) -> Result<(f64, f64)> {
    g.require_binary()?;
    for player in Player::BOTH {
        if profile.moves(player).len() != g.signal_count(player) {
            return Err(Error::InvalidGame(format!(
                "profile has {} moves for {} signals",
                profile.moves(player).len(),
                g.signal_count(player)
            )));
        }
    }
    let mut totals = (0.0, 0.0);
    for a1 in 0..g.signal_count(Player::One) {
        for a2 in 0..g.signal_count(Player::Two) {
            let p = g.prior(a1, a2);
            if p == 0.0 {
                continue;
            }
            let dist = outcome_distribution(xi, &profile.player_one[a1], &profile.player_two[a2]);
            let (x, y) = cell_expectation(g, a1, a2, &dist);
            totals.0 += p * x;
            totals.1 += p * y;
        }
    }
    Ok(totals)
}

/// Expected payoff for `player` conditional on receiving `signal`, when the
/// player answers with `candidate` and the opponent follows `opponent_moves`.
pub fn conditional_return(
    g: &PrivateInfoGame,
    xi: &TwoQubitState,
    player: Player,
    signal: usize,
    candidate: &PlayerMove,
    opponent_moves: &[PlayerMove],
) -> Result<f64> {
    g.require_binary()?;
    let opponent = player.other();
    if signal >= g.signal_count(player) {
        return Err(Error::InvalidGame(format!(
            "signal index {signal} out of range"
        )));
    }
    if opponent_moves.len() != g.signal_count(opponent) {
        return Err(Error::InvalidGame(format!(
            "opponent profile has {} moves for {} signals",
            opponent_moves.len(),
            g.signal_count(opponent)
        )));
    }
    let marginal: f64 = (0..g.signal_count(opponent))
        .map(|b| match player {
            Player::One => g.prior(signal, b),
            Player::Two => g.prior(b, signal),
        })
        .sum();
    if marginal == 0.0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for b in 0..g.signal_count(opponent) {
        let (a1, a2, dist) = match player {
            Player::One => (
                signal,
                b,
                outcome_distribution(xi, candidate, &opponent_moves[b]),
            ),
            Player::Two => (
                b,
                signal,
                outcome_distribution(xi, &opponent_moves[b], candidate),
            ),
        };
        let weight = g.prior(a1, a2) / marginal;
        let cell = cell_expectation(g, a1, a2, &dist);
        total += weight
            * match player {
                Player::One => cell.0,
                Player::Two => cell.1,
            };
    }
    Ok(total)
}

/// The eight-constant payoff structure of a two-signal, two-strategy game
/// whose three mixed-or-second-signal matrices coincide.
///
/// `both_c` is the matrix in force when both players receive the first
/// signal, `any_d` the matrix otherwise; each is row-major over strategy
/// pairs with index 0 standing for heads. The prior runs over the four
/// signal pairs in row-major order.
#[derive(Debug, Clone)]
pub struct PayoffStructure {
    both_c: [(f64, f64); 4],
    any_d: [(f64, f64); 4],
    prior: [f64; 4],
    signal_labels: [String; 2],
    strategy_labels: [String; 2],
}

impl PayoffStructure {
    pub fn new(both_c: [(f64, f64); 4], any_d: [(f64, f64); 4], prior: [f64; 4]) -> Result<Self> {
        for (a, b) in both_c.iter().chain(any_d.iter()) {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite {
                    context: "payoff structure entries",
                });
            }
        }
        for p in &prior {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::BadDistribution {
                    reason: format!("signal prior entry {p}"),
                });
            }
        }
        let sum: f64 = prior.iter().sum();
        if (sum - 1.0).abs() > PAYOFF_TOL {
            return Err(Error::BadDistribution {
                reason: format!("signal prior sums to {sum}"),
            });
        }
        Ok(Self {
            both_c,
            any_d,
            prior,
            signal_labels: ["C".into(), "D".into()],
            strategy_labels: ["H".into(), "T".into()],
        })
    }

    /// Both worked scenarios draw signals independently via fair coin flips.
    pub fn with_uniform_prior(both_c: [(f64, f64); 4], any_d: [(f64, f64); 4]) -> Result<Self> {
        Self::new(both_c, any_d, [0.25; 4])
    }

    pub fn with_labels(mut self, signals: [&str; 2], strategies: [&str; 2]) -> Self {
        self.signal_labels = signals.map(String::from);
        self.strategy_labels = strategies.map(String::from);
        self
    }

    pub fn both_c(&self) -> &[(f64, f64); 4] {
        &self.both_c
    }

    pub fn any_d(&self) -> &[(f64, f64); 4] {
        &self.any_d
    }

    pub fn prior(&self) -> &[f64; 4] {
        &self.prior
    }

    pub fn signal_labels(&self) -> &[String; 2] {
        &self.signal_labels
    }

    pub fn strategy_labels(&self) -> &[String; 2] {
        &self.strategy_labels
    }

    /// The matrix in force for a given signal pair.
    pub fn matrix(&self, a1: usize, a2: usize) -> &[(f64, f64); 4] {
        if a1 == 0 && a2 == 0 {
            &self.both_c
        } else {
            &self.any_d
        }
    }

    /// The four linear identities that make both players' behavioral payoff
    /// functions coincide in the entangled environment.
    pub fn is_balanced(&self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= PAYOFF_TOL;
        let [(a, b), (c, d), (e, f), (g, h)] = self.both_c;
        let [(i, j), (k, l), (m, n), (p, q)] = self.any_d;
        close(a + g, b + h) && close(c + e, d + f) && close(i + p, j + q) && close(k + m, l + n)
    }

    /// Expands the structure into a full private-information game.
    pub fn to_game(&self) -> PrivateInfoGame {
        let signals = [self.signal_labels.to_vec(), self.signal_labels.to_vec()];
        let strategies = [self.strategy_labels.to_vec(), self.strategy_labels.to_vec()];
        let mut payoffs = Vec::with_capacity(16);
        for a1 in 0..2 {
            for a2 in 0..2 {
                payoffs.extend_from_slice(self.matrix(a1, a2));
            }
        }
        PrivateInfoGame::new(signals, strategies, self.prior.to_vec(), payoffs)
            .expect("structure expands to a valid game")
    }
}

/// Player One's ex-ante payoff for all-unitary behavioral profiles in the
/// entangled environment, computed from the agreement and disagreement
/// weights of the products `U_a * V_b^T` instead of full measurement
/// distributions. A cross-check route for [`behavioral_payoff`].
pub fn closed_form_payoff_one(
    ps: &PayoffStructure,
    u: [&SpecialUnitary; 2],
    v: [&SpecialUnitary; 2],
) -> f64 {
    let mut total = 0.0;
    for a1 in 0..2 {
        for a2 in 0..2 {
            let m = ps.matrix(a1, a2);
            let product = *u[a1] * v[a2].transpose();
            let s = product.agreement_weight();
            let t = product.disagreement_weight();
            let agree_coeff = (m[0].0 + m[3].0) / 2.0;
            let differ_coeff = (m[1].0 + m[2].0) / 2.0;
            total += ps.prior[a1 * 2 + a2] * (s * agree_coeff + t * differ_coeff);
        }
    }
    total
}

// Strategy tables for the two randomization orders: `atom -> plan` on one
// side, `signal -> variable` on the other. Both are maps A x Omega -> S
// whose per-signal slices come from the environment's variable set, so
// transposition is a bijection between them.
type PlanPerAtom = Vec<Vec<usize>>; // [atom][signal] -> strategy
type VariablePerSignal = Vec<Vec<usize>>; // [signal][atom] -> strategy

fn transpose_table(t: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let rows = t.len();
    let cols = t[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| t[i][j]).collect())
        .collect()
}

/// Verifies the isomorphism between "randomize, then form contingent plans"
/// and "form contingent plans, then randomize" on a finite instance.
///
/// Both strategy sets are enumerated from the environment's variable lists,
/// transposition is checked to be a mutually inverse pair of bijections
/// between them, and every profile's payoffs are computed along both routes
/// and compared.
pub fn kuhn_check(g: &PrivateInfoGame, env: &ClassicalEnvironment) -> Result<bool> {
    let atoms = env.space().len();
    for player in Player::BOTH {
        if env.variables(player).is_empty() {
            return Err(Error::InvalidGame(format!(
                "player {} has no variables",
                player.index() + 1
            )));
        }
        for v in env.variables(player) {
            if v.values().iter().any(|&s| s >= g.strategy_count(player)) {
                return Err(Error::InvalidGame(format!(
                    "variable {} takes values outside the strategy set",
                    v.name()
                )));
            }
        }
    }

    // Enumerate the "signal -> variable" side for each player.
    let enumerate_side = |player: Player| -> Vec<VariablePerSignal> {
        let vars = env.variables(player);
        let signals = g.signal_count(player);
        let total = vars.len().pow(signals as u32);
        (0..total)
            .map(|code| {
                (0..signals)
                    .map(|a| {
                        let idx = (code / vars.len().pow(a as u32)) % vars.len();
                        vars[idx].values().to_vec()
                    })
                    .collect()
            })
            .collect()
    };
    let side_one: Vec<VariablePerSignal> = enumerate_side(Player::One);
    let side_two: Vec<VariablePerSignal> = enumerate_side(Player::Two);

    // Transposing twice must give back the same table, and the transpose of
    // a transpose must stay inside the enumerated set.
    let involutive = |side: &[VariablePerSignal]| -> bool {
        side.iter().all(|g_table| {
            let f_table: PlanPerAtom = transpose_table(g_table);
            let back = transpose_table(&f_table);
            back == *g_table && side.contains(&back)
        })
    };
    if !involutive(&side_one) || !involutive(&side_two) {
        return Ok(false);
    }

    // Payoff route one: expectation over atoms of the contingent-game payoff.
    let route_one = |f1: &PlanPerAtom, f2: &PlanPerAtom| -> (f64, f64) {
        let mut totals = (0.0, 0.0);
        for atom in 0..atoms {
            let w = env.space().probability(atom);
            for a1 in 0..g.signal_count(Player::One) {
                for a2 in 0..g.signal_count(Player::Two) {
                    let (x, y) = g.payoff(a1, a2, f1[atom][a1], f2[atom][a2]);
                    let p = w * g.prior(a1, a2);
                    totals.0 += p * x;
                    totals.1 += p * y;
                }
            }
        }
        totals
    };
    // Payoff route two: expectation over signal pairs of the randomized payoff.
    let route_two = |g1: &VariablePerSignal, g2: &VariablePerSignal| -> (f64, f64) {
        let mut totals = (0.0, 0.0);
        for a1 in 0..g.signal_count(Player::One) {
            for a2 in 0..g.signal_count(Player::Two) {
                let p = g.prior(a1, a2);
                for atom in 0..atoms {
                    let w = env.space().probability(atom);
                    let (x, y) = g.payoff(a1, a2, g1[a1][atom], g2[a2][atom]);
                    totals.0 += p * w * x;
                    totals.1 += p * w * y;
                }
            }
        }
        totals
    };

    for g1 in &side_one {
        let f1 = transpose_table(g1);
        for g2 in &side_two {
            let f2 = transpose_table(g2);
            let (x1, y1) = route_one(&f1, &f2);
            let (x2, y2) = route_two(g1, g2);
            if (x1 - x2).abs() > PAYOFF_TOL || (y1 - y2).abs() > PAYOFF_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn in_convex_hull(points: &[(f64, f64)], target: (f64, f64), tol: f64) -> Result<bool> {
    let n = points.len();
    // lambda_k plus signed error variables for the three equalities;
    // minimizing the total error measures L1 infeasibility exactly.
    let nvars = n + 6;
    let mut objective = vec![rat(0.0); nvars];
    for w in objective.iter_mut().skip(n) {
        *w = rat(-1.0);
    }
    let mut rows = Vec::new();
    for (r, rhs) in [(0usize, target.0), (1usize, target.1), (2usize, 1.0)] {
        let mut coeffs = vec![rat(0.0); nvars];
        for (k, point) in points.iter().enumerate() {
            coeffs[k] = match r {
                0 => rat(point.0),
                1 => rat(point.1),
                _ => rat(1.0),
            };
        }
        coeffs[n + 2 * r] = rat(1.0);
        coeffs[n + 2 * r + 1] = rat(-1.0);
        rows.push(Constraint::new(coeffs, Relation::Equal, rat(rhs)));
    }
    match lp::maximize(&objective, &rows)? {
        Solved::Optimal { value, .. } => {
            use num_traits::ToPrimitive;
            Ok(-value.to_f64().unwrap_or(f64::INFINITY) <= tol)
        }
        other => Err(Error::Solver(format!(
            "hull membership program not optimal: {other:?}"
        ))),
    }
}

/// Whether `candidate` is a stochastic extension of `base`: every candidate
/// payoff pair must be a mixture of the base game's payoff pairs. Hull
/// membership is decided by exact linear feasibility with slack [`HULL_TOL`].
pub fn is_stochastic_extension(base: &BimatrixGame, candidate: &BimatrixGame) -> Result<bool> {
    let hull: Vec<(f64, f64)> = base.payoffs().to_vec();
    if hull.is_empty() {
        return Err(Error::InvalidGame("base game has no payoff cells".into()));
    }
    for &pair in candidate.payoffs() {
        if !in_convex_hull(&hull, pair, HULL_TOL)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A bimatrix game sampled from the quantum behavioral game: one strategy
/// per supplied behavioral move list, payoffs via [`behavioral_payoff`].
pub fn sampled_behavioral_game(
    g: &PrivateInfoGame,
    xi: &TwoQubitState,
    profiles_one: &[Vec<PlayerMove>],
    profiles_two: &[Vec<PlayerMove>],
) -> Result<BimatrixGame> {
    if profiles_one.is_empty() || profiles_two.is_empty() {
        return Err(Error::InvalidGame("no sampled profiles".into()));
    }
    let mut payoffs = Vec::with_capacity(profiles_one.len() * profiles_two.len());
    for p1 in profiles_one {
        for p2 in profiles_two {
            let profile = BehavioralProfile {
                player_one: p1.clone(),
                player_two: p2.clone(),
            };
            payoffs.push(behavioral_payoff(g, xi, &profile)?);
        }
    }
    let label = |tag: &str, n: usize| (0..n).map(|k| format!("{tag}{k}")).collect::<Vec<_>>();
    BimatrixGame::new(
        label("u", profiles_one.len()),
        label("v", profiles_two.len()),
        payoffs,
    )
}

/// Per-player, per-signal deviation audit row produced by the equilibrium
/// verifier in [`crate::search`].
#[derive(Debug, Clone, Serialize)]
pub struct DeviationRow {
    pub player: Player,
    pub signal: String,
    pub pure_returns: Vec<(String, f64)>,
    pub equilibrium_return: f64,
    pub best_unitary_return: f64,
}
