//! Exhaustive extremal-eigenvalue search over all k-path graphs of fixed
//! order, and verification of the two extremal-structure conjectures.
//!
//! The enumeration stream is cut into fixed-size batches; batches are
//! evaluated in parallel and their partial optima merged in batch order, so
//! the result (including tie counts) is identical for any thread count.
//!
//! Two selection modes exist. Plain objectives (algebraic connectivity,
//! alpha-index) report the graph attaining the optimum. The
//! [`ObjectiveKind::AlphaLambda2`] objective reports the *runner-up by
//! alpha-index*: the largest A_alpha spectral radius attained by a graph not
//! tied with the champion. That runner-up quantity is what the published
//! per-order "lambda_2" tables contain: their values equal the spectral
//! radius of the listed witness, not the second eigenvalue of any single
//! matrix, and the literal per-matrix second eigenvalue is maximized by
//! entirely different graphs. The per-matrix quantity remains available as
//! [`spectra::second_alpha_eigenvalue`].

use rayon::prelude::*;
use thiserror::Error;

use crate::g6;
use crate::graph::Graph;
use crate::kpath::{self, KPathError};
use crate::seq::{self, ColorSequence, SeqError};
use crate::spectra::{self, SpectraError, TIE_TOLERANCE};

const BATCH_SIZE: usize = 512;
const BATCHES_PER_ROUND: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum ExtremalError {
    #[error("search budget of {budget} graphs exceeded for k = {k}, n = {n}")]
    BudgetExceeded { k: usize, n: usize, budget: u64 },
    #[error("no runner-up exists for k = {k}, n = {n}: every graph ties the optimum")]
    RunnerUpUndefined { k: usize, n: usize },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    KPath(#[from] KPathError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    G6(#[from] g6::G6Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveKind {
    /// Second-smallest Laplacian eigenvalue.
    AlgebraicConnectivity,
    /// Largest eigenvalue of A_alpha (the alpha-index).
    AlphaIndex(f64),
    /// Runner-up alpha-index: both the score and the reported value are the
    /// A_alpha spectral radius, but the selected graph is the best one not
    /// tied with the champion.
    AlphaLambda2(f64),
}

impl ObjectiveKind {
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            ObjectiveKind::AlgebraicConnectivity => None,
            ObjectiveKind::AlphaIndex(alpha) | ObjectiveKind::AlphaLambda2(alpha) => Some(alpha),
        }
    }

    /// Which place in the ranking the search reports.
    fn rank(&self) -> Rank {
        match self {
            ObjectiveKind::AlphaLambda2(_) => Rank::RunnerUp,
            _ => Rank::Champion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rank {
    Champion,
    RunnerUp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Max,
    Min,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Max => write!(f, "max"),
            Direction::Min => write!(f, "min"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub direction: Direction,
}

impl Objective {
    pub fn new(kind: ObjectiveKind, direction: Direction) -> Self {
        Objective { kind, direction }
    }

    /// Per-graph score this objective ranks by.
    pub fn score(&self, g: &Graph) -> Result<f64, SpectraError> {
        match self.kind {
            ObjectiveKind::AlgebraicConnectivity => spectra::algebraic_connectivity(g),
            ObjectiveKind::AlphaIndex(alpha) | ObjectiveKind::AlphaLambda2(alpha) => {
                spectra::alpha_index(g, alpha)
            }
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ObjectiveKind::AlgebraicConnectivity => write!(f, "{} a(G)", self.direction),
            ObjectiveKind::AlphaIndex(alpha) => {
                write!(f, "{} alpha-index (alpha = {alpha})", self.direction)
            }
            ObjectiveKind::AlphaLambda2(alpha) => {
                write!(
                    f,
                    "{} runner-up alpha-index (alpha = {alpha})",
                    self.direction
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Abort the search after this many graphs. The default covers the
    /// largest published list (k = 2, n = 26: 1,049,600 graphs) with headroom.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 2_000_000 }
    }
}

/// Result of one extremal search.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalRecord {
    pub k: usize,
    pub n: usize,
    pub objective: Objective,
    /// Optimal score over the selected rank.
    pub value: f64,
    /// graph6 encoding of the witness.
    pub witness_g6: String,
    /// Lexicographically smallest color sequence among graphs within
    /// [`TIE_TOLERANCE`] of `value` at the selected rank.
    pub witness_sequence: ColorSequence,
    /// Number of graphs within [`TIE_TOLERANCE`] of `value` at the selected
    /// rank.
    pub tie_count: usize,
}

/// Running window over the top two tie classes of the stream.
///
/// `best1` is the best signed score seen; entries within [`TIE_TOLERANCE`] of
/// it form the champion tie class. `best2` is the best signed score strictly
/// below the champion window; entries within tolerance of it form the
/// runner-up class. Both thresholds only ever rise, so pruned entries can
/// never re-enter either class and the final window is exact regardless of
/// how the stream was batched.
#[derive(Debug, Clone)]
struct RankedWindow {
    direction: Direction,
    /// (signed score, sequence) in enumeration order; signed so that larger
    /// is always better.
    entries: Vec<(f64, ColorSequence)>,
    best1: f64,
    best2: f64,
}

impl RankedWindow {
    fn new(direction: Direction) -> Self {
        RankedWindow {
            direction,
            entries: Vec::new(),
            best1: f64::NEG_INFINITY,
            best2: f64::NEG_INFINITY,
        }
    }

    fn sign(&self) -> f64 {
        match self.direction {
            Direction::Max => 1.0,
            Direction::Min => -1.0,
        }
    }

    fn push(&mut self, score: f64, sequence: ColorSequence) {
        self.push_signed(self.sign() * score, sequence);
    }

    fn push_signed(&mut self, signed: f64, sequence: ColorSequence) {
        if signed >= self.best1 - TIE_TOLERANCE {
            self.entries.push((signed, sequence));
            if signed > self.best1 {
                self.best1 = signed;
                // Entries falling out of the champion window seed the
                // runner-up class.
                let cutoff = self.best1 - TIE_TOLERANCE;
                for &(v, _) in &self.entries {
                    if v < cutoff && v > self.best2 {
                        self.best2 = v;
                    }
                }
                self.prune();
            }
        } else if signed >= self.best2 - TIE_TOLERANCE {
            self.entries.push((signed, sequence));
            if signed > self.best2 {
                self.best2 = signed;
                self.prune();
            }
        }
    }

    fn prune(&mut self) {
        let keep1 = self.best1 - TIE_TOLERANCE;
        let keep2 = self.best2 - TIE_TOLERANCE;
        self.entries.retain(|&(v, _)| v >= keep1 || v >= keep2);
    }

    fn merge(&mut self, other: RankedWindow) {
        for (signed, sequence) in other.entries {
            self.push_signed(signed, sequence);
        }
    }

    fn into_record(
        self,
        k: usize,
        n: usize,
        objective: Objective,
        rank: Rank,
    ) -> Result<ExtremalRecord, ExtremalError> {
        let sign = self.sign();
        let (best, in_class): (f64, Vec<ColorSequence>) = match rank {
            Rank::Champion => {
                let cutoff = self.best1 - TIE_TOLERANCE;
                let class = self
                    .entries
                    .into_iter()
                    .filter_map(|(v, c)| (v >= cutoff).then_some(c))
                    .collect();
                (self.best1, class)
            }
            Rank::RunnerUp => {
                if self.best2 == f64::NEG_INFINITY {
                    return Err(ExtremalError::RunnerUpUndefined { k, n });
                }
                let upper = self.best1 - TIE_TOLERANCE;
                let class = self
                    .entries
                    .into_iter()
                    .filter_map(|(v, c)| (v < upper).then_some(c))
                    .collect();
                (self.best2, class)
            }
        };
        let tie_count = in_class.len();
        let witness_sequence = in_class
            .into_iter()
            .next()
            .expect("selected rank is non-empty");
        let witness = kpath::build_from_sequence(&witness_sequence, n)?;
        let witness_g6 = g6::encode(witness.graph())?;
        Ok(ExtremalRecord {
            k,
            n,
            objective,
            value: sign * best,
            witness_g6,
            witness_sequence,
            tie_count,
        })
    }
}

/// Which spectra one enumeration pass must compute: objectives over the same
/// alpha share one A_alpha eigendecomposition, and the alpha-index and its
/// runner-up read the same score.
struct SpectraPlan {
    needs_laplacian: bool,
    alphas: Vec<f64>,
    /// Per objective: where its score comes from.
    selectors: Vec<ScoreSelector>,
}

#[derive(Clone, Copy)]
enum ScoreSelector {
    AlgebraicConnectivity,
    AlphaLargest(usize),
}

impl SpectraPlan {
    fn new(objectives: &[Objective]) -> Self {
        let mut needs_laplacian = false;
        let mut alphas: Vec<f64> = Vec::new();
        let selectors = objectives
            .iter()
            .map(|objective| match objective.kind {
                ObjectiveKind::AlgebraicConnectivity => {
                    needs_laplacian = true;
                    ScoreSelector::AlgebraicConnectivity
                }
                ObjectiveKind::AlphaIndex(alpha) | ObjectiveKind::AlphaLambda2(alpha) => {
                    let slot = alphas.iter().position(|&x| x == alpha).unwrap_or_else(|| {
                        alphas.push(alpha);
                        alphas.len() - 1
                    });
                    ScoreSelector::AlphaLargest(slot)
                }
            })
            .collect();
        SpectraPlan {
            needs_laplacian,
            alphas,
            selectors,
        }
    }

    /// Scores of one graph for every planned objective, in objective order.
    fn scores(&self, g: &Graph, out: &mut Vec<f64>) -> Result<(), SpectraError> {
        let alg_conn = if self.needs_laplacian {
            spectra::algebraic_connectivity(g)?
        } else {
            f64::NAN
        };
        let mut alpha_largest = [0.0; 16];
        assert!(self.alphas.len() <= alpha_largest.len());
        for (slot, &alpha) in self.alphas.iter().enumerate() {
            alpha_largest[slot] = spectra::alpha_index(g, alpha)?;
        }
        out.clear();
        out.extend(self.selectors.iter().map(|selector| match *selector {
            ScoreSelector::AlgebraicConnectivity => alg_conn,
            ScoreSelector::AlphaLargest(slot) => alpha_largest[slot],
        }));
        Ok(())
    }
}

/// One exhaustive enumeration pass feeding every objective's window, with the
/// needed eigendecompositions computed once per graph.
fn run_pass(
    k: usize,
    n: usize,
    objectives: &[Objective],
    config: &SearchConfig,
) -> Result<Vec<RankedWindow>, ExtremalError> {
    if objectives.is_empty() {
        return Ok(Vec::new());
    }
    for objective in objectives {
        validate_objective(objective)?;
    }
    let plan = SpectraPlan::new(objectives);
    let mut stream = seq::enumerate(k, n)?;
    let mut windows: Vec<RankedWindow> = objectives
        .iter()
        .map(|objective| RankedWindow::new(objective.direction))
        .collect();
    let mut seen: u64 = 0;
    loop {
        let round: Vec<ColorSequence> = stream
            .by_ref()
            .take(BATCH_SIZE * BATCHES_PER_ROUND)
            .collect();
        if round.is_empty() {
            break;
        }
        seen += round.len() as u64;
        if seen > config.budget {
            return Err(ExtremalError::BudgetExceeded {
                k,
                n,
                budget: config.budget,
            });
        }
        let partials: Vec<Result<Vec<RankedWindow>, ExtremalError>> = round
            .par_chunks(BATCH_SIZE)
            .map(|batch| {
                let mut windows: Vec<RankedWindow> = objectives
                    .iter()
                    .map(|objective| RankedWindow::new(objective.direction))
                    .collect();
                let mut scores = Vec::with_capacity(objectives.len());
                for sequence in batch {
                    let g = kpath::build_from_sequence(sequence, n)?;
                    plan.scores(g.graph(), &mut scores)?;
                    for (window, &score) in windows.iter_mut().zip(&scores) {
                        window.push(score, sequence.clone());
                    }
                }
                Ok(windows)
            })
            .collect();
        for partial in partials {
            for (window, batch_window) in windows.iter_mut().zip(partial?) {
                window.merge(batch_window);
            }
        }
    }
    Ok(windows)
}

/// Exhaustively searches all k-path graphs of order `n` for the objective
/// optimum (or runner-up, for the lambda_2 objective). Deterministic for any
/// thread count.
pub fn search(
    k: usize,
    n: usize,
    objective: Objective,
    config: &SearchConfig,
) -> Result<ExtremalRecord, ExtremalError> {
    let window = run_pass(k, n, &[objective], config)?
        .pop()
        .expect("one window per objective");
    window.into_record(k, n, objective, objective.kind.rank())
}

fn validate_objective(objective: &Objective) -> Result<(), ExtremalError> {
    if let Some(alpha) = objective.kind.alpha() {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(SpectraError::AlphaOutOfRange(alpha).into());
        }
    }
    Ok(())
}

/// One record per (order, objective) cell, in the given order. All
/// objectives of one order share a single enumeration pass.
pub fn sweep(
    k: usize,
    orders: impl IntoIterator<Item = usize>,
    objectives: &[Objective],
    config: &SearchConfig,
) -> Result<Vec<ExtremalRecord>, ExtremalError> {
    let mut records = Vec::new();
    for n in orders {
        let windows = run_pass(k, n, objectives, config)?;
        for (window, objective) in windows.into_iter().zip(objectives) {
            records.push(window.into_record(k, n, *objective, objective.kind.rank())?);
        }
    }
    Ok(records)
}

/// Outcome of one conjecture check.
#[derive(Debug, Clone)]
pub struct ConjectureCheck {
    pub k: usize,
    pub n: usize,
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

/// Report of all checks run by [`verify_conjectures`].
#[derive(Debug, Clone, Default)]
pub struct ConjectureReport {
    pub checks: Vec<ConjectureCheck>,
    pub skipped: Vec<String>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConjectureCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Machine-checks, for each order in `orders`, that the extremal witnesses
/// are exactly the conjectured families and that each optimum is unique:
///
/// * max a(G) and max alpha-index (every alpha) at the generalized fan,
/// * min a(G) at the ribbon,
/// * runner-up alpha-index (every alpha) at the weak generalized fan.
///
/// Orders with fewer than two graphs are skipped where the check is vacuous
/// or undefined. Violations become failed checks in the report, not errors.
pub fn verify_conjectures(
    k: usize,
    orders: impl IntoIterator<Item = usize>,
    alphas: &[f64],
    config: &SearchConfig,
) -> Result<ConjectureReport, ExtremalError> {
    let mut report = ConjectureReport::default();
    for n in orders {
        if n == k + 1 {
            report.skipped.push(format!(
                "n = {n}: single graph K_{}, extremality vacuous",
                k + 1
            ));
            continue;
        }
        let fan_seq = expected_sequence(kpath::generalized_fan(k, n)?)?;
        let ribbon_seq = expected_sequence(kpath::ribbon(k, n)?)?;
        // A single graph of order <= k + 3: there is no runner-up to check.
        let with_runner_up = n > k + 3;
        if !with_runner_up {
            report.skipped.push(format!(
                "n = {n}: runner-up checks need at least two graphs"
            ));
        }

        let mut cells: Vec<(Objective, ColorSequence, String)> = vec![
            (
                Objective::new(ObjectiveKind::AlgebraicConnectivity, Direction::Max),
                fan_seq.clone(),
                format!("n = {n}: max a(G) is the generalized fan, uniquely"),
            ),
            (
                Objective::new(ObjectiveKind::AlgebraicConnectivity, Direction::Min),
                ribbon_seq,
                format!("n = {n}: min a(G) is the ribbon, uniquely"),
            ),
        ];
        for &alpha in alphas {
            cells.push((
                Objective::new(ObjectiveKind::AlphaIndex(alpha), Direction::Max),
                fan_seq.clone(),
                format!(
                    "n = {n}: max alpha-index (alpha = {alpha}) is the generalized fan, uniquely"
                ),
            ));
        }
        if with_runner_up {
            let weak_seq = expected_sequence(kpath::weak_generalized_fan(k, n)?)?;
            for &alpha in alphas {
                cells.push((
                    Objective::new(ObjectiveKind::AlphaLambda2(alpha), Direction::Max),
                    weak_seq.clone(),
                    format!(
                        "n = {n}: runner-up alpha-index (alpha = {alpha}) is the weak generalized fan, uniquely"
                    ),
                ));
            }
        }

        let objectives: Vec<Objective> = cells.iter().map(|(objective, ..)| *objective).collect();
        let windows = run_pass(k, n, &objectives, config)?;
        for (window, (objective, family, label)) in windows.into_iter().zip(cells) {
            let record = window.into_record(k, n, objective, objective.kind.rank())?;
            let unique = record.tie_count == 1;
            let matches = record.witness_sequence == family;
            report.checks.push(ConjectureCheck {
                k,
                n,
                description: label,
                passed: unique && matches,
                detail: format!(
                    "witness <{}> vs expected <{}>, value {:.6}, tie_count {}",
                    record.witness_sequence, family, record.value, record.tie_count
                ),
            });
        }
    }
    Ok(report)
}

/// Canonical sequence of a constructed family member, via the derivation path
/// rather than the construction sequence, so witness comparison does not
/// depend on the builder's labeling.
fn expected_sequence(g: kpath::KPathGraph) -> Result<ColorSequence, ExtremalError> {
    Ok(kpath::derive_color_sequence(g.graph(), g.k())?)
}
