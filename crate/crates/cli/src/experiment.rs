//! The three decorated-population experiments on `Z_N`.
//!
//! Stationary runs port `H` as `D = lift(s(H))`, start from
//! `lift(s(psi_k))` and watch the projection get multiplied by `eps_k`
//! each step. The time-evolution run approximates `exp(i t H)` on a delta
//! state with `gamma^{-m} chi(D^m psi)` and compares with the exact answer.

use popdyn_core::dynamics::{
    build_exponential_generator, build_literal_hopping_generator, check_conservation, evolve_chips,
    evolve_exact, project_state, ChipState, ComplexState, ConservationReport, DynamicalMatrix,
    EvolutionMode, ExponentialGenerator, LossLedger, RealState,
};
use popdyn_core::oracle::{
    circulant, dft_eigenvalue, exact_exponential, fourier_mode, relative_l2_difference,
    truncated_product,
};
use popdyn_core::semiring::section_elem;
use popdyn_core::{
    cayley_digraph, decorate, AlgebraElement, CayleyDigraph, Complex64, FiniteGroup, GeneratorSet,
    GroupElement,
};
use serde::Serialize;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::CliError;

/// Ratios are reported only where the previous value exceeds this.
pub const RATIO_DENOMINATOR_MIN: f64 = 1e-9;

/// `(S + S*)/2`.
pub fn hamiltonian_h1(group: &FiniteGroup) -> Result<AlgebraElement, CliError> {
    let half = Complex64::new(0.5, 0.0);
    Ok(circulant(group, &[(1, half), (-1, half)])?)
}

/// `(S + S* + iS - iS*)/4`.
pub fn hamiltonian_h2(group: &FiniteGroup) -> Result<AlgebraElement, CliError> {
    Ok(circulant(
        group,
        &[
            (1, Complex64::new(0.25, 0.25)),
            (-1, Complex64::new(0.25, -0.25)),
        ],
    )?)
}

/// The projected state at one step.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReport {
    pub step: usize,
    /// `chi` of the decorated state (rescaled by `gamma^{-step}` for time evolution).
    pub projection: Vec<Complex64>,
    /// `projection[n] / previous[n]`, where the denominator is large enough.
    pub ratios: Vec<Option<Complex64>>,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecoratedTrajectory {
    Exact(Vec<RealState>),
    Chip {
        states: Vec<ChipState>,
        ledger: LossLedger,
    },
}

impl DecoratedTrajectory {
    pub fn len(&self) -> usize {
        match self {
            DecoratedTrajectory::Exact(s) => s.len(),
            DecoratedTrajectory::Chip { states, .. } => states.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ledger(&self) -> Option<&LossLedger> {
        match self {
            DecoratedTrajectory::Exact(_) => None,
            DecoratedTrajectory::Chip { ledger, .. } => Some(ledger),
        }
    }

    fn project(&self, step: usize) -> Result<ComplexState, CliError> {
        Ok(match self {
            DecoratedTrajectory::Exact(s) => project_state(&s[step])?,
            DecoratedTrajectory::Chip { states, .. } => project_state(&states[step])?,
        })
    }
}

/// Comparison of the final rescaled projection with the exact evolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityReport {
    /// Time `T` in `exp(i T H)` that the generator realizes.
    pub effective_time: f64,
    pub steps: usize,
    pub gamma: f64,
    /// `|| normalized projection - exp(i T H) psi ||`.
    pub relative_l2_difference: f64,
    /// Same metric for `(1 + i T H / m)^m psi` against the exact result.
    pub truncation_error: f64,
    /// Normalized projection against the truncated product.
    pub difference_from_truncated: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub kind: ExperimentKind,
    pub base_group: FiniteGroup,
    /// Decorated generator and its Cayley digraph (identity term omitted).
    pub matrix: DynamicalMatrix,
    pub digraph: CayleyDigraph,
    pub conservation: ConservationReport,
    pub expected_epsilon: Option<f64>,
    pub trajectory: DecoratedTrajectory,
    pub reports: Vec<ProjectionReport>,
    pub fidelity: Option<FidelityReport>,
}

impl ExperimentOutput {
    /// Largest `|ratio - eps_k|` over every reported vertex and step.
    pub fn max_ratio_deviation(&self) -> Option<f64> {
        let eps = Complex64::new(self.expected_epsilon?, 0.0);
        self.reports
            .iter()
            .flat_map(|r| r.ratios.iter().flatten())
            .map(|r| (r - eps).norm())
            .reduce(f64::max)
    }

    /// Largest `|ratio - eps_k| / |eps_k|`.
    pub fn max_relative_ratio_deviation(&self) -> Option<f64> {
        let eps = self.expected_epsilon?;
        Some(self.max_ratio_deviation()? / eps.abs())
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    match cfg.experiment {
        ExperimentKind::StationaryH1 => run_experiment_1(cfg),
        ExperimentKind::StationaryH2 => run_experiment_2(cfg),
        ExperimentKind::TimeEvolution => run_experiment_3(cfg),
    }
}

fn require_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<FiniteGroup, CliError> {
    cfg.validate()?;
    if cfg.experiment != kind {
        return Err(CliError::Config(format!(
            "expected a {} config, got {}",
            kind.name(),
            cfg.experiment.name()
        )));
    }
    Ok(popdyn_core::make_cyclic(cfg.n())?)
}

/// Stationary state of `(S + S*)/2`.
pub fn run_experiment_1(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let group = require_kind(cfg, ExperimentKind::StationaryH1)?;
    let h = hamiltonian_h1(&group)?;
    run_stationary(cfg, group, &h)
}

/// Stationary state of `(S + S* + iS - iS*)/4`, ported as
/// `(S + S* + xi S + xi^3 S*)/4`.
pub fn run_experiment_2(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let group = require_kind(cfg, ExperimentKind::StationaryH2)?;
    let h = hamiltonian_h2(&group)?;
    run_stationary(cfg, group, &h)
}

fn conserving(matrix: &DynamicalMatrix) -> Result<ConservationReport, CliError> {
    let report = check_conservation(matrix);
    if !report.conserved {
        return Err(CliError::Check(format!(
            "generator does not conserve chips (deviation {:.3e})",
            report.max_deviation
        )));
    }
    Ok(report)
}

fn run_stationary(
    cfg: &ExperimentConfig,
    group: FiniteGroup,
    h: &AlgebraElement,
) -> Result<ExperimentOutput, CliError> {
    let matrix = DynamicalMatrix::decorated(&section_elem(h))?;
    let conservation = conserving(&matrix)?;
    let eps = dft_eigenvalue(h, cfg.k)?.re;
    let initial = RealState::encode(&fourier_mode(&group, cfg.k)?)?;

    let trajectory = match cfg.mode {
        EvolutionMode::Exact => {
            DecoratedTrajectory::Exact(evolve_exact(&matrix, &initial, cfg.steps)?)
        }
        EvolutionMode::Chip => {
            let chips = ChipState::allocate(&initial, cfg.initial_chips)?;
            let (states, ledger) = evolve_chips(&matrix, &chips, cfg.steps, cfg.rounding)?;
            DecoratedTrajectory::Chip { states, ledger }
        }
    };

    let mut reports: Vec<ProjectionReport> = Vec::with_capacity(trajectory.len());
    for step in 0..trajectory.len() {
        let projection = trajectory.project(step)?.into_values();
        let ratios = match reports.last() {
            None => vec![None; projection.len()],
            Some(prev) => ratio_row(&prev.projection, &projection),
        };
        reports.push(report(step, projection, ratios));
    }

    Ok(ExperimentOutput {
        kind: cfg.experiment,
        digraph: support_digraph(&matrix)?,
        base_group: group,
        matrix,
        conservation,
        expected_epsilon: Some(eps),
        trajectory,
        reports,
        fidelity: None,
    })
}

fn ratio_row(prev: &[Complex64], cur: &[Complex64]) -> Vec<Option<Complex64>> {
    prev.iter()
        .zip(cur)
        .map(|(p, c)| (p.norm() > RATIO_DENOMINATOR_MIN).then(|| c / p))
        .collect()
}

fn report(
    step: usize,
    projection: Vec<Complex64>,
    ratios: Vec<Option<Complex64>>,
) -> ProjectionReport {
    let norm = projection.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    ProjectionReport {
        step,
        projection,
        ratios,
        norm,
    }
}

/// Steps written out for the time evolution: every `m/10`, plus the last.
pub fn sampled_steps(m: usize) -> Vec<usize> {
    let stride = (m / 10).max(1);
    let mut steps: Vec<usize> = (0..=m).step_by(stride).collect();
    if steps.last() != Some(&m) {
        steps.push(m);
    }
    steps
}

/// `exp(i t H)` for `H = (S + S*)/2` from a state localized at `N/2`.
pub fn run_experiment_3(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let group = require_kind(cfg, ExperimentKind::TimeEvolution)?;
    let h = hamiltonian_h1(&group)?;
    let (generator, effective_time): (ExponentialGenerator, f64) = if cfg.paper_literal_d10 {
        (
            build_literal_hopping_generator(&group, cfg.t, cfg.m)?,
            2.0 * cfg.t,
        )
    } else {
        (build_exponential_generator(&h, cfg.t, cfg.m)?, cfg.t)
    };
    let matrix = generator.matrix.clone();
    let conservation = conserving(&matrix)?;

    let start = GroupElement(cfg.n() / 2);
    let psi0 = ComplexState::delta(&group, start)?;
    let initial = RealState::encode(&psi0)?;

    let (trajectory, unit) = match cfg.mode {
        EvolutionMode::Exact => (
            DecoratedTrajectory::Exact(evolve_exact(&matrix, &initial, cfg.m)?),
            1.0,
        ),
        EvolutionMode::Chip => {
            let dec = decorate(&group)?;
            let at = dec.compose(GroupElement(0), start)?;
            let chips = ChipState::delta(&dec, at, cfg.initial_chips)?;
            let (states, ledger) = evolve_chips(&matrix, &chips, cfg.m, cfg.rounding)?;
            (
                DecoratedTrajectory::Chip { states, ledger },
                cfg.initial_chips as f64,
            )
        }
    };

    let rescaled = |step: usize| -> Result<ComplexState, CliError> {
        let factor = generator.rescale(step) / unit;
        Ok(trajectory.project(step)?.scale(Complex64::new(factor, 0.0)))
    };
    let reports = sampled_steps(cfg.m)
        .into_iter()
        .map(|step| {
            let p = rescaled(step)?.into_values();
            let n = p.len();
            Ok(report(step, p, vec![None; n]))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let final_state = rescaled(cfg.m)?;
    let exact = exact_exponential(&h, effective_time, &psi0)?;
    let truncated = truncated_product(&h, effective_time, cfg.m, &psi0)?;
    let fidelity = FidelityReport {
        effective_time,
        steps: cfg.m,
        gamma: generator.gamma,
        relative_l2_difference: relative_l2_difference(&final_state, &exact)?,
        truncation_error: relative_l2_difference(&truncated, &exact)?,
        difference_from_truncated: relative_l2_difference(&final_state, &truncated)?,
    };

    Ok(ExperimentOutput {
        kind: cfg.experiment,
        digraph: support_digraph(&matrix)?,
        base_group: group,
        matrix,
        conservation,
        expected_epsilon: None,
        trajectory,
        reports,
        fidelity: Some(fidelity),
    })
}

/// Cayley digraph on `Z4 x G` of the non-identity generator terms.
fn support_digraph(matrix: &DynamicalMatrix) -> Result<CayleyDigraph, CliError> {
    let group = matrix.group();
    let support: Vec<GroupElement> = matrix
        .terms()
        .iter()
        .map(|(g, _)| *g)
        .filter(|g| *g != group.identity())
        .collect();
    let gens = GeneratorSet::uniform(support)?;
    Ok(cayley_digraph(group, &gens)?)
}
