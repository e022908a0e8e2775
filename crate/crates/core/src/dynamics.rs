//! States over `l2(G)`, dynamical matrices built through the left regular
//! representation, and their exact and integer-chip evolution.
//!
//! A generator term `alpha h` moves amplitude from `|g>` to `|h g>`. Exact
//! application sums, for each output site, over the generator terms in a
//! fixed order, so results are bitwise reproducible.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{decorate, FiniteGroup, GeneratorSet, GroupElement, WEIGHT_SUM_TOLERANCE};
use crate::semiring::{
    base_of_decorated, lift_to_decorated, section_elem, AlgebraElement, SemiringElement,
};

/// Entries a state vector can hold.
pub trait StateValue: Copy + PartialEq + std::fmt::Debug {
    fn is_valid(&self) -> bool;
    fn to_complex(self) -> Complex64;
}

impl StateValue for u64 {
    fn is_valid(&self) -> bool {
        true
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self as f64, 0.0)
    }
}

impl StateValue for f64 {
    fn is_valid(&self) -> bool {
        self.is_finite() && *self >= 0.0
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl StateValue for Complex64 {
    fn is_valid(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Dense group-indexed state.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    group: FiniteGroup,
    values: Vec<T>,
}

/// Integer chip counts `N_g`.
pub type ChipState = State<u64>;
/// Nonnegative real occupancies.
pub type RealState = State<f64>;
/// Complex amplitudes.
pub type ComplexState = State<Complex64>;

impl<T: StateValue> State<T> {
    pub fn new(group: &FiniteGroup, values: Vec<T>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::GroupMismatch(format!(
                "state has {} entries, group has order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_valid()) {
            return Err(Error::Domain(format!("invalid state entry {v:?}")));
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, g: GroupElement) -> T {
        self.values[g.0]
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn to_complex(&self) -> ComplexState {
        ComplexState {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.to_complex()).collect(),
        }
    }
}

impl ChipState {
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn delta(group: &FiniteGroup, at: GroupElement, chips: u64) -> Result<Self> {
        group.element(at.0)?;
        let mut values = vec![0; group.order()];
        values[at.0] = chips;
        Self::new(group, values)
    }

    /// Scales `real` so its largest entry becomes `peak`, then floors per site.
    pub fn allocate(real: &RealState, peak: u64) -> Result<Self> {
        let max = real.values.iter().copied().fold(0.0, f64::max);
        if max <= 0.0 {
            return Err(Error::Domain(
                "cannot allocate chips for an empty state".into(),
            ));
        }
        let scale = peak as f64 / max;
        let values = real
            .values
            .iter()
            .map(|&v| floor_count(v * scale))
            .collect();
        Self::new(&real.group, values)
    }
}

impl RealState {
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// The all-ones state `psi_0`.
    pub fn uniform(group: &FiniteGroup) -> Self {
        Self {
            group: group.clone(),
            values: vec![1.0; group.order()],
        }
    }

    /// Dense form of a real element of `R+ G` (all coefficients on `xi^0`).
    pub fn from_element(q: &SemiringElement) -> Result<Self> {
        if !q.is_real() {
            return Err(Error::Domain(
                "state element has non-real R+Z4 coefficients; lift it first".into(),
            ));
        }
        let mut values = vec![0.0; q.group().order()];
        for (g, a) in q.terms() {
            values[g.0] = a.beta()[0];
        }
        Self::new(q.group(), values)
    }

    /// `lift(s(psi))`: the decorated population encoding a complex state.
    pub fn encode(psi: &ComplexState) -> Result<Self> {
        let lifted = lift_to_decorated(&section_elem(&psi.to_element()?))?;
        // pruning may have dropped zero sites; rebuild on the full decorated group
        let dec = decorate(psi.group())?;
        let mut values = vec![0.0; dec.order()];
        for (g, a) in lifted.terms() {
            values[g.0] = a.beta()[0];
        }
        Self::new(&dec, values)
    }
}

impl ComplexState {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn delta(group: &FiniteGroup, at: GroupElement) -> Result<Self> {
        group.element(at.0)?;
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[at.0] = Complex64::new(1.0, 0.0);
        Self::new(group, values)
    }

    pub fn from_element(q: &AlgebraElement) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); q.group().order()];
        for (g, a) in q.terms() {
            values[g.0] = a;
        }
        Self {
            group: q.group().clone(),
            values,
        }
    }

    pub fn to_element(&self) -> Result<AlgebraElement> {
        AlgebraElement::from_terms(
            &self.group,
            self.values
                .iter()
                .enumerate()
                .map(|(i, &v)| (GroupElement(i), v)),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }
}

/// Reads a decorated population back as a complex state on `G`: at each
/// `g`, `(N_(0,g) - N_(2,g)) + i (N_(1,g) - N_(3,g))`.
pub fn project_state<T: StateValue>(s: &State<T>) -> Result<ComplexState> {
    let base = base_of_decorated(&s.group)?;
    let n = base.order();
    let values = (0..n)
        .map(|g| {
            let layer = |j: usize| s.values[j * n + g].to_complex().re;
            Complex64::new(layer(0) - layer(2), layer(1) - layer(3))
        })
        .collect();
    Ok(ComplexState {
        group: base,
        values,
    })
}

/// Generator of a dynamical matrix `pi_L(q)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// Real nonnegative coefficients; drives populations.
    Population(SemiringElement),
    /// Complex coefficients; reference quantum dynamics.
    Quantum(AlgebraElement),
}

/// The operator `pi_L(q)` for a formal sum `q` over a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix {
    generator: Generator,
    terms: Vec<(GroupElement, Complex64)>,
}

impl DynamicalMatrix {
    /// A population generator. Coefficients must already be real
    /// (use [`decorated`](Self::decorated) for `R+Z4` coefficients).
    pub fn population(q: SemiringElement) -> Result<Self> {
        if !q.is_real() {
            return Err(Error::Domain(
                "population generator has xi-coefficients; lift it to Z4 x G first".into(),
            ));
        }
        let terms = q
            .terms()
            .map(|(g, a)| (g, Complex64::new(a.beta()[0], 0.0)))
            .collect();
        Ok(Self {
            generator: Generator::Population(q),
            terms,
        })
    }

    /// `pi_L(lift(q))` on `Z4 x G` for `q` in `(R+Z4) G`.
    pub fn decorated(q: &SemiringElement) -> Result<Self> {
        Self::population(lift_to_decorated(q)?)
    }

    pub fn quantum(h: AlgebraElement) -> Self {
        let terms = h.terms().collect();
        Self {
            generator: Generator::Quantum(h),
            terms,
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn group(&self) -> &FiniteGroup {
        match &self.generator {
            Generator::Population(q) => q.group(),
            Generator::Quantum(h) => h.group(),
        }
    }

    pub fn is_population(&self) -> bool {
        matches!(self.generator, Generator::Population(_))
    }

    pub fn terms(&self) -> &[(GroupElement, Complex64)] {
        &self.terms
    }

    /// Generator as an element of `C G`.
    pub fn algebra_element(&self) -> AlgebraElement {
        AlgebraElement::from_terms(self.group(), self.terms.iter().copied())
            .expect("terms belong to the group")
    }

    /// `pi_L(q)^dagger = pi_L(q*)`, so this compares `q` with `q*`.
    pub fn is_self_adjoint(&self) -> bool {
        self.algebra_element().is_self_adjoint(0.0)
    }

    fn check_state_group(&self, group: &FiniteGroup) -> Result<()> {
        if group != self.group() {
            return Err(Error::GroupMismatch(format!(
                "operator on {:?}, state on {:?}",
                self.group().spec(),
                group.spec()
            )));
        }
        Ok(())
    }

    // (term index, h^{-1}) pairs, used to pull values into each output site
    fn pull_map(&self) -> Vec<GroupElement> {
        let g = self.group();
        self.terms.iter().map(|(h, _)| g.inverse(*h)).collect()
    }

    pub fn apply_complex(&self, s: &ComplexState) -> Result<ComplexState> {
        self.check_state_group(&s.group)?;
        let g = self.group();
        let inv = self.pull_map();
        let values = g
            .elements()
            .map(|x| {
                self.terms
                    .iter()
                    .zip(&inv)
                    .fold(Complex64::new(0.0, 0.0), |acc, ((_, a), &hinv)| {
                        acc + a * s.values[g.multiply(hinv, x).0]
                    })
            })
            .collect();
        Ok(ComplexState {
            group: g.clone(),
            values,
        })
    }

    /// `D^dagger psi`.
    pub fn apply_adjoint_complex(&self, s: &ComplexState) -> Result<ComplexState> {
        self.check_state_group(&s.group)?;
        let g = self.group();
        let values = g
            .elements()
            .map(|x| {
                self.terms
                    .iter()
                    .fold(Complex64::new(0.0, 0.0), |acc, (h, a)| {
                        acc + a.conj() * s.values[g.multiply(*h, x).0]
                    })
            })
            .collect();
        Ok(ComplexState {
            group: g.clone(),
            values,
        })
    }

    pub fn apply_real(&self, s: &RealState) -> Result<RealState> {
        self.check_state_group(&s.group)?;
        let Generator::Population(_) = &self.generator else {
            return Err(Error::Domain(
                "real states evolve only under population generators".into(),
            ));
        };
        let g = self.group();
        let inv = self.pull_map();
        let values = g
            .elements()
            .map(|x| {
                self.terms
                    .iter()
                    .zip(&inv)
                    .fold(0.0, |acc, ((_, a), &hinv)| {
                        acc + a.re * s.values[g.multiply(hinv, x).0]
                    })
            })
            .collect();
        Ok(RealState {
            group: g.clone(),
            values,
        })
    }

    /// Chip splitting with per-term floor; see [`apply_chip_with`](Self::apply_chip_with).
    pub fn apply_chip(&self, s: &ChipState) -> Result<(ChipState, u64)> {
        self.apply_chip_with(s, Rounding::Floor)
    }

    /// Splits each stack `N_g` into integer parts routed to `h_j g` and
    /// returns the new state with the number of chips lost to rounding.
    pub fn apply_chip_with(&self, s: &ChipState, rounding: Rounding) -> Result<(ChipState, u64)> {
        self.check_state_group(&s.group)?;
        if !self.is_population() {
            return Err(Error::Domain(
                "chip dynamics needs a population generator".into(),
            ));
        }
        let weights: Vec<f64> = self.terms.iter().map(|(_, a)| a.re).collect();
        let total_weight: f64 = weights.iter().sum();
        if total_weight > 1.0 + 1e-9 {
            return Err(Error::Domain(format!(
                "generator weights sum to {total_weight} > 1 and would create chips"
            )));
        }
        let g = self.group();
        let mut out = vec![0u64; g.order()];
        let mut shares = vec![0u64; weights.len()];
        for (src, &count) in s.values.iter().enumerate() {
            if count == 0 {
                continue;
            }
            rounding.split(count, &weights, &mut shares);
            for ((h, _), &k) in self.terms.iter().zip(&shares) {
                out[g.multiply(*h, GroupElement(src)).0] += k;
            }
        }
        let before = s.total();
        let after: u64 = out.iter().sum();
        debug_assert!(after <= before);
        Ok((
            ChipState {
                group: g.clone(),
                values: out,
            },
            before - after,
        ))
    }

    /// Explicit sparse matrix of this operator.
    pub fn to_sparse(&self) -> SparseOperator {
        let g = self.group();
        let mut op = SparseOperator::zeros(g.order());
        for y in g.elements() {
            for (h, a) in &self.terms {
                op.add(g.multiply(*h, y).0, y.0, *a);
            }
        }
        op
    }
}

/// Applies a dynamical matrix exactly to a real or complex state.
pub trait ExactState: Sized + Clone {
    fn apply(d: &DynamicalMatrix, s: &Self) -> Result<Self>;
}

impl ExactState for RealState {
    fn apply(d: &DynamicalMatrix, s: &Self) -> Result<Self> {
        d.apply_real(s)
    }
}

impl ExactState for ComplexState {
    fn apply(d: &DynamicalMatrix, s: &Self) -> Result<Self> {
        d.apply_complex(s)
    }
}

pub fn apply_exact<S: ExactState>(d: &DynamicalMatrix, s: &S) -> Result<S> {
    S::apply(d, s)
}

pub fn apply_chip(d: &DynamicalMatrix, s: &ChipState) -> Result<(ChipState, u64)> {
    d.apply_chip(s)
}

/// How a stack of chips is cut into integer shares.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rounding {
    /// `floor(p_j N)` per term; the remainder is lost.
    #[default]
    Floor,
    /// Floors first, then hands the `floor(sum_j p_j N) - sum_j floor(p_j N)`
    /// leftover chips one each to the terms with the largest fractional
    /// parts (ties to the earlier term). Never creates chips.
    LargestRemainder,
}

// Absorbs representation error when p*N is an integer up to rounding.
fn floor_count(x: f64) -> u64 {
    (x + 1e-9 * x.abs().max(1.0)).floor().max(0.0) as u64
}

impl Rounding {
    fn split(self, count: u64, weights: &[f64], shares: &mut [u64]) {
        let n = count as f64;
        for (share, &p) in shares.iter_mut().zip(weights) {
            *share = floor_count(p * n);
        }
        if self == Rounding::Floor {
            return;
        }
        let ideal: f64 = weights.iter().map(|p| p * n).sum();
        let budget = floor_count(ideal).min(count);
        let assigned: u64 = shares.iter().sum();
        let mut leftover = budget.saturating_sub(assigned);
        if leftover == 0 {
            return;
        }
        let mut order: Vec<usize> = (0..weights.len()).collect();
        let frac = |j: usize| weights[j] * n - shares[j] as f64;
        order.sort_by(|&a, &b| frac(b).total_cmp(&frac(a)).then(a.cmp(&b)));
        for j in order {
            if leftover == 0 {
                break;
            }
            shares[j] += 1;
            leftover -= 1;
        }
    }
}

/// One entry per evolution step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LossEntry {
    pub step: usize,
    pub chips_lost: u64,
    pub total_remaining: u64,
}

/// Chips destroyed by rounding, step by step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LossLedger {
    pub entries: Vec<LossEntry>,
}

impl LossLedger {
    pub fn total_lost(&self) -> u64 {
        self.entries.iter().map(|e| e.chips_lost).sum()
    }
}

/// `[s, D s, D^2 s, ...]`, `steps + 1` states.
pub fn evolve_exact<S: ExactState>(d: &DynamicalMatrix, s: &S, steps: usize) -> Result<Vec<S>> {
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(s.clone());
    for _ in 0..steps {
        let next = S::apply(d, traj.last().expect("nonempty"))?;
        traj.push(next);
    }
    Ok(traj)
}

pub fn evolve_chips(
    d: &DynamicalMatrix,
    s: &ChipState,
    steps: usize,
    rounding: Rounding,
) -> Result<(Vec<ChipState>, LossLedger)> {
    let mut traj = Vec::with_capacity(steps + 1);
    let mut ledger = LossLedger::default();
    traj.push(s.clone());
    for step in 1..=steps {
        let (next, lost) = d.apply_chip_with(traj.last().expect("nonempty"), rounding)?;
        ledger.entries.push(LossEntry {
            step,
            chips_lost: lost,
            total_remaining: next.total(),
        });
        traj.push(next);
    }
    Ok((traj, ledger))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionMode {
    Exact,
    Chip,
}

pub const CONSERVATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationReport {
    pub conserved: bool,
    pub max_deviation: f64,
}

/// Checks `D psi_0 = psi_0` and `D^dagger psi_0 = psi_0`.
pub fn check_conservation(d: &DynamicalMatrix) -> ConservationReport {
    let ones = RealState::uniform(d.group()).to_complex();
    let fwd = d.apply_complex(&ones).expect("same group");
    let adj = d.apply_adjoint_complex(&ones).expect("same group");
    let max_deviation = fwd
        .values
        .iter()
        .chain(&adj.values)
        .map(|v| (v - Complex64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max);
    ConservationReport {
        conserved: max_deviation <= CONSERVATION_TOLERANCE,
        max_deviation,
    }
}

/// Upper bound on the group order for explicit-matrix checks.
pub const MAX_DENSE_ORDER: usize = 4096;

/// Column-stored sparse matrix with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    columns: Vec<BTreeMap<usize, Complex64>>,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            columns: vec![BTreeMap::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.columns[col]
            .get(&row)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        if v == Complex64::new(0.0, 0.0) {
            self.columns[col].remove(&row);
        } else {
            self.columns[col].insert(row, v);
        }
    }

    fn add(&mut self, row: usize, col: usize, v: Complex64) {
        let cur = self.get(row, col);
        self.set(row, col, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, &v)| (r, c, v)))
    }
}

/// Whether `op` commutes with every right translation
/// `U_g |g'> = |g' g^{-1}>`, i.e. `op[x g^{-1}, y g^{-1}] = op[x, y]`
/// for all `g`. Entries are compared exactly.
pub fn check_translation_invariance(op: &SparseOperator, group: &FiniteGroup) -> Result<bool> {
    if group.order() > MAX_DENSE_ORDER {
        return Err(Error::Capacity {
            what: "translation invariance check",
            size: group.order(),
            limit: MAX_DENSE_ORDER,
        });
    }
    if op.dim() != group.order() {
        return Err(Error::GroupMismatch(format!(
            "operator dimension {} vs group order {}",
            op.dim(),
            group.order()
        )));
    }
    for g in group.elements() {
        let ginv = group.inverse(g);
        for (x, y, v) in op.entries() {
            let xs = group.multiply(GroupElement(x), ginv).0;
            let ys = group.multiply(GroupElement(y), ginv).0;
            if op.get(xs, ys) != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S` is closed under inversion and inverse pairs carry equal weights.
pub fn is_self_adjoint(group: &FiniteGroup, gens: &GeneratorSet) -> bool {
    let weights: BTreeMap<GroupElement, f64> = gens.iter().collect();
    gens.iter().all(|(s, p)| {
        weights
            .get(&group.inverse(s))
            .is_some_and(|&q| (p - q).abs() <= 1e-15)
    })
}

/// `pi_L(sum_j p_j g_j)` for a weighted generator set.
pub fn build_dynamical_matrix(group: &FiniteGroup, gens: &GeneratorSet) -> Result<DynamicalMatrix> {
    let sum: f64 = gens.weights().iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {sum}, not 1"
        )));
    }
    let terms = gens
        .iter()
        .map(|(g, p)| Ok((group.element(g.0)?, crate::semiring::PosQuad::real(p)?)))
        .collect::<Result<Vec<_>>>()?;
    DynamicalMatrix::population(SemiringElement::from_terms(group, terms)?)
}

/// A chip-conserving generator approximating `exp(i t H)` after `steps`
/// applications and a rescaling by `gamma^{-steps}`.
#[derive(Debug, Clone)]
pub struct ExponentialGenerator {
    pub matrix: DynamicalMatrix,
    pub gamma: f64,
    /// `s(1 + (i t/m) H)` before lifting and scaling.
    pub unscaled: SemiringElement,
    pub time: f64,
    pub steps: usize,
}

impl ExponentialGenerator {
    /// `gamma^{-k}`, undoing `k` applications of the normalization.
    pub fn rescale(&self, k: usize) -> f64 {
        self.gamma.powi(-(k as i32))
    }
}

/// `gamma * lift(s(1 + (i t/m) H))` with `gamma` the inverse column sum.
pub fn build_exponential_generator(
    h: &AlgebraElement,
    t: f64,
    m: usize,
) -> Result<ExponentialGenerator> {
    if m == 0 {
        return Err(Error::Domain("need at least one step".into()));
    }
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "evolution time must be positive, got {t}"
        )));
    }
    let group = h.group();
    let step = h.scale(Complex64::new(0.0, t / m as f64));
    let one_plus = AlgebraElement::one(group).add(&step)?;
    let unscaled = section_elem(&one_plus);
    finish_generator(unscaled, t, m)
}

/// `gamma (1 + (t/m)(xi S + xi S*))` with `gamma = 1/(1 + 2t/m)` on `Z_N`,
/// taken verbatim; after rescaling it realizes `exp(2 i t H)` for
/// `H = (S + S*)/2`.
pub fn build_literal_hopping_generator(
    group: &FiniteGroup,
    t: f64,
    m: usize,
) -> Result<ExponentialGenerator> {
    if m == 0 || t <= 0.0 || !t.is_finite() {
        return Err(Error::Domain("need m >= 1 and t > 0".into()));
    }
    let hop = crate::semiring::PosQuad::monomial(t / m as f64, 1)?;
    let unscaled = SemiringElement::from_terms(
        group,
        [
            (group.identity(), crate::semiring::PosQuad::ONE),
            (group.cyclic_power(1)?, hop),
            (group.cyclic_power(-1)?, hop),
        ],
    )?;
    finish_generator(unscaled, t, m)
}

fn finish_generator(unscaled: SemiringElement, t: f64, m: usize) -> Result<ExponentialGenerator> {
    let lifted = lift_to_decorated(&unscaled)?;
    let gamma = 1.0 / lifted.total_weight();
    let matrix = DynamicalMatrix::population(lifted.scale_real(gamma)?)?;
    Ok(ExponentialGenerator {
        matrix,
        gamma,
        unscaled,
        time: t,
        steps: m,
    })
}
