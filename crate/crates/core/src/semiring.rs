//! Coefficient arithmetic and formal sums over a finite group.
//!
//! Two coefficient rings matter here: the semiring `R+Z4` of nonnegative
//! quadruples `b0 + b1 xi + b2 xi^2 + b3 xi^3` ([`PosQuad`]) and the
//! complex numbers. [`FormalSum`] is the group (semi)ring over either one,
//! with multiplication given by group convolution.
//!
//! The quotient map `chi: R+Z4 -> C` sends `xi` to `i`; its kernel is
//! `(1 + xi^2) R+Z4`. [`section_scalar`] is a right inverse of `chi` that
//! is additive only on the nonnegative reals, never multiplicative.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{decorate, FiniteGroup, GroupElement, GroupSpec};

pub type ComplexNum = Complex64;

/// Complex coefficients with magnitude at or below this are pruned.
pub const PRUNE_TOLERANCE: f64 = 1e-15;

/// An element `sum_j beta_j xi^j` of `R+Z4`; all four entries are nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct PosQuad([f64; 4]);

impl TryFrom<[f64; 4]> for PosQuad {
    type Error = Error;

    fn try_from(beta: [f64; 4]) -> Result<Self> {
        PosQuad::new(beta)
    }
}

impl From<PosQuad> for [f64; 4] {
    fn from(q: PosQuad) -> Self {
        q.0
    }
}

#[allow(clippy::should_implement_trait)]
impl PosQuad {
    pub const ZERO: PosQuad = PosQuad([0.0; 4]);
    pub const ONE: PosQuad = PosQuad([1.0, 0.0, 0.0, 0.0]);

    pub fn new(beta: [f64; 4]) -> Result<Self> {
        if beta.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::Domain(format!(
                "R+Z4 coefficients must be finite and nonnegative, got {beta:?}"
            )));
        }
        Ok(Self(beta))
    }

    /// `r xi^j`.
    pub fn monomial(r: f64, j: usize) -> Result<Self> {
        let mut beta = [0.0; 4];
        beta[j % 4] = r;
        Self::new(beta)
    }

    /// The plain real `r`, sitting on `xi^0`.
    pub fn real(r: f64) -> Result<Self> {
        Self::monomial(r, 0)
    }

    pub fn beta(&self) -> [f64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0.0)
    }

    /// True when only the `xi^0` entry may be nonzero.
    pub fn is_real(&self) -> bool {
        self.0[1..].iter().all(|&b| b == 0.0)
    }

    pub fn add(self, other: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    /// Z4-cyclic convolution.
    pub fn mul(self, other: Self) -> Self {
        let mut out = [0.0; 4];
        for (i, &p) in self.0.iter().enumerate() {
            for (j, &q) in other.0.iter().enumerate() {
                out[(i + j) % 4] += p * q;
            }
        }
        Self(out)
    }

    pub fn scale(self, r: f64) -> Result<Self> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::Domain(format!(
                "scale factor {r} is not a nonnegative real"
            )));
        }
        Ok(Self(self.0.map(|b| b * r)))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

pub fn quad_add(a: PosQuad, b: PosQuad) -> PosQuad {
    a.add(b)
}

pub fn quad_mul(a: PosQuad, b: PosQuad) -> PosQuad {
    a.mul(b)
}

pub fn quad_scale(r: f64, a: PosQuad) -> Result<PosQuad> {
    a.scale(r)
}

/// `chi(b0 + b1 xi + b2 xi^2 + b3 xi^3) = (b0 - b2) + i (b1 - b3)`.
pub fn chi_quad(a: PosQuad) -> ComplexNum {
    let [b0, b1, b2, b3] = a.0;
    Complex64::new(b0 - b2, b1 - b3)
}

/// `|a|` goes to `xi^0` or `xi^2` and `|b|` to `xi^1` or `xi^3` by sign.
/// Zero counts as positive.
pub fn section_scalar(z: ComplexNum) -> PosQuad {
    let mut beta = [0.0; 4];
    beta[if z.re >= 0.0 { 0 } else { 2 }] = z.re.abs();
    beta[if z.im >= 0.0 { 1 } else { 3 }] = z.im.abs();
    PosQuad(beta)
}

/// Coefficient ring of a [`FormalSum`].
pub trait Coefficient: Copy + PartialEq + Debug {
    /// JSON representation of a single coefficient.
    type Doc: Serialize + DeserializeOwned;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn is_negligible(&self) -> bool;
    fn to_doc(self) -> Self::Doc;
    fn from_doc(doc: Self::Doc) -> Result<Self>;
}

impl Coefficient for PosQuad {
    type Doc = PosQuad;

    fn zero() -> Self {
        PosQuad::ZERO
    }
    fn one() -> Self {
        PosQuad::ONE
    }
    fn add(self, other: Self) -> Self {
        PosQuad::add(self, other)
    }
    fn mul(self, other: Self) -> Self {
        PosQuad::mul(self, other)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn to_doc(self) -> Self::Doc {
        self
    }
    fn from_doc(doc: Self::Doc) -> Result<Self> {
        Ok(doc)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl Coefficient for Complex64 {
    type Doc = ComplexDoc;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn is_negligible(&self) -> bool {
        self.norm() <= PRUNE_TOLERANCE
    }
    fn to_doc(self) -> Self::Doc {
        ComplexDoc {
            re: self.re,
            im: self.im,
        }
    }
    fn from_doc(doc: Self::Doc) -> Result<Self> {
        Ok(Complex64::new(doc.re, doc.im))
    }
}

/// A finite formal sum `sum_g alpha_g g` over a finite group. Stored
/// sparse and pruned: absent elements have zero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<C: Coefficient> {
    group: FiniteGroup,
    terms: BTreeMap<GroupElement, C>,
}

/// An element of `(R+Z4) G`.
pub type SemiringElement = FormalSum<PosQuad>;
/// An element of the group algebra `C G`.
pub type AlgebraElement = FormalSum<Complex64>;

impl<C: Coefficient> FormalSum<C> {
    pub fn zero(group: &FiniteGroup) -> Self {
        Self {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 e`.
    pub fn one(group: &FiniteGroup) -> Self {
        Self::monomial(group, group.identity(), C::one())
    }

    pub fn monomial(group: &FiniteGroup, g: GroupElement, c: C) -> Self {
        let mut out = Self::zero(group);
        out.accumulate(g, c);
        out
    }

    /// Builds a sum from `(element, coefficient)` pairs; repeated elements add.
    pub fn from_terms(
        group: &FiniteGroup,
        terms: impl IntoIterator<Item = (GroupElement, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            group.element(g.0)?;
            out.accumulate(g, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, g: GroupElement, c: C) {
        let entry = self.terms.entry(g).or_insert_with(C::zero);
        *entry = entry.add(c);
        if entry.is_negligible() {
            self.terms.remove(&g);
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeff(&self, g: GroupElement) -> C {
        self.terms.get(&g).copied().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, C)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{:?} vs {:?}",
                self.group.spec(),
                other.group.spec()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.accumulate(g, c);
        }
        Ok(out)
    }

    /// Group convolution: `(q q')_g = sum_{g1 g2 = g} alpha_g1 alpha'_g2`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = Self::zero(&self.group);
        for (g1, a) in self.terms() {
            for (g2, b) in other.terms() {
                let entry = out
                    .terms
                    .entry(self.group.multiply(g1, g2))
                    .or_insert_with(C::zero);
                *entry = entry.add(a.mul(b));
            }
        }
        out.terms.retain(|_, c| !c.is_negligible());
        Ok(out)
    }

    /// Multiplies every coefficient by `c` (i.e. by `c e`, which is central).
    pub fn scale(&self, c: C) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, a) in self.terms() {
            out.accumulate(g, c.mul(a));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.group);
        for _ in 0..k {
            out = out.mul(self).expect("same group");
        }
        out
    }

    /// `sum_k coeffs[k] q^k`.
    pub fn polynomial(&self, coeffs: &[C]) -> Self {
        let mut out = Self::zero(&self.group);
        let mut power = Self::one(&self.group);
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(self).expect("same group");
            }
            out = out.add(&power.scale(c)).expect("same group");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ElementDoc {
            group: self.group.spec(),
            terms: self
                .terms()
                .map(|(g, c)| TermDoc {
                    g: element_label(&self.group, g),
                    coeff: c.to_doc(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: ElementDoc<C::Doc> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Serialization(e.to_string()))?;
        let group = FiniteGroup::from_spec(&doc.group)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            terms.push((element_from_label(&group, &t.g)?, C::from_doc(t.coeff)?));
        }
        Self::from_terms(&group, terms)
    }
}

impl SemiringElement {
    pub fn scale_real(&self, r: f64) -> Result<Self> {
        Ok(self.scale(PosQuad::real(r)?))
    }

    /// True when every coefficient lives on `xi^0`, i.e. this is in `R+ G`.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(PosQuad::is_real)
    }

    /// Sum of all scalar entries `sum_g sum_j beta_{g,j}`.
    pub fn total_weight(&self) -> f64 {
        self.terms.values().map(PosQuad::sum).sum()
    }
}

impl AlgebraElement {
    /// `q* = sum conj(alpha_g) g^{-1}`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, a) in self.terms() {
            out.accumulate(self.group.inverse(g), a.conj());
        }
        out
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> ComplexNum {
        self.coeff(self.group.identity())
    }

    /// `<q, q'> = T(q* q') = sum_g conj(alpha_g) alpha'_g`.
    pub fn inner_product(&self, other: &Self) -> Result<ComplexNum> {
        self.check_group(other)?;
        Ok(self.terms().map(|(g, a)| a.conj() * other.coeff(g)).sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.approx_eq(&self.star(), tol)
    }

    /// Coefficientwise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.group == other.group && self.max_abs_diff(other) <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|&g| (self.coeff(g) - other.coeff(g)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn star(q: &AlgebraElement) -> AlgebraElement {
    q.star()
}

pub fn trace(q: &AlgebraElement) -> ComplexNum {
    q.trace()
}

pub fn inner_product(q: &AlgebraElement, q2: &AlgebraElement) -> Result<ComplexNum> {
    q.inner_product(q2)
}

/// Applies `chi` coefficientwise: `(R+Z4) G -> C G`.
pub fn chi_elem(q: &SemiringElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(&q.group);
    for (g, a) in q.terms() {
        out.accumulate(g, chi_quad(a));
    }
    out
}

/// Applies the section coefficientwise: `C G -> (R+Z4) G`.
pub fn section_elem(q: &AlgebraElement) -> SemiringElement {
    let mut out = SemiringElement::zero(&q.group);
    for (g, a) in q.terms() {
        out.accumulate(g, section_scalar(a));
    }
    out
}

/// Realizes `(R+Z4) G ~ R+(Z4 x G)`: the entry `beta_j` at `g` becomes the
/// real coefficient at `(j, g)`.
pub fn lift_to_decorated(q: &SemiringElement) -> Result<SemiringElement> {
    let dec = decorate(&q.group)?;
    let mut out = SemiringElement::zero(&dec);
    for (g, a) in q.terms() {
        for (j, &b) in a.0.iter().enumerate() {
            if b != 0.0 {
                let x = dec.compose(GroupElement(j), g)?;
                out.accumulate(x, PosQuad::real(b)?);
            }
        }
    }
    Ok(out)
}

/// Inverse of [`lift_to_decorated`]. Fails unless the group is `Z4 x G`
/// and all coefficients are real.
pub fn lower_from_decorated(q: &SemiringElement) -> Result<SemiringElement> {
    let base = base_of_decorated(&q.group)?;
    if !q.is_real() {
        return Err(Error::Domain(
            "decorated element must have real coefficients".into(),
        ));
    }
    let mut out = SemiringElement::zero(&base);
    for (x, a) in q.terms() {
        let (j, g) = q.group.decompose(x)?;
        out.accumulate(g, PosQuad::monomial(a.0[0], j.0)?);
    }
    Ok(out)
}

/// The `G` in `Z4 x G`.
pub fn base_of_decorated(group: &FiniteGroup) -> Result<FiniteGroup> {
    match group.factors() {
        Some((z, base)) if z.cyclic_order() == Some(4) => Ok(base.clone()),
        _ => Err(Error::Domain(format!(
            "expected a Z4-decorated group, got {:?}",
            group.spec()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementLabel {
    Id(usize),
    Tuple(Vec<ElementLabel>),
}

pub fn element_label(group: &FiniteGroup, g: GroupElement) -> ElementLabel {
    match group.factors() {
        None => ElementLabel::Id(g.0),
        Some((l, r)) => {
            let (a, b) = group.decompose(g).expect("product group");
            ElementLabel::Tuple(vec![element_label(l, a), element_label(r, b)])
        }
    }
}

pub fn element_from_label(group: &FiniteGroup, label: &ElementLabel) -> Result<GroupElement> {
    match (group.factors(), label) {
        (None, ElementLabel::Id(id)) => group.element(*id),
        (Some((l, r)), ElementLabel::Tuple(parts)) if parts.len() == 2 => {
            let a = element_from_label(l, &parts[0])?;
            let b = element_from_label(r, &parts[1])?;
            group.compose(a, b)
        }
        _ => Err(Error::Serialization(format!(
            "element label {label:?} does not match group {:?}",
            group.spec()
        ))),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc<D> {
    group: GroupSpec,
    terms: Vec<TermDoc<D>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc<D> {
    g: ElementLabel,
    coeff: D,
}
