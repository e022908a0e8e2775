//! Finite groups with a canonical enumeration, generator sets, Cayley
//! graphs/digraphs and DOT export.
//!
//! Elements are plain indices into a fixed enumeration. Cyclic groups
//! enumerate `0..N`; direct products use row-major order with the left
//! factor major, so `(a, b)` has index `a * |B| + b`. The identity is
//! always index 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element in its group's canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn id(self) -> usize {
        self.0
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Kind {
    Cyclic(usize),
    Product(FiniteGroup, FiniteGroup),
}

/// An enumerable finite group. Cheap to clone; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    kind: Arc<Kind>,
    order: usize,
}

/// Serializable description of a group, e.g. `{"type":"cyclic","N":20}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        #[serde(rename = "N")]
        n: usize,
    },
    Product {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
}

/// The cyclic group `Z_N` with addition mod `N`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(FiniteGroup {
        kind: Arc::new(Kind::Cyclic(n)),
        order: n,
    })
}

/// The direct product `A x B`, enumerated row-major with `A` major.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let order = a.order.checked_mul(b.order).ok_or(Error::Capacity {
        what: "direct product order",
        size: usize::MAX,
        limit: usize::MAX,
    })?;
    Ok(FiniteGroup {
        kind: Arc::new(Kind::Product(a.clone(), b.clone())),
        order,
    })
}

/// `Z_4 x G`, the decorated group whose four layers carry the signed real
/// and imaginary parts of a complex amplitude.
pub fn decorate(g: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product(&make_cyclic(4)?, g)
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic { n } => make_cyclic(*n),
            GroupSpec::Product { left, right } => {
                direct_product(&Self::from_spec(left)?, &Self::from_spec(right)?)
            }
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match &*self.kind {
            Kind::Cyclic(n) => GroupSpec::Cyclic { n: *n },
            Kind::Product(a, b) => GroupSpec::Product {
                left: Box::new(a.spec()),
                right: Box::new(b.spec()),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    /// Checked conversion from a raw index.
    pub fn element(&self, id: usize) -> Result<GroupElement> {
        if id < self.order {
            Ok(GroupElement(id))
        } else {
            Err(Error::ElementOutOfRange {
                id,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    /// `Some(N)` when this is `Z_N`.
    pub fn cyclic_order(&self) -> Option<usize> {
        match &*self.kind {
            Kind::Cyclic(n) => Some(*n),
            Kind::Product(..) => None,
        }
    }

    pub fn factors(&self) -> Option<(&FiniteGroup, &FiniteGroup)> {
        match &*self.kind {
            Kind::Cyclic(_) => None,
            Kind::Product(a, b) => Some((a, b)),
        }
    }

    /// For `Z_N`, the element `S^power` where `S = 1` is the standard generator.
    pub fn cyclic_power(&self, power: i64) -> Result<GroupElement> {
        let n = self
            .cyclic_order()
            .ok_or_else(|| Error::Domain("cyclic_power on a non-cyclic group".into()))?;
        Ok(GroupElement(power.rem_euclid(n as i64) as usize))
    }

    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        debug_assert!(a.0 < self.order && b.0 < self.order);
        match &*self.kind {
            Kind::Cyclic(n) => GroupElement((a.0 + b.0) % n),
            Kind::Product(l, r) => {
                let (a1, a2) = (a.0 / r.order, a.0 % r.order);
                let (b1, b2) = (b.0 / r.order, b.0 % r.order);
                let c1 = l.multiply(GroupElement(a1), GroupElement(b1));
                let c2 = r.multiply(GroupElement(a2), GroupElement(b2));
                GroupElement(c1.0 * r.order + c2.0)
            }
        }
    }

    pub fn inverse(&self, a: GroupElement) -> GroupElement {
        debug_assert!(a.0 < self.order);
        match &*self.kind {
            Kind::Cyclic(n) => GroupElement((n - a.0) % n),
            Kind::Product(l, r) => {
                let i1 = l.inverse(GroupElement(a.0 / r.order));
                let i2 = r.inverse(GroupElement(a.0 % r.order));
                GroupElement(i1.0 * r.order + i2.0)
            }
        }
    }

    /// Index of `(left, right)` in a product group.
    pub fn compose(&self, left: GroupElement, right: GroupElement) -> Result<GroupElement> {
        let (l, r) = self.require_product()?;
        if left.0 >= l.order || right.0 >= r.order {
            return Err(Error::ElementOutOfRange {
                id: left.0.max(right.0),
                order: l.order.min(r.order),
            });
        }
        Ok(GroupElement(left.0 * r.order + right.0))
    }

    /// Inverse of [`compose`](Self::compose).
    pub fn decompose(&self, g: GroupElement) -> Result<(GroupElement, GroupElement)> {
        let (_, r) = self.require_product()?;
        Ok((GroupElement(g.0 / r.order), GroupElement(g.0 % r.order)))
    }

    fn require_product(&self) -> Result<(&FiniteGroup, &FiniteGroup)> {
        self.factors()
            .ok_or_else(|| Error::Domain("expected a direct product group".into()))
    }

    /// Integer for cyclic groups, `(a,b)` tuples for products.
    pub fn label(&self, g: GroupElement) -> String {
        match &*self.kind {
            Kind::Cyclic(_) => g.0.to_string(),
            Kind::Product(l, r) => format!(
                "({},{})",
                l.label(GroupElement(g.0 / r.order)),
                r.label(GroupElement(g.0 % r.order))
            ),
        }
    }
}

/// An ordered generator set `S = {g_1, ..., g_s}` with splitting weights
/// `p_j` that sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    elements: Vec<GroupElement>,
    weights: Vec<f64>,
}

pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

impl GeneratorSet {
    pub fn new(elements: Vec<GroupElement>, weights: Vec<f64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidGenerators("generator set is empty".into()));
        }
        if elements.len() != weights.len() {
            return Err(Error::InvalidWeights(format!(
                "{} generators but {} weights",
                elements.len(),
                weights.len()
            )));
        }
        let distinct: BTreeSet<_> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(Error::InvalidGenerators(
                "generators are not distinct".into(),
            ));
        }
        if let Some(w) = weights
            .iter()
            .find(|w| !w.is_finite() || **w < 0.0 || **w > 1.0)
        {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self { elements, weights })
    }

    /// Equal weights `1/s`.
    pub fn uniform(elements: Vec<GroupElement>) -> Result<Self> {
        let s = elements.len().max(1);
        let weights = vec![1.0 / s as f64; elements.len()];
        Self::new(elements, weights)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GroupElement, f64)> + '_ {
        self.elements
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    fn validate_for(&self, group: &FiniteGroup) -> Result<()> {
        for s in &self.elements {
            group.element(s.0)?;
            if *s == group.identity() {
                return Err(Error::SelfLoop);
            }
        }
        Ok(())
    }
}

/// Undirected Cayley graph: edges `{g, sg}` for `g` in `G`, `s` in `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    pub vertices: Vec<GroupElement>,
    /// Normalized so that the first endpoint is the smaller index.
    pub edges: BTreeSet<(GroupElement, GroupElement)>,
}

/// A colored arc `source -> target`; `color` is the generator's position in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoredArc {
    pub source: GroupElement,
    pub target: GroupElement,
    pub color: usize,
}

/// Directed, generator-colored Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyDigraph {
    pub vertices: Vec<GroupElement>,
    pub arcs: Vec<ColoredArc>,
    pub colors: usize,
}

pub fn cayley_graph(group: &FiniteGroup, gens: &GeneratorSet) -> Result<CayleyGraph> {
    gens.validate_for(group)?;
    let mut edges = BTreeSet::new();
    for g in group.elements() {
        for &s in gens.elements() {
            let h = group.multiply(s, g);
            edges.insert((g.min(h), g.max(h)));
        }
    }
    Ok(CayleyGraph {
        vertices: group.elements().collect(),
        edges,
    })
}

pub fn cayley_digraph(group: &FiniteGroup, gens: &GeneratorSet) -> Result<CayleyDigraph> {
    gens.validate_for(group)?;
    let mut arcs = Vec::with_capacity(group.order() * gens.len());
    for g in group.elements() {
        for (color, &s) in gens.elements().iter().enumerate() {
            arcs.push(ColoredArc {
                source: g,
                target: group.multiply(s, g),
                color,
            });
        }
    }
    Ok(CayleyDigraph {
        vertices: group.elements().collect(),
        arcs,
        colors: gens.len(),
    })
}

impl CayleyGraph {
    pub fn degree(&self, v: GroupElement) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut adj: HashMap<GroupElement, Vec<GroupElement>> = HashMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn to_dot(&self, labeler: impl Fn(GroupElement) -> String) -> String {
        let mut out = String::from("graph {\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", labeler(v));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", labeler(a), labeler(b));
        }
        out.push_str("}\n");
        out
    }
}

/// Arc colors by generator position; wraps around past the end.
pub const PALETTE: [&str; 8] = [
    "red", "green", "blue", "orange", "purple", "brown", "magenta", "cyan",
];

impl CayleyDigraph {
    pub fn arcs_of_color(&self, color: usize) -> impl Iterator<Item = &ColoredArc> {
        self.arcs.iter().filter(move |a| a.color == color)
    }

    /// True when the arcs of `color` define a bijection on the vertex set.
    pub fn color_is_permutation(&self, color: usize) -> bool {
        let n = self.vertices.len();
        let mut out = vec![0usize; n];
        let mut inc = vec![0usize; n];
        for a in self.arcs_of_color(color) {
            out[a.source.0] += 1;
            inc[a.target.0] += 1;
        }
        out.iter().all(|&c| c == 1) && inc.iter().all(|&c| c == 1)
    }

    /// Cycle decomposition of a permutation color, each cycle starting at
    /// its smallest vertex. `None` if the color is not a permutation.
    pub fn color_cycles(&self, color: usize) -> Option<Vec<Vec<GroupElement>>> {
        if !self.color_is_permutation(color) {
            return None;
        }
        let mut next = vec![GroupElement(0); self.vertices.len()];
        for a in self.arcs_of_color(color) {
            next[a.source.0] = a.target;
        }
        let mut seen = vec![false; next.len()];
        let mut cycles = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(GroupElement(v));
                v = next[v].0;
            }
            cycles.push(cycle);
        }
        Some(cycles)
    }

    pub fn to_dot(&self, labeler: impl Fn(GroupElement) -> String) -> String {
        let mut out = String::from("digraph {\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", labeler(v));
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [color={}];",
                labeler(a.source),
                labeler(a.target),
                PALETTE[a.color % PALETTE.len()]
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Ball of radius `r` in the free group on `n` generators: all reduced
/// words of length at most `r`, with arcs `g -> s g` for each generator
/// `s` whenever both ends lie in the ball.
#[derive(Debug, Clone)]
pub struct FreeGroupBall {
    pub generators: usize,
    pub radius: usize,
    words: Vec<Vec<u8>>,
    pub digraph: CayleyDigraph,
}

pub const MAX_BALL_VERTICES: usize = 1 << 20;

/// Closed-form vertex count of the radius-`r` ball in the `2n`-regular tree.
pub fn free_group_ball_size(n: usize, r: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return r.checked_mul(2)?.checked_add(1);
    }
    let branch = 2 * n - 1;
    let pow = branch.checked_pow(u32::try_from(r).ok()?)?;
    let shell = (2 * n).checked_mul(pow - 1)? / (2 * n - 2);
    shell.checked_add(1)
}

// Letters: 2i is generator i, 2i+1 its inverse.
fn inverse_letter(x: u8) -> u8 {
    x ^ 1
}

pub fn free_group_ball(num_generators: usize, radius: usize) -> Result<FreeGroupBall> {
    if num_generators == 0 || num_generators > 26 {
        return Err(Error::InvalidGenerators(format!(
            "free group needs 1..=26 generators, got {num_generators}"
        )));
    }
    let size = free_group_ball_size(num_generators, radius).unwrap_or(usize::MAX);
    if size > MAX_BALL_VERTICES {
        return Err(Error::Capacity {
            what: "free group ball",
            size,
            limit: MAX_BALL_VERTICES,
        });
    }

    let letters = (2 * num_generators) as u8;
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut level_start = 0;
    for _ in 0..radius {
        let level_end = words.len();
        for w in level_start..level_end {
            for x in 0..letters {
                if words[w].first().is_some_and(|&f| f == inverse_letter(x)) {
                    continue;
                }
                let mut nw = Vec::with_capacity(words[w].len() + 1);
                nw.push(x);
                nw.extend_from_slice(&words[w]);
                words.push(nw);
            }
        }
        level_start = level_end;
    }

    let index: HashMap<&[u8], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut arcs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for gen in 0..num_generators {
            let s = (2 * gen) as u8;
            let product: Vec<u8> = if w.first() == Some(&inverse_letter(s)) {
                w[1..].to_vec()
            } else {
                std::iter::once(s).chain(w.iter().copied()).collect()
            };
            if let Some(&j) = index.get(product.as_slice()) {
                arcs.push(ColoredArc {
                    source: GroupElement(i),
                    target: GroupElement(j),
                    color: gen,
                });
            }
        }
    }

    let digraph = CayleyDigraph {
        vertices: (0..words.len()).map(GroupElement).collect(),
        arcs,
        colors: num_generators,
    };
    Ok(FreeGroupBall {
        generators: num_generators,
        radius,
        words,
        digraph,
    })
}

impl FreeGroupBall {
    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    /// Reduced word over `{a, b, ..., A, B, ...}`; `e` for the identity.
    pub fn word(&self, v: GroupElement) -> String {
        let w = &self.words[v.0];
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter()
            .map(|&x| {
                let base = if x % 2 == 0 { b'a' } else { b'A' };
                (base + x / 2) as char
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        self.digraph.to_dot(|v| self.word(v))
    }
}
