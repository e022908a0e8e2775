//! Brute-force quantum reference used to check the population dynamics:
//! dense `pi_L` matrices, spectra, and exact or truncated time evolution.
//!
//! Fourier convention: `psi_k(n) = e^{i 2 pi k n / N} / sqrt(N)`. Since
//! `(S psi_k)(n) = psi_k(n - 1)`, the shift acts on `psi_k` by
//! `e^{-i 2 pi k / N}` and `H = sum_h c_h S^h` has eigenvalue
//! `sum_h c_h e^{-i 2 pi k h / N}`. For `H = (S + S*)/2` this is
//! `cos(2 pi k / N)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::{ComplexState, MAX_DENSE_ORDER};
use crate::error::{Error, Result};
use crate::groups::{make_cyclic, FiniteGroup, GroupElement};
use crate::semiring::AlgebraElement;

/// Largest dimension accepted by the dense eigensolver.
pub const MAX_EIGEN_DIM: usize = 512;

/// Residual bound relative to the operator's Frobenius norm.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// A dense complex matrix indexed by the elements of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    group: FiniteGroup,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    /// A matrix from explicit rows; indexed by `Z_dim`.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("matrix is not square".into()));
        }
        Ok(Self {
            group: make_cyclic(dim.max(1))?,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                self.entries[r * n..(r + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        DMatrix::from_row_slice(n, n, &self.entries)
    }
}

/// Dense `pi_L(q)`: entry `(g', g)` is the coefficient of `g' g^{-1}`.
pub fn to_dense(q: &AlgebraElement) -> Result<DenseOperator> {
    let group = q.group();
    let n = group.order();
    if n > MAX_DENSE_ORDER {
        return Err(Error::Capacity {
            what: "dense operator",
            size: n,
            limit: MAX_DENSE_ORDER,
        });
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for col in group.elements() {
        for (h, a) in q.terms() {
            let row = group.multiply(h, col);
            entries[row.0 * n + col.0] += a;
        }
    }
    Ok(DenseOperator {
        group: group.clone(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    /// Unit-norm eigenvector.
    pub vector: ComplexState,
}

impl EigenPair {
    /// `||A v - lambda v||`.
    pub fn residual(&self, a: &DenseOperator) -> f64 {
        let v = self.vector.values();
        a.apply(v)
            .iter()
            .zip(v)
            .map(|(av, x)| (av - self.value * x).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `psi_k` on `Z_N` with unit norm.
pub fn fourier_mode(group: &FiniteGroup, k: usize) -> Result<ComplexState> {
    let n = group
        .cyclic_order()
        .ok_or_else(|| Error::Domain("Fourier modes need a cyclic group".into()))?;
    let norm = 1.0 / (n as f64).sqrt();
    let values = (0..n)
        .map(|site| Complex64::from_polar(norm, 2.0 * PI * ((k * site) % n) as f64 / n as f64))
        .collect();
    ComplexState::new(group, values)
}

/// Eigenvalue of the circulant `H` on the mode `psi_k`.
pub fn dft_eigenvalue(h: &AlgebraElement, k: usize) -> Result<Complex64> {
    let n = h
        .group()
        .cyclic_order()
        .ok_or_else(|| Error::Domain("DFT eigensystem needs a cyclic group".into()))?;
    Ok(h.terms()
        .map(|(g, c)| c * Complex64::from_polar(1.0, -2.0 * PI * ((k * g.0) % n) as f64 / n as f64))
        .sum())
}

/// Exact eigenpairs of a circulant operator, ordered by `k = 0..N`.
pub fn dft_eigensystem(h: &AlgebraElement) -> Result<Vec<EigenPair>> {
    let n = h
        .group()
        .cyclic_order()
        .ok_or_else(|| Error::Domain("DFT eigensystem needs a cyclic group".into()))?;
    (0..n)
        .map(|k| {
            Ok(EigenPair {
                value: dft_eigenvalue(h, k)?,
                vector: fourier_mode(h.group(), k)?,
            })
        })
        .collect()
}

fn check_eigen_dim(a: &DenseOperator) -> Result<()> {
    if a.dim() > MAX_EIGEN_DIM {
        return Err(Error::Capacity {
            what: "dense eigensolver",
            size: a.dim(),
            limit: MAX_EIGEN_DIM,
        });
    }
    Ok(())
}

/// Eigenvalues of an arbitrary dense operator via complex Schur form.
pub fn dense_eigenvalues(a: &DenseOperator) -> Result<Vec<Complex64>> {
    check_eigen_dim(a)?;
    let schur =
        nalgebra::Schur::try_new(a.to_nalgebra(), f64::EPSILON, 10_000).ok_or_else(|| {
            Error::Numerical(format!(
                "Schur iteration did not converge (dim {})",
                a.dim()
            ))
        })?;
    let (_, t) = schur.unpack();
    Ok((0..a.dim()).map(|i| t[(i, i)]).collect())
}

/// Full eigensystem. Hermitian inputs use a Hermitian solver; others go
/// through Schur form and back substitution. Every returned pair satisfies
/// `||A v - lambda v|| <= 1e-10 ||A||`, otherwise a numerical error is
/// returned (expected for defective matrices).
pub fn dense_eigensystem(a: &DenseOperator) -> Result<Vec<EigenPair>> {
    check_eigen_dim(a)?;
    let n = a.dim();
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut pairs = Vec::with_capacity(n);

    if a.is_hermitian(1e-14 * scale) {
        let eig = nalgebra::SymmetricEigen::try_new(a.to_nalgebra(), f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;
        for k in 0..n {
            let col: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
            pairs.push(EigenPair {
                value: Complex64::new(eig.eigenvalues[k], 0.0),
                vector: normalized(a.group(), col)?,
            });
        }
    } else {
        let schur =
            nalgebra::Schur::try_new(a.to_nalgebra(), f64::EPSILON, 10_000).ok_or_else(|| {
                Error::Numerical(format!("Schur iteration did not converge (dim {n})"))
            })?;
        let (q, t) = schur.unpack();
        for k in 0..n {
            let lambda = t[(k, k)];
            let smin = (f64::EPSILON * lambda.norm()).max(f64::EPSILON * scale * 1e-3);
            let mut y = vec![Complex64::new(0.0, 0.0); n];
            y[k] = Complex64::new(1.0, 0.0);
            for i in (0..k).rev() {
                let rhs: Complex64 = ((i + 1)..=k).map(|j| t[(i, j)] * y[j]).sum();
                let mut den = t[(i, i)] - lambda;
                if den.norm() < smin {
                    den = Complex64::new(smin, 0.0);
                }
                y[i] = -rhs / den;
            }
            let v: Vec<Complex64> = (0..n)
                .map(|r| (0..=k).map(|j| q[(r, j)] * y[j]).sum())
                .collect();
            pairs.push(EigenPair {
                value: lambda,
                vector: normalized(a.group(), v)?,
            });
        }
    }

    for (k, p) in pairs.iter().enumerate() {
        let r = p.residual(a);
        if r > RESIDUAL_TOLERANCE * scale {
            return Err(Error::Numerical(format!(
                "eigenpair {k} (lambda = {}) has residual {r:.3e} > {:.3e}",
                p.value,
                RESIDUAL_TOLERANCE * scale
            )));
        }
    }
    Ok(pairs)
}

fn normalized(group: &FiniteGroup, v: Vec<Complex64>) -> Result<ComplexState> {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Numerical("zero eigenvector".into()));
    }
    ComplexState::new(group, v.into_iter().map(|x| x / norm).collect())
}

/// `e^{i t H} psi` by spectral evaluation. Circulant `H` uses the DFT
/// basis; otherwise `H` must be self-adjoint.
pub fn exact_exponential(h: &AlgebraElement, t: f64, psi: &ComplexState) -> Result<ComplexState> {
    if psi.group() != h.group() {
        return Err(Error::GroupMismatch("state and Hamiltonian differ".into()));
    }
    let pairs = if h.group().cyclic_order().is_some() {
        dft_eigensystem(h)?
    } else if h.is_self_adjoint(1e-12) {
        dense_eigensystem(&to_dense(h)?)?
    } else {
        return Err(Error::Domain(
            "exact exponential needs a circulant or self-adjoint operator".into(),
        ));
    };
    let mut out = vec![Complex64::new(0.0, 0.0); psi.values().len()];
    for p in &pairs {
        let overlap: Complex64 = p
            .vector
            .values()
            .iter()
            .zip(psi.values())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = (Complex64::i() * t * p.value).exp();
        for (o, v) in out.iter_mut().zip(p.vector.values()) {
            *o += phase * overlap * v;
        }
    }
    ComplexState::new(psi.group(), out)
}

/// `(1 + (i t/m) H)^m psi`, applied as `m` dense matrix-vector products.
pub fn truncated_product(
    h: &AlgebraElement,
    t: f64,
    m: usize,
    psi: &ComplexState,
) -> Result<ComplexState> {
    if m == 0 {
        return Err(Error::Domain("need at least one factor".into()));
    }
    if psi.group() != h.group() {
        return Err(Error::GroupMismatch("state and Hamiltonian differ".into()));
    }
    let a = to_dense(h)?;
    let factor = Complex64::new(0.0, t / m as f64);
    let mut v = psi.values().to_vec();
    for _ in 0..m {
        let av = a.apply(&v);
        for (x, y) in v.iter_mut().zip(av) {
            *x += factor * y;
        }
    }
    ComplexState::new(psi.group(), v)
}

/// `|| a/||a|| - b/||b|| ||`.
pub fn relative_l2_difference(a: &ComplexState, b: &ComplexState) -> Result<f64> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch("states on different groups".into()));
    }
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::Domain("cannot normalize a zero state".into()));
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x / na - y / nb).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Pairs each value in `a` with its nearest unused value in `b` and
/// returns the largest gap; `None` when the lengths differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        used[j] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

/// Convenience: `H = sum_h c_h S^h` on `Z_N` from `(power, coefficient)` pairs.
pub fn circulant(group: &FiniteGroup, terms: &[(i64, Complex64)]) -> Result<AlgebraElement> {
    let mut pairs: Vec<(GroupElement, Complex64)> = Vec::with_capacity(terms.len());
    for &(p, c) in terms {
        pairs.push((group.cyclic_power(p)?, c));
    }
    AlgebraElement::from_terms(group, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::direct_product;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zn(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    fn h1(g: &FiniteGroup) -> AlgebraElement {
        circulant(g, &[(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]).unwrap()
    }

    fn h2(g: &FiniteGroup) -> AlgebraElement {
        circulant(g, &[(1, c(0.25, 0.25)), (-1, c(0.25, -0.25))]).unwrap()
    }

    #[test]
    fn dense_matrices() {
        let g = zn(3);
        let s = to_dense(&circulant(&g, &[(1, c(1.0, 0.0))]).unwrap()).unwrap();
        // S|g> = |g+1>: column g has a 1 in row g+1
        assert_eq!(s.get(1, 0), c(1.0, 0.0));
        assert_eq!(s.get(2, 1), c(1.0, 0.0));
        assert_eq!(s.get(0, 2), c(1.0, 0.0));
        assert_eq!(s.get(0, 0), c(0.0, 0.0));

        let h = to_dense(&h1(&zn(4))).unwrap();
        assert!(h.is_hermitian(0.0));
        for r in 0..4 {
            assert_eq!(h.get(r, (r + 1) % 4), c(0.5, 0.0));
            assert_eq!(h.get(r, (r + 3) % 4), c(0.5, 0.0));
        }

        let h8 = to_dense(&h2(&zn(8))).unwrap();
        assert!(h8.is_hermitian(1e-15));
        assert!(h8.get(1, 0).im != 0.0);
        assert_ne!(h8.get(1, 0), h8.get(0, 1));
    }

    #[test]
    fn shift_acts_on_modes_with_negative_phase() {
        let g = zn(12);
        let s = to_dense(&circulant(&g, &[(1, c(1.0, 0.0))]).unwrap()).unwrap();
        for k in 0..12 {
            let psi = fourier_mode(&g, k).unwrap();
            let phase = Complex64::from_polar(1.0, -2.0 * PI * k as f64 / 12.0);
            let out = s.apply(psi.values());
            for (o, p) in out.iter().zip(psi.values()) {
                assert!((o - phase * p).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn dft_eigenvalues_match_formulas() {
        let g = zn(20);
        let e = dft_eigensystem(&h1(&g)).unwrap();
        assert!((e[1].value - c((PI / 10.0).cos(), 0.0)).norm() < 1e-15);
        assert!((e[1].value.re - 0.951_056_516_295_153_5).abs() < 1e-15);
        assert!(e[0]
            .vector
            .values()
            .iter()
            .all(|v| (v - c(1.0 / 20f64.sqrt(), 0.0)).norm() < 1e-15));

        for n in [5usize, 8, 20] {
            let g = zn(n);
            for p in dft_eigensystem(&h2(&g)).unwrap() {
                let k = (0..n)
                    .find(|&k| fourier_mode(&g, k).unwrap() == p.vector)
                    .unwrap();
                let theta = 2.0 * PI * k as f64 / n as f64;
                assert!((p.value - c(0.5 * (theta.cos() + theta.sin()), 0.0)).norm() < 1e-15);
                assert!(p.residual(&to_dense(&h2(&g)).unwrap()) < 1e-14);
            }
        }
        assert!(dft_eigensystem(&AlgebraElement::one(
            &direct_product(&zn(2), &zn(2)).unwrap()
        ))
        .is_err());
    }

    #[test]
    fn dense_solver_basics() {
        let id = DenseOperator::identity(5).unwrap();
        let vals = dense_eigensystem(&id).unwrap();
        assert!(vals.iter().all(|p| (p.value - c(1.0, 0.0)).norm() < 1e-14));

        let s = to_dense(&circulant(&zn(4), &[(1, c(1.0, 0.0))]).unwrap()).unwrap();
        let got: Vec<_> = dense_eigensystem(&s)
            .unwrap()
            .iter()
            .map(|p| p.value)
            .collect();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        assert!(multiset_distance(&got, &want).unwrap() < 1e-12);

        let jordan = DenseOperator::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(dense_eigenvalues(&jordan).unwrap().len(), 2);
        assert!(DenseOperator::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
    }

    #[test]
    fn dense_matches_dft_on_circulants() {
        for n in [6usize, 13, 32] {
            let g = zn(n);
            let h = circulant(
                &g,
                &[
                    (1, c(0.3, -0.2)),
                    (2, c(-0.1, 0.4)),
                    (-3, c(0.7, 0.0)),
                    (0, c(0.05, 0.5)),
                ],
            )
            .unwrap();
            let dense = to_dense(&h).unwrap();
            let got = dense_eigensystem(&dense).unwrap();
            let want = dft_eigensystem(&h).unwrap();
            let a: Vec<_> = got.iter().map(|p| p.value).collect();
            let b: Vec<_> = want.iter().map(|p| p.value).collect();
            assert!(multiset_distance(&a, &b).unwrap() < 1e-9);
        }
    }

    #[test]
    fn exponential_basics() {
        let g = zn(20);
        let h = h1(&g);
        let psi = ComplexState::delta(&g, GroupElement(10)).unwrap();
        let same = exact_exponential(&h, 0.0, &psi).unwrap();
        assert!(relative_l2_difference(&same, &psi).unwrap() < 1e-14);

        let out = exact_exponential(&h, 3.0, &psi).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-10);
        // two fronts spreading symmetrically from the center
        for d in 1..10 {
            let (l, r) = (out.values()[10 - d], out.values()[10 + d]);
            assert!((l - r).norm() < 1e-12);
        }

        let non_normal = AlgebraElement::from_terms(
            &direct_product(&zn(2), &zn(2)).unwrap(),
            [(GroupElement(1), c(0.0, 1.0))],
        )
        .unwrap();
        let p = ComplexState::delta(non_normal.group(), GroupElement(0)).unwrap();
        assert!(exact_exponential(&non_normal, 1.0, &p).is_err());
    }

    #[test]
    fn exponential_on_product_group_uses_hermitian_path() {
        let g = direct_product(&zn(3), &zn(4)).unwrap();
        let a = g.compose(GroupElement(1), GroupElement(1)).unwrap();
        let h = AlgebraElement::from_terms(&g, [(a, c(0.5, 0.5)), (g.inverse(a), c(0.5, -0.5))])
            .unwrap();
        let psi = ComplexState::delta(&g, GroupElement(0)).unwrap();
        let exact = exact_exponential(&h, 0.7, &psi).unwrap();
        let approx = truncated_product(&h, 0.7, 20_000, &psi).unwrap();
        assert!(relative_l2_difference(&exact, &approx).unwrap() < 1e-4);
    }

    #[test]
    fn truncated_product_behaviour() {
        let g = zn(20);
        let h = h1(&g);
        let psi = ComplexState::delta(&g, GroupElement(10)).unwrap();
        let exact = exact_exponential(&h, 1.0, &psi).unwrap();

        let one = truncated_product(&h, 1.0, 1, &psi).unwrap();
        assert_eq!(one.values()[10], c(1.0, 0.0));
        assert_eq!(one.values()[11], c(0.0, 0.5));

        let e50 =
            relative_l2_difference(&truncated_product(&h, 1.0, 50, &psi).unwrap(), &exact).unwrap();
        let e200 = relative_l2_difference(&truncated_product(&h, 1.0, 200, &psi).unwrap(), &exact)
            .unwrap();
        let e100 = relative_l2_difference(&truncated_product(&h, 1.0, 100, &psi).unwrap(), &exact)
            .unwrap();
        assert!(e200 < e50);
        assert!(e100 < 0.01);

        // on an eigenline the product is the scalar recursion
        let k = 3;
        let mode = fourier_mode(&g, k).unwrap();
        let eps = (2.0 * PI * k as f64 / 20.0).cos();
        let out = truncated_product(&h, 1.0, 7, &mode).unwrap();
        let factor = (c(1.0, 0.0) + c(0.0, eps / 7.0)).powi(7);
        for (o, v) in out.values().iter().zip(mode.values()) {
            assert!((o - factor * v).norm() < 1e-14);
        }
    }
}
