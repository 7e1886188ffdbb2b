//! σ-derivations of color commutative algebras and the bracket on 𝒜·Δ.
//!
//! 𝒜·Δ is modelled as 𝒜/Ann(Δ). Classes are written in the coordinates of the
//! basis vectors that are not pivots of the row-reduced annihilator.

use serde::Serialize;

use crate::algebra::{GradedBasis, Product};
use crate::bichar::BiCharacter;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{axpy, is_zero_vec, scale_vec, sub_vec, zero_vec, Matrix, Vector};
use crate::report::{nonzero, tuples, Check};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CommutativeColorAlgebra {
    pub basis: GradedBasis,
    pub eps: BiCharacter,
    pub mu: Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativeReport {
    pub grading: Check,
    pub commutative: Check,
    pub associative: Check,
}

impl CommutativeReport {
    pub fn pass(&self) -> bool {
        self.grading.pass && self.commutative.pass && self.associative.pass
    }
}

impl CommutativeColorAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn eps_idx(&self, i: usize, j: usize) -> &Scalar {
        self.eps.value_ref(self.basis.degree(i), self.basis.degree(j))
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.mu.apply(x, y)
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &crate::linalg::unit_vec(n, j))).collect();
        Matrix::from_cols(n, &cols)
    }

    pub fn check(&self) -> CommutativeReport {
        let n = self.dim();
        let g = self.eps.group();
        let grading = Check::scan(tuples(n, 2), |ij| {
            let target = g.add(self.basis.degree(ij[0]), self.basis.degree(ij[1]));
            let v = self.mu.get(ij[0], ij[1]);
            (0..n).any(|k| !v[k].is_zero() && self.basis.degree(k) != &target).then(|| v.clone())
        });
        let commutative = Check::scan(tuples(n, 2), |ij| {
            let (i, j) = (ij[0], ij[1]);
            nonzero(sub_vec(self.mu.get(i, j), &scale_vec(self.eps_idx(i, j), self.mu.get(j, i))))
        });
        let associative = Check::scan(tuples(n, 3), |t| {
            let e = |k| crate::linalg::unit_vec(n, k);
            let l = self.mul(self.mu.get(t[0], t[1]), &e(t[2]));
            let r = self.mul(&e(t[0]), self.mu.get(t[1], t[2]));
            nonzero(sub_vec(&l, &r))
        });
        CommutativeReport { grading, commutative, associative }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaDerivation {
    pub sigma: Matrix,
    pub delta_map: Matrix,
    pub grade_d: GroupElement,
    /// δ, acting as a central scalar.
    pub delta_scalar: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub sigma_endomorphism: Check,
    pub delta_degree: Check,
    pub leibniz: Check,
}

impl SigmaReport {
    pub fn pass(&self) -> bool {
        self.sigma_endomorphism.pass && self.delta_degree.pass && self.leibniz.pass
    }
}

fn check_shapes(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<()> {
    let n = a.dim();
    for (name, m) in [("σ", &d.sigma), ("Δ", &d.delta_map)] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension(format!("{name} must be {n}x{n}")));
        }
    }
    if !a.eps.group().contains(&d.grade_d) {
        return Err(Error::GroupMismatch(format!("degree {} is not in the grading group", d.grade_d)));
    }
    Ok(())
}

pub fn check_sigma_derivation(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<SigmaReport> {
    check_shapes(a, d)?;
    let n = a.dim();
    let g = a.eps.group();
    let e = |k| crate::linalg::unit_vec(n, k);
    let sigma_endomorphism = if !d.sigma.preserves_blocks(a.basis.degrees()) {
        Check::fail_note(Vec::new(), Vec::new(), "σ is not even")
    } else {
        Check::scan(tuples(n, 2), |ij| {
            let l = d.sigma.mul_vec(a.mu.get(ij[0], ij[1]));
            let r = a.mul(&d.sigma.col(ij[0]), &d.sigma.col(ij[1]));
            nonzero(sub_vec(&l, &r))
        })
    };
    let delta_degree = Check::scan((0..n).map(|i| vec![i]), |i| {
        let target = g.add(a.basis.degree(i[0]), &d.grade_d);
        let v = d.delta_map.col(i[0]);
        (0..n).any(|k| !v[k].is_zero() && a.basis.degree(k) != &target).then_some(v)
    });
    let leibniz = Check::scan(tuples(n, 2), |ij| {
        let (i, j) = (ij[0], ij[1]);
        let lhs = d.delta_map.mul_vec(a.mu.get(i, j));
        let mut rhs = a.mul(&d.delta_map.col(i), &e(j));
        let c = a.eps.value(&d.grade_d, a.basis.degree(i));
        axpy(&mut rhs, &c, &a.mul(&d.sigma.col(i), &d.delta_map.col(j)));
        nonzero(sub_vec(&lhs, &rhs))
    });
    Ok(SigmaReport { sigma_endomorphism, delta_degree, leibniz })
}

/// Ann(Δ) = {x : x·Δ(y) = 0 for all y}, as a canonical basis.
pub fn annihilator(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<Vec<Vector>> {
    check_shapes(a, d)?;
    let n = a.dim();
    // column i: the operator e_i·Δ flattened
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let e = crate::linalg::unit_vec(n, i);
            (0..n).flat_map(|j| a.mul(&e, &d.delta_map.col(j))).collect()
        })
        .collect();
    Ok(Matrix::from_cols(n * n, &cols).kernel())
}

pub fn check_ann_invariance(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<bool> {
    let ann = annihilator(a, d)?;
    Ok(ann.iter().all(|v| crate::linalg::in_span(&ann, &d.sigma.mul_vec(v))))
}

/// 𝒜/Ann(Δ) with a fixed complement of unit vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quotient {
    pub ann: Vec<Vector>,
    /// Basis indices spanning the complement.
    pub complement: Vec<usize>,
    #[serde(skip)]
    rows: Vec<(usize, Vector)>,
}

impl Quotient {
    pub fn new(dim: usize, ann: Vec<Vector>) -> Self {
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        if !ann.is_empty() {
            let (r, piv) = Matrix::from_cols(dim, &ann).transpose().rref();
            for (k, &p) in piv.iter().enumerate() {
                rows.push((p, r.row(k).to_vec()));
                pivots.push(p);
            }
        }
        let complement = (0..dim).filter(|i| !pivots.contains(i)).collect();
        Quotient { ann, complement, rows }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinates of the class of v.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let c = -w[*p].clone();
                axpy(&mut w, &c, row);
            }
        }
        self.complement.iter().map(|&i| w[i].clone()).collect()
    }

    pub fn lift(&self, coords: &[Scalar], dim: usize) -> Vector {
        let mut v = zero_vec(dim);
        for (c, &i) in coords.iter().zip(&self.complement) {
            v[i] = c.clone();
        }
        v
    }
}

/// The induced bracket, precomputed on basis representatives.
pub struct HlsBracket<'a> {
    pub a: &'a CommutativeColorAlgebra,
    pub d: &'a SigmaDerivation,
    pub quotient: Quotient,
    table: Vec<Vector>,
}

impl<'a> HlsBracket<'a> {
    pub fn new(a: &'a CommutativeColorAlgebra, d: &'a SigmaDerivation) -> Result<Self> {
        if !check_ann_invariance(a, d)? {
            return Err(Error::Refused("σ does not preserve Ann(Δ)".into()));
        }
        let n = a.dim();
        let quotient = Quotient::new(n, annihilator(a, d)?);
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(bracket_rep(a, d, i, j));
            }
        }
        Ok(HlsBracket { a, d, quotient, table })
    }

    /// σ(e_i)Δ(e_j) − ε(e_i,e_j)σ(e_j)Δ(e_i) in 𝒜, before reduction.
    pub fn basis_rep(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.a.dim() + j]
    }

    /// Bracket of arbitrary representatives, as a representative.
    pub fn rep(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.a.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xi * yj), self.basis_rep(i, j));
            }
        }
        out
    }

    /// Class of [x·Δ, y·Δ]_σ.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.quotient.reduce(&self.rep(x, y))
    }

    /// Bracket table on the complement basis, in quotient coordinates.
    pub fn table(&self) -> Vec<((usize, usize), Vector)> {
        let c = &self.quotient.complement;
        let mut out = Vec::new();
        for &i in c {
            for &j in c {
                let v = self.quotient.reduce(self.basis_rep(i, j));
                if !is_zero_vec(&v) {
                    out.push(((i, j), v));
                }
            }
        }
        out
    }
}

fn bracket_rep(a: &CommutativeColorAlgebra, d: &SigmaDerivation, i: usize, j: usize) -> Vector {
    let mut v = a.mul(&d.sigma.col(i), &d.delta_map.col(j));
    let c = a.eps_idx(i, j).clone();
    axpy(&mut v, &-c, &a.mul(&d.sigma.col(j), &d.delta_map.col(i)));
    v
}

pub fn hls_bracket(a: &CommutativeColorAlgebra, d: &SigmaDerivation, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
    Ok(HlsBracket::new(a, d)?.bracket(x, y))
}

/// Δ(σ(x)) = δσ(Δ(x)) on every basis vector.
pub fn check_delta_sigma(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<Check> {
    check_shapes(a, d)?;
    let lhs = d.delta_map.mul(&d.sigma);
    let rhs = d.sigma.mul(&d.delta_map).scale(&d.delta_scalar);
    Ok(Check::scan((0..a.dim()).map(|i| vec![i]), |i| nonzero(sub_vec(&lhs.col(i[0]), &rhs.col(i[0])))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HlsReport {
    pub sigma: SigmaReport,
    pub ann_invariant: bool,
    pub delta_sigma: Check,
    pub skew: Check,
    pub well_defined: Check,
    pub operator_form: Check,
    pub jacobi: Check,
}

impl HlsReport {
    pub fn pass(&self) -> bool {
        self.sigma.pass()
            && self.ann_invariant
            && self.delta_sigma.pass
            && self.skew.pass
            && self.well_defined.pass
            && self.operator_form.pass
            && self.jacobi.pass
    }
}

/// Skew symmetry on the complement basis.
pub fn check_skew(h: &HlsBracket<'_>) -> Check {
    let n = h.a.dim();
    let c = h.quotient.complement.clone();
    Check::scan(tuples(c.len(), 2), |ij| {
        let (i, j) = (c[ij[0]], c[ij[1]]);
        let e = |k| crate::linalg::unit_vec(n, k);
        let l = h.bracket(&e(i), &e(j));
        let r = scale_vec(&-h.a.eps_idx(i, j).clone(), &h.bracket(&e(j), &e(i)));
        nonzero(sub_vec(&l, &r))
    })
}

/// Brackets with an annihilator element vanish in the quotient, on either side.
pub fn check_well_defined(h: &HlsBracket<'_>) -> Check {
    let n = h.a.dim();
    for (k, z) in h.quotient.ann.iter().enumerate() {
        for j in 0..n {
            let e = crate::linalg::unit_vec(n, j);
            for v in [h.bracket(z, &e), h.bracket(&e, z)] {
                if !is_zero_vec(&v) {
                    return Check::fail_note(vec![k, j], v, "annihilator element changes the bracket");
                }
            }
        }
    }
    Check::ok()
}

/// (σ(x)·Δ)∘(y·Δ) − ε(x,y)(σ(y)·Δ)∘(x·Δ) equals (σ(x)Δ(y) − ε(x,y)σ(y)Δ(x))·Δ as operators.
pub fn check_operator_form(h: &HlsBracket<'_>) -> Check {
    let a = h.a;
    let d = h.d;
    let n = a.dim();
    let op = |x: &[Scalar]| a.left_mul(x).mul(&d.delta_map);
    Check::scan(tuples(n, 2), |ij| {
        let (i, j) = (ij[0], ij[1]);
        let e = |k| crate::linalg::unit_vec(n, k);
        let l = op(&d.sigma.col(i)).mul(&op(&e(j))).sub(&op(&d.sigma.col(j)).mul(&op(&e(i))).scale(a.eps_idx(i, j)));
        let r = op(h.basis_rep(i, j));
        nonzero(l.sub(&r).entries().to_vec())
    })
}

/// ⟲ ε(z,x)([σ(x)·Δ,[y·Δ,z·Δ]] + δ[x·Δ,[y·Δ,z·Δ]]) on complement basis triples.
pub fn check_hls_jacobi(h: &HlsBracket<'_>) -> Check {
    let a = h.a;
    let n = a.dim();
    let c = h.quotient.complement.clone();
    Check::scan(tuples(c.len(), 3), |t| {
        let (i, j, k) = (c[t[0]], c[t[1]], c[t[2]]);
        let e = |k| crate::linalg::unit_vec(n, k);
        let mut sum = zero_vec(n);
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = h.quotient.lift(&h.bracket(&e(y), &e(z)), n);
            let mut term = h.rep(&h.d.sigma.col(x), &inner);
            axpy(&mut term, &h.d.delta_scalar, &h.rep(&e(x), &inner));
            axpy(&mut sum, a.eps_idx(z, x), &term);
        }
        nonzero(h.quotient.reduce(&sum))
    })
}

pub fn hls_report(a: &CommutativeColorAlgebra, d: &SigmaDerivation) -> Result<HlsReport> {
    let sigma = check_sigma_derivation(a, d)?;
    let ann_invariant = check_ann_invariance(a, d)?;
    let delta_sigma = check_delta_sigma(a, d)?;
    let refused = || Check::fail_note(Vec::new(), Vec::new(), "not evaluated: σ does not preserve Ann(Δ)");
    if !ann_invariant {
        return Ok(HlsReport {
            sigma,
            ann_invariant,
            delta_sigma,
            skew: refused(),
            well_defined: refused(),
            operator_form: refused(),
            jacobi: refused(),
        });
    }
    let h = HlsBracket::new(a, d)?;
    Ok(HlsReport {
        sigma,
        ann_invariant,
        delta_sigma,
        skew: check_skew(&h),
        well_defined: check_well_defined(&h),
        operator_form: check_operator_form(&h),
        jacobi: check_hls_jacobi(&h),
    })
}

/// ℚ[x]/(x^n), trivially graded, basis 1, x, …, x^{n−1}.
pub fn truncated_polynomial_algebra(n: usize) -> CommutativeColorAlgebra {
    let g = crate::group::Group::trivial();
    let eps = BiCharacter::trivial(g.clone());
    let names = (0..n).map(|k| if k == 0 { "1".to_string() } else if k == 1 { "x".into() } else { format!("x^{k}") }).collect();
    let basis = GradedBasis::new(names, vec![g.zero(); n], &eps).expect("trivial grading");
    let mu = Product::from_fn(n, |i, j| {
        let mut v = zero_vec(n);
        if i + j < n {
            v[i + j] = Scalar::one();
        }
        v
    });
    CommutativeColorAlgebra { basis, eps, mu }
}
