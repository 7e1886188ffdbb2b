//! Homogeneous α^k-derivations, generalized and quasi derivations, centroid and
//! quasi-centroid as exact kernels, with inclusion checks and the Hom-Jordan map algebra.

use serde::Serialize;

use crate::algebra::{ColorHomAlgebra, GradedBasis, Product};
use crate::bichar::BiCharacter;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{axpy, in_span, span_basis, sub_vec, zero_vec, Matrix, Vector};
use crate::report::{nonzero, tuples, Check};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum MapKind {
    Der,
    GDer,
    QDer,
    Centroid,
    QCentroid,
}

impl MapKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "der" => MapKind::Der,
            "gder" => MapKind::GDer,
            "qder" => MapKind::QDer,
            "centroid" => MapKind::Centroid,
            "qcentroid" => MapKind::QCentroid,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Der => "der",
            MapKind::GDer => "gder",
            MapKind::QDer => "qder",
            MapKind::Centroid => "centroid",
            MapKind::QCentroid => "qcentroid",
        }
    }

    fn blocks(self) -> usize {
        match self {
            MapKind::GDer => 3,
            MapKind::QDer => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomogeneousMapSpace {
    pub gamma: GroupElement,
    pub k: u32,
    pub kind: MapKind,
    pub basis: Vec<Matrix>,
}

impl HomogeneousMapSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership by a linear solve on flattened matrices.
    pub fn contains(&self, m: &Matrix) -> bool {
        let span: Vec<Vector> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        in_span(&span, m.entries())
    }
}

/// Cells (row, col) that a degree-γ map may fill.
fn degree_cells(a: &ColorHomAlgebra, gamma: &GroupElement) -> Vec<(usize, usize)> {
    let g = a.eps().group();
    let n = a.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if a.degree(r) == &g.add(a.degree(c), gamma) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Whether m maps each 𝒜_a into 𝒜_{a+γ}.
pub fn has_degree(a: &ColorHomAlgebra, m: &Matrix, gamma: &GroupElement) -> bool {
    let cells = degree_cells(a, gamma);
    let n = a.dim();
    (0..n).all(|r| (0..n).all(|c| m.get(r, c).is_zero() || cells.contains(&(r, c))))
}

struct Identities<'a> {
    a: &'a ColorHomAlgebra,
    ak: Matrix,
    eps_g: Vec<Scalar>,
}

impl<'a> Identities<'a> {
    fn new(a: &'a ColorHomAlgebra, k: u32, gamma: &GroupElement) -> Result<Self> {
        if !a.eps().group().contains(gamma) {
            return Err(Error::GroupMismatch(format!("degree {gamma} is not in the grading group")));
        }
        let ak = a.alpha().pow(k as i64)?;
        let eps_g = (0..a.dim()).map(|i| a.eps().value(gamma, a.degree(i))).collect();
        Ok(Identities { a, ak, eps_g })
    }

    /// [D x, α^k y] on basis pair (i, j).
    fn left(&self, d: &Matrix, i: usize, j: usize) -> Vector {
        self.a.bracket(&d.col(i), &self.ak.col(j))
    }

    /// ε(γ,x)[α^k x, D y] on basis pair (i, j).
    fn right(&self, d: &Matrix, i: usize, j: usize) -> Vector {
        crate::linalg::scale_vec(&self.eps_g[i], &self.a.bracket(&self.ak.col(i), &d.col(j)))
    }

    fn outer(&self, d: &Matrix, i: usize, j: usize) -> Vector {
        d.mul_vec(self.a.bracket_basis(i, j))
    }

    fn commutator(&self, d: &Matrix) -> Vec<Scalar> {
        d.mul(self.a.alpha()).sub(&self.a.alpha().mul(d)).entries().to_vec()
    }

    /// Residual of the defining identities; linear in `maps`.
    fn residual(&self, kind: MapKind, maps: &[Matrix], strict_commute: bool) -> Vec<Scalar> {
        let n = self.a.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                match kind {
                    MapKind::Der => {
                        let mut r = self.outer(&maps[0], i, j);
                        r = sub_vec(&r, &self.left(&maps[0], i, j));
                        out.extend(sub_vec(&r, &self.right(&maps[0], i, j)));
                    }
                    MapKind::GDer => {
                        let mut r = self.outer(&maps[2], i, j);
                        r = sub_vec(&r, &self.left(&maps[0], i, j));
                        out.extend(sub_vec(&r, &self.right(&maps[1], i, j)));
                    }
                    MapKind::QDer => {
                        let mut r = self.outer(&maps[1], i, j);
                        r = sub_vec(&r, &self.left(&maps[0], i, j));
                        out.extend(sub_vec(&r, &self.right(&maps[0], i, j)));
                    }
                    MapKind::Centroid => {
                        let l = self.left(&maps[0], i, j);
                        out.extend(sub_vec(&self.outer(&maps[0], i, j), &l));
                        out.extend(sub_vec(&l, &self.right(&maps[0], i, j)));
                    }
                    MapKind::QCentroid => {
                        out.extend(sub_vec(&self.left(&maps[0], i, j), &self.right(&maps[0], i, j)));
                    }
                }
            }
        }
        if kind != MapKind::QCentroid || strict_commute {
            for m in maps {
                out.extend(self.commutator(m));
            }
        }
        out
    }
}

fn from_cells(n: usize, cells: &[(usize, usize)], v: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (&(r, c), x) in cells.iter().zip(v) {
        m.set(r, c, x.clone());
    }
    m
}

/// Solves for all tuples of degree-γ maps satisfying the identities of `kind`; returns the D-component span.
pub fn map_space(
    a: &ColorHomAlgebra,
    kind: MapKind,
    k: u32,
    gamma: &GroupElement,
    strict_commute: bool,
) -> Result<HomogeneousMapSpace> {
    let ids = Identities::new(a, k, gamma)?;
    let n = a.dim();
    let cells = degree_cells(a, gamma);
    let blocks = kind.blocks();
    let vars = cells.len() * blocks;
    let zero = Matrix::zeros(n, n);
    let mut cols = Vec::with_capacity(vars);
    for v in 0..vars {
        let mut maps = vec![zero.clone(); blocks];
        let (r, c) = cells[v % cells.len().max(1)];
        maps[v / cells.len()].set(r, c, Scalar::one());
        cols.push(ids.residual(kind, &maps, strict_commute));
    }
    let rows = ids.residual(kind, &vec![zero; blocks], strict_commute).len();
    let kernel = if vars == 0 { Vec::new() } else { Matrix::from_cols(rows, &cols).kernel() };
    let projected: Vec<Vector> = kernel.iter().map(|v| v[..cells.len()].to_vec()).collect();
    let basis = span_basis(cells.len(), &projected).iter().map(|v| from_cells(n, &cells, v)).collect();
    Ok(HomogeneousMapSpace { gamma: gamma.clone(), k, kind, basis })
}

pub fn derivation_space(a: &ColorHomAlgebra, k: u32, gamma: &GroupElement) -> Result<HomogeneousMapSpace> {
    map_space(a, MapKind::Der, k, gamma, true)
}

pub fn generalized_derivation_space(a: &ColorHomAlgebra, k: u32, gamma: &GroupElement) -> Result<HomogeneousMapSpace> {
    map_space(a, MapKind::GDer, k, gamma, true)
}

pub fn quasi_derivation_space(a: &ColorHomAlgebra, k: u32, gamma: &GroupElement) -> Result<HomogeneousMapSpace> {
    map_space(a, MapKind::QDer, k, gamma, true)
}

pub fn centroid_space(a: &ColorHomAlgebra, k: u32, gamma: &GroupElement) -> Result<HomogeneousMapSpace> {
    map_space(a, MapKind::Centroid, k, gamma, true)
}

/// [D,α] = 0 is imposed only with `strict_commute`.
pub fn quasi_centroid_space(
    a: &ColorHomAlgebra,
    k: u32,
    gamma: &GroupElement,
    strict_commute: bool,
) -> Result<HomogeneousMapSpace> {
    map_space(a, MapKind::QCentroid, k, gamma, strict_commute)
}

/// Re-verifies one map directly. For GDer and QDer the companions D′, D″ are solved for with D fixed.
pub fn verify_member(
    a: &ColorHomAlgebra,
    kind: MapKind,
    k: u32,
    gamma: &GroupElement,
    d: &Matrix,
    strict_commute: bool,
) -> Result<bool> {
    if !has_degree(a, d, gamma) {
        return Ok(false);
    }
    let ids = Identities::new(a, k, gamma)?;
    let n = a.dim();
    if kind.blocks() == 1 {
        return Ok(ids.residual(kind, &[d.clone()], strict_commute).iter().all(Scalar::is_zero));
    }
    // affine system: residual(D, companions) = residual(D, 0) + L(companions)
    let cells = degree_cells(a, gamma);
    let zero = Matrix::zeros(n, n);
    let blocks = kind.blocks();
    let mut base = vec![zero.clone(); blocks];
    base[0] = d.clone();
    let rhs: Vec<Scalar> = ids.residual(kind, &base, strict_commute).iter().map(|x| -x.clone()).collect();
    let mut lin = Vec::new();
    for b in 1..blocks {
        for &(r, c) in &cells {
            let mut maps = vec![zero.clone(); blocks];
            maps[b].set(r, c, Scalar::one());
            // residual is linear and vanishes on zero, so this is the column for this unknown
            lin.push(ids.residual(kind, &maps, strict_commute));
        }
    }
    if lin.is_empty() {
        return Ok(rhs.iter().all(Scalar::is_zero));
    }
    Ok(Matrix::from_cols(rhs.len(), &lin).solve(&rhs).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub der_in_gder: Check,
    pub centroid_in_gder: Check,
    pub centroid_in_qder: Check,
    pub centroid_gder_composition: Check,
    pub qc_commutator_in_gder: Check,
}

impl InclusionReport {
    pub fn pass(&self) -> bool {
        self.der_in_gder.pass
            && self.centroid_in_gder.pass
            && self.centroid_in_qder.pass
            && self.centroid_gder_composition.pass
            && self.qc_commutator_in_gder.pass
    }
}

/// [D, E] = DE − ε(γ,μ)ED.
pub fn color_commutator(eps: &BiCharacter, d: &Matrix, gamma: &GroupElement, e: &Matrix, mu: &GroupElement) -> Matrix {
    d.mul(e).sub(&e.mul(d).scale(&eps.value(gamma, mu)))
}

fn first_miss(items: impl IntoIterator<Item = (Vec<usize>, bool)>) -> Check {
    for (idx, ok) in items {
        if !ok {
            return Check::fail(idx, Vec::new());
        }
    }
    Check::ok()
}

/// Witness indices: (k, k′, degree positions, spanning element positions).
pub fn check_inclusion_lattice(a: &ColorHomAlgebra, ks: &[u32], gammas: &[GroupElement]) -> Result<InclusionReport> {
    let g = a.eps().group();
    let space = |kind, k, gamma: &GroupElement| map_space(a, kind, k, gamma, false);
    let mut der = Vec::new();
    let mut cen = Vec::new();
    let mut qc = Vec::new();
    for &k in ks {
        for gamma in gammas {
            der.push(space(MapKind::Der, k, gamma)?);
            cen.push(space(MapKind::Centroid, k, gamma)?);
            qc.push(space(MapKind::QCentroid, k, gamma)?);
        }
    }
    let cell = |ki: usize, gi: usize| ki * gammas.len() + gi;
    let mut der_gder = Vec::new();
    let mut cen_gder = Vec::new();
    let mut cen_qder = Vec::new();
    for (ki, &k) in ks.iter().enumerate() {
        for (gi, gamma) in gammas.iter().enumerate() {
            let gd = space(MapKind::GDer, k, gamma)?;
            let qd = space(MapKind::QDer, k, gamma)?;
            for (e, d) in der[cell(ki, gi)].basis.iter().enumerate() {
                der_gder.push((vec![ki, gi, e], gd.contains(d)));
            }
            for (e, d) in cen[cell(ki, gi)].basis.iter().enumerate() {
                cen_gder.push((vec![ki, gi, e], gd.contains(d)));
                // D′ = 2D witnesses the quasi-derivation identity
                let two = d.scale(&Scalar::from_int(2));
                let ids = Identities::new(a, k, gamma)?;
                let witnessed = ids.residual(MapKind::QDer, &[d.clone(), two], true).iter().all(Scalar::is_zero);
                cen_qder.push((vec![ki, gi, e], qd.contains(d) && witnessed));
            }
        }
    }
    let mut comp = Vec::new();
    let mut comm = Vec::new();
    for (ki, &k) in ks.iter().enumerate() {
        for (ki2, &k2) in ks.iter().enumerate() {
            for (gi, gamma) in gammas.iter().enumerate() {
                for (gi2, gamma2) in gammas.iter().enumerate() {
                    let target = g.add(gamma, gamma2);
                    let gd = space(MapKind::GDer, k + k2, &target)?;
                    let gd_src = space(MapKind::GDer, k, gamma)?;
                    for (e1, d) in gd_src.basis.iter().enumerate() {
                        for (e2, c) in cen[cell(ki2, gi2)].basis.iter().enumerate() {
                            let m = c.mul(d);
                            let ok = has_degree(a, &m, &target) && gd.contains(&m);
                            comp.push((vec![ki, ki2, gi, gi2, e1, e2], ok));
                        }
                    }
                    for (e1, d) in qc[cell(ki, gi)].basis.iter().enumerate() {
                        for (e2, e) in qc[cell(ki2, gi2)].basis.iter().enumerate() {
                            let m = color_commutator(a.eps(), d, gamma, e, gamma2);
                            comm.push((vec![ki, ki2, gi, gi2, e1, e2], gd.contains(&m)));
                        }
                    }
                }
            }
        }
    }
    Ok(InclusionReport {
        der_in_gder: first_miss(der_gder),
        centroid_in_gder: first_miss(cen_gder),
        centroid_in_qder: first_miss(cen_qder),
        centroid_gder_composition: first_miss(comp),
        qc_commutator_in_gder: first_miss(comm),
    })
}

/// D₁∘D₂ + ε(γ,μ)D₂∘D₁.
pub fn jordan_product(eps: &BiCharacter, d1: &Matrix, gamma: &GroupElement, d2: &Matrix, mu: &GroupElement) -> Matrix {
    d1.mul(d2).add(&d2.mul(d1).scale(&eps.value(gamma, mu)))
}

/// The alternative reading D₁∘D₂ − ε(γ,μ)D₁∘D₂.
pub fn jordan_product_displayed(eps: &BiCharacter, d1: &Matrix, gamma: &GroupElement, d2: &Matrix, mu: &GroupElement) -> Matrix {
    let p = d1.mul(d2);
    p.sub(&p.scale(&eps.value(gamma, mu)))
}

/// A Hom-algebra given by structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct HomJordanAlgebra {
    pub basis: GradedBasis,
    pub eps: BiCharacter,
    pub mu: Product,
    pub alpha: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanReport {
    pub closure: Check,
    pub eps_commutative: Check,
    pub jordan_identity: Check,
}

impl JordanReport {
    pub fn pass(&self) -> bool {
        self.closure.pass && self.eps_commutative.pass && self.jordan_identity.pass
    }
}

/// Exhaustive (ε-commutativity) on pairs and (Hom-Jordan identity) on quadruples of basis vectors.
pub fn check_hom_jordan(j: &HomJordanAlgebra) -> JordanReport {
    let n = j.basis.dim();
    let e = |i| crate::linalg::unit_vec(n, i);
    let eps = |x: usize, y: usize| j.eps.value(j.basis.degree(x), j.basis.degree(y));
    let g = j.eps.group();
    let eps_commutative = Check::scan(tuples(n, 2), |p| {
        nonzero(sub_vec(j.mu.get(p[0], p[1]), &crate::linalg::scale_vec(&eps(p[0], p[1]), j.mu.get(p[1], p[0]))))
    });
    let assoc = |x: &Vector, y: &Vector, z: &Vector| {
        let l = j.mu.apply(&j.mu.apply(x, y), &j.alpha.mul_vec(z));
        let r = j.mu.apply(&j.alpha.mul_vec(x), &j.mu.apply(y, z));
        sub_vec(&l, &r)
    };
    let jordan_identity = Check::scan(tuples(n, 4), |q| {
        let (x, y, z, w) = (q[0], q[1], q[2], q[3]);
        let deg = |i: usize| j.basis.degree(i);
        let mut s = zero_vec(n);
        for (a, b, c) in [(x, y, w), (y, w, x), (w, x, y)] {
            // ε(c, a+z) as(a∘b, αz, αc) with (a, b, c) cycling through (x,y,w)
            let coeff = j.eps.value(deg(c), &g.add(deg(a), deg(z)));
            let v = assoc(&j.mu.apply(&e(a), &e(b)), &j.alpha.col(z), &j.alpha.col(c));
            axpy(&mut s, &coeff, &v);
        }
        nonzero(s)
    });
    JordanReport { closure: Check::ok(), eps_commutative, jordan_identity }
}

/// Homogeneous spanning maps with the product D₁•D₂ and twist D ↦ αDα⁻¹.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapJordanAlgebra {
    pub elements: Vec<Matrix>,
    pub degrees: Vec<GroupElement>,
    #[serde(skip)]
    pub eps: BiCharacter,
    pub alpha: Matrix,
    pub alpha_inv: Matrix,
}

impl MapJordanAlgebra {
    /// Union of the quasi-centroid spaces over `ks`, one spanning set per degree.
    pub fn quasi_centroid(a: &ColorHomAlgebra, ks: &[u32], strict_commute: bool) -> Result<Self> {
        let alpha_inv = a
            .alpha()
            .inverse()
            .ok_or_else(|| Error::Singular("the twist on maps needs an invertible α".into()))?;
        let mut elements = Vec::new();
        let mut degrees = Vec::new();
        for gamma in a.eps().group().elements() {
            let mut span = Vec::new();
            for &k in ks {
                for m in quasi_centroid_space(a, k, &gamma, strict_commute)?.basis {
                    span.push(m.entries().to_vec());
                }
            }
            for v in span_basis(a.dim() * a.dim(), &span) {
                elements.push(Matrix::from_entries(a.dim(), a.dim(), v));
                degrees.push(gamma.clone());
            }
        }
        Ok(MapJordanAlgebra { elements, degrees, eps: a.eps().clone(), alpha: a.alpha().clone(), alpha_inv })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn twist(&self, d: &Matrix) -> Matrix {
        self.alpha.mul(d).mul(&self.alpha_inv)
    }

    pub fn product(&self, i: usize, j: usize) -> Matrix {
        jordan_product(&self.eps, &self.elements[i], &self.degrees[i], &self.elements[j], &self.degrees[j])
    }

    fn flat(&self) -> Vec<Vector> {
        self.elements.iter().map(|m| m.entries().to_vec()).collect()
    }

    /// Coordinates of m along the spanning set, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        if self.elements.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        Matrix::from_cols(m.entries().len(), &self.flat()).solve(m.entries())
    }

    /// Structure constants, when the spanning set is closed under • and the twist.
    pub fn to_algebra(&self) -> Option<HomJordanAlgebra> {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.coordinates(&self.product(i, j))?);
            }
        }
        let mut alpha_cols = Vec::with_capacity(n);
        for m in &self.elements {
            alpha_cols.push(self.coordinates(&self.twist(m))?);
        }
        let basis = GradedBasis::numbered(self.degrees.clone(), &self.eps).ok()?;
        Some(HomJordanAlgebra {
            basis,
            eps: self.eps.clone(),
            mu: Product::from_fn(n, |i, j| table[i * n + j].clone()),
            alpha: Matrix::from_cols(n, &alpha_cols),
        })
    }

    /// (ε-commutativity), (Hom-Jordan identity) evaluated on spanning maps directly, plus closure of the span.
    pub fn check(&self) -> JordanReport {
        let n = self.dim();
        let flat = self.flat();
        let closure = Check::scan(tuples(n, 2), |p| {
            let m = self.product(p[0], p[1]);
            (!in_span(&flat, m.entries())).then(|| m.entries().to_vec())
        });
        let closure = if closure.pass {
            let bad = (0..n).find(|&i| !in_span(&flat, self.twist(&self.elements[i]).entries()));
            match bad {
                Some(i) => Check::fail_note(vec![i], self.twist(&self.elements[i]).entries().to_vec(), "twist leaves the span"),
                None => closure,
            }
        } else {
            closure
        };
        let eps = |i: usize, j: usize| self.eps.value(&self.degrees[i], &self.degrees[j]);
        let eps_commutative = Check::scan(tuples(n, 2), |p| {
            let d = self.product(p[0], p[1]).sub(&self.product(p[1], p[0]).scale(&eps(p[0], p[1])));
            nonzero(d.entries().to_vec())
        });
        let g = self.eps.group();
        let prod = |x: &Matrix, gx: &GroupElement, y: &Matrix, gy: &GroupElement| jordan_product(&self.eps, x, gx, y, gy);
        let twisted: Vec<Matrix> = self.elements.iter().map(|m| self.twist(m)).collect();
        let jordan_identity = Check::scan(tuples(n, 4), |q| {
            let (x, y, z, w) = (q[0], q[1], q[2], q[3]);
            let dg = |i: usize| &self.degrees[i];
            let size = self.alpha.rows();
            let mut s = Matrix::zeros(size, size);
            for (a, b, c) in [(x, y, w), (y, w, x), (w, x, y)] {
                let coeff = self.eps.value(dg(c), &g.add(dg(a), dg(z)));
                let ab = self.product(a, b);
                let gab = g.add(dg(a), dg(b));
                let gzc = g.add(dg(z), dg(c));
                let left = prod(&prod(&ab, &gab, &twisted[z], dg(z)), &g.add(&gab, dg(z)), &twisted[c], dg(c));
                let right = prod(&self.twist(&ab), &gab, &prod(&twisted[z], dg(z), &twisted[c], dg(c)), &gzc);
                s = s.add(&left.sub(&right).scale(&coeff));
            }
            nonzero(s.entries().to_vec())
        });
        JordanReport { closure, eps_commutative, jordan_identity }
    }
}
