//! Graded algebras by structure constants and the color Hom-Lie axioms.

use serde::Serialize;

use crate::bichar::BiCharacter;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{axpy, sub_vec, zero_vec, Matrix, Vector};
use crate::report::{nonzero, tuples, Check};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<GroupElement>,
}

impl GradedBasis {
    pub fn new(names: Vec<String>, degrees: Vec<GroupElement>, eps: &BiCharacter) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::Dimension(format!("{} names but {} degrees", names.len(), degrees.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Structure(format!("duplicate basis name `{n}`")));
            }
        }
        if let Some(d) = degrees.iter().find(|d| !eps.group().contains(d)) {
            return Err(Error::GroupMismatch(format!("degree {d} is not in the grading group")));
        }
        Ok(GradedBasis { names, degrees })
    }

    /// Names e1, e2, … for the given degrees.
    pub fn numbered(degrees: Vec<GroupElement>, eps: &BiCharacter) -> Result<Self> {
        let names = (1..=degrees.len()).map(|i| format!("e{i}")).collect();
        GradedBasis::new(names, degrees, eps)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Degrees of nonzero coordinates agree.
    pub fn is_homogeneous(&self, v: &[Scalar]) -> Option<GroupElement> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match &deg {
                None => deg = Some(self.degrees[i].clone()),
                Some(d) if d != &self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Bilinear product stored densely: `table[i*n + j]` is the coordinate vector of e_i·e_j.
#[derive(Clone, Debug, PartialEq)]
pub struct Product {
    n: usize,
    table: Vec<Vector>,
}

impl Product {
    pub fn zero(n: usize) -> Self {
        Product { n, table: vec![zero_vec(n); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n);
                table.push(v);
            }
        }
        Product { n, table }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        self.table[i * self.n + j] = v;
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy(&mut out, &(a * b), self.get(i, j));
            }
        }
        out
    }

    /// f ∘ product.
    pub fn compose_left(&self, f: &Matrix) -> Product {
        Product { n: self.n, table: self.table.iter().map(|v| f.mul_vec(v)).collect() }
    }

    pub fn add(&self, other: &Product) -> Product {
        Product {
            n: self.n,
            table: self.table.iter().zip(&other.table).map(|(a, b)| crate::linalg::add_vec(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Product) -> Product {
        Product { n: self.n, table: self.table.iter().zip(&other.table).map(|(a, b)| sub_vec(a, b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Product {
        Product { n: self.n, table: self.table.iter().map(|v| crate::linalg::scale_vec(c, v)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| crate::linalg::is_zero_vec(v))
    }
}

fn check_grading(basis: &GradedBasis, eps: &BiCharacter, p: &Product) -> Check {
    let n = basis.dim();
    let g = eps.group();
    Check::scan(tuples(n, 2), |ij| {
        let target = g.add(basis.degree(ij[0]), basis.degree(ij[1]));
        let v = p.get(ij[0], ij[1]);
        let bad = (0..n).any(|k| !v[k].is_zero() && basis.degree(k) != &target);
        bad.then(|| v.clone())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColorHomAlgebra {
    basis: GradedBasis,
    eps: BiCharacter,
    bracket: Product,
    alpha: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub grading: Check,
    pub skew: Check,
    pub jacobi: Check,
    pub multiplicative: Check,
}

impl LieReport {
    /// Grading, skew-symmetry and Hom-Jacobi; multiplicativity is reported separately.
    pub fn is_color_hom_lie(&self) -> bool {
        self.grading.pass && self.skew.pass && self.jacobi.pass
    }
}

impl ColorHomAlgebra {
    /// Builds from explicitly given entries; missing mirrored pairs follow the ε-skew rule.
    pub fn from_entries(
        basis: GradedBasis,
        eps: BiCharacter,
        entries: &[((usize, usize), Vector)],
        alpha: Matrix,
    ) -> Result<Self> {
        let n = basis.dim();
        if alpha.rows() != n || alpha.cols() != n {
            return Err(Error::Dimension(format!("twist must be {n}x{n}")));
        }
        let mut given = vec![false; n * n];
        let mut bracket = Product::zero(n);
        for ((i, j), v) in entries {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::Dimension(format!("bracket entry ({i},{j}) out of range")));
            }
            bracket.set(*i, *j, v.clone());
            given[i * n + j] = true;
        }
        for ((i, j), v) in entries {
            if !given[j * n + i] {
                let c = -eps.value(basis.degree(*j), basis.degree(*i));
                bracket.set(*j, *i, crate::linalg::scale_vec(&c, v));
            }
        }
        Ok(ColorHomAlgebra { basis, eps, bracket, alpha })
    }

    pub fn from_product(basis: GradedBasis, eps: BiCharacter, bracket: Product, alpha: Matrix) -> Result<Self> {
        let n = basis.dim();
        if bracket.dim() != n || alpha.rows() != n || alpha.cols() != n {
            return Err(Error::Dimension("bracket or twist does not match the basis".into()));
        }
        Ok(ColorHomAlgebra { basis, eps, bracket, alpha })
    }

    pub fn zero(basis: GradedBasis, eps: BiCharacter, alpha: Matrix) -> Result<Self> {
        let n = basis.dim();
        ColorHomAlgebra::from_product(basis, eps, Product::zero(n), alpha)
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn eps(&self) -> &BiCharacter {
        &self.eps
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn product(&self) -> &Product {
        &self.bracket
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        self.basis.degree(i)
    }

    /// ε(deg e_i, deg e_j).
    pub fn eps_idx(&self, i: usize, j: usize) -> &Scalar {
        self.eps.value_ref(self.basis.degree(i), self.basis.degree(j))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        self.bracket.get(i, j)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.bracket.apply(x, y)
    }

    pub fn alpha_col(&self, i: usize) -> Vector {
        self.alpha.col(i)
    }

    pub fn with_alpha(&self, alpha: Matrix) -> Self {
        ColorHomAlgebra { alpha, ..self.clone() }
    }

    pub fn with_bracket(&self, bracket: Product) -> Self {
        ColorHomAlgebra { bracket, ..self.clone() }
    }

    /// Canonical entries (i ≤ j) with nonzero value.
    pub fn canonical_entries(&self) -> Vec<((usize, usize), Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = self.bracket_basis(i, j);
                if !crate::linalg::is_zero_vec(v) {
                    out.push(((i, j), v.clone()));
                }
            }
        }
        out
    }

    /// ⟲ ε(z,x)[α(x),[y,z]] on basis vectors e_i, e_j, e_k.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket_basis(y, z);
            let v = self.bracket(&self.alpha_col(x), inner);
            axpy(&mut out, self.eps_idx(z, x), &v);
        }
        out
    }

    pub fn check(&self) -> LieReport {
        let n = self.dim();
        let grading = check_grading(&self.basis, &self.eps, &self.bracket);
        let skew = Check::scan(tuples(n, 2), |ij| {
            let (i, j) = (ij[0], ij[1]);
            let c = self.eps_idx(i, j);
            let mut r = self.bracket_basis(i, j).clone();
            axpy(&mut r, c, self.bracket_basis(j, i));
            nonzero(r)
        });
        let jacobi = Check::scan(tuples(n, 3), |t| nonzero(self.jacobi_residual(t[0], t[1], t[2])));
        let multiplicative = self.check_multiplicative();
        LieReport { grading, skew, jacobi, multiplicative }
    }

    pub fn check_multiplicative(&self) -> Check {
        let n = self.dim();
        Check::scan(tuples(n, 2), |ij| {
            let lhs = self.alpha.mul_vec(self.bracket_basis(ij[0], ij[1]));
            let rhs = self.bracket(&self.alpha_col(ij[0]), &self.alpha_col(ij[1]));
            nonzero(sub_vec(&lhs, &rhs))
        })
    }

    pub fn is_multiplicative(&self) -> bool {
        self.check_multiplicative().pass
    }
}

pub fn check_color_hom_lie(a: &ColorHomAlgebra) -> LieReport {
    a.check()
}

/// 𝒜^{(n)}: bracket α^{2ⁿ−1}∘[·,·], twist α^{2ⁿ}.
pub fn derived_algebra(a: &ColorHomAlgebra, n: u32) -> Result<ColorHomAlgebra> {
    if n >= 62 {
        return Err(Error::Structure(format!("derived order {n} too large")));
    }
    if let Some(w) = a.check_multiplicative().witness {
        return Err(Error::NotMultiplicative((w.indices[0], w.indices[1])));
    }
    let p = 1i64 << n;
    let left = a.alpha.pow(p - 1)?;
    Ok(ColorHomAlgebra {
        basis: a.basis.clone(),
        eps: a.eps.clone(),
        bracket: a.bracket.compose_left(&left),
        alpha: a.alpha.pow(p)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomAssociativeColorAlgebra {
    pub basis: GradedBasis,
    pub eps: BiCharacter,
    pub mu: Product,
    pub alpha: Matrix,
}

impl HomAssociativeColorAlgebra {
    /// μ(α(x), μ(y,z)) = μ(μ(x,y), α(z)) on basis triples.
    pub fn check_hom_associative(&self) -> Check {
        let n = self.basis.dim();
        Check::scan(tuples(n, 3), |t| {
            let lhs = self.mu.apply(&self.alpha.col(t[0]), self.mu.get(t[1], t[2]));
            let rhs = self.mu.apply(self.mu.get(t[0], t[1]), &self.alpha.col(t[2]));
            nonzero(sub_vec(&lhs, &rhs))
        })
    }

    pub fn check_grading(&self) -> Check {
        check_grading(&self.basis, &self.eps, &self.mu)
    }
}

/// [x,y] = μ(x,y) − ε(x,y)μ(y,x).
pub fn commutator_algebra(h: &HomAssociativeColorAlgebra) -> Result<ColorHomAlgebra> {
    if let Some(w) = h.check_hom_associative().witness {
        return Err(Error::NotHomAssociative((w.indices[0], w.indices[1], w.indices[2])));
    }
    let n = h.basis.dim();
    let bracket = Product::from_fn(n, |i, j| {
        let c = h.eps.value(h.basis.degree(i), h.basis.degree(j));
        let mut v = h.mu.get(i, j).clone();
        axpy(&mut v, &-c, h.mu.get(j, i));
        v
    });
    ColorHomAlgebra::from_product(h.basis.clone(), h.eps.clone(), bracket, h.alpha.clone())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::group::Group;

    #[test]
    fn twisted_sl2c_is_color_hom_lie() {
        let r = sl2c_hom().check();
        assert!(r.is_color_hom_lie(), "{r:?}");
        assert!(r.multiplicative.pass);
    }

    #[test]
    fn zero_bracket_passes() {
        let a = sl2c_lie();
        let z = ColorHomAlgebra::zero(a.basis().clone(), a.eps().clone(), Matrix::identity(3)).unwrap();
        let r = z.check();
        assert!(r.is_color_hom_lie() && r.multiplicative.pass);
    }

    #[test]
    fn perturbed_twist_breaks_jacobi() {
        let a = sl2c_hom();
        let b = a.with_alpha(Matrix::from_ints(&[&[-1, 1, 0], &[0, -1, 0], &[0, 0, 1]]));
        let r = b.check();
        assert!(r.skew.pass);
        let w = r.jacobi.witness.expect("jacobi must fail");
        // oracle: direct cyclic sum on (e1,e2,e3)
        let direct = |i: usize, j: usize, k: usize| {
            let mut s = zero_vec(3);
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                let v = b.bracket(&b.alpha().col(x), b.bracket_basis(y, z));
                let e = b.eps().value(b.degree(z), b.degree(x));
                s = crate::linalg::add_vec(&s, &crate::linalg::scale_vec(&e, &v));
            }
            s
        };
        assert_eq!(w.residual, direct(w.indices[0], w.indices[1], w.indices[2]));
        assert!(!crate::linalg::is_zero_vec(&direct(0, 1, 2)));
    }

    #[test]
    fn derived_examples() {
        let a = sl2c_hom();
        assert_eq!(derived_algebra(&a, 0).unwrap(), a);
        let d1 = derived_algebra(&a, 1).unwrap();
        assert_eq!(d1.alpha(), &Matrix::identity(3));
        assert_eq!(d1.product(), &a.product().compose_left(a.alpha()));
        assert!(d1.check().is_color_hom_lie());
        assert!(derived_algebra(&a, 2).unwrap().check().is_color_hom_lie());
    }

    #[test]
    fn derived_rejects_non_multiplicative() {
        let a = sl2c_lie().with_alpha(Matrix::diagonal(&ints(&[2, 1, 1])));
        assert!(matches!(derived_algebra(&a, 1), Err(Error::NotMultiplicative(_))));
    }

    #[test]
    fn commutator_of_group_algebra_z2() {
        let g = Group::new(vec![2]).unwrap();
        let eps = BiCharacter::new(g.clone(), vec![vec![1]], 2).unwrap();
        let degs = vec![g.element(&[0]).unwrap(), g.element(&[1]).unwrap()];
        let basis = GradedBasis::new(vec!["e".into(), "g".into()], degs, &eps).unwrap();
        let mu = Product::from_fn(2, |i, j| ints(if (i + j) % 2 == 0 { &[1, 0] } else { &[0, 1] }));
        let h = HomAssociativeColorAlgebra { basis, eps, mu, alpha: Matrix::identity(2) };
        let l = commutator_algebra(&h).unwrap();
        assert_eq!(l.bracket_basis(1, 1), &ints(&[2, 0]));
        assert!(l.check().is_color_hom_lie());
    }

    #[test]
    fn commutator_of_gl2() {
        // basis E11, E12, E21, E22 with E_ij E_kl = δ_jk E_il
        let g = Group::trivial();
        let eps = BiCharacter::trivial(g.clone());
        let basis = GradedBasis::numbered(vec![g.zero(); 4], &eps).unwrap();
        let idx = |i: usize, j: usize| 2 * i + j;
        let mu = Product::from_fn(4, |a, b| {
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let mut v = zero_vec(4);
            if j == k {
                v[idx(i, l)] = Scalar::one();
            }
            v
        });
        let h = HomAssociativeColorAlgebra { basis, eps, mu: mu.clone(), alpha: Matrix::identity(4) };
        let l = commutator_algebra(&h).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let want = sub_vec(mu.get(a, b), mu.get(b, a));
                assert_eq!(l.bracket_basis(a, b), &want);
            }
        }
        // [E12, E21] = E11 − E22
        assert_eq!(l.bracket_basis(1, 2), &ints(&[1, 0, 0, -1]));
    }

    #[test]
    fn commutator_rejects_non_associative() {
        let g = Group::trivial();
        let eps = BiCharacter::trivial(g.clone());
        let basis = GradedBasis::numbered(vec![g.zero(); 2], &eps).unwrap();
        let mu = Product::from_fn(2, |i, j| ints(if (i, j) == (1, 1) { &[1, 0] } else if i == 0 && j == 0 { &[0, 1] } else { &[0, 0] }));
        let h = HomAssociativeColorAlgebra { basis, eps, mu, alpha: Matrix::identity(2) };
        assert!(matches!(commutator_algebra(&h), Err(Error::NotHomAssociative(_))));
    }

    #[test]
    fn explicit_mirror_is_validated_by_skew_check() {
        let a = sl2c_lie();
        // the ε-skew mirror of [e1,e2] = e3 is [e2,e1] = e3 here
        let entries = vec![((0, 1), ints(&[0, 0, 1])), ((1, 0), ints(&[0, 0, -1]))];
        let b = ColorHomAlgebra::from_entries(a.basis().clone(), a.eps().clone(), &entries, Matrix::identity(3)).unwrap();
        assert!(!b.check().skew.pass);
    }
}
