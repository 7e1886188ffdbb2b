//! Linear maps, morphism checks, Yau twists and grid enumeration.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ColorHomAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{sub_vec, Matrix};
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    pub matrix: Matrix,
    pub even: bool,
}

impl LinearMap {
    pub fn new(a: &ColorHomAlgebra, matrix: Matrix) -> Result<Self> {
        let n = a.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!("map must be {n}x{n}")));
        }
        let even = matrix.preserves_blocks(a.basis().degrees());
        Ok(LinearMap { matrix, even })
    }
}

/// f([e_i,e_j]) = [f e_i, f e_j] on all ordered basis pairs.
pub fn morphism_defect(a: &ColorHomAlgebra, f: &Matrix) -> Option<(usize, usize)> {
    let n = a.dim();
    let cols = f.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(a.bracket_basis(i, j));
            let rhs = a.bracket(&cols[i], &cols[j]);
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn verify_morphism(a: &ColorHomAlgebra, f: &LinearMap, strict_even: bool) -> bool {
    if strict_even && !f.even {
        return false;
    }
    morphism_defect(a, &f.matrix).is_none()
}

/// [x,y]_β = β∘[x,y] with twist β·α.
pub fn twist(a: &ColorHomAlgebra, beta: &LinearMap) -> Result<ColorHomAlgebra> {
    if let Some(p) = morphism_defect(a, &beta.matrix) {
        return Err(Error::NotMorphism(p));
    }
    let bracket = a.product().compose_left(&beta.matrix);
    Ok(a.with_bracket(bracket).with_alpha(beta.matrix.mul(a.alpha())))
}

/// Bracket entries precomputed as index/value pairs for fast candidate screening.
struct Screen {
    n: usize,
    // for each ordered pair: nonzero (k, c_ij^k)
    pairs: Vec<Vec<(usize, Scalar)>>,
}

impl Screen {
    fn new(a: &ColorHomAlgebra) -> Self {
        let n = a.dim();
        let pairs = (0..n * n)
            .map(|p| {
                a.bracket_basis(p / n, p % n)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        Screen { n, pairs }
    }

    // entries[r*n + c] is the matrix entry in row r, column c
    fn passes(&self, entries: &[&Scalar]) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for out in 0..n {
                    let mut lhs = Scalar::zero();
                    for (k, c) in &self.pairs[i * n + j] {
                        let f = entries[out * n + k];
                        if !f.is_zero() {
                            lhs += &(f * c);
                        }
                    }
                    let mut rhs = Scalar::zero();
                    for k in 0..n {
                        let fk = entries[k * n + i];
                        if fk.is_zero() {
                            continue;
                        }
                        for l in 0..n {
                            let fl = entries[l * n + j];
                            if fl.is_zero() {
                                continue;
                            }
                            for (o, c) in &self.pairs[k * n + l] {
                                if *o == out {
                                    rhs += &(&(fk * fl) * c);
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every matrix with entries in `entry_set` that is a morphism, in lexicographic row-major order.
pub fn enumerate_morphisms(a: &ColorHomAlgebra, entry_set: &[Scalar], budget: u128) -> Result<Vec<LinearMap>> {
    let n = a.dim();
    let cells = (n * n) as u32;
    let base = entry_set.len() as u128;
    let candidates = base.checked_pow(cells).unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    if base == 0 {
        return Ok(Vec::new());
    }
    let screen = Screen::new(a);
    let total = candidates as u64;
    let chunk = 4096u64;
    let chunks: Vec<Vec<u64>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut hits = Vec::new();
            let mut digits = vec![0usize; n * n];
            for idx in c * chunk..((c + 1) * chunk).min(total) {
                let mut k = idx;
                for d in digits.iter_mut().rev() {
                    *d = (k % base as u64) as usize;
                    k /= base as u64;
                }
                let entries: Vec<&Scalar> = digits.iter().map(|&d| &entry_set[d]).collect();
                if screen.passes(&entries) {
                    hits.push(idx);
                }
            }
            hits
        })
        .collect();
    let mut out = Vec::new();
    for idx in chunks.into_iter().flatten() {
        let mut k = idx;
        let mut digits = vec![0usize; n * n];
        for d in digits.iter_mut().rev() {
            *d = (k % base as u64) as usize;
            k /= base as u64;
        }
        let m = Matrix::from_entries(n, n, digits.iter().map(|&d| entry_set[d].clone()).collect());
        out.push(LinearMap::new(a, m)?);
    }
    Ok(out)
}

/// f([e_i,e_j]) − [f e_i, f e_j] for every ordered pair, flattened.
pub fn morphism_residuals(a: &ColorHomAlgebra, f: &Matrix) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let cols = f.columns();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(sub_vec(&f.mul_vec(a.bracket_basis(i, j)), &a.bracket(&cols[i], &cols[j])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::GradedBasis;
    use crate::bichar::BiCharacter;
    use crate::group::Group;
    use crate::linalg::Matrix;

    #[test]
    fn identity_is_morphism() {
        let a = sl2_z2cubed();
        let id = LinearMap::new(&a, Matrix::identity(3)).unwrap();
        assert!(verify_morphism(&a, &id, true));
        assert_eq!(twist(&a, &id).unwrap(), a);
    }

    #[test]
    fn diagonal_sign_map_on_graded_sl2() {
        let a = sl2_z2cubed();
        let f = LinearMap::new(&a, Matrix::diagonal(&ints(&[-1, -1, 1]))).unwrap();
        assert!(f.even);
        assert!(verify_morphism(&a, &f, false));
    }

    #[test]
    fn swap_is_not_a_motion_morphism() {
        let a = motion_z2cubed();
        let f = LinearMap::new(&a, Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap();
        assert!(!f.even);
        assert!(!verify_morphism(&a, &f, false));
    }

    #[test]
    fn twist_of_sl2c_reproduces_hom_brackets() {
        let a = sl2c_lie();
        let f = LinearMap::new(&a, Matrix::diagonal(&ints(&[-1, -1, 1]))).unwrap();
        let t = twist(&a, &f).unwrap();
        assert_eq!(t, sl2c_hom());
    }

    #[test]
    fn twist_by_a_permutation() {
        // f: e1 ↦ −e2, e2 ↦ −e1, e3 ↦ e3 (column convention)
        let a = sl2_z2cubed();
        let f = LinearMap::new(&a, Matrix::from_ints(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, 1]])).unwrap();
        let t = twist(&a, &f).unwrap();
        assert_eq!(t.bracket_basis(0, 1), &ints(&[0, 0, 1]));
        assert_eq!(t.bracket_basis(0, 2), &ints(&[-1, 0, 0]));
        assert_eq!(t.bracket_basis(1, 2), &ints(&[0, -1, 0]));
        // f is not even, so the twisted bracket keeps skewness and Hom-Jacobi but not the grading
        let r = t.check();
        assert!(!f.even);
        assert!(r.skew.pass && r.jacobi.pass && !r.grading.pass);
    }

    #[test]
    fn zero_algebra_dim_one_enumerates_everything() {
        let g = Group::trivial();
        let eps = BiCharacter::trivial(g.clone());
        let basis = GradedBasis::numbered(vec![g.zero()], &eps).unwrap();
        let z = ColorHomAlgebra::zero(basis, eps, Matrix::identity(1)).unwrap();
        let maps = enumerate_morphisms(&z, &ints(&[0, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps[0].matrix.is_zero());
    }

    #[test]
    fn budget_is_enforced_before_work() {
        let a = sl2_z2cubed();
        let err = enumerate_morphisms(&a, &ints(&[-1, 0, 1]), 100).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { candidates: 19683, budget: 100 });
    }

    #[test]
    fn motion_enumeration_agrees_with_filter_oracle() {
        let a = motion_z2cubed();
        let maps = enumerate_morphisms(&a, &ints(&[0, 1]), DEFAULT_BUDGET).unwrap();
        let mut oracle = Vec::new();
        for bits in 0u32..512 {
            let m = Matrix::from_entries(3, 3, (0..9).rev().map(|k| Scalar::from_int(((bits >> k) & 1) as i64)).collect());
            if morphism_residuals(&a, &m).iter().all(|v| crate::linalg::is_zero_vec(v)) {
                oracle.push(m);
            }
        }
        let got: Vec<Matrix> = maps.iter().map(|f| f.matrix.clone()).collect();
        assert_eq!(got, oracle);
        for f in &maps {
            // f(e2e3 + e3e2) = 0 holds for every returned map
            let s = crate::linalg::add_vec(&f.matrix.mul_vec(a.bracket_basis(1, 2)), &f.matrix.mul_vec(a.bracket_basis(2, 1)));
            assert!(crate::linalg::is_zero_vec(&s));
            let r = twist(&a, f).unwrap().check();
            assert!(r.skew.pass && r.jacobi.pass);
            if f.even {
                assert!(r.grading.pass);
            }
        }
    }

    #[test]
    fn enumerated_morphisms_compose() {
        let a = sl2_z2cubed();
        let maps = enumerate_morphisms(&a, &ints(&[-1, 0, 1]), DEFAULT_BUDGET).unwrap();
        for f in maps.iter().step_by(3) {
            for g in maps.iter().step_by(5) {
                assert!(morphism_defect(&a, &f.matrix.mul(&g.matrix)).is_none());
            }
        }
    }
}
