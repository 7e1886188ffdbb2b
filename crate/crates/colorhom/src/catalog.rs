//! Small named algebras and constructions used by examples and randomized checks.

use crate::algebra::{ColorHomAlgebra, GradedBasis, Product};
use crate::bichar::BiCharacter;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// ℤ₂² with ε(a,b) = (−1)^{a₁b₂+a₂b₁}.
pub fn z2sq_symplectic() -> BiCharacter {
    BiCharacter::new(Group::new(vec![2, 2]).expect("orders"), vec![vec![0, 1], vec![1, 0]], 2).expect("valid form")
}

/// ℤ₂³ with ε(a,b) = (−1)^{a·b}.
pub fn z2cubed_dot() -> BiCharacter {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    BiCharacter::new(Group::new(vec![2, 2, 2]).expect("orders"), id, 2).expect("valid form")
}

/// ℤ₃ with the trivial form.
pub fn z3_trivial() -> BiCharacter {
    BiCharacter::trivial(Group::new(vec![3]).expect("orders"))
}

fn build(eps: BiCharacter, degs: &[&[i64]], entries: &[((usize, usize), &[i64])], alpha: Matrix) -> ColorHomAlgebra {
    let g = eps.group().clone();
    let degrees = degs.iter().map(|d| g.element(d).expect("degree")).collect();
    let basis = GradedBasis::numbered(degrees, &eps).expect("basis");
    let entries: Vec<_> = entries.iter().map(|(ij, v)| (*ij, ints(v))).collect();
    ColorHomAlgebra::from_entries(basis, eps, &entries, alpha).expect("entries")
}

/// sl₂ᶜ over ℤ₂²: [e₁,e₂]=e₃, [e₁,e₃]=e₂, [e₂,e₃]=e₁, α = Id.
pub fn sl2c_color_lie() -> ColorHomAlgebra {
    build(
        z2sq_symplectic(),
        &[&[1, 0], &[0, 1], &[1, 1]],
        &[((0, 1), &[0, 0, 1]), ((0, 2), &[0, 1, 0]), ((1, 2), &[1, 0, 0])],
        Matrix::identity(3),
    )
}

/// sl₂ᶜ twisted by α = diag(−1,−1,1).
pub fn sl2c_twisted() -> ColorHomAlgebra {
    build(
        z2sq_symplectic(),
        &[&[1, 0], &[0, 1], &[1, 1]],
        &[((0, 1), &[0, 0, 1]), ((0, 2), &[0, -1, 0]), ((1, 2), &[-1, 0, 0])],
        Matrix::diagonal(&ints(&[-1, -1, 1])),
    )
}

const Z2CUBED_DEGREES: [&[i64]; 3] = [&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]];

/// sl(2) graded by ℤ₂³ with the dot-product form.
pub fn sl2_z2cubed() -> ColorHomAlgebra {
    build(
        z2cubed_dot(),
        &Z2CUBED_DEGREES,
        &[((0, 1), &[0, 0, 1]), ((0, 2), &[0, 1, 0]), ((1, 2), &[1, 0, 0])],
        Matrix::identity(3),
    )
}

/// The motion algebra: as sl(2) over ℤ₂³ but [e₂,e₃] = 0.
pub fn motion_z2cubed() -> ColorHomAlgebra {
    build(z2cubed_dot(), &Z2CUBED_DEGREES, &[((0, 1), &[0, 0, 1]), ((0, 2), &[0, 1, 0])], Matrix::identity(3))
}

/// sl(2) graded by ℤ₃: h, e, f of degrees 0, 1, 2.
pub fn sl2_z3() -> ColorHomAlgebra {
    build(
        z3_trivial(),
        &[&[0], &[1], &[2]],
        &[((0, 1), &[0, 2, 0]), ((0, 2), &[0, 0, -2]), ((1, 2), &[1, 0, 0])],
        Matrix::identity(3),
    )
}

/// x, y, z with [x,y] = z of degrees a, b, a+b and z central.
pub fn heisenberg(eps: BiCharacter, a: &GroupElement, b: &GroupElement) -> Result<ColorHomAlgebra> {
    let g = eps.group().clone();
    if !g.contains(a) || !g.contains(b) {
        return Err(Error::GroupMismatch("Heisenberg degrees are not in the grading group".into()));
    }
    let degrees = vec![a.clone(), b.clone(), g.add(a, b)];
    let basis = GradedBasis::numbered(degrees, &eps)?;
    ColorHomAlgebra::from_entries(basis, eps, &[((0, 1), ints(&[0, 0, 1]))], Matrix::identity(3))
}

/// Adds a central basis vector of degree `d`; the twist acts on it by `c`.
pub fn with_central(a: &ColorHomAlgebra, d: &GroupElement, c: &Scalar) -> Result<ColorHomAlgebra> {
    let n = a.dim();
    let mut degrees = a.basis().degrees().to_vec();
    degrees.push(d.clone());
    let basis = GradedBasis::numbered(degrees, a.eps())?;
    let p = Product::from_fn(n + 1, |i, j| {
        let mut v: Vector = if i < n && j < n { a.bracket_basis(i, j).clone() } else { ints(&vec![0; n]) };
        v.push(Scalar::zero());
        v
    });
    let mut alpha = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            alpha.set(i, j, a.alpha().get(i, j).clone());
        }
    }
    alpha.set(n, n, c.clone());
    ColorHomAlgebra::from_product(basis, a.eps().clone(), p, alpha)
}

/// The same algebra in the basis given by the columns of an even invertible P:
/// [e′_i, e′_j] = P⁻¹[P e_i, P e_j], α′ = P⁻¹αP.
pub fn change_basis(a: &ColorHomAlgebra, p: &Matrix) -> Result<ColorHomAlgebra> {
    let n = a.dim();
    if p.rows() != n || p.cols() != n || !p.preserves_blocks(a.basis().degrees()) {
        return Err(Error::Structure("basis change must be an even n×n matrix".into()));
    }
    let inv = p.inverse().ok_or_else(|| Error::Singular("basis change is not invertible".into()))?;
    let cols = p.columns();
    let prod = Product::from_fn(n, |i, j| inv.mul_vec(&a.bracket(&cols[i], &cols[j])));
    ColorHomAlgebra::from_product(a.basis().clone(), a.eps().clone(), prod, inv.mul(a.alpha()).mul(p))
}

fn frac(p: i64, q: i64) -> Scalar {
    Scalar::from_frac(p, q)
}

fn pick_from(pick: &mut dyn FnMut(u32) -> u32, items: &[i64]) -> i64 {
    items[pick(items.len() as u32) as usize]
}

/// Random even invertible matrix with small integer blocks, or the identity after repeated failures.
fn random_basis_change(a: &ColorHomAlgebra, pick: &mut dyn FnMut(u32) -> u32) -> Matrix {
    let n = a.dim();
    let degs = a.basis().degrees();
    for _ in 0..16 {
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if degs[i] == degs[j] {
                    p.set(i, j, Scalar::from_int(pick_from(pick, &[-1, 0, 1, 2])));
                }
            }
        }
        if p.inverse().is_some() {
            return p;
        }
    }
    Matrix::identity(n)
}

/// A multiplicative color Hom-Lie algebra of dimension 3 or 4 over ℤ₂², ℤ₂³ or ℤ₃.
///
/// A color Lie algebra is twisted by a diagonal endomorphism and written in a random even basis.
/// `pick(k)` must return a value in 0..k.
pub fn sample_multiplicative(pick: &mut dyn FnMut(u32) -> u32) -> ColorHomAlgebra {
    let sign = |pick: &mut dyn FnMut(u32) -> u32| pick_from(pick, &[-1, 1]);
    let small = |pick: &mut dyn FnMut(u32) -> u32| pick_from(pick, &[-2, -1, 0, 1, 2]);
    let (base, diag): (ColorHomAlgebra, Vec<Scalar>) = match pick(3) {
        0 => match pick(2) {
            0 => {
                let (s1, s2) = (sign(pick), sign(pick));
                (sl2c_color_lie(), ints(&[s1, s2, s1 * s2]))
            }
            _ => {
                let eps = z2sq_symplectic();
                let g = eps.group().clone();
                let els = g.elements();
                let a = els[pick(4) as usize].clone();
                let b = els[pick(4) as usize].clone();
                let (x, y) = (small(pick), small(pick));
                (heisenberg(eps, &a, &b).expect("degrees"), ints(&[x, y, x * y]))
            }
        },
        1 => match pick(3) {
            0 => {
                let (s1, s2) = (sign(pick), sign(pick));
                (sl2_z2cubed(), ints(&[s1, s2, s1 * s2]))
            }
            1 => {
                let (s, b) = (sign(pick), small(pick));
                (motion_z2cubed(), ints(&[s, b, s * b]))
            }
            _ => {
                let eps = z2cubed_dot();
                let g = eps.group().clone();
                let els = g.elements();
                let a = els[pick(8) as usize].clone();
                let b = els[pick(8) as usize].clone();
                let (x, y) = (small(pick), small(pick));
                (heisenberg(eps, &a, &b).expect("degrees"), ints(&[x, y, x * y]))
            }
        },
        _ => match pick(2) {
            0 => {
                let b = [frac(1, 1), frac(2, 1), frac(-1, 1), frac(-2, 1), frac(1, 2)][pick(5) as usize].clone();
                let inv = b.inverse().expect("nonzero");
                (sl2_z3(), vec![Scalar::one(), b, inv])
            }
            _ => {
                let eps = z3_trivial();
                let g = eps.group().clone();
                let a = g.element(&[pick(3) as i64]).expect("degree");
                let b = g.element(&[pick(3) as i64]).expect("degree");
                let (x, y) = (small(pick), small(pick));
                (heisenberg(eps, &a, &b).expect("degrees"), ints(&[x, y, x * y]))
            }
        },
    };
    let (base, diag) = if pick(2) == 1 {
        let els = base.eps().group().elements();
        let d = els[pick(els.len() as u32) as usize].clone();
        let c = Scalar::from_int(small(pick));
        let mut diag = diag;
        diag.push(c);
        (with_central(&base, &d, &Scalar::one()).expect("central extension"), diag)
    } else {
        (base, diag)
    };
    let beta = crate::morphisms::LinearMap::new(&base, Matrix::diagonal(&diag)).expect("square");
    let twisted = crate::morphisms::twist(&base, &beta).expect("diagonal endomorphism");
    let p = random_basis_change(&twisted, pick);
    change_basis(&twisted, &p).expect("invertible basis change")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{twist, LinearMap};

    #[test]
    fn catalog_entries_are_color_lie() {
        for a in [sl2c_color_lie(), sl2c_twisted(), sl2_z2cubed(), motion_z2cubed(), sl2_z3()] {
            let r = a.check();
            assert!(r.is_color_hom_lie() && r.multiplicative.pass, "{r:?}");
        }
        let eps = z2cubed_dot();
        let g = eps.group().clone();
        let h = heisenberg(eps, &g.element(&[1, 0, 0]).unwrap(), &g.element(&[0, 1, 1]).unwrap()).unwrap();
        assert!(h.check().is_color_hom_lie());
        let w = with_central(&h, &g.element(&[1, 1, 1]).unwrap(), &Scalar::from_int(3)).unwrap();
        assert!(w.check().is_color_hom_lie() && w.is_multiplicative());
    }

    #[test]
    fn basis_change_preserves_the_structure() {
        let a = sl2c_twisted();
        let p = Matrix::diagonal(&ints(&[2, -1, 3]));
        let b = change_basis(&a, &p).unwrap();
        assert!(b.check().is_color_hom_lie() && b.is_multiplicative());
        // P is then an isomorphism b → a
        let back = change_basis(&b, &p.inverse().unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn samples_are_multiplicative() {
        // a fixed cycling choice sequence covers every branch
        for start in 0..40u32 {
            let mut k = start;
            let mut pick = |m: u32| {
                k = k.wrapping_mul(2654435761).wrapping_add(12345);
                (k >> 8) % m
            };
            let a = sample_multiplicative(&mut pick);
            let r = a.check();
            assert!(r.is_color_hom_lie() && r.multiplicative.pass, "{r:?}");
        }
    }

    #[test]
    fn twisted_catalog_entry_is_a_twist() {
        let t = twist(&sl2c_color_lie(), &LinearMap::new(&sl2c_color_lie(), Matrix::diagonal(&ints(&[-1, -1, 1]))).unwrap());
        assert_eq!(t.unwrap(), sl2c_twisted());
    }
}
