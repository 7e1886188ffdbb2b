//! Truncated one-parameter deformations over K[t]/(t^{k+1}).
//!
//! A bracket series carries its twist as a series too; a single twist term is the
//! usual fixed α.

use serde::Serialize;

use crate::algebra::{ColorHomAlgebra, Product};
use crate::cohomology::{cochain_basis, Coboundary, CochainSpace};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, sub_vec, zero_vec, Matrix, Vector};
use crate::report::{nonzero, tuples, Check};
use crate::representation::alpha_s_adjoint;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedBracket {
    pub order: usize,
    /// [.,.]_0 … [.,.]_k; missing trailing terms are zero.
    pub terms: Vec<Product>,
    /// α_0 … α_p; one entry for a fixed twist.
    pub alpha_terms: Vec<Matrix>,
}

impl TruncatedBracket {
    /// The undeformed algebra at order k.
    pub fn trivial(a: &ColorHomAlgebra, order: usize) -> Self {
        TruncatedBracket { order, terms: vec![a.product().clone()], alpha_terms: vec![a.alpha().clone()] }
    }

    pub fn with_first_order(a: &ColorHomAlgebra, order: usize, first: Product) -> Self {
        TruncatedBracket { order, terms: vec![a.product().clone(), first], alpha_terms: vec![a.alpha().clone()] }
    }

    pub fn term(&self, i: usize) -> Option<&Product> {
        if i <= self.order {
            self.terms.get(i)
        } else {
            None
        }
    }

    pub fn alpha_term(&self, i: usize) -> Option<&Matrix> {
        if i <= self.order {
            self.alpha_terms.get(i)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalAutomorphism {
    pub order: usize,
    pub phis: Vec<Matrix>,
}

impl FormalAutomorphism {
    pub fn new(a: &ColorHomAlgebra, order: usize, phis: Vec<Matrix>) -> Result<Self> {
        let n = a.dim();
        match phis.first() {
            Some(p) if *p == Matrix::identity(n) => {}
            _ => return Err(Error::Structure("φ_0 must be the identity".into())),
        }
        if let Some(i) = phis.iter().position(|p| !p.preserves_blocks(a.basis().degrees())) {
            return Err(Error::Structure(format!("φ_{i} is not even")));
        }
        Ok(FormalAutomorphism { order, phis })
    }

    pub fn identity(a: &ColorHomAlgebra, order: usize) -> Self {
        FormalAutomorphism { order, phis: vec![Matrix::identity(a.dim())] }
    }

    fn phi(&self, i: usize) -> Option<&Matrix> {
        (i <= self.order).then(|| self.phis.get(i)).flatten()
    }

    /// Coefficients of φ_t^{-1} up to the truncation order.
    pub fn inverse_series(&self) -> Vec<Matrix> {
        let n = self.phis[0].rows();
        let mut psi = vec![Matrix::identity(n)];
        for s in 1..=self.order {
            let mut acc = Matrix::zeros(n, n);
            for i in 1..=s {
                if let Some(p) = self.phi(i) {
                    acc = acc.sub(&p.mul(&psi[s - i]));
                }
            }
            psi.push(acc);
        }
        psi
    }
}

/// Truncated product of matrix series.
pub fn series_mul(a: &[Matrix], b: &[Matrix], order: usize) -> Vec<Matrix> {
    let n = a.first().or(b.first()).map_or(0, Matrix::rows);
    let mut out = vec![Matrix::zeros(n, n); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim_series(out)
}

fn trim_series(mut s: Vec<Matrix>) -> Vec<Matrix> {
    while s.len() > 1 && s.last().is_some_and(Matrix::is_zero) {
        s.pop();
    }
    s
}

pub fn series_pow(a: &[Matrix], e: u64, order: usize) -> Vec<Matrix> {
    let n = a[0].rows();
    let mut out = vec![Matrix::identity(n)];
    for _ in 0..e {
        out = series_mul(&out, a, order);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub s: usize,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub base_matches: bool,
    pub skew: Check,
    pub grading: Check,
    pub orders: Vec<OrderCheck>,
}

impl DeformationReport {
    pub fn pass(&self) -> bool {
        self.base_matches && self.skew.pass && self.grading.pass && self.orders.iter().all(|o| o.check.pass)
    }
}

/// Σ_{i+j+l=s} ⟲ ε(z,x)[α_l x, [y,z]_i]_j for every s ≤ k, on all basis triples.
pub fn check_deformation(a: &ColorHomAlgebra, b: &TruncatedBracket) -> Result<DeformationReport> {
    let n = a.dim();
    if b.terms.iter().any(|p| p.dim() != n) || b.alpha_terms.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Dimension("deformation terms do not match the algebra".into()));
    }
    let base_matches = b.terms.first() == Some(a.product()) && b.alpha_terms.first() == Some(a.alpha());
    let g = a.eps().group();
    let terms: Vec<&Product> = (0..=b.order).filter_map(|i| b.term(i)).collect();
    let alphas: Vec<&Matrix> = (0..=b.order).filter_map(|i| b.alpha_term(i)).collect();
    let mut skew = Check::ok();
    let mut grading = Check::ok();
    'outer: for (t, p) in terms.iter().enumerate() {
        for ij in tuples(n, 2) {
            let (i, j) = (ij[0], ij[1]);
            let mut r = p.get(i, j).clone();
            axpy(&mut r, a.eps_idx(i, j), p.get(j, i));
            if skew.pass && !is_zero_vec(&r) {
                skew = Check::fail(vec![t, i, j], r);
            }
            let target = g.add(a.degree(i), a.degree(j));
            let v = p.get(i, j);
            if grading.pass && (0..n).any(|k| !v[k].is_zero() && a.degree(k) != &target) {
                grading = Check::fail(vec![t, i, j], v.clone());
            }
            if !skew.pass && !grading.pass {
                break 'outer;
            }
        }
    }
    let orders = (0..=b.order)
        .map(|s| {
            let check = Check::scan(tuples(n, 3), |t| {
                let mut sum = zero_vec(n);
                for (x, y, z) in [(t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])] {
                    let e = a.eps_idx(z, x);
                    for (l, al) in alphas.iter().enumerate().take(s + 1) {
                        let ax = al.col(x);
                        for (i, pi) in terms.iter().enumerate().take(s + 1 - l) {
                            let j = s - l - i;
                            if let Some(pj) = terms.get(j) {
                                axpy(&mut sum, e, &pj.apply(&ax, pi.get(y, z)));
                            }
                        }
                    }
                }
                nonzero(sum)
            });
            OrderCheck { s, check }
        })
        .collect();
    Ok(DeformationReport { base_matches, skew, grading, orders })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstOrderClass {
    pub representation: String,
    pub r: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub compatible: bool,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    /// Coordinates along the H² representatives; empty when the class is zero or undefined.
    pub class: Vec<Scalar>,
}

/// Free coordinates of a degree-0 bracket table as a 2-cochain.
pub fn product_as_cochain(space: &CochainSpace, p: &Product) -> Vector {
    space.slots.iter().map(|&(t, k)| {
        let tup = &space.tuples[t];
        p.get(tup[0], tup[1])[k].clone()
    }).collect()
}

/// [.,.]_1 fed to H² with the α^{-1}-adjoint representation when α is invertible, else ad_0.
pub fn first_order_class(a: &ColorHomAlgebra, b: &TruncatedBracket) -> Result<FirstOrderClass> {
    if b.order < 1 {
        return Err(Error::Structure("first-order class needs order ≥ 1".into()));
    }
    let n = a.dim();
    let (rep, r, name, warning) = match alpha_s_adjoint(a, -1) {
        Ok(m) => (m, 1, "ad_-1", None),
        Err(_) => (
            alpha_s_adjoint(a, 0)?,
            0,
            "ad_0",
            Some("α is not invertible; using ad_0 with r = 0 instead of ad_-1".to_string()),
        ),
    };
    let first = b.term(1).cloned().unwrap_or_else(|| Product::zero(n));
    let gamma = a.eps().group().zero();
    let c2 = cochain_basis(a, &rep, 2, &gamma)?;
    let c3 = cochain_basis(a, &rep, 3, &gamma)?;
    let cb = Coboundary::new(a, &rep, r);
    let f = product_as_cochain(&c2, &first);
    // every entry of [.,.]_1 must be representable in the ε-skew degree-0 coordinates
    let representable = tuples(n, 2).all(|ij| c2.eval_basis(a, &f, &ij) == *first.get(ij[0], ij[1]));
    if !representable {
        return Ok(FirstOrderClass {
            representation: name.into(),
            r,
            warning,
            compatible: false,
            is_cocycle: false,
            is_coboundary: false,
            class: Vec::new(),
        });
    }
    let df = cb.apply_free(&c2, &f, &c3)?;
    let is_cocycle = is_zero_vec(&df);
    let coords = c2.from_free(&f);
    let compatible = coords.is_some();
    let (mut is_coboundary, mut class) = (false, Vec::new());
    if let (true, Some(c)) = (is_cocycle, coords) {
        let h = crate::cohomology::cohomology_group_with(&cb, 2, &gamma)?;
        let mut cols = h.b_basis.clone();
        cols.extend(h.representatives.iter().cloned());
        if cols.is_empty() {
            is_coboundary = is_zero_vec(&c);
        } else {
            let sol = Matrix::from_cols(c.len(), &cols).solve(&c).ok_or_else(|| {
                Error::Structure("cocycle is not spanned by coboundaries and representatives".into())
            })?;
            class = sol[h.b_basis.len()..].to_vec();
            is_coboundary = class.iter().all(Scalar::is_zero);
            if is_coboundary {
                class.clear();
            }
        }
    }
    Ok(FirstOrderClass { representation: name.into(), r, warning, compatible, is_cocycle, is_coboundary, class })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub bracket: Check,
    pub twist: Check,
}

impl EquivalenceReport {
    pub fn pass(&self) -> bool {
        self.bracket.pass && self.twist.pass
    }
}

/// φ_t[x,y]_t = [φ_t x, φ_t y]′_t and φ_t α_t = α′_t φ_t, coefficient-wise mod t^{k+1}.
pub fn check_equivalence(
    a: &ColorHomAlgebra,
    b1: &TruncatedBracket,
    b2: &TruncatedBracket,
    phi: &FormalAutomorphism,
) -> Result<EquivalenceReport> {
    if b1.order != b2.order || b1.order != phi.order {
        return Err(Error::Structure("orders of the deformations and φ differ".into()));
    }
    let n = a.dim();
    let k = b1.order;
    let phis: Vec<Matrix> = (0..=k).map(|i| phi.phi(i).cloned().unwrap_or_else(|| Matrix::zeros(n, n))).collect();
    let bracket = Check::scan(tuples(n, 2).flat_map(|ij| (0..=k).map(move |s| vec![s, ij[0], ij[1]])), |t| {
        let (s, x, y) = (t[0], t[1], t[2]);
        let mut diff = zero_vec(n);
        for i in 0..=s {
            if let Some(p) = b1.term(s - i) {
                axpy(&mut diff, &Scalar::one(), &phis[i].mul_vec(p.get(x, y)));
            }
        }
        for i in 0..=s {
            for j in 0..=s - i {
                if let Some(p) = b2.term(s - i - j) {
                    axpy(&mut diff, &-Scalar::one(), &p.apply(&phis[i].col(x), &phis[j].col(y)));
                }
            }
        }
        nonzero(diff)
    });
    let al1: Vec<Matrix> = (0..=k).filter_map(|i| b1.alpha_term(i).cloned()).collect();
    let al2: Vec<Matrix> = (0..=k).filter_map(|i| b2.alpha_term(i).cloned()).collect();
    let lhs = series_mul(&phis, &al1, k);
    let rhs = series_mul(&al2, &phis, k);
    let twist = Check::scan((0..=k).map(|s| vec![s]), |s| {
        let z = Matrix::zeros(n, n);
        let l = lhs.get(s[0]).unwrap_or(&z);
        let r = rhs.get(s[0]).unwrap_or(&z);
        nonzero(l.sub(r).entries().to_vec())
    });
    Ok(EquivalenceReport { bracket, twist })
}

/// [x,y]′_t = φ_t[φ_t^{-1}x, φ_t^{-1}y]_t and α′_t = φ_t α_t φ_t^{-1}, truncated.
pub fn transport(a: &ColorHomAlgebra, b: &TruncatedBracket, phi: &FormalAutomorphism) -> TruncatedBracket {
    let n = a.dim();
    let k = b.order;
    let psi = phi.inverse_series();
    let phis: Vec<Matrix> = (0..=k).map(|i| phi.phi(i).cloned().unwrap_or_else(|| Matrix::zeros(n, n))).collect();
    let mut terms = Vec::with_capacity(k + 1);
    for s in 0..=k {
        let p = Product::from_fn(n, |x, y| {
            let mut v = zero_vec(n);
            for i in 0..=s {
                for j in 0..=s - i {
                    for l in 0..=s - i - j {
                        let m = s - i - j - l;
                        if let Some(bm) = b.term(m) {
                            let inner = bm.apply(&psi[j].col(x), &psi[l].col(y));
                            axpy(&mut v, &Scalar::one(), &phis[i].mul_vec(&inner));
                        }
                    }
                }
            }
            v
        });
        terms.push(p);
    }
    let al: Vec<Matrix> = (0..=k).filter_map(|i| b.alpha_term(i).cloned()).collect();
    let alpha_terms = series_mul(&series_mul(&phis, &al, k), &psi, k);
    TruncatedBracket { order: k, terms, alpha_terms }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionDeformation {
    pub bracket: TruncatedBracket,
    /// Lowest t-order at which α_t[x,y] = [α_t x, α_t y] fails, if any.
    pub endomorphism_defect: Option<usize>,
    /// For a derived deformation with α_t = Id + tα₁: the expansion [.,.] + 2tα₁∘[.,.] + t²α₁∘[.,.].
    pub stated_terms: Option<Vec<Product>>,
}

/// Lowest order s where Σ_{i} α_i[x,y] differs from Σ_{i+j=s}[α_i x, α_j y].
pub fn endomorphism_defect(l: &ColorHomAlgebra, alphas: &[Matrix], order: usize) -> Option<usize> {
    let n = l.dim();
    (0..=order).find(|&s| {
        tuples(n, 2).any(|ij| {
            let (x, y) = (ij[0], ij[1]);
            let mut lhs = alphas.get(s).map_or_else(|| zero_vec(n), |m| m.mul_vec(l.bracket_basis(x, y)));
            for i in 0..=s {
                if let (Some(ai), Some(aj)) = (alphas.get(i), alphas.get(s - i)) {
                    lhs = sub_vec(&lhs, &l.bracket(&ai.col(x), &aj.col(y)));
                }
            }
            !is_zero_vec(&lhs)
        })
    })
}

/// [.,.]_t = α_t∘[.,.] with twist α_t, or the n-th derived version α_t^{2ⁿ}∘[.,.] with twist α_t^{2ⁿ}.
pub fn composition_deformation(
    l: &ColorHomAlgebra,
    alphas: &[Matrix],
    order: usize,
    derived: Option<u32>,
    strict: bool,
) -> Result<CompositionDeformation> {
    let n = l.dim();
    if alphas.is_empty() || alphas.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Dimension("twist terms do not match the algebra".into()));
    }
    if *l.alpha() != Matrix::identity(n) {
        return Err(Error::Structure("composition deformation starts from α = Id".into()));
    }
    let defect = endomorphism_defect(l, alphas, order);
    if strict {
        if let Some(o) = defect {
            return Err(Error::NotEndomorphism { order: o });
        }
    }
    let alpha_t = trim_series(alphas.iter().take(order + 1).cloned().collect());
    let power = match derived {
        None => 1,
        Some(d) if d >= 62 => return Err(Error::Structure("derived order too large".into())),
        Some(d) => 1u64 << d,
    };
    let twist = series_pow(&alpha_t, power, order);
    let terms: Vec<Product> = twist.iter().map(|m| l.product().compose_left(m)).collect();
    let stated_terms = match (derived, alpha_t.len()) {
        (Some(1), 2) => {
            let b = l.product();
            Some(vec![
                b.clone(),
                b.compose_left(&alpha_t[1]).scale(&Scalar::from_int(2)),
                b.compose_left(&alpha_t[1]),
            ])
        }
        _ => None,
    };
    let bracket = TruncatedBracket { order, terms, alpha_terms: twist };
    Ok(CompositionDeformation { bracket, endomorphism_defect: defect, stated_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::morphisms::{enumerate_morphisms, DEFAULT_BUDGET};
    use crate::structure::derivation_space;

    #[test]
    fn order_zero_is_the_base_jacobi_check() {
        for a in [sl2c_hom(), sl2_z2cubed()] {
            let r = check_deformation(&a, &TruncatedBracket::trivial(&a, 0)).unwrap();
            assert!(r.pass());
            assert_eq!(r.orders[0].check, a.check().jacobi);
        }
        let bad = sl2c_hom().with_alpha(Matrix::from_ints(&[&[-1, 1, 0], &[0, -1, 0], &[0, 0, 1]]));
        let r = check_deformation(&bad, &TruncatedBracket::trivial(&bad, 0)).unwrap();
        assert_eq!(r.orders[0].check, bad.check().jacobi);
        assert!(!r.pass());
    }

    #[test]
    fn trivial_first_order_is_zero_class() {
        let a = sl2c_hom();
        let c = first_order_class(&a, &TruncatedBracket::trivial(&a, 1)).unwrap();
        assert!(c.is_cocycle && c.is_coboundary && c.class.is_empty());
        assert_eq!(c.representation, "ad_-1");
    }

    #[test]
    fn non_cocycle_first_term_fails_at_order_one() {
        // [e1,e2]_1 = e3 alone, with the mirror fixed by skewness
        let a = sl2c_hom();
        let mut p = Product::zero(3);
        p.set(0, 1, ints(&[0, 0, 1]));
        p.set(1, 0, ints(&[0, 0, 1]));
        let b = TruncatedBracket::with_first_order(&a, 1, p);
        let r = check_deformation(&a, &b).unwrap();
        let c = first_order_class(&a, &b).unwrap();
        assert_eq!(r.orders[1].check.pass, c.is_cocycle);
    }

    #[test]
    fn composition_with_morphisms_passes_when_endomorphic() {
        let l = sl2_z2cubed();
        let maps = enumerate_morphisms(&l, &ints(&[-1, 0, 1]), DEFAULT_BUDGET).unwrap();
        let id = Matrix::identity(3);
        let mut seen = 0;
        for f in &maps {
            let d = composition_deformation(&l, &[id.clone(), f.matrix.clone()], 2, None, false).unwrap();
            let r = check_deformation(&l.with_alpha(id.clone()), &d.bracket).unwrap();
            if d.endomorphism_defect.is_none() {
                assert!(r.pass());
                seen += 1;
            }
            if r.pass() {
                assert!(first_order_class(&l, &d.bracket).unwrap().is_cocycle);
            }
        }
        // α₁ = 0 among the enumerated maps
        assert!(seen >= 1);
    }

    #[test]
    fn strict_composition_reports_the_defect_order() {
        let l = sl2_z2cubed();
        let swap = Matrix::diagonal(&ints(&[-1, -1, 1]));
        let e = composition_deformation(&l, &[Matrix::identity(3), swap], 2, None, true).unwrap_err();
        // the order-1 condition asks α₁ to be a derivation
        assert_eq!(e, Error::NotEndomorphism { order: 1 });
    }

    #[test]
    fn identity_series_is_the_undeformed_algebra() {
        let l = sl2_z2cubed();
        let d = composition_deformation(&l, &[Matrix::identity(3)], 2, None, true).unwrap();
        assert_eq!(d.bracket.terms, vec![l.product().clone()]);
        assert!(check_deformation(&l, &d.bracket).unwrap().pass());
    }

    #[test]
    fn derived_expansion_squares_the_first_term() {
        let l = sl2_z2cubed();
        let a1 = Matrix::diagonal(&ints(&[-1, -1, 1]));
        let d = composition_deformation(&l, &[Matrix::identity(3), a1.clone()], 2, Some(1), false).unwrap();
        let b = l.product();
        assert_eq!(d.bracket.terms[1], b.compose_left(&a1).scale(&Scalar::from_int(2)));
        assert_eq!(d.bracket.terms[2], b.compose_left(&a1.mul(&a1)));
        let stated = d.stated_terms.unwrap();
        // α₁² = Id differs from α₁ here
        assert_ne!(stated[2], d.bracket.terms[2]);
    }

    #[test]
    fn equivalence_identity_and_transport() {
        let a = sl2_z2cubed();
        let b = TruncatedBracket::trivial(&a, 1);
        let id = FormalAutomorphism::identity(&a, 1);
        assert!(check_equivalence(&a, &b, &b, &id).unwrap().pass());
        // φ_t = Id + tD with D a derivation commuting with α = Id
        let der = derivation_space(&a, 0, &a.eps().group().zero()).unwrap();
        let dmat = der.basis.first().cloned().unwrap_or_else(|| Matrix::zeros(3, 3));
        let phi = FormalAutomorphism::new(&a, 1, vec![Matrix::identity(3), dmat]).unwrap();
        let b2 = transport(&a, &b, &phi);
        assert!(check_equivalence(&a, &b, &b2, &phi).unwrap().pass());
        assert!(check_deformation(&a, &b2).unwrap().pass());
    }

    #[test]
    fn mismatched_twist_fails_equivalence() {
        let a = sl2_z2cubed();
        let b = TruncatedBracket::trivial(&a, 1);
        let mut b2 = b.clone();
        b2.alpha_terms = vec![Matrix::diagonal(&ints(&[1, 1, 2]))];
        let r = check_equivalence(&a, &b, &b2, &FormalAutomorphism::identity(&a, 1)).unwrap();
        assert!(r.bracket.pass && !r.twist.pass);
        assert_eq!(r.twist.witness.unwrap().indices, vec![0]);
    }

    #[test]
    fn series_inverse() {
        let a = sl2_z2cubed();
        let d = Matrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let phi = FormalAutomorphism::new(&a, 3, vec![Matrix::identity(3), d]).unwrap();
        let prod = series_mul(&phi.phis, &phi.inverse_series(), 3);
        assert_eq!(prod, vec![Matrix::identity(3)]);
    }

    #[test]
    fn phi_zero_must_be_identity() {
        let a = sl2_z2cubed();
        assert!(FormalAutomorphism::new(&a, 1, vec![Matrix::zeros(3, 3)]).is_err());
    }
}
