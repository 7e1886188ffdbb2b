//! Representations (M, ρ, β), module structures, α^s-adjoints and duals.

use serde::Serialize;

use crate::algebra::{ColorHomAlgebra, GradedBasis};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{nonzero, tuples, Check};
use crate::scalar::Scalar;

/// ρ(e_i) for each algebra basis vector and the twist β on M.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Representation {
    pub carrier: GradedBasis,
    pub rho: Vec<Matrix>,
    pub beta: Matrix,
}

/// action[i] is the matrix of m ↦ [e_i, m]_M.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleStructure {
    pub carrier: GradedBasis,
    pub action: Vec<Matrix>,
    pub beta: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub degrees: Check,
    pub identity: Check,
}

impl RepReport {
    pub fn pass(&self) -> bool {
        self.degrees.pass && self.identity.pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub degrees: Check,
    pub module1: Check,
    pub module2: Check,
}

impl ModuleReport {
    pub fn pass(&self) -> bool {
        self.degrees.pass && self.module1.pass && self.module2.pass
    }
}

/// Σ v_i·maps[i].
pub fn combine(maps: &[Matrix], v: &[Scalar]) -> Matrix {
    let dim = maps.first().map_or(0, Matrix::rows);
    let mut acc = Matrix::zeros(dim, dim);
    for (m, c) in maps.iter().zip(v) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

fn check_shapes(a: &ColorHomAlgebra, carrier: &GradedBasis, maps: &[Matrix], beta: &Matrix) -> Result<()> {
    let d = carrier.dim();
    if maps.len() != a.dim() {
        return Err(Error::Dimension(format!("need {} action matrices, got {}", a.dim(), maps.len())));
    }
    if maps.iter().chain(std::iter::once(beta)).any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::Dimension(format!("action and twist matrices must be {d}x{d}")));
    }
    Ok(())
}

fn degree_check(a: &ColorHomAlgebra, carrier: &GradedBasis, maps: &[Matrix], beta: &Matrix) -> Check {
    let g = a.eps().group();
    let d = carrier.dim();
    for (i, m) in maps.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                let v = m.get(r, c);
                if !v.is_zero() && carrier.degree(r) != &g.add(carrier.degree(c), a.degree(i)) {
                    return Check::fail_note(vec![i, r, c], vec![v.clone()], "action does not shift degree by deg e_i");
                }
            }
        }
    }
    for r in 0..d {
        for c in 0..d {
            let v = beta.get(r, c);
            if !v.is_zero() && carrier.degree(r) != carrier.degree(c) {
                return Check::fail_note(vec![r, c], vec![v.clone()], "twist is not degree-preserving");
            }
        }
    }
    Check::ok()
}

/// ρ([x,y])∘β − ρ(α x)∘ρ(y) + ε(x,y)ρ(α y)∘ρ(x) on basis pairs.
fn hom_rep_identity(a: &ColorHomAlgebra, maps: &[Matrix], beta: &Matrix) -> Check {
    let n = a.dim();
    Check::scan(tuples(n, 2), |ij| {
        let (i, j) = (ij[0], ij[1]);
        let lhs = combine(maps, a.bracket_basis(i, j)).mul(beta);
        let t1 = combine(maps, &a.alpha_col(i)).mul(&maps[j]);
        let t2 = combine(maps, &a.alpha_col(j)).mul(&maps[i]).scale(a.eps_idx(i, j));
        nonzero(lhs.sub(&t1).add(&t2).entries().to_vec())
    })
}

pub fn check_representation(a: &ColorHomAlgebra, r: &Representation) -> Result<RepReport> {
    check_shapes(a, &r.carrier, &r.rho, &r.beta)?;
    Ok(RepReport {
        degrees: degree_check(a, &r.carrier, &r.rho, &r.beta),
        identity: hom_rep_identity(a, &r.rho, &r.beta),
    })
}

pub fn check_module(a: &ColorHomAlgebra, m: &ModuleStructure) -> Result<ModuleReport> {
    check_shapes(a, &m.carrier, &m.action, &m.beta)?;
    let n = a.dim();
    let module1 = Check::scan(tuples(n, 1), |i| {
        let lhs = m.beta.mul(&m.action[i[0]]);
        let rhs = combine(&m.action, &a.alpha_col(i[0])).mul(&m.beta);
        nonzero(lhs.sub(&rhs).entries().to_vec())
    });
    Ok(ModuleReport {
        degrees: degree_check(a, &m.carrier, &m.action, &m.beta),
        module1,
        module2: hom_rep_identity(a, &m.action, &m.beta),
    })
}

/// The matrix of x ↦ [v, x].
pub fn ad_matrix(a: &ColorHomAlgebra, v: &[Scalar]) -> Matrix {
    let n = a.dim();
    let cols: Vec<_> = (0..n).map(|j| a.bracket(v, &crate::linalg::unit_vec(n, j))).collect();
    Matrix::from_cols(n, &cols)
}

/// ad_s(a)(x) = [α^s(a), x] with β = α.
pub fn alpha_s_adjoint(a: &ColorHomAlgebra, s: i64) -> Result<Representation> {
    if s < -1 {
        return Err(Error::Structure(format!("adjoint power {s} < -1")));
    }
    let p = a.alpha().pow(s).map_err(|_| Error::Singular("ad_{-1} needs an invertible twist".into()))?;
    let rho = (0..a.dim()).map(|i| ad_matrix(a, &p.col(i))).collect();
    Ok(Representation { carrier: a.basis().clone(), rho, beta: a.alpha().clone() })
}

pub fn adjoint(a: &ColorHomAlgebra) -> Representation {
    alpha_s_adjoint(a, 0).expect("α^0 is always defined")
}

impl ModuleStructure {
    pub fn adjoint(a: &ColorHomAlgebra) -> Self {
        let r = adjoint(a);
        ModuleStructure { carrier: r.carrier, action: r.rho, beta: r.beta }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoadjointReport {
    /// β∘ρ([x,y]) = ε(x,y)ρ(x)∘ρ(α y) − ρ(y)∘ρ(α x): the exact criterion for the dual.
    pub condition: Check,
    /// β∘ρ([x,y]) = ρ(x)∘ρ(α y) − ε(x,y)ρ(y)∘ρ(α x), the alternative placement of ε.
    pub alternative: Check,
}

pub fn coadjoint_report(a: &ColorHomAlgebra, r: &Representation) -> Result<CoadjointReport> {
    check_shapes(a, &r.carrier, &r.rho, &r.beta)?;
    let n = a.dim();
    let run = |eps_on_first: bool| {
        Check::scan(tuples(n, 2), |ij| {
            let (i, j) = (ij[0], ij[1]);
            let e = a.eps_idx(i, j);
            let lhs = r.beta.mul(&combine(&r.rho, a.bracket_basis(i, j)));
            let xy = r.rho[i].mul(&combine(&r.rho, &a.alpha_col(j)));
            let yx = r.rho[j].mul(&combine(&r.rho, &a.alpha_col(i)));
            let rhs = if eps_on_first { xy.scale(e).sub(&yx) } else { xy.sub(&yx.scale(e)) };
            nonzero(lhs.sub(&rhs).entries().to_vec())
        })
    };
    Ok(CoadjointReport { condition: run(true), alternative: run(false) })
}

pub fn check_coadjoint_condition(a: &ColorHomAlgebra, r: &Representation) -> Result<bool> {
    Ok(coadjoint_report(a, r)?.condition.pass)
}

/// (M*, −ρᵀ, βᵀ) with dual degrees −deg.
pub fn dual_representation(a: &ColorHomAlgebra, r: &Representation) -> Result<Representation> {
    if let Some(w) = coadjoint_report(a, r)?.condition.witness {
        return Err(Error::Refused(format!("coadjoint condition fails at basis pair {:?}", w.indices)));
    }
    let g = a.eps().group();
    let names = r.carrier.names().iter().map(|n| format!("{n}*")).collect();
    let degrees = r.carrier.degrees().iter().map(|d| g.neg(d)).collect();
    let carrier = GradedBasis::new(names, degrees, a.eps())?;
    let minus = Scalar::from_int(-1);
    Ok(Representation {
        carrier,
        rho: r.rho.iter().map(|m| m.transpose().scale(&minus)).collect(),
        beta: r.beta.transpose(),
    })
}
