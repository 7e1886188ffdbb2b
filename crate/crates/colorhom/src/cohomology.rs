//! Cochain spaces C^n_{α,β}(𝒜, M) of fixed degree, the coboundary δ_r^n and H^n_r.
//!
//! A cochain is stored by its values on canonical tuples (non-decreasing basis
//! indices, repeats only at odd degrees); all other tuples follow by ε-skewness.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::ColorHomAlgebra;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{axpy, is_zero_vec, sub_vec, zero_vec, Matrix, Vector};
use crate::report::tuples;
use crate::representation::{combine, Representation};
use crate::scalar::Scalar;

/// Which partial degree sum multiplies the bracket-insertion terms of δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum EpsConvention {
    /// ε(x_{s+1}+…+x_{t−1}, x_t).
    #[default]
    Between,
    /// ε(x_0+…+x_{t−1}, x_t).
    Prefix,
}

#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub n: usize,
    pub gamma: GroupElement,
    pub tuples: Vec<Vec<usize>>,
    /// Free coordinates as (tuple position, output basis index).
    pub slots: Vec<(usize, usize)>,
    /// Columns span the compatible cochains, in free coordinates.
    pub compat_basis: Matrix,
    dim_m: usize,
    tuple_index: HashMap<Vec<usize>, usize>,
    tuple_slots: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug)]
pub struct Cochain<'a> {
    pub space: &'a CochainSpace,
    pub coords: Vector,
}

impl<'a> Cochain<'a> {
    pub fn free(&self) -> Vector {
        self.space.to_free(&self.coords)
    }
}

fn canonical_tuples(a: &ColorHomAlgebra, n: usize) -> Vec<Vec<usize>> {
    let d = a.dim();
    tuples(d, n)
        .filter(|t| {
            t.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && a.eps().is_odd(a.degree(w[0]))))
        })
        .collect()
}

type Sparse = Vec<(usize, Scalar)>;

fn sparse(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl CochainSpace {
    pub fn free_dim(&self) -> usize {
        self.slots.len()
    }

    pub fn dim(&self) -> usize {
        self.compat_basis.cols()
    }

    pub fn to_free(&self, coords: &[Scalar]) -> Vector {
        self.compat_basis.mul_vec(coords)
    }

    /// Compatible coordinates of a free vector, if it lies in the compatible subspace.
    pub fn from_free(&self, free: &[Scalar]) -> Option<Vector> {
        if self.dim() == 0 {
            return is_zero_vec(free).then(Vec::new);
        }
        self.compat_basis.solve(free)
    }

    fn basis_value(&self, a: &ColorHomAlgebra, f: &[Scalar], idx: &[usize], coeff: &Scalar, out: &mut [Scalar]) {
        let (sorted, sign) = a.eps().sort_with_sign(idx, a.basis().degrees());
        let Some(&t) = self.tuple_index.get(&sorted) else {
            return;
        };
        let c = coeff * &sign;
        for &(m, slot) in &self.tuple_slots[t] {
            let v = &f[slot];
            if !v.is_zero() {
                out[m] += &(&c * v);
            }
        }
    }

    /// f(e_{idx_0}, …) for a cochain given in free coordinates.
    pub fn eval_basis(&self, a: &ColorHomAlgebra, f: &[Scalar], idx: &[usize]) -> Vector {
        let mut out = zero_vec(self.dim_m);
        self.basis_value(a, f, idx, &Scalar::one(), &mut out);
        out
    }

    /// Multilinear evaluation on arbitrary argument vectors.
    pub fn eval(&self, a: &ColorHomAlgebra, f: &[Scalar], args: &[Vector]) -> Vector {
        let sp: Vec<Sparse> = args.iter().map(|v| sparse(v)).collect();
        self.eval_sparse(a, f, &sp)
    }

    fn eval_sparse(&self, a: &ColorHomAlgebra, f: &[Scalar], args: &[Sparse]) -> Vector {
        let mut out = zero_vec(self.dim_m);
        if args.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pos = vec![0usize; args.len()];
        let mut idx = vec![0usize; args.len()];
        loop {
            let mut coeff = Scalar::one();
            for (k, p) in pos.iter().enumerate() {
                let (i, c) = &args[k][*p];
                idx[k] = *i;
                coeff = &coeff * c;
            }
            self.basis_value(a, f, &idx, &coeff, &mut out);
            let mut k = args.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                pos[k] += 1;
                if pos[k] < args[k].len() {
                    break;
                }
                pos[k] = 0;
            }
        }
    }
}

/// Free ε-skew degree-γ coordinates, cut down to {f : f∘α^⊗n = β∘f}. For n = 0 this is M.
pub fn cochain_basis(a: &ColorHomAlgebra, m: &Representation, n: usize, gamma: &GroupElement) -> Result<CochainSpace> {
    if !a.eps().group().contains(gamma) {
        return Err(Error::GroupMismatch(format!("cochain degree {gamma} is not in the grading group")));
    }
    if m.rho.len() != a.dim() {
        return Err(Error::Dimension("representation does not match the algebra".into()));
    }
    let g = a.eps().group();
    let dim_m = m.carrier.dim();
    let tuples_ = if n == 0 { vec![Vec::new()] } else { canonical_tuples(a, n) };
    let mut slots = Vec::new();
    let mut tuple_slots = vec![Vec::new(); tuples_.len()];
    for (t, tup) in tuples_.iter().enumerate() {
        let target = g.add(&g.sum(tup.iter().map(|&i| a.degree(i))), gamma);
        for k in 0..dim_m {
            if n == 0 || m.carrier.degree(k) == &target {
                tuple_slots[t].push((k, slots.len()));
                slots.push((t, k));
            }
        }
    }
    let tuple_index = tuples_.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut space = CochainSpace {
        n,
        gamma: gamma.clone(),
        tuples: tuples_,
        slots,
        compat_basis: Matrix::identity(0),
        dim_m,
        tuple_index,
        tuple_slots,
    };
    let free = space.free_dim();
    if n == 0 {
        space.compat_basis = Matrix::identity(free);
        return Ok(space);
    }
    let alpha_cols: Vec<Sparse> = (0..a.dim()).map(|i| sparse(&a.alpha_col(i))).collect();
    let all: Vec<Vec<usize>> = tuples(a.dim(), n).collect();
    let mut cols = Vec::with_capacity(free);
    for c in 0..free {
        let mut f = zero_vec(free);
        f[c] = Scalar::one();
        let mut col = Vec::with_capacity(all.len() * dim_m);
        for idx in &all {
            let args: Vec<Sparse> = idx.iter().map(|&i| alpha_cols[i].clone()).collect();
            let lhs = space.eval_sparse(a, &f, &args);
            let rhs = m.beta.mul_vec(&space.eval_basis(a, &f, idx));
            col.extend(sub_vec(&lhs, &rhs));
        }
        cols.push(col);
    }
    let constraint = Matrix::from_cols(all.len() * dim_m, &cols);
    let kernel = constraint.kernel();
    space.compat_basis = Matrix::from_cols(free, &kernel);
    Ok(space)
}

/// δ_r^n for a fixed algebra, representation and ε convention.
pub struct Coboundary<'a> {
    pub a: &'a ColorHomAlgebra,
    pub m: &'a Representation,
    pub r: i64,
    pub conv: EpsConvention,
}

impl<'a> Coboundary<'a> {
    pub fn new(a: &'a ColorHomAlgebra, m: &'a Representation, r: i64) -> Self {
        Coboundary { a, m, r, conv: EpsConvention::Between }
    }

    fn action_maps(&self, n: usize) -> Result<Vec<Matrix>> {
        let p = self.a.alpha().pow(self.r + n as i64 - 1).map_err(|_| {
            Error::Singular(format!("α^{} needs an invertible twist", self.r + n as i64 - 1))
        })?;
        Ok((0..self.a.dim()).map(|i| combine(&self.m.rho, &p.col(i))).collect())
    }

    /// δf on each canonical tuple of `dst`, in free coordinates of `dst`.
    pub fn apply_free(&self, src: &CochainSpace, f: &[Scalar], dst: &CochainSpace) -> Result<Vector> {
        let n = src.n;
        debug_assert_eq!(dst.n, n + 1);
        let a = self.a;
        let eps = a.eps();
        let g = eps.group();
        let acts = self.action_maps(n)?;
        let alpha_cols: Vec<Sparse> = (0..a.dim()).map(|i| sparse(&a.alpha_col(i))).collect();
        let mut out = zero_vec(dst.free_dim());
        for (t_idx, x) in dst.tuples.iter().enumerate() {
            let mut val = zero_vec(src.dim_m);
            for t in 1..=n {
                for s in 0..t {
                    let from = match self.conv {
                        EpsConvention::Between => s + 1,
                        EpsConvention::Prefix => 0,
                    };
                    let d = g.sum(x[from..t].iter().map(|&i| a.degree(i)));
                    let mut c = eps.value(&d, a.degree(x[t]));
                    if t % 2 == 1 {
                        c = -c;
                    }
                    let args: Vec<Sparse> = (0..=n)
                        .filter(|&k| k != t)
                        .map(|k| if k == s { sparse(a.bracket_basis(x[s], x[t])) } else { alpha_cols[x[k]].clone() })
                        .collect();
                    axpy(&mut val, &c, &src.eval_sparse(a, f, &args));
                }
            }
            for s in 0..=n {
                let d = g.add(&src.gamma, &g.sum(x[..s].iter().map(|&i| a.degree(i))));
                let mut c = eps.value(&d, a.degree(x[s]));
                if s % 2 == 1 {
                    c = -c;
                }
                let rest: Vec<usize> = x.iter().enumerate().filter(|&(k, _)| k != s).map(|(_, &i)| i).collect();
                let fv = src.eval_basis(a, f, &rest);
                axpy(&mut val, &c, &acts[x[s]].mul_vec(&fv));
            }
            let mut placed = vec![false; src.dim_m];
            for &(k, slot) in &dst.tuple_slots[t_idx] {
                out[slot] = val[k].clone();
                placed[k] = true;
            }
            if let Some(k) = (0..src.dim_m).find(|&k| !placed[k] && !val[k].is_zero()) {
                return Err(Error::Structure(format!(
                    "coboundary is not homogeneous of the cochain degree (tuple {x:?}, output {k})"
                )));
            }
        }
        Ok(out)
    }

    /// Matrix of δ between free coordinate spaces.
    pub fn free_matrix(&self, src: &CochainSpace, dst: &CochainSpace) -> Result<Matrix> {
        let mut cols = Vec::with_capacity(src.free_dim());
        for c in 0..src.free_dim() {
            let mut f = zero_vec(src.free_dim());
            f[c] = Scalar::one();
            cols.push(self.apply_free(src, &f, dst)?);
        }
        Ok(Matrix::from_cols(dst.free_dim(), &cols))
    }

    /// Matrix of δ between compatible coordinates; fails if δ leaves the compatible subspace.
    pub fn matrix(&self, src: &CochainSpace, dst: &CochainSpace) -> Result<Matrix> {
        self.matrix_on(src, &src.compat_basis, dst)
    }

    /// δ applied to the columns of `domain` (free coordinates of `src`), in compatible coordinates of `dst`.
    pub fn matrix_on(&self, src: &CochainSpace, domain: &Matrix, dst: &CochainSpace) -> Result<Matrix> {
        let mut cols = Vec::with_capacity(domain.cols());
        for f in domain.columns() {
            let img = self.apply_free(src, &f, dst)?;
            let c = dst
                .from_free(&img)
                .ok_or_else(|| Error::Structure("coboundary leaves the compatible cochain space".into()))?;
            cols.push(c);
        }
        Ok(Matrix::from_cols(dst.dim(), &cols))
    }

    pub fn apply<'s>(&self, f: &Cochain<'_>, dst: &'s CochainSpace) -> Result<Cochain<'s>> {
        let img = self.apply_free(f.space, &f.free(), dst)?;
        let coords = dst
            .from_free(&img)
            .ok_or_else(|| Error::Structure("coboundary leaves the compatible cochain space".into()))?;
        Ok(Cochain { space: dst, coords })
    }
}

/// δ_r^n(f) with the default ε convention.
pub fn coboundary<'s>(
    a: &ColorHomAlgebra,
    m: &Representation,
    f: &Cochain<'_>,
    r: i64,
    dst: &'s CochainSpace,
) -> Result<Cochain<'s>> {
    Coboundary::new(a, m, r).apply(f, dst)
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub n: usize,
    pub r: i64,
    pub space: CochainSpace,
    pub z_basis: Vec<Vector>,
    pub b_basis: Vec<Vector>,
    pub representatives: Vec<Vector>,
    pub b_in_z: bool,
}

impl CohomologyGroup {
    pub fn dim_z(&self) -> usize {
        self.z_basis.len()
    }

    pub fn dim_b(&self) -> usize {
        self.b_basis.len()
    }

    pub fn dim_h(&self) -> usize {
        self.dim_z() - self.dim_b()
    }
}

/// 0-cochains of degree γ fixed by β; their coboundaries are compatible.
fn zero_cochain_domain(m: &Representation, gamma: &GroupElement) -> Matrix {
    let d = m.carrier.dim();
    let homog: Vec<usize> = (0..d).filter(|&k| m.carrier.degree(k) == gamma).collect();
    let mut cons = Matrix::zeros(d, homog.len());
    for (c, &k) in homog.iter().enumerate() {
        let mut v = m.beta.col(k);
        v[k] -= &Scalar::one();
        for (i, x) in v.into_iter().enumerate() {
            cons.set(i, c, x);
        }
    }
    let ker = cons.kernel();
    let cols: Vec<Vector> = ker
        .iter()
        .map(|w| {
            let mut v = zero_vec(d);
            for (c, &k) in homog.iter().enumerate() {
                v[k] = w[c].clone();
            }
            v
        })
        .collect();
    Matrix::from_cols(d, &cols)
}

pub fn cohomology_group_with(cb: &Coboundary<'_>, n: usize, gamma: &GroupElement) -> Result<CohomologyGroup> {
    let space = cochain_basis(cb.a, cb.m, n, gamma)?;
    let next = cochain_basis(cb.a, cb.m, n + 1, gamma)?;
    let dn = cb.matrix(&space, &next)?;
    let z_basis = if space.dim() == 0 { Vec::new() } else { dn.kernel() };
    let b_img = if n == 0 {
        Matrix::zeros(0, 0)
    } else {
        let prev = cochain_basis(cb.a, cb.m, n - 1, gamma)?;
        let domain = if n == 1 { zero_cochain_domain(cb.m, gamma) } else { prev.compat_basis.clone() };
        cb.matrix_on(&prev, &domain, &space)?
    };
    let b_basis = if b_img.cols() == 0 { Vec::new() } else { b_img.column_space() };
    let b_in_z = b_basis.iter().all(|b| is_zero_vec(&dn.mul_vec(b)));
    let mut representatives = Vec::new();
    if !z_basis.is_empty() {
        let mut cols = b_basis.clone();
        cols.extend(z_basis.iter().cloned());
        let (_, piv) = Matrix::from_cols(space.dim(), &cols).rref();
        for p in piv {
            if p >= b_basis.len() {
                representatives.push(cols[p].clone());
            }
        }
    }
    Ok(CohomologyGroup { n, r: cb.r, space, z_basis, b_basis, representatives, b_in_z })
}

pub fn cohomology_group(
    a: &ColorHomAlgebra,
    m: &Representation,
    n: usize,
    r: i64,
    gamma: &GroupElement,
) -> Result<CohomologyGroup> {
    cohomology_group_with(&Coboundary::new(a, m, r), n, gamma)
}
