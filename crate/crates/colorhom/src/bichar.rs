//! Skew-symmetric bi-characters ε(a,b) = ζ_m^{aᵀEb}.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct BiCharacter {
    group: Group,
    exponent_matrix: Vec<Vec<i64>>,
    root_order: u32,
    #[serde(skip)]
    zetas: Vec<Scalar>,
}

impl PartialEq for BiCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.root_order == other.root_order
            && self.exponent_matrix == other.exponent_matrix
    }
}

impl BiCharacter {
    /// Validates bimultiplicative consistency with the cyclic orders and skewness on all of Γ×Γ.
    pub fn new(group: Group, exponent_matrix: Vec<Vec<i64>>, root_order: u32) -> Result<Self> {
        let r = group.rank();
        let m = root_order as i64;
        if root_order == 0 {
            return Err(Error::BiCharacter("root order must be positive".into()));
        }
        if exponent_matrix.len() != r || exponent_matrix.iter().any(|row| row.len() != r) {
            return Err(Error::BiCharacter(format!("exponent matrix must be {r}x{r}")));
        }
        let e: Vec<Vec<i64>> =
            exponent_matrix.iter().map(|row| row.iter().map(|x| x.rem_euclid(m)).collect()).collect();
        let orders = group.orders();
        for i in 0..r {
            for j in 0..r {
                if (orders[j] as i64 * e[i][j]) % m != 0 || (orders[i] as i64 * e[i][j]) % m != 0 {
                    return Err(Error::BiCharacter(format!(
                        "entry E[{i}][{j}] = {} is not compatible with cyclic orders {} and {} at root order {m}",
                        e[i][j], orders[i], orders[j]
                    )));
                }
            }
        }
        let zetas = (0..m).map(|k| Scalar::zeta_pow(k, root_order)).collect();
        let eps = BiCharacter { group, exponent_matrix: e, root_order, zetas };
        let elems = eps.group.elements();
        for a in &elems {
            for b in &elems {
                if (eps.exponent(a, b) + eps.exponent(b, a)) % root_order != 0 {
                    return Err(Error::BiCharacter(format!("eps({a},{b}) eps({b},{a}) != 1")));
                }
            }
        }
        Ok(eps)
    }

    pub fn trivial(group: Group) -> Self {
        let r = group.rank();
        BiCharacter::new(group, vec![vec![0; r]; r], 1).expect("trivial form is valid")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn exponent_matrix(&self) -> &[Vec<i64>] {
        &self.exponent_matrix
    }

    /// aᵀEb mod m.
    pub fn exponent(&self, a: &GroupElement, b: &GroupElement) -> u32 {
        let m = self.root_order as i64;
        let (a, b) = (a.components(), b.components());
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc += ai as i64 * self.exponent_matrix[i][j] * bj as i64;
            }
        }
        acc.rem_euclid(m) as u32
    }

    /// ε(a,b) without membership checks.
    pub fn value(&self, a: &GroupElement, b: &GroupElement) -> Scalar {
        self.zetas[self.exponent(a, b) as usize].clone()
    }

    pub fn value_ref(&self, a: &GroupElement, b: &GroupElement) -> &Scalar {
        &self.zetas[self.exponent(a, b) as usize]
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
        for g in [a, b] {
            if !self.group.contains(g) {
                return Err(Error::GroupMismatch(format!("{g} is not an element of the bi-character's group")));
            }
        }
        Ok(self.value(a, b))
    }

    /// ε(a,a) = −1.
    pub fn is_odd(&self, a: &GroupElement) -> bool {
        2 * self.exponent(a, a) == self.root_order
    }

    /// Sign s with f(x_{π(0)}, …, x_{π(n−1)}) = s · f(x_0, …, x_{n−1}) for an ε-skew f.
    pub fn reorder_sign(&self, degrees: &[GroupElement], perm: &[usize]) -> Result<Scalar> {
        let n = degrees.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Dimension(format!("{perm:?} is not a permutation of {n} positions")));
        }
        let mut labels = perm.to_vec();
        let mut sign = Scalar::one();
        for i in 1..n {
            let mut j = i;
            while j > 0 && labels[j - 1] > labels[j] {
                let a = &degrees[labels[j - 1]];
                let b = &degrees[labels[j]];
                sign = -(&sign * self.value_ref(a, b));
                labels.swap(j - 1, j);
                j -= 1;
            }
        }
        Ok(sign)
    }

    /// Stable sort of basis indices with the accumulated ε-skew sign: f(idx) = sign · f(sorted).
    pub fn sort_with_sign(&self, idx: &[usize], degrees: &[GroupElement]) -> (Vec<usize>, Scalar) {
        let mut v = idx.to_vec();
        let mut sign = Scalar::one();
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                sign = -(&sign * self.value_ref(&degrees[v[j - 1]], &degrees[v[j]]));
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        (v, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2_cubed_dot() -> BiCharacter {
        let g = Group::new(vec![2, 2, 2]).unwrap();
        BiCharacter::new(g, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 2).unwrap()
    }

    fn z2_sq_symplectic() -> BiCharacter {
        let g = Group::new(vec![2, 2]).unwrap();
        BiCharacter::new(g, vec![vec![0, 1], vec![1, 0]], 2).unwrap()
    }

    #[test]
    fn dot_form_matrix_entry() {
        let eps = z2_cubed_dot();
        let g = eps.group().clone();
        let a = g.element(&[1, 1, 0]).unwrap();
        let b = g.element(&[1, 0, 1]).unwrap();
        assert_eq!(eps.eval(&a, &b).unwrap(), Scalar::from_int(-1));
        assert_eq!(eps.eval(&a, &g.zero()).unwrap(), Scalar::one());
    }

    #[test]
    fn symplectic_diagonal_is_even() {
        let eps = z2_sq_symplectic();
        let a = eps.group().element(&[1, 0]).unwrap();
        assert_eq!(eps.eval(&a, &a).unwrap(), Scalar::one());
        let c = eps.group().element(&[1, 1]).unwrap();
        assert!(!eps.is_odd(&c));
    }

    #[test]
    fn rejects_non_skew_and_inconsistent() {
        let g = Group::new(vec![2, 2]).unwrap();
        assert!(BiCharacter::new(g.clone(), vec![vec![0, 1], vec![0, 0]], 2).is_err());
        let g3 = Group::new(vec![3]).unwrap();
        assert!(BiCharacter::new(g3, vec![vec![1]], 2).is_err());
        let other = Group::new(vec![3]).unwrap();
        let eps = z2_sq_symplectic();
        assert!(eps.eval(&other.zero(), &eps.group().zero()).is_err());
        let _ = g;
    }

    #[test]
    fn reorder_examples() {
        let eps = z2_cubed_dot();
        let g = eps.group().clone();
        let d = vec![
            g.element(&[1, 1, 0]).unwrap(),
            g.element(&[1, 0, 1]).unwrap(),
            g.element(&[0, 1, 1]).unwrap(),
        ];
        assert!(eps.reorder_sign(&d, &[0, 1, 2]).unwrap().is_one());
        assert!(eps.reorder_sign(&d[..2], &[1, 0]).unwrap().is_one());
        assert!(eps.reorder_sign(&d, &[1, 2, 0]).unwrap().is_one());
        assert!(eps.reorder_sign(&d, &[0, 0, 1]).is_err());
    }

    fn arb_setup() -> impl Strategy<Value = (Vec<GroupElement>, Vec<usize>, Vec<usize>)> {
        (1usize..6).prop_flat_map(|n| {
            let degs = prop::collection::vec(prop::collection::vec(0i64..3, 2), n);
            let p1 = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            let p2 = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (degs, p1, p2).prop_map(|(d, a, b)| {
                let g = Group::new(vec![3, 3]).unwrap();
                (d.iter().map(|c| g.element(c).unwrap()).collect(), a, b)
            })
        })
    }

    fn z3_form() -> BiCharacter {
        let g = Group::new(vec![3, 3]).unwrap();
        BiCharacter::new(g, vec![vec![0, 1], vec![2, 0]], 3).unwrap()
    }

    proptest! {
        // reorder(x, τ∘σ) = reorder(x∘τ, σ) · reorder(x, τ)
        #[test]
        fn reorder_sign_cocycle((degs, tau, sigma) in arb_setup()) {
            let eps = z3_form();
            let composed: Vec<usize> = sigma.iter().map(|&k| tau[k]).collect();
            let permuted: Vec<GroupElement> = tau.iter().map(|&k| degs[k].clone()).collect();
            let lhs = eps.reorder_sign(&degs, &composed).unwrap();
            let rhs = eps.reorder_sign(&permuted, &sigma).unwrap() * eps.reorder_sign(&degs, &tau).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn skew_and_unit_laws(a in prop::collection::vec(0i64..3, 2), b in prop::collection::vec(0i64..3, 2)) {
            let eps = z3_form();
            let g = eps.group().clone();
            let (a, b) = (g.element(&a).unwrap(), g.element(&b).unwrap());
            prop_assert!((eps.value(&a, &b) * eps.value(&b, &a)).is_one());
            prop_assert!(eps.value(&a, &g.zero()).is_one());
            prop_assert!(eps.value(&a, &a).pow(2).is_one());
            let c = g.add(&a, &b);
            prop_assert_eq!(eps.value(&c, &a), eps.value(&a, &a) * eps.value(&b, &a));
        }
    }
}
