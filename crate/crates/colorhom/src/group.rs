//! Finite abelian groups ℤ_{n_1} ⊕ … ⊕ ℤ_{n_r}.

use std::fmt;

use num::integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Group {
    orders: Vec<u32>,
}

/// Components satisfy `0 <= c[i] < n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl Group {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::GroupMismatch("cyclic factor of order 0".into()));
        }
        Ok(Group { orders })
    }

    pub fn trivial() -> Self {
        Group { orders: vec![1] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().map(|&n| n as u64).product()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |a, &n| a.lcm(&n))
    }

    pub fn element(&self, comps: &[i64]) -> Result<GroupElement> {
        if comps.len() != self.orders.len() {
            return Err(Error::GroupMismatch(format!(
                "degree {:?} has {} components, group has {}",
                comps,
                comps.len(),
                self.orders.len()
            )));
        }
        Ok(GroupElement(
            comps.iter().zip(&self.orders).map(|(&c, &n)| c.rem_euclid(n as i64) as u32).collect(),
        ))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter().zip(&b.0).zip(&self.orders).map(|((&x, &y), &n)| (x + y) % n).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (i, &n) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for g in &out {
                for c in 0..n {
                    let mut h = g.clone();
                    h.0[i] = c;
                    next.push(h);
                }
            }
            out = next;
        }
        out
    }
}

impl GroupElement {
    pub fn components(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
