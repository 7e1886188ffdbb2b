//! Pass/fail outcomes with witnesses.

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn ok() -> Self {
        Check { pass: true, witness: None }
    }

    pub fn fail(indices: Vec<usize>, residual: Vec<Scalar>) -> Self {
        Check { pass: false, witness: Some(Witness { indices, residual, note: None }) }
    }

    pub fn fail_note(indices: Vec<usize>, residual: Vec<Scalar>, note: impl Into<String>) -> Self {
        Check { pass: false, witness: Some(Witness { indices, residual, note: Some(note.into()) }) }
    }

    /// First failing item of an exhaustive scan, or a pass.
    pub fn scan<I, F>(items: I, mut f: F) -> Check
    where
        I: IntoIterator<Item = Vec<usize>>,
        F: FnMut(&[usize]) -> Option<Vec<Scalar>>,
    {
        for idx in items {
            if let Some(res) = f(&idx) {
                return Check::fail(idx, res);
            }
        }
        Check::ok()
    }
}

/// All index tuples of a given arity over `0..n`, lexicographic.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    let count = if arity == 0 { 1 } else { total };
    (0..count).map(move |mut k| {
        let mut v = vec![0; arity];
        for slot in v.iter_mut().rev() {
            *slot = k % n.max(1);
            k /= n.max(1);
        }
        v
    })
}

/// Nonzero residual vector, or None.
pub fn nonzero(v: Vec<Scalar>) -> Option<Vec<Scalar>> {
    if v.iter().all(Scalar::is_zero) {
        None
    } else {
        Some(v)
    }
}
