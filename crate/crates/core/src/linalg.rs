//! Exact sparse linear algebra over Gaussian rationals: incremental column
//! reduction giving ranks, null spaces and solutions of linear systems.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational as Gr;

/// Sparse vector as index-sorted `(index, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Gr)>;

pub fn sparse_from(entries: impl IntoIterator<Item = (usize, Gr)>) -> SparseVec {
    let mut v: Vec<(usize, Gr)> = entries.into_iter().filter(|e| !e.1.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `a + f * b`.
pub fn axpy(a: &SparseVec, f: &Gr, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, f: &Gr) -> SparseVec {
    if f.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * f)).collect()
}

fn lookup(v: &SparseVec, idx: usize) -> Gr {
    match v.binary_search_by_key(&idx, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Gr::zero(),
    }
}

/// Incremental echelon form of a growing list of columns. Each stored pivot column
/// is normalised to a leading 1 and remembers the combination of inputs it came from.
#[derive(Default)]
pub struct Reducer {
    pivot_of: HashMap<usize, usize>,
    pivots: Vec<(SparseVec, SparseVec)>,
    inputs: usize,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Reduces `v` against the pivots. Returns the residual and the combination `c`
    /// with `v = residual + sum_i c_i input_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut combo: SparseVec = Vec::new();
        let mut start = 0;
        while start < res.len() {
            let (lead, val) = (res[start].0, res[start].1.clone());
            match self.pivot_of.get(&lead) {
                Some(&p) => {
                    let (col, pc) = &self.pivots[p];
                    let f = -&val;
                    res = axpy(&res, &f, col);
                    combo = axpy(&combo, &val, pc);
                }
                None => start += 1,
            }
        }
        (res, combo)
    }

    /// Adds the next input column. Returns a null-space combination when it is dependent.
    pub fn push(&mut self, col: &SparseVec) -> Option<SparseVec> {
        let idx = self.inputs;
        self.inputs += 1;
        let (res, combo) = self.reduce(col);
        // col - sum combo_i input_i = res
        let mut own = scale(&combo, &-Gr::one());
        own = axpy(&own, &Gr::one(), &vec![(idx, Gr::one())]);
        if res.is_empty() {
            return Some(own);
        }
        // leading entry of the residual becomes the pivot
        let (lead, lv) = (res[0].0, res[0].1.clone());
        let inv = lv.recip();
        let col = scale(&res, &inv);
        let own = scale(&own, &inv);
        self.pivot_of.insert(lead, self.pivots.len());
        self.pivots.push((col, own));
        None
    }
}

/// Basis of `{c : sum_i c_i cols_i = 0}`.
pub fn nullspace(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut r = Reducer::new();
    cols.iter().filter_map(|c| r.push(c)).collect()
}

pub fn rank(cols: &[SparseVec]) -> usize {
    let mut r = Reducer::new();
    for c in cols {
        r.push(c);
    }
    r.rank()
}

/// Some `c` with `sum_i c_i cols_i = target`.
pub fn solve(cols: &[SparseVec], target: &SparseVec) -> Result<SparseVec> {
    let mut r = Reducer::new();
    for c in cols {
        r.push(c);
    }
    solve_with(&r, target)
}

pub fn solve_with(r: &Reducer, target: &SparseVec) -> Result<SparseVec> {
    let (res, combo) = r.reduce(target);
    if !res.is_empty() {
        return Err(Error::Inconsistent(format!("{} nonzero residual entries", res.len())));
    }
    Ok(combo)
}

/// `sum_i c_i cols_i`.
pub fn combine(cols: &[SparseVec], c: &SparseVec) -> SparseVec {
    let mut acc = Vec::new();
    for (i, f) in c {
        acc = axpy(&acc, f, &cols[*i]);
    }
    acc
}

/// Entry lookup helper.
pub fn entry(v: &SparseVec, idx: usize) -> Gr {
    lookup(v, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use proptest::prelude::*;

    fn g(x: i64) -> Gr {
        Gr::from_int(x)
    }

    #[test]
    fn small_system() {
        let cols = vec![
            sparse_from([(0, g(1)), (1, g(2))]),
            sparse_from([(0, g(2)), (1, g(4))]),
            sparse_from([(1, Gr::i())]),
        ];
        assert_eq!(rank(&cols), 2);
        let ns = nullspace(&cols);
        assert_eq!(ns.len(), 1);
        assert!(combine(&cols, &ns[0]).is_empty());
        let target = sparse_from([(0, g(3)), (1, g(1))]);
        let c = solve(&cols, &target).unwrap();
        assert_eq!(combine(&cols, &c), target);
        assert!(solve(&cols, &sparse_from([(2, g(1))])).is_err());
    }

    fn arb_cols() -> impl Strategy<Value = Vec<SparseVec>> {
        proptest::collection::vec(proptest::collection::vec((0usize..6, -3i64..4, -2i64..3), 0..5), 1..8).prop_map(|cols| {
            cols.into_iter()
                .map(|c| sparse_from(c.into_iter().map(|(i, a, b)| (i, Gr::new(Rational::from_int(a), Rational::from_int(b))))))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(cols in arb_cols()) {
            let ns = nullspace(&cols);
            prop_assert_eq!(ns.len() + rank(&cols), cols.len());
            for v in &ns {
                prop_assert!(combine(&cols, v).is_empty());
            }
        }

        #[test]
        fn solve_reproduces_combination(cols in arb_cols(), coef in proptest::collection::vec(-3i64..4, 8)) {
            let c: SparseVec = sparse_from(coef.iter().take(cols.len()).enumerate().map(|(i, &x)| (i, g(x))));
            let target = combine(&cols, &c);
            let sol = solve(&cols, &target).unwrap();
            prop_assert_eq!(combine(&cols, &sol), target);
        }
    }
}
