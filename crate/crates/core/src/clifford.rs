//! The complexified Clifford algebra with `e_j e_k + e_k e_j = -2 delta_jk`,
//! its Witt basis, the element `beta` and the spinor spaces `S^(j)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, GaussianRational as Gr, Rational};
use crate::textfmt::{parse_sum, push_term, render_blade};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 16;

/// Basis blade `e_A` encoded as a bitset, bit `i` standing for `e_{i+1}`.
pub type Blade = u32;

pub fn grade(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Product of two basis blades: returns `(negative, blade)`.
#[inline]
pub fn blade_product(a: Blade, b: Blade) -> (bool, Blade) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (a >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps += (a & b).count_ones();
    (swaps % 2 == 1, a ^ b)
}

/// Sign of the Clifford conjugate on a blade of grade `k`: `(-1)^{k(k+1)/2}`.
#[inline]
pub fn conj_negates(b: Blade) -> bool {
    let k = grade(b);
    (k * (k + 1) / 2) % 2 == 1
}

/// Display order: by grade, then lexicographically by index list.
pub fn blade_cmp(a: Blade, b: Blade) -> Ordering {
    grade(a).cmp(&grade(b)).then_with(|| a.reverse_bits().cmp(&b.reverse_bits()).reverse())
}

/// Finitely supported combination of basis blades with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    m: usize,
    // sorted by blade, no zero coefficients
    terms: Vec<(Blade, Gr)>,
}

impl Multivector {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_DIM, "Clifford dimension {m} exceeds {MAX_DIM}");
        Multivector { m, terms: Vec::new() }
    }

    pub fn scalar(m: usize, c: Gr) -> Self {
        Self::blade(m, 0, c)
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Gr::one())
    }

    pub fn blade(m: usize, b: Blade, c: Gr) -> Self {
        let mut mv = Self::zero(m);
        assert!(m == 32 || b >> m == 0, "blade outside dimension");
        if !c.is_zero() {
            mv.terms.push((b, c));
        }
        mv
    }

    /// The generator `e_j`, `1 <= j <= m`.
    pub fn basis(m: usize, j: usize) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::IndexOutOfRange { index: j, max: m });
        }
        Ok(Self::blade(m, 1 << (j - 1), Gr::one()))
    }

    /// Builds from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Blade, Gr)>) -> Self {
        let mut v: Vec<(Blade, Gr)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(Blade, Gr)> = Vec::with_capacity(v.len());
        for (b, c) in v {
            match out.last_mut() {
                Some((lb, lc)) if *lb == b => *lc += &c,
                _ => out.push((b, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Multivector { m, terms: out }
    }

    /// A grade-1 element `sum_j e_j v_j`.
    pub fn vector(m: usize, comps: &[Gr]) -> Self {
        Self::from_terms(m, comps.iter().enumerate().map(|(j, c)| (1u32 << j, c.clone())))
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[(Blade, Gr)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> Gr {
        match self.terms.binary_search_by_key(&b, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Gr::zero(),
        }
    }

    pub fn scalar_part(&self) -> Gr {
        self.coeff(0)
    }

    /// True when only the scalar blade carries a coefficient.
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Multivector { m: self.m, terms: self.terms.iter().filter(|t| grade(t.0) == k).cloned().collect() }
    }

    pub fn grades(&self) -> BTreeSet<usize> {
        self.terms.iter().map(|t| grade(t.0)).collect()
    }

    /// Re-embeds into a possibly larger algebra.
    pub fn with_dim(&self, m: usize) -> Result<Self> {
        if self.terms.iter().any(|t| m < 32 && t.0 >> m != 0) {
            return Err(Error::DimensionMismatch(self.m, m));
        }
        Ok(Multivector { m, terms: self.terms.clone() })
    }

    pub fn scale(&self, c: &Gr) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Multivector { m: self.m, terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Multivector { m: self.m, terms: self.terms.iter().map(|(b, v)| (*b, v.scale(c))).collect() }
    }

    /// Clifford conjugation: `e_j -> -e_j`, order reversed, coefficients conjugated.
    pub fn conj(&self) -> Self {
        Multivector {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(b, v)| (*b, if conj_negates(*b) { -v.conj() } else { v.conj() }))
                .collect(),
        }
    }

    /// Clifford conjugation without complex conjugation of the coefficients.
    pub fn bar(&self) -> Self {
        Multivector {
            m: self.m,
            terms: self.terms.iter().map(|(b, v)| (*b, if conj_negates(*b) { -v } else { v.clone() })).collect(),
        }
    }

    /// Complex conjugation of the coefficients only.
    pub fn complex_conj(&self) -> Self {
        Multivector { m: self.m, terms: self.terms.iter().map(|(b, v)| (*b, v.conj())).collect() }
    }

    /// Geometric product; errors on mismatched dimensions.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(self.m, other.m));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero(self.m);
        }
        if other.terms.len() == 1 && other.terms[0].0 == 0 {
            return self.scale(&other.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            return other.scale(&self.terms[0].1);
        }
        let mut acc: Vec<(Blade, Gr)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (neg, c) = blade_product(*a, *b);
                let p = x * y;
                acc.push((c, if neg { -p } else { p }));
            }
        }
        Self::from_terms(self.m, acc)
    }

    /// Outer product: blades sharing a generator contribute nothing.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut acc = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let (neg, c) = blade_product(*a, *b);
                let p = x * y;
                acc.push((c, if neg { -p } else { p }));
            }
        }
        Self::from_terms(self.m.max(other.m), acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates a rational-coefficient polynomial (ascending coefficients) at this element.
    pub fn eval_poly(&self, coeffs: &[Rational]) -> Self {
        let mut acc = Self::zero(self.m);
        for c in coeffs.iter().rev() {
            acc = &(&acc * self) + &Self::scalar(self.m, Gr::real(c.clone()));
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut order: Vec<&(Blade, Gr)> = self.terms.iter().collect();
        order.sort_by(|a, b| blade_cmp(a.0, b.0));
        let mut out = String::new();
        for (b, c) in order {
            let factors: Vec<String> = render_blade(*b).into_iter().collect();
            push_term(&mut out, c, &factors);
        }
        out
    }

    /// Parses the text format in an algebra of dimension `m`.
    pub fn parse(src: &str, m: usize) -> Result<Self> {
        let mut acc = Vec::new();
        for t in parse_sum(src)? {
            if !t.vars.is_empty() {
                return Err(Error::parse(1, 1, "variables are not allowed in a multivector"));
            }
            let mut blade = 0u32;
            let mut neg = false;
            for g in t.generators {
                if g > m {
                    return Err(Error::IndexOutOfRange { index: g, max: m });
                }
                let (n, b) = blade_product(blade, 1 << (g - 1));
                neg ^= n;
                blade = b;
            }
            acc.push((blade, if neg { -t.coef } else { t.coef }));
        }
        Ok(Self::from_terms(m, acc))
    }
}

/// Symmetric bilinear dot product of two grade-1 elements, `sum_j x_j y_j`.
pub fn vector_dot(x: &Multivector, y: &Multivector) -> Gr {
    let mut s = Gr::zero();
    for (b, c) in x.terms() {
        if grade(*b) == 1 {
            s += &(c * &y.coeff(*b));
        }
    }
    s
}

/// Geometric product; errors on mismatched dimensions.
pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.geometric_product(b)
}

pub fn clifford_conjugate(a: &Multivector) -> Multivector {
    a.conj()
}

pub fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    a.wedge(b)
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.m, self.render())
    }
}

impl FromStr for Multivector {
    type Err = Error;

    /// Parses in the smallest algebra containing every generator mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let m = parse_sum(s)?.iter().flat_map(|t| t.generators.iter().copied()).max().unwrap_or(0);
        Self::parse(s, m)
    }
}

fn merge(a: &[(Blade, Gr)], b: &[(Blade, Gr)], negate_b: bool) -> Vec<(Blade, Gr)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, if negate_b { -&b[j].1 } else { b[j].1.clone() }));
            j += 1;
        } else {
            let v = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        Multivector { m: self.m.max(rhs.m), terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        Multivector { m: self.m.max(rhs.m), terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    /// Geometric product; operands of different dimension are embedded in the larger algebra.
    fn mul(self, rhs: &Multivector) -> Multivector {
        let mut r = self.mul_unchecked(rhs);
        r.m = self.m.max(rhs.m);
        r
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector { m: self.m, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $m(self, rhs: Multivector) -> Multivector {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Multivector> for Multivector {
            type Output = Multivector;
            fn $m(self, rhs: &'a Multivector) -> Multivector {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Multivector> for &'a Multivector {
            type Output = Multivector;
            fn $m(self, rhs: Multivector) -> Multivector {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        if rhs.terms.is_empty() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, false);
        self.m = self.m.max(rhs.m);
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        if rhs.terms.is_empty() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, true);
        self.m = self.m.max(rhs.m);
    }
}

fn check_witt(n: usize, j: usize) -> Result<()> {
    if 2 * n > MAX_DIM {
        return Err(Error::range(format!("n = {n} exceeds the supported range")));
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    Ok(())
}

/// Witt element `f_j = (e_j - i e_{n+j})/2` in dimension `2n`.
pub fn witt(n: usize, j: usize) -> Result<Multivector> {
    check_witt(n, j)?;
    let h = Rational::new(1, 2);
    Ok(Multivector::from_terms(
        2 * n,
        [(1u32 << (j - 1), Gr::real(h.clone())), (1u32 << (n + j - 1), Gr::new(Rational::zero(), -h))],
    ))
}

/// Witt element `f_j^dagger = -(e_j + i e_{n+j})/2` in dimension `2n`.
pub fn witt_dagger(n: usize, j: usize) -> Result<Multivector> {
    check_witt(n, j)?;
    let h = Rational::new(-1, 2);
    Ok(Multivector::from_terms(
        2 * n,
        [(1u32 << (j - 1), Gr::real(h.clone())), (1u32 << (n + j - 1), Gr::new(Rational::zero(), h))],
    ))
}

/// `beta = sum_j f_j^dagger f_j`.
pub fn beta(n: usize) -> Multivector {
    let mut acc = Multivector::zero(2 * n);
    for j in 1..=n {
        acc += &(&witt_dagger(n, j).expect("valid index") * &witt(n, j).expect("valid index"));
    }
    acc
}

/// Primitive idempotent `I = f_1 f_1^dagger ... f_n f_n^dagger`.
pub fn spinor_identity(n: usize) -> Multivector {
    let mut acc = Multivector::one(2 * n);
    for j in 1..=n {
        let fj = witt(n, j).expect("valid index");
        let fdj = witt_dagger(n, j).expect("valid index");
        acc = &(&acc * &fj) * &fdj;
    }
    acc
}

/// Ordered basis `{f_A^dagger I : |A| = j}` of the spinor space `S^(j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorBasis {
    pub n: usize,
    pub j: usize,
    pub subsets: Vec<Vec<usize>>,
    pub vectors: Vec<Multivector>,
}

impl SpinorBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn subsets(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for k in start..=n {
            cur.push(k);
            rec(k + 1, n, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, j, &mut Vec::new(), &mut out);
    out
}

pub fn spinor_basis(n: usize, j: usize) -> Result<SpinorBasis> {
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    if n == 0 || 2 * n > MAX_DIM {
        return Err(Error::range(format!("n = {n} outside 1..={}", MAX_DIM / 2)));
    }
    let id = spinor_identity(n);
    let subs = subsets(n, j);
    let vectors = subs
        .iter()
        .map(|a| {
            let mut v = Multivector::one(2 * n);
            for &k in a {
                v = &v * &witt_dagger(n, k).expect("valid index");
            }
            &v * &id
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(Rational::from(vectors.len()), binomial(n, j));
    Ok(SpinorBasis { n, j, subsets: subs, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(m: usize, j: usize) -> Multivector {
        Multivector::basis(m, j).unwrap()
    }

    // Naive oracle: multiply generator lists and bubble-sort, tracking swaps.
    fn naive_product(a: Blade, b: Blade) -> (bool, Blade) {
        let mut list: Vec<u32> = (0..32).filter(|i| a & (1 << i) != 0).collect();
        list.extend((0..32).filter(|i| b & (1 << i) != 0));
        let mut neg = false;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < list.len() {
                if list[i] > list[i + 1] {
                    list.swap(i, i + 1);
                    neg = !neg;
                    changed = true;
                } else if list[i] == list[i + 1] {
                    list.drain(i..i + 2);
                    neg = !neg;
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        (neg, list.iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[test]
    fn blade_product_matches_naive_oracle() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                assert_eq!(blade_product(a, b), naive_product(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn generator_relations() {
        for m in 1..=6 {
            for j in 1..=m {
                for k in 1..=m {
                    let anti = &(&e(m, j) * &e(m, k)) + &(&e(m, k) * &e(m, j));
                    let expected = if j == k { Multivector::scalar(m, Gr::from_int(-2)) } else { Multivector::zero(m) };
                    assert_eq!(anti, expected);
                }
            }
        }
        let e12 = &e(2, 1) * &e(2, 2);
        assert_eq!(e12.render(), "e12");
        assert_eq!((&e(2, 2) * &e(2, 1)).render(), "-e12");
        assert!(Multivector::basis(2, 3).is_err());
        assert!(e(2, 1).geometric_product(&e(3, 1)).is_err());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(e(2, 1).conj(), -e(2, 1));
        let e12 = &e(2, 1) * &e(2, 2);
        assert_eq!(e12.conj(), -e12.clone());
        assert_eq!(Multivector::scalar(1, Gr::i()).conj(), Multivector::scalar(1, -Gr::i()));
    }

    #[test]
    fn wedge_and_dot() {
        let x = &e(2, 1) + &e(2, 2);
        let y = e(2, 2);
        let prod = &x * &y;
        assert_eq!(prod.render(), "-1 + e12");
        assert_eq!(x.wedge(&y).render(), "e12");
        assert_eq!(vector_dot(&x, &y), Gr::one());
        assert!(e(2, 1).wedge(&e(2, 1)).is_zero());
        assert_eq!(vector_dot(&e(2, 1), &e(2, 2)), Gr::zero());
    }

    #[test]
    fn witt_relations() {
        for n in 1..=4 {
            for j in 1..=n {
                for k in 1..=n {
                    let (fj, fk) = (witt(n, j).unwrap(), witt(n, k).unwrap());
                    let (fdj, fdk) = (witt_dagger(n, j).unwrap(), witt_dagger(n, k).unwrap());
                    let g = &(&fj * &fdk) + &(&fdk * &fj);
                    let delta = if j == k { Multivector::one(2 * n) } else { Multivector::zero(2 * n) };
                    assert_eq!(g, delta);
                    assert!((&(&fj * &fk) + &(&fk * &fj)).is_zero());
                    assert!((&(&fdj * &fdk) + &(&fdk * &fdj)).is_zero());
                }
                assert_eq!(witt(n, j).unwrap().conj(), witt_dagger(n, j).unwrap());
            }
        }
        assert!(witt(2, 3).is_err());
    }

    #[test]
    fn beta_identities() {
        for n in 1..=4 {
            let b = beta(n);
            let m = 2 * n;
            let mut prod = Multivector::one(m);
            for j in 0..=n {
                prod = &prod * &(&b - &Multivector::scalar(m, Gr::from_int(j as i64)));
            }
            assert!(prod.is_zero(), "n={n}");
            for j in 1..=n {
                let f = witt(n, j).unwrap();
                let fd = witt_dagger(n, j).unwrap();
                let one = Multivector::one(m);
                assert!((&(&b * &f) - &(&f * &(&b - &one))).is_zero());
                assert!((&(&b * &fd) - &(&fd * &(&b + &one))).is_zero());
            }
        }
    }

    #[test]
    fn spinor_spaces() {
        let s = spinor_basis(1, 0).unwrap();
        assert_eq!(s.len(), 1);
        // f1 f1^dagger = (1 - i e12)/2
        assert_eq!(s.vectors[0].render(), "1/2 - 1/2*i*e12");
        assert_eq!(spinor_basis(2, 1).unwrap().len(), 2);
        for n in 1..=3 {
            let b = beta(n);
            for j in 0..=n {
                let basis = spinor_basis(n, j).unwrap();
                assert_eq!(Rational::from(basis.len()), binomial(n, j));
                for v in &basis.vectors {
                    assert!(!v.is_zero());
                    assert_eq!(&b * v, v.scale(&Gr::from_int(j as i64)));
                    for k in 1..=n {
                        // f_k lowers the sector
                        let w = &witt(n, k).unwrap() * v;
                        assert_eq!(&b * &w, w.scale(&Gr::from_int(j as i64 - 1)));
                    }
                }
            }
        }
    }

    fn arb_mv(m: usize) -> impl Strategy<Value = Multivector> {
        proptest::collection::vec((0u32..(1 << m), -3i64..4, -3i64..4), 0..6).prop_map(move |v| {
            Multivector::from_terms(
                m,
                v.into_iter().map(|(b, re, im)| (b, Gr::new(Rational::from_int(re), Rational::from_int(im)))),
            )
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_anti_automorphism(a in arb_mv(5), b in arb_mv(5)) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
            prop_assert_eq!((&a * &b).bar(), &b.bar() * &a.bar());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn product_is_associative(a in arb_mv(4), b in arb_mv(4), c in arb_mv(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn unit_is_neutral(a in arb_mv(4)) {
            prop_assert_eq!(&Multivector::one(4) * &a, a.clone());
        }

        #[test]
        fn vectors_multiply_into_scalar_plus_bivector(x in proptest::collection::vec(-4i64..5, 5), y in proptest::collection::vec(-4i64..5, 5)) {
            let xv = Multivector::vector(5, &x.iter().map(|&v| Gr::from_int(v)).collect::<Vec<_>>());
            let yv = Multivector::vector(5, &y.iter().map(|&v| Gr::from_int(v)).collect::<Vec<_>>());
            let prod = &xv * &yv;
            prop_assert!(prod.grades().iter().all(|g| *g == 0 || *g == 2));
            let split = &xv.wedge(&yv) - &Multivector::scalar(5, vector_dot(&xv, &yv));
            prop_assert_eq!(prod, split);
        }

        #[test]
        fn text_round_trip(a in arb_mv(5)) {
            let text = a.render();
            prop_assert_eq!(Multivector::parse(&text, 5).unwrap(), a);
        }
    }
}
