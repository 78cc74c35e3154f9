//! Exact Jacobi and Gegenbauer polynomials and their classical identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, pochhammer, Rational};
use crate::report::Check;

/// Dense univariate polynomial with rational coefficients in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| Rational::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * &Rational::from(i))
                .collect(),
        )
    }

    /// `p(a*x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = UniPoly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Family {
    Jacobi { a: String, b: String },
    Gegenbauer { mu: String },
}

/// A Jacobi or Gegenbauer polynomial; degree `-1` stands for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPoly {
    pub family: Family,
    pub degree: i64,
    pub poly: UniPoly,
}

impl OrthoPoly {
    pub fn coeffs(&self) -> &[Rational] {
        self.poly.coeffs()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }
}

fn check_jacobi_params(a: &Rational, b: &Rational) -> Result<()> {
    let m1 = Rational::from_int(-1);
    if a <= &m1 || b <= &m1 {
        return Err(Error::range(format!("Jacobi parameters must exceed -1, got a={a}, b={b}")));
    }
    Ok(())
}

/// Jacobi polynomial `P_k^{a,b}(x)` via its explicit series in `(x-1)/2`.
/// Negative degrees give the zero polynomial.
pub fn jacobi(k: i64, a: &Rational, b: &Rational) -> Result<OrthoPoly> {
    check_jacobi_params(a, b)?;
    Ok(jacobi_unchecked(k, a, b))
}

fn jacobi_unchecked(k: i64, a: &Rational, b: &Rational) -> OrthoPoly {
    let family = Family::Jacobi { a: a.to_string(), b: b.to_string() };
    if k < 0 {
        return OrthoPoly { family, degree: -1, poly: UniPoly::zero() };
    }
    let poly = jacobi_in_half_shift(k as usize, a, b)
        .compose_affine(&Rational::new(1, 2), &Rational::new(-1, 2));
    OrthoPoly { family, degree: k, poly }
}

/// Coefficients of `P_k^{a,b}` in the variable `y = (x-1)/2`.
fn jacobi_in_half_shift(k: usize, a: &Rational, b: &Rational) -> UniPoly {
    let one = Rational::one();
    let ab1k = a + b + &one + &Rational::from(k);
    let kf = factorial(k);
    UniPoly::from_coeffs(
        (0..=k)
            .map(|j| {
                let aj1 = a + &Rational::from(j + 1);
                binomial(k, j) * pochhammer(&aj1, k - j) * pochhammer(&ab1k, j) / &kf
            })
            .collect(),
    )
}

/// `P_k^{a,b}(2s-1)` as a polynomial in `s`.
pub fn jacobi_in_s(k: i64, a: &Rational, b: &Rational) -> UniPoly {
    if k < 0 {
        return UniPoly::zero();
    }
    jacobi_in_half_shift(k as usize, a, b).compose_affine(&Rational::one(), &Rational::from_int(-1))
}

/// Gegenbauer polynomial `C_k^mu(t)` via its explicit alternating series.
/// Negative degrees give the zero polynomial.
pub fn gegenbauer(k: i64, mu: &Rational) -> Result<OrthoPoly> {
    if mu <= &Rational::new(-1, 2) {
        return Err(Error::range(format!("Gegenbauer parameter must exceed -1/2, got {mu}")));
    }
    Ok(gegenbauer_unchecked(k, mu))
}

fn gegenbauer_unchecked(k: i64, mu: &Rational) -> OrthoPoly {
    let family = Family::Gegenbauer { mu: mu.to_string() };
    if k < 0 {
        return OrthoPoly { family, degree: -1, poly: UniPoly::zero() };
    }
    let k = k as usize;
    let mut coeffs = vec![Rational::zero(); k + 1];
    for j in 0..=k / 2 {
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = sign * pochhammer(mu, k - j) / (factorial(j) * factorial(k - 2 * j))
            * Rational::from_int(2).pow((k - 2 * j) as i32);
        coeffs[k - 2 * j] = c;
    }
    let poly = UniPoly::from_coeffs(coeffs);
    let degree = poly.degree();
    OrthoPoly { family, degree, poly }
}

/// Coefficients of `((k+mu)/mu) C_k^mu(t)`, valid also at `mu = 0` where the
/// ratio is resolved before evaluation.
pub fn scaled_gegenbauer(k: usize, mu: &Rational) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); k + 1];
    let kmu = mu + &Rational::from(k);
    let mu1 = mu + &Rational::one();
    for j in 0..=k / 2 {
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        // ((k+mu)/mu) (mu)_{k-j} = (k+mu) (mu+1)_{k-j-1} for k-j >= 1
        let ratio = if k == j { Rational::one() } else { &kmu * &pochhammer(&mu1, k - j - 1) };
        coeffs[k - 2 * j] = sign * ratio / (factorial(j) * factorial(k - 2 * j))
            * Rational::from_int(2).pow((k - 2 * j) as i32);
    }
    UniPoly::from_coeffs(coeffs)
}

fn p(k: i64, a: &Rational, b: &Rational) -> UniPoly {
    jacobi_unchecked(k, a, b).poly
}

fn c(k: i64, mu: &Rational) -> UniPoly {
    gegenbauer_unchecked(k, mu).poly
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

fn residual(lhs: &UniPoly, rhs: &UniPoly) -> Option<String> {
    let r = lhs - rhs;
    if r.is_zero() {
        None
    } else {
        Some(r.to_string())
    }
}

/// Checks the five classical Jacobi identities (recurrences, expansion, derivative)
/// for all `-1 <= k <= k_max` and each `(a, b)` pair.
pub fn verify_jacobi_recurrences(k_max: i64, params: &[(Rational, Rational)]) -> Vec<Check> {
    let one = Rational::one();
    let xpoly = UniPoly::x();
    let one_minus_x = &UniPoly::one() - &xpoly;
    let one_plus_x = &UniPoly::one() + &xpoly;
    let mut checks = vec![
        Check::new("jacobi1", "Lemma JacRec1 (jacobi1)"),
        Check::new("jacobi2", "Lemma JacRec1 (jacobi2)"),
        Check::new("jacobi3", "Lemma JacRec1 (jacobi3)"),
        Check::new("jacobi4", "Lemma JacRec1 (jacobi4)"),
        Check::new("jacobi5", "Lemma JacRec1 (jacobi5)"),
    ];
    for c in checks.iter_mut() {
        *c = c.clone().param("k_max", k_max).param("pairs", params.len());
    }
    for (a, b) in params {
        let a1 = a + &one;
        let b1 = b + &one;
        for k in -1..=k_max {
            let tag = || format!("k={k}, a={a}, b={b}");
            let kq = q(k);
            // jacobi1
            let lhs = &p(k + 1, &a1, b) - &p(k + 1, a, &b1);
            checks[0].record(tag, residual(&lhs, &p(k, &a1, &b1)));
            // jacobi2
            let lhs = &(&one_minus_x * &p(k, &a1, b)) + &(&one_plus_x * &p(k, a, &b1));
            checks[1].record(tag, residual(&lhs, &p(k, a, b).scale(&q(2))));
            // jacobi3
            let lhs = &p(k + 1, a, &b1).scale(&(&kq + &(a + &(b + &q(2)))))
                + &p(k, a, &b1).scale(&(&kq + &(a + &one)));
            let rhs = p(k + 1, a, b).scale(&(&q(2 * k + 3) + &(a + b)));
            checks[2].record(tag, residual(&lhs, &rhs));
            if k < 0 {
                continue;
            }
            // jacobi4
            let ku = k as usize;
            let ab = a + b;
            let mut rhs = UniPoly::zero();
            for j in 0..=ku {
                let jq = Rational::from(j);
                let denom = pochhammer(&(&(&jq + &ab) + &one), ku - j + 1);
                let Some(w) = (&(&q(2) * &jq) + &(&ab + &one))
                    .checked_div(&denom)
                    .map(|w| w * pochhammer(&(&(&jq + b) + &one), ku - j))
                else {
                    continue;
                };
                rhs = &rhs + &p(j as i64, a, b).scale(&w);
            }
            checks[3].record(tag, residual(&p(k, &a1, b), &rhs));
            // jacobi5
            let lhs = p(k, a, b).derivative();
            let rhs = p(k - 1, &a1, &b1).scale(&(&(&(&kq + &ab) + &one) * &Rational::new(1, 2)));
            checks[4].record(tag, residual(&lhs, &rhs));
        }
    }
    checks
}

/// `kappa_{p-j,q-j} = ((n-1+p+q-2j)/(n-1)) * binom(n-2+p-j, p-j)`.
pub fn kappa(n: i64, p: i64, q_: i64, j: i64) -> Rational {
    q(n - 1 + p + q_ - 2 * j) / q(n - 1) * binomial((n - 2 + p - j) as usize, (p - j) as usize)
}

/// Checks the three special-parameter Jacobi identities for `n` in `ns`, `p <= p_max`,
/// `-1 <= q <= q_max` with `q < p` (the formal `q = -1` case only for the first two).
pub fn verify_jacobi_special(q_max: i64, ns: &[i64], p_max: i64) -> Vec<Check> {
    let mut checks = vec![
        Check::new("jacobi6", "Lemma JacRec2 (jacobi6)"),
        Check::new("jacobi7", "Lemma JacRec2 (jacobi7)"),
        Check::new("jacobi8", "Lemma JacRec2 (jacobi8)"),
    ];
    let ns_s: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    for c in checks.iter_mut() {
        *c = c.clone().param("q_max", q_max).param("n", ns_s.join(",")).param("p_max", p_max);
    }
    // 2s = x + 1
    let two_s = &UniPoly::x() + &UniPoly::one();
    for &n in ns {
        for pp in 0..=p_max {
            for qq in -1..=q_max.min(pp - 1) {
                let tag = || format!("n={n}, p={pp}, q={qq}");
                let base = p(qq + 1, &q(n - 2), &q(pp - qq));
                let dbase = &two_s * &base.derivative();
                let lhs6 = &base.scale(&q(pp - qq)) + &dbase;
                let rhs6 = p(qq + 1, &q(n - 1), &q(pp - qq - 1)).scale(&q(pp + 1));
                checks[0].record(tag, residual(&lhs6, &rhs6));
                let lhs7 = &base.scale(&q(qq + 1)) - &dbase;
                let rhs7 = p(qq, &q(n - 1), &q(pp - qq)).scale(&q(-(pp + 1)));
                checks[1].record(tag, residual(&lhs7, &rhs7));
                if qq < 0 {
                    continue;
                }
                let lhs8 = p(qq, &q(n - 1), &q(pp - qq)).scale(&binomial((n - 1 + pp) as usize, pp as usize));
                let mut rhs8 = UniPoly::zero();
                for j in 0..=qq {
                    rhs8 = &rhs8 + &p(qq - j, &q(n - 2), &q(pp - qq)).scale(&kappa(n, pp, qq, j));
                }
                checks[2].record(tag, residual(&lhs8, &rhs8));
            }
        }
    }
    checks
}

/// Checks the Gegenbauer recurrence, the parameter-raising relations, the derivative
/// rule, the Euler-type relation and the bridge to Jacobi polynomials.
pub fn verify_gegenbauer_relations(k_max: i64, mus: &[Rational]) -> Vec<Check> {
    let mut checks = vec![
        Check::new("GegenRec", "three-term recurrence (GegenRec)"),
        Check::new("Gegen1", "parameter shift (Gegen1)"),
        Check::new("Gegen2", "parameter shift (Gegen2)"),
        Check::new("Gegen3", "derivative rule (Gegen3)"),
        Check::new("Gegen4", "Euler relation (Gegen4)"),
        Check::new("gegenbauer-jacobi", "Gegenbauer as rescaled Jacobi"),
    ];
    let mus_s: Vec<String> = mus.iter().map(|m| m.to_string()).collect();
    for c in checks.iter_mut() {
        *c = c.clone().param("k_max", k_max).param("mu", mus_s.join(","));
    }
    let t = UniPoly::x();
    let one = Rational::one();
    let half = Rational::new(1, 2);
    for mu in mus {
        let mu1 = mu + &one;
        for k in 0..=k_max {
            let tag = || format!("k={k}, mu={mu}");
            let kq = q(k);
            let lhs = c(k, mu).scale(&kq);
            let rhs = &(&t * &c(k - 1, mu)).scale(&(&q(2) * &(&(&kq + mu) - &one)))
                - &c(k - 2, mu).scale(&(&(&kq + &(&q(2) * mu)) - &q(2)));
            checks[0].record(tag, residual(&lhs, &rhs));

            let lhs = c(k, mu).scale(&(&kq + mu));
            let rhs = (&c(k, &mu1) - &c(k - 2, &mu1)).scale(mu);
            checks[1].record(tag, residual(&lhs, &rhs));

            let one_minus_t2 = UniPoly::from_ints(&[1, 0, -1]);
            let lhs = (&one_minus_t2 * &c(k, &mu1)).scale(&(&q(4) * &(mu * &(&mu1 + &kq))));
            let k2mu = &kq + &(&q(2) * mu);
            let rhs = &c(k, mu).scale(&(&k2mu * &(&k2mu + &one))) - &c(k + 2, mu).scale(&q((k + 1) * (k + 2)));
            checks[2].record(tag, residual(&lhs, &rhs));

            let lhs = c(k, mu).derivative();
            let rhs = c(k - 1, &mu1).scale(&(&q(2) * mu));
            checks[3].record(tag, residual(&lhs, &rhs));

            let lhs = &c(k, mu).scale(&kq) - &(&t * &c(k, mu).derivative());
            let rhs = c(k - 2, &mu1).scale(&(&q(-2) * mu));
            checks[4].record(tag, residual(&lhs, &rhs));

            let ku = k as usize;
            let shifted = mu - &half;
            match pochhammer(&(mu + &half), ku).checked_recip() {
                Some(inv) if shifted > Rational::from_int(-1) => {
                    let w = pochhammer(&(&q(2) * mu), ku) * inv;
                    let rhs = p(k, &shifted, &shifted).scale(&w);
                    checks[5].record(tag, residual(&c(k, mu), &rhs));
                }
                _ => {}
            }
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    // Independent oracle: the classical three-term recurrence in degree,
    // evaluated pointwise.
    fn jacobi_eval_oracle(k: usize, a: &Rational, b: &Rational, x: &Rational) -> Rational {
        let one = Rational::one();
        let two = Rational::from_int(2);
        let p0 = one.clone();
        let p1 = (a + &one) + (a + b + &two) * (x - &one) / &two;
        if k == 0 {
            return p0;
        }
        let (mut prev, mut cur) = (p0, p1);
        for n in 2..=k {
            let n = Rational::from(n);
            let s = &(&n * &two) + &(a + b);
            let lhs = &two * &n * (&n + &(a + b)) * (&s - &two);
            let t1 = (&s - &one) * (&s * (&s - &two) * x + a * a - b * b) * &cur;
            let t2 = &two * (&n + a - &one) * (&n + b - &one) * &s * &prev;
            let next = (t1 - t2) / lhs;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn jacobi_examples() {
        let p0 = jacobi(0, &r(3, 1), &r(1, 2)).unwrap();
        assert_eq!(p0.poly, UniPoly::one());
        let p1 = jacobi(1, &r(1, 1), &r(0, 1)).unwrap();
        assert_eq!(p1.poly, UniPoly::from_coeffs(vec![r(1, 2), r(3, 2)]));
        let pm = jacobi(-1, &r(1, 1), &r(1, 1)).unwrap();
        assert_eq!(pm.degree, -1);
        assert!(pm.poly.is_zero());
        assert!(jacobi(1, &r(-1, 1), &r(0, 1)).is_err());
    }

    #[test]
    fn jacobi_matches_oracle() {
        for k in 0..6 {
            for (a, b) in [(r(0, 1), r(0, 1)), (r(1, 2), r(3, 2)), (r(2, 1), r(1, 1))] {
                let poly = jacobi(k, &a, &b).unwrap();
                assert_eq!(poly.degree, k);
                for x in [r(-1, 1), r(1, 3), r(2, 1)] {
                    assert_eq!(poly.eval(&x), jacobi_eval_oracle(k as usize, &a, &b, &x));
                }
            }
        }
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, &r(5, 2)).unwrap().poly, UniPoly::one());
        let mu = r(3, 2);
        assert_eq!(gegenbauer(1, &mu).unwrap().poly, UniPoly::from_coeffs(vec![r(0, 1), r(3, 1)]));
        assert_eq!(gegenbauer(3, &r(1, 1)).unwrap().poly, UniPoly::from_ints(&[0, -4, 0, 8]));
        assert!(gegenbauer(2, &r(-1, 2)).is_err());
    }

    #[test]
    fn jacobi5_example() {
        let lhs = jacobi(2, &r(1, 1), &r(1, 1)).unwrap().poly.derivative();
        let rhs = jacobi(1, &r(2, 1), &r(2, 1)).unwrap().poly.scale(&r(5, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi8_at_q_zero_is_binomial_identity() {
        for n in 2..5i64 {
            for p in 0..6i64 {
                let lhs = binomial((n - 1 + p) as usize, p as usize);
                assert_eq!(lhs, kappa(n, p, 0, 0));
            }
        }
    }

    #[test]
    fn gegen4_example() {
        let c2 = gegenbauer(2, &r(1, 1)).unwrap().poly;
        let lhs = &c2.scale(&r(2, 1)) - &(&UniPoly::x() * &c2.derivative());
        assert_eq!(lhs, UniPoly::from_ints(&[-2]));
    }

    #[test]
    fn scaled_gegenbauer_agrees_and_covers_mu_zero() {
        for k in 0..7usize {
            for mu in [r(1, 2), r(1, 1), r(3, 2)] {
                let direct = gegenbauer(k as i64, &mu).unwrap().poly.scale(&((&mu + &Rational::from(k)) / &mu));
                assert_eq!(scaled_gegenbauer(k, &mu), direct);
            }
        }
        // Chebyshev limit: 2 T_3(t) = 8t^3 - 6t
        assert_eq!(scaled_gegenbauer(3, &Rational::zero()), UniPoly::from_ints(&[0, -6, 0, 8]));
        assert_eq!(scaled_gegenbauer(0, &Rational::zero()), UniPoly::one());
    }

    #[test]
    fn full_default_grid_passes() {
        let params: Vec<(Rational, Rational)> =
            (0..=4).flat_map(|a| (0..=4).map(move |b| (r(a, 1), r(b, 1)))).collect();
        for c in verify_jacobi_recurrences(6, &params) {
            assert!(c.passed(), "{:?}", c);
        }
        for c in verify_jacobi_special(6, &[2, 3, 4], 6) {
            assert!(c.passed(), "{:?}", c);
        }
        let mus = [r(1, 2), r(1, 1), r(3, 2), r(2, 1), r(5, 2)];
        for c in verify_gegenbauer_relations(8, &mus) {
            assert!(c.passed(), "{:?}", c);
        }
    }

    proptest! {
        #[test]
        fn family_bridge(k in 0i64..9, mu_twice in 1i64..5) {
            let mu = r(mu_twice, 2);
            let half = r(1, 2);
            let lhs = gegenbauer(k, &mu).unwrap().poly;
            let w = pochhammer(&(&r(2, 1) * &mu), k as usize) / pochhammer(&(&mu + &half), k as usize);
            let rhs = jacobi(k, &(&mu - &half), &(&mu - &half)).unwrap().poly.scale(&w);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi_degree_bookkeeping(k in 0i64..10, a in 0i64..5, b in 0i64..5) {
            prop_assert_eq!(jacobi(k, &r(a, 1), &r(b, 1)).unwrap().poly.degree(), k);
        }
    }
}
