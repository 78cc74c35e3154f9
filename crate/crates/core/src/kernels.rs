//! Reproducing kernels: Fischer kernels, zonal harmonics, Koornwinder's
//! bihomogeneous kernels, the monogenic kernel and the Hermitian monogenic
//! kernel with its closed forms, staged operational route and normalisation.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::clifford::{beta, Multivector};
use crate::cliffpoly::{Chart, CliffPoly, KernelTable, Monomial, OperatorTag, Pairing, Roster, Side, Slot};
use crate::report::Check;
use crate::spaces::{basis, Space};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, GaussianRational as Gr, Rational};
use crate::orthopoly::{gegenbauer, jacobi_in_s, scaled_gegenbauer, UniPoly};

/// A kernel polynomial in two vector variables with its bidegree in each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPoly {
    pub kind: String,
    pub params: BTreeMap<String, usize>,
    /// `(k, k)` for Euclidean kernels, `(p, q)` for Hermitian ones.
    pub bidegree: (usize, usize),
    pub poly: CliffPoly,
}

impl KernelPoly {
    fn new(kind: &str, params: &[(&str, usize)], bidegree: (usize, usize), poly: CliffPoly) -> Self {
        KernelPoly {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            bidegree,
            poly,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            blade: String,
            monomial: String,
            coef: String,
        }
        let terms: Vec<Term> = self
            .poly
            .flat_terms()
            .into_iter()
            .map(|(mono, b, v)| {
                let text = self.poly.render_monomial(&mono).join("*");
                Term {
                    blade: crate::textfmt::render_blade(b).unwrap_or_else(|| "1".into()),
                    monomial: if text.is_empty() { "1".into() } else { text },
                    coef: v.to_string(),
                }
            })
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "params": self.params,
            "bidegree": [self.bidegree.0, self.bidegree.1],
            "chart": self.poly.chart(),
            "terms": terms,
        })
    }
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min || m > 12 {
        return Err(Error::range(format!("m = {m} outside {min}..=12")));
    }
    Ok(())
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > 6 {
        return Err(Error::range(format!("n = {n} outside {min}..=6")));
    }
    Ok(())
}

fn r(v: i64) -> Rational {
    Rational::from_int(v)
}

// ---- Euclidean building blocks (real chart, paired roster) ----

struct EuclidCtx {
    m: usize,
    xy: CliffPoly,
    r2x: CliffPoly,
    r2y: CliffPoly,
}

impl EuclidCtx {
    fn new(m: usize) -> Self {
        let var = |v| CliffPoly::var(m, Roster::Pair, Chart::Real, v);
        let mut xy = CliffPoly::zero(m, Roster::Pair, Chart::Real);
        let mut r2x = xy.clone();
        let mut r2y = xy.clone();
        for j in 0..m {
            xy += &(&var(j) * &var(m + j));
            r2x += &(&var(j) * &var(j));
            r2y += &(&var(m + j) * &var(m + j));
        }
        EuclidCtx { m, xy, r2x, r2y }
    }

    /// `sum_i c_i <x,y>^i (|x|^2 |y|^2)^{(deg - i)/2}` for a polynomial of parity `deg`.
    fn homogenize(&self, poly: &UniPoly, deg: usize) -> CliffPoly {
        let rr = &self.r2x * &self.r2y;
        let mut acc = CliffPoly::zero(self.m, Roster::Pair, Chart::Real);
        for (i, c) in poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert!(i <= deg && (deg - i).is_multiple_of(2), "parity violated in zonal expansion");
            acc += &(&self.xy.pow(i) * &rr.pow((deg - i) / 2)).scale_rational(c);
        }
        acc
    }

    fn wedge(&self) -> CliffPoly {
        let m = self.m;
        let var = |v| CliffPoly::var(m, Roster::Pair, Chart::Real, v);
        let mut acc = CliffPoly::zero(m, Roster::Pair, Chart::Real);
        for a in 0..m {
            for b in a + 1..m {
                let eab = &Multivector::basis(m, a + 1).expect("index") * &Multivector::basis(m, b + 1).expect("index");
                let t = &(&var(a) * &var(m + b)) - &(&var(b) * &var(m + a));
                acc += &t.left_mul(&eab);
            }
        }
        acc
    }
}

/// Fischer reproducing kernel of `P_k`: `<x,y>^k / k!`.
pub fn fischer_kernel_euclidean(k: usize, m: usize) -> Result<KernelPoly> {
    check_m(m, 1)?;
    let ctx = EuclidCtx::new(m);
    let poly = ctx.xy.pow(k).scale_rational(&factorial(k).recip());
    Ok(KernelPoly::new("fischer", &[("k", k), ("m", m)], (k, k), poly))
}

/// Zonal harmonic `((k+mu)/mu) |x|^k |y|^k C_k^mu(t)`, `mu = m/2 - 1`.
pub fn zonal_harmonic(k: usize, m: usize) -> Result<KernelPoly> {
    check_m(m, 2)?;
    let mu = Rational::new(m as i64 - 2, 2);
    let ctx = EuclidCtx::new(m);
    let poly = ctx.homogenize(&scaled_gegenbauer(k, &mu), k);
    Ok(KernelPoly::new("zonal", &[("k", k), ("m", m)], (k, k), poly))
}

/// Closed form of the reproducing kernel of spherical monogenics.
pub fn monogenic_kernel_closed(k: usize, m: usize) -> Result<KernelPoly> {
    check_m(m, 3)?;
    let mu = Rational::new(m as i64 - 2, 2);
    let ctx = EuclidCtx::new(m);
    let ratio = &(&(&mu * &r(2)) + &Rational::from(k)) / &(&mu * &r(2));
    let first = gegenbauer(k as i64, &mu)?.poly.scale(&ratio);
    let mut poly = ctx.homogenize(&first, k);
    if k >= 1 {
        let second = gegenbauer(k as i64 - 1, &(&mu + &Rational::one()))?.poly;
        poly += &(&ctx.wedge() * &ctx.homogenize(&second, k - 1));
    }
    Ok(KernelPoly::new("monogenic", &[("k", k), ("m", m)], (k, k), poly))
}

/// `c_k = -1/(m+2k)^2`.
pub fn monogenic_constant(k: usize, m: usize) -> Rational {
    let d = r((m + 2 * k) as i64);
    -(&d * &d).recip()
}

/// `c_k dx K_{k+1}(x,y) dy`, Dirac operators acting from the left in `x` and from the right in `y`.
pub fn monogenic_kernel_operational(k: usize, m: usize) -> Result<KernelPoly> {
    check_m(m, 3)?;
    let z = zonal_harmonic(k + 1, m)?.poly;
    let left = z.apply_in(OperatorTag::DiracX, Side::Left, Slot::X)?;
    let both = left.apply_in(OperatorTag::DiracX, Side::Right, Slot::Y)?;
    let poly = both.scale_rational(&monogenic_constant(k, m));
    Ok(KernelPoly::new("monogenic-operational", &[("k", k), ("m", m)], (k, k), poly))
}

// ---- Hermitian building blocks (complex chart, paired roster) ----

/// The invariants `A = <z,u>`, `B = conj A`, `C = |z|^2`, `D = |u|^2`, the vector
/// variables `z, z^dagger, u, u^dagger` and a cache of monomials in `A, B, C, D`.
pub struct HermCtx {
    pub n: usize,
    m: usize,
    pub a: CliffPoly,
    pub b: CliffPoly,
    pub c: CliffPoly,
    pub d: CliffPoly,
    pub z: CliffPoly,
    pub zd: CliffPoly,
    pub u: CliffPoly,
    pub ud: CliffPoly,
    beta: Multivector,
    cache: HashMap<[u32; 4], CliffPoly>,
}

impl HermCtx {
    pub fn new(n: usize) -> Self {
        let m = 2 * n;
        let var = |v| CliffPoly::var(m, Roster::Pair, Chart::Complex, v);
        let zero = CliffPoly::zero(m, Roster::Pair, Chart::Complex);
        let (mut a, mut b, mut c, mut d) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
        let (mut z, mut zd, mut u, mut ud) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
        for j in 0..n {
            let (zj, zbj, uj, ubj) = (var(j), var(n + j), var(m + j), var(m + n + j));
            a += &(&zj * &ubj);
            b += &(&zbj * &uj);
            c += &(&zj * &zbj);
            d += &(&uj * &ubj);
            let f = crate::clifford::witt(n, j + 1).expect("index");
            let fd = crate::clifford::witt_dagger(n, j + 1).expect("index");
            z += &zj.left_mul(&f);
            zd += &zbj.left_mul(&fd);
            u += &uj.left_mul(&f);
            ud += &ubj.left_mul(&fd);
        }
        HermCtx { n, m, a, b, c, d, z, zd, u, ud, beta: beta(n), cache: HashMap::new() }
    }

    pub fn zero(&self) -> CliffPoly {
        CliffPoly::zero(self.m, Roster::Pair, Chart::Complex)
    }

    pub fn one(&self) -> CliffPoly {
        CliffPoly::one(self.m, Roster::Pair, Chart::Complex)
    }

    /// `beta + s` as a multivector.
    pub fn beta_plus(&self, s: i64) -> Multivector {
        &self.beta + &Multivector::scalar(self.m, Gr::from_int(s))
    }

    /// `s - beta`.
    pub fn minus_beta(&self, s: i64) -> Multivector {
        &Multivector::scalar(self.m, Gr::from_int(s)) - &self.beta
    }

    pub fn beta(&self) -> &Multivector {
        &self.beta
    }

    /// `A^a B^b C^c D^d`.
    pub fn abcd(&mut self, e: [u32; 4]) -> CliffPoly {
        if let Some(p) = self.cache.get(&e) {
            return p.clone();
        }
        let p = if e == [0; 4] {
            self.one()
        } else {
            // peel one factor off the largest exponent
            let i = (0..4).max_by_key(|&i| (e[i], std::cmp::Reverse(i))).expect("nonempty");
            let mut rest = e;
            rest[i] -= 1;
            let base = self.abcd(rest);
            let f = [&self.a, &self.b, &self.c, &self.d][i].clone();
            &base * &f
        };
        self.cache.insert(e, p.clone());
        p
    }

    /// `A^ea B^eb C^ec D^ed P_k^{al,be}(2s-1)` with `s = AB/(CD)`, expanded so that only
    /// nonnegative powers remain. `None` for negative `k`.
    pub fn jacobi_term(&mut self, k: i64, al: i64, be: i64, e: [i64; 4]) -> Result<Option<CliffPoly>> {
        if k < 0 {
            return Ok(None);
        }
        let poly = jacobi_in_s(k, &r(al), &r(be));
        let mut acc = self.zero();
        for (i, c) in poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = i as i64;
            let ex = [e[0] + i, e[1] + i, e[2] - i, e[3] - i];
            if ex.iter().any(|&x| x < 0) {
                return Err(Error::Inconsistent(format!("negative power {ex:?} in Jacobi expansion")));
            }
            let mono = self.abcd([ex[0] as u32, ex[1] as u32, ex[2] as u32, ex[3] as u32]);
            acc += &mono.scale_rational(c);
        }
        Ok(Some(acc))
    }
}

/// `(n-1+p+q)/(n-1)` as stated alongside the Jacobi form of the kernel.
pub fn koornwinder_constant_stated(p: usize, q: usize, n: usize) -> Rational {
    Rational::new((n + p + q) as i64 - 1, n as i64 - 1)
}

/// Constant in front of `A^{p-q} C^q D^q P_q^{n-2,p-q}(2s-1)` that makes the kernel reproducing:
/// the stated constant times `binom(n-2+max(p,q), max(p,q))`, which is 1 only for `n = 2`.
pub fn koornwinder_constant(p: usize, q: usize, n: usize) -> Rational {
    let hi = p.max(q);
    &koornwinder_constant_stated(p, q, n) * &binomial(n - 2 + hi, hi)
}

fn koornwinder_in(ctx: &mut HermCtx, p: usize, q: usize) -> Result<CliffPoly> {
    let n = ctx.n as i64;
    let (hi, lo) = (p.max(q) as i64, p.min(q) as i64);
    let e = if p >= q { [hi - lo, 0, lo, lo] } else { [0, hi - lo, lo, lo] };
    let t = ctx.jacobi_term(lo, n - 2, hi - lo, e)?.expect("nonnegative degree");
    Ok(t.scale_rational(&koornwinder_constant(p, q, ctx.n)))
}

/// Koornwinder's reproducing kernel of `H_{p,q}` for the sphere product.
pub fn koornwinder_kernel(p: usize, q: usize, n: usize) -> Result<KernelPoly> {
    check_n(n, 2)?;
    let mut ctx = HermCtx::new(n);
    let poly = koornwinder_in(&mut ctx, p, q)?;
    Ok(KernelPoly::new("koornwinder", &[("n", n), ("p", p), ("q", q)], (p, q), poly))
}

/// `<z,u>^p conj(<z,u>)^q / (p! q!)` without the factor that the Fischer product requires.
pub fn fischer_kernel_hermitian_stated(p: usize, q: usize, n: usize) -> Result<CliffPoly> {
    check_n(n, 1)?;
    let mut ctx = HermCtx::new(n);
    Ok(ctx.abcd([p as u32, q as u32, 0, 0]).scale_rational(&(&factorial(p) * &factorial(q)).recip()))
}

/// Fischer kernel of `P_{p,q}`: `<z,u>^p conj(<z,u>)^q / (2^{p+q} p! q!)`, since `<z_j, z_j> = 2`.
pub fn fischer_kernel_hermitian(p: usize, q: usize, n: usize) -> Result<KernelPoly> {
    let scale = Rational::from_int(2).pow(-((p + q) as i32));
    let poly = fischer_kernel_hermitian_stated(p, q, n)?.scale_rational(&scale);
    Ok(KernelPoly::new("fischer-hermitian", &[("n", n), ("p", p), ("q", q)], (p, q), poly))
}

/// Lagrange basis polynomial `L_j` on the nodes `0..=n`, evaluated at `beta`.
pub fn lagrange(n: usize, j: usize) -> Result<Multivector> {
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let b = beta(n);
    let m = 2 * n;
    let mut acc = Multivector::one(m);
    for i in 0..=n {
        if i == j {
            continue;
        }
        let f = &b - &Multivector::scalar(m, Gr::from_int(i as i64));
        acc = (&acc * &f).scale_rational(&r(j as i64 - i as i64).recip());
    }
    Ok(acc)
}

/// `d_{p,q}(beta)` together with the nodes dropped because a factor vanishes there.
#[derive(Debug, Clone)]
pub struct Normalization {
    pub value: Multivector,
    pub dropped: Vec<usize>,
}

/// `d_{p,q}(beta) = sum_j d^(j) L_j(beta)` with
/// `d^(j) = (n+p+q+1)^{-2} (n-j+q)^{-1} (j+p)^{-1}`; nodes with a vanishing factor are dropped.
pub fn normalization_dpq(p: usize, q: usize, n: usize) -> Result<Normalization> {
    check_n(n, 1)?;
    let mut value = Multivector::zero(2 * n);
    let mut dropped = Vec::new();
    let s = r((n + p + q + 1) as i64);
    for j in 0..=n {
        let f1 = (n + q) as i64 - j as i64;
        let f2 = (j + p) as i64;
        if f1 == 0 || f2 == 0 {
            dropped.push(j);
            continue;
        }
        let dj = (&(&(&s * &s) * &r(f1)) * &r(f2)).recip();
        value += &lagrange(n, j)?.scale_rational(&dj);
    }
    Ok(Normalization { value, dropped })
}

/// The four intermediate stages of the operational Hermitian kernel.
#[derive(Debug, Clone)]
pub struct HermitianTrace {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// `dz K`, `dz^dagger dz K`, `(...) du^dagger`, `(...) du`.
    pub stages: [CliffPoly; 4],
}

pub const STAGE_NAMES: [&str; 4] = ["dz K", "dzdag dz K", "dzdag dz K dudag", "dzdag dz K dudag du"];

fn trace_in(ctx: &mut HermCtx, p: usize, q: usize) -> Result<HermitianTrace> {
    let k = koornwinder_in(ctx, p + 1, q + 1)?;
    let s1 = k.apply_in(OperatorTag::DiracZ, Side::Left, Slot::X)?;
    let s2 = s1.apply_in(OperatorTag::DiracZdag, Side::Left, Slot::X)?;
    let s3 = s2.apply_in(OperatorTag::DiracZdag, Side::Right, Slot::Y)?;
    let s4 = s3.apply_in(OperatorTag::DiracZ, Side::Right, Slot::Y)?;
    Ok(HermitianTrace { p, q, n: ctx.n, stages: [s1, s2, s3, s4] })
}

/// Applies `dz^dagger dz` on the left and `du^dagger du` on the right of `K_{p+1,q+1}`, keeping each stage.
pub fn hermitian_trace(p: usize, q: usize, n: usize) -> Result<HermitianTrace> {
    check_n(n, 2)?;
    let mut ctx = HermCtx::new(n);
    trace_in(&mut ctx, p, q)
}

/// The same operator sandwich with each pair of Dirac operators in the opposite order.
pub fn hermitian_swapped_order(p: usize, q: usize, n: usize) -> Result<CliffPoly> {
    check_n(n, 2)?;
    let mut ctx = HermCtx::new(n);
    let k = koornwinder_in(&mut ctx, p + 1, q + 1)?;
    k.apply_in(OperatorTag::DiracZdag, Side::Left, Slot::X)?
        .apply_in(OperatorTag::DiracZ, Side::Left, Slot::X)?
        .apply_in(OperatorTag::DiracZ, Side::Right, Slot::Y)?
        .apply_in(OperatorTag::DiracZdag, Side::Right, Slot::Y)
}

/// `d_{p,q}(beta) dz^dagger dz K_{p+1,q+1} du^dagger du`.
pub fn hermitian_kernel_operational(p: usize, q: usize, n: usize) -> Result<KernelPoly> {
    let t = hermitian_trace(p, q, n)?;
    let d = normalization_dpq(p, q, n)?;
    let poly = t.stages[3].left_mul(&d.value);
    Ok(KernelPoly::new("hermitian-operational", &[("n", n), ("p", p), ("q", q)], (p, q), poly))
}

/// Which closed form applies to a given bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedCase {
    /// `p > q >= 1`, six-term formula.
    General,
    /// `q = 0 < p`.
    QZero,
    /// `p = 0 < q`, the symmetric two-term formula.
    PZero,
    /// `p = q`.
    Diagonal,
    /// `1 <= p < q`, obtained from `(q, p)` by exchanging the variables and reversing.
    Symmetric,
}

pub fn closed_case(p: usize, q: usize) -> ClosedCase {
    match (p, q) {
        _ if p == q => ClosedCase::Diagonal,
        (_, 0) => ClosedCase::QZero,
        (0, _) => ClosedCase::PZero,
        _ if p > q => ClosedCase::General,
        _ => ClosedCase::Symmetric,
    }
}

/// Term accumulator for the closed forms: `coef * left * vec * J`.
struct Terms<'a> {
    ctx: &'a mut HermCtx,
    acc: CliffPoly,
}

impl<'a> Terms<'a> {
    fn new(ctx: &'a mut HermCtx) -> Self {
        let acc = ctx.zero();
        Terms { ctx, acc }
    }

    #[allow(clippy::too_many_arguments)]
    fn add(&mut self, coef: i64, left: Option<&Multivector>, vec: Option<&CliffPoly>, k: i64, al: i64, be: i64, e: [i64; 4]) -> Result<()> {
        if coef == 0 {
            return Ok(());
        }
        let Some(j) = self.ctx.jacobi_term(k, al, be, e)? else { return Ok(()) };
        let mut t = match vec {
            Some(v) => v * &j,
            None => j,
        };
        if let Some(l) = left {
            t = t.left_mul(l);
        }
        self.acc += &t.scale_rational(&r(coef));
        Ok(())
    }

    fn finish(self, scale: &Rational) -> CliffPoly {
        self.acc.scale_rational(scale)
    }
}

fn prefactor(n: usize, p: usize, q: usize) -> Rational {
    &koornwinder_constant(p + 1, q + 1, n) * &r(p as i64 + 1)
}

/// Closed form of stage 1, 2 or 3 (`p > q >= 0`).
pub fn dirac_stage_closed(stage: usize, p: usize, q: usize, n: usize) -> Result<CliffPoly> {
    check_n(n, 2)?;
    if p <= q {
        return Err(Error::range(format!("staged closed forms need p > q, got ({p},{q})")));
    }
    let mut ctx = HermCtx::new(n);
    stage_closed_in(&mut ctx, stage, p, q)
}

fn stage_closed_in(ctx: &mut HermCtx, stage: usize, p: usize, q: usize) -> Result<CliffPoly> {
    let n = ctx.n;
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    let d = pi - qi;
    let (z, zd, u, ud) = (ctx.z.clone(), ctx.zd.clone(), ctx.u.clone(), ctx.ud.clone());
    let mut t = Terms::new(ctx);
    match stage {
        1 => {
            t.add(1, None, Some(&ud), qi + 1, ni - 1, d - 1, [d - 1, 0, qi + 1, qi + 1])?;
            t.add(-1, None, Some(&zd), qi, ni - 1, d, [d, 0, qi, qi + 1])?;
            Ok(t.finish(&prefactor(n, p, q)))
        }
        2 => {
            let nb = t.ctx.minus_beta(ni);
            t.add(pi, None, Some(&(&z * &zd)), qi - 1, ni, d, [d, 0, qi - 1, qi + 1])?;
            t.add(ni + pi, None, Some(&(&u * &ud)), qi, ni, d, [d, 0, qi, qi])?;
            t.add(-pi, None, Some(&(&z * &ud)), qi, ni, d - 1, [d - 1, 0, qi, qi + 1])?;
            t.add(-(ni + pi), None, Some(&(&u * &zd)), qi - 1, ni, d + 1, [d + 1, 0, qi - 1, qi])?;
            t.add(-1, Some(&nb), None, qi, ni - 1, d, [d, 0, qi, qi + 1])?;
            Ok(t.finish(&prefactor(n, p, q)))
        }
        3 => {
            let bp = t.ctx.beta_plus(pi);
            t.add(1, Some(&bp), Some(&u), qi, ni - 1, d, [d, 0, qi, qi])?;
            t.add(-pi, None, Some(&(&(&z * &ud) * &u)), qi, ni, d - 1, [d - 1, 0, qi, qi])?;
            t.add(pi, None, Some(&(&(&z * &zd) * &u)), qi - 1, ni, d, [d, 0, qi - 1, qi])?;
            Ok(t.finish(&(&prefactor(n, p, q) * &r(ni + pi + qi + 1))))
        }
        _ => Err(Error::range(format!("stage {stage} has no separate closed form (use 1..=3)"))),
    }
}

/// `a ^ b = (ab - ba)/2` for the vector variables.
fn wedge2(a: &CliffPoly, b: &CliffPoly) -> CliffPoly {
    (&(a * b) - &(b * a)).scale_rational(&Rational::new(1, 2))
}

/// Six-term formula for `p > q`, also used formally at `q = 0`.
fn general_closed(ctx: &mut HermCtx, p: usize, q: usize) -> Result<CliffPoly> {
    let n = ctx.n;
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    let d = pi - qi;
    let (z, zd, u, ud) = (ctx.z.clone(), ctx.zd.clone(), ctx.u.clone(), ctx.ud.clone());
    let bp = ctx.beta_plus(pi);
    let nbq = ctx.minus_beta(ni + qi);
    let bp_nbq = &bp * &nbq;
    let zwz = wedge2(&z, &zd);
    let uwu = wedge2(&u, &ud);
    let zdu = &zd * &u;
    let zud = &z * &ud;
    let four = &(&(&z * &zd) * &u) * &ud;
    let base = [d - 1, 0, qi - 1, qi - 1];
    let sh = |a: i64, c: i64, dd: i64| [base[0] + a, 0, base[2] + c, base[3] + dd];
    let mut t = Terms::new(ctx);
    t.add(1, Some(&bp_nbq), None, qi, ni - 1, d, sh(1, 1, 1))?;
    t.add(-pi, Some(&bp), Some(&zwz), qi - 1, ni, d, sh(1, 0, 1))?;
    t.add(-pi, Some(&bp), Some(&uwu), qi - 1, ni, d, sh(1, 1, 0))?;
    t.add(-(ni + pi), Some(&bp), Some(&zdu), qi - 1, ni, d + 1, sh(2, 0, 0))?;
    t.add(-pi, Some(&nbq), Some(&zud), qi, ni, d - 1, sh(0, 1, 1))?;
    t.add(pi * (ni + pi + qi), None, Some(&four), qi - 1, ni, d, sh(1, 0, 0))?;
    Ok(t.finish(&(&prefactor(n, p, q) * &r(ni + pi + qi + 1))))
}

fn qzero_closed(ctx: &mut HermCtx, p: usize) -> Result<CliffPoly> {
    let (ni, pi) = (ctx.n as i64, p as i64);
    let bp = ctx.beta_plus(pi);
    let nb = ctx.minus_beta(ni);
    let zud = &ctx.z * &ctx.ud;
    let mut acc = ctx.abcd([p as u32, 0, 0, 0]).left_mul(&bp);
    if p >= 1 {
        acc -= &(&zud * &ctx.abcd([p as u32 - 1, 0, 0, 0])).scale_rational(&r(pi));
    }
    let scale = &(&koornwinder_constant(p + 1, 1, ctx.n) * &r(pi + 1)) * &r(ni + pi + 1);
    Ok(acc.left_mul(&nb).scale_rational(&scale))
}

fn pzero_closed(ctx: &mut HermCtx, q: usize) -> Result<CliffPoly> {
    let (ni, qi) = (ctx.n as i64, q as i64);
    let nbq = ctx.minus_beta(ni + qi);
    let zdu = &ctx.zd * &ctx.u;
    let mut acc = ctx.abcd([0, q as u32, 0, 0]).left_mul(&nbq);
    if q >= 1 {
        acc -= &(&zdu * &ctx.abcd([0, q as u32 - 1, 0, 0])).scale_rational(&r(qi));
    }
    let scale = &(&koornwinder_constant(1, q + 1, ctx.n) * &r(qi + 1)) * &r(ni + qi + 1);
    let b = ctx.beta().clone();
    Ok(acc.left_mul(&b).scale_rational(&scale))
}

fn diagonal_closed(ctx: &mut HermCtx, p: usize) -> Result<CliffPoly> {
    let (ni, pi) = (ctx.n as i64, p as i64);
    let (z, zd, u, ud) = (ctx.z.clone(), ctx.zd.clone(), ctx.u.clone(), ctx.ud.clone());
    let bp = ctx.beta_plus(pi);
    let nbp = ctx.minus_beta(ni + pi);
    let bp_nbp = &bp * &nbp;
    let zwz = wedge2(&z, &zd);
    let uwu = wedge2(&u, &ud);
    let zdu = &zd * &u;
    let zud = &z * &ud;
    let four = &(&(&z * &zd) * &u) * &ud;
    let base = [0i64, 0, pi - 1, pi - 1];
    let sh = |a: i64, b: i64, c: i64, dd: i64| [base[0] + a, base[1] + b, base[2] + c, base[3] + dd];
    let mut t = Terms::new(ctx);
    t.add(1, Some(&bp_nbp), None, pi, ni - 1, 0, sh(0, 0, 1, 1))?;
    // the bivector terms carry beta on the right as written; beta commutes with them
    t.add(-pi, Some(&bp), Some(&zwz), pi - 1, ni, 0, sh(0, 0, 0, 1))?;
    t.add(-pi, Some(&bp), Some(&uwu), pi - 1, ni, 0, sh(0, 0, 1, 0))?;
    t.add(-(ni + pi), Some(&bp), Some(&zdu), pi - 1, ni, 1, sh(1, 0, 0, 0))?;
    t.add(-(ni + pi), Some(&nbp), Some(&zud), pi - 1, ni, 1, sh(0, 1, 0, 0))?;
    t.add(pi * (ni + 2 * pi), None, Some(&four), pi - 1, ni, 0, sh(0, 0, 0, 0))?;
    let scale = &(&koornwinder_constant(p + 1, p + 1, ni as usize) * &r(pi + 1)) * &r(ni + 2 * pi + 1);
    Ok(t.finish(&scale))
}

/// Exchanges the two vector variables and reverses every coefficient.
pub fn symmetric_image(poly: &CliffPoly) -> Result<CliffPoly> {
    Ok(poly.swap_slots()?.bar())
}

fn unnormalized_closed_in(ctx: &mut HermCtx, p: usize, q: usize) -> Result<CliffPoly> {
    match closed_case(p, q) {
        ClosedCase::General => general_closed(ctx, p, q),
        ClosedCase::QZero => qzero_closed(ctx, p),
        ClosedCase::PZero => pzero_closed(ctx, q),
        ClosedCase::Diagonal => diagonal_closed(ctx, p),
        ClosedCase::Symmetric => symmetric_image(&general_closed(ctx, q, p)?),
    }
}

/// `dz^dagger dz K_{p+1,q+1} du^dagger du` from the applicable closed form.
pub fn hermitian_unnormalized_closed(p: usize, q: usize, n: usize) -> Result<CliffPoly> {
    check_n(n, 2)?;
    let mut ctx = HermCtx::new(n);
    unnormalized_closed_in(&mut ctx, p, q)
}

/// The six-term formula evaluated formally at any `p > q >= 0`.
pub fn hermitian_general_formula(p: usize, q: usize, n: usize) -> Result<CliffPoly> {
    check_n(n, 2)?;
    if p <= q {
        return Err(Error::range(format!("the six-term formula needs p > q, got ({p},{q})")));
    }
    let mut ctx = HermCtx::new(n);
    general_closed(&mut ctx, p, q)
}

/// The normalised closed-form Hermitian kernel.
pub fn hermitian_kernel_closed(p: usize, q: usize, n: usize) -> Result<KernelPoly> {
    let un = hermitian_unnormalized_closed(p, q, n)?;
    let d = normalization_dpq(p, q, n)?;
    Ok(KernelPoly::new("hermitian", &[("n", n), ("p", p), ("q", q)], (p, q), un.left_mul(&d.value)))
}

/// Complex conjugate of a complex-chart polynomial as a function.
pub fn conjugate_function(poly: &CliffPoly) -> CliffPoly {
    let m = poly.dim();
    let n = m / 2;
    let slots = if poly.roster() == Roster::Pair { 2 } else { 1 };
    let mut out = poly.like();
    for (mono, c) in poly.terms() {
        let mut e = *mono.exps();
        for s in 0..slots {
            for j in 0..n {
                e.swap(s * m + j, s * m + n + j);
            }
        }
        out.add_term(Monomial::from_exps(&e[..poly.nvars()]), c.complex_conj());
    }
    out
}

// ---- verification ----

/// Residual rendering kept short enough for a report line.
pub fn short(text: String) -> String {
    const LIMIT: usize = 240;
    if text.len() <= LIMIT {
        return text;
    }
    let cut = (0..=LIMIT).rev().find(|&i| text.is_char_boundary(i)).unwrap_or(0);
    format!("{}...", &text[..cut])
}

fn diff(a: &CliffPoly, b: &CliffPoly) -> Option<String> {
    (a != b).then(|| short((a - b).render()))
}

fn single_one(m: usize, chart: Chart) -> CliffPoly {
    CliffPoly::one(m, Roster::Single, chart)
}

fn scalar_monomials(m: usize, chart: Chart, nvars: usize, deg: usize) -> Vec<CliffPoly> {
    crate::cliffpoly::monomials(nvars, deg)
        .into_iter()
        .map(|mono| CliffPoly::monomial(m, Roster::Single, chart, mono, Multivector::one(m)))
        .collect()
}

fn table(kind: Pairing, k: &CliffPoly) -> KernelTable {
    KernelTable::new(kind, k).expect("paired kernel")
}

/// Fischer kernel `<x,y>^k/k!` against every monomial of degree up to `k_max`.
pub fn verify_fischer_euclidean(m: usize, k_max: usize) -> Result<Vec<Check>> {
    let mut c = Check::new("fischer-kernel-euclidean", "Fischer kernel Z_k reproduces P_k").param("m", m).param("k_max", k_max);
    for k in 0..=k_max {
        let tab = table(Pairing::Fischer, &fischer_kernel_euclidean(k, m)?.poly);
        for l in 0..=k_max {
            for e in scalar_monomials(m, Chart::Real, m, l) {
                let want = if l == k { e.clone() } else { e.like() };
                c.record(|| format!("k={k}, P={e}"), diff(&tab.pair(&e), &want));
            }
        }
    }
    Ok(vec![c])
}

/// Zonal harmonics: reproduction over full harmonic bases, cross-degree annihilation, harmonicity.
pub fn verify_zonal(m: usize, k_max: usize) -> Result<Vec<Check>> {
    let mut rep = Check::new("zonal-reproduction", "Thm harmkernel1").param("m", m).param("k_max", k_max);
    let mut harm = Check::new("zonal-harmonic", "Thm harmkernel1, Delta_x K = 0").param("m", m).param("k_max", k_max);
    for k in 0..=k_max {
        let kp = zonal_harmonic(k, m)?.poly;
        let lap = kp.apply_in(OperatorTag::Laplace, Side::Left, Slot::X)?;
        harm.record(|| format!("k={k}"), (!lap.is_zero()).then(|| short(lap.render())));
        let tab = table(Pairing::Sphere, &kp);
        for l in 0..=k_max {
            for e in &basis(Space::Harmonic { m, k: l })?.elements {
                let want = if l == k { e.clone() } else { e.like() };
                rep.record(|| format!("k={k}, l={l}, H={e}"), diff(&tab.pair(e), &want));
            }
        }
    }
    Ok(vec![rep, harm])
}

/// Monogenic kernel: reproduction, annihilation of `x M`, closed versus operational form,
/// grade support, conjugation and monogenicity.
pub fn verify_monogenic(m: usize, k_max: usize) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("m", m).param("k_max", k_max);
    let mut rep1 = tagged("rep1", "Thm RepKernel1 (rep1)");
    let mut rep2 = tagged("rep2", "Thm RepKernel1 (rep2)");
    let mut act = tagged("monogenic-operational", "Thm action2");
    let mut grades = tagged("monogenic-grades", "kernel grades in {0,2}");
    let mut conj = tagged("monogenic-conjugation", "Remark after Thm RepKernel1");
    let mut mono = tagged("monogenic-null", "dx K = 0, Delta_x K = 0");
    let x = single_one(m, Chart::Real).apply(OperatorTag::VecX, Side::Left)?;
    for k in 0..=k_max {
        let closed = monogenic_kernel_closed(k, m)?.poly;
        let oper = monogenic_kernel_operational(k, m)?.poly;
        act.record(|| format!("k={k}"), diff(&closed, &oper));
        let g = closed.grades();
        grades.expect(g.iter().all(|&d| d == 0 || d == 2), || format!("k={k}"), || format!("grades {g:?}"));
        let flipped = closed.map_coeffs(|c| &c.grade_part(0) - &c.grade_part(2));
        conj.record(|| format!("k={k}"), diff(&closed.map_coeffs(|c| c.conj()), &flipped));
        let d = closed.apply_in(OperatorTag::DiracX, Side::Left, Slot::X)?;
        let l = closed.apply_in(OperatorTag::Laplace, Side::Left, Slot::X)?;
        mono.expect(d.is_zero() && l.is_zero(), || format!("k={k}"), || short(format!("{} | {}", d.render(), l.render())));
        let tab = table(Pairing::Sphere, &closed);
        for l in 0..=k_max {
            for e in &basis(Space::Monogenic { m, k: l })?.elements {
                let want = if l == k { e.clone() } else { e.like() };
                rep1.record(|| format!("k={k}, l={l}, M={e}"), diff(&tab.pair(e), &want));
                let xe = &x * e;
                let got = tab.pair(&xe);
                rep2.record(|| format!("k={k}, l={l}, M={e}"), (!got.is_zero()).then(|| short(got.render())));
            }
        }
    }
    Ok(vec![rep1, rep2, act, grades, conj, mono])
}

/// Hermitian Fischer kernel against every bihomogeneous monomial with `s, t <= pq_max`.
pub fn verify_fischer_hermitian(n: usize, pq_max: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let mut c = Check::new("fischer-kernel-hermitian", "Fischer kernel Z_{p,q} reproduces P_{s,t}").param("n", n).param("pq_max", pq_max);
    for p in 0..=pq_max {
        for q in 0..=pq_max {
            let tab = table(Pairing::Fischer, &fischer_kernel_hermitian(p, q, n)?.poly);
            for s in 0..=pq_max {
                for t in 0..=pq_max {
                    for mono in crate::cliffpoly::bihomogeneous_monomials(n, s, t) {
                        let e = CliffPoly::monomial(m, Roster::Single, Chart::Complex, mono, Multivector::one(m));
                        let want = if (s, t) == (p, q) { e.clone() } else { e.like() };
                        c.record(|| format!("(p,q)=({p},{q}), P={e}"), diff(&tab.pair(&e), &want));
                    }
                }
            }
        }
    }
    Ok(vec![c])
}

/// Koornwinder kernels: reproduction over full bases, Hermitian symmetry and harmonicity.
pub fn verify_koornwinder(n: usize, pq_max: usize) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n).param("pq_max", pq_max);
    let mut rep = tagged("koornwinder-reproduction", "Thm harmkernel2");
    let mut sym = tagged("hermitian-symmetry", "Cor symm, Hermitian symmetry");
    let mut harm = tagged("koornwinder-harmonic", "Thm harmkernel2, Delta_z K = 0");
    for p in 0..=pq_max {
        for q in 0..=pq_max {
            let k = koornwinder_kernel(p, q, n)?.poly;
            let kt = koornwinder_kernel(q, p, n)?.poly;
            let swapped = k.swap_slots()?;
            let conj = conjugate_function(&k);
            sym.record(|| format!("(p,q)=({p},{q}) conj"), diff(&conj, &kt));
            sym.record(|| format!("(p,q)=({p},{q}) swap"), diff(&swapped, &kt));
            let lap = k.apply_in(OperatorTag::Laplace, Side::Left, Slot::X)?;
            harm.record(|| format!("(p,q)=({p},{q})"), (!lap.is_zero()).then(|| short(lap.render())));
            let tab = table(Pairing::Sphere, &k);
            for s in 0..=pq_max {
                for t in 0..=pq_max {
                    for e in &basis(Space::BiHarmonic { n, p: s, q: t })?.elements {
                        let want = if (s, t) == (p, q) { e.clone() } else { e.like() };
                        rep.record(|| format!("(p,q)=({p},{q}), H={e}"), diff(&tab.pair(e), &want));
                    }
                }
            }
        }
    }
    Ok(vec![rep, sym, harm])
}

/// Each stage of the operational route against its closed form, and operator-order independence.
pub fn verify_stages(p: usize, q: usize, n: usize) -> Result<Vec<Check>> {
    let anchors = ["Lemma Dirac1", "Lemma Dirac2", "Lemma Dirac3"];
    let trace = hermitian_trace(p, q, n)?;
    let mut out = Vec::new();
    for (i, anchor) in anchors.iter().enumerate() {
        let mut c = Check::new(&format!("dirac-stage{}", i + 1), anchor).param("n", n).param("p", p).param("q", q);
        if p > q {
            let closed = dirac_stage_closed(i + 1, p, q, n)?;
            c.record(|| format!("(p,q,n)=({p},{q},{n}) {}", STAGE_NAMES[i]), diff(&trace.stages[i], &closed));
        }
        out.push(c);
    }
    let mut ord = Check::new("operator-order", "order of the two Dirac operators").param("n", n).param("p", p).param("q", q);
    ord.record(|| format!("(p,q,n)=({p},{q},{n})"), diff(&hermitian_swapped_order(p, q, n)?, &trace.stages[3]));
    out.push(ord);
    Ok(out)
}

/// Closed forms of the full operator sandwich against the operational route.
pub fn verify_closed_forms(n: usize, p_max: usize) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n).param("p_max", p_max);
    let mut d4 = tagged("dirac4", "Thm Dirac4");
    let mut qz = tagged("dirac4-q0", "Thm Dirac4, q = 0 lemma");
    let mut pz = tagged("dirac4-p0", "Thm Dirac4, symmetric q = 0 lemma");
    let mut diag = tagged("dirac4-diagonal", "Thm Dirac4, p = q lemma");
    let mut symm = tagged("corollary-symm", "Cor symm");
    let mut ctx = HermCtx::new(n);
    for p in 0..=p_max {
        for q in 0..=p_max {
            let oper = trace_in(&mut ctx, p, q)?.stages[3].clone();
            let tag = || format!("(p,q,n)=({p},{q},{n})");
            if p > q {
                d4.record(tag, diff(&general_closed(&mut ctx, p, q)?, &oper));
            }
            let closed = unnormalized_closed_in(&mut ctx, p, q)?;
            match closed_case(p, q) {
                ClosedCase::General => {}
                ClosedCase::QZero => qz.record(tag, diff(&closed, &oper)),
                ClosedCase::PZero => pz.record(tag, diff(&closed, &oper)),
                ClosedCase::Diagonal => diag.record(tag, diff(&closed, &oper)),
                ClosedCase::Symmetric => symm.record(tag, diff(&closed, &oper)),
            }
        }
    }
    Ok(vec![d4, qz, pz, diag, symm])
}

/// Reproduction and the three annihilation identities for `K~_{p,q}` over full
/// `M^(j)_{s,t}` bases, `s, t <= st_max`, every `j`; plus h-monogenicity and grade support.
pub fn verify_hermitian_reproduction(n: usize, p: usize, q: usize, st_max: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n).param("p", p).param("q", q).param("st_max", st_max);
    let mut rep3 = tagged("rep3", "Thm RepKernel2 (rep3)");
    let mut rep4 = tagged("rep4", "Thm RepKernel2 (rep4)");
    let mut rep5 = tagged("rep5", "Thm RepKernel2 (rep5)");
    let mut rep6 = tagged("rep6", "Thm RepKernel2 (rep6)");
    let mut hm = tagged("kernel-h-monogenic", "dz K~ = dzdag K~ = 0");
    let mut gr = tagged("kernel-grades", "unnormalized kernel grades in {0,2,4}");
    let mut grn = tagged("kernel-grades-normalized", "d_pq(beta) K grades even, at most 2n");
    let mut bi = tagged("kernel-bidegree", "bihomogeneous of degree (p,q)");
    let kernel = hermitian_kernel_closed(p, q, n)?.poly;
    let tag = || format!("(p,q,n)=({p},{q},{n})");
    for t in [OperatorTag::DiracZ, OperatorTag::DiracZdag] {
        let d = kernel.apply_in(t, Side::Left, Slot::X)?;
        hm.record(|| format!("{} {}", tag(), t.name()), (!d.is_zero()).then(|| short(d.render())));
    }
    let g = hermitian_unnormalized_closed(p, q, n)?.grades();
    gr.expect(g.iter().all(|&d| d % 2 == 0 && d <= 4), tag, || format!("grades {g:?}"));
    let g = kernel.grades();
    grn.expect(g.iter().all(|&d| d % 2 == 0 && d <= 2 * n), tag, || format!("grades {g:?}"));
    let bx = kernel.bidegree(Slot::X)?;
    let by = kernel.bidegree(Slot::Y)?;
    bi.expect(kernel.is_zero() || (bx == Some((p, q)) && by == Some((q, p))), tag, || format!("x: {bx:?}, y: {by:?}"));
    let tab = table(Pairing::Sphere, &kernel);
    let one = single_one(m, Chart::Complex);
    let z = one.apply(OperatorTag::VecZ, Side::Left)?;
    let zd = one.apply(OperatorTag::VecZdag, Side::Left)?;
    let zzd = &z * &zd;
    let zdz = &zd * &z;
    for s in 0..=st_max {
        for t in 0..=st_max {
            for j in 0..=n {
                for e in &basis(Space::HMonogenic { n, j, p: s, q: t })?.elements {
                    let at = || format!("(p,q)=({p},{q}), (s,t)=({s},{t}), j={j}, M={e}");
                    let want = if (s, t) == (p, q) { e.clone() } else { e.like() };
                    rep3.record(at, diff(&tab.pair(e), &want));
                    let r4 = tab.pair(&(&z * e));
                    rep4.record(at, (!r4.is_zero()).then(|| short(r4.render())));
                    let r5 = tab.pair(&(&zd * e));
                    rep5.record(at, (!r5.is_zero()).then(|| short(r5.render())));
                    let a = tab.pair(&(&zzd * e));
                    let b = tab.pair(&(&zdz * e));
                    let d1 = (t + n) as i64 - j as i64;
                    let d2 = (s + j) as i64;
                    let r6 = if d1 != 0 && d2 != 0 {
                        let c = &a.scale_rational(&r(d1).recip()) - &b.scale_rational(&r(d2).recip());
                        (!c.is_zero()).then(|| short(c.render()))
                    } else {
                        // a pole in one constant: both summands must vanish on their own
                        (!a.is_zero() || !b.is_zero()).then(|| short(format!("{} | {}", a.render(), b.render())))
                    };
                    rep6.record(at, r6);
                }
            }
        }
    }
    Ok(vec![rep3, rep4, rep5, rep6, hm, gr, grn, bi])
}

/// Normalisation identity for `d_{p,q}` and the Lagrange properties.
pub fn verify_normalization(n: usize, pq_max: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let b = beta(n);
    let sc = |v: i64| Multivector::scalar(m, Gr::from_int(v));
    let mut norm = Check::new("norm", "Thm RepKernel2 (norm)").param("n", n).param("pq_max", pq_max);
    for p in 0..=pq_max {
        for q in 0..=pq_max {
            let d = normalization_dpq(p, q, n)?;
            let s = r((n + p + q + 1) as i64);
            let lhs = (&(&(&sc((n + q) as i64) - &b) * &(&b + &sc(p as i64))) * &d.value).scale_rational(&(&s * &s));
            // away from dropped nodes the identity holds on the remaining eigenspaces
            let mut rhs = Multivector::zero(m);
            for j in 0..=n {
                if !d.dropped.contains(&j) {
                    rhs += &lagrange(n, j)?;
                }
            }
            norm.expect(lhs == rhs, || format!("n={n}, (p,q)=({p},{q}), dropped={:?}", d.dropped), || short((&lhs - &rhs).render()));
        }
    }
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n);
    let (mut l1, mut l2, mut l3) = (tagged("L1", "Lemma lagrange (L1)"), tagged("L2", "Lemma lagrange (L2)"), tagged("L3", "Lemma lagrange (L3)"));
    let mut sum = Multivector::zero(m);
    let nb = &sc(n as i64) - &b;
    for j in 0..=n {
        let lj = lagrange(n, j)?;
        sum += &lj;
        let lhs = &b * &lj;
        let rhs = lj.scale(&Gr::from_int(j as i64));
        l2.expect(lhs == rhs, || format!("j={j}"), || short((&lhs - &rhs).render()));
        // L_j(n - beta) from the product form
        let mut at = Multivector::one(m);
        for i in 0..=n {
            if i != j {
                at = (&at * &(&nb - &sc(i as i64))).scale_rational(&r(j as i64 - i as i64).recip());
            }
        }
        let other = lagrange(n, n - j)?;
        l3.expect(at == other, || format!("j={j}"), || short((&at - &other).render()));
    }
    let one = Multivector::one(m);
    l1.expect(sum == one, || format!("n={n}"), || short((&sum - &one).render()));
    Ok(vec![norm, l1, l2, l3])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_real(src: &str, m: usize) -> CliffPoly {
        CliffPoly::parse_in(src, m, Roster::Pair, Chart::Real).unwrap()
    }

    #[test]
    fn zonal_examples() {
        assert_eq!(zonal_harmonic(0, 3).unwrap().poly, pair_real("1", 3));
        for m in 2..=5 {
            let expected = EuclidCtx::new(m).xy.scale_rational(&r(m as i64));
            assert_eq!(zonal_harmonic(1, m).unwrap().poly, expected);
        }
        // Chebyshev limit at m = 2: 2 T_2(t) |x|^2 |y|^2
        let k2 = zonal_harmonic(2, 2).unwrap().poly;
        assert_eq!(k2, pair_real("2*x1^2*y1^2 - 2*x1^2*y2^2 + 8*x1*x2*y1*y2 - 2*x2^2*y1^2 + 2*x2^2*y2^2", 2));
        assert_eq!(zonal_harmonic(3, 3).unwrap().poly.apply_in(OperatorTag::Laplace, Side::Left, Slot::X).unwrap().len(), 0);
    }

    #[test]
    fn monogenic_examples() {
        assert_eq!(monogenic_kernel_closed(0, 3).unwrap().poly, pair_real("1", 3));
        let k1 = monogenic_kernel_closed(1, 4).unwrap().poly;
        let ctx = EuclidCtx::new(4);
        assert_eq!(k1, &ctx.xy.scale_rational(&r(3)) + &ctx.wedge());
        for m in 3..=4 {
            for k in 0..=2 {
                assert_eq!(monogenic_kernel_closed(k, m).unwrap().poly, monogenic_kernel_operational(k, m).unwrap().poly, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn koornwinder_examples() {
        for n in 2..=3 {
            let mut ctx = HermCtx::new(n);
            assert_eq!(koornwinder_kernel(0, 0, n).unwrap().poly, ctx.one());
            let expected = ctx.a.scale_rational(&Rational::from_int(n as i64));
            assert_eq!(koornwinder_kernel(1, 0, n).unwrap().poly, expected);
            let k21 = koornwinder_kernel(2, 1, n).unwrap().poly;
            assert!(k21.apply_in(OperatorTag::Laplace, Side::Left, Slot::X).unwrap().is_zero());
            assert_eq!(k21.bidegree(Slot::X).unwrap(), Some((2, 1)));
            let _ = ctx.abcd([1, 1, 1, 1]);
        }
    }

    #[test]
    fn normalization_identity() {
        for n in 1..=3 {
            for p in 0..=2 {
                for q in 0..=2 {
                    let d = normalization_dpq(p, q, n).unwrap();
                    let m = 2 * n;
                    let b = beta(n);
                    let s = r((n + p + q + 1) as i64);
                    let lhs = &(&(&Multivector::scalar(m, Gr::real(&s * &s)) * &(&Multivector::scalar(m, Gr::from_int((n + q) as i64)) - &b))
                        * &(&b + &Multivector::scalar(m, Gr::from_int(p as i64))))
                        * &d.value;
                    if d.dropped.is_empty() {
                        assert_eq!(lhs, Multivector::one(m));
                    }
                }
            }
        }
    }

    #[test]
    fn stated_and_corrected_constants() {
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(koornwinder_constant(p, q, 2), koornwinder_constant_stated(p, q, 2));
                for n in 3..=4 {
                    let ratio = &koornwinder_constant(p, q, n) / &koornwinder_constant_stated(p, q, n);
                    assert_eq!(ratio, binomial(n - 2 + p.max(q), p.max(q)));
                }
            }
        }
        for n in 1..=2 {
            for (p, q) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
                let stated = fischer_kernel_hermitian_stated(p, q, n).unwrap();
                let fixed = fischer_kernel_hermitian(p, q, n).unwrap().poly;
                assert_eq!(stated, fixed.scale_rational(&Rational::from_int(1 << (p + q))));
            }
        }
    }

    #[test]
    fn normalization_raises_grade_at_n3() {
        let un = hermitian_unnormalized_closed(1, 0, 3).unwrap().grades();
        assert!(un.iter().all(|&g| g <= 4));
        let full = hermitian_kernel_closed(1, 0, 3).unwrap().poly.grades();
        assert!(full.contains(&6));
    }

    #[test]
    fn stage_one_matches_lemma() {
        let t = hermitian_trace(2, 1, 2).unwrap();
        assert_eq!(t.stages[0], dirac_stage_closed(1, 2, 1, 2).unwrap());
    }
}
