//! Verification suites: parameter grids over the identities of every module,
//! evaluated in parallel with deterministic report order.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::clifford::{beta, spinor_basis, witt, witt_dagger, Multivector};
use crate::cliffpoly::{monomials, verify_charts, verify_duality, verify_laplace, verify_osp, verify_sl12, Chart, CliffPoly, OperatorTag, Roster, Side};
use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational as Gr, Rational};
use crate::kernels;
use crate::orthopoly::{verify_gegenbauer_relations, verify_jacobi_recurrences, verify_jacobi_special};
use crate::report::{Check, Report};
use crate::spaces::{self, basis, fischer_decompose_euclidean, fischer_decompose_hermitian, hermitian_sector_degenerate, EuclideanMode, Space};

/// Suite names accepted by [`run`], in the order `all` runs them.
pub const SUITES: [&str; 8] = [
    "orthopoly",
    "algebra",
    "operators",
    "duality",
    "kernels-euclidean",
    "kernels-hermitian",
    "normalization",
    "decompositions",
];

/// Overrides of the default grids. `m` and `n` pin a single dimension; the maxima cap degrees.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Grid {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub k_max: Option<usize>,
    pub p_max: Option<usize>,
    pub q_max: Option<usize>,
    pub deg_max: Option<usize>,
    pub seed: Option<u64>,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        let bound = |name: &str, v: Option<usize>, lo: usize, hi: usize| match v {
            Some(x) if x < lo || x > hi => Err(Error::range(format!("{name} = {x} outside {lo}..={hi}"))),
            _ => Ok(()),
        };
        bound("m", self.m, 1, 8)?;
        bound("n", self.n, 1, 4)?;
        bound("k_max", self.k_max, 0, 8)?;
        bound("p_max", self.p_max, 0, 6)?;
        bound("q_max", self.q_max, 0, 6)?;
        bound("deg_max", self.deg_max, 0, 6)
    }

    fn ms(&self, lo: usize, hi: usize) -> Vec<usize> {
        match self.m {
            Some(m) => vec![m],
            None => (lo..=hi).collect(),
        }
    }

    fn ns(&self, lo: usize, hi: usize) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => (lo..=hi).collect(),
        }
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0x5eed_c11f)
    }
}

fn workers() -> usize {
    std::env::var("CK_WORKERS").ok().and_then(|v| v.parse().ok()).filter(|&w| w > 0).unwrap_or(0)
}

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| rayon::ThreadPoolBuilder::new().num_threads(workers()).build().expect("thread pool"))
}

type Unit = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

fn unit(f: impl Fn() -> Result<Vec<Check>> + Send + Sync + 'static) -> Unit {
    Box::new(f)
}

fn ok(checks: Vec<Check>) -> Result<Vec<Check>> {
    Ok(checks)
}

/// Evaluates units in parallel and merges checks with the same id, in first-seen order.
fn evaluate(units: Vec<Unit>) -> Result<Vec<Check>> {
    let results: Vec<Result<Vec<Check>>> = pool().install(|| units.par_iter().map(|u| u()).collect());
    let mut order: Vec<String> = Vec::new();
    let mut merged: BTreeMap<String, (Check, BTreeMap<String, Vec<String>>)> = BTreeMap::new();
    for res in results {
        for c in res? {
            let entry = merged.entry(c.identity.clone()).or_insert_with(|| {
                order.push(c.identity.clone());
                let mut base = Check::new(&c.identity, &c.anchor);
                base.note = c.note.clone();
                (base, BTreeMap::new())
            });
            for (k, v) in &c.parameters {
                let vals = entry.1.entry(k.clone()).or_default();
                if !vals.contains(v) {
                    vals.push(v.clone());
                }
            }
            entry.0.absorb(c);
        }
    }
    Ok(order
        .into_iter()
        .map(|id| {
            let (mut c, params) = merged.remove(&id).expect("merged check");
            for (k, vals) in params {
                c.parameters.insert(k, vals.join(","));
            }
            c
        })
        .collect())
}

/// Runs one suite, or every suite for `all`.
pub fn run(suite: &str, grid: &Grid) -> Result<Vec<Report>> {
    grid.validate()?;
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s, grid)).collect();
    }
    Ok(vec![run_one(suite, grid)?])
}

/// Runs one suite and records its wall-clock time.
pub fn run_timed(suite: &str, grid: &Grid) -> Result<(Report, u128)> {
    grid.validate()?;
    let start = Instant::now();
    let report = run_one(suite, grid)?;
    Ok((report, start.elapsed().as_millis()))
}

fn run_one(suite: &str, grid: &Grid) -> Result<Report> {
    let (report, units) = match suite {
        "orthopoly" => orthopoly(grid),
        "algebra" => algebra(grid),
        "operators" => operators(grid),
        "duality" => duality(grid),
        "kernels-euclidean" => kernels_euclidean(grid),
        "kernels-hermitian" => kernels_hermitian(grid),
        "normalization" => normalization(grid),
        "decompositions" => decompositions(grid),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let mut report = report;
    report.extend(evaluate(units)?);
    Ok(report)
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

// ---- orthopoly ----

fn orthopoly(grid: &Grid) -> (Report, Vec<Unit>) {
    let k_max = grid.k_max.unwrap_or(6) as i64;
    let p_max = grid.p_max.unwrap_or(6) as i64;
    let g_max = grid.k_max.unwrap_or(8) as i64;
    let ns: Vec<i64> = grid.ns(2, 4).into_iter().map(|n| n as i64).collect();
    let report = Report::new("orthopoly").grid("k_max", k_max).grid("a,b", "0..4").grid("n", list(&ns.iter().map(|&n| n as usize).collect::<Vec<_>>())).grid("p_max", p_max).grid("gegenbauer_k_max", g_max);
    let mut units = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 {
            units.push(unit(move || ok(verify_jacobi_recurrences(k_max, &[(Rational::from_int(a), Rational::from_int(b))]))));
        }
    }
    units.push(unit(move || ok(verify_jacobi_special(k_max, &ns, p_max))));
    for twice in 1..=5 {
        units.push(unit(move || ok(verify_gegenbauer_relations(g_max, &[Rational::new(twice, 2)]))));
    }
    (report, units)
}

// ---- algebra ----

fn clifford_relations(m: usize) -> Vec<Check> {
    let mut gen = Check::new("clifford-generators", "e_j e_k + e_k e_j = -2 delta_jk").param("m", m);
    let mut assoc = Check::new("clifford-associativity", "associativity on blades").param("m", m);
    let mut conj = Check::new("clifford-conjugation", "(XY)^dagger = Y^dagger X^dagger").param("m", m);
    let e = |j: usize| Multivector::basis(m, j).expect("generator index");
    for j in 1..=m {
        for k in 1..=m {
            let lhs = &(&e(j) * &e(k)) + &(&e(k) * &e(j));
            let rhs = Multivector::scalar(m, Gr::from_int(if j == k { -2 } else { 0 }));
            gen.expect(lhs == rhs, || format!("j={j}, k={k}"), || (&lhs - &rhs).render());
        }
    }
    let small = m.min(4);
    let blades: Vec<Multivector> = (0..(1u32 << small)).map(|b| Multivector::blade(m, b, Gr::new(Rational::from_int(1), Rational::from_int(b as i64 % 3)))).collect();
    for a in &blades {
        for b in &blades {
            let lhs = (a * b).conj();
            let rhs = &b.conj() * &a.conj();
            conj.expect(lhs == rhs, || format!("X={}, Y={}", a.render(), b.render()), || (&lhs - &rhs).render());
            for c in blades.iter().step_by(3) {
                let l = &(a * b) * c;
                let r = a * &(b * c);
                assoc.expect(l == r, || format!("{} {} {}", a.render(), b.render(), c.render()), || (&l - &r).render());
            }
        }
    }
    vec![gen, assoc, conj]
}

fn witt_relations(n: usize) -> Vec<Check> {
    let m = 2 * n;
    let mut grass = Check::new("grassmann", "f_j f_k^dagger + f_k^dagger f_j = delta_jk").param("n", n);
    let mut dual = Check::new("witt", "Witt duality (witt)").param("n", n);
    let zero = Multivector::zero(m);
    for j in 1..=n {
        for k in 1..=n {
            let (fj, fk) = (witt(n, j).expect("index"), witt(n, k).expect("index"));
            let (dj, dk) = (witt_dagger(n, j).expect("index"), witt_dagger(n, k).expect("index"));
            let lhs = &(&fj * &dk) + &(&dk * &fj);
            let rhs = Multivector::scalar(m, Gr::from_int((j == k) as i64));
            grass.expect(lhs == rhs, || format!("j={j}, k={k}"), || (&lhs - &rhs).render());
            let a = &(&fj * &fk) + &(&fk * &fj);
            let b = &(&dj * &dk) + &(&dk * &dj);
            dual.expect(a == zero && b == zero, || format!("j={j}, k={k}"), || format!("{} | {}", a.render(), b.render()));
        }
    }
    vec![grass, dual]
}

fn beta_relations(n: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n);
    let mut sym = tagged("beta-symmetry", "Lemma beta, symmetry relations");
    let mut comm = tagged("comm1", "Lemma beta (comm1)");
    let mut fac = tagged("betafactor", "Lemma beta (betafactor)");
    let mut nil = tagged("nilpotency", "Remark nil");
    let b = beta(n);
    let nb = &Multivector::scalar(m, Gr::from_int(n as i64)) - &b;
    for chart in [Chart::Real, Chart::Complex] {
        let one = CliffPoly::one(m, Roster::Single, chart);
        let z = one.apply(OperatorTag::VecZ, Side::Left)?;
        let zd = one.apply(OperatorTag::VecZdag, Side::Left)?;
        let cst = |c: &Multivector| CliffPoly::constant(m, Roster::Single, chart, c.clone());
        let cases = [
            ("dz z = beta", z.apply(OperatorTag::DiracZ, Side::Left)?, cst(&b)),
            ("zdag dzdag = beta", zd.apply(OperatorTag::DiracZdag, Side::Right)?, cst(&b)),
            ("z dz = n - beta", z.apply(OperatorTag::DiracZ, Side::Right)?, cst(&nb)),
            ("dzdag zdag = n - beta", zd.apply(OperatorTag::DiracZdag, Side::Left)?, cst(&nb)),
        ];
        for (name, lhs, rhs) in cases {
            sym.expect(lhs == rhs, || format!("{name}, chart={chart:?}"), || (&lhs - &rhs).render());
        }
        let one_mv = Multivector::one(m);
        let l = z.left_mul(&b);
        let r = z.right_mul(&(&b - &one_mv));
        comm.expect(l == r, || format!("beta z, chart={chart:?}"), || (&l - &r).render());
        let l = zd.left_mul(&b);
        let r = zd.right_mul(&(&b + &one_mv));
        comm.expect(l == r, || format!("beta zdag, chart={chart:?}"), || (&l - &r).render());
        let zz = &z * &z;
        let zdzd = &zd * &zd;
        nil.expect(zz.is_zero() && zdzd.is_zero(), || format!("chart={chart:?}"), || format!("{} | {}", zz.render(), zdzd.render()));
    }
    let mut prod = Multivector::one(m);
    for j in 0..=n {
        prod = &prod * &(&b - &Multivector::scalar(m, Gr::from_int(j as i64)));
    }
    fac.expect(prod.is_zero(), || format!("n={n}"), || prod.render());
    Ok(vec![sym, comm, fac, nil])
}

fn spinor_eigen(n: usize) -> Result<Vec<Check>> {
    let mut c = Check::new("spinor-beta-eigenvalue", "beta acts as j on S^(j)").param("n", n);
    let b = beta(n);
    for j in 0..=n {
        let sb = spinor_basis(n, j)?;
        for v in &sb.vectors {
            let lhs = &b * v;
            let rhs = v.scale(&Gr::from_int(j as i64));
            c.expect(lhs == rhs, || format!("j={j}, s={}", v.render()), || (&lhs - &rhs).render());
        }
    }
    Ok(vec![c])
}

fn algebra(grid: &Grid) -> (Report, Vec<Unit>) {
    let ms = grid.ms(1, 6);
    let ns = grid.ns(1, 4);
    let spin_ns = grid.ns(1, 3);
    let report = Report::new("algebra").grid("m", list(&ms)).grid("n", list(&ns)).grid("spinor_n", list(&spin_ns));
    let mut units = Vec::new();
    for m in ms {
        units.push(unit(move || ok(clifford_relations(m))));
    }
    for &n in &ns {
        units.push(unit(move || ok(witt_relations(n))));
        units.push(unit(move || beta_relations(n)));
    }
    for n in spin_ns {
        units.push(unit(move || spinor_eigen(n)));
    }
    (report, units)
}

// ---- operators ----

fn operators(grid: &Grid) -> (Report, Vec<Unit>) {
    let deg = grid.deg_max.unwrap_or(4);
    let ms = grid.ms(1, 5);
    let ns = grid.ns(1, 3);
    let lap_ms: Vec<usize> = match grid.m {
        Some(m) => vec![m],
        None => {
            let mut v: Vec<usize> = (1..=5).collect();
            v.extend(ns.iter().map(|n| 2 * n).filter(|m| *m > 5));
            v
        }
    };
    let report = Report::new("operators").grid("deg_max", deg).grid("m", list(&ms)).grid("n", list(&ns)).grid("laplace_m", list(&lap_ms));
    let mut units = Vec::new();
    for &m in &ms {
        units.push(unit(move || ok(verify_osp(m, deg))));
    }
    for &n in &ns {
        units.push(unit(move || ok(verify_sl12(n, deg))));
    }
    for &m in &lap_ms {
        units.push(unit(move || ok(verify_laplace(m, deg))));
    }
    for m in ms.into_iter().filter(|m| m % 2 == 0 && *m <= 4) {
        units.push(unit(move || ok(verify_charts(m, deg.min(3)))));
    }
    (report, units)
}

// ---- duality ----

fn duality(grid: &Grid) -> (Report, Vec<Unit>) {
    let deg = grid.deg_max.unwrap_or(3);
    let k_max = grid.k_max.unwrap_or(4);
    let ms = grid.ms(1, 5);
    let prop_ms: Vec<usize> = ms.iter().copied().filter(|&m| m >= 2).collect();
    let report = Report::new("duality").grid("deg_max", deg).grid("m", list(&ms)).grid("k_max", k_max);
    let mut units = Vec::new();
    for &m in &ms {
        units.push(unit(move || ok(verify_duality(m, deg))));
    }
    for m in prop_ms {
        units.push(unit(move || spaces::verify_proportionality(m, k_max)));
    }
    (report, units)
}

// ---- kernels ----

fn kernels_euclidean(grid: &Grid) -> (Report, Vec<Unit>) {
    let k_max = grid.k_max.unwrap_or(3);
    let fischer_ms: Vec<usize> = grid.ms(1, 4);
    let zonal_ms: Vec<usize> = grid.ms(2, 5).into_iter().filter(|&m| m >= 2).collect();
    let mono_ms: Vec<usize> = grid.ms(3, 5).into_iter().filter(|&m| m >= 3).collect();
    let report = Report::new("kernels-euclidean")
        .grid("k_max", k_max)
        .grid("fischer_m", list(&fischer_ms))
        .grid("zonal_m", list(&zonal_ms))
        .grid("monogenic_m", list(&mono_ms));
    let mut units = Vec::new();
    for m in fischer_ms {
        units.push(unit(move || kernels::verify_fischer_euclidean(m, k_max)));
    }
    for m in zonal_ms {
        units.push(unit(move || kernels::verify_zonal(m, k_max)));
    }
    for m in mono_ms {
        units.push(unit(move || kernels::verify_monogenic(m, k_max)));
    }
    (report, units)
}

/// Triples for the staged comparison that are always included.
pub const STAGE_TRIPLES: [(usize, usize, usize); 4] = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 2, 3)];

fn kernels_hermitian(grid: &Grid) -> (Report, Vec<Unit>) {
    let p_max = grid.p_max.unwrap_or(2);
    let q_max = grid.q_max.unwrap_or(2);
    let st_max = p_max.max(q_max);
    let closed_max = grid.p_max.unwrap_or(3);
    let fischer_ns = grid.ns(1, 3);
    let ns: Vec<usize> = grid.ns(2, 3).into_iter().filter(|&n| n >= 2).collect();
    let triples: Vec<(usize, usize, usize)> = STAGE_TRIPLES.iter().copied().filter(|t| ns.contains(&t.2) && t.0 <= closed_max).collect();
    let report = Report::new("kernels-hermitian")
        .grid("p_max", p_max)
        .grid("q_max", q_max)
        .grid("closed_p_max", closed_max)
        .grid("fischer_n", list(&fischer_ns))
        .grid("n", list(&ns));
    let mut units = Vec::new();
    for n in fischer_ns {
        units.push(unit(move || kernels::verify_fischer_hermitian(n, st_max)));
    }
    for &n in &ns {
        units.push(unit(move || kernels::verify_koornwinder(n, st_max)));
        units.push(unit(move || kernels::verify_closed_forms(n, closed_max)));
    }
    for (p, q, n) in triples {
        units.push(unit(move || kernels::verify_stages(p, q, n)));
    }
    for &n in &ns {
        for p in 0..=p_max {
            for q in 0..=q_max {
                units.push(unit(move || kernels::verify_hermitian_reproduction(n, p, q, st_max)));
            }
        }
    }
    (report, units)
}

fn normalization(grid: &Grid) -> (Report, Vec<Unit>) {
    let pq_max = grid.p_max.unwrap_or(3).max(grid.q_max.unwrap_or(3));
    let ns = grid.ns(1, 4);
    let report = Report::new("normalization").grid("n", list(&ns)).grid("pq_max", pq_max);
    let units = ns.into_iter().map(|n| unit(move || kernels::verify_normalization(n, pq_max))).collect();
    (report, units)
}

// ---- decompositions ----

fn small_int(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(-3..=3);
    if v == 0 {
        1
    } else {
        v
    }
}

fn random_gr(rng: &mut ChaCha8Rng, complex: bool) -> Gr {
    let im = if complex { rng.gen_range(-2..=2) } else { 0 };
    Gr::new(Rational::from_int(small_int(rng)), Rational::from_int(im))
}

fn random_combination(elements: &[CliffPoly], like: &CliffPoly, rng: &mut ChaCha8Rng, complex: bool) -> CliffPoly {
    let mut acc = like.like();
    for e in elements {
        if rng.gen_bool(0.7) {
            acc += &e.scale(&random_gr(rng, complex));
        }
    }
    acc
}

fn residual(a: &CliffPoly, b: &CliffPoly) -> Option<String> {
    (a != b).then(|| kernels::short((a - b).render()))
}

fn nonzero(p: &CliffPoly) -> Option<String> {
    (!p.is_zero()).then(|| kernels::short(p.render()))
}

fn euclidean_decompositions(m: usize, k_max: usize, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("m", m).param("k_max", k_max).param("samples", samples);
    let mut re1 = tagged("fischer-scalar-reassembly", "Fischer decomposition of P_k");
    let mut an1 = tagged("fischer-scalar-harmonic", "Fischer decomposition of P_k, Delta H = 0");
    let mut or1 = tagged("fischer-scalar-orthogonal", "Fischer decomposition of P_k, orthogonality");
    let mut re2 = tagged("fischer2-reassembly", "(fischer2) H_k (x) Cl_m = M_k + x M_k-1");
    let mut an2 = tagged("fischer2-monogenic", "(fischer2), dx M = 0");
    let mut sh2 = tagged("fischer2-shape", "(fischer2), no x^j M for j >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64) << 8);
    let zero = CliffPoly::zero(m, Roster::Single, Chart::Real);
    let blades = 1u32 << m;
    for k in 0..=k_max {
        for sample in 0..samples {
            let tag = || format!("k={k}, sample={sample}");
            let monos: Vec<CliffPoly> = monomials(m, k)
                .into_iter()
                .map(|mono| CliffPoly::monomial(m, Roster::Single, Chart::Real, mono, Multivector::one(m)))
                .collect();
            let p = random_combination(&monos, &zero, &mut rng, false);
            let d = fischer_decompose_euclidean(&p, EuclideanMode::Scalar)?;
            re1.record(tag, residual(&d.reassemble(&p), &p));
            for c in &d.components {
                an1.record(|| format!("{} {}", tag(), c.label), nonzero(&c.inner.apply(OperatorTag::Laplace, Side::Left)?));
            }
            for (i, a) in d.components.iter().enumerate() {
                for b in d.components.iter().skip(i + 1) {
                    let ip = crate::cliffpoly::fischer_inner(&a.component, &b.component)?;
                    or1.expect(ip.is_zero(), || format!("{} {} vs {}", tag(), a.label, b.label), || ip.render());
                }
            }
            let harm = basis(Space::Harmonic { m, k })?;
            let mut h = zero.clone();
            for e in &harm.elements {
                let c = Multivector::blade(m, rng.gen_range(0..blades), random_gr(&mut rng, false));
                h += &e.left_mul(&c);
            }
            let d = fischer_decompose_euclidean(&h, EuclideanMode::Clifford)?;
            re2.record(tag, residual(&d.reassemble(&h), &h));
            for (j, c) in d.components.iter().enumerate() {
                an2.record(|| format!("{} {}", tag(), c.label), nonzero(&c.inner.apply(OperatorTag::DiracX, Side::Left)?));
                if j >= 2 {
                    sh2.record(|| format!("{} {}", tag(), c.label), nonzero(&c.component));
                }
            }
        }
    }
    Ok(vec![re1, an1, or1, re2, an2, sh2])
}

fn hermitian_decompositions(n: usize, pq_max: usize, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let m = 2 * n;
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n).param("pq_max", pq_max).param("samples", samples);
    let mut re = tagged("hermitian-fischer-reassembly", "four-part decomposition of H^(j)_pq");
    let mut hm = tagged("hermitian-fischer-h-monogenic", "four-part decomposition, dz M = dzdag M = 0");
    let mut dg = tagged("hermitian-fischer-degenerate", "four-part decomposition, degenerate sectors");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 16);
    for p in 0..=pq_max {
        for q in 0..=pq_max {
            for j in 0..=n {
                let hb = basis(Space::SpinorHarmonic { n, j, p, q })?;
                if hb.elements.is_empty() {
                    continue;
                }
                let degenerate = hermitian_sector_degenerate(n, j, p, q);
                for sample in 0..samples {
                    let tag = || format!("(p,q)=({p},{q}), j={j}, sample={sample}");
                    let h = random_combination(&hb.elements, &hb.elements[0], &mut rng, true);
                    let d = fischer_decompose_hermitian(&h, n, j, p, q)?;
                    let target = if degenerate { &mut dg } else { &mut re };
                    target.record(tag, residual(&d.reassemble(&h), &h));
                    for c in d.components.iter().filter(|c| c.label != "complement") {
                        let a = c.inner.apply(OperatorTag::DiracZ, Side::Left)?;
                        let b = c.inner.apply(OperatorTag::DiracZdag, Side::Left)?;
                        hm.expect(a.is_zero() && b.is_zero(), || format!("{} {}", tag(), c.label), || kernels::short(format!("{} | {}", a.render(), b.render())));
                    }
                }
                let _ = m;
            }
        }
    }
    Ok(vec![re, hm, dg])
}

fn decompositions(grid: &Grid) -> (Report, Vec<Unit>) {
    let k_max = grid.k_max.unwrap_or(4);
    let pq_max = grid.p_max.unwrap_or(2).max(grid.q_max.unwrap_or(2));
    let ms = grid.ms(2, 4);
    let ns = grid.ns(1, 3);
    let dim_ms = grid.ms(2, 5);
    let seed = grid.seed();
    let samples = 2;
    let report = Report::new("decompositions")
        .grid("m", list(&ms))
        .grid("k_max", k_max)
        .grid("n", list(&ns))
        .grid("pq_max", pq_max)
        .grid("seed", seed)
        .grid("samples", samples);
    let mut units = Vec::new();
    for &m in &ms {
        units.push(unit(move || euclidean_decompositions(m, k_max, samples, seed)));
    }
    for &n in &ns {
        units.push(unit(move || hermitian_decompositions(n, pq_max, samples, seed)));
    }
    for m in dim_ms {
        units.push(unit(move || spaces::verify_dimensions_euclidean(m, k_max)));
    }
    for n in ns {
        units.push(unit(move || spaces::verify_dimensions_hermitian(n, pq_max)));
    }
    (report, units)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_and_grid_bounds() {
        assert!(matches!(run("nope", &Grid::default()), Err(Error::UnknownSuite(_))));
        let g = Grid { n: Some(9), ..Grid::default() };
        assert!(g.validate().is_err());
    }

    #[test]
    fn small_grids_pass() {
        let g = Grid { m: Some(3), n: Some(2), k_max: Some(2), p_max: Some(1), q_max: Some(1), deg_max: Some(2), seed: None };
        for suite in ["orthopoly", "algebra", "operators", "duality", "kernels-euclidean", "normalization", "decompositions"] {
            for r in run(suite, &g).unwrap() {
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let g = Grid { m: Some(2), n: Some(1), k_max: Some(2), p_max: Some(1), q_max: Some(1), deg_max: Some(2), seed: Some(7) };
        let a = run("decompositions", &g).unwrap();
        let b = run("decompositions", &g).unwrap();
        assert_eq!(a, b);
    }
}
