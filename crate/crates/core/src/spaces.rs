//! Exact bases of polynomial spaces (homogeneous, harmonic, monogenic and
//! their Hermitian refinements) and the Fischer decompositions between them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::clifford::{spinor_basis, Multivector};
use crate::cliffpoly::{bihomogeneous_monomials, fischer_inner, monomials, sphere_inner, Chart, CliffPoly, Monomial, OperatorTag, Roster, Side};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, pochhammer, GaussianRational as Gr, Rational};
use crate::report::Check;
use crate::linalg::{self, Reducer, SparseVec};

/// A polynomial space together with its parameters. Euclidean spaces live in the
/// real chart of dimension `m`; Hermitian spaces in the complex chart of dimension `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Scalar k-homogeneous polynomials.
    Poly { m: usize, k: usize },
    /// Scalar harmonic k-homogeneous polynomials.
    Harmonic { m: usize, k: usize },
    /// Clifford-valued k-homogeneous polynomials.
    CliffordPoly { m: usize, k: usize },
    /// Clifford-valued harmonic polynomials.
    CliffordHarmonic { m: usize, k: usize },
    /// Clifford-valued spherical monogenics.
    Monogenic { m: usize, k: usize },
    /// Scalar (p,q)-bihomogeneous polynomials.
    BiPoly { n: usize, p: usize, q: usize },
    /// Scalar bihomogeneous harmonics.
    BiHarmonic { n: usize, p: usize, q: usize },
    /// Bihomogeneous polynomials with values in the spinor space of sector j.
    SpinorPoly { n: usize, j: usize, p: usize, q: usize },
    /// Spinor-valued bihomogeneous harmonics.
    SpinorHarmonic { n: usize, j: usize, p: usize, q: usize },
    /// Spinor-valued spherical h-monogenics.
    HMonogenic { n: usize, j: usize, p: usize, q: usize },
}

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::Poly { .. } => "P",
            Space::Harmonic { .. } => "H",
            Space::CliffordPoly { .. } => "PCl",
            Space::CliffordHarmonic { .. } => "HCl",
            Space::Monogenic { .. } => "M",
            Space::BiPoly { .. } => "Ppq",
            Space::BiHarmonic { .. } => "Hpq",
            Space::SpinorPoly { .. } => "Pj",
            Space::SpinorHarmonic { .. } => "Hj",
            Space::HMonogenic { .. } => "Mj",
        }
    }

    pub const NAMES: [&'static str; 10] = ["P", "H", "PCl", "HCl", "M", "Ppq", "Hpq", "Pj", "Hj", "Mj"];

    /// Builds a descriptor from its short name and the parameters it needs.
    pub fn from_name(name: &str, m: Option<usize>, n: Option<usize>, k: Option<usize>, p: Option<usize>, q: Option<usize>, j: Option<usize>) -> Result<Space> {
        let need = |v: Option<usize>, what: &str| v.ok_or_else(|| Error::range(format!("space {name} needs --{what}")));
        let s = match name {
            "P" => Space::Poly { m: need(m, "m")?, k: need(k, "k")? },
            "H" => Space::Harmonic { m: need(m, "m")?, k: need(k, "k")? },
            "PCl" => Space::CliffordPoly { m: need(m, "m")?, k: need(k, "k")? },
            "HCl" => Space::CliffordHarmonic { m: need(m, "m")?, k: need(k, "k")? },
            "M" => Space::Monogenic { m: need(m, "m")?, k: need(k, "k")? },
            "Ppq" => Space::BiPoly { n: need(n, "n")?, p: need(p, "p")?, q: need(q, "q")? },
            "Hpq" => Space::BiHarmonic { n: need(n, "n")?, p: need(p, "p")?, q: need(q, "q")? },
            "Pj" => Space::SpinorPoly { n: need(n, "n")?, j: need(j, "j")?, p: need(p, "p")?, q: need(q, "q")? },
            "Hj" => Space::SpinorHarmonic { n: need(n, "n")?, j: need(j, "j")?, p: need(p, "p")?, q: need(q, "q")? },
            "Mj" => Space::HMonogenic { n: need(n, "n")?, j: need(j, "j")?, p: need(p, "p")?, q: need(q, "q")? },
            _ => return Err(Error::range(format!("unknown space `{name}` (expected one of {})", Space::NAMES.join(", ")))),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Space::Poly { m, k } | Space::Harmonic { m, k } | Space::CliffordPoly { m, k } | Space::CliffordHarmonic { m, k } | Space::Monogenic { m, k } => {
                if !(1..=12).contains(&m) {
                    return Err(Error::range(format!("m = {m} outside 1..=12")));
                }
                if k > 24 {
                    return Err(Error::range(format!("k = {k} too large")));
                }
            }
            Space::BiPoly { n, p, q } | Space::BiHarmonic { n, p, q } => check_hermitian(n, 0, p, q)?,
            Space::SpinorPoly { n, j, p, q } | Space::SpinorHarmonic { n, j, p, q } | Space::HMonogenic { n, j, p, q } => check_hermitian(n, j, p, q)?,
        }
        Ok(())
    }

    /// Ambient real dimension.
    pub fn dim_m(&self) -> usize {
        match *self {
            Space::Poly { m, .. } | Space::Harmonic { m, .. } | Space::CliffordPoly { m, .. } | Space::CliffordHarmonic { m, .. } | Space::Monogenic { m, .. } => m,
            Space::BiPoly { n, .. } | Space::BiHarmonic { n, .. } | Space::SpinorPoly { n, .. } | Space::SpinorHarmonic { n, .. } | Space::HMonogenic { n, .. } => 2 * n,
        }
    }

    pub fn chart(&self) -> Chart {
        match self {
            Space::Poly { .. } | Space::Harmonic { .. } | Space::CliffordPoly { .. } | Space::CliffordHarmonic { .. } | Space::Monogenic { .. } => Chart::Real,
            _ => Chart::Complex,
        }
    }

    pub fn params(&self) -> Vec<(&'static str, usize)> {
        match *self {
            Space::Poly { m, k } | Space::Harmonic { m, k } | Space::CliffordPoly { m, k } | Space::CliffordHarmonic { m, k } | Space::Monogenic { m, k } => vec![("m", m), ("k", k)],
            Space::BiPoly { n, p, q } | Space::BiHarmonic { n, p, q } => vec![("n", n), ("p", p), ("q", q)],
            Space::SpinorPoly { n, j, p, q } | Space::SpinorHarmonic { n, j, p, q } | Space::HMonogenic { n, j, p, q } => vec![("n", n), ("j", j), ("p", p), ("q", q)],
        }
    }
}

fn check_hermitian(n: usize, j: usize, p: usize, q: usize) -> Result<()> {
    if !(1..=6).contains(&n) {
        return Err(Error::range(format!("n = {n} outside 1..=6")));
    }
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    if p + q > 24 {
        return Err(Error::range(format!("bidegree ({p},{q}) too large")));
    }
    Ok(())
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

/// An exact basis of a polynomial space.
#[derive(Debug, Clone)]
pub struct PolySpaceBasis {
    pub space: Space,
    pub elements: Vec<CliffPoly>,
}

impl PolySpaceBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Assigns coordinates to `(tag, monomial, blade)` keys so polynomials become sparse vectors.
#[derive(Default)]
pub struct Coords {
    index: HashMap<(u8, Monomial, u32), usize>,
}

impl Coords {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vector(&mut self, tag: u8, p: &CliffPoly) -> SparseVec {
        let mut out = Vec::with_capacity(p.flat_len());
        for (mono, c) in p.terms() {
            for (b, v) in c.terms() {
                let next = self.index.len();
                let i = *self.index.entry((tag, *mono, *b)).or_insert(next);
                out.push((i, v.clone()));
            }
        }
        linalg::sparse_from(out)
    }

    /// Concatenates the images under several maps into one vector.
    pub fn stacked(&mut self, parts: &[CliffPoly]) -> SparseVec {
        let mut out = Vec::new();
        for (t, p) in parts.iter().enumerate() {
            out.extend(self.vector(t as u8, p));
        }
        linalg::sparse_from(out)
    }
}

/// Combination `sum_i c_i polys_i`.
pub fn combine(polys: &[CliffPoly], c: &SparseVec, like: &CliffPoly) -> CliffPoly {
    let mut acc = like.like();
    for (i, f) in c {
        acc += &polys[*i].scale(f);
    }
    acc
}

/// Elements of `inputs` spanning the joint kernel of `image`.
fn kernel_of(inputs: &[CliffPoly], image: impl Fn(&CliffPoly) -> Vec<CliffPoly>) -> Vec<CliffPoly> {
    if inputs.is_empty() {
        return Vec::new();
    }
    let mut coords = Coords::new();
    let cols: Vec<SparseVec> = inputs.iter().map(|p| coords.stacked(&image(p))).collect();
    linalg::nullspace(&cols).iter().map(|c| combine(inputs, c, &inputs[0])).collect()
}

fn all_blades(m: usize) -> Vec<Multivector> {
    (0..(1u32 << m)).map(|b| Multivector::blade(m, b, Gr::one())).collect()
}

fn tensor(polys: &[CliffPoly], coeffs: &[Multivector]) -> Vec<CliffPoly> {
    let mut out = Vec::with_capacity(polys.len() * coeffs.len());
    for p in polys {
        for c in coeffs {
            out.push(p.right_mul(c));
        }
    }
    out
}

fn build(space: Space) -> Result<PolySpaceBasis> {
    space.validate()?;
    let m = space.dim_m();
    let chart = space.chart();
    let scalar = |mono: Monomial| CliffPoly::monomial(m, Roster::Single, chart, mono, Multivector::one(m));
    let op = |p: &CliffPoly, t: OperatorTag| p.apply(t, Side::Left).expect("operator defined");
    let elements = match space {
        Space::Poly { m, k } => monomials(m, k).into_iter().map(scalar).collect(),
        Space::Harmonic { m, k } => {
            let ps = basis(Space::Poly { m, k })?;
            kernel_of(&ps.elements, |p| vec![op(p, OperatorTag::Laplace)])
        }
        Space::CliffordPoly { m, k } => tensor(&basis(Space::Poly { m, k })?.elements, &all_blades(m)),
        Space::CliffordHarmonic { m, k } => tensor(&basis(Space::Harmonic { m, k })?.elements, &all_blades(m)),
        Space::Monogenic { m, k } => {
            let ps = basis(Space::CliffordPoly { m, k })?;
            kernel_of(&ps.elements, |p| vec![op(p, OperatorTag::DiracX)])
        }
        Space::BiPoly { n, p, q } => bihomogeneous_monomials(n, p, q).into_iter().map(scalar).collect(),
        Space::BiHarmonic { n, p, q } => {
            let ps = basis(Space::BiPoly { n, p, q })?;
            kernel_of(&ps.elements, |p| vec![op(p, OperatorTag::Laplace)])
        }
        Space::SpinorPoly { n, j, p, q } => tensor(&basis(Space::BiPoly { n, p, q })?.elements, &spinor_basis(n, j)?.vectors),
        Space::SpinorHarmonic { n, j, p, q } => tensor(&basis(Space::BiHarmonic { n, p, q })?.elements, &spinor_basis(n, j)?.vectors),
        Space::HMonogenic { n, j, p, q } => {
            let ps = basis(Space::SpinorPoly { n, j, p, q })?;
            kernel_of(&ps.elements, |p| vec![op(p, OperatorTag::DiracZ), op(p, OperatorTag::DiracZdag)])
        }
    };
    Ok(PolySpaceBasis { space, elements })
}

type Memo = RwLock<HashMap<Space, Arc<PolySpaceBasis>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact basis of a space, memoised process-wide.
pub fn basis(space: Space) -> Result<Arc<PolySpaceBasis>> {
    if let Some(b) = memo().read().expect("basis memo poisoned").get(&space) {
        return Ok(b.clone());
    }
    let built = Arc::new(build(space)?);
    let mut w = memo().write().expect("basis memo poisoned");
    Ok(w.entry(space).or_insert(built).clone())
}

pub fn dim(space: Space) -> Result<usize> {
    Ok(basis(space)?.dim())
}

/// Exact rank of a list of polynomials.
pub fn rank(polys: &[CliffPoly]) -> usize {
    let mut coords = Coords::new();
    let cols: Vec<SparseVec> = polys.iter().map(|p| coords.vector(0, p)).collect();
    linalg::rank(&cols)
}

// ---- decompositions ----

/// One summand of a decomposition: `factor * inner`, with `component` the product.
#[derive(Debug, Clone)]
pub struct Component {
    pub label: String,
    /// The factor from the smaller space (harmonic or monogenic).
    pub inner: CliffPoly,
    /// The summand as it appears in the decomposition.
    pub component: CliffPoly,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// Sector flags and other remarks.
    pub notes: Vec<String>,
}

impl Decomposition {
    pub fn reassemble(&self, like: &CliffPoly) -> CliffPoly {
        let mut acc = like.like();
        for c in &self.components {
            acc += &c.component;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EuclideanMode {
    /// `P_k = sum_j |x|^{2j} H_{k-2j}`, coefficientwise.
    Scalar,
    /// `P_k (x) Cl_m = sum_j x^j M_{k-j}`.
    Clifford,
}

struct Block {
    label: String,
    factor: CliffPoly,
    inners: Vec<CliffPoly>,
}

fn solve_blocks(target: &CliffPoly, blocks: Vec<Block>) -> Result<Vec<Component>> {
    let mut coords = Coords::new();
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        for (ii, h) in b.inners.iter().enumerate() {
            cols.push(coords.vector(0, &(&b.factor * h)));
            owner.push((bi, ii));
        }
    }
    let mut red = Reducer::new();
    for c in &cols {
        if red.push(c).is_some() {
            return Err(Error::Inconsistent("summands are not independent".into()));
        }
    }
    let sol = linalg::solve_with(&red, &coords.vector(0, target))?;
    let mut comps: Vec<Component> = blocks
        .iter()
        .map(|b| Component { label: b.label.clone(), inner: target.like(), component: target.like() })
        .collect();
    for (i, f) in &sol {
        let (bi, ii) = owner[*i];
        comps[bi].inner += &blocks[bi].inners[ii].scale(f);
    }
    for (c, b) in comps.iter_mut().zip(&blocks) {
        c.component = &b.factor * &c.inner;
    }
    Ok(comps)
}

fn blades_of(p: &CliffPoly) -> Vec<Multivector> {
    let mut set = std::collections::BTreeSet::new();
    for c in p.terms().values() {
        for (b, _) in c.terms() {
            set.insert(*b);
        }
    }
    set.into_iter().map(|b| Multivector::blade(p.dim(), b, Gr::one())).collect()
}

/// Euclidean Fischer decomposition of a homogeneous polynomial in the real chart.
pub fn fischer_decompose_euclidean(p: &CliffPoly, mode: EuclideanMode) -> Result<Decomposition> {
    if p.roster() != Roster::Single || p.chart() != Chart::Real {
        return Err(Error::RosterMismatch("expects a single-variable polynomial in real coordinates".into()));
    }
    let m = p.dim();
    let Some(k) = p.degree().or(if p.is_zero() { Some(0) } else { None }) else {
        return Err(Error::NonHomogeneous);
    };
    let one = CliffPoly::one(m, Roster::Single, Chart::Real);
    let x = one.apply(OperatorTag::VecX, Side::Left)?;
    let mut blocks = Vec::new();
    match mode {
        EuclideanMode::Scalar => {
            let r2 = (0..m).fold(one.like(), |acc, v| &acc + &CliffPoly::var(m, Roster::Single, Chart::Real, v).pow(2));
            let coeffs = blades_of(p);
            for j in 0..=k / 2 {
                let h = basis(Space::Harmonic { m, k: k - 2 * j })?;
                blocks.push(Block { label: format!("|x|^{}*H_{}", 2 * j, k - 2 * j), factor: r2.pow(j), inners: tensor(&h.elements, &coeffs) });
            }
        }
        EuclideanMode::Clifford => {
            for j in 0..=k {
                let mb = basis(Space::Monogenic { m, k: k - j })?;
                blocks.push(Block { label: format!("x^{j}*M_{}", k - j), factor: x.pow(j), inners: mb.elements.clone() });
            }
        }
    }
    Ok(Decomposition { components: solve_blocks(p, blocks)?, notes: Vec::new() })
}

/// Constants `(c1, c2)` of the fourth summand `(c1 z z^dagger + c2 z^dagger z) M`, or `None` at a pole.
pub fn hermitian_constants(n: usize, j: usize, p: usize, q: usize) -> Option<(Rational, Rational)> {
    if p == 0 || q == 0 {
        return None;
    }
    let d1 = q as i64 - 1 + n as i64 - j as i64;
    let d2 = p as i64 - 1 + j as i64;
    if d1 == 0 || d2 == 0 {
        return None;
    }
    Some((Rational::new(1, d1), Rational::new(-1, d2)))
}

/// True when the fourth summand exists but one of its constants has a pole.
pub fn hermitian_sector_degenerate(n: usize, j: usize, p: usize, q: usize) -> bool {
    p >= 1 && q >= 1 && hermitian_constants(n, j, p, q).is_none()
}

/// Splits an `S^(j)`-valued harmonic of bidegree `(p, q)` into its h-monogenic pieces:
/// `M^(j)_{p,q} + z M^(j+1)_{p-1,q} + z^dagger M^(j-1)_{p,q-1} + (c1 z z^dagger + c2 z^dagger z) M^(j)_{p-1,q-1}`.
/// In a degenerate sector the last summand is replaced by an exact complement.
pub fn fischer_decompose_hermitian(h: &CliffPoly, n: usize, j: usize, p: usize, q: usize) -> Result<Decomposition> {
    check_hermitian(n, j, p, q)?;
    if h.dim() != 2 * n || h.roster() != Roster::Single {
        return Err(Error::DimensionMismatch(h.dim(), 2 * n));
    }
    let h = h.to_chart(Chart::Complex);
    if !h.is_zero() && h.bidegree(crate::cliffpoly::Slot::X)? != Some((p, q)) {
        return Err(Error::NonHomogeneous);
    }
    let m = 2 * n;
    let one = CliffPoly::one(m, Roster::Single, Chart::Complex);
    let z = one.apply(OperatorTag::VecZ, Side::Left)?;
    let zd = one.apply(OperatorTag::VecZdag, Side::Left)?;
    let mut blocks = vec![Block { label: format!("M^({j})_({p},{q})"), factor: one.clone(), inners: basis(Space::HMonogenic { n, j, p, q })?.elements.clone() }];
    if p >= 1 && j < n {
        blocks.push(Block {
            label: format!("z*M^({})_({},{q})", j + 1, p - 1),
            factor: z.clone(),
            inners: basis(Space::HMonogenic { n, j: j + 1, p: p - 1, q })?.elements.clone(),
        });
    }
    if q >= 1 && j >= 1 {
        blocks.push(Block {
            label: format!("zdag*M^({})_({p},{})", j - 1, q - 1),
            factor: zd.clone(),
            inners: basis(Space::HMonogenic { n, j: j - 1, p, q: q - 1 })?.elements.clone(),
        });
    }
    let mut notes = Vec::new();
    if p >= 1 && q >= 1 {
        let inner = basis(Space::HMonogenic { n, j, p: p - 1, q: q - 1 })?.elements.clone();
        match hermitian_constants(n, j, p, q) {
            Some((c1, c2)) => {
                let factor = &(&z * &zd).scale_rational(&c1) + &(&zd * &z).scale_rational(&c2);
                blocks.push(Block { label: format!("(c1*z*zdag + c2*zdag*z)*M^({j})_({},{})", p - 1, q - 1), factor, inners: inner });
            }
            None => {
                notes.push(format!("degenerate sector n={n} j={j} (p,q)=({p},{q}): fourth summand replaced by an exact complement"));
                // complement of the three summands inside the harmonic space
                let mut coords = Coords::new();
                let mut red = Reducer::new();
                for b in &blocks {
                    for e in &b.inners {
                        red.push(&coords.vector(0, &(&b.factor * e)));
                    }
                }
                let mut comp = Vec::new();
                for e in basis(Space::SpinorHarmonic { n, j, p, q })?.elements.iter() {
                    if red.push(&coords.vector(0, e)).is_none() {
                        comp.push(e.clone());
                    }
                }
                notes.push(format!("complement dimension {} (expected {})", comp.len(), inner.len()));
                blocks.push(Block { label: "complement".into(), factor: one.clone(), inners: comp });
            }
        }
    }
    Ok(Decomposition { components: solve_blocks(&h, blocks)?, notes })
}

// ---- verification ----

/// `<P, H>_d = 2^k (m/2)_k <P, H>_S` for every monomial `P` and harmonic basis element `H`
/// of degree `k`, and vanishing of both products between harmonics of different degrees.
pub fn verify_proportionality(m: usize, k_max: usize) -> Result<Vec<Check>> {
    let mut prop = Check::new("fischer-sphere-proportionality", "Thm FischerSphere1").param("m", m).param("k_max", k_max);
    let mut cross = Check::new("fischer-sphere-cross-degree", "Thm FischerSphere1, k != l").param("m", m).param("k_max", k_max);
    let mut cliff = Check::new("fischer-sphere-clifford", "Thm FischerSphere1, Clifford-valued").param("m", m).param("k_max", k_max);
    let dense = |shift: i64| {
        let mut acc = Multivector::zero(m);
        for b in 0..(1u32 << m) {
            let re = Rational::from_int((b as i64 + shift).rem_euclid(5) - 2);
            let im = Rational::from_int((b as i64 * 3 + shift).rem_euclid(3) - 1);
            acc += &Multivector::blade(m, b, Gr::new(re, im));
        }
        acc
    };
    let (ca, cb) = (dense(1), dense(2));
    let half = Rational::new(m as i64, 2);
    let harm: Vec<Arc<PolySpaceBasis>> = (0..=k_max).map(|k| basis(Space::Harmonic { m, k })).collect::<Result<_>>()?;
    for k in 0..=k_max {
        let factor = &Rational::from_int(2).pow(k as i32) * &pochhammer(&half, k);
        for mono in monomials(m, k) {
            let pm = CliffPoly::monomial(m, Roster::Single, Chart::Real, mono, Multivector::one(m));
            for h in &harm[k].elements {
                let f = fischer_inner(&pm, h)?;
                let sph = sphere_inner(&pm, h)?.scale_rational(&factor);
                prop.expect(f == sph, || format!("k={k}, P={pm}, H={h}"), || (&f - &sph).render());
                let (pa, hb) = (pm.right_mul(&ca), h.right_mul(&cb));
                let f = fischer_inner(&pa, &hb)?;
                let sph = sphere_inner(&pa, &hb)?.scale_rational(&factor);
                cliff.expect(f == sph, || format!("k={k}, P={pa}, H={hb}"), || (&f - &sph).render());
            }
        }
        for l in 0..=k_max {
            if l == k {
                continue;
            }
            for a in &harm[k].elements {
                for b in &harm[l].elements {
                    let f = fischer_inner(a, b)?;
                    let sph = sphere_inner(a, b)?;
                    cross.expect(f.is_zero() && sph.is_zero(), || format!("k={k}, l={l}, H={a}, Q={b}"), || format!("{} | {}", f.render(), sph.render()));
                }
            }
        }
    }
    Ok(vec![prop, cliff, cross])
}

/// Dimension identities behind the Euclidean decompositions.
pub fn verify_dimensions_euclidean(m: usize, k_max: usize) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("m", m).param("k_max", k_max);
    let mut scalar = tagged("dim-fischer-scalar", "Fischer decomposition P_k = sum |x|^2j H_k-2j");
    let mut harm = tagged("dim-harmonic", "dim H_k = binom(m+k-1,k) - binom(m+k-3,k-2)");
    let mut cliff = tagged("dim-fischer-clifford", "(fischer2) H_k (x) Cl_m = M_k + x M_k-1");
    for k in 0..=k_max {
        let pk = dim(Space::Poly { m, k })?;
        let sum: usize = (0..=k / 2).map(|j| dim(Space::Harmonic { m, k: k - 2 * j })).sum::<Result<usize>>()?;
        scalar.expect(pk == sum, || format!("k={k}"), || format!("{pk} != {sum}"));
        let hk = Rational::from(dim(Space::Harmonic { m, k })?);
        let expected = if k >= 2 { &binomial(m + k - 1, k) - &binomial(m + k - 3, k - 2) } else { binomial(m + k - 1, k) };
        harm.expect(hk == expected, || format!("k={k}"), || format!("{hk} != {expected}"));
        if m >= 2 {
            let lhs = (1usize << m) * dim(Space::Harmonic { m, k })?;
            let rhs = dim(Space::Monogenic { m, k })? + if k >= 1 { dim(Space::Monogenic { m, k: k - 1 })? } else { 0 };
            cliff.expect(lhs == rhs, || format!("k={k}"), || format!("{lhs} != {rhs}"));
        }
    }
    Ok(vec![scalar, harm, cliff])
}

/// Dimension identities behind the Hermitian decompositions.
pub fn verify_dimensions_hermitian(n: usize, pq_max: usize) -> Result<Vec<Check>> {
    let tagged = |id: &str, anchor: &str| Check::new(id, anchor).param("n", n).param("pq_max", pq_max);
    let mut bi = tagged("dim-bihomogeneous", "P_pq = sum |z|^2i H_p-i,q-i");
    let mut spin = tagged("dim-spinor-harmonic", "H^(j)_pq = H_pq (x) S^(j)");
    let mut four = tagged("dim-hermitian-fischer", "four-part decomposition of H^(j)_pq, nondegenerate sectors");
    for p in 0..=pq_max {
        for q in 0..=pq_max {
            let pd = dim(Space::BiPoly { n, p, q })?;
            let sum: usize = (0..=p.min(q)).map(|i| dim(Space::BiHarmonic { n, p: p - i, q: q - i })).sum::<Result<usize>>()?;
            bi.expect(pd == sum, || format!("(p,q)=({p},{q})"), || format!("{pd} != {sum}"));
            for j in 0..=n {
                let hj = dim(Space::SpinorHarmonic { n, j, p, q })?;
                let want = dim(Space::BiHarmonic { n, p, q })? * binomial(n, j).to_i64().expect("small binomial") as usize;
                spin.expect(hj == want, || format!("(p,q)=({p},{q}), j={j}"), || format!("{hj} != {want}"));
                let mut parts = dim(Space::HMonogenic { n, j, p, q })?;
                if p >= 1 && j < n {
                    parts += dim(Space::HMonogenic { n, j: j + 1, p: p - 1, q })?;
                }
                if q >= 1 && j >= 1 {
                    parts += dim(Space::HMonogenic { n, j: j - 1, p, q: q - 1 })?;
                }
                if hermitian_sector_degenerate(n, j, p, q) {
                    continue;
                }
                if p >= 1 && q >= 1 {
                    parts += dim(Space::HMonogenic { n, j, p: p - 1, q: q - 1 })?;
                }
                four.expect(hj == parts, || format!("(p,q)=({p},{q}), j={j}"), || format!("{hj} != {parts}"));
            }
        }
    }
    Ok(vec![bi, spin, four])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dimr(s: Space) -> Rational {
        Rational::from(dim(s).unwrap())
    }

    #[test]
    fn polynomial_and_harmonic_dimensions() {
        for m in 2..=5 {
            for k in 0..=4 {
                assert_eq!(dimr(Space::Poly { m, k }), binomial(m + k - 1, k));
                let expected = if k >= 2 { &binomial(m + k - 1, k) - &binomial(m + k - 3, k - 2) } else { binomial(m + k - 1, k) };
                assert_eq!(dimr(Space::Harmonic { m, k }), expected);
            }
        }
        for k in 0..=4 {
            assert_eq!(dim(Space::Harmonic { m: 3, k }).unwrap(), 2 * k + 1);
        }
        assert_eq!(dim(Space::BiHarmonic { n: 2, p: 1, q: 1 }).unwrap(), 3);
        assert_eq!(dim(Space::Poly { m: 4, k: 3 }).unwrap(), 20);
    }

    #[test]
    fn monogenic_dimensions_split_harmonics() {
        for m in 2..=4 {
            for k in 1..=3 {
                let lhs = (1 << m) * dim(Space::Harmonic { m, k }).unwrap();
                let rhs = dim(Space::Monogenic { m, k }).unwrap() + dim(Space::Monogenic { m, k: k - 1 }).unwrap();
                assert_eq!(lhs, rhs, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn h_monogenic_elements_are_eigenvectors() {
        let n = 2;
        for j in 0..=n {
            for (p, q) in [(1, 0), (1, 1), (2, 1)] {
                let b = basis(Space::HMonogenic { n, j, p, q }).unwrap();
                for e in &b.elements {
                    assert!(e.apply(OperatorTag::DiracZ, Side::Left).unwrap().is_zero());
                    assert!(e.apply(OperatorTag::DiracZdag, Side::Left).unwrap().is_zero());
                    assert_eq!(e.apply(OperatorTag::EulerEz, Side::Left).unwrap(), e.scale(&Gr::from_int(p as i64)));
                    assert_eq!(e.apply(OperatorTag::EulerEzbar, Side::Left).unwrap(), e.scale(&Gr::from_int(q as i64)));
                    assert_eq!(e.beta_left().unwrap(), e.scale(&Gr::from_int(j as i64)));
                }
                assert_eq!(rank(&b.elements), b.dim());
            }
        }
    }

    #[test]
    fn euclidean_decomposition_examples() {
        let p = CliffPoly::parse_in("x1^2", 3, Roster::Single, Chart::Real).unwrap();
        let d = fischer_decompose_euclidean(&p, EuclideanMode::Scalar).unwrap();
        assert_eq!(d.components[0].component, CliffPoly::parse_in("2/3*x1^2 - 1/3*x2^2 - 1/3*x3^2", 3, Roster::Single, Chart::Real).unwrap());
        assert_eq!(d.components[1].component, CliffPoly::parse_in("1/3*x1^2 + 1/3*x2^2 + 1/3*x3^2", 3, Roster::Single, Chart::Real).unwrap());
        assert_eq!(d.reassemble(&p), p);
        let r2 = CliffPoly::parse_in("x1^2 + x2^2", 2, Roster::Single, Chart::Real).unwrap();
        let d = fischer_decompose_euclidean(&r2, EuclideanMode::Scalar).unwrap();
        assert!(d.components[0].component.is_zero());
        assert_eq!(d.components[1].inner, CliffPoly::one(2, Roster::Single, Chart::Real));
        let mixed = CliffPoly::parse_in("x1^2 + x2", 2, Roster::Single, Chart::Real).unwrap();
        assert!(fischer_decompose_euclidean(&mixed, EuclideanMode::Scalar).is_err());
    }

    #[test]
    fn hermitian_decomposition_reassembles() {
        let n = 2;
        for j in 0..=n {
            let (p, q) = (1, 1);
            let hb = basis(Space::SpinorHarmonic { n, j, p, q }).unwrap();
            let mut h = hb.elements[0].like();
            for (i, e) in hb.elements.iter().enumerate() {
                h += &e.scale(&Gr::from_int(i as i64 + 1));
            }
            let d = fischer_decompose_hermitian(&h, n, j, p, q).unwrap();
            assert_eq!(d.reassemble(&h), h);
            for c in &d.components {
                if c.label != "complement" {
                    assert!(c.inner.apply(OperatorTag::DiracZ, Side::Left).unwrap().is_zero());
                    assert!(c.inner.apply(OperatorTag::DiracZdag, Side::Left).unwrap().is_zero());
                }
            }
        }
    }
}
