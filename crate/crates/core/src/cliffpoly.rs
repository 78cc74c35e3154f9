//! Polynomials with multivector coefficients, the first-order operators of
//! Clifford and Hermitian Clifford analysis, and the Fischer and sphere
//! inner products.
//!
//! A polynomial lives in one of two coordinate charts. The real chart uses
//! `x_1..x_m`; the complex chart (m = 2n) uses `z_1..z_n, zb_1..zb_n` with
//! `z_j = x_j + i x_{n+j}`. Both describe the same space and convert exactly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::clifford::{beta, blade_cmp, blade_product, witt, witt_dagger, Multivector};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, GaussianRational as Gr, Rational};
use crate::report::Check;
use crate::textfmt::{parse_sum, push_term, render_blade, VarKind};

pub const MAX_VARS: usize = 32;

/// Exponent vector. Ordered graded-lexicographically: by total degree, then
/// with larger leading exponents first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn var(v: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[v] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn get(&self, v: usize) -> u8 {
        self.exps[v]
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> usize {
        self.exps[range].iter().map(|&e| e as usize).sum()
    }

    #[inline]
    pub fn times_var(mut self, v: usize) -> Self {
        self.exps[v] += 1;
        self.deg += 1;
        self
    }

    /// Lowers the exponent of `v`; `None` when it is already zero.
    #[inline]
    pub fn div_var(mut self, v: usize) -> Option<Self> {
        if self.exps[v] == 0 {
            return None;
        }
        self.exps[v] -= 1;
        self.deg -= 1;
        Some(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = *self;
        for v in 0..MAX_VARS {
            r.exps[v] += other.exps[v];
        }
        r.deg += other.deg;
        r
    }

    /// `alpha!` as a rational.
    pub fn factorial(&self) -> Rational {
        let mut acc = Rational::one();
        for &e in self.exps.iter().filter(|&&e| e > 1) {
            acc = &acc * &factorial(e as usize);
        }
        acc
    }

    /// Restriction to `len` variables starting at `start`, moved to position 0.
    pub fn extract(&self, start: usize, len: usize) -> Self {
        Monomial::from_exps(&self.exps[start..start + len])
    }

    /// Moves the block starting at `from` of length `len` to `to`.
    pub fn shifted(&self, from: usize, to: usize, len: usize) -> Self {
        let mut e = [0u8; MAX_VARS];
        e[to..to + len].copy_from_slice(&self.exps[from..from + len]);
        let deg = e.iter().map(|&x| x as u16).sum();
        Monomial { deg, exps: e }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in graded-lex order.
pub fn monomials(nvars: usize, deg: usize) -> Vec<Monomial> {
    fn rec(v: usize, nvars: usize, left: usize, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if v + 1 == nvars {
            cur[v] = left as u8;
            out.push(Monomial::from_exps(&cur[..nvars]));
            cur[v] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[v] = e as u8;
            rec(v + 1, nvars, left - e, cur, out);
        }
        cur[v] = 0;
    }
    assert!(nvars <= MAX_VARS);
    if nvars == 0 {
        return if deg == 0 { vec![Monomial::ONE] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, nvars, deg, &mut [0; MAX_VARS], &mut out);
    out
}

/// Monomials `z^a zb^b` with `|a| = p`, `|b| = q` in the complex chart of `n` complex variables.
pub fn bihomogeneous_monomials(n: usize, p: usize, q: usize) -> Vec<Monomial> {
    let zs = monomials(n, p);
    let zbs = monomials(n, q);
    let mut out = Vec::with_capacity(zs.len() * zbs.len());
    for a in &zs {
        for b in &zbs {
            out.push(a.mul(&b.shifted(0, n, n)));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Roster {
    /// One vector variable.
    Single,
    /// Two vector variables `(x, y)`, or `(z, u)` in the complex chart.
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorTag {
    EulerE,
    EulerEz,
    EulerEzbar,
    DiracX,
    DiracZ,
    DiracZdag,
    VecX,
    VecZ,
    VecZdag,
    Laplace,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 10] = [
        OperatorTag::EulerE,
        OperatorTag::EulerEz,
        OperatorTag::EulerEzbar,
        OperatorTag::DiracX,
        OperatorTag::DiracZ,
        OperatorTag::DiracZdag,
        OperatorTag::VecX,
        OperatorTag::VecZ,
        OperatorTag::VecZdag,
        OperatorTag::Laplace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorTag::EulerE => "EulerE",
            OperatorTag::EulerEz => "EulerEz",
            OperatorTag::EulerEzbar => "EulerEzbar",
            OperatorTag::DiracX => "DiracX",
            OperatorTag::DiracZ => "DiracZ",
            OperatorTag::DiracZdag => "DiracZdag",
            OperatorTag::VecX => "VecX",
            OperatorTag::VecZ => "VecZ",
            OperatorTag::VecZdag => "VecZdag",
            OperatorTag::Laplace => "Laplace",
        }
    }

    fn hermitian(self) -> bool {
        matches!(
            self,
            OperatorTag::EulerEz
                | OperatorTag::EulerEzbar
                | OperatorTag::DiracZ
                | OperatorTag::DiracZdag
                | OperatorTag::VecZ
                | OperatorTag::VecZdag
        )
    }

    fn is_dirac(self) -> bool {
        matches!(self, OperatorTag::DiracX | OperatorTag::DiracZ | OperatorTag::DiracZdag)
    }
}

impl std::str::FromStr for OperatorTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorTag::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::range(format!("unknown operator `{s}`")))
    }
}

/// Polynomial `sum_alpha X_alpha x^alpha` with multivector coefficients stored left of the monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffPoly {
    m: usize,
    roster: Roster,
    chart: Chart,
    terms: BTreeMap<Monomial, Multivector>,
}

fn add_into(map: &mut BTreeMap<Monomial, Multivector>, mono: Monomial, mv: Multivector) {
    if mv.is_zero() {
        return;
    }
    match map.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(mv);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &mv;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl CliffPoly {
    pub fn zero(m: usize, roster: Roster, chart: Chart) -> Self {
        let nvars = if roster == Roster::Pair { 2 * m } else { m };
        assert!(nvars <= MAX_VARS, "too many variables");
        assert!(chart == Chart::Real || m.is_multiple_of(2), "complex chart needs an even dimension");
        CliffPoly { m, roster, chart, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, roster: Roster, chart: Chart, c: Multivector) -> Self {
        let mut p = Self::zero(m, roster, chart);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(m: usize, roster: Roster, chart: Chart) -> Self {
        Self::constant(m, roster, chart, Multivector::one(m))
    }

    /// A single term `c * x^mono`.
    pub fn monomial(m: usize, roster: Roster, chart: Chart, mono: Monomial, c: Multivector) -> Self {
        let mut p = Self::zero(m, roster, chart);
        p.add_term(mono, c);
        p
    }

    /// The coordinate with global index `v`.
    pub fn var(m: usize, roster: Roster, chart: Chart, v: usize) -> Self {
        Self::monomial(m, roster, chart, Monomial::var(v), Multivector::one(m))
    }

    pub fn from_terms(m: usize, roster: Roster, chart: Chart, terms: impl IntoIterator<Item = (Monomial, Multivector)>) -> Self {
        let mut p = Self::zero(m, roster, chart);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    pub fn like(&self) -> Self {
        Self::zero(self.m, self.roster, self.chart)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Multivector) {
        debug_assert!(c.dim() <= self.m);
        add_into(&mut self.terms, mono, c);
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m / 2
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn nvars(&self) -> usize {
        match self.roster {
            Roster::Single => self.m,
            Roster::Pair => 2 * self.m,
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Multivector> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Multivector {
        self.terms.get(mono).cloned().unwrap_or_else(|| Multivector::zero(self.m))
    }

    /// Number of stored `(monomial, blade)` pairs.
    pub fn flat_len(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }

    pub fn slot_offset(&self, slot: Slot) -> Result<usize> {
        match (slot, self.roster) {
            (Slot::X, _) => Ok(0),
            (Slot::Y, Roster::Pair) => Ok(self.m),
            (Slot::Y, Roster::Single) => Err(Error::RosterMismatch("no second vector variable".into())),
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(self.m, other.m));
        }
        if self.roster != other.roster || self.chart != other.chart {
            return Err(Error::RosterMismatch(format!(
                "{:?}/{:?} vs {:?}/{:?}",
                self.roster, self.chart, other.roster, other.chart
            )));
        }
        Ok(())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        let mut out = self.like();
        for (mono, c) in &self.terms {
            out.add_term(*mono, f(c));
        }
        out
    }

    pub fn scale(&self, c: &Gr) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map_coeffs(|x| x.scale_rational(c))
    }

    pub fn left_mul(&self, a: &Multivector) -> Self {
        self.map_coeffs(|x| a * x)
    }

    pub fn right_mul(&self, a: &Multivector) -> Self {
        self.map_coeffs(|x| x * a)
    }

    /// Clifford reversal with conjugation-type sign, coefficients not conjugated.
    pub fn bar(&self) -> Self {
        self.map_coeffs(|x| x.bar())
    }

    /// Product of polynomials; coefficients multiply in order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.like();
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                add_into(&mut out.terms, ma.mul(mb), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.m, self.roster, self.chart);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Swaps the two vector variables of a paired polynomial.
    pub fn swap_slots(&self) -> Result<Self> {
        if self.roster != Roster::Pair {
            return Err(Error::RosterMismatch("slot swap needs a paired polynomial".into()));
        }
        let m = self.m;
        let mut out = self.like();
        for (mono, c) in &self.terms {
            out.add_term(mono.shifted(0, m, m).mul(&mono.shifted(m, 0, m)), c.clone());
        }
        Ok(out)
    }

    /// Embeds a single-variable polynomial into a paired roster at `slot`.
    pub fn into_pair(&self, slot: Slot) -> Result<Self> {
        if self.roster != Roster::Single {
            return Err(Error::RosterMismatch("already paired".into()));
        }
        let off = if slot == Slot::X { 0 } else { self.m };
        let mut out = Self::zero(self.m, Roster::Pair, self.chart);
        for (mono, c) in &self.terms {
            out.add_term(mono.shifted(0, off, self.m), c.clone());
        }
        Ok(out)
    }

    /// Total degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Degree in one vector variable when homogeneous there.
    pub fn slot_degree(&self, slot: Slot) -> Result<Option<usize>> {
        let off = self.slot_offset(slot)?;
        let mut it = self.terms.keys().map(|k| k.degree_in(off..off + self.m));
        Ok(match it.next() {
            None => None,
            Some(first) => it.all(|d| d == first).then_some(first),
        })
    }

    /// Bidegree `(p, q)` in `(z, zb)` of one slot, when bihomogeneous.
    pub fn bidegree(&self, slot: Slot) -> Result<Option<(usize, usize)>> {
        if !self.m.is_multiple_of(2) {
            return Err(Error::DimensionParity("bidegree".into(), self.m));
        }
        if self.chart == Chart::Real {
            return self.to_chart(Chart::Complex).bidegree(slot);
        }
        let off = self.slot_offset(slot)?;
        let n = self.n();
        let mut it = self.terms.keys().map(|k| (k.degree_in(off..off + n), k.degree_in(off + n..off + 2 * n)));
        Ok(match it.next() {
            None => None,
            Some(first) => it.all(|d| d == first).then_some(first),
        })
    }

    /// Set of grades appearing in any coefficient.
    pub fn grades(&self) -> std::collections::BTreeSet<usize> {
        self.terms.values().flat_map(|c| c.grades()).collect()
    }

    fn var_name(&self, v: usize) -> (VarKind, usize) {
        let (slot, local) = if v < self.m { (0, v) } else { (1, v - self.m) };
        match self.chart {
            Chart::Real => (if slot == 0 { VarKind::X } else { VarKind::Y }, local + 1),
            Chart::Complex => {
                let n = self.n();
                let barred = local >= n;
                let idx = local % n + 1;
                let kind = match (slot, barred) {
                    (0, false) => VarKind::Z,
                    (0, true) => VarKind::Zb,
                    (_, false) => VarKind::U,
                    (_, true) => VarKind::Ub,
                };
                (kind, idx)
            }
        }
    }

    pub fn render_monomial(&self, mono: &Monomial) -> Vec<String> {
        let mut out = Vec::new();
        for v in 0..self.nvars() {
            let e = mono.get(v);
            if e == 0 {
                continue;
            }
            let (kind, idx) = self.var_name(v);
            if e == 1 {
                out.push(format!("{}{idx}", kind.name()));
            } else {
                out.push(format!("{}{idx}^{e}", kind.name()));
            }
        }
        out
    }

    /// Flattened `(monomial, blade, coefficient)` triples in display order.
    pub fn flat_terms(&self) -> Vec<(Monomial, u32, Gr)> {
        let mut out = Vec::new();
        for (mono, c) in &self.terms {
            let mut blades: Vec<&(u32, Gr)> = c.terms().iter().collect();
            blades.sort_by(|a, b| blade_cmp(a.0, b.0));
            for (b, v) in blades {
                out.push((*mono, *b, v.clone()));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (mono, b, v) in self.flat_terms() {
            let mut factors: Vec<String> = render_blade(b).into_iter().collect();
            factors.extend(self.render_monomial(&mono));
            push_term(&mut out, &v, &factors);
        }
        out
    }

    /// Parses the text format; roster and chart are inferred from the variable names.
    pub fn parse(src: &str, m: usize) -> Result<Self> {
        let raw = parse_sum(src)?;
        let mut complex = None;
        let mut pair = false;
        for t in &raw {
            for (kind, _, _) in &t.vars {
                let c = matches!(kind, VarKind::Z | VarKind::Zb | VarKind::U | VarKind::Ub);
                if complex.is_some_and(|prev| prev != c) {
                    return Err(Error::parse(1, 1, "real and complex coordinates cannot be mixed"));
                }
                complex = Some(c);
                pair |= matches!(kind, VarKind::Y | VarKind::U | VarKind::Ub);
            }
        }
        let chart = if complex == Some(true) { Chart::Complex } else { Chart::Real };
        let roster = if pair { Roster::Pair } else { Roster::Single };
        Self::parse_in(src, m, roster, chart)
    }

    /// Parses the text format into a prescribed space.
    pub fn parse_in(src: &str, m: usize, roster: Roster, chart: Chart) -> Result<Self> {
        if chart == Chart::Complex && !m.is_multiple_of(2) {
            return Err(Error::DimensionParity("complex coordinates".into(), m));
        }
        let n = m / 2;
        let mut out = Self::zero(m, roster, chart);
        for t in parse_sum(src)? {
            let mut blade = 0u32;
            let mut neg = false;
            for g in t.generators {
                if g > m {
                    return Err(Error::IndexOutOfRange { index: g, max: m });
                }
                let (s, b) = blade_product(blade, 1 << (g - 1));
                neg ^= s;
                blade = b;
            }
            let mut mono = Monomial::ONE;
            for (kind, idx, pow) in t.vars {
                let (slot_y, local, max) = match (kind, chart) {
                    (VarKind::X, Chart::Real) => (false, idx - 1, m),
                    (VarKind::Y, Chart::Real) => (true, idx - 1, m),
                    (VarKind::Z, Chart::Complex) => (false, idx - 1, n),
                    (VarKind::Zb, Chart::Complex) => (false, n + idx - 1, n),
                    (VarKind::U, Chart::Complex) => (true, idx - 1, n),
                    (VarKind::Ub, Chart::Complex) => (true, n + idx - 1, n),
                    _ => return Err(Error::RosterMismatch(format!("variable `{}` not in this chart", kind.name()))),
                };
                if idx > max {
                    return Err(Error::IndexOutOfRange { index: idx, max });
                }
                if slot_y && roster == Roster::Single {
                    return Err(Error::RosterMismatch("second vector variable in a single-variable polynomial".into()));
                }
                let v = if slot_y { m + local } else { local };
                for _ in 0..pow {
                    mono = mono.times_var(v);
                }
            }
            let coef = if neg { -t.coef } else { t.coef };
            out.add_term(mono, Multivector::blade(m, blade, coef));
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .flat_terms()
            .into_iter()
            .map(|(mono, b, v)| {
                let mono_text = self.render_monomial(&mono).join("*");
                serde_json::json!({
                    "blade": render_blade(b).unwrap_or_else(|| "1".into()),
                    "monomial": if mono_text.is_empty() { "1".to_string() } else { mono_text },
                    "coef": v.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "dimension": self.m,
            "roster": self.roster,
            "chart": self.chart,
            "terms": terms,
        })
    }

    // ---- charts ----

    /// Rewrites the polynomial in the other coordinate chart.
    pub fn to_chart(&self, chart: Chart) -> Self {
        if chart == self.chart {
            return self.clone();
        }
        let m = self.m;
        let n = m / 2;
        let half = Rational::new(1, 2);
        let h = Gr::real(half.clone());
        let ih = Gr::new(Rational::zero(), half);
        // image of each coordinate as a linear form in the target chart
        let nslots = if self.roster == Roster::Pair { 2 } else { 1 };
        let mut forms: Vec<Vec<(usize, Gr)>> = vec![Vec::new(); self.nvars()];
        for s in 0..nslots {
            let off = s * m;
            for j in 0..n {
                let (a, b) = (off + j, off + n + j);
                match chart {
                    Chart::Complex => {
                        forms[a] = vec![(a, h.clone()), (b, h.clone())];
                        forms[b] = vec![(a, -&ih), (b, ih.clone())];
                    }
                    Chart::Real => {
                        forms[a] = vec![(a, Gr::one()), (b, Gr::i())];
                        forms[b] = vec![(a, Gr::one()), (b, -Gr::i())];
                    }
                }
            }
        }
        let mut out = Self::zero(m, self.roster, chart);
        let mut cache: HashMap<(usize, u8), Vec<(Monomial, Gr)>> = HashMap::new();
        for (mono, c) in &self.terms {
            let mut acc: Vec<(Monomial, Gr)> = vec![(Monomial::ONE, Gr::one())];
            for v in 0..self.nvars() {
                let e = mono.get(v);
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((v, e)).or_insert_with(|| linear_power(&forms[v], e));
                let mut next: HashMap<Monomial, Gr> = HashMap::new();
                for (ma, ca) in &acc {
                    for (mb, cb) in pw.iter() {
                        *next.entry(ma.mul(mb)).or_insert_with(Gr::zero) += &(ca * cb);
                    }
                }
                acc = next.into_iter().filter(|t| !t.1.is_zero()).collect();
            }
            for (mono2, s) in acc {
                out.add_term(mono2, c.scale(&s));
            }
        }
        out
    }

    // ---- elementary operators ----

    /// `sum (coef * d/dv)` with the coefficient acting on the given side.
    fn derivation(&self, list: &[(usize, Multivector)], side: Side) -> Self {
        let mut out = self.like();
        for (mono, c) in &self.terms {
            for (v, a) in list {
                let e = mono.get(*v);
                if e == 0 {
                    continue;
                }
                let lowered = mono.div_var(*v).expect("positive exponent");
                let prod = match side {
                    Side::Left => a * c,
                    Side::Right => c * a,
                };
                add_into(&mut out.terms, lowered, prod.scale_rational(&Rational::from_int(e as i64)));
            }
        }
        out
    }

    /// Left multiplication by `sum coef * x_v`.
    fn multiplication(&self, list: &[(usize, Multivector)]) -> Self {
        let mut out = self.like();
        for (mono, c) in &self.terms {
            for (v, a) in list {
                add_into(&mut out.terms, mono.times_var(*v), a * c);
            }
        }
        out
    }

    /// `sum w * x_a d/dx_b`.
    fn euler(&self, list: &[(usize, usize, Gr)]) -> Self {
        let mut out = self.like();
        for (mono, c) in &self.terms {
            for (a, b, w) in list {
                let e = mono.get(*b);
                if e == 0 {
                    continue;
                }
                let target = mono.div_var(*b).expect("positive exponent").times_var(*a);
                add_into(&mut out.terms, target, c.scale(&w.scale(&Rational::from_int(e as i64))));
            }
        }
        out
    }

    /// Scalar partial derivative in the global variable `v`.
    pub fn partial(&self, v: usize) -> Self {
        self.derivation(&[(v, Multivector::one(self.m))], Side::Left)
    }

    fn operator_data(&self, op: OperatorTag, off: usize) -> Result<OpData> {
        let m = self.m;
        if op.hermitian() && !m.is_multiple_of(2) {
            return Err(Error::DimensionParity(op.name().into(), m));
        }
        if self.chart == Chart::Complex && !m.is_multiple_of(2) {
            return Err(Error::DimensionParity(op.name().into(), m));
        }
        let n = m / 2;
        let one = Gr::one();
        let i = Gr::i();
        let half = Gr::real(Rational::new(1, 2));
        let f = |j: usize| witt(n, j + 1).expect("valid index");
        let fd = |j: usize| witt_dagger(n, j + 1).expect("valid index");
        let e = |j: usize| Multivector::basis(m, j + 1).expect("valid index");
        let mut d = Vec::new();
        Ok(match (op, self.chart) {
            (OperatorTag::EulerE, _) => OpData::Euler((0..m).map(|v| (off + v, off + v, one.clone())).collect()),
            (OperatorTag::EulerEz | OperatorTag::EulerEzbar, Chart::Complex) => {
                let base = if op == OperatorTag::EulerEz { 0 } else { n };
                OpData::Euler((0..n).map(|j| (off + base + j, off + base + j, one.clone())).collect())
            }
            (OperatorTag::EulerEz | OperatorTag::EulerEzbar, Chart::Real) => {
                let s = if op == OperatorTag::EulerEz { one.clone() } else { -&one };
                let mut l = Vec::new();
                for j in 0..n {
                    let (a, b) = (off + j, off + n + j);
                    l.push((a, a, half.clone()));
                    l.push((a, b, -&(&half * &i) * &s));
                    l.push((b, a, &(&half * &i) * &s));
                    l.push((b, b, half.clone()));
                }
                OpData::Euler(l)
            }
            (OperatorTag::Laplace, Chart::Real) => OpData::Laplace((0..m).map(|v| (off + v, off + v, one.clone())).collect()),
            (OperatorTag::Laplace, Chart::Complex) => {
                OpData::Laplace((0..n).map(|j| (off + j, off + n + j, Gr::from_int(4))).collect())
            }
            (OperatorTag::DiracX, Chart::Real) => OpData::Derivation((0..m).map(|v| (off + v, e(v))).collect()),
            (OperatorTag::DiracX, Chart::Complex) => {
                for j in 0..n {
                    d.push((off + j, fd(j).scale(&Gr::from_int(-2))));
                    d.push((off + n + j, f(j).scale(&Gr::from_int(2))));
                }
                OpData::Derivation(d)
            }
            (OperatorTag::DiracZ, Chart::Real) => {
                for j in 0..n {
                    d.push((off + j, fd(j).scale(&half)));
                    d.push((off + n + j, fd(j).scale(&-&(&half * &i))));
                }
                OpData::Derivation(d)
            }
            (OperatorTag::DiracZ, Chart::Complex) => OpData::Derivation((0..n).map(|j| (off + j, fd(j))).collect()),
            (OperatorTag::DiracZdag, Chart::Real) => {
                for j in 0..n {
                    d.push((off + j, f(j).scale(&half)));
                    d.push((off + n + j, f(j).scale(&(&half * &i))));
                }
                OpData::Derivation(d)
            }
            (OperatorTag::DiracZdag, Chart::Complex) => OpData::Derivation((0..n).map(|j| (off + n + j, f(j))).collect()),
            (OperatorTag::VecX, Chart::Real) => OpData::Multiplication((0..m).map(|v| (off + v, e(v))).collect()),
            (OperatorTag::VecX, Chart::Complex) => {
                for j in 0..n {
                    d.push((off + j, f(j)));
                    d.push((off + n + j, -fd(j)));
                }
                OpData::Multiplication(d)
            }
            (OperatorTag::VecZ, Chart::Real) => {
                for j in 0..n {
                    d.push((off + j, f(j)));
                    d.push((off + n + j, f(j).scale(&i)));
                }
                OpData::Multiplication(d)
            }
            (OperatorTag::VecZ, Chart::Complex) => OpData::Multiplication((0..n).map(|j| (off + j, f(j))).collect()),
            (OperatorTag::VecZdag, Chart::Real) => {
                for j in 0..n {
                    d.push((off + j, fd(j)));
                    d.push((off + n + j, fd(j).scale(&-&i)));
                }
                OpData::Multiplication(d)
            }
            (OperatorTag::VecZdag, Chart::Complex) => OpData::Multiplication((0..n).map(|j| (off + n + j, fd(j))).collect()),
        })
    }

    /// Applies an operator in the chosen vector variable, from the chosen side.
    pub fn apply_in(&self, op: OperatorTag, side: Side, slot: Slot) -> Result<Self> {
        if side == Side::Right && !op.is_dirac() {
            return Err(Error::SideMismatch(op.name().into()));
        }
        let off = self.slot_offset(slot)?;
        Ok(match self.operator_data(op, off)? {
            OpData::Derivation(l) => self.derivation(&l, side),
            OpData::Multiplication(l) => self.multiplication(&l),
            OpData::Euler(l) => self.euler(&l),
            OpData::Laplace(l) => {
                let mut out = self.like();
                for (a, b, w) in l {
                    for (mono, c) in &self.terms {
                        let ea = mono.get(a);
                        let Some(m1) = mono.div_var(a) else { continue };
                        let eb = m1.get(b);
                        let Some(m2) = m1.div_var(b) else { continue };
                        let k = Rational::from_int(ea as i64 * eb as i64);
                        add_into(&mut out.terms, m2, c.scale(&w.scale(&k)));
                    }
                }
                out
            }
        })
    }

    pub fn apply(&self, op: OperatorTag, side: Side) -> Result<Self> {
        self.apply_in(op, side, Slot::X)
    }

    /// Left multiplication by `beta`.
    pub fn beta_left(&self) -> Result<Self> {
        if !self.m.is_multiple_of(2) {
            return Err(Error::DimensionParity("beta".into(), self.m));
        }
        Ok(self.left_mul(&beta(self.m / 2)))
    }
}

enum OpData {
    Derivation(Vec<(usize, Multivector)>),
    Multiplication(Vec<(usize, Multivector)>),
    Euler(Vec<(usize, usize, Gr)>),
    Laplace(Vec<(usize, usize, Gr)>),
}

fn linear_power(form: &[(usize, Gr)], e: u8) -> Vec<(Monomial, Gr)> {
    let mut acc: Vec<(Monomial, Gr)> = vec![(Monomial::ONE, Gr::one())];
    for _ in 0..e {
        let mut next: HashMap<Monomial, Gr> = HashMap::new();
        for (ma, ca) in &acc {
            for (v, cb) in form {
                *next.entry(ma.times_var(*v)).or_insert_with(Gr::zero) += &(ca * cb);
            }
        }
        acc = next.into_iter().filter(|t| !t.1.is_zero()).collect();
    }
    acc
}

impl fmt::Display for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffPoly(m={}, {:?}, {:?}: {})", self.m, self.roster, self.chart, self.render())
    }
}

impl std::ops::Add for &CliffPoly {
    type Output = CliffPoly;
    fn add(self, rhs: &CliffPoly) -> CliffPoly {
        self.same_space(rhs).expect("adding polynomials from different spaces");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            add_into(&mut out.terms, *mono, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &CliffPoly {
    type Output = CliffPoly;
    fn sub(self, rhs: &CliffPoly) -> CliffPoly {
        self.same_space(rhs).expect("subtracting polynomials from different spaces");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            add_into(&mut out.terms, *mono, -c);
        }
        out
    }
}

impl std::ops::Neg for &CliffPoly {
    type Output = CliffPoly;
    fn neg(self) -> CliffPoly {
        self.map_coeffs(|c| -c)
    }
}

impl std::ops::Mul for &CliffPoly {
    type Output = CliffPoly;
    fn mul(self, rhs: &CliffPoly) -> CliffPoly {
        self.try_mul(rhs).expect("multiplying polynomials from different spaces")
    }
}

impl std::ops::AddAssign<&CliffPoly> for CliffPoly {
    fn add_assign(&mut self, rhs: &CliffPoly) {
        self.same_space(rhs).expect("adding polynomials from different spaces");
        for (mono, c) in &rhs.terms {
            add_into(&mut self.terms, *mono, c.clone());
        }
    }
}

impl std::ops::SubAssign<&CliffPoly> for CliffPoly {
    fn sub_assign(&mut self, rhs: &CliffPoly) {
        self.same_space(rhs).expect("subtracting polynomials from different spaces");
        for (mono, c) in &rhs.terms {
            add_into(&mut self.terms, *mono, -c);
        }
    }
}

/// Free-function form of [`CliffPoly::apply`].
pub fn apply(op: OperatorTag, p: &CliffPoly, side: Side) -> Result<CliffPoly> {
    p.apply(op, side)
}

pub fn laplacian(p: &CliffPoly) -> CliffPoly {
    p.apply(OperatorTag::Laplace, Side::Left).expect("the Laplacian exists in every chart")
}

// ---- inner products ----

/// Normalised sphere moments and Fischer weights for one chart.
type WeightsMemo = HashMap<(usize, Chart), Arc<Weights>>;

pub struct Weights {
    m: usize,
    chart: Chart,
    fact: Vec<Rational>,
    half_poch: Vec<Rational>,
    ambient_poch: Vec<Rational>,
}

impl Weights {
    const TOP: usize = 64;

    pub fn new(m: usize, chart: Chart) -> Self {
        let base = match chart {
            Chart::Real => Rational::new(m as i64, 2),
            Chart::Complex => Rational::from_int((m / 2) as i64),
        };
        let half = Rational::new(1, 2);
        let mut fact = vec![Rational::one()];
        let mut half_poch = vec![Rational::one()];
        let mut ambient_poch = vec![Rational::one()];
        for k in 0..Self::TOP {
            let kr = Rational::from(k);
            fact.push(&fact[k] * &(&kr + &Rational::one()));
            half_poch.push(&half_poch[k] * &(&half + &kr));
            ambient_poch.push(&ambient_poch[k] * &(&base + &kr));
        }
        Weights { m, chart, fact, half_poch, ambient_poch }
    }

    /// Shared tables for `(m, chart)`, built once per process.
    pub fn shared(m: usize, chart: Chart) -> Arc<Weights> {
        static MEMO: OnceLock<RwLock<WeightsMemo>> = OnceLock::new();
        let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(w) = memo.read().expect("weights memo poisoned").get(&(m, chart)) {
            return w.clone();
        }
        let built = Arc::new(Weights::new(m, chart));
        memo.write().expect("weights memo poisoned").entry((m, chart)).or_insert(built).clone()
    }

    /// Fischer norm of a single monomial of the slot starting at `off`.
    pub fn fischer(&self, mono: &Monomial, off: usize) -> Rational {
        let mut acc = Rational::one();
        let mut deg = 0usize;
        for v in off..off + self.m {
            let e = mono.get(v) as usize;
            deg += e;
            if e > 1 {
                acc = &acc * &self.fact[e];
            }
        }
        if self.chart == Chart::Complex {
            acc = &acc * &Rational::from_int(2).pow(deg as i32);
        }
        acc
    }

    /// Sphere average of `conj(x^a) x^b` for monomials `a` (slot at `off_a`) and `b` (slot at 0).
    pub fn sphere(&self, a: &Monomial, off_a: usize, b: &Monomial) -> Rational {
        match self.chart {
            Chart::Real => {
                let mut acc = Rational::one();
                let mut half_total = 0usize;
                for v in 0..self.m {
                    let g = a.get(off_a + v) as usize + b.get(v) as usize;
                    if g % 2 == 1 {
                        return Rational::zero();
                    }
                    half_total += g / 2;
                    if g > 0 {
                        acc = &acc * &self.half_poch[g / 2];
                    }
                }
                &acc / &self.ambient_poch[half_total]
            }
            Chart::Complex => {
                // conj(z^a1 zb^a2) z^b1 zb^b2 = z^{a2+b1} zb^{a1+b2}
                let n = self.m / 2;
                let mut acc = Rational::one();
                let mut total = 0usize;
                for j in 0..n {
                    let zp = a.get(off_a + n + j) as usize + b.get(j) as usize;
                    let zbp = a.get(off_a + j) as usize + b.get(n + j) as usize;
                    if zp != zbp {
                        return Rational::zero();
                    }
                    total += zp;
                    if zp > 1 {
                        acc = &acc * &self.fact[zp];
                    }
                }
                &acc / &self.ambient_poch[total]
            }
        }
    }

    /// Key under which sphere moments against a slot monomial can be nonzero.
    fn sphere_class(&self, mono: &Monomial, off: usize) -> Vec<i16> {
        match self.chart {
            Chart::Real => (0..self.m).map(|v| (mono.get(off + v) % 2) as i16).collect(),
            Chart::Complex => {
                let n = self.m / 2;
                (0..n)
                    .map(|j| mono.get(off + j) as i16 - mono.get(off + n + j) as i16)
                    .collect()
            }
        }
    }
}

/// Which inner product to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    Fischer,
    Sphere,
}

fn conj_monomial(mono: &Monomial, chart: Chart, off: usize, m: usize) -> Monomial {
    match chart {
        Chart::Real => *mono,
        Chart::Complex => {
            let n = m / 2;
            let mut e = *mono.exps();
            for j in 0..n {
                e.swap(off + j, off + n + j);
            }
            Monomial { deg: mono.deg, exps: e }
        }
    }
}

/// `<P, Q>` for single-variable polynomials, conjugate-linear in `P`.
pub fn inner(kind: Pairing, p: &CliffPoly, q: &CliffPoly) -> Result<Multivector> {
    p.same_space(q)?;
    if p.roster != Roster::Single {
        return Err(Error::RosterMismatch("inner products act on single-variable polynomials".into()));
    }
    let w = Weights::shared(p.m, p.chart);
    let mut acc = Multivector::zero(p.m);
    match kind {
        Pairing::Fischer => {
            for (mono, a) in &p.terms {
                if let Some(b) = q.terms.get(mono) {
                    acc += &(&a.conj() * b).scale_rational(&w.fischer(mono, 0));
                }
            }
        }
        Pairing::Sphere => {
            let mut classes: HashMap<Vec<i16>, Vec<(&Monomial, &Multivector)>> = HashMap::new();
            for (mono, b) in &q.terms {
                classes.entry(w.sphere_class(mono, 0)).or_default().push((mono, b));
            }
            for (ma, a) in &p.terms {
                let Some(list) = classes.get(&w.sphere_class(ma, 0)) else { continue };
                let ac = a.conj();
                for (mb, b) in list {
                    let s = w.sphere(ma, 0, mb);
                    if !s.is_zero() {
                        acc += &(&ac * *b).scale_rational(&s);
                    }
                }
            }
        }
    }
    Ok(acc)
}

pub fn fischer_inner(p: &CliffPoly, q: &CliffPoly) -> Result<Multivector> {
    inner(Pairing::Fischer, p, q)
}

pub fn sphere_inner(p: &CliffPoly, q: &CliffPoly) -> Result<Multivector> {
    inner(Pairing::Sphere, p, q)
}

/// Pairs a kernel `K(x, y)` with `P(x)` in the first variable, giving a polynomial in `y`
/// (returned in a single-variable roster).
pub fn pair_kernel(kind: Pairing, k: &CliffPoly, p: &CliffPoly) -> Result<CliffPoly> {
    if k.roster != Roster::Pair || p.roster != Roster::Single {
        return Err(Error::RosterMismatch("kernel pairing needs a paired kernel and a single-variable polynomial".into()));
    }
    if k.m != p.m {
        return Err(Error::DimensionMismatch(k.m, p.m));
    }
    if k.chart != p.chart {
        return Err(Error::RosterMismatch("chart mismatch".into()));
    }
    let table = KernelTable::new(kind, k)?;
    Ok(table.pair(p))
}

/// A kernel prepared for repeated pairing: for each x-monomial `a`, the conjugated
/// y-polynomial `sum_g (K_{a,g} y^g)^dagger`.
pub struct KernelTable {
    kind: Pairing,
    m: usize,
    chart: Chart,
    weights: Arc<Weights>,
    rows: Vec<(Monomial, CliffPoly)>,
    by_class: HashMap<Vec<i16>, Vec<usize>>,
    by_mono: HashMap<Monomial, usize>,
}

impl KernelTable {
    pub fn new(kind: Pairing, k: &CliffPoly) -> Result<Self> {
        if k.roster != Roster::Pair {
            return Err(Error::RosterMismatch("kernel tables need a paired polynomial".into()));
        }
        let m = k.m;
        let mut grouped: BTreeMap<Monomial, CliffPoly> = BTreeMap::new();
        for (mono, c) in &k.terms {
            let xa = mono.extract(0, m);
            let yg = conj_monomial(&mono.extract(m, m), k.chart, 0, m);
            grouped
                .entry(xa)
                .or_insert_with(|| CliffPoly::zero(m, Roster::Single, k.chart))
                .add_term(yg, c.conj());
        }
        let weights = Weights::shared(m, k.chart);
        let rows: Vec<(Monomial, CliffPoly)> = grouped.into_iter().collect();
        let mut by_class: HashMap<Vec<i16>, Vec<usize>> = HashMap::new();
        let mut by_mono = HashMap::new();
        for (i, (xa, _)) in rows.iter().enumerate() {
            by_class.entry(weights.sphere_class(xa, 0)).or_default().push(i);
            by_mono.insert(*xa, i);
        }
        Ok(KernelTable { kind, m, chart: k.chart, weights, rows, by_class, by_mono })
    }

    /// `y`-polynomial `W_b(y)` with `<K(., y), x^b c> = W_b(y) c`.
    pub fn column(&self, b: &Monomial) -> CliffPoly {
        let mut out = CliffPoly::zero(self.m, Roster::Single, self.chart);
        match self.kind {
            Pairing::Fischer => {
                if let Some(&i) = self.by_mono.get(b) {
                    out = self.rows[i].1.scale_rational(&self.weights.fischer(b, 0));
                }
            }
            Pairing::Sphere => {
                if let Some(list) = self.by_class.get(&self.weights.sphere_class(b, 0)) {
                    for &i in list {
                        let (xa, row) = &self.rows[i];
                        let s = self.weights.sphere(xa, 0, b);
                        if !s.is_zero() {
                            out += &row.scale_rational(&s);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pair(&self, p: &CliffPoly) -> CliffPoly {
        let mut out = CliffPoly::zero(self.m, Roster::Single, self.chart);
        for (b, c) in &p.terms {
            out += &self.column(b).right_mul(c);
        }
        out
    }
}

// ---- verification sweeps ----

fn all_blades(m: usize) -> Vec<Multivector> {
    (0..(1u32 << m)).map(|b| Multivector::blade(m, b, Gr::one())).collect()
}

fn basis_polys(m: usize, chart: Chart, deg_max: usize) -> Vec<CliffPoly> {
    let mut out = Vec::new();
    let blades = all_blades(m);
    for d in 0..=deg_max {
        for mono in monomials(m, d) {
            for b in &blades {
                out.push(CliffPoly::monomial(m, Roster::Single, chart, mono, b.clone()));
            }
        }
    }
    out
}

fn op(p: &CliffPoly, t: OperatorTag) -> CliffPoly {
    p.apply(t, Side::Left).expect("operator defined in this chart")
}

/// `{x, dx} = -2(E + m/2)` on every blade times monomial up to `deg_max`.
pub fn verify_osp(m: usize, deg_max: usize) -> Vec<Check> {
    let mut osp = Check::new("osp12", "osp(1|2) relation (osp12)").param("m", m).param("deg_max", deg_max);
    for p in basis_polys(m, Chart::Real, deg_max) {
        let lhs = &op(&op(&p, OperatorTag::DiracX), OperatorTag::VecX) + &op(&op(&p, OperatorTag::VecX), OperatorTag::DiracX);
        let rhs = (&op(&p, OperatorTag::EulerE) + &p.scale_rational(&Rational::new(m as i64, 2))).scale(&Gr::from_int(-2));
        osp.expect(lhs == rhs, || p.render(), || (&lhs - &rhs).render());
    }
    vec![osp]
}

/// `{z, dz} = E_z + beta` and `{zdag, dzdag} = E_zbar + n - beta` in both charts.
pub fn verify_sl12(n: usize, deg_max: usize) -> Vec<Check> {
    let m = 2 * n;
    let mut checks = Vec::new();
    let bt = beta(n);
    let nb = &Multivector::scalar(m, Gr::from_int(n as i64)) - &bt;
    for chart in [Chart::Real, Chart::Complex] {
        let tag = if chart == Chart::Real { "real" } else { "complex" };
        let mut a = Check::new("sl12a", "sl(1|2) relation (sl12a)").param("n", n).param("deg_max", deg_max).param("chart", tag);
        let mut b = Check::new("sl12b", "sl(1|2) relation (sl12b)").param("n", n).param("deg_max", deg_max).param("chart", tag);
        for p in basis_polys(m, chart, deg_max) {
            let lhs = &op(&op(&p, OperatorTag::DiracZ), OperatorTag::VecZ) + &op(&op(&p, OperatorTag::VecZ), OperatorTag::DiracZ);
            let rhs = &op(&p, OperatorTag::EulerEz) + &p.left_mul(&bt);
            a.expect(lhs == rhs, || p.render(), || (&lhs - &rhs).render());
            let lhs = &op(&op(&p, OperatorTag::DiracZdag), OperatorTag::VecZdag) + &op(&op(&p, OperatorTag::VecZdag), OperatorTag::DiracZdag);
            let rhs = &op(&p, OperatorTag::EulerEzbar) + &p.left_mul(&nb);
            b.expect(lhs == rhs, || p.render(), || (&lhs - &rhs).render());
        }
        checks.push(a);
        checks.push(b);
    }
    checks
}

/// Operator identities for the Laplacian and the Euler operators on every blade times monomial.
pub fn verify_laplace(m: usize, deg_max: usize) -> Vec<Check> {
    let mut sq = Check::new("laplace-dirac-square", "Delta = -dx^2").param("m", m).param("deg_max", deg_max);
    let mut euler = Check::new("euler-split", "E_z + E_zbar = E").param("m", m).param("deg_max", deg_max);
    let mut wirt = Check::new("laplace-wirtinger", "Delta = 4 sum dz dzbar").param("m", m).param("deg_max", deg_max);
    let mut anti = Check::new("laplace-dirac-pair", "4 {dz, dzdag} = Delta").param("m", m).param("deg_max", deg_max);
    let n = m / 2;
    for p in basis_polys(m, Chart::Real, deg_max) {
        let lap = op(&p, OperatorTag::Laplace);
        let dd = op(&op(&p, OperatorTag::DiracX), OperatorTag::DiracX);
        sq.expect(lap == -&dd, || p.render(), || (&lap + &dd).render());
        if m % 2 == 1 {
            continue;
        }
        let e = op(&p, OperatorTag::EulerE);
        let split = &op(&p, OperatorTag::EulerEz) + &op(&p, OperatorTag::EulerEzbar);
        euler.expect(e == split, || p.render(), || (&e - &split).render());
        let pc = p.to_chart(Chart::Complex);
        let mut w = pc.like();
        for j in 0..n {
            w += &pc.partial(j).partial(n + j);
        }
        let w = w.scale(&Gr::from_int(4));
        let lapc = lap.to_chart(Chart::Complex);
        wirt.expect(lapc == w, || p.render(), || (&lapc - &w).render());
        let a = (&op(&op(&pc, OperatorTag::DiracZ), OperatorTag::DiracZdag) + &op(&op(&pc, OperatorTag::DiracZdag), OperatorTag::DiracZ)).scale(&Gr::from_int(4));
        anti.expect(a == lapc, || p.render(), || (&a - &lapc).render());
    }
    let mut out = vec![sq];
    if m.is_multiple_of(2) {
        out.extend([euler, wirt, anti]);
    }
    out
}

/// Every operator gives the same result in the real and the complex chart.
pub fn verify_charts(m: usize, deg_max: usize) -> Vec<Check> {
    let mut c = Check::new("charts-agree", "real and complex coordinates").param("m", m).param("deg_max", deg_max);
    if m % 2 == 1 {
        return Vec::new();
    }
    for p in basis_polys(m, Chart::Real, deg_max) {
        let pc = p.to_chart(Chart::Complex);
        for t in OperatorTag::ALL {
            for side in [Side::Left, Side::Right] {
                let (Ok(r), Ok(cx)) = (p.apply(t, side), pc.apply(t, side)) else { continue };
                let back = cx.to_chart(Chart::Real);
                c.expect(r == back, || format!("{} {:?} on {}", t.name(), side, p.render()), || (&r - &back).render());
            }
        }
    }
    vec![c]
}

/// Adjointness of vector variables and Dirac operators under the Fischer product.
pub fn verify_duality(m: usize, deg_max: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let by_deg: Vec<Vec<CliffPoly>> = (0..=deg_max)
        .map(|d| {
            let blades = all_blades(m);
            monomials(m, d)
                .into_iter()
                .flat_map(|mono| blades.iter().map(move |b| CliffPoly::monomial(m, Roster::Single, Chart::Real, mono, b.clone())))
                .collect()
        })
        .collect();
    let images = |t: OperatorTag, d: usize| -> Vec<CliffPoly> { by_deg[d].iter().map(|p| op(p, t)).collect() };
    let ip = |a: &CliffPoly, b: &CliffPoly| fischer_inner(a, b).expect("same space");
    let mut c = Check::new("duality-euclidean", "Lemma Duality1").param("m", m).param("deg_max", deg_max);
    for d in 1..=deg_max {
        let dps = images(OperatorTag::DiracX, d);
        let xqs = images(OperatorTag::VecX, d - 1);
        for (p, dp) in by_deg[d].iter().zip(&dps) {
            for (q, xq) in by_deg[d - 1].iter().zip(&xqs) {
                let lhs = ip(dp, q);
                let rhs = -ip(p, xq);
                c.expect(lhs == rhs, || format!("P={p}, Q={q}"), || (&lhs - &rhs).render());
            }
        }
    }
    checks.push(c);
    if m.is_multiple_of(2) {
        let n = m / 2;
        let two = Gr::from_int(2);
        let pairs = [
            (OperatorTag::DiracZ, OperatorTag::VecZ, "duality-z"),
            (OperatorTag::DiracZdag, OperatorTag::VecZdag, "duality-zdag"),
        ];
        for (dirac, vec, name) in pairs {
            let mut left = Check::new(&format!("{name}-left"), "Lemma FischerSphere2").param("n", n).param("deg_max", deg_max);
            let mut right = Check::new(&format!("{name}-right"), "Lemma FischerSphere2").param("n", n).param("deg_max", deg_max);
            for d in 1..=deg_max {
                let dps = images(dirac, d);
                let vqs = images(vec, d - 1);
                for (p, dp) in by_deg[d].iter().zip(&dps) {
                    for (q, vq) in by_deg[d - 1].iter().zip(&vqs) {
                        // 2<dP, Q> = <P, vQ>
                        let lhs = ip(dp, q).scale(&two);
                        let rhs = ip(p, vq);
                        left.expect(lhs == rhs, || format!("P={p}, Q={q}"), || (&lhs - &rhs).render());
                        // <vQ, P> = 2<Q, dP>
                        let lhs = ip(vq, p);
                        let rhs = ip(q, dp).scale(&two);
                        right.expect(lhs == rhs, || format!("P={q}, Q={p}"), || (&lhs - &rhs).render());
                    }
                }
            }
            checks.push(left);
            checks.push(right);
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(src: &str, m: usize) -> CliffPoly {
        CliffPoly::parse_in(src, m, Roster::Single, Chart::Real).unwrap()
    }

    #[test]
    fn swap_slots_keeps_degrees() {
        let p = CliffPoly::parse_in("x1*y2^2 + 3*e12*x2^3 - y1", 3, Roster::Pair, Chart::Real).unwrap();
        let q = CliffPoly::parse_in("y1*x2^2 + 3*e12*y2^3 - x1", 3, Roster::Pair, Chart::Real).unwrap();
        assert_eq!(p.swap_slots().unwrap(), q);
        assert_eq!(p.swap_slots().unwrap().swap_slots().unwrap(), p);
    }

    #[test]
    fn monomial_order_and_counts() {
        let ms = monomials(2, 2);
        assert_eq!(ms.len(), 3);
        assert!(ms[0] < ms[1] && ms[1] < ms[2]);
        assert_eq!(ms[0].get(0), 2);
        for m in 1..=5 {
            for k in 0..=4 {
                let count = monomials(m, k).len();
                assert_eq!(Rational::from(count), crate::exactnum::binomial(m + k - 1, k));
            }
        }
        assert_eq!(bihomogeneous_monomials(2, 1, 1).len(), 4);
    }

    #[test]
    fn dirac_examples() {
        for m in 1..=5 {
            let x = CliffPoly::constant(m, Roster::Single, Chart::Real, Multivector::one(m)).apply(OperatorTag::VecX, Side::Left).unwrap();
            let dx = x.apply(OperatorTag::DiracX, Side::Left).unwrap();
            assert_eq!(dx, CliffPoly::constant(m, Roster::Single, Chart::Real, Multivector::scalar(m, Gr::from_int(-(m as i64)))));
        }
        for n in 1..=3 {
            let m = 2 * n;
            for chart in [Chart::Real, Chart::Complex] {
                let z = CliffPoly::one(m, Roster::Single, chart).apply(OperatorTag::VecZ, Side::Left).unwrap();
                let dz = z.apply(OperatorTag::DiracZ, Side::Left).unwrap();
                assert_eq!(dz, CliffPoly::constant(m, Roster::Single, chart, beta(n)));
            }
        }
        let p = real("x1^2*x2", 3);
        assert_eq!(p.apply(OperatorTag::EulerE, Side::Left).unwrap(), p.scale(&Gr::from_int(3)));
        assert!(p.apply(OperatorTag::VecX, Side::Right).is_err());
        assert!(real("x1", 3).apply(OperatorTag::DiracZ, Side::Left).is_err());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&real("x1^2 + x2^2", 3)), real("4", 3));
        assert!(laplacian(&real("x1^2 - x2^2", 3)).is_zero());
    }

    #[test]
    fn inner_product_examples() {
        for k in 0..=5 {
            let p = CliffPoly::monomial(3, Roster::Single, Chart::Real, Monomial::from_exps(&[k]), Multivector::one(3));
            assert_eq!(fischer_inner(&p, &p).unwrap().scalar_part(), Gr::real(factorial(k as usize)));
        }
        let one = real("1", 4);
        assert_eq!(sphere_inner(&one, &one).unwrap(), Multivector::one(4));
        for m in 2..=5 {
            let x1 = real("x1", m);
            assert_eq!(sphere_inner(&x1, &x1).unwrap().scalar_part(), Gr::real(Rational::new(1, m as i64)));
        }
        assert!(fischer_inner(&real("x1", 3), &real("x1", 4)).is_err());
    }

    #[test]
    fn charts_agree() {
        let p = real("x1^2*x3 - 2*e13*x2*x4 + i*e2*x4^3", 4);
        let c = p.to_chart(Chart::Complex);
        assert_eq!(c.to_chart(Chart::Real), p);
        for tag in OperatorTag::ALL {
            let a = p.apply(tag, Side::Left).unwrap();
            let b = c.apply(tag, Side::Left).unwrap().to_chart(Chart::Real);
            assert_eq!(a, b, "{}", tag.name());
        }
        for tag in [OperatorTag::DiracX, OperatorTag::DiracZ, OperatorTag::DiracZdag] {
            let a = p.apply(tag, Side::Right).unwrap();
            let b = c.apply(tag, Side::Right).unwrap().to_chart(Chart::Real);
            assert_eq!(a, b);
        }
        let q = real("x2*x3 + e4*x1^2*x2 + 3*x4^3", 4);
        for kind in [Pairing::Fischer, Pairing::Sphere] {
            assert_eq!(inner(kind, &p, &q).unwrap(), inner(kind, &c, &q.to_chart(Chart::Complex)).unwrap());
        }
    }

    #[test]
    fn text_round_trip_examples() {
        let p = CliffPoly::parse("1/2*e13*x1^2*y3 - (1+i)*e2*x2 + 3", 3).unwrap();
        assert_eq!(p.roster(), Roster::Pair);
        assert_eq!(CliffPoly::parse_in(&p.render(), 3, Roster::Pair, Chart::Real).unwrap(), p);
        let c = CliffPoly::parse("z1*zb2 - 2*i*e12*u1", 4).unwrap();
        assert_eq!(c.chart(), Chart::Complex);
        assert_eq!(CliffPoly::parse_in(&c.render(), 4, Roster::Pair, Chart::Complex).unwrap(), c);
        assert!(CliffPoly::parse("x1*z1", 4).is_err());
        assert!(CliffPoly::parse("x4", 3).is_err());
    }

    #[test]
    fn superalgebra_and_duality() {
        for c in verify_osp(3, 3).into_iter().chain(verify_sl12(2, 2)).chain(verify_laplace(4, 2)).chain(verify_charts(4, 2)) {
            assert!(c.passed(), "{c:?}");
        }
        for c in verify_duality(3, 2).into_iter().chain(verify_duality(2, 2)) {
            assert!(c.passed(), "{c:?}");
        }
    }

    fn arb_poly(m: usize, deg: usize) -> impl Strategy<Value = CliffPoly> {
        let monos = monomials(m, deg);
        let nm = monos.len();
        proptest::collection::vec((0..nm, 0u32..(1 << m), -3i64..4, -2i64..3), 1..6).prop_map(move |v| {
            CliffPoly::from_terms(
                m,
                Roster::Single,
                Chart::Real,
                v.into_iter().map(|(i, b, re, im)| {
                    (monos[i], Multivector::blade(m, b, Gr::new(Rational::from_int(re), Rational::from_int(im))))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn dirac_squares_to_minus_laplacian(p in (1usize..=5, 0usize..=4).prop_flat_map(|(m, d)| arb_poly(m, d))) {
            let dd = op(&op(&p, OperatorTag::DiracX), OperatorTag::DiracX);
            prop_assert_eq!(-&dd, laplacian(&p));
        }

        #[test]
        fn inner_products_are_hermitian(p in arb_poly(4, 3), q in arb_poly(4, 3)) {
            for kind in [Pairing::Fischer, Pairing::Sphere] {
                prop_assert_eq!(inner(kind, &p, &q).unwrap().conj(), inner(kind, &q, &p).unwrap());
            }
        }

        #[test]
        fn right_dirac_is_conjugate_of_left(p in arb_poly(4, 3)) {
            let r = p.apply(OperatorTag::DiracX, Side::Right).unwrap().map_coeffs(|c| c.conj());
            let l = p.map_coeffs(|c| c.conj()).apply(OperatorTag::DiracX, Side::Left).unwrap();
            prop_assert_eq!(r, -&l);
        }

        #[test]
        fn complex_eulers_sum_to_euler(p in arb_poly(4, 3)) {
            let a = &op(&p, OperatorTag::EulerEz) + &op(&p, OperatorTag::EulerEzbar);
            prop_assert_eq!(a, op(&p, OperatorTag::EulerE));
        }

        #[test]
        fn different_degrees_are_fischer_orthogonal(p in arb_poly(3, 2), q in arb_poly(3, 3)) {
            prop_assert!(fischer_inner(&p, &q).unwrap().is_zero());
        }

        #[test]
        fn chart_round_trip(p in arb_poly(4, 3)) {
            prop_assert_eq!(p.to_chart(Chart::Complex).to_chart(Chart::Real), p);
        }

        #[test]
        fn text_round_trip(p in arb_poly(3, 3)) {
            prop_assert_eq!(CliffPoly::parse_in(&p.render(), 3, Roster::Single, Chart::Real).unwrap(), p);
        }
    }
}
