//! Towers of algebraic extensions of `Q`.
//!
//! A tower is a list of levels, each carrying the monic minimal polynomial of
//! its generator over the level below. Elements are nested polynomial values
//! in the generators. Inverses come from the extended Euclidean algorithm,
//! factorization over a tower from Trager's norm descent, and minimal
//! polynomials over `Q` from exact linear algebra on flattened coordinate
//! vectors.

use super::matrix::{det_bareiss, RowSpace};
use super::scalar::{Domain, Field, Rat};
use super::unipoly::UniPoly;
use super::zfactor;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

/// Default cap on the number of tower levels.
pub const DEFAULT_TOWER_DEPTH_CAP: usize = 3;

/// Value of an element: a rational at depth 0, otherwise a polynomial in the
/// top generator with coefficients one depth down. Trailing zero coefficients
/// are always trimmed, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Val {
    Rat(Rat),
    Ext(Vec<Val>),
}

#[derive(Debug)]
struct Level {
    /// Monic minimal polynomial of this level's generator; coefficients are
    /// values at the previous depth. Degree at least 2.
    minpoly: Vec<Val>,
}

#[derive(Debug)]
struct TowerData {
    levels: Vec<Level>,
}

/// Shared-ownership handle to a tower. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Tower {
    data: Arc<TowerData>,
}

#[derive(Clone, Debug)]
pub struct TowerElement {
    tower: Tower,
    val: Val,
}

// ---- Val arithmetic over a level list ----

fn vzero(depth: usize) -> Val {
    if depth == 0 {
        Val::Rat(Rat::zero())
    } else {
        Val::Ext(Vec::new())
    }
}

fn vone(depth: usize) -> Val {
    if depth == 0 {
        Val::Rat(Rat::one())
    } else {
        Val::Ext(vec![vone(depth - 1)])
    }
}

fn vis_zero(v: &Val) -> bool {
    match v {
        Val::Rat(r) => r.is_zero(),
        Val::Ext(c) => c.is_empty(),
    }
}

fn vtrim(mut coeffs: Vec<Val>) -> Vec<Val> {
    while coeffs.last().map(vis_zero).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

fn vlift(v: Val, from_depth: usize, to_depth: usize) -> Val {
    let mut v = v;
    for _ in from_depth..to_depth {
        if vis_zero(&v) {
            v = Val::Ext(Vec::new());
        } else {
            v = Val::Ext(vec![v]);
        }
    }
    v
}

fn vadd(levels: &[Level], depth: usize, a: &Val, b: &Val) -> Val {
    match (a, b) {
        (Val::Rat(x), Val::Rat(y)) => Val::Rat(x + y),
        (Val::Ext(xs), Val::Ext(ys)) => {
            let n = xs.len().max(ys.len());
            let mut out = Vec::with_capacity(n);
            let z = vzero(depth - 1);
            for i in 0..n {
                out.push(vadd(levels, depth - 1, xs.get(i).unwrap_or(&z), ys.get(i).unwrap_or(&z)));
            }
            Val::Ext(vtrim(out))
        }
        _ => unreachable!("depth mismatch in vadd"),
    }
}

fn vneg(v: &Val) -> Val {
    match v {
        Val::Rat(r) => Val::Rat(-r),
        Val::Ext(c) => Val::Ext(c.iter().map(vneg).collect()),
    }
}

fn vsub(levels: &[Level], depth: usize, a: &Val, b: &Val) -> Val {
    vadd(levels, depth, a, &vneg(b))
}

fn vmul(levels: &[Level], depth: usize, a: &Val, b: &Val) -> Val {
    match (a, b) {
        (Val::Rat(x), Val::Rat(y)) => Val::Rat(x * y),
        (Val::Ext(xs), Val::Ext(ys)) => {
            if xs.is_empty() || ys.is_empty() {
                return Val::Ext(Vec::new());
            }
            let mut conv = vec![vzero(depth - 1); xs.len() + ys.len() - 1];
            for (i, x) in xs.iter().enumerate() {
                if vis_zero(x) {
                    continue;
                }
                for (j, y) in ys.iter().enumerate() {
                    let t = vmul(levels, depth - 1, x, y);
                    conv[i + j] = vadd(levels, depth - 1, &conv[i + j], &t);
                }
            }
            Val::Ext(vreduce(levels, depth, conv))
        }
        _ => unreachable!("depth mismatch in vmul"),
    }
}

/// Reduce a coefficient list modulo the (monic) minimal polynomial of the
/// level `depth`.
fn vreduce(levels: &[Level], depth: usize, mut poly: Vec<Val>) -> Vec<Val> {
    let mp = &levels[depth - 1].minpoly;
    let deg = mp.len() - 1;
    let mut i = poly.len();
    while i > deg {
        i -= 1;
        let c = poly[i].clone();
        if vis_zero(&c) {
            continue;
        }
        for (j, m) in mp.iter().take(deg).enumerate() {
            let t = vmul(levels, depth - 1, &c, m);
            poly[i - deg + j] = vsub(levels, depth - 1, &poly[i - deg + j], &t);
        }
        poly[i] = vzero(depth - 1);
    }
    vtrim(poly)
}

/// Inverse via extended Euclid against the level minimal polynomial.
fn vinv(levels: &[Level], depth: usize, a: &Val) -> Val {
    assert!(!vis_zero(a), "tower inversion of zero");
    match a {
        Val::Rat(r) => Val::Rat(r.recip()),
        Val::Ext(coeffs) => {
            let mp = levels[depth - 1].minpoly.clone();
            // extended Euclid in K[z] for K at depth-1
            let mut r0 = mp;
            let mut r1 = coeffs.clone();
            let mut t0: Vec<Val> = Vec::new();
            let mut t1: Vec<Val> = vec![vone(depth - 1)];
            while !r1.is_empty() {
                let (q, r) = vpoly_divrem(levels, depth - 1, &r0, &r1);
                let qt1 = vpoly_mul(levels, depth - 1, &q, &t1);
                let nt = vpoly_sub(levels, depth - 1, &t0, &qt1);
                r0 = r1;
                r1 = r;
                t0 = t1;
                t1 = nt;
            }
            assert_eq!(r0.len(), 1, "element not invertible: gcd with minimal polynomial has positive degree");
            let ginv = vinv(levels, depth - 1, &r0[0]);
            let scaled: Vec<Val> = t0.iter().map(|c| vmul(levels, depth - 1, c, &ginv)).collect();
            Val::Ext(vreduce(levels, depth, vtrim(scaled)))
        }
    }
}

// polynomial helpers over Vals at a fixed depth

fn vpoly_sub(levels: &[Level], depth: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
    let n = a.len().max(b.len());
    let z = vzero(depth);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(vsub(levels, depth, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)));
    }
    vtrim(out)
}

fn vpoly_mul(levels: &[Level], depth: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![vzero(depth); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if vis_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = vmul(levels, depth, x, y);
            out[i + j] = vadd(levels, depth, &out[i + j], &t);
        }
    }
    vtrim(out)
}

fn vpoly_divrem(levels: &[Level], depth: usize, a: &[Val], b: &[Val]) -> (Vec<Val>, Vec<Val>) {
    assert!(!b.is_empty(), "polynomial division by zero over tower");
    let db = b.len() - 1;
    let lcinv = vinv(levels, depth, b.last().unwrap());
    let mut rem: Vec<Val> = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), vtrim(rem));
    }
    let mut quot = vec![vzero(depth); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if vis_zero(&rem[i]) {
            continue;
        }
        let q = vmul(levels, depth, &rem[i], &lcinv);
        quot[i - db] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = vmul(levels, depth, &q, bc);
            rem[i - db + j] = vsub(levels, depth, &rem[i - db + j], &t);
        }
    }
    (vtrim(quot), vtrim(rem))
}

// ---- Tower ----

impl Tower {
    /// The trivial tower: plain `Q`.
    pub fn rational() -> Tower {
        static RATIONAL: OnceLock<Tower> = OnceLock::new();
        RATIONAL
            .get_or_init(|| Tower { data: Arc::new(TowerData { levels: Vec::new() }) })
            .clone()
    }

    pub fn depth(&self) -> usize {
        self.data.levels.len()
    }

    /// Total degree over `Q`.
    pub fn degree(&self) -> usize {
        self.data.levels.iter().map(|l| l.minpoly.len() - 1).product()
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.data.levels[level].minpoly.len() - 1
    }

    fn same(&self, other: &Tower) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.levels_eq(other, self.depth().min(other.depth())) && self.depth() == other.depth()
    }

    fn levels_eq(&self, other: &Tower, upto: usize) -> bool {
        (0..upto).all(|i| self.data.levels[i].minpoly == other.data.levels[i].minpoly)
    }

    /// True when `self` is a prefix of `other` (every level equal).
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.depth() <= other.depth() && self.levels_eq(other, self.depth())
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement { tower: self.clone(), val: vzero(self.depth()) }
    }

    pub fn one(&self) -> TowerElement {
        TowerElement { tower: self.clone(), val: vone(self.depth()) }
    }

    pub fn from_rat(&self, r: &Rat) -> TowerElement {
        if r.is_zero() {
            return self.zero();
        }
        TowerElement { tower: self.clone(), val: vlift(Val::Rat(r.clone()), 0, self.depth()) }
    }

    /// The generator of `level` (0-based), as an element of this tower.
    pub fn generator(&self, level: usize) -> TowerElement {
        assert!(level < self.depth(), "generator level out of range");
        let gen_at_level = Val::Ext(vec![vzero(level), vone(level)]);
        TowerElement {
            tower: self.clone(),
            val: vlift(gen_at_level, level + 1, self.depth()),
        }
    }

    /// The tower consisting of the first `depth` levels.
    pub fn prefix(&self, depth: usize) -> Tower {
        assert!(depth <= self.depth());
        if depth == self.depth() {
            return self.clone();
        }
        if depth == 0 {
            return Tower::rational();
        }
        Tower {
            data: Arc::new(TowerData {
                levels: self.data.levels[..depth]
                    .iter()
                    .map(|l| Level { minpoly: l.minpoly.clone() })
                    .collect(),
            }),
        }
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

// ---- TowerElement ----

impl TowerElement {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Lift into a tower that has this element's tower as a prefix.
    pub fn lift_to(&self, target: &Tower) -> TowerElement {
        assert!(
            self.tower.is_prefix_of(target),
            "lift_to target does not extend the element's tower"
        );
        TowerElement {
            tower: target.clone(),
            val: vlift(self.val.clone(), self.tower.depth(), target.depth()),
        }
    }

    fn unified(&self, other: &Self) -> (Tower, Val, Val) {
        if self.tower.same(&other.tower) {
            return (self.tower.clone(), self.val.clone(), other.val.clone());
        }
        if self.tower.is_prefix_of(&other.tower) {
            let t = other.tower.clone();
            let a = vlift(self.val.clone(), self.tower.depth(), t.depth());
            return (t, a, other.val.clone());
        }
        if other.tower.is_prefix_of(&self.tower) {
            let t = self.tower.clone();
            let b = vlift(other.val.clone(), other.tower.depth(), t.depth());
            return (t, self.val.clone(), b);
        }
        panic!("arithmetic between incompatible towers");
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.tower.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Exact coordinates over `Q` in the multiplicative basis of generator
    /// power products; length is the tower degree.
    pub fn flatten(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.tower.degree());
        flatten_val(&self.tower.data.levels, self.tower.depth(), &self.val, &mut out);
        out
    }
}

fn flatten_block_size(levels: &[Level], depth: usize) -> usize {
    levels[..depth].iter().map(|l| l.minpoly.len() - 1).product()
}

fn flatten_val(levels: &[Level], depth: usize, v: &Val, out: &mut Vec<Rat>) {
    if depth == 0 {
        match v {
            Val::Rat(r) => out.push(r.clone()),
            _ => unreachable!(),
        }
        return;
    }
    let deg = levels[depth - 1].minpoly.len() - 1;
    let block = flatten_block_size(levels, depth - 1);
    match v {
        Val::Ext(coeffs) => {
            for i in 0..deg {
                match coeffs.get(i) {
                    Some(c) => flatten_val(levels, depth - 1, c, out),
                    None => out.extend(std::iter::repeat_with(Rat::zero).take(block)),
                }
            }
        }
        _ => unreachable!(),
    }
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        let (_, a, b) = self.unified(other);
        a == b
    }
}

impl Zero for TowerElement {
    fn zero() -> Self {
        Tower::rational().zero()
    }
    fn is_zero(&self) -> bool {
        vis_zero(&self.val)
    }
}

impl One for TowerElement {
    fn one() -> Self {
        Tower::rational().one()
    }
}

impl Add for TowerElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (t, a, b) = self.unified(&rhs);
        let val = vadd(&t.data.levels, t.depth(), &a, &b);
        TowerElement { tower: t, val }
    }
}

impl Sub for TowerElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (t, a, b) = self.unified(&rhs);
        let val = vsub(&t.data.levels, t.depth(), &a, &b);
        TowerElement { tower: t, val }
    }
}

impl Neg for TowerElement {
    type Output = Self;
    fn neg(self) -> Self {
        TowerElement { tower: self.tower, val: vneg(&self.val) }
    }
}

impl Mul for TowerElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (t, a, b) = self.unified(&rhs);
        let val = vmul(&t.data.levels, t.depth(), &a, &b);
        TowerElement { tower: t, val }
    }
}

impl Domain for TowerElement {
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() * d.inv().expect("tower division by zero")
    }
}

impl Field for TowerElement {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let val = vinv(&self.tower.data.levels, self.tower.depth(), &self.val);
        Some(TowerElement { tower: self.tower.clone(), val })
    }

    fn from_rat(r: &Rat) -> Self {
        Tower::rational().from_rat(r)
    }

    fn to_rat(&self) -> Option<Rat> {
        fn unnest(v: &Val) -> Option<Rat> {
            match v {
                Val::Rat(r) => Some(r.clone()),
                Val::Ext(c) if c.is_empty() => Some(Rat::zero()),
                Val::Ext(c) if c.len() == 1 => unnest(&c[0]),
                Val::Ext(_) => None,
            }
        }
        unnest(&self.val)
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn render(v: &Val, depth: usize) -> String {
            match v {
                Val::Rat(r) => r.to_string(),
                Val::Ext(coeffs) => {
                    if coeffs.is_empty() {
                        return "0".to_string();
                    }
                    let var = format!("r{depth}");
                    let mut parts = Vec::new();
                    for (i, c) in coeffs.iter().enumerate().rev() {
                        if vis_zero(c) {
                            continue;
                        }
                        let cs = render(c, depth - 1);
                        let cs = if cs.contains(['+', '-', ' ']) { format!("({cs})") } else { cs };
                        let part = match i {
                            0 => cs,
                            _ => {
                                let v = if i == 1 { var.clone() } else { format!("{var}^{i}") };
                                if cs == "1" {
                                    v
                                } else {
                                    format!("{cs}*{v}")
                                }
                            }
                        };
                        parts.push(part);
                    }
                    parts.join(" + ")
                }
            }
        }
        f.write_str(&render(&self.val, self.tower.depth()))
    }
}

// ---- extension and factorization ----

/// Extend `tower` by the monic irreducible `minpoly` (no irreducibility
/// check; callers must have factored already). Returns the extended tower and
/// its new generator.
pub(crate) fn extend_irreducible(
    tower: &Tower,
    minpoly: &UniPoly<TowerElement>,
    cap: usize,
) -> Result<(Tower, TowerElement)> {
    let deg = minpoly.deg().expect("empty minimal polynomial");
    assert!(deg >= 2, "extension by a degree < 2 polynomial");
    assert!(minpoly.lc().clone().to_rat() == Some(Rat::one()), "minimal polynomial must be monic");
    if tower.depth() + 1 > cap {
        return Err(Error::TowerDepth { cap, degree: deg });
    }
    let depth = tower.depth();
    let coeffs: Vec<Val> = (0..=deg)
        .map(|i| {
            let c = minpoly.coeff(i);
            assert!(
                c.tower().is_prefix_of(tower) || c.tower().same(tower),
                "minimal polynomial coefficient from a different tower"
            );
            vlift(c.val.clone(), c.tower.depth(), depth)
        })
        .collect();
    let mut levels: Vec<Level> =
        tower.data.levels.iter().map(|l| Level { minpoly: l.minpoly.clone() }).collect();
    levels.push(Level { minpoly: coeffs });
    let new = Tower { data: Arc::new(TowerData { levels }) };
    let gen = new.generator(depth);
    Ok((new, gen))
}

/// Extend a tower by a monic polynomial, verifying irreducibility first.
/// On reducible input the factorization found is reported in the error.
pub fn extend_tower(
    tower: &Tower,
    minpoly: &UniPoly<TowerElement>,
    cap: usize,
) -> Result<(Tower, TowerElement)> {
    let (_, factors) = factor_over_tower(minpoly, tower);
    if factors.len() != 1 || factors[0].1 != 1 {
        let rendered: Vec<String> = factors
            .iter()
            .map(|(p, m)| if *m == 1 { format!("({p})") } else { format!("({p})^{m}") })
            .collect();
        return Err(Error::Precondition(format!(
            "reducible minimal polynomial: {}",
            rendered.join(" * ")
        )));
    }
    extend_irreducible(tower, &factors[0].0.clone(), cap)
}

/// Norm from the top level of `tower` down one level: the resultant in the
/// generator variable of the level minimal polynomial and `h` rewritten with
/// polynomial coefficients.
fn norm_top(h: &UniPoly<TowerElement>, tower: &Tower) -> UniPoly<TowerElement> {
    let depth = tower.depth();
    assert!(depth >= 1);
    let lower = tower.prefix(depth - 1);
    let m = tower.level_degree(depth - 1);

    // h as a polynomial in z (top generator) with UniPoly-in-t coefficients
    let mut zcoeffs: Vec<UniPoly<TowerElement>> = vec![UniPoly::zero(); m];
    for (j, c) in h.coeffs().iter().enumerate() {
        let cv = vlift(c.val.clone(), c.tower.depth(), depth);
        let Val::Ext(cc) = cv else { unreachable!() };
        for (i, v) in cc.into_iter().enumerate() {
            let e = TowerElement { tower: lower.clone(), val: v };
            if !e.is_zero() {
                let mono = UniPoly::monomial(e, j);
                zcoeffs[i] = zcoeffs[i].clone() + mono;
            }
        }
    }
    while zcoeffs.last().map(|p| p.is_zero()).unwrap_or(false) {
        zcoeffs.pop();
    }
    let mp = &tower.data.levels[depth - 1].minpoly;
    if zcoeffs.len() <= 1 {
        // h has coefficients in the lower field: norm is h^m
        let base = zcoeffs.pop().unwrap_or_else(UniPoly::zero);
        return base.pow(m);
    }
    let dz_h = zcoeffs.len() - 1;
    // Sylvester matrix of (minpoly in z, h in z) over the domain K_lower[t]
    let size = m + dz_h;
    let mut mat = vec![vec![UniPoly::<TowerElement>::zero(); size]; size];
    for row in 0..dz_h {
        for (k, c) in mp.iter().enumerate() {
            let e = TowerElement { tower: lower.clone(), val: c.clone() };
            mat[row][row + (m - k)] = UniPoly::constant(e);
        }
    }
    for row in 0..m {
        for (k, c) in zcoeffs.iter().enumerate() {
            mat[dz_h + row][row + (dz_h - k)] = c.clone();
        }
    }
    det_bareiss(&mat)
}

/// Factor a polynomial over a tower: `h = unit * prod h_i^{m_i}` with monic
/// irreducible `h_i`, deterministically ordered.
pub fn factor_over_tower(
    h: &UniPoly<TowerElement>,
    tower: &Tower,
) -> (TowerElement, Vec<(UniPoly<TowerElement>, usize)>) {
    assert!(!h.is_zero(), "factorization of zero over tower");
    let unit = h.lc().clone();
    if h.deg() == Some(0) {
        return (unit, Vec::new());
    }
    if tower.depth() == 0 {
        let hq = h.map_coeffs(|c| c.to_rat().expect("rational tower element"));
        let (u, factors) = zfactor::factor_q(&hq);
        let t0 = Tower::rational();
        return (
            t0.from_rat(&u),
            factors
                .into_iter()
                .map(|(p, m)| (p.map_coeffs(|c| t0.from_rat(c)), m))
                .collect(),
        );
    }
    let (_, squarefree) = h.squarefree_decomposition();
    let mut out: Vec<(UniPoly<TowerElement>, usize)> = Vec::new();
    for (part, mult) in squarefree {
        for p in trager_factor_squarefree(&part, tower) {
            out.push((p, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    (unit, out)
}

fn trager_factor_squarefree(
    h: &UniPoly<TowerElement>,
    tower: &Tower,
) -> Vec<UniPoly<TowerElement>> {
    let h = h.monic();
    if h.deg() == Some(1) {
        return vec![h];
    }
    let depth = tower.depth();
    let theta = tower.generator(depth - 1);
    let lower = tower.prefix(depth - 1);
    for s in 0..64u64 {
        // shifted polynomial h(t - s*theta)
        let shift = UniPoly::new(vec![
            -(tower.from_rat(&Rat::from_integer(s.into())) * theta.clone()),
            tower.one(),
        ]);
        let hs = h.compose(&shift);
        let n = norm_top(&hs, tower);
        let n = n.monic();
        // squarefree test over the lower field
        if n.gcd(&n.derivative()).deg() != Some(0) {
            continue;
        }
        let (_, nf) = factor_over_tower(&n, &lower);
        let unshift = UniPoly::new(vec![
            tower.from_rat(&Rat::from_integer(s.into())) * theta.clone(),
            tower.one(),
        ]);
        let mut out = Vec::new();
        for (f, m) in nf {
            debug_assert_eq!(m, 1, "squarefree norm with repeated factor");
            let f_up = f.map_coeffs(|c| c.lift_to(tower));
            let g = hs.gcd(&f_up);
            if g.deg().map(|d| d > 0).unwrap_or(false) {
                out.push(g.compose(&unshift).monic());
            }
        }
        let total: usize = out.iter().map(|p| p.deg().unwrap()).sum();
        assert_eq!(total, h.deg().unwrap(), "Trager factors do not cover the input");
        return out;
    }
    panic!("no squarefree norm shift found");
}

// ---- linear algebra over Q ----

/// Minimal polynomial over `Q`, monic, by flattened power iteration.
pub fn minpoly_over_q(e: &TowerElement) -> UniPoly<Rat> {
    let n = e.tower.degree();
    let mut rs = RowSpace::new(n);
    let mut powers: Vec<TowerElement> = Vec::new();
    let mut p = e.tower.one();
    loop {
        let flat = p.flatten();
        if !rs.insert(&flat) {
            // p is dependent on lower powers
            let coeffs = rs.express(&flat).expect("dependence without expression");
            let k = powers.len();
            let mut mp = vec![Rat::zero(); k + 1];
            for (i, c) in coeffs.iter().enumerate() {
                mp[i] = -c.clone();
            }
            mp[k] = Rat::one();
            return UniPoly::new(mp);
        }
        powers.push(p.clone());
        p = p * e.clone();
        assert!(powers.len() <= n, "power iteration exceeded tower degree");
    }
}

pub fn degree_over_q(e: &TowerElement) -> usize {
    minpoly_over_q(e).deg().unwrap()
}

/// Minimal polynomial of `c` over the field `Q(gamma)`, returned as the
/// degree together with the canonical coefficient grid: entry `(j, i)` is the
/// rational coefficient of `gamma^i c^j`, for `j < d`, `i < deg(gamma)`, with
/// `c^d = sum grid[j][i] gamma^i c^j`. The grid is the unique such
/// representation, so equal grids certify conjugate landings.
pub fn relative_minpoly(c: &TowerElement, gamma: &TowerElement) -> (usize, Vec<Vec<Rat>>) {
    let tower = if gamma.tower.is_prefix_of(&c.tower) { &c.tower } else { &gamma.tower };
    let gamma = gamma.lift_to(tower);
    let c = c.lift_to(tower);
    let n = tower.degree();
    let dg = degree_over_q(&gamma);
    let gamma_pows: Vec<TowerElement> = power_list(&gamma, dg);
    for d in 1..=n {
        let mut rs = RowSpace::new(n);
        let c_pows = power_list(&c, d + 1);
        let mut independent = true;
        for cj in c_pows.iter().take(d) {
            for gi in &gamma_pows {
                let v = (gi.clone() * cj.clone()).flatten();
                if !rs.insert(&v) {
                    independent = false;
                }
            }
        }
        assert!(independent, "power products dependent below the minimal degree");
        if let Some(coeffs) = rs.express(&c_pows[d].flatten()) {
            let mut grid = vec![vec![Rat::zero(); dg]; d];
            for (k, q) in coeffs.iter().enumerate() {
                let j = k / dg;
                let i = k % dg;
                grid[j][i] = q.clone();
            }
            return (d, grid);
        }
    }
    unreachable!("element not algebraic over the subfield");
}

fn power_list(e: &TowerElement, k: usize) -> Vec<TowerElement> {
    let mut out = Vec::with_capacity(k);
    let mut p = e.tower.one();
    for _ in 0..k {
        out.push(p.clone());
        p = p * e.clone();
    }
    out
}

/// A primitive element for `Q(gamma, c)`: the first `gamma + lambda c` over
/// `lambda = 0, 1, 2, ...` whose degree over `Q` is `deg(gamma) * d` where
/// `d = [Q(gamma)(c) : Q(gamma)]`. Returns `(element, lambda, degree)`.
pub fn primitive_join(gamma: &TowerElement, c: &TowerElement) -> (TowerElement, u64, usize) {
    let tower = if gamma.tower.is_prefix_of(&c.tower) { &c.tower } else { &gamma.tower };
    let gamma = gamma.lift_to(tower);
    let c = c.lift_to(tower);
    let (d, _) = relative_minpoly(&c, &gamma);
    let dg = degree_over_q(&gamma);
    let target = dg * d;
    for lambda in 0..10_000u64 {
        let lam = tower.from_rat(&Rat::from_integer(lambda.into()));
        let e = gamma.clone() + lam * c.clone();
        if degree_over_q(&e) == target {
            return (e, lambda, target);
        }
    }
    unreachable!("no primitive element found");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::rat_int;

    fn qpoly_over(t: &Tower, coeffs: &[i64]) -> UniPoly<TowerElement> {
        UniPoly::new(coeffs.iter().map(|&c| t.from_rat(&rat_int(c))).collect())
    }

    fn sqrt2_tower() -> (Tower, TowerElement) {
        let q = Tower::rational();
        let mp = qpoly_over(&q, &[-2, 0, 1]);
        extend_tower(&q, &mp, DEFAULT_TOWER_DEPTH_CAP).unwrap()
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let (t, the) = sqrt2_tower();
        // (1 + r)^2 = 3 + 2r
        let one_plus = t.one() + the.clone();
        let sq = one_plus.clone() * one_plus.clone();
        assert_eq!(sq, t.from_rat(&rat_int(3)) + t.from_rat(&rat_int(2)) * the.clone());
        // theta^2 = 2
        assert_eq!(the.clone() * the.clone(), t.from_rat(&rat_int(2)));
        // 1/(1+r) = r - 1
        let inv = one_plus.inv().unwrap();
        assert_eq!(inv, the.clone() - t.one());
        assert_eq!(inv * one_plus, t.one());
    }

    #[test]
    fn reducible_extension_rejected_with_factors() {
        let q = Tower::rational();
        let mp = qpoly_over(&q, &[-4, 0, 1]);
        let err = extend_tower(&q, &mp, DEFAULT_TOWER_DEPTH_CAP).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("reducible"), "{msg}");
        assert!(msg.contains("t - 2") && msg.contains("t + 2"), "{msg}");
    }

    #[test]
    fn depth_cap_enforced() {
        let (t, _) = sqrt2_tower();
        let mp = qpoly_over(&t, &[-3, 0, 1]);
        let err = extend_tower(&t, &mp, 1).unwrap_err();
        assert!(matches!(err, Error::TowerDepth { cap: 1, .. }));
    }

    #[test]
    fn nested_tower_and_minpoly_over_q() {
        let (t1, th1) = sqrt2_tower();
        // w^2 = 1 + sqrt(2)
        let mp = UniPoly::new(vec![-(t1.one() + th1.clone()), t1.zero(), t1.one()]);
        let (t2, w) = extend_tower(&t1, &mp, 3).unwrap();
        assert_eq!(t2.degree(), 4);
        let m = minpoly_over_q(&w);
        // w^4 - 2w^2 - 1
        let expected = UniPoly::new(vec![rat_int(-1), rat_int(0), rat_int(-2), rat_int(0), rat_int(1)]);
        assert_eq!(m, expected);
        // arithmetic touching both levels: (w + th1)^2 has degree 4 over Q
        let s = w.clone() + th1.lift_to(&t2);
        assert_eq!(degree_over_q(&s), 4);
        // inverse round-trip
        let si = s.inv().unwrap();
        assert_eq!(si * s, t2.one());
    }

    #[test]
    fn factor_splits_over_extension() {
        let (t, the) = sqrt2_tower();
        // z^2 - 2 = (z - r)(z + r) over Q(r)
        let h = qpoly_over(&t, &[-2, 0, 1]);
        let (_, factors) = factor_over_tower(&h, &t);
        assert_eq!(factors.len(), 2);
        for (f, m) in &factors {
            assert_eq!(*m, 1);
            assert_eq!(f.deg(), Some(1));
            let root = -(f.coeff(0));
            assert!(root == the || root == -the.clone());
        }
    }

    #[test]
    fn factor_x4_plus_1_over_sqrt2() {
        let (t, the) = sqrt2_tower();
        let h = qpoly_over(&t, &[1, 0, 0, 0, 1]);
        let (_, factors) = factor_over_tower(&h, &t);
        assert_eq!(factors.len(), 2);
        // (z^2 + r z + 1)(z^2 - r z + 1)
        let mut prod = UniPoly::one();
        for (f, _) in &factors {
            assert_eq!(f.deg(), Some(2));
            assert_eq!(f.coeff(0), t.one());
            assert!(f.coeff(1) == the || f.coeff(1) == -the.clone());
            prod = prod * f.clone();
        }
        assert_eq!(prod, h);
    }

    #[test]
    fn minpoly_of_rational_is_linear() {
        let q = Tower::rational();
        let e = q.from_rat(&rat_int(5));
        let m = minpoly_over_q(&e);
        assert_eq!(m, UniPoly::new(vec![rat_int(-5), rat_int(1)]));
    }

    #[test]
    fn relative_minpoly_distinguishes_conjugates() {
        let (t, the) = sqrt2_tower();
        // c = theta over gamma = theta: c = gamma, grid is [[0, 1]]
        let (d, grid) = relative_minpoly(&the, &the);
        assert_eq!(d, 1);
        assert_eq!(grid, vec![vec![rat_int(0), rat_int(1)]]);
        // c = -theta over gamma = -theta: same grid, certifying conjugacy
        let neg = -the.clone();
        let (d2, grid2) = relative_minpoly(&neg, &neg);
        assert_eq!(d2, 1);
        assert_eq!(grid2, grid);
        // c = 1 + theta over gamma = theta: grid [[1, 1]]
        let c = t.one() + the.clone();
        let (d3, grid3) = relative_minpoly(&c, &the);
        assert_eq!(d3, 1);
        assert_eq!(grid3, vec![vec![rat_int(1), rat_int(1)]]);
    }

    #[test]
    fn relative_minpoly_over_smaller_field() {
        let (t1, th1) = sqrt2_tower();
        let mp = qpoly_over(&t1, &[-3, 0, 1]);
        let (t2, th2) = extend_tower(&t1, &mp, 3).unwrap();
        // sqrt(3) over Q(sqrt 2): degree 2, c^2 = 3
        let gamma = th1.lift_to(&t2);
        let (d, grid) = relative_minpoly(&th2, &gamma);
        assert_eq!(d, 2);
        assert_eq!(grid[0], vec![rat_int(3), rat_int(0)]);
        assert_eq!(grid[1], vec![rat_int(0), rat_int(0)]);
    }

    #[test]
    fn primitive_join_reaches_full_degree() {
        let (t1, th1) = sqrt2_tower();
        let mp = qpoly_over(&t1, &[-3, 0, 1]);
        let (t2, th2) = extend_tower(&t1, &mp, 3).unwrap();
        let gamma = th1.lift_to(&t2);
        let (e, _, deg) = primitive_join(&gamma, &th2);
        assert_eq!(deg, 4);
        assert_eq!(degree_over_q(&e), 4);
    }

    #[test]
    fn rational_and_extension_interoperate() {
        let (t, the) = sqrt2_tower();
        let two = TowerElement::from_rat(&rat_int(2));
        let s = the.clone() * the.clone() - two;
        assert!(s.is_zero());
        let mixed = the.clone() + TowerElement::from_rat(&rat_int(1));
        assert_eq!(mixed.to_rat(), None);
        assert_eq!(t.from_rat(&rat_int(7)).to_rat(), Some(rat_int(7)));
    }
}
