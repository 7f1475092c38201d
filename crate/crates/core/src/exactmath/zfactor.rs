//! Univariate factorization over `Q`, done over `Z`: reduction mod a good
//! small prime, Berlekamp splitting, quadratic Hensel lifting past the
//! coefficient bound, and subset recombination.

use super::scalar::Rat;
use super::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

type ZPoly = Vec<BigInt>;

/// Factor over `Q`: `f = unit * prod f_i^{m_i}` with the `f_i` monic,
/// irreducible and pairwise distinct, sorted by degree then lexicographically.
pub fn factor_q(f: &UniPoly<Rat>) -> (Rat, Vec<(UniPoly<Rat>, usize)>) {
    assert!(!f.is_zero(), "factorization of zero");
    let (lc, squarefree) = f.squarefree_decomposition();
    let mut out: Vec<(UniPoly<Rat>, usize)> = Vec::new();
    for (part, mult) in squarefree {
        let zpoly = to_primitive_z(&part);
        for factor in factor_squarefree_primitive(&zpoly) {
            out.push((to_monic_q(&factor), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    (lc, out)
}

/// True when `f` is irreducible over `Q` (constants are not).
pub fn is_irreducible_q(f: &UniPoly<Rat>) -> bool {
    match f.deg() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let (_, factors) = factor_q(f);
            factors.len() == 1 && factors[0].1 == 1
        }
    }
}

fn to_primitive_z(f: &UniPoly<Rat>) -> ZPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return ints;
    }
    ints.iter().map(|c| c / &content).collect()
}

fn to_monic_q(f: &ZPoly) -> UniPoly<Rat> {
    let lc = f.last().expect("empty factor").clone();
    UniPoly::new(f.iter().map(|c| Rat::new(c.clone(), lc.clone())).collect())
}

fn deg(f: &ZPoly) -> usize {
    debug_assert!(!f.last().map(Zero::is_zero).unwrap_or(true));
    f.len() - 1
}

/// Factor a squarefree primitive integer polynomial into primitive
/// irreducible integer polynomials.
fn factor_squarefree_primitive(f: &ZPoly) -> Vec<ZPoly> {
    if deg(f) <= 1 {
        return vec![f.clone()];
    }
    // Strip a root at zero (squarefree: at most one).
    if f[0].is_zero() {
        let mut rest = f[1..].to_vec();
        if rest.last().map(Signed::is_negative).unwrap_or(false) {
            rest = rest.iter().map(|c| -c).collect();
        }
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }

    let p = choose_prime(f);
    let fp = reduce_mod(f, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Lift to a modulus past twice the factor coefficient bound.
    let bound = coeff_bound(f);
    let mut modulus = BigInt::from(p);
    let mut lifts = 0u32;
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        lifts += 1;
    }
    let lifted = hensel_lift_tree(f, &modular, p, lifts);
    recombine(f, lifted, &modulus)
}

/// 2^n (n+1) H(f) |lc(f)|, an over-approximation of the Mignotte factor bound
/// times the leading coefficient.
fn coeff_bound(f: &ZPoly) -> BigInt {
    let n = deg(f);
    let height = f.iter().map(Signed::abs).max().unwrap();
    (BigInt::one() << n) * BigInt::from(n as u64 + 1) * height * f.last().unwrap().abs()
}

fn choose_prime(f: &ZPoly) -> u64 {
    let lc = f.last().unwrap();
    let mut p = 3u64;
    loop {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = reduce_mod(f, p);
            if pdeg(&fp) == deg(f) {
                let der = pderiv(&fp, p);
                if pdeg(&pgcd(&fp, &der, p)) == 0 {
                    return p;
                }
            }
        }
        p += 2;
        assert!(p < 100_000, "no good prime found");
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- arithmetic in F_p[x], coefficients in u64 ----

type PPoly = Vec<u64>;

fn ptrim(mut f: PPoly) -> PPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pdeg(f: &PPoly) -> usize {
    if f.is_empty() {
        0
    } else {
        f.len() - 1
    }
}

fn reduce_mod(f: &ZPoly, p: u64) -> PPoly {
    let bp = BigInt::from(p);
    ptrim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&bp);
                r.to_u64().unwrap()
            })
            .collect(),
    )
}

fn pmul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ac * bc) % p;
        }
    }
    ptrim(out)
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        out[i] = (av + p - bv) % p;
    }
    ptrim(out)
}

fn pinv(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible mod p");
    s0.rem_euclid(p as i128) as u64
}

fn pscale(a: &PPoly, s: u64, p: u64) -> PPoly {
    ptrim(a.iter().map(|&c| c * s % p).collect())
}

fn pmonic(a: &PPoly, p: u64) -> PPoly {
    if a.is_empty() {
        return Vec::new();
    }
    pscale(a, pinv(*a.last().unwrap(), p), p)
}

fn pdivrem(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty(), "division by zero mod p");
    let db = pdeg(b);
    let lcinv = pinv(*b.last().unwrap(), p);
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i] % p;
        if c == 0 {
            continue;
        }
        let q = c * lcinv % p;
        quot[i - db] = q;
        for (j, &bc) in b.iter().enumerate() {
            rem[i - db + j] = (rem[i - db + j] + p - q * bc % p) % p;
        }
    }
    (ptrim(quot), ptrim(rem))
}

fn pgcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

fn pderiv(f: &PPoly, p: u64) -> PPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    ptrim(f.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
}

/// x^e mod f
fn pxpow_mod(e: u64, f: &PPoly, p: u64) -> PPoly {
    let mut base = vec![0, 1];
    let (_, b) = pdivrem(&base, f, p);
    base = b;
    let mut acc = vec![1u64];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            let m = pmul(&acc, &base, p);
            acc = pdivrem(&m, f, p).1;
        }
        e >>= 1;
        if e > 0 {
            let m = pmul(&base, &base, p);
            base = pdivrem(&m, f, p).1;
        }
    }
    acc
}

/// Extended Euclid mod p: returns (s, t) with s a + t b = 1; requires
/// gcd(a, b) = 1.
fn pbezout(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let ns = psub(&s0, &pmul(&q, &s1, p), p);
        let nt = psub(&t0, &pmul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, ns);
        (t0, t1) = (t1, nt);
    }
    assert_eq!(pdeg(&r0), 0, "pbezout of non-coprime polynomials");
    let inv = pinv(r0[0], p);
    (pscale(&s0, inv, p), pscale(&t0, inv, p))
}

/// Berlekamp factorization of a squarefree monic-izable polynomial mod p.
/// Returns monic irreducible factors.
fn berlekamp(f: &PPoly, p: u64) -> Vec<PPoly> {
    let f = pmonic(f, p);
    let n = pdeg(&f);
    if n <= 1 {
        return vec![f];
    }
    // Q[i][j] = coeff_j(x^{ip} mod f)
    let mut q = vec![vec![0u64; n]; n];
    for i in 0..n {
        let row = pxpow_mod(p * i as u64, &f, p);
        for (j, &c) in row.iter().enumerate() {
            q[i][j] = c;
        }
    }
    // nullspace of (Q - I)^T: vectors v with v Q = v
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[j][i] = q[i][j];
        }
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = nullspace_mod(&m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = ptrim(v.clone());
        if vp.len() <= 1 {
            continue;
        }
        let mut updated = Vec::new();
        for g in factors {
            if pdeg(&g) <= 1 {
                updated.push(g);
                continue;
            }
            let mut pieces = vec![g];
            for c in 0..p {
                let shifted = psub(&vp, &[c], p);
                let mut still = Vec::new();
                for piece in pieces {
                    if pdeg(&piece) <= 1 {
                        still.push(piece);
                        continue;
                    }
                    let h = pgcd(&piece, &shifted, p);
                    if pdeg(&h) > 0 && pdeg(&h) < pdeg(&piece) {
                        let (q2, _) = pdivrem(&piece, &h, p);
                        still.push(h);
                        still.push(pmonic(&q2, p));
                    } else {
                        still.push(piece);
                    }
                }
                pieces = still;
            }
            updated.extend(pieces);
        }
        factors = updated;
    }
    assert_eq!(factors.len(), r, "Berlekamp split incomplete");
    factors.sort();
    factors
}

/// Nullspace basis of `m` over F_p (column vectors returned as coefficient
/// vectors).
fn nullspace_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, r);
        let inv = pinv(a[row][col], p);
        for j in 0..n {
            a[row][j] = a[row][j] * inv % p;
        }
        for i in 0..n {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p * p - f * a[row][j] % p) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            // a[r][free] * x_free + x_pc = 0
            v[pc] = (p - a[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting, coefficients mod big modulus as BigInt in [0, M) ----

type MPoly = Vec<BigInt>;

fn mtrim(mut f: MPoly) -> MPoly {
    while f.last().map(Zero::is_zero).unwrap_or(false) {
        f.pop();
    }
    f
}

fn mreduce(f: &MPoly, m: &BigInt) -> MPoly {
    mtrim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn madd(a: &MPoly, b: &MPoly, m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    mtrim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn msub(a: &MPoly, b: &MPoly, m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    mtrim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn mmul(a: &MPoly, b: &MPoly, m: &BigInt) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ac) in a.iter().enumerate() {
        if ac.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            let t = &out[i + j] + ac * bc;
            out[i + j] = t;
        }
    }
    mreduce(&out, m)
}

/// Division by a monic divisor mod m.
fn mdivrem_monic(a: &MPoly, b: &MPoly, m: &BigInt) -> (MPoly, MPoly) {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            rem[i] = BigInt::zero();
            continue;
        }
        quot[i - db] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = (&rem[i - db + j] - &q * bc).mod_floor(m);
            rem[i - db + j] = t;
        }
    }
    (mtrim(quot), mtrim(mreduce(&rem, m)))
}

fn lift_p_to_m(f: &PPoly) -> MPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Quadratic Hensel: from f = g h (mod p^j) to (mod p^2j), g monic preserved,
/// h monic preserved. Both inputs monic; f must be monic mod the modulus.
struct HenselPair {
    g: MPoly,
    h: MPoly,
    s: MPoly,
    t: MPoly,
}

fn hensel_step(f: &MPoly, pair: &HenselPair, m2: &BigInt) -> HenselPair {
    let HenselPair { g, h, s, t } = pair;
    let e = msub(f, &mmul(g, h, m2), m2);
    let se = mmul(s, &e, m2);
    let (q, r) = mdivrem_monic(&se, h, m2);
    let g1 = madd(&madd(g, &mmul(t, &e, m2), m2), &mmul(&q, g, m2), m2);
    let h1 = madd(h, &r, m2);
    let b = msub(&madd(&mmul(s, &g1, m2), &mmul(t, &h1, m2), m2), &vec![BigInt::one()], m2);
    let sb = mmul(s, &b, m2);
    let (c, d) = mdivrem_monic(&sb, &h1, m2);
    let s1 = msub(s, &d, m2);
    let t1 = msub(&msub(t, &mmul(t, &b, m2), m2), &mmul(&c, &g1, m2), m2);
    HenselPair { g: g1, h: h1, s: s1, t: t1 }
}

/// Lift the monic factorization f/lc = prod g_i from mod p to mod p^{2^lifts}.
fn hensel_lift_tree(f: &ZPoly, modular: &[PPoly], p: u64, lifts: u32) -> Vec<MPoly> {
    let mut modulus = BigInt::from(p);
    for _ in 0..lifts {
        modulus = &modulus * &modulus;
    }
    // monicize f mod modulus
    let lc = f.last().unwrap();
    let lc_inv = modinv_big(&lc.mod_floor(&modulus), &modulus);
    let fm: MPoly = mreduce(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);
    lift_split(&fm, modular, p, &modulus)
}

fn lift_split(fm: &MPoly, modular: &[PPoly], p: u64, target: &BigInt) -> Vec<MPoly> {
    if modular.len() == 1 {
        return vec![fm.clone()];
    }
    let (left, right) = modular.split_at(modular.len() / 2);
    let mut g = vec![1u64];
    for q in left {
        g = pmul(&g, q, p);
    }
    let mut h = vec![1u64];
    for q in right {
        h = pmul(&h, q, p);
    }
    let (s, t) = pbezout(&g, &h, p);
    let mut pair = HenselPair {
        g: lift_p_to_m(&g),
        h: lift_p_to_m(&h),
        s: lift_p_to_m(&s),
        t: lift_p_to_m(&t),
    };
    let mut m = BigInt::from(p);
    while &m < target {
        m = &m * &m;
        pair = hensel_step(&mreduce(fm, &m), &pair, &m);
    }
    let mut out = lift_split(&mreduce(&pair.g, target), left, p, target);
    out.extend(lift_split(&mreduce(&pair.h, target), right, p, target));
    out
}

fn modinv_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

// ---- recombination ----

fn balanced(f: &MPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    f.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn zprimitive(f: &ZPoly) -> ZPoly {
    let mut content = BigInt::zero();
    for c in f {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return f.clone();
    }
    let mut out: ZPoly = f.iter().map(|c| c / &content).collect();
    if out.last().map(Signed::is_negative).unwrap_or(false) {
        out = out.iter().map(|c| -c).collect();
    }
    out
}

/// Exact division test in Z[x]; returns the quotient when b | a.
fn zdivides(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    let blc = b.last().unwrap();
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(blc);
        if !r.is_zero() {
            return None;
        }
        quot[i - db] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = &rem[i - db + j] - &q * bc;
            rem[i - db + j] = t;
        }
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

fn recombine(f: &ZPoly, lifted: Vec<MPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining = f.clone();
    let mut pool: Vec<MPoly> = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let idxs: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand: MPoly = vec![remaining.last().unwrap().mod_floor(modulus)];
            for &i in &combo {
                cand = mmul(&cand, &pool[i], modulus);
            }
            let cand = zprimitive(&balanced(&cand, modulus));
            if cand.len() <= 1 {
                continue;
            }
            if let Some(q) = zdivides(&remaining, &cand) {
                out.push(cand);
                remaining = zprimitive(&q);
                let keep: Vec<MPoly> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if deg(&remaining) > 0 || out.is_empty() {
        out.push(zprimitive(&remaining));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qp(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn reassemble(unit: &Rat, factors: &[(UniPoly<Rat>, usize)]) -> UniPoly<Rat> {
        let mut acc = UniPoly::constant(unit.clone());
        for (f, m) in factors {
            acc = acc * f.pow(*m);
        }
        acc
    }

    #[test]
    fn factors_x4_plus_4() {
        let f = qp(&[4, 0, 0, 0, 1]);
        let (unit, factors) = factor_q(&f);
        assert_eq!(unit, rat_int(1));
        assert_eq!(factors.len(), 2);
        assert_eq!(reassemble(&unit, &factors), f);
        let degs: Vec<usize> = factors.iter().map(|(p, _)| p.deg().unwrap()).collect();
        assert_eq!(degs, vec![2, 2]);
        assert!(factors.iter().any(|(p, _)| p == &qp(&[2, -2, 1])));
        assert!(factors.iter().any(|(p, _)| p == &qp(&[2, 2, 1])));
    }

    #[test]
    fn factors_x6_minus_1() {
        let f = qp(&[-1, 0, 0, 0, 0, 0, 1]);
        let (unit, factors) = factor_q(&f);
        assert_eq!(unit, rat_int(1));
        assert_eq!(reassemble(&unit, &factors), f);
        let mut degs: Vec<usize> = factors.iter().map(|(p, _)| p.deg().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]);
    }

    #[test]
    fn keeps_irreducible_whole() {
        for coeffs in [&[-1i64, -1, 0, 0, 0, 1][..], &[1, 1, 1][..], &[2, 0, 1][..], &[-2, 0, 0, 1][..]] {
            let f = qp(coeffs);
            let (_, factors) = factor_q(&f);
            assert_eq!(factors.len(), 1, "{f} should be irreducible");
            assert_eq!(factors[0].1, 1);
            assert!(is_irreducible_q(&f));
        }
    }

    #[test]
    fn nonmonic_and_multiplicities() {
        // 6 (x + 1/2)(x + 1/3) = (2x+1)(3x+1)
        let f = qp(&[1, 5, 6]);
        let (unit, factors) = factor_q(&f);
        assert_eq!(unit, rat_int(6));
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().any(|(p, _)| p == &UniPoly::new(vec![rat(1, 2), rat_int(1)])));

        let g = qp(&[1, 1]).pow(3) * qp(&[1, 0, 1]).pow(2);
        let (u2, f2) = factor_q(&g);
        assert_eq!(reassemble(&u2, &f2), g);
        let mut pairs: Vec<(usize, usize)> =
            f2.iter().map(|(p, m)| (p.deg().unwrap(), *m)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(1, 3), (2, 2)]);
    }

    #[test]
    fn root_at_zero() {
        let f = qp(&[0, 0, -1, 0, 1]); // x^2 (x-1)(x+1)
        let (unit, factors) = factor_q(&f);
        assert_eq!(reassemble(&unit, &factors), f);
        assert!(factors.iter().any(|(p, m)| p == &qp(&[0, 1]) && *m == 2));
    }

    #[test]
    fn random_products_reassemble_and_stay_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let primes = [
            qp(&[1, 1]),
            qp(&[-2, 1]),
            qp(&[1, 0, 1]),
            qp(&[-2, 0, 1]),
            qp(&[1, 1, 1]),
            qp(&[-1, -1, 0, 0, 0, 1]),
            qp(&[3, 0, 2]),
        ];
        for _ in 0..40 {
            let k = rng.gen_range(1..=3);
            let mut f = UniPoly::constant(rat_int(rng.gen_range(1..=5)));
            let mut expected_irreducibles = 0usize;
            for _ in 0..k {
                let p = &primes[rng.gen_range(0..primes.len())];
                let m = rng.gen_range(1..=2);
                f = f * p.pow(m);
                expected_irreducibles += 1;
                let _ = expected_irreducibles;
            }
            let (unit, factors) = factor_q(&f);
            assert_eq!(reassemble(&unit, &factors), f);
            for (p, _) in &factors {
                let (_, inner) = factor_q(p);
                assert_eq!(inner.len(), 1, "{p} not irreducible");
                assert_eq!(inner[0].0, p.monic());
            }
        }
    }
}
