//! Univariate factorization over Q and over one simple extension.
//!
//! Over Q: content and Yun first, then for each squarefree part the
//! classical modular route (Berlekamp over a small prime, quadratic Hensel
//! lifting on a factor tree, subset recombination with a Mignotte bound).
//! All choices are deterministic, so repeated runs factor identically.
//!
//! Over Q[t]/(p): Trager's norm method. Shift until the norm is squarefree,
//! factor the norm over Q, pull each piece back with a gcd over the
//! extension. Both directions are exercised heavily by the singular-locus
//! solver, which factors resultants and then splits gcds over the field a
//! point generates.

use std::cmp::Ordering;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::{Coeff, ExtField, Rational};
use crate::poly::{MultiPoly, VarSet};
use crate::resultant::resultant;
use crate::unipoly::UPoly;

// ---------------------------------------------------------------------------
// Dense polynomials over F_p (p a small prime), coefficients in [0, p).
// ---------------------------------------------------------------------------

type PPoly = Vec<i64>;

fn zp_trim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zp_norm(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

fn zp_sub(a: &[i64], b: &[i64], p: i64) -> PPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0i64; n];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = zp_norm(out[i] - y, p);
    }
    zp_trim(out)
}

fn zp_mul(a: &[i64], b: &[i64], p: i64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zp_trim(out)
}

fn zp_scale(a: &[i64], c: i64, p: i64) -> PPoly {
    zp_trim(a.iter().map(|&x| zp_norm(x * c, p)).collect())
}

fn inv_mod(a: i64, p: i64) -> i64 {
    // Extended Euclid on integers.
    let (mut r0, mut r1) = (p, zp_norm(a, p));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "inverse of non-unit mod p");
    zp_norm(s0, p)
}

fn zp_divrem(a: &[i64], b: &[i64], p: i64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    let mut quo = vec![0i64; a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let top = rem[k + b.len() - 1];
        if top == 0 {
            continue;
        }
        let q = zp_norm(top * lead_inv, p);
        for (i, &c) in b.iter().enumerate() {
            rem[k + i] = zp_norm(rem[k + i] - q * c, p);
        }
        quo[k] = q;
    }
    (zp_trim(quo), zp_trim(rem))
}

fn zp_monic(a: &[i64], p: i64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => zp_scale(a, inv_mod(lc, p), p),
    }
}

fn zp_gcd(a: &[i64], b: &[i64], p: i64) -> PPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = zp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    zp_monic(&x, p)
}

fn zp_deriv(a: &[i64], p: i64) -> PPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    zp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| zp_norm(c * (i as i64 % p), p))
            .collect(),
    )
}

/// x^e mod f over F_p.
fn zp_pow_x(e: u64, f: &[i64], p: i64) -> PPoly {
    let mut acc = vec![1i64];
    let mut base = zp_divrem(&[0, 1], f, p).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = zp_divrem(&zp_mul(&acc, &base, p), f, p).1;
        }
        e >>= 1;
        if e > 0 {
            base = zp_divrem(&zp_mul(&base, &base, p), f, p).1;
        }
    }
    acc
}

/// Basis of the kernel of (M - I) over F_p: M given column-wise.
fn berlekamp_nullspace(cols: Vec<PPoly>, d: usize, p: i64) -> Vec<Vec<i64>> {
    // Build rows of (Q - I)^T is unnecessary: solve Q v = v directly with
    // Gaussian elimination on (Q - I).
    let mut m = vec![vec![0i64; d]; d];
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            m[i][j] = c;
        }
        m[j][j] = zp_norm(m[j][j] - 1, p);
    }
    // Row reduce.
    let mut pivot_col_of_row = Vec::new();
    let mut rank_row = 0usize;
    for col in 0..d {
        let piv = (rank_row..d).find(|&r| m[r][col] != 0);
        let piv = match piv {
            None => continue,
            Some(r) => r,
        };
        m.swap(rank_row, piv);
        let inv = inv_mod(m[rank_row][col], p);
        for j in 0..d {
            m[rank_row][j] = zp_norm(m[rank_row][j] * inv, p);
        }
        for r in 0..d {
            if r != rank_row && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..d {
                    m[r][j] = zp_norm(m[r][j] - factor * m[rank_row][j], p);
                }
            }
        }
        pivot_col_of_row.push(col);
        rank_row += 1;
        if rank_row == d {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0i64; d];
        v[free] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = zp_norm(-m[row][free], p);
        }
        basis.push(v);
    }
    basis
}

/// Berlekamp: monic irreducible factors of a squarefree monic f over F_p.
fn berlekamp(f: &[i64], p: i64) -> Vec<PPoly> {
    let d = f.len() - 1;
    if d == 1 {
        return vec![f.to_vec()];
    }
    let xp = zp_pow_x(p as u64, f, p);
    let mut cols = Vec::with_capacity(d);
    let mut cur = vec![1i64];
    for _ in 0..d {
        cols.push(cur.clone());
        cur = zp_divrem(&zp_mul(&cur, &xp, p), f, p).1;
    }
    let basis = berlekamp_nullspace(cols, d, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.to_vec()];
    }
    let mut factors = vec![f.to_vec()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let v = zp_trim(v.clone());
        if v.len() <= 1 {
            continue; // the constants split nothing
        }
        let mut next = Vec::new();
        for u in factors {
            if u.len() - 1 == 1 || factors_done(&next, r) {
                next.push(u);
                continue;
            }
            let mut rem = u.clone();
            for s in 0..p {
                if rem.len() <= 1 {
                    break;
                }
                let shifted = zp_sub(&v, &[s], p);
                let g = zp_gcd(&rem, &shifted, p);
                if g.len() > 1 && g.len() < rem.len() + 1 {
                    if g.len() - 1 < rem.len() - 1 {
                        let (q, rr) = zp_divrem(&rem, &g, p);
                        debug_assert!(rr.is_empty());
                        next.push(g);
                        rem = q;
                    }
                }
            }
            if rem.len() > 1 {
                next.push(zp_monic(&rem, p));
            }
        }
        factors = next;
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors
}

fn factors_done(acc: &[PPoly], _r: usize) -> bool {
    // Helper kept trivial: splitting continues until all basis vectors have
    // been used; the count check happens in the outer loop.
    let _ = acc;
    false
}

fn small_primes() -> Vec<i64> {
    // Sieve of Eratosthenes up to 10000.
    let n = 10000usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as i64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Dense polynomials over Z / Z_m (BigInt), lowest degree first.
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>;

fn zx_trim(mut v: ZPoly) -> ZPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zx_add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    zx_trim(out)
}

fn zx_sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    zx_trim(out)
}

fn zx_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zx_trim(out)
}

fn zx_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    zx_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients into the symmetric range (-m/2, m/2].
fn zx_symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    zx_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic divisor with all arithmetic mod m.
fn zx_divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        for (i, c) in b.iter().enumerate() {
            let t = (&rem[k + i] - &top * c).mod_floor(m);
            rem[k + i] = t;
        }
        quo[k] = top;
    }
    (zx_trim(quo), zx_trim(rem))
}

fn zx_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

fn zx_primitive(a: &[BigInt]) -> ZPoly {
    let a = zx_trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let mut c = zx_content(&a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact division test over Q for primitive integer polynomials.
fn zx_divides(cand: &[BigInt], f: &[BigInt]) -> Option<ZPoly> {
    if cand.is_empty() || f.len() < cand.len() {
        return None;
    }
    // Rational long division; remainder must vanish.
    let to_rat = |v: &[BigInt]| -> Vec<Rational> {
        v.iter().map(|c| Rational::from_integer(c.clone())).collect()
    };
    let mut rem = to_rat(f);
    let div = to_rat(cand);
    let mut quo = vec![Rational::zero(); f.len() - cand.len() + 1];
    let lead = div.last().unwrap();
    for k in (0..quo.len()).rev() {
        let top = rem[k + div.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let q = &top / lead;
        for (i, c) in div.iter().enumerate() {
            let d = &q * c;
            rem[k + i] -= d;
        }
        quo[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    // Gauss: the quotient of primitive polynomials is an integer polynomial.
    let mut out = Vec::with_capacity(quo.len());
    for q in quo {
        if !q.denom().is_one() {
            return None;
        }
        out.push(q.numer().clone());
    }
    Some(zx_trim(out))
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

/// One quadratic Hensel step: from f == g h (mod m), s g + t h == 1 (mod m),
/// h monic, to the same data mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zx_mod(&zx_sub(f, &zx_mul(g, h)), &m2);
    let (q, r) = zx_divrem_monic_mod(&zx_mul(s, &e), h, &m2);
    let g1 = zx_mod(&zx_add(&zx_add(g, &zx_mul(t, &e)), &zx_mul(&q, g)), &m2);
    let h1 = zx_mod(&zx_add(h, &r), &m2);
    let b = zx_mod(
        &zx_sub(&zx_add(&zx_mul(s, &g1), &zx_mul(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zx_divrem_monic_mod(&zx_mul(s, &b), &h1, &m2);
    let s1 = zx_mod(&zx_sub(s, &d), &m2);
    let t1 = zx_mod(&zx_sub(&zx_sub(t, &zx_mul(t, &b)), &zx_mul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

fn big_inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "inverse of non-unit");
    e.x.mod_floor(m)
}

/// Lift the modular factorization f == lc(f) * prod(factors) (mod p), all
/// factors monic mod p, to factors monic mod `target` (a power of p) whose
/// product times lc(f) is f mod target.
fn hensel_tree(f: &[BigInt], factors: &[PPoly], p: i64, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(target);
        let inv = big_inv_mod(&lc, target);
        let monic: ZPoly = zx_mod(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            target,
        );
        return vec![monic];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let big_p = BigInt::from(p);
    // g0 = lc(f) * prod(left), h0 = prod(right), all mod p.
    let lift_p = |v: &PPoly| -> ZPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g0: ZPoly = vec![f.last().unwrap().mod_floor(&big_p)];
    for fac in left {
        g0 = zx_mod(&zx_mul(&g0, &lift_p(fac)), &big_p);
    }
    let mut h0: ZPoly = vec![BigInt::one()];
    for fac in right {
        h0 = zx_mod(&zx_mul(&h0, &lift_p(fac)), &big_p);
    }
    // Bezout cofactors mod p via the i64 machinery.
    let back = |v: &ZPoly| -> PPoly {
        v.iter()
            .map(|c| c.mod_floor(&big_p).try_into().unwrap())
            .collect()
    };
    let (gg, ss, tt) = zp_ext_gcd(&back(&g0), &back(&h0), p);
    assert_eq!(gg.len(), 1, "halves of a squarefree factorization not coprime");
    let norm = inv_mod(gg[0], p);
    let mut s = lift_p(&zp_scale(&ss, norm, p));
    let mut t = lift_p(&zp_scale(&tt, norm, p));
    let mut g = g0;
    let mut h = h0;
    let mut m = big_p.clone();
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g = zx_mod(&g, target);
    let h = zx_mod(&h, target);
    let mut out = hensel_tree(&g, left, p, target);
    out.extend(hensel_tree(&h, right, p, target));
    out
}

fn zp_ext_gcd(a: &[i64], b: &[i64], p: i64) -> (PPoly, PPoly, PPoly) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0: PPoly = vec![1];
    let mut s1: PPoly = Vec::new();
    let mut t0: PPoly = Vec::new();
    let mut t1: PPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s_next = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t_next = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = std::mem::replace(&mut s1, s_next);
        t0 = std::mem::replace(&mut t1, t_next);
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// Zassenhaus for primitive squarefree integer polynomials.
// ---------------------------------------------------------------------------

fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let f = zx_primitive(f);
    let d = f.len() - 1;
    if d == 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    // Pick the smallest prime keeping f squarefree of full degree.
    let mut chosen = None;
    for &p in small_primes().iter() {
        let big_p = BigInt::from(p);
        if (&lc % &big_p).is_zero() {
            continue;
        }
        let fp: PPoly = zp_trim(
            f.iter()
                .map(|c| c.mod_floor(&big_p).try_into().unwrap())
                .collect(),
        );
        if fp.len() != f.len() {
            continue;
        }
        let fp_monic = zp_monic(&fp, p);
        let g = zp_gcd(&fp_monic, &zp_deriv(&fp_monic, p), p);
        if g.len() == 1 {
            chosen = Some((p, fp_monic));
            break;
        }
    }
    let (p, fp) = chosen.expect("no usable prime below 10000 for a squarefree polynomial");
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f];
    }
    // Mignotte-style bound on the coefficients of lc * (any factor of f).
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + 1;
    let bound: BigInt = (BigInt::one() << d) * norm2 * lc.abs();
    let two_b = &bound * 2 + 1;
    let mut target = BigInt::from(p);
    while target <= two_b {
        target = target * p;
    }
    let lifted = hensel_tree(&f, &modular, p, &target);

    // Subset recombination.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut fstar = f.clone();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let lc_star = fstar.last().unwrap().clone();
            let mut prod: ZPoly = vec![lc_star.mod_floor(&target)];
            for &i in &combo {
                prod = zx_mod(&zx_mul(&prod, &remaining[i]), &target);
            }
            let cand = zx_primitive(&zx_symmetric(&prod, &target));
            if cand.len() <= 1 {
                continue;
            }
            if let Some(quo) = zx_divides(&cand, &fstar) {
                out.push(cand);
                fstar = zx_primitive(&quo);
                let dropset: std::collections::HashSet<usize> = combo.iter().copied().collect();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !dropset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if fstar.len() > 1 {
        out.push(zx_primitive(&fstar));
    }
    out
}

/// Lexicographic combinations of `size` elements.
fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Public interface over the coefficient tower.
// ---------------------------------------------------------------------------

/// Canonical ordering of factors for deterministic output: by degree, then
/// by coefficient sequences from the top down.
fn cmp_upoly(a: &UPoly, b: &UPoly) -> Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for i in (0..=da).rev() {
            let ca = a.coeff(i);
            let cb = b.coeff(i);
            let key = |c: &Coeff| -> Vec<Rational> {
                match c {
                    Coeff::Rat(r) => vec![r.clone()],
                    Coeff::Ext(e) => e.rep().to_vec(),
                }
            };
            match key(&ca).cmp(&key(&cb)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

/// Factor a univariate polynomial over its field of definition. Returns a
/// scalar unit and irreducible factors with multiplicities so that
/// unit * prod(f_i^(e_i)) == f. Over Q the factors are primitive with
/// integer coefficients and positive leading coefficient; over an extension
/// they are monic. Factors are sorted canonically.
pub fn factor(f: &UPoly) -> (Coeff, Vec<(UPoly, u32)>) {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let ext = f
        .coeffs()
        .iter()
        .find_map(|c| c.ext_field().cloned());
    match ext {
        Some(field) => factor_over_ext(f, &field),
        None => factor_over_q(f),
    }
}

fn factor_over_q(f: &UPoly) -> (Coeff, Vec<(UPoly, u32)>) {
    if f.is_constant() {
        return (f.coeff(0), Vec::new());
    }
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    // Unit bookkeeping: f = unit * prod(parts^mult) with monic parts, then
    // each part factors into primitive pieces whose lc we fold back in.
    let mut unit = f.lead().unwrap().clone();
    for (part, mult) in f.squarefree_decomposition() {
        // part is monic with rational coefficients; clear denominators.
        let rats: Vec<Rational> = part
            .coeffs()
            .iter()
            .map(|c| c.as_rational().expect("rational part").clone())
            .collect();
        let mut denom_lcm = BigInt::one();
        for r in &rats {
            denom_lcm = denom_lcm.lcm(r.denom());
        }
        let ints: ZPoly = rats
            .iter()
            .map(|r| r.numer() * (&denom_lcm / r.denom()))
            .collect();
        let prim = zx_primitive(&ints);
        let irs = if prim.len() == 2 {
            vec![prim.clone()]
        } else {
            zassenhaus(&prim)
        };
        // unit adjustment: part (monic) = (prod of primitive factors) /
        // (their leading coefficient product).
        let mut lc_prod = Rational::one();
        for fac in &irs {
            lc_prod *= Rational::from_integer(fac.last().unwrap().clone());
        }
        let adjust = Rational::one() / lc_prod;
        let adj_pow = num_traits::pow::pow(adjust, mult as usize);
        if let Coeff::Rat(u) = &mut unit {
            *u *= adj_pow;
        }
        for fac in irs {
            let up = UPoly::from_coeffs(
                fac.iter()
                    .map(|c| Coeff::Rat(Rational::from_integer(c.clone())))
                    .collect(),
            );
            out.push((up, mult));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_upoly(&a.0, &b.0)));
    (unit, out)
}

/// Trager's method over Q[t]/(p).
fn factor_over_ext(f: &UPoly, field: &Rc<ExtField>) -> (Coeff, Vec<(UPoly, u32)>) {
    if f.is_constant() {
        return (f.coeff(0), Vec::new());
    }
    let unit = f.lead().unwrap().clone();
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        if part.degree() == Some(1) {
            out.push((part, mult));
            continue;
        }
        let factors = trager_squarefree(&part, field);
        for g in factors {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_upoly(&a.0, &b.0)));
    (unit, out)
}

/// Factor a squarefree monic polynomial over the extension.
fn trager_squarefree(f: &UPoly, field: &Rc<ExtField>) -> Vec<UPoly> {
    let vars = VarSet::new(&["t", "x"], &[1, 1]);
    let min_poly_mp = {
        let mut p = MultiPoly::zero(&vars);
        for (i, c) in field.min_poly().iter().enumerate() {
            p = p.add(&MultiPoly::monomial(
                &vars,
                &[i as u32, 0],
                Coeff::Rat(c.clone()),
            ));
        }
        p
    };
    for shift_mag in 0i64..=50 {
        for &sgn in &[1i64, -1] {
            let s = shift_mag * sgn;
            if s == 0 && sgn == -1 {
                continue;
            }
            // G(t, x) = f(x - s t) with coefficients written out in t.
            let x = MultiPoly::var(&vars, 1);
            let t = MultiPoly::var(&vars, 0);
            let arg = x.sub(&t.scale(&Coeff::from_int(s)));
            let mut g = MultiPoly::zero(&vars);
            for k in (0..=f.degree().unwrap()).rev() {
                let c = f.coeff(k);
                let c_in_t = match &c {
                    Coeff::Rat(r) => MultiPoly::constant(&vars, Coeff::Rat(r.clone())),
                    Coeff::Ext(e) => {
                        let mut p = MultiPoly::zero(&vars);
                        for (i, cc) in e.rep().iter().enumerate() {
                            p = p.add(&MultiPoly::monomial(
                                &vars,
                                &[i as u32, 0],
                                Coeff::Rat(cc.clone()),
                            ));
                        }
                        p
                    }
                };
                g = g.mul(&arg).add(&c_in_t);
            }
            let norm = resultant(&min_poly_mp, &g, 0).expect("nonzero resultant inputs");
            let norm_u = UPoly::from_multipoly(&norm, 1).expect("norm is univariate in x");
            if norm_u.is_zero() || !norm_u.is_squarefree() {
                continue;
            }
            // Factor the norm over Q and pull factors back over the field.
            let (_, nfactors) = factor_over_q(&norm_u);
            let theta = field.generator();
            let shift_back = UPoly::from_coeffs(vec![
                theta.mul(&Coeff::from_int(s)),
                Coeff::one(),
            ]);
            let mut pieces = Vec::new();
            for (nf, _) in nfactors {
                // nf(x + s*theta) over the extension, by Horner.
                let mut acc = UPoly::zero();
                for k in (0..=nf.degree().unwrap()).rev() {
                    acc = acc.mul(&shift_back);
                    acc = acc.add(&UPoly::constant(nf.coeff(k)));
                }
                let g = f.gcd(&acc);
                if !g.is_constant() {
                    pieces.push(g.monic());
                }
            }
            // Sanity: the pieces multiply back to f.
            let mut prod = UPoly::constant(Coeff::one());
            for p in &pieces {
                prod = prod.mul(p);
            }
            assert_eq!(prod, f.monic(), "norm factorization did not split f");
            return pieces;
        }
    }
    panic!("no squarefree norm found within shift bound");
}

/// True when f is irreducible over its field of definition.
pub fn certify_irreducible(f: &UPoly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    let (_, factors) = factor(f);
    factors.len() == 1 && factors[0].1 == 1
}

/// All roots of f lying in its own field of definition (Q, or the single
/// extension its coefficients use), each returned once (multiplicity
/// dropped).
pub fn field_roots(f: &UPoly) -> Vec<Coeff> {
    let (_, factors) = factor(f);
    let mut out = Vec::new();
    for (g, _) in factors {
        if g.degree() == Some(1) {
            // root of c1 x + c0 is -c0/c1
            let root = g.coeff(0).neg().div(&g.coeff(1)).expect("nonzero lead");
            out.push(root);
        }
    }
    out
}
