//! Certified isolation of the complex roots of a rational polynomial.
//!
//! Floating point appears in exactly one place in this crate: the
//! Durand-Kerner sweep below that produces *candidate* root locations. Every
//! candidate is then certified with exact rational interval arithmetic via
//! the Krawczyk operator, which proves existence and uniqueness of a root in
//! the returned box. Downstream code only ever uses the certified boxes (for
//! displaying approximate coordinates); the classification itself never
//! looks at this module.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgNumError {
    /// The polynomial was zero or constant.
    Degenerate,
    /// Certification failed after all retries (should not happen for the
    /// squarefree inputs this crate produces).
    CertificationFailed(String),
}

impl fmt::Display for AlgNumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNumError::Degenerate => write!(f, "root isolation needs degree >= 1"),
            AlgNumError::CertificationFailed(w) => write!(f, "root certification failed: {w}"),
        }
    }
}

impl std::error::Error for AlgNumError {}

// ---------------------------------------------------------------------------
// Exact rational intervals and complex rectangles.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct QInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl QInterval {
    fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi);
        QInterval { lo, hi }
    }

    fn point(x: Rational) -> Self {
        QInterval { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &QInterval) -> QInterval {
        QInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    fn sub(&self, o: &QInterval) -> QInterval {
        QInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    fn mul(&self, o: &QInterval) -> QInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        QInterval::new(lo, hi)
    }

    fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    fn strictly_inside(&self, outer: &QInterval) -> bool {
        outer.lo < self.lo && self.hi < outer.hi
    }

    fn disjoint(&self, o: &QInterval) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }

    /// Upper bound for max(x^2) over the interval.
    fn sq_upper(&self) -> Rational {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if a > b {
            a
        } else {
            b
        }
    }
}

/// Exact rational complex number.
#[derive(Debug, Clone, PartialEq)]
struct QC {
    re: Rational,
    im: Rational,
}

impl QC {
    fn mul(&self, o: &QC) -> QC {
        QC {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn inv(&self) -> Option<QC> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(QC {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

/// Axis-aligned rectangle in the complex plane with rational corners.
#[derive(Debug, Clone, PartialEq)]
pub struct CBox {
    pub re: QInterval,
    pub im: QInterval,
}

impl CBox {
    fn point(z: &QC) -> CBox {
        CBox {
            re: QInterval::point(z.re.clone()),
            im: QInterval::point(z.im.clone()),
        }
    }

    fn centered(z: &QC, r: &Rational) -> CBox {
        CBox {
            re: QInterval::new(&z.re - r, &z.re + r),
            im: QInterval::new(&z.im - r, &z.im + r),
        }
    }

    fn add(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn sub(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    fn mul(&self, o: &CBox) -> CBox {
        // (a + bi)(c + di) = (ac - bd) + (ad + bc) i, interval-wise.
        let ac = self.re.mul(&o.re);
        let bd = self.im.mul(&o.im);
        let ad = self.re.mul(&o.im);
        let bc = self.im.mul(&o.re);
        CBox {
            re: ac.sub(&bd),
            im: ad.add(&bc),
        }
    }

    fn strictly_inside(&self, outer: &CBox) -> bool {
        self.re.strictly_inside(&outer.re) && self.im.strictly_inside(&outer.im)
    }

    pub fn disjoint(&self, o: &CBox) -> bool {
        self.re.disjoint(&o.re) || self.im.disjoint(&o.im)
    }

    fn center(&self) -> QC {
        QC {
            re: self.re.mid(),
            im: self.im.mid(),
        }
    }

    /// Upper bound for |z|^2 over the box.
    fn mag_sq_upper(&self) -> Rational {
        self.re.sq_upper() + self.im.sq_upper()
    }

    pub fn approx(&self) -> (f64, f64) {
        (
            self.re.mid().to_f64().unwrap_or(f64::NAN),
            self.im.mid().to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Half the larger side, as a displayable bound on the error.
    pub fn radius_f64(&self) -> f64 {
        let two = Rational::from_integer(2.into());
        let rw = (&self.re.hi - &self.re.lo) / &two;
        let iw = (&self.im.hi - &self.im.lo) / &two;
        let m = if rw > iw { rw } else { iw };
        m.to_f64().unwrap_or(f64::NAN)
    }
}

/// Horner evaluation of a rational polynomial over a complex rectangle.
fn eval_poly_box(p: &[Rational], x: &CBox) -> CBox {
    let mut acc = CBox::point(&QC {
        re: Rational::zero(),
        im: Rational::zero(),
    });
    for c in p.iter().rev() {
        acc = acc.mul(x);
        acc.re = acc.re.add(&QInterval::point(c.clone()));
    }
    acc
}

fn eval_poly_qc(p: &[Rational], z: &QC) -> QC {
    let mut acc = QC {
        re: Rational::zero(),
        im: Rational::zero(),
    };
    for c in p.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(i.into()))
        .collect()
}

// ---------------------------------------------------------------------------
// Durand-Kerner candidates (the only floating point in the crate).
// ---------------------------------------------------------------------------

fn c_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn c_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

fn c_abs(a: (f64, f64)) -> f64 {
    a.0.hypot(a.1)
}

fn durand_kerner(p: &[f64]) -> Vec<(f64, f64)> {
    let d = p.len() - 1;
    // Monic normalization.
    let lead = p[d];
    let coeffs: Vec<f64> = p.iter().map(|c| c / lead).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in coeffs.iter().rev() {
            acc = c_mul(acc, z);
            acc.0 += c;
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = Vec::with_capacity(d);
    let seed = (0.4, 0.9);
    let mut cur = (1.0, 0.0);
    for _ in 0..d {
        cur = c_mul(cur, seed);
        roots.push(cur);
    }
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom = c_mul(denom, c_sub(roots[i], roots[j]));
                }
            }
            let step = c_div(eval(roots[i]), denom);
            roots[i] = c_sub(roots[i], step);
            max_step = max_step.max(c_abs(step));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}

// ---------------------------------------------------------------------------
// Krawczyk certification.
// ---------------------------------------------------------------------------

fn dyadic(num: Rational, bits: u32, up: bool) -> Rational {
    let scale = Rational::from_integer(num_bigint::BigInt::one() << bits);
    let scaled = num * &scale;
    let snapped = if up { scaled.ceil() } else { scaled.floor() };
    snapped / scale
}

/// Round a box outward to dyadic endpoints so denominators stay bounded
/// across refinement iterations. Enclosure only grows, so rigor is kept.
fn outward_round(b: &CBox, bits: u32) -> CBox {
    CBox {
        re: QInterval::new(
            dyadic(b.re.lo.clone(), bits, false),
            dyadic(b.re.hi.clone(), bits, true),
        ),
        im: QInterval::new(
            dyadic(b.im.lo.clone(), bits, false),
            dyadic(b.im.hi.clone(), bits, true),
        ),
    }
}

fn clamp(x: Rational, lo: &Rational, hi: &Rational) -> Rational {
    if &x < lo {
        lo.clone()
    } else if &x > hi {
        hi.clone()
    } else {
        x
    }
}

/// One Krawczyk test on the box X: on success the returned box is strictly
/// inside X and provably contains the unique root of p in X.
fn krawczyk_box(p: &[Rational], dp: &[Rational], x: &CBox) -> Option<CBox> {
    // Use a dyadically rounded center, clamped into the box so the
    // mean-value containment argument applies.
    let center = x.center();
    let m = QC {
        re: clamp(dyadic(center.re, 48, false), &x.re.lo, &x.re.hi),
        im: clamp(dyadic(center.im, 48, false), &x.im.lo, &x.im.hi),
    };
    let dpm = eval_poly_qc(dp, &m);
    let c = dpm.inv()?;
    let pm = eval_poly_qc(p, &m);
    // Q = 1 - c * p'(X); contraction requires |Q| < 1.
    let dpx = eval_poly_box(dp, x);
    let c_box = CBox::point(&c);
    let one_box = CBox::point(&QC {
        re: Rational::one(),
        im: Rational::zero(),
    });
    let q = one_box.sub(&c_box.mul(&dpx));
    if q.mag_sq_upper() >= Rational::one() {
        return None;
    }
    // K(X) = m - c p(m) + Q (X - m)
    let m_box = CBox::point(&m);
    let k = m_box
        .sub(&CBox::point(&c.mul(&pm)))
        .add(&q.mul(&x.sub(&m_box)));
    if k.strictly_inside(x) {
        Some(k)
    } else {
        None
    }
}

fn krawczyk(p: &[Rational], dp: &[Rational], center: &QC, r: &Rational) -> Option<CBox> {
    let x = CBox::centered(center, r);
    let k = krawczyk_box(p, dp, &x)?;
    // Tighten: keep applying the operator while it makes clear progress.
    let mut cur = outward_round(&k, 96);
    let floor_width = Rational::new(1.into(), num_bigint::BigInt::one() << 44);
    for _ in 0..80 {
        let w = (&cur.re.hi - &cur.re.lo) + (&cur.im.hi - &cur.im.lo);
        if w < floor_width {
            break;
        }
        match krawczyk_box(p, dp, &cur) {
            Some(next) => {
                let next = outward_round(&next, 96);
                let wn = (&next.re.hi - &next.re.lo) + (&next.im.hi - &next.im.lo);
                if wn >= w {
                    break;
                }
                cur = next;
            }
            None => break,
        }
    }
    Some(cur)
}

/// A root of an irreducible rational polynomial, represented exactly by the
/// polynomial plus a certified isolating rectangle.
#[derive(Debug, Clone)]
pub struct AlgebraicNumber {
    pub min_poly: Vec<Rational>,
    pub root_box: CBox,
}

fn rationalize(x: f64) -> Rational {
    // Snap to a dyadic rational with 24 fractional bits; keeps the exact
    // arithmetic in the certification cheap.
    let scaled = (x * (1u64 << 24) as f64).round();
    if !scaled.is_finite() {
        return Rational::zero();
    }
    Rational::new((scaled as i64).into(), (1u64 << 24).into())
}

/// Certified isolating boxes for all complex roots of a squarefree
/// polynomial with rational coefficients, sorted by (re, im) midpoints.
pub fn isolate_roots(p: &[Rational]) -> Result<Vec<AlgebraicNumber>, AlgNumError> {
    let mut p = p.to_vec();
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    if p.len() < 2 {
        return Err(AlgNumError::Degenerate);
    }
    let d = p.len() - 1;
    let dp = derivative(&p);
    let pf: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let approx = durand_kerner(&pf);
    // Initial radius per root: a third of the distance to the nearest
    // other candidate (floored to avoid degenerate zero radii).
    let mut boxes: Vec<CBox> = Vec::with_capacity(d);
    for (i, &z) in approx.iter().enumerate() {
        let mut gap = f64::MAX;
        for (j, &w) in approx.iter().enumerate() {
            if i != j {
                gap = gap.min(c_abs(c_sub(z, w)));
            }
        }
        if !gap.is_finite() || gap <= 0.0 {
            gap = 1.0;
        }
        let center = QC {
            re: rationalize(z.0),
            im: rationalize(z.1),
        };
        let r0 = rationalize((gap / 3.0).max(1e-12));
        let mut found = None;
        let mut r = r0.clone();
        // Shrink first (candidates are usually very accurate), then grow.
        for _ in 0..12 {
            if r.is_zero() {
                break;
            }
            if let Some(k) = krawczyk(&p, &dp, &center, &r) {
                found = Some(k);
                break;
            }
            r /= Rational::from_integer(4.into());
        }
        if found.is_none() {
            let mut r = r0 * Rational::from_integer(4.into());
            for _ in 0..6 {
                if let Some(k) = krawczyk(&p, &dp, &center, &r) {
                    found = Some(k);
                    break;
                }
                r *= Rational::from_integer(4.into());
            }
        }
        match found {
            Some(b) => boxes.push(b),
            None => {
                return Err(AlgNumError::CertificationFailed(format!(
                    "no certified box near ({:.6}, {:.6})",
                    z.0, z.1
                )))
            }
        }
    }
    // Each box contains exactly one root; disjointness makes the isolation
    // complete since the count matches the degree.
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if !boxes[i].disjoint(&boxes[j]) {
                return Err(AlgNumError::CertificationFailed(
                    "certified boxes overlap".into(),
                ));
            }
        }
    }
    let mut out: Vec<AlgebraicNumber> = boxes
        .into_iter()
        .map(|b| AlgebraicNumber {
            min_poly: p.clone(),
            root_box: b,
        })
        .collect();
    out.sort_by(|a, b| {
        let (ar, ai) = (a.root_box.re.mid(), a.root_box.im.mid());
        let (br, bi) = (b.root_box.re.mid(), b.root_box.im.mid());
        ar.cmp(&br).then_with(|| ai.cmp(&bi))
    });
    Ok(out)
}

/// Enclosure of q(theta) where theta ranges over a certified root box; used
/// to display coordinates that live in an extension field.
pub fn eval_in_box(q: &[Rational], theta: &CBox) -> CBox {
    eval_poly_box(q, theta)
}
