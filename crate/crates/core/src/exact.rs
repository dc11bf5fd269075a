//! Exact scalar arithmetic for the geometric reflection representation.
//!
//! Entries of reflection matrices live in `Z[g]` where `g = 2cos(pi/M)` and
//! `M` is the least common multiple of the finite off-diagonal orders of the
//! Coxeter matrix. Every `2cos(pi/m)` with `m | M` is an integer polynomial
//! in `g` (a Dickson polynomial), so one ring covers all entries.
//!
//! Elements are stored as coefficient vectors reduced modulo the minimal
//! polynomial of `g`, which makes equality a plain vector comparison. Sign
//! determination evaluates the element on a rational bracket around `g`
//! (isolated once by a Sturm sequence) and bisects the bracket until the
//! interval evaluation has a definite sign; a nonzero reduced element is a
//! nonzero real number, so the loop terminates.
//!
//! When every finite off-diagonal order is 2 or 3 all entries are plain
//! integers and the ring degenerates to `Z` with no interval machinery.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient ring for reflection matrices: either `Z` or a real
/// cyclotomic ring `Z[2cos(pi/M)]`.
#[derive(Debug, Clone)]
pub struct ScalarRing {
    /// Degree of the ring over `Z`; scalars are vectors of this length.
    degree: usize,
    kind: RingKind,
}

#[derive(Debug, Clone)]
enum RingKind {
    Integers,
    CyclotomicReal {
        m: u64,
        /// Monic minimal polynomial of `2cos(pi/M)`, length `degree + 1`.
        minimal: Vec<BigInt>,
        /// Rational bracket `lo < g < hi` containing no other root of the
        /// minimal polynomial, with `psi(lo) < 0 < psi(hi)`.
        bracket: (BigRational, BigRational),
    },
}

/// An element of a [`ScalarRing`], reduced to canonical form.
///
/// The coefficient vector always has the ring's degree as its length, so
/// structural equality coincides with equality of the real numbers the
/// elements denote.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    coeffs: Vec<BigInt>,
}

impl ScalarRing {
    pub fn integers() -> Self {
        ScalarRing {
            degree: 1,
            kind: RingKind::Integers,
        }
    }

    /// The ring `Z[2cos(pi/M)]` for `M >= 4`.
    pub fn cyclotomic_real(m: u64) -> Self {
        assert!(m >= 4, "orders 2 and 3 need no extension of Z");
        let minimal = real_cyclotomic_minimal_poly(m);
        let degree = minimal.len() - 1;
        debug_assert!(degree >= 2);
        let bracket = isolate_largest_root(&minimal);
        ScalarRing {
            degree,
            kind: RingKind::CyclotomicReal {
                m,
                minimal,
                bracket,
            },
        }
    }

    /// Chooses the ring for a set of bond orders (`None` meaning infinity).
    /// Integer arithmetic when every finite order is 2 or 3, otherwise the
    /// real cyclotomic ring for the lcm of the finite orders.
    pub fn for_orders<I: IntoIterator<Item = Option<u32>>>(orders: I) -> Self {
        let mut lcm: u64 = 1;
        let mut needs_extension = false;
        for m in orders.into_iter().flatten() {
            debug_assert!(m >= 2);
            if m > 3 {
                needs_extension = true;
            }
            lcm = num_integer::lcm(lcm, m as u64);
        }
        if needs_extension {
            ScalarRing::cyclotomic_real(lcm)
        } else {
            ScalarRing::integers()
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> ExactScalar {
        ExactScalar {
            coeffs: vec![BigInt::zero(); self.degree],
        }
    }

    pub fn from_int<T: Into<BigInt>>(&self, v: T) -> ExactScalar {
        let mut s = self.zero();
        s.coeffs[0] = v.into();
        s
    }

    pub fn one(&self) -> ExactScalar {
        self.from_int(1)
    }

    /// The generator `g = 2cos(pi/M)`; only defined for cyclotomic rings.
    pub fn generator(&self) -> ExactScalar {
        match self.kind {
            RingKind::Integers => panic!("the integer ring has no generator"),
            RingKind::CyclotomicReal { .. } => {
                let mut s = self.zero();
                s.coeffs[1] = BigInt::one();
                s
            }
        }
    }

    /// `2cos(pi/m)` as a ring element; `None` encodes `m = infinity`, where
    /// the conventional value is `2`.
    pub fn cos_constant(&self, order: Option<u32>) -> ExactScalar {
        let Some(m) = order else {
            return self.from_int(2);
        };
        assert!(m >= 2);
        match &self.kind {
            RingKind::Integers => match m {
                2 => self.zero(),
                3 => self.one(),
                _ => panic!("order {m} needs a cyclotomic ring"),
            },
            RingKind::CyclotomicReal { m: big_m, .. } => {
                assert!(
                    big_m % m as u64 == 0,
                    "order {m} does not divide the ring order {big_m}"
                );
                self.dickson(big_m / m as u64)
            }
        }
    }

    /// Dickson polynomial value `D_k(g) = 2cos(k*pi/M)`, reduced.
    fn dickson(&self, k: u64) -> ExactScalar {
        let mut prev = self.from_int(2);
        if k == 0 {
            return prev;
        }
        let g = self.generator();
        let mut cur = g.clone();
        for _ in 1..k {
            let next = self.sub(&self.mul(&cur, &g), &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn add(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        ExactScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        ExactScalar {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &ExactScalar) -> ExactScalar {
        ExactScalar {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        let d = self.degree;
        let mut buf = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                buf[i + j] += x * y;
            }
        }
        if let RingKind::CyclotomicReal { minimal, .. } = &self.kind {
            // Reduce modulo the monic minimal polynomial.
            for i in (d..buf.len()).rev() {
                if buf[i].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut buf[i]);
                for (j, c) in minimal.iter().enumerate().take(d) {
                    buf[i - d + j] -= &lead * c;
                }
            }
        }
        buf.truncate(d);
        ExactScalar { coeffs: buf }
    }

    /// Adds `c * b` into `a` in place.
    pub fn add_mul_assign(&self, a: &mut ExactScalar, c: &ExactScalar, b: &ExactScalar) {
        let prod = self.mul(c, b);
        for (x, y) in a.coeffs.iter_mut().zip(&prod.coeffs) {
            *x += y;
        }
    }

    /// Exact sign of the real number the element denotes.
    pub fn sign(&self, a: &ExactScalar) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if a.is_zero() {
            return Ordering::Equal;
        }
        match &self.kind {
            RingKind::Integers => a.coeffs[0].cmp(&BigInt::zero()),
            RingKind::CyclotomicReal {
                minimal, bracket, ..
            } => {
                let (mut lo, mut hi) = bracket.clone();
                loop {
                    let (plo, phi) = interval_eval(&a.coeffs, &lo, &hi);
                    if plo.is_positive() {
                        return Ordering::Greater;
                    }
                    if phi.is_negative() {
                        return Ordering::Less;
                    }
                    // Not yet separated from zero: halve the bracket around
                    // the root, keeping psi(lo) < 0 < psi(hi).
                    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                    let v = eval_rational(minimal, &mid);
                    match v.cmp(&BigRational::zero()) {
                        Ordering::Less => lo = mid,
                        Ordering::Greater => hi = mid,
                        Ordering::Equal => {
                            // The generator would be rational; impossible for
                            // an irreducible minimal polynomial of degree >= 2.
                            unreachable!("rational root of an irreducible minimal polynomial")
                        }
                    }
                }
            }
        }
    }

    pub fn is_positive(&self, a: &ExactScalar) -> bool {
        self.sign(a) == std::cmp::Ordering::Greater
    }

    pub fn is_negative(&self, a: &ExactScalar) -> bool {
        self.sign(a) == std::cmp::Ordering::Less
    }
}

impl ExactScalar {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Approximate value, for display and diagnostics only.
    pub fn approx(&self, ring: &ScalarRing) -> f64 {
        let g = match &ring.kind {
            RingKind::Integers => 0.0,
            RingKind::CyclotomicReal { m, .. } => 2.0 * (std::f64::consts::PI / *m as f64).cos(),
        };
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            let cf = c.to_string().parse::<f64>().unwrap_or(f64::NAN);
            acc = acc * g + cf;
        }
        acc
    }
}

/// Minimal polynomial of `2cos(pi/M)` over `Q`, monic with integer
/// coefficients, little-endian.
///
/// `2cos(pi/M) = z + 1/z` for a primitive `2M`-th root of unity `z`, so the
/// minimal polynomial is the half-degree fold of the cyclotomic polynomial
/// of order `2M`: writing `Phi(x) = sum a_j x^j` of even degree `2h`,
/// palindromic for `2M >= 3`, one has
/// `x^{-h} Phi(x) = a_h + sum_{k=1..h} a_{h+k} (x^k + x^{-k})`
/// and `x^k + x^{-k} = D_k(x + 1/x)` for the Dickson recurrence
/// `D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}`.
fn real_cyclotomic_minimal_poly(m: u64) -> Vec<BigInt> {
    let phi = cyclotomic(2 * m);
    let deg = phi.len() - 1;
    debug_assert!(deg.is_multiple_of(2) && deg >= 2);
    let half = deg / 2;
    // Dickson polynomials in y, plain integer polynomials.
    let mut d_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut d_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut out = vec![BigInt::zero(); half + 1];
    out[0] = phi[half].clone();
    for k in 1..=half {
        for (i, c) in d_cur.iter().enumerate() {
            out[i] += &phi[half + k] * c;
        }
        if k < half {
            // D_{k+1} = y * D_k - D_{k-1}
            let mut next = vec![BigInt::zero(); d_cur.len() + 1];
            for (i, c) in d_cur.iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in d_prev.iter().enumerate() {
                next[i] -= c;
            }
            d_prev = std::mem::replace(&mut d_cur, next);
        }
    }
    debug_assert!(out[half].is_one());
    out
}

/// Cyclotomic polynomial of order `n`, little-endian integer coefficients.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for &d in &divisors {
        // x^d - 1
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        for (e, q) in &table {
            if d % e == 0 {
                p = exact_div(&p, q);
            }
        }
        table.push((d, p));
    }
    table.pop().unwrap().1
}

/// Exact division of integer polynomials with monic divisor.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * d;
        }
        quot[i - dd] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Horner evaluation of an integer polynomial over a rational interval,
/// returning a rational interval containing the image.
fn interval_eval(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut alo = BigRational::zero();
    let mut ahi = BigRational::zero();
    for c in p.iter().rev() {
        // [alo, ahi] * [lo, hi]
        let products = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut new_lo = products[0].clone();
        let mut new_hi = products[0].clone();
        for v in &products[1..] {
            if *v < new_lo {
                new_lo = v.clone();
            }
            if *v > new_hi {
                new_hi = v.clone();
            }
        }
        let cq = BigRational::from_integer(c.clone());
        alo = new_lo + &cq;
        ahi = new_hi + cq;
    }
    (alo, ahi)
}

/// Returns a rational bracket `(lo, hi)` around the largest real root of the
/// squarefree monic polynomial `psi`, containing no other root and with
/// `psi(lo) < 0 < psi(hi)`, refined to width below `2^-32`.
fn isolate_largest_root(psi: &[BigInt]) -> (BigRational, BigRational) {
    let chain = sturm_chain(psi);
    let count = |a: &BigRational, b: &BigRational| -> usize {
        sign_variations(&chain, a) - sign_variations(&chain, b)
    };

    // All roots of the minimal polynomial of 2cos(pi/M) lie in (-2, 2).
    let mut a = BigRational::from_integer((-3).into());
    let mut b = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    debug_assert!(count(&a, &b) >= 1);
    while count(&a, &b) > 1 {
        let mid = (&a + &b) / &two;
        if count(&mid, &b) >= 1 {
            a = mid;
        } else {
            b = mid;
        }
    }
    debug_assert!(eval_rational(psi, &a).is_negative());
    debug_assert!(eval_rational(psi, &b).is_positive());

    // Tighten by plain sign bisection; the bracket keeps the single root.
    let width_target = BigRational::new(BigInt::one(), BigInt::from(1u64 << 32));
    while &b - &a > width_target {
        let mid = (&a + &b) / &two;
        if eval_rational(psi, &mid).is_negative() {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

fn sturm_chain(psi: &[BigInt]) -> Vec<Vec<BigRational>> {
    let to_q = |p: &[BigInt]| -> Vec<BigRational> {
        p.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut chain = vec![to_q(psi)];
    let deriv: Vec<BigRational> = psi
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| BigRational::from_integer(c * BigInt::from(i)))
        .collect();
    chain.push(deriv);
    loop {
        let n = chain.len();
        let rem = poly_rem(&chain[n - 2], &chain[n - 1]);
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
        chain.push(rem.iter().map(|c| -c).collect());
    }
    chain
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    let db = b.iter().rposition(|c| !c.is_zero()).expect("zero divisor");
    let lead = b[db].clone();
    while let Some(dr) = rem.iter().rposition(|c| !c.is_zero()) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        for j in 0..=db {
            let delta = &factor * &b[j];
            rem[dr - db + j] -= delta;
        }
        rem[dr] = BigRational::zero(); // kill rounding of the cancelled lead
    }
    rem
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut variations = 0;
    for p in chain {
        let mut acc = BigRational::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        if acc.is_zero() {
            continue;
        }
        let pos = acc.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                variations += 1;
            }
        }
        last = Some(pos);
    }
    variations
}
