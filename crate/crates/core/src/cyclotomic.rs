//! Exact arithmetic in cyclotomic fields.
//!
//! A value lives in `Q(ζ_n)` and is stored by its coordinates in the power
//! basis `1, ζ_n, …, ζ_n^{φ(n)-1}` (reduction modulo the `n`-th cyclotomic
//! polynomial). Arithmetic lifts both operands to the field of the lcm of
//! their conductors; [`Cyclotomic::canonical`] shrinks a value to the smallest
//! cyclotomic field containing it, which makes the representation unique.
//! Conductors are kept `≢ 2 (mod 4)` since `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduction data for `Q(ζ_n)`: `powers[k]` is `ζ_n^k` in the power basis.
struct Field {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn normalize_conductor(n: usize) -> usize {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn cyclotomic_polynomial(n: usize, cache: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for proper divisors d.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d, cache);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd]; // den is monic
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn field(n: usize) -> Arc<Field> {
    static FIELDS: OnceLock<RwLock<HashMap<usize, Arc<Field>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = fields.read().unwrap().get(&n) {
        return f.clone();
    }
    let mut cache = HashMap::new();
    let poly = cyclotomic_polynomial(n, &mut cache);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then reduce the degree-phi term with the monic polynomial
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let f = Arc::new(Field { phi, powers });
    fields.write().unwrap().insert(n, f.clone());
    f
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![q] }
    }

    /// `ζ_n^k` with `ζ_n = e^{2πi/n}`.
    pub fn zeta(n: usize, k: i64) -> Self {
        assert!(n > 0);
        let k = k.rem_euclid(n as i64) as usize;
        let m = normalize_conductor(n);
        if m == n {
            let f = field(n);
            Cyclotomic { n, coeffs: f.powers[k].iter().map(|&c| BigRational::from_integer(c.into())).collect() }
        } else {
            // n = 2m with m odd: ζ_n = -ζ_m^{(m+1)/2}
            let e = (k * (m + 1) / 2) % m;
            let base = Self::zeta(m, e as i64);
            if k % 2 == 1 {
                -base
            } else {
                base
            }
        }
    }

    /// Sum of `mults[s]·ζ_e^s`.
    pub fn from_root_multiplicities(e: usize, mults: &[i64]) -> Self {
        let m = normalize_conductor(e);
        let f = field(m);
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (s, &c) in mults.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let z = Self::zeta(e, s as i64).lift(m);
            for (acc, v) in coeffs.iter_mut().zip(z) {
                *acc += v * BigRational::from_integer(c.into());
            }
        }
        Cyclotomic { n: m, coeffs }
    }

    /// Conductor of the stored representation (not necessarily minimal).
    pub fn field_conductor(&self) -> usize {
        self.n
    }

    /// Coordinates in `Q(ζ_m)` for a multiple `m` of the current conductor.
    fn lift(&self, m: usize) -> Vec<BigRational> {
        if m == self.n {
            return self.coeffs.clone();
        }
        debug_assert_eq!(m % self.n, 0);
        let f = field(m);
        let step = m / self.n;
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(i * step) % m]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        out
    }

    fn common(&self, other: &Self) -> usize {
        self.n.lcm(&other.n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        let f = field(self.n);
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(self.n - i) % self.n]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: self.n, coeffs: out }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Representation over the smallest cyclotomic field containing the value.
    pub fn canonical(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            for p in prime_factors(cur.n) {
                let m = normalize_conductor(cur.n / p);
                if let Some(c) = cur.restrict_to(m) {
                    cur = c;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Express the value in `Q(ζ_m)` for a divisor `m` of the conductor, if it lies there.
    fn restrict_to(&self, m: usize) -> Option<Self> {
        let fm = field(m);
        let cols: Vec<Vec<BigRational>> =
            (0..fm.phi).map(|j| Self::zeta(m, j as i64).lift(self.n)).collect();
        let rows = self.coeffs.len();
        let ncols = cols.len();
        // augmented matrix rows × (ncols + 1)
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=ncols {
                        let t = &a[r][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[ncols].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); ncols];
        for (i, &c) in pivots.iter().enumerate() {
            coeffs[c] = a[i][ncols].clone();
        }
        Some(Cyclotomic { n: m, coeffs })
    }

    /// Total order on values: smaller conductor first, then coordinates
    /// compared with larger entries first. Used only to fix basis orderings.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let a = self.canonical();
        let b = other.canonical();
        a.n.cmp(&b.n).then_with(|| {
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                match y.cmp(x) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let m = self.common(other);
        self.lift(m) == other.lift(m)
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.n.hash(state);
        c.coeffs.hash(state);
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let m = self.common(rhs);
        let coeffs = self.lift(m).into_iter().zip(rhs.lift(m)).map(|(a, b)| a + b).collect();
        Cyclotomic { n: m, coeffs }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let m = self.common(rhs);
        let coeffs = self.lift(m).into_iter().zip(rhs.lift(m)).map(|(a, b)| a - b).collect();
        Cyclotomic { n: m, coeffs }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let m = self.common(rhs);
        let f = field(m);
        let a = self.lift(m);
        let b = rhs.lift(m);
        let mut raw = vec![BigRational::zero(); 2 * f.phi];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                coeffs[k] += c;
            } else {
                for (o, &p) in coeffs.iter_mut().zip(&f.powers[k % m]) {
                    if p != 0 {
                        *o += &c * BigRational::from_integer(p.into());
                    }
                }
            }
        }
        Cyclotomic { n: m, coeffs }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("E({})", c.n),
                _ => format!("E({})^{}", c.n, i),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
