//! Finite-field arithmetic over GF(q) for prime powers q up to 2^16.
//!
//! Extension fields GF(p^m) represent elements by their index in [0, q):
//! the base-p digits of the index are the polynomial coefficients (digit i
//! is the coefficient of x^i). Multiplication and inversion go through
//! log/antilog tables built from a fixed generator, so all operations are
//! deterministic across runs and platforms.

use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} outside supported range [2, 65536]")]
    UnsupportedSize(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// A fully resolved field description: q = p^m plus the reduction modulus.
///
/// `modulus` lists the coefficients c_0..c_m (ascending degree) of a monic
/// irreducible degree-m polynomial over GF(p); it is empty when m = 1.
/// The modulus is the lexicographically smallest irreducible (comparing
/// coefficients from the highest degree down), so field construction is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// An element of GF(q), stored as its index in [0, q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }
}

/// Decompose q as p^m with p prime, or None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut rest = q;
    let mut p = 0u64;
    let mut f = 2u64;
    while f * f <= rest {
        if rest.is_multiple_of(f) {
            p = f;
            while rest.is_multiple_of(f) {
                rest /= f;
            }
            break;
        }
        f += 1;
    }
    if p == 0 {
        // q itself is prime
        return Some((q, 1));
    }
    if rest != 1 {
        return None; // second prime factor
    }
    let mut m = 0u32;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        m += 1;
    }
    debug_assert_eq!(acc, q);
    Some((p, m))
}

impl FieldSpec {
    /// Resolve a field size to its spec, choosing the deterministic modulus.
    pub fn new(q: u64) -> Result<FieldSpec, GfError> {
        if !(2..=MAX_FIELD_SIZE).contains(&q) {
            return Err(GfError::UnsupportedSize(q));
        }
        let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p as u32, m)
        };
        Ok(FieldSpec {
            q: q as u32,
            p: p as u32,
            m,
            modulus,
        })
    }
}

/// Find the monic irreducible degree-m polynomial over GF(p) with the
/// smallest coefficient encoding (sum of c_i * p^i). Existence is guaranteed
/// for every prime p and m >= 1.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let low_count = (p as u64).pow(m); // choices for c_0..c_{m-1}
    for value in 0..low_count {
        let mut coeffs = digits(value, p as u64, m as usize);
        coeffs.push(1); // monic
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn digits(mut value: u64, base: u64, count: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push((value % base) as u32);
        value /= base;
    }
    out
}

/// Exhaustive divisor check: a degree-m polynomial is irreducible iff no
/// monic polynomial of degree 1..=m/2 divides it.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for deg in 1..=(m / 2) {
        let low_count = (p as u64).pow(deg as u32);
        for value in 0..low_count {
            let mut div = digits(value, p as u64, deg);
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Remainder of poly / div over GF(p). Both monic-friendly; returns the
/// remainder with trailing zeros trimmed (empty = exact division).
fn poly_rem(poly: &[u32], div: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u32> = poly.to_vec();
    let dd = div.len() - 1;
    let lead_inv = mod_inv(div[dd], p);
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        if c != 0 {
            let factor = (c as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = rem.len() - 1 - dd;
            for (i, &dc) in div.iter().enumerate() {
                let sub = (factor as u64 * dc as u64 % p as u64) as u32;
                let idx = shift + i;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.last() == Some(&0) {
            rem.pop();
        }
    }
    rem
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Arithmetic over a fixed GF(q): add, sub, mul, inv, pow, and Horner
/// polynomial evaluation. Immutable after construction and safe to share.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    // Extension fields only: exp[i] = g^i for i in 0..2(q-1), log[a] for a >= 1.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(q: u64) -> Result<Field, GfError> {
        Ok(Field::from_spec(FieldSpec::new(q)?))
    }

    pub fn from_spec(spec: FieldSpec) -> Field {
        let mut field = Field {
            spec,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if field.spec.m > 1 {
            field.build_tables();
        }
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn size(&self) -> u32 {
        self.spec.q
    }

    /// Wrap an index as a field element. Panics when index >= q.
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(
            index < self.spec.q,
            "element index {index} >= q = {}",
            self.spec.q
        );
        FieldElement(index)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.spec.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (p, q) = (self.spec.p, self.spec.q);
        if self.spec.m == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % p as u64) as u32);
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        FieldElement(digitwise(a.0, b.0, p, q, |x, y| (x + y) % p))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (p, q) = (self.spec.p, self.spec.q);
        if self.spec.m == 1 {
            return FieldElement(((a.0 as u64 + p as u64 - b.0 as u64) % p as u64) as u32);
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        FieldElement(digitwise(a.0, b.0, p, q, |x, y| (x + p - y) % p))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.spec.m == 1 {
            let p = self.spec.p as u64;
            return FieldElement((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[i])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        if self.spec.m == 1 {
            return Ok(FieldElement(mod_inv(a.0, self.spec.p)));
        }
        let order = self.spec.q as usize - 1;
        let i = (order - self.log[a.0 as usize] as usize) % order;
        Ok(FieldElement(self.exp[i]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with the convention a^0 = 1 (including 0^0).
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.spec.m == 1 {
            return FieldElement(mod_pow(a.0 as u64, e, self.spec.p as u64) as u32);
        }
        let order = self.spec.q as u64 - 1;
        let i = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(self.exp[i as usize])
    }

    /// Evaluate the polynomial with ascending coefficients `coeffs` at x
    /// (Horner's rule). An empty coefficient list evaluates to zero.
    pub fn poly_eval(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.spec.q as usize;
        let order = q - 1;
        let g = self.find_generator();
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(order) {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.slow_mul(cur, g);
        }
        debug_assert_eq!(cur, 1, "generator order must be q-1");
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        self.exp = exp;
        self.log = log;
    }

    /// Smallest element index that generates the multiplicative group.
    fn find_generator(&self) -> u32 {
        let order = self.spec.q as u64 - 1;
        let factors = prime_factors(order);
        'outer: for g in 2..self.spec.q {
            for &f in &factors {
                if self.slow_pow(g, order / f) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every finite field has a generator")
    }

    fn slow_pow(&self, base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Table-free multiply: convolve base-p digit vectors, reduce by the
    /// modulus. Used only while building the log tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p as u64;
        let m = self.spec.m as usize;
        let da = digits(a as u64, p, m);
        let db = digits(b as u64, p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce degree >= m terms using x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mc) in self.spec.modulus.iter().enumerate().take(m) {
                let idx = i - m + j;
                prod[idx] = (prod[idx] + p * c - c * mc as u64 % p) % p;
            }
        }
        let mut out = 0u64;
        for &digit in prod[..m].iter().rev() {
            out = out * p + digit;
        }
        out as u32
    }
}

fn digitwise(a: u32, b: u32, p: u32, q: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0u32;
    let mut mult = 1u32;
    let (mut x, mut y) = (a, b);
    while mult < q {
        out += op(x % p, y % p) * mult;
        x /= p;
        y /= p;
        mult *= p;
    }
    out
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= v {
        if v.is_multiple_of(f) {
            out.push(f);
            while v.is_multiple_of(f) {
                v /= f;
            }
        }
        f += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}
