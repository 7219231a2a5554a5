//! Exact arithmetic in GF(p^n) with a polynomial-basis representation.
//!
//! A [`Field`] is built deterministically for a given `(p, n)`: the modulus
//! is the Conway polynomial `C_{p,n}` and the primitive root is its root
//! `x`, which is primitive by the definition of Conway polynomials. This is
//! the presentation computer-algebra systems standardize on, so index sets
//! of cyclotomic classes (which depend on the choice of primitive root, not
//! just on the abstract field) mean the same thing here as in published
//! tables. Construction materializes full exp/log tables, so every later
//! multiplication, inversion and discrete logarithm is O(1).
//!
//! Elements are packed base-p digit vectors: the element with coefficients
//! `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` is stored as the integer
//! `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`. Packed order therefore sorts by the
//! coefficient vector read from the highest degree down.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

/// Default cap on the number of field elements (`q = p^n`).
pub const DEFAULT_SIZE_CAP: u64 = 1 << 27;

/// A field element, packed as a base-`p` digit vector.
///
/// Values are only meaningful relative to the [`Field`] that produced them.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element(pub u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    BadDegree(u32),
    SizeCapExceeded { q: u128, cap: u64 },
    ZeroInverse,
    LogOfZero,
    BadCoefficients,
    CacheIo(String),
    CacheMismatch(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            FieldError::BadDegree(n) => write!(f, "extension degree {n} must be >= 1"),
            FieldError::SizeCapExceeded { q, cap } => {
                write!(f, "field order {q} exceeds the size cap {cap}")
            }
            FieldError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            FieldError::LogOfZero => write!(f, "zero has no discrete logarithm"),
            FieldError::BadCoefficients => write!(f, "coefficient vector is malformed"),
            FieldError::CacheIo(msg) => write!(f, "log-table cache I/O error: {msg}"),
            FieldError::CacheMismatch(msg) => write!(f, "log-table cache mismatch: {msg}"),
        }
    }
}

impl std::error::Error for FieldError {}

/// JSON-serializable field descriptor: `{ p, n, modulus, g }` with the
/// modulus as a coefficient list (constant term first, monic) and the
/// primitive root as a coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u64>,
    pub g: Vec<u64>,
}

/// GF(p^n) with precomputed exp/log tables.
pub struct Field {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    g: Element,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_basis: Vec<u64>,
}

const LOG_SENTINEL: u32 = u32::MAX;

impl Field {
    /// Builds GF(p^n) with the default size cap.
    pub fn new(p: u64, n: u32) -> Result<Field, FieldError> {
        Field::with_cap(p, n, DEFAULT_SIZE_CAP)
    }

    /// Builds GF(p^n), rejecting `p^n > cap`.
    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<Field, FieldError> {
        let (q, modulus, g_packed) = Field::prepare(p, n, cap, None)?;
        let (exp, log) = build_tables(p, n, q, &modulus, g_packed);
        Ok(Field::assemble(p, n, q, modulus, g_packed, exp, log))
    }

    /// Builds GF(p^n) on the `nth` primitive root in packed order instead of
    /// the Conway root. Period values, counts and other class-aggregate
    /// quantities are independent of this choice; witness vertex sets and
    /// (for some 2d) the labelling of index sets are not.
    pub fn with_nth_primitive_root(
        p: u64,
        n: u32,
        cap: u64,
        nth: usize,
    ) -> Result<Field, FieldError> {
        let (q, modulus, g_packed) = Field::prepare(p, n, cap, Some(nth))?;
        let (exp, log) = build_tables(p, n, q, &modulus, g_packed);
        Ok(Field::assemble(p, n, q, modulus, g_packed, exp, log))
    }

    /// Builds GF(p^n), loading the log table from `cache_dir` when a valid
    /// cached file exists, and writing one after a fresh build otherwise.
    pub fn with_cache(p: u64, n: u32, cap: u64, cache_dir: &Path) -> Result<Field, FieldError> {
        let (q, modulus, g_packed) = Field::prepare(p, n, cap, None)?;
        let path = cache_path(cache_dir, p, n, &modulus);
        if path.is_file() {
            let log = read_log_cache(&path, p, n, q)?;
            // Packed element 0 never appears in the exp table, so a zero slot
            // means "unfilled" while rebuilding the inverse map.
            let mut exp = vec![0u32; (q - 1) as usize];
            for x in 1..q {
                let k = log[x as usize];
                if k as u64 >= q - 1 || exp[k as usize] != 0 {
                    return Err(FieldError::CacheMismatch(
                        "log table is not a bijection".into(),
                    ));
                }
                exp[k as usize] = x as u32;
            }
            if exp[0] != 1 || log[g_packed as usize] != 1 {
                return Err(FieldError::CacheMismatch(
                    "cached table disagrees with the deterministic generator".into(),
                ));
            }
            return Ok(Field::assemble(p, n, q, modulus, g_packed, exp, log));
        }
        let (exp, log) = build_tables(p, n, q, &modulus, g_packed);
        let field = Field::assemble(p, n, q, modulus, g_packed, exp, log);
        field.save_log_table(cache_dir)?;
        Ok(field)
    }

    /// Validates `(p, n)` and selects the modulus and primitive root: the
    /// Conway polynomial with its root `x` as generator, or (for
    /// `alt_generator = Some(nth)`) the nth primitive element in packed
    /// order.
    fn prepare(
        p: u64,
        n: u32,
        cap: u64,
        alt_generator: Option<usize>,
    ) -> Result<(u64, Vec<u64>, u64), FieldError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n < 1 {
            return Err(FieldError::BadDegree(n));
        }
        let q_big = (p as u128)
            .checked_pow(n)
            .ok_or(FieldError::SizeCapExceeded { q: u128::MAX, cap })?;
        if q_big > cap as u128 {
            return Err(FieldError::SizeCapExceeded { q: q_big, cap });
        }
        let q = q_big as u64;
        let modulus = conway_polynomial(p, n);
        let g_packed = match alt_generator {
            None => conway_root(p, &modulus),
            Some(nth) => nth_primitive_root(p, n, q, &modulus, nth),
        };
        Ok((q, modulus, g_packed))
    }

    fn assemble(
        p: u64,
        n: u32,
        q: u64,
        modulus: Vec<u64>,
        g_packed: u64,
        exp: Vec<u32>,
        log: Vec<u32>,
    ) -> Field {
        let mut field = Field {
            p,
            n,
            q,
            modulus,
            g: Element(g_packed as u32),
            exp,
            log,
            trace_basis: Vec::new(),
        };
        field.trace_basis = (0..n)
            .map(|i| {
                let monomial = Element(p.pow(i) as u32);
                field.trace_by_conjugates(monomial)
            })
            .collect();
        field
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order `q = p^n`.
    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus coefficients, constant term first (length `n + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The deterministic primitive root.
    #[inline]
    pub fn generator(&self) -> Element {
        self.g
    }

    /// `sqrt(q)` when `q` is a square.
    pub fn sqrt_q(&self) -> Option<u64> {
        if self.n % 2 == 0 {
            Some(self.p.pow(self.n / 2))
        } else {
            None
        }
    }

    /// Embeds a nonnegative integer as the constant element `v mod p`.
    #[inline]
    pub fn scalar(&self, v: u64) -> Element {
        Element((v % self.p) as u32)
    }

    /// Packs a coefficient vector (length `n`, entries in `[0, p)`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Element, FieldError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients);
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c;
        }
        Ok(Element(v as u32))
    }

    /// Unpacks an element into its coefficient vector (length `n`).
    pub fn coeffs(&self, x: Element) -> Vec<u64> {
        let mut v = x.0 as u64;
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Iterates every field element in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.q as u32).map(Element)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let p = self.p;
        let (mut va, mut vb) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let mut d = va % p + vb % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            place *= p;
            va /= p;
            vb /= p;
        }
        Element(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        let p = self.p;
        let mut va = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let d = va % p;
            if d != 0 {
                out += (p - d) * place;
            }
            place *= p;
            va /= p;
        }
        Element(out as u32)
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// Table-backed multiplication.
    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.is_zero() || b.is_zero() {
            return Element::ZERO;
        }
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        Element(self.exp[k as usize])
    }

    /// `a^e`, with `a^0 = 1` (including `0^0 = 1`).
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return Element::ONE;
        }
        if a.is_zero() {
            return Element::ZERO;
        }
        let k = (self.log[a.0 as usize] as u128 * e as u128) % (self.q as u128 - 1);
        Element(self.exp[k as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let k = (self.q - 1 - self.log[a.0 as usize] as u64) % (self.q - 1);
        Ok(Element(self.exp[k as usize]))
    }

    /// The exponent `k` in `[0, q-1)` with `g^k = x`.
    pub fn discrete_log(&self, x: Element) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// `g^k` (exponent taken mod `q - 1`).
    #[inline]
    pub fn exp_of(&self, k: u64) -> Element {
        Element(self.exp[(k % (self.q - 1)) as usize])
    }

    /// The Frobenius map `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, x: Element) -> Element {
        self.pow(x, self.p)
    }

    /// Absolute trace `Tr(x) = x + x^p + ... + x^{p^{n-1}}` as a scalar in `[0, p)`.
    pub fn trace(&self, x: Element) -> u64 {
        let mut v = x.0 as u64;
        let mut acc = 0u64;
        for &tb in &self.trace_basis {
            acc = (acc + (v % self.p) * tb) % self.p;
            v /= self.p;
        }
        acc
    }

    fn trace_by_conjugates(&self, x: Element) -> u64 {
        let mut acc = Element::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc = self.add(acc, y);
            y = self.pow(y, self.p);
        }
        let coeffs = self.coeffs(acc);
        debug_assert!(
            coeffs[1..].iter().all(|&c| c == 0),
            "trace is not a constant polynomial"
        );
        coeffs[0]
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            n: self.n,
            modulus: self.modulus.clone(),
            g: self.coeffs(self.g),
        }
    }

    /// FNV-1a hash of the descriptor, used as the cache key and echoed in reports.
    pub fn descriptor_hash(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |v: u64| {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(self.p);
        eat(self.n as u64);
        for &c in &self.modulus {
            eat(c);
        }
        eat(self.g.0 as u64);
        h
    }

    /// Writes the log table: a little-endian header of three u64 (`p`, `n`, `q`)
    /// followed by `q - 1` little-endian u32 entries, entry `x - 1` holding
    /// `log(x)` for each nonzero packed element `x`.
    pub fn save_log_table(&self, dir: &Path) -> Result<(), FieldError> {
        fs::create_dir_all(dir).map_err(|e| FieldError::CacheIo(e.to_string()))?;
        let path = cache_path(dir, self.p, self.n, &self.modulus);
        let mut buf = Vec::with_capacity(24 + 4 * (self.q as usize - 1));
        buf.extend_from_slice(&self.p.to_le_bytes());
        buf.extend_from_slice(&(self.n as u64).to_le_bytes());
        buf.extend_from_slice(&self.q.to_le_bytes());
        for x in 1..self.q {
            buf.extend_from_slice(&self.log[x as usize].to_le_bytes());
        }
        let mut f = fs::File::create(&path).map_err(|e| FieldError::CacheIo(e.to_string()))?;
        f.write_all(&buf)
            .map_err(|e| FieldError::CacheIo(e.to_string()))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("g", &self.g)
            .finish()
    }
}

fn cache_path(dir: &Path, p: u64, n: u32, modulus: &[u64]) -> PathBuf {
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |v: u64| {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(p);
    eat(n as u64);
    for &c in modulus {
        eat(c);
    }
    dir.join(format!("logtab_p{p}_n{n}_{h:016x}.bin"))
}

fn read_log_cache(path: &Path, p: u64, n: u32, q: u64) -> Result<Vec<u32>, FieldError> {
    let mut f = fs::File::open(path).map_err(|e| FieldError::CacheIo(e.to_string()))?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf)
        .map_err(|e| FieldError::CacheIo(e.to_string()))?;
    let want = 24 + 4 * (q as usize - 1);
    if buf.len() != want {
        return Err(FieldError::CacheMismatch(format!(
            "file length {} != expected {want}",
            buf.len()
        )));
    }
    let rd64 = |off: usize| u64::from_le_bytes(buf[off..off + 8].try_into().unwrap());
    if rd64(0) != p || rd64(8) != n as u64 || rd64(16) != q {
        return Err(FieldError::CacheMismatch(
            "header (p, n, q) mismatch".into(),
        ));
    }
    let mut log = vec![LOG_SENTINEL; q as usize];
    for (i, chunk) in buf[24..].chunks_exact(4).enumerate() {
        log[i + 1] = u32::from_le_bytes(chunk.try_into().unwrap());
    }
    Ok(log)
}

fn build_tables(p: u64, n: u32, q: u64, modulus: &[u64], g_packed: u64) -> (Vec<u32>, Vec<u32>) {
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![LOG_SENTINEL; q as usize];
    let mut x = 1u64;
    for k in 0..q - 1 {
        exp[k as usize] = x as u32;
        assert_eq!(
            log[x as usize], LOG_SENTINEL,
            "generator order is smaller than q - 1"
        );
        log[x as usize] = k as u32;
        x = packed_mul(p, n, modulus, x, g_packed);
    }
    assert_eq!(x, 1, "generator order does not divide q - 1");
    (exp, log)
}

// ---------------------------------------------------------------------------
// Bootstrap polynomial arithmetic over GF(p) (used only during construction).
// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Prime factors of `n`, ascending, without multiplicity.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn unpack(p: u64, n: u32, mut v: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn pack(p: u64, coeffs: &[u64]) -> u64 {
    let mut v = 0u64;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v
}

/// Product of two packed elements modulo the field modulus, via raw polynomial
/// arithmetic. Quadratic in `n`; only used to bootstrap the exp table and to
/// find the primitive root.
fn packed_mul(p: u64, n: u32, modulus: &[u64], a: u64, b: u64) -> u64 {
    let n = n as usize;
    let ca = unpack(p, n as u32, a);
    let cb = unpack(p, n as u32, b);
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in ca.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in cb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (n..2 * n - 1).rev() {
        let c = prod[deg];
        if c != 0 {
            prod[deg] = 0;
            for j in 0..n {
                let sub = c * modulus[j] % p;
                prod[deg - n + j] = (prod[deg - n + j] + p - sub) % p;
            }
        }
    }
    pack(p, &prod[..n])
}

fn packed_pow(p: u64, n: u32, modulus: &[u64], a: u64, mut e: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = packed_mul(p, n, modulus, acc, base);
        }
        base = packed_mul(p, n, modulus, base, base);
        e >>= 1;
    }
    acc
}

// Dense polynomial helpers over GF(p) for the irreducibility test.
// Polynomials are coefficient vectors, constant term first, trailing zeros trimmed.

fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_mul_mod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let n = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (n..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            prod[deg] = 0;
            for j in 0..n {
                let sub = c * m[j] % p;
                prod[deg - n + j] = (prod[deg - n + j] + p - sub) % p;
            }
        }
    }
    prod.truncate(n.max(1));
    poly_trim(prod)
}

/// `x^(p^e) mod m` by `e` successive p-th powers.
fn poly_x_to_p_power(p: u64, e: u32, m: &[u64]) -> Vec<u64> {
    let n = m.len() - 1;
    let mut r = if n == 1 {
        vec![(p - m[0] % p) % p]
    } else {
        vec![0, 1]
    };
    for _ in 0..e {
        let base = r.clone();
        let mut acc = vec![1u64];
        let mut ee = p;
        let mut sq = base;
        while ee > 0 {
            if ee & 1 == 1 {
                acc = poly_mul_mod(p, &acc, &sq, m);
            }
            sq = poly_mul_mod(p, &sq, &sq, m);
            ee >>= 1;
        }
        r = acc;
    }
    r
}

fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    debug_assert!(!(b.len() == 1 && b[0] == 0));
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let shift = a.len() - b.len();
        let c = *a.last().unwrap() * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            let sub = c * bc % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        a = poly_trim(a);
        if a.len() < b.len() {
            break;
        }
    }
    a
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime; Fermat.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn is_irreducible(p: u64, m: &[u64]) -> bool {
    let n = (m.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    if m[0] == 0 {
        return false; // divisible by x
    }
    // x^{ p^n } must reduce to x ...
    let xq = poly_x_to_p_power(p, n, m);
    let x = poly_trim(vec![0, 1]);
    if poly_trim(xq) != x {
        return false;
    }
    // ... and x^{ p^{n/l} } - x must be coprime to m for every prime l | n.
    for l in prime_factors(n as u64) {
        let mut s = poly_x_to_p_power(p, n / l as u32, m);
        if s.len() < 2 {
            s.resize(2, 0);
        }
        s[1] = (s[1] + p - 1) % p;
        let g = poly_gcd(p, &poly_trim(s), m);
        if !(g.len() == 1 && g[0] != 0) {
            return false;
        }
    }
    true
}

fn packed_add(p: u64, n: u32, a: u64, b: u64) -> u64 {
    let (mut va, mut vb) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..n {
        let mut d = va % p + vb % p;
        if d >= p {
            d -= p;
        }
        out += d * place;
        place *= p;
        va /= p;
        vb /= p;
    }
    out
}

/// The root `x mod f` as a packed element (for degree 1, the constant
/// `-f[0]`).
fn conway_root(p: u64, modulus: &[u64]) -> u64 {
    if modulus.len() == 2 {
        (p - modulus[0] % p) % p
    } else {
        p
    }
}

/// The Conway polynomial `C_{p,n}`: the minimal monic primitive polynomial
/// of degree `n` over GF(p) that is norm-compatible with `C_{p,m}` for every
/// proper divisor `m` of `n` (the root's `(p^n-1)/(p^m-1)` power must be a
/// root of `C_{p,m}`). Minimality is in the standard ordering: writing
/// `f = x^n - c_{n-1} x^{n-1} + c_{n-2} x^{n-2} - ...`, the words
/// `(c_{n-1}, ..., c_0)` are compared lexicographically. This is the field
/// presentation computer-algebra systems use, which fixes the meaning of
/// published cyclotomic-class index sets.
fn conway_polynomial(p: u64, n: u32) -> Vec<u64> {
    let sub: Vec<(u32, Vec<u64>)> = (1..n)
        .filter(|m| n % m == 0)
        .map(|m| (m, conway_polynomial(p, m)))
        .collect();
    let q = p.pow(n);
    let order_factors = prime_factors(q - 1);
    for word in 0..q {
        // word digits, most significant first, are (c_{n-1}, ..., c_0).
        let mut f = vec![0u64; n as usize + 1];
        f[n as usize] = 1;
        let mut w = word;
        for (j, slot) in f.iter_mut().enumerate().take(n as usize) {
            let c = w % p;
            w /= p;
            // a_j = (-1)^{n-j} c_j
            *slot = if (n as usize - j) % 2 == 0 {
                c
            } else {
                (p - c) % p
            };
        }
        if !is_irreducible(p, &f) {
            continue;
        }
        let root = conway_root(p, &f);
        if packed_pow(p, n, &f, root, q - 1) != 1
            || order_factors
                .iter()
                .any(|&l| packed_pow(p, n, &f, root, (q - 1) / l) == 1)
        {
            continue; // not primitive
        }
        let compatible = sub.iter().all(|(m, cm)| {
            let e = (q - 1) / (p.pow(*m) - 1);
            let w_elt = packed_pow(p, n, &f, root, e);
            // Evaluate C_{p,m} at w_elt inside GF(p^n).
            let mut acc = 0u64;
            let mut pw = 1u64;
            for &coeff in cm {
                acc = packed_add(p, n, acc, packed_mul(p, n, &f, coeff % p, pw));
                pw = packed_mul(p, n, &f, pw, w_elt);
            }
            acc == 0
        });
        if compatible {
            return f;
        }
    }
    unreachable!("Conway polynomials exist for every (p, n)")
}

/// The `nth` element in packed order with multiplicative order exactly `q - 1`.
fn nth_primitive_root(p: u64, n: u32, q: u64, modulus: &[u64], nth: usize) -> u64 {
    let factors = prime_factors(q - 1);
    let mut seen = 0usize;
    for v in 1..q {
        if factors
            .iter()
            .all(|&f| packed_pow(p, n, modulus, v, (q - 1) / f) != 1)
        {
            debug_assert_eq!(packed_pow(p, n, modulus, v, q - 1), 1);
            if seen == nth {
                return v;
            }
            seen += 1;
        }
    }
    unreachable!("F_q^* is cyclic with phi(q-1) primitive roots")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_have_expected_order() {
        let f = Field::new(5, 4).unwrap();
        assert_eq!(f.q(), 625);
        // generator order is q - 1: g^(q-1) = 1 and no earlier repeat is
        // guaranteed by the table-building pass.
        assert_eq!(f.pow(f.generator(), 624), Element::ONE);

        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);

        let f2401 = Field::new(7, 4).unwrap();
        assert_eq!(f2401.q(), 2401);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 2).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(2, 3).unwrap_err(), FieldError::NotPrime(2));
        assert_eq!(Field::new(9, 1).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(Field::new(5, 0).unwrap_err(), FieldError::BadDegree(0));
        assert!(matches!(
            Field::with_cap(5, 13, 1 << 20).unwrap_err(),
            FieldError::SizeCapExceeded { .. }
        ));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = Field::new(5, 4).unwrap();
        let b = Field::new(5, 4).unwrap();
        assert_eq!(a.descriptor(), b.descriptor());
        assert_eq!(a.descriptor_hash(), b.descriptor_hash());
    }

    #[test]
    fn mul_inverse_and_pow_identities() {
        let f = Field::new(5, 4).unwrap();
        let g = f.generator();
        assert_eq!(f.mul(g, f.inv(g).unwrap()), Element::ONE);
        assert_eq!(f.pow(g, f.q() - 1), Element::ONE);
        assert_eq!(f.inv(Element::ZERO).unwrap_err(), FieldError::ZeroInverse);
    }

    #[test]
    fn product_of_powers_matches_repeated_multiplication() {
        // Oracle: 12 raw multiplications by g, independent of the log tables.
        let f = Field::new(5, 4).unwrap();
        let g = f.generator();
        let mut oracle = Element::ONE;
        for _ in 0..12 {
            oracle =
                Element(packed_mul(f.p(), f.n(), f.modulus(), oracle.0 as u64, g.0 as u64) as u32);
        }
        let via_tables = f.mul(f.pow(g, 5), f.pow(g, 7));
        assert_eq!(via_tables, oracle);
        assert_eq!(f.discrete_log(via_tables).unwrap(), 12);
    }

    #[test]
    fn discrete_log_basic_cases() {
        let f = Field::new(5, 4).unwrap();
        assert_eq!(f.discrete_log(Element::ONE).unwrap(), 0);
        assert_eq!(f.discrete_log(f.generator()).unwrap(), 1);
        assert_eq!(
            f.discrete_log(Element::ZERO).unwrap_err(),
            FieldError::LogOfZero
        );
    }

    #[test]
    fn discrete_log_inverts_exponentiation_exhaustively() {
        for (p, n) in [(3u64, 2u32), (5, 4), (7, 2), (13, 2)] {
            let f = Field::new(p, n).unwrap();
            for x in f.elements().skip(1) {
                let k = f.discrete_log(x).unwrap();
                assert_eq!(f.exp_of(k), x);
            }
        }
    }

    #[test]
    fn trace_basics_and_surjectivity() {
        let f = Field::new(5, 4).unwrap();
        assert_eq!(f.trace(Element::ZERO), 0);
        assert_eq!(f.trace(Element::ONE), 4); // n mod p
                                              // Linearity and fiber sizes: each value in GF(p) is hit q/p times.
        let mut fibers = vec![0u64; f.p() as usize];
        for x in f.elements() {
            fibers[f.trace(x) as usize] += 1;
        }
        assert!(fibers.iter().all(|&c| c == f.q() / f.p()));

        let f27 = Field::new(3, 3).unwrap();
        assert_eq!(f27.trace(Element::ONE), 0); // 3 mod 3
    }

    #[test]
    fn trace_is_additive_on_samples() {
        let f = Field::new(7, 2).unwrap();
        for a in f.elements().step_by(5) {
            for b in f.elements().step_by(7) {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
            }
        }
    }

    #[test]
    fn coeff_roundtrip() {
        let f = Field::new(5, 4).unwrap();
        for x in [Element(0), Element(1), Element(123), Element(624)] {
            let c = f.coeffs(x);
            assert_eq!(f.from_coeffs(&c).unwrap(), x);
        }
        assert_eq!(
            f.from_coeffs(&[5, 0, 0, 0]).unwrap_err(),
            FieldError::BadCoefficients
        );
    }

    #[test]
    fn log_table_cache_roundtrip() {
        let dir = std::env::temp_dir().join(format!("cyclopaley_cache_{}", std::process::id()));
        let fresh = Field::new(5, 2).unwrap();
        fresh.save_log_table(&dir).unwrap();
        let cached = Field::with_cache(5, 2, DEFAULT_SIZE_CAP, &dir).unwrap();
        assert_eq!(fresh.descriptor(), cached.descriptor());
        for x in fresh.elements().skip(1) {
            assert_eq!(
                fresh.discrete_log(x).unwrap(),
                cached.discrete_log(x).unwrap()
            );
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn prime_field_works() {
        let f = Field::new(13, 1).unwrap();
        assert_eq!(f.q(), 13);
        assert_eq!(f.generator(), Element(2)); // 2 is the least primitive root mod 13
        assert_eq!(f.mul(f.scalar(5), f.scalar(8)), f.scalar(40));
        assert_eq!(f.trace(f.scalar(9)), 9);
    }
}
