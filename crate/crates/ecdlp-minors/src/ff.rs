//! Exact arithmetic in prime fields `F_p` and binary fields `F_{2^m}`.
//!
//! Elements keep representatives that fit in a `u64` (the desk-scale bound);
//! all intermediates are widened to `u128`, so no operation can overflow or
//! round. Prime elements are canonical integers in `[0, p)`, binary elements
//! are bitmasks of degree `< m` reduced modulo the supplied irreducible
//! polynomial — exactly the polynomial given, never a substitute.

use std::fmt;

use rand::Rng;

/// Description of a finite field: an odd prime `F_p` or a binary extension
/// `F_{2^m}` with an explicit irreducible modulus.
///
/// Validation happens in the constructors: a composite modulus or a reducible
/// polynomial is rejected outright rather than producing a broken "field".
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    /// `poly` is a bitmask with bit `i` = coefficient of `x^i`; bit `m` is set.
    Binary {
        m: u32,
        poly: u64,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldError {
    NotPrime(u64),
    NotIrreducible(u64),
    InvalidDegree(u32),
    NonInvertible,
    BadEncoding(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            FieldError::NotIrreducible(poly) => {
                write!(f, "polynomial {poly:#x} is not irreducible over F_2")
            }
            FieldError::InvalidDegree(m) => write!(f, "extension degree {m} out of range (1..=63)"),
            FieldError::NonInvertible => write!(f, "zero has no multiplicative inverse"),
            FieldError::BadEncoding(s) => write!(f, "bad element encoding: {s}"),
        }
    }
}

impl std::error::Error for FieldError {}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn binary(m: u32, poly: u64) -> Result<Self, FieldError> {
        if m == 0 || m > 63 {
            return Err(FieldError::InvalidDegree(m));
        }
        // Degree must be exactly m and the polynomial irreducible.
        if poly >> m != 1 || !is_irreducible(poly, m) {
            return Err(FieldError::NotIrreducible(poly));
        }
        Ok(FieldSpec::Binary { m, poly })
    }

    /// Field order `q` as an exact integer.
    pub fn order(&self) -> u128 {
        match self {
            FieldSpec::Prime { p } => *p as u128,
            FieldSpec::Binary { m, .. } => 1u128 << m,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, FieldSpec::Binary { .. })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            spec: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            spec: *self,
        }
    }

    /// Reduce an arbitrary integer into the field's representative space:
    /// `n mod p`, or the low `m` bits for a binary field (where the integer
    /// is read as a coefficient bitmask).
    pub fn from_int(&self, n: u64) -> FieldElement {
        let value = match self {
            FieldSpec::Prime { p } => n % p,
            FieldSpec::Binary { m, .. } => n & mask(*m),
        };
        FieldElement { value, spec: *self }
    }

    /// The canonical ring homomorphism `Z -> F`: the sum of `n` ones. In a
    /// binary field this is `n mod 2`, not the bitmask of
    /// [`FieldSpec::from_int`]. Use this for integer constants in formulas.
    pub fn embed_int(&self, n: u64) -> FieldElement {
        match self {
            FieldSpec::Prime { .. } => self.from_int(n),
            FieldSpec::Binary { .. } => self.from_int(n & 1),
        }
    }

    /// Uniform random element.
    pub fn random(&self, rng: &mut impl Rng) -> FieldElement {
        let value = match self {
            FieldSpec::Prime { p } => rng.gen_range(0..*p),
            FieldSpec::Binary { m, .. } => rng.gen::<u64>() & mask(*m),
        };
        FieldElement { value, spec: *self }
    }

    /// Uniform random non-zero element.
    pub fn random_nonzero(&self, rng: &mut impl Rng) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Parse the instance-file encoding: decimal for prime fields, `0x`-hex
    /// for binary fields. Strict: the representative must already be
    /// canonical.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        match self {
            FieldSpec::Prime { p } => {
                let v: u64 = s
                    .parse()
                    .map_err(|_| FieldError::BadEncoding(format!("expected decimal, got {s:?}")))?;
                if v >= *p {
                    return Err(FieldError::BadEncoding(format!(
                        "{v} is not reduced mod {p}"
                    )));
                }
                Ok(FieldElement {
                    value: v,
                    spec: *self,
                })
            }
            FieldSpec::Binary { m, .. } => {
                let hex = s.strip_prefix("0x").ok_or_else(|| {
                    FieldError::BadEncoding(format!("expected 0x-prefixed hex, got {s:?}"))
                })?;
                let v = u64::from_str_radix(hex, 16)
                    .map_err(|_| FieldError::BadEncoding(format!("bad hex digits in {s:?}")))?;
                if v >> m != 0 {
                    return Err(FieldError::BadEncoding(format!(
                        "{s} has degree >= {m} and is not reduced"
                    )));
                }
                Ok(FieldElement {
                    value: v,
                    spec: *self,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Binary { m, poly } => write!(f, "F_2^{m} (mod {poly:#x})"),
        }
    }
}

/// A canonical element of a specific [`FieldSpec`].
///
/// Elements of different fields never mix: the arithmetic operators panic on
/// a spec mismatch, which is always a programming error, never data.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    value: u64,
    spec: FieldSpec,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// Multiplicative inverse. Zero input is the one data-dependent failure.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::NonInvertible);
        }
        let e = match self.spec {
            FieldSpec::Prime { p } => p - 2,
            FieldSpec::Binary { m, .. } => (1u64 << m) - 2,
        };
        Ok(self.pow(e))
    }

    /// Exponentiation by squaring; `a^0 = 1` including for `a = 0`.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElement {
        *self * *self
    }

    /// Instance-file encoding of the element.
    pub fn encode(&self) -> String {
        match self.spec {
            FieldSpec::Prime { .. } => format!("{}", self.value),
            FieldSpec::Binary { .. } => format!("{:#x}", self.value),
        }
    }

    /// Square root, if one exists. Always exists (and is unique) in binary
    /// fields; Tonelli–Shanks in prime fields.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match self.spec {
            FieldSpec::Binary { m, .. } => {
                // Squaring is a bijection in characteristic 2.
                Some(self.pow(1u64 << (m - 1)))
            }
            FieldSpec::Prime { p } => {
                if self.is_zero() {
                    return Some(*self);
                }
                if self.pow((p - 1) / 2).value != 1 {
                    return None;
                }
                Some(tonelli_shanks(*self, p))
            }
        }
    }

    /// Absolute trace `Tr(a) = a + a^2 + a^4 + ... + a^(2^(m-1))` of a binary
    /// field element; the result is 0 or 1.
    pub fn trace(&self) -> u64 {
        let m = match self.spec {
            FieldSpec::Binary { m, .. } => m,
            FieldSpec::Prime { .. } => panic!("trace is defined on binary fields only"),
        };
        let mut acc = self.spec.zero();
        let mut t = *self;
        for _ in 0..m {
            acc = acc + t;
            t = t.square();
        }
        acc.value
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

fn check_same(a: &FieldElement, b: &FieldElement, op: &str) {
    if a.spec != b.spec {
        panic!("field mismatch in {op}: {} vs {}", a.spec, b.spec);
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        check_same(&self, &rhs, "add");
        let value = match self.spec {
            FieldSpec::Prime { p } => ((self.value as u128 + rhs.value as u128) % p as u128) as u64,
            FieldSpec::Binary { .. } => self.value ^ rhs.value,
        };
        FieldElement {
            value,
            spec: self.spec,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        check_same(&self, &rhs, "sub");
        let value = match self.spec {
            FieldSpec::Prime { p } => {
                ((self.value as u128 + p as u128 - rhs.value as u128) % p as u128) as u64
            }
            // Subtraction and addition coincide in characteristic 2.
            FieldSpec::Binary { .. } => self.value ^ rhs.value,
        };
        FieldElement {
            value,
            spec: self.spec,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let value = match self.spec {
            FieldSpec::Prime { p } => {
                if self.value == 0 {
                    0
                } else {
                    p - self.value
                }
            }
            FieldSpec::Binary { .. } => self.value,
        };
        FieldElement {
            value,
            spec: self.spec,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        check_same(&self, &rhs, "mul");
        let value = match self.spec {
            FieldSpec::Prime { p } => ((self.value as u128 * rhs.value as u128) % p as u128) as u64,
            FieldSpec::Binary { m, poly } => reduce_poly(clmul(self.value, rhs.value), poly, m),
        };
        FieldElement {
            value,
            spec: self.spec,
        }
    }
}

fn mask(m: u32) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Carry-less 64x64 -> 128 bit multiplication (XOR accumulation).
fn clmul(a: u64, mut b: u64) -> u128 {
    let mut acc = 0u128;
    let mut shift = 0;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        acc ^= (a as u128) << shift;
        b >>= tz;
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Reduce a polynomial of degree <= 126 modulo `poly` (degree `m`).
fn reduce_poly(mut x: u128, poly: u64, m: u32) -> u64 {
    let p = poly as u128;
    while x >> m != 0 {
        let bit = 127 - x.leading_zeros();
        x ^= p << (bit - m);
    }
    x as u64
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// GCD of binary polynomials.
fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let mut r = a;
        let db = poly_degree(b);
        while r != 0 && poly_degree(r) >= db {
            r ^= b << (poly_degree(r) - db);
        }
        a = b;
        b = r;
    }
    a
}

fn poly_mulmod(a: u64, b: u64, f: u64, m: u32) -> u64 {
    reduce_poly(clmul(a, b), f, m)
}

/// Rabin's irreducibility test for a degree-`m` polynomial over F_2:
/// `x^(2^m) = x (mod f)` and `gcd(x^(2^(m/d)) - x, f) = 1` for every prime
/// divisor `d` of `m`.
fn is_irreducible(f: u64, m: u32) -> bool {
    if m == 1 {
        return f == 0b10 || f == 0b11;
    }
    if f & 1 == 0 {
        return false; // divisible by x
    }
    let frob = |k: u32| -> u64 {
        // x^(2^k) mod f by k squarings of x
        let mut t = 0b10u64;
        for _ in 0..k {
            t = poly_mulmod(t, t, f, m);
        }
        t
    };
    if frob(m) != 0b10 {
        return false;
    }
    let mut n = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let h = frob(m / d) ^ 0b10;
            if poly_gcd(h, f) != 1 {
                return false;
            }
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        let h = frob(m / n) ^ 0b10;
        if poly_gcd(h, f) != 1 {
            return false;
        }
    }
    true
}

fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, a, n);
        }
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This base set is proven sufficient for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn tonelli_shanks(a: FieldElement, p: u64) -> FieldElement {
    let spec = a.spec();
    if p % 4 == 3 {
        return a.pow((p + 1) / 4);
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // Find a quadratic non-residue z.
    let mut zv = 2u64;
    while powmod_u64(zv, (p - 1) / 2, p) != p - 1 {
        zv += 1;
    }
    let mut m = s;
    let mut c = spec.from_int(zv).pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t;
        while !t2.is_one() {
            t2 = t2.square();
            i += 1;
        }
        let mut b = c;
        for _ in 0..m - i - 1 {
            b = b.square();
        }
        m = i;
        c = b.square();
        t = t * c;
        r = r * b;
    }
    r
}

/// Solve `z^2 + z = u` in a binary field, if a solution exists (iff
/// `Tr(u) = 0`); the other solution is `z + 1`.
///
/// The map `z -> z^2 + z` is F_2-linear, so this is an m x m linear solve
/// over F_2 in the polynomial basis. Works for every extension degree, odd
/// or even.
pub fn artin_schreier_root(u: FieldElement) -> Option<FieldElement> {
    let (m, spec) = match u.spec() {
        FieldSpec::Binary { m, .. } => (m as usize, u.spec()),
        FieldSpec::Prime { .. } => panic!("artin_schreier_root is defined on binary fields only"),
    };
    // rows[i] = bitmask over unknowns j of the i-th coordinate of L(e_j).
    let mut rows = vec![0u64; m];
    for j in 0..m {
        let ej = spec.from_int(1u64 << j);
        let lj = ej.square() + ej;
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= (lj.value() >> i & 1) << j;
        }
    }
    let mut rhs: Vec<u64> = (0..m).map(|i| u.value() >> i & 1).collect();
    let mut pivot_col: Vec<Option<usize>> = vec![None; m];
    let mut next = 0usize;
    for col in 0..m {
        if let Some(r) = (next..m).find(|&r| rows[r] >> col & 1 == 1) {
            rows.swap(next, r);
            rhs.swap(next, r);
            for i in 0..m {
                if i != next && rows[i] >> col & 1 == 1 {
                    rows[i] ^= rows[next];
                    rhs[i] ^= rhs[next];
                }
            }
            pivot_col[next] = Some(col);
            next += 1;
        }
    }
    // Inconsistent system: no solution (trace is 1).
    if rhs[next..m].contains(&1) {
        return None;
    }
    let mut z = 0u64;
    for i in 0..next {
        if rhs[i] == 1 {
            z |= 1 << pivot_col[i].unwrap();
        }
    }
    Some(spec.from_int(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn f73() -> FieldSpec {
        FieldSpec::prime(73).unwrap()
    }

    fn f2_17() -> FieldSpec {
        // x^17 + x^3 + 1
        FieldSpec::binary(17, (1 << 17) | (1 << 3) | 1).unwrap()
    }

    #[test]
    fn construction_rejects_bad_specs() {
        assert!(FieldSpec::prime(15).is_err());
        assert!(FieldSpec::prime(2).is_err());
        assert!(FieldSpec::prime(0).is_err());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 is reducible
        assert!(FieldSpec::binary(4, 0b10101).is_err());
        // wrong degree
        assert!(FieldSpec::binary(4, 0b1011).is_err());
        assert!(FieldSpec::binary(0, 1).is_err());
        assert!(FieldSpec::binary(64, u64::MAX).is_err());
        // x^8 + x^4 + x^3 + x + 1 (the AES polynomial) is irreducible
        assert!(FieldSpec::binary(8, 0x11b).is_ok());
    }

    #[test]
    fn additive_identity() {
        let f = f73();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            assert_eq!(a + f.zero(), a);
        }
    }

    #[test]
    fn paper_determinant_entries_cancel_mod_73() {
        // 70 * 13 - 18 * 10 = 730 = 10 * 73
        let f = f73();
        let d = f.from_int(70) * f.from_int(13) - f.from_int(18) * f.from_int(10);
        assert!(d.is_zero());
    }

    #[test]
    fn frobenius_is_additive_in_char_2() {
        let f = f2_17();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!((a + b).square(), a.square() + b.square());
        }
    }

    #[test]
    fn inverse_of_13_mod_73_is_45() {
        // Oracle: exhaustive scan of F_73 for x with 13 * x = 1.
        let f = f73();
        let thirteen = f.from_int(13);
        let by_scan = (1..73)
            .map(|x| f.from_int(x))
            .find(|x| (thirteen * *x).is_one())
            .unwrap();
        assert_eq!(by_scan.value(), 45);
        assert_eq!(thirteen.inv().unwrap(), by_scan);
    }

    #[test]
    fn inverse_basics() {
        assert_eq!(f73().one().inv().unwrap(), f73().one());
        assert_eq!(f2_17().one().inv().unwrap(), f2_17().one());
        assert_eq!(f73().zero().inv(), Err(FieldError::NonInvertible));

        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = f2_17().random_nonzero(&mut rng);
            assert!((a * a.inv().unwrap()).is_one());
            let b = f73().random_nonzero(&mut rng);
            assert!((b * b.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn pow_identities() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for f in [f73(), f2_17()] {
            for _ in 0..50 {
                let a = f.random(&mut rng);
                assert!(a.pow(0).is_one());
                // a^q = a in F_q
                assert_eq!(a.pow(f.order() as u64), a);
            }
        }
    }

    #[test]
    fn from_int_reduces_by_long_division() {
        // 810 = 11 * 73 + 7
        assert_eq!(f73().from_int(803 + 7).value(), 7);
    }

    #[test]
    fn field_axioms_sampled() {
        let fields = [
            f73(),
            FieldSpec::prime(1009).unwrap(),
            f2_17(),
            FieldSpec::binary(8, 0x11b).unwrap(),
        ];
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for f in fields {
            for _ in 0..10_000 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(a * (b + c), a * b + a * c);
                assert_eq!(a + (-a), f.zero());
                assert_eq!(a - b, a + (-b));
                if !a.is_zero() {
                    assert!((a * a.inv().unwrap()).is_one());
                }
                // canonical-form closure
                assert!((a * b).value() < f.order() as u64);
                assert!((a + b).value() < f.order() as u64);
            }
        }
    }

    #[test]
    fn binary_frobenius_order_divides_m() {
        let f = f2_17();
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            let mut t = a;
            for _ in 0..17 {
                t = t.square();
            }
            assert_eq!(t, a);
        }
    }

    #[test]
    fn binary_sub_is_add_and_neg_is_identity() {
        let f = f2_17();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(a - b, a + b);
            assert_eq!(-a, a);
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for f in [f73(), FieldSpec::prime(1009).unwrap(), f2_17()] {
            for _ in 0..200 {
                let a = f.random(&mut rng);
                let sq = a.square();
                let r = sq.sqrt().expect("squares have roots");
                assert_eq!(r.square(), sq);
            }
        }
        // non-residues have none: 5 is not a square mod 73
        assert!(f73().from_int(5).sqrt().is_none());
    }

    #[test]
    fn artin_schreier_solves_iff_trace_zero() {
        let f = FieldSpec::binary(8, 0x11b).unwrap(); // even degree
        let g = f2_17(); // odd degree
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for spec in [f, g] {
            for _ in 0..300 {
                let u = spec.random(&mut rng);
                match artin_schreier_root(u) {
                    Some(z) => {
                        assert_eq!(z.square() + z, u);
                        assert_eq!(u.trace(), 0);
                    }
                    None => assert_eq!(u.trace(), 1),
                }
            }
        }
    }

    #[test]
    fn element_encoding_roundtrip() {
        let f = f73();
        let e = f.from_int(45);
        assert_eq!(e.encode(), "45");
        assert_eq!(f.parse_element("45").unwrap(), e);
        assert!(f.parse_element("73").is_err());
        assert!(f.parse_element("0x2d").is_err());

        let b = FieldSpec::binary(8, 0x11b).unwrap();
        let e = b.from_int(0xa5);
        assert_eq!(e.encode(), "0xa5");
        assert_eq!(b.parse_element("0xa5").unwrap(), e);
        assert!(b.parse_element("165").is_err());
        assert!(b.parse_element("0x100").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_is_a_hard_error() {
        let a = f73().one();
        let b = FieldSpec::prime(1009).unwrap().one();
        let _ = a + b;
    }

    #[test]
    fn is_prime_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(73));
        assert!(is_prime(65537));
        assert!(is_prime(2113));
        assert!(is_prime(262657));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(1));
        assert!(!is_prime(2049));
        assert!(!is_prime(4097));
        assert!(!is_prime(6700417 * 3));
    }
}
