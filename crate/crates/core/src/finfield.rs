//! Arithmetic in prime fields `F_p` and their extensions `F_{p^t}`.
//!
//! Elements are plain coefficient vectors in the adjoined root; the field
//! orders used by the matrix constructions are small enough that no
//! log/antilog tables are needed.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{t} exceeds 2^63")]
    OrderOverflow { p: u64, t: u32 },
    #[error("element has {got} coefficients, field degree is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coefficient {value} is not reduced modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("element index {index} is outside a field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
}

/// Deterministic primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // These witnesses are sufficient for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element of `F_{p^t}`: `t` residues mod `p`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// The field `F_p[x] / (f(x))` for the lexicographically smallest monic
/// irreducible `f` of degree `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    t: usize,
    /// Coefficients `c_0..c_{t-1}` of the monic modulus; the leading 1 is
    /// implicit. Empty for prime fields.
    modulus: Vec<u64>,
    order: u64,
}

impl FiniteField {
    pub fn new(p: u64, t: u32) -> Result<Self, FieldError> {
        if t == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        let order = p
            .checked_pow(t)
            .filter(|&o| o <= 1 << 63)
            .ok_or(FieldError::OrderOverflow { p, t })?;
        let t = t as usize;
        let modulus = if t == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, t)
        };
        Ok(FiniteField {
            p,
            t,
            modulus,
            order,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Low coefficients of the monic modulus (leading 1 omitted).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.t],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// Embeds a base-field residue.
    pub fn constant(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.t];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// The adjoined root `x`; `None` for prime fields.
    pub fn generator_root(&self) -> Option<FieldElement> {
        (self.t > 1).then(|| {
            let mut coeffs = vec![0; self.t];
            coeffs[1] = 1;
            FieldElement { coeffs }
        })
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        let e = FieldElement { coeffs };
        self.check(&e)?;
        Ok(e)
    }

    fn check(&self, e: &FieldElement) -> Result<(), FieldError> {
        if e.coeffs.len() != self.t {
            return Err(FieldError::DimensionMismatch {
                expected: self.t,
                got: e.coeffs.len(),
            });
        }
        if let Some(&value) = e.coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientOutOfRange { value, p: self.p });
        }
        Ok(())
    }

    /// Position of `e` in coefficient-lexicographic order, `c_0` most
    /// significant.
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= self.order {
            return Err(FieldError::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        let mut coeffs = vec![0; self.t];
        let mut rest = index;
        for c in coeffs.iter_mut().rev() {
            *c = rest % self.p;
            rest /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// All elements in coefficient-lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.from_index(i).expect("index below order"))
    }

    pub fn arith(
        &self,
        op: ArithOp,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<FieldElement, FieldError> {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| ((x as u128 + y as u128) % p as u128) as u64)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let p = self.p;
        let coeffs = a.coeffs.iter().map(|&x| (p - x) % p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (p, t) = (self.p, self.t);
        let mut prod = vec![0u64; 2 * t - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        // x^t = -(c_0 + c_1 x + ... + c_{t-1} x^{t-1})
        for d in (t..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = mul_mod(c, m, p);
                prod[d - t + i] = (prod[d - t + i] + p - sub) % p;
            }
        }
        prod.truncate(t);
        FieldElement { coeffs: prod }
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Exponent `(p^t - 1) / (p - 1)` of the norm map to the prime field.
    pub fn norm_exponent(&self) -> u64 {
        (self.order - 1) / (self.p - 1)
    }

    /// Field norm to the prime field, returned as an element of this field
    /// whose only nonzero coefficient is the constant one.
    pub fn norm(&self, z: &FieldElement) -> Result<FieldElement, FieldError> {
        let n = self.pow(z, self.norm_exponent())?;
        assert!(
            n.coeffs[1..].iter().all(|&c| c == 0),
            "norm of {z:?} left the prime field: {n:?}"
        );
        Ok(n)
    }

    /// Norm as a residue in `[0, p)`.
    pub fn norm_value(&self, z: &FieldElement) -> Result<u64, FieldError> {
        Ok(self.norm(z)?.coeffs[0])
    }
}

/// Smallest monic irreducible polynomial of degree `t >= 2`, comparing the
/// low coefficients `(c_0, c_1, ..)` lexicographically.
fn smallest_irreducible(p: u64, t: usize) -> Vec<u64> {
    let count = p.pow(t as u32);
    (0..count)
        .map(|v| digits_msb_first(v, p, t))
        .find(|low| {
            let mut poly = low.clone();
            poly.push(1);
            is_irreducible(&poly, p)
        })
        .expect("an irreducible polynomial exists for every degree")
}

/// Base-`p` digits of `v`, most significant first, padded to `len`.
fn digits_msb_first(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = v % p;
        v /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
/// `poly` is monic, coefficients lowest degree first.
pub(crate) fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for v in 0..p.pow(d as u32) {
            let mut divisor = digits_msb_first(v, p, d);
            divisor.push(1);
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], monic_div: &[u64], p: u64) -> bool {
    let dd = monic_div.len() - 1;
    let mut rem = num.to_vec();
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic_div.iter().enumerate() {
            let k = top - dd + i;
            rem[k] = (rem[k] + p - mul_mod(c, m, p)) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}
