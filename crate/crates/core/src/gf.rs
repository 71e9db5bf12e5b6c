//! Exact arithmetic in GF(p^n) in a polynomial basis.
//!
//! An element is an integer rep in `[0, q)`: its base-p digits are the
//! coefficients of the residue polynomial modulo a monic irreducible of
//! degree n, lowest degree first. So over GF(4) with modulus X²+X+1 the
//! rep 2 is α (the class of X) and rep 3 is α+1.
//!
//! A [`FieldSpec`] owns the modulus and, for q ≤ 1024, dense
//! multiplication/inverse tables. Elements are plain integers and carry no
//! back-reference to their field; every operation takes the spec explicitly,
//! so it is the caller's job not to mix fields.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest field order for which dense mul/inv tables are precomputed.
/// Larger fields (up to [`ORDER_LIMIT`]) fall back to on-the-fly reduction.
pub const TABLE_LIMIT: u32 = 1024;

/// Hard cap on the field order; enough for every plane this crate targets.
pub const ORDER_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is not irreducible over GF({p})")]
    NotIrreducible { p: u64 },
    #[error("modulus polynomial has degree {got}, expected {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{e} does not divide the extension degree {n}")]
    NotADivisor { e: u32, n: u32 },
}

/// An element of some GF(p^n), stored as its integer rep in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Integer rep (base-p digit encoding of the residue polynomial).
    pub fn rep(self) -> u32 {
        self.0
    }

    /// Wraps a raw rep. The caller must guarantee `rep < q` for the field
    /// this element will be used with; [`FieldSpec::elem`] checks it.
    pub fn from_rep(rep: u32) -> FieldElem {
        FieldElem(rep)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// A concrete GF(p^n): characteristic, degree, modulus, and lookup tables.
///
/// Cloning is cheap (tables are shared behind an `Arc`). Two specs describe
/// the same field iff `(p, n, irr)` agree.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    irr: Vec<u32>,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("irr", &self.irr)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.irr == other.irr
    }
}
impl Eq for FieldSpec {}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^n). With `irr = None` the lexicographically smallest monic
/// irreducible of degree n over GF(p) is chosen (ordered by the base-p value
/// of its non-leading coefficients), which makes the construction
/// deterministic. Coefficients are given lowest degree first and must include
/// the leading 1.
pub fn make_field(p: u64, n: u32, irr: Option<&[u64]>) -> Result<FieldSpec, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    assert!(n >= 1, "extension degree must be at least 1");
    let mut q: u64 = 1;
    for _ in 0..n {
        q *= p;
        assert!(q <= ORDER_LIMIT, "field order exceeds the supported limit");
    }
    let p32 = p as u32;

    let irr: Vec<u32> = match irr {
        Some(coeffs) => {
            if coeffs.len() != n as usize + 1 {
                return Err(GfError::DegreeMismatch {
                    want: n as usize,
                    got: coeffs.len().saturating_sub(1),
                });
            }
            if coeffs.iter().any(|&c| c >= p) {
                return Err(GfError::NotIrreducible { p });
            }
            if coeffs[n as usize] != 1 {
                return Err(GfError::NotIrreducible { p });
            }
            let v: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
            if !poly_irreducible(&v, p32) {
                return Err(GfError::NotIrreducible { p });
            }
            v
        }
        None => smallest_irreducible(p32, n),
    };

    let mut spec = FieldSpec {
        p: p32,
        n,
        q: q as u32,
        irr,
        tables: None,
    };
    if spec.q <= TABLE_LIMIT {
        spec.tables = Some(Arc::new(spec.build_tables()));
    }
    Ok(spec)
}

/// Long division of dense GF(p) coefficient vectors; returns the remainder.
fn poly_rem_modp(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let lead_inv = modp_inv(den[dd], p);
    let mut r: Vec<u32> = num.to_vec();
    while r.len() > dd {
        let k = r.len() - 1;
        let c = r[k];
        if c != 0 {
            let f = (c as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &d) in den.iter().enumerate() {
                let idx = k - dd + i;
                let sub = (f as u64 * d as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn modp_inv(a: u32, p: u32) -> u32 {
    // p is small and prime: Fermat.
    let mut acc: u64 = 1;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree 1..=deg/2. Fine at the degrees this crate uses.
fn poly_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by X
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        let mut div = vec![0u32; d + 1];
        div[d] = 1;
        for v in 0..count {
            let mut x = v;
            for c in div.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            if poly_rem_modp(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    let mut cand = vec![0u32; n as usize + 1];
    cand[n as usize] = 1;
    for v in 0..count {
        let mut x = v;
        for c in cand.iter_mut().take(n as usize) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        if poly_irreducible(&cand, p) {
            return cand.clone();
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Modulus coefficients, lowest degree first, length n+1, monic.
    pub fn irr(&self) -> &[u32] {
        &self.irr
    }

    /// Checked element constructor.
    pub fn elem(&self, rep: u64) -> FieldElem {
        assert!(rep < self.q as u64, "rep {rep} out of range for q={}", self.q);
        FieldElem(rep as u32)
    }

    /// All field elements in rep order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut mul = vec![0u32; q * q];
        for a in 0..q as u32 {
            for b in a..q as u32 {
                let m = self.mul_raw(a, b);
                mul[a as usize * q + b as usize] = m;
                mul[b as usize * q + a as usize] = m;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q as u32 {
            inv[a as usize] = self.pow_raw(a, self.q as u64 - 2, &mul);
        }
        Tables { mul, inv }
    }

    fn digits(&self, mut rep: u32) -> [u32; 24] {
        let mut d = [0u32; 24];
        for slot in d.iter_mut().take(self.n as usize) {
            *slot = rep % self.p;
            rep /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        let mut rep = 0u32;
        for i in (0..self.n as usize).rev() {
            rep = rep * self.p + d[i];
        }
        rep
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut out = [0u32; 24];
        for i in 0..self.n as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        FieldElem(self.pack_digits(&out))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a.0);
        let mut out = [0u32; 24];
        for i in 0..self.n as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        FieldElem(self.pack_digits(&out))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Schoolbook product of the residue polynomials followed by reduction
    /// modulo the irreducible; used to seed the tables and for large q.
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u32; 47];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce: X^n ≡ -(irr[0] + irr[1] X + ... + irr[n-1] X^(n-1))
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let sub = c * self.irr[i] % self.p;
                prod[k - n + i] = (prod[k - n + i] + self.p - sub) % self.p;
            }
        }
        self.pack_digits(&prod)
    }

    fn pow_raw(&self, a: u32, mut e: u64, mul: &[u32]) -> u32 {
        let q = self.q as usize;
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul[acc as usize * q + base as usize];
            }
            base = mul[base as usize * q + base as usize];
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.mul[a.0 as usize * self.q as usize + b.0 as usize]),
            None => FieldElem(self.mul_raw(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        match &self.tables {
            Some(t) => Ok(FieldElem(t.inv[a.0 as usize])),
            None => Ok(self.pow(a, self.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with a^0 = 1 (also for a = 0).
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^(p^e); e is reduced mod n since the Frobenius has order n.
    pub fn frob_pow(&self, a: FieldElem, e: u32) -> FieldElem {
        let e = e % self.n;
        self.pow(a, (self.p as u64).pow(e))
    }

    /// Trace onto the subfield GF(p^e): sum of a^(p^(e·i)) for i = 0..n/e.
    pub fn trace_to(&self, e: u32, a: FieldElem) -> Result<FieldElem, GfError> {
        self.check_divisor(e)?;
        let m = self.n / e;
        let mut acc = a;
        let mut t = a;
        for _ in 1..m {
            t = self.frob_pow(t, e);
            acc = self.add(acc, t);
        }
        Ok(acc)
    }

    /// Norm onto the subfield GF(p^e): a^((q-1)/(p^e-1)).
    pub fn norm_to(&self, e: u32, a: FieldElem) -> Result<FieldElem, GfError> {
        self.check_divisor(e)?;
        let sub = (self.p as u64).pow(e);
        Ok(self.pow(a, (self.q as u64 - 1) / (sub - 1)))
    }

    /// Elements of the subfield GF(p^e), i.e. fixed points of x ↦ x^(p^e),
    /// in ascending rep order.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<FieldElem>, GfError> {
        self.check_divisor(e)?;
        Ok(self
            .elements()
            .filter(|&x| self.frob_pow(x, e) == x)
            .collect())
    }

    fn check_divisor(&self, e: u32) -> Result<(), GfError> {
        if e == 0 || !self.n.is_multiple_of(e) {
            return Err(GfError::NotADivisor { e, n: self.n });
        }
        Ok(())
    }

    /// Embeds a GF(p) scalar given as an integer 0..p.
    pub fn scalar(&self, c: u32) -> FieldElem {
        FieldElem(c % self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_lex_smallest() {
        assert_eq!(make_field(2, 2, None).unwrap().irr(), &[1, 1, 1]);
        assert_eq!(make_field(2, 3, None).unwrap().irr(), &[1, 1, 0, 1]);
        assert_eq!(make_field(3, 2, None).unwrap().irr(), &[1, 0, 1]);
        assert_eq!(make_field(2, 4, None).unwrap().irr(), &[1, 1, 0, 0, 1]);
        assert_eq!(make_field(5, 2, None).unwrap().irr(), &[2, 0, 1]);
        assert_eq!(make_field(3, 3, None).unwrap().irr(), &[1, 2, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(6, 1, None).unwrap_err(), GfError::NotPrime(6));
        assert_eq!(make_field(1, 1, None).unwrap_err(), GfError::NotPrime(1));
        // X^2 + 1 = (X+1)^2 over GF(2)
        assert_eq!(
            make_field(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            GfError::NotIrreducible { p: 2 }
        );
        assert!(matches!(
            make_field(2, 3, Some(&[1, 1, 1])).unwrap_err(),
            GfError::DegreeMismatch { want: 3, got: 2 }
        ));
        // valid user-supplied modulus
        let f = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn gf4_multiplication_table_landmark() {
        // α·α = α+1 under X²+X+1: reps 2·2 = 3
        let f = make_field(2, 2, None).unwrap();
        assert_eq!(f.mul(f.elem(2), f.elem(2)), f.elem(3));
    }

    #[test]
    fn gf8_frobenius_square() {
        // α² in GF(8) is the class of X², rep 4
        let f = make_field(2, 3, None).unwrap();
        assert_eq!(f.mul(f.elem(2), f.elem(2)), f.elem(4));
        assert_eq!(f.frob_pow(f.elem(2), 1), f.elem(4));
    }

    #[test]
    fn gf9_cube_of_alpha() {
        // α is the class of X: digits (0,1), rep 3 when p = 3.
        // α² = -1 under X²+1, so α³ = -α = 2α: digits (0,2), rep 6.
        let f = make_field(3, 2, None).unwrap();
        assert_eq!(f.frob_pow(f.elem(3), 1), f.elem(6));
        assert_eq!(f.mul(f.elem(3), f.elem(3)), f.elem(2)); // α² = 2 = -1
    }

    #[test]
    fn gf4_trace_and_norm_to_prime_field() {
        let f = make_field(2, 2, None).unwrap();
        let alpha = f.elem(2);
        assert_eq!(f.trace_to(1, alpha).unwrap(), FieldElem::ONE);
        assert_eq!(f.norm_to(1, alpha).unwrap(), FieldElem::ONE);
    }

    #[test]
    fn subfield_of_gf9_is_prime_field() {
        let f = make_field(3, 2, None).unwrap();
        let sub = f.subfield_elements(1).unwrap();
        assert_eq!(sub, vec![f.elem(0), f.elem(1), f.elem(2)]);
        assert_eq!(f.subfield_elements(3).unwrap_err(), GfError::NotADivisor { e: 3, n: 2 });
    }

    fn field_axioms(f: &FieldSpec) {
        let els: Vec<FieldElem> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, FieldElem::ZERO), a);
            assert_eq!(f.mul(a, FieldElem::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
            if !a.is_zero() {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), FieldElem::ONE);
            }
            // Frobenius has order n
            assert_eq!(f.frob_pow(a, f.n()), a);
        }
        for &a in &els {
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                // Frobenius is additive
                assert_eq!(
                    f.frob_pow(f.add(a, b), 1),
                    f.add(f.frob_pow(a, 1), f.frob_pow(b, 1))
                );
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_all_small_fields() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            field_axioms(&make_field(p, n, None).unwrap());
        }
    }

    #[test]
    fn axioms_hold_for_medium_fields() {
        for (p, n) in [(2, 4), (5, 2), (3, 3)] {
            field_axioms(&make_field(p, n, None).unwrap());
        }
    }

    #[test]
    fn trace_is_additive_and_onto_norm_is_multiplicative() {
        for (p, n, e) in [(2u64, 2u32, 1u32), (2, 4, 1), (2, 4, 2), (3, 2, 1), (5, 2, 1), (3, 3, 1)] {
            let f = make_field(p, n, None).unwrap();
            let sub: Vec<FieldElem> = f.subfield_elements(e).unwrap();
            let els: Vec<FieldElem> = f.elements().collect();
            for &a in &els {
                let t = f.trace_to(e, a).unwrap();
                assert!(sub.contains(&t), "trace lands in the subfield");
                let nm = f.norm_to(e, a).unwrap();
                assert!(sub.contains(&nm), "norm lands in the subfield");
            }
            for &a in &els {
                for &b in &els {
                    assert_eq!(
                        f.trace_to(e, f.add(a, b)).unwrap(),
                        f.add(f.trace_to(e, a).unwrap(), f.trace_to(e, b).unwrap())
                    );
                    assert_eq!(
                        f.norm_to(e, f.mul(a, b)).unwrap(),
                        f.mul(f.norm_to(e, a).unwrap(), f.norm_to(e, b).unwrap())
                    );
                }
            }
            // trace is onto: each subfield value hit q/p^e times
            for &s in &sub {
                let hits = els.iter().filter(|&&a| f.trace_to(e, a).unwrap() == s).count();
                assert_eq!(hits as u64, (f.q() as u64) / (p.pow(e)));
            }
        }
    }

    #[test]
    fn large_field_without_tables_matches_table_arithmetic() {
        // GF(2^11) = 2048 > TABLE_LIMIT exercises the on-the-fly path; compare
        // its subfield GF(2^1..) behaviour against direct expectations instead
        // of tables: check the defining axioms on a sample.
        let f = make_field(2, 11, None).unwrap();
        assert!(f.q() > TABLE_LIMIT);
        let a = f.elem(1234);
        let b = f.elem(1999);
        let c = f.elem(777);
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), FieldElem::ONE);
        assert_eq!(f.frob_pow(a, 11), a);
    }
}
