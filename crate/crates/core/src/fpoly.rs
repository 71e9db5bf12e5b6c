//! Univariate polynomials over GF(q) and the classification of fully
//! reducible lacunary polynomials.
//!
//! Coefficients are stored densely, lowest degree first, with trailing zeros
//! trimmed; the zero polynomial has an empty coefficient vector. Polynomials
//! carry no field reference — operations take the [`FieldSpec`] explicitly,
//! like everything else in this crate.
//!
//! Root extraction works by trial evaluation over the (small, finite) field
//! followed by repeated exact division, which is the right tool at desk
//! scale and keeps the arithmetic exact and dependency-free.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf::{FieldElem, FieldSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not fully reducible over the field")]
    NotFullyReducible,
    #[error("degree {deg} is out of range; this decomposition needs degree < {limit}")]
    DegreeTooLarge { deg: usize, limit: usize },
    #[error("the zero polynomial has no decomposition here")]
    ZeroPolynomial,
    #[error("polynomial has the wrong shape: {0}")]
    WrongShape(String),
}

/// Dense univariate polynomial over some GF(q); coefficients low-to-high.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

/// The canonical text form: comma-separated coefficient reps, low to high.
/// `X^5 + 4X` over GF(5) prints as `0,4,0,0,0,1`; the zero polynomial as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.rep().to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElem::ONE)
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// X^k.
    pub fn x_pow(k: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = FieldElem::ONE;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last() == Some(&FieldElem::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from integer reps (checked against q).
    pub fn from_reps(spec: &FieldSpec, reps: &[u64]) -> Poly {
        Poly::from_coeffs(reps.iter().map(|&r| spec.elem(r)).collect())
    }

    /// Monic product of (X - r) over the given root multiset.
    pub fn from_roots(spec: &FieldSpec, roots: &[FieldElem]) -> Poly {
        let mut acc = Poly::one();
        for &r in roots {
            acc = acc.mul_linear_factor(spec, r);
        }
        acc
    }

    /// self · (X - r), used to build products of linear factors quickly.
    pub fn mul_linear_factor(&self, spec: &FieldSpec, r: FieldElem) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let neg_r = spec.neg(r);
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = spec.add(out[i + 1], c);
            out[i] = spec.add(out[i], spec.mul(c, neg_r));
        }
        Poly::from_coeffs(out)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of X^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElem::ONE)
    }

    pub fn add(&self, other: &Poly, spec: &FieldSpec) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(spec.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, spec: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| spec.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, spec: &FieldSpec) -> Poly {
        self.add(&other.neg(spec), spec)
    }

    pub fn scale(&self, c: FieldElem, spec: &FieldSpec) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| spec.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, spec: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = spec.add(out[i + j], spec.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn divmod(&self, d: &Poly, spec: &FieldSpec) -> Result<(Poly, Poly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = spec.inv(d.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k];
            if !c.is_zero() {
                let f = spec.mul(c, lead_inv);
                quot[k - dd] = f;
                for i in 0..=dd {
                    let sub = spec.mul(f, d.coeff(i));
                    rem[k - dd + i] = spec.sub(rem[k - dd + i], sub);
                }
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Does self divide other exactly?
    pub fn divides(&self, other: &Poly, spec: &FieldSpec) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        other.divmod(self, spec).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0,0) = 0.
    pub fn gcd(&self, other: &Poly, spec: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b, spec).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic(spec)
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, spec: &FieldSpec) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l == FieldElem::ONE => self.clone(),
            Some(l) => self.scale(spec.inv(l).expect("nonzero leading"), spec),
        }
    }

    /// Formal derivative in characteristic p.
    pub fn derivative(&self, spec: &FieldSpec) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mult = spec.scalar((i as u64 % spec.p() as u64) as u32);
            out.push(spec.mul(c, mult));
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, spec: &FieldSpec, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = spec.add(spec.mul(acc, x), c);
        }
        acc
    }

    /// self^e modulo m.
    pub fn pow_mod(&self, mut e: u64, m: &Poly, spec: &FieldSpec) -> Result<Poly, PolyError> {
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut acc = Poly::one().divmod(m, spec)?.1;
        if e == 0 {
            return Ok(acc);
        }
        acc = Poly::one();
        let mut base = self.divmod(m, spec)?.1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, spec).divmod(m, spec)?.1;
            }
            base = base.mul(&base, spec).divmod(m, spec)?.1;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Roots in GF(q) with multiplicities, ascending by rep. Trial evaluation
    /// plus repeated exact division by the linear factor.
    pub fn roots_with_multiplicity(&self, spec: &FieldSpec) -> Vec<(FieldElem, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut rest = self.clone();
        for a in spec.elements() {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let mut mult = 0;
            while rest.eval(spec, a).is_zero() {
                rest = rest.div_linear(spec, a);
                mult += 1;
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
            }
            if mult > 0 {
                out.push((a, mult));
            }
        }
        out
    }

    /// Exact synthetic division by (X - a); caller guarantees a is a root.
    fn div_linear(&self, spec: &FieldSpec, a: FieldElem) -> Poly {
        let n = self.coeffs.len();
        debug_assert!(n >= 1);
        let mut out = vec![FieldElem::ZERO; n - 1];
        let mut carry = FieldElem::ZERO;
        for i in (0..n - 1).rev() {
            carry = spec.add(self.coeffs[i + 1], spec.mul(carry, a));
            out[i] = carry;
        }
        debug_assert_eq!(
            spec.add(self.coeffs[0], spec.mul(carry, a)),
            FieldElem::ZERO,
            "div_linear requires a root"
        );
        Poly::from_coeffs(out)
    }

    /// True iff the polynomial splits into linear factors over GF(q)
    /// (the root multiplicities sum to the degree). Constants count as
    /// fully reducible; the zero polynomial does not.
    pub fn is_fully_reducible(&self, spec: &FieldSpec) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(d) => {
                let total: usize = self.roots_with_multiplicity(spec).iter().map(|&(_, m)| m).sum();
                total == d
            }
        }
    }
}

/// Splits a fully reducible f as s·r where s is monic squarefree with the
/// same root set and r collects the repeated factors (and the leading
/// coefficient of f).
pub fn radical_split(f: &Poly, spec: &FieldSpec) -> Result<(Poly, Poly), PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let roots = f.roots_with_multiplicity(spec);
    let total: usize = roots.iter().map(|&(_, m)| m).sum();
    if total != f.degree().unwrap() {
        return Err(PolyError::NotFullyReducible);
    }
    let distinct: Vec<FieldElem> = roots.iter().map(|&(a, _)| a).collect();
    let s = Poly::from_roots(spec, &distinct);
    let (r, rem) = f.divmod(&s, spec)?;
    debug_assert!(rem.is_zero());
    Ok((s, r))
}

/// The X^q-split of a polynomial of degree < 2q: f = X^q·g + h with
/// deg h < q, together with the invariants the lacunary classification
/// consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacunaryProfile {
    pub g: Poly,
    pub h: Poly,
    /// max(deg g, deg h), reading deg 0 for a zero part.
    pub k: usize,
    /// Maximal e ≤ n with f ∈ GF(q)[X^(p^e)], i.e. f is a p^e-th power.
    pub e: u32,
    pub fully_reducible: bool,
    /// gcd(g, h) is a nonzero constant.
    pub coprime: bool,
}

/// Largest e ≤ n such that every exponent with a nonzero coefficient is a
/// multiple of p^e; over GF(q) that is exactly "f is a p^e-th power".
pub fn p_power_index(f: &Poly, spec: &FieldSpec) -> u32 {
    let support: Vec<usize> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut e = 0;
    'outer: while e < spec.n() {
        let m = (spec.p() as u64).pow(e + 1);
        for &i in &support {
            if !(i as u64).is_multiple_of(m) {
                break 'outer;
            }
        }
        e += 1;
    }
    e
}

pub fn lacunary_split(f: &Poly, spec: &FieldSpec) -> Result<LacunaryProfile, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let q = spec.q() as usize;
    let deg = f.degree().unwrap();
    if deg >= 2 * q {
        return Err(PolyError::DegreeTooLarge { deg, limit: 2 * q });
    }
    let h = Poly::from_coeffs(f.coeffs()[..q.min(f.coeffs().len())].to_vec());
    let g = if f.coeffs().len() > q {
        Poly::from_coeffs(f.coeffs()[q..].to_vec())
    } else {
        Poly::zero()
    };
    let k = g.degree().unwrap_or(0).max(h.degree().unwrap_or(0));
    let e = p_power_index(f, spec);
    let fully_reducible = f.is_fully_reducible(spec);
    let gc = g.gcd(&h, spec);
    let coprime = gc.degree() == Some(0);
    Ok(LacunaryProfile {
        g,
        h,
        k,
        e,
        fully_reducible,
        coprime,
    })
}

/// The three possible shapes of a fully reducible monic f = X^q + g with
/// deg g < q-1: at least one always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrichotomyTag {
    /// f ∈ GF(q)[X^p] (equivalently f is a p-th power).
    InXp,
    /// g = -X, i.e. f = X^q - X.
    GIsMinusX,
    /// deg g ≥ (q+1)/2.
    DegreeLarge,
}

/// Classifies a fully reducible monic f = X^q + g (coefficient of X^(q-1)
/// zero, deg g < q-1) and returns every tag that holds. An empty result is a
/// counterexample to the trichotomy, i.e. an implementation bug — callers
/// assert non-emptiness.
pub fn classify_xq_plus_g(f: &Poly, spec: &FieldSpec) -> Result<BTreeSet<TrichotomyTag>, PolyError> {
    let q = spec.q() as usize;
    if f.degree() != Some(q) || !f.is_monic() {
        return Err(PolyError::WrongShape(format!(
            "expected a monic polynomial of degree q = {q}"
        )));
    }
    if !f.coeff(q - 1).is_zero() {
        return Err(PolyError::WrongShape(
            "the coefficient of X^(q-1) must vanish (deg g < q-1)".into(),
        ));
    }
    if !f.is_fully_reducible(spec) {
        return Err(PolyError::NotFullyReducible);
    }
    let g = f.sub(&Poly::x_pow(q), spec);
    let mut tags = BTreeSet::new();
    if p_power_index(f, spec) >= 1 {
        tags.insert(TrichotomyTag::InXp);
    }
    let minus_x = Poly::x_pow(1).neg(spec);
    if g == minus_x {
        tags.insert(TrichotomyTag::GIsMinusX);
    }
    if let Some(dg) = g.degree() {
        if 2 * dg > q {
            tags.insert(TrichotomyTag::DegreeLarge);
        }
    }
    Ok(tags)
}

/// Functional form recognized for the e = n/2, k = p^e case: f agrees, as a
/// function on GF(q), with a·T(b·x + c) + d where T is the trace or the norm
/// onto GF(√q). Recognition is best-effort and semantic (never syntactic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceNormForm {
    Trace { a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem },
    Norm { a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem },
}

/// Outcome of the nine-case classification of fully reducible
/// f = X^q·g + h with (g,h) coprime and k = max(deg g, deg h) < q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacunaryCases {
    pub e: u32,
    pub k: usize,
    /// Case numbers (1–9) whose hypotheses and conclusions both hold; see
    /// [`classify_lacunary_cases`] for the list. Empty = counterexample.
    pub cases: BTreeSet<u8>,
    /// Functional trace/norm recognition attempted when case 4 matches.
    pub trace_norm: Option<TraceNormForm>,
}

/// The nine mutually-covering cases for a fully reducible f = X^q·g + h over
/// GF(q), q = p^n, with g, h coprime, k = max(deg g, deg h) < q, and e
/// maximal such that f is a p^e-th power:
///
/// 1. e = n and k = 0;
/// 2. e ≥ 2n/3 and k ≥ p^e;
/// 3. 2n/3 > e > n/2 and k ≥ p^(n-e/2) - (3/2)p^(n-e);
/// 4. e = n/2 and k = p^e (then f is expected to be a·Tr(bX+c)+d or
///    a·Norm(bX+c)+d onto GF(√q), recognized functionally);
/// 5. e = n/2 and k ≥ p^e·⌈1/4 + √((p^e+1)/2)⌉;
/// 6. n/2 > e > n/3 and k ≥ p^((n+e)/2) - p^(n-e) - p^e/2, or, when
///    3e = n+1 and p ≤ 3, k ≥ p^e(p^e+1)/2;
/// 7. n/3 ≥ e > 0 and k ≥ p^e·⌈(p^(n-e)+1)/(p^e+1)⌉;
/// 8. e = 0 and k ≥ (q+1)/2;
/// 9. e = 0, k = 1 and f = a(X^q - X) for some a.
///
/// All threshold comparisons are exact integer arithmetic (squared or
/// cross-multiplied); no floating point is involved.
pub fn classify_lacunary_cases(f: &Poly, spec: &FieldSpec) -> Result<LacunaryCases, PolyError> {
    let profile = lacunary_split(f, spec)?;
    if !profile.fully_reducible {
        return Err(PolyError::NotFullyReducible);
    }
    if profile.g.is_zero() {
        return Err(PolyError::WrongShape(
            "the X^q part is zero; this classification needs deg f ≥ q".into(),
        ));
    }
    if !profile.coprime {
        return Err(PolyError::WrongShape("g and h share a nonconstant factor".into()));
    }
    let p = spec.p() as u128;
    let n = spec.n() as u128;
    let q = spec.q() as u128;
    let e = profile.e as u128;
    let k = profile.k as u128;
    let pe = p.pow(profile.e);

    let mut cases = BTreeSet::new();
    // 1: e = n, k = 0
    if e == n && k == 0 {
        cases.insert(1);
    }
    // 2: e ≥ 2n/3, k ≥ p^e
    if 3 * e >= 2 * n && k >= pe {
        cases.insert(2);
    }
    // 3: 2n/3 > e > n/2, k ≥ p^(n-e/2) - (3/2)p^(n-e)
    if 3 * e < 2 * n && 2 * e > n {
        let pne = p.pow((n - e) as u32);
        let lhs = 2 * k + 3 * pne;
        // k ≥ p^(n-e/2) - (3/2)p^(n-e)  ⇔  (2k + 3p^(n-e))² ≥ 4p^(2n-e)
        if lhs * lhs >= 4 * p.pow((2 * n - e) as u32) {
            cases.insert(3);
        }
    }
    // 4: e = n/2, k = p^e
    let case4 = 2 * e == n && k == pe;
    if case4 {
        cases.insert(4);
    }
    // 5: e = n/2, k ≥ p^e·⌈1/4 + √((p^e+1)/2)⌉
    if 2 * e == n {
        let mut m = 1u128;
        // smallest m with m ≥ 1/4 + √((p^e+1)/2)  ⇔  (4m-1)² ≥ 8(p^e+1)
        while (4 * m - 1) * (4 * m - 1) < 8 * (pe + 1) {
            m += 1;
        }
        if k >= pe * m {
            cases.insert(5);
        }
    }
    // 6: n/2 > e > n/3
    if 2 * e < n && 3 * e > n {
        let pne = p.pow((n - e) as u32);
        // k ≥ p^((n+e)/2) - p^(n-e) - p^e/2  ⇔  (2k + 2p^(n-e) + p^e)² ≥ 4p^(n+e)
        let lhs = 2 * k + 2 * pne + pe;
        let main = lhs * lhs >= 4 * p.pow((n + e) as u32);
        let alt = 3 * e == n + 1 && p <= 3 && 2 * k >= pe * (pe + 1);
        if main || alt {
            cases.insert(6);
        }
    }
    // 7: n/3 ≥ e > 0, k ≥ p^e·⌈(p^(n-e)+1)/(p^e+1)⌉
    if 3 * e <= n && e > 0 {
        let pne = p.pow((n - e) as u32);
        let ceil = (pne + 1).div_ceil(pe + 1);
        if k >= pe * ceil {
            cases.insert(7);
        }
    }
    // 8: e = 0, k ≥ (q+1)/2
    if e == 0 && 2 * k > q {
        cases.insert(8);
    }
    // 9: e = 0, k = 1, f = a(X^q - X)
    if e == 0 && k == 1 {
        if let Some(a) = profile.g.leading() {
            if profile.g.degree() == Some(0) {
                let want_h = Poly::x_pow(1).scale(a, spec).neg(spec);
                if profile.h == want_h {
                    cases.insert(9);
                }
            }
        }
    }

    let trace_norm = if case4 {
        recognize_trace_norm(f, spec, profile.e)
    } else {
        None
    };

    Ok(LacunaryCases {
        e: profile.e,
        k: profile.k,
        cases,
        trace_norm,
    })
}

/// Exhaustive functional search for f(x) = a·Tr(bx) + f(0) or
/// f(x) = a·Norm(bx+c) + d over the subfield GF(p^e); only attempted at
/// desk-scale q. A translation inside the trace is absorbed by the constant,
/// so c = 0 suffices there.
fn recognize_trace_norm(f: &Poly, spec: &FieldSpec, e: u32) -> Option<TraceNormForm> {
    if spec.q() > 64 || !spec.n().is_multiple_of(e) {
        return None;
    }
    let els: Vec<FieldElem> = spec.elements().collect();
    let values: Vec<FieldElem> = els.iter().map(|&x| f.eval(spec, x)).collect();
    let f0 = values[0];
    let nonzero: Vec<FieldElem> = els.iter().copied().filter(|x| !x.is_zero()).collect();

    for &a in &nonzero {
        for &b in &nonzero {
            let ok = els.iter().zip(&values).all(|(&x, &v)| {
                let t = spec.trace_to(e, spec.mul(b, x)).expect("e divides n");
                spec.add(spec.mul(a, t), f0) == v
            });
            if ok {
                return Some(TraceNormForm::Trace {
                    a,
                    b,
                    c: FieldElem::ZERO,
                    d: f0,
                });
            }
        }
    }
    for &a in &nonzero {
        for &b in &nonzero {
            for &c in &els {
                let norm_c = spec.norm_to(e, c).expect("e divides n");
                let d = spec.sub(f0, spec.mul(a, norm_c));
                let ok = els.iter().zip(&values).all(|(&x, &v)| {
                    let nm = spec
                        .norm_to(e, spec.add(spec.mul(b, x), c))
                        .expect("e divides n");
                    spec.add(spec.mul(a, nm), d) == v
                });
                if ok {
                    return Some(TraceNormForm::Norm { a, b, c, d });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn divmod_worked_example() {
        // (X³+2X+1) ÷ (X²+1) over GF(3): quotient X, remainder X+1
        let f3 = make_field(3, 1, None).unwrap();
        let num = Poly::from_reps(&f3, &[1, 2, 0, 1]);
        let den = Poly::from_reps(&f3, &[1, 0, 1]);
        let (q, r) = num.divmod(&den, &f3).unwrap();
        assert_eq!(q, Poly::from_reps(&f3, &[0, 1]));
        assert_eq!(r, Poly::from_reps(&f3, &[1, 1]));
        assert_eq!(q.mul(&den, &f3).add(&r, &f3), num);
    }

    #[test]
    fn gcd_worked_example() {
        // gcd(X²-1, X²+X) = X+1 over GF(5)
        let f5 = make_field(5, 1, None).unwrap();
        let a = Poly::from_reps(&f5, &[4, 0, 1]);
        let b = Poly::from_reps(&f5, &[0, 1, 1]);
        assert_eq!(a.gcd(&b, &f5), Poly::from_reps(&f5, &[1, 1]));
    }

    #[test]
    fn derivative_in_characteristic_three() {
        // d/dX (X^6 + X³ + 1) = 6X^5 + 3X² = 0 over GF(3)
        let f3 = make_field(3, 1, None).unwrap();
        let f = Poly::from_reps(&f3, &[1, 0, 0, 1, 0, 0, 1]);
        assert!(f.derivative(&f3).is_zero());
    }

    #[test]
    fn frobenius_power_of_linear_factor() {
        // (X-1)^5 = X^5 - 1 over GF(5)
        let f5 = make_field(5, 1, None).unwrap();
        let one = f5.elem(1);
        let f = Poly::from_roots(&f5, &[one; 5]);
        assert_eq!(f, Poly::from_reps(&f5, &[4, 0, 0, 0, 0, 1]));
        assert_eq!(f.roots_with_multiplicity(&f5), vec![(one, 5)]);
        assert!(f.is_fully_reducible(&f5));
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = Poly::from_reps(&f3, &[1, 0, 1]);
        assert!(f.roots_with_multiplicity(&f3).is_empty());
        assert!(!f.is_fully_reducible(&f3));
    }

    #[test]
    fn root_multiplicities_with_mixed_factors() {
        // X^5 + 3X³ + X² = X²(X-1)(X-2)² over GF(5)
        let f5 = make_field(5, 1, None).unwrap();
        let f = Poly::from_reps(&f5, &[0, 0, 1, 3, 0, 1]);
        assert_eq!(
            f.roots_with_multiplicity(&f5),
            vec![(f5.elem(0), 2), (f5.elem(1), 1), (f5.elem(2), 2)]
        );
    }

    #[test]
    fn radical_split_worked_example() {
        let f5 = make_field(5, 1, None).unwrap();
        let f = Poly::from_reps(&f5, &[0, 0, 1, 3, 0, 1]);
        let (s, r) = radical_split(&f, &f5).unwrap();
        assert_eq!(s, Poly::from_roots(&f5, &[f5.elem(0), f5.elem(1), f5.elem(2)]));
        assert_eq!(s.mul(&r, &f5), f);
        // s is squarefree: gcd(s, s') constant
        assert_eq!(s.gcd(&s.derivative(&f5), &f5), Poly::one());
        // X^4 + X³ + 1 has the simple root 2 and an irreducible cubic cofactor
        let bad = Poly::from_reps(&f5, &[1, 0, 0, 1, 1]);
        assert_eq!(radical_split(&bad, &f5).unwrap_err(), PolyError::NotFullyReducible);
    }

    #[test]
    fn lacunary_split_worked_examples() {
        // X^9 + X³ over GF(9): g = 1, h = X³, k = 3, e = 1, fully reducible
        let f9 = make_field(3, 2, None).unwrap();
        let f = Poly::from_coeffs({
            let mut c = vec![FieldElem::ZERO; 10];
            c[9] = FieldElem::ONE;
            c[3] = FieldElem::ONE;
            c
        });
        let prof = lacunary_split(&f, &f9).unwrap();
        assert_eq!(prof.g, Poly::one());
        assert_eq!(prof.h, Poly::x_pow(3));
        assert_eq!(prof.k, 3);
        assert_eq!(prof.e, 1);
        assert!(prof.fully_reducible);
        assert!(prof.coprime);

        // X^4 + X over GF(4): k = 1, e = 0
        let f4 = make_field(2, 2, None).unwrap();
        let g = Poly::from_reps(&f4, &[0, 1, 0, 0, 1]);
        let prof = lacunary_split(&g, &f4).unwrap();
        assert_eq!((prof.k, prof.e), (1, 0));
        assert!(prof.fully_reducible);

        // degree 2q is out of range
        let too_big = Poly::x_pow(18);
        assert_eq!(
            lacunary_split(&too_big, &f9).unwrap_err(),
            PolyError::DegreeTooLarge { deg: 18, limit: 18 }
        );
    }

    #[test]
    fn trichotomy_worked_examples() {
        use TrichotomyTag::*;
        let f5 = make_field(5, 1, None).unwrap();
        // X^5 + 3X³ + X²: deg g = 3 ≥ 3 = (q+1)/2
        let f = Poly::from_reps(&f5, &[0, 0, 1, 3, 0, 1]);
        let tags = classify_xq_plus_g(&f, &f5).unwrap();
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![DegreeLarge]);

        // X^5 - X = X^q - X
        let xqx = Poly::from_reps(&f5, &[0, 4, 0, 0, 0, 1]);
        let tags = classify_xq_plus_g(&xqx, &f5).unwrap();
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![GIsMinusX]);

        // X^5 = (X)^5 is a p-th power
        let xq = Poly::x_pow(5);
        let tags = classify_xq_plus_g(&xq, &f5).unwrap();
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![InXp]);

        // X^4 + X over GF(4): g = X = -X in characteristic 2
        let f4 = make_field(2, 2, None).unwrap();
        let g = Poly::from_reps(&f4, &[0, 1, 0, 0, 1]);
        let tags = classify_xq_plus_g(&g, &f4).unwrap();
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![GIsMinusX]);

        // shape errors
        let with_xq1 = Poly::from_reps(&f5, &[0, 0, 0, 0, 1, 1]);
        assert!(matches!(
            classify_xq_plus_g(&with_xq1, &f5),
            Err(PolyError::WrongShape(_))
        ));
    }

    #[test]
    fn nine_cases_trace_example() {
        // X^9 + X³ over GF(9): e = 1 = n/2, k = 3 = p^e → case 4, and the
        // function is the trace onto GF(3).
        let f9 = make_field(3, 2, None).unwrap();
        let mut c = vec![FieldElem::ZERO; 10];
        c[9] = FieldElem::ONE;
        c[3] = FieldElem::ONE;
        let f = Poly::from_coeffs(c);
        let out = classify_lacunary_cases(&f, &f9).unwrap();
        assert_eq!((out.e, out.k), (1, 3));
        assert_eq!(out.cases.iter().copied().collect::<Vec<_>>(), vec![4]);
        match out.trace_norm {
            Some(TraceNormForm::Trace { a, b, c, d }) => {
                assert_eq!(a, FieldElem::ONE);
                assert_eq!(b, FieldElem::ONE);
                assert!(c.is_zero() && d.is_zero());
            }
            other => panic!("expected trace recognition, got {other:?}"),
        }
    }

    #[test]
    fn nine_cases_scaled_xq_minus_x() {
        // a(X^4 - X) over GF(4) lands exactly in case 9.
        let f4 = make_field(2, 2, None).unwrap();
        let alpha = f4.elem(2);
        let f = Poly::from_reps(&f4, &[0, 1, 0, 0, 1]).scale(alpha, &f4);
        let out = classify_lacunary_cases(&f, &f4).unwrap();
        assert_eq!((out.e, out.k), (0, 1));
        assert_eq!(out.cases.iter().copied().collect::<Vec<_>>(), vec![9]);
    }

    #[test]
    fn pow_mod_matches_direct_computation() {
        let f5 = make_field(5, 1, None).unwrap();
        let m = Poly::from_reps(&f5, &[1, 1, 1]);
        let base = Poly::from_reps(&f5, &[2, 3]);
        let direct = base
            .mul(&base, &f5)
            .mul(&base, &f5)
            .mul(&base, &f5)
            .divmod(&m, &f5)
            .unwrap()
            .1;
        assert_eq!(base.pow_mod(4, &m, &f5).unwrap(), direct);
    }
}
