//! Direction sets of function graphs over GF(q) and their classification.
//!
//! For f : GF(q) → GF(q) the direction set is
//! D_f = {(f(u) − f(v))/(u − v) : u ≠ v}. Nonlinear functions have |D_f|
//! confined to a short list of intervals indexed by subfield orders, and the
//! finer four-case classification pins down (N, e) where e is the largest
//! integer such that every line with slope in D_f meets the graph in a
//! multiple of p^e points. Everything here is exact integer arithmetic; no
//! floating point is involved in any bound check.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gf::{FieldElem, FieldSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DirError {
    #[error("function table has {got} entries, field has {want}")]
    TableLength { want: usize, got: usize },
    #[error("the half power x^((q+1)/2) needs q odd")]
    ParityError,
    #[error("{e} does not divide the extension degree {n}")]
    NotADivisor { e: u32, n: u32 },
    #[error("classification requires f(0) = 0; normalize first")]
    NotNormalized,
    #[error("direction count {n_dirs} out of range 2..={q} for interval membership")]
    OutOfRange { n_dirs: usize, q: u32 },
}

/// A function GF(q) → GF(q) stored as a full value table indexed by element
/// rep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldFn {
    table: Vec<FieldElem>,
}

impl FieldFn {
    pub fn from_table(spec: &FieldSpec, table: Vec<FieldElem>) -> Result<FieldFn, DirError> {
        if table.len() != spec.q() as usize {
            return Err(DirError::TableLength {
                want: spec.q() as usize,
                got: table.len(),
            });
        }
        Ok(FieldFn { table })
    }

    pub fn from_fn(spec: &FieldSpec, f: impl Fn(FieldElem) -> FieldElem) -> FieldFn {
        FieldFn {
            table: spec.elements().map(f).collect(),
        }
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        self.table[x.rep() as usize]
    }

    pub fn table(&self) -> &[FieldElem] {
        &self.table
    }

    /// f − f(0), so that the graph passes through the origin.
    pub fn normalized_zero(&self, spec: &FieldSpec) -> FieldFn {
        let c = self.table[0];
        FieldFn {
            table: self.table.iter().map(|&v| spec.sub(v, c)).collect(),
        }
    }
}

/// Direction set data for one function: the set itself, its size N, the
/// divisibility parameter e, the matching classification cases, and the
/// largest subfield over which f is linear (None when f is not additive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectionReport {
    pub dirs: BTreeSet<FieldElem>,
    pub n_dirs: usize,
    pub e: u32,
    pub cases: BTreeSet<u8>,
    pub linear_over_subfield: Option<u32>,
}

impl DirectionReport {
    /// Smallest matching case number (1–4), if any.
    pub fn case_tag(&self) -> Option<u8> {
        self.cases.first().copied()
    }

    /// Whether the linearity conclusion applies: case 3 with p^e > 3, or
    /// p^e = 3 with N = q/3 + 1.
    pub fn linearity_applicable(&self, spec: &FieldSpec) -> bool {
        if !self.cases.contains(&3) {
            return false;
        }
        let pe = (spec.p() as u64).pow(self.e);
        pe > 3 || (pe == 3 && self.n_dirs as u64 == spec.q() as u64 / 3 + 1)
    }

    /// Whether f is linear over GF(p^e) for the computed e. The λ with
    /// f(λx) = λf(x) form a subfield GF(p^e′), so this is e | e′.
    pub fn linearity_holds(&self) -> bool {
        match self.linear_over_subfield {
            Some(ep) => self.e > 0 && ep % self.e == 0,
            None => false,
        }
    }
}

/// Computes D_f, N, e, the case set, and the linearity data for a function.
pub fn directions_of(spec: &FieldSpec, f: &FieldFn) -> DirectionReport {
    let q = spec.q();
    let mut dirs = BTreeSet::new();
    for u in 0..q {
        let ue = FieldElem::from_rep(u);
        for v in (u + 1)..q {
            let ve = FieldElem::from_rep(v);
            let num = spec.sub(f.eval(ue), f.eval(ve));
            let den = spec.sub(ue, ve);
            let slope = spec.div(num, den).expect("u ≠ v");
            dirs.insert(slope);
        }
    }
    let n_dirs = dirs.len();
    let e = divisibility_parameter(spec, f, &dirs);
    let cases = matching_cases(spec, n_dirs, e);
    let linear_over_subfield = largest_linear_subfield(spec, f);
    DirectionReport {
        dirs,
        n_dirs,
        e,
        cases,
        linear_over_subfield,
    }
}

/// Largest e ≤ n such that every line with slope in dirs meets the graph
/// {(w, f(w))} in a multiple of p^e points. Counts 0 and q are multiples of
/// every p^e with e ≤ n, so e is the minimum p-adic valuation over the
/// nonzero fiber sizes #{w : f(w) − m·w = c}, capped at n.
fn divisibility_parameter(spec: &FieldSpec, f: &FieldFn, dirs: &BTreeSet<FieldElem>) -> u32 {
    let q = spec.q() as usize;
    let p = spec.p();
    let mut e = spec.n();
    let mut fiber = vec![0u32; q];
    for &m in dirs {
        fiber.fill(0);
        for w in spec.elements() {
            let c = spec.sub(f.eval(w), spec.mul(m, w));
            fiber[c.rep() as usize] += 1;
        }
        for &cnt in &fiber {
            if cnt == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut c = cnt;
            while c % p == 0 {
                c /= p;
                v += 1;
            }
            e = e.min(v);
            if e == 0 {
                return 0;
            }
        }
    }
    e
}

/// The four-case bounds, evaluated with exact integer comparisons. Cases can
/// overlap for some (N, e); all matches are reported.
fn matching_cases(spec: &FieldSpec, n_dirs: usize, e: u32) -> BTreeSet<u8> {
    let q = spec.q() as u64;
    let p = spec.p() as u64;
    let n = spec.n();
    let nd = n_dirs as u64;
    let pe = p.pow(e);
    let mut out = BTreeSet::new();
    // (1) e = 0 and (q+3)/2 ≤ N ≤ q+1
    if e == 0 && 2 * nd >= q + 3 && nd <= q + 1 {
        out.insert(1);
    }
    // (2) e = 1, p = 2 and (q+5)/3 ≤ N ≤ q−1
    if e == 1 && p == 2 && 3 * nd >= q + 5 && nd < q {
        out.insert(2);
    }
    // (3) p^e > 2, e | n, and q/p^e + 1 ≤ N ≤ (q−1)/(p^e−1)
    if pe > 2 && e >= 1 && n.is_multiple_of(e) && nd * pe >= q + pe && nd * (pe - 1) < q {
        out.insert(3);
    }
    // (4) e = n and N = 1
    if e == n && nd == 1 {
        out.insert(4);
    }
    out
}

/// Largest e′ | n such that f is GF(p^e′)-linear; None when f is not
/// additive. The scalars commuting with an additive f form a subfield, so
/// checking divisors of n from the top down finds it.
fn largest_linear_subfield(spec: &FieldSpec, f: &FieldFn) -> Option<u32> {
    let q = spec.q();
    for x in 0..q {
        let xe = FieldElem::from_rep(x);
        for y in x..q {
            let ye = FieldElem::from_rep(y);
            if f.eval(spec.add(xe, ye)) != spec.add(f.eval(xe), f.eval(ye)) {
                return None;
            }
        }
    }
    let n = spec.n();
    for ep in (1..=n).rev() {
        if !n.is_multiple_of(ep) {
            continue;
        }
        let homogeneous = spec.subfield_elements(ep).expect("divisor").iter().all(|&lam| {
            spec.elements()
                .all(|x| f.eval(spec.mul(lam, x)) == spec.mul(lam, f.eval(x)))
        });
        if homogeneous {
            return Some(ep);
        }
    }
    unreachable!("an additive map is GF(p)-linear")
}

/// Classification entry point for normalized functions (f(0) = 0).
pub fn classify(spec: &FieldSpec, f: &FieldFn) -> Result<DirectionReport, DirError> {
    if !f.eval(FieldElem::ZERO).is_zero() {
        return Err(DirError::NotNormalized);
    }
    Ok(directions_of(spec, f))
}

// ---------------------------------------------------------------------------
// Interval membership

/// One of the direction-count intervals: (1 + (q−1)/(p^e+1), (q−1)/(p^e−1)]
/// for a subfield parameter e, or the large interval ((q+1)/2, q]. Right
/// endpoints are closed because the classical extremal examples attain them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RedeiInterval {
    Subfield { e: u32 },
    Large,
}

impl RedeiInterval {
    pub fn contains(self, spec: &FieldSpec, n_dirs: usize) -> bool {
        let q = spec.q() as u64;
        let nd = n_dirs as u64;
        match self {
            RedeiInterval::Subfield { e } => {
                let pe = (spec.p() as u64).pow(e);
                // N > 1 + (q−1)/(p^e+1)  ⇔  (N−1)(p^e+1) > q−1
                // N ≤ (q−1)/(p^e−1)      ⇔  N(p^e−1) ≤ q−1
                nd >= 1 && (nd - 1) * (pe + 1) > q - 1 && nd * (pe - 1) < q
            }
            RedeiInterval::Large => 2 * nd > q + 1 && nd <= q,
        }
    }

    /// All intervals for the field: e = 1..⌊n/2⌋, then the large one.
    pub fn all(spec: &FieldSpec) -> Vec<RedeiInterval> {
        let mut out: Vec<RedeiInterval> = (1..=spec.n() / 2)
            .map(|e| RedeiInterval::Subfield { e })
            .collect();
        out.push(RedeiInterval::Large);
        out
    }
}

/// Which intervals contain the direction count N of a nonlinear function.
/// An empty answer for an actual nonlinear f would violate the interval
/// theorem; tests assert non-emptiness.
pub fn check_intervals(spec: &FieldSpec, n_dirs: usize) -> Result<Vec<RedeiInterval>, DirError> {
    if n_dirs < 2 || n_dirs > spec.q() as usize {
        return Err(DirError::OutOfRange {
            n_dirs,
            q: spec.q(),
        });
    }
    Ok(RedeiInterval::all(spec)
        .into_iter()
        .filter(|iv| iv.contains(spec, n_dirs))
        .collect())
}

// ---------------------------------------------------------------------------
// Named example functions

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    /// x ↦ x^((q+1)/2), q odd.
    HalfPower,
    /// x ↦ x^(p^e), e | n.
    FrobPower { e: u32 },
    /// x ↦ Tr(x) down to GF(p^e), e | n.
    SubfieldTrace { e: u32 },
}

pub fn example_function(kind: ExampleKind, spec: &FieldSpec) -> Result<FieldFn, DirError> {
    match kind {
        ExampleKind::HalfPower => {
            if spec.p() == 2 {
                return Err(DirError::ParityError);
            }
            let exp = (spec.q() as u64).div_ceil(2);
            Ok(FieldFn::from_fn(spec, |x| spec.pow(x, exp)))
        }
        ExampleKind::FrobPower { e } => {
            if e == 0 || !spec.n().is_multiple_of(e) {
                return Err(DirError::NotADivisor { e, n: spec.n() });
            }
            Ok(FieldFn::from_fn(spec, |x| spec.frob_pow(x, e)))
        }
        ExampleKind::SubfieldTrace { e } => {
            if e == 0 || !spec.n().is_multiple_of(e) {
                return Err(DirError::NotADivisor { e, n: spec.n() });
            }
            Ok(FieldFn::from_fn(spec, |x| {
                spec.trace_to(e, x).expect("e divides n")
            }))
        }
    }
}

/// The classical direction count of each example kind.
pub fn expected_direction_count(kind: ExampleKind, spec: &FieldSpec) -> usize {
    let q = spec.q() as u64;
    let p = spec.p() as u64;
    match kind {
        ExampleKind::HalfPower => ((q + 3) / 2) as usize,
        ExampleKind::FrobPower { e } => ((q - 1) / (p.pow(e) - 1)) as usize,
        ExampleKind::SubfieldTrace { e } => (q / p.pow(e) + 1) as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn half_power_and_square_over_gf5() {
        let f5 = make_field(5, 1, None).unwrap();
        let cube = example_function(ExampleKind::HalfPower, &f5).unwrap();
        let rep = directions_of(&f5, &cube);
        assert_eq!(rep.n_dirs, 4); // (q+3)/2
        assert_eq!(
            check_intervals(&f5, rep.n_dirs).unwrap(),
            vec![RedeiInterval::Large]
        );
        let square = FieldFn::from_fn(&f5, |x| f5.mul(x, x));
        assert_eq!(directions_of(&f5, &square).n_dirs, 5); // u+v hits everything
    }

    #[test]
    fn linear_functions_are_case_four() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = FieldFn::from_fn(&f9, |x| f9.mul(f9.elem(5), x));
        let rep = classify(&f9, &f).unwrap();
        assert_eq!(rep.n_dirs, 1);
        assert_eq!(rep.e, f9.n());
        assert_eq!(rep.cases.iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(rep.linear_over_subfield, Some(2));
    }

    #[test]
    fn frobenius_over_gf9_is_case_three_and_linear() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = example_function(ExampleKind::FrobPower { e: 1 }, &f9).unwrap();
        let rep = classify(&f9, &f).unwrap();
        assert_eq!(rep.n_dirs, 4); // (q−1)/(p−1)
        assert_eq!(rep.e, 1);
        assert!(rep.cases.contains(&3));
        assert!(rep.linearity_applicable(&f9)); // p^e = 3 and N = q/3 + 1
        assert!(rep.linearity_holds());
        // closed right endpoint: N = (q−1)/(p−1) sits on the e=1 boundary
        assert!(RedeiInterval::Subfield { e: 1 }.contains(&f9, 4));
    }

    #[test]
    fn trace_over_gf8_is_case_two() {
        let f8 = make_field(2, 3, None).unwrap();
        let f = example_function(ExampleKind::SubfieldTrace { e: 1 }, &f8).unwrap();
        let rep = classify(&f8, &f).unwrap();
        assert_eq!(rep.n_dirs, 5); // q/2 + 1
        assert_eq!(rep.e, 1);
        // p^e = 2 fails the strict p^e > 2 of case 3, so only case 2 matches
        assert_eq!(rep.cases.iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(rep.linear_over_subfield, Some(1));
        // N = 5 also clears (q+1)/2 = 4.5, so both intervals report it
        assert_eq!(
            check_intervals(&f8, 5).unwrap(),
            vec![RedeiInterval::Subfield { e: 1 }, RedeiInterval::Large]
        );
    }

    #[test]
    fn expected_counts_match_computed_counts() {
        let cases = [
            (5u64, 1u32, ExampleKind::HalfPower),
            (3, 2, ExampleKind::HalfPower),
            (3, 2, ExampleKind::FrobPower { e: 1 }),
            (2, 4, ExampleKind::FrobPower { e: 2 }),
            (2, 3, ExampleKind::SubfieldTrace { e: 1 }),
            (3, 2, ExampleKind::SubfieldTrace { e: 1 }),
        ];
        for (p, n, kind) in cases {
            let spec = make_field(p, n, None).unwrap();
            let f = example_function(kind, &spec).unwrap();
            assert_eq!(
                directions_of(&spec, &f).n_dirs,
                expected_direction_count(kind, &spec),
                "{kind:?} over GF({})",
                spec.q()
            );
        }
    }

    #[test]
    fn direction_count_is_translation_invariant() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = example_function(ExampleKind::HalfPower, &f9).unwrap();
        let base = directions_of(&f9, &f);
        // x ↦ a x + b substitution and adding c: N unchanged
        let a = f9.elem(4);
        let b = f9.elem(7);
        let c = f9.elem(2);
        let g = FieldFn::from_fn(&f9, |x| {
            f9.add(f.eval(f9.add(f9.mul(a, x), b)), c)
        });
        assert_eq!(directions_of(&f9, &g).n_dirs, base.n_dirs);
        // adding a linear term d·x shifts dirs pointwise
        let d = f9.elem(3);
        let h = FieldFn::from_fn(&f9, |x| f9.add(f.eval(x), f9.mul(d, x)));
        let shifted: BTreeSet<FieldElem> = base.dirs.iter().map(|&m| f9.add(m, d)).collect();
        assert_eq!(directions_of(&f9, &h).dirs, shifted);
    }

    #[test]
    fn exhaustive_gf4_classification() {
        // all 64 normalized tables over GF(4): exactly one case matches,
        // e = n ⇔ N = 1 ⇔ f linear, and nonlinear N lands in an interval
        let f4 = make_field(2, 2, None).unwrap();
        let q = 4u32;
        for code in 0..q.pow(3) {
            let mut table = vec![FieldElem::ZERO];
            let mut c = code;
            for _ in 1..q {
                table.push(FieldElem::from_rep(c % q));
                c /= q;
            }
            let f = FieldFn::from_table(&f4, table).unwrap();
            let rep = classify(&f4, &f).unwrap();
            assert!(!rep.cases.is_empty(), "every function matches a case");
            assert_eq!(rep.e == f4.n(), rep.n_dirs == 1, "e=n ⇔ N=1");
            if rep.n_dirs > 1 {
                assert!(
                    !check_intervals(&f4, rep.n_dirs).unwrap().is_empty(),
                    "nonlinear N must land in an interval"
                );
            }
        }
    }

    #[test]
    fn error_paths() {
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(
            example_function(ExampleKind::HalfPower, &f4).unwrap_err(),
            DirError::ParityError
        );
        let f8 = make_field(2, 3, None).unwrap();
        assert_eq!(
            example_function(ExampleKind::FrobPower { e: 2 }, &f8).unwrap_err(),
            DirError::NotADivisor { e: 2, n: 3 }
        );
        let shifted = FieldFn::from_fn(&f8, |x| f8.add(x, f8.elem(1)));
        assert_eq!(classify(&f8, &shifted).unwrap_err(), DirError::NotNormalized);
        assert_eq!(
            check_intervals(&f8, 1).unwrap_err(),
            DirError::OutOfRange { n_dirs: 1, q: 8 }
        );
    }
}
