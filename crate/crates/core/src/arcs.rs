//! (k,n)-arcs: intersection analysis against the Barlotti bound, conics and
//! the Segre recognition test, and hyperoval extension in even
//! characteristic.
//!
//! A (k,n)-arc is a k-set with at most n points on every line. The Barlotti
//! bound is k ≤ (n−1)(q+1)+1, with equality forcing n | q and every line
//! meeting the set in 0 or n points (a maximal arc). Conics are handled as
//! general ternary quadrics evaluated exactly, which sidesteps bilinear-rank
//! subtleties in characteristic 2.

use thiserror::Error;

use crate::gf::{FieldElem, FieldSpec};
use crate::linalg::kernel_basis;
use crate::plane::{Plane, PointSet, Triple};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("expected a set of {want} points, got {got}")]
    WrongSize { want: usize, got: usize },
    #[error("the quadratic form is degenerate (zero set is not an oval)")]
    DegenerateForm,
    #[error("hyperoval extension needs even q")]
    OddCharacteristic,
    #[error("the set is not a (q+1)-arc")]
    NotAnArc,
    #[error("the tangent lines have no common point")]
    NoCommonNucleus,
}

/// Line-intersection summary of a point set viewed as a (k,n)-arc candidate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcReport {
    /// |S|.
    pub k: usize,
    /// Largest line intersection actually attained.
    pub n_max: usize,
    /// (n−1)(q+1)+1 for the queried n.
    pub barlotti_bound: usize,
    /// S is nonempty and every line meets it in 0 or exactly the queried n
    /// points.
    pub is_maximal: bool,
    /// No point can be added without raising n_max.
    pub complete: bool,
}

/// Analyzes S as a (k,n)-arc candidate for the queried n ≥ 2.
pub fn arc_analyze(plane: &Plane, s: &PointSet, n: usize) -> ArcReport {
    assert!(n >= 2, "arc analysis needs n ≥ 2");
    let q = plane.q() as usize;
    let counts = plane.line_counts(s);
    let n_max = counts.iter().copied().max().unwrap_or(0);
    let is_maximal = !s.is_empty() && counts.iter().all(|&c| c == 0 || c == n);
    // a point extends S iff every line through it still fits under n_max
    let complete = !(0..plane.size() as u32).any(|p| {
        !s.contains(p)
            && plane
                .lines_through(p)
                .iter()
                .all(|&l| counts[l as usize] < n_max)
    });
    ArcReport {
        k: s.len(),
        n_max,
        barlotti_bound: (n - 1) * (q + 1) + 1,
        is_maximal,
        complete,
    }
}

/// Ternary quadratic form a·X² + b·Y² + c·Z² + d·XY + e·XZ + f·YZ given as
/// [a, b, c, d, e, f].
pub type QuadForm = [FieldElem; 6];

pub fn eval_form(spec: &FieldSpec, form: &QuadForm, t: &Triple) -> FieldElem {
    let [x, y, z] = *t;
    let mut acc = spec.mul(form[0], spec.mul(x, x));
    acc = spec.add(acc, spec.mul(form[1], spec.mul(y, y)));
    acc = spec.add(acc, spec.mul(form[2], spec.mul(z, z)));
    acc = spec.add(acc, spec.mul(form[3], spec.mul(x, y)));
    acc = spec.add(acc, spec.mul(form[4], spec.mul(x, z)));
    acc = spec.add(acc, spec.mul(form[5], spec.mul(y, z)));
    acc
}

fn zero_set(plane: &Plane, form: &QuadForm) -> PointSet {
    let spec = plane.spec();
    PointSet::from_indices(
        (0..plane.size() as u32)
            .filter(|&p| eval_form(spec, form, &plane.point(p)).is_zero())
            .collect(),
    )
}

fn is_full_line(plane: &Plane, s: &PointSet) -> bool {
    s.len() == plane.q() as usize + 1 && {
        let counts = plane.line_counts(s);
        counts.iter().any(|&c| c == s.len())
    }
}

/// The q+1 points of a nondegenerate conic; degeneracy is decided by the
/// zero set itself (wrong size, or containing a line).
pub fn conic_points(plane: &Plane, form: &QuadForm) -> Result<PointSet, ArcError> {
    let z = zero_set(plane, form);
    if z.len() != plane.q() as usize + 1 || is_full_line(plane, &z) {
        return Err(ArcError::DegenerateForm);
    }
    Ok(z)
}

/// Searches for a nondegenerate form vanishing exactly on S (Segre test for
/// a (q+1)-set). Solves the 6-coefficient linear system through the points,
/// then scans the kernel for a form whose zero set equals S.
pub fn is_conic(plane: &Plane, s: &PointSet) -> Result<Option<QuadForm>, ArcError> {
    let q = plane.q();
    if s.len() != q as usize + 1 {
        return Err(ArcError::WrongSize {
            want: q as usize + 1,
            got: s.len(),
        });
    }
    if is_full_line(plane, s) {
        return Ok(None);
    }
    let spec = plane.spec();
    let rows: Vec<Vec<FieldElem>> = s
        .members()
        .iter()
        .map(|&p| {
            let [x, y, z] = plane.point(p);
            vec![
                spec.mul(x, x),
                spec.mul(y, y),
                spec.mul(z, z),
                spec.mul(x, y),
                spec.mul(x, z),
                spec.mul(y, z),
            ]
        })
        .collect();
    let kernel = kernel_basis(&rows, 6, spec);
    if kernel.is_empty() {
        return Ok(None);
    }
    // scan kernel combinations in rep order; scalar multiples share zero sets
    // so normalizing isn't required for correctness, only for determinism of
    // the returned representative (first hit in enumeration order)
    let k = kernel.len();
    let qu = q as u64;
    let mut combo_reps = vec![0u64; k];
    loop {
        // advance odometer
        let mut i = 0;
        while i < k {
            combo_reps[i] += 1;
            if combo_reps[i] < qu {
                break;
            }
            combo_reps[i] = 0;
            i += 1;
        }
        if i == k {
            return Ok(None);
        }
        let mut form = [FieldElem::ZERO; 6];
        for (ci, basis_vec) in kernel.iter().enumerate() {
            let lam = spec.elem(combo_reps[ci]);
            if lam.is_zero() {
                continue;
            }
            for (j, f) in form.iter_mut().enumerate() {
                *f = spec.add(*f, spec.mul(lam, basis_vec[j]));
            }
        }
        if zero_set(plane, &form) == *s {
            return Ok(Some(form));
        }
    }
}

/// Adds the nucleus (common point of the q+1 tangents) to a (q+1)-arc in
/// even characteristic, producing a hyperoval.
pub fn extend_to_hyperoval(plane: &Plane, s: &PointSet) -> Result<PointSet, ArcError> {
    let q = plane.q();
    if plane.spec().p() != 2 {
        return Err(ArcError::OddCharacteristic);
    }
    let counts = plane.line_counts(s);
    if s.len() != q as usize + 1 || counts.iter().any(|&c| c > 2) {
        return Err(ArcError::NotAnArc);
    }
    let tangents: Vec<u32> = (0..plane.size() as u32)
        .filter(|&l| counts[l as usize] == 1)
        .collect();
    debug_assert_eq!(tangents.len(), q as usize + 1);
    let nucleus = plane
        .meet(tangents[0], tangents[1])
        .expect("distinct tangents");
    let concurrent = tangents
        .iter()
        .all(|&l| plane.line_bitset(l).get(nucleus as usize));
    if !concurrent || s.contains(nucleus) {
        return Err(ArcError::NoCommonNucleus);
    }
    let mut pts = s.members().to_vec();
    pts.push(nucleus);
    let hyper = PointSet::from_indices(pts);
    debug_assert!(plane.line_counts(&hyper).iter().all(|&c| c <= 2));
    Ok(hyper)
}
