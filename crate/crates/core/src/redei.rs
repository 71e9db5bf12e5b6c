//! Rédei polynomials: R(X,Y) = ∏ (X − a_i·Y + b_i) expanded exactly, its
//! coefficient-vanishing structure, specializations to lacunary polynomials,
//! and the blocking-set variant computed after moving a set into standard
//! position.
//!
//! For the graph of a function f the pairs are (w, f(w)), so a specialization
//! at a non-direction y is forced to be X^q − X, while specializations at
//! directions are lacunary of the shape X^q + g with deg g small. For a
//! blocking set of size q + 1 + d with a tangent, the product runs over the
//! q + d affine points in standard position and X^q − X divides every
//! specialization.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::directions::FieldFn;
use crate::fpoly::{lacunary_split, LacunaryProfile, Poly, PolyError};
use crate::gf::{FieldElem, FieldSpec};
use crate::plane::{standard_position, Collineation, Plane, PlaneError, PointSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RedeiError {
    #[error("the point set does not block every line")]
    NotBlocking,
    #[error("no tangent line: every line meets the set in 0 or at least 2 points")]
    NoTangent,
    #[error("set of size {size} is too large for the lacunary analysis over GF({q})")]
    SetTooLarge { size: usize, q: u32 },
}

/// R(X,Y) = X^D + Σ_{i=1..D} r_i(Y)·X^(D−i), stored by X-degree: entry j is
/// the Y-polynomial multiplying X^j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RedeiPoly {
    coeffs_by_x: Vec<Poly>,
}

impl RedeiPoly {
    /// Expands ∏ (X − a·Y + b) over the given pairs by repeated
    /// linear-factor multiplication; O(D²) coefficient operations.
    pub fn from_pairs(spec: &FieldSpec, pairs: &[(FieldElem, FieldElem)]) -> RedeiPoly {
        let mut acc: Vec<Poly> = vec![Poly::one()];
        for &(a, b) in pairs {
            // factor X + (b − aY)
            let lin = Poly::from_coeffs(vec![b, spec.neg(a)]);
            let mut next: Vec<Poly> = vec![Poly::zero(); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(c, spec);
                next[j] = next[j].add(&c.mul(&lin, spec), spec);
            }
            acc = next;
        }
        RedeiPoly { coeffs_by_x: acc }
    }

    pub fn from_function(spec: &FieldSpec, f: &FieldFn) -> RedeiPoly {
        let pairs: Vec<(FieldElem, FieldElem)> =
            spec.elements().map(|w| (w, f.eval(w))).collect();
        RedeiPoly::from_pairs(spec, &pairs)
    }

    /// Number of linear factors D.
    pub fn degree(&self) -> usize {
        self.coeffs_by_x.len() - 1
    }

    /// r_i(Y), 1 ≤ i ≤ D: the coefficient of X^(D−i).
    pub fn r(&self, i: usize) -> &Poly {
        let d = self.degree();
        assert!((1..=d).contains(&i), "r_i defined for 1 ≤ i ≤ D");
        &self.coeffs_by_x[d - i]
    }

    /// The univariate polynomial R(X, y).
    pub fn specialize(&self, spec: &FieldSpec, y: FieldElem) -> Poly {
        let coeffs: Vec<FieldElem> = self
            .coeffs_by_x
            .iter()
            .map(|c| c.eval(spec, y))
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

pub fn redei_poly_of_function(spec: &FieldSpec, f: &FieldFn) -> RedeiPoly {
    RedeiPoly::from_function(spec, f)
}

/// Which Rédei coefficients vanish, and how big the lacunary parts of the
/// direction specializations get.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VanishingProfile {
    /// Indices i with r_i ≡ 0 as a polynomial in Y.
    pub identically_zero: Vec<usize>,
    /// Indices i with r_i(y) = 0 for every y outside the direction set.
    pub zero_off_dirs: Vec<usize>,
    /// max over y in the direction set of deg(R(X,y) − X^D); None if every
    /// such specialization is exactly X^D.
    pub deg_g_max: Option<usize>,
}

impl VanishingProfile {
    /// The computationally forced vanishing range for a function graph:
    /// r_i ≡ 0 for every i ≤ q − N except i = q − 1.
    pub fn low_indices_vanish(&self, d_total: usize, n_dirs: usize) -> bool {
        (1..=d_total.saturating_sub(n_dirs))
            .filter(|&i| i != d_total - 1)
            .all(|i| self.identically_zero.contains(&i))
    }
}

pub fn vanishing_profile(
    spec: &FieldSpec,
    r: &RedeiPoly,
    dirs: &BTreeSet<FieldElem>,
) -> VanishingProfile {
    let d = r.degree();
    let off_dirs: Vec<FieldElem> = spec.elements().filter(|y| !dirs.contains(y)).collect();
    let mut identically_zero = Vec::new();
    let mut zero_off_dirs = Vec::new();
    for i in 1..=d {
        let ri = r.r(i);
        if ri.is_zero() {
            identically_zero.push(i);
        }
        if off_dirs.iter().all(|&y| ri.eval(spec, y).is_zero()) {
            zero_off_dirs.push(i);
        }
    }
    let mut deg_g_max = None;
    for &y in dirs {
        let mut s = r.specialize(spec, y);
        s = s.sub(&Poly::x_pow(d), spec);
        if let Some(dg) = s.degree() {
            deg_g_max = Some(deg_g_max.map_or(dg, |m: usize| m.max(dg)));
        }
    }
    VanishingProfile {
        identically_zero,
        zero_off_dirs,
        deg_g_max,
    }
}

/// The full Rédei analysis of a blocking set with a tangent.
#[derive(Clone, Debug)]
pub struct BlockingRedei {
    /// Collineation that moved the set into standard position.
    pub tau: Collineation,
    /// Affine pairs (a_i, b_i) of the q + d points off the tangent point.
    pub pairs: Vec<(FieldElem, FieldElem)>,
    /// R[X,Y] = ∏ (X − a_i·Y + b_i), degree q + d.
    pub redei: RedeiPoly,
    /// f(X) = ∏ (X − a_i).
    pub f_x: Poly,
    /// Lacunary split of f: X^q·g + h.
    pub profile: LacunaryProfile,
    /// d = |B| − q − 1.
    pub d: usize,
    /// X^q − X divides R[X,y] for every y ∈ GF(q).
    pub divisibility_ok: bool,
    /// r_i ≡ 0 for i = d+1, …, q−2.
    pub vanishing_ok: bool,
    /// deg g = d and deg h ≤ d + 1.
    pub shape_ok: bool,
}

/// Moves a blocking set into standard position and verifies the divisibility
/// and coefficient-vanishing structure of its Rédei polynomial. The booleans
/// in the report record genuinely computed checks; callers assert them.
pub fn blocking_redei(plane: &Plane, b: &PointSet) -> Result<BlockingRedei, RedeiError> {
    let spec = plane.spec();
    let q = spec.q();
    if plane.line_counts(b).contains(&0) {
        return Err(RedeiError::NotBlocking);
    }
    if b.len() > 2 * q as usize {
        // f(X) would reach degree 2q and the X^q·g + h split no longer applies
        return Err(RedeiError::SetTooLarge { size: b.len(), q });
    }
    let (tau, pairs) = match standard_position(plane, b) {
        Ok(v) => v,
        Err(PlaneError::NoTangent) => return Err(RedeiError::NoTangent),
        Err(_) => unreachable!("standard position only fails for missing tangents"),
    };
    let d = b.len() - 1 - q as usize;
    let redei = RedeiPoly::from_pairs(spec, &pairs);

    let xq_minus_x = Poly::x_pow(q as usize).sub(&Poly::x_pow(1), spec);
    let divisibility_ok = spec
        .elements()
        .all(|y| xq_minus_x.divides(&redei.specialize(spec, y), spec));

    let vanishing_ok = (d + 1..=q as usize - 2).all(|i| redei.r(i).is_zero());

    let roots: Vec<FieldElem> = pairs.iter().map(|&(a, _)| a).collect();
    let f_x = Poly::from_roots(spec, &roots);
    let profile = lacunary_split(&f_x, spec).map_err(|e| match e {
        PolyError::DegreeTooLarge { .. } => RedeiError::SetTooLarge { size: b.len(), q },
        _ => unreachable!("split of a nonzero product"),
    })?;
    let deg_g = profile.g.degree().unwrap_or(0);
    let deg_h = profile.h.degree().unwrap_or(0);
    let shape_ok = deg_g == d && deg_h <= d + 1;

    Ok(BlockingRedei {
        tau,
        pairs,
        redei,
        f_x,
        profile,
        d,
        divisibility_ok,
        vanishing_ok,
        shape_ok,
    })
}

/// For each point of B (ascending index), the number of tangents through it:
/// lines meeting B in exactly that point.
pub fn tangent_profile(plane: &Plane, b: &PointSet) -> Vec<usize> {
    let counts = plane.line_counts(b);
    b.members()
        .iter()
        .map(|&p| {
            plane
                .lines_through(p)
                .iter()
                .filter(|&&l| counts[l as usize] == 1)
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::{directions_of, example_function, ExampleKind};
    use crate::fpoly::p_power_index;
    use crate::gf::make_field;

    #[test]
    fn zero_function_specializations() {
        let f5 = make_field(5, 1, None).unwrap();
        let zero = FieldFn::from_fn(&f5, |_| FieldElem::ZERO);
        let r = redei_poly_of_function(&f5, &zero);
        assert_eq!(r.degree(), 5);
        // y ≠ 0: factors (X − w·y) run over all roots: X^q − X
        let xq_minus_x = Poly::x_pow(5).sub(&Poly::x_pow(1), &f5);
        for y in f5.elements().filter(|y| !y.is_zero()) {
            assert_eq!(r.specialize(&f5, y), xq_minus_x);
        }
        // y = 0 ∈ D_f: all factors X, so R(X,0) = X^q (g ≡ 0)
        assert_eq!(r.specialize(&f5, FieldElem::ZERO), Poly::x_pow(5));
    }

    #[test]
    fn identity_function_collapses_at_y_one() {
        let f7 = make_field(7, 1, None).unwrap();
        let ident = FieldFn::from_fn(&f7, |x| x);
        let r = redei_poly_of_function(&f7, &ident);
        assert_eq!(r.specialize(&f7, FieldElem::ONE), Poly::x_pow(7));
    }

    #[test]
    fn direct_product_oracle_matches_iterative_expansion() {
        // compare the specialized bivariate product against a univariate
        // product built independently, for every y
        let f7 = make_field(7, 1, None).unwrap();
        let f = example_function(ExampleKind::HalfPower, &f7).unwrap();
        let r = redei_poly_of_function(&f7, &f);
        for y in f7.elements() {
            let direct = f7.elements().fold(Poly::one(), |acc, w| {
                let root = f7.sub(f7.mul(w, y), f.eval(w)); // X = wy − f(w)
                acc.mul_linear_factor(&f7, root)
            });
            assert_eq!(r.specialize(&f7, y), direct, "y = {y}");
        }
    }

    #[test]
    fn off_direction_specializations_are_xq_minus_x() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = example_function(ExampleKind::HalfPower, &f9).unwrap();
        let rep = directions_of(&f9, &f);
        assert_eq!(rep.n_dirs, 6);
        let r = redei_poly_of_function(&f9, &f);
        let xq_minus_x = Poly::x_pow(9).sub(&Poly::x_pow(1), &f9);
        for y in f9.elements() {
            let s = r.specialize(&f9, y);
            if rep.dirs.contains(&y) {
                assert_ne!(s, xq_minus_x, "directions give proper lacunary parts");
            } else {
                assert_eq!(s, xq_minus_x);
            }
        }
        // off directions, r_{q−1}(y) = −1 and all other r_i(y) = 0
        let minus_one = f9.neg(FieldElem::ONE);
        for y in f9.elements().filter(|y| !rep.dirs.contains(y)) {
            for i in 1..=9 {
                let v = r.r(i).eval(&f9, y);
                if i == 8 {
                    assert_eq!(v, minus_one);
                } else if i == 9 {
                    assert!(v.is_zero(), "r_q(y) = 0 since R(0,y) = 0·…");
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn vanishing_profile_of_cube_over_gf5() {
        let f5 = make_field(5, 1, None).unwrap();
        let f = example_function(ExampleKind::HalfPower, &f5).unwrap();
        let rep = directions_of(&f5, &f);
        assert_eq!(rep.n_dirs, 4);
        let r = redei_poly_of_function(&f5, &f);
        let prof = vanishing_profile(&f5, &r, &rep.dirs);
        // q − N = 1: r_1 ≡ 0
        assert!(prof.identically_zero.contains(&1));
        assert!(prof.low_indices_vanish(5, rep.n_dirs));
        // deg g ≤ N − 1
        assert!(prof.deg_g_max.unwrap() <= rep.n_dirs - 1);
        // Y-degree bound: deg_Y r_i < i except i = q−1
        for i in 1..=5 {
            let dy = r.r(i).degree().map_or(0, |d| d);
            if i != 4 {
                assert!(r.r(i).is_zero() || dy < i, "deg_Y r_{i} < {i}");
            } else {
                assert!(dy <= i);
            }
        }
    }

    #[test]
    fn frobenius_specializations_live_in_x_cubed() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = example_function(ExampleKind::FrobPower { e: 1 }, &f9).unwrap();
        let rep = directions_of(&f9, &f);
        let r = redei_poly_of_function(&f9, &f);
        for &y in &rep.dirs {
            let s = r.specialize(&f9, y);
            assert!(p_power_index(&s, &f9) >= 1, "support in GF(9)[X³]");
        }
    }

    #[test]
    fn blocking_redei_of_a_line() {
        // a full line: size q+1, d = 0
        let f3 = make_field(3, 1, None).unwrap();
        let plane = Plane::new(f3.clone());
        let line = PointSet::from_indices(plane.points_on(0).to_vec());
        let rep = blocking_redei(&plane, &line).unwrap();
        assert_eq!(rep.d, 0);
        assert!(rep.divisibility_ok);
        assert!(rep.vanishing_ok);
        assert!(rep.shape_ok);
        assert_eq!(rep.pairs.len(), 3);
        // standard position maps a line through (0:1:0) to a vertical line:
        // common abscissa
        let a0 = rep.pairs[0].0;
        assert!(rep.pairs.iter().all(|&(a, _)| a == a0));
    }

    #[test]
    fn blocking_redei_of_baer_subplane() {
        let f9 = make_field(3, 2, None).unwrap();
        let plane = Plane::new(f9.clone());
        let sub: Vec<u32> = (0..plane.size() as u32)
            .filter(|&p| {
                let t = plane.point(p);
                t.iter().all(|c| c.rep() < 3) // coordinates in GF(3)
            })
            .collect();
        assert_eq!(sub.len(), 13);
        let baer = PointSet::from_indices(sub);
        let rep = blocking_redei(&plane, &baer).unwrap();
        assert_eq!(rep.d, 3);
        assert!(rep.divisibility_ok, "X^q − X divides all specializations");
        assert!(rep.vanishing_ok, "r_i ≡ 0 for i = 4..7");
        assert!(rep.shape_ok, "deg g = 3, deg h ≤ 4");
    }

    #[test]
    fn tangent_profile_of_a_line_and_error_paths() {
        let f3 = make_field(3, 1, None).unwrap();
        let plane = Plane::new(f3.clone());
        let line = PointSet::from_indices(plane.points_on(0).to_vec());
        // every point of a line lies on q tangents (its other lines)
        assert_eq!(tangent_profile(&plane, &line), vec![3, 3, 3, 3]);
        let point = PointSet::from_indices(vec![0]);
        assert_eq!(
            blocking_redei(&plane, &point).unwrap_err(),
            RedeiError::NotBlocking
        );
        // the whole plane blocks but has no tangent
        let all = PointSet::from_indices((0..plane.size() as u32).collect());
        assert_eq!(
            blocking_redei(&plane, &all).unwrap_err(),
            RedeiError::SetTooLarge { size: 13, q: 3 }
        );
    }
}
