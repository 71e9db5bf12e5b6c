//! Blocking sets: spectrum analysis, minimality, classical lower bounds with
//! exact integer comparisons, and the standard constructions (Baer subplanes,
//! Singer-orbit Baer partitions, Rédei-type graphs, line triangles).
//!
//! All irrational bound thresholds (√q, q^(2/3), 2^(−1/3)) are decided by
//! comparing integer powers, never floating point: e.g. c ≥ 2^(−1/3)·q^(2/3)
//! ⇔ 2c³ ≥ q².

use std::collections::BTreeMap;

use thiserror::Error;

use crate::directions::{directions_of, FieldFn};
use crate::gf::FieldElem;
use crate::plane::{singer_cycle, Plane, PointSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockingError {
    #[error("the field order {q} is not a square")]
    NotSquare { q: u32 },
    #[error("index {index} out of range: the partition has {count} members")]
    BadIndex { index: usize, count: usize },
    #[error("bound hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("size {size} exceeds the guaranteed bound {bound}")]
    SizeBoundViolated { size: usize, bound: u64 },
    #[error("the set does not block every line")]
    NotBlocking,
}

/// Everything `analyze` measures about a point set viewed as a (t-fold)
/// blocking set candidate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockingReport {
    /// Largest t such that every line meets B in at least t points
    /// (0 when some line misses B).
    pub t_max: usize,
    /// Intersection size ↦ number of lines; counts sum to q²+q+1.
    pub spectrum: BTreeMap<usize, usize>,
    /// Every point of B lies on a line meeting B in exactly t_max points.
    pub minimal: bool,
    /// Some line l has |B| = q + |B ∩ l|.
    pub redei_type: bool,
    /// Every spectrum key is ≡ 1 mod p (meaningful for small minimal sets).
    pub szonyi_ok: bool,
    /// |B| − q − 1.
    pub d: i64,
}

impl BlockingReport {
    /// Whether B contains a full line.
    pub fn contains_line(&self, q: u32) -> bool {
        self.spectrum.contains_key(&(q as usize + 1))
    }
}

pub fn analyze(plane: &Plane, b: &PointSet) -> BlockingReport {
    let q = plane.q();
    let p = plane.spec().p() as usize;
    let counts = plane.line_counts(b);
    let t_max = counts.iter().copied().min().unwrap_or(0);
    let mut spectrum = BTreeMap::new();
    for &c in &counts {
        *spectrum.entry(c).or_insert(0usize) += 1;
    }
    let minimal = is_minimal_t_fold(plane, &counts, b, t_max);
    let redei_type = counts.iter().any(|&c| b.len() == q as usize + c);
    let szonyi_ok = spectrum.keys().all(|&k| k % p == 1);
    BlockingReport {
        t_max,
        spectrum,
        minimal,
        redei_type,
        szonyi_ok,
        d: b.len() as i64 - q as i64 - 1,
    }
}

/// Tangent characterization of minimality at level t: every point of B lies
/// on a line meeting B in exactly t points, so no point can be deleted.
pub fn is_minimal_t_fold(plane: &Plane, counts: &[usize], b: &PointSet, t: usize) -> bool {
    b.members().iter().all(|&p| {
        plane
            .lines_through(p)
            .iter()
            .any(|&l| counts[l as usize] == t)
    })
}

// ---------------------------------------------------------------------------
// Lower bounds

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundModel {
    /// Nontrivial blocking sets: |B| ≥ q + √q + 1.
    Bruen,
    /// Prime order, nontrivial: |B| ≥ 3(p+1)/2.
    BlokhuisPrime,
    /// t-fold blocking sets of size t(q+1) + c: the three-case c bound.
    BbsTFold,
    /// Double blocking sets in PG(2,p): |B| ≥ 5(p+1)/2, stated for p ≥ 5
    /// (line triangles of size 3p beat it for p ∈ {2,3}).
    DoubleBallBlokhuis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub p: u64,
    pub n: u32,
    pub t: u32,
    pub model: BoundModel,
}

/// Smallest integer c ≥ 0 with mult·c³ ≥ rhs.
fn min_cube_root(mult: u128, rhs: u128) -> u64 {
    let mut c = 0u64;
    while mult * (c as u128).pow(3) < rhs {
        c += 1;
    }
    c
}

/// Smallest integer c with c² ≥ n.
fn ceil_sqrt(n: u64) -> u64 {
    let mut c = (n as f64).sqrt() as u64;
    while c * c < n {
        c += 1;
    }
    while c > 0 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c
}

/// The guaranteed minimum size of the queried kind of blocking set.
/// Every comparison is exact integer arithmetic.
pub fn lower_bound(qry: &BoundQuery) -> Result<u64, BlockingError> {
    let p = qry.p;
    let n = qry.n;
    let q: u64 = p.pow(n);
    let t = qry.t as u64;
    let fail = |msg: &str| Err(BlockingError::HypothesisViolated(msg.to_string()));
    match qry.model {
        BoundModel::Bruen => {
            if t != 1 {
                return fail("Bruen bound applies to 1-fold blocking sets");
            }
            Ok(q + 1 + ceil_sqrt(q))
        }
        BoundModel::BlokhuisPrime => {
            if n != 1 {
                return fail("prime-order bound needs n = 1");
            }
            if t != 1 {
                return fail("prime-order bound applies to 1-fold blocking sets");
            }
            Ok((3 * (p + 1)).div_ceil(2))
        }
        BoundModel::DoubleBallBlokhuis => {
            if n != 1 {
                return fail("double-blocking bound needs n = 1");
            }
            if t != 2 {
                return fail("double-blocking bound applies to 2-fold blocking sets");
            }
            if p < 5 {
                return fail("double-blocking bound is stated for p ≥ 5");
            }
            Ok(5 * (p + 1) / 2)
        }
        BoundModel::BbsTFold => {
            if t == 0 {
                return fail("t must be positive");
            }
            // c_p = 2^(−1/3) for p ≤ 3, 1 for p > 3:
            // c ≥ c_p·q^(2/3) ⇔ mult·c³ ≥ q² with mult = 2 resp. 1
            let mult: u128 = if p <= 3 { 2 } else { 1 };
            let q2 = (q as u128).pow(2);
            if n % 2 == 1 {
                // odd exponent: t < q/2 − c_p·q^(2/3)/2 ⇔ c_p·q^(2/3) < q − 2t
                //               ⇔ q² < mult·(q − 2t)³
                if 2 * t >= q {
                    return fail("odd-exponent case needs t < q/2");
                }
                let r = (q - 2 * t) as u128;
                if q2 >= mult * r.pow(3) {
                    return fail("odd-exponent case needs q² < mult·(q−2t)³");
                }
                let c = min_cube_root(mult, q2);
                Ok(t * (q + 1) + c)
            } else {
                // square q: t < q^(1/4)/2 ⇔ (2t)⁴ < q
                let root = p.pow(n / 2);
                if q <= 4 {
                    return fail("square case needs q > 4");
                }
                if (2 * t).pow(4) >= q {
                    return fail("square case needs t < q^(1/4)/2");
                }
                // conclusion: c ≥ t√q unless c already clears the cap, so the
                // sound unconditional bound adds min(t√q, cap)
                let cap = if n == 2 {
                    // p·⌈1/4 + √((p+1)/2)⌉: smallest m with (4m−1)² ≥ 8(p+1)
                    let mut m = 1u64;
                    while (4 * m - 1).pow(2) < 8 * (p + 1) {
                        m += 1;
                    }
                    p * m
                } else {
                    min_cube_root(mult, q2)
                };
                Ok(t * (q + 1) + (t * root).min(cap))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Constructions

#[derive(Clone, Copy, Debug)]
pub enum Construction<'a> {
    /// Canonical Baer subplane: all coordinates in GF(√q).
    BaerSubplane,
    /// Member of the Singer-orbit partition into q − √q + 1 Baer subplanes.
    BaerPartitionMember { index: usize },
    /// Graph of f plus its direction points on the line at infinity.
    RedeiGraph { f: &'a FieldFn },
    /// The triangle of lines x = 0, y = 0, z = 0: a 2-fold blocking set of
    /// size 3q.
    ThreeLines,
    /// Union of the first t Baer partition members: a t-fold blocking set.
    PartitionUnion { t: usize },
}

pub fn construct(plane: &Plane, kind: Construction) -> Result<PointSet, BlockingError> {
    let spec = plane.spec();
    let q = spec.q();
    match kind {
        Construction::BaerSubplane => {
            let e = baer_subfield_degree(plane)?;
            let sub = spec.subfield_elements(e).expect("e divides n");
            let in_sub = |x: FieldElem| sub.contains(&x);
            Ok(PointSet::from_indices(
                (0..plane.size() as u32)
                    .filter(|&p| plane.point(p).iter().all(|&c| in_sub(c)))
                    .collect(),
            ))
        }
        Construction::BaerPartitionMember { index } => {
            let members = baer_partition(plane)?;
            let count = members.len();
            members
                .into_iter()
                .nth(index)
                .ok_or(BlockingError::BadIndex { index, count })
        }
        Construction::RedeiGraph { f } => {
            let mut pts: Vec<u32> = spec
                .elements()
                .map(|w| {
                    plane
                        .point_index([w, f.eval(w), FieldElem::ONE])
                        .expect("affine point")
                })
                .collect();
            for m in directions_of(spec, f).dirs {
                pts.push(
                    plane
                        .point_index([FieldElem::ONE, m, FieldElem::ZERO])
                        .expect("infinite point"),
                );
            }
            Ok(PointSet::from_indices(pts))
        }
        Construction::ThreeLines => {
            let mut pts = Vec::with_capacity(3 * q as usize);
            for coords in [
                [FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO],
                [FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO],
                [FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE],
            ] {
                let l = plane.line_index(coords).expect("axis line");
                pts.extend_from_slice(plane.points_on(l));
            }
            Ok(PointSet::from_indices(pts))
        }
        Construction::PartitionUnion { t } => {
            let members = baer_partition(plane)?;
            if t > members.len() {
                return Err(BlockingError::BadIndex {
                    index: t,
                    count: members.len(),
                });
            }
            let mut pts = Vec::new();
            for m in members.into_iter().take(t) {
                pts.extend_from_slice(m.members());
            }
            Ok(PointSet::from_indices(pts))
        }
    }
}

fn baer_subfield_degree(plane: &Plane) -> Result<u32, BlockingError> {
    let n = plane.spec().n();
    if !n.is_multiple_of(2) {
        return Err(BlockingError::NotSquare { q: plane.q() });
    }
    Ok(n / 2)
}

/// Partition of the plane into q − √q + 1 disjoint Baer subplanes: the
/// orbits of the order-(q+√q+1) subgroup of a Singer cycle.
pub fn baer_partition(plane: &Plane) -> Result<Vec<PointSet>, BlockingError> {
    baer_subfield_degree(plane)?;
    let q = plane.q() as usize;
    let root = (plane.spec().p() as u64).pow(plane.spec().n() / 2) as usize;
    let member_count = q - root + 1; // index of σ^k generating the subgroup
    let sigma = singer_cycle(plane);

    // walk the full Singer orbit once; orbit position i mod member_count
    // labels the partition member
    let mut order = Vec::with_capacity(plane.size());
    let mut cur = 0u32;
    for _ in 0..plane.size() {
        order.push(cur);
        cur = sigma.apply_point(plane, cur);
    }
    debug_assert_eq!(cur, 0);
    let mut members = vec![Vec::new(); member_count];
    for (i, &pt) in order.iter().enumerate() {
        members[i % member_count].push(pt);
    }
    Ok(members.into_iter().map(PointSet::from_indices).collect())
}

/// Verifies that a set produced by the linear-set construction over GF(q)
/// with parameter s blocks the plane and respects the size bound
/// (q^(s+1) − 1)/(q − 1).
pub fn linear_blocking_check(
    plane: &Plane,
    b: &PointSet,
    q: u64,
    s: u32,
) -> Result<(), BlockingError> {
    let bound = (q.pow(s + 1) - 1) / (q - 1);
    if b.len() as u64 > bound {
        return Err(BlockingError::SizeBoundViolated {
            size: b.len(),
            bound,
        });
    }
    if plane.line_counts(b).contains(&0) {
        return Err(BlockingError::NotBlocking);
    }
    Ok(())
}
