//! The acceptance battery: thirteen self-contained criterion runners, each
//! exercising one advertised capability end-to-end and reporting pass/fail
//! with a human-readable summary. Randomized sweeps derive their generators
//! from the configured seed, so reports are reproducible by construction.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arcs::{arc_analyze, extend_to_hyperoval, is_conic};
use crate::blocking::{
    analyze, baer_partition, construct, is_minimal_t_fold, lower_bound, BlockingReport,
    BoundModel, BoundQuery, Construction,
};
use crate::directions::{
    check_intervals, directions_of, example_function, expected_direction_count, ExampleKind,
    FieldFn,
};
use crate::fpoly::{classify_lacunary_cases, classify_xq_plus_g, lacunary_split, Poly};
use crate::gf::{make_field, FieldElem, FieldSpec};
use crate::linearsets::{
    b_of_w, enumerate_subspaces, max_scattered_dim, ReductionContext,
};
use crate::plane::{are_isomorphic, Plane, PointSet};
use crate::redei::{redei_poly_of_function, tangent_profile, vanishing_profile};
use crate::search::{
    certify_nonexistence, isomorph_reduce, run, SearchKind, SearchMode, SearchProblem,
};

/// All criterion names, in report order.
pub const CRITERIA: [&str; 13] = [
    "direction-counts",
    "direction-intervals",
    "direction-classification",
    "redei-structure",
    "xq-plus-g-trichotomy",
    "lacunary-nine-cases",
    "bruen-sharpness",
    "prime-plane-minimum",
    "mod-p-intersections",
    "baer-partition-and-bounds",
    "arcs-barlotti-segre",
    "linear-sets",
    "engine-soundness",
];

#[derive(Clone, Debug)]
pub struct BatteryConfig {
    /// Run the parts that take more than a few minutes (currently only the
    /// 21-point maximal-arc nonexistence certificate).
    pub allow_long: bool,
    /// Base seed for every randomized sweep.
    pub seed: u64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            allow_long: false,
            seed: 2024,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    /// True when a long-gated part was skipped; the criterion can still
    /// pass on its default-scope checks.
    pub skipped_long: bool,
}

/// Runs one criterion by name.
pub fn run_criterion(name: &str, cfg: &BatteryConfig) -> Option<CriterionResult> {
    let f = match name {
        "direction-counts" => direction_counts,
        "direction-intervals" => direction_intervals,
        "direction-classification" => direction_classification,
        "redei-structure" => redei_structure,
        "xq-plus-g-trichotomy" => xq_plus_g_trichotomy,
        "lacunary-nine-cases" => lacunary_nine_cases,
        "bruen-sharpness" => bruen_sharpness,
        "prime-plane-minimum" => prime_plane_minimum,
        "mod-p-intersections" => mod_p_intersections,
        "baer-partition-and-bounds" => baer_partition_and_bounds,
        "arcs-barlotti-segre" => arcs_barlotti_segre,
        "linear-sets" => linear_sets,
        "engine-soundness" => engine_soundness,
        _ => return None,
    };
    Some(f(cfg))
}

/// Runs the full battery in report order.
pub fn run_all(cfg: &BatteryConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|name| run_criterion(name, cfg).expect("listed criterion"))
        .collect()
}

// ---------------------------------------------------------------------------
// Shared plumbing

struct Checker {
    name: &'static str,
    checked: usize,
    violations: usize,
    notes: Vec<String>,
    skipped_long: bool,
}

impl Checker {
    fn new(name: &'static str) -> Checker {
        Checker {
            name,
            checked: 0,
            violations: 0,
            notes: Vec::new(),
            skipped_long: false,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.notes.len() < 8 {
                self.notes.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> CriterionResult {
        let mut details = format!("{} checks, {} violations", self.checked, self.violations);
        for n in &self.notes {
            details.push_str("; ");
            details.push_str(n);
        }
        CriterionResult {
            name: self.name,
            passed: self.violations == 0,
            details,
            skipped_long: self.skipped_long,
        }
    }
}

fn field(q: u64) -> FieldSpec {
    let (p, n) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        16 => (2, 4),
        25 => (5, 2),
        27 => (3, 3),
        _ => (q, 1),
    };
    make_field(p, n, None).expect("supported field order")
}

fn blocking_problem(q: u64, t: u32, bound: u32, mode: SearchMode, nontrivial: bool) -> SearchProblem {
    let mut p = SearchProblem::new(field(q), SearchKind::TFoldBlocking { t }, bound, mode);
    p.nontrivial = nontrivial;
    p.budget = u64::MAX;
    p
}

fn arc_problem(q: u64, kind: SearchKind, size: u32, mode: SearchMode) -> SearchProblem {
    let mut p = SearchProblem::new(field(q), kind, size, mode);
    p.budget = u64::MAX;
    p
}

/// One random table with f(0) = 0.
fn random_table(spec: &FieldSpec, rng: &mut ChaCha8Rng) -> FieldFn {
    let q = spec.q();
    let mut table = vec![FieldElem::ZERO; q as usize];
    for slot in table.iter_mut().skip(1) {
        *slot = FieldElem::from_rep(rng.random_range(0..q));
    }
    FieldFn::from_table(spec, table).expect("table has length q")
}

/// Calls `body` for every function with f(0) = 0 on GF(q).
fn for_each_table(spec: &FieldSpec, mut body: impl FnMut(&FieldFn)) {
    let q = spec.q() as usize;
    let mut reps = vec![0u32; q]; // reps[0] stays 0
    loop {
        let table: Vec<FieldElem> = reps.iter().map(|&r| FieldElem::from_rep(r)).collect();
        let f = FieldFn::from_table(spec, table).expect("table has length q");
        body(&f);
        // odometer over positions 1..q
        let mut i = 1;
        while i < q {
            reps[i] += 1;
            if reps[i] < q as u32 {
                break;
            }
            reps[i] = 0;
            i += 1;
        }
        if i == q {
            return;
        }
    }
}

fn rng_for(cfg: &BatteryConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

// ---------------------------------------------------------------------------
// 1. direction-counts

fn direction_counts(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("direction-counts");
    let half: &[u64] = &[5, 7, 9, 25, 27];
    for &q in half {
        let spec = field(q);
        let f = example_function(ExampleKind::HalfPower, &spec).expect("odd q");
        let want = expected_direction_count(ExampleKind::HalfPower, &spec);
        let got = directions_of(&spec, &f).n_dirs;
        c.check(got == want, || format!("half power q={q}: {got} ≠ {want}"));
    }
    for &(q, e) in &[(9u64, 1u32), (16, 2), (27, 1)] {
        let spec = field(q);
        let kind = ExampleKind::FrobPower { e };
        let f = example_function(kind, &spec).expect("e divides n");
        let want = expected_direction_count(kind, &spec);
        let got = directions_of(&spec, &f).n_dirs;
        c.check(got == want, || format!("frobenius q={q} e={e}: {got} ≠ {want}"));
    }
    for &(q, e) in &[(4u64, 1u32), (8, 1), (9, 1), (16, 2)] {
        let spec = field(q);
        let kind = ExampleKind::SubfieldTrace { e };
        let f = example_function(kind, &spec).expect("e divides n");
        let want = expected_direction_count(kind, &spec);
        let got = directions_of(&spec, &f).n_dirs;
        c.check(got == want, || format!("trace q={q} e={e}: {got} ≠ {want}"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 2. direction-intervals and 3. direction-classification

fn interval_sweep(c: &mut Checker, cfg: &BatteryConfig, classify_mode: bool) {
    let mut overlaps = 0usize;
    let mut per_function = |spec: &FieldSpec, f: &FieldFn| {
        let report = directions_of(spec, f);
        if report.n_dirs == 1 {
            return; // linear
        }
        if classify_mode {
            if report.cases.len() > 1 {
                overlaps += 1;
            }
            c.check(!report.cases.is_empty(), || {
                format!("q={} table uncovered, N={}", spec.q(), report.n_dirs)
            });
            if report.linearity_applicable(spec) {
                c.check(report.linearity_holds(), || {
                    format!(
                        "q={} N={} e={}: linearity conclusion fails",
                        spec.q(),
                        report.n_dirs,
                        report.e
                    )
                });
            }
        } else {
            let ivs = check_intervals(spec, report.n_dirs).expect("N in 2..=q");
            c.check(!ivs.is_empty(), || {
                format!("q={} N={} in no interval", spec.q(), report.n_dirs)
            });
        }
    };
    for q in [4u64, 5, 7] {
        let spec = field(q);
        for_each_table(&spec, |f| per_function(&spec, f));
    }
    for q in [8u64, 9] {
        let spec = field(q);
        let mut rng = rng_for(cfg, q ^ if classify_mode { 0x3 } else { 0x2 });
        for _ in 0..100_000 {
            let f = random_table(&spec, &mut rng);
            per_function(&spec, &f);
        }
    }
    if classify_mode {
        c.note(format!("{overlaps} case overlaps (reported, not failed)"));
    }
}

fn direction_intervals(cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("direction-intervals");
    interval_sweep(&mut c, cfg, false);
    c.finish()
}

fn direction_classification(cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("direction-classification");
    interval_sweep(&mut c, cfg, true);
    c.finish()
}

// ---------------------------------------------------------------------------
// 4. redei-structure

fn redei_check_function(c: &mut Checker, spec: &FieldSpec, f: &FieldFn) {
    let q = spec.q() as usize;
    let report = directions_of(spec, f);
    let r = redei_poly_of_function(spec, f);
    let xq_minus_x = Poly::x_pow(q).sub(&Poly::x_pow(1), spec);
    for y in spec.elements() {
        let s = r.specialize(spec, y);
        if report.dirs.contains(&y) {
            let g = s.sub(&Poly::x_pow(q), spec);
            let deg_g = g.degree();
            if deg_g == Some(q - 1) {
                // the whole line at infinity is a direction set only when
                // N = q; the long-coefficient case is trivially "large"
                c.check(2 * (q - 1) > q, || {
                    format!("q={q}: deg g = q−1 yet not large")
                });
            } else {
                let tags = classify_xq_plus_g(&s, spec);
                c.check(tags.map(|t| !t.is_empty()).unwrap_or(false), || {
                    format!("q={q}: direction specialization escapes the trichotomy")
                });
            }
        } else {
            c.check(s == xq_minus_x, || {
                format!("q={q}: off-direction specialization is not X^q − X")
            });
        }
    }
    let profile = vanishing_profile(spec, &r, &report.dirs);
    c.check(profile.low_indices_vanish(q, report.n_dirs), || {
        format!("q={q}: low Rédei coefficients fail to vanish, N={}", report.n_dirs)
    });
}

fn redei_structure(cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("redei-structure");
    // the classical examples at q ≤ 9
    for q in [5u64, 7, 9] {
        let spec = field(q);
        let f = example_function(ExampleKind::HalfPower, &spec).expect("odd");
        redei_check_function(&mut c, &spec, &f);
    }
    {
        let spec = field(9);
        let f = example_function(ExampleKind::FrobPower { e: 1 }, &spec).expect("1 | 2");
        redei_check_function(&mut c, &spec, &f);
    }
    for q in [4u64, 8, 9] {
        let spec = field(q);
        let f = example_function(ExampleKind::SubfieldTrace { e: 1 }, &spec).expect("1 | n");
        redei_check_function(&mut c, &spec, &f);
    }
    // random corpus
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let spec = field(q);
        let mut rng = rng_for(cfg, q ^ 0x4);
        for _ in 0..1_000 {
            let f = random_table(&spec, &mut rng);
            redei_check_function(&mut c, &spec, &f);
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 5. xq-plus-g-trichotomy

/// Calls `body` on every multiset of q roots (as a nondecreasing rep vector)
/// whose field sum is zero.
fn for_each_zero_sum_multiset(spec: &FieldSpec, mut body: impl FnMut(&[FieldElem])) {
    let q = spec.q();
    let mut stack: Vec<u32> = Vec::with_capacity(q as usize);
    fn rec(
        spec: &FieldSpec,
        stack: &mut Vec<u32>,
        start: u32,
        sum: FieldElem,
        body: &mut impl FnMut(&[FieldElem]),
    ) {
        let q = spec.q();
        if stack.len() == q as usize {
            if sum.is_zero() {
                let roots: Vec<FieldElem> =
                    stack.iter().map(|&r| FieldElem::from_rep(r)).collect();
                body(&roots);
            }
            return;
        }
        for r in start..q {
            stack.push(r);
            let s = spec.add(sum, FieldElem::from_rep(r));
            rec(spec, stack, r, s, body);
            stack.pop();
        }
    }
    rec(spec, &mut stack, 0, FieldElem::ZERO, &mut body);
}

fn xq_plus_g_trichotomy(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("xq-plus-g-trichotomy");
    for q in [4u64, 5, 7, 8, 9] {
        let spec = field(q);
        let mut count = 0usize;
        for_each_zero_sum_multiset(&spec, |roots| {
            count += 1;
            let f = Poly::from_roots(&spec, roots);
            debug_assert!(f.coeff(q as usize - 1).is_zero());
            let tags = classify_xq_plus_g(&f, &spec);
            c.check(tags.as_ref().map(|t| !t.is_empty()).unwrap_or(false), || {
                format!("q={q}: fully reducible X^q+g with empty tag set")
            });
        });
        c.note(format!("q={q}: {count} polynomials"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 6. lacunary-nine-cases

fn lacunary_nine_cases(cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("lacunary-nine-cases");
    for q in [4u64, 8, 9] {
        let spec = field(q);
        let qs = spec.q();
        let mut rng = rng_for(cfg, q ^ 0x6);
        let mut sampled = 0usize;
        let mut attempts = 0usize;
        while sampled < 10_000 && attempts < 2_000_000 {
            attempts += 1;
            let deg = (qs + rng.random_range(0..qs)) as usize; // q ≤ deg < 2q
            let roots: Vec<FieldElem> = (0..deg)
                .map(|_| FieldElem::from_rep(rng.random_range(0..qs)))
                .collect();
            let f = Poly::from_roots(&spec, &roots);
            let profile = lacunary_split(&f, &spec).expect("degree below 2q");
            if !profile.coprime {
                continue; // X^q·g + h with a shared factor is out of scope
            }
            sampled += 1;
            let cases = classify_lacunary_cases(&f, &spec).expect("coprime split");
            c.check(!cases.cases.is_empty(), || {
                format!("q={q}: fully reducible X^q·g+h satisfies no case")
            });
        }
        c.check(sampled == 10_000, || {
            format!("q={q}: only {sampled} coprime samples in {attempts} attempts")
        });
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 7. bruen-sharpness

fn bruen_sharpness(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("bruen-sharpness");
    let p6 = blocking_problem(4, 1, 6, SearchMode::Exists, true);
    c.check(certify_nonexistence(&p6).is_ok(), || {
        "PG(2,4): a nontrivial blocking set of size ≤ 6 appeared".into()
    });

    let p7 = blocking_problem(4, 1, 7, SearchMode::EnumerateUpToIso, true);
    let out = run(&p7).expect("valid problem");
    c.check(out.exhausted && out.iso_classes == Some(1), || {
        format!("PG(2,4) size-7: {:?} classes", out.iso_classes)
    });
    if let Some(rep) = out.witnesses.first() {
        let plane = Plane::new(field(4));
        let report = analyze(&plane, rep);
        let want: std::collections::BTreeMap<usize, usize> =
            [(1, 14), (3, 7)].into_iter().collect();
        c.check(report.minimal && report.spectrum == want, || {
            format!("PG(2,4) witness is not a Baer subplane: {:?}", report.spectrum)
        });
    }

    let plane9 = Plane::new(field(9));
    let baer = construct(&plane9, Construction::BaerSubplane).expect("q is a square");
    let report = analyze(&plane9, &baer);
    let want: std::collections::BTreeMap<usize, usize> = [(1, 78), (4, 13)].into_iter().collect();
    c.check(report.spectrum == want, || {
        format!("PG(2,9) Baer spectrum {:?}", report.spectrum)
    });
    c.check(report.minimal, || "PG(2,9) Baer subplane not minimal".into());
    c.check(report.redei_type, || "PG(2,9) Baer subplane not Rédei type".into());
    c.finish()
}

// ---------------------------------------------------------------------------
// 8. prime-plane-minimum

fn prime_plane_minimum(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("prime-plane-minimum");
    let p8 = blocking_problem(5, 1, 8, SearchMode::Exists, true);
    c.check(certify_nonexistence(&p8).is_ok(), || {
        "PG(2,5): a nontrivial blocking set of size ≤ 8 appeared".into()
    });

    let plane5 = Plane::new(field(5));
    let p9 = blocking_problem(5, 1, 9, SearchMode::EnumerateAll, true);
    let out = run(&p9).expect("valid problem");
    c.check(out.exhausted && !out.witnesses.is_empty(), || {
        "PG(2,5): no size-9 witnesses".into()
    });
    c.note(format!("PG(2,5): {} minimal size-9 witnesses", out.witnesses.len()));
    for w in &out.witnesses {
        if w.len() != 9 || tangent_profile(&plane5, w).iter().any(|&t| t != 2) {
            c.check(false, || "PG(2,5) witness without 2 tangents per point".into());
            break;
        }
    }
    c.check(true, || unreachable!());

    let plane7 = Plane::new(field(7));
    let p12 = blocking_problem(7, 1, 12, SearchMode::EnumerateUpToIso, true);
    let out = run(&p12).expect("valid problem");
    c.check(out.exhausted && out.iso_classes == Some(2), || {
        format!("PG(2,7) ≤ 12: {:?} classes", out.iso_classes)
    });
    let reports: Vec<BlockingReport> =
        out.witnesses.iter().map(|w| analyze(&plane7, w)).collect();
    c.check(
        out.witnesses.iter().all(|w| w.len() == 12),
        || "PG(2,7): class below size 12".into(),
    );
    c.check(
        reports.iter().filter(|r| r.redei_type).count() == 1,
        || "PG(2,7): Rédei-type class count ≠ 1".into(),
    );
    for w in &out.witnesses {
        c.check(
            tangent_profile(&plane7, w).iter().all(|&t| t == 3),
            || "PG(2,7): point without exactly 3 tangents".into(),
        );
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 9. mod-p-intersections

fn mod_p_intersections(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("mod-p-intersections");
    // size < 3(q+1)/2: ≤ 14 at q = 9, ≤ 13 at q = 8
    for (q, p, bound) in [(9u64, 3usize, 14u32), (8, 2, 13)] {
        let plane = Plane::new(field(q));
        let prob = blocking_problem(q, 1, bound, SearchMode::EnumerateUpToIso, true);
        let out = run(&prob).expect("valid problem");
        c.check(out.exhausted, || format!("PG(2,{q}) search not exhausted"));
        c.check(!out.witnesses.is_empty(), || {
            format!("PG(2,{q}): no minimal blocking set below 3(q+1)/2")
        });
        for w in &out.witnesses {
            let spectrum = plane.spectrum(w);
            c.check(spectrum.keys().all(|&k| k % p == 1), || {
                format!("PG(2,{q}): intersection sizes {:?} not ≡ 1 mod {p}",
                    spectrum.keys().collect::<Vec<_>>())
            });
        }
        c.note(format!(
            "PG(2,{q}): {} classes, sizes {:?}",
            out.witnesses.len(),
            out.witnesses.iter().map(|w| w.len()).collect::<Vec<_>>()
        ));
        if q == 8 {
            c.check(out.witnesses.iter().map(|w| w.len()).min() == Some(13), || {
                "PG(2,8): minimum below the expected 13".into()
            });
            // the expected witness: graph of the subfield trace plus its
            // five directions
            let spec = field(8);
            let f = example_function(ExampleKind::SubfieldTrace { e: 1 }, &spec).expect("1|3");
            let trace_set = construct(&plane, Construction::RedeiGraph { f: &f })
                .expect("graph construction");
            c.check(trace_set.len() == 13, || {
                format!("trace construction has {} points", trace_set.len())
            });
            let report = analyze(&plane, &trace_set);
            c.check(report.minimal && report.redei_type, || {
                "trace construction not a minimal Rédei-type blocking set".into()
            });
            c.check(
                out.witnesses
                    .iter()
                    .any(|w| are_isomorphic(&plane, w, &trace_set).is_some()),
                || "trace construction not isomorphic to any found class".into(),
            );
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 10. baer-partition-and-bounds

fn baer_partition_and_bounds(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("baer-partition-and-bounds");
    let plane = Plane::new(field(9));
    let parts = baer_partition(&plane).expect("q = 9 is a square");
    c.check(parts.len() == 7, || format!("{} partition members", parts.len()));
    let mut seen = BTreeSet::new();
    let want: std::collections::BTreeMap<usize, usize> = [(1, 78), (4, 13)].into_iter().collect();
    for part in &parts {
        c.check(part.len() == 13, || format!("member of size {}", part.len()));
        c.check(analyze(&plane, part).spectrum == want, || {
            "partition member is not a Baer subplane".into()
        });
        for &p in part.members() {
            c.check(seen.insert(p), || "partition members overlap".into());
        }
    }
    c.check(seen.len() == 91, || format!("union covers {} points", seen.len()));

    let union2 = construct(&plane, Construction::PartitionUnion { t: 2 }).expect("enough members");
    c.check(union2.len() == 26, || format!("2-union size {}", union2.len()));
    let spectrum = plane.spectrum(&union2);
    c.check(spectrum.keys().all(|k| [2usize, 5].contains(k)), || {
        format!("2-union spectrum keys {:?}", spectrum.keys().collect::<Vec<_>>())
    });

    let bound = lower_bound(&BoundQuery {
        p: 3,
        n: 3,
        t: 2,
        model: BoundModel::BbsTFold,
    })
    .expect("hypotheses hold");
    c.check(bound == 2 * 28 + 8, || format!("t-fold bound {bound} ≠ 64"));
    c.finish()
}

// ---------------------------------------------------------------------------
// 11. arcs-barlotti-segre

fn arcs_barlotti_segre(cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("arcs-barlotti-segre");
    let plane4 = Plane::new(field(4));

    // hyperovals in PG(2,4)
    let hyper = arc_problem(4, SearchKind::MaximalArc { n: 2 }, 6, SearchMode::Exists);
    let out = run(&hyper).expect("valid problem");
    match out.witnesses.first() {
        Some(w) => {
            let report = arc_analyze(&plane4, w, 2);
            c.check(report.k == 6 && report.is_maximal, || {
                "PG(2,4) hyperoval fails maximality analysis".into()
            });
            c.check(report.k <= report.barlotti_bound, || "bound violated".into());
        }
        None => c.check(false, || "PG(2,4): no hyperoval found".into()),
    }

    // every 5-arc of PG(2,4) extends by its nucleus
    let arcs5 = arc_problem(4, SearchKind::KnArc { n: 2 }, 5, SearchMode::EnumerateAll);
    let out5 = run(&arcs5).expect("valid problem");
    c.check(out5.exhausted && !out5.witnesses.is_empty(), || {
        "PG(2,4): 5-arc enumeration incomplete".into()
    });
    c.note(format!("PG(2,4): {} five-arcs", out5.witnesses.len()));
    for w in &out5.witnesses {
        let report = arc_analyze(&plane4, w, 2);
        if report.k > report.barlotti_bound {
            c.check(false, || "Barlotti bound violated by a 5-arc".into());
            break;
        }
        match extend_to_hyperoval(&plane4, w) {
            Ok(h) => {
                if !(h.len() == 6 && arc_analyze(&plane4, &h, 2).is_maximal) {
                    c.check(false, || "nucleus extension is not a hyperoval".into());
                    break;
                }
            }
            Err(_) => {
                c.check(false, || "a 5-arc failed to extend by its nucleus".into());
                break;
            }
        }
    }
    c.check(true, || unreachable!());

    // Segre: every (q+1)-arc is a conic for q ∈ {5, 7}
    for q in [5u64, 7] {
        let plane = Plane::new(field(q));
        let prob = arc_problem(q, SearchKind::KnArc { n: 2 }, q as u32 + 1, SearchMode::EnumerateUpToIso);
        let out = run(&prob).expect("valid problem");
        c.check(out.exhausted && out.iso_classes == Some(1), || {
            format!("PG(2,{q}): {:?} classes of (q+1)-arcs", out.iso_classes)
        });
        for w in &out.witnesses {
            let report = arc_analyze(&plane, w, 2);
            c.check(report.k <= report.barlotti_bound, || "bound violated".into());
            c.check(
                matches!(is_conic(&plane, w), Ok(Some(_))),
                || format!("PG(2,{q}): a (q+1)-arc carries no conic"),
            );
        }
    }

    // nonexistence of 21-point (k,3) maximal arcs in PG(2,9)
    if cfg.allow_long {
        let prob = arc_problem(9, SearchKind::MaximalArc { n: 3 }, 21, SearchMode::Exists);
        match certify_nonexistence(&prob) {
            Ok(cert) => c.note(format!("21-point maximal arc refuted, {} nodes", cert.nodes)),
            Err(e) => c.check(false, || format!("21-point certificate failed: {e}")),
        }
    } else {
        c.skipped_long = true;
        c.note("21-point maximal-arc certificate skipped (long)".to_string());
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 12. linear-sets

fn linear_sets(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("linear-sets");
    let big = field(4);
    let small = field(2);
    let ctx = ReductionContext::new(&big, &small).expect("GF(4) extends GF(2)");
    let plane = Plane::new(big.clone());
    let spaces = enumerate_subspaces(&small, 6, 3);
    c.check(spaces.len() == 1395, || format!("{} 3-spaces", spaces.len()));
    for w in &spaces {
        let b = b_of_w(&ctx, w);
        let counts = plane.line_counts(&b);
        if !(b.len() <= 7 && counts.iter().all(|&x| x >= 1)) {
            c.check(false, || format!("B(W) of size {} fails to block", b.len()));
            break;
        }
    }
    c.check(true, || unreachable!());

    c.check(
        max_scattered_dim(&ctx, 6) == Ok(3),
        || "max scattered dimension in V(6,2) ≠ 3".into(),
    );
    let big9 = field(9);
    let small3 = field(3);
    let ctx9 = ReductionContext::new(&big9, &small3).expect("GF(9) extends GF(3)");
    c.check(
        max_scattered_dim(&ctx9, 6) == Ok(3),
        || "max scattered dimension in V(6,3) ≠ 3".into(),
    );

    // double-blocking minima
    for (q, min) in [(2u64, 6u32), (3, 9), (5, 15)] {
        let below = blocking_problem(q, 2, min - 1, SearchMode::Exists, false);
        c.check(certify_nonexistence(&below).is_ok(), || {
            format!("PG(2,{q}): double blocking below {min} appeared")
        });
        let at = blocking_problem(q, 2, min, SearchMode::Exists, false);
        let out = run(&at).expect("valid problem");
        match out.witnesses.first() {
            Some(w) => {
                let plane = Plane::new(field(q));
                let counts = plane.line_counts(w);
                let ok = w.len() == min as usize
                    && counts.iter().all(|&x| x >= 2)
                    && is_minimal_t_fold(&plane, &counts, w, 2);
                c.check(ok, || format!("PG(2,{q}): size-{min} witness fails checks"));
            }
            None => c.check(false, || format!("PG(2,{q}): no double blocking set of size {min}")),
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// 13. engine-soundness

/// All minimal t-fold blocking sets of size ≤ bound by full subset sweep.
fn naive_minimal_blocking(plane: &Plane, t: usize, bound: usize) -> Vec<PointSet> {
    let n = plane.size();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) > bound {
            continue;
        }
        let members: Vec<u32> = (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect();
        let set = PointSet::from_indices(members);
        let counts = plane.line_counts(&set);
        if counts.iter().all(|&x| x >= t) && is_minimal_t_fold(plane, &counts, &set, t) {
            out.push(set);
        }
    }
    out.sort();
    out
}

fn naive_arcs(plane: &Plane, n: usize, k: usize) -> Vec<PointSet> {
    let sz = plane.size();
    assert!(sz <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << sz) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let members: Vec<u32> = (0..sz as u32).filter(|&i| mask >> i & 1 == 1).collect();
        let set = PointSet::from_indices(members);
        if plane.line_counts(&set).iter().all(|&x| x <= n) {
            out.push(set);
        }
    }
    out.sort();
    out
}

fn engine_soundness(_cfg: &BatteryConfig) -> CriterionResult {
    let mut c = Checker::new("engine-soundness");

    // naive-oracle agreement on the two smallest planes
    for (q, t, bound) in [(2u64, 1usize, 7u32), (3, 1, 6), (3, 2, 9)] {
        let plane = Plane::new(field(q));
        let prob = blocking_problem(q, t as u32, bound, SearchMode::EnumerateAll, false);
        let got = run(&prob).expect("valid problem");
        let want = naive_minimal_blocking(&plane, t, bound as usize);
        c.check(got.exhausted && got.witnesses == want, || {
            format!("q={q} t={t}: engine disagrees with the subset sweep")
        });
        // re-verify every witness
        for w in &got.witnesses {
            let counts = plane.line_counts(w);
            c.check(
                counts.iter().all(|&x| x >= t) && is_minimal_t_fold(&plane, &counts, w, t),
                || format!("q={q} t={t}: witness fails re-verification"),
            );
        }
    }
    {
        let plane = Plane::new(field(3));
        let prob = arc_problem(3, SearchKind::KnArc { n: 2 }, 4, SearchMode::EnumerateAll);
        let got = run(&prob).expect("valid problem");
        let want = naive_arcs(&plane, 2, 4);
        c.check(got.exhausted && got.witnesses == want, || {
            "q=3 quadrangles: engine disagrees with the subset sweep".into()
        });
    }

    // witness re-verification on a bigger run: all PG(2,4) hyperovals
    let plane4 = Plane::new(field(4));
    let hyper = arc_problem(4, SearchKind::MaximalArc { n: 2 }, 6, SearchMode::EnumerateAll);
    let out = run(&hyper).expect("valid problem");
    c.check(out.witnesses.len() == 168, || {
        format!("{} hyperovals", out.witnesses.len())
    });
    for w in &out.witnesses {
        if !arc_analyze(&plane4, w, 2).is_maximal {
            c.check(false, || "hyperoval fails re-verification".into());
            break;
        }
    }
    c.check(true, || unreachable!());
    c.check(
        isomorph_reduce(&plane4, &out.witnesses).len() == 1,
        || "hyperovals split into several classes".into(),
    );

    // determinism across worker counts: fixed task budgets make witness
    // lists and node counts independent of thread scheduling
    let prob = blocking_problem(4, 1, 7, SearchMode::EnumerateAll, true);
    let run_with = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool")
            .install(|| run(&prob).expect("valid problem"))
    };
    let solo = run_with(1);
    let multi = run_with(4);
    c.check(
        solo.witnesses == multi.witnesses && solo.nodes == multi.nodes,
        || "worker count changed the report".into(),
    );
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The cheap criteria run end-to-end and pass; the expensive sweeps are
    /// exercised by the acceptance suite.
    #[test]
    fn fast_criteria_pass() {
        let cfg = BatteryConfig::default();
        for name in [
            "direction-counts",
            "bruen-sharpness",
            "baer-partition-and-bounds",
            "linear-sets",
            "engine-soundness",
        ] {
            let r = run_criterion(name, &cfg).expect("known name");
            assert!(r.passed, "{name}: {}", r.details);
            assert!(!r.skipped_long);
        }
    }

    #[test]
    fn unknown_names_are_rejected_and_listing_is_complete() {
        let cfg = BatteryConfig::default();
        assert!(run_criterion("no-such-criterion", &cfg).is_none());
        assert_eq!(CRITERIA.len(), 13);
    }

    #[test]
    fn long_gate_is_reported() {
        let cfg = BatteryConfig::default();
        let r = run_criterion("arcs-barlotti-segre", &cfg).expect("known name");
        assert!(r.skipped_long);
        assert!(r.details.contains("skipped"));
    }
}
