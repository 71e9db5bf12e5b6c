//! Backtracking search for extremal point sets: t-fold blocking sets
//! (covering) and (k,n)-arcs (packing), with constraint propagation,
//! duplicate-free canonical generation, deterministic parallel subtree
//! split, isomorph reduction, and nonexistence certificates.
//!
//! Semantics. For `TFoldBlocking`, witnesses are the **minimal** t-fold
//! blocking sets of size ≤ `size_bound` (optionally excluding sets that
//! contain a full line). Minimal witnesses lose no generality: a t-fold
//! blocking set of size ≤ k exists iff a minimal one does. For `KnArc`,
//! witnesses are the (k,n)-arcs of size **exactly** `size_bound`; subsets of
//! arcs are arcs, so existence at size k is existence at every smaller size.
//! `MaximalArc` is the `KnArc` instance at the Barlotti bound (n−1)(q+1)+1,
//! where every line automatically meets the arc in 0 or n points.
//!
//! Determinism. Witness lists are byte-identical across runs and worker
//! counts: subtrees are split at a fixed depth in canonical order, each gets
//! an equal node budget, and results merge by subtree index. In `Exists`
//! mode the reported witness is the first in global depth-first order;
//! cross-subtree cancellation only ever abandons subtrees that cannot
//! contain an earlier witness.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::Bitset;
use crate::gf::FieldSpec;
use crate::plane::{are_isomorphic, Plane, PointSet};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
const SPLIT_DEPTH: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchKind {
    /// Minimal sets meeting every line in ≥ t points, size ≤ bound.
    TFoldBlocking { t: u32 },
    /// Sets of exactly `size_bound` points meeting every line in ≤ n.
    KnArc { n: u32 },
    /// (k,n)-arcs at the Barlotti bound k = (n−1)(q+1)+1.
    MaximalArc { n: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    Exists,
    EnumerateAll,
    EnumerateUpToIso,
}

#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub spec: FieldSpec,
    pub kind: SearchKind,
    pub size_bound: u32,
    pub mode: SearchMode,
    /// Blocking only: exclude witnesses containing a full line.
    pub nontrivial: bool,
    /// Fix an initial configuration up to collineation: an exact t-secant
    /// on line 0 for blocking sets (t ≤ 2), the standard frame or a point
    /// pair for arcs. Sound for `Exists` and `EnumerateUpToIso` under the
    /// minimal-witness semantics; ignored in `EnumerateAll`, which must see
    /// the whole space.
    pub root_symmetry: bool,
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(spec: FieldSpec, kind: SearchKind, size_bound: u32, mode: SearchMode) -> Self {
        SearchProblem {
            spec,
            kind,
            size_bound,
            mode,
            nontrivial: false,
            root_symmetry: !matches!(mode, SearchMode::EnumerateAll),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let q = self.spec.q();
        let plane_size = q * q + q + 1;
        if self.size_bound > plane_size {
            return Err(SearchError::InvalidProblem(format!(
                "size bound {} exceeds the plane size {plane_size}",
                self.size_bound
            )));
        }
        match self.kind {
            SearchKind::TFoldBlocking { t } => {
                if t == 0 || t > q + 1 {
                    return Err(SearchError::InvalidProblem(format!(
                        "t = {t} outside 1..=q+1"
                    )));
                }
            }
            SearchKind::KnArc { n } | SearchKind::MaximalArc { n } => {
                if n < 2 || n > q + 1 {
                    return Err(SearchError::InvalidProblem(format!(
                        "n = {n} outside 2..=q+1"
                    )));
                }
                if matches!(self.kind, SearchKind::MaximalArc { .. }) {
                    let target = (n - 1) * (q + 1) + 1;
                    if self.size_bound != target {
                        return Err(SearchError::InvalidProblem(format!(
                            "maximal arc size must be (n-1)(q+1)+1 = {target}, got {}",
                            self.size_bound
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SearchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SearchKind::TFoldBlocking { t } => format!("blocking t={t} size<={}", self.size_bound),
            SearchKind::KnArc { n } => format!("arc n={n} size={}", self.size_bound),
            SearchKind::MaximalArc { n } => format!("maximal-arc n={n} size={}", self.size_bound),
        };
        let mode = match self.mode {
            SearchMode::Exists => "exists",
            SearchMode::EnumerateAll => "enumerate-all",
            SearchMode::EnumerateUpToIso => "enumerate-up-to-iso",
        };
        write!(
            f,
            "q={} {kind} mode={mode} nontrivial={} root_symmetry={} budget={}",
            self.spec.q(),
            self.nontrivial,
            self.root_symmetry,
            self.budget
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Canonically sorted witnesses (class representatives in up-to-iso
    /// mode, the first witness in depth-first order in exists mode).
    pub witnesses: Vec<PointSet>,
    /// True iff the search space was fully covered. Nonexistence claims
    /// require this flag; a truncated search never sets it.
    pub exhausted: bool,
    pub nodes: u64,
    pub iso_classes: Option<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("search not exhausted after {nodes} nodes; no nonexistence claim possible")]
    NotExhausted { nodes: u64 },
    #[error("witness found; nonexistence refuted")]
    WitnessFound { witness: PointSet },
}

/// Nonexistence certificate: problem echo, digest, node count, and the
/// root-level case split that covered the space.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub problem: String,
    pub digest: String,
    pub nodes: u64,
    pub root_cases: Vec<String>,
    pub engine_version: String,
}

pub fn run(problem: &SearchProblem) -> Result<SearchOutcome, SearchError> {
    run_inner(problem).map(|aux| aux.outcome)
}

/// Runs the problem in `Exists` mode and issues a certificate when the
/// space is exhausted without a witness; refuses otherwise.
pub fn certify_nonexistence(problem: &SearchProblem) -> Result<Certificate, SearchError> {
    let mut p = problem.clone();
    p.mode = SearchMode::Exists;
    let aux = run_inner(&p)?;
    if let Some(w) = aux.outcome.witnesses.first() {
        return Err(SearchError::WitnessFound { witness: w.clone() });
    }
    if !aux.outcome.exhausted {
        return Err(SearchError::NotExhausted {
            nodes: aux.outcome.nodes,
        });
    }
    let problem_text = p.to_string();
    let digest = format!("{:016x}", fnv1a64(problem_text.as_bytes()));
    Ok(Certificate {
        problem: problem_text,
        digest,
        nodes: aux.outcome.nodes,
        root_cases: aux.root_cases,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// One representative per collineation class, in first-seen order of the
/// input. Cheap invariants (size, spectrum, per-point intersection
/// profiles) gate the expensive isomorphism tests.
pub fn isomorph_reduce(plane: &Plane, sets: &[PointSet]) -> Vec<PointSet> {
    type Fp = (usize, Vec<(usize, usize)>, Vec<Vec<usize>>);
    let fingerprint = |s: &PointSet| -> Fp {
        let spectrum: Vec<(usize, usize)> = plane.spectrum(s).into_iter().collect();
        let mut profiles = plane.point_profiles(s);
        profiles.sort();
        (s.len(), spectrum, profiles)
    };
    let mut reps: Vec<(Fp, PointSet)> = Vec::new();
    for s in sets {
        let fp = fingerprint(s);
        let known = reps
            .iter()
            .any(|(f, r)| *f == fp && are_isomorphic(plane, r, s).is_some());
        if !known {
            reps.push((fp, s.clone()));
        }
    }
    reps.into_iter().map(|(_, s)| s).collect()
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

// ---------------------------------------------------------------------------
// Common driver

struct RunAux {
    outcome: SearchOutcome,
    root_cases: Vec<String>,
}

fn run_inner(problem: &SearchProblem) -> Result<RunAux, SearchError> {
    problem.validate()?;
    let plane = Plane::new(problem.spec.clone());
    match problem.kind {
        SearchKind::TFoldBlocking { t } => Ok(run_blocking(&plane, problem, t as usize)),
        SearchKind::KnArc { n } => Ok(run_arc(&plane, problem, n as usize, false)),
        SearchKind::MaximalArc { n } => Ok(run_arc(&plane, problem, n as usize, true)),
    }
}

/// Result of one subtree: witnesses in depth-first order plus accounting.
#[derive(Default)]
struct TaskResult {
    witnesses: Vec<PointSet>,
    nodes: u64,
    truncated: bool,
}

/// Runs `resume` over the canonical task list and merges deterministically.
/// Every task receives the same node budget (total divided evenly), so
/// truncation points do not depend on scheduling.
fn drive_tasks<T: Send + Sync>(
    tasks: &[T],
    exists: bool,
    resume: impl Fn(&T, u64, Option<(&AtomicU32, u32)>) -> TaskResult + Send + Sync,
    budget_left: u64,
) -> (Vec<PointSet>, u64, bool) {
    if tasks.is_empty() {
        return (Vec::new(), 0, true);
    }
    let per_task = std::cmp::max(1, budget_left / tasks.len() as u64);
    let results: Vec<TaskResult> = if exists {
        if rayon::current_num_threads() == 1 {
            // sequential with early break: identical witnesses, stable nodes
            let mut out = Vec::with_capacity(tasks.len());
            for t in tasks {
                let r = resume(t, per_task, None);
                let stop = !r.witnesses.is_empty();
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        } else {
            let winner = AtomicU32::new(u32::MAX);
            tasks
                .par_iter()
                .enumerate()
                .map(|(i, t)| {
                    let idx = i as u32;
                    if winner.load(Ordering::Relaxed) < idx {
                        return TaskResult {
                            truncated: true,
                            ..TaskResult::default()
                        };
                    }
                    let r = resume(t, per_task, Some((&winner, idx)));
                    if !r.witnesses.is_empty() {
                        winner.fetch_min(idx, Ordering::Relaxed);
                    }
                    r
                })
                .collect()
        }
    } else {
        tasks
            .par_iter()
            .map(|t| resume(t, per_task, None))
            .collect()
    };
    let nodes: u64 = results.iter().map(|r| r.nodes).sum();
    if exists {
        let first = results
            .iter()
            .find(|r| !r.witnesses.is_empty())
            .map(|r| r.witnesses[0].clone());
        match first {
            Some(w) => (vec![w], nodes, false),
            // no witness anywhere: exhausted iff every task ran to the end
            None => {
                let complete =
                    results.len() == tasks.len() && results.iter().all(|r| !r.truncated);
                (Vec::new(), nodes, complete)
            }
        }
    } else {
        let truncated = results.iter().any(|r| r.truncated);
        let witnesses: Vec<PointSet> = results.into_iter().flat_map(|r| r.witnesses).collect();
        (witnesses, nodes, !truncated)
    }
}

/// Merges split-phase results with task results and postprocesses per mode.
#[allow(clippy::too_many_arguments)]
fn merge_and_finish(
    plane: &Plane,
    problem: &SearchProblem,
    exists: bool,
    pre_witnesses: Vec<PointSet>,
    mut witnesses: Vec<PointSet>,
    complete: bool,
    nodes: u64,
    root_cases: Vec<String>,
) -> RunAux {
    let found_any = !witnesses.is_empty() || !pre_witnesses.is_empty();
    let exhausted = if exists { !found_any && complete } else { complete };
    if exists {
        // Any task witness precedes a split-phase witness in depth-first
        // order: the split walk stops at its first record, so all queued
        // tasks come from earlier subtrees.
        if witnesses.is_empty() {
            witnesses = pre_witnesses.into_iter().take(1).collect();
        }
    } else {
        witnesses.extend(pre_witnesses);
        witnesses.sort();
    }
    finish(plane, problem, witnesses, exhausted, nodes, root_cases)
}

fn finish(
    plane: &Plane,
    problem: &SearchProblem,
    mut witnesses: Vec<PointSet>,
    exhausted: bool,
    nodes: u64,
    root_cases: Vec<String>,
) -> RunAux {
    let iso_classes = if matches!(problem.mode, SearchMode::EnumerateUpToIso) {
        witnesses = isomorph_reduce(plane, &witnesses);
        Some(witnesses.len())
    } else {
        None
    };
    RunAux {
        outcome: SearchOutcome {
            witnesses,
            exhausted,
            nodes,
            iso_classes,
        },
        root_cases,
    }
}

enum StepOutcome {
    /// Stop the whole task: witness in exists mode, budget, or cancellation.
    Done,
    Continue,
}

// ---------------------------------------------------------------------------
// t-fold blocking sets: cover DFS branching on the least-covered line

#[derive(Clone)]
struct BlockState {
    stack: Vec<u32>,
    in_set: Bitset,
    excluded: Bitset,
    /// Per line: members of the current set on it.
    cnt: Vec<u32>,
    /// Per line: excluded points on it (capacity q+1−excl must stay ≥ t).
    excl: Vec<u32>,
    /// Per point: number of deficient lines (cnt < t) through it, feeding
    /// the max-cover lower bound.
    defcnt: Vec<u32>,
}

struct BlockCtx<'a> {
    plane: &'a Plane,
    t: u32,
    bound: usize,
    nontrivial: bool,
    exists: bool,
}

impl BlockState {
    fn new(plane: &Plane, t: u32) -> BlockState {
        let sz = plane.size();
        // every line is deficient at the start
        BlockState {
            stack: Vec::new(),
            in_set: Bitset::new(sz),
            excluded: Bitset::new(sz),
            cnt: vec![0; sz],
            excl: vec![0; sz],
            defcnt: vec![if t > 0 { plane.q() + 1 } else { 0 }; sz],
        }
    }

    fn add(&mut self, plane: &Plane, t: u32, p: u32) {
        self.stack.push(p);
        self.in_set.set(p as usize);
        for &l in plane.lines_through(p) {
            let c = &mut self.cnt[l as usize];
            *c += 1;
            if *c == t {
                for &v in plane.points_on(l) {
                    self.defcnt[v as usize] -= 1;
                }
            }
        }
    }

    fn remove(&mut self, plane: &Plane, t: u32, p: u32) {
        debug_assert_eq!(self.stack.last(), Some(&p));
        self.stack.pop();
        self.in_set.clear(p as usize);
        for &l in plane.lines_through(p) {
            let c = &mut self.cnt[l as usize];
            if *c == t {
                for &v in plane.points_on(l) {
                    self.defcnt[v as usize] += 1;
                }
            }
            *c -= 1;
        }
    }

    /// Excludes p; returns false if some line can no longer reach t.
    fn exclude(&mut self, plane: &Plane, p: u32, t: u32) -> bool {
        self.excluded.set(p as usize);
        let q1 = plane.q() + 1;
        let mut ok = true;
        for &l in plane.lines_through(p) {
            self.excl[l as usize] += 1;
            if q1 - self.excl[l as usize] < t {
                ok = false;
            }
        }
        ok
    }

    fn unexclude(&mut self, plane: &Plane, p: u32) {
        self.excluded.clear(p as usize);
        for &l in plane.lines_through(p) {
            self.excl[l as usize] -= 1;
        }
    }
}

fn dfs_block(
    ctx: &BlockCtx<'_>,
    st: &mut BlockState,
    res: &mut TaskResult,
    budget: u64,
    cancel: Option<(&AtomicU32, u32)>,
    mut tasks: Option<&mut Vec<BlockState>>,
    root_len: usize,
) -> StepOutcome {
    res.nodes += 1;
    if res.nodes > budget {
        res.truncated = true;
        return StepOutcome::Done;
    }
    if let Some((winner, idx)) = cancel {
        if winner.load(Ordering::Relaxed) < idx {
            res.truncated = true;
            return StepOutcome::Done;
        }
    }
    if let Some(sink) = tasks.as_deref_mut() {
        if st.stack.len() - root_len >= SPLIT_DEPTH {
            sink.push(st.clone());
            return StepOutcome::Continue;
        }
    }

    // One scan: fail-first branch line (fewest available points, lowest
    // index) plus deficits and per-line feasibility.
    let q1 = ctx.plane.q() + 1;
    let mut branch: Option<(u32, u32)> = None; // (available, line)
    let mut total_deficit: u64 = 0;
    let mut max_deficit: u32 = 0;
    for (l, &c) in st.cnt.iter().enumerate() {
        if ctx.nontrivial && c == q1 {
            return StepOutcome::Continue; // contains a full line
        }
        if c < ctx.t {
            let d = ctx.t - c;
            let avail = q1 - c - st.excl[l];
            if avail < d {
                return StepOutcome::Continue; // line can no longer reach t
            }
            total_deficit += d as u64;
            max_deficit = max_deficit.max(d);
            if branch.is_none_or(|(ba, _)| avail < ba) {
                branch = Some((avail, l as u32));
            }
        }
    }

    let Some((_, bline)) = branch else {
        // Blocking. Record only minimal sets: every member must lie on a
        // line with exactly t points. Counts only grow along a branch, so
        // extensions of a blocking set are never minimal — stop here.
        let minimal = st.stack.iter().all(|&p| {
            ctx.plane
                .lines_through(p)
                .iter()
                .any(|&l| st.cnt[l as usize] == ctx.t)
        });
        if minimal {
            res.witnesses.push(PointSet::from_indices(st.stack.clone()));
            if ctx.exists {
                return StepOutcome::Done;
            }
        }
        return StepOutcome::Continue;
    };

    // Remaining-budget lower bounds: one point covers at most one deficit
    // per line through it, so max-cover over the available points bounds
    // the progress per added point.
    if st.stack.len() >= ctx.bound {
        return StepOutcome::Continue;
    }
    let r = (ctx.bound - st.stack.len()) as u64;
    let mut maxcov: u32 = 0;
    for p in 0..st.defcnt.len() {
        if st.defcnt[p] > maxcov && !st.in_set.get(p) && !st.excluded.get(p) {
            maxcov = st.defcnt[p];
        }
    }
    if maxcov == 0 {
        return StepOutcome::Continue; // deficits remain but nothing can cover
    }
    let lb = std::cmp::max(max_deficit as u64, total_deficit.div_ceil(maxcov as u64));
    if lb > r {
        return StepOutcome::Continue;
    }
    // A member whose every line is strictly past t can never regain a
    // tangent: no extension is minimal.
    for &p in &st.stack {
        if ctx
            .plane
            .lines_through(p)
            .iter()
            .all(|&l| st.cnt[l as usize] > ctx.t)
        {
            return StepOutcome::Continue;
        }
    }

    let candidates: Vec<u32> = ctx
        .plane
        .points_on(bline)
        .iter()
        .copied()
        .filter(|&p| !st.in_set.get(p as usize) && !st.excluded.get(p as usize))
        .collect();
    let mut locally_excluded = Vec::new();
    let mut outcome = StepOutcome::Continue;
    for &p in &candidates {
        st.add(ctx.plane, ctx.t, p);
        let out = dfs_block(ctx, st, res, budget, cancel, tasks.as_deref_mut(), root_len);
        st.remove(ctx.plane, ctx.t, p);
        if matches!(out, StepOutcome::Done) {
            outcome = StepOutcome::Done;
            break;
        }
        // Sibling exclusion: later children must avoid p, which makes this
        // generation duplicate-free and still complete for minimal sets.
        locally_excluded.push(p);
        if !st.exclude(ctx.plane, p, ctx.t) {
            break; // some line lost its last chance to reach t
        }
    }
    for &p in locally_excluded.iter().rev() {
        st.unexclude(ctx.plane, p);
    }
    outcome
}

/// Root normalization of a minimal t-fold blocking set up to collineation.
struct BlockRoots {
    fixed: Vec<u32>,
    excluded: Vec<u32>,
    /// A witness that escapes the fixed configuration and is covered by an
    /// explicit case instead (the single trivial line for t = 1).
    extra_case: Option<PointSet>,
}

/// Minimality means every member lies on a line carrying exactly t members,
/// so each witness has an exact t-secant; the group is transitive on
/// incident (point, line) pairs and on ordered point pairs, so for t ≤ 2
/// the witness is normalized to meet line 0 — the line at infinity — in
/// exactly its first t points (rest of the line excluded). Translations fix
/// every ideal point, so an affine member moves to the origin. For t = 1
/// the stabilizer of all that still maps any affine member with nonzero
/// first coordinate to (1:0:1); the only witness without one is contained
/// in, hence equal to, the line joining the tangent point and the origin —
/// an explicit extra case. For t ≥ 3 exactness is not imposed (it would
/// constrain unknown further points of the secant).
fn blocking_roots(plane: &Plane, t: usize, bound: usize, nontrivial: bool) -> BlockRoots {
    let pts = plane.points_on(0);
    let origin = 0u32;
    let fixed_ideal = t.min(2);
    let mut fixed = pts[..fixed_ideal].to_vec();
    fixed.push(origin);
    let excluded = if t <= 2 {
        pts[fixed_ideal..].to_vec()
    } else {
        Vec::new()
    };
    let mut extra_case = None;
    if t == 1 {
        fixed.push(1); // the point (1:0:1)
        if !nontrivial && (plane.q() as usize) < bound {
            let tangent_line = plane
                .lines_through(pts[0])
                .iter()
                .copied()
                .find(|&l| plane.points_on(l).contains(&origin))
                .expect("two points lie on a line");
            extra_case = Some(PointSet::from_indices(
                plane.points_on(tangent_line).to_vec(),
            ));
        }
    }
    BlockRoots {
        fixed,
        excluded,
        extra_case,
    }
}

fn run_blocking(plane: &Plane, problem: &SearchProblem, t: usize) -> RunAux {
    let use_sym = problem.root_symmetry && !matches!(problem.mode, SearchMode::EnumerateAll);
    let br = if use_sym {
        blocking_roots(plane, t, problem.size_bound as usize, problem.nontrivial)
    } else {
        BlockRoots {
            fixed: Vec::new(),
            excluded: Vec::new(),
            extra_case: None,
        }
    };
    let ctx = BlockCtx {
        plane,
        t: t as u32,
        bound: problem.size_bound as usize,
        nontrivial: problem.nontrivial,
        exists: matches!(problem.mode, SearchMode::Exists),
    };
    let mut st = BlockState::new(plane, ctx.t);
    for &p in &br.fixed {
        st.add(plane, ctx.t, p);
    }
    for &p in &br.excluded {
        // line 0 already carries its t fixed members, so this cannot starve
        // any line below t
        let ok = st.exclude(plane, p, ctx.t);
        debug_assert!(ok);
    }
    if st.stack.len() > ctx.bound {
        // bound below the fixed configuration: only the extra case can fit
        let ws: Vec<PointSet> = br.extra_case.into_iter().collect();
        return finish(plane, problem, ws, true, 0, Vec::new());
    }
    let mut root_cases = Vec::new();
    if let Some(w) = &br.extra_case {
        root_cases.push("trivial line through the tangent point and origin".to_string());
        if ctx.exists {
            // canonically first witness; no search needed
            let ws = vec![w.clone()];
            return finish(plane, problem, ws, false, 0, root_cases);
        }
    }

    let mut tasks: Vec<BlockState> = Vec::new();
    let mut split_res = TaskResult::default();
    dfs_block(
        &ctx,
        &mut st,
        &mut split_res,
        problem.budget,
        None,
        Some(&mut tasks),
        br.fixed.len(),
    );
    let mut pre: Vec<PointSet> = br.extra_case.into_iter().collect();
    pre.extend(split_res.witnesses);
    if split_res.truncated {
        pre.sort();
        return finish(plane, problem, pre, false, split_res.nodes, root_cases);
    }
    root_cases.extend(tasks.iter().map(|s| format!("{:?}", s.stack)));

    let (witnesses, task_nodes, complete) = drive_tasks(
        &tasks,
        ctx.exists,
        |task, per_budget, cancel| {
            let mut local = task.clone();
            let mut res = TaskResult::default();
            dfs_block(&ctx, &mut local, &mut res, per_budget, cancel, None, 0);
            res
        },
        problem.budget.saturating_sub(split_res.nodes),
    );
    merge_and_finish(
        plane,
        problem,
        ctx.exists,
        pre,
        witnesses,
        complete,
        split_res.nodes + task_nodes,
        root_cases,
    )
}

// ---------------------------------------------------------------------------
// (k,n)-arcs: packing DFS in increasing point order

#[derive(Clone)]
struct ArcState {
    stack: Vec<u32>,
    in_set: Bitset,
    cnt: Vec<u32>,
    /// Per point: number of its lines already at the cap n.
    blocked: Vec<u32>,
    /// Σ over lines of (n − cnt): global remaining capacity.
    capacity: u64,
    /// Non-root candidates are taken in increasing index from here.
    cursor: u32,
}

struct ArcCtx<'a> {
    plane: &'a Plane,
    n: u32,
    target: usize,
    maximal: bool,
    exists: bool,
}

impl ArcState {
    fn new(plane: &Plane, n: u32) -> ArcState {
        let sz = plane.size();
        ArcState {
            stack: Vec::new(),
            in_set: Bitset::new(sz),
            cnt: vec![0; sz],
            blocked: vec![0; sz],
            capacity: n as u64 * sz as u64,
            cursor: 0,
        }
    }

    fn add(&mut self, plane: &Plane, n: u32, p: u32) {
        self.stack.push(p);
        self.in_set.set(p as usize);
        for &l in plane.lines_through(p) {
            let c = &mut self.cnt[l as usize];
            *c += 1;
            if *c == n {
                for &v in plane.points_on(l) {
                    self.blocked[v as usize] += 1;
                }
            }
        }
        self.capacity -= plane.q() as u64 + 1;
    }

    fn remove(&mut self, plane: &Plane, n: u32, p: u32) {
        debug_assert_eq!(self.stack.last(), Some(&p));
        self.stack.pop();
        self.in_set.clear(p as usize);
        for &l in plane.lines_through(p) {
            let c = &mut self.cnt[l as usize];
            if *c == n {
                for &v in plane.points_on(l) {
                    self.blocked[v as usize] -= 1;
                }
            }
            *c -= 1;
        }
        self.capacity += plane.q() as u64 + 1;
    }
}

fn dfs_arc(
    ctx: &ArcCtx<'_>,
    st: &mut ArcState,
    res: &mut TaskResult,
    budget: u64,
    cancel: Option<(&AtomicU32, u32)>,
    mut tasks: Option<&mut Vec<ArcState>>,
    root_len: usize,
) -> StepOutcome {
    res.nodes += 1;
    if res.nodes > budget {
        res.truncated = true;
        return StepOutcome::Done;
    }
    if let Some((winner, idx)) = cancel {
        if winner.load(Ordering::Relaxed) < idx {
            res.truncated = true;
            return StepOutcome::Done;
        }
    }
    if let Some(sink) = tasks.as_deref_mut() {
        if st.stack.len() - root_len >= SPLIT_DEPTH {
            sink.push(st.clone());
            return StepOutcome::Continue;
        }
    }
    if st.stack.len() == ctx.target {
        debug_assert!(
            !ctx.maximal || st.cnt.iter().all(|&c| c == 0 || c == ctx.n),
            "Barlotti equality forces 0-or-n lines"
        );
        res.witnesses.push(PointSet::from_indices(st.stack.clone()));
        return if ctx.exists {
            StepOutcome::Done
        } else {
            StepOutcome::Continue
        };
    }
    let r = (ctx.target - st.stack.len()) as u64;
    let q1 = ctx.plane.q() as u64 + 1;
    if st.capacity < r * q1 {
        return StepOutcome::Continue;
    }
    // Per-member counting: each future point raises exactly one line through
    // every current member, so the capacity bundle at a member must hold all
    // r future points — and exactly r for maximal arcs, where every line
    // through a member must top out at n.
    for &p in &st.stack {
        let mut room: u64 = 0;
        for &l in ctx.plane.lines_through(p) {
            room += (ctx.n - st.cnt[l as usize]) as u64;
        }
        if room < r || (ctx.maximal && room != r) {
            return StepOutcome::Continue;
        }
    }

    let size = ctx.plane.size() as u32;
    let candidates: Vec<u32> = (st.cursor..size)
        .filter(|&p| !st.in_set.get(p as usize) && st.blocked[p as usize] == 0)
        .collect();
    if (candidates.len() as u64) < r {
        return StepOutcome::Continue;
    }

    for &p in &candidates {
        let saved_cursor = st.cursor;
        st.add(ctx.plane, ctx.n, p);
        st.cursor = p + 1;
        let out = dfs_arc(ctx, st, res, budget, cancel, tasks.as_deref_mut(), root_len);
        st.cursor = saved_cursor;
        st.remove(ctx.plane, ctx.n, p);
        if matches!(out, StepOutcome::Done) {
            return StepOutcome::Done;
        }
    }
    StepOutcome::Continue
}

/// The standard frame when the arc provably contains a quadrangle: the
/// three lines of a triangle inside the arc hold at most 3n−3 of its
/// points, so size ≥ 3n−2 forces a fourth point in general position, and
/// collineations are transitive on quadrangles. Otherwise the two
/// lowest-index points (2-transitivity).
fn arc_roots(plane: &Plane, n: u32, target: usize) -> Vec<u32> {
    let spec = plane.spec();
    let one = crate::gf::FieldElem::ONE;
    let zero = crate::gf::FieldElem::ZERO;
    if target >= 3 * n as usize - 2 {
        [
            [one, zero, zero],
            [zero, one, zero],
            [zero, zero, one],
            [one, one, one],
        ]
        .into_iter()
        .map(|t| crate::plane::point_index_of(spec, t).expect("frame point"))
        .collect()
    } else if target >= 2 {
        vec![0, 1]
    } else {
        Vec::new()
    }
}

fn run_arc(plane: &Plane, problem: &SearchProblem, n: usize, maximal: bool) -> RunAux {
    let use_sym = problem.root_symmetry && !matches!(problem.mode, SearchMode::EnumerateAll);
    let target = problem.size_bound as usize;
    let roots = if use_sym {
        arc_roots(plane, n as u32, target)
    } else {
        Vec::new()
    };
    let ctx = ArcCtx {
        plane,
        n: n as u32,
        target,
        maximal,
        exists: matches!(problem.mode, SearchMode::Exists),
    };
    let mut st = ArcState::new(plane, n as u32);
    for &p in &roots {
        st.add(plane, n as u32, p);
    }
    if st.stack.len() > target {
        return finish(plane, problem, Vec::new(), true, 0, Vec::new());
    }

    let mut tasks: Vec<ArcState> = Vec::new();
    let mut split_res = TaskResult::default();
    dfs_arc(
        &ctx,
        &mut st,
        &mut split_res,
        problem.budget,
        None,
        Some(&mut tasks),
        roots.len(),
    );
    if split_res.truncated {
        let mut ws = split_res.witnesses;
        ws.sort();
        return finish(plane, problem, ws, false, split_res.nodes, Vec::new());
    }
    let root_cases: Vec<String> = tasks.iter().map(|s| format!("{:?}", s.stack)).collect();

    let (witnesses, task_nodes, complete) = drive_tasks(
        &tasks,
        ctx.exists,
        |task, per_budget, cancel| {
            let mut local = task.clone();
            let mut res = TaskResult::default();
            dfs_arc(&ctx, &mut local, &mut res, per_budget, cancel, None, 0);
            res
        },
        problem.budget.saturating_sub(split_res.nodes),
    );
    merge_and_finish(
        plane,
        problem,
        ctx.exists,
        split_res.witnesses,
        witnesses,
        complete,
        split_res.nodes + task_nodes,
        root_cases,
    )
}
