//! Enumeration of all orthogonal equipartitions of a point set.
//!
//! Every equipartition can be certified by a plane triple whose union holds
//! exactly six input points, split 3-2-1 or 2-2-2 among the planes. The
//! engine visits every disjoint support of both shapes, solves for the
//! planes, classifies all points exactly and tries the 2⁶ ways of pushing the
//! six on-plane points to either side.
//!
//! In the 3-2-1 phase `H1` depends only on `A1` and `H2` only on `(A1, A2)`,
//! so those planes are shared by all supports below them and a support family
//! is skipped as soon as `H1` cannot halve the set or `(H1, H2)` cannot
//! quarter it. Skipped supports are still counted as visited.

mod approx;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use self::approx::{certified_sign, dot, exact_vec, screen_222, Screen222};
use crate::error::{Error, Result};
use crate::exact::{IntegralPlane, Point3, Sign, Vec3};
use crate::frames::{quaternion_frame, random_quaternion};
use crate::solver::{
    integral_normal_through_3, integral_planes_222, validate_triple, IntegralTriple, PlaneTriple, SupportTriple,
};

/// An input set of `8n` distinct integer points; indices follow input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point3>,
    vecs: Vec<Vec3<BigInt>>,
}

impl PointSet {
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if points.is_empty() || !points.len().is_multiple_of(8) {
            return Err(Error::InputSizeError(points.len()));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        if let Some(w) = order.windows(2).find(|w| points[w[0]] == points[w[1]]) {
            return Err(Error::DuplicatePoints(w[0].min(w[1]), w[0].max(w[1])));
        }
        let vecs = points.iter().map(Point3::to_vec).collect();
        Ok(PointSet { points, vecs })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Part size `n = |X| / 8`.
    pub fn part_size(&self) -> usize {
        self.points.len() / 8
    }
}

/// Region label of a sign triple: bit `k` is set when the point is on the
/// negative side of `H(k+1)`.
pub fn octant_label(signs: [Sign; 3]) -> u8 {
    signs
        .iter()
        .enumerate()
        .fold(0, |acc, (k, s)| acc | (u8::from(*s == Sign::Negative) << k))
}

/// Sign of every point against each plane of a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    rows: Vec<[Sign; 3]>,
}

impl SignMatrix {
    pub fn new(rows: Vec<[Sign; 3]>) -> Self {
        SignMatrix { rows }
    }

    pub fn rows(&self) -> &[[Sign; 3]] {
        &self.rows
    }
}

/// Classifies every point against `t`. A zero is only allowed for a support
/// point in its own plane's column.
pub fn classify_points(x: &PointSet, t: &PlaneTriple, support: Option<&SupportTriple>) -> Result<SignMatrix> {
    let planes = t.to_integral();
    let mut rows = Vec::with_capacity(x.len());
    for (idx, p) in x.vecs.iter().enumerate() {
        let own = support.and_then(|s| s.plane_of(idx));
        let mut row = [Sign::Zero; 3];
        for (k, h) in planes.iter().enumerate() {
            row[k] = h.side(p);
            if row[k] == Sign::Zero && own != Some(k) {
                return Err(violation(
                    support.map_or_else(|| "none".to_string(), |s| s.to_string()),
                    idx,
                    k,
                ));
            }
        }
        rows.push(row);
    }
    Ok(SignMatrix { rows })
}

/// Eight parts indexed by [`octant_label`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition8 {
    parts: [Vec<usize>; 8],
}

impl Partition8 {
    pub fn from_labels(labels: &[u8]) -> Self {
        let mut parts: [Vec<usize>; 8] = Default::default();
        for (idx, &l) in labels.iter().enumerate() {
            parts[l as usize].push(idx);
        }
        Partition8 { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>; 8] {
        &self.parts
    }

    pub fn sizes(&self) -> [usize; 8] {
        std::array::from_fn(|k| self.parts[k].len())
    }

    /// The unordered set of parts with region labels discarded.
    pub fn canonical(&self) -> CanonicalPartition {
        let mut parts: Vec<Vec<usize>> = self.parts.to_vec();
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.sort();
        CanonicalPartition(parts)
    }
}

/// Sorted parts in lexicographic order; the deduplication key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalPartition(pub Vec<Vec<usize>>);

impl CanonicalPartition {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.0
    }
}

impl fmt::Display for CanonicalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All partitions obtained by resolving every zero sign both ways.
pub fn enumerate_partitions(m: &SignMatrix) -> Vec<Partition8> {
    let mut labelings: Vec<Vec<u8>> = vec![Vec::with_capacity(m.rows.len())];
    for row in &m.rows {
        let fixed = octant_label(*row);
        let free: Vec<u8> = (0..3).filter(|&k| row[k] == Sign::Zero).map(|k| 1 << k).collect();
        let options: Vec<u8> = (0..1u8 << free.len())
            .map(|mask| {
                free.iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .fold(fixed, |acc, (_, bit)| acc | bit)
            })
            .collect();
        labelings = labelings
            .into_iter()
            .flat_map(|l| {
                options.iter().map(move |&o| {
                    let mut l = l.clone();
                    l.push(o);
                    l
                })
            })
            .collect();
    }
    labelings.iter().map(|l| Partition8::from_labels(l)).collect()
}

pub fn is_equipartition(p: &Partition8, n: usize) -> bool {
    p.parts.iter().all(|part| part.len() == n)
}

/// A support and plane triple certifying a partition. `regions[k]` is the
/// octant label of the closed region containing canonical part `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub support: SupportTriple,
    pub planes: PlaneTriple,
    pub regions: [u8; 8],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquipartitionRecord {
    pub partition: CanonicalPartition,
    pub certificates: Vec<Certificate>,
}

/// Work counters. Deterministic for a given input and mode.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// 3-2-1 supports visited, including those skipped by pruning.
    pub support_triples_321: u64,
    /// 3-2-1 supports skipped because `H1` or `(H1, H2)` cannot split evenly.
    pub pruned_321: u64,
    pub support_triples_222: u64,
    /// 2-2-2 supports whose system has a real solution (`q ≥ 0`).
    pub solvable_222: u64,
    /// Plane triples whose completions were checked.
    pub plane_triples: u64,
}

impl std::ops::AddAssign<&SearchStats> for SearchStats {
    fn add_assign(&mut self, o: &SearchStats) {
        self.support_triples_321 += o.support_triples_321;
        self.pruned_321 += o.pruned_321;
        self.support_triples_222 += o.support_triples_222;
        self.solvable_222 += o.solvable_222;
        self.plane_triples += o.plane_triples;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop at the first equipartition in enumeration order.
    pub first_only: bool,
    pub workers: usize,
    /// Settle clear-cut signs in floating point before falling back to exact
    /// arithmetic. The output is the same either way.
    pub float_filter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            first_only: false,
            workers: 1,
            float_filter: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub records: Vec<EquipartitionRecord>,
    pub stats: SearchStats,
}

/// Every orthogonal equipartition of `x`, sorted by canonical partition.
pub fn find_all_equipartitions(x: &PointSet) -> Result<Vec<EquipartitionRecord>> {
    Ok(search(x, &SearchOptions::default())?.records)
}

/// Whether `x` has at least one orthogonal equipartition.
pub fn has_equipartition(x: &PointSet) -> Result<bool> {
    let opts = SearchOptions {
        first_only: true,
        ..SearchOptions::default()
    };
    Ok(!search(x, &opts)?.records.is_empty())
}

pub fn search(x: &PointSet, opts: &SearchOptions) -> Result<SearchOutcome> {
    let workers = opts.workers.max(1);
    let ctx = Ctx {
        vecs: &x.vecs,
        floats: if opts.float_filter { float_coordinates(x) } else { None },
        n: x.part_size(),
        first_only: opts.first_only,
    };
    let units = ctx.units();
    let run = || -> Result<SearchOutcome> {
        let mut stats = SearchStats::default();
        let mut merged: BTreeMap<CanonicalPartition, Vec<Certificate>> = BTreeMap::new();
        let batch = if opts.first_only {
            workers * 4
        } else {
            units.len().max(1)
        };
        for chunk in units.chunks(batch) {
            let outs: Vec<Result<UnitOutput>> = if workers > 1 {
                chunk.par_iter().map(|u| ctx.process(*u)).collect()
            } else {
                chunk.iter().map(|u| ctx.process(*u)).collect()
            };
            for out in outs {
                let out = out?;
                stats += &out.stats;
                for (partition, cert) in out.hits {
                    merged.entry(partition).or_default().push(cert);
                    if opts.first_only {
                        return Ok(SearchOutcome {
                            records: into_records(merged),
                            stats,
                        });
                    }
                }
            }
        }
        Ok(SearchOutcome {
            records: into_records(merged),
            stats,
        })
    };
    if workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to start worker pool")
            .install(run)
    } else {
        run()
    }
}

fn into_records(m: BTreeMap<CanonicalPartition, Vec<Certificate>>) -> Vec<EquipartitionRecord> {
    m.into_iter()
        .map(|(partition, certificates)| EquipartitionRecord {
            partition,
            certificates,
        })
        .collect()
}

fn violation(support: String, point: usize, plane: usize) -> Error {
    Error::GeneralPositionViolation { support, point, plane }
}

fn choose2(m: usize) -> u64 {
    (m * m.saturating_sub(1) / 2) as u64
}

/// A top-level slice of the enumeration: all 3-2-1 supports with a given
/// `A1`, or all 2-2-2 supports whose first pair is a given pair.
#[derive(Debug, Clone, Copy)]
enum Unit {
    ThreeTwoOne([usize; 3]),
    TwoTwoTwo([usize; 2]),
}

#[derive(Default)]
struct UnitOutput {
    hits: Vec<(CanonicalPartition, Certificate)>,
    stats: SearchStats,
}

/// Coordinates as floats when every difference of two of them is exact.
fn float_coordinates(x: &PointSet) -> Option<Vec<[f64; 3]>> {
    const LIMIT: i64 = 1 << 51;
    x.points
        .iter()
        .map(|p| {
            let c = p.to_i64()?;
            c.iter().all(|v| v.abs() < LIMIT).then(|| c.map(|v| v as f64))
        })
        .collect()
}

fn fsub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn big_to_f64(v: &Vec3<BigInt>) -> [f64; 3] {
    v.as_array().map(|c| c.to_f64().unwrap_or(f64::NAN))
}

struct Ctx<'a> {
    vecs: &'a [Vec3<BigInt>],
    floats: Option<Vec<[f64; 3]>>,
    n: usize,
    first_only: bool,
}

impl Ctx<'_> {
    fn units(&self) -> Vec<Unit> {
        let m = self.vecs.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    out.push(Unit::ThreeTwoOne([i, j, k]));
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                out.push(Unit::TwoTwoTwo([i, j]));
            }
        }
        out
    }

    fn process(&self, unit: Unit) -> Result<UnitOutput> {
        match unit {
            Unit::ThreeTwoOne(a1) => self.process_321(a1),
            Unit::TwoTwoTwo(p1) => self.process_222(p1),
        }
    }

    /// Signs of all points against `h`; a zero outside `on_plane` is reported.
    fn column(&self, h: &IntegralPlane, on_plane: &[usize]) -> std::result::Result<Vec<Sign>, usize> {
        let mut out = Vec::with_capacity(self.vecs.len());
        for (idx, p) in self.vecs.iter().enumerate() {
            let s = h.side(p);
            if s == Sign::Zero && !on_plane.contains(&idx) {
                return Err(idx);
            }
            out.push(s);
        }
        Ok(out)
    }

    /// Like [`Ctx::column`], deciding most signs in floating point. `nf`
    /// approximates the normal of `h` and `p0` is a point on `h`.
    fn filtered_column(
        &self,
        h: &IntegralPlane,
        nf: [f64; 3],
        p0: usize,
        on_plane: &[usize],
    ) -> std::result::Result<Vec<Sign>, usize> {
        let Some(f) = &self.floats else {
            return self.column(h, on_plane);
        };
        let mut out = Vec::with_capacity(self.vecs.len());
        for (idx, p) in f.iter().enumerate() {
            if on_plane.contains(&idx) {
                out.push(Sign::Zero);
                continue;
            }
            let w = fsub(*p, f[p0]);
            let v = nf[0] * w[0] + nf[1] * w[1] + nf[2] * w[2];
            let m = (nf[0] * w[0]).abs() + (nf[1] * w[1]).abs() + (nf[2] * w[2]).abs();
            let s = match certified_sign(v, m) {
                Some(s) => s,
                None => h.side(&self.vecs[idx]),
            };
            if s == Sign::Zero {
                return Err(idx);
            }
            out.push(s);
        }
        Ok(out)
    }

    fn process_321(&self, a1: [usize; 3]) -> Result<UnitOutput> {
        let m = self.vecs.len();
        let n = self.n;
        let mut out = UnitOutput::default();
        let label = || format!("321 {a1:?}");
        let n1 = integral_normal_through_3(a1.map(|i| &self.vecs[i])).ok_or_else(|| violation(label(), a1[2], 0))?;
        let h1 = IntegralPlane::rational_through(n1.clone(), &self.vecs[a1[0]]);
        let s1 = self
            .filtered_column(&h1, big_to_f64(&n1), a1[0], &a1)
            .map_err(|p| violation(label(), p, 0))?;

        let rest: Vec<usize> = (0..m).filter(|i| !a1.contains(i)).collect();
        let below = rest.iter().filter(|&&i| s1[i] == Sign::Negative).count();
        let above = rest.len() - below;
        let family = choose2(rest.len()) * (rest.len() as u64 - 2);
        if above > 4 * n || below > 4 * n {
            out.stats.support_triples_321 += family;
            out.stats.pruned_321 += family;
            return Ok(out);
        }

        for (x_pos, &x) in rest.iter().enumerate() {
            for &y in &rest[x_pos + 1..] {
                let rest2: Vec<usize> = rest.iter().copied().filter(|&i| i != x && i != y).collect();
                let label2 = || format!("321 {a1:?} [{x}, {y}]");
                let v2 = self.vecs[y].sub(&self.vecs[x]);
                let n2 = n1.cross(&v2);
                if n2.is_zero() {
                    // Every plane through the pair is orthogonal to H1, so one
                    // of them meets a seventh point.
                    return Err(violation(label2(), y, 1));
                }
                let n2 = n2.canonical_orientation();
                let h2 = IntegralPlane::rational_through(n2.clone(), &self.vecs[x]);
                let s2 = self
                    .filtered_column(&h2, big_to_f64(&n2), x, &[x, y])
                    .map_err(|p| violation(label2(), p, 1))?;

                let mut quadrants = [0usize; 4];
                for &i in &rest2 {
                    quadrants[octant_label([s1[i], s2[i], Sign::Positive]) as usize] += 1;
                }
                if quadrants.iter().any(|&c| c > 2 * n) {
                    out.stats.support_triples_321 += rest2.len() as u64;
                    out.stats.pruned_321 += rest2.len() as u64;
                    continue;
                }

                let n3 = n1.cross(&n2).canonical_orientation();
                let n3f = big_to_f64(&n3);
                let proj: Option<Vec<(f64, f64)>> = self.floats.as_ref().map(|f| {
                    f.iter()
                        .map(|p| {
                            let t = [n3f[0] * p[0], n3f[1] * p[1], n3f[2] * p[2]];
                            (t[0] + t[1] + t[2], t[0].abs() + t[1].abs() + t[2].abs())
                        })
                        .collect()
                });
                for &c in &rest2 {
                    out.stats.support_triples_321 += 1;
                    let mut s3 = Vec::with_capacity(m);
                    for idx in 0..m {
                        if idx == c {
                            s3.push(Sign::Zero);
                            continue;
                        }
                        let certain = proj
                            .as_ref()
                            .and_then(|pr| certified_sign(pr[idx].0 - pr[c].0, pr[idx].1 + pr[c].1));
                        let s = match certain {
                            Some(s) => s,
                            None => Sign::of(&n3.dot(&self.vecs[idx].sub(&self.vecs[c]))),
                        };
                        if s == Sign::Zero {
                            return Err(violation(format!("321 {a1:?} [{x}, {y}] [{c}]"), idx, 2));
                        }
                        s3.push(s);
                    }
                    let support = SupportTriple::three_two_one(a1, [x, y], c);
                    out.stats.plane_triples += 1;
                    let labelings = self.equal_completions([&s1, &s2, &s3], &support)?;
                    if labelings.is_empty() {
                        continue;
                    }
                    let triple = IntegralTriple {
                        planes: [
                            h1.clone(),
                            h2.clone(),
                            IntegralPlane::rational_through(n3.clone(), &self.vecs[c]),
                        ],
                        radicand: BigInt::from(0),
                    };
                    if self.record_hits(&mut out, labelings, &support, &triple)? {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }

    fn process_222(&self, p1: [usize; 2]) -> Result<UnitOutput> {
        let m = self.vecs.len();
        let mut out = UnitOutput::default();
        let free = |i: usize, used: &[usize]| !used.contains(&i);
        for b0 in p1[0] + 1..m {
            if !free(b0, &p1) {
                continue;
            }
            for b1 in b0 + 1..m {
                if !free(b1, &p1) {
                    continue;
                }
                let used = [p1[0], p1[1], b0, b1];
                for c0 in b0 + 1..m {
                    if !free(c0, &used) {
                        continue;
                    }
                    for c1 in c0 + 1..m {
                        if !free(c1, &used) {
                            continue;
                        }
                        out.stats.support_triples_222 += 1;
                        let pairs = [p1, [b0, b1], [c0, c1]];
                        if self.screen_rejects(pairs, &mut out.stats) {
                            continue;
                        }
                        if self.exact_222(pairs, &mut out)? {
                            return Ok(out);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// True when floating point certifies that no completion of the support
    /// is an equipartition.
    fn screen_rejects(&self, pairs: [[usize; 2]; 3], stats: &mut SearchStats) -> bool {
        let Some(f) = &self.floats else {
            return false;
        };
        let v = pairs.map(|[u, w]| fsub(f[w], f[u]));
        match screen_222(&v) {
            Screen222::NoRealSolution => true,
            Screen222::Uncertain => false,
            Screen222::Solutions(sols) => {
                for us in &sols {
                    if self.screen_solution(f, us, pairs) != Some(false) {
                        return false;
                    }
                }
                stats.solvable_222 += 1;
                stats.plane_triples += sols.len() as u64;
                true
            }
        }
    }

    /// `Some(false)` if the approximate planes certainly give no
    /// equipartition, `None` if a sign could not be certified.
    fn screen_solution(&self, f: &[[f64; 3]], us: &[approx::AVec; 3], pairs: [[usize; 2]; 3]) -> Option<bool> {
        let m = f.len();
        let n = self.n;
        let mut cols: [Vec<Sign>; 3] = Default::default();
        for (k, u) in us.iter().enumerate() {
            let base = f[pairs[k][0]];
            let mut col = Vec::with_capacity(m);
            for (idx, p) in f.iter().enumerate() {
                if pairs[k].contains(&idx) {
                    col.push(Sign::Zero);
                } else {
                    col.push(dot(u, &exact_vec(fsub(*p, base))).sign()?);
                }
            }
            cols[k] = col;
            let off = |i: usize| !pairs[..=k].iter().any(|p| p.contains(&i));
            match k {
                0 => {
                    let below = (0..m).filter(|&i| off(i) && cols[0][i] == Sign::Negative).count();
                    let above = (0..m).filter(|&i| off(i)).count() - below;
                    if below > 4 * n || above > 4 * n {
                        return Some(false);
                    }
                }
                1 => {
                    let mut quadrants = [0usize; 4];
                    for i in (0..m).filter(|&i| off(i)) {
                        quadrants[octant_label([cols[0][i], cols[1][i], Sign::Positive]) as usize] += 1;
                    }
                    if quadrants.iter().any(|&c| c > 2 * n) {
                        return Some(false);
                    }
                }
                _ => {}
            }
        }
        let support = SupportTriple::two_two_two(pairs[0], pairs[1], pairs[2]);
        let hits = self.equal_completions([&cols[0], &cols[1], &cols[2]], &support).ok()?;
        Some(!hits.is_empty())
    }

    /// Exact treatment of one 2-2-2 support; returns true when the search
    /// should stop.
    fn exact_222(&self, pairs: [[usize; 2]; 3], out: &mut UnitOutput) -> Result<bool> {
        let support = SupportTriple::two_two_two(pairs[0], pairs[1], pairs[2]);
        let pts = pairs.map(|[u, w]| [&self.vecs[u], &self.vecs[w]]);
        let sols = integral_planes_222(pts, None)?;
        if !sols.is_empty() {
            out.stats.solvable_222 += 1;
        }
        for sol in sols {
            let mut cols: Vec<Vec<Sign>> = Vec::with_capacity(3);
            for (k, h) in sol.planes.iter().enumerate() {
                let col = self
                    .column(h, &pairs[k])
                    .map_err(|p| violation(support.to_string(), p, k))?;
                cols.push(col);
            }
            out.stats.plane_triples += 1;
            let labelings = self.equal_completions([&cols[0], &cols[1], &cols[2]], &support)?;
            if !labelings.is_empty() && self.record_hits(out, labelings, &support, &sol)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Labelings of all points, one per way of resolving the six support
    /// points, in which every octant receives exactly `n` points.
    fn equal_completions(&self, cols: [&[Sign]; 3], support: &SupportTriple) -> Result<Vec<Vec<u8>>> {
        let m = self.vecs.len();
        let n = self.n;
        let mut base = [0usize; 8];
        let mut labels = vec![0u8; m];
        let mut is_support = vec![false; m];
        let mut support_pts: Vec<(usize, u8, u8)> = Vec::with_capacity(6);
        for (k, set) in support.sets().iter().enumerate() {
            for &idx in set {
                is_support[idx] = true;
                let mut signs = [cols[0][idx], cols[1][idx], cols[2][idx]];
                for (j, s) in signs.iter().enumerate() {
                    if j != k && *s == Sign::Zero {
                        return Err(violation(support.to_string(), idx, j));
                    }
                }
                signs[k] = Sign::Positive;
                support_pts.push((idx, octant_label(signs), 1 << k));
            }
        }
        for idx in 0..m {
            if is_support[idx] {
                continue;
            }
            let l = octant_label([cols[0][idx], cols[1][idx], cols[2][idx]]);
            labels[idx] = l;
            base[l as usize] += 1;
        }
        if base.iter().any(|&c| c > n) {
            return Ok(Vec::new());
        }
        let mut hits = Vec::new();
        for mask in 0u32..1 << support_pts.len() {
            let mut counts = base;
            for (j, &(_, l, bit)) in support_pts.iter().enumerate() {
                let l = if mask >> j & 1 == 1 { l | bit } else { l };
                counts[l as usize] += 1;
            }
            if counts.iter().all(|&c| c == n) {
                let mut full = labels.clone();
                for (j, &(idx, l, bit)) in support_pts.iter().enumerate() {
                    full[idx] = if mask >> j & 1 == 1 { l | bit } else { l };
                }
                hits.push(full);
                if self.first_only {
                    break;
                }
            }
        }
        Ok(hits)
    }

    /// Appends certificates; returns true when the search should stop.
    fn record_hits(
        &self,
        out: &mut UnitOutput,
        labelings: Vec<Vec<u8>>,
        support: &SupportTriple,
        triple: &IntegralTriple,
    ) -> Result<bool> {
        let planes = PlaneTriple::from_integral(triple, support.case())?;
        for labels in labelings {
            let p = Partition8::from_labels(&labels);
            let canonical = p.canonical();
            let regions = region_labels(&p, &canonical);
            out.hits.push((
                canonical,
                Certificate {
                    support: support.clone(),
                    planes: planes.clone(),
                    regions,
                },
            ));
            if self.first_only {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn region_labels(p: &Partition8, canonical: &CanonicalPartition) -> [u8; 8] {
    std::array::from_fn(|k| {
        let first = canonical.0[k].first();
        (0..8u8)
            .find(|&l| p.parts[l as usize].first() == first)
            .expect("canonical part missing from labelled partition")
    })
}

/// Re-checks every certificate of a record exactly: orthogonality, support
/// incidence, and containment of each part in its closed region.
pub fn verify_record(x: &PointSet, record: &EquipartitionRecord) -> bool {
    let n = x.part_size();
    let parts = record.partition.parts();
    let mut seen: Vec<usize> = parts.iter().flatten().copied().collect();
    seen.sort_unstable();
    if parts.len() != 8 || parts.iter().any(|p| p.len() != n) || seen != (0..x.len()).collect::<Vec<_>>() {
        return false;
    }
    record.certificates.iter().all(|cert| {
        let supports = cert
            .support
            .sets()
            .clone()
            .map(|s| s.iter().map(|&i| x.points[i].clone()).collect::<Vec<_>>());
        if !validate_triple(&cert.planes, [&supports[0], &supports[1], &supports[2]]) {
            return false;
        }
        let mut labels = cert.regions.to_vec();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != 8 {
            return false;
        }
        let planes = cert.planes.to_integral();
        parts.iter().zip(cert.regions).all(|(part, region)| {
            part.iter().all(|&i| {
                planes.iter().enumerate().all(|(k, h)| {
                    let want = if region >> k & 1 == 1 {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    };
                    let s = h.side(&x.vecs[i]);
                    s == Sign::Zero || s == want
                })
            })
        })
    })
}

/// Randomized completeness check: samples orthogonal frames from random
/// integer quaternions and, for each frame, places every plane in the gap
/// between the `4n`-th and `(4n+1)`-th projections (a plane must halve the
/// set, and any offset in that open gap yields the same split). Returns every
/// equipartition certified this way, sorted and deduplicated.
///
/// Coordinates must fit in `i64`.
pub fn certificate_oracle(x: &PointSet, trials: usize, seed: u64) -> Result<Vec<CanonicalPartition>> {
    assert!(trials > 0, "certificate_oracle needs at least one trial");
    let pts: Vec<[i128; 3]> = x
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| p.to_i64().map(|c| c.map(i128::from)).ok_or(Error::CoordinateRange(i)))
        .collect::<Result<_>>()?;
    let n = x.part_size();
    let half = 4 * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = std::collections::BTreeSet::new();
    let mut proj = vec![[0i128; 3]; pts.len()];
    let mut sorted = vec![0i128; pts.len()];
    let mut labels = vec![0u8; pts.len()];
    'trial: for _ in 0..trials {
        let frame = quaternion_frame(random_quaternion(&mut rng, 1000.0));
        for (pr, p) in proj.iter_mut().zip(&pts) {
            for k in 0..3 {
                pr[k] = frame[k][0] * p[0] + frame[k][1] * p[1] + frame[k][2] * p[2];
            }
        }
        let mut cut = [0i128; 3];
        for k in 0..3 {
            for (s, pr) in sorted.iter_mut().zip(&proj) {
                *s = pr[k];
            }
            sorted.sort_unstable();
            if sorted[half - 1] == sorted[half] {
                continue 'trial;
            }
            cut[k] = sorted[half - 1] + sorted[half];
        }
        let mut counts = [0usize; 8];
        for (l, pr) in labels.iter_mut().zip(&proj) {
            *l = (0..3).fold(0u8, |acc, k| acc | (u8::from(2 * pr[k] < cut[k]) << k));
            counts[*l as usize] += 1;
        }
        if counts.iter().all(|&c| c == n) {
            found.insert(Partition8::from_labels(&labels).canonical());
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::OrientedPlane;
    use crate::solver::SupportCase;

    fn pts(c: &[[i64; 3]]) -> PointSet {
        PointSet::new(c.iter().map(|&p| Point3::from(p)).collect()).unwrap()
    }

    fn octant_points() -> PointSet {
        pts(&[
            [1, 2, 3],
            [-1, 2, 3],
            [1, -2, 3],
            [-1, -2, 3],
            [1, 2, -3],
            [-1, 2, -3],
            [1, -2, -3],
            [-1, -2, -3],
        ])
    }

    fn coordinate_planes() -> PlaneTriple {
        let h =
            |n: [i64; 3]| OrientedPlane::from_integers(Vec3::<BigInt>::from_i64(n[0], n[1], n[2]), 0.into()).unwrap();
        PlaneTriple::new([h([1, 0, 0]), h([0, 1, 0]), h([0, 0, 1])], SupportCase::ThreeTwoOne)
    }

    #[test]
    fn classify_octants() {
        let x = octant_points();
        let m = classify_points(&x, &coordinate_planes(), None).unwrap();
        for (i, row) in m.rows().iter().enumerate() {
            assert_eq!(octant_label(*row), i as u8);
        }
        let parts = enumerate_partitions(&m);
        assert_eq!(parts.len(), 1);
        assert!(is_equipartition(&parts[0], 1));
    }

    #[test]
    fn classify_rejects_point_on_plane() {
        let mut c = vec![
            [1, 2, 3],
            [-1, 2, 3],
            [1, -2, 3],
            [-1, -2, 3],
            [1, 2, -3],
            [-1, 2, -3],
            [1, -2, -3],
        ];
        c.push([0, 5, 7]);
        let x = pts(&c);
        let err = classify_points(&x, &coordinate_planes(), None).unwrap_err();
        assert!(matches!(
            err,
            Error::GeneralPositionViolation { point: 7, plane: 0, .. }
        ));
    }

    #[test]
    fn equipartition_sizes() {
        let labels: Vec<u8> = (0..8).collect();
        assert!(is_equipartition(&Partition8::from_labels(&labels), 1));
        let skewed = [0u8, 0, 2, 3, 4, 5, 6, 7];
        assert!(!is_equipartition(&Partition8::from_labels(&skewed), 1));
        let doubled: Vec<u8> = (0..16).map(|i| (i / 2) as u8).collect();
        assert!(is_equipartition(&Partition8::from_labels(&doubled), 2));
    }

    #[test]
    fn input_size_checked() {
        let c: Vec<Point3> = (0..12).map(|i| Point3::new(i, i * i, i * i * i)).collect();
        assert_eq!(PointSet::new(c), Err(Error::InputSizeError(12)));
        let d: Vec<Point3> = (0..8).map(|i| Point3::new(i % 7, 0, 0)).collect();
        assert_eq!(PointSet::new(d), Err(Error::DuplicatePoints(0, 7)));
    }

    #[test]
    fn canonical_partition_ignores_labels() {
        let a = Partition8::from_labels(&[0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7]);
        let b = Partition8::from_labels(&[7, 7, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 0, 0]);
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(a, b);
    }
}
