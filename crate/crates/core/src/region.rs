//! Two-dimensional rate regions.
//!
//! A [`RateRegion`] is a list of halfspaces `c1·R1 + c2·R2 ≤ bound`, implicitly
//! intersected with the nonnegative quadrant. Vertices are derived on demand by
//! clipping a large box against each halfspace in turn; every vertex produced
//! this way is the exact intersection of two input lines, so precision does not
//! degrade with the number of halfspaces.
//!
//! The geometric queries used by the rest of the crate live here: Pareto
//! frontier sampling, convex hull of unions, containment, and the additive
//! (gap) and multiplicative (ratio) distances between nested regions.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width of the initial clipping box; any vertex beyond half of this is
/// taken as evidence of an unbounded region.
const BOX: f64 = 1e12;

/// Relative tolerance for on-line tests during clipping.
const CLIP_EPS: f64 = 1e-12;

/// Slack tolerance used by the gap and ratio bisections.
pub const NESTING_TOL: f64 = 1e-9;

/// Absolute accuracy of [`max_gap`] and [`max_ratio`].
pub const BISECTION_ACCURACY: f64 = 1e-7;

const SNAP_REL: f64 = 1e-12;
const FLAT_SIN: f64 = 1e-12;

/// A rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    pub const ORIGIN: RatePoint = RatePoint { r1: 0.0, r2: 0.0 };

    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    fn dist(self, other: RatePoint) -> f64 {
        (self.r1 - other.r1).hypot(self.r2 - other.r2)
    }

    fn norm(self) -> f64 {
        self.r1.hypot(self.r2)
    }
}

/// `c1·R1 + c2·R2 ≤ bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub c1: f64,
    pub c2: f64,
    pub bound: f64,
}

impl Halfspace {
    pub fn new(c1: f64, c2: f64, bound: f64) -> Result<Self> {
        let h = Self { c1, c2, bound };
        h.validate()?;
        Ok(h)
    }

    /// `R1 ≤ bound`
    pub fn r1(bound: f64) -> Self {
        Self { c1: 1.0, c2: 0.0, bound }
    }

    /// `R2 ≤ bound`
    pub fn r2(bound: f64) -> Self {
        Self { c1: 0.0, c2: 1.0, bound }
    }

    /// `R1 + R2 ≤ bound`
    pub fn sum(bound: f64) -> Self {
        Self { c1: 1.0, c2: 1.0, bound }
    }

    fn validate(&self) -> Result<()> {
        if !(self.c1.is_finite() && self.c2.is_finite() && self.bound.is_finite()) {
            return Err(Error::InvalidHalfspace(format!("non-finite entry in {self:?}")));
        }
        if self.c1 == 0.0 && self.c2 == 0.0 {
            return Err(Error::InvalidHalfspace("zero normal".into()));
        }
        Ok(())
    }

    fn eval(&self, p: RatePoint) -> f64 {
        self.c1 * p.r1 + self.c2 * p.r2 - self.bound
    }

    /// Slack in coordinate units: positive inside, negative outside.
    pub fn slack(&self, p: RatePoint) -> f64 {
        -self.eval(p) / self.c1.abs().max(self.c2.abs())
    }

    fn is_inside(&self, p: RatePoint) -> bool {
        let scale = (self.c1 * p.r1).abs() + (self.c2 * p.r2).abs() + self.bound.abs();
        self.eval(p) <= CLIP_EPS * scale.max(1.0)
    }

    fn normalized(self) -> Self {
        let m = self.c1.abs().max(self.c2.abs());
        Self { c1: self.c1 / m, c2: self.c2 / m, bound: self.bound / m }
    }

    /// True when the halfspace is implied by `R1 ≥ 0, R2 ≥ 0`.
    fn implied_by_quadrant(&self) -> bool {
        self.c1 <= 0.0 && self.c2 <= 0.0 && self.bound >= 0.0
    }
}

/// Convex subset of the nonnegative quadrant described by halfspaces.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RegionRepr", into = "RegionRepr")]
pub struct RateRegion {
    halfspaces: Vec<Halfspace>,
    vertices: OnceLock<std::result::Result<Vec<RatePoint>, Error>>,
}

#[derive(Serialize, Deserialize)]
struct RegionRepr {
    halfspaces: Vec<Halfspace>,
}

impl TryFrom<RegionRepr> for RateRegion {
    type Error = Error;
    fn try_from(r: RegionRepr) -> Result<Self> {
        RateRegion::new(r.halfspaces)
    }
}

impl From<RateRegion> for RegionRepr {
    fn from(r: RateRegion) -> Self {
        RegionRepr { halfspaces: r.halfspaces }
    }
}

impl fmt::Debug for RateRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RateRegion").field("halfspaces", &self.halfspaces).finish()
    }
}

impl PartialEq for RateRegion {
    fn eq(&self, other: &Self) -> bool {
        self.halfspaces == other.halfspaces
    }
}

impl RateRegion {
    pub fn new(halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            h.validate()?;
        }
        Ok(Self::from_trusted(halfspaces))
    }

    fn from_trusted(halfspaces: Vec<Halfspace>) -> Self {
        Self { halfspaces, vertices: OnceLock::new() }
    }

    /// `{R1 ≤ r1_max, R2 ≤ r2_max}`
    pub fn rectangle(r1_max: f64, r2_max: f64) -> Self {
        Self::from_trusted(vec![Halfspace::r1(r1_max), Halfspace::r2(r2_max)])
    }

    /// `{R1 ≤ r1_max, R1 + R2 ≤ sum_max}`, the shape of every single-distribution
    /// bound in this crate.
    pub fn r1_sum(r1_max: f64, sum_max: f64) -> Self {
        Self::from_trusted(vec![Halfspace::r1(r1_max), Halfspace::sum(sum_max)])
    }

    /// The region `{(0, 0)}`.
    pub fn origin() -> Self {
        Self::rectangle(0.0, 0.0)
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Multiplies every bound by `s`, i.e. scales the region about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        let hs = self.halfspaces.iter().map(|h| Halfspace { bound: h.bound * s, ..*h }).collect();
        Self::from_trusted(hs)
    }

    /// Counter-clockwise vertices of the region (quadrant included). Empty for
    /// an infeasible system.
    pub fn vertices(&self) -> Result<&[RatePoint]> {
        self.vertices
            .get_or_init(|| clip_vertices(&self.halfspaces))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn is_bounded(&self) -> bool {
        self.vertices().is_ok()
    }

    /// True iff `p` satisfies every halfspace (and the quadrant) with slack ≥ −tol.
    pub fn contains_point(&self, p: RatePoint, tol: f64) -> bool {
        p.r1 >= -tol && p.r2 >= -tol && self.halfspaces.iter().all(|h| h.slack(p) >= -tol)
    }

    /// Largest R1 in the region.
    pub fn max_r1(&self) -> Result<f64> {
        Ok(self.vertices()?.iter().map(|p| p.r1).fold(0.0, f64::max))
    }

    /// Largest R1 + R2 in the region.
    pub fn max_sum(&self) -> Result<f64> {
        Ok(self.vertices()?.iter().map(|p| p.r1 + p.r2).fold(0.0, f64::max))
    }

    /// Largest R2 attainable with the given R1, if any.
    pub fn max_r2_at(&self, r1: f64) -> Result<Option<f64>> {
        let v = self.vertices()?;
        Ok(upper_envelope_at(v, r1))
    }
}

fn intersect(a: &Halfspace, b: &Halfspace) -> Option<RatePoint> {
    let det = a.c1 * b.c2 - a.c2 * b.c1;
    let scale = a.c1.hypot(a.c2) * b.c1.hypot(b.c2);
    if det.abs() <= 1e-14 * scale {
        return None;
    }
    Some(RatePoint {
        r1: (a.bound * b.c2 - b.bound * a.c2) / det,
        r2: (a.c1 * b.bound - b.c1 * a.bound) / det,
    })
}

/// Sutherland–Hodgman clipping that remembers which line carries each edge, so
/// new vertices are computed as exact line–line intersections.
fn clip_vertices(halfspaces: &[Halfspace]) -> std::result::Result<Vec<RatePoint>, Error> {
    let mut lines = vec![
        Halfspace { c1: 0.0, c2: -1.0, bound: 0.0 },
        Halfspace::r1(BOX),
        Halfspace::r2(BOX),
        Halfspace { c1: -1.0, c2: 0.0, bound: 0.0 },
    ];
    // (vertex, index of the line carrying the edge that leaves this vertex)
    let mut poly: Vec<(RatePoint, usize)> = vec![
        (RatePoint::new(0.0, 0.0), 0),
        (RatePoint::new(BOX, 0.0), 1),
        (RatePoint::new(BOX, BOX), 2),
        (RatePoint::new(0.0, BOX), 3),
    ];
    for h in halfspaces {
        lines.push(*h);
        let k = lines.len() - 1;
        poly = clip_once(&poly, &lines, k);
        if poly.is_empty() {
            return Ok(Vec::new());
        }
    }
    let verts: Vec<RatePoint> = poly.into_iter().map(|(p, _)| p).collect();
    if verts.iter().any(|p| p.r1 > BOX / 2.0 || p.r2 > BOX / 2.0) {
        return Err(Error::UnboundedRegion);
    }
    Ok(verts)
}

fn clip_once(poly: &[(RatePoint, usize)], lines: &[Halfspace], k: usize) -> Vec<(RatePoint, usize)> {
    let cut = &lines[k];
    let n = poly.len();
    let mut out: Vec<(RatePoint, usize)> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let (p, e) = poly[i];
        let (q, _) = poly[(i + 1) % n];
        let p_in = cut.is_inside(p);
        let q_in = cut.is_inside(q);
        match (p_in, q_in) {
            (true, true) => out.push((p, e)),
            (true, false) => {
                out.push((p, e));
                out.push((crossing(p, q, &lines[e], cut), k));
            }
            (false, true) => out.push((crossing(p, q, &lines[e], cut), e)),
            (false, false) => {}
        }
    }
    dedup_cyclic(out)
}

fn crossing(p: RatePoint, q: RatePoint, edge: &Halfspace, cut: &Halfspace) -> RatePoint {
    if let Some(x) = intersect(edge, cut) {
        return x;
    }
    let dp = cut.eval(p);
    let dq = cut.eval(q);
    let t = if (dp - dq).abs() > 0.0 { dp / (dp - dq) } else { 0.0 };
    RatePoint::new(p.r1 + t * (q.r1 - p.r1), p.r2 + t * (q.r2 - p.r2))
}

fn same_point(a: RatePoint, b: RatePoint) -> bool {
    a.dist(b) <= CLIP_EPS * (1.0 + a.norm().max(b.norm()))
}

fn dedup_cyclic(pts: Vec<(RatePoint, usize)>) -> Vec<(RatePoint, usize)> {
    let mut out: Vec<(RatePoint, usize)> = Vec::with_capacity(pts.len());
    for (p, e) in pts {
        // a zero-length edge p_prev → p: drop p_prev, keep p's outgoing line
        if let Some(last) = out.last() {
            if same_point(last.0, p) {
                out.pop();
            }
        }
        out.push((p, e));
    }
    while out.len() > 1 && same_point(out[out.len() - 1].0, out[0].0) {
        out.pop();
    }
    out
}

fn upper_envelope_at(verts: &[RatePoint], r1: f64) -> Option<f64> {
    let n = verts.len();
    let mut best: Option<f64> = None;
    let tol = 1e-12 * (1.0 + r1.abs());
    let mut push = |y: f64| best = Some(best.map_or(y, |b: f64| b.max(y)));
    for i in 0..n {
        let p = verts[i];
        let q = verts[(i + 1) % n];
        let (lo, hi) = if p.r1 <= q.r1 { (p.r1, q.r1) } else { (q.r1, p.r1) };
        if r1 < lo - tol || r1 > hi + tol {
            continue;
        }
        if hi - lo <= tol {
            push(p.r2.max(q.r2));
        } else {
            let t = ((r1 - p.r1) / (q.r1 - p.r1)).clamp(0.0, 1.0);
            push(p.r2 + t * (q.r2 - p.r2));
        }
    }
    best
}

/// Pareto frontier sampled at `resolution` equally spaced R1 values from 0 to
/// the region's maximum R1.
pub fn frontier(region: &RateRegion, resolution: usize) -> Result<Vec<RatePoint>> {
    if resolution < 2 {
        return Err(Error::InvalidParameter("frontier resolution must be at least 2".into()));
    }
    let verts = region.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyInput("region is infeasible"));
    }
    let r1_max = region.max_r1()?;
    let mut out = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let r1 = if k + 1 == resolution { r1_max } else { r1_max * k as f64 / (resolution - 1) as f64 };
        let r2 = upper_envelope_at(verts, r1).unwrap_or(0.0).max(0.0);
        out.push(RatePoint::new(r1, r2));
    }
    // enforce monotone r2 against rounding in the envelope
    for k in 1..out.len() {
        if out[k].r2 > out[k - 1].r2 {
            out[k].r2 = out[k - 1].r2;
        }
    }
    Ok(out)
}

fn cross(o: RatePoint, a: RatePoint, b: RatePoint) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Counter-clockwise convex hull (Andrew's monotone chain), collinear points removed.
pub fn convex_hull(points: &[RatePoint]) -> Vec<RatePoint> {
    let finite = || points.iter().filter(|p| p.r1.is_finite() && p.r2.is_finite());
    // Coordinates that are zero up to rounding are snapped to exactly zero:
    // slivers of width 1e-16 otherwise defeat the collinearity test below.
    // This also folds −0.0 into 0.0, which `total_cmp` would order first.
    let scale = finite().map(|p| p.r1.abs().max(p.r2.abs())).fold(0.0, f64::max);
    let snap = |x: f64| if x.abs() <= SNAP_REL * scale { 0.0 } else { x };
    let mut pts: Vec<RatePoint> = finite().map(|p| RatePoint::new(snap(p.r1), snap(p.r2))).collect();
    pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2)));
    pts.dedup_by(|a, b| same_point(*a, *b));
    if pts.len() <= 2 {
        return pts;
    }
    let turns_left = |o: RatePoint, a: RatePoint, b: RatePoint| cross(o, a, b) > 0.0;
    let mut hull: Vec<RatePoint> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    drop_flat_vertices(hull)
}

/// Removes vertices of a convex polygon whose turning angle is below `1e-12` rad.
fn drop_flat_vertices(mut hull: Vec<RatePoint>) -> Vec<RatePoint> {
    let mut i = 0;
    while hull.len() > 2 && i < hull.len() {
        let n = hull.len();
        let (o, a, b) = (hull[(i + n - 1) % n], hull[i], hull[(i + 1) % n]);
        if cross(o, a, b) <= FLAT_SIN * o.dist(a) * a.dist(b) {
            hull.remove(i);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    hull
}

/// Smallest downward-closed convex region containing `points`: the hull of the
/// points, their projections onto both axes, and the origin. Quadrant-implied
/// edges are dropped.
pub fn region_from_points(points: &[RatePoint]) -> RateRegion {
    let mut pts: Vec<RatePoint> = Vec::with_capacity(3 * points.len() + 1);
    for p in points {
        pts.extend([*p, RatePoint::new(p.r1, 0.0), RatePoint::new(0.0, p.r2)]);
    }
    pts.push(RatePoint::ORIGIN);
    let hull = convex_hull(&pts);
    let halfspaces = hull_halfspaces(&hull);
    let region = RateRegion::from_trusted(halfspaces);
    let _ = region.vertices.set(Ok(hull));
    region
}

fn hull_halfspaces(hull: &[RatePoint]) -> Vec<Halfspace> {
    let mut hs = Vec::new();
    match hull.len() {
        0 => {}
        1 => {
            let p = hull[0];
            hs.push(Halfspace::r1(p.r1));
            hs.push(Halfspace::r2(p.r2));
            hs.push(Halfspace { c1: -1.0, c2: 0.0, bound: -p.r1 });
            hs.push(Halfspace { c1: 0.0, c2: -1.0, bound: -p.r2 });
        }
        2 => {
            let (p, q) = (hull[0], hull[1]);
            let d = Halfspace { c1: q.r1 - p.r1, c2: q.r2 - p.r2, bound: 0.0 };
            let n = Halfspace { c1: d.c2, c2: -d.c1, bound: 0.0 };
            for (c1, c2, at) in [(d.c1, d.c2, q), (-d.c1, -d.c2, p), (n.c1, n.c2, p), (-n.c1, -n.c2, p)] {
                let h = Halfspace { c1, c2, bound: c1 * at.r1 + c2 * at.r2 }.normalized();
                hs.push(h);
            }
        }
        n => {
            for i in 0..n {
                let p = hull[i];
                let q = hull[(i + 1) % n];
                let c1 = q.r2 - p.r2;
                let c2 = -(q.r1 - p.r1);
                hs.push(Halfspace { c1, c2, bound: c1 * p.r1 + c2 * p.r2 }.normalized());
            }
        }
    }
    hs.retain(|h| !h.implied_by_quadrant());
    if hs.is_empty() {
        // only possible for the origin alone
        hs = vec![Halfspace::r1(0.0), Halfspace::r2(0.0)];
    }
    hs
}

/// Convex hull of the union of `regions`, re-expressed as halfspaces.
pub fn union_hull(regions: &[RateRegion]) -> Result<RateRegion> {
    if regions.is_empty() {
        return Err(Error::EmptyInput("union_hull needs at least one region"));
    }
    let mut pts = Vec::new();
    for r in regions {
        pts.extend_from_slice(r.vertices()?);
    }
    Ok(region_from_points(&pts))
}

fn worst_slack(outer: &RateRegion, pts: &[RatePoint]) -> f64 {
    let mut worst = f64::INFINITY;
    for p in pts {
        worst = worst.min(p.r1).min(p.r2);
        for h in outer.halfspaces() {
            worst = worst.min(h.slack(*p));
        }
    }
    worst
}

fn all_inside(outer: &RateRegion, pts: &[RatePoint], tol: f64) -> bool {
    pts.iter().all(|p| outer.contains_point(*p, tol))
}

/// True iff every vertex of `inner` satisfies every halfspace of `outer` with
/// slack ≥ −tol. An unbounded `inner` is never contained.
pub fn contains(outer: &RateRegion, inner: &RateRegion, tol: f64) -> bool {
    match inner.vertices() {
        Ok(v) => all_inside(outer, v, tol),
        Err(_) => false,
    }
}

fn check_nested(outer: &RateRegion, inner: &RateRegion) -> Result<()> {
    outer.vertices()?;
    let v = inner.vertices()?;
    let slack = worst_slack(outer, v);
    if slack < -NESTING_TOL {
        return Err(Error::InnerExceedsOuter { slack });
    }
    Ok(())
}

/// `((v.r1 − g)⁺, (v.r2 − g)⁺)` for every vertex `v`.
fn shift_down(verts: &[RatePoint], g: f64) -> Vec<RatePoint> {
    verts.iter().map(|p| RatePoint::new((p.r1 - g).max(0.0), (p.r2 - g).max(0.0))).collect()
}

/// Smallest `g ≥ 0` such that every point of `outer`, lowered by `g` in each
/// coordinate and floored at zero, lies inside `inner`; the per-user additive
/// gap in bits. Vertices suffice because rate regions are downward closed.
pub fn max_gap(outer: &RateRegion, inner: &RateRegion) -> Result<f64> {
    check_nested(outer, inner)?;
    let ov = outer.vertices()?;
    let fits = |g: f64| all_inside(inner, &shift_down(ov, g), NESTING_TOL);
    if fits(0.0) {
        return Ok(0.0);
    }
    let lo = 0.0;
    let mut hi = ov.iter().map(|p| p.r1.max(p.r2)).fold(0.0, f64::max);
    if !fits(hi) {
        // everything lands on the origin, which the nesting check covers
        hi *= 1.0 + 1e-9;
    }
    Ok(bisect(lo, hi, fits))
}

/// Smallest `c ≥ 1` such that `outer` scaled by `1/c` lies inside `inner`.
/// Infinite when `inner` is flat along an axis on which `outer` is not.
pub fn max_ratio(outer: &RateRegion, inner: &RateRegion) -> Result<f64> {
    check_nested(outer, inner)?;
    let ov = outer.vertices()?;
    let fits = |c: f64| {
        let scaled: Vec<RatePoint> = ov.iter().map(|p| RatePoint::new(p.r1 / c, p.r2 / c)).collect();
        all_inside(inner, &scaled, NESTING_TOL)
    };
    if fits(1.0) {
        return Ok(1.0);
    }
    // no scaling helps along an axis where inner has no extent and outer does
    let extent = |v: &[RatePoint]| v.iter().fold((0.0f64, 0.0f64), |(a, b), p| (a.max(p.r1), b.max(p.r2)));
    let (o1, o2) = extent(ov);
    let (i1, i2) = extent(inner.vertices()?);
    if (i1 <= NESTING_TOL && o1 > NESTING_TOL) || (i2 <= NESTING_TOL && o2 > NESTING_TOL) {
        return Ok(f64::INFINITY);
    }
    let mut lo = 1.0;
    let mut hi = 2.0;
    while !fits(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Ok(f64::INFINITY);
        }
    }
    Ok(bisect(lo, hi, fits))
}

/// Shrinks `[lo, hi]` around the threshold of a monotone predicate that fails
/// at `lo` and holds at `hi`; returns the final `hi`.
fn bisect(mut lo: f64, mut hi: f64, holds: impl Fn(f64) -> bool) -> f64 {
    while hi - lo > BISECTION_ACCURACY {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Mutual containment within `tol`, plus a vertex-by-vertex match: every vertex
/// of each region lies within `tol` of a vertex of the other.
pub fn same_region(a: &RateRegion, b: &RateRegion, tol: f64) -> Result<bool> {
    let va = a.vertices()?;
    let vb = b.vertices()?;
    let matched = |xs: &[RatePoint], ys: &[RatePoint]| {
        xs.iter().all(|x| ys.iter().any(|y| (x.r1 - y.r1).abs() <= tol && (x.r2 - y.r2).abs() <= tol))
    };
    Ok(contains(a, b, tol) && contains(b, a, tol) && matched(va, vb) && matched(vb, va))
}

/// CSV with header `r1,r2`, values at 12 significant digits.
pub fn frontier_csv(points: &[RatePoint]) -> String {
    let mut s = String::from("r1,r2\n");
    for p in points {
        s.push_str(&crate::format::sig12(p.r1));
        s.push(',');
        s.push_str(&crate::format::sig12(p.r2));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<RatePoint> {
        v.iter().map(|&(a, b)| RatePoint::new(a, b)).collect()
    }

    fn close(a: &[RatePoint], b: &[(f64, f64)]) -> bool {
        a.len() == b.len()
            && a.iter().zip(b).all(|(p, q)| (p.r1 - q.0).abs() < 1e-12 && (p.r2 - q.1).abs() < 1e-12)
    }

    #[test]
    fn box_frontier() {
        let r = RateRegion::rectangle(1.0, 1.0);
        let f = frontier(&r, 3).unwrap();
        assert!(close(&f, &[(0.0, 1.0), (0.5, 1.0), (1.0, 1.0)]), "{f:?}");
    }

    #[test]
    fn pentagon_frontier() {
        let r = RateRegion::r1_sum(2.0, 4.0);
        let f = frontier(&r, 3).unwrap();
        assert!(close(&f, &[(0.0, 4.0), (1.0, 3.0), (2.0, 2.0)]), "{f:?}");
    }

    #[test]
    fn degenerate_point_frontier() {
        let f = frontier(&RateRegion::origin(), 4).unwrap();
        assert!(f.iter().all(|p| p.r1 == 0.0 && p.r2 == 0.0));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn unbounded_frontier_errors() {
        let r = RateRegion::new(vec![Halfspace::r1(1.0)]).unwrap();
        assert_eq!(frontier(&r, 3).unwrap_err(), Error::UnboundedRegion);
        assert_eq!(frontier(&r, 3).unwrap_err().to_string(), "unbounded region");
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(Halfspace::new(0.0, 0.0, 1.0).is_err());
        assert!(RateRegion::new(vec![Halfspace { c1: 0.0, c2: 0.0, bound: 1.0 }]).is_err());
    }

    #[test]
    fn segment_region_vertices() {
        let r = RateRegion::rectangle(0.0, 2.0);
        let v = r.vertices().unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.contains(&RatePoint::new(0.0, 0.0)) && v.contains(&RatePoint::new(0.0, 2.0)));
    }

    #[test]
    fn hull_of_two_segments() {
        let a = RateRegion::rectangle(1.0, 0.0);
        let b = RateRegion::rectangle(0.0, 1.0);
        let h = union_hull(&[a, b]).unwrap();
        assert_eq!(h.halfspaces(), &[Halfspace::sum(1.0)]);
    }

    #[test]
    fn hull_idempotent() {
        let a = RateRegion::r1_sum(2.0, 3.0);
        let h = union_hull(&[a.clone(), a.clone()]).unwrap();
        assert!(same_region(&h, &a, 1e-12).unwrap());
    }

    #[test]
    fn hull_of_segments_along_axis() {
        let a = RateRegion::rectangle(0.0, 1.0);
        let b = RateRegion::rectangle(0.0, 3.0);
        let h = union_hull(&[a, b]).unwrap();
        assert!(same_region(&h, &RateRegion::rectangle(0.0, 3.0), 1e-12).unwrap());
    }

    #[test]
    fn union_hull_empty_errors() {
        assert!(matches!(union_hull(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn containment_examples() {
        let big = RateRegion::rectangle(2.0, 2.0);
        let small = RateRegion::rectangle(1.0, 1.0);
        assert!(contains(&big, &small, 0.0));
        assert!(!contains(&small, &big, 0.0));
        assert!(contains(&small, &small, 0.0));
    }

    #[test]
    fn gap_examples() {
        let big = RateRegion::rectangle(2.0, 2.0);
        let small = RateRegion::rectangle(1.0, 1.0);
        assert_eq!(max_gap(&small, &small).unwrap(), 0.0);
        assert!((max_gap(&big, &small).unwrap() - 1.0).abs() < 1e-6);
        assert!(matches!(max_gap(&small, &big), Err(Error::InnerExceedsOuter { .. })));
    }

    #[test]
    fn ratio_examples() {
        let big = RateRegion::rectangle(2.0, 2.0);
        let small = RateRegion::rectangle(1.0, 1.0);
        assert_eq!(max_ratio(&small, &small).unwrap(), 1.0);
        assert!((max_ratio(&big, &small).unwrap() - 2.0).abs() < 1e-6);
        assert_eq!(max_ratio(&big, &RateRegion::origin()).unwrap(), f64::INFINITY);
    }

    #[test]
    fn gap_against_origin_is_full_extent() {
        let big = RateRegion::r1_sum(1.0, 3.0);
        let g = max_gap(&big, &RateRegion::origin()).unwrap();
        assert!((g - 3.0).abs() < 1e-6, "{g}");
    }

    #[test]
    fn hull_removes_collinear_and_interior() {
        let h = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 2.0), (1.0, 1.0), (0.0, 2.0)]));
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn region_json_round_trip() {
        let r = RateRegion::r1_sum(1.5, 2.5);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"halfspaces":[{"c1":1.0,"c2":0.0,"bound":1.5},{"c1":1.0,"c2":1.0,"bound":2.5}]}"#);
        let back: RateRegion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RateRegion>(r#"{"halfspaces":[{"c1":0,"c2":0,"bound":1}]}"#).is_err());
    }

    #[test]
    fn frontier_csv_header() {
        let s = frontier_csv(&[RatePoint::new(0.0, 1.0)]);
        assert_eq!(s, "r1,r2\n0,1\n");
    }

    #[test]
    fn infeasible_region_has_no_vertices() {
        let r = RateRegion::new(vec![Halfspace::r1(-1.0)]).unwrap();
        assert!(r.vertices().unwrap().is_empty());
    }
}
