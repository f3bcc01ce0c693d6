//! Discrete memoryless channels with finite alphabets.
//!
//! Information quantities are evaluated exactly on probability tensors. Unions
//! over input distributions are approximated by enumerating the probability
//! simplex on a grid with a fixed denominator and taking the convex hull of the
//! per-distribution regions.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{union_hull, Halfspace, RateRegion};

/// Largest admissible `grid_steps^(|X1||X2|-1)`.
pub const GRID_LIMIT: f64 = 1e7;

const MASS_TOL: f64 = 1e-12;

/// `P(y1, y2 | x1, x2)` with alphabet sizes `(|X1|, |X2|, |Y1|, |Y2|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DmcRepr", into = "DmcRepr")]
pub struct Dmc {
    sizes: [usize; 4],
    /// Row-major over `[x1][x2][y1][y2]`.
    transition: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DmcRepr {
    sizes: [usize; 4],
    transition: Vec<Vec<Vec<Vec<f64>>>>,
}

impl TryFrom<DmcRepr> for Dmc {
    type Error = Error;
    fn try_from(r: DmcRepr) -> Result<Self> {
        let [a, b, c, d] = r.sizes;
        let shape_err = || Error::DimensionMismatch(format!("transition array does not match sizes {:?}", r.sizes));
        if r.transition.len() != a {
            return Err(shape_err());
        }
        let mut flat = Vec::with_capacity(a * b * c * d);
        for x1 in &r.transition {
            if x1.len() != b {
                return Err(shape_err());
            }
            for x2 in x1 {
                if x2.len() != c {
                    return Err(shape_err());
                }
                for y1 in x2 {
                    if y1.len() != d {
                        return Err(shape_err());
                    }
                    flat.extend_from_slice(y1);
                }
            }
        }
        Dmc::new(r.sizes, flat)
    }
}

impl From<Dmc> for DmcRepr {
    fn from(d: Dmc) -> Self {
        let [a, b, c, e] = d.sizes;
        let transition = (0..a)
            .map(|x1| (0..b).map(|x2| (0..c).map(|y1| (0..e).map(|y2| d.prob(x1, x2, y1, y2)).collect()).collect()).collect())
            .collect();
        DmcRepr { sizes: d.sizes, transition }
    }
}

impl Dmc {
    pub fn new(sizes: [usize; 4], transition: Vec<f64>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::DimensionMismatch("alphabet sizes must be positive".into()));
        }
        if transition.len() != sizes.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!(
                "transition has {} entries, sizes {:?} need {}",
                transition.len(),
                sizes,
                sizes.iter().product::<usize>()
            )));
        }
        if let Some(p) = transition.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("transition entry {p} outside [0, 1]")));
        }
        let slice = sizes[2] * sizes[3];
        for (k, chunk) in transition.chunks(slice).enumerate() {
            let s: f64 = chunk.iter().sum();
            if (s - 1.0).abs() > MASS_TOL {
                let (x1, x2) = (k / sizes[1], k % sizes[1]);
                return Err(Error::InvalidDistribution(format!("P(.|x1={x1}, x2={x2}) sums to {s}")));
            }
        }
        Ok(Self { sizes, transition })
    }

    pub fn from_fn(sizes: [usize; 4], f: impl Fn(usize, usize, usize, usize) -> f64) -> Result<Self> {
        let mut t = Vec::with_capacity(sizes.iter().product());
        for x1 in 0..sizes[0] {
            for x2 in 0..sizes[1] {
                for y1 in 0..sizes[2] {
                    for y2 in 0..sizes[3] {
                        t.push(f(x1, x2, y1, y2));
                    }
                }
            }
        }
        Self::new(sizes, t)
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> f64 {
        let [_, b, c, d] = self.sizes;
        self.transition[((x1 * b + x2) * c + y1) * d + y2]
    }

    /// `P(y1 | x1, x2)`
    pub fn y1_marginal(&self, x1: usize, x2: usize, y1: usize) -> f64 {
        (0..self.sizes[3]).map(|y2| self.prob(x1, x2, y1, y2)).sum()
    }

    /// The deterministic map `(x1, x2) → y1`, when there is one.
    pub fn y1_function(&self) -> Option<Vec<Vec<usize>>> {
        let [a, b, c, _] = self.sizes;
        let mut f = vec![vec![0; b]; a];
        for (x1, row) in f.iter_mut().enumerate() {
            for (x2, slot) in row.iter_mut().enumerate() {
                let mut hit = None;
                for y1 in 0..c {
                    let p = self.y1_marginal(x1, x2, y1);
                    if (p - 1.0).abs() <= MASS_TOL {
                        hit = Some(y1);
                    } else if p.abs() > MASS_TOL {
                        return None;
                    }
                }
                *slot = hit?;
            }
        }
        Some(f)
    }
}

/// Probability tensor over named finite variables, row-major in name order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    names: Vec<String>,
    dims: Vec<usize>,
    table: Vec<f64>,
}

impl JointDistribution {
    pub fn new(names: Vec<String>, dims: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        if names.len() != dims.len() {
            return Err(Error::DimensionMismatch("one dimension per variable name".into()));
        }
        if table.len() != dims.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!("table has {} entries for dims {dims:?}", table.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidParameter(format!("duplicate variable name `{n}`")));
            }
        }
        if table.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::InvalidDistribution("negative or NaN entry".into()));
        }
        let mass: f64 = table.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!("total mass {mass}")));
        }
        Ok(Self { names, dims, table })
    }

    /// Input law `P(x1, x2)` given as a `|X1| × |X2|` row-major table.
    pub fn inputs(x1: usize, x2: usize, table: Vec<f64>) -> Result<Self> {
        Self::new(vec!["X1".into(), "X2".into()], vec![x1, x2], table)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    /// Entropy in bits of the marginal over the variables at `axes`.
    fn entropy_axes(&self, axes: &[usize]) -> f64 {
        if axes.is_empty() {
            return 0.0;
        }
        let n = self.dims.len();
        let mut strides = vec![0usize; n];
        let mut size = 1usize;
        for &a in axes.iter().rev() {
            strides[a] = size;
            size *= self.dims[a];
        }
        let mut marginal = vec![0.0; size];
        let mut idx = vec![0usize; n];
        let mut m = 0usize;
        for &p in &self.table {
            marginal[m] += p;
            // odometer increment, tracking the marginal index
            for ax in (0..n).rev() {
                idx[ax] += 1;
                m += strides[ax];
                if idx[ax] < self.dims[ax] {
                    break;
                }
                m -= strides[ax] * self.dims[ax];
                idx[ax] = 0;
            }
        }
        -marginal.iter().filter(|&&p| p > 0.0).map(|&p| p * p.log2()).sum::<f64>()
    }

    pub fn entropy(&self, names: &[&str]) -> Result<f64> {
        Ok(self.entropy_axes(&self.indices(names)?))
    }

    /// `H(A | C)`
    pub fn cond_entropy(&self, a: &[&str], c: &[&str]) -> Result<f64> {
        let ac: Vec<&str> = a.iter().chain(c).copied().collect();
        Ok((self.entropy(&ac)? - self.entropy(c)?).max(0.0))
    }

    /// Joint law `P(prefix) · P(y1, y2 | x1, x2)` over `prefix ++ [Y1, Y2]`.
    /// The variables named `X1` and `X2` must be the last two of `self`.
    pub fn with_channel(&self, channel: &Dmc) -> Result<Self> {
        let n = self.names.len();
        let [a, b, c, d] = channel.sizes();
        if n < 2 || self.names[n - 2] != "X1" || self.names[n - 1] != "X2" {
            return Err(Error::DimensionMismatch("joint must end with variables X1, X2".into()));
        }
        if self.dims[n - 2] != a || self.dims[n - 1] != b {
            return Err(Error::DimensionMismatch(format!(
                "input alphabets {:?} do not match channel ({a}, {b})",
                &self.dims[n - 2..]
            )));
        }
        let mut table = Vec::with_capacity(self.table.len() * c * d);
        for (k, &p) in self.table.iter().enumerate() {
            let x2 = k % b;
            let x1 = (k / b) % a;
            for y1 in 0..c {
                for y2 in 0..d {
                    table.push(p * channel.prob(x1, x2, y1, y2));
                }
            }
        }
        let mut names = self.names.clone();
        names.extend(["Y1".to_string(), "Y2".to_string()]);
        let mut dims = self.dims.clone();
        dims.extend([c, d]);
        Ok(Self { names, dims, table })
    }
}

/// `I(A; B | C)` in bits, clamped at zero.
pub fn cond_mutual_information(joint: &JointDistribution, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
    let (ia, ib, ic) = (joint.indices(a)?, joint.indices(b)?, joint.indices(c)?);
    let overlap = ia.iter().any(|x| ib.contains(x) || ic.contains(x)) || ib.iter().any(|x| ic.contains(x));
    if overlap {
        return Err(Error::InvalidParameter("variable groups must be disjoint".into()));
    }
    let cat = |xs: &[&Vec<usize>]| -> Vec<usize> { xs.iter().flat_map(|v| v.iter().copied()).collect() };
    let mi = joint.entropy_axes(&cat(&[&ia, &ic])) + joint.entropy_axes(&cat(&[&ib, &ic]))
        - joint.entropy_axes(&cat(&[&ia, &ib, &ic]))
        - joint.entropy_axes(&ic);
    Ok(mi.max(0.0))
}

/// Right-hand sides of the three outer-bound constraints for one input law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTriple {
    /// `I(Y1; X1 | X2)` (or `H(Y1 | X2)` in the semi-deterministic case)
    pub r1_y1: f64,
    /// `I(Y2; X1 | X2)`
    pub r1_y2: f64,
    /// `I(Y2; X1, X2)`
    pub sum_y2: f64,
}

impl BoundTriple {
    pub fn region(&self) -> RateRegion {
        RateRegion::new(vec![Halfspace::r1(self.r1_y1), Halfspace::r1(self.r1_y2), Halfspace::sum(self.sum_y2)])
            .expect("finite bounds")
    }
}

pub fn outer_bound_point(channel: &Dmc, input: &JointDistribution) -> Result<BoundTriple> {
    let j = input.with_channel(channel)?;
    Ok(BoundTriple {
        r1_y1: cond_mutual_information(&j, &["Y1"], &["X1"], &["X2"])?,
        r1_y2: cond_mutual_information(&j, &["Y2"], &["X1"], &["X2"])?,
        sum_y2: cond_mutual_information(&j, &["Y2"], &["X1", "X2"], &[])?,
    })
}

fn semidet_point(channel: &Dmc, input: &JointDistribution) -> Result<BoundTriple> {
    let j = input.with_channel(channel)?;
    Ok(BoundTriple {
        r1_y1: j.cond_entropy(&["Y1"], &["X2"])?,
        r1_y2: cond_mutual_information(&j, &["Y2"], &["X1"], &["X2"])?,
        sum_y2: cond_mutual_information(&j, &["Y2"], &["X1", "X2"], &[])?,
    })
}

/// All compositions of `denominator` into `parts` nonnegative integers, in
/// lexicographic order.
pub fn simplex_grid(parts: usize, denominator: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(parts - 1, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(parts, denominator, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Every grid input law `P(x1, x2)` with denominator `grid_steps`.
pub fn input_grid(channel: &Dmc, grid_steps: u32) -> Result<Vec<JointDistribution>> {
    if grid_steps == 0 {
        return Err(Error::InvalidParameter("grid_steps must be positive".into()));
    }
    let [a, b, _, _] = channel.sizes();
    let points = (grid_steps as f64).powi((a * b - 1) as i32);
    if points > GRID_LIMIT {
        return Err(Error::GridTooLarge { points, limit: GRID_LIMIT });
    }
    let n = grid_steps as f64;
    simplex_grid(a * b, grid_steps)
        .into_iter()
        .map(|c| JointDistribution::inputs(a, b, c.into_iter().map(|k| k as f64 / n).collect()))
        .collect()
}

fn hull_of_triples(triples: &[BoundTriple]) -> Result<RateRegion> {
    let regions: Vec<RateRegion> = triples.iter().map(BoundTriple::region).collect();
    union_hull(&regions)
}

/// Convex hull over the input grid of the outer-bound regions.
pub fn outer_bound_region(channel: &Dmc, grid_steps: u32) -> Result<RateRegion> {
    let grid = input_grid(channel, grid_steps)?;
    let triples = grid.par_iter().map(|p| outer_bound_point(channel, p)).collect::<Result<Vec<_>>>()?;
    hull_of_triples(&triples)
}

/// Capacity region of a semi-deterministic channel, over the input grid.
pub fn semidet_capacity_region(channel: &Dmc, grid_steps: u32) -> Result<RateRegion> {
    if !is_semideterministic(channel) {
        return Err(Error::NotSemiDeterministic);
    }
    let grid = input_grid(channel, grid_steps)?;
    let triples = grid.par_iter().map(|p| semidet_point(channel, p)).collect::<Result<Vec<_>>>()?;
    hull_of_triples(&triples)
}

pub fn is_semideterministic(channel: &Dmc) -> bool {
    channel.y1_function().is_some()
}

/// Grid certificate that `I(X1; Y1 | X2) ≤ I(X1; Y2 | X2)` for every grid input
/// law. Evidence only: distributions off the grid are not examined.
pub fn is_strong_interference(channel: &Dmc, grid_steps: u32) -> Result<bool> {
    let grid = input_grid(channel, grid_steps)?;
    for p in &grid {
        let t = outer_bound_point(channel, p)?;
        if t.r1_y1 > t.r1_y2 + MASS_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The five right-hand sides of the superposition/binning inner bound, in
/// printed order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerBoundValues {
    /// `I(Y1; U1c | U2c) − I(U1c; X2 | U2c)`
    pub r1_binned: f64,
    /// `I(Y2; X1 | X2, U2c)`
    pub r1_y2: f64,
    /// `I(Y1; U1c, U2c) + I(Y2; X2 | U1c, U2c)`
    pub sum_y1_y2: f64,
    /// `I(Y2; X1, X2)`
    pub sum_y2: f64,
    /// `I(Y1; U1c, U2c) + I(Y2; X1, X2 | U2c) − I(U1c; X2 | U2c)`
    pub two_r1_plus_r2: f64,
}

impl InnerBoundValues {
    pub fn as_array(&self) -> [f64; 5] {
        [self.r1_binned, self.r1_y2, self.sum_y1_y2, self.sum_y2, self.two_r1_plus_r2]
    }

    /// The achievable region for this auxiliary law; `{origin}` when any
    /// bound is negative (the scheme is then infeasible).
    pub fn region(&self) -> RateRegion {
        if self.as_array().iter().any(|v| *v < 0.0) {
            return RateRegion::origin();
        }
        RateRegion::new(vec![
            Halfspace::r1(self.r1_binned),
            Halfspace::r1(self.r1_y2),
            Halfspace::sum(self.sum_y1_y2),
            Halfspace::sum(self.sum_y2),
            Halfspace { c1: 2.0, c2: 1.0, bound: self.two_r1_plus_r2 },
        ])
        .expect("finite bounds")
    }
}

/// Evaluates the inner bound for a law over `(U1c, U2c, X1, X2)` (names in that order).
pub fn inner_bound_point(channel: &Dmc, joint: &JointDistribution) -> Result<InnerBoundValues> {
    if joint.names().len() != 4 || joint.names()[0] != "U1c" || joint.names()[1] != "U2c" {
        return Err(Error::DimensionMismatch("auxiliary law must be over (U1c, U2c, X1, X2)".into()));
    }
    let j = joint.with_channel(channel)?;
    let mi = |a: &[&str], b: &[&str], c: &[&str]| cond_mutual_information(&j, a, b, c);
    let bin = mi(&["U1c"], &["X2"], &["U2c"])?;
    let y1_u = mi(&["Y1"], &["U1c", "U2c"], &[])?;
    Ok(InnerBoundValues {
        r1_binned: mi(&["Y1"], &["U1c"], &["U2c"])? - bin,
        r1_y2: mi(&["Y2"], &["X1"], &["X2", "U2c"])?,
        sum_y1_y2: y1_u + mi(&["Y2"], &["X2"], &["U1c", "U2c"])?,
        sum_y2: mi(&["Y2"], &["X1", "X2"], &[])?,
        two_r1_plus_r2: y1_u + mi(&["Y2"], &["X1", "X2"], &["U2c"])? - bin,
    })
}

/// Convex hull of the inner-bound regions of the given auxiliary laws.
pub fn inner_bound_region(channel: &Dmc, joints: &[JointDistribution]) -> Result<RateRegion> {
    let regions = joints.iter().map(|j| inner_bound_point(channel, j).map(|v| v.region())).collect::<Result<Vec<_>>>()?;
    union_hull(&regions)
}

/// Auxiliary law `U1c = Y1 = f(X1, X2)`, `U2c` constant, for a semi-deterministic channel.
pub fn scheme_e_assignment(channel: &Dmc, input: &JointDistribution) -> Result<JointDistribution> {
    let f = channel.y1_function().ok_or(Error::NotSemiDeterministic)?;
    let [a, b, c, _] = channel.sizes();
    if input.dims() != [a, b] {
        return Err(Error::DimensionMismatch("input law does not match channel".into()));
    }
    let mut table = vec![0.0; c * a * b];
    for x1 in 0..a {
        for x2 in 0..b {
            table[(f[x1][x2] * a + x1) * b + x2] = input.table()[x1 * b + x2];
        }
    }
    JointDistribution::new(["U1c", "U2c", "X1", "X2"].map(String::from).to_vec(), vec![c, 1, a, b], table)
}

/// Hull over the input grid of the scheme-E regions with `U1c = Y1`, `U2c` constant.
pub fn scheme_e_region(channel: &Dmc, grid_steps: u32) -> Result<RateRegion> {
    let grid = input_grid(channel, grid_steps)?;
    let regions = grid
        .par_iter()
        .map(|p| Ok(inner_bound_point(channel, &scheme_e_assignment(channel, p)?)?.region()))
        .collect::<Result<Vec<_>>>()?;
    union_hull(&regions)
}

/// Outcome of checking the scheme-E identities on every grid input law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemidetReport {
    pub points: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_deviation: f64,
}

impl SemidetReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Tolerance for the scheme-E identities.
pub const SEMIDET_TOL: f64 = 1e-12;

/// With `U2c` constant and `U1c = Y1`, checks on every grid input law that the
/// binned R1 bound equals `H(Y1 | X2)`, the active sum-rate bound equals
/// `I(Y2; X1, X2)`, and the `2R1 + R2` bound is the sum of the two.
pub fn verify_semidet(channel: &Dmc, grid_steps: u32) -> Result<SemidetReport> {
    if !is_semideterministic(channel) {
        return Err(Error::NotSemiDeterministic);
    }
    let grid = input_grid(channel, grid_steps)?;
    let deviations = grid
        .par_iter()
        .map(|p| {
            let v = inner_bound_point(channel, &scheme_e_assignment(channel, p)?)?;
            let t = semidet_point(channel, p)?;
            let d1 = (v.r1_binned - t.r1_y1).abs();
            let d2 = (v.sum_y1_y2.min(v.sum_y2) - t.sum_y2).abs();
            let d3 = (v.two_r1_plus_r2 - (v.r1_binned + v.sum_y2)).abs();
            Ok(d1.max(d2).max(d3))
        })
        .collect::<Result<Vec<f64>>>()?;
    let passed = deviations.iter().filter(|d| **d < SEMIDET_TOL).count();
    Ok(SemidetReport {
        points: deviations.len(),
        passed,
        failed: deviations.len() - passed,
        worst_deviation: deviations.iter().copied().fold(0.0, f64::max),
    })
}

/// Random channel with `Y1 = f(X1, X2)` for a uniformly drawn `f` and an
/// arbitrary random `P(y2 | x1, x2)`.
pub fn random_semideterministic<R: Rng>(rng: &mut R, sizes: [usize; 4]) -> Result<Dmc> {
    let [a, b, c, d] = sizes;
    let f: Vec<usize> = (0..a * b).map(|_| rng.gen_range(0..c)).collect();
    let mut y2: Vec<Vec<f64>> = Vec::with_capacity(a * b);
    for _ in 0..a * b {
        let w: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let s: f64 = w.iter().sum();
        y2.push(w.into_iter().map(|x| x / s).collect());
    }
    Dmc::from_fn(sizes, |x1, x2, y1, yy2| {
        let k = x1 * b + x2;
        if f[k] == y1 {
            y2[k][yy2]
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// Y1 = X1 XOR X2, Y2 = X1.
    pub(crate) fn xor_identity() -> Dmc {
        Dmc::from_fn([2, 2, 2, 2], |x1, x2, y1, y2| ((y1 == x1 ^ x2) && (y2 == x1)) as u8 as f64).unwrap()
    }

    #[test]
    fn coupled_bits_one_bit() {
        let j = JointDistribution::new(names(&["A", "B"]), vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((cond_mutual_information(&j, &["A"], &["B"], &[]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn independent_zero() {
        let j = JointDistribution::new(names(&["A", "B"]), vec![2, 3], vec![0.1, 0.2, 0.1, 0.15, 0.3, 0.15]).unwrap();
        assert!(cond_mutual_information(&j, &["A"], &["B"], &[]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn noiseless_y2_one_bit() {
        let ch = Dmc::from_fn([2, 2, 1, 2], |x1, _, _, y2| (y2 == x1) as u8 as f64).unwrap();
        for x2_law in [[0.5, 0.5], [1.0, 0.0], [0.3, 0.7]] {
            let t: Vec<f64> = (0..4).map(|k| 0.5 * x2_law[k % 2]).collect();
            let j = JointDistribution::inputs(2, 2, t).unwrap().with_channel(&ch).unwrap();
            let v = cond_mutual_information(&j, &["Y2"], &["X1", "X2"], &[]).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_name_and_overlap() {
        let j = JointDistribution::inputs(2, 2, vec![0.25; 4]).unwrap();
        assert_eq!(cond_mutual_information(&j, &["Q"], &["X1"], &[]), Err(Error::UnknownVariable("Q".into())));
        assert!(cond_mutual_information(&j, &["X1"], &["X1"], &[]).is_err());
    }

    #[test]
    fn point_mass_input_gives_zeros() {
        let p = JointDistribution::inputs(2, 2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let t = outer_bound_point(&xor_identity(), &p).unwrap();
        assert_eq!((t.r1_y1, t.r1_y2, t.sum_y2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn xor_uniform_triple() {
        let p = JointDistribution::inputs(2, 2, vec![0.25; 4]).unwrap();
        let t = outer_bound_point(&xor_identity(), &p).unwrap();
        for v in [t.r1_y1, t.r1_y2, t.sum_y2] {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn useless_primary_output() {
        let ch = Dmc::from_fn([2, 2, 2, 2], |x1, _, y1, _| (y1 == x1) as u8 as f64 * 0.5).unwrap();
        let p = JointDistribution::inputs(2, 2, vec![0.25; 4]).unwrap();
        let t = outer_bound_point(&ch, &p).unwrap();
        assert!(t.r1_y1 > 0.99 && t.r1_y2 == 0.0 && t.sum_y2 == 0.0);
    }

    #[test]
    fn mismatched_input_rejected() {
        let p = JointDistribution::inputs(3, 2, vec![1.0 / 6.0; 6]).unwrap();
        assert!(matches!(outer_bound_point(&xor_identity(), &p), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn constant_outputs_give_origin() {
        let ch = Dmc::from_fn([2, 2, 1, 1], |_, _, _, _| 1.0).unwrap();
        let r = outer_bound_region(&ch, 8).unwrap();
        assert_eq!(r.vertices().unwrap(), &[crate::RatePoint::ORIGIN]);
    }

    #[test]
    fn xor_outer_region() {
        let r = outer_bound_region(&xor_identity(), 16).unwrap();
        let want = RateRegion::r1_sum(1.0, 1.0);
        assert!(crate::region::same_region(&r, &want, 1e-12).unwrap(), "{r:?}");
    }

    #[test]
    fn grid_guard() {
        let ch = Dmc::from_fn([4, 4, 1, 1], |_, _, _, _| 1.0).unwrap();
        assert!(matches!(outer_bound_region(&ch, 16), Err(Error::GridTooLarge { .. })));
    }

    #[test]
    fn simplex_grid_counts() {
        assert_eq!(simplex_grid(4, 16).len(), 969);
        assert_eq!(simplex_grid(1, 5), vec![vec![5]]);
        assert!(simplex_grid(3, 4).iter().all(|c| c.iter().sum::<u32>() == 4));
    }

    #[test]
    fn semidet_predicate() {
        assert!(is_semideterministic(&xor_identity()));
        let bsc = Dmc::from_fn([2, 2, 2, 1], |x1, _, y1, _| if y1 == x1 { 0.9 } else { 0.1 }).unwrap();
        assert!(!is_semideterministic(&bsc));
        let noiseless = Dmc::from_fn([2, 2, 2, 2], |x1, _, y1, _| (y1 == x1) as u8 as f64 * 0.5).unwrap();
        assert!(is_semideterministic(&noiseless));
    }

    #[test]
    fn semidet_xor_region() {
        let r = semidet_capacity_region(&xor_identity(), 16).unwrap();
        assert!(crate::region::same_region(&r, &RateRegion::r1_sum(1.0, 1.0), 1e-12).unwrap());
    }

    #[test]
    fn semidet_constant_y1_gives_r1_zero() {
        let ch = Dmc::from_fn([2, 2, 1, 2], |x1, _, _, y2| (y2 == x1) as u8 as f64).unwrap();
        let r = semidet_capacity_region(&ch, 8).unwrap();
        assert_eq!(r.max_r1().unwrap(), 0.0);
        assert!((r.max_sum().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semidet_rejects_noisy_channel() {
        let bsc = Dmc::from_fn([2, 2, 2, 1], |x1, _, y1, _| if y1 == x1 { 0.9 } else { 0.1 }).unwrap();
        assert_eq!(semidet_capacity_region(&bsc, 4).unwrap_err(), Error::NotSemiDeterministic);
        assert_eq!(verify_semidet(&bsc, 4).unwrap_err(), Error::NotSemiDeterministic);
    }

    #[test]
    fn strong_interference_examples() {
        // Y2 = (Y1, X1) encoded as y2 = 2·y1 + x1
        let richer = Dmc::from_fn([2, 2, 2, 4], |x1, x2, y1, y2| {
            let f = x1 ^ x2;
            ((y1 == f) && (y2 == 2 * f + x1)) as u8 as f64
        })
        .unwrap();
        assert!(is_strong_interference(&richer, 8).unwrap());
        let y2_const = Dmc::from_fn([2, 2, 2, 1], |x1, _, y1, _| (y1 == x1) as u8 as f64).unwrap();
        assert!(!is_strong_interference(&y2_const, 8).unwrap());
        let same = Dmc::from_fn([2, 2, 2, 2], |x1, x2, y1, y2| ((y1 == (x1 & x2)) && y2 == y1) as u8 as f64).unwrap();
        assert!(is_strong_interference(&same, 8).unwrap());
    }

    #[test]
    fn verify_xor() {
        let rep = verify_semidet(&xor_identity(), 16).unwrap();
        assert_eq!(rep.points, 969);
        assert!(rep.all_passed() && rep.worst_deviation < 1e-12, "{rep:?}");
    }

    #[test]
    fn useless_auxiliaries() {
        let p = JointDistribution::new(
            names(&["U1c", "U2c", "X1", "X2"]),
            vec![2, 1, 2, 2],
            (0..8).map(|_| 0.125).collect(),
        )
        .unwrap();
        let v = inner_bound_point(&xor_identity(), &p).unwrap();
        assert!(v.r1_binned.abs() < 1e-15);
    }

    #[test]
    fn dmc_json() {
        let ch = xor_identity();
        let s = serde_json::to_string(&ch).unwrap();
        assert!(s.starts_with(r#"{"sizes":[2,2,2,2],"transition":[[[[1.0,0.0],[0.0,0.0]]"#), "{s}");
        let back: Dmc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ch);
        assert!(serde_json::from_str::<Dmc>(r#"{"sizes":[1,1,1,1],"transition":[[[[0.5]]]]}"#).is_err());
        assert!(serde_json::from_str::<Dmc>(r#"{"sizes":[1,1,1,2],"transition":[[[[1.0]]]]}"#).is_err());
    }
}
