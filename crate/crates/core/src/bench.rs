//! Timing harness for scaling experiments.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::approx::pmbasis;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::nullspace::minimal_vectors_up_to;
use crate::polymat::{PolyMatrix, SeriesMatrix};
use crate::random::{random_matrix, random_poly_matrix, rng_from_seed};
use crate::solvers::{generic_det, generic_inverse, row_reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    /// Product of two `n x n` matrices of degree `d`.
    Mul,
    /// Order basis of an `n x n/2` series at order `2d`.
    Mbasis,
    /// Degree-`d` kernel vectors of an `n x n/2` matrix of degree `d`.
    Nullspace,
    Det,
    Inverse,
    RowReduce,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Mul => "mul",
            BenchOp::Mbasis => "mbasis",
            BenchOp::Nullspace => "nullspace",
            BenchOp::Det => "det",
            BenchOp::Inverse => "inverse",
            BenchOp::RowReduce => "rowreduce",
        }
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mul" => BenchOp::Mul,
            "mbasis" => BenchOp::Mbasis,
            "nullspace" => BenchOp::Nullspace,
            "det" => BenchOp::Det,
            "inverse" => BenchOp::Inverse,
            "rowreduce" => BenchOp::RowReduce,
            other => return Err(Error::InvalidArgument(format!("unknown benchmark operation `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPoint {
    pub n: usize,
    pub d: usize,
    pub samples: Vec<Duration>,
    pub median: Duration,
}

/// Medians over a grid of `(n, d)` and the ratios between neighbours.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub op: BenchOp,
    pub reps: usize,
    pub points: Vec<BenchPoint>,
}

/// `time(n, 2d) / time(n, d)` or `time(2n, d) / time(n, d)` at `(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub n: usize,
    pub d: usize,
    pub value: f64,
}

pub fn median(samples: &[Duration]) -> Duration {
    let mut s = samples.to_vec();
    s.sort();
    match s.len() {
        0 => Duration::ZERO,
        k if k % 2 == 1 => s[k / 2],
        k => (s[k / 2 - 1] + s[k / 2]) / 2,
    }
}

/// Median of a list of floats, `None` when empty.
pub fn median_f64(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let k = v.len();
    Some(if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    })
}

impl BenchReport {
    fn time(&self, n: usize, d: usize) -> Option<Duration> {
        self.points.iter().find(|p| p.n == n && p.d == d).map(|p| p.median)
    }

    fn ratios(&self, step: impl Fn(usize, usize) -> (usize, usize)) -> Vec<Ratio> {
        self.points
            .iter()
            .filter_map(|p| {
                let (n2, d2) = step(p.n, p.d);
                let t2 = self.time(n2, d2)?;
                Some(Ratio {
                    n: p.n,
                    d: p.d,
                    value: t2.as_secs_f64() / p.median.as_secs_f64().max(1e-9),
                })
            })
            .collect()
    }

    pub fn d_ratios(&self) -> Vec<Ratio> {
        self.ratios(|n, d| (n, 2 * d))
    }

    pub fn n_ratios(&self) -> Vec<Ratio> {
        self.ratios(|n, d| (2 * n, d))
    }

    /// One line per grid point, `key=value` fields.
    pub fn records(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let find = |rs: &[Ratio]| {
                rs.iter()
                    .find(|r| r.n == p.n && r.d == p.d)
                    .map_or("-".to_string(), |r| format!("{:.3}", r.value))
            };
            writeln!(
                out,
                "op={} n={} d={} reps={} median_s={:.6} d_ratio={} n_ratio={}",
                self.op.name(),
                p.n,
                p.d,
                self.reps,
                p.median.as_secs_f64(),
                find(&self.d_ratios()),
                find(&self.n_ratios()),
            )
            .unwrap();
        }
        out
    }

    /// Median times with `n` down and `d` across.
    pub fn table(&self) -> String {
        let mut ns: Vec<usize> = self.points.iter().map(|p| p.n).collect();
        let mut ds: Vec<usize> = self.points.iter().map(|p| p.d).collect();
        ns.sort_unstable();
        ns.dedup();
        ds.sort_unstable();
        ds.dedup();
        let mut out = String::new();
        write!(out, "{:>8}", format!("{} n\\d", self.op.name())).unwrap();
        for d in &ds {
            write!(out, " {d:>10}").unwrap();
        }
        out.push('\n');
        for n in &ns {
            write!(out, "{n:>8}").unwrap();
            for d in &ds {
                match self.time(*n, *d) {
                    Some(t) => write!(out, " {:>9.4}s", t.as_secs_f64()).unwrap(),
                    None => write!(out, " {:>10}", "-").unwrap(),
                }
            }
            out.push('\n');
        }
        let summary = |name: &str, rs: Vec<Ratio>| {
            let v: Vec<f64> = rs.iter().map(|r| r.value).collect();
            match median_f64(&v) {
                Some(m) => format!("median {name}-doubling ratio {m:.2} over {} pairs\n", v.len()),
                None => String::new(),
            }
        };
        out += &summary("d", self.d_ratios());
        out += &summary("n", self.n_ratios());
        out
    }
}

/// Parses `16,32,64` or `16,32x8,16` into the grid of `(n, d)` pairs: with
/// one list both `n` and `d` range over it; with `N x D` the product is used.
pub fn parse_grid(text: &str) -> Result<Vec<(usize, usize)>> {
    let list = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad grid value `{t}`")))
            })
            .collect()
    };
    let (ns, ds) = match text.split_once('x') {
        Some((a, b)) => (list(a)?, list(b)?),
        None => (list(text)?, list(text)?),
    };
    Ok(ns.iter().flat_map(|&n| ds.iter().map(move |&d| (n, d))).collect())
}

fn random_series(field: &PrimeField, n: usize, m: usize, order: usize, seed: u64) -> SeriesMatrix {
    let mut rng = rng_from_seed(seed);
    let coeffs: Vec<Matrix> = (0..order).map(|_| random_matrix(field, n, m, &mut rng)).collect();
    SeriesMatrix::new(*field, n, m, coeffs)
}

/// Times `op` at each grid point, `reps` runs per point, sequentially.
/// Inputs are generated once per point outside the timed region.
pub fn run(op: BenchOp, grid: &[(usize, usize)], reps: usize, field: &PrimeField, seed: u64) -> Result<BenchReport> {
    let mut points = Vec::with_capacity(grid.len());
    for (k, &(n, d)) in grid.iter().enumerate() {
        let point_seed = seed.wrapping_add(k as u64);
        let mut rng = rng_from_seed(point_seed);
        let mut samples = Vec::with_capacity(reps);
        let mut time = |f: &mut dyn FnMut() -> Result<()>| -> Result<()> {
            for _ in 0..reps {
                let start = Instant::now();
                f()?;
                samples.push(start.elapsed());
            }
            Ok(())
        };
        match op {
            BenchOp::Mul => {
                let a = random_poly_matrix(field, n, n, d, &mut rng);
                let b = random_poly_matrix(field, n, n, d, &mut rng);
                time(&mut || a.mul(&b).map(drop))?;
            }
            BenchOp::Mbasis => {
                let order = 2 * d.max(1);
                let f = random_series(field, n, (n / 2).max(1), order, point_seed);
                time(&mut || pmbasis(&f, order, None).map(drop))?;
            }
            BenchOp::Nullspace => {
                let a = random_poly_matrix(field, n, (n / 2).max(1), d, &mut rng);
                time(&mut || {
                    minimal_vectors_up_to(&a, d);
                    Ok(())
                })?;
            }
            BenchOp::Det => {
                let a = random_poly_matrix(field, n, n, d, &mut rng);
                let mut inner = rng_from_seed(point_seed ^ 1);
                time(&mut || generic_det(&a, &mut inner).map(drop))?;
            }
            BenchOp::Inverse => {
                let a = random_poly_matrix(field, n, n, d, &mut rng);
                let mut inner = rng_from_seed(point_seed ^ 1);
                time(&mut || generic_inverse(&a, &mut inner).map(drop))?;
            }
            BenchOp::RowReduce => {
                let a: PolyMatrix = random_poly_matrix(field, n, n, d, &mut rng);
                let mut inner = rng_from_seed(point_seed ^ 1);
                time(&mut || row_reduce(&a, &mut inner).map(drop))?;
            }
        }
        points.push(BenchPoint {
            n,
            d,
            median: median(&samples),
            samples,
        });
    }
    Ok(BenchReport { op, reps, points })
}
