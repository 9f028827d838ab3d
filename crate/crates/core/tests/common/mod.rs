#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use diffbkk::diffpoly::DiffPolynomial;
use diffbkk::polytope::{LatticePoint, LatticePolytope};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn hull(points: &[Vec<i64>]) -> LatticePolytope {
    LatticePolytope::hull(points.iter().cloned().map(LatticePoint)).expect("hull")
}

/// Hull of a few random points with coordinates in `0..=max`.
pub fn random_polytope(rng: &mut impl Rng, s: usize, max: i64) -> LatticePolytope {
    let count = rng.gen_range(1..=s + 3);
    let pts: Vec<Vec<i64>> = (0..count).map(|_| (0..s).map(|_| rng.gen_range(0..=max)).collect()).collect();
    hull(&pts)
}

/// The standard simplex in `Z^s` together with some random points, so that
/// it contains `Δ_all`.
pub fn random_ambient(rng: &mut impl Rng, s: usize, max: i64) -> LatticePolytope {
    let mut pts = vec![vec![0; s]];
    for i in 0..s {
        let mut e = vec![0; s];
        e[i] = 1;
        pts.push(e);
    }
    for _ in 0..rng.gen_range(0..=3) {
        pts.push((0..s).map(|_| rng.gen_range(0..=max)).collect());
    }
    hull(&pts)
}

/// Enlarges a polytope by a random extra point.
pub fn enlarge(rng: &mut impl Rng, p: &LatticePolytope, max: i64) -> LatticePolytope {
    let s = p.ambient_dim();
    let mut pts: Vec<Vec<i64>> = p.vertices().iter().map(|v| v.0.clone()).collect();
    pts.push((0..s).map(|_| rng.gen_range(0..=max)).collect());
    hull(&pts)
}

/// Determinant by expansion over permutations.
pub fn leibniz_det(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, a, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, a: &[Vec<i64>], total: &mut BigInt) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut prod = BigInt::one();
        for (i, &p) in perm.iter().enumerate() {
            prod *= a[i][p];
        }
        if inversions % 2 == 1 {
            prod = -prod;
        }
        *total += prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, a, total);
        perm.swap(k, i);
    }
}

/// Rank over Q by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Evaluates a polynomial with constant coefficients at a point given in
/// jet coordinates, directly from its term list.
pub fn eval_point(p: &DiffPolynomial, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (exps, _, coef) in p.terms() {
        let mut term = coef.as_rational().expect("constant coefficient");
        for (x, &e) in point.iter().zip(exps) {
            for _ in 0..e {
                term *= x;
            }
        }
        acc += term;
    }
    acc
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

static COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Writes `contents` to a fresh file under the system temp directory.
pub fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let dir = std::env::temp_dir().join(format!("diffbkk-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(format!("{n}-{tag}"));
    std::fs::write(&path, contents).expect("write fixture");
    path
}

pub fn polytope_json(points: &[Vec<i64>]) -> String {
    let dim = points[0].len();
    serde_json::json!({ "dim": dim, "points": points }).to_string()
}

/// Runs the CLI in process and returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["diffbkk"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = diffbkk::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf8"), String::from_utf8(err).expect("utf8"))
}
