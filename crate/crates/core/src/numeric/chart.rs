//! Matrix Lie groups viewed as Lie heaps `[g₁, g₂, g₃] = g₁ g₂⁻¹ g₃`, and the
//! affine heap `(ℝⁿ, x − y + z)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use super::linalg::Matrix;
use crate::error::{Error, Result};

/// Residual above which a point is not on the chart.
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Residual above which a vector is not tangent.
pub const TANGENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartKind {
    So2,
    So3,
    /// Invertible upper-triangular 2×2 matrices.
    UpperTriangular2,
    /// `ℝⁿ` with `x − y + z`, points as column vectors.
    Euclidean(usize),
    /// Nonzero reals under multiplication, points as 1×1 matrices.
    NonzeroReals,
}

impl ChartKind {
    pub const BUNDLED: [ChartKind; 7] = [
        ChartKind::So2,
        ChartKind::So3,
        ChartKind::UpperTriangular2,
        ChartKind::Euclidean(1),
        ChartKind::Euclidean(2),
        ChartKind::Euclidean(3),
        ChartKind::NonzeroReals,
    ];
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartKind::So2 => f.write_str("so2"),
            ChartKind::So3 => f.write_str("so3"),
            ChartKind::UpperTriangular2 => f.write_str("ut2"),
            ChartKind::Euclidean(n) => write!(f, "r{n}"),
            ChartKind::NonzeroReals => f.write_str("rx"),
        }
    }
}

impl FromStr for ChartKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "so2" => Ok(ChartKind::So2),
            "so3" => Ok(ChartKind::So3),
            "ut2" => Ok(ChartKind::UpperTriangular2),
            "rx" => Ok(ChartKind::NonzeroReals),
            _ => s
                .strip_prefix('r')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(ChartKind::Euclidean)
                .ok_or_else(|| Error::Malformed(alloc::format!("unknown chart `{s}` (so2, so3, ut2, r<n>, rx)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatrixHeapChart {
    kind: ChartKind,
    /// Finite-difference step.
    pub h: f64,
    pub tol: f64,
}

impl MatrixHeapChart {
    pub fn new(kind: ChartKind) -> Self {
        MatrixHeapChart { kind, h: 1e-5, tol: 1e-6 }
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn name(&self) -> String {
        alloc::format!("{}", self.kind)
    }

    fn is_affine(&self) -> bool {
        matches!(self.kind, ChartKind::Euclidean(_))
    }

    /// Shape of a point.
    pub fn shape(&self) -> (usize, usize) {
        match self.kind {
            ChartKind::So2 | ChartKind::UpperTriangular2 => (2, 2),
            ChartKind::So3 => (3, 3),
            ChartKind::Euclidean(n) => (n, 1),
            ChartKind::NonzeroReals => (1, 1),
        }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            ChartKind::So2 | ChartKind::NonzeroReals => 1,
            ChartKind::So3 | ChartKind::UpperTriangular2 => 3,
            ChartKind::Euclidean(n) => n,
        }
    }

    /// The basepoint `x₀`: the identity matrix, or the origin.
    pub fn basepoint(&self) -> Matrix {
        let (r, c) = self.shape();
        if self.is_affine() {
            Matrix::zeros(r, c)
        } else {
            Matrix::identity(r)
        }
    }

    /// Basis `{e_α}` of the tangent space at the basepoint.
    pub fn tangent_basis(&self) -> Vec<Matrix> {
        match self.kind {
            ChartKind::So2 => alloc::vec![Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]])],
            ChartKind::So3 => so3_basis().to_vec(),
            ChartKind::UpperTriangular2 => alloc::vec![
                Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]),
                Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]),
                Matrix::from_rows(&[[0.0, 0.0], [0.0, 1.0]]),
            ],
            ChartKind::Euclidean(n) => (0..n)
                .map(|i| {
                    let mut e = Matrix::zeros(n, 1);
                    e[(i, 0)] = 1.0;
                    e
                })
                .collect(),
            ChartKind::NonzeroReals => alloc::vec![Matrix::identity(1)],
        }
    }

    /// Relative residual of the defining relations.
    pub fn membership_residual(&self, g: &Matrix) -> f64 {
        if g.rows() != self.shape().0 || g.cols() != self.shape().1 || !g.is_finite() {
            return f64::INFINITY;
        }
        match self.kind {
            ChartKind::So2 | ChartKind::So3 => {
                let n = g.rows();
                let orth = (&(&g.transpose() * g) - &Matrix::identity(n)).frobenius();
                orth + libm::fabs(g.determinant() - 1.0)
            }
            ChartKind::UpperTriangular2 => {
                let scale = g.frobenius();
                if libm::fabs(g[(0, 0)] * g[(1, 1)]) <= f64::EPSILON * scale * scale {
                    return f64::INFINITY;
                }
                libm::fabs(g[(1, 0)]) / scale
            }
            ChartKind::Euclidean(_) => 0.0,
            ChartKind::NonzeroReals => {
                if g[(0, 0)] == 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    pub fn check_member(&self, g: &Matrix) -> Result<()> {
        let residual = self.membership_residual(g);
        if residual <= MEMBERSHIP_TOL {
            Ok(())
        } else {
            Err(Error::NotMember { residual })
        }
    }

    /// Residual of the linearized relations for `v` at `z`.
    pub fn tangent_residual(&self, z: &Matrix, v: &Matrix) -> f64 {
        if v.rows() != z.rows() || v.cols() != z.cols() || !v.is_finite() {
            return f64::INFINITY;
        }
        match self.kind {
            ChartKind::So2 | ChartKind::So3 => {
                let a = &z.transpose() * v;
                (&a + &a.transpose()).frobenius() / (1.0 + v.frobenius())
            }
            ChartKind::UpperTriangular2 => libm::fabs(v[(1, 0)]) / (1.0 + v.frobenius()),
            ChartKind::Euclidean(_) | ChartKind::NonzeroReals => 0.0,
        }
    }

    pub fn check_tangent(&self, z: &Matrix, v: &Matrix) -> Result<()> {
        let residual = self.tangent_residual(z, v);
        if residual <= TANGENT_TOL {
            Ok(())
        } else {
            Err(Error::NotTangent { residual })
        }
    }

    /// The heap product, `g₁ g₂⁻¹ g₃` through an LU solve.
    pub fn mu(&self, g1: &Matrix, g2: &Matrix, g3: &Matrix) -> Result<Matrix> {
        for g in [g1, g2, g3] {
            self.check_member(g)?;
        }
        self.mu_unchecked(g1, g2, g3)
    }

    pub(crate) fn mu_unchecked(&self, g1: &Matrix, g2: &Matrix, g3: &Matrix) -> Result<Matrix> {
        if self.is_affine() {
            return Ok(&(g1 - g2) + g3);
        }
        Ok(g1 * &g2.solve(g3)?)
    }

    /// Analytic pushforward of `v` under `L_{xy}`, which is `x y⁻¹ v`.
    pub fn dl_analytic(&self, x: &Matrix, y: &Matrix, v: &Matrix) -> Result<Matrix> {
        if self.is_affine() {
            return Ok(v.clone());
        }
        Ok(x * &y.solve(v)?)
    }

    /// The curve `t ↦ z exp(t z⁻¹ v)` through `z` with velocity `v`.
    pub fn curve(&self, z: &Matrix, v: &Matrix, t: f64) -> Result<Matrix> {
        if self.is_affine() {
            return Ok(z.add_scaled(t, v));
        }
        Ok(z * &z.solve(v)?.scale(t).expm())
    }

    /// Analytic differential of `μ` at `(g₁, g₂, g₃)`.
    pub fn dmu(&self, g: [&Matrix; 3], v: [&Matrix; 3]) -> Result<Matrix> {
        if self.is_affine() {
            return Ok(&(v[0] - v[1]) + v[2]);
        }
        let a = g[1].solve(g[2])?;
        let first = v[0] * &a;
        let second = &(g[0] * &g[1].solve(v[1])?) * &a;
        let third = g[0] * &g[1].solve(v[2])?;
        Ok(&(&first - &second) + &third)
    }

    /// Lie bracket on the tangent space at the basepoint.
    pub fn bracket(&self, u: &Matrix, v: &Matrix) -> Matrix {
        if self.is_affine() {
            Matrix::zeros(u.rows(), u.cols())
        } else {
            u.commutator(v)
        }
    }

    /// A seeded random element.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Matrix {
        match self.kind {
            ChartKind::So2 => {
                let t = rng.gen_range(-core::f64::consts::PI..core::f64::consts::PI);
                let (s, c) = (libm::sin(t), libm::cos(t));
                Matrix::from_rows(&[[c, -s], [s, c]])
            }
            ChartKind::So3 => rotation_from_quaternion(unit_quaternion(rng)),
            ChartKind::UpperTriangular2 => {
                let d1 = signed_magnitude(rng);
                let d2 = signed_magnitude(rng);
                Matrix::from_rows(&[[d1, rng.gen_range(-1.0..1.0)], [0.0, d2]])
            }
            ChartKind::Euclidean(n) => {
                Matrix::column(&(0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>())
            }
            ChartKind::NonzeroReals => Matrix::column(&[signed_magnitude(rng)]),
        }
    }

    /// A random combination of the basis, transported to `z` by `L_{z x₀}`.
    pub fn sample_tangent<R: Rng>(&self, rng: &mut R, z: &Matrix) -> Matrix {
        let basis = self.tangent_basis();
        let (r, c) = self.shape();
        let v = basis.iter().fold(Matrix::zeros(r, c), |acc, e| acc.add_scaled(rng.gen_range(-1.0..1.0), e));
        if self.is_affine() {
            v
        } else {
            z * &v
        }
    }
}

/// Generators of rotations about the three axes; `[e₁, e₂] = e₃` cyclically.
pub fn so3_basis() -> [Matrix; 3] {
    [
        Matrix::from_rows(&[[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]),
        Matrix::from_rows(&[[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]),
        Matrix::from_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
    ]
}

fn signed_magnitude<R: Rng>(rng: &mut R) -> f64 {
    let m = rng.gen_range(0.5..2.0);
    if rng.gen::<bool>() {
        m
    } else {
        -m
    }
}

fn unit_quaternion<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let q: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = libm::sqrt(n2);
            return q.map(|x| x / n);
        }
    }
}

fn rotation_from_quaternion([w, x, y, z]: [f64; 4]) -> Matrix {
    Matrix::from_rows(&[
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ])
}
