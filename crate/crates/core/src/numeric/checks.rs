use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chart::{ChartKind, MatrixHeapChart};
use super::linalg::Matrix;
use super::poly::ScalarField;
use super::{rk4_flow, NumericReport, FLOW_STEP};
use crate::error::Result;

pub const ALGEBRAIC_TOL: f64 = 1e-9;
pub const FINITE_DIFFERENCE_TOL: f64 = 1e-6;
pub const BRACKET_TOL: f64 = 1e-4;
pub const COALGEBRA_TOL: f64 = 1e-10;
pub const EXACT_TOL: f64 = 1e-12;
/// Flow time used by [`bracket_closure`].
pub const BRACKET_TIME: f64 = 1e-3;
pub const FLOW_TIMES: [f64; 4] = [-0.5, -0.1, 0.1, 0.5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `‖a − b‖ / max(1, ‖a‖, ‖b‖)`.
pub fn relative(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).frobenius() / a.frobenius().max(b.frobenius()).max(1.0)
}

fn relative_scalar(a: f64, b: f64) -> f64 {
    libm::fabs(a - b) / libm::fabs(a).max(libm::fabs(b)).max(1.0)
}

pub fn sample_points(chart: &MatrixHeapChart, count: usize, seed: u64) -> Vec<Matrix> {
    let mut r = rng(seed);
    (0..count).map(|_| chart.sample(&mut r)).collect()
}

pub fn sample_triples(chart: &MatrixHeapChart, count: usize, seed: u64) -> Vec<[Matrix; 3]> {
    let mut r = rng(seed);
    (0..count).map(|_| core::array::from_fn(|_| chart.sample(&mut r))).collect()
}

/// Three bracketings of sampled quintuples, and membership of every product.
pub fn check_para_associative_numeric(chart: &MatrixHeapChart, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let mut report = NumericReport::new("para-associative", seed, samples, tol);
    let mut r = rng(seed);
    for i in 0..samples {
        let [x1, x2, x3, x4, x5]: [Matrix; 5] = core::array::from_fn(|_| chart.sample(&mut r));
        let inner = [chart.mu(&x1, &x2, &x3)?, chart.mu(&x4, &x3, &x2)?, chart.mu(&x3, &x4, &x5)?];
        let left = chart.mu(&inner[0], &x4, &x5)?;
        let middle = chart.mu(&x1, &inner[1], &x5)?;
        let right = chart.mu(&x1, &x2, &inner[2])?;
        let residual = relative(&left, &middle).max(relative(&middle, &right)).max(relative(&left, &right));
        report.record(residual, || format!("sample={i}"));
    }
    Ok(report)
}

/// Relative membership residual of sampled products.
pub fn membership_check(chart: &MatrixHeapChart, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let mut report = NumericReport::new("membership", seed, samples, tol);
    for (i, [a, b, c]) in sample_triples(chart, samples, seed).iter().enumerate() {
        let m = chart.mu(a, b, c)?;
        report.record(chart.membership_residual(&m), || format!("sample={i}"));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pushforward {
    pub analytic: Matrix,
    pub finite_difference: Matrix,
    /// Relative difference of the two.
    pub residual: f64,
}

/// `(dL_{xy})_z v`, analytically and by a central difference along
/// `z exp(t z⁻¹ v)` with step `h`.
pub fn dl(chart: &MatrixHeapChart, x: &Matrix, y: &Matrix, z: &Matrix, v: &Matrix, h: f64) -> Result<Pushforward> {
    for g in [x, y, z] {
        chart.check_member(g)?;
    }
    chart.check_tangent(z, v)?;
    let analytic = chart.dl_analytic(x, y, v)?;
    let finite_difference = central_difference(h, |t| chart.mu_unchecked(x, y, &chart.curve(z, v, t)?))?;
    let residual = relative(&analytic, &finite_difference);
    Ok(Pushforward { analytic, finite_difference, residual })
}

fn central_difference(h: f64, f: impl Fn(f64) -> Result<Matrix>) -> Result<Matrix> {
    Ok((&f(h)? - &f(-h)?).scale(1.0 / (2.0 * h)))
}

/// Analytic against finite-difference pushforward on sampled data.
pub fn pushforward_check(chart: &MatrixHeapChart, samples: usize, seed: u64, h: f64, tol: f64) -> Result<NumericReport> {
    let mut report = NumericReport::new("pushforward", seed, samples, tol);
    let mut r = rng(seed);
    for i in 0..samples {
        let [x, y, z]: [Matrix; 3] = core::array::from_fn(|_| chart.sample(&mut r));
        let v = chart.sample_tangent(&mut r, &z);
        let p = dl(chart, &x, &y, &z, &v, h)?;
        report.record(p.residual, || format!("sample={i}"));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    pub h: f64,
    pub residual_h: f64,
    pub residual_half: f64,
    /// `residual_h / residual_half`; close to 4 for a second-order scheme.
    pub ratio: f64,
}

/// Maximum pushforward residual at `h` and at `h / 2` over the same samples.
pub fn convergence_ratio(chart: &MatrixHeapChart, samples: usize, seed: u64, h: f64) -> Result<Convergence> {
    let residual_h = pushforward_check(chart, samples, seed, h, f64::INFINITY)?.max_residual;
    let residual_half = pushforward_check(chart, samples, seed, h / 2.0, f64::INFINITY)?.max_residual;
    Ok(Convergence { h, residual_h, residual_half, ratio: residual_h / residual_half })
}

/// The left-invariant field `x ↦ (dL_{x x₀})_{x₀} v`.
#[derive(Debug, Clone)]
pub struct LeftInvariantField {
    chart: MatrixHeapChart,
    generator: Matrix,
}

impl LeftInvariantField {
    pub fn new(chart: &MatrixHeapChart, v: &Matrix) -> Result<Self> {
        chart.check_tangent(&chart.basepoint(), v)?;
        Ok(LeftInvariantField { chart: chart.clone(), generator: v.clone() })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Heap-sense value `x x₀⁻¹ v`.
    pub fn at(&self, x: &Matrix) -> Matrix {
        self.chart
            .dl_analytic(x, &self.chart.basepoint(), &self.generator)
            .expect("the basepoint is invertible")
    }

    /// Group-sense value `x v` (or `v` on an affine chart).
    pub fn group_form(&self, x: &Matrix) -> Matrix {
        match self.chart.kind() {
            ChartKind::Euclidean(_) => self.generator.clone(),
            _ => x * &self.generator,
        }
    }

    pub fn flow(&self, x: &Matrix, t: f64) -> Matrix {
        rk4_flow(&|p: &Matrix| self.at(p), x, t, FLOW_STEP)
    }
}

/// `dL_{xy}(V(z)) = V([x, y, z])` with the pushforward taken by finite
/// differences, plus `V(x₀) = v` exactly.
pub fn left_invariance_check(chart: &MatrixHeapChart, v: &Matrix, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let field = LeftInvariantField::new(chart, v)?;
    let mut report = NumericReport::new("left-invariant", seed, samples, tol);
    if &field.at(&chart.basepoint()) != v {
        report.fail("V(x0)!=v".into());
    }
    let mut r = rng(seed);
    for i in 0..samples {
        let [x, y, z]: [Matrix; 3] = core::array::from_fn(|_| chart.sample(&mut r));
        let pushed = dl(chart, &x, &y, &z, &field.at(&z), chart.h)?;
        let target = field.at(&chart.mu(&x, &y, &z)?);
        report.record(relative(&pushed.finite_difference, &target), || format!("sample={i}"));
    }
    Ok(report)
}

/// Heap-sense and group-sense fields must be equal as matrices; with
/// `y = x₀` the heap invariance condition must reduce to group invariance.
pub fn compare_group_vs_heap_invariance(chart: &MatrixHeapChart, v: &Matrix, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let field = LeftInvariantField::new(chart, v)?;
    let mut report = NumericReport::new("group-vs-heap", seed, samples, tol);
    let x0 = chart.basepoint();
    let mut r = rng(seed);
    for i in 0..samples {
        let [x, z]: [Matrix; 2] = core::array::from_fn(|_| chart.sample(&mut r));
        if field.at(&x) != field.group_form(&x) {
            report.fail(format!("sample={i} forms differ"));
        }
        let group_product = match chart.kind() {
            ChartKind::Euclidean(_) => &x + &z,
            _ => &x * &z,
        };
        let heap_product = chart.mu(&x, &x0, &z)?;
        let pushed = dl(chart, &x, &x0, &z, &field.at(&z), chart.h)?;
        let residual = relative(&heap_product, &group_product)
            .max(relative(&pushed.finite_difference, &field.group_form(&group_product)));
        report.record(residual, || format!("sample={i}"));
    }
    Ok(report)
}

/// Commutator of invariant fields from integrated flows,
/// `(C(t) + C(−t) − 2x) / 2t²` with
/// `C(t) = Φᵛ₋ₜ Φᵘ₋ₜ Φᵛₜ Φᵘₜ (x)`, against the field generated by the
/// bracket `[u, v]`. Also requires the frame to have full rank at every
/// sampled point.
pub fn bracket_closure(chart: &MatrixHeapChart, u: &Matrix, v: &Matrix, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let fu = LeftInvariantField::new(chart, u)?;
    let fv = LeftInvariantField::new(chart, v)?;
    let fw = LeftInvariantField::new(chart, &chart.bracket(u, v))?;
    let basis = chart.tangent_basis();
    let mut report = NumericReport::new("bracket", seed, samples, tol);
    let t = BRACKET_TIME;
    let loop_at = |x: &Matrix, t: f64| fv.flow(&fu.flow(&fv.flow(&fu.flow(x, t), t), -t), -t);
    for (i, x) in sample_points(chart, samples, seed).iter().enumerate() {
        let c = &(&loop_at(x, t) + &loop_at(x, -t)) - &x.scale(2.0);
        let estimate = c.scale(1.0 / (2.0 * t * t));
        report.record(relative(&estimate, &fw.at(x)), || format!("sample={i}"));
        let frame: Vec<f64> = basis
            .iter()
            .flat_map(|e| chart.dl_analytic(x, &chart.basepoint(), e).expect("invertible").as_slice().to_vec())
            .collect();
        let width = frame.len() / basis.len();
        let rank = Matrix::from_vec(basis.len(), width, frame)?.rank(1e-9);
        if rank != chart.dimension() {
            report.fail(format!("sample={i} frame_rank={rank}"));
        }
    }
    Ok(report)
}

/// `f([x, y, z]) = f(x) − f(y) + f(z)` on the given triples, in order; the
/// first failing triple is the witness. `pointed` adds `f(x₀) = 0`.
pub fn multiplicative_function_check(
    chart: &MatrixHeapChart,
    f: &dyn Fn(&Matrix) -> f64,
    triples: &[[Matrix; 3]],
    pointed: bool,
    seed: u64,
    tol: f64,
) -> Result<NumericReport> {
    let mut report = NumericReport::new("multiplicative-function", seed, triples.len(), tol);
    if pointed {
        let at_base = f(&chart.basepoint());
        report.record(libm::fabs(at_base), || format!("f(x0)={at_base}"));
    }
    for [x, y, z] in triples {
        let lhs = f(&chart.mu(x, y, z)?);
        let rhs = f(x) - f(y) + f(z);
        report.record(relative_scalar(lhs, rhs), || format!("x={x:?} y={y:?} z={z:?} lhs={lhs} rhs={rhs}"));
    }
    Ok(report)
}

/// `Φₜ[x, y, z] = [Φₜx, Φₜy, Φₜz]` for the RK4 flow of `field` at each time
/// in `times`, on the given triples in order.
pub fn multiplicative_vector_field_check(
    chart: &MatrixHeapChart,
    field: &dyn Fn(&Matrix) -> Matrix,
    triples: &[[Matrix; 3]],
    times: &[f64],
    seed: u64,
    tol: f64,
) -> Result<NumericReport> {
    let mut report = NumericReport::new("multiplicative-vector-field", seed, triples.len(), tol);
    for [x, y, z] in triples {
        let m = chart.mu(x, y, z)?;
        for &t in times {
            let flow = |p: &Matrix| rk4_flow(field, p, t, FLOW_STEP);
            let lhs = flow(&m);
            let rhs = chart.mu_unchecked(&flow(x), &flow(y), &flow(z))?;
            report.record(relative(&lhs, &rhs), || format!("x={x:?} y={y:?} z={z:?} t={t}"));
        }
    }
    Ok(report)
}

type TangentPoint = (Matrix, Matrix);

fn tangent_mu(chart: &MatrixHeapChart, a: &TangentPoint, b: &TangentPoint, c: &TangentPoint) -> Result<TangentPoint> {
    Ok((chart.mu_unchecked(&a.0, &b.0, &c.0)?, chart.dmu([&a.0, &b.0, &c.0], [&a.1, &b.1, &c.1])?))
}

/// The tangent lift `Tμ`: its analytic differential against finite
/// differences, and para-associativity on sampled tangent quintuples.
pub fn tangent_semiheap_check(chart: &MatrixHeapChart, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    let mut report = NumericReport::new("tangent-semiheap", seed, samples, tol);
    let mut r = rng(seed);
    for i in 0..samples {
        let t: [TangentPoint; 5] = core::array::from_fn(|_| {
            let g = chart.sample(&mut r);
            let v = chart.sample_tangent(&mut r, &g);
            (g, v)
        });
        let analytic = chart.dmu([&t[0].0, &t[1].0, &t[2].0], [&t[0].1, &t[1].1, &t[2].1])?;
        let fd = central_difference(chart.h, |s| {
            chart.mu_unchecked(
                &chart.curve(&t[0].0, &t[0].1, s)?,
                &chart.curve(&t[1].0, &t[1].1, s)?,
                &chart.curve(&t[2].0, &t[2].1, s)?,
            )
        })?;
        let mut residual = relative(&analytic, &fd);
        let left = tangent_mu(chart, &tangent_mu(chart, &t[0], &t[1], &t[2])?, &t[3], &t[4])?;
        let middle = tangent_mu(chart, &t[0], &tangent_mu(chart, &t[3], &t[2], &t[1])?, &t[4])?;
        let right = tangent_mu(chart, &t[0], &t[1], &tangent_mu(chart, &t[2], &t[3], &t[4])?)?;
        for (p, q) in [(&left, &middle), (&middle, &right)] {
            residual = residual.max(relative(&p.0, &q.0)).max(relative(&p.1, &q.1));
        }
        report.record(residual, || format!("sample={i}"));
    }
    Ok(report)
}

/// The comultiplication `Δf = f ∘ μ` evaluated pointwise: linearity,
/// multiplicativity on `f₁ f₂`, `Δ1 = 1`, and the three para-coassociative
/// composites on sampled quintuples.
pub fn coassociativity_check(
    chart: &MatrixHeapChart,
    f1: &ScalarField,
    f2: &ScalarField,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NumericReport> {
    let mut report = NumericReport::new("coassociative", seed, samples, tol);
    let vars = f1.variables();
    let one = ScalarField::constant(vars, 1.0);
    let product = f1.mul(f2);
    let mut r = rng(seed);
    for i in 0..samples {
        let x: [Matrix; 5] = core::array::from_fn(|_| chart.sample(&mut r));
        let (a, b) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let m = chart.mu(&x[0], &x[1], &x[2])?;
        let combo = f1.scale(a).add(&f2.scale(b));
        let linearity = relative_scalar(combo.eval(&m), a * f1.eval(&m) + b * f2.eval(&m));
        let multiplicativity = relative_scalar(product.eval(&m), f1.eval(&m) * f2.eval(&m));
        let unit = relative_scalar(one.eval(&m), 1.0);
        let left = f1.eval(&chart.mu(&m, &x[3], &x[4])?);
        let middle = f1.eval(&chart.mu(&x[0], &chart.mu(&x[3], &x[2], &x[1])?, &x[4])?);
        let right = f1.eval(&chart.mu(&x[0], &x[1], &chart.mu(&x[2], &x[3], &x[4])?)?);
        let coassoc = relative_scalar(left, middle).max(relative_scalar(middle, right));
        let parts = [linearity, multiplicativity, unit, coassoc];
        let residual = parts.iter().copied().fold(0.0, f64::max);
        report.record(residual, || {
            format!("sample={i} linear={linearity:.3e} product={multiplicativity:.3e} unit={unit:.3e} coassociative={coassoc:.3e}")
        });
    }
    Ok(report)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn scaled(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}

/// `[X, Y, Z] = X ⟨Y, Z⟩` on `ℝⁿ`.
pub fn euclidean_product(x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
    scaled(x, dot(y, z))
}

fn relative_vec(a: &[f64], b: &[f64]) -> f64 {
    relative(&Matrix::column(a), &Matrix::column(b))
}

/// On `ℝⁿ` with the standard inner product `g`: the scalar identity
/// `g(W,X) g(Y,Z) = g(W, X g(Y,Z)) = g(Y, g(X,W) Z)`, para-associativity of
/// `X g(Y, Z)`, and the fiber action law
/// `v g(x₁,x₂) g(x₃,x₄) = v g(x₁, x₂ g(x₃,x₄))`.
pub fn euclidean_semiheap_check(n: usize, samples: usize, seed: u64, tol: f64) -> NumericReport {
    let mut report = NumericReport::new("euclidean-semiheap", seed, samples, tol);
    let mut r = rng(seed);
    for i in 0..samples {
        let p: [Vec<f64>; 5] = core::array::from_fn(|_| (0..n).map(|_| r.gen_range(-1.0..1.0)).collect());
        let [w, x, y, z, _] = &p;
        let s0 = dot(w, x) * dot(y, z);
        let s1 = dot(w, &scaled(x, dot(y, z)));
        let s2 = dot(y, &scaled(z, dot(x, w)));
        let scalar = relative_scalar(s0, s1).max(relative_scalar(s1, s2));
        let [x1, x2, x3, x4, x5] = &p;
        let left = euclidean_product(&euclidean_product(x1, x2, x3), x4, x5);
        let middle = euclidean_product(x1, &euclidean_product(x4, x3, x2), x5);
        let right = euclidean_product(x1, x2, &euclidean_product(x3, x4, x5));
        let para = relative_vec(&left, &middle).max(relative_vec(&middle, &right));
        let fiber = r.gen_range(-1.0..1.0);
        let act = |v: f64, a: &[f64], b: &[f64]| v * dot(a, b);
        let action = relative_scalar(act(act(fiber, x1, x2), x3, x4), act(fiber, x1, &euclidean_product(x2, x3, x4)));
        report.record(scalar.max(para).max(action), || format!("sample={i}"));
    }
    report
}

/// `e^{x−y+z} = eˣ (eʸ)⁻¹ eᶻ` on sampled reals in `[-10, 10]`, together with
/// `e⁰ = 1` so the map is a pointed heap homomorphism.
pub fn exp_hom_check(samples: usize, seed: u64, tol: f64) -> NumericReport {
    let mut report = NumericReport::new("exp-hom", seed, samples, tol);
    report.record(libm::fabs(libm::exp(0.0) - 1.0), || String::from("exp(0)!=1"));
    let mut r = rng(seed);
    for _ in 0..samples {
        let [x, y, z]: [f64; 3] = core::array::from_fn(|_| r.gen_range(-10.0..10.0));
        let lhs = libm::exp(x - y + z);
        let rhs = libm::exp(x) / libm::exp(y) * libm::exp(z);
        report.record(libm::fabs(lhs - rhs) / libm::fabs(lhs), || format!("x={x} y={y} z={z}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::so3_basis;

    fn chart(kind: ChartKind) -> MatrixHeapChart {
        MatrixHeapChart::new(kind)
    }

    #[test]
    fn affine_charts_are_exact() {
        let c = chart(ChartKind::Euclidean(3));
        let r = check_para_associative_numeric(&c, 50, 1, 0.0).unwrap();
        assert!(r.pass, "{r}");
        let x0 = c.basepoint();
        let v = Matrix::column(&[1.0, -2.0, 0.5]);
        let field = LeftInvariantField::new(&c, &v).unwrap();
        for p in sample_points(&c, 10, 2) {
            assert_eq!(field.at(&p), v);
            assert_eq!(c.dl_analytic(&p, &x0, &v).unwrap(), v);
        }
    }

    #[test]
    fn basepoint_pushforward_is_identity() {
        let c = chart(ChartKind::So3);
        let i = c.basepoint();
        let v = so3_basis()[1].clone();
        let p = dl(&c, &i, &i, &i, &v, 1e-5).unwrap();
        assert_eq!(p.analytic, v);
        assert!(p.residual < 1e-9);
    }

    #[test]
    fn non_tangent_vectors_are_refused() {
        let c = chart(ChartKind::So3);
        let i = c.basepoint();
        assert!(matches!(dl(&c, &i, &i, &i, &i, 1e-5), Err(crate::Error::NotTangent { .. })));
    }

    #[test]
    fn zero_field_and_self_bracket() {
        let c = chart(ChartKind::So3);
        let zero = Matrix::zeros(3, 3);
        assert_eq!(left_invariance_check(&c, &zero, 10, 5, 0.0).unwrap().max_residual, 0.0);
        let e1 = so3_basis()[0].clone();
        let r = bracket_closure(&c, &e1, &e1, 5, 5, BRACKET_TOL).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn euclidean_examples() {
        let e = |i: usize| -> Vec<f64> { (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect() };
        assert_eq!(euclidean_product(&e(0), &e(1), &e(2)), alloc::vec![0.0; 3]);
        let (x, y) = ([1.0, 2.0, 3.0], [0.5, -1.0, 2.0]);
        assert_eq!(euclidean_product(&x, &y, &y), scaled(&x, 5.25));
    }

    #[test]
    fn exp_hom_trivial_cases() {
        for x in [-3.0, 0.0, 2.5] {
            assert_eq!(libm::exp(x - x + x), libm::exp(x));
        }
        assert!(exp_hom_check(100, 9, EXACT_TOL).pass);
    }
}
