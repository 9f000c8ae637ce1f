//! Numeric layer: Satake points on the unitary dual torus, unramified
//! L-factors, the Plancherel integrand, and torus quadrature against the
//! Parseval value of a truncated series.
//!
//! Quadrature is the uniform tensor-grid trapezoid rule, which integrates
//! trigonometric polynomials exactly once the grid is finer than twice the
//! coordinate degree; the acceptance tolerances follow from that, not from
//! empirical tuning. `q` is a free real parameter; no finite-field
//! arithmetic happens anywhere.

use crate::lattice::Coweight;
use crate::rng::SplitMix64;
use crate::series::{asymptotics_series, GradedSeries, SeriesError};
use crate::xcrystal::XCrystal;
use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Relative threshold for declaring a complex factor an exact zero.
pub const POLE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum HarmonicError {
    #[error("rank mismatch: point has rank {point}, series key has rank {key}")]
    RankMismatch { point: usize, key: usize },
    #[error("pole: factor for weight {weight} vanishes at the given point")]
    Pole { weight: Coweight },
    #[error("q must exceed 1, got {0}")]
    BadQ(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A unitary point `χ` of the dual torus: one angle in `[0,1)` per basis
/// coweight, together with the residue cardinality `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakePoint {
    pub angles: Vec<f64>,
    pub q: f64,
}

impl SatakePoint {
    pub fn new(angles: Vec<f64>, q: f64) -> Result<Self, HarmonicError> {
        if q <= 1.0 {
            return Err(HarmonicError::BadQ(q));
        }
        Ok(SatakePoint {
            angles: angles.into_iter().map(|a| a.rem_euclid(1.0)).collect(),
            q,
        })
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// `e^{λ̌}(χ) = exp(2πi ⟨angles, λ̌⟩)`; unit modulus by construction.
    pub fn character(&self, lambda: &Coweight) -> Complex64 {
        assert_eq!(
            self.rank(),
            lambda.rank(),
            "character: rank mismatch ({} vs {})",
            self.rank(),
            lambda.rank()
        );
        let mut phase = 0.0;
        for (a, &c) in self.angles.iter().zip(lambda.coords()) {
            phase += a * c as f64;
        }
        Complex64::from_polar(1.0, TAU * phase)
    }

    pub fn q_pow(&self, exp: Rational64) -> f64 {
        self.q.powf(*exp.numer() as f64 / *exp.denom() as f64)
    }

    pub fn conj(&self) -> SatakePoint {
        SatakePoint {
            angles: self.angles.iter().map(|a| (-a).rem_euclid(1.0)).collect(),
            q: self.q,
        }
    }
}

/// Deterministic sample of Satake points for seeded checks.
pub fn seeded_points(rank: usize, q: f64, count: usize, seed: u64) -> Vec<SatakePoint> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| SatakePoint {
            angles: (0..rank).map(|_| rng.f64_unit()).collect(),
            q,
        })
        .collect()
}

/// Numeric specialization of a truncated series at `χ`.
pub fn evaluate_series(series: &GradedSeries, chi: &SatakePoint) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (key, value) in series.support() {
        let mut scalar = 0.0;
        for (e, c) in value.terms() {
            scalar += c as f64 * chi.q_pow(e);
        }
        acc += chi.character(key) * scalar;
    }
    acc
}

/// `Π_w (1 − q^{−s} e^{w}(χ))^{−1}` over a weight multiset.
pub fn lfactor(
    chi: &SatakePoint,
    weights: &[Coweight],
    s: f64,
) -> Result<Complex64, HarmonicError> {
    let scale = chi.q.powf(-s);
    let mut acc = Complex64::new(1.0, 0.0);
    for w in weights {
        let factor = Complex64::new(1.0, 0.0) - chi.character(w) * scale;
        if factor.norm() <= POLE_THRESHOLD {
            return Err(HarmonicError::Pole { weight: w.clone() });
        }
        acc /= factor;
    }
    Ok(acc)
}

/// The exact Plancherel integrand at `χ`:
/// `Π_{α̌ ∈ Φ̌} (1 − e^{α̌}(χ)) / Π_{b ∈ 𝔅} (1 − q^{−c(b)} e^{wt b}(χ))`,
/// computed as `|F(χ)|²` for the closed-form asymptotics ratio `F`.
pub fn plancherel_integrand(x: &XCrystal, chi: &SatakePoint) -> Result<f64, HarmonicError> {
    let mut numerator = Complex64::new(1.0, 0.0);
    for alpha in x.datum().root_datum.positive_coroots() {
        numerator *= Complex64::new(1.0, 0.0) - chi.character(&alpha);
    }
    let mut denominator = Complex64::new(1.0, 0.0);
    for (w, c) in x.plus_weights() {
        let factor = Complex64::new(1.0, 0.0) - chi.character(&w) * chi.q_pow(-c);
        if factor.norm() <= POLE_THRESHOLD {
            return Err(HarmonicError::Pole { weight: w });
        }
        denominator *= factor;
    }
    Ok((numerator / denominator).norm_sqr())
}

/// Output of the quadrature/Parseval comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSummary {
    pub quadrature: f64,
    pub parseval: f64,
    pub difference: f64,
    pub grid: usize,
    pub bound: i64,
    pub q: f64,
    /// Whether the grid is fine enough for the trapezoid rule to be exact
    /// on the truncated integrand.
    pub grid_ok: bool,
    pub weyl_order: usize,
}

/// Compare the grid average of `|F_N|²` with the Parseval sum
/// `Σ |c_λ̌(q)|²`, both scaled by `1/|W|`. The two agree to float precision
/// whenever `grid > 2·(max coordinate degree)`.
pub fn quadrature_norm(
    x: &XCrystal,
    bound: i64,
    grid: usize,
    q: f64,
) -> Result<QuadratureSummary, HarmonicError> {
    if q <= 1.0 {
        return Err(HarmonicError::BadQ(q));
    }
    let series = asymptotics_series(x, bound)?;
    let rank = x.datum().root_datum.rank;
    let weyl_order = x.datum().root_datum.weyl_group().order();

    let max_degree = series
        .support()
        .map(|(k, _)| {
            k.coords()
                .iter()
                .map(|c| c.unsigned_abs())
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let grid_ok = grid > 2 * max_degree as usize;

    // Numeric coefficients c_λ̌(q).
    let coeffs: Vec<(Vec<i64>, f64)> = series
        .support()
        .map(|(k, v)| {
            let mut scalar = 0.0;
            for (e, c) in v.terms() {
                scalar += c as f64 * q.powf(*e.numer() as f64 / *e.denom() as f64);
            }
            (k.coords().to_vec(), scalar)
        })
        .collect();

    let parseval_raw: f64 = kahan_sum(coeffs.iter().map(|(_, c)| c * c));

    // Tensor-grid trapezoid rule with root-of-unity tables: the character of
    // λ̌ at the grid point j is the table entry at ⟨λ̌, j⟩ mod grid.
    let quadrature_raw = if rank == 0 {
        // Zero-dimensional torus: one point, F_N = Σ c.
        let total: f64 = kahan_sum(coeffs.iter().map(|(_, c)| *c));
        total * total
    } else {
        let table: Vec<Complex64> = (0..grid)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / grid as f64))
            .collect();
        // Streamed Kahan accumulation in grid order; no per-point storage.
        let mut sum = 0.0;
        let mut carry = 0.0;
        let mut count = 0u64;
        let mut point = vec![0usize; rank];
        loop {
            let mut acc = Complex64::new(0.0, 0.0);
            for (coords, scalar) in &coeffs {
                let mut phase: i64 = 0;
                for (c, &j) in coords.iter().zip(&point) {
                    phase += c * j as i64;
                }
                acc += table[phase.rem_euclid(grid as i64) as usize] * *scalar;
            }
            let y = acc.norm_sqr() - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            count += 1;
            let mut axis = 0;
            loop {
                if axis == rank {
                    break;
                }
                point[axis] += 1;
                if point[axis] < grid {
                    break;
                }
                point[axis] = 0;
                axis += 1;
            }
            if axis == rank {
                break;
            }
        }
        sum / count as f64
    };

    let quadrature = quadrature_raw / weyl_order as f64;
    let parseval = parseval_raw / weyl_order as f64;
    Ok(QuadratureSummary {
        quadrature,
        parseval,
        difference: (quadrature - parseval).abs(),
        grid,
        bound,
        q,
        grid_ok,
        weyl_order,
    })
}

/// CSV dump of the integrand over the quadrature grid.
pub fn integrand_grid_csv(
    x: &XCrystal,
    bound: i64,
    grid: usize,
    q: f64,
) -> Result<String, HarmonicError> {
    let series = asymptotics_series(x, bound)?;
    let rank = x.datum().root_datum.rank;
    let mut out = String::new();
    let mut header: Vec<String> = (0..rank).map(|k| format!("angle{k}")).collect();
    header.push("integrand".into());
    out.push_str(&header.join(","));
    out.push('\n');
    let mut point = vec![0usize; rank];
    loop {
        let chi = SatakePoint {
            angles: point.iter().map(|&j| j as f64 / grid as f64).collect(),
            q,
        };
        let value = evaluate_series(&series, &chi).norm_sqr();
        let mut fields: Vec<String> = chi.angles.iter().map(|a| format!("{a:.8}")).collect();
        fields.push(format!("{value:.12e}"));
        out.push_str(&fields.join(","));
        out.push('\n');
        if rank == 0 {
            break;
        }
        let mut axis = 0;
        loop {
            if axis == rank {
                break;
            }
            point[axis] += 1;
            if point[axis] < grid {
                break;
            }
            point[axis] = 0;
            axis += 1;
        }
        if axis == rank {
            break;
        }
    }
    Ok(out)
}

/// Compensated (Kahan) summation in a fixed order.
pub fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}
