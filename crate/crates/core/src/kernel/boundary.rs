use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Boundary values `f*(e^{iθ}) = Σ_{|k|≤d} c_k e^{ikθ}` on the unit circle.
///
/// Holds the Fourier coefficients, an equispaced sample grid and the
/// sup-norm. The sup-norm starts from the largest sample modulus and is
/// then polished by a golden-section search around every grid-local
/// maximum, so it matches `max_θ |f*(e^{iθ})|` to roughly machine precision
/// rather than to grid resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData<T> {
    coefficients: Vec<Complex<T>>,
    samples: Vec<Complex<T>>,
    sup_norm: T,
}

/// On-disk form: `{"degree": d, "coefficients": [[re, im], ...]}`, ordered `-d..=d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFile {
    pub degree: usize,
    pub coefficients: Vec<[f64; 2]>,
}

impl<T: Real> BoundaryData<T> {
    /// Builds the data from `2d+1` coefficients ordered `c_{-d}, ..., c_d`.
    pub fn from_coefficients(coefficients: Vec<Complex<T>>) -> Result<Self> {
        if coefficients.len() % 2 == 0 {
            return Err(Error::BoundaryFormat(format!(
                "expected an odd number of coefficients, got {}",
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::BoundaryFormat("coefficients must be finite".into()));
        }
        let degree = coefficients.len() / 2;
        let n = sample_count(degree);
        let step = T::TAU() / T::from_count(n);
        let samples: Vec<Complex<T>> =
            (0..n).map(|j| eval_trig(&coefficients, step * T::from_count(j))).collect();
        let sup_norm = polished_sup_norm(&coefficients, &samples);
        Ok(Self { coefficients, samples, sup_norm })
    }

    /// Sparse construction from `(k, c_k)` pairs; the degree is the largest `|k|`.
    pub fn from_modes(modes: &[(i64, Complex<T>)]) -> Result<Self> {
        let degree = modes.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coefficients = vec![Complex::new(T::zero(), T::zero()); 2 * degree + 1];
        for &(k, c) in modes {
            coefficients[(k + degree as i64) as usize] += c;
        }
        Self::from_coefficients(coefficients)
    }

    pub fn constant(value: Complex<T>) -> Self {
        Self::from_coefficients(vec![value]).expect("single finite coefficient")
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() / 2
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    /// Coefficient of `e^{ikθ}` (zero outside `-d..=d`).
    pub fn coefficient(&self, k: i64) -> Complex<T> {
        let d = self.degree() as i64;
        if k.abs() > d {
            Complex::new(T::zero(), T::zero())
        } else {
            self.coefficients[(k + d) as usize]
        }
    }

    /// Values at `θ_j = 2πj/N`, `N` a power of two `≥ 4d+4`.
    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn sup_norm(&self) -> T {
        self.sup_norm
    }

    /// `f*(e^{iθ})`.
    pub fn eval(&self, theta: T) -> Complex<T> {
        eval_trig(&self.coefficients, theta)
    }

    /// Data `θ ↦ f*(e^{i(θ+φ)})`.
    pub fn rotated(&self, phi: T) -> Self {
        let d = self.degree() as i64;
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * Complex::from_polar(T::one(), T::from_i64(i as i64 - d).unwrap() * phi))
            .collect();
        Self::from_coefficients(coefficients).expect("rotation keeps coefficients finite")
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|&c| c * factor).collect())
            .expect("scaling keeps coefficients finite")
    }

    pub fn to_file(&self) -> BoundaryFile {
        BoundaryFile {
            degree: self.degree(),
            coefficients: self.coefficients.iter().map(|c| [c.re.as_f64(), c.im.as_f64()]).collect(),
        }
    }

    pub fn from_file(file: &BoundaryFile) -> Result<Self> {
        if file.coefficients.len() != 2 * file.degree + 1 {
            return Err(Error::BoundaryFormat(format!(
                "degree {} needs {} coefficients, found {}",
                file.degree,
                2 * file.degree + 1,
                file.coefficients.len()
            )));
        }
        let coefficients = file
            .coefficients
            .iter()
            .map(|[re, im]| Complex::new(T::lit(*re), T::lit(*im)))
            .collect();
        Self::from_coefficients(coefficients)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BoundaryFile = serde_json::from_str(text).map_err(|e| Error::BoundaryFormat(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }
}

fn sample_count(degree: usize) -> usize {
    (16 * (degree + 1)).max(64).next_power_of_two()
}

/// Horner evaluation in `u = e^{iθ}` followed by the `e^{-idθ}` shift.
fn eval_trig<T: Real>(coefficients: &[Complex<T>], theta: T) -> Complex<T> {
    let d = coefficients.len() / 2;
    let u = Complex::from_polar(T::one(), theta);
    let mut acc = Complex::new(T::zero(), T::zero());
    for &c in coefficients.iter().rev() {
        acc = acc * u + c;
    }
    acc * Complex::from_polar(T::one(), -T::from_count(d) * theta)
}

fn polished_sup_norm<T: Real>(coefficients: &[Complex<T>], samples: &[Complex<T>]) -> T {
    let n = samples.len();
    let grid_max = samples.iter().map(|s| s.norm()).fold(T::zero(), T::max);
    if coefficients.len() == 1 {
        return grid_max;
    }
    let step = T::TAU() / T::from_count(n);
    let modulus: Vec<T> = samples.iter().map(|s| s.norm()).collect();
    let mut best = grid_max;
    for j in 0..n {
        let prev = modulus[(j + n - 1) % n];
        let next = modulus[(j + 1) % n];
        if modulus[j] >= prev && modulus[j] >= next {
            let centre = step * T::from_count(j);
            let peak = golden_max(|t| eval_trig(coefficients, t).norm(), centre - step, centre + step);
            best = best.max(peak);
        }
    }
    best
}

/// Maximum of a unimodal function on `[lo, hi]` by golden-section search.
fn golden_max<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T) -> T {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo <= T::epsilon() {
            break;
        }
    }
    f1.max(f2)
}
