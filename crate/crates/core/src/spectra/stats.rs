//! Histograms, goodness-of-fit tests and the Wigner surmise. Everything here
//! works in `f64`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erf;

use crate::error::{Error, Result};

/// Equal-width histogram. `density[i] = counts[i] / (total · width)` where
/// `total` includes `overflow`, so the bins integrate to the in-range fraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramData {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub density: Vec<f64>,
    /// Samples that fell outside `[bin_edges[0], bin_edges[bins])`.
    pub overflow: u64,
}

impl HistogramData {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }

    pub fn width(&self) -> f64 {
        self.bin_edges[1] - self.bin_edges[0]
    }

    pub fn integral(&self) -> f64 {
        let w = self.width();
        self.density.iter().map(|d| d * w).sum()
    }
}

/// Streaming counterpart of [`HistogramData`]; partial results merge
/// associatively.
#[derive(Clone, Debug, PartialEq)]
pub struct HistogramAccumulator {
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
    overflow: u64,
}

impl HistogramAccumulator {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidArgument("bins must be at least 1".into()));
        }
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!("empty range [{lo}, {hi})")));
        }
        Ok(HistogramAccumulator {
            lo,
            hi,
            counts: vec![0; bins],
            overflow: 0,
        })
    }

    pub fn add(&mut self, x: f64) {
        if !(x >= self.lo && x < self.hi) {
            self.overflow += 1;
            return;
        }
        let bins = self.counts.len();
        let k = ((x - self.lo) / (self.hi - self.lo) * bins as f64) as usize;
        self.counts[k.min(bins - 1)] += 1;
    }

    pub fn extend(&mut self, xs: impl IntoIterator<Item = f64>) {
        for x in xs {
            self.add(x);
        }
    }

    pub fn merge(&mut self, other: &HistogramAccumulator) -> Result<()> {
        if self.lo != other.lo || self.hi != other.hi || self.counts.len() != other.counts.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} bins on [{}, {})", self.counts.len(), self.lo, self.hi),
                found: format!("{} bins on [{}, {})", other.counts.len(), other.lo, other.hi),
            });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.overflow += other.overflow;
        Ok(())
    }

    pub fn finish(&self) -> Result<HistogramData> {
        let total = self.counts.iter().sum::<u64>() + self.overflow;
        if total == 0 {
            return Err(Error::EmptyInput);
        }
        let bins = self.counts.len();
        let w = (self.hi - self.lo) / bins as f64;
        let bin_edges = (0..=bins)
            .map(|i| if i == bins { self.hi } else { self.lo + w * i as f64 })
            .collect();
        let density = self.counts.iter().map(|&c| c as f64 / (total as f64 * w)).collect();
        Ok(HistogramData {
            bin_edges,
            counts: self.counts.clone(),
            density,
            overflow: self.overflow,
        })
    }
}

/// Equal-width histogram of `values` over `[lo, hi)`.
pub fn histogram(values: &[f64], lo: f64, hi: f64, bins: usize) -> Result<HistogramData> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = HistogramAccumulator::new(lo, hi, bins)?;
    acc.extend(values.iter().copied());
    acc.finish()
}

/// Histogram of eigenphases over `[0, 2π)`.
pub fn density_histogram(phases: &[f64], bins: usize) -> Result<HistogramData> {
    if let Some(&bad) = phases.iter().find(|t| !(0.0..TAU).contains(*t)) {
        return Err(Error::InvalidArgument(format!("phase {bad} outside [0, 2π)")));
    }
    histogram(phases, 0.0, TAU, bins)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Combined goodness-of-fit summary. The χ² fields are absent when the
/// histogram was too sparse for the test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub chi_square: Option<f64>,
    pub chi_square_dof: Option<usize>,
    pub chi_square_p_value: Option<f64>,
}

impl GofReport {
    pub fn new(ks: KsResult, chi: Option<ChiSquareResult>) -> Self {
        GofReport {
            ks_statistic: ks.statistic,
            ks_p_value: ks.p_value,
            chi_square: chi.map(|c| c.statistic),
            chi_square_dof: chi.map(|c| c.dof),
            chi_square_p_value: chi.map(|c| c.p_value),
        }
    }
}

/// `Q_KS(λ) = 2 Σ_{k≥1} (−1)^{k−1} exp(−2k²λ²)`, the limiting survival
/// function of `√n·D`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if !(lambda > 0.0) {
        return 1.0;
    }
    let p = if lambda < 1.18 {
        // Jacobi-transformed series converges fast for small λ.
        let y = -PI * PI / (8.0 * lambda * lambda);
        let mut s = 0.0;
        for k in 0..20 {
            let m = (2 * k + 1) as f64;
            s += (m * m * y).exp();
        }
        1.0 - (TAU.sqrt() / lambda) * s
    } else {
        let mut s = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            s += if k % 2 == 1 { term } else { -term };
            if term < 1e-18 {
                break;
            }
        }
        2.0 * s
    };
    p.clamp(0.0, 1.0)
}

fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    let rn = n_eff.sqrt();
    kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d)
}

/// One-sample Kolmogorov–Smirnov test against a continuous CDF.
pub fn ks_test(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    if sample.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    let d = d.clamp(0.0, 1.0);
    Ok(KsResult {
        statistic: d,
        p_value: ks_p_value(d, n),
    })
}

/// Two-sample Kolmogorov–Smirnov test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.total_cmp(q));
    ys.sort_by(|p, q| p.total_cmp(q));
    let (n1, n2) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    Ok(KsResult {
        statistic: d,
        p_value: ks_p_value(d, n1 * n2 / (n1 + n2)),
    })
}

/// Pearson χ² of a histogram against equal expected counts, overflow excluded.
pub fn chi_square_uniform(h: &HistogramData) -> Result<ChiSquareResult> {
    let bins = h.bins();
    let in_range: u64 = h.counts.iter().sum();
    let expected = in_range as f64 / bins as f64;
    if expected < 5.0 {
        return Err(Error::UndersampledBins { expected });
    }
    let statistic: f64 = h
        .counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = bins - 1;
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .sf(statistic)
    };
    Ok(ChiSquareResult {
        statistic,
        dof,
        p_value,
    })
}

/// CDF of the uniform phase density `1/2π` on `[0, 2π)`.
pub fn uniform_phase_cdf(theta: f64) -> f64 {
    (theta / TAU).clamp(0.0, 1.0)
}

/// Symmetry class index of the Wigner surmise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum SurmiseBeta {
    One,
    Two,
    Four,
}

impl SurmiseBeta {
    pub fn as_u8(self) -> u8 {
        match self {
            SurmiseBeta::One => 1,
            SurmiseBeta::Two => 2,
            SurmiseBeta::Four => 4,
        }
    }
}

impl From<SurmiseBeta> for u8 {
    fn from(b: SurmiseBeta) -> u8 {
        b.as_u8()
    }
}

impl TryFrom<u8> for SurmiseBeta {
    type Error = Error;
    fn try_from(b: u8) -> Result<Self> {
        match b {
            1 => Ok(SurmiseBeta::One),
            2 => Ok(SurmiseBeta::Two),
            4 => Ok(SurmiseBeta::Four),
            _ => Err(Error::InvalidArgument(format!("beta must be 1, 2 or 4, got {b}"))),
        }
    }
}

const A2: f64 = 4.0 / PI;
const A4: f64 = 64.0 / (9.0 * PI);

fn c4() -> f64 {
    262144.0 / (729.0 * PI.powi(3))
}

/// Wigner surmise density `p_β(s)`, zero for negative `s`.
pub fn wigner_surmise(s: f64, beta: SurmiseBeta) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    match beta {
        SurmiseBeta::One => PI / 2.0 * s * (-PI * s * s / 4.0).exp(),
        SurmiseBeta::Two => 32.0 / (PI * PI) * s * s * (-A2 * s * s).exp(),
        SurmiseBeta::Four => c4() * s.powi(4) * (-A4 * s * s).exp(),
    }
}

/// Closed-form CDF of [`wigner_surmise`].
pub fn surmise_cdf(s: f64, beta: SurmiseBeta) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let v = match beta {
        SurmiseBeta::One => 1.0 - (-PI * s * s / 4.0).exp(),
        SurmiseBeta::Two => {
            let a = A2;
            let e = (-a * s * s).exp();
            let int = PI.sqrt() / (4.0 * a.powf(1.5)) * erf(a.sqrt() * s) - s * e / (2.0 * a);
            32.0 / (PI * PI) * int
        }
        SurmiseBeta::Four => {
            let a = A4;
            let e = (-a * s * s).exp();
            let int = 3.0 * PI.sqrt() / (8.0 * a.powf(2.5)) * erf(a.sqrt() * s)
                - e * (s.powi(3) / (2.0 * a) + 3.0 * s / (4.0 * a * a));
            c4() * int
        }
    };
    v.clamp(0.0, 1.0)
}

/// `max_i |density_i − (F(r_i) − F(l_i)) / w|`: the histogram against the
/// surmise averaged over each bin.
pub fn spacing_sup_norm(h: &HistogramData, beta: SurmiseBeta) -> f64 {
    h.density
        .iter()
        .zip(h.bin_edges.windows(2))
        .map(|(d, e)| {
            let reference = (surmise_cdf(e[1], beta) - surmise_cdf(e[0], beta)) / (e[1] - e[0]);
            (d - reference).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BETAS: [SurmiseBeta; 3] = [SurmiseBeta::One, SurmiseBeta::Two, SurmiseBeta::Four];

    /// Composite Simpson on [0, hi] with `m` (even) panels.
    fn simpson(f: impl Fn(f64) -> f64, hi: f64, m: usize) -> f64 {
        let h = hi / m as f64;
        let mut s = f(0.0) + f(hi);
        for i in 1..m {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn surmise_vanishes_at_zero() {
        for b in BETAS {
            assert_eq!(wigner_surmise(0.0, b), 0.0);
        }
    }

    #[test]
    fn surmise_normalized_with_unit_mean() {
        for b in BETAS {
            let mass = simpson(|s| wigner_surmise(s, b), 12.0, 20_000);
            let mean = simpson(|s| s * wigner_surmise(s, b), 12.0, 20_000);
            assert!((mass - 1.0).abs() < 1e-8, "{b:?} mass {mass}");
            assert!((mean - 1.0).abs() < 1e-8, "{b:?} mean {mean}");
        }
    }

    #[test]
    fn surmise_cdf_matches_quadrature() {
        for b in BETAS {
            for s in [0.1, 0.5, 1.0, 1.7, 3.0] {
                let q = simpson(|x| wigner_surmise(x, b), s, 4000);
                assert!((q - surmise_cdf(s, b)).abs() < 1e-10, "{b:?} at {s}");
            }
            assert!((surmise_cdf(10.0, b) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_round_trip() {
        for b in BETAS {
            assert_eq!(SurmiseBeta::try_from(b.as_u8()).unwrap(), b);
        }
        assert!(SurmiseBeta::try_from(3).is_err());
    }

    #[test]
    fn flat_grid_histogram() {
        let n = 6000;
        let phases: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * TAU / n as f64).collect();
        let h = density_histogram(&phases, 60).unwrap();
        for d in &h.density {
            assert!((d - 1.0 / TAU).abs() < 1e-12);
        }
        assert_eq!(h.counts.iter().sum::<u64>(), n as u64);
        assert!((h.integral() - 1.0).abs() < 1e-12);
        let chi = chi_square_uniform(&h).unwrap();
        assert_eq!(chi.statistic, 0.0);
        assert_eq!(chi.dof, 59);
        assert!((chi.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_phase_histogram() {
        let h = density_histogram(&[1.0], 60).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), 1);
        assert_eq!(h.counts[(1.0 / TAU * 60.0) as usize], 1);
        assert!((h.integral() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_errors() {
        assert!(matches!(density_histogram(&[], 10), Err(Error::EmptyInput)));
        assert!(density_histogram(&[1.0], 0).is_err());
        assert!(density_histogram(&[TAU], 4).is_err());
    }

    #[test]
    fn histogram_overflow_and_merge() {
        let mut a = HistogramAccumulator::new(0.0, 4.0, 8).unwrap();
        a.extend([0.1, 3.9, 4.0, 7.0]);
        let mut b = HistogramAccumulator::new(0.0, 4.0, 8).unwrap();
        b.extend([0.2, 2.0]);
        let mut ab = a.clone();
        ab.merge(&b).unwrap();
        let mut ba = b.clone();
        ba.merge(&a).unwrap();
        assert_eq!(ab, ba);
        let h = ab.finish().unwrap();
        assert_eq!(h.overflow, 2);
        assert_eq!(h.total(), 6);
        assert!((h.integral() - 4.0 / 6.0).abs() < 1e-12);
        assert!(a.merge(&HistogramAccumulator::new(0.0, 4.0, 9).unwrap()).is_err());
    }

    #[test]
    fn chi_square_all_mass_in_one_bin() {
        let phases = vec![0.01; 600];
        let h = density_histogram(&phases, 60).unwrap();
        let chi = chi_square_uniform(&h).unwrap();
        // (600−10)²/10 + 59·10 = 34810 + 590 = 35400 = 600·59
        assert!((chi.statistic - 600.0 * 59.0).abs() < 1e-9);
        assert!(chi.p_value < 1e-300);
    }

    #[test]
    fn chi_square_undersampled() {
        let h = density_histogram(&[1.0, 2.0], 60).unwrap();
        assert!(matches!(chi_square_uniform(&h), Err(Error::UndersampledBins { .. })));
    }

    #[test]
    fn ks_grid_statistic() {
        let n = 200;
        let grid: Vec<f64> = (1..=n).map(|j| (j as f64 - 0.5) / n as f64).collect();
        let r = ks_test(&grid, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-15);
        assert!(r.p_value > 0.999);
    }

    #[test]
    fn ks_point_mass() {
        let r = ks_test(&[0.0; 10], |x| x.clamp(0.0, 1.0)).unwrap();
        assert_eq!(r.statistic, 1.0);
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn kolmogorov_series_branches_agree() {
        // both expansions are valid near the switch point
        let lam: f64 = 1.18;
        let small = {
            let y = -PI * PI / (8.0 * lam * lam);
            1.0 - (TAU.sqrt() / lam) * (0..20).map(|k| (((2 * k + 1) as f64).powi(2) * y).exp()).sum::<f64>()
        };
        let large = 2.0 * (1..50).map(|k| {
            let t = (-2.0 * (k * k) as f64 * lam * lam).exp();
            if k % 2 == 1 { t } else { -t }
        }).sum::<f64>();
        assert!((small - large).abs() < 1e-12);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
        assert!((kolmogorov_survival(1.3580986) - 0.05).abs() < 1e-6);
    }

    #[test]
    fn two_sample_identical_and_disjoint() {
        let a: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let same = ks_two_sample(&a, &a).unwrap();
        assert_eq!(same.statistic, 0.0);
        let b: Vec<f64> = (0..100).map(|i| 1000.0 + i as f64).collect();
        let apart = ks_two_sample(&a, &b).unwrap();
        assert_eq!(apart.statistic, 1.0);
        assert!(apart.p_value < 1e-10);
    }

    #[test]
    fn sup_norm_of_exact_bins_is_zero() {
        let beta = SurmiseBeta::Two;
        let mut acc = HistogramAccumulator::new(0.0, 4.0, 50).unwrap();
        // fabricate counts proportional to the bin masses
        let total = 1e9;
        let mut counts = Vec::new();
        for i in 0..50 {
            let (l, r) = (i as f64 * 0.08, (i + 1) as f64 * 0.08);
            counts.push(((surmise_cdf(r, beta) - surmise_cdf(l, beta)) * total).round() as u64);
        }
        let in_range: u64 = counts.iter().sum();
        acc.counts = counts;
        acc.overflow = total as u64 - in_range;
        let h = acc.finish().unwrap();
        assert!(spacing_sup_norm(&h, beta) < 1e-7);
    }
}
