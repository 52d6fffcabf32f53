use rand::Rng;
use rmgen_core::spectra::{surmise_cdf, uniform_phase_cdf};
use rmgen_core::{
    chi_square_uniform, density_histogram, dedup_kramers, eigenphases, ks_test, sample_cse, sample_haar_unitary,
    spacings, RngStream, SurmiseBeta,
};
use std::f64::consts::TAU;

#[test]
fn ks_accepts_uniform_draws() {
    let mut rng = RngStream::new(1, 0);
    let xs: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
    let ks = ks_test(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
    assert!(ks.p_value > 1e-3, "p = {}", ks.p_value);
}

#[test]
fn tests_reject_at_their_nominal_rate() {
    // 400 null runs at level 0.05: rejections ~ Binomial(400, 0.05), mean 20, sd 4.4
    let mut rng = RngStream::new(2, 0);
    let (mut ks_rej, mut chi_rej) = (0, 0);
    for _ in 0..400 {
        let phases: Vec<f64> = (0..600).map(|_| rng.random::<f64>() * TAU).collect();
        if ks_test(&phases, uniform_phase_cdf).unwrap().p_value < 0.05 {
            ks_rej += 1;
        }
        let h = density_histogram(&phases, 60).unwrap();
        if chi_square_uniform(&h).unwrap().p_value < 0.05 {
            chi_rej += 1;
        }
    }
    assert!((5..=40).contains(&ks_rej), "KS rejected {ks_rej}/400");
    assert!((5..=40).contains(&chi_rej), "χ² rejected {chi_rej}/400");
}

#[test]
fn cse_dedup_halves_the_spectrum() {
    let mut rng = RngStream::new(3, 0);
    let e = eigenphases(&sample_cse::<f64>(10, &mut rng).unwrap()).unwrap();
    assert_eq!(e.n, 20);
    let d = dedup_kramers(&e, 1e-8).unwrap();
    assert_eq!(d.n, 10);
    assert_eq!(spacings(&d).unwrap().s.len(), 10);
}

#[test]
fn cue_spacings_follow_the_surmise_roughly() {
    // small run: only checks that the spacing sample is not absurd
    let mut rng = RngStream::new(4, 0);
    let mut s = vec![];
    for _ in 0..200 {
        let u = sample_haar_unitary::<f64>(20, &mut rng).unwrap();
        s.extend(spacings(&eigenphases(&u).unwrap()).unwrap().s);
    }
    let mean = s.iter().sum::<f64>() / s.len() as f64;
    assert!((mean - 1.0).abs() < 1e-12);
    let ks = ks_test(&s, |x| surmise_cdf(x, SurmiseBeta::Two)).unwrap();
    assert!(ks.statistic < 0.05, "D = {}", ks.statistic);
}
