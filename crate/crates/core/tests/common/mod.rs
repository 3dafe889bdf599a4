#![allow(dead_code)]

use amoeba_core::{Complex64, ExponentialSum, SupportSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `count` distinct integer points from `[lo, hi]^d`.
pub fn integer_support(
    rng: &mut ChaCha8Rng,
    d: usize,
    count: usize,
    lo: i64,
    hi: i64,
) -> SupportSet {
    let side = (hi - lo + 1) as usize;
    let total = side.pow(d as u32);
    assert!(count <= total);
    let mut codes: Vec<usize> = (0..total).collect();
    codes.shuffle(rng);
    let points = codes[..count]
        .iter()
        .map(|&code| {
            let mut c = code;
            (0..d)
                .map(|_| {
                    let v = (c % side) as i64 + lo;
                    c /= side;
                    v as f64
                })
                .collect()
        })
        .collect();
    SupportSet::new(d, points).unwrap()
}

/// Real points in `[-spread, spread]^d`, pairwise at least `min_gap` apart.
pub fn real_support(
    rng: &mut ChaCha8Rng,
    d: usize,
    count: usize,
    spread: f64,
    min_gap: f64,
) -> SupportSet {
    let mut points: Vec<Vec<f64>> = Vec::new();
    while points.len() < count {
        let p: Vec<f64> = (0..d).map(|_| rng.random_range(-spread..spread)).collect();
        let ok = points.iter().all(|q| {
            q.iter()
                .zip(&p)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                >= min_gap
        });
        if ok {
            points.push(p);
        }
    }
    SupportSet::new(d, points).unwrap()
}

/// Coefficients with log-uniform modulus in `[e^-2, e^2]` and uniform argument.
pub fn random_sum(rng: &mut ChaCha8Rng, support: SupportSet) -> ExponentialSum {
    let coefficients = (0..support.len())
        .map(|_| {
            let r = rng.random_range(-2.0f64..2.0).exp();
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        })
        .collect();
    ExponentialSum::new(support, coefficients).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, d: usize, half_width: f64) -> Vec<f64> {
    (0..d)
        .map(|_| rng.random_range(-half_width..half_width))
        .collect()
}
