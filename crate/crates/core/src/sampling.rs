//! Seeded random inputs and identity-verification campaigns.
//!
//! Sample `k` of a campaign with seed `s` draws from its own ChaCha stream
//! `(s, k)`, so a report depends only on `(campaign, s, samples, window)`
//! and never on the number of worker threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{self, basis, bracket, mul, BasisIndex, Element};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::nambu;
use crate::scalars::{rat, Scalar};

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform over `|value| <= window`.
pub fn random_half(rng: &mut impl Rng, window: HalfInt) -> HalfInt {
    let w = window.doubled();
    HalfInt::from_doubled(rng.gen_range(-w..=w))
}

pub fn random_index(rng: &mut impl Rng, window: HalfInt) -> BasisIndex {
    BasisIndex::new(
        random_half(rng, window),
        random_half(rng, window),
        random_half(rng, window),
    )
}

/// A nonzero scalar with small rational components, some of them zero.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let mut comp = || {
            if rng.gen_bool(0.5) {
                rat(0, 1)
            } else {
                rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
            }
        };
        let c = Scalar::new(comp(), comp(), comp(), comp());
        if !c.is_zero() {
            return c;
        }
    }
}

/// At most `terms` terms; fewer if indices collide.
pub fn random_element(rng: &mut impl Rng, window: HalfInt, terms: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..terms {
        e.add_term(random_index(rng, window), random_scalar(rng));
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Campaign {
    /// Fundamental identity on basis quintuples.
    Fi,
    /// Leibniz rule on basis quadruples.
    Leibniz,
    /// Sign change under all six permutations of a basis triple.
    Skew,
    /// Agreement with the Jacobian bracket of the Nambu realization.
    Nambu,
    /// Commutativity, associativity and unit of the product on two-term
    /// elements.
    Product,
}

impl Campaign {
    pub const ALL: [Campaign; 5] = [
        Campaign::Fi,
        Campaign::Leibniz,
        Campaign::Skew,
        Campaign::Nambu,
        Campaign::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::Fi => "fi",
            Campaign::Leibniz => "leibniz",
            Campaign::Skew => "skew",
            Campaign::Nambu => "nambu",
            Campaign::Product => "product",
        }
    }
}

impl std::str::FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidLiteral(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sample: u64,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub seed: u64,
    pub samples: u64,
    pub window: String,
    pub passed: bool,
    pub failures: u64,
    /// The failure with the smallest sample index.
    pub first_failure: Option<Failure>,
}

fn fail(sample: u64, inputs: &[&Element], residual: &Element) -> Failure {
    Failure {
        sample,
        inputs: inputs.iter().map(|e| e.to_string()).collect(),
        residual: residual.to_string(),
    }
}

/// Runs sample `k`; `None` when the identity holds.
pub fn run_sample(c: Campaign, seed: u64, k: u64, window: HalfInt) -> Option<Failure> {
    let mut rng = rng_for(seed, k);
    let mut b = || basis(random_index(&mut rng, window));
    match c {
        Campaign::Fi => {
            let xs = [b(), b(), b(), b(), b()];
            let r = algebra::fi_residual(&xs[0], &xs[1], &xs[2], &xs[3], &xs[4]);
            (!r.is_zero()).then(|| fail(k, &xs.each_ref(), &r))
        }
        Campaign::Leibniz => {
            let xs = [b(), b(), b(), b()];
            let r = algebra::leibniz_residual(&xs[0], &xs[1], &xs[2], &xs[3]);
            (!r.is_zero()).then(|| fail(k, &xs.each_ref(), &r))
        }
        Campaign::Skew => {
            let xs = [b(), b(), b()];
            let base = bracket(&xs[0], &xs[1], &xs[2]);
            let perms: [([usize; 3], bool); 6] = [
                ([0, 1, 2], false),
                ([1, 2, 0], false),
                ([2, 0, 1], false),
                ([1, 0, 2], true),
                ([0, 2, 1], true),
                ([2, 1, 0], true),
            ];
            perms.iter().find_map(|(p, odd)| {
                let v = bracket(&xs[p[0]], &xs[p[1]], &xs[p[2]]);
                let r = if *odd { &v + &base } else { &v - &base };
                (!r.is_zero()).then(|| fail(k, &xs.each_ref(), &r))
            })
        }
        Campaign::Nambu => {
            let xs = [b(), b(), b()];
            let direct = nambu::chi(&bracket(&xs[0], &xs[1], &xs[2]));
            let jac = nambu::jacobian_bracket_poly(
                &nambu::chi(&xs[0]),
                &nambu::chi(&xs[1]),
                &nambu::chi(&xs[2]),
            );
            let r = nambu::chi_inverse(&(&direct - &jac));
            (!r.is_zero()).then(|| fail(k, &xs.each_ref(), &r))
        }
        Campaign::Product => {
            let xs = [
                random_element(&mut rng, window, 2),
                random_element(&mut rng, window, 2),
                random_element(&mut rng, window, 2),
            ];
            let comm = &mul(&xs[0], &xs[1]) - &mul(&xs[1], &xs[0]);
            let assoc = &mul(&mul(&xs[0], &xs[1]), &xs[2]) - &mul(&xs[0], &mul(&xs[1], &xs[2]));
            let unit = &mul(&algebra::unit(), &xs[0]) - &xs[0];
            [comm, assoc, unit]
                .into_iter()
                .find(|r| !r.is_zero())
                .map(|r| fail(k, &xs.each_ref(), &r))
        }
    }
}

fn collect(c: Campaign, seed: u64, samples: u64, window: HalfInt) -> CampaignReport {
    let failures: Vec<Failure> = (0..samples)
        .into_par_iter()
        .filter_map(|k| run_sample(c, seed, k, window))
        .collect();
    CampaignReport {
        campaign: c,
        seed,
        samples,
        window: window.to_string(),
        passed: failures.is_empty(),
        failures: failures.len() as u64,
        first_failure: failures.into_iter().min_by_key(|f| f.sample),
    }
}

/// Runs a campaign on `workers` threads (the global pool when `None`).
pub fn run_campaign(
    c: Campaign,
    seed: u64,
    samples: u64,
    window: HalfInt,
    workers: Option<usize>,
) -> CampaignReport {
    match workers {
        None => collect(c, seed, samples, window),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(|| collect(c, seed, samples, window)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_per_index() {
        let a = random_index(&mut rng_for(7, 3), HalfInt::from_int(4));
        let b = random_index(&mut rng_for(7, 3), HalfInt::from_int(4));
        assert_eq!(a, b);
        let w = HalfInt::ONE;
        for k in 0..50 {
            let i = random_index(&mut rng_for(1, k), w);
            assert!(i.doubled().iter().all(|d| d.abs() <= 2));
        }
    }

    #[test]
    fn campaigns_pass_and_ignore_worker_count() {
        for c in Campaign::ALL {
            let one = run_campaign(c, 11, 60, HalfInt::from_int(2), Some(1));
            let many = run_campaign(c, 11, 60, HalfInt::from_int(2), Some(4));
            assert!(one.passed, "{c:?}");
            assert_eq!(one, many);
        }
        assert_eq!("nambu".parse::<Campaign>().unwrap(), Campaign::Nambu);
        assert!("poisson".parse::<Campaign>().is_err());
    }
}
