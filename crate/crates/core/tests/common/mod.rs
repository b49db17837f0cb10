#![allow(dead_code)]

use std::collections::BTreeMap;

use khlap::{r1_twist, LinkDiagram, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `d` with `twists` random Reidemeister I kinks, reproducible from `seed`.
pub fn random_twists(d: &LinkDiagram, twists: usize, seed: u64) -> LinkDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = d.clone();
    for _ in 0..twists {
        let labels = d.labels();
        let edge = labels[rng.random_range(0..labels.len())];
        let sign = if rng.random_bool(0.5) { Sign::Positive } else { Sign::Negative };
        d = r1_twist(&d, edge, sign).unwrap();
    }
    d
}

pub fn reflect<V: Clone>(m: &BTreeMap<(i32, i32), V>) -> BTreeMap<(i32, i32), V> {
    m.iter().map(|(&(r, q), v)| ((-r, -q), v.clone())).collect()
}
