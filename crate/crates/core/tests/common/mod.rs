#![allow(dead_code)]

use knotslope_core::{BraidWord, KinkKind, LinkDiagram};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random braid closure with `letters` crossings on up to six strands.
pub fn random_braid<R: Rng>(rng: &mut R, letters: usize) -> LinkDiagram {
    let strands = rng.gen_range(2..=6usize);
    let word = (0..letters)
        .map(|_| {
            let i = rng.gen_range(1..strands as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    LinkDiagram::from_braid(&BraidWord::new(strands, word).unwrap())
}

/// Random diagram with at most `max_crossings` crossings: a braid closure,
/// possibly with kinks, a mirror and a distant summand.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> LinkDiagram {
    let kinks = rng.gen_range(0..=2.min(max_crossings));
    let rest = max_crossings - kinks;
    let split = if rng.gen_bool(0.3) && rest >= 2 { rng.gen_range(1..rest) } else { rest };
    let n = rng.gen_range(0..=split);
    let mut d = random_braid(rng, n);
    if split < rest {
        let n = rng.gen_range(0..=rest - split);
        let other = random_braid(rng, n);
        d = d.distant_union(&other);
    }
    for _ in 0..kinks {
        let kind = *KinkKind::ALL.choose(rng).unwrap();
        d = if d.num_edges() > 0 {
            d.with_kink(rng.gen_range(0..d.num_edges()), kind)
        } else {
            d.with_kink_on_free_loop(0, kind)
        };
    }
    if rng.gen_bool(0.5) {
        d = d.mirror();
    }
    d
}
