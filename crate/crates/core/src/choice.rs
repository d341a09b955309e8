//! Choices of representatives made while counting.
//!
//! Every count is independent of these choices; the randomized policy exists
//! so that this can be tested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChoicePolicy {
    /// Always take the first candidate.
    #[default]
    Canonical,
    /// Pick uniformly among candidates from a seeded stream.
    Randomized(u64),
}

pub struct Chooser {
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    pub fn new(policy: ChoicePolicy) -> Chooser {
        match policy {
            ChoicePolicy::Canonical => Chooser { rng: None },
            ChoicePolicy::Randomized(seed) => Chooser { rng: Some(ChaCha8Rng::seed_from_u64(seed)) },
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "no candidates to choose from");
        match &mut self.rng {
            None => 0,
            Some(r) => r.gen_range(0..n),
        }
    }

    pub fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.index(items.len())].clone()
    }
}
