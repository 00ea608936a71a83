use rand::Rng;

use super::Permutation;

const SLOTS: usize = 15;
const MIXING_STEPS: usize = 60;

/// Product replacement with an accumulator ("rattle").
///
/// All randomness comes from the caller's generator, so a fixed seed and a
/// fixed generator list give a fixed sequence.
#[derive(Clone, Debug)]
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    /// Panics if `generators` is empty.
    pub fn new<R: Rng>(generators: &[Permutation], rng: &mut R) -> Self {
        assert!(!generators.is_empty(), "product replacement needs generators");
        let slots = (0..SLOTS).map(|i| generators[i % generators.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(generators[0].degree()),
        };
        for _ in 0..MIXING_STEPS {
            pr.step(rng);
        }
        pr
    }

    fn step<R: Rng>(&mut self, rng: &mut R) {
        let i = rng.gen_range(0..SLOTS);
        let mut j = rng.gen_range(0..SLOTS - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen::<bool>() {
            self.slots[j].inverse()
        } else {
            self.slots[j].clone()
        };
        self.slots[i] = if rng.gen::<bool>() {
            self.slots[i].then(&other)
        } else {
            other.then(&self.slots[i])
        };
        self.acc = self.acc.then(&self.slots[i]);
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        self.step(rng);
        self.acc.clone()
    }
}
