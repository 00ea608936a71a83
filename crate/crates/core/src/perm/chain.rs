use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::{Permutation, ProductReplacement};
use crate::error::{Error, Result};

const ABSENT: u32 = u32::MAX;

/// One layer of a stabilizer chain: a base point, the strong generators that
/// fix all earlier base points, and a transversal for the base point's orbit.
#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `pos[x]` is the index of `x` in `orbit`, or `ABSENT`.
    pos: Vec<u32>,
    /// `reps[i]` maps `base` to `orbit[i]`.
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![ABSENT; degree];
        pos[base as usize] = 0;
        let id = Permutation::identity(degree);
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![id.clone()],
            inv_reps: vec![id],
        }
    }

    /// Closes the orbit under all generators, returning true if it grew.
    fn close_orbit(&mut self) -> bool {
        let before = self.orbit.len();
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in 0..self.gens.len() {
                let q = self.gens[s].image(p);
                if self.pos[q as usize] == ABSENT {
                    let rep = self.reps[i].then(&self.gens[s]);
                    self.pos[q as usize] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            i += 1;
        }
        self.orbit.len() > before
    }

    fn schreier_generator(&self, orbit_index: usize, gen: usize) -> Permutation {
        let s = &self.gens[gen];
        let image = s.image(self.orbit[orbit_index]);
        let back = self.pos[image as usize] as usize;
        self.reps[orbit_index].then(s).then(&self.inv_reps[back])
    }
}

/// A stabilizer chain certificate: base points, strong generators and
/// transversals. Immutable once built.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Target<'a> {
    order: &'a BigUint,
    reached: bool,
}

impl StabChain {
    fn empty(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    fn build(degree: usize, generators: &[Permutation], mut target: Option<&mut Target>) -> Self {
        let mut chain = StabChain::empty(degree);
        for g in generators {
            if !g.is_identity() {
                chain.extend(0, g.clone(), &mut target);
            }
            if target.as_ref().is_some_and(|t| t.reached) {
                break;
            }
        }
        chain
    }

    /// Adds `g` (which fixes the first `k` base points) to level `k` unless it is
    /// already a member of the subgroup described by levels `k..`.
    fn extend(&mut self, k: usize, g: Permutation, target: &mut Option<&mut Target>) {
        if target.as_ref().is_some_and(|t| t.reached) || self.sift_from(k, &g).is_identity() {
            return;
        }
        if k == self.levels.len() {
            let base = g.first_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        let level = &mut self.levels[k];
        let old_len = level.orbit.len();
        level.gens.push(g);
        let new_gen = level.gens.len() - 1;
        let grew = level.close_orbit();
        let new_len = level.orbit.len();
        let gen_count = level.gens.len();

        if grew {
            if let Some(t) = target.as_deref_mut() {
                if self.order() >= *t.order {
                    t.reached = true;
                    return;
                }
            }
        }

        for i in 0..old_len {
            let sg = self.levels[k].schreier_generator(i, new_gen);
            self.extend(k + 1, sg, target);
        }
        for i in old_len..new_len {
            for s in 0..gen_count {
                let sg = self.levels[k].schreier_generator(i, s);
                self.extend(k + 1, sg, target);
            }
        }
    }

    /// Strips `g` through levels `k..`, returning the residue.
    fn sift_from(&self, k: usize, g: &Permutation) -> Permutation {
        let mut h = g.clone();
        let mut scratch = Permutation::identity(self.degree);
        for level in &self.levels[k.min(self.levels.len())..] {
            let x = h.image(level.base);
            let i = level.pos[x as usize];
            if i == ABSENT {
                return h;
            }
            h.then_into(&level.inv_reps[i as usize], &mut scratch);
            std::mem::swap(&mut h, &mut scratch);
        }
        h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the `k`-th point stabilizer in the chain.
    pub fn level_generators(&self, k: usize) -> &[Permutation] {
        &self.levels[k].gens
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).is_identity()
    }

    /// Mixed-radix index of a member, with level 0 as the most significant digit.
    ///
    /// Only the base images are tracked, so this is `O(depth²)` and allocation
    /// free. The result is meaningless for non-members; use [`contains`](Self::contains)
    /// first if membership is in doubt.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let mut rank: u64 = 0;
        let mut digits = [0u32; 64];
        let mut digits_vec;
        let digits: &mut [u32] = if self.levels.len() <= 64 {
            &mut digits[..self.levels.len()]
        } else {
            digits_vec = vec![0u32; self.levels.len()];
            &mut digits_vec
        };
        for (k, level) in self.levels.iter().enumerate() {
            let mut x = g.image(level.base);
            for (j, prev) in self.levels[..k].iter().enumerate() {
                x = prev.inv_reps[digits[j] as usize].image(x);
            }
            let i = level.pos[x as usize];
            if i == ABSENT {
                return None;
            }
            digits[k] = i;
            rank = rank.checked_mul(level.orbit.len() as u64)?.checked_add(i as u64)?;
        }
        Some(rank)
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(&self, mut rank: u64) -> Permutation {
        let mut digits = vec![0usize; self.levels.len()];
        for (k, level) in self.levels.iter().enumerate().rev() {
            let len = level.orbit.len() as u64;
            digits[k] = (rank % len) as usize;
            rank /= len;
        }
        let mut g = Permutation::identity(self.degree);
        let mut scratch = Permutation::identity(self.degree);
        for (k, level) in self.levels.iter().enumerate().rev() {
            g.then_into(&level.reps[digits[k]], &mut scratch);
            std::mem::swap(&mut g, &mut scratch);
        }
        g
    }
}

/// A permutation group given by generators together with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// Builds the chain deterministically: base points are chosen as the
    /// smallest point moved by the first generator that needs a new level.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => return Err(Error::Precondition("at least one generator is required".into())),
        };
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &generators, None);
        let order = chain.order();
        Ok(PermGroup {
            generators,
            chain,
            order,
        })
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.chain.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !std::mem::replace(&mut seen[y as usize], true) {
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree()
    }

    /// A product-replacement element; see [`ProductReplacement`].
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        ProductReplacement::new(&self.generators, rng).next(rng)
    }

    /// An exactly uniform element, drawn through the transversals.
    pub fn uniform_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree());
        for level in self.chain.levels.iter().rev() {
            let i = rng.gen_range(0..level.reps.len());
            g = g.then(&level.reps[i]);
        }
        g
    }

    /// Whether `generators` generate a group of order at least `target`.
    ///
    /// Stops as soon as the partial chain certifies `target` elements, which
    /// is much cheaper than a full build when the answer is yes. For a subset
    /// of a group of order `target` this decides generation.
    pub fn generates_order_at_least(generators: &[Permutation], target: &BigUint) -> bool {
        let Some(degree) = generators.first().map(Permutation::degree) else {
            return target.is_one();
        };
        if target.is_one() {
            return true;
        }
        let mut t = Target {
            order: target,
            reached: false,
        };
        let chain = StabChain::build(degree, generators, Some(&mut t));
        t.reached || chain.order() >= *target
    }

    /// The subgroup generated by `generators`, sharing this group's degree.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(generators)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn n_cycle(n: usize) -> Permutation {
        let c: Vec<u32> = (0..n as u32).collect();
        cyc(n, &[&c])
    }

    fn symmetric(n: usize) -> PermGroup {
        PermGroup::new(vec![cyc(n, &[&[0, 1]]), n_cycle(n)]).unwrap()
    }

    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let id = Permutation::identity(gens[0].degree());
        let mut seen = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn symmetric_orders_match_factorial() {
        for n in 2..=8 {
            assert_eq!(symmetric(n).order_u64(), Some(factorial(n as u64)), "S_{n}");
        }
        assert_eq!(symmetric(6).order_u64(), Some(720));
    }

    #[test]
    fn alternating_nine() {
        let g = PermGroup::new(vec![cyc(9, &[&[0, 1, 2]]), cyc(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]])]).unwrap();
        assert_eq!(g.order_u64(), Some(181_440));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(vec![Permutation::identity(5)]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Permutation::identity(5)).unwrap());
        assert!(!g.contains(&cyc(5, &[&[0, 1]])).unwrap());
    }

    #[test]
    fn membership() {
        let a4 = PermGroup::new(vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(!a4.contains(&cyc(4, &[&[0, 1]])).unwrap());
        let c5 = PermGroup::new(vec![cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(c5.contains(&cyc(5, &[&[0, 2, 4, 1, 3]])).unwrap());
        assert!(c5.contains(&Permutation::identity(5)).unwrap());
        assert!(c5.contains(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn chain_matches_naive_closure() {
        let cases: Vec<Vec<Permutation>> = vec![
            vec![cyc(7, &[&[0, 1]]), n_cycle(7)],
            vec![
                cyc(6, &[&[0, 1, 2]]),
                cyc(6, &[&[3, 4, 5]]),
                cyc(6, &[&[0, 3], &[1, 4], &[2, 5]]),
            ],
            vec![
                cyc(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]),
                cyc(8, &[&[0, 4], &[1, 7], &[2, 6], &[3, 5]]),
            ],
            vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
        ];
        for gens in cases {
            let g = PermGroup::new(gens.clone()).unwrap();
            let naive = closure(&gens);
            assert_eq!(g.order_u64(), Some(naive.len() as u64));
            for x in &naive {
                assert!(g.contains(x).unwrap());
            }
        }
    }

    #[test]
    fn rank_unrank_bijection() {
        let g = PermGroup::new(vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5]])]).unwrap();
        let n = g.order_u64().unwrap();
        assert_eq!(n, 360);
        let mut seen = HashSet::new();
        for r in 0..n {
            let x = g.chain().unrank(r);
            assert!(g.contains(&x).unwrap());
            assert_eq!(g.chain().rank(&x), Some(r));
            seen.insert(x);
        }
        assert_eq!(seen.len() as u64, n);
    }

    #[test]
    fn transitivity() {
        assert!(symmetric(5).is_transitive());
        let g = PermGroup::new(vec![cyc(3, &[&[0, 1]])]).unwrap();
        assert!(!g.is_transitive());
    }

    #[test]
    fn early_stop_decides_generation() {
        let s6 = symmetric(6);
        assert!(PermGroup::generates_order_at_least(s6.generators(), s6.order()));
        let a6 = [cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5]])];
        assert!(!PermGroup::generates_order_at_least(&a6, s6.order()));
        assert!(PermGroup::generates_order_at_least(&a6, &BigUint::from(360u32)));
    }

    #[test]
    fn uniform_elements_are_members() {
        let g = symmetric(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(g.contains(&g.uniform_element(&mut rng)).unwrap());
        }
    }
}
