use std::collections::VecDeque;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Covers Sp_6(2), the largest group handled exhaustively by default.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 2_000_000;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct ClassInfo {
    /// The member of least rank in the group's stabilizer chain.
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

impl ClassInfo {
    pub fn centralizer_order(&self, group_order: u64) -> u64 {
        group_order / self.size
    }
}

/// Conjugacy classes of a group found by exhaustive enumeration, together with
/// a rank-indexed class lookup.
///
/// Classes are ordered by element order, then size, then representative rank,
/// so the identity class is always first.
#[derive(Clone, Debug)]
pub struct ClassData {
    group_order: u64,
    classes: Vec<ClassInfo>,
    /// `class_of[rank]` is the class index of the element with that rank.
    class_of: Vec<u32>,
    /// Ranks grouped by class; class `i` occupies `members[offsets[i]..offsets[i + 1]]`.
    members: Vec<u32>,
    offsets: Vec<usize>,
}

impl ClassData {
    /// Fails with [`Error::BudgetExceeded`] when `|G| > element_budget`.
    pub fn compute(group: &PermGroup, element_budget: u64) -> Result<Self> {
        let budget = element_budget.min(u32::MAX as u64 - 1);
        let order = match group.order_u64() {
            Some(n) if n <= budget => n,
            _ => {
                return Err(Error::BudgetExceeded {
                    order: group.order().to_string(),
                    budget: element_budget,
                })
            }
        };
        let chain = group.chain();
        let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();

        let mut class_of = vec![UNSEEN; order as usize];
        // (representative rank, size, element order) in discovery order
        let mut found: Vec<(u64, u64, u64)> = Vec::new();
        let mut queue = VecDeque::new();
        for r in 0..order {
            if class_of[r as usize] != UNSEEN {
                continue;
            }
            let id = found.len() as u32;
            class_of[r as usize] = id;
            queue.push_back(r);
            let mut size = 0u64;
            while let Some(x) = queue.pop_front() {
                size += 1;
                let elt = chain.unrank(x);
                for g in &gens {
                    let y = chain
                        .rank(&elt.conjugate_by(g))
                        .expect("conjugate of a member is a member");
                    if class_of[y as usize] == UNSEEN {
                        class_of[y as usize] = id;
                        queue.push_back(y);
                    }
                }
            }
            found.push((r, size, chain.unrank(r).order()));
        }

        let mut perm: Vec<usize> = (0..found.len()).collect();
        perm.sort_by_key(|&i| (found[i].2, found[i].1, found[i].0));
        let mut new_index = vec![0u32; found.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = new_index[*c as usize];
        }
        let classes: Vec<ClassInfo> = perm
            .iter()
            .map(|&i| ClassInfo {
                representative: chain.unrank(found[i].0),
                size: found[i].1,
                element_order: found[i].2,
            })
            .collect();

        let mut offsets = vec![0usize; classes.len() + 1];
        for (i, c) in classes.iter().enumerate() {
            offsets[i + 1] = offsets[i] + c.size as usize;
        }
        let mut fill = offsets.clone();
        let mut members = vec![0u32; order as usize];
        for (r, &c) in class_of.iter().enumerate() {
            members[fill[c as usize]] = r as u32;
            fill[c as usize] += 1;
        }

        Ok(ClassData {
            group_order: order,
            classes,
            class_of,
            members,
            offsets,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }

    /// `(representative, size)` pairs.
    pub fn representatives(&self) -> Vec<(Permutation, u64)> {
        self.classes
            .iter()
            .map(|c| (c.representative.clone(), c.size))
            .collect()
    }

    #[inline]
    pub fn class_of_rank(&self, rank: u64) -> usize {
        self.class_of[rank as usize] as usize
    }

    /// Class index of a member of `group`; `None` for non-members.
    pub fn class_of(&self, group: &PermGroup, g: &Permutation) -> Option<usize> {
        if !group.chain().contains(g) {
            return None;
        }
        group.chain().rank(g).map(|r| self.class_of_rank(r))
    }

    /// Ranks of the members of class `i`, in increasing order.
    pub fn member_ranks(&self, i: usize) -> &[u32] {
        &self.members[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Indices of the classes whose elements have order `k`.
    pub fn classes_of_order(&self, k: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.classes[i].element_order == k)
            .collect()
    }

    /// Number of elements of order `k`.
    pub fn count_of_order(&self, k: u64) -> u64 {
        self.classes
            .iter()
            .filter(|c| c.element_order == k)
            .map(|c| c.size)
            .sum()
    }

    /// Class of the inverses of class `i`.
    pub fn inverse_class(&self, group: &PermGroup, i: usize) -> usize {
        let inv = self.classes[i].representative.inverse();
        self.class_of(group, &inv).expect("inverse of a member")
    }
}
