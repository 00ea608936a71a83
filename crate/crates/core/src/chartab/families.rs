//! Character tables built from closed formulas, each paired with class
//! representatives in the matching built-in permutation group.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;

use super::{CharValue, CharacterTable, RawTable, TableClass};
use crate::arith::prime_power;
use crate::catalog::builtin::{cyclic, dihedral, psl2_family, symmetric};
use crate::catalog::matrix::{Action, ActionTag, Matrix, MatrixGenerator};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::{ClassData, PermGroup, Permutation};

/// Largest `n` for which the symmetric-group table is generated.
pub const MAX_SYMMETRIC: usize = 10;

#[derive(Clone, Debug)]
pub struct RealizedTable {
    pub table: CharacterTable,
    pub entry: CatalogEntry,
    /// One permutation per table class, in table order.
    pub representatives: Vec<Permutation>,
}

impl RealizedTable {
    /// Table class index → index in `classes`, after checking that sizes
    /// and element orders agree and no two table classes coincide.
    pub fn class_map(&self, group: &PermGroup, classes: &ClassData) -> Result<Vec<usize>> {
        let mut map = Vec::with_capacity(self.representatives.len());
        let mut problems = Vec::new();
        for (t, rep) in self.representatives.iter().enumerate() {
            let label = &self.table.classes()[t].label;
            let Some(c) = classes.class_of(group, rep) else {
                problems.push(format!("representative of {label} is not in the group"));
                continue;
            };
            let info = classes.class(c);
            let want = &self.table.classes()[t];
            if BigUint::from(info.size) != want.size || info.element_order != want.element_order {
                problems.push(format!(
                    "class {label}: group class has size {} and order {}",
                    info.size, info.element_order
                ));
            }
            if map.contains(&c) {
                problems.push(format!("class {label} repeats an earlier class"));
            }
            map.push(c);
        }
        if problems.is_empty() {
            Ok(map)
        } else {
            Err(Error::TableRejected(
                problems
                    .into_iter()
                    .map(|p| format!("{}: {p}", self.table.name()))
                    .collect(),
            ))
        }
    }
}

/// The generated table for `name` (`S_n`, `D_n`, `C_n` or `PGL_2(q)`, `q` odd).
pub fn realized_table(name: &str) -> Option<Result<RealizedTable>> {
    let key = crate::catalog::normalize_name(name);
    let num = |prefix: &str| key.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = num("S_") {
        return Some(symmetric_table(n));
    }
    if let Some(n) = num("D_") {
        return Some(dihedral_table(n));
    }
    if let Some(n) = num("C_") {
        return Some(cyclic_table(n));
    }
    if let Some(q) = key
        .strip_prefix("PGL_2(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<u64>().ok())
    {
        return Some(pgl2_table(q));
    }
    None
}

fn class(label: String, element_order: u64, size: impl Into<BigUint>) -> TableClass {
    TableClass {
        label,
        element_order,
        size: size.into(),
    }
}

fn finish(
    name: String,
    order: BigUint,
    classes: Vec<TableClass>,
    irreducibles: Vec<Vec<CharValue>>,
    entry: CatalogEntry,
    representatives: Vec<Permutation>,
) -> Result<RealizedTable> {
    let table = CharacterTable::new(RawTable {
        name,
        order,
        classes,
        irreducibles,
    })?;
    Ok(RealizedTable {
        table,
        entry,
        representatives,
    })
}

/// Partitions of `n` with parts in non-increasing order, `[n]` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn symmetric_character(lambda: &[usize], mu: &[usize]) -> i64 {
    fn go(beta: &mut Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return 1;
        };
        let key = (beta.clone(), mu.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for idx in 0..beta.len() {
            let b = beta[idx];
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&c| b - r < c && c < b).count();
            beta[idx] = b - r;
            let v = go(beta, rest, memo);
            beta[idx] = b;
            total += if between % 2 == 0 { v } else { -v };
        }
        memo.insert(key, total);
        total
    }
    let len = lambda.len();
    let mut beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    go(&mut beta, mu, &mut HashMap::new())
}

fn cycle_type_permutation(n: usize, parts: &[usize]) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut start = 0;
    for &p in parts {
        for i in 0..p {
            images[start + i] = (start + (i + 1) % p) as u32;
        }
        start += p;
    }
    Permutation::from_images(images).expect("valid cycle type")
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

pub fn symmetric_table(n: usize) -> Result<RealizedTable> {
    if !(2..=MAX_SYMMETRIC).contains(&n) {
        return Err(Error::Precondition(format!(
            "symmetric tables are generated for 2 ≤ n ≤ {MAX_SYMMETRIC}"
        )));
    }
    let chars = partitions(n);
    let mut types = chars.clone();
    types.reverse();
    let order = factorial(n);
    let classes = types
        .iter()
        .map(|mu| {
            let mut centralizer = BigUint::from(1u32);
            for k in 1..=n {
                let m = mu.iter().filter(|&&p| p == k).count();
                centralizer *= BigUint::from(k).pow(m as u32) * factorial(m);
            }
            let element_order = mu.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)));
            let label = format!("({})", mu.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
            class(label, element_order, &order / centralizer)
        })
        .collect();
    let irreducibles = chars
        .iter()
        .map(|lambda| {
            types
                .iter()
                .map(|mu| CharValue::Integer(symmetric_character(lambda, mu)))
                .collect()
        })
        .collect();
    let reps = types.iter().map(|mu| cycle_type_permutation(n, mu)).collect();
    finish(format!("S_{n}"), order, classes, irreducibles, symmetric(n)?, reps)
}

pub fn cyclic_table(n: usize) -> Result<RealizedTable> {
    let entry = cyclic(n)?;
    let g = entry.generators[0].clone();
    let classes = (0..n)
        .map(|a| class(format!("g^{a}"), (n / a.gcd(&n)) as u64, 1u32))
        .collect();
    let irreducibles = (0..n as i64)
        .map(|j| {
            (0..n as i64)
                .map(|a| CharValue::from_roots(n as u64, &[(j * a, 1)]))
                .collect()
        })
        .collect();
    let reps = (0..n as u64).map(|a| g.pow(a)).collect();
    finish(format!("C_{n}"), BigUint::from(n), classes, irreducibles, entry, reps)
}

/// The dihedral group of order `n` (so `n/2` rotations).
pub fn dihedral_table(n: usize) -> Result<RealizedTable> {
    let entry = dihedral(n)?;
    let k = n / 2;
    let r = entry.generators[0].clone();
    let s = entry.generators[1].clone();
    let kk = k as i64;
    let mut classes = vec![class("1".into(), 1, 1u32)];
    let mut reps = vec![Permutation::identity(k)];
    let rotations: Vec<usize> = (1..=k / 2).collect();
    for &a in &rotations {
        let size = if 2 * a == k { 1u32 } else { 2 };
        classes.push(class(format!("r^{a}"), (k / a.gcd(&k)) as u64, size));
        reps.push(r.pow(a as u64));
    }
    let reflections: Vec<Permutation> = if k % 2 == 1 {
        classes.push(class("s".into(), 2, k as u32));
        vec![s.clone()]
    } else {
        classes.push(class("s".into(), 2, (k / 2) as u32));
        classes.push(class("sr".into(), 2, (k / 2) as u32));
        vec![s.clone(), s.then(&r)]
    };
    reps.extend(reflections);

    let mut irreducibles = Vec::new();
    let linear: Vec<(i64, i64)> = if k % 2 == 1 {
        vec![(1, 1), (1, -1)]
    } else {
        vec![(1, 1), (1, -1), (-1, 1), (-1, -1)]
    };
    for &(e1, e2) in &linear {
        let mut row = vec![CharValue::Integer(1)];
        for &a in &rotations {
            row.push(CharValue::Integer(if a % 2 == 0 { 1 } else { e1 }));
        }
        row.push(CharValue::Integer(e2));
        if k.is_multiple_of(2) {
            row.push(CharValue::Integer(e1 * e2));
        }
        irreducibles.push(row);
    }
    for h in 1..=(kk - 1) / 2 {
        let mut row = vec![CharValue::Integer(2)];
        for &a in &rotations {
            let a = a as i64;
            row.push(CharValue::from_roots(k as u64, &[(h * a, 1), (-h * a, 1)]));
        }
        row.push(CharValue::Integer(0));
        if k.is_multiple_of(2) {
            row.push(CharValue::Integer(0));
        }
        irreducibles.push(row);
    }
    finish(format!("D_{n}"), BigUint::from(n), classes, irreducibles, entry, reps)
}

/// `PGL_2(q)`, `q` odd, on the projective line.
pub fn pgl2_table(q: u64) -> Result<RealizedTable> {
    let (p, k) = prime_power(q)
        .filter(|&(p, _)| p != 2)
        .ok_or_else(|| Error::Precondition(format!("PGL_2 tables need an odd prime power, got {q}")))?;
    let f = Field::new(p, k)?;
    let action = Action::new(p, k, 2, ActionTag::ProjectiveLine)?;
    let perm = |m: Matrix| action.permutation(&MatrixGenerator::linear(m));
    let unipotent = perm(Matrix::from_rows(&[vec![1, 1], vec![0, 1]])?)?;
    let split = perm(Matrix::diagonal(&[f.primitive_element(), 1]))?;
    let mut nonsplit = None;
    'search: for c in 1..f.order() {
        for d in 0..f.order() {
            let g = perm(Matrix::from_rows(&[vec![0, 1], vec![c, d]])?)?;
            if g.order() == q + 1 {
                nonsplit = Some(g);
                break 'search;
            }
        }
    }
    let nonsplit = nonsplit.ok_or_else(|| Error::Precondition("no element of order q + 1".into()))?;

    let qi = q as i64;
    let half_minus = (q - 1) / 2;
    let half_plus = q.div_ceil(2);
    let mut classes = vec![
        class("1A".into(), 1, 1u32),
        class(format!("{p}A"), p, BigUint::from(q * q - 1)),
    ];
    let mut reps = vec![Permutation::identity(action.degree()), unipotent];
    for a in 1..=half_minus {
        let size = if a == half_minus { q * (q + 1) / 2 } else { q * (q + 1) };
        classes.push(class(format!("a^{a}"), (q - 1) / a.gcd(&(q - 1)), size));
        reps.push(split.pow(a));
    }
    for b in 1..=half_plus {
        let size = if b == half_plus { q * (q - 1) / 2 } else { q * (q - 1) };
        classes.push(class(format!("b^{b}"), (q + 1) / b.gcd(&(q + 1)), size));
        reps.push(nonsplit.pow(b));
    }

    let sign = |e: u64| if e.is_multiple_of(2) { 1 } else { -1 };
    let int = CharValue::Integer;
    let mut irreducibles = Vec::new();
    for twist in [false, true] {
        let eps = |e: u64| if twist { sign(e) } else { 1 };
        let mut triv = vec![int(1), int(1)];
        let mut st = vec![int(qi), int(0)];
        for a in 1..=half_minus {
            triv.push(int(eps(a)));
            st.push(int(eps(a)));
        }
        for b in 1..=half_plus {
            triv.push(int(eps(b)));
            st.push(int(-eps(b)));
        }
        irreducibles.push(triv);
        irreducibles.push(st);
    }
    for i in 1..=(qi - 3) / 2 {
        let mut row = vec![int(qi + 1), int(1)];
        for a in 1..=half_minus as i64 {
            row.push(CharValue::from_roots(q - 1, &[(i * a, 1), (-i * a, 1)]));
        }
        row.extend((0..half_plus).map(|_| int(0)));
        irreducibles.push(row);
    }
    for j in 1..=(qi - 1) / 2 {
        let mut row = vec![int(qi - 1), int(-1)];
        row.extend((0..half_minus).map(|_| int(0)));
        for b in 1..=half_plus as i64 {
            row.push(CharValue::from_roots(q + 1, &[(j * b, -1), (-j * b, -1)]));
        }
        irreducibles.push(row);
    }
    let order = BigUint::from(q) * (q * q - 1);
    finish(
        format!("PGL_2({q})"),
        order,
        classes,
        irreducibles,
        psl2_family(q, true)?,
        reps,
    )
}
