//! Character tables and class multiplication coefficients.
//!
//! `a(i, j, k)` counts pairs `(x, y)` with `x` in class `i`, `y` in class `j`
//! and `xy` equal to a fixed element of class `k`. It is evaluated from the
//! character table in double-double arithmetic, or counted directly in a
//! permutation group.

pub mod dd;
pub mod families;

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{ClassData, PermGroup};
use dd::{Complex, Dd};

/// Tolerance for the integrality and orthogonality checks.
pub const TOLERANCE: f64 = 1e-6;

/// A character value `Σ (num/den)·ζ_n^exp`, or a plain integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharValue {
    Integer(i64),
    Cyclotomic {
        conductor: u64,
        terms: Vec<(i64, i64, i64)>,
    },
}

impl CharValue {
    /// `Σ c·ζ_n^e` with integer coefficients, collapsed to an integer when
    /// every root involved is `±1`.
    pub fn from_roots(n: u64, terms: &[(i64, i64)]) -> CharValue {
        let n_i = n as i64;
        if terms.iter().all(|&(e, _)| (2 * e).rem_euclid(n_i) == 0) {
            let v = terms
                .iter()
                .map(|&(e, c)| if e.rem_euclid(n_i) == 0 { c } else { -c })
                .sum();
            return CharValue::Integer(v);
        }
        CharValue::Cyclotomic {
            conductor: n,
            terms: terms.iter().map(|&(e, c)| (e, c, 1)).collect(),
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        match self {
            CharValue::Integer(_) => Ok(()),
            CharValue::Cyclotomic { conductor, terms } => {
                if *conductor == 0 {
                    return Err("conductor 0".into());
                }
                if terms.iter().any(|t| t.2 == 0) {
                    return Err("zero denominator".into());
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self) -> Complex {
        match self {
            CharValue::Integer(k) => Complex::real(Dd::from_i64(*k)),
            CharValue::Cyclotomic { conductor, terms } => terms.iter().fold(Complex::ZERO, |acc, &(e, num, den)| {
                let c = Dd::from_i64(num).div(Dd::from_i64(den));
                acc + Complex::root_of_unity(*conductor, e).scale(c)
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableClass {
    pub label: String,
    pub element_order: u64,
    #[serde(with = "crate::catalog::decimal")]
    pub size: BigUint,
}

/// A character table that has passed the load gate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CharacterTable {
    raw: RawTable,
    values: Vec<Vec<Complex>>,
    degrees: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTable {
    pub name: String,
    #[serde(with = "crate::catalog::decimal")]
    pub order: BigUint,
    pub classes: Vec<TableClass>,
    pub irreducibles: Vec<Vec<CharValue>>,
}

impl TryFrom<RawTable> for CharacterTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        CharacterTable::new(raw)
    }
}

impl From<CharacterTable> for RawTable {
    fn from(t: CharacterTable) -> RawTable {
        t.raw
    }
}

fn near_integer(z: Complex) -> Option<i128> {
    let r = z.re.round();
    let ok = (z.re - r).abs().to_f64() < TOLERANCE && z.im.abs().to_f64() < TOLERANCE;
    ok.then(|| r.hi as i128 + r.lo as i128)
}

impl CharacterTable {
    /// Validates `raw`; the error lists every failed check.
    pub fn new(raw: RawTable) -> Result<Self> {
        let mut problems = Vec::new();
        let c = raw.classes.len();
        if c == 0 {
            return Err(Error::TableRejected(vec![format!("{}: no classes", raw.name)]));
        }
        let mut labels = HashSet::new();
        for cl in &raw.classes {
            if !labels.insert(cl.label.as_str()) {
                problems.push(format!("duplicate class label {:?}", cl.label));
            }
            if cl.size.is_zero() || !(&raw.order % &cl.size).is_zero() {
                problems.push(format!(
                    "class {}: size {} does not divide the group order",
                    cl.label, cl.size
                ));
            }
        }
        let total: BigUint = raw.classes.iter().map(|cl| &cl.size).sum();
        if total != raw.order {
            problems.push(format!("class sizes sum to {total}, not {}", raw.order));
        }
        if raw.classes[0].size != BigUint::from(1u32) || raw.classes[0].element_order != 1 {
            problems.push("the first class must be the identity".into());
        }
        if raw.irreducibles.len() != c {
            problems.push(format!("{} characters for {c} classes", raw.irreducibles.len()));
        }
        for (i, row) in raw.irreducibles.iter().enumerate() {
            if row.len() != c {
                problems.push(format!("character {i} has {} values, expected {c}", row.len()));
            }
            for v in row {
                if let Err(e) = v.check() {
                    problems.push(format!("character {i}: {e}"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(reject(&raw.name, problems));
        }

        let values: Vec<Vec<Complex>> = raw
            .irreducibles
            .iter()
            .map(|row| row.iter().map(CharValue::evaluate).collect())
            .collect();
        let mut degrees = Vec::new();
        for (i, row) in values.iter().enumerate() {
            match near_integer(row[0]) {
                Some(d) if d > 0 => degrees.push(d as u64),
                _ => problems.push(format!("character {i} has no positive integer degree")),
            }
        }
        if problems.is_empty() {
            let sum_sq: BigUint = degrees.iter().map(|&d| BigUint::from(d) * d).sum();
            if sum_sq != raw.order {
                problems.push(format!("sum of squared degrees is {sum_sq}, not {}", raw.order));
            }
        }
        let sizes: Vec<Dd> = raw.classes.iter().map(|cl| Dd::from_biguint(&cl.size)).collect();
        let order = Dd::from_biguint(&raw.order);
        for a in 0..values.len() {
            for b in a..values.len() {
                let mut s = Complex::ZERO;
                for k in 0..c {
                    s = s + (values[a][k] * values[b][k].conj()).scale(sizes[k]);
                }
                let inner = Complex {
                    re: s.re.div(order),
                    im: s.im.div(order),
                };
                let expect = if a == b { Dd::ONE } else { Dd::ZERO };
                if (inner.re - expect).abs().to_f64() > TOLERANCE || inner.im.abs().to_f64() > TOLERANCE {
                    problems.push(format!(
                        "characters {a} and {b}: inner product {:.3e}, expected {}",
                        inner.re.to_f64(),
                        expect.to_f64()
                    ));
                }
            }
        }
        if !problems.is_empty() {
            return Err(reject(&raw.name, problems));
        }
        Ok(CharacterTable { raw, values, degrees })
    }

    pub fn parse(json: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(json)?;
        CharacterTable::new(raw)
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn order(&self) -> &BigUint {
        &self.raw.order
    }

    pub fn classes(&self) -> &[TableClass] {
        &self.raw.classes
    }

    pub fn raw(&self) -> &RawTable {
        &self.raw
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn value(&self, character: usize, class: usize) -> Complex {
        self.values[character][class]
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.raw.classes.iter().position(|c| c.label == label)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.raw)?)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.raw.classes.len() {
            return Err(Error::Precondition(format!(
                "class index {i} out of range for {} classes",
                self.raw.classes.len()
            )));
        }
        Ok(())
    }

    /// `a(i, j, k)` from the character formula, rounded after an integrality check.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Result<u64> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        let mut sum = Complex::ZERO;
        for (chi, row) in self.values.iter().enumerate() {
            let term = row[i] * row[j] * row[k].conj();
            sum = sum + term.scale(Dd::ONE.div(Dd::from_i64(self.degrees[chi] as i64)));
        }
        let sizes = &self.raw.classes;
        let factor = (Dd::from_biguint(&sizes[i].size) * Dd::from_biguint(&sizes[j].size))
            .div(Dd::from_biguint(&self.raw.order));
        let value = sum.scale(factor);
        match near_integer(value) {
            Some(v) if v >= 0 => Ok(v as u64),
            _ => Err(Error::NonIntegral {
                value: value.re.to_f64(),
                tolerance: TOLERANCE,
            }),
        }
    }

    /// Every class triple with element orders `(m, n, 2)` and its coefficient.
    pub fn triple_count(&self, m: u64, n: u64) -> Result<Vec<TripleCount>> {
        let of_order = |o: u64| -> Vec<usize> {
            (0..self.raw.classes.len())
                .filter(|&c| self.raw.classes[c].element_order == o)
                .collect()
        };
        let mut out = Vec::new();
        for &i in &of_order(m) {
            for &j in &of_order(n) {
                for &k in &of_order(2) {
                    out.push(TripleCount {
                        i,
                        j,
                        k,
                        value: self.structure_constant(i, j, k)?,
                    });
                }
            }
        }
        Ok(out)
    }
}

fn reject(name: &str, problems: Vec<String>) -> Error {
    Error::TableRejected(problems.into_iter().map(|p| format!("{name}: {p}")).collect())
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable> {
    CharacterTable::parse(&fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCount {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: u64,
}

/// `a(i, j, k)` for every `j` at once: walks class `i` and classifies `x⁻¹z`.
pub fn brute_force_row(group: &PermGroup, classes: &ClassData, i: usize, k: usize) -> Vec<u64> {
    let chain = group.chain();
    let z = &classes.class(k).representative;
    let mut counts = vec![0u64; classes.len()];
    for &r in classes.member_ranks(i) {
        let x = chain.unrank(r as u64);
        let y = x.inverse().then(z);
        let rank = chain.rank(&y).expect("product lies in the group");
        counts[classes.class_of_rank(rank)] += 1;
    }
    counts
}

pub fn brute_force_structure_constant(
    group: &PermGroup,
    classes: &ClassData,
    i: usize,
    j: usize,
    k: usize,
) -> Result<u64> {
    for x in [i, j, k] {
        if x >= classes.len() {
            return Err(Error::Precondition(format!("class index {x} out of range")));
        }
    }
    Ok(brute_force_row(group, classes, i, k)[j])
}

/// The brute-force analogue of [`CharacterTable::triple_count`].
pub fn brute_force_triple_count(group: &PermGroup, classes: &ClassData, m: u64, n: u64) -> Vec<TripleCount> {
    let mut out = Vec::new();
    for i in classes.classes_of_order(m) {
        for k in classes.classes_of_order(2) {
            let row = brute_force_row(group, classes, i, k);
            for j in classes.classes_of_order(n) {
                out.push(TripleCount { i, j, k, value: row[j] });
            }
        }
    }
    out.sort_by_key(|t| (t.i, t.j, t.k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3_json() -> &'static str {
        r#"{"name": "S_3", "order": "6",
            "classes": [{"label": "1a", "element_order": 1, "size": "1"},
                        {"label": "2a", "element_order": 2, "size": "3"},
                        {"label": "3a", "element_order": 3, "size": "2"}],
            "irreducibles": [[1, 1, 1], [1, -1, 1], [2, 0, -1]]}"#
    }

    #[test]
    fn s3_table() {
        let t = CharacterTable::parse(s3_json()).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(t.structure_constant(1, 1, 2).unwrap(), 3);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(t.structure_constant(0, j, k).unwrap(), u64::from(j == k));
            }
        }
        assert!(!t.triple_count(3, 2).unwrap().is_empty());
        assert!(t.triple_count(5, 2).unwrap().is_empty());
        assert!(t.structure_constant(0, 0, 3).is_err());
    }

    #[test]
    fn cyclotomic_values() {
        let json = r#"{"name": "C_3", "order": "3",
            "classes": [{"label": "1a", "element_order": 1, "size": "1"},
                        {"label": "3a", "element_order": 3, "size": "1"},
                        {"label": "3b", "element_order": 3, "size": "1"}],
            "irreducibles": [[1, 1, 1],
                             [1, {"conductor": 3, "terms": [[1, 1, 1]]}, {"conductor": 3, "terms": [[2, 1, 1]]}],
                             [1, {"conductor": 3, "terms": [[2, 1, 1]]}, {"conductor": 3, "terms": [[1, 1, 1]]}]]}"#;
        let t = CharacterTable::parse(json).unwrap();
        assert_eq!(t.structure_constant(1, 1, 2).unwrap(), 1);
        assert_eq!(t.structure_constant(1, 1, 1).unwrap(), 0);
        let back = CharacterTable::parse(&t.to_json().unwrap()).unwrap();
        assert_eq!(back.raw(), t.raw());
    }

    #[test]
    fn load_gate_rejects() {
        let bad_degrees = s3_json().replace("[2, 0, -1]", "[1, 0, -1]");
        let err = CharacterTable::parse(&bad_degrees).unwrap_err().to_string();
        assert!(err.contains("squared degrees"), "{err}");

        let dup = s3_json().replace("\"3a\"", "\"2a\"");
        let err = CharacterTable::parse(&dup).unwrap_err().to_string();
        assert!(err.contains("duplicate"), "{err}");

        let not_orth = s3_json().replace("[1, -1, 1]", "[1, 1, 1]");
        assert!(CharacterTable::parse(&not_orth).is_err());

        let sizes = s3_json().replace("\"size\": \"2\"", "\"size\": \"3\"");
        assert!(CharacterTable::parse(&sizes).is_err());
    }

    #[test]
    fn from_roots_collapses_rational_values() {
        assert_eq!(CharValue::from_roots(4, &[(2, 1), (-2, 1)]), CharValue::Integer(-2));
        assert_eq!(CharValue::from_roots(6, &[(0, 1), (3, 1)]), CharValue::Integer(0));
        assert!(matches!(
            CharValue::from_roots(5, &[(1, 1)]),
            CharValue::Cyclotomic { .. }
        ));
    }
}
