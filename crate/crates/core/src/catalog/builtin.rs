//! Built-in constructions of the groups needed by the classification tables.
//!
//! Symmetric, alternating, cyclic and dihedral groups and `PSL_2(q)`,
//! `PGL_2(q)` are recognised by name pattern. The remaining groups are built
//! from matrices acting on projective points and reduced to two generators.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::{
    order_pgl, order_psl, order_psp, order_psu, order_sl, order_sp, unitary_subfield_order, Action, ActionTag, Matrix,
    MatrixGenerator,
};
use super::{CatalogEntry, NaturalKind};
use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::{PermGroup, Permutation};

const REDUCTION_SEED: u64 = 0x7269_7665;
const REDUCTION_ATTEMPTS: usize = 2000;

/// Names with a dedicated construction (aliases in parentheses are accepted too).
pub const NAMED: &[&str] = &[
    "PSL_2(9).2",
    "M_10",
    "PSL_2(9).(C_2xC_2)",
    "PSL_2(25).2",
    "SL_3(3)",
    "SL_3(3).2",
    "SL_3(5)",
    "PSL_3(4)",
    "PSL_3(4).2_2",
    "PSL_3(4).2_3",
    "PSL_3(4).3",
    "SU_3(3)",
    "SU_3(3).2",
    "SU_3(4)",
    "SU_3(4).2",
    "PSU_3(8)",
    "SU_4(2)",
    "SU_4(2).2",
    "Sp_6(2)",
];

fn aliases_of(name: &str) -> Vec<String> {
    let list: &[&str] = match name {
        "PSL_2(9).2" => &["PSigmaL_2(9)"],
        "M_10" => &["PSL_2(9).2_3"],
        "PSL_2(9).(C_2xC_2)" => &["PGammaL_2(9)", "PSL_2(9).(C2xC2)", "PSL_2(9).2^2"],
        "PSL_2(25).2" => &["PSigmaL_2(25)", "PSL_2(25).2_2"],
        "SL_3(3)" => &["PSL_3(3)"],
        "SL_3(3).2" => &["PSL_3(3).2"],
        "SL_3(5)" => &["PSL_3(5)"],
        "PSL_3(4).3" => &["PGL_3(4)"],
        "SU_3(3)" => &["PSU_3(3)", "U_3(3)"],
        "SU_3(3).2" => &["PSU_3(3).2", "G_2(2)"],
        "SU_3(4)" => &["PSU_3(4)"],
        "SU_3(4).2" => &["PSU_3(4).2"],
        "PSU_3(8)" => &["U_3(8)"],
        "SU_4(2)" => &["PSU_4(2)", "PSp_4(3)"],
        "SU_4(2).2" => &["PSU_4(2).2", "PSp_4(3).2", "SU(4,2).2"],
        "Sp_6(2)" => &["S_6(2)"],
        _ => &[],
    };
    list.iter().map(|s| s.to_string()).collect()
}

/// The construction registered under `name` or one of its aliases.
pub fn builtin_entry(name: &str) -> Option<Result<CatalogEntry>> {
    let key = super::normalize_name(name);
    if let Some(&canonical) = NAMED.iter().find(|&&n| n == key || aliases_of(n).contains(&key)) {
        return Some(named(canonical));
    }
    pattern(&key)
}

fn parse_index(key: &str, prefix: &str) -> Option<u64> {
    key.strip_prefix(prefix)?.parse().ok()
}

fn parse_q(key: &str, prefix: &str) -> Option<u64> {
    key.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
}

fn pattern(key: &str) -> Option<Result<CatalogEntry>> {
    if let Some(n) = parse_index(key, "S_") {
        return Some(symmetric(n as usize));
    }
    if let Some(n) = parse_index(key, "A_") {
        return Some(alternating(n as usize));
    }
    if let Some(n) = parse_index(key, "C_") {
        return Some(cyclic(n as usize));
    }
    if let Some(n) = parse_index(key, "D_") {
        return Some(dihedral(n as usize));
    }
    if let Some(q) = parse_q(key, "PSL_2(").or_else(|| parse_q(key, "L_2(")) {
        return Some(psl2_family(q, false));
    }
    if let Some(q) = parse_q(key, "PGL_2(") {
        return Some(psl2_family(q, true));
    }
    None
}

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<u32> = points.into_iter().map(|x| x as u32).collect();
    Permutation::from_cycles(n, &[&pts]).expect("valid cycle")
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn check_degree(n: usize, min: usize) -> Result<()> {
    if n < min || n > crate::perm::MAX_DEGREE {
        return Err(Error::Precondition(format!(
            "degree {n} outside the supported range {min}..=65535"
        )));
    }
    Ok(())
}

pub fn symmetric(n: usize) -> Result<CatalogEntry> {
    check_degree(n, 2)?;
    let gens = if n == 2 {
        vec![cycle(2, [0, 1])]
    } else {
        vec![cycle(n, [0, 1]), cycle(n, 0..n)]
    };
    let index2 = (n >= 3).then(|| alternating_generators(n));
    Ok(CatalogEntry {
        name: format!("S_{n}"),
        aliases: vec![],
        degree: n,
        generators: gens,
        claimed_order: factorial(n),
        provenance: format!("natural action on {n} points"),
        natural: Some(NaturalKind::Symmetric),
        index2_subgroup: index2,
        socle_index: (n >= 5).then(|| BigUint::from(2u32)),
    })
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    if n == 3 {
        return vec![cycle(3, [0, 1, 2])];
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    vec![cycle(n, [0, 1, 2]), long]
}

pub fn alternating(n: usize) -> Result<CatalogEntry> {
    check_degree(n, 3)?;
    Ok(CatalogEntry {
        name: format!("A_{n}"),
        aliases: vec![],
        degree: n,
        generators: alternating_generators(n),
        claimed_order: factorial(n) / 2u32,
        provenance: format!("natural action on {n} points"),
        natural: Some(NaturalKind::Alternating),
        index2_subgroup: None,
        socle_index: (n >= 5).then(|| BigUint::from(1u32)),
    })
}

pub fn cyclic(n: usize) -> Result<CatalogEntry> {
    check_degree(n, 1)?;
    let gen = if n == 1 {
        Permutation::identity(1)
    } else {
        cycle(n, 0..n)
    };
    Ok(CatalogEntry {
        name: format!("C_{n}"),
        aliases: vec![],
        degree: n,
        generators: vec![gen],
        claimed_order: BigUint::from(n),
        provenance: format!("regular action on {n} points"),
        natural: None,
        index2_subgroup: None,
        socle_index: None,
    })
}

/// The dihedral group of order `n` acting on the vertices of an `n/2`-gon.
pub fn dihedral(n: usize) -> Result<CatalogEntry> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::Precondition(format!(
            "dihedral groups are named by their even order, at least 6; got D_{n}"
        )));
    }
    let k = n / 2;
    check_degree(k, 3)?;
    let rotation = cycle(k, 0..k);
    let reflection = Permutation::from_images((0..k).map(|i| ((k - i) % k) as u32).collect())?;
    Ok(CatalogEntry {
        name: format!("D_{n}"),
        aliases: vec![],
        degree: k,
        generators: vec![rotation.clone(), reflection],
        claimed_order: BigUint::from(n),
        provenance: format!("symmetries of a regular {k}-gon"),
        natural: None,
        index2_subgroup: Some(vec![rotation]),
        socle_index: None,
    })
}

/// Replaces a generating set by two elements generating the same group, if a
/// seeded search finds them quickly.
pub fn reduce_generators(gens: Vec<Permutation>) -> Result<Vec<Permutation>> {
    if gens.len() <= 2 {
        return Ok(gens);
    }
    let group = PermGroup::new(gens.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED);
    for _ in 0..REDUCTION_ATTEMPTS {
        let pair = [group.uniform_element(&mut rng), group.uniform_element(&mut rng)];
        if PermGroup::generates_order_at_least(&pair, group.order()) {
            return Ok(pair.to_vec());
        }
    }
    Ok(gens)
}

fn elementary(d: usize, i: usize, j: usize, a: u32) -> Matrix {
    let mut m = Matrix::identity(d);
    m.set(i, j, a);
    m
}

/// Generators of SL_d(q): all elementary transvections with entry 1 and a
/// diagonal matrix `diag(ω, ω⁻¹, 1, …)`.
fn sl_generators(f: &Field, d: usize) -> Vec<MatrixGenerator> {
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                gens.push(MatrixGenerator::linear(elementary(d, i, j, 1)));
            }
        }
    }
    if f.degree() > 1 {
        let w = f.primitive_element();
        let mut diag = vec![1; d];
        diag[0] = w;
        diag[1] = f.inv(w).expect("nonzero");
        gens.push(MatrixGenerator::linear(Matrix::diagonal(&diag)));
    }
    gens
}

fn permutations(action: &Action, gens: &[MatrixGenerator]) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| action.permutation(g)).collect()
}

struct Built {
    degree: usize,
    gens: Vec<Permutation>,
    socle: Option<Vec<Permutation>>,
}

fn field_of(q: u64) -> Result<Field> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
    Field::new(p, k)
}

/// `PSL_2(q)` (or `PGL_2(q)`) on the `q + 1` points of the projective line.
pub fn psl2_family(q: u64, pgl: bool) -> Result<CatalogEntry> {
    let f = field_of(q)?;
    let (p, k) = (f.characteristic() as u64, f.degree());
    let action = Action::new(p, k, 2, ActionTag::ProjectiveLine)?;
    let socle = permutations(&action, &sl_generators(&f, 2))?;
    let (name, order, gens, index2) = if pgl {
        let mut gens = socle.clone();
        gens.push(action.permutation(&MatrixGenerator::linear(Matrix::diagonal(&[f.primitive_element(), 1])))?);
        let index2 = (q % 2 == 1).then(|| reduce_generators(socle.clone())).transpose()?;
        (format!("PGL_2({q})"), order_pgl(2, q), gens, index2)
    } else {
        (format!("PSL_2({q})"), order_psl(2, q), socle, None)
    };
    Ok(CatalogEntry {
        name,
        aliases: vec![],
        degree: action.degree(),
        generators: reduce_generators(gens)?,
        claimed_order: order,
        provenance: format!("matrices over GF({q}) acting on the projective line"),
        natural: None,
        index2_subgroup: index2,
        socle_index: Some(BigUint::from(if pgl && q % 2 == 1 { 2u32 } else { 1 })),
    })
}

fn semilinear_frobenius(d: usize, e: u32) -> MatrixGenerator {
    MatrixGenerator::semilinear(Matrix::identity(d), e)
}

/// Adds candidates one at a time until the generated group reaches `target`.
fn grow(
    action: &Action,
    candidates: impl Iterator<Item = MatrixGenerator>,
    target: &BigUint,
) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = Vec::new();
    for c in candidates {
        let p = action.permutation(&c)?;
        if p.is_identity() {
            continue;
        }
        gens.push(p);
        if PermGroup::generates_order_at_least(&gens, target) {
            return Ok(gens);
        }
    }
    Err(Error::Precondition(format!(
        "candidate generators never reached order {target}"
    )))
}

/// Unitary transvections `x ↦ x + a·h(x, v)·v` for isotropic `v` and `a + a^q0 = 0`.
fn unitary_transvections(action: &Action) -> Result<impl Iterator<Item = MatrixGenerator> + '_> {
    let f = action.field();
    unitary_subfield_order(f)?;
    let e = f.degree() / 2;
    let scalars: Vec<u32> = (1..f.order()).filter(|&a| f.add(a, f.frobenius(a, e)) == 0).collect();
    Ok(action.points().points.iter().flat_map(move |v| {
        let d = v.len();
        let c: Vec<u32> = (0..d).map(|i| f.frobenius(v[d - 1 - i], e)).collect();
        scalars
            .clone()
            .into_iter()
            .map(move |a| MatrixGenerator::linear(rank_one_update(f, &c, a, v)))
    }))
}

/// Symplectic transvections `x ↦ x + a·B(x, v)·v`.
fn symplectic_transvections(action: &Action) -> impl Iterator<Item = MatrixGenerator> + '_ {
    let f = action.field();
    action.points().points.iter().flat_map(move |v| {
        let n = v.len() / 2;
        let c: Vec<u32> = (0..2 * n)
            .map(|i| if i < n { v[n + i] } else { f.neg(v[i - n]) })
            .collect();
        (1..f.order()).map(move |a| MatrixGenerator::linear(rank_one_update(f, &c, a, v)))
    })
}

/// `I + a·cᵀ·v`, so that `x ↦ x + a·(x·c)·v`.
fn rank_one_update(f: &Field, c: &[u32], a: u32, v: &[u32]) -> Matrix {
    let d = v.len();
    let mut m = Matrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            let t = f.mul(a, f.mul(c[i], v[j]));
            m.set(i, j, f.add(m.get(i, j), t));
        }
    }
    m
}

fn entry(name: &str, built: Built, order: BigUint, provenance: &str, socle_index: u32) -> Result<CatalogEntry> {
    let index2_subgroup = match (&built.socle, socle_index) {
        (Some(s), 2) => Some(reduce_generators(s.clone())?),
        _ => None,
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        aliases: aliases_of(name),
        degree: built.degree,
        generators: reduce_generators(built.gens)?,
        claimed_order: order,
        provenance: provenance.to_string(),
        natural: None,
        index2_subgroup,
        socle_index: Some(BigUint::from(socle_index)),
    })
}

fn extend(action: &Action, socle: Vec<Permutation>, extra: &[MatrixGenerator]) -> Result<Built> {
    let mut gens = socle.clone();
    gens.extend(permutations(action, extra)?);
    Ok(Built {
        degree: action.degree(),
        gens,
        socle: Some(socle),
    })
}

fn simple(action: &Action, gens: Vec<Permutation>) -> Built {
    Built {
        degree: action.degree(),
        gens,
        socle: None,
    }
}

fn named(name: &str) -> Result<CatalogEntry> {
    match name {
        "PSL_2(9).2" | "M_10" | "PSL_2(9).(C_2xC_2)" => {
            let f = Field::new(3, 2)?;
            let action = Action::new(3, 2, 2, ActionTag::ProjectiveLine)?;
            let socle = permutations(&action, &sl_generators(&f, 2))?;
            let w = f.primitive_element();
            let diag = Matrix::diagonal(&[w, 1]);
            let (extra, order, index, provenance) = match name {
                "PSL_2(9).2" => (
                    vec![semilinear_frobenius(2, 1)],
                    720u32,
                    2,
                    "PSL_2(9) with the field automorphism, on the projective line over GF(9)",
                ),
                "M_10" => (
                    vec![MatrixGenerator::semilinear(diag, 1)],
                    720,
                    2,
                    "PSL_2(9) with z ↦ ωz³ (ω primitive), on the projective line over GF(9)",
                ),
                _ => (
                    vec![MatrixGenerator::linear(diag), semilinear_frobenius(2, 1)],
                    1440,
                    4,
                    "PSL_2(9) with diagonal and field automorphisms, on the projective line over GF(9)",
                ),
            };
            let built = extend(&action, socle, &extra)?;
            entry(name, built, BigUint::from(order), provenance, index)
        }
        "PSL_2(25).2" => {
            let f = Field::new(5, 2)?;
            let action = Action::new(5, 2, 2, ActionTag::ProjectiveLine)?;
            let socle = permutations(&action, &sl_generators(&f, 2))?;
            let built = extend(&action, socle, &[semilinear_frobenius(2, 1)])?;
            entry(
                name,
                built,
                order_psl(2, 25) * 2u32,
                "PSL_2(25) with the field automorphism, on the projective line over GF(25)",
                2,
            )
        }
        "SL_3(3)" | "SL_3(5)" => {
            let p = if name == "SL_3(3)" { 3 } else { 5 };
            let f = Field::new(p, 1)?;
            let action = Action::new(p, 1, 3, ActionTag::ProjectivePlane)?;
            let gens = permutations(&action, &sl_generators(&f, 3))?;
            entry(
                name,
                simple(&action, gens),
                order_sl(3, p),
                &format!("SL_3({p}) on the points of the projective plane over GF({p})"),
                1,
            )
        }
        "SL_3(3).2" => {
            let f = Field::new(3, 1)?;
            let action = Action::new(3, 1, 3, ActionTag::PointsAndLines)?;
            let socle = permutations(&action, &sl_generators(&f, 3))?;
            let polarity = MatrixGenerator {
                matrix: Matrix::identity(3),
                frobenius: 0,
                polarity: true,
            };
            let built = extend(&action, socle, &[polarity])?;
            entry(
                name,
                built,
                order_sl(3, 3) * 2u32,
                "SL_3(3) with the inverse-transpose polarity, on points and lines of the projective plane over GF(3)",
                2,
            )
        }
        "PSL_3(4)" | "PSL_3(4).2_2" | "PSL_3(4).2_3" | "PSL_3(4).3" => {
            let f = Field::new(2, 2)?;
            let tag = if name == "PSL_3(4).2_3" {
                ActionTag::PointsAndLines
            } else {
                ActionTag::ProjectivePlane
            };
            let action = Action::new(2, 2, 3, tag)?;
            let socle = permutations(&action, &sl_generators(&f, 3))?;
            let base = order_psl(3, 4);
            match name {
                "PSL_3(4)" => entry(
                    name,
                    simple(&action, socle),
                    base,
                    "PSL_3(4) on the points of the projective plane over GF(4)",
                    1,
                ),
                "PSL_3(4).2_2" => entry(
                    name,
                    extend(&action, socle, &[semilinear_frobenius(3, 1)])?,
                    base * 2u32,
                    "PSL_3(4) with the field automorphism, on the points of the projective plane over GF(4)",
                    2,
                ),
                "PSL_3(4).2_3" => {
                    let polarity = MatrixGenerator {
                        matrix: Matrix::identity(3),
                        frobenius: 0,
                        polarity: true,
                    };
                    entry(
                        name,
                        extend(&action, socle, &[polarity])?,
                        base * 2u32,
                        "PSL_3(4) with the inverse-transpose polarity, on points and lines of the projective plane over GF(4)",
                        2,
                    )
                }
                _ => {
                    let w = f.primitive_element();
                    entry(
                        name,
                        extend(&action, socle, &[MatrixGenerator::linear(Matrix::diagonal(&[w, 1, 1]))])?,
                        base * 3u32,
                        "PGL_3(4) on the points of the projective plane over GF(4)",
                        3,
                    )
                }
            }
        }
        "SU_3(3)" | "SU_3(3).2" | "SU_3(4)" | "SU_3(4).2" | "PSU_3(8)" => {
            let q0: u64 = match name {
                "SU_3(3)" | "SU_3(3).2" => 3,
                "SU_3(4)" | "SU_3(4).2" => 4,
                _ => 8,
            };
            let (p, k0) = prime_power(q0).expect("prime power");
            let action = Action::new(p, 2 * k0, 3, ActionTag::UnitaryIsotropicPoints)?;
            let target = order_psu(3, q0);
            let socle = grow(&action, unitary_transvections(&action)?, &target)?;
            let provenance = format!(
                "unitary transvections on the {} isotropic points of the hermitian form over GF({})",
                action.degree(),
                q0 * q0
            );
            if name.ends_with(".2") {
                // x ↦ x^q0 on coordinates preserves the form
                let built = extend(&action, socle, &[semilinear_frobenius(3, k0)])?;
                entry(
                    name,
                    built,
                    target * 2u32,
                    &format!("{provenance}, with the field automorphism"),
                    2,
                )
            } else {
                entry(name, simple(&action, socle), target, &provenance, 1)
            }
        }
        "SU_4(2)" | "SU_4(2).2" => {
            let f = Field::new(3, 1)?;
            let action = Action::new(3, 1, 4, ActionTag::ProjectiveSpace)?;
            let target = order_psp(4, 3);
            let socle = grow(&action, symplectic_transvections(&action), &target)?;
            let provenance = "PSp_4(3) via symplectic transvections on the 40 points of PG(3,3)";
            if name == "SU_4(2).2" {
                let m1 = f.neg(1);
                let similitude = MatrixGenerator::linear(Matrix::diagonal(&[1, 1, m1, m1]));
                let built = extend(&action, socle, &[similitude])?;
                entry(
                    name,
                    built,
                    target * 2u32,
                    &format!("{provenance}, with the similitude diag(1,1,-1,-1)"),
                    2,
                )
            } else {
                entry(name, simple(&action, socle), target, provenance, 1)
            }
        }
        "Sp_6(2)" => {
            let action = Action::new(2, 1, 6, ActionTag::ProjectiveSpace)?;
            let target = order_sp(6, 2);
            let gens = grow(&action, symplectic_transvections(&action), &target)?;
            entry(
                name,
                simple(&action, gens),
                target,
                "symplectic transvections on the 63 nonzero vectors of GF(2)^6",
                1,
            )
        }
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}

/// Every named construction plus the small pattern groups used by the tables.
pub fn default_entries() -> Result<Vec<CatalogEntry>> {
    let mut out = vec![
        alternating(5)?,
        symmetric(6)?,
        symmetric(7)?,
        symmetric(8)?,
        symmetric(9)?,
        alternating(9)?,
        psl2_family(13, true)?,
    ];
    for name in NAMED {
        out.push(named(name)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::certify;

    fn order_of(name: &str) -> u64 {
        let e = builtin_entry(name).unwrap().unwrap();
        certify(e).unwrap().group.order_u64().unwrap()
    }

    #[test]
    fn pattern_groups() {
        assert_eq!(order_of("S_6"), 720);
        assert_eq!(order_of("A_5"), 60);
        assert_eq!(order_of("A_6"), 360);
        assert_eq!(order_of("C_6"), 6);
        assert_eq!(order_of("D_10"), 10);
        assert_eq!(order_of("PSL_2(9)"), 360);
        assert_eq!(order_of("PGL_2(13)"), 2184);
        assert_eq!(order_of("PSL_2(8)"), 504);
        assert!(builtin_entry("X_3").is_none());
        assert!(builtin_entry("PSL_2(6)").unwrap().is_err());
    }

    #[test]
    fn projective_line_degree() {
        let e = builtin_entry("PSL_2(9)").unwrap().unwrap();
        assert_eq!(e.degree, 10);
        assert!(certify(e).unwrap().group.is_transitive());
    }

    #[test]
    fn small_named_groups_certify() {
        for (name, order, degree) in [
            ("M_10", 720u64, 10usize),
            ("PSL_2(9).2", 720, 10),
            ("PSL_2(9).(C_2xC_2)", 1440, 10),
            ("SL_3(3)", 5616, 13),
            ("SL_3(3).2", 11232, 26),
            ("SU_3(3)", 6048, 28),
            ("SU_4(2)", 25920, 40),
            ("SU_4(2).2", 51840, 40),
        ] {
            let e = builtin_entry(name).unwrap().unwrap();
            assert_eq!(e.degree, degree, "{name}");
            assert!(e.generators.len() <= 2, "{name}");
            let c = certify(e).unwrap();
            assert_eq!(c.group.order_u64(), Some(order), "{name}");
        }
    }

    #[test]
    fn m10_designates_psl29() {
        let c = certify(builtin_entry("M_10").unwrap().unwrap()).unwrap();
        assert_eq!(c.index2.unwrap().order_u64(), Some(360));
    }

    #[test]
    fn larger_named_groups_certify() {
        for (name, order, degree) in [
            ("PSL_2(25).2", 15600u64, 26usize),
            ("SL_3(5)", 372000, 31),
            ("PSL_3(4)", 20160, 21),
            ("PSL_3(4).2_2", 40320, 21),
            ("PSL_3(4).2_3", 40320, 42),
            ("PSL_3(4).3", 60480, 21),
            ("SU_3(3).2", 12096, 28),
            ("SU_3(4)", 62400, 65),
            ("SU_3(4).2", 124800, 65),
            ("PSU_3(8)", 5515776, 513),
            ("Sp_6(2)", 1451520, 63),
        ] {
            let e = builtin_entry(name).unwrap().unwrap();
            assert_eq!(e.degree, degree, "{name}");
            assert!(e.generators.len() <= 2, "{name}");
            let c = certify(e).unwrap();
            assert_eq!(c.group.order_u64(), Some(order), "{name}");
        }
    }
}
