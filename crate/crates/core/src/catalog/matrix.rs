//! Matrix groups over finite fields and their permutation actions on points
//! of projective space and related geometries.
//!
//! Vectors are rows and matrices act on the right, so the permutation of a
//! product `A·B` is the composite "first `A`, then `B`", matching
//! [`Permutation::compose`](crate::perm::Permutation::compose).

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::{PermGroup, Permutation};

/// A square matrix over a field held elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Matrix {
    dim: usize,
    entries: Vec<u32>,
}

impl TryFrom<Vec<Vec<u32>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        Matrix::from_rows(&rows)
    }
}

impl From<Matrix> for Vec<Vec<u32>> {
    fn from(m: Matrix) -> Self {
        m.entries.chunks(m.dim).map(<[u32]>::to_vec).collect()
    }
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Precondition("matrix must be square and nonempty".into()));
        }
        Ok(Matrix {
            dim,
            entries: rows.concat(),
        })
    }

    pub fn diagonal(diag: &[u32]) -> Self {
        let mut m = Matrix::identity(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.entries[i * self.dim + j] = x;
    }

    /// Checks every entry is a field element.
    pub fn validate(&self, f: &Field) -> Result<()> {
        match self.entries.iter().find(|&&x| x >= f.order()) {
            Some(x) => Err(Error::Precondition(format!(
                "matrix entry {x} is not an element of GF({})",
                f.order()
            ))),
            None => Ok(()),
        }
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut out = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let idx = i * d + j;
                    out[idx] = f.add(out[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { dim: d, entries: out }
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut m = self.clone();
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.get(j, i));
            }
        }
        m
    }

    /// Applies `x ↦ x^(p^e)` to every entry.
    pub fn frobenius(&self, f: &Field, e: u32) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&x| f.frobenius(x, e)).collect(),
        }
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Matrix::identity(d);
        for col in 0..d {
            let pivot = (col..d).find(|&r| a.get(r, col) != 0).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..d {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let s = f.inv(a.get(col, col))?;
            for j in 0..d {
                a.set(col, j, f.mul(s, a.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..d {
                let factor = a.get(r, col);
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..d {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(factor, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self, f: &Field) -> u32 {
        let d = self.dim;
        let mut a = self.clone();
        let mut det = 1;
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| a.get(r, col) != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..d {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                }
                det = f.neg(det);
            }
            let p = a.get(col, col);
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("nonzero pivot");
            for r in col + 1..d {
                let factor = f.mul(a.get(r, col), pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..d {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(factor, a.get(col, j))));
                }
            }
        }
        det
    }

    /// The row vector `v·M`.
    pub fn apply(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(x, self.get(i, j)));
            }
        }
        out
    }
}

/// A semilinear map `v ↦ v^σ·M` with `σ = x ↦ x^(p^frobenius)`. With
/// `polarity` set it also exchanges points and lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGenerator {
    pub matrix: Matrix,
    #[serde(default)]
    pub frobenius: u32,
    #[serde(default)]
    pub polarity: bool,
}

impl MatrixGenerator {
    pub fn linear(matrix: Matrix) -> Self {
        MatrixGenerator {
            matrix,
            frobenius: 0,
            polarity: false,
        }
    }

    pub fn semilinear(matrix: Matrix, frobenius: u32) -> Self {
        MatrixGenerator {
            matrix,
            frobenius,
            polarity: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionTag {
    /// The `q + 1` points of PG(1, q).
    ProjectiveLine,
    /// The `q² + q + 1` points of PG(2, q).
    ProjectivePlane,
    /// All points of PG(d − 1, q).
    ProjectiveSpace,
    /// Points followed by lines of PG(2, q); generators may carry a polarity.
    PointsAndLines,
    /// Isotropic points of PG(d − 1, q0²) for the hermitian form
    /// `h(x, y) = Σ x_i·y_(d−1−i)^q0`.
    UnitaryIsotropicPoints,
    /// All nonzero vectors.
    RawPoints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupSpec {
    pub p: u64,
    pub k: u32,
    pub dimension: usize,
    pub generators: Vec<MatrixGenerator>,
    pub action: ActionTag,
}

/// The point set of an action together with a lookup index.
pub struct PointSet {
    pub points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    normalize: bool,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, f: &Field, v: &[u32]) -> Option<u32> {
        if self.normalize {
            self.index.get(&normalize(f, v)?).copied()
        } else {
            self.index.get(v).copied()
        }
    }
}

/// Scales `v` so its first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(f: &Field, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = f.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| f.mul(x, s)).collect())
}

fn all_vectors(q: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(d as u32);
    (0..total).map(move |mut n| {
        let mut v = vec![0u32; d];
        for slot in v.iter_mut().rev() {
            *slot = (n % q as u64) as u32;
            n /= q as u64;
        }
        v
    })
}

/// Normalized representatives of the points of PG(d − 1, q), in lexicographic order.
pub fn projective_points(f: &Field, d: usize) -> Vec<Vec<u32>> {
    all_vectors(f.order(), d)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

/// The square root `q0` of the field order, for hermitian forms.
pub fn unitary_subfield_order(f: &Field) -> Result<u32> {
    if !f.degree().is_multiple_of(2) {
        return Err(Error::DegenerateAction(format!(
            "unitary action needs a field of square order, got GF({})",
            f.order()
        )));
    }
    Ok(f.characteristic().pow(f.degree() / 2))
}

/// `h(x, y) = Σ x_i·y_(d−1−i)^q0`.
pub fn hermitian(f: &Field, x: &[u32], y: &[u32]) -> u32 {
    let d = x.len();
    let e = f.degree() / 2;
    (0..d).fold(0, |acc, i| f.add(acc, f.mul(x[i], f.frobenius(y[d - 1 - i], e))))
}

/// The standard alternating form `Σ_(i<n) x_i·y_(n+i) − x_(n+i)·y_i`.
pub fn symplectic(f: &Field, x: &[u32], y: &[u32]) -> u32 {
    let n = x.len() / 2;
    (0..n).fold(0, |acc, i| {
        let t = f.sub(f.mul(x[i], y[n + i]), f.mul(x[n + i], y[i]));
        f.add(acc, t)
    })
}

pub fn point_set(f: &Field, d: usize, action: ActionTag) -> Result<PointSet> {
    let (points, normalize) = match action {
        ActionTag::ProjectiveLine
        | ActionTag::ProjectivePlane
        | ActionTag::ProjectiveSpace
        | ActionTag::PointsAndLines => (projective_points(f, d), true),
        ActionTag::UnitaryIsotropicPoints => {
            unitary_subfield_order(f)?;
            let pts = projective_points(f, d)
                .into_iter()
                .filter(|v| hermitian(f, v, v) == 0)
                .collect();
            (pts, true)
        }
        ActionTag::RawPoints => (all_vectors(f.order(), d).skip(1).collect(), false),
    };
    let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
    Ok(PointSet {
        points,
        index,
        normalize,
    })
}

fn check_dimension(d: usize, tag: ActionTag) -> Result<()> {
    let ok = match tag {
        ActionTag::ProjectiveLine => d == 2,
        ActionTag::ProjectivePlane | ActionTag::PointsAndLines => d == 3,
        ActionTag::ProjectiveSpace | ActionTag::UnitaryIsotropicPoints => d >= 2,
        ActionTag::RawPoints => d >= 1,
    };
    if !ok {
        return Err(Error::DegenerateAction(format!(
            "action {tag:?} is incompatible with dimension {d}"
        )));
    }
    Ok(())
}

/// A field, a dimension and an action tag, with the point set precomputed.
pub struct Action {
    field: Field,
    dimension: usize,
    tag: ActionTag,
    points: PointSet,
}

impl Action {
    pub fn new(p: u64, k: u32, dimension: usize, tag: ActionTag) -> Result<Self> {
        check_dimension(dimension, tag)?;
        let field = Field::new(p, k)?;
        let points = point_set(&field, dimension, tag)?;
        let action = Action {
            field,
            dimension,
            tag,
            points,
        };
        if action.degree() > crate::perm::MAX_DEGREE {
            return Err(Error::DegreeTooLarge(action.degree()));
        }
        Ok(action)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn degree(&self) -> usize {
        match self.tag {
            ActionTag::PointsAndLines => 2 * self.points.len(),
            _ => self.points.len(),
        }
    }

    pub fn permutation(&self, g: &MatrixGenerator) -> Result<Permutation> {
        let f = &self.field;
        let m = &g.matrix;
        if m.dim() != self.dimension {
            return Err(Error::Precondition(format!(
                "generator of dimension {} in a dimension {} group",
                m.dim(),
                self.dimension
            )));
        }
        m.validate(f)?;
        if m.det(f) == 0 {
            return Err(Error::Singular);
        }
        let with_lines = self.tag == ActionTag::PointsAndLines;
        if g.polarity && !with_lines {
            return Err(Error::DegenerateAction(
                "a polarity needs the points-and-lines action".into(),
            ));
        }
        let n = self.points.len() as u32;
        let image_of = |v: &[u32], mat: &Matrix| -> Result<u32> {
            let w: Vec<u32> = v.iter().map(|&x| f.frobenius(x, g.frobenius)).collect();
            let w = mat.apply(f, &w);
            self.points.index_of(f, &w).ok_or_else(|| {
                Error::DegenerateAction(format!("generator does not preserve the point set (image {w:?})"))
            })
        };
        let mut images = Vec::with_capacity(self.degree());
        for v in &self.points.points {
            let j = image_of(v, m)?;
            images.push(if g.polarity { j + n } else { j });
        }
        if with_lines {
            // a line with dual coordinates l maps to l^σ·(M^-1)^T
            let lines_matrix = m.inverse(f)?.transpose();
            for l in &self.points.points {
                let j = image_of(l, &lines_matrix)?;
                images.push(if g.polarity { j } else { j + n });
            }
        }
        Permutation::from_images(images)
            .map_err(|e| Error::DegenerateAction(format!("generator does not act bijectively: {e}")))
    }
}

/// Permutations induced by the generators on the action's point set.
pub fn action_permutations(spec: &MatrixGroupSpec) -> Result<Vec<Permutation>> {
    if spec.generators.is_empty() {
        return Err(Error::Precondition("matrix group needs generators".into()));
    }
    let action = Action::new(spec.p, spec.k, spec.dimension, spec.action)?;
    spec.generators.iter().map(|g| action.permutation(g)).collect()
}

/// The permutation group induced by `spec` on its point set.
pub fn projective_action(spec: &MatrixGroupSpec) -> Result<PermGroup> {
    PermGroup::new(action_permutations(spec)?)
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `|GL_d(q)|`.
pub fn order_gl(d: u32, q: u64) -> BigUint {
    (0..d).fold(BigUint::one(), |acc, i| acc * (big(q).pow(d) - big(q).pow(i)))
}

/// `|SL_d(q)|`.
pub fn order_sl(d: u32, q: u64) -> BigUint {
    order_gl(d, q) / big(q - 1)
}

/// `|PSL_d(q)| = |SL_d(q)| / gcd(d, q − 1)`.
pub fn order_psl(d: u32, q: u64) -> BigUint {
    order_sl(d, q) / big((d as u64).gcd(&(q - 1)))
}

/// `|PGL_d(q)| = |SL_d(q)|`.
pub fn order_pgl(d: u32, q: u64) -> BigUint {
    order_sl(d, q)
}

/// `|SU_d(q0)| = q0^(d(d−1)/2)·Π_(i=2..d)(q0^i − (−1)^i)`.
pub fn order_su(d: u32, q0: u64) -> BigUint {
    let mut acc = big(q0).pow(d * (d - 1) / 2);
    for i in 2..=d {
        let qi = big(q0).pow(i);
        acc *= if i % 2 == 0 { qi - 1u32 } else { qi + 1u32 };
    }
    acc
}

/// `|PSU_d(q0)| = |SU_d(q0)| / gcd(d, q0 + 1)`.
pub fn order_psu(d: u32, q0: u64) -> BigUint {
    order_su(d, q0) / big((d as u64).gcd(&(q0 + 1)))
}

/// `|Sp_2n(q)| = q^(n²)·Π_(i=1..n)(q^(2i) − 1)`.
pub fn order_sp(two_n: u32, q: u64) -> BigUint {
    let n = two_n / 2;
    let mut acc = big(q).pow(n * n);
    for i in 1..=n {
        acc *= big(q).pow(2 * i) - 1u32;
    }
    acc
}

/// `|PSp_2n(q)| = |Sp_2n(q)| / gcd(2, q − 1)`.
pub fn order_psp(two_n: u32, q: u64) -> BigUint {
    order_sp(two_n, q) / big(2u64.gcd(&(q - 1)))
}
