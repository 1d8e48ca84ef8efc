//! Full-rank integer lattices, their quotient groups, and the passage between
//! lattices and linear codes over `F_p`.

mod matrix;
mod normal_form;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{is_prime, AbelianGroup, GroupElement};
use crate::codes::LinearCode;
use crate::error::{Error, Result};

pub use matrix::IntMatrix;
pub use normal_form::{
    determinant, hermite_normal_form, smith_normal_form, HermiteForm, SnfDecomposition,
};

/// A full-rank lattice in `Z^n`, spanned by the rows of a square generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct Lattice {
    gen: IntMatrix,
}

impl TryFrom<IntMatrix> for Lattice {
    type Error = Error;

    fn try_from(gen: IntMatrix) -> Result<Self> {
        Lattice::new(gen)
    }
}

impl From<Lattice> for IntMatrix {
    fn from(l: Lattice) -> IntMatrix {
        l.gen
    }
}

impl Lattice {
    pub fn new(gen: IntMatrix) -> Result<Self> {
        if !gen.is_square() {
            return Err(Error::InvalidMatrix(format!(
                "lattice generator must be square, got {}x{}",
                gen.rows(),
                gen.cols()
            )));
        }
        if determinant(&gen)?.is_zero() {
            return Err(Error::SingularLattice);
        }
        Ok(Self { gen })
    }

    /// `q Z^n`.
    pub fn scaled_identity(n: usize, q: u64) -> Result<Self> {
        let mut gen = IntMatrix::identity(n)?;
        for i in 0..n {
            gen[(i, i)] = BigInt::from(q);
        }
        Self::new(gen)
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.gen
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gen).expect("square generator")
    }

    /// `|det|`, the index of the lattice in `Z^n`.
    pub fn volume(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn hermite_form(&self) -> HermiteForm {
        hermite_normal_form(&self.gen)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim() && self.hermite_form().contains(x)
    }

    /// `Z^n / L` together with the images of the standard basis vectors.
    pub fn quotient_group(&self) -> Result<QuotientMap> {
        quotient_group(self)
    }
}

/// The natural map `Z^n -> Z^n / L`, described by the group and the images of
/// the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMap {
    pub group: AbelianGroup,
    pub images: Vec<GroupElement>,
}

impl QuotientMap {
    /// Image of an integer vector: `sum x_i s_i`.
    pub fn apply(&self, x: &[i64]) -> Result<GroupElement> {
        if x.len() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                found: x.len(),
            });
        }
        let mut acc = self.group.zero();
        for (&c, s) in x.iter().zip(&self.images) {
            if c != 0 {
                acc = self.group.add(&acc, &self.group.scale(c, s)?)?;
            }
        }
        Ok(acc)
    }
}

pub fn quotient_group(l: &Lattice) -> Result<QuotientMap> {
    let snf = smith_normal_form(l.generator());
    let n = l.dim();
    let diag = snf.diagonal();
    // descending invariant factors, ones dropped
    let kept: Vec<usize> = (0..n).rev().filter(|&i| !diag[i].is_one()).collect();
    let orders = kept
        .iter()
        .map(|&i| {
            diag[i].to_u64().ok_or_else(|| {
                Error::InvalidGroup(format!("invariant factor {} too large", diag[i]))
            })
        })
        .collect::<Result<Vec<u64>>>()?;
    let group = AbelianGroup::new(orders)?;
    // x is in L iff (x V)_i = 0 mod d_i, so e_j maps to row j of V
    let images = (0..n)
        .map(|j| {
            let coords: Vec<i64> = kept
                .iter()
                .map(|&i| {
                    snf.v[(j, i)]
                        .mod_floor(&diag[i])
                        .to_i64()
                        .expect("reduced below a u64 order")
                })
                .collect();
            group.element(&coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuotientMap { group, images })
}

/// The lattice `{x : x mod p in C}` with generator `[[I_k, A], [0, p I_{n-k}]]`.
pub fn lattice_from_code(c: &LinearCode) -> Result<Lattice> {
    let a = c.redundancy_block().ok_or_else(|| {
        Error::InvalidCode("generator is not in systematic form [I_k | A]".into())
    })?;
    let (n, k) = (c.n(), c.k());
    let mut gen = IntMatrix::zeros(n, n)?;
    for (i, row) in a.iter().enumerate() {
        gen[(i, i)] = BigInt::one();
        for (j, &x) in row.iter().enumerate() {
            gen[(i, k + j)] = BigInt::from(x);
        }
    }
    for i in k..n {
        gen[(i, i)] = BigInt::from(c.p());
    }
    Lattice::new(gen)
}

/// The code `L mod p`, for a lattice containing `p Z^n`.
pub fn extract_code(l: &Lattice, p: u64) -> Result<LinearCode> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = l.dim();
    let hnf = l.hermite_form();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::from(p);
        if !hnf.contains(&e) {
            return Err(Error::Precondition(format!(
                "{p} e_{} is not in the lattice, so it does not contain {p}Z^n",
                i + 1
            )));
        }
    }
    let pb = BigInt::from(p);
    let rows: Vec<Vec<u64>> = l
        .generator()
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("residue below p"))
                .collect()
        })
        .collect();
    LinearCode::from_spanning_rows(p, n, &rows)
}
