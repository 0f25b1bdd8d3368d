//! Tori, levels and morphisms, and the canonical factorisation of a local
//! injection as covering, inclusion into a first factor, covering.
//!
//! A torus of rank `n` has `Pi = Z^n` and weight lattice `Lambda = Z^n` with
//! the standard pairing. A level is the integer matrix `K` of
//! `kappa: Pi -> Lambda`; it is positive when `-K` is positive definite.
//! A morphism `f: T' -> T` is stored through its tangent matrix `F`
//! (`rank T` rows, `rank T'` columns); `F^T` acts on weights.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{kernel_saturated, preimage_lattice, IntMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Torus {
    pub rank: usize,
}

impl Torus {
    pub fn new(rank: usize) -> Self {
        Torus { rank }
    }
}

/// `true` iff `-K` is positive definite, decided by leading principal minors.
pub fn is_positive(k: &IntMat) -> Result<bool> {
    if !k.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let neg = -k;
    Ok((1..=k.rows()).all(|i| neg.submatrix(0..i, 0..i).det().is_positive()))
}

/// The `kappa` matrix of a central extension of `LT`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Level {
    matrix: IntMat,
}

impl Level {
    /// Accepts any symmetric matrix; positivity is checked where required.
    pub fn new(matrix: IntMat) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Level { matrix })
    }

    /// A level that is additionally required to be positive.
    pub fn positive(matrix: IntMat) -> Result<Self> {
        let level = Level::new(matrix)?;
        level.require_positive()?;
        Ok(level)
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Level::new(IntMat::from_rows(rows))
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
        Level::new(IntMat::diagonal(&big))
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn torus(&self) -> Torus {
        Torus::new(self.rank())
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn is_positive(&self) -> bool {
        is_positive(&self.matrix).unwrap_or(false)
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositive)
        }
    }

    /// Whether `K = diag(K1, K2)` with `K1` of size `first`.
    pub fn is_block_diagonal(&self, first: usize) -> bool {
        let n = self.rank();
        first <= n && (0..first).all(|i| (first..n).all(|j| self.matrix.get(i, j).is_zero()))
    }

    /// Splits a block-diagonal level into its two factors.
    pub fn split(&self, first: usize) -> Result<(Level, Level)> {
        let n = self.rank();
        if !self.is_block_diagonal(first) {
            return Err(Error::NotBlockDiagonal {
                first,
                second: n.saturating_sub(first),
            });
        }
        Ok((
            Level::new(self.matrix.submatrix(0..first, 0..first))?,
            Level::new(self.matrix.submatrix(first..n, first..n))?,
        ))
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level({})", self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    FiniteCovering,
    ProductInclusionFirstFactor,
    LocalInjection,
    General,
}

impl MorphismKind {
    pub fn name(self) -> &'static str {
        match self {
            MorphismKind::FiniteCovering => "finite_covering",
            MorphismKind::ProductInclusionFirstFactor => "product_inclusion_first_factor",
            MorphismKind::LocalInjection => "local_injection",
            MorphismKind::General => "general",
        }
    }

    /// Whether a morphism of kind `self` may be declared as `declared`.
    /// Coverings and first-factor inclusions are local injections too.
    pub fn satisfies(self, declared: MorphismKind) -> bool {
        self == declared
            || declared == MorphismKind::General
            || (declared == MorphismKind::LocalInjection && self != MorphismKind::General)
    }
}

/// A torus homomorphism `source -> target` given by its tangent matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusMorphism {
    source: Torus,
    target: Torus,
    matrix: IntMat,
    kind: MorphismKind,
}

impl TorusMorphism {
    pub fn new(matrix: IntMat) -> Self {
        let kind = classify(&matrix);
        TorusMorphism {
            source: Torus::new(matrix.cols()),
            target: Torus::new(matrix.rows()),
            matrix,
            kind,
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        TorusMorphism::new(IntMat::from_rows(rows))
    }

    pub fn identity(rank: usize) -> Self {
        TorusMorphism::new(IntMat::identity(rank))
    }

    /// Inclusion `T1 -> T1 x T2` into the first factor.
    pub fn first_factor_inclusion(first: usize, second: usize) -> Self {
        TorusMorphism::new(
            IntMat::identity(first)
                .vstack(&IntMat::zeros(second, first))
                .expect("column counts agree"),
        )
    }

    pub fn source(&self) -> Torus {
        self.source
    }

    pub fn target(&self) -> Torus {
        self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn is_local_injection(&self) -> bool {
        self.kind != MorphismKind::General
    }

    pub fn is_covering(&self) -> bool {
        self.kind == MorphismKind::FiniteCovering
    }

    /// `|det F|` for a covering.
    pub fn degree(&self) -> Result<BigInt> {
        if !self.is_covering() {
            return Err(Error::NotCovering);
        }
        Ok(self.matrix.det().abs())
    }

    /// `self ∘ inner` (first `inner`, then `self`).
    pub fn compose(&self, inner: &TorusMorphism) -> Result<TorusMorphism> {
        if inner.target != self.source {
            return Err(Error::DimensionMismatch(
                "morphisms are not composable".into(),
            ));
        }
        Ok(TorusMorphism::new(&self.matrix * &inner.matrix))
    }

    pub(crate) fn require_local_injection(&self) -> Result<()> {
        if self.is_local_injection() {
            Ok(())
        } else {
            Err(Error::NotLocalInjection)
        }
    }

    pub(crate) fn require_target(&self, level: &Level) -> Result<()> {
        if self.target.rank != level.rank() {
            return Err(Error::DimensionMismatch(format!(
                "morphism target has rank {}, level has rank {}",
                self.target.rank,
                level.rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for TorusMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusMorphism({}, {})", self.matrix, self.kind.name())
    }
}

fn classify(f: &IntMat) -> MorphismKind {
    let (n, k) = (f.rows(), f.cols());
    if n == k && !f.det().is_zero() {
        return MorphismKind::FiniteCovering;
    }
    if k < n && f.submatrix(0..k, 0..k) == IntMat::identity(k) && f.submatrix(k..n, 0..k).is_zero()
    {
        return MorphismKind::ProductInclusionFirstFactor;
    }
    if f.rank() == k {
        MorphismKind::LocalInjection
    } else {
        MorphismKind::General
    }
}

/// `K' = F^T K F`.
pub fn pullback_level(f: &TorusMorphism, level: &Level) -> Result<Level> {
    f.require_target(level)?;
    let fm = f.matrix();
    let k = &(&fm.transpose() * level.matrix()) * fm;
    let pulled = Level::new(k)?;
    pulled.require_positive()?;
    Ok(pulled)
}

/// `diag(K1, K2)` on `T1 x T2`.
pub fn product_level(first: &Level, second: &Level) -> Level {
    Level {
        matrix: first.matrix.block_diag(&second.matrix),
    }
}

/// Basis of `ker(F^T K) ∩ Z^n`, the lattice of the orthogonal completion torus.
pub fn orthogonal_complement_lattice(f: &TorusMorphism, level: &Level) -> Result<IntMat> {
    f.require_target(level)?;
    f.require_local_injection()?;
    Ok(kernel_saturated(
        &(&f.matrix().transpose() * level.matrix()),
    ))
}

/// `f = fj ∘ i1 ∘ q` with `q` a covering onto `T'/ker f`, `i1` the inclusion
/// into the first factor of `T'/ker f x (T'/ker f)^perp`, and `fj` a covering
/// of `T`.
#[derive(Clone, Debug)]
pub struct MorphismDecomposition {
    pub q: TorusMorphism,
    pub i1: TorusMorphism,
    pub fj: TorusMorphism,
    /// Columns span the orthogonal completion lattice inside `Pi_T`.
    pub perp_basis: IntMat,
    pub perp_rank: usize,
    /// `(K1, K2)` with `fj^T K fj = diag(K1, K2)`.
    pub split_levels: (Level, Level),
    /// Basis of the enlarged lattice `F^{-1}(Pi_T)`, scaled by `lattice_denom`.
    pub image_lattice_basis: IntMat,
    pub lattice_denom: BigInt,
}

impl MorphismDecomposition {
    pub fn composite(&self) -> IntMat {
        &(&self.fj.matrix * &self.i1.matrix) * &self.q.matrix
    }
}

pub fn decompose(f: &TorusMorphism, level: &Level) -> Result<MorphismDecomposition> {
    decompose_inner(f, level, None)
}

/// Same as [`decompose`] but with the perp basis replaced by `perp * change`
/// for a unimodular `change`. Results of the induced maps must not depend on it.
pub fn decompose_with_perp_change(
    f: &TorusMorphism,
    level: &Level,
    change: &IntMat,
) -> Result<MorphismDecomposition> {
    decompose_inner(f, level, Some(change))
}

fn decompose_inner(
    f: &TorusMorphism,
    level: &Level,
    perp_change: Option<&IntMat>,
) -> Result<MorphismDecomposition> {
    f.require_target(level)?;
    f.require_local_injection()?;
    level.require_positive()?;
    pullback_level(f, level)?;

    let fm = f.matrix();
    let k = f.source().rank;
    let pre = preimage_lattice(fm)?;
    // dq in the basis (1/denom) N of the enlarged lattice: denom * N^{-1}.
    let q_matrix = pre
        .basis
        .solve_integral(&IntMat::identity(k).scale(&pre.denom))
        .ok_or_else(|| Error::Invalid("preimage lattice does not contain Z^k".into()))?;
    let scaled = fm * &pre.basis;
    let image_cols: Vec<BigInt> = scaled
        .to_rows()
        .into_iter()
        .flatten()
        .map(|x| {
            let (q, r) = num_integer::Integer::div_rem(&x, &pre.denom);
            debug_assert!(r.is_zero());
            q
        })
        .collect();
    let image = IntMat::new(fm.rows(), k, image_cols)?;

    let mut perp = kernel_saturated(&(&image.transpose() * level.matrix()));
    if let Some(change) = perp_change {
        if !change.is_square() || change.rows() != perp.cols() || !change.is_unimodular() {
            return Err(Error::NotUnimodular("perp change of basis".into()));
        }
        perp = &perp * change;
    }
    let perp_rank = perp.cols();
    let fj_matrix = image.hstack(&perp)?;
    let fj = TorusMorphism::new(fj_matrix);
    if !fj.is_covering() {
        return Err(Error::Invalid("f * j is not a finite covering".into()));
    }
    let pulled = &(&fj.matrix.transpose() * level.matrix()) * &fj.matrix;
    let pulled = Level::new(pulled)?;
    let split_levels = pulled.split(k)?;

    Ok(MorphismDecomposition {
        q: TorusMorphism::new(q_matrix),
        i1: TorusMorphism::first_factor_inclusion(k, perp_rank),
        fj,
        perp_basis: perp,
        perp_rank,
        split_levels,
        image_lattice_basis: pre.basis,
        lattice_denom: pre.denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn lvl(rows: &[&[i64]]) -> Level {
        Level::from_rows(rows).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let tau = Level::diagonal(&[-1, -1]).unwrap();
        let g = TorusMorphism::from_rows(&[[1, 1], [1, -1]]);
        assert_eq!(
            pullback_level(&g, &tau).unwrap(),
            Level::diagonal(&[-2, -2]).unwrap()
        );
        let h = TorusMorphism::from_rows(&[[0], [2]]);
        assert_eq!(
            pullback_level(&h, &tau).unwrap(),
            Level::diagonal(&[-4]).unwrap()
        );
        assert_eq!(
            pullback_level(&TorusMorphism::identity(2), &tau).unwrap(),
            tau
        );
        let degenerate = TorusMorphism::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(
            pullback_level(&degenerate, &tau).unwrap_err(),
            Error::NotPositive
        );
    }

    #[test]
    fn product_level_examples() {
        let a = Level::diagonal(&[-3]).unwrap();
        let b = Level::diagonal(&[-3, -3]).unwrap();
        assert_eq!(
            product_level(&a, &b),
            Level::diagonal(&[-3, -3, -3]).unwrap()
        );
        let empty = Level::new(IntMat::zeros(0, 0)).unwrap();
        assert_eq!(product_level(&a, &empty), a);
        let i1 = TorusMorphism::first_factor_inclusion(1, 2);
        assert_eq!(pullback_level(&i1, &product_level(&a, &b)).unwrap(), a);
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive(Level::diagonal(&[-1, -1]).unwrap().matrix()).unwrap());
        assert!(!is_positive(&IntMat::from_rows(&[[1]])).unwrap());
        assert!(!is_positive(&IntMat::from_rows(&[[-2, 3], [3, -2]])).unwrap());
        assert_eq!(
            is_positive(&IntMat::from_rows(&[[-2, 1], [0, -2]])).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn kind_classification() {
        assert_eq!(
            TorusMorphism::identity(2).kind(),
            MorphismKind::FiniteCovering
        );
        assert_eq!(
            TorusMorphism::first_factor_inclusion(1, 2).kind(),
            MorphismKind::ProductInclusionFirstFactor
        );
        assert_eq!(
            TorusMorphism::from_rows(&[[1], [-1]]).kind(),
            MorphismKind::LocalInjection
        );
        assert_eq!(
            TorusMorphism::from_rows(&[[1, 2], [2, 4]]).kind(),
            MorphismKind::General
        );
    }

    #[test]
    fn orthogonal_complement_examples() {
        let f = TorusMorphism::from_rows(&[[1], [-1]]);
        let perp = orthogonal_complement_lattice(&f, &lvl(&[&[-2, 0], &[0, -2]])).unwrap();
        assert_eq!(perp, IntMat::from_rows(&[[1], [1]]));
        let perp =
            orthogonal_complement_lattice(&TorusMorphism::identity(2), &lvl(&[&[-2, 0], &[0, -2]]))
                .unwrap();
        assert_eq!(perp.cols(), 0);
        let f = TorusMorphism::from_rows(&[[1], [0]]);
        let perp = orthogonal_complement_lattice(&f, &Level::diagonal(&[-1, -1]).unwrap()).unwrap();
        assert_eq!(perp, IntMat::from_rows(&[[0], [1]]));
    }

    #[test]
    fn decompose_injective_example() {
        let f = TorusMorphism::from_rows(&[[1], [-1]]);
        let tau = Level::diagonal(&[-2, -2]).unwrap();
        let d = decompose(&f, &tau).unwrap();
        assert_eq!(d.q.matrix(), &IntMat::identity(1));
        assert_eq!(d.perp_basis, IntMat::from_rows(&[[1], [1]]));
        assert_eq!(d.fj.matrix(), &IntMat::from_rows(&[[1, 1], [-1, 1]]));
        assert_eq!(d.fj.degree().unwrap(), BigInt::from(2));
        assert_eq!(d.composite(), *f.matrix());
        assert_eq!(d.split_levels.0, Level::diagonal(&[-4]).unwrap());
        assert_eq!(d.split_levels.1, Level::diagonal(&[-4]).unwrap());
    }

    #[test]
    fn decompose_identity() {
        let tau = Level::diagonal(&[-3, -5]).unwrap();
        let d = decompose(&TorusMorphism::identity(2), &tau).unwrap();
        assert_eq!(d.q.matrix(), &IntMat::identity(2));
        assert_eq!(d.i1.matrix(), &IntMat::identity(2));
        assert_eq!(d.fj.matrix(), &IntMat::identity(2));
        assert_eq!(d.perp_rank, 0);
    }

    #[test]
    fn decompose_non_injective_example() {
        let h = TorusMorphism::from_rows(&[[0], [2]]);
        let tau = Level::diagonal(&[-1, -1]).unwrap();
        let d = decompose(&h, &tau).unwrap();
        assert_eq!(d.q.degree().unwrap(), BigInt::from(2));
        assert_eq!(d.lattice_denom, BigInt::from(2));
        assert_eq!(d.perp_basis.col(0), int_vec(&[1, 0]));
        assert_eq!(d.fj.matrix(), &IntMat::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(d.composite(), *h.matrix());
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let tau = Level::diagonal(&[-1, -1]).unwrap();
        let general = TorusMorphism::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(
            decompose(&general, &tau).unwrap_err(),
            Error::NotLocalInjection
        );
        let bad = Level::diagonal(&[1, -1]).unwrap();
        assert_eq!(
            decompose(&TorusMorphism::identity(2), &bad).unwrap_err(),
            Error::NotPositive
        );
    }
}
