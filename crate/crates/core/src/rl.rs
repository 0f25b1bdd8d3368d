//! Positive-energy representations of loop groups of tori, recorded by their
//! lowest-weight orbits, with the induced maps `q^!`, `i1^!`, `f^!` and the
//! FHT isomorphism.
//!
//! No plain pull-back along `i1` is offered: it is never finitely reducible.
//! `i1^!` returns the irreducible content of the intertwiner space instead.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::kview::{md_iso, md_iso_inverse, SharpMap, SquareReport, SquareRow, TeKClass};
use crate::lattice::{coset_reps_of_inclusion, vec_add, IntMat, IntVec};
use crate::orbit::{CharElement, Combination, LocalInjectionMap, OrbitSpace};
use crate::torus::{
    decompose, product_level, pullback_level, Level, MorphismDecomposition, TorusMorphism,
};

/// Element of `R^tau(LT)`; irreducibles `V_[lambda]` are single terms.
#[derive(Clone, PartialEq, Eq)]
pub struct PosEnergyRep {
    level: Level,
    space: OrbitSpace,
    terms: Combination,
}

impl PosEnergyRep {
    pub fn zero(level: &Level) -> Result<Self> {
        Ok(PosEnergyRep {
            level: level.clone(),
            space: OrbitSpace::of_level(level)?,
            terms: Combination::new(),
        })
    }

    pub fn irreducible(level: &Level, weight: &[BigInt]) -> Result<Self> {
        Self::from_terms(level, [(weight, BigInt::one())])
    }

    pub fn from_terms<'a, I>(level: &Level, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [BigInt], BigInt)>,
    {
        let mut v = Self::zero(level)?;
        for (w, c) in terms {
            if w.len() != level.rank() {
                return Err(Error::DimensionMismatch("weight length".into()));
            }
            v.terms.add_term(v.space.orbit_of(w), &c);
        }
        Ok(v)
    }

    fn with_terms(level: &Level, terms: Combination) -> Result<Self> {
        let mut v = Self::zero(level)?;
        v.terms = terms;
        Ok(v)
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn space(&self) -> &OrbitSpace {
        &self.space
    }

    pub fn terms(&self) -> &Combination {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PosEnergyRep) -> Result<PosEnergyRep> {
        if self.level != other.level {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add(&other.terms);
        Self::with_terms(&self.level, terms)
    }

    fn require_level(&self, level: &Level) -> Result<()> {
        if self.level != *level {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

impl fmt::Debug for PosEnergyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosEnergyRep({})", self.terms)
    }
}

impl fmt::Display for PosEnergyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

/// Lowest-weight isomorphism `V_[lambda] -> [lambda]`.
pub fn lw(v: &PosEnergyRep) -> CharElement {
    let pairs: Vec<(&[BigInt], BigInt)> = v
        .terms
        .iter()
        .map(|(o, c)| (o.coords(), c.clone()))
        .collect();
    CharElement::from_terms(&v.space, pairs).expect("same orbit space")
}

pub fn lw_inverse(level: &Level, x: &CharElement) -> Result<PosEnergyRep> {
    let v = PosEnergyRep::zero(level)?;
    if *x.space() != v.space {
        return Err(Error::SpaceMismatch);
    }
    PosEnergyRep::with_terms(level, x.terms().clone())
}

pub fn q_bang(q: &TorusMorphism, level: &Level, v: &PosEnergyRep) -> Result<PosEnergyRep> {
    CoveringBang::new(q, level)?.apply(v)
}

/// `q^!` for a finite covering: restriction along `q`, which sends
/// `V_[lambda]` to the sum of `V_[F^T (lambda + K m)]` over `m` in
/// `Pi_T / F Pi_T'`.
#[derive(Clone, Debug)]
pub struct CoveringBang {
    level: Level,
    pulled: Level,
    target: OrbitSpace,
    transpose: IntMat,
    shifts: Vec<IntVec>,
}

impl CoveringBang {
    pub fn new(q: &TorusMorphism, level: &Level) -> Result<Self> {
        if !q.is_covering() {
            return Err(Error::NotCovering);
        }
        q.require_target(level)?;
        let pulled = pullback_level(q, level)?;
        let ms = coset_reps_of_inclusion(q.matrix(), &IntMat::identity(q.target().rank))?;
        Ok(CoveringBang {
            level: level.clone(),
            target: OrbitSpace::of_level(&pulled)?,
            pulled,
            transpose: q.matrix().transpose(),
            shifts: ms.iter().map(|m| level.matrix().mul_vec(m)).collect(),
        })
    }

    pub fn apply(&self, v: &PosEnergyRep) -> Result<PosEnergyRep> {
        v.require_level(&self.level)?;
        let mut terms = Combination::new();
        for (o, c) in v.terms.iter() {
            for s in &self.shifts {
                let w = self.transpose.mul_vec(&vec_add(o.coords(), s));
                terms.add_term(self.target.orbit_of(&w), c);
            }
        }
        PosEnergyRep::with_terms(&self.pulled, terms)
    }
}

/// `i1^! V_[lambda] = V_[lambda_1]` for a block-diagonal level.
pub fn i1_bang(first: &Level, second: &Level, v: &PosEnergyRep) -> Result<PosEnergyRep> {
    v.require_level(&product_level(first, second))?;
    let target = OrbitSpace::of_level(first)?;
    let k = first.rank();
    let mut terms = Combination::new();
    for (o, c) in v.terms.iter() {
        terms.add_term(target.orbit_of(&o.coords()[..k]), c);
    }
    PosEnergyRep::with_terms(first, terms)
}

/// `f^! = q^! ∘ i1^! ∘ (f·j)^!`, with both coverings precomputed.
#[derive(Clone, Debug)]
pub struct BangMap {
    fj: CoveringBang,
    split: (Level, Level),
    q: CoveringBang,
}

impl BangMap {
    pub fn new(f: &TorusMorphism, level: &Level) -> Result<Self> {
        Self::through(&decompose(f, level)?, level)
    }

    pub fn through(d: &MorphismDecomposition, level: &Level) -> Result<Self> {
        Ok(BangMap {
            fj: CoveringBang::new(&d.fj, level)?,
            split: d.split_levels.clone(),
            q: CoveringBang::new(&d.q, &d.split_levels.0)?,
        })
    }

    pub fn apply(&self, v: &PosEnergyRep) -> Result<PosEnergyRep> {
        let (k1, k2) = &self.split;
        self.q.apply(&i1_bang(k1, k2, &self.fj.apply(v)?)?)
    }
}

pub fn f_bang(f: &TorusMorphism, level: &Level, v: &PosEnergyRep) -> Result<PosEnergyRep> {
    BangMap::new(f, level)?.apply(v)
}

/// [`f_bang`] for a given decomposition.
pub fn f_bang_through(
    d: &MorphismDecomposition,
    level: &Level,
    v: &PosEnergyRep,
) -> Result<PosEnergyRep> {
    BangMap::through(d, level)?.apply(v)
}

/// FHT isomorphism `R^tau(LT) -> K^{tau+dim T}_T(T)`, as `M.d.^{-1} ∘ l.w.`.
pub fn fht(v: &PosEnergyRep) -> Result<TeKClass> {
    md_iso_inverse(&v.level, &lw(v))
}

/// Checks `l.w. ∘ f^! = char(f) ∘ l.w.` on every irreducible at `level`.
pub fn verify_rl_naturality(f: &TorusMorphism, level: &Level) -> Result<SquareReport<CharElement>> {
    let bang = BangMap::new(f, level)?;
    let direct = LocalInjectionMap::new(f, level)?;
    let space = OrbitSpace::of_level(level)?;
    let mut rows = Vec::new();
    for orbit in space.orbits() {
        let v = PosEnergyRep::irreducible(level, orbit.coords())?;
        let lhs = lw(&bang.apply(&v)?);
        let rhs = direct.apply(&lw(&v))?;
        rows.push(SquareRow { orbit, lhs, rhs });
    }
    Ok(SquareReport { rows })
}

/// Checks `FHT ∘ f^! = f^# ∘ FHT` on every irreducible at `level`.
pub fn verify_fht_naturality(f: &TorusMorphism, level: &Level) -> Result<SquareReport<TeKClass>> {
    let d = decompose(f, level)?;
    let bang = BangMap::through(&d, level)?;
    let sharp = SharpMap::through(&d, level)?;
    let space = OrbitSpace::of_level(level)?;
    let mut rows = Vec::new();
    for orbit in space.orbits() {
        let v = PosEnergyRep::irreducible(level, orbit.coords())?;
        let lhs = fht(&bang.apply(&v)?)?;
        let rhs = sharp.apply(&fht(&v)?)?;
        rows.push(SquareRow { orbit, lhs, rhs });
    }
    Ok(SquareReport { rows })
}

/// `M.d. ∘ FHT = l.w.` on every irreducible.
pub fn fht_triangle_commutes(level: &Level) -> Result<bool> {
    let space = OrbitSpace::of_level(level)?;
    for orbit in space.orbits() {
        let v = PosEnergyRep::irreducible(level, orbit.coords())?;
        if md_iso(level, &fht(&v)?)? != lw(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}
