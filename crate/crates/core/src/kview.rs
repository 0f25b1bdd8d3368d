//! Twisted equivariant K-theory of a torus acting on itself by conjugation,
//! in its finite model after the Mackey decomposition: free abelian groups on
//! orbit sets, with induced maps built from finite pushforwards and pullbacks.
//!
//! Orientation is the standard one given by the ordered coordinate basis.
//! For odd rank difference the classical pull-back vanishes identically,
//! which is why `f^#` is assembled from the decomposition instead.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{coset_reps_of_inclusion, vec_add, IntMat, IntVec};
use crate::orbit::{CharElement, Combination, LocalInjectionMap, OrbitRef, OrbitSpace};
use crate::torus::{
    decompose, product_level, pullback_level, Level, MorphismDecomposition, TorusMorphism,
};

pub const ORIENTATION: &str =
    "standard orientation of each torus from its ordered coordinate basis";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// Degree congruent to the rank mod 2; the nonzero group.
    Even,
    Odd,
}

/// Element of `K^{tau+k}_T(T)` (or of an intermediate group over a quotient
/// `Lambda' / L`).
#[derive(Clone, PartialEq, Eq)]
pub struct TeKClass {
    space: OrbitSpace,
    coeffs: Combination,
    parity: Parity,
}

impl TeKClass {
    pub fn zero(space: &OrbitSpace, parity: Parity) -> Self {
        TeKClass {
            space: space.clone(),
            coeffs: Combination::new(),
            parity,
        }
    }

    pub fn basis(space: &OrbitSpace, weight: &[BigInt]) -> Result<Self> {
        Self::from_terms(space, Parity::Even, [(weight, BigInt::one())])
    }

    pub fn from_terms<'a, I>(space: &OrbitSpace, parity: Parity, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [BigInt], BigInt)>,
    {
        let mut coeffs = Combination::new();
        for (w, c) in terms {
            if w.len() != space.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "weight of length {} on a rank {} space",
                    w.len(),
                    space.rank()
                )));
            }
            coeffs.add_term(space.orbit_of(w), &c);
        }
        Self::from_combination(space, parity, coeffs)
    }

    fn from_combination(space: &OrbitSpace, parity: Parity, coeffs: Combination) -> Result<Self> {
        if parity == Parity::Odd && !coeffs.is_empty() {
            return Err(Error::ParityMismatch("nonzero class in odd degree".into()));
        }
        Ok(TeKClass {
            space: space.clone(),
            coeffs,
            parity,
        })
    }

    pub fn space(&self) -> &OrbitSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &Combination {
        &self.coeffs
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coefficient(&self, orbit: &OrbitRef) -> BigInt {
        self.coeffs.coefficient(orbit)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for TeKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TeKClass({:?}, {})", self.parity, self.coeffs)
    }
}

impl fmt::Display for TeKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs)
    }
}

fn require_space(x: &TeKClass, expected: &OrbitSpace) -> Result<()> {
    if x.space != *expected {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// The Mackey-decomposition isomorphism onto `char(T, tau)`.
pub fn md_iso(level: &Level, x: &TeKClass) -> Result<CharElement> {
    level.require_positive()?;
    if x.parity != Parity::Even {
        return Err(Error::ParityMismatch(
            "odd classes have no character".into(),
        ));
    }
    let space = OrbitSpace::of_level(level)?;
    require_space(x, &space)?;
    let pairs: Vec<(&[BigInt], BigInt)> = x
        .coeffs
        .iter()
        .map(|(o, c)| (o.coords(), c.clone()))
        .collect();
    CharElement::from_terms(&space, pairs)
}

pub fn md_iso_inverse(level: &Level, x: &CharElement) -> Result<TeKClass> {
    level.require_positive()?;
    let space = OrbitSpace::of_level(level)?;
    if *x.space() != space {
        return Err(Error::SpaceMismatch);
    }
    TeKClass::from_combination(&space, Parity::Even, x.terms().clone())
}

/// Pushforward along a map of finite orbit sets: fiber sums.
pub fn pushforward_finite<M>(map: M, target: &OrbitSpace, x: &TeKClass) -> TeKClass
where
    M: Fn(&OrbitRef) -> OrbitRef,
{
    let mut coeffs = Combination::new();
    for (o, c) in x.coeffs.iter() {
        coeffs.add_term(map(o), c);
    }
    TeKClass {
        space: target.clone(),
        coeffs,
        parity: x.parity,
    }
}

/// Pullback along `map: source -> x.space`: each source orbit takes the
/// coefficient of its image.
pub fn pullback_finite<M>(map: M, source: &OrbitSpace, x: &TeKClass) -> TeKClass
where
    M: Fn(&OrbitRef) -> OrbitRef,
{
    let mut coeffs = Combination::new();
    if !x.is_zero() {
        for o in source.orbits() {
            let c = x.coeffs.coefficient(&map(&o));
            coeffs.add_term(o, &c);
        }
    }
    TeKClass {
        space: source.clone(),
        coeffs,
        parity: x.parity,
    }
}

/// `q^#` for a finite covering: push along `F^T` into `Lambda' / F^T K Pi`,
/// then pull back along `r: Lambda' / K' Pi' -> Lambda' / F^T K Pi`.
/// `r` is a surjective group map, so each fiber is one lift plus `ker r`,
/// and `ker r` is the image of `Pi_T / F Pi_T'` under `F^T K`.
#[derive(Clone, Debug)]
pub struct CoveringSharp {
    source: OrbitSpace,
    intermediate: OrbitSpace,
    target: OrbitSpace,
    transpose: IntMat,
    kernel: Vec<IntVec>,
}

impl CoveringSharp {
    pub fn new(q: &TorusMorphism, level: &Level) -> Result<Self> {
        if !q.is_covering() {
            return Err(Error::NotCovering);
        }
        q.require_target(level)?;
        let source = OrbitSpace::of_level(level)?;
        let transpose = q.matrix().transpose();
        let ftk = &transpose * level.matrix();
        let intermediate = OrbitSpace::of_sublattice(&ftk)?;
        let target = OrbitSpace::of_level(&pullback_level(q, level)?)?;
        let reps = coset_reps_of_inclusion(q.matrix(), &IntMat::identity(q.target().rank))?;
        let kernel = reps.iter().map(|m| ftk.mul_vec(m)).collect();
        Ok(CoveringSharp {
            source,
            intermediate,
            target,
            transpose,
            kernel,
        })
    }

    pub fn target(&self) -> &OrbitSpace {
        &self.target
    }

    /// `r^{-1}` of one class of `Lambda' / F^T K Pi`.
    pub fn fiber(&self, class: &OrbitRef) -> Vec<OrbitRef> {
        self.kernel
            .iter()
            .map(|k| self.target.orbit_of(&vec_add(class.coords(), k)))
            .collect()
    }

    pub fn apply(&self, x: &TeKClass) -> Result<TeKClass> {
        require_space(x, &self.source)?;
        let pushed = pushforward_finite(
            |o| {
                self.intermediate
                    .orbit_of(&self.transpose.mul_vec(o.coords()))
            },
            &self.intermediate,
            x,
        );
        let mut coeffs = Combination::new();
        for (m, c) in pushed.coeffs.iter() {
            for t in self.fiber(m) {
                coeffs.add_term(t, c);
            }
        }
        Ok(TeKClass {
            space: self.target.clone(),
            coeffs,
            parity: x.parity,
        })
    }
}

pub fn q_sharp(q: &TorusMorphism, level: &Level, x: &TeKClass) -> Result<TeKClass> {
    CoveringSharp::new(q, level)?.apply(x)
}

/// `i1^#`: identify the product orbit set with a product of orbit sets, then
/// push forward along the first projection.
#[derive(Clone, Debug)]
pub struct ProductSharp {
    product: OrbitSpace,
    first: OrbitSpace,
    first_rank: usize,
}

impl ProductSharp {
    /// The identification holds by construction for a block-diagonal level;
    /// only the orbit counts are compared here. [`check_product_split`]
    /// verifies it by enumeration.
    pub fn new(first: &Level, second: &Level) -> Result<Self> {
        let product = OrbitSpace::of_level(&product_level(first, second))?;
        let s1 = OrbitSpace::of_level(first)?;
        let s2 = OrbitSpace::of_level(second)?;
        if product.size() != s1.size() * s2.size() {
            return Err(Error::SplitFailure(format!(
                "{} product orbits for {} x {} factor orbits",
                product.size(),
                s1.size(),
                s2.size()
            )));
        }
        Ok(ProductSharp {
            product,
            first: s1,
            first_rank: first.rank(),
        })
    }

    pub fn apply(&self, x: &TeKClass) -> Result<TeKClass> {
        require_space(x, &self.product)?;
        Ok(pushforward_finite(
            |o| self.first.orbit_of(&o.coords()[..self.first_rank]),
            &self.first,
            x,
        ))
    }
}

pub fn i1_sharp(first: &Level, second: &Level, x: &TeKClass) -> Result<TeKClass> {
    ProductSharp::new(first, second)?.apply(x)
}

/// Enumerates the product orbit set and checks that splitting a weight into
/// its blocks is a bijection onto the product of the factor orbit sets.
pub fn check_product_split(first: &Level, second: &Level) -> Result<()> {
    let product = OrbitSpace::of_level(&product_level(first, second))?;
    let s1 = OrbitSpace::of_level(first)?;
    let s2 = OrbitSpace::of_level(second)?;
    let k = first.rank();
    let mut seen = BTreeMap::new();
    for o in product.orbit_list() {
        let pair = (s1.orbit_of(&o.coords()[..k]), s2.orbit_of(&o.coords()[k..]));
        if let Some(prev) = seen.insert(pair, o.clone()) {
            return Err(Error::SplitFailure(format!(
                "{prev} and {o} have the same factors"
            )));
        }
    }
    if BigInt::from(seen.len()) != s1.size() * s2.size() {
        return Err(Error::SplitFailure(format!(
            "{} product orbits for {} x {} factor orbits",
            seen.len(),
            s1.size(),
            s2.size()
        )));
    }
    Ok(())
}

/// [`i1_sharp`] for a block-diagonal level given as one matrix.
pub fn i1_sharp_split(product: &Level, first_rank: usize, x: &TeKClass) -> Result<TeKClass> {
    let (first, second) = product.split(first_rank)?;
    i1_sharp(&first, &second, x)
}

/// `f^# = q^# ∘ i1^# ∘ (f·j)^#`, with every stage precomputed.
#[derive(Clone, Debug)]
pub struct SharpMap {
    fj: CoveringSharp,
    i1: ProductSharp,
    q: CoveringSharp,
}

impl SharpMap {
    pub fn new(f: &TorusMorphism, level: &Level) -> Result<Self> {
        Self::through(&decompose(f, level)?, level)
    }

    pub fn through(d: &MorphismDecomposition, level: &Level) -> Result<Self> {
        let (k1, k2) = &d.split_levels;
        Ok(SharpMap {
            fj: CoveringSharp::new(&d.fj, level)?,
            i1: ProductSharp::new(k1, k2)?,
            q: CoveringSharp::new(&d.q, k1)?,
        })
    }

    pub fn target(&self) -> &OrbitSpace {
        self.q.target()
    }

    pub fn apply(&self, x: &TeKClass) -> Result<TeKClass> {
        self.q.apply(&self.i1.apply(&self.fj.apply(x)?)?)
    }
}

pub fn f_sharp(f: &TorusMorphism, level: &Level, x: &TeKClass) -> Result<TeKClass> {
    SharpMap::new(f, level)?.apply(x)
}

/// [`f_sharp`] for a given decomposition.
pub fn f_sharp_through(d: &MorphismDecomposition, level: &Level, x: &TeKClass) -> Result<TeKClass> {
    SharpMap::through(d, level)?.apply(x)
}

/// One basis element checked around a commutative square.
#[derive(Clone, Debug)]
pub struct SquareRow<T> {
    pub orbit: OrbitRef,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Clone, Debug)]
pub struct SquareReport<T> {
    pub rows: Vec<SquareRow<T>>,
}

impl<T: PartialEq> SquareReport<T> {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &SquareRow<T>> {
        self.rows.iter().filter(|r| r.lhs != r.rhs)
    }
}

/// Checks `M.d. ∘ f^# = char(f) ∘ M.d.` on every basis class at `level`.
pub fn verify_k_naturality(f: &TorusMorphism, level: &Level) -> Result<SquareReport<CharElement>> {
    let pulled = pullback_level(f, level)?;
    let sharp = SharpMap::new(f, level)?;
    let direct = LocalInjectionMap::new(f, level)?;
    let space = OrbitSpace::of_level(level)?;
    let mut rows = Vec::new();
    for orbit in space.orbits() {
        let x = TeKClass::basis(&space, orbit.coords())?;
        let lhs = md_iso(&pulled, &sharp.apply(&x)?)?;
        let rhs = direct.apply(&md_iso(level, &x)?)?;
        rows.push(SquareRow { orbit, lhs, rhs });
    }
    Ok(SquareReport { rows })
}
