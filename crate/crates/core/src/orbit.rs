//! Orbit spaces `Lambda / kappa(Pi)` and the character module `char(T, tau)`,
//! the free abelian group on them, together with the induced map `char(f)`
//! for a local injection `f`.
//!
//! `char(f)` is computed directly from its definition: the image of the orbit
//! `lambda + K Z^n` under `F^T` is `F^T lambda + L` with `L = F^T K Z^n`, and
//! it splits into the `[L : K' Z^k]` orbits of the pulled-back level `K'`.
//! The first-factor and covering formulas are provided separately so the
//! factorisation through [`crate::torus::decompose`] can be checked against it.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    coset_reps_of_inclusion, hnf_columns, vec_add, IntMat, IntVec, QuotientStructure,
};
use crate::torus::{
    decompose, product_level, pullback_level, Level, MorphismDecomposition, TorusMorphism,
};

/// Canonical representative of a coset in an orbit space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitRef(IntVec);

impl OrbitRef {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> IntVec {
        self.0
    }
}

impl fmt::Display for OrbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for OrbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

const SPACE_CACHE_LIMIT: usize = 512;

/// `Z^n / B Z^n` for a full-rank `B`, shared cheaply between elements.
#[derive(Clone)]
pub struct OrbitSpace(Arc<SpaceInner>);

struct SpaceInner {
    quotient: QuotientStructure,
    orbits: OnceLock<Vec<OrbitRef>>,
}

impl PartialEq for OrbitSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.quotient == other.0.quotient
    }
}

impl Eq for OrbitSpace {}

impl OrbitSpace {
    /// The orbit space of a positive level, `Lambda / K Pi`.
    pub fn of_level(level: &Level) -> Result<Self> {
        level.require_positive()?;
        Self::of_sublattice(level.matrix())
    }

    /// An intermediate quotient by an arbitrary full-rank sublattice.
    ///
    /// Recently built quotients are kept per thread, keyed by `basis`, since
    /// the induced maps rebuild the same few spaces for every basis element.
    pub fn of_sublattice(basis: &IntMat) -> Result<Self> {
        thread_local! {
            static CACHE: RefCell<HashMap<IntMat, OrbitSpace>> = RefCell::new(HashMap::new());
        }
        if let Some(hit) = CACHE.with(|c| c.borrow().get(basis).cloned()) {
            return Ok(hit);
        }
        let space = OrbitSpace(Arc::new(SpaceInner {
            quotient: QuotientStructure::new(basis)?,
            orbits: OnceLock::new(),
        }));
        CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= SPACE_CACHE_LIMIT {
                c.clear();
            }
            c.insert(basis.clone(), space.clone());
        });
        Ok(space)
    }

    pub fn quotient(&self) -> &QuotientStructure {
        &self.0.quotient
    }

    pub fn rank(&self) -> usize {
        self.0.quotient.ambient_rank()
    }

    pub fn size(&self) -> BigInt {
        self.0.quotient.size()
    }

    pub fn orbit_of(&self, weight: &[BigInt]) -> OrbitRef {
        OrbitRef(self.0.quotient.reduce(weight))
    }

    pub fn is_reduced(&self, orbit: &OrbitRef) -> bool {
        orbit.0.len() == self.rank() && self.0.quotient.reduce(&orbit.0) == orbit.0
    }

    pub fn orbits(&self) -> Vec<OrbitRef> {
        self.orbit_list().to_vec()
    }

    /// The orbits in canonical order, enumerated once per space.
    pub fn orbit_list(&self) -> &[OrbitRef] {
        self.0.orbits.get_or_init(|| {
            self.0
                .quotient
                .enumerate()
                .into_iter()
                .map(OrbitRef)
                .collect()
        })
    }
}

impl fmt::Debug for OrbitSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitSpace({})", self.0.quotient.hnf_basis())
    }
}

/// Finitely supported integer combination of orbits; zero coefficients are
/// never stored and iteration follows the order of [`OrbitRef`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Combination(BTreeMap<OrbitRef, BigInt>);

impl Combination {
    pub fn new() -> Self {
        Combination(BTreeMap::new())
    }

    pub fn add_term(&mut self, orbit: OrbitRef, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(orbit.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&orbit);
        }
    }

    pub fn add(&mut self, other: &Combination) {
        for (o, c) in other.iter() {
            self.add_term(o.clone(), c);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Combination {
        let mut out = Combination::new();
        for (o, x) in self.iter() {
            out.add_term(o.clone(), &(x * c));
        }
        out
    }

    pub fn coefficient(&self, orbit: &OrbitRef) -> BigInt {
        self.0.get(orbit).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrbitRef, &BigInt)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (o, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{o}")?;
            } else {
                write!(f, "{c}{o}")?;
            }
        }
        Ok(())
    }
}

/// An element of `char(T, tau)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharElement {
    space: OrbitSpace,
    terms: Combination,
}

impl CharElement {
    pub fn zero(space: &OrbitSpace) -> Self {
        CharElement {
            space: space.clone(),
            terms: Combination::new(),
        }
    }

    /// The basis element `[weight]`.
    pub fn basis(space: &OrbitSpace, weight: &[BigInt]) -> Result<Self> {
        check_len(space, weight)?;
        let mut e = Self::zero(space);
        e.terms.add_term(space.orbit_of(weight), &BigInt::one());
        Ok(e)
    }

    /// Builds an element from `(weight, coefficient)` pairs, reducing weights.
    pub fn from_terms<'a, I>(space: &OrbitSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [BigInt], BigInt)>,
    {
        let mut e = Self::zero(space);
        for (w, c) in terms {
            check_len(space, w)?;
            e.terms.add_term(space.orbit_of(w), &c);
        }
        Ok(e)
    }

    pub(crate) fn from_combination(space: &OrbitSpace, terms: Combination) -> Self {
        CharElement {
            space: space.clone(),
            terms,
        }
    }

    pub fn space(&self) -> &OrbitSpace {
        &self.space
    }

    pub fn terms(&self) -> &Combination {
        &self.terms
    }

    pub fn coefficient(&self, orbit: &OrbitRef) -> BigInt {
        self.terms.coefficient(orbit)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CharElement) -> Result<CharElement> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add(&other.terms);
        Ok(CharElement::from_combination(&self.space, terms))
    }

    pub fn scaled(&self, c: &BigInt) -> CharElement {
        CharElement::from_combination(&self.space, self.terms.scaled(c))
    }
}

impl fmt::Debug for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

fn check_len(space: &OrbitSpace, weight: &[BigInt]) -> Result<()> {
    if weight.len() != space.rank() {
        return Err(Error::DimensionMismatch(format!(
            "weight of length {} in a rank {} orbit space",
            weight.len(),
            space.rank()
        )));
    }
    Ok(())
}

pub(crate) fn require_space(x: &CharElement, expected: &OrbitSpace) -> Result<()> {
    if x.space() != expected {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// All orbits of `Lambda / K Pi` in canonical order; there are `|det K|`.
pub fn orbit_space(level: &Level) -> Result<Vec<OrbitRef>> {
    Ok(OrbitSpace::of_level(level)?.orbits())
}

/// `char(i1)` for the inclusion of the first factor: `[lambda] -> [first block]`.
pub fn char_i1(first: &Level, second: &Level, x: &CharElement) -> Result<CharElement> {
    FirstFactorMap::new(first, second)?.apply(x)
}

#[derive(Clone, Debug)]
struct FirstFactorMap {
    product: OrbitSpace,
    first: OrbitSpace,
    first_rank: usize,
}

impl FirstFactorMap {
    fn new(first: &Level, second: &Level) -> Result<Self> {
        Ok(FirstFactorMap {
            product: OrbitSpace::of_level(&product_level(first, second))?,
            first: OrbitSpace::of_level(first)?,
            first_rank: first.rank(),
        })
    }

    fn apply(&self, x: &CharElement) -> Result<CharElement> {
        require_space(x, &self.product)?;
        let mut terms = Combination::new();
        for (o, c) in x.terms().iter() {
            terms.add_term(self.first.orbit_of(&o.coords()[..self.first_rank]), c);
        }
        Ok(CharElement::from_combination(&self.first, terms))
    }
}

/// [`char_i1`] for a product level given as one block-diagonal matrix.
pub fn char_i1_split(product: &Level, first_rank: usize, x: &CharElement) -> Result<CharElement> {
    let (first, second) = product.split(first_rank)?;
    char_i1(&first, &second, x)
}

/// `char(q)` for a finite covering:
/// `[lambda] -> sum over m in Pi_T / F Pi_T' of [F^T (lambda + K m)]`.
pub fn char_covering(q: &TorusMorphism, level: &Level, x: &CharElement) -> Result<CharElement> {
    CoveringMap::new(q, level)?.apply(x)
}

#[derive(Clone, Debug)]
struct CoveringMap {
    source: OrbitSpace,
    target: OrbitSpace,
    transpose: IntMat,
    /// `K m` for representatives `m` of `Pi_T / F Pi_T'`.
    shifts: Vec<IntVec>,
}

impl CoveringMap {
    fn new(q: &TorusMorphism, level: &Level) -> Result<Self> {
        if !q.is_covering() {
            return Err(Error::NotCovering);
        }
        q.require_target(level)?;
        let reps = coset_reps_of_inclusion(q.matrix(), &IntMat::identity(q.target().rank))?;
        Ok(CoveringMap {
            source: OrbitSpace::of_level(level)?,
            target: OrbitSpace::of_level(&pullback_level(q, level)?)?,
            transpose: q.matrix().transpose(),
            shifts: reps.iter().map(|m| level.matrix().mul_vec(m)).collect(),
        })
    }

    fn apply(&self, x: &CharElement) -> Result<CharElement> {
        require_space(x, &self.source)?;
        let mut terms = Combination::new();
        for (o, c) in x.terms().iter() {
            for s in &self.shifts {
                let w = self.transpose.mul_vec(&vec_add(o.coords(), s));
                terms.add_term(self.target.orbit_of(&w), c);
            }
        }
        Ok(CharElement::from_combination(&self.target, terms))
    }
}

/// `char(q) ∘ char(i1) ∘ char(f·j)` with every stage precomputed.
#[derive(Clone, Debug)]
pub struct DecomposedCharMap {
    fj: CoveringMap,
    i1: FirstFactorMap,
    q: CoveringMap,
}

impl DecomposedCharMap {
    pub fn new(d: &MorphismDecomposition, level: &Level) -> Result<Self> {
        let (k1, k2) = &d.split_levels;
        Ok(DecomposedCharMap {
            fj: CoveringMap::new(&d.fj, level)?,
            i1: FirstFactorMap::new(k1, k2)?,
            q: CoveringMap::new(&d.q, k1)?,
        })
    }

    pub fn apply(&self, x: &CharElement) -> Result<CharElement> {
        self.q.apply(&self.i1.apply(&self.fj.apply(x)?)?)
    }
}

/// Precomputed data for `char(f)` of a local injection; reusable across inputs.
#[derive(Clone, Debug)]
pub struct LocalInjectionMap {
    source: OrbitSpace,
    target: OrbitSpace,
    transpose: IntMat,
    /// Representatives of `L / K' Z^k` with `L = F^T K Z^n`.
    offsets: Vec<IntVec>,
}

impl LocalInjectionMap {
    pub fn new(f: &TorusMorphism, level: &Level) -> Result<Self> {
        f.require_target(level)?;
        f.require_local_injection()?;
        let source = OrbitSpace::of_level(level)?;
        let pulled = pullback_level(f, level)?;
        let target = OrbitSpace::of_level(&pulled)?;
        let transpose = f.matrix().transpose();
        let k = f.source().rank;
        let image = hnf_columns(&(&transpose * level.matrix()));
        let l_basis = image.h.submatrix(0..k, 0..k);
        let offsets = coset_reps_of_inclusion(pulled.matrix(), &l_basis)?;
        Ok(LocalInjectionMap {
            source,
            target,
            transpose,
            offsets,
        })
    }

    pub fn source(&self) -> &OrbitSpace {
        &self.source
    }

    pub fn target(&self) -> &OrbitSpace {
        &self.target
    }

    /// `N = [L : K' Z^k]`, the number of orbits in the image of any basis orbit.
    pub fn image_size(&self) -> usize {
        self.offsets.len()
    }

    pub fn apply(&self, x: &CharElement) -> Result<CharElement> {
        require_space(x, &self.source)?;
        let mut terms = Combination::new();
        for (o, c) in x.terms().iter() {
            let base = self.transpose.mul_vec(o.coords());
            for off in &self.offsets {
                terms.add_term(self.target.orbit_of(&vec_add(&base, off)), c);
            }
        }
        Ok(CharElement::from_combination(&self.target, terms))
    }

    /// Image of the orbit of an arbitrary (unreduced) weight.
    pub fn apply_weight(&self, weight: &[BigInt]) -> Result<CharElement> {
        self.apply(&CharElement::basis(&self.source, weight)?)
    }
}

/// `char(f)` for a local injection `f` at a positive level.
pub fn char_local_injection(
    f: &TorusMorphism,
    level: &Level,
    x: &CharElement,
) -> Result<CharElement> {
    LocalInjectionMap::new(f, level)?.apply(x)
}

/// `char(q) ∘ char(i1) ∘ char(f·j)` through the canonical decomposition.
pub fn char_via_decomposition(
    f: &TorusMorphism,
    level: &Level,
    x: &CharElement,
) -> Result<CharElement> {
    let d = decompose(f, level)?;
    char_through(&d, level, x)
}

/// `char(q) ∘ char(i1) ∘ char(f·j)` for a given decomposition of `f` at `level`.
pub fn char_through(
    d: &MorphismDecomposition,
    level: &Level,
    x: &CharElement,
) -> Result<CharElement> {
    DecomposedCharMap::new(d, level)?.apply(x)
}

#[derive(Clone, Debug)]
pub struct FunctorialityRow {
    pub orbit: OrbitRef,
    pub direct: CharElement,
    pub composite: CharElement,
}

impl FunctorialityRow {
    pub fn agrees(&self) -> bool {
        self.direct == self.composite
    }
}

#[derive(Clone, Debug)]
pub struct FunctorialityReport {
    pub rows: Vec<FunctorialityRow>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(FunctorialityRow::agrees)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &FunctorialityRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }
}

/// Compares `char(f)` with `char(q) ∘ char(i1) ∘ char(f·j)` on every basis orbit.
pub fn verify_partial_functoriality(
    f: &TorusMorphism,
    level: &Level,
) -> Result<FunctorialityReport> {
    let direct = LocalInjectionMap::new(f, level)?;
    let composite = DecomposedCharMap::new(&decompose(f, level)?, level)?;
    let mut rows = Vec::new();
    for orbit in direct.source().orbits() {
        let x = CharElement::basis(direct.source(), orbit.coords())?;
        rows.push(FunctorialityRow {
            direct: direct.apply(&x)?,
            composite: composite.apply(&x)?,
            orbit,
        });
    }
    Ok(FunctorialityReport { rows })
}
