//! Compact connected groups reduced to their maximal torus: a positive level
//! plus a Weyl group given by generator matrices acting on `Lambda = Z^n`.
//!
//! The extended affine Weyl group `Pi ⋊ W` acts on twisted weights through
//! `kappa` translations and the Weyl matrices. Since `kappa` is injective, an
//! orbit is regular exactly when no nontrivial `w` fixes the class of `lambda`
//! in `Lambda / K Pi`. The quotients written `Lambda/W_aff` and
//! `Lambda/kappa(W_aff)` are the same set here.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, vec_add, IntMat, IntVec};
use crate::orbit::{char_local_injection, CharElement, Combination, OrbitRef, OrbitSpace};
use crate::torus::{orthogonal_complement_lattice, pullback_level, Level, TorusMorphism};

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Finite group of unimodular matrices acting on `Lambda`.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    generators: Vec<IntMat>,
    cap: usize,
    elements: OnceLock<Vec<IntMat>>,
}

impl Clone for WeylGroup {
    fn clone(&self) -> Self {
        WeylGroup {
            rank: self.rank,
            generators: self.generators.clone(),
            cap: self.cap,
            elements: self.elements.clone(),
        }
    }
}

impl PartialEq for WeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.generators == other.generators
    }
}

impl WeylGroup {
    pub fn new(rank: usize, generators: Vec<IntMat>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "Weyl generator {i} is {}x{}, expected {rank}x{rank}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_unimodular() {
                return Err(Error::NotUnimodular(format!("Weyl generator {i}")));
            }
        }
        Ok(WeylGroup {
            rank,
            generators,
            cap: DEFAULT_CLOSURE_CAP,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(rank: usize) -> Self {
        WeylGroup::new(rank, Vec::new()).expect("no generators to check")
    }

    /// Symmetric group acting on `Z^n` by permuting coordinates, generated by
    /// adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let gens = (0..n.saturating_sub(1))
            .map(|i| transposition(n, i, i + 1))
            .collect();
        WeylGroup::new(n, gens).expect("permutation matrices are unimodular")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.elements = OnceLock::new();
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IntMat] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// All group elements, identity first, in breadth-first order over
    /// right multiplication by generators. Cached after the first call.
    pub fn closure(&self) -> Result<&[IntMat]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let elements = self.compute_closure()?;
        Ok(self.elements.get_or_init(|| elements))
    }

    fn compute_closure(&self) -> Result<Vec<IntMat>> {
        let id = IntMat::identity(self.rank);
        let mut seen: HashSet<IntMat> = HashSet::from([id.clone()]);
        let mut order = vec![id];
        let mut i = 0;
        while i < order.len() {
            for g in &self.generators {
                let p = &order[i] * g;
                if seen.insert(p.clone()) {
                    if seen.len() > self.cap {
                        return Err(Error::ClosureCapExceeded { cap: self.cap });
                    }
                    order.push(p);
                }
            }
            i += 1;
        }
        Ok(order)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.closure()?.len())
    }

    pub fn contains(&self, m: &IntMat) -> Result<bool> {
        Ok(self.closure()?.contains(m))
    }

    /// Same set of elements, regardless of generators.
    pub fn same_group(&self, other: &WeylGroup) -> Result<bool> {
        let a: BTreeSet<&IntMat> = self.closure()?.iter().collect();
        let b: BTreeSet<&IntMat> = other.closure()?.iter().collect();
        Ok(a == b)
    }
}

/// Permutation matrix swapping coordinates `i` and `j`.
pub fn transposition(n: usize, i: usize, j: usize) -> IntMat {
    let mut m = IntMat::identity(n);
    m.set(i, i, BigInt::zero());
    m.set(j, j, BigInt::zero());
    m.set(i, j, BigInt::one());
    m.set(j, i, BigInt::one());
    m
}

/// Diagonal matrix negating coordinate `i`.
pub fn sign_flip(n: usize, i: usize) -> IntMat {
    let mut m = IntMat::identity(n);
    m.set(i, i, -BigInt::one());
    m
}

/// `(G, tau)` reduced to a maximal torus.
#[derive(Clone, Debug)]
pub struct CompactGroupData {
    level: Level,
    weyl: WeylGroup,
    rho: Option<IntVec>,
}

impl CompactGroupData {
    pub fn new(level: Level, weyl: WeylGroup, rho: Option<IntVec>) -> Result<Self> {
        if weyl.rank() != level.rank() {
            return Err(Error::DimensionMismatch(
                "Weyl group and level ranks differ".into(),
            ));
        }
        if let Some(r) = &rho {
            if r.len() != level.rank() {
                return Err(Error::DimensionMismatch("rho has the wrong length".into()));
            }
        }
        for (i, w) in weyl.generators().iter().enumerate() {
            if &(w * level.matrix()) * &w.transpose() != *level.matrix() {
                return Err(Error::NotEquivariant { generator: i });
            }
        }
        Ok(CompactGroupData { level, weyl, rho })
    }

    /// A torus viewed as a group with trivial Weyl group.
    pub fn torus(level: Level) -> Self {
        let rank = level.rank();
        CompactGroupData::new(level, WeylGroup::trivial(rank), None).expect("trivial Weyl group")
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rho(&self) -> Option<&[BigInt]> {
        self.rho.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.level.rank()
    }

    pub fn torus_space(&self) -> Result<OrbitSpace> {
        OrbitSpace::of_level(&self.level)
    }

    /// Sorted classes `{[w lambda]}` for `w` in `W`.
    pub fn weyl_orbit(&self, space: &OrbitSpace, weight: &[BigInt]) -> Result<Vec<OrbitRef>> {
        let set: BTreeSet<OrbitRef> = self
            .weyl
            .closure()?
            .iter()
            .map(|w| space.orbit_of(&w.mul_vec(weight)))
            .collect();
        Ok(set.into_iter().collect())
    }
}

/// Whether the extended affine Weyl orbit of `weight` has trivial stabilizer.
pub fn is_regular(weight: &[BigInt], group: &CompactGroupData) -> Result<bool> {
    let space = group.torus_space()?;
    let class = space.orbit_of(weight);
    for w in group.weyl.closure()?.iter().skip(1) {
        if space.orbit_of(&w.mul_vec(class.coords())) == class {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A regular `W_aff`-orbit: its `|W|` torus orbits, sorted. The first member is
/// the canonical label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularOrbit {
    pub members: Vec<OrbitRef>,
}

impl RegularOrbit {
    pub fn rep(&self) -> &OrbitRef {
        &self.members[0]
    }
}

/// All `W`-orbits of `Lambda / K Pi`, each sorted, listed by smallest member.
pub fn weyl_orbits(group: &CompactGroupData) -> Result<Vec<Vec<OrbitRef>>> {
    let space = group.torus_space()?;
    let mut visited: HashSet<OrbitRef> = HashSet::new();
    let mut out = Vec::new();
    for class in space.orbits() {
        if visited.contains(&class) {
            continue;
        }
        let orbit = group.weyl_orbit(&space, class.coords())?;
        visited.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    Ok(out)
}

/// Basis of `char(G, tau)`: the regular orbits.
pub fn char_group(group: &CompactGroupData) -> Result<Vec<RegularOrbit>> {
    let order = group.weyl.order()?;
    Ok(weyl_orbits(group)?
        .into_iter()
        .filter(|o| o.len() == order)
        .map(|members| RegularOrbit { members })
        .collect())
}

/// An element of `char(G, tau)`, keyed by canonical regular-orbit labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCharElement {
    space: OrbitSpace,
    terms: Combination,
}

impl GroupCharElement {
    pub fn zero(group: &CompactGroupData) -> Result<Self> {
        Ok(GroupCharElement {
            space: group.torus_space()?,
            terms: Combination::new(),
        })
    }

    /// `[weight]_G`; fails if the orbit of `weight` is not regular.
    pub fn basis(group: &CompactGroupData, weight: &[BigInt]) -> Result<Self> {
        let mut e = Self::zero(group)?;
        e.add_term(group, weight, &BigInt::one())?;
        Ok(e)
    }

    pub fn add_term(
        &mut self,
        group: &CompactGroupData,
        weight: &[BigInt],
        coeff: &BigInt,
    ) -> Result<()> {
        if weight.len() != group.rank() {
            return Err(Error::DimensionMismatch("weight length".into()));
        }
        let orbit = group.weyl_orbit(&self.space, weight)?;
        if orbit.len() != group.weyl.order()? {
            return Err(Error::NotRegular(format!(
                "{}",
                self.space.orbit_of(weight)
            )));
        }
        self.terms.add_term(orbit[0].clone(), coeff);
        Ok(())
    }

    pub fn terms(&self) -> &Combination {
        &self.terms
    }

    pub fn space(&self) -> &OrbitSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::fmt::Display for GroupCharElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.terms)
    }
}

/// `char(i)` for the maximal torus: `[lambda]_G -> sum_w [w lambda]_T`.
pub fn char_max_torus(group: &CompactGroupData, x: &GroupCharElement) -> Result<CharElement> {
    let space = group.torus_space()?;
    if x.space != space {
        return Err(Error::SpaceMismatch);
    }
    let order = group.weyl.order()?;
    let mut terms = Combination::new();
    for (label, c) in x.terms.iter() {
        let members = group.weyl_orbit(&space, label.coords())?;
        if members.len() != order {
            return Err(Error::NotRegular(format!("{label}")));
        }
        for m in members {
            terms.add_term(m, c);
        }
    }
    let pairs: Vec<(IntVec, BigInt)> = terms
        .iter()
        .map(|(o, c)| (o.coords().to_vec(), c.clone()))
        .collect();
    CharElement::from_terms(&space, pairs.iter().map(|(w, c)| (w.as_slice(), c.clone())))
}

/// A homomorphism `H -> G` restricted to maximal tori `S -> T`, with the
/// induced map on Weyl groups given on the generators of `W(H)`.
#[derive(Clone, Debug)]
pub struct GroupMorphismData {
    pub source: CompactGroupData,
    pub target: CompactGroupData,
    pub torus_map: TorusMorphism,
    pub f_star: Vec<IntMat>,
}

impl GroupMorphismData {
    pub fn new(
        source: CompactGroupData,
        target: CompactGroupData,
        torus_map: TorusMorphism,
        f_star: Vec<IntMat>,
    ) -> Result<Self> {
        if torus_map.source().rank != source.rank() || torus_map.target().rank != target.rank() {
            return Err(Error::DimensionMismatch(
                "torus map does not match group ranks".into(),
            ));
        }
        if f_star.len() != source.weyl.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} Weyl images for {} source generators",
                f_star.len(),
                source.weyl.generators().len()
            )));
        }
        if f_star
            .iter()
            .any(|m| m.rows() != target.rank() || m.cols() != target.rank())
        {
            return Err(Error::DimensionMismatch(
                "Weyl image has the wrong size".into(),
            ));
        }
        Ok(GroupMorphismData {
            source,
            target,
            torus_map,
            f_star,
        })
    }
}

/// Outcome of the lattice-level checks of the decomposable condition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecomposableReport {
    pub local_injection: bool,
    pub pullback_positive: bool,
    /// Source level equals `F^T K F`.
    pub level_matches: bool,
    /// Source generators whose image is not an element of `W(G)`.
    pub not_in_target: Vec<usize>,
    /// The generator assignment extends to a homomorphism `W(H) -> W(G)`.
    pub homomorphism: bool,
    pub injective: bool,
    /// Generators with `F^T f_*(w) != w F^T`.
    pub equivariance_failures: Vec<usize>,
    /// Generators whose image moves some vector of `kappa(perp)`.
    pub perp_failures: Vec<usize>,
}

impl DecomposableReport {
    /// Torsion-freeness of `pi_1(H / ker f)` cannot be checked from lattice
    /// data and is taken on trust.
    pub const USER_ASSERTED: &'static str = "pi_1(H/ker f) torsion-free: USER-ASSERTED";

    pub fn passed(&self) -> bool {
        self.local_injection
            && self.pullback_positive
            && self.level_matches
            && self.not_in_target.is_empty()
            && self.homomorphism
            && self.injective
            && self.equivariance_failures.is_empty()
            && self.perp_failures.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.local_injection {
            out.push("torus map is not a local injection".to_string());
        }
        if !self.pullback_positive {
            out.push("pulled-back level is not positive".to_string());
        }
        if !self.level_matches {
            out.push("source level differs from the pulled-back level".to_string());
        }
        for i in &self.not_in_target {
            out.push(format!("image of generator {i} is not in W(G)"));
        }
        if !self.homomorphism {
            out.push("Weyl images do not define a homomorphism".to_string());
        } else if !self.injective {
            out.push("induced map on Weyl groups is not injective".to_string());
        }
        for i in &self.equivariance_failures {
            out.push(format!("generator {i} breaks weight equivariance"));
        }
        for i in &self.perp_failures {
            out.push(format!(
                "generator {i} acts nontrivially on the orthogonal complement"
            ));
        }
        out
    }
}

pub fn check_decomposable(m: &GroupMorphismData) -> Result<DecomposableReport> {
    let f = &m.torus_map;
    let k = m.target.level();
    let mut report = DecomposableReport {
        local_injection: f.is_local_injection(),
        ..Default::default()
    };
    if report.local_injection {
        if let Ok(pulled) = pullback_level(f, k) {
            report.pullback_positive = true;
            report.level_matches = pulled == *m.source.level();
        }
    }

    let target_elems: HashSet<&IntMat> = m.target.weyl.closure()?.iter().collect();
    report.not_in_target = (0..m.f_star.len())
        .filter(|&i| !target_elems.contains(&m.f_star[i]))
        .collect();

    // Walk W(H) while carrying images; a clash means no homomorphism.
    let h_gens = m.source.weyl.generators();
    let mut image: HashMap<IntMat, IntMat> = HashMap::new();
    let id_h = IntMat::identity(m.source.rank());
    image.insert(id_h.clone(), IntMat::identity(m.target.rank()));
    let mut queue = VecDeque::from([id_h]);
    report.homomorphism = true;
    while let Some(h) = queue.pop_front() {
        let g = image[&h].clone();
        for (s, fs) in h_gens.iter().zip(&m.f_star) {
            let h2 = &h * s;
            let g2 = &g * fs;
            match image.get(&h2) {
                Some(existing) if *existing != g2 => report.homomorphism = false,
                Some(_) => {}
                None => {
                    if image.len() >= m.source.weyl.cap() {
                        return Err(Error::ClosureCapExceeded {
                            cap: m.source.weyl.cap(),
                        });
                    }
                    image.insert(h2.clone(), g2);
                    queue.push_back(h2);
                }
            }
        }
    }
    let distinct: HashSet<&IntMat> = image.values().collect();
    report.injective = report.homomorphism && distinct.len() == image.len();

    let ft = f.matrix().transpose();
    report.equivariance_failures = h_gens
        .iter()
        .zip(&m.f_star)
        .enumerate()
        .filter(|(_, (s, fs))| &ft * *fs != &**s * &ft)
        .map(|(i, _)| i)
        .collect();

    if report.local_injection {
        let perp = orthogonal_complement_lattice(f, k)?;
        let kappa_perp = k.matrix() * &perp;
        report.perp_failures = m
            .f_star
            .iter()
            .enumerate()
            .filter(|(_, fs)| &**fs * &kappa_perp != kappa_perp)
            .map(|(i, _)| i)
            .collect();
    }
    Ok(report)
}

/// One `W(H)`-orbit block found while regrouping a torus-level image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegroupBlock {
    pub label: OrbitRef,
    pub coefficient: BigInt,
    pub members: Vec<OrbitRef>,
}

/// Splits a `char(S)` element into `W(H)`-orbit blocks, each required to be
/// regular and carry a uniform coefficient.
pub fn regroup(group: &CompactGroupData, x: &CharElement) -> Result<Vec<RegroupBlock>> {
    let space = group.torus_space()?;
    if *x.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let order = group.weyl.order()?;
    let mut remaining: BTreeMap<OrbitRef, BigInt> = x
        .terms()
        .iter()
        .map(|(o, c)| (o.clone(), c.clone()))
        .collect();
    let mut blocks = Vec::new();
    while let Some((first, c)) = remaining.iter().next().map(|(o, c)| (o.clone(), c.clone())) {
        let members = group.weyl_orbit(&space, first.coords())?;
        if members.len() != order {
            return Err(Error::GroupingFailure(format!(
                "orbit {first} has a nontrivial stabilizer"
            )));
        }
        for mem in &members {
            match remaining.remove(mem) {
                Some(cm) if cm == c => {}
                Some(cm) => {
                    return Err(Error::GroupingFailure(format!(
                        "orbit {mem} has coefficient {cm}, block of {first} has {c}"
                    )))
                }
                None => {
                    return Err(Error::GroupingFailure(format!(
                        "orbit {mem} of the block of {first} is missing"
                    )))
                }
            }
        }
        blocks.push(RegroupBlock {
            label: members[0].clone(),
            coefficient: c,
            members,
        });
    }
    Ok(blocks)
}

/// `char(f)` for a decomposable homomorphism, determined by
/// `char(i) ∘ char(f) = char(f|_S) ∘ char(k)`.
pub fn char_general(m: &GroupMorphismData, x: &GroupCharElement) -> Result<GroupCharElement> {
    let report = check_decomposable(m)?;
    if !report.passed() {
        return Err(Error::NotDecomposable(report.failures().join("; ")));
    }
    let on_torus = char_max_torus(&m.target, x)?;
    let image = char_local_injection(&m.torus_map, m.target.level(), &on_torus)?;
    let mut out = GroupCharElement::zero(&m.source)?;
    for block in regroup(&m.source, &image)? {
        out.terms.add_term(block.label, &block.coefficient);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoShiftEntry {
    /// Canonical label of the low-level `W_aff`-orbit.
    pub low_orbit: OrbitRef,
    /// Representative used for the shift (closest to the origin, then most
    /// aligned with `rho`).
    pub low_representative: IntVec,
    pub shifted: IntVec,
    pub high_orbit: OrbitRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoShiftTable {
    pub entries: Vec<RhoShiftEntry>,
}

/// Verifies that `[lambda] -> [lambda + rho]` is a bijection from all
/// `W_aff`-orbits at the lower level onto the regular orbits at the higher
/// level, returning the correspondence.
///
/// Each low orbit is represented by the member minimising the `W`-invariant
/// norm `x^T adj(-K_low) x`, ties broken by the largest pairing with `rho`
/// and then lexicographically. This is the element in the closed fundamental
/// alcove, where the shift is the classical one.
pub fn rho_shift(low: &CompactGroupData, high: &CompactGroupData) -> Result<RhoShiftTable> {
    if low.rank() != high.rank() {
        return Err(Error::DimensionMismatch(
            "rho-shift needs equal ranks".into(),
        ));
    }
    if !low.weyl.same_group(&high.weyl)? {
        return Err(Error::Invalid(
            "rho-shift needs the same Weyl group on both sides".into(),
        ));
    }
    let rho = high
        .rho()
        .ok_or_else(|| Error::Invalid("rho-shift needs rho on the higher level".into()))?
        .to_vec();
    low.level.require_positive()?;
    high.level.require_positive()?;

    let low_space = low.torus_space()?;
    let high_space = high.torus_space()?;
    let kl = low.level.matrix();
    let gram = (-kl).adjugate();
    let order = high.weyl.order()?;

    let mut entries = Vec::new();
    let mut hit: BTreeMap<OrbitRef, OrbitRef> = BTreeMap::new();
    for orbit in weyl_orbits(low)? {
        let mut best: Option<((BigInt, BigInt, IntVec), IntVec)> = None;
        for class in &orbit {
            for lift in short_lifts(kl, class.coords()) {
                let gl = gram.mul_vec(&lift);
                let key = (dot(&lift, &gl), -dot(&gl, &rho), lift.clone());
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, lift));
                }
            }
        }
        let (_, lambda) = best.expect("orbit is nonempty");
        let low_label = orbit[0].clone();
        let shifted = vec_add(&lambda, &rho);
        let members = high.weyl_orbit(&high_space, &shifted)?;
        if members.len() != order {
            return Err(Error::NotBijective {
                orbit: format!("{low_label}"),
                reason: format!(
                    "shifted weight {} is not regular",
                    high_space.orbit_of(&shifted)
                ),
            });
        }
        let high_label = members[0].clone();
        if let Some(prev) = hit.insert(high_label.clone(), low_label.clone()) {
            return Err(Error::NotBijective {
                orbit: format!("{low_label}"),
                reason: format!("collides with {prev} at {high_label}"),
            });
        }
        entries.push(RhoShiftEntry {
            low_orbit: low_label,
            low_representative: lambda,
            shifted,
            high_orbit: high_label,
        });
    }
    for regular in char_group(high)? {
        if !hit.contains_key(regular.rep()) {
            return Err(Error::NotBijective {
                orbit: format!("{}", regular.rep()),
                reason: "regular orbit is not in the image".to_string(),
            });
        }
    }
    debug_assert_eq!(low_space.rank(), high_space.rank());
    Ok(RhoShiftTable { entries })
}

/// Lifts `c + K n` of a class near the origin: Babai rounding of `-K^{-1} c`
/// followed by a box search of radius 2.
fn short_lifts(k: &IntMat, c: &[BigInt]) -> Vec<IntVec> {
    let n = c.len();
    let det = k.det();
    let num = k.adjugate().mul_vec(c);
    let center: IntVec = num.iter().map(|a| -round_div(a, &det)).collect();
    let radius = 2i64;
    let mut out = Vec::new();
    let mut offset = vec![-radius; n];
    loop {
        let coeffs: IntVec = center
            .iter()
            .zip(&offset)
            .map(|(a, &o)| a + BigInt::from(o))
            .collect();
        out.push(vec_add(c, &k.mul_vec(&coeffs)));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            offset[i] += 1;
            if offset[i] <= radius {
                break;
            }
            offset[i] = -radius;
            i += 1;
        }
    }
}

/// Nearest integer to `a / d`, ties rounded down.
fn round_div(a: &BigInt, d: &BigInt) -> BigInt {
    let (a, d) = if d < &BigInt::zero() {
        (-a, -d)
    } else {
        (a.clone(), d.clone())
    };
    (BigInt::from(2) * a + &d).div_floor(&(BigInt::from(2) * d))
}
