//! Worked examples shipped with the library: the failure of functoriality of
//! `char` for tori, the `U(3)` computation, and rho-shift data sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::Result;
use crate::lattice::{int_vec, IntMat, IntVec};
use crate::orbit::{char_i1_split, char_local_injection, CharElement, Combination, OrbitSpace};
use crate::torus::{pullback_level, Level, TorusMorphism};
use crate::weyl::{
    char_general, char_group, char_max_torus, sign_flip, CompactGroupData, GroupCharElement,
    GroupMorphismData, RegularOrbit, WeylGroup,
};

/// `h = g ∘ f` with `f: T -> T^2`, `g: T^2 -> T^2`, at `tau = diag(-1, -1)`.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub tau: Level,
    pub f: TorusMorphism,
    pub g: TorusMorphism,
    pub h: TorusMorphism,
}

pub fn counterexample() -> Counterexample {
    Counterexample {
        tau: Level::diagonal(&[-1, -1]).expect("symmetric"),
        f: TorusMorphism::from_rows(&[[1], [-1]]),
        g: TorusMorphism::from_rows(&[[1, 1], [1, -1]]),
        h: TorusMorphism::from_rows(&[[0], [2]]),
    }
}

#[derive(Clone, Debug)]
pub struct NonFunctorialityReport {
    pub weight: IntVec,
    pub char_g: CharElement,
    pub char_f_of_g: CharElement,
    pub char_h: CharElement,
    /// `c` with `char(f)(char(g)(x)) = c * char(h)(x)`, when one exists.
    pub factor: Option<BigInt>,
}

/// `char(f) ∘ char(g)` against `char(h)` on `[(0, 0)]`.
pub fn demo_nonfunctoriality() -> NonFunctorialityReport {
    nonfunctoriality_at(&int_vec(&[0, 0])).expect("built-in data is valid")
}

pub fn nonfunctoriality_at(weight: &[BigInt]) -> Result<NonFunctorialityReport> {
    let c = counterexample();
    let g_tau = pullback_level(&c.g, &c.tau)?;
    let x = CharElement::basis(&OrbitSpace::of_level(&c.tau)?, weight)?;
    let char_g = char_local_injection(&c.g, &c.tau, &x)?;
    let char_f_of_g = char_local_injection(&c.f, &g_tau, &char_g)?;
    let char_h = char_local_injection(&c.h, &c.tau, &x)?;
    let factor = proportionality(&char_f_of_g, &char_h);
    Ok(NonFunctorialityReport {
        weight: weight.to_vec(),
        char_g,
        char_f_of_g,
        char_h,
        factor,
    })
}

fn proportionality(lhs: &CharElement, rhs: &CharElement) -> Option<BigInt> {
    let (o, r) = rhs.terms().iter().next()?;
    let l = lhs.coefficient(o);
    if !l.is_multiple_of(r) {
        return None;
    }
    let c = l / r;
    (*lhs == rhs.scaled(&c)).then_some(c)
}

pub fn u3_group() -> CompactGroupData {
    CompactGroupData::new(
        Level::diagonal(&[-3, -3, -3]).expect("symmetric"),
        WeylGroup::symmetric(3),
        Some(int_vec(&[1, 0, -1])),
    )
    .expect("S3 preserves a scalar level")
}

/// The first-factor torus `T -> U(3)` with its pulled-back level.
pub fn u3_to_circle() -> GroupMorphismData {
    let circle = CompactGroupData::torus(Level::diagonal(&[-3]).expect("symmetric"));
    GroupMorphismData::new(
        circle,
        u3_group(),
        TorusMorphism::from_rows(&[[1], [0], [0]]),
        Vec::new(),
    )
    .expect("shapes agree")
}

#[derive(Clone, Debug)]
pub struct U3Report {
    pub regular_orbits: Vec<RegularOrbit>,
    /// `char(i)` of the regular orbit, on the maximal torus.
    pub torus_image: CharElement,
    /// `char(i1) ∘ char(i)`.
    pub composite: CharElement,
    /// The same map computed as `char(f)` for the group homomorphism.
    pub general: GroupCharElement,
    /// Image orbits each counted once, i.e. the naive set-theoretic image.
    pub naive: CharElement,
    pub circle_orbit_count: usize,
}

pub fn u3_report() -> Result<U3Report> {
    let g = u3_group();
    let regular_orbits = char_group(&g)?;
    let x = GroupCharElement::basis(&g, regular_orbits[0].rep().coords())?;
    let torus_image = char_max_torus(&g, &x)?;
    let composite = char_i1_split(g.level(), 1, &torus_image)?;
    let general = char_general(&u3_to_circle(), &x)?;
    let circle = OrbitSpace::of_level(&Level::diagonal(&[-3])?)?;
    let mut naive_terms = Combination::new();
    let firsts: BTreeSet<_> = composite.terms().iter().map(|(o, _)| o.clone()).collect();
    for o in firsts {
        naive_terms.add_term(o, &BigInt::one());
    }
    let pairs: Vec<(IntVec, BigInt)> = naive_terms
        .iter()
        .map(|(o, c)| (o.coords().to_vec(), c.clone()))
        .collect();
    let naive = CharElement::from_terms(
        &circle,
        pairs.iter().map(|(w, c)| (w.as_slice(), c.clone())),
    )?;
    Ok(U3Report {
        regular_orbits,
        torus_image,
        composite,
        general,
        naive,
        circle_orbit_count: circle.orbits().len(),
    })
}

/// A pair of levels `(tau - sigma, tau)` with common Weyl group and `rho`.
#[derive(Clone, Debug)]
pub struct RhoShiftCase {
    pub name: String,
    pub low: CompactGroupData,
    pub high: CompactGroupData,
    pub consistent: bool,
}

fn cartan_a2(scale: i64) -> Level {
    Level::from_rows(&[[-2 * scale, scale], [scale, -2 * scale]]).expect("symmetric")
}

fn su2(level: i64) -> CompactGroupData {
    CompactGroupData::new(
        Level::diagonal(&[-2 * level]).expect("symmetric"),
        WeylGroup::new(1, vec![sign_flip(1, 0)]).expect("unimodular"),
        Some(int_vec(&[1])),
    )
    .expect("equivariant")
}

fn su3(level: i64) -> CompactGroupData {
    let s1 = IntMat::from_rows(&[[-1, 0], [1, 1]]);
    let s2 = IntMat::from_rows(&[[1, 1], [0, -1]]);
    CompactGroupData::new(
        cartan_a2(level),
        WeylGroup::new(2, vec![s1, s2]).expect("unimodular"),
        Some(int_vec(&[1, 1])),
    )
    .expect("equivariant")
}

fn diagonal_group(entries: &[i64], flips: &[usize], rho: &[i64]) -> CompactGroupData {
    let n = entries.len();
    CompactGroupData::new(
        Level::diagonal(entries).expect("symmetric"),
        WeylGroup::new(n, flips.iter().map(|&i| sign_flip(n, i)).collect()).expect("unimodular"),
        Some(int_vec(rho)),
    )
    .expect("equivariant")
}

/// Weights are in the fundamental-weight basis, so `SU(2)` at level `l` has
/// `K = (-2l)` and `SU(3)` has `K = -l C` for the Cartan matrix `C`. The spin
/// extension adds the dual Coxeter number to the level.
pub fn rho_shift_cases() -> Vec<RhoShiftCase> {
    let mut cases = Vec::new();
    for l in 1..=4 {
        cases.push(RhoShiftCase {
            name: format!("SU(2) level {l}"),
            low: su2(l),
            high: su2(l + 2),
            consistent: true,
        });
    }
    for l in 1..=3 {
        cases.push(RhoShiftCase {
            name: format!("SU(3) level {l}"),
            low: su3(l),
            high: su3(l + 3),
            consistent: true,
        });
    }
    cases.push(RhoShiftCase {
        name: "SU(2) x SU(2) levels (1, 2)".into(),
        low: diagonal_group(&[-2, -4], &[0, 1], &[1, 1]),
        high: diagonal_group(&[-6, -8], &[0, 1], &[1, 1]),
        consistent: true,
    });
    cases.push(RhoShiftCase {
        name: "U(1) x SU(2) levels (3, 2)".into(),
        low: diagonal_group(&[-3, -4], &[1], &[0, 1]),
        high: diagonal_group(&[-3, -8], &[1], &[0, 1]),
        consistent: true,
    });
    cases.push(RhoShiftCase {
        name: "SU(2) with a too small shift".into(),
        low: su2(1),
        high: su2(2),
        consistent: false,
    });
    cases
}

impl NonFunctorialityReport {
    pub fn reproduces_factor_two(&self) -> bool {
        self.factor == Some(BigInt::from(2)) && !self.char_h.is_zero()
    }
}

impl U3Report {
    pub fn matches_expected(&self) -> bool {
        let two = BigInt::from(2);
        self.regular_orbits.len() == 1
            && self.torus_image.terms().len() == 6
            && self.composite.terms().len() == 3
            && self.composite.terms().iter().all(|(_, c)| *c == two)
            && self
                .general
                .terms()
                .iter()
                .map(|(_, c)| c.clone())
                .collect::<Vec<_>>()
                == vec![two.clone(); 3]
            && self.naive.terms().iter().all(|(_, c)| c.is_one())
            && self.circle_orbit_count == 3
    }
}
