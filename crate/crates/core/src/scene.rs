//! Scene files: named tori, levels, morphisms and groups in TOML or JSON.
//!
//! Integers may be written as numbers or, when they do not fit in 64 bits,
//! as decimal strings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{IntMat, IntVec};
use crate::torus::{Level, MorphismKind, TorusMorphism};
use crate::weyl::{CompactGroupData, GroupMorphismData, WeylGroup};

/// Built-in data: the functoriality counterexample and the `U(3)` example.
pub const BUILTIN_SCENE: &str = r#"# Functoriality counterexample: h = g . f at tau = diag(-1, -1).
# U(3) with its maximal torus at level diag(-3, -3, -3), and the inclusion of
# the first diagonal entry.

[tori]
S = 1
T = 2
T3 = 3

[levels.tau]
torus = "T"
matrix = [[-1, 0], [0, -1]]

[levels.g_tau]
torus = "T"
matrix = [[-2, 0], [0, -2]]

[levels.h_tau]
torus = "S"
matrix = [[-4]]

[levels.u3]
torus = "T3"
matrix = [[-3, 0, 0], [0, -3, 0], [0, 0, -3]]

[levels.circle3]
torus = "S"
matrix = [[-3]]

[morphisms.f]
source = "S"
target = "T"
kind = "local_injection"
matrix = [[1], [-1]]

[morphisms.g]
source = "T"
target = "T"
kind = "finite_covering"
matrix = [[1, 1], [1, -1]]

[morphisms.h]
source = "S"
target = "T"
kind = "local_injection"
matrix = [[0], [2]]

[morphisms.first_entry]
source = "S"
target = "T3"
kind = "local_injection"
matrix = [[1], [0], [0]]

[groups.U3]
level = "u3"
weyl_generators = [
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
]
rho = [1, 0, -1]

[groups.circle]
level = "circle3"
weyl_generators = []

[group_morphisms.U3_first_entry]
source = "circle"
target = "U3"
torus_map = "first_entry"
f_star = []
"#;

/// Arbitrary-precision integer as it appears in a scene file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneInt(pub BigInt);

impl Serialize for SceneInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for SceneInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = SceneInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<SceneInt, E> {
                Ok(SceneInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<SceneInt, E> {
                Ok(SceneInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<SceneInt, E> {
                BigInt::from_str(v.trim())
                    .map(SceneInt)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub type SceneMatrix = Vec<Vec<SceneInt>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<String>,
    pub matrix: SceneMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub kind: MorphismKind,
    pub matrix: SceneMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub level: String,
    #[serde(default)]
    pub weyl_generators: Vec<SceneMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<SceneInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMorphismSpec {
    pub source: String,
    pub target: String,
    pub torus_map: String,
    #[serde(default)]
    pub f_star: Vec<SceneMatrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tori: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub levels: BTreeMap<String, LevelSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub group_morphisms: BTreeMap<String, GroupMorphismSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SceneFormat {
    Toml,
    Json,
}

impl SceneFormat {
    /// JSON for `.json` paths, TOML otherwise.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => SceneFormat::Json,
            _ => SceneFormat::Toml,
        }
    }
}

impl SceneFile {
    pub fn parse(text: &str, format: SceneFormat) -> Result<Self> {
        match format {
            SceneFormat::Toml => {
                toml::from_str(text).map_err(|e| Error::Invalid(format!("scene: {e}")))
            }
            SceneFormat::Json => {
                serde_json::from_str(text).map_err(|e| Error::Invalid(format!("scene: {e}")))
            }
        }
    }

    pub fn serialize(&self, format: SceneFormat) -> Result<String> {
        match format {
            SceneFormat::Toml => {
                toml::to_string(self).map_err(|e| Error::Invalid(format!("scene: {e}")))
            }
            SceneFormat::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Invalid(format!("scene: {e}"))),
        }
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN_SCENE, SceneFormat::Toml).expect("built-in scene parses")
    }

    /// Resolves references and re-validates every object.
    pub fn load(&self, closure_cap: usize) -> Result<Scene> {
        let mut names = BTreeSet::new();
        for n in self.morphisms.keys() {
            names.insert(n);
        }
        if let Some(n) = self.group_morphisms.keys().find(|n| names.contains(n)) {
            return Err(Error::Invalid(format!(
                "{n:?} names both a morphism and a group morphism"
            )));
        }

        let torus_rank =
            |kind: &str, owner: &str, name: &Option<String>| -> Result<Option<usize>> {
                match name {
                    None => Ok(None),
                    Some(t) => self.tori.get(t).copied().map(Some).ok_or_else(|| {
                        Error::Invalid(format!("{kind} {owner:?} refers to unknown torus {t:?}"))
                    }),
                }
            };

        let mut levels = BTreeMap::new();
        for (name, spec) in &self.levels {
            let m = matrix(&spec.matrix, &format!("level {name:?}"))?;
            if !m.is_square() {
                return Err(Error::Invalid(format!("level {name:?} is not square")));
            }
            if let Some(r) = torus_rank("level", name, &spec.torus)? {
                if r != m.rows() {
                    return Err(Error::Invalid(format!(
                        "level {name:?} has rank {}, its torus {r}",
                        m.rows()
                    )));
                }
            }
            let level =
                Level::new(m).map_err(|e| Error::Invalid(format!("level {name:?}: {e}")))?;
            levels.insert(name.clone(), level);
        }

        let mut morphisms = BTreeMap::new();
        for (name, spec) in &self.morphisms {
            let m = matrix(&spec.matrix, &format!("morphism {name:?}"))?;
            if let Some(r) = torus_rank("morphism", name, &spec.source)? {
                if r != m.cols() {
                    return Err(Error::Invalid(format!(
                        "morphism {name:?} has {} columns, its source rank {r}",
                        m.cols()
                    )));
                }
            }
            if let Some(r) = torus_rank("morphism", name, &spec.target)? {
                if r != m.rows() {
                    return Err(Error::Invalid(format!(
                        "morphism {name:?} has {} rows, its target rank {r}",
                        m.rows()
                    )));
                }
            }
            let f = TorusMorphism::new(m);
            if !f.kind().satisfies(spec.kind) {
                return Err(Error::Invalid(format!(
                    "morphism {name:?} is declared {} but is {}",
                    spec.kind.name(),
                    f.kind().name()
                )));
            }
            morphisms.insert(name.clone(), f);
        }

        let mut groups = BTreeMap::new();
        for (name, spec) in &self.groups {
            let level = levels.get(&spec.level).ok_or_else(|| {
                Error::Invalid(format!(
                    "group {name:?} refers to unknown level {:?}",
                    spec.level
                ))
            })?;
            let gens = spec
                .weyl_generators
                .iter()
                .enumerate()
                .map(|(i, g)| matrix(g, &format!("group {name:?} generator {i}")))
                .collect::<Result<Vec<_>>>()?;
            let weyl = WeylGroup::new(level.rank(), gens)
                .map_err(|e| Error::Invalid(format!("group {name:?}: {e}")))?
                .with_cap(closure_cap);
            let rho = spec
                .rho
                .as_ref()
                .map(|r| r.iter().map(|x| x.0.clone()).collect::<IntVec>());
            let g = CompactGroupData::new(level.clone(), weyl, rho)
                .map_err(|e| Error::Invalid(format!("group {name:?}: {e}")))?;
            groups.insert(name.clone(), g);
        }

        let mut group_morphisms = BTreeMap::new();
        for (name, spec) in &self.group_morphisms {
            let lookup = |g: &String| {
                groups.get(g).cloned().ok_or_else(|| {
                    Error::Invalid(format!(
                        "group morphism {name:?} refers to unknown group {g:?}"
                    ))
                })
            };
            let torus_map = morphisms.get(&spec.torus_map).cloned().ok_or_else(|| {
                Error::Invalid(format!(
                    "group morphism {name:?} refers to unknown morphism {:?}",
                    spec.torus_map
                ))
            })?;
            let f_star = spec
                .f_star
                .iter()
                .enumerate()
                .map(|(i, m)| matrix(m, &format!("group morphism {name:?} f_star {i}")))
                .collect::<Result<Vec<_>>>()?;
            let gm = GroupMorphismData::new(
                lookup(&spec.source)?,
                lookup(&spec.target)?,
                torus_map,
                f_star,
            )
            .map_err(|e| Error::Invalid(format!("group morphism {name:?}: {e}")))?;
            group_morphisms.insert(name.clone(), gm);
        }

        Ok(Scene {
            levels,
            morphisms,
            groups,
            group_morphisms,
        })
    }
}

fn matrix(rows: &SceneMatrix, what: &str) -> Result<IntMat> {
    let big: Vec<IntVec> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    IntMat::from_big_rows(&big).map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

/// A validated scene.
#[derive(Clone, Debug)]
pub struct Scene {
    pub levels: BTreeMap<String, Level>,
    pub morphisms: BTreeMap<String, TorusMorphism>,
    pub groups: BTreeMap<String, CompactGroupData>,
    pub group_morphisms: BTreeMap<String, GroupMorphismData>,
}

impl Scene {
    pub fn level(&self, name: &str) -> Result<&Level> {
        self.levels
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no level named {name:?}")))
    }

    pub fn morphism(&self, name: &str) -> Result<&TorusMorphism> {
        self.morphisms
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no morphism named {name:?}")))
    }

    pub fn group(&self, name: &str) -> Result<&CompactGroupData> {
        self.groups
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no group named {name:?}")))
    }
}
