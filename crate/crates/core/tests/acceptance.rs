//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use affine_char::cli::ResultDocument;
use affine_char::examples::{
    counterexample, demo_nonfunctoriality, rho_shift_cases, u3_group, u3_to_circle,
};
use affine_char::kview::{f_sharp_through, verify_k_naturality, TeKClass};
use affine_char::lattice::{int_vec, IntMat};
use affine_char::orbit::{
    char_i1_split, char_local_injection, char_through, verify_partial_functoriality, CharElement,
    LocalInjectionMap, OrbitSpace,
};
use affine_char::rl::{f_bang_through, verify_fht_naturality, verify_rl_naturality, PosEnergyRep};
use affine_char::scene::{LevelSpec, MorphismSpec, SceneFile, SceneFormat, SceneInt};
use affine_char::torus::{
    decompose, decompose_with_perp_change, pullback_level, Level, TorusMorphism,
};
use affine_char::weyl::{
    char_general, char_group, char_max_torus, check_decomposable, regroup, rho_shift, sign_flip,
    transposition, CompactGroupData, GroupCharElement, GroupMorphismData, WeylGroup,
};
use affine_char::Error;
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use support::*;

type Outcome = Result<String, String>;

fn elem(space: &OrbitSpace, terms: &[(&[i64], i64)]) -> CharElement {
    let t: Vec<_> = terms
        .iter()
        .map(|(w, c)| (int_vec(w), BigInt::from(*c)))
        .collect();
    CharElement::from_terms(space, t.iter().map(|(w, c)| (w.as_slice(), c.clone()))).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = counterexample();
    let g_tau = pullback_level(&c.g, &c.tau).map_err(|e| e.to_string())?;
    let h_tau = pullback_level(&c.h, &c.tau).map_err(|e| e.to_string())?;
    let s_tau = OrbitSpace::of_level(&c.tau).unwrap();
    let s_g = OrbitSpace::of_level(&g_tau).unwrap();
    let s_h = OrbitSpace::of_level(&h_tau).unwrap();
    ensure(s_h.orbits().len() == 4 && s_g.orbits().len() == 4, || {
        "orbit counts".into()
    })?;

    let x = elem(&s_tau, &[(&[0, 0], 1)]);
    let char_h = char_local_injection(&c.h, &c.tau, &x).unwrap();
    let char_g = char_local_injection(&c.g, &c.tau, &x).unwrap();
    let expected_h = elem(&s_h, &[(&[0], 1), (&[2], 1)]);
    ensure(char_h == expected_h, || format!("char(h) = {char_h}"))?;
    ensure(char_g == elem(&s_g, &[(&[0, 0], 1), (&[1, 1], 1)]), || {
        format!("char(g) = {char_g}")
    })?;
    for w in [[0, 0], [1, 1]] {
        let y = char_local_injection(&c.f, &g_tau, &elem(&s_g, &[(&w, 1)])).unwrap();
        ensure(y == expected_h, || format!("char(f)[{w:?}] = {y}"))?;
    }
    let fg = char_local_injection(&c.f, &g_tau, &char_g).unwrap();
    ensure(fg == char_h.scaled(&BigInt::from(2)), || {
        format!("char(f)char(g) = {fg}")
    })?;
    ensure(demo_nonfunctoriality().reproduces_factor_two(), || {
        "demo report".into()
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("char(f)∘char(g)[(0,0)] = {fg} = 2·char(h)[(0,0)]"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = u3_group();
    let regular = char_group(&g).unwrap();
    ensure(regular.len() == 1, || {
        format!("{} regular orbits", regular.len())
    })?;
    let x = GroupCharElement::basis(&g, regular[0].rep().coords()).unwrap();
    let on_torus = char_max_torus(&g, &x).unwrap();
    ensure(on_torus.terms().len() == 6, || {
        format!("char(i) = {on_torus}")
    })?;
    ensure(on_torus.terms().iter().all(|(_, c)| c.is_one()), || {
        "coefficients".into()
    })?;

    let circle = Level::diagonal(&[-3]).unwrap();
    let s = OrbitSpace::of_level(&circle).unwrap();
    let expected = elem(&s, &[(&[0], 2), (&[1], 2), (&[2], 2)]);
    let composite = char_i1_split(g.level(), 1, &on_torus).unwrap();
    ensure(composite == expected, || format!("composite = {composite}"))?;
    let general = char_general(&u3_to_circle(), &x).unwrap();
    let general_terms: Vec<_> = general
        .terms()
        .iter()
        .map(|(o, c)| (o.clone(), c.clone()))
        .collect();
    let expected_terms: Vec<_> = expected
        .terms()
        .iter()
        .map(|(o, c)| (o.clone(), c.clone()))
        .collect();
    ensure(general_terms == expected_terms, || {
        format!("char(f) = {general}")
    })?;

    let pulled = pullback_level(&TorusMorphism::from_rows(&[[1], [0], [0]]), g.level()).unwrap();
    ensure(pulled == circle, || "pulled-back level".into())?;
    ensure(s.orbits().len() == 3, || "circle orbit count".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "1 regular orbit, 6 torus terms, composite {composite}"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(3);
    for case in 0..1000 {
        let rank = rng.gen_range(1..=4);
        let level = random_positive_level(&mut rng, rank, 500);
        let k = small(level.matrix());
        let keys = ClassKey::new(&k);
        let orbits = OrbitSpace::of_level(&level).unwrap().orbits();
        let distinct: BTreeSet<_> = orbits
            .iter()
            .map(|o| keys.key(&small_vec(o.coords())))
            .collect();
        ensure(
            orbits.len() as i128 == keys.index() && distinct.len() == orbits.len(),
            || {
                format!(
                    "case {case}: {} orbits, |det| = {}, {} distinct",
                    orbits.len(),
                    keys.index(),
                    distinct.len()
                )
            },
        )?;
    }
    within(start, Duration::from_secs(10))?;
    Ok("1000 random levels".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(4);
    for case in 0..500 {
        let c = random_local_injection(&mut rng, 3, 4, 60, 400);
        let report = verify_partial_functoriality(&c.f, &c.level)
            .map_err(|e| format!("case {case}: {e}"))?;
        if let Some(w) = report.witnesses().next() {
            return Err(format!(
                "case {case}: F = {}, K = {}, orbit {}: {} vs {}",
                c.f.matrix(),
                c.level.matrix(),
                w.orbit,
                w.direct,
                w.composite
            ));
        };
    }
    within(start, Duration::from_secs(60))?;
    Ok("500 random local injections".into())
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    for case in 0..200 {
        let c = random_local_injection(&mut rng, 3, 3, 60, 400);
        let f = small(c.f.matrix());
        let k = small(c.level.matrix());
        let kp = pullback_level(&c.f, &c.level).unwrap();
        let keys = ClassKey::new(&small(kp.matrix()));
        let map = LocalInjectionMap::new(&c.f, &c.level).unwrap();
        for orbit in map.source().orbits() {
            let image = map.apply_weight(orbit.coords()).unwrap();
            let got: BTreeSet<_> = image
                .terms()
                .iter()
                .map(|(o, _)| keys.key(&small_vec(o.coords())))
                .collect();
            let want = oracle_image(&f, &k, c.f.source().rank, &small_vec(orbit.coords()));
            ensure(image.terms().iter().all(|(_, c)| c.is_one()), || {
                format!("case {case}: coefficient")
            })?;
            ensure(got == want && got.len() == image.terms().len(), || {
                format!(
                    "case {case}: F = {}, K = {}, orbit {orbit}",
                    c.f.matrix(),
                    c.level.matrix()
                )
            })?;
        }
    }
    Ok("200 random instances against closure oracle".into())
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    for case in 0..300 {
        let c = random_local_injection(&mut rng, 3, 3, 60, 400);
        let k = verify_k_naturality(&c.f, &c.level).map_err(|e| e.to_string())?;
        let r = verify_rl_naturality(&c.f, &c.level).map_err(|e| e.to_string())?;
        let fht = verify_fht_naturality(&c.f, &c.level).map_err(|e| e.to_string())?;
        ensure(k.passed() && r.passed() && fht.passed(), || {
            format!(
                "case {case}: F = {}, K = {}: k {}, rl {}, fht {}",
                c.f.matrix(),
                c.level.matrix(),
                k.passed(),
                r.passed(),
                fht.passed()
            )
        })?;
    }
    Ok("300 random local injections, three squares each".into())
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    for case in 0..200 {
        let c = random_local_injection(&mut rng, 3, 4, 60, 400);
        let map = LocalInjectionMap::new(&c.f, &c.level).unwrap();
        let n = c.level.rank();
        let d = decompose(&c.f, &c.level).unwrap();
        let change = random_unimodular(&mut rng, d.perp_rank);
        let d2 = decompose_with_perp_change(&c.f, &c.level, &change).unwrap();
        ensure(d2.composite() == *c.f.matrix(), || {
            format!("case {case}: composite")
        })?;
        for orbit in map.source().orbits() {
            let shift: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-5..=5)))
                .collect();
            let moved =
                affine_char::lattice::vec_add(orbit.coords(), &c.level.matrix().mul_vec(&shift));
            let base = map.apply_weight(orbit.coords()).unwrap();
            ensure(map.apply_weight(&moved).unwrap() == base, || {
                format!("case {case}: representative")
            })?;
            let oracle = oracle_image(
                &small(c.f.matrix()),
                &small(c.level.matrix()),
                c.f.source().rank,
                &small_vec(&moved),
            );
            let keys = ClassKey::new(&small(map.target().quotient().sublattice_basis()));
            let got: BTreeSet<_> = base
                .terms()
                .iter()
                .map(|(o, _)| keys.key(&small_vec(o.coords())))
                .collect();
            ensure(got == oracle, || {
                format!("case {case}: oracle from shifted representative")
            })?;

            let x = CharElement::basis(map.source(), orbit.coords()).unwrap();
            let a = char_through(&d, &c.level, &x).unwrap();
            let b = char_through(&d2, &c.level, &x).unwrap();
            ensure(a == b, || {
                format!("case {case}: char route depends on the perp basis")
            })?;
            let t = TeKClass::basis(map.source(), orbit.coords()).unwrap();
            ensure(
                f_sharp_through(&d, &c.level, &t).unwrap()
                    == f_sharp_through(&d2, &c.level, &t).unwrap(),
                || format!("case {case}: K route depends on the perp basis"),
            )?;
            let v = PosEnergyRep::irreducible(&c.level, orbit.coords()).unwrap();
            ensure(
                f_bang_through(&d, &c.level, &v).unwrap()
                    == f_bang_through(&d2, &c.level, &v).unwrap(),
                || format!("case {case}: RL route depends on the perp basis"),
            )?;
        }
    }
    Ok("200 instances, shifted representatives and re-based perp lattices".into())
}

/// Weyl group generated by adjacent transpositions inside consecutive blocks,
/// plus a sign flip in each block listed in `signed`.
fn young(n: usize, blocks: &[usize], signed: &[bool]) -> Vec<IntMat> {
    let mut gens = Vec::new();
    let mut start = 0;
    for (b, &size) in blocks.iter().enumerate() {
        for i in start..start + size - 1 {
            gens.push(transposition(n, i, i + 1));
        }
        if signed[b] {
            gens.push(sign_flip(n, start));
        }
        start += size;
    }
    gens
}

fn random_blocks(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        blocks.push(s);
        left -= s;
    }
    blocks
}

fn pad(m: &IntMat, n: usize) -> IntMat {
    m.block_diag(&IntMat::identity(n - m.rows()))
}

fn random_group_morphism(rng: &mut TestRng) -> Option<GroupMorphismData> {
    let n = rng.gen_range(2..=4);
    let signed_mode = rng.gen_bool(0.4);
    let a: i64 = rng.gen_range(3..=6);
    let b: i64 = if signed_mode { 0 } else { rng.gen_range(0..=2) };
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -(if i == j { a } else { 0 }) - b).collect())
        .collect();
    let level = Level::from_rows(&rows).ok()?;
    if level.det().magnitude() > &num_bigint::BigUint::from(1500u32) {
        return None;
    }
    let g_blocks = random_blocks(rng, n);
    let g_signed: Vec<bool> = g_blocks
        .iter()
        .map(|_| signed_mode && rng.gen_bool(0.6))
        .collect();
    let g_weyl = WeylGroup::new(n, young(n, &g_blocks, &g_signed)).ok()?;
    if g_weyl.order().ok()? > 24 {
        return None;
    }
    let g = CompactGroupData::new(level, g_weyl, None).ok()?;

    // H: the first k coordinates, with a refinement of G's blocks.
    let k = rng.gen_range(1..=n);
    let scale = rng.gen_range(1..=2);
    let mut h_gens = Vec::new();
    let mut start = 0;
    for (bi, &size) in g_blocks.iter().enumerate() {
        let end = (start + size).min(k);
        let mut s = start;
        while s < end {
            let len = rng.gen_range(1..=end - s);
            for i in s..s + len - 1 {
                h_gens.push(transposition(k, i, i + 1));
            }
            if g_signed[bi] && rng.gen_bool(0.5) {
                h_gens.push(sign_flip(k, s));
            }
            s += len;
        }
        start += size;
    }
    let f = TorusMorphism::new(
        IntMat::identity(k)
            .scale(&BigInt::from(scale))
            .vstack(&IntMat::zeros(n - k, k))
            .ok()?,
    );
    let h_level = pullback_level(&f, g.level()).ok()?;
    let f_star: Vec<IntMat> = h_gens.iter().map(|s| pad(s, n)).collect();
    let h = CompactGroupData::new(h_level, WeylGroup::new(k, h_gens).ok()?, None).ok()?;
    GroupMorphismData::new(h, g, f, f_star).ok()
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let mut done = 0;
    let mut blocks_checked = 0;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        ensure(attempts < 20_000, || {
            "generator could not produce instances".into()
        })?;
        let Some(m) = random_group_morphism(&mut rng) else {
            continue;
        };
        if !check_decomposable(&m).map_err(|e| e.to_string())?.passed() {
            continue;
        }
        let regular = char_group(&m.target).unwrap();
        if regular.is_empty() {
            continue;
        }
        let order_h = m.source.weyl().order().unwrap();
        let h_elems = m.source.weyl().closure().unwrap().to_vec();
        let keys = ClassKey::new(&small(m.source.level().matrix()));
        for r in regular.iter().take(8) {
            let x = GroupCharElement::basis(&m.target, r.rep().coords()).unwrap();
            let out = char_general(&m, &x).map_err(|e| format!("instance {done}: {e}"))?;
            let torus = char_max_torus(&m.target, &x).unwrap();
            let image = char_local_injection(&m.torus_map, m.target.level(), &torus).unwrap();
            let blocks = regroup(&m.source, &image).unwrap();
            ensure(blocks.len() == out.terms().len(), || "block count".into())?;
            for block in &blocks {
                let orbit: BTreeSet<_> = h_elems
                    .iter()
                    .map(|w| keys.key(&small_vec(&w.mul_vec(block.label.coords()))))
                    .collect();
                ensure(
                    orbit.len() == order_h && block.members.len() == order_h,
                    || {
                        format!(
                            "instance {done}: block {} has {} orbits, |W(H)| = {order_h}",
                            block.label,
                            orbit.len()
                        )
                    },
                )?;
                blocks_checked += 1;
            }
        }
        done += 1;
    }
    Ok(format!(
        "200 instances, {blocks_checked} blocks all regular"
    ))
}

fn criterion_9() -> Outcome {
    for case in rho_shift_cases() {
        let result = rho_shift(&case.low, &case.high);
        match (&result, case.consistent) {
            (Ok(table), true) => {
                let order = case.high.weyl().order().unwrap();
                let high_regular = char_group(&case.high).unwrap().len();
                ensure(table.entries.len() == high_regular, || {
                    format!("{}: count", case.name)
                })?;
                let keys = ClassKey::new(&small(case.high.level().matrix()));
                for e in &table.entries {
                    let orbit: BTreeSet<_> = case
                        .high
                        .weyl()
                        .closure()
                        .unwrap()
                        .iter()
                        .map(|w| keys.key(&small_vec(&w.mul_vec(&e.shifted))))
                        .collect();
                    ensure(orbit.len() == order, || {
                        format!("{}: {} not regular", case.name, e.high_orbit)
                    })?;
                }
            }
            (Err(Error::NotBijective { .. }), false) => {}
            _ => {
                return Err(format!(
                    "{}: unexpected {:?}",
                    case.name,
                    result.map(|t| t.entries.len())
                ))
            }
        }
    }
    // Classical closed forms: level l has l + 1 (SU(2)) and (l+1)(l+2)/2 (SU(3))
    // orbits, represented by dominant weights in the level-l alcove.
    let simple = |name: &str| -> Option<i128> {
        let rest = name
            .strip_prefix("SU(2) level ")
            .or_else(|| name.strip_prefix("SU(3) level "))?;
        rest.parse().ok()
    };
    for case in rho_shift_cases().iter().filter(|c| c.consistent) {
        let Some(l) = simple(&case.name) else {
            continue;
        };
        let table = rho_shift(&case.low, &case.high).unwrap();
        let expected = if case.low.rank() == 1 {
            l + 1
        } else {
            (l + 1) * (l + 2) / 2
        };
        ensure(table.entries.len() as i128 == expected, || {
            format!("{}: count", case.name)
        })?;
        for e in &table.entries {
            let w = small_vec(&e.low_representative);
            ensure(
                w.iter().all(|&x| x >= 0) && w.iter().sum::<i128>() <= l,
                || format!("{}: representative {w:?} outside the alcove", case.name),
            )?;
        }
    }
    Ok(format!("{} data sets", rho_shift_cases().len()))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_affine-char"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn random_scene(rng: &mut TestRng) -> SceneFile {
    let mut scene = SceneFile::default();
    for i in 0..rng.gen_range(1..=4) {
        let rank = rng.gen_range(1..=3);
        let level = random_positive_level(rng, rank, 100);
        let mut matrix: Vec<Vec<SceneInt>> = level
            .matrix()
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(SceneInt).collect())
            .collect();
        if rng.gen_bool(0.2) {
            matrix[0][0] = SceneInt(BigInt::from(-7) * BigInt::from(10).pow(25));
        }
        scene.levels.insert(
            format!("L{i}"),
            LevelSpec {
                torus: None,
                matrix,
            },
        );
        let c = random_local_injection(rng, 2, 3, 60, 400);
        scene.morphisms.insert(
            format!("m{i}"),
            MorphismSpec {
                source: None,
                target: None,
                kind: c.f.kind(),
                matrix: c
                    .f
                    .matrix()
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(SceneInt).collect())
                    .collect(),
            },
        );
    }
    scene
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("affine-char-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let toml_path = dir.join("scene.toml");
    let json_path = dir.join("scene.json");
    let (code, scene_text) = run_cli(&["examples"]);
    ensure(code == 0, || "examples failed".into())?;
    std::fs::write(&toml_path, &scene_text).unwrap();
    let scene =
        SceneFile::parse(std::str::from_utf8(&scene_text).unwrap(), SceneFormat::Toml).unwrap();
    std::fs::write(&json_path, scene.serialize(SceneFormat::Json).unwrap()).unwrap();
    let t = toml_path.to_str().unwrap();
    let j = json_path.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["verify", "counterexample", "--json"],
        vec!["verify", "u3", "--json"],
        vec!["verify", "rho-shift"],
        vec!["orbits", "--scene", t, "--level", "g_tau", "--json"],
        vec!["orbits", "--scene", t, "--group", "U3"],
        vec![
            "induce",
            "--scene",
            t,
            "--morphism",
            "f",
            "--level",
            "g_tau",
            "--all",
            "--json",
        ],
        vec![
            "induce",
            "--scene",
            j,
            "--morphism",
            "U3_first_entry",
            "--json",
        ],
        vec![
            "decompose",
            "--scene",
            t,
            "--morphism",
            "h",
            "--level",
            "tau",
            "--json",
        ],
        vec![
            "verify",
            "fht",
            "--scene",
            t,
            "--morphism",
            "g",
            "--level",
            "tau",
            "--json",
        ],
    ];
    for args in &commands {
        let (c1, o1) = run_cli(args);
        let (c2, o2) = run_cli(args);
        ensure(c1 == 0 && c1 == c2 && o1 == o2, || {
            format!("{args:?}: exit {c1}/{c2}, identical {}", o1 == o2)
        })?;
        if args.contains(&"--json") {
            let doc: ResultDocument = serde_json::from_slice(&o1).map_err(|e| e.to_string())?;
            ensure(doc.to_json().as_bytes() == o1.as_slice(), || {
                format!("{args:?}: document round trip")
            })?;
        }
    }
    let (_, a) = run_cli(&["orbits", "--scene", t, "--level", "tau", "--json"]);
    let (_, b) = run_cli(&["orbits", "--scene", j, "--level", "tau", "--json"]);
    let strip = |x: &[u8]| {
        let mut d: ResultDocument = serde_json::from_slice(x).unwrap();
        d.command.clear();
        d.provenance.input_sha256.clear();
        d
    };
    ensure(strip(&a) == strip(&b), || {
        "TOML and JSON scenes disagree".into()
    })?;

    let mut rng = rng(10);
    let mut scenes = vec![scene];
    scenes.extend((0..100).map(|_| random_scene(&mut rng)));
    for (i, s) in scenes.iter().enumerate() {
        for format in [SceneFormat::Toml, SceneFormat::Json] {
            let text = s.serialize(format).unwrap();
            let back = SceneFile::parse(&text, format).map_err(|e| format!("scene {i}: {e}"))?;
            ensure(back == *s, || format!("scene {i}: {format:?} round trip"))?;
            ensure(back.serialize(format).unwrap() == text, || {
                format!("scene {i}: {format:?} reserialize")
            })?;
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!(
        "{} commands run twice, {} scenes round-tripped",
        commands.len(),
        scenes.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("counterexample reproduction", criterion_1),
        ("U(3) example", criterion_2),
        ("orbit-count law", criterion_3),
        ("partial functoriality", criterion_4),
        ("brute-force oracle equivalence", criterion_5),
        ("naturality squares", criterion_6),
        ("well-definedness invariances", criterion_7),
        ("regularity preservation", criterion_8),
        ("rho-shift verification", criterion_9),
        ("determinism and round-trip", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
