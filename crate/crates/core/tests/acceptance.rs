//! Acceptance suite. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use k3glue::blowup::{BlowupClass, MarkedBlowupModel, Sign};
use k3glue::dh::{
    minimal_circle_profile, single_block_profile, wall_jump, DHProfile, Domain, Interval, Piece,
    PieceKind, QuadPoly, Wall,
};
use k3glue::embeddings::{is_primitive_span, roots_construct};
use k3glue::exact::Inertia;
use k3glue::{build_certificate, plan, verify, AmbientVector, ConstructionCertificate, Lattice, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(30);
const C3_BUDGET: Duration = Duration::from_secs(10);
const C4_BUDGET: Duration = Duration::from_secs(1);
const C7_BUDGET: Duration = Duration::from_secs(30);
/// All equalities below are exact; there is no numeric tolerance.
const SWEEP: std::ops::RangeInclusive<i64> = 5..=200;
const RANDOM_CLASSES: usize = 1000;
const TAMPERINGS: usize = 500;
const SEED: u64 = 0x6b33_676c_7565;

type Outcome = Result<String, String>;

fn r(n: i64) -> Rational {
    Rational::int(n)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(t)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_k3glue"))
}

/// The 10-point profile written out by hand.
fn expected_minimal() -> DHProfile {
    DHProfile {
        domain: Domain::Circle { period: r(10) },
        pieces: vec![
            Piece {
                kind: PieceKind::Free,
                interval: Interval::finite(r(-1), r(1)),
                poly: QuadPoly::from_ints(12, 0, -2),
            },
            Piece {
                kind: PieceKind::FixedMiddle,
                interval: Interval::finite(r(1), r(9)),
                // 2 + (t − 5)²/2
                poly: QuadPoly::new(Rational::frac(29, 2), r(-5), Rational::frac(1, 2)),
            },
        ],
        walls: vec![
            Wall::new(r(1), vec![[2, -1, -1]; 5]).unwrap(),
            Wall::new(r(9), vec![[1, 1, -2]; 5]).unwrap(),
        ],
    }
}

fn criterion1(texts: &mut Vec<String>) -> Outcome {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("k3glue-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("k5.json");
    let st = bin().args(["plan", "--k", "5", "--out"]).arg(&path).status().map_err(|e| e.to_string())?;
    ensure(st.success(), || format!("plan exited with {st}"))?;
    let out = bin().arg("verify").arg(&path).args(["--report", "json"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("verify exited with {}", out.status))?;
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(report["passed"] == true, || "report did not pass".into())?;

    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let cert = ConstructionCertificate::from_json(&text).map_err(|e| e.to_string())?;
    let got = cert.profile.without_overlays();
    let want = expected_minimal();
    ensure(got == want, || format!("profile differs: {got:?}"))?;
    ensure(minimal_circle_profile() == want, || "fixture differs".into())?;
    texts.push(text);
    let t = within(start, C1_BUDGET)?;
    Ok(format!("k = 5 profile exact, verify PASS, {t:.2?}"))
}

fn criterion2(texts: &mut Vec<String>) -> Outcome {
    let start = Instant::now();
    let required = [
        "profile.continuity",
        "profile.wall_jumps",
        "profile.positivity",
        "profile.even_coefficients",
        "profile.overlap_identities",
        "census.fixed_points",
        "census.mixed_signs",
        "lattice.pairings",
        "lattice.primitivity_snf",
        "lattice.primitivity_dual",
        "dh.classes_vs_branches",
        "blowup.manifold_bundle",
    ];
    for k in SWEEP {
        let p = plan(k, None, None).map_err(|e| format!("k = {k}: {e}"))?;
        let cert = build_certificate(&p).map_err(|e| format!("k = {k}: {e}"))?;
        let rep = verify(&cert).map_err(|e| format!("k = {k}: {e}"))?;
        if let Some(c) = rep.failed().next() {
            return Err(format!("k = {k}: {} failed: {:?}", c.name, c.witnesses));
        }
        for name in required {
            ensure(rep.check(name).is_some_and(|c| c.passed), || format!("k = {k}: {name} missing"))?;
        }
        texts.push(cert.to_json());
    }
    let t = within(start, C2_BUDGET)?;
    Ok(format!("k = {}..{} all checks pass, {t:.2?}", SWEEP.start(), SWEEP.end()))
}

fn grid() -> impl Iterator<Item = (usize, i64, i64)> {
    (0..=9usize).flat_map(|k| {
        (2..=40).step_by(2).flat_map(move |a| {
            (-4..=40i64).step_by(2).filter(move |b| 2 * b > -(k as i64)).map(move |b| (k, a, b))
        })
    })
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let l = Lattice::k3();
    let mut n = 0;
    for (k, a, b) in grid() {
        let roots = roots_construct(k, a, b).map_err(|e| format!("({k},{a},{b}): {e}"))?;
        let bad = roots.pairing_violations(&l).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("({k},{a},{b}): {bad:?}"))?;
        let c = is_primitive_span(&l, &roots.span(), Some(&roots.dual_span())).map_err(|e| e.to_string())?;
        ensure(c.snf_primitive && c.dual_identity == Some(true), || {
            format!("({k},{a},{b}): SNF {} dual {:?}", c.snf_primitive, c.dual_identity)
        })?;
        // (κ̂,κ̂) = B, (β,β) = A, (dᵢ,dⱼ) = −2δᵢⱼ, checked independently of the library's list
        ensure(l.norm(&roots.kappa_hat).unwrap() == r(b), || format!("({k},{a},{b}): (κ̂,κ̂)"))?;
        ensure(l.norm(&roots.beta).unwrap() == r(a), || format!("({k},{a},{b}): (β,β)"))?;
        for (i, di) in roots.d.iter().enumerate() {
            for (j, dj) in roots.d.iter().enumerate() {
                let want = if i == j { r(-2) } else { r(0) };
                ensure(l.pair(di, dj).unwrap() == want, || format!("({k},{a},{b}): (d{i},d{j})"))?;
            }
        }
        n += 1;
    }
    let t = within(start, C3_BUDGET)?;
    Ok(format!("{n} parameter triples, both methods agree, {t:.2?}"))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let l = Lattice::k3();
    ensure(l.rank() == 22, || format!("rank {}", l.rank()))?;
    ensure(l.is_even(), || "not even".into())?;
    let det = l.determinant();
    ensure(det == (-1).into(), || format!("det {det}"))?;
    let sig = l.signature();
    let want = Inertia { plus: 3, minus: 19, zero: 0 };
    ensure(sig == want, || format!("signature {sig:?}"))?;
    let t = within(start, C4_BUDGET)?;
    Ok(format!("rank 22, even, det −1, signature (3,19), {t:.2?}"))
}

fn criterion5() -> Outcome {
    let m = minimal_circle_profile();
    let free = QuadPoly::from_ints(12, 0, -2);
    let middle = QuadPoly::new(Rational::frac(29, 2), r(-5), Rational::frac(1, 2));
    let jump1 = wall_jump(&m.walls[0]).map_err(|e| e.to_string())?;
    ensure(jump1 == &middle - &free, || format!("t = 1: {jump1}"))?;
    ensure(jump1 == QuadPoly::centered_square(r(0), Rational::frac(5, 2), &r(1)), || format!("t = 1: {jump1}"))?;
    // Crossing t = 9 lands on the free piece one period later.
    let jump9 = wall_jump(&m.walls[1]).map_err(|e| e.to_string())?;
    ensure(jump9 == &free.translate(&r(10)) - &middle, || format!("t = 9: {jump9}"))?;
    ensure(jump9 == QuadPoly::centered_square(r(0), Rational::frac(-5, 2), &r(9)), || format!("t = 9: {jump9}"))?;

    let half = Rational::frac(1, 2);
    let mut n = 0;
    for (k, a, b) in grid().filter(|&(k, _, _)| k >= 1) {
        let p = single_block_profile(k, a, b, &half).map_err(|e| e.to_string())?;
        let kk = k as i64;
        let (left, mid, right) = (&p.pieces[0].poly, &p.pieces[1].poly, &p.pieces[2].poly);
        let at_m4 = wall_jump(&p.walls[0]).map_err(|e| e.to_string())?;
        let at_p4 = wall_jump(&p.walls[1]).map_err(|e| e.to_string())?;
        ensure(at_m4 == mid - left, || format!("({k},{a},{b}) t = −4: {at_m4}"))?;
        ensure(at_p4 == right - mid, || format!("({k},{a},{b}) t = 4: {at_p4}"))?;
        ensure(at_m4 == QuadPoly::centered_square(r(0), Rational::frac(kk, 2), &r(-4)), || {
            format!("({k},{a},{b}) t = −4: {at_m4}")
        })?;
        ensure(at_p4 == QuadPoly::centered_square(r(0), Rational::frac(-kk, 2), &r(4)), || {
            format!("({k},{a},{b}) t = 4: {at_p4}")
        })?;
        n += 1;
    }
    Ok(format!("t = 1, 9 and t = ±4 on {n} grid points match branch differences"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::frac(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn criterion6() -> Outcome {
    let l = Lattice::k3();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_CLASSES {
        let k = rng.gen_range(1..=9usize);
        let a = 2 * rng.gen_range(1..=20i64);
        let b = 2 * rng.gen_range(-1..=20i64);
        let a_b = if 2 * b > -(k as i64) { b } else { 0 };
        let roots = roots_construct(k, a, a_b).map_err(|e| e.to_string())?;
        let model = MarkedBlowupModel::new(l.clone(), roots).map_err(|e| e.to_string())?;
        let e = BlowupClass(AmbientVector::new((0..22).map(|_| random_rational(&mut rng)).collect()));
        let desc = model.euler_descent(&e).map_err(|e| e.to_string())?;
        let n = model.restriction_numbers(&desc).map_err(|e| e.to_string())?;
        ensure(n.iter().all(Rational::is_zero), || format!("class {i}: restrictions {n:?}"))?;
    }

    let mut n = 0;
    for (k, a, b) in grid() {
        let roots = roots_construct(k, a, b).map_err(|e| e.to_string())?;
        let kappa_hat = roots.kappa_hat.clone();
        let model = MarkedBlowupModel::new(l.clone(), roots).map_err(|e| e.to_string())?;
        let kk = k as i64;
        for sign in [Sign::Minus, Sign::Plus] {
            let o = model.kappa_eta_outer(sign).map_err(|e| e.to_string())?;
            let s = sign.value();
            let kh = l.norm(o.kappa_hat.vector()).unwrap();
            let eh = l.norm(o.eta_hat.vector()).unwrap();
            let ke = l.pair(o.kappa_hat.vector(), o.eta_hat.vector()).unwrap();
            ensure(kh == r(a - 8 * kk) && eh == r(b) && ke == r(-2 * s * kk), || {
                format!("({k},{a},{b},{s:+}): ({kh}, {eh}, {ke})")
            })?;
        }
        if k >= 1 {
            let ok = model.is_manifold_bundle(&BlowupClass(-&kappa_hat)).map_err(|e| e.to_string())?;
            ensure(ok, || format!("({k},{a},{b}): −κ̂ not a manifold bundle"))?;
        }
        n += 1;
    }
    Ok(format!("{RANDOM_CLASSES} random descents restrict to 0; table and oddness on {n} grid points"))
}

fn leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                leaves(x, format!("{path}/{k}"), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                leaves(x, format!("{path}/{i}"), out);
            }
        }
        Value::Number(_) => out.push(path),
        Value::String(s) if s == "+" || s == "-" || s.parse::<Rational>().is_ok() => out.push(path),
        _ => {}
    }
}

/// Changes one leaf: integers and rationals by ±1, sign tags flipped.
fn tamper(v: &mut Value, path: &str, rng: &mut ChaCha8Rng) -> String {
    let delta: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let leaf = v.pointer_mut(path).expect("leaf exists");
    let before = leaf.clone();
    *leaf = match &before {
        Value::Number(n) => Value::from(n.as_i64().expect("integer leaf") + delta),
        Value::String(s) if s == "+" => Value::from("-"),
        Value::String(s) if s == "-" => Value::from("+"),
        Value::String(s) => {
            let q: Rational = s.parse().unwrap();
            Value::from((q + r(delta)).to_string())
        }
        _ => unreachable!(),
    };
    format!("{path}: {before} -> {leaf}")
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let cert = build_certificate(&plan(10, None, None).unwrap()).map_err(|e| e.to_string())?;
    ensure(verify(&cert).unwrap().passed, || "base certificate does not pass".into())?;
    let base: Value = serde_json::from_str(&cert.to_json()).unwrap();
    let mut paths = Vec::new();
    leaves(&base, String::new(), &mut paths);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut caught: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..TAMPERINGS {
        let mut v = base.clone();
        let path = &paths[rng.gen_range(0..paths.len())];
        let what = tamper(&mut v, path, &mut rng);
        let text = serde_json::to_string(&v).unwrap();
        let c = ConstructionCertificate::from_json(&text).map_err(|e| format!("{what}: rejected as malformed: {e}"))?;
        let rep = verify(&c).map_err(|e| format!("{what}: {e}"))?;
        ensure(!rep.passed, || format!("{what}: still passes"))?;
        let first = rep.failed().next().unwrap();
        ensure(!first.name.is_empty() && !first.witnesses.is_empty(), || {
            format!("{what}: failure without a named witness")
        })?;
        *caught.entry(first.name.clone()).or_default() += 1;
    }
    let t = within(start, C7_BUDGET)?;
    Ok(format!(
        "{TAMPERINGS} tamperings over {} leaves all FAIL ({} distinct first checks), {t:.2?}",
        paths.len(),
        caught.len()
    ))
}

fn criterion8(texts: &[String]) -> Outcome {
    for text in texts {
        let c = ConstructionCertificate::from_json(text).map_err(|e| e.to_string())?;
        ensure(&c.to_json() == text, || format!("k = {}: re-emitted JSON differs", c.k))?;
    }
    ensure(texts.len() == 1 + SWEEP.count(), || format!("only {} certificates collected", texts.len()))?;
    Ok(format!("{} certificates byte-identical after emit → parse → emit", texts.len()))
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. --nocapture) are accepted and ignored.
    let mut texts = Vec::new();
    let c1 = criterion1(&mut texts);
    let c2 = criterion2(&mut texts);
    let results = [
        ("1 minimal circle profile through the CLI", c1),
        ("2 build and verify sweep", c2),
        ("3 root data grid, pairings and primitivity", criterion3()),
        ("4 K3 lattice invariants", criterion4()),
        ("5 wall-jump normalization", criterion5()),
        ("6 blow-up bookkeeping", criterion6()),
        ("7 mutation robustness", criterion7()),
        ("8 serialization is byte-stable", criterion8(&texts)),
    ];
    let mut failed = 0;
    for (name, res) in &results {
        match res {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
