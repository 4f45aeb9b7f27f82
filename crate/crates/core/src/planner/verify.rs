use super::certificate::{vector, ConstructionCertificate, OuterCert};
use super::plan::STANDARD_B;
use crate::blowup::{BlowupClass, MarkedBlowupModel, PairingTable, Sign};
use crate::dh::{check_profile, dh_from_classes, DHProfile, Interval, PieceKind, QuadPoly};
use crate::embeddings::{is_primitive_span, period_preconditions, root_system, roots_construct};
use crate::error::Result;
use crate::exact::Rational;
use crate::lattice::{AmbientVector, Lattice};
use crate::par::Execution;
use crate::report::{CheckResult, VerificationReport};

/// Check names and anchors, in report order.
const PLAN: (&str, &str) = ("plan.invariants", "parameter recipe for the gluing");
const LAYOUT: (&str, &str) = ("profile.layout", "profile prescribed by the plan");
const TILING: (&str, &str) = ("profile.tiling", "pieces tile ℝ/2kℤ");
const PROFILE_CHECKS: [(&str, &str); 5] = [
    ("profile.continuity", "C⁰ gluing across walls and the period"),
    ("profile.wall_jumps", "DH wall crossing at fixed points"),
    ("profile.positivity", "positive DH function"),
    ("profile.even_coefficients", "free pieces: degree ≤ 2, even integer coefficients"),
    ("profile.overlap_identities", "gluing collars match free pieces"),
];
const CENSUS: (&str, &str) = ("census.fixed_points", "exactly 2k fixed points");
const MIXED: (&str, &str) = (
    "census.mixed_signs",
    "non-Hamiltonian: no fixed point with all weights of one sign",
);

/// Per-block checks, in report order.
const BLOCK_CHECKS: [(&str, &str); 12] = [
    ("lattice.parameters", "block data (kⱼ, Aⱼ, B)"),
    ("lattice.reproducible", "explicit root vectors in L"),
    ("lattice.pairings", "pairings of κ̂, β, dᵢ"),
    ("lattice.primitivity_snf", "primitive sublattice (Smith form)"),
    ("lattice.primitivity_dual", "primitive sublattice (dual basis)"),
    ("lattice.period_preconditions", "period point: K, κ, β conditions"),
    ("lattice.root_system", "root system {d ∈ K : (d,d) = −2} = {±dᵢ}"),
    ("blowup.classes", "κ̂_± = q*[ν] + 2Σℰᵢ, η̂_± = −q*[ζ] ± Σℰᵢ/2"),
    ("blowup.pairing_table", "(κ̂_±,κ̂_±) = A − 8k, (η̂_±,η̂_±) = B, (κ̂_±,η̂_±) = ∓2k"),
    ("blowup.primitivity", "q*[ν + 2ℓζ] primitive, primitive embedding ℤ² → H²"),
    ("blowup.manifold_bundle", "Euler class descent with odd restrictions"),
    ("dh.classes_vs_branches", "[σ_t] = κ − tη reproduces each branch"),
];

pub fn verify(cert: &ConstructionCertificate) -> Result<VerificationReport> {
    verify_with(cert, Execution::default())
}

/// Verifies every claim a certificate makes. Only a malformed certificate
/// (see [`ConstructionCertificate::check_shape`]) is an error; everything
/// else shows up as failed checks.
pub fn verify_with(cert: &ConstructionCertificate, exec: Execution) -> Result<VerificationReport> {
    cert.check_shape()?;
    let plan = cert.plan();
    let mut warnings = Vec::new();
    if cert.b != STANDARD_B {
        warnings.push(format!(
            "B = {} overrides the standard B = {STANDARD_B}; gluing is only established for the standard value",
            cert.b
        ));
    }

    let mut checks = Vec::new();

    let mut plan_check = CheckResult::new(PLAN.0, PLAN.1);
    for v in plan.invariant_violations() {
        plan_check.fail(v);
    }
    for (what, n) in [("lattice_certs", cert.lattice_certs.len()), ("blowup_certs", cert.blowup_certs.len())] {
        plan_check.require(n == plan.parts.len(), || {
            format!("{n} {what} for {} parts", plan.parts.len())
        });
    }
    checks.push(plan_check);

    let mut layout = CheckResult::new(LAYOUT.0, LAYOUT.1);
    match plan.expected_profile() {
        Err(e) => layout.fail(format!("no profile for this plan: {e}")),
        Ok(expected) => compare_profiles(&expected, &cert.profile, &mut layout),
    }
    checks.push(layout);

    let mut tiling = CheckResult::new(TILING.0, TILING.1);
    match check_profile(&cert.profile) {
        Ok(results) => {
            checks.push(tiling);
            checks.extend(results);
        }
        Err(e) => {
            tiling.fail(e.to_string());
            checks.push(tiling);
            for (name, anchor) in PROFILE_CHECKS {
                let mut c = CheckResult::new(name, anchor);
                c.fail("not evaluated: profile does not tile its domain");
                checks.push(c);
            }
        }
    }

    let mut census = CheckResult::new(CENSUS.0, CENSUS.1);
    let total: usize = cert.profile.walls.iter().map(|w| w.points.len()).sum();
    census.require(total as i64 == 2 * cert.k, || {
        format!("{total} fixed points, expected 2k = {}", 2 * cert.k)
    });
    checks.push(census);

    let mut mixed = CheckResult::new(MIXED.0, MIXED.1);
    for w in &cert.profile.walls {
        for p in &w.points {
            let pos = p.iter().any(|&x| x > 0);
            let neg = p.iter().any(|&x| x < 0);
            mixed.require(pos && neg, || {
                format!("fixed point at {} has weights {p:?}", w.level)
            });
        }
    }
    checks.push(mixed);

    let l = Lattice::k3();
    let blocks = plan.parts.len().min(cert.lattice_certs.len()).min(cert.blowup_certs.len());
    let per_block: Vec<Vec<CheckResult>> =
        exec.map_range(0..blocks, |j| block_checks(cert, &l, j));
    for (i, (name, anchor)) in BLOCK_CHECKS.iter().enumerate() {
        let mut merged = CheckResult::new(name, anchor);
        for (j, block) in per_block.iter().enumerate() {
            let c = &block[i];
            if !c.passed {
                merged.passed = false;
                merged
                    .witnesses
                    .extend(c.witnesses.iter().map(|w| format!("block {}: {w}", j + 1)));
            }
        }
        if blocks == 0 {
            merged.fail("no blocks to check");
        }
        checks.push(merged);
    }

    let order: Vec<&str> = [PLAN.0, LAYOUT.0, TILING.0]
        .into_iter()
        .chain(PROFILE_CHECKS.iter().map(|c| c.0))
        .chain([CENSUS.0, MIXED.0])
        .chain(BLOCK_CHECKS.iter().map(|c| c.0))
        .collect();
    debug_assert_eq!(checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), order);
    Ok(VerificationReport::new(checks, warnings))
}

fn compare_profiles(expected: &DHProfile, actual: &DHProfile, out: &mut CheckResult) {
    if expected.domain != actual.domain {
        out.fail(format!(
            "domain {:?}, expected {:?}",
            actual.domain, expected.domain
        ));
    }
    if expected.pieces.len() != actual.pieces.len() {
        out.fail(format!(
            "{} pieces, expected {}",
            actual.pieces.len(),
            expected.pieces.len()
        ));
    }
    for (i, (e, a)) in expected.pieces.iter().zip(&actual.pieces).enumerate() {
        out.require(e == a, || {
            format!(
                "piece {i}: {:?} {} on {}, expected {:?} {} on {}",
                a.kind, a.poly, a.interval, e.kind, e.poly, e.interval
            )
        });
    }
    if expected.walls.len() != actual.walls.len() {
        out.fail(format!(
            "{} walls, expected {}",
            actual.walls.len(),
            expected.walls.len()
        ));
    }
    for (i, (e, a)) in expected.walls.iter().zip(&actual.walls).enumerate() {
        out.require(e == a, || {
            format!(
                "wall {i}: {} points at {}, expected {} × {:?} at {}",
                a.points.len(),
                a.level,
                e.points.len(),
                e.points.first(),
                e.level
            )
        });
    }
}

fn block_checks(cert: &ConstructionCertificate, l: &Lattice, j: usize) -> Vec<CheckResult> {
    let mut checks: Vec<CheckResult> = BLOCK_CHECKS
        .iter()
        .map(|(n, a)| CheckResult::new(n, a))
        .collect();
    let plan = cert.plan();
    let kj = plan.parts[j];
    let aj = plan.a(j);
    let b = plan.b;
    let lc = &cert.lattice_certs[j];
    let bc = &cert.blowup_certs[j];

    // lattice.parameters
    {
        let c = &mut checks[0];
        c.require(lc.k == kj, || format!("lattice cert k = {}, plan k_j = {kj}", lc.k));
        c.require(lc.a == aj, || format!("lattice cert A = {}, plan A_j = {aj}", lc.a));
        c.require(lc.b == b, || format!("lattice cert B = {}, plan B = {b}", lc.b));
        c.require(bc.k == kj, || format!("blowup cert k = {}, plan k_j = {kj}", bc.k));
        c.require(lc.d.len() as i64 == kj && lc.duals.d.len() as i64 == kj, || {
            format!("{} roots and {} dual roots for k_j = {kj}", lc.d.len(), lc.duals.d.len())
        });
        c.require(bc.minus.sign == Sign::Minus && bc.plus.sign == Sign::Plus, || {
            "outer classes carry the wrong sign tags".into()
        });
    }
    if !(0..=9).contains(&kj) || lc.d.len() as i64 != kj || lc.duals.d.len() as i64 != kj {
        for c in checks.iter_mut().skip(1) {
            c.fail("not evaluated: block size mismatch");
        }
        return checks;
    }
    let k_us = kj as usize;
    let roots = lc.to_roots(k_us, aj, b);

    // lattice.reproducible
    match roots_construct(k_us, aj, b) {
        Ok(canon) => {
            let c = &mut checks[1];
            let pairs = [
                ("κ̂", vec![&roots.kappa_hat], vec![&canon.kappa_hat]),
                ("β", vec![&roots.beta], vec![&canon.beta]),
                ("d", roots.d.iter().collect(), canon.d.iter().collect()),
                ("κ̂′", vec![&roots.duals.kappa_hat], vec![&canon.duals.kappa_hat]),
                ("β′", vec![&roots.duals.beta], vec![&canon.duals.beta]),
                ("d′", roots.duals.d.iter().collect(), canon.duals.d.iter().collect()),
            ];
            for (name, got, want) in pairs {
                for (i, (g, w)) in got.iter().zip(&want).enumerate() {
                    c.require(g == w, || format!("{name}[{i}] differs from the construction"));
                }
            }
        }
        Err(e) => checks[1].fail(format!("cannot rebuild root data: {e}")),
    }

    // lattice.pairings
    match roots.pairing_violations(l) {
        Ok(v) => v.into_iter().for_each(|w| checks[2].fail(w)),
        Err(e) => checks[2].fail(e.to_string()),
    }

    // lattice.primitivity_snf / _dual
    match is_primitive_span(l, &roots.span(), Some(&roots.dual_span())) {
        Ok(p) => {
            let divs: Vec<String> = p.divisors.iter().map(ToString::to_string).collect();
            let stored: Vec<String> = lc.snf_divisors.iter().map(ToString::to_string).collect();
            checks[3].require(p.snf_primitive, || format!("elementary divisors [{}]", divs.join(", ")));
            checks[3].require(divs == stored, || {
                format!("stored divisors [{}], computed [{}]", stored.join(", "), divs.join(", "))
            });
            checks[4].require(p.dual_identity == Some(true), || {
                "dual witnesses do not pair to the identity".into()
            });
            checks[4].require(p.methods_agree() == Some(true), || {
                format!("methods disagree: SNF {}, dual {:?}", p.snf_primitive, p.dual_identity)
            });
        }
        Err(e) => {
            checks[3].fail(e.to_string());
            checks[4].fail(e.to_string());
        }
    }

    // lattice.period_preconditions
    let kappa = roots.kappa();
    match period_preconditions(l, &kappa, &roots.beta, &roots.d) {
        Ok(rep) => {
            for f in rep.failures() {
                checks[5].fail(format!("{f} fails ((κ,κ) = {}, (β,β) = {})", rep.kappa_norm, rep.beta_norm));
            }
            let want = Rational::int(b) + Rational::frac(kj, 2);
            checks[5].require(rep.kappa_norm == want, || {
                format!("(κ,κ) = {}, expected B + k/2 = {want}", rep.kappa_norm)
            });
        }
        Err(e) => checks[5].fail(e.to_string()),
    }

    // lattice.root_system
    match root_system(l, &roots.d) {
        Ok(found) => {
            let mut want: Vec<AmbientVector> = roots.d.iter().flat_map(|d| [d.clone(), -d]).collect();
            want.sort();
            checks[6].require(found == want, || {
                format!("{} norm −2 vectors in K, expected {}", found.len(), want.len())
            });
        }
        Err(e) => checks[6].fail(e.to_string()),
    }

    let model = match MarkedBlowupModel::new(l.clone(), roots.clone()) {
        Ok(m) => m,
        Err(e) => {
            for c in checks.iter_mut().skip(7) {
                c.fail(e.to_string());
            }
            return checks;
        }
    };

    let collar = |sign: Sign| -> Option<&QuadPoly> {
        let cj = Rational::int(plan.centre(j));
        let four = Rational::int(4);
        let w = &plan.overlap_width;
        let iv = match sign {
            Sign::Minus => Interval::finite(&(&cj - &four) - w, &cj - &four),
            Sign::Plus => Interval::finite(&cj + &four, &(&cj + &four) + w),
        };
        cert.profile
            .pieces
            .iter()
            .find(|p| p.kind == PieceKind::FixedOuter && p.interval == iv)
            .map(|p| &p.poly)
    };

    for (sign, stored) in [(Sign::Minus, &bc.minus), (Sign::Plus, &bc.plus)] {
        outer_checks(&model, sign, stored, &mut checks);

        // dh.classes_vs_branches, outer branch
        if let Ok(o) = model.kappa_eta_outer(sign) {
            match (dh_from_classes(l, o.kappa_hat.vector(), o.eta_hat.vector()), collar(sign)) {
                (Ok(local), Some(global)) => {
                    let recentred = global.translate(&-Rational::int(plan.centre(j)));
                    checks[11].require(local == recentred, || {
                        format!("({sign:?}) classes give {local}, collar recentred is {recentred}")
                    });
                }
                (Err(e), _) => checks[11].fail(e.to_string()),
                (_, None) => checks[11].fail(format!("no {sign:?} collar piece for this block")),
            }
        }
    }

    // blowup.manifold_bundle
    {
        let e_hat = BlowupClass(-&roots.kappa_hat);
        let c = &mut checks[10];
        match model.is_manifold_bundle(&e_hat) {
            Ok(ok) => c.require(ok, || {
                let n = model.restriction_numbers(&e_hat).unwrap_or_default();
                format!("restriction numbers of −κ̂ are {n:?}, not all odd")
            }),
            Err(e) => c.fail(e.to_string()),
        }
        match model.euler_descent(&e_hat) {
            Ok(desc) => {
                c.require(desc.vector() == &(-&kappa), || "descent of −κ̂ is not −κ".into());
                let zero = model
                    .restriction_numbers(&desc)
                    .map(|n| n.iter().all(Rational::is_zero))
                    .unwrap_or(false);
                c.require(zero, || "descended class restricts nontrivially".into());
            }
            Err(e) => c.fail(e.to_string()),
        }
    }

    // dh.classes_vs_branches, middle branch: (β − t(−κ))² = A + (B + k/2)t²
    {
        let cj = Rational::int(plan.centre(j));
        let four = Rational::int(4);
        let iv = Interval::finite(&cj - &four, &cj + &four);
        let middle = cert
            .profile
            .pieces
            .iter()
            .find(|p| p.kind == PieceKind::FixedMiddle && p.interval == iv);
        match (dh_from_classes(l, &roots.beta, &-&kappa), middle) {
            (Ok(local), Some(p)) => {
                let recentred = p.poly.translate(&-cj);
                checks[11].require(local == recentred, || {
                    format!("inner classes give {local}, middle piece recentred is {recentred}")
                });
            }
            (Err(e), _) => checks[11].fail(e.to_string()),
            (_, None) => checks[11].fail("no fixed-middle piece for this block".to_string()),
        }
    }

    checks
}

fn outer_checks(model: &MarkedBlowupModel, sign: Sign, stored: &OuterCert, checks: &mut [CheckResult]) {
    let tag = match sign {
        Sign::Plus => "+",
        Sign::Minus => "−",
    };
    let o = match model.kappa_eta_outer(sign) {
        Ok(o) => o,
        Err(e) => {
            for c in &mut checks[7..10] {
                c.fail(e.to_string());
            }
            return;
        }
    };

    // blowup.classes
    {
        let c = &mut checks[7];
        c.require(o.kappa_hat.is_integral() && o.eta_hat.is_integral(), || {
            format!("κ̂_{tag} or η̂_{tag} is not integral")
        });
        c.require(o.kappa_hat.vector() == &vector(&stored.kappa_hat), || {
            format!("stored κ̂_{tag} differs from β + 2Σdᵢ")
        });
        c.require(o.eta_hat.vector() == &vector(&stored.eta_hat), || {
            format!("stored η̂_{tag} differs from −κ {tag} Σdᵢ/2")
        });
        match model.restriction_numbers(&o.eta_hat) {
            Ok(n) => {
                let want = Rational::int(-sign.value());
                c.require(n.iter().all(|x| *x == want), || {
                    format!("(η̂_{tag}, dᵢ) = {n:?}, expected all {want}")
                });
            }
            Err(e) => c.fail(e.to_string()),
        }
    }

    // blowup.pairing_table
    {
        let c = &mut checks[8];
        let want = PairingTable::expected(model.roots(), sign);
        c.require(o.table == want, || {
            format!("({tag}) computed pairings {:?}, expected {:?}", o.table, want)
        });
        c.require(stored.pairings == o.table, || {
            format!("({tag}) stored pairings {:?}, computed {:?}", stored.pairings, o.table)
        });
    }

    // blowup.primitivity
    match model.outer_primitivity(sign) {
        Ok(p) => {
            let c = &mut checks[9];
            for (coef, cert) in &p.shifted_nu {
                c.require(cert.is_primitive(), || {
                    format!("β + {coef}κ has elementary divisors {:?}", cert.divisors)
                });
                c.require(cert.dual_identity == Some(true), || {
                    format!("β′ does not pair to 1 with β + {coef}κ")
                });
            }
            c.require(p.span.is_primitive(), || {
                format!("span{{κ̂_{tag}, η̂_{tag}}} has elementary divisors {:?}", p.span.divisors)
            });
            let divs: Vec<i64> = p
                .span
                .divisors
                .iter()
                .map(|d| num_traits::ToPrimitive::to_i64(d).unwrap_or(i64::MAX))
                .collect();
            c.require(divs == stored.snf_divisors, || {
                format!("({tag}) stored divisors {:?}, computed {divs:?}", stored.snf_divisors)
            });
        }
        Err(e) => checks[9].fail(format!("({tag}) {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{build_certificate, plan, ConstructionPlan};

    fn cert(k: i64) -> ConstructionCertificate {
        build_certificate(&plan(k, None, None).unwrap()).unwrap()
    }

    fn failing(c: &ConstructionCertificate) -> Vec<String> {
        verify(c).unwrap().failed().map(|c| c.name.clone()).collect()
    }

    #[test]
    fn small_plans_verify() {
        for k in [5, 9, 10, 14, 23, 40] {
            let r = verify(&cert(k)).unwrap();
            assert!(r.passed, "k = {k}: {:?}", r.failed().collect::<Vec<_>>());
            assert!(r.warnings.is_empty());
        }
    }

    #[test]
    fn override_parts_verify() {
        let c = build_certificate(&plan(23, Some(vec![9, 9, 5]), None).unwrap()).unwrap();
        assert!(verify(&c).unwrap().passed);
    }

    #[test]
    fn sequential_matches_parallel() {
        let c = cert(30);
        assert_eq!(
            verify_with(&c, Execution::Sequential).unwrap(),
            verify_with(&c, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn tampered_fields_fail() {
        let mut c = cert(10);
        c.n += 2;
        assert!(failing(&c).contains(&"profile.layout".to_string()));

        let mut c = cert(10);
        c.lattice_certs[1].d[0][7] += 1;
        let f = failing(&c);
        assert!(f.contains(&"lattice.reproducible".to_string()), "{f:?}");

        let mut c = cert(10);
        c.profile.walls[0].points[0] = [1, 1, -2];
        let f = failing(&c);
        assert!(f.contains(&"profile.wall_jumps".to_string()), "{f:?}");

        let mut c = cert(10);
        c.blowup_certs[0].plus.eta_hat[0] -= 1;
        assert_eq!(failing(&c), vec!["blowup.classes".to_string()]);

        let mut c = cert(10);
        c.lattice_certs.pop();
        assert!(failing(&c).contains(&"plan.invariants".to_string()));
    }

    #[test]
    fn nonstandard_b_warns() {
        let p = ConstructionPlan::from_parts(vec![5], 12, 0, Rational::frac(1, 2));
        let c = build_certificate(&p).unwrap();
        let r = verify(&c).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn bad_version_is_error() {
        let mut c = cert(5);
        c.format_version = "other/0".into();
        assert!(verify(&c).is_err());
    }
}
