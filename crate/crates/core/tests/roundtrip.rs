use k3glue::{build_certificate, plan, verify, ConstructionCertificate, VerificationReport};

#[test]
fn certificate_json_is_stable() {
    for k in [5, 6, 13, 23, 77] {
        let text = build_certificate(&plan(k, None, None).unwrap()).unwrap().to_json();
        let back = ConstructionCertificate::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text, "k = {k}");
    }
}

#[test]
fn report_json_round_trips() {
    let c = build_certificate(&plan(10, None, None).unwrap()).unwrap();
    let r = verify(&c).unwrap();
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn rationals_are_strings() {
    let c = build_certificate(&plan(5, None, None).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    assert_eq!(v["overlap_width"], "1/2");
    assert_eq!(v["profile"]["period"], "10");
    assert_eq!(v["blowup_certs"][0]["plus"]["pairings"]["kappa_eta"], "-10");
}

#[test]
fn unknown_version_rejected() {
    let c = build_certificate(&plan(5, None, None).unwrap()).unwrap();
    let text = c.to_json().replace("k3glue-certificate/1", "k3glue-certificate/9");
    assert!(ConstructionCertificate::from_json(&text).is_err());
}

#[test]
fn short_vector_rejected() {
    let mut c = build_certificate(&plan(5, None, None).unwrap()).unwrap();
    c.lattice_certs[0].beta.pop();
    assert!(ConstructionCertificate::from_json(&c.to_json()).is_err());
}
