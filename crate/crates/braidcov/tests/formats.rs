use braidcov::formats::*;
use braidcov_core::covering::{lift_motion, word_motion, Cover, GeometryConfig, Surface};
use braidcov_core::enumeration::{coset_enumerate, isomorphic, materialize, witness_words};
use braidcov_core::presentations::{finite_group_presentation, van_buskirk, FiniteFamily};
use braidcov_core::rewriting::{certify_claims, Budget, SearchMode};
use braidcov_core::words::BraidWord;

#[test]
fn presentation_round_trip() {
    for (name, n) in [("rp2", 1), ("rp2", 4), ("s2", 5), ("annulus", 3), ("dic", 5), ("istar", 0)] {
        let p = named_presentation(name, n).unwrap();
        let text = write_presentation(&p);
        let q = parse_presentation(&text).unwrap();
        assert_eq!(q, p, "{name} {n}");
        assert_eq!(write_presentation(&q), text);
    }
    let p = parse_presentation("# comment\nname: Z3\ngenerators: x1\n\nx1 x1 x1\n").unwrap();
    assert_eq!(materialize(&p, 10).unwrap().order, 3);
    assert!(parse_presentation("name: bad\ngenerators: x1\nx2\n").is_err());
    assert!(parse_presentation("x1 x1\n").is_err());
    assert!(parse_presentation("generators: s1^-1\n").is_err());
}

#[test]
fn coset_table_round_trip() {
    let p = van_buskirk(2).unwrap();
    for sub in [vec![], vec!["s1".parse::<BraidWord>().unwrap()]] {
        let t = coset_enumerate(&p, &sub, 100).unwrap();
        let text = write_coset_table(&t);
        let u = parse_coset_table(&text).unwrap();
        assert_eq!(u, t);
        assert!(u.is_closed(&p));
    }
    assert!(parse_coset_table("label: x\ncosets: 2\ncolumns: x1 x1^-1\n1 1\n").is_err());
    assert!(parse_coset_table("label: x\ncosets: 1\ncolumns: x1 x2\n0 0\n").is_err());
}

#[test]
fn witness_round_trip() {
    let a = materialize(&van_buskirk(2).unwrap(), 100).unwrap();
    let b = materialize(&finite_group_presentation(FiniteFamily::Dic(4)).unwrap(), 100).unwrap();
    let iso = isomorphic(&a, &b).unwrap();
    let pairs = witness_words(&a, &b, &iso);
    let text = write_witness("B2(RP2)", "Dic16", &pairs);
    assert_eq!(parse_witness(&text).unwrap(), pairs);
    // The images generate the target and respect the map.
    for (x, y) in &pairs {
        assert_eq!(iso.map[a.element_of(x).unwrap() as usize], b.element_of(y).unwrap());
    }
}

#[test]
fn certificates_are_bit_exact() {
    let certs = certify_claims(3, SearchMode::Seeded, &Budget::default());
    for c in certs.iter().take(6) {
        let file = CertificateFile {
            schema: CERTIFICATE_SCHEMA,
            presentation: "rp2".into(),
            n: 3,
            claim: c.claim.label.clone(),
            derivation: c.derivation.clone().unwrap(),
        };
        let text = file.to_json();
        let check = check_certificate_text(&text).unwrap();
        assert!(check.ok(), "{}: {check:?}", c.claim.label);
        assert_eq!(CertificateFile::from_json(&text).unwrap(), file);
        let spaced = text.replacen("\"n\": 3", "\"n\":  3", 1);
        assert!(!check_certificate_text(&spaced).unwrap().canonical);
    }
}

#[test]
fn tampered_certificates_fail() {
    let c = certify_claims(2, SearchMode::Seeded, &Budget::default()).into_iter().find(|c| c.claim.label == "delta4").unwrap();
    let mut file = CertificateFile {
        schema: CERTIFICATE_SCHEMA,
        presentation: "rp2".into(),
        n: 2,
        claim: "delta4".into(),
        derivation: c.derivation.unwrap(),
    };
    file.derivation.steps.pop();
    let check = check_certificate_text(&file.to_json()).unwrap();
    assert!(check.canonical && !check.replays);
    file.presentation = "nowhere".into();
    assert!(check_certificate_text(&file.to_json()).is_err());
}

#[test]
fn scene_exports() {
    let cfg = GeometryConfig::default();
    let m = word_motion(Surface::ProjectivePlane, 2, &"r1 s1".parse().unwrap(), &cfg).unwrap();
    let s = lift_motion(&m, Cover::AntipodalSphere).unwrap();
    let text = write_scene(&s);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.contains(':')).collect();
    assert_eq!(rows.len(), s.paths.len());
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 1 + 3 * s.labels.len()));
    assert!(text.contains("labels: 1/0 2/0 1/1 2/1"));
    let svg = write_svg(&s, cfg.tilt);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<text").count(), s.labels.len());

    let m = word_motion(Surface::Annulus, 2, &"t1 s1".parse().unwrap(), &cfg).unwrap();
    let s = lift_motion(&m, Cover::Annulus { d: 3 }).unwrap();
    assert!(write_scene(&s).contains("cover: annulus 3"));
    assert!(write_svg(&s, cfg.tilt).contains(">hole<"));
}

mod text {
    use braidcov::formats::{parse_word_text, word_text};
    use braidcov::random::{random_word, rng, rp2_alphabet};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn word_text_round_trips(seed in any::<u64>(), len in 0usize..40, n in 1u32..6) {
            let w = random_word(&mut rng(seed), &rp2_alphabet(n), len);
            prop_assert_eq!(parse_word_text(&word_text(&w)).unwrap(), w);
        }
    }
}
