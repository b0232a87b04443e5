use std::time::Instant;

use pgcolor::cert::{export_certificate, Certificate};
use pgcolor::orbits::translate_line;
use pgcolor::property_e::*;
use pgcolor::space::{Model, Space};
use pgcolor::spreads::{search_spread, OrbitProfile, SearchOptions, SpreadConstraints};
use sha2::{Digest, Sha256};

#[test]
fn builtin_datasets_verify() {
    let start = Instant::now();
    for (q, size) in [(2, 15), (3, 40), (4, 85), (8, 585)] {
        let (space, cert) = load_paper_dataset(q).unwrap();
        assert_eq!(cert.family.len(), size);
        assert_eq!(PropertyECertificate::expected_size(q), size);
        let r = verify_property_e(&space, &cert).unwrap();
        assert!(r.valid, "q = {q}: {r:?}");
        assert!(r.double_count_ok && r.special_is_spread && r.size_ok);
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn q2_table_is_reproduced_by_expansion() {
    let (space, cert) = load_paper_dataset(2).unwrap();
    let expanded = expand_base_spread(&space, &cert.family[0]).unwrap();
    assert_eq!(format_q2_table(&space, &expanded), q2_table_source());
    assert!(q2_table_source().starts_with("P_0^0={{0,5,10},{1,12,13},"));
    assert_eq!(q2_table_source().lines().count(), 15);
}

#[test]
fn expansion_of_builtin_bases() {
    for q in [2, 4, 8] {
        let (space, cert) = load_paper_dataset(q).unwrap();
        let expanded = expand_base_spread(&space, &cert.family[0]).unwrap();
        assert!(verify_property_e(&space, &expanded).unwrap().valid);
    }
}

#[test]
fn searched_bases_expand_to_property_e() {
    for q in [2, 4] {
        let space = Space::new(3, q, Model::Singer).unwrap();
        let c = SpreadConstraints { profile: Some(OrbitProfile::WithE), ..Default::default() };
        let base = search_spread(&space, &c, SearchOptions::default()).unwrap().found().unwrap();
        let cert = expand_base_spread(&space, &base).unwrap();
        assert!(verify_property_e(&space, &cert).unwrap().valid);
    }
}

#[test]
fn translation_examples() {
    let space = Space::new(3, 2, Model::Singer).unwrap();
    assert_eq!(translate_line(&space, &[0, 5, 10], 1).unwrap(), vec![1, 6, 11]);
    assert_eq!(translate_line(&space, &[0, 11, 12], 7).unwrap(), vec![3, 4, 7]);
}

#[test]
fn dataset_files_are_pinned() {
    let pins = [
        (2, "8bf2a3e331dbe14f00d660591dff1e47efdf1b8746d8dce6a9f2db1785248517"),
        (3, "5da70c91a7da3c064cae852e4f1439de871725a7cf93ab7d392abef8c1a846c9"),
        (4, "2d7f43fcf93335f83473b1a670ca6852e967bcb6f63edb80bf02521538141aba"),
        (8, "2f20676cee145a5a8007d48cb4cc8231e5a3d752dc09e67ddfdef1a61b02acbf"),
    ];
    for (q, pin) in pins {
        assert_eq!(hex::encode(Sha256::digest(dataset_source(q).unwrap())), pin, "q = {q}");
    }
    assert_eq!(
        hex::encode(Sha256::digest(q2_table_source())),
        "1e73c22f83bba78d8cb1891a9bf4f92d89472c0a8fc1cc01cceed50ec6182ac8"
    );
}

#[test]
fn dataset_content_hashes_are_pinned() {
    let pins = [
        (2, "8dcb8f8623b3dc5a23ad3b96c3ae8e77d5bb0995c667a35533c1ce21bcc0dd8e"),
        (3, "606b5d8a6be66e41db54a3d76fe0b1b410ae63e6ae4e4b933666c55aef20b523"),
        (4, "4cb63be218c20b2894fd8d6a4e538f0817795bfe25f1af78a0a8837dabc826c2"),
        (8, "bb3c4b57635fe50cb7d8bed5df61b638f4728bd04bd9301f917dc409cb0e49c8"),
    ];
    for (q, pin) in pins {
        let (space, cert) = load_paper_dataset(q).unwrap();
        let env = export_certificate(&space, &Certificate::PropertyE(cert)).unwrap();
        assert_eq!(env.content_hash, pin, "q = {q}");
        if q == 8 {
            assert!(env.to_json().len() < 10 << 20);
        }
    }
}

#[test]
fn dropping_a_member_breaks_property_e() {
    let (space, mut cert) = load_paper_dataset(3).unwrap();
    cert.family.remove(11);
    let r = verify_property_e(&space, &cert).unwrap();
    assert!(!r.valid && !r.size_ok);
    assert!(!r.condition1.is_empty() || !r.condition2.is_empty());
}
