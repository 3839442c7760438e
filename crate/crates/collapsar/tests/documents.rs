use std::path::PathBuf;

use collapsar::document::{load_any, load_category, load_complex, save_category, save_complex, save_document};
use collapsar_core::fixtures;
use collapsar_core::oracle::{random_acyclic_category, random_delta_complex, GeneratorParams};
use proptest::prelude::*;

fn fixture_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"].iter().collect()
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap()
}

#[test]
fn fixture_files_are_canonical() {
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = load_any(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(save_document(&doc), text, "{}", path.display());
    }
}

#[test]
fn fixture_files_match_the_built_in_fixtures() {
    assert_eq!(load_category(&read("s1cat.json")).unwrap(), fixtures::circle_category());
    assert_eq!(load_category(&read("chain3.json")).unwrap(), fixtures::chain3());
    assert_eq!(load_category(&read("s0cat.json")).unwrap(), fixtures::discrete_pair());
    let s1 = load_complex(&read("s1delta.json")).unwrap();
    assert_eq!(s1, fixtures::circle_complex());
    assert_eq!((s1.vertex_count(), s1.count_of_dim(1)), (2, 2));
    assert_eq!(load_complex(&read("s2delta.json")).unwrap(), fixtures::sphere_complex());
    assert_eq!(load_complex(&read("disc.json")).unwrap(), fixtures::disc_complex());
    assert_eq!(load_complex(&read("triangle.json")).unwrap(), fixtures::full_triangle());
}

#[test]
fn every_truncation_is_rejected() {
    let text = read("s2delta.json");
    for cut in (0..text.trim_end().len()).step_by(7) {
        let err = load_complex(&text[..cut]).unwrap_err();
        assert_eq!(err.tag(), "ParseError", "cut at {cut}");
    }
}

proptest! {
    #[test]
    fn random_documents_round_trip(seed in any::<u64>(), max_size in 1usize..=7) {
        let p = GeneratorParams { max_size, ..GeneratorParams::with_seed(seed) };
        let a = random_acyclic_category(&p);
        let text = save_category(&a);
        prop_assert_eq!(load_category(&text).unwrap(), a);
        let x = random_delta_complex(&p);
        let text = save_complex(&x);
        let back = load_complex(&text).unwrap();
        prop_assert_eq!(save_complex(&back), text);
        prop_assert_eq!(back, x);
    }
}
