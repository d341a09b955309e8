use std::collections::BTreeMap;

use finlang_core::oracle::{build_group, GroupName, DEFAULT_GROUP_BOUND};
use finlang_core::report::StratumSummary;
use finlang_core::rootdata::{config::group_spec_from_config, named_group, GroupSpec};
use finlang_core::{spectral, strata, ChoicePolicy};

fn spec(name: &str, q: u64) -> GroupSpec {
    group_spec_from_config(&named_group(name, q).unwrap()).unwrap()
}

fn breakdown(s: &[StratumSummary]) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for x in s {
        *m.entry((x.ss_label.clone(), x.unipotent_label.clone())).or_insert(0) += x.count;
    }
    m
}

fn oracle(name: &str, q: u64) -> usize {
    build_group(GroupName::parse(name).unwrap(), q, DEFAULT_GROUP_BOUND).unwrap().class_count()
}

#[test]
fn pipelines_match_oracle() {
    for (name, q) in [
        ("sl2", 2),
        ("sl2", 3),
        ("sl2", 5),
        ("gl2", 2),
        ("gl2", 3),
        ("pgl2", 3),
        ("gl3", 2),
        ("torus1", 2),
        ("torus1", 3),
        ("torus1", 4),
        ("torus1", 5),
    ] {
        let g = spec(name, q);
        let a = spectral::summaries(&g, ChoicePolicy::Canonical).unwrap();
        let b = strata::summaries(&g, ChoicePolicy::Canonical).unwrap();
        let ta: usize = a.iter().map(|x| x.count).sum();
        let tb: usize = b.iter().map(|x| x.count).sum();
        assert_eq!(ta, oracle(name, q), "{name}/{q} spectral");
        assert_eq!(tb, ta, "{name}/{q} stratified");
        assert_eq!(breakdown(&a), breakdown(&b), "{name}/{q} breakdown");
    }
}

#[test]
fn larger_groups() {
    for (name, q, n) in [("sl3", 4, 28), ("sl3", 5, 30), ("sp4", 3, 34), ("pgl3", 2, 6)] {
        let g = spec(name, q);
        let ta = spectral::total_count(&g).unwrap();
        let (tb, _) = strata::stratified_count(&g).unwrap();
        assert_eq!((ta, tb), (n, n), "{name}/{q}");
    }
}

#[test]
fn rank_two_oracle() {
    for (name, q) in [("sp4", 3), ("so5", 3)] {
        let g = spec(name, q);
        let o = build_group(GroupName::parse(name).unwrap(), q, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(o.order() as u64, GroupName::parse(name).unwrap().expected_order(q));
        assert_eq!(spectral::total_count(&g).unwrap(), o.class_count(), "{name}/{q}");
        assert_eq!(strata::stratified_count(&g).unwrap().0, o.class_count(), "{name}/{q}");
    }
}

#[test]
fn unipotent_blocks() {
    for (name, n) in [("so5", 6), ("sp4", 6), ("g2", 10)] {
        let g = spec(name, 7);
        let s = strata::summaries(&g, ChoicePolicy::Canonical).unwrap();
        let block: usize = s.iter().filter(|x| x.ss_label.chars().all(|c| "(0,)".contains(c))).map(|x| x.count).sum();
        assert_eq!(block, n, "{name}");
        let d = spectral::summaries(&g, ChoicePolicy::Canonical).unwrap();
        assert_eq!(breakdown(&d), breakdown(&s), "{name}");
    }
}

/// Class count of the unitary group `GU₃(q)` (or `SU₃(q)`) by brute force
/// inside `GL₃(q²)`, with the antidiagonal Hermitian form.
fn unitary_class_count(q: u64, special: bool) -> usize {
    use finlang_core::oracle::Fq;
    use std::collections::HashSet;
    let gl = build_group(GroupName::Gl(3), q * q, DEFAULT_GROUP_BOUND).unwrap();
    let f = gl.field();
    let frob = |x: Fq| if x == 0 { 0 } else { f.power_of_primitive((x as i64 - 1) * q as i64) };
    let det = |m: &[Fq]| {
        let t = |a: usize, b: usize, c: usize| f.mul(m[a], f.mul(m[b], m[c]));
        let plus = f.add(f.add(t(0, 4, 8), t(1, 5, 6)), t(2, 3, 7));
        let minus = f.add(f.add(t(2, 4, 6), t(0, 5, 7)), t(1, 3, 8));
        f.sub(plus, minus)
    };
    let elems: Vec<Vec<Fq>> = gl
        .elements()
        .iter()
        .filter(|m| {
            (0..3).all(|i| {
                (0..3).all(|j| {
                    let s = (0..3).fold(0, |s, k| f.add(s, f.mul(m[k * 3 + i], frob(m[(2 - k) * 3 + j]))));
                    s == Fq::from(i + j == 2)
                })
            })
        })
        .filter(|m| !special || det(m) == 1)
        .cloned()
        .collect();
    let id = gl.identity();
    let inverses: Vec<Vec<Fq>> =
        elems.iter().map(|m| elems.iter().find(|x| gl.product(m, x) == id).unwrap().clone()).collect();
    let mut seen = HashSet::new();
    let mut classes = 0;
    for x in &elems {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for (h, hi) in elems.iter().zip(&inverses) {
            seen.insert(gl.product(&gl.product(h, x), hi));
        }
    }
    classes
}

#[test]
fn unitary_forms() {
    for (iso, special) in [("GL", false), ("sc", true)] {
        let g = finlang_core::rootdata::parse_group_spec(&format!(
            "type = \"A2\"\nisogeny = \"{iso}\"\nq = 2\ntwist = [1, 0]\n"
        ))
        .unwrap();
        let expected = unitary_class_count(2, special);
        assert_eq!(spectral::total_count(&g).unwrap(), expected, "{iso}");
        assert_eq!(strata::stratified_count(&g).unwrap().0, expected, "{iso}");
    }
}

#[test]
fn restriction_of_scalars() {
    // SL₂(F₉) as A1xA1 over F₃ with the factors swapped: q + 4 classes
    let g = finlang_core::rootdata::parse_group_spec("type = \"A1xA1\"\nisogeny = \"sc\"\nq = 3\ntwist = [1, 0]\n")
        .unwrap();
    assert_eq!(spectral::total_count(&g).unwrap(), oracle("sl2", 9));
    assert_eq!(strata::stratified_count(&g).unwrap().0, oracle("sl2", 9));
}

#[test]
fn choice_independence() {
    for (name, q) in [("sl2", 3), ("gl2", 3), ("sp4", 3), ("g2", 7), ("o2", 5)] {
        let g = spec(name, q);
        let base_b = strata::summaries(&g, ChoicePolicy::Canonical).unwrap();
        let base_a = g.is_connected().then(|| spectral::summaries(&g, ChoicePolicy::Canonical).unwrap());
        for seed in 0..10 {
            assert_eq!(strata::summaries(&g, ChoicePolicy::Randomized(seed)).unwrap(), base_b, "{name} {seed}");
            if let Some(a) = &base_a {
                assert_eq!(&spectral::summaries(&g, ChoicePolicy::Randomized(seed)).unwrap(), a, "{name} {seed}");
            }
        }
    }
}
