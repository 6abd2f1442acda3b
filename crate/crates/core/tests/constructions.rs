use std::collections::HashSet;

use proptest::prelude::*;
use setcycles::bits::{binomial, CyclicWord};
use setcycles::constructions::{
    baranyai, brgc, chen_furedi, combo_gray, double_cover, gen_kneser_hc, generate, johnson_hc, kneser_hc,
    middle_hc, GrayMode, Method,
};
use setcycles::graphs::{canonical_cycle, verify_hamilton, FamilySpec, Kind, Mode};
use setcycles::Error;

fn strings(v: &[CyclicWord]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[test]
fn gray_code_examples() {
    assert_eq!(strings(&brgc(1, GrayMode::Greedy).unwrap()), ["0", "1"]);
    assert_eq!(strings(&brgc(2, GrayMode::Greedy).unwrap()), ["00", "01", "11", "10"]);
    let q4 = brgc(4, GrayMode::Reflected).unwrap();
    assert_eq!(q4.len(), 16);
    assert_eq!(q4, brgc(4, GrayMode::Greedy).unwrap());
    assert_eq!(verify_hamilton(&FamilySpec::Hypercube { n: 4 }, &q4, Mode::Cycle), Ok(()));
    assert!(brgc(0, GrayMode::Greedy).is_err());
}

#[test]
fn combination_gray_code_examples() {
    assert_eq!(strings(&combo_gray(4, 2).unwrap()), ["0011", "0110", "0101", "1100", "1010", "1001"]);
    let c = combo_gray(8, 2).unwrap();
    assert_eq!(c.len(), 28);
    assert_eq!(verify_hamilton(&FamilySpec::GenJohnson { n: 8, k: 2, s: 1 }, &c, Mode::Cycle), Ok(()));
    assert_eq!(strings(&combo_gray(5, 5).unwrap()), ["11111"]);
}

#[test]
fn combination_gray_code_is_the_filtered_reflected_code() {
    for n in 1..=10 {
        let full = brgc(n, GrayMode::Reflected).unwrap();
        for k in 0..=n {
            let filtered: Vec<CyclicWord> = full.iter().copied().filter(|x| x.weight() == k).collect();
            assert_eq!(combo_gray(n, k).unwrap(), filtered, "({n},{k})");
        }
    }
}

#[test]
fn baranyai_examples() {
    let sizes: Vec<(usize, usize, usize)> = [(4, 2), (6, 2), (9, 3)]
        .iter()
        .map(|&(n, k)| (n, k, baranyai(n, k).unwrap().groups.len()))
        .collect();
    assert_eq!(sizes, vec![(4, 2, 3), (6, 2, 5), (9, 3, 28)]);
    let bp = baranyai(6, 2).unwrap();
    assert!(bp.groups.iter().all(|g| g.len() == 3));
    bp.validate().unwrap();
    assert!(matches!(baranyai(16, 4), Err(Error::ResourceLimit(_))));
    assert!(matches!(baranyai(7, 3), Err(Error::InvalidParams(_))));
}

#[test]
fn chen_furedi_lengths() {
    for (n, k, len) in [(6, 2, 15), (9, 3, 84), (12, 4, 495), (8, 2, 28), (12, 3, 220)] {
        let r = chen_furedi(n, k).unwrap();
        assert_eq!(r.sequence.len(), len);
        assert_eq!(verify_hamilton(&FamilySpec::Kneser { n, k }, &r.sequence, Mode::Cycle), Ok(()));
    }
    assert!(chen_furedi(6, 3).is_err());
}

#[test]
fn double_cover_parity() {
    for (n, k, kind, len) in [(6, 2, Kind::Cycle, 30), (7, 3, Kind::Cycle, 70), (8, 3, Kind::Path, 112)] {
        let base = kneser_hc(n, k, Method::Auto).unwrap();
        let r = double_cover(n, k, &base.sequence, false).unwrap();
        assert_eq!((r.kind, r.sequence.len()), (kind, len), "H_{n},{k}");
        let mode = if kind == Kind::Cycle { Mode::Cycle } else { Mode::Path };
        assert_eq!(verify_hamilton(&FamilySpec::BipartiteKneser { n, k }, &r.sequence, mode), Ok(()));
    }
    let bad = kneser_hc(6, 2, Method::Auto).unwrap().sequence[..5].to_vec();
    assert!(matches!(double_cover(6, 2, &bad, false), Err(Error::InvalidCertificate(_))));
}

#[test]
fn kneser_routes() {
    assert_eq!(kneser_hc(5, 2, Method::Auto).unwrap().kind, Kind::Path);
    for (n, k) in [(7, 3), (8, 3), (9, 3), (9, 4), (10, 3), (11, 5), (3, 1), (6, 2), (10, 4)] {
        let r = kneser_hc(n, k, Method::Auto).unwrap();
        assert_eq!(r.kind, Kind::Cycle, "K_{n},{k}");
        assert_eq!(verify_hamilton(&FamilySpec::Kneser { n, k }, &r.sequence, Mode::Cycle), Ok(()));
    }
    assert_eq!(kneser_hc(8, 3, Method::FactorGlue).unwrap().kind, Kind::Cycle);
    assert!(kneser_hc(8, 4, Method::FactorGlue).is_err());
    assert!(kneser_hc(7, 3, Method::Brgc).is_err());
}

#[test]
fn middle_levels_cycles() {
    for k in 1..=5 {
        let r = middle_hc(k).unwrap();
        assert_eq!(r.sequence.len() as u64, 2 * binomial(2 * k as u64 + 1, k as u64).unwrap());
    }
}

#[test]
fn johnson_examples() {
    assert_eq!(johnson_hc(5, 2, 0).unwrap().kind, Kind::Path);
    assert_eq!(johnson_hc(5, 3, 1).unwrap().kind, Kind::Path);
    for (n, k, s, len) in [(6, 3, 1, 20), (7, 3, 1, 35), (9, 4, 2, 126), (10, 3, 1, 120)] {
        let r = johnson_hc(n, k, s).unwrap();
        assert_eq!((r.kind, r.sequence.len()), (Kind::Cycle, len), "J_{n},{k},{s}");
    }
    assert!(johnson_hc(4, 2, 2).is_err());
}

#[test]
fn generalized_kneser_examples() {
    let r = gen_kneser_hc(7, 3, 1).unwrap();
    assert_eq!(verify_hamilton(&FamilySpec::GenKneser { n: 7, k: 3, s: 1 }, &r.sequence, Mode::Cycle), Ok(()));
    assert_eq!(gen_kneser_hc(5, 2, 0).unwrap().kind, Kind::Path);
}

#[test]
fn generate_verifies_and_canonicalizes() {
    let specs = [
        "hypercube:n=5",
        "middle:k=3",
        "band:n=5,k=2",
        "bkneser:n=7,k=3",
        "bkneser:n=8,k=3",
        "kneser:n=9,k=3",
        "odd:k=3",
        "johnson:n=7,k=3,s=1",
        "genkneser:n=7,k=2,s=1",
    ];
    for s in specs {
        let f: FamilySpec = s.parse().unwrap();
        let r = generate(&f, Method::Auto).unwrap();
        let mode = if r.kind == Kind::Cycle { Mode::Cycle } else { Mode::Path };
        assert_eq!(verify_hamilton(&f, &r.sequence, mode), Ok(()), "{s}");
        if r.kind == Kind::Cycle {
            assert_eq!(canonical_cycle(&r.sequence), r.sequence, "{s}");
        }
    }
    let f: FamilySpec = "band:n=5,k=1".parse().unwrap();
    assert_eq!(generate(&f, Method::Auto).unwrap().kind, Kind::None);
    assert!(generate(&"kneser:n=7,k=2".parse().unwrap(), Method::Brgc).is_err());
    let combo = generate(&"johnson:n=6,k=3,s=2".parse().unwrap(), Method::Combo).unwrap();
    assert_eq!(combo.sequence.len(), 20);
}

#[test]
fn brute_route_is_bounded() {
    let f = FamilySpec::Kneser { n: 20, k: 5 };
    assert!(matches!(generate(&f, Method::Brute), Err(Error::OutOfScope(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn combo_gray_is_an_exchange_cycle(n in 2usize..=14, k in 1usize..=13) {
        prop_assume!(k < n);
        let c = combo_gray(n, k).unwrap();
        prop_assert_eq!(c.len() as u64, binomial(n as u64, k as u64).unwrap());
        prop_assert_eq!(c.iter().collect::<HashSet<_>>().len(), c.len());
        for i in 0..c.len() {
            let d = c[i].bits() ^ c[(i + 1) % c.len()].bits();
            prop_assert_eq!(d.count_ones(), 2);
        }
    }

    #[test]
    fn brgc_steps_flip_one_bit(n in 1usize..=16) {
        let g = brgc(n, GrayMode::Reflected).unwrap();
        for i in 0..g.len() {
            prop_assert_eq!((g[i].bits() ^ g[(i + 1) % g.len()].bits()).count_ones(), 1);
        }
    }
}
