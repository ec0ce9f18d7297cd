use std::collections::HashSet;

use dqdet::permutation::{decompose, enumerate, Convention, Permutation};
use proptest::prelude::*;

fn conventions(n: usize) -> Vec<Convention> {
    let mut cs = vec![Convention::MinFirstDesc, Convention::MaxFirstDesc];
    for a in 1..=n {
        cs.push(Convention::AnchoredRow(a));
        cs.push(Convention::AnchoredColumn(a));
    }
    cs
}

#[test]
fn enumerations_are_complete_and_canonical() {
    for n in 1..=7 {
        let factorial: usize = (1..=n).product();
        for conv in conventions(n) {
            let all = enumerate(n, conv, 9).unwrap();
            assert_eq!(all.len(), factorial, "n = {n}, {conv:?}");
            let mut seen = HashSet::new();
            for d in &all {
                let p = d.to_permutation();
                assert!(seen.insert(p.images()), "duplicate {d} for {conv:?}");
                assert_eq!(&decompose(&p, conv).unwrap(), d);
                assert_eq!(d.sign(), p.parity_sign(), "{d}");
            }
        }
    }
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn reversing_a_cycle_keeps_the_sign(images in permutation(9), pick in any::<prop::sample::Index>()) {
        let p = Permutation::from_images(&images).unwrap();
        for conv in conventions(images.len()) {
            let d = decompose(&p, conv).unwrap();
            let idx = pick.index(d.num_cycles());
            prop_assert_eq!(d.reverse_cycle(idx).sign(), d.sign());
        }
    }

    #[test]
    fn canonical_leaders(images in permutation(9)) {
        let n = images.len();
        let p = Permutation::from_images(&images).unwrap();

        let moore = decompose(&p, Convention::MinFirstDesc).unwrap().cycles_one_based();
        for c in &moore {
            prop_assert_eq!(c[0], *c.iter().min().unwrap());
        }
        prop_assert!(moore.windows(2).all(|w| w[0][0] > w[1][0]));

        let chen = decompose(&p, Convention::MaxFirstDesc).unwrap().cycles_one_based();
        prop_assert_eq!(chen[0][0], n);
        for c in &chen {
            prop_assert_eq!(c[0], *c.iter().max().unwrap());
        }
        prop_assert!(chen.windows(2).all(|w| w[0][0] > w[1][0]));
    }

    #[test]
    fn anchored_conventions_place_the_anchor(images in permutation(9), pick in any::<prop::sample::Index>()) {
        let n = images.len();
        let a = pick.index(n) + 1;
        let p = Permutation::from_images(&images).unwrap();
        let row = decompose(&p, Convention::AnchoredRow(a)).unwrap().cycles_one_based();
        prop_assert_eq!(row[0][0], a);
        prop_assert!(row[1..].windows(2).all(|w| w[0][0] < w[1][0]));
        let col = decompose(&p, Convention::AnchoredColumn(a)).unwrap().cycles_one_based();
        prop_assert_eq!(col.last().unwrap()[0], a);
        prop_assert!(col[..col.len() - 1].windows(2).all(|w| w[0][0] > w[1][0]));
    }

    #[test]
    fn display_round_trips_through_cycles(images in permutation(9)) {
        let p = Permutation::from_images(&images).unwrap();
        let d = decompose(&p, Convention::MaxFirstDesc).unwrap();
        let text = d.to_string();
        let parsed: Vec<Vec<usize>> = text
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(")(")
            .map(|c| c.split(' ').map(|x| x.parse().unwrap()).collect())
            .collect();
        prop_assert_eq!(parsed, d.cycles_one_based());
    }
}
