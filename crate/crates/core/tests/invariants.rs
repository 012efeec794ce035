use std::sync::OnceLock;

use proptest::prelude::*;

use curvetrack::curvegraph::CurveGraphIndex;
use curvetrack::surface::{
    charts, enumerate_curves, flip_coords, flip_edge, intersection_number, shorten, surgery_neighbours,
    validate_coords, NormalCurve, Triangulation,
};

/// Coordinate bound of the sampled curves.
const BOUND: u32 = 4;

fn chart(s05: bool) -> Triangulation {
    if s05 {
        charts::s05()
    } else {
        charts::s12()
    }
}

fn curve(chart: &Triangulation, pick: usize) -> NormalCurve {
    static POOLS: OnceLock<[Vec<NormalCurve>; 2]> = OnceLock::new();
    let pools = POOLS.get_or_init(|| [enumerate_curves(&charts::s05(), BOUND), enumerate_curves(&charts::s12(), BOUND)]);
    let pool = &pools[usize::from(chart.name() != charts::s05().name())];
    pool[pick % pool.len()].clone()
}

fn widen(v: &[u32]) -> Vec<i64> {
    v.iter().map(|&x| i64::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric(s05 in any::<bool>(), a in any::<usize>(), b in any::<usize>()) {
        let ch = chart(s05);
        let (x, y) = (curve(&ch, a), curve(&ch, b));
        prop_assert_eq!(intersection_number(&ch, &x, &y).unwrap(), intersection_number(&ch, &y, &x).unwrap());
        prop_assert_eq!(intersection_number(&ch, &x, &x).unwrap(), 0);
    }

    #[test]
    fn flips_round_trip(s05 in any::<bool>(), a in any::<usize>(), b in any::<usize>(), e in 0usize..9) {
        let ch = chart(s05);
        let e = e % ch.n_edges();
        let Ok(f) = flip_edge(&ch, e) else { return Ok(()) };
        let (x, y) = (curve(&ch, a), curve(&ch, b));
        let fx = validate_coords(&f, &widen(&flip_coords(&ch, e, x.coords()))).unwrap();
        let fy = validate_coords(&f, &widen(&flip_coords(&ch, e, y.coords()))).unwrap();
        prop_assert_eq!(intersection_number(&ch, &x, &y).unwrap(), intersection_number(&f, &fx, &fy).unwrap());
        prop_assert_eq!(flip_coords(&f, e, fx.coords()), x.coords().to_vec());
    }

    #[test]
    fn shortening_pulls_back(s05 in any::<bool>(), a in any::<usize>(), b in any::<usize>()) {
        let ch = chart(s05);
        let (x, y) = (curve(&ch, a), curve(&ch, b));
        let s = shorten(&ch, &[x.clone(), y.clone()]).unwrap();
        prop_assert!(s.curves[0].weight() + s.curves[1].weight() <= x.weight() + y.weight());
        prop_assert_eq!(s.pull_back(&s.curves[0]).unwrap(), x);
        prop_assert_eq!(s.pull_back(&s.curves[1]).unwrap(), y);
    }

    #[test]
    fn surgery_gives_disjoint_curves(s05 in any::<bool>(), a in any::<usize>()) {
        let ch = chart(s05);
        let x = curve(&ch, a);
        for z in surgery_neighbours(&ch, &x) {
            prop_assert_eq!(intersection_number(&ch, &x, &z).unwrap(), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn short_distances_are_symmetric_and_bracketed(s05 in any::<bool>(), a in any::<usize>(), b in any::<usize>()) {
        let ch = chart(s05);
        let index = CurveGraphIndex::build(&ch, 2, 1);
        let (x, y) = (curve(&ch, a), curve(&ch, b));
        let (dxy, dyx) = (index.distance_ext(&x, &y, 10), index.distance_ext(&y, &x, 10));
        if let (Ok(p), Ok(q)) = (&dxy, &dyx) {
            prop_assert!(p.lower <= p.value);
            if p.certified() && q.certified() {
                prop_assert_eq!(p.value, q.value);
            }
            prop_assert_eq!(p.value == 1, intersection_number(&ch, &x, &y).unwrap() == 0 && x != y);
        }
    }
}
