use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;

use posetal::colimit::{colimit_delta, colimit_pos, condense, transitive_closure};
use posetal::continuity::check_continuity;
use posetal::iso::{are_isomorphic, find_isomorphism};
use posetal::kan::{extend, FunctorPresentation};
use posetal::poset::make_poset;
use posetal::simplicial::{nerve, nerve_map};
use posetal::text::{parse_poset, parse_sset, write_poset, write_sset};
use posetal::{DeltaMap, FinPoset, MonotoneMap, Ordinal, PosetDiagram};

/// A random order on `1..=max` points: a random DAG over a shuffled
/// numbering, closed transitively by the constructor.
fn poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (1..=max)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (
                Just(n),
                vec(prop::bool::weighted(0.4), n * n.saturating_sub(1) / 2),
                perm,
            )
        })
        .prop_map(|(n, bits, perm)| {
            let label = |i: usize| format!("v{}", perm[i]);
            let elements: Vec<String> = (0..n).map(label).collect();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((label(i), label(j)));
                    }
                    k += 1;
                }
            }
            make_poset(&elements, &pairs).expect("a DAG closes to an order")
        })
}

/// Picks one of `items` by an arbitrary index.
fn pick<T: Clone>(items: &[T], seed: usize) -> Option<T> {
    (!items.is_empty()).then(|| items[seed % items.len()].clone())
}

/// The same order with names chosen so that the element numbering is reversed.
fn permuted_copy(p: &FinPoset) -> FinPoset {
    let name = |a: usize| format!("w{}", 9 - a);
    let elements: Vec<String> = (0..p.len()).map(name).collect();
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.leq(a, b) {
                pairs.push((name(a), name(b)));
            }
        }
    }
    make_poset(&elements, &pairs).expect("copy of an order")
}

fn relation_closed(r: &[bool], n: usize) -> Vec<bool> {
    // Floyd–Warshall style reachability
    let mut c = r.to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if c[i * n + k] && c[k * n + j] {
                    c[i * n + j] = true;
                }
            }
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_evaluates_back(a in 0usize..4, b in 0usize..4, seed in any::<usize>()) {
        let f = pick(&DeltaMap::all_maps(Ordinal(a), Ordinal(b)), seed).unwrap();
        prop_assert_eq!(f.factorize().evaluate(), f);
    }

    #[test]
    fn evaluation_is_contravariant(
        p in poset(4),
        (a, b, c) in (0usize..4, 0usize..4, 0usize..4),
        (s1, s2) in (any::<usize>(), any::<usize>()),
    ) {
        let x = nerve(&p, 3);
        let f = pick(&DeltaMap::all_maps(Ordinal(a), Ordinal(b)), s1).unwrap();
        let g = pick(&DeltaMap::all_maps(Ordinal(b), Ordinal(c)), s2).unwrap();
        let gf = posetal::delta::compose(&g, &f).unwrap();
        let (xf, xg, xgf) = (x.evaluate(&f).unwrap(), x.evaluate(&g).unwrap(), x.evaluate(&gf).unwrap());
        for s in 0..x.level_size(c) {
            prop_assert_eq!(xgf[s], xf[xg[s]]);
        }
        let id = x.evaluate(&DeltaMap::identity(Ordinal(a))).unwrap();
        prop_assert!(id.iter().enumerate().all(|(k, &v)| k == v));
    }

    #[test]
    fn nerve_is_functorial(p in poset(4), q in poset(3), r in poset(3), s1 in any::<usize>(), s2 in any::<usize>()) {
        let (p, q, r) = (Arc::new(p), Arc::new(q), Arc::new(r));
        let f = pick(&p.monotone_maps_to(&q), s1).unwrap();
        let g = pick(&q.monotone_maps_to(&r), s2).unwrap();
        let composite = nerve_map(&g.after(&f).unwrap(), 2);
        let stepwise = nerve_map(&g, 2).after(&nerve_map(&f, 2)).unwrap();
        prop_assert_eq!(composite.components(), stepwise.components());
        prop_assert!(nerve_map(&MonotoneMap::identity(Arc::clone(&p)), 2).is_identity());
    }

    #[test]
    fn condensation_merges_exactly_the_cycles(n in 1usize..8, bits in vec(prop::bool::weighted(0.2), 64)) {
        let mut r: Vec<bool> = (0..n * n).map(|k| bits[k]).collect();
        for i in 0..n {
            r[i * n + i] = true;
        }
        let closed = transitive_closure(&r, n);
        prop_assert_eq!(&closed, &relation_closed(&r, n));
        let (class, count) = condense(&closed, n);
        for i in 0..n {
            for j in 0..n {
                let mutual = closed[i * n + j] && closed[j * n + i];
                prop_assert_eq!(class[i] == class[j], mutual);
            }
        }
        // the quotient is already a poset: condensing again changes nothing
        let mut quotient = vec![false; count * count];
        for i in 0..n {
            for j in 0..n {
                if closed[i * n + j] {
                    quotient[class[i] * count + class[j]] = true;
                }
            }
        }
        let (again, again_count) = condense(&transitive_closure(&quotient, count), count);
        prop_assert_eq!(again_count, count);
        prop_assert!(again.iter().enumerate().all(|(k, &c)| k == c));
    }

    #[test]
    fn colimit_cocones_are_jointly_epic(
        posets in vec(poset(3), 1..4),
        edges in vec((any::<usize>(), any::<usize>(), any::<usize>()), 0..5),
    ) {
        let posets: Vec<Arc<FinPoset>> = posets.into_iter().map(Arc::new).collect();
        let mut d = PosetDiagram::new("random");
        for (k, p) in posets.iter().enumerate() {
            d.add_node(format!("n{k}"), Arc::clone(p));
        }
        for (k, (s, t, m)) in edges.into_iter().enumerate() {
            let (s, t) = (s % posets.len(), t % posets.len());
            if let Some(f) = pick(&posets[s].monotone_maps_to(&posets[t]), m) {
                d.add_edge(format!("e{k}"), s, t, f.values().to_vec()).unwrap();
            }
        }
        let c = colimit_pos(&d);
        prop_assert!(c.check(&d).is_ok());
        prop_assert!(c.jointly_surjective());
    }

    #[test]
    fn delta_colimits_are_pos_colimits(
        objects in vec(0usize..3, 1..4),
        edges in vec((any::<usize>(), any::<usize>(), any::<usize>()), 0..4),
    ) {
        let mut d = PosetDiagram::new("ordinals");
        for (k, &n) in objects.iter().enumerate() {
            d.add_node(format!("o{k}"), Arc::new(FinPoset::ordinal(n)));
        }
        for (k, (s, t, m)) in edges.into_iter().enumerate() {
            let (s, t) = (s % objects.len(), t % objects.len());
            let f = pick(&DeltaMap::all_maps(Ordinal(objects[s]), Ordinal(objects[t])), m).unwrap();
            d.add_edge(format!("a{k}"), s, t, f.values().to_vec()).unwrap();
        }
        let pos = colimit_pos(&d);
        match colimit_delta(&d).unwrap() {
            Some(c) => {
                prop_assert_eq!(&c.apex, &pos.apex);
                prop_assert_eq!(c.legs, pos.legs);
            }
            None => prop_assert!(pos.apex.is_empty() || !pos.apex.is_total()),
        }
    }

    #[test]
    fn nerve_truncations_agree(p in poset(4), k in 0usize..4) {
        let x = nerve(&p, 3);
        prop_assert_eq!(x.truncate(k), nerve(&p, k));
        prop_assert!(check_continuity(&x.truncate(k)).pass());
    }

    #[test]
    fn extensions_intersect_to_the_order(p in poset(6)) {
        prop_assert_eq!(p.intersection_of_extensions(), p.relation().to_vec());
        for order in p.linear_extension_orders() {
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[..i] {
                    prop_assert!(!p.lt(a, b));
                }
            }
        }
    }

    #[test]
    fn isomorphic_copies_are_found(p in poset(6)) {
        let copy = Arc::new(permuted_copy(&p));
        let p = Arc::new(p);
        let iso = find_isomorphism(&p, &copy).expect("a relabelled copy is isomorphic");
        prop_assert!(iso.is_isomorphism());
    }

    #[test]
    fn extension_respects_isomorphism(p in poset(4)) {
        let copy = Arc::new(permuted_copy(&p));
        let p = Arc::new(p);
        let h = p.height();
        for f in [FunctorPresentation::inclusion(), FunctorPresentation::product_with(Arc::new(FinPoset::ordinal(1)))] {
            let a = extend(&f, &p, h, h + 3).unwrap();
            let b = extend(&f, &copy, h, h + 3).unwrap();
            prop_assert!(are_isomorphic(a.value(), b.value()));
        }
    }

    #[test]
    fn text_formats_round_trip(p in poset(6)) {
        let parsed = parse_poset(&write_poset("p", &p)).unwrap();
        prop_assert_eq!(&parsed.poset, &p);
        let x = nerve(&p, 2).with_name("n");
        prop_assert_eq!(parse_sset(&write_sset(&x)).unwrap(), x);
    }
}
