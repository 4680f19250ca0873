//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p posetal --test acceptance`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetal::colimit::{colimit_delta, colimit_pos, verify_universal};
use posetal::continuity::{check_continuity, density_colimit, fully_faithful_witness, reconstruct, ContinuityReport};
use posetal::corpus::{check_class_count, posets_of_size, posets_up_to};
use posetal::delta::all_pushout_squares;
use posetal::iso::{are_isomorphic, find_isomorphism};
use posetal::kan::{extend, FunctorPresentation};
use posetal::poset::make_poset;
use posetal::simplicial::{nerve, SsetBuilder};
use posetal::{FinPoset, PosetDiagram, TruncatedSimplicialSet};

/// Isomorphism classes of posets with n elements, n = 0..=5.
const UNLABELLED_POSETS: [usize; 6] = [1, 1, 2, 5, 16, 63];
/// Labelled posets on n points, n = 0..=5.
const LABELLED_POSETS: [u64; 6] = [1, 1, 3, 19, 219, 4231];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nerve_continuity_sweep() -> Outcome {
    let start = Instant::now();
    for n in 0..=5 {
        let count = check_class_count(n);
        ensure(count.pass(), || {
            format!("size {n}: generator disagrees with labelled enumeration: {count:?}")
        })?;
        ensure(count.classes == UNLABELLED_POSETS[n], || {
            format!("size {n}: {} classes, expected {}", count.classes, UNLABELLED_POSETS[n])
        })?;
        ensure(count.labelled_exhaustive == LABELLED_POSETS[n], || {
            format!(
                "size {n}: {} labelled posets, expected {}",
                count.labelled_exhaustive, LABELLED_POSETS[n]
            )
        })?;
    }
    let corpus = posets_up_to(5);
    for p in &corpus {
        let report = check_continuity(&nerve(p, 4));
        ensure(report.pass(), || {
            format!("nerve of {} fails:\n{}", p.describe(), report.to_text())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:.1?}"))?;
    Ok(format!("{} posets, 63 classes at size 5, {elapsed:.1?}", corpus.len()))
}

fn reconstruction_round_trip() -> Outcome {
    let corpus = posets_up_to(5);
    for p in &corpus {
        let r = reconstruct(&nerve(p, 4)).map_err(|e| format!("{}: {e}", p.describe()))?;
        ensure(find_isomorphism(&Arc::new(p.clone()), &r.poset).is_some(), || {
            format!("{} reconstructed as {}", p.describe(), r.poset.describe())
        })?;
        ensure(r.iso.is_levelwise_bijective(), || {
            format!("{}: comparison not bijective", p.describe())
        })?;
    }
    Ok(format!("{} posets, 0 failures", corpus.len()))
}

/// Monotone maps counted over all functions.
fn brute_force_monotone(p: &FinPoset, q: &FinPoset) -> usize {
    let (n, m) = (p.len(), q.len());
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let mut count = 0;
    let mut f = vec![0; n];
    'functions: loop {
        if (0..n).all(|a| (0..n).all(|b| !p.leq(a, b) || q.leq(f[a], f[b]))) {
            count += 1;
        }
        for slot in f.iter_mut() {
            *slot += 1;
            if *slot < m {
                continue 'functions;
            }
            *slot = 0;
        }
        return count;
    }
}

fn full_faithfulness() -> Outcome {
    let corpus: Vec<Arc<FinPoset>> = posets_up_to(4).into_iter().map(Arc::new).collect();
    let mut pairs = 0;
    let mut maps = 0;
    for p in &corpus {
        for q in &corpus {
            let expected = brute_force_monotone(p, q);
            let w = fully_faithful_witness(p, q, 1);
            ensure(w.monotone == expected && w.simplicial == expected && w.pass(), || {
                format!(
                    "{} -> {}: {} monotone by brute force, {} enumerated, {} simplicial",
                    p.describe(),
                    q.describe(),
                    expected,
                    w.monotone,
                    w.simplicial
                )
            })?;
            pairs += 1;
            maps += expected;
        }
    }
    Ok(format!("{pairs} pairs, {maps} maps, counts equal"))
}

/// Linear extensions by filtering all permutations.
fn brute_force_extensions(p: &FinPoset) -> Vec<Vec<usize>> {
    fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for j in k..items.len() {
            items.swap(k, j);
            permutations(items, k + 1, out);
            items.swap(k, j);
        }
    }
    let mut all = Vec::new();
    permutations(&mut (0..p.len()).collect(), 0, &mut all);
    all.into_iter()
        .filter(|order| {
            let mut position = vec![0; order.len()];
            for (k, &a) in order.iter().enumerate() {
                position[a] = k;
            }
            (0..p.len()).all(|a| (0..p.len()).all(|b| !p.leq(a, b) || position[a] <= position[b]))
        })
        .collect()
}

fn szpilrajn() -> Outcome {
    let corpus = posets_up_to(5);
    let mut total = 0;
    for p in &corpus {
        let oracle = brute_force_extensions(p);
        let n = p.len();
        let mut meet = vec![true; n * n];
        for order in &oracle {
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[..i] {
                    meet[a * n + b] = false;
                }
            }
        }
        ensure(meet == p.relation(), || {
            format!("{}: oracle intersection differs", p.describe())
        })?;
        ensure(p.intersection_of_extensions() == p.relation(), || {
            format!("{}: intersection of extensions differs from the order", p.describe())
        })?;
        ensure(p.linear_extension_orders().len() == oracle.len(), || {
            format!(
                "{}: {} extensions, oracle finds {}",
                p.describe(),
                p.linear_extension_orders().len(),
                oracle.len()
            )
        })?;
        total += oracle.len();
    }
    Ok(format!("{} posets, {total} linear extensions", corpus.len()))
}

/// Random diagram with at most 4 nodes of at most 4 elements each, and a
/// colimit of at most `max_classes` points in Set so that cocones into
/// 6-element apexes can be enumerated.
fn random_diagram(rng: &mut ChaCha8Rng, name: String, max_classes: usize, rejected: &mut usize) -> PosetDiagram {
    loop {
        let mut d = PosetDiagram::new(name.clone());
        let nodes = rng.gen_range(1..=4);
        let mut posets = Vec::new();
        for k in 0..nodes {
            let size = rng.gen_range(0..=4);
            let p = Arc::new(posets_of_size(size).choose(rng).expect("non-empty class list").clone());
            d.add_node(format!("n{k}"), Arc::clone(&p));
            posets.push(p);
        }
        let edges = rng.gen_range(0..=nodes + 2);
        for e in 0..edges {
            let (s, t) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
            let maps = posets[s].monotone_maps_to(&posets[t]);
            if let Some(f) = maps.choose(rng) {
                d.add_edge(format!("e{e}"), s, t, f.values().to_vec())
                    .expect("monotone");
            }
        }
        let classes = posetal::colimit::colimit_pos_traced(&d).1.set_classes;
        if classes <= max_classes {
            return d;
        }
        *rejected += 1;
    }
}

fn colimit_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cocones = 0;
    let mut largest = 0;
    let mut rejected = 0;
    for k in 0..100 {
        let d = random_diagram(&mut rng, format!("random-{k}"), 6, &mut rejected);
        let c = colimit_pos(&d);
        largest = largest.max(c.apex.len());
        let report = verify_universal(&d, &c, 6).map_err(|e| format!("{}: {e}", d.name))?;
        if let Some(f) = report.first_failure() {
            return Err(format!(
                "{}: apex {} has {} missing and {} multiple mediators ({})",
                d.name,
                f.apex.describe(),
                f.missing_mediator,
                f.multiple_mediators,
                f.witness.clone().unwrap_or_default()
            ));
        }
        cocones += report.cocones_tested();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:.1?}"))?;
    Ok(format!(
        "100 diagrams ({rejected} draws with more than 6 points in Set redrawn), {cocones} cocones checked, largest colimit {largest}, {elapsed:.1?}"
    ))
}

fn pushout_squares() -> Outcome {
    let squares = all_pushout_squares(3);
    for sq in &squares {
        let d = sq.to_poset_diagram();
        let c = colimit_delta(&d)
            .map_err(|e| format!("{}: {e}", sq.name))?
            .ok_or_else(|| format!("{}: no colimit in Δ", sq.name))?;
        ensure(c.apex.is_total() && c.apex.len() == sq.apex.len(), || {
            format!("{}: apex {} but corner [{}]", sq.name, c.apex.describe(), sq.apex.n())
        })?;
        // total orders of equal size have exactly one isomorphism
        let claimed = sq.claimed_cocone();
        let iso = find_isomorphism(&c.apex, &claimed.apex).expect("equal-size chains");
        for (k, (leg, want)) in c.legs.iter().zip(&claimed.legs).enumerate() {
            ensure(
                leg.values()
                    .iter()
                    .map(|&v| iso.apply(v))
                    .eq(want.values().iter().copied()),
                || format!("{}: leg {k} differs from the square's", sq.name),
            )?;
        }
    }
    Ok(format!("{} squares for n <= 3", squares.len()))
}

fn no_coproducts() -> Outcome {
    let mut d = PosetDiagram::new("two points");
    d.add_node("x", Arc::new(FinPoset::ordinal(0)));
    d.add_node("y", Arc::new(FinPoset::ordinal(0)));
    let delta = colimit_delta(&d).map_err(|e| e.to_string())?;
    ensure(delta.is_none(), || "colimit_delta returned a cocone".into())?;
    let apex = colimit_pos(&d).apex;
    let antichain = make_poset(&["a", "b"], &[]).expect("antichain");
    ensure(are_isomorphic(&apex, &antichain), || {
        format!("Pos colimit is {}", apex.describe())
    })?;
    Ok("Δ: none, Pos: 2-antichain".into())
}

fn density() -> Outcome {
    let corpus = posets_up_to(4);
    for p in &corpus {
        let p = Arc::new(p.clone());
        let res = density_colimit(&p, p.height()).map_err(|e| e.to_string())?;
        ensure(
            res.comparison.is_isomorphism() && are_isomorphic(&res.cocone.apex, &p),
            || format!("{}: colimit of chains is {}", p.describe(), res.cocone.apex.describe()),
        )?;
    }
    Ok(format!("{} posets", corpus.len()))
}

/// `P × [1]` built directly from the componentwise order.
fn times_arrow(p: &FinPoset) -> FinPoset {
    let label = |a: usize, b: usize| format!("({},{b})", p.label(a));
    let mut elements = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in 0..2 {
            elements.push(label(a, b));
            for c in 0..p.len() {
                for d in b..2 {
                    if p.leq(a, c) {
                        pairs.push((label(a, b), label(c, d)));
                    }
                }
            }
        }
    }
    make_poset(&elements, &pairs).expect("componentwise order")
}

fn kan_identity() -> Outcome {
    let inclusion = FunctorPresentation::inclusion();
    let with_arrow = FunctorPresentation::product_with(Arc::new(FinPoset::ordinal(1)));
    let corpus = posets_up_to(4);
    let mut latest = 0;
    for p in &corpus {
        let p = Arc::new(p.clone());
        let h = p.height();
        let res = extend(&inclusion, &p, h, h + 3).map_err(|e| format!("{}: {e}", p.describe()))?;
        ensure(are_isomorphic(res.value(), &p), || {
            format!("{}: inclusion extends to {}", p.describe(), res.value().describe())
        })?;
        ensure(res.stabilization <= h + 1, || {
            format!("{}: stabilized only at {}", p.describe(), res.stabilization)
        })?;
        latest = latest.max(res.stabilization - h);
        let res = extend(&with_arrow, &p, h, h + 3).map_err(|e| format!("{}: {e}", p.describe()))?;
        let expected = times_arrow(&p);
        ensure(are_isomorphic(res.value(), &expected), || {
            format!(
                "{}: product-with-[1] extends to {}",
                p.describe(),
                res.value().describe()
            )
        })?;
    }
    Ok(format!(
        "{} posets, both functors, stable within height + {latest}",
        corpus.len()
    ))
}

fn failed_checks(report: &ContinuityReport) -> Vec<String> {
    report.failures().iter().map(|v| v.check.clone()).collect()
}

/// What a corruption must trip: identity validation together with a named
/// check, or one named check and nothing else beyond validation.
enum Expect {
    Validation(&'static str),
    Check(&'static str),
}

fn corruption(name: &str, x: &TruncatedSimplicialSet, expect: Expect) -> Result<String, String> {
    let report = check_continuity(x);
    let failed = failed_checks(&report);
    ensure(!report.pass(), || format!("{name}: passes every check"))?;
    let validation_fails = x.validate().is_err();
    match expect {
        Expect::Validation(named) => {
            ensure(validation_fails, || format!("{name}: validates"))?;
            ensure(failed.iter().any(|c| c == named), || {
                format!("{name}: {named} passes; failures {failed:?}")
            })?;
            Ok(format!("{name} -> validation ({})", failed.join(", ")))
        }
        Expect::Check(named) => {
            let beyond: Vec<&String> = failed.iter().filter(|c| *c != "simplicial-identities").collect();
            ensure(beyond == [named], || {
                format!("{name}: expected only {named}, failures {failed:?}")
            })?;
            Ok(format!(
                "{name} -> {named}{}",
                if validation_fails { " + validation" } else { "" }
            ))
        }
    }
}

fn negative_suite() -> Outcome {
    let arrow = nerve(&FinPoset::ordinal(1), 1);
    let mut results = Vec::new();

    let mut b = arrow.to_builder();
    b.simplex(1, "(0,1)'").map_err(|e| e.to_string())?;
    b.face(1, 0, "(0,1)'", "1").face(1, 1, "(0,1)'", "0");
    let duplicate = b.build_unchecked().map_err(|e| e.to_string())?;
    results.push(corruption(
        "duplicate 1-simplex",
        &duplicate,
        Expect::Check("relation-injective"),
    )?);

    let mut b = nerve(&FinPoset::ordinal(1), 2).to_builder();
    b.set_degeneracy(1, 0, "(0,1)", "(0,1,1)");
    let broken = b.build_unchecked().map_err(|e| e.to_string())?;
    ensure(broken.validate().is_err(), || "broken identity validates".into())?;
    results.push(corruption(
        "broken identity",
        &broken,
        Expect::Validation("degeneracy-formula[n=1,i=0]"),
    )?);

    let mut b = arrow.to_builder();
    b.remove_simplex(1, "(1,1)");
    b.set_degeneracy(0, 0, "1", "(0,1)");
    let unreflexive = b.build_unchecked().map_err(|e| e.to_string())?;
    results.push(corruption(
        "missing reflexive 1-simplex",
        &unreflexive,
        Expect::Validation("reflexivity"),
    )?);

    let mut b = nerve(&FinPoset::ordinal(2), 2).to_builder();
    b.set_face(2, 1, "(0,1,2)", "(0,1)");
    let rewired = b.build_unchecked().map_err(|e| e.to_string())?;
    results.push(corruption(
        "rewired d1",
        &rewired,
        Expect::Check("face-formula[n=2,i=1]"),
    )?);

    let mut b = SsetBuilder::new("symmetric", 1);
    for v in ["0", "1"] {
        b.simplex(0, v).map_err(|e| e.to_string())?;
    }
    for (id, lo, hi) in [
        ("(0,0)", "0", "0"),
        ("(1,1)", "1", "1"),
        ("(0,1)", "0", "1"),
        ("(1,0)", "1", "0"),
    ] {
        b.simplex(1, id).map_err(|e| e.to_string())?;
        b.face(1, 1, id, lo).face(1, 0, id, hi);
    }
    b.degeneracy(0, 0, "0", "(0,0)").degeneracy(0, 0, "1", "(1,1)");
    let symmetric = b.build().map_err(|e| e.to_string())?;
    results.push(corruption("symmetric pair", &symmetric, Expect::Check("antisymmetry"))?);

    Ok(results.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("nerve continuity sweep", nerve_continuity_sweep),
        ("reconstruction round trip", reconstruction_round_trip),
        ("full faithfulness", full_faithfulness),
        ("linear extensions recover the order", szpilrajn),
        ("colimit engine soundness", colimit_soundness),
        ("pushout squares in Δ", pushout_squares),
        ("no coproducts in Δ", no_coproducts),
        ("density", density),
        ("Kan extension identity", kan_identity),
        ("negative suite", negative_suite),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(summary) => println!("criterion {:>2} PASS  {name}: {summary}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
