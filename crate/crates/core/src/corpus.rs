//! Enumeration of small posets up to isomorphism.
//!
//! Representatives come from naturally labelled relations (every `a < b`
//! has `a` before `b`), deduplicated with [`find_isomorphism`]. The class
//! count can be cross-checked against a labelled enumeration over every
//! relation on `n` points: the labelled count must equal the sum over
//! classes of `n! / |Aut(P)|`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::iso::{automorphism_count, find_isomorphism, invariant, Signature};
use crate::poset::FinPoset;

fn element_labels(n: usize) -> Vec<String> {
    assert!(n <= 26, "corpus labels are single letters");
    (0..n).map(|k| ((b'a' + k as u8) as char).to_string()).collect()
}

/// Naturally labelled posets on `n` points, i.e. strict relations contained in
/// `{(i, j) : i < j}` that are transitive, in increasing bitmask order.
pub fn naturally_labelled(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let labels = element_labels(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut above = vec![0u32; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                above[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            let mut rest = above[i];
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if above[j] & !above[i] != 0 {
                    return false;
                }
            }
            true
        });
        if !transitive {
            continue;
        }
        let leq = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                a == b || above[a] >> b & 1 == 1
            })
            .collect();
        out.push(FinPoset::from_relation(labels.clone(), leq).expect("transitive strict relation"));
    }
    out
}

/// One representative per isomorphism class of posets on exactly `n`
/// elements, labelled `a, b, c, ...`. Cached per `n`.
pub fn posets_of_size(n: usize) -> Arc<Vec<FinPoset>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<FinPoset>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("corpus cache").get(&n) {
        return Arc::clone(hit);
    }
    let reps = Arc::new(dedupe(naturally_labelled(n)));
    cache.lock().expect("corpus cache").insert(n, Arc::clone(&reps));
    reps
}

fn dedupe(candidates: Vec<FinPoset>) -> Vec<FinPoset> {
    let mut buckets: HashMap<(usize, Vec<Signature>), Vec<Arc<FinPoset>>> = HashMap::new();
    let mut reps = Vec::new();
    for p in candidates {
        let p = Arc::new(p);
        let bucket = buckets.entry((p.comparabilities(), invariant(&p))).or_default();
        if bucket.iter().any(|q| find_isomorphism(&p, q).is_some()) {
            continue;
        }
        bucket.push(Arc::clone(&p));
        reps.push(p);
    }
    reps.into_iter().map(|p| (*p).clone()).collect()
}

/// Every class with at most `max` elements, smallest first (the empty poset
/// included).
pub fn posets_up_to(max: usize) -> Vec<FinPoset> {
    (0..=max)
        .flat_map(|n| posets_of_size(n).iter().cloned().collect::<Vec<_>>())
        .collect()
}

/// Number of partial orders on `n` labelled points, by testing every
/// relation on the `n (n - 1)` off-diagonal pairs. Feasible up to `n = 5`.
pub fn count_labelled_posets(n: usize) -> u64 {
    assert!(n <= 5, "2^(n(n-1)) relations; n > 5 is out of reach");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut above = [0u8; 8];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                above[i] |= 1 << j;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| !(above[i] >> j & 1 == 1 && above[j] >> i & 1 == 1)));
        if !antisymmetric {
            continue;
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| above[i] >> j & 1 == 0 || above[j] & !above[i] & !(1 << i) == 0));
        if transitive {
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCountCheck {
    pub n: usize,
    pub classes: usize,
    pub labelled_exhaustive: u64,
    pub labelled_from_classes: u64,
}

impl ClassCountCheck {
    pub fn pass(&self) -> bool {
        self.labelled_exhaustive == self.labelled_from_classes
    }
}

/// Cross-checks the class list for size `n` against the labelled count.
pub fn check_class_count(n: usize) -> ClassCountCheck {
    let reps = posets_of_size(n);
    let factorial: u64 = (1..=n as u64).product();
    let labelled_from_classes = reps.iter().map(|p| factorial / automorphism_count(p) as u64).sum();
    ClassCountCheck {
        n,
        classes: reps.len(),
        labelled_exhaustive: count_labelled_posets(n),
        labelled_from_classes,
    }
}
