//! Built-in example categories, each paired with the model blocks its
//! document ships.  The on-disk `.fcat` files under `corpus/` are generated
//! from these builders and checked against them, so the two never drift.

use crate::category::{FiniteCategory, RawCategory};
use crate::format::{self, FcatDocument, ModelBlock};
use crate::model::{ClassSet, ModelStructure};

/// One object, nothing else.
pub fn terminal() -> RawCategory {
    let mut raw = RawCategory::new("terminal");
    raw.object("*");
    raw
}

/// The poset 0 < 1: a single non-identity arrow.
pub fn two() -> RawCategory {
    let mut raw = RawCategory::new("two");
    raw.object("0");
    raw.object("1");
    raw.arrow("f", "0", "1");
    raw
}

/// The chain poset 0 < 1 < 2.
pub fn chain3() -> RawCategory {
    let mut raw = RawCategory::new("chain3");
    raw.object("0");
    raw.object("1");
    raw.object("2");
    raw.arrow("f01", "0", "1");
    raw.arrow("f12", "1", "2");
    raw.arrow("f02", "0", "2");
    raw.composite("f12", "f01", "f02");
    raw
}

/// The 2x2 lattice: bot < a, b < top with incomparable middle.
pub fn diamond() -> RawCategory {
    let mut raw = RawCategory::new("diamond");
    raw.object("bot");
    raw.object("a");
    raw.object("b");
    raw.object("top");
    raw.arrow("bot_a", "bot", "a");
    raw.arrow("bot_b", "bot", "b");
    raw.arrow("a_top", "a", "top");
    raw.arrow("b_top", "b", "top");
    raw.arrow("bot_top", "bot", "top");
    raw.composite("a_top", "bot_a", "bot_top");
    raw.composite("b_top", "bot_b", "bot_top");
    raw
}

// Function-naming for the finite-sets fragment: m_{src}_{dst}_{values},
// one digit per source element, `e` when the source is empty.
fn map_name(src: usize, dst: usize, vals: &[usize]) -> String {
    let tail = if vals.is_empty() {
        "e".to_owned()
    } else {
        vals.iter().map(|v| v.to_string()).collect()
    };
    format!("m_{src}_{dst}_{tail}")
}

fn is_identity_map(src: usize, dst: usize, vals: &[usize]) -> bool {
    src == dst && vals.iter().enumerate().all(|(i, &v)| i == v)
}

/// Finite sets of cardinality 0, 1, 2, 4 with every function between them:
/// 305 morphisms in total, identities included.
pub fn finset0124() -> RawCategory {
    const CARDS: [usize; 4] = [0, 1, 2, 4];
    let mut raw = RawCategory::new("finset0124");
    for n in CARDS {
        raw.object(&n.to_string());
    }
    // all value tuples in dst^src, lexicographic
    let maps_between = |src: usize, dst: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if src == 0 {
            out.push(Vec::new());
            return out;
        }
        if dst == 0 {
            return out;
        }
        let mut vals = vec![0usize; src];
        loop {
            out.push(vals.clone());
            let mut i = src;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                vals[i] += 1;
                if vals[i] < dst {
                    break;
                }
                vals[i] = 0;
            }
        }
    };
    let mut all: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for src in CARDS {
        for dst in CARDS {
            for vals in maps_between(src, dst) {
                if !is_identity_map(src, dst, &vals) {
                    raw.arrow(&map_name(src, dst, &vals), &src.to_string(), &dst.to_string());
                }
                all.push((src, dst, vals));
            }
        }
    }
    for (bsrc, bdst, bvals) in &all {
        if is_identity_map(*bsrc, *bdst, bvals) {
            continue;
        }
        for (asrc, adst, avals) in &all {
            if is_identity_map(*asrc, *adst, avals) || bdst != asrc {
                continue;
            }
            let composed: Vec<usize> = bvals.iter().map(|&i| avals[i]).collect();
            let result = if is_identity_map(*bsrc, *adst, &composed) {
                format!("id_{bsrc}")
            } else {
                map_name(*bsrc, *adst, &composed)
            };
            raw.composite(
                &map_name(*asrc, *adst, avals),
                &map_name(*bsrc, *bdst, bvals),
                &result,
            );
        }
    }
    raw
}

/// The trivial structure on a validated category, as a model block named
/// `triv`: isomorphisms are the weak equivalences, everything cofibers and
/// fibers.
pub fn trivial_block(k: &FiniteCategory) -> ModelBlock {
    let mut m = ModelStructure::trivial(k.clone());
    m.name = "triv".to_owned();
    ModelBlock::from_structure(&m)
}

/// The three structures on `two`, in enumeration order: M1 inverts nothing
/// beyond identities, M2 strips cofibrations, M3 strips fibrations.
pub fn two_blocks(k: &FiniteCategory) -> Vec<ModelBlock> {
    let ids = ClassSet::identities_only(k);
    let all = ClassSet::all(k);
    [
        ("M1", ids.clone(), all.clone(), all.clone()),
        ("M2", all.clone(), ids.clone(), all.clone()),
        ("M3", all.clone(), all, ids),
    ]
    .into_iter()
    .map(|(name, weq, cof, fib)| {
        ModelBlock::from_structure(&ModelStructure::new(name, k.clone(), weq, cof, fib))
    })
    .collect()
}

/// Every shipped document, keyed by its file stem under `corpus/`.
pub fn documents() -> Vec<(&'static str, FcatDocument)> {
    let build = |raw: RawCategory, extra: bool| -> FcatDocument {
        let k = raw.validate().expect("corpus categories validate");
        let mut models = vec![trivial_block(&k)];
        if extra {
            models = two_blocks(&k);
        }
        let mut doc = FcatDocument { categories: vec![raw], models };
        format::canonicalize(&mut doc);
        doc
    };
    vec![
        ("terminal", build(terminal(), false)),
        ("two", build(two(), true)),
        ("chain3", build(chain3(), false)),
        ("diamond", build(diamond(), false)),
        ("finset0124", build(finset0124(), false)),
    ]
}

/// A grammatically fine document whose composition table is not
/// associative; `validate` must reject it.
pub const BROKEN: &str = "category broken\n\
object x\n\
arrow s : x -> x\n\
arrow t : x -> x\n\
compose s . s = t\n\
compose s . t = s\n\
compose t . s = t\n\
compose t . t = s\n";
