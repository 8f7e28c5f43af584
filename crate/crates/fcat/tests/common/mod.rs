//! Helpers shared by the integration-test targets.  Everything here leans
//! on public APIs only; the pieces that exist to double-check the library
//! (the direct right-homotopy search, the hand-reversed structure) are
//! deliberately written from the definitions rather than by calling the
//! code they check.

#![allow(dead_code)]

use std::path::PathBuf;

use fcat::category::{FiniteCategory, MorId, RawCategory};
use fcat::format::FcatDocument;
use fcat::model::{enumerate_model_structures, ModelStructure};
use fcat::universal::product;

pub fn corpus_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{stem}.fcat"))
}

pub fn load_doc(stem: &str) -> FcatDocument {
    fcat::format::parse(&std::fs::read_to_string(corpus_path(stem)).unwrap())
        .unwrap_or_else(|e| panic!("{stem}.fcat: {e}"))
}

pub fn load_category(stem: &str) -> FiniteCategory {
    let doc = load_doc(stem);
    doc.categories[0].validate().unwrap()
}

/// The file's model block resolved over its category.
pub fn load_model(stem: &str, model: &str) -> ModelStructure {
    let doc = load_doc(stem);
    let block = doc.model(model).unwrap_or_else(|| panic!("{stem}: no model {model}"));
    let k = doc.category(&block.category).unwrap().validate().unwrap();
    block.resolve(&k).unwrap()
}

/// Every valid structure on the category, plus nothing else; the census is
/// produced by the library but each member re-verifies.
pub fn all_structures(k: &FiniteCategory) -> Vec<ModelStructure> {
    enumerate_model_structures(k, 100_000).expect("census fits")
}

/// The opposite structure built from raw parts: a fresh category with every
/// arrow reversed and every composite flipped, the weak equivalences kept,
/// cofibrations and fibrations exchanged.  No call to the library's
/// `opposite` or `dual`.
pub fn reversed_structure(m: &ModelStructure) -> ModelStructure {
    let k = &m.base;
    let mut raw = RawCategory::new(&format!("{}_rev", k.name()));
    for o in 0..k.n_objects() {
        raw.object(k.object_name(o));
    }
    for f in 0..k.n_morphisms() {
        if !k.is_identity(f) {
            raw.arrow(k.mor_name(f), k.object_name(k.cod(f)), k.object_name(k.dom(f)));
        }
    }
    for f in 0..k.n_morphisms() {
        for g in 0..k.n_morphisms() {
            if k.is_identity(f) || k.is_identity(g) {
                continue;
            }
            if let Some(c) = k.try_compose(g, f) {
                // g . f = c reads f . g = c once all arrows turn around
                raw.composite(k.mor_name(f), k.mor_name(g), k.mor_name(c));
            }
        }
    }
    let rev = raw.validate().expect("reversal of a category is a category");
    let resolve = |set: &fcat::model::ClassSet| {
        let ids: Vec<MorId> = set
            .members()
            .into_iter()
            .map(|f| rev.mor_index(k.mor_name(f)).expect("same names"))
            .collect();
        fcat::model::ClassSet::from_ids(&rev, &ids)
    };
    ModelStructure::new(
        &format!("{}_rev", m.name),
        rev.clone(),
        resolve(&m.weq),
        resolve(&m.fib),
        resolve(&m.cof),
    )
}

/// Right homotopy decided straight from the definition: some object carries
/// a weak equivalence from the codomain and a fibration onto the
/// self-product splitting the diagonal, and a morphism from the domain
/// hits the pair (alpha, beta) through it.  `None` when the self-product
/// is missing.
pub fn direct_right_homotopic(
    m: &ModelStructure,
    alpha: MorId,
    beta: MorId,
) -> Option<bool> {
    let k = &m.base;
    let (x, y) = (k.dom(alpha), k.cod(alpha));
    assert_eq!((x, y), (k.dom(beta), k.cod(beta)), "pair must be parallel");
    let prod = product(k, y, y)?;
    let diagonal = prod.pair(k, k.identity(y), k.identity(y));
    for path in 0..k.n_objects() {
        for &kappa in k.hom(y, path) {
            if !m.weq.contains(kappa) {
                continue;
            }
            for &eps in k.hom(path, prod.object) {
                if !m.fib.contains(eps) || k.compose(eps, kappa) != diagonal {
                    continue;
                }
                for &omega in k.hom(x, path) {
                    let through = k.compose(eps, omega);
                    if k.compose(prod.to_left, through) == alpha
                        && k.compose(prod.to_right, through) == beta
                    {
                        return Some(true);
                    }
                }
            }
        }
    }
    Some(false)
}
