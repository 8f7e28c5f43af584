//! The homotopy category: quotient of the fibrant-cofibrant part by the
//! homotopy relation.
//!
//! [`check_congruence`] establishes by exhaustion that the tabulated
//! relation is an equivalence on every hom-set and compatible with
//! composition on both sides.  [`quotient`] then collapses each class to a
//! single morphism — named after its least member — and re-validates the
//! result, so a [`HoCategory`] always contains a genuine category together
//! with a projection that is a functor by construction.
//!
//! [`emit_for_iteration`] serializes the quotient as a standalone document;
//! a user can equip that file with a fresh model block and run the whole
//! pipeline again on it.  Alongside the document it reports — without
//! asserting — which of the base category's discrete (co)limits survive the
//! quotient.

use std::collections::HashMap;

use crate::category::{CategoryError, FiniteCategory, MorId, ObjId, RawCategory, Subcategory};
use crate::format::FcatDocument;
use crate::homotopy::{homotopy_on_kcf, HomotopyError, HomotopyRelation};
use crate::model::{CheckResult, ClassifyError, ModelStructure};
use crate::universal::{coproduct, product};

/// First reason the relation fails to be a congruence, in scan order.
/// Morphism ids refer to the ambient base category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceIssue {
    #[error("morphism {alpha} is not related to itself")]
    NotReflexive { alpha: MorId },
    #[error("({alpha}, {beta}) related but ({beta}, {alpha}) not")]
    NotSymmetric { alpha: MorId, beta: MorId },
    #[error("({alpha}, {beta}) and ({beta}, {gamma}) related but ({alpha}, {gamma}) not")]
    NotTransitive { alpha: MorId, beta: MorId, gamma: MorId },
    #[error("({alpha}, {beta}) related but postcomposing {theta} separates them")]
    NotLeftCompatible { theta: MorId, alpha: MorId, beta: MorId },
    #[error("({alpha}, {beta}) related but precomposing {theta} separates them")]
    NotRightCompatible { alpha: MorId, beta: MorId, theta: MorId },
}

/// Exhaustively verify that the relation is an equivalence per hom-set and
/// two-sided compatible with composition inside the fibrant-cofibrant part.
pub fn check_congruence(
    m: &ModelStructure,
    rel: &HomotopyRelation,
) -> CheckResult<CongruenceIssue> {
    let k = &m.base;
    let related = |a: MorId, b: MorId| rel.related(a, b) == Some(true);
    for &x in &rel.objects {
        for &y in &rel.objects {
            let hom = k.hom(x, y);
            for &a in hom {
                if !related(a, a) {
                    return CheckResult::Fail(CongruenceIssue::NotReflexive { alpha: a });
                }
            }
            for &a in hom {
                // partners of a; near-diagonal relations keep this short
                let partners: Vec<MorId> = hom.iter().copied().filter(|&b| related(a, b)).collect();
                for &b in &partners {
                    if !related(b, a) {
                        return CheckResult::Fail(CongruenceIssue::NotSymmetric { alpha: a, beta: b });
                    }
                    for &c in hom {
                        if related(b, c) && !related(a, c) {
                            return CheckResult::Fail(CongruenceIssue::NotTransitive {
                                alpha: a,
                                beta: b,
                                gamma: c,
                            });
                        }
                    }
                    if b == a {
                        continue;
                    }
                    for &z in &rel.objects {
                        for &theta in k.hom(y, z) {
                            if !related(k.compose(theta, a), k.compose(theta, b)) {
                                return CheckResult::Fail(CongruenceIssue::NotLeftCompatible {
                                    theta,
                                    alpha: a,
                                    beta: b,
                                });
                            }
                        }
                        for &theta in k.hom(z, x) {
                            if !related(k.compose(a, theta), k.compose(b, theta)) {
                                return CheckResult::Fail(CongruenceIssue::NotRightCompatible {
                                    alpha: a,
                                    beta: b,
                                    theta,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    CheckResult::Pass
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HoError {
    #[error("the homotopy relation is not a congruence: {0}")]
    NotACongruence(CongruenceIssue),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error("the quotient table failed re-validation")]
    Invalid(Vec<CategoryError>),
}

/// The quotient category with its projection data.  All `base_*` ids refer
/// to the ambient category the structure lives on; `quotient` ids are local
/// to the quotient.
#[derive(Debug, Clone)]
pub struct HoCategory {
    /// Fibrant-cofibrant objects, ascending base ids.
    pub objects: Vec<ObjId>,
    /// The fibrant-cofibrant part as a category of its own.
    pub kcf: Subcategory,
    /// One morphism per homotopy class, named after the least member.
    pub quotient: FiniteCategory,
    /// Least base-category member of each quotient morphism's class.
    pub representative: Vec<MorId>,
    // base morphism id -> quotient morphism id, for morphisms of K_cf
    projection: HashMap<MorId, MorId>,
    // base object id -> quotient object id
    obj_projection: HashMap<ObjId, ObjId>,
}

impl HoCategory {
    /// Quotient object of a fibrant-cofibrant base object.
    pub fn project_object(&self, base_obj: ObjId) -> Option<ObjId> {
        self.obj_projection.get(&base_obj).copied()
    }

    /// Class of a base morphism between fibrant-cofibrant objects.
    pub fn project(&self, base_mor: MorId) -> Option<MorId> {
        self.projection.get(&base_mor).copied()
    }

    /// Members of each class, ascending, indexed by quotient morphism id.
    pub fn classes(&self, k: &FiniteCategory) -> Vec<Vec<MorId>> {
        let mut out = vec![Vec::new(); self.quotient.n_morphisms()];
        let mut members: Vec<(MorId, MorId)> =
            self.projection.iter().map(|(&b, &q)| (q, b)).collect();
        members.sort_unstable();
        for (q, b) in members {
            let _ = k; // classes are stored in base ids; k only documents that
            out[q].push(b);
        }
        out
    }
}

/// Build `Ho = K_cf / ~`.  Verifies the congruence first, then constructs
/// the class table and re-validates it as a category.
pub fn quotient(m: &ModelStructure) -> Result<HoCategory, HoError> {
    let rel = homotopy_on_kcf(m)?;
    if let CheckResult::Fail(issue) = check_congruence(m, &rel) {
        return Err(HoError::NotACongruence(issue));
    }
    quotient_of_relation(m, &rel)
}

/// As [`quotient`], for a relation already tabulated and already known to be
/// a congruence.
pub fn quotient_of_relation(
    m: &ModelStructure,
    rel: &HomotopyRelation,
) -> Result<HoCategory, HoError> {
    let k = &m.base;
    let objects = rel.objects.clone();
    let kcf = k.full_subcategory(&objects, &format!("{}_cf", k.name()));

    // class representative of every K_cf morphism: least related partner
    let mut rep: HashMap<MorId, MorId> = HashMap::new();
    let mut reps_in_order: Vec<MorId> = Vec::new();
    for &x in &objects {
        for &y in &objects {
            for &a in k.hom(x, y) {
                let r = *k
                    .hom(x, y)
                    .iter()
                    .find(|&&b| rel.related(b, a) == Some(true))
                    .expect("congruence is reflexive");
                rep.insert(a, r);
                if r == a {
                    reps_in_order.push(a);
                }
            }
        }
    }
    reps_in_order.sort_unstable();

    let mut raw = RawCategory::new(&format!("Ho_{}", k.name()));
    for &x in &objects {
        raw.object(k.object_name(x));
    }
    // a class containing an identity is led by it: identities carry the
    // least ids of their hom-set
    let arrow_reps: Vec<MorId> =
        reps_in_order.iter().copied().filter(|&r| !k.is_identity(r)).collect();
    for &r in &arrow_reps {
        raw.arrow(k.mor_name(r), k.object_name(k.dom(r)), k.object_name(k.cod(r)));
    }
    for &g in &arrow_reps {
        for &f in &arrow_reps {
            if k.cod(f) != k.dom(g) {
                continue;
            }
            let h = rep[&k.compose(g, f)];
            raw.composite(k.mor_name(g), k.mor_name(f), k.mor_name(h));
        }
    }
    let quotient = raw.validate().map_err(HoError::Invalid)?;

    let obj_projection: HashMap<ObjId, ObjId> =
        objects.iter().enumerate().map(|(q, &b)| (b, q)).collect();
    let mut class_id: HashMap<MorId, MorId> = HashMap::new();
    let mut representative = Vec::with_capacity(quotient.n_morphisms());
    for (q, &b) in objects.iter().enumerate() {
        class_id.insert(k.identity(b), quotient.identity(q));
        representative.push(k.identity(b));
    }
    for (i, &r) in arrow_reps.iter().enumerate() {
        class_id.insert(r, objects.len() + i);
        representative.push(r);
    }
    let projection: HashMap<MorId, MorId> =
        rep.iter().map(|(&a, &r)| (a, class_id[&r])).collect();

    // functoriality is forced by the construction; keep the receipt
    for (&g, &qg) in &projection {
        for (&f, &qf) in &projection {
            if k.cod(f) == k.dom(g) {
                assert_eq!(
                    projection[&k.compose(g, f)],
                    quotient.compose(qg, qf),
                    "projection failed to respect composition"
                );
            }
        }
    }

    Ok(HoCategory { objects, kcf, quotient, representative, projection, obj_projection })
}

/// Every weak equivalence between fibrant-cofibrant objects must become an
/// isomorphism in the quotient; returns the first (base) morphism that
/// does not.
pub fn weq_classes_are_isos(m: &ModelStructure, h: &HoCategory) -> CheckResult<MorId> {
    let k = &m.base;
    for w in 0..k.n_morphisms() {
        if !m.weq.contains(w) {
            continue;
        }
        let (Some(_), Some(_)) = (h.project_object(k.dom(w)), h.project_object(k.cod(w))) else {
            continue;
        };
        if !h.quotient.is_iso(h.project(w).expect("K_cf morphism has a class")) {
            return CheckResult::Fail(w);
        }
    }
    CheckResult::Pass
}

/// Whether a discrete (co)limit that existed in the base still exists in
/// the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurvivalEntry {
    pub in_base: bool,
    pub in_quotient: bool,
}

/// A fibrant-cofibrant base pair (`left <= right`) whose binary (co)product
/// existed in the base, and whether the projected pair still has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSurvival {
    pub left: ObjId,
    pub right: ObjId,
    pub survives: bool,
}

/// Observed-only report on discrete limits and colimits of the quotient.
/// Nothing here is asserted; re-running the toolkit on the emitted file is
/// the way to act on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InheritanceReport {
    pub initial: SurvivalEntry,
    pub terminal: SurvivalEntry,
    pub products: Vec<PairSurvival>,
    pub coproducts: Vec<PairSurvival>,
}

/// Serialize the quotient as a standalone document, ready for a fresh model
/// block and another run of the pipeline, together with the empirical
/// inheritance report.
pub fn emit_for_iteration(m: &ModelStructure, h: &HoCategory) -> (FcatDocument, InheritanceReport) {
    let k = &m.base;
    let q = &h.quotient;
    let doc = FcatDocument { categories: vec![q.to_raw()], models: Vec::new() };

    let initial = SurvivalEntry {
        in_base: !k.initial_objects().is_empty(),
        in_quotient: !q.initial_objects().is_empty(),
    };
    let terminal = SurvivalEntry {
        in_base: !k.terminal_objects().is_empty(),
        in_quotient: !q.terminal_objects().is_empty(),
    };
    let mut products = Vec::new();
    let mut coproducts = Vec::new();
    for (i, &a) in h.objects.iter().enumerate() {
        for &b in &h.objects[i..] {
            let (qa, qb) = (h.project_object(a).unwrap(), h.project_object(b).unwrap());
            if product(k, a, b).is_some() {
                products.push(PairSurvival {
                    left: a,
                    right: b,
                    survives: product(q, qa, qb).is_some(),
                });
            }
            if coproduct(k, a, b).is_some() {
                coproducts.push(PairSurvival {
                    left: a,
                    right: b,
                    survives: coproduct(q, qa, qb).is_some(),
                });
            }
        }
    }
    (doc, InheritanceReport { initial, terminal, products, coproducts })
}
