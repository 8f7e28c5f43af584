//! Homotopy relations from cylinder and path objects.
//!
//! Two parallel morphisms `α, β : x -> y` are left-homotopic when the fold
//! map out of `x ⊔ x` factors through an intermediate object `cyl` as a
//! cofibration `μ` followed by a weak equivalence `σ`, and some `ω : cyl -> y`
//! restricts along `μ` to the pair `[α, β]`.  Right homotopy is the mirror
//! notion through a path object over `y × y`; it is computed here by running
//! the left-hand search in the opposite category with cofibrations and
//! fibrations swapped and transporting the witness back.
//!
//! On the fibrant-cofibrant objects the two relations are tabulated side by
//! side and must agree wherever both are defined; the common relation is what
//! the quotient construction consumes.  When an object has no self-coproduct
//! and its partner no self-product, neither search applies and the pair
//! contributes the discrete relation (related only to itself) — the only
//! convention under which the tabulated relation stays an equivalence on
//! categories missing some (co)products.
//!
//! [`transitivity_composite`] splices a left homotopy `α ~ β` with a right
//! homotopy `β ~ γ` into a left homotopy `α ~ γ` by solving one lifting
//! problem, step by step, verifying every class membership and equation it
//! relies on; the output is a fresh witness that re-validates on its own.

use std::collections::HashMap;

use crate::category::{MorId, ObjId};
use crate::model::{classify, lift, AxiomReport, CheckResult, ClassifyError, LiftingProblem, ModelStructure};
use crate::universal::{coproduct, is_coproduct_cocone, is_product_cone, CoproductWitness, ProductWitness};

/// Witness that `alpha ~ beta` by a left homotopy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CylinderWitness {
    pub alpha: MorId,
    pub beta: MorId,
    /// The self-coproduct `x ⊔ x` of the common domain.
    pub coproduct: CoproductWitness,
    /// Intermediate object the fold map factors through.
    pub cyl: ObjId,
    /// `μ : x ⊔ x -> cyl`, a cofibration.
    pub inclusion: MorId,
    /// `σ : cyl -> x`, a weak equivalence with `σ . μ = [id, id]`.
    pub collapse: MorId,
    /// `ω : cyl -> y` with `ω . μ = [alpha, beta]`.
    pub homotopy: MorId,
}

/// Witness that `alpha ~ beta` by a right homotopy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathWitness {
    pub alpha: MorId,
    pub beta: MorId,
    /// The self-product `y × y` of the common codomain.
    pub product: ProductWitness,
    /// Intermediate object the diagonal factors through.
    pub path: ObjId,
    /// `ε : path -> y × y`, a fibration.
    pub evaluation: MorId,
    /// `κ : y -> path`, a weak equivalence with `ε . κ = (id, id)`.
    pub constant: MorId,
    /// `ψ : x -> path` with `ε . ψ = (alpha, beta)`.
    pub homotopy: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("morphisms are not a parallel pair")]
    NotParallel,
    #[error("object {object} has no coproduct with itself")]
    NoCoproduct { object: ObjId },
    #[error("object {object} has no product with itself")]
    NoProduct { object: ObjId },
    #[error("left and right homotopy disagree on pair ({alpha}, {beta}): left {left}, right {right}")]
    Coincidence { alpha: MorId, beta: MorId, left: bool, right: bool },
    #[error("the two witnesses do not share their middle morphism")]
    ChainMismatch,
    #[error("codomain object {y} is not fibrant")]
    NotFibrant { y: ObjId },
    #[error("no diagonal lift while assembling the composite homotopy")]
    LiftNotFound,
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error("witness fails validation: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl CylinderWitness {
    /// Re-check every condition from scratch: the cocone really is a
    /// coproduct, classes contain what they must, and both restriction
    /// equations hold.
    pub fn validate(&self, m: &ModelStructure) -> Result<(), HomotopyError> {
        let k = &m.base;
        let co = &self.coproduct;
        let fail = |msg: &str| Err(HomotopyError::InvalidWitness(msg.to_owned()));
        if k.dom(self.alpha) != co.left || co.left != co.right {
            return fail("coproduct is not the domain doubled");
        }
        if k.cod(self.alpha) != k.cod(self.beta) || k.dom(self.alpha) != k.dom(self.beta) {
            return fail("not a parallel pair");
        }
        if !is_coproduct_cocone(k, co.left, co.right, co.object, co.from_left, co.from_right) {
            return fail("cocone is not a coproduct");
        }
        let x = co.left;
        let ok_shape = k.dom(self.inclusion) == co.object
            && k.cod(self.inclusion) == self.cyl
            && k.dom(self.collapse) == self.cyl
            && k.cod(self.collapse) == x
            && k.dom(self.homotopy) == self.cyl
            && k.cod(self.homotopy) == k.cod(self.alpha);
        if !ok_shape {
            return fail("component morphisms do not fit together");
        }
        if !m.cof.contains(self.inclusion) {
            return fail("inclusion is not a cofibration");
        }
        if !m.weq.contains(self.collapse) {
            return fail("collapse is not a weak equivalence");
        }
        let sm = k.compose(self.collapse, self.inclusion);
        if k.compose(sm, co.from_left) != k.identity(x) || k.compose(sm, co.from_right) != k.identity(x)
        {
            return fail("collapse . inclusion is not the fold map");
        }
        let om = k.compose(self.homotopy, self.inclusion);
        if k.compose(om, co.from_left) != self.alpha || k.compose(om, co.from_right) != self.beta {
            return fail("homotopy does not restrict to the pair");
        }
        Ok(())
    }
}

impl PathWitness {
    /// Mirror image of [`CylinderWitness::validate`].
    pub fn validate(&self, m: &ModelStructure) -> Result<(), HomotopyError> {
        let k = &m.base;
        let pr = &self.product;
        let fail = |msg: &str| Err(HomotopyError::InvalidWitness(msg.to_owned()));
        if k.cod(self.alpha) != pr.left || pr.left != pr.right {
            return fail("product is not the codomain doubled");
        }
        if k.cod(self.alpha) != k.cod(self.beta) || k.dom(self.alpha) != k.dom(self.beta) {
            return fail("not a parallel pair");
        }
        if !is_product_cone(k, pr.left, pr.right, pr.object, pr.to_left, pr.to_right) {
            return fail("cone is not a product");
        }
        let y = pr.left;
        let ok_shape = k.dom(self.evaluation) == self.path
            && k.cod(self.evaluation) == pr.object
            && k.dom(self.constant) == y
            && k.cod(self.constant) == self.path
            && k.dom(self.homotopy) == k.dom(self.alpha)
            && k.cod(self.homotopy) == self.path;
        if !ok_shape {
            return fail("component morphisms do not fit together");
        }
        if !m.fib.contains(self.evaluation) {
            return fail("evaluation is not a fibration");
        }
        if !m.weq.contains(self.constant) {
            return fail("constant is not a weak equivalence");
        }
        let ek = k.compose(self.evaluation, self.constant);
        if k.compose(pr.to_left, ek) != k.identity(y) || k.compose(pr.to_right, ek) != k.identity(y) {
            return fail("evaluation . constant is not the diagonal");
        }
        let ep = k.compose(self.evaluation, self.homotopy);
        if k.compose(pr.to_left, ep) != self.alpha || k.compose(pr.to_right, ep) != self.beta {
            return fail("homotopy does not project to the pair");
        }
        Ok(())
    }
}

// Per-domain-object search state: the canonical self-coproduct and every
// (cyl, μ, σ) triple satisfying the class and fold conditions, in search
// order.  The triples do not depend on the pair being tested, so computing
// them once per object pays off across a hom-set.
struct SearchData {
    co: CoproductWitness,
    entries: Vec<(ObjId, MorId, MorId)>,
}

struct LeftSearcher<'a> {
    m: &'a ModelStructure,
    per_object: Vec<Option<Option<SearchData>>>,
}

impl<'a> LeftSearcher<'a> {
    fn new(m: &'a ModelStructure) -> Self {
        LeftSearcher { m, per_object: (0..m.base.n_objects()).map(|_| None).collect() }
    }

    fn ensure(&mut self, x: ObjId) {
        if self.per_object[x].is_some() {
            return;
        }
        let k = &self.m.base;
        let data = coproduct(k, x, x).map(|co| {
            let fold = co.copair(k, k.identity(x), k.identity(x));
            let mut entries = Vec::new();
            for cyl in 0..k.n_objects() {
                // a usable σ must exist; skip whole candidates early
                if !k.hom(cyl, x).iter().any(|&s| self.m.weq.contains(s)) {
                    continue;
                }
                for &mu in k.hom(co.object, cyl) {
                    if !self.m.cof.contains(mu) {
                        continue;
                    }
                    for &sigma in k.hom(cyl, x) {
                        if self.m.weq.contains(sigma) && k.compose(sigma, mu) == fold {
                            entries.push((cyl, mu, sigma));
                        }
                    }
                }
            }
            SearchData { co, entries }
        });
        self.per_object[x] = Some(data);
    }

    /// `None`: no self-coproduct.  `Some(result)`: outcome of the search.
    fn find(&mut self, alpha: MorId, beta: MorId) -> Option<Option<CylinderWitness>> {
        let k = &self.m.base;
        let x = k.dom(alpha);
        let y = k.cod(alpha);
        self.ensure(x);
        let data = self.per_object[x].as_ref().unwrap().as_ref()?;
        for &(cyl, mu, sigma) in &data.entries {
            for &omega in k.hom(cyl, y) {
                let om = k.compose(omega, mu);
                if k.compose(om, data.co.from_left) == alpha
                    && k.compose(om, data.co.from_right) == beta
                {
                    return Some(Some(CylinderWitness {
                        alpha,
                        beta,
                        coproduct: data.co,
                        cyl,
                        inclusion: mu,
                        collapse: sigma,
                        homotopy: omega,
                    }));
                }
            }
        }
        Some(None)
    }
}

// A cylinder witness found in the dual structure is a path witness here:
// ids are shared between a category and its opposite, so the fields just
// change names.
fn path_from_dual(w: CylinderWitness) -> PathWitness {
    PathWitness {
        alpha: w.alpha,
        beta: w.beta,
        product: ProductWitness {
            left: w.coproduct.left,
            right: w.coproduct.right,
            object: w.coproduct.object,
            to_left: w.coproduct.from_left,
            to_right: w.coproduct.from_right,
        },
        path: w.cyl,
        evaluation: w.inclusion,
        constant: w.collapse,
        homotopy: w.homotopy,
    }
}

/// Least cylinder witness for `alpha ~ beta`, searching intermediate objects
/// by index, then `μ`, `σ`, `ω` by morphism index.
pub fn left_homotopic(
    m: &ModelStructure,
    alpha: MorId,
    beta: MorId,
) -> Result<Option<CylinderWitness>, HomotopyError> {
    let k = &m.base;
    if k.dom(alpha) != k.dom(beta) || k.cod(alpha) != k.cod(beta) {
        return Err(HomotopyError::NotParallel);
    }
    let mut searcher = LeftSearcher::new(m);
    searcher
        .find(alpha, beta)
        .ok_or(HomotopyError::NoCoproduct { object: k.dom(alpha) })
}

/// Least path witness for `alpha ~ beta`: the left-hand search run in the
/// dual structure, transported back and re-validated here.
pub fn right_homotopic(
    m: &ModelStructure,
    alpha: MorId,
    beta: MorId,
) -> Result<Option<PathWitness>, HomotopyError> {
    let k = &m.base;
    if k.dom(alpha) != k.dom(beta) || k.cod(alpha) != k.cod(beta) {
        return Err(HomotopyError::NotParallel);
    }
    let dual = m.dual();
    let mut searcher = LeftSearcher::new(&dual);
    let found = searcher
        .find(alpha, beta)
        .ok_or(HomotopyError::NoProduct { object: k.cod(alpha) })?;
    match found {
        None => Ok(None),
        Some(w) => {
            let path = path_from_dual(w);
            path.validate(m)?;
            Ok(Some(path))
        }
    }
}

/// One side's outcome for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideVerdict<W> {
    Related(W),
    NotRelated,
    /// The required self-(co)product does not exist.
    Unavailable,
}

impl<W> SideVerdict<W> {
    pub fn related(&self) -> Option<bool> {
        match self {
            SideVerdict::Related(_) => Some(true),
            SideVerdict::NotRelated => Some(false),
            SideVerdict::Unavailable => None,
        }
    }
}

/// Both verdicts for one ordered parallel pair, plus the resolved relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub alpha: MorId,
    pub beta: MorId,
    pub left: SideVerdict<CylinderWitness>,
    pub right: SideVerdict<PathWitness>,
    pub related: bool,
}

/// The homotopy relation on the fibrant-cofibrant objects: every ordered
/// parallel pair with both side verdicts.  Wherever both sides are defined
/// they agree (enforced during construction); `related` is the defined side,
/// or plain equality when neither side applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyRelation {
    /// Fibrant-cofibrant objects, ascending, in base-category ids.
    pub objects: Vec<ObjId>,
    /// Entries ordered by object pair, then `alpha`, then `beta`.
    pub pairs: Vec<PairEntry>,
    index: HashMap<(MorId, MorId), usize>,
}

impl HomotopyRelation {
    pub fn entry(&self, alpha: MorId, beta: MorId) -> Option<&PairEntry> {
        self.index.get(&(alpha, beta)).map(|&i| &self.pairs[i])
    }

    /// Whether the tabulated relation holds; `None` when the pair is not a
    /// parallel pair inside the fibrant-cofibrant part.
    pub fn related(&self, alpha: MorId, beta: MorId) -> Option<bool> {
        self.entry(alpha, beta).map(|e| e.related)
    }
}

/// Tabulate left and right homotopy for all ordered parallel pairs between
/// fibrant-cofibrant objects and merge them into one relation.
pub fn homotopy_on_kcf(m: &ModelStructure) -> Result<HomotopyRelation, HomotopyError> {
    let cls = classify(m)?;
    let k = &m.base;
    let dual = m.dual();
    let mut left = LeftSearcher::new(m);
    let mut right = LeftSearcher::new(&dual);
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for &x in &cls.both {
        for &y in &cls.both {
            let hom = k.hom(x, y);
            for &alpha in hom {
                for &beta in hom {
                    let lv = match left.find(alpha, beta) {
                        None => SideVerdict::Unavailable,
                        Some(None) => SideVerdict::NotRelated,
                        Some(Some(w)) => SideVerdict::Related(w),
                    };
                    let rv = match right.find(alpha, beta) {
                        None => SideVerdict::Unavailable,
                        Some(None) => SideVerdict::NotRelated,
                        Some(Some(w)) => {
                            let path = path_from_dual(w);
                            path.validate(m)?;
                            SideVerdict::Related(path)
                        }
                    };
                    let related = match (lv.related(), rv.related()) {
                        (Some(l), Some(r)) => {
                            if l != r {
                                return Err(HomotopyError::Coincidence {
                                    alpha,
                                    beta,
                                    left: l,
                                    right: r,
                                });
                            }
                            l
                        }
                        (Some(l), None) => l,
                        (None, Some(r)) => r,
                        (None, None) => alpha == beta,
                    };
                    index.insert((alpha, beta), pairs.len());
                    pairs.push(PairEntry { alpha, beta, left: lv, right: rv, related });
                }
            }
        }
    }
    Ok(HomotopyRelation { objects: cls.both.clone(), pairs, index })
}

/// Splice a left homotopy `α ~ β` with a right homotopy `β ~ γ` into a left
/// homotopy `α ~ γ`, for fibrant codomain.  Every step is verified: the two
/// evaluation legs must be acyclic fibrations (their fibration membership is
/// the projection argument, their weak-equivalence membership follows from
/// `ε_i . κ = id` and two-out-of-three — both are checked as memberships
/// here), the mediator out of `x ⊔ x` must restrict correctly, and the final
/// witness is validated before being returned.  The output reuses the input
/// cylinder with a new homotopy `ω' = ε₁ . δ` obtained from a lift `δ`.
pub fn transitivity_composite(
    m: &ModelStructure,
    wl: &CylinderWitness,
    wr: &PathWitness,
) -> Result<CylinderWitness, HomotopyError> {
    let k = &m.base;
    wl.validate(m)?;
    wr.validate(m)?;
    if wl.beta != wr.alpha {
        return Err(HomotopyError::ChainMismatch);
    }
    let (alpha, gamma) = (wl.alpha, wr.beta);
    let y = k.cod(alpha);
    let fibrant = k
        .terminal_objects()
        .first()
        .map(|&t| m.fib.contains(k.hom(y, t)[0]))
        .unwrap_or(false);
    if !fibrant {
        return Err(HomotopyError::NotFibrant { y });
    }
    let breach = |msg: &str| HomotopyError::InvariantBreach(msg.to_owned());

    let e0 = k.compose(wr.product.to_left, wr.evaluation);
    let e1 = k.compose(wr.product.to_right, wr.evaluation);
    for (leg, name) in [(e0, "first"), (e1, "second")] {
        if !m.fib.contains(leg) {
            return Err(breach(&format!("{name} evaluation leg is not a fibration")));
        }
        if !m.weq.contains(leg) {
            return Err(breach(&format!("{name} evaluation leg is not a weak equivalence")));
        }
        if k.compose(leg, wr.constant) != k.identity(y) {
            return Err(breach(&format!("{name} evaluation leg does not retract the constant")));
        }
    }

    // mediator [κ . α, ψ] : x ⊔ x -> path
    let co = &wl.coproduct;
    let u = co.copair(k, k.compose(wr.constant, alpha), wr.homotopy);
    let e1u = k.compose(e1, u);
    if k.compose(e1u, co.from_left) != alpha || k.compose(e1u, co.from_right) != gamma {
        return Err(breach("mediator does not project to the outer pair"));
    }
    if k.compose(e0, u) != k.compose(wl.homotopy, wl.inclusion) {
        return Err(breach("mediator does not agree with the input homotopy"));
    }

    let problem = LiftingProblem::new(k, wl.inclusion, e0, u, wl.homotopy)
        .map_err(|e| breach(&format!("composite square is malformed: {e}")))?;
    let delta = lift(k, &problem).ok_or(HomotopyError::LiftNotFound)?;
    let out = CylinderWitness { alpha, beta: gamma, homotopy: k.compose(e1, delta), ..*wl };
    out.validate(m)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaSuiteError {
    #[error("the structure fails the axioms; the suite requires a valid one")]
    InvalidStructure(Box<AxiomReport>),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

/// Empirical checks of the expected behavior of the homotopy relations on a
/// structure that passes the axioms.  Each failing check carries its least
/// offending tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    /// `α ~ℓ α` for every morphism whose domain has a self-coproduct.
    pub left_reflexive: CheckResult<MorId>,
    /// `α ~ℓ β` iff `β ~ℓ α` over those pairs.
    pub left_symmetric: CheckResult<(MorId, MorId)>,
    /// `α ~ℓ β` implies `θ.α ~ℓ θ.β` for every postcomposable `θ`.
    pub left_postcompose: CheckResult<(MorId, MorId, MorId)>,
    /// Dual trio for right homotopy.
    pub right_reflexive: CheckResult<MorId>,
    pub right_symmetric: CheckResult<(MorId, MorId)>,
    /// `α ~r β` implies `α.θ ~r β.θ` for every precomposable `θ`.
    pub right_precompose: CheckResult<(MorId, MorId, MorId)>,
    /// Number of fibrant-cofibrant pairs tabulated with both sides in
    /// agreement (disagreement aborts the suite with an error instead).
    pub coincidence_pairs: usize,
    /// `α ~ℓ β` and `β ~r γ` with fibrant codomain imply `α ~ℓ γ`.
    pub chain_to_left: CheckResult<(MorId, MorId, MorId)>,
    /// `α ~ℓ β` and `β ~r γ` with cofibrant domain imply `α ~r γ`.
    pub chain_to_right: CheckResult<(MorId, MorId, MorId)>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.left_reflexive.is_pass()
            && self.left_symmetric.is_pass()
            && self.left_postcompose.is_pass()
            && self.right_reflexive.is_pass()
            && self.right_symmetric.is_pass()
            && self.right_precompose.is_pass()
            && self.chain_to_left.is_pass()
            && self.chain_to_right.is_pass()
    }
}

// The three one-sided checks, shared between the left structure and its
// dual.  Scope: every morphism of the base category whose relevant
// self-coproduct exists.
fn one_sided_checks(
    m: &ModelStructure,
) -> (CheckResult<MorId>, CheckResult<(MorId, MorId)>, CheckResult<(MorId, MorId, MorId)>) {
    let k = &m.base;
    let mut s = LeftSearcher::new(m);
    let mut reflexive = CheckResult::Pass;
    for a in 0..k.n_morphisms() {
        if let Some(found) = s.find(a, a) {
            if found.is_none() {
                reflexive = CheckResult::Fail(a);
                break;
            }
        }
    }
    let mut symmetric = CheckResult::Pass;
    'sym: for a in 0..k.n_morphisms() {
        for b in 0..k.n_morphisms() {
            if k.dom(a) != k.dom(b) || k.cod(a) != k.cod(b) {
                continue;
            }
            if let Some(ab) = s.find(a, b) {
                let ba = s.find(b, a).unwrap();
                if ab.is_some() != ba.is_some() {
                    symmetric = CheckResult::Fail((a, b));
                    break 'sym;
                }
            }
        }
    }
    let mut congruent = CheckResult::Pass;
    'cong: for a in 0..k.n_morphisms() {
        for b in 0..k.n_morphisms() {
            if k.dom(a) != k.dom(b) || k.cod(a) != k.cod(b) || s.find(a, b).is_none_or(|w| w.is_none())
            {
                continue;
            }
            for t in 0..k.n_morphisms() {
                if k.dom(t) != k.cod(a) {
                    continue;
                }
                let (ta, tb) = (k.compose(t, a), k.compose(t, b));
                if s.find(ta, tb).is_some_and(|w| w.is_none()) {
                    congruent = CheckResult::Fail((a, b, t));
                    break 'cong;
                }
            }
        }
    }
    (reflexive, symmetric, congruent)
}

/// Run the whole battery of relation checks on a valid structure.
pub fn lemma_suite(m: &ModelStructure) -> Result<LemmaReport, LemmaSuiteError> {
    let axioms = m.check_axioms();
    if !axioms.holds() {
        return Err(LemmaSuiteError::InvalidStructure(Box::new(axioms)));
    }
    let cls = classify(m)?;
    let k = &m.base;
    let relation = homotopy_on_kcf(m)?;

    let (left_reflexive, left_symmetric, left_postcompose) = one_sided_checks(m);
    let dual = m.dual();
    let (right_reflexive, right_symmetric, right_precompose) = one_sided_checks(&dual);

    // chained transitivity across the two sides, on hom-sets where both
    // searches apply
    let mut left = LeftSearcher::new(m);
    let mut right = LeftSearcher::new(&dual);
    let mut chain_to_left = CheckResult::Pass;
    let mut chain_to_right = CheckResult::Pass;
    'chain: for x in 0..k.n_objects() {
        for y in 0..k.n_objects() {
            let hom = k.hom(x, y).to_vec();
            if hom.is_empty() {
                continue;
            }
            let Some(_) = left.find(hom[0], hom[0]) else { continue };
            let Some(_) = right.find(hom[0], hom[0]) else { continue };
            let n = hom.len();
            let mut l_tab = vec![false; n * n];
            let mut r_tab = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    l_tab[i * n + j] = left.find(hom[i], hom[j]).unwrap().is_some();
                    r_tab[i * n + j] = right.find(hom[i], hom[j]).unwrap().is_some();
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if !l_tab[i * n + j] {
                        continue;
                    }
                    for l in 0..n {
                        if !r_tab[j * n + l] {
                            continue;
                        }
                        if cls.fibrant[y] && chain_to_left.is_pass() && !l_tab[i * n + l] {
                            chain_to_left = CheckResult::Fail((hom[i], hom[j], hom[l]));
                        }
                        if cls.cofibrant[x] && chain_to_right.is_pass() && !r_tab[i * n + l] {
                            chain_to_right = CheckResult::Fail((hom[i], hom[j], hom[l]));
                        }
                        if !chain_to_left.is_pass() && !chain_to_right.is_pass() {
                            break 'chain;
                        }
                    }
                }
            }
        }
    }

    Ok(LemmaReport {
        left_reflexive,
        left_symmetric,
        left_postcompose,
        right_reflexive,
        right_symmetric,
        right_precompose,
        coincidence_pairs: relation.pairs.len(),
        chain_to_left,
        chain_to_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{FiniteCategory, RawCategory};
    use crate::model::ClassSet;

    fn poset2() -> FiniteCategory {
        let mut raw = RawCategory::new("two");
        raw.object("0");
        raw.object("1");
        raw.arrow("f", "0", "1");
        raw.validate().unwrap()
    }

    fn terminal() -> FiniteCategory {
        let mut raw = RawCategory::new("terminal");
        raw.object("*");
        raw.validate().unwrap()
    }

    #[test]
    fn reflexive_witness_on_terminal_category() {
        let m = ModelStructure::trivial(terminal());
        let w = left_homotopic(&m, 0, 0).unwrap().expect("id ~ id");
        assert_eq!(w.cyl, 0);
        assert_eq!((w.inclusion, w.collapse, w.homotopy), (0, 0, 0));
        w.validate(&m).unwrap();
        let p = right_homotopic(&m, 0, 0).unwrap().expect("id ~ id");
        assert_eq!(p.path, 0);
        p.validate(&m).unwrap();
    }

    #[test]
    fn trivial_structure_relation_is_equality() {
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        let m = ModelStructure::trivial(k);
        let w = left_homotopic(&m, f, f).unwrap().expect("f ~ f");
        w.validate(&m).unwrap();
        let relation = homotopy_on_kcf(&m).unwrap();
        assert_eq!(relation.objects, vec![0, 1]);
        for e in &relation.pairs {
            assert_eq!(e.related, e.alpha == e.beta, "pair ({}, {})", e.alpha, e.beta);
        }
        assert_eq!(relation.related(f, f), Some(true));
        assert_eq!(relation.related(0, f), None);
    }

    #[test]
    fn parallel_pair_is_required() {
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        let m = ModelStructure::trivial(k);
        assert_eq!(left_homotopic(&m, 0, f), Err(HomotopyError::NotParallel));
    }

    #[test]
    fn right_transport_matches_direct_duality() {
        // right homotopy witnesses are cylinder witnesses of the dual
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        let m = ModelStructure::trivial(k);
        let dual = m.dual();
        let via_dual = left_homotopic(&dual, f, f).unwrap().unwrap();
        let direct = right_homotopic(&m, f, f).unwrap().unwrap();
        assert_eq!(path_from_dual(via_dual), direct);
    }

    #[test]
    fn lemma_suite_passes_on_poset2_structures() {
        let k = poset2();
        for m in crate::model::enumerate_model_structures(&k, 12).unwrap() {
            let report = lemma_suite(&m).unwrap();
            assert!(report.holds(), "{}: {report:?}", m.name);
            assert!(report.coincidence_pairs > 0);
        }
    }

    #[test]
    fn lemma_suite_refuses_invalid_structures() {
        let k = poset2();
        let bad = ModelStructure::new(
            "bad",
            k.clone(),
            ClassSet::all(&k),
            ClassSet::all(&k),
            ClassSet::all(&k),
        );
        assert!(matches!(
            lemma_suite(&bad),
            Err(LemmaSuiteError::InvalidStructure(_))
        ));
    }

    #[test]
    fn transitivity_composite_on_degenerate_chain() {
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        let m = ModelStructure::trivial(k);
        let wl = left_homotopic(&m, f, f).unwrap().unwrap();
        let wr = right_homotopic(&m, f, f).unwrap().unwrap();
        let out = transitivity_composite(&m, &wl, &wr).unwrap();
        assert_eq!((out.alpha, out.beta), (f, f));
        out.validate(&m).unwrap();
        // the direct search also succeeds and the output lies in its space
        assert!(left_homotopic(&m, f, f).unwrap().is_some());
    }

    #[test]
    fn transitivity_requires_fibrant_codomain() {
        let k = poset2();
        let m = ModelStructure::new(
            "right-rigid",
            k.clone(),
            ClassSet::all(&k),
            ClassSet::all(&k),
            ClassSet::identities_only(&k),
        );
        assert!(m.check_axioms().holds());
        // 0 is not fibrant: f is not a fibration
        let wl = left_homotopic(&m, 0, 0).unwrap().unwrap();
        let wr = right_homotopic(&m, 0, 0).unwrap().unwrap();
        assert_eq!(
            transitivity_composite(&m, &wl, &wr),
            Err(HomotopyError::NotFibrant { y: 0 })
        );
    }

    #[test]
    fn chain_mismatch_is_detected() {
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        let m = ModelStructure::trivial(k.clone());
        let wl = left_homotopic(&m, f, f).unwrap().unwrap();
        let wr = right_homotopic(&m, k.identity(1), k.identity(1)).unwrap().unwrap();
        assert_eq!(transitivity_composite(&m, &wl, &wr), Err(HomotopyError::ChainMismatch));
    }
}
