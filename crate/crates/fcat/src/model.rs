//! Model structures on a finite category, checked axiom by axiom.
//!
//! A candidate structure is three distinguished classes of morphisms — weak
//! equivalences, cofibrations, fibrations — each automatically containing
//! every identity.  [`ModelStructure::check_axioms`] decides by exhaustive
//! search whether the triple satisfies
//!
//! * two-out-of-three for weak equivalences,
//! * closure of each class under retracts,
//! * the two lifting properties (cofibrations against acyclic fibrations,
//!   acyclic cofibrations against fibrations), and
//! * the two factorization properties.
//!
//! Counterexamples are reported as the least offending tuple in the search
//! order, which always runs ascending in morphism ids.  Factorizations are
//! existence statements only: no choice of factorization is fixed beyond the
//! canonical least witness returned by [`factorize`].

use std::collections::HashMap;

use crate::category::{FiniteCategory, MorId, ObjId};

/// A class of morphisms, stored as a membership mask.  Identities are always
/// members; constructors insert them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    mask: Vec<bool>,
}

impl ClassSet {
    pub fn from_mask(k: &FiniteCategory, mut mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), k.n_morphisms());
        for o in 0..k.n_objects() {
            mask[o] = true;
        }
        ClassSet { mask }
    }

    pub fn from_ids(k: &FiniteCategory, ids: &[MorId]) -> Self {
        let mut mask = vec![false; k.n_morphisms()];
        for &m in ids {
            mask[m] = true;
        }
        Self::from_mask(k, mask)
    }

    pub fn all(k: &FiniteCategory) -> Self {
        ClassSet { mask: vec![true; k.n_morphisms()] }
    }

    pub fn identities_only(k: &FiniteCategory) -> Self {
        Self::from_ids(k, &[])
    }

    pub fn isos(k: &FiniteCategory) -> Self {
        Self::from_mask(k, k.iso_set())
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.mask[m]
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<MorId> {
        (0..self.mask.len()).filter(|&m| self.mask[m]).collect()
    }
}

/// A category together with three distinguished classes.  Nothing about the
/// axioms is assumed; run [`ModelStructure::check_axioms`] to find out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStructure {
    pub name: String,
    pub base: FiniteCategory,
    pub weq: ClassSet,
    pub cof: ClassSet,
    pub fib: ClassSet,
}

impl ModelStructure {
    pub fn new(name: &str, base: FiniteCategory, weq: ClassSet, cof: ClassSet, fib: ClassSet) -> Self {
        assert_eq!(weq.mask.len(), base.n_morphisms());
        assert_eq!(cof.mask.len(), base.n_morphisms());
        assert_eq!(fib.mask.len(), base.n_morphisms());
        ModelStructure { name: name.to_owned(), base, weq, cof, fib }
    }

    /// Weak equivalences = isomorphisms, every morphism a cofibration and a
    /// fibration.  This triple satisfies the axioms on any finite category.
    pub fn trivial(base: FiniteCategory) -> Self {
        let weq = ClassSet::isos(&base);
        let cof = ClassSet::all(&base);
        let fib = ClassSet::all(&base);
        Self::new("trivial", base, weq, cof, fib)
    }

    /// The same structure on the opposite category: cofibrations and
    /// fibrations trade places, weak equivalences stay.  Morphism ids are
    /// unchanged, so class masks carry over as-is.
    pub fn dual(&self) -> ModelStructure {
        ModelStructure {
            name: self.name.clone(),
            base: self.base.opposite(),
            weq: self.weq.clone(),
            cof: self.fib.clone(),
            fib: self.cof.clone(),
        }
    }

    pub fn acyclic_cof(&self, m: MorId) -> bool {
        self.cof.contains(m) && self.weq.contains(m)
    }

    pub fn acyclic_fib(&self, m: MorId) -> bool {
        self.fib.contains(m) && self.weq.contains(m)
    }

    fn acyclic_cofs(&self) -> Vec<MorId> {
        (0..self.base.n_morphisms()).filter(|&m| self.acyclic_cof(m)).collect()
    }

    fn acyclic_fibs(&self) -> Vec<MorId> {
        (0..self.base.n_morphisms()).filter(|&m| self.acyclic_fib(m)).collect()
    }

    /// Run every axiom check and report each outcome.
    pub fn check_axioms(&self) -> AxiomReport {
        let k = &self.base;
        let mut sections = SectionCache::new(k);
        AxiomReport {
            two_out_of_three: check_two_out_of_three(k, &self.weq),
            retract_weq: check_retract_closure(k, &self.weq, &mut sections),
            retract_cof: check_retract_closure(k, &self.cof, &mut sections),
            retract_fib: check_retract_closure(k, &self.fib, &mut sections),
            lift_cof_acyclic_fib: check_lifting(k, &self.cof.members(), &self.acyclic_fibs()),
            lift_acyclic_cof_fib: check_lifting(k, &self.acyclic_cofs(), &self.fib.members()),
            factor_cof_acyclic_fib: check_factorization(self, FactorMode::CofThenAcyclicFib),
            factor_acyclic_cof_fib: check_factorization(self, FactorMode::AcyclicCofThenFib),
        }
    }

    /// Like [`Self::check_axioms`] but stops at the first failure; used when
    /// scanning many candidate triples.
    pub fn is_valid(&self) -> bool {
        let k = &self.base;
        if !check_two_out_of_three(k, &self.weq).is_pass() {
            return false;
        }
        if !check_factorization(self, FactorMode::CofThenAcyclicFib).is_pass()
            || !check_factorization(self, FactorMode::AcyclicCofThenFib).is_pass()
        {
            return false;
        }
        let mut sections = SectionCache::new(k);
        if !check_retract_closure(k, &self.weq, &mut sections).is_pass()
            || !check_retract_closure(k, &self.cof, &mut sections).is_pass()
            || !check_retract_closure(k, &self.fib, &mut sections).is_pass()
        {
            return false;
        }
        check_lifting(k, &self.cof.members(), &self.acyclic_fibs()).is_pass()
            && check_lifting(k, &self.acyclic_cofs(), &self.fib.members()).is_pass()
    }
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult<C> {
    Pass,
    Fail(C),
}

impl<C> CheckResult<C> {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }

    pub fn failure(&self) -> Option<&C> {
        match self {
            CheckResult::Pass => None,
            CheckResult::Fail(c) => Some(c),
        }
    }
}

/// All eight axiom outcomes for one candidate structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub two_out_of_three: CheckResult<TwoOutOfThreeFailure>,
    pub retract_weq: CheckResult<RetractFailure>,
    pub retract_cof: CheckResult<RetractFailure>,
    pub retract_fib: CheckResult<RetractFailure>,
    pub lift_cof_acyclic_fib: CheckResult<LiftingFailure>,
    pub lift_acyclic_cof_fib: CheckResult<LiftingFailure>,
    pub factor_cof_acyclic_fib: CheckResult<FactorizationFailure>,
    pub factor_acyclic_cof_fib: CheckResult<FactorizationFailure>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.two_out_of_three.is_pass()
            && self.retract_weq.is_pass()
            && self.retract_cof.is_pass()
            && self.retract_fib.is_pass()
            && self.lift_cof_acyclic_fib.is_pass()
            && self.lift_acyclic_cof_fib.is_pass()
            && self.factor_cof_acyclic_fib.is_pass()
            && self.factor_acyclic_cof_fib.is_pass()
    }
}

/// `first` and `second` compose to `composite`; two of the three are weak
/// equivalences but `absent` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOutOfThreeFailure {
    pub first: MorId,
    pub second: MorId,
    pub composite: MorId,
    pub absent: MorId,
}

/// `retract` lies outside the class but is a retract of the member `of`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractFailure {
    pub retract: MorId,
    pub of: MorId,
}

/// A commuting square with no diagonal: `p . u = v . i` but no `h` with
/// `h . i = u` and `p . h = v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingFailure {
    pub i: MorId,
    pub p: MorId,
    pub u: MorId,
    pub v: MorId,
}

/// No factorization of `f` exists in the requested mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationFailure {
    pub f: MorId,
    pub mode: FactorMode,
}

fn check_two_out_of_three(k: &FiniteCategory, weq: &ClassSet) -> CheckResult<TwoOutOfThreeFailure> {
    for f in 0..k.n_morphisms() {
        for g in 0..k.n_morphisms() {
            let Some(c) = k.try_compose(g, f) else { continue };
            let (wf, wg, wc) = (weq.contains(f), weq.contains(g), weq.contains(c));
            let absent = match (wf, wg, wc) {
                (true, true, false) => c,
                (true, false, true) => g,
                (false, true, true) => f,
                _ => continue,
            };
            return CheckResult::Fail(TwoOutOfThreeFailure { first: f, second: g, composite: c, absent });
        }
    }
    CheckResult::Pass
}

// Section pairs per object pair are needed repeatedly across the three
// retract checks; computing them is quadratic in hom-set sizes, so cache.
struct SectionCache<'a> {
    k: &'a FiniteCategory,
    cache: Vec<Option<Vec<(MorId, MorId)>>>,
}

impl<'a> SectionCache<'a> {
    fn new(k: &'a FiniteCategory) -> Self {
        SectionCache { k, cache: vec![None; k.n_objects() * k.n_objects()] }
    }

    fn get(&mut self, a: ObjId, b: ObjId) -> &[(MorId, MorId)] {
        let idx = a * self.k.n_objects() + b;
        if self.cache[idx].is_none() {
            self.cache[idx] = Some(self.k.section_pairs(a, b));
        }
        self.cache[idx].as_ref().unwrap()
    }
}

fn check_retract_closure(
    k: &FiniteCategory,
    class: &ClassSet,
    sections: &mut SectionCache,
) -> CheckResult<RetractFailure> {
    let members = class.members();
    for f in 0..k.n_morphisms() {
        if class.contains(f) {
            continue;
        }
        for &g in &members {
            let dom_sections = sections.get(k.dom(f), k.dom(g)).to_vec();
            let cod_sections = sections.get(k.cod(f), k.cod(g)).to_vec();
            for &(i0, r0) in &dom_sections {
                for &(i1, r1) in &cod_sections {
                    if k.compose(i1, f) == k.compose(g, i0) && k.compose(f, r0) == k.compose(r1, g) {
                        return CheckResult::Fail(RetractFailure { retract: f, of: g });
                    }
                }
            }
        }
    }
    CheckResult::Pass
}

fn pack(k: &FiniteCategory, u: MorId, v: MorId) -> u64 {
    u as u64 * k.n_morphisms() as u64 + v as u64
}

fn check_lifting(k: &FiniteCategory, left: &[MorId], right: &[MorId]) -> CheckResult<LiftingFailure> {
    for &i in left {
        for &p in right {
            // all diagonals, indexed by the square they would solve
            let mut lifts: HashMap<u64, MorId> = HashMap::new();
            for &h in k.hom(k.cod(i), k.dom(p)) {
                lifts.entry(pack(k, k.compose(h, i), k.compose(p, h))).or_insert(h);
            }
            // group candidate bottom edges by their composite with i
            let mut by_vi: HashMap<MorId, Vec<MorId>> = HashMap::new();
            for &v in k.hom(k.cod(i), k.cod(p)) {
                by_vi.entry(k.compose(v, i)).or_default().push(v);
            }
            for &u in k.hom(k.dom(i), k.dom(p)) {
                let Some(vs) = by_vi.get(&k.compose(p, u)) else { continue };
                for &v in vs {
                    if !lifts.contains_key(&pack(k, u, v)) {
                        return CheckResult::Fail(LiftingFailure { i, p, u, v });
                    }
                }
            }
        }
    }
    CheckResult::Pass
}

/// Which class goes first in a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMode {
    /// `f = (acyclic fibration) . (cofibration)`.
    CofThenAcyclicFib,
    /// `f = (fibration) . (acyclic cofibration)`.
    AcyclicCofThenFib,
}

/// `f = second . first` through `mid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    pub f: MorId,
    pub mid: ObjId,
    pub first: MorId,
    pub second: MorId,
}

/// Least factorization of `f` in the given mode: ascending middle object,
/// then ascending first leg, then ascending second leg.
pub fn factorize(m: &ModelStructure, f: MorId, mode: FactorMode) -> Option<Factorization> {
    let k = &m.base;
    let first_ok = |g: MorId| match mode {
        FactorMode::CofThenAcyclicFib => m.cof.contains(g),
        FactorMode::AcyclicCofThenFib => m.acyclic_cof(g),
    };
    let second_ok = |h: MorId| match mode {
        FactorMode::CofThenAcyclicFib => m.acyclic_fib(h),
        FactorMode::AcyclicCofThenFib => m.fib.contains(h),
    };
    for mid in 0..k.n_objects() {
        for &g in k.hom(k.dom(f), mid) {
            if !first_ok(g) {
                continue;
            }
            for &h in k.hom(mid, k.cod(f)) {
                if second_ok(h) && k.compose(h, g) == f {
                    return Some(Factorization { f, mid, first: g, second: h });
                }
            }
        }
    }
    None
}

fn check_factorization(m: &ModelStructure, mode: FactorMode) -> CheckResult<FactorizationFailure> {
    for f in 0..m.base.n_morphisms() {
        if factorize(m, f, mode).is_none() {
            return CheckResult::Fail(FactorizationFailure { f, mode });
        }
    }
    CheckResult::Pass
}

/// A commuting lifting square: `i` on the left, `p` on the right, `u` on
/// top, `v` on the bottom, with `p . u = v . i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftingProblem {
    pub i: MorId,
    pub p: MorId,
    pub u: MorId,
    pub v: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftingProblemError {
    #[error("the four morphisms do not fit together as a square")]
    BadShape,
    #[error("the square does not commute")]
    NotCommuting,
}

impl LiftingProblem {
    pub fn new(
        k: &FiniteCategory,
        i: MorId,
        p: MorId,
        u: MorId,
        v: MorId,
    ) -> Result<Self, LiftingProblemError> {
        let shape_ok = k.dom(u) == k.dom(i)
            && k.cod(u) == k.dom(p)
            && k.dom(v) == k.cod(i)
            && k.cod(v) == k.cod(p);
        if !shape_ok {
            return Err(LiftingProblemError::BadShape);
        }
        if k.compose(p, u) != k.compose(v, i) {
            return Err(LiftingProblemError::NotCommuting);
        }
        Ok(LiftingProblem { i, p, u, v })
    }
}

/// Least diagonal solving the problem, if one exists.
pub fn lift(k: &FiniteCategory, problem: &LiftingProblem) -> Option<MorId> {
    let LiftingProblem { i, p, u, v } = *problem;
    k.hom(k.cod(i), k.dom(p))
        .iter()
        .copied()
        .find(|&h| k.compose(h, i) == u && k.compose(p, h) == v)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("category has {non_identity} non-identity morphisms; triple enumeration over it is not feasible")]
    TooLarge { non_identity: usize },
    #[error("more than {cap} valid model structures; raise the cap to see them all")]
    CapExceeded { cap: usize },
}

/// Every model structure on `k`, by brute force over all triples of classes.
/// Classes are generated as bitmasks over non-identity morphisms, ascending,
/// nested weak equivalences / cofibrations / fibrations; the result order is
/// the discovery order.  Stops with an error if more than `cap` structures
/// are found.
pub fn enumerate_model_structures(
    k: &FiniteCategory,
    cap: usize,
) -> Result<Vec<ModelStructure>, EnumerateError> {
    let non_identity = k.n_morphisms() - k.n_objects();
    // 8^n candidate triples; past this size the scan would never finish
    if non_identity > 10 {
        return Err(EnumerateError::TooLarge { non_identity });
    }
    let class_of = |mask: u32| {
        let mut full = vec![false; k.n_morphisms()];
        for j in 0..non_identity {
            full[k.n_objects() + j] = mask >> j & 1 == 1;
        }
        ClassSet::from_mask(k, full)
    };
    let mut found = Vec::new();
    for w_mask in 0..1u32 << non_identity {
        let weq = class_of(w_mask);
        for c_mask in 0..1u32 << non_identity {
            let cof = class_of(c_mask);
            for f_mask in 0..1u32 << non_identity {
                let candidate = ModelStructure::new(
                    &format!("m{}", found.len()),
                    k.clone(),
                    weq.clone(),
                    cof.clone(),
                    class_of(f_mask),
                );
                if candidate.is_valid() {
                    if found.len() == cap {
                        return Err(EnumerateError::CapExceeded { cap });
                    }
                    found.push(candidate);
                }
            }
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("category has no initial object")]
    NoInitial,
    #[error("category has no terminal object")]
    NoTerminal,
}

/// Fibrant/cofibrant status of every object, relative to the least initial
/// and terminal objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub initial: ObjId,
    pub terminal: ObjId,
    pub cofibrant: Vec<bool>,
    pub fibrant: Vec<bool>,
    /// Objects that are both, ascending.
    pub both: Vec<ObjId>,
}

/// An object is cofibrant when the unique-from-initial morphism is a
/// cofibration, fibrant when the unique-to-terminal morphism is a fibration.
pub fn classify(m: &ModelStructure) -> Result<Classification, ClassifyError> {
    let k = &m.base;
    let initial = *k.initial_objects().first().ok_or(ClassifyError::NoInitial)?;
    let terminal = *k.terminal_objects().first().ok_or(ClassifyError::NoTerminal)?;
    let cofibrant: Vec<bool> = (0..k.n_objects())
        .map(|x| m.cof.contains(k.hom(initial, x)[0]))
        .collect();
    let fibrant: Vec<bool> = (0..k.n_objects())
        .map(|x| m.fib.contains(k.hom(x, terminal)[0]))
        .collect();
    let both = (0..k.n_objects()).filter(|&x| cofibrant[x] && fibrant[x]).collect();
    Ok(Classification { initial, terminal, cofibrant, fibrant, both })
}

/// Factor `initial -> x` as a cofibration followed by an acyclic fibration;
/// `mid` is a cofibrant stand-in for `x`.
pub fn cofibrant_replacement(
    m: &ModelStructure,
    cls: &Classification,
    x: ObjId,
) -> Option<Factorization> {
    let to_x = m.base.hom(cls.initial, x)[0];
    factorize(m, to_x, FactorMode::CofThenAcyclicFib)
}

/// Factor `x -> terminal` as an acyclic cofibration followed by a
/// fibration; `mid` is a fibrant stand-in for `x`.
pub fn fibrant_replacement(
    m: &ModelStructure,
    cls: &Classification,
    x: ObjId,
) -> Option<Factorization> {
    let to_terminal = m.base.hom(x, cls.terminal)[0];
    factorize(m, to_terminal, FactorMode::AcyclicCofThenFib)
}
