//! Localization by formal inverses, computed as a bounded word quotient.
//!
//! Given a category and a set `W` of morphisms to invert, the presented
//! category has all base morphisms plus one formal inverse per member of `W`
//! as generators, subject to the composition table, the unit laws, and the
//! two cancellation equations per inverse.  Morphisms of the localization
//! are equivalence classes of composable generator words.
//!
//! Words are kept in collapsed form: maximal runs of base generators are
//! composed down to a single morphism on the spot (the table relations and
//! identity elimination are built into the representation), so a stored
//! word alternates base morphisms and inverse letters.  The congruence is
//! then generated by cancellation rewrites — an inverse letter absorbing a
//! factor of the neighbouring segment — applied at every position of every
//! word up to a length bound, with a union-find collecting the classes and
//! a log of every union for later replay.
//!
//! The word problem has no general decision procedure, so the quotient
//! carries an explicit status instead of a truth claim: `exact` when the
//! classes provably stopped moving (same classes at bound `L` and `L+1`,
//! representative compositions land back inside the bound, and every
//! inverted morphism's class is invertible), otherwise `inconclusive`.
//! Every consumer — comparison, emission — refuses to over-read an
//! inconclusive quotient.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::category::{CategoryError, FiniteCategory, MorId, ObjId, RawCategory};
use crate::format::FcatDocument;
use crate::ho::{quotient, HoError};
use crate::model::{
    classify, cofibrant_replacement, fibrant_replacement, ClassSet, ModelStructure,
};

/// Default word-length bound for saturation.
pub const DEFAULT_BOUND: usize = 8;
/// Default cap on the number of stored words before giving up.
pub const DEFAULT_BUDGET: usize = 4_000_000;

// Cap on the nodes explored when reducing an out-of-bound composite back
// into the universe.
const REDUCE_CAP: usize = 20_000;

/// The localization presentation: every base morphism is a generator, and
/// every member of `inverted` contributes one formal inverse generator.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub base: FiniteCategory,
    /// Morphisms to invert, ascending (identities included — their inverses
    /// are redundant but harmless).
    pub inverted: Vec<MorId>,
    inv_index: Vec<Option<u32>>,
}

/// Build the presentation for inverting the given class.
pub fn present(k: &FiniteCategory, weq: &ClassSet) -> Presentation {
    let inverted = weq.members();
    let mut inv_index = vec![None; k.n_morphisms()];
    for (i, &w) in inverted.iter().enumerate() {
        inv_index[w] = Some(i as u32);
    }
    Presentation { base: k.clone(), inverted, inv_index }
}

impl Presentation {
    /// Base morphisms plus formal inverses.
    pub fn generator_count(&self) -> usize {
        self.base.n_morphisms() + self.inverted.len()
    }

    pub fn inverse_index(&self, w: MorId) -> Option<u32> {
        self.inv_index[w]
    }
}

// A stored word is an odd-length u32 sequence [k0, w1, k1, ..., wm, km]:
// even slots are base morphisms (identities allowed), odd slots index
// `inverted`.  It denotes k0 . inv(w1) . k1 . ... . inv(wm) . km, with km
// applied first.  The letter count — inverse letters plus non-identity
// segments — is what the bound limits; a lone identity segment is the
// empty word of its object.
#[derive(Clone, Copy)]
struct Span {
    offset: u32,
    elems: u16,
    letters: u16,
}

// Arena-backed intern table: one flat buffer for the element data, spans
// into it, and an open-addressed index so membership tests never allocate.
struct WordTable {
    data: Vec<u32>,
    spans: Vec<Span>,
    index: Vec<u32>,
    mask: usize,
}

const EMPTY_SLOT: u32 = u32::MAX;

fn hash_word(word: &[u32]) -> u64 {
    // FNV-1a over the raw elements
    let mut h = 0xcbf29ce484222325u64;
    for &x in word {
        h ^= x as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl WordTable {
    fn new() -> Self {
        WordTable { data: Vec::new(), spans: Vec::new(), index: vec![EMPTY_SLOT; 1024], mask: 1023 }
    }

    fn len(&self) -> usize {
        self.spans.len()
    }

    fn word(&self, id: u32) -> &[u32] {
        let s = self.spans[id as usize];
        &self.data[s.offset as usize..s.offset as usize + s.elems as usize]
    }

    fn letters(&self, id: u32) -> usize {
        self.spans[id as usize].letters as usize
    }

    fn get(&self, word: &[u32]) -> Option<u32> {
        let mut slot = hash_word(word) as usize & self.mask;
        loop {
            let entry = self.index[slot];
            if entry == EMPTY_SLOT {
                return None;
            }
            if self.word(entry) == word {
                return Some(entry);
            }
            slot = (slot + 1) & self.mask;
        }
    }

    fn grow(&mut self) {
        let new_cap = (self.mask + 1) * 2;
        self.mask = new_cap - 1;
        self.index = vec![EMPTY_SLOT; new_cap];
        for id in 0..self.spans.len() as u32 {
            let mut slot = hash_word(self.word(id)) as usize & self.mask;
            while self.index[slot] != EMPTY_SLOT {
                slot = (slot + 1) & self.mask;
            }
            self.index[slot] = id;
        }
    }

    fn intern(&mut self, word: &[u32], letters: usize) -> u32 {
        if let Some(id) = self.get(word) {
            return id;
        }
        if self.spans.len() * 10 >= (self.mask + 1) * 7 {
            self.grow();
        }
        let id = self.spans.len() as u32;
        let offset = self.data.len() as u32;
        self.data.extend_from_slice(word);
        self.spans.push(Span { offset, elems: word.len() as u16, letters: letters as u16 });
        let mut slot = hash_word(word) as usize & self.mask;
        while self.index[slot] != EMPTY_SLOT {
            slot = (slot + 1) & self.mask;
        }
        self.index[slot] = id;
        id
    }
}

// Union-find with path halving; the class representative is always the
// least word id, which generation order makes a shortest member.
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let g = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = g;
            x = g;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi as usize] = lo;
        true
    }
}

/// One recorded union: `upper` rewrites to `lower` by cancelling the
/// inverse letter at `position` against `factor` taken from the adjacent
/// segment (`left_side` tells which neighbour was factored).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteStep {
    pub upper: u32,
    pub lower: u32,
    pub position: u16,
    pub left_side: bool,
    pub factor: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SaturateError {
    #[error("bound {bound} needs more than {budget} words; raise the budget or lower the bound")]
    BoundTooLargeForBudget { bound: usize, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SaturationStatus {
    /// Classes provably stable: unchanged at bound+1, representative
    /// compositions reduce within bound, all inverted classes invertible.
    Exact,
    /// The certificate could not be established; classes may be too fine.
    Inconclusive(String),
}

impl SaturationStatus {
    pub fn is_exact(&self) -> bool {
        matches!(self, SaturationStatus::Exact)
    }
}

// Everything the closure produces for one bound.
struct Closure {
    table: WordTable,
    // flattened: word id -> least word id of its class
    root: Vec<u32>,
    log: Vec<RewriteStep>,
}

// Factorization tables: for each inverse letter w, which segments k admit
// k = w . k' (right) or k = k'' . w (left), and through which factors.
struct FactorTables {
    right: Vec<HashMap<MorId, Vec<MorId>>>,
    left: Vec<HashMap<MorId, Vec<MorId>>>,
    by_cod: Vec<Vec<MorId>>,
    w_by_dom: Vec<Vec<u32>>,
}

fn factor_tables(p: &Presentation) -> FactorTables {
    let k = &p.base;
    let mut right = vec![HashMap::new(); p.inverted.len()];
    let mut left = vec![HashMap::new(); p.inverted.len()];
    for (wi, &w) in p.inverted.iter().enumerate() {
        for kp in 0..k.n_morphisms() {
            if k.cod(kp) == k.dom(w) {
                right[wi]
                    .entry(k.compose(w, kp))
                    .or_insert_with(Vec::new)
                    .push(kp);
            }
            if k.dom(kp) == k.cod(w) {
                left[wi]
                    .entry(k.compose(kp, w))
                    .or_insert_with(Vec::new)
                    .push(kp);
            }
        }
    }
    let mut by_cod = vec![Vec::new(); k.n_objects()];
    for m in 0..k.n_morphisms() {
        by_cod[k.cod(m)].push(m);
    }
    let mut w_by_dom = vec![Vec::new(); k.n_objects()];
    for (wi, &w) in p.inverted.iter().enumerate() {
        w_by_dom[k.dom(w)].push(wi as u32);
    }
    FactorTables { right, left, by_cod, w_by_dom }
}

fn word_dom(k: &FiniteCategory, word: &[u32]) -> ObjId {
    k.dom(word[word.len() - 1] as MorId)
}

fn word_cod(k: &FiniteCategory, word: &[u32]) -> ObjId {
    k.cod(word[0] as MorId)
}

// The cancellation rewrite: drop the inverse letter at `pos`, replace its
// two neighbouring segments by the single composite dictated by `factor`.
fn cancel(
    k: &FiniteCategory,
    word: &[u32],
    pos: usize,
    left_side: bool,
    factor: MorId,
) -> (Vec<u32>, usize) {
    let (l, r) = (word[2 * pos] as MorId, word[2 * pos + 2] as MorId);
    let merged = if left_side { k.compose(factor, r) } else { k.compose(l, factor) };
    let mut out = Vec::with_capacity(word.len() - 2);
    out.extend_from_slice(&word[..2 * pos]);
    out.push(merged as u32);
    out.extend_from_slice(&word[2 * pos + 3..]);
    let letters = out.len() / 2 + out.iter().step_by(2).filter(|&&m| !k.is_identity(m as MorId)).count();
    (out, letters)
}

fn word_letters(k: &FiniteCategory, word: &[u32]) -> usize {
    word.len() / 2 + word.iter().step_by(2).filter(|&&m| !k.is_identity(m as MorId)).count()
}

// Generate every composable collapsed word within the letter bound, then
// apply every cancellation at every position once; the union-find closes
// the rest transitively.
fn close(
    p: &Presentation,
    ft: &FactorTables,
    bound: usize,
    budget: usize,
    keep_log: bool,
) -> Result<Closure, SaturateError> {
    let k = &p.base;
    let mut table = WordTable::new();
    for m in 0..k.n_morphisms() as u32 {
        let letters = usize::from(!k.is_identity(m as MorId));
        let id = table.intern(&[m], letters);
        debug_assert_eq!(id, m);
    }
    if table.len() > budget {
        return Err(SaturateError::BoundTooLargeForBudget { bound, budget });
    }
    // breadth-wise: ids grow as we scan, each word extended on the right by
    // one inverse letter and one segment
    let mut scratch = Vec::new();
    let mut id = 0;
    while (id as usize) < table.len() {
        let letters = table.letters(id);
        if letters + 1 <= bound {
            let dom = word_dom(k, table.word(id));
            for wi_pos in 0..ft.w_by_dom[dom].len() {
                let wi = ft.w_by_dom[dom][wi_pos];
                let w = p.inverted[wi as usize];
                for ki in 0..ft.by_cod[k.cod(w)].len() {
                    let seg = ft.by_cod[k.cod(w)][ki];
                    let extra = 1 + usize::from(!k.is_identity(seg));
                    if letters + extra > bound {
                        continue;
                    }
                    scratch.clear();
                    scratch.extend_from_slice(table.word(id));
                    scratch.push(wi);
                    scratch.push(seg as u32);
                    table.intern(&scratch, letters + extra);
                    if table.len() > budget {
                        return Err(SaturateError::BoundTooLargeForBudget { bound, budget });
                    }
                }
            }
        }
        id += 1;
    }

    let mut uf = UnionFind::new(table.len());
    let mut log = Vec::new();
    for id in 0..table.len() as u32 {
        let n_inv = table.word(id).len() / 2;
        for pos in 0..n_inv {
            let (wi, l, r) = {
                let w = table.word(id);
                (w[2 * pos + 1] as usize, w[2 * pos] as MorId, w[2 * pos + 2] as MorId)
            };
            for (left_side, fac) in [(false, ft.right[wi].get(&r)), (true, ft.left[wi].get(&l))] {
                for &factor in fac.into_iter().flatten() {
                    let (reduct, _) = cancel(k, table.word(id), pos, left_side, factor);
                    let rid = table.get(&reduct).expect("cancellation stays within the bound");
                    if uf.union(id, rid) && keep_log {
                        log.push(RewriteStep {
                            upper: id,
                            lower: rid,
                            position: pos as u16,
                            left_side,
                            factor: factor as u32,
                        });
                    }
                }
            }
        }
    }
    let root = (0..table.len() as u32).map(|i| uf.find(i)).collect();
    Ok(Closure { table, root, log })
}

// Shortlex order on expanded letter sequences: by letter count, then
// letter-by-letter with base ids before-or-after according to value and
// inverse letters ranked after all base letters.
fn shortlex_less(k: &FiniteCategory, n_mor: u32, a: &[u32], la: usize, b: &[u32], lb: usize) -> bool {
    if la != lb {
        return la < lb;
    }
    let expand = |w: &[u32]| {
        let mut out = Vec::with_capacity(la);
        for (i, &x) in w.iter().enumerate() {
            if i % 2 == 1 {
                out.push(n_mor + x);
            } else if !k.is_identity(x as MorId) {
                out.push(x);
            }
        }
        out
    };
    expand(a) < expand(b)
}

/// The bounded word quotient: classes of composable inverse-zigzag words,
/// their representatives, and the stability status.
pub struct WordQuotient {
    pub presentation: Presentation,
    pub bound: usize,
    pub status: SaturationStatus,
    table: WordTable,
    root: Vec<u32>,
    // root word id -> dense class id
    class_of_root: HashMap<u32, u32>,
    // class id -> shortlex-least word id
    reps: Vec<u32>,
    by_pair: HashMap<(ObjId, ObjId), Vec<u32>>,
    log: Vec<RewriteStep>,
    factors: FactorTables,
}

/// Run the closure at the given bound with the default budget.
pub fn saturate(p: &Presentation, bound: usize) -> Result<WordQuotient, SaturateError> {
    saturate_with_budget(p, bound, DEFAULT_BUDGET)
}

/// Run the closure with an explicit word budget.  The budget applies to the
/// stored universe at `bound`; the stability probe at `bound + 1` runs under
/// the same budget and downgrades the status to inconclusive when it cannot.
pub fn saturate_with_budget(
    p: &Presentation,
    bound: usize,
    budget: usize,
) -> Result<WordQuotient, SaturateError> {
    assert!(bound >= 1, "the bound must be at least 1");
    let k = &p.base;
    let n_mor = k.n_morphisms() as u32;
    let ft = factor_tables(p);
    let main = close(p, &ft, bound, budget, true)?;

    // canonical representatives: shortlex-least member per class
    let mut least: HashMap<u32, u32> = HashMap::new();
    for id in 0..main.table.len() as u32 {
        let r = main.root[id as usize];
        match least.entry(r) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(id);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let cur = *e.get();
                if shortlex_less(
                    k,
                    n_mor,
                    main.table.word(id),
                    main.table.letters(id),
                    main.table.word(cur),
                    main.table.letters(cur),
                ) {
                    e.insert(id);
                }
            }
        }
    }
    // dense class ids ordered by (dom, cod, representative shortlex)
    let mut roots: Vec<(u32, u32)> = least.iter().map(|(&r, &rep)| (r, rep)).collect();
    roots.sort_by(|&(_, a), &(_, b)| {
        let (ka, kb) = (main.table.word(a), main.table.word(b));
        let key_a = (word_dom(k, ka), word_cod(k, ka));
        let key_b = (word_dom(k, kb), word_cod(k, kb));
        key_a.cmp(&key_b).then_with(|| {
            if shortlex_less(k, n_mor, ka, main.table.letters(a), kb, main.table.letters(b)) {
                std::cmp::Ordering::Less
            } else if a == b {
                std::cmp::Ordering::Equal
            } else {
                std::cmp::Ordering::Greater
            }
        })
    });
    let mut class_of_root = HashMap::new();
    let mut reps = Vec::with_capacity(roots.len());
    let mut by_pair: HashMap<(ObjId, ObjId), Vec<u32>> = HashMap::new();
    for (c, &(root, rep)) in roots.iter().enumerate() {
        class_of_root.insert(root, c as u32);
        reps.push(rep);
        let w = main.table.word(rep);
        by_pair.entry((word_dom(k, w), word_cod(k, w))).or_default().push(c as u32);
    }

    let mut wq = WordQuotient {
        presentation: p.clone(),
        bound,
        status: SaturationStatus::Exact,
        table: main.table,
        root: main.root,
        class_of_root,
        reps,
        by_pair,
        log: main.log,
        factors: ft,
    };
    wq.status = wq.stability_status(budget);
    Ok(wq)
}

/// One letter of a stored word, boundary identities included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordLetter {
    /// A base morphism (possibly an identity segment).
    Pure(MorId),
    /// The formal inverse of an inverted morphism.
    Inverse(MorId),
}

impl WordQuotient {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn word_count(&self) -> usize {
        self.table.len()
    }

    /// The letters of a stored word, outermost (last-applied) first.
    pub fn word(&self, id: u32) -> Vec<WordLetter> {
        self.table
            .word(id)
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if i % 2 == 1 {
                    WordLetter::Inverse(self.presentation.inverted[x as usize])
                } else {
                    WordLetter::Pure(x as MorId)
                }
            })
            .collect()
    }

    /// Class of a stored word by its id.
    pub fn class_of_word(&self, id: u32) -> u32 {
        self.class_of_word_id(id)
    }

    /// Every recorded union, in discovery order.
    pub fn log(&self) -> &[RewriteStep] {
        &self.log
    }

    fn class_of_word_id(&self, id: u32) -> u32 {
        self.class_of_root[&self.root[id as usize]]
    }

    /// Class of a base morphism, seen as a one-letter word.
    pub fn class_of_morphism(&self, f: MorId) -> u32 {
        self.class_of_word_id(f as u32)
    }

    /// Class of the formal inverse of `w`, when `w` is inverted.
    pub fn class_of_inverse(&self, w: MorId) -> Option<u32> {
        let wi = self.presentation.inverse_index(w)?;
        let k = &self.presentation.base;
        let word = [k.dom(w) as u32, wi, k.cod(w) as u32];
        let id = self.table.get(&word).expect("one-letter inverse words are in the universe");
        Some(self.class_of_word_id(id))
    }

    /// Classes from `a` to `b`, ascending.
    pub fn hom_classes(&self, a: ObjId, b: ObjId) -> &[u32] {
        self.by_pair.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn class_dom(&self, c: u32) -> ObjId {
        word_dom(&self.presentation.base, self.table.word(self.reps[c as usize]))
    }

    pub fn class_cod(&self, c: u32) -> ObjId {
        word_cod(&self.presentation.base, self.table.word(self.reps[c as usize]))
    }

    /// The shortlex-least member, rendered with base names; inverse letters
    /// carry a prime.  The empty word renders as the identity of its object.
    pub fn rep_name(&self, c: u32) -> String {
        let k = &self.presentation.base;
        let w = self.table.word(self.reps[c as usize]);
        let mut parts = Vec::new();
        for (i, &x) in w.iter().enumerate() {
            if i % 2 == 1 {
                parts.push(format!("{}'", k.mor_name(self.presentation.inverted[x as usize])));
            } else if !k.is_identity(x as MorId) {
                parts.push(k.mor_name(x as MorId).to_owned());
            }
        }
        if parts.is_empty() {
            format!("id_{}", k.object_name(word_dom(k, w)))
        } else {
            parts.join("_")
        }
    }

    /// Class of `after . before`, when the composite word can be brought
    /// back under the bound.
    pub fn compose(&self, after: u32, before: u32) -> Option<u32> {
        let k = &self.presentation.base;
        assert_eq!(self.class_cod(before), self.class_dom(after), "classes are not composable");
        let (wa, wb) = (
            self.table.word(self.reps[after as usize]),
            self.table.word(self.reps[before as usize]),
        );
        let mut spliced = Vec::with_capacity(wa.len() + wb.len() - 1);
        spliced.extend_from_slice(&wa[..wa.len() - 1]);
        spliced.push(k.compose(wa[wa.len() - 1] as MorId, wb[0] as MorId) as u32);
        spliced.extend_from_slice(&wb[1..]);
        self.reduce_to_class(spliced)
    }

    // Bring a composable collapsed word into the universe by cancellation
    // steps alone.  Out-of-bound words are explored breadth-first; the
    // first in-bound descendant decides the class, and any further
    // in-bound descendant found within the node cap must agree.
    fn reduce_to_class(&self, start: Vec<u32>) -> Option<u32> {
        let k = &self.presentation.base;
        if word_letters(k, &start) <= self.bound {
            let id = self.table.get(&start).expect("in-bound composable words are interned");
            return Some(self.class_of_word_id(id));
        }
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut found: Option<u32> = None;
        let mut explored = 0;
        while let Some(w) = queue.pop_front() {
            explored += 1;
            if explored > REDUCE_CAP {
                break;
            }
            for pos in 0..w.len() / 2 {
                let wi = w[2 * pos + 1] as usize;
                let (l, r) = (w[2 * pos] as MorId, w[2 * pos + 2] as MorId);
                for (left_side, fac) in
                    [(false, self.factors.right[wi].get(&r)), (true, self.factors.left[wi].get(&l))]
                {
                    for &factor in fac.into_iter().flatten() {
                        let (reduct, letters) = cancel(k, &w, pos, left_side, factor);
                        if letters <= self.bound {
                            let id = self
                                .table
                                .get(&reduct)
                                .expect("in-bound composable words are interned");
                            let c = self.class_of_word_id(id);
                            match found {
                                None => found = Some(c),
                                Some(prev) if prev != c => return None,
                                _ => {}
                            }
                        } else if seen.insert(reduct.clone()) {
                            queue.push_back(reduct);
                        }
                    }
                }
            }
        }
        found
    }

    /// Whether the class has a two-sided inverse among the classes of the
    /// reversed object pair.
    pub fn is_invertible(&self, c: u32) -> bool {
        let (a, b) = (self.class_dom(c), self.class_cod(c));
        let (id_a, id_b) = (self.class_of_morphism(a), self.class_of_morphism(b));
        self.hom_classes(b, a).iter().any(|&d| {
            self.compose(c, d) == Some(id_b) && self.compose(d, c) == Some(id_a)
        })
    }

    // The three-part stability certificate; any failure downgrades to
    // inconclusive with the reason.
    fn stability_status(&self, budget: usize) -> SaturationStatus {
        let p = &self.presentation;
        let probe = match close(p, &self.factors, self.bound + 1, budget, false) {
            Ok(c) => c,
            Err(_) => {
                return SaturationStatus::Inconclusive(format!(
                    "stability probe at bound {} exceeds the {budget}-word budget",
                    self.bound + 1
                ));
            }
        };
        // no merges: distinct classes keep distinct probe roots
        let mut probe_root_of_class: HashMap<u32, u32> = HashMap::new();
        for (c, &rep) in self.reps.iter().enumerate() {
            let id2 = probe.table.get(self.table.word(rep)).expect("universe grows with the bound");
            let r2 = probe.root[id2 as usize];
            if probe_root_of_class.insert(r2, c as u32).is_some() {
                return SaturationStatus::Inconclusive(format!(
                    "classes merge at bound {}",
                    self.bound + 1
                ));
            }
        }
        // no new classes: every probe word joins an existing class
        let mut probe_roots: HashSet<u32> = HashSet::new();
        for id in 0..probe.table.len() as u32 {
            probe_roots.insert(probe.root[id as usize]);
        }
        if probe_roots.len() != self.reps.len() {
            return SaturationStatus::Inconclusive(format!(
                "new classes appear at bound {}",
                self.bound + 1
            ));
        }
        // representative compositions stay reducible
        for c1 in 0..self.reps.len() as u32 {
            for c2 in 0..self.reps.len() as u32 {
                if self.class_cod(c1) == self.class_dom(c2) && self.compose(c2, c1).is_none() {
                    return SaturationStatus::Inconclusive(format!(
                        "composite of representatives {} and {} does not reduce within bound {}",
                        self.rep_name(c1),
                        self.rep_name(c2),
                        self.bound
                    ));
                }
            }
        }
        // inverted morphisms actually invert
        for &w in &p.inverted {
            let cw = self.class_of_morphism(w);
            let cbar = self.class_of_inverse(w).expect("member of the inverted set");
            let (id_dom, id_cod) = (
                self.class_of_morphism(p.base.identity(p.base.dom(w))),
                self.class_of_morphism(p.base.identity(p.base.cod(w))),
            );
            if self.compose(cw, cbar) != Some(id_cod) || self.compose(cbar, cw) != Some(id_dom) {
                return SaturationStatus::Inconclusive(format!(
                    "inverted morphism {} is not invertible at bound {}",
                    p.base.mor_name(w),
                    self.bound
                ));
            }
        }
        SaturationStatus::Exact
    }

    /// Re-derive every logged union from its recorded rewrite; returns the
    /// index of the first step that does not replay.
    pub fn verify_log(&self) -> Result<usize, usize> {
        let k = &self.presentation.base;
        for (i, step) in self.log.iter().enumerate() {
            let upper = self.table.word(step.upper);
            let (reduct, _) =
                cancel(k, upper, step.position as usize, step.left_side, step.factor as MorId);
            let ok = self.table.get(&reduct) == Some(step.lower)
                && self.root[step.upper as usize] == self.root[step.lower as usize];
            if !ok {
                return Err(i);
            }
        }
        Ok(self.log.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmitError {
    #[error("the word quotient is not exact; refusing to emit it as a category")]
    NotExact,
    #[error("a composite of class representatives does not reduce within the bound")]
    Irreducible,
    #[error("the emitted class table failed validation")]
    Invalid(Vec<CategoryError>),
}

/// Materialize an exact quotient as a category document: one arrow per
/// non-identity class, named after its representative word.
pub fn emit_localization(wq: &WordQuotient) -> Result<FcatDocument, EmitError> {
    if !wq.status.is_exact() {
        return Err(EmitError::NotExact);
    }
    let k = &wq.presentation.base;
    let mut raw = RawCategory::new(&format!("Loc_{}", k.name()));
    for o in 0..k.n_objects() {
        raw.object(k.object_name(o));
    }
    let identity_classes: Vec<u32> =
        (0..k.n_objects()).map(|o| wq.class_of_morphism(k.identity(o))).collect();
    let is_identity_class = |c: u32| identity_classes.contains(&c);
    let mut used: HashSet<String> =
        (0..k.n_objects()).map(|o| format!("id_{}", k.object_name(o))).collect();
    let mut names: HashMap<u32, String> = HashMap::new();
    for (o, &c) in identity_classes.iter().enumerate() {
        names.insert(c, format!("id_{}", k.object_name(o)));
    }
    for c in 0..wq.class_count() as u32 {
        if is_identity_class(c) {
            continue;
        }
        let mut name = wq.rep_name(c);
        while !used.insert(name.clone()) {
            name.push('\'');
        }
        raw.arrow(&name, k.object_name(wq.class_dom(c)), k.object_name(wq.class_cod(c)));
        names.insert(c, name);
    }
    for c1 in 0..wq.class_count() as u32 {
        for c2 in 0..wq.class_count() as u32 {
            if is_identity_class(c1) || is_identity_class(c2) {
                continue;
            }
            if wq.class_cod(c1) != wq.class_dom(c2) {
                continue;
            }
            let r = wq.compose(c2, c1).ok_or(EmitError::Irreducible)?;
            raw.composite(&names[&c2], &names[&c1], &names[&r]);
        }
    }
    raw.validate().map_err(EmitError::Invalid)?;
    let mut doc = FcatDocument { categories: vec![raw], models: Vec::new() };
    crate::format::canonicalize(&mut doc);
    Ok(doc)
}

/// Outcome of checking the quotient category against the word quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareVerdict {
    Equivalent,
    NotEquivalent(CompareWitness),
    Inconclusive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareWitness {
    /// Homotopic morphisms with different word classes.
    NotWellDefined { alpha: MorId, beta: MorId },
    /// Two homotopy classes over this pair share a word class.
    NotFaithful { dom: ObjId, cod: ObjId },
    /// A word class over this pair is not hit by any homotopy class.
    NotFull { dom: ObjId, cod: ObjId },
    /// The replacement chain fails to connect this object invertibly.
    NotEssentiallySurjective { object: ObjId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub verdict: CompareVerdict,
    pub bound: usize,
    /// Morphism count of the homotopy category.
    pub ho_classes: usize,
    /// Word classes between fibrant-cofibrant objects.
    pub loc_classes_on_kcf: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompareError {
    #[error(transparent)]
    Ho(#[from] HoError),
    #[error(transparent)]
    Saturate(#[from] SaturateError),
}

/// Check that sending each homotopy class to the word class of any member
/// is a well-defined functor and an equivalence onto the localization.
pub fn compare(m: &ModelStructure, bound: usize) -> Result<CompareReport, CompareError> {
    let k = &m.base;
    let h = quotient(m)?;
    let p = present(k, &m.weq);
    let wq = saturate(&p, bound)?;
    let loc_classes_on_kcf = h
        .objects
        .iter()
        .flat_map(|&a| h.objects.iter().map(move |&b| (a, b)))
        .map(|(a, b)| wq.hom_classes(a, b).len())
        .sum();
    let mut report = CompareReport {
        verdict: CompareVerdict::Equivalent,
        bound,
        ho_classes: h.quotient.n_morphisms(),
        loc_classes_on_kcf,
    };
    let mut finish = |verdict: CompareVerdict| {
        report.verdict = verdict;
        Ok(report.clone())
    };
    if let SaturationStatus::Inconclusive(reason) = &wq.status {
        return finish(CompareVerdict::Inconclusive(format!("saturation: {reason}")));
    }

    // well-definedness: homotopic members share a word class
    for members in h.classes(k) {
        for pair in members.windows(2) {
            if wq.class_of_morphism(pair[0]) != wq.class_of_morphism(pair[1]) {
                return finish(CompareVerdict::NotEquivalent(CompareWitness::NotWellDefined {
                    alpha: pair[0],
                    beta: pair[1],
                }));
            }
        }
    }

    // full and faithful on every fibrant-cofibrant hom-set
    for &a in &h.objects {
        for &b in &h.objects {
            let (qa, qb) = (h.project_object(a).unwrap(), h.project_object(b).unwrap());
            let mut image: Vec<u32> = h
                .quotient
                .hom(qa, qb)
                .iter()
                .map(|&q| wq.class_of_morphism(h.representative[q]))
                .collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            if image.len() != before {
                return finish(CompareVerdict::NotEquivalent(CompareWitness::NotFaithful {
                    dom: a,
                    cod: b,
                }));
            }
            if image != wq.hom_classes(a, b) {
                return finish(CompareVerdict::NotEquivalent(CompareWitness::NotFull {
                    dom: a,
                    cod: b,
                }));
            }
        }
    }

    // essential surjectivity via the replacement chain x <- Qx -> RQx
    let cls = classify(m).map_err(HoError::from)?;
    for x in 0..k.n_objects() {
        if cls.cofibrant[x] && cls.fibrant[x] {
            continue;
        }
        let Some(step1) = cofibrant_replacement(m, &cls, x) else {
            return finish(CompareVerdict::Inconclusive(format!(
                "object {x} has no cofibrant replacement"
            )));
        };
        let Some(step2) = fibrant_replacement(m, &cls, step1.mid) else {
            return finish(CompareVerdict::Inconclusive(format!(
                "object {} has no fibrant replacement",
                step1.mid
            )));
        };
        let target = step2.mid;
        if !(cls.cofibrant[target] && cls.fibrant[target]) {
            return finish(CompareVerdict::Inconclusive(format!(
                "replacement chain for object {x} leaves the fibrant-cofibrant part"
            )));
        }
        // step1.second : Qx -> x is a weak equivalence, as is
        // step2.first : Qx -> RQx; the connecting class is their zigzag
        let back = wq
            .class_of_inverse(step1.second)
            .expect("acyclic fibrations are inverted");
        let forward = wq.class_of_morphism(step2.first);
        let chain_ok = wq.is_invertible(back)
            && wq.is_invertible(forward)
            && wq.compose(forward, back).is_some_and(|c| wq.is_invertible(c));
        if !chain_ok {
            return finish(CompareVerdict::NotEquivalent(
                CompareWitness::NotEssentiallySurjective { object: x },
            ));
        }
    }
    let out = report;
    Ok(out)
}
