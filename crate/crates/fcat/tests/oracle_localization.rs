//! Independent cross-check of the word quotient.  A deliberately naive
//! engine builds raw letter sequences (identity letters and all), applies
//! the defining rewrites — compose adjacent base letters, cancel an
//! inverse against its own morphism — until nothing changes, and every
//! merge it finds must already hold in the library's classes.  On top of
//! that, every union the library logged is re-derived here from the
//! composition table alone.

use std::collections::HashMap;

use fcat::category::{FiniteCategory, MorId, RawCategory};
use fcat::localize::{present, saturate, RewriteStep, WordLetter, WordQuotient};
use fcat::model::ClassSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Letter {
    Base(MorId),
    Inv(MorId),
}

fn l_dom(k: &FiniteCategory, l: Letter) -> usize {
    match l {
        Letter::Base(f) => k.dom(f),
        Letter::Inv(w) => k.cod(w),
    }
}

fn l_cod(k: &FiniteCategory, l: Letter) -> usize {
    match l {
        Letter::Base(f) => k.cod(f),
        Letter::Inv(w) => k.dom(w),
    }
}

// Every composable sequence of at most `max` letters; x1 x2 ... xn denotes
// x1 . x2 . ... . xn with xn applied first.
fn all_words(k: &FiniteCategory, inverted: &[MorId], max: usize) -> Vec<Vec<Letter>> {
    let mut alphabet: Vec<Letter> = (0..k.n_morphisms()).map(Letter::Base).collect();
    alphabet.extend(inverted.iter().map(|&w| Letter::Inv(w)));
    let mut out: Vec<Vec<Letter>> = alphabet.iter().map(|&l| vec![l]).collect();
    let mut frontier = out.clone();
    for _ in 1..max {
        let mut next = Vec::new();
        for w in &frontier {
            let last = *w.last().unwrap();
            for &l in &alphabet {
                if l_cod(k, l) == l_dom(k, last) {
                    let mut ext = w.clone();
                    ext.push(l);
                    next.push(ext);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn rewrites(k: &FiniteCategory, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let replacement = match (w[i], w[i + 1]) {
            (Letter::Base(g), Letter::Base(f)) => Some(Letter::Base(k.compose(g, f))),
            (Letter::Base(g), Letter::Inv(v)) if g == v => {
                Some(Letter::Base(k.identity(k.cod(g))))
            }
            (Letter::Inv(v), Letter::Base(f)) if v == f => {
                Some(Letter::Base(k.identity(k.dom(f))))
            }
            _ => None,
        };
        if let Some(r) = replacement {
            let mut shorter: Vec<Letter> = w[..i].to_vec();
            shorter.push(r);
            shorter.extend_from_slice(&w[i + 2..]);
            out.push(shorter);
        }
    }
    out
}

struct Naive {
    words: Vec<Vec<Letter>>,
    index: HashMap<Vec<Letter>, usize>,
    parent: Vec<usize>,
}

impl Naive {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn naive_closure(k: &FiniteCategory, inverted: &[MorId], max: usize) -> Naive {
    let words = all_words(k, inverted, max);
    let index: HashMap<Vec<Letter>, usize> =
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let parent = (0..words.len()).collect();
    let mut n = Naive { words, index, parent };
    // iterate to an honest fixpoint even though one pass would do
    loop {
        let mut changed = false;
        for i in 0..n.words.len() {
            let word = n.words[i].clone();
            for r in rewrites(k, &word) {
                let j = *n.index.get(&r).expect("rewrites shorten, so they stay enumerated");
                changed |= n.union(i, j);
            }
        }
        if !changed {
            break;
        }
    }
    n
}

// Class of a raw word in the library's quotient, composed letter by letter.
fn library_class(k: &FiniteCategory, wq: &WordQuotient, w: &[Letter]) -> u32 {
    let cls = |l: Letter| match l {
        Letter::Base(f) => wq.class_of_morphism(f),
        Letter::Inv(v) => wq.class_of_inverse(v).expect("letter only exists for inverted w"),
    };
    let mut c = cls(w[0]);
    for &l in &w[1..] {
        c = wq.compose(c, cls(l)).expect("small composites reduce");
    }
    let _ = k;
    c
}

fn assert_naive_refines_library(k: &FiniteCategory, wq: &WordQuotient, max: usize) {
    let inverted = wq.presentation.inverted.clone();
    let mut n = naive_closure(k, &inverted, max);
    let mut lib_of_root: HashMap<usize, u32> = HashMap::new();
    for i in 0..n.words.len() {
        let root = n.find(i);
        let mine = library_class(k, wq, &n.words[i]);
        match lib_of_root.entry(root) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(mine);
            }
            std::collections::hash_map::Entry::Occupied(e) => {
                assert_eq!(
                    *e.get(),
                    mine,
                    "naive engine merged {:?} with an earlier word; the library did not",
                    n.words[i]
                );
            }
        }
    }
}

// Re-derive one logged union from the table: check the factoring equation
// and rebuild the spliced word.
fn replay_step(k: &FiniteCategory, wq: &WordQuotient, step: &RewriteStep) {
    let upper = wq.word(step.upper);
    let i = 2 * step.position as usize;
    let (WordLetter::Pure(l), WordLetter::Inverse(w), WordLetter::Pure(r)) =
        (upper[i], upper[i + 1], upper[i + 2])
    else {
        panic!("log position does not point at an inverse letter");
    };
    let factor = step.factor as MorId;
    let merged = if step.left_side {
        assert_eq!(k.compose(factor, w), l, "left factoring equation fails");
        k.compose(factor, r)
    } else {
        assert_eq!(k.compose(w, factor), r, "right factoring equation fails");
        k.compose(l, factor)
    };
    let mut expect: Vec<WordLetter> = upper[..i].to_vec();
    expect.push(WordLetter::Pure(merged));
    expect.extend_from_slice(&upper[i + 3..]);
    assert_eq!(wq.word(step.lower), expect, "splice does not reproduce the logged word");
    assert_eq!(
        wq.class_of_word(step.upper),
        wq.class_of_word(step.lower),
        "logged union is not reflected in the classes"
    );
}

fn poset2() -> FiniteCategory {
    let mut raw = RawCategory::new("two");
    raw.object("0");
    raw.object("1");
    raw.arrow("f", "0", "1");
    raw.validate().unwrap()
}

fn iso_pair() -> FiniteCategory {
    let mut raw = RawCategory::new("isopair");
    raw.object("a");
    raw.object("b");
    raw.arrow("s", "a", "b");
    raw.arrow("r", "b", "a");
    raw.composite("r", "s", "id_a");
    raw.composite("s", "r", "id_b");
    raw.validate().unwrap()
}

#[test]
fn poset2_all_inverted_agrees_with_naive_closure() {
    let k = poset2();
    let wq = saturate(&present(&k, &ClassSet::all(&k)), 3).unwrap();
    assert!(wq.status.is_exact());
    assert_eq!(wq.class_count(), 4);
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(wq.hom_classes(a, b).len(), 1);
        }
    }
    assert_naive_refines_library(&k, &wq, 4);
    for step in wq.log() {
        replay_step(&k, &wq, step);
    }
}

#[test]
fn poset2_identities_inverted_reproduces_the_base() {
    let k = poset2();
    let wq = saturate(&present(&k, &ClassSet::identities_only(&k)), 2).unwrap();
    assert!(wq.status.is_exact());
    assert_eq!(wq.class_count(), 3);
    // base hom-set sizes survive untouched
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(wq.hom_classes(a, b).len(), k.hom(a, b).len());
        }
    }
    assert_naive_refines_library(&k, &wq, 3);
    for step in wq.log() {
        replay_step(&k, &wq, step);
    }
}

#[test]
fn iso_pair_merges_formal_and_real_inverses() {
    let k = iso_pair();
    let wq = saturate(&present(&k, &ClassSet::isos(&k)), 3).unwrap();
    assert!(wq.status.is_exact());
    assert_eq!(wq.class_count(), 4);
    let (s, r) = (k.mor_index("s").unwrap(), k.mor_index("r").unwrap());
    assert_eq!(wq.class_of_inverse(s).unwrap(), wq.class_of_morphism(r));
    assert_naive_refines_library(&k, &wq, 4);
    for step in wq.log() {
        replay_step(&k, &wq, step);
    }
}

#[test]
fn terminal_is_one_class() {
    let mut raw = RawCategory::new("terminal");
    raw.object("*");
    let k = raw.validate().unwrap();
    let wq = saturate(&present(&k, &ClassSet::all(&k)), 1).unwrap();
    assert!(wq.status.is_exact());
    assert_eq!(wq.class_count(), 1);
    assert_naive_refines_library(&k, &wq, 3);
}

#[test]
fn chain3_all_inverted_collapses_every_hom_to_one_class() {
    let doc = fcat::format::parse(
        &std::fs::read_to_string(
            std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/chain3.fcat"),
        )
        .unwrap(),
    )
    .unwrap();
    let k = doc.categories[0].validate().unwrap();
    // at bound 3 the classes are provably unstable (merging the inverse of
    // the long edge with the composite of the short inverses takes a
    // four-letter word), and the status says so
    let at3 = saturate(&present(&k, &ClassSet::all(&k)), 3).unwrap();
    assert!(!at3.status.is_exact());
    let wq = saturate(&present(&k, &ClassSet::all(&k)), 4).unwrap();
    assert!(wq.status.is_exact(), "{:?}", wq.status);
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(wq.hom_classes(a, b).len(), 1, "hom({a}, {b})");
        }
    }
    assert_naive_refines_library(&k, &wq, 3);
    for step in wq.log() {
        replay_step(&k, &wq, step);
    }
}
