//! Finite categories as explicit composition tables.
//!
//! A category here is a finite list of objects, a finite list of morphisms
//! with assigned domain and codomain, and a total composition table on the
//! composable pairs.  Identities are not written down by the caller: every
//! object contributes one, and the validator fills in the unit laws itself.
//! All categorical laws are checked by exhaustive enumeration, so a value of
//! [`FiniteCategory`] is always a genuine category.

use std::collections::HashMap;

/// Index of an object.  Objects are numbered densely from zero in
/// declaration order.
pub type ObjId = usize;

/// Index of a morphism.  The first `n_objects` morphism ids are the identity
/// morphisms, with `identity(o) == o`; declared arrows follow in declaration
/// order.
pub type MorId = usize;

const NO_ENTRY: u32 = u32::MAX;

/// An unvalidated category description: named objects, named arrows, and the
/// composites of composable arrow pairs.  Build one of these (by hand or from
/// a parsed file) and call [`RawCategory::validate`] to obtain a
/// [`FiniteCategory`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    /// Category name, used in reports and emitted files.
    pub name: String,
    /// Object names in declaration order.
    pub objects: Vec<String>,
    /// Non-identity arrows in declaration order.
    pub arrows: Vec<RawArrow>,
    /// Declared composites `after . before = result`.
    pub composites: Vec<RawComposite>,
}

/// A named arrow between two named objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArrow {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// One entry of the composition table: `after . before = result`, where
/// `before` is applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawComposite {
    pub after: String,
    pub before: String,
    pub result: String,
}

impl RawCategory {
    pub fn new(name: &str) -> Self {
        RawCategory { name: name.to_owned(), ..Default::default() }
    }

    pub fn object(&mut self, name: &str) {
        self.objects.push(name.to_owned());
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) {
        self.arrows.push(RawArrow {
            name: name.to_owned(),
            dom: dom.to_owned(),
            cod: cod.to_owned(),
        });
    }

    pub fn composite(&mut self, after: &str, before: &str, result: &str) {
        self.composites.push(RawComposite {
            after: after.to_owned(),
            before: before.to_owned(),
            result: result.to_owned(),
        });
    }
}

/// Everything that can be wrong with a [`RawCategory`].  Validation collects
/// the complete list rather than stopping at the first problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism name `{0}`")]
    DuplicateMorphism(String),
    #[error("arrow `{arrow}` references unknown object `{object}`")]
    UnknownObject { arrow: String, object: String },
    #[error("composition entry references unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{after} . {before}` is not composable: `{before}` ends at {cod_before} but `{after}` starts at {dom_after}")]
    NotComposable { after: String, before: String, cod_before: String, dom_after: String },
    #[error("`{after} . {before} = {result}` is ill-typed: the composite must go {expected_dom} -> {expected_cod} but `{result}` goes {got_dom} -> {got_cod}")]
    CompositeTypeMismatch {
        after: String,
        before: String,
        result: String,
        expected_dom: String,
        expected_cod: String,
        got_dom: String,
        got_cod: String,
    },
    #[error("composite of `{after} . {before}` is declared more than once")]
    DuplicateComposite { after: String, before: String },
    #[error("missing composite for `{after} . {before}`")]
    MissingComposite { after: String, before: String },
    #[error("identity law broken: `{after} . {before}` declared as `{got}` but the unit laws force `{expected}`")]
    IdentityViolation { after: String, before: String, got: String, expected: String },
    #[error("associativity broken on ({h}, {g}, {f}): ({h} . {g}) . {f} = {left} but {h} . ({g} . {f}) = {right}")]
    AssocViolation { h: String, g: String, f: String, left: String, right: String },
}

/// A validated finite category.  Identity morphisms occupy ids
/// `0..n_objects` with `identity(o) == o`; the composition table is total on
/// composable pairs and satisfies the unit and associativity laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    object_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    // row-major: table[g * n_mor + f] is g . f, NO_ENTRY when not composable
    table: Vec<u32>,
    // hom[a * n_obj + b]: ascending morphism ids from a to b
    hom: Vec<Vec<MorId>>,
}

impl RawCategory {
    /// Check every law by enumeration.  On failure returns every violation
    /// found, in a deterministic order.
    pub fn validate(&self) -> Result<FiniteCategory, Vec<CategoryError>> {
        let mut errors = Vec::new();

        // Name resolution. Identities are morphisms too: object `x`
        // contributes morphism `id_x`, and that name is reserved.
        let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
        for (i, name) in self.objects.iter().enumerate() {
            if obj_index.insert(name, i).is_some() {
                errors.push(CategoryError::DuplicateObject(name.clone()));
            }
        }
        let n_obj = self.objects.len();
        let mut mor_names: Vec<String> = self.objects.iter().map(|o| format!("id_{o}")).collect();
        let mut mor_index: HashMap<String, MorId> = HashMap::new();
        for (i, name) in mor_names.iter().enumerate() {
            if mor_index.insert(name.clone(), i).is_some() {
                errors.push(CategoryError::DuplicateMorphism(name.clone()));
            }
        }
        let mut dom: Vec<ObjId> = (0..n_obj).collect();
        let mut cod: Vec<ObjId> = (0..n_obj).collect();
        for arrow in &self.arrows {
            let id = mor_names.len();
            if mor_index.insert(arrow.name.clone(), id).is_some() {
                errors.push(CategoryError::DuplicateMorphism(arrow.name.clone()));
            }
            let mut resolve = |object: &String| match obj_index.get(object.as_str()) {
                Some(&o) => o,
                None => {
                    errors.push(CategoryError::UnknownObject {
                        arrow: arrow.name.clone(),
                        object: object.clone(),
                    });
                    0
                }
            };
            let d = resolve(&arrow.dom);
            let c = resolve(&arrow.cod);
            mor_names.push(arrow.name.clone());
            dom.push(d);
            cod.push(c);
        }
        // Unknown names make ids meaningless, so stop before the table phase.
        if !errors.is_empty() {
            for comp in &self.composites {
                for name in [&comp.after, &comp.before, &comp.result] {
                    if !mor_index.contains_key(name.as_str()) {
                        errors.push(CategoryError::UnknownMorphism(name.clone()));
                    }
                }
            }
            return Err(errors);
        }

        let n_mor = mor_names.len();
        let mut table = vec![NO_ENTRY; n_mor * n_mor];
        // Unit laws are filled in up front; a declared entry that disagrees
        // with them is an identity violation, not a duplicate.
        for f in 0..n_mor {
            table[cod[f] * n_mor + f] = f as u32;
            table[f * n_mor + dom[f]] = f as u32;
        }

        for comp in &self.composites {
            let ids: Option<Vec<MorId>> = [&comp.after, &comp.before, &comp.result]
                .iter()
                .map(|name| mor_index.get(name.as_str()).copied())
                .collect();
            let Some(ids) = ids else {
                for name in [&comp.after, &comp.before, &comp.result] {
                    if !mor_index.contains_key(name.as_str()) {
                        errors.push(CategoryError::UnknownMorphism(name.clone()));
                    }
                }
                continue;
            };
            let (g, f, h) = (ids[0], ids[1], ids[2]);
            if cod[f] != dom[g] {
                errors.push(CategoryError::NotComposable {
                    after: comp.after.clone(),
                    before: comp.before.clone(),
                    cod_before: self.objects[cod[f]].clone(),
                    dom_after: self.objects[dom[g]].clone(),
                });
                continue;
            }
            if dom[h] != dom[f] || cod[h] != cod[g] {
                errors.push(CategoryError::CompositeTypeMismatch {
                    after: comp.after.clone(),
                    before: comp.before.clone(),
                    result: comp.result.clone(),
                    expected_dom: self.objects[dom[f]].clone(),
                    expected_cod: self.objects[cod[g]].clone(),
                    got_dom: self.objects[dom[h]].clone(),
                    got_cod: self.objects[cod[h]].clone(),
                });
                continue;
            }
            let cell = &mut table[g * n_mor + f];
            if f < n_obj || g < n_obj {
                if *cell != h as u32 {
                    errors.push(CategoryError::IdentityViolation {
                        after: comp.after.clone(),
                        before: comp.before.clone(),
                        got: comp.result.clone(),
                        expected: mor_names[*cell as usize].clone(),
                    });
                }
            } else if *cell != NO_ENTRY {
                errors.push(CategoryError::DuplicateComposite {
                    after: comp.after.clone(),
                    before: comp.before.clone(),
                });
            } else {
                *cell = h as u32;
            }
        }

        for g in 0..n_mor {
            for f in 0..n_mor {
                if cod[f] == dom[g] && table[g * n_mor + f] == NO_ENTRY {
                    errors.push(CategoryError::MissingComposite {
                        after: mor_names[g].clone(),
                        before: mor_names[f].clone(),
                    });
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        // Associativity over every composable triple. The table is total by
        // now, so both bracketings are defined.
        for h in 0..n_mor {
            for g in 0..n_mor {
                if cod[g] != dom[h] {
                    continue;
                }
                let hg = table[h * n_mor + g] as usize;
                for f in 0..n_mor {
                    if cod[f] != dom[g] {
                        continue;
                    }
                    let gf = table[g * n_mor + f] as usize;
                    let left = table[hg * n_mor + f] as usize;
                    let right = table[h * n_mor + gf] as usize;
                    if left != right {
                        errors.push(CategoryError::AssocViolation {
                            h: mor_names[h].clone(),
                            g: mor_names[g].clone(),
                            f: mor_names[f].clone(),
                            left: mor_names[left].clone(),
                            right: mor_names[right].clone(),
                        });
                    }
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..n_mor {
            hom[dom[m] * n_obj + cod[m]].push(m);
        }
        Ok(FiniteCategory {
            name: self.name.clone(),
            object_names: self.objects.clone(),
            mor_names,
            dom,
            cod,
            table,
            hom,
        })
    }
}

impl FiniteCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.object_names[o]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m]
    }

    pub fn object_index(&self, name: &str) -> Option<ObjId> {
        self.object_names.iter().position(|n| n == name)
    }

    pub fn mor_index(&self, name: &str) -> Option<MorId> {
        self.mor_names.iter().position(|n| n == name)
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.dom[m]
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.cod[m]
    }

    /// The identity on `o`.  Identities sit at the start of the morphism
    /// numbering, so this is the number `o` itself.
    pub fn identity(&self, o: ObjId) -> MorId {
        debug_assert!(o < self.n_objects());
        o
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        m < self.n_objects()
    }

    /// `g . f` (`f` applied first).  Panics if the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(self.cod[f], self.dom[g], "compose on non-composable pair");
        self.table[g * self.mor_names.len() + f] as MorId
    }

    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.cod[f] == self.dom[g] {
            Some(self.table[g * self.mor_names.len() + f] as MorId)
        } else {
            None
        }
    }

    /// Morphisms from `a` to `b`, ascending.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a * self.object_names.len() + b]
    }

    /// True when every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// Least two-sided inverse of `m`, if any.
    pub fn inverse_of(&self, m: MorId) -> Option<MorId> {
        let (d, c) = (self.dom[m], self.cod[m]);
        self.hom(c, d)
            .iter()
            .copied()
            .find(|&g| self.compose(g, m) == self.identity(d) && self.compose(m, g) == self.identity(c))
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse_of(m).is_some()
    }

    /// Membership mask of the isomorphisms.
    pub fn iso_set(&self) -> Vec<bool> {
        (0..self.n_morphisms()).map(|m| self.is_iso(m)).collect()
    }

    /// Pairs `(s, r)` with `s: a -> b`, `r: b -> a`, `r . s = id_a`,
    /// ascending in `(s, r)`.
    pub fn section_pairs(&self, a: ObjId, b: ObjId) -> Vec<(MorId, MorId)> {
        let mut out = Vec::new();
        for &s in self.hom(a, b) {
            for &r in self.hom(b, a) {
                if self.compose(r, s) == self.identity(a) {
                    out.push((s, r));
                }
            }
        }
        out
    }

    /// Least witness `(i0, r0, i1, r1)` that `f` is a retract of `g`:
    ///
    /// ```text
    /// dom f --i0--> dom g --r0--> dom f      r0 . i0 = id
    ///   |f            |g            |f       i1 . f  = g . i0
    /// cod f --i1--> cod g --r1--> cod f      f  . r0 = r1 . g
    ///   ```
    pub fn retract_witness(&self, f: MorId, g: MorId) -> Option<(MorId, MorId, MorId, MorId)> {
        for &(i0, r0) in &self.section_pairs(self.dom[f], self.dom[g]) {
            for &(i1, r1) in &self.section_pairs(self.cod[f], self.cod[g]) {
                if self.compose(i1, f) == self.compose(g, i0)
                    && self.compose(f, r0) == self.compose(r1, g)
                {
                    return Some((i0, r0, i1, r1));
                }
            }
        }
        None
    }

    /// Objects with exactly one morphism to every object.
    pub fn initial_objects(&self) -> Vec<ObjId> {
        (0..self.n_objects())
            .filter(|&x| (0..self.n_objects()).all(|y| self.hom(x, y).len() == 1))
            .collect()
    }

    /// Objects with exactly one morphism from every object.
    pub fn terminal_objects(&self) -> Vec<ObjId> {
        (0..self.n_objects())
            .filter(|&x| (0..self.n_objects()).all(|y| self.hom(y, x).len() == 1))
            .collect()
    }

    /// The same objects and morphisms with all arrows reversed; composition
    /// is transposed.  Object and morphism ids carry over unchanged, and the
    /// name is kept (the opposite is an internal construction, never
    /// written to a file).
    pub fn opposite(&self) -> FiniteCategory {
        let n_mor = self.mor_names.len();
        let n_obj = self.object_names.len();
        let mut table = vec![NO_ENTRY; n_mor * n_mor];
        for g in 0..n_mor {
            for f in 0..n_mor {
                // (g . f) in the opposite is (f . g) here
                if self.cod[g] == self.dom[f] {
                    table[g * n_mor + f] = self.table[f * n_mor + g];
                }
            }
        }
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..n_mor {
            hom[self.cod[m] * n_obj + self.dom[m]].push(m);
        }
        FiniteCategory {
            name: self.name.clone(),
            object_names: self.object_names.clone(),
            mor_names: self.mor_names.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
            hom,
        }
    }

    /// The full subcategory on the given objects (deduplicated, taken in
    /// ascending order).  Morphism ids are renumbered; the returned value
    /// tracks both directions of the renumbering.
    pub fn full_subcategory(&self, objects: &[ObjId], name: &str) -> Subcategory {
        let mut keep = objects.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut obj_from_parent = vec![None; self.n_objects()];
        for (new, &old) in keep.iter().enumerate() {
            obj_from_parent[old] = Some(new);
        }
        // identities first, then the surviving non-identity morphisms in
        // their old order, to preserve the id layout invariant
        let mut mor_to_parent: Vec<MorId> = keep.clone();
        for m in self.n_objects()..self.n_morphisms() {
            if obj_from_parent[self.dom[m]].is_some() && obj_from_parent[self.cod[m]].is_some() {
                mor_to_parent.push(m);
            }
        }
        let mut mor_from_parent = vec![None; self.n_morphisms()];
        for (new, &old) in mor_to_parent.iter().enumerate() {
            mor_from_parent[old] = Some(new);
        }
        let n_obj = keep.len();
        let n_mor = mor_to_parent.len();
        let mut table = vec![NO_ENTRY; n_mor * n_mor];
        let mut dom = Vec::with_capacity(n_mor);
        let mut cod = Vec::with_capacity(n_mor);
        for &old in &mor_to_parent {
            dom.push(obj_from_parent[self.dom[old]].unwrap());
            cod.push(obj_from_parent[self.cod[old]].unwrap());
        }
        for g in 0..n_mor {
            for f in 0..n_mor {
                if cod[f] == dom[g] {
                    let old = self.compose(mor_to_parent[g], mor_to_parent[f]);
                    // full subcategory: the composite stays inside
                    table[g * n_mor + f] = mor_from_parent[old].unwrap() as u32;
                }
            }
        }
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..n_mor {
            hom[dom[m] * n_obj + cod[m]].push(m);
        }
        let cat = FiniteCategory {
            name: name.to_owned(),
            object_names: keep.iter().map(|&o| self.object_names[o].clone()).collect(),
            mor_names: mor_to_parent.iter().map(|&m| self.mor_names[m].clone()).collect(),
            dom,
            cod,
            table,
            hom,
        };
        Subcategory { cat, obj_to_parent: keep, mor_to_parent, obj_from_parent, mor_from_parent }
    }

    /// Rebuild the raw description (used when writing a category back out).
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory::new(&self.name);
        raw.objects = self.object_names.clone();
        for m in self.n_objects()..self.n_morphisms() {
            raw.arrow(
                &self.mor_names[m],
                &self.object_names[self.dom[m]],
                &self.object_names[self.cod[m]],
            );
        }
        for g in self.n_objects()..self.n_morphisms() {
            for f in self.n_objects()..self.n_morphisms() {
                if self.cod[f] == self.dom[g] {
                    raw.composite(&self.mor_names[g], &self.mor_names[f], &self.mor_names[self.compose(g, f)]);
                }
            }
        }
        raw
    }
}

/// A full subcategory together with the id translations in both directions.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub cat: FiniteCategory,
    /// Object id in the subcategory -> object id in the parent.
    pub obj_to_parent: Vec<ObjId>,
    /// Morphism id in the subcategory -> morphism id in the parent.
    pub mor_to_parent: Vec<MorId>,
    /// Object id in the parent -> id in the subcategory, if kept.
    pub obj_from_parent: Vec<Option<ObjId>>,
    /// Morphism id in the parent -> id in the subcategory, if kept.
    pub mor_from_parent: Vec<Option<MorId>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 0 -> 1 with a single non-identity arrow.
    pub(crate) fn poset2() -> FiniteCategory {
        let mut raw = RawCategory::new("two");
        raw.object("0");
        raw.object("1");
        raw.arrow("f", "0", "1");
        raw.validate().expect("poset2 is a category")
    }

    /// 0 -> 1 -> 2 with the composite filled in.
    pub(crate) fn chain3_raw() -> RawCategory {
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

    #[test]
    fn poset2_basics() {
        let k = poset2();
        assert_eq!(k.n_objects(), 2);
        assert_eq!(k.n_morphisms(), 3);
        assert_eq!(k.mor_name(0), "id_0");
        assert_eq!(k.mor_name(2), "f");
        assert_eq!(k.identity(1), 1);
        assert_eq!(k.hom(0, 1), &[2]);
        assert!(k.hom(1, 0).is_empty());
        assert_eq!(k.compose(2, 0), 2);
        assert_eq!(k.compose(1, 2), 2);
        assert_eq!(k.try_compose(2, 2), None);
        assert_eq!(k.initial_objects(), vec![0]);
        assert_eq!(k.terminal_objects(), vec![1]);
        assert_eq!(k.iso_set(), vec![true, true, false]);
        assert!(k.is_thin());
    }

    #[test]
    fn chain3_validates_and_composes() {
        let k = chain3_raw().validate().expect("chain3 is a category");
        let f01 = k.mor_index("f01").unwrap();
        let f12 = k.mor_index("f12").unwrap();
        let f02 = k.mor_index("f02").unwrap();
        assert_eq!(k.compose(f12, f01), f02);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = chain3_raw();
        raw.composites.clear();
        let errs = raw.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![CategoryError::MissingComposite { after: "f12".into(), before: "f01".into() }]
        );
    }

    #[test]
    fn duplicate_composite_is_reported() {
        let mut raw = chain3_raw();
        raw.composite("f12", "f01", "f02");
        let errs = raw.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![CategoryError::DuplicateComposite { after: "f12".into(), before: "f01".into() }]
        );
    }

    #[test]
    fn non_composable_entry_is_reported() {
        let mut raw = chain3_raw();
        raw.composite("f01", "f12", "f02");
        let errs = raw.validate().unwrap_err();
        assert!(matches!(errs[0], CategoryError::NotComposable { .. }));
    }

    #[test]
    fn identity_violation_is_reported() {
        let mut raw = RawCategory::new("parallel");
        raw.object("0");
        raw.object("1");
        raw.arrow("f", "0", "1");
        raw.arrow("g", "0", "1");
        raw.composite("f", "id_0", "g");
        let errs = raw.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![CategoryError::IdentityViolation {
                after: "f".into(),
                before: "id_0".into(),
                got: "g".into(),
                expected: "f".into(),
            }]
        );
    }

    #[test]
    fn associativity_violation_is_reported() {
        // one object, two idempotent-looking arrows wired inconsistently
        let mut raw = RawCategory::new("bad");
        raw.object("x");
        raw.arrow("a", "x", "x");
        raw.arrow("b", "x", "x");
        raw.composite("a", "a", "b");
        raw.composite("a", "b", "b");
        raw.composite("b", "a", "a");
        raw.composite("b", "b", "b");
        let errs = raw.validate().unwrap_err();
        assert!(errs.iter().any(|e| matches!(
            e,
            CategoryError::AssocViolation { h, g, f, .. } if h == "a" && g == "a" && f == "a"
        )));
    }

    #[test]
    fn duplicate_and_unknown_names() {
        let mut raw = RawCategory::new("bad");
        raw.object("x");
        raw.object("x");
        raw.arrow("id_x", "x", "x");
        raw.arrow("f", "x", "y");
        let errs = raw.validate().unwrap_err();
        assert!(errs.contains(&CategoryError::DuplicateObject("x".into())));
        assert!(errs.contains(&CategoryError::DuplicateMorphism("id_x".into())));
        assert!(errs
            .iter()
            .any(|e| matches!(e, CategoryError::UnknownObject { arrow, object } if arrow == "f" && object == "y")));
    }

    #[test]
    fn opposite_transposes_and_is_involutive() {
        let k = chain3_raw().validate().unwrap();
        let op = k.opposite();
        let f01 = k.mor_index("f01").unwrap();
        let f12 = k.mor_index("f12").unwrap();
        let f02 = k.mor_index("f02").unwrap();
        assert_eq!(op.dom(f01), k.cod(f01));
        // in the opposite, f01 . f12 is defined and equals f02
        assert_eq!(op.try_compose(f01, f12), Some(f02));
        assert_eq!(op.try_compose(f12, f01), None);
        assert_eq!(op.opposite(), k);
    }

    #[test]
    fn full_subcategory_keeps_ids_straight() {
        let k = chain3_raw().validate().unwrap();
        let sub = k.full_subcategory(&[2, 0], "ends");
        assert_eq!(sub.cat.n_objects(), 2);
        assert_eq!(sub.obj_to_parent, vec![0, 2]);
        assert_eq!(sub.cat.object_name(1), "2");
        let f02_old = k.mor_index("f02").unwrap();
        let f02_new = sub.mor_from_parent[f02_old].unwrap();
        assert_eq!(sub.cat.mor_name(f02_new), "f02");
        assert_eq!(sub.cat.dom(f02_new), 0);
        assert_eq!(sub.cat.cod(f02_new), 1);
        assert_eq!(sub.mor_to_parent[f02_new], f02_old);
        // identity of object "1" is gone
        assert_eq!(sub.mor_from_parent[1], None);
        assert_eq!(sub.cat.n_morphisms(), 3);
    }

    #[test]
    fn retracts_and_sections() {
        let k = poset2();
        let f = k.mor_index("f").unwrap();
        // every morphism is a retract of itself via identities
        assert_eq!(k.retract_witness(f, f), Some((0, 0, 1, 1)));
        // id_0 is not a retract of f: nothing maps 1 back to 0
        assert_eq!(k.retract_witness(0, f), None);
        assert_eq!(k.section_pairs(0, 1), vec![]);
        assert_eq!(k.section_pairs(0, 0), vec![(0, 0)]);
    }

    #[test]
    fn to_raw_round_trips() {
        let raw = chain3_raw();
        let k = raw.validate().unwrap();
        let again = k.to_raw().validate().unwrap();
        assert_eq!(k, again);
    }
}
