//! Binary products and coproducts, decided by brute force.
//!
//! A cone is a candidate apex with two projections; it is a product when for
//! every object the induced map into the pair of hom-sets is a bijection,
//! which we check by enumerating mediators.  Searches scan apexes in
//! ascending object order and projection pairs in ascending lexicographic
//! morphism order, so the witness returned is canonical.  Coproducts are
//! products in the opposite category; ids transfer unchanged because
//! [`FiniteCategory::opposite`] keeps the numbering.

use crate::category::{FiniteCategory, MorId, ObjId};

/// A verified product cone `object -> left`, `object -> right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductWitness {
    pub left: ObjId,
    pub right: ObjId,
    pub object: ObjId,
    pub to_left: MorId,
    pub to_right: MorId,
}

/// A verified coproduct cocone `left -> object`, `right -> object`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoproductWitness {
    pub left: ObjId,
    pub right: ObjId,
    pub object: ObjId,
    pub from_left: MorId,
    pub from_right: MorId,
}

impl ProductWitness {
    /// The unique `m: x -> object` with `to_left . m = f` and
    /// `to_right . m = g`.  Panics if the witness does not belong to `k`;
    /// witnesses produced by [`product`] always do.
    pub fn pair(&self, k: &FiniteCategory, f: MorId, g: MorId) -> MorId {
        debug_assert_eq!(k.dom(f), k.dom(g));
        debug_assert_eq!(k.cod(f), self.left);
        debug_assert_eq!(k.cod(g), self.right);
        k.hom(k.dom(f), self.object)
            .iter()
            .copied()
            .find(|&m| k.compose(self.to_left, m) == f && k.compose(self.to_right, m) == g)
            .expect("verified product has a mediator for every cone")
    }
}

impl CoproductWitness {
    /// The unique `m: object -> x` with `m . from_left = f` and
    /// `m . from_right = g`.
    pub fn copair(&self, k: &FiniteCategory, f: MorId, g: MorId) -> MorId {
        debug_assert_eq!(k.cod(f), k.cod(g));
        debug_assert_eq!(k.dom(f), self.left);
        debug_assert_eq!(k.dom(g), self.right);
        k.hom(self.object, k.cod(f))
            .iter()
            .copied()
            .find(|&m| k.compose(m, self.from_left) == f && k.compose(m, self.from_right) == g)
            .expect("verified coproduct has a mediator for every cocone")
    }
}

/// Does `(apex, to_left, to_right)` satisfy the universal property of the
/// product of `(left, right)`?  Checked over every object by mediator
/// enumeration.
pub fn is_product_cone(
    k: &FiniteCategory,
    left: ObjId,
    right: ObjId,
    apex: ObjId,
    to_left: MorId,
    to_right: MorId,
) -> bool {
    for x in 0..k.n_objects() {
        let cones = k.hom(x, left).len() * k.hom(x, right).len();
        let mediators = k.hom(x, apex);
        if mediators.len() != cones {
            return false;
        }
        // injectivity of m -> (to_left . m, to_right . m); surjectivity
        // follows from the size match
        let mut seen: Vec<u64> = mediators
            .iter()
            .map(|&m| {
                (k.compose(to_left, m) as u64) * k.n_morphisms() as u64
                    + k.compose(to_right, m) as u64
            })
            .collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != mediators.len() {
            return false;
        }
    }
    true
}

/// Canonical binary product of `(left, right)`: least apex, then least
/// projection pair, or `None` when no cone is universal.
pub fn product(k: &FiniteCategory, left: ObjId, right: ObjId) -> Option<ProductWitness> {
    for apex in 0..k.n_objects() {
        // a universal cone forces these hom-set sizes; skip early
        if (0..k.n_objects())
            .any(|x| k.hom(x, apex).len() != k.hom(x, left).len() * k.hom(x, right).len())
        {
            continue;
        }
        for &to_left in k.hom(apex, left) {
            for &to_right in k.hom(apex, right) {
                if is_product_cone(k, left, right, apex, to_left, to_right) {
                    return Some(ProductWitness { left, right, object: apex, to_left, to_right });
                }
            }
        }
    }
    None
}

/// Mirror image of [`is_product_cone`]: mediators out of the apex.
pub fn is_coproduct_cocone(
    k: &FiniteCategory,
    left: ObjId,
    right: ObjId,
    apex: ObjId,
    from_left: MorId,
    from_right: MorId,
) -> bool {
    for x in 0..k.n_objects() {
        let cocones = k.hom(left, x).len() * k.hom(right, x).len();
        let mediators = k.hom(apex, x);
        if mediators.len() != cocones {
            return false;
        }
        let mut seen: Vec<u64> = mediators
            .iter()
            .map(|&m| {
                (k.compose(m, from_left) as u64) * k.n_morphisms() as u64
                    + k.compose(m, from_right) as u64
            })
            .collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != mediators.len() {
            return false;
        }
    }
    true
}

/// Canonical binary coproduct, computed as the product in the opposite
/// category and read back directly (ids agree across the two directions).
pub fn coproduct(k: &FiniteCategory, left: ObjId, right: ObjId) -> Option<CoproductWitness> {
    let op = k.opposite();
    product(&op, left, right).map(|w| CoproductWitness {
        left,
        right,
        object: w.object,
        from_left: w.to_left,
        from_right: w.to_right,
    })
}

/// Which unordered object pairs lack a binary product, and whether the
/// category is thin.  A finite category with all binary products must be
/// thin — iterating the product of an object with itself makes hom-sets
/// grow exponentially otherwise — and the function asserts that law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSurvey {
    pub missing: Vec<(ObjId, ObjId)>,
    pub thin: bool,
}

impl ProductSurvey {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn product_survey(k: &FiniteCategory) -> ProductSurvey {
    let mut missing = Vec::new();
    for a in 0..k.n_objects() {
        for b in a..k.n_objects() {
            if product(k, a, b).is_none() {
                missing.push((a, b));
            }
        }
    }
    let survey = ProductSurvey { missing, thin: k.is_thin() };
    assert!(
        !survey.complete() || survey.thin,
        "a finite category with all binary products must be thin"
    );
    survey
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::RawCategory;

    fn poset2() -> FiniteCategory {
        let mut raw = RawCategory::new("two");
        raw.object("0");
        raw.object("1");
        raw.arrow("f", "0", "1");
        raw.validate().unwrap()
    }

    fn discrete2() -> FiniteCategory {
        let mut raw = RawCategory::new("discrete2");
        raw.object("a");
        raw.object("b");
        raw.validate().unwrap()
    }

    fn diamond() -> FiniteCategory {
        let mut raw = RawCategory::new("diamond");
        raw.object("a");
        raw.object("b");
        raw.object("bot");
        raw.object("top");
        raw.arrow("ab_top", "a", "top");
        raw.arrow("bb_top", "b", "top");
        raw.arrow("bot_a", "bot", "a");
        raw.arrow("bot_b", "bot", "b");
        raw.arrow("bot_top", "bot", "top");
        raw.composite("ab_top", "bot_a", "bot_top");
        raw.composite("bb_top", "bot_b", "bot_top");
        raw.validate().unwrap()
    }

    #[test]
    fn poset2_products_are_meets() {
        let k = poset2();
        let w = product(&k, 0, 1).unwrap();
        assert_eq!(w.object, 0);
        assert_eq!(w.to_left, k.identity(0));
        assert_eq!(w.to_right, k.mor_index("f").unwrap());
        let c = coproduct(&k, 0, 1).unwrap();
        assert_eq!(c.object, 1);
        assert_eq!(c.from_left, k.mor_index("f").unwrap());
        assert_eq!(c.from_right, k.identity(1));
        let survey = product_survey(&k);
        assert!(survey.complete() && survey.thin);
    }

    #[test]
    fn discrete_pair_has_no_product() {
        let k = discrete2();
        assert_eq!(product(&k, 0, 1), None);
        assert_eq!(coproduct(&k, 0, 1), None);
        let survey = product_survey(&k);
        assert_eq!(survey.missing, vec![(0, 1)]);
    }

    #[test]
    fn diamond_has_meets_and_joins() {
        let k = diamond();
        let (a, b) = (k.object_index("a").unwrap(), k.object_index("b").unwrap());
        let bot = k.object_index("bot").unwrap();
        let top = k.object_index("top").unwrap();
        assert_eq!(product(&k, a, b).unwrap().object, bot);
        assert_eq!(coproduct(&k, a, b).unwrap().object, top);
        assert_eq!(product(&k, a, top).unwrap().object, a);
        assert!(product_survey(&k).complete());
    }

    #[test]
    fn mediators_satisfy_the_triangles() {
        let k = poset2();
        let w = product(&k, 0, 1).unwrap();
        let f = k.identity(0);
        let g = k.mor_index("f").unwrap();
        let m = w.pair(&k, f, g);
        assert_eq!(k.compose(w.to_left, m), f);
        assert_eq!(k.compose(w.to_right, m), g);
        let c = coproduct(&k, 0, 0).unwrap();
        assert_eq!(c.object, 0);
        let fold = c.copair(&k, g, g);
        assert_eq!(fold, g);
    }

    #[test]
    fn coproduct_agrees_with_product_in_opposite() {
        let k = diamond();
        let op = k.opposite();
        for a in 0..k.n_objects() {
            for b in 0..k.n_objects() {
                let via_op = product(&op, a, b);
                let direct = coproduct(&k, a, b);
                assert_eq!(direct.map(|w| (w.object, w.from_left, w.from_right)),
                           via_op.map(|w| (w.object, w.to_left, w.to_right)));
            }
        }
    }
}
