//! The `.fcat` text format.
//!
//! A file is a sequence of category blocks and model blocks.  Lines are
//! independent; tokens are separated by whitespace; `#` starts a comment that
//! runs to the end of the line.
//!
//! ```text
//! category two
//! object 0
//! object 1
//! arrow f : 0 -> 1
//!
//! category three          # several categories per file are fine
//! object a
//! object b
//! object c
//! arrow f : a -> b
//! arrow g : b -> c
//! arrow h : a -> c
//! compose g . f = h       # g after f
//!
//! model M on three
//! weq f g h
//! cof f
//! fib g h
//! ```
//!
//! Identities are implicit: declaring an object brings `id_<object>` into
//! scope as a morphism name.  Compose lines may *produce* an identity
//! (inverse pairs need that) but never mention one on the left-hand side,
//! and class lists never mention them either — identities always belong to
//! every class.  Every composable pair of declared arrows needs exactly one
//! compose line; the categorical laws themselves are checked later by
//! [`RawCategory::validate`], not here.
//!
//! Documents are kept in canonical order — categories and models sorted by
//! name, objects and arrows by name, compose lines by (after, before) — so
//! parsing a printed document reproduces it byte for byte.  Object and
//! morphism ids used in reports follow that order: objects alphabetically,
//! then identities first and declared arrows alphabetically.

use std::collections::HashMap;

use crate::category::{FiniteCategory, RawCategory};
use crate::model::{ClassSet, ModelStructure};

/// Everything a `.fcat` file declares.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FcatDocument {
    pub categories: Vec<RawCategory>,
    pub models: Vec<ModelBlock>,
}

/// A named triple of morphism-name lists over one of the document's
/// categories.  Identity names are never listed; they are implied members
/// of every class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelBlock {
    pub name: String,
    pub category: String,
    pub weq: Vec<String>,
    pub cof: Vec<String>,
    pub fib: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("missing composite for `{after} . {before}`")]
    MissingComposite { after: String, before: String },
    #[error("composite of `{after} . {before}` declared more than once")]
    DuplicateComposite { after: String, before: String },
}

fn is_name(token: &str) -> bool {
    !token.is_empty()
        && token.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '*' | '\''))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MorKind {
    Identity,
    Arrow,
}

// Parsing state for the category block currently being read.
struct OpenCategory {
    raw: RawCategory,
    header_line: usize,
    // object name -> (), morphism name -> kind; identities are registered
    // the moment their object is declared
    objects: HashMap<String, ()>,
    morphisms: HashMap<String, MorKind>,
    arrow_ends: HashMap<String, (String, String)>,
    composed: HashMap<(String, String), ()>,
}

struct OpenModel {
    block: ModelBlock,
    // guards against a second weq/cof/fib line
    seen: [bool; 3],
    // morphism names of the model's category, for membership checks
    morphisms: HashMap<String, MorKind>,
}

enum Open {
    Nothing,
    Category(OpenCategory),
    Model(OpenModel),
}

struct Parser {
    doc: FcatDocument,
    category_names: HashMap<String, usize>,
    model_names: HashMap<String, ()>,
    // morphism tables of finished categories, kept for model blocks
    finished_morphisms: Vec<HashMap<String, MorKind>>,
    open: Open,
}

impl Parser {
    fn err<T>(line: usize, col: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { line, col, kind })
    }

    fn close_open(&mut self) -> Result<(), ParseError> {
        match std::mem::replace(&mut self.open, Open::Nothing) {
            Open::Nothing => {}
            Open::Model(m) => self.doc.models.push(m.block),
            Open::Category(c) => {
                // every composable pair of declared arrows must be covered;
                // report the alphabetically least gap against the header line
                let mut missing: Option<(&String, &String)> = None;
                for (g, (g_dom, _)) in &c.arrow_ends {
                    for (f, (_, f_cod)) in &c.arrow_ends {
                        if f_cod == g_dom
                            && !c.composed.contains_key(&(g.clone(), f.clone()))
                            && missing.is_none_or(|best| (g, f) < best)
                        {
                            missing = Some((g, f));
                        }
                    }
                }
                if let Some((g, f)) = missing {
                    return Self::err(
                        c.header_line,
                        1,
                        ParseErrorKind::MissingComposite { after: g.clone(), before: f.clone() },
                    );
                }
                self.finished_morphisms.push(c.morphisms);
                self.category_names.insert(c.raw.name.clone(), self.doc.categories.len());
                self.doc.categories.push(c.raw);
            }
        }
        Ok(())
    }

    fn line(&mut self, line_no: usize, tokens: &[(usize, &str)]) -> Result<(), ParseError> {
        let (col0, keyword) = tokens[0];
        let name_at = |i: usize| -> Result<(usize, &str), ParseError> {
            let Some(&(col, tok)) = tokens.get(i) else {
                let end = tokens.last().map(|&(c, t)| c + t.len()).unwrap_or(1);
                return Self::err(line_no, end, ParseErrorKind::Syntax("missing name".into()));
            };
            if !is_name(tok) {
                return Self::err(
                    line_no,
                    col,
                    ParseErrorKind::Syntax(format!("`{tok}` is not a valid name")),
                );
            }
            Ok((col, tok))
        };
        let expect_punct = |i: usize, what: &str| -> Result<(), ParseError> {
            match tokens.get(i) {
                Some(&(_, tok)) if tok == what => Ok(()),
                Some(&(col, tok)) => Self::err(
                    line_no,
                    col,
                    ParseErrorKind::Syntax(format!("expected `{what}`, found `{tok}`")),
                ),
                None => {
                    let end = tokens.last().map(|&(c, t)| c + t.len()).unwrap_or(1);
                    Self::err(line_no, end, ParseErrorKind::Syntax(format!("expected `{what}`")))
                }
            }
        };
        let expect_end = |i: usize| -> Result<(), ParseError> {
            match tokens.get(i) {
                None => Ok(()),
                Some(&(col, tok)) => Self::err(
                    line_no,
                    col,
                    ParseErrorKind::Syntax(format!("unexpected `{tok}`")),
                ),
            }
        };

        match keyword {
            "category" => {
                let (col, name) = name_at(1)?;
                expect_end(2)?;
                self.close_open()?;
                if self.category_names.contains_key(name) {
                    return Self::err(line_no, col, ParseErrorKind::DuplicateName(name.into()));
                }
                self.open = Open::Category(OpenCategory {
                    raw: RawCategory::new(name),
                    header_line: line_no,
                    objects: HashMap::new(),
                    morphisms: HashMap::new(),
                    arrow_ends: HashMap::new(),
                    composed: HashMap::new(),
                });
                Ok(())
            }
            "object" => {
                let (col, name) = name_at(1)?;
                expect_end(2)?;
                let Open::Category(c) = &mut self.open else {
                    return Self::err(
                        line_no,
                        col0,
                        ParseErrorKind::Syntax("`object` outside a category block".into()),
                    );
                };
                if c.objects.insert(name.into(), ()).is_some() {
                    return Self::err(line_no, col, ParseErrorKind::DuplicateName(name.into()));
                }
                let id_name = format!("id_{name}");
                if c.morphisms.insert(id_name.clone(), MorKind::Identity).is_some() {
                    return Self::err(line_no, col, ParseErrorKind::DuplicateName(id_name));
                }
                c.raw.object(name);
                Ok(())
            }
            "arrow" => {
                let (col, name) = name_at(1)?;
                expect_punct(2, ":")?;
                let (dcol, dom) = name_at(3)?;
                expect_punct(4, "->")?;
                let (ccol, cod) = name_at(5)?;
                expect_end(6)?;
                let Open::Category(c) = &mut self.open else {
                    return Self::err(
                        line_no,
                        col0,
                        ParseErrorKind::Syntax("`arrow` outside a category block".into()),
                    );
                };
                for (ocol, obj) in [(dcol, dom), (ccol, cod)] {
                    if !c.objects.contains_key(obj) {
                        return Self::err(line_no, ocol, ParseErrorKind::UnknownName(obj.into()));
                    }
                }
                if c.morphisms.insert(name.into(), MorKind::Arrow).is_some() {
                    return Self::err(line_no, col, ParseErrorKind::DuplicateName(name.into()));
                }
                c.arrow_ends.insert(name.into(), (dom.into(), cod.into()));
                c.raw.arrow(name, dom, cod);
                Ok(())
            }
            "compose" => {
                let (gcol, g) = name_at(1)?;
                expect_punct(2, ".")?;
                let (fcol, f) = name_at(3)?;
                expect_punct(4, "=")?;
                let (hcol, h) = name_at(5)?;
                expect_end(6)?;
                let Open::Category(c) = &mut self.open else {
                    return Self::err(
                        line_no,
                        col0,
                        ParseErrorKind::Syntax("`compose` outside a category block".into()),
                    );
                };
                // identities may appear as the result, never as an operand
                for (col, m, operand) in [(gcol, g, true), (fcol, f, true), (hcol, h, false)] {
                    match c.morphisms.get(m) {
                        None => return Self::err(line_no, col, ParseErrorKind::UnknownName(m.into())),
                        Some(MorKind::Identity) if operand => {
                            return Self::err(
                                line_no,
                                col,
                                ParseErrorKind::Syntax(
                                    "identity compositions are implicit".into(),
                                ),
                            );
                        }
                        Some(_) => {}
                    }
                }
                if c.composed.insert((g.into(), f.into()), ()).is_some() {
                    return Self::err(
                        line_no,
                        gcol,
                        ParseErrorKind::DuplicateComposite { after: g.into(), before: f.into() },
                    );
                }
                c.raw.composite(g, f, h);
                Ok(())
            }
            "model" => {
                let (mcol, name) = name_at(1)?;
                expect_punct(2, "on")?;
                let (ccol, cat) = name_at(3)?;
                expect_end(4)?;
                self.close_open()?;
                let Some(&cat_idx) = self.category_names.get(cat) else {
                    return Self::err(line_no, ccol, ParseErrorKind::UnknownName(cat.into()));
                };
                if self.model_names.insert(name.into(), ()).is_some() {
                    return Self::err(line_no, mcol, ParseErrorKind::DuplicateName(name.into()));
                }
                self.open = Open::Model(OpenModel {
                    block: ModelBlock {
                        name: name.into(),
                        category: cat.into(),
                        ..Default::default()
                    },
                    seen: [false; 3],
                    morphisms: self.finished_morphisms[cat_idx].clone(),
                });
                Ok(())
            }
            "weq" | "cof" | "fib" => {
                let Open::Model(m) = &mut self.open else {
                    return Self::err(
                        line_no,
                        col0,
                        ParseErrorKind::Syntax(format!("`{keyword}` outside a model block")),
                    );
                };
                let slot = match keyword {
                    "weq" => 0,
                    "cof" => 1,
                    _ => 2,
                };
                if m.seen[slot] {
                    return Self::err(
                        line_no,
                        col0,
                        ParseErrorKind::Syntax(format!("second `{keyword}` line in one model")),
                    );
                }
                m.seen[slot] = true;
                let mut names = Vec::new();
                for i in 1..tokens.len() {
                    let (col, name) = name_at(i)?;
                    match m.morphisms.get(name) {
                        None => {
                            return Self::err(line_no, col, ParseErrorKind::UnknownName(name.into()))
                        }
                        Some(MorKind::Identity) => {
                            return Self::err(
                                line_no,
                                col,
                                ParseErrorKind::Syntax(
                                    "identities are implicit in class lists".into(),
                                ),
                            );
                        }
                        Some(MorKind::Arrow) => {}
                    }
                    if names.contains(&name.to_owned()) {
                        return Self::err(line_no, col, ParseErrorKind::DuplicateName(name.into()));
                    }
                    names.push(name.into());
                }
                match slot {
                    0 => m.block.weq = names,
                    1 => m.block.cof = names,
                    _ => m.block.fib = names,
                }
                Ok(())
            }
            _ => Self::err(
                line_no,
                col0,
                ParseErrorKind::Syntax(format!("unknown directive `{keyword}`")),
            ),
        }
    }
}

/// Parse a document, stopping at the first problem.  The result is in
/// canonical order regardless of the input's ordering.
pub fn parse(text: &str) -> Result<FcatDocument, ParseError> {
    let mut p = Parser {
        doc: FcatDocument::default(),
        category_names: HashMap::new(),
        model_names: HashMap::new(),
        finished_morphisms: Vec::new(),
        open: Open::Nothing,
    };
    for (i, full_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = full_line.split('#').next().unwrap_or("");
        // tokens with 1-based starting columns
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        let mut rest = content;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let after = &rest[start..];
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            tokens.push((offset + start + 1, &after[..end]));
            offset += start + end;
            rest = &after[end..];
        }
        if tokens.is_empty() {
            continue;
        }
        p.line(line_no, &tokens)?;
    }
    p.close_open()?;
    let mut doc = p.doc;
    canonicalize(&mut doc);
    Ok(doc)
}

fn canonicalize_category(raw: &mut RawCategory) {
    raw.objects.sort();
    raw.arrows.sort_by(|a, b| a.name.cmp(&b.name));
    raw.composites.sort_by(|a, b| (&a.after, &a.before).cmp(&(&b.after, &b.before)));
}

pub(crate) fn canonicalize(doc: &mut FcatDocument) {
    for c in &mut doc.categories {
        canonicalize_category(c);
    }
    doc.categories.sort_by(|a, b| a.name.cmp(&b.name));
    for m in &mut doc.models {
        m.weq.sort();
        m.cof.sort();
        m.fib.sort();
    }
    doc.models.sort_by(|a, b| a.name.cmp(&b.name));
}

/// Render in canonical form: all categories then all models, sorted by
/// name, every block internally sorted, identities omitted.  Parsing the
/// output reproduces the (canonicalized) document exactly.
pub fn print(doc: &FcatDocument) -> String {
    let mut doc = doc.clone();
    canonicalize(&mut doc);
    let mut out = String::new();
    let mut first = true;
    for c in &doc.categories {
        if !first {
            out.push('\n');
        }
        first = false;
        out.push_str(&format!("category {}\n", c.name));
        for o in &c.objects {
            out.push_str(&format!("object {o}\n"));
        }
        let identity: std::collections::HashSet<String> =
            c.objects.iter().map(|o| format!("id_{o}")).collect();
        for a in &c.arrows {
            out.push_str(&format!("arrow {} : {} -> {}\n", a.name, a.dom, a.cod));
        }
        for comp in &c.composites {
            if identity.contains(&comp.after) || identity.contains(&comp.before) {
                continue;
            }
            out.push_str(&format!("compose {} . {} = {}\n", comp.after, comp.before, comp.result));
        }
    }
    for m in &doc.models {
        if !first {
            out.push('\n');
        }
        first = false;
        out.push_str(&format!("model {} on {}\n", m.name, m.category));
        for (label, list) in [("weq", &m.weq), ("cof", &m.cof), ("fib", &m.fib)] {
            if !list.is_empty() {
                out.push_str(&format!("{label} {}\n", list.join(" ")));
            }
        }
    }
    out
}

impl FcatDocument {
    pub fn category(&self, name: &str) -> Option<&RawCategory> {
        self.categories.iter().find(|c| c.name == name)
    }

    pub fn model(&self, name: &str) -> Option<&ModelBlock> {
        self.models.iter().find(|m| m.name == name)
    }
}

impl ModelBlock {
    /// Turn the name lists into a structure over `k`, which must be the
    /// validated form of the block's category.
    pub fn resolve(&self, k: &FiniteCategory) -> Result<ModelStructure, String> {
        let lookup = |names: &[String]| -> Result<ClassSet, String> {
            let mut ids = Vec::with_capacity(names.len());
            for n in names {
                ids.push(k.mor_index(n).ok_or_else(|| n.clone())?);
            }
            Ok(ClassSet::from_ids(k, &ids))
        };
        Ok(ModelStructure::new(
            &self.name,
            k.clone(),
            lookup(&self.weq)?,
            lookup(&self.cof)?,
            lookup(&self.fib)?,
        ))
    }

    /// Name lists of a structure, identities left out.
    pub fn from_structure(m: &ModelStructure) -> ModelBlock {
        let k = &m.base;
        let names = |set: &ClassSet| {
            set.members()
                .into_iter()
                .filter(|&f| !k.is_identity(f))
                .map(|f| k.mor_name(f).to_owned())
                .collect()
        };
        ModelBlock {
            name: m.name.clone(),
            category: k.name().to_owned(),
            weq: names(&m.weq),
            cof: names(&m.cof),
            fib: names(&m.fib),
        }
    }
}
