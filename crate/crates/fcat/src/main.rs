//! Command-line front end: every pipeline reachable from `.fcat` files.
//!
//! Exit codes: 0 when the command's property holds, 1 when it fails or a
//! verdict is negative (the counterexample is printed), 2 on input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fcat::category::{CategoryError, FiniteCategory, MorId, ObjId};
use fcat::format::{self, FcatDocument};
use fcat::ho;
use fcat::homotopy::{
    self, CylinderWitness, HomotopyError, LemmaSuiteError, PathWitness, SideVerdict,
};
use fcat::localize::{self, CompareVerdict, CompareWitness, SaturationStatus};
use fcat::model::{
    classify, enumerate_model_structures, AxiomReport, CheckResult, ClassifyError, EnumerateError,
    ModelStructure,
};

const ENUMERATION_CAP: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "fcat",
    about = "finite categories with explicit composition tables: validation, \
             model structures, homotopy, quotients, localization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Left,
    Right,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a file and validate every category in it.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the model-structure axioms for one model block.
    CheckModel {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Report fibrant/cofibrant objects relative to a model block.
    Classify {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two parallel morphisms are homotopic.
    Homotopy {
        file: PathBuf,
        #[arg(long)]
        model: String,
        /// The two morphism names, e.g. `--pair f g`.
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        pair: Vec<String>,
        #[arg(long, value_enum, default_value = "both")]
        side: Side,
        #[arg(long)]
        json: bool,
    },
    /// Build the homotopy category and write it as a new `.fcat` file.
    Ho {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Saturate the formal-inverse word quotient; emit it when exact.
    Localize {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = localize::DEFAULT_BOUND)]
        bound: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check that the homotopy category matches the word localization.
    Compare {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = localize::DEFAULT_BOUND)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// List every model structure on the file's categories.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the homotopy-relation lemma checks for one model block.
    LemmaSuite {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        json: bool,
    },
}

// Anything that justifies exit code 2.
struct InputError(String);

impl<T: std::fmt::Display> From<T> for InputError {
    fn from(e: T) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &PathBuf) -> Result<FcatDocument, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn error_tag(e: &CategoryError) -> &'static str {
    match e {
        CategoryError::DuplicateObject(_) => "DuplicateObject",
        CategoryError::DuplicateMorphism(_) => "DuplicateMorphism",
        CategoryError::UnknownObject { .. } => "UnknownObject",
        CategoryError::UnknownMorphism(_) => "UnknownMorphism",
        CategoryError::NotComposable { .. } => "NotComposable",
        CategoryError::CompositeTypeMismatch { .. } => "CompositeTypeMismatch",
        CategoryError::DuplicateComposite { .. } => "DuplicateComposite",
        CategoryError::MissingComposite { .. } => "MissingComposite",
        CategoryError::IdentityViolation { .. } => "IdentityViolation",
        CategoryError::AssocViolation { .. } => "AssocViolation",
    }
}

fn validate_category(doc: &FcatDocument, name: &str) -> Result<FiniteCategory, InputError> {
    let raw = doc
        .category(name)
        .ok_or_else(|| InputError(format!("no category named `{name}` in the file")))?;
    raw.validate().map_err(|errs| {
        let mut msg = format!("category `{name}` is not a category:");
        for e in &errs {
            let _ = write!(msg, "\n  {}: {e}", error_tag(e));
        }
        InputError(msg)
    })
}

fn resolve_model(doc: &FcatDocument, model: &str) -> Result<ModelStructure, InputError> {
    let block = doc
        .model(model)
        .ok_or_else(|| InputError(format!("no model named `{model}` in the file")))?;
    let k = validate_category(doc, &block.category)?;
    block
        .resolve(&k)
        .map_err(|n| InputError(format!("model `{model}` references unknown morphism `{n}`")))
}

fn report(json_mode: bool, human: &str, value: Value) {
    use std::io::Write;
    let text = if json_mode {
        serde_json::to_string_pretty(&value).expect("report serializes")
    } else {
        human.to_owned()
    };
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn mor_names(k: &FiniteCategory, ids: impl IntoIterator<Item = MorId>) -> Vec<String> {
    ids.into_iter().map(|f| k.mor_name(f).to_owned()).collect()
}

fn obj_names(k: &FiniteCategory, ids: impl IntoIterator<Item = ObjId>) -> Vec<String> {
    ids.into_iter().map(|o| k.object_name(o).to_owned()).collect()
}

fn exit(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.cmd {
        Cmd::Validate { file, json } => {
            let doc = load(&file)?;
            let mut lines = Vec::new();
            for c in &doc.categories {
                let k = validate_category(&doc, &c.name)?;
                lines.push(format!(
                    "category {}: valid ({} objects, {} morphisms)",
                    c.name,
                    k.n_objects(),
                    k.n_morphisms()
                ));
            }
            for m in &doc.models {
                resolve_model(&doc, &m.name)?;
                lines.push(format!("model {} on {}: resolves", m.name, m.category));
            }
            report(
                json,
                &lines.join("\n"),
                json!({ "verdict": "valid", "classes": lines }),
            );
            Ok(exit(true))
        }

        Cmd::CheckModel { file, model, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let rep = m.check_axioms();
            let (human, value) = render_axioms(&m, &rep);
            report(json, &human, value);
            Ok(exit(rep.holds()))
        }

        Cmd::Classify { file, model, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let k = &m.base;
            let cls = classify(&m).map_err(|e: ClassifyError| InputError(e.to_string()))?;
            let cofibrant: Vec<ObjId> =
                (0..k.n_objects()).filter(|&o| cls.cofibrant[o]).collect();
            let fibrant: Vec<ObjId> = (0..k.n_objects()).filter(|&o| cls.fibrant[o]).collect();
            let human = format!(
                "initial: {}\nterminal: {}\ncofibrant: {}\nfibrant: {}\nfibrant-cofibrant: {}",
                k.object_name(cls.initial),
                k.object_name(cls.terminal),
                obj_names(k, cofibrant.iter().copied()).join(" "),
                obj_names(k, fibrant.iter().copied()).join(" "),
                obj_names(k, cls.both.iter().copied()).join(" "),
            );
            let value = json!({
                "verdict": "ok",
                "classes": {
                    "initial": k.object_name(cls.initial),
                    "terminal": k.object_name(cls.terminal),
                    "cofibrant": obj_names(k, cofibrant),
                    "fibrant": obj_names(k, fibrant),
                    "both": obj_names(k, cls.both.iter().copied()),
                },
            });
            report(json, &human, value);
            Ok(exit(true))
        }

        Cmd::Homotopy { file, model, pair, side, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let k = m.base.clone();
            let find = |n: &String| {
                k.mor_index(n)
                    .ok_or_else(|| InputError(format!("no morphism named `{n}`")))
            };
            let (alpha, beta) = (find(&pair[0])?, find(&pair[1])?);
            let mut verdicts: Vec<(&str, Value, Option<bool>)> = Vec::new();
            if side != Side::Right {
                let v = to_side(left_verdict(&m, alpha, beta)?, cylinder_json(&k));
                verdicts.push(("left", v.0, v.1));
            }
            if side != Side::Left {
                let v = to_side(right_verdict(&m, alpha, beta)?, path_json(&k));
                verdicts.push(("right", v.0, v.1));
            }
            let defined: Vec<bool> = verdicts.iter().filter_map(|(_, _, r)| *r).collect();
            let overall = if defined.is_empty() {
                "unavailable"
            } else if defined.iter().all(|&r| r) {
                "related"
            } else {
                "not-related"
            };
            let mut human = format!(
                "{} ~ {}: {overall}",
                k.mor_name(alpha),
                k.mor_name(beta)
            );
            let mut witness = serde_json::Map::new();
            for (label, v, r) in &verdicts {
                let _ = write!(
                    human,
                    "\n  {label}: {}",
                    match r {
                        Some(true) => "related",
                        Some(false) => "not related",
                        None => "unavailable",
                    }
                );
                witness.insert((*label).to_owned(), v.clone());
            }
            report(
                json,
                &human,
                json!({ "verdict": overall, "witness": witness }),
            );
            Ok(exit(overall == "related"))
        }

        Cmd::Ho { file, model, out, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let k = &m.base;
            match ho::quotient(&m) {
                Ok(h) => {
                    let (emitted, inheritance) = ho::emit_for_iteration(&m, &h);
                    std::fs::write(&out, format::print(&emitted))
                        .map_err(|e| InputError(format!("{}: {e}", out.display())))?;
                    let iso_check = ho::weq_classes_are_isos(&m, &h);
                    let survive = |p: &ho::PairSurvival| {
                        format!(
                            "({}, {}): {}",
                            k.object_name(p.left),
                            k.object_name(p.right),
                            if p.survives { "survives" } else { "lost" }
                        )
                    };
                    let human = format!(
                        "Ho({}) has {} objects and {} morphisms; written to {}\n\
                         weak equivalences become isomorphisms: {}\n\
                         initial survives: {}; terminal survives: {}\n\
                         products: {}\ncoproducts: {}",
                        k.name(),
                        h.quotient.n_objects(),
                        h.quotient.n_morphisms(),
                        out.display(),
                        if iso_check.is_pass() { "yes" } else { "NO" },
                        inheritance.initial.in_quotient,
                        inheritance.terminal.in_quotient,
                        inheritance.products.iter().map(&survive).collect::<Vec<_>>().join(", "),
                        inheritance.coproducts.iter().map(&survive).collect::<Vec<_>>().join(", "),
                    );
                    let pair_json = |ps: &[ho::PairSurvival]| -> Value {
                        ps.iter()
                            .map(|p| {
                                json!({
                                    "left": k.object_name(p.left),
                                    "right": k.object_name(p.right),
                                    "survives": p.survives,
                                })
                            })
                            .collect()
                    };
                    let value = json!({
                        "verdict": "ok",
                        "classes": {
                            "objects": h.quotient.n_objects(),
                            "morphisms": h.quotient.n_morphisms(),
                        },
                        "witness": {
                            "weq_classes_are_isos": iso_check.is_pass(),
                            "initial_survives": inheritance.initial.in_quotient,
                            "terminal_survives": inheritance.terminal.in_quotient,
                            "products": pair_json(&inheritance.products),
                            "coproducts": pair_json(&inheritance.coproducts),
                        },
                    });
                    report(json, &human, value);
                    Ok(exit(iso_check.is_pass()))
                }
                Err(ho::HoError::Classify(e)) => Err(InputError(e.to_string())),
                Err(e) => {
                    report(
                        json,
                        &format!("quotient failed: {e}"),
                        json!({ "verdict": "fail", "counterexample": e.to_string() }),
                    );
                    Ok(exit(false))
                }
            }
        }

        Cmd::Localize { file, model, bound, out, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let p = localize::present(&m.base, &m.weq);
            let wq = localize::saturate(&p, bound).map_err(|e| InputError(e.to_string()))?;
            match &wq.status {
                SaturationStatus::Exact => {
                    let emitted =
                        localize::emit_localization(&wq).map_err(|e| InputError(e.to_string()))?;
                    std::fs::write(&out, format::print(&emitted))
                        .map_err(|e| InputError(format!("{}: {e}", out.display())))?;
                    let human = format!(
                        "exact at bound {bound}: {} classes over {} words; written to {}",
                        wq.class_count(),
                        wq.word_count(),
                        out.display()
                    );
                    let value = json!({
                        "verdict": "exact",
                        "status": "exact",
                        "classes": {
                            "count": wq.class_count(),
                            "words": wq.word_count(),
                            "generators": p.generator_count(),
                        },
                    });
                    report(json, &human, value);
                    Ok(exit(true))
                }
                SaturationStatus::Inconclusive(reason) => {
                    report(
                        json,
                        &format!("inconclusive at bound {bound}: {reason}"),
                        json!({
                            "verdict": "inconclusive",
                            "status": "inconclusive",
                            "counterexample": reason,
                        }),
                    );
                    Ok(exit(false))
                }
            }
        }

        Cmd::Compare { file, model, bound, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let k = &m.base;
            match localize::compare(&m, bound) {
                Ok(rep) => {
                    let (verdict, detail) = match &rep.verdict {
                        CompareVerdict::Equivalent => ("Equivalent", Value::Null),
                        CompareVerdict::Inconclusive(reason) => {
                            ("Inconclusive", Value::String(reason.clone()))
                        }
                        CompareVerdict::NotEquivalent(w) => {
                            ("NotEquivalent", compare_witness_json(k, w))
                        }
                    };
                    let human = format!(
                        "verdict: {verdict}{}\nhomotopy classes: {}; word classes on the \
                         fibrant-cofibrant part: {}",
                        match &detail {
                            Value::Null => String::new(),
                            d => format!(" ({d})"),
                        },
                        rep.ho_classes,
                        rep.loc_classes_on_kcf,
                    );
                    let value = json!({
                        "verdict": verdict,
                        "counterexample": detail,
                        "classes": {
                            "ho": rep.ho_classes,
                            "loc": rep.loc_classes_on_kcf,
                        },
                    });
                    report(json, &human, value);
                    Ok(exit(matches!(rep.verdict, CompareVerdict::Equivalent)))
                }
                Err(localize::CompareError::Saturate(e)) => Err(InputError(e.to_string())),
                Err(localize::CompareError::Ho(ho::HoError::Classify(e))) => {
                    Err(InputError(e.to_string()))
                }
                Err(localize::CompareError::Ho(e)) => {
                    report(
                        json,
                        &format!("homotopy quotient failed: {e}"),
                        json!({ "verdict": "fail", "counterexample": e.to_string() }),
                    );
                    Ok(exit(false))
                }
            }
        }

        Cmd::Enumerate { file, json } => {
            let doc = load(&file)?;
            let mut lines = Vec::new();
            let mut blocks = Vec::new();
            let mut total = 0usize;
            for c in &doc.categories {
                let k = validate_category(&doc, &c.name)?;
                let found = enumerate_model_structures(&k, ENUMERATION_CAP)
                    .map_err(|e: EnumerateError| InputError(e.to_string()))?;
                total += found.len();
                for m in &found {
                    let names = |set: &fcat::model::ClassSet| {
                        mor_names(
                            &k,
                            set.members().into_iter().filter(|&f| !k.is_identity(f)),
                        )
                    };
                    lines.push(format!(
                        "{} on {}: weq={{{}}} cof={{{}}} fib={{{}}}",
                        m.name,
                        c.name,
                        names(&m.weq).join(" "),
                        names(&m.cof).join(" "),
                        names(&m.fib).join(" ")
                    ));
                    blocks.push(json!({
                        "name": m.name,
                        "category": c.name,
                        "weq": names(&m.weq),
                        "cof": names(&m.cof),
                        "fib": names(&m.fib),
                    }));
                }
            }
            lines.push(format!("{total} structures"));
            report(
                json,
                &lines.join("\n"),
                json!({ "verdict": format!("{total} structures"), "classes": blocks }),
            );
            Ok(exit(true))
        }

        Cmd::LemmaSuite { file, model, json } => {
            let doc = load(&file)?;
            let m = resolve_model(&doc, &model)?;
            let k = &m.base;
            match homotopy::lemma_suite(&m) {
                Ok(rep) => {
                    let (human, value, pass) = render_lemmas(k, &rep);
                    report(json, &human, value);
                    Ok(exit(pass))
                }
                Err(LemmaSuiteError::Classify(e)) => Err(InputError(e.to_string())),
                Err(LemmaSuiteError::InvalidStructure(axioms)) => {
                    let (human, value) = render_axioms(&m, &axioms);
                    report(
                        json,
                        &format!("structure fails the axioms; suite not run\n{human}"),
                        json!({ "verdict": "invalid-structure", "counterexample": value }),
                    );
                    Ok(exit(false))
                }
                Err(LemmaSuiteError::Homotopy(e)) => {
                    report(
                        json,
                        &format!("relation breakdown: {e}"),
                        json!({ "verdict": "fail", "counterexample": e.to_string() }),
                    );
                    Ok(exit(false))
                }
            }
        }
    }
}

fn left_verdict(
    m: &ModelStructure,
    alpha: MorId,
    beta: MorId,
) -> Result<SideVerdict<CylinderWitness>, InputError> {
    match homotopy::left_homotopic(m, alpha, beta) {
        Ok(Some(w)) => Ok(SideVerdict::Related(w)),
        Ok(None) => Ok(SideVerdict::NotRelated),
        Err(HomotopyError::NoCoproduct { .. }) => Ok(SideVerdict::Unavailable),
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn right_verdict(
    m: &ModelStructure,
    alpha: MorId,
    beta: MorId,
) -> Result<SideVerdict<PathWitness>, InputError> {
    match homotopy::right_homotopic(m, alpha, beta) {
        Ok(Some(w)) => Ok(SideVerdict::Related(w)),
        Ok(None) => Ok(SideVerdict::NotRelated),
        Err(HomotopyError::NoProduct { .. }) => Ok(SideVerdict::Unavailable),
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn to_side<W>(v: SideVerdict<W>, describe: impl Fn(&W) -> Value) -> (Value, Option<bool>) {
    match v {
        SideVerdict::Related(w) => (describe(&w), Some(true)),
        SideVerdict::NotRelated => (Value::String("not-related".into()), Some(false)),
        SideVerdict::Unavailable => (Value::String("unavailable".into()), None),
    }
}

fn cylinder_json(k: &FiniteCategory) -> impl Fn(&CylinderWitness) -> Value + '_ {
    move |w| {
        json!({
            "cylinder": k.object_name(w.cyl),
            "inclusion": k.mor_name(w.inclusion),
            "collapse": k.mor_name(w.collapse),
            "homotopy": k.mor_name(w.homotopy),
        })
    }
}

fn path_json(k: &FiniteCategory) -> impl Fn(&PathWitness) -> Value + '_ {
    move |w| {
        json!({
            "path": k.object_name(w.path),
            "evaluation": k.mor_name(w.evaluation),
            "constant": k.mor_name(w.constant),
            "homotopy": k.mor_name(w.homotopy),
        })
    }
}

fn compare_witness_json(k: &FiniteCategory, w: &CompareWitness) -> Value {
    match w {
        CompareWitness::NotWellDefined { alpha, beta } => json!({
            "kind": "not-well-defined",
            "alpha": k.mor_name(*alpha),
            "beta": k.mor_name(*beta),
        }),
        CompareWitness::NotFaithful { dom, cod } => json!({
            "kind": "not-faithful",
            "dom": k.object_name(*dom),
            "cod": k.object_name(*cod),
        }),
        CompareWitness::NotFull { dom, cod } => json!({
            "kind": "not-full",
            "dom": k.object_name(*dom),
            "cod": k.object_name(*cod),
        }),
        CompareWitness::NotEssentiallySurjective { object } => json!({
            "kind": "not-essentially-surjective",
            "object": k.object_name(*object),
        }),
    }
}

fn render_axioms(m: &ModelStructure, rep: &AxiomReport) -> (String, Value) {
    let k = &m.base;
    let mor = |f: &MorId| k.mor_name(*f).to_owned();
    let checks: Vec<(&str, bool, Value)> = vec![
        (
            "two-out-of-three",
            rep.two_out_of_three.is_pass(),
            rep.two_out_of_three.failure().map_or(Value::Null, |f| {
                json!({
                    "first": mor(&f.first),
                    "second": mor(&f.second),
                    "composite": mor(&f.composite),
                    "absent": mor(&f.absent),
                })
            }),
        ),
        (
            "retract-weq",
            rep.retract_weq.is_pass(),
            rep.retract_weq
                .failure()
                .map_or(Value::Null, |f| json!({ "retract": mor(&f.retract), "of": mor(&f.of) })),
        ),
        (
            "retract-cof",
            rep.retract_cof.is_pass(),
            rep.retract_cof
                .failure()
                .map_or(Value::Null, |f| json!({ "retract": mor(&f.retract), "of": mor(&f.of) })),
        ),
        (
            "retract-fib",
            rep.retract_fib.is_pass(),
            rep.retract_fib
                .failure()
                .map_or(Value::Null, |f| json!({ "retract": mor(&f.retract), "of": mor(&f.of) })),
        ),
        (
            "lift-cof-acyclic-fib",
            rep.lift_cof_acyclic_fib.is_pass(),
            rep.lift_cof_acyclic_fib.failure().map_or(Value::Null, |f| {
                json!({ "i": mor(&f.i), "p": mor(&f.p), "u": mor(&f.u), "v": mor(&f.v) })
            }),
        ),
        (
            "lift-acyclic-cof-fib",
            rep.lift_acyclic_cof_fib.is_pass(),
            rep.lift_acyclic_cof_fib.failure().map_or(Value::Null, |f| {
                json!({ "i": mor(&f.i), "p": mor(&f.p), "u": mor(&f.u), "v": mor(&f.v) })
            }),
        ),
        (
            "factor-cof-acyclic-fib",
            rep.factor_cof_acyclic_fib.is_pass(),
            rep.factor_cof_acyclic_fib
                .failure()
                .map_or(Value::Null, |f| json!({ "f": mor(&f.f) })),
        ),
        (
            "factor-acyclic-cof-fib",
            rep.factor_acyclic_cof_fib.is_pass(),
            rep.factor_acyclic_cof_fib
                .failure()
                .map_or(Value::Null, |f| json!({ "f": mor(&f.f) })),
        ),
    ];
    let mut human = format!(
        "model {}: {}",
        m.name,
        if rep.holds() { "valid" } else { "INVALID" }
    );
    let mut counterexample = Value::Null;
    for (label, pass, detail) in &checks {
        let _ = write!(human, "\n  {label}: {}", if *pass { "ok" } else { "FAIL" });
        if !*pass {
            let _ = write!(human, " {detail}");
            if counterexample.is_null() {
                counterexample = json!({ "axiom": label, "detail": detail });
            }
        }
    }
    let value = json!({
        "verdict": if rep.holds() { "valid" } else { "invalid" },
        "counterexample": counterexample,
    });
    (human, value)
}

fn render_lemmas(k: &FiniteCategory, rep: &homotopy::LemmaReport) -> (String, Value, bool) {
    fn single(k: &FiniteCategory, c: &CheckResult<MorId>) -> (bool, Value) {
        (c.is_pass(), c.failure().map_or(Value::Null, |f| json!([k.mor_name(*f)])))
    }
    fn pair(k: &FiniteCategory, c: &CheckResult<(MorId, MorId)>) -> (bool, Value) {
        (
            c.is_pass(),
            c.failure()
                .map_or(Value::Null, |(a, b)| json!([k.mor_name(*a), k.mor_name(*b)])),
        )
    }
    fn triple(k: &FiniteCategory, c: &CheckResult<(MorId, MorId, MorId)>) -> (bool, Value) {
        (
            c.is_pass(),
            c.failure().map_or(Value::Null, |(a, b, t)| {
                json!([k.mor_name(*a), k.mor_name(*b), k.mor_name(*t)])
            }),
        )
    }
    let checks: Vec<(&str, (bool, Value))> = vec![
        ("left-reflexive", single(k, &rep.left_reflexive)),
        ("left-symmetric", pair(k, &rep.left_symmetric)),
        ("left-postcompose", triple(k, &rep.left_postcompose)),
        ("right-reflexive", single(k, &rep.right_reflexive)),
        ("right-symmetric", pair(k, &rep.right_symmetric)),
        ("right-precompose", triple(k, &rep.right_precompose)),
        ("chain-to-left", triple(k, &rep.chain_to_left)),
        ("chain-to-right", triple(k, &rep.chain_to_right)),
    ];
    let pass = rep.holds();
    let mut human = format!(
        "lemma suite: {} ({} fibrant-cofibrant pairs agree on both sides)",
        if pass { "pass" } else { "FAIL" },
        rep.coincidence_pairs
    );
    let mut counterexample = Value::Null;
    for (label, (ok, detail)) in &checks {
        let _ = write!(human, "\n  {label}: {}", if *ok { "ok" } else { "FAIL" });
        if !*ok {
            let _ = write!(human, " {detail}");
            if counterexample.is_null() {
                counterexample = json!({ "check": label, "tuple": detail });
            }
        }
    }
    let value = json!({
        "verdict": if pass { "pass" } else { "fail" },
        "counterexample": counterexample,
        "classes": { "coincidence_pairs": rep.coincidence_pairs },
    });
    (human, value, pass)
}
