//! Semantic analysis and query execution: binds declarations, enforces the
//! single-ring and homogeneity rules, dispatches queries to the engine and
//! assembles the run report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serrecm::grade::{check_weak_sequence, find_max_weak_sequence, koszul_grade, named_depth};
use serrecm::oracle::{self, MonomialIdeal};
use serrecm::{
    s_cm_oracle_locus, s_cm_oracle_sweep, s_cm_test, Error, FPModule, GradeValue, Ideal,
    MonomialOrder, NamedDepth, Polynomial, PrimeField, QuotientRing, Ring, SerreClassSpec,
    Witnesses,
};

use crate::ast::*;
use crate::lex::Span;
use crate::parse::Diagnostic;
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct RunFlags {
    pub seed: u64,
    pub budget: usize,
    pub oracle: bool,
    pub machine: bool,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags { seed: 0, budget: 64, oracle: false, machine: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    EngineError,
    OracleDisagreement,
}

pub struct RunOutcome {
    pub report: Report,
    pub text: String,
    pub status: RunStatus,
}

struct Env {
    ring: Option<(String, Arc<Ring>, QuotientRing)>,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, FPModule>,
    classes: BTreeMap<String, SerreClassSpec>,
    names: BTreeMap<String, &'static str>,
}

impl Env {
    fn new() -> Env {
        Env {
            ring: None,
            ideals: BTreeMap::new(),
            modules: BTreeMap::new(),
            classes: BTreeMap::new(),
            names: BTreeMap::new(),
        }
    }

    fn declare(&mut self, name: &str, kind: &'static str, span: Span) -> Result<(), Diagnostic> {
        if self.names.contains_key(name) {
            return Err(Diagnostic {
                code: "E207",
                message: format!("name {name:?} is already declared"),
                span,
            });
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn ring(&self, span: Span) -> Result<&(String, Arc<Ring>, QuotientRing), Diagnostic> {
        self.ring.as_ref().ok_or(Diagnostic {
            code: "E203",
            message: "no ring declared yet; a `ring` declaration must come first".into(),
            span,
        })
    }

    fn ideal(&self, name: &str, span: Span) -> Result<&Ideal, Diagnostic> {
        self.ideals.get(name).ok_or(Diagnostic {
            code: "E201",
            message: format!("undeclared ideal {name:?}"),
            span,
        })
    }

    fn module(&self, name: &str, span: Span) -> Result<&FPModule, Diagnostic> {
        self.modules.get(name).ok_or(Diagnostic {
            code: "E201",
            message: format!("undeclared module {name:?}"),
            span,
        })
    }

    fn class(&self, name: &str, span: Span) -> Result<&SerreClassSpec, Diagnostic> {
        self.classes.get(name).ok_or(Diagnostic {
            code: "E201",
            message: format!("undeclared class {name:?}"),
            span,
        })
    }
}

fn eval_poly(expr: &PolyExpr, ring: &Arc<Ring>) -> Result<Polynomial, Diagnostic> {
    let engine_err = |e: Error, span: Span| Diagnostic {
        code: "E209",
        message: format!("polynomial evaluation failed: {e}"),
        span,
    };
    match expr {
        PolyExpr::Int(v, _) => Ok(Polynomial::constant(
            ring.clone(),
            (*v % ring.field().characteristic()) as i64,
        )),
        PolyExpr::Var(name, span) => match ring.var_index(name) {
            Some(i) => Ok(Polynomial::var(ring.clone(), i)),
            None => Err(Diagnostic {
                code: "E201",
                message: format!("undeclared variable {name:?}"),
                span: *span,
            }),
        },
        PolyExpr::Neg(inner, _) => Ok(eval_poly(inner, ring)?.neg()),
        PolyExpr::Add(a, b, span) => eval_poly(a, ring)?
            .add(&eval_poly(b, ring)?)
            .map_err(|e| engine_err(e, *span)),
        PolyExpr::Sub(a, b, span) => eval_poly(a, ring)?
            .sub(&eval_poly(b, ring)?)
            .map_err(|e| engine_err(e, *span)),
        PolyExpr::Mul(a, b, span) => eval_poly(a, ring)?
            .mul(&eval_poly(b, ring)?)
            .map_err(|e| engine_err(e, *span)),
        PolyExpr::Pow(base, e, span) => {
            let e = u32::try_from(*e).map_err(|_| Diagnostic {
                code: "E209",
                message: "exponent too large".into(),
                span: *span,
            })?;
            eval_poly(base, ring)?.pow(e).map_err(|e| engine_err(e, *span))
        }
    }
}

fn eval_homogeneous(expr: &PolyExpr, ring: &Arc<Ring>) -> Result<Polynomial, Diagnostic> {
    let poly = eval_poly(expr, ring)?;
    if !poly.is_homogeneous() {
        return Err(Diagnostic {
            code: "E205",
            message: format!("polynomial {poly} is not homogeneous"),
            span: expr.span(),
        });
    }
    Ok(poly)
}

fn ideal_display(ideal: &Ideal) -> String {
    if ideal.gens().is_empty() {
        return "(0)".into();
    }
    let gens: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
    format!("({})", gens.join(", "))
}

fn monomial_ideal_display(ideal: &MonomialIdeal, ring: &Arc<Ring>) -> String {
    if ideal.is_zero() {
        return "(0)".into();
    }
    let gens: Vec<String> = ideal
        .gens()
        .iter()
        .map(|m| Polynomial::monomial(ring.clone(), m.clone(), 1).to_string())
        .collect();
    format!("({})", gens.join(", "))
}

fn prime_display(mask: u32, ring: &Arc<Ring>) -> String {
    let vars: Vec<String> = (0..ring.num_vars())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| ring.vars()[i].clone())
        .collect();
    if vars.is_empty() {
        "(0)".into()
    } else {
        format!("({})", vars.join(", "))
    }
}

fn grade_value_str(v: GradeValue) -> String {
    v.to_string()
}

pub fn run(script: &Script, flags: &RunFlags) -> Result<RunOutcome, Diagnostic> {
    let started = Instant::now();
    let mut env = Env::new();
    let mut report = Report::new();
    let mut text = String::new();
    let mut status = RunStatus::Ok;
    report.push("seed", flags.seed.to_string());
    report.push("budget", flags.budget.to_string());
    report.push("oracle", flags.oracle.to_string());
    report.push("queries", script.num_queries().to_string());
    if script.num_queries() == 0 {
        report.push("warning", "no queries");
        text.push_str("warning: script contains no queries\n");
    }
    let mut qn = 0usize;
    for item in &script.items {
        match item {
            Item::Ring { name, characteristic, vars, order, span } => {
                if env.ring.is_some() {
                    return Err(Diagnostic {
                        code: "E202",
                        message: "only one ring declaration is allowed per script".into(),
                        span: *span,
                    });
                }
                env.declare(name, "ring", *span)?;
                let field = PrimeField::new(*characteristic).map_err(|e| Diagnostic {
                    code: "E204",
                    message: e.to_string(),
                    span: *span,
                })?;
                let order = match order {
                    OrderSpec::Lex => MonomialOrder::Lex,
                    OrderSpec::GrevLex => MonomialOrder::GrevLex,
                    OrderSpec::Block(k) => MonomialOrder::Block { split: *k as usize },
                };
                let ring = Ring::new(field, vars.clone(), order).map_err(|e| Diagnostic {
                    code: "E206",
                    message: e.to_string(),
                    span: *span,
                })?;
                let qring = QuotientRing::polynomial(ring.clone());
                env.ring = Some((name.clone(), ring, qring));
            }
            Item::Ideal { name, gens, span } => {
                let (_, ring, _) = env.ring(*span)?.clone();
                env.declare(name, "ideal", *span)?;
                let gens = gens
                    .iter()
                    .map(|g| eval_homogeneous(g, &ring))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::new(ring.clone(), gens).map_err(|e| Diagnostic {
                    code: "E209",
                    message: e.to_string(),
                    span: *span,
                })?;
                env.ideals.insert(name.clone(), ideal);
            }
            Item::Module { name, source, span } => {
                let (ring_name, ring, qring) = env.ring(*span)?.clone();
                env.declare(name, "module", *span)?;
                let module = match source {
                    ModuleSource::Quotient { ring_name: rn, ideal_name } => {
                        if *rn != ring_name {
                            return Err(Diagnostic {
                                code: "E201",
                                message: format!("undeclared ring {rn:?} in module quotient"),
                                span: *span,
                            });
                        }
                        let ideal = env.ideal(ideal_name, *span)?.clone();
                        FPModule::cyclic(&qring, &ideal).map_err(|e| Diagnostic {
                            code: "E209",
                            message: e.to_string(),
                            span: *span,
                        })?
                    }
                    ModuleSource::Coker { rows } => {
                        let width = rows[0].len();
                        if rows.iter().any(|r| r.len() != width) {
                            return Err(Diagnostic {
                                code: "E208",
                                message: "presentation matrix rows have unequal lengths".into(),
                                span: *span,
                            });
                        }
                        let mut entries: Vec<Vec<Polynomial>> = Vec::new();
                        for row in rows {
                            entries.push(
                                row.iter()
                                    .map(|e| eval_homogeneous(e, &ring))
                                    .collect::<Result<Vec<_>, _>>()?,
                            );
                        }
                        let rank0 = rows.len();
                        let columns = (0..width)
                            .map(|j| {
                                serrecm::vector::FreeVector::from_components(
                                    ring.clone(),
                                    &entries.iter().map(|row| row[j].clone()).collect::<Vec<_>>(),
                                )
                            })
                            .collect();
                        FPModule::new(&qring, rank0, vec![0; rank0], columns).map_err(|e| {
                            Diagnostic { code: "E209", message: e.to_string(), span: *span }
                        })?
                    }
                };
                env.modules.insert(name.clone(), module);
            }
            Item::Class { name, expr, span } => {
                let (_, ring, _) = env.ring(*span)?.clone();
                env.declare(name, "class", *span)?;
                let class = match expr {
                    ClassExpr::Zero => SerreClassSpec::ZeroOnly,
                    ClassExpr::DimLe(j) => SerreClassSpec::DimLE(*j as i64),
                    ClassExpr::SuppIn(gens) => {
                        let gens = gens
                            .iter()
                            .map(|g| eval_homogeneous(g, &ring))
                            .collect::<Result<Vec<_>, _>>()?;
                        let b = Ideal::new(ring.clone(), gens).map_err(|e| Diagnostic {
                            code: "E209",
                            message: e.to_string(),
                            span: *span,
                        })?;
                        if b.is_zero_ideal() || b.is_unit_ideal() {
                            return Err(Diagnostic {
                                code: "E206",
                                message: "supp_in requires a proper nonzero ideal".into(),
                                span: *span,
                            });
                        }
                        SerreClassSpec::SuppInV(b)
                    }
                };
                env.classes.insert(name.clone(), class);
            }
            Item::Query { kind, span } => {
                qn += 1;
                let key = |suffix: &str| format!("query.{qn}.{suffix}");
                report.push(key("kind"), kind.name());
                report.push(key("span"), span.to_string());
                let t0 = Instant::now();
                let outcome = execute_query(&env, kind, *span, flags, qn, &mut report);
                match outcome {
                    Ok((line, oracle_conflict)) => {
                        report.push(key("status"), "ok");
                        if oracle_conflict {
                            status = RunStatus::OracleDisagreement;
                            let _ = writeln!(
                                text,
                                "{line} [oracle disagreement] ({} ms)",
                                t0.elapsed().as_millis()
                            );
                        } else {
                            let _ = writeln!(text, "{line} ({} ms)", t0.elapsed().as_millis());
                        }
                    }
                    Err(diag) if diag.code == "E301" => {
                        // engine errors become code-2 reports, run continues
                        report.push(key("status"), "error");
                        report.push(key("error"), diag.message.clone());
                        report.push(key("error_span"), diag.span.to_string());
                        if status == RunStatus::Ok {
                            status = RunStatus::EngineError;
                        }
                        let _ = writeln!(text, "{}: error: {}", kind.name(), diag.message);
                    }
                    // semantic errors (undeclared names, bad arguments) abort
                    // like parse errors
                    Err(diag) => return Err(diag),
                }
            }
        }
    }
    report.push(
        "status",
        match status {
            RunStatus::Ok => "ok",
            RunStatus::EngineError => "engine-error",
            RunStatus::OracleDisagreement => "oracle-disagreement",
        },
    );
    let _ = writeln!(text, "total: {} queries in {} ms", qn, started.elapsed().as_millis());
    Ok(RunOutcome { report, text, status })
}

fn engine_diag(e: Error, span: Span) -> Diagnostic {
    Diagnostic { code: "E301", message: e.to_string(), span }
}

/// Executes one query, pushing machine entries; returns the text line and
/// whether an oracle cross-check disagreed.
fn execute_query(
    env: &Env,
    kind: &QueryKind,
    span: Span,
    flags: &RunFlags,
    qn: usize,
    report: &mut Report,
) -> Result<(String, bool), Diagnostic> {
    let key = |suffix: &str| format!("query.{qn}.{suffix}");
    let (_, ring, _) = env.ring(span)?;
    match kind {
        QueryKind::Grade { ideal, module, class } => {
            let a = env.ideal(ideal, span)?;
            let m = env.module(module, span)?;
            let cls = env.class(class, span)?;
            report.push(key("ideal"), ideal);
            report.push(key("module"), module);
            report.push(key("class"), cls.describe());
            let g = koszul_grade(a, m, cls).map_err(|e| engine_diag(e, span))?;
            report.push(key("value"), grade_value_str(g.value));
            report.push(key("route"), g.route.to_string());
            if let Witnesses::Layers(layers) = &g.witnesses {
                for l in layers {
                    report.push(
                        key(&format!("layer.{}", l.index)),
                        format!("in_class={} dim={}", l.in_class, l.dimension),
                    );
                }
            }
            for (i, n) in g.notes.iter().enumerate() {
                report.push(key(&format!("note.{i}")), n);
            }
            let mut witness_text = String::new();
            if g.value.as_finite().is_some() {
                match find_max_weak_sequence(a, m, cls, flags.seed, flags.budget) {
                    Ok(seq_rep) => {
                        if let Witnesses::Sequence(seq) = &seq_rep.witnesses {
                            for (i, f) in seq.iter().enumerate() {
                                report.push(key(&format!("witness.{i}")), f.to_string());
                            }
                            if !seq.is_empty() {
                                let parts: Vec<String> =
                                    seq.iter().map(|f| f.to_string()).collect();
                                witness_text = format!(" witness: [{}]", parts.join(", "));
                            }
                        }
                    }
                    Err(Error::WitnessSearchFailed { target, found }) => {
                        report.push(
                            key("witness_note"),
                            format!("search exhausted budget after {found} of {target}"),
                        );
                        witness_text = " witness: search failed".into();
                    }
                    Err(e) => return Err(engine_diag(e, span)),
                }
            }
            let mut conflict = false;
            if flags.oracle {
                conflict = grade_oracle_check(env, a, m, cls, qn, report)?;
            }
            Ok((
                format!(
                    "grade a={ideal} {module} {class}: {} [{}]{}",
                    grade_value_str(g.value),
                    g.route,
                    witness_text
                ),
                conflict,
            ))
        }
        QueryKind::FDepth { ideal, module }
        | QueryKind::GDepth { ideal, module } => {
            let named = if matches!(kind, QueryKind::FDepth { .. }) {
                NamedDepth::FDepth
            } else {
                NamedDepth::GDepth
            };
            named_query(env, &named, ideal, module, span, qn, report, kind.name())
        }
        QueryKind::TjDepth { j, ideal, module } => {
            let named = NamedDepth::TjDepth(*j as i64);
            named_query(env, &named, ideal, module, span, qn, report, kind.name())
        }
        QueryKind::TbGrade { b_ideal, ideal, module } => {
            let b = env.ideal(b_ideal, span)?.clone();
            if b.is_zero_ideal() {
                return Err(Diagnostic {
                    code: "E206",
                    message: "tbgrade requires a nonzero ideal b".into(),
                    span,
                });
            }
            report.push(key("b"), b_ideal);
            let named = NamedDepth::TbGrade(b);
            named_query(env, &named, ideal, module, span, qn, report, kind.name())
        }
        QueryKind::CheckSeq { elements, module, class } => {
            let m = env.module(module, span)?;
            let cls = env.class(class, span)?;
            let xs = elements
                .iter()
                .map(|e| eval_homogeneous(e, ring))
                .collect::<Result<Vec<_>, _>>()?;
            report.push(key("module"), module);
            report.push(key("class"), cls.describe());
            let rep = check_weak_sequence(&xs, m, cls).map_err(|e| engine_diag(e, span))?;
            let mut marks = Vec::new();
            for (i, step) in rep.steps.iter().enumerate() {
                report.push(
                    key(&format!("step.{i}")),
                    format!(
                        "element={} in_class={} dim={}",
                        step.element, step.in_class, step.step_dimension
                    ),
                );
                marks.push(if step.in_class { "+" } else { "-" });
            }
            report.push(key("weak_sequence"), rep.is_weak_sequence.to_string());
            report.push(key("quotient_outside_class"), rep.quotient_outside_class.to_string());
            report.push(key("s_sequence"), rep.is_s_sequence.to_string());
            Ok((
                format!(
                    "checkseq {module} {class}: weak={} quotient_outside={} s_sequence={} (steps: {})",
                    rep.is_weak_sequence,
                    rep.quotient_outside_class,
                    rep.is_s_sequence,
                    marks.join("")
                ),
                false,
            ))
        }
        QueryKind::Cm { module, class } => {
            let m = env.module(module, span)?;
            let cls = env.class(class, span)?;
            report.push(key("module"), module);
            report.push(key("class"), cls.describe());
            let rep = s_cm_test(m, cls).map_err(|e| engine_diag(e, span))?;
            report.push(key("dim"), rep.module_dimension.to_string());
            report.push(key("a_invariant"), ideal_display(&rep.a_invariant));
            for p in &rep.parts {
                report.push(
                    key(&format!("part.{}", p.index)),
                    format!("ext_index={} ann={}", p.ext_index, ideal_display(&p.annihilator)),
                );
            }
            report.push(key("verdict"), rep.verdict.to_string());
            report.push(key("route"), rep.route.to_string());
            let mut conflict = false;
            if flags.oracle {
                match (s_cm_oracle_sweep(m, cls), s_cm_oracle_locus(m, cls)) {
                    (Ok(sweep), Ok(locus)) => {
                        report.push(key("oracle.sweep"), sweep.to_string());
                        report.push(key("oracle.locus"), locus.to_string());
                        if sweep != rep.verdict || locus != rep.verdict {
                            conflict = true;
                            report.push(key("oracle.disagreement"), "true");
                        }
                    }
                    _ => {
                        report.push(key("oracle.note"), "skipped: non-monomial annihilator");
                    }
                }
            }
            Ok((
                format!(
                    "cm {module} {class}: {} [{}] a(M) = {}, dim = {}",
                    rep.verdict,
                    rep.route,
                    ideal_display(&rep.a_invariant),
                    rep.module_dimension
                ),
                conflict,
            ))
        }
        QueryKind::Oracle(q) => oracle_query(env, q, span, qn, report),
    }
}

#[allow(clippy::too_many_arguments)]
fn named_query(
    env: &Env,
    named: &NamedDepth,
    ideal: &str,
    module: &str,
    span: Span,
    qn: usize,
    report: &mut Report,
    kind_name: &str,
) -> Result<(String, bool), Diagnostic> {
    let key = |suffix: &str| format!("query.{qn}.{suffix}");
    let a = env.ideal(ideal, span)?;
    let m = env.module(module, span)?;
    report.push(key("ideal"), ideal);
    report.push(key("module"), module);
    let g = named_depth(named, a, m).map_err(|e| engine_diag(e, span))?;
    report.push(key("name"), g.name.clone().unwrap_or_default());
    report.push(key("class"), g.class.describe());
    report.push(key("value"), grade_value_str(g.value));
    report.push(key("route"), g.route.to_string());
    if let Witnesses::Layers(layers) = &g.witnesses {
        for l in layers {
            report.push(
                key(&format!("layer.{}", l.index)),
                format!("in_class={} dim={}", l.in_class, l.dimension),
            );
        }
    }
    Ok((
        format!("{kind_name} a={ideal} {module}: {}", grade_value_str(g.value)),
        false,
    ))
}

fn monomial_of(ideal: &Ideal, span: Span) -> Result<MonomialIdeal, Diagnostic> {
    MonomialIdeal::from_ideal(ideal).ok_or(Diagnostic {
        code: "E301",
        message: "unsupported route: the oracle needs monomial generators".into(),
        span,
    })
}

fn oracle_query(
    env: &Env,
    q: &OracleQuery,
    span: Span,
    qn: usize,
    report: &mut Report,
) -> Result<(String, bool), Diagnostic> {
    let key = |suffix: &str| format!("query.{qn}.{suffix}");
    let (_, ring, _) = env.ring(span)?;
    let field = ring.field();
    match q {
        OracleQuery::Ass(name) => {
            let mi = monomial_of(env.ideal(name, span)?, span)?;
            let primes = oracle::associated_primes(&mi);
            let shown: Vec<String> = primes.iter().map(|&p| prime_display(p, ring)).collect();
            report.push(key("ideal"), name);
            for (i, p) in shown.iter().enumerate() {
                report.push(key(&format!("ass.{i}")), p);
            }
            Ok((format!("oracle ass {name}: {}", shown.join(", ")), false))
        }
        OracleQuery::Depth(name) => {
            let mi = monomial_of(env.ideal(name, span)?, span)?;
            let depth = oracle::monomial_depth(&mi, field).map_err(|e| engine_diag(e, span))?;
            report.push(key("ideal"), name);
            report.push(key("depth"), depth.to_string());
            Ok((format!("oracle depth {name}: {depth}"), false))
        }
        OracleQuery::Dim(name) => {
            let mi = monomial_of(env.ideal(name, span)?, span)?;
            let dim = mi.dimension();
            report.push(key("ideal"), name);
            report.push(key("dim"), dim.to_string());
            Ok((format!("oracle dim {name}: {dim}"), false))
        }
        OracleQuery::Ncm(name) => {
            let mi = monomial_of(env.ideal(name, span)?, span)?;
            let locus = oracle::ncm_locus_monomial(&mi, field).map_err(|e| engine_diag(e, span))?;
            let shown = monomial_ideal_display(&locus, ring);
            report.push(key("ideal"), name);
            report.push(key("ncm_locus"), shown.clone());
            Ok((format!("oracle ncm {name}: {shown}"), false))
        }
        OracleQuery::Cm(module, class) => {
            let m = env.module(module, span)?;
            let cls = env.class(class, span)?;
            let sweep = s_cm_oracle_sweep(m, cls).map_err(|e| engine_diag(e, span))?;
            let locus = s_cm_oracle_locus(m, cls).map_err(|e| engine_diag(e, span))?;
            report.push(key("module"), module);
            report.push(key("class"), cls.describe());
            report.push(key("sweep"), sweep.to_string());
            report.push(key("locus"), locus.to_string());
            Ok((
                format!("oracle cm {module} {class}: sweep={sweep} locus={locus}"),
                false,
            ))
        }
    }
}

/// Cross-check a grade query against the combinatorial depth when the data
/// is in oracle range: the full variable ideal on a squarefree monomial
/// cyclic module under the zero class.
fn grade_oracle_check(
    env: &Env,
    a: &Ideal,
    m: &FPModule,
    cls: &SerreClassSpec,
    qn: usize,
    report: &mut Report,
) -> Result<bool, Diagnostic> {
    let key = |suffix: &str| format!("query.{qn}.{suffix}");
    let (_, ring, _) = env.ring.as_ref().unwrap();
    if *cls != SerreClassSpec::ZeroOnly {
        report.push(key("oracle.note"), "skipped: depth oracle covers the zero class only");
        return Ok(false);
    }
    let full_vars = (0..ring.num_vars()).all(|i| {
        a.gens()
            .iter()
            .any(|g| g.terms().len() == 1 && g.terms()[0].mono == serrecm::Monomial::var(ring.num_vars(), i))
    }) && a.gens().len() == ring.num_vars();
    let ann = match serrecm::cm::monomial_annihilator(m) {
        Ok(ann) => ann,
        Err(_) => {
            report.push(key("oracle.note"), "skipped: non-monomial annihilator");
            return Ok(false);
        }
    };
    if !full_vars || ann.is_unit() {
        report.push(key("oracle.note"), "skipped: depth oracle needs the full variable ideal");
        return Ok(false);
    }
    let depth = oracle::monomial_depth(&ann, ring.field()).map_err(|e| {
        engine_diag(e, crate::lex::Span { start: crate::lex::Pos { line: 0, col: 0 }, end: crate::lex::Pos { line: 0, col: 0 } })
    })?;
    report.push(key("oracle.depth"), depth.to_string());
    let engine_value = koszul_grade(a, m, cls)
        .map_err(|e| engine_diag(e, crate::lex::Span { start: crate::lex::Pos { line: 0, col: 0 }, end: crate::lex::Pos { line: 0, col: 0 } }))?
        .value;
    let agrees = engine_value == GradeValue::Finite(depth as usize);
    if !agrees {
        report.push(key("oracle.disagreement"), "true");
    }
    Ok(!agrees)
}
