//! Script AST with source spans.

use crate::lex::Span;

#[derive(Debug, Clone)]
pub enum PolyExpr {
    Int(u64, Span),
    Var(String, Span),
    Neg(Box<PolyExpr>, Span),
    Add(Box<PolyExpr>, Box<PolyExpr>, Span),
    Sub(Box<PolyExpr>, Box<PolyExpr>, Span),
    Mul(Box<PolyExpr>, Box<PolyExpr>, Span),
    Pow(Box<PolyExpr>, u64, Span),
}

impl PolyExpr {
    pub fn span(&self) -> Span {
        match self {
            PolyExpr::Int(_, s)
            | PolyExpr::Var(_, s)
            | PolyExpr::Neg(_, s)
            | PolyExpr::Add(_, _, s)
            | PolyExpr::Sub(_, _, s)
            | PolyExpr::Mul(_, _, s)
            | PolyExpr::Pow(_, _, s) => *s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    GrevLex,
    Block(u64),
}

#[derive(Debug, Clone)]
pub enum ModuleSource {
    /// `module M = S/I;`
    Quotient { ring_name: String, ideal_name: String },
    /// `module M = coker[[...],[...]];` rows of the presentation matrix
    Coker { rows: Vec<Vec<PolyExpr>> },
}

#[derive(Debug, Clone)]
pub enum ClassExpr {
    Zero,
    DimLe(u64),
    SuppIn(Vec<PolyExpr>),
}

#[derive(Debug, Clone)]
pub enum OracleQuery {
    Ass(String),
    Depth(String),
    Dim(String),
    Ncm(String),
    Cm(String, String),
}

#[derive(Debug, Clone)]
pub enum QueryKind {
    Grade { ideal: String, module: String, class: String },
    FDepth { ideal: String, module: String },
    GDepth { ideal: String, module: String },
    TjDepth { j: u64, ideal: String, module: String },
    TbGrade { b_ideal: String, ideal: String, module: String },
    CheckSeq { elements: Vec<PolyExpr>, module: String, class: String },
    Cm { module: String, class: String },
    Oracle(OracleQuery),
}

impl QueryKind {
    pub fn name(&self) -> &'static str {
        match self {
            QueryKind::Grade { .. } => "grade",
            QueryKind::FDepth { .. } => "fdepth",
            QueryKind::GDepth { .. } => "gdepth",
            QueryKind::TjDepth { .. } => "tjdepth",
            QueryKind::TbGrade { .. } => "tbgrade",
            QueryKind::CheckSeq { .. } => "checkseq",
            QueryKind::Cm { .. } => "cm",
            QueryKind::Oracle(_) => "oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Item {
    Ring {
        name: String,
        characteristic: u64,
        vars: Vec<String>,
        order: OrderSpec,
        span: Span,
    },
    Ideal {
        name: String,
        gens: Vec<PolyExpr>,
        span: Span,
    },
    Module {
        name: String,
        source: ModuleSource,
        span: Span,
    },
    Class {
        name: String,
        expr: ClassExpr,
        span: Span,
    },
    Query {
        kind: QueryKind,
        span: Span,
    },
}

#[derive(Debug, Clone, Default)]
pub struct Script {
    pub items: Vec<Item>,
}

impl Script {
    pub fn num_queries(&self) -> usize {
        self.items
            .iter()
            .filter(|i| matches!(i, Item::Query { .. }))
            .count()
    }
}

// ---------------------------------------------------------------------------
// Printing: a canonical source rendering, re-parseable to the same script.
// ---------------------------------------------------------------------------

impl std::fmt::Display for PolyExpr {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn atomic(e: &PolyExpr) -> bool {
            matches!(e, PolyExpr::Int(..) | PolyExpr::Var(..) | PolyExpr::Pow(..))
        }
        fn mul_safe(e: &PolyExpr) -> bool {
            atomic(e) || matches!(e, PolyExpr::Mul(..))
        }
        match self {
            PolyExpr::Int(v, _) => write!(out, "{v}"),
            PolyExpr::Var(name, _) => write!(out, "{name}"),
            PolyExpr::Neg(inner, _) => {
                if mul_safe(inner) {
                    write!(out, "-{inner}")
                } else {
                    write!(out, "-({inner})")
                }
            }
            PolyExpr::Add(a, b, _) => write!(out, "{a} + {b}"),
            PolyExpr::Sub(a, b, _) => {
                if matches!(**b, PolyExpr::Add(..) | PolyExpr::Sub(..) | PolyExpr::Neg(..)) {
                    write!(out, "{a} - ({b})")
                } else {
                    write!(out, "{a} - {b}")
                }
            }
            PolyExpr::Mul(a, b, _) => {
                if mul_safe(a) {
                    write!(out, "{a}*")?;
                } else {
                    write!(out, "({a})*")?;
                }
                if mul_safe(b) {
                    write!(out, "{b}")
                } else {
                    write!(out, "({b})")
                }
            }
            PolyExpr::Pow(base, e, _) => {
                if atomic(base) && !matches!(**base, PolyExpr::Pow(..)) {
                    write!(out, "{base}^{e}")
                } else {
                    write!(out, "({base})^{e}")
                }
            }
        }
    }
}

fn join_exprs(exprs: &[PolyExpr]) -> String {
    exprs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

impl std::fmt::Display for Item {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Item::Ring { name, characteristic, vars, order, .. } => {
                let order = match order {
                    OrderSpec::Lex => "lex".to_string(),
                    OrderSpec::GrevLex => "grevlex".to_string(),
                    OrderSpec::Block(k) => format!("block({k})"),
                };
                write!(out, "ring {name} = GF({characteristic})[{}] {order};", vars.join(","))
            }
            Item::Ideal { name, gens, .. } => {
                write!(out, "ideal {name} = ({});", join_exprs(gens))
            }
            Item::Module { name, source, .. } => match source {
                ModuleSource::Quotient { ring_name, ideal_name } => {
                    write!(out, "module {name} = {ring_name}/{ideal_name};")
                }
                ModuleSource::Coker { rows } => {
                    let rows: Vec<String> =
                        rows.iter().map(|r| format!("[{}]", join_exprs(r))).collect();
                    write!(out, "module {name} = coker[{}];", rows.join(", "))
                }
            },
            Item::Class { name, expr, .. } => match expr {
                ClassExpr::Zero => write!(out, "class {name} = zero;"),
                ClassExpr::DimLe(j) => write!(out, "class {name} = dim_le({j});"),
                ClassExpr::SuppIn(gens) => {
                    write!(out, "class {name} = supp_in({});", join_exprs(gens))
                }
            },
            Item::Query { kind, .. } => match kind {
                QueryKind::Grade { ideal, module, class } => {
                    write!(out, "grade a={ideal} {module} {class};")
                }
                QueryKind::FDepth { ideal, module } => write!(out, "fdepth a={ideal} {module};"),
                QueryKind::GDepth { ideal, module } => write!(out, "gdepth a={ideal} {module};"),
                QueryKind::TjDepth { j, ideal, module } => {
                    write!(out, "tjdepth({j}) a={ideal} {module};")
                }
                QueryKind::TbGrade { b_ideal, ideal, module } => {
                    write!(out, "tbgrade({b_ideal}) a={ideal} {module};")
                }
                QueryKind::CheckSeq { elements, module, class } => {
                    write!(out, "checkseq [{}] {module} {class};", join_exprs(elements))
                }
                QueryKind::Cm { module, class } => write!(out, "cm {module} {class};"),
                QueryKind::Oracle(q) => match q {
                    OracleQuery::Ass(i) => write!(out, "oracle ass {i};"),
                    OracleQuery::Depth(i) => write!(out, "oracle depth {i};"),
                    OracleQuery::Dim(i) => write!(out, "oracle dim {i};"),
                    OracleQuery::Ncm(i) => write!(out, "oracle ncm {i};"),
                    OracleQuery::Cm(m, c) => write!(out, "oracle cm {m} {c};"),
                },
            },
        }
    }
}

impl std::fmt::Display for Script {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for item in &self.items {
            writeln!(out, "{item}")?;
        }
        Ok(())
    }
}
