//! The line-oriented workspace file format.
//!
//! ```text
//! format 1
//! field F2                      # or QQ
//! algebra M = matrix(2)
//! algebra D = subalgebra(M; gens = 1 0 0 1, 0 0 0 1)
//! algebra P = product(D, D)
//! algebra Q dim 2 {
//!   mult 0 0 = 1 0
//!   mult 0 1 = 0 1
//!   mult 1 0 = 0 1
//!   mult 1 1 = 0 0
//!   unit = 1 0
//! }
//! bimodule Sigma over D, M dim 4 {
//!   left 0 = <16 entries>
//!   right 0 = <16 entries>
//! }
//! bimodule F2sq = free(Q, 2)
//! bimodule Dual = dual(Sigma)
//! bimodule Op = opposite(Sigma)
//! task theorems(Sigma)
//! ```
//!
//! Comments start with `#`; statements are separated by newlines or `;`.
//! Scalars are integers (canonicalized into the field) or `a/b` over the
//! rationals. Parsing, serializing and re-parsing is the identity on the
//! parsed structure.

use corings::algebra::{Algebra, AlgebraMorphism};
use corings::bimodule::{right_dual, Bimodule};
use corings::field::{parse_scalar, Field, Scalar};
use corings::matrix::Matrix;
use corings::subspace::Subspace;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum WorkspaceError {
    Syntax { line: usize, message: String },
    Unresolved { line: usize, name: String },
    Dimension { line: usize, message: String },
    Build { line: usize, message: String },
}

impl fmt::Display for WorkspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorkspaceError::Syntax { line, message } => {
                write!(f, "syntax error at line {line}: {message}")
            }
            WorkspaceError::Unresolved { line, name } => {
                write!(f, "unresolved name at line {line}: {name}")
            }
            WorkspaceError::Dimension { line, message } => {
                write!(f, "dimension error at line {line}: {message}")
            }
            WorkspaceError::Build { line, message } => {
                write!(f, "invalid definition at line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for WorkspaceError {}

type WResult<T> = Result<T, WorkspaceError>;

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraDef {
    Explicit {
        dim: usize,
        mult: Vec<((usize, usize), Vec<Scalar>)>,
        unit: Vec<Scalar>,
    },
    MatrixAlgebra(usize),
    Product(String, String),
    Subalgebra { of: String, gens: Vec<Vec<Scalar>> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum BimoduleDef {
    Explicit {
        left: String,
        right: String,
        dim: usize,
        left_actions: Vec<(usize, Vec<Scalar>)>,
        right_actions: Vec<(usize, Vec<Scalar>)>,
    },
    Free { algebra: String, rank: usize },
    Dual(String),
    Opposite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Validate,
    Coring,
    Endos,
    Inv,
    Gamma,
    Hat,
    Separability,
    Adjunction,
    Theorems,
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Validate => "validate",
            TaskKind::Coring => "coring",
            TaskKind::Endos => "endos",
            TaskKind::Inv => "inv",
            TaskKind::Gamma => "gamma",
            TaskKind::Hat => "hat",
            TaskKind::Separability => "separability",
            TaskKind::Adjunction => "adjunction",
            TaskKind::Theorems => "theorems",
        }
    }

    fn from_name(name: &str) -> Option<TaskKind> {
        Some(match name {
            "validate" => TaskKind::Validate,
            "coring" => TaskKind::Coring,
            "endos" => TaskKind::Endos,
            "inv" => TaskKind::Inv,
            "gamma" => TaskKind::Gamma,
            "hat" => TaskKind::Hat,
            "separability" => TaskKind::Separability,
            "adjunction" => TaskKind::Adjunction,
            "theorems" => TaskKind::Theorems,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Task {
    pub kind: TaskKind,
    pub arg: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WorkspaceFile {
    pub field: Field,
    pub algebras: Vec<(String, AlgebraDef, usize)>,
    pub bimodules: Vec<(String, BimoduleDef, usize)>,
    pub tasks: Vec<Task>,
}

/// One logical statement with its 1-based source line.
struct Stmt {
    line: usize,
    text: String,
}

fn split_statements(text: &str) -> Vec<Stmt> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let without_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        // Split on ';' only outside parentheses, so builder arguments like
        // `subalgebra(M; gens = ...)` stay intact.
        let mut depth = 0usize;
        let mut piece = String::new();
        let mut push = |piece: &mut String| {
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                out.push(Stmt {
                    line,
                    text: trimmed.to_string(),
                });
            }
            piece.clear();
        };
        for c in without_comment.chars() {
            match c {
                '(' => {
                    depth += 1;
                    piece.push(c);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    piece.push(c);
                }
                ';' if depth == 0 => push(&mut piece),
                _ => piece.push(c),
            }
        }
        push(&mut piece);
    }
    out
}

fn parse_scalars(field: &Field, text: &str, line: usize) -> WResult<Vec<Scalar>> {
    text.split_whitespace()
        .map(|tok| {
            parse_scalar(field, tok).map_err(|e| WorkspaceError::Syntax {
                line,
                message: format!("bad scalar {tok:?}: {e}"),
            })
        })
        .collect()
}

fn parse_usize(tok: &str, line: usize, what: &str) -> WResult<usize> {
    tok.parse().map_err(|_| WorkspaceError::Syntax {
        line,
        message: format!("expected a number for {what}, found {tok:?}"),
    })
}

fn ident(tok: &str, line: usize) -> WResult<String> {
    if tok.is_empty()
        || !tok
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        return Err(WorkspaceError::Syntax {
            line,
            message: format!("bad identifier {tok:?}"),
        });
    }
    Ok(tok.to_string())
}

/// Extracts `name(args)` into the pair.
fn call_form<'a>(text: &'a str, line: usize) -> WResult<(&'a str, &'a str)> {
    let open = text.find('(').ok_or_else(|| WorkspaceError::Syntax {
        line,
        message: format!("expected a call form, found {text:?}"),
    })?;
    if !text.ends_with(')') {
        return Err(WorkspaceError::Syntax {
            line,
            message: "missing closing parenthesis".into(),
        });
    }
    Ok((&text[..open], &text[open + 1..text.len() - 1]))
}

pub fn parse_workspace(text: &str) -> WResult<WorkspaceFile> {
    let stmts = split_statements(text);
    let mut iter = stmts.into_iter().peekable();

    let header = iter.next().ok_or(WorkspaceError::Syntax {
        line: 1,
        message: "empty file: expected `format 1`".into(),
    })?;
    if header.text != "format 1" {
        return Err(WorkspaceError::Syntax {
            line: header.line,
            message: format!("expected `format 1`, found {:?}", header.text),
        });
    }

    let field_stmt = iter.next().ok_or(WorkspaceError::Syntax {
        line: header.line,
        message: "expected a field declaration".into(),
    })?;
    let field = match field_stmt.text.split_whitespace().collect::<Vec<_>>()[..] {
        ["field", "QQ"] => Field::Rationals,
        ["field", spec] if spec.starts_with('F') => {
            let p = parse_usize(&spec[1..], field_stmt.line, "prime")? as u64;
            Field::prime(p).map_err(|e| WorkspaceError::Syntax {
                line: field_stmt.line,
                message: e.to_string(),
            })?
        }
        _ => {
            return Err(WorkspaceError::Syntax {
                line: field_stmt.line,
                message: format!("expected `field F<p>` or `field QQ`, found {:?}", field_stmt.text),
            })
        }
    };

    let mut ws = WorkspaceFile {
        field,
        algebras: Vec::new(),
        bimodules: Vec::new(),
        tasks: Vec::new(),
    };

    while let Some(stmt) = iter.next() {
        let tokens: Vec<&str> = stmt.text.split_whitespace().collect();
        match tokens.first().copied() {
            Some("algebra") => {
                let (name, def) = parse_algebra(&field, &stmt, &tokens, &mut iter)?;
                ws.algebras.push((name, def, stmt.line));
            }
            Some("bimodule") => {
                let (name, def) = parse_bimodule(&field, &stmt, &tokens, &mut iter)?;
                ws.bimodules.push((name, def, stmt.line));
            }
            Some("task") => {
                let rest = stmt.text["task".len()..].trim();
                let (kind_name, arg) = call_form(rest, stmt.line)?;
                let kind =
                    TaskKind::from_name(kind_name.trim()).ok_or(WorkspaceError::Syntax {
                        line: stmt.line,
                        message: format!("unknown task kind {kind_name:?}"),
                    })?;
                ws.tasks.push(Task {
                    kind,
                    arg: ident(arg.trim(), stmt.line)?,
                    line: stmt.line,
                });
            }
            _ => {
                return Err(WorkspaceError::Syntax {
                    line: stmt.line,
                    message: format!("unexpected statement {:?}", stmt.text),
                })
            }
        }
    }
    Ok(ws)
}

fn parse_algebra(
    field: &Field,
    stmt: &Stmt,
    tokens: &[&str],
    iter: &mut std::iter::Peekable<std::vec::IntoIter<Stmt>>,
) -> WResult<(String, AlgebraDef)> {
    let line = stmt.line;
    if tokens.len() >= 3 && tokens[2] == "=" {
        let name = ident(tokens[1], line)?;
        let rhs = stmt.text.splitn(2, '=').nth(1).unwrap().trim();
        let (func, args) = call_form(rhs, line)?;
        let def = match func.trim() {
            "matrix" => AlgebraDef::MatrixAlgebra(parse_usize(args.trim(), line, "matrix size")?),
            "product" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(WorkspaceError::Syntax {
                        line,
                        message: "product takes two algebra names".into(),
                    });
                }
                AlgebraDef::Product(ident(parts[0].trim(), line)?, ident(parts[1].trim(), line)?)
            }
            "subalgebra" => {
                let parts: Vec<&str> = args.splitn(2, ';').collect();
                if parts.len() != 2 {
                    return Err(WorkspaceError::Syntax {
                        line,
                        message: "subalgebra takes `name; gens = ...`".into(),
                    });
                }
                let of = ident(parts[0].trim(), line)?;
                let gens_part = parts[1].trim();
                let Some(rest) = gens_part.strip_prefix("gens") else {
                    return Err(WorkspaceError::Syntax {
                        line,
                        message: "expected `gens = ...`".into(),
                    });
                };
                let rest = rest.trim().strip_prefix('=').ok_or(WorkspaceError::Syntax {
                    line,
                    message: "expected `gens = ...`".into(),
                })?;
                let gens = rest
                    .split(',')
                    .map(|g| parse_scalars(field, g, line))
                    .collect::<WResult<Vec<_>>>()?;
                AlgebraDef::Subalgebra { of, gens }
            }
            other => {
                return Err(WorkspaceError::Syntax {
                    line,
                    message: format!("unknown algebra builder {other:?}"),
                })
            }
        };
        return Ok((name, def));
    }
    // algebra <name> dim <n> { ... }
    if tokens.len() < 4 || tokens[2] != "dim" {
        return Err(WorkspaceError::Syntax {
            line,
            message: "expected `algebra <name> dim <n> {` or `algebra <name> = builder(...)`"
                .into(),
        });
    }
    let name = ident(tokens[1], line)?;
    let dim = parse_usize(tokens[3], line, "algebra dimension")?;
    if tokens.last() != Some(&"{") {
        return Err(WorkspaceError::Syntax {
            line,
            message: "expected `{` to open the algebra block".into(),
        });
    }
    let mut mult = Vec::new();
    let mut unit = None;
    loop {
        let Some(entry) = iter.next() else {
            return Err(WorkspaceError::Syntax {
                line,
                message: "unterminated algebra block".into(),
            });
        };
        if entry.text == "}" {
            break;
        }
        let toks: Vec<&str> = entry.text.split_whitespace().collect();
        match toks.first().copied() {
            Some("mult") => {
                if toks.len() < 5 || toks[3] != "=" {
                    return Err(WorkspaceError::Syntax {
                        line: entry.line,
                        message: "expected `mult <i> <j> = <coeffs>`".into(),
                    });
                }
                let i = parse_usize(toks[1], entry.line, "basis index")?;
                let j = parse_usize(toks[2], entry.line, "basis index")?;
                if i >= dim || j >= dim {
                    return Err(WorkspaceError::Dimension {
                        line: entry.line,
                        message: format!("mult index ({i}, {j}) out of range for dim {dim}"),
                    });
                }
                let coeffs =
                    parse_scalars(field, entry.text.splitn(2, '=').nth(1).unwrap(), entry.line)?;
                if coeffs.len() != dim {
                    return Err(WorkspaceError::Dimension {
                        line: entry.line,
                        message: format!("expected {dim} coefficients, found {}", coeffs.len()),
                    });
                }
                mult.push(((i, j), coeffs));
            }
            Some("unit") => {
                let coeffs =
                    parse_scalars(field, entry.text.splitn(2, '=').nth(1).unwrap_or(""), entry.line)?;
                if coeffs.len() != dim {
                    return Err(WorkspaceError::Dimension {
                        line: entry.line,
                        message: format!("expected {dim} unit coefficients, found {}", coeffs.len()),
                    });
                }
                unit = Some(coeffs);
            }
            _ => {
                return Err(WorkspaceError::Syntax {
                    line: entry.line,
                    message: format!("unexpected entry {:?} in algebra block", entry.text),
                })
            }
        }
    }
    let unit = unit.ok_or(WorkspaceError::Syntax {
        line,
        message: "algebra block is missing `unit = ...`".into(),
    })?;
    Ok((name, AlgebraDef::Explicit { dim, mult, unit }))
}

fn parse_bimodule(
    field: &Field,
    stmt: &Stmt,
    tokens: &[&str],
    iter: &mut std::iter::Peekable<std::vec::IntoIter<Stmt>>,
) -> WResult<(String, BimoduleDef)> {
    let line = stmt.line;
    if tokens.len() >= 3 && tokens[2] == "=" {
        let name = ident(tokens[1], line)?;
        let rhs = stmt.text.splitn(2, '=').nth(1).unwrap().trim();
        let (func, args) = call_form(rhs, line)?;
        let def = match func.trim() {
            "free" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(WorkspaceError::Syntax {
                        line,
                        message: "free takes `algebra, rank`".into(),
                    });
                }
                BimoduleDef::Free {
                    algebra: ident(parts[0].trim(), line)?,
                    rank: parse_usize(parts[1].trim(), line, "rank")?,
                }
            }
            "dual" => BimoduleDef::Dual(ident(args.trim(), line)?),
            "opposite" => BimoduleDef::Opposite(ident(args.trim(), line)?),
            other => {
                return Err(WorkspaceError::Syntax {
                    line,
                    message: format!("unknown bimodule builder {other:?}"),
                })
            }
        };
        return Ok((name, def));
    }
    // bimodule <name> over <B>, <A> dim <m> { ... }
    if tokens.len() < 7 || tokens[2] != "over" {
        return Err(WorkspaceError::Syntax {
            line,
            message: "expected `bimodule <name> over <B>, <A> dim <m> {`".into(),
        });
    }
    let name = ident(tokens[1], line)?;
    let left = ident(tokens[3].trim_end_matches(','), line)?;
    let right = ident(tokens[4].trim_end_matches(','), line)?;
    if tokens[5] != "dim" {
        return Err(WorkspaceError::Syntax {
            line,
            message: "expected `dim <m>` after the algebras".into(),
        });
    }
    let dim = parse_usize(tokens[6], line, "bimodule dimension")?;
    if tokens.last() != Some(&"{") {
        return Err(WorkspaceError::Syntax {
            line,
            message: "expected `{` to open the bimodule block".into(),
        });
    }
    let mut left_actions = Vec::new();
    let mut right_actions = Vec::new();
    loop {
        let Some(entry) = iter.next() else {
            return Err(WorkspaceError::Syntax {
                line,
                message: "unterminated bimodule block".into(),
            });
        };
        if entry.text == "}" {
            break;
        }
        let toks: Vec<&str> = entry.text.split_whitespace().collect();
        let side = match toks.first().copied() {
            Some("left") => true,
            Some("right") => false,
            _ => {
                return Err(WorkspaceError::Syntax {
                    line: entry.line,
                    message: format!("unexpected entry {:?} in bimodule block", entry.text),
                })
            }
        };
        if toks.len() < 4 || toks[2] != "=" {
            return Err(WorkspaceError::Syntax {
                line: entry.line,
                message: "expected `left <i> = <entries>` or `right <i> = <entries>`".into(),
            });
        }
        let idx = parse_usize(toks[1], entry.line, "basis index")?;
        let entries =
            parse_scalars(field, entry.text.splitn(2, '=').nth(1).unwrap(), entry.line)?;
        if entries.len() != dim * dim {
            return Err(WorkspaceError::Dimension {
                line: entry.line,
                message: format!(
                    "expected {} action entries, found {}",
                    dim * dim,
                    entries.len()
                ),
            });
        }
        if side {
            left_actions.push((idx, entries));
        } else {
            right_actions.push((idx, entries));
        }
    }
    Ok((
        name,
        BimoduleDef::Explicit {
            left,
            right,
            dim,
            left_actions,
            right_actions,
        },
    ))
}

/// Serializes the workspace; `parse(serialize(parse(t)))` equals `parse(t)`.
pub fn serialize_workspace(ws: &WorkspaceFile) -> String {
    let mut out = String::new();
    out.push_str("format 1\n");
    out.push_str(&format!("field {}\n", ws.field));
    for (name, def, _) in &ws.algebras {
        match def {
            AlgebraDef::Explicit { dim, mult, unit } => {
                out.push_str(&format!("algebra {name} dim {dim} {{\n"));
                for ((i, j), coeffs) in mult {
                    out.push_str(&format!("  mult {i} {j} = {}\n", join_scalars(coeffs)));
                }
                out.push_str(&format!("  unit = {}\n", join_scalars(unit)));
                out.push_str("}\n");
            }
            AlgebraDef::MatrixAlgebra(n) => {
                out.push_str(&format!("algebra {name} = matrix({n})\n"));
            }
            AlgebraDef::Product(a, b) => {
                out.push_str(&format!("algebra {name} = product({a}, {b})\n"));
            }
            AlgebraDef::Subalgebra { of, gens } => {
                let gens_text: Vec<String> = gens.iter().map(|g| join_scalars(g)).collect();
                out.push_str(&format!(
                    "algebra {name} = subalgebra({of}; gens = {})\n",
                    gens_text.join(", ")
                ));
            }
        }
    }
    for (name, def, _) in &ws.bimodules {
        match def {
            BimoduleDef::Explicit {
                left,
                right,
                dim,
                left_actions,
                right_actions,
            } => {
                out.push_str(&format!("bimodule {name} over {left}, {right} dim {dim} {{\n"));
                for (i, entries) in left_actions {
                    out.push_str(&format!("  left {i} = {}\n", join_scalars(entries)));
                }
                for (i, entries) in right_actions {
                    out.push_str(&format!("  right {i} = {}\n", join_scalars(entries)));
                }
                out.push_str("}\n");
            }
            BimoduleDef::Free { algebra, rank } => {
                out.push_str(&format!("bimodule {name} = free({algebra}, {rank})\n"));
            }
            BimoduleDef::Dual(m) => {
                out.push_str(&format!("bimodule {name} = dual({m})\n"));
            }
            BimoduleDef::Opposite(m) => {
                out.push_str(&format!("bimodule {name} = opposite({m})\n"));
            }
        }
    }
    for task in &ws.tasks {
        out.push_str(&format!("task {}({})\n", task.kind.name(), task.arg));
    }
    out
}

fn join_scalars(v: &[Scalar]) -> String {
    v.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A workspace with every definition elaborated into core objects.
#[derive(Debug)]
pub struct ResolvedWorkspace {
    pub field: Field,
    pub algebras: BTreeMap<String, Algebra>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub tasks: Vec<Task>,
}

pub fn resolve_workspace(ws: &WorkspaceFile) -> WResult<ResolvedWorkspace> {
    let mut algebras: BTreeMap<String, Algebra> = BTreeMap::new();
    let mut bimodules: BTreeMap<String, Bimodule> = BTreeMap::new();
    for (name, def, line) in &ws.algebras {
        let line = *line;
        let algebra = match def {
            AlgebraDef::Explicit { dim, mult, unit } => {
                let zero = vec![ws.field.zero(); *dim];
                let mut constants = vec![vec![zero.clone(); *dim]; *dim];
                for ((i, j), coeffs) in mult {
                    constants[*i][*j] = coeffs.clone();
                }
                Algebra::new_unchecked(ws.field, Vec::new(), constants, unit.clone())
            }
            AlgebraDef::MatrixAlgebra(n) => Algebra::matrix_algebra(ws.field, *n),
            AlgebraDef::Product(a, b) => {
                let left = lookup(&algebras, a, line)?;
                let right = lookup(&algebras, b, line)?;
                Algebra::product(left, right).map_err(|e| WorkspaceError::Build {
                    line,
                    message: e.to_string(),
                })?
            }
            AlgebraDef::Subalgebra { of, gens } => {
                let parent = lookup(&algebras, of, line)?;
                for g in gens {
                    if g.len() != parent.dim {
                        return Err(WorkspaceError::Dimension {
                            line,
                            message: format!(
                                "generator length {} does not match algebra dim {}",
                                g.len(),
                                parent.dim
                            ),
                        });
                    }
                }
                let (sub, _) = parent
                    .subalgebra_generated(gens)
                    .map_err(|e| WorkspaceError::Build {
                        line,
                        message: e.to_string(),
                    })?;
                sub
            }
        };
        algebras.insert(name.clone(), algebra);
    }
    for (name, def, line) in &ws.bimodules {
        let line = *line;
        let module = match def {
            BimoduleDef::Explicit {
                left,
                right,
                dim,
                left_actions,
                right_actions,
            } => {
                let left_alg = lookup(&algebras, left, line)?.clone();
                let right_alg = lookup(&algebras, right, line)?.clone();
                let mut la = vec![Matrix::identity(ws.field, *dim); left_alg.dim];
                let mut ra = vec![Matrix::identity(ws.field, *dim); right_alg.dim];
                for (i, entries) in left_actions {
                    if *i >= left_alg.dim {
                        return Err(WorkspaceError::Dimension {
                            line,
                            message: format!("left action index {i} out of range"),
                        });
                    }
                    la[*i] = Matrix::new(ws.field, *dim, *dim, entries.clone());
                }
                for (i, entries) in right_actions {
                    if *i >= right_alg.dim {
                        return Err(WorkspaceError::Dimension {
                            line,
                            message: format!("right action index {i} out of range"),
                        });
                    }
                    ra[*i] = Matrix::new(ws.field, *dim, *dim, entries.clone());
                }
                Bimodule::new_unchecked(left_alg, right_alg, *dim, la, ra)
            }
            BimoduleDef::Free { algebra, rank } => {
                let a = lookup(&algebras, algebra, line)?;
                Bimodule::free(a, *rank)
            }
            BimoduleDef::Dual(m) => {
                let inner = lookup_bimodule(&bimodules, m, line)?;
                right_dual(inner)
                    .map_err(|e| WorkspaceError::Build {
                        line,
                        message: e.to_string(),
                    })?
                    .module
            }
            BimoduleDef::Opposite(m) => lookup_bimodule(&bimodules, m, line)?.opposite(),
        };
        bimodules.insert(name.clone(), module);
    }
    for task in &ws.tasks {
        if !bimodules.contains_key(&task.arg) && !algebras.contains_key(&task.arg) {
            return Err(WorkspaceError::Unresolved {
                line: task.line,
                name: task.arg.clone(),
            });
        }
        if task.kind != TaskKind::Validate && !bimodules.contains_key(&task.arg) {
            return Err(WorkspaceError::Build {
                line: task.line,
                message: format!("task {} needs a bimodule argument", task.kind.name()),
            });
        }
    }
    Ok(ResolvedWorkspace {
        field: ws.field,
        algebras,
        bimodules,
        tasks: ws.tasks.clone(),
    })
}

fn lookup<'a>(
    map: &'a BTreeMap<String, Algebra>,
    name: &str,
    line: usize,
) -> WResult<&'a Algebra> {
    map.get(name).ok_or_else(|| WorkspaceError::Unresolved {
        line,
        name: name.to_string(),
    })
}

fn lookup_bimodule<'a>(
    map: &'a BTreeMap<String, Bimodule>,
    name: &str,
    line: usize,
) -> WResult<&'a Bimodule> {
    map.get(name).ok_or_else(|| WorkspaceError::Unresolved {
        line,
        name: name.to_string(),
    })
}

/// Workspace files for the shipped example instances.
pub fn fixture_workspace(which: &str) -> Option<WorkspaceFile> {
    let field = Field::prime(2).ok()?;
    match which {
        "ex_free" => Some(WorkspaceFile {
            field,
            algebras: vec![("F".into(), AlgebraDef::MatrixAlgebra(1), 0)],
            bimodules: vec![(
                "Sigma".into(),
                BimoduleDef::Free {
                    algebra: "F".into(),
                    rank: 2,
                },
                0,
            )],
            tasks: vec![
                Task { kind: TaskKind::Validate, arg: "Sigma".into(), line: 0 },
                Task { kind: TaskKind::Coring, arg: "Sigma".into(), line: 0 },
                Task { kind: TaskKind::Theorems, arg: "Sigma".into(), line: 0 },
            ],
        }),
        "ex_sweedler" => {
            let m2 = Algebra::matrix_algebra(field, 2);
            let span = Subspace::from_span(
                field,
                4,
                &[m2.basis_element(0), m2.basis_element(3)],
            );
            let (_, incl) = m2.subalgebra(&span).ok()?;
            let sigma = Bimodule::regular(&m2).restrict_left(&incl).ok()?;
            Some(WorkspaceFile {
                field,
                algebras: vec![
                    ("M".into(), AlgebraDef::MatrixAlgebra(2), 0),
                    (
                        "D".into(),
                        AlgebraDef::Subalgebra {
                            of: "M".into(),
                            gens: vec![
                                m2.unit.clone(),
                                m2.basis_element(3),
                            ],
                        },
                        0,
                    ),
                ],
                bimodules: vec![(
                    "Sigma".into(),
                    BimoduleDef::Explicit {
                        left: "D".into(),
                        right: "M".into(),
                        dim: 4,
                        left_actions: sigma
                            .left_action
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (i, m.entries().to_vec()))
                            .collect(),
                        right_actions: sigma
                            .right_action
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (i, m.entries().to_vec()))
                            .collect(),
                    },
                    0,
                )],
                tasks: vec![
                    Task { kind: TaskKind::Validate, arg: "Sigma".into(), line: 0 },
                    Task { kind: TaskKind::Coring, arg: "Sigma".into(), line: 0 },
                    Task { kind: TaskKind::Adjunction, arg: "Sigma".into(), line: 0 },
                    Task { kind: TaskKind::Theorems, arg: "Sigma".into(), line: 0 },
                ],
            })
        }
        "ex_sep" => {
            let k = Algebra::ground(field);
            let a = Algebra::product(&k, &k).ok()?;
            let unit_map =
                AlgebraMorphism::new(k.clone(), a.clone(), Matrix::from_col(field, &a.unit))
                    .ok()?;
            let sigma = Bimodule::regular(&a).restrict_left(&unit_map).ok()?;
            Some(WorkspaceFile {
                field,
                algebras: vec![
                    ("F".into(), AlgebraDef::MatrixAlgebra(1), 0),
                    ("A2".into(), AlgebraDef::Product("F".into(), "F".into()), 0),
                ],
                bimodules: vec![(
                    "Sigma".into(),
                    BimoduleDef::Explicit {
                        left: "F".into(),
                        right: "A2".into(),
                        dim: 2,
                        left_actions: sigma
                            .left_action
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (i, m.entries().to_vec()))
                            .collect(),
                        right_actions: sigma
                            .right_action
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (i, m.entries().to_vec()))
                            .collect(),
                    },
                    0,
                )],
                tasks: vec![
                    Task { kind: TaskKind::Validate, arg: "Sigma".into(), line: 0 },
                    Task { kind: TaskKind::Separability, arg: "Sigma".into(), line: 0 },
                    Task { kind: TaskKind::Theorems, arg: "Sigma".into(), line: 0 },
                ],
            })
        }
        _ => None,
    }
}

/// Structural equality modulo source line numbers, for round-trip tests.
pub fn workspace_eq_modulo_lines(a: &WorkspaceFile, b: &WorkspaceFile) -> bool {
    if a.field != b.field || a.tasks.len() != b.tasks.len() {
        return false;
    }
    let defs_a: Vec<(&String, &AlgebraDef)> =
        a.algebras.iter().map(|(n, d, _)| (n, d)).collect();
    let defs_b: Vec<(&String, &AlgebraDef)> =
        b.algebras.iter().map(|(n, d, _)| (n, d)).collect();
    if defs_a != defs_b {
        return false;
    }
    let mods_a: Vec<(&String, &BimoduleDef)> =
        a.bimodules.iter().map(|(n, d, _)| (n, d)).collect();
    let mods_b: Vec<(&String, &BimoduleDef)> =
        b.bimodules.iter().map(|(n, d, _)| (n, d)).collect();
    if mods_a != mods_b {
        return false;
    }
    a.tasks
        .iter()
        .zip(&b.tasks)
        .all(|(x, y)| x.kind == y.kind && x.arg == y.arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_minimal_file() {
        let text = "format 1\nfield F2\nalgebra F = matrix(1)\nbimodule S = free(F, 2)\ntask theorems(S)\n";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.algebras.len(), 1);
        assert_eq!(ws.bimodules.len(), 1);
        assert_eq!(ws.tasks.len(), 1);
        assert_eq!(ws.tasks[0].kind, TaskKind::Theorems);
    }

    #[test]
    fn empty_body_is_a_valid_workspace() {
        let ws = parse_workspace("format 1\nfield QQ\n").unwrap();
        assert!(ws.tasks.is_empty());
        assert!(ws.algebras.is_empty());
    }

    #[test]
    fn missing_header_is_a_syntax_error() {
        let err = parse_workspace("field F2\n").unwrap_err();
        assert!(matches!(err, WorkspaceError::Syntax { line: 1, .. }));
    }

    #[test]
    fn mult_index_out_of_range_is_a_dimension_error_at_the_line() {
        let text = "format 1\nfield F2\nalgebra A dim 4 {\n  mult 0 5 = 0 0 0 0\n  unit = 1 0 0 0\n}\n";
        let err = parse_workspace(text).unwrap_err();
        match err {
            WorkspaceError::Dimension { line, .. } => assert_eq!(line, 4),
            other => panic!("expected a dimension error, got {other}"),
        }
    }

    #[test]
    fn unresolved_names_carry_their_line() {
        let text = "format 1\nfield F2\nbimodule S = free(NoSuch, 2)\n";
        let ws = parse_workspace(text).unwrap();
        let err = resolve_workspace(&ws).unwrap_err();
        match err {
            WorkspaceError::Unresolved { line, name } => {
                assert_eq!(line, 3);
                assert_eq!(name, "NoSuch");
            }
            other => panic!("expected unresolved, got {other}"),
        }
    }

    #[test]
    fn round_trip_is_identity_on_all_fixtures() {
        for which in ["ex_free", "ex_sweedler", "ex_sep"] {
            let ws = fixture_workspace(which).unwrap();
            let text = serialize_workspace(&ws);
            let reparsed = parse_workspace(&text).unwrap();
            assert!(workspace_eq_modulo_lines(&ws, &reparsed), "{which}");
            let again = parse_workspace(&serialize_workspace(&reparsed)).unwrap();
            assert!(workspace_eq_modulo_lines(&reparsed, &again), "{which}");
        }
    }

    #[test]
    fn fixture_files_resolve_to_the_canonical_fixtures() {
        use corings::fixtures;
        let pairs = [
            ("ex_free", fixtures::ex_free()),
            ("ex_sweedler", fixtures::ex_sweedler()),
            ("ex_sep", fixtures::ex_sep()),
        ];
        for (which, fixture) in pairs {
            let ws = fixture_workspace(which).unwrap();
            let resolved = resolve_workspace(&ws).unwrap();
            let sigma = resolved.bimodules.get("Sigma").unwrap();
            assert_eq!(sigma, &fixture.sigma, "{which}");
        }
    }

    #[test]
    fn comments_and_semicolons_are_accepted() {
        let text = "format 1 # header\nfield F3\nalgebra F = matrix(1); bimodule S = free(F, 1)\ntask validate(S) # trailing\n";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.bimodules.len(), 1);
    }

    #[test]
    fn explicit_algebra_blocks_resolve() {
        let text = "format 1\nfield F2\nalgebra A dim 2 {\n  mult 0 0 = 1 0\n  mult 0 1 = 0 1\n  mult 1 0 = 0 1\n  mult 1 1 = 0 0\n  unit = 1 0\n}\nbimodule S = free(A, 1)\ntask validate(S)\n";
        let ws = parse_workspace(text).unwrap();
        let resolved = resolve_workspace(&ws).unwrap();
        let a = resolved.algebras.get("A").unwrap();
        // Dual numbers over F_2: valid.
        assert!(a.validate().ok());
    }
}
