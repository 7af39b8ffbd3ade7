//! Line-oriented instance files.
//!
//! An instance always starts with a `semigroup` block and may carry one
//! congruence (explicit partition or generating pairs), one action block,
//! and one subset line. `#` starts a comment anywhere on a line; blank
//! lines are ignored. Parsing an emitted instance returns the same value.
//!
//! ```text
//! semigroup 3         # Cayley table, one row per line
//! 0 0 0
//! 0 1 0
//! 0 0 2
//! names 0 e f
//! congruence-gen 1    # that many "a b" lines follow
//! 0 1
//! action 3            # ground size; one row per element, "-" = undefined
//! 0 - -
//! 0 1 -
//! 0 - 2
//! subset 0 1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::action::{ActionTarget, PartialAction};
use crate::congruence::Congruence;
use crate::pbij::PartialBijection;
use crate::semigroup::FiniteInverseSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceBlock {
    /// Class id per element.
    Partition(Vec<usize>),
    /// Generating pairs.
    Generators(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionBlock {
    pub ground: usize,
    /// One row per semigroup element; `None` marks an undefined point.
    pub rows: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    pub names: Option<Vec<String>>,
    pub congruence: Option<CongruenceBlock>,
    pub action: Option<ActionBlock>,
    pub subset: Option<Vec<usize>>,
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let stripped = match raw.find('#') {
                    Some(h) => &raw[..h],
                    None => raw,
                };
                let tokens: Vec<&str> = stripped.split_whitespace().collect();
                if tokens.is_empty() {
                    None
                } else {
                    Some((i + 1, tokens))
                }
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next().ok_or_else(|| ParseError {
            line: self
                .items
                .last()
                .map(|&(l, _)| l + 1)
                .unwrap_or(1),
            reason: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError {
        line,
        reason: format!("expected {what}, got {token:?}"),
    })
}

fn parse_row(
    tokens: &[&str],
    line: usize,
    expected: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>, ParseError> {
    if tokens.len() != expected {
        return Err(ParseError {
            line,
            reason: format!("expected {expected} {what} entries, got {}", tokens.len()),
        });
    }
    tokens
        .iter()
        .map(|t| {
            let v = parse_usize(t, line, what)?;
            if v >= bound {
                return Err(ParseError {
                    line,
                    reason: format!("{what} entry {v} out of range, must be below {bound}"),
                });
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_instance_str(text: &str) -> Result<InstanceFile, ParseError> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect("a semigroup header")?;
    if header[0] != "semigroup" {
        return Err(ParseError {
            line,
            reason: format!("instance must start with \"semigroup <n>\", got {:?}", header[0]),
        });
    }
    if header.len() != 2 {
        return Err(ParseError {
            line,
            reason: "semigroup header takes exactly one size argument".into(),
        });
    }
    let n = parse_usize(header[1], line, "semigroup size")?;
    if n == 0 {
        return Err(ParseError {
            line,
            reason: "semigroup size must be positive".into(),
        });
    }
    // No with_capacity here: n is raw input and must not drive an allocation
    // before the rows that justify it have been read.
    let mut table = Vec::new();
    for _ in 0..n {
        let (line, tokens) = lines.expect("a table row")?;
        table.push(parse_row(&tokens, line, n, n, "table")?);
    }
    let mut out = InstanceFile {
        n,
        table,
        names: None,
        congruence: None,
        action: None,
        subset: None,
    };
    let mut subset_line = 0;
    while let Some((line, tokens)) = lines.next() {
        let keyword = tokens[0];
        match keyword {
            "names" => {
                if out.names.is_some() {
                    return Err(ParseError {
                        line,
                        reason: "duplicate names block".into(),
                    });
                }
                if tokens.len() != n + 1 {
                    return Err(ParseError {
                        line,
                        reason: format!("expected {n} names, got {}", tokens.len() - 1),
                    });
                }
                out.names = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "congruence" => {
                if out.congruence.is_some() {
                    return Err(ParseError {
                        line,
                        reason: "duplicate congruence block".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(ParseError {
                        line,
                        reason: "congruence header takes exactly one class count".into(),
                    });
                }
                let k = parse_usize(tokens[1], line, "class count")?;
                if k == 0 || k > n {
                    return Err(ParseError {
                        line,
                        reason: format!("class count {k} out of range 1..={n}"),
                    });
                }
                let (row_line, row) = lines.expect("a class row")?;
                let classes = parse_row(&row, row_line, n, k, "class")?;
                for c in 0..k {
                    if !classes.contains(&c) {
                        return Err(ParseError {
                            line: row_line,
                            reason: format!("class {c} of {k} is never used"),
                        });
                    }
                }
                out.congruence = Some(CongruenceBlock::Partition(classes));
            }
            "congruence-gen" => {
                if out.congruence.is_some() {
                    return Err(ParseError {
                        line,
                        reason: "duplicate congruence block".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(ParseError {
                        line,
                        reason: "congruence-gen header takes exactly one pair count".into(),
                    });
                }
                let p = parse_usize(tokens[1], line, "pair count")?;
                // Same rule as the table: p is raw input, allocate lazily.
                let mut pairs = Vec::new();
                for _ in 0..p {
                    let (pair_line, pair) = lines.expect("a generating pair")?;
                    let row = parse_row(&pair, pair_line, 2, n, "pair")?;
                    pairs.push((row[0], row[1]));
                }
                out.congruence = Some(CongruenceBlock::Generators(pairs));
            }
            "action" => {
                if out.action.is_some() {
                    return Err(ParseError {
                        line,
                        reason: "duplicate action block".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(ParseError {
                        line,
                        reason: "action header takes exactly one ground size".into(),
                    });
                }
                let ground = parse_usize(tokens[1], line, "ground size")?;
                if ground == 0 {
                    return Err(ParseError {
                        line,
                        reason: "ground size must be positive".into(),
                    });
                }
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let (row_line, row) = lines.expect("an action row")?;
                    if row.len() != ground {
                        return Err(ParseError {
                            line: row_line,
                            reason: format!(
                                "expected {ground} action entries, got {}",
                                row.len()
                            ),
                        });
                    }
                    let parsed: Result<Vec<Option<usize>>, ParseError> = row
                        .iter()
                        .map(|t| {
                            if *t == "-" {
                                Ok(None)
                            } else {
                                let v = parse_usize(t, row_line, "action image")?;
                                if v >= ground {
                                    return Err(ParseError {
                                        line: row_line,
                                        reason: format!(
                                            "action image {v} out of range, must be below {ground}"
                                        ),
                                    });
                                }
                                Ok(Some(v))
                            }
                        })
                        .collect();
                    rows.push(parsed?);
                }
                out.action = Some(ActionBlock { ground, rows });
            }
            "subset" => {
                if out.subset.is_some() {
                    return Err(ParseError {
                        line,
                        reason: "duplicate subset line".into(),
                    });
                }
                let mut points = Vec::new();
                for t in &tokens[1..] {
                    let v = parse_usize(t, line, "subset point")?;
                    if points.contains(&v) {
                        return Err(ParseError {
                            line,
                            reason: format!("subset repeats point {v}"),
                        });
                    }
                    points.push(v);
                }
                subset_line = line;
                out.subset = Some(points);
            }
            other => {
                return Err(ParseError {
                    line,
                    reason: format!("unknown keyword {other:?}"),
                });
            }
        }
    }
    // Checked after all blocks so that the bound does not depend on whether
    // the subset line precedes or follows the action block.
    if let Some(points) = &out.subset {
        let bound = out.action.as_ref().map_or(n, |a| a.ground);
        for &v in points {
            if v >= bound {
                return Err(ParseError {
                    line: subset_line,
                    reason: format!("subset point {v} out of range, must be below {bound}"),
                });
            }
        }
    }
    Ok(out)
}

pub fn parse_instance(path: &Path) -> Result<InstanceFile, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_instance_str(&text)?)
}

pub fn emit_instance(f: &InstanceFile) -> String {
    let mut out = String::new();
    writeln!(out, "semigroup {}", f.n).unwrap();
    for row in &f.table {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    if let Some(names) = &f.names {
        writeln!(out, "names {}", names.join(" ")).unwrap();
    }
    match &f.congruence {
        Some(CongruenceBlock::Partition(classes)) => {
            let k = classes.iter().copied().max().unwrap_or(0) + 1;
            writeln!(out, "congruence {k}").unwrap();
            let cells: Vec<String> = classes.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        Some(CongruenceBlock::Generators(pairs)) => {
            writeln!(out, "congruence-gen {}", pairs.len()).unwrap();
            for (a, b) in pairs {
                writeln!(out, "{a} {b}").unwrap();
            }
        }
        None => {}
    }
    if let Some(action) = &f.action {
        writeln!(out, "action {}", action.ground).unwrap();
        for row in &action.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Some(x) => x.to_string(),
                    None => "-".to_string(),
                })
                .collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    }
    if let Some(points) = &f.subset {
        let cells: Vec<String> = points.iter().map(|v| v.to_string()).collect();
        writeln!(out, "subset {}", cells.join(" ")).unwrap();
    }
    out
}

/// Semantic content of an instance: validated semigroup, congruence and
/// action. The action is validated over the bare ground set; callers that
/// need semilattice structure retarget explicitly.
#[derive(Debug, Clone)]
pub struct ResolvedInstance {
    pub semigroup: FiniteInverseSemigroup,
    pub congruence: Option<Congruence>,
    pub action: Option<PartialAction>,
    pub subset: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("semigroup: {0}")]
    Semigroup(#[from] crate::semigroup::SemigroupError),
    #[error("congruence: {0}")]
    Congruence(#[from] crate::congruence::CongruenceError),
    #[error("action: {0}")]
    Action(#[from] crate::action::ActionError),
    #[error("action: {0}")]
    Maps(#[from] crate::pbij::PbijError),
}

pub fn resolve(f: &InstanceFile) -> Result<ResolvedInstance, ResolveError> {
    let semigroup = FiniteInverseSemigroup::validate(&f.table, f.names.clone())?;
    let congruence = match &f.congruence {
        Some(CongruenceBlock::Partition(classes)) => {
            Some(Congruence::validate(&semigroup, classes)?)
        }
        Some(CongruenceBlock::Generators(pairs)) => {
            Some(Congruence::generated_by(&semigroup, pairs)?)
        }
        None => None,
    };
    let action = match &f.action {
        Some(block) => {
            let maps: Result<Vec<PartialBijection>, crate::pbij::PbijError> = block
                .rows
                .iter()
                .map(|row| PartialBijection::new(block.ground, row.clone()))
                .collect();
            Some(PartialAction::validate(
                semigroup.clone(),
                maps?,
                ActionTarget::Set,
            )?)
        }
        None => None,
    };
    Ok(ResolvedInstance {
        semigroup,
        congruence,
        action,
        subset: f.subset.clone(),
    })
}
