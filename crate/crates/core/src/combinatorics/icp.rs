//! The ICP text format.
//!
//! ```text
//! name P1
//! faces 4
//! edge 0 1 3        # faces i < j, label m in {2,3,4,6}
//! cusp 0 1 2        # 3 or 4 faces in cyclic order
//! ```
//!
//! `#` starts a comment; blank lines are ignored; `edge` and `cusp` lines may
//! come in any order after the two header lines.

use super::model::{Builder, ModelError, PolyhedronCombinatorics};

fn syntax(msg: impl Into<String>) -> ModelError {
    ModelError::Syntax(msg.into())
}

fn parse_ints(fields: &[&str]) -> Result<Vec<usize>, ModelError> {
    fields
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| syntax(format!("expected a nonnegative integer, found `{s}`")))
        })
        .collect()
}

pub fn parse_icp(text: &str) -> Result<PolyhedronCombinatorics, ModelError> {
    let mut name: Option<String> = None;
    let mut builder: Option<Builder> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = fields.split_first() else {
            continue;
        };
        let result: Result<(), ModelError> = (|| {
            match keyword {
                "name" => {
                    if name.is_some() {
                        return Err(syntax("`name` given twice"));
                    }
                    let [id] = args else {
                        return Err(syntax("`name` takes exactly one identifier"));
                    };
                    name = Some((*id).to_string());
                }
                "faces" => {
                    let Some(n) = name.as_ref() else {
                        return Err(syntax("`faces` must follow the `name` line"));
                    };
                    if builder.is_some() {
                        return Err(syntax("`faces` given twice"));
                    }
                    let [count] = parse_ints(args)?[..] else {
                        return Err(syntax("`faces` takes exactly one integer"));
                    };
                    builder = Some(Builder::new(n.clone(), count)?);
                }
                "edge" => {
                    let b = builder
                        .as_mut()
                        .ok_or_else(|| syntax("`edge` before the `faces` line"))?;
                    let [i, j, m] = parse_ints(args)?[..] else {
                        return Err(syntax("`edge` takes three integers: i j m"));
                    };
                    if i >= j {
                        return Err(syntax(format!("edge faces must satisfy i < j, found {i} {j}")));
                    }
                    let m = u32::try_from(m).map_err(|_| ModelError::InvalidLabel(u32::MAX))?;
                    b.add_edge(i, j, m)?;
                }
                "cusp" => {
                    let b = builder
                        .as_mut()
                        .ok_or_else(|| syntax("`cusp` before the `faces` line"))?;
                    b.add_cusp(parse_ints(args)?)?;
                }
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            }
            Ok(())
        })();
        result.map_err(|e| e.at_line(line_no))?;
    }

    match (name, builder) {
        (_, Some(b)) => Ok(b.build()),
        (None, None) => Err(syntax("missing `name` line")),
        (Some(_), None) => Err(syntax("missing `faces` line")),
    }
}
