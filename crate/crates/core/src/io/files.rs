//! Presentation files (TOML) and identity files (one expression per line).
//!
//! ```toml
//! name = "nov"
//! ops = ["m"]
//!
//! [[relations]]
//! arity = 3
//! expr = "m(m(x1,x2),x3) - m(m(x1,x3),x2)"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::freeop::Poly;
use crate::presentation::{builtin, OperadPresentation, BUILTIN_NAMES};

use super::parse_expr;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub name: String,
    pub ops: Vec<String>,
    #[serde(default)]
    pub relations: Vec<RelationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub arity: usize,
    pub expr: String,
}

fn valid_op_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let is_var = name.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !is_var
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::PresentationFile(e.to_string()))
    }

    pub fn to_presentation(&self) -> Result<OperadPresentation> {
        for (i, op) in self.ops.iter().enumerate() {
            if !valid_op_name(op) {
                return Err(Error::PresentationFile(format!("`{op}` is not a valid operation name")));
            }
            if self.ops[..i].contains(op) {
                return Err(Error::PresentationFile(format!("operation `{op}` declared twice")));
            }
        }
        let (mut rel2, mut rel3) = (Vec::new(), Vec::new());
        for (i, r) in self.relations.iter().enumerate() {
            let target = match r.arity {
                2 => &mut rel2,
                3 => &mut rel3,
                other => {
                    return Err(Error::PresentationFile(format!(
                        "relation {}: arity must be 2 or 3, found {other}",
                        i + 1
                    )))
                }
            };
            let p = parse_expr(&r.expr, &self.ops, Some(r.arity))
                .map_err(|e| Error::PresentationFile(format!("relation {}: {e}", i + 1)))?;
            target.push(p);
        }
        OperadPresentation::new(self.name.clone(), self.ops.clone(), rel2, rel3)
    }
}

pub fn load_presentation(path: &Path) -> Result<OperadPresentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PresentationFile::parse(&text)?.to_presentation()
}

/// A builtin name, or otherwise a path to a presentation file.
pub fn resolve_presentation(arg: &str) -> Result<OperadPresentation> {
    if BUILTIN_NAMES.contains(&arg) {
        return builtin(arg);
    }
    let path = Path::new(arg);
    if path.exists() {
        load_presentation(path)
    } else {
        Err(Error::UnknownPresentation(arg.to_string()))
    }
}

/// One parsed line of an identity file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityLine {
    pub line: usize,
    pub source: String,
    pub poly: Poly,
}

/// Parses an identity file: one expression per line; blank lines and lines
/// starting with `#` are skipped. Errors name the offending line.
pub fn parse_identity_file(text: &str, ops: &[String]) -> Result<Vec<IdentityLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let src = raw.trim();
        if src.is_empty() || src.starts_with('#') {
            continue;
        }
        let poly = parse_expr(src, ops, None).map_err(|e| match e {
            Error::Parse(p) => Error::Parse(crate::ParseError::new(p.position, format!("line {}: {}", i + 1, p.message))),
            other => other,
        })?;
        out.push(IdentityLine {
            line: i + 1,
            source: src.to_string(),
            poly,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOV: &str = r#"
name = "novikov"
ops = ["m"]

[[relations]]
arity = 3
expr = "m(m(x1,x2),x3) - m(x1,m(x2,x3)) - m(m(x2,x1),x3) + m(x2,m(x1,x3))"

[[relations]]
arity = 3
expr = "m(m(x1,x2),x3) - m(m(x1,x3),x2)"
"#;

    #[test]
    fn file_matches_builtin() {
        let p = PresentationFile::parse(NOV).unwrap().to_presentation().unwrap();
        assert_eq!(p.name(), "novikov");
        assert_eq!(p.content_hash(), builtin("nov").unwrap().content_hash());
    }

    #[test]
    fn bad_files() {
        let wrong_arity = NOV.replacen("arity = 3", "arity = 2", 1);
        assert!(PresentationFile::parse(&wrong_arity).unwrap().to_presentation().is_err());
        let bad_op = NOV.replace(r#"ops = ["m"]"#, r#"ops = ["x1"]"#);
        assert!(PresentationFile::parse(&bad_op).unwrap().to_presentation().is_err());
        assert!(PresentationFile::parse("name = 3").is_err());
        assert!(PresentationFile::parse(&format!("{NOV}\nextra = 1")).is_err());
    }

    #[test]
    fn resolves_builtins_and_reports_unknown() {
        assert_eq!(resolve_presentation("as").unwrap(), builtin("as").unwrap());
        assert!(matches!(resolve_presentation("no-such-thing"), Err(Error::UnknownPresentation(_))));
    }

    #[test]
    fn identity_file_lines() {
        let ops = vec!["prec".to_string(), "succ".to_string()];
        let text = "# comment\n\nprec(prec(x1,x2),x3) - prec(prec(x1,x3),x2)\n  prec(x1,x2)\n";
        let lines = parse_identity_file(text, &ops).unwrap();
        assert_eq!(lines.iter().map(|l| l.line).collect::<Vec<_>>(), vec![3, 4]);
        let err = parse_identity_file("prec(x1,x1)", &ops).unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}
