//! The single result document each command writes to standard output.

use serde::Serialize;

use crate::freeop::Poly;

use super::{render, Format};

pub const SCHEMA: &str = "derived-identities/result/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationRef {
    pub name: String,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimension {
    pub name: String,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub expr: String,
    #[serde(skip)]
    pub latex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub alphabet: Vec<String>,
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub schema: String,
    pub tool: String,
    pub command: String,
    pub presentations: Vec<PresentationRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
    pub lambdas: Vec<String>,
    pub dimensions: Vec<Dimension>,
    pub sections: Vec<Section>,
    pub verdicts: Vec<Verdict>,
}

impl ResultDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ResultDocument {
            schema: SCHEMA.to_string(),
            tool: format!("derived-identities {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            presentations: Vec::new(),
            arity: None,
            lambdas: Vec::new(),
            dimensions: Vec::new(),
            sections: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn presentation(&mut self, name: &str, hash: &str) -> &mut Self {
        self.presentations.push(PresentationRef {
            name: name.to_string(),
            hash: format!("sha256:{hash}"),
        });
        self
    }

    pub fn dimension(&mut self, name: &str, value: usize) -> &mut Self {
        self.dimensions.push(Dimension {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn section(&mut self, title: &str, alphabet: &[String], polys: &[Poly]) -> &mut Self {
        self.sections.push(Section {
            title: title.to_string(),
            alphabet: alphabet.to_vec(),
            items: polys
                .iter()
                .map(|p| Item {
                    expr: render(p, alphabet, Format::Text),
                    latex: render(p, alphabet, Format::Latex),
                })
                .collect(),
        });
        self
    }

    pub fn verdict(&mut self, subject: &str, lambda: Option<String>, holds: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            subject: subject.to_string(),
            lambda,
            holds,
        });
        self
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.text(),
            OutputFormat::Latex => self.latex(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("document serializes");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        let mut out = format!("# {}\ntool: {}\ncommand: {}\n", self.schema, self.tool, self.command);
        for p in &self.presentations {
            out.push_str(&format!("presentation: {} {}\n", p.name, p.hash));
        }
        if let Some(n) = self.arity {
            out.push_str(&format!("arity: {n}\n"));
        }
        for l in &self.lambdas {
            out.push_str(&format!("lambda: {l}\n"));
        }
        for d in &self.dimensions {
            out.push_str(&format!("dim {}: {}\n", d.name, d.value));
        }
        for s in &self.sections {
            out.push_str(&format!("section {} ({}):\n", s.title, s.items.len()));
            for item in &s.items {
                out.push_str(&format!("  {}\n", item.expr));
            }
        }
        for v in &self.verdicts {
            match &v.lambda {
                Some(l) => out.push_str(&format!("verdict {} [lambda={l}]: {}\n", v.subject, v.holds)),
                None => out.push_str(&format!("verdict {}: {}\n", v.subject, v.holds)),
            }
        }
        out
    }

    fn latex(&self) -> String {
        let esc = |s: &str| s.replace('_', "\\_");
        let mut out = format!("% {}\n% tool: {}\n% command: {}\n", self.schema, self.tool, self.command);
        for p in &self.presentations {
            out.push_str(&format!("% presentation: {} {}\n", p.name, p.hash));
        }
        if let Some(n) = self.arity {
            out.push_str(&format!("% arity: {n}\n"));
        }
        for l in &self.lambdas {
            out.push_str(&format!("% lambda: {l}\n"));
        }
        if !self.dimensions.is_empty() {
            out.push_str("\\begin{tabular}{lr}\n");
            for d in &self.dimensions {
                out.push_str(&format!("{} & {} \\\\\n", esc(&d.name), d.value));
            }
            out.push_str("\\end{tabular}\n");
        }
        for s in &self.sections {
            out.push_str(&format!("\\paragraph{{{}}}\n", esc(&s.title)));
            if s.items.is_empty() {
                out.push_str("None.\n");
                continue;
            }
            out.push_str("\\begin{gather*}\n");
            for (i, item) in s.items.iter().enumerate() {
                let sep = if i + 1 < s.items.len() { " \\\\" } else { "" };
                out.push_str(&format!("  {} = 0{sep}\n", item.latex));
            }
            out.push_str("\\end{gather*}\n");
        }
        if !self.verdicts.is_empty() {
            out.push_str("\\begin{itemize}\n");
            for v in &self.verdicts {
                let lambda = v.lambda.as_ref().map(|l| format!(" ($\\lambda = {l}$)")).unwrap_or_default();
                out.push_str(&format!("  \\item {}{lambda}: {}\n", esc(&v.subject), v.holds));
            }
            out.push_str("\\end{itemize}\n");
        }
        out
    }
}
