//! Expressions, presentation and identity files, result documents and the
//! on-disk component cache.

mod disk_cache;
mod document;
mod expr;
mod files;

pub use disk_cache::DiskCache;
pub use document::{Dimension, Item, OutputFormat, PresentationRef, ResultDocument, Section, Verdict, SCHEMA};
pub use expr::{parse_expr, render, Format};
pub use files::{load_presentation, parse_identity_file, resolve_presentation, IdentityLine, PresentationFile, RelationEntry};
