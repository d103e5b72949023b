//! The `derid` command line.
//!
//! Exit codes: `0` success, `1` a mathematical check failed, `2` bad usage
//! or input. The result document goes to standard output; diagnostics,
//! cache warnings and `--verbose` timings go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::freeop::Poly;
use crate::hat::{check_h_novikov, psi_homomorphism_report};
use crate::io::{parse_identity_file, resolve_presentation, DiskCache, OutputFormat, ResultDocument};
use crate::linalg::Rational;
use crate::oracle::{derived_identity_space, is_derived_identity};
use crate::presentation::{builtin, ComponentCache, OperadPresentation};
use crate::products::{white_relations, PairAlphabet, WhiteResult};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "derid", version, about = "Derived identities of differential algebras")]
struct Cli {
    /// Output format of the result document.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    /// Directory for persisted components.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Report cache use and timings on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, normal monomials and relations of P(n).
    Component {
        presentation: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Relations of the white product P ∘ Q at arity n.
    White {
        p: String,
        q: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Derived identities of P at arity n, i.e. relations of P ∘ Nov.
    Derived {
        p: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Decide whether each identity in a file is a derived identity of P.
    Check {
        p: String,
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Compare the differential expansion with the white-product kernel.
    Crosscheck {
        p: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Check the divided-power algebra and the embedding ψ on random samples.
    HatTest {
        #[arg(long, default_value_t = 4)]
        max_order: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

struct Context {
    cache: ComponentCache,
    disk: Option<Arc<DiskCache>>,
}

fn parse_lambdas(raw: &[String]) -> Result<Vec<Rational>> {
    if raw.is_empty() {
        return Ok(vec![Rational::from_integer(0.into())]);
    }
    raw.iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| Error::Parse(crate::ParseError::new(0, format!("`{s}` is not a rational number"))))
        })
        .collect()
}

fn lambda_list(raw: &[String]) -> String {
    raw.iter().map(|l| format!(" --lambda {l}")).collect()
}

fn describe_white(doc: &mut ResultDocument, r: &WhiteResult) -> Result<()> {
    let (dp, dq) = r.component_dims();
    doc.presentation(r.p_name(), r.p_hash())
        .presentation(r.q_name(), r.q_hash())
        .dimension("pair_monomials", r.basis().len())
        .dimension("p_component", dp)
        .dimension("q_component", dq)
        .dimension("image", r.image_dim())
        .dimension("kernel", r.relations().dim())
        .dimension("induced", r.induced().dim())
        .dimension("relations", r.essential().dim())
        .section("relations", r.alphabet().names(), &r.essential_polys()?);
    doc.arity = Some(r.arity());
    Ok(())
}

fn derived_names(p: &OperadPresentation) -> Result<Vec<String>> {
    Ok(PairAlphabet::new(p.ops(), &["m".to_string()])?.names().to_vec())
}

fn execute(cli: &Cli, ctx: &Context) -> Result<ResultDocument> {
    match &cli.command {
        Command::Component { presentation, n } => {
            let p = resolve_presentation(presentation)?;
            let c = ctx.cache.component(&p, *n)?;
            let mut doc = ResultDocument::new(format!("component {presentation} -n {n}"));
            let normal = c
                .normal_basis()
                .iter()
                .map(|&j| Poly::monomial(c.basis().monomial_at(j)?, p.alphabet()))
                .collect::<Result<Vec<_>>>()?;
            let relations = c
                .relations()
                .rows()
                .iter()
                .map(|r| Poly::from_sparse(c.basis(), r))
                .collect::<Result<Vec<_>>>()?;
            doc.presentation(p.name(), &p.content_hash())
                .dimension("monomials", c.basis().len())
                .dimension("relations", c.relations().dim())
                .dimension("component", c.dim())
                .section("normal_monomials", p.ops(), &normal)
                .section("relations", p.ops(), &relations);
            doc.arity = Some(*n);
            Ok(doc)
        }
        Command::White { p, q, n } => {
            let (pp, qq) = (resolve_presentation(p)?, resolve_presentation(q)?);
            let r = white_relations(&ctx.cache, &pp, &qq, *n)?;
            let mut doc = ResultDocument::new(format!("white {p} {q} -n {n}"));
            describe_white(&mut doc, &r)?;
            Ok(doc)
        }
        Command::Derived { p, n } => {
            let pp = resolve_presentation(p)?;
            let r = white_relations(&ctx.cache, &pp, &builtin("nov")?, *n)?;
            let mut doc = ResultDocument::new(format!("derived {p} -n {n}"));
            describe_white(&mut doc, &r)?;
            Ok(doc)
        }
        Command::Check { p, file, lambda } => {
            let pp = resolve_presentation(p)?;
            let lambdas = parse_lambdas(lambda)?;
            let names = derived_names(&pp)?;
            let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let lines = parse_identity_file(&text, &names)?;
            let mut doc = ResultDocument::new(format!("check {p} -f {}{}", file.display(), lambda_list(lambda)));
            doc.presentation(pp.name(), &pp.content_hash());
            doc.lambdas = lambdas.iter().map(|l| l.to_string()).collect();
            doc.dimension("identities", lines.len());
            let polys: Vec<Poly> = lines.iter().map(|l| l.poly.clone()).collect();
            doc.section("identities", &names, &polys);
            for l in &lines {
                for lam in &lambdas {
                    let holds = is_derived_identity(&ctx.cache, &pp, &l.poly, lam)?;
                    doc.verdict(&format!("line {}", l.line), Some(lam.to_string()), holds);
                }
            }
            Ok(doc)
        }
        Command::Crosscheck { p, n, lambda } => {
            let pp = resolve_presentation(p)?;
            let lambdas = parse_lambdas(lambda)?;
            let white = white_relations(&ctx.cache, &pp, &builtin("nov")?, *n)?;
            let mut doc = ResultDocument::new(format!("crosscheck {p} -n {n}{}", lambda_list(lambda)));
            doc.presentation(pp.name(), &pp.content_hash());
            doc.arity = Some(*n);
            doc.lambdas = lambdas.iter().map(|l| l.to_string()).collect();
            doc.dimension("pair_monomials", white.basis().len())
                .dimension("kernel", white.relations().dim());
            let mut spaces = Vec::new();
            for lam in &lambdas {
                let oracle = derived_identity_space(&ctx.cache, &pp, *n, lam)?;
                doc.verdict("oracle equals white-product kernel", Some(lam.to_string()), &oracle == white.relations());
                spaces.push(oracle);
            }
            if spaces.len() > 1 {
                doc.verdict("independent of lambda", None, spaces.windows(2).all(|w| w[0] == w[1]));
            }
            Ok(doc)
        }
        Command::HatTest {
            max_order,
            samples,
            seed,
        } => {
            if *max_order < 2 {
                return Err(Error::InvalidShape("--max-order must be at least 2".into()));
            }
            let sweep = 8.max(*max_order as usize);
            let report = psi_homomorphism_report(*samples, *max_order, *seed)?;
            let mut doc = ResultDocument::new(format!(
                "hat-test --max-order {max_order} --samples {samples} --seed {seed}"
            ));
            doc.dimension("samples", *samples)
                .dimension("novikov_sweep", sweep)
                .dimension("prec_failures", report.prec_failures)
                .dimension("succ_failures", report.succ_failures)
                .verdict("divided powers are Novikov", None, check_h_novikov(sweep))
                .verdict("psi preserves prec", None, report.prec_failures == 0)
                .verdict("psi preserves succ", None, report.succ_failures == 0);
            Ok(doc)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let disk = match (&cli.cache_dir, cli.no_cache) {
        (Some(dir), false) => Some(Arc::new(DiskCache::new(dir))),
        _ => None,
    };
    let mut cache = ComponentCache::new();
    if let Some(d) = &disk {
        cache = cache.with_store(Box::new(Arc::clone(d)));
    }
    let ctx = Context { cache, disk };
    let start = Instant::now();
    let result = execute(&cli, &ctx);
    if let Some(d) = &ctx.disk {
        for w in d.take_warnings() {
            let _ = writeln!(err, "warning: {w}");
        }
    }
    if cli.verbose {
        let (memory, stored, computed) = ctx.cache.stats();
        let _ = writeln!(
            err,
            "cache: {memory} memory hits, {stored} disk hits, {computed} computed\nelapsed: {} ms",
            start.elapsed().as_millis()
        );
    }
    match result {
        Ok(doc) => {
            let format = match cli.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Latex => OutputFormat::Latex,
                FormatArg::Json => OutputFormat::Json,
            };
            if out.write_all(doc.emit(format).as_bytes()).is_err() {
                return 2;
            }
            for v in doc.verdicts.iter().filter(|v| !v.holds) {
                let _ = writeln!(err, "failed: {}", v.subject);
            }
            if doc.all_hold() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
