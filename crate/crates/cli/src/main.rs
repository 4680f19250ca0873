//! `posetal`: command-line access to the posetal library.
//!
//! Exit status is 0 when the requested result exists and every check
//! passes, 1 for a negative mathematical answer (a failed check, a colimit
//! that does not exist in the requested subcategory) and 2 for unreadable
//! input or bad arguments.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use posetal::colimit::{colimit_delta, colimit_pos_traced, colimit_tos, verify_universal};
use posetal::continuity::{check_continuity, density_colimit, fully_faithful_witness};
use posetal::delta::{verify_simplicial_identities, IdentityFamily};
use posetal::kan::{extend, KanError, Target};
use posetal::simplicial::nerve;
use posetal::text::{
    read_diagram, read_functor, read_sset_unchecked, resolve_poset, write_poset, write_sset, NamedPoset,
};
use posetal::{Cocone, FinPoset, PosetDiagram};

#[derive(Parser, Debug)]
#[command(name = "posetal", version, about = "Finite posets, nerves and colimits")]
struct Cli {
    /// Report style: prose, or one `key=value` per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Category {
    Pos,
    Tos,
    Delta,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated nerve of a poset, written in the simplicial-set format.
    Nerve {
        /// Poset file, or `[n]` for an ordinal.
        #[arg(long)]
        poset: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Run the continuity checks on a simplicial-set file.
    Check {
        #[arg(long)]
        sset: PathBuf,
    },
    /// Recover the poset whose nerve a simplicial-set file is.
    Reconstruct {
        #[arg(long)]
        sset: PathBuf,
    },
    /// Colimit of a diagram of posets.
    Colimit {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long = "in", value_enum, default_value_t = Category::Pos)]
        category: Category,
        /// Also check the universal property against every apex with at
        /// most this many elements.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Linear extensions of a poset and their intersection.
    Extensions {
        #[arg(long)]
        poset: String,
    },
    /// Colimit of the chains of a poset, compared with the poset.
    Density {
        #[arg(long)]
        poset: String,
        /// Largest chain length used; defaults to the height of the poset.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Extend a functor on the simplex category to a poset.
    Extend {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        poset: String,
        /// First bound tried; defaults to the height of the poset.
        #[arg(long)]
        bound: Option<usize>,
        /// Give up when bound `cap` and `cap + 1` still disagree.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check the simplicial identities among generator maps up to `[max-n]`.
    VerifyIdentities {
        #[arg(long)]
        max_n: usize,
    },
    /// Compare monotone maps P -> Q with simplicial maps between nerves.
    Homcount {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        poset2: String,
        #[arg(long, default_value_t = 1)]
        trunc: usize,
    },
}

/// Key/value pairs plus a prose rendering of the same result.
struct Report {
    pass: bool,
    text: String,
    fields: Vec<(String, String)>,
}

impl Report {
    fn new(pass: bool) -> Self {
        Report {
            pass,
            text: String::new(),
            fields: Vec::new(),
        }
    }

    fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    fn line(&mut self, line: impl AsRef<str>) -> &mut Self {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
        self
    }

    fn render(mut self, format: Format) -> (bool, String) {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        match format {
            Format::Text => (self.pass, self.text),
            Format::Machine => {
                if !self.fields.iter().any(|(k, _)| k == "verdict") {
                    self.field("verdict", verdict);
                }
                let mut s = String::new();
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "{k}={}", v.replace('\n', " "));
                }
                (self.pass, s)
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn load_poset(reference: &str) -> Result<NamedPoset, String> {
    resolve_poset(reference, None).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<(bool, String), String> {
    let format = cli.format;
    let rendered = match &cli.command {
        Command::Nerve { poset, trunc } => {
            let p = load_poset(poset)?;
            let x = nerve(&p.poset, *trunc).with_name(p.name.clone());
            match format {
                Format::Text => (true, write_sset(&x)),
                Format::Machine => {
                    let mut r = Report::new(true);
                    r.field("name", x.name()).field("trunc", x.trunc());
                    for n in 0..=x.trunc() {
                        r.field(format!("level.{n}.size"), x.level_size(n));
                    }
                    r.render(format)
                }
            }
        }
        Command::Check { sset } => {
            let x = read_sset_unchecked(sset).map_err(|e| e.to_string())?;
            let report = check_continuity(&x);
            let out = match format {
                Format::Text => report.to_text(),
                Format::Machine => report.to_machine(),
            };
            (report.pass(), out)
        }
        Command::Reconstruct { sset } => {
            let x = read_sset_unchecked(sset).map_err(|e| e.to_string())?;
            let report = check_continuity(&x);
            match (&report.reconstruction, format) {
                (Some(r), Format::Text) => (true, write_poset(&x.name().replace(char::is_whitespace, "_"), &r.poset)),
                (Some(r), Format::Machine) => {
                    let mut rep = Report::new(true);
                    rep.field("name", x.name())
                        .field("elements", r.poset.labels().join(" "))
                        .field("size", r.poset.len());
                    for (k, (a, b)) in r.poset.covers().into_iter().enumerate() {
                        rep.field(
                            format!("cover.{k}"),
                            format!("{} {}", r.poset.label(a), r.poset.label(b)),
                        );
                    }
                    rep.render(format)
                }
                (None, Format::Text) => (false, report.to_text()),
                (None, Format::Machine) => (false, report.to_machine()),
            }
        }
        Command::Colimit {
            diagram,
            category,
            verify,
        } => {
            let d = read_diagram(diagram).map_err(|e| e.to_string())?;
            colimit_report(&d, *category, *verify)?.render(format)
        }
        Command::Extensions { poset } => {
            let p = load_poset(poset)?;
            let orders = p.poset.linear_extension_orders();
            let recovered = p.poset.intersection_of_extensions() == p.poset.relation();
            let mut r = Report::new(recovered);
            r.line(format!("linear extensions of {}: {}", p.name, orders.len()));
            r.field("poset", &p.name).field("extensions", orders.len());
            for (k, order) in orders.iter().enumerate() {
                let chain = order.iter().map(|&a| p.poset.label(a)).collect::<Vec<_>>().join("<");
                r.line(format!("  {chain}"));
                r.field(format!("extension.{k}"), chain);
            }
            r.line(format!(
                "intersection of the extensions equals the order: {}",
                yes_no(recovered)
            ));
            r.field("intersection_equals_order", recovered);
            r.render(format)
        }
        Command::Density { poset, bound } => {
            let p = load_poset(poset)?;
            let poset = Arc::new(p.poset);
            let bound = bound.unwrap_or(poset.height());
            let res = density_colimit(&poset, bound).map_err(|e| e.to_string())?;
            let mut r = Report::new(res.pass());
            r.line(format!("chains of {} up to length {bound}", p.name))
                .line(format!(
                    "  comma category: {} objects, {} morphisms",
                    res.nodes, res.edges
                ))
                .line(format!("  colimit: {}", res.cocone.apex.describe()))
                .line(format!("  comparison with the poset: {}", res.comparison.describe()))
                .line(format!(
                    "  comparison is an isomorphism: {}",
                    yes_no(res.comparison.is_isomorphism())
                ))
                .line(format!(
                    "  still an isomorphism at bound {}: {}",
                    bound + 1,
                    yes_no(res.stable)
                ))
                .line(format!("verdict: {}", pass_fail(res.pass())));
            r.field("poset", &p.name)
                .field("bound", bound)
                .field("comma.objects", res.nodes)
                .field("comma.morphisms", res.edges)
                .field("apex", res.cocone.apex.describe())
                .field("apex.size", res.cocone.apex.len())
                .field("comparison", res.comparison.describe())
                .field("comparison.isomorphism", res.comparison.is_isomorphism())
                .field("stable", res.stable);
            r.render(format)
        }
        Command::Extend {
            functor,
            poset,
            bound,
            cap,
        } => {
            let f = read_functor(functor).map_err(|e| e.to_string())?;
            let p = load_poset(poset)?;
            let poset = Arc::new(p.poset);
            let bound = bound.unwrap_or(poset.height());
            let cap = cap.unwrap_or(bound + 3);
            match extend(&f, &poset, bound, cap) {
                Ok(res) => {
                    let mut r = Report::new(true);
                    let target = match f.target() {
                        Target::Pos => "pos",
                        Target::Set => "set",
                    };
                    r.line(format!("{} extended to {}", f.name(), p.name))
                        .line(format!("  value: {}", res.value().describe()))
                        .line(format!(
                            "  stable from bound {} (comparison {})",
                            res.stabilization,
                            res.comparison.describe()
                        ));
                    for (b, size) in &res.history {
                        r.line(format!("  bound {b}: {size} elements"));
                    }
                    r.field("functor", f.name())
                        .field("target", target)
                        .field("poset", &p.name)
                        .field("value", res.value().describe())
                        .field("value.size", res.value().len())
                        .field("stabilization", res.stabilization);
                    for (b, size) in &res.history {
                        r.field(format!("history.{b}"), size);
                    }
                    r.render(format)
                }
                Err(e @ KanError::NotStabilized { .. }) => {
                    let mut r = Report::new(false);
                    r.line(e.to_string()).field("error", e.to_string());
                    r.render(format)
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Command::VerifyIdentities { max_n } => {
            let rep = verify_simplicial_identities(*max_n);
            let mut r = Report::new(rep.pass());
            r.line(format!("simplicial identities among ordinals up to [{max_n}]"));
            r.field("max_n", max_n);
            for family in IdentityFamily::ALL {
                let failed = rep.failures().filter(|i| i.family == family).count();
                r.line(format!(
                    "  {:<36} {:>4} instances, {} failed",
                    family.formula(),
                    rep.count(family),
                    failed
                ));
                r.field(format!("family.{}.instances", family.key()), rep.count(family))
                    .field(format!("family.{}.failed", family.key()), failed);
            }
            for inst in rep.failures() {
                r.line(format!(
                    "  failure: {} at n={}, i={}, j={}",
                    inst.family.formula(),
                    inst.n,
                    inst.i,
                    inst.j
                ));
            }
            r.line(format!("verdict: {}", pass_fail(rep.pass())));
            r.render(format)
        }
        Command::Homcount { poset, poset2, trunc } => {
            if *trunc == 0 {
                return Err("--trunc must be at least 1".into());
            }
            let p = load_poset(poset)?;
            let q = load_poset(poset2)?;
            let w = fully_faithful_witness(&Arc::new(p.poset), &Arc::new(q.poset), *trunc);
            let mut r = Report::new(w.pass());
            r.line(format!("monotone maps {} -> {}: {}", p.name, q.name, w.monotone))
                .line(format!(
                    "simplicial maps between nerves truncated at {trunc}: {}",
                    w.simplicial
                ))
                .line(format!("taking nerves is injective: {}", yes_no(w.injective)))
                .line(format!("taking nerves is surjective: {}", yes_no(w.surjective)))
                .line(format!("verdict: {}", pass_fail(w.pass())));
            r.field("poset", &p.name)
                .field("poset2", &q.name)
                .field("trunc", trunc)
                .field("monotone", w.monotone)
                .field("simplicial", w.simplicial)
                .field("injective", w.injective)
                .field("surjective", w.surjective);
            r.render(format)
        }
    };
    Ok(rendered)
}

fn describe_cocone(r: &mut Report, d: &PosetDiagram, c: &Cocone) {
    r.line(format!("  apex: {}", c.apex.describe()));
    r.field("apex", c.apex.describe()).field("apex.size", c.apex.len());
    for (node, leg) in d.nodes().iter().zip(&c.legs) {
        r.line(format!("  leg {}: {}", node.id, leg.describe()));
        r.field(format!("leg.{}", node.id), leg.describe());
    }
}

fn nonexistence_reason(d: &PosetDiagram, category: Category, apex: &FinPoset) -> String {
    match category {
        Category::Delta if d.is_discrete() && d.nodes().len() >= 2 => "no coproducts in Δ".into(),
        Category::Delta if apex.is_empty() => "no colimit in Δ: the colimit in Pos is empty".into(),
        Category::Delta => format!(
            "no colimit in Δ: the colimit in Pos is not totally ordered ({})",
            apex.describe()
        ),
        _ => format!(
            "no colimit among total orders: the colimit in Pos is not totally ordered ({})",
            apex.describe()
        ),
    }
}

fn colimit_report(d: &PosetDiagram, category: Category, verify: Option<usize>) -> Result<Report, String> {
    let (pos, trace) = colimit_pos_traced(d);
    let (name, result) = match category {
        Category::Pos => ("pos", Some(pos.clone())),
        Category::Tos => ("tos", colimit_tos(d).map_err(|e| e.to_string())?),
        Category::Delta => ("delta", colimit_delta(d).map_err(|e| e.to_string())?),
    };
    let mut r = Report::new(result.is_some());
    r.line(format!("colimit of {} in {name}", d.name))
        .line(format!("  {trace}"));
    r.field("diagram", &d.name)
        .field("category", name)
        .field("trace.points", trace.points)
        .field("trace.set_classes", trace.set_classes)
        .field("trace.apex_size", trace.apex_size)
        .field("exists", result.is_some());
    let Some(cocone) = result else {
        let reason = nonexistence_reason(d, category, &pos.apex);
        r.line(&reason).line("verdict: FAIL");
        r.field("reason", reason);
        return Ok(r);
    };
    describe_cocone(&mut r, d, &cocone);
    if let Some(bound) = verify {
        let report = verify_universal(d, &cocone, bound).map_err(|e| e.to_string())?;
        r.pass &= report.pass();
        r.line(format!(
            "  universal property against apexes of at most {bound} elements: {} ({} cocones)",
            pass_fail(report.pass()),
            report.cocones_tested()
        ));
        r.field("universal.bound", bound)
            .field("universal.cocones", report.cocones_tested())
            .field("universal", pass_fail(report.pass()));
        if let Some(fail) = report.first_failure() {
            let witness = fail.witness.clone().unwrap_or_default();
            r.line(format!("  failing apex {}: {witness}", fail.apex.describe()));
            r.field("universal.witness", witness);
        }
    }
    r.line(format!("verdict: {}", pass_fail(r.pass)));
    Ok(r)
}

fn emit(output: Option<&Path>, body: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|(pass, body)| emit(cli.output.as_deref(), &body).map(|()| pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
