//! Command-line interface. [`run`] takes the argument list and output
//! streams so the binary and the tests drive exactly the same code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use biquandle_core::{
    alexander_table, brute_force_iso, build_diagram, count_homs, enumerate_biquandles, make_switch_biquandle,
    structural_iso, verify_biquandle, yang_baxter_check, BiquandleTable, ElementOrder, FiniteModule, IsoError,
    IsoWitness, KnotError, SearchStats,
};
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{
    matrix_rows, parse_gauss_file, parse_matrix, parse_module, parse_switch, serialize_matrix, set_string,
    ModuleName, ParseError,
};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "biquandle-cli/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;

/// Violations listed in text mode before the rest are summarized.
const TEXT_VIOLATION_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "biquandle", version, about = "Finite biquandles: axioms, Alexander modules, isomorphism, knot counting")]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the biquandle axioms of a matrix file.
    Check { file: PathBuf },
    /// Print the matrix of an Alexander biquandle.
    Alexander {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
    },
    /// Build the biquandle of a switch file (`m k`, rows of A, rows of B, shift).
    Switch {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
    },
    /// Decide whether two biquandles are isomorphic. Give two operands with
    /// any mix of --zn, --mod and --matrix.
    Iso {
        /// Z_m with scalar actions s and t (repeatable).
        #[arg(long, num_args = 3, value_names = ["M", "S", "T"], allow_negative_numbers = true)]
        zn: Vec<i64>,
        /// Module file (repeatable).
        #[arg(long = "mod", value_name = "FILE")]
        modules: Vec<PathBuf>,
        /// Matrix file (repeatable); brute force only.
        #[arg(long, value_name = "FILE")]
        matrix: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
    },
    /// Count homomorphisms from the knot biquandle of a Gauss code into a target.
    Count {
        /// A Gauss code such as `O1+,U1+`, or a file with one code per line.
        #[arg(long, allow_hyphen_values = true)]
        gauss: String,
        #[command(flatten)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
    },
    /// List (1-st)M, Ker(1-s), the coset representatives A and the s-orbit of A.
    Orbits {
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Enumerate the biquandles of order n and their isomorphism classes.
    Enumerate {
        n: usize,
        /// Permit order 4.
        #[arg(long)]
        allow_order_four: bool,
        /// Print every matrix as well.
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ModuleArg {
    /// Z_m with scalar actions s and t.
    #[arg(long, num_args = 3, value_names = ["M", "S", "T"], allow_negative_numbers = true)]
    pub zn: Option<Vec<i64>>,
    /// Module file: `m k`, k rows of S, k rows of T.
    #[arg(long = "mod", value_name = "FILE")]
    pub module: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TargetArg {
    /// Target matrix file.
    #[arg(long, value_name = "FILE")]
    pub target: Option<PathBuf>,
    /// Alexander biquandle of Z_m with scalar actions s and t.
    #[arg(long, num_args = 3, value_names = ["M", "S", "T"], allow_negative_numbers = true)]
    pub zn: Option<Vec<i64>>,
    /// Alexander biquandle of a module file.
    #[arg(long = "mod", value_name = "FILE")]
    pub module: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Element k is the residue k; zero comes last.
    #[default]
    Residue,
    /// Elements in coordinate order, zero first.
    Canonical,
}

impl From<OrderArg> for ElementOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Residue => ElementOrder::Residue,
            OrderArg::Canonical => ElementOrder::Canonical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Structural,
    Both,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Input(String),
}

type Outcome = Result<u8, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_matrix(path: &Path) -> Result<BiquandleTable, CliError> {
    parse_matrix(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn load_module(path: &Path) -> Result<FiniteModule, CliError> {
    parse_module(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn scalar_module(v: &[i64]) -> Result<FiniteModule, CliError> {
    let m = u32::try_from(v[0]).map_err(|_| CliError::Input(format!("--zn: bad modulus {}", v[0])))?;
    FiniteModule::scalar(m, v[1], v[2]).map_err(|e| CliError::Input(format!("--zn {} {} {}: {e}", v[0], v[1], v[2])))
}

impl ModuleArg {
    fn load(&self) -> Result<FiniteModule, CliError> {
        match (&self.zn, &self.module) {
            (Some(v), _) => scalar_module(v),
            (_, Some(p)) => load_module(p),
            _ => unreachable!("clap requires one of the group"),
        }
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn text(&mut self, s: &str) {
        if !self.json {
            let _ = self.out.write_all(s.as_bytes());
        }
    }

    fn doc(&mut self, command: &str, body: Value) {
        if self.json {
            let mut doc = json!({ "schema": SCHEMA, "command": command });
            if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
                d.extend(b);
            }
            let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return EXIT_INPUT;
        }
    };
    let mut o = Output { out, json: cli.json };
    let result = match &cli.command {
        Command::Check { file } => cmd_check(&mut o, file),
        Command::Alexander { module, order } => cmd_alexander(&mut o, module, *order),
        Command::Switch { file, order } => cmd_switch(&mut o, err, file, *order),
        Command::Iso { method, order, .. } => {
            let sub = matches.subcommand_matches("iso").expect("iso was parsed");
            cmd_iso(&mut o, sub, *method, *order)
        }
        Command::Count { gauss, target, order } => cmd_count(&mut o, gauss, target, *order),
        Command::Orbits { module } => cmd_orbits(&mut o, module),
        Command::Enumerate { n, allow_order_four, tables } => cmd_enumerate(&mut o, *n, *allow_order_four, *tables),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn cmd_check(o: &mut Output<'_>, file: &Path) -> Outcome {
    let table = load_matrix(file)?;
    let report = verify_biquandle(&table);
    let ybe = yang_baxter_check(&table);
    let passed = report.passed();
    let mut text = format!(
        "order: {}\nbiquandle: {}\nyang-baxter: {}\nviolations: {}\n",
        table.order(),
        if passed { "yes" } else { "no" },
        if ybe { "yes" } else { "no" },
        report.violations.len()
    );
    for v in report.violations.iter().take(TEXT_VIOLATION_LIMIT) {
        text.push_str(&format!("  {v}\n"));
    }
    if report.violations.len() > TEXT_VIOLATION_LIMIT {
        text.push_str(&format!("  ... and {} more\n", report.violations.len() - TEXT_VIOLATION_LIMIT));
    }
    o.text(&text);
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom.to_string(),
                "kind": format!("{:?}", v.kind),
                "witness": v.witness.iter().map(|e| e.label()).collect::<Vec<_>>(),
            })
        })
        .collect();
    o.doc("check", json!({ "order": table.order(), "biquandle": passed, "yang_baxter": ybe, "violations": violations }));
    Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_alexander(o: &mut Output<'_>, module: &ModuleArg, order: OrderArg) -> Outcome {
    let m = module.load()?;
    let table = alexander_table(&m, order.into());
    o.text(&serialize_matrix(&table));
    o.doc(
        "alexander",
        json!({
            "module": ModuleName(&m).to_string(),
            "order": order_name(order),
            "elements": element_names(&m, order),
            "matrix": matrix_rows(&table),
        }),
    );
    Ok(EXIT_OK)
}

fn cmd_switch(o: &mut Output<'_>, err: &mut dyn Write, file: &Path, order: OrderArg) -> Outcome {
    let spec = parse_switch(&read(file)?).map_err(|source| CliError::Parse { path: file.to_path_buf(), source })?;
    let sw = make_switch_biquandle(spec.modulus, spec.rank, &spec.a, &spec.b, &spec.shift, order.into())
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let passed = sw.report.passed();
    o.text(&serialize_matrix(&sw.table));
    if !o.json && !passed {
        let _ = writeln!(err, "warning: the table fails {} axiom clauses", sw.report.violations.len());
    }
    o.doc(
        "switch",
        json!({
            "c": sw.c.rows(),
            "d": sw.d.rows(),
            "switch_condition": sw.switch_condition,
            "biquandle": passed,
            "matrix": matrix_rows(&sw.table),
        }),
    );
    Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
}

fn order_name(order: OrderArg) -> &'static str {
    match order {
        OrderArg::Residue => "residue",
        OrderArg::Canonical => "canonical",
    }
}

/// Module elements in table order.
fn element_names(m: &FiniteModule, order: OrderArg) -> Vec<String> {
    ElementOrder::from(order).codes(m.size()).into_iter().map(|c| m.element(c).to_string()).collect()
}

enum Operand {
    Module(FiniteModule),
    Table(BiquandleTable, PathBuf),
}

impl Operand {
    fn name(&self) -> String {
        match self {
            Operand::Module(m) => ModuleName(m).to_string(),
            Operand::Table(_, p) => p.display().to_string(),
        }
    }

    fn table(&self, order: ElementOrder) -> BiquandleTable {
        match self {
            Operand::Module(m) => alexander_table(m, order),
            Operand::Table(t, _) => t.clone(),
        }
    }
}

/// The operands of `iso` in command-line order.
fn iso_operands(sub: &ArgMatches) -> Result<Vec<Operand>, CliError> {
    let mut found: Vec<(usize, Operand)> = Vec::new();
    if let (Some(idx), Some(vals)) = (sub.indices_of("zn"), sub.get_many::<i64>("zn")) {
        let idx: Vec<usize> = idx.collect();
        let vals: Vec<i64> = vals.copied().collect();
        for (i, chunk) in vals.chunks(3).enumerate() {
            found.push((idx[3 * i], Operand::Module(scalar_module(chunk)?)));
        }
    }
    if let (Some(idx), Some(vals)) = (sub.indices_of("modules"), sub.get_many::<PathBuf>("modules")) {
        for (i, p) in idx.zip(vals) {
            found.push((i, Operand::Module(load_module(p)?)));
        }
    }
    if let (Some(idx), Some(vals)) = (sub.indices_of("matrix"), sub.get_many::<PathBuf>("matrix")) {
        for (i, p) in idx.zip(vals) {
            found.push((i, Operand::Table(load_matrix(p)?, p.clone())));
        }
    }
    if found.len() != 2 {
        return Err(CliError::Input(format!("iso needs exactly two operands, got {}", found.len())));
    }
    found.sort_by_key(|(i, _)| *i);
    Ok(found.into_iter().map(|(_, op)| op).collect())
}

#[derive(Serialize)]
struct StatsJson {
    nodes: u64,
    candidates: u64,
    pruned_profile: u64,
    pruned_collision: u64,
    pruned_conflict: u64,
    rejected_complete: u64,
}

impl From<SearchStats> for StatsJson {
    fn from(s: SearchStats) -> Self {
        StatsJson {
            nodes: s.nodes,
            candidates: s.candidates,
            pruned_profile: s.pruned_profile,
            pruned_collision: s.pruned_collision,
            pruned_conflict: s.pruned_conflict,
            rejected_complete: s.rejected_complete,
        }
    }
}

fn stats_line(s: &SearchStats) -> String {
    format!("  search: {} nodes, {} candidates, {} pruned\n", s.nodes, s.candidates, s.prunes())
}

fn one_line(f: &[usize]) -> String {
    let labels: Vec<String> = f.iter().map(|&y| (y + 1).to_string()).collect();
    format!("[{}]", labels.join(" "))
}

/// The witness map on table labels, given `f` on module codes.
fn labels_from_codes(f: &[usize], order: ElementOrder) -> Vec<usize> {
    let size = f.len();
    order.codes(size).into_iter().map(|c| order.index_of(f[c], size)).collect()
}

fn pairs_string(src: &FiniteModule, dst: &FiniteModule, pairs: &[(usize, usize)]) -> String {
    set_string(pairs, |&(x, y)| format!("{} -> {}", src.element(x), dst.element(y)))
}

fn witness_text(w: &IsoWitness, src: &FiniteModule, dst: &FiniteModule, order: ElementOrder) -> String {
    let k: Vec<(usize, usize)> = w.reps.iter().copied().zip(w.k.iter().copied()).collect();
    format!(
        "  h = {}\n  A = {}\n  k = {}\n  f = {}\n",
        pairs_string(src, dst, w.h.pairs()),
        set_string(&w.reps, |&a| src.element(a).to_string()),
        pairs_string(src, dst, &k),
        one_line(&labels_from_codes(&w.f, order)),
    )
}

fn witness_json(w: &IsoWitness, src: &FiniteModule, dst: &FiniteModule, order: ElementOrder) -> Value {
    let pair = |&(x, y): &(usize, usize)| json!([src.element(x).to_string(), dst.element(y).to_string()]);
    json!({
        "h": w.h.pairs().iter().map(pair).collect::<Vec<_>>(),
        "reps": w.reps.iter().map(|&a| src.element(a).to_string()).collect::<Vec<_>>(),
        "k": w.reps.iter().copied().zip(w.k.iter().copied()).collect::<Vec<_>>().iter().map(pair).collect::<Vec<_>>(),
        "f": labels_from_codes(&w.f, order).iter().map(|y| y + 1).collect::<Vec<_>>(),
    })
}

fn verdict_word(iso: bool) -> &'static str {
    if iso {
        "isomorphic"
    } else {
        "non-isomorphic"
    }
}

fn cmd_iso(o: &mut Output<'_>, sub: &ArgMatches, method: Method, order: OrderArg) -> Outcome {
    let ops = iso_operands(sub)?;
    let order: ElementOrder = order.into();
    let mut text = format!("first: {}\nsecond: {}\n", ops[0].name(), ops[1].name());
    let mut body = json!({ "operands": [ops[0].name(), ops[1].name()] });
    let mut verdicts = Vec::new();

    if matches!(method, Method::Brute | Method::Both) {
        let (t1, t2) = (ops[0].table(order), ops[1].table(order));
        let found = brute_force_iso(&t1, &t2).map_err(|e| match e {
            IsoError::NotABiquandle(i) => CliError::Input(format!("{} is not a biquandle", ops[i].name())),
            other => CliError::Input(other.to_string()),
        })?;
        let iso = found.witness.is_some();
        verdicts.push(iso);
        text.push_str(&format!("brute force: {}\n", verdict_word(iso)));
        if let Some(f) = &found.witness {
            text.push_str(&format!("  f = {}\n", one_line(f)));
        }
        text.push_str(&stats_line(&found.stats));
        body["brute"] = json!({
            "isomorphic": iso,
            "f": found.witness.as_ref().map(|f| f.iter().map(|y| y + 1).collect::<Vec<_>>()),
            "stats": StatsJson::from(found.stats),
        });
    }
    if matches!(method, Method::Structural | Method::Both) {
        let (Operand::Module(m1), Operand::Module(m2)) = (&ops[0], &ops[1]) else {
            return Err(CliError::Input("the structural method needs two modules (--zn or --mod)".into()));
        };
        let (w, stats) = structural_iso(m1, m2);
        verdicts.push(w.is_some());
        text.push_str(&format!("structural: {}\n", verdict_word(w.is_some())));
        if let Some(w) = &w {
            text.push_str(&witness_text(w, m1, m2, order));
        }
        text.push_str(&stats_line(&stats));
        body["structural"] = json!({
            "isomorphic": w.is_some(),
            "witness": w.as_ref().map(|w| witness_json(w, m1, m2, order)),
            "stats": StatsJson::from(stats),
        });
    }

    let consistent = verdicts.windows(2).all(|p| p[0] == p[1]);
    let (verdict, code) = match (consistent, verdicts[0]) {
        (false, _) => ("inconsistent", EXIT_INCONSISTENT),
        (true, true) => ("isomorphic", EXIT_OK),
        (true, false) => ("non-isomorphic", EXIT_NEGATIVE),
    };
    text.push_str(&format!("verdict: {verdict}\n"));
    body["verdict"] = json!(verdict);
    o.text(&text);
    o.doc("iso", body);
    Ok(code)
}

fn cmd_count(o: &mut Output<'_>, gauss: &str, target: &TargetArg, order: OrderArg) -> Outcome {
    let table = match (&target.target, &target.zn, &target.module) {
        (Some(p), _, _) => load_matrix(p)?,
        (_, Some(v), _) => alexander_table(&scalar_module(v)?, order.into()),
        (_, _, Some(p)) => alexander_table(&load_module(p)?, order.into()),
        _ => unreachable!("clap requires one of the group"),
    };
    let path = Path::new(gauss);
    let from_file = !gauss.is_empty() && path.is_file();
    let codes = if from_file {
        parse_gauss_file(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })?
            .into_iter()
            .map(|e| e.code)
            .collect()
    } else {
        vec![gauss.parse().map_err(|e: KnotError| CliError::Input(format!("--gauss: {e}")))?]
    };
    let mut text = String::new();
    let mut results = Vec::new();
    for code in &codes {
        let d = build_diagram(code);
        let report = count_homs(&d, &table).map_err(|e| CliError::Input(e.to_string()))?;
        if from_file {
            text.push_str(&format!("{} {}\n", report.count, code));
        } else {
            text.push_str(&format!("{}\n", report.count));
        }
        results.push(json!({
            "code": code.to_string(),
            "crossings": d.crossings.len(),
            "semi_arcs": d.semi_arcs,
            "count": report.count,
        }));
    }
    o.text(&text);
    o.doc("count", json!({ "target_order": table.order(), "results": results }));
    Ok(EXIT_OK)
}

fn cmd_orbits(o: &mut Output<'_>, module: &ModuleArg) -> Outcome {
    let m = module.load()?;
    let n = m.one_minus_st_submodule();
    let ker = m.kernel_one_minus_s();
    let tr = m.transversal(&n);
    let names = |xs: &[usize]| xs.iter().map(|&x| m.element(x).to_string()).collect::<Vec<_>>();
    let show = |xs: &[usize]| set_string(xs, |&x| m.element(x).to_string());
    o.text(&format!(
        "module: {}\n(1-st)M = {}\nKer(1-s) = {}\nA = {}\nO_s(A) = {}\n",
        ModuleName(&m),
        show(n.elements()),
        show(ker.elements()),
        show(&tr.reps),
        show(&tr.orbit),
    ));
    o.doc(
        "orbits",
        json!({
            "module": ModuleName(&m).to_string(),
            "submodule": names(n.elements()),
            "kernel": names(ker.elements()),
            "reps": names(&tr.reps),
            "orbit": names(&tr.orbit),
        }),
    );
    Ok(EXIT_OK)
}

fn cmd_enumerate(o: &mut Output<'_>, n: usize, allow_order_four: bool, tables: bool) -> Outcome {
    let e = enumerate_biquandles(n, allow_order_four).map_err(|e| CliError::Input(e.to_string()))?;
    let mut class_of = vec![0; e.tables.len()];
    for (c, members) in e.classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let mut text = format!("order {n}: {} biquandles, {} isomorphism classes\n", e.tables.len(), e.classes.len());
    if tables {
        for (i, t) in e.tables.iter().enumerate() {
            text.push_str(&format!("\n# table {} (class {})\n{}", i + 1, class_of[i] + 1, serialize_matrix(t)));
        }
    }
    o.text(&text);
    let mut body = json!({
        "n": n,
        "count": e.tables.len(),
        "classes": e.classes.iter().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    if tables {
        body["matrices"] = json!(e.tables.iter().map(matrix_rows).collect::<Vec<_>>());
    }
    o.doc("enumerate", body);
    Ok(EXIT_OK)
}
