use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclestar::diagrams::{
    matrix_to_diagram, read_census_file, render_ascii, render_dot_named, write_census_csv,
};
use cyclestar::format::PolynomialJson;
use cyclestar::fqsym::{realize_f, underline_z, word_to_letters};
use cyclestar::polya_enum::{
    brute_force_census, census_polynomial, enumerate_diagrams, type_coefficient,
    DEFAULT_STEP_BUDGET,
};
use cyclestar::{
    frak_z, Cycle, EdgeType, Error, FQSymElement, FeynmanTable, Permutation, WeightMatrix,
    YPolynomial,
};

mod groups;

use groups::GroupSpec;

const CACHE_ENV: &str = "CYCLESTAR_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "cyclestar",
    version,
    about = "Permutation products, cycle indices and Feynman diagram enumeration"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a JSON CommandResult instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time (in the JSON result, or on stderr)
    #[arg(long, global = true)]
    timing: bool,
    /// Read and print permutations with letters 1..n
    #[arg(long, global = true)]
    one_indexed: bool,
    /// Worker threads for the census
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Maximum canonicalization steps a census may take
    #[arg(long, global = true, env = "CYCLESTAR_STEP_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    step_budget: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Intransitive or Cartesian product of two permutations
    Product {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Law::Intransitive)]
        law: Law,
    },
    /// Cycle index of a group: S:n, A:n, C:n, gens:W1;W2, file:PATH
    CycleIndex {
        group: String,
        /// Also expand in the monomial basis
        #[arg(long)]
        monomial: bool,
    },
    /// Generating series of weighted bipartite graphs without isolated vertices
    Feynman(FeynmanArgs),
    /// Free quasi-symmetric functions
    Fqsym {
        #[command(subcommand)]
        op: FqsymOp,
    },
    /// Draw a weight matrix as a bipartite diagram
    Render {
        /// CSV matrix file, or `-` for stdin
        file: Option<PathBuf>,
        /// Inline matrix such as `2,0;1,1`
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Intransitive,
    Cartesian,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Ascii,
}

#[derive(Args)]
struct FeynmanArgs {
    /// Number of white vertices (rows)
    n: Option<u32>,
    /// Number of black vertices (columns)
    m: Option<u32>,
    #[arg(long, conflicts_with = "n")]
    rows: Option<u32>,
    #[arg(long, conflicts_with = "m")]
    cols: Option<u32>,
    #[arg(long, short = 'P')]
    max_weight: u32,
    /// Restrict to one type `i0,i1,...,iP`
    #[arg(long = "type", value_name = "COUNTS")]
    edge_type: Option<String>,
    /// List canonical matrices
    #[arg(long)]
    list: bool,
    /// List diagrams in DOT
    #[arg(long)]
    dot: bool,
    /// Check against the brute-force census
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum FqsymOp {
    /// Concatenation product
    Product { left: String, right: String },
    /// Cartesian product
    Star { left: String, right: String },
    /// Free quasi-symmetric cycle index of a group
    Zindex { group: String },
    /// Projection onto symmetric functions
    Project { element: String },
    /// Words over k letters in F_σ
    Realize {
        sigma: String,
        #[arg(long, short = 'k')]
        alphabet: usize,
    },
}

/// Text for stdout plus the JSON payload.
struct Output {
    text: String,
    payload: Value,
}

enum Failure {
    Lib(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("warning: could not size thread pool: {e}");
        }
    }
    let start = Instant::now();
    let result = run(&cli);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let g = &cli.global;
    match result {
        Ok(out) => {
            if g.json {
                let mut v = json!({ "status": "ok", "payload": out.payload });
                if g.timing {
                    v["timing_ms"] = json!(elapsed_ms);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                print!("{}", out.text);
                if g.timing {
                    eprintln!("time: {elapsed_ms:.3} ms");
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, message, exit) = match &f {
                Failure::Lib(e) => (e.code(), e.to_string(), exit_code(e)),
                Failure::Verify(msg) => ("verify_mismatch", msg.clone(), 4),
            };
            if g.json {
                let mut v =
                    json!({ "status": "error", "error": { "code": code, "message": message } });
                if g.timing {
                    v["timing_ms"] = json!(elapsed_ms);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                eprintln!("error[{code}]: {message}");
            }
            ExitCode::from(exit)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Domain(_)
        | Error::IndexOutOfRange { .. }
        | Error::DegreeMismatch { .. } => 2,
        Error::Resource { .. } => 3,
        Error::Io(_) => 1,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Product { left, right, law } => product(g, left, right, *law),
        Command::CycleIndex { group, monomial } => cycle_index_cmd(g, group, *monomial),
        Command::Feynman(args) => feynman(g, args),
        Command::Fqsym { op } => fqsym(g, op),
        Command::Render {
            file,
            matrix,
            format,
        } => render(file.as_ref(), matrix.as_deref(), *format),
    }
}

fn perm_text(p: &Permutation, one_indexed: bool) -> String {
    if one_indexed {
        p.to_one_indexed_string()
    } else {
        p.to_string()
    }
}

fn cycle_text(c: &Cycle, one_indexed: bool) -> String {
    let shift = usize::from(one_indexed);
    let v: Vec<String> = c
        .elements()
        .iter()
        .map(|x| (x + shift).to_string())
        .collect();
    format!("({})", v.join(" "))
}

fn product(g: &Global, left: &str, right: &str, law: Law) -> Result<Output, Failure> {
    let a = Permutation::parse(left, g.one_indexed)?;
    let b = Permutation::parse(right, g.one_indexed)?;
    let (p, law_name) = match law {
        Law::Intransitive => (a.intransitive(&b), "intransitive"),
        Law::Cartesian => (a.cartesian(&b), "cartesian"),
    };
    let cycles = p.cycles();
    let cycles_text: String = cycles
        .iter()
        .map(|c| cycle_text(c, g.one_indexed))
        .collect();
    let z = frak_z(&p);
    let text = format!(
        "{}\ncycles: {}\nfrak_Z: {}\n",
        perm_text(&p, g.one_indexed),
        cycles_text,
        z
    );
    let shift = usize::from(g.one_indexed);
    let payload = json!({
        "law": law_name,
        "one_indexed": g.one_indexed,
        "degree": p.degree(),
        "word": p.word().iter().map(|x| x + shift).collect::<Vec<_>>(),
        "text": perm_text(&p, g.one_indexed),
        "cycles": cycles.iter().map(|c| c.elements().iter().map(|x| x + shift).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "frak_z": z.to_json(),
    });
    Ok(Output { text, payload })
}

fn cycle_index_cmd(g: &Global, group: &str, monomial: bool) -> Result<Output, Failure> {
    let spec = GroupSpec::parse(group, g.one_indexed)?;
    let z = spec.cycle_index()?;
    let mut text = format!("{z}\n");
    let mut payload = json!({ "group": group, "cycle_index": z.to_json(), "text": z.to_string() });
    if monomial {
        let m = z.to_monomial();
        text.push_str(&format!("monomial: {m}\n"));
        payload["monomial"] = poly_json(&m.to_json());
        payload["monomial_text"] = json!(m.to_string());
    }
    Ok(Output { text, payload })
}

fn poly_json(p: &PolynomialJson) -> Value {
    serde_json::to_value(p).expect("json")
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
}

fn feynman_series_cached(n: u32, m: u32, p: u32) -> Result<YPolynomial, Failure> {
    match cache_dir() {
        Some(dir) => {
            std::fs::create_dir_all(&dir).map_err(Error::from)?;
            let path = dir.join(format!("feynman-P{p}.json"));
            let mut table = FeynmanTable::load_or_new(&path, p as usize)?;
            let before = table.len();
            let f = table.series(n, m);
            if table.len() != before {
                table.save(&path)?;
            }
            Ok(f)
        }
        None => Ok(FeynmanTable::new(p as usize).series(n, m)),
    }
}

/// All packed canonical matrices, read from or written to the cache when enabled.
fn packed_listing(n: usize, m: usize, p: u32, budget: u128) -> Result<Vec<WeightMatrix>, Failure> {
    let Some(dir) = cache_dir() else {
        return Ok(enumerate_diagrams(n, m, p, None, budget)?);
    };
    let path = dir.join(format!("census-{n}x{m}-P{p}-packed.csv"));
    if path.exists() {
        let file = read_census_file(&path)?;
        if (file.rows, file.cols, file.max_weight, file.packed) != (n, m, p, true) {
            return Err(Error::Domain(format!(
                "cache file {} has a different header",
                path.display()
            ))
            .into());
        }
        return Ok(file.matrices);
    }
    let list = enumerate_diagrams(n, m, p, None, budget)?;
    std::fs::create_dir_all(&dir).map_err(Error::from)?;
    let f = std::fs::File::create(&path).map_err(Error::from)?;
    write_census_csv(std::io::BufWriter::new(f), n, m, p, true, &list)?;
    Ok(list)
}

fn feynman(g: &Global, a: &FeynmanArgs) -> Result<Output, Failure> {
    let n =
        a.n.or(a.rows)
            .ok_or_else(|| Error::Domain("missing row count (N or --rows)".into()))?;
    let m =
        a.m.or(a.cols)
            .ok_or_else(|| Error::Domain("missing column count (M or --cols)".into()))?;
    if n == 0 || m == 0 {
        return Err(Error::Domain("row and column counts must be positive".into()).into());
    }
    let p = a.max_weight;
    let series = feynman_series_cached(n, m, p)?;
    let filter = match &a.edge_type {
        Some(s) => {
            let t = EdgeType::parse(s)?;
            Some(
                t.resized(p as usize + 1)
                    .ok_or_else(|| Error::Domain(format!("type {t} uses weights above {p}")))?,
            )
        }
        None => None,
    };
    let mut text = String::new();
    let mut payload = json!({ "rows": n, "cols": m, "max_weight": p });
    match &filter {
        Some(t) => {
            let c = type_coefficient(&series, t);
            if t.total() != u64::from(n) * u64::from(m) {
                return Err(Error::Domain(format!(
                    "type {t} has {} cells, expected {}",
                    t.total(),
                    n * m
                ))
                .into());
            }
            text.push_str(&format!("{t}: {c}\n"));
            payload["type"] = json!(t.counts());
            payload["count"] = json!(c.to_string());
        }
        None => {
            text.push_str(&format!("{series}\n"));
            payload["series"] = poly_json(&series.to_json());
            payload["text"] = json!(series.to_string());
        }
    }
    if a.list || a.dot {
        let all = packed_listing(n as usize, m as usize, p, g.step_budget)?;
        let list: Vec<&WeightMatrix> = all
            .iter()
            .filter(|mat| filter.as_ref().is_none_or(|t| mat.type_with_bound(p) == *t))
            .collect();
        text.push_str(&format!("diagrams: {}\n", list.len()));
        let mut dots = Vec::new();
        for (i, mat) in list.iter().enumerate() {
            if a.dot {
                let d = render_dot_named(&matrix_to_diagram(mat)?, &format!("d{}", i + 1));
                text.push_str(&d);
                dots.push(d);
            } else {
                text.push_str(&format!("{}\n", mat.to_inline()));
            }
        }
        payload["diagrams"] = json!(list.iter().map(|mat| mat.to_rows()).collect::<Vec<_>>());
        if a.dot {
            payload["dot"] = json!(dots);
        }
    }
    if a.verify {
        let census = brute_force_census(n as usize, m as usize, p, true, g.step_budget)?;
        let oracle = census_polynomial(&census, p as usize);
        let mismatches = diff(&series, &oracle);
        if !mismatches.is_empty() {
            let detail: Vec<String> = mismatches
                .iter()
                .map(|(t, (s, o))| format!("{t}: series {s}, census {o}"))
                .collect();
            return Err(Failure::Verify(format!(
                "F({n},{m}) disagrees with the census on {} types: {}",
                mismatches.len(),
                detail.join("; ")
            )));
        }
        text.push_str(&format!(
            "verified: {} types agree with the census\n",
            census.len()
        ));
        payload["verified"] = json!(true);
        payload["verified_types"] = json!(census.len());
    }
    Ok(Output { text, payload })
}

fn diff(a: &YPolynomial, b: &YPolynomial) -> BTreeMap<EdgeType, (String, String)> {
    let mut keys: Vec<Vec<u32>> = a.terms().map(|(k, _)| k.clone()).collect();
    keys.extend(b.terms().map(|(k, _)| k.clone()));
    keys.into_iter()
        .filter_map(|k| {
            let (x, y) = (a.coefficient(&k), b.coefficient(&k));
            (x != y).then(|| (EdgeType::new(k), (x.to_string(), y.to_string())))
        })
        .collect()
}

fn fq_text(x: &FQSymElement, one_indexed: bool) -> String {
    if one_indexed {
        x.to_one_indexed_string()
    } else {
        x.to_string()
    }
}

fn fqsym(g: &Global, op: &FqsymOp) -> Result<Output, Failure> {
    let parse = |s: &str| FQSymElement::parse(s, g.one_indexed);
    let element = |x: FQSymElement| {
        let text = fq_text(&x, g.one_indexed);
        Output {
            payload: json!({ "element": poly_json(&x.to_json()), "text": text }),
            text: format!("{text}\n"),
        }
    };
    match op {
        FqsymOp::Product { left, right } => Ok(element(parse(left)?.product(&parse(right)?))),
        FqsymOp::Star { left, right } => Ok(element(parse(left)?.star(&parse(right)?))),
        FqsymOp::Zindex { group } => {
            let grp = GroupSpec::parse(group, g.one_indexed)?.build()?;
            Ok(element(underline_z(&grp)))
        }
        FqsymOp::Project { element } => {
            let z = parse(element)?.z_morphism();
            Ok(Output {
                text: format!("{z}\n"),
                payload: json!({ "projection": poly_json(&z.to_json()), "text": z.to_string() }),
            })
        }
        FqsymOp::Realize { sigma, alphabet } => {
            if *alphabet == 0 {
                return Err(Error::Domain("alphabet size must be at least 1".into()).into());
            }
            let s = Permutation::parse(sigma, g.one_indexed)?;
            let words: Vec<String> = realize_f(&s, *alphabet)
                .iter()
                .map(|w| word_to_letters(w))
                .collect();
            let mut text = String::new();
            for w in &words {
                text.push_str(w);
                text.push('\n');
            }
            Ok(Output {
                text,
                payload: json!({ "sigma": s.word(), "alphabet": alphabet, "words": words }),
            })
        }
    }
}

fn render(
    file: Option<&PathBuf>,
    inline: Option<&str>,
    format: RenderFormat,
) -> Result<Output, Failure> {
    let mat = match (file, inline) {
        (_, Some(s)) => WeightMatrix::parse_inline(s)?,
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(Error::from)?;
            WeightMatrix::from_csv_reader(buf.as_bytes())?
        }
        (Some(path), None) => {
            let f = std::fs::File::open(path).map_err(Error::from)?;
            WeightMatrix::from_csv_reader(f)?
        }
        (None, None) => return Err(Error::Domain("give a matrix file or --matrix".into()).into()),
    };
    let d = matrix_to_diagram(&mat)?;
    let text = match format {
        RenderFormat::Dot => render_dot_named(&d, "diagram"),
        RenderFormat::Ascii => render_ascii(&d),
    };
    let payload = json!({
        "matrix": mat.to_rows(),
        "format": match format { RenderFormat::Dot => "dot", RenderFormat::Ascii => "ascii" },
        "rendering": text,
    });
    Ok(Output { text, payload })
}
