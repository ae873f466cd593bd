use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sensitivity_core::constructions::{
    cfgs_subset, dihedrant_matching, star_graph_subset, tight_matching, torus_subset, z3r_subset, Construction,
};
use sensitivity_core::coxeter::{bn_dn_subset, coxeter_cayley, coxeter_system, cube_like_subset, is_cube_like, kappa_formula};
use sensitivity_core::graph::hypercube_graph;
use sensitivity_core::group::random_connection_set;
use sensitivity_core::incidence::{levi_graph, lps_graph, polarity_graph};
use sensitivity_core::solver::{
    delta_beta, independence_number, iota, kappa_search, max_low_degree_set, sensitivity, Ratio, SearchBudget,
    SolveResult,
};
use sensitivity_core::spectral::{mixing_sensitivity_bound, ndl_summary};
use sensitivity_core::{
    cayley_graph, group_make, verify_certificate, Certificate, ConnectionSet, Error, Graph, Result,
};

#[derive(Parser)]
#[command(name = "senslab", about = "Sensitivity of Cayley graphs: constructions, exact search, certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph (and its certificate where the family has one).
    Build(BuildArgs),
    /// Compute a parameter of a graph file.
    Solve(SolveArgs),
    /// Check a certificate against a graph file.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Regenerate a table of computed values next to the published ones.
    Table {
        name: TableName,
        #[arg(long, default_value = "60s")]
        budget: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dihedrant,
    Star,
    Tight,
    Coxeter,
    Torus,
    Z3r,
    Hypercube,
    Levi,
    Polarity,
    Lps,
    GroupCayley,
}

#[derive(Args)]
struct BuildArgs {
    family: Family,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long = "type")]
    type_name: Option<String>,
    /// Group spec for `group-cayley`, e.g. `dihedral:9`.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated element labels of the connection set.
    #[arg(long)]
    conn: Option<String>,
    /// Size of a random connection set (requires --seed).
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write a DOT file with the certificate highlighted.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parameter {
    Sigma,
    Alpha,
    Iota,
    Kappa,
    DeltaBeta,
}

#[derive(Args)]
struct SolveArgs {
    parameter: Parameter,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    #[arg(long, default_value = "600s")]
    budget: String,
    /// Directory for the witness certificate (defaults to the graph's directory).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    CoxeterSmall,
    Kappa,
    SpectralLevi,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("missing --{flag}")))
}

fn ceil_sqrt(x: usize) -> usize {
    sensitivity_core::constructions::ceil_sqrt(x)
}

fn build(a: &BuildArgs) -> Result<ExitCode> {
    let (family, params, graph, certs): (&str, String, Graph, Vec<(String, Certificate)>) = match a.family {
        Family::Dihedrant => {
            let d = need(a.d, "d")?;
            let c = dihedrant_matching(d as u32)?;
            ("dihedrant", format!("d{d}"), c.graph, vec![("set".into(), c.certificate)])
        }
        Family::Star => {
            let n = need(a.n, "n")?;
            let c = star_graph_subset(n)?;
            ("star", format!("n{n}"), c.graph, vec![("set".into(), c.certificate)])
        }
        Family::Tight => {
            let m = need(a.m, "m")?;
            let c = tight_matching(m)?;
            ("tight", format!("m{m}"), c.graph, vec![("set".into(), c.certificate)])
        }
        Family::Torus => {
            let (i, j) = (need(a.i, "i")?, need(a.j, "j")?);
            let c = torus_subset(i, j)?;
            ("torus", format!("i{i}_j{j}"), c.graph, vec![("set".into(), c.certificate)])
        }
        Family::Z3r => {
            let r = need(a.r, "r")?;
            let Construction { graph, certificate, extra } = z3r_subset(r)?;
            let mut certs = vec![("set".to_string(), certificate)];
            certs.extend(extra.into_iter().map(|c| ("independent".to_string(), c)));
            ("z3r", format!("r{r}"), graph, certs)
        }
        Family::Hypercube => {
            let d = need(a.d, "d")?;
            if d > 14 {
                ("hypercube", format!("d{d}"), hypercube_graph(d), Vec::new())
            } else {
                let c = cfgs_subset(d)?;
                ("hypercube", format!("d{d}"), c.graph, vec![("set".into(), c.certificate)])
            }
        }
        Family::Coxeter => {
            let t = need(a.type_name.clone(), "type")?;
            let sys = coxeter_system(&t)?;
            let report = is_cube_like(&sys)?;
            let bn = match (t.as_bytes().first(), t[1..].parse::<usize>()) {
                (Some(b'B'), Ok(n @ 3..=5)) => Some(bn_dn_subset('B', n)?),
                (Some(b'D'), Ok(n @ 4..=5)) => Some(bn_dn_subset('D', n)?),
                _ => None,
            };
            match (report.witness, bn) {
                (Some(j), _) => {
                    let cert = cube_like_subset(&sys, &j)?;
                    ("coxeter", t.clone(), coxeter_cayley(&sys), vec![("set".into(), cert)])
                }
                (None, Some(c)) => ("coxeter", t.clone(), c.graph, vec![("set".into(), c.certificate)]),
                (None, None) => ("coxeter", t.clone(), coxeter_cayley(&sys), Vec::new()),
            }
        }
        Family::Levi => {
            let q = need(a.q, "q")? as usize;
            ("levi", format!("q{q}"), levi_graph(q)?, Vec::new())
        }
        Family::Polarity => {
            let q = need(a.q, "q")? as usize;
            ("polarity", format!("q{q}"), polarity_graph(q)?, Vec::new())
        }
        Family::Lps => {
            let (p, q) = (need(a.p, "p")?, need(a.q, "q")?);
            ("lps", format!("p{p}_q{q}"), lps_graph(p, q)?.graph, Vec::new())
        }
        Family::GroupCayley => {
            let spec = need(a.group.clone(), "group")?;
            let group = group_make(&spec)?;
            let conn = match (&a.conn, a.size) {
                (Some(labels), _) => {
                    let ls: Vec<&str> = labels.split(',').map(str::trim).collect();
                    ConnectionSet::from_labels(&group, &ls)?
                }
                (None, Some(size)) => random_connection_set(&group, size, need(a.seed, "seed")?)?,
                (None, None) => return Err(Error::Precondition("need --conn or --size".into())),
            };
            let name = spec.replace([':', '(', ')', ',', '^'], "_");
            ("group-cayley", name, cayley_graph(&group, &conn), Vec::new())
        }
    };
    let dir = a.out.join(family).join(&params);
    fs::create_dir_all(&dir)?;
    let stem = format!("{}_{}", family.replace('-', "_"), params);
    let gpath = dir.join(format!("{stem}.graph"));
    graph.write_file(&gpath)?;
    let mut lines = vec![format!(
        "{} n={} m={} fingerprint={}",
        graph.provenance(),
        graph.n(),
        graph.m(),
        graph.fingerprint()
    )];
    let mut ok = true;
    for (name, cert) in &certs {
        let path = dir.join(format!("{stem}.{name}.cert"));
        cert.write_file(&path)?;
        let report = verify_certificate(&graph, cert);
        ok &= report.is_valid();
        lines.push(format!("{} size={} k={} {}", path.display(), cert.vertices.len(), cert.k, report));
    }
    if a.dot {
        let hl = certs.first().map(|(_, c)| c.vertices.clone()).unwrap_or_default();
        fs::write(dir.join(format!("{stem}.dot")), graph.to_dot(&hl))?;
    }
    let summary = lines.join("\n") + "\n";
    fs::write(dir.join("summary.txt"), &summary)?;
    println!("{}", gpath.display());
    print!("{summary}");
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn solve(a: &SolveArgs) -> Result<ExitCode> {
    let g = Graph::read_file(&a.graph)?;
    let budget = SearchBudget::parse(&a.budget)?;
    let (name, res): (&str, SolveResult) = match a.parameter {
        Parameter::Sigma => ("sigma", sensitivity(&g, None, &budget)),
        Parameter::Alpha => ("alpha", independence_number(&g, &budget)),
        Parameter::Iota => {
            let k = need(a.k, "k")?;
            ("iota", iota(&g, k, &budget))
        }
        Parameter::Kappa => ("kappa", kappa_search(&g, a.dmax, &budget)?),
        Parameter::DeltaBeta => {
            let beta = Ratio::parse(&need(a.beta.clone(), "beta")?)?;
            ("delta-beta", delta_beta(&g, beta, &budget))
        }
    };
    println!("{}", res.summary());
    if let Some(w) = &res.witness {
        let dir = match &a.out {
            Some(d) => d.clone(),
            None => a.graph.parent().map(Path::to_path_buf).unwrap_or_default(),
        };
        fs::create_dir_all(&dir)?;
        let stem = a.graph.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
        let path = dir.join(format!("{stem}.{name}.cert"));
        w.write_file(&path)?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(graph: &Path, cert: &Path) -> Result<ExitCode> {
    let g = Graph::read_file(graph)?;
    let c = Certificate::read_file(cert)?;
    let report = verify_certificate(&g, &c);
    println!("{report}");
    Ok(if report.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

const COXETER_SMALL: [(&str, &str); 15] = [
    ("F4", "768"),
    ("H3", "85"),
    ("H4", "8624..9599"),
    ("E6", ">=25926"),
    ("D4", "120..122"),
    ("D5", "1004..1199"),
    ("B3", "34"),
    ("B4", "235..252"),
    ("B5", "1976..2398"),
    ("B3xI2", "98..115"),
    ("B3xI3", "150..175"),
    ("B3xI4", "200..235"),
    ("I2xI3xI3", "73..79"),
    ("I1xI2xI4", "33"),
    ("I1xI3xI4", "52"),
];

/// Published `(κ, r)` of an irreducible type.
fn reference_kappa_r(t: &str) -> (usize, usize) {
    let n: usize = t[1..].parse().unwrap_or(0);
    match &t[..1] {
        "A" => (n.div_ceil(2), n * (n + 1) / 2),
        "B" => (n.div_ceil(2), n * n),
        "D" => ((n + 1).div_ceil(2), n * (n - 1)),
        "I" => (1, n),
        _ => match t {
            "E6" => (3, 36),
            "F4" => (2, 12),
            "H3" => (2, 10),
            _ => (2, 30),
        },
    }
}

fn table(name: TableName, budget: &str) -> Result<ExitCode> {
    let budget = SearchBudget::parse(budget)?;
    match name {
        TableName::Kappa => {
            println!("type  order  kappa(ref)  kappa(diagram)  kappa(search)  r(ref)  r(roots)");
            for t in ["A3", "A4", "A5", "B3", "B4", "B5", "D4", "D5", "I5", "I8", "H3", "H4", "F4", "E6"] {
                let sys = coxeter_system(t)?;
                let (pk, pr) = reference_kappa_r(t);
                let searched = if sys.order() <= 1200 {
                    let r = kappa_search(&coxeter_cayley(&sys), 4, &budget)?;
                    format!("{} {}", r.value, r.status)
                } else {
                    "skipped (budget)".to_string()
                };
                println!(
                    "{t:<5} {:<6} {pk:<13} {:<15} {searched:<14} {pr:<9} {}",
                    sys.order(),
                    kappa_formula(&sys),
                    sys.reflections()
                );
            }
        }
        TableName::CoxeterSmall => {
            println!("group  order  kappa  k  reference  construction  computed");
            for (t, reference) in COXETER_SMALL {
                let sys = coxeter_system(t)?;
                let kappa = kappa_formula(&sys);
                let k = ceil_sqrt(kappa);
                if sys.order() > 4000 {
                    println!("{t:<9} {:<6} {kappa:<5} {k:<2} {reference:<11} -  skipped (budget)", sys.order());
                    continue;
                }
                let report = is_cube_like(&sys)?;
                let construction = match report.witness {
                    Some(j) => cube_like_subset(&sys, &j)?.vertices.len().to_string(),
                    None => "-".to_string(),
                };
                let g = coxeter_cayley(&sys);
                let res = max_low_degree_set(&g, k, &budget);
                let computed = if res.is_exact() {
                    format!("{} exact", res.value)
                } else {
                    let (lo, hi) = res.bounds();
                    format!("{lo}..{hi} {}", res.status)
                };
                println!("{t:<9} {:<6} {kappa:<5} {k:<2} {reference:<11} {construction:<13} {computed}", sys.order());
            }
        }
        TableName::SpectralLevi => {
            println!("q  lambda  sqrt(q)  (d-lambda)/2  sigma>=  sigma(ref)");
            for (q, reference) in [(2usize, "2"), (3, "2"), (4, "2"), (5, "3"), (7, "3"), (8, ">=4")] {
                let pol = polarity_graph(q)?;
                let s = ndl_summary(&pol)?;
                let b = mixing_sensitivity_bound(&pol)?;
                println!(
                    "{q}  {:.6}  {:.6}  {:.6}  {}  {reference}",
                    s.lambda,
                    (q as f64).sqrt(),
                    b.bound,
                    b.implied_sigma
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(a) => build(a),
        Command::Solve(a) => solve(a),
        Command::Verify { graph, cert } => verify(graph, cert),
        Command::Table { name, budget } => table(*name, budget),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
