use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perfectlike::bounds::{
    covering_lower_bound, packing_upper_bound, packing_upper_bound_dist2, sphere_packing_bound,
    BoundReport,
};
use perfectlike::budget::set_vertex_budget;
use perfectlike::catalog::{
    format_code, format_partition, load_named, read_code, read_partition, EMBEDDED_NAMES,
};
use perfectlike::construct::{
    coset_multifold_packing, concat_s, hamming_code, hamming_coset_partition, mds_partition_d,
    romanov_perfect, shortened_coset_partition, theorem4_code, BlockPartition,
};
use perfectlike::lengthen::{
    classify_h33_partitions, lengthen_code, lengthen_partition, search_partitions,
    LengthenCertificate, PartitionVerdict, SearchBudget,
};
use perfectlike::space::{puncture, shorten, Ambient, AnyCode, OracleCode, Partition};
use perfectlike::spectra::{distance_distribution, dual_distribution, lemma_check};
use perfectlike::verify::{
    is_completely_regular, is_mds, is_multifold_packing, is_multiple_covering, is_one_perfect,
};
use perfectlike::{Error, Result};
use perfectlike_cli::repro;

#[derive(Parser)]
#[command(name = "perfectlike", version, about = "Workbench for q-ary shortened-1-perfect-like codes")]
struct Cli {
    /// Worker threads for parallel verification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Vertex budget for full-space scans (overrides PERFECTLIKE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tab-separated output for tables.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build codes and partitions.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a code from a file.
    Verify(VerifyArgs),
    /// Packing and covering bounds.
    Bounds(BoundsArgs),
    /// Distance and dual distributions.
    Spectra(SpectraArgs),
    /// Lengthenability decisions and searches.
    #[command(subcommand)]
    Lengthen(Lengthen),
    /// Embedded data.
    #[command(subcommand)]
    Catalog(Catalog),
    /// Run acceptance criteria: `all` or a list of numbers.
    Repro {
        #[arg(default_value = "all")]
        which: Vec<String>,
    },
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// 1-perfect Hamming code of redundancy m.
    Hamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Shorten a code file, or the Hamming code when no input is given.
    Shorten {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        q: Option<u32>,
        #[arg(long, required_unless_present = "input")]
        m: Option<u32>,
        /// 1-based coordinate.
        #[arg(long, default_value_t = 1)]
        position: u32,
        #[arg(long, default_value_t = 0)]
        symbol: u8,
        #[command(flatten)]
        out: Output,
    },
    /// Delete one coordinate of a code file (multiset result).
    Puncture {
        #[arg(long)]
        input: PathBuf,
        /// 1-based coordinate.
        #[arg(long)]
        position: u32,
        #[command(flatten)]
        out: Output,
    },
    /// λ cosets of the shortened Hamming code in its punctured space.
    Cosetpack {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        lambda: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Partition of the zero-sum code into distance-3 classes.
    Dpart {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// 1-perfect code from Hamming cosets of redundancy m−1 and D-classes of redundancy m.
    Romanov {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Concatenation of D-classes with a partition into shortened-perfect-like codes.
    Concat {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        /// Partition file; defaults to the shortened Hamming cosets of redundancy m−1.
        #[arg(long, conflicts_with = "name")]
        partition: Option<PathBuf>,
        /// Embedded partition name.
        #[arg(long)]
        name: Option<String>,
        /// Emit a JSON descriptor instead of the word list.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Recursive 4-ary family; m=3 gives length 20.
    Theorem4 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Packing,
    Covering,
    Perfect,
    Cr,
    Mds,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: VerifyKind,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, required_if_eq("kind", "packing"))]
    lambda: Option<u64>,
    #[arg(long, required_if_eq("kind", "covering"))]
    mu: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Packing,
    Dist2,
    Sphere,
    Covering,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: u64,
    /// Length; ignored with --table.
    #[arg(long, required_unless_present = "table")]
    n: Option<u64>,
    #[arg(long, required_unless_present = "mu")]
    lambda: Option<u64>,
    #[arg(long)]
    mu: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<BoundKind>,
    /// Tabulate all lengths up to this value.
    #[arg(long)]
    table: Option<u64>,
}

#[derive(Args)]
struct SpectraArgs {
    #[arg(long)]
    input: PathBuf,
    /// Also evaluate the A0/A1/A2 inequality for this λ.
    #[arg(long)]
    lambda: Option<u64>,
}

#[derive(Subcommand)]
enum Lengthen {
    /// Decide whether a code is a shortened 1-perfect code.
    Code {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a partition lengthens to a partition into 1-perfect codes.
    Partition {
        #[arg(long, required_unless_present = "name", conflicts_with = "name")]
        input: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Classify partitions of H(3,3) into (3,3,3) codes.
    ClassifyH33,
    /// Random search for partitions of H(q,q) into MDS codes.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = SearchBudget::default().partitions)]
        partitions: usize,
        #[arg(long, default_value_t = SearchBudget::default().nodes)]
        nodes: u64,
        #[arg(long, default_value_t = SearchBudget::default().nodes_per_restart)]
        restart_nodes: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Catalog {
    /// Names of embedded partitions.
    List,
    /// Write an embedded partition in the partition file format.
    Export {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.budget {
        set_vertex_budget(b);
    }
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(Error::from),
            }
        }
    }
}

fn oracle_json(code: &OracleCode) -> String {
    let construction: serde_json::Map<String, serde_json::Value> = code
        .construction()
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let value = serde_json::json!({
        "q": code.q(),
        "n": code.n(),
        "size": code.size().to_string(),
        "min_distance": code.declared_min_distance(),
        "construction": construction,
    });
    format!("{}\n", serde_json::to_string_pretty(&value).expect("plain JSON"))
}

fn named_or_file(name: &Option<String>, path: &Option<PathBuf>) -> Result<Option<Partition>> {
    match (name, path) {
        (Some(n), _) => load_named(n).map(Some),
        (None, Some(p)) => read_partition(p).map(Some),
        (None, None) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Construct(c) => construct(c),
        Command::Verify(v) => verify(v),
        Command::Bounds(b) => bounds(b, cli.tsv),
        Command::Spectra(s) => spectra(s, cli.tsv),
        Command::Lengthen(l) => lengthen(l, cli.seed),
        Command::Catalog(c) => catalog(c),
        Command::Repro { which } => {
            let seed = cli.seed.unwrap_or(repro::DEFAULT_SEED);
            let ids: Vec<u32> = if which.iter().any(|w| w == "all") {
                repro::CRITERIA.iter().map(|&(id, _)| id).collect()
            } else {
                which
                    .iter()
                    .map(|w| {
                        w.parse::<u32>()
                            .ok()
                            .filter(|id| (1..=12).contains(id))
                            .ok_or_else(|| Error::Parameter(format!("unknown criterion {w:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            let outcomes: Vec<_> = ids.iter().map(|&id| repro::run_criterion(id, seed)).collect();
            print!("{}", repro::render(&outcomes, cli.tsv));
            Ok(outcomes.iter().all(|o| o.pass))
        }
    }
}

fn construct(c: &Construct) -> Result<bool> {
    match c {
        Construct::Hamming { q, m, out } => {
            emit(out, &format_code(&hamming_code(*q, *m)?.materialize()?))?;
        }
        Construct::Shorten {
            input,
            q,
            m,
            position,
            symbol,
            out,
        } => {
            let code = match input {
                Some(p) => read_code(p)?,
                None => hamming_code(q.unwrap_or(0), m.unwrap_or(0))?.materialize()?,
            };
            emit(out, &format_code(&shorten(&code, *position, *symbol)?))?;
        }
        Construct::Puncture { input, position, out } => {
            emit(out, &format_code(&puncture(&read_code(input)?, *position)?))?;
        }
        Construct::Cosetpack { q, m, lambda, out } => {
            emit(out, &format_code(&coset_multifold_packing(*q, *m, *lambda)?))?;
        }
        Construct::Dpart { q, m, out } => {
            emit(out, &format_partition(&mds_partition_d(*q, *m)?.to_partition()?))?;
        }
        Construct::Romanov { q, m, out } => {
            let c = hamming_coset_partition(*q, m.saturating_sub(1))?;
            let d = mds_partition_d(*q, *m)?;
            emit(out, &format_code(&romanov_perfect(&c, &d)?))?;
        }
        Construct::Concat {
            q,
            m,
            partition,
            name,
            oracle,
            out,
        } => {
            let b = match named_or_file(name, partition)? {
                Some(p) => p,
                None => shortened_coset_partition(*q, m.saturating_sub(1))?,
            };
            let s = concat_s(BlockPartition::Explicit(Arc::new(b)), Arc::new(mds_partition_d(*q, *m)?))?;
            if *oracle {
                let desc = vec![
                    ("construction".to_string(), "concatenation".to_string()),
                    ("m".to_string(), m.to_string()),
                ];
                emit(out, &oracle_json(&s.oracle(desc)))?;
            } else {
                emit(out, &format_code(&s.materialize()?))?;
            }
        }
        Construct::Theorem4 { m, oracle, out } => {
            let t = theorem4_code(*m)?;
            if *oracle {
                emit(out, &oracle_json(&t.oracle()))?;
            } else {
                match t.code().to_code()? {
                    AnyCode::Explicit(code) => emit(out, &format_code(&code))?,
                    AnyCode::Oracle(o) => emit(out, &oracle_json(&o))?,
                }
            }
        }
    }
    Ok(true)
}

fn verify(v: &VerifyArgs) -> Result<bool> {
    let code = read_code(&v.input)?;
    let (n, size, d) = code.parameters();
    let d = d.map_or("-".into(), |d| d.to_string());
    println!("code ({n},{size},{d})_{}", code.q());
    let holds = match v.kind {
        VerifyKind::Packing => {
            let lambda = v.lambda.unwrap_or(1);
            let r = is_multifold_packing(&code, lambda)?;
            println!("{lambda}-fold packing: {} (max cover count {})", r.holds, r.max_count);
            if let Some(w) = &r.witness {
                eprintln!("witness: {w}");
            }
            r.holds
        }
        VerifyKind::Covering => {
            let mu = v.mu.unwrap_or(1);
            let r = is_multiple_covering(&code, mu)?;
            println!("{mu}-fold covering: {} (min cover count {})", r.holds, r.min_count);
            if let Some(w) = &r.witness {
                eprintln!("witness: {w}");
            }
            r.holds
        }
        VerifyKind::Perfect => {
            let r = is_one_perfect(&code)?;
            println!("1-perfect: {} (size matches: {})", r.holds, r.size_matches);
            if let Some(w) = &r.packing.witness {
                eprintln!("witness: {w}");
            } else if !r.holds {
                if let Some(w) = is_multiple_covering(&code, 1)?.witness {
                    eprintln!("witness: {w}");
                }
            }
            r.holds
        }
        VerifyKind::Cr => {
            let r = is_completely_regular(&code)?;
            println!("completely regular: {} (covering radius {})", r.holds, r.covering_radius);
            if let Some(rows) = &r.quotient {
                for row in rows {
                    println!(
                        "  {}",
                        row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
            }
            if let Some(w) = &r.witness {
                eprintln!("witness: {} and {} in the same shell disagree", w.0, w.1);
            }
            r.holds
        }
        VerifyKind::Mds => {
            let r = is_mds(&code)?;
            println!("MDS: {r}");
            r
        }
    };
    Ok(holds)
}

fn bound_for(kind: BoundKind, q: u64, n: u64, mult: u64) -> BoundReport {
    match kind {
        BoundKind::Packing => packing_upper_bound(q, n, mult),
        BoundKind::Dist2 => packing_upper_bound_dist2(q, n, mult),
        BoundKind::Sphere => sphere_packing_bound(q, n, mult),
        BoundKind::Covering => covering_lower_bound(q, n, mult),
    }
}

fn bounds(b: &BoundsArgs, tsv: bool) -> Result<bool> {
    let kind = b.kind.unwrap_or(if b.lambda.is_none() {
        BoundKind::Covering
    } else {
        BoundKind::Packing
    });
    let mult = match kind {
        BoundKind::Covering => b.mu.or(b.lambda),
        _ => b.lambda,
    }
    .ok_or_else(|| Error::Parameter("missing --lambda or --mu".into()))?;
    match (b.table, b.n) {
        (Some(nmax), _) => {
            if tsv {
                println!("n\tbound");
            } else {
                println!("{:>6}  bound", "n");
            }
            for n in 1..=nmax {
                let r = bound_for(kind, b.q, n, mult);
                if !r.is_applicable() {
                    continue;
                }
                if tsv {
                    println!("{n}\t{r}");
                } else {
                    println!("{n:>6}  {r}");
                }
            }
        }
        (None, Some(n)) => {
            let r = bound_for(kind, b.q, n, mult);
            println!("{r}");
            return Ok(r.is_applicable());
        }
        (None, None) => return Err(Error::Parameter("missing --n".into())),
    }
    Ok(true)
}

fn spectra(s: &SpectraArgs, tsv: bool) -> Result<bool> {
    let code = read_code(&s.input)?;
    let dist = distance_distribution(&code)?;
    let dual = dual_distribution(&dist, code.len())?;
    let row = |v: &[num_rational::BigRational]| {
        let cells: Vec<String> = v.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect();
        if tsv {
            cells.join("\t")
        } else {
            v.iter().map(|x| format!("{x:>8}")).collect::<Vec<_>>().join(" ")
        }
    };
    if tsv {
        println!("A\t{}", row(&dist.a));
        println!("B\t{}", row(&dual.b));
    } else {
        println!("A  {}", row(&dist.a));
        println!("B  {}", row(&dual.b));
    }
    if let Some(lambda) = s.lambda {
        let r = lemma_check(&dist, code.q(), code.n(), lambda)?;
        println!(
            "inequality (λ={lambda}): lhs {}, rhs {}, {:?}, equality {}",
            r.lhs,
            r.rhs_even.as_ref().filter(|_| lambda % 2 == 0).unwrap_or(&r.rhs_odd),
            r.status,
            r.equality
        );
    }
    Ok(true)
}

fn lengthen(l: &Lengthen, seed: Option<u64>) -> Result<bool> {
    match l {
        Lengthen::Code { input, out } => {
            let code = read_code(input)?;
            match lengthen_code(&code)? {
                LengthenCertificate::Lengthenable(cert) => {
                    println!("LENGTHENABLE");
                    for (k, part) in cert.parts.iter().enumerate() {
                        println!("# shell part {}: {} words", k + 1, part.len());
                    }
                    let perfect = is_one_perfect(&cert.code)?.holds;
                    println!("# lengthened code verified 1-perfect: {perfect}");
                    match &out.out {
                        Some(_) => emit(out, &format_code(&cert.code))?,
                        None => print!("{}", format_code(&cert.code)),
                    }
                }
                LengthenCertificate::Not(obs) => println!("NOT LENGTHENABLE: {obs}"),
            }
        }
        Lengthen::Partition { input, name, out } => {
            let p = named_or_file(name, input)?
                .ok_or_else(|| Error::Parameter("missing --input or --name".into()))?;
            print_partition_verdict(&p, &lengthen_partition(&p)?, out)?;
        }
        Lengthen::ClassifyH33 => {
            let h = classify_h33_partitions()?;
            println!("codes {}", h.code_count);
            println!("partitions {}", h.raw_count);
            println!("classes {}", h.classes.len());
            for (k, class) in h.classes.iter().enumerate() {
                let verdict = if class.verdict.is_sat() { "SAT" } else { "UNSAT" };
                println!("# class {k}: {} partitions, {verdict}", class.members);
                print!("{}", format_partition(&class.representative));
            }
        }
        Lengthen::Search {
            q,
            partitions,
            nodes,
            restart_nodes,
            out,
        } => {
            let seed = seed.ok_or_else(|| Error::Parameter("search requires --seed".into()))?;
            let budget = SearchBudget {
                partitions: *partitions,
                nodes: *nodes,
                nodes_per_restart: *restart_nodes,
            };
            let mut text = String::new();
            let summary = search_partitions(*q, seed, budget, |f| {
                let verdict = match &f.verdict {
                    Some(PartitionVerdict::Sat(_)) => "SAT".to_string(),
                    Some(PartitionVerdict::Unsat(core)) => {
                        format!("UNSAT core {{{}}}", core.labels.join(", "))
                    }
                    None => "undecided".to_string(),
                };
                text.push_str(&format!("# partition {}: {verdict}\n", f.index));
                text.push_str(&format_partition(&f.partition));
            })?;
            emit(out, &text)?;
            eprintln!(
                "pool {} codes; {} partitions: {} lengthenable, {} not, {} undecided; {} nodes{}",
                summary.pool_size,
                summary.partitions,
                summary.lengthenable,
                summary.non_lengthenable,
                summary.undecided,
                summary.nodes,
                if summary.budget_exhausted { "; budget exhausted" } else { "" }
            );
        }
    }
    Ok(true)
}

fn print_partition_verdict(p: &Partition, verdict: &PartitionVerdict, out: &Output) -> Result<()> {
    match verdict {
        PartitionVerdict::Sat(l) => {
            println!("SAT");
            for (label, parts) in p.labels().iter().zip(&l.parts) {
                let sizes: Vec<String> = parts.iter().map(|c| c.len().to_string()).collect();
                println!("# class {label}: shell parts of sizes {}", sizes.join(", "));
            }
            match &out.out {
                Some(_) => emit(out, &format_partition(&l.partition))?,
                None => print!("{}", format_partition(&l.partition)),
            }
        }
        PartitionVerdict::Unsat(core) => {
            println!("UNSAT");
            println!("conflict core: {} classes {{{}}} ({:?})", core.classes.len(), core.labels.join(", "), core.reason);
            for w in &core.witnesses {
                println!(
                    "# class {} part {} meets class {} part {} at {}",
                    p.labels()[w.class_a],
                    w.part_a + 1,
                    p.labels()[w.class_b],
                    w.part_b + 1,
                    w.word
                );
            }
            let classes: Vec<_> = core.classes.iter().map(|&i| p.classes()[i].clone()).collect();
            let mut union = classes[0].clone();
            for c in &classes[1..] {
                union = union.union(c)?;
            }
            let cp = Partition::new(Ambient::Code(union), classes, Some(core.labels.clone()))?;
            emit(out, &format_partition(&cp))?;
        }
    }
    Ok(())
}

fn catalog(c: &Catalog) -> Result<bool> {
    match c {
        Catalog::List => {
            for name in EMBEDDED_NAMES {
                println!("{name}");
            }
        }
        Catalog::Export { name, out } => emit(out, &format_partition(&load_named(name)?))?,
    }
    Ok(true)
}
