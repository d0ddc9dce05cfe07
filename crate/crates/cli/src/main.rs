use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vlplus::branching::{branch_orthogonal, branch_sublattice, part_characters, verify_branch, BranchList};
use vlplus::certifier::{self, Certifier, ExtCertificate, Verdict};
use vlplus::convention::{CocycleNormalization, Convention, SqrtBranch};
use vlplus::fusion::{fusion_dim, rank1_fusion, FusionAnswer, NoSigns, SignOracle, SignTable};
use vlplus::io::{gram_to_json, parse_gram};
use vlplus::lattice::orthogonal_sublattice;
use vlplus::qseries::character;
use vlplus::{EvenLattice, ModuleLabel, QSeries, SectorRegistry};

#[derive(Parser)]
#[command(name = "vlplus", version, about = "Modules, characters, fusion and rationality certificates for V_L^+")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Gram matrix file (JSON).
    #[arg(long, global = true, env = "VLPLUS_GRAM")]
    gram: Option<PathBuf>,

    /// Truncation order: series keep exponents below this.
    #[arg(long, global = true, env = "VLPLUS_ORDER", default_value_t = 12)]
    order: u32,

    #[arg(long, global = true, env = "VLPLUS_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "VLPLUS_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Sign table for fusion queries (JSON).
    #[arg(long, global = true, env = "VLPLUS_SIGNS")]
    signs: Option<PathBuf>,

    #[arg(long, global = true, env = "VLPLUS_COCYCLE", value_enum, default_value_t = Cocycle::Lower)]
    cocycle: Cocycle,

    #[arg(long, global = true, env = "VLPLUS_SQRT", value_enum, default_value_t = Sqrt::Principal)]
    sqrt: Sqrt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cocycle {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sqrt {
    Principal,
    Alternate,
}

#[derive(Clone, Copy, ValueEnum)]
enum SublatticeChoice {
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice report.
    Analyze,
    /// Irreducible modules with weights and top levels.
    Modules,
    /// Characters, one module or all.
    Char {
        #[arg(long)]
        module: Option<String>,
    },
    /// Fusion rule of type (M3; M1 M2).
    Fusion {
        labels: Vec<String>,
        /// JSON list of [M1, M2, M3] triples.
        #[arg(long, conflicts_with = "labels")]
        batch: Option<PathBuf>,
    },
    /// Branching rules with character verification.
    Decompose {
        #[arg(long)]
        module: Option<String>,
        /// Restrict to V_{L1}^+ for an automatically chosen orthogonal sublattice.
        #[arg(long, value_enum)]
        sublattice: Option<SublatticeChoice>,
    },
    /// Rationality certificate.
    Certify {
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check an existing certificate instead.
        #[arg(long, conflicts_with = "out")]
        verify: Option<PathBuf>,
    },
}

enum Failure {
    Io(String),
    Invalid(String),
    Incomplete(String),
}

impl From<vlplus::Error> for Failure {
    fn from(e: vlplus::Error) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

impl Cli {
    fn convention(&self) -> Convention {
        Convention {
            cocycle: match self.cocycle {
                Cocycle::Lower => CocycleNormalization::Lower,
                Cocycle::Upper => CocycleNormalization::Upper,
            },
            sqrt: match self.sqrt {
                Sqrt::Principal => SqrtBranch::Principal,
                Sqrt::Alternate => SqrtBranch::Alternate,
            },
        }
    }

    fn lattice(&self) -> Result<EvenLattice, Failure> {
        let path = self.gram.as_ref().ok_or_else(|| Failure::Invalid("--gram is required".into()))?;
        Ok(parse_gram(&read(path)?)?)
    }

    fn registry(&self) -> Result<SectorRegistry, Failure> {
        Ok(SectorRegistry::with_convention(&self.lattice()?, self.convention()))
    }

    fn tsv(&self) -> bool {
        matches!(self.format, Format::Tsv)
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn analyze(cli: &Cli) -> Outcome {
    let reg = cli.registry()?;
    let l = reg.lattice();
    let disc = reg.discriminant();
    let l1 = orthogonal_sublattice(l);
    let factors: Vec<String> = disc.invariant_factors.iter().map(ToString::to_string).collect();
    let zhu = reg.zhu_block_report();
    if cli.tsv() {
        let norms: Vec<String> = l1.norms.iter().map(ToString::to_string).collect();
        return Ok(format!(
            "rank\t{}\ndet\t{}\ndiscriminant\t{}\nnorm2_vectors\t{}\nr2\t{}\nmodules\t{}\nsublattice_norms\t{}\nsublattice_index\t{}\n",
            l.rank(),
            l.det(),
            if factors.is_empty() { "trivial".to_string() } else { factors.iter().map(|f| format!("Z/{f}")).collect::<Vec<_>>().join(" x ") },
            reg.norm2_count(),
            reg.mod_two().r2,
            reg.labels().len(),
            norms.join(","),
            l1.index,
        ));
    }
    Ok(pretty(&json!({
        "gram": gram_to_json(l),
        "rank": l.rank(),
        "det": l.det().to_string(),
        "discriminant": factors,
        "discriminant_order": disc.order.to_string(),
        "norm2_vectors": reg.norm2_count(),
        "r2": reg.mod_two().r2,
        "dim_t": reg.dim_t(),
        "modules": reg.labels().len(),
        "orthogonal_sublattice": {
            "basis": l1.basis.iter().map(|b| b.0.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "norms": l1.norms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "index": l1.index.to_string(),
        },
        "zhu": zhu,
    })))
}

fn modules(cli: &Cli) -> Outcome {
    let reg = cli.registry()?;
    let mut rows = Vec::new();
    let mut tsv = String::from("label\tkind\tlowest_weight\ttop_dimension\tcontragredient\n");
    for l in reg.labels() {
        let w = reg.lowest_weight(l)?;
        let t = reg.top_level_dimension(l)?;
        let c = reg.contragredient(l)?;
        tsv.push_str(&format!("{l}\t{}\t{w}\t{t}\t{c}\n", l.kind()));
        rows.push(json!({
            "label": l, "kind": l.kind(), "lowest_weight": w.to_string(),
            "top_dimension": t, "contragredient": c,
        }));
    }
    Ok(if cli.tsv() { tsv } else { pretty(&Value::Array(rows)) })
}

fn series_json(label: &ModuleLabel, s: &QSeries) -> Value {
    let terms: Vec<Value> = s.terms().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect();
    json!({ "module": label, "order": s.order().to_string(), "terms": terms })
}

fn chars(cli: &Cli, module: Option<&str>) -> Outcome {
    let reg = cli.registry()?;
    let labels = match module {
        Some(m) => vec![reg.parse_label(m)?],
        None => reg.labels().to_vec(),
    };
    let mut out = String::new();
    let mut rows = Vec::new();
    for l in &labels {
        let s = character(&reg, l, cli.order)?;
        if labels.len() > 1 {
            out.push_str(&format!("# {l}\n"));
        }
        out.push_str(&s.to_string());
        rows.push(series_json(l, &s));
    }
    Ok(if cli.tsv() {
        out
    } else if module.is_some() {
        pretty(&rows[0])
    } else {
        pretty(&Value::Array(rows))
    })
}

fn fusion(cli: &Cli, labels: &[String], batch: Option<&Path>) -> Outcome {
    let reg = cli.registry()?;
    let oracle: Box<dyn SignOracle> = match &cli.signs {
        Some(p) => Box::new(SignTable::from_json(reg.lattice(), &read(p)?)?),
        None => Box::new(NoSigns),
    };
    let triples: Vec<Vec<String>> = match batch {
        Some(p) => serde_json::from_str(&read(p)?)
            .map_err(|e| Failure::Invalid(format!("malformed input: batch must be a JSON list of triples: {e}")))?,
        None => vec![labels.to_vec()],
    };
    let rank_one = reg.rank() == 1;
    let half = reg.lattice().gram()[0][0].clone() / 2u32;
    let mut rows = Vec::new();
    let mut tsv = String::new();
    for t in &triples {
        if t.len() != 3 {
            return Err(Failure::Invalid(format!("a fusion query needs three labels, got {}", t.len())));
        }
        let m: Vec<ModuleLabel> = t.iter().map(|s| reg.parse_label(s)).collect::<Result<_, _>>()?;
        let answer: FusionAnswer = if rank_one && m[0].is_vacuum() {
            let k = u32::try_from(&half).map_err(|_| Failure::Invalid("norm too large".into()))?;
            rank1_fusion(k, &m[0], &m[1], &m[2])?
        } else {
            fusion_dim(&reg, &m[0], &m[1], &m[2], oracle.as_ref())?
        };
        tsv.push_str(&format!("{}\t{}\t{}\t{answer}\n", m[0], m[1], m[2]));
        rows.push(json!({ "m1": m[0], "m2": m[1], "m3": m[2], "answer": answer }));
    }
    Ok(if cli.tsv() {
        tsv
    } else if batch.is_none() {
        pretty(&rows[0])
    } else {
        pretty(&Value::Array(rows))
    })
}

fn branch_json(list: &BranchList, ok: bool, n: u32) -> Result<Value, Failure> {
    let chars = part_characters(list, n)?;
    let parts: Vec<Value> = list
        .parts
        .iter()
        .zip(&chars)
        .map(|(p, c)| {
            let lead = c.leading_term().map(|(e, _)| e.to_string());
            json!({ "part": p.to_string(), "lowest_weight": lead })
        })
        .collect();
    let sub = match &list.subalgebra {
        vlplus::branching::Subalgebra::Orthogonal { norms } => json!({
            "kind": "orthogonal",
            "norms": norms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        vlplus::branching::Subalgebra::Sublattice(s) => json!({
            "kind": "sublattice",
            "basis": s.basis.iter().map(|b| b.0.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "norms": s.norms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "index": s.index.to_string(),
        }),
    };
    Ok(json!({ "parent": list.parent, "subalgebra": sub, "parts": parts, "verified": ok, "order": n }))
}

fn decompose(cli: &Cli, module: Option<&str>, sublattice: bool) -> Outcome {
    let reg = cli.registry()?;
    let labels = match module {
        Some(m) => vec![reg.parse_label(m)?],
        None => reg.labels().to_vec(),
    };
    let use_sub = sublattice || !reg.lattice().is_diagonal();
    let l1 = orthogonal_sublattice(reg.lattice());
    let mut rows = Vec::new();
    let mut tsv = String::new();
    let mut all_ok = true;
    for l in &labels {
        let list = if use_sub { branch_sublattice(&reg, &l1, l)? } else { branch_orthogonal(&reg, l)? };
        let ok = verify_branch(&list, cli.order);
        all_ok &= ok;
        let parts: Vec<String> = list.parts.iter().map(ToString::to_string).collect();
        tsv.push_str(&format!("{l}\t{}\t{}\n", if ok { "ok" } else { "FAILED" }, parts.join(" + ")));
        rows.push(branch_json(&list, ok, cli.order)?);
    }
    let text = if cli.tsv() { tsv } else { pretty(&Value::Array(rows)) };
    if all_ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Incomplete("a branching failed character verification".into()))
    }
}

fn certify(cli: &Cli, out: Option<&Path>, verify: Option<&Path>) -> Outcome {
    if let Some(path) = verify {
        let cert = ExtCertificate::from_json(&read(path)?)?;
        let problems = certifier::verify(&cert)?;
        if !problems.is_empty() {
            return Err(Failure::Incomplete(format!("certificate does not verify:\n{}", problems.join("\n"))));
        }
        if cert.verdict == Verdict::Incomplete {
            return Err(Failure::Incomplete(format!("certificate verifies but is incomplete ({} pairs)", cert.unknown.len())));
        }
        return Ok(format!("verified: {} pairs, verdict Rational\n", cert.pairs.len()));
    }
    let cert = Certifier::new(cli.registry()?)?.certify()?;
    let text = if cli.tsv() {
        let mut s = String::new();
        for p in &cert.pairs {
            let name = p.justification.as_ref().map_or_else(|| "none".to_string(), |j| j.name());
            s.push_str(&format!("{}\t{}\t{name}\n", p.m1, p.m2));
        }
        s.push_str(&format!("verdict\t{:?}\n", cert.verdict));
        s
    } else {
        cert.to_json() + "\n"
    };
    let text = match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            format!("{:?}: {} pairs, {} unknown\n", cert.verdict, cert.pairs.len(), cert.unknown.len())
        }
        None => text,
    };
    match cert.verdict {
        Verdict::Rational => Ok(text),
        Verdict::Incomplete => {
            print!("{text}");
            Err(Failure::Incomplete(format!("{} pairs have no justification", cert.unknown.len())))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.order == 0 {
        return Err(Failure::Invalid("truncation order must be at least 1".into()));
    }
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    match &cli.command {
        Command::Analyze => analyze(cli),
        Command::Modules => modules(cli),
        Command::Char { module } => chars(cli, module.as_deref()),
        Command::Fusion { labels, batch } => fusion(cli, labels, batch.as_deref()),
        Command::Decompose { module, sublattice } => decompose(cli, module.as_deref(), sublattice.is_some()),
        Command::Certify { out, verify } => certify(cli, out.as_deref(), verify.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Incomplete(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}
