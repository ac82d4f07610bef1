use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nearperfect::classify::{self, ClassificationReport};
use nearperfect::families::{self, CampaignHit, CampaignResult, FamilyId, FamilyRecord};
use nearperfect::sieve::{self, RangeSpec, ScanKind};

#[derive(Parser)]
#[command(name = "nearperfect", version, about = "Near-perfect number taxonomy: classify, scan, generate families, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single integer with witnesses
    Classify {
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Scan a range [from, to) for a classification kind
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// perfect | abundant | deficient | quasiperfect | 1-near-perfect |
        /// 2-near-perfect | pseudoperfect | weird | strongly-pseudoperfect |
        /// strong-2np
        #[arg(long)]
        kind: String,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Generate members of a parametric family
    Families {
        /// t1f1..t1f4 | ps1..ps3 | s2np
        #[arg(long)]
        family: String,
        /// Bound on k for theorem-1 families
        #[arg(long)]
        k_max: Option<u32>,
        /// Bound on a for the s2np family
        #[arg(long)]
        a_max: Option<u32>,
        /// Bound on t (ps1) or the Mersenne exponent (ps2/ps3)
        #[arg(long)]
        p_max: Option<u32>,
        /// Miller-Rabin rounds for members past 2^64
        #[arg(long, default_value_t = 40)]
        rounds: u32,
        /// Seed for the probabilistic-primality base generator
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run an exhaustive verification campaign
    Verify {
        /// theorem1 | theorem2 | strong-table | lemma4 | lemma17
        campaign: String,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        a_max: Option<u32>,
        #[arg(long)]
        b_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn max_range() -> u64 {
    std::env::var("NEARPERFECT_MAX_RANGE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(sieve::DEFAULT_MAX_RANGE)
}

fn witnesses_json(r: &ClassificationReport) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    for w in &r.near_perfect {
        out.push(json!({ "type": "omitted", "omitted": w.omitted }));
    }
    if let Some(set) = &r.pseudo_omitted {
        if r.near_perfect.iter().all(|w| &w.omitted != set) {
            out.push(json!({ "type": "omitted", "omitted": set }));
        }
    }
    for s in &r.strong_pairs {
        let (d1, d2) = s.pair();
        out.push(json!({ "type": "strong", "d1": d1, "d2": d2 }));
    }
    out
}

fn report_json(r: &ClassificationReport) -> serde_json::Value {
    json!({
        "n": r.n,
        "sigma": r.sigma,
        "abundance": r.abundance.to_string(),
        "labels": r.labels.iter().map(|l| l.as_str()).collect::<Vec<_>>(),
        "witnesses": witnesses_json(r),
    })
}

fn semi(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn report_csv_row(r: &ClassificationReport) -> String {
    let labels = r
        .labels
        .iter()
        .map(|l| l.as_str())
        .collect::<Vec<_>>()
        .join(";");
    let omitted = r
        .near_perfect
        .first()
        .map(|w| semi(&w.omitted))
        .or_else(|| r.pseudo_omitted.as_ref().map(|s| semi(s)))
        .unwrap_or_default();
    format!("{},{},{},{},{}", r.n, r.sigma, r.abundance, labels, omitted)
}

fn print_reports(command: &str, params: serde_json::Value, reports: &[ClassificationReport], elapsed_ms: u64, format: Format) {
    match format {
        Format::Json => {
            let doc = json!({
                "command": command,
                "params": params,
                "hits": reports.iter().map(report_json).collect::<Vec<_>>(),
                "mismatches": [],
                "elapsed_ms": elapsed_ms,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("n,sigma,abundance,labels,omitted");
            for r in reports {
                println!("{}", report_csv_row(r));
            }
        }
        Format::Table => {
            for r in reports {
                let labels = r
                    .labels
                    .iter()
                    .map(|l| l.as_str())
                    .collect::<Vec<_>>()
                    .join(", ");
                println!("n = {}  sigma = {}  abundance = {}", r.n, r.sigma, r.abundance);
                println!("  labels: {labels}");
                for w in &r.near_perfect {
                    println!("  omitted divisors ({}): {}", w.omitted.len(), semi(&w.omitted));
                }
                if let Some(set) = &r.pseudo_omitted {
                    println!("  pseudoperfect omitted set: {{{}}}", semi(set));
                }
                for s in &r.strong_pairs {
                    let (d1, d2) = s.pair();
                    println!("  strong pair: ({d1}, {d2})");
                }
                if let Some(set) = &r.strong_pseudo_set {
                    println!("  symmetric divisor set summing to 2n: {{{}}}", semi(set));
                } else if !r.strong_pseudo_checked {
                    println!("  strongly-pseudoperfect: undetermined (budget)");
                }
            }
        }
    }
}

fn family_csv_row(r: &FamilyRecord) -> String {
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{:?}",
        r.family.as_str(),
        r.k,
        opt(r.a),
        opt(r.b),
        r.p,
        r.n,
        r.omitted
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        r.verification
    )
}

fn print_families(params: serde_json::Value, records: &[FamilyRecord], elapsed_ms: u64, seed: u64, format: Format) {
    match format {
        Format::Json => {
            let doc = json!({
                "command": "families",
                "params": params,
                "hits": records,
                "mismatches": [],
                "elapsed_ms": elapsed_ms,
                "seed": seed,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!("family,k,a,b,p,n,omitted,verification");
            for r in records {
                println!("{}", family_csv_row(r));
            }
        }
        Format::Table => {
            for r in records {
                let params: Vec<String> = [("k", Some(r.k)), ("a", r.a), ("b", r.b)]
                    .iter()
                    .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
                    .collect();
                println!(
                    "{}  {}  p = {}  n = {}  omitted = {{{}}}  [{:?}]",
                    r.family.as_str(),
                    params.join(" "),
                    r.p,
                    r.n,
                    r.omitted
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join("; "),
                    r.verification
                );
            }
        }
    }
}

fn campaign_csv(result: &CampaignResult) -> String {
    let mut out = String::new();
    match result.name.as_str() {
        "strong-table" => {
            out.push_str("n,sigma,d1,d2\n");
            for h in &result.hits {
                if let CampaignHit::StrongRow { n, sigma, d1, d2 } = h {
                    out.push_str(&format!("{n},{sigma},{d1},{d2}\n"));
                }
            }
        }
        "lemma4" => {
            out.push_str("k,a,discriminant,root\n");
            for h in &result.hits {
                if let CampaignHit::Square { k, a, discriminant, root } = h {
                    out.push_str(&format!("{k},{a},{discriminant},{root}\n"));
                }
            }
        }
        "lemma17" => {
            out.push_str("a,b\n");
            for h in &result.hits {
                if let CampaignHit::Divisibility { a, b } = h {
                    out.push_str(&format!("{a},{b}\n"));
                }
            }
        }
        _ => {
            out.push_str("n,omitted,family\n");
            for h in &result.hits {
                if let CampaignHit::TwoNearPerfect { n, omitted, family } = h {
                    out.push_str(&format!(
                        "{n},{},{}\n",
                        semi(omitted),
                        family.map(|f| f.as_str()).unwrap_or("")
                    ));
                }
            }
        }
    }
    out
}

fn print_campaign(result: &CampaignResult, format: Format) {
    match format {
        Format::Json => {
            let doc = json!({
                "command": "verify",
                "params": result.params,
                "name": result.name,
                "hits": result.hits,
                "mismatches": result.mismatches,
                "elapsed_ms": result.elapsed_ms,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => print!("{}", campaign_csv(result)),
        Format::Table => {
            println!(
                "campaign {}: {} hits, {} mismatches, {} ms",
                result.name,
                result.hits.len(),
                result.mismatches.len(),
                result.elapsed_ms
            );
            for h in &result.hits {
                match h {
                    CampaignHit::TwoNearPerfect { n, omitted, family } => println!(
                        "  n = {n}  omitted = {{{}}}{}",
                        semi(omitted),
                        family.map(|f| format!("  family = {}", f.as_str())).unwrap_or_default()
                    ),
                    CampaignHit::StrongRow { n, sigma, d1, d2 } => {
                        println!("  n = {n}  sigma = {sigma}  pair = ({d1}, {d2})")
                    }
                    CampaignHit::Square { k, a, discriminant, root } => {
                        println!("  square at (k, a) = ({k}, {a}): D = {discriminant} = {root}^2")
                    }
                    CampaignHit::Divisibility { a, b } => {
                        println!("  2^{b} + 1 divides 3*2^{a} + 1")
                    }
                }
            }
            for m in &result.mismatches {
                println!("  MISMATCH: {m}");
            }
            println!("result: {}", if result.passed() { "PASS" } else { "FAIL" });
        }
    }
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { n, format } => {
            if n == 0 || n >= (1 << 63) {
                return Err("n must satisfy 1 <= n < 2^63".into());
            }
            let start = Instant::now();
            let report = classify::classify(n).map_err(|e| e.to_string())?;
            print_reports(
                "classify",
                json!({ "n": n }),
                &[report],
                start.elapsed().as_millis() as u64,
                format,
            );
            Ok(0)
        }
        Command::Scan {
            from,
            to,
            kind,
            jobs,
            format,
        } => {
            let kind: ScanKind = kind.parse().map_err(|e: nearperfect::Error| e.to_string())?;
            let spec = RangeSpec::new(from, to);
            spec.validate(max_range()).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let hits = sieve::scan_classified_bounded(&spec, kind, jobs, max_range());
            match hits {
                Ok(hits) => {
                    let reports: Vec<ClassificationReport> =
                        hits.into_iter().map(|(_, r)| r).collect();
                    print_reports(
                        "scan",
                        json!({ "from": from, "to": to, "kind": kind.label().as_str(), "jobs": jobs }),
                        &reports,
                        start.elapsed().as_millis() as u64,
                        format,
                    );
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("scan worker failed: {e}");
                    Ok(1)
                }
            }
        }
        Command::Families {
            family,
            k_max,
            a_max,
            p_max,
            rounds,
            seed,
            format,
        } => {
            let fid: FamilyId = family.parse().map_err(|e: nearperfect::Error| e.to_string())?;
            let seed = seed.unwrap_or_else(rand::random);
            let start = Instant::now();
            let records = match fid {
                FamilyId::T1F1 | FamilyId::T1F2 | FamilyId::T1F3 | FamilyId::T1F4 => {
                    let k_max = k_max.ok_or("theorem-1 families need --k-max")?;
                    families::gen_theorem1_family(fid, k_max, rounds, seed)
                }
                FamilyId::PS1 | FamilyId::PS2 | FamilyId::PS3 => {
                    let bound = p_max.ok_or("ps families need --p-max")?;
                    families::gen_ps_family(fid, bound, rounds, seed)
                }
                FamilyId::S2NP => {
                    let a_max = a_max.ok_or("the s2np family needs --a-max")?;
                    families::gen_strong_2np(a_max, rounds, seed)
                }
            }
            .map_err(|e| e.to_string())?;
            print_families(
                json!({
                    "family": fid.as_str(),
                    "k_max": k_max,
                    "a_max": a_max,
                    "p_max": p_max,
                    "rounds": rounds,
                }),
                &records,
                start.elapsed().as_millis() as u64,
                seed,
                format,
            );
            Ok(0)
        }
        Command::Verify {
            campaign,
            k_max,
            p_max,
            bound,
            a_max,
            b_max,
            format,
        } => {
            let result = match campaign.as_str() {
                "theorem1" => families::verify_theorem1(
                    k_max.ok_or("theorem1 needs --k-max")?,
                    p_max.ok_or("theorem1 needs --p-max")?,
                ),
                "theorem2" => families::verify_theorem2(
                    k_max.ok_or("theorem2 needs --k-max")?,
                    p_max.ok_or("theorem2 needs --p-max")?,
                ),
                "strong-table" => {
                    families::verify_strong_table(bound.ok_or("strong-table needs --bound")?)
                }
                "lemma4" => families::audit_lemma4(k_max.ok_or("lemma4 needs --k-max")?),
                "lemma17" => families::audit_lemma17(
                    a_max.ok_or("lemma17 needs --a-max")?,
                    b_max.ok_or("lemma17 needs --b-max")?,
                ),
                other => return Err(format!("unknown campaign: {other}")),
            }
            .map_err(|e| e.to_string())?;
            print_campaign(&result, format);
            Ok(if result.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
