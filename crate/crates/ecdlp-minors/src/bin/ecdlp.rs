//! Command-line front end: `gen`, `solve`, `verify`, `experiment`,
//! `probe-minors`. Every capability lives in the library; this file only
//! parses flags and maps outcomes to exit codes.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 solve exhausted its
//! iteration budget without finding the logarithm.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use ecdlp_minors::ec::{gen_instance, CurveInstance, FieldKind};
use ecdlp_minors::ff::FieldSpec;
use ecdlp_minors::harness::{
    experiment_csv, mean_iterations, probe_minors, run_experiment, CensusSource, ExperimentConfig,
};
use ecdlp_minors::pipeline::{default_n_prime, solve, LasVegasConfig, SolveOutcome, Strategy};

const USAGE: &str = "\
usage: ecdlp <command> [flags]

commands:
  gen           --bits B --kind prime|binary --out FILE [--with-solution] [--seed S]
  solve         --instance FILE [--n-prime N] [--strategy entries|all2minors|schur]
                [--workers W] [--seed S] [--max-iter T] [--dump-kernels DIR]
                [--transcript FILE]
  verify        --instance FILE --m M
  experiment    --instance FILE --trials N --strategies LIST --csv OUT
                [--n-prime N] [--seed S] [--workers W] [--max-iter T]
  probe-minors  --k K --samples N (--field KIND:.. | --instance FILE)
                [--source random|pipeline] [--seed S]

field specs for probe-minors: prime:<p> or binary:<m>:<0x-irreducible>.
The ECDLP_SEED environment variable supplies the seed when --seed is absent.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Flag parser: every flag is `--name value` except boolean `--with-solution`.
struct Flags {
    values: HashMap<String, String>,
    bools: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Self, String> {
        let mut values = HashMap::new();
        let mut bools = Vec::new();
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            let Some(name) = arg.strip_prefix("--") else {
                return Err(format!("unexpected positional argument {arg:?}"));
            };
            if name == "with-solution" {
                bools.push(name.to_string());
                continue;
            }
            match it.next() {
                Some(v) => {
                    values.insert(name.to_string(), v.clone());
                }
                None => return Err(format!("flag --{name} needs a value")),
            }
        }
        Ok(Flags { values, bools })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn require(&self, name: &str) -> Result<&str, String> {
        self.get(name)
            .ok_or_else(|| format!("missing required flag --{name}"))
    }

    fn parse_num<T: FromStr>(&self, name: &str) -> Result<Option<T>, String> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| format!("bad value for --{name}: {v:?}")),
        }
    }

    fn has_bool(&self, name: &str) -> bool {
        self.bools.iter().any(|b| b == name)
    }
}

/// --seed flag, then ECDLP_SEED, then entropy.
fn resolve_seed(flags: &Flags) -> Result<u64, String> {
    if let Some(s) = flags.parse_num::<u64>("seed")? {
        return Ok(s);
    }
    if let Ok(env) = std::env::var("ECDLP_SEED") {
        return env
            .parse()
            .map_err(|_| format!("bad ECDLP_SEED value {env:?}"));
    }
    Ok(rand::thread_rng().gen())
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn load_instance(path: &str) -> Result<CurveInstance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    CurveInstance::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["prime", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| format!("bad prime in field spec {s:?}"))?;
            FieldSpec::prime(p).map_err(|e| e.to_string())
        }
        ["binary", m, poly] => {
            let m: u32 = m
                .parse()
                .map_err(|_| format!("bad degree in field spec {s:?}"))?;
            let hex = poly
                .strip_prefix("0x")
                .ok_or_else(|| format!("irreducible must be 0x-hex in {s:?}"))?;
            let poly =
                u64::from_str_radix(hex, 16).map_err(|_| format!("bad hex in field spec {s:?}"))?;
            FieldSpec::binary(m, poly).map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "bad field spec {s:?} (expected prime:<p> or binary:<m>:<0x..>)"
        )),
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    let Some((command, rest)) = args.split_first() else {
        eprint!("{USAGE}");
        return Ok(ExitCode::from(1));
    };
    let flags = Flags::parse(rest)?;
    match command.as_str() {
        "gen" => cmd_gen(&flags),
        "solve" => cmd_solve(&flags),
        "verify" => cmd_verify(&flags),
        "experiment" => cmd_experiment(&flags),
        "probe-minors" => cmd_probe_minors(&flags),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!("unknown command {other:?}; run `ecdlp help`")),
    }
}

fn cmd_gen(flags: &Flags) -> Result<ExitCode, String> {
    let bits: u32 = flags
        .parse_num("bits")?
        .ok_or_else(|| "missing required flag --bits".to_string())?;
    if bits > 24 {
        return Err(format!("--bits {bits} exceeds the desk-scale bound 24"));
    }
    let kind: FieldKind = flags.require("kind")?.parse()?;
    let out = flags.require("out")?;
    let seed = resolve_seed(flags)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let instance = gen_instance(bits, kind, &mut rng, flags.has_bool("with-solution"))
        .map_err(|e| e.to_string())?;
    std::fs::write(out, instance.to_file_string()).map_err(|e| format!("{out}: {e}"))?;
    println!(
        "wrote {out}: q={} order={} seed={seed}",
        instance.curve.field().order(),
        instance.order
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(flags: &Flags) -> Result<ExitCode, String> {
    let instance = load_instance(flags.require("instance")?)?;
    let n_prime = flags
        .parse_num::<usize>("n-prime")?
        .unwrap_or_else(|| default_n_prime(instance.order));
    let mut config = LasVegasConfig::new(n_prime);
    config.seed = resolve_seed(flags)?;
    if let Some(s) = flags.get("strategy") {
        config.strategy = s.parse::<Strategy>()?;
    }
    config.workers = flags
        .parse_num::<usize>("workers")?
        .unwrap_or_else(default_workers);
    if let Some(t) = flags.parse_num::<u64>("max-iter")? {
        config.max_iterations = t;
    }
    if let Some(dir) = flags.get("dump-kernels") {
        config.dump_kernels = Some(PathBuf::from(dir));
    }
    let transcript_path = flags.get("transcript").map(PathBuf::from);
    config.transcript = transcript_path.is_some();

    let report = solve(&instance, &config).map_err(|e| e.to_string())?;
    if let Some(path) = transcript_path {
        std::fs::write(&path, report.transcript.join("\n") + "\n")
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    match report.outcome {
        SolveOutcome::Solved(sol) => {
            println!("{}", sol.summary_line());
            Ok(ExitCode::SUCCESS)
        }
        SolveOutcome::Exhausted => {
            eprintln!(
                "exhausted after {} rounds (resamples={}, rejected={})",
                report.rounds_run, report.total_resamples, report.rejected_rounds
            );
            Ok(ExitCode::from(2))
        }
    }
}

fn cmd_verify(flags: &Flags) -> Result<ExitCode, String> {
    let instance = load_instance(flags.require("instance")?)?;
    let m: u64 = flags
        .parse_num("m")?
        .ok_or_else(|| "missing required flag --m".to_string())?;
    if m == 0 || m >= instance.order {
        eprintln!("m={m} is outside [1, {})", instance.order);
        return Ok(ExitCode::from(1));
    }
    let got = instance
        .curve
        .scalar_mul(&instance.p, m)
        .map_err(|e| e.to_string())?;
    if got == instance.q {
        println!("ok: {m} * P = Q");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("mismatch: {m} * P != Q");
        Ok(ExitCode::from(1))
    }
}

fn cmd_experiment(flags: &Flags) -> Result<ExitCode, String> {
    let instance = load_instance(flags.require("instance")?)?;
    let n_prime = flags
        .parse_num::<usize>("n-prime")?
        .unwrap_or_else(|| default_n_prime(instance.order));
    let mut config = ExperimentConfig::new(n_prime);
    config.trials = flags
        .parse_num("trials")?
        .ok_or_else(|| "missing required flag --trials".to_string())?;
    config.strategies = flags
        .require("strategies")?
        .split(',')
        .map(|s| s.trim().parse::<Strategy>())
        .collect::<Result<Vec<_>, _>>()?;
    config.seed = resolve_seed(flags)?;
    config.workers = flags.parse_num::<usize>("workers")?.unwrap_or_else(default_workers);
    if let Some(t) = flags.parse_num::<u64>("max-iter")? {
        config.max_iterations = t;
    }
    let out = flags.require("csv")?;

    let records = run_experiment(&instance, &config).map_err(|e| e.to_string())?;
    std::fs::write(out, experiment_csv(&records)).map_err(|e| format!("{out}: {e}"))?;
    for (strategy, mean) in mean_iterations(&records) {
        println!(
            "{strategy}: mean iterations {mean:.2} over {} trials",
            config.trials
        );
    }
    println!("wrote {out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_probe_minors(flags: &Flags) -> Result<ExitCode, String> {
    let k: usize = flags
        .parse_num("k")?
        .ok_or_else(|| "missing required flag --k".to_string())?;
    let samples: u64 = flags
        .parse_num("samples")?
        .ok_or_else(|| "missing required flag --samples".to_string())?;
    let seed = resolve_seed(flags)?;
    let source_name = flags.get("source").unwrap_or("random");
    let source = match source_name {
        "random" => {
            let spec = parse_field_spec(flags.require("field")?)?;
            CensusSource::Random { field: spec }
        }
        "pipeline" => {
            let instance = load_instance(flags.require("instance")?)?;
            CensusSource::Pipeline {
                instance: Box::new(instance),
            }
        }
        other => {
            return Err(format!(
                "unknown source {other:?} (expected random|pipeline)"
            ))
        }
    };
    let census = probe_minors(k, samples, &source, seed).map_err(|e| e.to_string())?;
    print!("{}", census.report());
    Ok(ExitCode::SUCCESS)
}
