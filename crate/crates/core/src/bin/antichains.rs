//! Command-line front end: Dedekind numbers, the derived sequence table,
//! exact interval sizes, P-coefficients, verification suites and a small
//! benchmark. Results go to stdout; diagnostics and progress go to stderr.
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use antichains::pcoeff::{dedekind_pcoeff_with_progress, pcoeff_bruteforce, pcoeff_k2};
use antichains::sequences::{
    a_from_b, a_from_d, b_via_connected, basic_interval, connected_count_direct,
    dedekind_enumeration, distinguishing_count_direct, table_from_a, SequenceTable,
};
use antichains::verify::{run_all, run_suite, SUITE_NAMES};
use antichains::{
    interval_size, interval_size_pair, parse_antichain, size_leveled, Interval, Parity, SizeMemo,
    Universe,
};

#[derive(Parser)]
#[command(
    name = "antichains",
    about = "Exact computation in the lattice of antichains of a finite universe",
    version
)]
struct Cli {
    /// Worker threads for parallel summations (default: ANTICHAIN_THREADS or
    /// the number of available cores). Results are identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format for result payloads.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized checks (reserved; current suites are exhaustive).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Direct enumeration of the lattice (n <= 5).
    Enumerate,
    /// Binomial recursion over basic-interval sizes (n <= 6).
    Bn,
    /// Stirling recursion over distinguishing counts (n <= 5).
    Stirling,
    /// Connected-antichain recursion (n <= 5).
    Connected,
    /// Symmetry-reduced pair-coefficient recursion (2 <= n <= 8).
    Pcoeff,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::Bn => "bn",
            Method::Stirling => "stirling",
            Method::Connected => "connected",
            Method::Pcoeff => "pcoeff",
        }
    }

    fn feasible(self, n: u32) -> bool {
        match self {
            Method::Enumerate => n <= 5,
            Method::Bn => n <= 6,
            Method::Stirling | Method::Connected => n <= 5,
            Method::Pcoeff => (2..=8).contains(&n),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Dedekind number |A_n|.
    Dedekind {
        /// Universe size, 0 <= n <= 8.
        n: u32,
        /// Computation pipeline (default: enumerate for n <= 5, pcoeff above).
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Coordinate count of the pair-coefficient recursion.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Run every feasible method and require exact agreement.
        #[arg(long)]
        verify: bool,
        /// Permit the multi-hour n = 8 computation.
        #[arg(long)]
        allow_long_run: bool,
    },
    /// Print the table of the four sequences A, B, C, D.
    Table {
        /// Largest dimension to include, 0 <= max_n <= 8.
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        /// Permit the multi-hour row 8.
        #[arg(long)]
        allow_long_run: bool,
    },
    /// Compute the exact size of the interval [bottom, top].
    IntervalSize {
        /// Universe size, 0 <= n <= 8.
        #[arg(long)]
        n: u32,
        /// Bottom antichain, e.g. "{{1,2},{3}}"; "{}" is the empty antichain.
        bottom: String,
        /// Top antichain.
        top: String,
        /// Evaluate both summation parities and require agreement.
        #[arg(long)]
        both_parities: bool,
    },
    /// Evaluate a P-coefficient for a pair of antichains.
    Pcoeff {
        /// Universe size, 0 <= n <= 8.
        #[arg(long)]
        n: u32,
        /// Coordinate count; 2 uses the closed form, other small k the
        /// definitional search.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Lower endpoint rho1.
        rho1: String,
        /// Upper endpoint rho2.
        rho2: String,
    },
    /// Run invariant suites and report pass/fail per suite.
    Verify {
        /// Cap on the universe sizes the exhaustive suites sweep (<= 5).
        #[arg(default_value_t = 4)]
        n: u32,
        /// Run a single suite instead of all of them.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Time the main pipelines at moderate sizes.
    Bench,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn resolve_threads(opt: Option<usize>) -> usize {
    opt.or_else(|| {
        std::env::var("ANTICHAIN_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    })
    .max(1)
}

fn emit_value(format: Format, n: u32, method: &str, value: &BigUint) {
    match format {
        Format::Text => println!("{value}"),
        Format::Csv => {
            println!("n,method,value");
            println!("{n},{method},{value}");
        }
        Format::Json => {
            println!("{{\"n\":{n},\"method\":\"{method}\",\"value\":\"{value}\"}}")
        }
    }
}

/// Progress sink for the pair-coefficient recursion: at most ~100 lines on
/// stderr, never interleaved with the stdout payload.
struct Progress {
    last_bucket: AtomicUsize,
}

impl Progress {
    fn new() -> Progress {
        Progress {
            last_bucket: AtomicUsize::new(usize::MAX),
        }
    }

    fn report(&self, done: usize, total: usize) {
        let bucket = done * 100 / total.max(1);
        if self.last_bucket.swap(bucket, Ordering::Relaxed) != bucket || done == total {
            eprintln!("progress: {done}/{total} units");
        }
    }
}

/// One Dedekind number through one pipeline. Every pipeline is independent of
/// the others, which is what makes --verify meaningful.
fn dedekind_via(
    n: u32,
    method: Method,
    k: u32,
    threads: usize,
    quiet: bool,
) -> Result<BigUint, String> {
    if !method.feasible(n) {
        return Err(format!(
            "method `{}` is not feasible at n = {n}",
            method.name()
        ));
    }
    let err = |e: antichains::Error| e.to_string();
    match method {
        Method::Enumerate => dedekind_enumeration(n).map_err(err),
        Method::Bn => {
            let memo = SizeMemo::new();
            let mut b = Vec::new();
            for m in 0..=n {
                b.push(interval_size(&basic_interval(m).map_err(err)?, &memo));
            }
            Ok(a_from_b(&b).pop().expect("nonempty"))
        }
        Method::Stirling => {
            let mut d = Vec::new();
            for m in 0..=n {
                d.push(distinguishing_count_direct(m).map_err(err)?);
            }
            Ok(a_from_d(&d).pop().expect("nonempty"))
        }
        Method::Connected => {
            let mut c = Vec::new();
            for m in 0..=n {
                c.push(connected_count_direct(m).map_err(err)?);
            }
            Ok(a_from_b(&b_via_connected(&c)).pop().expect("nonempty"))
        }
        Method::Pcoeff => {
            if k != 2 {
                return Err(format!("pcoeff recursion supports k = 2, not k = {k}"));
            }
            let progress = Progress::new();
            let sink = move |done: usize, total: usize| {
                if !quiet {
                    progress.report(done, total);
                }
            };
            dedekind_pcoeff_with_progress(n - 2, 2, threads, &sink).map_err(err)
        }
    }
}

fn cmd_dedekind(
    n: u32,
    method: Option<Method>,
    k: u32,
    verify: bool,
    allow_long_run: bool,
    threads: usize,
    format: Format,
) -> ExitCode {
    if n > 8 {
        return usage_error("n must be at most 8");
    }
    if n == 8 && !allow_long_run {
        return usage_error(
            "n = 8 is a multi-hour computation (order of 8 hours on 4 cores); \
             pass --allow-long-run to start it",
        );
    }
    if n == 8 {
        eprintln!("note: n = 8 takes on the order of 8 hours on 4 cores");
    }
    if verify {
        let methods: Vec<Method> = [
            Method::Enumerate,
            Method::Bn,
            Method::Stirling,
            Method::Connected,
            Method::Pcoeff,
        ]
        .into_iter()
        .filter(|m| m.feasible(n))
        .collect();
        if methods.is_empty() {
            return usage_error("no method is feasible at this n");
        }
        let mut results: Vec<(Method, BigUint)> = Vec::new();
        for m in &methods {
            match dedekind_via(n, *m, k, threads, false) {
                Ok(v) => {
                    eprintln!("method {}: {v}", m.name());
                    results.push((*m, v));
                }
                Err(e) => return usage_error(&e),
            }
        }
        let (first_m, first_v) = &results[0];
        for (m, v) in &results[1..] {
            if v != first_v {
                eprintln!(
                    "verification failed: {} gives {first_v}, {} gives {v}",
                    first_m.name(),
                    m.name()
                );
                return ExitCode::from(1);
            }
        }
        emit_value(format, n, "verify", first_v);
        return ExitCode::SUCCESS;
    }
    let method = method.unwrap_or(if n <= 5 {
        Method::Enumerate
    } else {
        Method::Pcoeff
    });
    match dedekind_via(n, method, k, threads, false) {
        Ok(v) => {
            emit_value(format, n, method.name(), &v);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e),
    }
}

fn print_table(t: &SequenceTable, format: Format) {
    match format {
        Format::Text => {
            println!("n A B C D");
            for (n, row) in t.rows.iter().enumerate() {
                println!("{n} {} {} {} {}", row.a, row.b, row.c, row.d);
            }
        }
        Format::Csv => {
            println!("n,a,b,c,d");
            for (n, row) in t.rows.iter().enumerate() {
                println!("{n},{},{},{},{}", row.a, row.b, row.c, row.d);
            }
        }
        Format::Json => {
            let rows: Vec<String> = t
                .rows
                .iter()
                .enumerate()
                .map(|(n, row)| {
                    format!(
                        "{{\"n\":{n},\"a\":\"{}\",\"b\":\"{}\",\"c\":\"{}\",\"d\":\"{}\"}}",
                        row.a, row.b, row.c, row.d
                    )
                })
                .collect();
            println!("{{\"rows\":[{}]}}", rows.join(","));
        }
    }
}

fn cmd_table(max_n: u32, allow_long_run: bool, threads: usize, format: Format) -> ExitCode {
    if max_n > 8 {
        return usage_error("max_n must be at most 8");
    }
    if max_n == 8 && !allow_long_run {
        return usage_error(
            "row 8 is a multi-hour computation (order of 8 hours on 4 cores); \
             pass --allow-long-run to include it",
        );
    }
    if max_n == 8 {
        eprintln!("note: row 8 takes on the order of 8 hours on 4 cores");
    }
    let mut a = Vec::new();
    for n in 0..=max_n {
        let method = if n <= 5 {
            Method::Enumerate
        } else {
            Method::Pcoeff
        };
        match dedekind_via(n, method, 2, threads, false) {
            Ok(v) => a.push(v),
            Err(e) => return usage_error(&e),
        }
    }
    print_table(&table_from_a(a), format);
    ExitCode::SUCCESS
}

fn cmd_interval_size(
    n: u32,
    bottom: &str,
    top: &str,
    both_parities: bool,
    format: Format,
) -> ExitCode {
    let u = match Universe::new(n) {
        Ok(u) => u,
        Err(e) => return usage_error(&e.to_string()),
    };
    let bottom = match parse_antichain(u, bottom, false) {
        Ok(a) => a,
        Err(e) => return usage_error(&format!("bottom: {e}")),
    };
    let top = match parse_antichain(u, top, false) {
        Ok(a) => a,
        Err(e) => return usage_error(&format!("top: {e}")),
    };
    if both_parities {
        let comparable = match bottom.leq(&top) {
            Ok(c) => c,
            Err(e) => return usage_error(&e.to_string()),
        };
        let (even, odd) = if comparable {
            let iv = Interval::new(bottom, top).expect("checked bottom <= top");
            (
                size_leveled(&iv, Parity::Even),
                size_leveled(&iv, Parity::Odd),
            )
        } else {
            (BigUint::ZERO, BigUint::ZERO)
        };
        if even != odd {
            eprintln!("verification failed: even parity {even} != odd parity {odd}");
            return ExitCode::from(1);
        }
        match format {
            Format::Text => {
                println!("even {even}");
                println!("odd {odd}");
            }
            Format::Csv => {
                println!("n,method,value");
                println!("{n},interval-size-even,{even}");
                println!("{n},interval-size-odd,{odd}");
            }
            Format::Json => println!(
                "{{\"n\":{n},\"method\":\"interval-size\",\"value\":\"{even}\",\"odd\":\"{odd}\"}}"
            ),
        }
        return ExitCode::SUCCESS;
    }
    let memo = SizeMemo::new();
    match interval_size_pair(&bottom, &top, &memo) {
        Ok(v) => {
            emit_value(format, n, "interval-size", &v);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_pcoeff(n: u32, k: u32, rho1: &str, rho2: &str, format: Format) -> ExitCode {
    let u = match Universe::new(n) {
        Ok(u) => u,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rho1 = match parse_antichain(u, rho1, false) {
        Ok(a) => a,
        Err(e) => return usage_error(&format!("rho1: {e}")),
    };
    let rho2 = match parse_antichain(u, rho2, false) {
        Ok(a) => a,
        Err(e) => return usage_error(&format!("rho2: {e}")),
    };
    let value = if k == 2 {
        pcoeff_k2(&rho1, &rho2)
    } else {
        pcoeff_bruteforce(&rho1, &rho2, k)
    };
    match value {
        Ok(v) => {
            emit_value(format, n, "pcoeff", &v);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_verify(n: u32, suite: Option<&str>, format: Format) -> ExitCode {
    if n > 5 {
        return usage_error("exhaustive suites support n at most 5");
    }
    let reports = match suite {
        Some(name) => match run_suite(name, n) {
            Ok(r) => vec![r],
            Err(_) => {
                return usage_error(&format!(
                    "unknown suite `{name}` (available: {})",
                    SUITE_NAMES.join(", ")
                ))
            }
        },
        None => match run_all(n) {
            Ok(r) => r,
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    let mut failed = false;
    let mut lines = Vec::new();
    for r in &reports {
        let status = if r.ok() { "pass" } else { "fail" };
        lines.push((r.name, status, r.checks));
        if !r.ok() {
            failed = true;
            for f in &r.failures {
                eprintln!("{}: counterexample: {f}", r.name);
            }
        }
    }
    match format {
        Format::Text => {
            for (name, status, checks) in &lines {
                println!("{name}: {status} ({checks} checks)");
            }
        }
        Format::Csv => {
            println!("suite,status,checks");
            for (name, status, checks) in &lines {
                println!("{name},{status},{checks}");
            }
        }
        Format::Json => {
            let rows: Vec<String> = lines
                .iter()
                .map(|(name, status, checks)| {
                    format!("{{\"suite\":\"{name}\",\"status\":\"{status}\",\"checks\":{checks}}}")
                })
                .collect();
            println!("{{\"suites\":[{}]}}", rows.join(","));
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_bench(threads: usize) -> ExitCode {
    let run = |name: &str, f: &mut dyn FnMut() -> BigUint| {
        let start = Instant::now();
        let v = f();
        eprintln!("{name}: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
        println!("{name} {v}");
    };
    let memo = SizeMemo::new();
    run("full-lattice-size-n6", &mut || {
        interval_size(&Interval::full(Universe::new(6).unwrap()), &memo)
    });
    run("enumerate-n5", &mut || dedekind_enumeration(5).unwrap());
    run("pcoeff-a6", &mut || {
        dedekind_pcoeff_with_progress(4, 2, threads, &|_, _| {}).unwrap()
    });
    run("pcoeff-a7", &mut || {
        dedekind_pcoeff_with_progress(5, 2, threads, &|_, _| {}).unwrap()
    });
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = resolve_threads(cli.threads);
    let format = cli.format;
    match cli.command {
        Command::Dedekind {
            n,
            method,
            k,
            verify,
            allow_long_run,
        } => cmd_dedekind(n, method, k, verify, allow_long_run, threads, format),
        Command::Table {
            max_n,
            allow_long_run,
        } => cmd_table(max_n, allow_long_run, threads, format),
        Command::IntervalSize {
            n,
            bottom,
            top,
            both_parities,
        } => cmd_interval_size(n, &bottom, &top, both_parities, format),
        Command::Pcoeff { n, k, rho1, rho2 } => cmd_pcoeff(n, k, &rho1, &rho2, format),
        Command::Verify { n, suite } => cmd_verify(n, suite.as_deref(), format),
        Command::Bench => cmd_bench(threads),
    }
}
