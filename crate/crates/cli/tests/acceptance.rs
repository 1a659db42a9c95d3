//! Acceptance suite: prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero when any criterion fails. Runs under `cargo test`; `NRT_SEED`
//! varies the random inputs.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nrt_core::conformance::{check_arrays, check_lz77, Checks, Harness, Mismatch, Outputs};
use nrt_core::factorize::{decode, Factor, Lz77Factorizer, RevLzFactorizer};
use nrt_core::mus::Interval;
use nrt_core::oracle;
use nrt_core::{Mode, StrategyKind, SuffixTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXHAUSTIVE: [(&[u8], usize); 2] = [(b"ab", 14), (b"abc", 10)];
const FUZZ_STRINGS: usize = 1000;
const FUZZ_LEN: usize = 10_000;
const SIGMAS: [u16; 4] = [2, 4, 26, 256];
/// Prefix length for the cubic LZ77 oracle.
const CUBIC_PREFIX: usize = 4096;
/// Fuzz strings per alphabet also checked against the quadratic LRS/LPF oracles.
const QUADRATIC_SAMPLES: usize = 1;
/// Fuzz strings per alphabet whose height is recomputed every round.
const HEIGHT_SAMPLES: usize = 4;
const ADVERSARIAL_K: usize = 1 << 15;
const BUDGET: usize = 2;
const THROUGHPUT_BYTES: usize = 1_000_000;
const THROUGHPUT_LIMIT: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;

fn rng(salt: u64) -> ChaCha8Rng {
    let seed = std::env::var("NRT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xacce);
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn random_text(rng: &mut ChaCha8Rng, len: usize, sigma: u16) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..sigma) as u8).collect()
}

fn show(text: &[u8]) -> String {
    if text.len() <= 32 {
        format!("{:?}", String::from_utf8_lossy(text))
    } else {
        format!("<{} letters>", text.len())
    }
}

fn run_all(tree: SuffixTree, text: &[u8], checks: Checks) -> Result<(Harness, usize), Mismatch> {
    let mut h = Harness::with_tree(tree, checks);
    let mut max_soft = 0;
    for &c in text {
        max_soft = max_soft.max(h.push(c)?.soft_writes);
    }
    Ok((h, max_soft))
}

// 1 ------------------------------------------------------------------------

fn explore(h: &Harness, alphabet: &[u8], max_len: usize, checked: &mut usize) -> Result<(), String> {
    h.check_prefix().map_err(|m| format!("{}: {m}", show(h.text())))?;
    *checked += 1;
    if h.text().len() == max_len {
        return Ok(());
    }
    for &c in alphabet {
        let mut next = h.clone();
        next.push(c).map_err(|m| format!("{}: {m}", show(next.text())))?;
        explore(&next, alphabet, max_len, checked)?;
    }
    Ok(())
}

fn exhaustive() -> Outcome {
    let mut parts = Vec::new();
    for (alphabet, max_len) in EXHAUSTIVE {
        let mut checked = 0;
        explore(&Harness::default(), alphabet, max_len, &mut checked)?;
        parts.push(format!("{checked} prefixes over {}", show(alphabet)));
    }
    Ok(format!("{}, 0 mismatches", parts.join(" + ")))
}

// 2, 4, 5, 7 share one pass over the fuzz inputs ---------------------------

#[derive(Default)]
struct FuzzResult {
    strings: usize,
    rounds: usize,
    oracle: Option<String>,
    delay: Option<String>,
    structure: Option<String>,
    decode: Option<String>,
}

fn note(slot: &mut Option<String>, text: &[u8], sigma: u16, what: impl std::fmt::Display) {
    if slot.is_none() {
        *slot = Some(format!("sigma {sigma}, {}: {what}", show(text)));
    }
}

fn greedy_starts(lpf: &[usize]) -> Vec<usize> {
    let mut starts = Vec::new();
    let mut p = 1;
    while p <= lpf.len() {
        starts.push(p);
        p += lpf[p - 1].max(1);
    }
    starts
}

fn fuzz() -> FuzzResult {
    let mut res = FuzzResult::default();
    let mut rng = rng(2);
    for k in 0..FUZZ_STRINGS {
        let sigma = SIGMAS[k % SIGMAS.len()];
        let checks = Checks {
            verify_each_round: false,
            mirrors: false,
            height_each_round: k / SIGMAS.len() < HEIGHT_SAMPLES,
        };
        let text = random_text(&mut rng, FUZZ_LEN, sigma);
        res.strings += 1;
        res.rounds += text.len();
        let h = match run_all(SuffixTree::eager(), &text, checks) {
            Ok((h, _)) => h,
            Err(m) => {
                let slot = match m.check {
                    "lpf delay bound" => &mut res.delay,
                    "node creation" | "height growth" | "tree structure" => &mut res.structure,
                    _ => &mut res.oracle,
                };
                note(slot, &text, sigma, m);
                continue;
            }
        };
        if let Some(v) = h.tree().verify_structure().first() {
            note(&mut res.structure, &text, sigma, v);
        }
        let out: Outputs = h.outputs();

        let order: Vec<usize> = out.lpf.iter().map(|p| p.0).collect();
        if !order.iter().copied().eq(1..=text.len()) {
            note(
                &mut res.delay,
                &text,
                sigma,
                "LPF positions not emitted once each in order",
            );
        }

        if let Err(m) = check_arrays(&text, &out.lrs, &out.lpf, false) {
            note(&mut res.oracle, &text, sigma, m);
        }
        if k / SIGMAS.len() < QUADRATIC_SAMPLES {
            if let Err(m) = check_arrays(&text, &out.lrs, &out.lpf, true) {
                note(&mut res.oracle, &text, sigma, m);
            }
        }
        let lpf = oracle::sa_lpf(&text).expect("under cap");
        let starts: Vec<usize> = out.lz77.iter().map(|f| f.start).collect();
        if starts != greedy_starts(&lpf) {
            note(
                &mut res.oracle,
                &text,
                sigma,
                "lz77 boundaries differ from the greedy LPF parse",
            );
        }
        let prefix = &text[..CUBIC_PREFIX];
        if let Err(m) = check_lz77(prefix, &Lz77Factorizer::run(prefix)) {
            note(&mut res.oracle, &text, sigma, format!("prefix {CUBIC_PREFIX}: {m}"));
        }

        for (name, fs) in [("lz77", &out.lz77), ("revlz", &out.revlz)] {
            if decode(fs).as_deref() != Ok(&text[..]) {
                note(&mut res.decode, &text, sigma, format!("{name} does not decode"));
            }
        }
    }
    res
}

fn verdict(slot: &Option<String>, ok: String) -> Outcome {
    match slot {
        None => Ok(ok),
        Some(e) => Err(e.clone()),
    }
}

// 3 ------------------------------------------------------------------------

fn lengths(fs: &[Factor]) -> Vec<usize> {
    fs.iter().map(Factor::len).collect()
}

fn worked_values() -> Outcome {
    let run = |text: &[u8]| -> Result<Outputs, String> {
        let (h, _) = run_all(SuffixTree::eager(), text, Checks::default()).map_err(|m| m.to_string())?;
        h.check_prefix().map_err(|m| m.to_string())?;
        Ok(h.outputs())
    };
    let mut failures = Vec::new();
    let mut expect = |what: &str, got: String, want: String| {
        if got != want {
            failures.push(format!("{what}: got {got}, expected {want}"));
        }
    };

    let t = b"abaabab";
    let out = run(t)?;
    expect("LRS", format!("{:?}", out.lrs), format!("{:?}", [0, 0, 1, 1, 2, 3, 2]));
    let lpf: Vec<usize> = out.lpf.iter().map(|p| p.1).collect();
    expect("LPF", format!("{lpf:?}"), format!("{:?}", [0, 0, 1, 3, 2, 2, 1]));
    expect(
        "LZ77",
        format!("{:?}", lengths(&out.lz77)),
        format!("{:?}", [1, 1, 1, 3, 1]),
    );
    expect(
        "MUS",
        format!("{:?}", out.mus),
        format!("{:?}", [Interval::new(3, 4), Interval::new(5, 7)]),
    );
    expect(
        "oracle LRS",
        format!("{:?}", oracle::naive_lrs(t).unwrap()),
        format!("{:?}", out.lrs),
    );

    let out = run(b"abbaab")?;
    expect(
        "revLZ",
        format!("{:?}", lengths(&out.revlz)),
        format!("{:?}", [1, 1, 2, 2]),
    );
    let out = run(b"abbbb")?;
    expect(
        "overlapping revLZ",
        format!("{:?}", lengths(&out.ovrevlz)),
        format!("{:?}", [1, 1, 3]),
    );

    if failures.is_empty() {
        Ok("LRS, LPF, LZ77, MUS, revLZ and overlapping revLZ match, oracles agree".into())
    } else {
        Err(failures.join("; "))
    }
}

// 5 ------------------------------------------------------------------------

fn walk_structure(h: &Harness, alphabet: &[u8], max_len: usize, checked: &mut usize) -> Result<(), String> {
    *checked += 1;
    if h.text().len() == max_len {
        return Ok(());
    }
    for &c in alphabet {
        let mut next = h.clone();
        next.push(c).map_err(|m| format!("{}: {m}", show(next.text())))?;
        walk_structure(&next, alphabet, max_len, checked)?;
    }
    Ok(())
}

fn structure(fuzz: &FuzzResult) -> Outcome {
    let checks = Checks {
        verify_each_round: true,
        mirrors: false,
        height_each_round: true,
    };
    let mut rounds = 0;
    for (alphabet, max_len) in EXHAUSTIVE {
        walk_structure(&Harness::new(checks), alphabet, max_len, &mut rounds)?;
    }
    verdict(
        &fuzz.structure,
        format!(
            "{rounds} exhaustive prefixes verified every round; {} fuzz rounds (height every round on {} strings)",
            fuzz.rounds,
            HEIGHT_SAMPLES * SIGMAS.len()
        ),
    )
}

// 6 ------------------------------------------------------------------------

fn deamortization() -> Outcome {
    let mut text = b"ab".repeat(ADVERSARIAL_K);
    text.push(b'c');
    let checks = Checks {
        verify_each_round: false,
        mirrors: false,
        height_each_round: false,
    };
    let (eager, eager_max) = run_all(SuffixTree::eager(), &text, checks).map_err(|m| format!("eager: {m}"))?;
    let tree = SuffixTree::new(Mode::Deamortized { budget: BUDGET }, StrategyKind::Walker).expect("budget");
    // The harness rejects any round applying more than BUDGET writes.
    let (deam, deam_max) = run_all(tree, &text, checks).map_err(|m| format!("deamortized: {m}"))?;
    if eager_max < ADVERSARIAL_K / 2 {
        return Err(format!("eager max writes {eager_max} < k/2 = {}", ADVERSARIAL_K / 2));
    }
    if eager.tree().snapshot() != deam.tree().snapshot() {
        return Err("final trees differ".into());
    }
    if eager.outputs() != deam.outputs() {
        return Err("outputs differ".into());
    }
    Ok(format!(
        "k = {ADVERSARIAL_K}: eager max writes/round {eager_max}, deamortized max {deam_max} <= {BUDGET}, trees and outputs identical"
    ))
}

// 7 ------------------------------------------------------------------------

fn round_trips(fuzz: &FuzzResult) -> Outcome {
    let mut count = 0;
    let mut inputs: Vec<Vec<u8>> = vec![b"abaabab".to_vec(), b"abbaab".to_vec(), b"abbbb".to_vec()];
    for len in 0..=12u32 {
        for mask in 0..(1u32 << len) {
            inputs.push((0..len).map(|i| b'a' + (mask >> i & 1) as u8).collect());
        }
    }
    let mut periodic = b"ab".repeat(ADVERSARIAL_K);
    periodic.push(b'c');
    inputs.push(periodic);
    for t in &inputs {
        if decode(&Lz77Factorizer::run(t)).as_deref() != Ok(&t[..]) {
            return Err(format!("lz77 of {}", show(t)));
        }
        if decode(&RevLzFactorizer::run(t)).as_deref() != Ok(&t[..]) {
            return Err(format!("revlz of {}", show(t)));
        }
        count += 1;
    }
    verdict(
        &fuzz.decode,
        format!("{count} small/adversarial inputs and {} fuzz strings", fuzz.strings),
    )
}

// 8 ------------------------------------------------------------------------

fn throughput() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("input");
    let text: Vec<u8> = {
        let mut rng = rng(8);
        (0..THROUGHPUT_BYTES).map(|_| b"acgt"[rng.gen_range(0..4)]).collect()
    };
    std::fs::write(&input, &text).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_nrt"))
        .args(["all", "--strategy", "walker", "--output"])
        .arg(dir.path().join("out"))
        .arg("--input")
        .arg(&input)
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !status.success() {
        return Err(format!("nrt exited with {status}"));
    }
    let msg = format!(
        "{THROUGHPUT_BYTES} bytes in {:.2} s (limit {} s)",
        elapsed.as_secs_f64(),
        THROUGHPUT_LIMIT.as_secs()
    );
    if elapsed < THROUGHPUT_LIMIT {
        Ok(msg)
    } else {
        Err(msg)
    }
}

// --------------------------------------------------------------------------

fn report(id: u8, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let secs = start.elapsed().as_secs_f64();
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!("{tag} {id} {name}: {detail} ({secs:.1} s)");
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fuzz = fuzz();
    println!(
        "fuzz pass: {} strings of length {FUZZ_LEN}, sigma in {SIGMAS:?} ({:.1} s)",
        fuzz.strings,
        start.elapsed().as_secs_f64()
    );
    let results = [
        report(1, "exhaustive oracle equivalence", exhaustive),
        report(2, "fuzz oracle equivalence", || {
            verdict(
                &fuzz.oracle,
                format!("{} strings, LRS/LPF/LZ77/converters, 0 mismatches", fuzz.strings),
            )
        }),
        report(3, "worked values", worked_values),
        report(4, "LPF delay bound", || {
            verdict(
                &fuzz.delay,
                format!("pending <= max LRS over {} rounds, emission in order", fuzz.rounds),
            )
        }),
        report(5, "structural lemmas", || structure(&fuzz)),
        report(6, "deamortization", deamortization),
        report(7, "decode round trips", || round_trips(&fuzz)),
        report(8, "throughput", throughput),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
