use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Output, Stdio};
use std::sync::mpsc;
use std::time::Duration;

use rand::{Rng, SeedableRng};

fn nrt(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nrt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &[u8]) -> String {
    let out = nrt(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn lrs_lines() {
    let out = stdout(&["lrs"], b"abaabab");
    assert_eq!(
        out.split_whitespace().collect::<Vec<_>>(),
        ["0", "0", "1", "1", "2", "3", "2"]
    );
}

#[test]
fn lpf_lines_carry_positions() {
    assert_eq!(stdout(&["lpf"], b"abaabab"), "1:0\n2:0\n3:1\n4:3\n5:2\n6:2\n7:1\n");
}

#[test]
fn lz77_json_lines() {
    let out = stdout(&["lz77", "--format", "json-lines"], b"abaabab");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], r#"{"type":"literal","letter":97}"#);
    assert_eq!(lines[4], r#"{"type":"copy","ref":2,"len":1}"#);
}

#[test]
fn reversed_factors() {
    assert_eq!(stdout(&["revlz"], b"abbaab"), "L:97\nL:98\nC:1:2:R\nC:3:2:R\n");
    let json = stdout(&["revlz", "--format", "json-lines"], b"abbaab");
    assert_eq!(
        json.lines().nth(2),
        Some(r#"{"type":"copy","ref":1,"len":2,"reversed":true}"#)
    );
    assert_eq!(stdout(&["ovrevlz"], b"abbbb"), "L:97\nL:98\nC:2:3:R\n");
}

#[test]
fn mus_deltas() {
    assert_eq!(stdout(&["mus"], b"aaa"), "+1,1\n+1,2 -1,1\n+1,3 -1,2\n");
}

#[test]
fn all_tags_every_record() {
    let out = stdout(&["all"], b"abaabab");
    let count = |tag: &str| out.lines().filter(|l| l.starts_with(&format!("{tag} "))).count();
    assert_eq!((count("lrs"), count("lpf"), count("mus")), (7, 7, 7));
    for tag in ["lz77", "revlz", "ovrevlz"] {
        assert_eq!(count(tag), stdout(&[tag], b"abaabab").lines().count(), "{tag}");
    }
    let json = stdout(&["all", "--format", "json-lines"], b"ab");
    assert!(json.lines().all(|l| l.starts_with(r#"{"stream":""#)), "{json}");
}

#[test]
fn output_independent_of_mode_and_strategy() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let text: Vec<u8> = (0..3000).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
    let base = stdout(&["all"], &text);
    for args in [
        ["all", "--mode", "deamortized", "--strategy", "walker"],
        ["all", "--mode", "eager", "--strategy", "euler-balanced"],
        ["all", "--mode", "deamortized", "--strategy", "euler-balanced"],
    ] {
        assert!(stdout(&args, &text) == base, "{args:?}");
    }
    assert!(stdout(&["all", "--mode", "deamortized", "--budget", "5"], &text) == base);
}

#[test]
fn verify_accepts_correct_output() {
    for cmd in ["lrs", "lpf", "lz77", "revlz", "ovrevlz", "mus", "all"] {
        let out = nrt(&[cmd, "--verify"], b"abaababaabbabbbaab");
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        nrt(&["lrs", "--mode", "deamortized", "--budget", "1"], b"")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nrt(&["frobnicate"], b"").status.code(), Some(2));
    assert_eq!(nrt(&["lrs", "--strategy", "splay"], b"").status.code(), Some(2));
    assert_eq!(
        nrt(&["lrs", "--input", "/nonexistent/nrt-input"], b"").status.code(),
        Some(1)
    );
    let long = vec![b'a'; 5000];
    let out = nrt(&["lz77", "--verify"], &long);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn files_and_latency_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in");
    let output = dir.path().join("out");
    let hist = dir.path().join("hist.csv");
    std::fs::write(&input, b"abaabab").unwrap();
    let p = |q: &std::path::Path| q.to_str().unwrap().to_owned();
    let out = nrt(
        &[
            "lrs",
            "--input",
            &p(&input),
            "--output",
            &p(&output),
            "--latency",
            &p(&hist),
        ],
        b"",
    );
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "0\n0\n1\n1\n2\n3\n2\n");
    let csv = std::fs::read_to_string(&hist).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("bucket_ns,count"));
    let total: u64 = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 7);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("max_ns=") && err.contains("letters=7"), "{err}");
}

/// Feeds stdin one byte at a time and records how many bytes had been
/// written when the first output line arrived.
fn bytes_before_first_line(args: &[&str], text: &[u8]) -> usize {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nrt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    let out = child.stdout.take().unwrap();
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let mut line = String::new();
        BufReader::new(out).read_line(&mut line).unwrap();
        let _ = tx.send(line);
    });
    let mut sent = 0;
    for &c in text {
        stdin.write_all(&[c]).unwrap();
        stdin.flush().unwrap();
        sent += 1;
        if rx.recv_timeout(Duration::from_millis(300)).is_ok() {
            break;
        }
    }
    drop(stdin);
    child.wait().unwrap();
    sent
}

#[test]
fn streams_without_waiting_for_eof() {
    assert_eq!(bytes_before_first_line(&["lrs"], b"abc"), 1);
    // max LRS of "aaaa" is 3, so LPF[1] may wait for at most 4 letters.
    assert!(bytes_before_first_line(&["lpf"], b"aaaaaaaa") <= 4);
}
