use std::io::{self, Write};
use std::time::Duration;

use nrt_core::tree::RoundWork;

/// Per-letter wall time in power-of-two nanosecond buckets, plus the worst
/// structural work seen in any single round.
#[derive(Debug, Default)]
pub struct Latency {
    buckets: Vec<u64>,
    count: u64,
    max_ns: u64,
    worst: RoundWork,
}

impl Latency {
    pub fn record(&mut self, elapsed: Duration, work: &RoundWork) {
        let ns = elapsed.as_nanos().min(u64::MAX as u128) as u64;
        let b = (64 - ns.leading_zeros()) as usize;
        if self.buckets.len() <= b {
            self.buckets.resize(b + 1, 0);
        }
        self.buckets[b] += 1;
        self.count += 1;
        self.max_ns = self.max_ns.max(ns);
        let w = &mut self.worst;
        w.visited = w.visited.max(work.visited);
        w.hard_writes = w.hard_writes.max(work.hard_writes);
        w.copied = w.copied.max(work.copied);
        w.soft_writes = w.soft_writes.max(work.soft_writes);
        w.soft_generated = w.soft_generated.max(work.soft_generated);
        w.queue_len = w.queue_len.max(work.queue_len);
    }

    /// Lower bound of bucket `b` in nanoseconds.
    fn floor(b: usize) -> u64 {
        if b == 0 {
            0
        } else {
            1 << (b - 1)
        }
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "bucket_ns,count")?;
        for (b, &n) in self.buckets.iter().enumerate() {
            if n > 0 {
                writeln!(out, "{},{}", Self::floor(b), n)?;
            }
        }
        out.flush()
    }

    /// Bucket floor holding the median letter.
    fn median_ns(&self) -> u64 {
        let mut seen = 0;
        for (b, &n) in self.buckets.iter().enumerate() {
            seen += n;
            if 2 * seen >= self.count {
                return Self::floor(b);
            }
        }
        0
    }

    pub fn summary(&self) -> String {
        let w = &self.worst;
        format!(
            "letters={} max_ns={} median_ns>={} max_visited={} max_soft_writes={} max_soft_generated={} max_queue={}",
            self.count,
            self.max_ns,
            self.median_ns(),
            w.visited,
            w.soft_writes,
            w.soft_generated,
            w.queue_len
        )
    }
}
