//! Anytime progress traces and their CSV serialization.
//!
//! A trace records when solutions were found and when batches finished,
//! measured in collision checks. The `elapsed_s` column is virtual time
//! derived from the check count at a fixed rate, so identical runs serialize
//! to identical bytes regardless of machine load; wall-clock timing belongs
//! in run summaries, not traces.

use std::io::Write;

use crate::error::Result;

/// Virtual seconds charged per collision check when deriving `elapsed_s`.
pub const SECONDS_PER_CHECK: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEventKind {
    /// A new incumbent solution was found.
    Solution,
    /// A densification batch finished.
    BatchDone,
    /// The final graph was proven disconnected.
    Infeasible,
}

impl TraceEventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TraceEventKind::Solution => "solution",
            TraceEventKind::BatchDone => "batch_done",
            TraceEventKind::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TraceEvent {
    pub kind: TraceEventKind,
    /// Collision checks performed when the event occurred.
    pub checks: u64,
    /// Incumbent path length, when one exists.
    pub length: Option<f64>,
    /// Densification batch index, starting at 0.
    pub batch: usize,
    /// Weight-blend parameter the solution was found at, for solution events.
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct AnytimeTrace {
    pub events: Vec<TraceEvent>,
}

impl AnytimeTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: TraceEvent) {
        self.events.push(event);
    }

    pub fn solution(&mut self, checks: u64, length: f64, batch: usize, alpha: f64) {
        self.push(TraceEvent {
            kind: TraceEventKind::Solution,
            checks,
            length: Some(length),
            batch,
            alpha: Some(alpha),
        });
    }

    pub fn batch_done(&mut self, checks: u64, length: Option<f64>, batch: usize) {
        self.push(TraceEvent {
            kind: TraceEventKind::BatchDone,
            checks,
            length,
            batch,
            alpha: None,
        });
    }

    pub fn infeasible(&mut self, checks: u64, batch: usize) {
        self.push(TraceEvent {
            kind: TraceEventKind::Infeasible,
            checks,
            length: None,
            batch,
            alpha: None,
        });
    }

    /// Best solution length recorded so far.
    pub fn best_length(&self) -> Option<f64> {
        self.events
            .iter()
            .filter_map(|e| match e.kind {
                TraceEventKind::Solution => e.length,
                _ => None,
            })
            .fold(None, |acc: Option<f64>, l| {
                Some(acc.map_or(l, |a| a.min(l)))
            })
    }

    /// Writes the trace as CSV with the fixed column order
    /// `event,elapsed_s,checks,length,batch,alpha`. Optional fields are left
    /// empty. Floats use the shortest round-trip representation, so the
    /// output is byte-identical across runs producing the same events.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "event,elapsed_s,checks,length,batch,alpha")?;
        for e in &self.events {
            let elapsed = e.checks as f64 * SECONDS_PER_CHECK;
            let length = e.length.map(|l| l.to_string()).unwrap_or_default();
            let alpha = e.alpha.map(|a| a.to_string()).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{}",
                e.kind.as_str(),
                elapsed,
                e.checks,
                length,
                e.batch,
                alpha
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is ascii")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_fixed_header_and_row_shape() {
        let mut t = AnytimeTrace::new();
        t.solution(1200, 1.5, 0, 0.25);
        t.batch_done(1500, Some(1.5), 0);
        t.infeasible(1600, 1);
        let csv = t.to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "event,elapsed_s,checks,length,batch,alpha");
        let elapsed = |checks: u64| (checks as f64 * SECONDS_PER_CHECK).to_string();
        assert_eq!(lines[1], format!("solution,{},1200,1.5,0,0.25", elapsed(1200)));
        assert_eq!(lines[2], format!("batch_done,{},1500,1.5,0,", elapsed(1500)));
        assert_eq!(lines[3], format!("infeasible,{},1600,,1,", elapsed(1600)));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn identical_traces_serialize_identically() {
        let build = || {
            let mut t = AnytimeTrace::new();
            t.solution(777, 2.0 / 3.0, 2, 0.1);
            t.batch_done(900, Some(2.0 / 3.0), 2);
            t
        };
        assert_eq!(build().to_csv_string(), build().to_csv_string());
    }

    #[test]
    fn best_length_tracks_the_minimum() {
        let mut t = AnytimeTrace::new();
        assert_eq!(t.best_length(), None);
        t.solution(10, 2.0, 0, 0.0);
        t.solution(20, 1.4, 0, 0.5);
        t.batch_done(30, Some(1.4), 0);
        assert_eq!(t.best_length(), Some(1.4));
    }
}
