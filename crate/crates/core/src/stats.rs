use std::time::{Duration, Instant};

/// Instrumentation tally for one filtering run or a batch of tree queries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterStats {
    /// Pairwise point dominance evaluations.
    pub comparisons: u64,
    /// Tree nodes entered.
    pub node_visits: u64,
    /// Leaf point lists traversed.
    pub leaf_scans: u64,
    pub elapsed_ns: u64,
}

impl FilterStats {
    pub fn add_elapsed(&mut self, d: Duration) {
        self.elapsed_ns = self
            .elapsed_ns
            .saturating_add(u64::try_from(d.as_nanos()).unwrap_or(u64::MAX));
    }

    /// Runs `f` and adds its wall time to `elapsed_ns`.
    pub fn timed<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.add_elapsed(start.elapsed());
        out
    }

    pub fn merge(&mut self, other: &FilterStats) {
        self.comparisons += other.comparisons;
        self.node_visits += other.node_visits;
        self.leaf_scans += other.leaf_scans;
        self.elapsed_ns = self.elapsed_ns.saturating_add(other.elapsed_ns);
    }
}
