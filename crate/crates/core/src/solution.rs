/// Counters collected while solving. Fields that do not apply to a solver
/// stay zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Bounding couples after deduplication.
    pub couples: usize,
    /// Intersecting disk pairs.
    pub kappa: u64,
    /// Pairs met out of vertical order while rebuilding L2 point sets.
    pub order_violations: u64,
    /// Sweep events processed, summed over every sweep that ran.
    pub events: u64,
    /// Middle couples reported by a middle-couple sweep (before dedup).
    pub middle_reports: usize,
    /// Disks moved out of the unclaimed pool.
    pub drained: usize,
    /// Points removed from the active point sequence.
    pub pl_removals: usize,
    pub audit_checks: u64,
    pub audit_failures: u64,
}

impl Stats {
    pub fn absorb(&mut self, other: &Stats) {
        self.events += other.events;
        self.order_violations += other.order_violations;
        self.middle_reports += other.middle_reports;
        self.drained += other.drained;
        self.pl_removals += other.pl_removals;
        self.audit_checks += other.audit_checks;
        self.audit_failures += other.audit_failures;
    }
}

/// Result of a solver. `chosen` holds ids in the caller's numbering
/// (input index of the disk, segment or half-plane), sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub weight: f64,
    pub chosen: Vec<usize>,
    pub stats: Stats,
}

/// Runtime switches for the sweeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepConfig {
    /// Recheck structural invariants by brute force after every event.
    /// Quadratic; meant for small inputs.
    pub audits: bool,
}

impl SweepConfig {
    pub const AUDIT_ENV: &'static str = "COVLINE_DEBUG_AUDITS";

    /// Reads `COVLINE_DEBUG_AUDITS`; `1` or `true` enables audits.
    pub fn from_env() -> Self {
        let audits =
            std::env::var(Self::AUDIT_ENV).map(|v| v == "1" || v.eq_ignore_ascii_case("true")).unwrap_or(false);
        SweepConfig { audits }
    }

    pub fn with_audits() -> Self {
        SweepConfig { audits: true }
    }
}
