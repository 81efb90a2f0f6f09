//! Cost accounting for simulated runs.
//!
//! A [`CostLedger`] accumulates four counters:
//!
//! * `quantum_queries`: queries charged by the simulated Grover primitives in
//!   [`crate::qmodel`] (`ceil(c * sqrt(N))` per call, times repetitions).
//! * `classical_ops`: explicitly charged classical work, used where an
//!   algorithm's analysis bills a classical term (e.g. bucket bookkeeping).
//! * `matmul_ops`: element operations charged by matrix-multiplication
//!   kernels at the model cost of the kernel that ran.
//! * analytic charges: labelled closed-form amounts for subroutines whose
//!   query bound is charged as a whole (e.g. a quantum Dijkstra run bills
//!   `ceil(n^1.5)` under the label `"quantum_dijkstra"`), summed into
//!   `analytic_total`.
//!
//! Ledgers support phase snapshots (each snapshot records the counter deltas
//! since the previous one), merging (counters add, entries concatenate), and
//! CSV export with one row per phase plus a final `total` row.

use serde::{Deserialize, Serialize};

/// Counter totals at a point in time. Also used for per-phase deltas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub quantum_queries: u64,
    pub classical_ops: u64,
    pub matmul_ops: u64,
    pub analytic_total: u64,
}

impl Totals {
    /// Sum of the two query-model counters: simulated Grover queries plus
    /// closed-form analytic charges. This is the quantity the growth-law
    /// fits regress against instance size.
    pub fn charged_total(&self) -> u64 {
        self.quantum_queries + self.analytic_total
    }

    fn minus(&self, earlier: &Totals) -> Totals {
        Totals {
            quantum_queries: self.quantum_queries - earlier.quantum_queries,
            classical_ops: self.classical_ops - earlier.classical_ops,
            matmul_ops: self.matmul_ops - earlier.matmul_ops,
            analytic_total: self.analytic_total - earlier.analytic_total,
        }
    }
}

/// One labelled closed-form charge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticCharge {
    pub label: String,
    pub amount: u64,
}

/// Counter deltas attributed to one named phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub phase: String,
    pub deltas: Totals,
}

/// Accumulates charges for one run. See the module docs for the counters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CostLedger {
    quantum_queries: u64,
    classical_ops: u64,
    matmul_ops: u64,
    analytic_total: u64,
    analytic: Vec<AnalyticCharge>,
    phases: Vec<PhaseRecord>,
    #[serde(default)]
    mark: Totals,
}

impl CostLedger {
    pub fn new() -> CostLedger {
        CostLedger::default()
    }

    pub fn charge_quantum(&mut self, queries: u64) {
        self.quantum_queries += queries;
    }

    pub fn charge_classical(&mut self, ops: u64) {
        self.classical_ops += ops;
    }

    pub fn charge_matmul(&mut self, ops: u64) {
        self.matmul_ops += ops;
    }

    /// Adds a labelled closed-form charge and includes it in `analytic_total`.
    pub fn charge_analytic(&mut self, label: &str, amount: u64) {
        self.analytic_total += amount;
        self.analytic.push(AnalyticCharge {
            label: label.to_owned(),
            amount,
        });
    }

    pub fn totals(&self) -> Totals {
        Totals {
            quantum_queries: self.quantum_queries,
            classical_ops: self.classical_ops,
            matmul_ops: self.matmul_ops,
            analytic_total: self.analytic_total,
        }
    }

    /// Moves the phase mark to the current totals without recording a
    /// phase. Multi-phase algorithms call this on entry so charges that
    /// predate them are not attributed to their first phase.
    pub fn mark(&mut self) {
        self.mark = self.totals();
    }

    /// Closes the current phase: records the counter movement since the last
    /// snapshot (or since creation) under `phase`.
    pub fn snapshot(&mut self, phase: &str) {
        let now = self.totals();
        let deltas = now.minus(&self.mark);
        self.mark = now;
        self.phases.push(PhaseRecord {
            phase: phase.to_owned(),
            deltas,
        });
    }

    pub fn phases(&self) -> &[PhaseRecord] {
        &self.phases
    }

    pub fn analytic_entries(&self) -> &[AnalyticCharge] {
        &self.analytic
    }

    /// Sum of the analytic amounts carrying exactly this label.
    pub fn analytic_sum(&self, label: &str) -> u64 {
        self.analytic
            .iter()
            .filter(|c| c.label == label)
            .map(|c| c.amount)
            .sum()
    }

    /// Folds another ledger into this one: counters add, analytic entries and
    /// phase records concatenate. Merged totals are order-independent.
    pub fn merge(&mut self, other: &CostLedger) {
        self.quantum_queries += other.quantum_queries;
        self.classical_ops += other.classical_ops;
        self.matmul_ops += other.matmul_ops;
        self.analytic_total += other.analytic_total;
        self.analytic.extend(other.analytic.iter().cloned());
        self.phases.extend(other.phases.iter().cloned());
        // Keep the mark consistent so a later snapshot attributes the merged
        // charges to the phase in progress.
        self.mark.quantum_queries += other.quantum_queries;
        self.mark.classical_ops += other.classical_ops;
        self.mark.matmul_ops += other.matmul_ops;
        self.mark.analytic_total += other.analytic_total;
    }

    /// CSV export: header, one row per recorded phase (deltas), then a final
    /// `total` row with the grand totals. If charges accrued after the last
    /// snapshot they appear in an `unphased` row before the total.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("phase,quantum_queries,classical_ops,matmul_ops,analytic_total\n");
        let mut row = |name: &str, t: &Totals| {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                name, t.quantum_queries, t.classical_ops, t.matmul_ops, t.analytic_total
            ));
        };
        for p in &self.phases {
            row(&p.phase, &p.deltas);
        }
        let tail = self.totals().minus(&self.mark);
        if tail != Totals::default() {
            row("unphased", &tail);
        }
        row("total", &self.totals());
        out
    }
}
