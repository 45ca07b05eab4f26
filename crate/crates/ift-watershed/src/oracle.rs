//! Brute-force minimax path-cost reference for tiny volumes.
//!
//! Shares no propagation code with the engine: costs are found by iterating
//! the minimax relaxation `best[q] = min(best[q], max(best[p], w(p,q)))`
//! over all arcs until a fixpoint, which equals the exhaustive
//! minimum-over-all-paths of the maximum arc weight.

use crate::engine::{IftRun, Label, MarkerSet};
use crate::error::{Error, Result};
use crate::volume::{arc_weight, Volume};

/// Enumeration feasibility cap on the node count.
pub const ORACLE_CAP: usize = 64;

pub const UNREACHED: u32 = u32::MAX;

/// Per-voxel verdict from the bottleneck costs alone. Plateau ties cannot
/// be decided without the flood order, so they are reported as `Tie`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decided {
    In,
    Out,
    Tie,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Minimax path cost to the nearest IN marker, per voxel.
    pub best_in_cost: Vec<u32>,
    /// Minimax path cost to the nearest OUT marker, per voxel.
    pub best_out_cost: Vec<u32>,
    pub decided_label: Vec<Decided>,
}

/// One per-voxel disagreement between engine and oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub voxel: u32,
    pub kind: MismatchKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MismatchKind {
    Cost { engine: u32, oracle: u32 },
    Label { engine: Label, oracle: Decided },
}

#[derive(Debug, Clone, Default)]
pub struct AgreementReport {
    pub mismatches: Vec<Mismatch>,
    pub tie_voxels: usize,
}

impl AgreementReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl std::fmt::Display for AgreementReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_clean() {
            return write!(f, "agreement ({} tie voxels)", self.tie_voxels);
        }
        writeln!(f, "{} mismatches:", self.mismatches.len())?;
        for m in &self.mismatches {
            match &m.kind {
                MismatchKind::Cost { engine, oracle } => {
                    writeln!(f, "  voxel {}: cost engine={engine} oracle={oracle}", m.voxel)?
                }
                MismatchKind::Label { engine, oracle } => writeln!(
                    f,
                    "  voxel {}: label engine={engine:?} oracle={oracle:?}",
                    m.voxel
                )?,
            }
        }
        Ok(())
    }
}

fn relax_to_fixpoint(vol: &Volume, seeds: &[u32]) -> Vec<u32> {
    let n = vol.node_count();
    let dims = vol.dims();
    let mut best = vec![UNREACHED; n];
    for &s in seeds {
        best[s as usize] = 0;
    }
    loop {
        let mut changed = false;
        for p in 0..n as u32 {
            if best[p as usize] == UNREACHED {
                continue;
            }
            for q in dims.neighbors(p) {
                let through = best[p as usize].max(arc_weight(vol.value(p), vol.value(q)));
                if through < best[q as usize] {
                    best[q as usize] = through;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    best
}

/// Exact minimax path cost from every voxel to each marker class.
pub fn brute_force_costs(vol: &Volume, markers: &MarkerSet) -> Result<OracleResult> {
    let n = vol.node_count();
    if n > ORACLE_CAP {
        return Err(Error::OracleTooLarge { n, cap: ORACLE_CAP });
    }
    let best_in = relax_to_fixpoint(vol, &markers.in_markers);
    let best_out = relax_to_fixpoint(vol, &markers.out_markers);
    let decided = best_in
        .iter()
        .zip(&best_out)
        .map(|(&i, &o)| match i.cmp(&o) {
            std::cmp::Ordering::Less => Decided::In,
            std::cmp::Ordering::Greater => Decided::Out,
            std::cmp::Ordering::Equal => Decided::Tie,
        })
        .collect();
    Ok(OracleResult {
        best_in_cost: best_in,
        best_out_cost: best_out,
        decided_label: decided,
    })
}

/// Check an engine run against the brute-force costs: the final cost must
/// equal min(best_in, best_out) everywhere, and the label must match the
/// oracle verdict wherever it is not a tie.
pub fn check_against_engine(
    vol: &Volume,
    markers: &MarkerSet,
    run: &IftRun,
) -> Result<AgreementReport> {
    let oracle = brute_force_costs(vol, markers)?;
    let mut report = AgreementReport::default();
    for v in 0..vol.node_count() as u32 {
        let i = v as usize;
        let want = oracle.best_in_cost[i].min(oracle.best_out_cost[i]);
        if run.costs[i] != want {
            report.mismatches.push(Mismatch {
                voxel: v,
                kind: MismatchKind::Cost {
                    engine: run.costs[i],
                    oracle: want,
                },
            });
        }
        match oracle.decided_label[i] {
            Decided::Tie => report.tie_voxels += 1,
            d => {
                let want_label = if d == Decided::In { Label::In } else { Label::Out };
                if run.labels.get(v) != want_label {
                    report.mismatches.push(Mismatch {
                        voxel: v,
                        kind: MismatchKind::Label {
                            engine: run.labels.get(v),
                            oracle: d,
                        },
                    });
                }
            }
        }
    }
    Ok(report)
}
