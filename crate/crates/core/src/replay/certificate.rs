//! Ideal-membership certificates for the reduced equations.
//!
//! Every equation `dsys_j` of a coefficient system contains `F_j` linearly
//! with coefficient 1 and no other `F`. Dividing a target by each equation in
//! turn, monic in its `F_j`, leaves remainder zero exactly when the target is
//! a combination `Σ M_j dsys_j`. The quotients `M_j` are frozen in the corpus
//! as `cert_<target>_<j>`; a missing entry stands for a zero multiplier.

use super::{verdict, Recorder, Session};
use crate::mvpoly::{CorpusEntry, MvPoly, MvPolyError};

pub const CERTIFICATE_PREFIX: &str = "cert_";

/// The systems with certificates: equation prefix and reduced targets.
pub(super) const SYSTEMS: [(&str, &[&str]); 2] = [
    ("dsys_", &["dred_quad", "dred_1", "dred_2", "dred_3"]),
    ("dsys0_", &["dred0_quad", "dred0_1", "dred0_2", "dred0_3"]),
];

fn cert_name(target: &str, j: usize) -> String {
    format!("{CERTIFICATE_PREFIX}{target}_{j}")
}

fn equations(s: &Session, prefix: &str) -> Result<Vec<MvPoly>, MvPolyError> {
    (0..7).map(|j| s.get(&format!("{prefix}{j}")).cloned()).collect()
}

/// Recomputes the multipliers from the equations and targets in `corpus`.
pub fn derive_certificates(corpus: &crate::mvpoly::Corpus) -> Result<Vec<CorpusEntry>, MvPolyError> {
    let s = Session::new(corpus);
    let mut out = Vec::new();
    for (prefix, targets) in SYSTEMS {
        let eqs = equations(&s, prefix)?;
        for &t in targets {
            let mut rem = s.get(t)?.clone();
            for (j, eq) in eqs.iter().enumerate() {
                let (q, r) = rem.divrem_monic(eq, &format!("F{j}"))?;
                rem = r;
                if !q.is_zero() {
                    out.push(CorpusEntry::new(&cert_name(t, j), q));
                }
            }
            if !rem.is_zero() {
                return Err(MvPolyError::NotDivisible(format!(
                    "{t} is not in the ideal of {prefix}*: {}",
                    rem.diff_witness(&MvPoly::zero(), 4)
                )));
            }
        }
    }
    Ok(out)
}

/// Checks `target = Σ M_j dsys_j` with the frozen multipliers.
pub(super) fn check(s: &Session, rec: &mut Recorder, system: usize, anchor: &str) {
    let (prefix, targets) = SYSTEMS[system];
    for &t in targets {
        rec.check(&format!("{t}-membership"), anchor, |notes| {
            let eqs = equations(s, prefix)?;
            let mut sum = MvPoly::zero();
            let mut used = Vec::new();
            for (j, eq) in eqs.iter().enumerate() {
                if let Ok(m) = s.get(&cert_name(t, j)) {
                    sum = sum.add(&m.mul(eq));
                    used.push(format!("{prefix}{j}"));
                }
            }
            notes.push(format!("multipliers on {}", used.join(", ")));
            let target = s.get(t)?;
            Ok(verdict(sum == *target, || sum.diff_witness(target, 6)))
        });
    }
}
