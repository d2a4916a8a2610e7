//! Whole-field verification of the permutation criterion.
//!
//! The diagonal `b = a` is swept completely, which covers every pair the
//! criterion accepts. Off-diagonal pairs are either swept completely or sampled.
//! Sample `i` is drawn from its own ChaCha stream keyed by the seed, so any
//! worker can produce any sample without coordination.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::{Elem, ExtCtx, ExtElem, FiniteField};
use crate::pp::{is_pp_exhaustive, rootless_cubic_table, MuTester, PpError, TrinomialInstance};

/// Largest `n` for which every pair is also run through the exhaustive oracle by default.
pub const EXHAUSTIVE_DEFAULT_MAX_N: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Necessity {
    /// Every pair `(a, b)`.
    All,
    /// This many seeded random pairs.
    Sampled(u64),
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub n: u32,
    pub necessity: Necessity,
    /// Also run the `F_{q^2}` scan on every checked pair.
    pub exhaustive: bool,
    pub workers: usize,
    pub seed: u64,
}

impl SweepConfig {
    /// Full pair sweeps for `q ≤ 16`, sampling beyond.
    pub fn new(n: u32, budget: u64, workers: usize, seed: u64) -> SweepConfig {
        let small = n <= EXHAUSTIVE_DEFAULT_MAX_N;
        SweepConfig {
            n,
            necessity: if small { Necessity::All } else { Necessity::Sampled(budget) },
            exhaustive: small,
            workers,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub a: String,
    pub b: String,
    pub criterion: bool,
    pub mu: bool,
    pub exhaustive: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n: u32,
    pub q: u64,
    /// `#{a : X^3 + X + 1/a has no root in F_q}`.
    pub rootless_count: u64,
    /// Permutation pairs found by the circle test among the pairs examined.
    pub pp_count: u64,
    pub diagonal_checked: u64,
    pub off_diagonal_checked: u64,
    pub exhaustive_checked: u64,
    pub disagreements: Vec<Disagreement>,
    #[serde(skip)]
    pub millis: u128,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty() && self.pp_count == self.rootless_count
    }
}

/// The pair drawn for sample `index`.
pub fn sample_pair(ext: &ExtCtx, seed: u64, index: u64) -> (Elem, ExtElem) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let q = ext.q();
    let a = rng.gen_range(1..q);
    let b = ext.element(rng.gen_range(1..q * q));
    (a, b)
}

#[derive(Default)]
struct Tally {
    pp: u64,
    checked: u64,
    exhaustive: u64,
    bad: Vec<(u64, Disagreement)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.pp += other.pp;
        self.checked += other.checked;
        self.exhaustive += other.exhaustive;
        self.bad.extend(other.bad);
        self
    }
}

pub fn verify_theorem(cfg: &SweepConfig) -> Result<SweepReport, PpError> {
    let start = Instant::now();
    let ext = ExtCtx::of_degree(cfg.n)?;
    let q = ext.q();
    let table = Arc::new(rootless_cubic_table(ext.base()));
    let mu: Arc<[ExtElem]> = ext.enumerate_mu().into();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| PpError::Bug(e.to_string()))?;

    let check = |tester: &mut MuTester, idx: u64, a: Elem, b: ExtElem| -> Result<Tally, PpError> {
        let mut t = Tally {
            checked: 1,
            ..Tally::default()
        };
        let crit = b == ExtElem::base(a) && table[a as usize];
        let mu_ok = tester.test(a, b);
        let ex = if cfg.exhaustive {
            t.exhaustive = 1;
            Some(is_pp_exhaustive(&TrinomialInstance::new(&ext, a, b)?)?)
        } else {
            None
        };
        t.pp = mu_ok as u64;
        if mu_ok != crit || ex.is_some_and(|e| e != mu_ok) {
            t.bad.push((
                idx,
                Disagreement {
                    a: ext.base().format(a),
                    b: ext.format(b),
                    criterion: crit,
                    mu: mu_ok,
                    exhaustive: ex,
                },
            ));
        }
        Ok(t)
    };

    let diag: Tally = pool.install(|| {
        (1..q)
            .into_par_iter()
            .map_init(
                || MuTester::with_mu(&ext, mu.clone()),
                |tester, a| check(tester, a, a, ExtElem::base(a)),
            )
            .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))
    })?;

    let off: Tally = pool.install(|| match cfg.necessity {
        Necessity::All => (1..q)
            .into_par_iter()
            .flat_map_iter(|a| (1..q * q).map(move |bi| (a, bi)))
            .filter(|&(a, bi)| bi != a)
            .map_init(
                || MuTester::with_mu(&ext, mu.clone()),
                |tester, (a, bi)| check(tester, q + a * q * q + bi, a, ext.element(bi)),
            )
            .try_reduce(Tally::default, |x, y| Ok(x.merge(y))),
        Necessity::Sampled(budget) => (0..budget)
            .into_par_iter()
            .map_init(
                || MuTester::with_mu(&ext, mu.clone()),
                |tester, i| {
                    let (a, b) = sample_pair(&ext, cfg.seed, i);
                    if b == ExtElem::base(a) {
                        // The diagonal is already covered in full.
                        return Ok(Tally::default());
                    }
                    check(tester, q + i, a, b)
                },
            )
            .try_reduce(Tally::default, |x, y| Ok(x.merge(y))),
    })?;

    let total = diag.merge(off);
    let mut bad = total.bad;
    bad.sort_by_key(|(i, _)| *i);
    Ok(SweepReport {
        n: cfg.n,
        q,
        rootless_count: table.iter().filter(|&&r| r).count() as u64,
        pp_count: total.pp,
        diagonal_checked: q - 1,
        off_diagonal_checked: total.checked - (q - 1),
        exhaustive_checked: total.exhaustive,
        disagreements: bad.into_iter().map(|(_, d)| d).collect(),
        millis: start.elapsed().as_millis(),
    })
}
