use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use super::{cofactor_det, MatrixError, RingMatrix};
use crate::exactalg::MultiPoly;

/// Receives the nonzero `r`-minors of a matrix. Sinks are filled in parallel
/// and merged, so the visiting order is unspecified.
pub trait MinorSink: Send + Sized {
    fn accept(&mut self, minor: MultiPoly);
    fn merge(self, other: Self) -> Self;
}

#[derive(Clone, Copy, Debug)]
pub struct MinorOptions {
    /// Largest number of distinct monic generators kept in memory. Counting
    /// continues past the cap; only materialisation stops.
    pub max_generators: Option<usize>,
}

impl Default for MinorOptions {
    fn default() -> Self {
        MinorOptions { max_generators: Some(400_000) }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct IdealGenerators {
    pub r: usize,
    pub total_minors: u64,
    pub nonzero_count: u64,
    pub monic_distinct_count: u64,
    pub degree_min: Option<u32>,
    pub degree_max: Option<u32>,
    /// Distinct monic minors in ascending polynomial order.
    #[serde(skip)]
    pub generators: Vec<MultiPoly>,
}

impl IdealGenerators {
    /// Statistics header followed by one generator per line.
    pub fn to_text(&self) -> String {
        let deg = match (self.degree_min, self.degree_max) {
            (Some(a), Some(b)) => format!("{a}..{b}"),
            _ => "-".into(),
        };
        let mut out = format!(
            "# r {} total {} nonzero {} monic_distinct {} degrees {deg}\n",
            self.r, self.total_minors, self.nonzero_count, self.monic_distinct_count
        );
        for g in &self.generators {
            out.push_str(&format!("{g}\n"));
        }
        out
    }
}

pub(crate) fn fingerprint(p: &MultiPoly) -> u128 {
    let mut h1 = DefaultHasher::new();
    p.hash(&mut h1);
    let mut h2 = DefaultHasher::new();
    0x9e37_79b9_u32.hash(&mut h2);
    p.hash(&mut h2);
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

struct Collector {
    cap: Option<usize>,
    nonzero: u64,
    degree: Option<(u32, u32)>,
    seen: HashSet<u128>,
    kept: Option<HashSet<MultiPoly>>,
}

impl Collector {
    fn new(cap: Option<usize>) -> Self {
        Collector { cap, nonzero: 0, degree: None, seen: HashSet::new(), kept: Some(HashSet::new()) }
    }

    fn check_cap(&mut self) {
        if let (Some(cap), Some(kept)) = (self.cap, &self.kept) {
            if kept.len() > cap {
                self.kept = None;
            }
        }
    }
}

impl MinorSink for Collector {
    fn accept(&mut self, minor: MultiPoly) {
        self.nonzero += 1;
        let d = minor.total_degree().expect("nonzero minor");
        self.degree = Some(match self.degree {
            Some((lo, hi)) => (lo.min(d), hi.max(d)),
            None => (d, d),
        });
        let monic = minor.make_monic().expect("nonzero minor");
        if self.seen.insert(fingerprint(&monic)) {
            if let Some(kept) = &mut self.kept {
                kept.insert(monic);
            }
            self.check_cap();
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.nonzero += other.nonzero;
        self.degree = match (self.degree, other.degree) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (x, None) => x,
            (None, y) => y,
        };
        self.seen.extend(other.seen);
        self.kept = match (self.kept, other.kept) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        self.check_cap();
        self
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut cur, &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Feeds every nonzero `r`-minor of `m` to a sink. Each `(r-1)`-row prefix
/// computes its `(r-1)`-minors once; the `r`-minors on every later row are
/// then expanded along that row.
pub fn stream_minors<S, F>(m: &RingMatrix, r: usize, make: F) -> Result<S, MatrixError>
where
    S: MinorSink,
    F: Fn() -> S + Sync + Send,
{
    let max = m.rows().min(m.cols());
    if r == 0 || r > max {
        return Err(MatrixError::MinorSize { r, max });
    }
    let small_cols = combinations(m.cols(), r - 1);
    let col_sets = combinations(m.cols(), r);
    // For each r-column set, the (r-1)-subsets obtained by dropping position k.
    let drops: Vec<Vec<usize>> = col_sets
        .iter()
        .map(|s| {
            (0..r)
                .map(|k| {
                    let sub: Vec<usize> = s.iter().enumerate().filter(|(x, _)| *x != k).map(|(_, v)| *v).collect();
                    small_cols.binary_search(&sub).expect("subset present")
                })
                .collect()
        })
        .collect();
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&i| !m.row_is_zero(i)).collect();
    let prefixes = combinations(live_rows.len(), r - 1);
    let sink = prefixes
        .par_iter()
        .fold(&make, |mut sink, prefix| {
            let rows: Vec<usize> = prefix.iter().map(|&i| live_rows[i]).collect();
            let cached: Vec<MultiPoly> = small_cols.iter().map(|c| cofactor_det(m, &rows, c)).collect();
            if cached.iter().all(MultiPoly::is_zero) {
                return sink;
            }
            let start = prefix.last().map_or(0, |&x| x + 1);
            for &l in &live_rows[start..] {
                for (s, cols) in col_sets.iter().enumerate() {
                    let mut acc = MultiPoly::zero();
                    for (k, &c) in cols.iter().enumerate() {
                        let e = m.get(l, c);
                        let sub = &cached[drops[s][k]];
                        if e.is_zero() || sub.is_zero() {
                            continue;
                        }
                        let term = e * sub;
                        acc = if (r - 1 + k).is_multiple_of(2) { &acc + &term } else { &acc - &term };
                    }
                    if !acc.is_zero() {
                        sink.accept(acc);
                    }
                }
            }
            sink
        })
        .reduce(&make, S::merge);
    Ok(sink)
}

/// Counts and deduplicates the `r`-minors of `m`.
pub fn minors_stream(m: &RingMatrix, r: usize, opts: MinorOptions) -> Result<IdealGenerators, MatrixError> {
    let c = stream_minors(m, r, || Collector::new(opts.max_generators))?;
    let mut out = IdealGenerators {
        r,
        total_minors: binomial(m.rows(), r) * binomial(m.cols(), r),
        nonzero_count: c.nonzero,
        monic_distinct_count: c.seen.len() as u64,
        degree_min: c.degree.map(|d| d.0),
        degree_max: c.degree.map(|d| d.1),
        generators: Vec::new(),
    };
    match c.kept {
        Some(kept) => {
            let mut g: Vec<MultiPoly> = kept.into_iter().collect();
            g.sort();
            out.generators = g;
            Ok(out)
        }
        None => Err(MatrixError::MemoryCap { cap: opts.max_generators.unwrap_or(0), partial: Box::new(out) }),
    }
}
