//! The case split on the leading coefficient, rank verification at explicit
//! coefficient vectors, and the full rank classification.

pub mod expected;
mod vector;

pub use vector::{render_monomial, CoefficientVector};

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{BigRat, GaussRat, MultiPoly, NVARS};
use crate::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError, GroebnerStats};
use crate::opcompose::OperatorElement;
use crate::polymat::{
    build_consequence_matrix, field_rank, minors_stream, partial_smith, substitute_matrix, substitute_partial,
    ConsequenceMatrix, IdealGenerators, MatrixError, MinorOptions, ResidualShape, RingMatrix,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("case index {0} outside 1..=10")]
    CaseIndex(usize),
    #[error("coefficient vector is zero")]
    ZeroVector,
    #[error("first nonzero coefficient must be 1")]
    NotNormalized,
    #[error("coefficient input: {0}")]
    Parse(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Case `k`: `a1 = ... = a(k-1) = 0`, `ak = 1`, the rest free.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CaseSpec {
    k: usize,
}

impl CaseSpec {
    pub fn new(k: usize) -> Result<Self, ClassifyError> {
        if (1..=NVARS).contains(&k) {
            Ok(CaseSpec { k })
        } else {
            Err(ClassifyError::CaseIndex(k))
        }
    }

    pub fn all() -> impl Iterator<Item = CaseSpec> {
        (1..=NVARS).map(|k| CaseSpec { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pinned(&self) -> [Option<BigRat>; NVARS] {
        std::array::from_fn(|j| match (j + 1).cmp(&self.k) {
            std::cmp::Ordering::Less => Some(BigRat::zero()),
            std::cmp::Ordering::Equal => Some(BigRat::one()),
            std::cmp::Ordering::Greater => None,
        })
    }

    /// 1-based indices of the free parameters.
    pub fn free(&self) -> std::ops::RangeInclusive<usize> {
        self.k + 1..=NVARS
    }

    pub fn contains(&self, v: &CoefficientVector) -> bool {
        v.leading_index() == self.k
    }

    pub fn of(v: &CoefficientVector) -> CaseSpec {
        CaseSpec { k: v.leading_index() }
    }
}

/// The matrix of consequences of the general identity, built once.
pub fn generic_matrix() -> &'static ConsequenceMatrix {
    static CELL: OnceLock<ConsequenceMatrix> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = OperatorElement::general(2, 3).expect("M(2,3)");
        build_consequence_matrix(&r).expect("consequence matrix")
    })
}

/// Rank of the matrix of consequences at `v`.
pub fn verify_point(v: &CoefficientVector) -> usize {
    field_rank(&substitute_matrix(&generic_matrix().matrix, v.values()))
}

pub fn random_point(rng: &mut impl Rng) -> CoefficientVector {
    loop {
        let values: [GaussRat; NVARS] = std::array::from_fn(|_| {
            let n = rng.gen_range(-20i64..=20);
            let d = rng.gen_range(1i64..=20);
            GaussRat::real(BigRat::new(n, d).expect("positive denominator"))
        });
        if let Ok(v) = CoefficientVector::normalize(values) {
            return v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub seed: u64,
    pub min_rank: usize,
    pub max_rank: usize,
}

/// Ranks at seeded random rational points.
pub fn generic_rank_probe(trials: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<CoefficientVector> = (0..trials).map(|_| random_point(&mut rng)).collect();
    let ranks: Vec<usize> = points.par_iter().map(verify_point).collect();
    ProbeReport {
        trials,
        seed,
        min_rank: ranks.iter().copied().min().unwrap_or(0),
        max_rank: ranks.iter().copied().max().unwrap_or(0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownIdentity {
    pub vector: CoefficientVector,
    pub rank: usize,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownIdentityCatalog {
    pub entries: Vec<KnownIdentity>,
}

impl KnownIdentityCatalog {
    /// The six identities of rank 16 and eight of rank 19.
    pub fn standard() -> Self {
        let mk = |s: &str, rank| {
            let vector: CoefficientVector = s.parse().expect("catalog entry");
            KnownIdentity { equation: vector.render_equation(), vector, rank }
        };
        let entries = expected::RANK16
            .iter()
            .map(|s| mk(s, 16))
            .chain(expected::RANK19.iter().map(|s| mk(s, 19)))
            .collect();
        KnownIdentityCatalog { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn with_rank(&self, rank: usize) -> impl Iterator<Item = &KnownIdentity> {
        self.entries.iter().filter(move |e| e.rank == rank)
    }

    pub fn contains(&self, v: &CoefficientVector) -> bool {
        self.entries.iter().any(|e| &e.vector == v)
    }

    /// Copy with coordinate `coord` (1-based) of entry `index` negated.
    pub fn with_sign_flipped(&self, index: usize, coord: usize) -> Result<Self, ClassifyError> {
        let mut out = self.clone();
        let e = &mut out.entries[index];
        let mut values = e.vector.values().clone();
        values[coord - 1] = -&values[coord - 1];
        e.vector = CoefficientVector::normalize(values)?;
        e.equation = e.vector.render_equation();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroSetReport {
    pub polynomials: usize,
    pub points_checked: usize,
    /// Points at which some polynomial does not vanish.
    pub failing_points: Vec<CoefficientVector>,
    pub grid_size: Option<u64>,
    /// Grid points of the case at which every polynomial vanishes.
    pub grid_solutions: Option<Vec<CoefficientVector>>,
}

impl ZeroSetReport {
    pub fn all_vanish(&self) -> bool {
        self.failing_points.is_empty()
    }
}

fn vanishes(polys: &[MultiPoly], point: &[GaussRat; NVARS]) -> bool {
    polys.iter().all(|p| p.evaluate(point).is_zero())
}

/// Checks that every polynomial vanishes at each point, and optionally scans
/// the grid `{0, 1, -1, i, -i}` on the free coordinates of a case. The scan
/// is a finite search, not a proof about the whole zero set.
pub fn zero_set_check(polys: &[MultiPoly], points: &[CoefficientVector], grid: Option<CaseSpec>) -> ZeroSetReport {
    let failing_points = points.iter().filter(|v| !vanishes(polys, v.values())).cloned().collect();
    let (grid_size, grid_solutions) = match grid {
        None => (None, None),
        Some(case) => {
            let (size, sols) = grid_scan(polys, case);
            (Some(size), Some(sols))
        }
    };
    ZeroSetReport { polynomials: polys.len(), points_checked: points.len(), failing_points, grid_size, grid_solutions }
}

fn grid_scan(polys: &[MultiPoly], case: CaseSpec) -> (u64, Vec<CoefficientVector>) {
    let grid = [GaussRat::zero(), GaussRat::one(), GaussRat::from_int(-1), GaussRat::i(), -&GaussRat::i()];
    let free: Vec<usize> = case.free().collect();
    let size = 5u64.pow(free.len() as u32);
    let pinned = case.pinned();
    let base: [GaussRat; NVARS] = std::array::from_fn(|j| pinned[j].clone().map(GaussRat::real).unwrap_or_default());
    let mut sols: Vec<CoefficientVector> = (0..size)
        .into_par_iter()
        .filter_map(|mut n| {
            let mut point = base.clone();
            for &j in &free {
                point[j - 1] = grid[(n % 5) as usize].clone();
                n /= 5;
            }
            vanishes(polys, &point).then(|| CoefficientVector::new(point).expect("leading one pinned"))
        })
        .collect();
    sols.sort_by_key(|v| v.to_list());
    (size, sols)
}

#[derive(Clone, Copy, Debug)]
pub struct CaseBudget {
    /// Largest minor size studied for a nonempty residual block.
    pub max_rank: usize,
    pub minors: MinorOptions,
    pub groebner: Budget,
    /// Scan the `{0, ±1, ±i}` grid for the zero sets of the first and last ideals.
    pub grid_scan: bool,
}

impl Default for CaseBudget {
    fn default() -> Self {
        CaseBudget { max_rank: 4, minors: MinorOptions::default(), groebner: Budget::default(), grid_scan: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never fail the run.
    pub informational: bool,
    pub detail: String,
}

impl Check {
    fn hard(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, informational: false, detail: detail.into() }
    }

    fn info(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, informational: true, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealReport {
    pub r: usize,
    pub generators: Option<IdealGenerators>,
    pub gbasis_size: Option<usize>,
    pub gbasis: Vec<String>,
    pub groebner_stats: Option<GroebnerStats>,
    /// `ok`, or the reason the ideal was not finished.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumPoint {
    pub vector: CoefficientVector,
    pub rank: usize,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: usize,
    pub identity_block: usize,
    pub residual: ResidualShape,
    pub residual_nonzero_rows: usize,
    /// All pivots were constants and the identity block has full size.
    pub full_rank_for_all_parameters: bool,
    pub ideals: Vec<IdealReport>,
    /// Points found in the low-rank strata, with their verified ranks.
    pub strata: Vec<StratumPoint>,
    pub checks: Vec<Check>,
    pub budget_exhausted: bool,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }
}

pub fn case_matrix(spec: CaseSpec) -> RingMatrix {
    substitute_partial(&generic_matrix().matrix, &spec.pinned())
}

/// Partial Smith form of the case matrix, then for a nonempty residual the
/// determinantal ideals `r = 1..=max_rank` and their Gröbner bases.
pub fn run_case(spec: CaseSpec, budget: &CaseBudget) -> Result<CaseReport, ClassifyError> {
    let k = spec.k();
    let smith = partial_smith(&case_matrix(spec))?;
    let residual = smith.residual_nonzero();
    let full = smith.identity_size == generic_matrix().matrix.cols();
    let mut report = CaseReport {
        case: k,
        identity_block: smith.identity_size,
        residual: smith.residual_shape(),
        residual_nonzero_rows: residual.rows(),
        full_rank_for_all_parameters: full,
        ideals: Vec::new(),
        strata: Vec::new(),
        checks: Vec::new(),
        budget_exhausted: false,
    };
    let want_block = expected::IDENTITY_BLOCK[k - 1];
    report.checks.push(Check::hard(
        "identity block size",
        smith.identity_size == want_block,
        format!("{} (expected {want_block})", smith.identity_size),
    ));
    report.checks.push(Check::hard("op log replays", smith.replay_matches(), ""));

    if !full && residual.rows() == 0 {
        // No parameter survives: the matrix is constant and the case is one point.
        let v = CoefficientVector::new(std::array::from_fn(|j| if j + 1 == k { GaussRat::one() } else { GaussRat::zero() }))?;
        let rank = verify_point(&v);
        report.checks.push(Check::hard(
            "constant matrix rank",
            rank == smith.identity_size,
            format!("rank {rank} at {v}"),
        ));
        report.strata.push(StratumPoint { equation: v.render_equation(), vector: v, rank });
    }

    if residual.rows() > 0 {
        let rows = expected::ideal_rows(k);
        let mut bases: Vec<(usize, GroebnerBasis)> = Vec::new();
        for r in 1..=budget.max_rank.min(residual.cols()) {
            let want = rows.map(|rs| rs[r - 1]);
            let mut ideal =
                IdealReport { r, generators: None, gbasis_size: None, gbasis: Vec::new(), groebner_stats: None, status: "ok".into() };
            let gens = match minors_stream(&residual, r, budget.minors) {
                Ok(g) => g,
                Err(MatrixError::MemoryCap { cap, partial }) => {
                    ideal.status = format!("generator cap {cap} exceeded");
                    ideal.generators = Some(*partial);
                    report.budget_exhausted = true;
                    report.ideals.push(ideal);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(w) = want {
                report.checks.push(Check::hard(
                    format!("r={r} minor total"),
                    gens.total_minors == w.total,
                    format!("{} (expected {})", gens.total_minors, w.total),
                ));
                report.checks.push(Check::info(
                    format!("r={r} nonzero minors"),
                    gens.nonzero_count == w.nonzero,
                    format!("{} (reference {}; depends on pivot order)", gens.nonzero_count, w.nonzero),
                ));
                report.checks.push(Check::info(
                    format!("r={r} distinct monic minors"),
                    gens.monic_distinct_count == w.monic,
                    format!("{} (reference {})", gens.monic_distinct_count, w.monic),
                ));
                let deg = (gens.degree_min.unwrap_or(0), gens.degree_max.unwrap_or(0));
                report.checks.push(Check::info(
                    format!("r={r} degree range"),
                    deg == w.degrees,
                    format!("{}..{} (reference {}..{})", deg.0, deg.1, w.degrees.0, w.degrees.1),
                ));
            }
            match buchberger(&gens.generators, budget.groebner) {
                Ok(gb) => {
                    if let Some(w) = want {
                        report.checks.push(Check::hard(
                            format!("r={r} Groebner basis size"),
                            gb.len() == w.gbasis,
                            format!("{} (expected {})", gb.len(), w.gbasis),
                        ));
                    }
                    ideal.gbasis_size = Some(gb.len());
                    ideal.gbasis = gb.polys().iter().map(|p| p.to_string()).collect();
                    ideal.groebner_stats = Some(gb.stats);
                    bases.push((r, gb));
                }
                Err(GroebnerError::BudgetExhausted { kind, stats }) => {
                    ideal.status = format!("{kind} exhausted");
                    ideal.groebner_stats = Some(stats);
                    report.budget_exhausted = true;
                }
                Err(e) => return Err(e.into()),
            }
            ideal.generators = Some(IdealGenerators { generators: Vec::new(), ..gens });
            report.ideals.push(ideal);
        }
        if let Some((_, first)) = bases.iter().find(|(r, _)| *r == 1) {
            let claimed: Option<&[&str]> = match k {
                1 => Some(&expected::CASE1_FIRST_IDEAL),
                4 => Some(&expected::CASE4_FIRST_IDEAL),
                _ => None,
            };
            if let Some(claimed) = claimed {
                let want = GroebnerBasis::from_claimed(claimed.iter().map(|s| s.parse().expect("reference polynomial")))?;
                report.checks.push(Check::hard("r=1 basis equals reference", first == &want, first.polys().len().to_string()));
            }
        }
        if budget.grid_scan {
            let mut seen = Vec::new();
            for (_, gb) in bases.iter().filter(|(r, _)| *r == 1 || *r == budget.max_rank.min(residual.cols())) {
                for v in grid_scan(gb.polys(), spec).1 {
                    if !seen.contains(&v) {
                        seen.push(v);
                    }
                }
            }
            for v in seen {
                let rank = verify_point(&v);
                report.strata.push(StratumPoint { equation: v.render_equation(), vector: v, rank });
            }
            let catalog = KnownIdentityCatalog::standard();
            let mine: Vec<&KnownIdentity> = catalog.entries.iter().filter(|e| spec.contains(&e.vector)).collect();
            let matches = mine.len() == report.strata.len()
                && mine.iter().all(|e| report.strata.iter().any(|s| s.vector == e.vector && s.rank == e.rank));
            report.checks.push(Check::hard(
                "grid zero set equals catalog points",
                matches,
                format!("{} grid points, {} catalog points", report.strata.len(), mine.len()),
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub equation: String,
    pub vector: CoefficientVector,
    pub claimed_rank: usize,
    pub observed_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub identities: Vec<IdentityCheck>,
    pub rank16_verified: usize,
    pub rank19_verified: usize,
    pub generic: ProbeReport,
    /// Cases certified to have rank 20 for every parameter value.
    pub full_rank_cases: Vec<usize>,
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} identities verified; generic rank {}",
            self.rank16_verified + self.rank19_verified,
            self.generic.max_rank
        )
    }
}

/// Checks the rank of every catalog entry, probes random points, and
/// certifies the full-rank cases through the partial Smith form.
pub fn reproduce_theorem(catalog: &KnownIdentityCatalog, trials: usize, seed: u64) -> Result<TheoremReport, ClassifyError> {
    let identities: Vec<IdentityCheck> = catalog
        .entries
        .par_iter()
        .map(|e| IdentityCheck {
            equation: e.equation.clone(),
            vector: e.vector.clone(),
            claimed_rank: e.rank,
            observed_rank: verify_point(&e.vector),
        })
        .collect();
    let mut failures = Vec::new();
    for c in identities.iter().filter(|c| c.claimed_rank != c.observed_rank) {
        failures.push(format!("{}: rank {} claimed, {} observed", c.equation, c.claimed_rank, c.observed_rank));
    }
    let ok = |rank| identities.iter().filter(|c| c.claimed_rank == rank && c.observed_rank == rank).count();
    let (rank16_verified, rank19_verified) = (ok(16), ok(19));
    if rank16_verified != 6 || rank19_verified != 8 {
        failures.push(format!("verified {rank16_verified} of 6 rank-16 and {rank19_verified} of 8 rank-19 identities"));
    }
    let generic = generic_rank_probe(trials, seed);
    if generic.min_rank != 20 {
        failures.push(format!("random probe reached rank {}", generic.min_rank));
    }
    let mut full_rank_cases = Vec::new();
    for k in expected::FULL_RANK_CASES {
        let s = partial_smith(&case_matrix(CaseSpec::new(k)?))?;
        if s.identity_size == 20 {
            full_rank_cases.push(k);
        } else {
            failures.push(format!("case {k}: identity block {} instead of 20", s.identity_size));
        }
    }
    Ok(TheoremReport { identities, rank16_verified, rank19_verified, generic, full_rank_cases, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn point_ranks() {
        let v = |s: &str| s.parse::<CoefficientVector>().unwrap();
        assert_eq!(verify_point(&v("1,0,0,0,0,0,0,0,0,0")), 16);
        assert_eq!(verify_point(&v("1,0,0,0,I,0,0,-1,0,-I")), 19);
        assert_eq!(verify_point(&v("1,1,1,1,0,0,0,0,0,0")), 19);
        assert_eq!(verify_point(&v("1,0,0,-1,0,0,0,0,0,-1")), 16);
        assert_eq!(verify_point(&v("1,0,0,-1,0,0,0,0,1,-1")), 20);
    }

    #[test]
    fn catalog_rendering() {
        let c = KnownIdentityCatalog::standard();
        assert_eq!(c.len(), 14);
        let eqs: Vec<&str> = c.entries.iter().map(|e| e.equation.as_str()).collect();
        assert_eq!(
            &eqs[..6],
            &[
                "L^3(xy) = 0",
                "L^3(xy) = xL^3(y)",
                "L^3(xy) = L^3(x)y",
                "L^3(xy) = L^3(x)y + xL^3(y)",
                "L^3(x)y = 0",
                "xL^3(y) = 0",
            ]
        );
        assert_eq!(eqs[6], "L^3(xy) + L^2(xL(y)) + L(xL^2(y)) + xL^3(y) = 0");
        assert_eq!(eqs[10], "L^3(xy) + L^2(L(x)y) + L(L^2(x)y) + L^3(x)y = 0");
        assert_eq!(eqs[12], "L^3(xy) + i L^2(L(x)y) - L(L^2(x)y) - i L^3(x)y = 0");
        for e in &c.entries {
            assert_eq!(e.equation.parse::<CoefficientVector>().unwrap(), e.vector);
        }
    }

    #[test]
    fn case_specs() {
        assert!(CaseSpec::new(0).is_err());
        assert!(CaseSpec::new(11).is_err());
        let c = CaseSpec::new(4).unwrap();
        assert_eq!(c.free(), 5..=10);
        let p = c.pinned();
        assert!(p[..3].iter().all(|x| x.as_ref().is_some_and(BigRat::is_zero)));
        assert!(p[3].as_ref().is_some_and(BigRat::is_one));
        assert!(p[4..].iter().all(Option::is_none));
    }

    #[test]
    fn zero_set_of_first_ideal() {
        let polys: Vec<MultiPoly> = expected::CASE1_FIRST_IDEAL.iter().map(|s| s.parse().unwrap()).collect();
        let d: CoefficientVector = "1,0,0,-1,0,0,0,0,0,-1".parse().unwrap();
        let rep = zero_set_check(&polys, &[d], Some(CaseSpec::new(1).unwrap()));
        assert!(rep.all_vanish());
        assert_eq!(rep.grid_size, Some(5u64.pow(9)));
        let sols: Vec<String> = rep.grid_solutions.unwrap().iter().map(|v| v.to_list()).collect();
        assert_eq!(
            sols,
            vec![
                "1,0,0,-1,0,0,0,0,0,-1",
                "1,0,0,-1,0,0,0,0,0,0",
                "1,0,0,0,0,0,0,0,0,-1",
                "1,0,0,0,0,0,0,0,0,0"
            ]
        );
    }

    #[test]
    fn probe_is_deterministic() {
        let a = generic_rank_probe(3, 7);
        assert_eq!(a, generic_rank_probe(3, 7));
        assert_eq!((a.min_rank, a.max_rank), (20, 20));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn every_vector_lies_in_exactly_one_case(raw in prop::array::uniform10(-3i64..=3)) {
            prop_assume!(raw.iter().any(|x| *x != 0));
            let v = CoefficientVector::normalize(raw.map(GaussRat::from_int)).unwrap();
            prop_assert_eq!(CaseSpec::all().filter(|c| c.contains(&v)).count(), 1);
            let c = CaseSpec::of(&v);
            for (j, pin) in c.pinned().iter().enumerate() {
                if let Some(x) = pin {
                    prop_assert_eq!(&v.values()[j], &GaussRat::real(x.clone()));
                }
            }
        }
    }
}
