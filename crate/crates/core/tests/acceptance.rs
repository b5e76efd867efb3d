//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.
//!
//! `cargo test -p opident --test acceptance -- --nocapture`

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opident::classify::expected::{
    ideal_rows, CASE1_FIRST_IDEAL, CASE1_FOURTH_RADICAL, CASE4_FIRST_IDEAL, FULL_RANK_CASES, RESIDUAL_ZERO_ROWS,
};
use opident::classify::{
    case_matrix, generic_matrix, generic_rank_probe, reproduce_theorem, verify_point, zero_set_check, CaseSpec,
    CoefficientVector, KnownIdentityCatalog,
};
use opident::exactalg::{BigRat, GaussRat, MultiPoly, Ring, NVARS};
use opident::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError};
use opident::opcompose::{raw_paths, CompositionPath, ConsequenceMaps, OperatorElement};
use opident::opmonoms::{enumerate_basis, narayana, parse_monomial, Basis, OperatorMonomial};
use opident::polymat::{
    minors_stream, partial_smith, substitute_matrix, FieldMatrix, IdealGenerators, Matrix, MinorOptions, RingMatrix,
};

const SEED: u64 = 1;

// Wall-clock limits per criterion.
const BASIS_LIMIT: Duration = Duration::from_secs(1);
const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const MATRIX_LIMIT: Duration = Duration::from_secs(1);
const RANK_LIMIT: Duration = Duration::from_secs(30);
const FULL_RANK_LIMIT: Duration = Duration::from_secs(60);
const SMITH_LIMIT: Duration = Duration::from_secs(60);
const SMALL_MINORS_LIMIT: Duration = Duration::from_secs(10);
const MINORS_LIMIT: Duration = Duration::from_secs(2 * 3600);
const FIRST_IDEAL_LIMIT: Duration = Duration::from_secs(300);
const GROEBNER_LIMIT: Duration = Duration::from_secs(2 * 3600);
const PROPERTY_LIMIT: Duration = Duration::from_secs(300);
const CONTROL_LIMIT: Duration = Duration::from_secs(10);

/// Largest basis that gets the exhaustive S-polynomial check.
const MAX_CHECKED_BASIS: usize = 600;

type Verdict = Result<String, String>;

struct Run {
    failed: Vec<usize>,
}

impl Run {
    fn criterion(&mut self, n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(d) => println!("PASS {n:>2} {name} ({took:.2?}): {d}"),
            Err(d) => {
                println!("FAIL {n:>2} {name} ({took:.2?}): {d}");
                self.failed.push(n);
            }
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

/// Plain Gaussian elimination over Q(i), independent of the library's rank.
fn naive_rank(m: &FieldMatrix) -> usize {
    let mut rows: Vec<Vec<GaussRat>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            let pivot = rows[rank].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot).skip(c) {
                *x = &*x - &(&f * p);
            }
        }
        rank += 1;
    }
    rank
}

fn catalan(n: usize) -> BigUint {
    let mut c = vec![BigUint::from(1u32)];
    for k in 1..=n {
        let next = (0..k).map(|i| &c[i] * &c[k - 1 - i]).sum();
        c.push(next);
    }
    c[n].clone()
}

struct CaseData {
    residual: RingMatrix,
    ideals: Vec<IdealGenerators>,
    bases: Vec<Option<GroebnerBasis>>,
}

#[test]
fn acceptance() {
    let mut run = Run { failed: Vec::new() };
    let catalog = KnownIdentityCatalog::standard();

    run.criterion(1, "basis dimensions", BASIS_LIMIT, || {
        let display = [
            "L^3(**)", "L^2(L(*)*)", "L(L^2(*)*)", "L^3(*)*", "L^2(*L(*))",
            "L(L(*)L(*))", "L^2(*)L(*)", "L(*L^2(*))", "L(*)L^2(*)", "*L^3(*)",
        ];
        let b23 = enumerate_basis(2, 3).map_err(|e| e.to_string())?;
        let want: Vec<OperatorMonomial> = display.iter().map(|s| parse_monomial(s).unwrap()).collect();
        ensure(b23 == want, || format!("M(2,3) is {b23:?}"))?;
        let b34 = enumerate_basis(3, 4).map_err(|e| e.to_string())?;
        ensure(b34.len() == 105, || format!("M(3,4) has {} elements", b34.len()))?;
        for (rank, text) in [(42, "L^2(*L^2(*)*)"), (57, "L(L(*)L(*)L(*))"), (66, "L^2(*)*L^2(*)")] {
            ensure(b34[rank - 1].to_string() == text, || format!("rank {rank} is {}", b34[rank - 1]))?;
        }
        Ok("10 and 105 monomials, named ranks agree".into())
    });

    run.criterion(2, "worked composition example", EXAMPLE_LIMIT, || {
        let path: CompositionPath = "(∘1B, ∘2L)".parse().map_err(|e| format!("{e:?}"))?;
        let want = [
            "L^3(*L(*)*)", "L^2(L(*L(*))*)", "L(L^2(*L(*))*)", "L^3(*L(*))*", "L^2(*L(*)L(*))",
            "L(L(*L(*))L(*))", "L^2(*L(*))L(*)", "L(*L(*)L^2(*))", "L(*L(*))L^2(*)", "*L(*)L^3(*)",
        ];
        for (m, w) in enumerate_basis(2, 3).unwrap().iter().zip(want) {
            let img = path.apply(m).map_err(|e| e.to_string())?;
            ensure(img.to_string() == w, || format!("{m} maps to {img}, expected {w}"))?;
        }
        Ok("10 images agree".into())
    });

    run.criterion(3, "matrix of consequences", MATRIX_LIMIT, || {
        let g = generic_matrix();
        let m = &g.matrix;
        ensure((m.rows(), m.cols()) == (105, 20), || format!("shape {}x{}", m.rows(), m.cols()))?;
        ensure(m.zero_rows() == vec![42, 57, 66], || format!("zero rows {:?}", m.zero_rows()))?;
        let raw = raw_paths(2).len();
        ensure(raw == 28, || format!("{raw} raw paths"))?;
        // Independently: the target monomials hit by no path are the zero rows.
        let target = Basis::new(3, 4).unwrap();
        let mut hit = BTreeSet::new();
        for path in raw_paths(2) {
            for src in enumerate_basis(2, 3).unwrap() {
                hit.insert(target.rank_of(&path.apply(&src).unwrap()).unwrap());
            }
        }
        let missed: Vec<usize> = (1..=105).filter(|r| !hit.contains(r)).collect();
        ensure(missed == vec![42, 57, 66], || format!("unreached monomials {missed:?}"))?;
        Ok(format!("105x20, zero rows {{42, 57, 66}}, {} distinct of {raw} paths", g.paths.len()))
    });

    run.criterion(4, "rank stratification", RANK_LIMIT, || {
        for e in &catalog.entries {
            let rank = verify_point(&e.vector);
            let naive = naive_rank(&substitute_matrix(&generic_matrix().matrix, e.vector.values()));
            ensure(rank == e.rank && naive == e.rank, || {
                format!("{}: rank {rank}, elimination {naive}, expected {}", e.equation, e.rank)
            })?;
        }
        let counts = (catalog.with_rank(16).count(), catalog.with_rank(19).count());
        ensure(counts == (6, 8), || format!("catalog has {counts:?} identities of rank 16, 19"))?;
        let probe = generic_rank_probe(100, SEED);
        ensure(probe.min_rank == 20 && probe.max_rank == 20, || {
            format!("random ranks {}..{}", probe.min_rank, probe.max_rank)
        })?;
        Ok("6 of rank 16, 8 of rank 19, 100 random points of rank 20".into())
    });

    run.criterion(5, "full-rank cases", FULL_RANK_LIMIT, || {
        for k in FULL_RANK_CASES {
            let s = partial_smith(&case_matrix(CaseSpec::new(k).unwrap())).map_err(|e| e.to_string())?;
            ensure(s.identity_size == 20 && s.replay_matches(), || {
                format!("case {k}: identity block {}", s.identity_size)
            })?;
        }
        Ok(format!("cases {FULL_RANK_CASES:?} reach an identity block of 20"))
    });

    let mut cases: Vec<(usize, CaseData)> = Vec::new();
    run.criterion(6, "partial Smith form of cases 1 and 4", SMITH_LIMIT, || {
        let mut notes = Vec::new();
        for (k, zero_rows) in RESIDUAL_ZERO_ROWS {
            let s = partial_smith(&case_matrix(CaseSpec::new(k).unwrap())).map_err(|e| e.to_string())?;
            let shape = s.residual_shape();
            ensure(s.identity_size == 16 && shape.cols == 4 && s.replay_matches(), || {
                format!("case {k}: block {}, residual {}x{}", s.identity_size, shape.rows, shape.cols)
            })?;
            let zr = shape.zero_rows;
            notes.push(format!("case {k}: 16 + {}x4, {zr} zero rows (reference {zero_rows})", shape.rows));
            cases.push((k, CaseData { residual: s.residual_nonzero(), ideals: Vec::new(), bases: Vec::new() }));
        }
        Ok(notes.join("; "))
    });

    let minors_for = |cases: &mut Vec<(usize, CaseData)>, ranks: std::ops::RangeInclusive<usize>| -> Verdict {
        let mut notes = Vec::new();
        for (k, data) in cases.iter_mut() {
            let rows = ideal_rows(*k).unwrap();
            for r in ranks.clone() {
                let g = minors_stream(&data.residual, r, MinorOptions::default()).map_err(|e| e.to_string())?;
                let w = rows[r - 1];
                ensure(g.total_minors == w.total, || format!("case {k} r={r}: {} minors, expected {}", g.total_minors, w.total))?;
                notes.push(format!(
                    "case {k} r={r}: {} minors ({} nonzero vs {}, {} monic vs {})",
                    g.total_minors, g.nonzero_count, w.nonzero, g.monic_distinct_count, w.monic
                ));
                data.ideals.push(g);
            }
        }
        Ok(notes.join("; "))
    };
    if cases.len() == 2 {
        run.criterion(7, "minor totals, r <= 2", SMALL_MINORS_LIMIT, || minors_for(&mut cases, 1..=2));
        run.criterion(7, "minor totals, r = 3, 4", MINORS_LIMIT, || minors_for(&mut cases, 3..=4));
    } else {
        run.criterion(7, "minor totals", MINORS_LIMIT, || Err("no residual blocks".into()));
    }

    run.criterion(8, "first determinantal ideals", FIRST_IDEAL_LIMIT, || {
        ensure(cases.len() == 2 && cases.iter().all(|(_, d)| !d.ideals.is_empty()), || "no generators".into())?;
        for (k, data) in cases.iter_mut() {
            let claimed: &[&str] = if *k == 1 { &CASE1_FIRST_IDEAL } else { &CASE4_FIRST_IDEAL };
            let gb = buchberger(&data.ideals[0].generators, Budget::default()).map_err(|e| e.to_string())?;
            let want = GroebnerBasis::from_claimed(claimed.iter().map(|s| poly(s))).map_err(|e| e.to_string())?;
            ensure(gb == want, || format!("case {k}: {:?}", gb.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>()))?;
            data.bases.push(Some(gb));
        }
        Ok("case 1: 9 polynomials, case 4: {a5, ..., a10}".into())
    });

    run.criterion(9, "higher determinantal ideals", GROEBNER_LIMIT, || {
        ensure(cases.len() == 2 && cases.iter().all(|(_, d)| d.ideals.len() == 4 && d.bases.len() == 1), || {
            "earlier criteria did not finish".into()
        })?;
        let mut notes = Vec::new();
        for (k, data) in cases.iter_mut() {
            let rows = ideal_rows(*k).unwrap();
            let mut sizes = Vec::new();
            for r in 2..=4 {
                match buchberger(&data.ideals[r - 1].generators, Budget::default()) {
                    Ok(gb) => {
                        ensure(gb.len() == rows[r - 1].gbasis, || {
                            format!("case {k} r={r}: basis of {}, expected {}", gb.len(), rows[r - 1].gbasis)
                        })?;
                        sizes.push(gb.len().to_string());
                        data.bases.push(Some(gb));
                    }
                    Err(GroebnerError::BudgetExhausted { kind, .. }) => {
                        return Err(format!("case {k} r={r}: {kind} budget exhausted"));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            notes.push(format!("case {k}: {}", sizes.join("/")));
        }
        let radical: Vec<MultiPoly> = CASE1_FOURTH_RADICAL.iter().map(|s| poly(s)).collect();
        let case1 = CaseSpec::new(1).unwrap();
        let points: Vec<CoefficientVector> =
            catalog.entries.iter().filter(|e| case1.contains(&e.vector)).map(|e| e.vector.clone()).collect();
        ensure(points.len() == 12, || format!("{} catalog points in case 1", points.len()))?;
        let z = zero_set_check(&radical, &points, Some(case1));
        ensure(z.all_vanish(), || format!("radical fails at {:?}", z.failing_points))?;
        let found: BTreeSet<String> = z.grid_solutions.unwrap_or_default().iter().map(|v| v.to_list()).collect();
        let want: BTreeSet<String> = points.iter().map(|v| v.to_list()).collect();
        ensure(found == want, || format!("grid zero set {found:?}"))?;
        notes.push(format!("19-polynomial radical vanishes exactly at the 12 points of {} grid points", z.grid_size.unwrap_or(0)));
        Ok(notes.join("; "))
    });

    run.criterion(10, "property suites", PROPERTY_LIMIT, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 1..=9u32 {
            let row: BigUint = (1..=i).map(|j| narayana(i, j).unwrap()).sum();
            ensure(row == catalan(i as usize), || format!("Narayana row {i} sums to {row}"))?;
        }
        for n in 1..=7usize {
            for p in 1..=n {
                for m in enumerate_basis(p, n - p).unwrap() {
                    ensure(OperatorMonomial::from_dyck(&m.to_dyck()).as_ref() == Ok(&m), || format!("Dyck round trip of {m}"))?;
                }
            }
        }

        let maps = ConsequenceMaps::new(2, 3).unwrap();
        let basis = Basis::new(2, 3).unwrap();
        let rat = |rng: &mut ChaCha8Rng| BigRat::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)).unwrap();
        for _ in 0..50 {
            let mut elem = || OperatorElement::from_terms(&basis, (1..=10).map(|k| (k, rat(&mut rng))).collect::<Vec<_>>()).unwrap();
            let (a, b) = (elem(), elem());
            let c = rat(&mut rng);
            let lhs = maps.raw(&a.scale(&c).add(&b));
            let (ra, rb) = (maps.raw(&a), maps.raw(&b));
            for ((l, x), y) in lhs.iter().zip(&ra).zip(&rb) {
                ensure(l.element == x.element.scale(&c).add(&y.element), || format!("linearity fails on {}", l.path))?;
            }
        }

        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let m: Matrix<BigRat> =
                Matrix::from_rows((0..n).map(|_| (0..n).map(|_| BigRat::from_int(rng.gen_range(-6..=6))).collect()).collect());
            let (b, c) = (m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
            ensure(b == c, || format!("determinants {b} and {c} of\n{m}"))?;
        }

        let mut checked = 0;
        for (k, data) in &cases {
            for (gens, gb) in data.ideals.iter().zip(&data.bases) {
                let Some(gb) = gb.as_ref().filter(|g| g.len() <= MAX_CHECKED_BASIS) else { continue };
                let r = gens.r;
                ensure(gb.is_reduced_groebner(), || format!("case {k} r={r}: S-polynomial check fails"))?;
                let mut shuffled = gens.generators.clone();
                shuffled.shuffle(&mut rng);
                for p in shuffled.iter_mut().step_by(3) {
                    *p = p.scale(&BigRat::new(rng.gen_range(1..=7), rng.gen_range(1..=7)).unwrap()).neg();
                }
                let again = buchberger(&shuffled, Budget::default()).map_err(|e| e.to_string())?;
                ensure(&again == gb, || format!("case {k} r={r}: basis depends on input order"))?;
                ensure(gens.generators.iter().all(|g| gb.contains(g)), || format!("case {k} r={r}: generator outside ideal"))?;
                checked += 1;
            }
        }
        ensure(checked == 8, || format!("only {checked} bases checked"))?;
        Ok("Narayana, Dyck, linearity, determinants, 8 Groebner bases".into())
    });

    run.criterion(11, "negative controls", CONTROL_LIMIT, || {
        // A shift by 1/2 never lands on a catalog vector, whose entries are 0, ±1, ±i.
        let half = GaussRat::real(BigRat::new(1, 2).unwrap());
        let mut perturbed = 0;
        for e in &catalog.entries {
            for j in e.vector.leading_index() + 1..=NVARS {
                let mut values = e.vector.values().clone();
                values[j - 1] = &values[j - 1] + &half;
                let v = CoefficientVector::new(values).unwrap();
                let rank = verify_point(&v);
                ensure(rank == 20, || format!("{} shifted at a{j} has rank {rank}", e.equation))?;
                perturbed += 1;
            }
        }
        let mut flips = 0;
        for (index, e) in catalog.entries.iter().enumerate() {
            let Some(coord) = e.vector.values().iter().skip(e.vector.leading_index()).position(|c| !c.is_zero()) else {
                continue;
            };
            let coord = coord + e.vector.leading_index() + 1;
            let bad = catalog.with_sign_flipped(index, coord).unwrap();
            let report = reproduce_theorem(&bad, 5, SEED).map_err(|e| e.to_string())?;
            ensure(!report.passed(), || format!("flipping a{coord} of {} still passes", e.equation))?;
            flips += 1;
        }
        Ok(format!("{perturbed} perturbed vectors of rank 20, {flips} sign flips rejected"))
    });

    assert!(run.failed.is_empty(), "failed criteria: {:?}", run.failed);
}
