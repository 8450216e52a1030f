use std::collections::HashMap;

use girthlab::analysis::{girth, min_distance};
use girthlab::apfree::greedy_3ap_free;
use girthlab::bounds::{bound_girth8, min_m_root};
use girthlab::gf2::{nullspace_basis, rank};
use girthlab::regular::{build_h_reg, canonical_min_weight_codeword, predicted_dims};
use girthlab::semiregular::{build_h_s, column_rows};
use girthlab::{DistanceKind, Girth, ParityCheckMatrix, Strategy};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, p: f64) -> ParityCheckMatrix {
    let edges: Vec<_> = (0..m)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    ParityCheckMatrix::from_edges(m, n, &edges).unwrap()
}

fn shares_two_rows(h: &ParityCheckMatrix) -> bool {
    (0..h.n()).any(|a| {
        (a + 1..h.n()).any(|b| h.col(a).iter().filter(|r| h.col(b).contains(r)).count() >= 2)
    })
}

#[test]
fn girth_invariant_under_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let (m, n) = (rng.gen_range(2..10), rng.gen_range(2..12));
        let h = random_matrix(&mut rng, m, n, 0.35);
        let mut rp: Vec<usize> = (0..m).collect();
        let mut cp: Vec<usize> = (0..n).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        assert_eq!(girth(&h), girth(&h.permute(&rp, &cp).unwrap()));
        assert_eq!(girth(&h), girth(&h.transpose()));
    }
}

#[test]
fn girth6_iff_no_shared_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut with, mut without) = (0, 0);
    for _ in 0..300 {
        let (m, n) = (rng.gen_range(2..9), rng.gen_range(2..9));
        let p = rng.gen_range(0.15..0.5);
        let h = random_matrix(&mut rng, m, n, p);
        let at_least_6 = match girth(&h) {
            Girth::Acyclic => true,
            Girth::Cycle(g) => g >= 6,
        };
        let shared = shares_two_rows(&h);
        assert_eq!(at_least_6, !shared);
        if shared {
            with += 1
        } else {
            without += 1
        }
    }
    assert!(with > 20 && without > 20, "both directions exercised");
}

#[test]
fn results_independent_of_thread_count() {
    let h = build_h_s(8, greedy_3ap_free(8).terms()).unwrap();
    let reg = build_h_reg(2, 4).unwrap().matrix;
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    girth(&h),
                    min_distance(&h, 5, Strategy::Auto).unwrap(),
                    min_distance(&reg, 8, Strategy::WeightCappedSearch).unwrap(),
                    min_distance(&reg, 8, Strategy::KernelEnumeration).unwrap(),
                )
            })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.2.witness, one.3.witness);
}

#[test]
fn regular_grid() {
    for wc in 2..=4 {
        for wr in wc..=wc + 3 {
            if wc == 4 && wr > 5 {
                continue; // kept small for debug builds
            }
            let g = build_h_reg(wc, wr).unwrap();
            let h = &g.matrix;
            assert_eq!(predicted_dims(wc, wr).unwrap(), (h.n(), h.m()));
            assert_eq!(h.n() * wc, h.m() * wr);
            assert!(h.col_degrees().iter().all(|&d| d == wc));
            assert!(h.row_degrees().iter().all(|&d| d == wr));
            assert_eq!(girth(h), Girth::Cycle(8), "({wc},{wr})");
            assert!(h.m() as f64 >= bound_girth8(wc as u64, h.n() as u64) - 1e-9);
        }
    }
}

#[test]
fn check_neighbors_differ_in_one_coordinate() {
    for (wc, wr) in [(2, 3), (2, 5), (3, 3), (3, 4), (4, 4)] {
        let g = build_h_reg(wc, wr).unwrap();
        let coords: Vec<Vec<usize>> = g.labels.iter().map(|l| l.coords()).collect();
        assert!(coords.iter().all(|c| c.len() == wc));
        let mut sorted = coords.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), coords.len(), "labels bijective");
        for row in g.matrix.rows() {
            for (i, &a) in row.iter().enumerate() {
                for &b in &row[i + 1..] {
                    let diff = (0..wc).filter(|&p| coords[a][p] != coords[b][p]).count();
                    assert_eq!(diff, 1, "({wc},{wr}) columns {a},{b}");
                }
            }
        }
    }
}

/// For each column and coordinate, counts incident checks whose other
/// neighbors differ from the column only at that coordinate.
#[test]
fn one_check_per_varying_coordinate() {
    for (wc, wr) in [(2, 3), (2, 6), (3, 3), (3, 5), (4, 4)] {
        let g = build_h_reg(wc, wr).unwrap();
        let h = &g.matrix;
        let coords: Vec<Vec<usize>> = g.labels.iter().map(|l| l.coords()).collect();
        let j_pos = wc - 1;
        for v in 0..h.n() {
            let mut per_coord: HashMap<usize, usize> = HashMap::new();
            for &r in h.col(v) {
                let u = *h.row(r).iter().find(|&&u| u != v).unwrap();
                let p = (0..wc).find(|&p| coords[u][p] != coords[v][p]).unwrap();
                *per_coord.entry(p).or_default() += 1;
            }
            for (&p, &count) in &per_coord {
                // a first-layer node hangs w_c - 1 child checks, all varying j
                let allowed = if g.labels[v].is_first_layer() && p == j_pos {
                    wc - 1
                } else {
                    1
                };
                assert_eq!(count.min(allowed), count, "({wc},{wr}) col {v} coord {p}");
            }
        }
    }
}

#[test]
fn canonical_codeword_on_reg33() {
    let g = build_h_reg(3, 3).unwrap();
    assert_eq!((g.matrix.m(), g.matrix.n()), (45, 45));
    let x = canonical_min_weight_codeword(&g).unwrap();
    assert_eq!(x.weight(), 8);
    assert!(g.matrix.syndrome(&x).unwrap().is_zero());
}

#[test]
fn semiregular_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let t = rng.gen_range(2..=12);
        let seq = greedy_3ap_free(t);
        let h = build_h_s(t, seq.terms()).unwrap();
        let mut seen: Vec<[usize; 3]> =
            (0..h.n()).map(|j| column_rows(t, seq.terms(), j)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), h.n(), "injective");
        assert!(!shares_two_rows(&h));
        assert_eq!(
            girth(&h),
            if t == 2 {
                Girth::Acyclic
            } else {
                Girth::Cycle(8)
            },
            "t = {t}"
        );
        assert_eq!(
            h.col_degrees().iter().sum::<usize>(),
            h.row_degrees().iter().sum::<usize>()
        );
    }
}

#[test]
fn semiregular_distance_at_least_six() {
    for t in [4, 8] {
        let h = build_h_s(t, greedy_3ap_free(t).terms()).unwrap();
        let d = min_distance(&h, 5, Strategy::Auto).unwrap();
        assert!(d.value >= 6, "t = {t}: {d:?}");
    }
}

/// Elimination on dense boolean rows, kept deliberately naive.
fn rank_oracle(h: &ParityCheckMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..h.m())
        .map(|r| (0..h.n()).map(|c| h.get(r, c)).collect())
        .collect();
    let mut r = 0;
    for c in 0..h.n() {
        if let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) {
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i][c] {
                    let pivot = rows[r].clone();
                    rows[i].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            r += 1;
        }
    }
    r
}

#[test]
fn rank_and_kernel_of_constructions() {
    let hs = build_h_s(8, greedy_3ap_free(8).terms()).unwrap();
    let reg = build_h_reg(3, 3).unwrap().matrix;
    for h in [hs, reg] {
        let k = rank(&h);
        assert_eq!(k, rank_oracle(&h));
        let basis = nullspace_basis(&h);
        assert_eq!(basis.len(), h.n() - k);
        assert!(basis.iter().all(|v| h.syndrome(v).unwrap().is_zero()));
    }
}

#[test]
fn exact_distance_witness_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let (m, n) = (rng.gen_range(2..8), rng.gen_range(3..14));
        let h = random_matrix(&mut rng, m, n, 0.4);
        let d = min_distance(&h, h.n(), Strategy::Auto).unwrap();
        match d.kind {
            DistanceKind::Exact => {
                let w = d.witness.as_ref().unwrap();
                assert_eq!(w.weight(), d.value);
                assert!(h.syndrome(w).unwrap().is_zero());
            }
            DistanceKind::LowerBound => assert_eq!(Some(d.value), d.cap.map(|c| c + 1)),
        }
    }
}

#[test]
fn bounds_monotone_in_n() {
    for wc in 2..=5u64 {
        let mut prev = 0.0;
        for n in (1..200).map(|k| k * k * 37) {
            let b = bound_girth8(wc, n);
            assert!(b >= prev);
            prev = b;
        }
    }
    for girth in [10, 12, 14, 16] {
        let mut prev = 0.0;
        for e in 0..12 {
            let n = 10u64.pow(3) * 2u64.pow(e);
            let r = min_m_root(girth, 3, n).unwrap().m_lower;
            assert!(r >= prev, "girth {girth} n {n}");
            prev = r;
        }
    }
}

#[test]
fn tight_at_column_weight_two() {
    for s in 2..200u64 {
        assert!((bound_girth8(2, s * s) - 2.0 * s as f64).abs() <= 1e-9 * s as f64);
    }
}

proptest! {
    #[test]
    fn root_sign_change(girth in prop::sample::select(vec![10usize, 12, 14, 16]), wc in 2u64..7, n in 10u64..10_000_000) {
        let report = min_m_root(girth, wc, n).unwrap();
        let r = report.m_lower;
        let p = girthlab::bounds::assemble_polynomial(girth, wc, n).unwrap();
        let eps = 1e-6 * r;
        prop_assert!(p.eval_f64(r - eps) < 0.0 || p.eval_f64(r - eps).abs() < 1e-6 * p.eval_f64(r + eps).abs());
        prop_assert!(p.eval_f64(r + eps) > 0.0);
        for k in 1..20 {
            prop_assert!(p.eval_f64(r * 1.3f64.powi(k)) > 0.0);
        }
    }
}
