//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uom_core::audit::submatrix_audit;
use uom_core::canon::{canonical_label, subgraph_embeds};
use uom_core::catalog::{builtin, gen_odd_q, known_sizes, min_upb_size};
use uom_core::extension::{find_extension, naive_extension_oracle, DEFAULT_SEARCH_BUDGET};
use uom_core::graph::{
    build_graph, column_subgraph, is_complete_single_pair, iso_classes, SimpleGraph,
};
use uom_core::locc::{audit_all_subsets, bipartition_report, Verdict};
use uom_core::matrix::FamilyId;
use uom_core::orbit::orbits;
use uom_core::stats::{p_vector, pair_bound, sigma_p_feasible};
use uom_core::{Matrix, Uom};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn uom(name: &str) -> Uom {
    builtin(name).unwrap_or_else(|e| panic!("{name}: {e}")).uom
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn upb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_upb"))
        .args(args)
        .env_remove("UPB_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn parts(groups: &[&[usize]]) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|p| p.iter().map(|c| c - 1).collect())
        .collect()
}

fn unextendible_11x7() -> Outcome {
    let out = upb(&["verify", "--catalog", "upb_11x7"]);
    check(
        out.status.code() == Some(0),
        format!("verify exited {:?}", out.status.code()),
    )?;
    check(
        String::from_utf8_lossy(&out.stdout).contains("validation: passed"),
        "validation line missing",
    )?;
    let u = uom("upb_11x7");
    let (fast, t_fast) = timed(|| find_extension(&u));
    check(fast.is_none(), "pruned search found an extension")?;
    let (slow, t_slow) = timed(|| naive_extension_oracle(&u, DEFAULT_SEARCH_BUDGET));
    check(slow == Ok(None), format!("oracle returned {slow:?}"))?;
    check(
        t_fast < Duration::from_millis(100),
        format!("pruned search took {t_fast:?}"),
    )?;
    check(
        t_slow < Duration::from_secs(60),
        format!("oracle took {t_slow:?}"),
    )?;
    Ok(format!("exit 0, pruned {t_fast:?}, oracle {t_slow:?}"))
}

fn statistics() -> Outcome {
    let cases: [(&str, Option<Vec<usize>>, usize); 3] = [
        ("upb_11x7", Some(vec![10, 10, 11, 6, 6, 6, 6]), 55),
        ("upb_8x6", Some(vec![6, 5, 5, 4, 4, 4]), 28),
        ("upb_11x8", None, 55),
    ];
    for (name, want, sum) in cases {
        let u = uom(name);
        let p = p_vector(&u);
        if let Some(want) = want {
            check(p == want, format!("{name}: p = {p:?}"))?;
        }
        let b = pair_bound(&u);
        check(
            b.lhs == sum && b.rhs == sum && b.holds,
            format!("{name}: bound {b:?}"),
        )?;
    }
    Ok("p-vectors exact, bound tight for all three".into())
}

/// Tries every split of the rows into `P` (holding row 0) and non-empty `Q`.
fn split_exists(u: &Uom, side: &[usize]) -> bool {
    let m = u.rows();
    (0u32..(1 << (m - 1)) - 1).any(|mask| {
        let in_p = |r: usize| r == 0 || mask >> (r - 1) & 1 == 1;
        (0..m).filter(|&a| in_p(a)).all(|a| {
            (0..m).filter(|&b| !in_p(b)).all(|b| {
                side.iter()
                    .any(|&j| u.entry(a, j).is_orthogonal_to(u.entry(b, j)))
            })
        })
    })
}

fn two_qubit_bipartitions() -> Outcome {
    let out = upb(&["distinguish", "--catalog", "upb_11x7", "--k", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    check(out.status.code() == Some(0), "distinguish failed")?;
    check(
        text.matches("verdict=indistinguishable").count() == 21,
        "cli table is not 21/21",
    )?;
    let u = uom("upb_11x7");
    let (table, t) = timed(|| audit_all_subsets(&u, 2).unwrap());
    check(t < Duration::from_secs(1), format!("took {t:?}"))?;
    check(
        table.reports.len() == 21 && table.indistinguishable == 21,
        format!(
            "{} of {} indistinguishable",
            table.indistinguishable,
            table.reports.len()
        ),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sides: Vec<Vec<usize>> = table.reports.iter().map(|r| r.side.clone()).collect();
    sides.shuffle(&mut rng);
    for side in &sides[..5] {
        let r = bipartition_report(&u, side).unwrap();
        let complement: Vec<usize> = (0..7).filter(|c| !side.contains(c)).collect();
        check(
            !split_exists(&u, side)
                && !split_exists(&u, &complement)
                && r.verdict == Verdict::Indistinguishable,
            format!("split oracle disagrees on {side:?}"),
        )?;
    }
    Ok(format!(
        "21/21 indistinguishable in {t:?}, 5 sides confirmed by split enumeration"
    ))
}

fn classifications() -> Outcome {
    let cases: [(&str, &[&[usize]]); 4] = [
        ("upb_11x7", &[&[1, 2], &[3], &[4, 5, 6, 7]]),
        ("upb_6x4", &[&[1], &[2], &[3, 4]]),
        ("upb_8x6", &[&[1], &[2, 3], &[4, 5, 6]]),
        ("upb_11x8", &[&[1], &[2, 3, 4], &[5, 6, 7, 8]]),
    ];
    for (name, want) in cases {
        let u = uom(name);
        let want = parts(want);
        check(
            iso_classes(&u).unwrap() == want,
            format!("{name}: iso classes"),
        )?;
        check(orbits(&u) == want, format!("{name}: orbits"))?;
    }
    for q in [3, 5, 7, 9, 11] {
        let u = gen_odd_q(q).unwrap();
        let all = vec![(0..q).collect::<Vec<_>>()];
        check(
            iso_classes(&u).unwrap() == all && orbits(&u) == all,
            format!("odd q = {q}"),
        )?;
    }
    Ok("four catalog partitions and five odd-q single classes exact".into())
}

fn complete_graphs() -> Outcome {
    let mut checked = vec![uom("upb_11x7"), uom("upb_11x8")];
    checked.extend((3..=15).step_by(2).map(|q| gen_odd_q(q).unwrap()));
    for u in &checked {
        let m = u.rows();
        check(
            is_complete_single_pair(u),
            format!("{m}x{} not single-pair", u.cols()),
        )?;
        check(build_graph(u).edge_count() == m * (m - 1) / 2, "edge count")?;
    }
    Ok(format!("{} matrices, edges = m(m-1)/2", checked.len()))
}

fn containment_chain() -> Outcome {
    let g = |size: usize, col: usize| {
        let name = match size {
            4 => "upb_6x4",
            6 => "upb_8x6",
            _ => "upb_11x8",
        };
        column_subgraph(&build_graph(&uom(name)), col - 1).unwrap()
    };
    let embeds =
        |a: (usize, usize), b: (usize, usize)| subgraph_embeds(&g(a.0, a.1), &g(b.0, b.1)).unwrap();
    let iso = |a: (usize, usize), b: (usize, usize)| {
        canonical_label(&g(a.0, a.1)).unwrap() == canonical_label(&g(b.0, b.1)).unwrap()
    };
    let links = [
        ("1_4 in 1_6", embeds((4, 1), (6, 1))),
        ("1_6 in 2_8", embeds((6, 1), (8, 2))),
        ("2_4 in 2_6", embeds((4, 2), (6, 2))),
        ("2_6 ~ 3_6", iso((6, 2), (6, 3))),
        ("3_6 in 1_8", embeds((6, 3), (8, 1))),
        ("3_4 ~ 4_4", iso((4, 3), (4, 4))),
        ("4_4 in 4_6", embeds((4, 4), (6, 4))),
        ("4_6 ~ 5_6", iso((6, 4), (6, 5))),
        ("5_6 ~ 6_6", iso((6, 5), (6, 6))),
        ("6_6 in 5_8", embeds((6, 6), (8, 5))),
    ];
    for (label, ok) in links {
        check(ok, format!("link {label} fails"))?;
    }
    let triangle = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
    check(
        !subgraph_embeds(&triangle, &g(4, 1)).unwrap(),
        "triangle embedded",
    )?;
    Ok(format!(
        "{} links hold, triangle control rejected",
        links.len()
    ))
}

type Cell = (usize, bool);

fn orthogonal(a: &[Cell], b: &[Cell]) -> bool {
    a.iter().zip(b).any(|(x, y)| x.0 == y.0 && x.1 != y.1)
}

fn random_uom(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Uom {
    let families: Vec<usize> = (0..cols).map(|_| rng.gen_range(1..=3)).collect();
    'restart: loop {
        let mut grid: Vec<Vec<Cell>> = Vec::new();
        while grid.len() < rows {
            let mut placed = false;
            for _ in 0..50 {
                let mut cand: Vec<Cell> = families
                    .iter()
                    .map(|&f| (rng.gen_range(0..f), rng.gen_bool(0.5)))
                    .collect();
                for prev in &grid {
                    if !orthogonal(&cand, prev) {
                        let j = rng.gen_range(0..cols);
                        cand[j] = (prev[j].0, !prev[j].1);
                    }
                }
                if grid.iter().all(|prev| orthogonal(&cand, prev)) {
                    grid.push(cand);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'restart;
            }
        }
        let tokens: Vec<Vec<String>> = grid
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(f, p)| format!("x{f}{}", if p { "'" } else { "" }))
                    .collect()
            })
            .collect();
        return Uom::new(Matrix::from_token_rows(&tokens).unwrap()).unwrap();
    }
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn property_suites() -> Outcome {
    // (a) pruned search against exhaustive enumeration
    let mut upbs = 0;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = rng.gen_range(1..=5usize);
        let rows = rng.gen_range(1..=8usize.min(1 << cols));
        let u = random_uom(&mut rng, rows, cols);
        let fast = find_extension(&u);
        let slow = naive_extension_oracle(&u, DEFAULT_SEARCH_BUDGET).unwrap();
        check(fast == slow, format!("(a) seed {seed} disagrees"))?;
        upbs += usize::from(fast.is_none());
    }

    // (b) every relabelling, up to 8 vertices
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut labelled = 0usize;
    for n in 1..=8usize {
        let mut graphs = vec![SimpleGraph::from_edges(
            n,
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.5)),
        )];
        if n == 8 {
            graphs.push(SimpleGraph::from_edges(
                8,
                (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))),
            ));
        }
        for g in &graphs {
            let want = canonical_label(g).unwrap();
            let mut ok = true;
            for_each_permutation(n, |p| {
                ok &= canonical_label(&g.permute(p)).unwrap() == want;
                labelled += 1;
            });
            check(ok, format!("(b) label changed under relabelling, n = {n}"))?;
        }
    }

    // (c) feasible p_j per family count at 11 rows
    let sets: [(usize, &[usize]); 4] = [
        (2, &[12, 13, 14, 15, 16, 18]),
        (3, &[8, 9, 10, 11, 12, 14]),
        (4, &[7, 8, 9]),
        (5, &[6]),
    ];
    for (sigma, want) in sets {
        let got = sigma_p_feasible(sigma, 11).unwrap();
        check(
            got == want.iter().copied().collect::<BTreeSet<_>>(),
            format!("(c) sigma {sigma}: {got:?}"),
        )?;
    }

    // (d) audit firing implies an extension, on mutated 11x7 matrices
    let base = uom("upb_11x7");
    let mut fired = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let mut m = base.matrix().clone();
        for _ in 0..rng.gen_range(1..=3) {
            let col = rng.gen_range(0..m.cols());
            let fams = m.family_count(col);
            if fams < 2 {
                continue;
            }
            let from = rng.gen_range(0..fams);
            let into = (from + rng.gen_range(1..fams)) % fams;
            m = m
                .merge_families(
                    col,
                    FamilyId(from as u32),
                    FamilyId(into as u32),
                    rng.gen_bool(0.5),
                )
                .unwrap();
        }
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        rows.shuffle(&mut rng);
        let mut cols: Vec<usize> = (0..m.cols()).collect();
        cols.shuffle(&mut rng);
        let u = Uom::new(
            m.permute_rows(&rows)
                .unwrap()
                .permute_columns(&cols)
                .unwrap(),
        )
        .unwrap();
        if !submatrix_audit(&u).unwrap().is_clean() {
            fired += 1;
            let w = find_extension(&u);
            check(
                w.as_ref().is_some_and(|w| w.is_valid_for(&u)),
                format!("(d) seed {seed}: audit fired on a UPB"),
            )?;
        }
    }
    check(fired > 0, "(d) audit never fired")?;
    Ok(format!(
        "(a) 1000 agree ({upbs} UPBs), (b) {labelled} relabellings, (c) 4 sets, (d) {fired}/200 fired, all extendible"
    ))
}

fn minimum_sizes() -> Outcome {
    // smallest UPB size on p qubits
    let table = [
        (3, 4),
        (4, 6),
        (5, 6),
        (6, 8),
        (7, 8),
        (8, 11),
        (9, 10),
        (10, 12),
        (11, 12),
        (12, 16),
        (13, 14),
        (14, 16),
        (15, 16),
        (16, 20),
    ];
    for (p, f) in table {
        check(
            min_upb_size(p) == f,
            format!("f({p}) = {}", min_upb_size(p)),
        )?;
    }
    let seven = known_sizes(7).unwrap();
    let eight = known_sizes(8).unwrap();
    check(
        seven.first() == Some(&8) && eight.first() == Some(&11),
        "known-size minima",
    )?;
    let q7 = gen_odd_q(7).unwrap();
    check(
        (q7.rows(), q7.cols()) == (8, 7) && find_extension(&q7).is_none(),
        "8x7 not realized",
    )?;
    let d = uom("upb_11x8");
    check(
        (d.rows(), d.cols()) == (11, 8) && find_extension(&d).is_none(),
        "11x8 not realized",
    )?;
    Ok("f(3..16) matches, 8 and 11 realized".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 unextendibility of the 11x7 matrix", unextendible_11x7),
        ("2 column statistics and pair bound", statistics),
        ("3 two-qubit bipartitions of 11x7", two_qubit_bipartitions),
        ("4 isomorphism classes and orbits", classifications),
        ("5 complete single-pair graphs", complete_graphs),
        ("6 subgraph containment chain", containment_chain),
        ("7 property suites", property_suites),
        ("8 minimum sizes", minimum_sizes),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("PASS criterion {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {name}: panicked");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
