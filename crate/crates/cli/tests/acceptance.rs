//! One PASS/FAIL line per acceptance criterion, all in exact arithmetic.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tpfactor::bruhat::{double_cell_of, in_bruhat_cell};
use tpfactor::identities::{fuzz, fuzz_parallel};
use tpfactor::linalg::{int, ExactScalar};
use tpfactor::network::{build_network, evaluate, evaluate_network};
use tpfactor::poly::Polynomial;
use tpfactor::positivity::{
    chamber_criterion, chamber_set_criterion, family_witness, fekete_families, fekete_scheme_1, fekete_scheme_2,
    gl3_criteria_catalog, is_tnn, is_tp,
};
use tpfactor::product::product;
use tpfactor::sampling::{nonzero_params, positive_params, random_permutation, random_scheme, small_matrix, small_rational};
use tpfactor::schemes::{enumerate_isotopy_types, RUNNING_EXAMPLE};
use tpfactor::solver::{chamber_values_from_parameters, solve};
use tpfactor::twist::twist;
use tpfactor::{Arrangement, FactorizationScheme, IndexSet, Matrix, Permutation};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn set(s: &str) -> IndexSet {
    IndexSet::from_unsorted(s.chars().map(|c| c.to_digit(10).unwrap() as usize)).unwrap()
}

fn d(x: &Matrix, r: &str, c: &str) -> ExactScalar {
    x.minor(&set(r), &set(c)).unwrap()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tpfactor"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn gl2_closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("x.json");
    let mut checked = 0;
    while checked < 20 {
        let x = small_matrix(&mut rng, 2);
        let (x11, x12, x21) = (x.get(1, 1).clone(), x.get(1, 2).clone(), x.get(2, 1).clone());
        let det = x.determinant();
        if x11 == int(0) || x12 == int(0) || x21 == int(0) || det == int(0) {
            continue;
        }
        std::fs::write(&path, x.to_json().to_string()).map_err(|e| e.to_string())?;
        let out = run_cli(&["factor", "--scheme", "h1 f1 h2 e1", "--matrix", path.to_str().unwrap()])?;
        let want = [x11.clone(), x21, &det / &x11, &x12 / &x11];
        let got: Vec<String> = out["t"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
        let want: Vec<String> = want.iter().map(|v| v.to_string()).collect();
        ensure(got == want, || format!("x = {x}: got {got:?}, want {want:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} matrices"))
}

fn running_example() -> Outcome {
    let (u, v) = (perm("4312"), perm("4213"));
    let s = FactorizationScheme::parse(RUNNING_EXAMPLE).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..20 {
        let other = random_scheme(&mut rng, &u, &v);
        let x = product(&other, &positive_params(&mut rng, other.len())).unwrap();
        ensure(
            *x.get(1, 4) == int(0) && *x.get(2, 4) == int(0) && d(&x, "234", "123") == int(0),
            || "relations fail".into(),
        )?;
        let t = solve(&s, &x).map_err(|e| e.to_string())?;
        let t9 = d(&x, "23", "12") * (x.get(4, 3) * d(&x, "12", "12") - d(&x, "124", "123"))
            / (x.get(2, 3) * d(&x, "24", "12") * d(&x, "123", "123"));
        ensure(t[8] == t9, || format!("t9 = {} but closed form gives {t9}", t[8]))?;
    }
    let net = build_network(&s);
    let l = s.len();
    let m = |v: &[usize]| Polynomial::monomial(l, v);
    let expected = [
        (("23", "12"), m(&[3, 7, 8, 9, 12])),
        (("12", "12"), &m(&[8, 12]) + &m(&[6, 8, 9, 12])),
        (("124", "123"), m(&[4, 8, 12])),
        (("24", "12"), m(&[4, 7, 8, 9, 12])),
        (("123", "123"), m(&[3, 8, 12])),
        (("4", "3"), m(&[4])),
        (("2", "3"), m(&[6])),
    ];
    for ((r, c), want) in expected {
        let got = net.symbolic_minor(&set(r), &set(c)).unwrap();
        ensure(got == want, || format!("D{r},{c} = {got}, want {want}"))?;
    }
    Ok("20 matrices, 7 polynomials".into())
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut runs = 0;
    for u in Permutation::all(3) {
        for v in Permutation::all(3) {
            for _ in 0..3 {
                let s = random_scheme(&mut rng, &u, &v);
                for _ in 0..10 {
                    let t = positive_params(&mut rng, s.len());
                    let x = product(&s, &t).unwrap();
                    let back = solve(&s, &x).map_err(|e| format!("{s}: {e}"))?;
                    ensure(back == t, || format!("{s}: round trip differs"))?;
                    runs += 1;
                }
            }
        }
    }
    for _ in 0..20 {
        let (u, v) = (random_permutation(&mut rng, 4), random_permutation(&mut rng, 4));
        let s = random_scheme(&mut rng, &u, &v);
        let t = positive_params(&mut rng, s.len());
        let back = solve(&s, &product(&s, &t).unwrap()).map_err(|e| format!("{s}: {e}"))?;
        ensure(back == t, || format!("{s}: round trip differs"))?;
        runs += 1;
    }
    Ok(format!("{runs} round trips"))
}

fn twist_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut runs = 0;
    for n in 2..=4 {
        for _ in 0..30 {
            let (u, v) = (random_permutation(&mut rng, n), random_permutation(&mut rng, n));
            let s = random_scheme(&mut rng, &u, &v);
            let x = product(&s, &positive_params(&mut rng, s.len())).unwrap();
            let y = twist(&x, &u, &v).map_err(|e| e.to_string())?;
            ensure(is_tnn(&y), || format!("twist of positive {s} sample is not TNN"))?;
            let back = twist(&y, &u.inverse(), &v.inverse()).map_err(|e| e.to_string())?;
            ensure(back == x, || format!("{s}: twist is not an involution"))?;
            runs += 1;
        }
    }
    let w2 = perm("21");
    let w3 = perm("321");
    for _ in 0..10 {
        let s2 = random_scheme(&mut rng, &w2, &w2);
        let x = product(&s2, &nonzero_params(&mut rng, s2.len())).unwrap();
        let y = twist(&x, &w2, &w2).unwrap();
        let det = x.determinant();
        let want = Matrix::from_rows(vec![
            vec![x.get(1, 1) / (x.get(1, 2) * x.get(2, 1)), int(1) / x.get(2, 1)],
            vec![int(1) / x.get(1, 2), x.get(2, 2) / &det],
        ])
        .unwrap();
        ensure(y == want, || "GL_2 closed form".into())?;
        let s3 = random_scheme(&mut rng, &w3, &w3);
        let x = product(&s3, &positive_params(&mut rng, s3.len())).unwrap();
        let y = twist(&x, &w3, &w3).unwrap();
        let det = x.determinant();
        let want = [
            [
                x.get(1, 1) / (x.get(3, 1) * x.get(1, 3)),
                d(&x, "12", "13") / (x.get(3, 1) * d(&x, "12", "23")),
                int(1) / x.get(3, 1),
            ],
            [
                d(&x, "13", "12") / (x.get(1, 3) * d(&x, "23", "12")),
                (x.get(3, 3) * d(&x, "12", "12") - &det) / (d(&x, "23", "12") * d(&x, "12", "23")),
                x.get(3, 2) / d(&x, "23", "12"),
            ],
            [
                int(1) / x.get(1, 3),
                x.get(2, 3) / d(&x, "12", "23"),
                d(&x, "23", "23") / &det,
            ],
        ];
        for i in 1..=3 {
            for j in 1..=3 {
                ensure(*y.get(i, j) == want[i - 1][j - 1], || format!("GL_3 entry ({i},{j})"))?;
            }
        }
    }
    Ok(format!("{runs} involutions, 10 GL_2 and 10 GL_3 closed forms"))
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, k: usize) -> IndexSet {
    let p = random_permutation(rng, n);
    IndexSet::from_unsorted(p.one_line()[..k].iter().copied()).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for k in 0..200 {
        let n = rng.gen_range(2..=5);
        let (u, v) = (random_permutation(&mut rng, n), random_permutation(&mut rng, n));
        let s = random_scheme(&mut rng, &u, &v);
        let t = nonzero_params(&mut rng, s.len());
        let net = build_network(&s);
        let x = product(&s, &t).unwrap();
        ensure(evaluate_network(&net, &t).unwrap() == x, || format!("instance {k}: network differs from product"))?;
        let size = rng.gen_range(1..=n);
        let (r, c) = (random_set(&mut rng, n, size), random_set(&mut rng, n, size));
        let poly = net.symbolic_minor(&r, &c).unwrap();
        ensure(evaluate(&poly, &t).unwrap() == x.minor(&r, &c).unwrap(), || {
            format!("instance {k}: D{r},{c} differs")
        })?;
    }
    Ok("200 instances".into())
}

fn criteria_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for u in Permutation::all(3) {
        for v in Permutation::all(3) {
            let (mut pos, mut neg) = (0, 0);
            let mut attempts = 0;
            while pos < 50 || neg < 50 {
                attempts += 1;
                ensure(attempts < 10_000, || format!("({u},{v}): could not draw samples"))?;
                let s = random_scheme(&mut rng, &u, &v);
                let t = if pos < 50 {
                    positive_params(&mut rng, s.len())
                } else {
                    nonzero_params(&mut rng, s.len())
                };
                let x = product(&s, &t).unwrap();
                let tnn = is_tnn(&x);
                let other = random_scheme(&mut rng, &u, &v);
                let a = chamber_criterion(&other, &x).map_err(|e| e.to_string())?;
                let b = chamber_set_criterion(&u, &v, &x).map_err(|e| e.to_string())?;
                ensure(a == tnn && b == tnn, || format!("({u},{v}) {other}: {tnn} {a} {b}"))?;
                if tnn {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
    }
    Ok("36 cells, 50 positive and 50 non-TNN each".into())
}

fn gl3_catalog() -> Outcome {
    let (graph, labels) = gl3_criteria_catalog();
    ensure(graph.node_count() == 34, || format!("{} nodes", graph.node_count()))?;
    ensure(graph.is_connected(), || "not connected".into())?;
    ensure(graph.nodes.iter().all(|n| n.family.len() == 9), || "family size".into())?;
    let mut common = graph.common_minors();
    common.sort();
    let mut want = vec![
        (set("3"), set("1")),
        (set("1"), set("3")),
        (set("23"), set("12")),
        (set("12"), set("23")),
        (set("123"), set("123")),
    ];
    want.sort();
    ensure(common == want, || format!("common minors {common:?}"))?;
    for label in ["abcG", "gABC"] {
        ensure(labels.iter().any(|l| l == label), || format!("{label} missing"))?;
    }
    let out = run_cli(&["enumerate", "--n", "3", "--u", "321", "--v", "321"])?;
    ensure(out["node_count"] == 34, || "CLI node count".into())?;
    Ok(format!("34 nodes, {} edges", graph.edge_count()))
}

fn fekete() -> Outcome {
    for n in 2..=5 {
        let (a, b) = fekete_families(n);
        ensure(a.len() == n * n && b.len() == n * n, || format!("n = {n}: sizes"))?;
        let sorted = |mut v: Vec<(IndexSet, IndexSet)>| {
            v.sort();
            v
        };
        let c1 = Arrangement::new(&fekete_scheme_1(n)).chamber_minor_family();
        let c2 = Arrangement::new(&fekete_scheme_2(n)).chamber_minor_family();
        ensure(sorted(c1) == sorted(a), || format!("n = {n}: first family"))?;
        ensure(sorted(c2) == sorted(b), || format!("n = {n}: second family"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let (a, b) = fekete_families(4);
    let w = Permutation::longest_element(4);
    let mut tp_count = 0;
    for k in 0..120 {
        let x = match k % 3 {
            0 => {
                let s = random_scheme(&mut rng, &w, &w);
                product(&s, &positive_params(&mut rng, s.len())).unwrap()
            }
            1 => {
                let s = random_scheme(&mut rng, &w, &w);
                let mut t = positive_params(&mut rng, s.len());
                let i = rng.gen_range(0..t.len());
                t[i] = -t[i].clone();
                product(&s, &t).unwrap()
            }
            _ => small_matrix(&mut rng, 4),
        };
        let tp = is_tp(&x);
        tp_count += tp as usize;
        ensure(family_witness(&x, &a).is_none() == tp, || format!("sample {k}: first family"))?;
        ensure(family_witness(&x, &b).is_none() == tp, || format!("sample {k}: second family"))?;
    }
    Ok(format!("n = 2..5 sizes, 120 samples ({tp_count} TP)"))
}

fn identity_fuzzer() -> Outcome {
    let mut lines = Vec::new();
    for n in [4, 5] {
        let report = fuzz_parallel(n, 1000, 42);
        ensure(report.failures.is_empty(), || format!("n = {n}: {} failures", report.failures.len()))?;
        ensure(report.plucker_checked >= 1000 && report.dodgson_checked >= 1000, || "too few checks".into())?;
        ensure(fuzz(n, 1000, 42) == report, || "parallel and sequential reports differ".into())?;
        lines.push(report.to_json().to_string());
    }
    Ok(lines.join(" "))
}

fn inverse_ansatz() -> Outcome {
    let s = FactorizationScheme::parse(RUNNING_EXAMPLE).unwrap();
    let arr = Arrangement::new(&s);
    let (u, v) = (s.u().clone(), s.v().clone());
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for run in 0..50 {
        let t = positive_params(&mut rng, s.len());
        let x = product(&s, &t).unwrap();
        let xp = twist(&x, &u, &v).map_err(|e| e.to_string())?;
        let values = chamber_values_from_parameters(&s, &t).map_err(|e| e.to_string())?;
        for ch in arr.chambers() {
            let direct = xp.minor(&ch.rows, &ch.cols).unwrap();
            ensure(direct == values[ch.id], || format!("run {run}: chamber {}", ch.id))?;
        }
        let inv = |ks: &[usize]| ks.iter().map(|&k| t[k - 1].clone()).product::<ExactScalar>().recip();
        ensure(d(&xp, "3", "1") == inv(&[2, 6]), || "D3,1(x')".into())?;
        ensure(d(&xp, "123", "124") == inv(&[1, 4, 8, 12]), || "D123,124(x')".into())?;
    }
    Ok(format!("50 runs, {} chambers each", arr.chambers().len()))
}

fn structure() -> Outcome {
    let mut schemes = 0;
    for n in [2, 3] {
        for u in Permutation::all(n) {
            for v in Permutation::all(n) {
                for node in enumerate_isotopy_types(&u, &v).nodes {
                    let s = node.representative;
                    ensure(s.len() == n + u.length() + v.length(), || format!("{s}: length"))?;
                    schemes += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let (u, v) = (random_permutation(&mut rng, n), random_permutation(&mut rng, n));
        let s = random_scheme(&mut rng, &u, &v);
        let x = product(&s, &nonzero_params(&mut rng, s.len())).unwrap();
        ensure(double_cell_of(&x).unwrap() == (u.clone(), v.clone()), || format!("{s}: cell"))?;
    }
    let mut matrices = 0;
    while matrices < 100 {
        let n = rng.gen_range(1..=4);
        let rows = (0..n).map(|_| (0..n).map(|_| small_rational(&mut rng)).collect()).collect();
        let x = Matrix::from_rows(rows).unwrap();
        if x.determinant() == int(0) {
            continue;
        }
        let hits = Permutation::all(n).iter().filter(|w| in_bruhat_cell(&x, w).unwrap()).count();
        ensure(hits == 1, || format!("{x}: {hits} Bruhat cells"))?;
        matrices += 1;
    }
    Ok(format!("{schemes} enumerated schemes, 100 products, {matrices} Bruhat samples"))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("GL_2 closed forms", gl2_closed_forms),
        ("running-example t9 and network minors", running_example),
        ("round-trip factorization", round_trips),
        ("twist involution and positivity", twist_checks),
        ("oracle equivalence", oracle_equivalence),
        ("criteria equivalence", criteria_equivalence),
        ("GL_3 catalog", gl3_catalog),
        ("Fekete families", fekete),
        ("identity fuzzer", identity_fuzzer),
        ("inverse-ansatz consistency", inverse_ansatz),
        ("dimension and structure", structure),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
