//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! elapsed time; the process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cyclestar::cycle_index::{cycle_index, frak_z};
use cyclestar::diagrams::{diagram_to_matrix, matrix_to_diagram};
use cyclestar::fqsym::{e_n, h_n, underline_z};
use cyclestar::polya_enum::{
    brute_force_census, census_polynomial, enumerate_diagrams, feynman_series, type_gf,
    DEFAULT_STEP_BUDGET,
};
use cyclestar::symfunc::{e, h, sup_product, Partition, PowerSumPolynomial, YPolynomial};
use cyclestar::{
    BigInt, BigRational, Cycle, DiagramClass, EdgeType, FQSymElement, Permutation,
    PermutationGroup, WeightMatrix,
};

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn perm(w: &[usize]) -> Permutation {
    Permutation::new(w.to_vec()).unwrap()
}

fn digits(s: &str) -> Permutation {
    perm(&s.bytes().map(|b| (b - b'0') as usize).collect::<Vec<_>>())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Polynomial over y0, y1, y2 from `(coefficient, [e0, e1, e2])`.
fn y3(terms: &[(i64, [u32; 3])]) -> YPolynomial {
    YPolynomial::from_terms(3, terms.iter().map(|(c, e)| (e.to_vec(), q(*c))))
}

fn y0_power(k: u32) -> YPolynomial {
    YPolynomial::variable_power(0, k, 3)
}

fn cycle_set(p: &Permutation) -> BTreeSet<Cycle> {
    p.cycles().into_iter().filter(|c| c.len() > 1).collect()
}

fn cycles_of(lists: &[&[usize]]) -> BTreeSet<Cycle> {
    lists
        .iter()
        .map(|c| Cycle::new(c.to_vec()).unwrap())
        .collect()
}

fn c1_ex1() -> Result<(), String> {
    let (a, b) = (digits("1320"), digits("534120"));
    let ab = a.intransitive(&b);
    let ba = b.intransitive(&a);
    ensure!(
        ab.word() == [1, 3, 2, 0, 9, 7, 8, 5, 6, 4],
        "1320 →+ 534120 gave {ab}"
    );
    ensure!(
        ba.word() == [5, 3, 4, 1, 2, 0, 7, 9, 8, 6],
        "534120 →+ 1320 gave {ba}"
    );
    Ok(())
}

fn c2_ex2() -> Result<(), String> {
    let (a, b) = (digits("2031"), digits("01723456"));
    let ab = a.cartesian(&b);
    let expect_ab = cycles_of(&[
        &[0, 2, 3, 1],
        &[4, 6, 7, 5],
        &[28, 26, 23, 17, 12, 10, 31, 25, 20, 18, 15, 9],
        &[30, 27, 21, 16, 14, 11, 29, 24, 22, 19, 13, 8],
    ]);
    ensure!(
        cycle_set(&ab) == expect_ab,
        "cycles of 2031 ↗↘ 01723456: {:?}",
        ab.cycles()
    );
    ensure!(ab.cycles().len() == 4, "expected exactly four cycles");
    let ba = b.cartesian(&a);
    let expect_ba = cycles_of(&[
        &[0, 16, 24, 8],
        &[1, 17, 25, 9],
        &[7, 22, 29, 12, 3, 18, 31, 14, 5, 20, 27, 10],
        &[6, 21, 28, 11, 2, 23, 30, 13, 4, 19, 26, 15],
    ]);
    ensure!(
        cycle_set(&ba) == expect_ba,
        "cycles of 01723456 ↗↘ 2031: {:?}",
        ba.cycles()
    );
    ensure!(ba.cycles().len() == 4, "expected exactly four cycles");
    Ok(())
}

fn c3_cycle_indices() -> Result<(), String> {
    for n in 2..=6usize {
        let s = cycle_index(&PermutationGroup::symmetric(n));
        ensure!(s == h(n as u32), "Z(S_{n}) = {s}");
        let a = cycle_index(&PermutationGroup::alternating(n));
        let expect = &h(n as u32) + &e(n as u32);
        ensure!(a == expect, "Z(A_{n}) = {a}, expected {expect}");
    }
    Ok(())
}

fn paper_f11() -> YPolynomial {
    y3(&[(1, [0, 1, 0]), (1, [0, 0, 1])])
}

fn paper_f21() -> YPolynomial {
    y3(&[(1, [0, 2, 0]), (1, [0, 1, 1]), (1, [0, 0, 2])])
}

fn paper_f22() -> YPolynomial {
    y3(&[
        (1, [2, 2, 0]),
        (1, [2, 0, 2]),
        (1, [2, 1, 1]),
        (1, [1, 3, 0]),
        (3, [1, 2, 1]),
        (3, [1, 1, 2]),
        (1, [1, 0, 3]),
        (1, [0, 4, 0]),
        (1, [0, 3, 1]),
        (3, [0, 2, 2]),
        (1, [0, 1, 3]),
        (1, [0, 0, 4]),
    ])
}

fn c4_ex_f() -> Result<(), String> {
    let g = h(2).star(&h(2)).specialize(2);
    let f21 = paper_f21();
    let rhs = &(&(&paper_f22() + &(&f21 + &f21).multiply(&y0_power(2)))
        + &paper_f11().multiply(&y0_power(3)))
        + &y0_power(4);
    ensure!(g == rhs, "specialized g(2,2) = {g}\nexpected {rhs}");
    ensure!(
        feynman_series(2, 2, 2) == paper_f22(),
        "F(2,2) = {}",
        feynman_series(2, 2, 2)
    );
    ensure!(
        feynman_series(2, 1, 2) == f21 && feynman_series(1, 2, 2) == f21,
        "F(2,1) or F(1,2) differs"
    );
    ensure!(feynman_series(1, 1, 2) == paper_f11(), "F(1,1) differs");
    Ok(())
}

/// `F(3,2)` over `(y0, y1, y2)`, established by exhaustive census.
fn true_f32() -> YPolynomial {
    y3(&[
        (1, [0, 0, 6]),
        (1, [0, 1, 5]),
        (1, [1, 0, 5]),
        (3, [0, 2, 4]),
        (3, [1, 1, 4]),
        (2, [2, 0, 4]),
        (3, [0, 3, 3]),
        (6, [1, 2, 3]),
        (5, [2, 1, 3]),
        (1, [3, 0, 3]),
        (3, [0, 4, 2]),
        (6, [1, 3, 2]),
        (8, [2, 2, 2]),
        (2, [3, 1, 2]),
        (1, [0, 5, 1]),
        (3, [1, 4, 1]),
        (5, [2, 3, 1]),
        (2, [3, 2, 1]),
        (1, [0, 6, 0]),
        (1, [1, 5, 0]),
        (2, [2, 4, 0]),
        (1, [3, 3, 0]),
    ])
}

/// The terms of the printed expansion that agree with the census.
fn printed_f32_terms() -> Vec<(i64, [u32; 3])> {
    vec![
        (1, [0, 0, 6]),
        (1, [0, 1, 5]),
        (3, [1, 1, 4]),
        (2, [2, 0, 4]),
        (3, [0, 3, 3]),
        (6, [1, 2, 3]),
        (5, [2, 1, 3]),
        (1, [3, 0, 3]),
        (3, [0, 4, 2]),
        (8, [2, 2, 2]),
        (1, [0, 5, 1]),
        (3, [1, 4, 1]),
        (5, [2, 3, 1]),
        (1, [0, 6, 0]),
        (1, [1, 5, 0]),
        (1, [3, 3, 0]),
    ]
}

fn c5_f32() -> Result<(), String> {
    let f = feynman_series(3, 2, 2);
    let expect = true_f32();
    ensure!(
        expect.num_terms() == 22,
        "reference has {} terms",
        expect.num_terms()
    );
    ensure!(f == expect, "F(3,2) = {f}");
    for (c, e) in printed_f32_terms() {
        ensure!(
            f.coefficient(&e) == q(c),
            "coefficient of {e:?} is {}",
            f.coefficient(&e)
        );
    }
    ensure!(
        f.coefficient(&[2, 2, 2]) == q(8),
        "coefficient on y0^2 y1^2 y2^2"
    );
    let census = census_polynomial(
        &brute_force_census(3, 2, 2, true, DEFAULT_STEP_BUDGET).map_err(|e| e.to_string())?,
        2,
    );
    ensure!(census == expect, "census disagrees: {census}");
    let d = enumerate_diagrams(
        3,
        2,
        2,
        Some(&EdgeType::new(vec![2, 2, 2])),
        DEFAULT_STEP_BUDGET,
    )
    .map_err(|e| e.to_string())?;
    ensure!(d.len() == 8, "{} classes of type (2,2,2)", d.len());
    Ok(())
}

fn c6_oracle_sweep() -> Result<(), String> {
    for n in 1..=3usize {
        for m in 1..=3usize {
            for p in 0..=2u32 {
                let all = brute_force_census(n, m, p, false, DEFAULT_STEP_BUDGET)
                    .map_err(|e| e.to_string())?;
                let gf = type_gf(n as u32, m as u32, p as usize);
                ensure!(
                    census_polynomial(&all, p as usize) == gf,
                    "type_gf({n},{m},{p}) = {gf}"
                );
                let packed = brute_force_census(n, m, p, true, DEFAULT_STEP_BUDGET)
                    .map_err(|e| e.to_string())?;
                let f = feynman_series(n as u32, m as u32, p as usize);
                ensure!(
                    census_polynomial(&packed, p as usize) == f,
                    "F({n},{m}) at P={p} = {f}"
                );
            }
        }
    }
    Ok(())
}

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|w| Permutation::new(w).unwrap())
    })
}

fn run_property<S, F>(name: &str, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: 500,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn c7_properties() -> Result<(), String> {
    let triple = || (arb_perm(5), arb_perm(5), arb_perm(5));
    run_property("associativity", triple(), |(a, b, c)| {
        prop_assert_eq!(
            a.intransitive(&b).intransitive(&c),
            a.intransitive(&b.intransitive(&c))
        );
        prop_assert_eq!(a.cartesian(&b).cartesian(&c), a.cartesian(&b.cartesian(&c)));
        Ok(())
    })?;
    run_property("semi-distributivity", triple(), |(a, b, c)| {
        prop_assert_eq!(
            a.cartesian(&b.intransitive(&c)),
            a.cartesian(&b).intransitive(&a.cartesian(&c))
        );
        Ok(())
    })?;
    run_property("pointwise", (arb_perm(5), arb_perm(5)), |(a, b)| {
        let (n, m) = (a.degree(), b.degree());
        let int = a.intransitive(&b);
        for i in 0..n + m {
            let expect = if i < n {
                a.word()[i]
            } else {
                b.word()[i - n] + n
            };
            prop_assert_eq!(int.word()[i], expect);
        }
        let cart = a.cartesian(&b);
        for i in 0..n {
            for j in 0..m {
                prop_assert_eq!(cart.word()[i + n * j], a.word()[i] + n * b.word()[j]);
            }
        }
        prop_assert_eq!(&cart, &a.cartesian_by_cycles(&b));
        Ok(())
    })?;
    run_property("frak_Z morphism", (arb_perm(5), arb_perm(5)), |(a, b)| {
        prop_assert_eq!(frak_z(&a.intransitive(&b)), &frak_z(&a) * &frak_z(&b));
        prop_assert_eq!(frak_z(&a.cartesian(&b)), frak_z(&a).star(&frak_z(&b)));
        Ok(())
    })?;
    let mono = || prop::collection::vec(1u32..=30, 0..=4).prop_map(Partition::from_parts);
    run_property("phi morphism", (mono(), mono()), |(a, b)| {
        let (ma, mb) = (
            PowerSumPolynomial::monomial(a),
            PowerSumPolynomial::monomial(b),
        );
        let (pa, pb) = (ma.phi().unwrap(), mb.phi().unwrap());
        prop_assert_eq!((&ma * &mb).phi().unwrap(), &pa + &pb);
        prop_assert_eq!(ma.star(&mb).phi().unwrap(), sup_product(&pa, &pb));
        Ok(())
    })
}

fn c8_fqsym() -> Result<(), String> {
    let mut groups: Vec<(String, PermutationGroup)> = (1..=5)
        .map(|n| (format!("S_{n}"), PermutationGroup::symmetric(n)))
        .collect();
    groups.extend((3..=5).map(|n| (format!("A_{n}"), PermutationGroup::alternating(n))));
    for (name, g) in &groups {
        ensure!(
            underline_z(g).z_morphism() == cycle_index(g),
            "triangle fails for {name}"
        );
    }
    for n in 0..=5usize {
        ensure!(h_n(n).z_morphism() == h(n as u32), "z(H_{n})");
        ensure!(e_n(n).z_morphism() == e(n as u32), "z(E_{n})");
    }
    let z = FQSymElement::basis(perm(&[1, 2, 0])).z_morphism();
    ensure!(z == PowerSumPolynomial::psi(3), "z(F^120) = {z}");
    Ok(())
}

fn c9_mqsym_bridge() -> Result<(), String> {
    let (n, m, p) = (3usize, 2usize, 2u32);
    let mut classes: BTreeMap<EdgeType, BTreeSet<DiagramClass>> = BTreeMap::new();
    let cells = n * m;
    for code in 0..(p as usize + 1).pow(cells as u32) {
        let mut entries = vec![0u32; cells];
        let mut c = code;
        for slot in entries.iter_mut() {
            *slot = (c % (p as usize + 1)) as u32;
            c /= p as usize + 1;
        }
        let mat = WeightMatrix::new(n, m, entries).unwrap();
        if !mat.is_packed() {
            continue;
        }
        classes
            .entry(mat.type_with_bound(p))
            .or_default()
            .insert(DiagramClass::of(&mat));
    }
    let f = feynman_series(3, 2, 2);
    ensure!(
        classes.len() == f.num_terms(),
        "{} types vs {} terms",
        classes.len(),
        f.num_terms()
    );
    for (t, set) in &classes {
        let coeff = f.coefficient(t.counts());
        ensure!(
            coeff == q(set.len() as i64),
            "type {t}: {} classes, coefficient {coeff}",
            set.len()
        );
        for class in set {
            let rep = class.canonical();
            let d = matrix_to_diagram(rep).map_err(|e| e.to_string())?;
            ensure!(diagram_to_matrix(&d) == *rep, "round trip fails on {rep:?}");
        }
    }
    Ok(())
}

/// All permutations of `0..n` as plain vectors.
fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Cycles of `(i, j) ↦ (σ(i), τ(j))` on `n × m` cells.
fn pair_cycles(s: &[usize], t: &[usize]) -> u32 {
    let (n, m) = (s.len(), t.len());
    let mut seen = vec![false; n * m];
    let mut count = 0;
    for start in 0..n * m {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = s[x % n] + n * t[x / n];
        }
    }
    count
}

fn c10_burnside() -> Result<(), String> {
    for n in 1..=4usize {
        for m in 1..=4usize {
            let (sn, sm) = (perms(n), perms(m));
            let mut cycle_hist: BTreeMap<u32, u64> = BTreeMap::new();
            for s in &sn {
                for t in &sm {
                    *cycle_hist.entry(pair_cycles(s, t)).or_insert(0) += 1;
                }
            }
            for p in 0..=3usize {
                let total: BigInt = cycle_hist
                    .iter()
                    .map(|(&c, &k)| BigInt::from(p as u64 + 1).pow(c) * BigInt::from(k))
                    .sum();
                let burnside = BigRational::new(total, BigInt::from((sn.len() * sm.len()) as u64));
                let gf = type_gf(n as u32, m as u32, p).evaluate_at_ones();
                ensure!(gf == burnside, "n={n} m={m} P={p}: {gf} vs {burnside}");
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, Check, Duration); 10] = [
        (
            1,
            "intransitive products of 1320 and 534120",
            c1_ex1,
            Duration::from_millis(1),
        ),
        (
            2,
            "Cartesian products of 2031 and 01723456",
            c2_ex2,
            Duration::from_millis(1),
        ),
        (
            3,
            "Z(S_n) = h_n and Z(A_n) = h_n + e_n, n = 2..6",
            c3_cycle_indices,
            Duration::from_secs(5),
        ),
        (
            4,
            "g(2,2) decomposes into printed F(k,p)",
            c4_ex_f,
            Duration::from_secs(1),
        ),
        (
            5,
            "F(3,2) expansion and the 8 (2,2,2) diagrams",
            c5_f32,
            Duration::from_secs(10),
        ),
        (
            6,
            "type_gf and F(n,m) match census, n,m <= 3, P <= 2",
            c6_oracle_sweep,
            Duration::from_secs(60),
        ),
        (
            7,
            "property suites, 500 cases each",
            c7_properties,
            Duration::from_secs(600),
        ),
        (
            8,
            "z(underline_Z(G)) = Z(G), z(H_n), z(E_n)",
            c8_fqsym,
            Duration::from_secs(5),
        ),
        (
            9,
            "diagram classes per type for 3x2, P = 2",
            c9_mqsym_bridge,
            Duration::from_secs(5),
        ),
        (
            10,
            "Burnside counts, n,m <= 4, P <= 3",
            c10_burnside,
            Duration::from_secs(30),
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let label = format!("criterion {id}");
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| label.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = outcome.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("PASS {label}: {name} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {label}: {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
