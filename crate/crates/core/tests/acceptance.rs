//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cyclic_quiver::affine_flag::{aut_to_iwahori, component_weyl, schubert_union_check, w_of_subset};
use cyclic_quiver::flatness::{degree111_rank, eval_monomial, format_triple, TriDegMonomial};
use cyclic_quiver::geometry::{aut_act, bb_limit, AutElement, RepPoint};
use cyclic_quiver::gkm::{check_gkm_class, five_point_kt_classes, kt_shape_check, zn_act_class};
use cyclic_quiver::juggling::{enumerate_length_tuples, lengths_to_jug};
use cyclic_quiver::moment_graph::build_graph;
use cyclic_quiver::order::{affine_covers_below, displacement_spread, poincare_polynomial, verify_order_equivalence};
use cyclic_quiver::perm::lengths_to_perm;
use cyclic_quiver::{AffinePermutation, Character, Guard, KSubset, LengthTuple, Params};

use common::{all_bounded_windows, binomial, inversions, is_bounded, params};

/// Wall-clock limit for the two timed criteria.
const FAST: Duration = Duration::from_secs(1);
/// Largest `nω` for the order and Poincare sweeps.
const ORDER_SWEEP: usize = 8;
/// Largest `nω` for the sampled orbit check.
const ORBIT_SWEEP: usize = 6;
/// Group elements per fixed point in the orbit check.
const ORBIT_SAMPLES: usize = 50;
/// Group elements per triple in the Iwahori check.
const IWAHORI_SAMPLES: usize = 100;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tuple(p: &Params, s: &str) -> LengthTuple {
    LengthTuple::parse(s, p).unwrap()
}

fn fixed_point_count() -> Outcome {
    let p = params(1, 2, 2);
    let start = Instant::now();
    let got: BTreeSet<LengthTuple> = enumerate_length_tuples(&p).into_iter().collect();
    let elapsed = start.elapsed();
    let want: BTreeSet<LengthTuple> =
        ["(2,2)", "(3,1)", "(1,3)", "(4,0)", "(0,4)"].iter().map(|s| tuple(&p, s)).collect();
    ensure(got == want, || format!("got {got:?}"))?;
    ensure(elapsed < FAST, || format!("took {elapsed:?}"))?;
    Ok(format!("5 tuples in {elapsed:.2?}"))
}

fn moment_graph_edges() -> Outcome {
    let p = params(1, 2, 2);
    let g = build_graph(&p, &Guard::default()).map_err(|e| e.to_string())?;
    let label = |eps: [i64; 2], delta| Character { eps: eps.to_vec(), delta };
    let (up, down) = ([-1, 1], [1, -1]);
    let figure = [
        ("(4,0)", "(3,1)", label(up, 3)),
        ("(4,0)", "(1,3)", label(up, 1)),
        ("(0,4)", "(3,1)", label(down, 1)),
        ("(0,4)", "(1,3)", label(down, 3)),
        ("(3,1)", "(2,2)", label(up, 1)),
        ("(1,3)", "(2,2)", label(down, 1)),
    ];
    let got: BTreeSet<(String, String, String)> = g
        .edges
        .iter()
        .map(|e| (g.vertices[e.source].to_string(), g.vertices[e.target].to_string(), e.label.to_string()))
        .collect();
    let want: BTreeSet<(String, String, String)> =
        figure.iter().map(|(a, b, l)| (a.to_string(), b.to_string(), l.to_string())).collect();
    ensure(g.edges.len() == 6 && got == want, || format!("edges {got:?}"))?;
    let idx = |s| g.index_of(&tuple(&p, s)).unwrap();
    let e = g.find_edge(idx("(4,0)"), idx("(1,3)")).ok_or("no edge (4,0) -> (1,3)")?;
    ensure(e.label == label(up, 1), || format!("label {}", e.label))?;
    ensure(
        g.find_edge(idx("(4,0)"), idx("(0,4)")).is_none() && g.find_edge(idx("(0,4)"), idx("(4,0)")).is_none(),
        || "edge between (4,0) and (0,4)".into(),
    )?;
    Ok("6 edges as drawn; (4,0) -> (1,3) labelled e2-e1+d".into())
}

fn poincare() -> Outcome {
    let guard = Guard::default();
    let small = poincare_polynomial(&params(1, 2, 2), &guard).map_err(|e| e.to_string())?;
    ensure(small == [1, 2, 2], || format!("(1,2,2): {small:?}"))?;
    let mut checked = 0;
    for p in Params::all_up_to(ORDER_SWEEP) {
        let coeffs = poincare_polynomial(&p, &guard).map_err(|e| e.to_string())?;
        let degree = coeffs.len() - 1;
        ensure(degree == p.dimension(), || format!("{p}: degree {degree}"))?;
        ensure(coeffs[degree] as usize == binomial(p.n, p.k), || format!("{p}: leading {}", coeffs[degree]))?;
        let mut oracle = vec![0u64; degree + 1];
        for w in all_bounded_windows(&p) {
            let l = inversions(&AffinePermutation::new(w).unwrap()) as usize;
            ensure(l <= degree, || format!("{p}: a bounded permutation of length {l}"))?;
            oracle[l] += 1;
        }
        ensure(coeffs == oracle, || format!("{p}: {coeffs:?} vs brute force {oracle:?}"))?;
        checked += 1;
    }
    Ok(format!("1 + 2q + 2q^2; {checked} triples with nw <= {ORDER_SWEEP} match degree, leading term and brute force"))
}

fn order_isomorphism() -> Outcome {
    let mut pairs = 0;
    let all = Params::all_up_to(ORDER_SWEEP);
    for p in &all {
        let r = verify_order_equivalence(p, &Guard::default()).map_err(|e| e.to_string())?;
        if let Some((msg, a, b)) = r.violation {
            return Err(format!("{p}: {msg} at {a}, {b}"));
        }
        pairs += r.relation_size;
    }
    Ok(format!("{} triples, {pairs} comparable pairs, identical relations", all.len()))
}

fn lower_ideal() -> Outcome {
    let mut covers = 0usize;
    let all = Params::all_up_to(Guard::default().max_size);
    for p in &all {
        for t in enumerate_length_tuples(p) {
            let f = lengths_to_perm(&t, p).into_perm();
            for g in affine_covers_below(&f, displacement_spread(&f)) {
                ensure(is_bounded(&g, p), || format!("{p}: {g} below {f} is unbounded"))?;
                covers += 1;
            }
        }
    }
    Ok(format!("{covers} covers over {} triples with nw <= {} stay bounded", all.len(), Guard::default().max_size))
}

fn gkm() -> Outcome {
    let p = params(1, 2, 2);
    let g = build_graph(&p, &Guard::default()).map_err(|e| e.to_string())?;
    let classes = five_point_kt_classes();
    for (v, c) in &classes {
        let a = check_gkm_class(c, &g).map_err(|e| e.to_string())?;
        let b = kt_shape_check(c, v, &g).map_err(|e| e.to_string())?;
        ensure(a.passed() && b.passed(), || format!("xi{v}: {:?} {:?}", a.violations, b.violations))?;
    }
    let class = |s: &str| &classes.iter().find(|(v, _)| *v == tuple(&p, s)).unwrap().1;
    for (from, to) in [("(3,1)", "(1,3)"), ("(4,0)", "(0,4)"), ("(2,2)", "(2,2)")] {
        ensure(&zn_act_class(1, class(from)) == class(to), || format!("sigma.xi{from} != xi{to}"))?;
    }
    Ok(format!("{} classes pass; sigma swaps (3,1)/(1,3) and (4,0)/(0,4), fixes (2,2)", classes.len()))
}

fn cells_are_orbits() -> Outcome {
    let mut actions = 0;
    for p in Params::all_up_to(ORBIT_SWEEP) {
        let sample = AutElement::seeded(&p, SEED, ORBIT_SAMPLES);
        for t in enumerate_length_tuples(&p) {
            let jug = lengths_to_jug(&t, &p);
            let x = RepPoint::coordinate(&jug, &p);
            for a in &sample {
                let limit = aut_act(a, &x).and_then(|y| bb_limit(&y)).map_err(|e| e.to_string())?;
                ensure(limit == jug, || format!("{p} {t}: limit {limit}"))?;
                actions += 1;
            }
        }
    }
    Ok(format!("{actions} actions with nw <= {ORBIT_SWEEP} stay in their cell"))
}

fn embedding() -> Outcome {
    let mut count = 0;
    for p in Params::all_up_to(Guard::default().max_size) {
        for i in KSubset::all(&p) {
            let w = w_of_subset(&i, &p);
            let got = component_weyl(&i, &p).map_err(|e| e.to_string())?;
            ensure(got == w, || format!("{p} {:?}: {got} vs {w}", i.elements()))?;
            ensure(w.shift_sum() == 0, || format!("{p} {:?}: shift sum {}", i.elements(), w.shift_sum()))?;
            count += 1;
        }
    }
    Ok(format!("{count} components land on w(I) with shift sum 0"))
}

fn schubert_union() -> Outcome {
    let p = params(1, 2, 2);
    let guard = Guard::default();
    let want: BTreeSet<AffinePermutation> =
        ["[1,2]", "[2,1]", "[0,3]", "[3,0]", "[-1,4]"].iter().map(|s| AffinePermutation::parse(s).unwrap()).collect();
    let gens: Vec<_> = KSubset::all(&p).iter().map(|i| w_of_subset(i, &p)).collect();
    let union: BTreeSet<_> = cyclic_quiver::order::bruhat_lower_union(&gens).into_iter().collect();
    let image: BTreeSet<_> =
        enumerate_length_tuples(&p).iter().map(|t| cyclic_quiver::affine_flag::weyl_of_tuple(t, &p)).collect();
    ensure(union == want && image == want, || format!("union {union:?}, image {image:?}"))?;

    let all = Params::all_up_to(guard.max_size);
    let mut total = 0;
    for q in &all {
        let r = schubert_union_check(q, &guard).map_err(|e| e.to_string())?;
        let size = enumerate_length_tuples(q).len();
        ensure(r.passed() && r.union_size == size, || format!("{q}: {r:?}"))?;
        total += size;
    }
    Ok(format!("{} triples with nw <= {}, {total} elements on each side", all.len(), guard.max_size))
}

fn iwahori() -> Outcome {
    let triples = [params(1, 2, 2), params(2, 4, 1), params(1, 3, 2), params(2, 5, 2)];
    for p in &triples {
        for (i, a) in AutElement::seeded(p, SEED, IWAHORI_SAMPLES).iter().enumerate() {
            ensure(aut_to_iwahori(a).is_iwahori(), || format!("{p}: sample {i}"))?;
        }
    }
    Ok(format!("{IWAHORI_SAMPLES} elements for each of {} triples", triples.len()))
}

fn flatness_rank() -> Outcome {
    let start = Instant::now();
    let rank = degree111_rank();
    let show = |m: &str| format_triple(&eval_monomial(&TriDegMonomial::parse(m).unwrap()));
    let quoted = [("y1y2z3", ["a1", "0", "0"]), ("z1z2z3", ["b1*a2", "b2*a3", "b3*a1"]), ("x1x2z3", ["0", "0", "0"])];
    let elapsed = start.elapsed();
    ensure(rank == 10, || format!("rank {rank}"))?;
    for (m, want) in quoted {
        // the printer orders variables a1,b1,a2,...; compare as sets of factors
        let normal = |s: &str| {
            let mut f: Vec<&str> = s.split('*').collect();
            f.sort();
            f.join("*")
        };
        let got = show(m);
        let same = got.iter().zip(want).all(|(g, w)| normal(g) == normal(w));
        ensure(same, || format!("{m} = ({}), quoted ({})", got.join(", "), want.join(", ")))?;
    }
    ensure(elapsed < FAST, || format!("took {elapsed:?}"))?;
    Ok(format!("rank 10, quoted values hold, {elapsed:.2?}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("fixed-point count", fixed_point_count),
        ("moment graph of X(1,2,2)", moment_graph_edges),
        ("Poincare polynomials", poincare),
        ("order isomorphism", order_isomorphism),
        ("lower ideal", lower_ideal),
        ("GKM classes", gkm),
        ("cells are Aut-orbits", cells_are_orbits),
        ("embedding of components", embedding),
        ("Schubert union", schubert_union),
        ("Iwahori image", iwahori),
        ("degree (1,1,1) rank", flatness_rank),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS [{:>2}] {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
