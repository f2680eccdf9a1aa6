//! Acceptance gate for the workspace: eleven independent checks, one per
//! criterion, each printing a single `criterion N (...): pass/fail` line
//! with its elapsed time and failing if it runs over its time budget.
//!
//! The checks only go through public API, and every expected value is
//! either computed by an independent in-test oracle (brute-force
//! enumeration, category composition tables, direct simplex counting) or
//! is an exact structural fact (level counts of a standard simplex).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::{Arc, Mutex, PoisonError};
use std::time::{Duration, Instant};

use semikan::category::FiniteCategory;
use semikan::complex::{boundary, standard_simplex, terminal_truncated, SemiSimplicialSet};
use semikan::exponential::{marked_exponential, marked_exponential_restriction};
use semikan::join::join;
use semikan::lifting::{
    is_inner_kan, is_marked_inner_fibration, is_marked_inner_kan, solve_lift, Family,
    LiftingProblem,
};
use semikan::maps::enumerate_maps;
use semikan::marking::{enumerate_marked_maps, marked_extensions_along};
use semikan::product::free_product_comparison;
use semikan::simplicial::nerve;
use semikan::slice::{find_terminal_extension, hom_left, slice_over, TerminalSearch};
use semikan::unitality::{
    check_left_fib_over_point, check_two_out_of_six, equivalences_horn, is_quasi_unital,
    natural_marking, verify_theorem_a, verify_theorem_c, OuterDegeneracyData,
};
use semikan::{MarkedMap, MarkedSSet, SSetMap, SearchMode};

use semikan_cli::corpus::{default_corpus, simplex_family, spec_corpus, CorpusSpec};

/// Criteria run one at a time so the printed timings measure the check and
/// not scheduling noise.  A failed criterion poisons the lock; later ones
/// still run.
static GATE: Mutex<()> = Mutex::new(());

fn criterion(number: usize, name: &str, budget: Duration, body: impl FnOnce()) {
    let _guard = GATE.lock().unwrap_or_else(PoisonError::into_inner);
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() { "pass" } else { "fail" };
    println!(
        "criterion {number:2} ({name}): {verdict} [{} ms]",
        elapsed.as_millis()
    );
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} ({name}) took {} ms, over the {} ms budget",
        elapsed.as_millis(),
        budget.as_millis()
    );
}

fn corpus_complexes() -> Vec<(String, Arc<SemiSimplicialSet>)> {
    default_corpus()
        .into_iter()
        .map(|entry| {
            let x = entry.document.complex().expect("shipped corpus documents are valid");
            (entry.name, x)
        })
        .collect()
}

fn nerve_categories() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("nerve-z2", FiniteCategory::cyclic_group(2)),
        ("nerve-z3", FiniteCategory::cyclic_group(3)),
        ("nerve-chain-1", FiniteCategory::poset_chain(1)),
        ("nerve-chain-2", FiniteCategory::poset_chain(2)),
        ("nerve-chain-3", FiniteCategory::poset_chain(3)),
        ("nerve-groupoid", FiniteCategory::two_object_groupoid()),
    ]
}

fn nerve_forget(c: &FiniteCategory, trunc: usize) -> Arc<SemiSimplicialSet> {
    Arc::new(nerve(c, trunc).simplicial.forget())
}

/// The vertex left standing after stripping the initial vertex `dim` times.
fn last_vertex(x: &SemiSimplicialSet, dim: usize, s: usize) -> usize {
    let mut d = dim;
    let mut c = s;
    while d > 0 {
        c = x.faces(d, c)[0];
        d -= 1;
    }
    c
}

/// Terminal truncation with its unique edge marked.
fn sharp_terminal(bound: usize) -> MarkedSSet {
    let t = Arc::new(terminal_truncated(bound));
    let marked: BTreeSet<usize> = if bound >= 1 { BTreeSet::from([0]) } else { BTreeSet::new() };
    MarkedSSet::new(t, marked).expect("the terminal edge exists")
}

#[test]
fn joins_of_simplices_are_simplices() {
    criterion(1, "join identity", Duration::from_secs(1), || {
        let mut pairs = 0;
        for n in 0..=3usize {
            for m in 0..=3usize {
                if n + m > 3 {
                    continue;
                }
                let a = Arc::new(standard_simplex(n));
                let b = Arc::new(standard_simplex(m));
                let joined = join(&a, &b);
                let target = Arc::new(standard_simplex(n + m + 1));
                assert_eq!(
                    joined.complex.level_sizes(),
                    target.level_sizes(),
                    "join of simplex-{n} and simplex-{m} has the wrong level counts"
                );
                let iso = enumerate_maps(&joined.complex, &target, SearchMode::All)
                    .into_iter()
                    .find(SSetMap::is_levelwise_injective);
                assert!(
                    iso.is_some(),
                    "no isomorphism from the join of simplex-{n} and simplex-{m} to simplex-{}",
                    n + m + 1
                );
                pairs += 1;
            }
        }
        assert_eq!(pairs, 10, "pair enumeration drifted");
    });
}

#[test]
fn free_functor_turns_products_into_products() {
    criterion(2, "product compatibility", Duration::from_secs(5), || {
        let shapes: Vec<(&str, Arc<SemiSimplicialSet>)> = vec![
            ("simplex-0", Arc::new(standard_simplex(0))),
            ("simplex-1", Arc::new(standard_simplex(1))),
            ("boundary-2", Arc::new(boundary(2))),
        ];
        for (xn, x) in &shapes {
            for (yn, y) in &shapes {
                let cmp = free_product_comparison(x, y, 3)
                    .expect("small shapes have headroom at dimension 3");
                assert_eq!(
                    cmp.free_product.underlying.level_sizes(),
                    cmp.underlying_product.level_sizes(),
                    "{xn} x {yn}: level counts disagree"
                );
                assert!(
                    cmp.comparison.is_levelwise_injective(),
                    "{xn} x {yn}: the comparison map is not injective"
                );
            }
        }
    });
}

#[test]
fn unitality_agrees_with_marked_horn_filling() {
    criterion(3, "quasi-units against marked horns", Duration::from_secs(60), || {
        let mut inner_kan = Vec::new();
        for (name, x) in corpus_complexes() {
            let flat = MarkedSSet::flat(Arc::clone(&x));
            if !is_inner_kan(&flat, 3).expect("corpus headroom").holds() {
                continue;
            }
            let report = verify_theorem_a(&x, 3).expect("corpus headroom");
            assert!(
                report.agree,
                "{name}: quasi-unital is {} but the natural marking inner Kan check says {}",
                report.quasi_unital.holds(),
                report.marked_inner_kan.holds()
            );
            inner_kan.push(name);
        }
        // The nerves plus every member too sparse to pose an inner horn
        // problem: points, the interval and higher simplices, and the outer
        // 2-horns, whose edge pairs never compose.
        let expected = [
            "nerve-z2",
            "nerve-z3",
            "nerve-chain-1",
            "nerve-chain-2",
            "nerve-chain-3",
            "nerve-groupoid",
            "simplex-0",
            "simplex-1",
            "simplex-2",
            "simplex-3",
            "boundary-0",
            "boundary-1",
            "horn-1-0",
            "horn-1-1",
            "horn-2-0",
            "horn-2-2",
        ];
        let got: Vec<&str> = inner_kan.iter().map(String::as_str).collect();
        assert_eq!(got, expected, "inner Kan corpus membership drifted");
    });
}

#[test]
fn degenerate_edges_are_idempotent_units() {
    criterion(4, "degenerate units", Duration::from_secs(30), || {
        for (name, cat) in nerve_categories() {
            let nv = nerve(&cat, 4);
            let data = OuterDegeneracyData::from_simplicial(&nv.simplicial);
            let x = Arc::new(nv.simplicial.forget());
            let report = verify_theorem_c(&x, &data, 3).expect("nerve headroom");
            assert!(report.holds(), "{name}: degeneracy identities or coverage failed");
            assert_eq!(report.vertices.len(), x.level_size(0), "{name}: vertex coverage");
            for v in &report.vertices {
                assert_eq!(
                    v.unit, data.s0[0][v.vertex],
                    "{name}: the unit of vertex {} is not its degenerate edge",
                    v.vertex
                );
                assert!(
                    v.idempotent_witness.is_some(),
                    "{name}: the unit of vertex {} has no idempotent witness",
                    v.vertex
                );
                assert!(
                    v.is_equivalence,
                    "{name}: the unit of vertex {} is not an equivalence",
                    v.vertex
                );
            }
        }
    });
}

#[test]
fn horn_equivalences_are_exactly_the_isomorphisms() {
    criterion(5, "invertibility detection", Duration::from_secs(30), || {
        let cats = vec![
            ("nerve-z2", FiniteCategory::cyclic_group(2)),
            ("nerve-z3", FiniteCategory::cyclic_group(3)),
            ("nerve-chain-3", FiniteCategory::poset_chain(3)),
            ("nerve-groupoid", FiniteCategory::two_object_groupoid()),
        ];
        for (name, cat) in cats {
            let x = nerve_forget(&cat, 4);
            let got = equivalences_horn(&x, 3).expect("nerve headroom");
            let mut want = BTreeSet::new();
            for e in 0..x.level_size(1) {
                let m = cat
                    .morphism_index(x.id(1, e))
                    .expect("nerve edges are named by morphisms");
                let mor = cat.morphism(m);
                let invertible = (0..cat.morphism_count()).any(|g| {
                    cat.composite(m, g) == Some(cat.identity_of(mor.src))
                        && cat.composite(g, m) == Some(cat.identity_of(mor.dst))
                });
                if invertible {
                    want.insert(e);
                }
            }
            assert_eq!(got, want, "{name}: equivalence edges are not the isomorphisms");
        }
    });
}

#[test]
fn equivalence_markings_close_under_two_out_of_six() {
    criterion(6, "two-out-of-six closure", Duration::from_secs(5), || {
        let mut checked = Vec::new();
        for (name, x) in corpus_complexes() {
            let flat = MarkedSSet::flat(Arc::clone(&x));
            if !is_inner_kan(&flat, 3).expect("corpus headroom").holds() {
                continue;
            }
            if !is_quasi_unital(&x, 3).expect("corpus headroom").holds() {
                continue;
            }
            let marking = natural_marking(&x, 3).expect("corpus headroom");
            let report = check_two_out_of_six(&x, marking.marked());
            assert!(
                report.holds(),
                "{name}: the equivalence marking is not two-out-of-six closed"
            );
            checked.push(name);
        }
        assert_eq!(
            checked.len(),
            7,
            "quasi-unital inner Kan membership drifted: {checked:?}"
        );

        let d3 = Arc::new(standard_simplex(3));
        let marked: BTreeSet<usize> = ["02", "13"]
            .iter()
            .map(|id| d3.index_of(1, id).expect("diagonal edges of the tetrahedron"))
            .collect();
        let report = check_two_out_of_six(&d3, &marked);
        let violation = report
            .violation
            .expect("marking only the diagonals must fail closure");
        assert_eq!(
            d3.id(3, violation.simplex),
            "0123",
            "the reported violation is not the top cell"
        );
    });
}

#[test]
fn slice_levels_count_anchored_simplices() {
    criterion(7, "slice levels", Duration::from_secs(10), || {
        let point = Arc::new(standard_simplex(0));
        let mut anchors = 0;
        for (name, x) in corpus_complexes() {
            for p in 0..x.level_size(0) {
                let map = SSetMap::new(Arc::clone(&point), Arc::clone(&x), vec![vec![p]])
                    .expect("vertex maps always exist");
                let slice = slice_over(&map, 2).expect("corpus headroom");
                for k in 0..=2usize {
                    let expected = (0..x.level_size(k + 1))
                        .filter(|&s| last_vertex(&x, k + 1, s) == p)
                        .count();
                    assert_eq!(
                        slice.complex.level_size(k),
                        expected,
                        "{name}: slice over vertex {p} has the wrong count at level {k}"
                    );
                }
                anchors += 1;
            }
        }
        assert!(anchors > 40, "the corpus lost most of its vertices: {anchors}");
    });
}

#[test]
fn left_hom_levels_count_morphisms() {
    criterion(8, "hom complexes", Duration::from_secs(10), || {
        for (name, cat) in nerve_categories() {
            let x = nerve_forget(&cat, 4);
            for b in 0..cat.object_count() {
                let tip = x
                    .index_of(0, cat.object_name(b))
                    .expect("objects are vertices");
                let ext = match find_terminal_extension(&x, tip, 3).expect("nerve headroom") {
                    TerminalSearch::Found(ext) => ext,
                    TerminalSearch::Exhausted { at } => panic!(
                        "{name}: no identity tower over {} (dies at height {at})",
                        cat.object_name(b)
                    ),
                };
                for a in 0..cat.object_count() {
                    let start = x
                        .index_of(0, cat.object_name(a))
                        .expect("objects are vertices");
                    let hom = hom_left(&x, start, &ext, 3).expect("nerve headroom");
                    let expected = (0..cat.morphism_count())
                        .filter(|&m| cat.morphism(m).src == a && cat.morphism(m).dst == b)
                        .count();
                    for k in 0..=3usize {
                        assert_eq!(
                            hom.complex.level_size(k),
                            expected,
                            "{name}: maps from {} to {} miscounted at level {k}",
                            cat.object_name(a),
                            cat.object_name(b)
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn exponentials_preserve_marked_inner_fibrancy() {
    criterion(9, "exponential stability", Duration::from_secs(120), || {
        let spec = CorpusSpec {
            truncation: 5,
            ..CorpusSpec::default_spec()
        };
        let mut entries = spec_corpus(&spec).expect("builtin generators are valid");
        entries.extend(simplex_family(5));

        let mut members = Vec::new();
        for entry in entries {
            let member_start = Instant::now();
            let x = entry.document.complex().expect("rebuilt corpus documents are valid");
            let marking = natural_marking(&x, 3).expect("headroom at truncation five");
            if !is_marked_inner_kan(&marking, 3).expect("headroom").holds() {
                continue;
            }
            for gen in Family::AdmissibleHorns.generators(2) {
                let t0 = Instant::now();
                let xb = marked_exponential(&marking, gen.map.target(), 2)
                    .expect("truncation five leaves exponential headroom");
                let t1 = Instant::now();
                let xa = marked_exponential(&marking, gen.map.source(), 2)
                    .expect("truncation five leaves exponential headroom");
                let t2 = Instant::now();
                let restriction = marked_exponential_restriction(&gen.map, &xb, &xa)
                    .expect("restriction along a generator");
                let t3 = Instant::now();
                let report =
                    is_marked_inner_fibration(&restriction, 2).expect("exponential headroom");
                eprintln!(
                    "    {} {}: xb {} ms, xa {} ms, restr {} ms, fib {} ms",
                    entry.name,
                    gen.name,
                    (t1 - t0).as_millis(),
                    (t2 - t1).as_millis(),
                    (t3 - t2).as_millis(),
                    t3.elapsed().as_millis()
                );
                assert!(
                    report.holds(),
                    "{}: restriction along {} is not a marked inner fibration",
                    entry.name,
                    gen.name
                );
            }
            eprintln!("  member {}: {} ms", entry.name, member_start.elapsed().as_millis());
            members.push(entry.name);
        }
        assert_eq!(
            members.len(),
            7,
            "marked inner Kan membership drifted: {members:?}"
        );
    });
}

#[test]
fn point_fibrations_are_fully_marked_kan_complexes() {
    criterion(10, "fibrations over the point", Duration::from_secs(10), || {
        let mut fibrations = Vec::new();
        for (name, x) in corpus_complexes() {
            let marking = natural_marking(&x, 3).expect("corpus headroom");
            let sharp = sharp_terminal(x.dim_bound());
            let to_point = SSetMap::terminal_map(&x, sharp.carrier())
                .expect("terminal truncations absorb everything");
            let f = MarkedMap::new(marking, sharp, to_point)
                .expect("every marking lands in the sharp point");
            let report = check_left_fib_over_point(&f, 3).expect("corpus headroom");
            assert!(
                report.holds(),
                "{name}: a fibration over the point with unmarked edges or a non-Kan carrier"
            );
            if report.fibration.holds() {
                assert!(report.unmarked_edges.is_empty(), "{name}: unmarked edges slipped by");
                assert!(
                    report.kan.as_ref().expect("kan report runs for fibrations").holds(),
                    "{name}: carrier is not Kan"
                );
                fibrations.push(name);
            }
        }
        assert_eq!(
            fibrations.len(),
            4,
            "point fibration membership drifted: {fibrations:?}"
        );
    });
}

/// Every assignment of the free cells, checked directly: face commutation
/// via map construction, marking preservation, and the bottom triangle.
fn brute_force_fillers(p: &LiftingProblem) -> BTreeSet<Vec<Vec<usize>>> {
    let b_marked = p.j.target();
    let x_marked = p.f.source();
    let b = b_marked.carrier();
    let x = x_marked.carrier();
    let a = p.j.source().carrier();

    let mut pinned: Vec<Vec<Option<usize>>> = (0..=b.dim_bound())
        .map(|n| vec![None; b.level_size(n)])
        .collect();
    for n in 0..=a.dim_bound() {
        for s in 0..a.level_size(n) {
            pinned[n][p.j.apply(n, s)] = Some(p.top.apply(n, s));
        }
    }
    let free: Vec<(usize, usize)> = (0..=b.dim_bound())
        .flat_map(|n| (0..b.level_size(n)).map(move |s| (n, s)))
        .filter(|&(n, s)| pinned[n][s].is_none())
        .collect();

    let mut out = BTreeSet::new();
    if free.iter().any(|&(n, _)| x.level_size(n) == 0) {
        return out;
    }
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut components: Vec<Vec<usize>> = pinned
            .iter()
            .map(|level| level.iter().map(|c| c.unwrap_or(0)).collect())
            .collect();
        for (digit, &(n, s)) in digits.iter().zip(&free) {
            components[n][s] = *digit;
        }
        if let Ok(g) = SSetMap::new(Arc::clone(b), Arc::clone(x), components.clone()) {
            if let Ok(mg) = MarkedMap::new(b_marked.clone(), x_marked.clone(), g) {
                let through = MarkedMap::compose(&mg, &p.f).expect("endpoints agree");
                if through.underlying().components() == p.bottom.underlying().components() {
                    out.insert(components);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < x.level_size(free[i].0) {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn solver_matches_brute_force_on_small_problems() {
    criterion(11, "solver oracle", Duration::from_secs(60), || {
        let spec = CorpusSpec {
            generators: CorpusSpec::default_spec()
                .generators
                .into_iter()
                .take(4)
                .collect(),
            truncation: 3,
        };
        let mut entries = spec_corpus(&spec).expect("builtin generators are valid");
        entries.extend(simplex_family(3));

        let mut problems = 0usize;
        let mut skipped = 0usize;
        let mut with_fillers = 0usize;
        let mut without_fillers = 0usize;
        for entry in entries {
            let x = entry.document.complex().expect("rebuilt corpus documents are valid");
            let marking = natural_marking(&x, 2).expect("truncation three headroom");
            let sharp = sharp_terminal(x.dim_bound());
            let to_point = SSetMap::terminal_map(&x, sharp.carrier())
                .expect("terminal truncations absorb everything");
            let maps = vec![
                MarkedMap::new(marking.clone(), sharp, to_point)
                    .expect("every marking lands in the sharp point"),
                MarkedMap::identity(&marking),
            ];
            for f in maps {
                for family in Family::ALL {
                    for gen in family.generators(2) {
                        let tops =
                            enumerate_marked_maps(gen.map.source(), f.source(), SearchMode::All);
                        for top in tops {
                            let composite =
                                MarkedMap::compose(&top, &f).expect("endpoints agree");
                            let bottoms =
                                marked_extensions_along(&gen.map, &composite, SearchMode::All)
                                    .expect("generators are inclusions");
                            for bottom in bottoms {
                                let problem = LiftingProblem::new(
                                    gen.map.clone(),
                                    f.clone(),
                                    top.clone(),
                                    bottom,
                                )
                                .expect("squares commute by construction");
                                if problem.search_space() > 200 {
                                    skipped += 1;
                                    continue;
                                }
                                let solution = solve_lift(&problem, SearchMode::All);
                                assert!(solution.exhaustive, "exhaustive mode must explore all");
                                let got: BTreeSet<Vec<Vec<usize>>> = solution
                                    .fillers
                                    .iter()
                                    .map(|m| m.underlying().components().to_vec())
                                    .collect();
                                let want = brute_force_fillers(&problem);
                                assert_eq!(
                                    got,
                                    want,
                                    "{}: solver and brute force disagree against {}",
                                    entry.name,
                                    gen.name
                                );
                                if got.is_empty() {
                                    without_fillers += 1;
                                } else {
                                    with_fillers += 1;
                                }
                                problems += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(
            problems >= 200,
            "too few comparable problems: {problems} checked, {skipped} skipped"
        );
        assert!(with_fillers > 0, "no problem had a filler");
        assert!(without_fillers > 0, "every problem had a filler");
    });
}
