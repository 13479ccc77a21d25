//! Acceptance criteria, one PASS/FAIL line each. Expected quantities are
//! recomputed here from first principles (factorials by multiplication,
//! binomials by Pascal's rule, distances by a local BFS, groups by closure
//! or brute force) rather than taken from the library.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use johnson_core::combinatorics::SubsetLabel;
use johnson_core::corpus::corpus;
use johnson_core::formats::{from_graph6, to_graph6};
use johnson_core::graph::{complete_graph, johnson_graph, line_graph, Graph};
use johnson_core::group::PermGroup;
use johnson_core::oracle::brute_force_automorphisms;
use johnson_core::perm::{compose, Permutation};
use johnson_core::schema::OUTPUT_SCHEMA;
use johnson_core::search::{automorphism_group, check_isomorphism, find_isomorphism};
use johnson_core::theory::{
    bipartite_aut_order, complementation_map, distance_by_intersection, induced_action,
    local_reconstruction, neighborhood_iso, transitivity_profile, unique_intersection_in,
    verify_johnson_aut, whitney_lift, PartialVertexMap, VerificationReport,
};

/// Wall-clock budget per pair for criterion 1.
const LIMIT_UNEQUAL: Duration = Duration::from_secs(30);
/// Wall-clock budget for `J(8, 4)` in criterion 2.
const LIMIT_EQUAL: Duration = Duration::from_secs(60);
/// Random ground permutations in the commutation check.
const COMMUTATION_SAMPLES: usize = 100;
/// Random induced maps per graph in the reconstruction check.
const RECONSTRUCTION_SAMPLES: usize = 25;
const SEED: u64 = 20_241_014;

fn fact(n: usize) -> BigUint {
    let mut f = BigUint::from(1u32);
    for k in 2..=n {
        f *= k;
    }
    f
}

fn pascal(n: usize, m: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(m).copied().unwrap_or(0)
}

fn bfs(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in 0..g.vertex_count() {
            if g.has_edge(u, v) && dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All elements of the group generated by `gens`, by breadth-first closure.
fn closure(gens: &[Permutation], degree: usize) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(g, &p).unwrap();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

fn random_theta(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

fn sym_gens(n: usize) -> [Permutation; 2] {
    let cycle: Vec<usize> = (0..n).collect();
    [
        Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
        Permutation::from_cycles(n, &[&cycle]).unwrap(),
    ]
}

fn closed_neighborhood(g: &Graph, x: usize) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&v| v == x || g.has_edge(x, v))
        .collect()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn c01_order_unequal() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, m) in [(5, 2), (6, 2), (7, 2), (7, 3), (8, 3), (9, 4)] {
        let start = Instant::now();
        let order = automorphism_group(&johnson_graph(n, m).unwrap())
            .unwrap()
            .order()
            .clone();
        let took = start.elapsed();
        ok &= order == fact(n) && took <= LIMIT_UNEQUAL;
        notes.push(format!("J({n},{m})={order} in {} ms", took.as_millis()));
    }
    outcome(ok, notes.join(", "))
}

fn c02_order_equal() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, m) in [(4, 2), (6, 3), (8, 4)] {
        let start = Instant::now();
        let order = automorphism_group(&johnson_graph(n, m).unwrap())
            .unwrap()
            .order()
            .clone();
        let took = start.elapsed();
        ok &= order == fact(n) * 2u32 && took <= LIMIT_EQUAL;
        notes.push(format!("J({n},{m})={order} in {} ms", took.as_millis()));
    }
    outcome(ok, notes.join(", "))
}

fn c03_complementation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [(6, 3), (8, 4)] {
        let size = pascal(n, m) as usize;
        let alpha = complementation_map(n, m).unwrap();
        let lifts: Vec<Permutation> = sym_gens(n)
            .iter()
            .map(|t| induced_action(t, n, m).unwrap())
            .collect();
        let h = PermGroup::from_generators(&lifts, size).unwrap();
        let outside = !h.contains(&alpha).unwrap();
        let mut thetas: Vec<Permutation> = sym_gens(n).to_vec();
        thetas.extend((0..COMMUTATION_SAMPLES).map(|_| random_theta(n, &mut rng)));
        let commutes = thetas.iter().all(|t| {
            let f = induced_action(t, n, m).unwrap();
            compose(&f, &alpha).unwrap() == compose(&alpha, &f).unwrap()
        });
        let mut gens = lifts.clone();
        gens.push(alpha);
        let order = PermGroup::from_generators(&gens, size)
            .unwrap()
            .order()
            .clone();
        ok &= outside && commutes && order == fact(n) * 2u32;
        notes.push(format!(
            "J({n},{m}): outside {outside}, commutes with {} maps {commutes}, |<H,a>|={order}",
            thetas.len()
        ));
    }
    outcome(ok, notes.join("; "))
}

fn c04_triangular() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 5..=7 {
        let line = line_graph(&complete_graph(n).unwrap()).unwrap().graph;
        let j = johnson_graph(n, 2).unwrap();
        let a = automorphism_group(&line).unwrap().order().clone();
        let b = automorphism_group(&j).unwrap().order().clone();
        let iso = find_isomorphism(&line, &j)
            .unwrap()
            .is_some_and(|p| check_isomorphism(&line, &j, &p));
        ok &= a == fact(n) && b == fact(n) && iso;
        notes.push(format!("n={n}: {a} {b} iso {iso}"));
    }
    outcome(ok, notes.join(", "))
}

fn c05_whitney_exception() -> Outcome {
    let k4 = complete_graph(4).unwrap();
    let line = line_graph(&k4).unwrap();
    let brute = brute_force_automorphisms(&line.graph).unwrap().len();
    let base = brute_force_automorphisms(&k4).unwrap();
    let lifted: HashSet<Permutation> = base
        .iter()
        .map(|g| whitney_lift(g, &k4, &line).unwrap())
        .collect();
    let computed = automorphism_group(&line.graph).unwrap().order().clone();
    let ok = brute == 48 && lifted.len() == 24 && computed == BigUint::from(48u32);
    outcome(
        ok,
        format!(
            "|Aut L(K4)| brute {brute}, search {computed}; lifted image {}",
            lifted.len()
        ),
    )
}

fn c06_neighborhood_iso() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for (n, m) in [(6, 3), (7, 3)] {
        let g = johnson_graph(n, m).unwrap();
        let labels = g.labels().unwrap().to_vec();
        for (vi, v) in labels.iter().enumerate() {
            let phi = neighborhood_iso(n, m, v).unwrap();
            // Independent check: the images are exactly the m-sets meeting v
            // in m-1 points, and two bipartite edges share an endpoint iff
            // their images meet in m-1 points.
            let expected: BTreeSet<usize> = (0..labels.len())
                .filter(|&u| (labels[u].mask() & v.mask()).count_ones() as usize == m - 1)
                .collect();
            let got: BTreeSet<usize> = phi.images.iter().copied().collect();
            ok &= got == expected
                && got.len() == phi.images.len()
                && g.neighbors(vi).count_ones(..) == got.len();
            for a in 0..phi.images.len() {
                for b in a + 1..phi.images.len() {
                    let (ea, eb) = (phi.line.edges[a], phi.line.edges[b]);
                    let share = ea.0 == eb.0 || ea.1 == eb.1;
                    let (la, lb) = (&labels[phi.images[a]], &labels[phi.images[b]]);
                    let meet = (la.mask() & lb.mask()).count_ones() as usize == m - 1;
                    ok &= share == meet && meet == g.has_edge(phi.images[a], phi.images[b]);
                }
            }
            ok &= phi.verify(&g).unwrap();
            checked += 1;
        }
    }
    outcome(ok, format!("{checked} vertices of J(6,3) and J(7,3)"))
}

fn c07_unique_intersection() -> Outcome {
    let mut total = 0;
    let mut failed = 0;
    let mut failed_deep = 0;
    let mut failing_layers = BTreeSet::new();
    let mut first = None;
    for (n, m) in [(6, 3), (7, 3), (8, 4)] {
        let g = johnson_graph(n, m).unwrap();
        for x in 0..g.vertex_count() {
            let dist = bfs(&g, x);
            let part = johnson_core::graph::distance_partition(&g, x).unwrap();
            for v in (0..g.vertex_count()).filter(|&v| v != x) {
                let w = unique_intersection_in(&g, &part, v).unwrap();
                total += 1;
                assert_eq!(Some(w.layer), dist[v]);
                if !w.passed {
                    failed += 1;
                    failing_layers.insert(w.layer);
                    failed_deep += usize::from(w.layer >= 2);
                    first.get_or_insert((n, m, x, v, w.common.len()));
                }
            }
        }
    }
    let detail = match first {
        None => format!("{total} pairs, all unique"),
        Some((n, m, x, v, size)) => format!(
            "{failed} of {total} pairs fail, in layers {failing_layers:?} ({failed_deep} beyond layer 1); \
             first J({n},{m}) x={x} v={v}: intersection has {size} vertices because a neighbor's only \
             back-neighbor is x"
        ),
    };
    outcome(failed == 0, detail)
}

fn c08_reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [(6, 3), (7, 3), (8, 4)] {
        let g = johnson_graph(n, m).unwrap();
        let size = g.vertex_count();
        let mut id_ok = true;
        for x in 0..size {
            let seed = PartialVertexMap::restrict(
                &Permutation::identity(size),
                closed_neighborhood(&g, x),
            );
            id_ok &= local_reconstruction(&g, x, &seed).is_ok_and(|p| p.is_identity());
        }
        let mut recovered = 0;
        for _ in 0..RECONSTRUCTION_SAMPLES {
            let theta = random_theta(n, &mut rng);
            // f_θ straight from the definition: apply θ to each subset.
            let labels = g.labels().unwrap();
            let images: Vec<usize> = labels
                .iter()
                .map(|l| {
                    let mapped: Vec<usize> = l.elements().map(|e| theta.apply(e - 1) + 1).collect();
                    let target = SubsetLabel::from_elements(&mapped, n).unwrap();
                    labels.iter().position(|o| *o == target).unwrap()
                })
                .collect();
            let f = Permutation::from_images(images).unwrap();
            let x = rng.random_range(0..size);
            let seed = PartialVertexMap::restrict(&f, closed_neighborhood(&g, x));
            recovered += usize::from(local_reconstruction(&g, x, &seed).is_ok_and(|p| p == f));
        }
        ok &= id_ok && recovered == RECONSTRUCTION_SAMPLES;
        notes.push(format!(
            "J({n},{m}): identity {id_ok}, {recovered}/{RECONSTRUCTION_SAMPLES} recovered"
        ));
    }
    outcome(ok, notes.join(", "))
}

fn c09_distance_law() -> Outcome {
    let mut ok = true;
    let mut pairs = 0;
    for (n, m) in [(5, 2), (6, 3), (7, 3)] {
        let g = johnson_graph(n, m).unwrap();
        let labels = g.labels().unwrap();
        for u in 0..g.vertex_count() {
            let dist = bfs(&g, u);
            for v in 0..g.vertex_count() {
                ok &= dist[v] == Some(distance_by_intersection(&labels[u], &labels[v]).unwrap());
                pairs += 1;
            }
        }
    }
    outcome(ok, format!("{pairs} ordered pairs"))
}

fn c10_oracle() -> Outcome {
    let mut ok = true;
    let mut names = Vec::new();
    for (name, g) in corpus().into_iter().filter(|(_, g)| g.vertex_count() <= 10) {
        let brute: HashSet<Permutation> =
            brute_force_automorphisms(&g).unwrap().into_iter().collect();
        let group = automorphism_group(&g).unwrap();
        let elements = closure(group.generators(), g.vertex_count());
        let same = *group.order() == BigUint::from(brute.len()) && elements == brute;
        if name == "petersen" {
            ok &= brute.len() == 120;
        }
        if name == "line_k4" {
            ok &= brute.len() == 48;
        }
        ok &= same;
        names.push(format!("{name}:{}", brute.len()));
    }
    outcome(ok, names.join(" "))
}

fn c11_transitivity() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [(5, 2), (6, 3), (7, 3)] {
        let g = johnson_graph(n, m).unwrap();
        let p = transitivity_profile(&g, &automorphism_group(&g).unwrap()).unwrap();
        ok &= p.vertex && p.edge && p.distance;
        notes.push(format!("J({n},{m}) {}/{}/{}", p.vertex, p.edge, p.distance));
    }
    // Orbits on ordered pairs of J(5,2) from the full brute-force group.
    let g = johnson_graph(5, 2).unwrap();
    let all = brute_force_automorphisms(&g).unwrap();
    let mut orbits_per_distance = vec![BTreeSet::new(); 3];
    for u in 0..10 {
        let dist = bfs(&g, u);
        for v in 0..10 {
            let orbit: BTreeSet<(usize, usize)> =
                all.iter().map(|p| (p.apply(u), p.apply(v))).collect();
            orbits_per_distance[dist[v].unwrap()].insert(orbit);
        }
    }
    let brute_ok = orbits_per_distance.iter().all(|o| o.len() == 1);
    ok &= brute_ok;
    notes.push(format!(
        "brute-force pair orbits J(5,2) single per distance {brute_ok}"
    ));
    outcome(ok, notes.join(", "))
}

fn c12_stabilizer() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [
        (5, 2),
        (6, 2),
        (7, 2),
        (7, 3),
        (8, 3),
        (9, 4),
        (4, 2),
        (6, 3),
        (8, 4),
    ] {
        let g = johnson_graph(n, m).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let stab = aut.stabilizer(0).unwrap();
        let expected = if n == 2 * m {
            fact(m) * fact(m) * 2u32
        } else {
            fact(m) * fact(n - m)
        };
        let index = aut.order() / stab.order();
        let exact = aut.order() % stab.order() == BigUint::ZERO;
        ok &= exact
            && index == BigUint::from(pascal(n, m))
            && *stab.order() == expected
            && bipartite_aut_order(m, n - m) == expected;
        notes.push(format!("J({n},{m}) |G_x|={} index {index}", stab.order()));
    }
    outcome(ok, notes.join(", "))
}

fn c13_formats_and_schema() -> Outcome {
    let fixture = include_str!("data/corpus.g6");
    let known: Vec<(&str, Graph)> = corpus();
    let mut ok = fixture.lines().count() == known.len();
    for (line, (name, g)) in fixture.lines().zip(&known) {
        let (fname, text) = line.split_once(' ').unwrap();
        let parsed = from_graph6(text).unwrap();
        ok &= fname == *name
            && to_graph6(&parsed).unwrap() == text
            && to_graph6(g).unwrap() == text
            && parsed.same_edges(g);
    }
    let schema: serde_json::Value = serde_json::from_str(OUTPUT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut reports: Vec<VerificationReport> = [(4, 2), (5, 2), (6, 3), (7, 3)]
        .iter()
        .map(|&(n, m)| verify_johnson_aut(n, m).unwrap())
        .collect();
    reports.push(VerificationReport::timed_out(9, 4, 1, 60_000));
    let value = serde_json::to_value(&reports).unwrap();
    let valid = validator.is_valid(&value);
    let mut broken = value.clone();
    broken[0]["aut_order"] = serde_json::json!(48.0);
    let rejects = !validator.is_valid(&broken);
    ok &= valid && rejects;
    outcome(
        ok,
        format!(
            "{} corpus graphs byte-exact, {} reports valid {valid}, float order rejected {rejects}",
            known.len(),
            reports.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("order n!, n != 2m", c01_order_unequal),
        ("order 2 n!, n = 2m", c02_order_equal),
        ("complementation outside and central", c03_complementation),
        ("triangular graphs and line graphs of K_n", c04_triangular),
        ("line graph of K4 exception", c05_whitney_exception),
        ("neighborhood isomorphism", c06_neighborhood_iso),
        ("unique intersection, every pair", c07_unique_intersection),
        ("local reconstruction", c08_reconstruction),
        ("distance by intersection", c09_distance_law),
        ("search against brute force", c10_oracle),
        ("transitivity", c11_transitivity),
        ("stabilizer orders", c12_stabilizer),
        ("graph6 corpus and schema", c13_formats_and_schema),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name} [{} ms]: {}",
            i + 1,
            start.elapsed().as_millis(),
            result.detail
        );
        if !result.ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 13 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
