//! Acceptance criteria 1-9. Each test prints one `PASS`/`FAIL` line.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rydhubo_core::estimate::{binomial, complete_hypergraph};
use rydhubo_core::expand::ATOM_BOUND_CONSTANT;
use rydhubo_core::sim::{ground_state, sweep_graph, EigenOptions, Hamiltonian, RydbergParams, Schedule};
use rydhubo_core::{
    compile, effective_polynomial, emit_negative_hyperedge, emit_positive_hyperedge, energy_profile, estimate_atoms,
    expand_superatom, lower, max_weight_independent_sets, parse_hubo, verify_equivalence, verify_expansion, Assignment, AtomSet,
    CompileOptions, ExpansionSpec, Gadget, GadgetKind, Mode, PairRule, Polynomial, PolynomialBuilder, Var, VerifyOptions,
};

const FIG1_LIMIT: Duration = Duration::from_secs(1);
const FACT6_LIMIT: Duration = Duration::from_secs(1);
const SIERPINSKI_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const DIAGONAL_LIMIT: Duration = Duration::from_secs(300);
const ADIABATIC_LIMIT: Duration = Duration::from_secs(600);
const EXPANSION_LIMIT: Duration = Duration::from_secs(120);
const ESTIMATE_LIMIT: Duration = Duration::from_secs(10);

const SWEEP_INSTANCES: usize = 200;
const SWEEP_SEED: u64 = 0x5eed;
const DIAGONAL_INSTANCES: usize = 25;
const DIAGONAL_ATOM_LIMIT: usize = 14;
const DIAGONAL_DETUNING: f64 = 1.5;
const DIAGONAL_REL_TOL: f64 = 1e-10;
const ADIABATIC_BASE_DURATION: f64 = 10.0;
const ADIABATIC_LADDER: [f64; 4] = [1.0, 2.0, 4.0, 8.0];
const ADIABATIC_STEPS_PER_UNIT: f64 = 20.0;
const ADIABATIC_TARGET: f64 = 0.9;
const ESTIMATE_REL_TOL: f64 = 0.1;

fn report(n: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n}: {verdict} {detail}");
}

fn fixture(name: &str) -> Polynomial {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../rydhubo/examples").join(name);
    parse_hubo(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn bits(s: &str) -> Assignment {
    Assignment(s.bytes().map(|b| b == b'1').collect())
}

fn opts(mode: Mode, pair_rule: PairRule) -> CompileOptions {
    CompileOptions {
        mode,
        pair_rule,
        expansion: None,
    }
}

/// Instance stream: `N <= 5`, order `<= 4`, coefficients in `[-5, 5] \ {0}`.
fn instances(count: usize) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=5usize);
            let mut b = PolynomialBuilder::new();
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            for name in &names {
                b.var(name).unwrap();
            }
            for _ in 0..rng.gen_range(1..=6) {
                let mask = loop {
                    let m = rng.gen_range(1u32..1 << n);
                    if m.count_ones() <= 4 {
                        break m;
                    }
                };
                let c = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5][rng.gen_range(0..10)];
                let vars: Vec<&str> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| names[i].as_str()).collect();
                b.add_term(c, &vars).unwrap();
            }
            b.build()
        })
        .collect()
}

#[test]
fn criterion_1_fig1() {
    let start = Instant::now();
    let p = fixture("fig1.hubo");
    let cg = compile(&p, &CompileOptions::default()).unwrap();
    let cert = verify_equivalence(&p, &cg, &VerifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let unique: BTreeSet<Assignment> = [bits("1010")].into_iter().collect();
    let pass = cert.equivalent && cert.graph_projections == unique && elapsed < FIG1_LIMIT;
    let found: Vec<String> = cert.graph_projections.iter().map(|a| a.to_string()).collect();
    report(
        1,
        pass,
        &format!("equivalent={} projections={found:?} in {elapsed:?}", cert.equivalent),
    );
    assert!(pass);
}

#[test]
fn criterion_2_factorization() {
    let start = Instant::now();
    let p = fixture("fact6.hubo");
    let plan = lower(&p, PairRule::LastTwo);
    let cg = compile(&p, &opts(Mode::LocalAddressing, PairRule::LastTwo)).unwrap();
    let cert = verify_equivalence(&p, &cg, &VerifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let name = |v: &Var| p.name(*v).to_string();
    let mut gadgets: Vec<(GadgetKind, Vec<String>, i64)> = plan
        .gadgets
        .iter()
        .map(|g| (g.kind, g.ports.iter().map(name).collect(), g.weight))
        .collect();
    gadgets.sort();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut expected = vec![
        (GadgetKind::NegHyperedge, s(&["P1", "Q1"]), 16),
        (GadgetKind::NegHyperedge, s(&["P1", "Q0"]), 16),
        (GadgetKind::PosHyperedge, s(&["Q1", "Q0"]), 4),
        (GadgetKind::PosHyperedge, s(&["P1", "Q1", "Q0"]), 32),
    ];
    expected.sort();
    let ground: BTreeSet<Assignment> = [bits("110")].into_iter().collect();
    let weights_ok = p.names() == ["P1", "Q1", "Q0"] && plan.data_weights == [32, 36, 27] && gadgets == expected;
    let pass = weights_ok && cert.equivalent && cert.graph_projections == ground && elapsed < FACT6_LIMIT;
    let found: Vec<String> = cert.graph_projections.iter().map(|a| a.to_string()).collect();
    report(
        2,
        pass,
        &format!(
            "data {:?} gadgets {} ground {found:?} in {elapsed:?}",
            plan.data_weights,
            gadgets.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_sierpinski() {
    let start = Instant::now();
    let p = fixture("sierpinski1.hubo");
    let cg = compile(&p, &opts(Mode::LocalAddressing, PairRule::FirstTwo)).unwrap();
    let mut weights: Vec<(GadgetKind, usize, i64)> = cg.plan.gadgets.iter().map(|g| (g.kind, g.order(), g.weight)).collect();
    weights.sort();
    let expected = [
        (GadgetKind::PosHyperedge, 2, 2),
        (GadgetKind::NegHyperedge, 2, 2),
        (GadgetKind::NegHyperedge, 2, 2),
        (GadgetKind::NegHyperedge, 3, 4),
    ];
    let cert = verify_equivalence(&p, &cg, &VerifyOptions::default()).unwrap();
    let odd: BTreeSet<Assignment> = ["100", "010", "001", "111"].into_iter().map(bits).collect();
    let unit_ok = weights == expected && cg.plan.data_weights == [3, 3, 5] && cert.equivalent && cert.graph_projections == odd;

    let p6 = fixture("sierpinski6.hubo");
    let cg6 = compile(&p6, &opts(Mode::LocalAddressing, PairRule::FirstTwo)).unwrap();
    let cert6 = verify_equivalence(&p6, &cg6, &VerifyOptions::default()).unwrap();
    let triangles = rydhubo_core::sierpinski_gasket6();
    let parity_ok = !cert6.graph_projections.is_empty()
        && cert6.graph_projections.iter().all(|a| {
            triangles
                .iter()
                .all(|t| t.iter().filter(|n| a.get(p6.var_by_name(n).unwrap())).count() % 2 == 1)
        });
    let elapsed = start.elapsed();
    let pass = unit_ok && cert6.equivalent && parity_ok && elapsed < SIERPINSKI_LIMIT;
    report(
        3,
        pass,
        &format!(
            "unit weights {weights:?} data {:?}; gasket ground states {} in {elapsed:?}",
            cg.plan.data_weights,
            cert6.graph_projections.len()
        ),
    );
    assert!(pass);
}

fn gadget_table_ok(g: &Gadget, f: &rydhubo_core::Fragment) -> bool {
    let k = g.order();
    let aux = f.aux_atoms();
    let profile = energy_profile(f, true).unwrap();
    profile.entries.len() == 1 << k
        && profile.entries.iter().all(|e| {
            let bit = |i: usize| e.clamp >> i & 1 == 1;
            let free: Vec<usize> = match g.kind {
                GadgetKind::PosHyperedge => (0..k).filter(|&i| !bit(i)).map(|i| aux[i]).collect(),
                _ => (0..k - 2)
                    .filter(|&i| !bit(i))
                    .map(|i| aux[i])
                    .chain((!bit(k - 2) && !bit(k - 1)).then_some(aux[k - 2]))
                    .collect(),
            };
            let support: Vec<Vec<usize>> = e.optimal.as_ref().unwrap().iter().map(|s| s.to_vec()).collect();
            let expected: Vec<Vec<usize>> = if free.is_empty() {
                vec![vec![]]
            } else {
                free.iter().map(|&a| vec![a]).collect()
            };
            e.energy == g.closed_form_energy(e.clamp) && support == expected
        })
}

#[test]
fn criterion_4_gadget_tables() {
    let mut failures = Vec::new();
    for k in 2..=5u32 {
        let v: Vec<Var> = (0..k).map(Var).collect();
        let (g, f) = emit_positive_hyperedge(&v, 1).unwrap();
        if !gadget_table_ok(&g, &f) {
            failures.push(format!("pos{k}"));
        }
        let ku = k as usize;
        let (g, f) = emit_negative_hyperedge(&v[..ku - 2], (v[ku - 2], v[ku - 1]), 1).unwrap();
        if !gadget_table_ok(&g, &f) {
            failures.push(format!("neg{k}"));
        }
    }
    let pass = failures.is_empty();
    report(4, pass, &format!("8 tables, mismatches {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_5_soundness_sweep() {
    let start = Instant::now();
    let mut failures = 0;
    for p in instances(SWEEP_INSTANCES) {
        for mode in [Mode::LocalAddressing, Mode::Duplication] {
            let cg = compile(&p, &opts(mode, PairRule::LastTwo)).unwrap();
            let exact = effective_polynomial(&cg).unwrap() == p.clone().with_constant(cg.constant_shift);
            let cert = verify_equivalence(&p, &cg, &VerifyOptions::default()).unwrap();
            if !(exact && cert.equivalent) {
                failures += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures == 0 && elapsed < SWEEP_LIMIT;
    report(
        5,
        pass,
        &format!("{SWEEP_INSTANCES} instances x 2 modes, {failures} failures in {elapsed:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_6_diagonal_limit() {
    let start = Instant::now();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for p in instances(SWEEP_INSTANCES) {
        if checked == DIAGONAL_INSTANCES {
            break;
        }
        let cg = compile(&p, &CompileOptions::default()).unwrap();
        let g = &cg.graph;
        if g.num_atoms() > DIAGONAL_ATOM_LIMIT {
            continue;
        }
        checked += 1;
        let h = Hamiltonian::new(g, &RydbergParams::for_graph(g, 0.0, DIAGONAL_DETUNING)).unwrap();
        let n = g.num_atoms();
        let independent_min = (0..h.dim())
            .filter(|&s| g.is_independent(&AtomSet::from_ids(n, (0..n).filter(|i| s >> i & 1 == 1))))
            .map(|s| h.diagonal(s))
            .fold(f64::INFINITY, f64::min);
        let spectral = ground_state(&h, &EigenOptions::default()).unwrap().energy;
        let target = -DIAGONAL_DETUNING * max_weight_independent_sets(g).unwrap().weight as f64;
        let scale = target.abs().max(1.0);
        worst = worst
            .max((independent_min - target).abs() / scale)
            .max((spectral - target).abs() / scale);
    }
    let elapsed = start.elapsed();
    let pass = checked == DIAGONAL_INSTANCES && worst <= DIAGONAL_REL_TOL && elapsed < DIAGONAL_LIMIT;
    report(
        6,
        pass,
        &format!("{checked} instances, worst relative error {worst:.1e} in {elapsed:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_7_adiabatic() {
    let start = Instant::now();
    let p = fixture("fig1.hubo");
    let cg = compile(&p, &CompileOptions::default()).unwrap();
    let targets = p.brute_force_minima().unwrap().argmin;
    let mut ladder = Vec::new();
    for factor in ADIABATIC_LADDER {
        let duration = ADIABATIC_BASE_DURATION * factor;
        let schedule = Schedule::default_sweep(duration).unwrap();
        let params = RydbergParams::for_graph(&cg.graph, 1.0, schedule.delta_at(duration));
        let steps = (duration * ADIABATIC_STEPS_PER_UNIT) as usize;
        let r = sweep_graph(&cg.graph, &cg.var_to_atom, &params, &schedule, steps, &targets).unwrap();
        ladder.push(r.success_probability);
    }
    let elapsed = start.elapsed();
    let monotone = ladder.windows(2).all(|w| w[1] >= w[0]);
    let pass = cg.graph.num_atoms() == 10 && monotone && ladder[3] > ADIABATIC_TARGET && elapsed < ADIABATIC_LIMIT;
    let shown: Vec<String> = ladder.iter().map(|x| format!("{x:.4}")).collect();
    report(7, pass, &format!("success ladder [{}] in {elapsed:?}", shown.join(", ")));
    assert!(pass);
}

#[test]
fn criterion_8_expansion() {
    let start = Instant::now();
    let mut ok = true;
    let mut sizes = Vec::new();
    for k in [4u32, 5] {
        let v: Vec<Var> = (0..k).map(Var).collect();
        let ku = k as usize;
        let gadgets = [
            emit_positive_hyperedge(&v, 1).unwrap().0,
            emit_negative_hyperedge(&v[..ku - 2], (v[ku - 2], v[ku - 1]), 1).unwrap().0,
        ];
        for g in gadgets {
            let e = expand_superatom(&g, &ExpansionSpec::new(2)).unwrap();
            let check = verify_expansion(&g, &e.fragment).unwrap();
            ok &= check.equivalent && check.diff.len() == 1 << k && e.aux_atoms() <= ATOM_BOUND_CONSTANT * ku * ku;
            sizes.push(e.aux_atoms());
        }
    }
    let p = parse_hubo("0 a b c d\n+3 a b c d\n-2 a b\n-1 c\n+1 d").unwrap();
    let expanded = CompileOptions {
        expansion: Some(ExpansionSpec::new(2)),
        ..CompileOptions::default()
    };
    let cg = compile(&p, &expanded).unwrap();
    let cert = verify_equivalence(&p, &cg, &VerifyOptions::default()).unwrap();
    ok &= cert.equivalent && cert.energy_identity && cg.graph.max_clique_size() <= 2;
    let elapsed = start.elapsed();
    let pass = ok && elapsed < EXPANSION_LIMIT;
    report(
        8,
        pass,
        &format!(
            "aux atoms {sizes:?} (bound c = {ATOM_BOUND_CONSTANT}), K=4 end-to-end equivalent={} in {elapsed:?}",
            cert.equivalent
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_scaling() {
    let start = Instant::now();
    let total = |n: usize, k: usize| {
        estimate_atoms(
            n,
            &complete_hypergraph(n, k, GadgetKind::PosHyperedge, 1),
            Mode::LocalAddressing,
        )
        .total() as f64
    };
    let mut ratios = Vec::new();
    let mut ok = total(32, 3) as u64 == 32 + 3 * binomial(32, 3);
    for k in [2usize, 3] {
        let ratio = total(64, k) / total(32, k);
        let target = (1u64 << k) as f64;
        ok &= (ratio - target).abs() / target <= ESTIMATE_REL_TOL;
        ratios.push(ratio);
    }
    let elapsed = start.elapsed();
    let pass = ok && elapsed < ESTIMATE_LIMIT;
    report(9, pass, &format!("ratios N=32->64 {ratios:.3?} in {elapsed:?}"));
    assert!(pass);
}
