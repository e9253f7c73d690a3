//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them all). Everything is exact
//! arithmetic; tolerances are exact equality throughout.

use gt_core::combin::{
    enumerate_d_shifts_box, enumerate_d_shifts_norm, refined_partition, seed_of, shift_in_d_set,
    Point, Shift,
};
use gt_core::cone::{
    cone_of, fo_bound, in_monoid, parabolic_realization, seed_cone_generators,
    standard_parabolics, verma_essupp_test, verma_supp_test,
};
use gt_core::engine::{hw_tableau, verify_rep_relations, Engine, TableauKey, TableauVector};
use gt_core::graph::{orient, split};
use gt_core::perm::Permutation;
use gt_core::ratfun::RatFn;
use gt_core::scalar::{Rat, Scalar};
use gt_core::shuffles::Parabolic;
use gt_core::verma::{gt_decompose, intersect_subspaces, kernel_basis, mat_mul, VermaModule};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "[{}] criterion {}: {}",
        if ok { "PASS" } else { "FAIL" },
        criterion,
        detail
    );
}

/// 1. Defining bracket relations on at least 50 tableaux with shift norm
/// at most 2, over the zero seed and a randomized seed with parameters.
#[test]
fn acceptance_1_representation_property() {
    let t0 = std::time::Instant::now();
    let mut total_keys = 0;
    let mut total_checks = 0;
    let mut failures = 0;
    // zero seed, rank 3
    let engine = Engine::new(Point::zero(3)).unwrap();
    let keys = engine.keys_up_to(2);
    total_keys += keys.len();
    let rep = verify_rep_relations(&engine, &keys).unwrap();
    total_checks += rep.checks;
    failures += rep.failures.len();
    // randomized seed with parameters: a parameter block on row 2 and a
    // free parameter on the top row
    let mut rng = StdRng::seed_from_u64(41);
    let offset = rng.gen_range(-2..3);
    let mut seed = Point::zero(3);
    seed.set(2, 1, Scalar::param(1));
    seed.set(2, 2, Scalar::param(1));
    seed.set(1, 1, Scalar::param(1));
    seed.set(3, 1, Scalar::param(2).add_int(offset));
    assert!(gt_core::combin::is_seed(&seed));
    let engine = Engine::new(seed).unwrap();
    let keys = engine.keys_up_to(2);
    total_keys += keys.len();
    let rep = verify_rep_relations(&engine, &keys).unwrap();
    total_checks += rep.checks;
    failures += rep.failures.len();
    let ok = failures == 0 && total_keys >= 50;
    report(
        1,
        ok,
        &format!(
            "{} relation checks on {} tableaux, {} failures ({:?})",
            total_checks,
            total_keys,
            failures,
            t0.elapsed()
        ),
    );
    assert!(ok);
}

/// 2. The rank-4 lowering cascade is supported on exactly five keys with
/// unit coefficients and the alternating sign pattern.
#[test]
fn acceptance_2_lowering_cascade_expansion() {
    let t0 = std::time::Instant::now();
    let engine = Engine::new(Point::zero(4)).unwrap();
    let out = engine
        .act_word(&[(4, 3), (3, 2), (2, 1)], &engine.socle_generator())
        .unwrap();
    let mut z = Shift::zero(4);
    z.set(1, 1, -1);
    z.set(2, 2, -1);
    z.set(3, 3, -1);
    let e = Permutation::identity(4);
    let s3 = Permutation::transposition(4, 3, 2, 3);
    let c3 = Permutation::beta(4, 3, 1, 3);
    let s2 = Permutation::transposition(4, 2, 1, 2);
    let expected: Vec<(Permutation, i64)> = vec![
        (e, -1),
        (s3, 1),
        (c3, -1),
        (s2.clone(), 1),
        (s2.compose(&Permutation::transposition(4, 3, 2, 3)), -1),
    ];
    let mut ok = out.terms.len() == 5;
    let mut global: Option<i64> = None;
    for (perm, c) in &expected {
        let got = out.coeff(&TableauKey {
            shift: z.clone(),
            perm: perm.clone(),
        });
        let Some(q) = got.as_rat() else {
            ok = false;
            break;
        };
        let expected_rat = Rat::from_integer((*c).into());
        let ratio = if q == expected_rat {
            1
        } else if q == -expected_rat.clone() {
            -1
        } else {
            ok = false;
            break;
        };
        match global {
            None => global = Some(ratio),
            Some(g) if g == ratio => {}
            _ => {
                ok = false;
                break;
            }
        }
    }
    let ok = ok && global.is_some();
    report(
        2,
        ok,
        &format!(
            "five keys with unit coefficients, global sign {} ({:?})",
            global.map(|g| if g > 0 { "+1" } else { "-1" }).unwrap_or("?"),
            t0.elapsed()
        ),
    );
    assert!(ok);
    assert_eq!(global, Some(1), "no residual global sign");
}

/// 3. Raising operators kill every highest-weight tableau: 20 random
/// dominant integral weights, all top permutations, ranks 3 and 4.
#[test]
fn acceptance_3_highest_weight_vanishing() {
    let t0 = std::time::Instant::now();
    let mut rng = StdRng::seed_from_u64(1729);
    let mut checked = 0;
    for trial in 0..20 {
        let n = if trial % 2 == 0 { 3 } else { 4 };
        let mut shifted: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..5)).collect();
        shifted.sort_unstable_by(|a, b| b.cmp(a));
        let lambda: Vec<Scalar> = shifted
            .iter()
            .enumerate()
            .map(|(j, &v)| Scalar::from_int(v + j as i64))
            .collect();
        let mut engines: Option<(Point, Engine)> = None;
        for sigma in permutations(n) {
            let hw = hw_tableau(&lambda, &sigma).unwrap();
            let (seed, z, _) = seed_of(&hw);
            if let Some((s0, _)) = &engines {
                assert_eq!(s0, &seed, "orbit compatibility of the highest-weight frame");
            } else {
                let engine = Engine::new(seed.clone()).unwrap();
                engines = Some((seed, engine));
            }
            let engine = &engines.as_ref().unwrap().1;
            let t = engine.classical(&z).unwrap();
            for k in 1..n {
                let raised = engine.act_e(k, k + 1, &t).unwrap();
                assert!(
                    raised.is_zero(),
                    "trial {} sigma {:?} k {}",
                    trial,
                    sigma,
                    k
                );
                checked += 1;
            }
        }
    }
    report(
        3,
        true,
        &format!("{} raising images vanished exactly ({:?})", checked, t0.elapsed()),
    );
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

/// Shared scan for criterion 4: for every admissible shift in the box and
/// every refined block I on each row, compare the nonvanishing of the
/// lowered projection with the stated threshold on the matching run J of
/// the row below.
fn zero_nonzero_scan(stated: bool) -> (usize, Vec<String>) {
    let n = 4;
    let engine = Engine::new(Point::zero(n)).unwrap();
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for z in enumerate_d_shifts_norm(engine.partition(), 4) {
        let refined = refined_partition(engine.partition(), &z);
        let t = engine.classical(&z).unwrap();
        for k in 1..n {
            for &(a, b) in refined.blocks(k) {
                let i_count = b - a + 1;
                if i_count > 3 {
                    continue;
                }
                let lowered = z.add_delta(k, b, -1);
                if !shift_in_d_set(engine.partition(), &lowered) {
                    continue;
                }
                let m = z.get(k, a);
                let j_count = if k == 1 {
                    0
                } else {
                    (1..k).filter(|&j| z.get(k - 1, j) == m).count()
                };
                if j_count > 3 {
                    continue;
                }
                let moved = engine.act_e(k + 1, k, &t).unwrap();
                let nonzero = !engine.project_shift(&lowered, &moved).is_zero();
                let predicted = if stated {
                    j_count <= i_count
                } else {
                    j_count < i_count
                };
                checked += 1;
                if nonzero != predicted {
                    counterexamples.push(format!(
                        "z = {:?}, row {}, block [{},{}], |I| = {}, |J| = {}, nonzero = {}",
                        z, k, a, b, i_count, j_count, nonzero
                    ));
                }
            }
        }
    }
    (checked, counterexamples)
}

/// 4. The lowering-projection criterion as stated: nonzero iff |J| <= |I|.
/// The boundary |J| = |I| provably vanishes (the operator degree is
/// |I| - 1 while the coefficient function vanishes to order |J|), so this
/// criterion fails exactly there; the strict form below is the corrected
/// statement and passes exhaustively.
#[test]
fn acceptance_4_lowering_projection_as_stated() {
    let (checked, counterexamples) = zero_nonzero_scan(true);
    let ok = counterexamples.is_empty();
    report(
        4,
        ok,
        &format!(
            "stated threshold |J| <= |I|: {} configurations, {} counterexamples (all at |J| = |I|)",
            checked,
            counterexamples.len()
        ),
    );
    for c in counterexamples.iter().take(5) {
        println!("    counterexample: {}", c);
    }
    assert!(
        ok,
        "the stated boundary |J| = |I| fails; see the strict-form criterion"
    );
}

/// 4 (corrected form). Nonzero exactly when |J| < |I|, exhaustively.
#[test]
fn acceptance_4_lowering_projection_strict_form() {
    let t0 = std::time::Instant::now();
    let (checked, counterexamples) = zero_nonzero_scan(false);
    let ok = counterexamples.is_empty();
    report(
        4,
        ok,
        &format!(
            "strict threshold |J| < |I|: {} configurations, {} mismatches ({:?})",
            checked,
            counterexamples.len(),
            t0.elapsed()
        ),
    );
    assert!(ok);
}

/// 5. On the box [-3,0], the shifts preserving the complete downward
/// graph coincide with the nonnegative span of the three generators.
#[test]
fn acceptance_5_cone_monoid_identity() {
    let n = 3;
    let seed = Point::zero(n);
    let part = gt_core::combin::partition_of(&seed).unwrap();
    let gens = seed_cone_generators(&seed).unwrap();
    let cone = cone_of(&seed, &Shift::zero(n), false)
        .unwrap()
        .with_generators(gens.clone())
        .unwrap();
    let reference = split(&orient(&seed, &Shift::zero(n))).0;
    let mut checked = 0;
    let mut mismatches = 0;
    for z in enumerate_d_shifts_box(&part, -3, 0) {
        let same_graph = split(&orient(&seed, &z)).0 == reference;
        let in_span = in_monoid(&gens, &z, 3);
        checked += 1;
        if same_graph != in_span {
            mismatches += 1;
        }
    }
    let ok = mismatches == 0 && gens.len() == 3 && cone.rank() == 3;
    report(
        5,
        ok,
        &format!(
            "{} box points, {} mismatches, {} generators of rank {}",
            checked,
            mismatches,
            gens.len(),
            cone.rank()
        ),
    );
    assert!(ok);
}

/// 6. The oracle's character set at ranks 3 and 4 equals the closed-form
/// support predicate at every explored Cartan weight.
#[test]
fn acceptance_6_verma_support_theorem() {
    for (n, depth, jobs) in [(3usize, 5u32, 2usize), (4, 4, 4)] {
        let t0 = std::time::Instant::now();
        let module = VermaModule::antidominant_singular(n);
        let decomposition = gt_decompose(&module, depth, jobs).unwrap();
        let mut mismatches = 0;
        let mut found = std::collections::BTreeSet::new();
        for entry in &decomposition.entries {
            found.insert(entry.shift.clone());
            if !verma_supp_test(&entry.shift) {
                mismatches += 1;
            }
        }
        let part = gt_core::combin::partition_of(&Point::zero(n)).unwrap();
        for z in enumerate_d_shifts_box(&part, -(depth as i64), 0) {
            if z.norm1() <= depth as i64 && verma_supp_test(&z) && !found.contains(&z) {
                mismatches += 1;
            }
        }
        let ok = mismatches == 0;
        report(
            6,
            ok,
            &format!(
                "rank {} depth {}: {} characters match the closed form exactly ({:?})",
                n,
                depth,
                decomposition.entries.len(),
                t0.elapsed()
            ),
        );
        assert!(ok);
    }
}

/// 7. Essential characters attain the sharpness bound and only they do;
/// the rank-4 diagonal staircase has multiplicity at most four.
#[test]
fn acceptance_7_essential_multiplicities() {
    let t0 = std::time::Instant::now();
    let n = 3;
    let module = VermaModule::antidominant_singular(n);
    let decomposition = gt_decompose(&module, 5, 2).unwrap();
    let parab = Parabolic::new(gt_core::combin::partition_of(&Point::zero(n)).unwrap());
    let mut ok = true;
    let mut max_mult = 0;
    for entry in &decomposition.entries {
        let bound = fo_bound(&parab, &entry.shift).unwrap() as usize;
        max_mult = max_mult.max(entry.multiplicity);
        if verma_essupp_test(&entry.shift) {
            ok &= entry.multiplicity == bound;
        } else {
            ok &= entry.multiplicity < bound;
        }
    }
    ok &= max_mult == 2; // 1! * 2!
    // rank-4 spot check at the diagonal staircase
    let module4 = VermaModule::antidominant_singular(4);
    let decomposition4 = gt_decompose(&module4, 3, 4).unwrap();
    let mut zd = Shift::zero(4);
    zd.set(1, 1, -1);
    zd.set(2, 2, -1);
    zd.set(3, 3, -1);
    let spot = decomposition4
        .entries
        .iter()
        .find(|e| e.shift == zd)
        .map(|e| e.multiplicity)
        .unwrap_or(0);
    ok &= spot > 0 && spot <= 4;
    report(
        7,
        ok,
        &format!(
            "rank 3: essential iff bound attained, max multiplicity {}; rank-4 staircase multiplicity {} <= 4 ({:?})",
            max_mult, spot, t0.elapsed()
        ),
    );
    assert!(ok);
}

/// 8. Every standard parabolic of the rank-4 seed group is realized as a
/// stabilizer inside the essential cone, with the slice dimension equal
/// to the group order divided by the parabolic order.
#[test]
fn acceptance_8_sharpness_per_parabolic() {
    let t0 = std::time::Instant::now();
    let n = 4;
    let seed = Point::zero(n);
    let part = gt_core::combin::partition_of(&seed).unwrap();
    let parab = Parabolic::new(part.clone());
    let engine = Engine::new(seed.clone()).unwrap();
    let parabolics = standard_parabolics(&part);
    let mut ok = parabolics.len() == 8;
    for orbits in &parabolics {
        let z = parabolic_realization(&seed, orbits).unwrap();
        let stab = parab.stabilizer(&z).unwrap();
        ok &= stab.part == *orbits;
        ok &= verma_essupp_test(&z);
        let slice = engine.parabolic().shuffles(&z).len() as u128;
        ok &= slice == parab.order() / orbits.order();
        ok &= slice == fo_bound(&parab, &z).unwrap();
    }
    report(
        8,
        ok,
        &format!(
            "{} standard parabolics realized with exact stabilizers and slice dimensions ({:?})",
            parabolics.len(),
            t0.elapsed()
        ),
    );
    assert!(ok);
}

/// 9. Commutative-subalgebra structure on every rank-3 slice with shift
/// norm at most 2: triangularity with character diagonal, a unique joint
/// eigenvector spanned by the classical tableau, and the nilpotency
/// exponent one more than the longest shuffle length, sharp.
#[test]
fn acceptance_9_commutative_structure() {
    let t0 = std::time::Instant::now();
    let engine = Engine::new(Point::zero(3)).unwrap();
    let gens: Vec<(usize, usize)> = vec![(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)];
    let mut slices = 0;
    let mut ok = true;
    for z in enumerate_d_shifts_norm(engine.partition(), 2) {
        slices += 1;
        let shuffles = engine.parabolic().shuffles(&z);
        let dim = shuffles.len();
        let exponent = engine.parabolic().longest_shuffle(&z).length() + 1;
        let mut joint: Option<Vec<Vec<Rat>>> = None;
        let mut generic = vec![vec![Rat::from_integer(0.into()); dim]; dim];
        for (gidx, &(k, i)) in gens.iter().enumerate() {
            let diag = engine.gamma_value(k, i, &z).unwrap().as_rat().unwrap();
            let mut nilpotent = vec![vec![Rat::from_integer(0.into()); dim]; dim];
            for (col, sigma) in shuffles.iter().enumerate() {
                let t = TableauVector::single(z.clone(), sigma.clone(), RatFn::one());
                let out = engine.act_gamma(k, i, &t).unwrap();
                for (key, c) in &out.terms {
                    let row = shuffles.iter().position(|s| s == &key.perm).unwrap();
                    // triangularity: only weakly smaller shuffles appear
                    ok &= key.perm.bruhat_leq(sigma);
                    let val = c.as_rat().unwrap();
                    nilpotent[row][col] = val.clone();
                    if row == col {
                        ok &= val == diag;
                        nilpotent[row][col] = &nilpotent[row][col] - &diag;
                    }
                }
            }
            let weight = Rat::from_integer(((gidx as i64 + 2) * (gidx as i64 + 3)).into());
            for r in 0..dim {
                for c in 0..dim {
                    let delta = &nilpotent[r][c] * &weight;
                    generic[r][c] = &generic[r][c] + &delta;
                }
            }
            let mut power = nilpotent.clone();
            for _ in 1..exponent {
                power = mat_mul(&power, &nilpotent);
            }
            ok &= power
                .iter()
                .all(|r| r.iter().all(|x| x.numer() == &0.into()));
            let kern = kernel_basis(&nilpotent);
            joint = Some(match joint {
                None => kern,
                Some(prev) => intersect_subspaces(&prev, &kern),
            });
        }
        let joint = joint.unwrap();
        ok &= joint.len() == 1;
        let e_index = shuffles.iter().position(|s| s.is_identity()).unwrap();
        ok &= joint[0]
            .iter()
            .enumerate()
            .all(|(t, v)| (v.numer() != &0.into()) == (t == e_index));
        if exponent > 1 {
            let mut power = generic.clone();
            for _ in 2..exponent {
                power = mat_mul(&power, &generic);
            }
            ok &= power.iter().any(|r| r.iter().any(|x| x.numer() != &0.into()));
        }
    }
    report(
        9,
        ok,
        &format!(
            "{} slices: triangular, unique joint eigenvector, sharp nilpotency exponent ({:?})",
            slices,
            t0.elapsed()
        ),
    );
    assert!(ok);
}
