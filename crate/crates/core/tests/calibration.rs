//! Pins the convention for colliding raising moves by checking each
//! candidate against the defining bracket relations and the pinned
//! lowering-cascade expansion.

use gt_core::combin::{Point, Shift};
use gt_core::engine::{verify_rep_relations, Engine, MergePolicy, TableauKey, TableauVector};
use gt_core::perm::Permutation;
use gt_core::ratfun::RatFn;

fn relations_ok(policy: MergePolicy, n: usize, bound: i64) -> (usize, usize) {
    let engine = Engine::with_policy(Point::zero(n), policy).unwrap();
    let keys = engine.keys_up_to(bound);
    let report = verify_rep_relations(&engine, &keys).unwrap();
    (report.checks, report.failures.len())
}

/// The rank-4 lowering cascade from the zero classical tableau must land
/// on five keys with unit coefficients and alternating signs.
fn cascade_ok(policy: MergePolicy) -> bool {
    let engine = Engine::with_policy(Point::zero(4), policy).unwrap();
    let t = engine.socle_generator();
    let out = engine
        .act_word(&[(4, 3), (3, 2), (2, 1)], &t)
        .unwrap();
    let mut z = Shift::zero(4);
    z.set(1, 1, -1);
    z.set(2, 2, -1);
    z.set(3, 3, -1);
    let e = Permutation::identity(4);
    let s3 = Permutation::transposition(4, 3, 2, 3);
    let c3 = Permutation::beta(4, 3, 1, 3);
    let s2 = Permutation::transposition(4, 2, 1, 2);
    let s2s3 = s2.compose(&s3);
    let expected = vec![
        (e, -1i64),
        (s3, 1),
        (c3, -1),
        (s2, 1),
        (s2s3, -1),
    ];
    if out.terms.len() != expected.len() {
        return false;
    }
    for (perm, c) in expected {
        let key = TableauKey {
            shift: z.clone(),
            perm,
        };
        if out.coeff(&key) != RatFn::from_int(c) {
            return false;
        }
    }
    true
}

#[test]
fn merge_policy_scan() {
    let mut winners = Vec::new();
    for policy in MergePolicy::all() {
        let (_, f2) = relations_ok(policy, 2, 3);
        if f2 > 0 {
            continue;
        }
        let (_, f3) = relations_ok(policy, 3, 2);
        if f3 > 0 || !cascade_ok(policy) {
            continue;
        }
        // rank-4 probe around the origin, where size-3 blocks and
        // size-2 collision runs appear
        let (_, f4) = relations_ok(policy, 4, 1);
        println!("policy {:?}: n=4 probe {} failed", policy, f4);
        if f4 == 0 {
            winners.push(policy);
        }
    }
    println!("winners: {:?}", winners);
    assert_eq!(winners.len(), 1, "a unique convention must survive");
    assert_eq!(winners[0], MergePolicy::CALIBRATED);
}

#[test]
fn default_engine_uses_the_calibrated_policy() {
    let engine = Engine::new(Point::zero(3)).unwrap();
    let keys = engine.keys_up_to(2);
    let report = verify_rep_relations(&engine, &keys).unwrap();
    assert!(report.ok(), "failures: {:?}", report.failures);
    let _ = TableauVector::zero();
}
