//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use modpoints::blowup::{self, ChartName};
use modpoints::cohomology::{self, kirwan, BettiTable, TruncatedSeries};
use modpoints::forms_git::{self, Stability};
use modpoints::fqspace::{self, FqVector, OrthogonalGroup};
use modpoints::picard::{self, SpaceId};
use modpoints::polyalg::{discriminant_quartic, int, rat, resultant, MultiPoly};

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

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.ok = false;
    }
    o.detail = format!(
        "{} [{:.3}s, limit {}s]",
        o.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    o
}

fn stability_table() -> Outcome {
    timed(Duration::from_secs(1), || {
        let t = forms_git::stability_table(8).expect("degree 8");
        let rule = t.iter().all(|(c, v)| {
            let (stable, semistable) = common::hilbert_mumford_oracle(c.parts());
            let m = c.max_multiplicity();
            (v.stability == Stability::Stable) == (m < 4)
                && (v.stability != Stability::Unstable) == (m < 5)
                && (v.stability == Stability::Stable) == stable
                && (v.stability != Stability::Unstable) == semistable
        });
        let strictly_poly: Vec<String> = t
            .iter()
            .filter(|(_, v)| v.polystable && v.stability != Stability::Stable)
            .map(|(c, _)| c.to_string())
            .collect();
        outcome(
            rule && t.len() == 22 && strictly_poly == ["(4,4)"],
            format!(
                "{} types, strictly semistable polystable {:?}",
                t.len(),
                strictly_poly
            ),
        )
    })
}

fn luna_slice() -> Outcome {
    let s = forms_git::luna_slice_basis(8).expect("degree 8");
    let mut w = s.weights();
    w.sort_unstable();
    let tangent: BTreeSet<i32> = s.orbit_tangent_weights.iter().copied().collect();
    outcome(
        s.dimension() == 6 && w == [-8, -6, -4, 4, 6, 8] && tangent == BTreeSet::from([-2, 0, 2]),
        format!("weights {w:?}, tangent {tangent:?}"),
    )
}

fn chart_transversality() -> Outcome {
    timed(Duration::from_secs(1), || {
        let (u0, u1) = (MultiPoly::var("u0"), MultiPoly::var("u1"));
        let mut ok = true;
        let mut detail = Vec::new();
        for name in ChartName::ALL {
            let r = blowup::discriminant_pullback(&blowup::chart(name)).expect("chart");
            let along = !r.repeated_factors.is_empty()
                && r.repeated_factors.iter().all(|f| *f == u0 || *f == u1);
            let shape = match name {
                ChartName::R => {
                    let f = &r.factors[0].restriction;
                    f.is_constant() && !f.is_zero()
                }
                _ => r.factors.iter().all(|f| f.meets_exceptional),
            };
            ok &= r.multiplicity == 6 && !r.squarefree && along && shape;
            detail.push(format!(
                "{name}: mult {} restriction {}",
                r.multiplicity, r.restriction
            ));
        }
        outcome(ok, detail.join("; "))
    })
}

fn discriminant_oracle() -> Outcome {
    let disc = discriminant_quartic(
        &MultiPoly::var("a"),
        &MultiPoly::var("b"),
        &MultiPoly::var("c"),
    );
    let mut runner = TestRunner::deterministic();
    let triples = (-50i64..=50, -50i64..=50, -50i64..=50);
    let mut agree = 0;
    let trials = 32;
    for _ in 0..trials {
        let (a, b, c) = triples.new_tree(&mut runner).expect("strategy").current();
        let v = disc
            .evaluate_var("a", &int(a))
            .evaluate_var("b", &int(b))
            .evaluate_var("c", &int(c));
        let oracle = common::quartic_discriminant_oracle(a as i128, b as i128, c as i128);
        if v == MultiPoly::int(oracle as i64) {
            agree += 1;
        }
    }
    let x = MultiPoly::var("x");
    let (a, b, c) = (
        MultiPoly::var("a"),
        MultiPoly::var("b"),
        MultiPoly::var("c"),
    );
    let f = x.pow(4).unwrap() + &a * &x.pow(2).unwrap() + &b * &x + c.clone();
    let symbolic = resultant(&f, &f.partial_derivative("x").unwrap(), "x") == disc;
    outcome(
        agree == trials && symbolic,
        format!("{agree}/{trials} random triples agree, symbolic identity {symbolic}"),
    )
}

fn stabilizer_scan() -> Outcome {
    timed(Duration::from_secs(1), || {
        let s = blowup::scan_stabilizers();
        let expected = BTreeSet::from([1, 2, 4]);
        outcome(
            s.orders == expected && !s.lcm.is_multiple_of(5),
            format!(
                "orders {:?} (expected {:?}), lcm {}",
                s.orders, expected, s.lcm
            ),
        )
    })
}

fn f2_census() -> Outcome {
    timed(Duration::from_secs(30), || {
        let c = fqspace::census();
        let perps: BTreeSet<(usize, usize)> = fqspace::isotropic_vectors()
            .into_iter()
            .map(|h| {
                let p = fqspace::perp_census(h).unwrap();
                (p.isotropic, p.nonisotropic)
            })
            .collect();
        let g = OrthogonalGroup::generate().expect("closure");
        let h = FqVector::new(0x20).unwrap();
        let o = g.stab_orbits_on_perp(h).unwrap();
        outcome(
            (c.zero, c.isotropic, c.nonisotropic) == (1, 35, 28)
                && perps == BTreeSet::from([(19, 12)])
                && g.order() == 40320
                && o.stab_order == 1152
                && o.nonisotropic == [12],
            format!(
                "census ({},{},{}), perps {perps:?}, |O| {}, |Stab(h)| {}, orbits on non-isotropic perp {:?}",
                c.zero, c.isotropic, c.nonisotropic, g.order(), o.stab_order, o.nonisotropic
            ),
        )
    })
}

fn kirwan_series() -> Outcome {
    let k = kirwan::kirwan_betti_m_k().expect("kirwan");
    outcome(
        k.semistable == TruncatedSeries::new(&[1, 0, 1, 0, 2], 6)
            && k.main == TruncatedSeries::new(&[0, 0, 1, 0, 1], 6)
            && k.extra_min_degree == 6
            && k.betti.even() == [1, 2, 3, 3, 2, 1],
        format!(
            "semistable {}, main {}, extra from degree {}, table {:?}",
            k.semistable,
            k.main,
            k.extra_min_degree,
            k.betti.even()
        ),
    )
}

fn decomposition() -> Outcome {
    let ord = cohomology::tor_betti_ordered().expect("ordered");
    let unord = cohomology::tor_betti_unordered().expect("unordered");
    let boundary = cohomology::unordered_fiber();
    let oracle = BettiTable::new(&common::sym_square_orbit_count(&[1, 1, 1]));
    outcome(
        ord.even() == [1, 43, 99, 99, 43, 1]
            && unord.even() == [1, 2, 3, 3, 2, 1]
            && boundary.even() == [1, 1, 2, 1, 1]
            && boundary == oracle,
        format!(
            "ordered {:?}, unordered {:?}, boundary {:?}",
            ord.even(),
            unord.even(),
            boundary.even()
        ),
    )
}

fn picard_ledger() -> Outcome {
    let ids = picard::verify_blowup_identities().expect("ledger");
    let failing: Vec<&str> = ids.iter().filter(|i| !i.holds).map(|i| i.name).collect();
    let nb = picard::normal_bundle_boundary();
    let s = picard::top_self_intersections(cohomology::ORDERED_CUSPS, 40320);
    let e: Vec<u64> = blowup::scan_stabilizers()
        .e_candidates()
        .into_iter()
        .map(u64::from)
        .collect();
    let cert = picard::k_equivalence_obstruction(&s.unordered, 7, 5, &e);
    let disc = [
        picard::discrepancy(&int(5), &int(6), &rat(3, 4)),
        picard::discrepancy(&int(5), &int(6), &int(0)),
        picard::discrepancy(&int(2), &int(6), &rat(1, 2)),
    ];
    let ledger_disc = (
        picard::unordered_discrepancy().ok().flatten(),
        picard::ordered_discrepancy().ok().flatten(),
    );
    let ok = failing.is_empty()
        && nb.bidegree == (int(-1), int(-1))
        && (s.component.clone(), s.ordered.clone(), s.unordered.clone())
            == (int(6), int(210), rat(1, 192))
        && cert.obstructed
        && cert.required_delta_fifth == rat(16807, 600000)
        && disc == [rat(1, 2), int(5), int(-1)]
        && ledger_disc == (Some(rat(1, 2)), Some(int(-1)))
        && picard::canonical(SpaceId::BbOrd).to_string() == "-8*L_ord";
    outcome(
        ok,
        format!(
            "{} identities ({} failing), N = ({},{}), T_i^5 {} T_ord^5 {} T^5 {}, Delta^5 {} for e in {:?}, discrepancies {} {} {}",
            ids.len(),
            failing.len(),
            nb.bidegree.0,
            nb.bidegree.1,
            s.component,
            s.ordered,
            s.unordered,
            cert.required_delta_fifth,
            e,
            disc[0],
            disc[1],
            disc[2]
        ),
    )
}

fn cross_module() -> Outcome {
    let mults: Vec<u32> = ChartName::ALL
        .iter()
        .map(|&n| {
            blowup::discriminant_pullback(&blowup::chart(n))
                .unwrap()
                .multiplicity
        })
        .collect();
    let coeff = picard::exceptional_pullback_coefficient();
    let k = kirwan::kirwan_betti_m_k().unwrap().betti;
    let d = cohomology::tor_betti_unordered().unwrap();
    outcome(
        mults.iter().all(|&m| int(m as i64) == coeff) && k == d,
        format!(
            "multiplicities {mults:?} vs coefficient {coeff}; kirwan {:?} vs decomposition {:?}",
            k.even(),
            d.even()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("stability table", stability_table),
        ("luna slice", luna_slice),
        ("chart transversality", chart_transversality),
        ("discriminant oracle", discriminant_oracle),
        ("stabilizer scan", stabilizer_scan),
        ("F2 census", f2_census),
        ("kirwan series", kirwan_series),
        ("decomposition assembly", decomposition),
        ("picard ledger", picard_ledger),
        ("cross-module consistency", cross_module),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} {:>2}. {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
