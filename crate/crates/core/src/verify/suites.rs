use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{CheckResult, Suite};
use crate::blowup::{self, ChartName};
use crate::cohomology::{self, kirwan, BettiTable, TruncatedSeries};
use crate::forms_git::{self, Stability};
use crate::fqspace::{self, FqVector, OrthogonalGroup};
use crate::picard::{self, SpaceId};
use crate::polyalg::{int, rat, MultiPoly};

fn series_payload(s: &TruncatedSeries) -> Value {
    json!({ "coeffs": s.coeffs(), "display": s.to_string() })
}

fn table_payload(t: &BettiTable) -> Value {
    json!(t.even())
}

pub struct StabilitySuite;

impl Suite for StabilitySuite {
    fn name(&self) -> &'static str {
        "stability"
    }

    fn run(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        match forms_git::stability_table(8) {
            Ok(table) => {
                // stable iff no 4 points coincide, semistable iff no 5 do
                let agrees = table.iter().all(|(c, v)| {
                    let m = c.max_multiplicity();
                    let expected = if m < 4 {
                        Stability::Stable
                    } else if m == 4 {
                        Stability::StrictlySemistable
                    } else {
                        Stability::Unstable
                    };
                    v.stability == expected
                });
                let rows: Vec<Value> = table
                    .iter()
                    .map(|(c, v)| {
                        json!({ "config": c.to_string(), "stability": v.stability, "polystable": v.polystable })
                    })
                    .collect();
                out.push(CheckResult::new(
                    "stability.table",
                    "section:preparation",
                    agrees && table.len() == 22,
                    json!(rows),
                ));
                let strictly: Vec<String> = table
                    .iter()
                    .filter(|(_, v)| v.polystable && v.stability != Stability::Stable)
                    .map(|(c, _)| c.to_string())
                    .collect();
                out.push(CheckResult::new(
                    "stability.polystable",
                    "lem:stabilizers",
                    strictly == ["(4,4)"],
                    json!(strictly),
                ));
            }
            Err(e) => out.push(CheckResult::error(
                "stability.table",
                "section:preparation",
                e,
            )),
        }
        match forms_git::polystable_stabilizer(8) {
            Ok(s) => out.push(CheckResult::new(
                "stability.stabilizer",
                "lem:stabilizers",
                s.identity_component == "C^*" && s.component_group_order == 2,
                json!(s),
            )),
            Err(e) => out.push(CheckResult::error(
                "stability.stabilizer",
                "lem:stabilizers",
                e,
            )),
        }
        let mut odd = Vec::new();
        let mut coincide = true;
        for n in (forms_git::MIN_DEGREE..=forms_git::MAX_DEGREE).filter(|n| n % 2 == 1) {
            let table = forms_git::stability_table(n).expect("supported degree");
            let strictly = table
                .iter()
                .filter(|(_, v)| v.stability == Stability::StrictlySemistable)
                .count();
            coincide &= strictly == 0;
            odd.push(json!({ "n": n, "types": table.len(), "strictly_semistable": strictly }));
        }
        out.push(CheckResult::new(
            "stability.odd_degrees",
            "sec:othercases",
            coincide,
            json!(odd),
        ));
        out
    }
}

pub struct FqSuite;

impl Suite for FqSuite {
    fn name(&self) -> &'static str {
        "fq"
    }

    fn run(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let c = fqspace::census();
        out.push(CheckResult::new(
            "fq.census",
            "section:preparation",
            (c.zero, c.isotropic, c.nonisotropic) == (1, 35, 28),
            json!([c.zero, c.isotropic, c.nonisotropic]),
        ));
        let perps: BTreeSet<(usize, usize)> = fqspace::isotropic_vectors()
            .into_iter()
            .map(|h| {
                let p = fqspace::perp_census(h).expect("isotropic vector");
                (p.isotropic, p.nonisotropic)
            })
            .collect();
        out.push(CheckResult::new(
            "fq.perp",
            "lem:finite_quadratic_form",
            perps.len() == 1 && perps.contains(&(19, 12)),
            json!(perps.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>()),
        ));
        let group = match OrthogonalGroup::generate() {
            Ok(g) => g,
            Err(e) => {
                out.push(CheckResult::error(
                    "fq.group",
                    "lem:finite_quadratic_form",
                    e,
                ));
                return out;
            }
        };
        let mut orbit_sizes: Vec<usize> = group.nonzero_orbits().iter().map(Vec::len).collect();
        orbit_sizes.sort_unstable();
        out.push(CheckResult::new(
            "fq.group",
            "lem:finite_quadratic_form",
            group.order() == 40320 && orbit_sizes == [28, 35],
            json!({ "order": group.order(), "orbit_sizes": orbit_sizes }),
        ));
        let h = FqVector::new(0x20).expect("in range");
        match group.stab_orbits_on_perp(h) {
            Ok(o) => out.push(CheckResult::new(
                "fq.stabilizer",
                "lem:finite_quadratic_form",
                o.stab_order == 1152 && o.nonisotropic == [12],
                json!({ "h": h.to_string(), "stab_order": o.stab_order, "isotropic_orbits": o.isotropic, "nonisotropic_orbits": o.nonisotropic }),
            )),
            Err(e) => out.push(CheckResult::error("fq.stabilizer", "lem:finite_quadratic_form", e)),
        }
        out
    }
}

pub struct SliceSuite;

impl Suite for SliceSuite {
    fn name(&self) -> &'static str {
        "slice"
    }

    fn run(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let slice = match forms_git::luna_slice_basis(8) {
            Ok(s) => s,
            Err(e) => return vec![CheckResult::error("slice.basis", "lem:Luna_slice", e)],
        };
        let mut w = slice.weights();
        w.sort_unstable();
        let mut tangent = slice.orbit_tangent_weights.clone();
        tangent.sort_unstable();
        out.push(CheckResult::new(
            "slice.basis",
            "lem:Luna_slice",
            w == [-8, -6, -4, 4, 6, 8] && tangent == [-2, 0, 2],
            json!(slice),
        ));
        match blowup::unstable_supports(&slice.weights()) {
            Ok(loci) => out.push(CheckResult::new(
                "slice.unstable_locus",
                "lem:unstable_locus",
                loci.len() == 2 && loci.iter().all(|l| l.codimension() == 3),
                json!(loci),
            )),
            Err(e) => out.push(CheckResult::error(
                "slice.unstable_locus",
                "lem:unstable_locus",
                e,
            )),
        }
        let (u0, u1) = (MultiPoly::var("u0"), MultiPoly::var("u1"));
        for name in ChartName::ALL {
            let id = format!("slice.transversality.{name}");
            match blowup::discriminant_pullback(&blowup::chart(name)) {
                Ok(r) => {
                    let along_u = !r.repeated_factors.is_empty()
                        && r.repeated_factors.iter().all(|f| *f == u0 || *f == u1);
                    let r_shape = name != ChartName::R || !r.factors[0].meets_exceptional;
                    out.push(CheckResult::new(
                        id,
                        "thm:nonord_nontransversal",
                        r.multiplicity == 6 && !r.squarefree && along_u && r_shape,
                        json!(r),
                    ));
                }
                Err(e) => out.push(CheckResult::error(id, "thm:nonord_nontransversal", e)),
            }
        }
        let scan = blowup::scan_stabilizers();
        out.push(CheckResult::new(
            "slice.stabilizers",
            "prop:e_not_divisible_by_5",
            scan.orders.iter().copied().eq([2, 4]) && !scan.lcm.is_multiple_of(5),
            json!({ "scan": scan, "e_candidates": scan.e_candidates() }),
        ));
        let a = blowup::antidiag_fixed_constraint();
        let expected: MultiPoly = "t0^8 - t1^8".parse().expect("literal");
        out.push(CheckResult::new(
            "slice.antidiagonal",
            "eq:action_anti_diag",
            a.constraint == expected,
            json!(a),
        ));
        let q = blowup::quotient_chart_transversality();
        out.push(CheckResult::new(
            "slice.quotient_transversality",
            "thm:nonord_transversal",
            q.holds() && !q.t_vs_z1_squared,
            json!(q),
        ));
        out
    }
}

pub struct BettiSuite;

impl Suite for BettiSuite {
    fn name(&self) -> &'static str {
        "betti"
    }

    fn run(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let kirwan = kirwan::kirwan_betti_m_k();
        match &kirwan {
            Ok(k) => {
                out.push(CheckResult::new(
                    "betti.semistable",
                    "prop:semi-stable_locus",
                    k.semistable == TruncatedSeries::new(&[1, 0, 1, 0, 2], 6),
                    series_payload(&k.semistable),
                ));
                out.push(CheckResult::new(
                    "betti.main_correction",
                    "prop:main_correction",
                    k.main == TruncatedSeries::new(&[0, 0, 1, 0, 1], 6),
                    series_payload(&k.main),
                ));
                out.push(CheckResult::new(
                    "betti.extra_correction",
                    "prop:extra_correction",
                    k.extra_min_degree == 6,
                    json!({ "min_degree": k.extra_min_degree, "normal_weights": kirwan::normal_weights() }),
                ));
                out.push(CheckResult::new(
                    "betti.M_K",
                    "thm:coh_M^K",
                    k.betti.even() == [1, 2, 3, 3, 2, 1],
                    table_payload(&k.betti),
                ));
            }
            Err(e) => out.push(CheckResult::error("betti.M_K", "thm:coh_M^K", e)),
        }
        let fiber = cohomology::unordered_fiber();
        out.push(CheckResult::new(
            "betti.boundary",
            "prop:coh_boundary",
            fiber.even() == [1, 1, 2, 1, 1],
            table_payload(&fiber),
        ));
        match cohomology::tor_betti_ordered() {
            Ok(t) => out.push(CheckResult::new(
                "betti.TOR_ord",
                "thm:coh_ordered_tor",
                t.even() == [1, 43, 99, 99, 43, 1],
                table_payload(&t),
            )),
            Err(e) => out.push(CheckResult::error(
                "betti.TOR_ord",
                "thm:coh_ordered_tor",
                e,
            )),
        }
        match cohomology::tor_betti_unordered() {
            Ok(t) => {
                out.push(CheckResult::new(
                    "betti.TOR",
                    "thm:coh_tor",
                    t.even() == [1, 2, 3, 3, 2, 1],
                    table_payload(&t),
                ));
                if let Ok(k) = &kirwan {
                    out.push(CheckResult::new(
                        "betti.kirwan_vs_decomposition",
                        "thm:coh_tor",
                        k.betti == t,
                        json!({ "kirwan": k.betti.even(), "decomposition": t.even() }),
                    ));
                }
            }
            Err(e) => out.push(CheckResult::error("betti.TOR", "thm:coh_tor", e)),
        }
        out
    }
}

fn identity_anchor(id: &str) -> &'static str {
    match id {
        "canonical_over_phi1" | "canonical_over_phi2" => "eq:can_bindle_M^K_{ord}",
        "canonical_bb_ord"
        | "canonical_bb_git_ord"
        | "canonical_tor_ord"
        | "toroidal_route"
        | "automorphic_bundle_routes" => "eq:Kondoform",
        "canonical_bb_git" => "nonord_Kirwan_K",
        _ => "eq:pull_back",
    }
}

pub struct PicardSuite;

impl Suite for PicardSuite {
    fn name(&self) -> &'static str {
        "picard"
    }

    fn run(&self) -> Vec<CheckResult> {
        let mut out = Vec::new();
        match picard::verify_blowup_identities() {
            Ok(ids) => {
                for id in ids {
                    let anchor = identity_anchor(id.id);
                    out.push(CheckResult::new(
                        format!("picard.identity.{}", id.id),
                        anchor,
                        id.holds,
                        json!({ "identity": id.name, "lhs": id.lhs, "rhs": id.rhs }),
                    ));
                }
            }
            Err(e) => out.push(CheckResult::error("picard.identity", "eq:pull_back", e)),
        }
        let canon: Vec<Value> = SpaceId::ALL
            .iter()
            .map(|&s| json!({ "space": s, "canonical": picard::canonical(s) }))
            .collect();
        let k_ord = picard::canonical(SpaceId::KOrd).to_string();
        out.push(CheckResult::new(
            "picard.canonical",
            "eq:can_bindle_M^K_{ord}",
            k_ord == "-2/7*D2_1 + 2/7*D4_1",
            json!(canon),
        ));
        let nb = picard::normal_bundle_boundary();
        out.push(CheckResult::new(
            "picard.normal_bundle",
            "prop:normal_bundles",
            nb.bidegree == (int(-1), int(-1)) && nb.multiple == 3,
            json!(nb),
        ));
        // the ordered cover has the orthogonal group as its deck group
        let cover = OrthogonalGroup::generate().map_or(0, |g| g.order() as u64);
        let si = picard::top_self_intersections(cohomology::ORDERED_CUSPS, cover);
        out.push(CheckResult::new(
            "picard.self_intersections",
            "thm:not_K_equiv",
            si.component == int(6) && si.ordered == int(210) && si.unordered == rat(1, 192),
            json!(si),
        ));
        let scan = blowup::scan_stabilizers();
        let e: Vec<u64> = scan.e_candidates().into_iter().map(u64::from).collect();
        let cert = picard::k_equivalence_obstruction(&si.unordered, 7, 5, &e);
        out.push(CheckResult::new(
            "picard.obstruction",
            "thm:not_K_equiv",
            cert.obstructed && cert.required_delta_fifth == rat(16807, 600000),
            json!(cert),
        ));
        let formula = [
            picard::discrepancy(&int(5), &int(6), &rat(3, 4)),
            picard::discrepancy(&int(5), &int(6), &int(0)),
            picard::discrepancy(&int(2), &int(6), &rat(1, 2)),
        ];
        let unordered = picard::unordered_discrepancy().ok().flatten();
        let ordered = picard::ordered_discrepancy().ok().flatten();
        let ok = formula == [rat(1, 2), int(5), int(-1)]
            && unordered.as_ref() == Some(&formula[0])
            && ordered.as_ref() == Some(&formula[2]);
        let s = |q: &Option<_>| q.as_ref().map(|x: &crate::polyalg::Rational| x.to_string());
        out.push(CheckResult::new(
            "picard.discrepancy",
            "prop:mmp",
            ok,
            json!({
                "formula": formula.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "ledger_unordered": s(&unordered),
                "ledger_ordered": s(&ordered),
            }),
        ));
        let multiplicities: Vec<u32> = ChartName::ALL
            .iter()
            .filter_map(|&n| blowup::discriminant_pullback(&blowup::chart(n)).ok())
            .map(|r| r.multiplicity)
            .collect();
        let coefficient = picard::exceptional_pullback_coefficient();
        out.push(CheckResult::new(
            "picard.exceptional_multiplicity",
            "eq:pull_back",
            multiplicities.len() == 3
                && multiplicities.iter().all(|&m| int(m as i64) == coefficient),
            json!({ "blowup": multiplicities, "pullback_coefficient": coefficient.to_string() }),
        ));
        out.push(CheckResult::skipped(
            "picard.log_crepancy_unordered",
            "prop:mmp",
            json!("the coefficient of T in pi^*H is not available; not verified"),
        ));
        out
    }
}
