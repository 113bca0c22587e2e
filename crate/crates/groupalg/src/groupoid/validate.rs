use super::{ArrowSet, FiniteGroupoid};
use crate::verdict::ValidationReport;

/// Checks every groupoid axiom and, when a topology is present, the basis and
/// étale conditions. Continuity of composition is not checked.
pub fn validate(g: &FiniteGroupoid) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = g.len();
    let l = |a: usize| g.label(a).to_string();

    for a in 0..n {
        if g.is_unit(a) && (g.r(a) != a || g.d(a) != a) {
            rep.push(
                "unit_range_domain",
                vec![a],
                format!("unit {} has r or d different from itself", l(a)),
            );
        }
        for (m, what) in [(g.r(a), "range"), (g.d(a), "domain")] {
            if !g.is_unit(m) {
                rep.push(
                    "map_not_unit",
                    vec![a],
                    format!("{} of {} is {}, not a unit", what, l(a), l(m)),
                );
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let composable = g.d(a) == g.r(b);
            match g.mul(a, b) {
                None if composable => {
                    rep.push("compose_missing", vec![a, b], format!("{}·{} is undefined", l(a), l(b)))
                }
                Some(c) if !composable => rep.push(
                    "compose_spurious",
                    vec![a, b, c],
                    format!("{}·{} defined although d != r", l(a), l(b)),
                ),
                Some(c) if g.r(c) != g.r(a) || g.d(c) != g.d(b) => rep.push(
                    "compose_range_domain",
                    vec![a, b, c],
                    format!("r or d of {}·{} = {} is wrong", l(a), l(b), l(c)),
                ),
                _ => {}
            }
        }
    }

    for a in 0..n {
        if g.mul(a, g.d(a)) != Some(a) || g.mul(g.r(a), a) != Some(a) {
            rep.push("unit_law", vec![a], format!("unit law fails at {}", l(a)));
        }
    }

    for a in 0..n {
        for b in 0..n {
            let Some(ab) = g.mul(a, b) else { continue };
            for c in 0..n {
                let Some(bc) = g.mul(b, c) else { continue };
                let left = g.mul(ab, c);
                let right = g.mul(a, bc);
                if left.is_none() || left != right {
                    rep.push(
                        "associativity",
                        vec![a, b, c],
                        format!("({}·{})·{} != {}·({}·{})", l(a), l(b), l(c), l(a), l(b), l(c)),
                    );
                }
            }
        }
    }

    for a in 0..n {
        let i = g.inv(a);
        if g.inv(i) != a {
            rep.push(
                "inverse_involution",
                vec![a, i],
                format!("inverse of inverse of {} is not itself", l(a)),
            );
        }
        if g.mul(a, i) != Some(g.r(a)) || g.mul(i, a) != Some(g.d(a)) {
            rep.push(
                "inverse_law",
                vec![a, i],
                format!("{} is not an inverse of {}", l(i), l(a)),
            );
        }
    }

    if let Some(t) = g.topology() {
        validate_topology(g, &t.sets, &mut rep);
    }
    rep
}

fn validate_topology(g: &FiniteGroupoid, sets: &[ArrowSet], rep: &mut ValidationReport) {
    let n = g.len();
    let covered: ArrowSet = sets.iter().flatten().copied().collect();
    for a in 0..n {
        if !covered.contains(&a) {
            rep.push("basis_cover", vec![a], format!("{} lies in no basis set", g.label(a)));
        }
    }
    for (i, b1) in sets.iter().enumerate() {
        for b2 in sets.iter().skip(i + 1) {
            let meet: ArrowSet = b1.intersection(b2).copied().collect();
            for &a in &meet {
                if !sets.iter().any(|b3| b3.contains(&a) && b3.is_subset(&meet)) {
                    rep.push(
                        "basis_condition",
                        vec![a],
                        format!("no basis set through {} inside an intersection", g.label(a)),
                    );
                }
            }
        }
    }
    let units = g.unit_set();
    if !g.is_open(&units) {
        rep.push(
            "units_not_open",
            units.iter().copied().collect(),
            "unit space is not open",
        );
    }
    for a in 0..n {
        if !sets.iter().any(|b| b.contains(&a) && g.is_bisection(b)) {
            rep.push(
                "etale_bisection",
                vec![a],
                format!("no basic bisection contains {}", g.label(a)),
            );
        }
    }
    for (i, b) in sets.iter().enumerate() {
        let inv = g.inverse_set(b);
        if !g.is_open(&inv) {
            rep.push(
                "inverse_not_open",
                b.iter().copied().collect(),
                format!("inverse of basis set {} is not open", i),
            );
        }
        if g.is_bisection(b) {
            for (img, what) in [(g.range_of(b), "range"), (g.domain_of(b), "domain")] {
                if !g.is_open(&img) {
                    rep.push(
                        "map_not_open",
                        b.iter().copied().collect(),
                        format!("{} of basic bisection {} is not open", what, i),
                    );
                }
            }
        }
        if b.is_subset(&units) {
            let pre_r: ArrowSet = (0..n).filter(|&a| b.contains(&g.r(a))).collect();
            let pre_d: ArrowSet = (0..n).filter(|&a| b.contains(&g.d(a))).collect();
            if !g.is_open(&pre_r) || !g.is_open(&pre_d) {
                rep.push(
                    "map_not_continuous",
                    b.iter().copied().collect(),
                    format!("preimage of basis set {} under r or d is not open", i),
                );
            }
        }
    }
}
