use super::{FiniteGroupoid, GroupoidParts};
use crate::group::FiniteGroup;

/// Transitive groupoid `O × H × O` with `(x,h,y)(y,k,z) = (x,hk,z)`.
/// `label(x, h, y)` names arrows.
pub fn transitive_groupoid_with(
    points: usize,
    h: &FiniteGroup,
    label: impl Fn(usize, usize, usize) -> String,
) -> FiniteGroupoid {
    let m = h.order();
    let id = |x: usize, g: usize, y: usize| (x * m + g) * points + y;
    let n = points * m * points;
    let mut p = GroupoidParts {
        labels: vec![String::new(); n],
        range: vec![0; n],
        domain: vec![0; n],
        inverse: vec![0; n],
        ..Default::default()
    };
    for x in 0..points {
        for g in 0..m {
            for y in 0..points {
                let a = id(x, g, y);
                p.labels[a] = label(x, g, y);
                p.range[a] = id(x, h.identity, x);
                p.domain[a] = id(y, h.identity, y);
                p.inverse[a] = id(y, h.inverse[g], x);
                for k in 0..m {
                    for z in 0..points {
                        p.compose.push((a, id(y, k, z), id(x, h.mul(g, k), z)));
                    }
                }
            }
        }
        p.units.push(id(x, h.identity, x));
    }
    FiniteGroupoid::from_parts(p).expect("transitive groupoid")
}

/// Transitive groupoid with labels `(x,h,y)`.
pub fn transitive_groupoid(points: usize, h: &FiniteGroup) -> FiniteGroupoid {
    transitive_groupoid_with(points, h, |x, g, y| format!("({},{},{})", x, h.labels[g], y))
}

/// Pair groupoid on `n` units with labels `(i,j)`; `r(i,j) = (i,i)`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    transitive_groupoid_with(n, &FiniteGroup::cyclic(1), |x, _, y| format!("({},{})", x, y))
}

/// A group as a one-unit groupoid, labelled by the group labels.
pub fn group_groupoid(h: &FiniteGroup) -> FiniteGroupoid {
    transitive_groupoid_with(1, h, |_, g, _| h.labels[g].clone())
}

/// Groupoid consisting only of units.
pub fn unit_groupoid(labels: &[&str]) -> FiniteGroupoid {
    let n = labels.len();
    FiniteGroupoid::from_parts(GroupoidParts {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        units: (0..n).collect(),
        range: (0..n).collect(),
        domain: (0..n).collect(),
        inverse: (0..n).collect(),
        compose: (0..n).map(|i| (i, i, i)).collect(),
        basis: None,
    })
    .expect("unit groupoid")
}

/// Disjoint union; labels of part `i` are prefixed with `c{i}:`. The result is
/// discrete unless some part has a topology, in which case the basis is the
/// union of the parts' bases (discrete parts contribute singletons).
pub fn disjoint_union(parts: &[FiniteGroupoid]) -> FiniteGroupoid {
    let mut p = GroupoidParts::default();
    let any_topology = parts.iter().any(|g| g.topology().is_some());
    let mut basis = Vec::new();
    let mut offset = 0;
    for (i, g) in parts.iter().enumerate() {
        let q = g.to_parts();
        p.labels.extend(q.labels.iter().map(|l| format!("c{}:{}", i, l)));
        p.units.extend(q.units.iter().map(|&u| u + offset));
        p.range.extend(q.range.iter().map(|&u| u + offset));
        p.domain.extend(q.domain.iter().map(|&u| u + offset));
        p.inverse.extend(q.inverse.iter().map(|&u| u + offset));
        p.compose
            .extend(q.compose.iter().map(|&(a, b, c)| (a + offset, b + offset, c + offset)));
        for s in g.basis_sets().iter() {
            basis.push(s.iter().map(|&a| a + offset).collect());
        }
        offset += g.len();
    }
    if any_topology {
        p.basis = Some(basis);
    }
    FiniteGroupoid::from_parts(p).expect("disjoint union")
}

/// Two arrows `x` (unit) and `g` with `g² = x`, basis `{{x},{x,g}}`.
/// Not étale (`g` lies in no basic bisection); used for closure examples.
pub fn two_arrow_nonseparated() -> FiniteGroupoid {
    FiniteGroupoid::from_parts(GroupoidParts {
        labels: vec!["x".into(), "g".into()],
        units: vec![0],
        range: vec![0, 0],
        domain: vec![0, 0],
        inverse: vec![0, 1],
        compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
        basis: Some(vec![vec![0], vec![0, 1]]),
    })
    .expect("fixture")
}

/// Étale non-Hausdorff groupoid: units `0`, `p`; an involution `g` at `0`;
/// basis `{{p}, {0,p}, {g,p}}`. The arrow `g` is approximated by `p` through
/// the bisection `{g,p}`, so no point is Hausdorff.
pub fn etale_nonhausdorff() -> FiniteGroupoid {
    FiniteGroupoid::from_parts(GroupoidParts {
        labels: vec!["0".into(), "p".into(), "g".into()],
        units: vec![0, 1],
        range: vec![0, 1, 0],
        domain: vec![0, 1, 0],
        inverse: vec![0, 1, 2],
        compose: vec![(0, 0, 0), (1, 1, 1), (0, 2, 2), (2, 0, 2), (2, 2, 0)],
        basis: Some(vec![vec![1], vec![0, 1], vec![2, 1]]),
    })
    .expect("fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate;

    #[test]
    fn constructions_validate() {
        for g in [
            pair_groupoid(1),
            pair_groupoid(4),
            group_groupoid(&FiniteGroup::s3()),
            transitive_groupoid(3, &FiniteGroup::klein()),
            unit_groupoid(&["a", "b"]),
            disjoint_union(&[pair_groupoid(2), etale_nonhausdorff()]),
        ] {
            assert!(validate(&g).is_ok(), "{:?}", validate(&g));
        }
        assert_eq!(pair_groupoid(2).len(), 4);
        assert_eq!(transitive_groupoid(2, &FiniteGroup::cyclic(3)).len(), 12);
        assert!(!validate(&two_arrow_nonseparated()).is_ok());
    }
}
