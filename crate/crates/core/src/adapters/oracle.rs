//! Homotopy groups of a Kan complex computed directly from the face tables,
//! without the stratified machinery: homotopies are chains of prism
//! simplices and products are read off a single `(n+1)`-simplex.

use crate::error::{Error, Result};
use crate::homotopy::{closure_classes, MonoidTable, RelationDiagnostic};
use crate::sset::{SimplexId, TruncatedSSet};

/// Checks that every horn `Λ^k[m]`, `1 <= m <= up_to`, has a filler, by
/// enumerating compatible face families directly.
pub fn check_kan(k: &TruncatedSSet, up_to: usize) -> Result<()> {
    if up_to > k.cap() {
        return Err(Error::BoundExceedsCap { bound: up_to, cap: k.cap() });
    }
    for m in 1..=up_to {
        for hole in 0..=m {
            let positions: Vec<usize> = (0..=m).filter(|&i| i != hole).collect();
            let mut chosen: Vec<usize> = Vec::new();
            if let Some(faces) = first_unfillable(k, m, &positions, &mut chosen) {
                return Err(Error::NotKan(format!("horn Λ^{hole}[{m}] with faces {faces:?} has no filler")));
            }
        }
    }
    Ok(())
}

fn first_unfillable(
    k: &TruncatedSSet,
    m: usize,
    positions: &[usize],
    chosen: &mut Vec<usize>,
) -> Option<Vec<String>> {
    if chosen.len() == positions.len() {
        let filled = (0..k.count(m)).any(|s| {
            let f = k.faces_of(m, s);
            positions.iter().zip(chosen.iter()).all(|(&i, &x)| f[i] == x)
        });
        return (!filled).then(|| {
            chosen
                .iter()
                .map(|&x| k.label(SimplexId::new(m - 1, x)).to_string())
                .collect()
        });
    }
    let j = positions[chosen.len()];
    for x in 0..k.count(m - 1) {
        // d_i x_j = d_{j-1} x_i for every earlier i < j
        let ok = m < 2
            || positions[..chosen.len()].iter().zip(chosen.iter()).all(|(&i, &xi)| {
                k.faces_of(m - 1, x)[i] == k.faces_of(m - 1, xi)[j - 1]
            });
        if ok {
            chosen.push(x);
            let r = first_unfillable(k, m, positions, chosen);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

fn constant(k: &TruncatedSSet, v: usize, dim: usize) -> usize {
    (0..dim).fold(v, |x, d| k.degeneracies_of(d, x)[0])
}

/// Whether some prism `ω_0, ..., ω_n` of `(n+1)`-simplices runs from `alpha`
/// to `beta`: `d_{n+1} ω_n = alpha`, `d_0 ω_0 = beta`, consecutive prisms
/// share `d_{j+1}`, and every other face is constant.
fn prism_homotopic(k: &TruncatedSSet, n: usize, c: usize, alpha: usize, beta: usize) -> bool {
    fn extend(k: &TruncatedSSet, n: usize, c: usize, j: usize, shared: usize, alpha: usize) -> bool {
        (0..k.count(n + 1)).any(|w| {
            let f = k.faces_of(n + 1, w);
            let fixed = (0..=n + 1).all(|i| i == j || i == j + 1 || f[i] == c);
            if !fixed || f[j] != shared {
                return false;
            }
            if j == n {
                f[n + 1] == alpha
            } else {
                extend(k, n, c, j + 1, f[j + 1], alpha)
            }
        })
    }
    extend(k, n, c, 0, beta, alpha)
}

/// `τ_n(K, v)` for a Kan complex `K` with `n >= 1`, as a table comparable
/// with [`crate::homotopy::tau_table`] on `th0`-style stratifications.
pub fn pi_oracle(k: &TruncatedSSet, v: usize, n: usize) -> Result<MonoidTable> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
    }
    if k.cap() < n + 1 {
        return Err(Error::CapTooSmall { needed: n + 1, cap: k.cap() });
    }
    if v >= k.count(0) {
        return Err(Error::DanglingReference { what: "base vertex".into(), dim: 0, index: v });
    }
    check_kan(k, n + 1)?;
    let c_face = constant(k, v, n - 1);
    let c = constant(k, v, n);
    let elements: Vec<usize> = (0..k.count(n))
        .filter(|&s| k.faces_of(n, s).iter().all(|&f| f == c_face))
        .collect();
    let related: Vec<Vec<bool>> = elements
        .iter()
        .map(|&a| elements.iter().map(|&b| prism_homotopic(k, n, c, a, b)).collect())
        .collect();
    let relation = RelationDiagnostic::of(&related);
    let classes: Vec<Vec<usize>> = closure_classes(&related)
        .into_iter()
        .map(|cl| cl.into_iter().map(|i| elements[i]).collect())
        .collect();
    let class_of = |s: usize| classes.iter().position(|cl| cl.contains(&s));
    let size = classes.len();
    let mut table = vec![vec![0; size]; size];
    let mut fillers = vec![vec![SimplexId::new(n + 1, 0); size]; size];
    for a in 0..size {
        for b in 0..size {
            let (alpha, beta) = (classes[a][0], classes[b][0]);
            let theta = (0..k.count(n + 1))
                .find(|&t| {
                    let f = k.faces_of(n + 1, t);
                    f[n - 1] == alpha && f[n + 1] == beta && (0..n - 1).all(|i| f[i] == c)
                })
                .ok_or_else(|| Error::NotKan(format!("no product simplex for classes {a} and {b}")))?;
            table[a][b] = class_of(k.faces_of(n + 1, theta)[n])
                .ok_or_else(|| Error::NotKan("product left the sphere elements".into()))?;
            fillers[a][b] = SimplexId::new(n + 1, theta);
        }
    }
    let unit = class_of(c).expect("the constant simplex is a sphere element");
    Ok(MonoidTable::from_parts(
        n,
        SimplexId::new(0, v),
        classes
            .into_iter()
            .map(|cl| cl.into_iter().map(|s| SimplexId::new(n, s)).collect())
            .collect(),
        unit,
        table,
        fillers,
        relation,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapters::{builtin, nerve};

    #[test]
    fn groups_have_kan_nerves() {
        check_kan(&nerve(&builtin("symmetric:3").unwrap(), 3).unwrap(), 3).unwrap();
    }

    #[test]
    fn boolean_monoid_is_not_kan() {
        let err = check_kan(&nerve(&builtin("boolean").unwrap(), 2).unwrap(), 2).unwrap_err();
        assert!(matches!(err, Error::NotKan(_)));
    }

    #[test]
    fn fundamental_group_of_cyclic_nerve() {
        let t = pi_oracle(&nerve(&builtin("cyclic:3").unwrap(), 2).unwrap(), 0, 1).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.is_group && t.commutative);
        assert_eq!(t.table[1][1], 2);
    }
}
