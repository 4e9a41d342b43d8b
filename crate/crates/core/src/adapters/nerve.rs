use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FiniteCategory, Morphism};
use crate::error::{Error, Result};
use crate::homotopy::closure_classes;
use crate::lifting::check_horn;
use crate::sset::{SimplexId, TruncatedSSet};
use crate::standard::simplicial_horn;
use crate::strat::StratifiedSSet;

/// The nerve of `c` up to dimension `cap`: `k`-simplices are composable
/// chains `(f_1, ..., f_k)`, `d_i` composes `f_{i+1} ∘ f_i` (or drops an end)
/// and `s_i` inserts an identity.
pub fn nerve(c: &FiniteCategory, cap: usize) -> Result<TruncatedSSet> {
    let objects = c.objects().len();
    let mors = c.morphisms();
    // chains[0] holds objects as one-element "chains" of object indices
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..objects).map(|o| vec![o]).collect()];
    if cap >= 1 {
        chains.push((0..mors.len()).map(|f| vec![f]).collect());
    }
    for k in 2..=cap {
        let next = chains[k - 1]
            .iter()
            .flat_map(|ch| {
                let end = mors[*ch.last().expect("nonempty")].target;
                (0..mors.len())
                    .filter(move |&f| mors[f].source == end)
                    .map(move |f| {
                        let mut c = ch.clone();
                        c.push(f);
                        c
                    })
            })
            .collect();
        chains.push(next);
    }
    let lookup: Vec<HashMap<&[usize], usize>> = chains
        .iter()
        .map(|row| row.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i)).collect())
        .collect();
    let find = |k: usize, ch: &[usize]| lookup[k][ch];
    let vertex_of = |ch: &[usize], i: usize| -> usize {
        if i == 0 {
            mors[ch[0]].source
        } else {
            mors[ch[i - 1]].target
        }
    };

    let mut faces = vec![Vec::new(); cap + 1];
    let mut degens = vec![Vec::new(); cap + 1];
    for k in 1..=cap {
        faces[k] = chains[k]
            .iter()
            .map(|ch| {
                (0..=k)
                    .map(|i| {
                        if k == 1 {
                            let f: &Morphism = &mors[ch[0]];
                            return if i == 0 { f.target } else { f.source };
                        }
                        let mut d = ch.clone();
                        if i == 0 {
                            d.remove(0);
                        } else if i == k {
                            d.pop();
                        } else {
                            let g = c.compose(d[i], d[i - 1]).expect("composable chain");
                            d.splice(i - 1..=i, [g]);
                        }
                        find(k - 1, &d)
                    })
                    .collect()
            })
            .collect();
    }
    for k in 0..cap {
        degens[k] = chains[k]
            .iter()
            .map(|ch| {
                (0..=k)
                    .map(|i| {
                        if k == 0 {
                            return find(1, &[c.identity(ch[0])]);
                        }
                        let mut d = ch.clone();
                        d.insert(i, c.identity(vertex_of(ch, i)));
                        find(k + 1, &d)
                    })
                    .collect()
            })
            .collect();
    }
    let labels = chains
        .iter()
        .enumerate()
        .map(|(k, row)| {
            row.iter()
                .map(|ch| match k {
                    0 => c.objects()[ch[0]].clone(),
                    1 => mors[ch[0]].name.clone(),
                    _ => format!(
                        "({})",
                        ch.iter().map(|&f| mors[f].name.as_str()).collect::<Vec<_>>().join(",")
                    ),
                })
                .collect()
        })
        .collect();
    let counts = chains.iter().map(Vec::len).collect();
    TruncatedSSet::new(cap, counts, faces, degens)?.with_labels(labels)
}

/// The nerve with every simplex thin.
pub fn th0(c: &FiniteCategory, cap: usize) -> Result<StratifiedSSet> {
    Ok(StratifiedSSet::max_strat(Arc::new(nerve(c, cap)?)))
}

/// Checks inner horn filling up to `bound` and marks a quasi-category:
/// thin = degenerate simplices, every simplex of dim >= 2, and the
/// 1-simplices that are invertible up to homotopy.
pub fn quasicat_e(k: Arc<TruncatedSSet>, bound: usize) -> Result<StratifiedSSet> {
    let cap = k.cap();
    if bound > cap {
        return Err(Error::BoundExceedsCap { bound, cap });
    }
    if cap < 2 {
        return Err(Error::CapTooSmall { needed: 2, cap });
    }
    let everything = Arc::new(StratifiedSSet::max_strat(k.clone()));
    for n in 2..=bound {
        for j in 1..n {
            let horn = simplicial_horn(j, n, n)?;
            let report = check_horn(&everything, &horn);
            if let Some(w) = report.failures.first() {
                return Err(Error::NotQuasiCategory(format!("inner horn Λ^{j}[{n}] has no filler: {w:?}")));
            }
        }
    }
    let mut extra: Vec<SimplexId> = (2..=cap).flat_map(|d| k.simplices(d)).collect();
    extra.extend(k.simplices(1).filter(|&e| is_equivalence(&k, e)));
    StratifiedSSet::make_stratified(k, extra)
}

fn is_equivalence(k: &TruncatedSSet, e: SimplexId) -> bool {
    let ef = k.faces_of(1, e.index);
    let (x, y) = (ef[1], ef[0]);
    let unit = |v: usize| k.degeneracies_of(0, v)[0];
    // σ: d_2 σ = e, d_0 σ = e', d_1 σ = 1_x and τ: d_2 τ = e', d_0 τ = e, d_1 τ = 1_y
    k.simplices(1).any(|back| {
        let bf = k.faces_of(1, back.index);
        bf[1] == y
            && bf[0] == x
            && !k.with_faces(2, &[back.index, unit(x), e.index]).is_empty()
            && !k.with_faces(2, &[e.index, unit(y), back.index]).is_empty()
    })
}

/// The homotopy category of a quasi-category (given up to dim 2 at least):
/// objects are vertices, morphisms are 1-simplices modulo
/// `f ~ g` iff some 2-simplex has faces `(1_y, g, f)`.
pub fn homotopy_category(k: &TruncatedSSet) -> Result<FiniteCategory> {
    if k.cap() < 2 {
        return Err(Error::CapTooSmall { needed: 2, cap: k.cap() });
    }
    let edges: Vec<SimplexId> = k.simplices(1).collect();
    let m = edges.len();
    let unit = |v: usize| k.degeneracies_of(0, v)[0];
    let related: Vec<Vec<bool>> = (0..m)
        .map(|f| {
            let ff = k.faces_of(1, f);
            (0..m)
                .map(|g| !k.with_faces(2, &[unit(ff[0]), g, f]).is_empty())
                .collect()
        })
        .collect();
    let classes = closure_classes(&related);
    let mut class_of = vec![0; m];
    for (c, members) in classes.iter().enumerate() {
        for &e in members {
            class_of[e] = c;
        }
    }
    let morphisms: Vec<Morphism> = classes
        .iter()
        .map(|members| {
            let f = k.faces_of(1, members[0]);
            Morphism {
                name: k.label(SimplexId::new(1, members[0])).to_string(),
                source: f[1],
                target: f[0],
            }
        })
        .collect();
    let n = classes.len();
    let mut compose = vec![vec![None; n]; n];
    for sigma in k.simplices(2) {
        let sf = k.faces_of(2, sigma.index);
        let (g, h, f) = (class_of[sf[0]], class_of[sf[1]], class_of[sf[2]]);
        match compose[g][f] {
            None => compose[g][f] = Some(h),
            Some(prev) if prev != h => {
                return Err(Error::NotQuasiCategory(format!(
                    "composite of {} and {} is not well defined",
                    morphisms[f].name, morphisms[g].name
                )))
            }
            _ => {}
        }
    }
    let identities = (0..k.count(0)).map(|v| class_of[unit(v)]).collect();
    let objects = k.simplices(0).map(|v| k.label(v).to_string()).collect();
    FiniteCategory::new(objects, morphisms, identities, compose)
        .map_err(|e| Error::NotQuasiCategory(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapters::builtin;

    #[test]
    fn nerve_counts() {
        let z2 = nerve(&builtin("cyclic:2").unwrap(), 3).unwrap();
        assert_eq!(z2.counts(), &[1, 2, 4, 8]);
        let i = nerve(&builtin("interval").unwrap(), 2).unwrap();
        assert_eq!(i.counts(), &[2, 3, 4]);
        // nondegenerate: only the arrow 0 -> 1
        assert_eq!(i.nondegenerate(1).count(), 1);
        assert_eq!(i.nondegenerate(2).count(), 0);
    }

    #[test]
    fn nerve_composes_in_the_middle() {
        let z3 = nerve(&builtin("cyclic:3").unwrap(), 2).unwrap();
        let s = z3.find_label(2, "(1,1)").unwrap();
        assert_eq!(z3.label(z3.face(s, 1).unwrap()), "2");
        assert_eq!(z3.label(z3.face(s, 0).unwrap()), "1");
    }

    #[test]
    fn homotopy_category_of_nerve_recovers_category() {
        let s3 = builtin("symmetric:3").unwrap();
        let h = homotopy_category(&nerve(&s3, 2).unwrap()).unwrap();
        assert_eq!(h.morphisms().len(), 6);
        for g in 0..6 {
            for f in 0..6 {
                assert_eq!(h.compose(g, f), s3.compose(g, f));
            }
        }
    }

    #[test]
    fn quasicat_marks_equivalences() {
        let b = nerve(&builtin("boolean").unwrap(), 3).unwrap();
        let q = quasicat_e(Arc::new(b), 3).unwrap();
        let one = q.sset().find_label(1, "1").unwrap();
        let zero = q.sset().find_label(1, "0").unwrap();
        assert!(q.is_thin(one));
        assert!(!q.is_thin(zero));
    }
}
