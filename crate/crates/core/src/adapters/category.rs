use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` when `f` ends where `g` starts.
    compose: Vec<Vec<Option<usize>>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCategory(msg.into())
}

impl FiniteCategory {
    /// Validates typing, unit laws and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let (o, m) = (objects.len(), morphisms.len());
        if identities.len() != o {
            return Err(invalid("one identity per object is required"));
        }
        if compose.len() != m || compose.iter().any(|r| r.len() != m) {
            return Err(invalid("composition table does not match the morphisms"));
        }
        for f in &morphisms {
            if f.source >= o || f.target >= o {
                return Err(invalid(format!("{} has an unknown endpoint", f.name)));
            }
        }
        for (x, &id) in identities.iter().enumerate() {
            let f = morphisms.get(id).ok_or_else(|| invalid("identity out of range"))?;
            if f.source != x || f.target != x {
                return Err(invalid(format!("{} is not an endomorphism of {}", f.name, objects[x])));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = morphisms[f].target == morphisms[g].source;
                match (composable, compose[g][f]) {
                    (true, None) => {
                        return Err(invalid(format!(
                            "missing composite {} ∘ {}",
                            morphisms[g].name, morphisms[f].name
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(invalid(format!(
                            "{} ∘ {} is not composable",
                            morphisms[g].name, morphisms[f].name
                        )))
                    }
                    (true, Some(h)) => {
                        let hm = morphisms.get(h).ok_or_else(|| invalid("composite out of range"))?;
                        if hm.source != morphisms[f].source || hm.target != morphisms[g].target {
                            return Err(invalid(format!(
                                "{} ∘ {} has the wrong type",
                                morphisms[g].name, morphisms[f].name
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        let cat = Self {
            objects,
            morphisms,
            identities,
            compose,
        };
        for f in 0..m {
            let (s, t) = (cat.morphisms[f].source, cat.morphisms[f].target);
            if cat.comp(f, cat.identities[s]) != f || cat.comp(cat.identities[t], f) != f {
                return Err(invalid(format!("unit law fails at {}", cat.morphisms[f].name)));
            }
        }
        for f in 0..m {
            for g in (0..m).filter(|&g| cat.compose[g][f].is_some()) {
                for h in (0..m).filter(|&h| cat.compose[h][g].is_some()) {
                    if cat.comp(h, cat.comp(g, f)) != cat.comp(cat.comp(h, g), f) {
                        return Err(invalid(format!(
                            "associativity fails at ({}, {}, {})",
                            cat.morphisms[h].name, cat.morphisms[g].name, cat.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// The one-object category of a monoid, with `g ∘ f = g · f`, where
    /// `table[a][b] = a · b`.
    pub fn from_monoid(elements: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = elements.len();
        if unit >= m || table.len() != m || table.iter().any(|r| r.len() != m || r.iter().any(|&c| c >= m)) {
            return Err(invalid("monoid table does not match its elements"));
        }
        let morphisms = elements
            .into_iter()
            .map(|name| Morphism {
                name,
                source: 0,
                target: 0,
            })
            .collect();
        let compose = table.into_iter().map(|r| r.into_iter().map(Some).collect()).collect();
        Self::new(vec!["*".into()], morphisms, vec![unit], compose)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].expect("composable")
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// Whether `f` has a two-sided inverse.
    pub fn is_invertible(&self, f: usize) -> bool {
        let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
        (0..self.morphisms.len()).any(|g| {
            self.compose[g][f] == Some(self.identities[s]) && self.compose[f][g] == Some(self.identities[t])
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| self.is_invertible(f))
    }
}

/// A category as written in a JSON input file. Compositions with identities
/// may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    /// Identity morphism names, one per object, in object order.
    pub identities: Vec<String>,
    /// Entries `[g, f, g ∘ f]`.
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl CategoryFile {
    pub fn build(&self) -> Result<FiniteCategory> {
        let obj: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != self.objects.len() {
            return Err(invalid("duplicate object name"));
        }
        let find_obj = |n: &str| obj.get(n).copied().ok_or_else(|| invalid(format!("unknown object {n:?}")));
        let mut morphisms = Vec::new();
        for m in &self.morphisms {
            morphisms.push(Morphism {
                name: m.name.clone(),
                source: find_obj(&m.source)?,
                target: find_obj(&m.target)?,
            });
        }
        let mor: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
        if mor.len() != morphisms.len() {
            return Err(invalid("duplicate morphism name"));
        }
        let find = |n: &str| mor.get(n).copied().ok_or_else(|| invalid(format!("unknown morphism {n:?}")));
        let identities = self.identities.iter().map(|n| find(n)).collect::<Result<Vec<_>>>()?;
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for [g, f, h] in &self.composition {
            let (g, f, h) = (find(g)?, find(f)?, find(h)?);
            if compose[g][f].is_some_and(|c| c != h) {
                return Err(invalid(format!("conflicting composites for {} ∘ {}", morphisms[g].name, morphisms[f].name)));
            }
            compose[g][f] = Some(h);
        }
        for f in 0..m {
            let (s, t) = (morphisms[f].source, morphisms[f].target);
            if let (Some(&is), Some(&it)) = (identities.get(s), identities.get(t)) {
                compose[f][is].get_or_insert(f);
                compose[it][f].get_or_insert(f);
            }
        }
        FiniteCategory::new(self.objects.clone(), morphisms, identities, compose)
    }
}

/// A monoid as written in a JSON input file; `table[a][b] = a · b`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<Vec<String>>,
}

impl MonoidFile {
    pub fn build(&self) -> Result<FiniteCategory> {
        let idx: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        if idx.len() != self.elements.len() {
            return Err(invalid("duplicate monoid element"));
        }
        let find = |n: &str| idx.get(n).copied().ok_or_else(|| invalid(format!("unknown element {n:?}")));
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(|c| find(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteCategory::from_monoid(self.elements.clone(), find(&self.unit)?, table)
    }
}

/// Names accepted by [`builtin`]; `N` and `K` are positive integers.
pub const BUILTINS: &[&str] = &["trivial", "boolean", "interval", "cyclic:N", "symmetric:N", "codiscrete:K"];

fn cyclic(n: usize) -> Result<FiniteCategory> {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteCategory::from_monoid((0..n).map(|i| i.to_string()).collect(), 0, table)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q: Vec<usize> = p.iter().map(|&v| v + 1).collect();
            q.insert(pos, 0);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn symmetric(k: usize) -> Result<FiniteCategory> {
    let perms = permutations(k);
    let pos: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| pos[&q.iter().map(|&i| p[i]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    let names = perms
        .iter()
        .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(if k > 10 { "," } else { "" }))
        .collect();
    FiniteCategory::from_monoid(names, 0, table)
}

fn boolean() -> Result<FiniteCategory> {
    // elements 1, 0 under logical and
    FiniteCategory::from_monoid(vec!["1".into(), "0".into()], 0, vec![vec![0, 1], vec![1, 1]])
}

fn codiscrete(k: usize) -> Result<FiniteCategory> {
    let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let morphisms = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| Morphism {
            name: format!("{i}>{j}"),
            source: i,
            target: j,
        })
        .collect();
    let compose = (0..k * k)
        .map(|g| {
            (0..k * k)
                .map(|f| (f % k == g / k).then_some((f / k) * k + g % k))
                .collect()
        })
        .collect();
    FiniteCategory::new(objects, morphisms, (0..k).map(|i| i * k + i).collect(), compose)
}

fn interval() -> Result<FiniteCategory> {
    let m = |name: &str, source, target| Morphism {
        name: name.into(),
        source,
        target,
    };
    FiniteCategory::new(
        vec!["0".into(), "1".into()],
        vec![m("0>0", 0, 0), m("0>1", 0, 1), m("1>1", 1, 1)],
        vec![0, 2],
        vec![
            vec![Some(0), None, None],
            vec![Some(1), None, None],
            vec![None, Some(1), Some(2)],
        ],
    )
}

/// One of the built-in example categories, by name (see [`BUILTINS`]).
pub fn builtin(name: &str) -> Result<FiniteCategory> {
    let param = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse(format!("bad parameter in builtin {name:?}")))
    };
    match name.split_once(':') {
        None => match name {
            "trivial" => cyclic(1),
            "boolean" => boolean(),
            "interval" => interval(),
            _ => Err(Error::Parse(format!("unknown builtin {name:?}"))),
        },
        Some(("cyclic", n)) => cyclic(param(n)?),
        Some(("symmetric", n)) => {
            let n = param(n)?;
            if n > 5 {
                return Err(Error::Parse("symmetric groups are limited to n <= 5".into()));
            }
            symmetric(n)
        }
        Some(("codiscrete", k)) => codiscrete(param(k)?),
        _ => Err(Error::Parse(format!("unknown builtin {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in ["trivial", "boolean", "interval", "cyclic:3", "symmetric:3", "codiscrete:3"] {
            builtin(name).unwrap();
        }
        assert_eq!(builtin("symmetric:3").unwrap().morphisms().len(), 6);
        assert!(builtin("cyclic:0").is_err());
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn invertibility() {
        assert!(builtin("cyclic:4").unwrap().is_groupoid());
        assert!(builtin("codiscrete:3").unwrap().is_groupoid());
        let b = builtin("boolean").unwrap();
        assert!(b.is_invertible(0) && !b.is_invertible(1));
        assert!(!builtin("interval").unwrap().is_groupoid());
    }

    #[test]
    fn symmetric_group_is_not_commutative() {
        let s = builtin("symmetric:3").unwrap();
        let m = s.morphisms().len();
        assert!((0..m).any(|a| (0..m).any(|b| s.compose(a, b) != s.compose(b, a))));
    }

    #[test]
    fn rejects_non_associative_table() {
        // a·a = e, a·b = a, ... chosen so (a·a)·b != a·(a·b)
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        let err = FiniteCategory::from_monoid(vec!["e".into(), "a".into(), "b".into()], 0, t).unwrap_err();
        assert!(matches!(err, Error::InvalidCategory(_)));
    }

    #[test]
    fn category_file_fills_identity_composites() {
        let file: CategoryFile = serde_json::from_str(
            r#"{"objects":["a","b"],
                "morphisms":[{"name":"1a","source":"a","target":"a"},
                             {"name":"1b","source":"b","target":"b"},
                             {"name":"f","source":"a","target":"b"}],
                "identities":["1a","1b"]}"#,
        )
        .unwrap();
        let c = file.build().unwrap();
        assert_eq!(c.compose(1, 2), Some(2));
    }
}
