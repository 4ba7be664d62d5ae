//! Generators for standard small categories.

use std::collections::HashMap;

use super::{FinCat, Morphism, Skeleton};
use crate::error::{Error, Result};

pub const FIXTURE_NAMES: &[&str] =
    &["terminal", "discrete2", "arrow", "walking-iso", "bz2", "bz3", "chain1", "chain2", "chain3", "span", "cospan"];

pub fn standard_example(name: &str) -> Result<FinCat> {
    match name {
        "terminal" => Ok(terminal()),
        "discrete2" => Ok(discrete(2)),
        "arrow" => Ok(arrow()),
        "walking-iso" => Ok(walking_iso()),
        "bz2" => cyclic_group(2),
        "bz3" => cyclic_group(3),
        "chain1" => chain_poset(1),
        "chain2" => chain_poset(2),
        "chain3" => chain_poset(3),
        "span" => poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]),
        "cospan" => poset(&["a", "b", "c"], &[("a", "c"), ("b", "c")]),
        _ => Err(Error::UnknownFixture(name.into())),
    }
}

fn identities_only(objects: Vec<String>) -> (Vec<Morphism>, Vec<u32>) {
    let morphisms =
        objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("id_{o}"), src: i as u32, tgt: i as u32 }).collect();
    (morphisms, (0..objects.len() as u32).collect())
}

pub fn terminal() -> FinCat {
    discrete_named(vec!["*".into()])
}

pub fn discrete(n: usize) -> FinCat {
    discrete_named((0..n).map(|i| i.to_string()).collect())
}

fn discrete_named(objects: Vec<String>) -> FinCat {
    let (morphisms, identities) = identities_only(objects.clone());
    FinCat::construct(Skeleton { objects, morphisms, identities }, |g, _| Ok(g)).expect("discrete category")
}

/// The poset 0 → 1.
pub fn arrow() -> FinCat {
    chain_poset(1).expect("arrow")
}

/// Objects a, b with mutually inverse i: a → b and j: b → a.
pub fn walking_iso() -> FinCat {
    let objects = vec!["a".to_string(), "b".to_string()];
    let mut morphisms = identities_only(objects.clone()).0;
    morphisms.push(Morphism { name: "i".into(), src: 0, tgt: 1 });
    morphisms.push(Morphism { name: "j".into(), src: 1, tgt: 0 });
    // 0 = id_a, 1 = id_b, 2 = i, 3 = j
    FinCat::construct(Skeleton { objects, morphisms, identities: vec![0, 1] }, |g, f| {
        Ok(match (g, f) {
            (0 | 1, f) => f,
            (g, 0 | 1) => g,
            (3, 2) => 0,
            (2, 3) => 1,
            _ => unreachable!(),
        })
    })
    .expect("walking isomorphism")
}

/// The chain 0 < 1 < … < n; the morphism i → j (i < j) is named `i<j`.
pub fn chain_poset(n: usize) -> Result<FinCat> {
    let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let relation: Vec<(&str, &str)> =
        (0..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).map(|(i, j)| (&*objects[i], &*objects[j])).collect();
    let names: Vec<&str> = objects.iter().map(String::as_str).collect();
    poset(&names, &relation)
}

/// The poset generated by `less` (reflexive-transitive closure must be antisymmetric).
/// The morphism a → b (a ≠ b) is named `a<b`.
pub fn poset(elements: &[&str], less: &[(&str, &str)]) -> Result<FinCat> {
    let n = elements.len();
    let pos: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in less {
        let (a, b) = (
            *pos.get(a).ok_or_else(|| Error::ObjectNotFound(a.into()))?,
            *pos.get(b).ok_or_else(|| Error::ObjectNotFound(b.into()))?,
        );
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let objects: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
    let (mut morphisms, identities) = identities_only(objects.clone());
    let mut index = HashMap::new();
    for i in 0..n {
        index.insert((i, i), i as u32);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] {
                if leq[j][i] {
                    return Err(Error::MalformedCategory(format!("{} and {} are equivalent", elements[i], elements[j])));
                }
                index.insert((i, j), morphisms.len() as u32);
                morphisms.push(Morphism { name: format!("{}<{}", elements[i], elements[j]), src: i as u32, tgt: j as u32 });
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src as usize, m.tgt as usize)).collect();
    FinCat::construct(Skeleton { objects, morphisms, identities }, |g, f| {
        Ok(index[&(ends[f as usize].0, ends[g as usize].1)])
    })
}

/// ℤ/n as a one-object category with elements e, g, g^2, …
pub fn cyclic_group(n: usize) -> Result<FinCat> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    monoid_from_table(&names, &table)
}

/// One-object category from a multiplication table `table[i][j] = names[i]∘names[j]`;
/// element 0 must be the unit. Associativity is checked.
pub fn monoid_from_table(names: &[String], table: &[Vec<usize>]) -> Result<FinCat> {
    let n = names.len();
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::MalformedCategory("multiplication table has the wrong shape".into()));
    }
    let morphisms = names.iter().map(|m| Morphism { name: m.clone(), src: 0, tgt: 0 }).collect();
    let sk = Skeleton { objects: vec!["*".into()], morphisms, identities: vec![0] };
    FinCat::assemble(sk, |g, f| Ok(table[g as usize][f as usize] as u32), true)
}

/// Free category on a finite quiver. Paths are named by their edges in composition
/// order joined with `.`, so `h.g` is h∘g. Directed cycles are rejected.
pub fn free_category(objects: &[&str], edges: &[(&str, &str, &str)]) -> Result<FinCat> {
    let pos: HashMap<&str, u32> = objects.iter().enumerate().map(|(i, &o)| (o, i as u32)).collect();
    let obj = |o: &str| pos.get(o).copied().ok_or_else(|| Error::ObjectNotFound(o.into()));
    let mut out: Vec<Vec<(usize, u32)>> = vec![Vec::new(); objects.len()];
    for (k, &(_, s, t)) in edges.iter().enumerate() {
        out[obj(s)? as usize].push((k, obj(t)?));
    }
    // Cycle detection by DFS colouring.
    let mut colour = vec![0u8; objects.len()];
    fn visit(v: usize, out: &[Vec<(usize, u32)>], colour: &mut [u8], names: &[&str]) -> Result<()> {
        colour[v] = 1;
        for &(_, t) in &out[v] {
            match colour[t as usize] {
                1 => return Err(Error::CyclicQuiver(names[t as usize].into())),
                0 => visit(t as usize, out, colour, names)?,
                _ => {}
            }
        }
        colour[v] = 2;
        Ok(())
    }
    for v in 0..objects.len() {
        if colour[v] == 0 {
            visit(v, &out, &mut colour, objects)?;
        }
    }
    let names: Vec<String> = objects.iter().map(|o| o.to_string()).collect();
    let (mut morphisms, identities) = identities_only(names.clone());
    // Paths as edge lists in traversal order (first edge first).
    let mut paths: Vec<Vec<usize>> = (0..objects.len()).map(|_| Vec::new()).collect();
    let mut frontier: Vec<(Vec<usize>, u32, u32)> = Vec::new();
    for (k, &(_, s, t)) in edges.iter().enumerate() {
        frontier.push((vec![k], obj(s)?, obj(t)?));
    }
    while let Some((path, s, t)) = frontier.pop() {
        for &(k, t2) in &out[t as usize] {
            let mut p = path.clone();
            p.push(k);
            frontier.push((p, s, t2));
        }
        let name = path.iter().rev().map(|&k| edges[k].0).collect::<Vec<_>>().join(".");
        morphisms.push(Morphism { name, src: s, tgt: t });
        paths.push(path);
    }
    let index: HashMap<Vec<usize>, u32> = paths.iter().enumerate().skip(objects.len()).map(|(i, p)| (p.clone(), i as u32)).collect();
    let n_obj = objects.len();
    FinCat::construct(Skeleton { objects: names, morphisms, identities }, |g, f| {
        if (g as usize) < n_obj {
            return Ok(f);
        }
        if (f as usize) < n_obj {
            return Ok(g);
        }
        let mut p = paths[f as usize].clone();
        p.extend_from_slice(&paths[g as usize]);
        Ok(index[&p])
    })
}
