//! Brute-force reference implementations on plain strings and vectors. Nothing here
//! calls the library's algorithms, so agreement is evidence rather than tautology.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Whether `w` is a concatenation of words from `gens` (ε always is).
pub fn member(gens: &BTreeSet<String>, w: &str) -> bool {
    fn go(gens: &BTreeSet<String>, w: &str, memo: &mut BTreeMap<usize, bool>, at: usize) -> bool {
        if at == w.len() {
            return true;
        }
        if let Some(&hit) = memo.get(&at) {
            return hit;
        }
        let ok = gens
            .iter()
            .filter(|g| !g.is_empty())
            .any(|g| w[at..].starts_with(g.as_str()) && go(gens, w, memo, at + g.len()));
        memo.insert(at, ok);
        ok
    }
    go(gens, w, &mut BTreeMap::new(), 0)
}

/// Every factor of every word, ε included.
pub fn subwords(words: &[String]) -> BTreeSet<String> {
    let mut out = BTreeSet::from([String::new()]);
    for w in words {
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                out.insert(w[i..j].to_string());
            }
        }
    }
    out
}

/// All `v` with some `w = s v u v s'`, flanks in `<gens>`, by scanning every position quadruple.
pub fn extract_x(gens: &BTreeSet<String>, words: &[String]) -> BTreeSet<String> {
    let mut out = BTreeSet::from([String::new()]);
    for w in words {
        let n = w.len();
        for i in 0..=n {
            if !member(gens, &w[..i]) {
                continue;
            }
            for j in i + 1..=n {
                let v = &w[i..j];
                for k in j..=n {
                    let l = k + v.len();
                    if l <= n && &w[k..l] == v && member(gens, &w[l..]) {
                        out.insert(v.to_string());
                    }
                }
            }
        }
    }
    out
}

/// All `v` with `w_i = s v t`, `w_j = t' v s'` for distinct indices, flanks in `<gens>`.
pub fn extract_y(gens: &BTreeSet<String>, words: &[String]) -> BTreeSet<String> {
    let mut out = BTreeSet::from([String::new()]);
    for (i, wi) in words.iter().enumerate() {
        for (j, wj) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            for s in 0..=wi.len() {
                if !member(gens, &wi[..s]) {
                    continue;
                }
                for e in s + 1..=wi.len() {
                    let v = &wi[s..e];
                    if wj.len() < v.len() {
                        continue;
                    }
                    let hit = (0..=wj.len() - v.len())
                        .any(|p| &wj[p..p + v.len()] == v && member(gens, &wj[p + v.len()..]));
                    if hit {
                        out.insert(v.to_string());
                    }
                }
            }
        }
    }
    out
}

/// The closure submonoid restricted to the subwords of `words`: iterate the two rules,
/// tracking the full set of generated subwords, until nothing changes.
pub fn closure_members(words: &[String]) -> BTreeSet<String> {
    let pool = subwords(words);
    let mut gens: BTreeSet<String> = BTreeSet::new();
    loop {
        let mut next = gens.clone();
        next.extend(extract_x(&gens, words));
        next.extend(extract_y(&gens, words));
        next.remove("");
        let members: BTreeSet<String> = pool.iter().filter(|v| member(&next, v)).cloned().collect();
        let before: BTreeSet<String> = pool.iter().filter(|v| member(&gens, v)).cloned().collect();
        if members == before {
            return members;
        }
        gens = next;
    }
}

/// `(p, u, s)` with `p` the longest prefix and `s` the longest suffix of `w` in `<gens>`.
pub fn longest_prefix_suffix(gens: &BTreeSet<String>, w: &str) -> (String, String) {
    let p = (0..=w.len()).rev().find(|&i| member(gens, &w[..i])).unwrap();
    let s = (0..=w.len()).find(|&j| member(gens, &w[j..])).unwrap();
    (w[..p].to_string(), w[s..].to_string())
}

/// Connected components of the undirected graph with an edge `x — (x)g` per generator pair.
pub fn union_find_blocks(ground: &[usize], gens: &[Vec<(usize, usize)>]) -> BTreeSet<BTreeSet<usize>> {
    let mut parent: BTreeMap<usize, usize> = ground.iter().map(|&x| (x, x)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for g in gens {
        for &(x, y) in g {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent.insert(rx, ry);
            }
        }
    }
    let mut classes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &x in ground {
        let r = find(&mut parent, x);
        classes.entry(r).or_default().insert(x);
    }
    classes.into_values().collect()
}

/// `x ↦ ((x)f)g` over a word, maps as image vectors.
pub fn eval_word(w: &str, a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len())
        .map(|x| w.chars().fold(x, |cur, c| if c == 'a' { a[cur] } else { b[cur] }))
        .collect()
}

/// Every map on `m` points, lexicographically ordered.
pub fn all_maps(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Lexicographically least `(a, b)` solving every `w_i = f_i`, by trying all pairs.
pub fn solve_unpruned(words: &[String], targets: &[Vec<usize>], m: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let maps = all_maps(m);
    for a in &maps {
        for b in &maps {
            if words.iter().zip(targets).all(|(w, t)| eval_word(w, a, b) == *t) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}
