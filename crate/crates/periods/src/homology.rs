//! Homology of the sheeted surface from branch-point permutations, with a
//! symplectic basis and explicit integration cycles.
//!
//! The CW model: one vertex per sheet over the base point, one vertex per
//! cycle of each branch permutation (the ramification points), one edge per
//! (branch point, sheet) -- the lift of the radial arc -- and one face per
//! sheet (the cut sphere). Walking a face boundary clockwise around the
//! star of arcs gives the gluing word
//!     prod_{i = m..1} D(i, l) D(i, sigma_i^{-1} l)^{-1},  l <- sigma_i^{-1} l,
//! whose closure forces sigma_m ... sigma_1 = id (checked upstream).
//!
//! Faces are spliced into a single polygon along shared edges (the cotree),
//! spanning-tree letters are deleted (collapsing the tree is a homotopy
//! equivalence), and the remaining 2g letter pairs form a one-vertex
//! polygonal schema. The intersection pairing is read off the cyclic word
//! by the interleaving rule, then brought to the standard symplectic form J
//! by integer column/row operations. Each basis letter yields an integration
//! cycle as a sequence of "tents": go out to a branch circle on one sheet,
//! wind, come back on another.

use crate::{Error, Result};
use num_bigint::BigInt;
use ternary::bareiss;

/// One tent: out to branch `branch` on sheet `enter`, wind `winding` full
/// counterclockwise turns (negative = clockwise), return on sheet `exit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tent {
    pub branch: usize,
    pub enter: usize,
    pub exit: usize,
    pub winding: i64,
}

#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub genus: usize,
    /// Primitive cycles, one per surviving letter, as tent sequences.
    pub cycles: Vec<Vec<Tent>>,
    /// Intersection matrix of the primitive cycles.
    pub intersection: Vec<Vec<i64>>,
    /// Unimodular S with S^t K S = [[0, I], [-I, 0]]; the symplectic basis
    /// is gamma_k = sum_j S[j][k] * cycles[j].
    pub change_of_basis: Vec<Vec<i64>>,
}

fn perm_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Number of cycles of a permutation (fixed points count).
pub fn perm_cycle_count(p: &[usize]) -> usize {
    perm_cycles(p).len()
}

fn perm_cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut t = p[s];
        while t != s {
            seen[t] = true;
            c.push(t);
            t = p[t];
        }
        out.push(c);
    }
    out
}

/// Letter: edge id with a sign.
type Letter = (usize, bool); // (edge, positive?)

pub fn homology_basis(n_sheets: usize, perms: &[(usize, Vec<usize>)]) -> Result<HomologyBasis> {
    // keep only genuinely branched points
    let active: Vec<(usize, Vec<usize>)> = perms
        .iter()
        .filter(|(_, p)| p.iter().enumerate().any(|(i, &v)| i != v))
        .cloned()
        .collect();
    let m = active.len();
    if m == 0 {
        return Err(Error::Internal("no branching: not a positive-genus cover".into()));
    }
    let n = n_sheets;

    // vertices: sheets 0..n, then ramification points
    let mut ram_offset = vec![0usize; m];
    let mut cycles_of = Vec::with_capacity(m);
    let mut cycle_index = vec![vec![0usize; n]; m];
    let mut n_vertices = n;
    for (ii, (_, p)) in active.iter().enumerate() {
        ram_offset[ii] = n_vertices;
        let cs = perm_cycles(p);
        for (ci, c) in cs.iter().enumerate() {
            for &s in c {
                cycle_index[ii][s] = ci;
            }
        }
        n_vertices += cs.len();
        cycles_of.push(cs);
    }
    let n_edges = m * n;
    let edge_tail = |e: usize| e % n; // sheet vertex
    let edge_head = |e: usize| {
        let i = e / n;
        let s = e % n;
        ram_offset[i] + cycle_index[i][s]
    };

    // spanning tree by BFS over the undirected graph
    let mut parent: Vec<Option<(usize, bool)>> = vec![None; n_vertices]; // (edge, edge points away from root?)
    let mut visited = vec![false; n_vertices];
    let mut tree_edge = vec![false; n_edges];
    let mut queue = std::collections::VecDeque::new();
    visited[0] = true;
    queue.push_back(0usize);
    // adjacency
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
    for e in 0..n_edges {
        adj[edge_tail(e)].push(e);
        adj[edge_head(e)].push(e);
    }
    while let Some(v) = queue.pop_front() {
        for &e in &adj[v] {
            let (t, h) = (edge_tail(e), edge_head(e));
            let w = if t == v { h } else { t };
            if !visited[w] {
                visited[w] = true;
                tree_edge[e] = true;
                parent[w] = Some((e, t == v));
                queue.push_back(w);
            }
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(Error::MonodromyNotTransitive);
    }

    // face words, one per sheet
    let inverses: Vec<Vec<usize>> = active.iter().map(|(_, p)| perm_inverse(p)).collect();
    let mut faces: Vec<Vec<Letter>> = Vec::with_capacity(n);
    for s in 0..n {
        let mut word: Vec<Letter> = Vec::with_capacity(2 * m);
        let mut label = s;
        for i in (0..m).rev() {
            word.push((i * n + label, true));
            label = inverses[i][label];
            word.push((i * n + label, false));
        }
        if label != s {
            return Err(Error::Internal("face word does not close; boundary relation violated".into()));
        }
        faces.push(word);
    }

    // Euler characteristic sanity
    let chi = n_vertices as i64 - n_edges as i64 + n as i64;
    if (2 - chi) % 2 != 0 || chi > 2 {
        return Err(Error::Internal(format!("impossible Euler characteristic {chi}")));
    }
    let genus = ((2 - chi) / 2) as usize;

    // splice all faces into one polygon along shared edges
    let mut words = faces;
    while words.len() > 1 {
        let mut found = None;
        'search: for (wi, w) in words.iter().enumerate() {
            for (pi, &(e, _)) in w.iter().enumerate() {
                // the cotree must avoid the spanning tree, otherwise tree
                // collapse later removes the wrong letters
                if tree_edge[e] {
                    continue;
                }
                for (wj, w2) in words.iter().enumerate() {
                    if wi == wj {
                        continue;
                    }
                    if let Some(pj) = w2.iter().position(|&(e2, _)| e2 == e) {
                        found = Some((wi, pi, wj, pj));
                        break 'search;
                    }
                }
            }
        }
        let Some((wi, pi, wj, pj)) = found else {
            return Err(Error::Internal("faces do not connect (disconnected surface?)".into()));
        };
        let (sign_i, sign_j) = (words[wi][pi].1, words[wj][pj].1);
        if sign_i == sign_j {
            return Err(Error::Internal("edge met with equal signs: gluing not orientable".into()));
        }
        // rotate word j so its occurrence is first, then drop both letters
        let mut wj_word = words[wj].clone();
        wj_word.rotate_left(pj);
        let insert: Vec<Letter> = wj_word[1..].to_vec();
        let mut merged = Vec::with_capacity(words[wi].len() + insert.len() - 2);
        merged.extend_from_slice(&words[wi][..pi]);
        merged.extend_from_slice(&insert);
        merged.extend_from_slice(&words[wi][pi + 1..]);
        let (a, b) = (wi.min(wj), wi.max(wj));
        words.remove(b);
        words.remove(a);
        words.push(merged);
    }
    let polygon: Vec<Letter> = words
        .pop()
        .unwrap()
        .into_iter()
        .filter(|&(e, _)| !tree_edge[e])
        .collect();

    // surviving letters are the homology basis
    let mut letters: Vec<usize> = polygon.iter().map(|&(e, _)| e).collect();
    letters.sort_unstable();
    letters.dedup();
    if letters.len() != 2 * genus || polygon.len() != 4 * genus {
        return Err(Error::Internal(format!(
            "homology rank mismatch: {} letters, genus {}",
            letters.len(),
            genus
        )));
    }
    for &e in &letters {
        let occ: Vec<bool> = polygon.iter().filter(|&&(e2, _)| e2 == e).map(|&(_, s)| s).collect();
        if occ.len() != 2 || occ[0] == occ[1] {
            return Err(Error::Internal("letter does not appear once with each sign".into()));
        }
    }

    // Intersection numbers from the vertex rotation. The polygon corners
    // all glue to the single vertex; corner-chasing through the edge
    // identifications yields the cyclic order of edge-end germs around it.
    // Each letter-loop passes the vertex once, entering at its head germ
    // and leaving at its tail germ; two loops cross iff their germ pairs
    // interleave in the rotation, with the sign fixed by which of the other
    // loop's germs follows the first loop's exit.
    let len = polygon.len();
    let partner: Vec<usize> = (0..len)
        .map(|k| {
            (0..len)
                .find(|&j| j != k && polygon[j].0 == polygon[k].0)
                .unwrap()
        })
        .collect();
    // corner k sits between sides k-1 and k; rotating around the vertex
    // crosses the starting end of side k and lands at partner(k) + 1
    let mut rotation: Vec<(usize, bool)> = Vec::with_capacity(len); // (edge, at_tail)
    {
        let mut k = 0usize;
        for _ in 0..len {
            let (e, positive) = polygon[k];
            rotation.push((e, positive));
            k = (partner[k] + 1) % len;
        }
        if k != 0 || rotation.len() != len {
            return Err(Error::Internal("polygon corners do not close into one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for g in &rotation {
            if !seen.insert(*g) {
                return Err(Error::Internal("vertex rotation repeats a germ".into()));
            }
        }
    }
    let germ_pos = |e: usize, at_tail: bool| -> usize {
        rotation.iter().position(|&(e2, t2)| e2 == e && t2 == at_tail).unwrap()
    };
    let fwd_between = |a: usize, b: usize, q: usize| -> bool {
        if a < b {
            q > a && q < b
        } else {
            q > a || q < b
        }
    };
    let k = letters.len();
    let mut inter = vec![vec![0i64; k]; k];
    for (xi, &x) in letters.iter().enumerate() {
        let xout = germ_pos(x, true); // loop leaves along the tail germ
        let xin = germ_pos(x, false);
        for (yi, &y) in letters.iter().enumerate() {
            if xi == yi {
                continue;
            }
            let yin = germ_pos(y, false);
            let yout = germ_pos(y, true);
            let a = fwd_between(xout, xin, yin);
            let b = fwd_between(xout, xin, yout);
            inter[xi][yi] = match (a, b) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            };
        }
    }
    // sanity: skew and unimodular
    for i in 0..k {
        for j in 0..k {
            if inter[i][j] != -inter[j][i] {
                return Err(Error::Internal("intersection matrix not skew".into()));
            }
        }
    }
    let det = bareiss::det_bigint(
        inter.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
    );
    if det != BigInt::from(1) {
        return Err(Error::Internal(format!("intersection form not unimodular (det {det})")));
    }

    let smat = symplectic_reduce(&inter)?;

    // integration cycles: tree path to tail, the edge, tree path back
    let mut cycles = Vec::with_capacity(k);
    for &e in &letters {
        let mut seq: Vec<Letter> = Vec::new();
        // path root -> tail(e)
        let path_to = |v: usize| -> Vec<Letter> {
            let mut up: Vec<Letter> = Vec::new();
            let mut cur = v;
            while let Some((pe, away)) = parent[cur] {
                // moving from child toward root: traverse pe against `away`
                up.push((pe, !away));
                cur = if away {
                    // pe points away from root: tail is parent side
                    edge_tail(pe)
                } else {
                    edge_head(pe)
                };
            }
            // reverse to get root -> v, flipping directions
            up.reverse();
            up.into_iter().map(|(pe, s)| (pe, !s)).collect()
        };
        seq.extend(path_to(edge_tail(e)));
        seq.push((e, true));
        let mut back = path_to(edge_head(e));
        back.reverse();
        let back: Vec<Letter> = back.into_iter().map(|(pe, s)| (pe, !s)).collect();
        seq.extend(back);
        // cancel adjacent inverses (cyclically)
        let mut reduced: Vec<Letter> = Vec::with_capacity(seq.len());
        for l in seq {
            if let Some(&last) = reduced.last() {
                if last.0 == l.0 && last.1 != l.1 {
                    reduced.pop();
                    continue;
                }
            }
            reduced.push(l);
        }
        while reduced.len() >= 2 {
            let first = reduced[0];
            let last = *reduced.last().unwrap();
            if first.0 == last.0 && first.1 != last.1 {
                reduced.pop();
                reduced.remove(0);
            } else {
                break;
            }
        }
        cycles.push(letters_to_tents(&reduced, n, &active, &cycles_of, &cycle_index)?);
    }

    Ok(HomologyBasis { genus, cycles, intersection: inter, change_of_basis: smat })
}

/// Convert a closed signed-edge walk (alternating sheet -> ram -> sheet) to
/// tents. A +D(i,u) followed by -D(i,u') passes through the ramification
/// point of branch i; the detour winds counterclockwise by the number of
/// sigma_i steps from u to u' (shortened modulo the cycle length).
fn letters_to_tents(
    seq: &[Letter],
    n: usize,
    active: &[(usize, Vec<usize>)],
    cycles_of: &[Vec<Vec<usize>>],
    cycle_index: &[Vec<usize>],
) -> Result<Vec<Tent>> {
    if seq.len() % 2 != 0 {
        return Err(Error::Internal("odd walk length".into()));
    }
    let mut tents = Vec::with_capacity(seq.len() / 2);
    for pair in seq.chunks(2) {
        let [(e1, s1), (e2, s2)] = [pair[0], pair[1]] else { unreachable!() };
        if !(s1 && !s2) {
            return Err(Error::Internal("walk does not alternate sheet/ram".into()));
        }
        let (i1, u) = (e1 / n, e1 % n);
        let (i2, u2) = (e2 / n, e2 % n);
        if i1 != i2 {
            return Err(Error::Internal("tent pair crosses distinct branch points".into()));
        }
        if cycle_index[i1][u] != cycle_index[i1][u2] {
            return Err(Error::Internal("tent pair exits through a different ramification point".into()));
        }
        if u == u2 {
            continue; // out and straight back: trivial
        }
        let cyc = &cycles_of[i1][cycle_index[i1][u]];
        let clen = cyc.len() as i64;
        let pos_u = cyc.iter().position(|&s| s == u).unwrap() as i64;
        let pos_u2 = cyc.iter().position(|&s| s == u2).unwrap() as i64;
        let mut a = (pos_u2 - pos_u).rem_euclid(clen);
        if a > clen / 2 {
            a -= clen; // wind the short way (clockwise)
        }
        tents.push(Tent { branch: active[i1].0, enter: u, exit: u2, winding: a });
    }
    // continuity of the closed walk
    for w in 0..tents.len() {
        let next = &tents[(w + 1) % tents.len()];
        if tents[w].exit != next.enter && !tents.is_empty() {
            return Err(Error::Internal("tent chain not continuous".into()));
        }
    }
    Ok(tents)
}

/// Integer congruence reduction of a unimodular skew form to
/// J = [[0, I], [-I, 0]]: returns S with S^t K S = J.
pub fn symplectic_reduce(k: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = k.len();
    if n % 2 != 0 {
        return Err(Error::Internal("odd rank skew form".into()));
    }
    let g = n / 2;
    let mut a: Vec<Vec<i64>> = k.to_vec();
    let mut s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();

    // congruence column op: col_t += q * col_f (and matching row op)
    fn colop(a: &mut [Vec<i64>], s: &mut [Vec<i64>], t: usize, f: usize, q: i64) {
        let n = a.len();
        for r in 0..n {
            a[r][t] += q * a[r][f];
        }
        for c in 0..n {
            a[t][c] += q * a[f][c];
        }
        for r in 0..n {
            s[r][t] += q * s[r][f];
        }
    }
    fn colswap(a: &mut [Vec<i64>], s: &mut [Vec<i64>], x: usize, y: usize) {
        let n = a.len();
        for r in 0..n {
            a[r].swap(x, y);
        }
        a.swap(x, y);
        for r in 0..n {
            s[r].swap(x, y);
        }
    }

    for blk in 0..g {
        let base = 2 * blk;
        // find a minimal nonzero pivot in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in base..n {
                for j in (i + 1)..n {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                return Err(Error::Internal("skew form degenerate during reduction".into()));
            };
            colswap(&mut a, &mut s, base, i);
            let j = if j == base { i } else { j };
            colswap(&mut a, &mut s, base + 1, j);
            if a[base][base + 1] < 0 {
                colswap(&mut a, &mut s, base, base + 1);
            }
            let d = a[base][base + 1];
            // clear the two pivot rows elsewhere
            let mut clean = true;
            for c in (base + 2)..n {
                let q = -(a[base][c].div_euclid(d));
                if q != 0 {
                    colop(&mut a, &mut s, c, base + 1, q);
                }
                if a[base][c] != 0 {
                    clean = false;
                }
                let q2 = a[base + 1][c].div_euclid(d);
                if q2 != 0 {
                    colop(&mut a, &mut s, c, base, q2);
                }
                if a[base + 1][c] != 0 {
                    clean = false;
                }
            }
            if clean && d == 1 {
                break;
            }
            if clean {
                // d > 1 divides everything it met: for unimodular forms this
                // cannot persist; try again with the leftover entries
                return Err(Error::Internal(format!("non-unit pivot {d} in unimodular reduction")));
            }
            // remainders became smaller entries; loop again picks them up
        }
    }
    // a is now block diag of [[0,1],[-1,0]]; permute (a1 b1 a2 b2 ...) to
    // (a1 a2 ... b1 b2 ...)
    let mut perm = vec![0usize; n];
    for blk in 0..g {
        perm[2 * blk] = blk;
        perm[2 * blk + 1] = g + blk;
    }
    let mut s2 = vec![vec![0i64; n]; n];
    for r in 0..n {
        for c in 0..n {
            s2[r][perm[c]] = s[r][c];
        }
    }
    // verify
    let mut check = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i64;
            for p in 0..n {
                for q in 0..n {
                    acc += s2[p][i] * k[p][q] * s2[q][j];
                }
            }
            check[i][j] = acc;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if j == i + g {
                1
            } else if i == j + g {
                -1
            } else {
                0
            };
            if check[i][j] != expect {
                return Err(Error::Internal("symplectic reduction verification failed".into()));
            }
        }
    }
    Ok(s2)
}
