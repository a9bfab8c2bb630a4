#![allow(dead_code)]

use fuzznorm::lattice::FiniteLattice;

/// Every t-norm table on `l`, found without the library enumerator: all
/// tables when `free` is set, otherwise all fillings of the interior with
/// the boundary rows fixed by `T(1,x) = x` and `T(0,x) = 0`. Tables are
/// row-major over element indices, sorted.
pub fn brute_force_tnorms(l: &FiniteLattice, free: bool) -> Vec<Vec<usize>> {
    let n = l.len();
    let (bot, top) = (l.bottom(), l.top());
    let cells: Vec<usize> = (0..n * n)
        .filter(|&ij| free || ![bot, top].contains(&(ij / n)) && ![bot, top].contains(&(ij % n)))
        .collect();
    let mut base = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            base[x * n + y] = if x == top {
                y
            } else if y == top {
                x
            } else {
                bot
            };
        }
    }
    let total = n.pow(cells.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut t = base.clone();
        let mut c = code;
        for &ij in &cells {
            t[ij] = c % n;
            c /= n;
        }
        if is_tnorm(l, &t) {
            out.push(t);
        }
    }
    out.sort();
    out
}

fn is_tnorm(l: &FiniteLattice, t: &[usize]) -> bool {
    let n = l.len();
    let at = |x: usize, y: usize| t[x * n + y];
    for x in 0..n {
        if at(l.top(), x) != x || at(x, l.top()) != x {
            return false;
        }
        for y in 0..n {
            if at(x, y) != at(y, x) {
                return false;
            }
            for z in 0..n {
                if at(at(x, y), z) != at(x, at(y, z)) {
                    return false;
                }
                if l.leq(y, z) && !l.leq(at(x, y), at(x, z)) {
                    return false;
                }
            }
        }
    }
    true
}
