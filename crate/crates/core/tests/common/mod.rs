#![allow(dead_code)]

use std::path::PathBuf;

use qapga::{Instance, Permutation};

/// Objective in its 0/1 form: sum over i, j, k, l of f[i][k] d[j][l] x[i][j] x[k][l],
/// with x the assignment matrix induced by `p`. Independent of the library's
/// permutation-indexed evaluation.
pub fn quadruple_sum(inst: &Instance, p: &Permutation) -> i128 {
    let n = inst.size();
    let mut x = vec![vec![0i128; n]; n];
    for (i, &j) in p.as_slice().iter().enumerate() {
        x[i][j] = 1;
    }
    let mut total = 0i128;
    for i in 0..n {
        for j in 0..n {
            if x[i][j] == 0 {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    total += i128::from(inst.flow(i, k)) * i128::from(inst.dist(j, l)) * x[i][j] * x[k][l];
                }
            }
        }
    }
    total
}

/// Every permutation of 0..n, by recursion.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Where QAPLIB `.dat` files are looked up: `$QAPLIB_DIR`, else `data/qaplib`.
pub fn qaplib_dir() -> PathBuf {
    std::env::var_os("QAPLIB_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| data_dir().join("qaplib"))
}
