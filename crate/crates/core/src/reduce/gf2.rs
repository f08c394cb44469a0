//! Bit-packed Gauss-Jordan elimination over GF(2).
//!
//! Each row stores the matrix part followed by the transform part in one
//! bitset, so a row operation is a single XOR over the words.

use super::{Echelon, Matrix};
use crate::field::Gf2;

#[inline]
fn bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

#[inline]
fn set(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

/// Same result as `rref_generic`, same pivot rule.
pub fn rref_packed(m: &Matrix<Gf2>, track: bool) -> Echelon<Gf2> {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let width = ncols + if track { nrows } else { 0 };
    let words = width.div_ceil(64).max(1);

    let mut rows: Vec<Vec<u64>> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut b = vec![0u64; words];
            for (j, x) in r.iter().enumerate() {
                if x.0 {
                    set(&mut b, j);
                }
            }
            if track {
                set(&mut b, ncols + i);
            }
            b
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(rank, p);
        let w0 = c / 64;
        let (before, rest) = rows.split_at_mut(rank);
        let (prow, after) = rest.split_first_mut().expect("rank < nrows");
        for r in before.iter_mut().chain(after.iter_mut()) {
            if bit(r, c) {
                for (a, b) in r[w0..].iter_mut().zip(&prow[w0..]) {
                    *a ^= b;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);

    let unpack = |r: &[u64], from: usize, len: usize| -> Vec<Gf2> { (from..from + len).map(|j| Gf2(bit(r, j))).collect() };
    let reduced = rows.iter().map(|r| unpack(r, 0, ncols)).collect();
    let transform = track.then(|| rows.iter().map(|r| unpack(r, ncols, nrows)).collect());
    Echelon::new(reduced, transform, pivots, ncols)
}
