//! Enumeration of `{-1, 0, 1}`-combinations in lexicographic order.
//!
//! Sign vectors are ordered lexicographically with `-1 < 0 < +1`, the first
//! position most significant. A vector is identified by its rank in that
//! order, i.e. the base-3 number whose digits are `coefficient + 1`.

use std::ops::ControlFlow;

use crate::keys::Key;

pub(crate) fn pow3(n: usize) -> u64 {
    3u64.pow(n as u32)
}

/// Rank of the all-zero vector of length `len`.
pub(crate) fn zero_rank(len: usize) -> u64 {
    (pow3(len) - 1) / 2
}

pub(crate) fn decode_rank(mut rank: u64, len: usize) -> Vec<i8> {
    let mut out = vec![0i8; len];
    for slot in out.iter_mut().rev() {
        *slot = (rank % 3) as i8 - 1;
        rank /= 3;
    }
    out
}

/// Calls `f(rank, value)` for every sign vector over `keys`, in lexicographic
/// order, updating the value incrementally.
pub(crate) fn for_each_combination<K: Key, B>(
    keys: &[K],
    zero: &K,
    mut f: impl FnMut(u64, &K) -> ControlFlow<B>,
) -> Option<B> {
    let n = keys.len();
    let mut digits = vec![0u8; n];
    let mut value = keys.iter().fold(zero.clone(), |acc, k| acc.sub(k));
    let total = pow3(n);
    let mut rank = 0u64;
    loop {
        if let ControlFlow::Break(b) = f(rank, &value) {
            return Some(b);
        }
        rank += 1;
        if rank == total {
            return None;
        }
        // odometer step from the least significant (last) position
        let mut j = n - 1;
        loop {
            if digits[j] < 2 {
                digits[j] += 1;
                value = value.add(&keys[j]);
                break;
            }
            digits[j] = 0;
            value = value.sub(&keys[j]).sub(&keys[j]);
            j -= 1;
        }
    }
}
