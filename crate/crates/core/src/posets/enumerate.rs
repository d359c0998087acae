//! Labeled posets on a small ground set.
//!
//! A poset on `{0, .., k}` restricts to a unique poset on `{0, .., k-1}`,
//! and the new point `k` is determined by its strict down-set `D` and
//! up-set `U`. Those come from a down-closed `D` and an up-closed `U`
//! with `d < u` for all `d in D`, `u in U`. Growing one point at a time
//! therefore produces every labeled poset exactly once.

use super::{default_names, Poset};
use crate::error::{Error, Result};

/// Largest ground set accepted by [`enumerate_posets`].
pub const MAX_ENUMERATION_SIZE: usize = 6;

// above[i] is the bitmask of j with i < j
type Strict = Vec<u8>;

fn down_closed(r: &Strict, set: u8) -> bool {
    (0..r.len()).all(|i| {
        set & (1 << i) == 0 || (0..r.len()).all(|j| r[j] & (1 << i) == 0 || set & (1 << j) != 0)
    })
}

fn up_closed(r: &Strict, set: u8) -> bool {
    (0..r.len()).all(|i| set & (1 << i) == 0 || r[i] & !set == 0)
}

/// Every admissible `(D, U)` for a new point on top of `r`.
fn extensions(r: &Strict) -> Vec<(u8, u8)> {
    let k = r.len();
    let full = 1u16 << k;
    let downs: Vec<u8> = (0..full)
        .map(|s| s as u8)
        .filter(|&s| down_closed(r, s))
        .collect();
    let ups: Vec<u8> = (0..full)
        .map(|s| s as u8)
        .filter(|&s| up_closed(r, s))
        .collect();
    let mut out = Vec::new();
    for &d in &downs {
        for &u in &ups {
            if d & u != 0 {
                continue;
            }
            let compatible = (0..k).all(|i| d & (1 << i) == 0 || r[i] & u == u);
            if compatible {
                out.push((d, u));
            }
        }
    }
    out
}

fn extend(r: &Strict, d: u8, u: u8) -> Strict {
    let k = r.len();
    let mut next: Strict = r.clone();
    for (i, row) in next.iter_mut().enumerate() {
        if d & (1 << i) != 0 {
            *row |= 1 << k;
        }
    }
    next.push(u);
    next
}

fn level(n: usize) -> Vec<Strict> {
    let mut current: Vec<Strict> = vec![Vec::new()];
    for _ in 0..n {
        current = current
            .iter()
            .flat_map(|r| extensions(r).into_iter().map(move |(d, u)| extend(r, d, u)))
            .collect();
    }
    current
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeCap {
            requested: n,
            cap: MAX_ENUMERATION_SIZE,
        });
    }
    Ok(())
}

/// Number of labeled posets on `n` points, counted without building them.
pub fn count_posets(n: usize) -> Result<u64> {
    check_size(n)?;
    if n == 0 {
        return Ok(1);
    }
    Ok(level(n - 1)
        .iter()
        .map(|r| extensions(r).len() as u64)
        .sum())
}

/// Lazy stream of all labeled posets on the points `1..=n`.
pub struct PosetStream {
    base: std::vec::IntoIter<Strict>,
    current: Option<(Strict, std::vec::IntoIter<(u8, u8)>)>,
    names: Vec<String>,
    empty_pending: bool,
}

impl Iterator for PosetStream {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Poset::new(Vec::new(), &[]).expect("empty poset"));
        }
        loop {
            if let Some((r, ext)) = &mut self.current {
                if let Some((d, u)) = ext.next() {
                    let full = extend(r, d, u);
                    let rel: Vec<(usize, usize)> = full
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &row)| {
                            (0..full.len())
                                .filter(move |&j| row & (1 << j) != 0)
                                .map(move |j| (i, j))
                        })
                        .collect();
                    return Some(Poset::new(self.names.clone(), &rel).expect("valid strict order"));
                }
            }
            let r = self.base.next()?;
            let ext = extensions(&r).into_iter();
            self.current = Some((r, ext));
        }
    }
}

pub fn enumerate_posets(n: usize) -> Result<PosetStream> {
    check_size(n)?;
    let base = if n == 0 { Vec::new() } else { level(n - 1) };
    Ok(PosetStream {
        base: base.into_iter(),
        current: None,
        names: default_names(n),
        empty_pending: n == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Strict orders on `n` points by brute force over all relations.
    fn brute_force(n: usize) -> u64 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut count = 0;
        for mask in 0u32..(1 << pairs.len()) {
            let mut lt = vec![vec![false; n]; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                lt[i][j] = mask & (1 << k) != 0;
            }
            let antisymmetric = (0..n).all(|i| (0..n).all(|j| !(lt[i][j] && lt[j][i])));
            let transitive =
                (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(lt[i][j] && lt[j][k]) || lt[i][k])));
            if antisymmetric && transitive {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 0..=4 {
            assert_eq!(count_posets(n).unwrap(), brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn known_counts() {
        let expected = [1, 1, 3, 19, 219, 4231, 130023];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(count_posets(n).unwrap(), e);
        }
    }

    #[test]
    fn stream_is_duplicate_free() {
        for n in 0..=4 {
            let mut seen = HashSet::new();
            for p in enumerate_posets(n).unwrap() {
                let mut rel: Vec<(String, String)> = p
                    .relations()
                    .into_iter()
                    .map(|(i, j)| (p.names()[i].clone(), p.names()[j].clone()))
                    .collect();
                rel.sort();
                assert!(seen.insert(rel));
            }
            assert_eq!(seen.len() as u64, count_posets(n).unwrap());
        }
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            count_posets(7),
            Err(Error::SizeCap {
                requested: 7,
                cap: 6
            })
        );
        assert!(enumerate_posets(7).is_err());
    }
}
