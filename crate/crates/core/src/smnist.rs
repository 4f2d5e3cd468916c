//! SMNIST dot patterns and their numbering.
//!
//! Patterns are enumerated side by side (`l = 2, 3, …`), within a side by
//! dot count (`k = 1 … l²−1`), and within an `(l, k)` block by the
//! lexicographic order of the dot pixel indices. Pixel `i` of an `l × l`
//! grid sits at `(i mod l, i div l)`. Code 1 is the first pattern.

use std::fmt;

use thiserror::Error;

use crate::num::CodeInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmnistError {
    #[error("pattern codes start at 1")]
    ZeroCode,
    #[error("grid side must be at least 2, got {0}")]
    Side(u32),
    #[error("a side-{side} pattern holds 1 to {} dots, got {count}", side * side - 1)]
    DotCount { side: u32, count: usize },
    #[error("dot ({x},{y}) lies outside a {side}×{side} grid")]
    OutOfRange { side: u32, x: u32, y: u32 },
    #[error("dot ({x},{y}) appears twice")]
    Duplicate { x: u32, y: u32 },
    #[error("code does not fit the chosen integer type")]
    Overflow,
}

/// A set of dots on an `l × l` grid.
///
/// Dots are kept in pixel-index order, so equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmnistPattern {
    side: u32,
    pixels: Vec<u32>,
}

impl SmnistPattern {
    pub fn new(side: u32, dots: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, SmnistError> {
        if side < 2 {
            return Err(SmnistError::Side(side));
        }
        let mut pixels = Vec::new();
        for (x, y) in dots {
            if x >= side || y >= side {
                return Err(SmnistError::OutOfRange { side, x, y });
            }
            pixels.push(y * side + x);
        }
        pixels.sort_unstable();
        if let Some(w) = pixels.windows(2).find(|w| w[0] == w[1]) {
            return Err(SmnistError::Duplicate { x: w[0] % side, y: w[0] / side });
        }
        let count = pixels.len();
        if count == 0 || count as u64 >= side as u64 * side as u64 {
            return Err(SmnistError::DotCount { side, count });
        }
        Ok(SmnistPattern { side, pixels })
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// Pixel indices, ascending.
    pub fn pixels(&self) -> &[u32] {
        &self.pixels
    }

    /// Dot coordinates in pixel-index order.
    pub fn dots(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pixels.iter().map(move |&i| (i % self.side, i / self.side))
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        x < self.side && y < self.side && self.pixels.binary_search(&(y * self.side + x)).is_ok()
    }
}

impl fmt::Display for SmnistPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.dots().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "}}")
    }
}

/// Pascal's triangle up to row `n`; `None` marks entries too large for `T`.
struct Binomials<T> {
    rows: Vec<Vec<Option<T>>>,
}

impl<T: CodeInt> Binomials<T> {
    fn new(n: u32) -> Self {
        let mut rows: Vec<Vec<Option<T>>> = Vec::with_capacity(n as usize + 1);
        rows.push(vec![Some(T::one())]);
        for a in 1..=n as usize {
            let prev = &rows[a - 1];
            let mut row = Vec::with_capacity(a + 1);
            row.push(Some(T::one()));
            for b in 1..a {
                row.push(match (&prev[b - 1], &prev[b]) {
                    (Some(x), Some(y)) => x.checked_add(y),
                    _ => None,
                });
            }
            row.push(Some(T::one()));
            rows.push(row);
        }
        Binomials { rows }
    }

    fn get(&self, n: u32, k: u32) -> Option<T> {
        if k > n {
            return Some(T::zero());
        }
        self.rows[n as usize][k as usize].clone()
    }
}

fn side_cells(l: u32) -> Result<u32, SmnistError> {
    l.checked_mul(l).ok_or(SmnistError::Overflow)
}

/// Number of codes in the block of side `l`: `2^(l²) − 2`, `None` on overflow.
fn side_block_size<T: CodeInt>(l: u32) -> Option<T> {
    T::checked_pow2(l.checked_mul(l)?)?.checked_sub(&T::two())
}

/// Code of the first pattern with side `l` and `k` dots.
pub fn block_start<T: CodeInt>(l: u32, k: u32) -> Result<T, SmnistError> {
    if l < 2 {
        return Err(SmnistError::Side(l));
    }
    let n = side_cells(l)?;
    if k == 0 || k >= n {
        return Err(SmnistError::DotCount { side: l, count: k as usize });
    }
    start_in(&Binomials::<T>::new(n), l, k)
}

fn start_in<T: CodeInt>(binom: &Binomials<T>, l: u32, k: u32) -> Result<T, SmnistError> {
    let n = l * l;
    let mut start = T::one();
    for side in 2..l {
        let size = side_block_size::<T>(side).ok_or(SmnistError::Overflow)?;
        start = start.checked_add(&size).ok_or(SmnistError::Overflow)?;
    }
    for j in 1..k {
        let c = binom.get(n, j).ok_or(SmnistError::Overflow)?;
        start = start.checked_add(&c).ok_or(SmnistError::Overflow)?;
    }
    Ok(start)
}

/// `count <= rank`, where `None` stands for a count larger than any `T`.
fn fits<T: CodeInt>(count: &Option<T>, rank: &T) -> bool {
    matches!(count, Some(c) if c <= rank)
}

fn unrank<T: CodeInt>(binom: &Binomials<T>, n: u32, k: u32, mut rank: T) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut next = 0u32;
    for i in 0..k {
        let mut c = next;
        loop {
            let count = binom.get(n - c - 1, k - i - 1);
            if fits(&count, &rank) {
                rank = rank - count.unwrap();
                c += 1;
            } else {
                out.push(c);
                next = c + 1;
                break;
            }
        }
    }
    out
}

fn rank<T: CodeInt>(binom: &Binomials<T>, n: u32, pixels: &[u32]) -> Result<T, SmnistError> {
    let k = pixels.len() as u32;
    let mut r = T::zero();
    let mut start = 0;
    for (i, &c) in pixels.iter().enumerate() {
        for j in start..c {
            let count = binom.get(n - j - 1, k - i as u32 - 1).ok_or(SmnistError::Overflow)?;
            r = r.checked_add(&count).ok_or(SmnistError::Overflow)?;
        }
        start = c + 1;
    }
    Ok(r)
}

/// The pattern numbered `p`.
pub fn pattern_of<T: CodeInt>(p: &T) -> Result<SmnistPattern, SmnistError> {
    if p.is_zero() {
        return Err(SmnistError::ZeroCode);
    }
    let mut rem = p.clone() - T::one();
    let mut l = 2u32;
    loop {
        match side_block_size::<T>(l) {
            Some(size) if rem >= size => {
                rem = rem - size;
                l = l.checked_add(1).ok_or(SmnistError::Overflow)?;
            }
            _ => break,
        }
    }
    let n = side_cells(l)?;
    let binom = Binomials::<T>::new(n);
    for k in 1..n {
        let count = binom.get(n, k);
        if fits(&count, &rem) {
            rem = rem - count.unwrap();
        } else {
            let pixels = unrank(&binom, n, k, rem);
            return Ok(SmnistPattern { side: l, pixels });
        }
    }
    unreachable!("the side block holds every remaining rank")
}

/// Inverse of [`pattern_of`].
pub fn code_of_pattern<T: CodeInt>(pat: &SmnistPattern) -> Result<T, SmnistError> {
    let l = pat.side;
    let n = side_cells(l)?;
    let k = pat.pixels.len() as u32;
    if k == 0 || k >= n {
        return Err(SmnistError::DotCount { side: l, count: pat.pixels.len() });
    }
    let binom = Binomials::<T>::new(n);
    let start = start_in(&binom, l, k)?;
    let r = rank(&binom, n, &pat.pixels)?;
    start.checked_add(&r).ok_or(SmnistError::Overflow)
}
