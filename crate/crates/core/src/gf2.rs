//! Linear algebra over the two-element field.
//!
//! Matrices act on column vectors: a map `C_i → C_{i+1}` has
//! `cols = dim C_i` and `rows = dim C_{i+1}`. Rows are stored either as
//! packed words or as sorted column-index lists, whichever suits the
//! density. All operations leave their inputs untouched.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Dense storage is used above this fraction of nonzero entries.
pub const DENSE_DENSITY: f64 = 0.05;
/// Dense storage is always used at or below this many columns.
pub const DENSE_MAX_SMALL_COLS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Dense { words: usize, data: Vec<u64> },
    Sparse(Vec<Vec<u32>>),
}

#[derive(Debug, Clone)]
pub struct SparseBitMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Sparse,
}

fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

fn prefers_dense(rows: usize, cols: usize, nnz: usize) -> bool {
    if cols <= DENSE_MAX_SMALL_COLS {
        return true;
    }
    let cells = rows as f64 * cols as f64;
    cells > 0.0 && nnz as f64 / cells > DENSE_DENSITY
}

/// Symmetric difference of two sorted index lists.
fn xor_sorted_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

impl SparseBitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rows(rows, cols, vec![Vec::new(); rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, n, (0..n as u32).map(|i| vec![i]).collect())
    }

    /// Builds from `(row, col)` entries; repeated entries cancel in pairs.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(u32, u32)]) -> Self {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); rows];
        for &(r, c) in entries {
            assert!((r as usize) < rows && (c as usize) < cols, "entry out of range");
            lists[r as usize].push(c);
        }
        for l in &mut lists {
            l.sort_unstable();
            let mut out: Vec<u32> = Vec::with_capacity(l.len());
            for &c in l.iter() {
                if out.last() == Some(&c) {
                    out.pop();
                } else {
                    out.push(c);
                }
            }
            *l = out;
        }
        Self::from_rows(rows, cols, lists)
    }

    /// Builds from sorted, duplicate-free column lists per row.
    pub fn from_rows(rows: usize, cols: usize, lists: Vec<Vec<u32>>) -> Self {
        assert_eq!(lists.len(), rows);
        debug_assert!(lists
            .iter()
            .all(|l| l.windows(2).all(|w| w[0] < w[1]) && l.iter().all(|&c| (c as usize) < cols)));
        let nnz: usize = lists.iter().map(Vec::len).sum();
        let m = SparseBitMatrix {
            rows,
            cols,
            repr: Repr::Sparse(lists),
        };
        if prefers_dense(rows, cols, nnz) {
            m.with_storage(Storage::Dense)
        } else {
            m
        }
    }

    /// Builds from a row-major dense boolean table.
    pub fn from_dense(table: &[Vec<bool>], cols: usize) -> Self {
        let lists = table
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols);
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(c, _)| c as u32)
                    .collect()
            })
            .collect();
        Self::from_rows(table.len(), cols, lists)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn storage(&self) -> Storage {
        match self.repr {
            Repr::Dense { .. } => Storage::Dense,
            Repr::Sparse(_) => Storage::Sparse,
        }
    }

    /// Converts to the requested storage; entries are preserved exactly.
    pub fn with_storage(&self, storage: Storage) -> Self {
        let repr = match storage {
            Storage::Dense => {
                let words = words_for(self.cols);
                let mut data = vec![0u64; words * self.rows];
                for r in 0..self.rows {
                    for c in self.row(r) {
                        data[r * words + c as usize / 64] |= 1 << (c % 64);
                    }
                }
                Repr::Dense { words, data }
            }
            Storage::Sparse => Repr::Sparse((0..self.rows).map(|r| self.row(r)).collect()),
        };
        SparseBitMatrix {
            rows: self.rows,
            cols: self.cols,
            repr,
        }
    }

    /// Sorted column indices of the nonzero entries in row `r`.
    pub fn row(&self, r: usize) -> Vec<u32> {
        match &self.repr {
            Repr::Sparse(lists) => lists[r].clone(),
            Repr::Dense { words, data } => {
                let mut out = Vec::new();
                for (w, &bits) in data[r * words..(r + 1) * words].iter().enumerate() {
                    let mut bits = bits;
                    while bits != 0 {
                        out.push((w * 64) as u32 + bits.trailing_zeros());
                        bits &= bits - 1;
                    }
                }
                out
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        match &self.repr {
            Repr::Sparse(lists) => lists[r].binary_search(&(c as u32)).is_ok(),
            Repr::Dense { words, data } => data[r * words + c / 64] >> (c % 64) & 1 == 1,
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.repr {
            Repr::Sparse(lists) => lists.iter().map(Vec::len).sum(),
            Repr::Dense { data, .. } => data.iter().map(|w| w.count_ones() as usize).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Sparse(lists) => lists.iter().all(Vec::is_empty),
            Repr::Dense { data, .. } => data.iter().all(|&w| w == 0),
        }
    }

    /// All nonzero entries as `(row, col)`, row-major.
    pub fn entries(&self) -> Vec<(u32, u32)> {
        (0..self.rows)
            .flat_map(|r| self.row(r).into_iter().map(move |c| (r as u32, c)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for c in self.row(r) {
                lists[c as usize].push(r as u32);
            }
        }
        Self::from_rows(self.cols, self.rows, lists)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &SparseBitMatrix) -> Result<SparseBitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows: Vec<Vec<u32>> = (0..rhs.rows).map(|k| rhs.row(k)).collect();
        let mut lists = Vec::with_capacity(self.rows);
        let mut hits: Vec<u32> = Vec::new();
        for r in 0..self.rows {
            hits.clear();
            for k in self.row(r) {
                hits.extend_from_slice(&rhs_rows[k as usize]);
            }
            hits.sort_unstable();
            // keep columns hit an odd number of times
            let mut row = Vec::new();
            let mut i = 0;
            while i < hits.len() {
                let j = i + hits[i..].iter().take_while(|&&c| c == hits[i]).count();
                if (j - i) % 2 == 1 {
                    row.push(hits[i]);
                }
                i = j;
            }
            lists.push(row);
        }
        Ok(Self::from_rows(self.rows, rhs.cols, lists))
    }

    /// Rank over GF(2) by Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        match &self.repr {
            Repr::Dense { words, data } => rank_dense(self.rows, self.cols, *words, data.clone()),
            Repr::Sparse(lists) => rank_sparse(self.cols, lists.clone()),
        }
    }
}

impl PartialEq for SparseBitMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|r| self.row(r) == other.row(r))
    }
}

impl Eq for SparseBitMatrix {}

fn rank_dense(rows: usize, cols: usize, words: usize, mut data: Vec<u64>) -> usize {
    // pivot_row[c] = index of the reduced row whose lowest set bit is c
    let mut pivot_row: Vec<u32> = vec![u32::MAX; cols];
    let mut rank = 0;
    for r in 0..rows {
        let mut start_word = 0;
        loop {
            let row = &data[r * words..(r + 1) * words];
            let Some(w) = (start_word..words).find(|&w| row[w] != 0) else {
                break;
            };
            let c = w * 64 + row[w].trailing_zeros() as usize;
            let p = pivot_row[c];
            if p == u32::MAX {
                pivot_row[c] = r as u32;
                rank += 1;
                break;
            }
            let p = p as usize;
            // pivot row p < r, and its words below w are zero
            let (head, tail) = data.split_at_mut(r * words);
            let src = &head[p * words + w..(p + 1) * words];
            for (dst, s) in tail[w..words].iter_mut().zip(src) {
                *dst ^= s;
            }
            start_word = w;
        }
    }
    rank
}

/// Elimination with minimum-degree pivoting: always eliminate a column
/// with the fewest live rows, using its shortest row. Keeps fill-in low on
/// the very sparse boundary maps of large cubes.
fn rank_sparse(cols: usize, mut lists: Vec<Vec<u32>>) -> usize {
    // col_rows may hold stale or repeated rows; col_count is exact
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    let mut col_count: Vec<usize> = vec![0; cols];
    for (r, row) in lists.iter().enumerate() {
        for &c in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = col_count
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| Reverse((n, c as u32)))
        .collect();
    let mut rank = 0;
    let mut touched: Vec<u32> = Vec::new();
    let mut buf: Vec<u32> = Vec::new();
    while let Some(Reverse((count, c))) = heap.pop() {
        if col_count[c as usize] != count || count == 0 {
            continue;
        }
        let mut live = std::mem::take(&mut col_rows[c as usize]);
        live.retain(|&r| lists[r as usize].binary_search(&c).is_ok());
        live.sort_unstable();
        live.dedup();
        debug_assert_eq!(live.len(), count);
        let pivot = *live
            .iter()
            .min_by_key(|&&r| (lists[r as usize].len(), r))
            .expect("nonempty column");
        rank += 1;
        let prow = std::mem::take(&mut lists[pivot as usize]);
        touched.clear();
        for &x in &prow {
            col_count[x as usize] -= 1;
            touched.push(x);
        }
        for r in live.into_iter().filter(|&r| r != pivot) {
            let row = &lists[r as usize];
            let mut i = 0;
            for &x in &prow {
                while i < row.len() && row[i] < x {
                    i += 1;
                }
                if i < row.len() && row[i] == x {
                    col_count[x as usize] -= 1;
                } else {
                    col_count[x as usize] += 1;
                    col_rows[x as usize].push(r);
                }
            }
            xor_sorted_into(row, &prow, &mut buf);
            std::mem::swap(&mut lists[r as usize], &mut buf);
        }
        for &x in &touched {
            let n = col_count[x as usize];
            if n > 0 {
                heap.push(Reverse((n, x)));
            }
        }
    }
    rank
}

/// Dimension of homology at `C_i` given `d_in: C_{i−1} → C_i` and
/// `d_out: C_i → C_{i+1}`. Fails if the maps do not compose or if
/// `d_out ∘ d_in ≠ 0`.
pub fn homology_dims(d_in: &SparseBitMatrix, d_out: &SparseBitMatrix) -> Result<usize> {
    let (rank_in, rank_out) = checked_ranks(d_in, d_out)?;
    Ok(d_out.cols() - rank_out - rank_in)
}

/// Ranks of `d_in` and `d_out` after checking that they form a complex.
pub fn checked_ranks(d_in: &SparseBitMatrix, d_out: &SparseBitMatrix) -> Result<(usize, usize)> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Dimension(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    check_composition(d_in, d_out)?;
    Ok((d_in.rank(), d_out.rank()))
}

pub fn check_composition(d_in: &SparseBitMatrix, d_out: &SparseBitMatrix) -> Result<()> {
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        return Err(Error::Integrity(format!(
            "boundary composition has {} nonzero entries",
            composite.nnz()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook elimination on a Vec<Vec<bool>>, kept independent of the
    /// packed routines above.
    fn naive_rank(mut m: Vec<Vec<bool>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] {
                    let pivot = m[rank].clone();
                    for (x, v) in m[r].iter_mut().zip(pivot) {
                        *x ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize, p: f64) -> Vec<Vec<bool>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(p)).collect())
            .collect()
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(SparseBitMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(SparseBitMatrix::identity(5).rank(), 5);
        assert_eq!(SparseBitMatrix::zeros(3, 7).rank(), 0);
    }

    #[test]
    fn random_64_agrees_with_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        for p in [0.02, 0.1, 0.5] {
            let t = random_table(&mut rng, 64, 64, p);
            let m = SparseBitMatrix::from_dense(&t, 64);
            assert_eq!(m.rank(), naive_rank(t.clone()));
            assert_eq!(m.with_storage(Storage::Sparse).rank(), naive_rank(t));
        }
    }

    #[test]
    fn storage_choice() {
        assert_eq!(SparseBitMatrix::identity(10).storage(), Storage::Dense);
        assert_eq!(SparseBitMatrix::identity(1000).storage(), Storage::Sparse);
        let m = SparseBitMatrix::identity(1000);
        assert_eq!(m.with_storage(Storage::Dense), m);
        assert_eq!(m.with_storage(Storage::Dense).rank(), 1000);
    }

    #[test]
    fn entries_cancel_in_pairs() {
        let m = SparseBitMatrix::from_entries(2, 2, &[(0, 1), (0, 1), (1, 0)]);
        assert_eq!(m.entries(), vec![(1, 0)]);
    }

    #[test]
    fn homology_examples() {
        let z_in = SparseBitMatrix::zeros(4, 2);
        let z_out = SparseBitMatrix::zeros(1, 4);
        assert_eq!(homology_dims(&z_in, &z_out).unwrap(), 4);

        let id = SparseBitMatrix::identity(3);
        assert_eq!(homology_dims(&SparseBitMatrix::zeros(3, 0), &id).unwrap(), 0);
    }

    #[test]
    fn homology_errors() {
        let id = SparseBitMatrix::identity(2);
        assert!(matches!(homology_dims(&id, &id), Err(Error::Integrity(_))));
        let a = SparseBitMatrix::zeros(3, 1);
        let b = SparseBitMatrix::zeros(1, 2);
        assert!(matches!(homology_dims(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn random_chain_pairs_agree_with_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..40 {
            let n0 = rng.gen_range(0..=32);
            let n1 = rng.gen_range(1..=32);
            let n2 = rng.gen_range(0..=32);
            // d_out random; d_in built from kernel vectors of d_out so d∘d = 0
            let out_t = random_table(&mut rng, n2, n1, 0.2);
            let d_out = SparseBitMatrix::from_dense(&out_t, n1);
            let kernel = kernel_basis(&out_t, n1);
            let mut in_t = vec![vec![false; n0]; n1];
            for c in 0..n0 {
                for v in &kernel {
                    if rng.gen_bool(0.5) {
                        for (row, &bit) in in_t.iter_mut().zip(v) {
                            row[c] ^= bit;
                        }
                    }
                }
            }
            let d_in = SparseBitMatrix::from_dense(&in_t, n0);
            let expected = n1 - naive_rank(out_t) - naive_rank(in_t);
            assert_eq!(homology_dims(&d_in, &d_out).unwrap(), expected);
        }
    }

    /// Kernel of a dense table by brute-force reduced row echelon form.
    fn kernel_basis(t: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
        let mut m: Vec<Vec<bool>> = t.to_vec();
        let rows = m.len();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] {
                    let pivot = m[rank].clone();
                    for (x, v) in m[r].iter_mut().zip(pivot) {
                        *x ^= v;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![false; cols];
                v[f] = true;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = m[i][f];
                }
                v
            })
            .collect()
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn table() -> impl Strategy<Value = Vec<Vec<bool>>> {
            (1usize..24, 1usize..24).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)
            })
        }

        proptest! {
            #[test]
            fn rank_of_transpose(t in table()) {
                let m = SparseBitMatrix::from_dense(&t, t[0].len());
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn rank_invariant_under_row_ops(t in table(), swap in any::<(usize, usize)>(), add in any::<(usize, usize)>()) {
                let cols = t[0].len();
                let rank = SparseBitMatrix::from_dense(&t, cols).rank();
                let mut u = t.clone();
                let n = u.len();
                u.swap(swap.0 % n, swap.1 % n);
                let (a, b) = (add.0 % n, add.1 % n);
                if a != b {
                    let src = u[b].clone();
                    for (x, y) in u[a].iter_mut().zip(src) {
                        *x ^= y;
                    }
                }
                prop_assert_eq!(SparseBitMatrix::from_dense(&u, cols).rank(), rank);
                prop_assert_eq!(SparseBitMatrix::from_dense(&u, cols).with_storage(Storage::Sparse).rank(), rank);
            }
        }
    }
}
