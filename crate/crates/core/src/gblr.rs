//! Frozen generalized block-low-rank matrices.
//!
//! A frozen matrix is a sum of `K` rank-1 blocks. Block `k` occupies
//! `row_width_k` cyclically consecutive rows starting at `row_loc_k` and
//! `col_width_k` columns starting at `col_loc_k`; its values are the outer
//! product of two cropped content vectors. Overlapping blocks sum, which is
//! how higher-rank regions are expressed. The matrix-vector product walks the
//! blocks directly and needs exactly `sum_k (row_width_k + col_width_k)`
//! multiplications, independent of the dense dimensions.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};

/// Window geometry of a single block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockDims {
    pub row_width: usize,
    pub row_loc: usize,
    pub col_width: usize,
    pub col_loc: usize,
}

/// Structural parameters of a GBLR matrix: per-block widths and locations
/// for both axes, plus the ambient dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    rows: usize,
    cols: usize,
    blocks: Vec<BlockDims>,
}

impl BlockStructure {
    /// Validates that every width is at most the axis length and every
    /// location is a valid start index.
    pub fn new(rows: usize, cols: usize, blocks: Vec<BlockDims>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be positive".into()));
        }
        for (k, b) in blocks.iter().enumerate() {
            if b.row_width > rows || b.row_loc >= rows {
                return Err(Error::Domain(format!(
                    "block {k}: row window ({}, {}) invalid for {rows} rows",
                    b.row_width, b.row_loc
                )));
            }
            if b.col_width > cols || b.col_loc >= cols {
                return Err(Error::Domain(format!(
                    "block {k}: column window ({}, {}) invalid for {cols} columns",
                    b.col_width, b.col_loc
                )));
            }
        }
        Ok(BlockStructure { rows, cols, blocks })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[BlockDims] {
        &self.blocks
    }

    /// Total width `sum_k (row_width_k + col_width_k)`; equals the exact
    /// multiplication count of [`GblrMatrix::mvp`].
    pub fn total_width(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.row_width + b.col_width)
            .sum()
    }

    /// Average width `total_width / 2K`, or 0 for an empty structure.
    pub fn average_width(&self) -> f64 {
        if self.blocks.is_empty() {
            0.0
        } else {
            self.total_width() as f64 / (2.0 * self.blocks.len() as f64)
        }
    }
}

/// Elementwise floor interpolation of two structures with the same block
/// count and dimensions. The average width of the result never exceeds the
/// larger of the two inputs' budgets, so budget classes are closed under
/// this operation.
pub fn interpolate_structure(
    a: &BlockStructure,
    b: &BlockStructure,
    alpha: f64,
) -> Result<BlockStructure> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Shape(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if a.blocks.len() != b.blocks.len() {
        return Err(Error::Shape(format!(
            "block count mismatch: {} vs {}",
            a.blocks.len(),
            b.blocks.len()
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha {alpha} outside [0, 1]")));
    }
    let mix = |x: usize, y: usize| (alpha * x as f64 + (1.0 - alpha) * y as f64).floor() as usize;
    let blocks = a
        .blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| BlockDims {
            row_width: mix(x.row_width, y.row_width),
            row_loc: mix(x.row_loc, y.row_loc),
            col_width: mix(x.col_width, y.col_width),
            col_loc: mix(x.col_loc, y.col_loc),
        })
        .collect();
    BlockStructure::new(a.rows, a.cols, blocks)
}

/// A dense block to embed at a fixed (cyclic) position.
#[derive(Debug, Clone)]
pub struct SparseBlock {
    pub row: usize,
    pub col: usize,
    pub values: DMatrix<f64>,
}

/// Frozen GBLR matrix: integer structure plus cropped content vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GblrMatrix {
    structure: BlockStructure,
    u: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl GblrMatrix {
    /// Wraps a structure and its content; `u[k]` must have `row_width_k`
    /// entries and `v[k]` must have `col_width_k`.
    pub fn new(structure: BlockStructure, u: Vec<Vec<f64>>, v: Vec<Vec<f64>>) -> Result<Self> {
        if u.len() != structure.block_count() || v.len() != structure.block_count() {
            return Err(Error::Shape(format!(
                "content for {} blocks, structure has {}",
                u.len().max(v.len()),
                structure.block_count()
            )));
        }
        for (k, b) in structure.blocks().iter().enumerate() {
            if u[k].len() != b.row_width {
                return Err(Error::Shape(format!(
                    "block {k}: u has {} entries, row width is {}",
                    u[k].len(),
                    b.row_width
                )));
            }
            if v[k].len() != b.col_width {
                return Err(Error::Shape(format!(
                    "block {k}: v has {} entries, column width is {}",
                    v[k].len(),
                    b.col_width
                )));
            }
        }
        Ok(GblrMatrix { structure, u, v })
    }

    /// The all-zero matrix (no blocks).
    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        Ok(GblrMatrix {
            structure: BlockStructure::new(rows, cols, Vec::new())?,
            u: Vec::new(),
            v: Vec::new(),
        })
    }

    /// Random matrix with `block_count` blocks of widths up to `max_width`,
    /// for tests and benchmarks.
    pub fn random<R: Rng>(
        rows: usize,
        cols: usize,
        block_count: usize,
        max_width: usize,
        rng: &mut R,
    ) -> Self {
        let mut blocks = Vec::with_capacity(block_count);
        let mut u = Vec::with_capacity(block_count);
        let mut v = Vec::with_capacity(block_count);
        for _ in 0..block_count {
            let b = BlockDims {
                row_width: rng.gen_range(0..=max_width.min(rows)),
                row_loc: rng.gen_range(0..rows),
                col_width: rng.gen_range(0..=max_width.min(cols)),
                col_loc: rng.gen_range(0..cols),
            };
            u.push((0..b.row_width).map(|_| rng.gen_range(-1.0..1.0)).collect());
            v.push((0..b.col_width).map(|_| rng.gen_range(-1.0..1.0)).collect());
            blocks.push(b);
        }
        GblrMatrix {
            structure: BlockStructure::new(rows, cols, blocks).expect("valid random structure"),
            u,
            v,
        }
    }

    pub fn rows(&self) -> usize {
        self.structure.rows
    }

    pub fn cols(&self) -> usize {
        self.structure.cols
    }

    pub fn block_count(&self) -> usize {
        self.structure.block_count()
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    /// Cropped content of block `k` as `(u, v)`.
    pub fn content(&self, k: usize) -> (&[f64], &[f64]) {
        (&self.u[k], &self.v[k])
    }

    /// Exact multiplication count of one matrix-vector product.
    pub fn flops(&self) -> usize {
        self.structure.total_width()
    }

    /// Materializes the dense matrix by summing zero-padded outer products
    /// with cyclic placement; overlapping blocks accumulate.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let (m, n) = (self.rows(), self.cols());
        let mut dense = DMatrix::zeros(m, n);
        for (k, b) in self.structure.blocks().iter().enumerate() {
            for (i, &ui) in self.u[k].iter().enumerate() {
                let row = (b.row_loc + i) % m;
                for (j, &vj) in self.v[k].iter().enumerate() {
                    dense[(row, (b.col_loc + j) % n)] += ui * vj;
                }
            }
        }
        dense
    }

    /// Matrix-vector product through the block representation.
    pub fn mvp(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.mvp_counted(x)?.0)
    }

    /// Matrix-vector product with an instrumented multiplication counter;
    /// the count always equals [`GblrMatrix::flops`].
    pub fn mvp_counted(&self, x: &[f64]) -> Result<(Vec<f64>, usize)> {
        let (m, n) = (self.rows(), self.cols());
        if x.len() != n {
            return Err(Error::Shape(format!(
                "input has {} entries, matrix has {n} columns",
                x.len()
            )));
        }
        let mut y = vec![0.0; m];
        let mut mults = 0usize;
        for (k, b) in self.structure.blocks().iter().enumerate() {
            let mut dot = 0.0;
            for (j, &vj) in self.v[k].iter().enumerate() {
                dot += vj * x[(b.col_loc + j) % n];
                mults += 1;
            }
            for (i, &ui) in self.u[k].iter().enumerate() {
                y[(b.row_loc + i) % m] += ui * dot;
                mults += 1;
            }
        }
        Ok((y, mults))
    }

    /// Embeds a low-rank factorization `U V^T` (`U` is `m x r`, `V` is
    /// `n x r`) as `r` full-width rank-1 blocks padded with
    /// `block_count - r` zero-width blocks.
    pub fn embed_low_rank(
        u: &DMatrix<f64>,
        v: &DMatrix<f64>,
        block_count: usize,
    ) -> Result<GblrMatrix> {
        let rank = u.ncols();
        if v.ncols() != rank {
            return Err(Error::Shape(format!(
                "factor ranks differ: {} vs {}",
                rank,
                v.ncols()
            )));
        }
        if block_count < rank {
            return Err(Error::Domain(format!(
                "{rank} rank-1 blocks do not fit in {block_count} blocks"
            )));
        }
        let (m, n) = (u.nrows(), v.nrows());
        let mut blocks = Vec::with_capacity(block_count);
        let mut us = Vec::with_capacity(block_count);
        let mut vs = Vec::with_capacity(block_count);
        for k in 0..rank {
            blocks.push(BlockDims {
                row_width: m,
                row_loc: 0,
                col_width: n,
                col_loc: 0,
            });
            us.push(u.column(k).iter().copied().collect());
            vs.push(v.column(k).iter().copied().collect());
        }
        for _ in rank..block_count {
            blocks.push(BlockDims {
                row_width: 0,
                row_loc: 0,
                col_width: 0,
                col_loc: 0,
            });
            us.push(Vec::new());
            vs.push(Vec::new());
        }
        GblrMatrix::new(BlockStructure::new(m, n, blocks)?, us, vs)
    }

    /// Embeds non-overlapping dense blocks, decomposing each into as many
    /// co-located rank-1 blocks as its numerical rank (instead of cloning a
    /// fixed number of times), with singular values below `1e-12` of the
    /// largest treated as zero.
    pub fn embed_block_sparse(
        rows: usize,
        cols: usize,
        blocks: &[SparseBlock],
    ) -> Result<GblrMatrix> {
        let mut covered = vec![false; rows * cols];
        for (idx, block) in blocks.iter().enumerate() {
            let (h, w) = (block.values.nrows(), block.values.ncols());
            if h > rows || w > cols || block.row >= rows || block.col >= cols {
                return Err(Error::Domain(format!(
                    "block {idx} ({h}x{w} at {},{}) does not fit in {rows}x{cols}",
                    block.row, block.col
                )));
            }
            for i in 0..h {
                for j in 0..w {
                    let cell = ((block.row + i) % rows) * cols + (block.col + j) % cols;
                    if covered[cell] {
                        return Err(Error::Domain(format!("block {idx} overlaps another block")));
                    }
                    covered[cell] = true;
                }
            }
        }

        let mut dims = Vec::new();
        let mut us = Vec::new();
        let mut vs = Vec::new();
        for block in blocks {
            let (h, w) = (block.values.nrows(), block.values.ncols());
            let svd = block.values.clone().svd(true, true);
            let left = svd.u.as_ref().expect("svd computes u");
            let right = svd.v_t.as_ref().expect("svd computes v_t");
            let cutoff = 1e-12 * svd.singular_values.max();
            for (r, &sv) in svd.singular_values.iter().enumerate() {
                if sv <= cutoff {
                    continue;
                }
                let scale = sv.sqrt();
                dims.push(BlockDims {
                    row_width: h,
                    row_loc: block.row,
                    col_width: w,
                    col_loc: block.col,
                });
                us.push(left.column(r).iter().map(|x| x * scale).collect());
                vs.push(right.row(r).iter().map(|x| x * scale).collect());
            }
        }
        GblrMatrix::new(BlockStructure::new(rows, cols, dims)?, us, vs)
    }

    /// Embeds an equally partitioned block-low-rank matrix: every
    /// `block_size x block_size` tile must have rank at most one and becomes
    /// one block. The matrix must be square with `block_size` dividing `n`.
    pub fn embed_blr(dense: &DMatrix<f64>, block_size: usize) -> Result<GblrMatrix> {
        let n = dense.nrows();
        if dense.ncols() != n {
            return Err(Error::Shape(format!(
                "block-low-rank embedding expects a square matrix, got {}x{}",
                n,
                dense.ncols()
            )));
        }
        if block_size == 0 || n % block_size != 0 {
            return Err(Error::Domain(format!(
                "block size {block_size} does not divide {n}"
            )));
        }
        let grid = n / block_size;
        let mut dims = Vec::with_capacity(grid * grid);
        let mut us = Vec::with_capacity(grid * grid);
        let mut vs = Vec::with_capacity(grid * grid);
        for p in 0..grid {
            for q in 0..grid {
                let tile = dense
                    .view((p * block_size, q * block_size), (block_size, block_size))
                    .clone_owned();
                let svd = tile.svd(true, true);
                let sv = svd.singular_values[0];
                dims.push(BlockDims {
                    row_width: block_size,
                    row_loc: p * block_size,
                    col_width: block_size,
                    col_loc: q * block_size,
                });
                if sv > 0.0 {
                    let scale = sv.sqrt();
                    let left = svd.u.as_ref().expect("svd computes u");
                    let right = svd.v_t.as_ref().expect("svd computes v_t");
                    us.push(left.column(0).iter().map(|x| x * scale).collect());
                    vs.push(right.row(0).iter().map(|x| x * scale).collect());
                } else {
                    us.push(vec![0.0; block_size]);
                    vs.push(vec![0.0; block_size]);
                }
            }
        }
        GblrMatrix::new(BlockStructure::new(n, n, dims)?, us, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{reference_mvp, roll_cols, roll_rows};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_block_matrix() -> GblrMatrix {
        let structure = BlockStructure::new(
            4,
            4,
            vec![BlockDims {
                row_width: 2,
                row_loc: 1,
                col_width: 2,
                col_loc: 0,
            }],
        )
        .unwrap();
        GblrMatrix::new(structure, vec![vec![1.0, 2.0]], vec![vec![3.0, 4.0]]).unwrap()
    }

    #[test]
    fn dense_of_empty_matrix_is_zero() {
        let dense = GblrMatrix::zero(3, 5).unwrap().to_dense();
        assert!(dense.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn dense_places_outer_product() {
        let dense = one_block_matrix().to_dense();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                3.0, 4.0, 0.0, 0.0, //
                6.0, 8.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        );
        assert_eq!(dense, expected);
    }

    #[test]
    fn overlapping_clones_sum_to_rank_two() {
        let dims = BlockDims {
            row_width: 2,
            row_loc: 0,
            col_width: 2,
            col_loc: 0,
        };
        let structure = BlockStructure::new(4, 4, vec![dims, dims]).unwrap();
        let m = GblrMatrix::new(
            structure,
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap();
        let dense = m.to_dense();
        // [[0,1],[1,0]] block in the corner: rank 2
        assert_eq!(dense[(0, 1)], 1.0);
        assert_eq!(dense[(1, 0)], 1.0);
        assert_eq!(dense[(0, 0)], 0.0);
        let block = dense.view((0, 0), (2, 2)).clone_owned();
        assert_eq!(block.rank(1e-12), 2);
    }

    #[test]
    fn mvp_matches_hand_computation() {
        let (y, count) = one_block_matrix()
            .mvp_counted(&[1.0, 1.0, 0.0, 0.0])
            .unwrap();
        assert_eq!(y, vec![0.0, 7.0, 14.0, 0.0]);
        assert_eq!(count, 4);
    }

    #[test]
    fn zero_width_blocks_cost_nothing() {
        let structure = BlockStructure::new(
            4,
            4,
            vec![BlockDims {
                row_width: 0,
                row_loc: 2,
                col_width: 0,
                col_loc: 3,
            }],
        )
        .unwrap();
        let m = GblrMatrix::new(structure, vec![Vec::new()], vec![Vec::new()]).unwrap();
        let (y, count) = m.mvp_counted(&[1.0; 4]).unwrap();
        assert_eq!(y, vec![0.0; 4]);
        assert_eq!(count, 0);
        assert_eq!(m.flops(), 0);
    }

    #[test]
    fn mvp_rejects_dimension_mismatch() {
        assert!(one_block_matrix().mvp(&[1.0; 3]).is_err());
    }

    #[test]
    fn mvp_agrees_with_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = GblrMatrix::random(32, 32, 8, 32, &mut rng);
        let x: Vec<f64> = (0..32).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (y, count) = m.mvp_counted(&x).unwrap();
        let reference = reference_mvp(&m.to_dense(), &x);
        for (a, b) in y.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(count, m.flops());
    }

    #[test]
    fn flops_sums_widths() {
        let widths = [(2usize, 2usize), (3, 1), (1, 1), (0, 2)];
        let blocks: Vec<BlockDims> = widths
            .iter()
            .map(|&(r, c)| BlockDims {
                row_width: r,
                row_loc: 0,
                col_width: c,
                col_loc: 0,
            })
            .collect();
        let s = BlockStructure::new(8, 8, blocks).unwrap();
        assert_eq!(s.total_width(), 12);
        assert!((s.average_width() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn low_rank_embedding_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = DMatrix::from_fn(16, 3, |_, _| rng.gen_range(-1.0..1.0f64));
        let v = DMatrix::from_fn(16, 3, |_, _| rng.gen_range(-1.0..1.0f64));
        let m = GblrMatrix::embed_low_rank(&u, &v, 4).unwrap();
        assert_eq!(m.block_count(), 4);
        let err = (m.to_dense() - &u * v.transpose()).norm();
        assert!(err < 1e-9);
    }

    #[test]
    fn low_rank_zero_rank_is_zero_matrix() {
        let u = DMatrix::<f64>::zeros(4, 0);
        let v = DMatrix::<f64>::zeros(4, 0);
        let m = GblrMatrix::embed_low_rank(&u, &v, 2).unwrap();
        assert!(m.to_dense().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn low_rank_full_width_average() {
        let u = DMatrix::<f64>::identity(4, 2);
        let v = DMatrix::<f64>::identity(4, 2);
        let m = GblrMatrix::embed_low_rank(&u, &v, 2).unwrap();
        assert!((m.structure().average_width() - 4.0).abs() < 1e-15);
        assert_eq!(m.to_dense().rank(1e-12), 2);
    }

    #[test]
    fn block_sparse_identity_block() {
        let block = SparseBlock {
            row: 0,
            col: 0,
            values: DMatrix::identity(2, 2),
        };
        let m = GblrMatrix::embed_block_sparse(8, 8, &[block]).unwrap();
        assert_eq!(m.block_count(), 2);
        let dense = m.to_dense();
        assert!((dense[(0, 0)] - 1.0).abs() < 1e-10);
        assert!((dense[(1, 1)] - 1.0).abs() < 1e-10);
        assert!(dense[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn block_sparse_rank_one_needs_single_block() {
        let values = DMatrix::from_fn(3, 3, |i, j| (i as f64 + 1.0) * (j as f64 - 1.0));
        let m = GblrMatrix::embed_block_sparse(8, 8, &[SparseBlock {
            row: 2,
            col: 4,
            values,
        }])
        .unwrap();
        assert_eq!(m.block_count(), 1);
    }

    #[test]
    fn block_sparse_wraparound_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let values = DMatrix::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0f64));
        let m = GblrMatrix::embed_block_sparse(8, 8, &[SparseBlock {
            row: 3,
            col: 5,
            values: values.clone(),
        }])
        .unwrap();
        let dense = m.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                let err = (dense[((3 + i) % 8, (5 + j) % 8)] - values[(i, j)]).abs();
                assert!(err < 1e-8);
            }
        }
    }

    #[test]
    fn block_sparse_rejects_overlap() {
        let a = SparseBlock {
            row: 0,
            col: 0,
            values: DMatrix::identity(3, 3),
        };
        let b = SparseBlock {
            row: 2,
            col: 2,
            values: DMatrix::identity(3, 3),
        };
        assert!(GblrMatrix::embed_block_sparse(8, 8, &[a, b]).is_err());
    }

    #[test]
    fn blr_embedding_reconstructs_rank_one_tiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut dense = DMatrix::zeros(16, 16);
        for p in 0..4 {
            for q in 0..4 {
                let u = DMatrix::from_fn(4, 1, |_, _| rng.gen_range(-1.0..1.0f64));
                let v = DMatrix::from_fn(1, 4, |_, _| rng.gen_range(-1.0..1.0f64));
                let tile = u * v;
                for i in 0..4 {
                    for j in 0..4 {
                        dense[(p * 4 + i, q * 4 + j)] = tile[(i, j)];
                    }
                }
            }
        }
        let m = GblrMatrix::embed_blr(&dense, 4).unwrap();
        assert_eq!(m.block_count(), 16);
        assert!((m.to_dense() - &dense).norm() < 1e-9);
        assert!((m.structure().average_width() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn blr_zero_matrix_keeps_declared_widths() {
        let dense = DMatrix::zeros(4, 4);
        let m = GblrMatrix::embed_blr(&dense, 2).unwrap();
        assert_eq!(m.block_count(), 4);
        assert_eq!(m.flops(), 16);
        assert!(m.to_dense().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn blr_rejects_non_divisible() {
        let dense = DMatrix::zeros(6, 6);
        assert!(GblrMatrix::embed_blr(&dense, 4).is_err());
    }

    #[test]
    fn interpolation_endpoint_returns_first() {
        let a = BlockStructure::new(
            8,
            8,
            vec![BlockDims {
                row_width: 4,
                row_loc: 3,
                col_width: 2,
                col_loc: 5,
            }],
        )
        .unwrap();
        let b = BlockStructure::new(
            8,
            8,
            vec![BlockDims {
                row_width: 1,
                row_loc: 0,
                col_width: 7,
                col_loc: 2,
            }],
        )
        .unwrap();
        assert_eq!(interpolate_structure(&a, &b, 1.0).unwrap(), a);
    }

    #[test]
    fn interpolation_floors_midpoint() {
        let mk = |w1, w2| {
            BlockStructure::new(
                8,
                8,
                vec![
                    BlockDims {
                        row_width: w1,
                        row_loc: 0,
                        col_width: w1,
                        col_loc: 0,
                    },
                    BlockDims {
                        row_width: w2,
                        row_loc: 0,
                        col_width: w2,
                        col_loc: 0,
                    },
                ],
            )
            .unwrap()
        };
        let mixed = interpolate_structure(&mk(4, 2), &mk(2, 2), 0.5).unwrap();
        assert_eq!(mixed.blocks()[0].row_width, 3);
        assert_eq!(mixed.blocks()[1].row_width, 2);
    }

    #[test]
    fn interpolation_rejects_mismatched_block_count() {
        let a = BlockStructure::new(4, 4, vec![]).unwrap();
        let b = BlockStructure::new(
            4,
            4,
            vec![BlockDims {
                row_width: 1,
                row_loc: 0,
                col_width: 1,
                col_loc: 0,
            }],
        )
        .unwrap();
        assert!(interpolate_structure(&a, &b, 0.5).is_err());
    }

    #[test]
    fn interpolation_preserves_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let budget = 4.0;
        for _ in 0..200 {
            let random_structure = |rng: &mut ChaCha8Rng| {
                // widths bounded so the average stays at most `budget`
                let blocks = (0..4)
                    .map(|_| BlockDims {
                        row_width: rng.gen_range(0..=4),
                        row_loc: rng.gen_range(0..16),
                        col_width: rng.gen_range(0..=4),
                        col_loc: rng.gen_range(0..16),
                    })
                    .collect();
                BlockStructure::new(16, 16, blocks).unwrap()
            };
            let a = random_structure(&mut rng);
            let b = random_structure(&mut rng);
            let alpha: f64 = rng.gen_range(0.0..=1.0);
            let mixed = interpolate_structure(&a, &b, alpha).unwrap();
            assert!(mixed.average_width() <= budget);
        }
    }

    #[test]
    fn wrapped_blocks_match_rolled_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let m = GblrMatrix::random(9, 7, 3, 7, &mut rng);
            // oracle: place each block at the origin, then roll
            let mut expected = DMatrix::zeros(9, 7);
            for (k, b) in m.structure().blocks().iter().enumerate() {
                let (u, v) = m.content(k);
                let mut at_origin = DMatrix::zeros(9, 7);
                for (i, &ui) in u.iter().enumerate() {
                    for (j, &vj) in v.iter().enumerate() {
                        at_origin[(i, j)] = ui * vj;
                    }
                }
                expected += roll_cols(&roll_rows(&at_origin, b.row_loc), b.col_loc);
            }
            assert!((m.to_dense() - expected).norm() < 1e-12);
        }
    }
}
