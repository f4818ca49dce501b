//! Supermatrices over a supercommutative ring.
//!
//! Rows and columns are stored in block layout: all even slots first, then
//! all odd slots. A matrix of size `r|s × p|q` therefore has blocks
//! `B1 (r×p)`, `B2 (r×q)`, `B3 (s×p)`, `B4 (s×q)`. A fake column keeps the
//! parity of its slot and only its content has the other parity, so the
//! kind of a matrix is always computable from its entries.

use std::fmt;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::superscalar::{Parity, ParityClass, Scalar};

/// Parities of the rows (or columns) of a supermatrix: `even|odd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParitySignature {
    pub even: usize,
    pub odd: usize,
}

impl ParitySignature {
    pub fn new(even: usize, odd: usize) -> ParitySignature {
        ParitySignature { even, odd }
    }

    pub fn len(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parity(&self, slot: usize) -> Parity {
        Parity::from_bit(slot >= self.even)
    }

    pub fn reversed(&self) -> ParitySignature {
        ParitySignature { even: self.odd, odd: self.even }
    }
}

impl fmt::Display for ParitySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Even,
    Odd,
    FakeI,
    FakeII,
    Inhomogeneous,
}

/// Rows and columns to delete, numbered within their parity class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSelection {
    pub removed_even_rows: Vec<usize>,
    pub removed_odd_rows: Vec<usize>,
    pub removed_even_cols: Vec<usize>,
    pub removed_odd_cols: Vec<usize>,
}

/// An ordinary rectangular matrix, used for the blocks.
#[derive(Clone, Debug)]
pub struct Grid<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: SuperAlgebra> Grid<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Grid<T> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Grid { rows, cols, data }
    }

    pub fn zeros(ctx: &T::Ctx, rows: usize, cols: usize) -> Grid<T> {
        Grid::from_fn(rows, cols, |_, _| T::zero(ctx))
    }

    pub fn identity(ctx: &T::Ctx, n: usize) -> Grid<T> {
        Grid::from_fn(n, n, |i, j| T::from_int(ctx, (i == j) as i64))
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Grid<T>, ctx: &T::Ctx) -> Grid<T> {
        assert_eq!(self.cols, other.rows);
        Grid::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero(ctx);
            for k in 0..self.cols {
                let a = self.at(i, k);
                let b = other.at(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }

    pub fn add(&self, other: &Grid<T>) -> Grid<T> {
        Grid::from_fn(self.rows, self.cols, |i, j| self.at(i, j).plus(other.at(i, j)))
    }

    pub fn sub(&self, other: &Grid<T>) -> Grid<T> {
        Grid::from_fn(self.rows, self.cols, |i, j| self.at(i, j).minus(other.at(i, j)))
    }

    pub fn neg(&self) -> Grid<T> {
        Grid::from_fn(self.rows, self.cols, |i, j| self.at(i, j).negated())
    }

    /// `k * self` with `k` multiplied on the left.
    pub fn scale(&self, k: &T) -> Grid<T> {
        Grid::from_fn(self.rows, self.cols, |i, j| k.times(self.at(i, j)))
    }

    /// Determinant with each term's factors taken in row order, by
    /// expansion memoized over column subsets. The row order makes the
    /// result well defined when one column holds odd entries.
    pub fn det(&self, ctx: &T::Ctx) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one(ctx));
        }
        if n > 20 {
            return Err(Error::Capacity(format!("determinant of size {n}")));
        }
        let full = (1usize << n) - 1;
        let mut dp: Vec<Option<T>> = vec![None; 1 << n];
        dp[0] = Some(T::one(ctx));
        for mask in 1..=full {
            let row = mask.count_ones() as usize - 1;
            let mut acc: Option<T> = None;
            let mut bits = mask;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = mask & !(1 << c);
                let Some(prev) = &dp[rest] else { continue };
                let entry = self.at(row, c);
                if entry.is_zero() {
                    continue;
                }
                let mut term = prev.times(entry);
                if (rest >> (c + 1)).count_ones() % 2 == 1 {
                    term = term.negated();
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.plus(&term),
                });
            }
            dp[mask] = acc.filter(|a| !a.is_zero());
        }
        Ok(dp[full].take().unwrap_or_else(|| T::zero(ctx)))
    }

    /// Deletes one row and one column.
    pub fn cofactor_grid(&self, row: usize, col: usize) -> Grid<T> {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j != col {
                    data.push(self.at(i, j).clone());
                }
            }
        }
        Grid { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Classical adjugate of a square matrix with even entries.
    pub fn adjugate(&self, ctx: &T::Ctx) -> Result<Grid<T>> {
        let n = self.rows;
        if n == 1 {
            return Ok(Grid::identity(ctx, 1));
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d = self.cofactor_grid(j, i).det(ctx)?;
                data.push(if (i + j) % 2 == 1 { d.negated() } else { d });
            }
        }
        Ok(Grid { rows: n, cols: n, data })
    }

    /// Inverse of a square matrix with even entries and invertible
    /// determinant, as `adj / det`.
    pub fn inverse_even(&self, ctx: &T::Ctx) -> Result<Grid<T>> {
        let d = self.det(ctx)?;
        if !d.has_unit_body() {
            return Err(Error::NotInvertible("determinant has zero body".into()));
        }
        let dinv = d.inverse_even()?;
        Ok(self.adjugate(ctx)?.scale(&dinv))
    }

    pub fn same_as(&self, other: &Grid<T>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.same_as(b))
    }
}

#[derive(Clone)]
pub struct SuperMatrix<T: SuperAlgebra> {
    ctx: T::Ctx,
    rows: ParitySignature,
    cols: ParitySignature,
    entries: Vec<T>,
}

impl<T: SuperAlgebra> fmt::Debug for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "supermatrix {} x {}", self.rows, self.cols)?;
        for i in 0..self.rows.len() {
            let row: Vec<String> =
                (0..self.cols.len()).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: SuperAlgebra> SuperMatrix<T> {
    pub fn new(
        ctx: &T::Ctx,
        rows: ParitySignature,
        cols: ParitySignature,
        entries: Vec<T>,
    ) -> Result<SuperMatrix<T>> {
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::Dimension(format!(
                "{} entries for a {} x {} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(SuperMatrix { ctx: ctx.clone(), rows, cols, entries })
    }

    pub fn from_fn(
        ctx: &T::Ctx,
        rows: ParitySignature,
        cols: ParitySignature,
        f: impl FnMut(usize, usize) -> T,
    ) -> SuperMatrix<T> {
        let g = Grid::from_fn(rows.len(), cols.len(), f);
        SuperMatrix { ctx: ctx.clone(), rows, cols, entries: g.data }
    }

    pub fn identity(ctx: &T::Ctx, sig: ParitySignature) -> SuperMatrix<T> {
        SuperMatrix::from_fn(ctx, sig, sig, |i, j| T::from_int(ctx, (i == j) as i64))
    }

    /// Assembles a matrix from its four blocks.
    pub fn from_blocks(
        ctx: &T::Ctx,
        b1: &Grid<T>,
        b2: &Grid<T>,
        b3: &Grid<T>,
        b4: &Grid<T>,
    ) -> Result<SuperMatrix<T>> {
        if b1.rows != b2.rows || b3.rows != b4.rows || b1.cols != b3.cols || b2.cols != b4.cols {
            return Err(Error::Dimension("blocks do not fit together".into()));
        }
        let rows = ParitySignature::new(b1.rows, b3.rows);
        let cols = ParitySignature::new(b1.cols, b2.cols);
        Ok(SuperMatrix::from_fn(ctx, rows, cols, |i, j| {
            match (i < rows.even, j < cols.even) {
                (true, true) => b1.at(i, j).clone(),
                (true, false) => b2.at(i, j - cols.even).clone(),
                (false, true) => b3.at(i - rows.even, j).clone(),
                (false, false) => b4.at(i - rows.even, j - cols.even).clone(),
            }
        }))
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn row_signature(&self) -> ParitySignature {
        self.rows
    }

    pub fn col_signature(&self) -> ParitySignature {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let n = self.cols.len();
        self.entries[i * n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows.len()).map(|i| self.get(i, j).clone()).collect()
    }

    fn grid(&self, rs: std::ops::Range<usize>, cs: std::ops::Range<usize>) -> Grid<T> {
        let (r0, c0) = (rs.start, cs.start);
        Grid::from_fn(rs.len(), cs.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `(B1, B2, B3, B4)`.
    pub fn blocks(&self) -> (Grid<T>, Grid<T>, Grid<T>, Grid<T>) {
        let (r, s) = (self.rows.even, self.rows.len());
        let (p, q) = (self.cols.even, self.cols.len());
        (self.grid(0..r, 0..p), self.grid(0..r, p..q), self.grid(r..s, 0..p), self.grid(r..s, p..q))
    }

    /// Parity of column `j`'s content relative to its slot: `Some(false)`
    /// if it conforms, `Some(true)` if every entry has the opposite parity,
    /// `None` if neither.
    fn column_shift(&self, j: usize) -> Option<bool> {
        let mut conforming = true;
        let mut flipped = true;
        for i in 0..self.rows.len() {
            let expected = self.rows.parity(i) + self.cols.parity(j);
            let class = self.get(i, j).parity_class();
            if class == ParityClass::Inhomogeneous {
                return None;
            }
            conforming &= class.admits(expected);
            flipped &= class.admits(expected.flip());
        }
        if conforming {
            Some(false)
        } else if flipped {
            Some(true)
        } else {
            None
        }
    }

    pub fn classify(&self) -> MatrixKind {
        let mut shifted_even = 0;
        let mut shifted_odd = 0;
        for j in 0..self.cols.len() {
            match self.column_shift(j) {
                None => return MatrixKind::Inhomogeneous,
                Some(true) if j < self.cols.even => shifted_even += 1,
                Some(true) => shifted_odd += 1,
                Some(false) => {}
            }
        }
        let total = self.cols.len();
        if shifted_even + shifted_odd == 0 {
            MatrixKind::Even
        } else if shifted_odd == 0 {
            MatrixKind::FakeI
        } else if shifted_even == 0 {
            MatrixKind::FakeII
        } else if shifted_even + shifted_odd == total {
            MatrixKind::Odd
        } else {
            MatrixKind::Inhomogeneous
        }
    }

    pub fn multiply(&self, other: &SuperMatrix<T>) -> Result<SuperMatrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {} x {} by {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = Grid { rows: self.rows.len(), cols: self.cols.len(), data: self.entries.clone() };
        let b = Grid { rows: other.rows.len(), cols: other.cols.len(), data: other.entries.clone() };
        let c = a.mul(&b, &self.ctx);
        Ok(SuperMatrix { ctx: self.ctx.clone(), rows: self.rows, cols: other.cols, entries: c.data })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols.len() {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows.len())
            .map(|i| {
                let mut acc = T::zero(&self.ctx);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect())
    }

    /// `B^Π`: swaps `B1 ↔ B4` and `B2 ↔ B3`.
    pub fn pi_reverse(&self) -> SuperMatrix<T> {
        let (b1, b2, b3, b4) = self.blocks();
        SuperMatrix::from_blocks(&self.ctx, &b4, &b3, &b2, &b1).expect("block shapes")
    }

    /// Keeps the listed rows and columns (absolute slot numbers, each list
    /// increasing and respecting the block layout).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<SuperMatrix<T>> {
        for &i in rows {
            if i >= self.rows.len() {
                return Err(Error::OutOfRange(format!("row {i}")));
            }
        }
        for &j in cols {
            if j >= self.cols.len() {
                return Err(Error::OutOfRange(format!("column {j}")));
            }
        }
        let re = rows.iter().filter(|&&i| i < self.rows.even).count();
        let ce = cols.iter().filter(|&&j| j < self.cols.even).count();
        let rsig = ParitySignature::new(re, rows.len() - re);
        let csig = ParitySignature::new(ce, cols.len() - ce);
        Ok(SuperMatrix::from_fn(&self.ctx, rsig, csig, |i, j| self.get(rows[i], cols[j]).clone()))
    }

    /// `A^u_v`: deletes the selected rows and columns.
    pub fn submatrix_delete(&self, sel: &IndexSelection) -> Result<SuperMatrix<T>> {
        let keep = |sig: ParitySignature, even: &[usize], odd: &[usize]| -> Result<Vec<usize>> {
            for &i in even {
                if i >= sig.even {
                    return Err(Error::OutOfRange(format!("even index {}", i + 1)));
                }
            }
            for &i in odd {
                if i >= sig.odd {
                    return Err(Error::OutOfRange(format!("odd index {}", i + 1)));
                }
            }
            let mut out: Vec<usize> = (0..sig.even).filter(|i| !even.contains(i)).collect();
            out.extend((0..sig.odd).filter(|i| !odd.contains(i)).map(|i| sig.even + i));
            Ok(out)
        };
        let rows = keep(self.rows, &sel.removed_even_rows, &sel.removed_odd_rows)?;
        let cols = keep(self.cols, &sel.removed_even_cols, &sel.removed_odd_cols)?;
        self.select(&rows, &cols)
    }

    /// `M_slot(b)`.
    pub fn replace_column(&self, slot: usize, b: &[T]) -> Result<SuperMatrix<T>> {
        if b.len() != self.rows.len() {
            return Err(Error::Dimension(format!(
                "column of length {} for {} rows",
                b.len(),
                self.rows.len()
            )));
        }
        if slot >= self.cols.len() {
            return Err(Error::OutOfRange(format!("column {slot}")));
        }
        let mut out = self.clone();
        for (i, v) in b.iter().enumerate() {
            out.set(i, slot, v.clone());
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{} x {} is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// `Ber B = det(B4)⁻¹ det(B1 − B2 B4⁻¹ B3)` for even and type-I fake
    /// matrices. With `d = det B4` this is evaluated as
    /// `det(d·B1 − B2 adj(B4) B3) · d^{−r−1}`.
    pub fn berezinian(&self) -> Result<T> {
        self.require_square()?;
        match self.classify() {
            MatrixKind::Even | MatrixKind::FakeI => {}
            k => return Err(Error::Kind(format!("Ber of a {k:?} matrix"))),
        }
        let ctx = &self.ctx;
        let (b1, b2, b3, b4) = self.blocks();
        let r = b1.rows;
        if b4.rows == 0 {
            return b1.det(ctx);
        }
        let d = b4.det(ctx)?;
        if !d.has_unit_body() {
            return Err(Error::NotInvertible("odd diagonal block is singular".into()));
        }
        let dinv = d.inverse_even()?;
        let core = b1.scale(&d).sub(&b2.mul(&b4.adjugate(ctx)?, ctx).mul(&b3, ctx));
        let mut out = core.det(ctx)?;
        for _ in 0..=r {
            out = out.times(&dinv);
        }
        Ok(out)
    }

    /// `Ber* B = Ber B^Π` for even and type-II fake matrices.
    pub fn berezinian_star(&self) -> Result<T> {
        self.require_square()?;
        match self.classify() {
            MatrixKind::Even | MatrixKind::FakeII => {}
            k => return Err(Error::Kind(format!("Ber* of a {k:?} matrix"))),
        }
        self.pi_reverse().berezinian()
    }

    fn require_even_square(&self) -> Result<()> {
        self.require_square()?;
        if self.classify() != MatrixKind::Even {
            return Err(Error::Kind("expected an even supermatrix".into()));
        }
        Ok(())
    }

    /// `M = M₊ M₀ M₋` with `M₊ = (I X; 0 I)`, `M₀ = (V 0; 0 W)`,
    /// `M₋ = (I 0; Z I)`.
    pub fn udl_decompose(&self) -> Result<Udl<T>> {
        self.require_even_square()?;
        let ctx = &self.ctx;
        let (m1, m2, m3, m4) = self.blocks();
        let m4inv = m4.inverse_even(ctx)?;
        let x = m2.mul(&m4inv, ctx);
        let z = m4inv.mul(&m3, ctx);
        let v = m1.sub(&x.mul(&m3, ctx));
        let vdet = v.det(ctx)?;
        if !vdet.has_unit_body() {
            return Err(Error::NotInvertible("even diagonal block is singular".into()));
        }
        Ok(Udl { x, v, w: m4, z })
    }

    /// `M⁻¹ = M₋⁻¹ M₀⁻¹ M₊⁻¹`.
    pub fn inverse(&self) -> Result<SuperMatrix<T>> {
        let ctx = &self.ctx;
        let Udl { x, v, w, z } = self.udl_decompose()?;
        let vinv = v.inverse_even(ctx)?;
        let winv = w.inverse_even(ctx)?;
        let zv = z.mul(&vinv, ctx);
        let b1 = vinv.clone();
        let b2 = vinv.mul(&x, ctx).neg();
        let b3 = zv.neg();
        let b4 = zv.mul(&x, ctx).add(&winv);
        SuperMatrix::from_blocks(ctx, &b1, &b2, &b3, &b4)
    }

    /// Solves `M x = b` by super Cramer's rule:
    /// `x_i = Ber M_i(b) / Ber M`, `x_ĵ = Ber* M_ĵ(b) / Ber* M`.
    pub fn super_cramer_solve(&self, b: &[T]) -> Result<Vec<T>> {
        self.require_even_square()?;
        if b.len() != self.rows.len() {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        vector_parity(&self.rows, b)?;
        let ber_inv = self.berezinian()?.inverse_even()?;
        let ber_star_inv = self.berezinian_star()?.inverse_even()?;
        let mut x = Vec::with_capacity(b.len());
        for i in 0..self.cols.len() {
            let m = self.replace_column(i, b)?;
            if i < self.cols.even {
                x.push(m.berezinian()?.times(&ber_inv));
            } else {
                x.push(m.berezinian_star()?.times(&ber_star_inv));
            }
        }
        Ok(x)
    }

    pub fn same_as(&self, other: &SuperMatrix<T>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.same_as(b))
    }

    pub fn map<U: SuperAlgebra>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> Result<U>) -> Result<SuperMatrix<U>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<U>>>()?;
        Ok(SuperMatrix { ctx: ctx.clone(), rows: self.rows, cols: self.cols, entries })
    }
}

/// Parity of a column vector relative to the row signature: even if each
/// entry has the parity of its row, odd if each has the opposite parity.
pub fn vector_parity<T: SuperAlgebra>(rows: &ParitySignature, b: &[T]) -> Result<Parity> {
    let mut even = true;
    let mut odd = true;
    for (i, v) in b.iter().enumerate() {
        let class = v.parity_class();
        even &= class.admits(rows.parity(i));
        odd &= class.admits(rows.parity(i).flip());
    }
    match (even, odd) {
        (true, _) => Ok(Parity::Even),
        (false, true) => Ok(Parity::Odd),
        (false, false) => Err(Error::Parity("inhomogeneous right-hand side".into())),
    }
}

/// Blocks of the factorization `M = M₊ M₀ M₋`.
#[derive(Clone, Debug)]
pub struct Udl<T> {
    pub x: Grid<T>,
    pub v: Grid<T>,
    pub w: Grid<T>,
    pub z: Grid<T>,
}

impl<T: SuperAlgebra> Udl<T> {
    pub fn factors(&self, ctx: &T::Ctx) -> (SuperMatrix<T>, SuperMatrix<T>, SuperMatrix<T>) {
        let (r, s) = (self.v.rows, self.w.rows);
        let plus = SuperMatrix::from_blocks(
            ctx,
            &Grid::identity(ctx, r),
            &self.x,
            &Grid::zeros(ctx, s, r),
            &Grid::identity(ctx, s),
        )
        .expect("shapes");
        let middle = SuperMatrix::from_blocks(
            ctx,
            &self.v,
            &Grid::zeros(ctx, r, s),
            &Grid::zeros(ctx, s, r),
            &self.w,
        )
        .expect("shapes");
        let minus = SuperMatrix::from_blocks(
            ctx,
            &Grid::identity(ctx, r),
            &Grid::zeros(ctx, r, s),
            &self.z,
            &Grid::identity(ctx, s),
        )
        .expect("shapes");
        (plus, middle, minus)
    }
}

impl SuperMatrix<Scalar> {
    /// Row-major text with a signature header:
    /// `supermatrix r|s x p|q` followed by one `row` line per row, even and
    /// odd columns separated by `|`.
    pub fn to_text(&self) -> String {
        let mut out = format!("supermatrix {} x {}\n", self.rows, self.cols);
        for i in 0..self.rows.len() {
            let even: Vec<String> =
                (0..self.cols.even).map(|j| self.get(i, j).to_text()).collect();
            let odd: Vec<String> = (self.cols.even..self.cols.len())
                .map(|j| self.get(i, j).to_text())
                .collect();
            out.push_str(&format!("row {} | {}\n", even.join(", "), odd.join(", ")));
        }
        out
    }
}
