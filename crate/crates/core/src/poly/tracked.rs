//! Elementary operations on a polynomial matrix that keep the transforms
//! and their inverses in step, so the resulting certificate never needs a
//! determinant computation to prove unimodularity.

use super::{IntPoly, PolyMatrix};

#[derive(Clone, Debug)]
pub(crate) struct TrackedPolyMatrix {
    pub m: PolyMatrix,
    pub p: PolyMatrix,
    pub p_inv: PolyMatrix,
    pub q: PolyMatrix,
    pub q_inv: PolyMatrix,
}

fn add_line(m: &mut PolyMatrix, t: usize, s: usize, f: &IntPoly, rows: bool) {
    let len = if rows { m.cols() } else { m.rows() };
    for k in 0..len {
        let (src, dst) = if rows { ((s, k), (t, k)) } else { ((k, s), (k, t)) };
        if m[src].is_zero() {
            continue;
        }
        let v = &m[dst] + &(f * &m[src]);
        m[dst] = v;
    }
}

fn swap_line(m: &mut PolyMatrix, a: usize, b: usize, rows: bool) {
    if a == b {
        return;
    }
    let len = if rows { m.cols() } else { m.rows() };
    for k in 0..len {
        let (x, y) = if rows { ((a, k), (b, k)) } else { ((k, a), (k, b)) };
        let tmp = std::mem::take(&mut m[x]);
        m[x] = std::mem::replace(&mut m[y], tmp);
    }
}

fn negate_line(m: &mut PolyMatrix, i: usize, rows: bool) {
    let len = if rows { m.cols() } else { m.rows() };
    for k in 0..len {
        let idx = if rows { (i, k) } else { (k, i) };
        if !m[idx].is_zero() {
            m[idx] = -&m[idx];
        }
    }
}

impl TrackedPolyMatrix {
    pub fn new(m: PolyMatrix) -> Self {
        let (r, c) = m.shape();
        Self {
            m,
            p: PolyMatrix::identity(r),
            p_inv: PolyMatrix::identity(r),
            q: PolyMatrix::identity(c),
            q_inv: PolyMatrix::identity(c),
        }
    }

    /// `row_t += f * row_s`.
    pub fn add_row(&mut self, t: usize, s: usize, f: &IntPoly) {
        if f.is_zero() {
            return;
        }
        add_line(&mut self.m, t, s, f, true);
        add_line(&mut self.p, t, s, f, true);
        add_line(&mut self.p_inv, s, t, &-f, false);
    }

    /// `col_t += f * col_s`.
    pub fn add_col(&mut self, t: usize, s: usize, f: &IntPoly) {
        if f.is_zero() {
            return;
        }
        add_line(&mut self.m, t, s, f, false);
        add_line(&mut self.q, t, s, f, false);
        add_line(&mut self.q_inv, s, t, &-f, true);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        swap_line(&mut self.m, a, b, true);
        swap_line(&mut self.p, a, b, true);
        swap_line(&mut self.p_inv, a, b, false);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        swap_line(&mut self.m, a, b, false);
        swap_line(&mut self.q, a, b, false);
        swap_line(&mut self.q_inv, a, b, true);
    }

    pub fn negate_row(&mut self, i: usize) {
        negate_line(&mut self.m, i, true);
        negate_line(&mut self.p, i, true);
        negate_line(&mut self.p_inv, i, false);
    }
}
