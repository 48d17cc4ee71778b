//! Dense integer matrices with Hermite and Smith normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src][j] * k;
            self.data[dst][j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in &mut self.data {
            let v = &r[src] * k;
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U·A = H`, `U` unimodular,
/// pivots positive with strictly increasing columns and entries above each
/// pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == h.rows {
            break;
        }
        loop {
            let piv = (r..h.rows)
                .filter(|&i| !h.data[i][c].is_zero())
                .min_by(|&x, &y| h.data[x][c].abs().cmp(&h.data[y][c].abs()));
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                if h.data[i][c].is_zero() {
                    continue;
                }
                let q = h.data[i][c].div_floor(&h.data[r][c]);
                let nq = -q;
                h.add_row(i, r, &nq);
                u.add_row(i, r, &nq);
                if !h.data[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.data[r][c].is_zero() {
            continue;
        }
        if h.data[r][c].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.data[i][c].div_floor(&h.data[r][c]);
            let nq = -q;
            h.add_row(i, r, &nq);
            u.add_row(i, r, &nq);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form `U·A·V = D` with `d_1 | d_2 | …`, all nonnegative.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if d.data[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);

        let mut clean = true;
        for i in t + 1..d.rows {
            if d.data[i][t].is_zero() {
                continue;
            }
            let q = -d.data[i][t].div_floor(&d.data[t][t]);
            d.add_row(i, t, &q);
            u.add_row(i, t, &q);
            if !d.data[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..d.cols {
            if d.data[t][j].is_zero() {
                continue;
            }
            let q = -d.data[t][j].div_floor(&d.data[t][t]);
            d.add_col(j, t, &q);
            v.add_col(j, t, &q);
            if !d.data[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a offending row into row t and retry
        let mut offender = None;
        'outer: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if !d.data[i][j].is_multiple_of(&d.data[t][t]) {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            d.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..n).take_while(|&i| !d.data[i][i].is_zero()).count();
    Smith { d, u, v, rank }
}

/// Basis of the left kernel `{y : y·A = 0}`, as rows.
pub fn left_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith(a);
    (s.rank..a.rows).map(|i| s.u.row(i).to_vec()).collect()
}

/// Reduces `v` against a row Hermite basis, returning the canonical
/// representative of `v` modulo the row lattice.
pub fn reduce_mod_lattice(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for i in 0..h.rows {
        let Some(c) = (0..h.cols).find(|&c| !h.data[i][c].is_zero()) else {
            continue;
        };
        let q = v[c].div_floor(&h.data[i][c]);
        if !q.is_zero() {
            for j in 0..h.cols {
                v[j] -= &q * &h.data[i][j];
            }
        }
    }
    v
}
