//! Subspaces of `F_p^n` in reduced row echelon form.

/// Arithmetic modulo a small prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fp {
    p: u32,
}

impl Fp {
    pub(crate) fn new(p: u32) -> Self {
        Fp { p }
    }

    fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    fn mul(self, a: u8, b: u8) -> u8 {
        (a as u32 * b as u32 % self.p) as u8
    }

    fn neg(self, a: u8) -> u8 {
        ((self.p - a as u32) % self.p) as u8
    }

    fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        // Fermat: a^(p-2).
        let mut result = 1u32;
        let mut base = a as u32 % self.p;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        result as u8
    }

    /// `row -= factor * pivot_row`
    fn eliminate(self, row: &mut [u8], pivot_row: &[u8], factor: u8) {
        let f = self.neg(factor);
        for (r, &s) in row.iter_mut().zip(pivot_row) {
            *r = self.add(*r, self.mul(f, s));
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Row-reduces `rows` to the canonical RREF basis of their span, dropping
/// zero rows.
pub(crate) fn rref(mut rows: Vec<Vec<u8>>, field: Fp) -> Vec<Vec<u8>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = field.inv(rows[pivot_row][col]);
        for v in rows[pivot_row].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                field.eliminate(row, &pivot, factor);
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub(crate) fn is_canonical_rref(rows: &[Vec<u8>], n: usize, p: u32) -> bool {
    let mut last_pivot: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n || row.iter().any(|&v| v as u32 >= p) {
            return false;
        }
        let Some(pivot) = row.iter().position(|&v| v != 0) else {
            return false;
        };
        if row[pivot] != 1 || last_pivot.is_some_and(|lp| pivot <= lp) {
            return false;
        }
        if rows.iter().enumerate().any(|(j, other)| j != i && other[pivot] != 0) {
            return false;
        }
        last_pivot = Some(pivot);
    }
    true
}

/// Whether `v` lies in the row space of the RREF matrix `basis`.
///
/// Solves for the coefficients by reading them off the pivot columns, then
/// checks that the residual vanishes.
pub(crate) fn in_span(basis: &[Vec<u8>], v: &[u8], field: Fp) -> bool {
    let mut residual = v.to_vec();
    for row in basis {
        let pivot = row.iter().position(|&x| x != 0).expect("RREF rows are nonzero");
        let coeff = residual[pivot];
        if coeff != 0 {
            field.eliminate(&mut residual, row, coeff);
        }
    }
    residual.iter().all(|&x| x == 0)
}

/// `inner` is a subspace of `outer`.
pub(crate) fn is_subspace(inner: &[Vec<u8>], outer: &[Vec<u8>], field: Fp) -> bool {
    inner.len() <= outer.len() && inner.iter().all(|row| in_span(outer, row, field))
}

/// Every `k`-dimensional subspace of `F_p^n` as an RREF matrix.
pub(crate) fn enumerate(n: usize, k: usize, p: u32) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // Free cells: row i, column j > pivots[i], j not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| ((c + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut template = vec![vec![0u8; n]; k];
        for (i, &c) in pivots.iter().enumerate() {
            template[i][c] = 1;
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut m = template.clone();
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m[i][j] = d;
            }
            out.push(m);
            // Odometer increment over the free cells.
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if (digits[pos] as u32) < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 31] {
            let f = Fp::new(p);
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rref_canonical() {
        let f = Fp::new(2);
        let m = rref(vec![vec![1, 1], vec![1, 0]], f);
        assert_eq!(m, vec![vec![1, 0], vec![0, 1]]);
        assert!(is_canonical_rref(&m, 2, 2));
        let m = rref(vec![vec![0, 1, 1], vec![0, 1, 1]], f);
        assert_eq!(m, vec![vec![0, 1, 1]]);
        let f3 = Fp::new(3);
        let m = rref(vec![vec![2, 1, 0], vec![0, 2, 2]], f3);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(!is_canonical_rref(&[vec![1, 1], vec![0, 1]], 2, 2));
        assert!(!is_canonical_rref(&[vec![0, 1], vec![1, 0]], 2, 2));
        assert!(!is_canonical_rref(&[vec![2, 0]], 2, 3));
    }

    #[test]
    fn span_membership() {
        let f = Fp::new(2);
        let full = vec![vec![1, 0], vec![0, 1]];
        assert!(in_span(&full, &[1, 1], f));
        assert!(is_subspace(&[vec![1, 1]], &full, f));
        assert!(!is_subspace(&[vec![1, 1]], &[vec![1, 0]], f));
        assert!(is_subspace(&[], &[vec![1, 0]], f));
    }

    #[test]
    fn enumerate_lines_of_the_plane() {
        let lines = enumerate(2, 1, 2);
        assert_eq!(lines, vec![vec![vec![1, 0]], vec![vec![1, 1]], vec![vec![0, 1]]]);
        assert_eq!(enumerate(3, 0, 2), vec![Vec::<Vec<u8>>::new()]);
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..32).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
    }
}
