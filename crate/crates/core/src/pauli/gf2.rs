//! Incremental Gaussian elimination over GF(2) with combination tracking.

use super::bits::Bits;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    bits: Bits,
    combo: Bits,
}

/// Row-echelon basis of a set of vectors. Every stored row remembers which of the inserted
/// vectors it is the sum of.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    inserted: usize,
    capacity: usize,
    rows: Vec<Row>,
}

impl Echelon {
    /// `capacity` bounds the number of vectors that may be inserted.
    pub fn new(width: usize, capacity: usize) -> Self {
        Echelon {
            width,
            inserted: 0,
            capacity,
            rows: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, returning the residue and the combination of
    /// inserted vectors that was added to it.
    pub fn reduce(&self, v: &Bits) -> (Bits, Bits) {
        debug_assert_eq!(v.len(), self.width);
        let mut bits = v.clone();
        let mut combo = Bits::zeros(self.capacity);
        for row in &self.rows {
            if bits.get(row.pivot) {
                bits.xor_assign(&row.bits);
                combo.xor_assign(&row.combo);
            }
        }
        (bits, combo)
    }

    /// Inserts a vector. Returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &Bits) -> bool {
        assert!(self.inserted < self.capacity, "echelon capacity exceeded");
        let index = self.inserted;
        self.inserted += 1;
        let (bits, mut combo) = self.reduce(v);
        combo.flip(index);
        match bits.first_one() {
            Some(pivot) => {
                self.rows.push(Row { pivot, bits, combo });
                true
            }
            None => false,
        }
    }

    /// Indices of inserted vectors summing to `v`, if `v` is in the span.
    pub fn solve(&self, v: &Bits) -> Option<Vec<usize>> {
        let (residue, combo) = self.reduce(v);
        residue.is_zero().then(|| combo.ones().collect())
    }
}

/// Solves `A·s = b` over GF(2) where the rows of `A` are `rows`. Returns one solution.
pub fn solve_system(rows: &[Bits], rhs: &[bool], width: usize) -> Option<Bits> {
    // Gauss-Jordan on the augmented matrix [A | b].
    let mut m: Vec<Bits> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut aug = Bits::zeros(width + 1);
            for i in r.ones() {
                aug.set(i, true);
            }
            aug.set(width, b);
            aug
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(sel) = (rank..m.len()).find(|&r| m[r].get(col)) else {
            continue;
        };
        m.swap(rank, sel);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| row.get(width)) {
        return None;
    }
    let mut sol = Bits::zeros(width);
    for (r, &col) in pivots.iter().enumerate() {
        sol.set(col, m[r].get(width));
    }
    Some(sol)
}

/// Basis of the null space of the matrix with the given rows.
pub fn null_space(rows: &[Bits], width: usize) -> Vec<Bits> {
    let mut m: Vec<Bits> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(sel) = (rank..m.len()).find(|&r| m[r].get(col)) else {
            continue;
        };
        m.swap(rank, sel);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = Bits::zeros(width);
            v.set(f, true);
            for (r, &col) in pivots.iter().enumerate() {
                if m[r].get(f) {
                    v.set(col, true);
                }
            }
            v
        })
        .collect()
}
