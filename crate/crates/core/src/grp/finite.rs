//! Table-backed finite groups.
//!
//! Elements are indices in `[0, order)` following the construction order:
//! residues for cyclic groups, `s^j r^i` at index `j*n + i` for dihedral
//! groups, lexicographic one-line notation for symmetric groups and
//! lexicographic (first factor most significant) for direct products.

use std::sync::OnceLock;

/// Largest order for which the full multiplication table is materialized.
pub const TABLE_LIMIT: usize = 5040;

#[derive(Debug, Clone)]
enum Shape {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Vec<FiniteGroup>),
}

#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    shape: Shape,
    abelian: bool,
    inverses: Vec<u32>,
    table: OnceLock<Vec<u32>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(t.clone());
        }
        FiniteGroup {
            order: self.order,
            shape: self.shape.clone(),
            abelian: self.abelian,
            inverses: self.inverses.clone(),
            table,
        }
    }
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Self {
        Self::build(n, Shape::Cyclic(n), true)
    }

    pub fn dihedral(n: usize) -> Self {
        Self::build(2 * n, Shape::Dihedral(n), n <= 2)
    }

    pub fn symmetric(n: usize) -> Self {
        Self::build(factorial(n), Shape::Symmetric(n), n <= 2)
    }

    pub fn product(parts: Vec<FiniteGroup>) -> Self {
        let order = parts.iter().map(|p| p.order).product();
        let abelian = parts.iter().all(|p| p.abelian);
        Self::build(order, Shape::Product(parts), abelian)
    }

    fn build(order: usize, shape: Shape, abelian: bool) -> Self {
        let mut g = FiniteGroup {
            order,
            shape,
            abelian,
            inverses: Vec::new(),
            table: OnceLock::new(),
        };
        g.inverses = (0..order).map(|i| g.compute_inv(i) as u32).collect();
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Index of the neutral element (always 0 in every construction).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.order <= TABLE_LIMIT {
            let t = self.table.get_or_init(|| self.build_table());
            t[a * self.order + b] as usize
        } else {
            self.compute_mul(a, b)
        }
    }

    pub fn components(&self) -> Option<&[FiniteGroup]> {
        match &self.shape {
            Shape::Product(parts) => Some(parts),
            _ => None,
        }
    }

    pub fn is_symmetric(&self) -> Option<usize> {
        match self.shape {
            Shape::Symmetric(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_dihedral(&self) -> Option<usize> {
        match self.shape {
            Shape::Dihedral(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_cyclic(&self) -> Option<usize> {
        match self.shape {
            Shape::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    /// Splits a product index into component indices.
    pub fn split(&self, mut a: usize) -> Vec<usize> {
        let parts = match &self.shape {
            Shape::Product(parts) => parts,
            _ => return vec![a],
        };
        let mut out = vec![0; parts.len()];
        for (k, p) in parts.iter().enumerate().rev() {
            out[k] = a % p.order;
            a /= p.order;
        }
        out
    }

    pub fn join(&self, comps: &[usize]) -> usize {
        match &self.shape {
            Shape::Product(parts) => parts
                .iter()
                .zip(comps)
                .fold(0, |acc, (p, &c)| acc * p.order + c),
            _ => comps[0],
        }
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = self.compute_mul(a, b) as u32;
            }
        }
        t
    }

    fn compute_mul(&self, a: usize, b: usize) -> usize {
        match &self.shape {
            Shape::Cyclic(n) => (a + b) % n,
            Shape::Dihedral(n) => {
                let (j, i) = (a / n, a % n);
                let (l, k) = (b / n, b % n);
                let i = if l == 1 { (n - i) % n } else { i };
                ((j + l) % 2) * n + (i + k) % n
            }
            Shape::Symmetric(d) => {
                let p = unrank_perm(a, *d);
                let q = unrank_perm(b, *d);
                let r: Vec<u8> = q.iter().map(|&x| p[x as usize]).collect();
                rank_perm(&r)
            }
            Shape::Product(parts) => {
                let xs = self.split(a);
                let ys = self.split(b);
                let zs: Vec<usize> = parts
                    .iter()
                    .zip(xs.iter().zip(&ys))
                    .map(|(p, (&x, &y))| p.mul(x, y))
                    .collect();
                self.join(&zs)
            }
        }
    }

    fn compute_inv(&self, a: usize) -> usize {
        match &self.shape {
            Shape::Cyclic(n) => (n - a) % n,
            Shape::Dihedral(n) => {
                let (j, i) = (a / n, a % n);
                if j == 0 {
                    (n - i) % n
                } else {
                    a
                }
            }
            Shape::Symmetric(d) => {
                let p = unrank_perm(a, *d);
                let mut q = vec![0u8; *d];
                for (x, &y) in p.iter().enumerate() {
                    q[y as usize] = x as u8;
                }
                rank_perm(&q)
            }
            Shape::Product(parts) => {
                let xs = self.split(a);
                let ys: Vec<usize> = parts.iter().zip(&xs).map(|(p, &x)| p.inv(x)).collect();
                self.join(&ys)
            }
        }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Permutation at position `idx` in the lexicographic list of one-line notations.
pub fn unrank_perm(mut idx: usize, n: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let pos = idx / f;
        idx %= f;
        out.push(pool.remove(pos));
    }
    out
}

pub fn rank_perm(p: &[u8]) -> usize {
    let n = p.len();
    let mut idx = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        idx += smaller * factorial(n - 1 - i);
    }
    idx
}
