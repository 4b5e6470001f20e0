//! Polynomials over the prime field with `p < 2^31` elements.

use rand::Rng;
use rug::Integer;

use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfPoly {
    p: u64,
    /// Ascending, trimmed, entries in `0..p`.
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl GfPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        GfPoly { p, c }
    }

    /// Coefficient-wise reduction of an integer polynomial.
    pub fn reduce(f: &IntPoly, p: u64) -> Self {
        let c = f
            .coeffs()
            .iter()
            .map(|a| a.mod_u(p as u32) as u64)
            .collect();
        Self::new(p, c)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                Self::new(self.p, self.c.iter().map(|&a| a * inv % self.p).collect())
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| {
                (self.c.get(k).copied().unwrap_or(0) + o.c.get(k).copied().unwrap_or(0)) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| {
                (self.c.get(k).copied().unwrap_or(0) + self.p - o.c.get(k).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| (k as u64 % p) * a % p)
            .collect();
        Self::new(p, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd] * inv % p;
            q[k] = t;
            if t == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - t * b % p) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m` for an arbitrary-size exponent.
    pub fn pow_mod(&self, e: &Integer, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        let bits = e.significant_bits();
        for i in (0..bits).rev() {
            result = result.mul(&result).rem(m);
            if e.get_bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Squarefree with no degree drop: `gcd(f, f') = 1` and `f' != 0`.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.deg() == 0;
        }
        self.gcd(&d).deg() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(i, g_i)` with `g_i` the product of all irreducible factors of
    /// degree `i`.
    pub fn distinct_degree(&self) -> Vec<(usize, GfPoly)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let pe = Integer::from(p);
        let mut i = 1;
        while 2 * i <= f.deg() {
            h = h.pow_mod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.div_rem(&g).0.monic();
                h = h.rem(&f);
                out.push((i, g));
            }
            i += 1;
        }
        if f.deg() > 0 {
            out.push((f.deg(), f));
        }
        out
    }

    /// Split a monic product of irreducible factors all of degree `k`.
    pub fn equal_degree<R: Rng>(&self, k: usize, rng: &mut R) -> Vec<GfPoly> {
        let n = self.deg();
        if n == k {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                // absolute trace a + a^2 + ... + a^(2^(k-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (Integer::from(Integer::u_pow_u(p as u32, k as u32)) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let other = self.div_rem(&g).0.monic();
                let mut out = g.equal_degree(k, rng);
                out.extend(other.equal_degree(k, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gp(p: u64, c: &[u64]) -> GfPoly {
        GfPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = gp(5, &[1, 2, 3]);
        let b = gp(5, &[4, 1]);
        let (q, r) = a.mul(&b).add(&gp(5, &[2])).div_rem(&b);
        assert_eq!(q, a);
        assert_eq!(r, gp(5, &[2]));
        assert_eq!(gp(3, &[1, 0, 1]).gcd(&gp(3, &[2, 1])), gp(3, &[1]));
        assert_eq!(gp(7, &[6, 0, 1]).gcd(&gp(7, &[1, 1])), gp(7, &[1, 1]));
    }

    #[test]
    fn ddf_and_edf() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x+1)(x+2)(x^2+1) over F_3; x^2+1 is irreducible mod 3
        let f = gp(3, &[1, 1]).mul(&gp(3, &[2, 1])).mul(&gp(3, &[1, 0, 1]));
        let ddf = f.distinct_degree();
        let degs: Vec<usize> = ddf.iter().map(|(i, g)| g.degree().unwrap() / i).collect();
        assert_eq!(ddf.iter().map(|(i, _)| *i).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(degs, vec![2, 1]);
        let lin = ddf[0].1.equal_degree(1, &mut rng);
        assert_eq!(lin.len(), 2);
        let prod = lin.iter().fold(GfPoly::one(3), |acc, g| acc.mul(g));
        assert_eq!(prod, ddf[0].1);
    }

    #[test]
    fn edf_characteristic_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // x^2+x+1 and x^2+x+... : the only quadratic irreducible over F_2 is x^2+x+1,
        // so use cubics x^3+x+1 and x^3+x^2+1
        let f = gp(2, &[1, 1, 0, 1]).mul(&gp(2, &[1, 0, 1, 1]));
        let parts = f.equal_degree(3, &mut rng);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|g| g.degree() == Some(3)));
    }
}
