//! Finite Abelian groups as products of cyclic factors.
//!
//! A group is a factor list `Z n1 x ... x Z nk`; elements are residue
//! tuples. Every element also has a linear index in `0..n` obtained by
//! mixed-radix encoding (first factor most significant). That fixed
//! indexing doubles as the predefined vertex ordering used for all
//! tie-breaking in the encoding algorithms, so it is part of the wire
//! contract: certificates and exported sets refer to linear indices.

use crate::error::{Error, Result};
use num::complex::Complex64;
use std::f64::consts::TAU;

/// A finite Abelian group given as an ordered list of cyclic orders.
///
/// No canonicalization is performed: `Z6` and `Z2xZ3` are distinct inputs
/// (isomorphic, but with different element indexings).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<u64>,
    order: u64,
    strides: Vec<u64>,
}

/// An element as a reduced residue tuple; mostly used at the boundary
/// (parsing and display), internal arithmetic works on linear indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display_name())
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::parse("group needs at least one factor"));
        }
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::domain(format!("cyclic factor {bad} is below 2")));
        }
        let mut order: u64 = 1;
        for &f in &factors {
            order = order
                .checked_mul(f)
                .ok_or_else(|| Error::domain("group order overflows u64"))?;
        }
        // strides[j] = product of the factors after j; index = Σ x_j · strides[j]
        let mut strides = vec![1u64; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1];
        }
        Ok(GroupSpec {
            factors,
            order,
            strides,
        })
    }

    /// Parse the grammar `Z<int>("x" "Z"<int>)*`, case-insensitive.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse("empty group spec"));
        }
        let mut factors = Vec::new();
        for token in text.split(['x', 'X']) {
            let rest = token
                .strip_prefix(['z', 'Z'])
                .ok_or_else(|| Error::parse(format!("expected Z<int>, got `{token}`")))?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(format!("expected Z<int>, got `{token}`")));
            }
            let f: u64 = rest
                .parse()
                .map_err(|_| Error::parse(format!("factor `{rest}` out of range")))?;
            factors.push(f);
        }
        GroupSpec::new(factors)
    }

    pub fn display_name(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    pub fn order_usize(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Residue tuple of the element with linear index `idx`.
    pub fn element(&self, idx: usize) -> GroupElement {
        debug_assert!((idx as u64) < self.order);
        let mut residues = Vec::with_capacity(self.factors.len());
        let mut rest = idx as u64;
        for j in 0..self.factors.len() {
            residues.push(rest / self.strides[j] % self.factors[j]);
            rest %= self.strides[j];
        }
        GroupElement { residues }
    }

    /// Linear index of a residue tuple.
    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        if e.residues.len() != self.factors.len() {
            return Err(Error::domain("element arity does not match the group"));
        }
        let mut idx = 0u64;
        for (j, &r) in e.residues.iter().enumerate() {
            if r >= self.factors[j] {
                return Err(Error::domain(format!(
                    "residue {r} out of range for Z{}",
                    self.factors[j]
                )));
            }
            idx += r * self.strides[j];
        }
        Ok(idx as usize)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        let (mut xr, mut yr) = (x as u64, y as u64);
        let mut idx = 0u64;
        for j in 0..self.factors.len() {
            let a = xr / self.strides[j] % self.factors[j];
            let b = yr / self.strides[j] % self.factors[j];
            idx += (a + b) % self.factors[j] * self.strides[j];
            xr %= self.strides[j];
            yr %= self.strides[j];
        }
        idx as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        let mut xr = x as u64;
        let mut idx = 0u64;
        for j in 0..self.factors.len() {
            let a = xr / self.strides[j] % self.factors[j];
            idx += (self.factors[j] - a) % self.factors[j] * self.strides[j];
            xr %= self.strides[j];
        }
        idx as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// Smallest t ≥ 1 with t·g = 0; the lcm of the componentwise orders.
    pub fn element_order(&self, g: usize) -> u64 {
        let e = self.element(g);
        let mut ord = 1u64;
        for (j, &r) in e.residues.iter().enumerate() {
            let comp = self.factors[j] / gcd(self.factors[j], r);
            ord = lcm(ord, comp);
        }
        ord
    }

    /// Exact number of elements of order `q`.
    pub fn count_elements_of_order(&self, q: u64) -> u64 {
        (0..self.order_usize())
            .filter(|&g| self.element_order(g) == q)
            .count() as u64
    }

    /// The smallest prime q ≡ 2 (mod 3) dividing the group order, if any.
    pub fn smallest_type_i_prime(&self) -> Option<u64> {
        prime_divisors(self.order)
            .into_iter()
            .find(|&q| q % 3 == 2)
    }

    /// χ_a(x) = exp(2πi Σ_j a_j x_j / n_j).
    pub fn character_value(&self, a: usize, x: usize) -> Complex64 {
        let (ae, xe) = (self.element(a), self.element(x));
        let mut frac = 0.0f64;
        for j in 0..self.factors.len() {
            let t = ae.residues[j] * xe.residues[j] % self.factors[j];
            frac += t as f64 / self.factors[j] as f64;
        }
        Complex64::from_polar(1.0, TAU * frac)
    }

    /// All homomorphisms G → Z_q (q prime) with nonzero image, i.e. the
    /// surjective ones. Coefficients a_j must satisfy a_j·n_j ≡ 0 (mod q),
    /// which for prime q forces a_j = 0 whenever q ∤ n_j.
    pub fn surjective_homs_to_zq(&self, q: u64) -> Result<Vec<Homomorphism>> {
        if !is_prime(q) {
            return Err(Error::domain(format!("{q} is not prime")));
        }
        let free: Vec<usize> = (0..self.factors.len())
            .filter(|&j| self.factors[j] % q == 0)
            .collect();
        let mut homs = Vec::new();
        let mut coeffs = vec![0u64; self.factors.len()];
        let count = (q as u128).pow(free.len() as u32);
        for mut code in 1..count {
            for &j in &free {
                coeffs[j] = (code % q as u128) as u64;
                code /= q as u128;
            }
            homs.push(Homomorphism {
                modulus: q,
                coeffs: coeffs.clone(),
            });
        }
        Ok(homs)
    }

    /// Index-2 subgroups, each as the kernel of a surjection onto Z_2.
    /// There are exactly as many as elements of order 2.
    pub fn index_two_subgroups(&self) -> Vec<crate::bitset::BitSet> {
        let homs = self.surjective_homs_to_zq(2).expect("2 is prime");
        homs.iter()
            .map(|phi| {
                let mut ker = crate::bitset::BitSet::new(self.order_usize());
                for x in 0..self.order_usize() {
                    if phi.apply(self, x) == 0 {
                        ker.insert(x);
                    }
                }
                ker
            })
            .collect()
    }
}

/// A homomorphism G → Z_q given by coefficients on the cyclic factors:
/// φ(x) = Σ a_j x_j (mod q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub modulus: u64,
    pub coeffs: Vec<u64>,
}

impl Homomorphism {
    pub fn apply(&self, group: &GroupSpec, x: usize) -> u64 {
        let e = group.element(x);
        let mut acc = 0u64;
        for (j, &r) in e.residues.iter().enumerate() {
            acc = (acc + self.coeffs[j] % self.modulus * (r % self.modulus)) % self.modulus;
        }
        acc
    }

    /// Preimage of a residue set, as element indices.
    pub fn preimage(&self, group: &GroupSpec, targets: &[u64]) -> Vec<usize> {
        (0..group.order_usize())
            .filter(|&x| targets.contains(&self.apply(group, x)))
            .collect()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
