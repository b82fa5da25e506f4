//! Finitely generated abelian groups in invariant-factor form.

mod hom;
mod space;
mod system;

pub use hom::{
    image_contains, is_exact_at, mod_two, two_torsion, Homomorphism, Preimager, QuotientGroup,
    Subgroup,
};
pub use space::{DirectSum, HomSpace};
pub use system::HomSystem;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ibig::ops::Abs;

use crate::error::{Error, Result};
use crate::int::{divides, int, is_one, is_zero, reduce, Int};
use crate::lin;

/// `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...` among the nonzero factors
/// and the zero (free) factors last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgGroup {
    factors: Arc<[Int]>,
}

fn check_canonical(factors: &[Int]) -> std::result::Result<(), String> {
    let mut seen_zero = false;
    let mut prev: Option<&Int> = None;
    for d in factors {
        if is_zero(d) {
            seen_zero = true;
            continue;
        }
        if seen_zero {
            return Err("free factors must trail".into());
        }
        if *d < int(2) {
            return Err(format!("invalid invariant factor {d}"));
        }
        if let Some(p) = prev {
            if !divides(p, d) {
                return Err(format!("{p} does not divide {d}"));
            }
        }
        prev = Some(d);
    }
    Ok(())
}

impl FgGroup {
    /// Validates an already-canonical factor list.
    pub fn new(factors: Vec<Int>) -> Result<Self> {
        check_canonical(&factors).map_err(Error::Parse)?;
        Ok(FgGroup {
            factors: factors.into(),
        })
    }

    pub(crate) fn canonical_unchecked(factors: Vec<Int>) -> Self {
        debug_assert!(check_canonical(&factors).is_ok(), "{factors:?}");
        FgGroup {
            factors: factors.into(),
        }
    }

    /// The canonical form of `Z/n_1 + ... + Z/n_k` for arbitrary orders,
    /// where an order of 0 means Z and 1 the trivial group.
    pub fn from_orders(orders: &[Int]) -> Self {
        let orders: Vec<Int> = orders.iter().map(|x| x.abs()).collect();
        lin::normalize(&orders).group
    }

    pub fn from_orders_i64(orders: &[i64]) -> Self {
        Self::from_orders(&orders.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    pub fn trivial() -> Self {
        FgGroup {
            factors: Arc::from(Vec::new()),
        }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_orders_i64(&[n])
    }

    pub fn integers() -> Self {
        Self::from_orders_i64(&[0])
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !is_zero(d))
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| is_zero(d)).count()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.factors.iter().fold(int(1), |acc, d| acc * d))
    }

    /// `2U = 0`.
    pub fn killed_by_two(&self) -> bool {
        self.factors.iter().all(|d| *d == int(2))
    }

    pub fn direct_sum(&self, other: &FgGroup) -> FgGroup {
        let all: Vec<Int> = self
            .factors
            .iter()
            .chain(other.factors.iter())
            .cloned()
            .collect();
        Self::from_orders(&all)
    }

    pub fn reduce(&self, v: &mut [Int]) {
        assert_eq!(v.len(), self.ngens(), "element length mismatch");
        lin::reduce_vec(&self.factors, v);
    }

    pub fn reduced(&self, mut v: Vec<Int>) -> Vec<Int> {
        self.reduce(&mut v);
        v
    }

    pub fn zero_vec(&self) -> Vec<Int> {
        vec![int(0); self.ngens()]
    }

    pub fn is_zero_vec(&self, v: &[Int]) -> bool {
        v.iter()
            .zip(self.factors.iter())
            .all(|(x, d)| is_zero(&reduce(x, d)))
    }

    pub fn element(&self, coeffs: Vec<Int>) -> Result<GroupElement> {
        GroupElement::new(self, coeffs)
    }

    /// Every element exactly once, in lexicographic coefficient order.
    pub fn elements(&self) -> Result<Elements> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(odometer(self.factors.to_vec()))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty group literal".into()));
        }
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part == "0" {
                continue;
            }
            if part == "Z" {
                orders.push(int(0));
                continue;
            }
            let n = part
                .strip_prefix("Z/")
                .ok_or_else(|| Error::Parse(format!("bad summand `{part}`")))?;
            let n: Int = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order in `{part}`")))?;
            if n < int(2) {
                return Err(Error::Parse(format!(
                    "cyclic order must be >= 2 in `{part}`"
                )));
            }
            orders.push(n);
        }
        Ok(Self::from_orders(&orders))
    }
}

impl FromStr for FgGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (k, d) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if is_zero(d) {
                write!(f, "Z")?;
            } else {
                write!(f, "Z/{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every vector `x` with `0 <= x_k < mods[k]`; all moduli must be nonzero.
pub struct Elements {
    mods: Vec<Int>,
    next: Option<Vec<Int>>,
}

pub(crate) fn odometer(mods: Vec<Int>) -> Elements {
    debug_assert!(mods.iter().all(|m| !is_zero(m)));
    Elements {
        next: Some(vec![int(0); mods.len()]),
        mods,
    }
}

impl Iterator for Elements {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += int(1);
            if succ[k] < self.mods[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = int(0);
        }
        Some(cur)
    }
}

/// An element with canonically reduced coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    parent: FgGroup,
    coeffs: Vec<Int>,
}

impl GroupElement {
    pub fn new(parent: &FgGroup, coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != parent.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {}",
                coeffs.len(),
                parent
            )));
        }
        Ok(GroupElement {
            coeffs: parent.reduced(coeffs),
            parent: parent.clone(),
        })
    }

    pub fn zero(parent: &FgGroup) -> Self {
        GroupElement {
            parent: parent.clone(),
            coeffs: parent.zero_vec(),
        }
    }

    pub fn parent(&self) -> &FgGroup {
        &self.parent
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.parent != other.parent {
            return Err(Error::Mismatch(format!(
                "{} vs {}",
                self.parent, other.parent
            )));
        }
        let sum = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GroupElement::new(&self.parent, sum)
    }

    pub fn scale(&self, k: &Int) -> GroupElement {
        let v = self.coeffs.iter().map(|a| a * k).collect();
        GroupElement::new(&self.parent, v).expect("same length")
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(&int(-1))
    }

    /// Additive order; `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        let mut ord = int(1);
        for (x, d) in self.coeffs.iter().zip(self.parent.factors()) {
            if is_zero(x) {
                continue;
            }
            if is_zero(d) {
                return None;
            }
            let o = d / crate::int::gcd(x, d);
            if !is_one(&o) {
                ord = &ord * &o / crate::int::gcd(&ord, &o);
            }
        }
        Some(ord)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.parent)
    }
}
