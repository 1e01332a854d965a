//! Generalized-polymatroid calculus on explicit set-function tables.
//!
//! A table stores one extended-integer value per subset of a small ground
//! set. The operations are the box intersection, cardinality intersection,
//! sum and intersection-nonemptiness rules for g-polymatroids, plus integral
//! element extraction and integral splitting of a sum. All max/min formulas
//! iterate every subset; correctness over speed.

use std::collections::BTreeMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypercore::bits;

/// An integer extended with +∞ and -∞. Ordering is the obvious one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Int(i64),
    PosInf,
}

impl Ext {
    pub fn finite(self) -> Option<i64> {
        match self {
            Ext::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Int(_))
    }

    /// Saturating addition; `None` on the indeterminate (+∞) + (-∞).
    pub fn checked_add(self, other: Ext) -> Option<Ext> {
        match (self, other) {
            (Ext::PosInf, Ext::NegInf) | (Ext::NegInf, Ext::PosInf) => None,
            (Ext::PosInf, _) | (_, Ext::PosInf) => Some(Ext::PosInf),
            (Ext::NegInf, _) | (_, Ext::NegInf) => Some(Ext::NegInf),
            (Ext::Int(a), Ext::Int(b)) => Some(Ext::Int(a + b)),
        }
    }

    /// Addition that must not hit the indeterminate form.
    pub fn add(self, other: Ext) -> Ext {
        self.checked_add(other)
            .expect("indeterminate (+inf) + (-inf) in table arithmetic")
    }

    /// `self - other` with the convention that an infinite operand on either
    /// side pushes the result to the corresponding infinity. Used only inside
    /// max/min scans where one side of each pair is known finite or the
    /// infinite value is absorbing.
    pub fn sub_finite(self, other: i64) -> Ext {
        match self {
            Ext::Int(v) => Ext::Int(v - other),
            inf => inf,
        }
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Ext::Int(v)
    }
}

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Int(v) => write!(f, "{v}"),
            Ext::PosInf => write!(f, "+inf"),
        }
    }
}

/// An integer-or-±∞ set function given by its full table over `2^ground`
/// subsets, indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctionTable {
    ground: usize,
    vals: Vec<Ext>,
}

impl SetFunctionTable {
    pub fn new(ground: usize, vals: Vec<Ext>, caps: &Caps) -> Result<Self> {
        if ground > caps.table_ground {
            return Err(Error::cap(format!(
                "table ground {ground} exceeds cap {}",
                caps.table_ground
            )));
        }
        if vals.len() != 1usize << ground {
            return Err(Error::input(format!(
                "table has {} entries, expected {}",
                vals.len(),
                1usize << ground
            )));
        }
        Ok(SetFunctionTable { ground, vals })
    }

    pub fn from_fn(ground: usize, f: impl Fn(u64) -> Ext) -> Self {
        SetFunctionTable {
            ground,
            vals: (0..1u64 << ground).map(f).collect(),
        }
    }

    /// The identically-zero function.
    pub fn zero(ground: usize) -> Self {
        Self::from_fn(ground, |_| Ext::Int(0))
    }

    /// `∞₀`: +∞ everywhere except value 0 on the empty set.
    pub fn infinity0(ground: usize) -> Self {
        Self::from_fn(ground, |x| if x == 0 { Ext::Int(0) } else { Ext::PosInf })
    }

    /// `-∞₀`: -∞ everywhere except value 0 on the empty set.
    pub fn neg_infinity0(ground: usize) -> Self {
        Self::from_fn(ground, |x| if x == 0 { Ext::Int(0) } else { Ext::NegInf })
    }

    /// The modular function `X ↦ Σ_{v∈X} w[v]`.
    pub fn modular(w: &[i64]) -> Self {
        let ground = w.len();
        Self::from_fn(ground, |x| Ext::Int(bits(x).map(|v| w[v]).sum()))
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.ground) - 1
    }

    pub fn get(&self, x: u64) -> Ext {
        self.vals[x as usize]
    }

    pub fn subsets(&self) -> impl Iterator<Item = u64> {
        0..(1u64 << self.ground)
    }

    pub fn is_submodular(&self) -> bool {
        self.subsets().all(|x| {
            self.subsets().all(|y| {
                match (
                    self.get(x).checked_add(self.get(y)),
                    self.get(x & y).checked_add(self.get(x | y)),
                ) {
                    (Some(l), Some(r)) => l >= r,
                    // an indeterminate side only arises from mixed infinities;
                    // treat +inf on the left / -inf on the right as satisfied
                    (None, Some(_)) => true,
                    (Some(l), None) => l == Ext::PosInf,
                    (None, None) => true,
                }
            })
        })
    }

    pub fn is_supermodular(&self) -> bool {
        self.negate().is_submodular()
    }

    fn negate(&self) -> SetFunctionTable {
        SetFunctionTable {
            ground: self.ground,
            vals: self
                .vals
                .iter()
                .map(|v| match v {
                    Ext::NegInf => Ext::PosInf,
                    Ext::PosInf => Ext::NegInf,
                    Ext::Int(x) => Ext::Int(-x),
                })
                .collect(),
        }
    }
}

/// A `(p, b)` pair describing `Q(p,b) = {x : p(Z) <= x(Z) <= b(Z) ∀Z}`.
/// `p` never takes +∞ and `b` never takes -∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPolyBounds {
    pub p: SetFunctionTable,
    pub b: SetFunctionTable,
}

impl GPolyBounds {
    pub fn new(p: SetFunctionTable, b: SetFunctionTable) -> Result<Self> {
        if p.ground != b.ground {
            return Err(Error::input("bound tables over different grounds".to_string()));
        }
        if p.vals.iter().any(|&v| v == Ext::PosInf) || b.vals.iter().any(|&v| v == Ext::NegInf) {
            return Err(Error::input(
                "lower table takes +inf or upper table takes -inf".to_string(),
            ));
        }
        Ok(GPolyBounds { p, b })
    }

    pub fn ground(&self) -> usize {
        self.p.ground
    }

    /// The g-polymatroid cross inequality `b(X) - p(Y) >= b(X-Y) - p(Y-X)`
    /// for all X, Y, with infinities absorbing.
    pub fn is_g_polymatroid(&self) -> bool {
        if self.p.get(0) != Ext::Int(0) || self.b.get(0) != Ext::Int(0) {
            return false;
        }
        let sub = |b: Ext, p: Ext| -> Ext {
            // b - p with b in {int,+inf}, p in {int,-inf}
            match (b, p) {
                (Ext::PosInf, _) | (_, Ext::NegInf) => Ext::PosInf,
                (Ext::Int(x), Ext::Int(y)) => Ext::Int(x - y),
                _ => unreachable!(),
            }
        };
        self.p.subsets().all(|y| {
            self.b.subsets().all(|x| {
                sub(self.b.get(x), self.p.get(y)) >= sub(self.b.get(x & !y), self.p.get(y & !x))
            })
        })
    }

    /// Membership test for an integer vector.
    pub fn contains_int(&self, x: &[i64]) -> bool {
        assert_eq!(x.len(), self.ground());
        self.p.subsets().all(|z| {
            let s = Ext::Int(bits(z).map(|v| x[v]).sum());
            self.p.get(z) <= s && s <= self.b.get(z)
        })
    }
}

/// Intersection with the box `T(f,g)`; the derived bounds are:
/// `p^g_f(Z) = max_X { p(X) - g(X-Z) + f(Z-X) }` and dually for `b`.
/// Also reports nonemptiness (`max{p,f} <= min{b,g}` over all subsets).
pub fn intersect_box(q: &GPolyBounds, f: &[i64], g: &[i64]) -> Result<(GPolyBounds, bool)> {
    let s = q.ground();
    if f.len() != s || g.len() != s {
        return Err(Error::input("box bounds have wrong ground size".to_string()));
    }
    let fx = |z: u64| -> i64 { bits(z).map(|v| f[v]).sum() };
    let gx = |z: u64| -> i64 { bits(z).map(|v| g[v]).sum() };
    let nonempty = q.p.subsets().all(|z| {
        let lo = q.p.get(z).max(Ext::Int(fx(z)));
        let hi = q.b.get(z).min(Ext::Int(gx(z)));
        lo <= hi
    });
    let new_p = SetFunctionTable::from_fn(s, |z| {
        q.p.subsets()
            .map(|x| q.p.get(x).sub_finite(gx(x & !z)).add(Ext::Int(fx(z & !x))))
            .max()
            .unwrap()
    });
    let new_b = SetFunctionTable::from_fn(s, |z| {
        q.b.subsets()
            .map(|x| q.b.get(x).sub_finite(fx(x & !z)).add(Ext::Int(gx(z & !x))))
            .min()
            .unwrap()
    });
    Ok((GPolyBounds::new(new_p, new_b)?, nonempty))
}

/// Intersection with the cardinality band `K(α,β)`:
/// `p_α^β(Z) = max{p(Z), α - b(Z̄)}`, `b_α^β(Z) = min{b(Z), β - p(Z̄)}`.
/// Nonempty iff `p <= b`, `α <= β`, `β >= p(S)` and `α <= b(S)`.
pub fn intersect_cardinality(q: &GPolyBounds, alpha: i64, beta: i64) -> Result<(GPolyBounds, bool)> {
    let s = q.ground();
    let full = q.p.full();
    let nonempty = q.p.subsets().all(|z| q.p.get(z) <= q.b.get(z))
        && alpha <= beta
        && Ext::Int(beta) >= q.p.get(full)
        && Ext::Int(alpha) <= q.b.get(full);
    let new_p = SetFunctionTable::from_fn(s, |z| {
        // α - b(Z̄): -∞ when b(Z̄) = +∞
        let lower = match q.b.get(full & !z) {
            Ext::PosInf => Ext::NegInf,
            Ext::Int(v) => Ext::Int(alpha - v),
            Ext::NegInf => unreachable!(),
        };
        q.p.get(z).max(lower)
    });
    let new_b = SetFunctionTable::from_fn(s, |z| {
        let upper = match q.p.get(full & !z) {
            Ext::NegInf => Ext::PosInf,
            Ext::Int(v) => Ext::Int(beta - v),
            Ext::PosInf => unreachable!(),
        };
        q.b.get(z).min(upper)
    });
    Ok((GPolyBounds::new(new_p, new_b)?, nonempty))
}

/// Pointwise sum `Q(p1,b1) + Q(p2,b2) = Q(p1+p2, b1+b2)`.
pub fn sum(q1: &GPolyBounds, q2: &GPolyBounds) -> Result<GPolyBounds> {
    if q1.ground() != q2.ground() {
        return Err(Error::input("sum of tables over different grounds".to_string()));
    }
    let add_all = |a: &SetFunctionTable, b: &SetFunctionTable| -> Result<SetFunctionTable> {
        let vals = a
            .vals
            .iter()
            .zip(&b.vals)
            .map(|(&x, &y)| {
                x.checked_add(y)
                    .ok_or_else(|| Error::input("(+inf) + (-inf) in table sum".to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFunctionTable { ground: a.ground, vals })
    };
    GPolyBounds::new(add_all(&q1.p, &q2.p)?, add_all(&q1.b, &q2.b)?)
}

/// Nonemptiness of an intersection of two g-polymatroids:
/// `p1 <= b2` and `p2 <= b1` over all subsets.
pub fn intersect_nonempty(q1: &GPolyBounds, q2: &GPolyBounds) -> bool {
    q1.p.subsets().all(|z| q1.p.get(z) <= q2.b.get(z) && q2.p.get(z) <= q1.b.get(z))
}

/// Finite per-coordinate bounds derived from the tables:
/// `lo_i = max_{Z∋i} p(Z) - b(Z-i)`, `hi_i = min_{Z∋i} b(Z) - p(Z-i)`.
fn coordinate_bounds(q: &GPolyBounds) -> Result<(Vec<i64>, Vec<i64>)> {
    let s = q.ground();
    let mut lo = vec![i64::MIN; s];
    let mut hi = vec![i64::MAX; s];
    for i in 0..s {
        let bit = 1u64 << i;
        let mut best_lo = Ext::NegInf;
        let mut best_hi = Ext::PosInf;
        for z in q.p.subsets().filter(|z| z & bit != 0) {
            if let (Ext::Int(pv), Ext::Int(bv)) = (q.p.get(z), q.b.get(z & !bit)) {
                best_lo = best_lo.max(Ext::Int(pv - bv));
            }
            if let (Ext::Int(bv), Ext::Int(pv)) = (q.b.get(z), q.p.get(z & !bit)) {
                best_hi = best_hi.min(Ext::Int(bv - pv));
            }
        }
        match (best_lo, best_hi) {
            (Ext::Int(l), Ext::Int(h)) => {
                lo[i] = l;
                hi[i] = h;
            }
            _ => {
                return Err(Error::cap(format!(
                    "coordinate {i} has no finite bounds; integral search needs a bounded polyhedron"
                )))
            }
        }
    }
    Ok((lo, hi))
}

/// An integral vector `x` with `p(Z) <= x(Z) <= b(Z)` for all `Z`, or `None`.
/// Coordinates are fixed in ascending element order to the smallest value
/// keeping the remainder satisfiable, so the result is deterministic.
pub fn integral_element(q: &GPolyBounds, caps: &Caps) -> Result<Option<Vec<i64>>> {
    let s = q.ground();
    if s > caps.table_ground {
        return Err(Error::cap(format!("ground {s} exceeds cap {}", caps.table_ground)));
    }
    let (lo, hi) = match coordinate_bounds(q) {
        Ok(b) => b,
        Err(Error::Cap(m)) => return Err(Error::Cap(m)),
        Err(e) => return Err(e),
    };
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(None);
    }
    let mut x = Vec::with_capacity(s);
    if dfs_integral(q, &lo, &hi, &mut x) {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

fn partial_feasible(q: &GPolyBounds, lo: &[i64], hi: &[i64], x: &[i64]) -> bool {
    let assigned = x.len();
    q.p.subsets().all(|z| {
        let mut min_sum = 0i64;
        let mut max_sum = 0i64;
        for v in bits(z) {
            if v < assigned {
                min_sum += x[v];
                max_sum += x[v];
            } else {
                min_sum += lo[v];
                max_sum += hi[v];
            }
        }
        Ext::Int(max_sum) >= q.p.get(z) && Ext::Int(min_sum) <= q.b.get(z)
    })
}

fn dfs_integral(q: &GPolyBounds, lo: &[i64], hi: &[i64], x: &mut Vec<i64>) -> bool {
    let i = x.len();
    if i == q.ground() {
        return q.contains_int(x);
    }
    for v in lo[i]..=hi[i] {
        x.push(v);
        if partial_feasible(q, lo, hi, x) && dfs_integral(q, lo, hi, x) {
            return true;
        }
        x.pop();
    }
    false
}

/// Split an integral element `m` of `Q1 + Q2` into integral `m1 ∈ Q1` and
/// `m2 ∈ Q2` with `m1 + m2 = m`; `m1` is lexicographically least. Returns
/// `None` (with the caller expected to diagnose) when `m` is not actually in
/// the sum.
pub fn integral_split(
    m: &[i64],
    q1: &GPolyBounds,
    q2: &GPolyBounds,
    caps: &Caps,
) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let s = q1.ground();
    if q2.ground() != s || m.len() != s {
        return Err(Error::input("split over mismatched grounds".to_string()));
    }
    if s > caps.table_ground {
        return Err(Error::cap(format!("ground {s} exceeds cap {}", caps.table_ground)));
    }
    let (lo1, hi1) = coordinate_bounds(q1)?;
    let (lo2, hi2) = coordinate_bounds(q2)?;
    let lo: Vec<i64> = (0..s).map(|i| lo1[i].max(m[i] - hi2[i])).collect();
    let hi: Vec<i64> = (0..s).map(|i| hi1[i].min(m[i] - lo2[i])).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(None);
    }
    let mut m1 = Vec::with_capacity(s);
    if dfs_split(m, q1, q2, &lo, &hi, &mut m1) {
        let m2: Vec<i64> = m.iter().zip(&m1).map(|(a, b)| a - b).collect();
        Ok(Some((m1, m2)))
    } else {
        Ok(None)
    }
}

fn dfs_split(
    m: &[i64],
    q1: &GPolyBounds,
    q2: &GPolyBounds,
    lo: &[i64],
    hi: &[i64],
    m1: &mut Vec<i64>,
) -> bool {
    let i = m1.len();
    if i == m.len() {
        let m2: Vec<i64> = m.iter().zip(m1.iter()).map(|(a, b)| a - b).collect();
        return q1.contains_int(m1) && q2.contains_int(&m2);
    }
    for v in lo[i]..=hi[i] {
        m1.push(v);
        if dfs_split(m, q1, q2, lo, hi, m1) {
            return true;
        }
        m1.pop();
    }
    false
}

/// JSON table: map from subset bitmask (decimal string) to an integer or the
/// strings "+inf"/"-inf".
pub fn table_from_json(map: &BTreeMap<String, serde_json::Value>, caps: &Caps) -> Result<SetFunctionTable> {
    let size = map.len();
    if !size.is_power_of_two() {
        return Err(Error::input("table must list every subset of the ground".to_string()));
    }
    let ground = size.trailing_zeros() as usize;
    let mut vals = vec![None; size];
    for (k, v) in map {
        let mask: usize = k
            .parse()
            .map_err(|_| Error::input(format!("bad subset bitmask {k:?}")))?;
        if mask >= size {
            return Err(Error::input(format!("subset bitmask {mask} out of range")));
        }
        let val = match v {
            serde_json::Value::Number(n) => Ext::Int(
                n.as_i64()
                    .ok_or_else(|| Error::input("non-integer table value".to_string()))?,
            ),
            serde_json::Value::String(s) if s == "+inf" => Ext::PosInf,
            serde_json::Value::String(s) if s == "-inf" => Ext::NegInf,
            other => return Err(Error::input(format!("bad table value {other}"))),
        };
        vals[mask] = Some(val);
    }
    let vals = vals
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::input("table is missing subsets".to_string()))?;
    SetFunctionTable::new(ground, vals, caps)
}

pub fn table_to_json(t: &SetFunctionTable) -> BTreeMap<String, serde_json::Value> {
    t.subsets()
        .map(|z| {
            let v = match t.get(z) {
                Ext::Int(x) => serde_json::Value::from(x),
                Ext::PosInf => serde_json::Value::from("+inf"),
                Ext::NegInf => serde_json::Value::from("-inf"),
            };
            (z.to_string(), v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: Vec<i64>, b: Vec<i64>, ground: usize) -> GPolyBounds {
        GPolyBounds::new(
            SetFunctionTable::from_fn(ground, |z| Ext::Int(p[z as usize])),
            SetFunctionTable::from_fn(ground, |z| Ext::Int(b[z as usize])),
        )
        .unwrap()
    }

    #[test]
    fn intersect_box_examples() {
        // ground {x}: p({x})=0, b({x})=5, box [2,3]
        let q0 = q(vec![0, 0], vec![0, 5], 1);
        let (out, nonempty) = intersect_box(&q0, &[2], &[3]).unwrap();
        assert!(nonempty);
        assert_eq!(out.p.get(1), Ext::Int(2));
        assert_eq!(out.b.get(1), Ext::Int(3));

        // neutral box returns (p,b) unchanged
        let (out, nonempty) = intersect_box(&q0, &[0], &[100]).unwrap();
        assert!(nonempty);
        assert_eq!(out.p.get(1), Ext::Int(0));
        assert_eq!(out.b.get(1), Ext::Int(5));

        // p({x})=4 vs g=3 -> empty
        let q1 = q(vec![0, 4], vec![0, 5], 1);
        let (_, nonempty) = intersect_box(&q1, &[0], &[3]).unwrap();
        assert!(!nonempty);
    }

    #[test]
    fn intersect_cardinality_examples() {
        // ground {x,y}, p=0, b(X)=2|X|, α=1, β=3
        let q0 = q(vec![0, 0, 0, 0], vec![0, 2, 2, 4], 2);
        let (out, nonempty) = intersect_cardinality(&q0, 1, 3).unwrap();
        assert!(nonempty);
        assert_eq!(out.p.get(0b01), Ext::Int(0));
        assert_eq!(out.b.get(0b01), Ext::Int(2));
        assert_eq!(out.b.get(0b11), Ext::Int(3));

        // α=β=0 with p=0: only the zero vector
        let (out, nonempty) = intersect_cardinality(&q0, 0, 0).unwrap();
        assert!(nonempty);
        assert!(out.p.subsets().all(|z| out.b.get(z) >= Ext::Int(0)));
        assert_eq!(out.b.get(0b01), Ext::Int(0));
        assert_eq!(out.b.get(0b10), Ext::Int(0));

        // α=5 > b(S)=4 -> empty
        let (_, nonempty) = intersect_cardinality(&q0, 5, 9).unwrap();
        assert!(!nonempty);
    }

    #[test]
    fn sum_examples() {
        let q0 = q(vec![0, 0], vec![0, 1], 1);
        let s = sum(&q0, &q0).unwrap();
        assert_eq!(s.b.get(1), Ext::Int(2));
        assert_eq!(s.p.get(1), Ext::Int(0));
        let z = q(vec![0, 0], vec![0, 0], 1);
        assert_eq!(sum(&q0, &z).unwrap(), q0);
        let a = q(vec![0, 1], vec![0, 5], 1);
        let b = q(vec![0, 2], vec![0, 5], 1);
        assert_eq!(sum(&a, &b).unwrap().p.get(1), Ext::Int(3));
    }

    #[test]
    fn intersect_nonempty_examples() {
        let q0 = q(vec![0, 0], vec![0, 2], 1);
        assert!(intersect_nonempty(&q0, &q0));
        let hi = q(vec![0, 2], vec![0, 3], 1);
        let lo = q(vec![0, 0], vec![0, 1], 1);
        assert!(!intersect_nonempty(&hi, &lo));
        let a = q(vec![0, 1], vec![0, 3], 1);
        let b = q(vec![0, 0], vec![0, 2], 1);
        assert!(intersect_nonempty(&a, &b));
    }

    #[test]
    fn integral_element_examples() {
        let caps = Caps::default();
        let q0 = q(vec![0, 1], vec![0, 3], 1);
        assert_eq!(integral_element(&q0, &caps).unwrap(), Some(vec![1]));
        let z = q(vec![0, 0], vec![0, 0], 1);
        assert_eq!(integral_element(&z, &caps).unwrap(), Some(vec![0]));
        let bad = q(vec![0, 2], vec![0, 1], 1);
        assert_eq!(integral_element(&bad, &caps).unwrap(), None);
    }

    #[test]
    fn integral_split_examples() {
        let caps = Caps::default();
        let box01 = q(vec![0, 0], vec![0, 1], 1);
        let (m1, m2) = integral_split(&[2], &box01, &box01, &caps).unwrap().unwrap();
        assert_eq!((m1, m2), (vec![1], vec![1]));
        let (m1, m2) = integral_split(&[0], &box01, &box01, &caps).unwrap().unwrap();
        assert_eq!((m1, m2), (vec![0], vec![0]));
        // m outside the sum -> None
        assert!(integral_split(&[3], &box01, &box01, &caps).unwrap().is_none());
    }

    #[test]
    fn infinity_tables() {
        let caps = Caps::default();
        let inf0 = SetFunctionTable::infinity0(2);
        assert_eq!(inf0.get(0), Ext::Int(0));
        assert_eq!(inf0.get(3), Ext::PosInf);
        assert!(inf0.is_submodular());
        let ninf0 = SetFunctionTable::neg_infinity0(2);
        assert!(ninf0.is_supermodular());
        // Q(p̂-like, ∞₀) ∩ T(0,h) stays finite on the b side after the box
        let p = SetFunctionTable::from_fn(2, |z| Ext::Int(z.count_ones() as i64));
        let q3 = GPolyBounds::new(p, inf0).unwrap();
        let (out, nonempty) = intersect_box(&q3, &[0, 0], &[2, 2]).unwrap();
        assert!(nonempty);
        assert_eq!(out.b.get(0b11), Ext::Int(4));
        assert!(integral_element(&out, &caps).unwrap().is_some());
    }

    #[test]
    fn json_round_trip() {
        let caps = Caps::default();
        let t = SetFunctionTable::infinity0(2);
        let j = table_to_json(&t);
        let back = table_from_json(&j, &caps).unwrap();
        assert_eq!(t, back);
    }
}
