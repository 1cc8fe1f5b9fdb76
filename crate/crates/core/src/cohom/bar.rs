//! The normalized bar complex with trivial coefficients.
//!
//! An n-cochain is a function on n-tuples of non-identity elements of `Q`.
//! Tuples are indexed in mixed radix: with `m = |Q| - 1` and local element
//! indices `a_i` in `1..=m`, the tuple `(a_1, .., a_n)` sits at
//! `sum (a_i - 1) m^(n-i)`, so `a_1` is the most significant digit.

use super::CohomError;
use crate::gcore::Subgroup;
use crate::linalg::{Field, FieldMatrix, SparseRow};

/// `Q` with its multiplication table in local indices; local index 0 is the
/// identity because element lists are sorted and the identity is smallest.
#[derive(Debug, Clone)]
pub(crate) struct LocalGroup {
    q: Subgroup,
    order: usize,
    mul: Vec<u32>,
}

impl LocalGroup {
    pub(crate) fn new(q: &Subgroup) -> Self {
        let g = q.group();
        let els = q.elements();
        debug_assert_eq!(els[0], g.identity());
        let order = els.len();
        let mut mul = Vec::with_capacity(order * order);
        for &a in els {
            for &b in els {
                mul.push(q.position(g.mul(a, b)).expect("subgroup is closed") as u32);
            }
        }
        LocalGroup { q: q.clone(), order, mul }
    }

    pub(crate) fn subgroup(&self) -> &Subgroup {
        &self.q
    }

    /// Number of non-identity elements.
    pub(crate) fn m(&self) -> usize {
        self.order - 1
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }
}

/// `m^n`, or `None` on overflow.
pub(crate) fn cochain_dim(m: usize, n: usize) -> Option<usize> {
    u32::try_from(n).ok().and_then(|n| m.checked_pow(n))
}

pub(crate) fn check_cap(q: &Subgroup, n: usize, cap: usize) -> Result<usize, CohomError> {
    let m = q.order() - 1;
    match cochain_dim(m, n) {
        Some(d) if d <= cap => Ok(d),
        needed => Err(CohomError::CapExceeded {
            what: format!("degree-{n} cochains on a group of order {}", q.order()),
            needed: needed.map_or(u128::MAX, |d| d as u128),
            cap,
        }),
    }
}

/// Writes local indices (1-based) of tuple `idx` of length `len` into `out`.
#[inline]
pub(crate) fn decode(m: usize, len: usize, mut idx: usize, out: &mut Vec<u32>) {
    out.clear();
    out.resize(len, 0);
    for k in (0..len).rev() {
        out[k] = (idx % m) as u32 + 1;
        idx /= m;
    }
}

#[inline]
pub(crate) fn encode(m: usize, tuple: impl IntoIterator<Item = u32>) -> usize {
    tuple
        .into_iter()
        .fold(0, |acc, a| acc * m + (a as usize - 1))
}

/// Row `r` of `d^n`: the coefficients of `(d f)(tuple r)` in terms of the
/// values of `f`. `scratch` holds the decoded tuple.
pub(crate) fn bar_row(
    lg: &LocalGroup,
    field: &Field,
    n: usize,
    r: usize,
    scratch: &mut Vec<u32>,
) -> SparseRow {
    let m = lg.m();
    decode(m, n + 1, r, scratch);
    let a = &scratch[..];
    let top = cochain_dim(m, n).expect("checked by caller");
    let mut raw: Vec<(u32, i64)> = Vec::with_capacity(n + 2);
    raw.push(((r % top) as u32, 1));
    for i in 1..=n {
        let prod = lg.mul(a[i - 1], a[i]);
        if prod == 0 {
            continue;
        }
        let col = encode(
            m,
            a[..i - 1]
                .iter()
                .copied()
                .chain(std::iter::once(prod))
                .chain(a[i + 1..].iter().copied()),
        );
        raw.push((col as u32, if i % 2 == 0 { 1 } else { -1 }));
    }
    raw.push(((r / m) as u32, if (n + 1).is_multiple_of(2) { 1 } else { -1 }));
    raw.sort_unstable_by_key(|e| e.0);
    let mut row: SparseRow = Vec::with_capacity(raw.len());
    let mut k = 0;
    while k < raw.len() {
        let col = raw[k].0;
        let mut s = 0;
        while k < raw.len() && raw[k].0 == col {
            s += raw[k].1;
            k += 1;
        }
        let v = field.from_i64(s);
        if v != 0 {
            row.push((col, v));
        }
    }
    row
}

/// `d f` for an n-cochain `f`, computed directly from the formula.
pub(crate) fn coboundary(lg: &LocalGroup, field: &Field, n: usize, f: &[u32]) -> Vec<u32> {
    let rows = cochain_dim(lg.m(), n + 1).expect("checked by caller");
    let mut scratch = Vec::new();
    (0..rows)
        .map(|r| {
            bar_row(lg, field, n, r, &mut scratch)
                .iter()
                .fold(0, |acc, &(c, v)| field.add(acc, field.mul(v, f[c as usize])))
        })
        .collect()
}

/// One degree of the normalized cochain complex together with its outgoing
/// differential.
#[derive(Debug, Clone)]
pub struct CochainComplexSlice {
    pub q: Subgroup,
    pub p: u32,
    pub n: usize,
    pub differential: FieldMatrix,
}

impl CochainComplexSlice {
    pub fn new(q: &Subgroup, p: u32, n: usize, cap: usize) -> Result<Self, CohomError> {
        Ok(CochainComplexSlice {
            q: q.clone(),
            p,
            n,
            differential: differential(q, p, n, cap)?,
        })
    }

    /// `(|Q| - 1)^n`.
    pub fn dim(&self) -> usize {
        self.differential.cols()
    }
}

/// `d^n : C^n -> C^(n+1)` as a `(|Q|-1)^(n+1) x (|Q|-1)^n` matrix acting on
/// column vectors of cochain values.
pub fn differential(q: &Subgroup, p: u32, n: usize, cap: usize) -> Result<FieldMatrix, CohomError> {
    super::require_prime(p)?;
    let rows = check_cap(q, n + 1, cap)?;
    let cols = check_cap(q, n, cap)?;
    let lg = LocalGroup::new(q);
    let field = Field::new(p);
    let mut scratch = Vec::new();
    Ok(FieldMatrix::from_rows(
        p,
        cols,
        (0..rows).map(|r| bar_row(&lg, &field, n, r, &mut scratch)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;

    #[test]
    fn encode_decode_round_trip() {
        let mut t = Vec::new();
        for idx in 0..125 {
            decode(5, 3, idx, &mut t);
            assert!(t.iter().all(|&a| (1..=5).contains(&a)));
            assert_eq!(encode(5, t.iter().copied()), idx);
        }
    }

    #[test]
    fn d0_is_zero_and_c2_differentials() {
        let c3 = cyclic(3).whole();
        assert!(differential(&c3, 3, 0, 1000).unwrap().is_zero());
        let c2 = cyclic(2).whole();
        // d^n on C2: 1 + (-1)^n [g*g = 1 drops the middle terms]
        for n in 0..6 {
            let d = differential(&c2, 2, n, 1000).unwrap();
            assert_eq!((d.rows(), d.cols()), (1, 1));
            assert_eq!(d.rank(), 0);
        }
    }

    #[test]
    fn d_squared_vanishes() {
        for (q, p, top) in [
            (cyclic(3).whole(), 3, 4),
            (cyclic(4).whole(), 2, 4),
            (v4().whole(), 2, 4),
            (s3().whole(), 3, 3),
            (q8().whole(), 2, 3),
        ] {
            for n in 0..top {
                let d0 = differential(&q, p, n, 100_000).unwrap();
                let d1 = differential(&q, p, n + 1, 100_000).unwrap();
                assert!(d1.matmul(&d0).is_zero(), "{q} degree {n}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q = q8().whole();
        assert!(matches!(
            differential(&q, 2, 5, 1000),
            Err(CohomError::CapExceeded { .. })
        ));
    }
}
