//! Dimension bookkeeping for the measurable cohomology of the boundary action.
//!
//! `H^k_m(A)` is identified with the exterior power `Λ^k a*`, so its dimension
//! is `C(rank, k)`. The longest Weyl element acts on `a*` as an involution of
//! signature `(s, t)`; on `Λ^k a*` the fixed space is spanned by wedges with an
//! even number of `-1` eigenvectors.

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::weyl::Signature;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `dim H^k_m(A)` for `k = 0..=max_degree`.
pub fn torus_dims(rank: usize, max_degree: usize) -> Vec<u64> {
    (0..=max_degree).map(|k| binomial(rank, k)).collect()
}

/// Fixed-space dimension on `Λ^k` by counting wedge monomials with an even
/// number of `-1` factors.
pub fn fixed_dim_combinatorial(sig: Signature, k: usize) -> u64 {
    (0..=k.min(sig.t))
        .step_by(2)
        .map(|j| binomial(sig.t, j) * binomial(sig.s, k - j))
        .sum()
}

/// Fixed-space dimension as `(dim + trace) / 2`, where the trace of the
/// induced action on `Λ^k` is `Σ_j (-1)^j C(t, j) C(s, k - j)`.
pub fn fixed_dim_trace(sig: Signature, k: usize) -> u64 {
    let dim = binomial(sig.rank(), k) as i64;
    let trace: i64 = (0..=k.min(sig.t))
        .map(|j| {
            let term = (binomial(sig.t, j) * binomial(sig.s, k - j)) as i64;
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    debug_assert_eq!((dim + trace) % 2, 0);
    ((dim + trace) / 2) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantDims {
    pub rank: usize,
    pub signature: Signature,
    /// `dim H^k_m(A)`.
    pub dims_ha: Vec<u64>,
    /// `dim H^k_m(A)^{w0}`, the kernel of `α ↦ α - Ad(w0)α`.
    pub dims_ha_w0: Vec<u64>,
    /// `dim` of the image of `α ↦ α - Ad(w0)α`.
    pub dims_ha_equiv: Vec<u64>,
}

impl InvariantDims {
    pub fn max_degree(&self) -> usize {
        self.dims_ha.len() - 1
    }

    /// Entry `k` of the invariant dimensions, zero outside the stored range
    /// (including negative degrees).
    pub fn w0(&self, k: isize) -> u64 {
        lookup(&self.dims_ha_w0, k)
    }

    pub fn ha(&self, k: isize) -> u64 {
        lookup(&self.dims_ha, k)
    }

    pub fn equiv(&self, k: isize) -> u64 {
        lookup(&self.dims_ha_equiv, k)
    }
}

fn lookup(v: &[u64], k: isize) -> u64 {
    if k < 0 {
        0
    } else {
        v.get(k as usize).copied().unwrap_or(0)
    }
}

pub fn invariant_dims(sig: Signature, max_degree: usize) -> InvariantDims {
    let rank = sig.rank();
    let dims_ha = torus_dims(rank, max_degree);
    let dims_ha_w0: Vec<u64> = (0..=max_degree)
        .map(|k| {
            let d = fixed_dim_combinatorial(sig, k);
            debug_assert_eq!(d, fixed_dim_trace(sig, k));
            d
        })
        .collect();
    let dims_ha_equiv = dims_ha
        .iter()
        .zip(&dims_ha_w0)
        .map(|(total, fixed)| total - fixed)
        .collect();
    InvariantDims {
        rank,
        signature: sig,
        dims_ha,
        dims_ha_w0,
        dims_ha_equiv,
    }
}

/// Variant of [`invariant_dims`] taking a signed signature, as read from user
/// input.
pub fn invariant_dims_checked(s: i64, t: i64, max_degree: usize) -> Result<InvariantDims> {
    Signature::new(s, t).map(|sig| invariant_dims(sig, max_degree))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub degree: usize,
    pub dim_ha: u64,
    pub dim_ha_w0: u64,
    pub dim_ha_equiv: u64,
    pub dim_nh: u64,
    pub dim_nh_nalt: u64,
    pub dim_nh_alt: u64,
    /// `dim H^p_m(G)` when supplied by the caller.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_hg: Option<u64>,
    /// `dim H^p_{m,alt}(G ↷ G/P) = dim NH^p_alt + dim H^p_m(G)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_h_alt: Option<u64>,
    /// `dim H^p_m(G ↷ G/P) = dim NH^p + dim H^p_m(G)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_h_total: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub max_degree: usize,
    pub rows: Vec<TableRow>,
}

impl CohomologyTable {
    pub fn row(&self, p: usize) -> Option<&TableRow> {
        self.rows.get(p)
    }

    pub fn nh(&self, p: usize) -> u64 {
        self.row(p).map_or(0, |r| r.dim_nh)
    }

    pub fn nh_nalt(&self, p: usize) -> u64 {
        self.row(p).map_or(0, |r| r.dim_nh_nalt)
    }

    pub fn nh_alt(&self, p: usize) -> u64 {
        self.row(p).map_or(0, |r| r.dim_nh_alt)
    }

    /// Degrees `p >= 2` where `dim NH^p` differs from
    /// `dim H^{p-2}(A)^{w0} + dim H^{p-1}(A)^{w0}`, with both sides.
    ///
    /// At `p = 2` the non-alternating part vanishes while `H^0(A)^{w0}` is
    /// always one-dimensional, so this list always starts with degree 2 when
    /// the table reaches it.
    pub fn additivity_defects(&self, inv: &InvariantDims) -> Vec<(usize, u64, u64)> {
        (2..=self.max_degree)
            .filter_map(|p| {
                let p_i = p as isize;
                let expected = inv.w0(p_i - 2) + inv.w0(p_i - 1);
                let got = self.nh(p);
                (got != expected).then_some((p, got, expected))
            })
            .collect()
    }
}

/// Kernel dimensions: `NH^p_nalt ≅ H^{p-2}(A)^{w0}` for `p >= 3` (zero below)
/// and `NH^p_alt ≅ H^{p-1}(A)^{w0}` for `p >= 2` (zero below).
///
/// `hg` optionally supplies `dim H^p_m(G)`; missing degrees stay unknown.
pub fn kernel_table(inv: &InvariantDims, max_degree: usize, hg: Option<&[u64]>) -> CohomologyTable {
    let rows = (0..=max_degree)
        .map(|p| {
            let p_i = p as isize;
            let nalt = if p >= 3 { inv.w0(p_i - 2) } else { 0 };
            let alt = if p >= 2 { inv.w0(p_i - 1) } else { 0 };
            let nh = nalt + alt;
            let dim_hg = hg.and_then(|h| h.get(p).copied());
            TableRow {
                degree: p,
                dim_ha: inv.ha(p_i),
                dim_ha_w0: inv.w0(p_i),
                dim_ha_equiv: inv.equiv(p_i),
                dim_nh: nh,
                dim_nh_nalt: nalt,
                dim_nh_alt: alt,
                dim_hg,
                dim_h_alt: dim_hg.map(|g| g + alt),
                dim_h_total: dim_hg.map(|g| g + nh),
            }
        })
        .collect();
    CohomologyTable { max_degree, rows }
}

/// True iff the left term `H^{p-1}(A)^{w0}` of the alternating short exact
/// sequence vanishes in every even degree `p >= 2` covered by `inv`, so that
/// even-degree alternating boundary cohomology equals group cohomology.
pub fn corollary_even_degree_check(inv: &InvariantDims) -> bool {
    (2..=inv.max_degree() + 1)
        .step_by(2)
        .all(|p| inv.w0(p as isize - 1) == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PageLabel {
    #[serde(rename = "nalt_E1")]
    NaltE1,
    #[serde(rename = "nalt_E2")]
    NaltE2,
    #[serde(rename = "alt_E1")]
    AltE1,
    #[serde(rename = "alt_E2")]
    AltE2,
}

impl PageLabel {
    pub const ALL: [PageLabel; 4] = [
        PageLabel::NaltE1,
        PageLabel::NaltE2,
        PageLabel::AltE1,
        PageLabel::AltE2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PageLabel::NaltE1 => "nalt_E1",
            PageLabel::NaltE2 => "nalt_E2",
            PageLabel::AltE1 => "alt_E1",
            PageLabel::AltE2 => "alt_E2",
        }
    }
}

/// One cell of a spectral-sequence page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PageEntry {
    Dim(u64),
    /// `H^p_m(G)`, dimension unknown.
    GroupCohomology(usize),
    /// Invariant cochains in `q` boundary variables.
    Cochains(usize),
    /// `H^k_{m,nalt}(G ↷ G/P)`.
    NaltCohomology(usize),
    /// `H^k_{m,alt}(G ↷ G/P)`.
    AltCohomology(usize),
}

impl PageEntry {
    pub fn token(&self) -> String {
        match self {
            PageEntry::Dim(d) => d.to_string(),
            PageEntry::GroupCohomology(p) => format!("H^{p}(G)"),
            PageEntry::Cochains(q) => format!("C^{q}"),
            PageEntry::NaltCohomology(k) => format!("H^{k}_nalt"),
            PageEntry::AltCohomology(k) => format!("H^{k}_alt"),
        }
    }

    pub fn dim(&self) -> Option<u64> {
        match self {
            PageEntry::Dim(d) => Some(*d),
            _ => None,
        }
    }
}

impl Serialize for PageEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PageEntry::Dim(d) => serializer.serialize_u64(*d),
            other => serializer.serialize_str(&other.token()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralPage {
    pub label: PageLabel,
    /// `rows[p][q]`.
    pub rows: Vec<Vec<PageEntry>>,
}

impl SpectralPage {
    pub fn entry(&self, p: usize, q: usize) -> Option<&PageEntry> {
        self.rows.get(p).and_then(|row| row.get(q))
    }
}

/// The first and second pages of the two column-filtration spectral sequences,
/// truncated to `0..=max_p` by `0..=max_q`.
pub fn spectral_pages(
    inv: &InvariantDims,
    max_p: usize,
    max_q: usize,
    hg: Option<&[u64]>,
) -> Vec<SpectralPage> {
    let group = |p: usize| match hg.and_then(|h| h.get(p)) {
        Some(&d) => PageEntry::Dim(d),
        None => PageEntry::GroupCohomology(p),
    };
    PageLabel::ALL
        .iter()
        .map(|&label| {
            let rows = (0..=max_p)
                .map(|p| {
                    (0..=max_q)
                        .map(|q| page_entry(label, inv, p, q, &group))
                        .collect()
                })
                .collect();
            SpectralPage { label, rows }
        })
        .collect()
}

fn page_entry(
    label: PageLabel,
    inv: &InvariantDims,
    p: usize,
    q: usize,
    group: &dyn Fn(usize) -> PageEntry,
) -> PageEntry {
    let pi = p as isize;
    if p == 0 {
        return match (label, q) {
            (PageLabel::AltE1, 0) => PageEntry::Dim(1),
            (PageLabel::AltE1, _) => PageEntry::Cochains(q),
            (_, 0 | 1) => PageEntry::Dim(0),
            (PageLabel::NaltE1, _) => PageEntry::Cochains(q),
            (PageLabel::NaltE2, _) => PageEntry::NaltCohomology(q - 1),
            (PageLabel::AltE2, _) => PageEntry::AltCohomology(q - 1),
        };
    }
    match (label, q) {
        (PageLabel::NaltE1 | PageLabel::NaltE2, 2) => PageEntry::Dim(inv.w0(pi)),
        (PageLabel::NaltE1 | PageLabel::NaltE2, _) => PageEntry::Dim(0),
        (PageLabel::AltE1 | PageLabel::AltE2, 0) => group(p),
        (PageLabel::AltE1, 1) => PageEntry::Dim(inv.ha(pi)),
        (PageLabel::AltE1, 2) => PageEntry::Dim(inv.equiv(pi)),
        (PageLabel::AltE2, 1) => PageEntry::Dim(inv.w0(pi)),
        _ => PageEntry::Dim(0),
    }
}

/// Error-returning counterpart to the infallible builders, for callers that
/// receive signatures as raw integers.
pub fn table_for_signature(
    s: i64,
    t: i64,
    max_degree: usize,
    hg: Option<&[u64]>,
) -> Result<(InvariantDims, CohomologyTable)> {
    let inv = invariant_dims_checked(s, t, max_degree)?;
    let table = kernel_table(&inv, max_degree, hg);
    Ok((inv, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn sig(s: usize, t: usize) -> Signature {
        Signature { s, t }
    }

    #[test]
    fn torus_dims_are_binomials() {
        assert_eq!(torus_dims(2, 4), vec![1, 2, 1, 0, 0]);
        assert_eq!(torus_dims(1, 3), vec![1, 1, 0, 0]);
        assert_eq!(torus_dims(3, 3)[2], 3);
    }

    #[test]
    fn invariant_dims_examples() {
        assert_eq!(invariant_dims(sig(0, 2), 4).dims_ha_w0, vec![1, 0, 1, 0, 0]);
        assert_eq!(invariant_dims(sig(1, 1), 3).dims_ha_w0, vec![1, 1, 0, 0]);
        assert_eq!(invariant_dims(sig(4, 0), 5).dims_ha_w0, torus_dims(4, 5));
    }

    #[test]
    fn negative_signature_rejected() {
        assert_eq!(
            invariant_dims_checked(-1, 2, 3),
            Err(Error::InvalidSignature { s: -1, t: 2 })
        );
    }

    #[test]
    fn table_for_two_hyperbolic_factors() {
        let inv = invariant_dims(sig(0, 2), 6);
        let table = kernel_table(&inv, 6, None);
        let nh: Vec<_> = (0..=6).map(|p| table.nh(p)).collect();
        assert_eq!(nh, vec![0, 0, 0, 1, 1, 0, 0]);
        assert_eq!(table.nh_alt(3), 1);
        assert_eq!(table.nh_nalt(3), 0);
        assert_eq!(table.nh_nalt(4), 1);
        assert_eq!(table.nh_alt(4), 0);
    }

    #[test]
    fn table_for_sl3() {
        let inv = invariant_dims(sig(1, 1), 5);
        let table = kernel_table(&inv, 5, None);
        assert_eq!(table.nh_alt(2), 1);
        assert_eq!(table.nh_nalt(3), 1);
        // e+ ∧ e- spans Λ^2 and is negated, so nothing survives above degree 3
        assert_eq!(table.nh_alt(3), 0);
        assert_eq!(table.nh_nalt(4), 0);
        assert_eq!(table.nh(5), 0);
    }

    #[test]
    fn low_degrees_vanish() {
        for (s, t) in [(0, 1), (1, 1), (2, 3), (0, 8)] {
            let table = kernel_table(&invariant_dims(sig(s, t), 3), 3, None);
            for p in 0..=1 {
                assert_eq!(table.nh(p), 0);
            }
        }
    }

    #[test]
    fn additivity_only_breaks_in_degree_two() {
        let inv = invariant_dims(sig(1, 2), 8);
        let table = kernel_table(&inv, 8, None);
        let defects = table.additivity_defects(&inv);
        assert_eq!(defects, vec![(2, inv.w0(1), 1 + inv.w0(1))]);
    }

    #[test]
    fn corollary_check() {
        assert!(corollary_even_degree_check(&invariant_dims(sig(0, 2), 6)));
        assert!(!corollary_even_degree_check(&invariant_dims(sig(1, 1), 6)));
        assert!(corollary_even_degree_check(&invariant_dims(sig(0, 5), 8)));
    }

    #[test]
    fn hg_fills_totals() {
        let inv = invariant_dims(sig(0, 2), 4);
        let table = kernel_table(&inv, 4, Some(&[1, 0, 0, 0, 2]));
        let row = table.row(4).unwrap();
        assert_eq!(row.dim_hg, Some(2));
        assert_eq!(row.dim_h_total, Some(3));
        assert_eq!(row.dim_h_alt, Some(2));
    }

    #[test]
    fn page_examples() {
        let inv = invariant_dims(sig(0, 2), 4);
        let pages = spectral_pages(&inv, 4, 4, None);
        let page = |l| pages.iter().find(|p| p.label == l).unwrap();
        assert_eq!(page(PageLabel::NaltE1).entry(2, 2), Some(&PageEntry::Dim(1)));
        assert_eq!(page(PageLabel::AltE2).entry(1, 2), Some(&PageEntry::Dim(0)));
        assert_eq!(page(PageLabel::AltE1).entry(3, 1), Some(&PageEntry::Dim(0)));
        assert_eq!(
            page(PageLabel::AltE1).entry(2, 0),
            Some(&PageEntry::GroupCohomology(2))
        );
        assert_eq!(page(PageLabel::NaltE2).entry(0, 3).unwrap().token(), "H^2_nalt");
        assert_eq!(page(PageLabel::AltE1).entry(0, 2).unwrap().token(), "C^2");
    }
}
