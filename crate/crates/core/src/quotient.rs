//! Maya diagrams, 2-cores and 2-quotients.
//!
//! A partition is encoded by its occupied sites `ξ_i = λ_i - i + 1/2` on the
//! half-integer lattice. Splitting the lattice into the two alternating
//! sublattices `2Z + 1/2` and `2Z - 1/2` produces the 2-quotient `(α, β)`
//! and the 2-core, which is always a staircase. Half-integers are stored
//! doubled, so site `s` appears as the odd integer `2s`.
//!
//! The labelling of the sublattices is fixed so that
//! `two_quotient((5,4,4,2)) = ((2,2,1), (2))` with core `(1)`, and
//! `two_quotient((2)) = (∅, (1))`; the latter is what makes the
//! near-involution formula for `g_ν` agree with the direct character ratio.

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Pebble encoding of a partition on the doubled half-integer lattice.
///
/// `particles` are the occupied positive sites, `holes` the vacant negative
/// sites, both as doubled values (site 3/2 is stored as 3). Charge zero:
/// the two lists always have equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayaDiagram {
    pub particles: Vec<i64>,
    pub holes: Vec<i64>,
}

/// The 2-quotient `(α, β)` together with the size `c` of the staircase
/// 2-core `(c, c-1, ..., 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoQuotient {
    pub alpha: Partition,
    pub beta: Partition,
    pub core_size: u32,
}

impl TwoQuotient {
    pub fn new(alpha: Partition, beta: Partition, core_size: u32) -> Self {
        TwoQuotient { alpha, beta, core_size }
    }

    /// |core| = c(c+1)/2.
    pub fn core_cells(&self) -> u64 {
        let c = self.core_size as u64;
        c * (c + 1) / 2
    }

    /// Size of the partition this quotient reconstructs.
    pub fn source_size(&self) -> u64 {
        2 * (self.alpha.size() + self.beta.size()) + self.core_cells()
    }
}

/// Maya diagram of λ: occupied positive sites and vacant negative sites.
pub fn maya(lam: &Partition) -> MayaDiagram {
    let l = lam.len() as i64;
    let mut particles = Vec::new();
    let mut occupied_neg = Vec::new();
    for i in 1..=l {
        let d = 2 * (lam.part(i as usize) as i64 - i) + 1; // doubled ξ_i
        if d > 0 {
            particles.push(d);
        } else {
            occupied_neg.push(d);
        }
    }
    // sites -2l-1, -2l-3, ... are occupied by the tail rows i > ℓ;
    // holes can only sit in the l sites above them
    let mut holes = Vec::new();
    let mut d = -1;
    while d >= -(2 * l - 1) {
        if !occupied_neg.contains(&d) {
            holes.push(d);
        }
        d -= 2;
    }
    debug_assert_eq!(particles.len(), holes.len());
    MayaDiagram { particles, holes }
}

/// Rebuilds the partition from its Maya diagram.
pub fn maya_decode(m: &MayaDiagram) -> Partition {
    // occupied = particles ∪ (negative sites not in holes)
    let depth = m
        .holes
        .iter()
        .map(|&h| (-h + 1) / 2)
        .max()
        .unwrap_or(0)
        .max(1);
    let mut occ: Vec<i64> = m.particles.clone();
    let mut d = -1;
    while d >= -(2 * depth + 1) {
        if !m.holes.contains(&d) {
            occ.push(d);
        }
        d -= 2;
    }
    occ.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts = Vec::new();
    for (i, &s) in occ.iter().enumerate() {
        // λ_i = (2ξ_i + 2i - 1)/2 with 1-based i
        let lam_i = (s + 2 * (i as i64 + 1) - 1) / 2;
        if lam_i > 0 {
            parts.push(lam_i as u32);
        }
    }
    Partition::from_unsorted(parts)
}

/// Occupied-label set of one sublattice: explicit labels above a tail, plus
/// "everything ≤ tail" implicitly occupied.
fn decode_sublattice(explicit: &mut Vec<i64>, tail: i64) -> (Partition, i64) {
    explicit.sort_unstable_by(|a, b| b.cmp(a));
    explicit.dedup();
    // charge d = #(occupied ≥ 0) - #(vacant < 0)
    let occ_nonneg = explicit.iter().filter(|&&n| n >= 0).count() as i64;
    let explicit_neg = explicit.iter().filter(|&&n| n < 0).count() as i64;
    let neg_slots = -tail - 1; // labels tail+1 .. -1
    let vacant_neg = neg_slots - explicit_neg;
    let d = occ_nonneg - vacant_neg;
    // partition: sorted labels t_1 > t_2 > ... (explicit then tail), λ_i = t_i + i - d
    let mut parts = Vec::new();
    let mut i = 1i64;
    for &t in explicit.iter() {
        let lam_i = t + i - d;
        if lam_i > 0 {
            parts.push(lam_i as u32);
        }
        i += 1;
    }
    let mut t = tail;
    loop {
        let lam_i = t + i - d;
        if lam_i <= 0 {
            break;
        }
        parts.push(lam_i as u32);
        i += 1;
        t -= 1;
    }
    (Partition::from_unsorted(parts), d)
}

/// 2-quotient `(α, β, c)` of a partition.
pub fn two_quotient(lam: &Partition) -> TwoQuotient {
    let l = lam.len() as i64;
    let w = l + 2; // explicit window: rows 1..=w; all sites ≤ -2w-1 occupied
    let mut a_labels = Vec::new();
    let mut b_labels = Vec::new();
    for i in 1..=w {
        let d = 2 * (lam.part(i as usize) as i64 - i) + 1;
        if d.rem_euclid(4) == 1 {
            a_labels.push((d - 1) / 4); // site 2n + 1/2 -> n
        } else {
            b_labels.push((d - 3) / 4); // site 2n + 3/2 -> n
        }
    }
    // tail: sites ≤ -(2w+1); A-site 4n+1 ≤ -(2w+1) and B-site 4n+3 ≤ -(2w+1)
    let tail_a = (-(2 * w + 1) - 1).div_euclid(4);
    let tail_b = (-(2 * w + 1) - 3).div_euclid(4);
    let (alpha, da) = decode_sublattice(&mut a_labels, tail_a);
    let (beta, db) = decode_sublattice(&mut b_labels, tail_b);
    debug_assert_eq!(da + db, 0, "charges must cancel for {lam}");
    let core_size = if da > 0 { (2 * da - 1) as u32 } else { (-2 * da) as u32 };
    debug_assert_eq!(
        2 * (alpha.size() + beta.size()) + (core_size as u64) * (core_size as u64 + 1) / 2,
        lam.size()
    );
    TwoQuotient { alpha, beta, core_size }
}

/// Inverse of [`two_quotient`].
pub fn from_two_quotient(tq: &TwoQuotient) -> Partition {
    let c = tq.core_size as i64;
    let da = if c % 2 == 1 { (c + 1) / 2 } else { -c / 2 };
    let db = -da;
    // collect every occupied site down to a common cutoff; below it both
    // sublattice tails are fully occupied, so truncated rows have λ_i ≤ 0
    let r = (tq.alpha.len() as i64).max(tq.beta.len() as i64) + da.abs() + 2;
    let cutoff = -(4 * r + 3);
    let mut sites: Vec<i64> = Vec::new();
    for i in 1.. {
        let site = 4 * (tq.alpha.part(i as usize) as i64 - i + da) + 1;
        if site < cutoff {
            break;
        }
        sites.push(site);
    }
    for i in 1.. {
        let site = 4 * (tq.beta.part(i as usize) as i64 - i + db) + 3;
        if site < cutoff {
            break;
        }
        sites.push(site);
    }
    sites.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts = Vec::new();
    for (i, &s) in sites.iter().enumerate() {
        let lam_i = (s + 2 * (i as i64 + 1) - 1) / 2;
        if lam_i <= 0 {
            break;
        }
        parts.push(lam_i as u32);
    }
    Partition::from_unsorted(parts)
}

/// True when the 2-core is empty, i.e. λ is tileable by dominoes.
pub fn is_balanced(lam: &Partition) -> bool {
    two_quotient(lam).core_size == 0
}

/// σ_λ = (-1)^{o/2} with `o` the number of odd parts; requires λ balanced.
pub fn sigma(lam: &Partition) -> Result<i32> {
    if !is_balanced(lam) {
        return Err(Error::Unbalanced);
    }
    let o = lam.odd_parts();
    debug_assert!(o % 2 == 0);
    Ok(if (o / 2) % 2 == 0 { 1 } else { -1 })
}

/// All balanced partitions of `n`, built from quotient pairs.
pub fn balanced_partitions(n: u64) -> Vec<Partition> {
    if n % 2 != 0 {
        return Vec::new();
    }
    let m = (n / 2) as u32;
    let mut out = Vec::new();
    for k in 0..=m {
        for alpha in Partition::all(k) {
            for beta in Partition::all(m - k) {
                out.push(from_two_quotient(&TwoQuotient::new(
                    alpha.clone(),
                    beta,
                    0,
                )));
            }
        }
    }
    out
}

/// Quotient pairs of all balanced partitions of `n` with the source attached.
pub fn balanced_with_quotients(n: u64) -> Vec<(Partition, Partition, Partition)> {
    if n % 2 != 0 {
        return Vec::new();
    }
    let m = (n / 2) as u32;
    let mut out = Vec::new();
    for k in 0..=m {
        for alpha in Partition::all(k) {
            for beta in Partition::all(m - k) {
                let lam = from_two_quotient(&TwoQuotient::new(alpha.clone(), beta.clone(), 0));
                out.push((lam, alpha.clone(), beta));
            }
        }
    }
    out
}
