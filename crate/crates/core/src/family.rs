//! Families of subsets and the fractional intersection verifiers.
//!
//! Everything here decides set membership questions in exact integer
//! arithmetic: `|A ∩ B| = (a/b)|A|` is tested as `b·|A∩B| = a·|A|`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frac::{Fraction, LSet};
use crate::subset::Subset;

/// Beyond this many unordered pairs the verifier keeps violations but
/// drops the per-pair witness list to bound memory.
const WITNESS_CAP_PAIRS: u64 = 5_000_000;

/// A family of distinct, non-empty subsets of a common ground set.
///
/// Members are held in canonical order (cardinality, then mask value) so
/// that reports and emitted files are deterministic across runs and
/// thread counts. All types are immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    ground_n: u32,
    members: Vec<Subset>,
}

impl Family {
    pub fn new(ground_n: u32, mut members: Vec<Subset>) -> Result<Self> {
        if ground_n == 0 {
            return Err(Error::ZeroGround);
        }
        for m in &members {
            if m.ground_n() != ground_n {
                return Err(Error::GroundMismatch(m.ground_n(), ground_n));
            }
            if m.is_empty() {
                return Err(Error::EmptyMember);
            }
        }
        members.sort_by(|a, b| a.canonical_cmp(b));
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMember(w[0].to_string()));
            }
        }
        Ok(Family { ground_n, members })
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Some(t)` when every member has cardinality exactly `t`.
    pub fn uniformity(&self) -> Option<u32> {
        let first = self.members.first()?.card();
        self.members
            .iter()
            .all(|m| m.card() == first)
            .then_some(first)
    }

    /// Relabels the ground set; `perm[e-1]` is the image of element `e`.
    pub fn permuted(&self, perm: &[u32]) -> Result<Family> {
        let members = self
            .members
            .iter()
            .map(|m| m.permuted(perm))
            .collect::<Result<Vec<_>>>()?;
        Family::new(self.ground_n, members)
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Family", 2)?;
        st.serialize_field("n", &self.ground_n)?;
        st.serialize_field("sets", &self.members)?;
        st.end()
    }
}

/// Outcome of a pairwise verification. `violations` lists the unordered
/// index pairs (into the family's canonical member order) that fail;
/// `witnesses` carries the certifying fraction per passing pair and is
/// `None` when the pair count exceeds [`WITNESS_CAP_PAIRS`] or the mode
/// has no fraction witnesses.
#[derive(Clone, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub checked_pairs: u64,
    pub violations: Vec<(u32, u32)>,
    #[serde(skip)]
    pub witnesses: Option<Vec<((u32, u32), Fraction)>>,
}

impl VerificationReport {
    fn trivial() -> Self {
        VerificationReport {
            valid: true,
            checked_pairs: 0,
            violations: Vec::new(),
            witnesses: Some(Vec::new()),
        }
    }
}

fn certify(inter: u64, ca: u64, cb: u64, l: &LSet) -> Option<Fraction> {
    l.fractions().iter().copied().find(|f| {
        let lhs = f.den() as u128 * inter as u128;
        lhs == f.num() as u128 * ca as u128 || lhs == f.num() as u128 * cb as u128
    })
}

/// Decides whether a single pair satisfies the fractional condition,
/// returning the certifying fraction when it does. Symmetric in `a`, `b`.
pub fn is_fractional_pair(a: &Subset, b: &Subset, l: &LSet) -> Result<Option<Fraction>> {
    if a.ground_n() != b.ground_n() {
        return Err(Error::GroundMismatch(a.ground_n(), b.ground_n()));
    }
    if a == b {
        return Err(Error::IdenticalSets);
    }
    Ok(certify(
        a.intersection_card(b) as u64,
        a.card() as u64,
        b.card() as u64,
        l,
    ))
}

/// Checks the fractional `L`-intersecting property over all unordered
/// pairs. No shortcut is taken: the outcome equals the brute-force
/// conjunction of [`is_fractional_pair`].
pub fn verify_family(family: &Family, l: &LSet) -> VerificationReport {
    let m = family.len();
    if m < 2 {
        return VerificationReport::trivial();
    }
    let pairs = m as u64 * (m as u64 - 1) / 2;
    let want_witnesses = pairs <= WITNESS_CAP_PAIRS;
    let members = family.members();
    let cards: Vec<u64> = members.iter().map(|s| s.card() as u64).collect();

    let per_row: Vec<(Vec<(u32, u32)>, Vec<((u32, u32), Fraction)>)> = (0..m - 1)
        .into_par_iter()
        .map(|x| {
            let mut viol = Vec::new();
            let mut wit = Vec::new();
            for y in x + 1..m {
                let inter = members[x].intersection_card(&members[y]) as u64;
                match certify(inter, cards[x], cards[y], l) {
                    Some(f) if want_witnesses => wit.push(((x as u32, y as u32), f)),
                    Some(_) => {}
                    None => viol.push((x as u32, y as u32)),
                }
            }
            (viol, wit)
        })
        .collect();

    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    for (v, w) in per_row {
        violations.extend(v);
        witnesses.extend(w);
    }
    VerificationReport {
        valid: violations.is_empty(),
        checked_pairs: pairs,
        violations,
        witnesses: want_witnesses.then_some(witnesses),
    }
}

fn check_even_members(family: &Family) -> Result<()> {
    for m in family.members() {
        if m.card() % 2 == 1 {
            return Err(Error::OddMember(m.to_string()));
        }
    }
    Ok(())
}

/// True when no member bisects another, i.e. no unordered pair has
/// `|A ∩ B| = |A|/2` or `|B|/2`. Members must all be even-sized.
pub fn is_avoiding(family: &Family) -> Result<bool> {
    check_even_members(family)?;
    let m = family.len();
    if m < 2 {
        return Ok(true);
    }
    // Tight mask loop: the acceptance-scale inputs have a single word.
    if family.members()[0].words().len() == 1 {
        let masks: Vec<u64> = family.members().iter().map(|s| s.low_word()).collect();
        let cards: Vec<u32> = family.members().iter().map(|s| s.card()).collect();
        return Ok((0..m - 1).into_par_iter().all(|x| {
            let (mx, cx) = (masks[x], cards[x]);
            masks[x + 1..]
                .iter()
                .zip(&cards[x + 1..])
                .all(|(&my, &cy)| {
                    let twice = 2 * (mx & my).count_ones();
                    twice != cx && twice != cy
                })
        }));
    }
    let members = family.members();
    Ok((0..m - 1).into_par_iter().all(|x| {
        (x + 1..m).all(|y| {
            let twice = 2 * members[x].intersection_card(&members[y]);
            twice != members[x].card() && twice != members[y].card()
        })
    }))
}

/// Like [`is_avoiding`] but reporting every bisecting pair.
pub fn avoiding_report(family: &Family) -> Result<VerificationReport> {
    check_even_members(family)?;
    let m = family.len();
    if m < 2 {
        let mut r = VerificationReport::trivial();
        r.witnesses = None;
        return Ok(r);
    }
    let members = family.members();
    let per_row: Vec<Vec<(u32, u32)>> = (0..m - 1)
        .into_par_iter()
        .map(|x| {
            let mut viol = Vec::new();
            for y in x + 1..m {
                let twice = 2 * members[x].intersection_card(&members[y]);
                if twice == members[x].card() || twice == members[y].card() {
                    viol.push((x as u32, y as u32));
                }
            }
            viol
        })
        .collect();
    let violations: Vec<(u32, u32)> = per_row.into_iter().flatten().collect();
    Ok(VerificationReport {
        valid: violations.is_empty(),
        checked_pairs: m as u64 * (m as u64 - 1) / 2,
        violations,
        witnesses: None,
    })
}

fn ratio_in_window(inter: u64, card: u64, eps: Fraction) -> bool {
    // i/card in (1/2 - p/q, 1/2 + p/q), strictly, via cross-multiplication.
    let (p, q) = (eps.num() as u128, eps.den() as u128);
    let (i, a) = (inter as u128, card as u128);
    2 * q * i + 2 * p * a > q * a && 2 * q * i < q * a + 2 * p * a
}

/// ε-approximate verifier: a pair passes when at least one of the ratios
/// `|A∩B|/|A|`, `|A∩B|/|B|` lies strictly inside `(1/2−ε, 1/2+ε)`.
/// Comparisons are exact; ε must lie strictly between 0 and 1/2.
pub fn approx_verify(family: &Family, eps: Fraction) -> Result<VerificationReport> {
    if eps.is_zero() || 2 * eps.num() >= eps.den() {
        return Err(Error::EpsilonOutOfRange);
    }
    let m = family.len();
    if m < 2 {
        return Ok(VerificationReport::trivial());
    }
    let members = family.members();
    let pairs = m as u64 * (m as u64 - 1) / 2;
    let want_witnesses = pairs <= WITNESS_CAP_PAIRS;
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    for x in 0..m - 1 {
        for y in x + 1..m {
            let inter = members[x].intersection_card(&members[y]) as u64;
            let (ca, cb) = (members[x].card() as u64, members[y].card() as u64);
            if ratio_in_window(inter, ca, eps) {
                if want_witnesses {
                    witnesses.push(((x as u32, y as u32), Fraction::new(inter, ca)?));
                }
            } else if ratio_in_window(inter, cb, eps) {
                if want_witnesses {
                    witnesses.push(((x as u32, y as u32), Fraction::new(inter, cb)?));
                }
            } else {
                violations.push((x as u32, y as u32));
            }
        }
    }
    Ok(VerificationReport {
        valid: violations.is_empty(),
        checked_pairs: pairs,
        violations,
        witnesses: want_witnesses.then_some(witnesses),
    })
}

/// The classical intersection-size set `L' = {⌊a_i t / b_i⌋}` induced on a
/// `t`-uniform family, deduplicated and sorted.
pub fn induced_classical_l(t: u32, l: &LSet) -> Vec<u64> {
    let mut out: Vec<u64> = l
        .fractions()
        .iter()
        .map(|f| f.num() * t as u64 / f.den())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(spec: &str) -> LSet {
        spec.parse().unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> Family {
        let members = sets
            .iter()
            .map(|s| Subset::from_elems(n, s).unwrap())
            .collect();
        Family::new(n, members).unwrap()
    }

    #[test]
    fn pair_examples() {
        let half = l("1/2");
        let a = Subset::from_elems(3, &[1, 2]).unwrap();
        let b = Subset::from_elems(3, &[1, 3]).unwrap();
        assert_eq!(
            is_fractional_pair(&a, &b, &half).unwrap(),
            Some(Fraction::new(1, 2).unwrap())
        );

        let zero = l("0/1");
        let c = Subset::from_elems(3, &[1]).unwrap();
        let d = Subset::from_elems(3, &[2]).unwrap();
        assert_eq!(
            is_fractional_pair(&c, &d, &zero).unwrap(),
            Some(Fraction::zero())
        );

        let e = Subset::from_elems(4, &[1, 2]).unwrap();
        let f = Subset::from_elems(4, &[3, 4]).unwrap();
        assert_eq!(is_fractional_pair(&e, &f, &half).unwrap(), None);
    }

    #[test]
    fn pair_rejects_identical_sets() {
        let a = Subset::from_elems(3, &[1, 2]).unwrap();
        assert!(matches!(
            is_fractional_pair(&a, &a.clone(), &l("1/2")),
            Err(Error::IdenticalSets)
        ));
    }

    #[test]
    fn pair_is_symmetric() {
        let half = l("1/2");
        let a = Subset::from_elems(5, &[1, 2, 3, 4]).unwrap();
        let b = Subset::from_elems(5, &[3, 4]).unwrap();
        assert_eq!(
            is_fractional_pair(&a, &b, &half).unwrap().is_some(),
            is_fractional_pair(&b, &a, &half).unwrap().is_some()
        );
    }

    #[test]
    fn verify_lists_exactly_the_failing_pairs() {
        let f = fam(4, &[&[1, 2], &[3, 4]]);
        let report = verify_family(&f, &l("1/2"));
        assert!(!report.valid);
        assert_eq!(report.violations, vec![(0, 1)]);

        let single = fam(4, &[&[1, 2]]);
        assert!(verify_family(&single, &l("1/2")).valid);
    }

    #[test]
    fn family_canonicalizes_and_rejects_duplicates() {
        let f = fam(4, &[&[1, 2, 3, 4], &[2], &[1, 3]]);
        let cards: Vec<u32> = f.members().iter().map(|m| m.card()).collect();
        assert_eq!(cards, vec![1, 2, 4]);

        let dup = Family::new(
            4,
            vec![
                Subset::from_elems(4, &[2, 1]).unwrap(),
                Subset::from_elems(4, &[1, 2]).unwrap(),
            ],
        );
        assert!(matches!(dup, Err(Error::DuplicateMember(_))));

        let empty = Family::new(4, vec![Subset::empty(4)]);
        assert!(matches!(empty, Err(Error::EmptyMember)));
    }

    #[test]
    fn uniformity_detects_uniform_families() {
        assert_eq!(fam(4, &[&[1, 2], &[3, 4], &[1, 3]]).uniformity(), Some(2));
        assert_eq!(fam(4, &[&[1], &[1, 2]]).uniformity(), None);
    }

    #[test]
    fn avoiding_examples() {
        assert!(is_avoiding(&fam(4, &[&[1, 2], &[3, 4]])).unwrap());
        let f = fam(4, &[&[1, 2], &[1, 3]]);
        assert!(!is_avoiding(&f).unwrap());
        let report = avoiding_report(&f).unwrap();
        assert_eq!(report.violations, vec![(0, 1)]);

        let odd = fam(4, &[&[1, 2], &[1, 2, 3]]);
        match is_avoiding(&odd) {
            Err(Error::OddMember(name)) => assert_eq!(name, "{1,2,3}"),
            other => panic!("expected OddMember, got {other:?}"),
        }
    }

    #[test]
    fn induced_classical_examples() {
        assert_eq!(induced_classical_l(4, &l("1/2")), vec![2]);
        assert_eq!(induced_classical_l(5, &l("1/2,1/3")), vec![1, 2]);
        assert_eq!(induced_classical_l(3, &l("0/1")), vec![0]);
    }

    #[test]
    fn approx_examples() {
        let eps = Fraction::new(1, 10).unwrap();
        let f = fam(3, &[&[1, 2], &[1, 3]]);
        assert!(approx_verify(&f, eps).unwrap().valid);

        let single = fam(3, &[&[1]]);
        assert!(approx_verify(&single, eps).unwrap().valid);

        // Ratios 0 and 0 sit far outside (2/5, 3/5).
        let g = fam(4, &[&[1, 2], &[3, 4]]);
        assert!(!approx_verify(&g, eps).unwrap().valid);

        assert!(matches!(
            approx_verify(&f, Fraction::new(1, 2).unwrap()),
            Err(Error::EpsilonOutOfRange)
        ));
        assert!(matches!(
            approx_verify(&f, Fraction::zero()),
            Err(Error::EpsilonOutOfRange)
        ));
    }

    #[test]
    fn approx_interval_is_open() {
        // Ratio exactly 1/2 ± ε must fail; the window is open.
        // |A∩B| = 2, |A| = 4 gives ratio 1/2 with eps tiny: passes.
        let f = fam(8, &[&[1, 2, 3, 4], &[3, 4, 5, 6]]);
        assert!(approx_verify(&f, Fraction::new(1, 100).unwrap())
            .unwrap()
            .valid);
        // Ratio 3/4 vs center 1/2: needs eps > 1/4; eps = 1/4 exactly fails.
        let g = fam(8, &[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        assert!(!approx_verify(&g, Fraction::new(1, 4).unwrap()).unwrap().valid);
        assert!(approx_verify(&g, Fraction::new(26, 100).unwrap())
            .unwrap()
            .valid);
    }
}
