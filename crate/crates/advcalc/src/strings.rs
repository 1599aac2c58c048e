//! Discrete perturbations on string universes: position-swap families, the
//! perturbed set `A^eps = { b(a) : a in A, b in B }`, exact adversarial risk,
//! and an exhaustive minimizer over the orbit closure of the atom supports.
//!
//! The swap maps are involutions, so the perturbation distributes over unions
//! and the usual risk-decrease lemmas transfer unchanged.

use crate::error::{Error, Result};
use crate::risk::RiskValue;
use crate::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// All strings of length at most `max_len` over a small alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringUniverse {
    alphabet: Vec<char>,
    max_len: usize,
}

impl StringUniverse {
    pub fn new(alphabet: &str, max_len: usize) -> Result<Self> {
        let alphabet: Vec<char> = alphabet.chars().collect();
        if alphabet.is_empty() || alphabet.len() > 4 {
            return Err(Error::Config(format!(
                "alphabet size must be 1..=4, got {}",
                alphabet.len()
            )));
        }
        if alphabet.iter().collect::<BTreeSet<_>>().len() != alphabet.len() {
            return Err(Error::Config("alphabet has repeated symbols".into()));
        }
        if max_len > 5 {
            return Err(Error::Config(format!("max_len must be <= 5, got {max_len}")));
        }
        Ok(StringUniverse { alphabet, max_len })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn contains(&self, w: &str) -> bool {
        w.chars().count() <= self.max_len && w.chars().all(|c| self.alphabet.contains(&c))
    }

    /// Every string of the universe, shortest first, then lexicographic.
    pub fn enumerate(&self) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..self.max_len {
            let mut next = Vec::new();
            for w in &layer {
                for c in &self.alphabet {
                    let mut s = w.clone();
                    s.push(*c);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn size(&self) -> usize {
        let k = self.alphabet.len();
        (0..=self.max_len).map(|l| k.pow(l as u32)).sum()
    }
}

/// A family of position transpositions `b^{i,j}` (1-based, i != j). Each map
/// swaps positions `i` and `j` when both exist and fixes the string
/// otherwise, so it is an involution on any universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapFamily {
    pairs: Vec<(usize, usize)>,
}

impl SwapFamily {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        for (i, j) in &pairs {
            if i == j || *i == 0 || *j == 0 {
                return Err(Error::Config(format!(
                    "swap pair ({i}, {j}) needs distinct 1-based positions"
                )));
            }
        }
        Ok(SwapFamily { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Applies `b^{i,j}`: swaps positions `i` and `j` (1-based) when
/// `max(i, j) <= |w|`, else returns `w` unchanged.
pub fn swap_apply(pair: (usize, usize), w: &str) -> String {
    let (i, j) = pair;
    let mut chars: Vec<char> = w.chars().collect();
    if i == 0 || j == 0 || i.max(j) > chars.len() {
        return w.to_string();
    }
    chars.swap(i - 1, j - 1);
    chars.into_iter().collect()
}

/// `A^eps = { b(a) : a in A, b in B }`. The identity map is not implied: an
/// empty family gives the empty image.
pub fn perturb(a: &BTreeSet<String>, family: &SwapFamily) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for w in a {
        for pair in family.pairs() {
            out.insert(swap_apply(*pair, w));
        }
    }
    out
}

/// `A^eps` including `A` itself: the closed-ball reading used for risk,
/// matching dilation by a ball that contains the origin.
pub fn perturb_closed(a: &BTreeSet<String>, family: &SwapFamily) -> BTreeSet<String> {
    let mut out = perturb(a, family);
    out.extend(a.iter().cloned());
    out
}

/// The erosion analogue `A^{-eps} = ((A^C)^eps)^C` within the universe.
pub fn erode_strings(
    a: &BTreeSet<String>,
    family: &SwapFamily,
    universe: &StringUniverse,
) -> Result<BTreeSet<String>> {
    for w in a {
        if !universe.contains(w) {
            return Err(Error::OutsideUniverse(w.clone()));
        }
    }
    let all: BTreeSet<String> = universe.enumerate().into_iter().collect();
    let complement: BTreeSet<String> = all.difference(a).cloned().collect();
    let grown = perturb_closed(&complement, family);
    Ok(all.difference(&grown).cloned().collect())
}

/// Verifies `intersection of perturb(C_n) = perturb(intersection of C_n)`
/// exactly on a decreasing chain; the equality relies on each swap being a
/// bijection.
pub fn decreasing_intersection_check(
    chain: &[BTreeSet<String>],
    family: &SwapFamily,
) -> Result<bool> {
    if chain.is_empty() {
        return Err(Error::Config("chain must be nonempty".into()));
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[1].is_subset(&w[0]) {
            return Err(Error::NotDecreasing(i));
        }
    }
    let mut lhs = perturb(&chain[0], family);
    let mut inter = chain[0].clone();
    for c in &chain[1..] {
        lhs = lhs.intersection(&perturb(c, family)).cloned().collect();
        inter = inter.intersection(c).cloned().collect();
    }
    Ok(lhs == perturb(&inter, family))
}

/// One weighted string with its conditional class-1 probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringAtom {
    pub w: String,
    pub p: Rational,
    pub eta: Rational,
}

/// A finite distribution over strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringDistribution {
    atoms: Vec<StringAtom>,
}

impl StringDistribution {
    pub fn new(atoms: Vec<StringAtom>, universe: &StringUniverse) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        let total: Rational = atoms.iter().map(|a| a.p.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !universe.contains(&a.w) {
                return Err(Error::OutsideUniverse(a.w.clone()));
            }
            if a.p <= Rational::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "mass {} at {:?} not positive",
                    a.p, a.w
                )));
            }
            if a.eta < Rational::zero() || a.eta > Rational::one() {
                return Err(Error::InvalidDistribution(format!(
                    "eta {} at {:?} outside [0,1]",
                    a.eta, a.w
                )));
            }
            if !seen.insert(a.w.clone()) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate support string {:?}",
                    a.w
                )));
            }
        }
        Ok(StringDistribution { atoms })
    }

    pub fn atoms(&self) -> &[StringAtom] {
        &self.atoms
    }

    pub fn bayes_risk(&self) -> RiskValue {
        let v: Rational = self
            .atoms
            .iter()
            .map(|a| {
                let other = Rational::one() - &a.eta;
                &a.p * if a.eta <= other { &a.eta } else { &other }
            })
            .sum();
        RiskValue::new(v).expect("bounded by construction")
    }
}

/// Exact `R^eps(A)` with `A^eps = perturb_closed(A)` and the complement
/// analogue for the second indicator.
pub fn string_adversarial_risk(
    a: &BTreeSet<String>,
    dist: &StringDistribution,
    family: &SwapFamily,
    universe: &StringUniverse,
) -> Result<RiskValue> {
    for w in a {
        if !universe.contains(w) {
            return Err(Error::OutsideUniverse(w.clone()));
        }
    }
    let a_grown = perturb_closed(a, family);
    let all: BTreeSet<String> = universe.enumerate().into_iter().collect();
    let complement: BTreeSet<String> = all.difference(a).cloned().collect();
    let comp_grown = perturb_closed(&complement, family);
    let mut total = Rational::zero();
    for atom in dist.atoms() {
        if a_grown.contains(&atom.w) {
            total += &atom.p * (Rational::one() - &atom.eta);
        }
        if comp_grown.contains(&atom.w) {
            total += &atom.p * &atom.eta;
        }
    }
    RiskValue::new(total)
}

/// Search outcome over string subsets.
#[derive(Debug, Clone)]
pub struct StringSearchResult {
    pub best_set: BTreeSet<String>,
    pub best_risk: RiskValue,
    /// The reduced candidate strings the oracle enumerated over.
    pub cells: Vec<String>,
    pub optimal: bool,
}

/// Orbit closure of the atom supports under the swap family: the only
/// strings whose membership can influence any risk term.
pub fn support_closure(
    dist: &StringDistribution,
    family: &SwapFamily,
    universe: &StringUniverse,
) -> Result<Vec<String>> {
    let mut frontier: BTreeSet<String> = dist.atoms().iter().map(|a| a.w.clone()).collect();
    let mut seen = frontier.clone();
    while !frontier.is_empty() {
        let grown = perturb(&frontier, family);
        frontier = grown.difference(&seen).cloned().collect();
        seen.extend(frontier.iter().cloned());
    }
    for w in &seen {
        if !universe.contains(w) {
            return Err(Error::OutsideUniverse(w.clone()));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Exhaustive minimizer of the adversarial risk over subsets of the orbit
/// closure; strings outside the closure never affect any risk term, so the
/// restriction is lossless. Ties go to the numerically smallest bitmask over
/// the sorted cells.
pub fn string_oracle_search(
    dist: &StringDistribution,
    family: &SwapFamily,
    universe: &StringUniverse,
) -> Result<StringSearchResult> {
    let cells = support_closure(dist, family, universe)?;
    if cells.len() > crate::optimize::MAX_CELLS {
        return Err(Error::BudgetExceeded(cells.len(), crate::optimize::MAX_CELLS));
    }
    let mut best_mask = 0u32;
    let mut best: Option<Rational> = None;
    for mask in 0..(1u64 << cells.len()) {
        let mask = mask as u32;
        let a: BTreeSet<String> = cells
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, w)| w.clone())
            .collect();
        let risk = string_adversarial_risk(&a, dist, family, universe)?;
        let better = match &best {
            None => true,
            Some(b) => risk.value() < b,
        };
        if better {
            best = Some(risk.value().clone());
            best_mask = mask;
        }
    }
    let best_set: BTreeSet<String> = cells
        .iter()
        .enumerate()
        .filter(|(j, _)| best_mask & (1 << j) != 0)
        .map(|(_, w)| w.clone())
        .collect();
    Ok(StringSearchResult {
        best_set,
        best_risk: RiskValue::new(best.expect("nonempty enumeration"))?,
        cells,
        optimal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn set(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    fn b12() -> SwapFamily {
        SwapFamily::new(vec![(1, 2)]).unwrap()
    }

    #[test]
    fn swap_apply_examples() {
        assert_eq!(swap_apply((1, 2), "ab"), "ba");
        assert_eq!(swap_apply((1, 2), "a"), "a");
        assert_eq!(swap_apply((1, 2), ""), "");
        assert_eq!(swap_apply((2, 5), "abcde"), "aecdb");
    }

    #[test]
    fn swaps_are_involutions() {
        let u = StringUniverse::new("abc", 4).unwrap();
        for pair in [(1, 2), (2, 3), (1, 4)] {
            for w in u.enumerate() {
                assert_eq!(swap_apply(pair, &swap_apply(pair, &w)), w);
            }
        }
    }

    #[test]
    fn perturb_examples() {
        let b = b12();
        assert!(perturb(&BTreeSet::new(), &b).is_empty());
        assert_eq!(perturb(&set(&["ab", "a"]), &b), set(&["ba", "a"]));
        // a family acting as the identity on every member
        let far = SwapFamily::new(vec![(4, 5)]).unwrap();
        let a = set(&["ab", "ba"]);
        assert_eq!(perturb(&a, &far), a);
    }

    #[test]
    fn perturb_distributes_over_unions() {
        let b = SwapFamily::new(vec![(1, 2), (2, 3)]).unwrap();
        let x = set(&["abc", "a"]);
        let y = set(&["bc", "cab"]);
        let union: BTreeSet<String> = x.union(&y).cloned().collect();
        let lhs = perturb(&union, &b);
        let rhs: BTreeSet<String> = perturb(&x, &b).union(&perturb(&y, &b)).cloned().collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decreasing_intersection_examples() {
        let u = StringUniverse::new("ab", 2).unwrap();
        let b = b12();
        let all: BTreeSet<String> = u.enumerate().into_iter().collect();
        let chain = vec![all, set(&["ab", "ba"]), set(&["ab"])];
        assert!(decreasing_intersection_check(&chain, &b).unwrap());
        let constant = vec![set(&["ab", "a"]); 3];
        assert!(decreasing_intersection_check(&constant, &b).unwrap());
        let bad = vec![set(&["a"]), set(&["ab"])];
        assert!(matches!(
            decreasing_intersection_check(&bad, &b),
            Err(Error::NotDecreasing(0))
        ));
    }

    fn ab_instance() -> (StringUniverse, StringDistribution, SwapFamily) {
        let u = StringUniverse::new("ab", 2).unwrap();
        let d = StringDistribution::new(
            vec![
                StringAtom {
                    w: "ab".into(),
                    p: rat(1, 2),
                    eta: rint(1),
                },
                StringAtom {
                    w: "ba".into(),
                    p: rat(1, 2),
                    eta: rint(0),
                },
            ],
            &u,
        )
        .unwrap();
        (u, d, b12())
    }

    #[test]
    fn adversarial_risk_examples() {
        let (u, d, b) = ab_instance();
        let a = set(&["ab"]);
        assert_eq!(
            string_adversarial_risk(&a, &d, &b, &u).unwrap().value(),
            &rint(1)
        );
        let all: BTreeSet<String> = u.enumerate().into_iter().collect();
        assert_eq!(
            string_adversarial_risk(&all, &d, &b, &u).unwrap().value(),
            &rat(1, 2) // sum p_i (1 - eta_i)
        );
        // a no-op family reduces to standard risk
        let far = SwapFamily::new(vec![(4, 5)]).unwrap();
        assert_eq!(
            string_adversarial_risk(&a, &d, &far, &u).unwrap().value(),
            &rint(0)
        );
    }

    #[test]
    fn risk_decrease_under_opening() {
        let (u, d, b) = ab_instance();
        let all = u.enumerate();
        // every subset of a small universe: opening never increases risk
        let words: Vec<String> = all.into_iter().collect();
        for mask in 0..(1u32 << words.len().min(7)) {
            let a: BTreeSet<String> = words
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, w)| w.clone())
                .collect();
            let eroded = erode_strings(&a, &b, &u).unwrap();
            let opened = perturb_closed(&eroded, &b);
            let r_a = string_adversarial_risk(&a, &d, &b, &u).unwrap();
            let r_o = string_adversarial_risk(&opened, &d, &b, &u).unwrap();
            assert!(r_o <= r_a, "mask {mask}: {r_o} > {r_a}");
        }
    }

    #[test]
    fn oracle_on_the_two_atom_instance() {
        let (u, d, b) = ab_instance();
        let result = string_oracle_search(&d, &b, &u).unwrap();
        assert_eq!(result.best_risk.value(), &rat(1, 2));
        assert_eq!(result.cells.len(), 2); // orbit closure of {ab, ba}
    }

    #[test]
    fn single_confident_atom_and_indifferent_distribution() {
        let u = StringUniverse::new("ab", 2).unwrap();
        let b = b12();
        let d = StringDistribution::new(
            vec![StringAtom {
                w: "ab".into(),
                p: rint(1),
                eta: rint(1),
            }],
            &u,
        )
        .unwrap();
        let result = string_oracle_search(&d, &b, &u).unwrap();
        assert_eq!(result.best_risk.value(), &rint(0));
        // the minimizer must cover the whole orbit of the atom
        assert!(result.best_set.contains("ab") && result.best_set.contains("ba"));

        let indifferent = StringDistribution::new(
            vec![
                StringAtom {
                    w: "a".into(),
                    p: rat(1, 2),
                    eta: rat(1, 2),
                },
                StringAtom {
                    w: "b".into(),
                    p: rat(1, 2),
                    eta: rat(1, 2),
                },
            ],
            &u,
        )
        .unwrap();
        let result = string_oracle_search(&indifferent, &b, &u).unwrap();
        assert_eq!(result.best_risk.value(), &rat(1, 2));
    }

    #[test]
    fn universe_bounds_enforced() {
        assert!(StringUniverse::new("abcde", 2).is_err());
        assert!(StringUniverse::new("ab", 6).is_err());
        assert!(StringUniverse::new("aab", 2).is_err());
        let u = StringUniverse::new("ab", 2).unwrap();
        assert_eq!(u.size(), 7);
        assert_eq!(u.enumerate().len(), 7);
        assert!(u.contains(""));
        assert!(!u.contains("abc"));
        assert!(!u.contains("c"));
    }
}
