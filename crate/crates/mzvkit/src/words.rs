//! Words and rational linear combinations in the tensor algebras on two
//! letters, Lie brackets, the star involution, Lie-membership testing and
//! derivations given by generator images.
//!
//! Two alphabets are supported: genus 0 with letters `x0, x1` (the second
//! letter carries the depth grading) and genus 1 with letters `a, b` (the
//! second letter carries the B-grading).

use crate::rat::{format_rat, parse_rat, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Alphabet {
    Genus0,
    Genus1,
}

impl Alphabet {
    pub fn letter_names(&self) -> (char, char) {
        match self {
            Alphabet::Genus0 => ('0', '1'),
            Alphabet::Genus1 => ('a', 'b'),
        }
    }
}

/// A word over a two-letter alphabet, packed as a bit sequence.
/// Bit `i` is set iff position `i` (from the left) holds the second letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Word {
    pub len: u8,
    pub bits: u32,
}

impl Word {
    pub fn empty() -> Self {
        Word { len: 0, bits: 0 }
    }

    pub fn first() -> Self {
        Word { len: 1, bits: 0 }
    }

    pub fn second() -> Self {
        Word { len: 1, bits: 1 }
    }

    pub fn from_bits(len: usize, bits: u32) -> Self {
        assert!(len <= 32);
        Word {
            len: len as u8,
            bits,
        }
    }

    pub fn weight(&self) -> usize {
        self.len as usize
    }

    /// Number of second letters (the counting degree: depth or B-degree).
    pub fn counting_degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn letter(&self, i: usize) -> bool {
        debug_assert!(i < self.len as usize);
        (self.bits >> i) & 1 == 1
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert!(self.len as usize + other.len as usize <= 32);
        Word {
            len: self.len + other.len,
            bits: self.bits | (other.bits << self.len),
        }
    }

    pub fn reversed(&self) -> Word {
        let mut bits = 0u32;
        for i in 0..self.len as usize {
            if self.letter(i) {
                bits |= 1 << (self.len as usize - 1 - i);
            }
        }
        Word {
            len: self.len,
            bits,
        }
    }

    /// Exponent-gap form `s0 x1 s0^{e1} x1 ... x1 s0^{er}` for a word of
    /// counting degree r: returns `[e0, e1, ..., er]`.
    pub fn gaps(&self) -> Vec<usize> {
        let mut gaps = vec![0usize];
        for i in 0..self.len as usize {
            if self.letter(i) {
                gaps.push(0);
            } else {
                *gaps.last_mut().unwrap() += 1;
            }
        }
        gaps
    }

    pub fn from_gaps(gaps: &[usize]) -> Word {
        let mut w = Word::empty();
        for (i, g) in gaps.iter().enumerate() {
            if i > 0 {
                w = w.concat(&Word::second());
            }
            for _ in 0..*g {
                w = w.concat(&Word::first());
            }
        }
        w
    }

    pub fn to_string_in(&self, alphabet: Alphabet) -> String {
        let (c0, c1) = alphabet.letter_names();
        (0..self.len as usize)
            .map(|i| if self.letter(i) { c1 } else { c0 })
            .collect()
    }

    pub fn parse_in(s: &str, alphabet: Alphabet) -> Option<Word> {
        let (c0, c1) = alphabet.letter_names();
        let mut w = Word::empty();
        for ch in s.chars() {
            if ch == c0 {
                w = w.concat(&Word::first());
            } else if ch == c1 {
                w = w.concat(&Word::second());
            } else {
                return None;
            }
        }
        Some(w)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // length, then lexicographic with first letter < second letter
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len as usize {
                let c = self.letter(i).cmp(&other.letter(i));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational linear combination of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly {
    pub alphabet: Alphabet,
    pub terms: BTreeMap<Word, Rat>,
}

impl NCPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NCPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(alphabet: Alphabet, w: Word) -> Self {
        let mut p = NCPoly::zero(alphabet);
        p.add_term(w, Rat::from_integer(1.into()));
        p
    }

    pub fn first(alphabet: Alphabet) -> Self {
        Self::word(alphabet, Word::first())
    }

    pub fn second(alphabet: Alphabet) -> Self {
        Self::word(alphabet, Word::second())
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::word(alphabet, Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> NCPoly {
        if k.is_zero() {
            return NCPoly::zero(self.alphabet);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    /// Concatenation product, optionally discarding words above a weight cutoff.
    pub fn concat_cut(&self, other: &NCPoly, cutoff: Option<usize>) -> NCPoly {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut out = NCPoly::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let wt = w1.weight() + w2.weight();
                if let Some(cut) = cutoff {
                    if wt > cut {
                        continue;
                    }
                }
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn concat(&self, other: &NCPoly) -> NCPoly {
        self.concat_cut(other, None)
    }

    pub fn bracket(&self, other: &NCPoly) -> NCPoly {
        self.concat(other).sub(&other.concat(self))
    }

    /// Star involution: linear extension of `(a_1...a_n)* = (-1)^n a_n...a_1`.
    pub fn star(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            let sign = if w.weight() % 2 == 0 { 1 } else { -1 };
            out.add_term(w.reversed(), c * Rat::from_integer(sign.into()));
        }
        out
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.weight()).max()
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.weight()).min()
    }

    pub fn is_homogeneous_weight(&self) -> Option<usize> {
        let n = self.max_weight()?;
        if self.min_weight() == Some(n) {
            Some(n)
        } else {
            None
        }
    }

    /// Component of the given counting degree (depth / B-degree).
    pub fn counting_component(&self, r: usize) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            if w.counting_degree() == r {
                out.add_term(*w, c.clone());
            }
        }
        out
    }

    pub fn weight_component(&self, n: usize) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            if w.weight() == n {
                out.add_term(*w, c.clone());
            }
        }
        out
    }

    pub fn truncate_weight(&self, cutoff: usize) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            if w.weight() <= cutoff {
                out.add_term(*w, c.clone());
            }
        }
        out
    }

    pub fn counting_degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|w| w.counting_degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Right-normed Dynkin bracketing, extended linearly:
    /// `l_1 l_2 ... l_n -> [l_1, [l_2, [... l_n]]]`.
    pub fn dynkin(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            let n = w.weight();
            if n == 0 {
                continue;
            }
            // expand iteratively from the right; signed word list
            let mut cur: Vec<(Word, i64)> = vec![(
                Word {
                    len: 1,
                    bits: w.letter(n - 1) as u32,
                },
                1,
            )];
            for i in (0..n - 1).rev() {
                let l = Word {
                    len: 1,
                    bits: w.letter(i) as u32,
                };
                let mut next = Vec::with_capacity(cur.len() * 2);
                for (v, s) in &cur {
                    next.push((l.concat(v), *s));
                    next.push((v.concat(&l), -*s));
                }
                cur = next;
            }
            for (v, s) in cur {
                out.add_term(v, c * Rat::from_integer(s.into()));
            }
        }
        out
    }

    /// Lie membership via the Dynkin criterion: a weight-homogeneous element
    /// `p` of weight `n >= 1` is a Lie element iff `dynkin(p) = n p`.
    pub fn is_lie(&self) -> Result<bool, String> {
        if self.is_zero() {
            return Ok(true);
        }
        let n = self
            .is_homogeneous_weight()
            .ok_or_else(|| "non-homogeneous input".to_string())?;
        if n == 0 {
            return Ok(false);
        }
        let lhs = self.dynkin();
        let rhs = self.scale(&Rat::from_integer((n as i64).into()));
        Ok(lhs == rhs)
    }

    /// Primitivity defect for the unshuffle coproduct (the coproduct for
    /// which letters are primitive and concatenation is a morphism): zero
    /// iff the element is a Lie element.  Exponential in the weight, so only
    /// used as an independent cross-check on `is_lie` for small inputs.
    pub fn unshuffle_defect(&self) -> BTreeMap<(Word, Word), Rat> {
        let mut out: BTreeMap<(Word, Word), Rat> = BTreeMap::new();
        for (w, c) in &self.terms {
            let n = w.weight();
            for mask in 1..((1u32 << n) - 1) {
                let mut left = Word::empty();
                let mut right = Word::empty();
                for i in 0..n {
                    let l = Word {
                        len: 1,
                        bits: w.letter(i) as u32,
                    };
                    if (mask >> i) & 1 == 1 {
                        left = left.concat(&l);
                    } else {
                        right = right.concat(&l);
                    }
                }
                let e = out.entry((left, right)).or_insert_with(Rat::zero);
                *e += c.clone();
                if e.is_zero() {
                    out.remove(&(left, right));
                }
            }
        }
        out
    }

    /// Substitute each letter by a polynomial, extending multiplicatively.
    /// Words whose image exceeds the weight cutoff are discarded term by term.
    pub fn substitute_letters(
        &self,
        img_first: &NCPoly,
        img_second: &NCPoly,
        cutoff: Option<usize>,
    ) -> NCPoly {
        assert_eq!(img_first.alphabet, img_second.alphabet);
        let target = img_first.alphabet;
        let mut out = NCPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NCPoly::one(target);
            for i in 0..w.weight() {
                let img = if w.letter(i) { img_second } else { img_first };
                acc = acc.concat_cut(img, cutoff);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string_in(self.alphabet), format_rat(c)))
            .collect()
    }

    pub fn from_pairs(alphabet: Alphabet, pairs: &[(String, String)]) -> Option<NCPoly> {
        let mut p = NCPoly::zero(alphabet);
        for (ws, cs) in pairs {
            p.add_term(Word::parse_in(ws, alphabet)?, parse_rat(cs)?);
        }
        Some(p)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{}", format_rat(c), w.to_string_in(self.alphabet))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AnnihilatorTag {
    /// Sends the second letter to zero (derivations of the genus-0 algebra).
    KillsSecond,
    /// Annihilates the commutator of the generators (genus-1 derivations).
    KillsCommutator,
    None,
}

/// A derivation of the free Lie algebra on two generators, stored as the
/// images of the generators and extended by the Leibniz rule.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub alphabet: Alphabet,
    pub image_first: NCPoly,
    pub image_second: NCPoly,
    pub tag: AnnihilatorTag,
}

impl Derivation {
    pub fn new(
        alphabet: Alphabet,
        image_first: NCPoly,
        image_second: NCPoly,
        tag: AnnihilatorTag,
        check_weight_bound: Option<usize>,
    ) -> Result<Derivation, String> {
        assert_eq!(image_first.alphabet, alphabet);
        assert_eq!(image_second.alphabet, alphabet);
        let d = Derivation {
            alphabet,
            image_first,
            image_second,
            tag,
        };
        match tag {
            AnnihilatorTag::KillsSecond => {
                if !d.image_second.is_zero() {
                    return Err("kills_second derivation with nonzero second image".into());
                }
            }
            AnnihilatorTag::KillsCommutator => {
                if let Some(bound) = check_weight_bound {
                    let theta = NCPoly::first(alphabet).bracket(&NCPoly::second(alphabet));
                    let img = d.apply(&theta, bound);
                    if !img.is_zero() {
                        return Err("derivation does not annihilate the commutator".into());
                    }
                }
            }
            AnnihilatorTag::None => {}
        }
        Ok(d)
    }

    /// Genus-0 derivation attached to a Lie element: `x0 -> [x0, w]`, `x1 -> 0`.
    pub fn from_lie(w: &NCPoly) -> Derivation {
        assert_eq!(w.alphabet, Alphabet::Genus0);
        let x0 = NCPoly::first(Alphabet::Genus0);
        Derivation {
            alphabet: Alphabet::Genus0,
            image_first: x0.bracket(w),
            image_second: NCPoly::zero(Alphabet::Genus0),
            tag: AnnihilatorTag::KillsSecond,
        }
    }

    /// Genus-0 derivation `x0 -> w`, `x1 -> 0` (the linear identification of
    /// elements with derivations used by the commutative representations).
    pub fn sends_first_to(w: &NCPoly) -> Derivation {
        assert_eq!(w.alphabet, Alphabet::Genus0);
        Derivation {
            alphabet: Alphabet::Genus0,
            image_first: w.clone(),
            image_second: NCPoly::zero(Alphabet::Genus0),
            tag: AnnihilatorTag::KillsSecond,
        }
    }

    /// Leibniz extension, dropping output terms of weight above the cutoff.
    pub fn apply(&self, p: &NCPoly, cutoff: usize) -> NCPoly {
        assert_eq!(p.alphabet, self.alphabet, "alphabet mismatch");
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &p.terms {
            let n = w.weight();
            for i in 0..n {
                let img = if w.letter(i) {
                    &self.image_second
                } else {
                    &self.image_first
                };
                if img.is_zero() {
                    continue;
                }
                let prefix = Word {
                    len: i as u8,
                    bits: w.bits & ((1u32 << i) - 1),
                };
                let suffix = Word {
                    len: (n - i - 1) as u8,
                    bits: w.bits >> (i + 1),
                };
                for (m, mc) in &img.terms {
                    let wt = n - 1 + m.weight();
                    if wt > cutoff {
                        continue;
                    }
                    out.add_term(prefix.concat(m).concat(&suffix), c * mc * Rat::from_integer(1.into()));
                }
            }
        }
        out
    }

    /// Commutator of derivations, via images of the generators.
    pub fn commutator(&self, other: &Derivation, cutoff: usize) -> Derivation {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let img_f = self
            .apply(&other.image_first, cutoff)
            .sub(&other.apply(&self.image_first, cutoff));
        let img_s = self
            .apply(&other.image_second, cutoff)
            .sub(&other.apply(&self.image_second, cutoff));
        let tag = if self.tag == other.tag {
            self.tag
        } else {
            AnnihilatorTag::None
        };
        Derivation {
            alphabet: self.alphabet,
            image_first: img_f,
            image_second: img_s,
            tag,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.image_first.is_zero() && self.image_second.is_zero()
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.alphabet, other.alphabet);
        Derivation {
            alphabet: self.alphabet,
            image_first: self.image_first.add(&other.image_first),
            image_second: self.image_second.add(&other.image_second),
            tag: if self.tag == other.tag {
                self.tag
            } else {
                AnnihilatorTag::None
            },
        }
    }

    pub fn scale(&self, k: &Rat) -> Derivation {
        Derivation {
            alphabet: self.alphabet,
            image_first: self.image_first.scale(k),
            image_second: self.image_second.scale(k),
            tag: self.tag,
        }
    }
}

/// Iterated adjoint: `ad(p)^k (q)`.
pub fn ad_pow(p: &NCPoly, k: usize, q: &NCPoly) -> NCPoly {
    let mut acc = q.clone();
    for _ in 0..k {
        acc = p.bracket(&acc);
    }
    acc
}

/// All words of the given weight and counting degree.
pub fn words_of(weight: usize, counting: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if counting > weight || weight > 32 {
        return out;
    }
    // iterate over bit patterns with `counting` ones among `weight` bits
    fn rec(weight: usize, pos: usize, left: usize, bits: u32, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::from_bits(weight, bits));
            return;
        }
        if pos >= weight || weight - pos < left {
            return;
        }
        rec(weight, pos + 1, left - 1, bits | (1 << pos), out);
        rec(weight, pos + 1, left, bits, out);
    }
    rec(weight, 0, counting, 0, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rq, rz};

    fn x0() -> NCPoly {
        NCPoly::first(Alphabet::Genus0)
    }
    fn x1() -> NCPoly {
        NCPoly::second(Alphabet::Genus0)
    }

    #[test]
    fn concat_examples() {
        let p = x0().concat(&x1());
        assert_eq!(p.to_pairs(), vec![("01".to_string(), "1".to_string())]);

        let q = x0().add(&x1()).concat(&x0());
        assert_eq!(q.coeff(&Word::parse_in("00", Alphabet::Genus0).unwrap()), rz(1));
        assert_eq!(q.coeff(&Word::parse_in("10", Alphabet::Genus0).unwrap()), rz(1));

        let z = p.concat(&NCPoly::zero(Alphabet::Genus0));
        assert!(z.is_zero());
    }

    #[test]
    fn bracket_and_ad_pow() {
        let b = x0().bracket(&x1());
        assert_eq!(b.coeff(&Word::parse_in("01", Alphabet::Genus0).unwrap()), rz(1));
        assert_eq!(b.coeff(&Word::parse_in("10", Alphabet::Genus0).unwrap()), rz(-1));

        let a2 = ad_pow(&x0(), 2, &x1());
        assert_eq!(a2.coeff(&Word::parse_in("001", Alphabet::Genus0).unwrap()), rz(1));
        assert_eq!(a2.coeff(&Word::parse_in("010", Alphabet::Genus0).unwrap()), rz(-2));
        assert_eq!(a2.coeff(&Word::parse_in("100", Alphabet::Genus0).unwrap()), rz(1));

        let p = a2.clone();
        assert!(p.bracket(&p).is_zero());
    }

    #[test]
    fn star_examples() {
        let p = x0().concat(&x1());
        let s = p.star();
        assert_eq!(s.coeff(&Word::parse_in("10", Alphabet::Genus0).unwrap()), rz(1));

        let q = x0().concat(&x0()).concat(&x1());
        let sq = q.star();
        assert_eq!(sq.coeff(&Word::parse_in("100", Alphabet::Genus0).unwrap()), rz(-1));

        let r = ad_pow(&x0(), 3, &x1()).add(&x1().concat(&x0()).scale(&rq(2, 3)));
        assert_eq!(r.star().star(), r);
    }

    #[test]
    fn star_antiautomorphism() {
        let p = x0().bracket(&x1()).add(&x0().concat(&x0()));
        let q = x1().concat(&x0()).add(&x1());
        assert_eq!(p.concat(&q).star(), q.star().concat(&p.star()));
    }

    #[test]
    fn lie_membership() {
        assert!(x0().bracket(&x1()).is_lie().unwrap());
        assert!(!x0().concat(&x1()).is_lie().unwrap());
        assert!(ad_pow(&x0(), 4, &x1()).is_lie().unwrap());
        assert!(x1().bracket(&x0().bracket(&x1())).is_lie().unwrap());

        // mixed weight is rejected
        assert!(x0().add(&x0().concat(&x1())).is_lie().is_err());
    }

    #[test]
    fn lie_implies_antipodal() {
        for p in [
            ad_pow(&x0(), 2, &x1()),
            x1().bracket(&x0().bracket(&x1())),
            ad_pow(&x0(), 3, &x1()).bracket(&ad_pow(&x0(), 1, &x1())),
        ] {
            assert!(p.add(&p.star()).is_zero());
        }
    }

    #[test]
    fn dynkin_matches_primitivity() {
        // a Lie element and a non-Lie element, both checked against the
        // unshuffle-primitivity criterion
        let lie = ad_pow(&x0(), 2, &x1()).bracket(&x1());
        assert!(lie.is_lie().unwrap());
        assert!(lie.unshuffle_defect().is_empty());

        let not_lie = x0().concat(&x1()).concat(&x1());
        assert!(!not_lie.is_lie().unwrap());
        assert!(!not_lie.unshuffle_defect().is_empty());

        // agreement on every word combination of weight 5, depth 2
        for w in words_of(5, 2) {
            let p = NCPoly::word(Alphabet::Genus0, w).add(&ad_pow(&x0(), 3, &x1()).bracket(&x1()));
            assert_eq!(
                p.is_lie().unwrap(),
                p.unshuffle_defect().is_empty(),
                "criteria disagree on {p}"
            );
        }
    }

    #[test]
    fn derivation_basics() {
        let w = ad_pow(&x0(), 2, &x1());
        let d = Derivation::sends_first_to(&w);
        assert!(d.apply(&x1(), 10).is_zero());
        let dx01 = d.apply(&x0().concat(&x1()), 10);
        assert_eq!(dx01, w.concat(&x1()));

        // section 2.2 convention: x0 -> [x0, w]
        let d2 = Derivation::from_lie(&w);
        assert_eq!(d2.apply(&x0(), 10), x0().bracket(&w));

        let z = d.commutator(&d, 12);
        assert!(z.is_zero());
    }

    #[test]
    fn words_of_enumeration() {
        assert_eq!(words_of(4, 2).len(), 6);
        assert_eq!(words_of(3, 0).len(), 1);
        for w in words_of(5, 2) {
            assert_eq!(w.weight(), 5);
            assert_eq!(w.counting_degree(), 2);
        }
    }

    #[test]
    fn gaps_roundtrip() {
        for w in words_of(6, 2) {
            assert_eq!(Word::from_gaps(&w.gaps()), w);
        }
    }
}
