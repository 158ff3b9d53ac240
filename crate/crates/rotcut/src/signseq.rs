//! Bi-chromatic sign sequences, their edit operations, reduction, and the
//! trace invariant. A valid sequence is a list of red/blue symbols, each
//! carrying a sign, where each color's subsequence has odd length and
//! alternates. The trace is invariant under insertions, deletions and
//! transfers, and flips under reversal, which is what forces a switch (and
//! hence a simultaneous bisector) somewhere in every half-turn.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColorRB {
    Red,
    Blue,
}

impl ColorRB {
    pub fn letter(self) -> char {
        match self {
            ColorRB::Red => 'R',
            ColorRB::Blue => 'B',
        }
    }
}

/// Crossing sign: '+' records an intersection from above, '-' from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub color: ColorRB,
    pub sign: Sign,
}

impl Symbol {
    pub fn new(color: ColorRB, sign: Sign) -> Self {
        Symbol { color, sign }
    }

    /// Inverse: same color, other sign.
    pub fn inverse(self) -> Symbol {
        Symbol::new(self.color, self.sign.flip())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSeq {
    symbols: Vec<Symbol>,
}

/// One maximal run of a reduced sequence: odd length, signs alternating
/// from `first_sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub color: ColorRB,
    pub len: usize,
    pub first_sign: Sign,
}

impl Run {
    fn last_sign(&self) -> Sign {
        if self.len % 2 == 1 {
            self.first_sign
        } else {
            self.first_sign.flip()
        }
    }

    /// Signed symbol sum of the run: zero for even runs, the first sign for
    /// odd runs.
    fn sum(&self) -> i64 {
        if self.len.is_multiple_of(2) {
            0
        } else {
            self.first_sign.value()
        }
    }
}

/// A reduced sign sequence: runs of odd length with alternating colors,
/// starting and ending in different colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSeq {
    runs: Vec<Run>,
}

impl ReducedSeq {
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Signed symbol sum, always in {-2, 0, 2} for reductions of valid
    /// sequences.
    pub fn sigma(&self) -> i64 {
        self.runs.iter().map(Run::sum).sum()
    }

    /// 2 when the first symbol is red, 0 otherwise.
    pub fn lambda(&self) -> i64 {
        match self.runs.first() {
            Some(r) if r.color == ColorRB::Red => 2,
            _ => 0,
        }
    }

    /// Back to an explicit symbol sequence.
    pub fn expand(&self) -> SignSeq {
        let mut symbols = Vec::new();
        for run in &self.runs {
            let mut sign = run.first_sign;
            for _ in 0..run.len {
                symbols.push(Symbol::new(run.color, sign));
                sign = sign.flip();
            }
        }
        SignSeq::from_symbols(symbols)
    }
}

/// The trace of a sequence, a two-valued invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trace(pub u8);

impl Trace {
    pub fn flipped(self) -> Trace {
        Trace(1 - self.0)
    }
}

impl std::fmt::Display for Trace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Edit operations mirroring the four ways the crossing order along the
/// green median level can change during the rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edit {
    /// Swap adjacent symbols of different colors.
    Switch(usize),
    /// Remove adjacent symbols of the same color (their signs differ).
    Delete(usize),
    /// Insert the pair (color, first_sign), (color, !first_sign) at `pos`.
    Insert {
        pos: usize,
        color: ColorRB,
        first_sign: Sign,
    },
    TransferFirstToEnd,
    TransferLastToFront,
}

impl SignSeq {
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        SignSeq { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Check the two validity conditions; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        for color in [ColorRB::Red, ColorRB::Blue] {
            let sub: Vec<Sign> = self
                .symbols
                .iter()
                .filter(|s| s.color == color)
                .map(|s| s.sign)
                .collect();
            if sub.len().is_multiple_of(2) {
                return Err(Error::InvalidEdit(format!(
                    "{} subsequence must have odd length, found {}",
                    color.letter(),
                    sub.len()
                )));
            }
            for w in sub.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidEdit(format!(
                        "{} subsequence must alternate signs",
                        color.letter()
                    )));
                }
            }
        }
        Ok(())
    }

    fn run_length_encode(&self) -> Vec<Run> {
        let mut runs: Vec<Run> = Vec::new();
        for s in &self.symbols {
            match runs.last_mut() {
                Some(r) if r.color == s.color => r.len += 1,
                _ => runs.push(Run {
                    color: s.color,
                    len: 1,
                    first_sign: s.sign,
                }),
            }
        }
        runs
    }

    /// Reduced sign sequence: repeatedly delete even-length runs, merging
    /// the same-colored neighbors this exposes, until all runs are odd.
    /// Implemented as a single left-to-right pass over the run encoding.
    pub fn reduce(&self) -> ReducedSeq {
        let mut stack: Vec<Run> = Vec::new();
        for run in self.run_length_encode() {
            let mut cur = run;
            while let Some(top) = stack.last() {
                if top.color != cur.color {
                    break;
                }
                let top = stack.pop().unwrap();
                debug_assert_eq!(top.last_sign().flip(), cur.first_sign);
                cur = Run {
                    color: top.color,
                    len: top.len + cur.len,
                    first_sign: top.first_sign,
                };
            }
            if cur.len % 2 == 1 {
                stack.push(cur);
            }
        }
        ReducedSeq { runs: stack }
    }

    /// The trace ((sigma + lambda) / 2) mod 2, with the representative of
    /// negative residues fixed in {0, 1}.
    pub fn trace(&self) -> Trace {
        let rho = self.reduce();
        let half = (rho.sigma() + rho.lambda()) / 2;
        Trace(half.rem_euclid(2) as u8)
    }

    /// Reverse the order and invert every sign.
    pub fn reverse(&self) -> SignSeq {
        SignSeq::from_symbols(self.symbols.iter().rev().map(|s| s.inverse()).collect())
    }

    fn prev_of_color(&self, pos: usize, color: ColorRB) -> Option<Sign> {
        self.symbols[..pos]
            .iter()
            .rev()
            .find(|s| s.color == color)
            .map(|s| s.sign)
    }

    fn next_of_color(&self, pos: usize, color: ColorRB) -> Option<Sign> {
        self.symbols[pos..]
            .iter()
            .find(|s| s.color == color)
            .map(|s| s.sign)
    }

    /// Apply an edit, validating its applicability.
    pub fn apply_edit(&self, edit: &Edit) -> Result<SignSeq> {
        let mut out = self.symbols.clone();
        match edit {
            Edit::Switch(i) => {
                let i = *i;
                if i + 1 >= out.len() {
                    return Err(Error::InvalidEdit(format!(
                        "switch position {i} out of range"
                    )));
                }
                if out[i].color == out[i + 1].color {
                    return Err(Error::InvalidEdit(
                        "switch requires adjacent symbols of different colors".into(),
                    ));
                }
                out.swap(i, i + 1);
            }
            Edit::Delete(i) => {
                let i = *i;
                if i + 1 >= out.len() {
                    return Err(Error::InvalidEdit(format!(
                        "delete position {i} out of range"
                    )));
                }
                if out[i].color != out[i + 1].color {
                    return Err(Error::InvalidEdit(
                        "delete requires adjacent symbols of the same color".into(),
                    ));
                }
                if out[i].sign == out[i + 1].sign {
                    return Err(Error::InvalidEdit(
                        "delete requires opposite signs (sequence invalid?)".into(),
                    ));
                }
                out.drain(i..=i + 1);
            }
            Edit::Insert {
                pos,
                color,
                first_sign,
            } => {
                let pos = *pos;
                if pos > out.len() {
                    return Err(Error::InvalidEdit(format!(
                        "insert position {pos} out of range"
                    )));
                }
                // The inserted pair must keep the color's subsequence
                // alternating: the previous same-color symbol must carry the
                // opposite sign and the next one the same sign.
                if let Some(prev) = self.prev_of_color(pos, *color) {
                    if prev != first_sign.flip() {
                        return Err(Error::InvalidEdit(
                            "insert breaks alternation with the previous symbol of its color"
                                .into(),
                        ));
                    }
                }
                if let Some(next) = self.next_of_color(pos, *color) {
                    if next != *first_sign {
                        return Err(Error::InvalidEdit(
                            "insert breaks alternation with the next symbol of its color".into(),
                        ));
                    }
                }
                if self.prev_of_color(pos, *color).is_none()
                    && self.next_of_color(pos, *color).is_none()
                {
                    return Err(Error::InvalidEdit(
                        "insert requires an existing symbol of its color".into(),
                    ));
                }
                out.insert(pos, Symbol::new(*color, first_sign.flip()));
                out.insert(pos, Symbol::new(*color, *first_sign));
            }
            Edit::TransferFirstToEnd => {
                if out.is_empty() {
                    return Err(Error::InvalidEdit("transfer on empty sequence".into()));
                }
                let first = out.remove(0);
                out.push(first.inverse());
            }
            Edit::TransferLastToFront => {
                if out.is_empty() {
                    return Err(Error::InvalidEdit("transfer on empty sequence".into()));
                }
                let last = out.pop().unwrap();
                out.insert(0, last.inverse());
            }
        }
        let result = SignSeq::from_symbols(out);
        debug_assert!(result.validate().is_ok());
        Ok(result)
    }

    /// Text encoding, e.g. "R+ B+ B- R-".
    pub fn encode(&self) -> String {
        self.symbols
            .iter()
            .map(|s| format!("{}{}", s.color.letter(), s.sign.symbol()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn decode(text: &str) -> Result<SignSeq> {
        let mut symbols = Vec::new();
        for tok in text.split_whitespace() {
            let mut chars = tok.chars();
            let color = match chars.next() {
                Some('R') | Some('r') => ColorRB::Red,
                Some('B') | Some('b') => ColorRB::Blue,
                other => {
                    return Err(Error::Usage(format!(
                        "invalid sign-sequence token {tok:?}: bad color {other:?}"
                    )))
                }
            };
            let sign = match chars.next() {
                Some('+') => Sign::Plus,
                Some('-') => Sign::Minus,
                other => {
                    return Err(Error::Usage(format!(
                        "invalid sign-sequence token {tok:?}: bad sign {other:?}"
                    )))
                }
            };
            if chars.next().is_some() {
                return Err(Error::Usage(format!("invalid sign-sequence token {tok:?}")));
            }
            symbols.push(Symbol::new(color, sign));
        }
        Ok(SignSeq::from_symbols(symbols))
    }
}

/// Uniformly random valid sequence: odd counts per color, random signs for
/// the first symbol of each color, random interleaving.
pub fn random_valid<R: rand::Rng>(rng: &mut R, max_len: usize) -> SignSeq {
    let max_per_color = (max_len / 2).max(1);
    let odd_count = |rng: &mut R| {
        let k = rng.random_range(0..max_per_color.div_ceil(2));
        2 * k + 1
    };
    let reds = odd_count(rng);
    let blues = odd_count(rng);
    let mut colors: Vec<ColorRB> = std::iter::repeat_n(ColorRB::Red, reds)
        .chain(std::iter::repeat_n(ColorRB::Blue, blues))
        .collect();
    // Fisher-Yates.
    for i in (1..colors.len()).rev() {
        let j = rng.random_range(0..=i);
        colors.swap(i, j);
    }
    let mut next_sign = [
        if rng.random::<bool>() {
            Sign::Plus
        } else {
            Sign::Minus
        },
        if rng.random::<bool>() {
            Sign::Plus
        } else {
            Sign::Minus
        },
    ];
    let symbols = colors
        .into_iter()
        .map(|c| {
            let idx = match c {
                ColorRB::Red => 0,
                ColorRB::Blue => 1,
            };
            let s = next_sign[idx];
            next_sign[idx] = s.flip();
            Symbol::new(c, s)
        })
        .collect();
    let seq = SignSeq::from_symbols(symbols);
    debug_assert!(seq.validate().is_ok());
    seq
}

/// All edits applicable to `seq`, optionally excluding switches.
pub fn applicable_edits(seq: &SignSeq, include_switch: bool) -> Vec<Edit> {
    let mut edits = Vec::new();
    let sym = seq.symbols();
    for i in 0..sym.len().saturating_sub(1) {
        if sym[i].color != sym[i + 1].color {
            if include_switch {
                edits.push(Edit::Switch(i));
            }
        } else {
            edits.push(Edit::Delete(i));
        }
    }
    for pos in 0..=sym.len() {
        for color in [ColorRB::Red, ColorRB::Blue] {
            for first_sign in [Sign::Plus, Sign::Minus] {
                let e = Edit::Insert {
                    pos,
                    color,
                    first_sign,
                };
                if seq.apply_edit(&e).is_ok() {
                    edits.push(e);
                }
            }
        }
    }
    if !sym.is_empty() {
        edits.push(Edit::TransferFirstToEnd);
        edits.push(Edit::TransferLastToFront);
    }
    edits
}

pub fn random_applicable_edit<R: rand::Rng>(
    rng: &mut R,
    seq: &SignSeq,
    include_switch: bool,
) -> Option<Edit> {
    let edits = applicable_edits(seq, include_switch);
    if edits.is_empty() {
        return None;
    }
    Some(edits[rng.random_range(0..edits.len())].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(text: &str) -> SignSeq {
        SignSeq::decode(text).unwrap()
    }

    /// Naive reduction: repeatedly delete the leftmost even-length maximal
    /// run until none remain. Independent of the stack implementation.
    fn naive_reduce(s: &SignSeq) -> Vec<Symbol> {
        let mut symbols: Vec<Symbol> = s.symbols().to_vec();
        loop {
            let mut removed = false;
            let mut i = 0;
            while i < symbols.len() {
                let mut j = i;
                while j < symbols.len() && symbols[j].color == symbols[i].color {
                    j += 1;
                }
                if (j - i) % 2 == 0 {
                    symbols.drain(i..j);
                    removed = true;
                    break;
                }
                i = j;
            }
            if !removed {
                return symbols;
            }
        }
    }

    #[test]
    fn validate_examples() {
        assert!(seq("R+ B-").validate().is_ok());
        // Blue subsequence has even length.
        assert!(seq("R+ B+ B- R- R+").validate().is_err());
        assert!(seq("").validate().is_err());
    }

    #[test]
    fn reduce_examples() {
        // Runs [R1, B2, R2, B1] -> remove B2, merge reds -> [R3, B1].
        let s = seq("R+ B+ B- R- R+ B+");
        let rho = s.reduce();
        assert_eq!(rho.expand(), seq("R+ R- R+ B+"));
        assert_eq!(rho.expand().symbols(), naive_reduce(&s).as_slice());

        let s = seq("R+ B-");
        assert_eq!(s.reduce().expand(), s);

        // Runs [R2, B1, R1] -> [B1, R1].
        let s = seq("R- R+ B+ R-");
        assert_eq!(s.reduce().expand(), seq("B+ R-"));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(seq("R+ B-").trace(), Trace(1));
        assert_eq!(seq("B+ R-").trace(), Trace(0));
        // rho = R+ R- R+ B+, sigma = 2, lambda = 2, trace 0.
        assert_eq!(seq("R+ B+ B- R- R+ B+").trace(), Trace(0));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(seq("R+ B-").reverse(), seq("B+ R-"));
        assert_eq!(seq("R+ B+ R- R+").reverse(), seq("R- R+ B- R-"));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = random_valid(&mut rng, 60);
            assert_eq!(s.reverse().reverse(), s);
        }
    }

    #[test]
    fn edit_examples() {
        // Switch changes the trace.
        let s = seq("R+ B+");
        let switched = s.apply_edit(&Edit::Switch(0)).unwrap();
        assert_eq!(switched, seq("B+ R+"));
        assert_eq!(s.trace(), Trace(0));
        assert_eq!(switched.trace(), Trace(1));

        // Delete at position 1 keeps the trace.
        let s = seq("R+ B+ B- R- R+ B+");
        let deleted = s.apply_edit(&Edit::Delete(1)).unwrap();
        assert_eq!(deleted, seq("R+ R- R+ B+"));
        assert_eq!(deleted.trace(), s.trace());

        // Transfer keeps the trace.
        let s = seq("R+ B+ R- R+");
        let t = s.apply_edit(&Edit::TransferLastToFront).unwrap();
        assert_eq!(t, seq("R- R+ B+ R-"));
        assert_eq!(t.trace(), s.trace());
    }

    #[test]
    fn invalid_edits_rejected() {
        let s = seq("R+ B-");
        assert!(s.apply_edit(&Edit::Switch(5)).is_err());
        assert!(s.apply_edit(&Edit::Delete(0)).is_err());
        // Pair (R-, R+) before the leading R+ breaks alternation.
        assert!(s
            .apply_edit(&Edit::Insert {
                pos: 0,
                color: ColorRB::Red,
                first_sign: Sign::Minus
            })
            .is_err());
        // Pair (R+, R-) there keeps the red subsequence alternating.
        let inserted = s
            .apply_edit(&Edit::Insert {
                pos: 0,
                color: ColorRB::Red,
                first_sign: Sign::Plus,
            })
            .unwrap();
        assert_eq!(inserted, seq("R+ R- R+ B-"));
    }

    #[test]
    fn stack_matches_naive_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let s = random_valid(&mut rng, 80);
            let naive = naive_reduce(&s);
            assert_eq!(s.reduce().expand().symbols(), naive.as_slice());
        }
    }

    #[test]
    fn sigma_in_allowed_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let s = random_valid(&mut rng, 100);
            let sigma = s.reduce().sigma();
            assert!(sigma == -2 || sigma == 0 || sigma == 2, "sigma={sigma}");
        }
    }

    #[test]
    fn trace_invariance_and_reversal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let s = random_valid(&mut rng, 100);
            let t = s.trace();
            assert_ne!(s.reverse().trace(), t);
            if let Some(e) = random_applicable_edit(&mut rng, &s, false) {
                assert_eq!(s.apply_edit(&e).unwrap().trace(), t, "edit {e:?}");
            }
        }
    }

    #[test]
    fn non_switch_edits_never_reach_reverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let s = random_valid(&mut rng, 40);
            let target = s.reverse();
            let mut cur = s.clone();
            for _ in 0..30 {
                match random_applicable_edit(&mut rng, &cur, false) {
                    Some(e) => cur = cur.apply_edit(&e).unwrap(),
                    None => break,
                }
                assert_eq!(cur.trace(), s.trace());
                assert_ne!(cur, target);
            }
        }
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let s = random_valid(&mut rng, 80);
            let rho = s.reduce();
            assert_eq!(rho.expand().reduce(), rho);
        }
    }

    #[test]
    fn encode_decode_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let s = random_valid(&mut rng, 30);
            assert_eq!(SignSeq::decode(&s.encode()).unwrap(), s);
        }
    }
}
