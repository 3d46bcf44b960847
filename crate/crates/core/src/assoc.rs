//! Binary associations: full binary trees with ordered, positional leaves.
//!
//! An [`Assoc`] with `n` leaves is an object of the Catalan groupoid on `n`
//! letters. Leaves carry no labels; the canonical encoding names them
//! `A`, `B`, `C`, ... from left to right and always keeps the outer
//! parentheses, e.g. `((AB)C)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letters used by the canonical encoding, in leaf order.
const LETTERS: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Largest leaf count the canonical encoding can name.
pub const MAX_ENCODABLE_LEAVES: usize = LETTERS.len();

/// A full binary tree. `Node` sorts before `Leaf`, which makes the derived
/// ordering coincide with lexicographic order on canonical encodings
/// (`(` sorts before every letter and encodings are prefix-free).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assoc {
    Node(Box<Assoc>, Box<Assoc>),
    Leaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    L,
    R,
}

/// A root-to-node path.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Address(pub Vec<Step>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn child(&self, step: Step) -> Self {
        let mut path = self.0.clone();
        path.push(step);
        Address(path)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, tail: &Address) -> Self {
        let mut path = self.0.clone();
        path.extend_from_slice(&tail.0);
        Address(path)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{:?}", s)?;
        }
        write!(f, "]")
    }
}

/// Accepts the display form `[L,R]` as well as bare `LR`; `[]` and the
/// empty string are the root.
impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                'L' | 'l' => steps.push(Step::L),
                'R' | 'r' => steps.push(Step::R),
                '[' | ']' | ',' | ' ' => {}
                _ => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("unexpected {c:?} in address"),
                    })
                }
            }
        }
        Ok(Address(steps))
    }
}

impl From<Vec<Step>> for Address {
    fn from(v: Vec<Step>) -> Self {
        Address(v)
    }
}

impl Assoc {
    pub fn leaf() -> Self {
        Assoc::Leaf
    }

    pub fn node(left: Assoc, right: Assoc) -> Self {
        Assoc::Node(Box::new(left), Box::new(right))
    }

    /// `(((AB)C)D)...`: every node's right child is a leaf. Every move
    /// sequence eventually ends here.
    pub fn left_comb(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(Assoc::Leaf, |acc, _| Assoc::node(acc, Assoc::Leaf))
    }

    /// `(A(B(C...)))`: every node's left child is a leaf.
    pub fn right_comb(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(Assoc::Leaf, |acc, _| Assoc::node(Assoc::Leaf, acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Assoc::Leaf)
    }

    pub fn children(&self) -> Option<(&Assoc, &Assoc)> {
        match self {
            Assoc::Node(l, r) => Some((l, r)),
            Assoc::Leaf => None,
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Assoc::Leaf => 1,
            Assoc::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Assoc::Leaf => 0,
            Assoc::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// Canonical string: `enc(leaf) = letter`, `enc(node) = "(" enc(l) enc(r) ")"`.
    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(3 * self.leaves());
        let mut next = 0usize;
        self.encode_into(&mut out, &mut next);
        out
    }

    fn encode_into(&self, out: &mut String, next: &mut usize) {
        match self {
            Assoc::Leaf => {
                let c = LETTERS.get(*next).copied().unwrap_or(b'?');
                out.push(c as char);
                *next += 1;
            }
            Assoc::Node(l, r) => {
                out.push('(');
                l.encode_into(out, next);
                r.encode_into(out, next);
                out.push(')');
            }
        }
    }

    /// Strict inverse of [`Assoc::encode`]: letters must be `A`, `B`, ... in order.
    pub fn decode(s: &str) -> Result<Self> {
        Parser::new(s, true).parse()
    }

    /// Lenient parse that accepts any letters and ignores their names.
    /// Useful for components written with their own lettering, e.g. `D` or `(EF)`.
    /// Square brackets group like parentheses and the outermost pair may be
    /// omitted, so `A[[BC]D]` reads as `(A((BC)D))`.
    pub fn decode_shape(s: &str) -> Result<Self> {
        Parser::new(s, false).parse()
    }

    pub fn subtree_at(&self, addr: &Address) -> Result<&Assoc> {
        let mut cur = self;
        for step in addr.steps() {
            cur = match (cur, step) {
                (Assoc::Node(l, _), Step::L) => l,
                (Assoc::Node(_, r), Step::R) => r,
                (Assoc::Leaf, _) => return Err(self.address_error(addr)),
            };
        }
        Ok(cur)
    }

    pub fn replace_at(&self, addr: &Address, replacement: Assoc) -> Result<Assoc> {
        fn go(t: &Assoc, steps: &[Step], rep: Assoc) -> Option<Assoc> {
            match steps.split_first() {
                None => Some(rep),
                Some((step, rest)) => match t {
                    Assoc::Leaf => None,
                    Assoc::Node(l, r) => match step {
                        Step::L => Some(Assoc::node(go(l, rest, rep)?, (**r).clone())),
                        Step::R => Some(Assoc::node((**l).clone(), go(r, rest, rep)?)),
                    },
                },
            }
        }
        go(self, addr.steps(), replacement).ok_or_else(|| self.address_error(addr))
    }

    pub(crate) fn address_error(&self, addr: &Address) -> Error {
        Error::Address {
            address: addr.to_string(),
            tree: self.encode(),
        }
    }

    /// Addresses of the leaves, left to right.
    pub fn leaf_addresses(&self) -> Vec<Address> {
        fn go(t: &Assoc, path: &mut Vec<Step>, out: &mut Vec<Address>) {
            match t {
                Assoc::Leaf => out.push(Address(path.clone())),
                Assoc::Node(l, r) => {
                    path.push(Step::L);
                    go(l, path, out);
                    path.pop();
                    path.push(Step::R);
                    go(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaves());
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Addresses of internal nodes in preorder.
    pub fn internal_addresses(&self) -> Vec<Address> {
        fn go(t: &Assoc, path: &mut Vec<Step>, out: &mut Vec<Address>) {
            if let Assoc::Node(l, r) = t {
                out.push(Address(path.clone()));
                path.push(Step::L);
                go(l, path, out);
                path.pop();
                path.push(Step::R);
                go(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Assoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Assoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assoc({})", self.encode())
    }
}

impl FromStr for Assoc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Assoc::decode(s)
    }
}

impl Serialize for Assoc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Assoc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Assoc::decode(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    next_letter: usize,
    strict: bool,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, strict: bool) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
            next_letter: 0,
            strict,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<Assoc> {
        let mut t = self.term()?;
        if !self.strict && self.pos < self.bytes.len() {
            // outer parentheses may be dropped: `A(BC)`
            t = Assoc::node(t, self.term()?);
        }
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input"));
        }
        Ok(t)
    }

    fn term(&mut self) -> Result<Assoc> {
        match self.bytes.get(self.pos) {
            None => Err(self.err("unexpected end of input")),
            Some(&open @ (b'(' | b'[')) if open == b'(' || !self.strict => {
                let close = if open == b'(' { b')' } else { b']' };
                self.pos += 1;
                let l = self.term()?;
                let r = self.term()?;
                match self.bytes.get(self.pos) {
                    Some(&c) if c == close => {
                        self.pos += 1;
                        Ok(Assoc::node(l, r))
                    }
                    None => Err(self.err(format!(
                        "unbalanced parentheses: expected '{}'",
                        close as char
                    ))),
                    Some(c) => Err(self.err(format!(
                        "expected '{}', found '{}'",
                        close as char, *c as char
                    ))),
                }
            }
            Some(&c) if c.is_ascii_alphabetic() => {
                if self.strict {
                    let expected = LETTERS.get(self.next_letter).copied();
                    if expected != Some(c) {
                        return Err(self.err(format!(
                            "letter '{}' out of order (expected '{}')",
                            c as char,
                            expected.map(|e| e as char).unwrap_or('?')
                        )));
                    }
                }
                self.next_letter += 1;
                self.pos += 1;
                Ok(Assoc::Leaf)
            }
            Some(&c) => Err(self.err(format!("unexpected character '{}'", c as char))),
        }
    }
}

/// Number of associations of `n` letters: `binom(2n-2, n-1) / n`.
pub fn catalan(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("catalan(n) requires n >= 1"));
    }
    // c_{m+1} = c_m * 2(2m+1)/(m+2), exact at every step
    let mut c: u128 = 1;
    for m in 0..(n as u128 - 1) {
        c = c * 2 * (2 * m + 1) / (m + 2);
    }
    u64::try_from(c).map_err(|_| Error::domain(format!("catalan({n}) overflows u64")))
}

/// All associations of `n` letters, sorted by canonical encoding.
pub fn enumerate_assocs(n: usize) -> Result<Vec<Assoc>> {
    if n == 0 {
        return Err(Error::domain("enumerate_assocs(n) requires n >= 1"));
    }
    let mut memo: HashMap<usize, Vec<Assoc>> = HashMap::new();
    let mut all = enumerate_memo(n, &mut memo);
    all.sort();
    Ok(all)
}

fn enumerate_memo(n: usize, memo: &mut HashMap<usize, Vec<Assoc>>) -> Vec<Assoc> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let out = if n == 1 {
        vec![Assoc::Leaf]
    } else {
        let mut out = Vec::new();
        for a in 1..n {
            let lefts = enumerate_memo(a, memo);
            let rights = enumerate_memo(n - a, memo);
            for l in &lefts {
                for r in &rights {
                    out.push(Assoc::node(l.clone(), r.clone()));
                }
            }
        }
        out
    };
    memo.insert(n, out.clone());
    out
}

/// Operadic substitution on objects: replace the i-th leaf of `f` by `gs[i]`.
pub fn graft_object(f: &Assoc, gs: &[Assoc]) -> Result<Assoc> {
    let n = f.leaves();
    if gs.len() != n {
        return Err(Error::domain(format!(
            "arity mismatch: tree has {n} leaves but {} components were supplied",
            gs.len()
        )));
    }
    fn go<'a>(t: &Assoc, gs: &mut impl Iterator<Item = &'a Assoc>) -> Assoc {
        match t {
            Assoc::Leaf => gs.next().expect("length checked").clone(),
            Assoc::Node(l, r) => {
                let l = go(l, gs);
                let r = go(r, gs);
                Assoc::node(l, r)
            }
        }
    }
    Ok(go(f, &mut gs.iter()))
}

/// An ordered partition `t = m_1 + ... + m_k` with every part positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        Ok(Partition(parts))
    }

    /// The all-ones partition of `k`.
    pub fn ones(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Block `i` as a half-open index range into `0..total`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.0[..i].iter().sum();
        start..start + self.0[i]
    }

    /// All ordered partitions of `n` into exactly `k` positive parts,
    /// lexicographic in the part sequence.
    pub fn compositions(n: usize, k: usize) -> Vec<Partition> {
        fn go(rem: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if k == 0 {
                if rem == 0 {
                    out.push(Partition(cur.clone()));
                }
                return;
            }
            if rem < k {
                return;
            }
            for m in 1..=(rem - (k - 1)) {
                cur.push(m);
                go(rem - m, k - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k >= 1 {
            go(n, k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}
