//! Signed permutations: elements `(sign, pi)` of `{+1,-1} x S_N`.
//!
//! Composition is left to right: the image of a point under `a * b` is the
//! image under `b` of its image under `a`. Points are 1-based at every public
//! boundary; storage is 0-based.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    negative: bool,
    images: Vec<u32>,
}

impl SignedPerm {
    pub fn identity(degree: usize) -> Self {
        SignedPerm {
            negative: false,
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 1-based images: `images[i - 1]` is the image of point `i`.
    pub fn from_images(sign: i8, images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(Error::PointOutOfRange { point: p, degree: n });
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::NotBijection(format!("{p} is hit twice")));
            }
            out.push((p - 1) as u32);
        }
        Ok(SignedPerm {
            negative: sign_is_negative(sign)?,
            images: out,
        })
    }

    /// Builds from disjoint cycles of 1-based points.
    pub fn from_cycles(sign: i8, degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(Error::RepeatedPoint(p));
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(SignedPerm {
            negative: sign_is_negative(sign)?,
            images,
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point. The sign plays no role.
    pub fn act(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree() {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        Ok(self.images[point - 1] as usize + 1)
    }

    /// Unchecked 1-based image.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// `self * other` with matching degrees assumed.
    pub(crate) fn then(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.degree(), other.degree());
        SignedPerm {
            negative: self.negative ^ other.negative,
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        SignedPerm {
            negative: self.negative,
            images: inv,
        }
    }

    /// `h^-1 * self * h`.
    pub fn conjugate(&self, h: &SignedPerm) -> Result<SignedPerm> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        // point h(x) goes to h(self(x))
        let mut images = vec![0u32; self.degree()];
        for x in 0..self.degree() {
            images[h.image0(x)] = h.images[self.image0(x)];
        }
        Ok(SignedPerm {
            negative: self.negative,
            images,
        })
    }

    pub fn negated(&self) -> SignedPerm {
        SignedPerm {
            negative: !self.negative,
            images: self.images.clone(),
        }
    }

    pub fn with_sign(mut self, sign: i8) -> Result<SignedPerm> {
        self.negative = sign_is_negative(sign)?;
        Ok(self)
    }

    pub fn is_identity(&self) -> bool {
        !self.negative && self.fixes_all()
    }

    /// True when the permutation part is the identity, whatever the sign.
    pub fn fixes_all(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// True when the 1-based `point` is moved.
    pub fn moves(&self, point: usize) -> bool {
        self.images[point - 1] as usize != point - 1
    }

    pub fn same_points(&self, other: &SignedPerm) -> bool {
        self.images == other.images
    }

    /// Disjoint cycles, each starting at its least point, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image0(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.image0(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths (including fixed points), sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    /// Parses `sign? cycle+` in cycle notation for degree `degree`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<SignedPerm> {
        CycleParser::new(text).parse(degree)
    }

    /// Cycle text, e.g. `-(2,5,6)(4,12,11)`; the identity renders as `+()`.
    pub fn render_cycles(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl Mul for &SignedPerm {
    type Output = SignedPerm;

    /// Panics on degree mismatch; use [`SignedPerm::compose`] for a checked product.
    fn mul(self, rhs: &SignedPerm) -> SignedPerm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

fn sign_is_negative(sign: i8) -> Result<bool> {
    match sign {
        1 => Ok(false),
        -1 => Ok(true),
        s => Err(Error::Precondition(format!("sign must be +1 or -1, got {s}"))),
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> CycleParser<'a> {
    fn new(text: &'a str) -> Self {
        CycleParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::CycleSyntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a point");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.err("point does not fit"), Ok)
    }

    fn parse(mut self, degree: usize) -> Result<SignedPerm> {
        let sign = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            _ => 1,
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            if self.peek() == Some(b')') {
                self.pos += 1;
                cycles.push(cycle);
                continue;
            }
            loop {
                cycle.push(self.number()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ')'"),
                }
            }
            cycles.push(cycle);
        }
        if cycles.is_empty() {
            return self.err("expected '('");
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        if cycles.len() > 1 && cycles.iter().any(Vec::is_empty) {
            return self.err("empty cycle mixed with others");
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        SignedPerm::from_cycles(sign, degree, &refs)
    }
}
