//! Tensor words over the shifted dual generators and the derivation
//! calculus of the completed tensor algebra.
//!
//! The generators w_1..w_D span `W = Σ⁻¹V*`; a word is a sequence of
//! generator indices, and linear combinations carry rational coefficients.
//! All signs are Koszul signs computed from generator parities.

use crate::graded::{q_int, GradedSpace, Grading, Q};
use num::traits::Zero;
use std::collections::BTreeMap;

pub type Word = Vec<u16>;

/// A finite rational linear combination of tensor words.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Tensor {
    pub terms: BTreeMap<Word, Q>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn single(word: Word, coeff: Q) -> Self {
        let mut t = Tensor::zero();
        t.add(word, coeff);
        t
    }

    pub fn add(&mut self, word: Word, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_tensor(&mut self, other: &Tensor) {
        for (w, c) in &other.terms {
            self.add(w.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.terms.clear();
        } else {
            for v in self.terms.values_mut() {
                *v *= c;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The generator data of `W = Σ⁻¹V*`: degrees, the involution matrix on W,
/// and the inverse form on W when one is available.
#[derive(Debug, Clone)]
pub struct WSpace {
    /// degree of each w_i
    pub degrees: Vec<i64>,
    pub grading: Grading,
    /// involution on W as a sparse matrix: star[i] = list of (j, coeff)
    /// with w_i* = Σ coeff · w_j
    pub star: Option<Vec<Vec<(usize, Q)>>>,
    /// inverse form B(w_i, w_j), when the form on V is nondegenerate
    pub inv_form: Option<Vec<Vec<Q>>>,
}

impl WSpace {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        (self.degrees[i].rem_euclid(2)) as u8
    }

    pub fn word_parity(&self, w: &[u16]) -> u8 {
        w.iter().fold(0u8, |a, &i| a ^ self.parity(i as usize))
    }

    pub fn word_degree(&self, w: &[u16]) -> i64 {
        let d: i64 = w.iter().map(|&i| self.degrees[i as usize]).sum();
        match self.grading {
            Grading::Integer => d,
            Grading::Super => d.rem_euclid(2),
        }
    }

    /// Builds the generator space from the underlying `V` data.
    ///
    /// `|w_i| = 1 - |v_i|` (cohomological) or `|v_i| + 1` mod 2 (super);
    /// the involution picks up a minus sign from dualizing,
    /// `w_i* = -Σ_j ι_{ij} w_j`.
    pub fn from_v(space: &GradedSpace, involution: Option<&Vec<Vec<Q>>>, form: Option<(&Vec<Vec<Q>>, i64)>) -> WSpace {
        let degrees: Vec<i64> = space
            .degrees
            .iter()
            .map(|&d| match space.grading {
                Grading::Integer => 1 - d,
                Grading::Super => (d + 1).rem_euclid(2),
            })
            .collect();
        let star = involution.map(|iota| {
            (0..space.dim())
                .map(|i| {
                    (0..space.dim())
                        .filter(|&j| !iota[i][j].is_zero())
                        .map(|j| (j, -iota[i][j].clone()))
                        .collect()
                })
                .collect()
        });
        let inv_form = form.map(|(f, _deg)| invert_matrix(f).expect("nondegenerate form"));
        WSpace {
            degrees,
            grading: space.grading,
            star,
            inv_form,
        }
    }

    /// Koszul sign for cyclically rotating the last letter to the front.
    pub fn rotate(&self, w: &[u16]) -> (Word, i64) {
        let n = w.len();
        let last = w[n - 1] as usize;
        let rest: u8 = w[..n - 1]
            .iter()
            .fold(0u8, |a, &i| a ^ self.parity(i as usize));
        let sign = if self.parity(last) & rest == 1 { -1 } else { 1 };
        let mut out = Vec::with_capacity(n);
        out.push(w[n - 1]);
        out.extend_from_slice(&w[..n - 1]);
        (out, sign)
    }

    /// The tensor involution: reverse the word, star each letter, with the
    /// Koszul sign of the reversal.
    pub fn word_star(&self, w: &[u16]) -> Tensor {
        let star = self.star.as_ref().expect("involution present");
        // reversal Koszul sign: product over pairs i < j of parities
        let mut eps = 0u8;
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                eps ^= self.parity(w[i] as usize) & self.parity(w[j] as usize);
            }
        }
        let mut out = Tensor::single(Vec::new(), if eps == 1 { q_int(-1) } else { q_int(1) });
        for &letter in w.iter().rev() {
            let mut next = Tensor::zero();
            for (word, coeff) in &out.terms {
                for (j, c) in &star[letter as usize] {
                    let mut nw = word.clone();
                    nw.push(*j as u16);
                    next.add(nw, coeff * c);
                }
            }
            out = next;
        }
        out
    }

    pub fn tensor_star(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &t.terms {
            let mut s = self.word_star(w);
            s.scale(c);
            out.add_tensor(&s);
        }
        out
    }
}

fn invert_matrix(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q_int(1) } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d = &a[col][c] * &f;
                a[r][c] -= d;
                let d = &inv[col][c] * &f;
                inv[r][c] -= d;
            }
        }
    }
    Some(inv)
}

/// A continuous derivation of the completed tensor algebra, determined by
/// its value on each generator.
#[derive(Debug, Clone)]
pub struct Derivation {
    /// parity of the derivation (1 for a differential)
    pub parity: u8,
    /// value on each generator
    pub values: Vec<Tensor>,
}

impl Derivation {
    pub fn zero(dim: usize, parity: u8) -> Self {
        Derivation {
            parity,
            values: vec![Tensor::zero(); dim],
        }
    }

    /// Derivation action on a word: sum over letters with Koszul prefixes.
    pub fn apply_word(&self, space: &WSpace, w: &[u16]) -> Tensor {
        let mut out = Tensor::zero();
        for (pos, &letter) in w.iter().enumerate() {
            let prefix: u8 = w[..pos]
                .iter()
                .fold(0u8, |a, &i| a ^ space.parity(i as usize));
            let sign = if self.parity & prefix == 1 { q_int(-1) } else { q_int(1) };
            for (val, coeff) in &self.values[letter as usize].terms {
                let mut nw = Vec::with_capacity(w.len() + val.len() - 1);
                nw.extend_from_slice(&w[..pos]);
                nw.extend_from_slice(val);
                nw.extend_from_slice(&w[pos + 1..]);
                out.add(nw, coeff * &sign);
            }
        }
        out
    }

    pub fn apply(&self, space: &WSpace, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &t.terms {
            let mut a = self.apply_word(space, w);
            a.scale(c);
            out.add_tensor(&a);
        }
        out
    }

    /// Graded commutator `[self, other]` as a derivation.
    pub fn commutator(&self, space: &WSpace, other: &Derivation) -> Derivation {
        let dim = self.values.len();
        let mut out = Derivation::zero(dim, self.parity ^ other.parity);
        let sign = if self.parity & other.parity == 1 { q_int(-1) } else { q_int(1) };
        for i in 0..dim {
            let mut v = self.apply(space, &other.values[i]);
            let mut u = other.apply(space, &self.values[i]);
            u.scale(&sign);
            for (w, c) in u.terms {
                v.add(w, -c);
            }
            out.values[i] = v;
        }
        out
    }

    /// Star-conjugate derivation: `ξ*(x) = ξ(x*)*` on generators.
    pub fn star(&self, space: &WSpace) -> Derivation {
        let star = space.star.as_ref().expect("involution present");
        let dim = self.values.len();
        let mut out = Derivation::zero(dim, self.parity);
        for i in 0..dim {
            // evaluate ξ on w_i* then star the result
            let mut acc = Tensor::zero();
            for (j, c) in &star[i] {
                let mut v = self.values[*j].clone();
                v.scale(c);
                acc.add_tensor(&v);
            }
            out.values[i] = space.tensor_star(&acc);
        }
        out
    }

    /// Truncates every value to words of length at most `max_len`.
    pub fn truncate(&mut self, max_len: usize) {
        for v in &mut self.values {
            v.terms.retain(|w, _| w.len() <= max_len);
        }
    }

    pub fn is_zero_up_to(&self, max_len: usize) -> bool {
        self.values
            .iter()
            .all(|v| v.terms.iter().all(|(w, c)| w.len() > max_len || c.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w_even_odd() -> WSpace {
        WSpace {
            degrees: vec![0, 1],
            grading: Grading::Integer,
            star: None,
            inv_form: None,
        }
    }

    #[test]
    fn rotation_sign() {
        let s = w_even_odd();
        // rotate (odd, odd): sign -1
        let (w, sign) = s.rotate(&[1, 1]);
        assert_eq!(w, vec![1, 1]);
        assert_eq!(sign, -1);
        let (w, sign) = s.rotate(&[0, 1]);
        assert_eq!(w, vec![1, 0]);
        assert_eq!(sign, 1);
    }

    #[test]
    fn derivation_leibniz() {
        let s = w_even_odd();
        let mut d = Derivation::zero(2, 1);
        // d(w0) = w1 w1, d(w1) = 0
        d.values[0] = Tensor::single(vec![1, 1], q_int(1));
        let out = d.apply_word(&s, &[0, 0]);
        // d(w0 w0) = d(w0) w0 + w0 d(w0): both terms positive (w0 even)
        assert_eq!(out.terms.len(), 2);
        let out = d.apply_word(&s, &[1, 0]);
        // passing the odd letter w1 flips the sign of the second summand
        assert_eq!(out.terms.get(&vec![1, 1, 1]).cloned(), Some(q_int(-1)));
    }
}
