//! Curved Lie algebras, twisting, the gauge action and the filtration
//! obstruction tower for lifting Maurer–Cartan elements.

use crate::graded::{q_int, AlgebraError, Q};
use mobius_core::linalg::SparseMat;
use num::traits::Zero;
use std::collections::BTreeMap;

/// A finite-dimensional (per filtration level) curved Lie algebra given by
/// structure constants.
///
/// `bracket[(i, j)]` lists `(k, c)` with `[e_i, e_j] = Σ c e_k`; only pairs
/// `i <= j` need to be stored, the rest follow by graded antisymmetry.
#[derive(Debug, Clone)]
pub struct CurvedLieData {
    pub degrees: Vec<i64>,
    pub supergraded: bool,
    pub bracket: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    /// predifferential: d(e_j) = Σ_i d[i][j] e_i (column-major entries)
    pub d: Vec<Vec<Q>>,
    pub curvature: Vec<Q>,
    /// positive filtration weights; F_p is spanned by weights >= p
    pub filtration: Vec<usize>,
    /// computations are exact modulo F_{cap+1}
    pub level_cap: usize,
}

pub type Element = Vec<Q>;

impl CurvedLieData {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        (self.degrees[i].rem_euclid(2)) as u8
    }

    pub fn zero_element(&self) -> Element {
        vec![Q::zero(); self.dim()]
    }

    pub fn degree_of(&self, x: &Element) -> Option<i64> {
        let mut deg = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.degrees[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Truncates away components of filtration weight above the cap.
    pub fn clip(&self, x: &mut Element) {
        for (i, c) in x.iter_mut().enumerate() {
            if self.filtration[i] > self.level_cap {
                *c = Q::zero();
            }
        }
    }

    fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, Q)> {
        if let Some(v) = self.bracket.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.bracket.get(&(j, i)) {
            // [e_i, e_j] = -(-1)^{|i||j|} [e_j, e_i]
            let s = if self.parity(i) & self.parity(j) == 1 {
                q_int(1)
            } else {
                q_int(-1)
            };
            return v.iter().map(|(k, c)| (*k, c * &s)).collect();
        }
        Vec::new()
    }

    pub fn lie(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero_element();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in self.basis_bracket(i, j) {
                    out[k] += a * b * &c;
                }
            }
        }
        self.clip(&mut out);
        out
    }

    pub fn apply_d(&self, x: &Element) -> Element {
        let mut out = self.zero_element();
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.d.iter().enumerate() {
                if !m[j].is_zero() {
                    out[i] += c * &m[j];
                }
            }
        }
        self.clip(&mut out);
        out
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn scale(&self, x: &Element, c: &Q) -> Element {
        x.iter().map(|a| a * c).collect()
    }

    pub fn is_zero_elem(&self, x: &Element) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    /// Verifies every axiom exactly on basis elements.
    pub fn check_curved(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let par = |x: &Element| -> Option<u8> {
            self.degree_of(x).map(|d| (d.rem_euclid(2)) as u8)
        };
        // curvature has degree 2 (even)
        if let Some(d) = self.degree_of(&self.curvature) {
            let expect_even = d.rem_euclid(2) == 0;
            if !expect_even || (!self.supergraded && d != 2) {
                return Err(AlgebraError::WrongDegree(format!(
                    "curvature has degree {d}"
                )));
            }
        }
        // graded antisymmetry (including [x, x] = 0 for even x)
        for i in 0..n {
            for j in 0..n {
                let ei = basis_vec(n, i);
                let ej = basis_vec(n, j);
                let mut lhs = self.lie(&ei, &ej);
                let rhs = self.lie(&ej, &ei);
                let s = if self.parity(i) & self.parity(j) == 1 { 1 } else { -1 };
                for (a, b) in lhs.iter_mut().zip(&rhs) {
                    *a -= b * q_int(s);
                }
                if !self.is_zero_elem(&lhs) {
                    return Err(AlgebraError::JacobiFailure(i, j, j));
                }
            }
        }
        // graded Jacobi on all triples
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ei, ej, ek) = (basis_vec(n, i), basis_vec(n, j), basis_vec(n, k));
                    let lhs = self.lie(&ei, &self.lie(&ej, &ek));
                    let r1 = self.lie(&self.lie(&ei, &ej), &ek);
                    let r2 = self.lie(&ej, &self.lie(&ei, &ek));
                    let s = if self.parity(i) & self.parity(j) == 1 { -1 } else { 1 };
                    let mut diff = lhs.clone();
                    for (a, b) in diff.iter_mut().zip(&r1) {
                        *a -= b;
                    }
                    for (a, b) in diff.iter_mut().zip(&r2) {
                        *a -= b * q_int(s);
                    }
                    if !self.is_zero_elem(&diff) {
                        return Err(AlgebraError::JacobiFailure(i, j, k));
                    }
                }
            }
        }
        // d is a degree-1 derivation
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (basis_vec(n, i), basis_vec(n, j));
                let lhs = self.apply_d(&self.lie(&ei, &ej));
                let r1 = self.lie(&self.apply_d(&ei), &ej);
                let r2 = self.lie(&ei, &self.apply_d(&ej));
                let s = if self.parity(i) == 1 { -1 } else { 1 };
                let mut diff = lhs.clone();
                for (a, b) in diff.iter_mut().zip(&r1) {
                    *a -= b;
                }
                for (a, b) in diff.iter_mut().zip(&r2) {
                    *a -= b * q_int(s);
                }
                if !self.is_zero_elem(&diff) {
                    return Err(AlgebraError::CurvatureAxiomFailure(i * n + j));
                }
            }
        }
        // dΩ = 0 and d²η = [η, Ω]
        if !self.is_zero_elem(&self.apply_d(&self.curvature)) {
            return Err(AlgebraError::CurvatureAxiomFailure(usize::MAX));
        }
        for i in 0..n {
            let ei = basis_vec(n, i);
            let lhs = self.apply_d(&self.apply_d(&ei));
            let rhs = self.lie(&ei, &self.curvature);
            let mut diff = lhs.clone();
            for (a, b) in diff.iter_mut().zip(&rhs) {
                *a -= b;
            }
            if !self.is_zero_elem(&diff) {
                return Err(AlgebraError::CurvatureAxiomFailure(i));
            }
            let _ = par;
        }
        // filtration: [F_p, F_q] ⊆ F_{p+q}, d(F_p) ⊆ F_p, Ω ∈ F_1 when F_1 = g
        for (&(i, j), v) in &self.bracket {
            for (k, c) in v {
                if !c.is_zero() && self.filtration[*k] < self.filtration[i] + self.filtration[j]
                {
                    return Err(AlgebraError::FiltrationLeak(format!(
                        "[e{i}, e{j}] hits e{k}"
                    )));
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                if !self.d[i][j].is_zero() && self.filtration[i] < self.filtration[j] {
                    return Err(AlgebraError::FiltrationLeak(format!("d e{j} hits e{i}")));
                }
            }
        }
        Ok(())
    }

    /// `Ω + dξ + ½[ξ, ξ]` for a degree-1 element.
    pub fn curvature_of(&self, xi: &Element) -> Result<Element, AlgebraError> {
        match self.degree_of(xi) {
            Some(d) if d.rem_euclid(2) != 1 => {
                return Err(AlgebraError::WrongDegree(format!("ξ has degree {d}")))
            }
            _ => {}
        }
        let mut out = self.curvature.clone();
        let dxi = self.apply_d(xi);
        let half = q_int(1) / q_int(2);
        let sq = self.scale(&self.lie(xi, xi), &half);
        for i in 0..self.dim() {
            out[i] += &dxi[i] + &sq[i];
        }
        self.clip(&mut out);
        Ok(out)
    }

    pub fn is_mc(&self, xi: &Element) -> bool {
        self.curvature_of(xi)
            .map(|r| self.is_zero_elem(&r))
            .unwrap_or(false)
    }

    /// Twist by a degree-1 element: same bracket, predifferential
    /// `d + ad_ξ`, curvature `Ω + Ω^ξ`.
    pub fn twist(&self, xi: &Element) -> Result<CurvedLieData, AlgebraError> {
        let n = self.dim();
        let mut out = self.clone();
        out.curvature = self.curvature_of(xi)?;
        for j in 0..n {
            let ej = basis_vec(n, j);
            let ad = self.lie(xi, &ej);
            for i in 0..n {
                out.d[i][j] += &ad[i];
            }
        }
        Ok(out)
    }

    /// Gauge action
    /// `e^y · ξ = ξ + Σ_{n>=1} ad_y^{n-1}(ad_y ξ - dy)/n!`.
    pub fn gauge_act(&self, y: &Element, xi: &Element) -> Result<Element, AlgebraError> {
        match self.degree_of(y) {
            Some(d) if d.rem_euclid(2) != 0 => {
                return Err(AlgebraError::WrongDegree(format!("y has degree {d}")))
            }
            _ => {}
        }
        let mut out = xi.clone();
        let mut term = {
            let mut t = self.lie(y, xi);
            let dy = self.apply_d(y);
            for (a, b) in t.iter_mut().zip(&dy) {
                *a -= b;
            }
            t
        };
        let mut factorial = q_int(1);
        let mut n = 1i64;
        let max_iter = self.dim() * (self.level_cap + 2) + 4;
        for _ in 0..max_iter {
            if self.is_zero_elem(&term) {
                break;
            }
            let scaled = self.scale(&term, &(q_int(1) / factorial.clone()));
            for (a, b) in out.iter_mut().zip(&scaled) {
                *a += b;
            }
            term = self.lie(y, &term);
            n += 1;
            factorial *= q_int(n);
        }
        if !self.is_zero_elem(&term) {
            return Err(AlgebraError::Invalid(
                "gauge action did not terminate (ad_y not nilpotent at the cap)".into(),
            ));
        }
        self.clip(&mut out);
        Ok(out)
    }

    /// Cohomology dimensions of (g, d) per degree; for twisted data this is
    /// the twist-cohomology of the spec.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        let mut degs: Vec<i64> = self.degrees.clone();
        degs.sort();
        degs.dedup();
        let block = |q: i64| -> Vec<usize> {
            (0..self.dim()).filter(|&i| self.degrees[i] == q).collect()
        };
        let mat = |from: &[usize], to: &[usize]| -> SparseMat {
            let pos: BTreeMap<usize, usize> = to.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            let mut m = SparseMat::zero(to.len(), from.len());
            for (jj, &j) in from.iter().enumerate() {
                for i in 0..self.dim() {
                    if !self.d[i][j].is_zero() {
                        if let Some(&p) = pos.get(&i) {
                            m.add_to(p, jj, self.d[i][j].clone());
                        }
                    }
                }
            }
            m
        };
        degs.iter()
            .map(|&q| {
                let here = block(q);
                let up = block(q + 1);
                let down = block(q - 1);
                let dim = here.len() - mat(&here, &up).rank() - mat(&down, &here).rank();
                (q, dim)
            })
            .collect()
    }
}

pub fn basis_vec(n: usize, i: usize) -> Element {
    let mut v = vec![Q::zero(); n];
    v[i] = q_int(1);
    v
}

/// A degree-1 element with its residual curvature.
#[derive(Debug, Clone)]
pub struct MCElement {
    pub xi: Element,
    pub residual: Element,
}

/// Outcome of one obstruction step.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub level: usize,
    /// the obstruction cocycle in C²_{level} = F_level / F_{level+1}
    pub cocycle: Element,
    pub exact: bool,
    /// a primitive η with dη = -cocycle, when exact
    pub witness: Option<Element>,
    /// dimension of the affine space of lifts (kernel of d on the
    /// degree-1 block)
    pub solution_space_dim: usize,
}

/// Computes the level-(n+1) obstruction for ξ, Maurer–Cartan modulo
/// F_{n+1}, and solves for a lift when the class vanishes.
///
/// Requires F_1 to be the whole algebra (all weights >= 1).
pub fn lift_step(g: &CurvedLieData, xi: &Element, level: usize) -> Result<ObstructionReport, AlgebraError> {
    let n = g.dim();
    // ξ must be MC modulo F_{level+1}
    let res = g.curvature_of(xi)?;
    for i in 0..n {
        if !res[i].is_zero() && g.filtration[i] <= level {
            return Err(AlgebraError::NotMCAtLevel(level));
        }
    }
    // the obstruction cocycle: the weight-(level+1) part of the residual
    let mut cocycle = g.zero_element();
    for i in 0..n {
        if g.filtration[i] == level + 1 {
            cocycle[i] = res[i].clone();
        }
    }
    // graded piece C_{level+1} with differential d (projected)
    let indices: Vec<usize> = (0..n).filter(|&i| g.filtration[i] == level + 1).collect();
    let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let par = |i: usize| g.parity(i);
    let deg1: Vec<usize> = indices.iter().copied().filter(|&i| par(i) == 1).collect();
    let deg2: Vec<usize> = indices.iter().copied().filter(|&i| par(i) == 0).collect();
    let _ = pos;
    // d restricted: C^1 -> C^2 within the graded piece
    let mut m = SparseMat::zero(deg2.len(), deg1.len());
    for (jj, &j) in deg1.iter().enumerate() {
        for (ii, &i) in deg2.iter().enumerate() {
            if !g.d[i][j].is_zero() {
                m.add_to(ii, jj, g.d[i][j].clone());
            }
        }
    }
    // cocycle check: d(cocycle) = 0 in the graded piece
    {
        let dc = g.apply_d(&cocycle);
        for i in 0..n {
            if g.filtration[i] == level + 1 && !dc[i].is_zero() {
                return Err(AlgebraError::Invalid(format!(
                    "obstruction at level {} is not a cocycle",
                    level + 1
                )));
            }
        }
    }
    let rhs: Vec<Q> = deg2.iter().map(|&i| -cocycle[i].clone()).collect();
    let witness_col = m.solve(&rhs);
    let exact = witness_col.is_some();
    let witness = witness_col.map(|col| {
        let mut eta = g.zero_element();
        for (jj, &j) in deg1.iter().enumerate() {
            eta[j] = col[jj].clone();
        }
        eta
    });
    let solution_space_dim = deg1.len() - m.rank();
    Ok(ObstructionReport {
        level: level + 1,
        cocycle,
        exact,
        witness,
        solution_space_dim,
    })
}

/// Iterates `lift_step` from a level-1 Maurer–Cartan element; returns the
/// lifted element modulo `F_{levels+1}` or the first failing report.
pub fn lift_tower(
    g: &CurvedLieData,
    xi1: &Element,
    levels: usize,
) -> Result<Result<Element, ObstructionReport>, AlgebraError> {
    let mut xi = xi1.clone();
    for level in 1..=levels {
        let report = lift_step(g, &xi, level)?;
        if !report.exact {
            return Ok(Err(report));
        }
        if let Some(eta) = &report.witness {
            xi = g.add(&xi, eta);
        }
    }
    Ok(Ok(xi))
}
