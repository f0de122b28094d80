//! Finite-dimensional involutive (A∞-)algebra data and structure checks.

use crate::graded::{q_int, AlgebraError, GradedSpace, Grading, Q};
use crate::words::{Derivation, Tensor, WSpace};
use num::traits::Zero;
use std::collections::BTreeMap;

/// One structure operation m̂_n as a sparse tensor: entries
/// `(inputs i1..in, output, coefficient)`.
#[derive(Debug, Clone)]
pub struct Operation {
    pub arity: usize,
    pub entries: Vec<(Vec<usize>, usize, Q)>,
}

/// A finite-dimensional graded space with involution, bilinear form and
/// structure operations up to a truncation order.
#[derive(Debug, Clone)]
pub struct InvolutiveAlgebraData {
    pub space: GradedSpace,
    /// involution matrix: ι(v_j) = Σ_i involution[i][j] v_i; columns index
    /// the argument
    pub involution: Vec<Vec<Q>>,
    /// bilinear form ⟨v_i, v_j⟩ and its degree
    pub form: Option<(Vec<Vec<Q>>, i64)>,
    /// operations by arity (m̂_1 is the internal differential if present)
    pub ops: Vec<Operation>,
    /// maximal tensor length used in complexes
    pub truncation: usize,
    pub cyclic: bool,
}

impl InvolutiveAlgebraData {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn op(&self, arity: usize) -> Option<&Operation> {
        self.ops.iter().find(|o| o.arity == arity)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.max_arity() <= 2
    }

    /// Applies m̂_n to a basis tuple.
    pub fn apply_op(&self, args: &[usize]) -> Vec<(usize, Q)> {
        let Some(op) = self.op(args.len()) else {
            return vec![];
        };
        op.entries
            .iter()
            .filter(|(ins, _, _)| ins == args)
            .map(|(_, out, c)| (*out, c.clone()))
            .collect()
    }

    pub fn w_space(&self) -> WSpace {
        WSpace::from_v(
            &self.space,
            Some(&self.involution),
            self.form.as_ref().and_then(|(f, d)| {
                if is_invertible(f) {
                    Some((f, *d))
                } else {
                    None
                }
            }),
        )
    }

    /// The structure operations as a degree-one derivation of the
    /// completed tensor algebra on `Σ⁻¹V*`.
    ///
    /// Each m̂_n dualizes to the component `W -> W^{⊗n}`; the Koszul signs
    /// come from threading the (de)suspensions through the arguments and
    /// from the graded dual pairing.
    pub fn coderivation(&self) -> Derivation {
        let w = self.w_space();
        let dim = self.dim();
        let mut der = Derivation::zero(dim, 1);
        for op in &self.ops {
            let n = op.arity;
            for (ins, out, c) in &op.entries {
                // T: moving each desuspension past the earlier suspended
                // arguments; the l-th factor passes l-1 of them
                let mut t_sign = 0u8;
                for (l, &j) in ins.iter().enumerate() {
                    let p = ((self.space.degrees[j] + 1).rem_euclid(2)) as u8;
                    if l % 2 == 1 {
                        // (n - l) parity toggles only when l odd... use
                        // explicit count below instead
                    }
                    let count = (n - 1 - l) as u8;
                    t_sign ^= (count & 1) & p;
                }
                // dual pairing sign for the word on suspended arguments
                let mut p_sign = 0u8;
                for l in 0..n {
                    let wl = w.parity(ins[l]);
                    let mut prefix = 0u8;
                    for r in 0..l {
                        prefix ^= ((self.space.degrees[ins[r]] + 1).rem_euclid(2)) as u8;
                    }
                    p_sign ^= wl & prefix;
                }
                // degree-one dual: (m w)(x) = (-1)^{|w|} w(m̌ x)
                let k_sign = w.parity(*out);
                let total = t_sign ^ p_sign ^ k_sign;
                let coeff = if total == 1 { -c.clone() } else { c.clone() };
                der.values[*out].add(ins.iter().map(|&i| i as u16).collect(), coeff);
            }
        }
        der
    }
}

fn is_invertible(m: &[Vec<Q>]) -> bool {
    // rank by elimination
    let n = m.len();
    let mut a = m.to_vec();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, p);
        let piv = a[col][col].clone();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &piv;
            for c in col..n {
                let d = &a[col][c] * &f;
                a[r][c] -= d;
            }
        }
    }
    true
}

/// Diagnostic flags of `check_structure`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub a_infinity: bool,
    pub involutive: bool,
    pub cyclic: bool,
    /// first violated relation, if any, as human-readable text
    pub witness: Option<String>,
}

/// Verifies the A∞ relation (m² = 0 on the truncated coalgebra), the
/// involutive sign rule and the cyclic-derivation condition.
pub fn check_structure(a: &InvolutiveAlgebraData) -> StructureReport {
    let mut witness = None;
    let w = a.w_space();
    let m = a.coderivation();
    // m^2 = 0 up to the truncation
    let mut sq = m.commutator(&w, &m);
    sq.truncate(a.truncation.max(2));
    let mut a_infinity = true;
    'outer: for (i, v) in sq.values.iter().enumerate() {
        for (word, c) in &v.terms {
            if !c.is_zero() {
                a_infinity = false;
                witness.get_or_insert(format!(
                    "m² ≠ 0: generator {i} maps to word {word:?} with coefficient {c}"
                ));
                break 'outer;
            }
        }
    }
    // involutive rule on basis tuples:
    // m̂_n(x_1..x_n)* = (-1)^ε (-1)^{n(n+1)/2 - 1} m̂_n(x_n*..x_1*)
    let involutive = check_involutive(a, &mut witness);
    let cyclic = match &a.form {
        Some(_) => check_cyclic(a, &mut witness),
        None => false,
    };
    StructureReport {
        a_infinity,
        involutive,
        cyclic,
        witness,
    }
}

fn iota_apply(a: &InvolutiveAlgebraData, j: usize) -> Vec<(usize, Q)> {
    (0..a.dim())
        .filter(|&i| !a.involution[i][j].is_zero())
        .map(|i| (i, a.involution[i][j].clone()))
        .collect()
}

/// Applies m̂_n to linear combinations of basis vectors.
fn op_on_combos(a: &InvolutiveAlgebraData, args: &[Vec<(usize, Q)>]) -> BTreeMap<usize, Q> {
    let n = args.len();
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mut coeff = q_int(1);
        let mut basis = Vec::with_capacity(n);
        for (k, &i) in idx.iter().enumerate() {
            let (b, c) = &args[k][i];
            basis.push(*b);
            coeff *= c;
        }
        for (out_b, c) in a.apply_op(&basis) {
            let slot = out.entry(out_b).or_insert_with(Q::zero);
            *slot += &coeff * &c;
        }
        for k in (0..n).rev() {
            idx[k] += 1;
            if idx[k] < args[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn check_involutive(a: &InvolutiveAlgebraData, witness: &mut Option<String>) -> bool {
    // sanity: ι² = id
    for j in 0..a.dim() {
        let mut sq: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in iota_apply(a, j) {
            for (k, d) in iota_apply(a, i) {
                *sq.entry(k).or_insert_with(Q::zero) += &c * &d;
            }
        }
        sq.retain(|_, v| !v.is_zero());
        if sq.len() != 1 || sq.get(&j) != Some(&q_int(1)) {
            witness.get_or_insert(format!("ι² ≠ id on basis vector {j}"));
            return false;
        }
    }
    for op in &a.ops {
        let n = op.arity;
        let rule = (n * (n + 1) / 2 + 1) % 2; // parity of the exponent n(n+1)/2 - 1
        let rule_sign = if rule == 0 { 1i64 } else { -1 };
        // iterate over all basis tuples with any nonzero side
        let dim = a.dim();
        let mut tuple = vec![0usize; n];
        'tuples: loop {
            // lhs: (m̂(x))* ; rhs: ±(by Koszul) m̂(x_n*, .., x_1*)
            let lhs_pre = a.apply_op(&tuple);
            let mut lhs: BTreeMap<usize, Q> = BTreeMap::new();
            for (b, c) in lhs_pre {
                for (i, d) in iota_apply(a, b) {
                    *lhs.entry(i).or_insert_with(Q::zero) += &c * &d;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            let mut eps = 0u8;
            for i in 0..n {
                for j in (i + 1)..n {
                    eps ^= a.space.parity(tuple[i]) & a.space.parity(tuple[j]);
                }
            }
            let rev_args: Vec<Vec<(usize, Q)>> =
                tuple.iter().rev().map(|&x| iota_apply(a, x)).collect();
            let mut rhs = op_on_combos(a, &rev_args);
            let s = rule_sign * if eps == 1 { -1 } else { 1 };
            if s == -1 {
                for v in rhs.values_mut() {
                    *v = -v.clone();
                }
            }
            if lhs != rhs {
                witness.get_or_insert(format!(
                    "involutive rule fails for m̂_{n} on tuple {tuple:?}"
                ));
                return false;
            }
            for k in (0..n).rev() {
                tuple[k] += 1;
                if tuple[k] < dim {
                    continue 'tuples;
                }
                tuple[k] = 0;
            }
            break;
        }
    }
    // the form, if present, must satisfy ⟨x*, y*⟩ = ⟨x, y⟩
    if let Some((f, _)) = &a.form {
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let mut lhs = Q::zero();
                for (i, c) in iota_apply(a, x) {
                    for (j, d) in iota_apply(a, y) {
                        lhs += &c * &d * &f[i][j];
                    }
                }
                if lhs != f[x][y] {
                    witness.get_or_insert(format!("⟨x*, y*⟩ ≠ ⟨x, y⟩ at ({x}, {y})"));
                    return false;
                }
            }
        }
    }
    true
}

fn check_cyclic(a: &InvolutiveAlgebraData, witness: &mut Option<String>) -> bool {
    let Some((f, _)) = &a.form else { return false };
    let pair = |combo: &BTreeMap<usize, Q>, y: usize| -> Q {
        combo
            .iter()
            .map(|(&b, c)| c * &f[b][y])
            .fold(Q::zero(), |acc, x| acc + x)
    };
    for op in &a.ops {
        let n = op.arity;
        let dim = a.dim();
        let mut tuple = vec![0usize; n + 1];
        'tuples: loop {
            // ⟨m̂(x_1..x_n), x_{n+1}⟩ = (-1)^ε (-1)^n ⟨m̂(x_{n+1}, x_1,.., x_{n-1}), x_n⟩
            let lhs_combo: BTreeMap<usize, Q> = a
                .apply_op(&tuple[..n])
                .into_iter()
                .fold(BTreeMap::new(), |mut m, (b, c)| {
                    *m.entry(b).or_insert_with(Q::zero) += c;
                    m
                });
            let lhs = pair(&lhs_combo, tuple[n]);
            let mut rot = Vec::with_capacity(n);
            rot.push(tuple[n]);
            rot.extend_from_slice(&tuple[..n - 1]);
            let rhs_combo: BTreeMap<usize, Q> =
                a.apply_op(&rot)
                    .into_iter()
                    .fold(BTreeMap::new(), |mut m, (b, c)| {
                        *m.entry(b).or_insert_with(Q::zero) += c;
                        m
                    });
            let rhs0 = pair(&rhs_combo, tuple[n - 1]);
            let eps = a.space.parity(tuple[n])
                & tuple[..n]
                    .iter()
                    .fold(0u8, |acc, &x| acc ^ a.space.parity(x));
            let mut s = if n % 2 == 1 { -1i64 } else { 1 };
            if eps == 1 {
                s = -s;
            }
            let rhs = if s == -1 { -rhs0 } else { rhs0 };
            if lhs != rhs {
                witness.get_or_insert(format!(
                    "cyclic condition fails for m̂_{n} on tuple {tuple:?}"
                ));
                return false;
            }
            for k in (0..=n).rev() {
                tuple[k] += 1;
                if tuple[k] < dim {
                    continue 'tuples;
                }
                tuple[k] = 0;
            }
            break;
        }
    }
    true
}

/// The group algebra of Z/2 over Q: basis {1, a}, a² = 1, identity
/// involution, form ⟨x, y⟩ = coefficient of 1 in xy.
pub fn group_algebra_z2() -> InvolutiveAlgebraData {
    let id = vec![vec![q_int(1), q_int(0)], vec![q_int(0), q_int(1)]];
    let form = vec![vec![q_int(1), q_int(0)], vec![q_int(0), q_int(1)]];
    let mut entries = Vec::new();
    // 1*1 = 1, 1*a = a, a*1 = a, a*a = 1
    entries.push((vec![0, 0], 0, q_int(1)));
    entries.push((vec![0, 1], 1, q_int(1)));
    entries.push((vec![1, 0], 1, q_int(1)));
    entries.push((vec![1, 1], 0, q_int(1)));
    InvolutiveAlgebraData {
        space: GradedSpace {
            degrees: vec![0, 0],
            grading: Grading::Integer,
        },
        involution: id,
        form: Some((form, 0)),
        ops: vec![Operation { arity: 2, entries }],
        truncation: 6,
        cyclic: true,
    }
}

/// The 2x2 matrix algebra with transpose involution and trace form.
pub fn matrix_algebra_2() -> InvolutiveAlgebraData {
    // basis e11, e12, e21, e22
    let dim = 4;
    let idx = |i: usize, j: usize| -> usize { 2 * i + j };
    let mut entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    if j == k {
                        entries.push((vec![idx(i, j), idx(k, l)], idx(i, l), q_int(1)));
                    }
                }
            }
        }
    }
    // transpose: e_ij -> e_ji
    let mut iota = vec![vec![Q::zero(); dim]; dim];
    for i in 0..2 {
        for j in 0..2 {
            iota[idx(j, i)][idx(i, j)] = q_int(1);
        }
    }
    // ⟨A, B⟩ = tr(AB): ⟨e_ij, e_kl⟩ = δ_jk δ_li
    let mut form = vec![vec![Q::zero(); dim]; dim];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    if j == k && l == i {
                        form[idx(i, j)][idx(k, l)] = q_int(1);
                    }
                }
            }
        }
    }
    InvolutiveAlgebraData {
        space: GradedSpace {
            degrees: vec![0; dim],
            grading: Grading::Integer,
        },
        involution: iota,
        form: Some((form, 0)),
        ops: vec![Operation {
            arity: 2,
            entries,
        }],
        truncation: 6,
        cyclic: true,
    }
}

/// The two-dimensional odd superalgebra: unit 1 (even) and a (odd) with
/// a² = 1, odd form ⟨a, 1⟩ = 1.
pub fn odd_superalgebra() -> InvolutiveAlgebraData {
    let id = vec![vec![q_int(1), q_int(0)], vec![q_int(0), q_int(1)]];
    let form = vec![vec![q_int(0), q_int(1)], vec![q_int(1), q_int(0)]];
    let entries = vec![
        (vec![0, 0], 0, q_int(1)),
        (vec![0, 1], 1, q_int(1)),
        (vec![1, 0], 1, q_int(1)),
        (vec![1, 1], 0, q_int(1)),
    ];
    InvolutiveAlgebraData {
        space: GradedSpace {
            degrees: vec![0, 1],
            grading: Grading::Super,
        },
        involution: id,
        form: Some((form, 1)),
        ops: vec![Operation { arity: 2, entries }],
        truncation: 6,
        cyclic: true,
    }
}

/// Helpers for error construction used by the CLI layers.
pub fn ensure_a_infinity(a: &InvolutiveAlgebraData) -> Result<(), AlgebraError> {
    let r = check_structure(a);
    if !r.a_infinity {
        return Err(AlgebraError::NotAInfinity(r.witness.unwrap_or_default()));
    }
    Ok(())
}

pub fn ensure_involutive(a: &InvolutiveAlgebraData) -> Result<(), AlgebraError> {
    let r = check_structure(a);
    if !r.involutive {
        return Err(AlgebraError::NotInvolutive(r.witness.unwrap_or_default()));
    }
    Ok(())
}
