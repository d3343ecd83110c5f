//! Exchange matrices, y-seed mutation (numeric and tropical), tropical
//! sign-sequences, and period checking.
//!
//! All indices in this module are 0-based. External formats (seed files, the
//! CLI) are 1-based and convert at the boundary; see [`crate::seedspec`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[a]_+ = max(a, 0)`.
#[inline]
pub fn pos(a: i64) -> i64 {
    a.max(0)
}

/// A skew-symmetric integer matrix `B = (b_ij)` over the index set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        let m = Self { n, entries };
        for i in 0..n {
            for j in i..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: k + 1, rank: self.n })
        }
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_index(k)?;
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    pos(-bik)
                        .checked_mul(bkj)
                        .and_then(|a| bik.checked_mul(pos(bkj)).and_then(|b| a.checked_add(b)))
                        .and_then(|d| self.get(i, j).checked_add(d))
                        .ok_or(Error::Overflow("matrix mutation"))?
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// The matrix `B'` with `B'[nu(i)][nu(j)] = B[i][j]`.
    pub fn relabeled(&self, nu: &[usize]) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(nu[i], nu[j], self.get(i, j));
            }
        }
        out
    }

    /// `alpha^T B beta`.
    pub fn pairing(&self, alpha: &[i64], beta: &[i64]) -> Result<i64> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alpha.len() });
        }
        if beta.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: beta.len() });
        }
        Ok(self.pairing_unchecked(alpha, beta))
    }

    #[inline]
    pub(crate) fn pairing_unchecked(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            let mut s = 0;
            for (bij, &bj) in row.iter().zip(beta) {
                s += bij * bj;
            }
            acc += a * s;
        }
        acc
    }
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.rows()
    }
}

pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    b.mutate(k)
}

/// Principal extension: the `2n x 2n` matrix with `B` on the original block,
/// `+1` at `(j', j)` and `-1` at `(i, i')`, where `i' = i + n`.
pub fn principal_extension(b: &ExchangeMatrix) -> ExchangeMatrix {
    let n = b.rank();
    let mut out = ExchangeMatrix::zero(2 * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, b.get(i, j));
        }
        out.set(i + n, i, 1);
        out.set(i, i + n, -1);
    }
    out
}

/// A positive real y-seed.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSeed {
    pub matrix: ExchangeMatrix,
    pub y: Vec<f64>,
}

impl NumericSeed {
    pub fn new(matrix: ExchangeMatrix, y: Vec<f64>) -> Result<Self> {
        if y.len() != matrix.rank() {
            return Err(Error::DimensionMismatch { expected: matrix.rank(), found: y.len() });
        }
        check_positive(&y)?;
        Ok(Self { matrix, y })
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        mutate_y_numeric(self, k)
    }
}

fn check_positive(y: &[f64]) -> Result<()> {
    for (index, &value) in y.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositive { index: index + 1, value });
        }
    }
    Ok(())
}

/// Exchange relation of y-variables, in the `[b'_ki]_+`, `(1 + y'_k)` form.
pub fn mutate_y_numeric(s: &NumericSeed, k: usize) -> Result<NumericSeed> {
    s.matrix.check_index(k)?;
    check_positive(&s.y)?;
    let y = exchange_y(&s.matrix, &s.y, k);
    Ok(NumericSeed { matrix: s.matrix.mutate(k)?, y })
}

pub(crate) fn exchange_y(b: &ExchangeMatrix, y: &[f64], k: usize) -> Vec<f64> {
    let yk = y[k];
    (0..y.len())
        .map(|i| {
            if i == k {
                yk.recip()
            } else {
                let bki = b.get(k, i);
                y[i] * yk.powi(pos(bki) as i32) * (1.0 + yk).powi(-bki as i32)
            }
        })
        .collect()
}

/// The second displayed form of the exchange relation, with `[-b'_ki]_+` and
/// `(1 + y'_k^{-1})`.
pub fn exchange_y_alternate(b: &ExchangeMatrix, y: &[f64], k: usize) -> Vec<f64> {
    let yk = y[k];
    (0..y.len())
        .map(|i| {
            if i == k {
                yk.recip()
            } else {
                let bki = b.get(k, i);
                y[i] * yk.powi(pos(-bki) as i32) * (1.0 + yk.recip()).powi(-bki as i32)
            }
        })
        .collect()
}

/// Runs the numeric y-seed along `sequence`, returning all `L + 1` seeds.
pub fn numeric_trajectory(
    b: &ExchangeMatrix,
    y0: &[f64],
    sequence: &[usize],
) -> Result<Vec<NumericSeed>> {
    let mut seeds = Vec::with_capacity(sequence.len() + 1);
    seeds.push(NumericSeed::new(b.clone(), y0.to_vec())?);
    for &k in sequence {
        let next = seeds.last().expect("nonempty").mutate(k)?;
        seeds.push(next);
    }
    Ok(seeds)
}

/// Tropical sign of a c-vector: `+1` if all entries are `>= 0`, `-1` if all are `<= 0`.
pub fn tropical_sign(c: &[i64]) -> Result<i8> {
    let has_pos = c.iter().any(|&x| x > 0);
    let has_neg = c.iter().any(|&x| x < 0);
    match (has_pos, has_neg) {
        (true, true) => Err(Error::MixedSignCVector(c.to_vec())),
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        (false, false) => Err(Error::ZeroCVector),
    }
}

/// Tropical y-seed: the exchange matrix together with the c-vectors of all
/// tropical y-variables, stored column-wise (`cvectors[i]` is the exponent
/// vector of `[y_i]` in the initial `y`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalState {
    pub matrix: ExchangeMatrix,
    pub cvectors: Vec<Vec<i64>>,
}

impl TropicalState {
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let n = matrix.rank();
        let cvectors = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Self { matrix, cvectors }
    }

    pub fn sign(&self, k: usize) -> Result<i8> {
        self.matrix.check_index(k)?;
        tropical_sign(&self.cvectors[k])
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        mutate_tropical(self, k)
    }

    /// If every c-vector is a standard unit vector, returns the permutation
    /// `nu` with `cvectors[nu(i)] = e_i`.
    pub fn unit_permutation(&self) -> Option<Vec<usize>> {
        let n = self.matrix.rank();
        let mut nu = vec![usize::MAX; n];
        for (col, c) in self.cvectors.iter().enumerate() {
            let mut hit = None;
            for (row, &v) in c.iter().enumerate() {
                match v {
                    0 => {}
                    1 if hit.is_none() => hit = Some(row),
                    _ => return None,
                }
            }
            let row = hit?;
            if nu[row] != usize::MAX {
                return None;
            }
            nu[row] = col;
        }
        Some(nu)
    }
}

/// Tropical exchange relation.
pub fn mutate_tropical(t: &TropicalState, k: usize) -> Result<TropicalState> {
    let eps = t.sign(k)?;
    let ck = t.cvectors[k].clone();
    let n = t.matrix.rank();
    let mut cvectors = t.cvectors.clone();
    for i in 0..n {
        if i == k {
            cvectors[i] = ck.iter().map(|&x| -x).collect();
        } else {
            let m = pos(eps as i64 * t.matrix.get(k, i));
            if m != 0 {
                for (c, &a) in cvectors[i].iter_mut().zip(&ck) {
                    *c = m
                        .checked_mul(a)
                        .and_then(|d| c.checked_add(d))
                        .ok_or(Error::Overflow("tropical mutation"))?;
                }
            }
        }
    }
    Ok(TropicalState { matrix: t.matrix.mutate(k)?, cvectors })
}

/// A mutation sequence `(k_1, ..., k_L)` together with the relabeling `nu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MutationSchedule {
    pub sequence: Vec<usize>,
    pub nu: Vec<usize>,
}

impl MutationSchedule {
    pub fn new(sequence: Vec<usize>, nu: Vec<usize>, rank: usize) -> Result<Self> {
        if let Some(&k) = sequence.iter().find(|&&k| k >= rank) {
            return Err(Error::IndexOutOfRange { index: k + 1, rank });
        }
        if nu.len() != rank {
            return Err(Error::InvalidSchedule(format!(
                "nu has {} entries for rank {rank}",
                nu.len()
            )));
        }
        let mut seen = vec![false; rank];
        for &v in &nu {
            if v >= rank || seen[v] {
                return Err(Error::InvalidSchedule(format!("nu {nu:?} is not a bijection")));
            }
            seen[v] = true;
        }
        Ok(Self { sequence, nu })
    }

    pub fn with_identity(sequence: Vec<usize>, rank: usize) -> Result<Self> {
        Self::new(sequence, (0..rank).collect(), rank)
    }

    /// Builds a schedule from 1-based indices.
    pub fn from_one_based(sequence: &[usize], nu: &[usize], rank: usize) -> Result<Self> {
        let shift = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&k| {
                    if k == 0 || k > rank {
                        Err(Error::IndexOutOfRange { index: k, rank })
                    } else {
                        Ok(k - 1)
                    }
                })
                .collect()
        };
        Self::new(shift(sequence)?, shift(nu)?, rank)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.nu.len()
    }

    /// Same sequence on a larger index set, with `nu` extended by the identity.
    pub fn extended(&self, rank: usize) -> Result<Self> {
        let mut nu = self.nu.clone();
        nu.extend(self.rank()..rank);
        Self::new(self.sequence.clone(), nu, rank)
    }

    /// The first `len` mutations, with identity relabeling.
    pub fn prefix(&self, len: usize) -> Self {
        Self {
            sequence: self.sequence[..len.min(self.len())].to_vec(),
            nu: (0..self.rank()).collect(),
        }
    }

    pub fn sequence_one_based(&self) -> Vec<usize> {
        self.sequence.iter().map(|k| k + 1).collect()
    }

    pub fn nu_one_based(&self) -> Vec<usize> {
        self.nu.iter().map(|k| k + 1).collect()
    }

    fn check_against(&self, b: &ExchangeMatrix) -> Result<()> {
        if self.rank() != b.rank() {
            return Err(Error::DimensionMismatch { expected: b.rank(), found: self.rank() });
        }
        Ok(())
    }
}

/// Tropical signs `eps_t` and c-vectors `alpha_t` of the mutated variables
/// `y_{k_t}(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignSequence {
    pub signs: Vec<i8>,
    pub cvectors: Vec<Vec<i64>>,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl SignSequence {
    /// `eps_t * alpha_t`, the nonnegative exponent vectors of the tropical form.
    pub fn positive_exponents(&self) -> Vec<Vec<i64>> {
        self.signs
            .iter()
            .zip(&self.cvectors)
            .map(|(&s, c)| c.iter().map(|&x| s as i64 * x).collect())
            .collect()
    }
}

/// All tropical states `(B(t), C(t))` for `t = 1..=L+1`.
pub fn tropical_trajectory(b: &ExchangeMatrix, sequence: &[usize]) -> Result<Vec<TropicalState>> {
    let mut states = Vec::with_capacity(sequence.len() + 1);
    states.push(TropicalState::initial(b.clone()));
    for &k in sequence {
        let next = states.last().expect("nonempty").mutate(k)?;
        states.push(next);
    }
    Ok(states)
}

pub fn sign_sequence(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<SignSequence> {
    sched.check_against(b)?;
    let mut state = TropicalState::initial(b.clone());
    let mut signs = Vec::with_capacity(sched.len());
    let mut cvectors = Vec::with_capacity(sched.len());
    for &k in &sched.sequence {
        signs.push(state.sign(k)?);
        cvectors.push(state.cvectors[k].clone());
        state = state.mutate(k)?;
    }
    let n_plus = signs.iter().filter(|&&s| s > 0).count();
    Ok(SignSequence { n_minus: signs.len() - n_plus, signs, cvectors, n_plus })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub matrix_periodic: bool,
    pub tropical_periodic: bool,
    pub periodic: bool,
}

/// Checks `b_{nu(i) nu(j)}(L+1) = b_ij(1)` and `[y_{nu(i)}(L+1)] = [y_i(1)]`.
pub fn check_period(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<PeriodReport> {
    sched.check_against(b)?;
    let last = tropical_trajectory(b, &sched.sequence)?.pop().expect("nonempty");
    Ok(period_report(b, &last, &sched.nu))
}

pub(crate) fn period_report(b: &ExchangeMatrix, last: &TropicalState, nu: &[usize]) -> PeriodReport {
    let n = b.rank();
    let matrix_periodic =
        (0..n).all(|i| (0..n).all(|j| last.matrix.get(nu[i], nu[j]) == b.get(i, j)));
    let tropical_periodic = (0..n).all(|i| {
        last.cvectors[nu[i]].iter().enumerate().all(|(r, &v)| v == i64::from(r == i))
    });
    PeriodReport { matrix_periodic, tropical_periodic, periodic: matrix_periodic && tropical_periodic }
}

/// Fails with [`Error::NotAPeriod`] unless `sched` is a `nu`-period of `b`.
pub fn require_period(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<()> {
    let r = check_period(b, sched)?;
    if r.periodic {
        Ok(())
    } else {
        Err(Error::NotAPeriod { matrix: r.matrix_periodic, tropical: r.tropical_periodic })
    }
}

/// Largest relative deviation `|y_{nu(i)}(L+1) - y_i(1)| / y_i(1)` of the numeric run.
pub fn numeric_period_deviation(
    b: &ExchangeMatrix,
    sched: &MutationSchedule,
    y0: &[f64],
) -> Result<f64> {
    sched.check_against(b)?;
    let traj = numeric_trajectory(b, y0, &sched.sequence)?;
    let last = &traj.last().expect("nonempty").y;
    Ok((0..y0.len())
        .map(|i| ((last[sched.nu[i]] - y0[i]) / y0[i]).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn a2_period() -> MutationSchedule {
        MutationSchedule::new(vec![0, 1, 0, 1, 0], vec![1, 0], 2).unwrap()
    }

    // Entrywise second implementation of the mutation rule, using the
    // `[b_ik]_+ b_kj + b_ik [-b_kj]_+` form.
    fn mutate_oracle(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
        let n = b.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].max(0) * b[k][j] + b[i][k] * (-b[k][j]).max(0)
                };
            }
        }
        out
    }

    #[test]
    fn rank_two_mutation_negates() {
        assert_eq!(a2().mutate(0).unwrap().rows(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(a2().mutate(1).unwrap().mutate(1).unwrap(), a2());
    }

    #[test]
    fn a3_mutation_at_middle() {
        let rows = vec![vec![0, -1, 0], vec![1, 0, -1], vec![0, 1, 0]];
        let b = ExchangeMatrix::new(rows.clone()).unwrap();
        let expected = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]];
        assert_eq!(mutate_oracle(&rows, 1), expected);
        assert_eq!(b.mutate(1).unwrap().rows(), expected);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]),
            Err(Error::NotSkewSymmetric { .. })
        ));
        assert!(matches!(a2().mutate(2), Err(Error::IndexOutOfRange { index: 3, rank: 2 })));
        assert!(matches!(
            NumericSeed::new(a2(), vec![1.0, 0.0]),
            Err(Error::NonPositive { index: 2, .. })
        ));
        assert!(MutationSchedule::new(vec![0], vec![0, 0], 2).is_err());
    }

    #[test]
    fn a2_numeric_first_step() {
        let s = NumericSeed::new(a2(), vec![1.0, 1.0]).unwrap();
        assert_eq!(s.mutate(0).unwrap().y, vec![1.0, 2.0]);
        let back = s.mutate(0).unwrap().mutate(0).unwrap();
        assert_eq!(back.y, s.y);
    }

    #[test]
    fn a2_numeric_period_swaps_coordinates() {
        let traj = numeric_trajectory(&a2(), &[1.0, 1.0], &[0, 1, 0, 1, 0]).unwrap();
        let actives: Vec<f64> =
            [0, 1, 0, 1, 0].iter().enumerate().map(|(t, &k)| traj[t].y[k]).collect();
        for (a, e) in actives.iter().zip([1.0, 2.0, 3.0, 2.0, 1.0]) {
            assert!((a - e).abs() < 1e-14);
        }
        let last = &traj[5].y;
        assert!((last[0] - 1.0).abs() < 1e-14 && (last[1] - 1.0).abs() < 1e-14);

        let traj = numeric_trajectory(&a2(), &[0.3, 7.0], &[0, 1, 0, 1, 0]).unwrap();
        assert!((traj[5].y[0] - 7.0).abs() < 1e-12);
        assert!((traj[5].y[1] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn a2_tropical_cvectors() {
        let ss = sign_sequence(&a2(), &a2_period()).unwrap();
        assert_eq!(
            ss.cvectors,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]]
        );
        assert_eq!(ss.signs, vec![1, 1, -1, -1, -1]);
        assert_eq!((ss.n_plus, ss.n_minus), (2, 3));
        let last = tropical_trajectory(&a2(), &[0, 1, 0, 1, 0]).unwrap().pop().unwrap();
        assert_eq!(last.unit_permutation(), Some(vec![1, 0]));
    }

    #[test]
    fn tropical_signs() {
        assert_eq!(tropical_sign(&[1, 0]).unwrap(), 1);
        assert_eq!(tropical_sign(&[-1, -1]).unwrap(), -1);
        assert!(matches!(tropical_sign(&[1, -1]), Err(Error::MixedSignCVector(_))));
        assert!(matches!(tropical_sign(&[0, 0]), Err(Error::ZeroCVector)));
        let t = TropicalState::initial(a2());
        assert_eq!(t.sign(1).unwrap(), 1);
        assert_eq!(t.cvectors[1], vec![0, 1]);
    }

    #[test]
    fn mixed_sign_state_is_rejected() {
        let t = TropicalState { matrix: a2(), cvectors: vec![vec![1, -1], vec![0, 1]] };
        assert!(matches!(t.mutate(0), Err(Error::MixedSignCVector(_))));
    }

    #[test]
    fn a1_signs_and_period() {
        let b = ExchangeMatrix::new(vec![vec![0]]).unwrap();
        let s = MutationSchedule::with_identity(vec![0, 0], 1).unwrap();
        assert_eq!(sign_sequence(&b, &s).unwrap().signs, vec![1, -1]);
        assert!(check_period(&b, &s).unwrap().periodic);
    }

    #[test]
    fn period_verdicts() {
        assert!(check_period(&a2(), &a2_period()).unwrap().periodic);
        let short = MutationSchedule::with_identity(vec![0, 1, 0], 2).unwrap();
        let r = check_period(&a2(), &short).unwrap();
        assert!(!r.periodic);
        // Independent witness: the numeric run does not close up either.
        assert!(numeric_period_deviation(&a2(), &short, &[0.7, 1.9]).unwrap() > 1e-3);
        let wrong_nu = MutationSchedule::with_identity(vec![0, 1, 0, 1, 0], 2).unwrap();
        assert!(!check_period(&a2(), &wrong_nu).unwrap().periodic);
    }

    #[test]
    fn principal_extension_shapes() {
        let a1 = ExchangeMatrix::new(vec![vec![0]]).unwrap();
        assert_eq!(principal_extension(&a1).rows(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(
            principal_extension(&a2()).rows(),
            vec![vec![0, -1, -1, 0], vec![1, 0, 0, -1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
        );
    }

    #[test]
    fn alternate_exchange_form_agrees() {
        let b = ExchangeMatrix::new(vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]]).unwrap();
        let y = [0.3, 4.0, 1.7];
        for k in 0..3 {
            let a = exchange_y(&b, &y, k);
            let c = exchange_y_alternate(&b, &y, k);
            for (x, z) in a.iter().zip(&c) {
                assert!(((x - z) / x).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn extended_schedule() {
        let s = a2_period().extended(4).unwrap();
        assert_eq!(s.nu, vec![1, 0, 2, 3]);
        assert_eq!(s.nu_one_based(), vec![2, 1, 3, 4]);
    }

    #[test]
    fn pairing_contracts() {
        assert_eq!(a2().pairing(&[1, 0], &[0, 1]).unwrap(), -1);
        assert!(a2().pairing(&[1], &[0, 1]).is_err());
    }
}
