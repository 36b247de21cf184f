//! Monad data `(A, B, C, D)` with `[A, B] + CD = 0` and its Hecke transform.
//!
//! `A`, `B` are `k x k`, `C` is `k x n`, `D` is `n x k`. The transform needs
//! `A` invertible and cycles the columns `C_i` of `C` and rows `D_i` of `D`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::QMatrix;
use crate::{qi, Error, Result, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadData {
    a: QMatrix,
    b: QMatrix,
    c: QMatrix,
    d: QMatrix,
}

impl MonadData {
    /// Checks shapes only; the constraint is checked by [`validate`].
    pub fn new(a: QMatrix, b: QMatrix, c: QMatrix, d: QMatrix) -> Result<Self> {
        let k = a.rows();
        let n = c.cols();
        let shape = |m: &QMatrix, r: usize, c: usize| {
            if m.rows() == r && m.cols() == c {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: r * c,
                    got: m.rows() * m.cols(),
                })
            }
        };
        shape(&a, k, k)?;
        shape(&b, k, k)?;
        shape(&c, k, n)?;
        shape(&d, n, k)?;
        Ok(MonadData { a, b, c, d })
    }

    pub fn zero(k: usize, n: usize) -> Self {
        MonadData {
            a: QMatrix::zeros(k, k),
            b: QMatrix::zeros(k, k),
            c: QMatrix::zeros(k, n),
            d: QMatrix::zeros(n, k),
        }
    }

    pub fn k(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.c.cols()
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    pub fn c(&self) -> &QMatrix {
        &self.c
    }

    pub fn d(&self) -> &QMatrix {
        &self.d
    }

    /// `[A, B] + CD`.
    pub fn constraint(&self) -> QMatrix {
        &self.a.commutator(&self.b) + &(&self.c * &self.d)
    }

    pub fn is_hecke_eligible(&self) -> bool {
        self.a.inverse().is_some()
    }
}

pub fn validate(m: &MonadData) -> bool {
    m.constraint().is_zero()
}

/// `g . (A, B, C, D) = (g A g^-1, g B g^-1, g C, D g^-1)`.
pub fn gl_action(g: &QMatrix, m: &MonadData) -> Result<MonadData> {
    if g.rows() != m.k() || g.cols() != m.k() {
        return Err(Error::DimensionMismatch {
            expected: m.k(),
            got: g.rows(),
        });
    }
    let gi = g
        .inverse()
        .ok_or_else(|| Error::InvalidInput("g is singular".into()))?;
    Ok(MonadData {
        a: &(g * &m.a) * &gi,
        b: &(g * &m.b) * &gi,
        c: g * &m.c,
        d: &m.d * &gi,
    })
}

/// `(A, B - C_1 D_1 A^-1, [C_2 .. C_n, A C_1], [D_2 .. D_n, D_1 A^-1])`.
pub fn hecke_monad(m: &MonadData) -> Result<MonadData> {
    let ai = m.a.inverse().ok_or(Error::SingularA)?;
    let (k, n) = (m.k(), m.n());
    let c1 = QMatrix::from_rows(m.c.col(0).into_iter().map(|x| vec![x]).collect());
    let d1 = QMatrix::from_rows(vec![m.d.row(0)]);
    let d1ai = &d1 * &ai;
    let b = &m.b - &(&c1 * &d1ai);

    let mut c = QMatrix::zeros(k, n);
    let mut d = QMatrix::zeros(n, k);
    for i in 1..n {
        c.set_col(i - 1, &m.c.col(i));
        d.set_row(i - 1, &m.d.row(i));
    }
    c.set_col(n - 1, &(&m.a * &c1).col(0));
    d.set_row(n - 1, &d1ai.row(0));
    Ok(MonadData {
        a: m.a.clone(),
        b,
        c,
        d,
    })
}

/// The `n`-fold transform equals the action of `g = A`.
pub fn hecke_order_check(m: &MonadData) -> Result<bool> {
    let mut x = m.clone();
    for _ in 0..m.n() {
        x = hecke_monad(&x)?;
    }
    Ok(x == gl_action(&m.a, m)?)
}

const MAX_DRAWS: usize = 64;

/// Deterministic random instance with `A` invertible and the constraint exact.
///
/// Built in an eigenbasis of `A = diag(λ)` with distinct nonzero `λ`: there
/// `[A, B]_ij = (λ_i - λ_j) B_ij`, so the off-diagonal part of `B` is solved
/// from `CD`, and `C` is adjusted so that `CD` has zero diagonal. The result
/// is conjugated by a random invertible matrix.
pub fn random_monad(k: usize, n: usize, seed: u64) -> Result<MonadData> {
    if k < 1 || n < 2 {
        return Err(Error::InvalidInput(format!(
            "need k >= 1 and n >= 2, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| qi(rng.gen_range(-3..=3));
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let x: i64 = rng.gen_range(-3..=3);
        if x != 0 {
            break qi(x);
        }
    };

    let mut lambdas: Vec<i64> = Vec::with_capacity(k);
    while lambdas.len() < k {
        let x: i64 = rng.gen_range(-(2 * k as i64 + 2)..=(2 * k as i64 + 2));
        if x != 0 && !lambdas.contains(&x) {
            lambdas.push(x);
        }
    }

    let mut c = QMatrix::zeros(k, n);
    let mut d = QMatrix::zeros(n, k);
    for i in 0..k {
        for a in 0..n {
            c[(i, a)] = small(&mut rng);
            d[(a, i)] = if a == 0 {
                nonzero(&mut rng)
            } else {
                small(&mut rng)
            };
        }
    }
    for i in 0..k {
        let rest: Q = (1..n).map(|a| &c[(i, a)] * &d[(a, i)]).sum();
        c[(i, 0)] = -rest / &d[(0, i)];
    }
    let cd = &c * &d;

    let mut a = QMatrix::zeros(k, k);
    let mut b = QMatrix::zeros(k, k);
    for i in 0..k {
        a[(i, i)] = qi(lambdas[i]);
        for j in 0..k {
            b[(i, j)] = if i == j {
                small(&mut rng)
            } else {
                -&cd[(i, j)] / qi(lambdas[i] - lambdas[j])
            };
        }
    }
    let base = MonadData { a, b, c, d };
    if !validate(&base) {
        return Err(Error::Internal(
            "eigenbasis construction violated the constraint".into(),
        ));
    }

    for _ in 0..MAX_DRAWS {
        let mut p = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                p[(i, j)] = small(&mut rng);
            }
        }
        if !p.determinant().is_zero() {
            return gl_action(&p, &base);
        }
    }
    Err(Error::InvalidInput(format!(
        "no invertible conjugator after {MAX_DRAWS} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows)
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&MonadData::zero(3, 2)));
        let d = MonadData::new(
            m(&[vec![1, 0], vec![0, 2]]),
            m(&[vec![3, 0], vec![0, 4]]),
            QMatrix::zeros(2, 2),
            QMatrix::zeros(2, 2),
        )
        .unwrap();
        assert!(validate(&d));
        let one = MonadData::new(
            m(&[vec![1]]),
            m(&[vec![2]]),
            m(&[vec![1, 0]]),
            m(&[vec![0], vec![1]]),
        )
        .unwrap();
        assert!(validate(&one));
        assert!(MonadData::new(
            m(&[vec![1]]),
            m(&[vec![2]]),
            m(&[vec![1, 0]]),
            m(&[vec![0]])
        )
        .is_err());
    }

    #[test]
    fn identity_a_transform() {
        let x = random_monad(2, 3, 7).unwrap();
        let y =
            MonadData::new(QMatrix::identity(2), x.b.clone(), x.c.clone(), x.d.clone()).unwrap();
        let h = hecke_monad(&y).unwrap();
        let c1 = QMatrix::from_rows(y.c.col(0).into_iter().map(|v| vec![v]).collect());
        let d1 = QMatrix::from_rows(vec![y.d.row(0)]);
        assert_eq!(h.b, &y.b - &(&c1 * &d1));
        assert_eq!(h.c.col(2), y.c.col(0));
        assert_eq!(h.c.col(0), y.c.col(1));
        assert_eq!(h.d.row(2), y.d.row(0));
        assert_eq!(h.d.row(1), y.d.row(2));
    }

    #[test]
    fn zero_framing_is_fixed() {
        let x = MonadData::new(
            m(&[vec![1, 0], vec![0, 2]]),
            m(&[vec![3, 0], vec![0, 4]]),
            QMatrix::zeros(2, 3),
            QMatrix::zeros(3, 2),
        )
        .unwrap();
        assert_eq!(hecke_monad(&x).unwrap(), x);
    }

    #[test]
    fn singular_a_rejected() {
        assert_eq!(hecke_monad(&MonadData::zero(2, 2)), Err(Error::SingularA));
        assert_eq!(
            hecke_order_check(&MonadData::zero(2, 2)),
            Err(Error::SingularA)
        );
    }

    #[test]
    fn random_is_valid_and_deterministic() {
        for (k, n) in [(1, 2), (2, 2), (2, 3), (3, 4), (4, 2)] {
            for seed in 0..5 {
                let x = random_monad(k, n, seed).unwrap();
                assert!(validate(&x) && x.is_hecke_eligible());
                assert_eq!(x, random_monad(k, n, seed).unwrap());
                assert!(!x.c.is_zero());
            }
        }
        assert!(random_monad(2, 1, 0).is_err());
        assert!(random_monad(0, 2, 0).is_err());
    }

    #[test]
    fn order_check_on_examples() {
        for s in 1..10 {
            assert!(hecke_order_check(&random_monad(2, 2, s).unwrap()).unwrap());
        }
        assert!(hecke_order_check(&random_monad(3, 4, 1).unwrap()).unwrap());
    }
}
