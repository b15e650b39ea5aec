//! Problem generators: three-spin triangle models and binary factorization.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::HuboError;
use crate::polynomial::{Polynomial, PolynomialBuilder, Var};

/// `-J s_j s_k s_l` per triangle, rewritten over occupations with `s = 2n - 1`
/// and divided by `2J`, dropping the constant:
/// `-4 n_j n_k n_l + 2(n_j n_k + n_k n_l + n_j n_l) - (n_j + n_k + n_l)`.
pub fn build_sierpinski_hubo<S: AsRef<str>>(triangles: &[[S; 3]]) -> Result<Polynomial, HuboError> {
    let mut b = PolynomialBuilder::new();
    for [j, k, l] in triangles {
        let (j, k, l) = (j.as_ref(), k.as_ref(), l.as_ref());
        if j == k || k == l || j == l {
            return Err(HuboError::DegenerateTriangle(j.into(), k.into(), l.into()));
        }
        b.add_term(-4, &[j, k, l])?;
        b.add_term(2, &[j, k])?;
        b.add_term(2, &[k, l])?;
        b.add_term(2, &[j, l])?;
        b.add_term(-1, &[j])?;
        b.add_term(-1, &[k])?;
        b.add_term(-1, &[l])?;
    }
    Ok(b.build())
}

/// The three corner triangles of a first-generation gasket on six spins.
pub fn sierpinski_gasket6() -> [[&'static str; 3]; 3] {
    [["s0", "s1", "s2"], ["s1", "s3", "s4"], ["s2", "s4", "s5"]]
}

/// Factor of a product `n = P * Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    P,
    Q,
}

/// Instance description for [`build_factorization_hubo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSpec {
    pub n: u64,
    pub p_bits: u32,
    pub q_bits: u32,
    /// Fixed bits as `(factor, bit index, value)`.
    pub clamped: Vec<(Factor, u32, bool)>,
}

impl FactorizationSpec {
    pub fn new(n: u64, p_bits: u32, q_bits: u32) -> Self {
        Self {
            n,
            p_bits,
            q_bits,
            clamped: Vec::new(),
        }
    }

    pub fn clamp(mut self, factor: Factor, bit: u32, value: bool) -> Self {
        self.clamped.push((factor, bit, value));
        self
    }
}

pub fn bit_name(factor: Factor, bit: u32) -> String {
    match factor {
        Factor::P => format!("P{bit}"),
        Factor::Q => format!("Q{bit}"),
    }
}

type Expr = BTreeMap<Vec<Var>, i64>;

fn mul(a: &Expr, b: &Expr) -> Expr {
    let mut out = Expr::new();
    for (va, ca) in a {
        for (vb, cb) in b {
            let mut key: Vec<Var> = va.iter().chain(vb).copied().collect();
            key.sort_unstable();
            key.dedup();
            *out.entry(key).or_insert(0) += ca * cb;
        }
    }
    out
}

/// Expands `(n - P*Q)^2` over the binary digits of `P` and `Q` with `x^2 = x`.
/// The constant of the expansion is kept in [`Polynomial::constant`].
pub fn build_factorization_hubo(spec: &FactorizationSpec) -> Result<Polynomial, HuboError> {
    if spec.n < 2 {
        return Err(HuboError::InvalidFactorization("n must be at least 2"));
    }
    if spec.p_bits == 0 || spec.q_bits == 0 {
        return Err(HuboError::InvalidFactorization("bit widths must be at least 1"));
    }
    if spec.p_bits + spec.q_bits > 62 || spec.n > 1 << 31 {
        return Err(HuboError::InvalidFactorization("instance too large for exact i64 expansion"));
    }
    let width = |f: Factor| match f {
        Factor::P => spec.p_bits,
        Factor::Q => spec.q_bits,
    };
    let mut fixed = BTreeMap::new();
    for &(f, bit, value) in &spec.clamped {
        if bit >= width(f) {
            return Err(HuboError::UndeclaredClamp(bit_name(f, bit)));
        }
        fixed.insert((f, bit), value);
    }

    let mut b = PolynomialBuilder::new();
    let mut factor_expr = |f: Factor| -> Result<Expr, HuboError> {
        let mut e = Expr::new();
        for bit in (0..width(f)).rev() {
            let scale = 1i64 << bit;
            match fixed.get(&(f, bit)) {
                Some(true) => *e.entry(Vec::new()).or_insert(0) += scale,
                Some(false) => {}
                None => {
                    let v = b.var(&bit_name(f, bit))?;
                    *e.entry(alloc::vec![v]).or_insert(0) += scale;
                }
            }
        }
        Ok(e)
    };
    let p = factor_expr(Factor::P)?;
    let q = factor_expr(Factor::Q)?;

    let mut residual: Expr = mul(&p, &q).into_iter().map(|(k, c)| (k, -c)).collect();
    *residual.entry(Vec::new()).or_insert(0) += spec.n as i64;
    for (vars, c) in mul(&residual, &residual) {
        b.add_vars(c, &vars);
    }
    Ok(b.build())
}
