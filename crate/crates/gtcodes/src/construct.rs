//! Measurement-matrix builders: Kautz-Singleton (Reed-Solomon outer code
//! concatenated with the identity inner code), repeated individual testing,
//! and the random constant-column-weight ensemble.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};
use crate::matrix::{CodeMatrix, CodeMatrixBuilder};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("outer block length {t_q} exceeds field size {q}")]
    BlockLengthExceedsField { t_q: u32, q: u32 },
    #[error("{n} columns requested but the outer code has only {max} codewords")]
    TooManyColumns { n: usize, max: u128 },
    #[error("column weight {w} exceeds test count {t}")]
    WeightExceedsLength { w: u32, t: usize },
    #[error("bad plan metadata: {0}")]
    Metadata(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Which builder a plan resolves to, with its construction-specific knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    KautzSingleton { q: u32, k_q: u32, t_q: u32 },
    IdentityStack,
    RandomConstantWeight { w: u32, seed: u64 },
}

/// A fully resolved parameter set tying a constraint regime to a concrete
/// construction: n items, at most d defectives, nu detectable test errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePlan {
    pub construction: Construction,
    pub n: usize,
    pub d: u32,
    pub nu: u32,
    /// Total number of tests.
    pub t: usize,
    /// Column weight (exact for every construction here).
    pub w: u32,
    /// Upper bound on the row weight.
    pub rho_bound: usize,
}

impl CodePlan {
    pub fn kautz_singleton(n: usize, d: u32, nu: u32, q: u32, k_q: u32, t_q: u32) -> CodePlan {
        CodePlan {
            construction: Construction::KautzSingleton { q, k_q, t_q },
            n,
            d,
            nu,
            t: q as usize * t_q as usize,
            w: t_q,
            rho_bound: (q as u128).pow(k_q - 1).min(n as u128) as usize,
        }
    }

    pub fn identity_stack(n: usize, d: u32, nu: u32) -> CodePlan {
        CodePlan {
            construction: Construction::IdentityStack,
            n,
            d,
            nu,
            t: (nu as usize + 1) * n,
            w: nu + 1,
            rho_bound: 1,
        }
    }

    pub fn random_constant_weight(
        n: usize,
        d: u32,
        nu: u32,
        t: usize,
        w: u32,
        seed: u64,
    ) -> CodePlan {
        CodePlan {
            construction: Construction::RandomConstantWeight { w, seed },
            n,
            d,
            nu,
            t,
            w,
            rho_bound: n,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.construction {
            Construction::KautzSingleton { .. } => "KautzSingleton",
            Construction::IdentityStack => "IdentityStack",
            Construction::RandomConstantWeight { .. } => "RandomConstantWeight",
        }
    }

    /// Multiplicity level l of the column-weight ladder w = l*d + nu + 1;
    /// zero for non-Kautz-Singleton plans.
    pub fn multiplicity(&self) -> u32 {
        match self.construction {
            Construction::KautzSingleton { k_q, .. } => k_q - 1,
            _ => 0,
        }
    }

    pub fn build_matrix(&self) -> Result<CodeMatrix, ConstructError> {
        match self.construction {
            Construction::KautzSingleton { q, k_q, t_q } => {
                let field = Field::new(q as u64)?;
                ks_build(&field, k_q, t_q, self.n)
            }
            Construction::IdentityStack => Ok(identity_stack(self.n, self.nu)),
            Construction::RandomConstantWeight { w, seed } => {
                random_constant_weight(self.t, self.n, w, seed)
            }
        }
    }

    /// Key-value pairs suitable for GTM1 `#key=value` comment lines.
    pub fn to_metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            ("kind".to_string(), self.kind_name().to_string()),
            ("n".to_string(), self.n.to_string()),
            ("d".to_string(), self.d.to_string()),
            ("nu".to_string(), self.nu.to_string()),
            ("t".to_string(), self.t.to_string()),
            ("w".to_string(), self.w.to_string()),
            ("rho_bound".to_string(), self.rho_bound.to_string()),
        ];
        match self.construction {
            Construction::KautzSingleton { q, k_q, t_q } => {
                meta.push(("q".to_string(), q.to_string()));
                meta.push(("k_q".to_string(), k_q.to_string()));
                meta.push(("t_q".to_string(), t_q.to_string()));
                meta.push(("l".to_string(), (k_q - 1).to_string()));
            }
            Construction::IdentityStack => {}
            Construction::RandomConstantWeight { seed, .. } => {
                meta.push(("seed".to_string(), seed.to_string()));
            }
        }
        meta
    }

    pub fn from_metadata(meta: &[(String, String)]) -> Result<CodePlan, ConstructError> {
        let lookup = |key: &str| -> Result<&str, ConstructError> {
            meta.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| ConstructError::Metadata(format!("missing key {key}")))
        };
        let parse = |key: &str| -> Result<u64, ConstructError> {
            lookup(key)?
                .parse()
                .map_err(|_| ConstructError::Metadata(format!("bad value for {key}")))
        };
        let n = parse("n")? as usize;
        let d = parse("d")? as u32;
        let nu = parse("nu")? as u32;
        match lookup("kind")? {
            "KautzSingleton" => Ok(CodePlan::kautz_singleton(
                n,
                d,
                nu,
                parse("q")? as u32,
                parse("k_q")? as u32,
                parse("t_q")? as u32,
            )),
            "IdentityStack" => Ok(CodePlan::identity_stack(n, d, nu)),
            "RandomConstantWeight" => Ok(CodePlan::random_constant_weight(
                n,
                d,
                nu,
                parse("t")? as usize,
                parse("w")? as u32,
                parse("seed")?,
            )),
            other => Err(ConstructError::Metadata(format!("unknown kind {other}"))),
        }
    }
}

/// Kautz-Singleton matrix: column j encodes the polynomial whose base-q
/// digits of j are its coefficients (digit i = coefficient of x^i, degree
/// below k_q), evaluated at the field elements of index 0..t_q. The q-nary
/// symbol s of block b maps to row b*q + s.
///
/// Every column has weight exactly t_q; when n = q^k_q every row has weight
/// exactly q^(k_q-1), otherwise the first n columns in polynomial order are
/// taken and row weights only stay bounded by q^(k_q-1).
pub fn ks_build(field: &Field, k_q: u32, t_q: u32, n: usize) -> Result<CodeMatrix, ConstructError> {
    let q = field.size();
    assert!(k_q >= 1 && t_q >= 1 && n >= 1);
    if t_q > q {
        return Err(ConstructError::BlockLengthExceedsField { t_q, q });
    }
    let capacity = (q as u128).pow(k_q);
    if n as u128 > capacity {
        return Err(ConstructError::TooManyColumns { n, max: capacity });
    }
    let points: Vec<FieldElement> = (0..t_q).map(|b| field.element(b)).collect();
    let t = q as usize * t_q as usize;
    let mut builder = CodeMatrixBuilder::new(t, n);
    let mut coeffs = vec![FieldElement::ZERO; k_q as usize];
    for j in 0..n {
        let mut rest = j as u128;
        for c in coeffs.iter_mut() {
            *c = field.element((rest % q as u128) as u32);
            rest /= q as u128;
        }
        for (b, &x) in points.iter().enumerate() {
            let symbol = field.poly_eval(&coeffs, x).index();
            builder.set(b * q as usize + symbol as usize, j);
        }
    }
    Ok(builder.build())
}

/// nu+1 vertically stacked identity matrices: each item tested alone nu+1
/// times. (d, nu)-disjunct for every d < n.
pub fn identity_stack(n: usize, nu: u32) -> CodeMatrix {
    assert!(n >= 1);
    let copies = nu as usize + 1;
    let mut builder = CodeMatrixBuilder::new(copies * n, n);
    for copy in 0..copies {
        for j in 0..n {
            builder.set(copy * n + j, j);
        }
    }
    builder.build()
}

/// Each column drawn independently and uniformly over weight-w length-t
/// binary vectors. Column j uses its own ChaCha stream derived from (seed, j),
/// so output is deterministic and independent of evaluation order.
pub fn random_constant_weight(
    t: usize,
    n: usize,
    w: u32,
    seed: u64,
) -> Result<CodeMatrix, ConstructError> {
    if w as usize > t {
        return Err(ConstructError::WeightExceedsLength { w, t });
    }
    let mut builder = CodeMatrixBuilder::new(t, n);
    for j in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j as u64);
        for r in sample_distinct(&mut rng, w as usize, t) {
            builder.set(r, j);
        }
    }
    Ok(builder.build())
}

/// Draw `count` distinct values from 0..upper by partial Fisher-Yates.
pub(crate) fn sample_distinct(rng: &mut impl Rng, count: usize, upper: usize) -> Vec<usize> {
    debug_assert!(count <= upper);
    let mut pool: Vec<usize> = (0..upper).collect();
    for k in 0..count {
        let pick = rng.gen_range(k..upper);
        pool.swap(k, pick);
    }
    pool.truncate(count);
    pool
}
