//! Deformation quantization for constant Poisson tensors.
//!
//! A [`PoissonTensor`] fixes constant brackets `{v_i, v_j} = P^{ij}` on a
//! finite list of variables. The star product is the Moyal product
//!
//! ```text
//! a * b = sum_r h^r B_r(a, b),
//! B_r(a, b) = 1/(2^r r!) sum P^{i1 j1}...P^{ir jr} (d_{i1..ir} a)(d_{j1..jr} b),
//! ```
//!
//! truncated at order `N`. `B_1 = {.,.}/2`, so the `h^1` coefficient of a
//! star commutator is exactly the Poisson bracket.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{CommPoly, Field, Ring, Scalar, Variable};

pub type PolyMatrix = Matrix<CommPoly>;

/// Constant antisymmetric tensor on an ordered list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonTensor {
    field: Field,
    variables: Vec<Variable>,
    index: BTreeMap<Variable, usize>,
    /// Upper triangle `i < j`, nonzero entries only.
    upper: BTreeMap<(usize, usize), Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    variables: Vec<String>,
    entries: Vec<(usize, usize, String)>,
}

/// Partner of a variable under the default pairing: `X1[i,j] <-> X2[i,j]`,
/// `x_k <-> y_k` and `lam_k <-> mu_k`, with the first of each pair on the
/// left of the bracket.
pub fn pairing_partner(v: &Variable) -> Option<(Variable, bool)> {
    match v {
        Variable::Entry {
            generator: 1,
            row,
            col,
        } => Some((Variable::entry(2, *row, *col), true)),
        Variable::Entry {
            generator: 2,
            row,
            col,
        } => Some((Variable::entry(1, *row, *col), false)),
        Variable::Entry { .. } => None,
        Variable::Aux { name, index } => match &**name {
            "x" => Some((Variable::aux("y", *index), true)),
            "y" => Some((Variable::aux("x", *index), false)),
            "lam" => Some((Variable::aux("mu", *index), true)),
            "mu" => Some((Variable::aux("lam", *index), false)),
            _ => None,
        },
    }
}

impl PoissonTensor {
    /// The zero tensor on `variables`.
    pub fn zero(variables: Vec<Variable>, field: Field) -> Result<PoissonTensor> {
        let mut index = BTreeMap::new();
        for (i, v) in variables.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidTensor(format!("variable {v} listed twice")));
            }
        }
        Ok(PoissonTensor {
            field,
            variables,
            index,
            upper: BTreeMap::new(),
        })
    }

    /// Default tensor: each given variable together with its pairing
    /// partner, `{left, right} = 1`, all other brackets 0.
    pub fn pairing(variables: impl IntoIterator<Item = Variable>, field: Field) -> PoissonTensor {
        let mut all: BTreeSet<Variable> = BTreeSet::new();
        for v in variables {
            if let Some((w, _)) = pairing_partner(&v) {
                all.insert(w);
            }
            all.insert(v);
        }
        let mut t = PoissonTensor::zero(all.into_iter().collect(), field)
            .expect("set has no duplicates");
        for v in t.variables.clone() {
            if let Some((w, true)) = pairing_partner(&v) {
                let (i, j) = (t.index[&v], t.index[&w]);
                t.set(i, j, field.one()).expect("distinct indices");
            }
        }
        t
    }

    /// Sets `P^{ij} = c` and `P^{ji} = -c`.
    pub fn set(&mut self, i: usize, j: usize, c: Scalar) -> Result<()> {
        let len = self.variables.len();
        if i >= len || j >= len {
            return Err(Error::InvalidTensor(format!(
                "index ({i}, {j}) out of range for {len} variables"
            )));
        }
        if i == j {
            return Err(Error::InvalidTensor(format!("diagonal entry ({i}, {i})")));
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: c.field().to_string(),
            });
        }
        let (key, value) = if i < j { ((i, j), c) } else { ((j, i), c.neg()) };
        if value.is_zero() {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, value);
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn position(&self, v: &Variable) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper.get(&(i, j)).cloned().unwrap_or(self.field.zero()),
            std::cmp::Ordering::Greater => self.get(j, i).neg(),
            std::cmp::Ordering::Equal => self.field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_empty()
    }

    /// Every nonzero `(v_i, v_j, P^{ij})`, both orientations.
    fn oriented(&self) -> Vec<(&Variable, &Variable, Scalar)> {
        let mut out = Vec::with_capacity(2 * self.upper.len());
        for (&(i, j), c) in &self.upper {
            out.push((&self.variables[i], &self.variables[j], c.clone()));
            out.push((&self.variables[j], &self.variables[i], c.neg()));
        }
        out
    }

    /// Fails with `UnknownVariable` unless every variable of `p` is listed.
    pub fn check_support(&self, p: &CommPoly) -> Result<()> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: p.field().to_string(),
            });
        }
        match p.variables().into_iter().find(|v| !self.index.contains_key(v)) {
            Some(v) => Err(Error::UnknownVariable(v.to_string())),
            None => Ok(()),
        }
    }

    /// Reads the JSON format `{"variables": [...], "entries": [[i, j, "c"], ...]}`
    /// with 0-based `i < j`.
    pub fn from_json(text: &str, field: Field) -> Result<PoissonTensor> {
        let file: TensorFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidTensor(format!("bad tensor file: {e}")))?;
        let variables = file
            .variables
            .iter()
            .map(|name| {
                Variable::parse_name(name)
                    .map_err(|_| Error::InvalidTensor(format!("bad variable name {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut t = PoissonTensor::zero(variables, field)?;
        let mut seen = BTreeSet::new();
        for (i, j, c) in file.entries {
            if i >= j {
                return Err(Error::InvalidTensor(format!(
                    "entry ({i}, {j}) is not in the strict upper triangle"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidTensor(format!("entry ({i}, {j}) given twice")));
            }
            t.set(i, j, field.parse_scalar(&c)?)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let file = TensorFile {
            variables: self.variables.iter().map(|v| v.to_string()).collect(),
            entries: self
                .upper
                .iter()
                .map(|(&(i, j), c)| (i, j, c.to_string()))
                .collect(),
        };
        serde_json::to_string(&file).expect("tensor serializes")
    }
}

/// Where the Poisson tensor of a computation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoissonSource {
    /// [`PoissonTensor::pairing`] on the variables in play.
    Pairing,
    Fixed(PoissonTensor),
}

impl PoissonSource {
    pub fn resolve(&self, variables: impl IntoIterator<Item = Variable>, field: Field) -> PoissonTensor {
        match self {
            PoissonSource::Pairing => PoissonTensor::pairing(variables, field),
            PoissonSource::Fixed(t) => t.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            PoissonSource::Pairing => "pairing".into(),
            PoissonSource::Fixed(t) => t.to_json(),
        }
    }
}

/// `{a, b} = sum_{i,j} P^{ij} (da/dv_i)(db/dv_j)`.
pub fn poisson_bracket(a: &CommPoly, b: &CommPoly, tensor: &PoissonTensor) -> Result<CommPoly> {
    tensor.check_support(a)?;
    tensor.check_support(b)?;
    let mut total = CommPoly::zero(tensor.field);
    for (vi, vj, c) in tensor.oriented() {
        let da = a.partial_derivative(vi);
        if da.is_zero() {
            continue;
        }
        let db = b.partial_derivative(vj);
        if db.is_zero() {
            continue;
        }
        total = total.add(&da.mul(&db).mul_term(&crate::rings::Monomial::one(), &c));
    }
    Ok(total)
}

/// Truncated power series `c_0 + c_1 h + ... + c_N h^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> FormalSeries<T> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Result<FormalSeries<T>> {
        if coeffs.is_empty() {
            return Err(Error::InvalidOrder("a series needs at least one coefficient".into()));
        }
        Ok(FormalSeries { coeffs })
    }

    /// `t + 0 h + ... + 0 h^N`.
    pub fn lift(t: T, order: usize) -> FormalSeries<T> {
        let zero = t.zero_like();
        let mut coeffs = vec![t];
        coeffs.resize(order + 1, zero);
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> &T {
        &self.coeffs[r]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidOrder(format!(
                "series truncated at {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(FormalSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(FormalSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    /// Cauchy product using the ring's own multiplication, truncated.
    pub fn plain_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = self.coeffs[0].zero_like();
                for p in 0..=k {
                    let (a, b) = (&self.coeffs[p], &other.coeffs[k - p]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        Ok(FormalSeries { coeffs })
    }

    pub fn neg(&self) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> FormalSeries<U> {
        FormalSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: Ring + std::fmt::Display> std::fmt::Display for FormalSeries<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match r {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*h")?,
                r => write!(f, "({c})*h^{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Poisson tensor, truncation order and field for star products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarContext {
    tensor: PoissonTensor,
    order: usize,
}

impl StarContext {
    /// `B_r` divides by `2^r r!`, so characteristic `p` requires `N < p`,
    /// and `p = 2` only allows `N = 0`.
    pub fn new(tensor: PoissonTensor, order: usize) -> Result<StarContext> {
        let field = tensor.field();
        field.require_invertible_up_to(order as u64, "the star product divides by r! for r <= N")?;
        if order >= 1 {
            field.require_invertible_up_to(2, "the star product divides by 2^r")?;
        }
        Ok(StarContext { tensor, order })
    }

    pub fn tensor(&self) -> &PoissonTensor {
        &self.tensor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> Field {
        self.tensor.field()
    }

    /// `B_r(a, b)`.
    pub fn moyal_term(&self, a: &CommPoly, b: &CommPoly, r: usize) -> Result<CommPoly> {
        let field = self.field();
        if r == 0 {
            return a.checked_mul(b);
        }
        let oriented = self.tensor.oriented();
        // Partial derivatives commute, so group by the sorted multiset of
        // left derivatives: I -> (d_I a, sum of P-weighted right derivatives of b).
        let mut layer: BTreeMap<Vec<usize>, (CommPoly, CommPoly)> = BTreeMap::new();
        layer.insert(Vec::new(), (a.clone(), b.clone()));
        for _ in 0..r {
            let mut next: BTreeMap<Vec<usize>, (CommPoly, CommPoly)> = BTreeMap::new();
            for (key, (da, w)) in &layer {
                for (vi, vj, c) in &oriented {
                    let dw = w.partial_derivative(vj);
                    if dw.is_zero() {
                        continue;
                    }
                    let i = self.tensor.index[*vi];
                    let mut k = key.clone();
                    let at = k.partition_point(|&x| x <= i);
                    k.insert(at, i);
                    let contribution = dw.mul_term(&crate::rings::Monomial::one(), c);
                    match next.get_mut(&k) {
                        Some((_, acc)) => *acc = acc.add(&contribution),
                        None => {
                            let dda = da.partial_derivative(vi);
                            if !dda.is_zero() {
                                next.insert(k, (dda, contribution));
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        let mut total = CommPoly::zero(field);
        for (da, w) in layer.values() {
            total = total.add(&da.mul(w));
        }
        let mut denom = field.one();
        for k in 1..=r {
            denom = denom.mul(&field.from_i64(2 * k as i64));
        }
        Ok(total.mul_term(&crate::rings::Monomial::one(), &denom.inv()?))
    }

    fn check_series(&self, a: &FormalSeries<CommPoly>) -> Result<()> {
        if a.order() > self.order {
            return Err(Error::InvalidOrder(format!(
                "series of order {} exceeds the context order {}",
                a.order(),
                self.order
            )));
        }
        a.coeffs().iter().try_for_each(|c| self.tensor.check_support(c))
    }

    fn padded<'a>(&self, a: &'a FormalSeries<CommPoly>, r: usize) -> Option<&'a CommPoly> {
        a.coeffs().get(r).filter(|c| !c.is_zero())
    }

    /// `a * b`, truncated at the context order. Shorter inputs are padded
    /// with zero coefficients.
    pub fn star_mul(
        &self,
        a: &FormalSeries<CommPoly>,
        b: &FormalSeries<CommPoly>,
    ) -> Result<FormalSeries<CommPoly>> {
        self.check_series(a)?;
        self.check_series(b)?;
        let n = self.order;
        let mut coeffs = vec![CommPoly::zero(self.field()); n + 1];
        for p in 0..=n {
            let Some(ap) = self.padded(a, p) else { continue };
            for q in 0..=n - p {
                let Some(bq) = self.padded(b, q) else { continue };
                for r in 0..=n - p - q {
                    let term = self.moyal_term(ap, bq, r)?;
                    let slot = &mut coeffs[p + q + r];
                    *slot = slot.add(&term);
                }
            }
        }
        FormalSeries::new(coeffs)
    }

    /// `a * b - b * a`.
    pub fn star_commutator(
        &self,
        a: &FormalSeries<CommPoly>,
        b: &FormalSeries<CommPoly>,
    ) -> Result<FormalSeries<CommPoly>> {
        self.star_mul(a, b)?.checked_sub(&self.star_mul(b, a)?)
    }

    pub fn lift(&self, a: &CommPoly) -> FormalSeries<CommPoly> {
        FormalSeries::lift(a.clone(), self.order)
    }

    /// Compares the `h^1` coefficient of `[a, b]_*` with `{a, b}`.
    pub fn verify_correspondence(&self, a: &CommPoly, b: &CommPoly) -> Result<Correspondence> {
        if self.order < 2 {
            return Err(Error::InvalidOrder(format!(
                "the correspondence check needs order >= 2, got {}",
                self.order
            )));
        }
        let commutator = self.star_commutator(&self.lift(a), &self.lift(b))?;
        let bracket = poisson_bracket(a, b, &self.tensor)?;
        Ok(Correspondence {
            holds: *commutator.coeff(1) == bracket && commutator.coeff(0).is_zero(),
            hbar_coefficient: commutator.coeff(1).clone(),
            bracket,
        })
    }

    /// Row-by-column product of series matrices with entrywise star
    /// products, or the corresponding commutator.
    pub fn matrix_star(
        &self,
        a: &FormalSeries<PolyMatrix>,
        b: &FormalSeries<PolyMatrix>,
        op: StarOp,
    ) -> Result<FormalSeries<PolyMatrix>> {
        let ab = self.matrix_star_mul(a, b)?;
        match op {
            StarOp::Mul => Ok(ab),
            StarOp::Commutator => ab.checked_sub(&self.matrix_star_mul(b, a)?),
        }
    }

    fn matrix_star_mul(
        &self,
        a: &FormalSeries<PolyMatrix>,
        b: &FormalSeries<PolyMatrix>,
    ) -> Result<FormalSeries<PolyMatrix>> {
        let n = a.coeff(0).size();
        if b.coeff(0).size() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n}x{n} vs {0}x{0}",
                b.coeff(0).size()
            )));
        }
        let entry = |s: &FormalSeries<PolyMatrix>, i: usize, j: usize| {
            s.map(|m| m.get(i, j).clone())
        };
        let field = self.field();
        let mut out = vec![PolyMatrix::zero(n, field); self.order + 1];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    let prod = self.star_mul(&entry(a, i, j), &entry(b, j, k))?;
                    for (r, c) in prod.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            let updated = out[r].get(i, k).add(c);
                            out[r].set(i, k, updated);
                        }
                    }
                }
            }
        }
        FormalSeries::new(out)
    }

    /// Lift with `h^0` coefficient `a` and zero higher coefficients.
    pub fn quantize_lift(&self, a: &PolyMatrix) -> Result<FormalSeries<PolyMatrix>> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: a.field().to_string(),
            });
        }
        a.entries().iter().try_for_each(|e| self.tensor.check_support(e))?;
        Ok(FormalSeries::lift(a.clone(), self.order))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarOp {
    Mul,
    Commutator,
}

/// Result of [`StarContext::verify_correspondence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub holds: bool,
    pub hbar_coefficient: CommPoly,
    pub bracket: CommPoly,
}
