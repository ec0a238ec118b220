//! Finite-dimensional simple Lie algebras in a Chevalley basis.
//!
//! The basis is x_rho for every root rho (positives first, in a fixed
//! order, then the matching negatives), followed by the simple coroots
//! h_1..h_l. Structure constants are built from the root system: the
//! extraspecial pair of each positive root gets the positive sign
//! N = p+1, and every remaining constant is propagated through the
//! Jacobi identity. The invariant form is normalized so long roots have
//! squared length 2.

use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::{rat_int, CycloScalar, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum CartanLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub struct CartanType {
    pub letter: CartanLetter,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let letter = match chars.next().ok_or_else(bad)? {
            'A' | 'a' => CartanLetter::A,
            'B' | 'b' => CartanLetter::B,
            'C' | 'c' => CartanLetter::C,
            'D' | 'd' => CartanLetter::D,
            'E' | 'e' => CartanLetter::E,
            'F' | 'f' => CartanLetter::F,
            'G' | 'g' => CartanLetter::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Ok(CartanType { letter, rank })
    }
}

/// Cartan matrix with a_ij = <alpha_i^vee, alpha_j>.
fn cartan_matrix(t: CartanType) -> Result<Vec<Vec<i64>>, AlgebraError> {
    use CartanLetter::*;
    let l = t.rank;
    let bad = || AlgebraError::InvalidCartanType(t.to_string());
    let mut a = vec![vec![0i64; l]; l];
    for i in 0..l {
        a[i][i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match (t.letter, l) {
        (A, r) if r >= 1 => chain(&mut a, l),
        (B, r) if r >= 2 => {
            chain(&mut a, l);
            a[l - 1][l - 2] = -2;
        }
        (C, r) if r >= 2 => {
            chain(&mut a, l);
            a[l - 2][l - 1] = -2;
        }
        (D, r) if r >= 3 => {
            chain(&mut a, l - 1);
            a[l - 3][l - 1] = -1;
            a[l - 1][l - 3] = -1;
        }
        (E, 6) | (E, 7) | (E, 8) => {
            // Bourbaki: chain 1-3-4-5-..-l, node 2 attached to node 4
            let edges: Vec<(usize, usize)> = std::iter::once((0, 2))
                .chain((2..l - 1).map(|i| (i, i + 1)))
                .chain(std::iter::once((1, 3)))
                .collect();
            for (i, j) in edges {
                a[i][j] = -1;
                a[j][i] = -1;
            }
        }
        (F, 4) => {
            chain(&mut a, 4);
            a[2][1] = -2;
        }
        (G, 2) => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

/// Half squared lengths d_i of the simple roots, normalized so the long
/// roots have d = 1, solved from d_i a_ij = d_j a_ji.
fn root_lengths(a: &[Vec<i64>]) -> Vec<Rat> {
    let l = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; l];
    d[0] = Some(Rat::one());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..l {
            for j in 0..l {
                if i != j && a[i][j] != 0 {
                    if let (Some(di), None) = (d[i].clone(), &d[j]) {
                        d[j] = Some(di * rat_int(a[i][j]) / rat_int(a[j][i]));
                        changed = true;
                    }
                }
            }
        }
    }
    let mut d: Vec<Rat> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().cloned().fold(Rat::zero(), |m, x| if x > m { x } else { m });
    for x in &mut d {
        *x /= max.clone();
    }
    d
}

type RootVec = Vec<i64>;

fn height(r: &RootVec) -> i64 {
    r.iter().sum()
}

fn neg(r: &RootVec) -> RootVec {
    r.iter().map(|x| -x).collect()
}

fn add(a: &RootVec, b: &RootVec) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &RootVec, b: &RootVec) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Deterministic total order on positive roots: by height, then by
/// descending lexicographic coefficient vector (so alpha_1 < alpha_2 < ..).
fn root_order(a: &RootVec, b: &RootVec) -> std::cmp::Ordering {
    height(a).cmp(&height(b)).then_with(|| b.cmp(a))
}

/// An element of g: sparse coefficients over the Chevalley basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GElement {
    pub algebra: CartanType,
    pub modulus: u64,
    pub coeffs: BTreeMap<usize, CycloScalar>,
}

impl GElement {
    pub fn zero(algebra: CartanType, modulus: u64) -> Self {
        GElement {
            algebra,
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(algebra: CartanType, modulus: u64, index: usize) -> Self {
        let mut e = Self::zero(algebra, modulus);
        e.coeffs.insert(index, CycloScalar::one(modulus));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn insert(&mut self, index: usize, value: CycloScalar) {
        if !value.is_zero() {
            self.coeffs.insert(index, value);
        }
    }

    pub fn add_term(&mut self, index: usize, value: &CycloScalar) {
        if value.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(index)
            .or_insert_with(|| CycloScalar::zero(self.modulus));
        *entry += value.clone();
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &GElement) -> GElement {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(*i, c);
        }
        out
    }

    pub fn scale(&self, by: &CycloScalar) -> GElement {
        let mut out = GElement::zero(self.algebra, self.modulus);
        if by.is_zero() {
            return out;
        }
        for (i, c) in &self.coeffs {
            out.insert(*i, c * by);
        }
        out
    }

    pub fn neg(&self) -> GElement {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn to_dense(&self, dim: usize) -> Vec<CycloScalar> {
        let mut v = vec![CycloScalar::zero(self.modulus); dim];
        for (i, c) in &self.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(algebra: CartanType, modulus: u64, v: &[CycloScalar]) -> Self {
        let mut out = Self::zero(algebra, modulus);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(i, c.clone());
            }
        }
        out
    }

    /// Change the scalar field to Q(zeta_new) (old modulus must divide new).
    pub fn promote(&self, new_modulus: u64) -> Result<Self, AlgebraError> {
        let mut out = GElement::zero(self.algebra, new_modulus);
        for (i, c) in &self.coeffs {
            out.insert(*i, c.promote(new_modulus)?);
        }
        Ok(out)
    }
}

/// Simple Lie algebra with Chevalley structure constants and the
/// normalized invariant form.
pub struct SimpleAlgebra {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// half squared lengths of the simple roots (long = 1)
    pub d: Vec<Rat>,
    pub positive_roots: Vec<RootVec>,
    pos_index: HashMap<RootVec, usize>,
    pub dim: usize,
    /// bracket_table[i][j] = [x_i, x_j] as sparse (index, coefficient)
    table: Vec<Vec<(usize, Rat)>>,
    /// form_table[i] = the unique j with (x_i, x_j) != 0, and the value
    form_pairs: Vec<Option<(usize, Rat)>>,
    /// (h_i, h_j) block
    form_cartan: Vec<Vec<Rat>>,
}

pub type SharedAlgebra = Arc<SimpleAlgebra>;

impl SimpleAlgebra {
    /// Number of positive roots.
    pub fn num_pos(&self) -> usize {
        self.positive_roots.len()
    }

    /// Basis index of the positive root vector x_rho.
    pub fn pos_root_index(&self, rho: &RootVec) -> Option<usize> {
        self.pos_index.get(rho).copied()
    }

    /// Basis index of x_{-rho} for positive rho.
    pub fn neg_root_index(&self, rho: &RootVec) -> Option<usize> {
        self.pos_index.get(rho).map(|i| i + self.num_pos())
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        2 * self.num_pos() + i
    }

    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.rank).map(|i| self.cartan_index(i)).collect()
    }

    /// The root attached to a basis vector (None for Cartan elements).
    pub fn basis_root(&self, index: usize) -> Option<RootVec> {
        let np = self.num_pos();
        if index < np {
            Some(self.positive_roots[index].clone())
        } else if index < 2 * np {
            Some(neg(&self.positive_roots[index - np]))
        } else {
            None
        }
    }

    pub fn basis_label(&self, index: usize) -> String {
        let np = self.num_pos();
        if index < np {
            format!("x+{:?}", self.positive_roots[index])
        } else if index < 2 * np {
            format!("x-{:?}", self.positive_roots[index - np])
        } else {
            format!("h{}", index - 2 * np + 1)
        }
    }

    /// (alpha, beta) for root coefficient vectors.
    pub fn root_form(&self, a: &RootVec, b: &RootVec) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] == 0 {
                    continue;
                }
                acc += rat_int(a[i] * b[j]) * &self.d[i] * rat_int(self.cartan[i][j]);
            }
        }
        acc
    }

    /// <beta, alpha_i^vee> = sum_j beta_j a_ij.
    pub fn cartan_pairing(&self, i: usize, beta: &RootVec) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum()
    }

    fn is_root(&self, v: &RootVec) -> bool {
        self.pos_index.contains_key(v) || self.pos_index.contains_key(&neg(v))
    }

    /// Coefficients of alpha^vee over the simple coroots.
    pub fn coroot_coeffs(&self, alpha: &RootVec) -> Vec<Rat> {
        let d_alpha = self.root_form(alpha, alpha) / rat_int(2);
        (0..self.rank)
            .map(|j| rat_int(alpha[j]) * &self.d[j] / &d_alpha)
            .collect()
    }

    /// Raw table bracket of two basis vectors.
    pub fn table_bracket(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim + j]
    }

    /// Bracket of two algebra elements.
    pub fn bracket(&self, x: &GElement, y: &GElement) -> Result<GElement, AlgebraError> {
        if x.algebra != self.cartan_type || y.algebra != self.cartan_type {
            return Err(AlgebraError::AlgebraMismatch);
        }
        if x.modulus != y.modulus {
            return Err(AlgebraError::ModulusMismatch {
                left: x.modulus,
                right: y.modulus,
            });
        }
        let m = x.modulus;
        let mut out = GElement::zero(self.cartan_type, m);
        for (i, a) in &x.coeffs {
            for (j, b) in &y.coeffs {
                let ab = a * b;
                if ab.is_zero() {
                    continue;
                }
                for (k, c) in self.table_bracket(*i, *j) {
                    let term = &ab * &CycloScalar::from_rational(m, c.clone());
                    out.add_term(*k, &term);
                }
            }
        }
        Ok(out)
    }

    /// Normalized invariant form.
    pub fn form(&self, x: &GElement, y: &GElement) -> Result<CycloScalar, AlgebraError> {
        if x.algebra != self.cartan_type || y.algebra != self.cartan_type {
            return Err(AlgebraError::AlgebraMismatch);
        }
        if x.modulus != y.modulus {
            return Err(AlgebraError::ModulusMismatch {
                left: x.modulus,
                right: y.modulus,
            });
        }
        let m = x.modulus;
        let np = self.num_pos();
        let mut acc = CycloScalar::zero(m);
        for (i, a) in &x.coeffs {
            if *i < 2 * np {
                if let Some((j, v)) = &self.form_pairs[*i] {
                    if let Some(b) = y.coeffs.get(j) {
                        acc += &(a * b) * &CycloScalar::from_rational(m, v.clone());
                    }
                }
            } else {
                let hi = *i - 2 * np;
                for hj in 0..self.rank {
                    if let Some(b) = y.coeffs.get(&self.cartan_index(hj)) {
                        acc += &(a * b)
                            * &CycloScalar::from_rational(m, self.form_cartan[hi][hj].clone());
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Form value between two basis vectors, as a rational.
    pub fn form_basis(&self, i: usize, j: usize) -> Rat {
        let np = self.num_pos();
        if i < 2 * np {
            match &self.form_pairs[i] {
                Some((jj, v)) if *jj == j => v.clone(),
                _ => Rat::zero(),
            }
        } else if j >= 2 * np {
            self.form_cartan[i - 2 * np][j - 2 * np].clone()
        } else {
            Rat::zero()
        }
    }

    /// The matrix of ad(x) over the full basis.
    pub fn ad_matrix(&self, x: &GElement) -> Result<Matrix, AlgebraError> {
        let m = x.modulus;
        let mut out = Matrix::zero(self.dim, self.dim, m);
        for j in 0..self.dim {
            let col = self.bracket(x, &GElement::basis(self.cartan_type, m, j))?;
            for (i, c) in &col.coeffs {
                *out.at_mut(*i, j) = c.clone();
            }
        }
        Ok(out)
    }
}

/// Build the simple Lie algebra of the given type and rank.
pub fn build_simple(t: CartanType) -> Result<SharedAlgebra, AlgebraError> {
    let cartan = cartan_matrix(t)?;
    let l = t.rank;
    let d = root_lengths(&cartan);

    // enumerate positive roots by height
    let mut roots: Vec<RootVec> = Vec::new();
    let mut seen: HashMap<RootVec, ()> = HashMap::new();
    let mut frontier: Vec<RootVec> = (0..l)
        .map(|i| {
            let mut v = vec![0i64; l];
            v[i] = 1;
            v
        })
        .collect();
    for r in &frontier {
        seen.insert(r.clone(), ());
    }
    roots.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next: Vec<RootVec> = Vec::new();
        for beta in &frontier {
            for i in 0..l {
                let mut ei = vec![0i64; l];
                ei[i] = 1;
                // p = max k with beta - k alpha_i a root
                let mut p = 0i64;
                let mut probe = sub(beta, &ei);
                while seen.contains_key(&probe) {
                    p += 1;
                    probe = sub(&probe, &ei);
                }
                let pairing: i64 = (0..l).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let up = add(beta, &ei);
                    if !seen.contains_key(&up) {
                        seen.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by(|a, b| root_order(a, b));
    let pos_index: HashMap<RootVec, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

    let mut alg = SimpleAlgebra {
        cartan_type: t,
        rank: l,
        cartan,
        d,
        positive_roots: roots,
        pos_index,
        dim: 0,
        table: Vec::new(),
        form_pairs: Vec::new(),
        form_cartan: Vec::new(),
    };
    let np = alg.num_pos();
    alg.dim = 2 * np + l;

    let n_pos = compute_sign_table(&alg);
    build_tables(&mut alg, &n_pos);
    Ok(Arc::new(alg))
}

/// N_{alpha,beta} for positive pairs with alpha+beta a positive root,
/// keyed by positive-root indices, both orientations stored.
fn compute_sign_table(alg: &SimpleAlgebra) -> HashMap<(usize, usize), Rat> {
    let mut n_pos: HashMap<(usize, usize), Rat> = HashMap::new();
    for (gi, gamma) in alg.positive_roots.iter().enumerate() {
        if height(gamma) == 1 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for ai in 0..gi {
            let alpha = &alg.positive_roots[ai];
            let beta = sub(gamma, alpha);
            if let Some(&bi) = alg.pos_index.get(&beta) {
                if ai <= bi {
                    pairs.push((ai, bi));
                }
            }
        }
        debug_assert!(!pairs.is_empty(), "positive root with no decomposition");
        pairs.sort();
        let (ei, hi) = pairs[0];
        let eps = alg.positive_roots[ei].clone();
        let eta = alg.positive_roots[hi].clone();
        let p = p_max(alg, &eps, &eta);
        let n_extra = rat_int(p + 1);
        n_pos.insert((ei, hi), n_extra.clone());
        n_pos.insert((hi, ei), -n_extra.clone());
        for &(ai, bi) in pairs.iter().skip(1) {
            let alpha = alg.positive_roots[ai].clone();
            let beta = alg.positive_roots[bi].clone();
            // Jacobi for (-alpha, eps, eta):
            //   N(-a,eps)N(eps-a,eta) + N(eps,eta)N(gamma,-a) + N(eta,-a)N(eta-a,eps) = 0
            let mut acc = Rat::zero();
            let eps_minus_a = sub(&eps, &alpha);
            if alg.is_root(&eps_minus_a) {
                acc += n_signed(alg, &n_pos, &neg(&alpha), &eps)
                    * n_signed(alg, &n_pos, &eps_minus_a, &eta);
            }
            let eta_minus_a = sub(&eta, &alpha);
            if alg.is_root(&eta_minus_a) {
                acc += n_signed(alg, &n_pos, &eta, &neg(&alpha))
                    * n_signed(alg, &n_pos, &eta_minus_a, &eps);
            }
            let n_gamma_neg_a = -acc / &n_extra;
            // N(gamma,-alpha) = -(beta,beta)/(gamma,gamma) N(alpha,beta)
            let n_ab = -alg.root_form(gamma, gamma) / alg.root_form(&beta, &beta) * n_gamma_neg_a;
            debug_assert!(n_ab.is_integer(), "structure constant must be integral");
            n_pos.insert((ai, bi), n_ab.clone());
            n_pos.insert((bi, ai), -n_ab);
        }
    }
    n_pos
}

fn p_max(alg: &SimpleAlgebra, alpha: &RootVec, beta: &RootVec) -> i64 {
    let mut p = 0;
    let mut probe = sub(beta, alpha);
    while alg.is_root(&probe) {
        p += 1;
        probe = sub(&probe, alpha);
    }
    p
}

/// N for arbitrary sign combinations, reduced to the positive table.
fn n_signed(
    alg: &SimpleAlgebra,
    n_pos: &HashMap<(usize, usize), Rat>,
    a: &RootVec,
    b: &RootVec,
) -> Rat {
    let a_pos = alg.pos_index.get(a);
    let b_pos = alg.pos_index.get(b);
    match (a_pos, b_pos) {
        (Some(&ia), Some(&ib)) => n_pos
            .get(&(ia, ib))
            .cloned()
            .expect("positive pair computed earlier"),
        (None, None) => {
            let ia = alg.pos_index[&neg(a)];
            let ib = alg.pos_index[&neg(b)];
            -n_pos.get(&(ia, ib)).cloned().expect("negative pair mirror")
        }
        (Some(_), None) => {
            // a = mu > 0, b = -nu
            let mu = a.clone();
            let nu = neg(b);
            let rho = sub(&mu, &nu);
            if alg.pos_index.contains_key(&rho) {
                // N(mu,-nu) = -(rho,rho)/(mu,mu) N(nu,rho)
                let inu = alg.pos_index[&nu];
                let irho = alg.pos_index[&rho];
                let base = n_pos.get(&(inu, irho)).cloned().expect("pair summing to mu");
                -alg.root_form(&rho, &rho) / alg.root_form(&mu, &mu) * base
            } else {
                // rho' = nu - mu positive; N(mu,-nu) = (rho',rho')/(nu,nu) N(rho',mu)
                let rho2 = sub(&nu, &mu);
                let irho = alg.pos_index[&rho2];
                let imu = alg.pos_index[&mu];
                let base = n_pos.get(&(irho, imu)).cloned().expect("pair summing to nu");
                alg.root_form(&rho2, &rho2) / alg.root_form(&nu, &nu) * base
            }
        }
        (None, Some(_)) => -n_signed(alg, n_pos, b, a),
    }
}

fn build_tables(alg: &mut SimpleAlgebra, n_pos: &HashMap<(usize, usize), Rat>) {
    let np = alg.num_pos();
    let dim = alg.dim;
    let l = alg.rank;
    let mut table: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim * dim];

    let signed_index = |alg: &SimpleAlgebra, v: &RootVec| -> Option<usize> {
        if let Some(&i) = alg.pos_index.get(v) {
            Some(i)
        } else {
            alg.pos_index.get(&neg(v)).map(|&i| i + np)
        }
    };

    // root-root brackets
    for i in 0..2 * np {
        let ri = alg.basis_root(i).unwrap();
        for j in 0..2 * np {
            let rj = alg.basis_root(j).unwrap();
            let s = add(&ri, &rj);
            let mut entry: Vec<(usize, Rat)> = Vec::new();
            if s.iter().all(|&c| c == 0) {
                // [x_alpha, x_{-alpha}] = alpha^vee  (for alpha the positive one)
                let (pos_root, sign) = if i < np {
                    (ri.clone(), Rat::one())
                } else {
                    (rj.clone(), -Rat::one())
                };
                for (hk, c) in alg.coroot_coeffs(&pos_root).into_iter().enumerate() {
                    if !c.is_zero() {
                        entry.push((2 * np + hk, sign.clone() * c));
                    }
                }
            } else if alg.is_root(&s) {
                let n = n_signed(alg, n_pos, &ri, &rj);
                debug_assert!(n.is_integer());
                entry.push((signed_index(alg, &s).unwrap(), n));
            }
            table[i * dim + j] = entry;
        }
    }

    // Cartan-root brackets
    for hi in 0..l {
        let h = 2 * np + hi;
        for j in 0..2 * np {
            let rj = alg.basis_root(j).unwrap();
            let c = alg.cartan_pairing(hi, &rj);
            if c != 0 {
                table[h * dim + j] = vec![(j, rat_int(c))];
                table[j * dim + h] = vec![(j, rat_int(-c))];
            }
        }
    }

    // form tables
    let mut form_pairs: Vec<Option<(usize, Rat)>> = vec![None; 2 * np];
    for i in 0..np {
        let rho = &alg.positive_roots[i];
        let v = rat_int(2) / alg.root_form(rho, rho);
        form_pairs[i] = Some((i + np, v.clone()));
        form_pairs[i + np] = Some((i, v));
    }
    let mut form_cartan = vec![vec![Rat::zero(); l]; l];
    #[allow(clippy::needless_range_loop)]
    for i in 0..l {
        for j in 0..l {
            form_cartan[i][j] = rat_int(alg.cartan[i][j]) / &alg.d[j];
        }
    }

    alg.table = table;
    alg.form_pairs = form_pairs;
    alg.form_cartan = form_cartan;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num::Signed;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    fn random_element(alg: &SimpleAlgebra, rng: &mut StdRng) -> GElement {
        let mut x = GElement::zero(alg.cartan_type, 1);
        for _ in 0..3 {
            let i = rng.gen_range(0..alg.dim);
            let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            x.add_term(i, &CycloScalar::from_rational(1, c));
        }
        x
    }

    #[test]
    fn dimensions_match_root_counts() {
        // oracle: closed-form root counts per type
        let cases = [
            ("A1", 2, 3),
            ("A2", 6, 8),
            ("A3", 12, 15),
            ("B2", 8, 10),
            ("B3", 18, 21),
            ("C3", 18, 21),
            ("D4", 24, 28),
            ("G2", 12, 14),
            ("F4", 48, 52),
            ("E6", 72, 78),
        ];
        for (name, num_roots, dim) in cases {
            let alg = build_simple(t(name)).unwrap();
            assert_eq!(2 * alg.num_pos(), num_roots, "{name} roots");
            assert_eq!(alg.dim, dim, "{name} dim");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_simple(CartanType { letter: CartanLetter::E, rank: 9 }).is_err());
        assert!(build_simple(CartanType { letter: CartanLetter::G, rank: 3 }).is_err());
        assert!(build_simple(CartanType { letter: CartanLetter::B, rank: 1 }).is_err());
    }

    #[test]
    fn sl2_matches_matrix_oracle() {
        // oracle: e, f, h as 2x2 matrices; commutators and trace form
        let alg = build_simple(t("A1")).unwrap();
        let e = GElement::basis(alg.cartan_type, 1, 0);
        let f = GElement::basis(alg.cartan_type, 1, 1);
        let h = GElement::basis(alg.cartan_type, 1, 2);
        let ef = alg.bracket(&e, &f).unwrap();
        assert_eq!(ef, h, "[e,f] = h");
        let he = alg.bracket(&h, &e).unwrap();
        assert_eq!(he, e.scale(&CycloScalar::from_int(1, 2)), "[h,e] = 2e");
        let hf = alg.bracket(&h, &f).unwrap();
        assert_eq!(hf, f.scale(&CycloScalar::from_int(1, -2)), "[h,f] = -2f");
        // form: (e,f) = tr(EF) = 1, (h,h) = tr(H^2) = 2, (h,e) = tr(HE) = 0
        assert_eq!(alg.form(&e, &f).unwrap(), CycloScalar::one(1));
        assert_eq!(alg.form(&h, &h).unwrap(), CycloScalar::from_int(1, 2));
        assert!(alg.form(&h, &e).unwrap().is_zero());
    }

    #[test]
    fn bracket_antisymmetry_on_basis() {
        for name in ["A2", "B2", "G2"] {
            let alg = build_simple(t(name)).unwrap();
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let x = GElement::basis(alg.cartan_type, 1, i);
                    let y = GElement::basis(alg.cartan_type, 1, j);
                    let xy = alg.bracket(&x, &y).unwrap();
                    let yx = alg.bracket(&y, &x).unwrap();
                    assert_eq!(xy, yx.neg(), "{name} [{i},{j}]");
                }
            }
        }
    }

    #[test]
    fn jacobi_exhaustive_small_types() {
        for name in ["A1", "A2", "B2", "G2"] {
            let alg = build_simple(t(name)).unwrap();
            for i in 0..alg.dim {
                let x = GElement::basis(alg.cartan_type, 1, i);
                for j in i..alg.dim {
                    let y = GElement::basis(alg.cartan_type, 1, j);
                    for k in j..alg.dim {
                        let z = GElement::basis(alg.cartan_type, 1, k);
                        let a = alg.bracket(&alg.bracket(&x, &y).unwrap(), &z).unwrap();
                        let b = alg.bracket(&alg.bracket(&y, &z).unwrap(), &x).unwrap();
                        let c = alg.bracket(&alg.bracket(&z, &x).unwrap(), &y).unwrap();
                        let sum = a.add(&b).add(&c);
                        assert!(sum.is_zero(), "{name} jacobi ({i},{j},{k}) = {sum:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_random_triples_larger_types() {
        let mut rng = StdRng::seed_from_u64(7);
        for name in ["A3", "C3", "D4", "F4"] {
            let alg = build_simple(t(name)).unwrap();
            for _ in 0..500 {
                let x = random_element(&alg, &mut rng);
                let y = random_element(&alg, &mut rng);
                let z = random_element(&alg, &mut rng);
                let a = alg.bracket(&alg.bracket(&x, &y).unwrap(), &z).unwrap();
                let b = alg.bracket(&alg.bracket(&y, &z).unwrap(), &x).unwrap();
                let c = alg.bracket(&alg.bracket(&z, &x).unwrap(), &y).unwrap();
                assert!(a.add(&b).add(&c).is_zero(), "{name} jacobi failed");
            }
        }
    }

    #[test]
    fn form_symmetric_invariant_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for name in ["A2", "B2", "G2", "C3"] {
            let alg = build_simple(t(name)).unwrap();
            for _ in 0..500 {
                let x = random_element(&alg, &mut rng);
                let y = random_element(&alg, &mut rng);
                let z = random_element(&alg, &mut rng);
                let sym = &alg.form(&x, &y).unwrap() - &alg.form(&y, &x).unwrap();
                assert!(sym.is_zero(), "{name} symmetry");
                let lhs = alg.form(&alg.bracket(&x, &y).unwrap(), &z).unwrap();
                let rhs = alg.form(&x, &alg.bracket(&y, &z).unwrap()).unwrap();
                assert!((&lhs - &rhs).is_zero(), "{name} invariance");
            }
        }
    }

    #[test]
    fn structure_constants_have_chevalley_magnitude() {
        // |N_{alpha,beta}| = p+1 for every root pair with alpha+beta a root
        for name in ["A2", "B2", "C3", "G2", "F4"] {
            let alg = build_simple(t(name)).unwrap();
            let np = alg.num_pos();
            for i in 0..2 * np {
                let a = alg.basis_root(i).unwrap();
                for j in 0..2 * np {
                    let b = alg.basis_root(j).unwrap();
                    let s = add(&a, &b);
                    if !alg.is_root(&s) {
                        continue;
                    }
                    let entry = alg.table_bracket(i, j);
                    assert_eq!(entry.len(), 1);
                    let p = p_max(&alg, &a, &b);
                    assert_eq!(
                        entry[0].1.abs(),
                        rat_int(p + 1),
                        "{name} |N| at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn long_roots_have_squared_length_two() {
        for name in ["A2", "B3", "C3", "G2", "F4"] {
            let alg = build_simple(t(name)).unwrap();
            let max_len = alg
                .positive_roots
                .iter()
                .map(|r| alg.root_form(r, r))
                .max()
                .unwrap();
            assert_eq!(max_len, rat_int(2), "{name} long root normalization");
        }
    }

    #[test]
    fn highest_root_pairing_is_one() {
        // (x_theta, x_{-theta}) = 1 for the highest (long) root theta
        let alg = build_simple(t("G2")).unwrap();
        let theta = alg.positive_roots.last().unwrap().clone();
        assert_eq!(alg.root_form(&theta, &theta), rat_int(2));
        let i = alg.pos_root_index(&theta).unwrap();
        let j = alg.neg_root_index(&theta).unwrap();
        assert_eq!(alg.form_basis(i, j), rat_int(1));
    }
}
