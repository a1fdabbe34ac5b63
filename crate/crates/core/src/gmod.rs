//! Graded modules over a Hopf algebra and the monoidal/functorial calculus:
//! free modules, shift, sums, tensor, dual, internal hom, restriction,
//! induction, coinduction, hom spaces and isomorphism testing.
//!
//! Degree convention for maps: a degree-t map f: M -> N satisfies
//! f(M_k) <= N_{k-t} (t is the amount by which f lowers degree; maps that
//! raise degree have negative t). This matches the internal degree of Ext
//! charts elsewhere in the crate.

use crate::f2::{BitMatrix, BitVec};
use crate::hopf::{HopfAlgebra, SubHopfInclusion};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum ModError {
    #[error("modules over different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    Invalid(String),
}

/// A finite-dimensional graded module, with one action matrix per algebra
/// generator (column j = image of basis j).
#[derive(Clone)]
pub struct Module {
    pub algebra: Arc<HopfAlgebra>,
    pub basis: Vec<(String, i32)>,
    pub acts: Vec<BitMatrix>,
}

impl Module {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].1
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.basis.iter().map(|b| b.1).collect();
        d.sort_unstable();
        d
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry(b.1).or_insert(0) += 1;
        }
        m
    }

    pub fn zero(algebra: &Arc<HopfAlgebra>) -> Module {
        Module {
            algebra: Arc::clone(algebra),
            basis: vec![],
            acts: vec![BitMatrix::zeros(0, 0); algebra.gens.len()],
        }
    }

    pub fn trivial(algebra: &Arc<HopfAlgebra>, deg: i32) -> Module {
        Module {
            algebra: Arc::clone(algebra),
            basis: vec![(format!("u{deg}"), deg)],
            acts: vec![BitMatrix::zeros(1, 1); algebra.gens.len()],
        }
    }

    /// the algebra as a left module over itself
    pub fn regular(algebra: &Arc<HopfAlgebra>) -> Module {
        let n = algebra.dim();
        let mut acts = Vec::with_capacity(algebra.gens.len());
        for &gi in &algebra.gens {
            let mut m = BitMatrix::zeros(n, n);
            for j in 0..n {
                m.set_col(j, &algebra.mult[gi][j]);
            }
            acts.push(m);
        }
        Module {
            algebra: Arc::clone(algebra),
            basis: algebra.basis.clone(),
            acts,
        }
    }

    /// action matrix of the i-th algebra basis element (via its generator word)
    pub fn rho_basis(&self, i: usize) -> BitMatrix {
        let mut m = BitMatrix::identity(self.dim());
        for &g in &self.algebra.words[i] {
            m = m.mul(&self.acts[g]);
        }
        m
    }

    /// action matrix of an arbitrary algebra element (coordinate vector)
    pub fn rho(&self, v: &BitVec) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.dim(), self.dim());
        for i in v.iter_ones() {
            out = out.add(&self.rho_basis(i));
        }
        out
    }

    /// Validation report: degree compatibility of the generator actions and
    /// multiplicativity of the induced representation on all basis pairs
    /// (which subsumes the defining relations of the algebra).
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for (g, act) in self.acts.iter().enumerate() {
            let gd = self.algebra.gen_degree(g);
            for j in 0..self.dim() {
                for i in act.col(j).iter_ones() {
                    if self.degree(i) != self.degree(j) + gd {
                        report.push(format!(
                            "action of generator {g} violates degrees at basis {}",
                            self.basis[j].0
                        ));
                    }
                }
            }
        }
        let n = self.algebra.dim();
        let rhos: Vec<BitMatrix> = (0..n).map(|i| self.rho_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = rhos[i].mul(&rhos[j]);
                let mut rhs = BitMatrix::zeros(self.dim(), self.dim());
                for t in self.algebra.mult[i][j].iter_ones() {
                    rhs = rhs.add(&rhos[t]);
                }
                if lhs != rhs {
                    report.push(format!(
                        "relation fails: {} * {}",
                        self.algebra.basis[i].0, self.algebra.basis[j].0
                    ));
                }
            }
        }
        report
    }
}

/// free module on the given generator degrees
pub fn free_module(algebra: &Arc<HopfAlgebra>, degrees: &[i32]) -> Module {
    let copies: Vec<Module> = degrees
        .iter()
        .map(|&d| shift(&Module::regular(algebra), d))
        .collect();
    if copies.is_empty() {
        return Module::zero(algebra);
    }
    direct_sum(&copies)
}

pub fn shift(m: &Module, t: i32) -> Module {
    Module {
        algebra: Arc::clone(&m.algebra),
        basis: m.basis.iter().map(|(n, d)| (n.clone(), d + t)).collect(),
        acts: m.acts.clone(),
    }
}

pub fn direct_sum(ms: &[Module]) -> Module {
    assert!(!ms.is_empty());
    let algebra = Arc::clone(&ms[0].algebra);
    let total: usize = ms.iter().map(|m| m.dim()).sum();
    let mut basis = Vec::with_capacity(total);
    for (k, m) in ms.iter().enumerate() {
        for (n, d) in &m.basis {
            basis.push((format!("{k}.{n}"), *d));
        }
    }
    let mut acts = Vec::new();
    for g in 0..algebra.gens.len() {
        let mut a = BitMatrix::zeros(total, total);
        let mut off = 0;
        for m in ms {
            for j in 0..m.dim() {
                for i in m.acts[g].col(j).iter_ones() {
                    a.set(off + i, off + j, true);
                }
            }
            off += m.dim();
        }
        acts.push(a);
    }
    Module { algebra, basis, acts }
}

pub fn tensor(m1: &Module, m2: &Module) -> Module {
    assert!(
        Arc::ptr_eq(&m1.algebra, &m2.algebra) || m1.algebra.name == m2.algebra.name,
        "tensor over different algebras"
    );
    let algebra = Arc::clone(&m1.algebra);
    let (n1, n2) = (m1.dim(), m2.dim());
    let mut basis = Vec::with_capacity(n1 * n2);
    for a in &m1.basis {
        for b in &m2.basis {
            basis.push((format!("{}*{}", a.0, b.0), a.1 + b.1));
        }
    }
    let rho1: Vec<BitMatrix> = (0..algebra.dim()).map(|i| m1.rho_basis(i)).collect();
    let rho2: Vec<BitMatrix> = (0..algebra.dim()).map(|i| m2.rho_basis(i)).collect();
    let mut acts = Vec::new();
    for (g, &gi) in algebra.gens.iter().enumerate() {
        let _ = g;
        let mut a = BitMatrix::zeros(n1 * n2, n1 * n2);
        for &(p, q) in &algebra.comult[gi] {
            a = a.add(&rho1[p as usize].kron(&rho2[q as usize]));
        }
        acts.push(a);
    }
    Module { algebra, basis, acts }
}

pub fn tensor_power(m: &Module, k: usize) -> Module {
    if k == 0 {
        return Module::trivial(&m.algebra, 0);
    }
    let mut out = m.clone();
    for _ in 1..k {
        out = tensor(&out, m);
    }
    out
}

/// F2-linear dual with the antipode-twisted action; degrees negated.
pub fn dual(m: &Module) -> Module {
    let algebra = Arc::clone(&m.algebra);
    let basis = m
        .basis
        .iter()
        .map(|(n, d)| (format!("{n}^"), -d))
        .collect();
    let mut acts = Vec::new();
    for (g, _) in algebra.gens.iter().enumerate() {
        let chi_g = algebra.antipode.col(algebra.gens[g]);
        acts.push(m.rho(&chi_g).transpose());
    }
    Module { algebra, basis, acts }
}

/// internal hom as dual(m) (x) n, with the evaluation map
/// m (x) hom(m,n) -> n materialized.
pub struct InternalHom {
    pub object: Module,
    /// evaluation: tensor(m, object) -> n, degree 0
    pub evaluation: ModuleMap,
}

pub fn internal_hom(m: &Module, n: &Module) -> InternalHom {
    let object = tensor(&dual(m), n);
    let src = tensor(m, &object);
    // ev(x_i (x) (x_j^ (x) y)) = delta_ij y
    let mut mat = BitMatrix::zeros(n.dim(), src.dim());
    let dm = m.dim();
    let dn = n.dim();
    for i in 0..dm {
        for y in 0..dn {
            // index of x_i (x) (x_i^ (x) y) in m (x) (m^ (x) n)
            let col = i * (dm * dn) + i * dn + y;
            mat.set(y, col, true);
        }
    }
    let evaluation = ModuleMap {
        source: src,
        target: n.clone(),
        degree: 0,
        matrix: mat,
    };
    InternalHom { object, evaluation }
}

/// evaluation m (x) dual(m) -> 1 (the invertibility witness)
pub fn evaluation_to_unit(m: &Module) -> ModuleMap {
    let unit = Module::trivial(&m.algebra, 0);
    internal_hom(m, &unit).evaluation
}

/// restriction along a sub-Hopf inclusion
pub fn restrict(inc: &SubHopfInclusion, m: &Module) -> Module {
    assert!(
        m.algebra.name == inc.ambient.name,
        "module not over the ambient algebra"
    );
    let mut acts = Vec::new();
    for &sg in &inc.sub.gens {
        acts.push(m.rho(&inc.embedding.col(sg)));
    }
    Module {
        algebra: Arc::clone(&inc.sub),
        basis: m.basis.clone(),
        acts,
    }
}

/// submodule spanned by the rows of `rows` (must be action-closed);
/// returns the module together with the inclusion matrix (amb.dim x sub.dim).
pub fn submodule(m: &Module, rows: &BitMatrix) -> (Module, BitMatrix) {
    let k = rows.rows();
    let incl = rows.transpose();
    let mut acts = Vec::new();
    let basis: Vec<(String, i32)> = (0..k)
        .map(|i| {
            let r = rows.row(i);
            let first = r.iter_ones().next().expect("zero row in submodule basis");
            (format!("s{i}"), m.degree(first))
        })
        .collect();
    for g in 0..m.algebra.gens.len() {
        let mut a = BitMatrix::zeros(k, k);
        for j in 0..k {
            let img = m.acts[g].mul_vec(&rows.row(j));
            let x = incl.solve(&img).expect("submodule rows not action-closed");
            a.set_col(j, &x);
        }
        acts.push(a);
    }
    (
        Module {
            algebra: Arc::clone(&m.algebra),
            basis,
            acts,
        },
        incl,
    )
}

/// quotient of m by the row space of `sub`; returns (module, projection q: m -> quot).
pub fn quotient(m: &Module, sub: &BitMatrix) -> (Module, BitMatrix) {
    let n = m.dim();
    let (r, pivots) = sub.rref();
    let mut is_p = vec![false; n];
    for &p in &pivots {
        is_p[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_p[c]).collect();
    let k = free.len();
    // projection: reduce a vector modulo the row space, take free coords
    let mut q = BitMatrix::zeros(k, n);
    for j in 0..n {
        let mut v = BitVec::from_indices(n, &[j]);
        for (i, &p) in pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&r.row(i));
            }
        }
        for (t, &f) in free.iter().enumerate() {
            if v.get(f) {
                q.set(t, j, true);
            }
        }
    }
    let basis: Vec<(String, i32)> = free
        .iter()
        .enumerate()
        .map(|(t, &f)| (format!("q{t}"), m.degree(f)))
        .collect();
    let mut acts = Vec::new();
    for g in 0..m.algebra.gens.len() {
        let mut a = BitMatrix::zeros(k, k);
        for (t, &f) in free.iter().enumerate() {
            let img = m.acts[g].col(f);
            a.set_col(t, &q.mul_vec(&img));
        }
        acts.push(a);
    }
    (
        Module {
            algebra: Arc::clone(&m.algebra),
            basis,
            acts,
        },
        q,
    )
}

/// induction A (x)_B m along an inclusion
pub fn induce(inc: &SubHopfInclusion, m: &Module) -> Module {
    assert!(m.algebra.name == inc.sub.name, "module not over the subalgebra");
    let a = &inc.ambient;
    let amod = Module::regular(a);
    let na = a.dim();
    let nm = m.dim();
    // big space A (x) m with diagonal-free left A-action on the A factor only
    let mut basis = Vec::with_capacity(na * nm);
    for x in &a.basis {
        for y in &m.basis {
            basis.push((format!("{}(x){}", x.0, y.0), x.1 + y.1));
        }
    }
    let mut acts_big = Vec::new();
    for g in 0..a.gens.len() {
        acts_big.push(amod.acts[g].kron(&BitMatrix::identity(nm)));
    }
    let big = Module {
        algebra: Arc::clone(a),
        basis,
        acts: acts_big,
    };
    // relations: (x * b) (x) y - x (x) (b y) for b in positive part of B
    let mut rows: Vec<BitVec> = Vec::new();
    let rho_b: Vec<BitMatrix> = (0..inc.sub.dim()).map(|i| m.rho_basis(i)).collect();
    for bidx in 0..inc.sub.dim() {
        if inc.sub.degree(bidx) == 0 {
            continue;
        }
        let bamb = inc.embedding.col(bidx);
        for x in 0..na {
            // x * b in A
            let mut xb = BitVec::zeros(na);
            for bi in bamb.iter_ones() {
                xb.xor_assign(&a.mult[x][bi]);
            }
            for y in 0..nm {
                let mut row = BitVec::zeros(na * nm);
                for t in xb.iter_ones() {
                    row.flip(t * nm + y);
                }
                for t in rho_b[bidx].col(y).iter_ones() {
                    row.flip(x * nm + t);
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let mut mat = BitMatrix::zeros(rows.len(), na * nm);
    for (i, r) in rows.iter().enumerate() {
        mat.set_row(i, r);
    }
    let sub = mat.row_space_basis();
    let (q, _) = quotient(&big, &sub);
    q
}

/// coinduction hom_B(A, m), realized as the dual construction
pub fn coinduce(inc: &SubHopfInclusion, m: &Module) -> Module {
    dual(&induce(inc, &dual(m)))
}

/// A degree-t module map (t = amount of degree lowering, f(M_k) <= N_{k-t}).
#[derive(Clone)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub degree: i32,
    pub matrix: BitMatrix,
}

impl ModuleMap {
    pub fn identity(m: &Module) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            matrix: BitMatrix::identity(m.dim()),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for j in 0..self.source.dim() {
            for i in self.matrix.col(j).iter_ones() {
                if self.target.degree(i) != self.source.degree(j) - self.degree {
                    report.push(format!("map not homogeneous of degree {}", self.degree));
                }
            }
        }
        for g in 0..self.source.algebra.gens.len() {
            let lhs = self.target.acts[g].mul(&self.matrix);
            let rhs = self.matrix.mul(&self.source.acts[g]);
            if lhs != rhs {
                report.push(format!("map does not commute with generator {g}"));
            }
        }
        report
    }
}

/// basis of the space of degree-t module maps m -> n
pub fn hom_space(m: &Module, n: &Module, t: i32) -> Vec<BitMatrix> {
    let (dm, dn) = (m.dim(), n.dim());
    let mut coords: Vec<(usize, usize)> = Vec::new();
    for j in 0..dm {
        for i in 0..dn {
            if n.degree(i) == m.degree(j) - t {
                coords.push((i, j));
            }
        }
    }
    let nv = coords.len();
    if nv == 0 {
        return vec![];
    }
    let cidx: BTreeMap<(usize, usize), usize> =
        coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    // equation per (generator, output row i2, input column j2):
    // sum_i an[i2,i] f[i,j2] + sum_j f[i2,j] am[j,j2] = 0
    let mut eqs: BTreeMap<(usize, usize, usize), BitVec> = BTreeMap::new();
    for g in 0..m.algebra.gens.len() {
        let am = &m.acts[g];
        let an = &n.acts[g];
        for (&(i, j), &k) in cidx.iter() {
            // term an[i2,i] f[i,j]: contributes to equation (g, i2, j)
            for i2 in an.col(i).iter_ones() {
                eqs.entry((g, i2, j))
                    .or_insert_with(|| BitVec::zeros(nv))
                    .flip(k);
            }
            // term f[i,j] am[j,j2]: contributes to equation (g, i, j2)
            for j2 in am.row(j).iter_ones() {
                eqs.entry((g, i, j2))
                    .or_insert_with(|| BitVec::zeros(nv))
                    .flip(k);
            }
        }
    }
    let rows: Vec<BitVec> = eqs.into_values().filter(|r| !r.is_zero()).collect();
    let mut mat = BitMatrix::zeros(rows.len(), nv);
    for (i, r) in rows.iter().enumerate() {
        mat.set_row(i, r);
    }
    let kern = mat.kernel_basis();
    let mut out = Vec::with_capacity(kern.rows());
    for r in 0..kern.rows() {
        let mut f = BitMatrix::zeros(dn, dm);
        for k in kern.row(r).iter_ones() {
            let (i, j) = coords[k];
            f.set(i, j, true);
        }
        out.push(f);
    }
    out
}

/// Outcome of an isomorphism search.
pub enum IsoVerdict {
    Yes(ModuleMap),
    /// proved non-isomorphic, with the separating invariant
    No(String),
    /// search budget exhausted
    Unknown,
}

/// Search for a degree-0 module isomorphism. Filters by graded dimensions,
/// then seeks an invertible element of the hom space: singles, greedy sums,
/// then exhaustive enumeration when the hom space is small.
pub fn is_module_iso(m: &Module, n: &Module) -> IsoVerdict {
    if m.dims_by_degree() != n.dims_by_degree() {
        return IsoVerdict::No("graded dimensions differ".into());
    }
    if m.dim() == 0 {
        return IsoVerdict::Yes(ModuleMap {
            source: m.clone(),
            target: n.clone(),
            degree: 0,
            matrix: BitMatrix::zeros(0, 0),
        });
    }
    let hs = hom_space(m, n, 0);
    if hs.is_empty() {
        return IsoVerdict::No("hom space is zero".into());
    }
    let mk = |mat: BitMatrix| -> IsoVerdict {
        IsoVerdict::Yes(ModuleMap {
            source: m.clone(),
            target: n.clone(),
            degree: 0,
            matrix: mat,
        })
    };
    for f in &hs {
        if f.rank() == m.dim() {
            return mk(f.clone());
        }
    }
    // greedy: add basis maps while rank grows
    let mut acc = BitMatrix::zeros(n.dim(), m.dim());
    for f in &hs {
        let cand = acc.add(f);
        if cand.rank() > acc.rank() {
            acc = cand;
        }
    }
    if acc.rank() == m.dim() {
        return mk(acc);
    }
    // deterministic pseudo-random combinations
    let mut rng = crate::testutil::SplitMix64::new(0x5EED_1500 ^ (m.dim() as u64));
    for _ in 0..512 {
        let mut f = BitMatrix::zeros(n.dim(), m.dim());
        for h in &hs {
            if rng.coin() {
                f = f.add(h);
            }
        }
        if f.rank() == m.dim() {
            return mk(f);
        }
    }
    if hs.len() <= 16 {
        for mask in 1u32..(1 << hs.len()) {
            let mut f = BitMatrix::zeros(n.dim(), m.dim());
            for (b, h) in hs.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    f = f.add(h);
                }
            }
            if f.rank() == m.dim() {
                return mk(f);
            }
        }
        return IsoVerdict::No("no invertible element in hom space".into());
    }
    IsoVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{builtin_a1, builtin_e1};

    #[test]
    fn free_module_dims() {
        let (a1, _) = builtin_a1();
        let f = free_module(&a1, &[0]);
        assert_eq!(f.dim(), 8);
        assert!(f.validate().is_empty());
        let e1 = builtin_e1();
        let f2 = free_module(&e1, &[0, 5]);
        assert_eq!(f2.dim(), 8);
        assert_eq!(f2.dims_by_degree()[&5], 1);
        assert_eq!(free_module(&a1, &[]).dim(), 0);
    }

    #[test]
    fn shift_involution_and_tensor_unit() {
        let e1 = builtin_e1();
        let one = Module::trivial(&e1, 0);
        let s = shift(&shift(&one, 2), -2);
        assert_eq!(s.degrees(), one.degrees());
        let m = Module::regular(&e1);
        let tm = tensor(&Module::trivial(&e1, 0), &m);
        assert_eq!(tm.degrees(), m.degrees());
        match is_module_iso(&tm, &m) {
            IsoVerdict::Yes(f) => assert!(f.validate().is_empty()),
            _ => panic!("1 (x) M should be isomorphic to M"),
        }
        // shift(1,3) concentrated in degree 3
        assert_eq!(shift(&one, 3).degrees(), vec![3]);
    }

    #[test]
    fn tensor_dims_kunneth() {
        let (a1, _) = builtin_a1();
        let m = Module::regular(&a1);
        let t = tensor(&m, &m);
        let dm = m.dims_by_degree();
        let dt = t.dims_by_degree();
        for (&k, &v) in &dt {
            let expect: usize = dm
                .iter()
                .map(|(&j, &a)| a * dm.get(&(k - j)).copied().unwrap_or(0))
                .sum();
            assert_eq!(v, expect);
        }
        assert!(t.validate().is_empty());
    }

    #[test]
    fn dual_props() {
        let (a1, _) = builtin_a1();
        let one = Module::trivial(&a1, 0);
        let d = dual(&one);
        assert_eq!(d.degrees(), vec![0]);
        // dual(free rank 1) ~ shift(free rank 1, -6)
        let f = free_module(&a1, &[0]);
        let df = dual(&f);
        let sf = shift(&f, -6);
        match is_module_iso(&df, &sf) {
            IsoVerdict::Yes(w) => assert!(w.validate().is_empty()),
            _ => panic!("A^* should be A[-6]"),
        }
        // double dual
        let e1 = builtin_e1();
        let m = free_module(&e1, &[1]);
        match is_module_iso(&dual(&dual(&m)), &m) {
            IsoVerdict::Yes(_) => {}
            _ => panic!("double dual"),
        }
    }

    #[test]
    fn restrict_identity_and_free() {
        let (a1, inc) = builtin_a1();
        let m = Module::regular(&a1);
        let id_inc = SubHopfInclusion::identity(&a1);
        let r = restrict(&id_inc, &m);
        assert_eq!(r.degrees(), m.degrees());
        let re = restrict(&inc, &m);
        assert!(re.validate().is_empty());
        assert_eq!(re.dim(), 8);
    }

    #[test]
    fn induce_regular_gives_ambient() {
        let (a1, inc) = builtin_a1();
        let e1m = Module::regular(&inc.sub);
        let ind = induce(&inc, &e1m);
        assert_eq!(ind.dim(), 8);
        assert!(ind.validate().is_empty());
        match is_module_iso(&ind, &Module::regular(&a1)) {
            IsoVerdict::Yes(_) => {}
            _ => panic!("A (x)_B B should be A"),
        }
    }

    #[test]
    fn coinduce_dims_and_adjunction() {
        let (_, inc) = builtin_a1();
        let one_e = Module::trivial(&inc.sub, 0);
        let co = coinduce(&inc, &one_e);
        assert_eq!(co.dim(), 2);
        assert!(co.validate().is_empty());
        assert_eq!(co.degrees(), vec![-2, 0]);
        // adjunction dims: Hom_A(induce M, N) = Hom_B(M, restrict N)
        let mut rng = crate::testutil::SplitMix64::new(99);
        for _ in 0..4 {
            let d1 = (rng.below(3) as i32) - 1;
            let m = Module::trivial(&inc.sub, d1);
            let napp = free_module(&inc.ambient, &[0]);
            for t in -2..=2 {
                let lhs = hom_space(&induce(&inc, &m), &napp, t).len();
                let rhs = hom_space(&m, &restrict(&inc, &napp), t).len();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hom_space_examples() {
        let (a1, _) = builtin_a1();
        let one = Module::trivial(&a1, 0);
        assert_eq!(hom_space(&one, &one, 0).len(), 1);
        let a = Module::regular(&a1);
        // hom(A, 1) in degree 0: the counit only
        assert_eq!(hom_space(&a, &one, 0).len(), 1);
    }

    #[test]
    fn iso_verdicts() {
        let (a1, _) = builtin_a1();
        let one = Module::trivial(&a1, 0);
        match is_module_iso(&one, &shift(&one, 0)) {
            IsoVerdict::Yes(_) => {}
            _ => panic!(),
        }
        match is_module_iso(&one, &shift(&one, 1)) {
            IsoVerdict::No(reason) => assert!(reason.contains("dimensions")),
            _ => panic!(),
        }
    }
}
