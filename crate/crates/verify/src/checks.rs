//! The checks run by the harness. Each is a pure function of its parameters
//! and returns the offending bidegrees, empty on success.

use crate::expr::Expr;
use crate::report::{CheckReport, Params, Verdict, Witness};
use crate::VerifyError;
use cosimp_core::cosimplicial::cn;
use cosimp_core::operations::{
    bottom_via_xi, chi_phi, comodule_sides, cycle_in, nabla_aw, qm_alg, square_shuffle, tot_shuffle, TotSide,
};
use cosimp_core::simplicial::{omega, Constant, CsRef, Product};
use cosimp_core::totalization::{tensor_route_mismatches, NormTot, ShuffleTable, TotModule};
use cosimp_core::universal::{
    build_universal, e_pq, orbit_locus, antidiagonal_mismatch, operation_bidegree, small_model_e1_support, ss_operation,
    v_degree, Model, OrbitModels, UniversalExample,
};
use cosimp_core::CoreError;
use cosimp_gf2::{BitMatrix, BitVec, SparseVec};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum CheckId {
    #[value(name = "main-convergence")]
    MainConvergence,
    #[value(name = "tensor-products")]
    TensorProducts,
    #[value(name = "bottom-op")]
    BottomOp,
    #[value(name = "external-mult")]
    ExternalMult,
    #[value(name = "comodule-map")]
    ComoduleMap,
    #[value(name = "interchange-iso")]
    InterchangeIso,
    #[value(name = "fig1-shape")]
    OrbitShape,
    #[value(name = "fig2-shape")]
    BicomplexShape,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::MainConvergence,
        CheckId::TensorProducts,
        CheckId::BottomOp,
        CheckId::ExternalMult,
        CheckId::ComoduleMap,
        CheckId::InterchangeIso,
        CheckId::OrbitShape,
        CheckId::BicomplexShape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::MainConvergence => "main-convergence",
            CheckId::TensorProducts => "tensor-products",
            CheckId::BottomOp => "bottom-op",
            CheckId::ExternalMult => "external-mult",
            CheckId::ComoduleMap => "comodule-map",
            CheckId::InterchangeIso => "interchange-iso",
            CheckId::OrbitShape => "fig1-shape",
            CheckId::BicomplexShape => "fig2-shape",
        }
    }

    /// Parameters for the given overrides, with the window filled in from
    /// `s` and `t` where not given.
    pub fn params(self, o: &Overrides) -> Params {
        let (s0, t0) = match self {
            CheckId::OrbitShape | CheckId::BicomplexShape => (1, 2),
            _ => (1, 1),
        };
        let (s, t) = (o.s.unwrap_or(s0), o.t.unwrap_or(t0));
        let n = t.saturating_sub(s);
        let (p, q, ell) = match self {
            CheckId::MainConvergence | CheckId::BottomOp | CheckId::InterchangeIso => (2 * s, 2 * t + 3, 2 * s),
            CheckId::TensorProducts => {
                let ell = o.ell.unwrap_or(4);
                (ell, 4, ell)
            }
            CheckId::ExternalMult => {
                let ell = o.ell.unwrap_or(2 * s);
                (ell, 2 * n + ell + 4, ell)
            }
            CheckId::ComoduleMap => {
                let ell = o.ell.unwrap_or(2);
                (ell, 3, ell)
            }
            CheckId::OrbitShape => {
                let p = o.p.unwrap_or((2 * s).max(6));
                (p, 2 * t + 3, p)
            }
            CheckId::BicomplexShape => {
                let p = o.p.unwrap_or(2 * t + 2);
                (p, 2 * t + 2, p)
            }
        };
        Params {
            s,
            t,
            m: o.m,
            p: o.p.unwrap_or(p),
            q: o.q.unwrap_or(q),
            ell: o.ell.unwrap_or(ell),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub ell: Option<usize>,
}

impl Overrides {
    /// Fields of `other` take precedence.
    pub fn merge(&self, other: &Overrides) -> Overrides {
        Overrides {
            s: other.s.or(self.s),
            t: other.t.or(self.t),
            m: other.m.or(self.m),
            p: other.p.or(self.p),
            q: other.q.or(self.q),
            ell: other.ell.or(self.ell),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Shuffle table used by `tensor-products`.
    pub corrupt_shuffles: bool,
    /// Custom `V` for `tensor-products` and `comodule-map`.
    pub v: Option<Expr>,
    /// Record wall-clock durations; off by default so reports are reproducible.
    pub timing: bool,
}

fn window_error(what: String) -> VerifyError {
    VerifyError::OutOfWindow(what)
}

fn validate(id: CheckId, p: &Params) -> Result<(), VerifyError> {
    if p.s == 0 || p.t < p.s {
        return Err(VerifyError::BadParameters(format!("need 1 ≤ s ≤ t, got s = {}, t = {}", p.s, p.t)));
    }
    let (s, t) = (p.s, p.t);
    let n = t - s;
    let orbit_models = |p: &Params| -> Result<(), VerifyError> {
        if p.p < 2 * s {
            return Err(window_error(format!("P = {} < 2s = {}", p.p, 2 * s)));
        }
        if p.ell != 2 * s {
            return Err(window_error(format!("ell = {} must equal 2s = {}", p.ell, 2 * s)));
        }
        if p.q < 2 * t + 1 {
            return Err(window_error(format!("Q = {} < 2t+1 = {}", p.q, 2 * t + 1)));
        }
        Ok(())
    };
    match id {
        CheckId::MainConvergence => {
            orbit_models(p)?;
            if let Some(m) = p.m {
                let top = p.q - 2 * s - 1;
                if m < n || m + n > top {
                    return Err(window_error(format!("m = {m} outside [{n}, {}]", top - n)));
                }
            }
        }
        CheckId::BottomOp | CheckId::InterchangeIso => orbit_models(p)?,
        CheckId::TensorProducts | CheckId::ComoduleMap => {
            if p.q == 0 {
                return Err(window_error("Q must be at least 1".into()));
            }
        }
        CheckId::ExternalMult => {
            if p.ell < 2 * s {
                return Err(window_error(format!("ell = {} < 2s = {}", p.ell, 2 * s)));
            }
            let deg = 2 * n + 1;
            if deg + 1 + p.ell > p.q {
                return Err(window_error(format!("Q = {} < {}", p.q, deg + 1 + p.ell)));
            }
        }
        CheckId::OrbitShape => {
            if p.p < 2 * s || p.q < 2 * t + 1 {
                return Err(window_error(format!("need P ≥ {} and Q ≥ {}", 2 * s, 2 * t + 1)));
            }
        }
        CheckId::BicomplexShape => {
            if p.p < s + 1 || p.q < t + 2 {
                return Err(window_error(format!("need P ≥ {} and Q ≥ {}", s + 1, t + 2)));
            }
        }
    }
    Ok(())
}

/// Runs one check. Faults on out-of-window parameters; a failed identity
/// yields a report with verdict `fail` and its witnesses.
pub fn run_check(id: CheckId, overrides: &Overrides, options: &Options) -> Result<CheckReport, VerifyError> {
    let params = id.params(overrides);
    validate(id, &params)?;
    let start = Instant::now();
    let witnesses = match id {
        CheckId::MainConvergence => main_convergence(&params),
        CheckId::TensorProducts => {
            let table = if options.corrupt_shuffles { ShuffleTable::Corrupted } else { ShuffleTable::Exact };
            let space = space_or_omega(options, &params)?;
            tensor_products(space, params.ell, params.q, table)
        }
        CheckId::BottomOp => bottom_op(&params),
        CheckId::ExternalMult => external_mult(&params),
        CheckId::ComoduleMap => {
            let spaces = match &options.v {
                Some(e) => vec![e.build(params.ell + 2, params.ell + params.q + 1)?],
                None => vec![omega(params.s, params.t)?, Arc::new(Constant::simplex(1)) as CsRef],
            };
            spaces
                .into_iter()
                .flat_map(|v| comodule_map(v, params.ell, params.q))
                .collect()
        }
        CheckId::InterchangeIso => interchange_iso(&params),
        CheckId::OrbitShape => orbit_shape(&params),
        CheckId::BicomplexShape => bicomplex_shape(&params),
    };
    let duration_ms = if options.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(CheckReport {
        check: id.name().to_string(),
        params,
        verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        duration_ms,
        witnesses,
    })
}

fn space_or_omega(options: &Options, p: &Params) -> Result<CsRef, VerifyError> {
    match &options.v {
        Some(e) => e.build(p.ell + 2, p.ell + p.q + 1),
        None => Ok(omega(p.s, p.t)?),
    }
}

/// Records a failed computation as a witness at `at`.
fn attempt<T>(w: &mut Vec<Witness>, at: (usize, usize), what: &str, r: Result<T, CoreError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            w.push(Witness::new(at.0, at.1, format!("{what}: {e}")));
            None
        }
    }
}

struct Setup {
    u: UniversalExample,
    models: OrbitModels,
    side: TotSide,
    top: usize,
    x: SparseVec,
}

fn setup(p: &Params, w: &mut Vec<Witness>) -> Option<Setup> {
    let (s, t) = (p.s, p.t);
    let u = attempt(w, (s, t), "universal example", build_universal(s, t, 2 * s, p.q))?;
    let models = OrbitModels::new(&u, p.q);
    if let Some(e) = models.e1_iso_failure() {
        w.push(Witness::new(s, t, e));
        return None;
    }
    let top = p.q - 2 * s - 1;
    let side = attempt(w, (s, t), "N Tot", TotSide::new(u.space.clone(), 2 * s, top + 1))?;
    let h = side.homology();
    let n = t - s;
    for k in 0..=top {
        if h.betti(k) != usize::from(k == n) {
            w.push(Witness::new(s, t, format!("H_{k} N Tot has dimension {}", h.betti(k))));
        }
    }
    if !w.is_empty() {
        return None;
    }
    let x = h.rep(n, 0);
    Some(Setup { u, models, side, top, x })
}

fn main_convergence(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let (s, t, n) = (p.s, p.t, p.t - p.s);
    let Some(st) = setup(p, &mut w) else { return w };
    let um = Model::new(cn(st.u.space.clone(), 2 * s, p.q));
    let mut ev = st.side.eval();
    let phx = st.side.phi(&mut ev, n, &st.side.labels(&st.x));
    let Some(z) = attempt(&mut w, (s, t), "φ(x)", cycle_in(&um, n as i64, &phx)) else { return w };
    match um.filtration(n as i64, &z) {
        Ok(Some(f)) if f == s => {}
        other => w.push(Witness::new(s, t, format!("φ(x) has filtration {other:?}, expected {s}"))),
    }
    match um.einf_class(n as i64, s, &z) {
        Ok(c) if c == BitVec::from_ones(1, [0]) => {}
        other => w.push(Witness::new(s, t, format!("φ(x) has E^∞ class {other:?}"))),
    }
    let ms: Vec<usize> = match p.m {
        Some(m) => vec![m],
        None => (n..=st.top - n).collect(),
    };
    for m in ms {
        let Some((bp, bn)) = attempt(&mut w, (s, t), "bidegree", operation_bidegree(s, t, m)) else { continue };
        let deg = (n + m) as i64;
        let Some(v) = attempt(&mut w, (bp, bn), "v", v_degree(t, s, m)) else { continue };
        let Some(q) = attempt(&mut w, (bp, bn), "Q^m_alg", qm_alg(&st.side, &st.models.big, m, n, &st.x)) else {
            continue;
        };
        match st.models.big.filtration(deg, &q) {
            Ok(Some(f)) if f == v => {}
            other => {
                w.push(Witness::new(bp, bn, format!("m = {m}: Q^m_alg(x) has filtration {other:?}, expected {v}")));
                continue;
            }
        }
        let Some(lhs) = attempt(&mut w, (bp, bn), "abutment", st.models.big.einf_class(deg, v, &q)) else { continue };
        let op = ss_operation(&st.u, st.u.space.clone(), &st.u.bicomplex, &st.models.small, &st.u.iota(), m);
        let Some(op) = attempt(&mut w, (bp, bn), "spectral sequence operation", op) else { continue };
        let Some(rhs) = attempt(&mut w, (bp, bn), "E¹ iso", st.models.shuffle_einf(op.p, op.n, &op.class)) else {
            continue;
        };
        if lhs != rhs || lhs.is_zero() {
            w.push(Witness::new(bp, bn, format!("m = {m}: abutment {lhs:?} against operation {rhs:?}")));
        }
    }
    w
}

/// Both composites `(Tot U ⊗ Tot U)_q → T_ℓ C(NU ⊗ NU)` for every `ℓ' ≤ ℓ`,
/// `q ≤ levels`, and the bijectivity of `η` on the shuffle table in use.
pub fn tensor_products(space: CsRef, ell: usize, levels: usize, table: ShuffleTable) -> Vec<Witness> {
    let mut w = Vec::new();
    if let Some((p, q, z)) = table.eta_failure(ell + levels) {
        w.push(Witness::new(p, q, format!("η is not a bijection onto the shuffle table at cut {z}")));
    }
    for l in 0..=ell {
        let Some(tot) = attempt(&mut w, (l, 0), "N Tot", NormTot::new(space.clone(), l, levels)) else { continue };
        let tm = TotModule { tot: Arc::new(tot) };
        for (q, pair) in tensor_route_mismatches(&tm, &tm, l, levels, table) {
            w.push(Witness::new(l, q, format!("composites differ on {:?}", pair.as_slice())));
        }
    }
    w
}

fn bottom_op(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let (s, t, n) = (p.s, p.t, p.t - p.s);
    let Some(st) = setup(p, &mut w) else { return w };
    let at = (2 * s, 2 * t);
    let deg = (2 * n) as i64;
    let big = &st.models.big;
    let mut ev = st.side.eval();
    let mut ev2 = st.side.eval();
    let via_xi = st.side.zeta_phi(&mut ev, 2 * n, &bottom_via_xi(&st.side, n, &st.x));
    let pairs = square_shuffle(&st.side, n, &st.x);
    let squared = st.side.xi_chi_phi(&mut ev, &mut ev2, 2 * n, &pairs);
    let Some(a) = attempt(&mut w, at, "ξ∇(x⊗x)", cycle_in(big, deg, &via_xi)) else { return w };
    let Some(b) = attempt(&mut w, at, "external square", cycle_in(big, deg, &squared)) else { return w };
    let Some(c) = attempt(&mut w, at, "Q^{t-s}_alg", qm_alg(&st.side, big, n, n, &st.x)) else { return w };
    let Some(h) = attempt(&mut w, at, "homology", big.homology(deg)) else { return w };
    let coords: Vec<Option<BitVec>> = [&a, &b, &c].iter().map(|z| h.coordinates(z).ok()).collect();
    if coords.iter().any(|c| c.as_ref().is_none_or(|c| c.is_zero())) || coords[0] != coords[1] || coords[0] != coords[2] {
        w.push(Witness::new(at.0, at.1, format!("classes differ: {coords:?}")));
        return w;
    }
    match big.filtration(deg, &a) {
        Ok(Some(f)) if f == 2 * s => {}
        other => w.push(Witness::new(at.0, at.1, format!("filtration {other:?}, expected {}", 2 * s))),
    }
    let Some(lhs) = attempt(&mut w, at, "abutment", big.einf_class(deg, 2 * s, &a)) else { return w };
    let Some((ep, en, e)) = attempt(&mut w, at, "e_pq", e_pq(&st.models, n)) else { return w };
    let Some(rhs) = attempt(&mut w, at, "E¹ iso", st.models.shuffle_einf(ep, en, &e)) else { return w };
    if lhs != rhs {
        w.push(Witness::new(ep, en, format!("abutment {lhs:?} against e_pq {rhs:?}")));
    }
    w
}

fn external_mult(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let (s, t, ell) = (p.s, p.t, p.ell);
    let (n1, n2) = (t - s, t + 1 - s);
    let deg = n1 + n2;
    let at = (2 * s, deg + 2 * s);
    let (Ok(a), Ok(b)) = (omega(s, t), omega(s, t + 1)) else {
        w.push(Witness::new(s, t, "universal examples"));
        return w;
    };
    let Some(sa) = attempt(&mut w, (s, t), "N Tot U", TotSide::new(a.clone(), ell, n1 + 1)) else { return w };
    let Some(sb) = attempt(&mut w, (s, t + 1), "N Tot V", TotSide::new(b.clone(), ell, n2 + 1)) else { return w };
    let (ha, hb) = (sa.homology(), sb.homology());
    if ha.betti(n1) != 1 || hb.betti(n2) != 1 {
        w.push(Witness::new(s, t, "H(Tot) is not one-dimensional"));
        return w;
    }
    let (x, y) = (ha.rep(n1, 0), hb.rep(n2, 0));
    let pairs = tot_shuffle(&sa, &x, n1, &sb, &y, n2);
    let left = chi_phi(&sa, &sb, ell, deg, &pairs);
    let (mut ea, mut eb) = (sa.eval(), sb.eval());
    let px = sa.phi(&mut ea, n1, &sa.labels(&x));
    let py = sb.phi(&mut eb, n2, &sb.labels(&y));
    let right = nabla_aw(&a, &b, ell, &px, &py);
    let target = Model::new(cn(Arc::new(Product::new(a.clone(), b.clone())), ell, p.q));
    let d = deg as i64;
    let Some(l) = attempt(&mut w, at, "χφ(x×y)", cycle_in(&target, d, &left)) else { return w };
    let Some(r) = attempt(&mut w, at, "∇AW(φx⊗φy)", cycle_in(&target, d, &right)) else { return w };
    for (name, z) in [("χφ(x×y)", &l), ("∇AW(φx⊗φy)", &r)] {
        match target.filtration(d, z) {
            Ok(Some(f)) if f >= 2 * s => {}
            other => w.push(Witness::new(at.0, at.1, format!("{name} has filtration {other:?}, expected {}", 2 * s))),
        }
    }
    if !w.is_empty() {
        return w;
    }
    let Some(cl) = attempt(&mut w, at, "abutment", target.einf_class(d, 2 * s, &l)) else { return w };
    let Some(cr) = attempt(&mut w, at, "abutment", target.einf_class(d, 2 * s, &r)) else { return w };
    if cl != cr || cl.is_zero() {
        w.push(Witness::new(at.0, at.1, format!("E^∞ classes {cl:?} and {cr:?}")));
    }
    w
}

/// `ρ₃∘φ∘Nζ = (1⊗φ)∘(1⊗Nζ)∘ρ₂` on every basis element through `levels`.
pub fn comodule_map(space: CsRef, ell: usize, levels: usize) -> Vec<Witness> {
    let mut w = Vec::new();
    let Some(side) = attempt(&mut w, (0, 0), "N Tot", TotSide::new(space, ell, levels)) else { return w };
    let Some(oc) = attempt(&mut w, (0, 0), "orbit complex", side.orbit_complex(levels)) else { return w };
    let mut ev = side.eval();
    for q in 0..=levels {
        for lab in &oc.labels[q] {
            let (l, r) = comodule_sides(&side, &mut ev, q, lab);
            if l != r {
                w.push(Witness::new(0, q, format!("sides differ on {:?} ({} vs {} terms)", lab.as_slice(), l.len(), r.len())));
            }
        }
    }
    w
}

fn interchange_iso(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let (s, t, n) = (p.s, p.t, p.t - p.s);
    let Some(st) = setup(p, &mut w) else { return w };
    let Some(oc) = attempt(&mut w, (s, t), "orbit complex", st.side.orbit_complex(st.top + 1)) else { return w };
    let hd = oc.complex.homology_data();
    let mut ev = st.side.eval();
    for k in 0..=st.top {
        let Some(big_h) = attempt(&mut w, (0, k), "homology", st.models.big.homology(k as i64)) else { continue };
        if hd.betti(k) != big_h.dim() {
            w.push(Witness::new(0, k, format!("dimensions {} and {}", hd.betti(k), big_h.dim())));
            continue;
        }
        let mut cols = Vec::new();
        for i in 0..hd.betti(k) {
            let img = st.side.zeta_phi(&mut ev, k, &oc.terms(k, &hd.rep(k, i)));
            let Some(z) = attempt(&mut w, (0, k), "ζ", cycle_in(&st.models.big, k as i64, &img)) else { continue };
            match big_h.coordinates(&z) {
                Ok(c) => cols.push(c),
                Err(e) => w.push(Witness::new(0, k, e.to_string())),
            }
        }
        if BitMatrix::from_cols(big_h.dim(), &cols).rank() != hd.betti(k) {
            w.push(Witness::new(0, k, "H(ζ) is not injective"));
        }
        let expected = usize::from(k >= 2 * n);
        if big_h.dim() != expected {
            w.push(Witness::new(0, k, format!("H_{k} has dimension {}, expected {expected}", big_h.dim())));
        } else if expected == 1 {
            let v = v_degree(t, s, k - n).unwrap_or(usize::MAX);
            let f = st.models.big.filtration(k as i64, &big_h.basis()[0]);
            if f != Ok(Some(v)) {
                w.push(Witness::new(v, k + v, format!("filtration {f:?}, expected {v}")));
            }
        }
    }
    w
}

fn orbit_shape(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let (s, t) = (p.s, p.t);
    let Some(u) = attempt(&mut w, (s, t), "universal example", build_universal(s, t, 2 * s, p.q)) else { return w };
    let models = OrbitModels::new(&u, p.q);
    if let Some(e) = models.e1_iso_failure() {
        w.push(Witness::new(s, t, e));
    }
    for (name, model) in [("small", &models.small), ("big", &models.big)] {
        let einf = model.e_infinity();
        for (&(a, b), e) in &einf.entries {
            if e.dim() != usize::from(orbit_locus(s, t, a, b)) {
                w.push(Witness::new(a, b, format!("{name} model: E^∞ has dimension {}", e.dim())));
            }
        }
        match model.page_at(2) {
            Ok(e2) => {
                for (&(a, b), e) in &e2.entries {
                    if e.dim() != usize::from(orbit_locus(s, t, a, b)) {
                        w.push(Witness::new(a, b, format!("{name} model: E² has dimension {}", e.dim())));
                    }
                }
            }
            Err(e) => w.push(Witness::new(s, t, e.to_string())),
        }
    }
    if p.p > 2 * s {
        for (a, b, d) in small_model_e1_support(u.space.clone(), 2 * s + 1, p.p, p.q) {
            w.push(Witness::new(a, b, format!("E¹ has dimension {d} beyond column 2s")));
        }
    }
    w
}

fn bicomplex_shape(p: &Params) -> Vec<Witness> {
    let mut w = Vec::new();
    let Some(u) = attempt(&mut w, (p.s, p.t), "universal example", build_universal(p.s, p.t, p.p, p.q)) else {
        return w;
    };
    if let Some(e) = antidiagonal_mismatch(&u) {
        w.push(Witness::new(p.s, p.t, e));
    }
    w
}
