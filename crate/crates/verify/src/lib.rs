//! Harness around the core crates: checks with JSON/CSV reports, page dumps,
//! summaries of `N Tot` and of the universal examples, and the combinatorial
//! and structural suites.

pub mod checks;
pub mod expr;
pub mod report;
pub mod suites;

pub use checks::{run_check, CheckId, Options, Overrides};
pub use expr::Expr;
pub use report::{render_reports, CheckReport, Format, PageCell, PageDump, Params, Verdict, WindowInfo, Witness};

use cosimp_core::cosimplicial::cn;
use cosimp_core::operations::cycle_in;
use cosimp_core::simplicial::Simp;
use cosimp_core::totalization::{phi_tot, NormTot, ShuffleTable, TotEval};
use cosimp_core::universal::{build_universal, antidiagonal_mismatch, Model, OrbitModels};
use cosimp_core::CoreError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parameters outside the window: {0}")]
    OutOfWindow(String),
    #[error("expression: {0}")]
    Expression(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `E^r` of `CN V` on every exact bidegree of the window `P × Q`.
pub fn page_dump(v: &Expr, r: usize, p_max: usize, q_max: usize) -> Result<PageDump, VerifyError> {
    let model = Model::new(cn(v.build(p_max, q_max)?, p_max, q_max));
    let page = model.page_at(r)?;
    Ok(PageDump {
        r,
        window: WindowInfo { p: p_max, q: q_max },
        entries: (0..=p_max)
            .flat_map(|p| (0..=q_max).map(move |n| (p, n)))
            .filter(|&(p, n)| page.window.exact_page(p, n, r))
            .map(|(p, n)| PageCell { s: p, t: n, dim: page.dim(p, n) })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotDegree {
    pub k: usize,
    pub dim: usize,
    /// Filtration `s` of each basis class of `H_k`: `F^{−s}` contains it and
    /// `F^{−s−1}` does not. `None` marks a class that `φ` sends to zero.
    pub filtration: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotSummary {
    pub v: String,
    pub ell: usize,
    pub levels: usize,
    pub chain_dims: Vec<usize>,
    pub homology: Vec<TotDegree>,
}

/// `H_k(N Tot^ℓ V)` for `k < levels` with the filtration read off through `φ_ℓ`.
pub fn tot_homology(v: &Expr, ell: usize, levels: usize) -> Result<TotSummary, VerifyError> {
    if levels == 0 {
        return Err(VerifyError::OutOfWindow("Q must be at least 1".into()));
    }
    let space = v.build(ell + 2, ell + levels + 1)?;
    let tot = NormTot::new(space.clone(), ell, levels)?;
    let h = tot.chain_complex().homology_data();
    let model = Model::new(cn(space, ell, levels + ell + 1));
    let mut ev = TotEval::new(&tot);
    let mut homology = Vec::new();
    for k in 0..levels {
        let mut filtration = Vec::new();
        for i in 0..h.betti(k) {
            let labels: Vec<Simp> = h.rep(k, i).iter().map(|y| Simp::from_slice(&[0, y as u16])).collect();
            let img = phi_tot(&mut ev, k, ell, ShuffleTable::Exact, &labels);
            let z = cycle_in(&model, k as i64, &img)?;
            filtration.push(model.filtration(k as i64, &z)?);
        }
        homology.push(TotDegree { k, dim: h.betti(k), filtration });
    }
    Ok(TotSummary {
        v: v.to_string(),
        ell,
        levels,
        chain_dims: (0..=levels).map(|k| tot.dim(k)).collect(),
        homology,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalSummary {
    pub s: usize,
    pub t: usize,
    pub window: WindowInfo,
    pub cells: Vec<PageCell>,
    pub e1: Vec<PageCell>,
    pub antidiagonal_mismatch: Option<String>,
    /// `E^∞` of the homotopy orbits, computed in columns up to `2s`.
    pub orbit_e_infinity: Vec<PageCell>,
}

fn cells(v: Vec<(usize, usize, usize)>) -> Vec<PageCell> {
    v.into_iter().map(|(s, t, dim)| PageCell { s, t, dim }).collect()
}

pub fn universal_summary(s: usize, t: usize, p_max: usize, q_max: usize) -> Result<UniversalSummary, VerifyError> {
    let u = build_universal(s, t, p_max, q_max)?;
    let orbit_e_infinity = if p_max >= 2 * s {
        let narrow = build_universal(s, t, 2 * s, q_max)?;
        cells(OrbitModels::new(&narrow, q_max).big.e_infinity().support())
    } else {
        Vec::new()
    };
    Ok(UniversalSummary {
        s,
        t,
        window: WindowInfo { p: p_max, q: q_max },
        cells: cells(u.cell_support()),
        e1: cells(u.e1_support()),
        antidiagonal_mismatch: antidiagonal_mismatch(&u),
        orbit_e_infinity,
    })
}
