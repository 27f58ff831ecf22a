//! JSON wire formats for every value the command line reads and writes.
//!
//! Numbers are emitted in the shortest decimal form that round-trips, so a
//! written file re-parses into the identical in-memory value.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::delta::{DeltaDistribution, Pole};
use crate::dual::GapVector;
use crate::error::{Error, Result};
use crate::euler::{DiscreteSignal, GridMat};
use crate::exppoly::{ExpMat, ExpPoly, Term};
use crate::su2::QMat;
use crate::tol::Tolerances;

#[derive(Serialize, Deserialize)]
struct WireComplex {
    re: f64,
    im: f64,
}

impl From<C64> for WireComplex {
    fn from(c: C64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<WireComplex> for C64 {
    fn from(w: WireComplex) -> Self {
        C64::new(w.re, w.im)
    }
}

#[derive(Serialize, Deserialize)]
struct WirePole {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct WireDelta {
    poles: Vec<WirePole>,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    freq: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct WireExpMat {
    a: Vec<WireTerm>,
    b: Vec<WireTerm>,
}

#[derive(Serialize, Deserialize)]
struct WireSignal {
    u: Vec<WireComplex>,
}

#[derive(Serialize, Deserialize)]
struct WireQMat {
    a: WireComplex,
    b: WireComplex,
}

#[derive(Serialize, Deserialize)]
struct WireGrid {
    #[serde(rename = "N")]
    n: usize,
    samples: Vec<WireQMat>,
}

#[derive(Serialize, Deserialize)]
struct WireGap {
    xi: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct WireJob {
    #[serde(rename = "M")]
    m: usize,
    samples: Vec<WireQMat>,
}

fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    out.push('\n');
    out
}

pub fn delta_to_string(dist: &DeltaDistribution) -> String {
    render(&WireDelta {
        poles: dist
            .poles()
            .iter()
            .map(|p| WirePole {
                x: p.x,
                re: p.u.re,
                im: p.u.im,
            })
            .collect(),
    })
}

pub fn delta_from_str(s: &str) -> Result<DeltaDistribution> {
    let wire: WireDelta = parse(s)?;
    DeltaDistribution::new(
        wire.poles
            .into_iter()
            .map(|p| Pole {
                x: p.x,
                u: C64::new(p.re, p.im),
            })
            .collect(),
    )
}

fn poly_to_wire(p: &ExpPoly) -> Vec<WireTerm> {
    p.terms()
        .iter()
        .map(|t| WireTerm {
            freq: t.freq,
            re: t.coeff.re,
            im: t.coeff.im,
        })
        .collect()
}

fn poly_from_wire(terms: Vec<WireTerm>, tol: &Tolerances) -> ExpPoly {
    ExpPoly::normalize(
        terms
            .into_iter()
            .map(|t| Term::new(t.freq, C64::new(t.re, t.im)))
            .collect(),
        tol.eps_f,
        tol.eps_c,
    )
}

pub fn expmat_to_string(m: &ExpMat) -> String {
    render(&WireExpMat {
        a: poly_to_wire(&m.a),
        b: poly_to_wire(&m.b),
    })
}

/// Parses and re-normalizes with the given tolerances.
pub fn expmat_from_str(s: &str, tol: &Tolerances) -> Result<ExpMat> {
    let wire: WireExpMat = parse(s)?;
    Ok(ExpMat::new(
        poly_from_wire(wire.a, tol),
        poly_from_wire(wire.b, tol),
    ))
}

pub fn signal_to_string(signal: &DiscreteSignal) -> String {
    render(&WireSignal {
        u: signal.values().iter().map(|&c| c.into()).collect(),
    })
}

pub fn signal_from_str(s: &str) -> Result<DiscreteSignal> {
    let wire: WireSignal = parse(s)?;
    DiscreteSignal::new(wire.u.into_iter().map(C64::from).collect())
}

fn qmat_to_wire(q: &QMat) -> WireQMat {
    WireQMat {
        a: q.a.into(),
        b: q.b.into(),
    }
}

fn qmat_from_wire(w: WireQMat) -> QMat {
    QMat::new(w.a.into(), w.b.into())
}

pub fn grid_to_string(grid: &GridMat) -> String {
    render(&WireGrid {
        n: grid.len(),
        samples: grid.samples().iter().map(qmat_to_wire).collect(),
    })
}

pub fn grid_from_str(s: &str) -> Result<GridMat> {
    let wire: WireGrid = parse(s)?;
    if wire.n != wire.samples.len() {
        return Err(Error::LengthMismatch {
            expected: wire.n,
            got: wire.samples.len(),
        });
    }
    GridMat::new(wire.samples.into_iter().map(qmat_from_wire).collect())
}

pub fn gap_to_string(gap: &GapVector) -> String {
    render(&WireGap {
        xi: gap.gaps().to_vec(),
    })
}

pub fn gap_from_str(s: &str) -> Result<GapVector> {
    let wire: WireGap = parse(s)?;
    GapVector::new(wire.xi)
}

pub fn job_to_string(m: usize, samples: &[QMat]) -> String {
    render(&WireJob {
        m,
        samples: samples.iter().map(qmat_to_wire).collect(),
    })
}

pub fn job_from_str(s: &str) -> Result<(usize, Vec<QMat>)> {
    let wire: WireJob = parse(s)?;
    Ok((wire.m, wire.samples.into_iter().map(qmat_from_wire).collect()))
}
