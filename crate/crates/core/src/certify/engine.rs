use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fga::{fga_mul, FreeGroupAlgElem};
use super::rank::{column_relation, rank_over_rationals};
use super::report::{FreenessReport, Status};
use super::words::{enumerate_words, letters, Letter, Word, WordKind};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, rank_mod, Matrix, MODULUS};
use crate::pbw::catalog::{build_element, build_solvable_element, ElementRef};
use crate::pbw::phi::{solvable_bindings, solvable_shift, weyl_bindings, weyl_shift};
use crate::scalars::{format_rat, RatFunc, Rational};
use crate::series::expr::{FracExpr, Model, SkewModel};
use crate::series::iter::{iter_invert, iter_mul, IterModel, IterPrec, IterSeries};
use crate::series::sampled::{SampleFrame, SampledModel, SampledSeries};
use crate::series::skew::{ss_invert, ss_mul, SkewSeries, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    /// `K(p; σ)` with `σ(t) = t - 1`, the image of `U(H)` under `Φ`.
    Weyl,
    /// `σ(t) = t + 1`, the two-dimensional solvable algebra.
    Solvable,
    /// Exact group algebra of the free group on `g, h`.
    Fga,
    /// Iterated Laurent series receiving `U(H)` directly.
    Iter,
}

impl FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weyl" => Ok(ModelId::Weyl),
            "solvable" => Ok(ModelId::Solvable),
            "fga" => Ok(ModelId::Fga),
            "iter" => Ok(ModelId::Iter),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelId::Weyl => "weyl",
            ModelId::Solvable => "solvable",
            ModelId::Fga => "fga",
            ModelId::Iter => "iter",
        })
    }
}

impl ModelId {
    pub fn shift(self) -> Option<Rational> {
        match self {
            ModelId::Weyl => Some(weyl_shift()),
            ModelId::Solvable => Some(solvable_shift()),
            ModelId::Fga | ModelId::Iter => None,
        }
    }

    pub fn bindings(self, window: Window) -> HashMap<String, SkewSeries> {
        match self {
            ModelId::Solvable => solvable_bindings(window),
            _ => weyl_bindings(window),
        }
    }

    /// Catalog element with the `[1+]NAME[^k]` decorations applied.
    pub fn element(self, name: &str) -> Result<FracExpr> {
        let r = ElementRef::parse(name)?;
        let base = match self {
            ModelId::Weyl | ModelId::Iter => build_element(&r.base)?,
            ModelId::Solvable => build_solvable_element(&r.base)?,
            ModelId::Fga => return Err(Error::UnknownName(format!("{name} is not a series element"))),
        };
        Ok(r.apply(base))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub window: Window,
    pub parallel: bool,
    /// Repeat once with doubled `prec` when the first window is inconclusive.
    pub retry: bool,
    /// Base sample point for the modular engine.
    pub t0: u64,
    /// Truncation of the `iter` model.
    pub caps: IterPrec,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            window: Window::default(),
            parallel: true,
            retry: true,
            t0: 0x1d2b_3c4d_5e6f_7081,
            caps: IterPrec::default(),
        }
    }
}

/// Images of all words, reusing the image of each word's prefix.
fn evaluate_words<E, F>(
    words: &[Word],
    letter_vals: &HashMap<Letter, E>,
    one: E,
    mul: F,
    parallel: bool,
) -> Result<Vec<E>>
where
    E: Clone + Send + Sync,
    F: Fn(&E, &E) -> Result<E> + Sync,
{
    let index: HashMap<&[Letter], usize> = words.iter().enumerate().map(|(i, w)| (w.0.as_slice(), i)).collect();
    let mut vals: Vec<E> = Vec::with_capacity(words.len());
    let mut start = 0;
    while start < words.len() {
        let len = words[start].len();
        let end = (start..words.len()).find(|&i| words[i].len() != len).unwrap_or(words.len());
        let done = &vals;
        let one = &one;
        let step = |i: usize| -> Result<E> {
            let w = &words[i].0;
            match w.split_last() {
                None => Ok(one.clone()),
                Some((last, prefix)) => {
                    let p = index.get(prefix).ok_or_else(|| Error::Internal("prefix missing".into()))?;
                    mul(&done[*p], &letter_vals[last])
                }
            }
        };
        let level: Vec<Result<E>> =
            if parallel { (start..end).into_par_iter().map(step).collect() } else { (start..end).map(step).collect() };
        for v in level {
            vals.push(v?);
        }
        start = end;
    }
    Ok(vals)
}

fn letter_images<E, I>(gens: &[E], kind: WordKind, inv: I) -> Result<HashMap<Letter, E>>
where
    E: Clone,
    I: Fn(&E) -> Result<E>,
{
    let mut out = HashMap::new();
    for l in letters(kind, gens.len()) {
        let v = if l.1 > 0 { gens[l.0].clone() } else { inv(&gens[l.0])? };
        out.insert(l, v);
    }
    Ok(out)
}

const SAMPLE_COLUMNS: i64 = 64;

fn sampled_rank_at(
    gens: &[FracExpr],
    model: ModelId,
    kind: WordKind,
    words: &[Word],
    frame: SampleFrame,
    radius: i64,
    parallel: bool,
) -> Result<usize> {
    let sm = SampledModel { frame, radius, bindings: model.bindings(frame.window) };
    let g: Vec<SampledSeries> = gens.iter().map(|e| e.eval(&sm)).collect::<Result<_>>()?;
    let lv = letter_images(&g, kind, |s| sm.inv(s))?;
    let vals =
        evaluate_words(words, &lv, sm.constant(&Rational::from_integer(1.into()))?, |a, b| sm.mul(a, b), parallel)?;
    let nlo = vals.iter().map(|s| s.low).min().unwrap();
    let nhi = vals
        .iter()
        .filter(|s| !s.exact)
        .map(|s| s.prec)
        .min()
        .unwrap_or_else(|| vals.iter().map(|s| s.prec).max().unwrap());
    let mlo = vals.iter().map(|s| s.mlo).max().unwrap();
    let mhi = vals.iter().map(|s| s.mhi).min().unwrap();
    if mhi < mlo {
        return Err(Error::SampleRangeExhausted);
    }
    let span = mhi - mlo;
    let ms: Vec<i64> = if span < SAMPLE_COLUMNS {
        (mlo..=mhi).collect()
    } else {
        (0..SAMPLE_COLUMNS).map(|k| mlo + k * span / (SAMPLE_COLUMNS - 1)).collect()
    };
    let rows: Vec<Vec<u64>> = vals
        .iter()
        .map(|s| (nlo..=nhi).flat_map(|n| ms.iter().map(move |&m| s.value(n, m).expect("in range"))).collect())
        .collect();
    Ok(rank_mod(rows))
}

/// Rank of the sampled coefficient matrix over 𝔽_p, `p = 2^61 - 1`.
///
/// A ℚ-relation between word images reduces to an 𝔽_p-relation between the
/// sampled rows, so full rank here proves ℚ-linear independence.
fn sampled_rank(
    gens: &[FracExpr],
    model: ModelId,
    kind: WordKind,
    words: &[Word],
    window: Window,
    opts: &CertifyOptions,
) -> Result<usize> {
    let mut radius = 256;
    let mut t0 = opts.t0;
    let mut singular = 0;
    let shift = model.shift().expect("series model");
    loop {
        let frame = SampleFrame::new(t0 % MODULUS, &shift, window)?;
        match sampled_rank_at(gens, model, kind, words, frame, radius, opts.parallel) {
            Err(Error::SampleRangeExhausted) if radius < 16384 => radius *= 2,
            Err(Error::SingularSample) if singular < 3 => {
                singular += 1;
                t0 = t0.wrapping_add(0x9e37_79b9_7f4a_7c15);
            }
            other => return other,
        }
    }
}

struct ExactOutcome {
    rank: usize,
    relation: Option<Vec<Rational>>,
    all_exact: bool,
}

fn exact_series_rank(
    gens: &[FracExpr],
    model: ModelId,
    kind: WordKind,
    words: &[Word],
    window: Window,
    parallel: bool,
) -> Result<ExactOutcome> {
    let shift = model.shift().expect("series model");
    let sm = SkewModel { shift: shift.clone(), window, bindings: model.bindings(window) };
    let g: Vec<SkewSeries> = gens.iter().map(|e| e.eval(&sm)).collect::<Result<_>>()?;
    let lv = letter_images(&g, kind, ss_invert)?;
    let vals = evaluate_words(words, &lv, SkewSeries::one(shift, window), ss_mul, parallel)?;
    let nlo = vals.iter().map(SkewSeries::low).min().unwrap();
    let all_exact = vals.iter().all(SkewSeries::is_exact);
    let nhi = vals
        .iter()
        .filter(|s| !s.is_exact())
        .map(SkewSeries::prec)
        .min()
        .unwrap_or_else(|| vals.iter().map(SkewSeries::prec).max().unwrap());
    let m: Vec<Vec<RatFunc>> =
        (nlo..=nhi).map(|n| vals.iter().map(|s| s.coeff(n).unwrap_or_else(RatFunc::zero)).collect()).collect();
    let rank = rank_over_rationals(&m);
    let relation = if rank < words.len() { column_relation(&m) } else { None };
    Ok(ExactOutcome { rank, relation, all_exact })
}

fn witness_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

/// Certifies ℚ-linear independence of the word images of series generators.
///
/// Truncated images can only yield CERTIFIED or INCONCLUSIVE; DEPENDENT is
/// reported only when every word image is an exact Laurent polynomial.
pub fn certify_series(
    names: &[String],
    gens: &[FracExpr],
    model: ModelId,
    kind: WordKind,
    max_len: usize,
    opts: &CertifyOptions,
) -> Result<FreenessReport> {
    let start = Instant::now();
    let words = enumerate_words(kind, gens.len(), max_len);
    let count = words.len();
    let mut window = opts.window;
    let attempts = if opts.retry { 2 } else { 1 };
    let mut last = None;
    for attempt in 0..attempts {
        let report = |rank: usize, status: Status, witness: Option<Vec<String>>, method: &str| FreenessReport {
            generators: names.to_vec(),
            model: model.to_string(),
            kind,
            max_word_length: max_len,
            window_low: Some(window.low),
            window_high: Some(window.high),
            word_count: count,
            rank,
            status,
            witness,
            elapsed_ms: start.elapsed().as_millis() as u64,
            method: method.into(),
        };
        match sampled_rank(gens, model, kind, &words, window, opts) {
            Ok(r) if r == count => return Ok(report(r, Status::Certified, None, "sampled")),
            Ok(_) | Err(Error::NotAUnit(_)) | Err(Error::SingularSample) | Err(Error::SampleRangeExhausted) => {}
            Err(e) => return Err(e),
        }
        let ex = exact_series_rank(gens, model, kind, &words, window, opts.parallel)?;
        if ex.rank == count {
            return Ok(report(ex.rank, Status::Certified, None, "exact"));
        }
        if ex.all_exact {
            let w = ex.relation.as_deref().map(witness_strings);
            return Ok(report(ex.rank, Status::Dependent, w, "exact"));
        }
        last = Some(report(ex.rank, Status::Inconclusive, None, "exact"));
        if attempt + 1 < attempts {
            window = Window::new(window.low, 2 * window.high);
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// Catalog names such as `S`, `1+S1^2` or `conj2dim`, evaluated in `model`.
pub fn certify_elements(
    elements: &[&str],
    model: ModelId,
    kind: WordKind,
    max_len: usize,
    opts: &CertifyOptions,
) -> Result<FreenessReport> {
    if model == ModelId::Fga {
        let gens: Vec<FreeGroupAlgElem> = elements.iter().map(|e| FreeGroupAlgElem::parse(e)).collect::<Result<_>>()?;
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        return certify_fga(&names, &gens, kind, max_len, opts.parallel);
    }
    let gens: Vec<FracExpr> = elements.iter().map(|e| model.element(e)).collect::<Result<_>>()?;
    let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    if model == ModelId::Iter {
        return certify_iter(&names, &gens, kind, max_len, opts);
    }
    certify_series(&names, &gens, model, kind, max_len, opts)
}

fn iter_rank(
    gens: &[FracExpr],
    kind: WordKind,
    words: &[Word],
    caps: IterPrec,
    parallel: bool,
) -> Result<ExactOutcome> {
    let im = IterModel { caps };
    let g: Vec<IterSeries> = gens.iter().map(|e| e.eval(&im)).collect::<Result<_>>()?;
    let lv = letter_images(&g, kind, iter_invert)?;
    let vals = evaluate_words(words, &lv, IterSeries::one(caps), iter_mul, parallel)?;
    let all_exact = vals.iter().all(IterSeries::is_exact);
    let mut support: Vec<(i64, i64, i64)> = vals.iter().flat_map(|v| v.known_coefficients()).map(|(k, _)| k).collect();
    support.sort();
    support.dedup();
    let m: Matrix = support
        .iter()
        .filter_map(|&(i, j, k)| vals.iter().map(|v| v.coeff(i, j, k)).collect::<Option<Vec<_>>>())
        .collect();
    let m = if m.is_empty() { vec![vec![Rational::zero(); words.len()]] } else { m };
    let r = rank(&m);
    let relation = (r < words.len()).then(|| {
        let mut v = kernel(&m, words.len()).remove(0);
        let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap();
        v.iter_mut().for_each(|c| *c = &*c / &lead);
        v
    });
    Ok(ExactOutcome { rank: r, relation, all_exact })
}

/// Certification in the iterated series model over `x, y, z, V`.
///
/// Only coefficients known in every word image enter the matrix; a retry
/// doubles every truncation cap.
pub fn certify_iter(
    names: &[String],
    gens: &[FracExpr],
    kind: WordKind,
    max_len: usize,
    opts: &CertifyOptions,
) -> Result<FreenessReport> {
    let start = Instant::now();
    let words = enumerate_words(kind, gens.len(), max_len);
    let attempts = if opts.retry { 2 } else { 1 };
    let mut caps = opts.caps;
    let mut last = None;
    for attempt in 0..attempts {
        let ex = match iter_rank(gens, kind, &words, caps, opts.parallel) {
            Err(Error::PrecisionExhausted(_)) => ExactOutcome { rank: 0, relation: None, all_exact: false },
            other => other?,
        };
        let status = if ex.rank == words.len() {
            Status::Certified
        } else if ex.all_exact {
            Status::Dependent
        } else {
            Status::Inconclusive
        };
        let report = FreenessReport {
            generators: names.to_vec(),
            model: ModelId::Iter.to_string(),
            kind,
            max_word_length: max_len,
            window_low: None,
            window_high: Some(caps.x),
            word_count: words.len(),
            rank: ex.rank,
            status,
            witness: (status == Status::Dependent).then(|| ex.relation.as_deref().map(witness_strings)).flatten(),
            elapsed_ms: start.elapsed().as_millis() as u64,
            method: "exact".into(),
        };
        if status != Status::Inconclusive {
            return Ok(report);
        }
        last = Some(report);
        if attempt + 1 < attempts {
            caps = IterPrec { x: 2 * caps.x, y: 2 * caps.y, z: 2 * caps.z };
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// Exact model: a rank deficit is a genuine dependency.
pub fn certify_fga(
    names: &[String],
    gens: &[FreeGroupAlgElem],
    kind: WordKind,
    max_len: usize,
    parallel: bool,
) -> Result<FreenessReport> {
    let start = Instant::now();
    let words = enumerate_words(kind, gens.len(), max_len);
    let lv = letter_images(gens, kind, FreeGroupAlgElem::inv_monomial)?;
    let vals = evaluate_words(&words, &lv, FreeGroupAlgElem::one(), |a, b| Ok(fga_mul(a, b)), parallel)?;
    let mut support: Vec<&Word> = vals.iter().flat_map(|v| v.terms().keys()).collect();
    support.sort();
    support.dedup();
    let m: Matrix = support.iter().map(|w| vals.iter().map(|v| v.coeff(w)).collect()).collect();
    let m = if m.is_empty() { vec![vec![Rational::zero(); words.len()]] } else { m };
    let r = rank(&m);
    let witness = (r < words.len()).then(|| {
        let mut v = kernel(&m, words.len()).remove(0);
        let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap();
        v.iter_mut().for_each(|c| *c = &*c / &lead);
        witness_strings(&v)
    });
    Ok(FreenessReport {
        generators: names.to_vec(),
        model: ModelId::Fga.to_string(),
        kind,
        max_word_length: max_len,
        window_low: None,
        window_high: None,
        word_count: words.len(),
        rank: r,
        status: if r == words.len() { Status::Certified } else { Status::Dependent },
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
        method: "exact".into(),
    })
}
