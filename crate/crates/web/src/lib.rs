//! Browser bindings: render a tiling, trace a curve, tabulate the limit
//! approximants. Each export takes and returns plain strings so the page
//! needs no bundler.
//!
//! The `*_impl` functions hold the logic and are what the native tests call.

use serde::Deserialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use truchet::cocycle::{gamma_sequence, l11_partial_series, nu_on_sequence, s_k};
use truchet::dynamics::{trace, Normal, State};
use truchet::mc::sample_normal;
use truchet::render::{render, Highlight, RenderOptions, Viewport};
use truchet::seq::{derive_seed, parse_over, sample_markov, MarkovParams, Sequence, Symbol};

/// Page settings. A sequence is the literal when one is given, otherwise a
/// Markov sample with persistence `p` (or `q`) from `seed`.
#[derive(Debug, Clone, Deserialize)]
#[serde(default)]
pub struct Settings {
    pub omega: String,
    pub omega_prime: String,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
    pub v: Option<String>,
    pub width: u32,
    pub height: u32,
    pub highlight: bool,
    pub shade: bool,
    pub dividing_lines: bool,
    pub budget: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            omega: String::new(),
            omega_prime: String::new(),
            p: 0.5,
            q: 0.5,
            seed: 1,
            v: None,
            width: 24,
            height: 24,
            highlight: true,
            shade: false,
            dividing_lines: false,
            budget: 20_000,
        }
    }
}

fn component(literal: &str, p: f64, seed: u64, index: u64) -> Result<Sequence, String> {
    if literal.trim().is_empty() {
        let params = MarkovParams::new(p).map_err(|e| e.to_string())?;
        Ok(sample_markov(params, derive_seed(seed, index)))
    } else {
        parse_over(literal.trim(), Sequence::constant(Symbol::Plus)).map_err(|e| e.to_string())
    }
}

impl Settings {
    pub fn parse(json: &str) -> Result<Settings, String> {
        serde_json::from_str(json).map_err(|e| format!("bad settings: {e}"))
    }

    pub fn state(&self) -> Result<State, String> {
        let v = match &self.v {
            Some(text) if !text.trim().is_empty() => text.parse::<Normal>()?,
            _ => sample_normal(self.seed),
        };
        Ok(State::new(
            component(&self.omega, self.p, self.seed, 0)?,
            component(&self.omega_prime, self.q, self.seed, 1)?,
            v,
        ))
    }
}

pub fn render_svg_impl(settings: &str) -> Result<String, String> {
    let s = Settings::parse(settings)?;
    let state = s.state()?;
    let options = RenderOptions {
        viewport: Viewport::centered(s.width, s.height),
        highlight: s.highlight.then_some(Highlight {
            v: state.v,
            budget: s.budget,
        }),
        shade_collapsed: s.shade,
        dividing_lines: s.dividing_lines,
    };
    render(&state.omega, &state.omega_prime, &options)
        .map(|r| r.svg)
        .map_err(|e| e.to_string())
}

pub fn trace_json_impl(settings: &str) -> Result<String, String> {
    let s = Settings::parse(settings)?;
    let result = trace(&s.state()?, s.budget).map_err(|e| e.to_string())?;
    Ok(json!({ "summary": result.record(), "normal": result.final_normal }).to_string())
}

pub fn limit_series_impl(m: f64, n: f64, kmax: u32) -> Result<String, String> {
    if !(m > 0.0 && n > 0.0) {
        return Err("m and n must be positive".into());
    }
    let kmax = kmax.clamp(1, 100_000) as usize;
    let l11 = l11_partial_series::<f64>(kmax);
    Ok(json!({
        "k": (0..=kmax).collect::<Vec<_>>(),
        "nu_on": nu_on_sequence(&m, &n, kmax),
        "l11_partial": std::iter::once(None).chain(l11.into_iter().map(Some)).collect::<Vec<_>>(),
        "gamma": gamma_sequence::<f64>(kmax),
        "s_k": (0..=kmax as u64).map(s_k::<f64>).collect::<Vec<_>>(),
    })
    .to_string())
}

/// SVG of the tiling around square (0,0) described by the JSON `settings`.
#[wasm_bindgen]
pub fn render_svg(settings: &str) -> Result<String, JsError> {
    render_svg_impl(settings).map_err(|e| JsError::new(&e))
}

/// Summary of the curve through square (0,0) as JSON.
#[wasm_bindgen]
pub fn trace_json(settings: &str) -> Result<String, JsError> {
    trace_json_impl(settings).map_err(|e| JsError::new(&e))
}

/// `{k, nu_on, l11_partial, gamma, s_k}` arrays for `k = 0..=kmax`.
#[wasm_bindgen]
pub fn limit_series(m: f64, n: f64, kmax: u32) -> Result<String, JsError> {
    limit_series_impl(m, n, kmax).map_err(|e| JsError::new(&e))
}
