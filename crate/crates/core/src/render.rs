//! SVG pictures of a tiling, with an optional traced curve, the squares
//! removed by collapsing shaded, and the dividing lines.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{tile_at, trace, Normal, State, TraceError};
use crate::renorm::is_kept;
use crate::seq::{Sequence, Symbol};

/// Pixels per unit square.
const SCALE: i64 = 20;
/// Largest accepted viewport side, in squares.
pub const MAX_VIEWPORT: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("invalid viewport: {0}")]
    InvalidViewport(String),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Squares `(m, n)` with `x0 ≤ m < x0 + width`, `y0 ≤ n < y0 + height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Viewport {
    pub x0: i64,
    pub y0: i64,
    pub width: u32,
    pub height: u32,
}

impl Viewport {
    /// The `width × height` window with square `(0, 0)` near its middle.
    pub fn centered(width: u32, height: u32) -> Viewport {
        Viewport {
            x0: -(i64::from(width) / 2),
            y0: -(i64::from(height) / 2),
            width,
            height,
        }
    }

    fn validate(&self) -> Result<(), RenderError> {
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::InvalidViewport("empty".into()));
        }
        if self.width > MAX_VIEWPORT || self.height > MAX_VIEWPORT {
            return Err(RenderError::InvalidViewport(format!(
                "{}x{} exceeds {MAX_VIEWPORT} squares per side",
                self.width, self.height
            )));
        }
        Ok(())
    }

    pub fn contains(&self, (m, n): (i64, i64)) -> bool {
        (self.x0..self.x0 + i64::from(self.width)).contains(&m)
            && (self.y0..self.y0 + i64::from(self.height)).contains(&n)
    }

    fn columns(&self) -> std::ops::Range<i64> {
        self.x0..self.x0 + i64::from(self.width)
    }

    fn rows(&self) -> std::ops::Range<i64> {
        self.y0..self.y0 + i64::from(self.height)
    }
}

/// Curve to draw: the one in square `(0, 0)` entered with normal `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Highlight {
    pub v: Normal,
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderOptions {
    pub viewport: Viewport,
    pub highlight: Option<Highlight>,
    pub shade_collapsed: bool,
    pub dividing_lines: bool,
}

impl RenderOptions {
    pub fn plain(viewport: Viewport) -> RenderOptions {
        RenderOptions {
            viewport,
            highlight: None,
            shade_collapsed: false,
            dividing_lines: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub svg: String,
    /// Squares of the highlighted curve, in traversal order, as returned by
    /// [`trace`].
    pub highlighted: Vec<(i64, i64)>,
    pub gray_columns: Vec<i64>,
    pub gray_rows: Vec<i64>,
}

// Screen coordinates of a point given in half-units: (2x, 2y).
struct Frame {
    x0: i64,
    top: i64,
}

impl Frame {
    fn pt(&self, hx: i64, hy: i64) -> (i64, i64) {
        ((hx - 2 * self.x0) * SCALE / 2, (2 * self.top - hy) * SCALE / 2)
    }
}

/// Quarter circle of radius ½ from edge midpoint `p` to edge midpoint `q`
/// of one square, centered at their common corner `c` (half-units).
fn arc(frame: &Frame, out: &mut String, p: (i64, i64), q: (i64, i64), c: (i64, i64), move_to: bool) {
    let (px, py) = frame.pt(p.0, p.1);
    let (qx, qy) = frame.pt(q.0, q.1);
    let (cx, cy) = frame.pt(c.0, c.1);
    let cross = (px - cx) * (qy - cy) - (py - cy) * (qx - cx);
    let sweep = (cross > 0) as u8;
    let r = SCALE / 2;
    if move_to {
        write!(out, "M{px} {py}").unwrap();
    }
    write!(out, "A{r} {r} 0 0 {sweep} {qx} {qy}").unwrap();
}

fn tile_arcs(frame: &Frame, tile: Symbol, m: i64, n: i64) -> String {
    let (cx, cy) = (2 * m + 1, 2 * n + 1);
    let corners: [(i64, i64); 2] = match tile {
        Symbol::Plus => [(-1, 1), (1, -1)],
        Symbol::Minus => [(-1, -1), (1, 1)],
    };
    let mut d = String::new();
    for (kx, ky) in corners {
        let c = (cx + kx, cy + ky);
        arc(frame, &mut d, (cx + kx, cy), (cx, cy + ky), c, true);
    }
    d
}

pub fn render(
    omega: &Sequence,
    omega_prime: &Sequence,
    options: &RenderOptions,
) -> Result<Rendered, RenderError> {
    let vp = options.viewport;
    vp.validate()?;
    let frame = Frame {
        x0: vp.x0,
        top: vp.y0 + i64::from(vp.height),
    };
    let w = i64::from(vp.width) * SCALE;
    let h = i64::from(vp.height) * SCALE;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(svg, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();

    let (gray_columns, gray_rows) = if options.shade_collapsed {
        (
            vp.columns().filter(|&m| !is_kept(omega, m)).collect(),
            vp.rows().filter(|&n| !is_kept(omega_prime, n)).collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    if options.shade_collapsed {
        writeln!(svg, r##"<g fill="#c8c8c8" stroke="none">"##).unwrap();
        for &m in &gray_columns {
            let (x, _) = frame.pt(2 * m, 0);
            writeln!(svg, r#"<rect x="{x}" y="0" width="{SCALE}" height="{h}"/>"#).unwrap();
        }
        for &n in &gray_rows {
            let (_, y) = frame.pt(0, 2 * n + 2);
            writeln!(svg, r#"<rect x="0" y="{y}" width="{w}" height="{SCALE}"/>"#).unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }

    writeln!(
        svg,
        r##"<g fill="none" stroke="#202020" stroke-width="1.5">"##
    )
    .unwrap();
    for n in vp.rows().rev() {
        for m in vp.columns() {
            let d = tile_arcs(&frame, tile_at(omega, omega_prime, m, n), m, n);
            writeln!(svg, r#"<path d="{d}"/>"#).unwrap();
        }
    }
    writeln!(svg, "</g>").unwrap();

    if options.dividing_lines {
        write_dividing_lines(&mut svg, &frame, omega, omega_prime, &vp, w, h);
    }

    let mut highlighted = Vec::new();
    if let Some(hl) = options.highlight {
        let state = State::new(omega.clone(), omega_prime.clone(), hl.v);
        let result = trace(&state, hl.budget)?;
        highlighted = result.visited.clone();
        let mut squares = result.visited;
        squares.push(result.final_displacement);
        // edge midpoint through which the curve enters each square
        let entry = |i: usize| -> (i64, i64) {
            if i == 0 {
                (1 - hl.v.x(), 1 - hl.v.y())
            } else {
                let (a, b) = squares[i - 1];
                let (c, d) = squares[i];
                (a + c + 1, b + d + 1)
            }
        };
        let mut d = String::new();
        let mut pen_down = false;
        for (i, &(m, n)) in squares.iter().enumerate().take(squares.len() - 1) {
            if !vp.contains((m, n)) {
                pen_down = false;
                continue;
            }
            let p = entry(i);
            let q = entry(i + 1);
            let c = (p.0 + q.0 - (2 * m + 1), p.1 + q.1 - (2 * n + 1));
            arc(&frame, &mut d, p, q, c, !pen_down);
            pen_down = true;
        }
        writeln!(
            svg,
            r##"<path d="{d}" fill="none" stroke="#d03020" stroke-width="4" stroke-linecap="round"/>"##
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(Rendered {
        svg,
        highlighted,
        gray_columns,
        gray_rows,
    })
}

fn write_dividing_lines(
    svg: &mut String,
    frame: &Frame,
    omega: &Sequence,
    omega_prime: &Sequence,
    vp: &Viewport,
    w: i64,
    h: i64,
) {
    writeln!(svg, r##"<g stroke="#2050c0" stroke-width="2">"##).unwrap();
    let style = |a: Symbol| {
        if a == Symbol::Minus {
            ""
        } else {
            r#" stroke-dasharray="4 3""#
        }
    };
    for m in vp.x0..vp.x0 + i64::from(vp.width) - 1 {
        let (a, b) = (omega.at(m), omega.at(m + 1));
        if a != b {
            let (x, _) = frame.pt(2 * m + 2, 0);
            writeln!(svg, r#"<line x1="{x}" y1="0" x2="{x}" y2="{h}"{}/>"#, style(a)).unwrap();
        }
    }
    for n in vp.y0..vp.y0 + i64::from(vp.height) - 1 {
        let (a, b) = (omega_prime.at(n), omega_prime.at(n + 1));
        if a != b {
            let (_, y) = frame.pt(0, 2 * n + 2);
            writeln!(svg, r#"<line x1="0" y1="{y}" x2="{w}" y2="{y}"{}/>"#, style(a)).unwrap();
        }
    }
    writeln!(svg, "</g>").unwrap();
}

#[cfg(test)]
#[path = "render_tests.rs"]
mod tests;
