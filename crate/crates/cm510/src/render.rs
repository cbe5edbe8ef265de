//! ASCII rendering of rims and rim pairs.
//!
//! A rim is drawn as its lattice path: edge `i` is a down-step `\` when `i`
//! lies in the rim and an up-step `/` otherwise. A pair is drawn as two
//! strands in one grid — the second rim placed maximally high underneath the
//! first, so the vertical gap above vertex `v` is exactly twice the
//! `t`-exponent of the canonical homomorphism from the lower module to the
//! upper one, and the strands touch precisely where that exponent vanishes.
//! Both strands move by one step per edge while their offset stays even, so
//! they can only share a cell with matching step directions; the merged
//! drawing stays unambiguous.

use crate::error::Result;
use crate::quiver::{canonical_hom_exponents, Rim};

fn heights(rim: &Rim) -> Vec<i64> {
    let n = rim.n();
    let mut h = Vec::with_capacity(n + 1);
    h.push(0i64);
    for i in 1..=n {
        let step = if rim.contains(i) { -1 } else { 1 };
        h.push(h[i - 1] + step);
    }
    h
}

struct Canvas {
    min: i64,
    rows: Vec<Vec<char>>,
}

impl Canvas {
    fn new(min: i64, max: i64, cols: usize) -> Self {
        let rows = (max - min).max(1) as usize;
        Canvas {
            min,
            rows: vec![vec![' '; cols]; rows],
        }
    }

    /// Draws one ±1 path; an up-step from height `a` fills the cell for the
    /// interval `[a, a+1)`, a down-step the cell for `[a-1, a)`.
    fn draw_path(&mut self, h: &[i64]) {
        for e in 0..h.len() - 1 {
            let up = h[e + 1] > h[e];
            let (row, ch) = if up { (h[e], '/') } else { (h[e] - 1, '\\') };
            self.rows[(row - self.min) as usize][e] = ch;
        }
    }

    fn render(&self, cols: usize) -> String {
        let mut lines: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().collect::<String>().trim_end().to_string())
            .collect();
        let labels: String = (1..=cols)
            .map(|i| char::from_digit((i % 10) as u32, 10).unwrap())
            .collect();
        lines.push(labels);
        lines.join("\n")
    }
}

/// The lattice path of a single rim, with an edge-label line (edge 10 is
/// printed as `0`).
pub fn render_rim(rim: &Rim) -> String {
    let h = heights(rim);
    let min = *h.iter().min().unwrap();
    let max = *h.iter().max().unwrap();
    let mut canvas = Canvas::new(min, max, rim.n());
    canvas.draw_path(&h);
    canvas.render(rim.n())
}

/// Both rims' paths in one grid: `upper` at its own heights and `lower`
/// raised as far as it can go without crossing, followed by the exponents of
/// the canonical map from the lower module into the upper one (the gap above
/// vertex `v` is twice that exponent).
pub fn render_profile(upper: &Rim, lower: &Rim) -> Result<String> {
    let q = canonical_hom_exponents(lower, upper)?;
    let n = upper.n();
    let hu = heights(upper);
    let hl: Vec<i64> = (0..=n).map(|v| hu[v] - 2 * q[v % n] as i64).collect();
    let min = *hu.iter().min().unwrap().min(hl.iter().min().unwrap());
    let max = *hu.iter().max().unwrap().max(hl.iter().max().unwrap());
    let mut canvas = Canvas::new(min, max, n);
    canvas.draw_path(&hu);
    canvas.draw_path(&hl);
    let mut out = canvas.render(n);
    let exps: Vec<String> = q.iter().map(|e| e.to_string()).collect();
    out.push_str(&format!(
        "\ncanonical map (lower -> upper) exponents at vertices 0..{}: {}",
        n - 1,
        exps.join(" ")
    ));
    Ok(out)
}
