//! The self-matching picture: `⌊jβ⌋` against `j`, the same graph moved by
//! `(−G_i, −G_{i−1})`, and the positions where the two disagree.

use std::fmt::Write as _;

use beatty_core::beatty::{k_window, mismatch_set};
use beatty_core::{BigInt, GFib};
use num_traits::ToPrimitive;

use crate::error::CliError;
use crate::table::{Cell, Table};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub j: i64,
    pub floor: BigInt,
    /// `⌊β(j + G_i)⌋ − G_{i−1}`, the translated graph read at `j`.
    pub overlay: BigInt,
    pub mismatch: bool,
}

#[derive(Debug, Clone)]
pub struct PlotData {
    pub from: i64,
    pub to: i64,
    pub rows: Vec<PlotRow>,
}

impl PlotData {
    pub fn build(g: &GFib, i: usize, from: i64, to: i64) -> Result<Self, CliError> {
        let unit = g.unit();
        let gi = g.get(i)?;
        let gprev = g.get(i.checked_sub(1).ok_or(beatty_core::Error::ZeroIndex)?)?;
        let reach = from.unsigned_abs().max(to.unsigned_abs());
        let k = k_window(g, i, reach)?;
        let marks: Vec<i64> = mismatch_set(g, i, -k, k)?
            .into_iter()
            .filter_map(|r| r.j.to_i64())
            .filter(|j| (from..=to).contains(j))
            .collect();
        let rows = (from..=to)
            .map(|j| {
                let jb = BigInt::from(j);
                PlotRow {
                    j,
                    floor: unit.floor_mul(&jb),
                    overlay: unit.floor_mul(&(&jb + gi)) - gprev,
                    mismatch: marks.binary_search(&j).is_ok(),
                }
            })
            .collect();
        Ok(PlotData { from, to, rows })
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(vec!["j", "floor", "overlay", "mismatch"]);
        for r in &self.rows {
            t.push(vec![
                Cell::from(r.j),
                Cell::from(r.floor.clone()),
                Cell::from(r.overlay.clone()),
                Cell::from(i64::from(r.mismatch)),
            ]);
        }
        t
    }

    fn value_range(&self) -> (f64, f64) {
        let vals = self.rows.iter().flat_map(|r| [&r.floor, &r.overlay]).filter_map(|v| v.to_f64());
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if lo > hi {
            (0.0, 1.0)
        } else if lo == hi {
            (lo, lo + 1.0)
        } else {
            (lo, hi)
        }
    }

    pub fn svg(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
        let _ = writeln!(
            s,
            r#"<g id="axes" stroke="black" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
        );
        if self.to > self.from {
            let span = (self.to - self.from) as f64;
            let (vlo, vhi) = self.value_range();
            let x = |j: i64| x0 + (j - self.from) as f64 / span * (x1 - x0);
            let y = |v: &BigInt| y0 - (v.to_f64().unwrap_or(vlo) - vlo) / (vhi - vlo) * (y0 - y1);
            let step_path = |pick: fn(&PlotRow) -> &BigInt| {
                let mut d = String::new();
                for (n, r) in self.rows.iter().enumerate() {
                    let (px, py) = (x(r.j), y(pick(r)));
                    if n == 0 {
                        let _ = write!(d, "M{px:.2} {py:.2}");
                    } else {
                        let _ = write!(d, " H{px:.2} V{py:.2}");
                    }
                }
                if let Some(last) = self.rows.last() {
                    let _ = write!(d, " H{:.2}", x(last.j) + (x1 - x0) / span);
                }
                d
            };
            let _ = writeln!(
                s,
                r##"<path id="graph" d="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
                step_path(|r| &r.floor)
            );
            let _ = writeln!(
                s,
                r##"<path id="overlay" d="{}" fill="none" stroke="#ff7f0e" stroke-width="1.5" stroke-dasharray="4 3"/>"##,
                step_path(|r| &r.overlay)
            );
            let _ = writeln!(s, r#"<g id="mismatches">"#);
            for r in self.rows.iter().filter(|r| r.mismatch) {
                let _ = writeln!(
                    s,
                    r##"<circle class="mismatch" data-j="{}" cx="{:.2}" cy="{:.2}" r="4" fill="#d62728"/>"##,
                    r.j,
                    x(r.j),
                    y(&r.overlay)
                );
            }
            let _ = writeln!(s, "</g>");
            let _ = writeln!(
                s,
                r#"<text x="{x0}" y="{}" font-family="monospace" font-size="12">{}</text>"#,
                y0 + 20.0,
                self.from
            );
            let _ = writeln!(
                s,
                r#"<text x="{x1}" y="{}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#,
                y0 + 20.0,
                self.to
            );
        }
        s.push_str("</svg>\n");
        s
    }

    /// Text grid: `#` the graph, `+` the shifted copy where it departs from
    /// the graph, and a bottom row with `!` under each mismatch.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        if self.rows.is_empty() {
            return s;
        }
        let lo = self.rows.iter().flat_map(|r| [&r.floor, &r.overlay]).min().cloned().unwrap_or_default();
        let hi = self.rows.iter().flat_map(|r| [&r.floor, &r.overlay]).max().cloned().unwrap_or_default();
        let label_w = lo.to_string().len().max(hi.to_string().len());
        let mut v = hi.clone();
        while v >= lo {
            let line: String = self
                .rows
                .iter()
                .map(|r| {
                    if r.floor == v {
                        '#'
                    } else if r.overlay == v {
                        '+'
                    } else {
                        ' '
                    }
                })
                .collect();
            let _ = writeln!(s, "{:>label_w$} |{}", v.to_string(), line.trim_end());
            v -= 1;
        }
        let _ = writeln!(s, "{:>label_w$} +{}", "", "-".repeat(self.rows.len()));
        let marks: String = self.rows.iter().map(|r| if r.mismatch { '!' } else { ' ' }).collect();
        let _ = writeln!(s, "{:>label_w$} |{}", "", marks.trim_end());
        s
    }
}
