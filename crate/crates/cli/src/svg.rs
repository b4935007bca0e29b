//! Static SVG figures for patches, polygons and switching pairs.
//!
//! Output is deterministic except for the leading version comment line.

use cyclopoly::{CyclotomicNumber, Patch, Polygon};

type Result<T> = std::result::Result<T, cyclopoly::CycError>;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.2;

struct Canvas {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
    body: String,
}

impl Canvas {
    fn new() -> Self {
        Canvas { min_x: 0.0, min_y: 0.0, max_x: 0.0, max_y: 0.0, body: String::new() }
    }

    fn cover(&mut self, pts: &[CyclotomicNumber]) {
        for p in pts {
            let (x, y) = p.embed_f64();
            self.min_x = self.min_x.min(x);
            self.min_y = self.min_y.min(y);
            self.max_x = self.max_x.max(x);
            self.max_y = self.max_y.max(y);
        }
    }

    /// Maps a point to pixel coordinates (y axis flipped).
    fn px(&self, p: &CyclotomicNumber) -> (f64, f64) {
        let (x, y) = p.embed_f64();
        (
            (x - self.min_x + MARGIN) * SCALE,
            (self.max_y - y + MARGIN) * SCALE,
        )
    }

    fn dots(&mut self, pts: &[CyclotomicNumber], radius: f64, style: &str) {
        let mut s = String::new();
        for p in pts {
            let (cx, cy) = self.px(p);
            s.push_str(&format!(
                "  <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{radius:.3}\" {style}/>\n"
            ));
        }
        self.body.push_str(&s);
    }

    fn outline(&mut self, pts: &[CyclotomicNumber], style: &str) {
        if pts.is_empty() {
            return;
        }
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.px(p);
            d.push_str(&format!("{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" }));
        }
        d.push('Z');
        self.body.push_str(&format!("  <path d=\"{d}\" fill=\"none\" {style}/>\n"));
    }

    fn finish(self) -> String {
        let w = (self.max_x - self.min_x + 2.0 * MARGIN) * SCALE;
        let h = (self.max_y - self.min_y + 2.0 * MARGIN) * SCALE;
        format!(
            "<!-- cyclopoly {} -->\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n{}</svg>\n",
            env!("CARGO_PKG_VERSION"),
            self.body
        )
    }
}

pub fn patch_figure(patch: &Patch) -> Result<String> {
    let mut c = Canvas::new();
    c.cover(patch.points());
    c.dots(patch.points(), 3.0, "fill=\"#222\"");
    Ok(c.finish())
}

pub fn polygon_figure(p: &Polygon) -> Result<String> {
    let mut c = Canvas::new();
    c.cover(p.vertices());
    c.outline(p.vertices(), "stroke=\"#1f5fbf\" stroke-width=\"1.5\"");
    c.dots(p.vertices(), 3.5, "fill=\"#1f5fbf\"");
    Ok(c.finish())
}

pub fn polygon_in_patch_figure(patch: &Patch, p: &Polygon) -> Result<String> {
    let mut c = Canvas::new();
    c.cover(patch.points());
    c.cover(p.vertices());
    c.dots(patch.points(), 2.5, "fill=\"#bbb\"");
    c.outline(p.vertices(), "stroke=\"#1f5fbf\" stroke-width=\"1.5\"");
    c.dots(p.vertices(), 3.5, "fill=\"#1f5fbf\"");
    Ok(c.finish())
}

pub fn counterexample_figure(
    patch: &Patch,
    p: &Polygon,
    f: &[CyclotomicNumber],
    fprime: &[CyclotomicNumber],
) -> Result<String> {
    let mut c = Canvas::new();
    c.cover(patch.points());
    c.cover(p.vertices());
    c.dots(patch.points(), 2.5, "fill=\"#ccc\"");
    c.outline(p.vertices(), "stroke=\"#888\" stroke-width=\"1.0\" stroke-dasharray=\"4 3\"");
    c.dots(f, 4.0, "fill=\"#1f5fbf\"");
    c.dots(fprime, 5.5, "fill=\"none\" stroke=\"#bf3f1f\" stroke-width=\"1.5\"");
    Ok(c.finish())
}
