//! Binary PPM (P6) output and the colour maps used by `plot`.

use std::f64::consts::PI;

use num_complex::Complex64;

pub type Rgb = [u8; 3];

pub const WHITE: Rgb = [255, 255, 255];

/// `P6\n<w> <h>\n255\n` followed by the pixels, row-major, top row first.
pub fn encode(width: usize, height: usize, pixels: &[Rgb]) -> Vec<u8> {
    assert_eq!(pixels.len(), width * height, "pixel count does not match the image size");
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(pixels.len() * 3);
    for p in pixels {
        out.extend_from_slice(p);
    }
    out
}

fn to_byte(c: f64) -> u8 {
    (c.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// HSL with full saturation; `hue` and `lightness` in `[0, 1]`.
pub fn hsl(hue: f64, lightness: f64) -> Rgb {
    let l = lightness.clamp(0.0, 1.0);
    let q = if l < 0.5 { 2.0 * l } else { 1.0 };
    let p = 2.0 * l - q;
    let channel = |t: f64| {
        let t = t.rem_euclid(1.0);
        if t < 1.0 / 6.0 {
            p + (q - p) * 6.0 * t
        } else if t < 0.5 {
            q
        } else if t < 2.0 / 3.0 {
            p + (q - p) * (2.0 / 3.0 - t) * 6.0
        } else {
            p
        }
    };
    [
        to_byte(channel(hue + 1.0 / 3.0)),
        to_byte(channel(hue)),
        to_byte(channel(hue - 1.0 / 3.0)),
    ]
}

/// Hue `arg(v)/2π`, lightness `1 − 2^{−|v|}`; non-finite values are white.
pub fn domain_color(v: Complex64) -> Rgb {
    if !v.is_finite() {
        return WHITE;
    }
    let hue = (v.arg() / (2.0 * PI)).rem_euclid(1.0);
    hsl(hue, 1.0 - (-v.norm()).exp2())
}

/// `log₁₀(r)` clamped to `[−16, 0]`, mapped linearly from black to white.
pub fn residual_gray(r: f64) -> Rgb {
    if r.is_nan() {
        return WHITE;
    }
    let lg = if r > 0.0 { r.log10() } else { -16.0 };
    let g = to_byte((lg.clamp(-16.0, 0.0) + 16.0) / 16.0);
    [g, g, g]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_payload() {
        let bytes = encode(2, 2, &[[1, 2, 3]; 4]);
        let header = b"P6\n2 2\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len() - header.len(), 12);
    }

    #[test]
    fn colour_map_limits() {
        assert_eq!(domain_color(Complex64::new(0.0, 0.0)), [0, 0, 0]);
        assert_eq!(domain_color(Complex64::new(1e6, 0.0)), WHITE);
        assert_eq!(domain_color(Complex64::new(f64::INFINITY, 0.0)), WHITE);
        // Positive reals are red at mid lightness.
        assert_eq!(hsl(0.0, 0.5), [255, 0, 0]);
        assert_eq!(hsl(1.0 / 3.0, 0.5), [0, 255, 0]);
        assert_eq!(residual_gray(1e-20), [0, 0, 0]);
        assert_eq!(residual_gray(1.0), WHITE);
        assert_eq!(residual_gray(1e-8), [128, 128, 128]);
    }
}
