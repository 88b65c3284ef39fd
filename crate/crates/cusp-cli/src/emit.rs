//! Deterministic CSV and SVG emission for rendered cusp samples.

use num_complex::Complex64;

/// Which real coordinate of a complex sample feeds a figure axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Re,
    Im,
}

impl Axis {
    fn parse_one(s: &str) -> Result<Axis, String> {
        match s.trim() {
            "re" => Ok(Axis::Re),
            "im" => Ok(Axis::Im),
            other => Err(format!("unknown axis '{other}', expected 're' or 'im'")),
        }
    }

    /// Parses a pair such as `re,re` or `re,im`.
    pub fn parse_pair(spec: &str) -> Result<(Axis, Axis), String> {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("axis spec '{spec}' must have two comma-separated parts"));
        }
        Ok((Axis::parse_one(parts[0])?, Axis::parse_one(parts[1])?))
    }

    pub fn project(self, c: Complex64) -> f64 {
        match self {
            Axis::Re => c.re,
            Axis::Im => c.im,
        }
    }
}

/// CSV table of the samples with a fixed header row.
pub fn csv_table(samples: &[(Complex64, Complex64)]) -> String {
    let mut out = String::from("re_z,im_z,re_w,im_w\n");
    for (z, w) in samples {
        out.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e}\n",
            z.re, z.im, w.re, w.im
        ));
    }
    out
}

/// SVG projection of the samples: one closed polyline per radial ring.
pub fn svg_figure(
    samples: &[(Complex64, Complex64)],
    angular_steps: usize,
    axes: (Axis, Axis),
) -> String {
    assert!(angular_steps > 0, "angular step count must be positive");
    assert!(
        samples.len() % angular_steps == 0,
        "samples must fill whole rings"
    );
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|(z, w)| (axes.0.project(*z), axes.1.project(*w)))
        .collect();
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let size = 640.0;
    let margin = 40.0;
    let inner = size - 2.0 * margin;
    let xspan = (xmax - xmin).max(1e-9);
    let yspan = (ymax - ymin).max(1e-9);
    let place = |(x, y): (f64, f64)| {
        (
            margin + (x - xmin) / xspan * inner,
            size - margin - (y - ymin) / yspan * inner,
        )
    };
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n",
    );
    for ring in pts.chunks(angular_steps) {
        let mut coords: Vec<String> = ring
            .iter()
            .map(|&p| {
                let (x, y) = place(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let first = coords[0].clone();
        coords.push(first);
        out.push_str("<polyline fill=\"none\" stroke=\"#335577\" stroke-width=\"1\" points=\"");
        out.push_str(&coords.join(" "));
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples() -> Vec<(Complex64, Complex64)> {
        (0..6)
            .map(|k| {
                let t = k as f64;
                (
                    Complex64::new(t, -t),
                    Complex64::new(t * t, 0.5 * t),
                )
            })
            .collect()
    }

    #[test]
    fn csv_has_header_and_one_line_per_sample() {
        let table = csv_table(&samples());
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "re_z,im_z,re_w,im_w");
        assert!(lines[1].starts_with("0.00000000000e0,"));
        assert_eq!(lines[2].split(',').count(), 4);
    }

    #[test]
    fn svg_draws_one_closed_polyline_per_ring() {
        let svg = svg_figure(&samples(), 3, (Axis::Re, Axis::Re));
        assert_eq!(svg.matches("<polyline").count(), 2);
        let ring = svg.split("points=\"").nth(1).unwrap();
        let coords: Vec<&str> = ring.split('"').next().unwrap().split(' ').collect();
        assert_eq!(coords.len(), 4);
        assert_eq!(coords.first(), coords.last());
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn axis_specs_parse_and_project() {
        assert_eq!(Axis::parse_pair("re,im").unwrap(), (Axis::Re, Axis::Im));
        assert!(Axis::parse_pair("re").is_err());
        assert!(Axis::parse_pair("re,up").is_err());
        let c = Complex64::new(3.0, -4.0);
        assert_eq!(Axis::Re.project(c), 3.0);
        assert_eq!(Axis::Im.project(c), -4.0);
    }

    #[test]
    fn emission_is_deterministic() {
        let s = samples();
        assert_eq!(csv_table(&s), csv_table(&s));
        let a = svg_figure(&s, 2, (Axis::Re, Axis::Im));
        let b = svg_figure(&s, 2, (Axis::Re, Axis::Im));
        assert_eq!(a, b);
    }
}
