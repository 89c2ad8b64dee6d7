use std::fmt::Write as _;

use super::{FactorizationScheme, Kind};

const CELL: usize = 4;

/// ASCII drawing of the rigged arrangement, one column per symbol. Line `n`
/// is on top; E-crossings show as `E` and F-crossings as `F` between the two
/// lines they swap, H-crossings as `*` on their line.
pub fn render_ascii(scheme: &FactorizationScheme) -> String {
    let n = scheme.n();
    let len = scheme.len();
    let width = (len + 1) * CELL;
    // rows 0..2n-1 top-down: even rows are lines, odd rows are gaps
    let mut grid: Vec<Vec<char>> = (0..2 * n - 1)
        .map(|r| vec![if r % 2 == 0 { '-' } else { ' ' }; width])
        .collect();
    let line_row = |j: usize| 2 * (n - j);
    for (k, s) in scheme.word().iter().enumerate() {
        let col = (k + 1) * CELL;
        match s.kind {
            Kind::H => grid[line_row(s.index)][col] = '*',
            Kind::E | Kind::F => {
                let gap = line_row(s.index) - 1;
                grid[gap][col] = if s.kind == Kind::E { 'E' } else { 'F' };
                grid[gap - 1][col] = '+';
                grid[gap + 1][col] = '+';
            }
        }
    }
    let mut out = String::new();
    for (r, row) in grid.iter().enumerate() {
        let label = if r % 2 == 0 {
            format!("{:>2} ", n - r / 2)
        } else {
            "   ".to_string()
        };
        let body: String = row.iter().collect();
        let _ = writeln!(out, "{label}{}", body.trim_end());
    }
    let mut footer = " ".repeat(3 + CELL);
    for s in scheme.word() {
        let tok = s.to_string();
        footer.push_str(&tok);
        footer.push_str(&" ".repeat(CELL.saturating_sub(tok.len()).max(1)));
    }
    let _ = writeln!(out, "{}", footer.trim_end());
    out
}

/// SVG drawing with E-pseudolines in blue, F-pseudolines in red and
/// H-crossings as bullets on the horizontal lines.
pub fn render_svg(scheme: &FactorizationScheme) -> String {
    const STEP: usize = 40;
    let n = scheme.n();
    let len = scheme.len();
    let width = (len + 2) * STEP;
    let height = (n + 1) * STEP;
    let x = |k: usize| k * STEP + STEP / 2;
    let y = |p: usize| (n + 1 - p) * STEP;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for (kind, colour) in [(Kind::E, "#1f4e9c"), (Kind::F, "#b0302a")] {
        // height of each pseudoline before each column
        let mut pos: Vec<usize> = (1..=n).collect();
        for (k, s) in scheme.word().iter().enumerate() {
            let mut next = pos.clone();
            if s.kind == kind {
                for p in next.iter_mut() {
                    if *p == s.index {
                        *p = s.index + 1;
                    } else if *p == s.index + 1 {
                        *p = s.index;
                    }
                }
            }
            for (a, b) in pos.iter().zip(&next) {
                let _ = writeln!(
                    out,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"2\"/>",
                    x(k),
                    y(*a),
                    x(k + 1),
                    y(*b)
                );
            }
            pos = next;
        }
    }
    for (k, s) in scheme.word().iter().enumerate() {
        if s.kind == Kind::H {
            let _ = writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"black\"/>",
                (x(k) + x(k + 1)) / 2,
                y(s.index)
            );
        }
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{s}</text>",
            (x(k) + x(k + 1)) / 2,
            height - 6
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_gl2() {
        let s = FactorizationScheme::parse("h1 f1 h2 e1").unwrap();
        let art = render_ascii(&s);
        assert_eq!(art.lines().count(), 4);
        assert_eq!(art.matches('*').count(), 2);
        assert_eq!(art.matches('F').count(), 1);
        assert!(art.lines().last().unwrap().contains("h1  f1  h2  e1"));
    }

    #[test]
    fn svg_has_bullets_and_segments() {
        let s = FactorizationScheme::parse("h1 f1 h2 e1").unwrap();
        let svg = render_svg(&s);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<line").count(), 2 * 2 * 4);
    }
}
