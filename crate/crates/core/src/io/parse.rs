use super::InputFormat;
use crate::error::{Error, Result};
use crate::geometry::{Point2, PointSet};

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// Reads a point set; input order becomes index order.
///
/// * CSV: one `x,y` pair per line. A first line that is not numeric is taken
///   as a header and skipped.
/// * JSON: an array of `[x, y]` arrays.
/// * Ipe: the `pos` of every `<use>` element, with any `matrix` on the
///   element or its enclosing groups applied.
pub fn parse_points(bytes: &[u8], format: InputFormat) -> Result<PointSet> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        parse_error(format!("byte {}", e.valid_up_to()), "input is not valid UTF-8")
    })?;
    let points = match format {
        InputFormat::Csv => parse_csv(text)?,
        InputFormat::Json => parse_json(text)?,
        InputFormat::Ipe => parse_ipe(text)?,
    };
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    PointSet::new(points)
}

fn parse_csv(text: &str) -> Result<Vec<Point2>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let loc = format!("line {line}");
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(parse_error(loc, format!("expected 2 fields, found {}", record.len())));
        }
        let x = record[0].parse::<f64>();
        let y = record[1].parse::<f64>();
        match (x, y) {
            (Ok(x), Ok(y)) => points.push(Point2::new(x, y)),
            _ if i == 0 => continue,
            _ => return Err(parse_error(loc, format!("expected numbers, found `{},{}`", &record[0], &record[1]))),
        }
    }
    Ok(points)
}

fn parse_json(text: &str) -> Result<Vec<Point2>> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| {
        parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    Ok(pairs.into_iter().map(|[x, y]| Point2::new(x, y)).collect())
}

fn numbers(s: &str, count: usize, what: &str, loc: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split_ascii_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_error(loc, format!("{what} `{s}` is not numeric")))?;
    if v.len() != count {
        return Err(parse_error(loc, format!("{what} `{s}` needs {count} numbers")));
    }
    Ok(v)
}

fn parse_ipe(text: &str) -> Result<Vec<Point2>> {
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        parse_error(format!("line {} column {}", pos.row, pos.col), e.to_string())
    })?;
    let mut points = Vec::new();
    for (k, node) in doc.descendants().filter(|n| n.has_tag_name("use")).enumerate() {
        let Some(pos) = node.attribute("pos") else {
            continue;
        };
        let row = doc.text_pos_at(node.range().start).row;
        let loc = format!("<use> element {} (line {row})", k + 1);
        let xy = numbers(pos, 2, "pos", &loc)?;
        let mut p = Point2::new(xy[0], xy[1]);
        for scope in node.ancestors().filter(|n| n.is_element()) {
            if let Some(m) = scope.attribute("matrix") {
                let m = numbers(m, 6, "matrix", &loc)?;
                p = Point2::new(m[0] * p.x + m[2] * p.y + m[4], m[1] * p.x + m[3] * p.y + m[5]);
            }
        }
        points.push(p);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{write_ipe, Document};

    fn xy(ps: &PointSet) -> Vec<(f64, f64)> {
        ps.iter().map(|p| (p.x, p.y)).collect()
    }

    #[test]
    fn csv_and_json() {
        let a = parse_points(b"0,0\n3,4", InputFormat::Csv).unwrap();
        let b = parse_points(b"[[0,0],[3,4]]", InputFormat::Json).unwrap();
        assert_eq!(a, b);
        assert_eq!(xy(&a), vec![(0.0, 0.0), (3.0, 4.0)]);
        let h = parse_points(b"x, y\n1.5, -2\n\n7,8\n", InputFormat::Csv).unwrap();
        assert_eq!(xy(&h), vec![(1.5, -2.0), (7.0, 8.0)]);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let e = parse_points(b"0,0\n1,a\n", InputFormat::Csv).unwrap_err();
        assert_eq!(e.name(), "ParseError");
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse_points(b"0,0\n1,2,3\n", InputFormat::Csv).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert_eq!(parse_points(b"x,y\n", InputFormat::Csv).unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_points(b"", InputFormat::Csv).unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_points(b"[]", InputFormat::Json).unwrap_err(), Error::EmptyInput);
        assert!(matches!(
            parse_points(b"0,0\nnan,1\n", InputFormat::Csv),
            Err(Error::NonFiniteCoordinate(1))
        ));
    }

    #[test]
    fn json_errors() {
        let e = parse_points(b"[[0,0],\n[1]]", InputFormat::Json).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(parse_points(&[0xff, 0xfe], InputFormat::Json).is_err());
    }

    #[test]
    fn ipe_fragment_and_matrix() {
        let one = parse_points(br#"<use name="mark/disk(sx)" pos="16 32"/>"#, InputFormat::Ipe).unwrap();
        assert_eq!(xy(&one), vec![(16.0, 32.0)]);
        let doc = br#"<ipe><page>
            <use name="mark/disk(sx)" pos="1 2" matrix="1 0 0 1 10 20"/>
            <group matrix="2 0 0 2 0 0"><use name="mark/disk(sx)" pos="3 4"/></group>
            <use name="image"/>
            <path>0 0 m 1 1 l</path>
        </page></ipe>"#;
        assert_eq!(xy(&parse_points(doc, InputFormat::Ipe).unwrap()), vec![(11.0, 22.0), (6.0, 8.0)]);
    }

    #[test]
    fn ipe_errors() {
        let e = parse_points(b"<ipe><page>\n<use pos=\"1\"/></page></ipe>", InputFormat::Ipe).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(parse_points(b"<ipe><page>", InputFormat::Ipe).is_err());
        assert_eq!(parse_points(b"<ipe/>", InputFormat::Ipe).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn ipe_round_trip() {
        let ps = PointSet::from_xy(&[(16.0, 32.0), (-0.125, 1e-6), (512.333333, 7.5)]).unwrap();
        let bytes = write_ipe(&Document::new(ps.clone()));
        assert_eq!(parse_points(&bytes, InputFormat::Ipe).unwrap(), ps);
    }
}
