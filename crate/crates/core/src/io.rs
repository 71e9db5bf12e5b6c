//! Text serialization: field specs, polynomials, function tables, point
//! sets, and subspaces. Every `format_*` output round-trips through the
//! matching `parse_*`; parsers report 1-based line numbers.
//!
//! Formats:
//! - field: `p n [c_0,c_1,...,c_n]`, irreducible coefficients low-to-high;
//! - polynomial: comma-separated element reps, low-to-high;
//! - function table: q element reps, comma-separated, index order;
//! - point set: header `q <value> irr <c_0,...,c_n>`, then one point per
//!   line as `x:y:z` element reps, sorted by point index;
//! - subspace: header `dim <d>`, then one basis row per line as
//!   comma-separated element reps.

use thiserror::Error;

use crate::directions::FieldFn;
use crate::fpoly::Poly;
use crate::gf::{make_field, FieldElem, FieldSpec, GfError};
use crate::linearsets::Subspace;
use crate::plane::{point_index_of, point_triple, PointSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("field construction failed: {0}")]
    Field(#[from] GfError),
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_num(line: usize, tok: &str, what: &str) -> Result<u64, IoError> {
    tok.trim()
        .parse::<u64>()
        .map_err(|_| IoError::Parse {
            line,
            msg: format!("expected {what}, got {tok:?}"),
        })
}

fn parse_rep_list(line: usize, s: &str) -> Result<Vec<u64>, IoError> {
    s.split(',')
        .map(|tok| parse_num(line, tok, "an element rep"))
        .collect()
}

fn rep_to_elem(line: usize, spec: &FieldSpec, rep: u64) -> Result<FieldElem, IoError> {
    if rep >= spec.q() as u64 {
        return parse_err(line, format!("element rep {rep} out of range for q = {}", spec.q()));
    }
    Ok(FieldElem::from_rep(rep as u32))
}

// ---------------------------------------------------------------------------
// Field spec

pub fn format_field(spec: &FieldSpec) -> String {
    let coeffs: Vec<String> = spec.irr().iter().map(|c| c.to_string()).collect();
    format!("{} {} [{}]", spec.p(), spec.n(), coeffs.join(","))
}

pub fn parse_field(s: &str) -> Result<FieldSpec, IoError> {
    let s = s.trim();
    let Some(open) = s.find('[') else {
        return parse_err(1, "missing '[' before irreducible coefficients");
    };
    let Some(close) = s.rfind(']') else {
        return parse_err(1, "missing ']' after irreducible coefficients");
    };
    if close < open {
        return parse_err(1, "']' precedes '['");
    }
    let head: Vec<&str> = s[..open].split_whitespace().collect();
    let [p_tok, n_tok] = head[..] else {
        return parse_err(1, "expected `p n [c_0,...,c_n]`");
    };
    let p = parse_num(1, p_tok, "the characteristic p")?;
    let n = parse_num(1, n_tok, "the extension degree n")?;
    let coeffs = parse_rep_list(1, &s[open + 1..close])?;
    if coeffs.len() != n as usize + 1 {
        return parse_err(
            1,
            format!("expected {} coefficients for degree {n}, got {}", n + 1, coeffs.len()),
        );
    }
    Ok(make_field(p, n as u32, Some(&coeffs))?)
}

// ---------------------------------------------------------------------------
// Polynomials

pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let reps: Vec<String> = f.coeffs().iter().map(|c| c.rep().to_string()).collect();
    reps.join(",")
}

pub fn parse_poly(spec: &FieldSpec, s: &str) -> Result<Poly, IoError> {
    let reps = parse_rep_list(1, s.trim())?;
    let coeffs = reps
        .into_iter()
        .map(|r| rep_to_elem(1, spec, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

// ---------------------------------------------------------------------------
// Function tables

pub fn format_table(f: &FieldFn) -> String {
    let reps: Vec<String> = f.table().iter().map(|c| c.rep().to_string()).collect();
    reps.join(",")
}

pub fn parse_table(spec: &FieldSpec, s: &str) -> Result<FieldFn, IoError> {
    let reps = parse_rep_list(1, s.trim())?;
    if reps.len() != spec.q() as usize {
        return parse_err(
            1,
            format!("expected q = {} table entries, got {}", spec.q(), reps.len()),
        );
    }
    let table = reps
        .into_iter()
        .map(|r| rep_to_elem(1, spec, r))
        .collect::<Result<Vec<_>, _>>()?;
    FieldFn::from_table(spec, table)
        .map_err(|e| IoError::Parse {
            line: 1,
            msg: e.to_string(),
        })
}

// ---------------------------------------------------------------------------
// Point sets

pub fn format_point_set(spec: &FieldSpec, s: &PointSet) -> String {
    let irr: Vec<String> = spec.irr().iter().map(|c| c.to_string()).collect();
    let mut out = format!("q {} irr {}\n", spec.q(), irr.join(","));
    for &idx in s.members() {
        let t = point_triple(spec, idx);
        out.push_str(&format!("{}:{}:{}\n", t[0].rep(), t[1].rep(), t[2].rep()));
    }
    out
}

pub fn parse_point_set(s: &str) -> Result<(FieldSpec, PointSet), IoError> {
    let mut lines = s.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return parse_err(1, "empty input; expected `q <value> irr <coeffs>`");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    let ["q", q_tok, "irr", irr_tok] = toks[..] else {
        return parse_err(1, "expected header `q <value> irr <coeffs>`");
    };
    let q = parse_num(1, q_tok, "the field order q")?;
    let irr = parse_rep_list(1, irr_tok)?;
    let (p, n) = factor_prime_power(q)
        .ok_or_else(|| IoError::Parse {
            line: 1,
            msg: format!("q = {q} is not a prime power"),
        })?;
    if irr.len() != n as usize + 1 {
        return parse_err(
            1,
            format!("expected {} irreducible coefficients, got {}", n + 1, irr.len()),
        );
    }
    let spec = make_field(p, n, Some(&irr))?;
    let mut indices = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(':').collect();
        let [x, y, z] = parts[..] else {
            return parse_err(line_no, format!("expected `x:y:z`, got {line:?}"));
        };
        let mut t = [FieldElem::ZERO; 3];
        for (slot, tok) in t.iter_mut().zip([x, y, z]) {
            let rep = parse_num(line_no, tok, "an element rep")?;
            *slot = rep_to_elem(line_no, &spec, rep)?;
        }
        let idx = point_index_of(&spec, t).map_err(|e| IoError::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        indices.push(idx);
    }
    Ok((spec, PointSet::from_indices(indices)))
}

/// q = p^n with p prime, or None.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            let mut n = 0;
            while m.is_multiple_of(p) {
                m /= p;
                n += 1;
            }
            return if m == 1 { Some((p, n)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

// ---------------------------------------------------------------------------
// Subspaces

pub fn format_subspace(w: &Subspace) -> String {
    let mut out = format!("dim {}\n", w.dim());
    for row in w.basis() {
        let reps: Vec<String> = row.iter().map(|c| c.rep().to_string()).collect();
        out.push_str(&reps.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_subspace(spec: &FieldSpec, ambient: usize, s: &str) -> Result<Subspace, IoError> {
    let mut lines = s.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return parse_err(1, "empty input; expected `dim <d>`");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    let ["dim", d_tok] = toks[..] else {
        return parse_err(1, "expected header `dim <d>`");
    };
    let d = parse_num(1, d_tok, "the dimension")? as usize;
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let reps = parse_rep_list(line_no, line)?;
        if reps.len() != ambient {
            return parse_err(
                line_no,
                format!("expected {ambient} coordinates, got {}", reps.len()),
            );
        }
        let row = reps
            .into_iter()
            .map(|r| rep_to_elem(line_no, spec, r))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != d {
        return parse_err(
            1,
            format!("header claims dim {d} but {} independent rows given", rows.len()),
        );
    }
    let w = Subspace::new(spec, ambient, rows);
    if w.dim() != d {
        return parse_err(
            1,
            format!("rows span dimension {}, header claims {d}", w.dim()),
        );
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::plane::Plane;

    #[test]
    fn field_round_trip_and_errors() {
        for (p, n) in [(2, 1), (5, 1), (2, 2), (3, 2), (2, 4)] {
            let spec = make_field(p, n, None).unwrap();
            let text = format_field(&spec);
            let back = parse_field(&text).unwrap();
            assert_eq!(back.p(), spec.p());
            assert_eq!(back.n(), spec.n());
            assert_eq!(back.irr(), spec.irr());
        }
        assert_eq!(format_field(&make_field(3, 2, None).unwrap()), "3 2 [1,0,1]");
        assert!(matches!(parse_field("3 2 1,0,1"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(parse_field("3 [1,0,1]"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_field("3 2 [1,0]"), Err(IoError::Parse { .. })));
        // reducible candidate rejected by the field layer
        assert!(matches!(parse_field("3 2 [1,0,2]"), Err(IoError::Field(_))));
    }

    #[test]
    fn poly_round_trip() {
        let spec = make_field(5, 1, None).unwrap();
        let f = parse_poly(&spec, "0,4,0,0,0,1").unwrap();
        assert_eq!(f.degree(), Some(5));
        assert_eq!(format_poly(&f), "0,4,0,0,0,1");
        assert_eq!(format_poly(&Poly::zero()), "0");
        assert_eq!(parse_poly(&spec, "0").unwrap(), Poly::zero());
        assert!(matches!(parse_poly(&spec, "0,9"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_poly(&spec, "0,x"), Err(IoError::Parse { .. })));
    }

    #[test]
    fn table_round_trip() {
        let spec = make_field(2, 2, None).unwrap();
        let f = parse_table(&spec, "0,1,3,2").unwrap();
        assert_eq!(format_table(&f), "0,1,3,2");
        assert!(matches!(parse_table(&spec, "0,1,3"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_table(&spec, "0,1,3,4"), Err(IoError::Parse { .. })));
    }

    #[test]
    fn point_set_round_trip_and_line_numbers() {
        let spec = make_field(2, 2, None).unwrap();
        let plane = Plane::new(spec.clone());
        let set = PointSet::from_indices(plane.points_on(3).to_vec());
        let text = format_point_set(&spec, &set);
        assert!(text.starts_with("q 4 irr "));
        let (back_spec, back) = parse_point_set(&text).unwrap();
        assert_eq!(back_spec.irr(), spec.irr());
        assert_eq!(back, set);

        let bad = "q 4 irr 1,1,1\n0:0:1\n1:2\n";
        match parse_point_set(bad) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error with a line number, got {other:?}"),
        }
        assert!(matches!(parse_point_set("q 6 irr 1,1"), Err(IoError::Parse { .. })));
        assert!(matches!(
            parse_point_set("q 4 irr 1,1,1\n0:0:0\n"),
            Err(IoError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn subspace_round_trip() {
        let spec = make_field(2, 1, None).unwrap();
        let one = FieldElem::ONE;
        let zero = FieldElem::ZERO;
        let w = Subspace::new(
            &spec,
            4,
            vec![
                vec![one, zero, zero, one],
                vec![zero, one, one, zero],
            ],
        );
        let text = format_subspace(&w);
        let back = parse_subspace(&spec, 4, &text).unwrap();
        assert_eq!(back, w);
        assert!(matches!(
            parse_subspace(&spec, 4, "dim 3\n1,0,0,1\n0,1,1,0\n"),
            Err(IoError::Parse { .. })
        ));
        assert!(matches!(
            parse_subspace(&spec, 4, "dim 2\n1,0,0\n0,1,1\n"),
            Err(IoError::Parse { line: 2, .. })
        ));
        // dependent rows collapse and contradict the header
        assert!(matches!(
            parse_subspace(&spec, 4, "dim 2\n1,0,0,1\n1,0,0,1\n"),
            Err(IoError::Parse { .. })
        ));
    }
}
