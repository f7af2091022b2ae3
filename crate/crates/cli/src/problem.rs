//! Line-oriented problem and solution files.
//!
//! A problem file holds four keys — `vars`, `ideal`, `D`, `prime` — in any
//! order, one per line; `#` starts a comment.  Lists are square-bracketed
//! and comma-separated; the prime is `point(a_1, …, a_n)` or
//! `coord(x_i = a_i, …)`.  A solution file holds `order` plus one
//! coefficient list per variable, for handing manual solutions to the
//! verifier.

use std::sync::Arc;

use formalflow::algebra::rational_from_str;
use formalflow::solver::{PrimeSpec, SolveMethod, Solution};
use formalflow::{Derivation, Error, Ideal, MultiPoly, PolyRing, Rational, TruncSeries};

use crate::expr::parse_poly;

/// Parsed problem: ring, optional quotient ideal generators, derivation
/// coefficients, and the prime.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: Arc<PolyRing>,
    pub ideal_gens: Vec<MultiPoly>,
    pub derivation_coeffs: Vec<MultiPoly>,
    pub prime: PrimeSpec,
}

impl ProblemFile {
    /// The derivation through the quotient when ideal generators are
    /// present (validating stability), on the plain polynomial ring
    /// otherwise.
    pub fn derivation(&self) -> Result<Derivation, Error> {
        if self.ideal_gens.is_empty() {
            Ok(Derivation::new(
                self.ring.clone(),
                self.derivation_coeffs.clone(),
            ))
        } else {
            Derivation::with_quotient_ideal(
                self.ring.clone(),
                self.derivation_coeffs.clone(),
                Ideal::new(self.ring.clone(), self.ideal_gens.clone()),
            )
        }
    }

    /// The derivation on the plain polynomial ring, ignoring the ideal.
    pub fn plain_derivation(&self) -> Derivation {
        Derivation::new(self.ring.clone(), self.derivation_coeffs.clone())
    }

    /// Render in the input grammar; parsing the result reproduces the value.
    /// Exercised by the round-trip tests.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn render(&self) -> String {
        let vars = self.ring.var_names().join(", ");
        let ideal: Vec<String> = self.ideal_gens.iter().map(|g| g.to_string()).collect();
        let coeffs: Vec<String> = self
            .derivation_coeffs
            .iter()
            .map(|g| g.to_string())
            .collect();
        format!(
            "vars: {vars}\nideal: [{}]\nD: [{}]\nprime: {}\n",
            ideal.join(", "),
            coeffs.join(", "),
            self.prime.render(&self.ring)
        )
    }
}

/// Strip a `#` comment and surrounding whitespace.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// Split a bracketed, comma-separated list; returns the items with their
/// column offsets.
fn split_list<'a>(
    value: &'a str,
    key: &str,
    line_no: usize,
    value_col: usize,
) -> Result<Vec<(&'a str, usize)>, Error> {
    let v = value.trim();
    if !v.starts_with('[') || !v.ends_with(']') {
        return Err(Error::input(format!(
            "line {line_no}: '{key}' expects a bracketed list"
        )));
    }
    let inner = &v[1..v.len() - 1];
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let base = value_col + (v.as_ptr() as usize - value.as_ptr() as usize) + 1;
    let mut items = Vec::new();
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        if c == ',' {
            items.push((&inner[start..i], base + start));
            start = i + 1;
        }
    }
    items.push((&inner[start..], base + start));
    Ok(items)
}

fn parse_rational(text: &str, line_no: usize, what: &str) -> Result<Rational, Error> {
    rational_from_str(text.trim()).map_err(|_| {
        Error::input(format!(
            "line {line_no}: malformed rational {what} '{}'",
            text.trim()
        ))
    })
}

fn parse_prime(
    value: &str,
    ring: &Arc<PolyRing>,
    line_no: usize,
) -> Result<PrimeSpec, Error> {
    let v = value.trim();
    let (kind, inner) = if let Some(rest) = v.strip_prefix("point") {
        ("point", rest)
    } else if let Some(rest) = v.strip_prefix("coord") {
        ("coord", rest)
    } else {
        return Err(Error::input(format!(
            "line {line_no}: prime must be point(...) or coord(...)"
        )));
    };
    let inner = inner.trim();
    if !inner.starts_with('(') || !inner.ends_with(')') {
        return Err(Error::input(format!(
            "line {line_no}: expected parentheses after '{kind}'"
        )));
    }
    let body = &inner[1..inner.len() - 1];
    if kind == "point" {
        let mut values = Vec::new();
        for item in body.split(',') {
            values.push(parse_rational(item, line_no, "coordinate")?);
        }
        let p = PrimeSpec::point(values);
        p.validate(ring)?;
        Ok(p)
    } else {
        let mut assignments = Vec::new();
        if !body.trim().is_empty() {
            for item in body.split(',') {
                let (name, val) = item.split_once('=').ok_or_else(|| {
                    Error::input(format!(
                        "line {line_no}: coord entries have the form variable=value"
                    ))
                })?;
                let name = name.trim();
                let i = ring.var_index(name).ok_or_else(|| {
                    Error::input(format!("line {line_no}: unknown variable '{name}'"))
                })?;
                assignments.push((i, parse_rational(val, line_no, "value")?));
            }
        }
        let p = PrimeSpec::coordinate(assignments)?;
        p.validate(ring)?;
        Ok(p)
    }
}

/// Parse a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, Error> {
    let mut fields: Vec<(String, String, usize, usize)> = Vec::new(); // key, value, line, value col
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| {
            Error::input(format!("line {line_no}: expected 'key: value'"))
        })?;
        let key = key.trim().to_string();
        if !matches!(key.as_str(), "vars" | "ideal" | "D" | "prime") {
            return Err(Error::input(format!(
                "line {line_no}: unknown key '{key}' (expected vars, ideal, D, prime)"
            )));
        }
        if fields.iter().any(|(k, ..)| *k == key) {
            return Err(Error::input(format!("line {line_no}: duplicate key '{key}'")));
        }
        let value_col = raw.len() - raw.trim_start().len() + line.len() - value.len();
        fields.push((key, value.to_string(), line_no, value_col));
    }

    let get = |key: &str| fields.iter().find(|(k, ..)| k == key);
    let (_, vars_value, vars_line, _) = get("vars")
        .ok_or_else(|| Error::input("missing 'vars' line".to_string()))?;
    let names: Vec<String> = vars_value
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(Error::input(format!(
            "line {vars_line}: empty variable name"
        )));
    }
    for n in &names {
        let mut chars = n.chars();
        let head_ok = chars
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false);
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::input(format!(
                "line {vars_line}: invalid variable name '{n}'"
            )));
        }
    }
    {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::input(format!(
                "line {vars_line}: duplicate variable name"
            )));
        }
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::grevlex(&name_refs);

    let ideal_gens = match get("ideal") {
        Some((_, value, line_no, col)) => {
            let mut gens = Vec::new();
            for (item, item_col) in split_list(value, "ideal", *line_no, *col)? {
                gens.push(parse_poly(item, &ring, *line_no, item_col)?);
            }
            gens
        }
        None => Vec::new(),
    };

    let (_, d_value, d_line, d_col) = get("D")
        .ok_or_else(|| Error::input("missing 'D' line".to_string()))?;
    let mut derivation_coeffs = Vec::new();
    for (item, item_col) in split_list(d_value, "D", *d_line, *d_col)? {
        derivation_coeffs.push(parse_poly(item, &ring, *d_line, item_col)?);
    }
    if derivation_coeffs.len() != ring.nvars() {
        return Err(Error::input(format!(
            "line {d_line}: 'D' lists {} coefficients for {} variables",
            derivation_coeffs.len(),
            ring.nvars()
        )));
    }

    let (_, p_value, p_line, _) = get("prime")
        .ok_or_else(|| Error::input("missing 'prime' line".to_string()))?;
    let prime = parse_prime(p_value, &ring, *p_line)?;

    Ok(ProblemFile {
        ring,
        ideal_gens,
        derivation_coeffs,
        prime,
    })
}

/// Parse a solution file against a problem: `order: r` plus one
/// `var: [c_0, …, c_r]` line per ring variable.  Coefficients are
/// polynomial expressions restricted to the residue field — plain rationals
/// at a rational point, residue-variable polynomials at a coordinate prime.
pub fn parse_solution(text: &str, problem: &ProblemFile) -> Result<Solution, Error> {
    let ring = &problem.ring;
    let mut order: Option<usize> = None;
    let mut coords: Vec<Option<Vec<MultiPoly>>> = vec![None; ring.nvars()];

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| {
            Error::input(format!("line {line_no}: expected 'key: value'"))
        })?;
        let key = key.trim();
        if key == "order" {
            if order.is_some() {
                return Err(Error::input(format!(
                    "line {line_no}: duplicate 'order'"
                )));
            }
            order = Some(value.trim().parse::<usize>().map_err(|_| {
                Error::input(format!("line {line_no}: malformed order"))
            })?);
            continue;
        }
        let i = ring.var_index(key).ok_or_else(|| {
            Error::input(format!("line {line_no}: unknown variable '{key}'"))
        })?;
        if coords[i].is_some() {
            return Err(Error::input(format!(
                "line {line_no}: duplicate coefficient list for '{key}'"
            )));
        }
        let value_col = raw.len() - raw.trim_start().len() + line.len() - value.len();
        let mut polys = Vec::new();
        for (item, item_col) in split_list(value, key, line_no, value_col)? {
            polys.push(parse_poly(item, ring, line_no, item_col)?);
        }
        coords[i] = Some(polys);
    }

    let order = order.ok_or_else(|| Error::input("missing 'order' line".to_string()))?;
    let prescribed = problem.prime.prescribed(ring);
    let mut series = Vec::with_capacity(ring.nvars());
    for (i, slot) in coords.iter_mut().enumerate() {
        let polys = slot.take().ok_or_else(|| {
            Error::input(format!(
                "missing coefficient list for '{}'",
                ring.var_name(i)
            ))
        })?;
        if polys.len() != order + 1 {
            return Err(Error::input(format!(
                "'{}' lists {} coefficients for order {order}",
                ring.var_name(i),
                polys.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for p in &polys {
            for (m, _) in p.terms() {
                for v in m.support() {
                    if prescribed[v].is_some() {
                        return Err(Error::input(format!(
                            "coefficient '{p}' uses prescribed variable '{}'; solution coefficients live in the residue field",
                            ring.var_name(v)
                        )));
                    }
                }
            }
            coeffs.push(problem.prime.residue_eval(p));
        }
        series.push(TruncSeries::from_coeffs(coeffs));
    }
    Ok(Solution::new(
        problem.prime.clone(),
        order,
        series,
        SolveMethod::Manual,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPIRAL: &str =
        "vars: x, y, z\nideal: []\nD: [y, x*z, 0]\nprime: point(2, 3, 5)\n";

    #[test]
    fn parses_the_reference_problem() {
        let p = parse_problem(SPIRAL).unwrap();
        assert_eq!(p.ring.nvars(), 3);
        assert!(p.ideal_gens.is_empty());
        assert_eq!(p.derivation_coeffs[1].to_string(), "x*z");
        assert_eq!(p.prime.render(&p.ring), "point(2, 3, 5)");
    }

    #[test]
    fn rendering_round_trips() {
        for text in [
            SPIRAL,
            "vars: x\nideal: []\nD: [1]\nprime: point(0)\n",
            "vars: x, y, z\nideal: [x^2 - y]\nD: [0, 0, 1]\nprime: coord(x=0, y=0)\n",
            "vars: a, b\nideal: []\nD: [-1/2*a + 5/3, b^2]\nprime: point(-1/2, 7)\n",
        ] {
            let p = parse_problem(text).unwrap();
            let rendered = p.render();
            let q = parse_problem(&rendered).unwrap();
            assert_eq!(rendered, q.render());
            assert_eq!(p.prime, q.prime);
            assert_eq!(p.ideal_gens, q.ideal_gens);
            assert_eq!(p.derivation_coeffs, q.derivation_coeffs);
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# flow example\nvars: x, y, z # three coordinates\n\nideal: []\nD: [y, x*z, 0]\nprime: point(2, 3, 5)\n";
        assert!(parse_problem(text).is_ok());
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let text = "vars: x, y, z\nideal: []\nD: [y, x*z]\nprime: point(2, 3, 5)\n";
        let e = parse_problem(text).unwrap_err();
        assert!(e.to_string().contains("2 coefficients for 3 variables"), "{e}");
    }

    #[test]
    fn bad_primes_are_rejected() {
        let base = "vars: x, y\nideal: []\nD: [1, 1]\n";
        for (prime, needle) in [
            ("prime: point(1)", "2 variables"),
            ("prime: coord(w=0)", "unknown variable"),
            ("prime: circle(1, 2)", "point(...) or coord"),
            ("prime: coord(x=0, x=1)", "twice"),
        ] {
            let e = parse_problem(&format!("{base}{prime}\n")).unwrap_err();
            assert!(e.to_string().contains(needle), "{prime}: {e}");
        }
    }

    #[test]
    fn unknown_and_duplicate_keys_are_rejected() {
        let e = parse_problem("vars: x\nflow: [1]\n").unwrap_err();
        assert!(e.to_string().contains("unknown key"), "{e}");
        let e = parse_problem("vars: x\nvars: y\nideal: []\nD: [1]\nprime: point(0)\n")
            .unwrap_err();
        assert!(e.to_string().contains("duplicate key"), "{e}");
    }

    #[test]
    fn solution_files_become_manual_solutions() {
        let problem = parse_problem(
            "vars: x, y, z\nideal: []\nD: [y, x*z, 0]\nprime: coord(x=0, y=0)\n",
        )
        .unwrap();
        let sol = parse_solution(
            "order: 3\nx: [0, 0, 0, 0]\ny: [0, 0, 0, 0]\nz: [z^2, 0, 0, 0]\n",
            &problem,
        )
        .unwrap();
        assert_eq!(sol.order(), 3);
        assert_eq!(sol.method(), SolveMethod::Manual);
        let d = problem.derivation().unwrap();
        assert!(formalflow::verify_solution(&sol, &d, 2).unwrap());
    }

    #[test]
    fn solution_coefficients_must_stay_in_the_residue_field() {
        let problem = parse_problem(SPIRAL).unwrap();
        let e = parse_solution(
            "order: 1\nx: [2, x]\ny: [3, 10]\nz: [5, 0]\n",
            &problem,
        )
        .unwrap_err();
        assert!(e.to_string().contains("residue field"), "{e}");
        let e = parse_solution("order: 1\nx: [2, 3]\ny: [3, 10]\n", &problem).unwrap_err();
        assert!(e.to_string().contains("missing coefficient list"), "{e}");
        let e = parse_solution(
            "order: 2\nx: [2, 3]\ny: [3, 10, 0]\nz: [5, 0, 0]\n",
            &problem,
        )
        .unwrap_err();
        assert!(e.to_string().contains("2 coefficients for order 2"), "{e}");
    }
}
