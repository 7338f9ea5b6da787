//! Grid arguments: comma lists whose items may be inclusive ranges `a:b:s`.

#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct Orders(pub Vec<usize>);

pub fn reals(s: &str) -> Result<Reals, String> {
    parse_reals(s).map(Reals)
}

pub fn orders(s: &str) -> Result<Orders, String> {
    parse_orders(s).map(Orders)
}

pub fn list(s: &str) -> Result<Orders, String> {
    parse_orders(s).map(Orders)
}

fn parse_item<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse::<T>().map_err(|_| format!("`{s}` is not a valid {what}"))
}

pub fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').filter(|p| !p.trim().is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_item::<f64>(v, "number")?),
            [a, b, step] => {
                let (a, b, step): (f64, f64, f64) =
                    (parse_item(a, "number")?, parse_item(b, "number")?, parse_item(step, "number")?);
                if !(step > 0.0 && step.is_finite()) || !a.is_finite() || !b.is_finite() {
                    return Err(format!("bad range `{item}`: step must be positive"));
                }
                // a + i*s rather than accumulating, so 2:9:1 gives exact integers
                let mut i = 0usize;
                loop {
                    let v = a + i as f64 * step;
                    if v > b + 1e-9 * step {
                        break;
                    }
                    out.push(v);
                    i += 1;
                }
            }
            _ => return Err(format!("bad range `{item}`: expected a:b:s")),
        }
    }
    Ok(out)
}

pub fn parse_orders(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',').filter(|p| !p.trim().is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_item::<usize>(v, "order")?),
            [a, b, step] => {
                let (a, b, step): (usize, usize, usize) =
                    (parse_item(a, "order")?, parse_item(b, "order")?, parse_item(step, "step")?);
                if step == 0 {
                    return Err(format!("bad range `{item}`: step must be positive"));
                }
                out.extend((a..=b).step_by(step));
            }
            _ => return Err(format!("bad range `{item}`: expected a:b:s")),
        }
    }
    Ok(out)
}

/// `i,j` as a one-based pair.
pub fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    match parse_orders(s)?.as_slice() {
        [i, j] => Ok((*i, *j)),
        _ => Err(format!("`{s}` is not a pair i,j")),
    }
}
