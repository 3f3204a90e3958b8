use std::io::{BufRead, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{for_each_line, parse_error, Line};
use crate::error::{Error, Result};
use crate::graph::{Hypergraph, WeightedGraph};
use crate::labeling::Labeling;
use crate::ratio::{ExtRatio, RatioRepr};
use crate::scalar::{Exact, Real};
use crate::select::SelectionResult;

/// Parses `p/q`, an integer, or a plain decimal such as `1.25`.
pub fn parse_ratio<W: Exact>(text: &str) -> Option<Ratio<W>> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: W = p.trim().parse().ok()?;
        let q: W = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty())
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let ten = W::from_count(10)?;
        let mut num = W::zero();
        let mut den = W::one();
        for b in digits.bytes() {
            num = num
                .checked_mul(&ten)?
                .checked_add(&W::from_count((b - b'0') as usize)?)?;
        }
        for b in frac.bytes() {
            num = num
                .checked_mul(&ten)?
                .checked_add(&W::from_count((b - b'0') as usize)?)?;
            den = den.checked_mul(&ten)?;
        }
        if negative {
            num = -num;
        }
        return Some(Ratio::new(num, den));
    }
    text.parse().ok().map(Ratio::from_integer)
}

fn parse_node(text: &str, line: usize) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| parse_error(line, format!("bad node index `{}`", text.trim())))
}

fn parse_weight<W: Exact>(text: &str, line: usize) -> Result<Ratio<W>> {
    let w = parse_ratio::<W>(text).ok_or_else(|| parse_error(line, format!("bad weight `{}`", text.trim())))?;
    if w < Ratio::from_integer(W::zero()) {
        return Err(parse_error(line, "negative weight"));
    }
    Ok(w)
}

/// Brings rational weights to a common denominator.
fn common_scale<W: Exact>(weights: &[Ratio<W>]) -> Result<(Vec<W>, W)> {
    let mut scale = W::one();
    for w in weights {
        let d = *w.denom();
        scale = (scale / scale.gcd(&d))
            .checked_mul(&d)
            .ok_or(Error::Overflow("weight denominators"))?;
    }
    let scaled = weights
        .iter()
        .map(|w| {
            w.numer()
                .checked_mul(&(scale / *w.denom()))
                .ok_or(Error::Overflow("scaled weight"))
        })
        .collect::<Result<_>>()?;
    Ok((scaled, scale))
}

fn format_weight<W: Exact>(w: W, scale: W) -> String {
    let r = Ratio::new(w, scale);
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An integer-weighted graph whose true weights are `weight / scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledGraph<W> {
    pub graph: WeightedGraph<W>,
    pub scale: W,
}

impl<W: Exact> ScaledGraph<W> {
    pub fn unit(graph: WeightedGraph<W>) -> Self {
        ScaledGraph { graph, scale: W::one() }
    }

    /// Converts a value measured on the scaled graph back to file units.
    pub fn unscale(&self, r: &ExtRatio<W>) -> ExtRatio<W> {
        match r {
            ExtRatio::Finite(r) => ExtRatio::Finite(r / self.scale),
            ExtRatio::Infinite => ExtRatio::Infinite,
        }
    }

    pub fn to_real<F: Real>(&self) -> WeightedGraph<F> {
        let scale = self.scale.to_f64().unwrap_or(1.0);
        self.graph
            .map_weights(|w| F::from_f64(w.to_f64().unwrap_or(f64::INFINITY) / scale).unwrap_or(F::infinity()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledHypergraph<W> {
    pub hypergraph: Hypergraph<W>,
    pub scale: W,
}

impl<W: Exact> ScaledHypergraph<W> {
    pub fn unscale(&self, r: &ExtRatio<W>) -> ExtRatio<W> {
        match r {
            ExtRatio::Finite(r) => ExtRatio::Finite(r / self.scale),
            ExtRatio::Infinite => ExtRatio::Infinite,
        }
    }
}

/// Reads `u<TAB>v<TAB>w` lines.
pub fn read_edge_list<W: Exact, R: BufRead>(reader: R) -> Result<ScaledGraph<W>> {
    let mut declared = None;
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for_each_line(reader, |line, content| {
        match content {
            Line::Nodes(n) => declared = Some(n),
            Line::Data(text) => {
                let fields: Vec<&str> = text.split('\t').collect();
                if fields.len() != 3 {
                    return Err(parse_error(
                        line,
                        format!("expected 3 tab-separated fields, found {}", fields.len()),
                    ));
                }
                let u = parse_node(fields[0], line)?;
                let v = parse_node(fields[1], line)?;
                if u == v {
                    return Err(parse_error(line, format!("self-loop at node {u}")));
                }
                rows.push((line, u, v));
                weights.push(parse_weight::<W>(fields[2], line)?);
            }
        }
        Ok(())
    })?;
    let n = node_count(declared, rows.iter().flat_map(|&(line, u, v)| [(line, u), (line, v)]))?;
    let (scaled, scale) = common_scale(&weights)?;
    let mut graph = WeightedGraph::new(n);
    for (&(line, u, v), w) in rows.iter().zip(scaled) {
        graph.add_edge(u, v, w).map_err(|e| parse_error(line, e.to_string()))?;
    }
    Ok(ScaledGraph { graph, scale })
}

fn node_count(declared: Option<usize>, nodes: impl Iterator<Item = (usize, usize)>) -> Result<usize> {
    let mut n = declared.unwrap_or(0);
    for (line, v) in nodes {
        match declared {
            Some(d) if v >= d => {
                return Err(parse_error(line, format!("node {v} outside declared {d} nodes")));
            }
            _ => n = n.max(v + 1),
        }
    }
    Ok(n)
}

pub fn write_edge_list<W: Exact, O: Write>(g: &ScaledGraph<W>, mut out: O) -> Result<()> {
    writeln!(out, "# nodes {}", g.graph.node_count())?;
    for e in g.graph.edges() {
        writeln!(out, "{}\t{}\t{}", e.u, e.v, format_weight(e.weight, g.scale))?;
    }
    Ok(())
}

/// Reads `u<TAB>v<TAB>w` lines into a real-weighted graph. Weights may be
/// `p/q` fractions or any float literal.
pub fn read_edge_list_real<F: Real, R: BufRead>(reader: R) -> Result<WeightedGraph<F>> {
    let mut declared = None;
    let mut rows = Vec::new();
    for_each_line(reader, |line, content| {
        match content {
            Line::Nodes(n) => declared = Some(n),
            Line::Data(text) => {
                let fields: Vec<&str> = text.split('\t').collect();
                if fields.len() != 3 {
                    return Err(parse_error(
                        line,
                        format!("expected 3 tab-separated fields, found {}", fields.len()),
                    ));
                }
                let u = parse_node(fields[0], line)?;
                let v = parse_node(fields[1], line)?;
                let text = fields[2].trim();
                let w = if text.contains('/') {
                    parse_ratio::<i64>(text).and_then(|r| F::from_f64(*r.numer() as f64 / *r.denom() as f64))
                } else {
                    text.parse::<F>().ok()
                }
                .filter(|w| w.is_finite() && *w >= F::zero())
                .ok_or_else(|| parse_error(line, format!("bad weight `{text}`")))?;
                rows.push((line, u, v, w));
            }
        }
        Ok(())
    })?;
    let n = node_count(
        declared,
        rows.iter().flat_map(|&(line, u, v, _)| [(line, u), (line, v)]),
    )?;
    let mut graph = WeightedGraph::new(n);
    for (line, u, v, w) in rows {
        graph.add_edge(u, v, w).map_err(|e| parse_error(line, e.to_string()))?;
    }
    Ok(graph)
}

/// Writes real weights with the shortest representation that reads back
/// to the same value.
pub fn write_edge_list_real<F: Real, O: Write>(g: &WeightedGraph<F>, mut out: O) -> Result<()> {
    writeln!(out, "# nodes {}", g.node_count())?;
    for e in g.edges() {
        writeln!(out, "{}\t{}\t{}", e.u, e.v, e.weight)?;
    }
    Ok(())
}

/// Reads `w<TAB>v1,v2,...` lines.
pub fn read_hyperedge_list<W: Exact, R: BufRead>(reader: R) -> Result<ScaledHypergraph<W>> {
    let mut declared = None;
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut weights = Vec::new();
    for_each_line(reader, |line, content| {
        match content {
            Line::Nodes(n) => declared = Some(n),
            Line::Data(text) => {
                let (w, members) = text
                    .split_once('\t')
                    .ok_or_else(|| parse_error(line, "expected `weight<TAB>members`"))?;
                if members.contains('\t') {
                    return Err(parse_error(line, "too many tab-separated fields"));
                }
                let members = members
                    .split(',')
                    .map(|v| parse_node(v, line))
                    .collect::<Result<Vec<_>>>()?;
                weights.push(parse_weight::<W>(w, line)?);
                rows.push((line, members));
            }
        }
        Ok(())
    })?;
    let n = node_count(
        declared,
        rows.iter().flat_map(|(line, m)| m.iter().map(move |&v| (*line, v))),
    )?;
    let (scaled, scale) = common_scale(&weights)?;
    let mut hypergraph = Hypergraph::new(n);
    for ((line, members), w) in rows.into_iter().zip(scaled) {
        hypergraph
            .add_edge(w, members)
            .map_err(|e| parse_error(line, e.to_string()))?;
    }
    Ok(ScaledHypergraph { hypergraph, scale })
}

pub fn write_hyperedge_list<W: Exact, O: Write>(h: &ScaledHypergraph<W>, mut out: O) -> Result<()> {
    writeln!(out, "# nodes {}", h.hypergraph.node_count())?;
    for e in h.hypergraph.edges() {
        let members: Vec<String> = e.members().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}\t{}", format_weight(e.weight, h.scale), members.join(","))?;
    }
    Ok(())
}

/// Reads `node<TAB>{0,1}` lines into a labeling over `n` nodes.
pub fn read_labels<R: BufRead>(reader: R, n: usize) -> Result<Labeling> {
    let mut labels = Labeling::undefined(n);
    for_each_line(reader, |line, content| {
        let Line::Data(text) = content else { return Ok(()) };
        let (v, y) = text
            .split_once('\t')
            .ok_or_else(|| parse_error(line, "expected `node<TAB>label`"))?;
        let v = parse_node(v, line)?;
        if v >= n {
            return Err(parse_error(line, format!("node {v} out of range for {n} nodes")));
        }
        let y = match y.trim() {
            "0" => false,
            "1" => true,
            other => return Err(parse_error(line, format!("label must be 0 or 1, found `{other}`"))),
        };
        match labels.get(v) {
            Some(prev) if prev != y => Err(parse_error(line, format!("conflicting labels for node {v}"))),
            _ => labels.set(v, y),
        }
    })?;
    Ok(labels)
}

pub fn write_labels<O: Write>(labels: &Labeling, mut out: O) -> Result<()> {
    for (v, y) in labels.iter().enumerate() {
        if let Some(y) = y {
            writeln!(out, "{v}\t{}", u8::from(y))?;
        }
    }
    Ok(())
}

/// Reads comma-separated real vectors, one per line.
pub fn read_points<F: Real, R: BufRead>(reader: R) -> Result<Vec<Vec<F>>> {
    let mut points: Vec<Vec<F>> = Vec::new();
    for_each_line(reader, |line, content| {
        let Line::Data(text) = content else { return Ok(()) };
        let row = text
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<F>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_error(line, format!("bad coordinate `{}`", x.trim())))
            })
            .collect::<Result<Vec<F>>>()?;
        if let Some(first) = points.first() {
            if first.len() != row.len() {
                return Err(parse_error(
                    line,
                    format!("expected {} coordinates, found {}", first.len(), row.len()),
                ));
            }
        }
        points.push(row);
        Ok(())
    })?;
    Ok(points)
}

pub fn write_points<F: Real, O: Write>(points: &[Vec<F>], mut out: O) -> Result<()> {
    for p in points {
        let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub node: usize,
    pub f_lambda: RatioRepr,
}

/// JSON form of a selection, with values in file units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionDoc {
    pub chosen: Vec<usize>,
    pub psi: RatioRepr,
    pub lambda: Option<RatioRepr>,
    pub trace: Vec<TraceEntry>,
    pub evaluations: usize,
    pub saturated: bool,
}

impl SelectionDoc {
    /// `scale` undoes the common denominator applied when the graph was read.
    pub fn from_result<W: Exact>(result: &SelectionResult<W>, scale: W) -> Result<Self> {
        let unscale = |r: &Ratio<W>| RatioRepr::from_ratio(&(r / scale));
        Ok(SelectionDoc {
            chosen: result.order(),
            psi: match &result.achieved_psi {
                ExtRatio::Finite(r) => unscale(r)?,
                inf => RatioRepr::from_ext(inf)?,
            },
            lambda: result.target_lambda.as_ref().map(unscale).transpose()?,
            trace: result
                .trace
                .iter()
                .map(|s| {
                    Ok(TraceEntry {
                        node: s.node,
                        f_lambda: unscale(&s.f_lambda)?,
                    })
                })
                .collect::<Result<_>>()?,
            evaluations: result.oracle_evaluations,
            saturated: result.saturated,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("selection document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_forms() {
        assert_eq!(parse_ratio::<i64>("3/2"), Some(Ratio::new(3, 2)));
        assert_eq!(parse_ratio::<i64>("2"), Some(Ratio::from_integer(2)));
        assert_eq!(parse_ratio::<i64>("1.25"), Some(Ratio::new(5, 4)));
        assert_eq!(parse_ratio::<i64>(".5"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_ratio::<i64>("-0.5"), Some(Ratio::new(-1, 2)));
        assert_eq!(parse_ratio::<i64>("1/0"), None);
        assert_eq!(parse_ratio::<i64>("1e3"), None);
        assert_eq!(parse_ratio::<i64>("."), None);
    }

    #[test]
    fn rational_edge_weights_share_a_denominator() {
        let text = "# a path\n0\t1\t3/2\n1\t2\t2\n\n2\t3\t0.25\n";
        let g = read_edge_list::<i64, _>(text.as_bytes()).unwrap();
        assert_eq!(g.scale, 4);
        assert_eq!(g.graph.weight(0, 1), 6);
        assert_eq!(g.graph.weight(1, 2), 8);
        assert_eq!(g.graph.weight(2, 3), 1);
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "# nodes 4\n0\t1\t3/2\n1\t2\t2\n2\t3\t1/4\n"
        );
    }

    #[test]
    fn header_keeps_isolated_nodes() {
        let g = read_edge_list::<i64, _>("# nodes 5\n0\t1\t1\n".as_bytes()).unwrap();
        assert_eq!(g.graph.node_count(), 5);
        assert!(read_edge_list::<i64, _>("# nodes 2\n0\t2\t1\n".as_bytes()).is_err());
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let err = read_edge_list::<i64, _>("0\t1\t1\n0 1 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_edge_list::<i64, _>("0\t1\t-1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_edge_list::<i64, _>("0\t0\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn real_edge_lists() {
        let g = read_edge_list_real::<f64, _>("0\t1\t0.1\n1\t2\t1/3\n2\t3\t1e-3\n".as_bytes()).unwrap();
        assert_eq!(g.weight(0, 1), 0.1);
        assert_eq!(g.weight(1, 2), 1.0 / 3.0);
        assert_eq!(g.weight(2, 3), 1e-3);
        let mut out = Vec::new();
        write_edge_list_real(&g, &mut out).unwrap();
        assert_eq!(read_edge_list_real::<f64, _>(out.as_slice()).unwrap(), g);
        assert!(read_edge_list_real::<f64, _>("0\t1\tinf\n".as_bytes()).is_err());
    }

    #[test]
    fn hyperedges() {
        let text = "1\t0,1,2\n1/2\t2,3\n";
        let h = read_hyperedge_list::<i64, _>(text.as_bytes()).unwrap();
        assert_eq!(h.scale, 2);
        assert_eq!(h.hypergraph.node_count(), 4);
        assert_eq!(h.hypergraph.edges()[0].weight, 2);
        let mut out = Vec::new();
        write_hyperedge_list(&h, &mut out).unwrap();
        let back = read_hyperedge_list::<i64, _>(out.as_slice()).unwrap();
        assert_eq!(back, h);
        assert!(matches!(
            read_hyperedge_list::<i64, _>("1\t0,x\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn labels() {
        let y = read_labels("# labels\n2\t1\n0\t0\n".as_bytes(), 4).unwrap();
        assert_eq!(y.get(0), Some(false));
        assert_eq!(y.get(1), None);
        assert_eq!(y.get(2), Some(true));
        let mut out = Vec::new();
        write_labels(&y, &mut out).unwrap();
        assert_eq!(out, b"0\t0\n2\t1\n");
        assert!(read_labels("0\t1\n0\t0\n".as_bytes(), 2).is_err());
        assert!(read_labels("0\t2\n".as_bytes(), 2).is_err());
        assert!(read_labels("5\t1\n".as_bytes(), 2).is_err());
    }

    #[test]
    fn points() {
        let p = read_points::<f64, _>("0.5,1\n-2,3e-1\n".as_bytes()).unwrap();
        assert_eq!(p, vec![vec![0.5, 1.0], vec![-2.0, 0.3]]);
        let mut out = Vec::new();
        write_points(&p, &mut out).unwrap();
        assert_eq!(read_points::<f64, _>(out.as_slice()).unwrap(), p);
        assert!(read_points::<f64, _>("1,2\n3\n".as_bytes()).is_err());
        assert!(read_points::<f64, _>("1,nan\n".as_bytes()).is_err());
    }
}
