use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use num_rational::Ratio;

use super::formats::parse_ratio;
use super::{for_each_line, parse_error, Line};
use crate::error::Result;
use crate::graph::Hypergraph;
use crate::scalar::Exact;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rating {
    pub user: String,
    pub item: String,
    pub stars: Ratio<i64>,
}

/// Item hypergraph; node `i` is the item `items[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsHypergraph<W> {
    pub hypergraph: Hypergraph<W>,
    pub items: Vec<String>,
}

/// Numeric ids in numeric order, then everything else lexicographically.
fn id_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

#[derive(PartialEq, Eq)]
struct Id<'a>(&'a str);

impl Ord for Id<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        id_order(self.0, other.0)
    }
}

impl PartialOrd for Id<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reads `user<TAB>item<TAB>stars` lines. MovieLens `user::item::stars::time`
/// lines are accepted too; fields past the third are ignored there.
pub fn read_ratings<R: BufRead>(reader: R) -> Result<Vec<Rating>> {
    let mut out = Vec::new();
    for_each_line(reader, |line, content| {
        let Line::Data(text) = content else { return Ok(()) };
        let fields: Vec<&str> = if text.contains("::") {
            let f: Vec<&str> = text.split("::").collect();
            if f.len() < 3 {
                return Err(parse_error(line, "expected user::item::stars"));
            }
            f
        } else {
            let f: Vec<&str> = text.split('\t').collect();
            if f.len() != 3 {
                return Err(parse_error(
                    line,
                    format!("expected 3 tab-separated fields, found {}", f.len()),
                ));
            }
            f
        };
        let user = fields[0].trim();
        let item = fields[1].trim();
        if user.is_empty() || item.is_empty() {
            return Err(parse_error(line, "empty user or item id"));
        }
        let stars = parse_ratio::<i64>(fields[2])
            .filter(|s| *s >= Ratio::from_integer(1) && *s <= Ratio::from_integer(5))
            .ok_or_else(|| parse_error(line, format!("stars must lie in [1, 5], found `{}`", fields[2].trim())))?;
        out.push(Rating {
            user: user.to_string(),
            item: item.to_string(),
            stars,
        });
        Ok(())
    })?;
    Ok(out)
}

pub fn write_ratings<O: Write>(ratings: &[Rating], mut out: O) -> Result<()> {
    for r in ratings {
        let stars = if r.stars.is_integer() {
            r.stars.numer().to_string()
        } else {
            format!("{}/{}", r.stars.numer(), r.stars.denom())
        };
        writeln!(out, "{}\t{}\t{}", r.user, r.item, stars)?;
    }
    Ok(())
}

/// Builds the item hypergraph: items with more than `min_ratings` ratings
/// become nodes, and each user contributes a unit edge over the kept items
/// rated above 3 and another over those rated below 3.
pub fn ratings_to_hypergraph<W: Exact>(ratings: &[Rating], min_ratings: usize) -> Result<RatingsHypergraph<W>> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in ratings {
        *counts.entry(r.item.as_str()).or_default() += 1;
    }
    let mut items: Vec<&str> = counts
        .iter()
        .filter(|&(_, &c)| c > min_ratings)
        .map(|(&item, _)| item)
        .collect();
    items.sort_by(|a, b| id_order(a, b));
    let index: HashMap<&str, usize> = items.iter().enumerate().map(|(i, &item)| (item, i)).collect();

    let three = Ratio::from_integer(3);
    let mut by_user: BTreeMap<Id<'_>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for r in ratings {
        let Some(&node) = index.get(r.item.as_str()) else {
            continue;
        };
        let entry = by_user.entry(Id(&r.user)).or_default();
        match r.stars.cmp(&three) {
            Ordering::Greater => entry.0.push(node),
            Ordering::Less => entry.1.push(node),
            Ordering::Equal => {}
        }
    }
    let mut hypergraph = Hypergraph::new(items.len());
    for (_, (liked, disliked)) in by_user {
        for edge in [liked, disliked] {
            if !edge.is_empty() {
                hypergraph.add_edge(W::one(), edge)?;
            }
        }
    }
    Ok(RatingsHypergraph {
        hypergraph,
        items: items.into_iter().map(str::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rating(user: &str, item: &str, stars: i64) -> Rating {
        Rating {
            user: user.into(),
            item: item.into(),
            stars: Ratio::from_integer(stars),
        }
    }

    #[test]
    fn strict_thresholds() {
        let r = vec![rating("u", "a", 5), rating("u", "b", 4), rating("u", "c", 2)];
        let h = ratings_to_hypergraph::<i64>(&r, 0).unwrap();
        assert_eq!(h.items, vec!["a", "b", "c"]);
        let edges: Vec<_> = h.hypergraph.edges().iter().map(|e| e.members().to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![2]]);

        let r = vec![rating("u", "a", 3), rating("u", "b", 3)];
        let h = ratings_to_hypergraph::<i64>(&r, 0).unwrap();
        assert_eq!(h.hypergraph.node_count(), 2);
        assert!(h.hypergraph.edges().is_empty());
    }

    #[test]
    fn sparse_items_are_dropped() {
        let mut r = Vec::new();
        for u in 0..3 {
            r.push(rating(&u.to_string(), "popular", 5));
        }
        r.push(rating("0", "rare", 1));
        let h = ratings_to_hypergraph::<i64>(&r, 2).unwrap();
        assert_eq!(h.items, vec!["popular"]);
        assert_eq!(h.hypergraph.edges().len(), 3);
        let h = ratings_to_hypergraph::<i64>(&r, 3).unwrap();
        assert_eq!(h.hypergraph.node_count(), 0);
    }

    #[test]
    fn numeric_ids_sort_numerically() {
        let r = vec![rating("1", "10", 5), rating("1", "9", 5), rating("1", "x", 1)];
        let h = ratings_to_hypergraph::<i64>(&r, 0).unwrap();
        assert_eq!(h.items, vec!["9", "10", "x"]);
    }

    #[test]
    fn both_line_formats() {
        let text = "1::1193::5::978300760\n7\t12\t2.5\n";
        let r = read_ratings(text.as_bytes()).unwrap();
        assert_eq!(r[0], rating("1", "1193", 5));
        assert_eq!(r[1].stars, Ratio::new(5, 2));
        let mut out = Vec::new();
        write_ratings(&r, &mut out).unwrap();
        assert_eq!(read_ratings(out.as_slice()).unwrap(), r);
        assert!(read_ratings("1\t2\t6\n".as_bytes()).is_err());
        assert!(read_ratings("1\t2\n".as_bytes()).is_err());
    }
}
