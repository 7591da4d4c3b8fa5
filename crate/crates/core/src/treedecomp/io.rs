use thiserror::Error;

use super::TreeDecomposition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdParseError {
    #[error("missing `s td <bags> <width+1> <n>` header")]
    MissingHeader,
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed bag line")]
    MalformedBag { line: usize },
    #[error("line {line}: bag id {id} out of range 1..={bags}")]
    BagOutOfRange { line: usize, id: usize, bags: usize },
    #[error("line {line}: bag {id} declared twice")]
    DuplicateBag { line: usize, id: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: malformed tree edge line")]
    MalformedEdge { line: usize },
    #[error("bag {id} is never declared")]
    MissingBag { id: usize },
    #[error("bag {id} has {size} vertices, more than the announced {max}")]
    BagTooLarge { id: usize, size: usize, max: usize },
}

/// Parsed `.td` file together with the vertex count from its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTd {
    pub n: usize,
    pub td: TreeDecomposition,
}

/// Parses the PACE 2017 `.td` format. The decomposition is rooted at bag 1.
pub fn parse_td(text: &str) -> Result<ParsedTd, TdParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => continue,
            Some("s") => {
                if header.is_some() {
                    return Err(TdParseError::DuplicateHeader { line });
                }
                let nums: Option<Vec<usize>> = tokens[1..]
                    .iter()
                    .skip(1)
                    .map(|t| t.parse().ok())
                    .collect();
                match (tokens.get(1), nums.as_deref()) {
                    (Some(&"td"), Some(&[k, w, n])) => {
                        header = Some((k, w, n));
                        bags = vec![None; k];
                    }
                    _ => return Err(TdParseError::MalformedHeader { line }),
                }
            }
            Some("b") => {
                let (k, _, n) = header.ok_or(TdParseError::MissingHeader)?;
                let nums: Option<Vec<usize>> = tokens[1..].iter().map(|t| t.parse().ok()).collect();
                let nums = nums.filter(|x| !x.is_empty()).ok_or(TdParseError::MalformedBag { line })?;
                let id = nums[0];
                if id == 0 || id > k {
                    return Err(TdParseError::BagOutOfRange { line, id, bags: k });
                }
                if bags[id - 1].is_some() {
                    return Err(TdParseError::DuplicateBag { line, id });
                }
                let mut bag = Vec::with_capacity(nums.len() - 1);
                for &v in &nums[1..] {
                    if v == 0 || v > n {
                        return Err(TdParseError::VertexOutOfRange { line, vertex: v, n });
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            Some(_) => {
                let (k, _, _) = header.ok_or(TdParseError::MissingHeader)?;
                let nums: Option<Vec<usize>> = tokens.iter().map(|t| t.parse().ok()).collect();
                match nums.as_deref() {
                    Some(&[a, b]) => {
                        for id in [a, b] {
                            if id == 0 || id > k {
                                return Err(TdParseError::BagOutOfRange { line, id, bags: k });
                            }
                        }
                        edges.push((a - 1, b - 1));
                    }
                    _ => return Err(TdParseError::MalformedEdge { line }),
                }
            }
        }
    }

    let (_, max, n) = header.ok_or(TdParseError::MissingHeader)?;
    let mut out = Vec::with_capacity(bags.len());
    for (i, bag) in bags.into_iter().enumerate() {
        let bag = bag.ok_or(TdParseError::MissingBag { id: i + 1 })?;
        if bag.len() > max {
            return Err(TdParseError::BagTooLarge { id: i + 1, size: bag.len(), max });
        }
        out.push(bag);
    }
    Ok(ParsedTd { n, td: TreeDecomposition::new(out, edges, 0) })
}

/// Writes a decomposition in `.td` form. Optional per-bag comments are
/// emitted as `c` lines right before the bag they describe.
pub fn write_td(td: &TreeDecomposition, n: usize, comments: Option<&[String]>) -> String {
    let mut out = format!("s td {} {} {}\n", td.node_count(), td.width() + 1, n);
    for (i, bag) in td.bags().iter().enumerate() {
        if let Some(c) = comments.and_then(|c| c.get(i)) {
            out.push_str(&format!("c {c}\n"));
        }
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_two_bags() {
        let p = parse_td("c x\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        assert_eq!(p.n, 3);
        assert_eq!(p.td.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(p.td.edges(), &[(0, 1)]);
        assert_eq!(p.td.root(), 0);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_td("b 1 1 2\n").unwrap_err(), TdParseError::MissingHeader);
        assert_eq!(parse_td("").unwrap_err(), TdParseError::MissingHeader);
        assert_eq!(
            parse_td("s td 1 2 3\nb 1 1 9\n").unwrap_err(),
            TdParseError::VertexOutOfRange { line: 2, vertex: 9, n: 3 }
        );
        assert_eq!(
            parse_td("s td 2 2 3\nb 1 1 2\n").unwrap_err(),
            TdParseError::MissingBag { id: 2 }
        );
        assert_eq!(
            parse_td("s tw 2 2 3\n").unwrap_err(),
            TdParseError::MalformedHeader { line: 1 }
        );
        assert_eq!(
            parse_td("s td 2 2 3\nb 1 1\nb 2 2\n1 x\n").unwrap_err(),
            TdParseError::MalformedEdge { line: 4 }
        );
    }

    #[test]
    fn write_then_read() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)], 0);
        let text = write_td(&td, 4, None);
        assert_eq!(parse_td(&text).unwrap().td, td);
    }
}
