//! Tiny graph grammar for bound experiments: C<n>, P<n>, K<n>, K<a>x<b>,
//! circ<n>:g1,g2,…

use anyhow::{bail, Context, Result};
use sumfree_core::hypergraph::DenseGraph;

pub fn parse_graph(text: &str) -> Result<DenseGraph> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("circ") {
        let (n, gens) = rest
            .split_once(':')
            .context("circulant grammar is circ<n>:g1,g2,…")?;
        let n: usize = n.parse().context("bad circulant order")?;
        let gens: Vec<usize> = gens
            .split(',')
            .map(|g| g.parse::<usize>().context("bad generator"))
            .collect::<Result<_>>()?;
        if gens.iter().any(|&g| g == 0 || g >= n) {
            bail!("generators must be in 1..n");
        }
        let mut g = DenseGraph::circulant(n, &gens);
        g.verify_regular();
        return Ok(g);
    }
    let (kind, rest) = text.split_at(1);
    match kind {
        "C" | "c" => {
            let n: usize = rest.parse().context("bad cycle order")?;
            if n < 3 {
                bail!("cycles need n ≥ 3");
            }
            Ok(DenseGraph::cycle(n))
        }
        "P" | "p" => Ok(DenseGraph::path(rest.parse().context("bad path order")?)),
        "K" | "k" => {
            if let Some((a, b)) = rest.split_once(['x', 'X']) {
                Ok(DenseGraph::complete_bipartite(
                    a.parse().context("bad part size")?,
                    b.parse().context("bad part size")?,
                ))
            } else {
                Ok(DenseGraph::complete(rest.parse().context("bad order")?))
            }
        }
        _ => bail!("unknown graph `{text}` (expected C<n>, P<n>, K<n>, K<a>x<b>, circ<n>:…)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_graph("C5").unwrap().edge_count(), 5);
        assert_eq!(parse_graph("K3x3").unwrap().edge_count(), 9);
        assert_eq!(parse_graph("K4").unwrap().edge_count(), 6);
        assert_eq!(parse_graph("P4").unwrap().edge_count(), 3);
        assert_eq!(parse_graph("circ8:1,3").unwrap().regular_degree, Some(4));
        assert!(parse_graph("Q7").is_err());
        assert!(parse_graph("circ8").is_err());
    }
}
