//! Disjoint per-vertex edge pools inside `G[S]` from an Eulerian orientation.

use crate::graph::Graph;

/// Splits the edges of `G[small]` into disjoint pools, one per small vertex.
///
/// An auxiliary vertex is joined to every odd-degree vertex of `G[small]`,
/// which makes every component Eulerian. Each component's circuit is walked
/// with Hierholzer's algorithm from its lowest vertex, neighbours taken in
/// ascending order, and every real edge goes to the pool of the vertex it
/// leaves. The result is indexed by parent vertex; pools hold parent edge
/// indices in ascending order and are empty outside `small`.
pub fn build_edge_pools(g: &Graph, small: &[usize]) -> Vec<Vec<usize>> {
    let mut members = small.to_vec();
    members.sort_unstable();
    members.dedup();
    let sub = g.induced_subgraph(&members);
    let k = sub.graph.vertex_count();
    let aux = k;

    // adjacency of G' as (neighbour, edge id); edge ids >= real count are auxiliary
    let real = sub.graph.edge_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k + 1];
    for (e, &(u, v)) in sub.graph.edges().iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut next_id = real;
    for v in 0..k {
        if sub.graph.degree(v) % 2 == 1 {
            adj[v].push((aux, next_id));
            adj[aux].push((v, next_id));
            next_id += 1;
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut used = vec![false; next_id];
    let mut cursor = vec![0usize; k + 1];
    let mut pools = vec![Vec::new(); g.vertex_count()];
    for start in 0..=k {
        if cursor[start] == adj[start].len() || adj[start].iter().all(|&(_, e)| used[e]) {
            continue;
        }
        let mut stack = vec![start];
        while let Some(&top) = stack.last() {
            let list = &adj[top];
            while cursor[top] < list.len() && used[list[cursor[top]].1] {
                cursor[top] += 1;
            }
            if cursor[top] == list.len() {
                stack.pop();
                continue;
            }
            let (next, e) = list[cursor[top]];
            used[e] = true;
            if e < real {
                pools[sub.vertex_map[top]].push(sub.edge_map[e]);
            }
            stack.push(next);
        }
    }
    for pool in &mut pools {
        pool.sort_unstable();
    }
    pools
}

/// Checks that `pools` split the edges of `G[small]` exactly, that every
/// pooled edge touches its owner, and that each pool holds at least
/// `floor(d_S(v)/2) - 1` edges.
pub fn validate_pools(g: &Graph, small: &[usize], pools: &[Vec<usize>]) -> Result<(), String> {
    let mut in_small = vec![false; g.vertex_count()];
    for &v in small {
        in_small[v] = true;
    }
    let mut owner = vec![None; g.edge_count()];
    for (v, pool) in pools.iter().enumerate() {
        if !pool.is_empty() && !in_small[v] {
            return Err(format!("vertex {v} outside S owns edges"));
        }
        for &e in pool {
            let (a, b) = g.endpoints(e);
            if a != v && b != v {
                return Err(format!("edge {e} in the pool of {v} is not incident to it"));
            }
            if !(in_small[a] && in_small[b]) {
                return Err(format!("edge {e} leaves G[S]"));
            }
            if let Some(other) = owner[e].replace(v) {
                return Err(format!("edge {e} in the pools of {other} and {v}"));
            }
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if in_small[a] && in_small[b] && owner[e].is_none() {
            return Err(format!("edge {e} of G[S] is in no pool"));
        }
    }
    for &v in small {
        let inner = g.neighbors(v).iter().filter(|inc| in_small[inc.neighbor]).count();
        if pools[v].len() + 1 < inner / 2 {
            return Err(format!("pool of {v} has {} edges, inner degree {inner}", pools[v].len()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_complete, Graph};

    #[test]
    fn triangle_gives_one_edge_each() {
        let g = generate_complete(3);
        let pools = build_edge_pools(&g, &[0, 1, 2]);
        assert!(pools.iter().all(|p| p.len() == 1));
        let mut all: Vec<_> = pools.concat();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2]);
    }

    #[test]
    fn single_edge_goes_to_lower_endpoint() {
        let g = Graph::from_edges(4, [(1, 3), (0, 1), (2, 3)]).unwrap();
        let pools = build_edge_pools(&g, &[1, 3]);
        assert_eq!(pools[1], vec![0]);
        assert!(pools[3].is_empty());
    }

    #[test]
    fn edgeless_small_set() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let pools = build_edge_pools(&g, &[0, 2]);
        assert!(pools.iter().all(Vec::is_empty));
        assert!(build_edge_pools(&g, &[]).iter().all(Vec::is_empty));
    }

    #[test]
    fn pools_partition_and_are_large() {
        let g = generate_complete(9);
        let small = [0, 2, 3, 5, 8];
        let pools = build_edge_pools(&g, &small);
        let mut all: Vec<_> = pools.concat();
        all.sort_unstable();
        let inside: Vec<_> = (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                small.contains(&u) && small.contains(&v)
            })
            .collect();
        assert_eq!(all, inside);
        assert_eq!(validate_pools(&g, &small, &pools), Ok(()));
        for &v in &small {
            assert_eq!(pools[v].len(), 2);
            for &e in &pools[v] {
                let (a, b) = g.endpoints(e);
                assert!(a == v || b == v);
            }
        }
    }
}
