//! Small helpers for directed graphs on `0..n` given by edge lists.

use std::collections::BTreeSet;

fn successors(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for &(a, b) in edges {
        out[a].push(b);
    }
    for s in &mut out {
        s.sort_unstable();
        s.dedup();
    }
    out
}

/// Some oriented cycle `v_0 -> v_1 -> ... -> v_0`, listed with the start
/// repeated at the end.
pub(crate) fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let succ = successors(n, edges);
    let mut done = vec![false; n];
    let mut on_stack = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        // the stack is always a directed path from `root`
        let mut stack = vec![(root, 0usize)];
        on_stack[root] = true;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < succ[v].len() {
                let w = succ[v][top.1];
                top.1 += 1;
                if on_stack[w] {
                    let start = stack.iter().position(|&(u, _)| u == w).expect("on stack");
                    let mut cycle: Vec<usize> = stack[start..].iter().map(|&(u, _)| u).collect();
                    cycle.push(w);
                    return Some(cycle);
                }
                if !done[w] {
                    on_stack[w] = true;
                    stack.push((w, 0));
                }
            } else {
                on_stack[v] = false;
                done[v] = true;
                stack.pop();
            }
        }
    }
    None
}

/// Topological order of an acyclic graph; among available vertices the one
/// with the smallest `priority` comes first.
pub(crate) fn topological_order(
    n: usize,
    edges: &[(usize, usize)],
    priority: impl Fn(usize) -> usize,
) -> Option<Vec<usize>> {
    let succ = successors(n, edges);
    let mut indegree = vec![0usize; n];
    for s in &succ {
        for &w in s {
            indegree[w] += 1;
        }
    }
    let mut ready: BTreeSet<(usize, usize)> = (0..n)
        .filter(|&v| indegree[v] == 0)
        .map(|v| (priority(v), v))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some((p, v)) = ready.iter().next().copied() {
        ready.remove(&(p, v));
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.insert((priority(w), w));
            }
        }
    }
    (order.len() == n).then_some(order)
}
