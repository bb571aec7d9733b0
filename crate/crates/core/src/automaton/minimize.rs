use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::GeodesicAutomaton;

/// Language-equivalent automaton with the fewest states, numbered in
/// breadth-first order from the start state (letters in alphabet order).
pub fn minimize(aut: &GeodesicAutomaton) -> GeodesicAutomaton {
    let colors = vec![0u32; aut.num_states()];
    minimize_colored(aut, &colors).0
}

/// Moore minimization refining an initial coloring of the live states.
/// Two states merge only if they have the same color and equivalent
/// futures; the returned colors are indexed by the new states.
pub fn minimize_colored(aut: &GeodesicAutomaton, colors: &[u32]) -> (GeodesicAutomaton, Vec<u32>) {
    let n = aut.num_states();
    let letters = aut.num_letters();
    assert_eq!(colors.len(), n, "one color per live state");
    let fail = n;

    // Block of each state, fail last in its own block.
    let mut block: Vec<u32> = relabel(colors.iter().map(|&c| (c, Vec::new())));
    let fail_block = |block: &[u32]| block.iter().copied().max().map_or(0, |m| m + 1);
    let mut count = distinct(&block);
    loop {
        let fb = fail_block(&block);
        let sigs = (0..n).map(|s| {
            let succ: Vec<u32> = (0..letters)
                .map(|a| {
                    let t = aut.transitions[s * letters + a] as usize;
                    if t == fail {
                        fb
                    } else {
                        block[t]
                    }
                })
                .collect();
            (block[s], succ)
        });
        let refined = relabel(sigs);
        let new_count = distinct(&refined);
        block = refined;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // Canonical numbering by breadth-first search from the start block.
    let mut order: Vec<u32> = vec![u32::MAX; count];
    let mut rep: Vec<usize> = vec![usize::MAX; count];
    for s in 0..n {
        let b = block[s] as usize;
        if rep[b] == usize::MAX {
            rep[b] = s;
        }
    }
    let mut queue = VecDeque::new();
    let mut visited = 0u32;
    let start_block = block[aut.start as usize] as usize;
    order[start_block] = 0;
    visited += 1;
    queue.push_back(start_block);
    let mut bfs = Vec::new();
    while let Some(b) = queue.pop_front() {
        bfs.push(b);
        let s = rep[b];
        for a in 0..letters {
            let t = aut.transitions[s * letters + a] as usize;
            if t == fail {
                continue;
            }
            let tb = block[t] as usize;
            if order[tb] == u32::MAX {
                order[tb] = visited;
                visited += 1;
                queue.push_back(tb);
            }
        }
    }
    let live = bfs.len();
    let mut transitions = Vec::with_capacity(live * letters);
    let mut new_colors = Vec::with_capacity(live);
    for &b in &bfs {
        let s = rep[b];
        new_colors.push(colors[s]);
        for a in 0..letters {
            let t = aut.transitions[s * letters + a] as usize;
            transitions.push(if t == fail { live as u32 } else { order[block[t] as usize] });
        }
    }
    let out = GeodesicAutomaton { transitions, start: 0, ..aut.clone().without_profiles() };
    (out, new_colors)
}

/// Dense relabelling of signatures in order of first appearance.
fn relabel<I: Iterator<Item = (u32, Vec<u32>)>>(sigs: I) -> Vec<u32> {
    let mut ids: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
    sigs.map(|sig| {
        let next = ids.len() as u32;
        *ids.entry(sig).or_insert(next)
    })
    .collect()
}

fn distinct(block: &[u32]) -> usize {
    block.iter().copied().max().map_or(0, |m| m as usize + 1)
}
