use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_LIMIT: usize = 1_000_000;

/// Breadth-first ball growth in a Cayley graph.
#[derive(Clone, Debug)]
pub struct Balls<E> {
    /// Elements in order of discovery; `elements[0]` is the identity.
    pub elements: Vec<E>,
    /// Word length of each element.
    pub lengths: Vec<usize>,
    /// `ball_sizes[k]` is the number of elements of length at most `k`.
    pub ball_sizes: Vec<usize>,
}

impl<E> Balls<E> {
    /// Largest length reached, i.e. the width once the whole group is reached.
    pub fn radius(&self) -> usize {
        self.ball_sizes.len() - 1
    }
}

/// Grows balls `S^0 ⊆ S^1 ⊆ ...` around `identity` by right multiplication with
/// `steps` until no new element appears.
pub fn grow_balls<E, F>(identity: E, steps: &[E], mul: F, limit: usize) -> Result<Balls<E>>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    let mut index: HashMap<E, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![identity];
    let mut lengths = vec![0];
    let mut ball_sizes = vec![1];
    let mut frontier = 0..1;
    loop {
        let level = *lengths.last().unwrap() + 1;
        let start = elements.len();
        for i in frontier.clone() {
            for s in steps {
                let next = mul(&elements[i], s);
                if !index.contains_key(&next) {
                    if elements.len() >= limit {
                        return Err(Error::SizeGuard {
                            size: elements.len() as u128 + 1,
                            limit,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    lengths.push(level);
                }
            }
        }
        if elements.len() == start {
            break;
        }
        ball_sizes.push(elements.len());
        frontier = start..elements.len();
    }
    Ok(Balls {
        elements,
        lengths,
        ball_sizes,
    })
}
