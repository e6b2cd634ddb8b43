use super::CartanType;
use crate::polyring::Root;
use std::collections::{BTreeSet, HashMap};

/// Positive roots and simple reflections acting on simple-root coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let rank = cartan_type.rank;
        let mut found: BTreeSet<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        let mut frontier: Vec<Root> = found.iter().cloned().collect();
        while let Some(beta) = frontier.pop() {
            for i in 0..rank {
                let image = reflect(&cartan, i, &beta);
                if image.is_positive() && found.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }
        let positive: Vec<Root> = found.into_iter().collect();
        let index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        RootSystem {
            cartan_type,
            cartan,
            positive,
            index,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Positive roots sorted by height; the first `rank` are the simple roots.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn root_index(&self, beta: &Root) -> Option<usize> {
        self.index.get(beta).copied()
    }

    /// `s_i(β) = β - <β, α_i^∨> α_i`.
    pub fn reflect(&self, i: usize, beta: &Root) -> Root {
        reflect(&self.cartan, i, beta)
    }

    /// The matrix of `s_i` on root coordinates, column `j` being `s_i(α_j)`.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i32>> {
        let r = self.rank();
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            let img = self.reflect(i, &Root::simple(r, j));
            for (row, &c) in m.iter_mut().zip(img.coords()) {
                row[j] = c;
            }
        }
        m
    }
}

fn reflect(cartan: &[Vec<i32>], i: usize, beta: &Root) -> Root {
    let pairing: i32 = beta
        .coords()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * cartan[i][j])
        .sum();
    let mut out = beta.clone();
    out.0[i] -= pairing;
    out
}
