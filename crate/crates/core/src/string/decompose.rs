use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

use super::{initial_index, split_off, GradedFpModule, SplitOff, StringChain, StringIndex};

/// One summand `Σ^shift M(m, I)` of a decomposition. `basis[j]` is the image
/// of the generator `x_j` in the coordinates of the decomposed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub shift: usize,
    pub index: StringIndex,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Set when some summand is censored at the window top.
    pub window_uncertain: bool,
}

impl Decomposition {
    /// The sorted multiset of `(shift, index)` pairs.
    pub fn multiset(&self) -> Vec<(usize, StringIndex)> {
        let mut v: Vec<_> = self.summands.iter().map(|s| (s.shift, s.index.clone())).collect();
        v.sort();
        v
    }

    /// Per degree, the matrix whose columns are the summand generators in
    /// summand order. It is invertible and conjugates the module into the
    /// direct sum of its summands.
    pub fn change_of_basis(&self, m: &GradedFpModule) -> Vec<FpMatrix> {
        (0..=m.top())
            .map(|deg| {
                let cols: Vec<Vec<u32>> = self
                    .summands
                    .iter()
                    .filter(|s| deg >= s.shift && deg <= s.shift + s.index.m())
                    .map(|s| s.basis[deg - s.shift].clone())
                    .collect();
                FpMatrix::from_columns(m.prime(), m.dim(deg), &cols)
            })
            .collect()
    }
}

/// Decomposes a module into string summands by repeatedly splitting off the
/// initial submodule of the first basis vector in the lowest nonzero degree.
pub fn decompose(m: &GradedFpModule) -> Result<Decomposition> {
    decompose_traced(m, &mut |_, _, _| {})
}

/// As [`decompose`], calling `observe(current, chain, split)` after every
/// split, where `current` is the module the chain was found in.
pub fn decompose_traced(
    m: &GradedFpModule,
    observe: &mut dyn FnMut(&GradedFpModule, &StringChain, &SplitOff),
) -> Result<Decomposition> {
    let violations = m.validate();
    if let Some(v) = violations.first() {
        return Err(Error::InvalidModule(v.to_string()));
    }
    let p = m.prime();
    let mut current = m.clone();
    // Columns express the basis of `current` in the coordinates of `m`.
    let mut embed: Vec<FpMatrix> = (0..=m.top()).map(|i| FpMatrix::identity(p, m.dim(i))).collect();
    let mut summands = Vec::new();
    while let Some(d) = current.lowest_nonzero_degree() {
        let mut m0 = vec![0u32; current.dim(d)];
        m0[0] = 1;
        let (index, chain) = initial_index(&current, &m0)?;
        let split = split_off(&current, &chain)?;
        observe(&current, &chain, &split);
        let basis = chain
            .elements
            .iter()
            .enumerate()
            .map(|(j, x)| embed[d + j].apply(x))
            .collect();
        summands.push(Summand { shift: d, index, basis });
        for (e, c) in embed.iter_mut().zip(&split.embedding.components) {
            *e = e.mul(c)?;
        }
        current = split.complement;
    }
    let window_uncertain = summands.iter().any(|s| s.index.is_censored());
    Ok(Decomposition {
        summands,
        window_uncertain,
    })
}
