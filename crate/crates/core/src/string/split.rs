use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};

use super::hom::{hom_system, GradedMap};
use super::{string_module, GradedFpModule, StringChain};

/// A string summand split off a module, with the data witnessing
/// `M ≅ string ⊕ complement`.
#[derive(Clone, Debug)]
pub struct SplitOff {
    /// `Σ^start M(m, I)` on the same window.
    pub string: GradedFpModule,
    /// `string -> M`, sending the generators to the chain.
    pub inclusion: GradedMap,
    /// `M -> string` with `retraction ∘ inclusion = id`.
    pub retraction: GradedMap,
    /// `ker(retraction)` with the induced maps.
    pub complement: GradedFpModule,
    /// `complement -> M`, the inclusion of the kernel.
    pub embedding: GradedMap,
    /// Set when the chain is censored: the retraction is only checked inside
    /// the window.
    pub window_uncertain: bool,
}

/// Solves for a retraction of the chain's string module and splits it off.
///
/// The retraction exists whenever the chain is initial; failure to find one
/// is reported as [`Error::NoRetraction`].
pub fn split_off(m: &GradedFpModule, chain: &StringChain) -> Result<SplitOff> {
    chain.check(m)?;
    let p = m.prime();
    let string = string_module(&chain.index, chain.start, p, m.top())?;
    let sys = hom_system(m, &string)?;

    let mut eq = sys.equations.clone();
    let mut rhs = vec![0u32; eq.rows()];
    let mut extra = FpMatrix::zero(p, chain.elements.len(), sys.unknowns);
    for (j, x) in chain.elements.iter().enumerate() {
        let deg = chain.start + j;
        for (c, &xc) in x.iter().enumerate() {
            extra.set(j, sys.offsets[deg] + c, xc);
        }
    }
    eq = FpMatrix::vstack(p, sys.unknowns, &[&eq, &extra]);
    rhs.extend(std::iter::repeat_n(1, chain.elements.len()));
    let Some(sol) = eq.solve(&rhs)? else {
        return Err(Error::NoRetraction(format!(
            "chain ({}) at degree {}",
            chain.index, chain.start
        )));
    };

    let mut at = 0;
    let retraction = GradedMap {
        components: sys
            .shapes
            .iter()
            .map(|&(r, c)| {
                let block = &sol.particular[at..at + r * c];
                at += r * c;
                FpMatrix::from_flat(p, r, c, &block.iter().map(|&x| x as u64).collect::<Vec<_>>()).expect("shape")
            })
            .collect(),
    };

    let inclusion = GradedMap {
        components: (0..=m.top())
            .map(|deg| {
                if deg >= chain.start && deg <= chain.end_degree() {
                    FpMatrix::from_columns(p, m.dim(deg), &[chain.elements[deg - chain.start].clone()])
                } else {
                    FpMatrix::zero(p, m.dim(deg), 0)
                }
            })
            .collect(),
    };

    let kernels: Vec<Subspace> = retraction.components.iter().map(FpMatrix::kernel).collect();
    let embedding = GradedMap {
        components: kernels.iter().map(Subspace::as_columns).collect(),
    };
    let coords = |sub: &Subspace, v: &[u32]| sub.coordinates(v).expect("the kernel of a module map is a submodule");
    let induced_s = (0..m.top())
        .map(|i| {
            let cols: Vec<Vec<u32>> = kernels[i]
                .basis()
                .iter()
                .map(|b| coords(&kernels[i + 1], &m.s(i).apply(b)))
                .collect();
            FpMatrix::from_columns(p, kernels[i + 1].dim(), &cols)
        })
        .collect();
    let induced_t = (0..m.top())
        .map(|i| {
            let cols: Vec<Vec<u32>> = kernels[i + 1]
                .basis()
                .iter()
                .map(|b| coords(&kernels[i], &m.t(i).apply(b)))
                .collect();
            FpMatrix::from_columns(p, kernels[i].dim(), &cols)
        })
        .collect();
    let dims = kernels.iter().map(Subspace::dim).collect();
    let complement = GradedFpModule::new(p, dims, induced_s, induced_t, m.extends())?;

    Ok(SplitOff {
        string,
        inclusion,
        retraction,
        complement,
        embedding,
        window_uncertain: chain.index.is_censored(),
    })
}
