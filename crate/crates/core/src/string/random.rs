use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{FpMatrix, Prime};

use super::{string_module, GradedFpModule, Length, StringIndex};

fn random_matrix(rng: &mut ChaCha8Rng, p: Prime, rows: usize, cols: usize) -> FpMatrix {
    FpMatrix::from_fn(p, rows, cols, |_, _| rng.gen_range(0..p.as_u64()))
}

fn random_invertible(rng: &mut ChaCha8Rng, p: Prime, n: usize) -> FpMatrix {
    loop {
        let m = random_matrix(rng, p, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// All `t: k^b -> k^a` with `s t = 0` and `t s = 0` for a given
/// `s: k^a -> k^b`, as a basis of flattened matrices.
fn compatible_t_basis(s: &FpMatrix) -> Vec<Vec<u32>> {
    let p = s.prime();
    let (b, a) = (s.rows(), s.cols());
    let unknowns = a * b;
    let var = |r: usize, c: usize| r * b + c;
    let mut rows = Vec::new();
    // (s t)[x][y] = sum_k s[x][k] t[k][y]
    for x in 0..b {
        for y in 0..b {
            let mut row = vec![0u64; unknowns];
            for k in 0..a {
                row[var(k, y)] = s.get(x, k) as u64;
            }
            rows.push(row);
        }
    }
    // (t s)[x][y] = sum_k t[x][k] s[k][y]
    for x in 0..a {
        for y in 0..a {
            let mut row = vec![0u64; unknowns];
            for k in 0..b {
                row[var(x, k)] = s.get(k, y) as u64;
            }
            rows.push(row);
        }
    }
    let flat: Vec<u64> = rows.into_iter().flatten().collect();
    let eq = FpMatrix::from_flat(p, flat.len() / unknowns.max(1), unknowns, &flat).expect("shape");
    eq.kernel().basis().to_vec()
}

/// A random module on the window `0..=top` with every dimension at most
/// `maxdim`: each `s` is uniform, then each `t` is uniform among the maps
/// compatible with it.
pub fn random_module(p: Prime, top: usize, maxdim: usize, seed: u64) -> GradedFpModule {
    random_module_impl(p, top, maxdim, seed, true)
}

/// As [`random_module`] but with `t = 0`.
pub fn random_s_module(p: Prime, top: usize, maxdim: usize, seed: u64) -> GradedFpModule {
    random_module_impl(p, top, maxdim, seed, false)
}

fn random_module_impl(p: Prime, top: usize, maxdim: usize, seed: u64, with_t: bool) -> GradedFpModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=maxdim)).collect();
    let mut s_maps = Vec::with_capacity(top);
    let mut t_maps = Vec::with_capacity(top);
    for i in 0..top {
        let s = random_matrix(&mut rng, p, dims[i + 1], dims[i]);
        let mut t = FpMatrix::zero(p, dims[i], dims[i + 1]);
        if with_t {
            let basis = compatible_t_basis(&s);
            let mut flat = vec![0u32; dims[i] * dims[i + 1]];
            for v in &basis {
                let c = rng.gen_range(0..p.get());
                for (f, &x) in flat.iter_mut().zip(v) {
                    *f = p.add(*f, p.mul(c, x));
                }
            }
            t = FpMatrix::from_flat(
                p,
                dims[i],
                dims[i + 1],
                &flat.iter().map(|&x| x as u64).collect::<Vec<_>>(),
            )
            .expect("shape");
        }
        s_maps.push(s);
        t_maps.push(t);
    }
    GradedFpModule::new(p, dims, s_maps, t_maps, false).expect("shapes are consistent by construction")
}

/// A random graded isomorphic copy of `m`, with the isomorphisms
/// `P_i: M_i -> M'_i`.
pub fn scramble_iso(m: &GradedFpModule, seed: u64) -> (GradedFpModule, Vec<FpMatrix>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso: Vec<FpMatrix> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(&mut rng, m.prime(), d))
        .collect();
    let conj = m.conjugate(&iso).expect("random matrices were checked invertible");
    (conj, iso)
}

/// A scrambled direct sum of `count` random string modules together with the
/// multiset it was built from.
///
/// With `extends` set, summands reaching the window top are censored and the
/// module extends past the window.
pub fn random_string_sum(
    p: Prime,
    top: usize,
    count: usize,
    extends: bool,
    seed: u64,
) -> Result<(GradedFpModule, Vec<(usize, StringIndex)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::with_capacity(count);
    let mut expected = Vec::with_capacity(count);
    for _ in 0..count {
        let shift = rng.gen_range(0..=top);
        let m = rng.gen_range(0..=top - shift);
        let set: BTreeSet<usize> = (1..=m).filter(|_| rng.gen_bool(0.5)).collect();
        let length = if extends && shift + m == top {
            Length::AtLeast(m)
        } else {
            Length::Finite(m)
        };
        let index = StringIndex::new(length, set)?;
        let mut module = string_module(&index, shift, p, top)?;
        if extends && !index.is_censored() {
            module = GradedFpModule::new(
                p,
                module.dims().to_vec(),
                module.s_maps().to_vec(),
                module.t_maps().to_vec(),
                true,
            )?;
        }
        parts.push(module);
        expected.push((shift, index));
    }
    let refs: Vec<&GradedFpModule> = parts.iter().collect();
    let sum = if refs.is_empty() {
        GradedFpModule::zero(p, top, extends)
    } else {
        GradedFpModule::direct_sum(p, top, &refs)?
    };
    let (scrambled, _) = scramble_iso(&sum, rng.gen());
    expected.sort();
    Ok((scrambled, expected))
}
