use std::collections::{HashSet, VecDeque};

use crate::error::{guard, Error, Result};
use crate::linalg::{PGroupHom, Prime};

use super::WittModule;

/// A degree-preserving map of Witt modules, one group map per degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittMap {
    pub components: Vec<PGroupHom>,
}

impl WittMap {
    pub fn zero(from: &WittModule, to: &WittModule) -> WittMap {
        WittMap {
            components: (0..=from.top())
                .map(|i| PGroupHom::zero(from.prime(), from.orders(i).to_vec(), to.orders(i).to_vec()))
                .collect(),
        }
    }

    pub fn identity(m: &WittModule) -> WittMap {
        WittMap {
            components: (0..=m.top())
                .map(|i| PGroupHom::identity(m.prime(), m.orders(i).to_vec()))
                .collect(),
        }
    }

    /// Whether the components run between the right groups, are well defined
    /// and commute with `s` and `t`.
    pub fn is_homomorphism(&self, from: &WittModule, to: &WittModule) -> bool {
        if from.top() != to.top() || self.components.len() != from.top() + 1 {
            return false;
        }
        for (i, f) in self.components.iter().enumerate() {
            if f.src() != from.orders(i) || f.dst() != to.orders(i) || f.ill_defined_entry().is_some() {
                return false;
            }
        }
        (0..from.top()).all(|i| {
            let (f0, f1) = (&self.components[i], &self.components[i + 1]);
            let s_ok = f1.compose(from.s(i)).ok() == to.s(i).compose(f0).ok();
            let t_ok = f0.compose(from.t(i)).ok() == to.t(i).compose(f1).ok();
            s_ok && t_ok
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &WittMap) -> Result<WittMap> {
        if self.components.len() != inner.components.len() {
            return Err(Error::DimensionMismatch("maps on different windows".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&inner.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        Ok(WittMap { components })
    }

    pub fn add(&self, other: &WittMap) -> Result<WittMap> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(WittMap { components })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PGroupHom::is_zero)
    }

    /// An isomorphism in every degree.
    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|f| f.src() == f.dst() && f.is_injective())
    }
}

/// One free coordinate of a map: the entry `(row, col)` in `degree` is
/// `p^scale · u` with `u ∈ Z/p^order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    degree: usize,
    row: usize,
    col: usize,
    scale: u32,
    order: u32,
}

/// `Hom(M, N)` of Witt modules as a subgroup of the coordinate group
/// `⊕ Z/p^{order}` of well-defined entry choices.
#[derive(Clone, Debug)]
pub struct HomGroup {
    p: Prime,
    src: Vec<Vec<u32>>,
    dst: Vec<Vec<u32>>,
    slots: Vec<Slot>,
    generators: Vec<Vec<u64>>,
    log_order: u32,
}

/// Solves the linear conditions `f s = s f` and `f t = t f` on the entries.
///
/// An entry from `Z/p^a` to `Z/p^b` is well defined iff it is divisible by
/// `p^{max(b - a, 0)}`, so it is `p^{max(b-a,0)} u` with `u` mod
/// `p^{min(a, b)}`; the conditions become a group map on these `u`.
pub fn hom_group(m: &WittModule, n: &WittModule) -> Result<HomGroup> {
    if m.prime() != n.prime() {
        return Err(Error::ModulusMismatch {
            left: m.prime().as_u64(),
            right: n.prime().as_u64(),
        });
    }
    if m.top() != n.top() {
        return Err(Error::DimensionMismatch(format!("windows {} and {}", m.top(), n.top())));
    }
    let p = m.prime();
    let mut slots = Vec::new();
    // slot_of[degree][row * cols + col]
    let mut slot_of: Vec<Vec<usize>> = Vec::new();
    for i in 0..=m.top() {
        let (a, b) = (m.orders(i), n.orders(i));
        let mut here = Vec::with_capacity(a.len() * b.len());
        for (row, &bk) in b.iter().enumerate() {
            for (col, &al) in a.iter().enumerate() {
                here.push(slots.len());
                slots.push(Slot {
                    degree: i,
                    row,
                    col,
                    scale: bk.saturating_sub(al),
                    order: al.min(bk),
                });
            }
        }
        slot_of.push(here);
    }
    let mut rows: Vec<(u32, Vec<u64>)> = Vec::new();
    let nslots = slots.len();
    let slot_value = |sl: usize| p.power(slots[sl].scale);
    for i in 0..m.top() {
        // f_{i+1} s^M - s^N f_i, entry (k, l): N_{i+1}[k] <- M_i[l].
        let (ma, mb) = (m.orders(i), m.orders(i + 1));
        let (na, nb) = (n.orders(i), n.orders(i + 1));
        for (k, &ord) in nb.iter().enumerate() {
            for l in 0..ma.len() {
                let modulus = p.power(ord);
                let mut row = vec![0u64; nslots];
                for l2 in 0..mb.len() {
                    let sl = slot_of[i + 1][k * mb.len() + l2];
                    let c = mulmod(slot_value(sl), m.s(i).get(l2, l), modulus);
                    row[sl] = (row[sl] + c) % modulus;
                }
                for k2 in 0..na.len() {
                    let sl = slot_of[i][k2 * ma.len() + l];
                    let c = mulmod(slot_value(sl), n.s(i).get(k, k2), modulus);
                    row[sl] = (row[sl] + modulus - c) % modulus;
                }
                rows.push((ord, row));
            }
        }
        // f_i t^M - t^N f_{i+1}, entry (k, l): N_i[k] <- M_{i+1}[l].
        for (k, &ord) in na.iter().enumerate() {
            for l in 0..mb.len() {
                let modulus = p.power(ord);
                let mut row = vec![0u64; nslots];
                for l2 in 0..ma.len() {
                    let sl = slot_of[i][k * ma.len() + l2];
                    let c = mulmod(slot_value(sl), m.t(i).get(l2, l), modulus);
                    row[sl] = (row[sl] + c) % modulus;
                }
                for k2 in 0..nb.len() {
                    let sl = slot_of[i + 1][k2 * mb.len() + l];
                    let c = mulmod(slot_value(sl), n.t(i).get(k, k2), modulus);
                    row[sl] = (row[sl] + modulus - c) % modulus;
                }
                rows.push((ord, row));
            }
        }
    }
    let src_orders: Vec<u32> = slots.iter().map(|s| s.order).collect();
    let dst_orders: Vec<u32> = rows.iter().map(|(o, _)| *o).collect();
    let entries: Vec<u64> = rows.into_iter().flat_map(|(_, r)| r).collect();
    let phi = PGroupHom::new(p, src_orders, dst_orders, entries)?;
    Ok(HomGroup {
        p,
        src: m.all_orders().to_vec(),
        dst: n.all_orders().to_vec(),
        slots,
        generators: phi.kernel_generators(),
        log_order: phi.log_kernel_order(),
    })
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl HomGroup {
    /// `log_p |Hom(M, N)|`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn is_zero(&self) -> bool {
        self.log_order == 0
    }

    /// Additive generators in coordinate form.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn generator_maps(&self) -> Vec<WittMap> {
        self.generators.iter().map(|g| self.map_of(g)).collect()
    }

    /// The map with the given coordinates.
    pub fn map_of(&self, coords: &[u64]) -> WittMap {
        let mut entries: Vec<Vec<u64>> = (0..self.src.len())
            .map(|i| vec![0u64; self.src[i].len() * self.dst[i].len()])
            .collect();
        for (slot, &u) in self.slots.iter().zip(coords) {
            let b = self.dst[slot.degree][slot.row];
            let x = mulmod(self.p.power(slot.scale), u, self.p.power(b));
            entries[slot.degree][slot.row * self.src[slot.degree].len() + slot.col] = x;
        }
        let components = entries
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                PGroupHom::new(self.p, self.src[i].clone(), self.dst[i].clone(), e).expect("slots are well defined")
            })
            .collect();
        WittMap { components }
    }

    /// Coordinates of a map between the same modules.
    pub fn coordinates_of(&self, f: &WittMap) -> Vec<u64> {
        self.slots
            .iter()
            .map(|s| (f.components[s.degree].get(s.row, s.col) / self.p.power(s.scale)) % self.p.power(s.order))
            .collect()
    }

    fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.slots)
            .map(|((x, y), s)| (x + y) % self.p.power(s.order))
            .collect()
    }

    /// Every element, by closing the generators under addition.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let size = (self.p.as_u64() as u128)
            .checked_pow(self.log_order)
            .unwrap_or(u128::MAX);
        guard("homomorphisms", size)?;
        let zero = vec![0u64; self.slots.len()];
        let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = self.add_coords(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(seen.len() as u128, size);
        let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

/// `End(M)` with its multiplication in coordinates.
#[derive(Clone, Debug)]
pub struct EndomorphismRing {
    pub group: HomGroup,
    /// `table[a][b]` holds the coordinates of `g_a ∘ g_b` for the additive
    /// generators `g`.
    pub table: Vec<Vec<Vec<u64>>>,
}

pub fn endomorphism_ring(m: &WittModule) -> Result<EndomorphismRing> {
    let group = hom_group(m, m)?;
    let maps = group.generator_maps();
    let table = maps
        .iter()
        .map(|a| {
            maps.iter()
                .map(|b| Ok(group.coordinates_of(&a.compose(b)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EndomorphismRing { group, table })
}

impl EndomorphismRing {
    /// Whether the non-units form an additive subgroup (equivalently an
    /// ideal), which for a finite ring means it is local.
    pub fn is_local(&self) -> Result<bool> {
        let elements = self.group.elements()?;
        let non_units: Vec<&Vec<u64>> = elements
            .iter()
            .filter(|x| !self.group.map_of(x).is_invertible())
            .collect();
        if non_units.len() == elements.len() {
            // Only the zero ring has no units.
            return Ok(false);
        }
        let set: HashSet<&Vec<u64>> = non_units.iter().copied().collect();
        for a in &non_units {
            for b in &non_units {
                if !set.contains(&self.group.add_coords(a, b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All idempotents, by enumeration.
    pub fn idempotents(&self) -> Result<Vec<WittMap>> {
        let mut out = Vec::new();
        for x in self.group.elements()? {
            let e = self.group.map_of(&x);
            if e.compose(&e)? == e {
                out.push(e);
            }
        }
        Ok(out)
    }
}

/// The idempotent endomorphisms of `m`.
pub fn idempotent_search(m: &WittModule) -> Result<Vec<WittMap>> {
    endomorphism_ring(m)?.idempotents()
}
