use super::{FpMatrix, Prime};
use crate::error::{Error, Result};

/// A linear subspace of `F_p^n`, stored by its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// bases are identical and `==` is the equality test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Subspace {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(p: Prime, ambient: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F_{p}^{ambient}",
                v.len()
            )));
        }
        let flat: Vec<u64> = vectors.iter().flatten().map(|&x| x as u64).collect();
        let m = FpMatrix::from_flat(p, vectors.len(), ambient, &flat)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            p,
            ambient,
            basis,
            pivots,
        })
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.as_u64(),
                right: other.p.as_u64(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Canonical coset representative: `v` with every pivot coordinate cleared.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x % p.get()).collect();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                for (wj, &bj) in w.iter_mut().zip(b) {
                    *wj = p.sub(*wj, p.mul(f, bj));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c] % self.p.get()).collect())
    }

    pub fn combination(&self, coeffs: &[u32]) -> Vec<u32> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut out = vec![0u32; self.ambient];
        for (b, &c) in self.basis.iter().zip(coeffs) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o = self.p.add(*o, self.p.mul(c, x));
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let all: Vec<Vec<u32>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.p, self.ambient, &all)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// The vectors orthogonal to every basis vector under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        self.as_rows().kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let both = self.annihilator().sum(&other.annihilator())?;
        Ok(both.annihilator())
    }

    /// The basis as the rows of a `dim x ambient` matrix.
    pub fn as_rows(&self) -> FpMatrix {
        let flat: Vec<u64> = self.basis.iter().flatten().map(|&x| x as u64).collect();
        FpMatrix::from_flat(self.p, self.dim(), self.ambient, &flat).expect("basis shape")
    }

    /// The basis as the columns of an `ambient x dim` matrix.
    pub fn as_columns(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.ambient, &self.basis)
    }

    pub fn kernel_of(a: &FpMatrix) -> Subspace {
        a.kernel()
    }

    /// `A(S)` for `A: F_p^n -> F_p^m`.
    pub fn image(&self, a: &FpMatrix) -> Result<Subspace> {
        if a.cols() != self.ambient {
            return Err(Error::DimensionMismatch("image under a matrix".into()));
        }
        let vs: Vec<Vec<u32>> = self.basis.iter().map(|b| a.apply(b)).collect();
        Subspace::span(self.p, a.rows(), &vs)
    }

    /// `{x : A x in S}` for `A: F_p^n -> F_p^m` and `S` inside `F_p^m`.
    pub fn preimage(&self, a: &FpMatrix) -> Result<Subspace> {
        if a.rows() != self.ambient {
            return Err(Error::DimensionMismatch("preimage under a matrix".into()));
        }
        let q = self.annihilator().as_rows();
        Ok(q.mul(a)?.kernel())
    }

    /// Standard basis vectors completing the echelon basis to a basis of the
    /// ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0; self.ambient];
                v[c] = 1;
                v
            })
            .collect()
    }
}

/// A nonempty affine subspace `point + direction` of `F_p^n`.
///
/// The point is stored reduced modulo the direction, which makes the
/// representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    point: Vec<u32>,
    direction: Subspace,
}

impl AffineSubspace {
    pub fn new(point: Vec<u32>, direction: Subspace) -> AffineSubspace {
        let point = direction.reduce(&point);
        AffineSubspace { point, direction }
    }

    pub fn singleton(p: Prime, point: Vec<u32>) -> AffineSubspace {
        let n = point.len();
        AffineSubspace::new(point, Subspace::zero(p, n))
    }

    pub fn point(&self) -> &[u32] {
        &self.point
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    pub fn ambient(&self) -> usize {
        self.direction.ambient()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let p = self.direction.prime();
        let diff: Vec<u32> = v
            .iter()
            .zip(&self.point)
            .map(|(&a, &b)| p.sub(a % p.get(), b))
            .collect();
        self.direction.contains(&diff)
    }

    pub fn contains_zero(&self) -> bool {
        self.point.iter().all(|&x| x == 0)
    }

    pub fn image(&self, a: &FpMatrix) -> Result<AffineSubspace> {
        let dir = self.direction.image(a)?;
        Ok(AffineSubspace::new(a.apply(&self.point), dir))
    }

    /// `{x : A x in T}`, or `None` when no vector maps into `T`.
    pub fn preimage(&self, a: &FpMatrix) -> Result<Option<AffineSubspace>> {
        if a.rows() != self.ambient() {
            return Err(Error::DimensionMismatch("affine preimage".into()));
        }
        let q = self.direction.annihilator().as_rows();
        let qa = q.mul(a)?;
        let rhs = q.apply(&self.point);
        Ok(qa
            .solve(&rhs)?
            .map(|sol| AffineSubspace::new(sol.particular, sol.kernel)))
    }

    /// `T ∩ S` for a linear subspace `S`.
    pub fn intersect(&self, s: &Subspace) -> Result<Option<AffineSubspace>> {
        if s.ambient() != self.ambient() {
            return Err(Error::DimensionMismatch("affine intersection".into()));
        }
        // point + D c in S  <=>  Q D c = -Q point, Q the annihilator of S.
        let p = s.prime();
        let q = s.annihilator().as_rows();
        let d = self.direction.as_columns();
        let qd = q.mul(&d)?;
        let rhs: Vec<u32> = q.apply(&self.point).into_iter().map(|x| p.neg(x)).collect();
        let Some(sol) = qd.solve(&rhs)? else {
            return Ok(None);
        };
        let mut point = self.point.clone();
        let shift = self.direction.combination(&sol.particular);
        for (a, b) in point.iter_mut().zip(shift) {
            *a = p.add(*a, b);
        }
        let dir_vecs: Vec<Vec<u32>> = sol
            .kernel
            .basis()
            .iter()
            .map(|c| self.direction.combination(c))
            .collect();
        let dir = Subspace::span(p, self.ambient(), &dir_vecs)?;
        Ok(Some(AffineSubspace::new(point, dir)))
    }

    /// `{x in T : A x = 0}`.
    pub fn intersect_kernel(&self, a: &FpMatrix) -> Result<Option<AffineSubspace>> {
        self.intersect(&a.kernel())
    }

    pub fn is_contained_in(&self, s: &Subspace) -> Result<bool> {
        Ok(s.contains(&self.point) && self.direction.is_subspace_of(s)?)
    }

    /// Some element of `T` outside `S`, preferring the stored point, then
    /// the point shifted by the first direction vector leaving `S`.
    pub fn element_outside(&self, s: &Subspace) -> Option<Vec<u32>> {
        if !s.contains(&self.point) {
            return Some(self.point.clone());
        }
        let p = s.prime();
        self.direction
            .basis()
            .iter()
            .find(|d| !s.contains(d))
            .map(|d| self.point.iter().zip(d).map(|(&a, &b)| p.add(a, b)).collect())
    }

    /// Some `x` in `T` with `A x = y`.
    pub fn solve_in(&self, a: &FpMatrix, y: &[u32]) -> Result<Option<Vec<u32>>> {
        let p = self.direction.prime();
        let ad = a.mul(&self.direction.as_columns())?;
        let rhs: Vec<u32> = y
            .iter()
            .zip(a.apply(&self.point))
            .map(|(&yi, ai)| p.sub(yi % p.get(), ai))
            .collect();
        Ok(ad.solve(&rhs)?.map(|sol| {
            let shift = self.direction.combination(&sol.particular);
            self.point.iter().zip(shift).map(|(&a, b)| p.add(a, b)).collect()
        }))
    }

    pub fn size(&self) -> u128 {
        (self.direction.prime().as_u64() as u128)
            .checked_pow(self.direction.dim() as u32)
            .unwrap_or(u128::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::enumerate_vectors;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn coordinate_axes_meet_in_zero() {
        let f2 = p(2);
        let a = Subspace::span(f2, 2, &[vec![1, 0]]).unwrap();
        let b = Subspace::span(f2, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), Subspace::zero(f2, 2));
    }

    #[test]
    fn projection_preimage_of_line_is_plane() {
        let f3 = p(3);
        let a = FpMatrix::from_flat(f3, 1, 2, &[1, 0]).unwrap();
        let line = Subspace::full(f3, 1);
        let pre = line.preimage(&a).unwrap();
        assert_eq!(pre, Subspace::full(f3, 2));
        let count = enumerate_vectors(f3, 2)
            .unwrap()
            .filter(|v| line.contains(&a.apply(v)))
            .count();
        assert_eq!(count, 9);
    }

    #[test]
    fn diagonal_membership() {
        let f5 = p(5);
        let d = Subspace::span(f5, 2, &[vec![1, 1]]).unwrap();
        assert!(d.contains(&[1, 1]));
        assert!(d.contains(&[3, 3]));
        assert!(!d.contains(&[1, 2]));
        assert_eq!(d.coordinates(&[4, 4]), Some(vec![4]));
    }

    #[test]
    fn equal_spans_have_equal_bases() {
        let f3 = p(3);
        let a = Subspace::span(f3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(f3, 3, &[vec![1, 0, 1], vec![2, 0, 2], vec![1, 1, 2]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn affine_preimage_and_outside() {
        let f2 = p(2);
        // t: k^2 -> k^1 sending both coordinates to x.
        let t = FpMatrix::from_flat(f2, 1, 2, &[1, 1]).unwrap();
        let target = AffineSubspace::singleton(f2, vec![1]);
        let pre = target.preimage(&t).unwrap().unwrap();
        assert!(pre.contains(&[1, 0]) && pre.contains(&[0, 1]));
        assert!(!pre.contains(&[1, 1]));
        let line = Subspace::span(f2, 2, &[vec![1, 0]]).unwrap();
        let out = pre.element_outside(&line).unwrap();
        assert!(pre.contains(&out) && !line.contains(&out));
        let zero = FpMatrix::zero(f2, 1, 1);
        assert_eq!(target.preimage(&zero).unwrap(), None);
    }

    fn members(s: &Subspace) -> Vec<Vec<u32>> {
        enumerate_vectors(s.prime(), s.ambient())
            .unwrap()
            .filter(|v| s.contains(v))
            .collect()
    }

    fn brute_span(pr: Prime, n: usize, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let k = gens.len();
        let mut out: Vec<Vec<u32>> = enumerate_vectors(pr, k)
            .unwrap()
            .map(|c| {
                let mut v = vec![0u32; n];
                for (g, &ci) in gens.iter().zip(&c) {
                    for (x, &y) in v.iter_mut().zip(g) {
                        *x = pr.add(*x, pr.mul(ci, y));
                    }
                }
                v
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn gens_strategy() -> impl Strategy<Value = (u64, usize, Vec<Vec<u32>>, Vec<Vec<u32>>, Vec<u32>)> {
        (prop_oneof![Just(2u64), Just(3u64)], 1usize..=4).prop_flat_map(|(q, n)| {
            let vec = proptest::collection::vec(0..q as u32, n);
            (
                Just(q),
                Just(n),
                proptest::collection::vec(vec.clone(), 0..=3),
                proptest::collection::vec(vec.clone(), 0..=3),
                proptest::collection::vec(0..q as u32, n * n),
            )
        })
    }

    proptest! {
        #[test]
        fn subspace_ops_match_enumeration((q, n, ga, gb, mat) in gens_strategy()) {
            let pr = p(q);
            let a = Subspace::span(pr, n, &ga).unwrap();
            let b = Subspace::span(pr, n, &gb).unwrap();
            prop_assert_eq!(members(&a), brute_span(pr, n, &ga));

            let inter: Vec<_> = members(&a).into_iter().filter(|v| b.contains(v)).collect();
            prop_assert_eq!(members(&a.intersection(&b).unwrap()), inter);

            let both: Vec<Vec<u32>> = ga.iter().chain(&gb).cloned().collect();
            prop_assert_eq!(members(&a.sum(&b).unwrap()), brute_span(pr, n, &both));

            let m = FpMatrix::from_flat(pr, n, n, &mat.iter().map(|&x| x as u64).collect::<Vec<_>>()).unwrap();
            let all: Vec<Vec<u32>> = enumerate_vectors(pr, n).unwrap().collect();
            let img = brute_span(pr, n, &m.columns());
            prop_assert_eq!(members(&m.column_space()), img);
            let pre: Vec<_> = all.iter().filter(|v| b.contains(&m.apply(v))).cloned().collect();
            prop_assert_eq!(members(&b.preimage(&m).unwrap()), pre);
            let ker: Vec<_> = all.iter().filter(|v| m.apply(v).iter().all(|&x| x == 0)).cloned().collect();
            prop_assert_eq!(members(&m.kernel()), ker);
            let ima: Vec<Vec<u32>> = members(&a).iter().map(|v| m.apply(v)).collect();
            let mut ima = ima; ima.sort(); ima.dedup();
            prop_assert_eq!(members(&a.image(&m).unwrap()), ima);
        }

        #[test]
        fn solve_matches_exhaustive_search(
            (q, rows, cols, entries, rhs) in (prop_oneof![Just(2u64), Just(3u64), Just(5u64)], 1usize..=6, 1usize..=6)
                .prop_flat_map(|(q, r, c)| (
                    Just(q), Just(r), Just(c),
                    proptest::collection::vec(0..q, r * c),
                    proptest::collection::vec(0..q as u32, r),
                ))
        ) {
            let pr = p(q);
            let a = FpMatrix::from_flat(pr, rows, cols, &entries).unwrap();
            match a.solve(&rhs).unwrap() {
                Some(sol) => {
                    prop_assert_eq!(a.apply(&sol.particular), rhs.clone());
                    for k in sol.kernel.basis() {
                        prop_assert!(a.apply(k).iter().all(|&x| x == 0));
                    }
                    prop_assert_eq!(sol.kernel.dim(), cols - a.rank());
                }
                None => {
                    let found = enumerate_vectors(pr, cols).unwrap().any(|x| a.apply(&x) == rhs);
                    prop_assert!(!found);
                }
            }
        }
    }
}
