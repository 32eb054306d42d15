//! Built-in group families: symmetric, alternating, dihedral, a cyclic group
//! generated by a product of disjoint cycles, and an internal direct product
//! of disjoint cyclic groups. The dihedral and cyclic wrappers carry the
//! generator structure that the character constructors need.

use std::sync::Arc;

use num::integer::lcm;

use super::{PermError, Permutation, PermutationGroup, DEFAULT_CLOSURE_CAP};

/// The full symmetric group on `{1, ..., m}`.
pub fn symmetric(m: usize) -> Result<PermutationGroup, PermError> {
    let gens = match m {
        0 => return Err(PermError::NoGenerators),
        1 => vec![Permutation::identity(1)],
        2 => vec![Permutation::from_cycles(&[vec![1, 2]], 2)?],
        _ => vec![
            Permutation::from_cycles(&[vec![1, 2]], m)?,
            Permutation::from_cycles(&[(1..=m).collect()], m)?,
        ],
    };
    PermutationGroup::generate(&gens, DEFAULT_CLOSURE_CAP)
}

/// The alternating group on `{1, ..., m}`, generated by consecutive 3-cycles.
pub fn alternating(m: usize) -> Result<PermutationGroup, PermError> {
    if m == 0 {
        return Err(PermError::NoGenerators);
    }
    if m <= 2 {
        return Ok(PermutationGroup::trivial(m));
    }
    let gens: Vec<Permutation> = (1..=m - 2)
        .map(|i| Permutation::from_cycles(&[vec![i, i + 1, i + 2]], m))
        .collect::<Result<_, _>>()?;
    PermutationGroup::generate(&gens, DEFAULT_CLOSURE_CAP)
}

/// How a dihedral element is written in terms of the canonical generators:
/// `rotation_steps` applications of the rotation, preceded (in action order)
/// by the reflection when `reflected` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralWord {
    pub reflected: bool,
    pub rotation_steps: usize,
}

/// The dihedral group of degree `m` inside `S_m`, generated by the m-cycle
/// `r = (1 2 ... m)` and the reflection `s` fixing 1 and swapping `j` with
/// `m + 2 - j`. Elements are indexed with their word form precomputed.
#[derive(Debug, Clone)]
pub struct DihedralGroup {
    m: usize,
    group: Arc<PermutationGroup>,
    r: Permutation,
    s: Permutation,
    words: Vec<DihedralWord>,
}

impl DihedralGroup {
    pub fn new(m: usize) -> Result<Self, PermError> {
        if m < 3 {
            return Err(PermError::DihedralDegree(m));
        }
        let r = Permutation::from_cycles(&[(1..=m).collect()], m)?;
        let mut s_images: Vec<usize> = vec![1];
        s_images.extend((2..=m).map(|j| m + 2 - j));
        let s = Permutation::from_images(s_images)?;
        let group = Arc::new(PermutationGroup::generate(&[r.clone(), s.clone()], DEFAULT_CLOSURE_CAP)?);
        assert_eq!(group.order(), 2 * m, "dihedral closure has order 2m");
        let mut words = vec![DihedralWord { reflected: false, rotation_steps: 0 }; 2 * m];
        let mut rk = Permutation::identity(m);
        for k in 0..m {
            let plain = group.element_index(&rk).expect("rotation power is a member");
            words[plain] = DihedralWord { reflected: false, rotation_steps: k };
            let refl = group
                .element_index(&s.compose(&rk))
                .expect("reflected rotation is a member");
            words[refl] = DihedralWord { reflected: true, rotation_steps: k };
            rk = r.compose(&rk);
        }
        Ok(DihedralGroup { m, group, r, s, words })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn rotation(&self) -> &Permutation {
        &self.r
    }

    pub fn reflection(&self) -> &Permutation {
        &self.s
    }

    /// Word form of the element at a group index.
    pub fn word(&self, element_index: usize) -> DihedralWord {
        self.words[element_index]
    }
}

/// The cyclic group generated by a product of disjoint cycles, with the
/// designated generator and the power decomposition of every element.
#[derive(Debug, Clone)]
pub struct CycleProductGroup {
    group: Arc<PermutationGroup>,
    generator: Permutation,
    supports: Vec<Vec<usize>>,
    modulus: usize,
    powers: Vec<usize>,
}

impl CycleProductGroup {
    /// `cycles` are the disjoint cycles whose product generates the group;
    /// each must have length at least 2.
    pub fn new(cycles: &[Vec<usize>], degree: usize) -> Result<Self, PermError> {
        validate_disjoint_cycles(cycles, degree)?;
        let generator = Permutation::from_cycles(cycles, degree)?;
        let modulus = generator.order();
        let group = Arc::new(PermutationGroup::generate(
            std::slice::from_ref(&generator),
            DEFAULT_CLOSURE_CAP,
        )?);
        debug_assert_eq!(group.order(), modulus);
        let mut powers = vec![0usize; modulus];
        let mut p = Permutation::identity(degree);
        for step in 0..modulus {
            let idx = group.element_index(&p).expect("power of the generator is a member");
            powers[idx] = step;
            p = generator.compose(&p);
        }
        Ok(CycleProductGroup { group, generator, supports: cycles.to_vec(), modulus, powers })
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn generator(&self) -> &Permutation {
        &self.generator
    }

    /// Order of the designated generator: the lcm of the cycle lengths.
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn cycle_supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    /// Exponent `s` with `generator^s` equal to the element at a group index.
    pub fn power(&self, element_index: usize) -> usize {
        self.powers[element_index]
    }
}

/// An internal direct product of cyclic groups on disjoint supports, with
/// the exponent tuple of every element precomputed.
#[derive(Debug, Clone)]
pub struct ProductOfCyclicsGroup {
    group: Arc<PermutationGroup>,
    factors: Vec<Permutation>,
    supports: Vec<Vec<usize>>,
    exponents: Vec<Vec<usize>>,
}

impl ProductOfCyclicsGroup {
    /// Each entry of `cycles` is one cycle generating one factor.
    pub fn new(cycles: &[Vec<usize>], degree: usize) -> Result<Self, PermError> {
        validate_disjoint_cycles(cycles, degree)?;
        let factors: Vec<Permutation> = cycles
            .iter()
            .map(|c| Permutation::from_cycles(std::slice::from_ref(c), degree))
            .collect::<Result<_, _>>()?;
        let group = Arc::new(PermutationGroup::generate(&factors, DEFAULT_CLOSURE_CAP)?);
        let expected: usize = cycles.iter().map(Vec::len).product();
        debug_assert_eq!(group.order(), expected, "disjoint cyclic factors form a direct product");

        // Exponent of each factor is read off from where the element sends
        // the base point of that factor's cycle; disjoint supports make this
        // decomposition unique.
        let mut exponents = Vec::with_capacity(group.order());
        for g in group.elements().iter() {
            let mut tuple = Vec::with_capacity(cycles.len());
            for cycle in cycles {
                let base = cycle[0];
                let target = g.apply(base);
                let pos = cycle
                    .iter()
                    .position(|&p| p == target)
                    .expect("group preserves each factor support");
                tuple.push(pos);
            }
            let mut rebuilt = Permutation::identity(degree);
            for (f, &e) in factors.iter().zip(&tuple) {
                rebuilt = rebuilt.compose(&f.pow(e as i64));
            }
            assert_eq!(&rebuilt, g, "element decomposes uniquely over the factors");
            exponents.push(tuple);
        }
        Ok(ProductOfCyclicsGroup { group, factors, supports: cycles.to_vec(), exponents })
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn orders(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    /// The tuple `(j_1, ..., j_k)` with the element equal to the product of
    /// `factor_l^(j_l)`.
    pub fn exponents(&self, element_index: usize) -> &[usize] {
        &self.exponents[element_index]
    }
}

fn validate_disjoint_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<(), PermError> {
    if cycles.is_empty() {
        return Err(PermError::NoGenerators);
    }
    let mut seen = vec![false; degree + 1];
    for cycle in cycles {
        if cycle.len() < 2 {
            return Err(PermError::ShortCycle(cycle.len()));
        }
        for &p in cycle {
            if p == 0 || p > degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            if seen[p] {
                return Err(PermError::NotDisjoint);
            }
            seen[p] = true;
        }
    }
    Ok(())
}

/// Least common multiple of the cycle lengths.
pub fn cycle_modulus(cycles: &[Vec<usize>]) -> usize {
    cycles.iter().map(Vec::len).fold(1, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(symmetric(2).unwrap().order(), 2);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(3).unwrap().order(), 3);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(2).unwrap().order(), 1);
    }

    #[test]
    fn dihedral_canonical_generators() {
        let d8 = DihedralGroup::new(4).unwrap();
        assert_eq!(d8.group().order(), 8);
        assert_eq!(format!("{}", d8.rotation()), "(1 2 3 4)");
        assert_eq!(format!("{}", d8.reflection()), "(2 4)");
        assert!(DihedralGroup::new(2).is_err());

        // The defining relation s^-1 r s = r^-1, as a permutation identity.
        for m in 3..=9 {
            let d = DihedralGroup::new(m).unwrap();
            let lhs = d.reflection().inverse().compose(d.rotation()).compose(d.reflection());
            assert_eq!(lhs, d.rotation().inverse(), "m = {m}");
            assert_eq!(d.group().order(), 2 * m);
        }
    }

    #[test]
    fn dihedral_words_cover_the_group() {
        let d = DihedralGroup::new(5).unwrap();
        for (idx, g) in d.group().elements().iter().enumerate() {
            let w = d.word(idx);
            let mut built = d.rotation().pow(w.rotation_steps as i64);
            if w.reflected {
                built = d.reflection().compose(&built);
            }
            assert_eq!(&built, g);
        }
    }

    #[test]
    fn dihedral_stabilizer_of_one() {
        for m in 3..=8 {
            let d = DihedralGroup::new(m).unwrap();
            let stab = d.group().stabilizer(1).unwrap();
            assert_eq!(stab.len(), 2);
            assert!(stab.iter().any(|g| g.is_identity()));
            assert!(stab.contains(d.reflection()));
        }
    }

    #[test]
    fn cycle_product_structure() {
        let g = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        assert_eq!(g.group().order(), 6);
        assert_eq!(g.modulus(), 6);
        for (idx, e) in g.group().elements().iter().enumerate() {
            assert_eq!(&g.generator().pow(g.power(idx) as i64), e);
        }
        assert!(CycleProductGroup::new(&[vec![1, 2], vec![2, 3]], 3).is_err());
        assert!(CycleProductGroup::new(&[vec![1]], 3).is_err());
    }

    #[test]
    fn product_of_cyclics_structure() {
        let g = ProductOfCyclicsGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        assert_eq!(g.group().order(), 6);
        assert_eq!(g.orders(), vec![3, 2]);
        // Two generators, exponent tuples decompose every element.
        for (idx, e) in g.group().elements().iter().enumerate() {
            let t = g.exponents(idx);
            let mut built = Permutation::identity(5);
            for (f, &j) in g.factors().iter().zip(t) {
                built = built.compose(&f.pow(j as i64));
            }
            assert_eq!(&built, e);
        }
        // Same generators inside S_6: a fixed tail point is representable.
        let g6 = ProductOfCyclicsGroup::new(&[vec![1, 2, 3], vec![4, 5]], 6).unwrap();
        assert_eq!(g6.group().degree(), 6);
        assert_eq!(g6.group().order(), 6);
    }
}
