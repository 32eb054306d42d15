//! Permutations of `{1, ..., m}`, groups generated by permutation sets, and
//! the orbit/stabilizer/coset/conjugacy machinery on the index set.
//!
//! Groups are fully enumerated. Exact character sums over the whole group are
//! the dominant downstream operation, so there is nothing to gain from
//! stabilizer chains at the scales this crate targets; a configurable cap
//! guards against accidentally enormous closures.

pub mod families;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use num::integer::lcm;
use thiserror::Error;

/// Default bound on the size of a generated group enumeration.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {point} repeated across cycles")]
    RepeatedPoint { point: usize },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("images are not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("generators have mixed degrees ({0} vs {1})")]
    MixedDegrees(usize, usize),
    #[error("no generators supplied")]
    NoGenerators,
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("the supplied elements do not form a subgroup")]
    NotASubgroup,
    #[error("cycles are not disjoint")]
    NotDisjoint,
    #[error("cycle of length {0} is not allowed here (need length >= 2)")]
    ShortCycle(usize),
    #[error("dihedral degree must be at least 3, got {0}")]
    DihedralDegree(usize),
}

/// A permutation of `{1, ..., m}` in image form: `images[j - 1]` holds the
/// image of `j`. Degree is explicit and fixed points at the tail are
/// representable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (1..=degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v == 0 || v > m {
                return Err(PermError::PointOutOfRange { point: v, degree: m });
            }
            if seen[v] {
                return Err(PermError::NotBijection(m));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds the permutation that maps each cycle point to its successor;
    /// unlisted points are fixed.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut seen = vec![false; degree + 1];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if seen[p] {
                    return Err(PermError::RepeatedPoint { point: p });
                }
                seen[p] = true;
            }
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    let from = cycle[w];
                    let to = cycle[(w + 1) % cycle.len()];
                    images[from - 1] = to;
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Parses whitespace- or comma-separated disjoint cycle notation,
    /// e.g. `"(1 2 3)(4 5)"`. `"()"` and the empty string are the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycle_list(text)?;
        Permutation::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting left-to-right on arguments: `(p.compose(q))(j) = p(q(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (1..=self.degree()).map(|j| self.apply(other.apply(j))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (j, &v) in self.images.iter().enumerate() {
            images[v - 1] = j + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            b = b.compose(&b.clone());
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycles_with_fixed(false)
            .iter()
            .map(Vec::len)
            .fold(1, lcm)
    }

    /// Disjoint cycles in canonical form: each cycle starts at its minimum,
    /// cycles sorted by minimum; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed(false)
    }

    fn cycles_with_fixed(&self, keep_fixed: bool) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m + 1];
        let mut out = Vec::new();
        for start in 1..=m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 || keep_fixed {
                out.push(cycle);
            }
        }
        out
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &v)| v == i + 1).count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

/// Parses a concatenation of parenthesized cycles into point lists, without
/// binding them to a degree. `"()"` and the empty string give no cycles.
pub fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut digits = String::new();
    let flush = |digits: &mut String, current: &mut Option<Vec<usize>>| -> Result<(), PermError> {
        if digits.is_empty() {
            return Ok(());
        }
        let p: usize = digits
            .parse()
            .map_err(|_| PermError::Parse(format!("bad point '{digits}'")))?;
        digits.clear();
        match current {
            Some(cycle) => {
                cycle.push(p);
                Ok(())
            }
            None => Err(PermError::Parse(format!("point {p} outside parentheses"))),
        }
    };
    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(PermError::Parse("nested '('".into()));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut digits, &mut current)?;
                match current.take() {
                    Some(cycle) => cycles.push(cycle),
                    None => return Err(PermError::Parse("unmatched ')'".into())),
                }
            }
            c if c.is_ascii_digit() => digits.push(c),
            c if c.is_whitespace() || c == ',' => flush(&mut digits, &mut current)?,
            c => return Err(PermError::Parse(format!("unexpected character '{c}'"))),
        }
    }
    if !digits.is_empty() || current.is_some() {
        return Err(PermError::Parse("unterminated cycle".into()));
    }
    Ok(cycles)
}

/// A finite subgroup of `S_m`, fully enumerated with the identity first.
/// Immutable after construction.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
}

impl PermutationGroup {
    /// Breadth-first closure of the generators under composition.
    pub fn generate(generators: &[Permutation], cap: usize) -> Result<Self, PermError> {
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => return Err(PermError::NoGenerators),
        };
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::MixedDegrees(degree, g.degree()));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity.images.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = elements[i].compose(g);
                if !index.contains_key(&next.images) {
                    if elements.len() >= cap {
                        return Err(PermError::ClosureCapExceeded { cap });
                    }
                    index.insert(next.images.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermutationGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
        })
    }

    /// The trivial group on `{1, ..., degree}`.
    pub fn trivial(degree: usize) -> Self {
        let identity = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(identity.images.clone(), 0);
        PermutationGroup {
            degree,
            generators: vec![identity.clone()],
            elements: vec![identity],
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.index.get(&p.images).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.element_index(p).is_some()
    }

    /// Index of the inverse of the element at `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.element_index(&self.elements[i].inverse())
            .expect("group is closed under inversion")
    }

    /// True when the permutations form a subgroup of this group: all members,
    /// the identity present, and closure under composition.
    pub fn is_subgroup(&self, subset: &[Permutation]) -> bool {
        if subset.is_empty() || !subset.iter().all(|h| self.contains(h)) {
            return false;
        }
        if !subset.iter().any(|h| h.is_identity()) {
            return false;
        }
        let keys: std::collections::HashSet<&[usize]> =
            subset.iter().map(|h| h.images.as_slice()).collect();
        if keys.len() != subset.len() {
            return false;
        }
        subset.iter().all(|a| {
            subset
                .iter()
                .all(|b| keys.contains(a.compose(b).images.as_slice()))
        })
    }

    /// Orbits of the action on `{1, ..., m}` with ascending-minimum
    /// representatives and the stabilizer of each representative.
    pub fn orbit_data(&self) -> OrbitData {
        let m = self.degree;
        let mut seen = vec![false; m + 1];
        let mut orbits = Vec::new();
        let mut representatives = Vec::new();
        let mut stabilizers = Vec::new();
        for start in 1..=m {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut frontier = vec![start];
            while let Some(p) = frontier.pop() {
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                        frontier.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            representatives.push(start);
            stabilizers.push(self.stabilizer_unchecked(start));
            orbits.push(orbit);
        }
        OrbitData { orbits, representatives, stabilizers }
    }

    /// All elements fixing the point `j`.
    pub fn stabilizer(&self, j: usize) -> Result<Vec<Permutation>, PermError> {
        if j == 0 || j > self.degree {
            return Err(PermError::PointOutOfRange { point: j, degree: self.degree });
        }
        Ok(self.stabilizer_unchecked(j))
    }

    fn stabilizer_unchecked(&self, j: usize) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|g| g.apply(j) == j)
            .cloned()
            .collect()
    }

    /// One representative per left coset of the subgroup `h`, the identity
    /// representing `h` itself, in enumeration order.
    pub fn left_coset_reps(&self, h: &[Permutation]) -> Result<Vec<Permutation>, PermError> {
        if !self.is_subgroup(h) {
            return Err(PermError::NotASubgroup);
        }
        let mut covered = vec![false; self.elements.len()];
        let mut reps = Vec::with_capacity(self.elements.len() / h.len());
        for (i, g) in self.elements.iter().enumerate() {
            if covered[i] {
                continue;
            }
            reps.push(g.clone());
            for hh in h {
                let t = g.compose(hh);
                let idx = self.element_index(&t).expect("coset stays inside the group");
                covered[idx] = true;
            }
        }
        Ok(reps)
    }

    /// Partition of the element indices into conjugacy classes, each class
    /// sorted, classes ordered by their smallest element index.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.elements.len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let g = &self.elements[i];
            let mut class = Vec::new();
            for x in &self.elements {
                let conj = x.compose(g).compose(&x.inverse());
                let idx = self.element_index(&conj).expect("conjugate stays inside the group");
                if !assigned[idx] {
                    assigned[idx] = true;
                    class.push(idx);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// True when the action on `{1, ..., m}` has a single orbit.
    pub fn is_transitive(&self) -> bool {
        self.orbit_data().orbits.len() == 1
    }
}

/// Orbit decomposition of the action of a group on its index set.
#[derive(Debug, Clone)]
pub struct OrbitData {
    /// Ascending partition of `{1, ..., m}`.
    pub orbits: Vec<Vec<usize>>,
    /// Minimum of each orbit, ascending. Realizes the representative set.
    pub representatives: Vec<usize>,
    /// Stabilizer of each representative, aligned with `representatives`.
    pub stabilizers: Vec<Vec<Permutation>>,
}

impl OrbitData {
    /// Position in `representatives` of the orbit containing `j`.
    pub fn orbit_position(&self, j: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.binary_search(&j).is_ok())
    }

    pub fn orbit_containing(&self, j: usize) -> Option<&[usize]> {
        self.orbit_position(j).map(|i| self.orbits[i].as_slice())
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        match (self.orbit_position(a), self.orbit_position(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }
}
