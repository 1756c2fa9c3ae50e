//! Finite groups given by Cayley tables.
//!
//! Elements are the indices `0..order`, and index 0 is always the identity.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Default ceiling on the domain order for homomorphism enumeration.
pub const DEFAULT_HOM_BOUND: usize = 24;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("index 0 is not a two-sided identity (fails at element {0})")]
    NoIdentityAtZero(usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal: {by} * {element} * {by}^-1 leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("search bound exceeded: {what} has size {size}, bound is {bound}")]
    SearchBoundExceeded { what: &'static str, size: usize, bound: usize },
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("image array has length {got}, expected {expected}")]
    ImageLength { got: usize, expected: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    fn from_members(member: Vec<bool>) -> Self {
        let elements = member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Subgroup { elements, member }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn parent_order(&self) -> usize {
        self.member.len()
    }
}

/// A homomorphism, stored by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn checked(dom: &FiniteGroup, cod: &FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != dom.order() {
            return Err(GroupError::ImageLength { got: images.len(), expected: dom.order() });
        }
        for &y in &images {
            cod.check_index(y)?;
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if images[dom.mul(a, b)] != cod.mul(images[a], images[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { images })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_members(self.images.iter().map(|&y| y == 0).collect())
    }

    pub fn image(&self, cod: &FiniteGroup) -> Subgroup {
        let mut member = vec![false; cod.order()];
        for &y in &self.images {
            member[y] = true;
        }
        Subgroup::from_members(member)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        GroupHom { images: first.images.iter().map(|&x| self.images[x]).collect() }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    pub fn from_table(table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order: n });
                }
                flat.push(value);
            }
        }
        Self::from_flat(flat, n, name.into())
    }

    fn from_flat(table: Vec<usize>, n: usize, name: String) -> Result<Self, GroupError> {
        for x in 0..n {
            if table[x] != x || table[x * n] != x {
                return Err(GroupError::NoIdentityAtZero(x));
            }
        }
        let mut inv = vec![UNSET; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x * n + y] == 0) {
                Some(y) if table[y * n + x] == 0 => inv[x] = y,
                _ => return Err(GroupError::MissingInverse(x)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, n, table, inv })
    }

    /// Builds a group from a multiplication closure on `0..n`, validating the result.
    pub fn from_fn(n: usize, name: impl Into<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: a, col: b, value: v, order: n });
                }
                table.push(v);
            }
        }
        if n == 0 {
            return Err(GroupError::Empty);
        }
        Self::from_flat(table, n, name.into())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn check_index(&self, x: usize) -> Result<(), GroupError> {
        if x < self.n {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange { index: x, order: self.n })
        }
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a b a^-1 b^-1`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `g x g^-1`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Multiset of element orders, as order -> count.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.n {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(vec![true; self.n])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut member = vec![false; self.n];
        member[0] = true;
        Subgroup::from_members(member)
    }

    fn closure_members(&self, gens: &[usize], mut member: Vec<bool>) -> Vec<bool> {
        let mut queue: VecDeque<usize> = member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        if !member[0] {
            member[0] = true;
            queue.push_back(0);
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(Subgroup::from_members(self.closure_members(gens, vec![false; self.n])))
    }

    /// Greedy generating set: repeatedly add the element (smallest index on ties)
    /// that enlarges the generated subgroup most. Elements of `preferred` are
    /// considered before all others.
    pub fn generating_set_preferring(&self, preferred: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut size = 1;
        let mut pool: Vec<usize> = preferred.to_vec();
        for pass in 0..2 {
            if pass == 1 {
                pool = (0..self.n).collect();
            }
            loop {
                let mut best: Option<(usize, Vec<bool>, usize)> = None;
                for &x in &pool {
                    if member[x] {
                        continue;
                    }
                    let mut with = gens.clone();
                    with.push(x);
                    let m = self.closure_members(&with, member.clone());
                    let s = m.iter().filter(|&&b| b).count();
                    let better = match &best {
                        None => true,
                        Some((_, _, bs)) => s > *bs,
                    };
                    if better {
                        best = Some((x, m, s));
                    }
                }
                match best {
                    Some((x, m, s)) if s > size => {
                        gens.push(x);
                        member = m;
                        size = s;
                    }
                    _ => break,
                }
            }
        }
        gens
    }

    pub fn generating_set(&self) -> Vec<usize> {
        self.generating_set_preferring(&[])
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_members((0..self.n).map(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a))).collect())
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut gens = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                gens.push(self.commutator(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        Subgroup::from_members(self.closure_members(&gens, vec![false; self.n]))
    }

    /// Returns a witness `(element, conjugator)` if `sub` is not normal.
    pub fn normality_witness(&self, sub: &Subgroup) -> Option<(usize, usize)> {
        for &x in sub.elements() {
            for g in 0..self.n {
                if !sub.contains(self.conj(g, x)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.normality_witness(sub).is_none()
    }

    /// Quotient by a normal subgroup. Cosets are labelled in increasing order of
    /// their minimal element, so the identity coset is 0.
    pub fn quotient(&self, sub: &Subgroup) -> Result<Quotient, GroupError> {
        if let Some((element, by)) = self.normality_witness(sub) {
            return Err(GroupError::NotNormal { element, by });
        }
        let mut label = vec![UNSET; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if label[x] != UNSET {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &k in sub.elements() {
                label[self.mul(x, k)] = id;
            }
        }
        let q = reps.len();
        let group = FiniteGroup::from_fn(q, format!("{}/N{}", self.name, sub.order()), |i, j| {
            label[self.mul(reps[i], reps[j])]
        })
        .expect("quotient of a group by a normal subgroup is a group");
        Ok(Quotient { group, projection: GroupHom { images: label }, reps })
    }

    /// The subgroup as a standalone group, with elements listed in increasing order.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems = sub.elements().to_vec();
        let mut pos = vec![UNSET; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let g = FiniteGroup::from_fn(elems.len(), format!("{}<{}>", self.name, elems.len()), |i, j| {
            pos[self.mul(elems[i], elems[j])]
        })
        .expect("subgroup is closed");
        (g, elems)
    }

    // ---------------------------------------------------------------- builders

    pub fn trivial() -> Self {
        FiniteGroup { name: "1".into(), n: 1, table: vec![0], inv: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup::from_fn(n, format!("C{n}"), |a, b| (a + b) % n).unwrap()
    }

    /// Product of cyclic groups; element index is mixed radix with the first
    /// factor least significant.
    pub fn cyclic_product(moduli: &[usize]) -> Self {
        let n: usize = moduli.iter().product();
        let name = if moduli.is_empty() {
            "1".to_string()
        } else {
            moduli.iter().map(|m| format!("C{m}")).collect::<Vec<_>>().join("x")
        };
        FiniteGroup::from_fn(n, name, |a, b| {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut stride = 1;
            for &m in moduli {
                out += ((a % m + b % m) % m) * stride;
                a /= m;
                b /= m;
                stride *= m;
            }
            out
        })
        .unwrap()
    }

    pub fn klein_four() -> Self {
        FiniteGroup::from_fn(4, "V4", |a, b| a ^ b).unwrap()
    }

    /// Dihedral group of order `2m`: `r^i s^j` has index `i + m j`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 1);
        FiniteGroup::from_fn(2 * m, format!("D{}", 2 * m), |x, y| {
            let (i, a) = (x % m, x / m);
            let (j, b) = (y % m, y / m);
            let k = if a == 0 { (i + j) % m } else { (i + m - j) % m };
            k + m * ((a + b) % 2)
        })
        .unwrap()
    }

    /// Quaternion group; index `2u + s` for unit `u` in (1, i, j, k) and sign bit `s`.
    pub fn quaternion() -> Self {
        // unit products: (result unit, negated)
        const P: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        FiniteGroup::from_fn(8, "Q8", |x, y| {
            let (u, s) = (x / 2, x % 2);
            let (v, t) = (y / 2, y % 2);
            let (w, neg) = P[u][v];
            2 * w + (s + t + neg) % 2
        })
        .unwrap()
    }

    /// Group generated by permutations of `0..d`, elements listed in BFS order
    /// from the identity.
    pub fn from_permutations(gens: &[Vec<usize>], name: impl Into<String>) -> Self {
        let d = gens.first().map(|g| g.len()).unwrap_or(0);
        let id: Vec<usize> = (0..d).collect();
        let mut elems = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                // (x then g): apply x first, then g
                let y: Vec<usize> = elems[i].iter().map(|&p| g[p]).collect();
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        FiniteGroup::from_fn(n, name, |a, b| {
            let y: Vec<usize> = elems[a].iter().map(|&p| elems[b][p]).collect();
            index[&y]
        })
        .unwrap()
    }

    pub fn symmetric(d: usize) -> Self {
        assert!((1..=5).contains(&d));
        if d == 1 {
            return Self::trivial().with_name("S1");
        }
        let mut swap: Vec<usize> = (0..d).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
        Self::from_permutations(&[swap, cycle], format!("S{d}"))
    }

    pub fn alternating4() -> Self {
        Self::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], "A4")
    }

    /// Direct product; `(i, j)` has index `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.order();
        FiniteGroup::from_fn(a.order() * m, format!("{}x{}", a.name, b.name), |x, y| {
            a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
        })
        .unwrap()
    }

    // ---------------------------------------------------------- homomorphisms

    /// All homomorphisms to `cod`, sorted lexicographically by image array.
    pub fn homs_to(&self, cod: &FiniteGroup) -> Result<Vec<GroupHom>, GroupError> {
        self.homs_to_bounded(cod, DEFAULT_HOM_BOUND)
    }

    pub fn homs_to_bounded(&self, cod: &FiniteGroup, bound: usize) -> Result<Vec<GroupHom>, GroupError> {
        if self.n > bound {
            return Err(GroupError::SearchBoundExceeded { what: "hom domain", size: self.n, bound });
        }
        Ok(HomSearch::new(self, cod).run())
    }

    pub fn automorphisms(&self) -> Result<Vec<GroupHom>, GroupError> {
        self.automorphisms_bounded(DEFAULT_HOM_BOUND)
    }

    pub fn automorphisms_bounded(&self, bound: usize) -> Result<Vec<GroupHom>, GroupError> {
        if self.n > bound {
            return Err(GroupError::SearchBoundExceeded { what: "hom domain", size: self.n, bound });
        }
        Ok(HomSearch::new(self, self).bijective().run())
    }

    /// Automorphism group, with composition `(f*g)(x) = f(g(x))` and the
    /// identity automorphism at index 0.
    pub fn automorphism_group(&self) -> Result<(FiniteGroup, Vec<GroupHom>), GroupError> {
        let mut auts = self.automorphisms()?;
        let id: Vec<usize> = (0..self.n).collect();
        let pos = auts.iter().position(|a| a.images == id).expect("identity is an automorphism");
        let idm = auts.remove(pos);
        auts.insert(0, idm);
        let index: BTreeMap<Vec<usize>, usize> = auts.iter().enumerate().map(|(i, a)| (a.images.clone(), i)).collect();
        let g = FiniteGroup::from_fn(auts.len(), format!("Aut({})", self.name), |f, h| {
            index[&auts[f].compose(&auts[h]).images]
        })?;
        Ok((g, auts))
    }

    /// Closes a partial map under products: whenever `a -> x` and `b -> y` are
    /// known, sets `ab -> xy`. Returns `None` on a conflict; the result is defined
    /// exactly on the subgroup generated by the domain of `pairs`.
    pub fn close_partial_map(&self, cod: &FiniteGroup, pairs: &[(usize, usize)]) -> Option<Vec<Option<usize>>> {
        let mut map: Vec<Option<usize>> = vec![None; self.n];
        map[0] = Some(0);
        let mut known = vec![0usize];
        for &(a, x) in pairs {
            match map[a] {
                Some(y) if y != x => return None,
                Some(_) => {}
                None => {
                    map[a] = Some(x);
                    known.push(a);
                }
            }
        }
        let gens: Vec<(usize, usize)> = known.iter().map(|&a| (a, map[a].unwrap())).collect();
        let mut queue: VecDeque<usize> = known.iter().copied().collect();
        while let Some(a) = queue.pop_front() {
            let x = map[a].unwrap();
            for &(b, y) in &gens {
                let ab = self.mul(a, b);
                let xy = cod.mul(x, y);
                match map[ab] {
                    Some(z) if z != xy => return None,
                    Some(_) => {}
                    None => {
                        map[ab] = Some(xy);
                        queue.push_back(ab);
                    }
                }
            }
        }
        Some(map)
    }

    pub fn isomorphisms_to(&self, cod: &FiniteGroup, bound: usize) -> Result<Vec<GroupHom>, GroupError> {
        if self.n != cod.n {
            return Ok(Vec::new());
        }
        if self.n > bound {
            return Err(GroupError::SearchBoundExceeded { what: "hom domain", size: self.n, bound });
        }
        Ok(HomSearch::new(self, cod).bijective().run())
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.n == other.n
            && self.order_profile() == other.order_profile()
            && HomSearch::new(self, other).bijective().limit(1).run().len() == 1
    }
}

/// A quotient group with its projection and chosen coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    pub reps: Vec<usize>,
}

/// Backtracking search for homomorphisms determined by generator images.
pub struct HomSearch<'a> {
    dom: &'a FiniteGroup,
    cod: &'a FiniteGroup,
    fixed: Vec<usize>,
    bijective: bool,
    limit: Option<usize>,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a FiniteGroup, cod: &'a FiniteGroup) -> Self {
        HomSearch { dom, cod, fixed: vec![UNSET; dom.order()], bijective: false, limit: None }
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    pub fn limit(mut self, k: usize) -> Self {
        self.limit = Some(k);
        self
    }

    /// Require `x -> y`.
    pub fn fix(mut self, x: usize, y: usize) -> Self {
        self.fixed[x] = y;
        self
    }

    pub fn fix_all(mut self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        for (x, y) in pairs {
            self.fixed[x] = y;
        }
        self
    }

    pub fn run(self) -> Vec<GroupHom> {
        if self.bijective && self.dom.order() != self.cod.order() {
            return Vec::new();
        }
        if self.fixed[0] != UNSET && self.fixed[0] != 0 {
            return Vec::new();
        }
        let preferred: Vec<usize> = (0..self.dom.order()).filter(|&x| self.fixed[x] != UNSET).collect();
        let gens = self.dom.generating_set_preferring(&preferred);
        let cod_orders: Vec<usize> = (0..self.cod.order()).map(|y| self.cod.element_order(y)).collect();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                if self.fixed[g] != UNSET {
                    return vec![self.fixed[g]];
                }
                let og = self.dom.element_order(g);
                (0..self.cod.order())
                    .filter(|&y| if self.bijective { cod_orders[y] == og } else { og % cod_orders[y] == 0 })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut imgs = Vec::with_capacity(gens.len());
        self.recurse(&gens, &candidates, &mut imgs, &mut out);
        out.sort();
        out
    }

    fn recurse(&self, gens: &[usize], cands: &[Vec<usize>], imgs: &mut Vec<usize>, out: &mut Vec<GroupHom>) {
        if let Some(l) = self.limit {
            if out.len() >= l {
                return;
            }
        }
        let k = imgs.len();
        let Some(map) = self.extend(&gens[..k], imgs) else { return };
        if k == gens.len() {
            if self.bijective {
                let mut seen = vec![false; self.cod.order()];
                for &y in &map {
                    if seen[y] {
                        return;
                    }
                    seen[y] = true;
                }
            }
            out.push(GroupHom { images: map });
            return;
        }
        for &y in &cands[k] {
            imgs.push(y);
            self.recurse(gens, cands, imgs, out);
            imgs.pop();
        }
    }

    /// Extends generator images to the generated subgroup, checking
    /// `f(xg) = f(x) f(g)` for every reached `x` and generator `g`, and the fixed values.
    fn extend(&self, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![UNSET; self.dom.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &im) in gens.iter().zip(imgs) {
                let y = self.dom.mul(x, g);
                let v = self.cod.mul(map[x], im);
                if map[y] == UNSET {
                    if self.fixed[y] != UNSET && self.fixed[y] != v {
                        return None;
                    }
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_inverse_reported() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], "bad").unwrap_err();
        assert_eq!(err, GroupError::MissingInverse(1));
    }

    #[test]
    fn non_associative_loop_rejected() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t, "loop"), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn order_profiles_distinguish_c4_and_v4() {
        let c4: Vec<usize> = FiniteGroup::cyclic(4).order_profile().into_iter().flat_map(|(o, c)| vec![o; c]).collect();
        let v4: Vec<usize> = FiniteGroup::klein_four().order_profile().into_iter().flat_map(|(o, c)| vec![o; c]).collect();
        assert_eq!(c4, vec![1, 2, 4, 4]);
        assert_eq!(v4, vec![1, 2, 2, 2]);
    }

    #[test]
    fn subgroup_of_c6() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.subgroup_generated(&[2]).unwrap().elements(), &[0, 2, 4]);
        assert!(matches!(g.subgroup_generated(&[7]), Err(GroupError::IndexOutOfRange { .. })));
    }

    #[test]
    fn centers_and_commutators() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center().order(), 1);
        assert_eq!(s3.commutator_subgroup().order(), 3);
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.center().order(), 2);
        assert_eq!(q8.commutator_subgroup().order(), 2);
        assert_eq!(FiniteGroup::dihedral(4).center().order(), 2);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating4().commutator_subgroup().order(), 4);
    }

    #[test]
    fn quotient_of_c4() {
        let g = FiniteGroup::cyclic(4);
        let n = g.subgroup_generated(&[2]).unwrap();
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.reps, vec![0, 1]);
        let s3 = FiniteGroup::symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let sub = s3.subgroup_generated(&[t]).unwrap();
        assert!(matches!(s3.quotient(&sub), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn hom_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z2.homs_to(&z3).unwrap(), vec![GroupHom { images: vec![0, 0] }]);
        assert_eq!(FiniteGroup::klein_four().automorphisms().unwrap().len(), 6);
        for n in 1..=8 {
            let c = FiniteGroup::cyclic(n);
            assert_eq!(c.homs_to(&c).unwrap().len(), n);
        }
        assert_eq!(FiniteGroup::symmetric(3).automorphisms().unwrap().len(), 6);
        assert_eq!(FiniteGroup::quaternion().automorphisms().unwrap().len(), 24);
        let big = FiniteGroup::cyclic(25);
        assert!(matches!(big.homs_to(&z2), Err(GroupError::SearchBoundExceeded { .. })));
    }

    #[test]
    fn automorphism_group_of_v4_is_s3() {
        let (a, _) = FiniteGroup::klein_four().automorphism_group().unwrap();
        assert!(a.is_isomorphic(&FiniteGroup::symmetric(3)));
    }
}
