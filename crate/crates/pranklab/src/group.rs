//! Finite groups given by explicit multiplication tables.
//!
//! Elements are indices 0..order with 0 the identity. Groups are built by
//! closing a generating set (permutations, or any opaque values with a
//! composition law) and carry full multiplication and inverse tables.
//! Subgroups are sorted lists of element indices.

use std::collections::HashMap;
use std::hash::Hash;
use thiserror::Error;

/// Groups are closed by breadth-first search; anything bigger than this is
/// outside the intended scale.
pub const ORDER_BOUND: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the order bound {0}")]
    TooLarge(usize),
    #[error("generator is not invertible: {0}")]
    BadGenerator(String),
    #[error("multiplication table is not associative")]
    NotAssociative,
    #[error("multiplication table has no identity or misses inverses")]
    NotAGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subset is not closed under the group operation")]
    NotASubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            generators: vec![],
        }
    }

    /// Cyclic group of order n (generated by the shift permutation).
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        if n == 1 {
            return FiniteGroup::trivial();
        }
        let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::from_permutations(&[shift]).expect("cyclic group closure")
    }

    /// Closes a set of permutations (of 0..n) into a group.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; n];
            if g.len() != n {
                return Err(GroupError::BadGenerator("inconsistent degree".into()));
            }
            for &img in g {
                if img >= n || seen[img] {
                    return Err(GroupError::BadGenerator(format!("{g:?}")));
                }
                seen[img] = true;
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let (group, _elems) = closure_group(gens, id, |a, b| {
            // a after b: (a o b)(x) = a(b(x))
            b.iter().map(|&x| a[x]).collect::<Vec<usize>>()
        })?;
        Ok(group)
    }

    /// Builds a group directly from a multiplication table. The table is
    /// verified: row 0 and column 0 must be the identity, every element needs
    /// an inverse, and associativity is checked exhaustively.
    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<FiniteGroup, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::NotAGroup);
        }
        let at = |g: usize, h: usize| mul[g * order + h] as usize;
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(GroupError::NotAGroup);
            }
        }
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            for h in 0..order {
                if at(g, h) == 0 && at(h, g) == 0 {
                    inv[g] = h as u32;
                }
            }
        }
        if inv.iter().any(|&x| x == u32::MAX) {
            return Err(GroupError::NotAGroup);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative);
                    }
                }
            }
        }
        let generators = (1..order as u32).collect();
        Ok(FiniteGroup { order, mul, inv, generators })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.mul[g as usize * self.order + h as usize]
    }

    pub fn inv(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut n = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for g in self.elements() {
            e = lcm(e, self.element_order(g) as u64);
        }
        e
    }

    /// Largest power of p dividing the group order.
    pub fn p_part(&self, p: u64) -> u64 {
        let mut n = self.order as u64;
        let mut pp = 1;
        while n % p == 0 {
            n /= p;
            pp *= p;
        }
        pp
    }

    /// p'-part of the exponent, the m for which GF(p^k) with p^k = 1 mod m is
    /// a splitting field.
    pub fn exponent_p_prime_part(&self, p: u64) -> u64 {
        let mut e = self.exponent();
        while e % p == 0 {
            e /= p;
        }
        e
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Closure of a subset into a subgroup, sorted.
    pub fn subgroup_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut stack: Vec<u32> = vec![0];
        for &s in seed {
            if !in_set[s as usize] {
                in_set[s as usize] = true;
                stack.push(s);
            }
        }
        let mut frontier = stack.clone();
        while let Some(g) = frontier.pop() {
            for &s in seed {
                for prod in [self.mul(g, s), self.mul(s, g), self.inv(g)] {
                    if !in_set[prod as usize] {
                        in_set[prod as usize] = true;
                        frontier.push(prod);
                    }
                }
            }
        }
        (0..self.order as u32).filter(|&g| in_set[g as usize]).collect()
    }

    pub fn is_subgroup(&self, sub: &[u32]) -> bool {
        if !sub.contains(&0) {
            return false;
        }
        sub.iter().all(|&g| {
            sub.contains(&self.inv(g)) && sub.iter().all(|&h| sub.contains(&self.mul(g, h)))
        })
    }

    pub fn is_normal(&self, sub: &[u32]) -> bool {
        self.is_subgroup(sub)
            && self.elements().all(|g| {
                sub.iter()
                    .all(|&n| sub.contains(&self.mul(self.mul(g, n), self.inv(g))))
            })
    }

    /// Quotient by a normal subgroup: returns the quotient group and the
    /// projection map (element index -> coset index). Coset 0 is N itself and
    /// cosets are ordered by their smallest representative.
    pub fn quotient(&self, normal: &[u32]) -> Result<(FiniteGroup, Vec<u32>), GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps: Vec<u32> = Vec::new();
        for g in self.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &n in normal {
                coset_of[self.mul(g, n) as usize] = idx;
            }
        }
        let h_order = reps.len();
        assert_eq!(h_order * normal.len(), self.order);
        let mut mul = vec![0u32; h_order * h_order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * h_order + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let mut inv = vec![0u32; h_order];
        for (i, &a) in reps.iter().enumerate() {
            inv[i] = coset_of[self.inv(a) as usize];
        }
        let generators = self
            .generators
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&c| c != 0)
            .collect::<Vec<_>>();
        let generators = if generators.is_empty() && h_order > 1 {
            (1..h_order as u32).collect()
        } else {
            let mut gens = generators;
            gens.dedup();
            gens
        };
        Ok((
            FiniteGroup { order: h_order, mul, inv, generators },
            coset_of,
        ))
    }

    /// Coset representatives for the quotient map produced by [`quotient`]:
    /// entry i is the smallest group element mapping to coset i.
    pub fn coset_reps(&self, proj: &[u32], h_order: usize) -> Vec<u32> {
        let mut reps = vec![u32::MAX; h_order];
        for g in self.elements() {
            let c = proj[g as usize] as usize;
            if reps[c] == u32::MAX {
                reps[c] = g;
            }
        }
        reps
    }

    /// A Sylow p-subgroup, grown greedily from elements of p-power order: a
    /// proper p-subgroup always extends inside a larger one, so the greedy
    /// search in element order terminates with a subgroup of full p-part.
    pub fn sylow(&self, p: u64) -> Vec<u32> {
        let target = self.p_part(p) as usize;
        let mut sub: Vec<u32> = vec![0];
        while sub.len() < target {
            let mut extended = false;
            for g in self.elements() {
                if sub.contains(&g) {
                    continue;
                }
                let o = self.element_order(g) as u64;
                if !is_p_power(o, p) {
                    continue;
                }
                let mut seed = sub.clone();
                seed.push(g);
                let closed = self.subgroup_closure(&seed);
                if closed.len() <= target && is_p_power(closed.len() as u64, p) {
                    sub = closed;
                    extended = true;
                    break;
                }
            }
            assert!(extended, "Sylow search stalled; group tables are corrupt");
        }
        sub
    }

    /// Re-indexes a subgroup as a standalone group. Returns the group and the
    /// embedding (new index -> old index); the subgroup elements are taken in
    /// sorted order except that the identity comes first.
    pub fn subgroup_group(&self, sub: &[u32]) -> (FiniteGroup, Vec<u32>) {
        assert!(self.is_subgroup(sub), "subgroup_group needs a subgroup");
        let mut embed: Vec<u32> = sub.to_vec();
        embed.sort_unstable();
        // identity is 0 and sorts first already
        let pos: HashMap<u32, u32> = embed
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u32))
            .collect();
        let n = embed.len();
        let mut mul = vec![0u32; n * n];
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = pos[&self.mul(embed[i], embed[j])];
            }
            inv[i] = pos[&self.inv(embed[i])];
        }
        let generators = if n > 1 { (1..n as u32).collect() } else { vec![] };
        (FiniteGroup { order: n, mul, inv, generators }, embed)
    }

    /// All subgroups, found by closing subsets grown one element at a time.
    /// Exponential in principle; fine at the intended group sizes.
    pub fn all_subgroups(&self) -> Vec<Vec<u32>> {
        let mut found: Vec<Vec<u32>> = vec![vec![0]];
        let mut frontier = vec![vec![0u32]];
        while let Some(sub) = frontier.pop() {
            for g in self.elements() {
                if sub.contains(&g) {
                    continue;
                }
                let mut seed = sub.clone();
                seed.push(g);
                let closed = self.subgroup_closure(&seed);
                if !found.contains(&closed) {
                    found.push(closed.clone());
                    frontier.push(closed);
                }
            }
        }
        found.sort_by_key(|s| (s.len(), s.clone()));
        found
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<u32>> {
        self.all_subgroups()
            .into_iter()
            .filter(|s| self.is_normal(s))
            .collect()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_p_power(self.order as u64, p)
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closes abstract generators under a composition law and returns the group
/// together with the realized elements in discovery order (identity first).
pub fn closure_group<T, F>(gens: &[T], identity: T, mul: F) -> Result<(FiniteGroup, Vec<T>), GroupError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems: Vec<T> = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut gen_indices = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            let idx = elems.len() as u32;
            index.insert(g.clone(), idx);
            elems.push(g.clone());
            gen_indices.push(idx);
        } else if index[g] != 0 {
            gen_indices.push(index[g]);
        }
    }
    let mut cursor = 0;
    while cursor < elems.len() {
        let cur = elems[cursor].clone();
        for g in gens {
            for prod in [mul(&cur, g), mul(g, &cur)] {
                if !index.contains_key(&prod) {
                    if elems.len() >= ORDER_BOUND {
                        return Err(GroupError::TooLarge(ORDER_BOUND));
                    }
                    index.insert(prod.clone(), elems.len() as u32);
                    elems.push(prod);
                }
            }
        }
        cursor += 1;
    }
    let order = elems.len();
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        for j in 0..order {
            let prod = mul(&elems[i], &elems[j]);
            table[i * order + j] = *index.get(&prod).ok_or(GroupError::NotAGroup)?;
        }
    }
    let mut inv = vec![u32::MAX; order];
    for i in 0..order {
        for j in 0..order {
            if table[i * order + j] == 0 && table[j * order + i] == 0 {
                inv[i] = j as u32;
            }
        }
    }
    if inv.iter().any(|&x| x == u32::MAX) {
        return Err(GroupError::NotAGroup);
    }
    gen_indices.dedup();
    Ok((
        FiniteGroup {
            order,
            mul: table,
            inv,
            generators: gen_indices,
        },
        elems,
    ))
}
