//! Small-finite-group machinery: breadth-first closure, composition
//! tables, invariants, quotients, semidirect-product checks, and
//! isomorphism search for groups of order up to 648.
//!
//! A [`FiniteGroup`] stores its elements as canonical keys (sorted,
//! deduplicated) together with a full composition table of `u16` indices.
//! The composition rules supplied by callers are always genuine function,
//! matrix, or componentwise compositions, so associativity holds by
//! construction; the constructors verify closure, the Latin-square
//! property, and the existence of an identity and inverses.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;
use thiserror::Error;

/// Cap on breadth-first closures.
pub const MAX_CLOSURE: usize = 100_000;
/// Cap on group orders for which a full composition table is built.
pub const MAX_TABLE: usize = 2_048;
/// Cap on group orders accepted by the isomorphism search.
pub const MAX_ISO_ORDER: usize = 648;

/// Errors from group construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded {MAX_CLOSURE} elements")]
    ClosureOverflow,
    #[error("group of order {0} is too large for a composition table")]
    TooLargeForTable(usize),
    #[error("element set is not closed under the rule: {0}")]
    NotClosed(String),
    #[error("element set is not a group: {0}")]
    InvalidGroup(String),
    #[error("index set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("group is not generated by one or two elements")]
    NotTwoGenerated,
    #[error("isomorphism search is capped at order {MAX_ISO_ORDER}, got {0}")]
    IsoBoundExceeded(usize),
    #[error("homomorphism data is invalid: {0}")]
    InvalidHom(String),
}

/// Breadth-first discovery log: `(element, parent, generator-slot)` rows,
/// each expressing `element = parent · generator`.
type DiscoveryLog = Vec<(usize, usize, usize)>;

/// A finite group with canonical element keys and a full composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup<K> {
    elements: Vec<K>,
    table: Vec<u16>,
    identity: u16,
    inverses: Vec<u16>,
}

/// Exhaustively computed isomorphism invariants of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: u64,
    pub center: u64,
    pub derived: u64,
    pub sylow2: u64,
    /// Invariant factors d₁ | d₂ | … of the abelianization (empty for a
    /// perfect group).
    pub abelianization: Vec<u64>,
    /// element order ↦ count
    pub order_histogram: BTreeMap<u64, u64>,
}

/// Outcome of [`semidirect_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub holds: bool,
    pub witness: Option<String>,
}

impl<K: Ord + Clone + Debug> FiniteGroup<K> {
    /// Breadth-first closure of `generators` under `rule`, then table
    /// construction. The rule must be an associative composition.
    pub fn generate<F>(generators: &[K], rule: F) -> Result<FiniteGroup<K>, GroupError>
    where
        F: Fn(&K, &K) -> K,
    {
        if generators.is_empty() {
            return Err(GroupError::InvalidGroup("no generators".into()));
        }
        let mut elems: Vec<K> = Vec::new();
        let mut seen: std::collections::BTreeSet<K> = std::collections::BTreeSet::new();
        for g in generators {
            if seen.insert(g.clone()) {
                elems.push(g.clone());
            }
        }
        // Process elements in discovery order; when element i is processed,
        // products with everything currently known are formed in both
        // orders, so every ordered pair is eventually covered.
        let mut i = 0;
        while i < elems.len() {
            let mut j = 0;
            while j < elems.len() {
                let (a, b) = (elems[i].clone(), elems[j].clone());
                for p in [rule(&a, &b), rule(&b, &a)] {
                    if seen.insert(p.clone()) {
                        elems.push(p);
                        if elems.len() > MAX_CLOSURE {
                            return Err(GroupError::ClosureOverflow);
                        }
                    }
                }
                j += 1;
            }
            i += 1;
        }
        FiniteGroup::from_closed_set(elems, rule)
    }

    /// Builds a group from an element set that must already be closed
    /// under `rule`.
    pub fn from_elements<F>(elements: &[K], rule: F) -> Result<FiniteGroup<K>, GroupError>
    where
        F: Fn(&K, &K) -> K,
    {
        FiniteGroup::from_closed_set(elements.to_vec(), rule)
    }

    fn from_closed_set<F>(mut elems: Vec<K>, rule: F) -> Result<FiniteGroup<K>, GroupError>
    where
        F: Fn(&K, &K) -> K,
    {
        if elems.is_empty() {
            return Err(GroupError::InvalidGroup("empty element set".into()));
        }
        elems.sort();
        elems.dedup();
        let n = elems.len();
        if n > MAX_TABLE {
            return Err(GroupError::TooLargeForTable(n));
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = rule(&elems[a], &elems[b]);
                let idx = elems
                    .binary_search(&p)
                    .map_err(|_| GroupError::NotClosed(format!("{:?} * {:?} escapes the set", elems[a], elems[b])))?;
                table[a * n + b] = idx as u16;
            }
        }
        FiniteGroup::from_table(elems, table)
    }

    fn from_table(elems: Vec<K>, table: Vec<u16>) -> Result<FiniteGroup<K>, GroupError> {
        let n = elems.len();
        // Latin-square property (cancellation).
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[table[a * n + b] as usize] = true;
                col[table[b * n + a] as usize] = true;
            }
            if row.iter().any(|v| !v) || col.iter().any(|v| !v) {
                return Err(GroupError::InvalidGroup(format!(
                    "cancellation fails at {:?}",
                    elems[a]
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| GroupError::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] as usize == identity && table[b * n + a] as usize == identity)
                .ok_or_else(|| GroupError::InvalidGroup(format!("{:?} has no inverse", elems[a])))?;
            inverses[a] = inv as u16;
        }
        Ok(FiniteGroup {
            elements: elems,
            table,
            identity: identity as u16,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &K {
        &self.elements[idx]
    }

    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.elements.binary_search(key).ok()
    }

    pub fn identity_index(&self) -> usize {
        self.identity as usize
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != self.identity as usize {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    /// Checks that a set of element indices forms a subgroup (nonempty and
    /// closed; finiteness then supplies identity and inverses).
    pub fn check_subgroup(&self, indices: &[usize]) -> Result<Vec<usize>, GroupError> {
        let mut set: Vec<usize> = indices.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(GroupError::NotSubgroup("empty index set".into()));
        }
        if set.iter().any(|&i| i >= self.order()) {
            return Err(GroupError::NotSubgroup("index out of range".into()));
        }
        for &a in &set {
            for &b in &set {
                let p = self.compose(a, b);
                if set.binary_search(&p).is_err() {
                    return Err(GroupError::NotSubgroup(format!(
                        "{:?} * {:?} leaves the set",
                        self.elements[a], self.elements[b]
                    )));
                }
            }
        }
        Ok(set)
    }

    /// Closure of a set of element indices under composition.
    pub fn closure_of_indices(&self, seeds: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        let mut list: Vec<usize> = Vec::new();
        for &s in seeds {
            if !member[s] {
                member[s] = true;
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let mut j = 0;
            while j < list.len() {
                for p in [self.compose(list[i], list[j]), self.compose(list[j], list[i])] {
                    if !member[p] {
                        member[p] = true;
                        list.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Indices of central elements.
    pub fn center_indices(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| (0..self.order()).all(|b| self.compose(a, b) == self.compose(b, a)))
            .collect()
    }

    /// Indices of the derived (commutator) subgroup.
    pub fn derived_indices(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = vec![self.identity_index()];
        for a in 0..self.order() {
            for b in 0..self.order() {
                let c = self.compose(
                    self.compose(a, b),
                    self.compose(self.inverse_of(a), self.inverse_of(b)),
                );
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure_of_indices(&comms)
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for a in 0..self.order() {
            *hist.entry(self.element_order(a)).or_insert(0) += 1;
        }
        hist
    }

    /// The quotient by a normal subgroup, with cosets keyed by their sorted
    /// member-index lists.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup<Vec<u16>>, GroupError> {
        let nset = self.check_subgroup(normal)?;
        for g in 0..self.order() {
            for &h in &nset {
                let c = self.compose(self.compose(g, h), self.inverse_of(g));
                if nset.binary_search(&c).is_err() {
                    return Err(GroupError::NotNormal(format!(
                        "conjugating {:?} by {:?} leaves the subgroup",
                        self.elements[h], self.elements[g]
                    )));
                }
            }
        }
        let n = self.order();
        let mut coset_of: Vec<Option<usize>> = vec![None; n];
        let mut cosets: Vec<Vec<u16>> = Vec::new();
        for a in 0..n {
            if coset_of[a].is_some() {
                continue;
            }
            let id = cosets.len();
            let mut members: Vec<u16> = nset.iter().map(|&h| self.compose(a, h) as u16).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m as usize] = Some(id);
            }
            cosets.push(members);
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0] as usize).collect();
        let coset_of = |x: usize| coset_of[x].expect("every element lies in a coset");
        let keys = cosets.clone();
        FiniteGroup::from_closed_set(keys, |a: &Vec<u16>, b: &Vec<u16>| {
            let ia = cosets.iter().position(|c| c == a).expect("coset key");
            let ib = cosets.iter().position(|c| c == b).expect("coset key");
            cosets[coset_of(self.compose(reps[ia], reps[ib]))].clone()
        })
    }

    /// The subgroup on a closed index set, as a standalone group.
    pub fn subgroup(&self, indices: &[usize]) -> Result<FiniteGroup<K>, GroupError> {
        let set = self.check_subgroup(indices)?;
        let keys: Vec<K> = set.iter().map(|&i| self.elements[i].clone()).collect();
        FiniteGroup::from_closed_set(keys, |a: &K, b: &K| {
            let ia = self.index_of(a).expect("member of the parent group");
            let ib = self.index_of(b).expect("member of the parent group");
            self.elements[self.compose(ia, ib)].clone()
        })
    }

    pub fn invariants(&self) -> GroupInvariants {
        let order = self.order() as u64;
        let mut sylow2 = 1u64;
        let mut m = order;
        while m.is_multiple_of(2) {
            sylow2 *= 2;
            m /= 2;
        }
        let derived = self.derived_indices();
        let abelianization = abelian_invariant_factors(
            &self
                .quotient(&derived)
                .expect("the derived subgroup is normal"),
        );
        GroupInvariants {
            order,
            center: self.center_indices().len() as u64,
            derived: derived.len() as u64,
            sylow2,
            abelianization,
            order_histogram: self.order_histogram(),
        }
    }

    /// A generating tuple of size ≤ 2 together with a breadth-first
    /// discovery log `(element, parent, generator-slot)` that expresses
    /// every element as parent·generator.
    fn generating_tuple_with_log(&self) -> Result<(Vec<usize>, DiscoveryLog), GroupError> {
        for g1 in 0..self.order() {
            if let Some(log) = self.bfs_log(&[g1]) {
                return Ok((vec![g1], log));
            }
        }
        for g1 in 0..self.order() {
            for g2 in (g1 + 1)..self.order() {
                if let Some(log) = self.bfs_log(&[g1, g2]) {
                    return Ok((vec![g1, g2], log));
                }
            }
        }
        Err(GroupError::NotTwoGenerated)
    }

    /// Breadth-first closure from `gens` under right multiplication by
    /// generators; returns the discovery log if the whole group is reached.
    fn bfs_log(&self, gens: &[usize]) -> Option<DiscoveryLog> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut queue: Vec<usize> = Vec::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                queue.push(g);
            }
        }
        let mut log = Vec::new();
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            for (slot, &g) in gens.iter().enumerate() {
                let y = self.compose(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                    log.push((y, x, slot));
                }
            }
        }
        if queue.len() == n {
            Some(log)
        } else {
            None
        }
    }
}

/// Invariant factors d₁ | d₂ | … of a finite abelian group, computed from
/// element-order counts (the counts of solutions of x^(p^k) = e determine
/// each p-primary type).
fn abelian_invariant_factors<K: Ord + Clone + Debug>(q: &FiniteGroup<K>) -> Vec<u64> {
    let n = q.order() as u64;
    if n == 1 {
        return Vec::new();
    }
    let orders: Vec<u64> = (0..q.order()).map(|a| q.element_order(a)).collect();
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // For each prime, the partition λ of the p-primary component, largest
    // part first.
    let mut lambdas: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        // count_k = #{x : order(x) divides p^k} = p^{Σ min(λ_i, k)}.
        let mut c = Vec::new(); // c[k-1] = #{i : λ_i ≥ k}
        let mut prev_exp = 0u32;
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let mut exp = 0u32;
            let mut c2 = count;
            while c2.is_multiple_of(p) {
                exp += 1;
                c2 /= p;
            }
            debug_assert_eq!(c2, 1, "solution count must be a power of {p}");
            if exp == prev_exp {
                break;
            }
            c.push((exp - prev_exp) as u64);
            prev_exp = exp;
        }
        let mut lambda = Vec::new();
        for (k, &ck) in c.iter().enumerate() {
            let next = c.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(ck - next) {
                lambda.push((k + 1) as u64);
            }
        }
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        lambdas.push(lambda);
    }
    let parts = lambdas.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for j in 0..parts {
        let mut d = 1u64;
        for (pi, &p) in primes.iter().enumerate() {
            if let Some(&e) = lambdas[pi].get(j) {
                d *= p.pow(e as u32);
            }
        }
        factors.push(d);
    }
    factors.reverse(); // ascending divisibility chain d₁ | d₂ | …
    factors
}

/// A verified homomorphism between two finite groups, stored as an index
/// map on the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    map: Vec<u16>,
    codomain_identity: u16,
}

impl GroupHom {
    /// Verifies multiplicativity on all pairs before accepting the map.
    pub fn new<K1, K2>(
        domain: &FiniteGroup<K1>,
        codomain: &FiniteGroup<K2>,
        map: Vec<u16>,
    ) -> Result<GroupHom, GroupError>
    where
        K1: Ord + Clone + Debug,
        K2: Ord + Clone + Debug,
    {
        if map.len() != domain.order() {
            return Err(GroupError::InvalidHom(format!(
                "map covers {} of {} elements",
                map.len(),
                domain.order()
            )));
        }
        if map.iter().any(|&v| (v as usize) >= codomain.order()) {
            return Err(GroupError::InvalidHom("image index out of range".into()));
        }
        for a in 0..domain.order() {
            for b in 0..domain.order() {
                let lhs = codomain.compose(map[a] as usize, map[b] as usize);
                let rhs = map[domain.compose(a, b)] as usize;
                if lhs != rhs {
                    return Err(GroupError::InvalidHom(format!(
                        "not multiplicative at indices ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            map,
            codomain_identity: codomain.identity_index() as u16,
        })
    }

    pub fn apply(&self, idx: usize) -> usize {
        self.map[idx] as usize
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }

    pub fn image_indices(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.map.iter().map(|&v| v as usize).collect();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.map.len())
            .filter(|&a| self.map[a] == self.codomain_identity)
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.image_indices().len() == self.map.len()
    }
}

/// Checks the internal semidirect decomposition G = N ⋊ S: N and S must be
/// subgroups; the result holds iff N is normal, N∩S is trivial, and
/// |N|·|S| = |G|. A failing check carries a witness.
pub fn semidirect_check<K: Ord + Clone + Debug>(
    g: &FiniteGroup<K>,
    n_sub: &[usize],
    s_sub: &[usize],
) -> Result<SemidirectReport, GroupError> {
    let nset = g.check_subgroup(n_sub)?;
    let sset = g.check_subgroup(s_sub)?;
    for x in 0..g.order() {
        for &h in &nset {
            let c = g.compose(g.compose(x, h), g.inverse_of(x));
            if nset.binary_search(&c).is_err() {
                return Ok(SemidirectReport {
                    holds: false,
                    witness: Some(format!(
                        "conjugating {:?} by {:?} gives {:?}, outside N",
                        g.element(h),
                        g.element(x),
                        g.element(c)
                    )),
                });
            }
        }
    }
    let e = g.identity_index();
    for &a in &nset {
        if a != e && sset.binary_search(&a).is_ok() {
            return Ok(SemidirectReport {
                holds: false,
                witness: Some(format!("{:?} lies in both N and S", g.element(a))),
            });
        }
    }
    if nset.len() * sset.len() != g.order() {
        return Ok(SemidirectReport {
            holds: false,
            witness: Some(format!(
                "|N|·|S| = {}·{} ≠ {}",
                nset.len(),
                sset.len(),
                g.order()
            )),
        });
    }
    Ok(SemidirectReport {
        holds: true,
        witness: None,
    })
}

/// Searches for an isomorphism G → H by generator-image backtracking with
/// invariant pruning. Groups must be generated by at most two elements.
pub fn small_group_isomorphic<K1, K2>(
    g: &FiniteGroup<K1>,
    h: &FiniteGroup<K2>,
) -> Result<Option<GroupHom>, GroupError>
where
    K1: Ord + Clone + Debug,
    K2: Ord + Clone + Debug,
{
    let m = g.order().max(h.order());
    if m > MAX_ISO_ORDER {
        return Err(GroupError::IsoBoundExceeded(m));
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    // Identical composition tables: the identity index map works verbatim.
    if g.table == h.table {
        let map = (0..g.order() as u16).collect();
        return Ok(Some(GroupHom::new(g, h, map).expect("identity map on equal tables")));
    }
    if g.invariants() != h.invariants() {
        return Ok(None);
    }
    let (gens, log) = g.generating_tuple_with_log()?;
    let n = g.order();
    let gen_orders: Vec<u64> = gens.iter().map(|&a| g.element_order(a)).collect();
    let h_orders: Vec<u64> = (0..n).map(|b| h.element_order(b)).collect();
    let pair_order = (gens.len() == 2).then(|| g.element_order(g.compose(gens[0], gens[1])));

    let try_candidate = |images: &[usize]| -> Option<Vec<u16>> {
        let mut phi = vec![u16::MAX; n];
        for (slot, &gi) in gens.iter().enumerate() {
            phi[gi] = images[slot] as u16;
        }
        for &(x, parent, slot) in &log {
            phi[x] = h.compose(phi[parent] as usize, images[slot]) as u16;
        }
        let mut hit = vec![false; n];
        for &v in &phi {
            if v == u16::MAX || hit[v as usize] {
                return None;
            }
            hit[v as usize] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if h.compose(phi[a] as usize, phi[b] as usize) != phi[g.compose(a, b)] as usize {
                    return None;
                }
            }
        }
        Some(phi)
    };

    if gens.len() == 1 {
        for h1 in 0..n {
            if h_orders[h1] != gen_orders[0] {
                continue;
            }
            if let Some(phi) = try_candidate(&[h1]) {
                return Ok(Some(GroupHom::new(g, h, phi).expect("verified candidate")));
            }
        }
    } else {
        for h1 in 0..n {
            if h_orders[h1] != gen_orders[0] {
                continue;
            }
            for h2 in 0..n {
                if h_orders[h2] != gen_orders[1] {
                    continue;
                }
                if let Some(po) = pair_order {
                    if h.element_order(h.compose(h1, h2)) != po {
                        continue;
                    }
                }
                if let Some(phi) = try_candidate(&[h1, h2]) {
                    return Ok(Some(GroupHom::new(g, h, phi).expect("verified candidate")));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Concrete groups
// ---------------------------------------------------------------------------

/// A 2×2 matrix over GF(3), row-major entries reduced mod 3.
pub type Mat2F3 = [u8; 4];

/// First stated order-4 generator of Q₈: (0, −1; 1, 0) over GF(3).
pub const Q8_GEN_I: Mat2F3 = [0, 2, 1, 0];
/// Second stated order-4 generator of Q₈: (1, 1; 1, −1) over GF(3).
pub const Q8_GEN_J: Mat2F3 = [1, 1, 1, 2];

pub fn mat2_mul(a: &Mat2F3, b: &Mat2F3) -> Mat2F3 {
    [
        (a[0] * b[0] + a[1] * b[2]) % 3,
        (a[0] * b[1] + a[1] * b[3]) % 3,
        (a[2] * b[0] + a[3] * b[2]) % 3,
        (a[2] * b[1] + a[3] * b[3]) % 3,
    ]
}

pub fn mat2_det(a: &Mat2F3) -> u8 {
    (a[0] * a[3] + 2 * a[1] * a[2]) % 3
}

/// Action of a matrix on a column vector (i, j)ᵀ mod 3.
pub fn mat2_apply(m: &Mat2F3, v: (u8, u8)) -> (u8, u8) {
    (
        (m[0] * v.0 + m[1] * v.1) % 3,
        (m[2] * v.0 + m[3] * v.1) % 3,
    )
}

fn all_mat2() -> Vec<Mat2F3> {
    let mut out = Vec::with_capacity(81);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// SL(2,3): determinant-1 matrices over GF(3), order 24.
pub fn sl2_3() -> FiniteGroup<Mat2F3> {
    let elems: Vec<Mat2F3> = all_mat2().into_iter().filter(|m| mat2_det(m) == 1).collect();
    FiniteGroup::from_elements(&elems, mat2_mul).expect("SL(2,3) is closed")
}

/// GL(2,3): invertible matrices over GF(3), order 48.
pub fn gl2_3() -> FiniteGroup<Mat2F3> {
    let elems: Vec<Mat2F3> = all_mat2().into_iter().filter(|m| mat2_det(m) != 0).collect();
    FiniteGroup::from_elements(&elems, mat2_mul).expect("GL(2,3) is closed")
}

/// The quaternion group Q₈ generated by [`Q8_GEN_I`] and [`Q8_GEN_J`]
/// inside SL(2,3).
pub fn q8() -> FiniteGroup<Mat2F3> {
    FiniteGroup::generate(&[Q8_GEN_I, Q8_GEN_J], mat2_mul)
        .expect("Q8 closure stays small")
}

/// (ℤ/3)² under componentwise addition.
pub fn z3_squared() -> FiniteGroup<(u8, u8)> {
    let elems: Vec<(u8, u8)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    FiniteGroup::from_elements(&elems, |a, b| ((a.0 + b.0) % 3, (a.1 + b.1) % 3))
        .expect("(Z/3)^2 is closed")
}

/// ℤ/n under addition.
pub fn cyclic(n: u8) -> FiniteGroup<u8> {
    let elems: Vec<u8> = (0..n).collect();
    FiniteGroup::from_elements(&elems, move |a, b| (a + b) % n).expect("Z/n is closed")
}

/// The symmetric group on three letters, as image arrays.
pub fn symmetric_3() -> FiniteGroup<[u8; 3]> {
    let elems: Vec<[u8; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    FiniteGroup::from_elements(&elems, |p, q| [p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]])
        .expect("S3 is closed")
}

/// Element of a semidirect product (ℤ/3)² ⋊ M: a translation part and a
/// matrix part.
pub type Affine2F3 = ((u8, u8), Mat2F3);

/// The semidirect product (ℤ/3)² ⋊ M for a matrix group M ≤ GL(2,3), with
/// the natural action: (v₁, m₁)·(v₂, m₂) = (v₁ + m₁v₂, m₁m₂).
pub fn semidirect_z3sq(point_group: &FiniteGroup<Mat2F3>) -> FiniteGroup<Affine2F3> {
    let mut elems = Vec::with_capacity(9 * point_group.order());
    for i in 0..3 {
        for j in 0..3 {
            for m in point_group.elements() {
                elems.push(((i, j), *m));
            }
        }
    }
    FiniteGroup::from_elements(&elems, |a: &Affine2F3, b: &Affine2F3| {
        let (v1, m1) = a;
        let (v2, m2) = b;
        let mv = mat2_apply(m1, *v2);
        (((v1.0 + mv.0) % 3, (v1.1 + mv.1) % 3), mat2_mul(m1, m2))
    })
    .expect("the semidirect product is closed")
}

/// (ℤ/3)² ⋊ SL(2,3), order 216.
pub fn semidirect_z3sq_sl23() -> FiniteGroup<Affine2F3> {
    semidirect_z3sq(&sl2_3())
}

/// (ℤ/3)² ⋊ Q₈, order 72.
pub fn semidirect_z3sq_q8() -> FiniteGroup<Affine2F3> {
    semidirect_z3sq(&q8())
}
