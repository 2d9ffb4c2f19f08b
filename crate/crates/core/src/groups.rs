//! Group arithmetic, orbits and the arithmetically-free decision procedure.
//!
//! Two kinds of groups are supported: finitely generated abelian groups
//! `Z/d_1 x ... x Z/d_k x Z^m`, whose elements are integer vectors in
//! canonical reduced form, and finite groups given by a multiplication table,
//! whose elements are table indices.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("elements belong to different groups")]
    OwnerMismatch,
    #[error("malformed group spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("elements {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("operation requires an abelian group")]
    NonAbelian,
    #[error("integer overflow in a free coordinate")]
    Overflow,
}

/// A finite group given by its Cayley table.
///
/// `table[a][b]` is the index of `a * b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableGroup {
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TableGroup {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if self.identity >= n {
            return Err(GroupError::NotAGroup("identity index out of range".into()));
        }
        for (a, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= n) {
                return Err(GroupError::NotAGroup(format!("entry {bad} in row {a} out of range")));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(GroupError::NotAGroup("label count differs from table size".into()));
            }
        }
        let e = self.identity;
        for a in 0..n {
            if self.table[e][a] != a || self.table[a][e] != a {
                return Err(GroupError::NotAGroup(format!("{e} is not an identity for {a}")));
            }
            if !(0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return Err(GroupError::NotAGroup(format!("{a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for c in 0..n {
                    if self.table[ab][c] != self.table[a][self.table[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails for ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// `Z/factors[0] x ... x Z/factors[k-1] x Z^free_rank`.
    Abelian { factors: Vec<u64>, free_rank: usize },
    Table(TableGroup),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian { factors, free_rank } => {
                let mut parts: Vec<String> = factors.iter().map(|d| format!("Z/{d}")).collect();
                match free_rank {
                    0 => {}
                    1 => parts.push("Z".into()),
                    m => parts.push(format!("Z^{m}")),
                }
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join("x"))
                }
            }
            GroupSpec::Table(t) => write!(f, "table[{}]", t.size()),
        }
    }
}

/// Shared handle to a [`GroupSpec`]. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Group(Arc<GroupSpec>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Group {}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Group {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Order of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u64(*n),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Vector(Vec<i64>),
    Index(usize),
}

/// An element of a [`Group`], stored in canonical form.
#[derive(Clone, Debug)]
pub struct GroupElement {
    group: Group,
    repr: Repr,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.group == other.group
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr).then_with(|| self.group.cmp(&other.group))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Repr::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Repr::Index(i) => match &*self.group.0 {
                GroupSpec::Table(TableGroup { labels: Some(l), .. }) => write!(f, "{}", l[*i]),
                _ => write!(f, "{i}"),
            },
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self, GroupError> {
        match &spec {
            GroupSpec::Abelian { factors, .. } => {
                if let Some(d) = factors.iter().find(|&&d| d < 2) {
                    return Err(GroupError::Parse {
                        spec: spec.to_string(),
                        reason: format!("cyclic factor {d} must be at least 2"),
                    });
                }
                if factors.iter().any(|&d| d > i64::MAX as u64) {
                    return Err(GroupError::Overflow);
                }
            }
            GroupSpec::Table(t) => t.validate()?,
        }
        Ok(Group(Arc::new(spec)))
    }

    pub fn abelian(factors: &[u64], free_rank: usize) -> Result<Self, GroupError> {
        Self::new(GroupSpec::Abelian { factors: factors.to_vec(), free_rank })
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::abelian(&[n], 0)
    }

    pub fn free_abelian(rank: usize) -> Self {
        Group(Arc::new(GroupSpec::Abelian { factors: vec![], free_rank: rank }))
    }

    pub fn from_table(table: TableGroup) -> Result<Self, GroupError> {
        Self::new(GroupSpec::Table(table))
    }

    /// The symmetric group on `n` points. Elements are permutations in
    /// lexicographic order of their one-line notation, composed right to
    /// left: `a * b` applies `b` first.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Group(Arc::new(GroupSpec::Table(TableGroup { identity: 0, table, labels: Some(labels) })))
    }

    /// Parses text such as `Z/4xZ/6xZ^2`, `Z/5`, `Z`, `Z^3` or `1`.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::Parse { spec: text.to_string(), reason: reason.into() };
        let trimmed = text.trim();
        if trimmed == "1" {
            return Self::abelian(&[], 0);
        }
        let mut factors = Vec::new();
        let mut free_rank = 0usize;
        for part in trimmed.split(['x', 'X', '*']) {
            let part = part.trim();
            if let Some(d) = part.strip_prefix("Z/") {
                if free_rank > 0 {
                    return Err(err("cyclic factors must precede the free part"));
                }
                let d: u64 = d.trim().parse().map_err(|_| err("bad cyclic order"))?;
                if d < 2 {
                    return Err(err("cyclic factor must be at least 2"));
                }
                factors.push(d);
            } else if let Some(m) = part.strip_prefix("Z^") {
                let m: usize = m.trim().parse().map_err(|_| err("bad free rank"))?;
                free_rank += m;
            } else if part == "Z" {
                free_rank += 1;
            } else {
                return Err(err(&format!("unrecognised factor {part:?}")));
            }
        }
        Self::abelian(&factors, free_rank)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.0
    }

    pub fn is_abelian(&self) -> bool {
        match &*self.0 {
            GroupSpec::Abelian { .. } => true,
            GroupSpec::Table(t) => {
                let n = t.size();
                (0..n).all(|a| (a + 1..n).all(|b| t.table[a][b] == t.table[b][a]))
            }
        }
    }

    /// Number of coordinates of an element (1 for table groups).
    pub fn rank(&self) -> usize {
        match &*self.0 {
            GroupSpec::Abelian { factors, free_rank } => factors.len() + free_rank,
            GroupSpec::Table(_) => 1,
        }
    }

    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            GroupSpec::Abelian { factors, free_rank } => {
                if *free_rank > 0 {
                    None
                } else {
                    factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d))
                }
            }
            GroupSpec::Table(t) => Some(t.size() as u64),
        }
    }

    /// All elements in canonical order, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match &*self.0 {
            GroupSpec::Abelian { factors, free_rank } => {
                if *free_rank > 0 {
                    return None;
                }
                let mut out = vec![Vec::new()];
                for &d in factors {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (0..d as i64).map(move |c| {
                                let mut v = prefix.clone();
                                v.push(c);
                                v
                            })
                        })
                        .collect();
                }
                Some(out.into_iter().map(|v| self.wrap(Repr::Vector(v))).collect())
            }
            GroupSpec::Table(t) => Some((0..t.size()).map(|i| self.wrap(Repr::Index(i))).collect()),
        }
    }

    fn wrap(&self, repr: Repr) -> GroupElement {
        GroupElement { group: self.clone(), repr }
    }

    /// Builds an element from raw coordinates, reducing torsion coordinates.
    /// Table elements take a single coordinate, the index.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        match &*self.0 {
            GroupSpec::Abelian { factors, free_rank } => {
                if coords.len() != factors.len() + free_rank {
                    return Err(GroupError::InvalidElement(format!(
                        "expected {} coordinates, got {}",
                        factors.len() + free_rank,
                        coords.len()
                    )));
                }
                let mut v = coords.to_vec();
                for (c, &d) in v.iter_mut().zip(factors) {
                    *c = c.mod_floor(&(d as i64));
                }
                Ok(self.wrap(Repr::Vector(v)))
            }
            GroupSpec::Table(t) => match coords {
                [i] if *i >= 0 && (*i as usize) < t.size() => Ok(self.wrap(Repr::Index(*i as usize))),
                _ => Err(GroupError::InvalidElement(format!("bad table index {coords:?}"))),
            },
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &*self.0 {
            GroupSpec::Abelian { factors, free_rank } => {
                self.wrap(Repr::Vector(vec![0; factors.len() + free_rank]))
            }
            GroupSpec::Table(t) => self.wrap(Repr::Index(t.identity)),
        }
    }

    /// Parses one element: `3`, `(1,0)`, `-2`, or a table index / label.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GroupError> {
        let t = text.trim();
        if let GroupSpec::Table(TableGroup { labels: Some(labels), .. }) = &*self.0 {
            if let Some(i) = labels.iter().position(|l| l == t) {
                return self.element(&[i as i64]);
            }
        }
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::InvalidElement(text.to_string()))?;
        self.element(&coords)
    }

    /// Parses an element list: semicolon-separated tuples `(1,0);(0,1)`, or,
    /// for rank-1 groups, scalars separated by commas or semicolons.
    pub fn parse_element_set(&self, text: &str) -> Result<ElementSet, GroupError> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(ElementSet::empty(self));
        }
        let items: Vec<&str> = if t.contains('(') || self.rank() > 1 {
            t.split(';').filter(|s| !s.trim().is_empty()).collect()
        } else {
            t.split([',', ';']).filter(|s| !s.trim().is_empty()).collect()
        };
        let elems = items
            .into_iter()
            .map(|s| self.parse_element(s))
            .collect::<Result<Vec<_>, _>>()?;
        ElementSet::new(self, elems)
    }

    /// Decodes a JSON integer array into an element.
    pub fn element_from_json(&self, value: &serde_json::Value) -> Result<GroupElement, GroupError> {
        let coords: Vec<i64> = serde_json::from_value(value.clone())
            .map_err(|e| GroupError::InvalidElement(format!("{value}: {e}")))?;
        self.element(&coords)
    }
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Coordinates; a table element is `[index]`.
    pub fn coords(&self) -> Vec<i64> {
        match &self.repr {
            Repr::Vector(v) => v.clone(),
            Repr::Index(i) => vec![*i as i64],
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self.repr {
            Repr::Index(i) => Some(i),
            Repr::Vector(_) => None,
        }
    }

    fn check_owner(&self, other: &GroupElement) -> Result<(), GroupError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(GroupError::OwnerMismatch)
        }
    }

    /// The group product `self * other` (`self + other` for abelian groups).
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_owner(other)?;
        let repr = match (&*self.group.0, &self.repr, &other.repr) {
            (GroupSpec::Abelian { factors, .. }, Repr::Vector(a), Repr::Vector(b)) => {
                let mut v = Vec::with_capacity(a.len());
                for (i, (x, y)) in a.iter().zip(b).enumerate() {
                    let s = x.checked_add(*y).ok_or(GroupError::Overflow)?;
                    v.push(match factors.get(i) {
                        Some(&d) => s.mod_floor(&(d as i64)),
                        None => s,
                    });
                }
                Repr::Vector(v)
            }
            (GroupSpec::Table(t), Repr::Index(a), Repr::Index(b)) => Repr::Index(t.table[*a][*b]),
            _ => unreachable!("representation always matches its group"),
        };
        Ok(self.group.wrap(repr))
    }

    pub fn inverse(&self) -> GroupElement {
        let repr = match (&*self.group.0, &self.repr) {
            (GroupSpec::Abelian { factors, .. }, Repr::Vector(a)) => Repr::Vector(
                a.iter()
                    .enumerate()
                    .map(|(i, x)| match factors.get(i) {
                        Some(&d) => (-x).mod_floor(&(d as i64)),
                        None => -x,
                    })
                    .collect(),
            ),
            (GroupSpec::Table(t), Repr::Index(a)) => {
                let b = (0..t.size()).find(|&b| t.table[*a][b] == t.identity).expect("validated");
                Repr::Index(b)
            }
            _ => unreachable!("representation always matches its group"),
        };
        self.group.wrap(repr)
    }

    /// `self^n`, with negative exponents allowed.
    pub fn pow(&self, n: i64) -> Result<GroupElement, GroupError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        if let (GroupSpec::Abelian { factors, .. }, Repr::Vector(a)) = (&*self.group.0, &base.repr) {
            let mut v = Vec::with_capacity(a.len());
            for (i, x) in a.iter().enumerate() {
                v.push(match factors.get(i) {
                    Some(&d) => {
                        let d = d as i128;
                        ((*x as i128 * (e as i128 % d)) % d) as i64
                    }
                    None => x.checked_mul(i64::try_from(e).map_err(|_| GroupError::Overflow)?)
                        .ok_or(GroupError::Overflow)?,
                });
            }
            return Ok(self.group.wrap(Repr::Vector(v)));
        }
        let mut result = self.group.identity();
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&square)?;
            }
            square = square.compose(&square)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn is_identity(&self) -> bool {
        *self == self.group.identity()
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        match (self.compose(other), other.compose(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Least `n >= 1` with `self^n` the identity.
    pub fn order(&self) -> Order {
        match (&*self.group.0, &self.repr) {
            (GroupSpec::Abelian { factors, .. }, Repr::Vector(a)) => {
                if a[factors.len()..].iter().any(|&c| c != 0) {
                    return Order::Infinite;
                }
                let n = factors
                    .iter()
                    .zip(a)
                    .fold(1u64, |acc, (&d, &c)| acc.lcm(&(d / (c as u64).gcd(&d))));
                Order::Finite(n)
            }
            (GroupSpec::Table(t), Repr::Index(a)) => {
                let mut n = 1u64;
                let mut cur = *a;
                while cur != t.identity {
                    cur = t.table[cur][*a];
                    n += 1;
                }
                Order::Finite(n)
            }
            _ => unreachable!("representation always matches its group"),
        }
    }
}

/// A finite, duplicate-free, canonically ordered set of elements of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    group: Group,
    items: BTreeSet<GroupElement>,
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.items.iter())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.items.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl ElementSet {
    pub fn empty(group: &Group) -> Self {
        ElementSet { group: group.clone(), items: BTreeSet::new() }
    }

    pub fn new<I>(group: &Group, elements: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut set = Self::empty(group);
        for e in elements {
            set.insert(e)?;
        }
        Ok(set)
    }

    /// Decodes a JSON array of integer arrays.
    pub fn from_json(group: &Group, value: &serde_json::Value) -> Result<Self, GroupError> {
        let arr = value
            .as_array()
            .ok_or_else(|| GroupError::InvalidElement(format!("expected an array, got {value}")))?;
        Self::new(group, arr.iter().map(|v| group.element_from_json(v)).collect::<Result<Vec<_>, _>>()?)
    }

    pub fn insert(&mut self, e: GroupElement) -> Result<bool, GroupError> {
        if e.group != self.group {
            return Err(GroupError::OwnerMismatch);
        }
        Ok(self.items.insert(e))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.items.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.items.iter()
    }

    pub fn to_vec(&self) -> Vec<GroupElement> {
        self.items.iter().cloned().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.items.is_subset(&other.items)
    }

    pub fn first(&self) -> Option<&GroupElement> {
        self.items.iter().next()
    }

    /// Position of `e` in the canonical order.
    pub fn rank_of(&self, e: &GroupElement) -> Option<usize> {
        self.items.iter().position(|x| x == e)
    }
}

/// Result of a computation that may produce an infinite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(ElementSet),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<ElementSet> {
        match self {
            Extent::Finite(s) => Some(s),
            Extent::Infinite => None,
        }
    }
}

fn require_commuting(x: &GroupElement, g: &GroupElement) -> Result<(), GroupError> {
    x.check_owner(g)?;
    if x.commutes_with(g) {
        Ok(())
    } else {
        Err(GroupError::NonCommuting(x.to_string(), g.to_string()))
    }
}

/// The partial orbit `{x, x*g, ..., x*g^n}`.
pub fn orbit(x: &GroupElement, g: &GroupElement, n: u64) -> Result<ElementSet, GroupError> {
    require_commuting(x, g)?;
    let mut set = ElementSet::empty(x.group());
    let mut cur = x.clone();
    set.insert(cur.clone())?;
    for _ in 0..n {
        cur = cur.compose(g)?;
        if !set.insert(cur.clone())? {
            // The progression has started to cycle.
            break;
        }
    }
    Ok(set)
}

/// The full orbit `{x, x*g, x*g^2, ...}`.
pub fn full_orbit(x: &GroupElement, g: &GroupElement) -> Result<Extent, GroupError> {
    require_commuting(x, g)?;
    match g.order() {
        Order::Infinite => Ok(Extent::Infinite),
        Order::Finite(n) => Ok(Extent::Finite(orbit(x, g, n - 1)?)),
    }
}

pub fn cyclic_subgroup(g: &GroupElement) -> Extent {
    full_orbit(&g.group().identity(), g).expect("the identity commutes with everything")
}

/// All ordered pairs `(x, g)` of commuting elements of `set`, diagonal included.
pub fn commuting_pairs(set: &ElementSet) -> Vec<(GroupElement, GroupElement)> {
    let mut out = Vec::new();
    for x in set.iter() {
        for g in set.iter() {
            if x.commutes_with(g) {
                out.push((x.clone(), g.clone()));
            }
        }
    }
    out
}

/// `true` iff there are no `x, y, z` in `set` with `x * y = z`.
pub fn is_sum_free(set: &ElementSet) -> bool {
    set.iter().all(|x| {
        set.iter()
            .all(|y| x.compose(y).map(|z| !set.contains(&z)).unwrap_or(true))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AfVerdict {
    Free,
    /// A commuting pair with `O(x, g)` contained in the set.
    NotFree { x: GroupElement, g: GroupElement },
}

impl AfVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, AfVerdict::Free)
    }

    pub fn witness(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            AfVerdict::Free => None,
            AfVerdict::NotFree { x, g } => Some((x, g)),
        }
    }
}

/// Decides arithmetic freeness.
///
/// A set is not free iff some commuting pair `x, g` in it has
/// `O_{|X|}(x, g)` inside the set; the first such pair in canonical order is
/// returned as the witness.
pub fn is_arithmetically_free(set: &ElementSet) -> AfVerdict {
    let bound = set.len() as u64;
    for (x, g) in commuting_pairs(set) {
        let o = orbit(&x, &g, bound).expect("pair commutes");
        if o.is_subset(set) {
            return AfVerdict::NotFree { x, g };
        }
    }
    AfVerdict::Free
}

/// Condition (1): no commuting pair has its full orbit inside the set.
pub fn full_orbit_condition(set: &ElementSet) -> bool {
    commuting_pairs(set).iter().all(|(x, g)| match full_orbit(x, g).expect("pair commutes") {
        Extent::Infinite => true,
        Extent::Finite(o) => !o.is_subset(set),
    })
}

/// Condition (2): no commuting pair has `O_{|X|}(x, g)` inside the set.
pub fn bounded_orbit_condition(set: &ElementSet) -> bool {
    let n = set.len() as u64;
    commuting_pairs(set)
        .iter()
        .all(|(x, g)| !orbit(x, g, n).expect("pair commutes").is_subset(set))
}

/// Finds `h` with `h + m` in `target` for every `m` in `set`.
///
/// Candidates are `x - m0` for `x` in `target`, where `m0` is the least
/// element of `set`; the first candidate that works is returned. The empty
/// set translates by the identity.
pub fn translate_into(set: &ElementSet, target: &ElementSet) -> Result<Option<GroupElement>, GroupError> {
    if set.group() != target.group() {
        return Err(GroupError::OwnerMismatch);
    }
    if !set.group().is_abelian() {
        return Err(GroupError::NonAbelian);
    }
    let Some(m0) = set.first() else {
        return Ok(Some(set.group().identity()));
    };
    if set.len() > target.len() {
        return Ok(None);
    }
    let neg = m0.inverse();
    for x in target.iter() {
        let h = x.compose(&neg)?;
        let mut fits = true;
        for m in set.iter() {
            if !target.contains(&h.compose(m)?) {
                fits = false;
                break;
            }
        }
        if fits {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cycle notation with 1-based points, e.g. `(132)`; `id` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}
