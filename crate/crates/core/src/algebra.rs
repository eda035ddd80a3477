//! Finite BL-algebras given by full operation tables.
//!
//! A [`BlAlgebra`] is sealed: it can only be obtained through [`BlAlgebra::new`],
//! which checks every defining law (bounded lattice, commutative monoid,
//! adjointness, divisibility, prelinearity). All downstream modules take a
//! `&BlAlgebra` and rely on those laws without re-checking them.
//!
//! Elements are dense indices `0..n`; labels are for presentation only.
//! The lattice order is read off the meet table (`a <= b` iff `a ∧ b = a`).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an element inside one algebra's carrier.
pub type ElementId = usize;

/// A square operation table over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<ElementId>,
}

impl Table {
    pub fn from_fn(n: usize, mut f: impl FnMut(ElementId, ElementId) -> ElementId) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Table { n, cells }
    }

    /// Builds a table from rows, checking shape and range.
    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(AlgebraError::Malformed(format!(
                        "entry ({i}, {j}) = {v} is out of range for size {n}"
                    )));
                }
                cells.push(v);
            }
        }
        Ok(Table { n, cells })
    }

    #[inline]
    pub fn get(&self, a: ElementId, b: ElementId) -> ElementId {
        self.cells[a * self.n + b]
    }

    pub fn set(&mut self, a: ElementId, b: ElementId, v: ElementId) {
        self.cells[a * self.n + b] = v;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ElementId]> {
        // chunks panics on a zero chunk size
        self.cells.chunks(self.n.max(1)).take(self.n)
    }
}

/// Unverified operation tables: the input to [`BlAlgebra::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub labels: Vec<String>,
    pub meet: Table,
    pub join: Table,
    pub prod: Table,
    pub imp: Table,
}

/// The individual laws checked when sealing an algebra, in scan order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    MeetIdempotent,
    MeetCommutative,
    MeetAssociative,
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    Absorption,
    Bounded,
    ProdIdentity,
    ProdCommutative,
    ProdAssociative,
    Adjointness,
    Divisibility,
    Prelinearity,
}

impl Law {
    pub const ALL: [Law; 14] = [
        Law::MeetIdempotent,
        Law::MeetCommutative,
        Law::MeetAssociative,
        Law::JoinIdempotent,
        Law::JoinCommutative,
        Law::JoinAssociative,
        Law::Absorption,
        Law::Bounded,
        Law::ProdIdentity,
        Law::ProdCommutative,
        Law::ProdAssociative,
        Law::Adjointness,
        Law::Divisibility,
        Law::Prelinearity,
    ];

    /// Coarse axiom family the law belongs to.
    pub fn group(self) -> &'static str {
        match self {
            Law::MeetIdempotent
            | Law::MeetCommutative
            | Law::MeetAssociative
            | Law::JoinIdempotent
            | Law::JoinCommutative
            | Law::JoinAssociative
            | Law::Absorption
            | Law::Bounded => "lattice",
            Law::ProdIdentity | Law::ProdCommutative | Law::ProdAssociative => "monoid",
            Law::Adjointness => "adjointness",
            Law::Divisibility => "divisibility",
            Law::Prelinearity => "prelinearity",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::MeetIdempotent => "meet-idempotent",
            Law::MeetCommutative => "meet-commutative",
            Law::MeetAssociative => "meet-associative",
            Law::JoinIdempotent => "join-idempotent",
            Law::JoinCommutative => "join-commutative",
            Law::JoinAssociative => "join-associative",
            Law::Absorption => "absorption",
            Law::Bounded => "bounded",
            Law::ProdIdentity => "prod-identity",
            Law::ProdCommutative => "prod-commutative",
            Law::ProdAssociative => "prod-associative",
            Law::Adjointness => "adjointness",
            Law::Divisibility => "divisibility",
            Law::Prelinearity => "prelinearity",
        }
    }

    /// Number of element arguments the law quantifies over.
    pub fn arity(self) -> usize {
        match self {
            Law::Bounded => 0,
            Law::MeetIdempotent | Law::JoinIdempotent | Law::ProdIdentity => 1,
            Law::MeetAssociative | Law::JoinAssociative | Law::ProdAssociative | Law::Adjointness => 3,
            _ => 2,
        }
    }

    /// Evaluates the law at one point. `top` is only consulted by the
    /// monoid identity law.
    pub fn holds_at(self, t: &Tables, top: Option<ElementId>, w: &[ElementId]) -> bool {
        let leq = |a, b| t.meet.get(a, b) == a;
        match self {
            Law::MeetIdempotent => t.meet.get(w[0], w[0]) == w[0],
            Law::MeetCommutative => t.meet.get(w[0], w[1]) == t.meet.get(w[1], w[0]),
            Law::MeetAssociative => {
                t.meet.get(t.meet.get(w[0], w[1]), w[2]) == t.meet.get(w[0], t.meet.get(w[1], w[2]))
            }
            Law::JoinIdempotent => t.join.get(w[0], w[0]) == w[0],
            Law::JoinCommutative => t.join.get(w[0], w[1]) == t.join.get(w[1], w[0]),
            Law::JoinAssociative => {
                t.join.get(t.join.get(w[0], w[1]), w[2]) == t.join.get(w[0], t.join.get(w[1], w[2]))
            }
            Law::Absorption => {
                t.meet.get(w[0], t.join.get(w[0], w[1])) == w[0] && t.join.get(w[0], t.meet.get(w[0], w[1])) == w[0]
            }
            Law::Bounded => least(t).is_some() && greatest(t).is_some(),
            Law::ProdIdentity => match top {
                Some(e) => t.prod.get(e, w[0]) == w[0] && t.prod.get(w[0], e) == w[0],
                None => false,
            },
            Law::ProdCommutative => t.prod.get(w[0], w[1]) == t.prod.get(w[1], w[0]),
            Law::ProdAssociative => {
                t.prod.get(t.prod.get(w[0], w[1]), w[2]) == t.prod.get(w[0], t.prod.get(w[1], w[2]))
            }
            Law::Adjointness => {
                let (a, b, c) = (w[0], w[1], w[2]);
                leq(c, t.imp.get(a, b)) == leq(t.prod.get(a, c), b)
            }
            Law::Divisibility => t.meet.get(w[0], w[1]) == t.prod.get(w[0], t.imp.get(w[0], w[1])),
            Law::Prelinearity => match top {
                Some(e) => t.join.get(t.imp.get(w[0], w[1]), t.imp.get(w[1], w[0])) == e,
                None => false,
            },
        }
    }
}

fn least(t: &Tables) -> Option<ElementId> {
    let n = t.meet.size();
    (0..n).find(|&b| (0..n).all(|x| t.meet.get(b, x) == b))
}

fn greatest(t: &Tables) -> Option<ElementId> {
    let n = t.meet.size();
    (0..n).find(|&e| (0..n).all(|x| t.meet.get(x, e) == x))
}

/// A failed law together with the first point (in lexicographic order)
/// where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}) fails at {:?}", self.law.group(), self.law.name(), self.witness)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed tables: {0}")]
    Malformed(String),
    #[error("axiom violation: {0}")]
    Violation(AxiomViolation),
    #[error("no residuum for ({a}, {b}): the set {{z : a*z <= b}} has no maximum")]
    NoResiduum { a: ElementId, b: ElementId },
    #[error("set is not a filter")]
    NotAFilter,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("subset is not closed under the operations: {0}")]
    NotClosed(String),
    #[error("ordinal sum summand {0} is not linearly ordered")]
    NonLinearSummand(usize),
    #[error("set is not a state-filter")]
    NotAStateFilter,
    #[error("algebra is not an MV-algebra: {0}")]
    NotMv(String),
    #[error("map is not a state-operator")]
    NotAStateOperator,
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("algebra does not have the required shape: {0}")]
    ShapeMismatch(String),
}

/// The residuum of `prod` with respect to the order derived from `meet`:
/// `imp(a, b)` is the largest `z` with `prod(a, z) <= b`.
pub fn residuum_from_monoid(meet: &Table, prod: &Table) -> Result<Table, AlgebraError> {
    let n = prod.size();
    if meet.size() != n {
        return Err(AlgebraError::Malformed("meet and prod sizes differ".into()));
    }
    let leq = |x: ElementId, y: ElementId| meet.get(x, y) == x;
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let below: Vec<ElementId> = (0..n).filter(|&z| leq(prod.get(a, z), b)).collect();
            let max = below
                .iter()
                .copied()
                .find(|&m| below.iter().all(|&z| leq(z, m)))
                .ok_or(AlgebraError::NoResiduum { a, b })?;
            cells.push(max);
        }
    }
    Ok(Table { n, cells })
}

/// Order of an element: the least `k >= 1` with `x^k = 0`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Truth of an identity over the whole carrier, with the first failing
/// point when it does not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub holds: bool,
    pub witness: Vec<ElementId>,
}

impl IdentityVerdict {
    fn from_witness(w: Option<Vec<ElementId>>) -> Self {
        match w {
            None => IdentityVerdict { holds: true, witness: Vec::new() },
            Some(witness) => IdentityVerdict { holds: false, witness },
        }
    }
}

/// Membership in the subvarieties the workbench cares about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyFlags {
    /// `x⁻⁻ = x`
    pub is_mv: IdentityVerdict,
    /// `x ⊙ x = x`
    pub is_godel: IdentityVerdict,
    /// any two elements comparable
    pub is_linear: IdentityVerdict,
    /// `x → (x ⊙ y) = x⁻ ∨ y`
    pub mv_or_product_identity: IdentityVerdict,
}

/// A sealed finite BL-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlAlgebra {
    tables: Tables,
    bottom: ElementId,
    top: ElementId,
    leq: Vec<bool>,
    index: HashMap<String, ElementId>,
}

impl BlAlgebra {
    /// Checks every law and seals the tables. Returns the first violation
    /// in the fixed scan order: laws in [`Law::ALL`] order, then argument
    /// tuples in lexicographic order.
    pub fn new(tables: Tables) -> Result<Self, AlgebraError> {
        let n = tables.labels.len();
        if n == 0 {
            return Err(AlgebraError::Malformed("empty carrier".into()));
        }
        for (name, t) in [("meet", &tables.meet), ("join", &tables.join), ("prod", &tables.prod), ("impl", &tables.imp)]
        {
            if t.size() != n {
                return Err(AlgebraError::Malformed(format!("{name} table has size {}, expected {n}", t.size())));
            }
            if t.cells.iter().any(|&v| v >= n) {
                return Err(AlgebraError::Malformed(format!("{name} table has an out-of-range entry")));
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in tables.labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(AlgebraError::Malformed(format!("duplicate label {l:?}")));
            }
        }

        if let Some(v) = first_violation(&tables) {
            return Err(AlgebraError::Violation(v));
        }
        let bottom = least(&tables).expect("bounded law checked");
        let top = greatest(&tables).expect("bounded law checked");
        let leq = (0..n * n).map(|k| tables.meet.get(k / n, k % n) == k / n).collect();
        Ok(BlAlgebra { tables, bottom, top, leq, index })
    }

    /// Builds an algebra from `meet` and `prod` only, deriving join from
    /// the order and the residuum by adjointness.
    pub fn from_meet_and_prod(labels: Vec<String>, meet: Table, prod: Table) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if meet.size() != n || prod.size() != n {
            return Err(AlgebraError::Malformed("table sizes do not match labels".into()));
        }
        let join = join_from_meet(&meet)?;
        let imp = residuum_from_monoid(&meet, &prod)?;
        BlAlgebra::new(Tables { labels, meet, join, prod, imp })
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    pub fn into_tables(self) -> Tables {
        self.tables
    }

    pub fn size(&self) -> usize {
        self.tables.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size()
    }

    pub fn labels(&self) -> &[String] {
        &self.tables.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.tables.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.tables.meet.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.tables.join.get(a, b)
    }

    #[inline]
    pub fn prod(&self, a: ElementId, b: ElementId) -> ElementId {
        self.tables.prod.get(a, b)
    }

    #[inline]
    pub fn imp(&self, a: ElementId, b: ElementId) -> ElementId {
        self.tables.imp.get(a, b)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a * self.size() + b]
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `x⁻ = x → 0`
    #[inline]
    pub fn neg(&self, x: ElementId) -> ElementId {
        self.imp(x, self.bottom)
    }

    /// `x ⊕ y = (x⁻ ⊙ y⁻)⁻`
    pub fn oplus(&self, x: ElementId, y: ElementId) -> ElementId {
        self.neg(self.prod(self.neg(x), self.neg(y)))
    }

    /// `x ⊖ y = x ⊙ y⁻`
    pub fn ominus(&self, x: ElementId, y: ElementId) -> ElementId {
        self.prod(x, self.neg(y))
    }

    /// `d(x, y) = (x → y) ⊙ (y → x)`
    pub fn dist(&self, x: ElementId, y: ElementId) -> ElementId {
        self.prod(self.imp(x, y), self.imp(y, x))
    }

    /// `x ⊥ y` iff `x ⊙ y = 0`.
    pub fn orthogonal(&self, x: ElementId, y: ElementId) -> bool {
        self.prod(x, y) == self.bottom
    }

    /// Partial sum of orthogonal elements, `y⁻ → x⁻⁻`; `None` when `x ⊙ y ≠ 0`.
    pub fn partial_sum(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.orthogonal(x, y).then(|| self.imp(self.neg(y), self.neg(self.neg(x))))
    }

    /// `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: ElementId, k: usize) -> ElementId {
        let mut acc = self.top;
        for _ in 0..k {
            acc = self.prod(acc, x);
        }
        acc
    }

    /// Powers `x, x², …` up to and including the first repeat. Powers
    /// decrease, so the last entry is the limit power.
    pub fn powers(&self, x: ElementId) -> Vec<ElementId> {
        let mut out = vec![x];
        loop {
            let last = *out.last().unwrap();
            let next = self.prod(last, x);
            if next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn ord(&self, x: ElementId) -> Order {
        match self.powers(x).iter().position(|&p| p == self.bottom) {
            Some(i) => Order::Finite(i + 1),
            None => Order::Infinite,
        }
    }

    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.prod(x, x) == x
    }

    /// `(x^k)⁻ <= x` for every `k >= 1`.
    pub fn is_co_infinitesimal(&self, x: ElementId) -> bool {
        self.powers(x).into_iter().all(|p| self.leq(self.neg(p), x))
    }

    pub fn is_linear(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub fn incomparable_pair(&self) -> Option<(ElementId, ElementId)> {
        let n = self.size();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !self.comparable(a, b))
    }

    pub fn is_mv(&self) -> bool {
        self.elements().all(|x| self.neg(self.neg(x)) == x)
    }

    pub fn classify_variety(&self) -> VarietyFlags {
        let is_mv = self.elements().find(|&x| self.neg(self.neg(x)) != x).map(|x| vec![x]);
        let is_godel = self.elements().find(|&x| !self.is_idempotent(x)).map(|x| vec![x]);
        let is_linear = self.incomparable_pair().map(|(a, b)| vec![a, b]);
        let mut mvp = None;
        'outer: for x in self.elements() {
            for y in self.elements() {
                if self.imp(x, self.prod(x, y)) != self.join(self.neg(x), y) {
                    mvp = Some(vec![x, y]);
                    break 'outer;
                }
            }
        }
        VarietyFlags {
            is_mv: IdentityVerdict::from_witness(is_mv),
            is_godel: IdentityVerdict::from_witness(is_godel),
            is_linear: IdentityVerdict::from_witness(is_linear),
            mv_or_product_identity: IdentityVerdict::from_witness(mvp),
        }
    }

    /// Elements sorted bottom-up along the order; only meaningful for chains.
    pub fn chain_order(&self) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = self.elements().collect();
        v.sort_by_key(|&x| self.elements().filter(|&y| self.leq(y, x)).count());
        v
    }

    /// Restricts the algebra to a subset closed under all operations and
    /// the constants. Elements keep ascending original index order.
    pub fn subalgebra(&self, members: &[ElementId]) -> Result<Subalgebra, AlgebraError> {
        let mut embedding: Vec<ElementId> = members.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        let mut back = vec![usize::MAX; self.size()];
        for (i, &x) in embedding.iter().enumerate() {
            back[x] = i;
        }
        for c in [self.bottom, self.top] {
            if back[c] == usize::MAX {
                return Err(AlgebraError::NotClosed(format!("missing constant {}", self.label(c))));
            }
        }
        let m = embedding.len();
        let mut tabs = Vec::with_capacity(4);
        for (name, t) in [
            ("meet", &self.tables.meet),
            ("join", &self.tables.join),
            ("prod", &self.tables.prod),
            ("impl", &self.tables.imp),
        ] {
            let mut cells = Vec::with_capacity(m * m);
            for &a in &embedding {
                for &b in &embedding {
                    let v = back[t.get(a, b)];
                    if v == usize::MAX {
                        return Err(AlgebraError::NotClosed(format!(
                            "{name}({}, {}) leaves the subset",
                            self.label(a),
                            self.label(b)
                        )));
                    }
                    cells.push(v);
                }
            }
            tabs.push(Table { n: m, cells });
        }
        let imp = tabs.pop().unwrap();
        let prod = tabs.pop().unwrap();
        let join = tabs.pop().unwrap();
        let meet = tabs.pop().unwrap();
        let labels = embedding.iter().map(|&x| self.label(x).to_owned()).collect();
        let algebra = BlAlgebra::new(Tables { labels, meet, join, prod, imp })?;
        Ok(Subalgebra { algebra, embedding })
    }

    /// Checks that `map` is a BL-homomorphism into `target`.
    pub fn homomorphism_defect(&self, target: &BlAlgebra, map: &[ElementId]) -> Option<String> {
        if map.len() != self.size() {
            return Some(format!("map has {} entries, expected {}", map.len(), self.size()));
        }
        if map.iter().any(|&v| v >= target.size()) {
            return Some("map value out of range".into());
        }
        if map[self.bottom] != target.bottom || map[self.top] != target.top {
            return Some("constants not preserved".into());
        }
        for a in self.elements() {
            for b in self.elements() {
                let (fa, fb) = (map[a], map[b]);
                let ops: [(&str, ElementId, ElementId); 4] = [
                    ("meet", map[self.meet(a, b)], target.meet(fa, fb)),
                    ("join", map[self.join(a, b)], target.join(fa, fb)),
                    ("prod", map[self.prod(a, b)], target.prod(fa, fb)),
                    ("impl", map[self.imp(a, b)], target.imp(fa, fb)),
                ];
                for (name, lhs, rhs) in ops {
                    if lhs != rhs {
                        return Some(format!("{name} not preserved at ({}, {})", self.label(a), self.label(b)));
                    }
                }
            }
        }
        None
    }

    /// An isomorphism onto `other`, if one exists.
    pub fn isomorphism_to(&self, other: &BlAlgebra) -> Option<Vec<ElementId>> {
        let n = self.size();
        if n != other.size() {
            return None;
        }
        let sig = |a: &BlAlgebra, x: ElementId| {
            let below = a.elements().filter(|&y| a.leq(y, x)).count();
            (below, a.ord(x), a.is_idempotent(x), a.neg(a.neg(x)) == x)
        };
        let mine: Vec<_> = self.elements().map(|x| sig(self, x)).collect();
        let theirs: Vec<_> = other.elements().map(|x| sig(other, x)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            k: usize,
            a: &BlAlgebra,
            b: &BlAlgebra,
            mine: &[(usize, Order, bool, bool)],
            theirs: &[(usize, Order, bool, bool)],
            map: &mut Vec<ElementId>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = a.size();
            if k == n {
                return true;
            }
            for y in 0..n {
                if used[y] || mine[k] != theirs[y] {
                    continue;
                }
                map[k] = y;
                let ok = (0..=k).all(|j| {
                    [(k, j), (j, k)].iter().all(|&(p, q)| {
                        let (fp, fq) = (map[p], map[q]);
                        let check = |r: ElementId, s: ElementId| map[r] == usize::MAX || map[r] == s;
                        check(a.meet(p, q), b.meet(fp, fq))
                            && check(a.prod(p, q), b.prod(fp, fq))
                            && check(a.imp(p, q), b.imp(fp, fq))
                            && check(a.join(p, q), b.join(fp, fq))
                    })
                });
                if ok {
                    used[y] = true;
                    if go(k + 1, a, b, mine, theirs, map, used) {
                        return true;
                    }
                    used[y] = false;
                }
                map[k] = usize::MAX;
            }
            false
        }
        if go(0, self, other, &mine, &theirs, &mut map, &mut used) && self.homomorphism_defect(other, &map).is_none() {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &BlAlgebra) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// A subalgebra together with its embedding into the parent algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: BlAlgebra,
    /// `embedding[i]` is the parent index of the subalgebra's element `i`.
    pub embedding: Vec<ElementId>,
}

impl Subalgebra {
    /// Subalgebra index of a parent element, if it belongs to the subalgebra.
    pub fn local_index(&self, parent: ElementId) -> Option<ElementId> {
        self.embedding.binary_search(&parent).ok()
    }
}

/// Join table recovered from the meet order; fails if some pair has no
/// least upper bound.
pub fn join_from_meet(meet: &Table) -> Result<Table, AlgebraError> {
    let n = meet.size();
    let leq = |x: ElementId, y: ElementId| meet.get(x, y) == x;
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ubs: Vec<ElementId> = (0..n).filter(|&z| leq(a, z) && leq(b, z)).collect();
            let lub = ubs
                .iter()
                .copied()
                .find(|&m| ubs.iter().all(|&z| leq(m, z)))
                .ok_or_else(|| AlgebraError::Malformed(format!("no join for ({a}, {b})")))?;
            cells.push(lub);
        }
    }
    Ok(Table { n, cells })
}

/// Meet and join of a chain whose order is the index order.
pub fn chain_lattice(n: usize) -> (Table, Table) {
    (Table::from_fn(n, |a, b| a.min(b)), Table::from_fn(n, |a, b| a.max(b)))
}

fn first_violation(t: &Tables) -> Option<AxiomViolation> {
    let n = t.labels.len();
    let top = greatest(t);
    for law in Law::ALL {
        let found = match law.arity() {
            0 => (!law.holds_at(t, top, &[])).then(Vec::new),
            1 => (0..n).find(|&a| !law.holds_at(t, top, &[a])).map(|a| vec![a]),
            2 => (0..n * n).map(|k| [k / n, k % n]).find(|w| !law.holds_at(t, top, w)).map(|w| w.to_vec()),
            _ => (0..n * n * n)
                .map(|k| [k / (n * n), (k / n) % n, k % n])
                .find(|w| !law.holds_at(t, top, w))
                .map(|w| w.to_vec()),
        };
        if let Some(witness) = found {
            return Some(AxiomViolation { law, witness });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{four_element, mv_chain};

    #[test]
    fn residuum_of_bottom_is_top() {
        let a = mv_chain(3);
        for b in a.elements() {
            assert_eq!(a.imp(a.bottom(), b), a.top());
        }
    }

    #[test]
    fn mv_chain_residuum_matches_closed_form() {
        let a = mv_chain(4);
        let r = residuum_from_monoid(&a.tables().meet, &a.tables().prod).unwrap();
        // x3 -> x1 = x_{(4-3+1) min 4} = x2
        assert_eq!(r.get(3, 1), 2);
        assert_eq!(r, a.tables().imp);
    }

    #[test]
    fn four_element_residuum_is_recomputed_exactly() {
        let (a, _) = four_element();
        let r = residuum_from_monoid(&a.tables().meet, &a.tables().prod).unwrap();
        assert_eq!(r, a.tables().imp);
        let (alpha, beta) = (a.index_of("a").unwrap(), a.index_of("b").unwrap());
        assert_eq!(a.imp(beta, alpha), alpha);
    }

    #[test]
    fn no_residuum_detected() {
        // diamond 0 < p, q < 1 with p*p = p*q = q*q = 0: {z : p*z <= 0} = {0, p, q}
        // has no maximum because p and q are incomparable
        let meet = Table::from_rows(&[vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]]).unwrap();
        let prod = Table::from_rows(&[vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 2], vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(residuum_from_monoid(&meet, &prod), Err(AlgebraError::NoResiduum { a: 1, b: 0 }));
    }

    #[test]
    fn derived_operations_on_four_element() {
        let (a, _) = four_element();
        let alpha = a.index_of("a").unwrap();
        let beta = a.index_of("b").unwrap();
        assert_eq!(a.oplus(alpha, alpha), a.top());
        assert_eq!(a.ord(alpha), Order::Finite(2));
        assert_eq!(a.ord(beta), Order::Infinite);
        assert_eq!(a.ord(a.bottom()), Order::Finite(1));
        assert_eq!(a.pow(beta, 0), a.top());
        for x in a.elements() {
            assert_eq!(a.dist(x, x), a.top());
        }
    }

    #[test]
    fn variety_flags() {
        let (a, _) = four_element();
        let flags = a.classify_variety();
        assert!(!flags.is_mv.holds);
        assert_eq!(flags.is_mv.witness, vec![a.index_of("b").unwrap()]);
        assert!(flags.is_linear.holds);
        assert!(mv_chain(3).classify_variety().is_mv.holds);
        let g = crate::constructors::godel_chain(4);
        let gf = g.classify_variety();
        assert!(gf.is_godel.holds && gf.is_linear.holds);
    }

    #[test]
    fn empty_and_duplicate_labels_rejected() {
        let t = Table::from_fn(0, |_, _| 0);
        let err = BlAlgebra::new(Tables { labels: vec![], meet: t.clone(), join: t.clone(), prod: t.clone(), imp: t });
        assert!(matches!(err, Err(AlgebraError::Malformed(_))));

        let mut tabs = mv_chain(1).into_tables();
        tabs.labels = vec!["x".into(), "x".into()];
        assert!(matches!(BlAlgebra::new(tabs), Err(AlgebraError::Malformed(_))));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Table::from_rows(&[vec![0, 1], vec![0]]).is_err());
        assert!(Table::from_rows(&[vec![0, 2], vec![0, 1]]).is_err());
    }
}
