//! Finite gyrogroups represented by their addition (Cayley) and gyration tables.
//!
//! A [`Gyrogroup`] can only be obtained through [`verify_axioms`] (or the
//! [`Gyrogroup::from_tables`] shorthand), so every instance in circulation has
//! passed the full, exhaustive axiom check and is immutable afterwards.

use std::fmt;

use serde::Serialize;

use crate::error::{GyroError, Result};
use crate::perm::Permutation;

/// Elements are dense indices `0..n`.
pub type Element = usize;

/// The `n × n` addition table, `entry(a, b) = a ⊕ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<Element>,
}

impl CayleyTable {
    /// Builds a table from rows. Checks squareness and entry range only; the
    /// Latin-square property is a verification concern.
    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(GyroError::EmptyTable);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(GyroError::RaggedTable {
                    row,
                    len: r.len(),
                    order,
                });
            }
            for x in r {
                if x >= order {
                    return Err(GyroError::ElementOutOfRange { index: x, order });
                }
                entries.push(x);
            }
        }
        Ok(CayleyTable { order, entries })
    }

    /// Table of the cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_rows((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: Element, b: Element) -> Element {
        self.entries[a * self.order + b]
    }

    pub fn row(&self, a: Element) -> &[Element] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.entries.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    /// Copy of the table with a single entry replaced.
    pub fn with_entry(&self, a: Element, b: Element, value: Element) -> Result<Self> {
        for x in [a, b, value] {
            if x >= self.order {
                return Err(GyroError::ElementOutOfRange {
                    index: x,
                    order: self.order,
                });
            }
        }
        let mut out = self.clone();
        out.entries[a * self.order + b] = value;
        Ok(out)
    }

    /// Lexicographically least Latin-square violations: `[row, c1, c2]` for the
    /// first row with `row⊕c1 = row⊕c2`, and `[col, r1, r2]` for columns.
    pub fn latin_violations(&self) -> Vec<Violation> {
        let n = self.order;
        let mut out = Vec::new();
        let row_dup = (0..n).find_map(|r| first_duplicate(n, |c| self.get(r, c)).map(|(c1, c2)| vec![r, c1, c2]));
        if let Some(witness) = row_dup {
            out.push(Violation::new(Law::LatinRow, witness));
        }
        let col_dup = (0..n).find_map(|c| first_duplicate(n, |r| self.get(r, c)).map(|(r1, r2)| vec![c, r1, r2]));
        if let Some(witness) = col_dup {
            out.push(Violation::new(Law::LatinColumn, witness));
        }
        out
    }

    /// The unique two-sided identity, if any.
    pub fn find_identity(&self) -> Option<Element> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    /// Two-sided inverses relative to `e`, or the least element lacking one.
    pub fn find_inverses(&self, e: Element) -> std::result::Result<Vec<Element>, Element> {
        let n = self.order;
        (0..n)
            .map(|a| {
                let mut left = (0..n).filter(|&x| self.get(x, a) == e);
                let mut right = (0..n).filter(|&x| self.get(a, x) == e);
                match (left.next(), left.next(), right.next(), right.next()) {
                    (Some(l), None, Some(r), None) if l == r => Ok(l),
                    _ => Err(a),
                }
            })
            .collect()
    }
}

fn first_duplicate(n: usize, f: impl Fn(usize) -> usize) -> Option<(usize, usize)> {
    (0..n).find_map(|i| ((i + 1)..n).find(|&j| f(i) == f(j)).map(|j| (i, j)))
}

/// `n × n` table of maps `gyr[a,b]: G → G`, stored densely.
///
/// The maps are not required to be bijections; [`verify_axioms`] checks that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GyrationTable {
    order: usize,
    maps: Vec<Element>,
}

impl GyrationTable {
    pub fn from_fn(order: usize, f: impl Fn(Element, Element, Element) -> Element) -> Self {
        let mut maps = Vec::with_capacity(order * order * order);
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    maps.push(f(a, b, c));
                }
            }
        }
        GyrationTable { order, maps }
    }

    /// Builds a table from an `n × n` grid of permutations of degree `n`.
    pub fn from_permutations(grid: &[Vec<Permutation>]) -> Result<Self> {
        let order = grid.len();
        for (row, r) in grid.iter().enumerate() {
            if r.len() != order {
                return Err(GyroError::RaggedTable {
                    row,
                    len: r.len(),
                    order,
                });
            }
            if let Some(p) = r.iter().find(|p| p.degree() != order) {
                return Err(GyroError::OrderMismatch {
                    expected: order,
                    found: p.degree(),
                });
            }
        }
        Ok(Self::from_fn(order, |a, b, c| grid[a][b].apply(c)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The map `gyr[a,b]` as its image vector.
    #[inline]
    pub fn get(&self, a: Element, b: Element) -> &[Element] {
        let n = self.order;
        let start = (a * n + b) * n;
        &self.maps[start..start + n]
    }

    #[inline]
    pub fn apply(&self, a: Element, b: Element, c: Element) -> Element {
        self.maps[(a * self.order + b) * self.order + c]
    }

    pub fn permutation(&self, a: Element, b: Element) -> Option<Permutation> {
        Permutation::from_images(self.get(a, b).to_vec()).ok()
    }
}

/// Derives every gyration pointwise from the addition table via the gyrator
/// identity `gyr[a,b]c = ⊖(a⊕b) ⊕ (a⊕(b⊕c))`.
///
/// The result is not guaranteed to consist of automorphisms; that is checked
/// by [`verify_axioms`].
pub fn derive_gyrations(table: &CayleyTable) -> Result<GyrationTable> {
    if let Some(v) = table.latin_violations().first() {
        return Err(GyroError::NotLatinSquare(v.to_string()));
    }
    let e = table.find_identity().ok_or(GyroError::MissingIdentity)?;
    let inv = table.find_inverses(e).map_err(GyroError::MissingInverse)?;
    Ok(gyrator(table, &inv))
}

fn gyrator(table: &CayleyTable, inv: &[Element]) -> GyrationTable {
    GyrationTable::from_fn(table.order(), |a, b, c| {
        table.get(inv[table.get(a, b)], table.get(a, table.get(b, c)))
    })
}

/// Named laws checked by [`verify_axioms`] and [`check_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// Witness `[row, c1, c2]`.
    LatinRow,
    /// Witness `[col, r1, r2]`.
    LatinColumn,
    /// No witness.
    Identity,
    /// Witness `[a]`.
    Inverse,
    /// Supplied gyration disagrees with the gyrator identity; witness `[a, b, c]`.
    GyrationMismatch,
    /// Witness `[a, b]`.
    GyrationTrivialAtIdentity,
    /// Witness `[a, b, x, y]` with `gyr[a,b]x = gyr[a,b]y`, `x < y`.
    GyrationNotBijective,
    /// Witness `[a, b, x, y]`.
    GyrationNotAutomorphism,
    /// Witness `[x, y, z]`.
    LeftGyroassociative,
    /// Witness `[x, y, z]` with `gyr[x⊕y, y]z ≠ gyr[x,y]z`.
    LeftLoop,
    /// `a⊕b = a⊕c ⇒ b = c`; witness `[a, b, c]`.
    GeneralLeftCancellation,
    /// `⊖a⊕(a⊕b) = b`; witness `[a, b]`.
    LeftCancellation,
    /// `(a⊖b)⊞b = a`; witness `[a, b]`.
    RightCancellationI,
    /// `(a⊟b)⊕b = a`; witness `[a, b]`.
    RightCancellationII,
    /// `(a⊕b)⊕c = a⊕(b⊕gyr[b,a]c)`; witness `[a, b, c]`.
    RightGyroassociative,
    /// `gyr[a,b](⊖c) = ⊖gyr[a,b]c`; witness `[a, b, c]`.
    GyrationOfInverse,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::LatinRow => "latin-row",
            Law::LatinColumn => "latin-column",
            Law::Identity => "identity",
            Law::Inverse => "inverse",
            Law::GyrationMismatch => "gyration-mismatch",
            Law::GyrationTrivialAtIdentity => "gyration-trivial-at-identity",
            Law::GyrationNotBijective => "gyration-not-bijective",
            Law::GyrationNotAutomorphism => "gyration-not-automorphism",
            Law::LeftGyroassociative => "left-gyroassociative",
            Law::LeftLoop => "left-loop",
            Law::GeneralLeftCancellation => "general-left-cancellation",
            Law::LeftCancellation => "left-cancellation",
            Law::RightCancellationI => "right-cancellation-1",
            Law::RightCancellationII => "right-cancellation-2",
            Law::RightGyroassociative => "right-gyroassociative",
            Law::GyrationOfInverse => "gyration-of-inverse",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Element>,
}

impl Violation {
    pub fn new(law: Law, witness: Vec<Element>) -> Self {
        Violation { law, witness }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.law, self.witness)
    }
}

/// Outcome of an exhaustive check. At most one violation is recorded per law,
/// carrying the lexicographically least counterexample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn violation(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return f.write_str("passed");
        }
        write!(f, "failed:")?;
        for v in &self.violations {
            write!(f, " {v};")?;
        }
        Ok(())
    }
}

fn first_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find_map(|a| (0..n).find(|&b| bad(a, b)).map(|b| vec![a, b]))
}

/// Checks the gyrogroup axioms exhaustively, in this order:
///
/// 1. Latin-square property (failure returns immediately);
/// 2. a unique two-sided identity;
/// 3. a unique two-sided inverse for every element;
/// 4. gyrations from the gyrator identity, cross-checked against `gyrations` if given;
/// 5. every gyration trivial at the identity, bijective and an automorphism;
/// 6. the left gyroassociative law;
/// 7. the left loop property.
///
/// On success the validated [`Gyrogroup`] is returned alongside the report.
pub fn verify_axioms(
    table: &CayleyTable,
    gyrations: Option<&GyrationTable>,
) -> (VerificationReport, Option<Gyrogroup>) {
    let n = table.order();
    let latin = table.latin_violations();
    if !latin.is_empty() {
        return (VerificationReport::from_violations(latin), None);
    }
    let Some(e) = table.find_identity() else {
        let v = Violation::new(Law::Identity, vec![]);
        return (VerificationReport::from_violations(vec![v]), None);
    };
    let inv = match table.find_inverses(e) {
        Ok(inv) => inv,
        Err(a) => {
            let v = Violation::new(Law::Inverse, vec![a]);
            return (VerificationReport::from_violations(vec![v]), None);
        }
    };

    let derived = gyrator(table, &inv);
    let mut violations = Vec::new();
    if let Some(supplied) = gyrations {
        if supplied.order() != n {
            violations.push(Violation::new(Law::GyrationMismatch, vec![]));
        } else if let Some(w) = first_triple(n, |a, b, c| supplied.apply(a, b, c) != derived.apply(a, b, c)) {
            violations.push(Violation::new(Law::GyrationMismatch, w));
        }
    }

    let gyr = |a, b, c| derived.apply(a, b, c);
    let add = |a, b| table.get(a, b);

    if let Some(w) = first_pair(n, |a, b| (a == e || b == e) && (0..n).any(|c| gyr(a, b, c) != c)) {
        violations.push(Violation::new(Law::GyrationTrivialAtIdentity, w));
    }
    let not_bijective =
        (0..n).find_map(|a| (0..n).find_map(|b| first_duplicate(n, |c| gyr(a, b, c)).map(|(x, y)| vec![a, b, x, y])));
    if let Some(w) = not_bijective {
        violations.push(Violation::new(Law::GyrationNotBijective, w));
    }
    let not_auto = (0..n).find_map(|a| {
        (0..n).find_map(|b| {
            first_pair(n, |x, y| gyr(a, b, add(x, y)) != add(gyr(a, b, x), gyr(a, b, y)))
                .map(|xy| vec![a, b, xy[0], xy[1]])
        })
    });
    if let Some(w) = not_auto {
        violations.push(Violation::new(Law::GyrationNotAutomorphism, w));
    }
    if let Some(w) = first_triple(n, |x, y, z| add(x, add(y, z)) != add(add(x, y), gyr(x, y, z))) {
        violations.push(Violation::new(Law::LeftGyroassociative, w));
    }
    if let Some(w) = first_triple(n, |x, y, z| gyr(add(x, y), y, z) != gyr(x, y, z)) {
        violations.push(Violation::new(Law::LeftLoop, w));
    }

    let report = VerificationReport::from_violations(violations);
    if !report.passed {
        return (report, None);
    }
    let trivial = (0..n * n)
        .map(|ab| derived.get(ab / n, ab % n).iter().enumerate().all(|(i, &x)| i == x))
        .collect();
    let g = Gyrogroup {
        table: table.clone(),
        gyrations: derived,
        identity: e,
        inv,
        trivial,
        name: None,
    };
    (report, Some(g))
}

/// A validated finite gyrogroup. Immutable; cheap to share across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gyrogroup {
    table: CayleyTable,
    gyrations: GyrationTable,
    identity: Element,
    inv: Vec<Element>,
    trivial: Vec<bool>,
    name: Option<String>,
}

impl Gyrogroup {
    /// Runs [`verify_axioms`] and returns the gyrogroup or an error summarising the report.
    pub fn from_tables(table: &CayleyTable, gyrations: Option<&GyrationTable>) -> Result<Self> {
        match verify_axioms(table, gyrations) {
            (_, Some(g)) => Ok(g),
            (report, None) => Err(GyroError::AxiomsFailed(report.to_string())),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn gyrations(&self) -> &GyrationTable {
        &self.gyrations
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order()
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if a < self.order() {
            Ok(a)
        } else {
            Err(GyroError::ElementOutOfRange {
                index: a,
                order: self.order(),
            })
        }
    }

    /// `a ⊕ b`. Panics on out-of-range indices; see [`Self::checked_add`].
    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.table.get(a, b)
    }

    pub fn checked_add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    /// `⊖a`.
    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.inv[a]
    }

    pub fn checked_neg(&self, a: Element) -> Result<Element> {
        Ok(self.neg(self.check(a)?))
    }

    pub fn inverses(&self) -> &[Element] {
        &self.inv
    }

    /// `gyr[a,b]` as an image vector.
    #[inline]
    pub fn gyr(&self, a: Element, b: Element) -> &[Element] {
        self.gyrations.get(a, b)
    }

    /// `gyr[a,b](c)`.
    #[inline]
    pub fn gyr_apply(&self, a: Element, b: Element, c: Element) -> Element {
        self.gyrations.apply(a, b, c)
    }

    pub fn checked_gyr_apply(&self, a: Element, b: Element, c: Element) -> Result<Element> {
        Ok(self.gyr_apply(self.check(a)?, self.check(b)?, self.check(c)?))
    }

    pub fn gyr_permutation(&self, a: Element, b: Element) -> Permutation {
        Permutation::from_images(self.gyr(a, b).to_vec()).expect("validated gyration is a bijection")
    }

    #[inline]
    pub fn gyr_is_identity(&self, a: Element, b: Element) -> bool {
        self.trivial[a * self.order() + b]
    }

    /// True when every gyration is trivial, i.e. the gyrogroup is a group.
    pub fn is_group(&self) -> bool {
        self.trivial.iter().all(|&t| t)
    }

    /// Coaddition `a ⊞ b = a ⊕ gyr[a,⊖b]b`.
    pub fn coadd(&self, a: Element, b: Element) -> Element {
        self.add(a, self.gyr_apply(a, self.neg(b), b))
    }

    /// `a ⊟ b = a ⊞ (⊖b)`.
    pub fn cosub(&self, a: Element, b: Element) -> Element {
        self.coadd(a, self.neg(b))
    }

    /// `s[0] ⊕ (s[1] ⊕ (⋯ ⊕ s[k]))`, folding from the right end inward.
    pub fn left_nested_product(&self, s: &[Element]) -> Result<Element> {
        let (&last, rest) = s.split_last().ok_or(GyroError::EmptySequence)?;
        self.check(last)?;
        rest.iter()
            .rev()
            .try_fold(last, |acc, &x| Ok(self.add(self.check(x)?, acc)))
    }

    /// `((s[0] ⊕ s[1]) ⊕ ⋯) ⊕ s[k]`.
    pub fn right_nested_product(&self, s: &[Element]) -> Result<Element> {
        let (&first, rest) = s.split_first().ok_or(GyroError::EmptySequence)?;
        self.check(first)?;
        rest.iter().try_fold(first, |acc, &x| Ok(self.add(acc, self.check(x)?)))
    }

    /// Least `k ≥ 1` with `a ⊕ (a ⊕ (⋯ ⊕ a)) = e` (k terms).
    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.add(a, x);
            k += 1;
        }
        k
    }
}

/// Exhaustively checks the six standard gyrogroup identities (left
/// cancellation in both forms, both right cancellation laws, the right
/// gyroassociative law and gyrations commuting with inversion).
pub fn check_identities(g: &Gyrogroup) -> VerificationReport {
    let n = g.order();
    let mut violations = Vec::new();
    let mut record = |law, w: Option<Vec<usize>>| {
        if let Some(w) = w {
            violations.push(Violation::new(law, w));
        }
    };
    record(
        Law::GeneralLeftCancellation,
        first_triple(n, |a, b, c| g.add(a, b) == g.add(a, c) && b != c),
    );
    record(
        Law::LeftCancellation,
        first_pair(n, |a, b| g.add(g.neg(a), g.add(a, b)) != b),
    );
    record(
        Law::RightCancellationI,
        first_pair(n, |a, b| g.coadd(g.add(a, g.neg(b)), b) != a),
    );
    record(
        Law::RightCancellationII,
        first_pair(n, |a, b| g.add(g.cosub(a, b), b) != a),
    );
    record(
        Law::RightGyroassociative,
        first_triple(n, |a, b, c| {
            g.add(g.add(a, b), c) != g.add(a, g.add(b, g.gyr_apply(b, a, c)))
        }),
    );
    record(
        Law::GyrationOfInverse,
        first_triple(n, |a, b, c| g.gyr_apply(a, b, g.neg(c)) != g.neg(g.gyr_apply(a, b, c))),
    );
    VerificationReport::from_violations(violations)
}
