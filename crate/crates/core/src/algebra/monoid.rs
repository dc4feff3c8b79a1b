use super::Algebra;
use crate::error::{LawViolation, OpLabel, Side};

/// A finite monoid as a multiplication table.
///
/// The carrier is `0..size`, the identity may sit at any index, and the table
/// is flattened row-major with the row selecting the left factor. The name is
/// a display label only: it is ignored by equality, hashing and isomorphism.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
    commutative: bool,
    name: Option<String>,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteMonoid {}

impl std::hash::Hash for FiniteMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.identity.hash(state);
        self.table.hash(state);
    }
}

impl FiniteMonoid {
    /// Validates the table and builds the monoid.
    ///
    /// Law check order: neutral index, table shape, entry range, identity
    /// law, associativity; the first violation is returned with witnesses.
    pub fn new(size: usize, identity: usize, table: Vec<usize>) -> Result<Self, LawViolation> {
        check_monoid_laws(size, identity, &table)?;
        Ok(Self::raw(size, identity, table))
    }

    fn raw(size: usize, identity: usize, table: Vec<usize>) -> Self {
        let commutative = (0..size)
            .all(|a| (0..a).all(|b| table[a * size + b] == table[b * size + a]));
        FiniteMonoid {
            size,
            identity,
            table,
            commutative,
            name: None,
        }
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// Cached commutativity of the multiplication.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// True when every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size)
                .any(|b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
        })
    }

    /// Internal abelian object: commutative and all elements invertible.
    pub fn is_abelian_object(&self) -> bool {
        self.commutative && self.is_group()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.set_name(name);
        self
    }

    /// Display label: the name if set, otherwise a size tag.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("monoid<{}>", self.size),
        }
    }
}

/// Validates a multiplication table; on success returns the monoid.
pub fn validate_monoid(
    size: usize,
    identity: usize,
    table: Vec<usize>,
) -> Result<FiniteMonoid, LawViolation> {
    FiniteMonoid::new(size, identity, table)
}

fn check_monoid_laws(size: usize, identity: usize, table: &[usize]) -> Result<(), LawViolation> {
    if identity >= size {
        return Err(LawViolation::NeutralOutOfRange {
            index: identity,
            size,
        });
    }
    if table.len() != size * size {
        return Err(LawViolation::BadTableShape {
            op: OpLabel::Mul,
            got: table.len(),
            expected: size * size,
            size,
        });
    }
    for row in 0..size {
        for col in 0..size {
            let value = table[row * size + col];
            if value >= size {
                return Err(LawViolation::EntryOutOfRange {
                    op: OpLabel::Mul,
                    row,
                    col,
                    value,
                    size,
                });
            }
        }
    }
    for a in 0..size {
        let left = table[identity * size + a];
        if left != a {
            return Err(LawViolation::IdentityFails {
                op: OpLabel::Mul,
                side: Side::Left,
                a,
                got: left,
            });
        }
        let right = table[a * size + identity];
        if right != a {
            return Err(LawViolation::IdentityFails {
                op: OpLabel::Mul,
                side: Side::Right,
                a,
                got: right,
            });
        }
    }
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                let left = table[table[a * size + b] * size + c];
                let right = table[a * size + table[b * size + c]];
                if left != right {
                    return Err(LawViolation::NotAssociative {
                        op: OpLabel::Mul,
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
            }
        }
    }
    Ok(())
}

impl Algebra for FiniteMonoid {
    const OP_COUNT: usize = 1;
    const OP_LABELS: &'static [OpLabel] = &[OpLabel::Mul];
    const SIGNATURE: &'static str = "monoid";

    fn size(&self) -> usize {
        self.size
    }

    fn neutral(&self) -> usize {
        self.identity
    }

    fn table(&self, which: usize) -> &[usize] {
        assert_eq!(which, 0, "monoids have a single operation");
        &self.table
    }

    fn from_tables(
        size: usize,
        neutral: usize,
        mut tables: Vec<Vec<usize>>,
    ) -> Result<Self, LawViolation> {
        assert_eq!(tables.len(), 1, "monoids have a single operation");
        FiniteMonoid::new(size, neutral, tables.pop().unwrap())
    }

    fn from_tables_trusted(size: usize, neutral: usize, mut tables: Vec<Vec<usize>>) -> Self {
        assert_eq!(tables.len(), 1, "monoids have a single operation");
        let table = tables.pop().unwrap();
        debug_assert!(
            size > 24 || check_monoid_laws(size, neutral, &table).is_ok(),
            "trusted monoid table violates a law"
        );
        FiniteMonoid::raw(size, neutral, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(rows: &[&[usize]]) -> Vec<usize> {
        rows.iter().flat_map(|r| r.iter().copied()).collect()
    }

    #[test]
    fn join_monoid_on_two_elements_validates() {
        // 0 is the identity, 1 is absorbing: the join semilattice on {0, 1}.
        let m = FiniteMonoid::new(2, 0, flat(&[&[0, 1], &[1, 1]])).unwrap();
        assert!(m.is_commutative());
        assert!(!m.is_group());
        assert!(!m.is_abelian_object());
    }

    #[test]
    fn cyclic_group_of_order_two_is_abelian_object() {
        let m = FiniteMonoid::new(2, 0, flat(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(m.is_group());
        assert!(m.is_abelian_object());
    }

    #[test]
    fn out_of_range_entry_is_reported_with_position() {
        let err = FiniteMonoid::new(2, 0, flat(&[&[0, 2], &[1, 1]])).unwrap_err();
        assert_eq!(
            err,
            LawViolation::EntryOutOfRange {
                op: OpLabel::Mul,
                row: 0,
                col: 1,
                value: 2,
                size: 2,
            }
        );
    }

    #[test]
    fn identity_law_violation_names_the_element() {
        // Row of the claimed identity is wrong at element 1.
        let err = FiniteMonoid::new(2, 0, flat(&[&[0, 0], &[1, 1]])).unwrap_err();
        assert_eq!(
            err,
            LawViolation::IdentityFails {
                op: OpLabel::Mul,
                side: Side::Left,
                a: 1,
                got: 0,
            }
        );
    }

    #[test]
    fn first_nonassociative_triple_is_reported() {
        // Identity 0; 1*1 = 2, 1*2 = 1 breaks associativity at (1, 1, 1):
        // (1*1)*2... the checker scans triples in lexicographic order.
        let err =
            FiniteMonoid::new(3, 0, flat(&[&[0, 1, 2], &[1, 2, 1], &[2, 1, 1]])).unwrap_err();
        match err {
            LawViolation::NotAssociative { a, b, c, .. } => {
                // Lexicographically first failing triple.
                let table = [0usize, 1, 2, 1, 2, 1, 2, 1, 1];
                let mul = |x: usize, y: usize| table[x * 3 + y];
                assert_ne!(mul(mul(a, b), c), mul(a, mul(b, c)));
                for (x, y, z) in (0..3)
                    .flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| (x, y, z))))
                {
                    if (x, y, z) < (a, b, c) {
                        assert_eq!(mul(mul(x, y), z), mul(x, mul(y, z)));
                    } else {
                        break;
                    }
                }
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn identity_may_sit_at_any_index() {
        // Same join semilattice with the identity at index 1.
        let m = FiniteMonoid::new(2, 1, flat(&[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(m.identity(), 1);
        assert!(m.is_commutative());
    }

    #[test]
    fn name_is_ignored_by_equality_and_hashing() {
        use std::collections::HashSet;
        let a = FiniteMonoid::new(2, 0, flat(&[&[0, 1], &[1, 0]])).unwrap();
        let b = a.clone().named("Z2");
        assert_eq!(a, b);
        let mut set = HashSet::new();
        set.insert(a);
        assert!(set.contains(&b));
    }
}
