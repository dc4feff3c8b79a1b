use super::Algebra;
use crate::error::{LawViolation, OpLabel, Side};

/// A finite semiring as a pair of tables over the carrier `0..size`.
///
/// Addition is a commutative monoid with unit `zero`, multiplication is
/// associative, distributes over addition on both sides, and `zero` is
/// absorbing. A multiplicative unit is not required; when one exists it is
/// detected and cached.
#[derive(Debug, Clone)]
pub struct FiniteSemiring {
    size: usize,
    zero: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    mul_unit: Option<usize>,
    name: Option<String>,
}

impl PartialEq for FiniteSemiring {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteSemiring {}

impl std::hash::Hash for FiniteSemiring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.zero.hash(state);
        self.add.hash(state);
        self.mul.hash(state);
    }
}

impl FiniteSemiring {
    /// Validates both tables and builds the semiring.
    ///
    /// Law check order: zero index, table shapes, entry ranges, additive
    /// identity, additive commutativity, additive associativity,
    /// multiplicative associativity, distributivity (left then right),
    /// absorption. The first violation is returned with witnesses.
    pub fn new(
        size: usize,
        zero: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
    ) -> Result<Self, LawViolation> {
        check_semiring_laws(size, zero, &add, &mul)?;
        Ok(Self::raw(size, zero, add, mul))
    }

    fn raw(size: usize, zero: usize, add: Vec<usize>, mul: Vec<usize>) -> Self {
        let mul_unit = (0..size)
            .find(|&u| (0..size).all(|a| mul[u * size + a] == a && mul[a * size + u] == a));
        FiniteSemiring {
            size,
            zero,
            add,
            mul,
            mul_unit,
            name: None,
        }
    }

    /// Display name, if one was attached. Names never affect equality.
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

    /// The name when present, otherwise a size-based placeholder.
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("semiring of order {}", self.size))
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    /// The multiplicative unit, when the semiring happens to have one.
    pub fn mul_unit(&self) -> Option<usize> {
        self.mul_unit
    }

    /// True when every element has an additive inverse.
    pub fn is_ring(&self) -> bool {
        (0..self.size)
            .all(|a| (0..self.size).any(|b| self.add(a, b) == self.zero))
    }

    /// The underlying additive commutative monoid.
    pub fn additive_monoid(&self) -> super::FiniteMonoid {
        super::FiniteMonoid::from_tables_trusted(self.size, self.zero, vec![self.add.clone()])
    }
}

/// Validates an addition and a multiplication table; on success returns the
/// semiring.
pub fn validate_semiring(
    size: usize,
    zero: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
) -> Result<FiniteSemiring, LawViolation> {
    FiniteSemiring::new(size, zero, add, mul)
}

fn check_semiring_laws(
    size: usize,
    zero: usize,
    add: &[usize],
    mul: &[usize],
) -> Result<(), LawViolation> {
    if zero >= size {
        return Err(LawViolation::NeutralOutOfRange { index: zero, size });
    }
    for (op, table) in [(OpLabel::Add, add), (OpLabel::Mul, mul)] {
        if table.len() != size * size {
            return Err(LawViolation::BadTableShape {
                op,
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
                        op,
                        row,
                        col,
                        value,
                        size,
                    });
                }
            }
        }
    }
    let plus = |a: usize, b: usize| add[a * size + b];
    let times = |a: usize, b: usize| mul[a * size + b];
    for a in 0..size {
        let left = plus(zero, a);
        if left != a {
            return Err(LawViolation::IdentityFails {
                op: OpLabel::Add,
                side: Side::Left,
                a,
                got: left,
            });
        }
        let right = plus(a, zero);
        if right != a {
            return Err(LawViolation::IdentityFails {
                op: OpLabel::Add,
                side: Side::Right,
                a,
                got: right,
            });
        }
    }
    for a in 0..size {
        for b in 0..a {
            if plus(a, b) != plus(b, a) {
                return Err(LawViolation::AddNotCommutative {
                    a,
                    b,
                    left: plus(a, b),
                    right: plus(b, a),
                });
            }
        }
    }
    for (op, f) in [
        (OpLabel::Add, &plus as &dyn Fn(usize, usize) -> usize),
        (OpLabel::Mul, &times),
    ] {
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let left = f(f(a, b), c);
                    let right = f(a, f(b, c));
                    if left != right {
                        return Err(LawViolation::NotAssociative {
                            op,
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
    }
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                let left = times(a, plus(b, c));
                let right = plus(times(a, b), times(a, c));
                if left != right {
                    return Err(LawViolation::NotDistributive {
                        side: Side::Left,
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
                let left = times(plus(a, b), c);
                let right = plus(times(a, c), times(b, c));
                if left != right {
                    return Err(LawViolation::NotDistributive {
                        side: Side::Right,
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
    for a in 0..size {
        let got = times(zero, a);
        if got != zero {
            return Err(LawViolation::ZeroNotAbsorbing {
                side: Side::Left,
                a,
                got,
            });
        }
        let got = times(a, zero);
        if got != zero {
            return Err(LawViolation::ZeroNotAbsorbing {
                side: Side::Right,
                a,
                got,
            });
        }
    }
    Ok(())
}

impl Algebra for FiniteSemiring {
    const OP_COUNT: usize = 2;
    const OP_LABELS: &'static [OpLabel] = &[OpLabel::Add, OpLabel::Mul];
    const SIGNATURE: &'static str = "semiring";

    fn size(&self) -> usize {
        self.size
    }

    fn neutral(&self) -> usize {
        self.zero
    }

    fn table(&self, which: usize) -> &[usize] {
        match which {
            0 => &self.add,
            1 => &self.mul,
            _ => panic!("semirings have two operations"),
        }
    }

    fn from_tables(
        size: usize,
        neutral: usize,
        mut tables: Vec<Vec<usize>>,
    ) -> Result<Self, LawViolation> {
        assert_eq!(tables.len(), 2, "semirings have two operations");
        let mul = tables.pop().unwrap();
        let add = tables.pop().unwrap();
        FiniteSemiring::new(size, neutral, add, mul)
    }

    fn from_tables_trusted(size: usize, neutral: usize, mut tables: Vec<Vec<usize>>) -> Self {
        assert_eq!(tables.len(), 2, "semirings have two operations");
        let mul = tables.pop().unwrap();
        let add = tables.pop().unwrap();
        debug_assert!(
            size > 24 || check_semiring_laws(size, neutral, &add, &mul).is_ok(),
            "trusted semiring tables violate a law"
        );
        FiniteSemiring::raw(size, neutral, add, mul)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_rig_validates_and_is_unital() {
        // ({0,1}, or, and): the two-element rig of truth values.
        let s = FiniteSemiring::new(2, 0, vec![0, 1, 1, 1], vec![0, 0, 0, 1]).unwrap();
        assert_eq!(s.mul_unit(), Some(1));
        assert!(!s.is_ring());
    }

    #[test]
    fn field_of_two_elements_is_a_ring() {
        let s = FiniteSemiring::new(2, 0, vec![0, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
        assert!(s.is_ring());
        assert!(s.additive_monoid().is_abelian_object());
    }

    #[test]
    fn missing_absorption_is_reported() {
        // Make multiplication constant-1: associativity and distributivity
        // over the join addition fail before absorption is even reached, so
        // use a table where everything up to absorption holds: and-with-flip
        // is hard to arrange, so check a direct witness instead. Addition is
        // join, multiplication is projection onto the left factor: left
        // distributivity a*(b+c)=a vs a+a=a holds iff + idempotent (it is),
        // right: (a+b)*c = a+b vs a*c + b*c = a+b holds. Absorption fails:
        // 1*0 = 1.
        let err =
            FiniteSemiring::new(2, 0, vec![0, 1, 1, 1], vec![0, 0, 1, 1]).unwrap_err();
        assert_eq!(
            err,
            LawViolation::ZeroNotAbsorbing {
                side: Side::Right,
                a: 1,
                got: 1,
            }
        );
    }

    #[test]
    fn additive_commutativity_is_required() {
        // Left-projection addition is associative with no identity... it has
        // no unit, so the identity law fails first; use a table with a unit
        // but one swapped cell to hit the commutativity check.
        let err = FiniteSemiring::new(
            3,
            0,
            vec![0, 1, 2, 1, 1, 1, 2, 2, 2],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0],
        )
        .unwrap_err();
        assert_eq!(
            err,
            LawViolation::AddNotCommutative {
                a: 2,
                b: 1,
                left: 2,
                right: 1,
            }
        );
    }
}
