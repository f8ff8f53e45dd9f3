use crate::error::{Error, Result};

/// Groups larger than this are rejected; every axiom is checked exhaustively.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its multiplication table on element indices
/// `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Loads and validates a multiplication table, `table[a][b] = a * b`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::GroupAxiom("empty table".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::InvalidArgument(format!(
                "group order {order} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        if let Some(row) = table.iter().position(|r| r.len() != order) {
            return Err(Error::GroupAxiom(format!("row {row} has wrong length")));
        }
        // Latin square: every row and column a permutation
        for (a, row) in table.iter().enumerate() {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for (b, &r) in row.iter().enumerate() {
                let c = table[b][a];
                if r >= order || c >= order {
                    return Err(Error::GroupAxiom(format!("entry out of range in row/column {a}")));
                }
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(Error::GroupAxiom(format!("row {a} repeats element {r}")));
                }
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(Error::GroupAxiom(format!("column {a} repeats element {c}")));
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::GroupAxiom("no two-sided identity".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a][b] == identity).expect("latin square row"))
            .collect();
        Ok(FiniteGroup { order, mult: table.into_iter().flatten().collect(), identity, inverse })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Every element except the identity.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&g| g != self.identity)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// The cyclic group Z_r with `i * j = (i + j) mod r`.
pub fn cyclic_group(r: usize) -> Result<FiniteGroup> {
    if r == 0 {
        return Err(Error::InvalidArgument("cyclic group needs r >= 1".into()));
    }
    FiniteGroup::from_table((0..r).map(|i| (0..r).map(|j| (i + j) % r).collect()).collect())
}
