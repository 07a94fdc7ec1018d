use super::EmbedError;
use serde::{Deserialize, Serialize};

/// Level `k` of a qudit holding `b` qubits carries the bit string `bin_b(k)`,
/// first slot most significant. Levels at or above `2^b` are ancillary.
pub fn direct_mapping(b: usize, d: usize) -> Vec<Option<Vec<u8>>> {
    (0..d)
        .map(|k| (k < 1 << b).then(|| (0..b).map(|s| ((k >> (b - 1 - s)) & 1) as u8).collect()))
        .collect()
}

/// Bit of `slot` in the label of `level`.
pub fn slot_bit(level: usize, slot: usize, b: usize) -> usize {
    (level >> (b - 1 - slot)) & 1
}

/// Placement of logical qubits on `(qudit, slot)` positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitLayout {
    pub m: usize,
    pub b: usize,
    pub d: usize,
    pub assignment: Vec<(usize, usize)>,
}

impl QubitLayout {
    pub fn new(m: usize, b: usize, d: usize, assignment: Vec<(usize, usize)>) -> Result<Self, EmbedError> {
        if b == 0 || b >= usize::BITS as usize || 1usize << b > d {
            return Err(EmbedError::InvalidLayout(format!("b = {b} qubits do not fit a d = {d} qudit")));
        }
        let mut seen = vec![false; m * b];
        for (q, &(w, s)) in assignment.iter().enumerate() {
            if w >= m || s >= b {
                return Err(EmbedError::InvalidLayout(format!("qubit {q} placed at ({w}, {s}) outside {m}x{b}")));
            }
            if std::mem::replace(&mut seen[w * b + s], true) {
                return Err(EmbedError::InvalidLayout(format!("position ({w}, {s}) used twice")));
            }
        }
        Ok(Self { m, b, d, assignment })
    }

    /// Qubits filled in order: qubit `q` at `(q / b, q % b)`.
    pub fn sequential(n: usize, m: usize, b: usize, d: usize) -> Result<Self, EmbedError> {
        if n > m * b {
            return Err(EmbedError::Capacity { n, m, b });
        }
        Self::new(m, b, d, (0..n).map(|q| (q / b, q % b)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.assignment.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.d; self.m]
    }

    /// Index of the qubit in the embedding order `qudit * b + slot`.
    pub fn physical(&self, q: usize) -> usize {
        let (w, s) = self.assignment[q];
        w * self.b + s
    }

    pub fn ancilla_available(&self) -> bool {
        self.d > 1 << self.b
    }
}

/// `(bm)! / (m! (b!)^m)`: ways to split `n = bm` qubits into `m` unordered groups of `b`.
pub fn count_mappings(n: usize, b: usize, m: usize) -> Result<u128, EmbedError> {
    if b == 0 || n != b * m {
        return Err(EmbedError::NotDivisible { n, b, m });
    }
    // Product over groups of C(remaining - 1, b - 1), which equals the closed form.
    let mut total: u128 = 1;
    let mut remaining = n as u128;
    for _ in 0..m {
        total = total.checked_mul(binomial(remaining - 1, b as u128 - 1)?).ok_or(EmbedError::Overflow)?;
        remaining -= b as u128;
    }
    Ok(total)
}

fn binomial(n: u128, k: u128) -> Result<u128, EmbedError> {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i).ok_or(EmbedError::Overflow)? / (i + 1);
    }
    Ok(r)
}

fn combinations(pool: &[usize], k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..pool.len() {
        cur.push(pool[i]);
        combinations(pool, k, out, cur, i + 1);
        cur.pop();
    }
}

/// Canonical layouts of `n = bm` qubits: each group is sorted and groups are
/// ordered by their least member.
pub fn canonical_layouts(m: usize, b: usize, d: usize) -> Vec<QubitLayout> {
    fn rec(free: Vec<usize>, b: usize, groups: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&lead, rest)) = free.split_first() else {
            out.push(groups.clone());
            return;
        };
        let mut picks = Vec::new();
        combinations(rest, b - 1, &mut picks, &mut Vec::new(), 0);
        for p in picks {
            let mut g = vec![lead];
            g.extend(&p);
            let left: Vec<usize> = rest.iter().copied().filter(|x| !p.contains(x)).collect();
            groups.push(g);
            rec(left, b, groups, out);
            groups.pop();
        }
    }
    let mut parts = Vec::new();
    rec((0..m * b).collect(), b, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|groups| {
            let mut assignment = vec![(0, 0); m * b];
            for (w, g) in groups.iter().enumerate() {
                for (s, &q) in g.iter().enumerate() {
                    assignment[q] = (w, s);
                }
            }
            QubitLayout { m, b, d, assignment }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_mapping_examples() {
        let m2 = direct_mapping(2, 5);
        assert_eq!(m2[2], Some(vec![1, 0]));
        assert_eq!(m2[4], None);
        let m1 = direct_mapping(1, 2);
        assert_eq!(m1, vec![Some(vec![0]), Some(vec![1])]);
        assert_eq!(direct_mapping(3, 8)[5], Some(vec![1, 0, 1]));
    }

    #[test]
    fn count_closed_form() {
        for m in 1..6 {
            assert_eq!(count_mappings(m, 1, m).unwrap(), 1);
        }
        assert_eq!(count_mappings(4, 2, 2).unwrap(), 3);
        assert_eq!(count_mappings(6, 2, 3).unwrap(), 15);
        assert_eq!(count_mappings(9, 3, 3).unwrap(), 280);
        assert!(matches!(count_mappings(5, 2, 2), Err(EmbedError::NotDivisible { .. })));
    }

    #[test]
    fn enumeration_matches_count() {
        for (m, b) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)] {
            let all = canonical_layouts(m, b, 1 << b);
            assert_eq!(all.len() as u128, count_mappings(m * b, b, m).unwrap());
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn layout_validation() {
        assert!(QubitLayout::new(2, 2, 4, vec![(0, 0), (0, 0)]).is_err());
        assert!(QubitLayout::new(2, 3, 4, vec![]).is_err());
        assert!(matches!(QubitLayout::sequential(5, 2, 2, 4), Err(EmbedError::Capacity { .. })));
    }
}
