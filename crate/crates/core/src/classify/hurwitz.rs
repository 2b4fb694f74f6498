use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

/// Group order and sorted stabilizer orders of the branch orbits of a
/// finite orientation-preserving action on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchSignature {
    pub order: u32,
    pub nus: Vec<u32>,
}

/// The classical families a valid signature belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureFamily {
    Trivial,
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl fmt::Display for SignatureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignatureFamily::Trivial => "trivial",
            SignatureFamily::Cyclic => "cyclic",
            SignatureFamily::Dihedral => "dihedral",
            SignatureFamily::Tetrahedral => "tetrahedral",
            SignatureFamily::Octahedral => "octahedral",
            SignatureFamily::Icosahedral => "icosahedral",
        })
    }
}

impl BranchSignature {
    pub fn new(order: u32, mut nus: Vec<u32>) -> Self {
        nus.sort_unstable();
        Self { order, nus }
    }

    /// `2 = n (2 - Σ (1 - 1/ν))`, exactly.
    pub fn satisfies_riemann_hurwitz(&self) -> bool {
        if self.order == 0 || self.nus.iter().any(|&v| v < 2 || !self.order.is_multiple_of(v)) {
            return false;
        }
        let one = Ratio::from_integer(1i64);
        let sum: Ratio<i64> = self.nus.iter().map(|&v| one - Ratio::new(1, v as i64)).sum();
        Ratio::from_integer(self.order as i64) * (Ratio::from_integer(2) - sum) == Ratio::from_integer(2)
    }

    /// Which classical family the signature belongs to, if any.
    pub fn family(&self) -> Option<SignatureFamily> {
        let n = self.order;
        match self.nus.as_slice() {
            [] if n == 1 => Some(SignatureFamily::Trivial),
            [a, b] if *a == n && *b == n && n > 1 => Some(SignatureFamily::Cyclic),
            [2, 2, m] if n == 2 * m => Some(SignatureFamily::Dihedral),
            [2, 3, 3] if n == 12 => Some(SignatureFamily::Tetrahedral),
            [2, 3, 4] if n == 24 => Some(SignatureFamily::Octahedral),
            [2, 3, 5] if n == 60 => Some(SignatureFamily::Icosahedral),
            _ => None,
        }
    }

    /// `2;3;3` style field for CSV output.
    pub fn nus_field(&self) -> String {
        self.nus.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for BranchSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.order)?;
        for (i, v) in self.nus.iter().enumerate() {
            write!(f, "{}{v}", if i == 0 { " " } else { ", " })?;
        }
        f.write_str(")")
    }
}

/// Longest branch tuple the search tries; valid ones never exceed three.
pub const MAX_BRANCH_ORBITS: usize = 4;

/// Every signature with `n ≤ n_max` satisfying Riemann–Hurwitz, found by
/// exhaustive search over non-decreasing tuples of divisors, sorted by order
/// and then stabilizers.
pub fn enumerate_riemann_hurwitz(n_max: u32) -> Vec<BranchSignature> {
    let mut out: Vec<BranchSignature> = (1..=n_max.max(1))
        .into_par_iter()
        .flat_map_iter(|n| {
            let divisors: Vec<u32> = (2..=n).filter(|d| n % d == 0).collect();
            let mut found = Vec::new();
            let mut tuple = Vec::new();
            search(n, &divisors, 0, &mut tuple, &mut found);
            found
        })
        .collect();
    out.sort();
    out
}

fn search(n: u32, divisors: &[u32], from: usize, tuple: &mut Vec<u32>, found: &mut Vec<BranchSignature>) {
    let sig = BranchSignature { order: n, nus: tuple.clone() };
    if sig.satisfies_riemann_hurwitz() {
        found.push(sig);
    }
    if tuple.len() == MAX_BRANCH_ORBITS {
        return;
    }
    for i in from..divisors.len() {
        tuple.push(divisors[i]);
        search(n, divisors, i, tuple, found);
        tuple.pop();
    }
}

/// CSV table `order,nus,family` of the given signatures.
pub fn signatures_csv(sigs: &[BranchSignature]) -> String {
    let mut s = String::from("order,nus,family\n");
    for sig in sigs {
        let fam = sig.family().map_or("unknown".to_string(), |f| f.to_string());
        s.push_str(&format!("{},{},{}\n", sig.order, sig.nus_field(), fam));
    }
    s
}

/// Aligned text table of the given signatures.
pub fn signatures_table(sigs: &[BranchSignature]) -> String {
    let mut s = format!("{:>5}  {:<16}  {}\n", "order", "signature", "family");
    for sig in sigs {
        let fam = sig.family().map_or("unknown".to_string(), |f| f.to_string());
        s.push_str(&format!("{:>5}  {:<16}  {}\n", sig.order, sig.to_string(), fam));
    }
    s
}
