//! Structure-theorem oracle for tensor and Tor of finitely generated abelian
//! groups, working on primary decompositions.

use std::collections::BTreeMap;

use coxdim::FgAbelianGroup;
use num_traits::ToPrimitive;

/// A group in primary form: free rank and a multiset of prime powers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Primary {
    pub rank: usize,
    pub powers: BTreeMap<(u64, u32), usize>,
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primary(g: &FgAbelianGroup) -> Primary {
    let mut out = Primary { rank: g.rank(), ..Default::default() };
    for d in g.torsion() {
        for pe in factor(d.to_u64().unwrap()) {
            *out.powers.entry(pe).or_default() += 1;
        }
    }
    out
}

pub fn add(a: &mut Primary, b: &Primary) {
    a.rank += b.rank;
    for (k, v) in &b.powers {
        *a.powers.entry(*k).or_default() += v;
    }
}

/// Structure theorem: Z ⊗ X = X, Z/p^a ⊗ Z/p^b = Z/p^min, coprime primes give 0.
pub fn tensor_oracle(a: &Primary, b: &Primary) -> Primary {
    let mut out = Primary { rank: a.rank * b.rank, ..Default::default() };
    for (&k, &v) in &b.powers {
        *out.powers.entry(k).or_default() += v * a.rank;
    }
    for (&k, &v) in &a.powers {
        *out.powers.entry(k).or_default() += v * b.rank;
    }
    for (&(p, e), &v) in &a.powers {
        for (&(q, f), &w) in &b.powers {
            if p == q {
                *out.powers.entry((p, e.min(f))).or_default() += v * w;
            }
        }
    }
    out.powers.retain(|_, v| *v > 0);
    out
}

pub fn tor_oracle(a: &Primary, b: &Primary) -> Primary {
    let mut out = Primary::default();
    for (&(p, e), &v) in &a.powers {
        for (&(q, f), &w) in &b.powers {
            if p == q {
                *out.powers.entry((p, e.min(f))).or_default() += v * w;
            }
        }
    }
    out
}

/// Degree n: tensor terms with p + q = n and Tor terms with p + q = n + 1.
pub fn brute_force(a: &[FgAbelianGroup], b: &[FgAbelianGroup]) -> Vec<Primary> {
    let top = a.len() + b.len() - 2;
    (0..=top)
        .map(|n| {
            let mut acc = Primary::default();
            for (p, x) in a.iter().enumerate() {
                for (q, y) in b.iter().enumerate() {
                    if p + q == n {
                        add(&mut acc, &tensor_oracle(&primary(x), &primary(y)));
                    }
                    if p + q == n + 1 {
                        add(&mut acc, &tor_oracle(&primary(x), &primary(y)));
                    }
                }
            }
            acc.powers.retain(|_, v| *v > 0);
            acc
        })
        .collect()
}
