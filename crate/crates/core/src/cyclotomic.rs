//! 2-cyclotomic cosets modulo n, coset leaders, and the two-coset defining
//! sets that drive the code construction.

use crate::error::{Error, Result};

/// The orbit of s under doubling mod n, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    leader: u64,
    elements: Vec<u64>,
}

impl CyclotomicCoset {
    /// Smallest member.
    pub fn leader(&self) -> u64 {
        self.leader
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a coset always contains its seed
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// The 2-cyclotomic coset of s modulo n.
pub fn coset(s: u64, n: u64) -> CyclotomicCoset {
    assert!(n > 0 && s < n, "coset requires 0 <= s < n");
    let mut elements = Vec::new();
    let mut x = s;
    loop {
        elements.push(x);
        x = (x * 2) % n;
        if x == s {
            break;
        }
    }
    elements.sort_unstable();
    CyclotomicCoset {
        leader: elements[0],
        elements,
    }
}

/// All coset leaders modulo n, ascending. The cosets of the leaders
/// partition {0, ..., n-1}. Rejects even n.
pub fn coset_leaders(n: u64) -> Result<Vec<u64>> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    let mut visited = vec![false; n as usize];
    let mut leaders = Vec::new();
    for s in 0..n {
        if visited[s as usize] {
            continue;
        }
        leaders.push(s);
        let mut x = s;
        loop {
            visited[x as usize] = true;
            x = (x * 2) % n;
            if x == s {
                break;
            }
        }
    }
    Ok(leaders)
}

/// T = C_1 ∪ C_{1+2^e} modulo n = 2^m - 1: the exponents of the generator
/// polynomial's roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    m: u32,
    e: u32,
    cosets: [CyclotomicCoset; 2],
    exponents: Vec<u64>,
}

impl DefiningSet {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// C_1 followed by C_{1+2^e}.
    pub fn cosets(&self) -> &[CyclotomicCoset; 2] {
        &self.cosets
    }

    /// The flattened sorted union T.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// Builds the defining set for (m, e) with 1 <= e <= floor(m/2).
pub fn defining_set(m: u32, e: u32) -> Result<DefiningSet> {
    if !(2..=16).contains(&m) {
        return Err(Error::DegreeOutOfRange { m });
    }
    if e == 0 || 2 * e > m {
        return Err(Error::ExponentOutOfRange { m, e });
    }
    let n = (1u64 << m) - 1;
    let c1 = coset(1, n);
    let cu = coset((1 + (1u64 << e)) % n, n);
    if c1.contains(cu.leader()) {
        return Err(Error::Inconsistency(format!(
            "cosets C_1 and C_{} coincide for m={m}",
            1 + (1u64 << e)
        )));
    }
    let mut exponents: Vec<u64> = c1.elements().iter().chain(cu.elements()).copied().collect();
    exponents.sort_unstable();
    Ok(DefiningSet {
        m,
        e,
        cosets: [c1, cu],
        exponents,
    })
}
