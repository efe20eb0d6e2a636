use std::fmt;

/// Nonnegative rational kept exactly as computed, with a reduced view.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio { num, den }
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Ratio { num: self.num / g, den: self.den / g }
    }

    /// Value equality (cross multiplication).
    pub fn same_value(self, other: Ratio) -> bool {
        self.num * other.den == other.num * self.den
    }

    pub fn gt(self, other: Ratio) -> bool {
        self.num * other.den > other.num * self.den
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Different exponent, genus and group order of a candidate big action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub p: u32,
    pub n: usize,
    pub v: usize,
    pub degrees: Vec<usize>,
    pub different: u128,
    pub genus: u128,
    pub order: u128,
    /// `|G| / g`, unreduced; `None` when the genus is zero.
    pub ratio: Option<Ratio>,
    pub is_big_action: bool,
    pub hurwitz_ok: bool,
}

/// `d = (p-1) Σ p^{i-1}(m_i+1)`, `g = (p-1)/2 · Σ p^{i-1}(m_i-1)`, `|G| = p^{n+v}`.
pub fn ramification(p: u32, degrees: &[usize], v: usize) -> RamificationReport {
    let pp = p as u128;
    let n = degrees.len();
    let mut d = 0u128;
    let mut twice_g = 0u128;
    for (i, &m) in degrees.iter().enumerate() {
        let w = pp.pow(i as u32);
        d += w * (m as u128 + 1);
        twice_g += w * (m as u128).saturating_sub(1);
    }
    d *= pp - 1;
    twice_g *= pp - 1;
    let genus = twice_g / 2;
    let order = pp.pow((n + v) as u32);
    // 2(g - 1) = -2 p^n + d
    let hurwitz_ok = twice_g.is_multiple_of(2) && twice_g + 2 * pp.pow(n as u32) == d + 2;
    let ratio = (genus > 0).then(|| Ratio::new(order, genus));
    RamificationReport {
        p,
        n,
        v,
        degrees: degrees.to_vec(),
        different: d,
        genus,
        order,
        ratio,
        is_big_action: order * (pp - 1) > 2 * pp * genus,
        hurwitz_ok,
    }
}

/// `2p/(p-1) · p^n (p-1)^2 / (n p^n (p-1) + 1 - p^n)`, the ratio forced by maximal jumps.
pub fn max_jump_ratio(p: u32, n: usize) -> Ratio {
    let pp = p as u128;
    let pn = pp.pow(n as u32);
    let num = 2 * pp * pn * (pp - 1) * (pp - 1);
    let den = (pp - 1) * (n as u128 * pn * (pp - 1) + 1 - pn);
    Ratio::new(num, den)
}
