use std::fmt;

use crate::poly::Var;

/// Canonically ordered wedge of coordinate differentials, stored as a 4-bit
/// mask over `(x, y, z, t)`: bit `i` is set iff `dx^i` is a factor.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisForm(u8);

impl BasisForm {
    /// The constant 0-form `1`.
    pub const ONE: BasisForm = BasisForm(0);
    /// `dx∧dy∧dz∧dt`.
    pub const VOLUME: BasisForm = BasisForm(0b1111);

    pub fn from_mask(mask: u8) -> Option<Self> {
        (mask < 16).then_some(BasisForm(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn differential(v: Var) -> Self {
        BasisForm(1 << v.index())
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    /// Factors in canonical (ascending) order.
    pub fn vars(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn all() -> impl Iterator<Item = BasisForm> {
        (0..16u8).map(BasisForm)
    }

    pub fn of_degree(k: usize) -> Vec<BasisForm> {
        Self::all().filter(|b| b.degree() == k).collect()
    }

    pub fn complement(self) -> Self {
        BasisForm(!self.0 & 0b1111)
    }

    pub fn without(self, v: Var) -> Self {
        BasisForm(self.0 & !(1 << v.index()))
    }

    /// Normalizes an arbitrary ordered product `dv₁∧dv₂∧…` to canonical order.
    /// Returns `None` when a differential repeats (the product vanishes).
    pub fn from_vars(vars: &[Var]) -> Option<(i8, BasisForm)> {
        let mut acc = (1i8, BasisForm::ONE);
        for v in vars {
            let (s, b) = acc.1.wedge(BasisForm::differential(*v))?;
            acc = (acc.0 * s, b);
        }
        Some(acc)
    }

    /// `self ∧ other = sign · result`, or `None` if they share a factor.
    pub fn wedge(self, other: BasisForm) -> Option<(i8, BasisForm)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each factor of `other` moves left past the larger factors of `self`
        let inversions: u32 = other
            .vars()
            .map(|v| {
                let above = self.0 >> (v.index() + 1);
                above.count_ones()
            })
            .sum();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, BasisForm(self.0 | other.0)))
    }

    /// Sign of `ω ∧ ω^c` relative to the volume form, i.e. the Euclidean
    /// Hodge star maps `ω` to `hodge_sign · ω^c`.
    pub fn hodge_sign(self) -> i8 {
        self.wedge(self.complement())
            .map(|(s, _)| s)
            .expect("a basis form and its complement are disjoint")
    }
}

impl fmt::Display for BasisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.vars().map(|v| format!("d{v}")).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

impl fmt::Debug for BasisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Var::*;

    /// Parity of the permutation that sorts `vars`, counted by bubble sort.
    fn bubble_parity(vars: &[Var]) -> i8 {
        let mut v: Vec<usize> = vars.iter().map(|x| x.index()).collect();
        let mut swaps = 0;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn wedge_sign_matches_bubble_sort() {
        for a in BasisForm::all() {
            for b in BasisForm::all() {
                let mut concat: Vec<Var> = a.vars().collect();
                concat.extend(b.vars());
                match a.wedge(b) {
                    None => assert!(a.mask() & b.mask() != 0),
                    Some((s, c)) => {
                        assert_eq!(s, bubble_parity(&concat), "{a} ∧ {b}");
                        assert_eq!(c.mask(), a.mask() | b.mask());
                    }
                }
            }
        }
    }

    #[test]
    fn degrees_and_counts() {
        let counts: Vec<usize> = (0..=4).map(|k| BasisForm::of_degree(k).len()).collect();
        assert_eq!(counts, vec![1, 4, 6, 4, 1]);
        assert_eq!(BasisForm::VOLUME.degree(), 4);
    }

    #[test]
    fn normalization_of_non_canonical_products() {
        // dz∧dx = -dx∧dz
        let (s, b) = BasisForm::from_vars(&[Z, X]).unwrap();
        assert_eq!((s, b.to_string().as_str()), (-1, "dx∧dz"));
        // dz∧dx∧dt = -dx∧dz∧dt
        let (s, _) = BasisForm::from_vars(&[Z, X, T]).unwrap();
        assert_eq!(s, -1);
        assert!(BasisForm::from_vars(&[X, Y, X]).is_none());
    }

    #[test]
    fn hodge_signs() {
        assert_eq!(BasisForm::differential(T).hodge_sign(), -1);
        assert_eq!(BasisForm::differential(X).hodge_sign(), 1);
        assert_eq!(BasisForm::ONE.hodge_sign(), 1);
        assert_eq!(BasisForm::VOLUME.hodge_sign(), 1);
    }
}
