use super::gf2::Echelon;
use super::operator::PauliOperator;
use crate::error::{Error, Result};

/// Abelian group generated by independent, commuting, Hermitian Pauli operators that
/// does not contain `-I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerGroup {
    pub fn new(n_qubits: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for g in &generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    left: n_qubits,
                    right: g.n_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidGroup(format!("generator {g} is not Hermitian")));
            }
        }
        for (a, g) in generators.iter().enumerate() {
            for h in &generators[a + 1..] {
                if !g.commutes(h)? {
                    return Err(Error::InvalidGroup(format!("{g} and {h} anticommute")));
                }
            }
        }
        let mut echelon = Echelon::new(2 * n_qubits, generators.len());
        for g in &generators {
            if !echelon.insert(&g.symplectic_vector()) {
                return Err(Error::InvalidGroup(format!("generator {g} is dependent")));
            }
        }
        Ok(StabilizerGroup {
            n_qubits,
            generators,
        })
    }

    pub fn trivial(n_qubits: usize) -> Self {
        StabilizerGroup {
            n_qubits,
            generators: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        1usize << self.generators.len()
    }

    /// Product of the generators selected by the bits of `mask`, in generator order.
    pub fn element(&self, mask: usize) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n_qubits);
        for (i, g) in self.generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.multiply(g).expect("same dimension");
            }
        }
        acc
    }

    /// All `2^k` group elements, indexed by generator mask.
    pub fn elements(&self) -> Vec<PauliOperator> {
        (0..self.order()).map(|m| self.element(m)).collect()
    }

    /// Exact (sign-sensitive) membership.
    pub fn contains(&self, op: &PauliOperator) -> Result<bool> {
        Ok(in_span(self, &[], op)?.is_some_and(|c| c.is_exact()))
    }

    /// Membership ignoring the global sign.
    pub fn contains_up_to_sign(&self, op: &PauliOperator) -> Result<bool> {
        Ok(in_span(self, &[], op)?.is_some())
    }

    pub fn commutes_with(&self, op: &PauliOperator) -> Result<bool> {
        for g in &self.generators {
            if !g.commutes(op)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Witness that a target is a product of group generators and extra operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCertificate {
    /// Indices into the group's generator list.
    pub generators: Vec<usize>,
    /// Indices into the `extra` list.
    pub extras: Vec<usize>,
    /// Generators then extras multiplied in index order.
    pub product: PauliOperator,
    /// `product == i^relative_phase · target`.
    pub relative_phase: u8,
}

impl SpanCertificate {
    pub fn is_exact(&self) -> bool {
        self.relative_phase == 0
    }
}

/// Decides whether `target` is, up to a phase, a product of elements of `group` and a
/// subset of `extra`. The returned certificate carries the exact phase relation.
pub fn in_span(
    group: &StabilizerGroup,
    extra: &[PauliOperator],
    target: &PauliOperator,
) -> Result<Option<SpanCertificate>> {
    let n = group.n_qubits();
    for op in extra.iter().chain(std::iter::once(target)) {
        if op.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: op.n_qubits(),
            });
        }
    }
    let k = group.generators().len();
    let mut echelon = Echelon::new(2 * n, k + extra.len());
    for op in group.generators().iter().chain(extra) {
        echelon.insert(&op.symplectic_vector());
    }
    let Some(combo) = echelon.solve(&target.symplectic_vector()) else {
        return Ok(None);
    };
    let mut product = PauliOperator::identity(n);
    let mut generators = Vec::new();
    let mut extras = Vec::new();
    for &i in &combo {
        if i < k {
            generators.push(i);
            product = product.multiply(&group.generators()[i])?;
        } else {
            extras.push(i - k);
        }
    }
    for &j in &extras {
        product = product.multiply(&extra[j])?;
    }
    debug_assert!(product.eq_up_to_phase(target));
    let relative_phase = (product.phase() + 4 - target.phase()) % 4;
    Ok(Some(SpanCertificate {
        generators,
        extras,
        product,
        relative_phase,
    }))
}

/// All products `rep · s` for `s` in the group, with Hermitian phases, sorted by weight,
/// then X bits, then Z bits.
pub fn coset_elements(group: &StabilizerGroup, rep: &PauliOperator) -> Result<Vec<PauliOperator>> {
    if rep.n_qubits() != group.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: group.n_qubits(),
            right: rep.n_qubits(),
        });
    }
    for g in group.generators() {
        if !g.commutes(rep)? {
            return Err(Error::NotInNormalizer {
                operator: rep.to_string(),
                generator: g.to_string(),
            });
        }
    }
    let mut out = group
        .elements()
        .iter()
        .map(|s| rep.multiply(s).map(|p| p.canonical()))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.listing_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn group(gens: &[&str]) -> StabilizerGroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s)).collect();
        StabilizerGroup::new(gens[0].n_qubits(), gens).unwrap()
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(StabilizerGroup::new(2, vec![p("XI"), p("ZI")]).is_err());
        assert!(StabilizerGroup::new(2, vec![p("XX"), p("ZZ"), p("YY")]).is_err());
        assert!(StabilizerGroup::new(2, vec![p("+iXX")]).is_err());
        assert!(StabilizerGroup::new(3, vec![p("XX")]).is_err());
    }

    #[test]
    fn generator_is_in_span() {
        let g = group(&["XX", "ZZ"]);
        let cert = in_span(&g, &[], &p("XX")).unwrap().unwrap();
        assert_eq!(cert.generators, vec![0]);
        assert!(cert.is_exact());
        let yy = in_span(&g, &[], &p("YY")).unwrap().unwrap();
        // XX·ZZ = (XZ)(XZ) = (-iY)(-iY) = -YY
        assert_eq!(yy.relative_phase, 2);
        assert!(g.contains(&p("-YY")).unwrap());
        assert!(!g.contains(&p("YY")).unwrap());
    }

    #[test]
    fn extra_operators_join_the_span() {
        let g = group(&["XX"]);
        assert!(in_span(&g, &[], &p("ZZ")).unwrap().is_none());
        let c = in_span(&g, &[p("ZI"), p("IZ")], &p("ZZ")).unwrap().unwrap();
        assert_eq!(c.extras, vec![0, 1]);
        assert!(c.generators.is_empty());
    }

    #[test]
    fn coset_requires_commuting_rep() {
        let g = group(&["XX"]);
        assert!(matches!(
            coset_elements(&g, &p("ZI")),
            Err(Error::NotInNormalizer { .. })
        ));
        let c = coset_elements(&g, &p("ZZ")).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].weight(), 2);
    }
}
