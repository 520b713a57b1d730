use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::picore::{GroupKind, MarkedGroup, Morphism};
use crate::words::Word;
use crate::{Error, Result};

/// An index-parameterized sequence of morphisms between fixed marked groups.
pub trait MorphismFamily: fmt::Debug + Send + Sync {
    fn source(&self) -> &MarkedGroup;

    fn target(&self) -> &MarkedGroup;

    /// Smallest valid index.
    fn first_index(&self) -> usize {
        1
    }

    /// The member at index `n`.
    fn member(&self, n: usize) -> Result<Morphism>;

    /// Length of the cyclic core of `f_n(w)`, computed without building the
    /// image when the family allows it.
    fn image_length(&self, n: usize, w: &Word) -> Result<BigInt> {
        let f = self.member(n)?;
        core_length(f.target(), &f.apply(w))
    }

    fn kills(&self, n: usize, w: &Word) -> Result<bool> {
        Ok(self.image_length(n, w)? == BigInt::from(0))
    }
}

/// Cyclic-core length in a free group, `ℓ¹` length in a free abelian one.
pub(crate) fn core_length(g: &MarkedGroup, w: &Word) -> Result<BigInt> {
    match g.kind() {
        GroupKind::Free => Ok(BigInt::from(w.translation_length())),
        GroupKind::FreeAbelian => Ok(w.exponent_sums(g.rank()).iter().map(|e| BigInt::from(e.abs())).sum()),
        GroupKind::Presented => Err(Error::Unsupported("lengths in presented targets".into())),
    }
}

pub(crate) fn check_index(fam: &dyn MorphismFamily, n: usize) -> Result<()> {
    if n < fam.first_index() {
        return Err(Error::input(format!(
            "index {n} precedes the first index {}",
            fam.first_index()
        )));
    }
    Ok(())
}

/// The constant family of identity morphisms.
#[derive(Debug, Clone)]
pub struct IdentityFamily {
    group: MarkedGroup,
}

impl IdentityFamily {
    pub fn new(group: MarkedGroup) -> Self {
        IdentityFamily { group }
    }
}

impl MorphismFamily for IdentityFamily {
    fn source(&self) -> &MarkedGroup {
        &self.group
    }
    fn target(&self) -> &MarkedGroup {
        &self.group
    }
    fn member(&self, _: usize) -> Result<Morphism> {
        Ok(Morphism::identity(self.group.clone()))
    }
}

/// Every member is the same morphism.
#[derive(Debug, Clone)]
pub struct ConstantFamily {
    morphism: Morphism,
}

impl ConstantFamily {
    pub fn new(morphism: Morphism) -> Self {
        ConstantFamily { morphism }
    }
}

impl MorphismFamily for ConstantFamily {
    fn source(&self) -> &MarkedGroup {
        self.morphism.source()
    }
    fn target(&self) -> &MarkedGroup {
        self.morphism.target()
    }
    fn member(&self, _: usize) -> Result<Morphism> {
        Ok(self.morphism.clone())
    }
}

/// `n ↦ inner(index(n))`.
#[derive(Clone)]
pub struct Reindexed {
    inner: Arc<dyn MorphismFamily>,
    index: Arc<dyn Fn(usize) -> usize + Send + Sync>,
    label: String,
}

impl Reindexed {
    pub fn new(
        inner: Arc<dyn MorphismFamily>,
        label: impl Into<String>,
        index: impl Fn(usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        Reindexed {
            inner,
            index: Arc::new(index),
            label: label.into(),
        }
    }

    pub fn index(&self, n: usize) -> usize {
        (self.index)(n)
    }
}

impl fmt::Debug for Reindexed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Reindexed")
            .field("inner", &self.inner)
            .field("index", &self.label)
            .finish()
    }
}

impl MorphismFamily for Reindexed {
    fn source(&self) -> &MarkedGroup {
        self.inner.source()
    }
    fn target(&self) -> &MarkedGroup {
        self.inner.target()
    }
    fn member(&self, n: usize) -> Result<Morphism> {
        self.inner.member(self.index(n))
    }
    fn image_length(&self, n: usize, w: &Word) -> Result<BigInt> {
        self.inner.image_length(self.index(n), w)
    }
}
