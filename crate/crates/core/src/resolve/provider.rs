//! Subcategory providers: membership plus special preenvelopes/precovers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algcore::{
    cokernel_of, direct_sum, indec_injectives, indec_projectives, injective_envelope, is_injective,
    is_projective, kernel_of, projective_cover, Algebra, Module, Morphism,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProviderKind {
    Inj,
    Prj,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Yes,
    No,
    Undetermined,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }
}

/// `0 → left →i mid →p right → 0`
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: Module,
    pub mid: Module,
    pub right: Module,
    pub i: Morphism,
    pub p: Morphism,
}

impl ShortExact {
    /// Validates exactness.
    pub fn new(i: Morphism, p: Morphism) -> Result<ShortExact> {
        if i.target != p.source {
            return Err(Error::Precondition("ses: maps are not composable".into()));
        }
        if !i.is_mono() {
            return Err(Error::Precondition("ses: left map is not injective".into()));
        }
        if !p.is_epi() {
            return Err(Error::Precondition("ses: right map is not surjective".into()));
        }
        if !p.compose(&i).is_zero() || i.source.dim() + p.target.dim() != i.target.dim() {
            return Err(Error::Precondition("ses: not exact in the middle".into()));
        }
        Ok(ShortExact::raw(i, p))
    }

    pub(crate) fn raw(i: Morphism, p: Morphism) -> ShortExact {
        ShortExact {
            left: i.source.clone(),
            mid: i.target.clone(),
            right: p.target.clone(),
            i,
            p,
        }
    }

    /// `0 → M → E → coker → 0` from a mono.
    pub fn from_mono(i: Morphism) -> ShortExact {
        debug_assert!(i.is_mono());
        let (_, p) = cokernel_of(&i);
        ShortExact::raw(i, p)
    }

    /// `0 → ker → P → M → 0` from an epi.
    pub fn from_epi(p: Morphism) -> ShortExact {
        debug_assert!(p.is_epi());
        let (_, i) = kernel_of(&p);
        ShortExact::raw(i, p)
    }

    /// `0 → A → A ⊕ B → B → 0`
    pub fn split(a: &Module, b: &Module) -> Result<ShortExact> {
        let s = direct_sum(a.algebra(), &[a.clone(), b.clone()])?;
        Ok(ShortExact::raw(s.injections[0].clone(), s.projections[1].clone()))
    }
}

/// Contract for a subcategory `C` (preenveloping) or `D` (precovering).
pub trait SubcategoryProvider: Send + Sync {
    fn kind(&self) -> ProviderKind;
    fn name(&self) -> String;
    fn algebra(&self) -> &Arc<Algebra>;
    fn membership(&self, m: &Module) -> Membership;
    fn is_preenveloping(&self) -> bool;
    fn is_precovering(&self) -> bool;
    /// `0 → M → X → C' → 0` with `X` in the subcategory.
    fn preenvelope(&self, m: &Module) -> Result<ShortExact>;
    /// `0 → K → X → M → 0` with `X` in the subcategory.
    fn precover(&self, m: &Module) -> Result<ShortExact>;
    fn test_objects(&self) -> Vec<Module>;
    /// Contains the injectives and is closed under cokernels of monos.
    fn is_coresolving(&self) -> bool {
        false
    }
    /// Contains the projectives and is closed under kernels of epis.
    fn is_resolving(&self) -> bool {
        false
    }
}

impl fmt::Debug for dyn SubcategoryProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Provider({})", self.name())
    }
}

pub type Provider = Arc<dyn SubcategoryProvider>;

type Memo = Mutex<HashMap<Vec<u32>, ShortExact>>;

fn memoized(memo: &Memo, m: &Module, f: impl FnOnce() -> Result<ShortExact>) -> Result<ShortExact> {
    if let Some(s) = memo.lock().expect("memo poisoned").get(&m.key()) {
        return Ok(s.clone());
    }
    let s = f()?;
    memo.lock().expect("memo poisoned").insert(m.key(), s.clone());
    Ok(s)
}

fn check_alg(alg: &Arc<Algebra>, m: &Module) -> Result<()> {
    if crate::algcore::module::same_algebra(alg, m.algebra()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Injective modules, with minimal preenvelopes.
pub struct InjProvider {
    alg: Arc<Algebra>,
    memo: Memo,
}

impl SubcategoryProvider for InjProvider {
    fn kind(&self) -> ProviderKind {
        ProviderKind::Inj
    }
    fn name(&self) -> String {
        "Inj".into()
    }
    fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    fn membership(&self, m: &Module) -> Membership {
        is_injective(m).map_or(Membership::Undetermined, Membership::from)
    }
    fn is_preenveloping(&self) -> bool {
        true
    }
    fn is_precovering(&self) -> bool {
        false
    }
    fn preenvelope(&self, m: &Module) -> Result<ShortExact> {
        check_alg(&self.alg, m)?;
        memoized(&self.memo, m, || Ok(ShortExact::from_mono(injective_envelope(m)?)))
    }
    fn precover(&self, _m: &Module) -> Result<ShortExact> {
        Err(Error::Unsupported("Inj is not used as a precovering class".into()))
    }
    fn test_objects(&self) -> Vec<Module> {
        indec_injectives(&self.alg).unwrap_or_default()
    }
    fn is_coresolving(&self) -> bool {
        true
    }
}

/// Projective modules, with minimal precovers.
pub struct PrjProvider {
    alg: Arc<Algebra>,
    memo: Memo,
}

impl SubcategoryProvider for PrjProvider {
    fn kind(&self) -> ProviderKind {
        ProviderKind::Prj
    }
    fn name(&self) -> String {
        "Prj".into()
    }
    fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    fn membership(&self, m: &Module) -> Membership {
        is_projective(m).map_or(Membership::Undetermined, Membership::from)
    }
    fn is_preenveloping(&self) -> bool {
        false
    }
    fn is_precovering(&self) -> bool {
        true
    }
    fn preenvelope(&self, _m: &Module) -> Result<ShortExact> {
        Err(Error::Unsupported("Prj is not used as a preenveloping class".into()))
    }
    fn precover(&self, m: &Module) -> Result<ShortExact> {
        check_alg(&self.alg, m)?;
        memoized(&self.memo, m, || Ok(ShortExact::from_epi(projective_cover(m)?)))
    }
    fn test_objects(&self) -> Vec<Module> {
        indec_projectives(&self.alg).unwrap_or_default()
    }
    fn is_resolving(&self) -> bool {
        true
    }
}

pub fn provider(kind: ProviderKind, alg: &Arc<Algebra>) -> Result<Provider> {
    alg.structure()?;
    match kind {
        ProviderKind::Inj => Ok(Arc::new(InjProvider {
            alg: alg.clone(),
            memo: Mutex::default(),
        })),
        ProviderKind::Prj => Ok(Arc::new(PrjProvider {
            alg: alg.clone(),
            memo: Mutex::default(),
        })),
        ProviderKind::Custom => Err(Error::Precondition(
            "custom providers are built with CustomProvider::new".into(),
        )),
    }
}

/// Injectives again, but every preenvelope (precover) is padded by an extra
/// injective (projective) summand. Used to test independence of choices.
pub struct PaddedProvider {
    inner: Provider,
    extra: Module,
}

impl PaddedProvider {
    pub fn new(inner: Provider, extra: Module) -> Result<PaddedProvider> {
        if inner.membership(&extra) != Membership::Yes {
            return Err(Error::Precondition("padding summand is not in the subcategory".into()));
        }
        Ok(PaddedProvider { inner, extra })
    }
}

impl SubcategoryProvider for PaddedProvider {
    fn kind(&self) -> ProviderKind {
        ProviderKind::Custom
    }
    fn name(&self) -> String {
        format!("{}+pad", self.inner.name())
    }
    fn algebra(&self) -> &Arc<Algebra> {
        self.inner.algebra()
    }
    fn membership(&self, m: &Module) -> Membership {
        self.inner.membership(m)
    }
    fn is_preenveloping(&self) -> bool {
        self.inner.is_preenveloping()
    }
    fn is_precovering(&self) -> bool {
        self.inner.is_precovering()
    }
    fn preenvelope(&self, m: &Module) -> Result<ShortExact> {
        let s = self.inner.preenvelope(m)?;
        let sum = direct_sum(self.algebra(), &[s.mid.clone(), self.extra.clone()])?;
        let i = sum.injections[0].compose(&s.i);
        Ok(ShortExact::from_mono(i))
    }
    fn precover(&self, m: &Module) -> Result<ShortExact> {
        let s = self.inner.precover(m)?;
        let sum = direct_sum(self.algebra(), &[s.mid.clone(), self.extra.clone()])?;
        let p = s.p.compose(&sum.projections[0]);
        Ok(ShortExact::from_epi(p))
    }
    fn test_objects(&self) -> Vec<Module> {
        self.inner.test_objects()
    }
    fn is_coresolving(&self) -> bool {
        self.inner.is_coresolving()
    }
    fn is_resolving(&self) -> bool {
        self.inner.is_resolving()
    }
}

type MemberFn = dyn Fn(&Module) -> Membership + Send + Sync;
type SesFn = dyn Fn(&Module) -> Result<ShortExact> + Send + Sync;

/// A user-supplied subcategory. Every approximation is certified before use:
/// the middle term must be a member and the outer term must have vanishing
/// `Ext¹` against the test objects.
pub struct CustomProvider {
    alg: Arc<Algebra>,
    name: String,
    membership: Box<MemberFn>,
    preenvelope: Option<Box<SesFn>>,
    precover: Option<Box<SesFn>>,
    tests: Vec<Module>,
    coresolving: bool,
    resolving: bool,
}

impl CustomProvider {
    pub fn new(
        alg: &Arc<Algebra>,
        name: &str,
        membership: Box<MemberFn>,
        preenvelope: Option<Box<SesFn>>,
        precover: Option<Box<SesFn>>,
        tests: Vec<Module>,
    ) -> CustomProvider {
        CustomProvider {
            alg: alg.clone(),
            name: name.into(),
            membership,
            preenvelope,
            precover,
            tests,
            coresolving: false,
            resolving: false,
        }
    }

    /// Declare closure properties the engine cannot check.
    pub fn declare(mut self, coresolving: bool, resolving: bool) -> CustomProvider {
        self.coresolving = coresolving;
        self.resolving = resolving;
        self
    }

    fn certify(&self, s: &ShortExact, outer: &Module, left_side: bool) -> Result<()> {
        if (self.membership)(&s.mid) != Membership::Yes {
            return Err(Error::Precondition(format!(
                "custom provider {}: middle term is not certified as a member",
                self.name
            )));
        }
        for (t, obj) in self.tests.iter().enumerate() {
            let e = if left_side {
                super::ext::ext(outer, obj, 1)?
            } else {
                super::ext::ext(obj, outer, 1)?
            };
            if e.dim() != 0 {
                return Err(Error::Precondition(format!(
                    "custom provider {}: Ext^1 does not vanish against test object #{t}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

impl SubcategoryProvider for CustomProvider {
    fn kind(&self) -> ProviderKind {
        ProviderKind::Custom
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    fn membership(&self, m: &Module) -> Membership {
        (self.membership)(m)
    }
    fn is_preenveloping(&self) -> bool {
        self.preenvelope.is_some()
    }
    fn is_precovering(&self) -> bool {
        self.precover.is_some()
    }
    fn preenvelope(&self, m: &Module) -> Result<ShortExact> {
        let f = self
            .preenvelope
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} is not preenveloping", self.name)))?;
        let s = f(m)?;
        if s.left != *m {
            return Err(Error::Precondition("custom preenvelope has the wrong left term".into()));
        }
        self.certify(&s, &s.right, true)?;
        Ok(s)
    }
    fn precover(&self, m: &Module) -> Result<ShortExact> {
        let f = self
            .precover
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} is not precovering", self.name)))?;
        let s = f(m)?;
        if s.right != *m {
            return Err(Error::Precondition("custom precover has the wrong right term".into()));
        }
        self.certify(&s, &s.left, false)?;
        Ok(s)
    }
    fn test_objects(&self) -> Vec<Module> {
        self.tests.clone()
    }
    fn is_coresolving(&self) -> bool {
        self.coresolving
    }
    fn is_resolving(&self) -> bool {
        self.resolving
    }
}
