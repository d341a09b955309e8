//! The dual-side count: Frobenius-stable special classes `su` of the dual
//! group, their extended component groups and the sets `M̄`.

use crate::choice::{ChoicePolicy, Chooser};
use crate::error::{Error, Result};
use crate::lattice::TorsionPoint;
use crate::oracle::{AbstractFiniteGroup, ProductGroup};
use crate::points::{self, compose, SmithCheck};
use crate::report::{describe_group, describe_product, unipotent_label, PacketSummary, Pipeline, StratumSummary};
use crate::rootdata::{
    component_group_of_centralizer, dual_datum, CentralizerSubdatum, GroupSpec, RootDatum, WeylGroup,
    DEFAULT_ORDER_BOUND,
};
use crate::springer::{special_classes, SpecialClassRecord};

#[derive(Clone, Debug)]
pub struct SemisimpleClass {
    /// Lexicographically least point of the orbit.
    pub rep: TorsionPoint,
    /// The point all further data is computed at; equal to `rep` under the
    /// canonical policy.
    pub point: TorsionPoint,
    pub orbit_size: usize,
    /// `w` with `w F(point) = point` and `wσ(Φ_s⁺) = Φ_s⁺`, as a Weyl index.
    pub witness: usize,
    /// Pseudo-Levi of the dual group at `point`.
    pub pseudo_levi: CentralizerSubdatum,
    /// `{w : w s = s, w Φ_s⁺ = Φ_s⁺}` as Weyl indices.
    pub pi0: Vec<usize>,
}

impl SemisimpleClass {
    pub fn label(&self) -> String {
        self.rep.label()
    }
}

/// A Frobenius-stable `π₀`-orbit `C` of special classes of the pseudo-Levi.
#[derive(Clone, Debug)]
pub struct SpecialPair {
    /// Per component of the pseudo-Levi, an index into its special classes.
    pub tuple: Vec<usize>,
    pub classes: Vec<&'static SpecialClassRecord>,
    pub orbit: Vec<Vec<usize>>,
    /// `w'` in `π₀ · witness` with `w'σ` fixing `tuple`.
    pub twist_witness: usize,
    /// `Stab_{π₀}(tuple)`, sorted.
    pub stabilizer: Vec<usize>,
}

impl SpecialPair {
    pub fn unipotent_label(&self) -> String {
        let parts: Vec<_> = self.classes.iter().map(|c| (c.type_label, c.class_label.as_str())).collect();
        unipotent_label(&parts)
    }
}

/// `Ā_{H°}(u) ⋊ Stab(C)` with its Frobenius automorphism.
#[derive(Clone, Debug)]
pub struct ExtendedComponentGroup {
    pub abar: AbstractFiniteGroup,
    pub connected_part: ProductGroup,
    /// Weyl indices of the `Stab(C)` factor, in subgroup order.
    pub stabilizer: Vec<usize>,
    pub f_action: Vec<usize>,
    pub n: usize,
    pub description: String,
}

impl ExtendedComponentGroup {
    /// Whether `f_action` is the identity on `Ā_{H°}(u) × {1}`.
    pub fn restriction_is_trivial(&self) -> bool {
        let h = self.stabilizer.len();
        (0..self.connected_part.group().order()).all(|a| self.f_action[a * h] == a * h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MbarElement {
    /// `x = (a, F)` stored as `a`.
    pub x: usize,
    pub x_class_size: usize,
    pub centralizer: Vec<usize>,
    pub irr_count: usize,
}

impl MbarElement {
    pub fn label(&self) -> String {
        format!("{}:{}", self.x_class_size, self.centralizer.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    WD,
    SL2,
}

#[derive(Clone, Debug)]
pub struct FiniteLParameter {
    pub ss: SemisimpleClass,
    pub special_class: SpecialPair,
    pub frob: MbarElement,
    pub packet_group: AbstractFiniteGroup,
    pub normal_form: NormalForm,
}

/// Switches between the Weil–Deligne and `SL₂` presentations. With `q^{1/2}`
/// fixed the two presentations carry the same combinatorial data, so only
/// the tag changes.
pub fn sl2_wd_convert(p: &FiniteLParameter) -> FiniteLParameter {
    let mut out = p.clone();
    out.normal_form = match p.normal_form {
        NormalForm::WD => NormalForm::SL2,
        NormalForm::SL2 => NormalForm::WD,
    };
    out
}

/// Data shared by every step for one group.
pub struct SpectralContext<'a> {
    g: &'a GroupSpec,
    dual: RootDatum,
    weyl: WeylGroup,
    weyl_group: AbstractFiniteGroup,
    sigma_perm: Vec<usize>,
    pub smith_checks: Vec<SmithCheck>,
    orbits: Vec<points::PointOrbit>,
}

impl<'a> SpectralContext<'a> {
    pub fn new(g: &'a GroupSpec) -> Result<SpectralContext<'a>> {
        if !g.is_connected() {
            return Err(Error::DisconnectedSpectral);
        }
        let weyl = g.datum().weyl_group(&[], DEFAULT_ORDER_BOUND)?;
        let (pts, smith_checks) = points::stable_points(g, &weyl)?;
        let orbits = points::orbits(&weyl, &pts, true);
        let weyl_group = weyl_as_group(&weyl)?;
        Ok(SpectralContext {
            g,
            dual: dual_datum(g.datum()),
            sigma_perm: points::sigma_root_permutation(g)?,
            weyl,
            weyl_group,
            smith_checks,
            orbits,
        })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    fn wsigma_perm(&self, w: usize) -> Vec<usize> {
        compose(&self.sigma_perm, self.weyl.root_permutation(w))
    }

    pub fn ss_classes(&self, chooser: &mut Chooser) -> Result<Vec<SemisimpleClass>> {
        let frob = points::frobenius_matrix(self.g);
        let weyl_dual = self.dual.weyl_group(&[], DEFAULT_ORDER_BOUND)?;
        let mut out = Vec::new();
        for orbit in &self.orbits {
            let s = chooser.pick(&orbit.members);
            if gcd_with(s.order(), self.g.p() as i64) != 1 {
                return Err(Error::invariant(format!("{s:?} has order divisible by p")));
            }
            let pseudo_levi = crate::rootdata::centralizer_subdatum(&self.dual, &s)?;
            if pseudo_levi.root_map != points::integral_roots(self.g, &s) {
                return Err(Error::invariant("pseudo-Levi roots disagree with the integrality test"));
            }
            // π₀ computed on the dual datum, where s lives in Y; W acts there
            // through y-matrices, which are the x-matrices of W(G)
            let pi0 = component_group_of_centralizer(&self.dual, &weyl_dual, &s)?
                .into_iter()
                .map(|k| points::lookup(&self.weyl, weyl_dual.elements()[k].y()))
                .collect::<Result<Vec<_>>>()?;
            let fs = s.apply(&frob);
            let sub = &pseudo_levi.subsystem;
            let witnesses: Vec<usize> = (0..self.weyl.order())
                .filter(|&w| fs.apply(self.weyl.elements()[w].x()) == s)
                .filter(|&w| sub.preserves_positive(&self.dual, &self.wsigma_perm(w)))
                .collect();
            if witnesses.is_empty() {
                return Err(Error::invariant(format!("{s:?} is not Frobenius-stable")));
            }
            if witnesses.len() != pi0.len() {
                return Err(Error::invariant("distinguished witnesses do not form a π₀-coset"));
            }
            out.push(SemisimpleClass {
                rep: orbit.rep.clone(),
                point: s,
                orbit_size: orbit.members.len(),
                witness: chooser.pick(&witnesses),
                pseudo_levi,
                pi0,
            });
        }
        Ok(out)
    }

    fn component_perm(&self, c: &SemisimpleClass, root_perm: &[usize]) -> Result<Vec<usize>> {
        c.pseudo_levi
            .subsystem
            .component_permutation(root_perm)
            .ok_or_else(|| Error::invariant("element does not preserve the pseudo-Levi"))
    }

    fn act(perm: &[usize], tuple: &[usize]) -> Vec<usize> {
        let mut out = vec![0; tuple.len()];
        for (j, &t) in tuple.iter().enumerate() {
            out[perm[j]] = t;
        }
        out
    }

    pub fn special_pairs(&self, c: &SemisimpleClass, chooser: &mut Chooser) -> Result<Vec<SpecialPair>> {
        let comps = &c.pseudo_levi.subsystem.components;
        let tables: Vec<&'static [SpecialClassRecord]> =
            comps.iter().map(|k| special_classes(k.kind)).collect::<Result<_>>()?;
        let pi0_perms: Vec<Vec<usize>> =
            c.pi0.iter().map(|&a| self.component_perm(c, self.weyl.root_permutation(a))).collect::<Result<_>>()?;
        let f_perm = self.component_perm(c, &self.wsigma_perm(c.witness))?;
        // all tuples, mixed radix
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for t in &tables {
            tuples =
                tuples.into_iter().flat_map(|p| (0..t.len()).map(move |k| [p.clone(), vec![k]].concat())).collect();
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for t in &tuples {
            if seen.contains(t) {
                continue;
            }
            let orbit: std::collections::BTreeSet<Vec<usize>> = pi0_perms.iter().map(|p| Self::act(p, t)).collect();
            seen.extend(orbit.iter().cloned());
            if !orbit.contains(&Self::act(&f_perm, t)) {
                continue;
            }
            let orbit: Vec<Vec<usize>> = orbit.into_iter().collect();
            let rep = chooser.pick(&orbit);
            let stabilizer: Vec<usize> =
                c.pi0.iter().zip(&pi0_perms).filter(|(_, p)| Self::act(p, &rep) == rep).map(|(&a, _)| a).collect();
            let candidates: Vec<usize> = c
                .pi0
                .iter()
                .map(|&a| self.weyl.mul(a, c.witness))
                .filter(|&w| {
                    self.component_perm(c, &self.wsigma_perm(w)).map(|p| Self::act(&p, &rep) == rep).unwrap_or(false)
                })
                .collect();
            if candidates.is_empty() {
                return Err(Error::invariant("stable orbit without a fixing witness"));
            }
            let classes = rep.iter().zip(&tables).map(|(&k, t)| &t[k]).collect();
            out.push(SpecialPair { tuple: rep, classes, orbit, twist_witness: chooser.pick(&candidates), stabilizer });
        }
        Ok(out)
    }

    pub fn extended_group(
        &self,
        c: &SemisimpleClass,
        pair: &SpecialPair,
        chooser: &mut Chooser,
    ) -> Result<ExtendedComponentGroup> {
        let connected_part = ProductGroup::new(pair.classes.iter().map(|r| r.abar_of_u.clone()).collect());
        let mut stabilizer = pair.stabilizer.clone();
        stabilizer.sort();
        let stab = self.weyl_group.subgroup(&stabilizer)?;
        let action = stabilizer
            .iter()
            .map(|&a| connected_part.plain_permutation(&self.component_perm(c, self.weyl.root_permutation(a))?))
            .collect::<Result<Vec<_>>>()?;
        let abar = AbstractFiniteGroup::semidirect(connected_part.group(), &stab, &action)?;
        let w = pair.twist_witness;
        let f_conn = connected_part.plain_permutation(&self.component_perm(c, &self.wsigma_perm(w))?)?;
        let f_stab = stabilizer
            .iter()
            .map(|&a| {
                let image = points::sigma_conjugate(self.g, &self.weyl, w, a)?;
                stabilizer.binary_search(&image).map_err(|_| Error::invariant("Frobenius does not preserve Stab(C)"))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = stabilizer.len();
        let mut f_action: Vec<usize> = (0..abar.order()).map(|x| f_conn[x / h] * h + f_stab[x % h]).collect();
        if !abar.is_automorphism(&f_action) {
            return Err(Error::NotAutomorphism("Frobenius on the extended component group".into()));
        }
        // a different normalization of the base point changes f by an inner
        // automorphism
        let shift = chooser.index(abar.order());
        if shift != 0 {
            let inner = abar.inner(shift);
            f_action = f_action.iter().map(|&y| inner[y]).collect();
        }
        let n = permutation_order(&f_action);
        let names: Vec<String> = pair.classes.iter().map(|r| describe_group(&r.abar_of_u)).collect();
        let description = format!("{} ⋊ {}", describe_product(&names), describe_group(&stab));
        Ok(ExtendedComponentGroup { abar, connected_part, stabilizer, f_action, n, description })
    }
}

pub fn mbar(e: &ExtendedComponentGroup) -> Result<Vec<MbarElement>> {
    let classes = e.abar.twisted_classes(&e.f_action)?;
    let out: Vec<MbarElement> = classes
        .into_iter()
        .map(|c| MbarElement {
            x: c.rep,
            x_class_size: c.members.len(),
            centralizer: c.centralizer,
            irr_count: c.centralizer_classes,
        })
        .collect();
    let total: usize = out.iter().map(|m| m.x_class_size).sum();
    if total != e.abar.order() || out.iter().any(|m| m.x_class_size * m.centralizer.len() != e.abar.order()) {
        return Err(Error::invariant("twisted classes do not partition the extended group"));
    }
    Ok(out)
}

fn permutation_order(f: &[usize]) -> usize {
    let mut cur: Vec<usize> = f.to_vec();
    let mut n = 1;
    while cur.iter().enumerate().any(|(i, &x)| i != x) {
        cur = cur.iter().map(|&x| f[x]).collect();
        n += 1;
    }
    n
}

fn gcd_with(a: i64, b: i64) -> i64 {
    crate::lattice::gcd(a, b)
}

/// `W` as an abstract group on its element indices.
pub(crate) fn weyl_as_group(weyl: &WeylGroup) -> Result<AbstractFiniteGroup> {
    let n = weyl.order();
    let table = (0..n).map(|a| (0..n).map(|b| weyl.mul(a, b)).collect()).collect();
    AbstractFiniteGroup::new(table, (0..n).map(|a| format!("w{a}")).collect())
}

pub fn enumerate_ss_classes(g: &GroupSpec) -> Result<Vec<SemisimpleClass>> {
    SpectralContext::new(g)?.ss_classes(&mut Chooser::new(ChoicePolicy::Canonical))
}

pub fn special_pairs(g: &GroupSpec, c: &SemisimpleClass) -> Result<Vec<SpecialPair>> {
    SpectralContext::new(g)?.special_pairs(c, &mut Chooser::new(ChoicePolicy::Canonical))
}

pub fn extended_group(g: &GroupSpec, c: &SemisimpleClass, pair: &SpecialPair) -> Result<ExtendedComponentGroup> {
    SpectralContext::new(g)?.extended_group(c, pair, &mut Chooser::new(ChoicePolicy::Canonical))
}

/// One enumerated stratum `(s, C)` with its parameters.
#[derive(Clone, Debug)]
pub struct SpectralStratum {
    pub ss: SemisimpleClass,
    pub pair: SpecialPair,
    pub group: ExtendedComponentGroup,
    pub mbar: Vec<MbarElement>,
}

impl SpectralStratum {
    pub fn count(&self) -> usize {
        self.mbar.iter().map(|m| m.irr_count).sum()
    }

    pub fn summary(&self) -> StratumSummary {
        let mut packets: Vec<PacketSummary> =
            self.mbar.iter().map(|m| PacketSummary { x_class_label: m.label(), packet_size: m.irr_count }).collect();
        packets.sort();
        StratumSummary {
            pipeline: Pipeline::Spectral,
            ss_label: self.ss.label(),
            unipotent_label: self.pair.unipotent_label(),
            beta_label: "-".to_string(),
            abar_description: self.group.description.clone(),
            count: self.count(),
            packets,
        }
    }
}

pub fn strata(g: &GroupSpec, policy: ChoicePolicy) -> Result<Vec<SpectralStratum>> {
    let ctx = SpectralContext::new(g)?;
    let mut chooser = Chooser::new(policy);
    let mut out = Vec::new();
    for ss in ctx.ss_classes(&mut chooser)? {
        for pair in ctx.special_pairs(&ss, &mut chooser)? {
            let group = ctx.extended_group(&ss, &pair, &mut chooser)?;
            let mbar = mbar(&group)?;
            out.push(SpectralStratum { ss: ss.clone(), pair, group, mbar });
        }
    }
    Ok(out)
}

/// One parameter per `(s, C, M̄-orbit)`, in `SL₂` normal form.
pub fn parameters(g: &GroupSpec) -> Result<Vec<FiniteLParameter>> {
    let mut out = Vec::new();
    for st in strata(g, ChoicePolicy::Canonical)? {
        for m in &st.mbar {
            let packet_group = st.group.abar.subgroup(&m.centralizer)?;
            if packet_group.class_count() != m.irr_count {
                return Err(Error::invariant("packet size disagrees with the centralizer"));
            }
            out.push(FiniteLParameter {
                ss: st.ss.clone(),
                special_class: st.pair.clone(),
                frob: m.clone(),
                packet_group,
                normal_form: NormalForm::SL2,
            });
        }
    }
    Ok(out)
}

/// `Σ |M̄|` over all strata.
pub fn total_count(g: &GroupSpec) -> Result<usize> {
    Ok(strata(g, ChoicePolicy::Canonical)?.iter().map(SpectralStratum::count).sum())
}

/// Sorted choice-independent summaries.
pub fn summaries(g: &GroupSpec, policy: ChoicePolicy) -> Result<Vec<StratumSummary>> {
    let mut out: Vec<StratumSummary> = strata(g, policy)?.iter().map(SpectralStratum::summary).collect();
    out.sort();
    Ok(out)
}
