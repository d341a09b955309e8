//! The group-side count: semisimple parameters `𝔬`, unipotent parameters
//! `𝔠` given by two-sided cells of `(W_𝓛)°`, the classes `β` and the
//! equivariant counts per stratum. Disconnected groups are allowed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::choice::{ChoicePolicy, Chooser};
use crate::coxeter::{cell_action, cells, enumerate_weyl, kl_table, standard, CellPartition, CoxeterGroup};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, TorsionPoint};
use crate::oracle::{AbstractFiniteGroup, ProductGroup};
use crate::points::{self, compose, PointOrbit, SmithCheck};
use crate::report::{describe_group, describe_product, unipotent_label, PacketSummary, Pipeline, StratumSummary};
use crate::rootdata::{dual_datum, GroupSpec, RootDatum, SimpleType, SubSystem, WeylGroup, DEFAULT_ORDER_BOUND};
use crate::spectral::weyl_as_group;
use crate::springer::{family_group, special_class_by_cell};

#[derive(Clone, Debug)]
pub struct SemisimpleParameter {
    /// Lexicographically least point of the `W`-orbit.
    pub rep: TorsionPoint,
    /// The point `𝓛` further data is computed at.
    pub point: TorsionPoint,
    pub orbit: Vec<TorsionPoint>,
    /// The `W°`-orbit of `point`; it is `F`-stable.
    pub connected_suborbit: Vec<TorsionPoint>,
}

impl SemisimpleParameter {
    pub fn label(&self) -> String {
        self.rep.label()
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerPackage {
    pub point: TorsionPoint,
    /// `Φ_𝓛` with components classified on the dual side.
    pub phi_l: SubSystem,
    /// `W_𝓛` as Weyl indices.
    pub w_l: Vec<usize>,
    /// `(W_𝓛)°`, generated by the simple reflections of `Φ_𝓛` in the
    /// order of `phi_l.simple`.
    pub w_l_circ: CoxeterGroup,
    /// Weyl index of each element of `w_l_circ`.
    pub w_l_circ_index: Vec<usize>,
    /// Elements of `W_𝓛` preserving `Φ_𝓛⁺`, one per coset of `(W_𝓛)°`.
    pub omega_l: Vec<usize>,
    /// Those of `omega_l` lying in `W°`.
    pub omega_l_circ: Vec<usize>,
    pub cells: CellPartition,
    /// Cell of each component factor, per two-sided cell of `w_l_circ`.
    pub cell_tuples: Vec<Vec<usize>>,
    /// Cell permutation induced by each element of `omega_l`.
    pub omega_cell_action: Vec<Vec<usize>>,
    pub betas: Vec<BetaClass>,
}

impl StabilizerPackage {
    pub fn kinds(&self) -> Vec<SimpleType> {
        self.phi_l.components.iter().map(|c| c.kind).collect()
    }

    pub fn unipotent_label(&self, cell: usize) -> Result<String> {
        let records = self
            .kinds()
            .into_iter()
            .zip(&self.cell_tuples[cell])
            .map(|(k, &c)| special_class_by_cell(k, c))
            .collect::<Result<Vec<_>>>()?;
        let parts: Vec<_> = records.iter().map(|r| (r.type_label, r.class_label.as_str())).collect();
        Ok(unipotent_label(&parts))
    }
}

/// A coset of `(W_𝓛)°` in `{w ∈ W° : w F 𝓛 = 𝓛}`.
#[derive(Clone, Debug)]
pub struct BetaClass {
    /// Weyl indices, sorted.
    pub coset: Vec<usize>,
    /// The unique `w^β` in the coset with `w^β σ(Φ_𝓛⁺) = Φ_𝓛⁺`.
    pub distinguished_rep: usize,
    /// Permutation of the cells of `(W_𝓛)°` induced by `w^β σ`.
    pub cell_action: Vec<usize>,
}

impl BetaClass {
    pub fn fixes(&self, cell: usize) -> bool {
        self.cell_action[cell] == cell
    }
}

/// `𝔅°_𝐜` with the action of `Ω_𝐜`.
#[derive(Clone, Debug)]
pub struct BetaOrbits {
    pub cell: usize,
    /// `Ω_𝐜` as Weyl indices, sorted.
    pub omega_c: Vec<usize>,
    /// Indices into `StabilizerPackage::betas` of the classes fixing the cell.
    pub fixing: Vec<usize>,
    /// `(chosen representative, orbit, Ω_{𝐜,β})`.
    pub orbits: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCount {
    pub count: usize,
    pub packets: Vec<PacketSummary>,
    pub description: String,
}

pub struct StratifiedContext<'a> {
    g: &'a GroupSpec,
    dual: RootDatum,
    weyl: WeylGroup,
    weyl_group: AbstractFiniteGroup,
    sigma_perm: Vec<usize>,
    sigma_inv: IntMatrix,
    pub smith_checks: Vec<SmithCheck>,
    orbits: Vec<PointOrbit>,
    standard_cells: BTreeMap<SimpleType, (CoxeterGroup, CellPartition)>,
}

impl<'a> StratifiedContext<'a> {
    pub fn new(g: &'a GroupSpec) -> Result<StratifiedContext<'a>> {
        let weyl = g.datum().weyl_group(g.component_group(), DEFAULT_ORDER_BOUND)?;
        let (pts, smith_checks) = points::stable_points(g, &weyl)?;
        let orbits = points::orbits(&weyl, &pts, false);
        let (sigma_inv, _) = g
            .twist()
            .sigma_x()
            .finite_order_inverse(1000)
            .ok_or_else(|| Error::invariant("σ does not have finite order"))?;
        Ok(StratifiedContext {
            g,
            dual: dual_datum(g.datum()),
            weyl_group: weyl_as_group(&weyl)?,
            sigma_perm: points::sigma_root_permutation(g)?,
            sigma_inv,
            weyl,
            smith_checks,
            orbits,
            standard_cells: BTreeMap::new(),
        })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    fn wsigma_perm(&self, w: usize) -> Vec<usize> {
        compose(&self.sigma_perm, self.weyl.root_permutation(w))
    }

    /// `Ad_σ(γ)(w) = γ w σ γ⁻¹ σ⁻¹`.
    pub fn ad_sigma(&self, gamma: usize, w: usize) -> Result<usize> {
        let e = self.weyl.elements();
        let x = e[gamma]
            .x()
            .mul(e[w].x())
            .mul(self.g.twist().sigma_x())
            .mul(e[self.weyl.inverse(gamma)].x())
            .mul(&self.sigma_inv);
        points::lookup(&self.weyl, &x)
    }

    pub fn semisimple_parameters(&self, chooser: &mut Chooser) -> Vec<SemisimpleParameter> {
        let conn = self.weyl.connected_order();
        self.orbits
            .iter()
            .map(|o| {
                let point = chooser.pick(&o.members);
                let sub: BTreeSet<TorsionPoint> =
                    self.weyl.elements()[..conn].iter().map(|w| point.apply(w.x())).collect();
                SemisimpleParameter {
                    rep: o.rep.clone(),
                    point,
                    orbit: o.members.clone(),
                    connected_suborbit: sub.into_iter().collect(),
                }
            })
            .collect()
    }

    fn standard_partition(&mut self, t: SimpleType) -> Result<&(CoxeterGroup, CellPartition)> {
        if !self.standard_cells.contains_key(&t) {
            let w = standard(t);
            let p = cells(&w, &kl_table(&w)?);
            self.standard_cells.insert(t, (w, p));
        }
        Ok(&self.standard_cells[&t])
    }

    pub fn stabilizer_package(&mut self, sp: &SemisimpleParameter) -> Result<StabilizerPackage> {
        let g = self.g;
        let d = g.datum();
        let l = &sp.point;
        let indices = points::integral_roots(g, l);
        let phi_l = SubSystem::new(&self.dual, &indices)?;
        let local: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let sub_datum = RootDatum::new(
            d.rank(),
            indices.iter().map(|&i| d.roots()[i].clone()).collect(),
            indices.iter().map(|&i| d.coroots()[i].clone()).collect(),
            indices.iter().map(|&i| d.is_positive(i)).collect(),
            phi_l.simple.iter().map(|i| local[i]).collect(),
            phi_l.type_label(),
        )?;
        let w_l_circ = enumerate_weyl(&sub_datum, DEFAULT_ORDER_BOUND)?;
        let w_l_circ_index: Vec<usize> =
            w_l_circ.elements().iter().map(|e| points::lookup(&self.weyl, e.x())).collect::<Result<_>>()?;
        let w_l: Vec<usize> = (0..self.weyl.order()).filter(|&w| l.apply(self.weyl.elements()[w].x()) == *l).collect();
        if w_l_circ_index.iter().any(|w| w_l.binary_search(w).is_err()) {
            return Err(Error::invariant("reflections of Φ_𝓛 do not fix 𝓛"));
        }
        let omega_l: Vec<usize> =
            w_l.iter().copied().filter(|&w| phi_l.preserves_positive(d, self.weyl.root_permutation(w))).collect();
        if omega_l.len() * w_l_circ.order() != w_l.len() {
            return Err(Error::invariant("W_𝓛 is not (W_𝓛)° ⋊ Ω_𝓛"));
        }
        let omega_l_circ: Vec<usize> = omega_l.iter().copied().filter(|&w| self.weyl.is_connected_element(w)).collect();

        let partition = cells(&w_l_circ, &kl_table(&w_l_circ)?);
        let cell_tuples = self.component_cells(&phi_l, &w_l_circ, &partition)?;
        let omega_cell_action = omega_l
            .iter()
            .map(|&w| cell_action(&w_l_circ, &partition, &self.weyl.elements()[w]))
            .collect::<Result<Vec<_>>>()?;

        // classes β: cosets of (W_𝓛)° in {w ∈ W° : w F 𝓛 = 𝓛}
        let frob = points::frobenius_matrix(g);
        let fl = l.apply(&frob);
        let conn = self.weyl.connected_order();
        let transporters: Vec<usize> = (0..conn).filter(|&w| fl.apply(self.weyl.elements()[w].x()) == *l).collect();
        let mut seen = BTreeSet::new();
        let mut betas = Vec::new();
        let sigma = g.twist().sigma();
        for &w in &transporters {
            if seen.contains(&w) {
                continue;
            }
            let coset: BTreeSet<usize> = w_l_circ_index.iter().map(|&v| self.weyl.mul(v, w)).collect();
            seen.extend(coset.iter().copied());
            let coset: Vec<usize> = coset.into_iter().collect();
            let reps: Vec<usize> =
                coset.iter().copied().filter(|&v| phi_l.preserves_positive(d, &self.wsigma_perm(v))).collect();
            if reps.len() != 1 {
                return Err(Error::invariant(format!("{} distinguished representatives in a β-coset", reps.len())));
            }
            let wsigma = self.weyl.elements()[reps[0]].mul(&sigma);
            betas.push(BetaClass {
                coset,
                distinguished_rep: reps[0],
                cell_action: cell_action(&w_l_circ, &partition, &wsigma)?,
            });
        }
        if seen.len() != transporters.len() {
            return Err(Error::invariant("β-cosets do not partition the transporter set"));
        }
        Ok(StabilizerPackage {
            point: l.clone(),
            phi_l,
            w_l,
            w_l_circ,
            w_l_circ_index,
            omega_l,
            omega_l_circ,
            cells: partition,
            cell_tuples,
            omega_cell_action,
            betas,
        })
    }

    /// Two-sided cells of a product are products of cells: read off each
    /// factor by projecting reduced words onto the factor's generators.
    fn component_cells(
        &mut self,
        phi_l: &SubSystem,
        w: &CoxeterGroup,
        partition: &CellPartition,
    ) -> Result<Vec<Vec<usize>>> {
        let mut owner = Vec::new();
        for (j, c) in phi_l.components.iter().enumerate() {
            for k in 0..c.simple.len() {
                owner.push((j, k));
            }
        }
        let mut tuples: Vec<Option<Vec<usize>>> = vec![None; partition.num_two_sided()];
        let mut seen_tuples = BTreeSet::new();
        for x in 0..w.order() {
            let mut tuple = Vec::new();
            for (j, c) in phi_l.components.iter().enumerate() {
                let word: Vec<usize> = w.word(x).iter().filter(|&&s| owner[s].0 == j).map(|&s| owner[s].1).collect();
                let (std_group, std_cells) = self.standard_partition(c.kind)?;
                tuple.push(std_cells.cell_of(std_group.eval(&word)));
            }
            let cell = partition.cell_of(x);
            match &tuples[cell] {
                None => {
                    if !seen_tuples.insert(tuple.clone()) {
                        return Err(Error::invariant("two cells project to the same factor cells"));
                    }
                    tuples[cell] = Some(tuple);
                }
                Some(t) if *t != tuple => return Err(Error::invariant("cell is not a product of factor cells")),
                Some(_) => {}
            }
        }
        Ok(tuples.into_iter().map(|t| t.expect("every cell has a member")).collect())
    }

    /// `Ω_𝓛`-orbits of cells fixed by some `w^β σ`, each with a chosen cell.
    pub fn unipotent_parameters(&self, pkg: &StabilizerPackage, chooser: &mut Chooser) -> Vec<(Vec<usize>, usize)> {
        let n = pkg.cells.num_two_sided();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in 0..n {
            if seen.contains(&c) || !pkg.betas.iter().any(|b| b.fixes(c)) {
                continue;
            }
            let orbit: BTreeSet<usize> = pkg.omega_cell_action.iter().map(|a| a[c]).collect();
            seen.extend(orbit.iter().copied());
            let orbit: Vec<usize> = orbit.into_iter().collect();
            let chosen = chooser.pick(&orbit);
            out.push((orbit, chosen));
        }
        out
    }

    pub fn beta_orbits(&self, pkg: &StabilizerPackage, cell: usize, chooser: &mut Chooser) -> Result<BetaOrbits> {
        let omega_c: Vec<usize> =
            pkg.omega_l.iter().zip(&pkg.omega_cell_action).filter(|(_, a)| a[cell] == cell).map(|(&w, _)| w).collect();
        let fixing: Vec<usize> = (0..pkg.betas.len()).filter(|&b| pkg.betas[b].fixes(cell)).collect();
        let by_rep: BTreeMap<usize, usize> = fixing.iter().map(|&b| (pkg.betas[b].distinguished_rep, b)).collect();
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for &b in &fixing {
            if seen.contains(&b) {
                continue;
            }
            let w = pkg.betas[b].distinguished_rep;
            let mut orbit = BTreeSet::new();
            for &k in &omega_c {
                let image = self.ad_sigma(k, w)?;
                let idx = *by_rep.get(&image).ok_or_else(|| Error::invariant("Ad_σ(Ω_𝐜) leaves 𝔅°_𝐜"))?;
                orbit.insert(idx);
            }
            seen.extend(orbit.iter().copied());
            let orbit: Vec<usize> = orbit.into_iter().collect();
            let chosen = chooser.pick(&orbit);
            let rep = pkg.betas[chosen].distinguished_rep;
            let stab = omega_c
                .iter()
                .copied()
                .filter(|&k| self.ad_sigma(k, rep).map(|x| x == rep).unwrap_or(false))
                .collect::<Vec<_>>();
            if stab.len() * orbit.len() != omega_c.len() {
                return Err(Error::invariant("orbit-stabilizer fails for the β action"));
            }
            orbits.push((chosen, orbit, stab));
        }
        Ok(BetaOrbits { cell, omega_c, fixing, orbits })
    }

    /// `𝒢_𝐜` as a product over the components of `Φ_𝓛`.
    pub fn family_product(&self, pkg: &StabilizerPackage, cell: usize) -> Result<(ProductGroup, Vec<String>)> {
        let mut factors = Vec::new();
        let mut names = Vec::new();
        for (k, &c) in pkg.kinds().iter().zip(&pkg.cell_tuples[cell]) {
            let rec = family_group(k.dual(), c)?;
            if rec.is_exceptional {
                return Err(Error::UnsupportedType(format!("exceptional cell {c} of {}", k.dual())));
            }
            factors.push(rec.group.clone());
            names.push(rec.group_name.clone());
        }
        Ok((ProductGroup::new(factors), names))
    }

    fn factor_perm(&self, pkg: &StabilizerPackage, gc: &ProductGroup, root_perm: &[usize]) -> Result<Vec<usize>> {
        let cp = pkg
            .phi_l
            .component_permutation(root_perm)
            .ok_or_else(|| Error::invariant("element does not preserve Φ_𝓛"))?;
        gc.plain_permutation(&cp)
    }

    /// Simple objects of the `Ω_{𝐜,β}`-equivariant twisted sheaves on
    /// `𝒢_𝐜`: orbits of `E = 𝒢_𝐜 ⋊ Ω_{𝐜,β}` on `𝒢_𝐜` under
    /// `(b,k)·g = b π_k(g) τ_β(b)⁻¹`, each weighted by the number of
    /// irreducible characters of its stabilizer.
    pub fn stratum_count(
        &self,
        pkg: &StabilizerPackage,
        cell: usize,
        beta_rep: usize,
        stabilizer: &[usize],
        chooser: &mut Chooser,
    ) -> Result<StratumCount> {
        let (gc, names) = self.family_product(pkg, cell)?;
        let mut stab = stabilizer.to_vec();
        stab.sort();
        for &k in &stab {
            if points::sigma_conjugate(self.g, &self.weyl, beta_rep, k)? != k {
                return Err(Error::invariant("Ω_{𝐜,β} does not commute with w^β σ"));
            }
        }
        let omega = self.weyl_group.subgroup(&stab)?;
        let action = stab
            .iter()
            .map(|&k| self.factor_perm(pkg, &gc, self.weyl.root_permutation(k)))
            .collect::<Result<Vec<_>>>()?;
        let e = AbstractFiniteGroup::semidirect(gc.group(), &omega, &action)?;
        let tau = self.factor_perm(pkg, &gc, &self.wsigma_perm(beta_rep))?;
        let h = stab.len();
        let mut f: Vec<usize> = (0..e.order()).map(|x| tau[x / h] * h + x % h).collect();
        let shift = chooser.index(gc.group().order()) * h;
        if shift != 0 {
            let inner = e.inner(shift);
            f = f.iter().map(|&y| inner[y]).collect();
        }
        let mut count = 0;
        let mut packets = Vec::new();
        for class in e.twisted_classes(&f)? {
            let inside = class.members.iter().filter(|&&m| m % h == 0).count();
            if inside == 0 {
                continue;
            }
            if inside != class.members.len() {
                return Err(Error::invariant("twisted class meets 𝒢_𝐜 only partly"));
            }
            count += class.centralizer_classes;
            packets.push(PacketSummary {
                x_class_label: format!("{}:{}", class.members.len(), class.centralizer.len()),
                packet_size: class.centralizer_classes,
            });
        }
        packets.sort();
        let description = format!("{} ⋊ {}", describe_product(&names), describe_group(&omega));
        Ok(StratumCount { count, packets, description })
    }

    /// The same total as summing `stratum_count` over β-orbits, computed
    /// without choosing representatives: orbits of `𝒢_𝐜 ⋊ Ω_𝐜` on pairs
    /// `(β, g)` with `β ∈ 𝔅°_𝐜`.
    pub fn direct_cell_count(&self, pkg: &StabilizerPackage, orbits: &BetaOrbits) -> Result<usize> {
        let (gc, _) = self.family_product(pkg, orbits.cell)?;
        let omega_c = &orbits.omega_c;
        let omega = self.weyl_group.subgroup(omega_c)?;
        let action = omega_c
            .iter()
            .map(|&k| self.factor_perm(pkg, &gc, self.weyl.root_permutation(k)))
            .collect::<Result<Vec<_>>>()?;
        let e = AbstractFiniteGroup::semidirect(gc.group(), &omega, &action)?;
        let reps: Vec<usize> = orbits.fixing.iter().map(|&b| pkg.betas[b].distinguished_rep).collect();
        let taus =
            reps.iter().map(|&w| self.factor_perm(pkg, &gc, &self.wsigma_perm(w))).collect::<Result<Vec<_>>>()?;
        let moves = omega_c
            .iter()
            .map(|&k| {
                reps.iter()
                    .map(|&w| {
                        let image = self.ad_sigma(k, w)?;
                        reps.iter().position(|&r| r == image).ok_or_else(|| Error::invariant("Ad_σ leaves 𝔅°_𝐜"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let h = omega_c.len();
        let grp = gc.group();
        let act = |x: usize, (beta, g): (usize, usize)| -> (usize, usize) {
            let (b, k) = (x / h, x % h);
            let nb = moves[k][beta];
            let moved = action[k][g];
            (nb, grp.mul(grp.mul(b, moved), grp.inv(taus[nb][b])))
        };
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for beta in 0..reps.len() {
            for g in 0..grp.order() {
                if seen.contains(&(beta, g)) {
                    continue;
                }
                let mut queue = VecDeque::from([(beta, g)]);
                seen.insert((beta, g));
                while let Some(p) = queue.pop_front() {
                    for x in 0..e.order() {
                        let y = act(x, p);
                        if seen.insert(y) {
                            queue.push_back(y);
                        }
                    }
                }
                let stab: Vec<usize> = (0..e.order()).filter(|&x| act(x, (beta, g)) == (beta, g)).collect();
                total += e.subgroup(&stab)?.class_count();
            }
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct StratifiedStratum {
    pub ss_label: String,
    pub unipotent_label: String,
    pub beta_orbit_size: usize,
    pub count: StratumCount,
}

impl StratifiedStratum {
    pub fn summary(&self) -> StratumSummary {
        StratumSummary {
            pipeline: Pipeline::Stratified,
            ss_label: self.ss_label.clone(),
            unipotent_label: self.unipotent_label.clone(),
            beta_label: format!("orbit:{}", self.beta_orbit_size),
            abar_description: self.count.description.clone(),
            count: self.count.count,
            packets: self.count.packets.clone(),
        }
    }
}

/// All strata, checking along the way that the representative sum over
/// β-orbits matches the direct count for every cell.
pub fn strata(g: &GroupSpec, policy: ChoicePolicy) -> Result<Vec<StratifiedStratum>> {
    let mut ctx = StratifiedContext::new(g)?;
    let mut chooser = Chooser::new(policy);
    let mut out = Vec::new();
    for sp in ctx.semisimple_parameters(&mut chooser) {
        let pkg = ctx.stabilizer_package(&sp)?;
        for (_, cell) in ctx.unipotent_parameters(&pkg, &mut chooser) {
            let label = pkg.unipotent_label(cell)?;
            let orbits = ctx.beta_orbits(&pkg, cell, &mut chooser)?;
            let mut sum = 0;
            for (b, orbit, stab) in &orbits.orbits {
                let rep = pkg.betas[*b].distinguished_rep;
                let count = ctx.stratum_count(&pkg, cell, rep, stab, &mut chooser)?;
                sum += count.count;
                out.push(StratifiedStratum {
                    ss_label: sp.label(),
                    unipotent_label: label.clone(),
                    beta_orbit_size: orbit.len(),
                    count,
                });
            }
            let direct = ctx.direct_cell_count(&pkg, &orbits)?;
            if direct != sum {
                return Err(Error::invariant(format!("β-orbit sum {sum} differs from the direct count {direct}")));
            }
        }
    }
    Ok(out)
}

pub fn semisimple_parameters(g: &GroupSpec) -> Result<Vec<SemisimpleParameter>> {
    Ok(StratifiedContext::new(g)?.semisimple_parameters(&mut Chooser::new(ChoicePolicy::Canonical)))
}

/// Total and per-stratum breakdown.
pub fn stratified_count(g: &GroupSpec) -> Result<(usize, Vec<StratifiedStratum>)> {
    let s = strata(g, ChoicePolicy::Canonical)?;
    Ok((s.iter().map(|x| x.count.count).sum(), s))
}

pub fn summaries(g: &GroupSpec, policy: ChoicePolicy) -> Result<Vec<StratumSummary>> {
    let mut out: Vec<StratumSummary> = strata(g, policy)?.iter().map(StratifiedStratum::summary).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{config::group_spec_from_config, named_group};

    fn spec(name: &str, q: u64) -> GroupSpec {
        group_spec_from_config(&named_group(name, q).unwrap()).unwrap()
    }

    #[test]
    fn sl2_over_f3() {
        let (total, s) = stratified_count(&spec("sl2", 3)).unwrap();
        assert_eq!(total, 7);
        let half: Vec<usize> = s.iter().filter(|x| x.ss_label == "(1/2)").map(|x| x.count.count).collect();
        assert_eq!(half, vec![2, 2]);
    }

    #[test]
    fn o2_over_f3() {
        let g = spec("o2", 3);
        assert_eq!(semisimple_parameters(&g).unwrap().len(), 2);
        assert_eq!(stratified_count(&g).unwrap().0, 4);
    }

    #[test]
    fn sl2_beta_classes() {
        let g = spec("sl2", 3);
        let mut ctx = StratifiedContext::new(&g).unwrap();
        let mut ch = Chooser::new(ChoicePolicy::Canonical);
        let sps = ctx.semisimple_parameters(&mut ch);
        let half = sps.iter().find(|s| s.label() == "(1/2)").unwrap();
        let pkg = ctx.stabilizer_package(half).unwrap();
        assert_eq!(pkg.betas.len(), 2);
        assert_eq!(pkg.omega_l.len(), 2);
        let orbits = ctx.beta_orbits(&pkg, 0, &mut ch).unwrap();
        assert_eq!(orbits.orbits.len(), 2);
        assert!(orbits.orbits.iter().all(|(_, _, stab)| stab.len() == 2));
    }
}
