//! Rational equivariant K-theory of finite G-sets for a finite abelian
//! group `G`: `K(X, G) = sum over orbits of R(stabilizer)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{
    idempotent, induction_ab, restriction_ab, CharRing, DualCyclicSubgroup, FinAbGroup,
    GroupAlgebraElem, GroupElement, Subgroup,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A finite set with an action of `G`, one permutation per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGSet", into = "RawGSet")]
pub struct GSet {
    group: FinAbGroup,
    points: usize,
    action: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGSet {
    group: FinAbGroup,
    points: usize,
    #[serde(default)]
    action: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<RawGSet> for GSet {
    type Error = Error;
    fn try_from(raw: RawGSet) -> Result<Self> {
        let k = raw.group.factors().len();
        let mut action = vec![(0..raw.points).collect::<Vec<_>>(); k];
        for (key, perm) in raw.action {
            let i: usize = key
                .parse()
                .ok()
                .filter(|&i| i < k)
                .ok_or_else(|| Error::BadAction(format!("generator index {key:?}")))?;
            action[i] = perm;
        }
        GSet::new(raw.group, raw.points, action)
    }
}

impl From<GSet> for RawGSet {
    fn from(x: GSet) -> Self {
        RawGSet {
            group: x.group,
            points: x.points,
            action: x.action.into_iter().enumerate().map(|(i, p)| (i.to_string(), p)).collect(),
        }
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

impl GSet {
    pub fn new(group: FinAbGroup, points: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        let factors = group.factors().to_vec();
        if action.len() != factors.len() {
            return Err(Error::BadAction(format!(
                "{} permutations for {} generators",
                action.len(),
                factors.len()
            )));
        }
        let id: Vec<usize> = (0..points).collect();
        for (i, p) in action.iter().enumerate() {
            let mut seen = vec![false; points];
            if p.len() != points
                || p.iter().any(|&x| x >= points || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::BadAction(format!("generator {i}: {p:?} is not a permutation")));
            }
            let power = (0..factors[i]).fold(id.clone(), |acc, _| compose(p, &acc));
            if power != id {
                return Err(Error::BadAction(format!(
                    "generator {i} does not have order dividing {}",
                    factors[i]
                )));
            }
        }
        for i in 0..action.len() {
            for j in 0..i {
                if compose(&action[i], &action[j]) != compose(&action[j], &action[i]) {
                    return Err(Error::BadAction(format!("generators {j} and {i} do not commute")));
                }
            }
        }
        Ok(GSet { group, points, action })
    }

    /// `points` copies of the trivial action.
    pub fn trivial(group: &FinAbGroup, points: usize) -> Self {
        let k = group.factors().len();
        GSet { group: group.clone(), points, action: vec![(0..points).collect(); k] }
    }

    /// `G / H` with points labelled by cosets in order of least element.
    pub fn coset_space(h: &Subgroup) -> Self {
        let group = h.group().clone();
        let mut reps: Vec<GroupElement> = Vec::new();
        let mut label: BTreeMap<GroupElement, usize> = BTreeMap::new();
        for g in group.elements() {
            if !label.contains_key(&g) {
                let idx = reps.len();
                for x in h.elements() {
                    label.insert(group.add(&g, x), idx);
                }
                reps.push(g);
            }
        }
        let action = (0..group.factors().len())
            .map(|i| {
                let gen = group.generator(i);
                reps.iter().map(|g| label[&group.add(&gen, g)]).collect()
            })
            .collect();
        GSet { group, points: reps.len(), action }
    }

    /// Disjoint union; points of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let n = self.points;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + n)).collect())
            .collect();
        Ok(GSet { group: self.group.clone(), points: n + other.points, action })
    }

    /// Relabels points: point `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.points {
            return Err(Error::BadAction("relabelling has the wrong length".into()));
        }
        let mut inv = vec![usize::MAX; self.points];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.points || inv[p] != usize::MAX {
                return Err(Error::BadAction("relabelling is not a bijection".into()));
            }
            inv[p] = i;
        }
        let action = self.action.iter().map(|a| inv.iter().map(|&i| perm[a[i]]).collect()).collect();
        Ok(GSet { group: self.group.clone(), points: self.points, action })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn act(&self, h: &GroupElement, x: usize) -> usize {
        h.0.iter()
            .zip(&self.action)
            .fold(x, |y, (&k, p)| (0..k).fold(y, |z, _| p[z]))
    }

    pub fn fixed_points(&self, h: &GroupElement) -> Vec<usize> {
        (0..self.points).filter(|&x| self.act(h, x) == x).collect()
    }

    /// Orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for start in 0..self.points {
            if seen[start] {
                continue;
            }
            let mut pts = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < pts.len() {
                for p in &self.action {
                    let y = p[pts[k]];
                    if !seen[y] {
                        seen[y] = true;
                        pts.push(y);
                    }
                }
                k += 1;
            }
            pts.sort_unstable();
            let stab = self
                .group
                .elements()
                .into_iter()
                .filter(|h| self.act(h, start) == start)
                .collect();
            let stabilizer =
                Subgroup::from_elements(&self.group, stab).expect("stabilizers are subgroups");
            out.push(Orbit { points: pts, stabilizer });
        }
        out
    }

    /// `X^h` with the restricted action, points renumbered in increasing order.
    pub fn fixed_locus(&self, h: &GroupElement) -> Result<GSet> {
        self.group.check(h)?;
        let fixed = self.fixed_points(h);
        let index: BTreeMap<usize, usize> = fixed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let action = self
            .action
            .iter()
            .map(|p| fixed.iter().map(|&x| index[&p[x]]).collect())
            .collect();
        Ok(GSet { group: self.group.clone(), points: fixed.len(), action })
    }

    pub fn is_free(&self) -> bool {
        self.orbits().iter().all(|o| o.stabilizer.order() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub stabilizer: Subgroup,
}

impl Orbit {
    /// The least point, used as the orbit's identifier.
    pub fn id(&self) -> usize {
        self.points[0]
    }
}

/// `K(X, G)` for a fixed `X`: orbits and the representation ring of each
/// stabilizer.
#[derive(Clone, Debug)]
pub struct KTheory {
    set: GSet,
    orbits: Vec<Orbit>,
    rings: Vec<Arc<CharRing>>,
    orbit_of_point: Vec<usize>,
}

/// A class in `K(X, G)`: one group-algebra element per orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub entries: Vec<GroupAlgebraElem>,
}

impl KTheory {
    pub fn new(set: &GSet) -> Self {
        let orbits = set.orbits();
        let rings: Vec<_> = orbits.iter().map(|o| CharRing::new(o.stabilizer.clone())).collect();
        let mut orbit_of_point = vec![0; set.points];
        for (i, o) in orbits.iter().enumerate() {
            for &x in &o.points {
                orbit_of_point[x] = i;
            }
        }
        KTheory { set: set.clone(), orbits, rings, orbit_of_point }
    }

    pub fn set(&self) -> &GSet {
        &self.set
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.set.group
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn rings(&self) -> &[Arc<CharRing>] {
        &self.rings
    }

    pub fn orbit_of_point(&self, x: usize) -> usize {
        self.orbit_of_point[x]
    }

    pub fn dim(&self) -> usize {
        self.rings.iter().map(|r| r.dim()).sum()
    }

    /// The basis as `(orbit id, character key)` pairs, in coordinate order.
    pub fn basis(&self) -> Vec<(usize, String)> {
        self.orbits
            .iter()
            .zip(&self.rings)
            .flat_map(|(o, r)| r.characters().iter().map(move |chi| (o.id(), chi.key())))
            .collect()
    }

    pub fn zero(&self) -> KClass {
        KClass { entries: self.rings.iter().map(GroupAlgebraElem::zero).collect() }
    }

    pub fn one(&self) -> KClass {
        KClass { entries: self.rings.iter().map(GroupAlgebraElem::one).collect() }
    }

    pub fn basis_class(&self, k: usize) -> KClass {
        let mut v = vec![Rational::zero(); self.dim()];
        v[k] = Rational::one();
        self.from_vector(&v).expect("right length")
    }

    /// The class whose only nonzero entry is `a` on orbit `i`.
    pub fn on_orbit(&self, i: usize, a: GroupAlgebraElem) -> Result<KClass> {
        if a.ring() != &self.rings[i] {
            return Err(Error::BadClass(format!("entry for orbit {i} is over the wrong stabilizer")));
        }
        let mut out = self.zero();
        out.entries[i] = a;
        Ok(out)
    }

    pub fn check(&self, a: &KClass) -> Result<()> {
        if a.entries.len() != self.rings.len()
            || a.entries.iter().zip(&self.rings).any(|(e, r)| e.ring() != r)
        {
            return Err(Error::BadClass("class does not match the orbits of the G-set".into()));
        }
        Ok(())
    }

    pub fn to_vector(&self, a: &KClass) -> Vec<Rational> {
        a.entries.iter().flat_map(|e| e.coeffs().iter().cloned()).collect()
    }

    pub fn from_vector(&self, v: &[Rational]) -> Result<KClass> {
        if v.len() != self.dim() {
            return Err(Error::Length { expected: self.dim(), got: v.len() });
        }
        let mut offset = 0;
        let entries = self
            .rings
            .iter()
            .map(|r| {
                let e = GroupAlgebraElem::new(r, v[offset..offset + r.dim()].to_vec());
                offset += r.dim();
                e
            })
            .collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    pub fn add(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check(a)?;
        self.check(b)?;
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x.add(y)).collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    pub fn sub(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check(a)?;
        self.check(b)?;
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x.sub(y)).collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    pub fn scale(&self, a: &KClass, c: &Rational) -> KClass {
        KClass { entries: a.entries.iter().map(|e| e.scale(c)).collect() }
    }

    /// The ring structure: orbitwise product in `Q[stabilizer^]`.
    pub fn mul(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check(a)?;
        self.check(b)?;
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x.mul(y)).collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    /// Multiplies each orbit entry by `e_sigma`, or zeroes it when the
    /// stabilizer does not contain `sigma`.
    pub fn localize(&self, a: &KClass, sigma: &DualCyclicSubgroup) -> Result<KClass> {
        self.check(a)?;
        self.group().check(&sigma.generator)?;
        let entries = a
            .entries
            .iter()
            .zip(&self.rings)
            .map(|(e, ring)| {
                if ring.subgroup().contains_cyclic(sigma) {
                    e.mul(&idempotent(ring, sigma)?)
                } else {
                    Ok(GroupAlgebraElem::zero(ring))
                }
            })
            .collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    pub fn geometric_part(&self, a: &KClass) -> Result<KClass> {
        self.localize(a, &DualCyclicSubgroup::trivial(self.group()))
    }

    pub fn algebraic_part(&self, a: &KClass) -> Result<KClass> {
        self.sub(a, &self.geometric_part(a)?)
    }

    /// Per orbit, the rank of the entry. On geometric classes this is the
    /// coordinate with respect to the geometric idempotents.
    pub fn moduli_pushforward(&self, a: &KClass) -> Result<Vec<Rational>> {
        self.check(a)?;
        Ok(a.entries.iter().map(|e| e.rank()).collect())
    }

    /// Inverse of `moduli_pushforward` on the geometric part.
    pub fn geometric_class(&self, ranks: &[Rational]) -> Result<KClass> {
        if ranks.len() != self.orbits.len() {
            return Err(Error::Length { expected: self.orbits.len(), got: ranks.len() });
        }
        let entries = self
            .rings
            .iter()
            .zip(ranks)
            .map(|(ring, q)| Ok(geometric_idempotent(ring)?.scale(q)))
            .collect::<Result<_>>()?;
        Ok(KClass { entries })
    }

    /// Matrix of a linear map `K(X) -> K(X)` given on basis classes.
    pub fn endomorphism_matrix<F>(&self, f: F) -> Result<Matrix>
    where
        F: Fn(&KClass) -> Result<KClass>,
    {
        let columns = (0..self.dim())
            .map(|k| f(&self.basis_class(k)).map(|c| self.to_vector(&c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.dim(), &columns))
    }

    pub fn class_to_json(&self, a: &KClass) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .orbits
            .iter()
            .zip(&a.entries)
            .map(|(o, e)| (o.id().to_string(), e.to_json()))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Parses `{"orbit-id": group-algebra-elem}`; missing orbits are zero.
    pub fn class_from_json(&self, value: &serde_json::Value) -> Result<KClass> {
        let map = value
            .as_object()
            .ok_or_else(|| Error::BadClass("expected an object keyed by orbit id".into()))?;
        let mut out = self.zero();
        for (key, v) in map {
            let i = key
                .parse::<usize>()
                .ok()
                .and_then(|x| self.orbits.iter().position(|o| o.id() == x))
                .ok_or_else(|| Error::BadClass(format!("{key:?} is not an orbit id")))?;
            out.entries[i] = GroupAlgebraElem::from_json(&self.rings[i], v)?;
        }
        Ok(out)
    }
}

/// `e_1 = (1/|S|) sum of all characters`, the geometric idempotent.
pub fn geometric_idempotent(ring: &Arc<CharRing>) -> Result<GroupAlgebraElem> {
    idempotent(ring, &DualCyclicSubgroup::trivial(ring.group()))
}

/// A `G`-equivariant map of finite `G`-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct EquivariantMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

impl TryFrom<RawMap> for EquivariantMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        EquivariantMap::new(raw.source, raw.target, raw.map)
    }
}

impl From<EquivariantMap> for RawMap {
    fn from(f: EquivariantMap) -> Self {
        RawMap { source: f.source, target: f.target, map: f.map }
    }
}

impl EquivariantMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::GroupMismatch);
        }
        if map.len() != source.points || map.iter().any(|&y| y >= target.points) {
            return Err(Error::NotEquivariant("point map has the wrong shape".into()));
        }
        for (i, (p, q)) in source.action.iter().zip(&target.action).enumerate() {
            for x in 0..source.points {
                if map[p[x]] != q[map[x]] {
                    return Err(Error::NotEquivariant(format!(
                        "generator {i} at point {x}"
                    )));
                }
            }
        }
        Ok(EquivariantMap { source, target, map })
    }

    pub fn identity(x: &GSet) -> Self {
        EquivariantMap { source: x.clone(), target: x.clone(), map: (0..x.points).collect() }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `g . self`
    pub fn then(&self, g: &EquivariantMap) -> Result<EquivariantMap> {
        if self.target != g.source {
            return Err(Error::NotEquivariant("maps are not composable".into()));
        }
        Ok(EquivariantMap {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&x| g.map[x]).collect(),
        })
    }

    /// For each source orbit, the target orbit containing its image.
    pub fn orbit_map(&self, src: &KTheory, tgt: &KTheory) -> Vec<usize> {
        src.orbits().iter().map(|o| tgt.orbit_of_point(self.map[o.id()])).collect()
    }
}

/// `f^*`: restriction along the stabilizer inclusions.
pub fn pullback(f: &EquivariantMap, src: &KTheory, tgt: &KTheory, a: &KClass) -> Result<KClass> {
    tgt.check(a)?;
    let entries = f
        .orbit_map(src, tgt)
        .into_iter()
        .zip(src.rings())
        .map(|(j, ring)| restriction_ab(ring, &a.entries[j]))
        .collect::<Result<_>>()?;
    Ok(KClass { entries })
}

/// `f_*`: induction along the stabilizer inclusions, summed over fibres.
pub fn pushforward(f: &EquivariantMap, src: &KTheory, tgt: &KTheory, a: &KClass) -> Result<KClass> {
    src.check(a)?;
    let mut out = tgt.zero();
    for (e, j) in a.entries.iter().zip(f.orbit_map(src, tgt)) {
        out.entries[j] = out.entries[j].add(&induction_ab(&tgt.rings()[j], e)?)?;
    }
    Ok(out)
}

/// A Galois cover `X' -> X = X'/Gamma`: `Gamma` acts on the points of `X'`
/// commuting with `G` and preserving the map.
#[derive(Clone, Debug)]
pub struct GaloisCover {
    pub map: EquivariantMap,
    pub gamma: GSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub is_cover: bool,
    pub pullback_iso: bool,
    pub pushforward_iso: bool,
}

impl CoverReport {
    pub fn pass(&self) -> bool {
        self.is_cover && self.pullback_iso && self.pushforward_iso
    }
}

impl GaloisCover {
    /// `BG` covered by a point: `X' = G` acted on by translation from both
    /// sides, `X` a single point.
    pub fn classifying(group: &FinAbGroup) -> Result<Self> {
        let cover = GSet::coset_space(&Subgroup::trivial(group));
        let gamma = cover.clone();
        let map = EquivariantMap::new(cover.clone(), GSet::trivial(group, 1), vec![0; cover.points])?;
        Ok(GaloisCover { map, gamma })
    }

    fn validate(&self) -> Result<()> {
        let src = self.map.source();
        if self.gamma.points != src.points {
            return Err(Error::NotACover("Gamma acts on a different set".into()));
        }
        for p in &src.action {
            for q in &self.gamma.action {
                if compose(p, q) != compose(q, p) {
                    return Err(Error::NotACover("Gamma and G actions do not commute".into()));
                }
            }
        }
        if !self.gamma.is_free() {
            return Err(Error::NotACover("Gamma does not act freely".into()));
        }
        for o in self.gamma.orbits() {
            let y = self.map.map[o.id()];
            if o.points.iter().any(|&x| self.map.map[x] != y) {
                return Err(Error::NotACover("the map is not Gamma-invariant".into()));
            }
        }
        let gamma_orbits = self.gamma.orbits().len();
        let mut image: Vec<usize> = self.map.map.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != self.map.target().points || gamma_orbits != image.len() {
            return Err(Error::NotACover("fibres are not the Gamma-orbits".into()));
        }
        Ok(())
    }

    /// Checks, in geometric coordinates, that `pi^*` maps `K_geom X`
    /// isomorphically onto the `Gamma`-invariants of `K_geom X'`, and that
    /// `pi_*` induces an isomorphism from the `Gamma`-coinvariants.
    pub fn check(&self) -> Result<CoverReport> {
        if self.validate().is_err() {
            return Ok(CoverReport { is_cover: false, pullback_iso: false, pushforward_iso: false });
        }
        let src = KTheory::new(self.map.source());
        let tgt = KTheory::new(self.map.target());
        let (m, n) = (src.orbits().len(), tgt.orbits().len());

        // Gamma permutes the G-orbits of X'
        let gamma_perms: Vec<Vec<usize>> = self
            .gamma
            .action
            .iter()
            .map(|p| src.orbits().iter().map(|o| src.orbit_of_point(p[o.id()])).collect())
            .collect();
        let mut gamma_class = vec![usize::MAX; m];
        let mut classes = 0;
        for i in 0..m {
            if gamma_class[i] != usize::MAX {
                continue;
            }
            let mut stack = vec![i];
            gamma_class[i] = classes;
            while let Some(j) = stack.pop() {
                for p in &gamma_perms {
                    if gamma_class[p[j]] == usize::MAX {
                        gamma_class[p[j]] = classes;
                        stack.push(p[j]);
                    }
                }
            }
            classes += 1;
        }

        // pi^* in geometric coordinates
        let mut up = Matrix::zeros(m, n);
        for j in 0..n {
            let e = tgt.geometric_class(&unit_vector(n, j))?;
            let pulled = pullback(&self.map, &src, &tgt, &e)?;
            let geo = src.geometric_part(&pulled)?;
            if geo != pulled {
                return Ok(CoverReport { is_cover: true, pullback_iso: false, pushforward_iso: false });
            }
            for (i, q) in src.moduli_pushforward(&pulled)?.into_iter().enumerate() {
                up[(i, j)] = q;
            }
        }
        let invariant = (0..n).all(|j| {
            (0..m).all(|i| gamma_perms.iter().all(|p| up[(p[i], j)] == up[(i, j)]))
        });
        let pullback_iso = invariant && up.rank() == n && n == classes;

        // pi_* in geometric coordinates, then through the coinvariants
        let mut down = Matrix::zeros(n, m);
        for i in 0..m {
            let e = src.geometric_class(&unit_vector(m, i))?;
            let pushed = pushforward(&self.map, &src, &tgt, &e)?;
            for (j, q) in tgt.moduli_pushforward(&pushed)?.into_iter().enumerate() {
                down[(j, i)] = q;
            }
        }
        let factors = (0..m).all(|i| {
            (0..n).all(|j| gamma_perms.iter().all(|p| down[(j, p[i])] == down[(j, i)]))
        });
        let mut coinv = Matrix::zeros(n, classes);
        for i in 0..m {
            for j in 0..n {
                coinv[(j, gamma_class[i])] = down[(j, i)].clone();
            }
        }
        let pushforward_iso = factors && coinv.rank() == n && n == classes;
        Ok(CoverReport { is_cover: true, pullback_iso, pushforward_iso })
    }
}

pub(crate) fn unit_vector(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Character;
    use crate::rational::{frac, q};

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    fn b_mu2() -> GSet {
        GSet::trivial(&z(2), 1)
    }

    fn free_z2() -> GSet {
        GSet::new(z(2), 2, vec![vec![1, 0]]).unwrap()
    }

    fn chi(k: &KTheory, i: usize, c: &[u64]) -> GroupAlgebraElem {
        GroupAlgebraElem::character(&k.rings()[i], &Character(c.to_vec())).unwrap()
    }

    #[test]
    fn rejects_bad_actions() {
        assert!(GSet::new(z(2), 3, vec![vec![1, 2, 0]]).is_err());
        assert!(GSet::new(z(2), 2, vec![vec![0, 0]]).is_err());
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        assert!(GSet::new(g, 3, vec![vec![1, 0, 2], vec![0, 2, 1]]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = free_z2().orbits();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].stabilizer.order(), 1);
        let o = b_mu2().orbits();
        assert_eq!(o[0].stabilizer.order(), 2);
        // Z/4 acting on 2 points through Z/4 -> Z/2
        let o = GSet::new(z(4), 2, vec![vec![1, 0]]).unwrap().orbits();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].stabilizer.order(), 2);
        assert!(o[0].stabilizer.contains(&GroupElement(vec![2])));
        for orb in GSet::coset_space(&Subgroup::trivial(&z(6))).orbits() {
            assert_eq!(orb.points.len() as u64 * orb.stabilizer.order(), 6);
        }
    }

    #[test]
    fn fixed_locus_examples() {
        let x = free_z2();
        assert_eq!(x.fixed_locus(&GroupElement(vec![0])).unwrap(), x);
        assert_eq!(x.fixed_locus(&GroupElement(vec![1])).unwrap().points(), 0);
        let t = GSet::trivial(&z(3), 2);
        assert_eq!(t.fixed_locus(&GroupElement(vec![1])).unwrap(), t);
    }

    #[test]
    fn k_dimensions() {
        assert_eq!(KTheory::new(&b_mu2()).dim(), 2);
        assert_eq!(KTheory::new(&free_z2()).dim(), 1);
        assert_eq!(KTheory::new(&GSet::trivial(&z(2), 2)).dim(), 4);
    }

    #[test]
    fn pull_and_push_along_free_to_point() {
        let f = EquivariantMap::new(free_z2(), b_mu2(), vec![0, 0]).unwrap();
        let (src, tgt) = (KTheory::new(f.source()), KTheory::new(f.target()));
        let c = tgt.on_orbit(0, chi(&tgt, 0, &[1])).unwrap();
        assert_eq!(pullback(&f, &src, &tgt, &c).unwrap(), src.one());
        let pushed = pushforward(&f, &src, &tgt, &src.one()).unwrap();
        let regular = GroupAlgebraElem::regular(&tgt.rings()[0]);
        assert_eq!(pushed.entries[0], regular);
    }

    #[test]
    fn fold_sums() {
        let x = GSet::trivial(&z(2), 2);
        let f = EquivariantMap::new(x, b_mu2(), vec![0, 0]).unwrap();
        let (src, tgt) = (KTheory::new(f.source()), KTheory::new(f.target()));
        let a = KClass { entries: vec![chi(&src, 0, &[1]), GroupAlgebraElem::one(&src.rings()[1])] };
        let pushed = pushforward(&f, &src, &tgt, &a).unwrap();
        assert_eq!(tgt.to_vector(&pushed), vec![q(1), q(1)]);
    }

    #[test]
    fn decomposition_on_b_mu2() {
        let k = KTheory::new(&b_mu2());
        let one = k.one();
        let geo = k.geometric_part(&one).unwrap();
        let alg = k.algebraic_part(&one).unwrap();
        assert_eq!(k.to_vector(&geo), vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(k.to_vector(&alg), vec![frac(1, 2), frac(-1, 2)]);
        assert_eq!(k.moduli_pushforward(&geo).unwrap(), vec![q(1)]);
        assert_eq!(k.geometric_class(&[q(1)]).unwrap(), geo);
        let zero = k.zero();
        assert_eq!(k.geometric_part(&zero).unwrap(), zero);
        assert_eq!(k.algebraic_part(&zero).unwrap(), zero);
    }

    #[test]
    fn free_actions_have_no_algebraic_part() {
        let x = free_z2();
        let k = KTheory::new(&x);
        let sigma = DualCyclicSubgroup::generated_by(x.group(), &GroupElement(vec![1]));
        assert!(k.localize(&k.one(), &sigma).unwrap().entries[0].is_zero());
        assert_eq!(k.algebraic_part(&k.one()).unwrap(), k.zero());
    }

    #[test]
    fn idempotent_localizes_to_itself() {
        let k = KTheory::new(&GSet::trivial(&z(6), 1));
        for sigma in z(6).dual_cyclic_subgroups() {
            let e = k.on_orbit(0, idempotent(&k.rings()[0], &sigma).unwrap()).unwrap();
            assert_eq!(k.localize(&e, &sigma).unwrap(), e);
        }
    }

    #[test]
    fn galois_cover_examples() {
        for n in [1, 2, 3, 4, 6] {
            let cover = GaloisCover::classifying(&z(n)).unwrap();
            assert!(cover.check().unwrap().pass(), "n = {n}");
        }
        // a Z/2-cover of two trivial points, Gamma swapping sheets
        let g = z(2);
        let upstairs = GSet::trivial(&g, 4);
        let map = EquivariantMap::new(upstairs, GSet::trivial(&g, 2), vec![0, 0, 1, 1]).unwrap();
        let gamma = GSet::new(z(2), 4, vec![vec![1, 0, 3, 2]]).unwrap();
        assert!(GaloisCover { map: map.clone(), gamma }.check().unwrap().pass());
        // not a cover: Gamma orbits smaller than the fibres
        let gamma = GSet::trivial(&z(2), 4);
        assert!(!GaloisCover { map, gamma }.check().unwrap().pass());
    }

    #[test]
    fn json_round_trip() {
        let x = GSet::new(z(4), 2, vec![vec![1, 0]]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"group":{"cyclic_factors":[4]},"points":2,"action":{"0":[1,0]}}"#);
        assert_eq!(serde_json::from_str::<GSet>(&s).unwrap(), x);
        let k = KTheory::new(&b_mu2());
        let a = k.geometric_part(&k.one()).unwrap();
        assert_eq!(k.class_from_json(&k.class_to_json(&a)).unwrap(), a);
    }
}
