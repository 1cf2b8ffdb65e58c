//! Instance generators: finite abelian groups, their subgroups, a fixed
//! catalog of small G-sets, and seeded random G-sets and equivariant maps.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{FinAbGroup, GroupElement, Subgroup};
use crate::equivariant::{EquivariantMap, GSet};

/// Every finite abelian group of order at most `max_order`, once each, in
/// invariant-factor form `n_1 | n_2 | ...`, ordered by order.
pub fn abelian_groups(max_order: u64) -> Vec<FinAbGroup> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let last = prefix.last().copied().unwrap_or(1);
        let mut next = if last == 1 { 2 } else { last };
        while product * next <= max {
            if next % last == 0 {
                prefix.push(next);
                extend(prefix, product * next, max, out);
                prefix.pop();
            }
            next += if last == 1 { 1 } else { last };
        }
    }
    let mut lists = vec![vec![1]];
    extend(&mut Vec::new(), 1, max_order, &mut lists);
    let mut groups: Vec<FinAbGroup> =
        lists.into_iter().map(|fs| FinAbGroup::new(fs).expect("nonzero factors")).collect();
    groups.sort_by_key(|g| (g.order(), g.factors().to_vec()));
    groups
}

/// All subgroups, as joins of cyclic subgroups, sorted by order.
pub fn subgroups(group: &FinAbGroup) -> Vec<Subgroup> {
    let cyclic: Vec<GroupElement> = group
        .dual_cyclic_subgroups()
        .into_iter()
        .map(|s| s.generator)
        .collect();
    let mut found: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let mut frontier = vec![Subgroup::trivial(group)];
    found.insert(frontier[0].elements().to_vec());
    while let Some(h) = frontier.pop() {
        for g in &cyclic {
            if h.contains(g) {
                continue;
            }
            let mut gens: Vec<GroupElement> = h.elements().to_vec();
            gens.push(g.clone());
            let joined = Subgroup::generated(group, &gens).expect("elements of G");
            if found.insert(joined.elements().to_vec()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|els| Subgroup::from_elements(group, els).expect("closed"))
        .collect();
    out.sort_by_key(|h| (h.order(), h.elements().to_vec()));
    out
}

/// A named G-set instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub set: GSet,
}

fn subgroup_label(h: &Subgroup) -> String {
    let gens: Vec<String> = h
        .group()
        .dual_cyclic_subgroups()
        .into_iter()
        .filter(|s| h.contains(&s.generator) && !s.is_trivial())
        .map(|s| format!("{:?}", s.generator.0))
        .collect();
    if gens.is_empty() {
        "1".to_string()
    } else {
        format!("<{}>", gens.join(","))
    }
}

/// For `G`: every transitive `G/H` with at most `max_points` points, each
/// `G/H` plus a fixed point when that fits, and two fixed points.
pub fn gset_catalog(group: &FinAbGroup, max_points: usize) -> Vec<Instance> {
    let pt = GSet::trivial(group, 1);
    let mut out = Vec::new();
    for h in subgroups(group) {
        let index = (group.order() / h.order()) as usize;
        if index > max_points {
            continue;
        }
        let x = GSet::coset_space(&h);
        let label = subgroup_label(&h);
        out.push(Instance { name: format!("{group} / {label}"), set: x.clone() });
        if index < max_points {
            out.push(Instance {
                name: format!("{group} / {label} + pt"),
                set: x.disjoint_union(&pt).expect("same group"),
            });
        }
    }
    if max_points >= 2 {
        out.push(Instance { name: format!("{group}: pt + pt"), set: GSet::trivial(group, 2) });
    }
    out
}

/// A disjoint union of random transitive pieces with at most `max_points`
/// points in total, randomly relabelled.
pub fn random_gset<R: Rng>(group: &FinAbGroup, max_points: usize, rng: &mut R) -> GSet {
    let subs = subgroups(group);
    let mut x = GSet::trivial(group, 0);
    loop {
        let room = max_points - x.points();
        let fitting: Vec<&Subgroup> =
            subs.iter().filter(|h| (group.order() / h.order()) as usize <= room).collect();
        if fitting.is_empty() || (x.points() > 0 && rng.gen_bool(0.35)) {
            break;
        }
        let h = fitting.choose(rng).expect("nonempty");
        x = x.disjoint_union(&GSet::coset_space(h)).expect("same group");
    }
    shuffle(&x, rng).0
}

fn shuffle<R: Rng>(x: &GSet, rng: &mut R) -> (GSet, Vec<usize>) {
    let mut perm: Vec<usize> = (0..x.points()).collect();
    perm.shuffle(rng);
    (x.relabel(&perm).expect("bijection"), perm)
}

/// A random equivariant map between random G-sets: each source piece is
/// `G/H'` for a random subgroup `H'` of the stabilizer of a random target
/// point, mapped by `g H' -> g y`.
pub fn random_map<R: Rng>(group: &FinAbGroup, max_points: usize, rng: &mut R) -> EquivariantMap {
    let target = random_gset(group, max_points, rng);
    let subs = subgroups(group);
    let mut source = GSet::trivial(group, 0);
    let mut map: Vec<usize> = Vec::new();
    loop {
        let y = rng.gen_range(0..target.points());
        let room = max_points - source.points();
        let options: Vec<&Subgroup> = subs
            .iter()
            .filter(|h| h.elements().iter().all(|g| target.act(g, y) == y))
            .filter(|h| (group.order() / h.order()) as usize <= room)
            .collect();
        if options.is_empty() || (source.points() > 0 && rng.gen_bool(0.35)) {
            break;
        }
        let piece = GSet::coset_space(options.choose(rng).expect("nonempty"));
        let mut piece_map = vec![usize::MAX; piece.points()];
        for g in group.elements() {
            piece_map[piece.act(&g, 0)] = target.act(&g, y);
        }
        source = source.disjoint_union(&piece).expect("same group");
        map.extend(piece_map);
    }
    let (source, perm) = shuffle(&source, rng);
    let mut relabelled = vec![0; map.len()];
    for (i, &p) in perm.iter().enumerate() {
        relabelled[p] = map[i];
    }
    EquivariantMap::new(source, target, relabelled).expect("equivariant by construction")
}

/// The catalog for every group of order at most `max_order`, followed by
/// `random_count` random G-sets distributed round-robin over the groups.
pub fn instance_suite<R: Rng>(
    max_order: u64,
    max_points: usize,
    random_count: usize,
    rng: &mut R,
) -> Vec<Instance> {
    let groups = abelian_groups(max_order);
    let mut out: Vec<Instance> = groups.iter().flat_map(|g| gset_catalog(g, max_points)).collect();
    for k in 0..random_count {
        let g = &groups[k % groups.len()];
        out.push(Instance { name: format!("{g}: random #{k}"), set: random_gset(g, max_points, rng) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_counts() {
        // number of abelian groups of each order 1..=16
        let counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        let groups = abelian_groups(16);
        for (n, &c) in (1..=16u64).zip(&counts) {
            assert_eq!(groups.iter().filter(|g| g.order() == n).count(), c, "order {n}");
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(&FinAbGroup::cyclic(12)).len(), 6);
        assert_eq!(subgroups(&FinAbGroup::new(vec![2, 2]).unwrap()).len(), 5);
        assert_eq!(subgroups(&FinAbGroup::new(vec![2, 2, 2]).unwrap()).len(), 16);
    }

    #[test]
    fn random_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in abelian_groups(12) {
            for _ in 0..20 {
                let x = random_gset(&g, 6, &mut rng);
                assert!(x.points() >= 1 && x.points() <= 6);
                let f = random_map(&g, 6, &mut rng);
                assert!(f.source().points() <= 6);
            }
        }
    }

    #[test]
    fn catalog_is_deterministic() {
        let a = instance_suite(8, 6, 10, &mut ChaCha8Rng::seed_from_u64(0));
        let b = instance_suite(8, 6, 10, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.set == y.set && x.name == y.name));
    }
}
