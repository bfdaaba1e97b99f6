//! Tangle Markov chains: transition weights between strands, Green's
//! matrices, contraction of subregions and brute-force cycle oracles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::braid::{full_twist_limit, quantum_integer};
use crate::diagram::{add_crossing_weights, Traced, UprightDiagram};
use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, Matrix, PolyMatrix, RatFun, RatMatrix};

/// Largest number of states on cycles that the exhaustive enumerators
/// accept.
pub const ENUMERATION_LIMIT: usize = 16;

/// Labelled states with formal transition weights `a(s, t)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ChainRepr", into = "ChainRepr")]
pub struct TangleChain {
    labels: Vec<usize>,
    index: BTreeMap<usize, usize>,
    a: RatMatrix,
    entry: Option<usize>,
    exit: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    states: Vec<usize>,
    entry: Option<usize>,
    exit: Option<usize>,
    transition: Vec<Vec<RatFun>>,
}

impl TryFrom<ChainRepr> for TangleChain {
    type Error = Error;
    fn try_from(r: ChainRepr) -> Result<Self> {
        TangleChain::new(r.states, RatMatrix::from_rows(r.transition)?, r.entry, r.exit)
    }
}

impl From<TangleChain> for ChainRepr {
    fn from(c: TangleChain) -> Self {
        let transition = (0..c.len()).map(|i| c.a.row(i).to_vec()).collect();
        ChainRepr { states: c.labels, entry: c.entry, exit: c.exit, transition }
    }
}

/// A subregion of a chain: the strands entering it, the strands wholly
/// inside it, and the strands leaving it. Inputs and outputs may overlap.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Region {
    pub inputs: Vec<usize>,
    pub interior: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl Region {
    /// The region of a layered tangle spanning layers `from..to`.
    pub fn of_layers(traced: &Traced, from: usize, to: usize) -> Self {
        let (inputs, interior, outputs) = traced.region(from, to);
        Self { inputs, interior, outputs }
    }
}

/// A set of cycles, each stored from its lexicographically least rotation,
/// sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Multicycle {
    cycles: Vec<Vec<usize>>,
}

impl Multicycle {
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        let mut cycles: Vec<Vec<usize>> = cycles.into_iter().map(least_rotation).collect();
        cycles.sort();
        Self { cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

fn least_rotation(c: Vec<usize>) -> Vec<usize> {
    (0..c.len())
        .map(|k| {
            let mut r = c[k..].to_vec();
            r.extend_from_slice(&c[..k]);
            r
        })
        .min()
        .unwrap_or_default()
}

impl TangleChain {
    pub fn new(labels: Vec<usize>, a: RatMatrix, entry: Option<usize>, exit: Option<usize>) -> Result<Self> {
        if a.rows() != labels.len() || !a.is_square() {
            return Err(Error::Shape(format!("{} labels for a {}x{} matrix", labels.len(), a.rows(), a.cols())));
        }
        let index: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        if index.len() != labels.len() {
            return Err(Error::InvalidRegion("repeated state label".into()));
        }
        for l in [entry, exit].into_iter().flatten() {
            if !index.contains_key(&l) {
                return Err(Error::InvalidRegion(format!("boundary state {l} is not a state")));
            }
        }
        Ok(Self { labels, index, a, entry, exit })
    }

    pub fn from_diagram(d: &UprightDiagram) -> Result<Self> {
        let a = d.transition_matrix()?.to_rat();
        Self::new((1..=d.strands).collect(), a, Some(d.entry), Some(d.exit))
    }

    /// Crossings contribute their usual weights; a vertex of width `n`
    /// sends its input at any position to its output at offset `q` with
    /// weight `T^q / (1 + T + ⋯ + T^{n−1})`.
    pub fn from_traced(tr: &Traced) -> Result<Self> {
        let n = tr.strands;
        let mut poly = PolyMatrix::zeros(n, n);
        for c in &tr.crossings {
            add_crossing_weights(&mut poly, c, |l| l - 1);
        }
        let mut a = poly.to_rat();
        for v in &tr.vertices {
            let den = quantum_integer(v.outputs.len());
            for &s in &v.inputs {
                for (q, &t) in v.outputs.iter().enumerate() {
                    a.set(s - 1, t - 1, RatFun::new(LaurentPoly::t_pow(q as i64), den.clone())?);
                }
            }
        }
        Self::new((1..=n).collect(), a, Some(tr.entry), Some(tr.exit))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn entry(&self) -> Option<usize> {
        self.entry
    }

    pub fn exit(&self) -> Option<usize> {
        self.exit
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn index_of(&self, label: usize) -> Result<usize> {
        self.index.get(&label).copied().ok_or_else(|| Error::InvalidRegion(format!("unknown state {label}")))
    }

    /// `a(s, t)` by label.
    pub fn weight(&self, s: usize, t: usize) -> Result<&RatFun> {
        Ok(self.a.get(self.index_of(s)?, self.index_of(t)?))
    }

    fn successors(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| !self.a.get(k, j).is_zero())
    }

    /// `det(I − A)`.
    pub fn determinant(&self) -> Result<RatFun> {
        self.a.identity_minus()?.det()
    }

    /// `G = (I − A)⁻¹`, indexed like the state list.
    pub fn greens_matrix(&self) -> Result<RatMatrix> {
        self.a.identity_minus()?.inverse()
    }

    /// `g(s, t)` by label.
    pub fn green(&self, s: usize, t: usize) -> Result<RatFun> {
        let g = self.greens_matrix()?;
        Ok(g.get(self.index_of(s)?, self.index_of(t)?).clone())
    }

    fn check_region(&self, r: &Region) -> Result<(BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>)> {
        let idx = |ls: &[usize]| ls.iter().map(|&l| self.index_of(l)).collect::<Result<BTreeSet<_>>>();
        let (ins, mid, outs) = (idx(&r.inputs)?, idx(&r.interior)?, idx(&r.outputs)?);
        if let Some(&k) = mid.iter().find(|k| ins.contains(k) || outs.contains(k)) {
            return Err(Error::InvalidRegion(format!("state {} is both interior and boundary", self.labels[k])));
        }
        for &x in &mid {
            for y in 0..self.len() {
                if !self.a.get(y, x).is_zero() && !(ins.contains(&y) || mid.contains(&y)) {
                    return Err(Error::InvalidRegion(format!(
                        "state {} enters the region interior at {}",
                        self.labels[y], self.labels[x]
                    )));
                }
                if !self.a.get(x, y).is_zero() && !(outs.contains(&y) || mid.contains(&y)) {
                    return Err(Error::InvalidRegion(format!(
                        "interior state {} leaks to {}",
                        self.labels[x], self.labels[y]
                    )));
                }
            }
        }
        Ok((ins, mid, outs))
    }

    /// Replaces the region by direct input-to-output weights.
    ///
    /// The weight from input `s` to output `t` is the sum over walks from
    /// `s` to `t` whose intermediate states are all interior:
    /// `a(s,t) + a(s,X)·(I − A_XX)⁻¹·a(X,t)` with `X` the interior. Interior
    /// states are removed; every other weight is kept.
    pub fn contract(&self, r: &Region) -> Result<TangleChain> {
        let (ins, mid, outs) = self.check_region(r)?;
        let mid: Vec<usize> = mid.into_iter().collect();
        let keep: Vec<usize> = (0..self.len()).filter(|k| mid.binary_search(k).is_err()).collect();
        let block = if mid.is_empty() {
            RatMatrix::identity(1)
        } else {
            self.a.select(&mid, &mid).identity_minus()?.inverse()?
        };
        let through = |s: usize, t: usize| -> RatFun {
            let mut w = self.a.get(s, t).clone();
            if mid.is_empty() {
                return w;
            }
            for (x, &mx) in mid.iter().enumerate() {
                let asx = self.a.get(s, mx);
                if asx.is_zero() {
                    continue;
                }
                for (y, &my) in mid.iter().enumerate() {
                    let ayt = self.a.get(my, t);
                    if !ayt.is_zero() && !block.get(x, y).is_zero() {
                        w = w + &(asx * block.get(x, y) * ayt);
                    }
                }
            }
            w
        };
        let a = RatMatrix::from_fn(keep.len(), keep.len(), |i, j| {
            let (s, t) = (keep[i], keep[j]);
            if ins.contains(&s) && outs.contains(&t) {
                through(s, t)
            } else {
                self.a.get(s, t).clone()
            }
        });
        let labels = keep.iter().map(|&k| self.labels[k]).collect();
        TangleChain::new(labels, a, self.entry, self.exit)
    }

    /// A state of the interior lying on a cycle of interior transitions.
    fn interior_cycle(&self, mid: &BTreeSet<usize>) -> Option<usize> {
        // Kahn's algorithm on the interior; leftovers lie on or after cycles,
        // and at least one of them lies on a cycle.
        let mut indeg: BTreeMap<usize, usize> = mid.iter().map(|&x| (x, 0)).collect();
        for &x in mid {
            for y in self.successors(x).filter(|y| mid.contains(y)) {
                *indeg.get_mut(&y).unwrap() += 1;
            }
        }
        let mut queue: Vec<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&x, _)| x).collect();
        while let Some(x) = queue.pop() {
            indeg.remove(&x);
            for y in self.successors(x).filter(|y| mid.contains(y)) {
                if let Some(d) = indeg.get_mut(&y) {
                    *d -= 1;
                    if *d == 0 {
                        queue.push(y);
                    }
                }
            }
        }
        indeg.keys().next().copied()
    }

    /// `(det(I − A), det(I − A'))` for the contraction `A'` by an acyclic
    /// region; the two agree.
    pub fn det_after_contract(&self, r: &Region) -> Result<(RatFun, RatFun)> {
        let (_, mid, _) = self.check_region(r)?;
        if let Some(x) = self.interior_cycle(&mid) {
            return Err(Error::RegionHasCycle(self.labels[x]));
        }
        let contracted = self.contract(r)?;
        Ok((self.determinant()?, contracted.determinant()?))
    }

    /// Partial sums `Σ_{walks s→t, length ≤ max_len} Π a` with `T = at`.
    pub fn walk_sum(&self, s: usize, t: usize, max_len: usize, at: f64) -> Result<f64> {
        let (s, t) = (self.index_of(s)?, self.index_of(t)?);
        let a: Matrix<f64> = self.a.eval_f64(at);
        let n = self.len();
        let mut v = vec![0.0; n];
        v[s] = 1.0;
        let mut total = v[t];
        for _ in 0..max_len {
            let mut next = vec![0.0; n];
            for (i, &vi) in v.iter().enumerate() {
                if vi == 0.0 {
                    continue;
                }
                for (j, nj) in next.iter_mut().enumerate() {
                    *nj += vi * a.get(i, j);
                }
            }
            v = next;
            total += v[t];
        }
        Ok(total)
    }

    /// Indices of states lying on some cycle.
    fn cyclic_states(&self) -> Vec<usize> {
        let n = self.len();
        // reach[i][j]: j reachable from i in one or more steps.
        let mut reach: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let mut r = vec![false; n];
                for j in self.successors(i) {
                    r[j] = true;
                }
                r
            })
            .collect();
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via = reach[k].clone();
                    for (r, v) in reach[i].iter_mut().zip(via) {
                        *r |= v;
                    }
                }
            }
        }
        (0..n).filter(|&i| reach[i][i]).collect()
    }

    /// All simple cycles, as index sequences starting at their least index.
    fn simple_cycles(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        fn dfs(
            chain: &TangleChain,
            allowed: &[bool],
            start: usize,
            path: &mut Vec<usize>,
            on: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().unwrap();
            for next in chain.successors(last) {
                if next == start {
                    out.push(path.clone());
                } else if next > start && allowed[next] && !on[next] {
                    on[next] = true;
                    path.push(next);
                    dfs(chain, allowed, start, path, on, out);
                    path.pop();
                    on[next] = false;
                }
            }
        }
        let mut out = Vec::new();
        let mut on = vec![false; self.len()];
        for s in (0..self.len()).filter(|&s| allowed[s]) {
            on[s] = true;
            dfs(self, allowed, s, &mut vec![s], &mut on, &mut out);
            on[s] = false;
        }
        out
    }

    fn guard(&self, states: usize) -> Result<()> {
        if states > ENUMERATION_LIMIT {
            Err(Error::SizeGuard { states, limit: ENUMERATION_LIMIT })
        } else {
            Ok(())
        }
    }

    fn cycle_weight(&self, c: &[usize]) -> RatFun {
        let mut w = RatFun::one();
        for k in 0..c.len() {
            w = w * self.a.get(c[k], c[(k + 1) % c.len()]);
        }
        w
    }

    /// Every set of pairwise vertex-disjoint simple cycles, the empty set
    /// included, in label form.
    ///
    /// Only states on some cycle count toward [`ENUMERATION_LIMIT`].
    pub fn simple_multicycles(&self) -> Result<Vec<Multicycle>> {
        let cyclic = self.cyclic_states();
        self.guard(cyclic.len())?;
        let mut allowed = vec![false; self.len()];
        for &k in &cyclic {
            allowed[k] = true;
        }
        let cycles = self.simple_cycles(&allowed);
        let masks: Vec<u64> = cycles.iter().map(|c| c.iter().fold(0u64, |m, &k| m | 1 << k)).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn pick(from: usize, used: u64, masks: &[u64], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(chosen.clone());
            for c in from..masks.len() {
                if masks[c] & used == 0 {
                    chosen.push(c);
                    pick(c + 1, used | masks[c], masks, chosen, out);
                    chosen.pop();
                }
            }
        }
        pick(0, 0, &masks, &mut chosen, &mut out);
        let mut multis: Vec<Multicycle> = out
            .into_iter()
            .map(|ids| {
                Multicycle::new(ids.into_iter().map(|c| cycles[c].iter().map(|&k| self.labels[k]).collect()).collect())
            })
            .collect();
        multis.sort();
        Ok(multis)
    }

    /// Signed weight `(−1)^{|q|} a_circ(q)` of a multicycle given in labels.
    pub fn signed_weight(&self, q: &Multicycle) -> Result<RatFun> {
        let mut w = RatFun::one();
        for c in q.cycles() {
            let idx = c.iter().map(|&l| self.index_of(l)).collect::<Result<Vec<_>>>()?;
            w = -(w * self.cycle_weight(&idx));
        }
        Ok(w)
    }

    /// `(Σ_q (−1)^{|q|} a_circ(q), det(I − A))` over simple multicycles.
    pub fn cartier_foata_check(&self) -> Result<(RatFun, RatFun)> {
        let mut sum = RatFun::zero();
        for q in self.simple_multicycles()? {
            sum = sum + self.signed_weight(&q)?;
        }
        Ok((sum, self.determinant()?))
    }

    /// Signed sum over multicycles whose repeated states all lie in
    /// `region` and that repeat at least one state. States outside the
    /// region appear at most once across the multicycle. The region must
    /// carry no cycle of its own; the sum then cancels to zero.
    pub fn bad_multicycle_sum(&self, region: &[usize]) -> Result<RatFun> {
        self.guard(self.len())?;
        let inside: BTreeSet<usize> = region.iter().map(|&l| self.index_of(l)).collect::<Result<_>>()?;
        if let Some(x) = self.interior_cycle(&inside) {
            return Err(Error::RegionHasCycle(self.labels[x]));
        }
        let in_u: Vec<bool> = (0..self.len()).map(|k| inside.contains(&k)).collect();
        let cycles = self.cycles_simple_outside(&in_u);
        // Per cycle: outside states used (bitmask), visits to region states.
        let info: Vec<(u64, Vec<u32>)> = cycles
            .iter()
            .map(|c| {
                let mut mask = 0u64;
                let mut visits = vec![0u32; self.len()];
                for &k in c {
                    if in_u[k] {
                        visits[k] += 1;
                    } else {
                        mask |= 1 << k;
                    }
                }
                (mask, visits)
            })
            .collect();
        let weights: Vec<RatFun> = cycles.iter().map(|c| self.cycle_weight(c)).collect();

        struct Search<'a> {
            info: &'a [(u64, Vec<u32>)],
            weights: &'a [RatFun],
            sum: RatFun,
        }
        fn go(s: &mut Search, from: usize, used: u64, visits: &mut Vec<u32>, sign_weight: RatFun) {
            if visits.iter().any(|&v| v >= 2) {
                s.sum = s.sum.clone() + &sign_weight;
            }
            for c in from..s.info.len() {
                let (mask, ref cv) = s.info[c];
                if mask & used != 0 {
                    continue;
                }
                for (v, d) in visits.iter_mut().zip(cv) {
                    *v += d;
                }
                let w = -(sign_weight.clone() * &s.weights[c]);
                go(s, c + 1, used | mask, visits, w);
                for (v, d) in visits.iter_mut().zip(cv) {
                    *v -= d;
                }
            }
        }
        let mut search = Search { info: &info, weights: &weights, sum: RatFun::zero() };
        go(&mut search, 0, 0, &mut vec![0; self.len()], RatFun::one());
        Ok(search.sum)
    }

    /// Closed walks that visit each state outside the region at most once
    /// and at least one such state, each listed once, starting from its
    /// least outside state.
    fn cycles_simple_outside(&self, in_u: &[bool]) -> Vec<Vec<usize>> {
        fn dfs(
            chain: &TangleChain,
            in_u: &[bool],
            start: usize,
            path: &mut Vec<usize>,
            on: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().unwrap();
            for next in chain.successors(last) {
                if next == start {
                    out.push(path.clone());
                } else if in_u[next] || (next > start && !on[next]) {
                    if !in_u[next] {
                        on[next] = true;
                    }
                    path.push(next);
                    dfs(chain, in_u, start, path, on, out);
                    path.pop();
                    if !in_u[next] {
                        on[next] = false;
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut on = vec![false; self.len()];
        for s in (0..self.len()).filter(|&s| !in_u[s]) {
            on[s] = true;
            dfs(self, in_u, s, &mut vec![s], &mut on, &mut out);
            on[s] = false;
        }
        out
    }
}

/// The chain fragment of an infinite twist vertex on `n` strands: inputs
/// `1..=n`, outputs `n+1..=2n`, with `a(i, n + j) = T^{j−1} / (1 + ⋯ + T^{n−1})`.
pub fn infinite_twist_vertex(n: usize) -> Result<TangleChain> {
    let limit = full_twist_limit(n)?;
    let a =
        RatMatrix::from_fn(
            2 * n,
            2 * n,
            |s, t| {
                if s < n && t >= n {
                    limit.get(s, t - n).clone()
                } else {
                    RatFun::zero()
                }
            },
        );
    TangleChain::new((1..=2 * n).collect(), a, None, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::diagram::braid_closure_to_long;

    fn chain(word: &[i32], n: usize) -> TangleChain {
        let d = braid_closure_to_long(&BraidWord::new(n, word.to_vec()).unwrap(), 1).unwrap();
        TangleChain::from_diagram(&d).unwrap()
    }

    fn poly(p: LaurentPoly) -> RatFun {
        RatFun::from_poly(p)
    }

    #[test]
    fn no_crossings_gives_identity_greens() {
        let c = TangleChain::from_diagram(&UprightDiagram::trivial()).unwrap();
        assert_eq!(c.greens_matrix().unwrap(), RatMatrix::identity(1));
    }

    #[test]
    fn kink_green() {
        let c = chain(&[1], 2);
        assert_eq!(c.green(1, 3).unwrap(), RatFun::one());
        assert_eq!(c.green(1, 2).unwrap(), poly(LaurentPoly::t()));
    }

    #[test]
    fn pass_through_region() {
        // s -> u -> t with u interior.
        let one = RatFun::one;
        let z = RatFun::zero;
        let a = RatMatrix::from_rows(vec![vec![z(), one(), z()], vec![z(), z(), one()], vec![z(), z(), z()]]).unwrap();
        let c = TangleChain::new(vec![1, 2, 3], a, Some(1), Some(3)).unwrap();
        let r = Region { inputs: vec![1], interior: vec![2], outputs: vec![3] };
        let d = c.contract(&r).unwrap();
        assert_eq!(d.labels(), &[1, 3]);
        assert_eq!(d.weight(1, 3).unwrap(), &RatFun::one());
    }

    #[test]
    fn leaking_region_rejected() {
        let c = chain(&[1, 1, 1], 2);
        let r = Region { inputs: vec![], interior: vec![3], outputs: vec![] };
        assert!(matches!(c.contract(&r), Err(Error::InvalidRegion(_))));
    }

    #[test]
    fn self_loop_multicycles() {
        let a = RatMatrix::from_rows(vec![vec![poly(LaurentPoly::t())]]).unwrap();
        let c = TangleChain::new(vec![7], a, None, None).unwrap();
        let qs = c.simple_multicycles().unwrap();
        assert_eq!(qs, vec![Multicycle::default(), Multicycle::new(vec![vec![7]])]);
        let (sum, det) = c.cartier_foata_check().unwrap();
        assert_eq!(sum, det);
        assert_eq!(sum, poly(LaurentPoly::one() - LaurentPoly::t()));
    }

    #[test]
    fn acyclic_chain_has_only_empty_multicycle() {
        let c = chain(&[1], 2);
        assert_eq!(c.simple_multicycles().unwrap(), vec![Multicycle::default()]);
        assert_eq!(c.cartier_foata_check().unwrap(), (RatFun::one(), RatFun::one()));
    }

    #[test]
    fn trefoil_cartier_foata() {
        let c = chain(&[1, 1, 1], 2);
        assert!(c.simple_multicycles().unwrap().len() > 1);
        let (sum, det) = c.cartier_foata_check().unwrap();
        assert_eq!(sum, det);
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(Multicycle::new(vec![vec![3, 1, 2]]).cycles(), &[vec![1, 2, 3]]);
        assert_eq!(Multicycle::new(vec![vec![5, 4], vec![2, 1]]).cycles(), &[vec![1, 2], vec![4, 5]]);
    }

    #[test]
    fn vertex_weights() {
        let v = infinite_twist_vertex(2).unwrap();
        let den = LaurentPoly::from_coeffs(0, &[1, 1]);
        assert_eq!(v.weight(1, 3).unwrap(), &RatFun::new(LaurentPoly::one(), den.clone()).unwrap());
        assert_eq!(v.weight(2, 4).unwrap(), &RatFun::new(LaurentPoly::t(), den).unwrap());
        assert!(infinite_twist_vertex(1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = infinite_twist_vertex(3).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<TangleChain>(&s).unwrap(), c);
    }
}
