//! Buchberger's algorithm for submodules of a free module `S^r`.
//!
//! Homogeneous inputs are processed degree by degree (normal strategy), with
//! S-pairs of a degree handled before the inputs of that degree. An input
//! that still has a nonzero normal form when it is reached is a minimal
//! generator of the submodule; this is how minimal generating sets and
//! minimal presentations are extracted.

use std::sync::Arc;

use crate::monomial::Monomial;
use crate::scalar::Field;
use crate::vector::{ModVec, ModuleOrder, Term};

/// A free module `S^r` over the ambient polynomial ring.
#[derive(Clone, Debug)]
pub struct Space {
    pub field: Field,
    pub nvars: usize,
    pub weights: Arc<[u32]>,
    pub comp_degrees: Vec<i64>,
    pub order: ModuleOrder,
}

impl Space {
    pub fn rank(&self) -> usize {
        self.comp_degrees.len()
    }

    pub fn with_order(&self, order: ModuleOrder) -> Space {
        Space {
            order,
            ..self.clone()
        }
    }

    pub fn with_degrees(&self, comp_degrees: Vec<i64>) -> Space {
        Space {
            comp_degrees,
            ..self.clone()
        }
    }

    pub fn degree_of(&self, v: &ModVec) -> Option<i64> {
        v.lead_degree(&self.weights, &self.comp_degrees)
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub vec: ModVec,
    /// Counted inputs are candidates for the minimal generating set; the
    /// others (e.g. quotient-ideal multiples) only enlarge the submodule.
    pub counted: bool,
}

impl Input {
    pub fn counted(vec: ModVec) -> Input {
        Input { vec, counted: true }
    }
    pub fn extra(vec: ModVec) -> Input {
        Input {
            vec,
            counted: false,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    deg: i64,
    lcm: Monomial,
    comp: usize,
    i: usize,
    j: usize,
}

pub struct Engine {
    sp: Space,
    basis: Vec<ModVec>,
    by_comp: Vec<Vec<usize>>,
    /// Pending pairs, grouped by component.
    pairs: Vec<Vec<Pair>>,
    /// Smallest degree of a pair created since the last reset.
    fresh: i64,
    /// Positions (in the counted-input numbering) of minimal generators.
    minimal: Vec<usize>,
}

pub struct Outcome {
    /// Reduced Gröbner basis, sorted by increasing leading term.
    pub basis: Vec<ModVec>,
    /// Indices (among counted inputs, in the caller's order) of a minimal
    /// generating set.
    pub minimal: Vec<usize>,
}

impl Engine {
    pub fn new(sp: Space) -> Engine {
        let r = sp.rank();
        Engine {
            sp,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); r],
            pairs: vec![Vec::new(); r],
            fresh: i64::MAX,
            minimal: Vec::new(),
        }
    }

    /// Complete Gröbner basis computation over the given inputs.
    pub fn run(sp: Space, inputs: Vec<Input>) -> Outcome {
        let mut e = Engine::new(sp);
        e.process(inputs);
        Outcome {
            basis: e.reduced_basis(),
            minimal: e.minimal,
        }
    }

    pub fn process(&mut self, inputs: Vec<Input>) {
        // (degree, extra-before-counted, index)
        let mut counted_idx = 0usize;
        let mut pending: Vec<(i64, bool, usize, usize, ModVec)> = Vec::new();
        for (k, inp) in inputs.into_iter().enumerate() {
            let cidx = if inp.counted {
                counted_idx += 1;
                counted_idx - 1
            } else {
                usize::MAX
            };
            if inp.vec.is_zero() {
                continue;
            }
            let v = self.sorted(inp.vec);
            let d = self.max_degree(&v);
            pending.push((d, inp.counted, k, cidx, v));
        }
        pending.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        let mut pending = pending.into_iter().peekable();

        loop {
            let next_pair = self.pairs.iter().flatten().map(|p| p.deg).min();
            let next_input = pending.peek().map(|p| p.0);
            let d = match (next_pair, next_input) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if next_pair == Some(d) {
                let order = self.sp.order.mono;
                let mut batch: Vec<Pair> = Vec::new();
                for list in self.pairs.iter_mut() {
                    if list.iter().any(|p| p.deg == d) {
                        let (now, later): (Vec<Pair>, Vec<Pair>) =
                            std::mem::take(list).into_iter().partition(|p| p.deg == d);
                        *list = later;
                        batch.extend(now);
                    }
                }
                batch.sort_by(|a, b| {
                    order
                        .cmp(&a.lcm, &b.lcm)
                        .then(a.comp.cmp(&b.comp))
                        .then(a.i.cmp(&b.i))
                        .then(a.j.cmp(&b.j))
                });
                for p in batch {
                    let s = self.s_vector(&p);
                    let r = self.reduce(s, false);
                    if !r.is_zero() {
                        self.insert(r.monic());
                    }
                }
                continue;
            }
            self.fresh = i64::MAX;
            while let Some(&(dd, _, _, _, _)) = pending.peek() {
                if dd != d {
                    break;
                }
                let (_, counted, _, cidx, v) = pending.next().unwrap();
                let r = self.reduce(v, false);
                if !r.is_zero() {
                    if counted {
                        self.minimal.push(cidx);
                    }
                    self.insert(r.monic());
                }
                // pairs of degree d created here can only arise from
                // non-homogeneous input; the outer loop picks them up
                if self.fresh <= d {
                    break;
                }
            }
        }
    }

    fn sorted(&self, mut v: ModVec) -> ModVec {
        v.resort(&self.sp.order);
        v
    }

    fn max_degree(&self, v: &ModVec) -> i64 {
        v.terms
            .iter()
            .map(|t| t.mono.weighted_degree(&self.sp.weights) + self.sp.comp_degrees[t.comp])
            .max()
            .unwrap_or(0)
    }

    fn pair_degree(&self, lcm: &Monomial, comp: usize, i: usize, j: usize) -> i64 {
        // sugar: for homogeneous input this is the degree of the S-vector
        let w = &self.sp.weights;
        let cd = self.sp.comp_degrees[comp];
        let di = self.max_degree(&self.basis[i]) - self.basis[i].lead().unwrap().mono.weighted_degree(w) - cd;
        let dj = self.max_degree(&self.basis[j]) - self.basis[j].lead().unwrap().mono.weighted_degree(w) - cd;
        lcm.weighted_degree(w) + cd + di.max(dj)
    }

    fn s_vector(&self, p: &Pair) -> ModVec {
        let gi = &self.basis[p.i];
        let gj = &self.basis[p.j];
        let li = &gi.lead().unwrap().mono;
        let lj = &gj.lead().unwrap().mono;
        let one = self.sp.field.one();
        let a = gi.mul_term(&one, &li.quotient_of(&p.lcm));
        a.axpy(&(-&one), &lj.quotient_of(&p.lcm), gj, &self.sp.order)
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.by_comp
            .get(t.comp)?
            .iter()
            .copied()
            .find(|&k| self.basis[k].lead().unwrap().mono.divides(&t.mono))
    }

    /// Reduce `v` by the current basis: top reduction only, or a full normal
    /// form when `full` is set.
    pub fn reduce(&self, v: ModVec, full: bool) -> ModVec {
        let ord = self.sp.order;
        let mut done: Vec<Term> = Vec::new();
        let mut rest = v;
        loop {
            let mut hit = None;
            for (pos, t) in rest.terms.iter().enumerate() {
                if let Some(k) = self.find_reducer(t) {
                    hit = Some((pos, k));
                    break;
                }
                if !full {
                    break;
                }
            }
            match hit {
                None => {
                    if full {
                        done.append(&mut rest.terms);
                    } else {
                        done.extend(rest.terms.drain(..));
                    }
                    break;
                }
                Some((pos, k)) => {
                    if pos > 0 {
                        done.extend(rest.terms.drain(..pos));
                    }
                    let t = &rest.terms[0];
                    let g = &self.basis[k];
                    let q = g.lead().unwrap().mono.quotient_of(&t.mono);
                    let c = -&t.coef;
                    rest = rest.axpy(&c, &q, g, &ord);
                }
            }
        }
        ModVec { terms: done }
    }

    fn insert(&mut self, h: ModVec) {
        let idx = self.basis.len();
        let lt = h.lead().unwrap().clone();
        let c = lt.comp;
        let rank1 = self.sp.rank() == 1;
        self.basis.push(h);

        // Gebauer–Möller update.
        let mut cands: Vec<(Monomial, usize, bool)> = self.by_comp[c]
            .iter()
            .map(|&i| {
                let li = &self.basis[i].lead().unwrap().mono;
                (li.lcm(&lt.mono), i, rank1 && li.gcd_is_one(&lt.mono))
            })
            .collect();

        // old pairs (i, j) made redundant by h
        let basis = &self.basis;
        self.pairs[c].retain(|p| {
            if !lt.mono.divides(&p.lcm) {
                return true;
            }
            let li = &basis[p.i].lead().unwrap().mono;
            let lj = &basis[p.j].lead().unwrap().mono;
            li.lcm(&lt.mono) == p.lcm || lj.lcm(&lt.mono) == p.lcm
        });

        // criterion M: drop pairs whose lcm is properly divisible by another's
        let snapshot: Vec<Monomial> = cands.iter().map(|x| x.0.clone()).collect();
        cands.retain(|(l, _, _)| !snapshot.iter().any(|o| o != l && o.divides(l)));
        // criterion F and product criterion
        let mut kept: Vec<(Monomial, usize, bool)> = Vec::new();
        let mut groups: Vec<(Monomial, Vec<(usize, bool)>)> = Vec::new();
        for (l, i, cop) in cands {
            match groups.iter_mut().find(|g| g.0 == l) {
                Some(g) => g.1.push((i, cop)),
                None => groups.push((l, vec![(i, cop)])),
            }
        }
        for (l, members) in groups {
            if members.iter().any(|m| m.1) {
                continue;
            }
            kept.push((l, members[0].0, false));
        }
        for (l, i, _) in kept {
            let deg = self.pair_degree(&l, c, i, idx);
            self.fresh = self.fresh.min(deg);
            self.pairs[c].push(Pair {
                deg,
                lcm: l,
                comp: c,
                i,
                j: idx,
            });
        }
        self.by_comp[c].push(idx);
    }

    /// Interreduced basis with monic leads, sorted by increasing lead term.
    pub fn reduced_basis(&self) -> Vec<ModVec> {
        let ord = self.sp.order;
        let n = self.basis.len();
        let mut keep = Vec::new();
        for i in 0..n {
            let li = self.basis[i].lead().unwrap();
            let redundant = self.by_comp[li.comp].iter().any(|&j| {
                if j == i {
                    return false;
                }
                let lj = self.basis[j].lead().unwrap();
                lj.mono.divides(&li.mono)
                    && (lj.mono != li.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut sub = Engine::new(self.sp.clone());
        for &i in &keep {
            sub.by_comp[self.basis[i].lead().unwrap().comp].push(sub.basis.len());
            sub.basis.push(self.basis[i].clone());
        }
        let mut out: Vec<ModVec> = Vec::with_capacity(keep.len());
        for k in 0..sub.basis.len() {
            let g = &sub.basis[k];
            let head = ModVec {
                terms: vec![g.terms[0].clone()],
            };
            let tail = ModVec {
                terms: g.terms[1..].to_vec(),
            };
            let tail = sub.reduce(tail, true);
            out.push(head.add(&tail, &ord).monic());
        }
        out.sort_by(|a, b| ord.cmp_terms(a.lead().unwrap(), b.lead().unwrap()));
        out
    }
}

/// A finished Gröbner basis usable for normal forms.
#[derive(Clone, Debug)]
pub struct Basis {
    pub space: Space,
    pub elems: Vec<ModVec>,
    by_comp: Vec<Vec<usize>>,
}

impl Basis {
    pub fn new(space: Space, elems: Vec<ModVec>) -> Basis {
        let mut by_comp = vec![Vec::new(); space.rank()];
        for (k, g) in elems.iter().enumerate() {
            by_comp[g.lead().unwrap().comp].push(k);
        }
        Basis {
            space,
            elems,
            by_comp,
        }
    }

    pub fn compute(space: Space, gens: Vec<ModVec>) -> Basis {
        let out = Engine::run(space.clone(), gens.into_iter().map(Input::counted).collect());
        Basis::new(space, out.basis)
    }

    pub fn normal_form(&self, v: &ModVec) -> ModVec {
        let ord = self.space.order;
        let mut v = v.clone();
        v.resort(&ord);
        let mut done: Vec<Term> = Vec::new();
        let mut rest = v;
        loop {
            let mut hit = None;
            for (pos, t) in rest.terms.iter().enumerate() {
                if let Some(k) = self.by_comp.get(t.comp).and_then(|l| {
                    l.iter()
                        .copied()
                        .find(|&k| self.elems[k].lead().unwrap().mono.divides(&t.mono))
                }) {
                    hit = Some((pos, k));
                    break;
                }
            }
            match hit {
                None => {
                    done.append(&mut rest.terms);
                    break;
                }
                Some((pos, k)) => {
                    done.extend(rest.terms.drain(..pos));
                    let t = &rest.terms[0];
                    let g = &self.elems[k];
                    let q = g.lead().unwrap().mono.quotient_of(&t.mono);
                    let c = -&t.coef;
                    rest = rest.axpy(&c, &q, g, &ord);
                }
            }
        }
        ModVec { terms: done }
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Leading monomials grouped by component.
    pub fn lead_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.space.rank()];
        for g in &self.elems {
            let t = g.lead().unwrap();
            out[t.comp].push(t.mono.clone());
        }
        out
    }
}
