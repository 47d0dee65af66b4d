//! Flat axiom shapes over set variables and their CNF translation.

use crate::setcalc::{Atom, Clause, Level, Literal, PurelyUniversal, Tag, Var, VarPool};

/// Axiom over set variables. Level-1 arguments are concept or datatype
/// variables, level-3 arguments are abstract or concrete role variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `X ≡ ⊤`
    SetTop(Var),
    SetEquiv(Var, Var),
    SetSub(Var, Var),
    /// `X ≡ ¬Y` (absolute complement)
    SetNot(Var, Var),
    /// `X ≡ Y ⊔ Z`
    SetOr(Var, Var, Var),
    /// `X ≡ Y ⊓ Z`
    SetAnd(Var, Var, Var),
    /// `X ≡ {x}`
    SetOne(Var, Var),
    /// `X ⊑ ∀R.Y`
    AllValues { sub: Var, rel: Var, filler: Var },
    /// `∃R.Y ⊑ X`
    SomeValues { rel: Var, filler: Var, sup: Var },
    /// `X ≡ ∃R.{x}`
    HasValue { set: Var, rel: Var, value: Var },
    /// `X ≡ ∃R.Self`
    SelfRestriction { set: Var, rel: Var },
    /// `X ⊑ ≤n R.Y`
    AtMost { sub: Var, n: u32, rel: Var, filler: Var },
    /// `≥n R.Y ⊑ X`
    AtLeast { n: u32, rel: Var, filler: Var, sup: Var },
    /// `R ≡ U`
    RelUniversal(Var, Var),
    RelEquiv(Var, Var),
    RelSub(Var, Var),
    /// `R ≡ ¬S`
    RelNot(Var, Var),
    RelOr(Var, Var, Var),
    RelAnd(Var, Var, Var),
    /// `R ≡ S⁻`
    RelInverse(Var, Var),
    /// `R ≡ X × Y`
    Product { rel: Var, left: Var, right: Var },
    /// `R ≡ id(X)`
    Identity { rel: Var, set: Var },
    /// `R ≡ S_{X|}`
    RelDomain { rel: Var, base: Var, set: Var },
    /// `R ≡ S_{|X}`
    RelRange { rel: Var, base: Var, set: Var },
    /// `R ≡ S_{X|Y}`
    RelRestrict {
        rel: Var,
        base: Var,
        left: Var,
        right: Var,
    },
    /// `R1 ... Rn ⊑ R`
    Chain(Vec<Var>, Var),
    Ref(Var),
    Irref(Var),
    Fun(Var),
    Sym(Var),
    Asym(Var),
    Tra(Var),
    RelDisjoint(Var, Var),
    /// `x ∈ X` or its negation
    Member { elem: Var, set: Var, positive: bool },
    /// `<x,y> ∈ R` or its negation
    Pair {
        left: Var,
        right: Var,
        rel: Var,
        positive: bool,
    },
    /// `x = y` or its negation
    Equal { left: Var, right: Var, positive: bool },
}

/// Allocator for quantified variables `z1, z2, ...`.
#[derive(Debug, Clone)]
pub struct Fresh {
    next: u32,
}

impl Default for Fresh {
    fn default() -> Self {
        Fresh { next: 1 }
    }
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts after every quantified variable already in `pool`.
    pub fn after(pool: &VarPool) -> Self {
        let max = pool
            .vars()
            .filter_map(|v| match pool.tag(v) {
                Tag::Bound(n) => Some(*n),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Fresh { next: max + 1 }
    }

    pub fn z(&mut self, pool: &mut VarPool) -> Var {
        let v = pool.intern(Level::Zero, Tag::Bound(self.next));
        self.next += 1;
        v
    }

    pub fn zs(&mut self, pool: &mut VarPool, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.z(pool)).collect()
    }
}

/// Output of θ for one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emitted {
    Universal(PurelyUniversal),
    Ground(Vec<Literal>),
}

pub fn mem(x: Var, set: Var) -> Literal {
    Literal::pos(Atom::mem1(x, set))
}

pub fn not_mem(x: Var, set: Var) -> Literal {
    Literal::neg(Atom::mem1(x, set))
}

pub fn pair(x: Var, y: Var, rel: Var) -> Literal {
    Literal::pos(Atom::mem3(x, y, rel))
}

pub fn not_pair(x: Var, y: Var, rel: Var) -> Literal {
    Literal::neg(Atom::mem3(x, y, rel))
}

pub fn eq(x: Var, y: Var) -> Literal {
    Literal::pos(Atom::eq(x, y))
}

pub fn neq(x: Var, y: Var) -> Literal {
    Literal::neg(Atom::eq(x, y))
}

pub fn clause(lits: Vec<Literal>) -> Clause {
    Clause::new(lits).expect("theta clauses are nonempty")
}

fn universal(bound: Vec<Var>, matrix: Vec<Vec<Literal>>) -> Emitted {
    Emitted::Universal(
        PurelyUniversal::new(bound, matrix.into_iter().map(clause).collect())
            .expect("fresh quantified variables are distinct"),
    )
}

/// Variables that θ needs besides the axiom's own arguments.
#[derive(Debug, Clone, Copy)]
pub struct Builtins {
    pub top: Var,
    pub universal: Var,
}

impl Builtins {
    pub fn intern(pool: &mut VarPool) -> Self {
        Builtins {
            top: pool.intern(Level::One, Tag::Top),
            universal: pool.intern(Level::Three, Tag::Universal),
        }
    }
}

/// The CNF image of one axiom. Quantified variables come from `fresh`.
pub fn theta(ax: &Axiom, b: Builtins, pool: &mut VarPool, fresh: &mut Fresh) -> Emitted {
    use Axiom::*;
    match ax {
        SetTop(x) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *x), mem(z, b.top)],
                    vec![not_mem(z, b.top), mem(z, *x)],
                ],
            )
        }
        SetEquiv(x, y) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *x), mem(z, *y)],
                    vec![not_mem(z, *y), mem(z, *x)],
                ],
            )
        }
        SetSub(x, y) => {
            let z = fresh.z(pool);
            universal(vec![z], vec![vec![not_mem(z, *x), mem(z, *y)]])
        }
        SetNot(x, y) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *x), not_mem(z, *y)],
                    vec![mem(z, *y), mem(z, *x)],
                ],
            )
        }
        SetOr(x, y, w) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *x), mem(z, *y), mem(z, *w)],
                    vec![not_mem(z, *y), mem(z, *x)],
                    vec![not_mem(z, *w), mem(z, *x)],
                ],
            )
        }
        SetAnd(x, y, w) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *x), mem(z, *y)],
                    vec![not_mem(z, *x), mem(z, *w)],
                    vec![not_mem(z, *y), not_mem(z, *w), mem(z, *x)],
                ],
            )
        }
        SetOne(x, a) => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![vec![not_mem(z, *x), eq(z, *a)], vec![neq(z, *a), mem(z, *x)]],
            )
        }
        AllValues { sub, rel, filler } => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![
                    not_mem(zs[0], *sub),
                    not_pair(zs[0], zs[1], *rel),
                    mem(zs[1], *filler),
                ]],
            )
        }
        SomeValues { rel, filler, sup } => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![
                    not_pair(zs[0], zs[1], *rel),
                    not_mem(zs[1], *filler),
                    mem(zs[0], *sup),
                ]],
            )
        }
        HasValue { set, rel, value } => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *set), pair(z, *value, *rel)],
                    vec![not_pair(z, *value, *rel), mem(z, *set)],
                ],
            )
        }
        SelfRestriction { set, rel } => {
            let z = fresh.z(pool);
            universal(
                vec![z],
                vec![
                    vec![not_mem(z, *set), pair(z, z, *rel)],
                    vec![not_pair(z, z, *rel), mem(z, *set)],
                ],
            )
        }
        AtMost {
            sub,
            n,
            rel,
            filler,
        } => {
            let z = fresh.z(pool);
            let zs = fresh.zs(pool, *n as usize + 1);
            let mut c = vec![not_mem(z, *sub)];
            for zi in &zs {
                c.push(not_mem(*zi, *filler));
                c.push(not_pair(z, *zi, *rel));
            }
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    c.push(eq(zs[i], zs[j]));
                }
            }
            let mut bound = vec![z];
            bound.extend(zs);
            universal(bound, vec![c])
        }
        AtLeast {
            n,
            rel,
            filler,
            sup,
        } => {
            let z = fresh.z(pool);
            let zs = fresh.zs(pool, *n as usize);
            let mut c = Vec::new();
            for zi in &zs {
                c.push(not_mem(*zi, *filler));
                c.push(not_pair(z, *zi, *rel));
            }
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    c.push(eq(zs[i], zs[j]));
                }
            }
            c.push(mem(z, *sup));
            let mut bound = vec![z];
            bound.extend(zs);
            universal(bound, vec![c])
        }
        RelUniversal(r, u) => rel_equiv(*r, *u, pool, fresh),
        RelEquiv(r, s) => rel_equiv(*r, *s, pool, fresh),
        RelSub(r, s) => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![not_pair(zs[0], zs[1], *r), pair(zs[0], zs[1], *s)]],
            )
        }
        RelNot(r, s) => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *r), not_pair(a, b2, *s)],
                    vec![pair(a, b2, *s), pair(a, b2, *r)],
                ],
            )
        }
        RelOr(r, s, t) => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *r), pair(a, b2, *s), pair(a, b2, *t)],
                    vec![not_pair(a, b2, *s), pair(a, b2, *r)],
                    vec![not_pair(a, b2, *t), pair(a, b2, *r)],
                ],
            )
        }
        RelAnd(r, s, t) => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *r), pair(a, b2, *s)],
                    vec![not_pair(a, b2, *r), pair(a, b2, *t)],
                    vec![not_pair(a, b2, *s), not_pair(a, b2, *t), pair(a, b2, *r)],
                ],
            )
        }
        RelInverse(r, s) => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *r), pair(b2, a, *s)],
                    vec![not_pair(b2, a, *s), pair(a, b2, *r)],
                ],
            )
        }
        Product { rel, left, right } => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *rel), mem(a, *left)],
                    vec![not_pair(a, b2, *rel), mem(b2, *right)],
                    vec![not_mem(a, *left), not_mem(b2, *right), pair(a, b2, *rel)],
                ],
            )
        }
        Identity { rel, set } => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *rel), mem(a, *set)],
                    vec![not_pair(a, b2, *rel), mem(b2, *set)],
                    vec![not_pair(a, b2, *rel), eq(a, b2)],
                    vec![not_mem(a, *set), not_mem(b2, *set), neq(a, b2), pair(a, b2, *rel)],
                ],
            )
        }
        RelDomain { rel, base, set } => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *rel), pair(a, b2, *base)],
                    vec![not_pair(a, b2, *rel), mem(a, *set)],
                    vec![not_pair(a, b2, *base), not_mem(a, *set), pair(a, b2, *rel)],
                ],
            )
        }
        RelRange { rel, base, set } => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *rel), pair(a, b2, *base)],
                    vec![not_pair(a, b2, *rel), mem(b2, *set)],
                    vec![not_pair(a, b2, *base), not_mem(b2, *set), pair(a, b2, *rel)],
                ],
            )
        }
        RelRestrict {
            rel,
            base,
            left,
            right,
        } => {
            let zs = fresh.zs(pool, 2);
            let (a, b2) = (zs[0], zs[1]);
            universal(
                zs,
                vec![
                    vec![not_pair(a, b2, *rel), pair(a, b2, *base)],
                    vec![not_pair(a, b2, *rel), mem(a, *left)],
                    vec![not_pair(a, b2, *rel), mem(b2, *right)],
                    vec![
                        not_pair(a, b2, *base),
                        not_mem(a, *left),
                        not_mem(b2, *right),
                        pair(a, b2, *rel),
                    ],
                ],
            )
        }
        Chain(rels, sup) => {
            let z = fresh.z(pool);
            let zs = fresh.zs(pool, rels.len());
            let mut c = Vec::new();
            let mut prev = z;
            for (r, zi) in rels.iter().zip(&zs) {
                c.push(not_pair(prev, *zi, *r));
                prev = *zi;
            }
            c.push(pair(z, prev, *sup));
            let mut bound = vec![z];
            bound.extend(zs);
            universal(bound, vec![c])
        }
        Ref(r) => {
            let z = fresh.z(pool);
            universal(vec![z], vec![vec![pair(z, z, *r)]])
        }
        Irref(r) => {
            let z = fresh.z(pool);
            universal(vec![z], vec![vec![not_pair(z, z, *r)]])
        }
        Fun(r) => {
            let zs = fresh.zs(pool, 3);
            universal(
                zs.clone(),
                vec![vec![
                    not_pair(zs[0], zs[1], *r),
                    not_pair(zs[0], zs[2], *r),
                    eq(zs[1], zs[2]),
                ]],
            )
        }
        Sym(r) => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![not_pair(zs[0], zs[1], *r), pair(zs[1], zs[0], *r)]],
            )
        }
        Asym(r) => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![not_pair(zs[0], zs[1], *r), not_pair(zs[1], zs[0], *r)]],
            )
        }
        Tra(r) => {
            let zs = fresh.zs(pool, 3);
            universal(
                zs.clone(),
                vec![vec![
                    not_pair(zs[0], zs[1], *r),
                    not_pair(zs[1], zs[2], *r),
                    pair(zs[0], zs[2], *r),
                ]],
            )
        }
        RelDisjoint(r, s) => {
            let zs = fresh.zs(pool, 2);
            universal(
                zs.clone(),
                vec![vec![not_pair(zs[0], zs[1], *r), not_pair(zs[0], zs[1], *s)]],
            )
        }
        Member {
            elem,
            set,
            positive,
        } => Emitted::Ground(vec![if *positive {
            mem(*elem, *set)
        } else {
            not_mem(*elem, *set)
        }]),
        Pair {
            left,
            right,
            rel,
            positive,
        } => Emitted::Ground(vec![if *positive {
            pair(*left, *right, *rel)
        } else {
            not_pair(*left, *right, *rel)
        }]),
        Equal {
            left,
            right,
            positive,
        } => Emitted::Ground(vec![if *positive {
            eq(*left, *right)
        } else {
            neq(*left, *right)
        }]),
    }
}

fn rel_equiv(r: Var, s: Var, pool: &mut VarPool, fresh: &mut Fresh) -> Emitted {
    let zs = fresh.zs(pool, 2);
    let (a, b) = (zs[0], zs[1]);
    universal(
        zs,
        vec![
            vec![not_pair(a, b, r), pair(a, b, s)],
            vec![not_pair(a, b, s), pair(a, b, r)],
        ],
    )
}
