//! θ on each flat axiom shape against hand-transcribed clause sets.

use hocqa::setcalc::{Atom, Clause, Level, Literal, PurelyUniversal, Tag, Var, VarPool};
use hocqa::translator::{theta, Axiom, Builtins, Emitted, Fresh};

struct G {
    pool: VarPool,
    b: Builtins,
    c1: Var,
    c2: Var,
    c3: Var,
    r1: Var,
    r2: Var,
    r3: Var,
    a: Var,
    b0: Var,
}

fn g() -> G {
    let mut pool = VarPool::new();
    let b = Builtins::intern(&mut pool);
    let c = |p: &mut VarPool, n: &str| p.intern(Level::One, Tag::Concept(n.into()));
    let r = |p: &mut VarPool, n: &str| p.intern(Level::Three, Tag::Role(n.into()));
    let c1 = c(&mut pool, "C1");
    let c2 = c(&mut pool, "C2");
    let c3 = c(&mut pool, "C3");
    let r1 = r(&mut pool, "R1");
    let r2 = r(&mut pool, "R2");
    let r3 = r(&mut pool, "R3");
    let a = pool.intern(Level::Zero, Tag::Individual("a".into()));
    let b0 = pool.intern(Level::Zero, Tag::Individual("b".into()));
    G {
        pool,
        b,
        c1,
        c2,
        c3,
        r1,
        r2,
        r3,
        a,
        b0,
    }
}

impl G {
    /// Quantified variables in the order θ allocates them.
    fn z(&mut self, n: usize) -> Vec<Var> {
        (1..=n as u32)
            .map(|i| self.pool.intern(Level::Zero, Tag::Bound(i)))
            .collect()
    }

    fn run(&mut self, ax: &Axiom) -> Emitted {
        let mut fresh = Fresh::new();
        theta(ax, self.b, &mut self.pool, &mut fresh)
    }
}

fn m(x: Var, s: Var) -> Literal {
    Literal::pos(Atom::mem1(x, s))
}
fn nm(x: Var, s: Var) -> Literal {
    Literal::neg(Atom::mem1(x, s))
}
fn p(x: Var, y: Var, r: Var) -> Literal {
    Literal::pos(Atom::mem3(x, y, r))
}
fn np(x: Var, y: Var, r: Var) -> Literal {
    Literal::neg(Atom::mem3(x, y, r))
}
fn e(x: Var, y: Var) -> Literal {
    Literal::pos(Atom::eq(x, y))
}
fn ne(x: Var, y: Var) -> Literal {
    Literal::neg(Atom::eq(x, y))
}

fn u(bound: Vec<Var>, m: Vec<Vec<Literal>>) -> Emitted {
    Emitted::Universal(
        PurelyUniversal::new(bound, m.into_iter().map(|c| Clause::new(c).unwrap()).collect())
            .unwrap(),
    )
}

#[test]
fn concept_equiv_top() {
    let mut g = g();
    let out = g.run(&Axiom::SetTop(g.c1));
    let z = g.z(1)[0];
    let top = g.b.top;
    assert_eq!(
        out,
        u(vec![z], vec![vec![nm(z, g.c1), m(z, top)], vec![nm(z, top), m(z, g.c1)]])
    );
}

#[test]
fn concept_equiv_not() {
    let mut g = g();
    let out = g.run(&Axiom::SetNot(g.c1, g.c2));
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(vec![z], vec![vec![nm(z, g.c1), nm(z, g.c2)], vec![m(z, g.c2), m(z, g.c1)]])
    );
}

#[test]
fn concept_equiv_or() {
    let mut g = g();
    let out = g.run(&Axiom::SetOr(g.c1, g.c2, g.c3));
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(
            vec![z],
            vec![
                vec![nm(z, g.c1), m(z, g.c2), m(z, g.c3)],
                vec![nm(z, g.c2), m(z, g.c1)],
                vec![nm(z, g.c3), m(z, g.c1)],
            ]
        )
    );
}

#[test]
fn concept_equiv_and_derived() {
    let mut g = g();
    let out = g.run(&Axiom::SetAnd(g.c1, g.c2, g.c3));
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(
            vec![z],
            vec![
                vec![nm(z, g.c1), m(z, g.c2)],
                vec![nm(z, g.c1), m(z, g.c3)],
                vec![nm(z, g.c2), nm(z, g.c3), m(z, g.c1)],
            ]
        )
    );
}

#[test]
fn concept_equiv_nominal() {
    let mut g = g();
    let out = g.run(&Axiom::SetOne(g.c1, g.a));
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(vec![z], vec![vec![nm(z, g.c1), e(z, g.a)], vec![ne(z, g.a), m(z, g.c1)]])
    );
}

#[test]
fn all_values() {
    let mut g = g();
    let out = g.run(&Axiom::AllValues {
        sub: g.c1,
        rel: g.r1,
        filler: g.c2,
    });
    let z = g.z(2);
    assert_eq!(
        out,
        u(z.clone(), vec![vec![nm(z[0], g.c1), np(z[0], z[1], g.r1), m(z[1], g.c2)]])
    );
}

#[test]
fn some_values() {
    let mut g = g();
    let out = g.run(&Axiom::SomeValues {
        rel: g.r1,
        filler: g.c1,
        sup: g.c2,
    });
    let z = g.z(2);
    assert_eq!(
        out,
        u(z.clone(), vec![vec![np(z[0], z[1], g.r1), nm(z[1], g.c1), m(z[0], g.c2)]])
    );
}

#[test]
fn has_value() {
    let mut g = g();
    let out = g.run(&Axiom::HasValue {
        set: g.c1,
        rel: g.r1,
        value: g.a,
    });
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(
            vec![z],
            vec![vec![nm(z, g.c1), p(z, g.a, g.r1)], vec![np(z, g.a, g.r1), m(z, g.c1)]]
        )
    );
}

#[test]
fn self_restriction_derived() {
    let mut g = g();
    let out = g.run(&Axiom::SelfRestriction { set: g.c1, rel: g.r1 });
    let z = g.z(1)[0];
    assert_eq!(
        out,
        u(
            vec![z],
            vec![vec![nm(z, g.c1), p(z, z, g.r1)], vec![np(z, z, g.r1), m(z, g.c1)]]
        )
    );
}

#[test]
fn at_most_two_is_one_clause() {
    let mut g = g();
    let out = g.run(&Axiom::AtMost {
        sub: g.c1,
        n: 2,
        rel: g.r1,
        filler: g.c2,
    });
    let zs = g.z(4);
    let (z, z1, z2, z3) = (zs[0], zs[1], zs[2], zs[3]);
    assert_eq!(
        out,
        u(
            zs.clone(),
            vec![vec![
                nm(z, g.c1),
                nm(z1, g.c2),
                np(z, z1, g.r1),
                nm(z2, g.c2),
                np(z, z2, g.r1),
                nm(z3, g.c2),
                np(z, z3, g.r1),
                e(z1, z2),
                e(z1, z3),
                e(z2, z3),
            ]]
        )
    );
}

#[test]
fn at_least_two_is_one_clause() {
    let mut g = g();
    let out = g.run(&Axiom::AtLeast {
        n: 2,
        rel: g.r1,
        filler: g.c1,
        sup: g.c2,
    });
    let zs = g.z(3);
    let (z, z1, z2) = (zs[0], zs[1], zs[2]);
    assert_eq!(
        out,
        u(
            zs.clone(),
            vec![vec![
                nm(z1, g.c1),
                np(z, z1, g.r1),
                nm(z2, g.c1),
                np(z, z2, g.r1),
                e(z1, z2),
                m(z, g.c2),
            ]]
        )
    );
}

#[test]
fn at_least_one_matches_some_values() {
    let mut g = g();
    let out = g.run(&Axiom::AtLeast {
        n: 1,
        rel: g.r1,
        filler: g.c1,
        sup: g.c2,
    });
    let zs = g.z(2);
    assert_eq!(
        out,
        u(zs.clone(), vec![vec![nm(zs[1], g.c1), np(zs[0], zs[1], g.r1), m(zs[0], g.c2)]])
    );
}

#[test]
fn role_equiv_universal() {
    let mut g = g();
    let uu = g.b.universal;
    let out = g.run(&Axiom::RelUniversal(g.r1, uu));
    let z = g.z(2);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(z[0], z[1], g.r1), p(z[0], z[1], uu)],
                vec![np(z[0], z[1], uu), p(z[0], z[1], g.r1)],
            ]
        )
    );
}

#[test]
fn role_equiv_not_uses_the_complement_clause() {
    let mut g = g();
    let out = g.run(&Axiom::RelNot(g.r1, g.r2));
    let z = g.z(2);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(z[0], z[1], g.r1), np(z[0], z[1], g.r2)],
                vec![p(z[0], z[1], g.r2), p(z[0], z[1], g.r1)],
            ]
        )
    );
}

#[test]
fn product() {
    let mut g = g();
    let out = g.run(&Axiom::Product {
        rel: g.r1,
        left: g.c1,
        right: g.c2,
    });
    let z = g.z(2);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(z[0], z[1], g.r1), m(z[0], g.c1)],
                vec![np(z[0], z[1], g.r1), m(z[1], g.c2)],
                vec![nm(z[0], g.c1), nm(z[1], g.c2), p(z[0], z[1], g.r1)],
            ]
        )
    );
}

#[test]
fn role_or() {
    let mut g = g();
    let out = g.run(&Axiom::RelOr(g.r1, g.r2, g.r3));
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), p(x, y, g.r2), p(x, y, g.r3)],
                vec![np(x, y, g.r2), p(x, y, g.r1)],
                vec![np(x, y, g.r3), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn role_and_derived() {
    let mut g = g();
    let out = g.run(&Axiom::RelAnd(g.r1, g.r2, g.r3));
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), p(x, y, g.r2)],
                vec![np(x, y, g.r1), p(x, y, g.r3)],
                vec![np(x, y, g.r2), np(x, y, g.r3), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn role_inverse() {
    let mut g = g();
    let out = g.run(&Axiom::RelInverse(g.r1, g.r2));
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![vec![np(x, y, g.r1), p(y, x, g.r2)], vec![np(y, x, g.r2), p(x, y, g.r1)]]
        )
    );
}

#[test]
fn identity() {
    let mut g = g();
    let out = g.run(&Axiom::Identity { rel: g.r1, set: g.c1 });
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), m(x, g.c1)],
                vec![np(x, y, g.r1), m(y, g.c1)],
                vec![np(x, y, g.r1), e(x, y)],
                vec![nm(x, g.c1), nm(y, g.c1), ne(x, y), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn role_domain_restriction() {
    let mut g = g();
    let out = g.run(&Axiom::RelDomain {
        rel: g.r1,
        base: g.r2,
        set: g.c1,
    });
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), p(x, y, g.r2)],
                vec![np(x, y, g.r1), m(x, g.c1)],
                vec![np(x, y, g.r2), nm(x, g.c1), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn role_range_restriction() {
    let mut g = g();
    let out = g.run(&Axiom::RelRange {
        rel: g.r1,
        base: g.r2,
        set: g.c1,
    });
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), p(x, y, g.r2)],
                vec![np(x, y, g.r1), m(y, g.c1)],
                vec![np(x, y, g.r2), nm(y, g.c1), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn role_domain_range_restriction() {
    let mut g = g();
    let out = g.run(&Axiom::RelRestrict {
        rel: g.r1,
        base: g.r2,
        left: g.c1,
        right: g.c2,
    });
    let z = g.z(2);
    let (x, y) = (z[0], z[1]);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![
                vec![np(x, y, g.r1), p(x, y, g.r2)],
                vec![np(x, y, g.r1), m(x, g.c1)],
                vec![np(x, y, g.r1), m(y, g.c2)],
                vec![np(x, y, g.r2), nm(x, g.c1), nm(y, g.c2), p(x, y, g.r1)],
            ]
        )
    );
}

#[test]
fn chain_of_two() {
    let mut g = g();
    let out = g.run(&Axiom::Chain(vec![g.r1, g.r2], g.r3));
    let z = g.z(3);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![vec![np(z[0], z[1], g.r1), np(z[1], z[2], g.r2), p(z[0], z[2], g.r3)]]
        )
    );
}

#[test]
fn reflexive_irreflexive() {
    let mut g = g();
    let out = g.run(&Axiom::Ref(g.r1));
    let z = g.z(1)[0];
    assert_eq!(out, u(vec![z], vec![vec![p(z, z, g.r1)]]));
    let out = g.run(&Axiom::Irref(g.r1));
    assert_eq!(out, u(vec![z], vec![vec![np(z, z, g.r1)]]));
}

#[test]
fn functional() {
    let mut g = g();
    let out = g.run(&Axiom::Fun(g.r1));
    let z = g.z(3);
    assert_eq!(
        out,
        u(
            z.clone(),
            vec![vec![np(z[0], z[1], g.r1), np(z[0], z[2], g.r1), e(z[1], z[2])]]
        )
    );
}

#[test]
fn role_properties_derived() {
    let mut g = g();
    let z = g.z(3);
    let (x, y, w) = (z[0], z[1], z[2]);
    assert_eq!(
        g.run(&Axiom::Sym(g.r1)),
        u(vec![x, y], vec![vec![np(x, y, g.r1), p(y, x, g.r1)]])
    );
    assert_eq!(
        g.run(&Axiom::Asym(g.r1)),
        u(vec![x, y], vec![vec![np(x, y, g.r1), np(y, x, g.r1)]])
    );
    assert_eq!(
        g.run(&Axiom::Tra(g.r1)),
        u(vec![x, y, w], vec![vec![np(x, y, g.r1), np(y, w, g.r1), p(x, w, g.r1)]])
    );
    assert_eq!(
        g.run(&Axiom::RelDisjoint(g.r1, g.r2)),
        u(vec![x, y], vec![vec![np(x, y, g.r1), np(x, y, g.r2)]])
    );
    assert_eq!(
        g.run(&Axiom::RelSub(g.r1, g.r2)),
        u(vec![x, y], vec![vec![np(x, y, g.r1), p(x, y, g.r2)]])
    );
    assert_eq!(
        g.run(&Axiom::RelEquiv(g.r1, g.r2)),
        u(
            vec![x, y],
            vec![vec![np(x, y, g.r1), p(x, y, g.r2)], vec![np(x, y, g.r2), p(x, y, g.r1)]]
        )
    );
}

#[test]
fn concept_inclusion_and_equivalence_derived() {
    let mut g = g();
    let z = g.z(1)[0];
    assert_eq!(
        g.run(&Axiom::SetSub(g.c1, g.c2)),
        u(vec![z], vec![vec![nm(z, g.c1), m(z, g.c2)]])
    );
    assert_eq!(
        g.run(&Axiom::SetEquiv(g.c1, g.c2)),
        u(vec![z], vec![vec![nm(z, g.c1), m(z, g.c2)], vec![nm(z, g.c2), m(z, g.c1)]])
    );
}

#[test]
fn assertions_are_ground() {
    let mut g = g();
    let (a, b) = (g.a, g.b0);
    let out = g.run(&Axiom::Member {
        elem: a,
        set: g.c1,
        positive: true,
    });
    assert_eq!(out, Emitted::Ground(vec![m(a, g.c1)]));
    let out = g.run(&Axiom::Pair {
        left: a,
        right: b,
        rel: g.r1,
        positive: false,
    });
    assert_eq!(out, Emitted::Ground(vec![np(a, b, g.r1)]));
    assert_eq!(g.pool.show(&np(a, b, g.r1)), "~ (<x_a,x_b> in R1)");
    let out = g.run(&Axiom::Equal {
        left: a,
        right: b,
        positive: false,
    });
    assert_eq!(out, Emitted::Ground(vec![ne(a, b)]));
}

#[test]
fn irreflexive_renders() {
    let mut g = g();
    let out = g.run(&Axiom::Irref(g.r1));
    let Emitted::Universal(uu) = out else {
        panic!("expected a universal")
    };
    assert_eq!(g.pool.show(&uu), "forall z1 . (~ (<z1,z1> in R1))");
}
