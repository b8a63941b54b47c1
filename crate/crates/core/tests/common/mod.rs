#![allow(dead_code)]

use std::sync::Arc;

use pivotrace::diagram::{signature_object, Coupon, CouponTable, Diagram, Gen, Pair, Sign};
use pivotrace::exact::Field;
use pivotrace::modified::ExtendedTrace;
use pivotrace::trace::{solve_ambidextrous, Mode, Side, TraceFamily};
use pivotrace::{Category, ObjectRef};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn obj(c: &Category, s: &str) -> ObjectRef {
    c.object(s).unwrap()
}

pub fn objs(c: &Category, names: &[&str]) -> Vec<ObjectRef> {
    names.iter().map(|s| obj(c, s)).collect()
}

pub fn f2() -> Category {
    Category::group_algebra(2, Field::Prime(2), 0).unwrap()
}

pub fn f3() -> Category {
    Category::group_algebra(3, Field::Prime(3), 1).unwrap()
}

pub fn cyclo(pivot: usize) -> Category {
    Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), pivot).unwrap()
}

/// The two-sided extension of the unique spherical seed on reg over F2[Z/2].
pub fn f2_two_sided(c: &Category) -> ExtendedTrace {
    let mids = c.named_objects();
    let seed = solve_ambidextrous(c, &[obj(c, "reg")], Mode::Spherical, &mids).unwrap().remove(0);
    ExtendedTrace::extend(c, seed, &mids).unwrap()
}

/// The left extension of the unique left seed on reg over F3[Z/3] with pivot c.
pub fn f3_left(c: &Category) -> ExtendedTrace {
    let seed = solve_ambidextrous(c, &[obj(c, "reg")], Mode::Left, &[]).unwrap().remove(0);
    ExtendedTrace::extend(c, seed, &[]).unwrap()
}

/// ⟨·⟩_chi1 extended as a left trace over Q(ζ3)[Z/3] with pivot c.
pub fn cyclo_left(c: &Category) -> ExtendedTrace {
    ExtendedTrace::extend(c, TraceFamily::bracket(c, &obj(c, "chi1"), Side::Left).unwrap(), &[]).unwrap()
}

pub fn palette(c: &Category, names: &[&str]) -> Vec<Pair> {
    names
        .iter()
        .flat_map(|n| [Pair::plus(obj(c, n)), Pair::minus(obj(c, n))])
        .collect()
}

/// Builds random diagrams row by row; coupons are random intertwiners.
pub struct DiagramGen<'a, R: Rng> {
    pub c: &'a Category,
    pub palette: Vec<Pair>,
    pub rng: R,
    pub max_dim: usize,
    table: CouponTable,
    serial: usize,
}

impl<'a, R: Rng> DiagramGen<'a, R> {
    pub fn new(c: &'a Category, palette: Vec<Pair>, rng: R, max_dim: usize) -> Self {
        DiagramGen { c, palette, rng, max_dim, table: CouponTable::new(), serial: 0 }
    }

    fn dim(&self, s: &[Pair]) -> usize {
        self.c.dim(&signature_object(s))
    }

    /// A random intertwiner S → T registered as a coupon, if the hom space is nonzero.
    pub fn coupon(&mut self, s: Vec<Pair>, t: Vec<Pair>) -> Option<String> {
        let h = self.c.hom_basis(&signature_object(&s), &signature_object(&t));
        if h.basis.is_empty() {
            return None;
        }
        let f = self.c.field();
        let coeffs = loop {
            let cs: Vec<_> = (0..h.dim()).map(|_| f.from_i64(self.rng.gen_range(-3..=3))).collect();
            if cs.iter().any(|x| !x.is_zero()) {
                break cs;
            }
        };
        let m = h.combine(&coeffs, f, self.dim(&t), self.dim(&s)).matrix;
        let name = format!("f{}", self.serial);
        self.serial += 1;
        self.table.insert(name.clone(), Coupon { source: s, target: t, matrix: m });
        Some(name)
    }

    fn row(cur: &[Pair], at: usize, width: usize, g: Gen) -> Vec<Gen> {
        let mut row: Vec<Gen> = cur[..at].iter().cloned().map(Gen::Id).collect();
        row.push(g);
        row.extend(cur[at + width..].iter().cloned().map(Gen::Id));
        row
    }

    /// One random layer applied to `cur`, or `None` when the chosen move does not fit.
    fn step(&mut self, cur: &mut Vec<Pair>) -> Option<Vec<Gen>> {
        let n = cur.len();
        match self.rng.gen_range(0..4) {
            0 => {
                let p = self.palette.choose(&mut self.rng)?.clone();
                let x = p.obj.clone();
                if self.dim(cur) * self.c.dim(&x).pow(2) > self.max_dim {
                    return None;
                }
                let at = self.rng.gen_range(0..=n);
                let (g, new) = if p.sign == Sign::Plus {
                    (Gen::Coev(x.clone()), [Pair::plus(x.clone()), Pair::minus(x)])
                } else {
                    (Gen::Tcoev(x.clone()), [Pair::minus(x.clone()), Pair::plus(x)])
                };
                let row = Self::row(cur, at, 0, g);
                cur.splice(at..at, new);
                Some(row)
            }
            1 => {
                let caps: Vec<usize> =
                    (0..n.saturating_sub(1)).filter(|&i| cur[i].obj == cur[i + 1].obj && cur[i].sign != cur[i + 1].sign).collect();
                let &i = caps.choose(&mut self.rng)?;
                let x = cur[i].obj.clone();
                let g = if cur[i].sign == Sign::Minus { Gen::Ev(x) } else { Gen::Tev(x) };
                let row = Self::row(cur, i, 2, g);
                cur.drain(i..i + 2);
                Some(row)
            }
            2 if n > 0 => {
                let i = self.rng.gen_range(0..n);
                let q = self.palette.choose(&mut self.rng)?.clone();
                let d = self.dim(cur) / self.c.dim(&cur[i].value()).max(1) * self.c.dim(&q.value());
                if d > self.max_dim || d == 0 {
                    return None;
                }
                let name = self.coupon(vec![cur[i].clone()], vec![q.clone()])?;
                let row = Self::row(cur, i, 1, Gen::Coupon(name));
                cur[i] = q;
                Some(row)
            }
            3 if n > 1 => {
                let i = self.rng.gen_range(0..n - 1);
                let q = self.palette.choose(&mut self.rng)?.clone();
                let name = self.coupon(cur[i..i + 2].to_vec(), vec![q.clone()])?;
                let row = Self::row(cur, i, 2, Gen::Coupon(name));
                cur.splice(i..i + 2, [q]);
                Some(row)
            }
            _ => None,
        }
    }

    fn source(&mut self) -> Vec<Pair> {
        loop {
            let n = self.rng.gen_range(1..=2);
            let s: Vec<Pair> = (0..n).map(|_| self.palette.choose(&mut self.rng).unwrap().clone()).collect();
            if self.dim(&s) <= self.max_dim {
                return s;
            }
        }
    }

    fn finish(&mut self, source: Vec<Pair>, target: Vec<Pair>, rows: Vec<Vec<Gen>>) -> Diagram {
        let rows = if rows.is_empty() { vec![source.iter().cloned().map(Gen::Id).collect()] } else { rows };
        let table = Arc::new(std::mem::take(&mut self.table));
        Diagram::new(source, target, rows, table).unwrap()
    }

    /// A random diagram with `layers` attempted rows.
    pub fn diagram(&mut self, layers: usize) -> Diagram {
        let source = self.source();
        let mut cur = source.clone();
        let mut rows = Vec::new();
        for _ in 0..layers {
            if let Some(r) = self.step(&mut cur) {
                rows.push(r);
            }
        }
        self.finish(source, cur, rows)
    }

    /// A random endomorphism: a random diagram closed off by a coupon back to its source.
    pub fn endo(&mut self, layers: usize) -> Diagram {
        loop {
            let source = self.source();
            let mut cur = source.clone();
            let mut rows = Vec::new();
            for _ in 0..layers {
                if let Some(r) = self.step(&mut cur) {
                    rows.push(r);
                }
            }
            if cur.is_empty() || self.dim(&cur) * self.dim(&source) > 81 {
                self.table.clear();
                continue;
            }
            if let Some(name) = self.coupon(cur.clone(), source.clone()) {
                rows.push(vec![Gen::Coupon(name)]);
                return self.finish(source.clone(), source, rows);
            }
            self.table.clear();
        }
    }
}
