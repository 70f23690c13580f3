//! The gadget digraphs S(d, l, f) built from transitive tournaments.

use crate::graph::{Digraph, Indicator};
use crate::metrics::directed_dist;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SausageError {
    #[error("d must be at least 3, got {0}")]
    BadDegree(usize),
    #[error("length {ell} out of range (minimum {min})")]
    BadLength { ell: usize, min: usize },
    #[error("malformed sign map {0:?}: expected {1} characters from \"+0-\"")]
    MalformedMap(String, usize),
    #[error("sign maps have different shapes")]
    ShapeMismatch,
    #[error("neither orientation of the degree-deficient pair has out->in distance >= 3")]
    NoOrientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }
}

/// A map `[l] x {2..d-1} -> {+, 0, -}`.
///
/// Stored (and serialized) with `i = 1..l` outermost and `j = d-1 down to 2` inside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FMap {
    d: usize,
    ell: usize,
    values: Vec<Sign>,
}

impl FMap {
    pub fn constant(d: usize, ell: usize, s: Sign) -> Result<FMap, SausageError> {
        check_shape(d, ell)?;
        Ok(FMap {
            d,
            ell,
            values: vec![s; ell * (d - 2)],
        })
    }

    pub fn parse(d: usize, ell: usize, text: &str) -> Result<FMap, SausageError> {
        check_shape(d, ell)?;
        let len = ell * (d - 2);
        let values: Option<Vec<Sign>> = text.chars().map(Sign::from_char).collect();
        match values {
            Some(v) if v.len() == len => Ok(FMap { d, ell, values: v }),
            _ => Err(SausageError::MalformedMap(text.to_string(), len)),
        }
    }

    /// Every map of the given shape, in serialization order with `+ < 0 < -`.
    pub fn all(d: usize, ell: usize) -> Result<Vec<FMap>, SausageError> {
        check_shape(d, ell)?;
        let len = ell * (d - 2);
        let signs = [Sign::Plus, Sign::Zero, Sign::Minus];
        Ok((0..3usize.pow(len as u32))
            .map(|mut code| {
                let mut values = vec![Sign::Plus; len];
                for k in (0..len).rev() {
                    values[k] = signs[code % 3];
                    code /= 3;
                }
                FMap { d, ell, values }
            })
            .collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.ell).contains(&i) && (2..self.d).contains(&j),
            "({i}, {j}) outside the domain"
        );
        (i - 1) * (self.d - 2) + (self.d - 1 - j)
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.values[self.slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        let k = self.slot(i, j);
        self.values[k] = s;
    }
}

impl fmt::Display for FMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.values
            .iter()
            .try_for_each(|s| write!(f, "{}", s.to_char()))
    }
}

fn check_shape(d: usize, ell: usize) -> Result<(), SausageError> {
    if d < 3 {
        return Err(SausageError::BadDegree(d));
    }
    if ell < 1 {
        return Err(SausageError::BadLength { ell, min: 1 });
    }
    Ok(())
}

/// `f <= g`: wherever `f` is non-zero, `g` agrees with it.
pub fn fmap_leq(f: &FMap, g: &FMap) -> Result<bool, SausageError> {
    if f.d != g.d || f.ell != g.ell {
        return Err(SausageError::ShapeMismatch);
    }
    Ok(f.values
        .iter()
        .zip(&g.values)
        .all(|(a, b)| *a == Sign::Zero || a == b))
}

/// `(inv f)(i, j) = -f(l+1-i, d+1-j)`.
pub fn fmap_inv(f: &FMap) -> FMap {
    let mut out = f.clone();
    for i in 1..=f.ell {
        for j in 2..f.d {
            out.set(i, j, f.get(f.ell + 1 - i, f.d + 1 - j).flipped());
        }
    }
    out
}

/// Closed-form number of homomorphisms S(d, l, f) -> S(d, l', f').
pub fn hom_count_formula(f: &FMap, g: &FMap) -> Result<u8, SausageError> {
    if f.d != g.d {
        return Err(SausageError::ShapeMismatch);
    }
    if f.ell != g.ell {
        return Ok(0);
    }
    let a = fmap_leq(f, g)?;
    let b = fmap_leq(&fmap_inv(f), g)?;
    Ok(a as u8 + b as u8)
}

/// S(d, l, f) with its vertex name table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sausage {
    pub digraph: Digraph,
    pub f: FMap,
    pub names: Vec<String>,
}

impl Sausage {
    pub fn d(&self) -> usize {
        self.f.d
    }

    pub fn ell(&self) -> usize {
        self.f.ell
    }

    /// `v_j(T_+^i)`.
    pub fn plus(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.d() + (j - 1)
    }

    /// `v_j(T_-^i)`.
    pub fn minus(&self, i: usize, j: usize) -> usize {
        (self.ell() + i - 1) * self.d() + (j - 1)
    }

    pub fn left(&self, j: usize) -> usize {
        2 * self.ell() * self.d() + (j - 1)
    }

    pub fn right(&self, j: usize) -> usize {
        2 * self.ell() * self.d() + (self.d() - 1) + (j - 1)
    }

    pub fn s_l(&self) -> usize {
        2 * self.ell() * self.d() + 2 * (self.d() - 1)
    }

    pub fn t_l(&self) -> usize {
        self.s_l() + 1
    }

    pub fn s_r(&self) -> usize {
        self.s_l() + 2
    }

    pub fn t_r(&self) -> usize {
        self.s_l() + 3
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub fn sausage_order(d: usize, ell: usize) -> usize {
    2 * ell * d + 2 * (d - 1) + 4
}

pub fn build_sausage(f: &FMap) -> Sausage {
    let (d, ell) = (f.d, f.ell);
    let n = sausage_order(d, ell);
    let mut s = Sausage {
        digraph: Digraph::from_arcs(n, [], false).expect("empty"),
        f: f.clone(),
        names: Vec::new(),
    };
    let mut names = vec![String::new(); n];
    for i in 1..=ell {
        for j in 1..=d {
            names[s.plus(i, j)] = format!("v{j}(T+{i})");
            names[s.minus(i, j)] = format!("v{j}(T-{i})");
        }
    }
    for j in 1..d {
        names[s.left(j)] = format!("v{j}(Tl)");
        names[s.right(j)] = format!("v{j}(Tr)");
    }
    names[s.s_l()] = "sl".into();
    names[s.t_l()] = "tl".into();
    names[s.s_r()] = "sr".into();
    names[s.t_r()] = "tr".into();

    let mut arcs = Vec::new();
    let tournament = |arcs: &mut Vec<(usize, usize)>, verts: &[usize]| {
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                arcs.push((verts[a], verts[b]));
            }
        }
    };
    for i in 1..=ell {
        tournament(
            &mut arcs,
            &(1..=d).map(|j| s.plus(i, j)).collect::<Vec<_>>(),
        );
        tournament(
            &mut arcs,
            &(1..=d).map(|j| s.minus(i, j)).collect::<Vec<_>>(),
        );
    }
    let tl: Vec<usize> = (1..d).map(|j| s.left(j)).collect();
    let tr: Vec<usize> = (1..d).map(|j| s.right(j)).collect();
    tournament(&mut arcs, &tl);
    tournament(&mut arcs, &tr);
    for &x in &tl {
        arcs.push((s.s_l(), x));
        arcs.push((x, s.t_l()));
    }
    for &x in &tr {
        arcs.push((s.s_r(), x));
        arcs.push((x, s.t_r()));
    }
    arcs.push((s.plus(1, d), s.s_l()));
    arcs.push((s.t_l(), s.minus(1, 1)));
    arcs.push((s.minus(ell, d), s.s_r()));
    arcs.push((s.t_r(), s.plus(ell, 1)));
    for i in 1..ell {
        arcs.push((s.plus(i + 1, d), s.plus(i, 1)));
        arcs.push((s.minus(i, d), s.minus(i + 1, 1)));
    }
    for i in 1..=ell {
        for j in 2..d {
            match f.get(i, j) {
                Sign::Minus => arcs.push((s.plus(i, j), s.minus(i, d + 1 - j))),
                Sign::Plus => arcs.push((s.minus(i, d + 1 - j), s.plus(i, j))),
                Sign::Zero => {}
            }
        }
    }
    s.digraph = Digraph::from_arcs(n, arcs, false).expect("valid arcs");
    s.names = names;
    s
}

/// Member of the first family: constant `+` map.
pub fn family_f1(d: usize, ell: usize) -> Result<Sausage, SausageError> {
    Ok(build_sausage(&FMap::constant(d, ell, Sign::Plus)?))
}

/// Member of the second family with its oriented indicator.
///
/// The map is `+` except `(1, d-1) -> 0`, leaving `u = v_{d-1}(T_+^1)` and
/// `v = v_2(T_-^1)` one short of degree `d`. The pair is `(u, v)` when every
/// directed path from `v` to `u` has length at least 3, else `(v, u)`.
pub fn family_f2(d: usize, ell: usize) -> Result<(Sausage, Indicator), SausageError> {
    if ell < 2 {
        return Err(SausageError::BadLength { ell, min: 2 });
    }
    let mut f = FMap::constant(d, ell, Sign::Plus)?;
    f.set(1, d - 1, Sign::Zero);
    let s = build_sausage(&f);
    let (u, v) = (s.plus(1, d - 1), s.minus(1, 2));
    let far = |from: usize, to: usize| directed_dist(&s.digraph, from, to).is_none_or(|k| k >= 3);
    let (input, output) = if far(v, u) {
        (u, v)
    } else if far(u, v) {
        (v, u)
    } else {
        return Err(SausageError::NoOrientation);
    };
    let ind = Indicator::digraph(s.digraph.clone(), input, output).expect("distinct vertices");
    Ok((s, ind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn fmap_roundtrip_and_order() {
        let f = FMap::parse(4, 3, "--+00-").unwrap();
        assert_eq!(f.get(1, 3), Sign::Minus);
        assert_eq!(f.get(2, 3), Sign::Plus);
        assert_eq!(f.get(2, 2), Sign::Zero);
        assert_eq!(f.get(3, 2), Sign::Minus);
        assert_eq!(f.to_string(), "--+00-");
        assert!(FMap::parse(4, 3, "--+0").is_err());
        assert!(FMap::parse(4, 3, "--+0x-").is_err());
        let zero = FMap::constant(4, 3, Sign::Zero).unwrap();
        assert!(fmap_leq(&zero, &f).unwrap());
        assert!(!fmap_leq(&f, &zero).unwrap());
        let plus = FMap::constant(3, 2, Sign::Plus).unwrap();
        assert_eq!(fmap_inv(&plus), FMap::constant(3, 2, Sign::Minus).unwrap());
        assert_eq!(fmap_leq(&plus, &f), Err(SausageError::ShapeMismatch));
    }

    #[test]
    fn formula_examples() {
        let p = FMap::constant(3, 1, Sign::Plus).unwrap();
        let z = FMap::constant(3, 1, Sign::Zero).unwrap();
        let p2 = FMap::constant(3, 2, Sign::Plus).unwrap();
        assert_eq!(hom_count_formula(&p, &p).unwrap(), 1);
        assert_eq!(hom_count_formula(&z, &p).unwrap(), 2);
        assert_eq!(hom_count_formula(&p, &p2).unwrap(), 0);
        assert_eq!(hom_count_formula(&p, &z).unwrap(), 0);
    }

    #[test]
    fn sizes_and_names() {
        let s = family_f1(3, 1).unwrap();
        assert_eq!(s.digraph.n(), 14);
        assert_eq!(s.index_of("sl"), Some(s.s_l()));
        assert_eq!(s.names[s.minus(1, 2)], "v2(T-1)");
        assert!(s.digraph.is_oriented());
    }

    #[test]
    fn all_maps_count() {
        assert_eq!(FMap::all(4, 2).unwrap().len(), 81);
        assert_eq!(FMap::all(3, 1).unwrap()[0].to_string(), "+");
    }

    fn named_arcs(s: &Sausage) -> Vec<(String, String)> {
        let mut v: Vec<_> = s
            .digraph
            .arcs()
            .map(|(a, b)| (s.names[a].clone(), s.names[b].clone()))
            .collect();
        v.sort();
        v
    }

    fn has(s: &Sausage, a: &str, b: &str) -> bool {
        s.digraph
            .has_arc(s.index_of(a).unwrap(), s.index_of(b).unwrap())
    }

    #[test]
    fn figure_two_instance() {
        let s = build_sausage(&FMap::parse(4, 3, "--+00-").unwrap());
        assert_eq!(s.digraph.n(), 34);
        assert_eq!(s.digraph.arc_count(), 66);
        let cross = [
            ("v3(T+1)", "v2(T-1)"),
            ("v2(T+1)", "v3(T-1)"),
            ("v2(T-2)", "v3(T+2)"),
            ("v2(T+3)", "v3(T-3)"),
        ];
        for (a, b) in cross {
            assert!(has(&s, a, b), "{a} -> {b}");
        }
        let links = [
            ("v4(T+1)", "sl"),
            ("tl", "v1(T-1)"),
            ("v4(T-3)", "sr"),
            ("tr", "v1(T+3)"),
            ("v4(T+2)", "v1(T+1)"),
            ("v4(T+3)", "v1(T+2)"),
            ("v4(T-1)", "v1(T-2)"),
            ("v4(T-2)", "v1(T-3)"),
            ("sl", "v2(Tl)"),
            ("v3(Tr)", "tr"),
            ("v1(Tl)", "v3(Tl)"),
        ];
        for (a, b) in links {
            assert!(has(&s, a, b), "{a} -> {b}");
        }
        let short: BTreeSet<&str> = ["v2(T+2)", "v3(T-2)", "v3(T+3)", "v2(T-3)"].into();
        for v in 0..s.digraph.n() {
            let want = if short.contains(s.names[v].as_str()) {
                3
            } else {
                4
            };
            assert_eq!(s.digraph.total_degree(v), want, "{}", s.names[v]);
        }
        let arcs = named_arcs(&s);
        assert_eq!(
            arcs.iter()
                .filter(|(a, b)| a.contains("T+") && b.contains("T-")
                    || a.contains("T-") && b.contains("T+"))
                .count(),
            4
        );
    }

    fn on_underlying_triangle(d: &Digraph, v: usize) -> bool {
        let g = d.underlying();
        let nb = g.neighbours(v);
        nb.iter().any(|&a| {
            nb.iter()
                .any(|&b| a < b && g.has_edge(a as usize, b as usize))
        })
    }

    fn degree_law_holds(s: &Sausage) -> bool {
        let (d, ell) = (s.d(), s.ell());
        let mut short = BTreeSet::new();
        for i in 1..=ell {
            for j in 2..d {
                if s.f.get(i, j) == Sign::Zero {
                    short.insert(s.plus(i, j));
                    short.insert(s.minus(i, d + 1 - j));
                }
            }
        }
        (0..s.digraph.n())
            .all(|v| s.digraph.total_degree(v) == if short.contains(&v) { d - 1 } else { d })
    }

    #[test]
    fn families_shape() {
        for d in 3..=5 {
            for ell in 1..=3 {
                let s = family_f1(d, ell).unwrap();
                assert!((0..s.digraph.n()).all(|v| s.digraph.total_degree(v) == d));
                assert!((0..s.digraph.n()).all(|v| on_underlying_triangle(&s.digraph, v)));
            }
            for ell in 2..=4 {
                let (s, ind) = family_f2(d, ell).unwrap();
                let low: Vec<usize> = (0..s.digraph.n())
                    .filter(|&v| s.digraph.total_degree(v) == d - 1)
                    .collect();
                let mut pair = vec![ind.input(), ind.output()];
                pair.sort();
                assert_eq!(low, pair);
                let g = s.digraph.underlying();
                assert!(crate::metrics::dist(&g, ind.input(), ind.output()).unwrap() >= 3);
            }
        }
        assert!(family_f2(3, 1).is_err());
        assert!(family_f1(2, 1).is_err());
    }

    #[test]
    fn formula_matches_engine_small() {
        use crate::homsearch::count_homs;
        let maps = FMap::all(3, 1).unwrap();
        let maps2 = FMap::all(3, 2).unwrap();
        let all: Vec<&FMap> = maps.iter().chain(&maps2).collect();
        let built: Vec<Sausage> = all.iter().map(|f| build_sausage(f)).collect();
        for (a, sa) in all.iter().zip(&built) {
            for (b, sb) in all.iter().zip(&built) {
                let want = hom_count_formula(a, b).unwrap() as u128;
                assert_eq!(count_homs(&sa.digraph, &sb.digraph), want, "{a} -> {b}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn degree_law_random(d in 3usize..=7, ell in 1usize..=4, seed in proptest::prelude::any::<u64>()) {
            let mut f = FMap::constant(d, ell, Sign::Zero).unwrap();
            let mut x = seed;
            for i in 1..=ell {
                for j in 2..d {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    f.set(i, j, [Sign::Plus, Sign::Zero, Sign::Minus][(x >> 33) as usize % 3]);
                }
            }
            let s = build_sausage(&f);
            proptest::prop_assert!(degree_law_holds(&s));
            proptest::prop_assert!(s.digraph.is_oriented());
            proptest::prop_assert_eq!(fmap_inv(&fmap_inv(&f)), f);
        }
    }
}
