//! Backtracking search with bitset domains and a trail.
//!
//! Domains live in one flat `u64` array (one row of `words` per source
//! vertex). Every word overwritten during propagation is pushed on the trail
//! so a branch is undone by popping back to a mark.

use super::structure::Compiled;
use super::{Mode, Pruning};
use crate::bitset::words_for;
use crate::metrics::parity_bfs;
use rayon::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

const NONE: u32 = u32::MAX;
const UNSEEN: u32 = u32::MAX;
const INF8: u8 = u8::MAX;
/// Above this many ball entries the parity filter is skipped.
const BALL_BUDGET: usize = 40_000_000;
/// Odd closed walks longer than this are treated as unbounded by the unary filter.
const ODD_WALK_CAP: u32 = 15;

pub(crate) struct Params {
    pub mode: Mode,
    pub limit: Option<usize>,
    pub injective: bool,
    /// Only maps with `f(f(x)) = f(x)` are admitted.
    pub idempotent: bool,
    pub pruning: Pruning,
    pub identity_last: bool,
    pub deadline: Option<Instant>,
    pub node_limit: Option<u64>,
    pub radius: u32,
}

enum DistData {
    Off,
    /// Per source vertex: `(y, even, odd)` walk-length bounds, grouped by bounds.
    Parity {
        balls: Vec<Vec<(u32, u8, u8)>>,
        radius: u32,
    },
    /// Per source vertex: `(y, k, dir)` with a walk of length exactly `k`
    /// from (dir 0) or into (dir 1) the vertex; target rows indexed likewise.
    Walks {
        lists: Vec<Vec<(u32, u8, u8)>>,
        rows: Vec<u64>,
        radius: u32,
    },
}

pub(crate) struct Engine<'a> {
    s: &'a Compiled,
    t: &'a Compiled,
    cmap: Vec<usize>,
    words: usize,
    out_rows: Vec<u64>,
    in_rows: Vec<u64>,
    init_dom: Vec<u64>,
    feasible: bool,
    rank: Vec<u32>,
    dist: DistData,
    p: Params,
}

#[derive(Clone)]
pub(crate) struct State {
    dom: Vec<u64>,
    size: Vec<u32>,
    val: Vec<u32>,
    nassigned: usize,
    trail: Vec<(usize, u64)>,
    size_trail: Vec<(u32, u32)>,
    te: Vec<u32>,
    to: Vec<u32>,
    touched: Vec<u32>,
    queue: Vec<(u32, u32)>,
    scratch: Vec<u64>,
    pub nodes: u64,
    pub timed_out: bool,
}

#[derive(Default)]
pub(crate) struct Sink {
    pub maps: Vec<Vec<u32>>,
    pub count: u128,
    pub stop: bool,
}

struct Frame {
    var: u32,
    cands: Vec<u32>,
    next: usize,
    active: bool,
    mark: usize,
    smark: usize,
}

fn rows_for(lists: &[Vec<Vec<u32>>], n: usize, words: usize) -> Vec<u64> {
    let mut rows = vec![0u64; lists.len() * n * words];
    for (c, per_v) in lists.iter().enumerate() {
        for (v, l) in per_v.iter().enumerate() {
            let base = (c * n + v) * words;
            for &w in l {
                rows[base + (w as usize >> 6)] |= 1u64 << (w & 63);
            }
        }
    }
    rows
}

fn odd_walks_capped<'a, F>(n: usize, nbrs: F, cap: u32) -> Vec<u32>
where
    F: Fn(usize) -> &'a [u32] + Copy,
{
    (0..n).map(|v| parity_bfs(n, nbrs, v, cap).1[v]).collect()
}

impl<'a> Engine<'a> {
    pub fn new(s: &'a Compiled, t: &'a Compiled, cmap: Option<Vec<usize>>, p: Params) -> Self {
        let words = words_for(t.n);
        let feasible = cmap.is_some();
        let cmap = cmap.unwrap_or_default();
        let (out_rows, in_rows) = if feasible {
            let o = rows_for(&t.out, t.n, words);
            let i = if t.symmetric {
                Vec::new()
            } else {
                rows_for(&t.inn, t.n, words)
            };
            (o, i)
        } else {
            (Vec::new(), Vec::new())
        };
        let mut e = Engine {
            s,
            t,
            cmap,
            words,
            out_rows,
            in_rows,
            init_dom: Vec::new(),
            feasible,
            rank: Vec::new(),
            dist: DistData::Off,
            p,
        };
        if e.feasible {
            e.init_domains();
            e.rank = e.static_rank();
            e.dist = e.build_dist();
        }
        e
    }

    #[inline]
    fn out_row(&self, c: usize, v: usize) -> &[u64] {
        let base = (c * self.t.n + v) * self.words;
        &self.out_rows[base..base + self.words]
    }

    #[inline]
    fn in_row(&self, c: usize, v: usize) -> &[u64] {
        let rows = if self.t.symmetric {
            &self.out_rows
        } else {
            &self.in_rows
        };
        let base = (c * self.t.n + v) * self.words;
        &rows[base..base + self.words]
    }

    #[inline]
    fn t_has_arc(&self, c: usize, u: u32, v: u32) -> bool {
        (self.out_row(c, u as usize)[v as usize >> 6] >> (v & 63)) & 1 == 1
    }

    fn init_domains(&mut self) {
        let (s, t, words) = (self.s, self.t, self.words);
        let mut dom = vec![0u64; s.n * words];
        let mut full = vec![!0u64; words];
        if t.n % 64 != 0 {
            if let Some(l) = full.last_mut() {
                *l = (1u64 << (t.n % 64)) - 1;
            }
        }
        let ow = if self.p.pruning.odd_walk && s.n * t.n <= 400_000_000 {
            let cap = ODD_WALK_CAP;
            let (sw, tw) = if s.symmetric {
                (
                    odd_walks_capped(s.n, |v| &s.und[v][..], cap),
                    odd_walks_capped(t.n, |v| &t.und[v][..], cap),
                )
            } else {
                (
                    odd_walks_capped(s.n, |v| &s.flat_out[v][..], cap),
                    odd_walks_capped(t.n, |v| &t.flat_out[v][..], cap),
                )
            };
            Some((sw, tw))
        } else {
            None
        };
        let mut looped: Vec<Vec<u64>> = Vec::new();
        for c in 0..t.ncol {
            let mut r = vec![0u64; words];
            for w in 0..t.n {
                if t.loops[c][w] {
                    r[w >> 6] |= 1 << (w & 63);
                }
            }
            looped.push(r);
        }
        for x in 0..s.n {
            let row = &mut dom[x * words..(x + 1) * words];
            row.copy_from_slice(&full);
            for c in 0..s.ncol {
                if s.loops[c][x] {
                    let tc = self.cmap[c];
                    row.iter_mut().zip(&looped[tc]).for_each(|(a, b)| *a &= b);
                }
            }
            if let Some((sw, tw)) = &ow {
                if sw[x] != UNSEEN {
                    for w in 0..t.n {
                        if tw[w] > sw[x] {
                            row[w >> 6] &= !(1u64 << (w & 63));
                        }
                    }
                }
            }
            if self.p.injective && self.p.pruning.degree {
                for w in 0..t.n {
                    let ok = (0..s.ncol).all(|c| {
                        let tc = self.cmap[c];
                        s.out_degree(c, x) <= t.out_degree(tc, w)
                            && s.in_degree(c, x) <= t.in_degree(tc, w)
                    });
                    if !ok {
                        row[w >> 6] &= !(1u64 << (w & 63));
                    }
                }
            }
        }
        full.clear();
        self.init_dom = dom;
    }

    /// Connected expansion from a max-degree root, smallest index on ties.
    fn static_rank(&self) -> Vec<u32> {
        let s = self.s;
        let mut rank = vec![NONE; s.n];
        let mut order = Vec::with_capacity(s.n);
        let mut by_degree: Vec<usize> = (0..s.n).collect();
        by_degree.sort_by_key(|&v| (std::cmp::Reverse(s.und[v].len()), v));
        for &root in &by_degree {
            if rank[root] != NONE {
                continue;
            }
            rank[root] = order.len() as u32;
            order.push(root);
            let mut i = order.len() - 1;
            while i < order.len() {
                let u = order[i];
                i += 1;
                for &w in &s.und[u] {
                    if rank[w as usize] == NONE {
                        rank[w as usize] = order.len() as u32;
                        order.push(w as usize);
                    }
                }
            }
        }
        rank
    }

    fn build_dist(&self) -> DistData {
        if !self.p.pruning.distance || self.p.radius < 2 {
            return DistData::Off;
        }
        let (s, t) = (self.s, self.t);
        let r = self.p.radius.min(254);
        if s.symmetric {
            let mut balls = Vec::with_capacity(s.n);
            let mut total = 0usize;
            for x in 0..s.n {
                let (ev, od) = parity_bfs(s.n, |v| &s.und[v][..], x, r);
                let mut ball: Vec<(u32, u8, u8)> = (0..s.n)
                    .filter(|&y| y != x && (ev[y] != UNSEEN || od[y] != UNSEEN))
                    .map(|y| {
                        let f = |d: u32| if d == UNSEEN { INF8 } else { d as u8 };
                        (y as u32, f(ev[y]), f(od[y]))
                    })
                    .collect();
                ball.sort_unstable_by_key(|&(y, e, o)| (e, o, y));
                total += ball.len();
                if total > BALL_BUDGET {
                    return DistData::Off;
                }
                balls.push(ball);
            }
            DistData::Parity { balls, radius: r }
        } else {
            let r = r.min(6);
            let words = self.words;
            let kmax = r as usize;
            if t.n * kmax * 2 * words > 200_000_000 {
                return DistData::Off;
            }
            let layers = |n: usize, nb: &Vec<Vec<u32>>, x: usize| -> Vec<Vec<u32>> {
                let mut cur = vec![false; n];
                cur[x] = true;
                let mut out = Vec::new();
                for _ in 1..=kmax {
                    let mut next = vec![false; n];
                    for u in (0..n).filter(|&u| cur[u]) {
                        for &w in &nb[u] {
                            next[w as usize] = true;
                        }
                    }
                    out.push((0..n as u32).filter(|&w| next[w as usize]).collect());
                    cur = next;
                }
                out
            };
            let mut lists = Vec::with_capacity(s.n);
            let mut total = 0usize;
            for x in 0..s.n {
                let mut l = Vec::new();
                for (dir, nb) in [(0u8, &s.flat_out), (1u8, &s.flat_in)] {
                    for (k, layer) in layers(s.n, nb, x).into_iter().enumerate().skip(1) {
                        l.extend(
                            layer
                                .into_iter()
                                .filter(|&y| y as usize != x)
                                .map(|y| (y, (k + 1) as u8, dir)),
                        );
                    }
                }
                total += l.len();
                if total > BALL_BUDGET {
                    return DistData::Off;
                }
                lists.push(l);
            }
            let mut rows = vec![0u64; t.n * kmax * 2 * words];
            for w in 0..t.n {
                for (dir, nb) in [(0usize, &t.flat_out), (1usize, &t.flat_in)] {
                    for (k, layer) in layers(t.n, nb, w).into_iter().enumerate() {
                        let base = ((w * kmax + k) * 2 + dir) * words;
                        for z in layer {
                            rows[base + (z as usize >> 6)] |= 1 << (z & 63);
                        }
                    }
                }
            }
            DistData::Walks {
                lists,
                rows,
                radius: kmax as u32,
            }
        }
    }

    pub fn initial_state(&self) -> State {
        let s = self.s;
        let size = (0..s.n)
            .map(|x| {
                self.init_dom[x * self.words..(x + 1) * self.words]
                    .iter()
                    .map(|w| w.count_ones())
                    .sum()
            })
            .collect();
        State {
            dom: self.init_dom.clone(),
            size,
            val: vec![NONE; s.n],
            nassigned: 0,
            trail: Vec::new(),
            size_trail: Vec::new(),
            te: vec![UNSEEN; self.t.n],
            to: vec![UNSEEN; self.t.n],
            touched: Vec::new(),
            queue: Vec::new(),
            scratch: vec![0; self.words],
            nodes: 0,
            timed_out: false,
        }
    }

    #[inline]
    fn restrict(&self, st: &mut State, y: usize, mask: &[u64]) -> bool {
        let base = y * self.words;
        let mut changed = false;
        let mut cnt = 0u32;
        for (i, &m) in mask.iter().enumerate() {
            let old = st.dom[base + i];
            let new = old & m;
            if new != old {
                st.trail.push((base + i, old));
                st.dom[base + i] = new;
                changed = true;
            }
            cnt += new.count_ones();
        }
        if changed {
            st.size_trail.push((y as u32, st.size[y]));
            st.size[y] = cnt;
        }
        cnt > 0
    }

    /// Removes the values in `mask` from the domain of `y`.
    #[inline]
    fn exclude(&self, st: &mut State, y: usize, mask: &[u64]) -> bool {
        let base = y * self.words;
        let mut changed = false;
        let mut cnt = 0u32;
        for (i, &m) in mask.iter().enumerate() {
            let old = st.dom[base + i];
            let new = old & !m;
            if new != old {
                st.trail.push((base + i, old));
                st.dom[base + i] = new;
                changed = true;
            }
            cnt += new.count_ones();
        }
        if changed {
            st.size_trail.push((y as u32, st.size[y]));
            st.size[y] = cnt;
        }
        cnt > 0
    }

    /// Narrows the domain of `y` to the single value `w`.
    fn fix(&self, st: &mut State, y: usize, w: u32) -> bool {
        let base = y * self.words;
        let (wi, bit) = (w as usize >> 6, 1u64 << (w & 63));
        if st.dom[base + wi] & bit == 0 {
            return false;
        }
        if st.size[y] == 1 {
            return true;
        }
        for i in 0..self.words {
            let old = st.dom[base + i];
            let new = if i == wi { bit } else { 0 };
            if new != old {
                st.trail.push((base + i, old));
                st.dom[base + i] = new;
            }
        }
        st.size_trail.push((y as u32, st.size[y]));
        st.size[y] = 1;
        true
    }

    #[inline]
    fn remove_value(&self, st: &mut State, y: usize, w: u32) -> bool {
        let idx = y * self.words + (w as usize >> 6);
        let bit = 1u64 << (w & 63);
        let old = st.dom[idx];
        if old & bit != 0 {
            st.trail.push((idx, old));
            st.dom[idx] = old & !bit;
            st.size_trail.push((y as u32, st.size[y]));
            st.size[y] -= 1;
        }
        st.size[y] > 0
    }

    fn undo(st: &mut State, mark: usize, smark: usize) {
        while st.trail.len() > mark {
            let (i, old) = st.trail.pop().unwrap();
            st.dom[i] = old;
        }
        while st.size_trail.len() > smark {
            let (y, old) = st.size_trail.pop().unwrap();
            st.size[y as usize] = old;
        }
    }

    /// Assigns `x -> w` and propagates; false on a dead end.
    fn assign(&self, st: &mut State, x: usize, w: u32) -> bool {
        let s = self.s;
        st.val[x] = w;
        st.nassigned += 1;
        for c in 0..s.ncol {
            if s.loops[c][x] && !self.t_has_arc(self.cmap[c], w, w) {
                return false;
            }
        }
        if self.p.injective {
            for y in 0..s.n {
                if st.val[y] == NONE {
                    if !self.remove_value(st, y, w) {
                        return false;
                    }
                } else if y != x && st.val[y] == w {
                    return false;
                }
            }
        }
        if self.p.idempotent && w as usize != x {
            // x leaves the image and w becomes a fixed point.
            let wu = w as usize;
            if st.val[wu] == NONE {
                if !self.fix(st, wu, w) {
                    return false;
                }
            } else if st.val[wu] != w {
                return false;
            }
            for y in 0..s.n {
                if y == x {
                    continue;
                }
                if st.val[y] == NONE {
                    if !self.remove_value(st, y, x as u32) {
                        return false;
                    }
                } else if st.val[y] as usize == x {
                    return false;
                }
            }
        }
        let fc = self.p.pruning.forward_check;
        if fc && self.p.injective && self.p.identity_last {
            // A bijective endomorphism of a finite structure is an automorphism, so non-arcs are kept too.
            for c in 0..s.ncol {
                let tc = self.cmap[c];
                for y in 0..s.n {
                    if y == x || st.val[y] != NONE {
                        continue;
                    }
                    if !self.t_has_arc(tc, x as u32, y as u32)
                        && !self.exclude(st, y, self.out_row(tc, w as usize))
                    {
                        return false;
                    }
                    if !s.symmetric
                        && !self.t_has_arc(tc, y as u32, x as u32)
                        && !self.exclude(st, y, self.in_row(tc, w as usize))
                    {
                        return false;
                    }
                }
            }
        }
        for c in 0..s.ncol {
            let tc = self.cmap[c];
            for &y in &s.out[c][x] {
                let y = y as usize;
                if y == x {
                    continue;
                }
                if st.val[y] != NONE {
                    if !self.t_has_arc(tc, w, st.val[y]) {
                        return false;
                    }
                } else if fc && !self.restrict(st, y, self.out_row(tc, w as usize)) {
                    return false;
                }
            }
            for &y in &s.inn[c][x] {
                let y = y as usize;
                if y == x {
                    continue;
                }
                if st.val[y] != NONE {
                    if !self.t_has_arc(tc, st.val[y], w) {
                        return false;
                    }
                } else if fc && !self.restrict(st, y, self.in_row(tc, w as usize)) {
                    return false;
                }
            }
        }
        match &self.dist {
            DistData::Off => true,
            DistData::Parity { balls, radius } => self.apply_parity(st, &balls[x], w, *radius),
            DistData::Walks {
                lists,
                rows,
                radius,
            } => {
                let kmax = *radius as usize;
                for &(y, k, dir) in &lists[x] {
                    let y = y as usize;
                    if st.val[y] != NONE {
                        continue;
                    }
                    let base =
                        ((w as usize * kmax + (k as usize - 1)) * 2 + dir as usize) * self.words;
                    if !self.restrict(st, y, &rows[base..base + self.words]) {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn apply_parity(&self, st: &mut State, ball: &[(u32, u8, u8)], w: u32, radius: u32) -> bool {
        if ball.is_empty() {
            return true;
        }
        let t = self.t;
        // Bounded parity BFS from w in the target.
        st.te[w as usize] = 0;
        st.touched.push(w);
        st.queue.clear();
        st.queue.push((w, 0));
        let mut head = 0;
        while head < st.queue.len() {
            let (u, d) = st.queue[head];
            head += 1;
            if d >= radius {
                continue;
            }
            let nd = d + 1;
            for &z in &t.und[u as usize] {
                let zi = z as usize;
                let seen = if nd % 2 == 0 { st.te[zi] } else { st.to[zi] };
                if seen == UNSEEN {
                    if st.te[zi] == UNSEEN && st.to[zi] == UNSEEN {
                        st.touched.push(z);
                    }
                    if nd % 2 == 0 {
                        st.te[zi] = nd;
                    } else {
                        st.to[zi] = nd;
                    }
                    st.queue.push((z, nd));
                }
            }
        }
        let mut ok = true;
        let mut i = 0;
        let mut scratch = std::mem::take(&mut st.scratch);
        while i < ball.len() && ok {
            let (_, e, o) = ball[i];
            let mut j = i;
            while j < ball.len() && ball[j].1 == e && ball[j].2 == o {
                j += 1;
            }
            if ball[i..j]
                .iter()
                .any(|&(y, _, _)| st.val[y as usize] == NONE)
            {
                for &z in &st.touched {
                    let zi = z as usize;
                    if (e == INF8 || st.te[zi] <= e as u32) && (o == INF8 || st.to[zi] <= o as u32)
                    {
                        scratch[zi >> 6] |= 1 << (zi & 63);
                    }
                }
                for &(y, _, _) in &ball[i..j] {
                    if st.val[y as usize] == NONE && !self.restrict(st, y as usize, &scratch) {
                        ok = false;
                        break;
                    }
                }
                for &z in &st.touched {
                    scratch[z as usize >> 6] = 0;
                }
            }
            i = j;
        }
        st.scratch = scratch;
        for &z in &st.touched {
            st.te[z as usize] = UNSEEN;
            st.to[z as usize] = UNSEEN;
        }
        st.touched.clear();
        ok
    }

    fn select(&self, st: &State) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, u32::MAX);
        for x in 0..self.s.n {
            if st.val[x] == NONE {
                let k = (st.size[x], self.rank[x]);
                if k < key {
                    key = k;
                    best = x;
                }
            }
        }
        best
    }

    fn candidates(&self, st: &State, x: usize) -> Vec<u32> {
        let row = &st.dom[x * self.words..(x + 1) * self.words];
        let mut c: Vec<u32> = Vec::with_capacity(st.size[x] as usize);
        let mut has_self = false;
        for (i, &word) in row.iter().enumerate() {
            let mut b = word;
            while b != 0 {
                let v = (i * 64 + b.trailing_zeros() as usize) as u32;
                b &= b - 1;
                if self.p.identity_last && v as usize == x {
                    has_self = true;
                } else {
                    c.push(v);
                }
            }
        }
        if has_self {
            c.push(x as u32);
        }
        c
    }

    fn record(&self, st: &State, sink: &mut Sink) {
        let reached = |k: usize| self.p.limit.is_some_and(|l| k >= l);
        match self.p.mode {
            Mode::Enumerate => {
                sink.maps.push(st.val.clone());
                sink.stop = reached(sink.maps.len());
            }
            Mode::Count => {
                sink.count += 1;
                sink.stop = reached(sink.count as usize);
            }
            Mode::FindFirst => {
                sink.maps.push(st.val.clone());
                sink.stop = true;
            }
            Mode::FindNonIdentity => {
                if st.val.iter().enumerate().any(|(i, &v)| v as usize != i) {
                    sink.maps.push(st.val.clone());
                    sink.stop = true;
                }
            }
        }
        if sink.stop || self.p.mode != Mode::Count {
            sink.count = sink.count.max(sink.maps.len() as u128);
        }
    }

    fn out_of_time(&self, st: &mut State) -> bool {
        if st.nodes & 1023 == 0
            && (self.p.deadline.is_some_and(|d| Instant::now() >= d)
                || self.p.node_limit.is_some_and(|l| st.nodes >= l))
        {
            st.timed_out = true;
        }
        st.timed_out
    }

    /// Depth-first search from the current state.
    fn search(&self, st: &mut State, sink: &mut Sink, cancel: Option<(&AtomicUsize, usize)>) {
        if st.nassigned == self.s.n {
            self.record(st, sink);
            return;
        }
        let first = self.select(st);
        let mut stack = vec![Frame {
            var: first as u32,
            cands: self.candidates(st, first),
            next: 0,
            active: false,
            mark: 0,
            smark: 0,
        }];
        while let Some(f) = stack.last_mut() {
            if f.active {
                Self::undo(st, f.mark, f.smark);
                st.val[f.var as usize] = NONE;
                st.nassigned -= 1;
                f.active = false;
            }
            if sink.stop || st.timed_out || f.next == f.cands.len() {
                stack.pop();
                continue;
            }
            let w = f.cands[f.next];
            f.next += 1;
            f.mark = st.trail.len();
            f.smark = st.size_trail.len();
            f.active = true;
            let var = f.var as usize;
            st.nodes += 1;
            if self.out_of_time(st) {
                continue;
            }
            if let Some((best, mine)) = cancel {
                if st.nodes & 1023 == 0 && best.load(Ordering::Relaxed) < mine {
                    sink.stop = true;
                    continue;
                }
            }
            if self.assign(st, var, w) {
                if st.nassigned == self.s.n {
                    self.record(st, sink);
                } else {
                    let y = self.select(st);
                    let cands = self.candidates(st, y);
                    stack.push(Frame {
                        var: y as u32,
                        cands,
                        next: 0,
                        active: false,
                        mark: 0,
                        smark: 0,
                    });
                }
            }
        }
    }

    /// Runs the whole search; returns (sink, nodes, complete).
    pub fn run(&self, jobs: usize) -> (Sink, u64, bool) {
        let mut sink = Sink::default();
        if !self.feasible || (self.s.n > 0 && self.t.n == 0) {
            return (sink, 0, true);
        }
        let mut st = self.initial_state();
        if st.size.contains(&0) {
            return (sink, 0, true);
        }
        if jobs <= 1 || self.s.n == 0 {
            self.search(&mut st, &mut sink, None);
            let complete = sink.stop || !st.timed_out;
            return (sink, st.nodes, complete);
        }
        let root = self.select(&st);
        let cands = self.candidates(&st, root);
        let best = AtomicUsize::new(usize::MAX);
        let early = matches!(self.p.mode, Mode::FindFirst | Mode::FindNonIdentity);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let parts: Vec<(Sink, u64, bool)> = pool.install(|| {
            cands
                .par_iter()
                .enumerate()
                .map(|(i, &w)| {
                    let mut local = Sink::default();
                    if early && best.load(Ordering::Relaxed) < i {
                        return (local, 0, true);
                    }
                    let mut st2 = st.clone();
                    st2.nodes = 1;
                    if self.assign(&mut st2, root, w) {
                        self.search(&mut st2, &mut local, early.then_some((&best, i)));
                    }
                    if early && local.stop {
                        best.fetch_min(i, Ordering::Relaxed);
                    }
                    (local, st2.nodes, !st2.timed_out)
                })
                .collect()
        });
        let mut nodes = 0;
        let mut complete = true;
        for (i, (part, n, c)) in parts.into_iter().enumerate() {
            nodes += n;
            if sink.stop {
                continue;
            }
            // Candidates after a hit may have been cancelled; they do not count.
            complete &= c || (early && best.load(Ordering::Relaxed) < i);
            sink.count += part.count;
            sink.maps.extend(part.maps);
            match self.p.mode {
                Mode::FindFirst | Mode::FindNonIdentity => sink.stop = part.stop,
                Mode::Enumerate => {
                    if let Some(l) = self.p.limit {
                        if sink.maps.len() >= l {
                            sink.maps.truncate(l);
                            sink.stop = true;
                        }
                    }
                }
                Mode::Count => {
                    if let Some(l) = self.p.limit {
                        if sink.count >= l as u128 {
                            sink.count = l as u128;
                            sink.stop = true;
                        }
                    }
                }
            }
        }
        if sink.stop {
            complete = true;
        }
        (sink, nodes, complete)
    }
}
