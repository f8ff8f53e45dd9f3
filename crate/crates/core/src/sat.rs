//! A small CDCL SAT solver (watched literals, first-UIP learning, VSIDS,
//! phase saving, Luby restarts). Deterministic: no randomness anywhere.

/// Literal encoding: `2 * var` is positive, `2 * var + 1` negative.
pub(crate) type Lit = u32;

#[inline]
pub(crate) fn pos(var: usize) -> Lit {
    (var as Lit) << 1
}

#[inline]
pub(crate) fn neg(var: usize) -> Lit {
    ((var as Lit) << 1) | 1
}

#[inline]
fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

#[inline]
fn not(l: Lit) -> Lit {
    l ^ 1
}

const NO_REASON: u32 = u32::MAX;
const UNDEF: i8 = 0;

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Sat(Vec<bool>),
    Unsat,
    /// Conflict budget exhausted.
    Unknown,
}

pub(crate) struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    // per variable: 1 true, -1 false, 0 unassigned
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    phase: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: Heap,
    seen: Vec<bool>,
    unsat: bool,
    pub(crate) conflicts: u64,
}

impl Solver {
    pub(crate) fn new(num_vars: usize) -> Self {
        let mut heap = Heap::new(num_vars);
        let activity = vec![0.0; num_vars];
        for v in 0..num_vars {
            heap.insert(v, &activity);
        }
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            phase: vec![false; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            heap,
            seen: vec![false; num_vars],
            unsat: false,
            conflicts: 0,
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[var(l)];
        if l & 1 == 1 {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause at decision level 0. Must be called before `solve`.
    pub(crate) fn add_clause(&mut self, lits: &[Lit]) {
        if self.unsat {
            return;
        }
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[1] == not(w[0]) && var(w[0]) == var(w[1])) {
            return;
        }
        c.retain(|&l| self.value(l) != -1);
        if c.iter().any(|&l| self.value(l) == 1) {
            return;
        }
        match c.len() {
            0 => self.unsat = true,
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[c[0] as usize].push(ci);
        self.watches[c[1] as usize].push(ci);
        self.clauses.push(c);
        ci
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var(l);
        self.assigns[v] = if l & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = not(p);
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut conflict = None;
            let mut j = 0;
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let c = &mut self.clauses[ci as usize];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let first_val = {
                    let a = self.assigns[var(first)];
                    if first & 1 == 1 { -a } else { a }
                };
                if first_val == 1 {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let a = self.assigns[var(l)];
                    let val = if l & 1 == 1 { -a } else { a };
                    if val != -1 {
                        c.swap(1, k);
                        self.watches[c[1] as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if first_val == -1 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, ci);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    /// First-UIP learning; returns the learnt clause (asserting literal
    /// first) and the backjump level.
    fn analyze(&mut self, conflict: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut ci = conflict;
        let mut index = self.trail.len();
        loop {
            let start = usize::from(p.is_some());
            for k in start..self.clauses[ci as usize].len() {
                let q = self.clauses[ci as usize][k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] == self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[var(lit)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            ci = self.reason[var(lit)];
        }
        learnt[0] = not(p.expect("conflict at positive level"));
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var(learnt[1])];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let stop = self.trail_lim[level as usize];
        for k in (stop..self.trail.len()).rev() {
            let v = var(self.trail[k]);
            self.phase[v] = self.trail[k] & 1 == 0;
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            if !self.heap.contains(v) {
                self.heap.insert(v, &self.activity);
            }
        }
        self.trail.truncate(stop);
        self.trail_lim.truncate(level as usize);
        self.qhead = stop;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(if self.phase[v] { pos(v) } else { neg(v) });
            }
        }
        None
    }

    /// Runs until satisfiable, unsatisfiable, or `max_conflicts` conflicts.
    pub(crate) fn solve(&mut self, max_conflicts: u64) -> Outcome {
        if self.unsat || self.propagate().is_some() {
            self.unsat = true;
            return Outcome::Unsat;
        }
        let mut restart = 0u64;
        loop {
            let limit = luby(restart) * 64;
            restart += 1;
            let mut local = 0u64;
            loop {
                if let Some(conflict) = self.propagate() {
                    self.conflicts += 1;
                    local += 1;
                    if self.decision_level() == 0 {
                        self.unsat = true;
                        return Outcome::Unsat;
                    }
                    let (learnt, back) = self.analyze(conflict);
                    self.backtrack(back);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let first = learnt[0];
                        let ci = self.attach(learnt);
                        self.enqueue(first, ci);
                    }
                    self.var_inc /= 0.95;
                    if self.conflicts >= max_conflicts {
                        self.backtrack(0);
                        return Outcome::Unknown;
                    }
                } else if local >= limit {
                    self.backtrack(0);
                    break;
                } else {
                    match self.pick_branch() {
                        None => {
                            let model = self.assigns.iter().map(|&a| a == 1).collect();
                            self.backtrack(0);
                            return Outcome::Sat(model);
                        }
                        Some(l) => {
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, NO_REASON);
                        }
                    }
                }
            }
        }
    }
}

// 1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, ... for x = 0, 1, 2, ...
fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

/// Max-heap of variables by activity; ties go to the lower index.
struct Heap {
    data: Vec<usize>,
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl Heap {
    fn new(n: usize) -> Self {
        Heap { data: Vec::with_capacity(n), pos: vec![ABSENT; n] }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != ABSENT
    }

    #[inline]
    fn above(a: usize, b: usize, act: &[f64]) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        self.pos[v] = self.data.len();
        self.data.push(v);
        self.up(self.data.len() - 1, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.data.first()?;
        let last = self.data.pop().expect("non-empty");
        self.pos[top] = ABSENT;
        if !self.data.is_empty() {
            self.data[0] = last;
            self.pos[last] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.data[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::above(v, self.data[parent], act) {
                break;
            }
            self.data[i] = self.data[parent];
            self.pos[self.data[i]] = i;
            i = parent;
        }
        self.data[i] = v;
        self.pos[v] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.data[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.data.len() {
                break;
            }
            let r = l + 1;
            let child = if r < self.data.len() && Self::above(self.data[r], self.data[l], act) { r } else { l };
            if !Self::above(self.data[child], v, act) {
                break;
            }
            self.data[i] = self.data[child];
            self.pos[self.data[i]] = i;
            i = child;
        }
        self.data[i] = v;
        self.pos[v] = i;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(clauses: &[Vec<Lit>], model: &[bool]) -> bool {
        clauses.iter().all(|c| c.iter().any(|&l| model[var(l)] == (l & 1 == 0)))
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_cases() {
        let mut s = Solver::new(1);
        s.add_clause(&[pos(0)]);
        s.add_clause(&[neg(0)]);
        assert_eq!(s.solve(100), Outcome::Unsat);

        let mut s = Solver::new(2);
        s.add_clause(&[pos(0), pos(1)]);
        s.add_clause(&[neg(0)]);
        assert_eq!(s.solve(100), Outcome::Sat(vec![false, true]));
    }

    // n + 1 pigeons into n holes
    fn pigeonhole(n: usize) -> (usize, Vec<Vec<Lit>>) {
        let x = |p: usize, h: usize| p * n + h;
        let mut cs: Vec<Vec<Lit>> = (0..=n).map(|p| (0..n).map(|h| pos(x(p, h))).collect()).collect();
        for h in 0..n {
            for p in 0..=n {
                for q in p + 1..=n {
                    cs.push(vec![neg(x(p, h)), neg(x(q, h))]);
                }
            }
        }
        ((n + 1) * n, cs)
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for n in 1..=6 {
            let (vars, cs) = pigeonhole(n);
            let mut s = Solver::new(vars);
            for c in &cs {
                s.add_clause(c);
            }
            assert_eq!(s.solve(1_000_000), Outcome::Unsat, "php({n})");
        }
    }

    #[test]
    fn budget_gives_unknown() {
        let (vars, cs) = pigeonhole(7);
        let mut s = Solver::new(vars);
        for c in &cs {
            s.add_clause(c);
        }
        assert_eq!(s.solve(3), Outcome::Unknown);
    }

    #[test]
    fn random_3sat_models_check() {
        // deterministic pseudo-random instances near the threshold
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let (mut sat, mut unsat) = (0, 0);
        for _ in 0..40 {
            let n = 14;
            let cs: Vec<Vec<Lit>> = (0..60)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = (next() % n) as usize;
                            if next() % 2 == 0 { pos(v) } else { neg(v) }
                        })
                        .collect()
                })
                .collect();
            let mut s = Solver::new(n as usize);
            for c in &cs {
                s.add_clause(c);
            }
            match s.solve(1_000_000) {
                Outcome::Sat(m) => {
                    assert!(check(&cs, &m));
                    sat += 1;
                }
                Outcome::Unsat => {
                    // exhaustive confirmation
                    assert!((0..1u32 << n).all(|bits| {
                        let m: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
                        !check(&cs, &m)
                    }));
                    unsat += 1;
                }
                Outcome::Unknown => panic!("budget"),
            }
        }
        assert!(sat > 0 && unsat > 0);
    }
}
