//! Bounded exhaustive search over fixed point data of one template.
//!
//! Discrete data (weights, lift weights, orientations, signatures of
//! 4-dimensional components) is enumerated. For each choice the
//! localization identities for `x^3` and `p_1 x` are linear in the
//! evaluation data and `t`, so those are found by exact elimination with
//! the remaining free unknowns enumerated within bounds. Every candidate
//! that survives is rebuilt as a [`Configuration`] and must pass
//! [`verify_case`] to be reported.
//!
//! Lift weights are fixed up to the global shift `a_Z -> a_Z + l`: the last
//! non-point component of the template always has `a = 0`. Point weight
//! triples are listed in ascending order.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::config::{
    gcd_all, AmbientData, ComponentKind, Configuration, FixedComponent, Flags, FourComponent, PointComponent,
    SurfaceComponent, Template,
};
use super::linear::{Checked, Overflow, Reduced, Q};
use super::local_data::{p1x_local_datum, x3_local_datum};
use super::verify::verify_case;

pub const MAX_SEARCH_WEIGHT: i64 = 64;
pub const MAX_SEARCH_LIFT: i64 = 10_000;
pub const MAX_SEARCH_EVAL: i64 = 1_000_000;
pub const MAX_SEARCH_AMBIENT: i64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchRanges {
    pub t_min: i64,
    pub t_max: i64,
    pub rho_min: i64,
    pub rho_max: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_weight: i64,
    pub max_abs_a: i64,
    pub max_abs_eval: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only weights equal to 1.
    pub semifree: bool,
    pub workers: usize,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            semifree: false,
            workers: 1,
            node_budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Consistent configurations in ascending order.
    pub hits: Vec<Configuration>,
    /// Enumeration nodes visited. Independent of the worker count.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search exceeds the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("intermediate value exceeds 128-bit arithmetic")]
    Overflow,
}

impl From<Overflow> for SearchError {
    fn from(_: Overflow) -> Self {
        SearchError::Overflow
    }
}

/// Rows of the coefficient vectors: `x^3` at `l^3, l^2, l, 1`, then `p_1 x`
/// at `l` and `1`.
const ROWS: usize = 6;
/// Equations solved by elimination: every row but the last.
const EQS: usize = 5;
const ROW_CONST: usize = 3;
const ROW_RHO: usize = 5;

type Vector = [Q; ROWS];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    X,
    Y1,
    Y2,
    X2,
    Xy,
    Y2Four,
}

fn set_field(c: &mut FixedComponent, f: Field, v: i64) {
    match (c, f) {
        (FixedComponent::Surface(s), Field::X) => s.ev_x = v,
        (FixedComponent::Surface(s), Field::Y1) => s.ev_y1 = v,
        (FixedComponent::Surface(s), Field::Y2) => s.ev_y2 = v,
        (FixedComponent::Four(f), Field::X2) => f.ev_x2 = v,
        (FixedComponent::Four(f), Field::Xy) => f.ev_xy = v,
        (FixedComponent::Four(f), Field::Y2Four) => f.ev_y2 = v,
        _ => unreachable!("field does not belong to component"),
    }
}

fn datum_vector(c: &FixedComponent) -> Checked<Vector> {
    let x3 = x3_local_datum(c);
    let p1x = p1x_local_datum(c);
    Ok([
        Q::from_rational(&x3.coeff(3))?,
        Q::from_rational(&x3.coeff(2))?,
        Q::from_rational(&x3.coeff(1))?,
        Q::from_rational(&x3.coeff(0))?,
        Q::from_rational(&p1x.coeff(1))?,
        Q::from_rational(&p1x.coeff(0))?,
    ])
}

fn add_vec(a: &Vector, b: &Vector) -> Checked<Vector> {
    let mut out = [Q::ZERO; ROWS];
    for i in 0..ROWS {
        out[i] = a[i].add(b[i])?;
    }
    Ok(out)
}

/// A non-point component with its evaluation data still unknown.
#[derive(Debug, Clone)]
struct Slot {
    component: FixedComponent,
    unknowns: Vec<Field>,
    base: Vector,
    columns: Vec<Vector>,
}

impl Slot {
    fn new(component: FixedComponent, unknowns: Vec<Field>) -> Checked<Slot> {
        let base = datum_vector(&component)?;
        let columns = unknowns
            .iter()
            .map(|&f| {
                let mut c = component;
                set_field(&mut c, f, 1);
                let v = datum_vector(&c)?;
                let mut col = [Q::ZERO; ROWS];
                for i in 0..ROWS {
                    col[i] = v[i].sub(base[i])?;
                }
                Ok(col)
            })
            .collect::<Checked<Vec<_>>>()?;
        Ok(Slot {
            component,
            unknowns,
            base,
            columns,
        })
    }
}

#[derive(Debug, Clone)]
struct PointVariant {
    point: PointComponent,
    vector: Vector,
}

struct Space {
    template: Template,
    ranges: SearchRanges,
    bounds: SearchBounds,
    flags: Flags,
    semifree: bool,
}

impl Space {
    fn weights(&self) -> std::ops::RangeInclusive<i64> {
        if self.semifree {
            1..=1
        } else {
            1..=self.bounds.max_weight
        }
    }

    fn lifts(&self, gauge: bool) -> std::ops::RangeInclusive<i64> {
        if gauge {
            0..=0
        } else {
            -self.bounds.max_abs_a..=self.bounds.max_abs_a
        }
    }

    fn surface_slots(&self, gauge: bool, split: bool) -> Checked<Vec<Slot>> {
        let mut out = Vec::new();
        for n1 in self.weights() {
            for n2 in self.weights() {
                if self.flags.effectiveness && gcd_all(&[n1, n2]) != 1 {
                    continue;
                }
                for a in self.lifts(gauge) {
                    let c = FixedComponent::Surface(SurfaceComponent {
                        weights: [n1, n2],
                        a,
                        ev_x: 0,
                        ev_y1: 0,
                        ev_y2: 0,
                        chi: 2,
                    });
                    let unknowns = if split {
                        vec![Field::X, Field::Y1]
                    } else {
                        vec![Field::X, Field::Y1, Field::Y2]
                    };
                    out.push(Slot::new(c, unknowns)?);
                }
            }
        }
        Ok(out)
    }

    fn four_slots(&self, b2: i64, gauge: bool) -> Checked<Vec<Slot>> {
        let signs: &[i64] = match b2 {
            0 => &[0],
            1 => &[-1, 1],
            _ => &[-2, 0, 2],
        };
        let mut out = Vec::new();
        for n in self.weights() {
            for &sign in signs {
                for a in self.lifts(gauge) {
                    let c = FixedComponent::Four(FourComponent {
                        weight: n,
                        a,
                        ev_x2: 0,
                        ev_xy: 0,
                        ev_y2: 0,
                        ev_p1: 3 * sign,
                        b2,
                        sign,
                        chi: 2 + b2,
                    });
                    let unknowns = if b2 == 0 {
                        Vec::new()
                    } else {
                        vec![Field::X2, Field::Xy, Field::Y2Four]
                    };
                    out.push(Slot::new(c, unknowns)?);
                }
            }
        }
        Ok(out)
    }

    fn points(&self, positive_only: bool) -> Checked<Vec<PointVariant>> {
        let eps: &[i64] = if positive_only { &[1] } else { &[-1, 1] };
        let mut out = Vec::new();
        for n1 in self.weights() {
            for n2 in n1..=*self.weights().end() {
                for n3 in n2..=*self.weights().end() {
                    if self.flags.effectiveness && gcd_all(&[n1, n2, n3]) != 1 {
                        continue;
                    }
                    for &e in eps {
                        for a in self.lifts(false) {
                            let point = PointComponent {
                                eps: e,
                                weights: [n1, n2, n3],
                                a,
                            };
                            let vector = datum_vector(&FixedComponent::Point(point))?;
                            out.push(PointVariant { point, vector });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Every combination of non-point slots, in template order.
    fn outer(&self) -> Checked<Vec<Vec<Slot>>> {
        let kinds: Vec<ComponentKind> = self
            .template
            .kinds()
            .iter()
            .copied()
            .filter(|k| *k != ComponentKind::Point)
            .collect();
        let split = self.template == Template::TwoSurfaces;
        let mut combos: Vec<Vec<Slot>> = vec![Vec::new()];
        for (i, kind) in kinds.iter().enumerate() {
            let gauge = i + 1 == kinds.len();
            let slots = match kind {
                ComponentKind::Surface => self.surface_slots(gauge, split)?,
                ComponentKind::Four(b2) => self.four_slots(*b2, gauge)?,
                ComponentKind::Point => unreachable!(),
            };
            let mut next = Vec::with_capacity(combos.len() * slots.len());
            for combo in &combos {
                for s in &slots {
                    if split {
                        if let (Some(FixedComponent::Surface(x)), FixedComponent::Surface(y)) =
                            (combo.first().map(|c| c.component), s.component)
                        {
                            if x.weights[1] != y.weights[1] {
                                continue;
                            }
                        }
                    }
                    let mut c = combo.clone();
                    c.push(s.clone());
                    next.push(c);
                }
            }
            combos = next;
        }
        Ok(combos)
    }

    fn point_count(&self) -> usize {
        self.template
            .kinds()
            .iter()
            .filter(|k| **k == ComponentKind::Point)
            .count()
    }

    /// Canonical order of two isolated points, plus the matched-weights
    /// restriction next to a surface.
    fn pair_allowed(&self, p: &PointComponent, q: &PointComponent) -> bool {
        if self.template == Template::SurfacePlusTwoPoints
            && self.flags.matched_point_weights
            && p.weights != q.weights
        {
            return false;
        }
        if self.flags.positive_base_point && q.eps == -1 {
            return true;
        }
        p <= q
    }
}

/// Node counter shared by workers. Nodes are flushed in batches; the
/// budget error depends only on the total, so it does not depend on the
/// number of workers.
struct Budget {
    used: AtomicU64,
    limit: u64,
}

struct Meter<'a> {
    budget: &'a Budget,
    pending: u64,
}

impl Meter<'_> {
    fn tick(&mut self, n: u64) -> Result<(), SearchError> {
        self.pending += n;
        if self.pending >= 4096 {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), SearchError> {
        let n = std::mem::take(&mut self.pending);
        let total = self.budget.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.budget.limit {
            return Err(SearchError::BudgetExceeded {
                budget: self.budget.limit,
            });
        }
        Ok(())
    }
}

/// Unknown vector layout: the slots' unknowns in order, then `t`.
struct System<'a> {
    slots: &'a [Slot],
    reduced: Reduced,
    free: Vec<usize>,
    rho_row: Vec<Q>,
    base: Vector,
    bounds: Vec<(i64, i64)>,
}

impl<'a> System<'a> {
    fn new(space: &Space, slots: &'a [Slot]) -> Checked<System<'a>> {
        let mut cols: Vec<Vector> = slots.iter().flat_map(|s| s.columns.iter().copied()).collect();
        let mut bounds: Vec<(i64, i64)> = cols
            .iter()
            .map(|_| (-space.bounds.max_abs_eval, space.bounds.max_abs_eval))
            .collect();
        let mut t_col = [Q::ZERO; ROWS];
        t_col[ROW_CONST] = Q::int(-1);
        cols.push(t_col);
        bounds.push((space.ranges.t_min, space.ranges.t_max));
        let a: Vec<Vec<Q>> = (0..EQS).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let reduced = Reduced::new(&a)?;
        let free = (0..cols.len()).filter(|j| !reduced.pivots.contains(j)).collect();
        let rho_row = cols.iter().map(|c| c[ROW_RHO]).collect();
        let base = slots
            .iter()
            .try_fold([Q::ZERO; ROWS], |acc, s| add_vec(&acc, &s.base))?;
        Ok(System {
            slots,
            reduced,
            free,
            rho_row,
            base,
            bounds,
        })
    }

    fn reduce(&self, v: &Vector) -> Checked<Vec<Q>> {
        self.reduced.apply(&v[..EQS])
    }
}

struct Worker<'a> {
    space: &'a Space,
    meter: Meter<'a>,
    hits: Vec<Configuration>,
}

impl Worker<'_> {
    fn run_outer(&mut self, slots: &[Slot], points: &[Vec<PointVariant>]) -> Result<(), SearchError> {
        self.meter.tick(1)?;
        let sys = System::new(self.space, slots)?;
        let base_tb = sys.reduce(&sys.base)?;
        let point_tb: Vec<Vec<Vec<Q>>> = points
            .iter()
            .map(|list| list.iter().map(|p| sys.reduce(&p.vector)).collect::<Checked<Vec<_>>>())
            .collect::<Checked<Vec<_>>>()?;
        match points.len() {
            0 => self.solve(&sys, &base_tb, sys.base, &[]),
            1 => {
                for (p, tb) in points[0].iter().zip(&point_tb[0]) {
                    self.meter.tick(1)?;
                    let tb = add_q(&base_tb, tb)?;
                    let v = add_vec(&sys.base, &p.vector)?;
                    self.solve(&sys, &tb, v, &[p.point])?;
                }
                Ok(())
            }
            _ => {
                for (p, tbp) in points[0].iter().zip(&point_tb[0]) {
                    let tb1 = add_q(&base_tb, tbp)?;
                    for (q, tbq) in points[1].iter().zip(&point_tb[1]) {
                        if !self.space.pair_allowed(&p.point, &q.point) {
                            continue;
                        }
                        self.meter.tick(1)?;
                        let tb = add_q(&tb1, tbq)?;
                        if tb[sys.reduced.rank()..].iter().any(|x| !x.is_zero()) {
                            continue;
                        }
                        let v = add_vec(&add_vec(&sys.base, &p.vector)?, &q.vector)?;
                        self.solve(&sys, &tb, v, &[p.point, q.point])?;
                    }
                }
                Ok(())
            }
        }
    }

    /// Enumerates the free unknowns for a fixed right-hand side.
    fn solve(&mut self, sys: &System, tb: &[Q], total: Vector, points: &[PointComponent]) -> Result<(), SearchError> {
        let rank = sys.reduced.rank();
        if tb[rank..].iter().any(|x| !x.is_zero()) {
            return Ok(());
        }
        let n = sys.bounds.len();
        let mut values = vec![0i64; n];
        for &f in &sys.free {
            values[f] = sys.bounds[f].0;
        }
        loop {
            self.meter.tick(1)?;
            if let Some(u) = self.pivots(sys, tb, &values)? {
                self.accept(sys, &u, &total, points)?;
            }
            // advance the odometer over the free unknowns
            let mut k = 0;
            loop {
                let Some(&f) = sys.free.get(k) else {
                    return Ok(());
                };
                if values[f] < sys.bounds[f].1 {
                    values[f] += 1;
                    break;
                }
                values[f] = sys.bounds[f].0;
                k += 1;
            }
        }
    }

    fn pivots(&self, sys: &System, tb: &[Q], free_values: &[i64]) -> Checked<Option<Vec<i64>>> {
        let mut u = free_values.to_vec();
        for (i, &p) in sys.reduced.pivots.iter().enumerate() {
            let mut v = tb[i].neg()?;
            for &f in &sys.free {
                let r = sys.reduced.rows[i][f];
                if !r.is_zero() {
                    v = v.sub(r.mul(Q::int(free_values[f]))?)?;
                }
            }
            let Some(x) = v.as_int() else {
                return Ok(None);
            };
            let (lo, hi) = sys.bounds[p];
            if x < i128::from(lo) || x > i128::from(hi) {
                return Ok(None);
            }
            u[p] = x as i64;
        }
        Ok(Some(u))
    }

    fn accept(&mut self, sys: &System, u: &[i64], total: &Vector, points: &[PointComponent]) -> Result<(), SearchError> {
        let t = *u.last().expect("t is always an unknown");
        let mut rho_t = total[ROW_RHO];
        for (r, &x) in sys.rho_row.iter().zip(u) {
            rho_t = rho_t.add(r.mul(Q::int(x))?)?;
        }
        let Some(rho) = rho_t.div(Q::int(t))?.as_int() else {
            return Ok(());
        };
        let ranges = self.space.ranges;
        if rho < i128::from(ranges.rho_min) || rho > i128::from(ranges.rho_max) {
            return Ok(());
        }
        let mut components: Vec<FixedComponent> = Vec::new();
        let mut k = 0;
        for s in sys.slots {
            let mut c = s.component;
            for &f in &s.unknowns {
                set_field(&mut c, f, u[k]);
                k += 1;
            }
            components.push(c);
        }
        components.extend(points.iter().map(|p| FixedComponent::Point(*p)));
        self.euler_choices(components, t, rho as i64)
    }

    /// Tries every admissible Euler characteristic of the surfaces and
    /// 4-dimensional components.
    fn euler_choices(&mut self, mut components: Vec<FixedComponent>, t: i64, rho: i64) -> Result<(), SearchError> {
        let floor = -self.space.bounds.max_abs_eval;
        let slots: Vec<usize> = (0..components.len())
            .filter(|&i| !matches!(components[i], FixedComponent::Point(_)))
            .collect();
        let top = |c: &FixedComponent| match c {
            FixedComponent::Surface(_) => 2,
            FixedComponent::Four(f) => 2 + f.b2,
            FixedComponent::Point(_) => 1,
        };
        for &i in &slots {
            let c = top(&components[i]);
            set_chi(&mut components[i], c);
        }
        loop {
            self.meter.tick(1)?;
            let euler: i64 = components.iter().map(FixedComponent::chi).sum();
            if euler < 4 {
                let ambient = AmbientData {
                    t,
                    rho,
                    euler,
                    sign: 0,
                };
                if let Ok(cfg) = Configuration::new(ambient, self.space.template, self.space.flags, components.clone()) {
                    let report = verify_case(&cfg);
                    if report.consistent {
                        self.hits.push(cfg);
                    } else if report
                        .checks
                        .iter()
                        .any(|c| !c.passed && c.name != "euler" && c.name != "euler-range")
                    {
                        // no other check depends on the Euler characteristics
                        return Ok(());
                    }
                }
            }
            let mut k = 0;
            loop {
                let Some(&i) = slots.get(k) else {
                    return Ok(());
                };
                let chi = components[i].chi();
                if chi - 2 >= floor {
                    set_chi(&mut components[i], chi - 2);
                    break;
                }
                let c = top(&components[i]);
            set_chi(&mut components[i], c);
                k += 1;
            }
        }
    }
}

fn set_chi(c: &mut FixedComponent, chi: i64) {
    match c {
        FixedComponent::Surface(s) => s.chi = chi,
        FixedComponent::Four(f) => f.chi = chi,
        FixedComponent::Point(_) => {}
    }
}

fn add_q(a: &[Q], b: &[Q]) -> Checked<Vec<Q>> {
    a.iter().zip(b).map(|(x, y)| x.add(*y)).collect()
}

fn check_bounds(ranges: &SearchRanges, bounds: &SearchBounds, options: &SearchOptions) -> Result<(), SearchError> {
    let bad = |m: &str| Err(SearchError::InvalidBounds(m.to_string()));
    if !(1..=MAX_SEARCH_WEIGHT).contains(&bounds.max_weight) {
        return bad(&format!("max_weight must lie in [1, {MAX_SEARCH_WEIGHT}]"));
    }
    if !(1..=MAX_SEARCH_LIFT).contains(&bounds.max_abs_a) {
        return bad(&format!("max_abs_a must lie in [1, {MAX_SEARCH_LIFT}]"));
    }
    if !(1..=MAX_SEARCH_EVAL).contains(&bounds.max_abs_eval) {
        return bad(&format!("max_abs_eval must lie in [1, {MAX_SEARCH_EVAL}]"));
    }
    if ranges.t_min < 1 || ranges.t_min > ranges.t_max || ranges.t_max > MAX_SEARCH_AMBIENT {
        return bad(&format!("t range must satisfy 1 <= t_min <= t_max <= {MAX_SEARCH_AMBIENT}"));
    }
    if ranges.rho_min > ranges.rho_max
        || ranges.rho_min < -MAX_SEARCH_AMBIENT
        || ranges.rho_max > MAX_SEARCH_AMBIENT
    {
        return bad(&format!("rho range must satisfy -{MAX_SEARCH_AMBIENT} <= rho_min <= rho_max <= {MAX_SEARCH_AMBIENT}"));
    }
    if options.workers == 0 {
        return bad("workers must be positive");
    }
    Ok(())
}

/// All configurations of `template` within the given ranges that pass
/// [`verify_case`], up to shifting every lift weight by the same amount.
pub fn search_case(
    template: Template,
    ranges: SearchRanges,
    bounds: SearchBounds,
    flags: Flags,
    options: SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    check_bounds(&ranges, &bounds, &options)?;
    let space = Space {
        template,
        ranges,
        bounds,
        flags,
        semifree: options.semifree,
    };
    let outer = space.outer()?;
    let points: Vec<Vec<PointVariant>> = match space.point_count() {
        0 => Vec::new(),
        1 => vec![space.points(flags.positive_base_point)?],
        _ => vec![space.points(flags.positive_base_point)?, space.points(false)?],
    };
    let budget = Budget {
        used: AtomicU64::new(0),
        limit: options.node_budget,
    };
    let run = |slots: &Vec<Slot>| -> Result<Vec<Configuration>, SearchError> {
        let mut w = Worker {
            space: &space,
            meter: Meter {
                budget: &budget,
                pending: 0,
            },
            hits: Vec::new(),
        };
        w.run_outer(slots, &points)?;
        w.meter.flush()?;
        Ok(w.hits)
    };
    let per_outer: Vec<Vec<Configuration>> = if options.workers == 1 {
        outer.iter().map(run).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| SearchError::InvalidBounds(format!("cannot start workers: {e}")))?;
        pool.install(|| outer.par_iter().map(run).collect::<Result<_, _>>())?
    };
    let mut hits: Vec<Configuration> = per_outer.into_iter().flatten().collect();
    hits.sort();
    hits.dedup();
    Ok(SearchOutcome {
        hits,
        nodes: budget.used.load(Ordering::Relaxed),
    })
}
