//! Exact rational linear algebra over graded monomial slices.
//!
//! Everything here is exact: Gauss-Jordan elimination over `Scalar`,
//! deterministic bases (monomial order in, reduced echelon out), and brute
//! force annihilator computations on finite slices. The reduced row echelon
//! form of a row space is unique, so kernels and annihilator dimensions do
//! not depend on the order in which conditions are fed in.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::expr;
use crate::scalar::{self, Scalar};
use crate::state::{
    grade_of, normalize_monomial, Mode, NormalMonomial, Normalized, State, WeightAssignment,
};
use crate::system::FreeFieldSystem;
use crate::wick::Engine;

// ---------------------------------------------------------------------------
// Dense elimination
// ---------------------------------------------------------------------------

/// In-place reduced row echelon form. Returns the pivot columns in order.
/// Pivot choice is the first row with a nonzero entry, so the result is
/// deterministic (and, being an RREF, canonical for the row space).
pub fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(src) = (row..nrows).find(|&r| !scalar::is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, src);
        let inv = scalar::int(1) / m[row][col].clone();
        for x in &mut m[row] {
            *x *= inv.clone();
        }
        for r in 0..nrows {
            if r != row && !scalar::is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let sub = f.clone() * m[row][c].clone();
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    pivots
}

/// Basis of the null space of the matrix, one vector per free column, in
/// the canonical RREF form: entry 1 at the free column, minus the pivot
/// row entries elsewhere.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut red = SparseRref::new(ncols);
    for r in rows {
        red.insert(r.iter().cloned().enumerate().collect());
    }
    red.kernel()
}

/// Exact coefficients expressing `target` in the span of `basis`, or `None`
/// when it lies outside. With a dependent basis the solution with zero free
/// coordinates is returned, so the answer is still deterministic.
pub fn span_coefficients(target: &State, basis: &[State]) -> Option<Vec<Scalar>> {
    let mut monos: BTreeSet<NormalMonomial> = BTreeSet::new();
    for s in basis.iter().chain(std::iter::once(target)) {
        monos.extend(s.terms().map(|(m, _)| m.clone()));
    }
    let monos: Vec<_> = monos.into_iter().collect();
    let mut m: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|mono| {
            let mut row: Vec<Scalar> = basis.iter().map(|s| s.coefficient(mono)).collect();
            row.push(target.coefficient(mono));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&basis.len()) {
        return None;
    }
    let mut coeffs = vec![scalar::int(0); basis.len()];
    for (r, &col) in pivots.iter().enumerate() {
        coeffs[col] = m[r][basis.len()].clone();
    }
    Some(coeffs)
}

// ---------------------------------------------------------------------------
// Sparse incremental elimination
// ---------------------------------------------------------------------------

type SparseRow = BTreeMap<usize, Scalar>;

/// Row space kept permanently in reduced echelon form, keyed by pivot
/// column. Annihilator systems produce many short rows over wide slices;
/// inserting them one at a time against the already reduced rows is far
/// cheaper than dense elimination and lands on the same canonical RREF.
pub struct SparseRref {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseRref {
    pub fn new(ncols: usize) -> Self {
        SparseRref {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: SparseRow) {
        row.retain(|_, v| !scalar::is_zero(v));
        // Clear every component sitting on an existing pivot column, not
        // just the leading one. Reduced pivot rows only carry free columns
        // besides their own pivot, so each elimination below introduces no
        // new pivot hits and one pass over the snapshot is enough.
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for c in hits {
            let Some(f) = row.remove(&c) else { continue };
            if scalar::is_zero(&f) {
                continue;
            }
            for (&col, v) in &self.rows[&c] {
                if col == c {
                    continue;
                }
                let cur = row.entry(col).or_insert_with(|| scalar::int(0));
                *cur -= f.clone() * v.clone();
            }
        }
        row.retain(|_, v| !scalar::is_zero(v));
        let Some((&lead, _)) = row.first_key_value() else {
            return;
        };
        let inv = scalar::int(1) / row[&lead].clone();
        for v in row.values_mut() {
            *v *= inv.clone();
        }
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        for pc in cols {
            let f = match self.rows[&pc].get(&lead) {
                Some(v) => v.clone(),
                None => continue,
            };
            let mut r = self.rows.remove(&pc).unwrap();
            axpy(&mut r, &f, &row);
            r.retain(|_, v| !scalar::is_zero(v));
            self.rows.insert(pc, r);
        }
        self.rows.insert(lead, row);
    }

    /// Canonical kernel basis: one vector per free column, ordered by that
    /// column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![scalar::int(0); self.ncols];
            v[free] = scalar::int(1);
            for (&pc, row) in &self.rows {
                if let Some(c) = row.get(&free) {
                    v[pc] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// The reduced rows as dense vectors, ordered by pivot column. Two row
    /// spaces are equal iff these lists are equal.
    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .values()
            .map(|row| {
                let mut v = vec![scalar::int(0); self.ncols];
                for (&c, x) in row {
                    v[c] = x.clone();
                }
                v
            })
            .collect()
    }
}

fn axpy(row: &mut SparseRow, factor: &Scalar, other: &SparseRow) {
    for (&c, v) in other {
        let cur = row.entry(c).or_insert_with(|| scalar::int(0));
        *cur -= factor.clone() * v.clone();
    }
}

/// Canonical reduced form of the span of `rows`: compare for subspace
/// equality.
pub fn reduced_row_space(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut red = SparseRref::new(ncols);
    for r in rows {
        red.insert(r.iter().cloned().enumerate().collect());
    }
    red.dense_rows()
}

// ---------------------------------------------------------------------------
// Graded slices
// ---------------------------------------------------------------------------

/// A grade with optional charge constraints: `None` leaves that charge
/// free, so a slice can be cut by weight and F alone while wh runs over
/// everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeQuery {
    pub weight: Scalar,
    pub charges: Vec<Option<i64>>,
}

impl GradeQuery {
    /// Constrain the named charges and leave the rest free.
    pub fn new(sys: &FreeFieldSystem, weight: Scalar, constraints: &[(&str, i64)]) -> Result<Self> {
        let mut charges = vec![None; sys.charge_names.len()];
        for (name, v) in constraints {
            let i = sys
                .charge_names
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::UnknownCharge(name.to_string()))?;
            charges[i] = Some(*v);
        }
        Ok(GradeQuery {
            weight,
            charges,
        })
    }

    pub fn matches(&self, weight: &Scalar, charges: &[i64]) -> bool {
        if self.weight != *weight {
            return false;
        }
        self.charges
            .iter()
            .zip(charges)
            .all(|(want, got)| want.map_or(true, |w| w == *got))
    }

    pub fn display(&self, sys: &FreeFieldSystem) -> String {
        let mut out = format!("wt {}", scalar::render(&self.weight));
        for (name, v) in sys.charge_names.iter().zip(&self.charges) {
            match v {
                Some(v) => out.push_str(&format!(", {name} {v}")),
                None => out.push_str(&format!(", {name} *")),
            }
        }
        out
    }
}

/// All normal monomials of one grade, in monomial order.
#[derive(Debug, Clone)]
pub struct GradedSlice {
    pub query: GradeQuery,
    pub basis: Vec<NormalMonomial>,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn state(&self, i: usize) -> State {
        let mut s = State::zero();
        s.add_term(scalar::int(1), self.basis[i].clone());
        s
    }
}

/// Complete basis of the monomials matching `query` under the weight
/// assignment.
///
/// Finiteness precondition: every generator must have weight >= 0, and
/// every even generator of weight 0 must carry a nonzero value of some
/// constrained charge. On top of the per-generator condition, the weight-0
/// even generators as a group must share a constrained charge on which
/// they all have the same sign; otherwise opposite charges could cancel in
/// arbitrarily long monomials and the slice is refused as non-finite.
pub fn slice_basis(
    sys: &FreeFieldSystem,
    weights: &WeightAssignment,
    query: &GradeQuery,
) -> Result<GradedSlice> {
    let zero = scalar::int(0);
    let mut flat_even = Vec::new();
    for (g, w) in weights.weights.iter().enumerate() {
        if *w < zero {
            return Err(Error::NonFiniteSlice {
                gen: sys.gen_name(g).to_string(),
            });
        }
        if *w == zero && !sys.parity(g).is_odd() {
            flat_even.push(g);
        }
    }
    // Pick the charge that bounds the weightless even generators.
    let mut flat_bound = None;
    if !flat_even.is_empty() {
        'outer: for (c, constraint) in query.charges.iter().enumerate() {
            if constraint.is_none() {
                continue;
            }
            for sign in [1i64, -1] {
                if flat_even
                    .iter()
                    .all(|&g| sign * sys.generators[g].charges[c] >= 1)
                {
                    flat_bound = Some((c, sign));
                    break 'outer;
                }
            }
        }
        if flat_bound.is_none() {
            let offender = flat_even
                .iter()
                .copied()
                .find(|&g| {
                    !query
                        .charges
                        .iter()
                        .enumerate()
                        .any(|(c, v)| v.is_some() && sys.generators[g].charges[c] != 0)
                })
                .unwrap_or(flat_even[0]);
            return Err(Error::NonFiniteSlice {
                gen: sys.gen_name(offender).to_string(),
            });
        }
    }

    // Modes of positive weight up to the budget, then the weightless odd
    // and even (-1)-modes. Multiplicities of the first two groups are
    // bounded by weight and parity; the last group by the charge found
    // above.
    let mut weighted = Vec::new();
    for g in 0..sys.generators.len() {
        for d in 1.. {
            let mode = Mode::new(g, -d);
            let mw = weights.mode_weight(&mode);
            if mw > query.weight {
                break;
            }
            if mw > zero {
                weighted.push((mode, mw));
            }
        }
    }
    let flat_odd: Vec<Mode> = (0..sys.generators.len())
        .filter(|&g| weights.weights[g] == zero && sys.parity(g).is_odd())
        .map(|g| Mode::new(g, -1))
        .collect();

    let mut found = Vec::new();
    let mut picked: Vec<Mode> = Vec::new();
    enumerate_weighted(
        sys,
        query,
        &weighted,
        &flat_odd,
        &flat_even,
        flat_bound,
        0,
        query.weight.clone(),
        &mut picked,
        &mut found,
    );
    found.sort();
    Ok(GradedSlice {
        query: query.clone(),
        basis: found,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_weighted(
    sys: &FreeFieldSystem,
    query: &GradeQuery,
    weighted: &[(Mode, Scalar)],
    flat_odd: &[Mode],
    flat_even: &[usize],
    flat_bound: Option<(usize, i64)>,
    i: usize,
    remaining: Scalar,
    picked: &mut Vec<Mode>,
    out: &mut Vec<NormalMonomial>,
) {
    if i == weighted.len() {
        if remaining == scalar::int(0) {
            enumerate_flat_odd(sys, query, flat_odd, flat_even, flat_bound, 0, picked, out);
        }
        return;
    }
    let (mode, w) = &weighted[i];
    let odd = sys.parity(mode.gen).is_odd();
    let mut used = 0usize;
    let mut left = remaining.clone();
    loop {
        enumerate_weighted(
            sys,
            query,
            weighted,
            flat_odd,
            flat_even,
            flat_bound,
            i + 1,
            left.clone(),
            picked,
            out,
        );
        if (odd && used == 1) || *w > left {
            break;
        }
        picked.push(*mode);
        used += 1;
        left -= w.clone();
    }
    picked.truncate(picked.len() - used);
}

#[allow(clippy::too_many_arguments)]
fn enumerate_flat_odd(
    sys: &FreeFieldSystem,
    query: &GradeQuery,
    flat_odd: &[Mode],
    flat_even: &[usize],
    flat_bound: Option<(usize, i64)>,
    i: usize,
    picked: &mut Vec<Mode>,
    out: &mut Vec<NormalMonomial>,
) {
    if i == flat_odd.len() {
        enumerate_flat_even(sys, query, flat_even, flat_bound, 0, picked, out);
        return;
    }
    enumerate_flat_odd(sys, query, flat_odd, flat_even, flat_bound, i + 1, picked, out);
    picked.push(flat_odd[i]);
    enumerate_flat_odd(sys, query, flat_odd, flat_even, flat_bound, i + 1, picked, out);
    picked.pop();
}

fn enumerate_flat_even(
    sys: &FreeFieldSystem,
    query: &GradeQuery,
    flat_even: &[usize],
    flat_bound: Option<(usize, i64)>,
    i: usize,
    picked: &mut Vec<Mode>,
    out: &mut Vec<NormalMonomial>,
) {
    if i == flat_even.len() {
        emit(sys, query, picked, out);
        return;
    }
    let (bc, sign) = flat_bound.expect("flat even generators require a bounding charge");
    let g = flat_even[i];
    let step = sign * sys.generators[g].charges[bc];
    let have: i64 = picked
        .iter()
        .map(|m| sign * sys.generators[m.gen].charges[bc])
        .sum();
    let target = sign * query.charges[bc].expect("bounding charge is constrained");
    let room = target - have;
    let mut used = 0usize;
    loop {
        enumerate_flat_even(sys, query, flat_even, flat_bound, i + 1, picked, out);
        if step * (used as i64 + 1) > room {
            break;
        }
        picked.push(Mode::new(g, -1));
        used += 1;
    }
    picked.truncate(picked.len() - used);
}

fn emit(
    sys: &FreeFieldSystem,
    query: &GradeQuery,
    picked: &[Mode],
    out: &mut Vec<NormalMonomial>,
) {
    let mut charges = vec![0i64; sys.charge_names.len()];
    for m in picked {
        for (acc, v) in charges.iter_mut().zip(&sys.generators[m.gen].charges) {
            *acc += v;
        }
    }
    let ok = query
        .charges
        .iter()
        .zip(&charges)
        .all(|(want, got)| want.map_or(true, |w| w == *got));
    if !ok {
        return;
    }
    let mut modes = picked.to_vec();
    modes.sort();
    out.push(NormalMonomial::from_sorted(modes));
}

// ---------------------------------------------------------------------------
// Annihilator slices
// ---------------------------------------------------------------------------

/// Which modes of the annihilators must kill the slice: all nonnegative
/// ones (the full commutant condition) or the zero modes alone (plain
/// invariants of the induced Lie action).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeRange {
    FromZero,
    ZeroOnly,
}

#[derive(Debug, Clone)]
pub struct AnnihilatorSlice {
    pub slice: GradedSlice,
    /// Kernel vectors over `slice.basis`, in canonical RREF form.
    pub vectors: Vec<Vec<Scalar>>,
}

impl AnnihilatorSlice {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn states(&self) -> Vec<State> {
        self.vectors
            .iter()
            .map(|v| {
                let mut s = State::zero();
                for (c, mono) in v.iter().zip(&self.slice.basis) {
                    if !scalar::is_zero(c) {
                        s.add_term(c.clone(), mono.clone());
                    }
                }
                s
            })
            .collect()
    }
}

/// Exact basis of the slice vectors killed by every annihilator mode in
/// the range. Annihilators must be homogeneous so each condition lands in
/// a single grade; zero annihilators are skipped.
pub fn annihilator_slice(
    engine: &Engine,
    annihilators: &[State],
    weights: &WeightAssignment,
    query: &GradeQuery,
    range: ModeRange,
) -> Result<AnnihilatorSlice> {
    let sys = engine.system();
    let slice = slice_basis(sys, weights, query)?;
    let mut red = SparseRref::new(slice.dim());
    let mut conditions: BTreeMap<(usize, i64, NormalMonomial), SparseRow> = BTreeMap::new();
    for (ai, a) in annihilators.iter().enumerate() {
        if a.num_terms() == 0 {
            continue;
        }
        grade_of(sys, weights, a)?;
        for i in 0..slice.dim() {
            let v = slice.state(i);
            let top = match range {
                ModeRange::FromZero => engine.pole_bound(a, &v),
                ModeRange::ZeroOnly => 1,
            };
            for n in 0..top {
                let w = engine.field_mode_apply(a, n, &v);
                for (mono, c) in w.terms() {
                    conditions
                        .entry((ai, n, mono.clone()))
                        .or_default()
                        .insert(i, c.clone());
                }
            }
        }
    }
    for row in conditions.into_values() {
        red.insert(row);
    }
    // Kernel vectors come out normalized against the free columns of the
    // condition matrix; re-reduce so `vectors` is the canonical form of the
    // subspace itself and two slices compare by equality.
    let vectors = reduced_row_space(&red.kernel(), slice.dim());
    Ok(AnnihilatorSlice { slice, vectors })
}

/// Rewrites a monomial of one system in another that declares all the same
/// generator names (a tensor factor inside a product system, say).
pub fn transport_monomial(
    from: &FreeFieldSystem,
    to: &FreeFieldSystem,
    mono: &NormalMonomial,
) -> Result<NormalMonomial> {
    let mut modes = Vec::with_capacity(mono.len());
    for m in mono.modes() {
        modes.push(Mode::new(to.gen_index(from.gen_name(m.gen))?, m.n));
    }
    match normalize_monomial(to, &modes)? {
        Normalized::Ordered(1, m) => Ok(m),
        _ => Err(Error::Other(
            "generator transport must preserve monomial order".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Closure and conformal reports
// ---------------------------------------------------------------------------

/// One verified identity: a self-describing label, the verdict, and both
/// sides rendered.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub label: String,
    pub ok: bool,
    pub expected: String,
    pub got: String,
}

impl CheckRow {
    fn compare(label: String, sys: &FreeFieldSystem, expected: &State, got: &State) -> Self {
        CheckRow {
            label,
            ok: expected == got,
            expected: expected.display(sys),
            got: got.display(sys),
        }
    }
}

/// Expected singular part for one ordered pair of named fields. Orders not
/// listed in `poles` are asserted to vanish, so an entry with an empty pole
/// list claims the product is regular.
#[derive(Debug, Clone)]
pub struct ClosureEntry {
    pub left: String,
    pub right: String,
    pub poles: Vec<(i64, String)>,
}

impl ClosureEntry {
    pub fn new(left: &str, right: &str, poles: &[(i64, &str)]) -> Self {
        ClosureEntry {
            left: left.to_string(),
            right: right.to_string(),
            poles: poles
                .iter()
                .map(|(n, e)| (*n, e.to_string()))
                .collect(),
        }
    }
}

/// Verifies an OPE table. Every listed (left, right) pair is checked pole
/// by pole against the evaluated expressions, with unlisted orders required
/// to vanish. Unordered pairs from `fields` that appear in no entry (in
/// either orientation) are required to be regular outright; the reversed
/// products are fixed by skew symmetry and not checked twice. Expressions
/// may reference any name `resolve` knows, not only the paired fields.
pub fn closure_check(
    engine: &Engine,
    fields: &[(String, State)],
    resolve: &dyn Fn(&str) -> Option<State>,
    entries: &[ClosureEntry],
) -> Result<Vec<CheckRow>> {
    let sys = engine.system();
    let mut rows = Vec::new();
    let mut listed: BTreeSet<(String, String)> = BTreeSet::new();
    let lookup = |name: &str| -> Result<State> {
        resolve(name).ok_or_else(|| Error::UnknownField(name.to_string()))
    };
    for entry in entries {
        listed.insert((entry.left.clone(), entry.right.clone()));
        let l = lookup(&entry.left)?;
        let r = lookup(&entry.right)?;
        let mut expected: BTreeMap<i64, State> = BTreeMap::new();
        for (n, text) in &entry.poles {
            expected.insert(*n, expr::eval_str(text, engine, resolve)?);
        }
        let bound = engine.pole_bound(&l, &r);
        let mut offenders = Vec::new();
        for n in 0..bound {
            let got = engine.circle(&l, &r, n);
            match expected.get(&n) {
                Some(want) => rows.push(CheckRow::compare(
                    format!("{}({}){}", entry.left, n, entry.right),
                    sys,
                    want,
                    &got,
                )),
                None => {
                    if got.num_terms() != 0 {
                        offenders.push(format!("pole {n}: {}", got.display(sys)));
                    }
                }
            }
        }
        rows.push(CheckRow {
            label: format!("{}(n){} = 0 at unlisted n", entry.left, entry.right),
            ok: offenders.is_empty(),
            expected: "0".into(),
            got: if offenders.is_empty() {
                "0".into()
            } else {
                offenders.join("; ")
            },
        });
    }
    for (i, (ln, ls)) in fields.iter().enumerate() {
        for (rn, rs) in &fields[i..] {
            if listed.contains(&(ln.clone(), rn.clone()))
                || listed.contains(&(rn.clone(), ln.clone()))
            {
                continue;
            }
            let bound = engine.pole_bound(ls, rs);
            let mut offenders = Vec::new();
            for n in 0..bound {
                let got = engine.circle(ls, rs, n);
                if got.num_terms() != 0 {
                    offenders.push(format!("pole {n}: {}", got.display(sys)));
                }
            }
            rows.push(CheckRow {
                label: format!("{ln}(n){rn} = 0 for all n >= 0"),
                ok: offenders.is_empty(),
                expected: "0".into(),
                got: if offenders.is_empty() {
                    "0".into()
                } else {
                    offenders.join("; ")
                },
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub enum FieldClass {
    Primary,
    /// Not primary: the third-order pole with L is this state instead of
    /// zero, and everything above order three still vanishes.
    QuasiPrimary { pole3: State },
}

#[derive(Debug, Clone)]
pub struct ConformalField {
    pub name: String,
    pub state: State,
    pub weight: Scalar,
    pub class: FieldClass,
}

impl ConformalField {
    pub fn primary(name: &str, state: State, weight: Scalar) -> Self {
        ConformalField {
            name: name.to_string(),
            state,
            weight,
            class: FieldClass::Primary,
        }
    }

    pub fn quasi(name: &str, state: State, weight: Scalar, pole3: State) -> Self {
        ConformalField {
            name: name.to_string(),
            state,
            weight,
            class: FieldClass::QuasiPrimary { pole3 },
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConformalReport {
    /// Central charge read off L(3)L = (c/2)|0>, when that product is a
    /// multiple of the vacuum.
    pub central: Option<Scalar>,
    pub rows: Vec<CheckRow>,
}

impl ConformalReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Verifies the Virasoro relations of `l` and the weights and (quasi)
/// primality of the listed fields. Failures are reported, not asserted, so
/// a candidate that is not a Virasoro vector still yields a full report.
pub fn conformal_check(
    engine: &Engine,
    l: &State,
    expected_central: Option<Scalar>,
    fields: &[ConformalField],
) -> ConformalReport {
    let sys = engine.system();
    let mut rows = Vec::new();

    let pole4 = engine.circle(l, l, 3);
    let central = extract_central(&pole4);
    match (&central, &expected_central) {
        (_, Some(c)) => {
            let mut want = State::zero();
            want.add_term(c.clone() / scalar::int(2), NormalMonomial::vacuum());
            rows.push(CheckRow::compare(
                format!("L(3)L = (c/2) one, c = {}", scalar::render(c)),
                sys,
                &want,
                &pole4,
            ));
        }
        (Some(c), None) => rows.push(CheckRow {
            label: "L(3)L = (c/2) one".into(),
            ok: true,
            expected: "scalar multiple of one".into(),
            got: format!("c = {}", scalar::render(c)),
        }),
        (None, None) => rows.push(CheckRow {
            label: "L(3)L = (c/2) one".into(),
            ok: false,
            expected: "scalar multiple of one".into(),
            got: pole4.display(sys),
        }),
    }

    rows.push(CheckRow::compare(
        "L(2)L = 0".into(),
        sys,
        &State::zero(),
        &engine.circle(l, l, 2),
    ));
    rows.push(CheckRow::compare(
        "L(1)L = 2 L".into(),
        sys,
        &l.scale(&scalar::int(2)),
        &engine.circle(l, l, 1),
    ));
    rows.push(CheckRow::compare(
        "L(0)L = d(L)".into(),
        sys,
        &engine.derivative(l),
        &engine.circle(l, l, 0),
    ));
    let bound = engine.pole_bound(l, l);
    let mut offenders = Vec::new();
    for n in 4..bound {
        let got = engine.circle(l, l, n);
        if got.num_terms() != 0 {
            offenders.push(format!("pole {n}: {}", got.display(sys)));
        }
    }
    rows.push(CheckRow {
        label: "L(n)L = 0 for n >= 4".into(),
        ok: offenders.is_empty(),
        expected: "0".into(),
        got: if offenders.is_empty() {
            "0".into()
        } else {
            offenders.join("; ")
        },
    });

    for f in fields {
        rows.push(CheckRow::compare(
            format!("L(1){} = {} {}", f.name, scalar::render(&f.weight), f.name),
            sys,
            &f.state.scale(&f.weight),
            &engine.circle(l, &f.state, 1),
        ));
        rows.push(CheckRow::compare(
            format!("L(0){} = d({})", f.name, f.name),
            sys,
            &engine.derivative(&f.state),
            &engine.circle(l, &f.state, 0),
        ));
        let start = match &f.class {
            FieldClass::Primary => 2,
            FieldClass::QuasiPrimary { pole3 } => {
                rows.push(CheckRow::compare(
                    format!("L(2){}", f.name),
                    sys,
                    pole3,
                    &engine.circle(l, &f.state, 2),
                ));
                3
            }
        };
        let bound = engine.pole_bound(l, &f.state);
        let mut offenders = Vec::new();
        for n in start..bound {
            let got = engine.circle(l, &f.state, n);
            if got.num_terms() != 0 {
                offenders.push(format!("pole {n}: {}", got.display(sys)));
            }
        }
        rows.push(CheckRow {
            label: format!("L(n){} = 0 for n >= {start}", f.name),
            ok: offenders.is_empty(),
            expected: "0".into(),
            got: if offenders.is_empty() {
                "0".into()
            } else {
                offenders.join("; ")
            },
        });
    }

    ConformalReport { central, rows }
}

fn extract_central(pole4: &State) -> Option<Scalar> {
    if pole4.num_terms() == 0 {
        return Some(scalar::int(0));
    }
    if pole4.num_terms() == 1 {
        let vac = pole4.vacuum_coefficient();
        if !scalar::is_zero(&vac) {
            return Some(vac * scalar::int(2));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_system, FieldLibrary, SystemCase};
    use crate::scalar::{frac, int};

    fn imat(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = kernel(&imat(&[&[1, 2], &[2, 4]]), 2);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel(&imat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3);
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let k = kernel(&imat(&[&[0]]), 1);
        assert_eq!(k, vec![vec![int(1)]]);
    }

    #[test]
    fn kernel_vectors_satisfy_the_matrix() {
        let m = imat(&[&[2, 3, 5, 7], &[1, 0, -1, 2], &[3, 3, 4, 9]]);
        let k = kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(int(0), |acc, (a, b)| acc + a.clone() * b.clone());
                assert!(scalar::is_zero(&dot));
            }
        }
    }

    #[test]
    fn rref_is_insertion_order_independent() {
        let m = imat(&[&[2, 3, 5, 7], &[1, 0, -1, 2], &[3, 3, 4, 9]]);
        let mut rev = m.clone();
        rev.reverse();
        assert_eq!(reduced_row_space(&m, 4), reduced_row_space(&rev, 4));
    }

    // A later row opening a pivot column to the left of an existing pivot,
    // with support crossing that pivot, must still reduce fully.
    #[test]
    fn rref_reduces_tails_across_earlier_pivots() {
        let m = imat(&[&[0, 1, 0], &[1, 5, 3]]);
        assert_eq!(reduced_row_space(&m, 3), imat(&[&[1, 0, 3], &[0, 1, 0]]));
        let mut rev = m.clone();
        rev.reverse();
        assert_eq!(reduced_row_space(&m, 3), reduced_row_space(&rev, 3));
    }

    #[test]
    fn kernel_with_late_small_pivot() {
        let k = kernel(&imat(&[&[0, 1, 2], &[1, 5, 3]]), 3);
        assert_eq!(k, vec![vec![int(7), int(-2), int(1)]]);
    }

    #[test]
    fn span_coefficients_on_boson_states() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let engine = Engine::new(&sys);
        let jj = engine.wick(
            &engine.gen_mode_apply("j", -1, &State::vacuum()).unwrap(),
            &engine.gen_mode_apply("j", -1, &State::vacuum()).unwrap(),
        );
        let dj = engine.derivative(&engine.gen_mode_apply("j", -1, &State::vacuum()).unwrap());
        let target = &jj.scale(&int(2)) + &dj.scale(&int(3));
        assert_eq!(
            span_coefficients(&target, &[jj.clone(), dj.clone()]),
            Some(vec![int(2), int(3)])
        );
        assert_eq!(
            span_coefficients(&State::zero(), &[jj.clone(), dj.clone()]),
            Some(vec![int(0), int(0)])
        );
        let deep = engine
            .gen_mode_apply("j", -4, &State::vacuum())
            .unwrap();
        assert_eq!(span_coefficients(&deep, &[jj, dj]), None);
    }

    #[test]
    fn fermionic_slices_match_hand_counts() {
        let sys = build_system(SystemCase::AdjointE).unwrap();
        let w = WeightAssignment::default_for(&sys);
        let q = GradeQuery::new(&sys, frac(1, 2), &[("F", 1)]).unwrap();
        let s = slice_basis(&sys, &w, &q).unwrap();
        assert_eq!(s.dim(), 3);

        let q = GradeQuery::new(&sys, frac(3, 2), &[("F", 3)]).unwrap();
        let s = slice_basis(&sys, &w, &q).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis[0].len(), 3);

        let q = GradeQuery::new(&sys, frac(1, 2), &[("F", 2)]).unwrap();
        assert_eq!(slice_basis(&sys, &w, &q).unwrap().dim(), 0);
    }

    #[test]
    fn weightless_even_generators_need_a_charge_bound() {
        let sys = build_system(SystemCase::AdjointS).unwrap();
        let w = WeightAssignment::default_for(&sys);
        let free = GradeQuery::new(&sys, int(1), &[("wh", 0)]).unwrap();
        match slice_basis(&sys, &w, &free) {
            Err(Error::NonFiniteSlice { .. }) => {}
            other => panic!("expected a non-finite slice refusal, got {other:?}"),
        }
        let bounded = GradeQuery::new(&sys, int(1), &[("H", 2)]).unwrap();
        assert!(slice_basis(&sys, &w, &bounded).unwrap().dim() > 0);
    }

    #[test]
    fn theta_annihilator_dimensions_on_the_fermionic_side() {
        let lib = FieldLibrary::build(SystemCase::AdjointE).unwrap();
        let sys = &lib.system;
        let engine = Engine::new(sys);
        let thetas: Vec<State> = lib
            .theta_names()
            .iter()
            .map(|n| lib.get(n).unwrap().clone())
            .collect();
        let w = WeightAssignment::default_for(sys);

        let q = GradeQuery::new(sys, int(1), &[("F", 0)]).unwrap();
        let a = annihilator_slice(&engine, &thetas, &w, &q, ModeRange::FromZero).unwrap();
        assert_eq!(a.dim(), 1);
        let f = lib.get("F").unwrap().clone();
        let coeffs = span_coefficients(&f, &a.states()).unwrap();
        assert!(!scalar::is_zero(&coeffs[0]));

        for charge in [1, -1] {
            let q = GradeQuery::new(sys, frac(1, 2), &[("F", charge)]).unwrap();
            let a = annihilator_slice(&engine, &thetas, &w, &q, ModeRange::FromZero).unwrap();
            assert_eq!(a.dim(), 0);
        }

        let q = GradeQuery::new(sys, frac(3, 2), &[("F", 3)]).unwrap();
        let a = annihilator_slice(&engine, &thetas, &w, &q, ModeRange::FromZero).unwrap();
        assert_eq!(a.dim(), 1);
        let ccc = lib.get("Cccc").unwrap().clone();
        assert!(span_coefficients(&ccc, &a.states()).is_some());
    }

    #[test]
    fn annihilator_dimension_ignores_annihilator_order() {
        let lib = FieldLibrary::build(SystemCase::AdjointE).unwrap();
        let sys = &lib.system;
        let engine = Engine::new(sys);
        let mut thetas: Vec<State> = lib
            .theta_names()
            .iter()
            .map(|n| lib.get(n).unwrap().clone())
            .collect();
        let w = WeightAssignment::default_for(sys);
        let q = GradeQuery::new(sys, int(2), &[("F", 0)]).unwrap();
        let a = annihilator_slice(&engine, &thetas, &w, &q, ModeRange::FromZero).unwrap();
        thetas.reverse();
        let b = annihilator_slice(&engine, &thetas, &w, &q, ModeRange::FromZero).unwrap();
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn free_boson_virasoro_reports_central_charge_one() {
        let lib = FieldLibrary::build(SystemCase::Heisenberg).unwrap();
        let engine = Engine::new(&lib.system);
        let l = lib.get("L").unwrap().clone();
        let j = lib.resolve("j").unwrap();
        let report = conformal_check(
            &engine,
            &l,
            Some(int(1)),
            &[ConformalField::primary("j", j, int(1))],
        );
        assert_eq!(report.central, Some(int(1)));
        for row in &report.rows {
            assert!(row.ok, "{}: got {}", row.label, row.got);
        }
    }

    #[test]
    fn closure_check_flags_a_wrong_pole() {
        let lib = FieldLibrary::build(SystemCase::Heisenberg).unwrap();
        let engine = Engine::new(&lib.system);
        let fields = vec![("j".to_string(), lib.resolve("j").unwrap())];
        let resolve = |name: &str| lib.resolve(name);
        let good = closure_check(
            &engine,
            &fields,
            &resolve,
            &[ClosureEntry::new("j", "j", &[(1, "one")])],
        )
        .unwrap();
        assert!(good.iter().all(|r| r.ok));
        let bad = closure_check(
            &engine,
            &fields,
            &resolve,
            &[ClosureEntry::new("j", "j", &[(1, "2 one")])],
        )
        .unwrap();
        assert!(bad.iter().any(|r| !r.ok));
    }
}
