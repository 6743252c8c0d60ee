//! Closed-form class counts for `n = 2, 3, 4` and the per-partition
//! contributions `B(μ)` they are assembled from.
//!
//! Every table cell is a pure function of the characteristic class of `p`
//! and the indicators `P_m = [m | q-1]`. The cells live in static tables so
//! they can be listed with [`dispatch_table`]. Values are evaluated as exact
//! fractions over big integers and must come out integral.

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::burnside::{partitions, Partition};
use crate::error::{Error, Result};
use crate::field::{divides_q_minus_one, prime_power, FieldCtx};
use crate::report::{CountReport, Method, PartitionContribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PClass {
    Two,
    Three,
    /// `p > 3`.
    Other,
}

impl fmt::Display for PClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PClass::Two => "p=2",
            PClass::Three => "p=3",
            PClass::Other => "p>3",
        })
    }
}

/// The case data that selects a table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseKey {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub p3: bool,
    pub p4: bool,
    pub p5: bool,
    pub p7: bool,
    pub p15: bool,
}

impl CaseKey {
    /// Key for `q`, which must be a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let key = CaseKey {
            p,
            m,
            q,
            p3: divides_q_minus_one(q, 3),
            p4: divides_q_minus_one(q, 4),
            p5: divides_q_minus_one(q, 5),
            p7: divides_q_minus_one(q, 7),
            p15: divides_q_minus_one(q, 15),
        };
        if key.p == 2 && key.p4 {
            return Err(Error::InternalConsistency(format!("P_4 = 1 with q = {q} even")));
        }
        if key.p15 != (key.p3 && key.p5) {
            return Err(Error::InternalConsistency(format!("P_15 != P_3 P_5 for q = {q}")));
        }
        Ok(key)
    }

    pub fn from_ctx(ctx: &FieldCtx) -> Self {
        Self::from_q(ctx.q() as u64).expect("field order is a prime power")
    }

    pub fn p_class(&self) -> PClass {
        match self.p {
            2 => PClass::Two,
            3 => PClass::Three,
            _ => PClass::Other,
        }
    }

    /// `P_m` for `m ∈ {3, 4, 5, 7, 15}`.
    pub fn indicator(&self, m: u64) -> Option<bool> {
        Some(match m {
            3 => self.p3,
            4 => self.p4,
            5 => self.p5,
            7 => self.p7,
            15 => self.p15,
            _ => return None,
        })
    }
}

/// An exact rational `num / den` with `den > 0`, never reduced implicitly.
#[derive(Clone, Debug)]
struct Frac {
    num: BigInt,
    den: BigInt,
}

impl Frac {
    fn new(num: BigInt, den: u64) -> Self {
        Frac { num, den: den.into() }
    }

    fn add(self, other: Frac) -> Frac {
        let den = self.den.lcm(&other.den);
        let num = self.num * (&den / &self.den) + other.num * (&den / &other.den);
        Frac { num, den }
    }

    fn times(self, k: &BigInt) -> Frac {
        Frac {
            num: self.num * k,
            den: self.den,
        }
    }

    fn exact(&self, what: &str, q: u64) -> Result<BigUint> {
        let (v, r) = self.num.div_rem(&self.den);
        if !r.is_zero() || v.is_negative() {
            return Err(Error::InternalConsistency(format!(
                "{what} at q={q} evaluates to {}/{}, not a nonnegative integer",
                self.num, self.den
            )));
        }
        Ok(v.magnitude().clone())
    }
}

fn ind(b: bool) -> BigInt {
    if b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn pw(q: &BigInt, e: u32) -> BigInt {
    q.pow(e)
}

/// `|GL_n(F_q)| / (q-1)^n`.
fn gl_reduced(q: &BigInt, n: u32) -> BigInt {
    let mut acc = pw(q, n * (n - 1) / 2);
    for i in 1..=n {
        acc *= (pw(q, i) - 1) / (q - 1);
    }
    acc
}

/// Selector for a table row or cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Any,
    Is(bool),
}

impl Cond {
    fn admits(self, v: bool) -> bool {
        match self {
            Cond::Any => true,
            Cond::Is(x) => x == v,
        }
    }
}

type CellFn = fn(&BigInt) -> Frac;

/// One cell of a class-count table.
#[derive(Clone, Copy)]
pub struct Cell {
    pub n: usize,
    pub p_class: PClass,
    pub p3: Cond,
    pub p7: Cond,
    pub formula: &'static str,
    eval: CellFn,
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cell")
            .field("n", &self.n)
            .field("p_class", &self.p_class)
            .field("p3", &self.p3)
            .field("p7", &self.p7)
            .field("formula", &self.formula)
            .finish()
    }
}

fn c3(q: &BigInt) -> BigInt {
    pw(q, 3) * (q + 1) * (q * q + q + 1)
}

const fn cell(n: usize, p_class: PClass, p3: Cond, p7: Cond, formula: &'static str, eval: CellFn) -> Cell {
    Cell {
        n,
        p_class,
        p3,
        p7,
        formula,
        eval,
    }
}

use Cond::{Any, Is};
use PClass::{Other, Three, Two};

static N2_CELLS: [Cell; 5] = [
    cell(2, Two, Is(true), Any, "(q+1)^2/2 + 1/2", |q| {
        Frac::new(pw(&(q + 1), 2) + 1, 2)
    }),
    cell(2, Two, Is(false), Any, "(q+1)^2/2 - 1/2", |q| {
        Frac::new(pw(&(q + 1), 2) - 1, 2)
    }),
    cell(2, Three, Is(false), Any, "(q+1)^2/2 - 1", |q| {
        Frac::new(pw(&(q + 1), 2) - 2, 2)
    }),
    cell(2, Other, Is(true), Any, "(q+1)^2/2", |q| Frac::new(pw(&(q + 1), 2), 2)),
    cell(2, Other, Is(false), Any, "(q+1)^2/2 - 1", |q| {
        Frac::new(pw(&(q + 1), 2) - 2, 2)
    }),
];

// c = q^3 (q+1)(q^2+q+1)/6; each cell is written over the denominator 6
static N3_CELLS: [Cell; 10] = [
    cell(3, Two, Is(true), Is(true), "c + 3 + q^3/2 + (q-1)^2/3", |q| {
        Frac::new(c3(q) + 18 + 3 * pw(q, 3) + 2 * pw(&(q - 1), 2), 6)
    }),
    cell(3, Two, Is(false), Is(true), "c + 2 + q^3/2 + (q^2-1)/3", |q| {
        Frac::new(c3(q) + 12 + 3 * pw(q, 3) + 2 * (q * q - 1), 6)
    }),
    cell(3, Two, Is(true), Is(false), "c + 1 + q^3/2 + (q-1)^2/3", |q| {
        Frac::new(c3(q) + 6 + 3 * pw(q, 3) + 2 * pw(&(q - 1), 2), 6)
    }),
    cell(3, Two, Is(false), Is(false), "c + q^3/2 + (q^2-1)/3", |q| {
        Frac::new(c3(q) + 3 * pw(q, 3) + 2 * (q * q - 1), 6)
    }),
    cell(3, Three, Any, Is(true), "c + 2 + q(q^2-1)/2 + q^2/3", |q| {
        Frac::new(c3(q) + 12 + 3 * q * (q * q - 1) + 2 * q * q, 6)
    }),
    cell(3, Three, Any, Is(false), "c + q(q^2-1)/2 + q^2/3", |q| {
        Frac::new(c3(q) + 3 * q * (q * q - 1) + 2 * q * q, 6)
    }),
    cell(3, Other, Is(true), Is(true), "c + 3 + q(q^2-1)/2 + (q-1)^2/3", |q| {
        Frac::new(c3(q) + 18 + 3 * q * (q * q - 1) + 2 * pw(&(q - 1), 2), 6)
    }),
    cell(3, Other, Is(false), Is(true), "c + 2 + q(q^2-1)/2 + (q^2-1)/3", |q| {
        Frac::new(c3(q) + 12 + 3 * q * (q * q - 1) + 2 * (q * q - 1), 6)
    }),
    cell(3, Other, Is(true), Is(false), "c + 1 + q(q^2-1)/2 + (q-1)^2/3", |q| {
        Frac::new(c3(q) + 6 + 3 * q * (q * q - 1) + 2 * pw(&(q - 1), 2), 6)
    }),
    cell(3, Other, Is(false), Is(false), "c + q(q^2-1)/2 + (q^2-1)/3", |q| {
        Frac::new(c3(q) + 3 * q * (q * q - 1) + 2 * (q * q - 1), 6)
    }),
];

/// A summand `b_i` or `b_i'` of the four-dimensional count: `B(μ)/(q-1)^4`.
#[derive(Clone, Copy)]
pub struct Term {
    pub name: &'static str,
    pub partition: &'static [usize],
    pub formula: &'static str,
    eval: fn(&BigInt, &CaseKey) -> Frac,
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?} = {}", self.name, self.partition, self.formula)
    }
}

static N4_TERMS: [Term; 9] = [
    Term {
        name: "b0",
        partition: &[1, 1, 1, 1],
        formula: "[q^6(q+1)^2(q^2+1)(q^2+q+1) + P3(12q(q+1) + 6q^2(q+1)^2) + 48(P7+P15) + 24P5]/24",
        eval: |q, k| {
            let main = pw(q, 6) * pw(&(q + 1), 2) * (q * q + 1) * (q * q + q + 1);
            let p3 = ind(k.p3) * (12 * q * (q + 1) + 6 * q * q * pw(&(q + 1), 2));
            let rest = 48 * (ind(k.p7) + ind(k.p15)) + 24 * ind(k.p5);
            Frac::new(main + p3 + rest, 24)
        },
    },
    Term {
        name: "b1",
        partition: &[1, 1, 2],
        formula: "q(q^6+q^5+2P3)/4",
        eval: |q, k| Frac::new(q * (pw(q, 6) + pw(q, 5) + 2 * ind(k.p3)), 4),
    },
    Term {
        name: "b1'",
        partition: &[1, 1, 2],
        formula: "(q-1)((q^4+q^3)(q^2+q+1) + 2P3)/4",
        eval: |q, k| Frac::new((q - 1) * ((pw(q, 4) + pw(q, 3)) * (q * q + q + 1) + 2 * ind(k.p3)), 4),
    },
    Term {
        name: "b2",
        partition: &[1, 3],
        formula: "q^4/3",
        eval: |q, _| Frac::new(pw(q, 4), 3),
    },
    Term {
        name: "b2'",
        partition: &[1, 3],
        formula: "[P3(q-1)^2(q^2+q-1) + (1-P3)q(q-1)(q+1)^2]/3",
        eval: |q, k| {
            let with3 = ind(k.p3) * pw(&(q - 1), 2) * (q * q + q - 1);
            let without = (1 - ind(k.p3)) * q * (q - 1) * pw(&(q + 1), 2);
            Frac::new(with3 + without, 3)
        },
    },
    Term {
        name: "b3",
        partition: &[2, 2],
        formula: "[q^5(q+1) + 2P3q^2]/8",
        eval: |q, k| Frac::new(pw(q, 5) * (q + 1) + 2 * ind(k.p3) * q * q, 8),
    },
    Term {
        name: "b3'",
        partition: &[2, 2],
        formula: "[q^2(q^2-1)^2 + 2P3(q-1)^2]/8",
        eval: |q, k| Frac::new(q * q * pw(&(q * q - 1), 2) + 2 * ind(k.p3) * pw(&(q - 1), 2), 8),
    },
    Term {
        name: "b4",
        partition: &[4],
        formula: "q^3/4",
        eval: |q, _| Frac::new(pw(q, 3), 4),
    },
    Term {
        name: "b4'",
        partition: &[4],
        formula: "[P4(q-1)^3 + (1-P4)(q-1)^2(q+1)]/4",
        eval: |q, k| {
            let with4 = ind(k.p4) * pw(&(q - 1), 3);
            let without = (1 - ind(k.p4)) * pw(&(q - 1), 2) * (q + 1);
            Frac::new(with4 + without, 4)
        },
    },
];

static N4_ROWS: [(PClass, [&str; 5]); 3] = [
    (Two, ["b0", "b1", "b2'", "b3", "b4"]),
    (Three, ["b0", "b1'", "b2", "b3'", "b4'"]),
    (Other, ["b0", "b1'", "b2'", "b3'", "b4'"]),
];

fn term(name: &str) -> &'static Term {
    N4_TERMS
        .iter()
        .find(|t| t.name == name)
        .expect("term named in a row exists")
}

fn n4_row(key: &CaseKey) -> [&'static Term; 5] {
    let (_, names) = N4_ROWS.iter().find(|(c, _)| *c == key.p_class()).unwrap();
    names.map(term)
}

fn select(cells: &'static [Cell], key: &CaseKey) -> Result<&'static Cell> {
    let mut hits = cells
        .iter()
        .filter(|c| c.p_class == key.p_class() && c.p3.admits(key.p3) && c.p7.admits(key.p7));
    let first = hits
        .next()
        .ok_or_else(|| Error::InternalConsistency(format!("no table cell for {key:?}")))?;
    if hits.next().is_some() {
        return Err(Error::InternalConsistency(format!("ambiguous table cell for {key:?}")));
    }
    Ok(first)
}

/// The table cell that applies to `key`, for `n ∈ {2, 3}`.
pub fn table_cell(n: usize, key: &CaseKey) -> Result<&'static Cell> {
    match n {
        2 => select(&N2_CELLS, key),
        3 => select(&N3_CELLS, key),
        _ => Err(Error::Unsupported(format!("no cell table for n={n}"))),
    }
}

/// The summands of the four-dimensional count that apply to `key`.
pub fn n4_terms(key: &CaseKey) -> Vec<&'static Term> {
    n4_row(key).to_vec()
}

/// Human-readable listing of every table used by the closed forms.
pub fn dispatch_table() -> String {
    let mut out = String::new();
    let cond = |name: &str, c: Cond| match c {
        Any => String::new(),
        Is(true) => format!(" {name}=1"),
        Is(false) => format!(" {name}=0"),
    };
    for c in N2_CELLS.iter().chain(&N3_CELLS) {
        out.push_str(&format!(
            "n={} {}{}{}: {}\n",
            c.n,
            c.p_class,
            cond("P3", c.p3),
            cond("P7", c.p7),
            c.formula
        ));
    }
    for (class, names) in &N4_ROWS {
        out.push_str(&format!("n=4 {class}: {}\n", names.join(" + ")));
    }
    for t in &N4_TERMS {
        out.push_str(&format!("  {} for {:?}: {}\n", t.name, t.partition, t.formula));
    }
    out
}

/// `N(2, F_q)`.
pub fn n2_count(key: &CaseKey) -> Result<BigUint> {
    let cell = table_cell(2, key)?;
    (cell.eval)(&key.q.into()).exact(cell.formula, key.q)
}

/// `N(3, F_q)`.
pub fn n3_count(key: &CaseKey) -> Result<BigUint> {
    let cell = table_cell(3, key)?;
    (cell.eval)(&key.q.into()).exact(cell.formula, key.q)
}

/// `N(4, F_q)` as a sum of the five `b` terms of its row, cross-checked
/// against `Σ B(μ) / (q-1)^4`.
pub fn n4_count(key: &CaseKey) -> Result<BigUint> {
    let q = BigInt::from(key.q);
    let total = n4_row(key).iter().map(|t| (t.eval)(&q, key)).reduce(Frac::add).unwrap();
    let count = total.exact("sum of b terms", key.q)?;

    let mut sum = BigUint::zero();
    for p in partitions(4) {
        sum += bmu_closed_form(4, &p, key)?;
    }
    let (check, rem) = sum.div_rem(&BigUint::from(key.q - 1).pow(4));
    if !rem.is_zero() || check != count {
        return Err(Error::InternalConsistency(format!(
            "b terms give {count} but Σ B(μ)/(q-1)^4 = {sum}/(q-1)^4 at q={}",
            key.q
        )));
    }
    Ok(count)
}

/// Closed-form `N(n, F_q)` for `n ∈ {2, 3, 4}`.
pub fn closed_form_count(n: usize, key: &CaseKey) -> Result<BigUint> {
    match n {
        2 => n2_count(key),
        3 => n3_count(key),
        4 => n4_count(key),
        _ => Err(Error::Unsupported(format!(
            "closed forms exist only for n = 2, 3, 4, not n = {n}"
        ))),
    }
}

/// Closed-form `B(μ) = Σ_t b(μ,t) / d(μ)`, not divided by `(q-1)^n`.
pub fn bmu_closed_form(n: usize, mu: &Partition, key: &CaseKey) -> Result<BigUint> {
    if mu.n() != n {
        return Err(Error::DimensionMismatch(format!("{mu} is not a partition of {n}")));
    }
    let q = BigInt::from(key.q);
    let q1 = || &q - 1;
    let p3 = ind(key.p3);
    let p7 = ind(key.p7);
    let two = key.p == 2;
    let three = key.p == 3;
    let value = match (n, mu.parts()) {
        (2, [1, 1]) => Frac::new(pw(&q1(), 2) * (&q * &q + &q + 2 * p3), 2),
        (2, [2]) if two => Frac::new(&q * pw(&q1(), 2), 2),
        (2, [2]) => Frac::new(pw(&q1(), 3), 2),
        (3, [1, 1, 1]) => {
            Frac::new(gl_reduced(&q, 3) * pw(&q1(), 3), 6).add(Frac::new((p3 + 2 * p7) * pw(&q1(), 3), 1))
        }
        (3, [1, 2]) if two => Frac::new(pw(&q, 3) * pw(&q1(), 3), 2),
        (3, [1, 2]) => Frac::new(&q * pw(&q1(), 4) * (&q + 1), 2),
        (3, [3]) if three => Frac::new(&q * &q * pw(&q1(), 3), 3),
        (3, [3]) if key.p3 => Frac::new(pw(&q1(), 5), 3),
        (3, [3]) => Frac::new(pw(&q1(), 4) * (&q + 1), 3),
        (4, parts) => {
            let t = n4_row(key)
                .into_iter()
                .find(|t| t.partition == parts)
                .ok_or_else(|| Error::InternalConsistency(format!("no b term for {mu}")))?;
            (t.eval)(&q, key).times(&pw(&q1(), 4))
        }
        _ => return Err(Error::Unsupported(format!("no closed-form B(μ) for n={n}"))),
    };
    value.exact(&format!("B({mu})"), key.q)
}

/// A [`CountReport`] from the closed forms, with the `B(μ)` breakdown.
pub fn formula_report(n: usize, key: &CaseKey) -> Result<CountReport> {
    let start = Instant::now();
    let count = closed_form_count(n, key)?;
    let mut contributions = Vec::new();
    let mut sum = BigUint::zero();
    for p in partitions(n) {
        let value = bmu_closed_form(n, &p, key)?;
        sum += &value;
        contributions.push(PartitionContribution {
            partition: p.parts().to_vec(),
            value,
        });
    }
    if sum != &count * BigUint::from(key.q - 1).pow(n as u32) {
        return Err(Error::InternalConsistency(format!(
            "closed-form N = {count} disagrees with Σ B(μ) = {sum} for n={n}, q={}",
            key.q
        )));
    }
    Ok(CountReport {
        n,
        q: key.q,
        p: key.p,
        m: key.m,
        method: Method::Formula,
        count,
        contributions,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
