//! Finite table-backed local groupoids: construction, axiom validation,
//! and the greedy 3-associative restriction.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{EnumerableGroupoid, Groupoid};

/// One element row of a finite groupoid: a named arrow with object ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementRecord {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// A finite local groupoid given by explicit tables.
///
/// Objects and elements are identified by strings; internally both are
/// index-resolved. Multiplication and inversion are partial maps stored
/// as sorted tables. Values are immutable after construction; all
/// operations are read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLocalGroupoid {
    objects: Vec<String>,
    elements: Vec<ElementRecord>,
    /// source/target as element-index → object-index
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// object-index → element-index of its unit
    units: Vec<usize>,
    mul: BTreeMap<(usize, usize), usize>,
    inv: BTreeMap<usize, usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate object id {0:?}")]
    DuplicateObject(String),
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("unknown object id {0:?} referenced by {1}")]
    UnknownObject(String, String),
    #[error("unknown element id {0:?} referenced by {1}")]
    UnknownElement(String, String),
    #[error("object {0:?} has no unit")]
    MissingUnit(String),
}

impl FiniteLocalGroupoid {
    /// Builds a groupoid from tables of ids, resolving and checking
    /// referential integrity (but not the groupoid axioms: see
    /// [`validate`]).
    pub fn new(
        objects: Vec<String>,
        elements: Vec<ElementRecord>,
        units: BTreeMap<String, String>,
        mul: Vec<(String, String, String)>,
        inv: Vec<(String, String)>,
    ) -> Result<Self, BuildError> {
        let mut objects = objects;
        objects.sort();
        let mut obj_idx = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_idx.insert(o.clone(), i).is_some() {
                return Err(BuildError::DuplicateObject(o.clone()));
            }
        }
        let mut elements = elements;
        elements.sort_by(|a, b| a.id.cmp(&b.id));
        let mut elem_idx = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if elem_idx.insert(e.id.clone(), i).is_some() {
                return Err(BuildError::DuplicateElement(e.id.clone()));
            }
        }
        let look_obj = |id: &str, ctx: &str| {
            obj_idx
                .get(id)
                .copied()
                .ok_or_else(|| BuildError::UnknownObject(id.to_string(), ctx.to_string()))
        };
        let look_elem = |id: &str, ctx: &str| {
            elem_idx
                .get(id)
                .copied()
                .ok_or_else(|| BuildError::UnknownElement(id.to_string(), ctx.to_string()))
        };
        let mut src = Vec::with_capacity(elements.len());
        let mut tgt = Vec::with_capacity(elements.len());
        for e in &elements {
            src.push(look_obj(&e.source, &format!("element {:?}", e.id))?);
            tgt.push(look_obj(&e.target, &format!("element {:?}", e.id))?);
        }
        let mut unit_of = vec![usize::MAX; objects.len()];
        for (o, u) in &units {
            let oi = look_obj(o, "units")?;
            unit_of[oi] = look_elem(u, &format!("unit of {o:?}"))?;
        }
        for (oi, &u) in unit_of.iter().enumerate() {
            if u == usize::MAX {
                return Err(BuildError::MissingUnit(objects[oi].clone()));
            }
        }
        let mut mul_t = BTreeMap::new();
        for (g, h, gh) in &mul {
            let key = (look_elem(g, "mul")?, look_elem(h, "mul")?);
            mul_t.insert(key, look_elem(gh, "mul")?);
        }
        let mut inv_t = BTreeMap::new();
        for (g, gi) in &inv {
            inv_t.insert(look_elem(g, "inv")?, look_elem(gi, "inv")?);
        }
        Ok(Self {
            objects,
            elements,
            src,
            tgt,
            units: unit_of,
            mul: mul_t,
            inv: inv_t,
        })
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn element_records(&self) -> &[ElementRecord] {
        &self.elements
    }

    pub fn element_id(&self, e: usize) -> &str {
        &self.elements[e].id
    }

    pub fn element_by_id(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.id == id)
    }

    pub fn mul_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.mul
    }

    pub fn inv_table(&self) -> &BTreeMap<usize, usize> {
        &self.inv
    }

    pub fn unit_of_object(&self, o: usize) -> usize {
        self.units[o]
    }

    /// True if `h` is the unit at `source(g)` or `g` is the unit at
    /// `target(h)`: the products the axioms force to stay defined.
    pub fn is_unit_product(&self, g: usize, h: usize) -> bool {
        h == self.units[self.src[g]] || g == self.units[self.tgt[h]]
    }

    /// Returns a copy with one product entry removed.
    pub fn without_product(&self, g: usize, h: usize) -> Self {
        let mut out = self.clone();
        out.mul.remove(&(g, h));
        out
    }

    /// Returns a copy with one product entry replaced (fixture mutation).
    pub fn with_product(&self, g: usize, h: usize, gh: usize) -> Self {
        let mut out = self.clone();
        out.mul.insert((g, h), gh);
        out
    }

    /// Full multiplication table of the cyclic group ℤ/n on one object.
    /// Element ids are `"0"…` and the unit is `"0"`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let objects = vec!["*".to_string()];
        let elements = (0..n)
            .map(|i| ElementRecord {
                id: i.to_string(),
                source: "*".into(),
                target: "*".into(),
            })
            .collect();
        let mut units = BTreeMap::new();
        units.insert("*".to_string(), "0".to_string());
        let mut mul = Vec::new();
        for a in 0..n {
            for b in 0..n {
                mul.push((a.to_string(), b.to_string(), ((a + b) % n).to_string()));
            }
        }
        let inv = (0..n)
            .map(|a| (a.to_string(), ((n - a) % n).to_string()))
            .collect();
        Self::new(objects, elements, units, mul, inv).expect("cyclic group tables are consistent")
    }

    /// The interval `{−r..r} ⊂ ℤ` with addition defined exactly when the
    /// sum stays in range. Ids are signed decimal strings.
    pub fn integer_interval(r: i64) -> Self {
        assert!(r >= 0);
        let objects = vec!["*".to_string()];
        let elements = (-r..=r)
            .map(|i| ElementRecord {
                id: i.to_string(),
                source: "*".into(),
                target: "*".into(),
            })
            .collect();
        let mut units = BTreeMap::new();
        units.insert("*".to_string(), "0".to_string());
        let mut mul = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                if (a + b).abs() <= r {
                    mul.push((a.to_string(), b.to_string(), (a + b).to_string()));
                }
            }
        }
        let inv = (-r..=r).map(|a| (a.to_string(), (-a).to_string())).collect();
        Self::new(objects, elements, units, mul, inv).expect("interval tables are consistent")
    }

    /// One object, one unit element, no other structure.
    pub fn unit_only() -> Self {
        let mut units = BTreeMap::new();
        units.insert("*".to_string(), "e".to_string());
        Self::new(
            vec!["*".into()],
            vec![ElementRecord {
                id: "e".into(),
                source: "*".into(),
                target: "*".into(),
            }],
            units,
            vec![("e".into(), "e".into(), "e".into())],
            vec![("e".into(), "e".into())],
        )
        .expect("unit-only tables are consistent")
    }

    /// The standard non-3-associative fixture: `ab = p`, `bc = q`,
    /// `pc = r`, `aq = s` with `r ≠ s`, plus all unit products.
    pub fn nonassociative_witness_fixture() -> Self {
        let ids = ["a", "b", "c", "p", "q", "r", "s", "u"];
        let elements = ids
            .iter()
            .map(|id| ElementRecord {
                id: (*id).into(),
                source: "*".into(),
                target: "*".into(),
            })
            .collect();
        let mut units = BTreeMap::new();
        units.insert("*".to_string(), "u".to_string());
        let mut mul: Vec<(String, String, String)> = vec![
            ("a".into(), "b".into(), "p".into()),
            ("b".into(), "c".into(), "q".into()),
            ("p".into(), "c".into(), "r".into()),
            ("a".into(), "q".into(), "s".into()),
        ];
        for id in ids {
            mul.push((id.into(), "u".into(), id.into()));
            mul.push(("u".into(), id.into(), id.into()));
        }
        Self::new(vec!["*".into()], elements, units, mul, vec![("u".into(), "u".into())])
            .expect("witness fixture tables are consistent")
    }
}

impl Groupoid for FiniteLocalGroupoid {
    type Object = usize;
    type Element = usize;
    type Key = usize;

    fn source(&self, g: &usize) -> usize {
        self.src[*g]
    }

    fn target(&self, g: &usize) -> usize {
        self.tgt[*g]
    }

    fn unit(&self, x: &usize) -> usize {
        self.units[*x]
    }

    fn try_mul(&self, g: &usize, h: &usize) -> Option<usize> {
        self.mul.get(&(*g, *h)).copied()
    }

    fn try_inv(&self, g: &usize) -> Option<usize> {
        self.inv.get(g).copied()
    }

    fn elements_equal(&self, g: &usize, h: &usize) -> bool {
        g == h
    }

    fn objects_equal(&self, x: &usize, y: &usize) -> bool {
        x == y
    }

    fn element_key(&self, g: &usize) -> usize {
        *g
    }
}

impl EnumerableGroupoid for FiniteLocalGroupoid {
    fn all_objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn all_elements(&self) -> Vec<usize> {
        (0..self.elements.len()).collect()
    }
}

/// One violated axiom, with the offending ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Unit element's source or target is not its own object.
    UnitEndpoints { object: String, unit: String },
    /// `g · unit(source(g))` missing or ≠ `g`.
    UnitLawRight { g: String },
    /// `unit(target(g)) · g` missing or ≠ `g`.
    UnitLawLeft { g: String },
    /// A product table entry whose factors are not composable.
    MulComposability { g: String, h: String },
    /// `source(gh) ≠ source(h)` or `target(gh) ≠ target(g)`.
    MulEndpoints { g: String, h: String },
    /// `source(g⁻¹) ≠ target(g)` or `target(g⁻¹) ≠ source(g)`.
    InvEndpoints { g: String },
    /// `(g⁻¹)⁻¹` missing or ≠ `g`.
    InvInvolutive { g: String },
    /// `g⁻¹ · g` missing or ≠ `unit(source(g))`.
    InvLawLeft { g: String },
    /// `g · g⁻¹` missing or ≠ `unit(target(g))`.
    InvLawRight { g: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitEndpoints { object, unit } => {
                write!(f, "unit endpoints: unit {unit:?} of object {object:?} is not an isotropy arrow at it")
            }
            Violation::UnitLawRight { g } => write!(f, "unit law: {g:?} · unit(source) ≠ {g:?}"),
            Violation::UnitLawLeft { g } => write!(f, "unit law: unit(target) · {g:?} ≠ {g:?}"),
            Violation::MulComposability { g, h } => {
                write!(f, "multiplication domain: ({g:?}, {h:?}) is not composable")
            }
            Violation::MulEndpoints { g, h } => {
                write!(f, "multiplication endpoints: {g:?}·{h:?} has wrong source or target")
            }
            Violation::InvEndpoints { g } => {
                write!(f, "inversion endpoints: {g:?}⁻¹ does not swap source and target")
            }
            Violation::InvInvolutive { g } => {
                write!(f, "inversion involutivity: ({g:?}⁻¹)⁻¹ ≠ {g:?}")
            }
            Violation::InvLawLeft { g } => write!(f, "inversion law: {g:?}⁻¹ · {g:?} ≠ unit"),
            Violation::InvLawRight { g } => write!(f, "inversion law: {g:?} · {g:?}⁻¹ ≠ unit"),
        }
    }
}

/// Result of [`validate`]: empty iff every axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "all axioms hold")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks every discrete local-groupoid axiom of `g` exhaustively and
/// reports each violation. Violations are report entries, not failures.
pub fn validate(g: &FiniteLocalGroupoid) -> ValidationReport {
    let mut violations = Vec::new();
    let id = |e: usize| g.element_id(e).to_string();

    for (oi, object) in g.object_ids().iter().enumerate() {
        let u = g.unit_of_object(oi);
        if g.source(&u) != oi || g.target(&u) != oi {
            violations.push(Violation::UnitEndpoints {
                object: object.clone(),
                unit: id(u),
            });
        }
    }
    for e in g.all_elements() {
        let us = g.unit(&g.source(&e));
        if g.try_mul(&e, &us) != Some(e) {
            violations.push(Violation::UnitLawRight { g: id(e) });
        }
        let ut = g.unit(&g.target(&e));
        if g.try_mul(&ut, &e) != Some(e) {
            violations.push(Violation::UnitLawLeft { g: id(e) });
        }
    }
    for (&(a, b), &ab) in g.mul_table() {
        if g.source(&a) != g.target(&b) {
            violations.push(Violation::MulComposability { g: id(a), h: id(b) });
        } else if g.source(&ab) != g.source(&b) || g.target(&ab) != g.target(&a) {
            violations.push(Violation::MulEndpoints { g: id(a), h: id(b) });
        }
    }
    for (&a, &ai) in g.inv_table() {
        if g.source(&ai) != g.target(&a) || g.target(&ai) != g.source(&a) {
            violations.push(Violation::InvEndpoints { g: id(a) });
        }
        if g.try_inv(&ai) != Some(a) {
            violations.push(Violation::InvInvolutive { g: id(a) });
        }
        if g.try_mul(&ai, &a) != Some(g.unit(&g.source(&a))) {
            violations.push(Violation::InvLawLeft { g: id(a) });
        }
        if g.try_mul(&a, &ai) != Some(g.unit(&g.target(&a))) {
            violations.push(Violation::InvLawRight { g: id(a) });
        }
    }
    ValidationReport { violations }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RestrictError {
    /// Every product that could break the witness is a mandatory unit
    /// product; the input table was not a valid local groupoid.
    #[error("cannot break 3-associativity witness ({a}, {b}, {c}) without removing a unit product")]
    Unrestrictable { a: String, b: String, c: String },
}

/// Greedily restricts the multiplication table until the groupoid is
/// exhaustively 3-associative.
///
/// Each round locates the first witness `(a, b, c)` with
/// `(ab)c ≠ a(bc)` (both defined) and removes the participating
/// non-unit product used by the fewest other defined triples, ties
/// broken lexicographically by element-id pair. Unit products are never
/// removed. Inversion entries whose law products disappear are dropped
/// with their partners, so the result still passes [`validate`].
pub fn make_3_associative(g: &FiniteLocalGroupoid) -> Result<FiniteLocalGroupoid, RestrictError> {
    let mut cur = g.clone();
    loop {
        let Some((a, b, c)) = first_triple_witness(&cur) else {
            break;
        };
        let ab = cur.try_mul(&a, &b).expect("witness has (ab) defined");
        let bc = cur.try_mul(&b, &c).expect("witness has (bc) defined");
        let mut candidates: Vec<(usize, usize)> = [(a, b), (ab, c), (b, c), (a, bc)]
            .into_iter()
            .filter(|&(x, y)| !cur.is_unit_product(x, y))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.is_empty() {
            return Err(RestrictError::Unrestrictable {
                a: cur.element_id(a).to_string(),
                b: cur.element_id(b).to_string(),
                c: cur.element_id(c).to_string(),
            });
        }
        let best = candidates
            .into_iter()
            .map(|p| {
                let uses = other_triples_using(&cur, p, (a, b, c));
                (uses, (cur.element_id(p.0).to_string(), cur.element_id(p.1).to_string()), p)
            })
            .min()
            .expect("candidate set is nonempty")
            .2;
        cur = cur.without_product(best.0, best.1);
    }
    // Restrict the inversion domain to pairs whose law products survived.
    loop {
        let broken: Vec<usize> = cur
            .inv_table()
            .iter()
            .filter(|&(&a, &ai)| {
                cur.try_mul(&ai, &a) != Some(cur.unit(&cur.source(&a)))
                    || cur.try_mul(&a, &ai) != Some(cur.unit(&cur.target(&a)))
                    || cur.try_inv(&ai) != Some(a)
            })
            .map(|(&a, _)| a)
            .collect();
        if broken.is_empty() {
            break;
        }
        for a in broken {
            if let Some(ai) = cur.try_inv(&a) {
                cur.inv.remove(&a);
                cur.inv.remove(&ai);
            }
        }
    }
    Ok(cur)
}

/// First composable triple (lexicographic) whose two triple products are
/// both defined but unequal.
fn first_triple_witness(g: &FiniteLocalGroupoid) -> Option<(usize, usize, usize)> {
    let n = g.element_records().len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = g.try_mul(&a, &b) else { continue };
            for c in 0..n {
                let Some(bc) = g.try_mul(&b, &c) else { continue };
                if let (Some(l), Some(r)) = (g.try_mul(&ab, &c), g.try_mul(&a, &bc)) {
                    if l != r {
                        return Some((a, b, c));
                    }
                }
            }
        }
    }
    None
}

/// Number of composable triples other than `skip` in which the product
/// pair `p` participates on a fully defined side.
fn other_triples_using(
    g: &FiniteLocalGroupoid,
    p: (usize, usize),
    skip: (usize, usize, usize),
) -> usize {
    let n = g.element_records().len();
    let mut count = 0usize;
    for a in 0..n {
        for b in 0..n {
            let ab = g.try_mul(&a, &b);
            for c in 0..n {
                if (a, b, c) == skip {
                    continue;
                }
                let mut used = false;
                if let Some(ab) = ab {
                    if g.try_mul(&ab, &c).is_some() && (p == (a, b) || p == (ab, c)) {
                        used = true;
                    }
                }
                if !used {
                    if let Some(bc) = g.try_mul(&b, &c) {
                        if g.try_mul(&a, &bc).is_some() && (p == (b, c) || p == (a, bc)) {
                            used = true;
                        }
                    }
                }
                if used {
                    count += 1;
                }
            }
        }
    }
    count
}
