//! The braid group action on exceptional sequences, duals, the Serre-functor
//! check and orbit exploration.
//!
//! `σᵢ` replaces `(Xᵢ, Xᵢ₊₁)` by `(Xᵢ₊₁, R_{Xᵢ₊₁}Xᵢ)` and `σᵢ⁻¹` by
//! `(L_{Xᵢ}Xᵢ₊₁, Xᵢ)`. Words are applied left to right.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::PathAlgebra;
use crate::complex::{coevaluation_map, cone_unchecked, evaluation_map, ChainMap, ProjComplex};
use crate::error::{Error, Result};
use crate::hom::{hom_all, hom_dims};
use crate::iso::{iso_test_minimal, IsoVerdict, DEFAULT_TRIALS};
use crate::minimal::minimalize;
use crate::module::nakayama;

/// Parameters of the randomized isomorphism search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

pub fn is_exceptional_object(alg: &PathAlgebra, x: &ProjComplex) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroComplex);
    }
    Ok(hom_dims(alg, x, x)
        .into_iter()
        .all(|(l, d)| if l == 0 { d == 1 } else { d == 0 }))
}

fn no_homs(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> bool {
    hom_dims(alg, x, y).into_iter().all(|(_, d)| d == 0)
}

/// Every member exceptional, and `Hom(Xᵢ, Xⱼ[ℓ]) = 0` for `j < i`.
pub fn is_exceptional_sequence(alg: &PathAlgebra, items: &[ProjComplex]) -> bool {
    for (i, x) in items.iter().enumerate() {
        if !matches!(is_exceptional_object(alg, x), Ok(true)) {
            return false;
        }
        for y in &items[..i] {
            if !no_homs(alg, x, y) {
                return false;
            }
        }
    }
    true
}

/// `Hom(Xᵢ, Xⱼ[ℓ]) = 0` for all `i, j` and `ℓ > 0`.
pub fn is_presilting(alg: &PathAlgebra, items: &[ProjComplex]) -> bool {
    items.iter().all(|x| {
        items
            .iter()
            .all(|y| hom_dims(alg, x, y).into_iter().all(|(l, d)| l <= 0 || d == 0))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSequence {
    items: Vec<ProjComplex>,
    full: bool,
}

impl ExceptionalSequence {
    pub fn new(alg: &PathAlgebra, items: Vec<ProjComplex>) -> Result<Self> {
        if items.iter().any(ProjComplex::is_zero) {
            return Err(Error::ZeroComplex);
        }
        if !is_exceptional_sequence(alg, &items) {
            return Err(Error::Precondition("not an exceptional sequence".into()));
        }
        let full = items.len() == alg.num_vertices();
        Ok(ExceptionalSequence { items, full })
    }

    pub fn items(&self) -> &[ProjComplex] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn into_items(self) -> Vec<ProjComplex> {
        self.items
    }
}

/// Signed generator indices: `i` is `σᵢ`, `-i` is `σᵢ⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|&g| -g).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        BraidWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// `σ₁(σ₂σ₁)⋯(σ_{n-1}⋯σ₁)`.
    pub fn longest(n: usize) -> BraidWord {
        let mut w = Vec::new();
        for k in 1..n as i32 {
            for g in (1..=k).rev() {
                w.push(g);
            }
        }
        BraidWord(w)
    }

    pub fn check_range(&self, len: usize) -> Result<()> {
        for &g in &self.0 {
            if g == 0 || g.unsigned_abs() as usize >= len {
                return Err(Error::GeneratorRange { index: g, len });
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let g: i32 = t
                    .parse()
                    .map_err(|_| Error::Precondition(format!("`{t}` is not a generator index")))?;
                if g == 0 {
                    return Err(Error::GeneratorRange { index: 0, len: 0 });
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()
            .map(BraidWord)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Stalk projectives in the given vertex order.
pub fn seed_sequence(alg: &PathAlgebra, extension: &[usize]) -> Result<ExceptionalSequence> {
    let q = alg.quiver();
    if q.has_oriented_cycle() {
        return Err(Error::NotAcyclic);
    }
    let mut seen = vec![false; q.num_vertices()];
    for &v in extension {
        if v >= q.num_vertices() || seen[v] {
            return Err(Error::Precondition("extension is not a vertex permutation".into()));
        }
        seen[v] = true;
    }
    if extension.len() != q.num_vertices() {
        return Err(Error::Precondition("extension is not a vertex permutation".into()));
    }
    let items = extension.iter().map(|&v| ProjComplex::stalk(v, 0)).collect();
    ExceptionalSequence::new(alg, items)
}

fn all_maps(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Vec<ChainMap> {
    hom_all(alg, x, y).into_iter().flat_map(|h| h.basis).collect()
}

pub(crate) fn right_mutation_unchecked(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> ProjComplex {
    let maps = all_maps(alg, x, y);
    if maps.is_empty() {
        return x.clone();
    }
    let u = coevaluation_map(alg, &maps);
    let c = cone_unchecked(alg, &u);
    minimalize(alg, &c.shift(alg.field(), -1))
}

pub(crate) fn left_mutation_unchecked(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> ProjComplex {
    let maps = all_maps(alg, x, y);
    if maps.is_empty() {
        return y.clone();
    }
    let ev = evaluation_map(alg, &maps);
    minimalize(alg, &cone_unchecked(alg, &ev))
}

fn check_pair(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Result<()> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroComplex);
    }
    if !is_exceptional_sequence(alg, &[x.clone(), y.clone()]) {
        return Err(Error::NotExceptionalPair);
    }
    Ok(())
}

/// `R_Y X`: the cocone of the universal map `X -> ⊕ Hom(X, Y[ℓ])* ⊗ Y[ℓ]`.
pub fn right_mutation(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Result<ProjComplex> {
    check_pair(alg, x, y)?;
    Ok(right_mutation_unchecked(alg, x, y))
}

/// `L_X Y`: the cone of the evaluation map `⊕ Hom(X[ℓ], Y) ⊗ X[ℓ] -> Y`.
pub fn left_mutation(alg: &PathAlgebra, x: &ProjComplex, y: &ProjComplex) -> Result<ProjComplex> {
    check_pair(alg, x, y)?;
    Ok(left_mutation_unchecked(alg, x, y))
}

/// Applies one generator without revalidating.
fn step(alg: &PathAlgebra, items: &mut [ProjComplex], g: i32) {
    let i = g.unsigned_abs() as usize - 1;
    let (x, y) = (items[i].clone(), items[i + 1].clone());
    if g > 0 {
        items[i] = y.clone();
        items[i + 1] = right_mutation_unchecked(alg, &x, &y);
    } else {
        items[i] = left_mutation_unchecked(alg, &x, &y);
        items[i + 1] = x;
    }
}

/// Applies `w` left to right, checking exceptionality after every step.
pub fn apply_word(alg: &PathAlgebra, seq: &ExceptionalSequence, w: &BraidWord) -> Result<ExceptionalSequence> {
    w.check_range(seq.len())?;
    let mut items = seq.items.clone();
    for (pos, &g) in w.0.iter().enumerate() {
        step(alg, &mut items, g);
        if !is_exceptional_sequence(alg, &items) {
            return Err(Error::Internal(format!(
                "generator {g} at position {} broke exceptionality",
                pos + 1
            )));
        }
    }
    Ok(ExceptionalSequence {
        items,
        full: seq.full,
    })
}

fn require_full(seq: &ExceptionalSequence) -> Result<()> {
    if !seq.full {
        return Err(Error::Precondition("sequence is not full".into()));
    }
    Ok(())
}

fn assert_componentwise(
    alg: &PathAlgebra,
    a: &[ProjComplex],
    b: &[ProjComplex],
    opts: IsoOptions,
    what: &str,
) -> Result<()> {
    for (k, (x, y)) in a.iter().zip(b).enumerate() {
        let v = iso_test_minimal(alg, &minimalize(alg, x), &minimalize(alg, y), opts.trials, opts.seed);
        if v != IsoVerdict::Isomorphic {
            return Err(Error::Internal(format!(
                "{what}: component {} is {v:?}",
                k + 1
            )));
        }
    }
    Ok(())
}

/// `(X_n, R¹X_{n-1}, …, R^{n-1}X₁)` by iterated right mutations.
pub fn right_dual_formula(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Vec<ProjComplex> {
    let x = &seq.items;
    let n = x.len();
    (0..n)
        .map(|p| {
            let i = n - 1 - p;
            let mut z = x[i].clone();
            for y in &x[i + 1..] {
                z = right_mutation_unchecked(alg, &z, y);
            }
            z
        })
        .collect()
}

/// `(L^{n-1}X_n, …, L¹X₂, X₁)` by iterated left mutations.
pub fn left_dual_formula(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Vec<ProjComplex> {
    let x = &seq.items;
    let n = x.len();
    (0..n)
        .map(|p| {
            let i = n - 1 - p;
            let mut z = x[i].clone();
            for y in x[..i].iter().rev() {
                z = left_mutation_unchecked(alg, y, &z);
            }
            z
        })
        .collect()
}

/// Right dual computed as `ω₀ X` and cross-checked against the iterated
/// mutation formula.
pub fn right_dual(alg: &PathAlgebra, seq: &ExceptionalSequence, opts: IsoOptions) -> Result<ExceptionalSequence> {
    require_full(seq)?;
    let by_word = apply_word(alg, seq, &BraidWord::longest(seq.len()))?;
    let by_formula = right_dual_formula(alg, seq);
    assert_componentwise(alg, &by_word.items, &by_formula, opts, "right dual")?;
    Ok(by_word)
}

/// Left dual computed as `ω₀⁻¹ X` and cross-checked against the formula.
pub fn left_dual(alg: &PathAlgebra, seq: &ExceptionalSequence, opts: IsoOptions) -> Result<ExceptionalSequence> {
    require_full(seq)?;
    let by_word = apply_word(alg, seq, &BraidWord::longest(seq.len()).inverse())?;
    let by_formula = left_dual_formula(alg, seq);
    assert_componentwise(alg, &by_word.items, &by_formula, opts, "left dual")?;
    Ok(by_word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    /// `νXᵢ` against `(L²X)ᵢ`, per component.
    pub components: Vec<IsoVerdict>,
    /// `L^{n-1}X_n` against `νX_n`.
    pub last: IsoVerdict,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.last == IsoVerdict::Isomorphic
            && self.components.iter().all(|&v| v == IsoVerdict::Isomorphic)
    }

    pub fn undetermined(&self) -> bool {
        self.last == IsoVerdict::Undetermined || self.components.contains(&IsoVerdict::Undetermined)
    }
}

/// Compares the Serre functor with the square of the left dual.
pub fn serre_check(alg: &PathAlgebra, seq: &ExceptionalSequence, opts: IsoOptions) -> Result<SerreReport> {
    require_full(seq)?;
    let l1 = left_dual(alg, seq, opts)?;
    let l2 = left_dual(alg, &l1, opts)?;
    let serre: Vec<ProjComplex> = seq
        .items
        .iter()
        .map(|x| nakayama(alg, x))
        .collect::<Result<_>>()?;
    let components = serre
        .iter()
        .zip(&l2.items)
        .map(|(s, l)| iso_test_minimal(alg, s, &minimalize(alg, l), opts.trials, opts.seed))
        .collect();
    let last = iso_test_minimal(
        alg,
        &minimalize(alg, &l1.items[0]),
        serre.last().expect("nonempty sequence"),
        opts.trials,
        opts.seed,
    );
    Ok(SerreReport { components, last })
}

/// Shifts `ℓᵢ = (i-1)·a` making `⊕ Xᵢ[ℓᵢ]` pre-silting, where `a` is the
/// largest positive shift carrying a forward morphism (or 0).
pub fn presilting_shift(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Result<Vec<i32>> {
    let x = &seq.items;
    let mut a = 0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            for (l, d) in hom_dims(alg, &x[i], &x[j]) {
                if d > 0 && l > a {
                    a = l;
                }
            }
        }
    }
    let shifts: Vec<i32> = (0..x.len() as i32).map(|i| i * a).collect();
    let shifted: Vec<ProjComplex> = x
        .iter()
        .zip(&shifts)
        .map(|(c, &s)| c.shift(alg.field(), s))
        .collect();
    if !is_presilting(alg, &shifted) {
        return Err(Error::Internal("shifted sequence is not pre-silting".into()));
    }
    Ok(shifts)
}

/// Minimal model shifted so that its lowest degree is 0.
pub fn normalize_shift(alg: &PathAlgebra, x: &ProjComplex) -> Result<ProjComplex> {
    let m = minimalize(alg, x);
    if m.is_zero() {
        return Err(Error::ZeroComplex);
    }
    Ok(m.shift(alg.field(), m.min_degree()))
}

pub fn normalize_sequence(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Result<ExceptionalSequence> {
    Ok(ExceptionalSequence {
        items: seq
            .items
            .iter()
            .map(|x| normalize_shift(alg, x))
            .collect::<Result<_>>()?,
        full: seq.full,
    })
}

/// Shift-invariant summary of a sequence: per component the summand
/// multisets of the normalized minimal model, and all Hom dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceKey {
    pub profiles: Vec<Vec<(i32, Vec<usize>)>>,
    pub homs: Vec<Vec<Vec<(i32, usize)>>>,
}

pub fn canonical_key(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Result<SequenceKey> {
    let norm = normalize_sequence(alg, seq)?;
    Ok(key_of_normalized(alg, &norm.items))
}

fn key_of_normalized(alg: &PathAlgebra, items: &[ProjComplex]) -> SequenceKey {
    SequenceKey {
        profiles: items.iter().map(ProjComplex::summand_profile).collect(),
        homs: items
            .iter()
            .map(|x| {
                items
                    .iter()
                    .map(|y| hom_dims(alg, x, y).into_iter().filter(|&(_, d)| d > 0).collect())
                    .collect()
            })
            .collect(),
    }
}

/// Integer determinant by fraction-free elimination.
pub fn integer_determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Classes of the members in the Grothendieck group, one row each.
pub fn k0_classes(alg: &PathAlgebra, seq: &ExceptionalSequence) -> Vec<Vec<i64>> {
    seq.items
        .iter()
        .map(|x| x.k0_class(alg.num_vertices()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub closed: bool,
    pub size: usize,
    pub max_nodes: usize,
    pub elements: Vec<ExceptionalSequence>,
    /// Sequences whose identity could not be decided.
    pub quarantined: Vec<ExceptionalSequence>,
    /// For each element, the word reaching it from the seed.
    pub words: Vec<BraidWord>,
}

/// Breadth-first closure of the seed under `σᵢ^{±1}` up to shifts and
/// componentwise isomorphism. Stops as open once more than `max_nodes`
/// distinct sequences are found.
pub fn orbit_explore(
    alg: &PathAlgebra,
    seed: &ExceptionalSequence,
    max_nodes: usize,
    opts: IsoOptions,
) -> Result<OrbitReport> {
    let n = seed.len();
    let start = normalize_sequence(alg, seed)?;
    let mut elements = vec![start.clone()];
    let mut words = vec![BraidWord::default()];
    let mut buckets: HashMap<SequenceKey, Vec<usize>> = HashMap::new();
    buckets
        .entry(key_of_normalized(alg, &start.items))
        .or_default()
        .push(0);
    let mut quarantined = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for i in 1..n as i32 {
            for g in [i, -i] {
                let next = apply_word(alg, &elements[idx], &BraidWord(vec![g]))?;
                let next = normalize_sequence(alg, &next)?;
                let key = key_of_normalized(alg, &next.items);
                let mut duplicate = false;
                let mut undecided = false;
                for &c in buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                    let verdicts: Vec<IsoVerdict> = elements[c]
                        .items
                        .iter()
                        .zip(&next.items)
                        .map(|(a, b)| iso_test_minimal(alg, a, b, opts.trials, opts.seed))
                        .collect();
                    if verdicts.iter().all(|&v| v == IsoVerdict::Isomorphic) {
                        duplicate = true;
                        break;
                    }
                    if !verdicts.contains(&IsoVerdict::NotIsomorphic) {
                        undecided = true;
                    }
                }
                if duplicate {
                    continue;
                }
                if undecided {
                    if !quarantined.contains(&next) {
                        quarantined.push(next);
                    }
                    continue;
                }
                let id = elements.len();
                elements.push(next);
                let mut w = words[idx].clone();
                w.0.push(g);
                words.push(w);
                buckets.entry(key).or_default().push(id);
                if elements.len() > max_nodes {
                    return Ok(OrbitReport {
                        closed: false,
                        size: elements.len(),
                        max_nodes,
                        elements,
                        quarantined,
                        words,
                    });
                }
                queue.push_back(id);
            }
        }
    }
    Ok(OrbitReport {
        closed: true,
        size: elements.len(),
        max_nodes,
        elements,
        quarantined,
        words,
    })
}

/// Per-component verdicts for one relation `lhs ≅ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub lhs: String,
    pub rhs: String,
    pub verdicts: Vec<IsoVerdict>,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|&v| v == IsoVerdict::Isomorphic)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub checks: Vec<RelationCheck>,
}

impl BraidReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn undetermined(&self) -> usize {
        self.checks
            .iter()
            .flat_map(|c| &c.verdicts)
            .filter(|&&v| v == IsoVerdict::Undetermined)
            .count()
    }
}

/// Checks `σᵢσᵢ⁻¹ = σᵢ⁻¹σᵢ = 1`, the braid and commutation relations, and
/// `random_words` words (drawn from `opts.seed`) followed by their inverses.
pub fn verify_braid(
    alg: &PathAlgebra,
    seq: &ExceptionalSequence,
    random_words: usize,
    opts: IsoOptions,
) -> Result<BraidReport> {
    use rand::{Rng, SeedableRng};

    let n = seq.len() as i32;
    let mut pairs: Vec<(BraidWord, BraidWord)> = Vec::new();
    for i in 1..n {
        pairs.push((BraidWord(vec![i, -i]), BraidWord::default()));
        pairs.push((BraidWord(vec![-i, i]), BraidWord::default()));
    }
    for i in 1..n - 1 {
        pairs.push((BraidWord(vec![i, i + 1, i]), BraidWord(vec![i + 1, i, i + 1])));
    }
    for i in 1..n {
        for j in i + 2..n {
            pairs.push((BraidWord(vec![i, j]), BraidWord(vec![j, i])));
        }
    }
    if n > 1 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..random_words {
            let len = rng.gen_range(1..=6);
            let w = BraidWord(
                (0..len)
                    .map(|_| rng.gen_range(1..n) * if rng.gen_bool(0.5) { 1 } else { -1 })
                    .collect(),
            );
            pairs.push((w.concat(&w.inverse()), BraidWord::default()));
        }
    }
    let mut checks = Vec::with_capacity(pairs.len());
    for (l, r) in pairs {
        let a = apply_word(alg, seq, &l)?;
        let b = apply_word(alg, seq, &r)?;
        let verdicts = a
            .items
            .iter()
            .zip(&b.items)
            .map(|(x, y)| {
                iso_test_minimal(alg, &minimalize(alg, x), &minimalize(alg, y), opts.trials, opts.seed)
            })
            .collect();
        checks.push(RelationCheck {
            lhs: l.to_string(),
            rhs: r.to_string(),
            verdicts,
        });
    }
    Ok(BraidReport { checks })
}

pub fn sequence_to_json(alg: &PathAlgebra, seq: &ExceptionalSequence) -> serde_json::Value {
    serde_json::Value::Array(seq.items.iter().map(|x| x.to_json(alg)).collect())
}

/// Reads a list of complexes, or an object holding one under `sequence`.
pub fn sequence_from_json(alg: &PathAlgebra, v: &serde_json::Value) -> Result<ExceptionalSequence> {
    let list = v
        .as_array()
        .or_else(|| v.get("sequence").and_then(serde_json::Value::as_array))
        .ok_or_else(|| Error::Json("expected a list of complexes".into()))?;
    let items = list
        .iter()
        .map(|c| ProjComplex::from_json(alg, c))
        .collect::<Result<Vec<_>>>()?;
    ExceptionalSequence::new(alg, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::iso_test;
    use crate::linalg::Field;

    fn alg(q: crate::quiver::GentleQuiver) -> PathAlgebra {
        PathAlgebra::new(q, Field::default()).unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(BraidWord::longest(3), BraidWord(vec![1, 2, 1]));
        assert_eq!(BraidWord::longest(4).0.len(), 6);
        assert_eq!("1 2 -1".parse::<BraidWord>().unwrap(), BraidWord(vec![1, 2, -1]));
        assert!("1 0".parse::<BraidWord>().is_err());
        assert_eq!(BraidWord(vec![1, -2]).inverse(), BraidWord(vec![2, -1]));
        assert_eq!(
            BraidWord(vec![3]).check_range(3),
            Err(Error::GeneratorRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn a2_sequences() {
        let a = alg(fixtures::a2());
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        assert!(is_exceptional_sequence(&a, &[p1.clone(), p2.clone()]));
        assert!(!is_exceptional_sequence(&a, &[p2.clone(), p1.clone()]));
        assert!(is_presilting(&a, &[p1.clone(), p2.clone()]));
        assert!(!is_presilting(&a, &[p1.clone(), p1.shift(a.field(), -1)]));
        let (sum, _) = ProjComplex::direct_sum(&[&p1, &p1]);
        assert!(!is_exceptional_object(&a, &sum).unwrap());
        assert_eq!(is_exceptional_object(&a, &ProjComplex::zero()), Err(Error::ZeroComplex));
    }

    #[test]
    fn a2_mutations() {
        let a = alg(fixtures::a2());
        let p1 = ProjComplex::stalk(0, 0);
        let p2 = ProjComplex::stalk(1, 0);
        let r = right_mutation(&a, &p1, &p2).unwrap();
        assert_eq!(r.total_rank(), 2);
        assert!(is_exceptional_sequence(&a, &[p2.clone(), r.clone()]));
        let l = left_mutation(&a, &p1, &p2).unwrap();
        assert_eq!((l.term(-1), l.term(0)), (&[0usize][..], &[1usize][..]));
        assert!(is_exceptional_sequence(&a, &[l, p1.clone()]));
        assert_eq!(right_mutation(&a, &p2, &p1), Err(Error::NotExceptionalPair));
    }

    #[test]
    fn disjoint_pair_swaps() {
        let mut q = fixtures::a2();
        q.add_vertex("3").unwrap();
        let a = alg(q);
        let x = ProjComplex::stalk(0, 0);
        let z = ProjComplex::stalk(2, 0);
        assert_eq!(right_mutation(&a, &x, &z).unwrap(), x);
        assert_eq!(left_mutation(&a, &x, &z).unwrap(), z);
    }

    #[test]
    fn sigma_inverse_round_trip() {
        let a = alg(fixtures::a3());
        let seq = seed_sequence(&a, &[0, 1, 2]).unwrap();
        for w in [vec![1, -1], vec![-2, 2], vec![1, 2, -2, -1]] {
            let out = apply_word(&a, &seq, &BraidWord(w)).unwrap();
            for (x, y) in out.items().iter().zip(seq.items()) {
                assert_eq!(iso_test(&a, x, y, 20, 1), IsoVerdict::Isomorphic);
            }
        }
    }

    #[test]
    fn duals_on_a3() {
        let a = alg(fixtures::a3());
        let seq = seed_sequence(&a, &[0, 1, 2]).unwrap();
        let r = right_dual(&a, &seq, IsoOptions::default()).unwrap();
        let back = left_dual(&a, &r, IsoOptions::default()).unwrap();
        for (x, y) in back.items().iter().zip(seq.items()) {
            assert_eq!(iso_test(&a, x, y, 20, 0), IsoVerdict::Isomorphic);
        }
    }

    #[test]
    fn serre_on_a2_and_a3() {
        for q in [fixtures::a2(), fixtures::a3()] {
            let a = alg(q);
            let order: Vec<usize> = (0..a.num_vertices()).collect();
            let seq = seed_sequence(&a, &order).unwrap();
            let rep = serre_check(&a, &seq, IsoOptions::default()).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(integer_determinant(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(integer_determinant(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            integer_determinant(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]),
            1
        );
    }

    #[test]
    fn orbits_of_small_disks() {
        let a = alg(fixtures::a2());
        let seq = seed_sequence(&a, &[0, 1]).unwrap();
        let rep = orbit_explore(&a, &seq, 100, IsoOptions::default()).unwrap();
        assert!(rep.closed);
        assert_eq!(rep.size, 3);
    }

    #[test]
    fn presilting_shifts() {
        let a = alg(fixtures::a2());
        let seq = seed_sequence(&a, &[0, 1]).unwrap();
        assert_eq!(presilting_shift(&a, &seq).unwrap(), vec![0, 0]);
        let m = apply_word(&a, &seq, &BraidWord(vec![1])).unwrap();
        let s = presilting_shift(&a, &m).unwrap();
        let shifted: Vec<ProjComplex> = m
            .items()
            .iter()
            .zip(&s)
            .map(|(x, &l)| x.shift(a.field(), l))
            .collect();
        assert!(is_presilting(&a, &shifted));
    }

    #[test]
    fn normalize() {
        let a = alg(fixtures::a2());
        let x = ProjComplex::stalk(0, 3);
        assert_eq!(normalize_shift(&a, &x).unwrap(), ProjComplex::stalk(0, 0));
    }

    #[test]
    fn braid_report_on_a3() {
        let a = alg(fixtures::a3());
        let seq = seed_sequence(&a, &[0, 1, 2]).unwrap();
        let rep = verify_braid(&a, &seq, 5, IsoOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.undetermined(), 0);
        assert_eq!(rep.checks.len(), 4 + 1 + 5);
    }

    #[test]
    fn sequence_json_round_trip() {
        let a = alg(fixtures::a3());
        let seq = seed_sequence(&a, &[0, 1, 2]).unwrap();
        let m = apply_word(&a, &seq, &BraidWord(vec![1, -2])).unwrap();
        let v = sequence_to_json(&a, &m);
        assert_eq!(sequence_from_json(&a, &v).unwrap(), m);
        let wrapped = serde_json::json!({ "sequence": v });
        assert_eq!(sequence_from_json(&a, &wrapped).unwrap(), m);
    }
}
