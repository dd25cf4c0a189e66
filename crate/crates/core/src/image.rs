//! Breadth-first enumeration of the finite images `r_m(ρ_v(vB_n))` and
//! `r_m(ρ₋(B_n))` inside `GL_n(Z/mZ)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{MatrixJson, ModMatrix};
use crate::perm::Permutation;
use crate::rep::{perm_rep, SIGMA_BLOCK, SWAP_BLOCK};
use crate::word::DEFAULT_ENUMERATION_BUDGET;

pub const DEFAULT_ELEMENT_BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

/// Which generator images span the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ImageGens {
    /// `ρ_v(σ_i)` and `ρ_v(τ_i)`.
    VirtualBurau,
    /// `ρ₋(σ_i)` only.
    BurauMinus,
}

impl ImageGens {
    pub fn cli_name(self) -> &'static str {
        match self {
            ImageGens::VirtualBurau => "vburau",
            ImageGens::BurauMinus => "minus",
        }
    }
}

impl fmt::Display for ImageGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for ImageGens {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vburau" => Ok(ImageGens::VirtualBurau),
            "minus" => Ok(ImageGens::BurauMinus),
            other => Err(Error::InvalidArgument(format!("unknown generator set {other:?} (vburau, minus)"))),
        }
    }
}

/// Generator images mod `m`: `σ_i` (and `τ_i`) for each `i`, in that order.
pub fn image_generators(n: usize, m: u64, gens: ImageGens) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for i in 1..n {
        out.push(ModMatrix::with_block(n, m, i, SIGMA_BLOCK));
        if gens == ImageGens::VirtualBurau {
            out.push(ModMatrix::with_block(n, m, i, SWAP_BLOCK));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ImageGroup {
    n: usize,
    m: u64,
    gens: ImageGens,
    generators: Vec<ModMatrix>,
    /// Generators followed by the inverses that are new.
    steps: Vec<ModMatrix>,
    elements: Vec<ModMatrix>,
    index: HashMap<Vec<u8>, usize>,
    cayley: Option<Vec<Vec<usize>>>,
}

impl ImageGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn gens(&self) -> ImageGens {
        self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    /// Generators and their inverses, as used by the search.
    pub fn steps(&self) -> &[ModMatrix] {
        &self.steps
    }

    /// Elements in discovery order; the identity comes first.
    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn contains(&self, x: &ModMatrix) -> bool {
        self.index.contains_key(&x.canonical_bytes())
    }

    pub fn position(&self, x: &ModMatrix) -> Option<usize> {
        self.index.get(&x.canonical_bytes()).copied()
    }

    /// `edges[x][k]` is the index of `steps[k] · elements[x]`, when requested.
    pub fn cayley_edges(&self) -> Option<&[Vec<usize>]> {
        self.cayley.as_deref()
    }

    /// Lowercase hex of every canonical key, sorted.
    pub fn sorted_keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.index.keys().map(hex::encode).collect();
        keys.sort_unstable();
        keys
    }

    /// Closure under left and right multiplication by every step.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|x| {
            self.steps
                .iter()
                .all(|g| self.contains(&g.mul(x).expect("same shape")) && self.contains(&x.mul(g).expect("same shape")))
        })
    }

    pub fn export(&self, include_elements: bool) -> ImageExport {
        let mut sorted: Vec<(&Vec<u8>, &usize)> = self.index.iter().collect();
        sorted.sort_unstable();
        ImageExport {
            n: self.n,
            m: self.m,
            gens: self.gens.cli_name(),
            order: self.order(),
            generators: self.generators.iter().map(ModMatrix::to_json).collect(),
            keys: sorted.iter().map(|(k, _)| hex::encode(k)).collect(),
            elements: include_elements.then(|| sorted.iter().map(|(_, &i)| self.elements[i].to_json()).collect()),
        }
    }
}

/// JSON form of an image: elements ordered by key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageExport {
    pub n: usize,
    pub m: u64,
    pub gens: &'static str,
    pub order: usize,
    pub generators: Vec<MatrixJson>,
    pub keys: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<MatrixJson>>,
}

/// Breadth-first closure from the identity under left multiplication by the
/// generator images and their inverses (adjugate times `det⁻¹ mod m`).
/// Fails with [`Error::BudgetExceeded`] once more than `budget` elements are
/// found.
pub fn enumerate_image(n: usize, m: u64, gens: ImageGens, budget: u64, cayley: bool) -> Result<ImageGroup> {
    if n < 2 {
        return Err(Error::TooFewStrands { min: 2, found: n });
    }
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let generators = image_generators(n, m, gens);
    let mut steps = generators.clone();
    for g in &generators {
        let inv = g.inverse()?;
        if !steps.contains(&inv) {
            steps.push(inv);
        }
    }

    let identity = ModMatrix::identity(n, m);
    let mut index = HashMap::new();
    index.insert(identity.canonical_bytes(), 0);
    let mut elements = vec![identity];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(if cayley { steps.len() } else { 0 });
        for g in &steps {
            let y = g.mul(&elements[head])?;
            let key = y.canonical_bytes();
            let next = elements.len();
            let at = *index.entry(key).or_insert(next);
            if at == next {
                if next as u64 >= budget {
                    return Err(Error::BudgetExceeded { explored: next as u64, budget });
                }
                elements.push(y);
            }
            if cayley {
                row.push(at);
            }
        }
        if cayley {
            edges.push(row);
        }
        head += 1;
    }
    Ok(ImageGroup { n, m, gens, generators, steps, elements, index, cayley: cayley.then_some(edges) })
}

/// `s̄ = [A]_m`, `t̄ = [B]_m` satisfy `t̄² = (s̄t̄)² = s̄^m = e` and the image
/// has order `2m`. False for `m = 1` (order 1) and `m = 2` (order 2).
pub fn check_dihedral(image: &ImageGroup) -> Result<bool> {
    if image.n != 2 {
        return Err(Error::WrongStrandCount { expected: 2, found: image.n });
    }
    if image.gens != ImageGens::VirtualBurau {
        return Err(Error::InvalidArgument("dihedral check needs the virtual generators".into()));
    }
    Ok(dihedral_relations_hold(image.m) && image.order() as u64 == 2 * image.m)
}

/// The three defining relations of `D_{2m}` at `s̄ = [A]_m`, `t̄ = [B]_m`.
pub fn dihedral_relations_hold(m: u64) -> bool {
    let s = ModMatrix::with_block(2, m, 1, SIGMA_BLOCK);
    let t = ModMatrix::with_block(2, m, 1, SWAP_BLOCK);
    let st = s.mul(&t).expect("2x2");
    t.pow(2).is_identity() && st.pow(2).is_identity() && s.pow(m).is_identity()
}

/// Order of `x` in the finite group it lives in.
pub fn element_order(x: &ModMatrix) -> u64 {
    let mut k = 1;
    let mut y = x.clone();
    while !y.is_identity() {
        y = y.mul(x).expect("same shape");
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub n: usize,
    pub m: u64,
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub order_histogram: BTreeMap<u64, usize>,
    /// Every element of the classical image is in this image. `None` unless
    /// the image was built from the virtual generators.
    pub classical_embeds: Option<bool>,
    pub classical_order: Option<usize>,
    /// All permutation matrices lie in the image.
    pub contains_permutations: bool,
}

pub fn quotient_report(image: &ImageGroup, budget: u64) -> Result<QuotientReport> {
    let abelian = image.generators.iter().enumerate().all(|(k, a)| {
        image.generators[k + 1..].iter().all(|b| a.mul(b).expect("same shape") == b.mul(a).expect("same shape"))
    });
    let mut order_histogram = BTreeMap::new();
    let mut exponent = 1u64;
    for x in &image.elements {
        let k = element_order(x);
        *order_histogram.entry(k).or_insert(0) += 1;
        exponent = exponent.lcm(&k);
    }
    let (classical_embeds, classical_order) = if image.gens == ImageGens::VirtualBurau {
        let classical = enumerate_image(image.n, image.m, ImageGens::BurauMinus, budget, false)?;
        (Some(classical.elements.iter().all(|x| image.contains(x))), Some(classical.order()))
    } else {
        (None, None)
    };
    let contains_permutations = Permutation::all(image.n)
        .iter()
        .all(|p| perm_rep(p).reduce_mod(image.m as i64).map(|x| image.contains(&x)).unwrap_or(false));
    Ok(QuotientReport {
        n: image.n,
        m: image.m,
        order: image.order(),
        abelian,
        exponent,
        order_histogram,
        classical_embeds,
        classical_order,
        contains_permutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image(n: usize, m: u64, gens: ImageGens) -> ImageGroup {
        enumerate_image(n, m, gens, 1_000_000, false).unwrap()
    }

    #[test]
    fn rank_two_orders() {
        assert_eq!(image(2, 1, ImageGens::VirtualBurau).order(), 1);
        assert_eq!(image(2, 2, ImageGens::VirtualBurau).order(), 2);
        for m in 3..=30 {
            let g = image(2, m, ImageGens::VirtualBurau);
            assert_eq!(g.order() as u64, 2 * m);
            assert!(check_dihedral(&g).unwrap());
        }
    }

    #[test]
    fn dihedral_check_edges() {
        let g2 = image(2, 2, ImageGens::VirtualBurau);
        assert!(dihedral_relations_hold(2));
        assert!(!check_dihedral(&g2).unwrap());
        assert_eq!(g2.generators()[0], g2.generators()[1]);
        assert!(!check_dihedral(&image(2, 1, ImageGens::VirtualBurau)).unwrap());
        assert!(check_dihedral(&image(3, 3, ImageGens::VirtualBurau)).is_err());
        assert!(check_dihedral(&image(2, 3, ImageGens::BurauMinus)).is_err());
    }

    #[test]
    fn classical_rank_two_is_cyclic() {
        for m in 1..=20 {
            let g = image(2, m, ImageGens::BurauMinus);
            assert_eq!(g.order() as u64, m);
            let a = &g.generators()[0];
            for k in 0..m as i64 {
                let expect = ModMatrix::from_rows(&[vec![1 + k, -k], vec![k, 1 - k]], m).unwrap();
                assert_eq!(a.pow(k as u64), expect);
                assert!(g.contains(&expect));
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let r = quotient_report(&image(2, 3, ImageGens::VirtualBurau), 1000).unwrap();
        assert_eq!(r.order, 6);
        assert!(!r.abelian);
        assert_eq!(r.exponent, 6);
        assert_eq!(r.order_histogram, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert_eq!(r.classical_embeds, Some(true));
        assert_eq!(r.classical_order, Some(3));

        let r = quotient_report(&image(2, 1, ImageGens::VirtualBurau), 1000).unwrap();
        assert_eq!(r.order, 1);
        assert!(r.abelian);

        let r = quotient_report(&image(3, 2, ImageGens::VirtualBurau), 1000).unwrap();
        assert_eq!(r.order, 6);
        assert!(r.contains_permutations);
    }

    #[test]
    fn level_two_image_is_symmetric_group() {
        for (n, factorial) in [(2, 2), (3, 6), (4, 24), (5, 120)] {
            let g = image(n, 2, ImageGens::VirtualBurau);
            assert_eq!(g.order(), factorial);
            for p in Permutation::all(n) {
                assert!(g.contains(&perm_rep(&p).reduce_mod(2).unwrap()));
            }
        }
    }

    #[test]
    fn closure_and_uniqueness() {
        for (n, m) in [(2, 5), (3, 2), (3, 3), (3, 4)] {
            let g = image(n, m, ImageGens::VirtualBurau);
            assert!(g.is_closed());
            assert!(g.elements()[0].is_identity());
            // Linear scan oracle for duplicate elements.
            let els = g.elements();
            for i in 0..els.len() {
                for j in i + 1..els.len() {
                    assert_ne!(els[i], els[j]);
                }
            }
            assert_eq!(g.sorted_keys().len(), g.order());
        }
    }

    #[test]
    fn lagrange_against_permutation_subgroup() {
        for (n, m) in [(2, 2), (2, 3), (2, 8), (3, 2), (3, 3), (3, 4), (3, 5), (4, 2)] {
            let g = image(n, m, ImageGens::VirtualBurau);
            let factorial: usize = (1..=n).product();
            assert_eq!(g.order() % factorial, 0, "n={n} m={m}");
        }
    }

    #[test]
    fn cayley_edges_are_consistent() {
        let g = enumerate_image(2, 4, ImageGens::VirtualBurau, 100, true).unwrap();
        let edges = g.cayley_edges().unwrap();
        assert_eq!(edges.len(), g.order());
        for (x, row) in edges.iter().enumerate() {
            for (k, &y) in row.iter().enumerate() {
                assert_eq!(g.steps()[k].mul(&g.elements()[x]).unwrap(), g.elements()[y]);
            }
        }
        assert!(image(2, 4, ImageGens::VirtualBurau).cayley_edges().is_none());
    }

    #[test]
    fn budget_is_explicit() {
        let err = enumerate_image(2, 7, ImageGens::VirtualBurau, 5, false).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { explored: 5, budget: 5 }));
        assert_eq!(enumerate_image(2, 7, ImageGens::VirtualBurau, 14, false).unwrap().order(), 14);
    }

    #[test]
    fn export_is_sorted() {
        let g = image(2, 3, ImageGens::VirtualBurau);
        let e = g.export(true);
        assert_eq!(e.order, 6);
        assert!(e.keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(e.elements.as_ref().unwrap().len(), 6);
        let text = serde_json::to_string(&g.export(false)).unwrap();
        assert!(text.starts_with("{\"n\":2,\"m\":3,\"gens\":\"vburau\",\"order\":6,"));
        assert!(!text.contains("elements"));
    }
}
