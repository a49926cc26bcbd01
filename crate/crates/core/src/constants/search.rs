use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Tier;
use crate::error::{Error, Result};
use crate::families::{member, FamilyExpr, FiniteSubset};
use crate::rational::Rational;
use crate::spaces::{norm, SpaceSpec, SparseVector};

/// Largest number of block families one search evaluates.
const MAX_EVALUATIONS: u64 = 5_000_000;
const DESCENT_ROUNDS: usize = 50;

/// The vectors blocks are built from. Admissibility is measured by atom
/// position (1-based), so unit vectors give admissibility w.r.t. the basis
/// and a block basis gives it w.r.t. that basis.
#[derive(Clone, Debug)]
pub struct Atoms {
    vectors: Vec<SparseVector>,
}

impl Atoms {
    pub fn units(universe: u64) -> Self {
        Atoms { vectors: (1..=universe).map(SparseVector::unit).collect() }
    }

    pub fn blocks(vectors: Vec<SparseVector>) -> Result<Self> {
        if vectors.iter().any(|v| v.is_empty()) {
            return Err(Error::Domain("block basis vectors must be nonzero".into()));
        }
        for w in vectors.windows(2) {
            if !w[0].support().precedes(&w[1].support()) {
                return Err(Error::NotSuccessive(format!("{} and {}", w[0], w[1])));
            }
        }
        Ok(Atoms { vectors })
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub ratio: Rational,
    pub witness: Vec<SparseVector>,
    /// Atom positions of each witness block.
    pub positions: Vec<FiniteSubset>,
    pub exhaustive: bool,
    pub evaluated: u64,
}

/// A block family: for each block, `(atom index, coefficient)` pairs.
type Family = Vec<Vec<(usize, Rational)>>;

/// Least ratio over admissible families drawn from `tier`. Ties go to fewer
/// blocks, then to lexicographically smaller atom positions.
pub fn min_ratio(
    space: &SpaceSpec,
    fam: &FamilyExpr,
    atoms: &Atoms,
    tier: Tier,
    seed: u64,
) -> Result<SearchOutcome> {
    let coefs: Vec<Rational> = match tier {
        Tier::Characteristic | Tier::Local => vec![Rational::one()],
        Tier::Grid(k) => (1..=k).map(|j| Rational::new(j.into(), k.into())).collect(),
    };
    let mut s = Search {
        space,
        fam,
        atoms: atoms.vectors(),
        coefs,
        current: Vec::new(),
        best: None,
        memo: HashMap::new(),
        evaluated: 0,
    };
    s.go(0)?;
    let (mut ratio, mut family) =
        s.best.take().ok_or_else(|| Error::Domain("no admissible block family in the universe".into()))?;
    if tier == Tier::Local {
        (ratio, family) = s.descend(ratio, family, seed);
    }
    Ok(SearchOutcome {
        witness: family.iter().map(|b| s.block(b)).collect(),
        positions: family
            .iter()
            .map(|b| FiniteSubset::from_sorted(b.iter().map(|p| p.0 as u64 + 1).collect()))
            .collect(),
        ratio,
        exhaustive: tier != Tier::Local,
        evaluated: s.evaluated,
    })
}

struct Search<'a> {
    space: &'a SpaceSpec,
    fam: &'a FamilyExpr,
    atoms: &'a [SparseVector],
    coefs: Vec<Rational>,
    current: Family,
    best: Option<(Rational, Family)>,
    memo: HashMap<SparseVector, Rational>,
    evaluated: u64,
}

impl Search<'_> {
    fn go(&mut self, i: usize) -> Result<()> {
        if i == self.atoms.len() {
            if !self.current.is_empty() {
                self.evaluate()?;
            }
            return Ok(());
        }
        self.go(i + 1)?;
        for c in self.coefs.clone() {
            if let Some(last) = self.current.last_mut() {
                last.push((i, c.clone()));
                self.go(i + 1)?;
                self.current.last_mut().expect("still open").pop();
            }
        }
        let minima: Vec<u64> =
            self.current.iter().map(|b| b[0].0 as u64 + 1).chain(std::iter::once(i as u64 + 1)).collect();
        if member(&FiniteSubset::from_sorted(minima), self.fam) {
            for c in self.coefs.clone() {
                self.current.push(vec![(i, c)]);
                self.go(i + 1)?;
                self.current.pop();
            }
        }
        Ok(())
    }

    fn block(&self, b: &[(usize, Rational)]) -> SparseVector {
        b.iter().fold(SparseVector::default(), |acc, (i, c)| acc.add(&self.atoms[*i].scale(c)))
    }

    fn norm_of(&mut self, v: SparseVector) -> Rational {
        if let Some(r) = self.memo.get(&v) {
            return r.clone();
        }
        let r = norm(&v, self.space);
        self.memo.insert(v, r.clone());
        r
    }

    fn ratio_of(&mut self, family: &Family) -> Rational {
        let mut sum = SparseVector::default();
        let mut total = Rational::zero();
        for b in family {
            let y = self.block(b);
            sum = sum.add(&y);
            total += self.norm_of(y);
        }
        norm(&sum, self.space) / total
    }

    fn evaluate(&mut self) -> Result<()> {
        self.evaluated += 1;
        if self.evaluated > MAX_EVALUATIONS {
            return Err(Error::Budget(format!("more than {MAX_EVALUATIONS} block families")));
        }
        let family = self.current.clone();
        let r = self.ratio_of(&family);
        let replace = match &self.best {
            None => true,
            Some((br, bf)) => match r.cmp(br) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => tie_key(&family) < tie_key(bf),
            },
        };
        if replace {
            self.best = Some((r, family));
        }
        Ok(())
    }

    /// Seeded coordinate descent on the coefficients of a fixed block
    /// structure; a move is kept only if it lowers the ratio.
    fn descend(&mut self, mut ratio: Rational, mut family: Family, seed: u64) -> (Rational, Family) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = [(1, 2), (2, 3), (3, 2), (2, 1)].map(|(p, q)| Rational::new(p.into(), q.into()));
        let mut slots: Vec<(usize, usize)> =
            family.iter().enumerate().flat_map(|(b, blk)| (0..blk.len()).map(move |j| (b, j))).collect();
        for _ in 0..DESCENT_ROUNDS {
            slots.shuffle(&mut rng);
            let mut improved = false;
            for &(b, j) in &slots {
                for f in &factors {
                    let mut trial = family.clone();
                    trial[b][j].1 *= f;
                    let r = self.ratio_of(&trial);
                    if r < ratio {
                        ratio = r;
                        family = trial;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        (ratio, family)
    }
}

fn tie_key(f: &Family) -> (usize, Vec<Vec<usize>>) {
    (f.len(), f.iter().map(|b| b.iter().map(|p| p.0).collect()).collect())
}
