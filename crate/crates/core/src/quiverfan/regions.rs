use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use super::{FanError, GitFan};
use crate::exactgeom::arrangement::enumerate_chambers;
use crate::exactgeom::num::{canonical_line, dot};
use crate::exactgeom::smith::integral_translate;
use crate::exactgeom::{Cone, Int, IntMatrix, Rat};

pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A chamber of the codimension-two sub-arrangement together with the fan chambers it
/// contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Signs against the sorted codimension-two normals.
    pub signs: Vec<i8>,
    pub chambers: Vec<usize>,
    pub cone: Cone,
    pub interior: Vec<Int>,
}

impl Region {
    /// Simplicial modulo its lineality space, which is the subspace fixed by the whole
    /// reflection group. Regions are strongly convex only when the codimension-two
    /// normals span the dual of Θ.
    pub fn is_simplicial(&self) -> bool {
        self.cone.is_simplicial_modulo_lineality()
    }
}

/// Regions in sign-string order. For fans satisfying the hypotheses with a nonempty
/// sub-arrangement, every region must be simplicial and hold the same number of
/// chambers; a violation is an error.
pub fn regions(fan: &GitFan) -> Result<Vec<Region>, FanError> {
    let dim = fan.space.dim();
    let normals = fan.normals();
    let positions: Vec<usize> = fan
        .codim2_normals
        .iter()
        .map(|n| normals.binary_search(n).map_err(|_| FanError::NotOnArrangement))
        .collect::<Result<_, _>>()?;
    let cells = enumerate_chambers(dim, &fan.codim2_normals);
    let mut index: HashMap<Vec<i8>, usize> = HashMap::new();
    let mut out: Vec<Region> = cells
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            index.insert(c.signs.clone(), k);
            Region {
                signs: c.signs,
                chambers: Vec::new(),
                cone: c.closure,
                interior: c.interior,
            }
        })
        .collect();
    for (ci, ch) in fan.chambers.iter().enumerate() {
        let key: Vec<i8> = positions.iter().map(|&p| ch.signs[p]).collect();
        let r = *index
            .get(&key)
            .ok_or_else(|| FanError::Invariant(format!("chamber {ci} lies in no region")))?;
        out[r].chambers.push(ci);
    }
    if out.iter().any(|r| r.chambers.is_empty()) {
        return Err(FanError::Invariant("a region contains no chamber".into()));
    }
    if fan.is_git_fan() {
        if let Some(k) = out.iter().position(|r| !r.is_simplicial()) {
            return Err(FanError::Invariant(format!("region {k} is not simplicial")));
        }
        let first = out[0].chambers.len();
        if out.iter().any(|r| r.chambers.len() != first) {
            return Err(FanError::Invariant("regions hold different numbers of chambers".into()));
        }
    }
    Ok(out)
}

/// The involution of the Θ-lattice fixing a boundary wall of a region and exchanging
/// the region with its neighbour across that wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub matrix: IntMatrix,
    /// Canonical normal of the fixed hyperplane.
    pub hyperplane: Vec<Int>,
    pub region: usize,
    pub neighbor: usize,
}

fn find_region(regions: &[Region], cone: &Cone) -> Option<usize> {
    regions.iter().position(|r| r.cone == *cone)
}

fn image(m: &IntMatrix, c: &Cone) -> Cone {
    let rays: Vec<Vec<Int>> = c.rays().iter().map(|r| m.mul_vec(r)).collect();
    let lin: Vec<Vec<Int>> = c.lineality().iter().map(|l| m.mul_vec(l)).collect();
    Cone::from_v(c.ambient_dim(), &rays, &lin).expect("square matrix preserves dimension")
}

/// `x ↦ x - ℓ(x) u` with `ℓ` the primitive inward normal of the wall and
/// `u = g/ℓ(g) + g'/ℓ(g')` for the rays `g`, `g'` of the two regions off the wall,
/// translated along the common lineality space to a lattice vector. The lineality is
/// fixed pointwise, and the generators of one region preserve the span of their `u`.
pub fn boundary_reflection(
    fan: &GitFan,
    regions: &[Region],
    region: usize,
    facet: &[Int],
) -> Result<Reflection, FanError> {
    let reg = regions.get(region).ok_or(FanError::OutOfRange(region))?;
    if !reg.is_simplicial() {
        return Err(FanError::NonSimplicialRegion(region));
    }
    let key = canonical_line(facet);
    let ell = reg
        .cone
        .facets()
        .iter()
        .find(|f| canonical_line(f) == key)
        .ok_or(FanError::NotAFacet)?
        .clone();
    let j = fan
        .codim2_normals
        .binary_search(&key)
        .map_err(|_| FanError::NotOnArrangement)?;
    let mut signs = reg.signs.clone();
    signs[j] = -signs[j];
    let neighbor = regions
        .iter()
        .position(|r| r.signs == signs)
        .ok_or_else(|| FanError::Invariant("wall has no neighbouring region".into()))?;
    let nb = &regions[neighbor];
    if !nb.is_simplicial() {
        return Err(FanError::NonSimplicialRegion(neighbor));
    }
    let off = |c: &Cone| -> Result<Vec<Int>, FanError> {
        let v: Vec<&Vec<Int>> = c.rays().iter().filter(|r| !dot(&ell, r).is_zero()).collect();
        match v.as_slice() {
            [g] => Ok((*g).clone()),
            _ => Err(FanError::Invariant("wall is not a facet of a simplicial region".into())),
        }
    };
    let g = off(&reg.cone)?;
    let gp = off(&nb.cone)?;
    let lg = dot(&ell, &g);
    let lgp = dot(&ell, &gp);
    if !lg.is_positive() || !lgp.is_negative() {
        return Err(FanError::Invariant("regions do not lie on opposite sides of the wall".into()));
    }
    let n = g.len();
    let u: Vec<Rat> = (0..n)
        .map(|i| Rat::new(g[i].clone(), lg.clone()) + Rat::new(gp[i].clone(), lgp.clone()))
        .collect();
    let u = integral_translate(&u, reg.cone.lineality()).ok_or(FanError::NoIntegralReflection)?;
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for k in 0..n {
            m[(i, k)] -= &u[i] * &ell[k];
        }
    }
    if !m.mul(&m).is_identity() {
        return Err(FanError::Invariant("reflection is not an involution".into()));
    }
    if reg
        .cone
        .rays()
        .iter()
        .filter(|r| dot(&ell, r).is_zero())
        .any(|r| m.mul_vec(r) != *r)
    {
        return Err(FanError::Invariant("reflection moves the wall".into()));
    }
    if image(&m, &reg.cone) != nb.cone {
        return Err(FanError::Invariant("reflection does not map the region onto its neighbour".into()));
    }
    Ok(Reflection {
        matrix: m,
        hyperplane: key,
        region,
        neighbor,
    })
}

/// The group generated by the reflections in the walls of the base region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionGroup {
    pub base_region: usize,
    pub generators: Vec<Reflection>,
    /// Elements in breadth-first order from the identity.
    pub elements: Vec<IntMatrix>,
    /// Region onto which each element maps the base region.
    pub element_region: Vec<usize>,
    /// `action[s][r]`: image of region `r` under generator `s`.
    pub action: Vec<Vec<usize>>,
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.matrix.mul(&b.matrix) == b.matrix.mul(&a.matrix))
        })
    }
}

/// Generates the group from the base region (the one holding chamber 0) and checks
/// that it acts simply transitively on regions.
pub fn namikawa_weyl(fan: &GitFan, regions: &[Region], cap: usize) -> Result<ReflectionGroup, FanError> {
    let base = regions
        .iter()
        .position(|r| r.chambers.contains(&0))
        .ok_or_else(|| FanError::Invariant("no region contains the first chamber".into()))?;
    let generators: Vec<Reflection> = regions[base]
        .cone
        .facets()
        .iter()
        .map(|f| boundary_reflection(fan, regions, base, f))
        .collect::<Result<_, _>>()?;
    let dim = fan.space.dim();
    let mut elements = vec![IntMatrix::identity(dim)];
    let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
    seen.insert(elements[0].clone(), ());
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head].clone();
        head += 1;
        for s in &generators {
            let p = s.matrix.mul(&e);
            if seen.insert(p.clone(), ()).is_none() {
                if elements.len() >= cap {
                    return Err(FanError::CapExceeded(cap));
                }
                elements.push(p);
            }
        }
    }
    let element_region: Vec<usize> = elements
        .iter()
        .map(|m| {
            find_region(regions, &image(m, &regions[base].cone))
                .ok_or_else(|| FanError::Invariant("group element does not map regions to regions".into()))
        })
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<usize> = element_region.iter().copied().collect();
    if elements.len() != regions.len() || distinct.len() != elements.len() {
        return Err(FanError::Invariant(format!(
            "group of order {} does not act simply transitively on {} regions",
            elements.len(),
            regions.len()
        )));
    }
    let action: Vec<Vec<usize>> = generators
        .iter()
        .map(|s| {
            regions
                .iter()
                .map(|r| {
                    find_region(regions, &image(&s.matrix, &r.cone))
                        .ok_or_else(|| FanError::Invariant("generator does not permute regions".into()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(ReflectionGroup {
        base_region: base,
        generators,
        elements,
        element_region,
        action,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrepantCount {
    pub crepant_resolutions: usize,
    pub chambers: usize,
    pub regions: usize,
    pub weyl_order: usize,
    pub chambers_per_region: Vec<usize>,
}

/// Chambers in one region; certified by equal counts across regions and
/// `count × group order = total chambers`.
pub fn count_crepant_resolutions(fan: &GitFan, cap: usize) -> Result<CrepantCount, FanError> {
    if !fan.is_git_fan() {
        return Err(FanError::Hypothesis(
            "α is not in Σ_0, so chambers need not correspond to resolutions".into(),
        ));
    }
    let regs = regions(fan)?;
    let group = namikawa_weyl(fan, &regs, cap)?;
    let per: Vec<usize> = regs.iter().map(|r| r.chambers.len()).collect();
    let count = per[0];
    if per.iter().any(|&c| c != count) || count * group.order() != fan.chambers.len() {
        return Err(FanError::Invariant("resolution count certificate failed".into()));
    }
    Ok(CrepantCount {
        crepant_resolutions: count,
        chambers: fan.chambers.len(),
        regions: regs.len(),
        weyl_order: group.order(),
        chambers_per_region: per,
    })
}
