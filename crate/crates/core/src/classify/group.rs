use std::fmt;

use super::hurwitz::{BranchSignature, SignatureFamily};
use crate::error::{Error, Result};
use crate::geometry::{sup_distance, vec, Metric, SampleGrid, Space};
use crate::group::{dedup_grid, enumerate_closure, CircleFamily, GroupSpec};
use crate::maps::MapExpr;
use crate::sphere::{classify_involution, fixed_point_pair, InvolutionType};
use crate::tolerances;

/// Conjugacy type of a compact group of sphere homeomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupClassLabel {
    Trivial,
    Cyclic(u32),
    /// Dihedral group of order `2n`.
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    /// Rotations about one axis.
    RotationCircle,
    /// Rotations about one axis plus a half-turn swapping its poles.
    InfiniteDihedral,
    /// Transitive: every rotation.
    FullRotation,
    /// A finite group containing orientation-reversing elements.
    FiniteReversing {
        rotations: Box<GroupClassLabel>,
        order: u32,
        /// Reversing involutions with a fixed curve.
        reflections: u32,
        /// Whether a fixed-point free reversing involution is present.
        antipodal: bool,
    },
    /// Rotations about an axis and the reflection in the equator.
    Z2TimesU1,
    /// Rotations about an axis and a reflection in a meridian plane.
    Z2SemidirectU1,
    /// Every rotation and reflection.
    FullOrthogonal,
}

impl fmt::Display for GroupClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClassLabel::Trivial => f.write_str("Trivial"),
            GroupClassLabel::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupClassLabel::Dihedral(n) => write!(f, "Dihedral({n})"),
            GroupClassLabel::Tetrahedral => f.write_str("Tetrahedral"),
            GroupClassLabel::Octahedral => f.write_str("Octahedral"),
            GroupClassLabel::Icosahedral => f.write_str("Icosahedral"),
            GroupClassLabel::RotationCircle => f.write_str("RotationCircle"),
            GroupClassLabel::InfiniteDihedral => f.write_str("InfiniteDihedral"),
            GroupClassLabel::FullRotation => f.write_str("FullRotation"),
            GroupClassLabel::FiniteReversing { rotations, order, reflections, antipodal } => write!(
                f,
                "Reversing({rotations}, order={order}, reflections={reflections}, antipodal={antipodal})"
            ),
            GroupClassLabel::Z2TimesU1 => f.write_str("Z2xU1"),
            GroupClassLabel::Z2SemidirectU1 => f.write_str("Z2sdU1"),
            GroupClassLabel::FullOrthogonal => f.write_str("FullOrthogonal"),
        }
    }
}

/// Input of the classifier: circle families plus extra generators, all on
/// the sphere. Without families the generators must generate a finite group.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompactSpec {
    pub families: Vec<CircleFamily>,
    pub generators: Vec<MapExpr>,
}

impl From<GroupSpec> for CompactSpec {
    fn from(g: GroupSpec) -> Self {
        match g {
            GroupSpec::Finite { generators, .. } => CompactSpec { families: vec![], generators },
            GroupSpec::Family(f) => CompactSpec { families: vec![f], generators: vec![] },
        }
    }
}

impl CompactSpec {
    /// Conjugate every family and generator by `h`.
    pub fn conjugated(&self, h: &MapExpr) -> Self {
        CompactSpec {
            families: self
                .families
                .iter()
                .map(|f| CircleFamily {
                    conjugator: MapExpr::compose(h.clone(), f.conjugator.clone()),
                    ..f.clone()
                })
                .collect(),
            generators: self.generators.iter().map(|g| MapExpr::conj(h.clone(), g.clone())).collect(),
        }
    }
}

/// Label plus the numerical evidence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: GroupClassLabel,
    pub signature: Option<BranchSignature>,
    /// `(name, value)` pairs in the order they were established.
    pub evidence: Vec<(String, String)>,
}

impl Classification {
    /// Largest numerical defect among the evidence entries named `*_defect`.
    pub fn max_defect(&self) -> f64 {
        self.evidence
            .iter()
            .filter(|(k, _)| k.ends_with("_defect"))
            .filter_map(|(_, v)| v.parse::<f64>().ok())
            .fold(0.0, f64::max)
    }
}

fn unclassifiable(reason: impl Into<String>) -> Error {
    Error::UnclassifiableSpec(reason.into())
}

fn sphere_sup(f: &MapExpr, g: &MapExpr) -> Result<f64> {
    sup_distance(f, g, &dedup_grid(Space::Sphere), &Metric::default_for(Space::Sphere))
}

fn close(a: [f64; 3], b: [f64; 3]) -> bool {
    vec::dist3(a, b) <= tolerances::GEOMETRIC
}

/// Classify a compact group given by families and generators.
///
/// Finite groups are matched by the branch signature of their rotation
/// subgroup, found from the fixed points of its elements and their
/// stabilizers. With circle families present, the fixed pairs of the families
/// decide between one axis and the transitive case, and each extra generator
/// is sorted by orientation and by whether it swaps the poles, with the
/// corresponding conjugation relation checked.
pub fn classify_compact_group(spec: &CompactSpec) -> Result<Classification> {
    for g in &spec.generators {
        match g.space()? {
            Space::Sphere => {}
            found => return Err(Error::SpaceMismatch { expected: Space::Sphere, found }),
        }
    }
    if spec.families.is_empty() {
        if spec.generators.is_empty() {
            return Err(unclassifiable("no families and no generators"));
        }
        classify_finite(&spec.generators)
    } else {
        classify_continuous(spec)
    }
}

fn classify_finite(generators: &[MapExpr]) -> Result<Classification> {
    let elements = enumerate_closure(generators, tolerances::ORDER_CAP)?;
    let (rot, rev): (Vec<MapExpr>, Vec<MapExpr>) = elements.into_iter().partition(|g| g.orientation() > 0);
    let mut evidence = vec![
        ("order".to_string(), (rot.len() + rev.len()).to_string()),
        ("rotation_order".to_string(), rot.len().to_string()),
    ];
    let signature = branch_signature(&rot)?;
    if !signature.satisfies_riemann_hurwitz() {
        return Err(unclassifiable(format!("signature {signature} violates Riemann-Hurwitz")));
    }
    evidence.push(("signature".into(), signature.to_string()));
    let n = signature.order;
    let base = match signature.family() {
        Some(SignatureFamily::Trivial) => GroupClassLabel::Trivial,
        Some(SignatureFamily::Cyclic) => GroupClassLabel::Cyclic(n),
        Some(SignatureFamily::Dihedral) => GroupClassLabel::Dihedral(n / 2),
        Some(SignatureFamily::Tetrahedral) => GroupClassLabel::Tetrahedral,
        Some(SignatureFamily::Octahedral) => GroupClassLabel::Octahedral,
        Some(SignatureFamily::Icosahedral) => GroupClassLabel::Icosahedral,
        None => return Err(unclassifiable(format!("signature {signature} matches no family"))),
    };
    if rev.is_empty() {
        return Ok(Classification { label: base, signature: Some(signature), evidence });
    }

    let grid = SampleGrid::sphere(2001);
    let mut reflections = Vec::new();
    let mut antipodal = false;
    for s in &rev {
        let id = MapExpr::identity(Space::Sphere);
        if sphere_sup(&s.power(2), &id)? > tolerances::GEOMETRIC {
            continue;
        }
        match classify_involution(s, &grid) {
            Ok(r) if r.kind == InvolutionType::Reflection => reflections.push(s.clone()),
            Ok(_) => antipodal = true,
            Err(e) => return Err(unclassifiable(format!("reversing involution: {e}"))),
        }
    }
    evidence.push(("reflections".into(), reflections.len().to_string()));
    evidence.push(("antipodal".into(), antipodal.to_string()));
    if let [s, t, ..] = reflections.as_slice() {
        // the fixed curves of two reflections meet where s t is fixed
        let st = MapExpr::compose(s.clone(), t.clone());
        let (a, b) = fixed_point_pair(&st).map_err(|e| unclassifiable(format!("s s' fixed points: {e}")))?;
        let fixed_by_both = |p: [f64; 3]| close(s.eval_sphere(p), p) && close(t.eval_sphere(p), p);
        let count = [a, b].into_iter().filter(|&p| fixed_by_both(p)).count();
        evidence.push(("reflection_fix_intersection".into(), count.to_string()));
        if count != 2 {
            return Err(unclassifiable(format!("two reflections share {count} fixed points, expected 2")));
        }
    }
    Ok(Classification {
        label: GroupClassLabel::FiniteReversing {
            rotations: Box::new(base),
            order: (rot.len() + rev.len()) as u32,
            reflections: reflections.len() as u32,
            antipodal,
        },
        signature: Some(signature),
        evidence,
    })
}

/// Branch signature of a finite rotation group given by all its elements.
fn branch_signature(rot: &[MapExpr]) -> Result<BranchSignature> {
    let n = rot.len() as u32;
    let mut points: Vec<[f64; 3]> = Vec::new();
    for g in rot.iter().filter(|g| !matches!(g, MapExpr::Identity(_))) {
        let (a, b) = fixed_point_pair(g)?;
        for p in [a, b] {
            if points.iter().all(|&q| !close(p, q)) {
                points.push(p);
            }
        }
    }
    let mut orbit_of: Vec<Option<usize>> = vec![None; points.len()];
    let mut nus = Vec::new();
    for i in 0..points.len() {
        if orbit_of[i].is_some() {
            continue;
        }
        let id = nus.len();
        let p = points[i];
        let stab = rot.iter().filter(|g| close(g.eval_sphere(p), p)).count() as u32;
        for g in rot {
            let q = g.eval_sphere(p);
            match points.iter().position(|&r| close(q, r)) {
                Some(j) => orbit_of[j] = Some(id),
                None => return Err(unclassifiable("orbit of a branch point leaves the fixed-point set")),
            }
        }
        nus.push(stab);
    }
    Ok(BranchSignature::new(n, nus))
}

fn classify_continuous(spec: &CompactSpec) -> Result<Classification> {
    let mut evidence = Vec::new();
    let mut pairs: Vec<([f64; 3], [f64; 3])> = Vec::new();
    for (i, fam) in spec.families.iter().enumerate() {
        GroupSpec::Family(fam.clone()).validate()?;
        let (p, q) = fixed_point_pair(&fam.member(0.381966))?;
        let mut defect: f64 = 0.0;
        for k in 0..16 {
            let g = fam.member((k as f64 + 0.5) / 16.0);
            defect = defect.max(vec::dist3(g.eval_sphere(p), p)).max(vec::dist3(g.eval_sphere(q), q));
        }
        evidence.push((format!("family{i}_stabilizer_defect"), format!("{defect:e}")));
        if defect > tolerances::GEOMETRIC {
            return Err(unclassifiable(format!("family {i} does not fix its fixed pair (defect {defect:e})")));
        }
        pairs.push((p, q));
    }
    let (p, q) = pairs[0];
    let same_pair = |&(a, b): &([f64; 3], [f64; 3])| {
        (close(a, p) && close(b, q)) || (close(a, q) && close(b, p))
    };
    let reversing = spec.generators.iter().any(|g| g.orientation() < 0);
    if !pairs.iter().all(same_pair) {
        evidence.push(("distinct_infinite_stabilizers".into(), "2".into()));
        let label = if reversing { GroupClassLabel::FullOrthogonal } else { GroupClassLabel::FullRotation };
        return Ok(Classification { label, signature: None, evidence });
    }
    evidence.push(("fixed_pair".into(), format!("{p:?} {q:?}")));

    let fam = &spec.families[0];
    let id = MapExpr::identity(Space::Sphere);
    let (mut swap, mut meridian, mut equator) = (false, false, false);
    for (i, g) in spec.generators.iter().enumerate() {
        let (gp, gq) = (g.eval_sphere(p), g.eval_sphere(q));
        let swaps = if close(gp, p) && close(gq, q) {
            false
        } else if close(gp, q) && close(gq, p) {
            true
        } else {
            return Err(unclassifiable(format!("generator {i} does not preserve the fixed pair")));
        };
        let reverses = g.orientation() < 0;
        if !reverses && !swaps {
            evidence.push((format!("generator{i}"), "rotation about the axis".into()));
            continue;
        }
        // σ Ψ_t σ⁻¹ = Ψ_{-t} unless the element reverses and swaps
        let sign = if reverses && swaps { 1.0 } else { -1.0 };
        let mut rel: f64 = 0.0;
        for k in 0..16 {
            let t = (k as f64 + 0.5) / 16.0;
            let lhs = MapExpr::conj(g.clone(), fam.member(t));
            rel = rel.max(sphere_sup(&lhs, &fam.member(sign * t))?);
        }
        let inv = sphere_sup(&g.power(2), &id)?;
        evidence.push((format!("generator{i}_relation_defect"), format!("{rel:e}")));
        evidence.push((format!("generator{i}_involution_defect"), format!("{inv:e}")));
        if rel > tolerances::RELATION {
            return Err(unclassifiable(format!("generator {i}: relation defect {rel:e}")));
        }
        match (reverses, swaps) {
            (false, _) => {
                if inv > tolerances::RELATION {
                    return Err(unclassifiable(format!("swapping generator {i} is not an involution ({inv:e})")));
                }
                swap = true;
            }
            (true, false) => meridian = true,
            (true, true) => equator = true,
        }
    }
    let label = match (swap, meridian, equator) {
        (false, false, false) => GroupClassLabel::RotationCircle,
        (true, false, false) => GroupClassLabel::InfiniteDihedral,
        (false, true, false) => GroupClassLabel::Z2SemidirectU1,
        (false, false, true) => GroupClassLabel::Z2TimesU1,
        _ => return Err(unclassifiable("extension by several kinds of elements is outside the label set")),
    };
    Ok(Classification { label, signature: None, evidence })
}
