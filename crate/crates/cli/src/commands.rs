//! One function per subcommand, each producing the `result` part of a document.

use gitfan::exactgeom::{Chamber, Int, Rat};
use gitfan::hypertoric::{datum, hypertoric_chambers, moment_map_report, validate, HypertoricDatum};
use gitfan::quiverfan::{
    classify_wall, cone_queries, count_crepant_resolutions, git_fan, namikawa_weyl, regions, FanOptions, GitFan,
    Region,
};
use gitfan::roots::{DimensionVector, FramedGraph};
use gitfan::sigma::{in_sigma_theta, DecompositionQuiver, SigmaVerdict};
use gitfan::toric::{
    semistable_faces, toric_git_fan, unstable_stratum_dim, wall_side_analysis, ToricFan, ToricGitProblem,
};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::plot::{render, Line, Scene};
use crate::render::{cone, dv, imat, ivec, rvec, small};
use crate::spec::{ints, matrix, rats, smalls, HypertoricPayload, Kind, ProblemSpec, QuiverPayload, ToricPayload};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub group_cap: usize,
    pub decomposition_cap: usize,
}

pub struct Quiver {
    pub graph: FramedGraph,
    pub v: Vec<i64>,
    pub alpha: DimensionVector,
}

pub fn quiver_payload(spec: &ProblemSpec) -> Result<&QuiverPayload, CliError> {
    spec.quiver
        .as_ref()
        .filter(|_| spec.kind == Kind::Quiver)
        .ok_or_else(|| CliError::Malformed("this command needs a quiver specification".into()))
}

pub fn toric_payload(spec: &ProblemSpec) -> Result<&ToricPayload, CliError> {
    spec.toric
        .as_ref()
        .filter(|_| spec.kind == Kind::Toric)
        .ok_or_else(|| CliError::Malformed("this command needs a toric specification".into()))
}

pub fn hypertoric_payload(spec: &ProblemSpec) -> Result<&HypertoricPayload, CliError> {
    spec.hypertoric
        .as_ref()
        .filter(|_| spec.kind == Kind::Hypertoric)
        .ok_or_else(|| CliError::Malformed("this command needs a hypertoric specification".into()))
}

pub fn quiver(spec: &ProblemSpec) -> Result<Quiver, CliError> {
    let q = quiver_payload(spec)?;
    let graph = FramedGraph::new(q.vertices, q.edges.clone(), smalls(&q.framing)?)?;
    let v = smalls(&q.v)?;
    if v.len() != q.vertices {
        return Err(CliError::Malformed(format!("v has {} entries for {} vertices", v.len(), q.vertices)));
    }
    let alpha = DimensionVector::framed(&v);
    Ok(Quiver { graph, v, alpha })
}

pub fn quiver_fan(spec: &ProblemSpec, limits: Limits) -> Result<GitFan, CliError> {
    let q = quiver(spec)?;
    let codim2_roots = match &spec.options.codim2_roots {
        None => None,
        Some(list) => Some(
            list.iter()
                .map(|b| smalls(b).map(DimensionVector))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let options = FanOptions {
        decomposition_cap: limits.decomposition_cap,
        codim2_roots,
    };
    Ok(git_fan(&q.graph, &q.v, &options)?)
}

pub fn toric_problem(spec: &ProblemSpec) -> Result<ToricGitProblem, CliError> {
    let t = toric_payload(spec)?;
    let constraints = t.constraints.iter().map(|c| ints(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(ToricGitProblem::new(&matrix(&t.generators)?, &matrix(&t.weights)?, &constraints)?)
}

fn theta(spec: &ProblemSpec) -> Option<Vec<Rat>> {
    spec.options.theta.as_deref().map(rats)
}

fn require_theta(spec: &ProblemSpec) -> Result<Vec<Rat>, CliError> {
    theta(spec).ok_or_else(|| CliError::Malformed("this command needs options.theta (or --theta)".into()))
}

fn verdict(v: &SigmaVerdict) -> Value {
    match v {
        SigmaVerdict::Member => json!({ "member": true }),
        SigmaVerdict::NotThetaRoot => json!({ "member": false, "reason": "not-a-theta-root" }),
        SigmaVerdict::Violated { witness, p_alpha, p_sum } => json!({
            "member": false,
            "reason": "decomposition",
            "witness": witness.parts.iter().map(dv).collect::<Vec<_>>(),
            "p_alpha": small(*p_alpha),
            "p_sum": small(*p_sum),
            "equality": p_alpha == p_sum,
        }),
    }
}

fn chamber_json(i: usize, c: &Chamber) -> Value {
    json!({
        "index": i,
        "signs": c.sign_string(),
        "interior": ivec(&c.interior),
        "closure": cone(&c.closure),
    })
}

fn hypotheses(fan: &GitFan) -> Value {
    json!({
        "effective": fan.hypotheses.effective,
        "indivisible": fan.hypotheses.indivisible,
        "sigma0": verdict(&fan.hypotheses.sigma0),
    })
}

pub fn roots(spec: &ProblemSpec) -> Result<Value, CliError> {
    let q = quiver(spec)?;
    let list = q.graph.roots_below(&q.alpha)?;
    let roots: Vec<Value> = list
        .iter()
        .map(|(g, class)| {
            Ok(json!({
                "vector": dv(g),
                "class": class.as_str(),
                "p": small(q.graph.p_value(g)?),
            }))
        })
        .collect::<Result<_, CliError>>()?;
    let cartan: Vec<Value> = q
        .graph
        .cartan_matrix()
        .iter()
        .map(|r| Value::Array(r.iter().map(|&x| small(x)).collect()))
        .collect();
    Ok(json!({
        "alpha": dv(&q.alpha),
        "alpha_class": q.graph.classify_root(&q.alpha)?.as_str(),
        "cartan_matrix": cartan,
        "roots": roots,
    }))
}

pub fn sigma(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let q = quiver(spec)?;
    let th = theta(spec).unwrap_or_else(|| vec![Rat::zero(); q.alpha.len()]);
    let v = in_sigma_theta(&q.graph, &q.alpha, &th, limits.decomposition_cap)?;
    let mut doc = json!({
        "alpha": dv(&q.alpha),
        "theta": rvec(&th),
        "p_alpha": small(q.graph.p_value(&q.alpha)?),
        "verdict": verdict(&v),
    });
    match v {
        SigmaVerdict::Member => Ok(doc),
        SigmaVerdict::NotThetaRoot => Err(CliError::Hypothesis {
            message: "α is not a θ-root".into(),
            diagnostic: Some(doc),
        }),
        SigmaVerdict::Violated { witness, .. } => {
            let dq = DecompositionQuiver::new(&q.graph, &witness);
            doc["verdict"]["decomposition_quiver_edges"] =
                Value::Array(dq.edges().iter().map(|&(a, b)| json!([a, b])).collect());
            Err(CliError::Hypothesis {
                message: format!(
                    "α is not in Σ_θ: witness {}",
                    witness.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + ")
                ),
                diagnostic: Some(doc),
            })
        }
    }
}

pub fn fan(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    let hyperplanes: Vec<Value> = f
        .arrangement
        .iter()
        .map(|(n, labels)| {
            json!({
                "normal": ivec(n),
                "labels": labels.iter().map(dv).collect::<Vec<_>>(),
                "codim2": f.is_codim2_hyperplane(n),
            })
        })
        .collect();
    Ok(json!({
        "alpha": dv(&f.alpha),
        "interpretation": f.interpretation(),
        "is_git_fan": f.is_git_fan(),
        "hypotheses": hypotheses(&f),
        "space": {
            "dim": f.space.dim(),
            "basis": imat(f.space.subspace().basis()),
        },
        "hyperplanes": hyperplanes,
        "chambers": f.chambers.iter().enumerate().map(|(i, c)| chamber_json(i, c)).collect::<Vec<_>>(),
        "codim2_roots": f.codim2_roots.iter().map(dv).collect::<Vec<_>>(),
        "codim2_normals": imat(&f.codim2_normals),
    }))
}

fn region_json(i: usize, r: &Region) -> Value {
    json!({
        "index": i,
        "signs": gitfan::exactgeom::arrangement::sign_string(&r.signs),
        "chambers": r.chambers,
        "interior": ivec(&r.interior),
        "closure": cone(&r.cone),
        "simplicial": r.is_simplicial(),
    })
}

pub fn regions_cmd(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    let rs = regions(&f)?;
    Ok(json!({
        "interpretation": f.interpretation(),
        "codim2_normals": imat(&f.codim2_normals),
        "regions": rs.iter().enumerate().map(|(i, r)| region_json(i, r)).collect::<Vec<_>>(),
    }))
}

pub fn weyl(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    if !f.is_git_fan() {
        return Err(CliError::hypothesis("the arrangement is not known to be the GIT fan"));
    }
    let rs = regions(&f)?;
    let g = namikawa_weyl(&f, &rs, limits.group_cap)?;
    let generators: Vec<Value> = g
        .generators
        .iter()
        .map(|r| {
            json!({
                "matrix": imat(&r.matrix.row_vecs()),
                "hyperplane": ivec(&r.hyperplane),
                "region": r.region,
                "neighbor": r.neighbor,
            })
        })
        .collect();
    let mut seen = g.element_region.clone();
    seen.sort_unstable();
    seen.dedup();
    let simply_transitive = seen.len() == g.order() && seen.len() == rs.len();
    Ok(json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "base_region": g.base_region,
        "generators": generators,
        "element_region": g.element_region,
        "generator_action": g.action,
        "simply_transitive": simply_transitive,
    }))
}

pub fn count(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    let c = count_crepant_resolutions(&f, limits.group_cap)?;
    Ok(json!({
        "crepant_resolutions": c.crepant_resolutions,
        "chambers": c.chambers,
        "regions": c.regions,
        "weyl_order": c.weyl_order,
        "chambers_per_region": c.chambers_per_region,
    }))
}

fn locate_chamber(chambers: &[Chamber], coords: &[Rat]) -> Result<usize, CliError> {
    chambers
        .iter()
        .position(|c| c.closure.relative_interior_contains_rat(coords))
        .ok_or_else(|| CliError::Malformed("θ lies on a wall, not inside a chamber".into()))
}

fn selected_chambers(spec: &ProblemSpec, f: &GitFan) -> Result<Vec<usize>, CliError> {
    if let Some(c) = spec.options.chamber {
        if c >= f.chambers.len() {
            return Err(CliError::Malformed(format!("chamber {c} does not exist")));
        }
        return Ok(vec![c]);
    }
    if let Some(th) = theta(spec) {
        let coords = f.space.coords(&th)?;
        return Ok(vec![locate_chamber(&f.chambers, &coords)?]);
    }
    Ok((0..f.chambers.len()).collect())
}

pub fn classify(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    let wall = spec.options.wall.as_deref().map(ints).transpose()?;
    let mut walls = Vec::new();
    for c in selected_chambers(spec, &f)? {
        let facets: Vec<Vec<Int>> = match &wall {
            Some(w) => vec![w.clone()],
            None => f.chambers[c].closure.facets().to_vec(),
        };
        for n in facets {
            let t = classify_wall(&f, c, &n)?;
            walls.push(json!({ "chamber": c, "normal": ivec(&n), "type": t.as_str() }));
        }
    }
    Ok(json!({ "interpretation": f.interpretation(), "walls": walls }))
}

pub fn query(spec: &ProblemSpec, limits: Limits) -> Result<Value, CliError> {
    let f = quiver_fan(spec, limits)?;
    let th = require_theta(spec)?;
    let other = spec.options.other_theta.as_deref().map(rats).unwrap_or_else(|| th.clone());
    let rs = regions(&f)?;
    let q = cone_queries(&f, &rs, &th, &other)?;
    let signs = |s: &[i8]| gitfan::exactgeom::arrangement::sign_string(s);
    Ok(json!({
        "theta": rvec(&th),
        "other_theta": rvec(&other),
        "coords": rvec(&f.space.coords(&th)?),
        "generic": f.is_generic(&th)?,
        "signs": signs(&q.signs),
        "other_signs": signs(&q.other_signs),
        "same_model": q.same_model,
        "picard_rank": q.picard_rank,
        "regions": q.regions,
    }))
}

fn toric_chamber_json(p: &ToricGitProblem, i: usize, fan: &ToricFan) -> Value {
    let c = &fan.chambers[i];
    let ambient: Vec<Vec<Int>> = c.closure.rays().iter().map(|r| p.character_space().to_ambient(r)).collect();
    json!({
        "index": i,
        "interior": ivec(&c.interior),
        "closure": cone(&c.closure),
        "ambient_rays": imat(&ambient),
        "semistable_faces": c.semistable,
        "cells": c.cells,
    })
}

pub fn toric_fan(spec: &ProblemSpec) -> Result<Value, CliError> {
    let p = toric_problem(spec)?;
    let fan = toric_git_fan(&p);
    let faces: Vec<Value> = p
        .faces()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            json!({
                "index": k,
                "generators": f.generators,
                "dim": f.dim(),
                "weight_cone": cone(p.weight_cone(k)),
            })
        })
        .collect();
    let hyperplanes: Vec<Value> = fan
        .arrangement
        .iter()
        .map(|(n, faces)| json!({ "normal": ivec(n), "faces": faces }))
        .collect();
    let mut doc = json!({
        "character_space": {
            "dim": p.character_dim(),
            "basis": imat(p.character_space().basis()),
        },
        "faces": faces,
        "hyperplanes": hyperplanes,
        "chambers": (0..fan.chambers.len()).map(|i| toric_chamber_json(&p, i, &fan)).collect::<Vec<_>>(),
        "effective": fan.effective.iter().map(cone).collect::<Vec<_>>(),
    });
    if let Some(th) = theta(spec) {
        let coords = p.coords(&th)?;
        let ss = semistable_faces(&p, &th)?;
        let chamber = fan.chambers.iter().position(|c| c.closure.relative_interior_contains_rat(&coords));
        let mut at = json!({
            "theta": rvec(&th),
            "coords": rvec(&coords),
            "effective": fan.is_effective(&coords),
            "semistable_faces": ss,
            "chamber": chamber,
        });
        if !ss.is_empty() {
            let u = unstable_stratum_dim(&p, &th)?;
            at["max_unstable_dim"] = json!(u.max_unstable_dim);
            at["unstable_codim"] = json!(u.codim);
        }
        doc["at_theta"] = at;
    }
    Ok(doc)
}

pub fn toric_wall(spec: &ProblemSpec) -> Result<Value, CliError> {
    let p = toric_problem(spec)?;
    let fan = toric_git_fan(&p);
    let chambers: Vec<usize> = if let Some(c) = spec.options.chamber {
        if c >= fan.chambers.len() {
            return Err(CliError::Malformed(format!("chamber {c} does not exist")));
        }
        vec![c]
    } else if let Some(th) = theta(spec) {
        let coords = p.coords(&th)?;
        vec![fan
            .chambers
            .iter()
            .position(|c| c.closure.relative_interior_contains_rat(&coords))
            .ok_or_else(|| CliError::Malformed("θ is not inside a chamber".into()))?]
    } else {
        (0..fan.chambers.len()).collect()
    };
    let wall = spec.options.wall.as_deref().map(ints).transpose()?;
    let mut reports = Vec::new();
    for c in chambers {
        let facets: Vec<Vec<Int>> = match &wall {
            Some(w) => vec![w.clone()],
            None => fan.chambers[c].closure.facets().to_vec(),
        };
        for n in facets {
            let rep = wall_side_analysis(&p, &fan, c, &n)?;
            let sides: Vec<Value> = rep
                .sides
                .iter()
                .map(|s| {
                    json!({
                        "chamber": s.chamber,
                        "theta": ivec(&s.theta),
                        "changed": s.changed,
                        "semistable_equal": s.semistable_equal,
                    })
                })
                .collect();
            reports.push(json!({
                "chamber": c,
                "normal": ivec(&rep.normal),
                "wall_point": ivec(&rep.theta0),
                "sides": sides,
            }));
        }
    }
    Ok(json!({ "walls": reports }))
}

fn datum_json(d: &HypertoricDatum) -> Value {
    json!({
        "a": imat(&d.a.row_vecs()),
        "b": imat(&d.b.row_vecs()),
        "columns_span": d.columns_span,
        "unimodular": d.unimodular,
        "b_unimodular": d.b_unimodular,
        "unimodularity_scans_agree": d.columns_span.then_some(d.unimodular == d.b_unimodular),
        "no_zero_row": d.no_zero_row,
        "statements": d.statements(),
    })
}

pub fn hypertoric(spec: &ProblemSpec) -> Result<Value, CliError> {
    let a = matrix(&hypertoric_payload(spec)?.a)?;
    let mut doc = json!({
        "datum": datum_json(&datum(&a)),
        "validation": match validate(&a) {
            Ok(_) => json!({ "ok": true }),
            Err(e) => json!({ "ok": false, "error": e.to_string() }),
        },
        "moment_map": moment_map_report(&a)
            .iter()
            .map(|e| json!({ "coefficients": ivec(&e.coefficients), "equation": e.render() }))
            .collect::<Vec<_>>(),
    });
    match hypertoric_chambers(&a) {
        Ok(h) => {
            doc["wall_model"] = json!(h.wall_model);
            doc["valid_for_geometry"] = json!(h.valid_for_geometry);
            doc["hyperplanes"] = imat(&h.normals);
            doc["chambers"] = Value::Array(h.chambers.iter().enumerate().map(|(i, c)| chamber_json(i, c)).collect());
            Ok(doc)
        }
        Err(e) => Err(CliError::Hypothesis {
            message: e.to_string(),
            diagnostic: Some(doc),
        }),
    }
}

pub fn plot(spec: &ProblemSpec, limits: Limits) -> Result<String, CliError> {
    let slice = match &spec.options.slice {
        Some((u, v)) => Some((ints(u)?, ints(v)?)),
        None => None,
    };
    let title = spec.label();
    let svg = match spec.kind {
        Kind::Quiver => {
            let f = quiver_fan(spec, limits)?;
            let rs = if f.is_git_fan() { regions(&f)? } else { Vec::new() };
            let normals = f.normals();
            let lines = f
                .arrangement
                .iter()
                .map(|(n, labels)| Line {
                    normal: n.clone(),
                    label: labels.first().map(|b| b.to_string()).unwrap_or_default(),
                    emphasized: f.is_codim2_hyperplane(n),
                })
                .collect();
            let scene = Scene {
                title,
                dim: f.space.dim(),
                lines,
                locate: Box::new(|x: &[Int]| {
                    let c = f.chambers.iter().position(|c| c.contains_open(x, &normals))?;
                    let label = match rs.iter().position(|r| r.chambers.contains(&c)) {
                        Some(r) => format!("C{c} R{r}"),
                        None => format!("C{c}"),
                    };
                    Some((c, label))
                }),
            };
            render(&scene, slice)?
        }
        Kind::Toric => {
            let p = toric_problem(spec)?;
            let fan = toric_git_fan(&p);
            let lines = fan
                .arrangement
                .iter()
                .map(|(n, faces)| Line {
                    normal: n.clone(),
                    label: format!("F{}", faces[0]),
                    emphasized: false,
                })
                .collect();
            let scene = Scene {
                title,
                dim: p.character_dim(),
                lines,
                locate: Box::new(|x: &[Int]| {
                    let c = fan.chambers.iter().position(|c| c.closure.relative_interior_contains(x))?;
                    Some((c, format!("C{c}")))
                }),
            };
            render(&scene, slice)?
        }
        Kind::Hypertoric => {
            let h = hypertoric_chambers(&matrix(&hypertoric_payload(spec)?.a)?)?;
            let lines = h
                .normals
                .iter()
                .map(|n| Line {
                    normal: n.clone(),
                    label: String::new(),
                    emphasized: false,
                })
                .collect();
            let scene = Scene {
                title,
                dim: h.datum.a.rows(),
                lines,
                locate: Box::new(|x: &[Int]| {
                    let c = h.chambers.iter().position(|c| c.contains_open(x, &h.normals))?;
                    Some((c, format!("C{c}")))
                }),
            };
            render(&scene, slice)?
        }
    };
    Ok(svg)
}
