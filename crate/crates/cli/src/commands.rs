use serde_json::{json, Value};

use loopflag::affine::{classify_parabolic, graded_component, Crossing};
use loopflag::autgrp::{act_on_crossing, automorphism_group, is_exceptional, standardizable};
use loopflag::degcalc::{
    self, formal_degree, hecke_degree_action, instanton_dimension, MultiDegree,
};
use loopflag::laurent::{
    self, conjugate_outer, parabolic_basis, parabolic_membership, LaurentMatrix, OuterKind,
};
use loopflag::linalg::QMatrix;
use loopflag::monad::{hecke_monad, hecke_order_check, random_monad, validate, MonadData};
use loopflag::rootsys::{root_label, Family, RootSystem};
use loopflag::sheafseq::{
    self, hecke_index_shift, hecke_index_shift_inverse, sheaf_degree, Label, SheafFamily,
    SheafIndex,
};
use loopflag::weyl::AffineWeyl;
use loopflag::{fmt_q, q, Q};

use crate::{
    ChargesArgs, ClassifyArgs, CrossArgs, DegreeArgs, FlipDemoArgs, HeckeDegreesArgs,
    HeckeShiftArgs, InstantonArgs, Limits, MonadArgs, SheafseqArgs, SystemArgs, WindowArgs,
    HARD_MAX_LENGTH, HARD_MAX_RANK,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m.clone(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<loopflag::Error> for CliError {
    fn from(e: loopflag::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type Out = Result<Value, CliError>;

pub fn check_limits(limits: &Limits) -> Result<(), CliError> {
    if limits.max_rank > HARD_MAX_RANK {
        return Err(CliError::Domain(format!(
            "--max-rank {} exceeds the hard limit {HARD_MAX_RANK}",
            limits.max_rank
        )));
    }
    if limits.max_length > HARD_MAX_LENGTH {
        return Err(CliError::Domain(format!(
            "--max-length {} exceeds the hard limit {HARD_MAX_LENGTH}",
            limits.max_length
        )));
    }
    Ok(())
}

fn system(a: &SystemArgs, limits: &Limits) -> Result<RootSystem, CliError> {
    let family: Family = a
        .family
        .parse()
        .map_err(|e: loopflag::Error| CliError::Usage(e.to_string()))?;
    if a.rank > limits.max_rank {
        return Err(CliError::Domain(format!(
            "rank {} exceeds --max-rank {}",
            a.rank, limits.max_rank
        )));
    }
    Ok(RootSystem::build(family, a.rank)?)
}

fn crossing(a: &CrossArgs, limits: &Limits) -> Result<(RootSystem, Crossing), CliError> {
    let rs = system(&a.system, limits)?;
    let c = Crossing::from_nodes(rs.rank(), &a.cross)?;
    Ok((rs, c))
}

fn labels(rs: &RootSystem, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter()
        .map(|i| root_label(&rs.roots()[i]))
        .collect()
}

fn rationals(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn matrix(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rationals(&m.row(i))).collect()
}

fn laurent_matrix(g: &LaurentMatrix) -> String {
    let rows: Vec<String> = g
        .render()
        .into_iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn roots(a: &SystemArgs, limits: &Limits) -> Out {
    let rs = system(a, limits)?;
    let positive: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({"root": root_label(r), "height": RootSystem::height(r)}))
        .collect();
    Ok(json!({
        "family": rs.family().to_string(),
        "rank": rs.rank(),
        "cartan": rs.cartan_matrix(),
        "theta": root_label(rs.theta()),
        "comarks": rs.comarks(),
        "dual_coxeter": rs.dual_coxeter(),
        "rho": rationals(rs.rho()),
        "killing_scale": fmt_q(rs.killing_scale()),
        "positive_roots": positive,
    }))
}

pub fn strange(a: &SystemArgs, limits: &Limits) -> Out {
    let rs = system(a, limits)?;
    Ok(json!({ "value": fmt_q(&rs.strange_identity()) }))
}

pub fn classify(a: &ClassifyArgs, limits: &Limits) -> Out {
    let (rs, c) = crossing(&a.crossing, limits)?;
    if a.min_level > a.max_level {
        return Err(CliError::Usage(format!(
            "empty level range [{}, {}]",
            a.min_level, a.max_level
        )));
    }
    let p = classify_parabolic(&c, &rs)?;
    let pieces: Vec<Value> = (a.min_level..=a.max_level)
        .map(|n| {
            let g = graded_component(&p, &rs, n);
            json!({"level": n, "cartan": g.cartan, "roots": labels(&rs, g.roots)})
        })
        .collect();
    Ok(json!({
        "crossing": c.crossed_nodes(),
        "klass": p.klass.as_str(),
        "delta_chi": p.delta_chi,
        "q_chi": labels(&rs, p.q_chi_roots),
        "finite_parabolic": labels(&rs, p.finite_parabolic_roots),
        "pieces": pieces,
    }))
}

pub fn autos(a: &SystemArgs, limits: &Limits) -> Out {
    let rs = system(a, limits)?;
    let group = automorphism_group(&rs);
    let perms: Vec<Value> = group
        .iter()
        .map(|s| json!({"perm": s.to_string()}))
        .collect();
    Ok(json!({
        "order": group.len(),
        "exceptional": is_exceptional(&rs),
        "automorphisms": perms,
    }))
}

pub fn standardize(a: &CrossArgs, limits: &Limits) -> Out {
    let (rs, c) = crossing(a, limits)?;
    let found = standardizable(&rs, &c)?;
    let image = match &found {
        Some(s) => Some(act_on_crossing(s, &c)?.crossed_nodes()),
        None => None,
    };
    Ok(json!({
        "crossing": c.crossed_nodes(),
        "standardizable": found.is_some(),
        "automorphism": found.map(|s| s.to_string()),
        "image": image,
    }))
}

pub fn weyl_count(a: &SystemArgs, limits: &Limits) -> Out {
    let rs = system(a, limits)?;
    let levels = AffineWeyl::new(&rs).enumerate_by_length(limits.max_length)?;
    let profile: Vec<usize> = levels.iter().map(Vec::len).collect();
    Ok(json!({
        "max_length": limits.max_length,
        "total": profile.iter().sum::<usize>(),
        "profile": profile,
    }))
}

pub fn hasse(a: &CrossArgs, limits: &Limits) -> Out {
    let (rs, c) = crossing(a, limits)?;
    let strata = AffineWeyl::new(&rs).birkhoff_strata(&c, limits.max_length)?;
    let rows: Vec<Value> = strata
        .iter()
        .map(|s| {
            json!({
                "length": s.element.length(),
                "word": s.element.word,
                "codimension": s.codimension,
                "cell_dimension": s.cell_dimension,
            })
        })
        .collect();
    Ok(json!({
        "crossing": c.crossed_nodes(),
        "max_length": limits.max_length,
        "count": rows.len(),
        "strata": rows,
    }))
}

pub fn degree(a: &DegreeArgs, limits: &Limits) -> Out {
    let (rs, c) = crossing(&a.crossing, limits)?;
    let k = MultiDegree::new(&c, a.k.clone())?;
    Ok(json!({
        "crossing": c.crossed_nodes(),
        "k": k.values(),
        "degree": formal_degree(&rs, &c, &k)?,
    }))
}

pub fn instanton_dim(a: &InstantonArgs, limits: &Limits) -> Out {
    let rs = system(&a.system, limits)?;
    Ok(json!({
        "dual_coxeter": rs.dual_coxeter(),
        "k": a.k,
        "dimension": instanton_dimension(&rs, a.k),
    }))
}

pub fn charges(a: &ChargesArgs) -> Out {
    Ok(json!({ "value": degcalc::charges(a.k, &a.j) }))
}

fn sheaf_family(s: &str) -> Result<SheafFamily, CliError> {
    s.parse()
        .map_err(|e: loopflag::Error| CliError::Usage(e.to_string()))
}

pub fn sheafseq(a: &SheafseqArgs) -> Out {
    let family = sheaf_family(&a.family)?;
    let (_, rank) = family.root_data(a.n);
    let c = Crossing::from_nodes(rank, &a.cross)?;
    let spec = sheafseq::sequence_spec(family, a.n, &c)?;
    let sizes = match family {
        SheafFamily::Gl => Some(sheafseq::quotient_sizes(&spec)?),
        _ => None,
    };
    let sheaves = spec
        .surviving_labels
        .iter()
        .map(|&l| {
            let idx = SheafIndex::new(a.i, l);
            Ok(json!({"index": idx.to_string(), "degree": sheaf_degree(family, a.n, idx)?}))
        })
        .collect::<Result<Vec<Value>, CliError>>()?;
    Ok(json!({
        "family": family.name(),
        "bundle_rank": family.bundle_rank(a.n),
        "crossing": c.crossed_nodes(),
        "quotient_sizes": sizes,
        "sheaves": sheaves,
    }))
}

pub fn hecke_shift(a: &HeckeShiftArgs) -> Out {
    let family = sheaf_family(&a.family)?;
    let label: Label = a
        .label
        .parse()
        .map_err(|e: loopflag::Error| CliError::Usage(e.to_string()))?;
    let mut idx = SheafIndex::new(a.i, label);
    let mut rows = vec![
        json!({"step": 0, "index": idx.to_string(), "degree": sheaf_degree(family, a.n, idx)?}),
    ];
    for step in 1..=a.steps {
        idx = if a.inverse {
            hecke_index_shift_inverse(family, a.n, idx)?
        } else {
            hecke_index_shift(family, a.n, idx)?
        };
        rows.push(json!({"step": step, "index": idx.to_string(), "degree": sheaf_degree(family, a.n, idx)?}));
    }
    Ok(json!({
        "family": family.name(),
        "result": idx.to_string(),
        "steps": rows,
    }))
}

pub fn hecke_degrees(a: &HeckeDegreesArgs) -> Out {
    Ok(json!({ "value": hecke_degree_action(a.n, &a.k)? }))
}

pub fn flip_demo(a: &FlipDemoArgs) -> Out {
    let rs = RootSystem::build(Family::A, 1)?;
    let borel = Crossing::borel(1);
    let p1 = Crossing::only_affine_node(1);
    let p2 = Crossing::from_nodes(1, &[1])?;
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for (name, src, dst) in [("B -> B", &borel, &borel), ("P1 -> P2", &p1, &p2)] {
        let mut all = true;
        for g in parabolic_basis(&rs, src, a.lo, a.hi)? {
            let image = conjugate_outer(&g, OuterKind::FlipSl2)?;
            let in_source = parabolic_membership(&g, &rs, src)?;
            let in_target = parabolic_membership(&image, &rs, dst)?;
            all &= in_source && in_target;
            rows.push(json!({
                "map": name,
                "element": laurent_matrix(&g),
                "image": laurent_matrix(&image),
                "in_target": in_target,
            }));
        }
        verdicts.push(all);
    }
    Ok(json!({
        "borel": classify_parabolic(&borel, &rs)?.klass.as_str(),
        "p1": classify_parabolic(&p1, &rs)?.klass.as_str(),
        "p2": classify_parabolic(&p2, &rs)?.klass.as_str(),
        "borel_fixed": verdicts[0],
        "p1_into_p2": verdicts[1],
        "basis": rows,
    }))
}

fn parse_rational(s: &str) -> Option<Q> {
    let (p, d) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().ok()?;
    let d: i64 = d.trim().parse().ok()?;
    (d != 0).then(|| q(p, d))
}

fn parse_entry(s: &str, size: usize) -> Result<LaurentMatrix, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "bad --entry {s:?}: expected row,col,power,coeff with indices below {size}"
        ))
    };
    let parts: Vec<&str> = s.split(',').collect();
    let [r, c, k, x] = parts[..] else {
        return Err(bad());
    };
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    let k: i64 = k.trim().parse().map_err(|_| bad())?;
    let x = parse_rational(x).ok_or_else(bad)?;
    if r >= size || c >= size {
        return Err(bad());
    }
    Ok(LaurentMatrix::elementary(size, r, c, k, x))
}

pub fn window(a: &WindowArgs) -> Out {
    if a.size == 0 {
        return Err(CliError::Usage("--size must be positive".into()));
    }
    let mut g = LaurentMatrix::zeros(a.size, 1);
    for e in &a.entries {
        g = &g + &parse_entry(e, a.size)?;
    }
    if let Some(kind) = &a.conjugate {
        let kind: OuterKind = kind
            .parse()
            .map_err(|e: loopflag::Error| CliError::Usage(e.to_string()))?;
        g = conjugate_outer(&g, kind)?;
    }
    let w = laurent::window(&g, a.lo, a.hi)?;
    let blocks: Vec<Value> = w
        .blocks
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|((i, j), m)| json!({"i": i, "j": j, "block": matrix(m)}))
        .collect();
    Ok(json!({
        "matrix": laurent_matrix(&g),
        "block_size": w.block_size,
        "periodic": w.is_periodic(),
        "blocks": blocks,
    }))
}

fn monad_json(m: &MonadData) -> Value {
    json!({"a": matrix(m.a()), "b": matrix(m.b()), "c": matrix(m.c()), "d": matrix(m.d())})
}

pub fn monad(a: &MonadArgs) -> Out {
    let m = random_monad(a.k, a.n, a.seed)?;
    let h = hecke_monad(&m)?;
    let mut out = json!({
        "monad": monad_json(&m),
        "transformed": monad_json(&h),
        "constraint_holds": validate(&m),
        "transformed_constraint_holds": validate(&h),
    });
    if a.check_order {
        out["order_check"] = json!(hecke_order_check(&m)?);
    }
    Ok(out)
}
