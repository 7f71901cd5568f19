//! One function per verb, each returning a [`Report`].

use serde_json::{json, Value};
use ultranorm_core::amenability::amenability_norm;
use ultranorm_core::bar::{cohomology_dim_with_budget, h1b_dimension, AbelianInvariants, DEFAULT_BUDGET};
use ultranorm_core::quasimorphism::{
    cyclic_defect, laurent_section_check, product_combine, project_to_prufer, qm_to_hom_check, standard_section,
    PruferElement, QmDocument, QmTable, StandardSection,
};
use ultranorm_core::topo::{
    builtin_cover, cellular_cohomology_dims, mayer_vietoris_check, na_simplicial_volume, subdivision_norm_check,
};
use ultranorm_core::{AbsValue, Error, FieldDescriptor, Result};

use crate::output::{rational_value, Report, Table};
use crate::{input, CatalogueArgs, CohomologyArgs, FieldArgs, NormArgs, QmArgs, QmMode, TopoArgs, TopoOp};

fn field_json(fd: &FieldDescriptor) -> Value {
    serde_json::to_value(fd).expect("descriptor serialises")
}

fn abs_json(v: AbsValue, p: u64) -> Value {
    rational_value(&v.to_rational(p))
}

pub fn field(args: &FieldArgs) -> Result<Report> {
    let fd = input::field(&args.field)?;
    let mut r = Report::new("field").config("field", field_json(&fd));
    r.set("trichotomy", fd.classify()?.to_string())?;
    r.set("structural_hypothesis", if fd.spherically_complete { "locally_elliptic" } else { "compact" })?;
    Ok(r)
}

pub fn norm(args: &NormArgs) -> Result<Report> {
    let group = input::group_descriptor(&args.group)?;
    let fd = input::field(&args.field)?;
    let verdict = amenability_norm(&group, &fd, args.depth)?;
    let group_json: Value = serde_json::from_str(&group.to_json()).expect("descriptor JSON re-parses");
    let mut r = Report::new("norm")
        .config("group", group_json)
        .config("field", field_json(&fd))
        .config("depth", args.depth);
    r.set("norm", verdict.norm)?;
    r.set("certified", verdict.certified)?;
    r.set("reason", verdict.reason)?;
    r.set("rendered", verdict.render())?;
    Ok(r)
}

fn parse_abelian(text: &str) -> Result<AbelianInvariants> {
    let bad = || Error::Input(format!("abelian invariants {text:?} should look like rank:d1,d2,..."));
    let (rank, torsion) = text.split_once(':').unwrap_or((text, ""));
    let rank = rank.trim().parse().map_err(|_| bad())?;
    let torsion = torsion
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    AbelianInvariants::new(rank, torsion)
}

pub fn cohomology(args: &CohomologyArgs) -> Result<Report> {
    if let Some(ab) = &args.abelian {
        let inv = parse_abelian(ab)?;
        let fd = input::field(args.field.as_deref().expect("clap requires --field"))?;
        let mut r = Report::new("cohomology")
            .config("abelian", json!({"rank": inv.rank, "torsion": inv.torsion}))
            .config("field", field_json(&fd))
            .config("degree", 1);
        r.set("h1b_dimension", h1b_dimension(&inv, &fd)?)?;
        return Ok(r);
    }
    let spec = args.group.as_deref().expect("clap requires --group");
    let group = input::finite_group(spec)?;
    let (budget, source) = input::budget(args.budget, DEFAULT_BUDGET)?;
    let summary = cohomology_dim_with_budget(&group, args.field_char, args.degree, budget)?;
    let mut r = Report::new("cohomology")
        .config("group", spec)
        .config("order", group.order())
        .config("char", args.field_char)
        .config("degree", args.degree)
        .config("budget", budget)
        .config("budget_source", source);
    r.set("dim_cochains", summary.dim_cochains)?;
    r.set("dim_cocycles", summary.dim_cocycles)?;
    r.set("dim_coboundaries", summary.dim_coboundaries)?;
    r.set("dim_cohomology", summary.dim_cohomology)?;
    r.set("representatives", &summary.sample_representatives)?;
    Ok(r)
}

fn load_tables(specs: &[String]) -> Result<Vec<QmTable>> {
    specs
        .iter()
        .map(|t| QmTable::from_document(&input::parse_json::<QmDocument>(&input::load(t)?, "quasimorphism table")?))
        .collect()
}

fn pair_names(table: &QmTable, witness: Option<(usize, usize)>) -> Value {
    witness.map_or(Value::Null, |(x, y)| json!([table.group().name(x), table.group().name(y)]))
}

pub fn qm(args: &QmArgs) -> Result<Report> {
    let p = args.p;
    let mut r = Report::new("qm")
        .config("mode", format!("{:?}", args.mode).to_lowercase())
        .config("p", p)
        .config("N", args.depth);
    match args.mode {
        QmMode::Section => {
            if let Some(digits) = &args.digits {
                let x = PruferElement::new(p, digits.clone())?;
                let s = standard_section(&x);
                r = r.config("digits", digits.clone());
                r.set("section", rational_value(&s))?;
                r.set("projection_recovers_element", project_to_prufer(&s, p)? == x)?;
            } else {
                let iota = QmTable::standard_section(p, args.depth)?;
                let check = qm_to_hom_check(&iota)?;
                let inverts = check.projected.iter().zip(iota.values()).all(|(pi, v)| standard_section(pi) == *v);
                r.set("elements", iota.group().order())?;
                r.set("defect", abs_json(iota.defect().norm, p))?;
                r.set("verdicts", json!({"projection_inverts_section": inverts, "projection_is_homomorphism": check.is_homomorphism()}))?;
                r.set("sup_norm", abs_json(iota.sup_norm(), p))?;
            }
        }
        QmMode::Defect => {
            if args.table.is_empty() {
                let d = cyclic_defect(&StandardSection { p, depth: args.depth })?;
                r = r.config("function", "standard_section");
                r.set("defect", abs_json(d.norm, p))?;
                r.set("bound_attained_at", d.witness.map(|(x, y)| [x, y]))?;
                r.set("verdicts", json!({"defect_is_one": d.norm == AbsValue::ONE}))?;
            } else {
                let tables = load_tables(&args.table)?;
                let [t] = tables.as_slice() else {
                    return Err(Error::Input("defect mode takes exactly one table".into()));
                };
                let d = t.defect();
                r = r.config("table", args.table[0].clone());
                r.set("defect", abs_json(d.norm, t.p()))?;
                r.set("bound_attained_at", pair_names(t, d.witness))?;
                let verdicts = if d.norm <= AbsValue::ONE {
                    let h = qm_to_hom_check(t)?;
                    json!({
                        "projection_is_homomorphism": h.is_homomorphism(),
                        "section_distance": abs_json(h.section_distance, t.p()),
                        "section_within_one": h.section_distance <= AbsValue::ONE,
                        "projected": h.projected.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                } else {
                    json!({"projection_is_homomorphism": Value::Null})
                };
                r.set("verdicts", verdicts)?;
            }
        }
        QmMode::Laurent => {
            let v = laurent_section_check(args.depth, p)?;
            r.set("defect", abs_json(v.defect, p))?;
            r.set("pairs_checked", v.pairs_checked)?;
            r.set("bound_attained_at", Value::Null)?;
            r.set("verdicts", json!({"homomorphism": v.homomorphism}))?;
        }
        QmMode::Product => {
            let tables = if args.table.is_empty() {
                let factors = args.factors.clone().unwrap_or_else(|| vec![args.depth]);
                r = r.config("factors", factors.clone());
                factors.iter().map(|&a| QmTable::standard_section(p, a)).collect::<Result<Vec<_>>>()?
            } else {
                r = r.config("tables", args.table.clone());
                load_tables(&args.table)?
            };
            let combined = product_combine(&tables)?;
            let component = tables.iter().map(|t| t.defect().norm).max().unwrap_or(AbsValue::Zero);
            let d = combined.defect();
            r.set("elements", combined.group().order())?;
            r.set("defect", abs_json(d.norm, combined.p()))?;
            r.set("max_component_defect", abs_json(component, combined.p()))?;
            r.set("bound_attained_at", pair_names(&combined, d.witness))?;
            r.set("verdicts", json!({"defect_at_most_component_max": d.norm <= component}))?;
        }
    }
    Ok(r)
}

pub fn topo(args: &TopoArgs) -> Result<Report> {
    let complex = input::complex(&args.complex)?;
    let op = format!("{:?}", args.op).to_lowercase();
    let mut r = Report::new("topo").config("complex", args.complex.clone()).config("op", op);
    match args.op {
        TopoOp::Dims => {
            r = r.config("char", args.field_char);
            r.set("dims", cellular_cohomology_dims(&complex.cells(), args.field_char)?)?;
        }
        TopoOp::Subdiv => {
            let x = complex.simplicial()?;
            let degrees: Vec<usize> = match args.degree {
                Some(n) => vec![n],
                None => (0..=x.dimension()).collect(),
            };
            r = r.config("char", args.field_char).config("degrees", degrees.clone());
            let verdicts = degrees.iter().map(|&n| subdivision_norm_check(x, n, args.field_char)).collect::<Result<Vec<_>>>()?;
            r.set("holds", verdicts.iter().all(|v| v.holds()))?;
            r.set("verdicts", verdicts)?;
        }
        TopoOp::Mv => {
            let x = complex.simplicial()?;
            let [a, b] = match (&args.a, &args.b) {
                (Some(a), Some(b)) => [input::simplices(a)?, input::simplices(b)?],
                (None, None) => builtin_cover(&args.complex).ok_or_else(|| {
                    Error::Input(format!("{:?} has no built-in cover; pass --a and --b", args.complex))
                })?,
                _ => return Err(Error::Input("--a and --b go together".into())),
            };
            r = r.config("char", args.field_char).config("a", json!(a)).config("b", json!(b));
            let v = mayer_vietoris_check(x, &x.subcomplex(&a)?, &x.subcomplex(&b)?, args.field_char)?;
            r.set("exact", v.exact)?;
            r.set("alternating_sum", v.alternating_sum)?;
            r.set("dims_x", &v.dims_x)?;
            r.set("dims_intersection", &v.dims_intersection)?;
            r.set("nodes", &v.nodes)?;
        }
        TopoOp::Volume => {
            r = r.config("p", args.p);
            let cert = na_simplicial_volume(complex.simplicial()?, args.p)?;
            r.set("volume", rational_value(&cert.volume))?;
            r.set("certificate", &cert)?;
            if let Some(c) = r.body.get_mut("certificate") {
                c["max_norm"] = rational_value(&cert.max_norm.to_rational(cert.p));
            }
        }
    }
    Ok(r)
}

pub fn catalogue(args: &CatalogueArgs) -> Result<Report> {
    let rows = ultranorm_core::catalogue(args.depth)?;
    let mut r = Report::new("catalogue").config("depth", args.depth);
    r.set("rows", &rows)?;
    r.table = Some(Table {
        header: vec!["family", "params", "prime", "norm", "certified", "theorem_tag"],
        rows: rows
            .iter()
            .map(|row| {
                vec![
                    row.family.clone(),
                    row.params.clone(),
                    row.prime.to_string(),
                    row.norm.to_string(),
                    row.certified.to_string(),
                    row.theorem_tag.clone(),
                ]
            })
            .collect(),
    });
    Ok(r)
}

