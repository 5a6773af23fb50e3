//! Rows of the biprojective family table at one `(p, m)`: every exponent
//! choice is tried, valid members are certified and their nuclei measured.

use rayon::prelude::*;
use serde::Serialize;

use semifield::families::{self, default_non_square, FamilySParams, Label};
use semifield::gf::numtheory::ipow;
use semifield::gf::{odd_part, Fe};
use semifield::isotopy::count_classes_family_s;
use semifield::linmap::Presemifield;
use semifield::planarity::{certified, OracleMode};
use semifield::structure::presemifield_nuclei;
use semifield::Error;

use crate::commands::{CmdResult, Failure, Output};

#[derive(Serialize, Default)]
struct Row {
    family: &'static str,
    form: &'static str,
    p: u64,
    m: u32,
    n: u32,
    k: Option<u32>,
    j: Option<u32>,
    valid: bool,
    reason: String,
    planar: Option<bool>,
    nl: Option<u64>,
    nm: Option<u64>,
    nr: Option<u64>,
    listed_nl: Option<u64>,
    listed_nm: Option<u64>,
    nuclei_match: Option<bool>,
    listed_count: String,
    computed_count: Option<u64>,
}

struct Spec {
    family: &'static str,
    form: &'static str,
    k: Option<u32>,
    j: Option<u32>,
    listed_count: String,
    build: Box<dyn Fn() -> semifield::Result<Presemifield> + Send + Sync>,
}

fn evaluate(p: u64, m: u32, spec: &Spec) -> Row {
    let mut row = Row {
        family: spec.family,
        form: spec.form,
        p,
        m,
        n: 2 * m,
        k: spec.k,
        j: spec.j,
        listed_count: spec.listed_count.clone(),
        ..Row::default()
    };
    let ps = match (spec.build)() {
        Ok(ps) => ps,
        Err(e) => {
            row.reason = e.to_string();
            return row;
        }
    };
    row.valid = true;
    let label: Label = ps.label().clone();
    if let Some(pr) = label.predicted_nuclei() {
        row.listed_nl = Some(pr.left);
        row.listed_nm = Some(pr.middle);
    }
    let ps = match certified(ps, OracleMode::WhenNeeded) {
        Ok(ps) => ps,
        Err(Error::NotPlanar) => {
            row.planar = Some(false);
            return row;
        }
        Err(e) => {
            row.reason = e.to_string();
            return row;
        }
    };
    row.planar = Some(true);
    if let Ok(rep) = presemifield_nuclei(&ps) {
        row.nl = Some(rep.nl);
        row.nm = Some(rep.nm);
        row.nr = Some(rep.nr);
        row.nuclei_match = rep.matches;
    }
    row
}

pub fn run(p: u64, m: u32) -> CmdResult {
    let usage = |e: Error| Failure::Usage(e.to_string());
    let a = default_non_square(p, m).map_err(usage)?;
    let n = 2 * m;
    let sigma = odd_part(n as u64).map_err(usage)?;
    let half_sigma = (sigma - 1) / 2;
    let quarter = (n / 4) as u64;
    let mut specs: Vec<Spec> = vec![
        Spec {
            family: "F",
            form: "X^2",
            k: None,
            j: None,
            listed_count: "1".into(),
            build: Box::new(move || families::field(p, n)),
        },
        Spec {
            family: "F",
            form: "[(0,1,0,0)_1,(1,0,0,a)_1]",
            k: None,
            j: None,
            listed_count: "1".into(),
            build: Box::new(move || families::field_pair(p, m, a)),
        },
    ];
    for k in 1..m {
        specs.push(Spec {
            family: "A",
            form: "X^{q+1}",
            k: Some(k),
            j: None,
            listed_count: half_sigma.to_string(),
            build: Box::new(move || families::albert_univariate(p, n, k, false)),
        });
        specs.push(Spec {
            family: "A",
            form: "[(0,a^{(q-1)/2},1,0)_q,(a^{(q+1)/2},0,0,1)_q]",
            k: Some(k),
            j: None,
            listed_count: half_sigma.to_string(),
            build: Box::new(move || families::albert_pair(p, n, k, a, false)),
        });
    }
    for k in 1..m {
        specs.push(Spec {
            family: "D",
            form: "[(1,0,0,a)_1,(0,1,0,0)_q]",
            k: Some(k),
            j: None,
            listed_count: quarter.to_string(),
            build: Box::new(move || families::dickson(p, m, k, a, false)),
        });
    }
    for k in 1..m {
        for j in 1..m {
            specs.push(Spec {
                family: "ZP",
                form: "[(1,0,0,a)_q,(0,1,0,0)_r]",
                k: Some(k),
                j: Some(j),
                listed_count: (half_sigma * quarter).to_string(),
                build: Box::new(move || families::zhou_pott(p, m, k, j, a, false)),
            });
        }
    }
    for k in 1..m {
        specs.push(Spec {
            family: "BH",
            form: "bh",
            k: Some(k),
            j: None,
            listed_count: quarter.to_string(),
            build: Box::new(move || families::bh(p, m, k, a, false)),
        });
    }
    let s_bound = if m.is_multiple_of(2) {
        let l_units = ipow(p, m / 2) - 1;
        format!(">={}", half_sigma * l_units.div_ceil(n as u64))
    } else {
        String::new()
    };
    for k in 1..m {
        let b = a;
        specs.push(Spec {
            family: "S",
            form: "[(1,0,0,B)_q,(0,1,a/B,0)_r]",
            k: Some(k),
            j: None,
            listed_count: s_bound.clone(),
            build: Box::new(move || families::family_s(&FamilySParams { p, m, k, b, a: Fe::ONE }, false)),
        });
    }
    let mut rows: Vec<Row> = specs.par_iter().map(|s| evaluate(p, m, s)).collect();
    if rows.iter().any(|r| r.family == "S" && r.valid) {
        if let Ok(census) = count_classes_family_s(p, n, a) {
            for r in rows.iter_mut().filter(|r| r.family == "S" && r.valid) {
                r.computed_count = Some(census.count);
            }
        }
    }
    let ok = rows.iter().all(|r| !r.valid || (r.planar == Some(true) && r.nuclei_match != Some(false)));
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("CSV is UTF-8");
    Ok(Output { text, ok })
}
