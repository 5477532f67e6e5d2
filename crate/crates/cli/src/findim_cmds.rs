use serde_json::{json, Value};

use qsubcat::findim::corpus::{extension_violation, module_corpus, CORPUS_BOUND};
use qsubcat::findim::{
    enumerate_filter_systems, enumerate_right_ideals, enumerate_two_sided_ideals, filter_system_roundtrip,
    gabriel_violation, is_principal_fs, FilterSystem, Generators, StructAlgebra, Subspace, DEFAULT_BOUND,
};
use qsubcat::report::{describe_algebra, Report};
use qsubcat::spec_file::LoadedRing;
use qsubcat::Error;

use crate::commands::load;
use crate::{Cli, FindimCmd, Status};

fn vectors(a: &StructAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| a.fmt_vector(v)).collect()
}

fn system_value(a: &StructAlgebra, fs: &FilterSystem) -> Value {
    let filters: Vec<Vec<Vec<String>>> = fs.filters().iter().map(|f| f.iter().map(|j| vectors(a, j)).collect()).collect();
    json!(filters)
}

pub fn run(cli: &Cli, op: &FindimCmd) -> Result<(Report, Status), Error> {
    let a = match load(cli)? {
        LoadedRing::FinDim(a) => a,
        LoadedRing::Quantum(_) => {
            return Err(Error::Spec { path: "ring".into(), message: "this command needs a finite-dimensional algebra".into() })
        }
    };
    let desc = describe_algebra(&a);
    let mut rep;
    match op {
        FindimCmd::EnumerateIdeals { right } => {
            let ideals = if *right { enumerate_right_ideals(&a, DEFAULT_BOUND)? } else { enumerate_two_sided_ideals(&a, DEFAULT_BOUND)? };
            rep = Report::new("findim enumerate-ideals", desc).input("right", *right);
            let list: Vec<Value> =
                ideals.iter().map(|k| json!({ "basis": vectors(&a, &k.space), "dim": k.dim(), "two_sided": k.two_sided })).collect();
            rep.result = json!({ "count": list.len(), "ideals": list });
        }
        FindimCmd::EnumerateFilterSystems => {
            let g = Generators::new(&a, DEFAULT_BOUND)?;
            let systems = enumerate_filter_systems(&g, DEFAULT_BOUND)?;
            rep = Report::new("findim enumerate-filter-systems", desc);
            let list: Vec<Value> = systems
                .iter()
                .map(|fs| {
                    json!({
                        "filters": system_value(&a, fs),
                        "principal": is_principal_fs(&g, fs).map(|k| vectors(&a, &k.space)),
                        "gabriel": gabriel_violation(&g, fs).is_none(),
                    })
                })
                .collect();
            rep.result = json!({ "count": list.len(), "systems": list });
        }
        FindimCmd::Roundtrip => {
            let g = Generators::new(&a, DEFAULT_BOUND)?;
            let systems = enumerate_filter_systems(&g, DEFAULT_BOUND)?;
            let ideals = enumerate_two_sided_ideals(&a, DEFAULT_BOUND)?;
            let failing: Vec<Value> =
                systems.iter().filter(|fs| !filter_system_roundtrip(&g, fs)).map(|fs| system_value(&a, fs)).collect();
            let mut principal: Vec<Subspace> = systems.iter().filter_map(|fs| is_principal_fs(&g, fs)).map(|k| k.space).collect();
            principal.sort();
            let mut spaces: Vec<Subspace> = ideals.iter().map(|k| k.space.clone()).collect();
            spaces.sort();
            let ideal_roundtrip =
                ideals.iter().all(|k| is_principal_fs(&g, &g.principal(k)).map(|j| j.space) == Some(k.space.clone()));
            rep = Report::new("findim roundtrip", desc);
            rep.result = json!({
                "systems": systems.len(),
                "ideals": ideals.len(),
                "system_roundtrip": failing.is_empty(),
                "failing": failing,
                "principal_systems_are_ideals": principal == spaces,
                "ideal_roundtrip": ideal_roundtrip,
            });
        }
        FindimCmd::Gabriel { max_dim } => {
            let g = Generators::new(&a, DEFAULT_BOUND)?;
            let systems = enumerate_filter_systems(&g, DEFAULT_BOUND)?;
            let corpus = module_corpus(&a, *max_dim, CORPUS_BOUND)?;
            let mut list = Vec::new();
            let mut agree = true;
            for fs in &systems {
                let violation = gabriel_violation(&g, fs);
                let ext = extension_violation(&g, fs, &corpus, DEFAULT_BOUND)?;
                agree &= violation.is_none() == ext.is_none();
                list.push(json!({
                    "filters": system_value(&a, fs),
                    "gabriel": violation.is_none(),
                    "extension_closed": ext.is_none(),
                    "violation": violation.map(|(b, j, k)| json!({ "vertex": b, "j": vectors(&a, &j), "k": vectors(&a, &k) })),
                    "extension_witness": ext.map(|(m, n)| json!({ "module": m, "submodule_dim": n.dim() })),
                }));
            }
            rep = Report::new("findim gabriel", desc).input("max_dim", *max_dim);
            rep.result = json!({ "systems": list.len(), "corpus": corpus.len(), "agree": agree, "details": list });
        }
    }
    Ok((rep, Status::Ok))
}
