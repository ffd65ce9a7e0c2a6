use std::fmt::Display;
use std::path::PathBuf;

use flaghecke::cellcore::{basis_rank, cellular_basis_with, decompose_checked, mdj_compare, verify_cellularity};
use flaghecke::combinat::{
    contingency_matrices, is_permissible, kostka, partitions_of, rsk, rsk_inverse_sized, Composition,
    ContingencyMatrix, Partition,
};
use flaghecke::flagcalc::{orbits_on_spaces, FlagSpaces};
use flaghecke::modlevel2::{module_decompose, module_rsk_check, param_set, ModuleSpaces, PairClass};
use flaghecke::report::Report;
use flaghecke::Error;
use serde_json::{json, Value};

use crate::args::{Command, Common, Identity};
use crate::output::{Outcome, Table};

/// Largest n run without `--unsafe-no-cap`.
pub const FIELD_CAP: usize = 6;
pub const MODULE_CAP: usize = 4;

/// Trace and permissibility cross-checks are skipped above these sizes.
const MAX_TRACE_POINTS: usize = 5_000;
const MAX_CHECK_PAIRS: usize = 1_000_000;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Precondition(m) => write!(f, "precondition violated: {m}"),
            Failure::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => Failure::Precondition(m),
            Error::Inconsistent(_) | Error::Io(_) => Failure::Internal(e.to_string()),
            Error::IncomparableSizes(..)
            | Error::ParameterMismatch(_)
            | Error::NotContained(_)
            | Error::InvalidType(_)
            | Error::InvalidOrbitKey(_) => Failure::Precondition(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn parse_parts(flag: &str, s: &str) -> Result<Vec<usize>, Failure> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("--{flag}: {x:?} is not a nonnegative integer"))))
        .collect()
}

fn parse_partition(flag: &str, s: &str) -> Result<Partition, Failure> {
    Partition::new(parse_parts(flag, s)?).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn parse_composition(flag: &str, s: &str) -> Result<Composition, Failure> {
    Ok(Composition::new(parse_parts(flag, s)?))
}

fn parse_class(s: &str) -> Result<PairClass, Failure> {
    match parse_parts("xi", s)?[..] {
        [a, b, k] => PairClass::new(a, b, k).map_err(|e| Failure::Usage(format!("--xi: {e}"))),
        _ => Err(Failure::Usage(format!("--xi: expected a,b,k, got {s:?}"))),
    }
}

fn module_partition(s: &str) -> Result<Partition, Failure> {
    let lambda = parse_partition("lambda", s)?;
    if lambda.parts().iter().any(|&x| x > 2) {
        return Err(Failure::Usage(format!("--lambda: {lambda} has a part larger than 2")));
    }
    Ok(lambda)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn resolve_n(given: Option<usize>, sizes: &[usize]) -> Result<usize, Failure> {
    let n = given.or(sizes.first().copied()).ok_or_else(|| Failure::Usage("--n is required".into()))?;
    if let Some(&bad) = sizes.iter().find(|&&s| s != n) {
        return Err(Failure::Usage(format!("a shape of size {bad} does not match n = {n}")));
    }
    Ok(n)
}

fn cap(common: &Common, n: usize, limit: usize, case: &str) -> Result<(), Failure> {
    if n > limit && !common.unsafe_no_cap {
        return Err(Failure::Precondition(format!(
            "n = {n} exceeds the {case} cap n ≤ {limit}; pass --unsafe-no-cap to run anyway"
        )));
    }
    Ok(())
}

fn flag_spaces(p: u32) -> FlagSpaces {
    FlagSpaces::with_cache_dir(p, std::env::var_os("FLAGHECKE_CACHE_DIR").map(PathBuf::from))
}

fn progress(msg: impl Display) {
    eprintln!("flaghecke: {msg}");
}

fn matrix_text(rows: &[Vec<usize>]) -> String {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
}

fn class_json(c: PairClass) -> Value {
    json!({"label": c.to_string(), "a": c.a, "b": c.b, "k": c.k})
}

pub fn run(command: &Command, common: &Common) -> Run {
    if !is_prime(common.p) {
        return Err(Failure::Usage(format!("--p {} is not prime", common.p)));
    }
    match command {
        Command::Rsk { matrix } => rsk_cmd(matrix),
        Command::Counts { n, identity } => counts(common, *n, *identity),
        Command::Orbits { n, lambda, mu, module: false, xi } => {
            if !xi.is_empty() {
                return Err(Failure::Usage("--xi needs --module".into()));
            }
            let lambda = lambda.as_deref().ok_or_else(|| Failure::Usage("--lambda is required".into()))?;
            field_orbits(common, *n, lambda, mu.as_deref())
        }
        Command::Orbits { n, xi, module: true, .. } => module_orbits(common, *n, xi),
        Command::Decompose { n, lambda } => decompose_cmd(common, *n, lambda),
        Command::CellularCheck { n, lambda, mu } => cellular_check(common, *n, lambda, mu.as_deref()),
        Command::MdjCompare { n, lambda, mu } => mdj(common, *n, lambda, mu.as_deref()),
        Command::ModuleDecompose { n, lambda } => module_decompose_cmd(common, *n, lambda),
        Command::ModuleRskCheck { n, lambda, xi } => module_rsk(common, *n, lambda, xi.as_deref()),
    }
}

fn rsk_cmd(matrix: &str) -> Run {
    let m = ContingencyMatrix::parse(matrix).map_err(|e| Failure::Usage(format!("--matrix: {e}")))?;
    let (p, q) = rsk(&m);
    let back = rsk_inverse_sized(&p, &q, m.n_rows(), m.n_cols())?;
    let mut report = Report::new();
    report.check("P and Q are semistandard of equal shape", p.is_semistandard() && q.is_semistandard() && p.shape() == q.shape(), || {
        format!("P = {p}, Q = {q}")
    });
    report.check("RSK⁻¹(RSK(M)) = M", back == m, || format!("got {back}"));
    let mut table = Table::new(&["item", "value"]);
    table.push(vec!["matrix".into(), matrix_text(m.rows())]);
    table.push(vec!["shape".into(), p.shape().to_string()]);
    table.push(vec!["P".into(), matrix_text(p.rows())]);
    table.push(vec!["Q".into(), matrix_text(q.rows())]);
    let result = json!({"matrix": m.rows(), "shape": p.shape(), "P": p.rows(), "Q": q.rows()});
    Ok(Outcome { result, table, report })
}

fn counts(common: &Common, n: usize, identity: Identity) -> Run {
    cap(common, n, FIELD_CAP, "field")?;
    let parts = partitions_of(n);
    let mut report = Report::new();
    let mut rows = Vec::new();
    let table = match identity {
        Identity::Kostka => {
            let mut t = Table::new(&["nu", "mu", "K"]);
            for nu in &parts {
                for mu in &parts {
                    let k = kostka(nu, &mu.into());
                    t.push(vec![nu.to_string(), mu.to_string(), k.to_string()]);
                    rows.push(json!({"nu": nu, "mu": mu, "kostka": k}));
                }
            }
            t
        }
        Identity::Contingency | Identity::KostkaSquare => {
            let square = identity == Identity::KostkaSquare;
            let mut t = if square {
                Table::new(&["lambda", "mu", "|M|", "sum K K"])
            } else {
                Table::new(&["lambda", "mu", "|M|"])
            };
            let mut bad = Vec::new();
            for l in &parts {
                for mu in &parts {
                    let m = contingency_matrices(&l.into(), &mu.into())?.len();
                    if square {
                        let s: usize = parts.iter().map(|nu| kostka(nu, &l.into()) * kostka(nu, &mu.into())).sum();
                        if s != m {
                            bad.push(format!("{l},{mu}: {m} != {s}"));
                        }
                        t.push(vec![l.to_string(), mu.to_string(), m.to_string(), s.to_string()]);
                        rows.push(json!({"lambda": l, "mu": mu, "contingency": m, "kostka_square": s}));
                    } else {
                        t.push(vec![l.to_string(), mu.to_string(), m.to_string()]);
                        rows.push(json!({"lambda": l, "mu": mu, "contingency": m}));
                    }
                }
            }
            if square {
                report.check(format!("|M_λμ| = Σ_ν K_νλ K_νμ for all λ, μ ⊢ {n}"), bad.is_empty(), || bad.join("; "));
            }
            t
        }
    };
    Ok(Outcome { result: json!({"n": n, "rows": rows}), table, report })
}

fn field_orbits(common: &Common, n: Option<usize>, lambda: &str, mu: Option<&str>) -> Run {
    let c1 = parse_composition("lambda", lambda)?;
    let c2 = match mu {
        Some(m) => parse_composition("mu", m)?,
        None => c1.clone(),
    };
    let n = resolve_n(n, &[c1.n(), c2.n()])?;
    cap(common, n, FIELD_CAP, "field")?;
    let spaces = flag_spaces(common.p);
    progress(format_args!("enumerating {c1}- and {c2}-flags in F_{}^{n}", common.p));
    let (xs, ys) = (spaces.get(&c1)?, spaces.get(&c2)?);
    progress(format_args!("classifying {} pairs", xs.len() * ys.len()));
    let (orbits, keys) = orbits_on_spaces(&xs, &ys)?;
    let all = contingency_matrices(&c1, &c2)?;
    let mut report = Report::new();
    report.check("every matrix of M_λμ is the key of an orbit", keys == all, || {
        format!("{} keys for {} matrices", keys.len(), all.len())
    });
    let total: usize = (0..orbits.count()).map(|o| orbits.size(o)).sum();
    report.check("orbit sizes sum to |X_λ|·|X_μ|", total == xs.len() * ys.len(), || total.to_string());
    let mut table = Table::new(&["orbit", "intersection matrix", "size", "permissible"]);
    let mut rows = Vec::new();
    for (o, key) in keys.iter().enumerate() {
        let permissible = is_permissible(key).unwrap_or(false);
        table.push(vec![o.to_string(), matrix_text(key.rows()), orbits.size(o).to_string(), permissible.to_string()]);
        rows.push(json!({"matrix": key.rows(), "size": orbits.size(o), "permissible": permissible}));
    }
    let result = json!({"lambda": c1, "mu": c2, "n": n, "rows_space": xs.len(), "cols_space": ys.len(), "orbits": rows});
    Ok(Outcome { result, table, report })
}

fn module_orbits(common: &Common, n: Option<usize>, xi: &[String]) -> Run {
    let n = n.ok_or_else(|| Failure::Usage("--n is required with --module".into()))?;
    let (c1, c2) = match xi {
        [a] => (parse_class(a)?, parse_class(a)?),
        [a, b] => (parse_class(a)?, parse_class(b)?),
        _ => return Err(Failure::Usage("--module takes one or two --xi classes".into())),
    };
    if c1.rank().max(c2.rank()) > n {
        return Err(Failure::Usage(format!("a class has rank above n = {n}")));
    }
    cap(common, n, MODULE_CAP, "module")?;
    let spaces = ModuleSpaces::new(n, common.p);
    progress(format_args!("enumerating module pairs of classes {c1} and {c2} in (Z/{}²)^{n}", common.p));
    let (xs, ys) = (spaces.get(c1)?, spaces.get(c2)?);
    let records = spaces.orbit_records(c1, c2)?;
    let mut report = Report::new();
    let total: usize = records.iter().map(|r| r.size).sum();
    report.check("orbit sizes sum to |Y_ξ₁|·|Y_ξ₂|", total == xs.len() * ys.len(), || total.to_string());
    let mut table = Table::new(&["orbit", "size", "type of x2 ∩ y2"]);
    let mut rows = Vec::new();
    for (o, r) in records.iter().enumerate() {
        let (a, b) = r.meet_type;
        let meet = Partition::from_unsorted(&[vec![2; a], vec![1; b]].concat());
        table.push(vec![o.to_string(), r.size.to_string(), meet.to_string()]);
        rows.push(json!({"size": r.size, "meet_type": meet}));
    }
    let result = json!({"xi1": class_json(c1), "xi2": class_json(c2), "n": n, "orbits": rows});
    Ok(Outcome { result, table, report })
}

fn decompose_cmd(common: &Common, n: Option<usize>, lambda: &str) -> Run {
    let lambda = parse_partition("lambda", lambda)?;
    let n = resolve_n(n, &[lambda.n()])?;
    cap(common, n, FIELD_CAP, "field")?;
    progress(format_args!("decomposing Q[X_{lambda}] over F_{}", common.p));
    let (comps, report) = decompose_checked(&flag_spaces(common.p), &lambda, MAX_TRACE_POINTS as u128)?;
    let mut table = Table::new(&["nu", "multiplicity", "dim"]);
    for c in &comps {
        table.push(vec![c.nu.to_string(), c.multiplicity.to_string(), c.dim.to_string()]);
    }
    let total: u128 = comps.iter().map(|c| c.multiplicity as u128 * c.dim).sum();
    let result = json!({"lambda": lambda, "n": n, "components": comps, "total_dim": total});
    Ok(Outcome { result, table, report })
}

fn two_shapes(n: Option<usize>, lambda: &str, mu: Option<&str>) -> Result<(Composition, Composition, usize), Failure> {
    let c1 = parse_composition("lambda", lambda)?;
    let c2 = match mu {
        Some(m) => parse_composition("mu", m)?,
        None => c1.clone(),
    };
    let n = resolve_n(n, &[c1.n(), c2.n()])?;
    Ok((c1, c2, n))
}

fn cellular_check(common: &Common, n: Option<usize>, lambda: &str, mu: Option<&str>) -> Run {
    let (c1, c2, n) = two_shapes(n, lambda, mu)?;
    cap(common, n, FIELD_CAP, "field")?;
    progress(format_args!("building the cellular basis of Hom(Q[X_{c2}], Q[X_{c1}]) over F_{}", common.p));
    let cs = cellular_basis_with(&flag_spaces(common.p), &c1, &c2)?;
    // The algebra axioms only make sense for End; for Hom check the basis.
    let report = if c1 == c2 {
        verify_cellularity(&cs)
    } else {
        let mut r = Report::new();
        let (rank, orbits) = (basis_rank(&cs), cs.orbits().count());
        r.check("cellular elements form a basis of Hom", rank == orbits && cs.len() == orbits, || {
            format!("{} elements of rank {rank}, {orbits} orbits", cs.len())
        });
        r
    };
    let mut table = Table::new(&["nu", "left", "right", "elements"]);
    let mut cells = Vec::new();
    for cell in &cs.cells {
        let (l, r) = (cell.left.len(), cell.right.len());
        table.push(vec![cell.nu.to_string(), l.to_string(), r.to_string(), (l * r).to_string()]);
        let rows = |ms: &[ContingencyMatrix]| ms.iter().map(|m| m.rows().to_vec()).collect::<Vec<_>>();
        cells.push(json!({"nu": cell.nu, "left": rows(&cell.left), "right": rows(&cell.right)}));
    }
    let result = json!({"lambda": c1, "mu": c2, "n": n, "orbits": cs.orbits().count(), "basis": cs.len(), "cells": cells});
    Ok(Outcome { result, table, report })
}

fn mdj(common: &Common, n: Option<usize>, lambda: &str, mu: Option<&str>) -> Run {
    let (c1, c2, n) = two_shapes(n, lambda, mu)?;
    cap(common, n, FIELD_CAP, "field")?;
    progress(format_args!("comparing with the Murphy basis for {c1}, {c2} over F_{}", common.p));
    let report = mdj_compare(&flag_spaces(common.p), &c1, &c2)?;
    let passed = report.checks.iter().filter(|c| c.pass).count();
    let mut table = Table::new(&["lambda", "mu", "checks passed"]);
    table.push(vec![c1.to_string(), c2.to_string(), format!("{passed}/{}", report.checks.len())]);
    let result = json!({"lambda": c1, "mu": c2, "n": n, "all_pass": report.all_pass()});
    Ok(Outcome { result, table, report })
}

fn module_decompose_cmd(common: &Common, n: usize, lambda: &str) -> Run {
    let lambda = module_partition(lambda)?;
    cap(common, n, MODULE_CAP, "module")?;
    progress(format_args!("decomposing F_ι({lambda}) for (Z/{}²)^{n}", common.p));
    let (comps, report) = module_decompose(&ModuleSpaces::new(n, common.p), &lambda, MAX_TRACE_POINTS)?;
    let mut table = Table::new(&["eta", "a,b,k", "multiplicity", "dim"]);
    let mut rows = Vec::new();
    for c in &comps {
        let e = c.eta;
        table.push(vec![e.to_string(), format!("{},{},{}", e.a, e.b, e.k), c.multiplicity.to_string(), c.dim.to_string()]);
        rows.push(json!({"eta": class_json(e), "multiplicity": c.multiplicity, "dim": c.dim}));
    }
    let total: u128 = comps.iter().map(|c| c.multiplicity as u128 * c.dim).sum();
    let iota = PairClass::iota(&lambda)?;
    let result = json!({"lambda": lambda, "n": n, "iota": class_json(iota), "components": rows, "total_dim": total});
    Ok(Outcome { result, table, report })
}

fn module_rsk(common: &Common, n: usize, lambda: &str, xi: Option<&str>) -> Run {
    let lambda = module_partition(lambda)?;
    cap(common, n, MODULE_CAP, "module")?;
    let spaces = ModuleSpaces::new(n, common.p);
    let classes = match xi {
        Some(s) => vec![parse_class(s)?],
        None => param_set(&lambda, n, common.p)?,
    };
    let iota = PairClass::iota(&lambda)?;
    let mut report = Report::new();
    let mut table = Table::new(&["xi", "orbits on Y_iota x Y_xi", "pass"]);
    let mut rows = Vec::new();
    for xi in classes {
        progress(format_args!("checking ξ = {xi}"));
        let r = module_rsk_check(&spaces, &lambda, xi, MAX_CHECK_PAIRS)?;
        let count = spaces.orbits(iota, xi)?.count();
        table.push(vec![xi.to_string(), count.to_string(), r.all_pass().to_string()]);
        rows.push(json!({"xi": class_json(xi), "orbits": count, "pass": r.all_pass()}));
        for c in r.checks {
            report.record(format!("ξ = {xi}: {}", c.name), c.witness);
        }
    }
    let result = json!({"lambda": lambda, "n": n, "iota": class_json(iota), "classes": rows});
    Ok(Outcome { result, table, report })
}
