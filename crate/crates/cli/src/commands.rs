use crate::io::{matrix_json, matrix_text, read_covariance, read_matrix, read_text, CliError, Outcome};
use crate::{Cli, Command, Field, NcCmd, QuasifreeCmd, RunConfig, TableKind, TiCmd};
use fermilie::algebra::families::FAMILY_NAMES;
use fermilie::algebra::{build_named_family, parse_generators, AnyOperator};
use fermilie::algebra::operator::SparseOperator;
use fermilie::fock::crosscheck::{crosscheck_witness, CROSSCHECK_MAX_D};
use fermilie::fock::state::MAX_STATE_MODES;
use fermilie::fock::{covariance_of, crosscheck, dense, dense_closure_dim, quasifree_state_dense, CrossCheck};
use fermilie::lie::{lie_closure, structure_profile_seeded, StructureReport};
use fermilie::particle_number::{general_nc_structure, nc_generators, nc_pure_controllable, sp_basis, u_basis};
use fermilie::quasifree::{
    canonical_form, evolve_covariance, is_pure, matrix_closure, operator_to_t, quasifree_pure_controllable,
    random_pure_covariance, same_orbit, same_orbit_connected, singular_values, t_to_operator,
    tensor_square_controllable, CovarianceMatrix, Mat,
};
use fermilie::scalar::{Field as ScalarField, Q};
use fermilie::ti_quasifree::{
    connecting_block_rotation, dense_gap, ell_expectations, fourier_blocks, gap_model, gap_scan, gap_scan_csv,
    qd_structure, random_gap_coefficients, random_ti_pure_state, ti_gap, ti_orbit_invariants, QdReport,
};
use fermilie::translation::{
    bounded_range_generators, nn_witness, fermion_table, spin_table, Kind, Table, TableCell,
};
use serde_json::{json, Value};
use std::path::PathBuf;

type Res = Result<Outcome, CliError>;

/// Largest dense closure the oracle attempts.
const ORACLE_MAX_CLOSURE: usize = 1200;

pub fn run(cli: &Cli) -> Res {
    let cfg = &cli.config;
    match &cli.command {
        Command::Closure { input, preset, d, expect_dim } => closure(cfg, input, preset, *d, *expect_dim),
        Command::Presets => presets(),
        Command::Table { kind, range, all_ranges } => table(cfg, *kind, range, *all_ranges),
        Command::Witness { d } => witness(cfg, *d),
        Command::GapScan { m, d, count } => gap(cfg, *m, d, *count),
        Command::Quasifree { cmd } => quasifree(cfg, cmd),
        Command::Ti { cmd } => ti(cfg, cmd),
        Command::ParticleNumber { cmd } => particle_number(cfg, cmd),
        Command::Crosscheck { what, d } => {
            let c = crosscheck(what, *d)?;
            Ok(Outcome { text: check_line(&c), ok: c.pass, json: serde_json::to_value(&c)?, csv: None })
        }
    }
}

fn check_line(c: &CrossCheck) -> String {
    format!(
        "{}: {} (sparse {:?}, dense {:?}, max diff {:.3e})\n",
        c.check,
        if c.pass { "pass" } else { "FAIL" },
        c.sparse,
        c.dense,
        c.max_diff
    )
}

/// Oracle section shared by all commands: `(json, text, pass)`.
struct Oracle {
    checks: Vec<CrossCheck>,
    skipped: Option<String>,
}

impl Oracle {
    fn skipped(why: impl Into<String>) -> Self {
        Oracle { checks: vec![], skipped: Some(why.into()) }
    }
    fn of(checks: Vec<CrossCheck>) -> Self {
        Oracle { checks, skipped: None }
    }
    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    fn attach(self, out: &mut Outcome) {
        let mut text = String::from("oracle:\n");
        match &self.skipped {
            Some(why) => text.push_str(&format!("  skipped: {why}\n")),
            None => self.checks.iter().for_each(|c| text.push_str(&format!("  {}", check_line(c)))),
        }
        out.text.push_str(&text);
        out.ok &= self.pass();
        if let Value::Object(o) = &mut out.json {
            o.insert(
                "oracle".into(),
                json!({ "checks": self.checks, "skipped": self.skipped, "pass": self.pass() }),
            );
        }
    }
}

fn check(name: String, sparse: f64, dense: f64, tol: f64) -> CrossCheck {
    let max_diff = (sparse - dense).abs();
    CrossCheck { check: name, sparse: vec![sparse], dense: vec![dense], max_diff, pass: max_diff <= tol }
}

fn dense_oracle_closure(name: &str, gens: &[SparseOperator<f64>], sparse_dim: usize) -> Result<Oracle, CliError> {
    let n = gens.first().map(|g| g.ambient.n).unwrap_or(0);
    if n > CROSSCHECK_MAX_D || sparse_dim > ORACLE_MAX_CLOSURE {
        return Ok(Oracle::skipped(format!(
            "dense closure limited to n <= {CROSSCHECK_MAX_D} and dim <= {ORACLE_MAX_CLOSURE}"
        )));
    }
    let dg = gens.iter().map(dense).collect::<fermilie::Result<Vec<_>>>()?;
    Ok(Oracle::of(vec![check(name.into(), sparse_dim as f64, dense_closure_dim(&dg) as f64, 0.0)]))
}

fn preset_name(p: &str) -> &str {
    match p {
        "w-family" => "w123",
        "fully-controllable" => "w1234",
        "particle-number" => "w12",
        other => other,
    }
}

fn presets() -> Res {
    let mut names: Vec<&str> = FAMILY_NAMES.to_vec();
    names.extend(["w-family", "fully-controllable", "particle-number"]);
    Ok(Outcome { text: names.join("\n") + "\n", json: json!({ "presets": names }), csv: None, ok: true })
}

enum Gens {
    Exact(Vec<SparseOperator<Q>>),
    Float(Vec<SparseOperator<f64>>),
}

impl Gens {
    fn to_f64(&self) -> Vec<SparseOperator<f64>> {
        match self {
            Gens::Exact(g) => g.iter().map(|o| o.to_f64()).collect(),
            Gens::Float(g) => g.clone(),
        }
    }
}

fn load_gens(cfg: &RunConfig, input: &Option<PathBuf>, preset: &Option<String>, d: Option<usize>) -> Result<(String, Gens), CliError> {
    let (label, gens) = match (input, preset) {
        (Some(path), None) => {
            let ops = parse_generators(&read_text(path)?)?;
            if ops.is_empty() {
                return Err(CliError::input("no generators given"));
            }
            let all_exact = ops.iter().all(|o| matches!(o, AnyOperator::Exact(_)));
            let gens = if all_exact && cfg.field == Field::Exact {
                Gens::Exact(ops.into_iter().map(|o| match o {
                    AnyOperator::Exact(x) => x,
                    AnyOperator::Float(_) => unreachable!(),
                }).collect())
            } else {
                Gens::Float(ops.iter().map(|o| o.to_f64()).collect())
            };
            (path.display().to_string(), gens)
        }
        (None, Some(p)) => {
            let d = d.ok_or_else(|| CliError::input("--preset needs -d"))?;
            let name = preset_name(p);
            let gens = match cfg.field {
                Field::Exact => Gens::Exact(build_named_family::<Q>(name, d)?),
                Field::Float => Gens::Float(build_named_family::<f64>(name, d)?),
            };
            (format!("{name} d={d}"), gens)
        }
        _ => return Err(CliError::input("give an input file or --preset")),
    };
    Ok((label, gens))
}

fn report_text(r: &StructureReport) -> String {
    format!(
        "dim {}\nrank {}\ncenter {}\nstructure {}\n",
        r.dim, r.rank, r.center_dim, r.structure
    )
}

fn closure(cfg: &RunConfig, input: &Option<PathBuf>, preset: &Option<String>, d: Option<usize>, expect: Option<usize>) -> Res {
    let (label, gens) = load_gens(cfg, input, preset, d)?;
    let report = match &gens {
        Gens::Exact(g) => structure_profile_seeded(&lie_closure(g, cfg.cap)?, cfg.seed)?,
        Gens::Float(g) => structure_profile_seeded(&lie_closure(g, cfg.cap)?, cfg.seed)?,
    };
    let ok = expect.is_none_or(|e| e == report.dim);
    let mut text = format!("closure of {label}\n{}", report_text(&report));
    if let Some(e) = expect {
        text.push_str(&format!("expected dim {e}: {}\n", if ok { "ok" } else { "MISMATCH" }));
    }
    let mut out = Outcome {
        json: json!({ "input": label, "report": report, "expected_dim": expect, "ok": ok }),
        text,
        csv: None,
        ok,
    };
    if cfg.oracle {
        dense_oracle_closure(&format!("closure {label}"), &gens.to_f64(), report.dim)?.attach(&mut out);
    }
    Ok(out)
}

/// `2..5`, `2..=5`, `4`, `2,3,5`; the `a..b` form is inclusive.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::input(format!("bad size range {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let sizes: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if sizes.is_empty() {
        return Err(bad());
    }
    Ok(sizes)
}

fn table(cfg: &RunConfig, kind: TableKind, range: &str, all_ranges: bool) -> Res {
    let sizes = parse_sizes(range)?;
    match kind {
        TableKind::FermiTi | TableKind::SpinTi => {
            let t = if kind == TableKind::FermiTi { fermion_table(&sizes, all_ranges)? } else { spin_table(&sizes)? };
            let ok = !cfg.diff || t.cells.iter().all(|c| c.matches == Some(true));
            let mut out = Outcome { text: t.render(), json: serde_json::to_value(&t)?, csv: Some(cells_csv(&t)), ok };
            if cfg.oracle {
                let k = if kind == TableKind::FermiTi { Kind::Fermion } else { Kind::Spin };
                table_oracle(&t.cells, k)?.attach(&mut out);
            }
            Ok(out)
        }
        TableKind::TiQuadratic => {
            let mut rows = Vec::new();
            for &d in &sizes {
                for rsym in [false, true] {
                    rows.push(match cfg.field {
                        Field::Exact => qd_structure::<Q>(d, rsym, None)?,
                        Field::Float => qd_structure::<f64>(d, rsym, None)?,
                    });
                }
            }
            let ok = !cfg.diff || rows.iter().all(|r| r.matches);
            let mut out = Outcome { text: qd_text(&rows), json: json!({ "rows": rows }), csv: Some(qd_csv(&rows)), ok };
            if cfg.oracle {
                qd_oracle(&rows)?.attach(&mut out);
            }
            Ok(out)
        }
    }
}

fn cells_csv(t: &Table) -> String {
    let mut s = String::from("size,M,dim,structure,expected,matches\n");
    for c in &t.cells {
        s.push_str(&format!(
            "{},{},{},\"{}\",\"{}\",{}\n",
            c.size,
            c.m,
            c.dim,
            c.structure,
            c.expected.clone().unwrap_or_default(),
            c.matches.map(|b| b.to_string()).unwrap_or_default()
        ));
    }
    s
}

fn table_oracle(cells: &[TableCell], kind: Kind) -> Result<Oracle, CliError> {
    let mut checks = Vec::new();
    for c in cells.iter().filter(|c| c.size <= 5 && c.dim <= ORACLE_MAX_CLOSURE) {
        let gens = bounded_range_generators::<f64>(c.size, c.m, kind)?;
        let dg = gens.iter().map(dense).collect::<fermilie::Result<Vec<_>>>()?;
        checks.push(check(format!("cell {} M={}", c.size, c.m), c.dim as f64, dense_closure_dim(&dg) as f64, 0.0));
    }
    if checks.is_empty() {
        return Ok(Oracle::skipped("dense closures limited to size <= 5"));
    }
    Ok(Oracle::of(checks))
}

fn qd_text(rows: &[QdReport]) -> String {
    let w = rows.iter().map(|r| r.computed.structure.len()).max().unwrap_or(9).max(9);
    let mut s = format!("{:>3} {:<8} {:>5}  {:<w$}  check\n", "d", "variant", "dim", "structure");
    for r in rows {
        let v = if r.reflection_symmetric { "R-sym" } else { "general" };
        let check = if r.matches { "ok" } else { "MISMATCH" };
        s.push_str(&format!("{:>3} {:<8} {:>5}  {:<w$}  {check}\n", r.d, v, r.computed.dim, r.computed.structure));
    }
    s
}

fn qd_csv(rows: &[QdReport]) -> String {
    let mut s = String::from("d,reflection_symmetric,dim,structure,predicted,matches\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},\"{}\",\"{}\",{}\n",
            r.d, r.reflection_symmetric, r.computed.dim, r.computed.structure, r.predicted, r.matches
        ));
    }
    s
}

fn qd_oracle(rows: &[QdReport]) -> Result<Oracle, CliError> {
    use fermilie::quasifree::ham_to_t;
    use fermilie::ti_quasifree::qd_generators;
    let mut checks = Vec::new();
    for r in rows.iter().filter(|r| r.d <= 6) {
        let ops = qd_generators::<f64>(r.d, r.reflection_symmetric, r.m)?
            .iter()
            .map(|h| t_to_operator(&ham_to_t(h)))
            .collect::<fermilie::Result<Vec<_>>>()?;
        let ops: Vec<_> = ops.into_iter().filter(|o| !o.is_zero()).collect();
        let dg = ops.iter().map(dense).collect::<fermilie::Result<Vec<_>>>()?;
        let v = if r.reflection_symmetric { "R-sym" } else { "general" };
        checks.push(check(format!("{v} d={}", r.d), r.computed.dim as f64, dense_closure_dim(&dg) as f64, 0.0));
    }
    if checks.is_empty() {
        return Ok(Oracle::skipped("dense closures limited to d <= 6"));
    }
    Ok(Oracle::of(checks))
}

fn witness(cfg: &RunConfig, d: usize) -> Res {
    let r = nn_witness(d)?;
    let mut text = format!(
        "d = {}\nwitness {}  polynomial {}\ntrace {}\nnormalized {:.12}\n",
        r.d, r.witness, r.polynomial, r.trace_exact, r.normalized
    );
    if let Some(p) = r.stated_value {
        text.push_str(&format!("stated value {p:.12}  ({})\n", if r.matches_stated { "match" } else { "differs" }));
    }
    if let Some(c) = r.corrected_value {
        text.push_str(&format!("closed form {c:.12}\n"));
    }
    for t in &r.nn_traces {
        text.push_str(&format!("  {:<6} {}\n", t.name, if t.exact_zero { "0".into() } else { format!("{}", t.trace) }));
    }
    let name = if d % 2 == 1 { "h_o" } else { "h_e" };
    text.push_str(&format!(
        "verdict: {}\n",
        if r.verdict { format!("{name} outside t^f_2") } else { "inconclusive".into() }
    ));
    let mut out = Outcome { json: serde_json::to_value(&r)?, text, csv: None, ok: r.verdict };
    if cfg.oracle {
        let o = if d <= CROSSCHECK_MAX_D {
            Oracle::of(vec![crosscheck_witness(d)?])
        } else {
            Oracle::skipped(format!("dense traces limited to d <= {CROSSCHECK_MAX_D}"))
        };
        o.attach(&mut out);
    }
    Ok(out)
}

fn gap(cfg: &RunConfig, m: usize, ds: &[usize], count: u64) -> Res {
    if ds.is_empty() || count == 0 {
        return Err(CliError::input("need at least one d and one seed"));
    }
    let seeds = cfg.seed..cfg.seed + count;
    let rows = gap_scan(ds, m, seeds.clone())?;
    let violations = rows.iter().filter(|r| !r.within_bound()).count();
    let degenerate = rows.iter().filter(|r| r.degenerate).count();
    let mut text = format!("{:>6} {:>6} {:>14} {:>14} {:>5}\n", "seed", "d", "gap", "bound", "ok");
    let per_seed = ds.len();
    for (i, r) in rows.iter().enumerate() {
        let seed = cfg.seed + (i / per_seed) as u64;
        let ok = if r.within_bound() { "yes" } else { "NO" };
        text.push_str(&format!("{seed:>6} {:>6} {:>14.6e} {:>14.6e} {ok:>5}\n", r.d, r.gap, r.bound));
    }
    text.push_str(&format!("{} rows, {} degenerate, {} above the bound\n", rows.len(), degenerate, violations));
    let mut out = Outcome {
        json: json!({ "M": m, "seeds": [seeds.start, seeds.end], "rows": rows, "violations": violations }),
        text,
        csv: Some(gap_scan_csv(&rows)),
        ok: violations == 0,
    };
    if cfg.oracle {
        let mut checks = Vec::new();
        for &d in ds.iter().filter(|&&d| d <= 6 && d >= m) {
            for seed in seeds.clone().take(5) {
                let (a, b) = random_gap_coefficients(m, seed);
                let h = gap_model(d, m, &a, &b)?;
                let (blk, dns) = (ti_gap(&h)?, dense_gap(&h)?);
                checks.push(check(format!("gap d={d} seed={seed}"), blk.gap, dns.gap, 1e-8));
            }
        }
        let o = if checks.is_empty() { Oracle::skipped("dense spectra limited to d <= 6") } else { Oracle::of(checks) };
        o.attach(&mut out);
    }
    Ok(out)
}

fn state_oracle(gs: &[&CovarianceMatrix]) -> Result<Oracle, CliError> {
    if gs.iter().any(|g| g.d() > MAX_STATE_MODES) {
        return Ok(Oracle::skipped(format!("dense states limited to d <= {MAX_STATE_MODES}")));
    }
    let mut checks = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        let rho = quasifree_state_dense(g)?;
        let back = covariance_of(&rho)?;
        let diff = (back - g.matrix()).amax();
        checks.push(CrossCheck {
            check: format!("covariance {} from dense state", i + 1),
            sparse: vec![0.0],
            dense: vec![diff],
            max_diff: diff,
            pass: diff < 1e-9,
        });
    }
    Ok(Oracle::of(checks))
}

fn quasifree(cfg: &RunConfig, cmd: &QuasifreeCmd) -> Res {
    match cmd {
        QuasifreeCmd::Orbit { g1, g2 } => {
            let (a, b) = (read_covariance(g1)?, read_covariance(g2)?);
            if a.d() != b.d() {
                return Err(CliError::input("covariance matrices differ in size"));
            }
            let (sa, sb) = (singular_values(a.matrix()), singular_values(b.matrix()));
            let same = same_orbit(&a, &b);
            let connected = same_orbit_connected(&a, &b);
            let text = format!(
                "singular values 1: {}\nsingular values 2: {}\nsame_orbit: {same}\nsame_orbit (SO(2d)): {connected}\n",
                fmt_list(&sa),
                fmt_list(&sb)
            );
            let mut out = Outcome {
                json: json!({ "same_orbit": same, "same_orbit_connected": connected, "singular_values": [sa, sb] }),
                text,
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                state_oracle(&[&a, &b])?.attach(&mut out);
            }
            Ok(out)
        }
        QuasifreeCmd::Canonical { g } => {
            let g = read_covariance(g)?;
            let cf = canonical_form(&g);
            let pure = is_pure(&g);
            let text = format!(
                "singular values: {}\npure: {pure}\nlast block sign: {}\nrotation O:\n{}",
                fmt_list(&cf.nu),
                cf.last_sign,
                matrix_text(&cf.o)
            );
            let mut out = Outcome {
                json: json!({ "singular_values": cf.nu, "pure": pure, "last_sign": cf.last_sign, "O": matrix_json(&cf.o) }),
                text,
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                state_oracle(&[&g])?.attach(&mut out);
            }
            Ok(out)
        }
        QuasifreeCmd::Random { d } => {
            if *d == 0 {
                return Err(CliError::input("need d >= 1"));
            }
            let g = random_pure_covariance(*d, cfg.seed);
            let mut out = Outcome { json: json!({ "G": matrix_json(g.matrix()) }), text: matrix_text(g.matrix()), csv: None, ok: true };
            if cfg.oracle {
                state_oracle(&[&g])?.attach(&mut out);
            }
            Ok(out)
        }
        QuasifreeCmd::Evolve { g, t_matrix, time } => {
            let g = read_covariance(g)?;
            let t = read_generator(t_matrix)?;
            let e = evolve_covariance(&g, &t, *time)?;
            let mut out = Outcome {
                json: json!({ "G": matrix_json(e.matrix()), "singular_values": singular_values(e.matrix()) }),
                text: matrix_text(e.matrix()),
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                state_oracle(&[&g, &e])?.attach(&mut out);
            }
            Ok(out)
        }
        QuasifreeCmd::Controllable { input, preset, d } => {
            let (label, gens) = load_gens(cfg, input, preset, *d)?;
            let (pure, tensor) = match &gens {
                Gens::Exact(g) => controllability::<Q>(g)?,
                Gens::Float(g) => controllability::<f64>(g)?,
            };
            let text = format!(
                "generators {label}\nclosure dim {} ({})\npure-state controllable: {} (tangent {} of {})\ntensor-square commutant {}: {:?}\n",
                pure.closure_dim, pure.label, pure.controllable, pure.tangent_dim, pure.required, tensor.0, tensor.1
            );
            let mut out = Outcome {
                json: json!({ "input": label, "pure": pure, "tensor_square": { "commutant_dim": tensor.0, "verdict": tensor.1 } }),
                text,
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                dense_oracle_closure(&format!("closure {label}"), &gens.to_f64(), pure.closure_dim)?.attach(&mut out);
            }
            Ok(out)
        }
    }
}

type Verdicts = (fermilie::quasifree::PureVerdict, (usize, fermilie::quasifree::TensorVerdict));

fn controllability<F: ScalarField>(gens: &[SparseOperator<F>]) -> Result<Verdicts, CliError> {
    let ts: Vec<Mat<F>> = gens.iter().map(operator_to_t).collect::<fermilie::Result<_>>()?;
    Ok((quasifree_pure_controllable(&ts)?, tensor_square_controllable(&ts)?))
}

/// A `T` matrix, or a single quadratic operator in the operator JSON format.
fn read_generator(path: &PathBuf) -> Result<nalgebra::DMatrix<f64>, CliError> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if matches!(&v, Value::Object(o) if o.contains_key("rep")) {
        let ops = parse_generators(&text)?;
        let op = ops[0].to_f64();
        return Ok(operator_to_t(&op)?.to_dmatrix());
    }
    let t = read_matrix(path)?;
    if (&t + t.transpose()).amax() > 1e-12 {
        return Err(CliError::input("generator matrix must be antisymmetric"));
    }
    Ok(t)
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.10}")).collect::<Vec<_>>().join(" ")
}

fn ti(cfg: &RunConfig, cmd: &TiCmd) -> Res {
    match cmd {
        TiCmd::Invariants { g } => {
            let g = read_covariance(g)?;
            let inv = ti_orbit_invariants(&g)?;
            let ell = ell_expectations(&g)?;
            let blocks = fourier_blocks(&g)?;
            let mut text = format!("invariants: {}\n<l^Q_k> (k: 1 X Y Z):\n", fmt_list(&inv));
            for (k, e) in ell.iter().enumerate() {
                text.push_str(&format!("  {k:>3}: {:>10.6} {:>10.6} {:>10.6} {:>10.6}\n", e[0], e[1], e[2], e[3]));
            }
            let block_json: Vec<Value> = blocks
                .blocks
                .iter()
                .map(|b| json!([[[b[(0, 0)].re, b[(0, 0)].im], [b[(0, 1)].re, b[(0, 1)].im]], [[b[(1, 0)].re, b[(1, 0)].im], [b[(1, 1)].re, b[(1, 1)].im]]]))
                .collect();
            let mut out = Outcome {
                json: json!({ "invariants": inv, "ell": ell, "blocks": block_json }),
                text,
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                state_oracle(&[&g])?.attach(&mut out);
            }
            Ok(out)
        }
        TiCmd::Orbit { g1, g2 } => {
            let (a, b) = (read_covariance(g1)?, read_covariance(g2)?);
            let (ia, ib) = (ti_orbit_invariants(&a)?, ti_orbit_invariants(&b)?);
            let rot = connecting_block_rotation(&a, &b)?;
            let same = rot.is_some();
            let mut text = format!(
                "invariants 1: {}\ninvariants 2: {}\nsame TI orbit: {same}\n",
                fmt_list(&ia),
                fmt_list(&ib)
            );
            if let Some(o) = &rot {
                text.push_str(&format!("connecting rotation:\n{}", matrix_text(o)));
            }
            let mut out = Outcome {
                json: json!({ "same_orbit": same, "invariants": [ia, ib], "rotation": rot.as_ref().map(matrix_json) }),
                text,
                csv: None,
                ok: true,
            };
            if cfg.oracle {
                state_oracle(&[&a, &b])?.attach(&mut out);
            }
            Ok(out)
        }
        TiCmd::Structure { d, rsym, m } => {
            let r = match cfg.field {
                Field::Exact => qd_structure::<Q>(*d, *rsym, *m)?,
                Field::Float => qd_structure::<f64>(*d, *rsym, *m)?,
            };
            let ok = !cfg.diff || r.matches;
            let text = format!(
                "{}predicted {}\nmatches: {}\n",
                report_text(&r.computed),
                r.predicted,
                r.matches
            );
            let mut out = Outcome { json: serde_json::to_value(&r)?, text, csv: None, ok };
            if cfg.oracle {
                qd_oracle(std::slice::from_ref(&r))?.attach(&mut out);
            }
            Ok(out)
        }
        TiCmd::Random { d } => {
            let g = random_ti_pure_state(*d, cfg.seed)?;
            let mut out = Outcome { json: json!({ "G": matrix_json(g.matrix()) }), text: matrix_text(g.matrix()), csv: None, ok: true };
            if cfg.oracle {
                state_oracle(&[&g])?.attach(&mut out);
            }
            Ok(out)
        }
    }
}

fn particle_number(cfg: &RunConfig, cmd: &NcCmd) -> Res {
    match cmd {
        NcCmd::Structure { d } => {
            let s = general_nc_structure(*d)?;
            let mut text = format!("predicted {}\n", s.predicted);
            if let Some(c) = &s.computed {
                text.push_str(&format!("computed {} (dim {})\nmatches: {}\n", c.structure, c.dim, s.matches == Some(true)));
            }
            let ok = !cfg.diff || s.matches != Some(false);
            let mut out = Outcome { json: serde_json::to_value(&s)?, text, csv: None, ok };
            if cfg.oracle {
                let o = match &s.computed {
                    Some(c) => dense_oracle_closure("number-conserving closure", &nc_generators::<f64>(*d)?, c.dim)?,
                    None => Oracle::skipped("no sparse closure at this d"),
                };
                o.attach(&mut out);
            }
            Ok(out)
        }
        NcCmd::Controllable { family, d, n } => {
            let gens = match family.as_str() {
                "u" => u_basis(*d),
                "sp" => sp_basis(*d)?,
                other => return Err(CliError::input(format!("unknown family {other:?} (use u or sp)"))),
            };
            let v = nc_pure_controllable(&gens, *n)?;
            let text = format!(
                "closure dim {} ({})\n{n}-particle pure-state controllable: {}\n",
                v.closure_dim, v.label, v.transitive
            );
            let mut out = Outcome { json: serde_json::to_value(&v)?, text, csv: None, ok: true };
            if cfg.oracle {
                // bases hold hermitian A; the generator is iA
                let ts: Vec<Mat<Q>> = gens
                    .iter()
                    .map(|a| (a.1.neg(), a.0.clone()))
                    .map(|x| fermilie::particle_number::iota_inverse(&x).map(|h| fermilie::quasifree::ham_to_t(&h)))
                    .collect::<fermilie::Result<_>>()?;
                let sparse = matrix_closure(&ts)?.dim();
                let ops = ts.iter().map(t_to_operator).collect::<fermilie::Result<Vec<_>>>()?;
                let ops: Vec<SparseOperator<f64>> = ops.iter().filter(|o| !o.is_zero()).map(|o| o.to_f64()).collect();
                dense_oracle_closure("one-body closure", &ops, sparse)?.attach(&mut out);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_sizes;

    #[test]
    fn size_ranges() {
        assert_eq!(parse_sizes("2..5").ok().unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_sizes("2..=4").ok().unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_sizes("3,7").ok().unwrap(), vec![3, 7]);
        assert!(parse_sizes("x").is_err());
        assert!(parse_sizes("5..2").is_err());
    }
}
