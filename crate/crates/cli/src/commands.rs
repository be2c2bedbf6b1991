use std::fs;
use std::path::Path;

use orsep::bounds::{
    counting_certificate, exact_or2, nechiporuk_lower, report_to_csv, report_to_json,
    separation_report, BoundsError, Family, ReportOptions,
};
use orsep::circuits::{depth3_complement_circuit, sampled_verify, trivial_circuit, SampleOutcome};
use orsep::matrices::{
    brown_matrix, count_2_rectangles, is_k_free, norm_matrix, pair_transform, random_k_free,
    random_matrix, Freeness, PairTransform, TransformMode,
};
use orsep::{BooleanMatrix, RectifierCircuit};

use crate::args::{
    BoundCommand, CircuitKind, Command, FamilyKind, GenCommand, RandomShape, ReportArgs,
};
use crate::error::{CliError, Exit};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen(g) => gen(g),
        Command::Transform {
            input,
            out,
            stats_only,
        } => transform(&input, out.as_deref(), stats_only),
        Command::Circuit {
            kind,
            input,
            out,
            dot,
        } => circuit(kind, &input, &out, dot.as_deref()),
        Command::Eval { circuit, out } => {
            let c = read_circuit(&circuit)?;
            write(&out, &c.implemented_matrix()?.to_text())
        }
        Command::Verify {
            circuit,
            matrix,
            samples,
            seed,
        } => verify(&circuit, &matrix, samples, seed),
        Command::Analyze {
            input,
            k,
            certificate,
        } => analyze(&input, k, certificate),
        Command::Bound(b) => bound(b),
        Command::Report(r) => report(r),
    }
}

fn read_matrix(path: &Path) -> Result<BooleanMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    BooleanMatrix::parse_text(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<RectifierCircuit> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    RectifierCircuit::from_json(&text).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn check_density(shape: &RandomShape) -> Result<()> {
    if (0.0..=1.0).contains(&shape.density) {
        Ok(())
    } else {
        Err(CliError::invalid(format!(
            "density must lie in [0, 1], got {}",
            shape.density
        )))
    }
}

fn gen(g: GenCommand) -> Result<()> {
    match g {
        GenCommand::Brown { p, delta, out } => {
            let b = brown_matrix(p, delta)?;
            write(&out, &b.matrix.to_text())?;
            println!("delta: {}", b.delta);
            println!("sphere size: {}", b.sphere_size);
            println!("3-free verified: {}", b.three_free_verified);
        }
        GenCommand::Norm { q, t, out } => {
            let a = norm_matrix(q, t)?;
            write(&out, &a.to_text())?;
            println!("size: {}", a.rows());
        }
        GenCommand::Random { shape, out } => {
            check_density(&shape)?;
            let a = random_matrix(shape.rows, shape.cols, shape.density, shape.seed);
            write(&out, &a.to_text())?;
            println!("weight: {}", a.weight());
        }
        GenCommand::RandomKfree { shape, k, out } => {
            check_density(&shape)?;
            if k < 2 {
                return Err(CliError::invalid(format!("k must be at least 2, got {k}")));
            }
            let a = random_k_free(shape.rows, shape.cols, shape.density, k, shape.seed);
            write(&out, &a.to_text())?;
            println!("weight: {}", a.weight());
        }
    }
    Ok(())
}

fn transform(input: &Path, out: Option<&Path>, stats_only: bool) -> Result<()> {
    let a = read_matrix(input)?;
    if stats_only {
        // Validates shape and size the same way as the materializing path.
        let PairTransform::Stats(s) = pair_transform(&a, TransformMode::StatsOnly)? else {
            unreachable!("stats mode returns stats")
        };
        println!("sigma: {}", s.sigma);
        println!("weightB: {}", s.two_rectangles);
        return Ok(());
    }
    let out = out.ok_or_else(|| CliError::invalid("--out is required unless --stats-only"))?;
    let PairTransform::Matrix(b) = pair_transform(&a, TransformMode::Materialize)? else {
        unreachable!("materialize mode returns a matrix")
    };
    write(out, &b.to_text())?;
    println!("weightB: {}", b.weight());
    Ok(())
}

fn circuit(kind: CircuitKind, input: &Path, out: &Path, dot: Option<&Path>) -> Result<()> {
    let a = read_matrix(input)?;
    let c = match kind {
        CircuitKind::Trivial => trivial_circuit(&a)?,
        CircuitKind::Depth3 => depth3_complement_circuit(&a)?,
    };
    write(out, &c.to_json())?;
    if let Some(dot) = dot {
        write(dot, &c.to_dot())?;
    }
    println!("nodes: {}", c.node_count());
    println!("complexity: {}", c.complexity());
    println!("depth: {}", c.depth());
    Ok(())
}

fn verify(circuit: &Path, matrix: &Path, samples: Option<u64>, seed: u64) -> Result<()> {
    let c = read_circuit(circuit)?;
    let a = read_matrix(matrix)?;
    if (c.outputs().len(), c.inputs().len()) != (a.rows(), a.cols()) {
        return Err(CliError::invalid(format!(
            "circuit has {} outputs and {} inputs, matrix is {}x{}",
            c.outputs().len(),
            c.inputs().len(),
            a.rows(),
            a.cols()
        )));
    }
    let mismatch = match samples {
        Some(samples) => {
            println!("tier: sampled ({samples} entries, seed {seed})");
            match sampled_verify(&c, |i, j| a.get(i, j), samples, seed) {
                SampleOutcome::Pass { .. } => None,
                SampleOutcome::Mismatch {
                    row,
                    col,
                    expected,
                    found,
                } => Some((row, col, expected, found)),
            }
        }
        None => {
            println!("tier: direct");
            let m = c.implemented_matrix()?;
            (0..a.rows())
                .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| m.get(i, j) != a.get(i, j))
                .map(|(i, j)| (i, j, a.get(i, j), m.get(i, j)))
        }
    };
    match mismatch {
        None => {
            println!("verified: true");
            Ok(())
        }
        Some((row, col, expected, found)) => {
            println!("verified: false");
            println!(
                "counterexample: row {row}, col {col}: matrix {}, circuit {}",
                expected as u8, found as u8
            );
            Err(CliError::failed("circuit does not implement the matrix"))
        }
    }
}

fn analyze(input: &Path, k: Option<usize>, certificate: bool) -> Result<()> {
    let a = read_matrix(input)?;
    let weights = a.row_weights();
    println!("rows: {}", a.rows());
    println!("cols: {}", a.cols());
    println!("weight: {}", a.weight());
    if let (Some(lo), Some(hi)) = (weights.iter().min(), weights.iter().max()) {
        println!("row weight: min {lo} max {hi}");
    }
    let mut ok = true;
    if let Some(k) = k {
        if k < 2 {
            return Err(CliError::invalid(format!("k must be at least 2, got {k}")));
        }
        match is_k_free(&a, k)? {
            Freeness::Free => println!("{k}-free: true"),
            Freeness::Contains(w) => {
                println!("{k}-free: false");
                println!("witness rows: {:?}", w.rows);
                println!("witness cols: {:?}", w.cols);
                ok = false;
            }
        }
    }
    if certificate {
        if !a.is_square() {
            return Err(CliError::invalid("--certificate needs a square matrix"));
        }
        let stats = count_2_rectangles(&a)?;
        let cert = counting_certificate(&a)?;
        println!("sigma: {}", stats.sigma);
        println!("2-rectangles: {}", stats.two_rectangles);
        println!("sigma convexity: {}", cert.sigma_convexity);
        println!("count convexity: {}", cert.count_convexity);
        println!("dense: {}", cert.dense);
        let show = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
        println!("sigma >= |A|^2/(4n): {}", show(cert.sigma_quarter));
        println!("count >= sigma^2/(2n^2): {}", show(cert.count_half_square));
        println!(
            "certificate: {}",
            if cert.passed() { "pass" } else { "fail" }
        );
        ok &= cert.passed();
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::failed("requested check failed"))
    }
}

fn bound(b: BoundCommand) -> Result<()> {
    match b {
        BoundCommand::Nechiporuk {
            input,
            big_k,
            budget,
        } => {
            let a = read_matrix(&input)?;
            if big_k < 2 {
                return Err(CliError::invalid(format!(
                    "K must be at least 2, got {big_k}"
                )));
            }
            let cert = nechiporuk_lower(&a, big_k, budget)?;
            println!("K: {}", cert.k);
            println!("weight: {}", cert.weight);
            println!("{}-free: true", cert.k);
            println!("lower bound: {}", cert.bound);
            if let Some(exact) = cert.exact_or {
                println!("exact OR: {exact}");
            }
            Ok(())
        }
        BoundCommand::Or2 { input, budget, out } => {
            let a = read_matrix(&input)?;
            let (cover, exact) = match exact_or2(&a, budget) {
                Ok(sol) => {
                    println!("or2: {}", sol.cost);
                    println!("expanded: {}", sol.expanded);
                    (sol.cover, true)
                }
                Err(BoundsError::Or2BudgetExceeded { expanded, best }) => {
                    println!("or2 upper: {}", best.cost);
                    println!("expanded: {expanded}");
                    (*best, false)
                }
                Err(e) => return Err(e.into()),
            };
            let wires: Vec<String> = cover
                .direct_wires
                .iter()
                .map(|(i, j)| format!("({i},{j})"))
                .collect();
            println!("wires: {}", wires.join(" "));
            for r in &cover.rectangles {
                println!("rectangle: rows {:?} cols {:?}", r.rows, r.cols);
            }
            if let Some(out) = out {
                write(&out, &cover.to_circuit(a.rows(), a.cols())?.to_json())?;
            }
            if exact {
                Ok(())
            } else {
                Err(CliError {
                    exit: Exit::ResourceLimit,
                    message: "search budget exhausted; printed cover is an upper bound".into(),
                })
            }
        }
    }
}

fn parse_qt(s: &str) -> Result<(u64, u32)> {
    let bad = || CliError::invalid(format!("expected q:t, got {s:?}"));
    let (q, t) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        q.trim().parse().map_err(|_| bad())?,
        t.trim().parse().map_err(|_| bad())?,
    ))
}

fn report(r: ReportArgs) -> Result<()> {
    let families: Vec<Family> = match r.family {
        FamilyKind::Brown => r.p.iter().map(|&p| Family::Brown { p }).collect(),
        FamilyKind::Norm => {
            r.qt.iter()
                .map(|s| parse_qt(s).map(|(q, t)| Family::Norm { q, t }))
                .collect::<Result<_>>()?
        }
    };
    if families.is_empty() {
        return Err(CliError::invalid("no parameters given (--p or --qt)"));
    }
    let opts = ReportOptions {
        samples: r.samples,
        seed: r.seed,
        ..ReportOptions::default()
    };
    let rows = separation_report(&families, &opts)?;
    write(&r.out, &report_to_csv(&rows))?;
    if let Some(json) = &r.json {
        write(json, &report_to_json(&rows))?;
    }
    let mut all = true;
    for row in &rows {
        let c = &row.checks;
        println!(
            "{} {}: ratioLB {} B {:?} circuit {:?} verified {}",
            row.family.tag(),
            row.family.param(),
            row.ratio_lb,
            c.b_tier,
            c.circuit_tier,
            row.verified()
        );
        all &= row.verified();
    }
    if all {
        Ok(())
    } else {
        Err(CliError::failed("some rows failed verification"))
    }
}
