use std::path::Path;
use std::thread;

use gassmann::catalog::{duality_automorphism, psl_triple, psl_triple_on_points, FLAGSHIP};
use gassmann::constructions::{add_kernel, direct_power, from_stanza};
use gassmann::drums::{
    boundary_polygon, domain_to_json, export_svg, unfold, BaseTile, DomainFile, ExactField, Polygon, Sqrt3,
};
use gassmann::spectral::{dirichlet_eigenvalues, rasterize, GridMask, SpectrumResult};
use gassmann::transplant::{find_transplantation, Invertibility, InvolutionSystem};
use gassmann::triples::{verify, GroupSpec, TripleSpec, VerifyOptions};
use gassmann::Bounds;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::io::{self, emit, json_text, read, require_file, require_parent, CliResult, Failure};
use crate::{CatalogCommand, Cli, Command, ConstructArgs, GridArgs, Prop, TileKind, VerifyArgs};

/// Shared settings derived from the global flags.
pub struct Ctx {
    pub seed: u64,
    pub threads: usize,
    pub json: bool,
    pub verbose: bool,
    pub bounds: Bounds,
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    let mut bounds = Bounds::from_env();
    if let Some(b) = cli.bound {
        bounds.enumeration = b;
    }
    if let Some(i) = cli.index_bound {
        bounds.index = i;
    }
    if bounds.enumeration == 0 || bounds.index == 0 {
        return Err(Failure::parse("bounds must be positive"));
    }
    let threads = match cli.threads {
        Some(0) => return Err(Failure::parse("--threads must be positive")),
        Some(t) => t,
        None => thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let ctx = Ctx {
        seed: cli.seed,
        threads,
        json: cli.json,
        verbose: cli.verbose > 0,
        bounds,
    };
    match &cli.command {
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Construct(a) => cmd_construct(&ctx, a),
        Command::Transplant { a, b } => cmd_transplant(&ctx, a, b),
        Command::Unfold { system, tile, svg, out } => cmd_unfold(&ctx, system, *tile, svg.as_deref(), out.as_deref()),
        Command::Spectrum { domain, grid } => cmd_spectrum(&ctx, domain, grid),
        Command::SpectrumCompare { a, b, grid, tol } => cmd_compare(&ctx, a, b, grid, *tol),
        Command::Catalog(c) => cmd_catalog(&ctx, c),
        Command::Scan { spec, n_max, r, out_dir } => cmd_scan(&ctx, spec, *n_max, *r, out_dir.as_deref()),
        Command::Gww(a) => crate::pipeline::run(&ctx, a),
    }
}

fn load_spec(path: &Path) -> CliResult<TripleSpec> {
    require_file(path)?;
    Ok(TripleSpec::parse(&read(path)?)?)
}

fn load_system(path: &Path) -> CliResult<InvolutionSystem> {
    require_file(path)?;
    InvolutionSystem::parse(&read(path)?).map_err(|e| Failure::from(e).at(&path.display().to_string()))
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> CliResult<u8> {
    let spec = load_spec(&a.spec)?;
    let t = spec.to_triple()?;
    let mut opts = VerifyOptions {
        r: a.r,
        tree_required: !a.no_tree,
        pair_candidate: spec.pair_images()?,
        bounds: ctx.bounds,
        ..VerifyOptions::default()
    };
    if let Some(props) = &a.props {
        let on = |p: Prop| props.contains(&p);
        opts.ac = on(Prop::Ac);
        opts.ec = on(Prop::Ec);
        opts.ff = on(Prop::Ff);
        opts.max = on(Prop::Max);
        opts.pair = on(Prop::Pair);
        opts.inv = on(Prop::Inv);
    }
    let rep = verify(&t, &opts)?;
    if ctx.json {
        println!("{}", rep.to_json()?);
    } else {
        print!("{}", rep.to_text());
    }
    Ok(if !rep.all_hold() {
        io::FAILS
    } else if rep.any_undecided() {
        io::BOUND
    } else {
        io::OK
    })
}

fn variant_number(v: &str) -> Option<u8> {
    match v {
        "1" | "I" => Some(1),
        "2" | "II" => Some(2),
        "3" | "III" => Some(3),
        _ => None,
    }
}

fn cmd_construct(ctx: &Ctx, a: &ConstructArgs) -> CliResult<u8> {
    let spec = load_spec(&a.spec)?;
    if let Some(k) = &a.kernel {
        require_file(k)?;
    }
    if let Some(o) = &a.out {
        require_parent(o)?;
    }
    let base = spec.to_triple()?;
    let result = if let Some(k) = &a.kernel {
        let e = GroupSpec::parse(&read(k)?)?.to_group()?;
        add_kernel(&base, &e, &ctx.bounds)?
    } else if let Some(k) = a.power {
        direct_power(&base, k, &ctx.bounds)?
    } else {
        let stanza = spec
            .construct
            .as_ref()
            .ok_or_else(|| Failure::parse("spec has no `construct` stanza"))?;
        if let Some(kind) = &a.kind {
            if variant_number(kind) != variant_number(&stanza.variant) {
                return Err(Failure::parse(format!(
                    "--type {kind} does not match the stanza variant {:?}",
                    stanza.variant
                )));
            }
        }
        from_stanza(&base, stanza, &ctx.bounds)?
    };
    let out_spec = if TripleSpec::from_triple(&result) == TripleSpec::from_triple(&base) {
        // nothing changed: hand the input back, minus the stanza
        TripleSpec {
            construct: None,
            ..spec
        }
    } else {
        TripleSpec::from_triple(&result)
    };
    eprintln!(
        "{}: degree {}, |G| = {}, |H| = {}, [G:H] = {}",
        result.label,
        result.degree(),
        result.g().order(),
        result.h().order(),
        result.index_h()
    );
    emit(a.out.as_deref(), &out_spec.to_yaml())?;
    Ok(io::OK)
}

fn big(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn cmd_transplant(ctx: &Ctx, a: &Path, b: &Path) -> CliResult<u8> {
    let (sa, sb) = (load_system(a)?, load_system(b)?);
    let Some(sol) = find_transplantation(&sa, &sb)? else {
        if ctx.json {
            print!("{}", json_text(&json!({"schema": 1, "intertwiner_dimension": 0, "invertible": false})));
        } else {
            println!("no intertwiner: only T = 0 solves the equation");
        }
        return Ok(io::FAILS);
    };
    let status = match &sol.status {
        Invertibility::Invertible => "invertible".to_string(),
        Invertibility::ProvedSingular { class_witness } => {
            format!("singular (characters differ at {class_witness})")
        }
        Invertibility::SearchExhausted => "no invertible combination found".to_string(),
    };
    let perm = sol.permutation_solution.as_ref().map(|p| p.to_string());
    if ctx.json {
        let v = json!({
            "schema": 1,
            "intertwiner_dimension": sol.basis.len(),
            "invertible": sol.invertible(),
            "status": status,
            "determinant": big(&sol.determinant),
            "matrix": sol.matrix.iter().map(|r| r.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "permutation_solution": perm,
        });
        print!("{}", json_text(&v));
    } else {
        println!("intertwiner space: dimension {}", sol.basis.len());
        println!("T =");
        for row in &sol.matrix {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            println!("  [{}]", cells.join(" "));
        }
        println!("det T = {}", sol.determinant);
        println!("status: {status}");
        match &perm {
            Some(p) => println!("permutation solution: {p}"),
            None => println!("permutation solution: none"),
        }
    }
    Ok(if sol.invertible() { io::OK } else { io::FAILS })
}

fn cmd_unfold(ctx: &Ctx, system: &Path, tile: TileKind, svg: Option<&Path>, out: Option<&Path>) -> CliResult<u8> {
    let sys = load_system(system)?;
    for p in svg.iter().chain(out.iter()) {
        require_parent(p)?;
    }
    match tile {
        TileKind::HalfSquare => unfold_with(ctx, &sys, &BaseTile::<BigRational>::half_square(), svg, out),
        TileKind::Equilateral => unfold_with(ctx, &sys, &BaseTile::<Sqrt3>::equilateral(), svg, out),
    }
}

fn unfold_with<F: ExactField>(
    ctx: &Ctx,
    sys: &InvolutionSystem,
    tile: &BaseTile<F>,
    svg: Option<&Path>,
    out: Option<&Path>,
) -> CliResult<u8> {
    let d = unfold(sys, tile)?;
    let boundary = if d.overlap { None } else { boundary_polygon(&d).ok() };
    if let Some(p) = out {
        io::write(p, &domain_to_json(&d)?)?;
    }
    if let Some(p) = svg {
        io::write(p, &export_svg(&d))?;
    }
    let shape = boundary.as_ref().map(describe_polygon);
    if ctx.json {
        let v = json!({
            "schema": 1,
            "field": F::NAME,
            "tiles": d.n_tiles(),
            "overlap": d.overlap,
            "boundary": shape,
        });
        print!("{}", json_text(&v));
    } else {
        println!("{} tiles over {}, overlap: {}", d.n_tiles(), F::NAME, d.overlap);
        match shape {
            Some(s) => println!(
                "boundary: {} vertices, area {}, perimeter {}",
                s["vertices"], s["area"], s["perimeter"]
            ),
            None => println!("boundary: not a simple polygon"),
        }
    }
    Ok(io::OK)
}

pub fn describe_polygon<F: ExactField>(p: &Polygon<F>) -> Value {
    let perimeter = p.perimeter().map(|s| s.to_string()).unwrap_or_else(|_| "irrational".into());
    json!({
        "vertices": p.len(),
        "area": p.area().approx(),
        "perimeter": perimeter,
    })
}

fn polygon_of<F: ExactField>(file: &DomainFile) -> CliResult<Polygon<F>> {
    if let Some(p) = file.boundary::<F>()? {
        return Ok(p);
    }
    let d = file.domain::<F>()?;
    if d.overlap {
        return Err(Failure::fails("domain overlaps itself"));
    }
    Ok(boundary_polygon(&d)?)
}

pub fn mask_of<F: ExactField>(p: &Polygon<F>, h: &BigRational) -> CliResult<GridMask> {
    Ok(rasterize(p, h)?)
}

fn load_mask(path: &Path, h: &BigRational) -> CliResult<GridMask> {
    require_file(path)?;
    let file = DomainFile::parse(&read(path)?)?;
    let at = |e: Failure| e.at(&path.display().to_string());
    match file.field.as_str() {
        <BigRational as ExactField>::NAME => mask_of(&polygon_of::<BigRational>(&file).map_err(at)?, h),
        <Sqrt3 as ExactField>::NAME => mask_of(&polygon_of::<Sqrt3>(&file).map_err(at)?, h),
        other => Err(Failure::parse(format!("{}: unknown field {other:?}", path.display()))),
    }
}

/// Both spectra, on two threads when allowed. The result does not depend on
/// the thread count.
pub fn solve_pair(ctx: &Ctx, a: &GridMask, b: &GridMask, k: usize) -> CliResult<(SpectrumResult, SpectrumResult)> {
    let (ra, rb) = if ctx.threads >= 2 {
        thread::scope(|s| {
            let ha = s.spawn(|| dirichlet_eigenvalues(a, k, ctx.seed));
            let rb = dirichlet_eigenvalues(b, k, ctx.seed);
            (ha.join().expect("solver thread panicked"), rb)
        })
    } else {
        (dirichlet_eigenvalues(a, k, ctx.seed), dirichlet_eigenvalues(b, k, ctx.seed))
    };
    Ok((ra?, rb?))
}

/// 1% on grids at least as fine as 1/64, 2% on coarser ones.
pub fn default_tol(h: &BigRational) -> f64 {
    if *h <= BigRational::new(1.into(), 64.into()) {
        0.01
    } else {
        0.02
    }
}

fn cmd_spectrum(ctx: &Ctx, domain: &Path, grid: &GridArgs) -> CliResult<u8> {
    let h = io::parse_spacing(&grid.h)?;
    let mask = load_mask(domain, &h)?;
    let r = dirichlet_eigenvalues(&mask, grid.k, ctx.seed)?;
    if ctx.json {
        let v = json!({
            "schema": 1,
            "h": h.to_string(),
            "nodes": r.nodes,
            "k": r.k,
            "eigenvalues": r.eigenvalues,
        });
        print!("{}", json_text(&v));
    } else {
        println!("h = {h}, {} interior nodes", r.nodes);
        for (i, e) in r.eigenvalues.iter().enumerate() {
            println!("λ{:<3} {e:.8}", i + 1);
        }
    }
    Ok(io::OK)
}

fn cmd_compare(ctx: &Ctx, a: &Path, b: &Path, grid: &GridArgs, tol: Option<f64>) -> CliResult<u8> {
    let h = io::parse_spacing(&grid.h)?;
    let (ma, mb) = (load_mask(a, &h)?, load_mask(b, &h)?);
    let (ra, rb) = solve_pair(ctx, &ma, &mb, grid.k)?;
    let gaps = gassmann::spectral::relative_gaps(&ra.eigenvalues, &rb.eigenvalues);
    let tol = tol.unwrap_or_else(|| default_tol(&h));
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    let pass = worst < tol;
    if ctx.json {
        let v = json!({
            "schema": 1,
            "h": h.to_string(),
            "a": ra.eigenvalues,
            "b": rb.eigenvalues,
            "gaps": gaps,
            "tolerance": tol,
            "pass": pass,
        });
        print!("{}", json_text(&v));
    } else {
        println!("h = {h}: {} and {} interior nodes", ra.nodes, rb.nodes);
        for (i, ((x, y), g)) in ra.eigenvalues.iter().zip(&rb.eigenvalues).zip(&gaps).enumerate() {
            println!("λ{:<3} {x:>14.8} {y:>14.8}  gap {:.4}%", i + 1, g * 100.0);
        }
        println!(
            "{} largest gap {:.4}% (tolerance {}%)",
            if pass { "PASS" } else { "FAIL" },
            worst * 100.0,
            tol * 100.0
        );
    }
    Ok(if pass { io::OK } else { io::FAILS })
}

fn cmd_catalog(ctx: &Ctx, c: &CatalogCommand) -> CliResult<u8> {
    match c {
        CatalogCommand::List => {
            let mut rows = Vec::new();
            for (n, q) in FLAGSHIP {
                let t = psl_triple(n, q)?;
                rows.push(json!({
                    "n": n,
                    "q": q,
                    "label": t.label,
                    "degree": t.degree(),
                    "order": t.g().order().to_string(),
                    "index": t.index_h().to_string(),
                }));
                if !ctx.json {
                    println!(
                        "{:<10} degree {:>3}  |G| = {:<8} index {}",
                        t.label,
                        t.degree(),
                        t.g().order(),
                        t.index_h()
                    );
                }
            }
            if ctx.json {
                print!("{}", json_text(&json!({"schema": 1, "triples": rows})));
            }
            Ok(io::OK)
        }
        CatalogCommand::Emit { nq, points, out } => {
            let [n, q] = nq[..] else {
                return Err(Failure::parse("--nq takes two values, n and q"));
            };
            if let Some(o) = out {
                require_parent(o)?;
            }
            let spec = if *points {
                TripleSpec::from_triple(&psl_triple_on_points(n, q)?)
            } else {
                TripleSpec::from_triple(&psl_triple(n, q)?).with_pair(&duality_automorphism(n, q)?)
            };
            emit(out.as_deref(), &spec.to_yaml())?;
            Ok(io::OK)
        }
    }
}

fn cmd_scan(ctx: &Ctx, spec: &Path, n_max: usize, r: usize, out_dir: Option<&Path>) -> CliResult<u8> {
    let t = load_spec(spec)?.to_triple()?;
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d).map_err(|e| Failure::parse(format!("{}: {e}", d.display())))?;
    }
    let pairs = gassmann::transplant::okada_shudo_scan(&t, n_max, r, &ctx.bounds)?;
    let mut rows = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if let Some(d) = out_dir {
            io::write(&d.join(format!("pair-{}-a.sys", i + 1)), &p.a.to_text())?;
            io::write(&d.join(format!("pair-{}-b.sys", i + 1)), &p.b.to_text())?;
        }
        let elements: Vec<String> = p.elements.iter().map(|x| x.to_string()).collect();
        if ctx.json {
            rows.push(json!({
                "elements": elements,
                "a": p.a.to_text(),
                "b": p.b.to_text(),
                "determinant": big(&p.solution.determinant),
            }));
        } else {
            println!("pair {}: {}  det T = {}", i + 1, elements.join(" "), p.solution.determinant);
        }
    }
    if ctx.json {
        print!("{}", json_text(&json!({"schema": 1, "label": t.label, "pairs": rows})));
    } else {
        println!("{} pairs from {} (N ≤ {n_max}, r = {r})", pairs.len(), t.label);
    }
    Ok(if pairs.is_empty() { io::FAILS } else { io::OK })
}
