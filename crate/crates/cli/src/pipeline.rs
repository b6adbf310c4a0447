//! `gassmann gww`: the (3, 2) triple, its INV witness, the seven-tile pair,
//! the transplantation matrix, the drawings and the two spectra.

use std::path::Path;
use std::time::Instant;

use gassmann::catalog::psl_triple;
use gassmann::drums::{boundary_polygon, domain_to_json, export_svg, gww_pair, unfold, BaseTile, ExactField, Polygon, Sqrt3};
use gassmann::spectral::relative_gaps;
use gassmann::transplant::{find_transplantation, intertwines, InvolutionSystem};
use gassmann::triples::{check_inv, is_ac};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::commands::{default_tol, describe_polygon, mask_of, solve_pair, Ctx};
use crate::io::{self, json_text, parse_spacing, CliResult, Failure};
use crate::{GwwArgs, TileKind};

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

struct Stages<'a> {
    ctx: &'a Ctx,
    clock: Instant,
}

impl Stages<'_> {
    fn done(&mut self, name: &str) {
        if self.ctx.verbose {
            eprintln!("[{name}] {:.2?}", self.clock.elapsed());
        }
        self.clock = Instant::now();
    }
}

struct Geometry<F: ExactField> {
    overlap: (bool, bool),
    boundaries: Option<(Polygon<F>, Polygon<F>)>,
}

fn geometry<F: ExactField>(
    a: &InvolutionSystem,
    b: &InvolutionSystem,
    tile: &BaseTile<F>,
    out_dir: Option<&Path>,
) -> CliResult<Geometry<F>> {
    let da = unfold(a, tile)?;
    let db = unfold(b, tile)?;
    if let Some(dir) = out_dir {
        for (name, d) in [("a", &da), ("b", &db)] {
            io::write(&dir.join(format!("{name}.json")), &domain_to_json(d)?)?;
            io::write(&dir.join(format!("{name}.svg")), &export_svg(d))?;
        }
    }
    let boundaries = match (da.overlap || db.overlap, boundary_polygon(&da), boundary_polygon(&db)) {
        (false, Ok(pa), Ok(pb)) => Some((pa, pb)),
        _ => None,
    };
    Ok(Geometry {
        overlap: (da.overlap, db.overlap),
        boundaries,
    })
}

pub fn run(ctx: &Ctx, args: &GwwArgs) -> CliResult<u8> {
    let h = parse_spacing(&args.grid.h)?;
    if let Some(d) = &args.out_dir {
        std::fs::create_dir_all(d).map_err(|e| Failure::parse(format!("{}: {e}", d.display())))?;
    }
    let tol = args.tol.unwrap_or_else(|| default_tol(&h));
    let out_dir = args.out_dir.as_deref();
    let mut st = Stages {
        ctx,
        clock: Instant::now(),
    };
    let mut lines: Vec<String> = Vec::new();
    let mut report = serde_json::Map::new();
    report.insert("schema".into(), json!(1));

    let t = psl_triple(3, 2).map_err(|e| Failure::from(e).at("catalog"))?;
    let ac = is_ac(&t, &ctx.bounds).map_err(|e| Failure::from(e).at("catalog"))?;
    lines.push(format!(
        "catalog     {}: |G| = {}, index {}, AC {}",
        t.label,
        t.g().order(),
        t.index_h(),
        mark(ac)
    ));
    report.insert("ac".into(), json!(ac));
    st.done("catalog");

    let w = check_inv(&t, 3, true, &ctx.bounds)
        .map_err(|e| Failure::from(e).at("inv"))?
        .ok_or_else(|| Failure::fails("inv: no witness"))?;
    let inv_sum: usize = w.fixed_counts.iter().sum();
    lines.push(format!(
        "INV         {}: fixed points {:?} (sum {inv_sum}), tree {}, Fixeq {}",
        w.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        w.fixed_counts,
        mark(w.system.is_tree()),
        mark(w.system.fixeq_check())
    ));
    report.insert(
        "inv".into(),
        json!({
            "elements": w.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "fixed_counts": w.fixed_counts,
            "tree": w.system.is_tree(),
            "fixeq": w.system.fixeq_check(),
        }),
    );
    st.done("inv");

    // the witness above need not unfold to two simple, distinct drums; the
    // census picks the first triple of involutions that does
    let pair = gww_pair(&ctx.bounds).map_err(|e| Failure::from(e).at("systems"))?;
    let (sa, sb) = (&pair.scan.a, &pair.scan.b);
    let tree = sa.is_tree() && sb.is_tree();
    let fixeq = sa.fixeq_check() && sb.fixeq_check();
    let sum: usize = sa.traces().iter().sum();
    let elements: Vec<String> = pair.scan.elements.iter().map(|x| x.to_string()).collect();
    lines.push(format!(
        "systems     {}: tree {}, Fixeq {} (sum {sum})",
        elements.join(" "),
        mark(tree),
        mark(fixeq)
    ));
    report.insert(
        "systems".into(),
        json!({"elements": elements, "a": sa.to_text(), "b": sb.to_text(), "tree": tree, "fixeq": fixeq, "fixed_sum": sum}),
    );
    if let Some(dir) = out_dir {
        io::write(&dir.join("a.sys"), &sa.to_text())?;
        io::write(&dir.join("b.sys"), &sb.to_text())?;
    }
    st.done("systems");

    let sol = find_transplantation(sa, sb)
        .map_err(|e| Failure::from(e).at("transplant"))?
        .ok_or_else(|| Failure::fails("transplant: only T = 0 intertwines"))?;
    let invertible = sol.invertible() && intertwines(&sol.matrix, sa, sb);
    let no_perm = sol.permutation_solution.is_none();
    lines.push(format!(
        "transplant  T invertible {} (det {}), permutation solution {}",
        mark(invertible),
        sol.determinant,
        mark(!no_perm)
    ));
    report.insert(
        "transplant".into(),
        json!({
            "invertible": invertible,
            "determinant": sol.determinant.to_string(),
            "matrix": sol.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "permutation_solution": sol.permutation_solution.as_ref().map(|p| p.to_string()),
        }),
    );
    st.done("transplant");

    let spectra = match args.tile {
        TileKind::HalfSquare => {
            let g = geometry(sa, sb, &BaseTile::<BigRational>::half_square(), out_dir)
                .map_err(|e| e.at("geometry"))?;
            finish(ctx, "half-square", g, true, &h, args.grid.k, tol, &mut lines, &mut report, &mut st)?
        }
        TileKind::Equilateral => {
            let g = geometry(sa, sb, &BaseTile::<Sqrt3>::equilateral(), out_dir).map_err(|e| e.at("geometry"))?;
            finish(ctx, "equilateral", g, false, &h, args.grid.k, tol, &mut lines, &mut report, &mut st)?
        }
    };

    let combinatorial = ac && inv_sum == 9 && tree && fixeq && sum == 9 && invertible && no_perm;
    let pass = combinatorial && spectra.unwrap_or(true);
    let summary = format!(
        "AC {}, tree {}, Fixeq {} (sum {sum}), T invertible {}, permutation solution {}, {}",
        mark(ac),
        mark(tree),
        mark(fixeq),
        mark(invertible),
        mark(!no_perm),
        match spectra {
            Some(true) => format!("spectra pairwise within {}%", tol * 100.0),
            Some(false) => format!("spectra NOT within {}%", tol * 100.0),
            None => "spectra skipped".to_string(),
        }
    );
    report.insert("pass".into(), json!(pass));
    if ctx.json {
        print!("{}", json_text(&Value::Object(report)));
    } else {
        for l in &lines {
            println!("{l}");
        }
        println!("{summary}");
        println!("{} gww pipeline", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { io::OK } else { io::FAILS })
}

/// Geometry and spectra lines; `None` when the tiles leave no simple drum
/// or when the square grid is not symmetric under the tile's reflections
/// (then grid spectra of congruent drums already differ by the
/// discretization error).
#[allow(clippy::too_many_arguments)]
fn finish<F: ExactField>(
    ctx: &Ctx,
    tile: &str,
    g: Geometry<F>,
    grid_compatible: bool,
    h: &BigRational,
    k: usize,
    tol: f64,
    lines: &mut Vec<String>,
    report: &mut serde_json::Map<String, Value>,
    st: &mut Stages,
) -> CliResult<Option<bool>> {
    lines.push(format!("geometry    {tile} tile: overlap a = {}, b = {}", g.overlap.0, g.overlap.1));
    let mut geo = json!({"tile": tile, "overlap_a": g.overlap.0, "overlap_b": g.overlap.1});
    let Some((pa, pb)) = g.boundaries else {
        report.insert("geometry".into(), geo);
        lines.push("spectra     skipped: no simple boundary (overlapping or touching tiles)".into());
        st.done("geometry");
        return Ok(None);
    };
    let (da, db) = (describe_polygon(&pa), describe_polygon(&pb));
    lines.push(format!(
        "            a: {} vertices, area {}, perimeter {}; b: {} vertices, area {}, perimeter {}; congruent {}",
        da["vertices"],
        da["area"],
        da["perimeter"],
        db["vertices"],
        db["area"],
        db["perimeter"],
        mark(pa.congruent(&pb))
    ));
    geo["congruent"] = json!(pa.congruent(&pb));
    geo["a"] = da;
    geo["b"] = db;
    report.insert("geometry".into(), geo);
    st.done("geometry");
    if !grid_compatible {
        lines.push("spectra     skipped: the square grid does not respect this tile's reflections".into());
        return Ok(None);
    }

    let at = |e: Failure| e.at("spectra");
    let (ma, mb) = (mask_of(&pa, h).map_err(at)?, mask_of(&pb, h).map_err(at)?);
    let (ra, rb) = solve_pair(ctx, &ma, &mb, k).map_err(at)?;
    let gaps = relative_gaps(&ra.eigenvalues, &rb.eigenvalues);
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    let ok = worst < tol;
    for (i, ((x, y), gap)) in ra.eigenvalues.iter().zip(&rb.eigenvalues).zip(&gaps).enumerate() {
        lines.push(format!("λ{:<3}        {x:>14.8} {y:>14.8}  gap {:.4}%", i + 1, gap * 100.0));
    }
    lines.push(format!(
        "spectra     h = {h}, {} and {} nodes: largest gap {:.4}% (tolerance {}%)",
        ra.nodes,
        rb.nodes,
        worst * 100.0,
        tol * 100.0
    ));
    report.insert(
        "spectra".into(),
        json!({"h": h.to_string(), "a": ra.eigenvalues, "b": rb.eigenvalues, "gaps": gaps, "tolerance": tol, "pass": ok}),
    );
    st.done("spectra");
    Ok(Some(ok))
}
