//! `ngon` — constructibility of regular n-gons, explicit nested square-root
//! expressions for cos(2*pi/n), and their rigorous verification, on the
//! command line.
//!
//! Exit codes: `constructible` exits 0 when the n-gon is constructible and
//! 1 when it is not; every other subcommand exits 0 on success. Usage errors
//! exit 2.

use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ngon_core::periods::BitString;
use ngon_core::{
    cos_two_pi, cyclotomic_poly, embed_synthesis, euler_phi, is_constructible, is_fermat_prime,
    is_prime, primitive_root, synthesize_cos, synthesize_full, DyadicInterval, Format, RadicalExpr,
};

#[derive(Parser)]
#[command(name = "ngon", version, about = "Constructible polygons and nested square roots")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

const MAX_N: u64 = 1_000_000_000;

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the regular n-gon is constructible
    Constructible {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_N))]
        n: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Synthesize cos(2*pi/p) for a Fermat prime p
    Radical {
        p: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long, value_enum, default_value_t = VerifyLevel::None)]
        verify: VerifyLevel,
        /// Bits of relative width for printed intervals
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(16..=16384))]
        precision: u32,
        /// Allow the multi-minute p = 65537 run
        #[arg(long = "enable-65537")]
        enable_65537: bool,
    },
    /// Synthesize cos(2*pi/n) for any constructible n
    Cos {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_N))]
        n: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(16..=16384))]
        precision: u32,
        /// Allow factors of 65537 (multi-minute synthesis)
        #[arg(long = "enable-65537")]
        enable_65537: bool,
    },
    /// Smallest primitive root modulo a prime
    PrimitiveRoot {
        p: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// List the Gaussian periods of one level of the bisection tree
    Periods {
        p: u64,
        /// Bit-string length: 0 is the root, p = 2^m + 1 allows up to m - 1
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(16..=16384))]
        precision: u32,
        #[arg(long = "enable-65537")]
        enable_65537: bool,
    },
    /// Eisenstein irreducibility check for Phi_p(x+1) (or Phi_(p^2) with --square)
    Eisenstein {
        p: u64,
        #[arg(long)]
        square: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Euler totient
    Phi {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_N))]
        n: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Latex,
    Sexpr,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    None,
    Numeric,
    Exact,
}

/// Printing a fully expanded tree beyond this size is not useful output.
const PRINT_SIZE_LIMIT: u128 = 10_000_000;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Constructible { n, format } => constructible_cmd(n, format),
        Cmd::Radical { p, format, verify, precision, enable_65537 } => {
            radical_cmd(p, format, verify, precision, enable_65537)
        }
        Cmd::Cos { n, format, precision, enable_65537 } => {
            cos_cmd(n, format, precision, enable_65537)
        }
        Cmd::PrimitiveRoot { p, format } => primitive_root_cmd(p, format),
        Cmd::Periods { p, level, format, precision, enable_65537 } => {
            periods_cmd(p, level, format, precision, enable_65537)
        }
        Cmd::Eisenstein { p, square, format } => eisenstein_cmd(p, square, format),
        Cmd::Phi { n, format } => phi_cmd(n, format),
    }
}

fn decimal_digits(precision: u32) -> u32 {
    // log10(2) ~ 0.30103
    (precision * 301 / 1000).clamp(6, 60)
}

fn interval_json(i: &DyadicInterval, digits: u32) -> serde_json::Value {
    json!({
        "lo": i.lo().to_decimal_floor(digits),
        "hi": i.hi().to_decimal_ceil(digits),
    })
}

fn constructible_cmd(n: u64, format: OutFormat) -> Result<ExitCode, String> {
    let v = is_constructible(n);
    match format {
        OutFormat::Json => {
            let obstruction = v.obstruction.as_ref().map(|ob| {
                json!({
                    "kind": match ob {
                        ngon_core::Obstruction::RepeatedOddPrime { .. } => "repeated_odd_prime",
                        ngon_core::Obstruction::NonFermatOddPrime { .. } => "non_fermat_odd_prime",
                    },
                    "prime": ob.prime(),
                    "divisor": ob.divisor(),
                    "display": ob.to_string(),
                })
            });
            let doc = json!({
                "n": v.n,
                "constructible": v.constructible,
                "two_power_part": v.two_power_part,
                "fermat_primes": v.fermat_prime_factors,
                "obstruction": obstruction,
            });
            println!("{doc}");
        }
        _ => {
            if v.constructible {
                println!("n = {}: constructible ({} = {})", n, n, ngon_core::factorize(n));
            } else {
                let ob = v.obstruction.as_ref().expect("non-constructible has a witness");
                println!("n = {}: not constructible (obstruction: {} divides {})", n, ob, n);
            }
        }
    }
    Ok(if v.constructible { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn radical_cmd(
    p: u64,
    format: OutFormat,
    verify: VerifyLevel,
    precision: u32,
    enable_65537: bool,
) -> Result<ExitCode, String> {
    if !is_fermat_prime(p) {
        return Err(format!("{p} is not a Fermat prime (expected one of 3, 5, 17, 257, 65537)"));
    }
    if p == 65537 && !enable_65537 {
        return Err("p = 65537 takes a while; pass --enable-65537 to run it".into());
    }
    if verify == VerifyLevel::Exact && p > 257 {
        return Err("exact verification is only offered for p <= 257".into());
    }
    let synthesis = synthesize_full(p).map_err(|e| e.to_string())?;
    let expr = &synthesis.cos_expr;
    let digits = decimal_digits(precision);

    let numeric = if verify == VerifyLevel::None {
        None
    } else {
        let value = expr.eval_interval(precision).map_err(|e| e.to_string())?;
        let reference = cos_two_pi(1, p, precision);
        if value.intersect(&reference).is_none() {
            return Err("numeric verification failed: enclosures are disjoint".into());
        }
        Some((value, reference))
    };

    let exact = if verify == VerifyLevel::Exact {
        let mut products_checked = 0usize;
        for k in 0..synthesis.tree.depth() {
            for node in synthesis.tree.level(k) {
                let lc = synthesis.tree.sibling_product(node.w).map_err(|e| e.to_string())?;
                if !synthesis.tree.product_matches_cyclo(node.w, &lc) {
                    return Err(format!("cyclotomic oracle mismatch at node {}", node.w));
                }
                products_checked += 1;
            }
        }
        let embedding = embed_synthesis(p, Some(Duration::from_secs(600)))
            .map_err(|e| format!("tower verification failed: {e}"))?;
        if !embedding.report.completed {
            return Err("tower verification ran out of budget".into());
        }
        Some((products_checked, embedding.report))
    } else {
        None
    };

    match format {
        OutFormat::Json => {
            let mut doc = json!({
                "p": p,
                "radical_depth": expr.radical_depth(),
                "shared_nodes": expr.node_count(),
                "tree_size": expr.tree_size().to_string(),
            });
            let obj = doc.as_object_mut().unwrap();
            if expr.tree_size() <= PRINT_SIZE_LIMIT {
                obj.insert("expression".into(), json!(expr.serialize(Format::Sexpr)));
            }
            if let Some((value, reference)) = &numeric {
                obj.insert("value".into(), interval_json(value, digits));
                obj.insert("reference".into(), interval_json(reference, digits));
            }
            if let Some((products_checked, report)) = &exact {
                obj.insert(
                    "exact".into(),
                    json!({
                        "products_checked": products_checked,
                        "tower_nodes_verified": report.nodes_verified,
                        "tower_depth": report.context_depth,
                        "max_coefficient_bits": report.max_coefficient_bits,
                    }),
                );
            }
            println!("{doc}");
        }
        _ => {
            print_expression(expr, format);
            if let Some((value, reference)) = &numeric {
                println!("value     {}", value.to_decimal(digits));
                println!("reference {}", reference.to_decimal(digits));
                println!("numeric check: pass");
            }
            if let Some((products_checked, report)) = &exact {
                println!(
                    "exact check: {products_checked} sibling products match the cyclotomic oracle"
                );
                println!(
                    "exact check: tower verified {}/{} period quadratics (depth {}, max coefficient {} bits)",
                    report.nodes_verified,
                    report.nodes_total,
                    report.context_depth,
                    report.max_coefficient_bits
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_expression(expr: &RadicalExpr, format: OutFormat) {
    let size = expr.tree_size();
    if size > PRINT_SIZE_LIMIT {
        println!(
            "expression too large to print: {} shared nodes, {} expanded, square roots nest {} deep",
            expr.node_count(),
            size,
            expr.radical_depth()
        );
        return;
    }
    let f = match format {
        OutFormat::Latex => Format::Latex,
        OutFormat::Sexpr => Format::Sexpr,
        _ => Format::Text,
    };
    println!("{}", expr.serialize(f));
}

fn cos_cmd(
    n: u64,
    format: OutFormat,
    precision: u32,
    enable_65537: bool,
) -> Result<ExitCode, String> {
    let v = is_constructible(n);
    if !v.constructible {
        let ob = v.obstruction.as_ref().expect("witness");
        return Err(format!("cos(2*pi/{n}) is not expressible in square roots: {ob} divides {n}"));
    }
    if v.fermat_prime_factors.contains(&65537) && !enable_65537 {
        return Err("n has the factor 65537, which takes a while; pass --enable-65537".into());
    }
    let expr = synthesize_cos(n).map_err(|e| e.to_string())?;
    match format {
        OutFormat::Json => {
            let digits = decimal_digits(precision);
            let value = expr.eval_interval(precision).map_err(|e| e.to_string())?;
            let mut doc = json!({
                "n": n,
                "radical_depth": expr.radical_depth(),
                "value": interval_json(&value, digits),
            });
            if expr.tree_size() <= PRINT_SIZE_LIMIT {
                doc.as_object_mut()
                    .unwrap()
                    .insert("expression".into(), json!(expr.serialize(Format::Sexpr)));
            }
            println!("{doc}");
        }
        _ => print_expression(&expr, format),
    }
    Ok(ExitCode::SUCCESS)
}

fn primitive_root_cmd(p: u64, format: OutFormat) -> Result<ExitCode, String> {
    let g = primitive_root(p).map_err(|e| format!("{p}: {e}"))?;
    match format {
        OutFormat::Json => println!("{}", json!({ "p": p, "primitive_root": g })),
        _ => println!("{g}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn periods_cmd(
    p: u64,
    level: u32,
    format: OutFormat,
    precision: u32,
    enable_65537: bool,
) -> Result<ExitCode, String> {
    if !is_fermat_prime(p) {
        return Err(format!("{p} is not a Fermat prime"));
    }
    if p == 65537 && !enable_65537 {
        return Err("p = 65537 tables take a while; pass --enable-65537".into());
    }
    let tree = ngon_core::build_period_tree(p).map_err(|e| e.to_string())?;
    if level > tree.depth() {
        return Err(format!(
            "level must be at most {} for p = {p} (the two-term periods)",
            tree.depth()
        ));
    }
    let table = ngon_core::cosine::CosTable::build(p, tree.residues(), precision);
    let digits = decimal_digits(precision);
    let mut rows = Vec::new();
    for v in 0..(1u32 << level) {
        let w = BitString::new(level as u8, v);
        let node = tree.node(w);
        let value = tree.enclosure(w, &table);
        rows.push((w, node.terms.clone(), value));
    }
    match format {
        OutFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(w, terms, value)| {
                    json!({
                        "index": w.to_string(),
                        "class": w.val(),
                        "terms": terms,
                        "value": interval_json(value, digits),
                    })
                })
                .collect();
            println!(
                "{}",
                json!({ "p": p, "generator": tree.generator(), "level": level, "periods": items })
            );
        }
        _ => {
            println!("p = {p}, g = {}, level {level}: {} period(s)", tree.generator(), rows.len());
            for (w, terms, value) in &rows {
                let terms: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                println!(
                    "{w}: terms = [{}], value = {}",
                    terms.join(", "),
                    value.to_decimal(digits)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn eisenstein_cmd(p: u64, square: bool, format: OutFormat) -> Result<ExitCode, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let poly = cyclotomic_poly(p, square).map_err(|e| e.to_string())?;
    let shifted = poly.shift_by_one();
    let pass = shifted.eisenstein_check(p);
    let index = if square { p * p } else { p };
    match format {
        OutFormat::Json => {
            println!(
                "{}",
                json!({
                    "p": p,
                    "index": index,
                    "degree": poly.degree(),
                    "eisenstein": pass,
                    "irreducible_over_q": pass,
                })
            );
        }
        _ => {
            if pass {
                println!(
                    "Phi_{index}(x+1): Eisenstein criterion holds at q = {p}; Phi_{index} is irreducible over Q"
                );
            } else {
                println!("Phi_{index}(x+1): Eisenstein criterion does not apply at q = {p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn phi_cmd(n: u64, format: OutFormat) -> Result<ExitCode, String> {
    let phi = euler_phi(n);
    match format {
        OutFormat::Json => println!("{}", json!({ "n": n, "phi": phi })),
        _ => println!("{phi}"),
    }
    Ok(ExitCode::SUCCESS)
}
