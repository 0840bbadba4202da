//! Command-line driver for the exact-arithmetic algebra library.
//!
//! Subcommands construct an algebra from `--field`, `--alpha`, `--beta`
//! and emit a deterministic report as text or JSON (`--format`), to
//! stdout or `--out`. Exit code 0 means every requested check passed,
//! 1 means a check failed (the report carries the failure records), and
//! 2 means the command line itself was unusable.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use okubo::algebra::IdempotentClass;
use okubo::aut::{
    self, find_isomorphism, full_aut_f2, grading_automorphisms, orbit_of_pauli_x,
    splitting_section, stabilizer_subgroup, unitary_f4, weyl_from_aut, AutError,
};
use okubo::field::FieldDescriptor;
use okubo::grading;
use okubo::group::{semidirect_check, small_group_isomorphic};
use okubo::verify;
use okubo::{BasisIndex, FieldElement, OkuboAlgebra};

#[derive(Parser)]
#[command(
    name = "okubo",
    version,
    about = "Exact constructions and checks for eight-dimensional symmetric composition algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the 8×8 multiplication table of O_{α,β}.
    Table {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the composition-identity suite (multiplicative norm, flip
    /// identities, associative norm pairing).
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Seed for the sampled pair stream on large fields.
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report the cube-class map on grading degrees, its image rank, and
    /// the grading's normal form.
    Phi {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the Weyl group two ways (membership formula and
    /// automorphism quotient) and cross-check them.
    Weyl {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report the grading automorphism group: order, stabilizer, Weyl
    /// quotient, and whether the quotient sequence splits.
    Aut {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate the full automorphism group of O_{1,1} over GF(2).
    Autfull {
        /// Field order; only 2 is supported.
        #[arg(long, default_value = "2")]
        field: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the unitary groups over GF(4) and check the conjugation
    /// orbit of the diagonal generator.
    Unitary {
        /// Field order; only 4 is supported.
        #[arg(long, default_value = "4")]
        field: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Census of nonzero idempotents with characteristic-3
    /// classification.
    Idem {
        /// Field order; must have characteristic 3.
        #[arg(long, default_value = "3")]
        field: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        beta: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for an isomorphism from O_{α,β} onto the split algebra
    /// O_{1,1} over the same field.
    Iso {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    /// Field: a prime power such as 2, 3, 4, 7, 9, 13, 25, 49, or Q for
    /// the rationals.
    #[arg(long)]
    field: String,
    /// First structure parameter, as a field element (e.g. 3, -2/5, 1+t).
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Second structure parameter.
    #[arg(long, default_value = "1")]
    beta: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A finished report: the same facts rendered both ways, plus the
/// verdict of whatever checks the command ran.
struct Report {
    text: Vec<String>,
    json: Value,
    failures: Vec<String>,
}

impl Report {
    fn new(json: Value) -> Report {
        Report {
            text: Vec::new(),
            json,
            failures: Vec::new(),
        }
    }

    fn line(&mut self, s: String) {
        self.text.push(s);
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json[key] = value;
    }

    fn fail(&mut self, what: &str) {
        self.failures.push(what.to_string());
    }

    fn render(mut self, format: Format) -> (String, bool) {
        let pass = self.failures.is_empty();
        match format {
            Format::Text => {
                for f in &self.failures {
                    self.text.push(format!("FAIL: {f}"));
                }
                self.text
                    .push(format!("result: {}", if pass { "PASS" } else { "FAIL" }));
                (self.text.join("\n") + "\n", pass)
            }
            Format::Json => {
                self.json["pass"] = json!(pass);
                self.json["failures"] = json!(self.failures);
                (self.json.to_string() + "\n", pass)
            }
        }
    }
}

/// A command line that parsed but cannot be run as asked.
struct UsageError(String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn parse_field(s: &str) -> Result<FieldDescriptor, UsageError> {
    if s == "Q" {
        return Ok(FieldDescriptor::rationals());
    }
    s.parse::<u64>()
        .ok()
        .and_then(|q| FieldDescriptor::gf(q).ok())
        .ok_or_else(|| {
            usage(format!(
                "--field {s:?} is not an implemented field (use a prime, 4, 9, 25, 49, or Q)"
            ))
        })
}

fn parse_parameter(
    f: &FieldDescriptor,
    s: &str,
    name: &str,
) -> Result<FieldElement, UsageError> {
    let value = f
        .parse_element(s)
        .map_err(|e| usage(format!("--{name} {s:?} does not parse over {f}: {e}")))?;
    if value.is_zero() {
        return Err(usage(format!("--{name} must be nonzero")));
    }
    Ok(value)
}

fn build_algebra(args: &AlgebraArgs) -> Result<OkuboAlgebra, UsageError> {
    let f = parse_field(&args.field)?;
    let alpha = parse_parameter(&f, &args.alpha, "alpha")?;
    let beta = parse_parameter(&f, &args.beta, "beta")?;
    OkuboAlgebra::new(f, alpha, beta).map_err(|e| usage(e.to_string()))
}

/// Converts enumeration errors: capability bounds are usage problems,
/// anything else is a failed internal cross-check.
fn aut_failure(report: &mut Report, err: &AutError) {
    report.fail(&err.to_string());
}

fn algebra_header(a: &OkuboAlgebra) -> String {
    format!("O_{{{},{}}} over {}", a.alpha(), a.beta(), a.field())
}

fn base_json(command: &str, a: Option<&OkuboAlgebra>) -> Value {
    let mut v = json!({"schema": 1, "command": command});
    if let Some(a) = a {
        v["field"] = json!(a.field().to_string());
        v["alpha"] = json!(a.alpha().to_string());
        v["beta"] = json!(a.beta().to_string());
    }
    v
}

fn basis_name(b: BasisIndex) -> String {
    format!("z\u{303}_{{{},{}}}", b.i(), b.j())
}

/// Terminal cell count: combining marks render at zero width.
fn visual_width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count()
}

fn pad(s: &str, width: usize) -> String {
    let mut out = s.to_string();
    out.extend(std::iter::repeat_n(' ', width.saturating_sub(visual_width(s))));
    out
}

fn run_table(a: &OkuboAlgebra) -> Report {
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(8);
    for ra in BasisIndex::ALL {
        let mut row = Vec::with_capacity(8);
        for rb in BasisIndex::ALL {
            let prod = a.mul_unchecked(&a.basis_element(ra), &a.basis_element(rb));
            let cell = if prod.is_zero() {
                "0".to_string()
            } else {
                // Structure products are supported on a single basis line.
                let (pos, coeff) = prod
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .expect("nonzero product");
                let name = basis_name(BasisIndex::ALL[pos]);
                if coeff.is_one() {
                    name
                } else {
                    let s = coeff.to_string();
                    if s.contains('+') {
                        format!("({s})\u{b7}{name}")
                    } else {
                        format!("{s}\u{b7}{name}")
                    }
                }
            };
            row.push(cell);
        }
        cells.push(row);
    }

    let mut report = Report::new(base_json("table", Some(a)));
    report.set(
        "basis",
        json!(BasisIndex::ALL
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()),
    );
    report.set("cells", json!(cells));

    report.line(format!("multiplication table of {}", algebra_header(a)));
    report.line(String::new());
    let names: Vec<String> = BasisIndex::ALL.iter().map(|b| basis_name(*b)).collect();
    let head_width = names.iter().map(|n| visual_width(n)).max().unwrap();
    let col_width: Vec<usize> = (0..8)
        .map(|c| {
            cells
                .iter()
                .map(|row| visual_width(&row[c]))
                .chain(std::iter::once(visual_width(&names[c])))
                .max()
                .unwrap()
        })
        .collect();
    let assemble = |first: &str, items: &[String]| -> String {
        let mut line = pad(first, head_width);
        for (c, item) in items.iter().enumerate() {
            // Column pairs mirror the reference layout: a bar starts each
            // two-column block.
            line.push_str(if c % 2 == 0 { " | " } else { "  " });
            line.push_str(&pad(item, col_width[c]));
        }
        line.trim_end().to_string()
    };
    let header = assemble("*", &names);
    let rule: String = header
        .chars()
        .map(|ch| if ch == '|' { '+' } else { '-' })
        .collect();
    report.line(header);
    report.line(rule.clone());
    for (r, row) in cells.iter().enumerate() {
        report.line(assemble(&names[r], row));
        if r % 2 == 1 && r < 7 {
            report.line(rule.clone());
        }
    }
    report
}

fn run_verify(a: &OkuboAlgebra, seed: u64) -> Report {
    let suite = verify::identity_suite(a, verify::DEFAULT_PAIR_CAP, seed);
    let mut report = Report::new(base_json("verify", Some(a)));
    report.set("seed", json!(seed));
    report.set("exhaustive", json!(suite.exhaustive));
    report.set("pairs_checked", json!(suite.pairs_checked));
    report.set("failing_pairs", json!(suite.failures));
    report.set("first_failure", json!(suite.first_failure));

    report.line(format!("identity suite for {}", algebra_header(a)));
    report.line(format!(
        "mode: {}",
        if suite.exhaustive {
            "exhaustive".to_string()
        } else {
            format!("sampled (seed {seed})")
        }
    ));
    report.line(format!("pairs checked: {}", suite.pairs_checked));
    report.line(format!("failures: {}", suite.failures));
    if suite.failures > 0 {
        report.fail(&format!(
            "{} of {} pairs failed; first: {}",
            suite.failures,
            suite.pairs_checked,
            suite.first_failure.as_deref().unwrap_or("-")
        ));
    }
    report
}

fn run_phi(a: &OkuboAlgebra) -> Result<Report, UsageError> {
    let summary = grading::grading_report(a).map_err(|e| usage(e.to_string()))?;
    let phi = grading::phi_gamma(a).map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new(base_json("phi", Some(a)));
    report.set(
        "summary",
        serde_json::to_value(&summary).expect("report serializes"),
    );

    report.line(format!("cube-class map for {}", algebra_header(a)));
    for (degree, class) in &summary.phi {
        report.line(format!("  {degree} -> {class}"));
    }
    report.line(format!("image rank: {}", summary.image_rank));
    report.line(format!("normal form: {}", summary.normal_form));
    report.line(format!("weyl order (formula): {}", summary.weyl_order));
    if !phi.is_homomorphism() {
        report.fail("the degree map is not multiplicative on all 81 pairs");
    }
    report
        .set("homomorphism", json!(phi.is_homomorphism()));
    Ok(report)
}

fn run_weyl(a: &OkuboAlgebra) -> Result<Report, UsageError> {
    let formula = grading::weyl_group_via_formula(a).map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new(base_json("weyl", Some(a)));
    report.set("formula_order", json!(formula.order()));
    report.line(format!("weyl group of {}", algebra_header(a)));
    report.line(format!("formula route: order {}", formula.order()));

    match grading_automorphisms(a) {
        Ok(auts) => {
            let (stab, stab_idx) = match stabilizer_subgroup(a, &auts) {
                Ok(v) => v,
                Err(e) => {
                    aut_failure(&mut report, &e);
                    return Ok(report);
                }
            };
            let quotient = match weyl_from_aut(&auts, &stab_idx) {
                Ok(q) => q,
                Err(e) => {
                    aut_failure(&mut report, &e);
                    return Ok(report);
                }
            };
            report.set("automorphism_order", json!(auts.order()));
            report.set("stabilizer_order", json!(stab.order()));
            report.set("quotient_order", json!(quotient.order()));
            report.line(format!(
                "quotient route: order {} (automorphisms {}, stabilizer {})",
                quotient.order(),
                auts.order(),
                stab.order()
            ));
            let agree = quotient.order() == formula.order()
                && small_group_isomorphic(&quotient, &formula)
                    .map(|iso| iso.is_some())
                    .unwrap_or(false);
            report.set("routes_agree", json!(agree));
            report.line(format!("routes agree: {}", if agree { "yes" } else { "no" }));
            if !agree {
                report.fail("formula and quotient routes disagree");
            }
        }
        Err(AutError::FieldTooLarge(q)) => {
            report.set("quotient_order", Value::Null);
            report.line(format!(
                "quotient route: skipped (field order {q} exceeds the enumeration bound {})",
                aut::MAX_AUT_FIELD
            ));
        }
        Err(e) => aut_failure(&mut report, &e),
    }
    Ok(report)
}

fn run_aut(a: &OkuboAlgebra) -> Result<Report, UsageError> {
    let auts = match grading_automorphisms(a) {
        Ok(g) => g,
        Err(AutError::FieldTooLarge(q)) => {
            return Err(usage(format!(
                "field order {q} exceeds the enumeration bound {}",
                aut::MAX_AUT_FIELD
            )))
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let mut report = Report::new(base_json("aut", Some(a)));
    report.line(format!("grading automorphisms of {}", algebra_header(a)));
    report.set("order", json!(auts.order()));
    report.line(format!("order: {}", auts.order()));

    match stabilizer_subgroup(a, &auts) {
        Ok((stab, stab_idx)) => {
            report.set("stabilizer_order", json!(stab.order()));
            report.line(format!("stabilizer order: {}", stab.order()));
            match weyl_from_aut(&auts, &stab_idx) {
                Ok(quotient) => {
                    report.set("weyl_order", json!(quotient.order()));
                    report.line(format!("weyl order: {}", quotient.order()));
                }
                Err(e) => aut_failure(&mut report, &e),
            }
            let phi = grading::phi_gamma(a).map_err(|e| usage(e.to_string()))?;
            let rank = grading::phi_image_rank(&phi);
            report.set("image_rank", json!(rank));
            report.line(format!("image rank: {rank}"));
            if rank <= 1 {
                match splitting_section(a, &auts) {
                    Ok(section) => {
                        let image = section.hom.image_indices();
                        match semidirect_check(&auts, &stab_idx, &image) {
                            Ok(sd) => {
                                report.set("section_splits", json!(sd.holds));
                                report.line(format!(
                                    "section splits: {}",
                                    if sd.holds { "yes" } else { "no" }
                                ));
                                if !sd.holds {
                                    report.fail("the section does not complement the stabilizer");
                                }
                            }
                            Err(e) => report.fail(&e.to_string()),
                        }
                    }
                    Err(e) => aut_failure(&mut report, &e),
                }
            } else {
                report.set("section_splits", Value::Null);
                report.line("section: none (image rank 2, trivial quotient)".to_string());
            }
        }
        Err(e) => aut_failure(&mut report, &e),
    }
    Ok(report)
}

fn run_autfull(field: &str) -> Result<Report, UsageError> {
    if field != "2" {
        return Err(usage("autfull only supports --field 2"));
    }
    let full = full_aut_f2().map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new(json!({"schema": 1, "command": "autfull", "field": "GF(2)"}));
    report.set("order", json!(full.order()));
    let histogram: Vec<(u64, u64)> = full.order_histogram().into_iter().collect();
    report.set(
        "element_order_histogram",
        json!(histogram
            .iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Vec<_>>()),
    );
    report.line("full automorphism group of O_{1,1} over GF(2)".to_string());
    report.line(format!("order: {}", full.order()));
    report.line(format!(
        "element order histogram: {}",
        histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    Ok(report)
}

fn run_unitary(field: &str) -> Result<Report, UsageError> {
    if field != "4" {
        return Err(usage("unitary only supports --field 4"));
    }
    let groups = unitary_f4().map_err(|e| usage(e.to_string()))?;
    let orbit = match orbit_of_pauli_x(&groups) {
        Ok(o) => o,
        Err(e) => return Err(usage(e.to_string())),
    };
    let mut report = Report::new(json!({"schema": 1, "command": "unitary", "field": "GF(4)"}));
    report.set("U", json!(groups.u.order()));
    report.set("SU", json!(groups.su.order()));
    report.set("PU", json!(groups.pu.order()));
    report.set("PSU", json!(groups.psu.order()));
    report.set("orbit", json!(orbit.orbit.len()));
    report.set("stabilizer", json!(orbit.stabilizer_size));
    report.set(
        "orbit_matches_basis_lines",
        json!(orbit.matches_scaled_basis_lines),
    );
    report.set(
        "stabilizer_all_diagonal",
        json!(orbit.stabilizer_all_diagonal),
    );

    report.line("unitary groups over GF(4)".to_string());
    report.line(format!("|U|   = {}", groups.u.order()));
    report.line(format!("|SU|  = {}", groups.su.order()));
    report.line(format!("|PU|  = {}", groups.pu.order()));
    report.line(format!("|PSU| = {}", groups.psu.order()));
    report.line(format!(
        "orbit of the diagonal generator: {} elements",
        orbit.orbit.len()
    ));
    report.line(format!(
        "orbit equals the scaled basis lines: {}",
        if orbit.matches_scaled_basis_lines {
            "yes"
        } else {
            "no"
        }
    ));
    report.line(format!(
        "stabilizer: {} elements, {}",
        orbit.stabilizer_size,
        if orbit.stabilizer_all_diagonal {
            "all diagonal"
        } else {
            "not all diagonal"
        }
    ));
    if !orbit.matches_scaled_basis_lines {
        report.fail("orbit differs from the scaled basis lines");
    }
    if !orbit.contains_x {
        report.fail("orbit misses its base point");
    }
    if !orbit.stabilizer_all_diagonal {
        report.fail("stabilizer contains a non-diagonal element");
    }
    Ok(report)
}

fn run_idem(field: &str, alpha: &str, beta: &str) -> Result<Report, UsageError> {
    let f = parse_field(field)?;
    if f.characteristic() != 3 {
        return Err(usage("idem requires a field of characteristic 3"));
    }
    let a = OkuboAlgebra::new(
        f,
        parse_parameter(&f, alpha, "alpha")?,
        parse_parameter(&f, beta, "beta")?,
    )
    .map_err(|e| usage(e.to_string()))?;
    let idems = a.find_idempotents().map_err(|e| usage(e.to_string()))?;

    let mut counts = [0usize; 3]; // singular, quadratic, quaternionic
    let mut report = Report::new(base_json("idem", Some(&a)));
    for e in &idems {
        match a.classify_idempotent(e) {
            Ok(IdempotentClass::Singular) => counts[0] += 1,
            Ok(IdempotentClass::Quadratic) => counts[1] += 1,
            Ok(IdempotentClass::Quaternionic) => counts[2] += 1,
            Err(err) => report.fail(&format!("classification failed at {e}: {err}")),
        }
    }
    report.set("nonzero_idempotents", json!(idems.len()));
    report.set("singular", json!(counts[0]));
    report.set("quadratic", json!(counts[1]));
    report.set("quaternionic", json!(counts[2]));

    report.line(format!("idempotent census of {}", algebra_header(&a)));
    report.line(format!("nonzero idempotents: {}", idems.len()));
    report.line(format!("singular: {}", counts[0]));
    report.line(format!("quadratic: {}", counts[1]));
    report.line(format!("quaternionic: {}", counts[2]));
    Ok(report)
}

fn run_iso(a: &OkuboAlgebra) -> Result<Report, UsageError> {
    let f = a.field();
    let target = OkuboAlgebra::new(*f, f.one(), f.one()).expect("split parameters are nonzero");
    let mut report = Report::new(base_json("iso", Some(a)));
    report.set("target_alpha", json!("1"));
    report.set("target_beta", json!("1"));
    report.line(format!(
        "isomorphism search O_{{{},{}}} -> O_{{1,1}} over {f}",
        a.alpha(),
        a.beta()
    ));

    match find_isomorphism(a, &target) {
        Ok(Some(map)) => {
            report.set("found", json!(true));
            let images: Vec<(String, String)> = BasisIndex::ALL
                .iter()
                .map(|b| (b.to_string(), map.column(b.position()).to_string()))
                .collect();
            report.set("images", json!(images));
            report.line("found: yes".to_string());
            for (b, img) in &images {
                report.line(format!("  z~{b} -> {img}"));
            }
        }
        Ok(None) => {
            report.set("found", json!(false));
            report.line("found: no".to_string());
            report.fail("no isomorphism onto the split algebra was found");
        }
        Err(AutError::FieldTooLarge(q)) => {
            return Err(usage(format!(
                "field order {q} exceeds the search bound {}",
                aut::MAX_ISO_FIELD
            )))
        }
        Err(e) => return Err(usage(e.to_string())),
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<(Report, OutputArgs), UsageError> {
    match cli.command {
        Cmd::Table { algebra, output } => Ok((run_table(&build_algebra(&algebra)?), output)),
        Cmd::Verify {
            algebra,
            seed,
            output,
        } => Ok((run_verify(&build_algebra(&algebra)?, seed), output)),
        Cmd::Phi { algebra, output } => Ok((run_phi(&build_algebra(&algebra)?)?, output)),
        Cmd::Weyl { algebra, output } => Ok((run_weyl(&build_algebra(&algebra)?)?, output)),
        Cmd::Aut { algebra, output } => Ok((run_aut(&build_algebra(&algebra)?)?, output)),
        Cmd::Autfull { field, output } => Ok((run_autfull(&field)?, output)),
        Cmd::Unitary { field, output } => Ok((run_unitary(&field)?, output)),
        Cmd::Idem {
            field,
            alpha,
            beta,
            output,
        } => Ok((run_idem(&field, &alpha, &beta)?, output)),
        Cmd::Iso { algebra, output } => Ok((run_iso(&build_algebra(&algebra)?)?, output)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, output)) => {
            let (rendered, pass) = report.render(output.format);
            if let Some(path) = output.out {
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
