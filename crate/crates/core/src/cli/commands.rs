use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};

use super::parse::parse_polynomial;
use super::report::VerificationReport;
use crate::complex::{order_complex, reduced_betti, FacePoset, ReducedBetti};
use crate::fan::{validate_fan, Fan, ValidationLevel};
use crate::generators::{ci_skeleton_link, in_tropical_hypersurface, initial_form, tree_space_link, tropical_hypersurface_fan};
use crate::linalg::{IntVector, Rational};
use crate::matroid::{bergman_fan, flats_lattice, mobius_top, Matroid};
use crate::strata::{dual_complex, hat_link, hat_link_of_subdivision, weight_row_against_dual, CellMultiplicity, StratificationIncidence};

/// Order complexes with more maximal chains than this are not built by
/// [`LinkMethod::Auto`].
pub const ORDER_COMPLEX_CHAIN_LIMIT: u128 = 100_000;

/// How link homology is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LinkMethod {
    /// Homology of the order complex, cross-checked by cellular homology of
    /// the face poset. Past [`ORDER_COMPLEX_CHAIN_LIMIT`] maximal chains only
    /// the cellular computation runs.
    #[default]
    Auto,
    OrderComplex,
    Cellular,
}

impl std::str::FromStr for LinkMethod {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(LinkMethod::Auto),
            "order" => Ok(LinkMethod::OrderComplex),
            "cellular" => Ok(LinkMethod::Cellular),
            _ => bail!("unknown method {s:?}, expected auto, order or cellular"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LinkOptions {
    pub geometric: bool,
    pub method: LinkMethod,
}

fn read(path: &Path) -> Result<(String, Vec<u8>)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((text, bytes))
}

fn label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_fan(path: &Path) -> Result<(crate::fan::LoadedFan, Vec<u8>)> {
    let (text, bytes) = read(path)?;
    let loaded = Fan::from_json_str(&text).with_context(|| format!("loading fan {}", path.display()))?;
    Ok((loaded, bytes))
}

/// A cross-check row: name, expected, got, pass.
pub type CheckRow = (String, String, String, bool);

/// Reduced Betti numbers of the regular cell complex with face poset `p`,
/// with cross-check rows and notes on how they were obtained.
pub fn poset_betti(p: &FacePoset, method: LinkMethod) -> Result<(ReducedBetti, Vec<CheckRow>, Vec<String>)> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let order = || -> Result<ReducedBetti> { Ok(reduced_betti(&order_complex(p))?) };
    let cellular = || -> Result<ReducedBetti> { Ok(ReducedBetti::from_augmented(&p.cellular_chain_complex()?)?) };
    let betti = match method {
        LinkMethod::OrderComplex => {
            notes.push("homology of the order complex".to_string());
            order()?
        }
        LinkMethod::Cellular => {
            notes.push("cellular homology of the face poset".to_string());
            cellular()?
        }
        LinkMethod::Auto => {
            let chains = p.count_maximal_chains();
            match cellular() {
                Ok(cell) if chains <= ORDER_COMPLEX_CHAIN_LIMIT => {
                    let ord = order()?;
                    let (a, b) = (betti_text(&ord), betti_text(&cell));
                    rows.push(("order complex vs cellular".to_string(), a.clone(), b.clone(), a == b));
                    notes.push("homology of the order complex, cross-checked cellularly".to_string());
                    ord
                }
                Ok(cell) => {
                    notes.push(format!(
                        "cellular homology of the face poset; order complex skipped ({chains} maximal chains)"
                    ));
                    cell
                }
                Err(e) => {
                    notes.push(format!("cellular homology unavailable ({e}); order complex only"));
                    order()?
                }
            }
        }
    };
    Ok((betti, rows, notes))
}

fn betti_text(b: &ReducedBetti) -> String {
    if b.empty {
        "empty".to_string()
    } else {
        format!("{:?}", b.betti)
    }
}

fn link_report(command: &str, subject: String, p: &FacePoset, method: LinkMethod) -> Result<VerificationReport> {
    let (betti, rows, notes) = poset_betti(p, method)?;
    let mut r = VerificationReport::new(command, subject, &betti);
    for (name, expected, got, pass) in rows {
        r.check(&name, expected, got, pass);
    }
    notes.into_iter().for_each(|n| r.note(n));
    Ok(r)
}

fn validation_row(r: &mut VerificationReport, fan: &Fan, level: ValidationLevel) {
    let v = validate_fan(fan, level);
    let name = match level {
        ValidationLevel::Combinatorial => "fan validation (combinatorial)",
        ValidationLevel::Geometric => "fan validation (geometric)",
    };
    r.compare(name, "0 violations", format!("{} violations", v.violations.len()));
    for x in v.violations.iter().take(10) {
        r.note(format!("{:?}: {}", x.kind, x.message));
    }
}

fn describe(fan: &Fan) -> String {
    format!(
        "{} rays, {} cones, ambient rank {}, lineality dimension {}",
        fan.rays().len(),
        fan.cones().len(),
        fan.ambient_rank(),
        fan.lineality_dim()
    )
}

fn timed(start: Instant, mut r: VerificationReport) -> VerificationReport {
    r.elapsed = start.elapsed();
    log::info!("{} finished in {:?}", r.command, r.elapsed);
    r
}

/// Link of the origin of the fan in `path`.
pub fn cmd_link_homology(path: &Path, opts: LinkOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let (loaded, bytes) = load_fan(path)?;
    let fan = loaded.fan;
    log::info!("loaded {}: {}", path.display(), describe(&fan));
    let poset = fan.link_poset()?;
    let subject = format!("Link of the fan `{}`: {}.", label(path), describe(&fan));
    let mut r = link_report("link", subject, &poset, opts.method)?;
    r.input("fan", &bytes);
    let level = if opts.geometric {
        ValidationLevel::Geometric
    } else {
        ValidationLevel::Combinatorial
    };
    validation_row(&mut r, &fan, level);
    Ok(timed(start, r))
}

/// Bergman link of the matroid in `path` against `|μ(0̂, 1̂)|`.
pub fn cmd_bergman(path: &Path) -> Result<VerificationReport> {
    let start = Instant::now();
    let (text, bytes) = read(path)?;
    let m = Matroid::from_json_str(&text).with_context(|| format!("loading matroid {}", path.display()))?;
    let mut r = bergman_report(&m, &label(path))?;
    r.input("matroid", &bytes);
    Ok(timed(start, r))
}

/// The Bergman pipeline on an in-memory matroid.
pub fn bergman_report(m: &Matroid, name: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    let lattice = flats_lattice(m);
    let mu = mobius_top(&lattice);
    let fan = bergman_fan(m)?;
    let subject = format!(
        "Bergman fan of the matroid `{name}` on {} elements of rank {}: {} flats, {}.",
        m.ground_size(),
        m.rank(),
        lattice.len(),
        describe(&fan)
    );
    let mut r = link_report("bergman", subject, &fan.link_poset()?, LinkMethod::Auto)?;
    let top = if r.empty { 1 } else { *r.betti.last().expect("nonempty") };
    r.compare("top Betti number vs |μ(0̂,1̂)|", mu.unsigned_abs(), top);
    validation_row(&mut r, &fan, ValidationLevel::Combinatorial);
    Ok(timed(start, r))
}

fn double_factorial(mut k: u128) -> u128 {
    let mut p = 1;
    while k > 1 {
        p *= k;
        k -= 2;
    }
    p
}

/// Link of the space of phylogenetic trees on `n` leaves.
pub fn cmd_trees(n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let link = tree_space_link(n)?;
    let betti = reduced_betti(&link)?;
    let f = link.f_vector();
    let subject = format!("Link of the space of phylogenetic trees on {n} leaves, face counts {f:?}.");
    let mut r = VerificationReport::new("trees", subject, &betti);
    r.input("n", n.to_string().as_bytes());
    r.compare("vertices = 2^(n-1) - n - 1", (1u128 << (n - 1)) - n as u128 - 1, link.vertex_count());
    r.compare("facets = (2n-5)!!", double_factorial(2 * n as u128 - 5), link.facets().len());
    let wrong = link.facets().iter().filter(|s| s.len() != n - 3).count();
    r.compare("facets with n-3 splits", link.facets().len(), link.facets().len() - wrong);
    r.compare(
        "Euler characteristic: face counts vs homology",
        link.reduced_euler_characteristic(),
        betti.euler_characteristic(),
    );
    Ok(timed(start, r))
}

/// Link of the codimension-`c` skeleton of the complete fan in `path`.
pub fn cmd_skeleton(path: &Path, c: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let (loaded, bytes) = load_fan(path)?;
    let fan = loaded.fan;
    let r_amb = fan.ambient_rank();
    let poset = ci_skeleton_link(&fan, c)?;
    let subject = format!(
        "Link of the codimension-{c} skeleton of the complete fan `{}`: {}.",
        label(path),
        describe(&fan)
    );
    let mut r = link_report("skeleton", subject, &poset, LinkMethod::Auto)?;
    r.input("fan", &bytes);
    let below = (r_amb - c).saturating_sub(1);
    let low: Vec<usize> = r.betti.iter().take(below).copied().collect();
    let pass = low.iter().all(|&b| b == 0);
    r.check(
        &format!("b̃_i = 0 for i < {below}"),
        format!("{:?}", vec![0; low.len()]),
        format!("{low:?}"),
        pass,
    );
    Ok(timed(start, r))
}

/// Grid `[-k, k]^n` in lexicographic order.
pub fn grid(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-k..=k).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Grid points `w` where the initial-form test and fan membership disagree.
pub fn membership_mismatches(poly: &crate::polytope::LaurentPolynomial, fan: &Fan, k: i64) -> Result<Vec<Vec<i64>>> {
    let mut bad = Vec::new();
    for w in grid(poly.nvars(), k) {
        let iw = IntVector::from_i64(&w);
        let q: Vec<Rational> = iw.to_rational();
        if in_tropical_hypersurface(poly, &iw)? != fan.support_contains(&q) {
            bad.push(w);
        }
    }
    Ok(bad)
}

/// Link of the tropical hypersurface of a constant-coefficient polynomial.
pub fn cmd_hypersurface(poly: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    let f = parse_polynomial(poly, None)?;
    let fan = tropical_hypersurface_fan(&f)?;
    let subject = format!("Link of the tropical hypersurface of `{f}`: {}.", describe(&fan));
    let mut r = link_report("hypersurface", subject, &fan.link_poset()?, LinkMethod::Auto)?;
    r.input("polynomial", poly.as_bytes());
    if f.nvars() <= 3 {
        let bad = membership_mismatches(&f, &fan, 3)?;
        r.compare("initial forms vs fan support on [-3,3]^n", 0, bad.len());
        for w in bad.iter().take(5) {
            r.note(format!("membership disagrees at {w:?}"));
        }
    } else {
        r.note("membership grid check skipped above 3 variables");
    }
    let level = if fan.rays().len() <= 40 {
        ValidationLevel::Geometric
    } else {
        ValidationLevel::Combinatorial
    };
    validation_row(&mut r, &fan, level);
    Ok(timed(start, r))
}

/// Parses `"a,b,..."` into an integer vector.
pub fn parse_weight(w: &str) -> Result<IntVector> {
    let entries: Vec<i64> = w
        .split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad weight entry {x:?}")))
        .collect::<Result<_>>()?;
    Ok(IntVector::from_i64(&entries))
}

/// The initial form `in_w(f)` as text.
pub fn cmd_initial(poly: &str, w: &str) -> Result<String> {
    let w = parse_weight(w)?;
    let f = parse_polynomial(poly, Some(w.len()))?;
    if f.nvars() != w.len() {
        bail!("weight has {} entries but the polynomial has {} variables", w.len(), f.nvars());
    }
    Ok(initial_form(&f, &w)?.to_string())
}

/// Boundary stratification in `path`: weight row against the dual complex.
pub fn cmd_weightrow(path: &Path) -> Result<VerificationReport> {
    let start = Instant::now();
    let (text, bytes) = read(path)?;
    let s = StratificationIncidence::from_json_str(&text)
        .with_context(|| format!("loading stratification {}", path.display()))?;
    let mut r = weightrow_report(&s, &label(path))?;
    r.input("strata", &bytes);
    Ok(timed(start, r))
}

pub fn weightrow_report(s: &StratificationIncidence, name: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    let dual = dual_complex(s)?;
    let betti = reduced_betti(&dual)?;
    let subject = format!(
        "Dual complex of the boundary stratification `{name}`: {} components, depth {}, cell counts {:?}.",
        s.components(),
        s.depth(),
        dual.cell_counts()
    );
    let mut r = VerificationReport::new("weightrow", subject, &betti);
    let (row, shifted) = weight_row_against_dual(s)?;
    r.compare("weight row H_s vs dual b̃_(s-1)", format!("{shifted:?}"), format!("{row:?}"));
    Ok(timed(start, r))
}

/// ĥ-link of the fan in `path`. Multiplicities are keyed by cone position
/// in the fan file.
pub fn cmd_hatlink(path: &Path, mult: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    let (loaded, bytes) = load_fan(path)?;
    let fan = loaded.fan;
    let (poset, cones) = fan.link_poset_with_cones()?;
    let element: BTreeMap<usize, usize> = cones.iter().enumerate().map(|(e, &c)| (c, e)).collect();
    let given = CellMultiplicity::parse(mult)?;
    let mut mapped = BTreeMap::new();
    for (&cell, &k) in given.entries() {
        let e = loaded
            .input_to_cone
            .get(cell)
            .and_then(|c| element.get(c))
            .with_context(|| format!("cone {cell} is not a cell of the link"))?;
        mapped.insert(*e, k);
    }
    let mult = CellMultiplicity::new(mapped)?;
    let hat = hat_link(&poset, &mult)?;
    let subject = format!(
        "ĥ-link of the fan `{}` with {} extra top cells: {}.",
        label(path),
        mult.extra_copies(),
        describe(&fan)
    );
    let (base, _, _) = poset_betti(&poset, LinkMethod::Auto)?;
    let mut r = link_report("hatlink", subject, &hat, LinkMethod::Auto)?;
    r.input("fan", &bytes);
    r.input("multiplicities", given_text(&given).as_bytes());
    let d = base.betti.len();
    let below = |b: &[usize]| format!("{:?}", &b[..b.len().min(d.saturating_sub(1))]);
    r.compare("Betti numbers below top unchanged", below(&base.betti), below(&r.betti));
    r.compare(
        "top Betti number grows by Σ(k-1)",
        base.top() + mult.extra_copies(),
        r.betti.last().copied().unwrap_or(0),
    );
    let sub = reduced_betti(&hat_link_of_subdivision(&poset, &mult)?)?;
    r.compare("subdivision route", format!("{:?}", sub.betti), format!("{:?}", r.betti));
    Ok(timed(start, r))
}

fn given_text(m: &CellMultiplicity) -> String {
    let parts: Vec<String> = m.entries().iter().map(|(c, k)| format!("{c}:{k}")).collect();
    parts.join(",")
}
