//! `gfa`: witnesses and orbit censuses for the action of `Aut_G(G * F_n)` on
//! `Hom_G(G * F_n, G)`.
//!
//! Exit status: 0 verified, 1 verification failed, 2 usage, parse or
//! precondition error, 3 search bound or state cap exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gfa_core::orbit::{orbits_on_pairs, orbits_on_points, OrbitConfig, OrbitReport};
use gfa_core::{
    faithfulness_witness, format_genword, is_mixed_identity, k_transitivity_witness, kernel_element, parse_genword,
    parse_group_spec, retraction, rewrite_to_y, separation_word, transitivity_witness, Backend, Certificate, Error,
    Faithfulness, FiniteGroup, FreeProductWord, GAutomorphism, Group, HomPoint, PrefixExchangeMap, ThompsonV,
};

#[derive(Parser)]
#[command(
    name = "gfa",
    version,
    about = "Witnesses for the action of Aut_G(G*F_n) on Hom_G(G*F_n, G)"
)]
struct Cli {
    /// A<n>, S<n>, C<n>, D<n>, trivial, perm<d>{g1; g2}, or V.
    #[arg(long, global = true, default_value = "A5")]
    group: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Word-length radius of the element search in V.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Threads for the orbit census.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Word in G*<x> killing every excluded element but not the target.
    Separate {
        /// Repeatable; `;` also separates elements.
        #[arg(long, required = true)]
        exclude: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Automorphism sending one point to another.
    Transitivity {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Automorphism sending a tuple of distinct points to another.
    Ktrans {
        #[arg(long)]
        k: Option<usize>,
        /// Points `[g1; g2] [h1; h2] …`.
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
    /// Rewrite a generator word into one for its retraction onto Stab(φ₀).
    RewriteStab {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        genword: String,
    },
    /// Decide whether a word is a law with constants.
    MixedIdentity {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Non-trivial automorphism acting trivially on all points.
    Kernel {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Point moved by an automorphism.
    Faithful {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        genword: String,
    },
    /// Orbit census on G^n.
    Orbits {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Orbit census on ordered pairs of points of G^n.
    PairOrbits {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Arithmetic in Thompson's group V.
    Vcalc {
        #[command(subcommand)]
        op: VOp,
    },
}

#[derive(Subcommand)]
enum VOp {
    /// Product, applying the leftmost factor first.
    Mul {
        elems: Vec<String>,
    },
    Inv {
        elem: String,
    },
    /// Reduced form of a possibly unreduced map.
    Reduce {
        elem: String,
    },
    /// Image of a finite bit string.
    Apply {
        elem: String,
        bits: String,
    },
    /// Elements of word length at most the radius.
    Ball {
        #[arg(long)]
        list: bool,
    },
}

enum Outcome {
    Cert(Certificate),
    Report(OrbitReport),
    Value { text: String, json: serde_json::Value },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationFailed(_) => 1,
        Error::BoundExceeded(_) | Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let ok = match &outcome {
                Outcome::Cert(c) => c.verified,
                _ => true,
            };
            emit(cli.format, &outcome);
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    let v = serde_json::json!({ "schema": 1, "error": e.to_string(), "exit": exit_code(&e) });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(format: Format, outcome: &Outcome) {
    match (format, outcome) {
        (Format::Json, Outcome::Cert(c)) => println!("{}", serde_json::to_string_pretty(c).expect("json")),
        (Format::Json, Outcome::Report(r)) => println!("{}", serde_json::to_string_pretty(r).expect("json")),
        (Format::Json, Outcome::Value { json, .. }) => {
            println!("{}", serde_json::to_string_pretty(json).expect("json"))
        }
        (Format::Text, Outcome::Cert(c)) => println!("{c}"),
        (Format::Text, Outcome::Report(r)) => {
            println!("{} on {} points of {}^{}", r.space, r.state_space_size, r.group, r.rank);
            println!("orbits: {}", r.orbit_count);
            let sizes: Vec<String> = r.orbit_sizes.iter().map(u64::to_string).collect();
            println!("sizes: {}", sizes.join(", "));
            println!("generators: {}", r.generators.join(", "));
            println!("checksum: {}", r.checksum);
            println!("time: {:.3}s", r.duration_secs);
        }
        (Format::Text, Outcome::Value { text, .. }) => println!("{text}"),
    }
}

fn run(cli: &Cli) -> gfa_core::Result<Outcome> {
    if let Command::Vcalc { op } = &cli.command {
        return vcalc(op, cli.radius);
    }
    match parse_group_spec(&cli.group)? {
        Backend::Perm(g) => match &cli.command {
            Command::Ktrans { k, src, dst } => ktrans(&g, *k, src, dst).map(Outcome::Cert),
            Command::Kernel { n } => kernel(&g, *n).map(Outcome::Cert),
            Command::Orbits { n } => orbits_on_points(&g, *n, &config(cli)).map(Outcome::Report),
            Command::PairOrbits { n } => orbits_on_pairs(&g, *n, &config(cli)).map(Outcome::Report),
            other => any_group(&g, other),
        },
        Backend::V(v) => {
            let v = match cli.radius {
                Some(r) => ThompsonV::with_search_radius(r),
                None => v,
            };
            match &cli.command {
                Command::Ktrans { .. }
                | Command::Kernel { .. }
                | Command::Orbits { .. }
                | Command::PairOrbits { .. } => Err(Error::Unsupported(format!(
                    "this command needs a finite group, not {}",
                    v.name()
                ))),
                other => any_group(&v, other),
            }
        }
    }
}

fn config(cli: &Cli) -> OrbitConfig {
    OrbitConfig::default().with_workers(cli.workers)
}

fn any_group<G: Group>(g: &G, command: &Command) -> gfa_core::Result<Outcome> {
    let cert = match command {
        Command::Separate { exclude, target } => separate(g, exclude, target)?,
        Command::Transitivity { from, to } => transitivity(g, from, to)?,
        Command::RewriteStab { n, genword } => rewrite_stab(g, *n, genword)?,
        Command::MixedIdentity { word, n } => mixed_identity(g, word, *n)?,
        Command::Faithful { n, genword } => faithful(g, *n, genword)?,
        _ => unreachable!("dispatched by backend"),
    };
    Ok(Outcome::Cert(cert))
}

/// Evaluates the images directly instead of going through the action.
fn sends<G: Group>(g: &G, alpha: &GAutomorphism<G::Elem>, from: &HomPoint<G::Elem>, to: &HomPoint<G::Elem>) -> bool {
    from.rank() == alpha.rank()
        && alpha
            .images()
            .iter()
            .zip(to.images())
            .all(|(w, t)| w.evaluate(g, from).map(|v| v == *t).unwrap_or(false))
}

/// Every substitution from the search set, for exhaustive re-checks.
fn every_point<G: Group>(g: &G, n: usize) -> gfa_core::Result<impl Iterator<Item = HomPoint<G::Elem>> + '_> {
    let elems = g.search_elements()?.into_owned();
    let m = elems.len() as u64;
    let total = m.checked_pow(n as u32).ok_or_else(|| Error::CapExceeded {
        what: format!("{m}^{n} points"),
        cap: u64::MAX,
    })?;
    Ok((0..total).map(move |mut s| {
        let mut im = vec![g.identity(); n];
        for slot in im.iter_mut().rev() {
            *slot = elems[(s % m) as usize].clone();
            s /= m;
        }
        HomPoint::new(im)
    }))
}

fn separate<G: Group>(g: &G, exclude: &[String], target: &str) -> gfa_core::Result<Certificate> {
    let excluded = exclude
        .iter()
        .flat_map(|s| s.split(';'))
        .filter(|s| !s.trim().is_empty())
        .map(|s| g.parse_elem(s.trim()))
        .collect::<gfa_core::Result<Vec<_>>>()?;
    let target = g.parse_elem(target)?;
    let sep = separation_word(g, &excluded, &target)?;
    let at = |e: &G::Elem| sep.word.evaluate(g, &HomPoint::new(vec![e.clone()])).expect("rank 1");
    let mut cert = Certificate::new(
        "separate",
        g.name(),
        format!("w(t) = 1 for all t in T, and w({target}) != 1"),
    )
    .witness(sep.word.to_string())
    .detail(
        "excluded",
        sep.excluded.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    )
    .detail(
        "conjugators",
        sep.conjugators.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    )
    .detail("letters", sep.word.len());
    for t in &sep.excluded {
        cert = cert.check(format!("w({t}) = 1"), g.is_identity(&at(t)));
    }
    let v = at(&target);
    Ok(cert.check(format!("w({target}) = {v} != 1"), !g.is_identity(&v)))
}

fn transitivity<G: Group>(g: &G, from: &str, to: &str) -> gfa_core::Result<Certificate> {
    let from = HomPoint::parse(g, from)?;
    let to = HomPoint::parse(g, to)?;
    let alpha = transitivity_witness(g, &from, &to)?;
    Ok(
        Certificate::new("transitivity", g.name(), format!("{from} is sent to {to}"))
            .witness(format_genword(g, alpha.genword().unwrap_or_default()))
            .check(
                "images evaluated at the source give the target",
                sends(g, &alpha, &from, &to),
            ),
    )
}

fn ktrans<G: FiniteGroup>(g: &G, k: Option<usize>, src: &str, dst: &str) -> gfa_core::Result<Certificate> {
    let src = HomPoint::parse_list(g, src)?;
    let dst = HomPoint::parse_list(g, dst)?;
    if let Some(k) = k {
        if src.len() != k || dst.len() != k {
            return Err(Error::Precondition(format!(
                "--k {k} but got {} source and {} target points",
                src.len(),
                dst.len()
            )));
        }
    }
    let alpha = k_transitivity_witness(g, &src, &dst)?;
    let back = alpha.inverse(g)?;
    let word = alpha.genword().unwrap_or_default();
    let list = |ps: &[HomPoint<G::Elem>]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Certificate::new(
        "ktrans",
        g.name(),
        format!("({}) is sent to ({})", list(&src), list(&dst)),
    )
    .witness(format_genword(g, word))
    .detail("k", src.len())
    .detail("generators", word.len())
    .check(
        "each source point is sent to its target",
        src.iter().zip(&dst).all(|(s, d)| sends(g, &alpha, s, d)),
    )
    .check(
        "the inverse sends each target back",
        src.iter().zip(&dst).all(|(s, d)| sends(g, &back, d, s)),
    ))
}

fn rewrite_stab<G: Group>(g: &G, n: usize, genword: &str) -> gfa_core::Result<Certificate> {
    let word = parse_genword(g, n, genword)?;
    let alpha = GAutomorphism::from_genword(g, n, word.clone())?;
    let rewritten = rewrite_to_y(g, n, &word)?;
    let beta = GAutomorphism::from_genword(g, n, rewritten.clone())?;
    let phi0 = HomPoint::trivial(g, n);
    let stabilizes = alpha.act(g, &phi0)? == phi0;
    let mut cert = Certificate::new(
        "rewrite-stab",
        g.name(),
        "the rewritten word is a Y-word for the retraction",
    )
    .witness(format_genword(g, &rewritten))
    .detail(
        "images",
        beta.images().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    )
    .check(
        "no right multiplication by constants",
        rewritten.iter().all(|x| x.is_y()),
    )
    .check("images equal the retraction", beta == retraction(g, &alpha))
    .check("fixes the trivial point", sends(g, &beta, &phi0, &phi0));
    if stabilizes {
        cert = cert.check("input already fixes the trivial point and is unchanged", beta == alpha);
    }
    Ok(cert)
}

fn mixed_identity<G: Group>(g: &G, word: &str, n: Option<usize>) -> gfa_core::Result<Certificate> {
    let w = match n {
        Some(n) => FreeProductWord::parse(g, n, word)?,
        None => FreeProductWord::parse_min_rank(g, word)?,
    };
    let verdict = is_mixed_identity(g, &w)?;
    let cert = Certificate::new("mixed-identity", g.name(), "").detail("substitutions", verdict.points_searched);
    Ok(match &verdict.counterexample {
        Some(p) => {
            let v = verdict.word.evaluate(g, p)?;
            Certificate {
                claim: format!("{} is not a mixed identity", verdict.word),
                ..cert
            }
            .witness(p.to_string())
            .check(format!("value {v} at the witness is not 1"), !g.is_identity(&v))
        }
        None => Certificate {
            claim: format!("{} is a mixed identity", verdict.word),
            ..cert
        }
        .check("exhaustive scan found no non-trivial value", verdict.is_identity),
    })
}

fn kernel<G: FiniteGroup>(g: &G, n: usize) -> gfa_core::Result<Certificate> {
    let k = kernel_element(g, n)?;
    let alpha = &k.automorphism;
    let law = is_mixed_identity(g, &k.law)?;
    let squared = alpha.compose(g, alpha)?;
    let phi0 = HomPoint::trivial(g, n);
    Ok(Certificate::new(
        "kernel",
        g.name(),
        format!("x1 -> {} acts trivially on all points", alpha.image(1)),
    )
    .witness(format_genword(g, alpha.genword().unwrap_or_default()))
    .detail("exponent", k.exponent)
    .detail("points", k.points_checked)
    .check("not the identity", !alpha.is_identity())
    .check(format!("{} is a mixed identity", k.law), law.is_identity)
    .check(
        format!("fixes all {} points", k.points_checked),
        every_point(g, n)?.all(|p| sends(g, alpha, &p, &p)),
    )
    .check(
        "its square is not the identity and fixes the trivial point",
        !squared.is_identity() && sends(g, &squared, &phi0, &phi0),
    ))
}

fn faithful<G: Group>(g: &G, n: usize, genword: &str) -> gfa_core::Result<Certificate> {
    let alpha = GAutomorphism::from_genword(g, n, parse_genword(g, n, genword)?)?;
    let text = format_genword(g, alpha.genword().unwrap_or_default());
    Ok(match faithfulness_witness(g, &alpha)? {
        Faithfulness::Witness(p) => {
            let q = alpha.act(g, &p)?;
            Certificate::new("faithful", g.name(), format!("{text} moves {p} to {q}"))
                .witness(p.to_string())
                .check("the point is moved", !sends(g, &alpha, &p, &p))
        }
        Faithfulness::InKernel { points_checked } => {
            Certificate::new("faithful", g.name(), format!("{text} fixes every point"))
                .detail("in_kernel", true)
                .detail("points", points_checked)
                .check(
                    format!("fixes all {points_checked} points"),
                    every_point(g, n)?.all(|p| sends(g, &alpha, &p, &p)),
                )
        }
    })
}

fn parse_v(text: &str) -> gfa_core::Result<PrefixExchangeMap> {
    let [a, b, c, pi] = PrefixExchangeMap::standard_generators();
    match text.trim() {
        "A" => Ok(a),
        "B" => Ok(b),
        "C" => Ok(c),
        "pi0" => Ok(pi),
        other => PrefixExchangeMap::parse(other),
    }
}

fn vcalc(op: &VOp, radius: Option<usize>) -> gfa_core::Result<Outcome> {
    let value = |e: PrefixExchangeMap| Outcome::Value {
        text: e.to_string(),
        json: serde_json::json!({ "element": e.to_string() }),
    };
    Ok(match op {
        VOp::Mul { elems } => {
            let mut acc = PrefixExchangeMap::identity();
            for e in elems {
                acc = acc.then(&parse_v(e)?);
            }
            value(acc)
        }
        VOp::Inv { elem } => value(parse_v(elem)?.inverse()),
        VOp::Reduce { elem } => value(parse_v(elem)?),
        VOp::Apply { elem, bits } => {
            let input = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::Parse(format!(
                        "bit string {bits:?} has a character other than 0 or 1"
                    ))),
                })
                .collect::<gfa_core::Result<Vec<u8>>>()?;
            let out = parse_v(elem)?
                .apply(&input)
                .ok_or_else(|| Error::Precondition(format!("{bits:?} is shorter than every domain prefix it meets")))?;
            let s: String = out.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect();
            Outcome::Value {
                text: s.clone(),
                json: serde_json::json!({ "bits": s }),
            }
        }
        VOp::Ball { list } => {
            let r = radius.unwrap_or(gfa_core::group::DEFAULT_BALL_RADIUS);
            let ball = ThompsonV::ball(r)?;
            let elems: Vec<String> = ball.iter().map(|e| e.to_string()).collect();
            let mut text = format!("radius {r}: {} elements", elems.len());
            if *list {
                text = std::iter::once(text)
                    .chain(elems.iter().cloned())
                    .collect::<Vec<_>>()
                    .join("\n");
            }
            Outcome::Value {
                text,
                json: serde_json::json!({ "radius": r, "size": elems.len(), "elements": elems }),
            }
        }
    })
}
