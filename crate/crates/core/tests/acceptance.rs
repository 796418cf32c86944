//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cayley_core::abelian::{zn_cover, zn_graph};
use cayley_core::cayley::{moore_bound, DiameterReport};
use cayley_core::certificate::Certificate;
use cayley_core::dihedral::{build_dihedral_graph, coverage, DihedralCertificate};
use cayley_core::group::{build_group, catalog, CoordPermutation, FiniteGroup, Group, GroupHom, GroupSpec};
use cayley_core::heisenberg::{
    express_flag0, express_flag1, heisenberg_graph, HeisenbergElement, HeisenbergGroup, S1Generator,
};
use cayley_core::intmat::IntMatrix;
use cayley_core::published::published_rows;
use cayley_core::semidirect::{
    bits_to_mask, build_certificate, instantiate, search, verify_certificate, AdjacencyRule, EngineError,
    GeneratorSpec, SearchConfig, SearchTarget, SolutionCertificate, VerifyOptions,
};

const SEED: u64 = 0x5eed;
const LIMIT_EXAMPLES: Duration = Duration::from_secs(30);
const LIMIT_HEISENBERG: Duration = Duration::from_secs(120);
const LIMIT_DIHEDRAL: Duration = Duration::from_secs(120);
const LIMIT_SEARCH_EACH: Duration = Duration::from_secs(300);
const LIMIT_DIRECTED: Duration = Duration::from_secs(3600);
const LIMIT_ZN_COVER: Duration = Duration::from_secs(60);
const RANDOM_MATRICES: usize = 10_000;

/// Every graph built during the run, for the Moore-bound check.
#[derive(Default)]
struct Ledger {
    graphs: Vec<(String, DiameterReport, bool)>,
    certificates: Vec<Certificate>,
}

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    check(t.elapsed() <= limit, format!("took {:?}, limit {limit:?}", t.elapsed()))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn spec_with_images(k_group: GroupSpec, arity: usize, images: &dyn Fn(&FiniteGroup, usize) -> CoordPermutation) -> (Arc<FiniteGroup>, GroupHom) {
    let g = Arc::new(build_group(&k_group).unwrap());
    let gens = g.generators().to_vec();
    let imgs: Vec<CoordPermutation> = gens.iter().map(|&x| images(&g, x)).collect();
    let hom = GroupHom::from_generator_images(g.clone(), arity, &gens, &imgs).unwrap();
    (g, hom)
}

fn masks(bits: &[&str]) -> Vec<u64> {
    bits.iter().map(|b| bits_to_mask(b).unwrap()).collect()
}

fn z36_example() -> SolutionCertificate {
    let (_, hom) = spec_with_images(GroupSpec::Cyclic(36), 6, &|_, _| CoordPermutation::rotation(6, 1));
    let spec = GeneratorSpec::new(6, false, hom, vec![1, 35, 4, 32], masks(&["000001", "000010", "011001", "010110"])).unwrap();
    build_certificate(&spec, Some(GroupSpec::Cyclic(36))).unwrap()
}

fn s4_example() -> SolutionCertificate {
    let (g, hom) = spec_with_images(GroupSpec::Symmetric(4), 4, &|g, x| CoordPermutation::from_cycles(4, &g.label(x)).unwrap());
    let s = ["(2,3,4)", "(2,4,3)", "(3,4)", "(1,2)"].map(|l| g.find_label(l).unwrap()).to_vec();
    let spec = GeneratorSpec::new(4, false, hom, s, masks(&["1010", "1100", "0100", "1110"])).unwrap();
    build_certificate(&spec, Some(GroupSpec::Symmetric(4))).unwrap()
}

/// Full certificate check at `m`, then an exact diameter.
fn example_at(led: &mut Ledger, name: &str, c: &SolutionCertificate, m: usize, order: usize, degree: usize, diameter: usize) -> Result<(), String> {
    let opts = VerifyOptions {
        samples: 20,
        seed: SEED,
        skip_bfs: false,
    };
    let r = verify_certificate(c, m, &opts).map_err(err)?;
    led.graphs.push((format!("{name} m={m}"), r.clone(), false));
    check(
        (r.order, r.degree, r.diameter) == (order, degree, diameter),
        format!("{name} m={m}: got ({}, {}, {})", r.order, r.degree, r.diameter),
    )
}

fn criterion_1(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let c = z36_example();
    check(c.solutions.len() == 36 && c.spec.first_uncovered().is_none(), "not all 36 elements covered")?;
    example_at(led, "Z36", &c, 2, 2304, 8, 6)?;
    example_at(led, "Z36", &c, 3, 26244, 12, 6)?;
    led.certificates.push(Certificate::Semidirect(c));
    within(t, LIMIT_EXAMPLES)?;
    Ok(format!("36/36 covered; m=2 (2304, 8, 6); m=3 (26244, 12, 6); {:.1?}", t.elapsed()))
}

fn criterion_2(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let c = s4_example();
    check(c.solutions.len() == 24 && c.spec.first_uncovered().is_none(), "not all 24 elements covered")?;
    example_at(led, "S4", &c, 2, 384, 8, 4)?;
    example_at(led, "S4", &c, 3, 1944, 12, 4)?;
    led.certificates.push(Certificate::Semidirect(c));
    within(t, LIMIT_EXAMPLES)?;
    Ok(format!("24/24 covered; m=2 (384, 8, 4); m=3 (1944, 12, 4); {:.1?}", t.elapsed()))
}

/// `((a,b,c),ε)` as an upper unitriangular matrix mod `p` with a flag.
type Mat = ([[usize; 3]; 3], bool);

fn as_matrix(e: HeisenbergElement) -> Mat {
    ([[1, e.a, e.b], [0, 1, e.c], [0, 0, 1]], e.flag)
}

fn mat_mul(p: usize, x: &Mat, y: &Mat) -> Mat {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|l| x.0[i][l] * y.0[l][j]).sum::<usize>() % p;
        }
    }
    (out, x.1 ^ y.1)
}

fn expand(p: usize, word: &[S1Generator]) -> Mat {
    word.iter().fold(([[1, 0, 0], [0, 1, 0], [0, 0, 1]], false), |acc, g| {
        let e = match *g {
            S1Generator::Alpha(x) => HeisenbergElement::new(x % p, x % p, 0, false),
            S1Generator::Beta(x) => HeisenbergElement::new(0, x % p, x % p, true),
        };
        mat_mul(p, &acc, &as_matrix(e))
    })
}

fn criterion_3(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let mut words = 0;
    for p in [5usize, 7, 11] {
        let g = HeisenbergGroup::new(p).map_err(err)?;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for flag in [false, true] {
                        let x = HeisenbergElement::new(a, b, c, flag);
                        let word = match (flag, a, c) {
                            (false, a, _) if a != 0 => express_flag0(&g, x).map_err(err)?,
                            (true, _, c) if c != 0 => express_flag1(&g, x).map_err(err)?,
                            _ => continue,
                        };
                        check(word.len() <= 3, format!("p={p}: word for {x} has length {}", word.len()))?;
                        check(expand(p, &word) == as_matrix(x), format!("p={p}: word for {x} expands wrongly"))?;
                        words += 1;
                    }
                }
            }
        }
        let r = heisenberg_graph(p).map_err(err)?.diameter().map_err(err)?;
        led.graphs.push((format!("heisenberg p={p}"), r.clone(), false));
        check(r.order == 2 * p * p * p && r.diameter == 3, format!("p={p}: order {} diameter {}", r.order, r.diameter))?;
    }
    within(t, LIMIT_HEISENBERG)?;
    Ok(format!("orders 250/686/2662 at diameter 3; {words} case-formula words expand correctly; {:.1?}", t.elapsed()))
}

fn criterion_4(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for k in (7..=101).step_by(2) {
        let table = coverage(k).map_err(|e| format!("k={k}: {e}"))?;
        check(table.entries.len() == 2 * k, format!("k={k}: {} entries", table.entries.len()))?;
        checked += 1;
    }
    for (k, order) in [(7usize, 1792usize), (9, 9216)] {
        for degree in [6, 7, 8] {
            let r = build_dihedral_graph(k, 2, Some(degree)).map_err(err)?.diameter().map_err(err)?;
            led.graphs.push((format!("dihedral k={k} d={degree}"), r.clone(), false));
            check(
                (r.order, r.degree, r.diameter) == (order, degree, k),
                format!("k={k} degree {degree}: got ({}, {}, {})", r.order, r.degree, r.diameter),
            )?;
        }
        let mut c = DihedralCertificate::build(k).map_err(err)?;
        c.verified_m = vec![2];
        led.certificates.push(Certificate::Dihedral(c));
    }
    within(t, LIMIT_DIHEDRAL)?;
    Ok(format!(
        "coverage for {checked} odd k in [7, 101]; k=7 (1792, 6, 7), k=9 (9216, 6, 9); padded degrees 7, 8 keep diameter; {:.1?}",
        t.elapsed()
    ))
}

fn run_search(led: &mut Ledger, group: GroupSpec, k: usize, s: usize, directed: bool, want: (u64, u64)) -> Result<SolutionCertificate, String> {
    let t = Instant::now();
    let cfg = SearchConfig::new(k, s, directed);
    let out = search(&SearchTarget::Group(group.clone()), &cfg).map_err(|e| format!("{group} k={k} s={s}: {e}"))?;
    let c = out.certificate;
    let r = c.ratio();
    check((r.num, r.den) == want, format!("{group}: ratio {}", r.render()))?;
    within(t, if directed { LIMIT_DIRECTED } else { LIMIT_SEARCH_EACH })?;
    led.certificates.push(Certificate::Semidirect(c.clone()));
    Ok(c)
}

fn criterion_5(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for (group, k, s, want) in [
        (GroupSpec::Cyclic(12), 3, 4, (12, 64)),
        (GroupSpec::Cyclic(4), 4, 3, (4, 81)),
        (GroupSpec::Symmetric(3), 5, 3, (6, 243)),
    ] {
        let c = run_search(led, group, k, s, false, want)?;
        let opts = VerifyOptions {
            samples: 20,
            seed: SEED,
            skip_bfs: false,
        };
        let r = verify_certificate(&c, 2, &opts).map_err(err)?;
        led.graphs.push((format!("search k={k} s={s}"), r, false));
        parts.push(c.ratio().render());
    }
    Ok(format!("{}; {:.1?}", parts.join(", "), t.elapsed()))
}

fn criterion_6(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let group: GroupSpec = "product(cyclic(2),symmetric(4))".parse().map_err(err)?;
    let c = run_search(led, group.clone(), 3, 4, true, (48, 64))?;
    let rendered = c.ratio().render();
    check(rendered == "48/4³ = 0.75000", format!("rendered {rendered}"))?;
    let graph = instantiate(&c.spec, 2).map_err(err)?;
    check(graph.directed, "graph is not directed")?;
    let r = graph.diameter().map_err(err)?;
    led.graphs.push(("directed Z2xS4 m=2".into(), r.clone(), true));
    check(
        (r.order, r.degree, r.diameter) == (384, 8, 3),
        format!("m=2: got ({}, {}, {})", r.order, r.degree, r.diameter),
    )?;
    let mut literal = SearchConfig::new(3, 4, true);
    literal.adjacency = AdjacencyRule::Elements;
    let info = match search(&SearchTarget::Group(group), &literal) {
        Ok(_) => "element-level adjacency rule also finds one".to_string(),
        Err(EngineError::NothingFound) => "element-level adjacency rule finds none".to_string(),
        Err(e) => format!("element-level adjacency rule: {e}"),
    };
    Ok(format!("{rendered}; m=2 directed (384, 8, 3); generator-level adjacency ({info}); {:.1?}", t.elapsed()))
}

fn criterion_7(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let mut worst = 0;
    for n in 6..=2000 {
        let cover = zn_cover(n).map_err(err)?;
        let r = zn_graph(&cover).map_err(err)?.diameter().map_err(err)?;
        check(r.diameter <= 3, format!("n={n}: diameter {}", r.diameter))?;
        worst = worst.max(r.diameter);
        if n % 500 == 0 {
            led.graphs.push((format!("Z{n}"), r, false));
        }
    }
    within(t, LIMIT_ZN_COVER)?;
    Ok(format!("n in [6, 2000], max diameter {worst}; {:.1?}", t.elapsed()))
}

fn latin_and_associative(g: &FiniteGroup) -> Result<(), String> {
    let n = g.order();
    g.check_axioms().map_err(|e| format!("{}: {e}", g.name()))?;
    for a in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for b in 0..n {
            row[g.mul(a, b)] = true;
            col[g.mul(b, a)] = true;
        }
        check(row.iter().all(|&x| x) && col.iter().all(|&x| x), format!("{}: not a Latin square", g.name()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..2000 {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        check(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)), format!("{}: not associative", g.name()))?;
    }
    Ok(())
}

/// `y ↦ yM` is onto `Z_pᵏ`.
fn onto(m: &IntMatrix, p: i64) -> bool {
    let k = m.size();
    let total = (p as usize).pow(k as u32);
    let mut hit = vec![false; total];
    let mut y = vec![0i64; k];
    for _ in 0..total {
        let x = m.left_mul_mod(&y, p);
        hit[x.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)] = true;
        for d in y.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    hit.iter().all(|&h| h)
}

fn primes_up_to(n: u64) -> Vec<i64> {
    (2..=n as i64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Random small matrix plus a bound on `|det|` from its entry range.
fn random_matrix(rng: &mut ChaCha8Rng) -> (IntMatrix, u64) {
    // (size, lo, hi, det bound): Hadamard for 2×2 in [−3,3] is 18; 3×3 in
    // [−1,1] has |det| ≤ 4; 4×4 in [0,1] has |det| ≤ 3.
    let (k, lo, hi, bound) = [(2, -3, 3, 18), (3, -1, 1, 4), (4, 0, 1, 3)][rng.gen_range(0..3)];
    let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    (IntMatrix::from_rows(&rows).unwrap(), bound)
}

fn criterion_8(led: &mut Ledger) -> Outcome {
    let t = Instant::now();
    let mut groups: Vec<GroupSpec> = catalog().into_iter().map(|e| e.spec).collect();
    groups.extend(published_rows().into_iter().map(|r| r.group));
    groups.extend([GroupSpec::Dihedral(14), GroupSpec::HeisenbergZ2(5), GroupSpec::Semidirect { n: 7, m: 3, exp: 2 }]);
    for spec in &groups {
        latin_and_associative(&build_group(spec).map_err(err)?)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut unimodular = 0;
    for _ in 0..RANDOM_MATRICES {
        let (m, bound) = random_matrix(&mut rng);
        // det ≠ ±1 iff some prime ≤ |det| ≤ bound divides it
        let surjective_everywhere = primes_up_to(bound).iter().all(|&p| onto(&m, p));
        check(m.is_unimodular() == surjective_everywhere, format!("oracle disagrees on {:?}", m.rows()))?;
        unimodular += usize::from(surjective_everywhere);
    }

    let mut replays = 0;
    for cert in &led.certificates {
        if let Certificate::Semidirect(c) = cert {
            for m in [2usize, 3, 5, 7] {
                let opts = VerifyOptions {
                    samples: 10,
                    seed: SEED + m as u64,
                    skip_bfs: true,
                };
                verify_certificate(c, m, &opts).map_err(err)?;
                replays += c.solutions.len() * 10;
            }
        }
    }

    for (name, r, directed) in &led.graphs {
        let mb = moore_bound(r.degree, r.diameter, *directed).map_err(err)?;
        check(BigUint::from(r.order) <= mb, format!("{name}: order {} above Moore bound {mb}", r.order))?;
    }

    for cert in &led.certificates {
        let a = cert.to_json().map_err(err)?;
        let b = Certificate::from_json(&a).map_err(err)?.to_json().map_err(err)?;
        check(a == b, format!("{} certificate does not round-trip", cert.kind()))?;
    }
    let first = search(&SearchTarget::Group(GroupSpec::Symmetric(3)), &SearchConfig::new(5, 3, false)).map_err(err)?;
    let again = search(&SearchTarget::Group(GroupSpec::Symmetric(3)), &SearchConfig::new(5, 3, false)).map_err(err)?;
    check(
        Certificate::Semidirect(first.certificate).to_json().map_err(err)?
            == Certificate::Semidirect(again.certificate).to_json().map_err(err)?,
        "repeated search differs",
    )?;

    Ok(format!(
        "{} groups; {RANDOM_MATRICES} matrices ({unimodular} unimodular) agree with the surjectivity oracle; {replays} replays; {} graphs under the Moore bound; {} certificates round-trip; {:.1?}",
        groups.len(),
        led.graphs.len(),
        led.certificates.len(),
        t.elapsed()
    ))
}

fn main() {
    let mut led = Ledger::default();
    let criteria: [(&str, fn(&mut Ledger) -> Outcome); 8] = [
        ("Z36 example diameter 6", criterion_1),
        ("S4 example diameter 4", criterion_2),
        ("Heisenberg diameter 3", criterion_3),
        ("dihedral odd diameters", criterion_4),
        ("undirected search rows", criterion_5),
        ("directed search row", criterion_6),
        ("Z_n digit cover", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut led)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
