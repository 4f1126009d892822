//! Acceptance gate: every criterion runs its suites over the fixture grid and prints one
//! PASS/FAIL line. Every comparison is exact; a suite run longer than five minutes fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hallcx::exactla::PrimeField;
use hallcx::quiverrep::{Quiver, RepCat};
use hallcx::suites::{run_suite, SuiteConfig};

const LEVELS: (i64, i64) = (-2, 3);
const TIME_LIMIT: Duration = Duration::from_secs(300);

struct Fixture {
    name: &'static str,
    n: usize,
    max_dim: Vec<usize>,
}

fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "A2", n: 2, max_dim: vec![2, 2] },
        Fixture { name: "A3", n: 3, max_dim: vec![1, 1, 1] },
    ]
}

/// Which `m` values a suite is run with.
#[derive(Clone, Copy)]
enum Ms {
    /// Once, with m = 2 (the suite does not depend on m, or only exists for m = 2).
    Two,
    /// With m = 2 and m = 3.
    Both,
}

struct Criterion {
    id: usize,
    title: &'static str,
    suites: &'static [(&'static str, Ms)],
    primes: &'static [u32],
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Riedtmann-Peng and extension sums", suites: &[("riedtmann-peng", Ms::Both)], primes: &[2, 3] },
    Criterion { id: 2, title: "line count on one vertex", suites: &[("line-count", Ms::Two)], primes: &[2, 3, 5] },
    Criterion { id: 3, title: "associativity", suites: &[("assoc", Ms::Both)], primes: &[2, 3] },
    Criterion { id: 4, title: "chi homomorphism and rho bijection", suites: &[("thm-3-4", Ms::Both)], primes: &[2, 3] },
    Criterion { id: 5, title: "ideal closure", suites: &[("lemma-3-3", Ms::Both)], primes: &[2, 3] },
    Criterion { id: 6, title: "stalk complex Ext and Euler identities", suites: &[("lemma-5-1", Ms::Two)], primes: &[2, 3] },
    Criterion {
        id: 7,
        title: "relations in MH and MH_m",
        suites: &[("rel-5-5", Ms::Two), ("rel-6-4", Ms::Both)],
        primes: &[2, 3],
    },
    Criterion {
        id: 8,
        title: "derived relations and psi-hat round trip",
        suites: &[("rel-5-7", Ms::Two), ("psi-hat", Ms::Two)],
        primes: &[2, 3],
    },
    Criterion {
        id: 9,
        title: "ordered monomial bases",
        suites: &[("basis-5-4", Ms::Two), ("basis-6-1", Ms::Both)],
        primes: &[2, 3],
    },
    Criterion { id: 10, title: "Krull-Schmidt round trip", suites: &[("krull-schmidt", Ms::Both)], primes: &[2, 3] },
    Criterion { id: 11, title: "integration map", suites: &[("integration-7", Ms::Two)], primes: &[2, 3] },
    Criterion { id: 12, title: "worked products by both routes", suites: &[("worked-products", Ms::Two)], primes: &[2, 3] },
];

/// Suites checked alongside the criteria.
const SUPPLEMENTARY: &[(&str, Ms)] = &[("embed-psi-lambda-phi", Ms::Both)];

#[derive(Default)]
struct Tally {
    runs: usize,
    instances: usize,
    slowest: Duration,
    problems: Vec<String>,
}

impl Tally {
    fn pass(&self) -> bool {
        self.problems.is_empty() && self.runs > 0
    }

    fn line(&self, label: &str) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] {label}: {} runs, {} instances, slowest run {:.1}s",
            self.runs,
            self.instances,
            self.slowest.as_secs_f64()
        );
        for p in self.problems.iter().take(5) {
            s.push_str(&format!("\n         {p}"));
        }
        s
    }
}

struct Runner {
    cats: BTreeMap<(usize, u32), RepCat>,
    fixtures: Vec<Fixture>,
}

impl Runner {
    fn cat(&mut self, fixture: usize, p: u32) -> &RepCat {
        let n = self.fixtures[fixture].n;
        self.cats.entry((fixture, p)).or_insert_with(|| RepCat::new(Quiver::linear_a(n), PrimeField::new(p).unwrap()))
    }

    fn run(&mut self, suite: &str, ms: Ms, primes: &[u32], tally: &mut Tally) {
        let m_values: &[usize] = match ms {
            Ms::Two => &[2],
            Ms::Both => &[2, 3],
        };
        for fixture in 0..self.fixtures.len() {
            for &p in primes {
                for &m in m_values {
                    let name = self.fixtures[fixture].name;
                    let cfg = SuiteConfig::new(self.fixtures[fixture].max_dim.clone(), m, LEVELS);
                    let tag = format!("{suite} on {name} p={p} m={m}");
                    let start = Instant::now();
                    let result = run_suite(suite, self.cat(fixture, p), &cfg);
                    let took = start.elapsed();
                    tally.runs += 1;
                    tally.slowest = tally.slowest.max(took);
                    if took > TIME_LIMIT {
                        tally.problems.push(format!("{tag}: took {:.1}s", took.as_secs_f64()));
                    }
                    match result {
                        Ok(report) => {
                            tally.instances += report.instances.len();
                            if report.instances.is_empty() {
                                tally.problems.push(format!("{tag}: no instances"));
                            }
                            for f in report.failures().take(3) {
                                tally.problems.push(format!("{tag}: {} {:?}: {} != {}", f.relation, f.params, f.lhs, f.rhs));
                            }
                        }
                        Err(e) => tally.problems.push(format!("{tag}: {e}")),
                    }
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let mut runner = Runner { cats: BTreeMap::new(), fixtures: fixtures() };
    let mut lines = Vec::new();
    let mut all = true;
    for c in CRITERIA {
        let mut tally = Tally::default();
        for &(suite, ms) in c.suites {
            runner.run(suite, ms, c.primes, &mut tally);
        }
        all &= tally.pass();
        let line = tally.line(&format!("criterion {:>2} ({})", c.id, c.title));
        println!("{line}");
        lines.push(line);
    }
    for &(suite, ms) in SUPPLEMENTARY {
        let mut tally = Tally::default();
        runner.run(suite, ms, &[2, 3], &mut tally);
        all &= tally.pass();
        println!("{}", tally.line(&format!("supplementary ({suite})")));
    }
    let passed = lines.iter().filter(|l| l.starts_with("[PASS]")).count();
    println!("acceptance: {passed}/{} criteria pass", CRITERIA.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
