//! Suite runner and report plumbing for the `umbracomb` binary.
//!
//! Every check is a pure computation producing two serialized values; the
//! check passes iff the strings are byte-identical. Reports keep their
//! construction order no matter how many worker threads run them, and the
//! rendered output contains no timing or other nondeterministic data, so
//! identical flags produce identical bytes.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use umbracomb::noncrossing::{
    chain_symfunc, enumerate_nc, enumerate_set_partitions, maximal_chain_count, NcKind,
};
use umbracomb::parking::{
    abel_poly, enumerate_parking, orbit_representatives, volume_poly, volume_umbral,
};
use umbracomb::symfunc::{h_series, hstar, omega, pf, pf_k, pf_typeb, HstarMethod};
use umbracomb::{
    GradedPoly, Ground, MomentSeq, ParkingKind, Rational, SpecialKind, TruncSeries,
    UmbraRegistry, UmbralExpr, VolumeKind, VolumeMethod,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Counts,
    Symfunc,
    Umbral,
    Volume,
    Flags,
    Typeb,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check. `elapsed_ms` is measured but deliberately left out
/// of both renderers: reports must be byte-identical across runs.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub order: Option<usize>,
    pub status: Status,
    pub left: Option<String>,
    pub right: Option<String>,
    pub elapsed_ms: u128,
}

struct Check {
    name: &'static str,
    n: Option<u32>,
    k: Option<u32>,
    order: Option<usize>,
    run: Box<dyn Fn() -> (String, String) + Send + Sync>,
}

fn catalan(n: u32) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64)
        .map(Rational::from)
        .fold(Rational::one(), |a, b| &a * &b)
}

fn series_str(s: &TruncSeries) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("t^{i}: {c}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The five sample points used by the scalar specialization check. Fixed
/// seed: the suite must be reproducible bit for bit.
fn scalar_samples() -> Vec<Rational> {
    let mut rng = ChaCha20Rng::seed_from_u64(0x7061726b);
    (0..5)
        .map(|_| {
            let numer = loop {
                let v = rng.gen_range(-99i64..=99);
                if v != 0 {
                    break v;
                }
            };
            let denom = rng.gen_range(1i64..=99);
            Rational::new(numer, denom)
        })
        .collect()
}

struct Builder {
    checks: Vec<Check>,
    max_n: u32,
}

impl Builder {
    fn add<F>(&mut self, name: &'static str, n: Option<u32>, k: Option<u32>, order: Option<usize>, run: F)
    where
        F: Fn() -> (String, String) + Send + Sync + 'static,
    {
        self.checks.push(Check {
            name,
            n,
            k,
            order,
            run: Box::new(run),
        });
    }

    /// Clamped range 1..=cap, empty when max_n is below `lo`.
    fn range(&self, lo: u32, cap: u32) -> std::ops::RangeInclusive<u32> {
        lo..=self.max_n.min(cap)
    }

    fn counts(&mut self) {
        for n in self.range(1, 6) {
            self.add("park-count", Some(n), None, None, move || {
                let got = enumerate_parking(n, ParkingKind::Classical).len() as u64;
                (got.to_string(), ((n + 1) as u64).pow(n - 1).to_string())
            });
        }
        for n in self.range(1, 6) {
            self.add("orbit-count", Some(n), None, None, move || {
                let got = orbit_representatives(n).len() as u64;
                (got.to_string(), catalan(n).to_string())
            });
        }
        for n in self.range(1, 9) {
            self.add("nc-count", Some(n), None, None, move || {
                let got = enumerate_nc(n, NcKind::A).len() as u64;
                (got.to_string(), catalan(n).to_string())
            });
        }
        for n in self.range(2, 6) {
            self.add("nc-chain-count", Some(n), None, None, move || {
                let got = maximal_chain_count(n, NcKind::A);
                (got.to_string(), (n as u64).pow(n - 2).to_string())
            });
        }
        for n in self.range(2, 4) {
            self.add("nc-b-chain-count", Some(n), None, None, move || {
                let got = maximal_chain_count(n, NcKind::B);
                (got.to_string(), (n as u64).pow(n).to_string())
            });
        }
    }

    fn volume(&mut self) {
        for n in self.range(1, 6) {
            self.add("volume-methods-a", Some(n), None, None, move || {
                let def = volume_poly(n, VolumeKind::A, VolumeMethod::Definition);
                let closed = volume_poly(n, VolumeKind::A, VolumeMethod::ClosedForm);
                (def.to_string(), closed.to_string())
            });
        }
        for n in self.range(1, 6) {
            self.add("volume-methods-b", Some(n), None, None, move || {
                let def = volume_poly(n, VolumeKind::B, VolumeMethod::Definition);
                let closed = volume_poly(n, VolumeKind::B, VolumeMethod::ClosedForm);
                (def.to_string(), closed.to_string())
            });
        }
        for n in self.range(1, 6) {
            self.add("volume-theta-parking", Some(n), None, None, move || {
                let theta = MomentSeq::special(SpecialKind::ThetaBar, n as usize);
                let vol = volume_umbral(n, VolumeKind::A, &theta).expect("order matches n");
                (vol.to_string(), pf(n).to_string())
            });
        }
        for k in 2..=3u32 {
            for n in self.range(1, 4) {
                self.add("k-parking-volume", Some(n), Some(k), None, move || {
                    let reg = UmbraRegistry::new();
                    let theta = reg.special(SpecialKind::ThetaBar, n as usize);
                    let k_dot = reg.dot(k as i64, theta);
                    let vol = volume_umbral(n, VolumeKind::A, &reg.moments(k_dot))
                        .expect("order matches n");
                    let expected = pf_k(n, k).expect("valid k-parking input");
                    (vol.to_string(), expected.to_string())
                });
            }
        }
        for n in self.range(1, 6) {
            self.add("scalar-volume", Some(n), None, None, move || {
                let mut lefts = Vec::new();
                let mut rights = Vec::new();
                for a in scalar_samples() {
                    let scalars = MomentSeq::from_rationals(
                        (1..=n as i32).map(|i| a.pow(i)).collect(),
                    );
                    let left = volume_umbral(n, VolumeKind::A, &scalars)
                        .expect("order matches n")
                        .scale(&factorial(n));
                    let np1 = Rational::from(n as i64 + 1);
                    let right = &a * &(&np1 * &a).pow(n as i32 - 1);
                    lefts.push(left.to_string());
                    rights.push(GradedPoly::constant(right).to_string());
                }
                (lefts.join("; "), rights.join("; "))
            });
        }
    }

    fn umbral(&mut self, order: usize) {
        for n in self.range(1, 6) {
            self.add("abel-volume", Some(n), None, None, move || {
                let reg = UmbraRegistry::new();
                let alpha = reg.new_umbra(MomentSeq::generic(n as usize));
                let left = volume_umbral(n, VolumeKind::A, &reg.moments(alpha))
                    .expect("order matches n")
                    .scale(&factorial(n));
                let n_dot = reg.dot(n as i64, alpha);
                let base =
                    UmbralExpr::from_umbra(alpha).add(&UmbralExpr::from_umbra(n_dot));
                let right = UmbralExpr::from_umbra(alpha)
                    .mul(&base.pow(n - 1))
                    .eval(&reg)
                    .expect("moments suffice");
                (left.to_string(), right.to_string())
            });
        }
        for n in self.range(1, 5) {
            self.add("inverse-derivative-volume", Some(n), None, None, move || {
                let reg = UmbraRegistry::new();
                let alpha = reg.new_umbra(MomentSeq::generic(n as usize + 1));
                let left = volume_umbral(n, VolumeKind::A, &reg.moments(alpha))
                    .expect("order matches n")
                    .scale(&factorial(n));
                let inverse = reg
                    .comp_inverse(reg.derivative(reg.dot(-1, alpha)))
                    .expect("derivative umbrae invert");
                let right = UmbralExpr::from_umbra(inverse)
                    .pow(n + 1)
                    .eval(&reg)
                    .expect("moments suffice")
                    .scale(&Rational::new(1, n as i64 + 1));
                (left.to_string(), right.to_string())
            });
        }
        self.add("genfun-inverse-law", None, None, Some(order), move || {
            let reg = UmbraRegistry::new();
            let alpha = reg.new_umbra(MomentSeq::generic(order));
            let product = reg.genfun(alpha).mul(&reg.genfun(reg.dot(-1, alpha)));
            (series_str(&product), series_str(&TruncSeries::one(order)))
        });
        self.add("genfun-derivative-law", None, None, Some(order), move || {
            let reg = UmbraRegistry::new();
            let alpha = reg.new_umbra(MomentSeq::generic(order));
            let f = reg.genfun(alpha);
            let left = reg.genfun(reg.derivative(alpha));
            let mut shifted = vec![GradedPoly::one()];
            for i in 0..order {
                shifted.push(f.coeff(i).expect("within order").clone());
            }
            (series_str(&left), series_str(&TruncSeries::from_coeffs(shifted)))
        });
        self.add("bell-moments", None, None, Some(6), || {
            let bell = MomentSeq::special(SpecialKind::Bell, 6);
            let got: Vec<String> = (1..=6usize)
                .map(|i| bell.moment(i).expect("within order").to_string())
                .collect();
            let oracle: Vec<String> = (1..=6u32)
                .map(|i| enumerate_set_partitions(Ground::Positive(i)).len().to_string())
                .collect();
            (got.join(", "), oracle.join(", "))
        });
        self.add("singleton-genfun", None, None, Some(order), move || {
            let reg = UmbraRegistry::new();
            let chi = reg.special(SpecialKind::Singleton, order);
            let expected = TruncSeries::one(order).add(&TruncSeries::identity(order));
            (series_str(&reg.genfun(chi)), series_str(&expected))
        });
        self.add("theta-pairing", None, None, Some(order), move || {
            let reg = UmbraRegistry::new();
            let theta = reg.special(SpecialKind::ThetaBar, order);
            let eps_bar = reg.special(SpecialKind::EpsBar(order as u32), order);
            let other = reg.dot(-1, reg.negate(eps_bar));
            let left: Vec<String> = (1..=order)
                .map(|i| reg.moment(theta, i).expect("within order").to_string())
                .collect();
            let right: Vec<String> = (1..=order)
                .map(|i| reg.moment(other, i).expect("within order").to_string())
                .collect();
            (left.join("; "), right.join("; "))
        });
    }

    fn symfunc(&mut self) {
        self.add("parking-series", None, None, Some(7), || {
            (stanley_compose(7, 1), series_str(&TruncSeries::identity(7)))
        });
        for k in 2..=3u32 {
            self.add("k-parking-series", None, Some(k), Some(5), move || {
                (stanley_compose(5, k), series_str(&TruncSeries::identity(5)))
            });
        }
        for n in self.range(1, 6) {
            self.add("hstar-methods", Some(n), None, None, move || {
                let formula = hstar(n, HstarMethod::LagrangeFormula).expect("valid n");
                let inversion = hstar(n, HstarMethod::SeriesInversion).expect("valid n");
                (formula.to_string(), inversion.to_string())
            });
        }
        for n in self.range(1, 6) {
            self.add("hstar-omega", Some(n), None, None, move || {
                let f = hstar(n, HstarMethod::LagrangeFormula).expect("valid n");
                let sign = Rational::from(if n % 2 == 0 { 1 } else { -1 });
                (omega(&f).scale(&sign).to_string(), pf(n).to_string())
            });
        }
        for n in self.range(1, 6) {
            self.add("hstar-volume", Some(n), None, None, move || {
                let reg = UmbraRegistry::new();
                let eps = reg.special(SpecialKind::EpsBar(n), n as usize);
                let neg = reg.negate(eps);
                let vol = volume_umbral(n, VolumeKind::A, &reg.moments(neg))
                    .expect("order matches n");
                let expected = hstar(n, HstarMethod::LagrangeFormula).expect("valid n");
                (vol.to_string(), expected.to_string())
            });
        }
    }

    fn flags(&mut self) {
        for n in self.range(1, 5) {
            self.add("chain-symfunc-omega", Some(n), None, None, move || {
                let f = chain_symfunc(n).expect("symmetric by construction");
                (omega(&f).to_string(), pf(n).to_string())
            });
        }
        for n in self.range(1, 5) {
            self.add("chain-symfunc-volume", Some(n), None, None, move || {
                let f = chain_symfunc(n).expect("symmetric by construction");
                let eps = MomentSeq::special(SpecialKind::EpsBar(n), n as usize);
                let vol = volume_umbral(n, VolumeKind::A, &eps).expect("order matches n");
                (vol.to_string(), f.to_string())
            });
        }
    }

    fn typeb(&mut self) {
        for n in self.range(1, 5) {
            self.add("typeb-dot-power", Some(n), None, None, move || {
                let reg = UmbraRegistry::new();
                let theta = reg.special(SpecialKind::ThetaBar, n as usize);
                let got = UmbralExpr::from_umbra(reg.dot(n as i64, theta))
                    .pow(n)
                    .eval(&reg)
                    .expect("moments suffice");
                let expected = pf_typeb(n).expect("valid n").scale(&factorial(n));
                (got.to_string(), expected.to_string())
            });
        }
        for n in self.range(1, 5) {
            self.add("typeb-abel", Some(n), None, None, move || {
                let reg = UmbraRegistry::new();
                let theta = reg.special(SpecialKind::ThetaBar, n as usize);
                let minus_theta = reg.dot(-1, theta);
                let got = abel_poly(&reg, n, minus_theta, minus_theta, VolumeKind::B)
                    .eval(&reg)
                    .expect("moments suffice");
                let expected = pf_typeb(n).expect("valid n").scale(&factorial(n));
                (got.to_string(), expected.to_string())
            });
        }
        for n in self.range(1, 5) {
            self.add("typeb-volume", Some(n), None, None, move || {
                let theta = MomentSeq::special(SpecialKind::ThetaBar, n as usize);
                let got = volume_umbral(n, VolumeKind::B, &theta)
                    .expect("order matches n")
                    .scale(&factorial(n));
                let expected = pf_typeb(n).expect("valid n").scale(&factorial(n));
                (got.to_string(), expected.to_string())
            });
        }
    }
}

/// Compose t PF(t) (or the k-analog) with t / H(t)^k and serialize.
fn stanley_compose(order: usize, k: u32) -> String {
    let h = h_series(order);
    let target = TruncSeries::identity(order).mul(&h.pow(-(k as i32)).expect("unit constant"));
    let mut coeffs = vec![GradedPoly::zero(); order + 1];
    coeffs[1] = GradedPoly::one();
    for n in 1..order {
        coeffs[n + 1] = if k == 1 {
            pf(n as u32).into_poly()
        } else {
            pf_k(n as u32, k).expect("valid k").into_poly()
        };
    }
    let composed = TruncSeries::from_coeffs(coeffs)
        .compose(&target)
        .expect("zero constant term");
    series_str(&composed)
}

/// Build and run every check of the suite. Checks clamp their own ranges
/// to desk scale, so a large `max_n` only extends the cheap families.
pub fn run_suite(suite: Suite, max_n: u32, jobs: usize, order: usize) -> Vec<CheckReport> {
    let mut b = Builder {
        checks: Vec::new(),
        max_n,
    };
    match suite {
        Suite::Counts => b.counts(),
        Suite::Volume => b.volume(),
        Suite::Umbral => b.umbral(order),
        Suite::Symfunc => b.symfunc(),
        Suite::Flags => b.flags(),
        Suite::Typeb => b.typeb(),
        Suite::All => {
            b.counts();
            b.volume();
            b.umbral(order);
            b.symfunc();
            b.flags();
            b.typeb();
        }
    }
    let checks = b.checks;
    let slots: Vec<Mutex<Option<CheckReport>>> =
        checks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.max(1).min(checks.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= checks.len() {
                    break;
                }
                let check = &checks[i];
                let started = Instant::now();
                let (left, right) = (check.run)();
                let passed = left == right;
                let report = CheckReport {
                    name: check.name,
                    n: check.n,
                    k: check.k,
                    order: check.order,
                    status: if passed { Status::Pass } else { Status::Fail },
                    left: if passed { None } else { Some(left) },
                    right: if passed { None } else { Some(right) },
                    elapsed_ms: started.elapsed().as_millis(),
                };
                *slots[i].lock().expect("slot lock") = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every check ran"))
        .collect()
}

pub fn exit_code(reports: &[CheckReport]) -> u8 {
    if reports.iter().all(|r| r.status == Status::Pass) {
        0
    } else {
        1
    }
}

fn params_str(r: &CheckReport) -> String {
    let mut parts = Vec::new();
    if let Some(n) = r.n {
        parts.push(format!("n={n}"));
    }
    if let Some(k) = r.k {
        parts.push(format!("k={k}"));
    }
    if let Some(order) = r.order {
        parts.push(format!("order={order}"));
    }
    parts.join(" ")
}

pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        let params = params_str(r);
        if params.is_empty() {
            out.push_str(&format!("{status} {}\n", r.name));
        } else {
            out.push_str(&format!("{status} {} {params}\n", r.name));
        }
        if r.status == Status::Fail {
            out.push_str(&format!(
                "  left:  {}\n  right: {}\n",
                r.left.as_deref().unwrap_or(""),
                r.right.as_deref().unwrap_or("")
            ));
        }
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    out.push_str(&format!(
        "{} checks: {} passed, {} failed\n",
        reports.len(),
        passed,
        reports.len() - passed
    ));
    out
}

pub fn render_json(reports: &[CheckReport]) -> serde_json::Value {
    let items: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            let mut params = serde_json::Map::new();
            if let Some(n) = r.n {
                params.insert("n".into(), n.into());
            }
            if let Some(k) = r.k {
                params.insert("k".into(), k.into());
            }
            if let Some(order) = r.order {
                params.insert("order".into(), (order as u64).into());
            }
            let mut obj = serde_json::Map::new();
            obj.insert("name".into(), r.name.into());
            obj.insert("params".into(), serde_json::Value::Object(params));
            obj.insert(
                "status".into(),
                match r.status {
                    Status::Pass => "pass".into(),
                    Status::Fail => "fail".into(),
                },
            );
            if let Some(left) = &r.left {
                obj.insert("left".into(), left.as_str().into());
            }
            if let Some(right) = &r.right {
                obj.insert("right".into(), right.as_str().into());
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::Value::Array(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_all_passes_at_degenerate_scale() {
        let reports = run_suite(Suite::All, 1, 1, 4);
        assert!(!reports.is_empty());
        assert_eq!(exit_code(&reports), 0);
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "check {} failed", r.name);
            assert!(r.left.is_none() && r.right.is_none());
        }
    }

    #[test]
    fn counts_suite_includes_park_five() {
        let reports = run_suite(Suite::Counts, 5, 2, 4);
        let park5 = reports
            .iter()
            .find(|r| r.name == "park-count" && r.n == Some(5))
            .expect("park count at n=5 present");
        assert_eq!(park5.status, Status::Pass);
        // 6^4 parking functions of length 5.
        assert_eq!(exit_code(&reports), 0);
    }

    #[test]
    fn typeb_suite_includes_the_cube_identity() {
        let reports = run_suite(Suite::Typeb, 3, 1, 4);
        assert!(reports
            .iter()
            .any(|r| r.name == "typeb-dot-power" && r.n == Some(3)));
        assert_eq!(exit_code(&reports), 0);
    }

    #[test]
    fn parallel_runs_match_serial_runs() {
        let serial = run_suite(Suite::Counts, 4, 1, 4);
        let parallel = run_suite(Suite::Counts, 4, 4, 4);
        let render_a = render_text(&serial);
        let render_b = render_text(&parallel);
        assert_eq!(render_a, render_b);
    }

    #[test]
    fn failing_reports_map_to_exit_one() {
        let failing = CheckReport {
            name: "synthetic",
            n: Some(1),
            k: None,
            order: None,
            status: Status::Fail,
            left: Some("0".into()),
            right: Some("1".into()),
            elapsed_ms: 0,
        };
        assert_eq!(exit_code(&[failing.clone()]), 1);
        let text = render_text(&[failing.clone()]);
        assert!(text.contains("fail synthetic n=1"));
        assert!(text.contains("left:  0"));
        let json = render_json(&[failing]);
        assert_eq!(json[0]["status"], "fail");
        assert_eq!(json[0]["left"], "0");
    }

    #[test]
    fn rendered_output_never_mentions_timing() {
        let reports = run_suite(Suite::Flags, 2, 1, 4);
        let text = render_text(&reports);
        assert!(!text.contains("ms"));
        let json = serde_json::to_string(&render_json(&reports)).expect("serializes");
        assert!(!json.contains("elapsed"));
    }
}
