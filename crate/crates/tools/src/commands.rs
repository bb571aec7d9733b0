//! The subcommands, each producing a [`Report`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use geodesic_core::automaton::{build_with, cross_validate, export_dot, minimize, BuildOptions, GeodesicAutomaton};
use geodesic_core::fellow::{verify_fft_with, FellowTravelReport, FftOptions};
use geodesic_core::group::{ball_with_cap, generation_check, GeneratingSet, Oracle};
use geodesic_core::growth::{
    determinant_form, group_growth_matrix, rational_form, series, sphere_series, transition_matrix, validate_growth,
    GrowthSeries, DETERMINANT_LIMIT,
};
use geodesic_core::polytope::{
    abelian_letters, cannon_pattern, cone_language, good_generating_set, hemisphere_check, hemisphere_check_symmetric,
    nerode_separation, translation_length, translation_polytope, Polytope, Ray,
};
use geodesic_core::Error as CoreError;
use num_rational::BigRational;

use crate::automaton_file::AutomatonFile;
use crate::cache;
use crate::error::{Result, ToolError, EXIT_DISAGREEMENT};
use crate::group_file::{load_group, Group, GroupFile};
use crate::report::*;
use crate::tri_file::load_tri;

/// Size and search limits shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub ball: usize,
    pub states: usize,
    pub pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ball: geodesic_core::group::DEFAULT_BALL_CAP,
            states: geodesic_core::automaton::DEFAULT_STATE_CAP,
            pairs: geodesic_core::fellow::DEFAULT_PAIR_CAP,
        }
    }
}

impl Caps {
    fn config(&self) -> RunConfig {
        RunConfig { ball_cap: self.ball, state_cap: self.states, pair_cap: self.pairs, ..RunConfig::default() }
    }

    fn build_options(&self) -> BuildOptions {
        BuildOptions { state_cap: self.states, ball_cap: self.ball, ..BuildOptions::default() }
    }

    fn fft_options(&self) -> FftOptions {
        FftOptions { pair_cap: self.pairs, ..FftOptions::default() }
    }
}

struct Clock {
    start: Instant,
    last: Instant,
    stages: Vec<(String, u64)>,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock { start: now, last: now, stages: Vec::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages.push((stage.to_string(), (now - self.last).as_millis() as u64));
        self.last = now;
    }

    fn finish(self, report: &mut Report) {
        report.timing = Timing { total_ms: self.start.elapsed().as_millis() as u64, stages: self.stages };
    }
}

/// Exit status for a finished report: nonzero when a validation step
/// disagreed with the oracle.
pub fn exit_status(report: &Report) -> i32 {
    let disagree = report.automaton.as_ref().and_then(|a| a.validation.as_ref()).is_some_and(|v| !v.agree)
        || report.growth.as_ref().is_some_and(|g| !g.validated)
        || report.polytope.as_ref().and_then(|p| p.cone.as_ref()).is_some_and(|c| !c.surjective)
        || report.polytope.as_ref().and_then(|p| p.good_set.as_ref()).is_some_and(|g| !g.polytope_matches)
        || report.cannon.as_ref().is_some_and(|c| !c.pattern_holds || c.separated != c.witnesses.len() as u64);
    if disagree {
        EXIT_DISAGREEMENT
    } else {
        0
    }
}

fn resolve_delta(group: &Group, delta: Option<u32>) -> Result<u32> {
    delta
        .or(group.delta)
        .ok_or_else(|| ToolError::Config(format!("group `{}` has no default delta; pass --delta", group.name)))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| ToolError::Write { path: path.to_path_buf(), source })
}

fn fft_run(r: &FellowTravelReport, gens: &GeneratingSet) -> FftRun {
    FftRun {
        delta: r.delta,
        radius: r.radius,
        holds: r.holds,
        counterexample: r.counterexample.as_ref().map(|(w, _)| gens.format_word(w)),
        note: r.counterexample.as_ref().map(|(_, n)| n.clone()),
        words_checked: r.words_checked,
        falsified: r.falsified,
        profiles: r.profiles as u64,
    }
}

/// Runs the sweep for each constant in `deltas`, stopping at the first
/// that holds.
fn fft_scan(oracle: &Oracle, deltas: impl IntoIterator<Item = u32>, radius: u32, caps: &Caps) -> Result<FftSection> {
    let mut runs = Vec::new();
    let mut min_delta = None;
    for delta in deltas {
        let r = verify_fft_with(oracle, delta, radius, &caps.fft_options())?;
        runs.push(fft_run(&r, oracle.gens()));
        if r.holds {
            min_delta = Some(delta);
            break;
        }
    }
    Ok(FftSection { runs, min_delta })
}

fn integers(s: &GrowthSeries) -> Vec<String> {
    s.coefficients().iter().map(|c| c.to_string()).collect()
}

fn q(x: &BigRational) -> String {
    x.to_string()
}

pub fn cmd_ball(group: &str, radius: u32, caps: &Caps) -> Result<Report> {
    let mut clock = Clock::new();
    let g = load_group(group)?;
    let table = ball_with_cap(&g.pres, &g.gens, radius, caps.ball)?;
    clock.lap("ball");
    let mut report =
        Report::new("ball", RunConfig { group: Some(g.name.clone()), radius: Some(radius), ..caps.config() });
    let spheres = table.sphere_sizes();
    let check = generation_check(&g.pres, &g.gens, radius)?;
    if check.warrants_warning(g.known_infinite) {
        report.warnings.push(format!(
            "the letters may not generate: sphere {radius} has {} elements{}",
            check.last_sphere,
            if check.onto_finite_quotient { "" } else { " and the letters miss part of the finite quotient" }
        ));
    }
    report.ball = Some(BallSection { radius, total: table.len() as u64, spheres });
    clock.finish(&mut report);
    Ok(report)
}

pub fn cmd_fft(group: &str, delta: Option<u32>, scan: Option<(u32, u32)>, radius: u32, caps: &Caps) -> Result<Report> {
    let mut clock = Clock::new();
    let g = load_group(group)?;
    let oracle = Oracle::with_cap(&g.pres, &g.gens, radius, caps.ball)?;
    clock.lap("ball");
    let (section, shown) = match scan {
        Some((lo, hi)) => {
            if lo > hi {
                return Err(ToolError::Config(format!("empty delta range {lo}..{hi}")));
            }
            (fft_scan(&oracle, lo..=hi, radius, caps)?, None)
        }
        None => {
            let d = resolve_delta(&g, delta)?;
            let r = verify_fft_with(&oracle, d, radius, &caps.fft_options())?;
            let min_delta = r.holds.then_some(d);
            (FftSection { runs: vec![fft_run(&r, &g.gens)], min_delta }, Some(d))
        }
    };
    clock.lap("sweep");
    let mut report = Report::new(
        "fft",
        RunConfig { group: Some(g.name.clone()), delta: shown, radius: Some(radius), ..caps.config() },
    );
    report.fft = Some(section);
    clock.finish(&mut report);
    Ok(report)
}

/// Minimized automaton for `group` at `delta`, from the cache when
/// possible. Also returns the unminimized state count when it was built.
fn minimized_automaton(g: &Group, delta: u32, caps: &Caps) -> Result<(GeodesicAutomaton, Option<u64>)> {
    if let Some(aut) = cache::load(g, delta, true) {
        return Ok((aut, None));
    }
    let aut = build_with(&g.pres, &g.gens, delta, &caps.build_options())?;
    let min = minimize(&aut);
    cache::store(g, delta, true, &min);
    Ok((min, Some(aut.num_states() as u64)))
}

pub struct AutomatonArgs<'a> {
    pub group: &'a str,
    pub delta: Option<u32>,
    pub validate: Option<u32>,
    pub dot: Option<PathBuf>,
    pub save: Option<PathBuf>,
}

pub fn cmd_automaton(args: &AutomatonArgs, caps: &Caps) -> Result<Report> {
    let mut clock = Clock::new();
    let g = load_group(args.group)?;
    let delta = resolve_delta(&g, args.delta)?;
    let (min, states) = minimized_automaton(&g, delta, caps)?;
    clock.lap("build");
    let validation = match args.validate {
        Some(r) => {
            let oracle = Oracle::with_cap(&g.pres, &g.gens, r, caps.ball)?;
            let v = cross_validate(&min, r, &oracle)?;
            clock.lap("validate");
            Some(ValidationSection {
                radius: r,
                agree: v.agree,
                first_disagreement: v.first_disagreement.map(|d| Disagreement {
                    word: g.gens.format_word(&d.word),
                    accepted: d.accepted,
                    geodesic: d.expected,
                }),
                disagreements: v.disagreements,
                pairs: v.pairs,
            })
        }
        None => None,
    };
    if let Some(p) = &args.dot {
        write_file(p, &export_dot(&min, false))?;
    }
    if let Some(p) = &args.save {
        write_file(p, &AutomatonFile::from_automaton(&min).to_json())?;
    }
    let mut report = Report::new(
        "automaton",
        RunConfig { group: Some(g.name.clone()), delta: Some(delta), radius: args.validate, ..caps.config() },
    );
    report.automaton = Some(AutomatonSection {
        delta,
        k: min.k(),
        states,
        minimized_states: min.num_states() as u64,
        validation,
        dot: args.dot.as_ref().map(|p| p.display().to_string()),
        saved: args.save.as_ref().map(|p| p.display().to_string()),
    });
    clock.finish(&mut report);
    Ok(report)
}

pub fn cmd_growth(group: &str, delta: Option<u32>, terms: usize, caps: &Caps) -> Result<Report> {
    if terms == 0 {
        return Err(ToolError::Config("--terms must be positive".into()));
    }
    let mut clock = Clock::new();
    let g = load_group(group)?;
    let delta = resolve_delta(&g, delta)?;
    let aut = build_with(&g.pres, &g.gens, delta, &caps.build_options())?;
    clock.lap("build");
    let m = group_growth_matrix(&aut, &g.pres, &g.gens)?;
    let s = series(&m, terms);
    let language = series(&transition_matrix(&minimize(&aut)), terms);
    clock.lap("series");
    let table = ball_with_cap(&g.pres, &g.gens, terms as u32 - 1, caps.ball)?;
    let validated = validate_growth(&s, &table)?;
    clock.lap("ball");
    let f = rational_form(&m, 2 * m.size())?;
    let determinant_agrees = if m.size() <= DETERMINANT_LIMIT { Some(determinant_form(&m)? == f) } else { None };
    clock.lap("closed form");
    let mut report = Report::new(
        "growth",
        RunConfig { group: Some(g.name.clone()), delta: Some(delta), terms: Some(terms), ..caps.config() },
    );
    let spheres = sphere_series(&table);
    report.growth = Some(GrowthSection {
        delta,
        states: m.size() as u64,
        series: integers(&s),
        language_series: integers(&language),
        sphere_sizes: spheres.integers().unwrap_or_default().iter().map(|x| x.try_into().unwrap_or(u64::MAX)).collect(),
        validated,
        rational_form: f.to_string(),
        numerator: f.numerator().iter().map(|c| c.to_string()).collect(),
        denominator: f.denominator().iter().map(|c| c.to_string()).collect(),
        determinant_agrees,
    });
    clock.finish(&mut report);
    Ok(report)
}

pub struct PolytopeArgs<'a> {
    pub group: &'a str,
    pub goodify: Option<&'a str>,
    pub cone: Option<&'a str>,
    pub scale: u64,
    pub check_radius: u32,
    pub fft_radius: u32,
    pub fft_delta_max: u32,
    /// Where to write the enlarged group file.
    pub emit: Option<PathBuf>,
}

fn tau_samples(rank: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..rank {
        for s in [1, -1] {
            let mut e = vec![0; rank];
            e[i] = s;
            out.push(e);
        }
    }
    out.push(vec![1; rank]);
    let mut v = vec![0; rank];
    v[0] = 2;
    if rank > 1 {
        v[1] = 1;
    }
    out.push(v);
    out
}

fn same_vertices(a: &Polytope, b: &Polytope) -> bool {
    let mut x = a.vertices().to_vec();
    let mut y = b.vertices().to_vec();
    x.sort();
    y.sort();
    x == y
}

pub fn cmd_polytope(args: &PolytopeArgs, caps: &Caps) -> Result<Report> {
    let mut clock = Clock::new();
    let g = load_group(args.group)?;
    let va = g
        .pres
        .as_virtually_abelian()
        .ok_or_else(|| ToolError::Config(format!("group `{}` is not virtually abelian", g.name)))?;
    let p = translation_polytope(&g.gens, &g.pres)?;
    let tau_samples = tau_samples(va.rank())
        .into_iter()
        .map(|v| Ok(TauSample { tau: q(&translation_length(&v, &g.gens, &g.pres)?), vector: v }))
        .collect::<Result<Vec<_>>>()?;
    let mut rays: Vec<Ray> = abelian_letters(&g.gens, va)
        .into_iter()
        .filter_map(|i| Ray::new(g.gens.letter(i).value.vector().unwrap_or_default().to_vec()).ok())
        .collect();
    rays.sort();
    rays.dedup();
    let hemisphere = Hemisphere {
        rays: rays.iter().map(|r| r.to_string()).collect(),
        in_closed_hemisphere: hemisphere_check(&rays),
        symmetric_part_in_closed_hemisphere: hemisphere_check_symmetric(&rays),
    };
    clock.lap("polytope");

    let mut gens = g.gens.clone();
    let good_set = match args.goodify {
        Some(spec) => {
            let target = load_tri(spec)?.hull()?;
            let good = good_generating_set(&g.gens, &target, &g.pres)?;
            let scaled = target.scaled(&BigRational::from_integer((good.scale as i64).into()));
            let polytope_matches = same_vertices(&translation_polytope(&good.gens, &g.pres)?, &scaled);
            let name = format!("{}_good", g.name);
            clock.lap("good set");
            let oracle = Oracle::with_cap(&g.pres, &good.gens, args.fft_radius, caps.ball)?;
            let fft = fft_scan(&oracle, 0..=args.fft_delta_max, args.fft_radius, caps)?;
            clock.lap("good set sweep");
            let file = GroupFile::from_parts(&name, &g.pres, &good.gens, fft.min_delta)?;
            if let Some(path) = &args.emit {
                write_file(path, &file.to_toml())?;
            }
            let added = good.gens.letters()[g.gens.len()..].iter().map(|l| l.name.clone()).collect();
            let section = GoodSetSection {
                scale: good.scale,
                letters: good.gens.len() as u64,
                added,
                polytope_matches,
                group_file: file.to_toml(),
                fft: Some(fft),
            };
            gens = good.gens;
            Some(section)
        }
        None => None,
    };

    let cone = match args.cone {
        Some(spec) => {
            let tri = load_tri(spec)?.triangulation()?;
            let section = match cone_language(&tri, &gens, args.scale, &g.pres, args.check_radius) {
                Ok(c) => ConeSection {
                    scale: c.scale,
                    ray_words: tri
                        .rays()
                        .iter()
                        .zip(&c.ray_words)
                        .map(|(r, (_, w))| (r.to_string(), gens.format_word(w)))
                        .collect(),
                    lattice_index: c.lattice_index,
                    coset_words: c.coset_words.iter().map(|w| gens.format_word(w)).collect(),
                    checked_radius: c.checked_radius,
                    elements_checked: c.elements_checked as u64,
                    surjective: true,
                    max_slack: c.max_slack,
                    max_coset_length: c.max_coset_length,
                    error: None,
                },
                Err(e @ CoreError::SurjectivityFailed(_)) => ConeSection {
                    scale: args.scale,
                    ray_words: Vec::new(),
                    lattice_index: 0,
                    coset_words: Vec::new(),
                    checked_radius: args.check_radius,
                    elements_checked: 0,
                    surjective: false,
                    max_slack: 0,
                    max_coset_length: 0,
                    error: Some(e.to_string()),
                },
                Err(e) => return Err(e.into()),
            };
            clock.lap("cone language");
            Some(section)
        }
        None => None,
    };

    let mut report = Report::new(
        "polytope",
        RunConfig {
            group: Some(g.name.clone()),
            triangulation: args.cone.or(args.goodify).map(String::from),
            ..caps.config()
        },
    );
    report.polytope = Some(PolytopeSection {
        vertices: p.vertices().iter().map(|v| v.iter().map(q).collect()).collect(),
        facets: p.facets().iter().map(|(n, o)| Facet { normal: n.iter().map(q).collect(), offset: q(o) }).collect(),
        tau_samples,
        hemisphere,
        good_set,
        cone,
    });
    clock.finish(&mut report);
    Ok(report)
}

const CANNON_EXPLANATION: &str = "In Z^2 extended by the coordinate swap t, with c = a^2 and d = ab, \
the word t c^n t c^m is geodesic exactly when m < n: for m >= n it equals d^(2n) c^(m-n), which is \
shorter. For m < n the suffix t c^m is accepted after the prefix t c^n but rejected after t c^m, so \
the prefixes t c^1, t c^2, ... lie in pairwise different Myhill-Nerode classes of the geodesic \
language. A regular language has finitely many classes, so the geodesic language for these \
generators is not regular, and no fellow traveller constant makes the falsification property hold.";

pub fn cmd_cannon_demo(n_max: u32, caps: &Caps) -> Result<Report> {
    let mut clock = Clock::new();
    let g = load_group("cannon")?;
    let radius = 2 * n_max + 2;
    let oracle = Oracle::with_cap(&g.pres, &g.gens, radius, caps.ball)?;
    clock.lap("ball");
    let witnesses: Vec<Witness> = nerode_separation(n_max, &oracle)?
        .into_iter()
        .map(|w| Witness {
            m: w.m,
            n: w.n,
            suffix: g.gens.format_word(&w.suffix),
            long_geodesic: w.long_geodesic,
            short_geodesic: w.short_geodesic,
        })
        .collect();
    let pattern = cannon_pattern(n_max, &oracle)?;
    clock.lap("oracle");
    let mut report =
        Report::new("cannon-demo", RunConfig { group: Some(g.name.clone()), n_max: Some(n_max), ..caps.config() });
    report.cannon = Some(CannonSection {
        n_max,
        separated: witnesses.iter().filter(|w| w.long_geodesic && !w.short_geodesic).count() as u64,
        witnesses,
        pattern_holds: pattern.iter().all(|&(m, n, geo)| geo == (m < n)),
        pattern,
        explanation: CANNON_EXPLANATION.into(),
    });
    clock.finish(&mut report);
    Ok(report)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_fft(out: &mut String, s: &FftSection) {
    use std::fmt::Write;
    for r in &s.runs {
        let _ = writeln!(
            out,
            "fft delta={} radius={}: {} ({} words checked, {} falsified, {} profiles)",
            r.delta,
            r.radius,
            if r.holds { "holds" } else { "fails" },
            r.words_checked,
            r.falsified,
            r.profiles
        );
        if let Some(w) = &r.counterexample {
            let _ = writeln!(out, "  counterexample: {w}");
        }
    }
    if let Some(d) = s.min_delta {
        let _ = writeln!(out, "least delta that holds: {d}");
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    if let Some(g) = &r.config.group {
        let _ = writeln!(out, "group: {g}");
    }
    if let Some(b) = &r.ball {
        let spheres: Vec<String> = b.spheres.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "spheres: {}", spheres.join(","));
        let _ = writeln!(out, "ball of radius {}: {} elements", b.radius, b.total);
    }
    if let Some(f) = &r.fft {
        render_fft(&mut out, f);
    }
    if let Some(a) = &r.automaton {
        match a.states {
            Some(s) => {
                let _ = writeln!(
                    out,
                    "automaton delta={} k={}: {} states, {} after minimizing",
                    a.delta, a.k, s, a.minimized_states
                );
            }
            None => {
                let _ = writeln!(out, "automaton delta={} k={}: {} states (cached)", a.delta, a.k, a.minimized_states);
            }
        }
        if let Some(v) = &a.validation {
            match &v.first_disagreement {
                None => {
                    let _ = writeln!(out, "validation to radius {}: agree", v.radius);
                }
                Some(d) => {
                    let _ = writeln!(
                        out,
                        "validation to radius {}: disagree on `{}` (automaton {}, geodesic {})",
                        v.radius,
                        d.word,
                        if d.accepted { "accepts" } else { "rejects" },
                        yes(d.geodesic)
                    );
                }
            }
        }
        if let Some(p) = &a.dot {
            let _ = writeln!(out, "dot written to {p}");
        }
        if let Some(p) = &a.saved {
            let _ = writeln!(out, "automaton written to {p}");
        }
    }
    if let Some(g) = &r.growth {
        let _ = writeln!(out, "growth series: {}", g.series.join(","));
        let _ = writeln!(out, "geodesic words: {}", g.language_series.join(","));
        let _ = writeln!(out, "growth function: {}", g.rational_form);
        let _ = writeln!(out, "matches sphere sizes: {}", yes(g.validated));
        if let Some(d) = g.determinant_agrees {
            let _ = writeln!(out, "determinant check: {}", yes(d));
        }
    }
    if let Some(p) = &r.polytope {
        let vs: Vec<String> = p.vertices.iter().map(|v| format!("({})", v.join(","))).collect();
        let _ = writeln!(out, "C(A) vertices: {}", vs.join(" "));
        for t in &p.tau_samples {
            let v: Vec<String> = t.vector.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "tau({}) = {}", v.join(","), t.tau);
        }
        let _ = writeln!(
            out,
            "rays {}: in a closed hemisphere: {}; symmetric part: {}",
            p.hemisphere.rays.join(" "),
            yes(p.hemisphere.in_closed_hemisphere),
            yes(p.hemisphere.symmetric_part_in_closed_hemisphere)
        );
        if let Some(gs) = &p.good_set {
            let _ = writeln!(
                out,
                "good set: scale {}, {} letters ({} added), C(A) = N.Q: {}",
                gs.scale,
                gs.letters,
                gs.added.len(),
                yes(gs.polytope_matches)
            );
            if let Some(f) = &gs.fft {
                render_fft(&mut out, f);
            }
        }
        if let Some(c) = &p.cone {
            match &c.error {
                Some(e) => {
                    let _ = writeln!(out, "cone language: {e}");
                }
                None => {
                    for (r, w) in &c.ray_words {
                        let _ = writeln!(out, "w{r} = {w}");
                    }
                    let _ = writeln!(
                        out,
                        "cone language: {} coset words, lattice index {}, reaches all {} elements to radius {}, max slack {}",
                        c.coset_words.len(),
                        c.lattice_index,
                        c.elements_checked,
                        c.checked_radius,
                        c.max_slack
                    );
                }
            }
        }
    }
    if let Some(c) = &r.cannon {
        let _ = writeln!(out, "  m  n  suffix        t c^n s   t c^m s");
        for w in &c.witnesses {
            let _ = writeln!(
                out,
                "{:>3}{:>3}  {:<12}  {:<8}  {}",
                w.m,
                w.n,
                w.suffix,
                yes(w.long_geodesic),
                yes(w.short_geodesic)
            );
        }
        let _ = writeln!(out, "separated pairs: {}/{}", c.separated, c.witnesses.len());
        let _ = writeln!(out, "t c^n t c^m geodesic iff m < n for m, n <= {}: {}", c.n_max, yes(c.pattern_holds));
        let _ = writeln!(out);
        let _ = writeln!(out, "{}", c.explanation);
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
