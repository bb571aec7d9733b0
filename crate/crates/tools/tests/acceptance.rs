//! One line per acceptance criterion. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use geodesic_core::automaton::{build, cross_validate, language_agreement, minimize};
use geodesic_core::fellow::{falsify, min_fft_delta, verify_fft};
use geodesic_core::group::{ball, GeneratingSet, GroupElement, Letter, Oracle, Presentation};
use geodesic_core::growth::{group_growth_matrix, rational_form, series, sphere_series, RationalGF};
use geodesic_core::polytope::lp;
use geodesic_core::polytope::{
    cannon_pattern, cone_language, good_generating_set, hemisphere_check, nerode_separation, translation_length,
    translation_polytope, Ray,
};
use geodesic_tools::bundled;
use geodesic_tools::group_file::{load_group, Group};
use geodesic_tools::report::Report;
use geodesic_tools::tri_file::load_tri;
use num_rational::BigRational;

type Outcome = Result<String, String>;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn group(name: &str) -> Group {
    load_group(name).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (name, delta, radius) in
        [("z1", Some(1), 12), ("z2", Some(2), 8), ("cannon_enlarged", None, 8), ("psl2z", None, 8)]
    {
        let g = group(name);
        let oracle = Oracle::new(&g.pres, &g.gens, radius).unwrap();
        let delta = match delta {
            Some(d) => d,
            None => min_fft_delta(&oracle, radius, 4).unwrap().ok_or(format!("{name}: no verified delta"))?,
        };
        let aut = build(&g.pres, &g.gens, delta).unwrap();
        let r = cross_validate(&aut, radius, &oracle).unwrap();
        ensure(r.agree, format!("{name}: disagreement at delta {delta}"))?;
        parts.push(format!("{name} d={delta} r={radius}"));
    }
    let ms = start.elapsed().as_millis();
    ensure(ms <= 300_000, format!("took {ms} ms"))?;
    Ok(format!("{}; {ms} ms", parts.join(", ")))
}

fn growth_identity() -> Outcome {
    for (name, delta) in [("z1", 1), ("z2", 2), ("cannon_enlarged", 1), ("psl2z", 2)] {
        let g = group(name);
        let aut = build(&g.pres, &g.gens, delta).unwrap();
        let m = group_growth_matrix(&aut, &g.pres, &g.gens).unwrap();
        let s = series(&m, 13);
        ensure(s.integers().is_some(), format!("{name}: non-integer coefficient"))?;
        let spheres = sphere_series(&ball(&g.pres, &g.gens, 12).unwrap());
        ensure(s == spheres, format!("{name}: series differs from sphere sizes"))?;
    }
    Ok("z1, z2, cannon_enlarged, psl2z to n = 12".into())
}

fn closed_forms() -> Outcome {
    let ints = |v: &[i64]| v.iter().map(|&x| x.into()).collect::<Vec<_>>();
    let form = |name: &str, delta: u32| {
        let g = group(name);
        let aut = build(&g.pres, &g.gens, delta).unwrap();
        let m = group_growth_matrix(&aut, &g.pres, &g.gens).unwrap();
        (g, rational_form(&m, 2 * m.size()).unwrap())
    };
    for (name, delta, num, den) in [("z1", 1, vec![1, 1], vec![1, -1]), ("z2", 2, vec![1, 2, 1], vec![1, -2, 1])] {
        let (g, gf) = form(name, delta);
        let expected = RationalGF::from_integers(&ints(&num), &ints(&den)).unwrap();
        ensure(gf == expected, format!("{name}: got {gf}"))?;
        let spheres = sphere_series(&ball(&g.pres, &g.gens, 19).unwrap());
        ensure(gf.taylor(20) == spheres.0, format!("{name}: 20-term expansion differs"))?;
    }
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/psl2z_growth.json");
    let golden = Report::from_json(&std::fs::read_to_string(golden_path).unwrap()).unwrap().growth.unwrap();
    let (g, gf) = form("psl2z", 2);
    ensure(gf.to_string() == golden.rational_form, format!("psl2z: got {gf}, golden {}", golden.rational_form))?;
    let spheres = sphere_series(&ball(&g.pres, &g.gens, 9).unwrap());
    ensure(gf.taylor(10) == spheres.0, "psl2z: closed form disagrees with 10 sphere sizes")?;
    Ok(format!("z1 (1 + t) / (1 - t), z2 (1 + t)^2 / (1 - t)^2, psl2z {gf}"))
}

fn fft_dichotomy() -> Outcome {
    let mut parts = Vec::new();
    for (name, radius) in [("z1", 8), ("z2", 8), ("cannon_enlarged", 8)] {
        let g = group(name);
        let oracle = Oracle::new(&g.pres, &g.gens, radius).unwrap();
        let d = min_fft_delta(&oracle, radius, 4).unwrap().ok_or(format!("{name}: fails for delta <= 4"))?;
        ensure(verify_fft(&oracle, d, radius).unwrap().holds, format!("{name}: fails"))?;
        parts.push(format!("{name} holds at {d}"));
    }
    let g = group("cannon");
    let oracle = Oracle::new(&g.pres, &g.gens, 12).unwrap();
    for delta in 0..=3u32 {
        let r = verify_fft(&oracle, delta, 12).unwrap();
        ensure(!r.holds, format!("cannon holds at delta {delta}"))?;
        // A member of the family t c^n t c^n within the radius that no
        // shorter word fellow travels.
        let member = (1..=5u32).find(|&n| {
            let w = g.gens.parse_word(&format!("t c^{n} t c^{n}")).unwrap();
            falsify(&w, delta, &oracle).unwrap().is_none()
        });
        let n = member.ok_or(format!("cannon: no t c^n t c^n counterexample at delta {delta}"))?;
        let least = r.counterexample.map(|c| g.gens.format_word(&c.0)).unwrap_or_default();
        parts.push(format!("cannon d={delta} fails (least `{least}`, t c^{n} t c^{n})"));
    }
    Ok(parts.join(", "))
}

fn non_regularity() -> Outcome {
    let g = group("cannon");
    let oracle = Oracle::new(&g.pres, &g.gens, 12).unwrap();
    let table = nerode_separation(5, &oracle).unwrap();
    let separated = table.iter().filter(|w| w.separates()).count();
    ensure(table.len() == 10 && separated == 10, format!("{separated}/{} separated", table.len()))?;
    let pattern = cannon_pattern(5, &oracle).unwrap();
    let bad: Vec<_> = pattern.iter().filter(|(m, n, geo)| *geo != (m < n)).collect();
    ensure(bad.is_empty(), format!("pattern fails at {bad:?}"))?;
    Ok(format!("10/10 separated; pattern checked on {} pairs", pattern.len()))
}

fn skew_plane() -> (Presentation, GeneratingSet) {
    let p = Presentation::free_abelian(2);
    let v = |x: i64, y: i64| GroupElement::va(vec![x, y], 0);
    let letters = vec![
        Letter::new("a", v(1, 0), 1),
        Letter::new("b", v(0, 1), 1),
        Letter::new("c", v(-1, -1), 1),
        Letter::new("e", v(-1, 2), 2),
    ];
    let g = GeneratingSet::new(&p, letters, false).unwrap();
    (p, g)
}

fn gauge_identity() -> Outcome {
    let z2 = group("z2");
    let skew = skew_plane();
    let mut checked = 0;
    for (p, g, samples) in [
        (&z2.pres, &z2.gens, vec![[1, 0], [2, 1], [-1, 3], [2, -2]]),
        (&skew.0, &skew.1, vec![[1, 0], [-1, 2], [-2, 1], [1, -1], [0, -1]]),
    ] {
        let c = translation_polytope(g, p).unwrap();
        for x in -6..=6 {
            for y in -6..=6 {
                let inside = translation_length(&[x, y], g, p).unwrap() <= q(1);
                ensure(inside == c.contains(&[q(x), q(y)]), format!("({x},{y})"))?;
                checked += 1;
            }
        }
        let taus: Vec<BigRational> = samples.iter().map(|s| translation_length(s, g, p).unwrap()).collect();
        let reach = taus.iter().map(|t| (t * q(20)).ceil().to_integer()).max().unwrap();
        let table = ball(p, g, reach.try_into().unwrap()).unwrap();
        for (s, tau) in samples.iter().zip(&taus) {
            for n in [4i64, 8, 12, 16, 20] {
                let l = table.length(&GroupElement::va(vec![n * s[0], n * s[1]], 0)).unwrap();
                let gap = q(l as i64) / q(n) - tau;
                let bound = q(2) / q(n);
                ensure(gap <= bound && -gap <= bound, format!("{s:?} at n = {n}"))?;
            }
        }
    }
    Ok(format!("{checked} box points, convergence within 2/n"))
}

fn good_set_round_trip() -> Outcome {
    let g = group("cannon");
    let square = load_tri("q_square.tri").unwrap().hull().unwrap();
    let good = good_generating_set(&g.gens, &square, &g.pres).unwrap();
    let c = translation_polytope(&good.gens, &g.pres).unwrap();
    let mut a = c.vertices().to_vec();
    let mut b = square.scaled(&q(good.scale as i64)).vertices().to_vec();
    a.sort();
    b.sort();
    ensure(a == b, "C(A) differs from N.Q")?;
    let oracle = Oracle::new(&g.pres, &good.gens, 8).unwrap();
    let d = min_fft_delta(&oracle, 8, 6).unwrap().ok_or("no delta <= 6 holds")?;
    Ok(format!("N = {}, {} letters, C(A) = N.Q, FFT holds at delta {d}", good.scale, good.gens.len()))
}

/// Some u with one coordinate fixed to +-1 and u . s >= 0 for every s.
fn in_hemisphere(dirs: &[[i64; 2]]) -> bool {
    let k = dirs.len();
    let cols = 4 + k;
    let zero = || q(0);
    (0..2).any(|i| {
        [1, -1].iter().any(|&sign| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (j, s) in dirs.iter().enumerate() {
                let mut row = vec![zero(); cols];
                for c in 0..2 {
                    row[c] = q(s[c]);
                    row[2 + c] = q(-s[c]);
                }
                row[4 + j] = q(-1);
                a.push(row);
                b.push(zero());
            }
            let mut row = vec![zero(); cols];
            row[i] = q(1);
            row[2 + i] = q(-1);
            a.push(row);
            b.push(q(sign));
            lp::feasible(&a, &b)
        })
    })
}

fn hemisphere_table() -> Outcome {
    let pool = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]];
    let mut agree = 0;
    for mask in 1u32..64 {
        let dirs: Vec<[i64; 2]> = (0..6).filter(|i| mask & (1 << i) != 0).map(|i| pool[i]).collect();
        let rays: Vec<Ray> = dirs.iter().map(|d| Ray::new(d.to_vec()).unwrap()).collect();
        ensure(hemisphere_check(&rays) == in_hemisphere(&dirs), format!("{dirs:?}"))?;
        agree += 1;
    }
    Ok(format!("{agree}/63 subsets agree with the LP definition"))
}

fn cone_language_quadrants() -> Outcome {
    let g = group("z2");
    let tri = load_tri("quadrants.tri").unwrap().triangulation().unwrap();
    let lang = cone_language(&tri, &g.gens, 1, &g.pres, 10).map_err(|e| e.to_string())?;
    let table = ball(&g.pres, &g.gens, 10).unwrap();
    ensure(lang.elements_checked == table.len(), "not every element was reached")?;
    let words = lang.words_up_to(10, &g.gens);
    let mut hit = std::collections::BTreeSet::new();
    for w in &words {
        let x = geodesic_core::group::eval(w, &g.gens, &g.pres).unwrap();
        ensure(table.length(&x) == Some(w.length(&g.gens)), format!("`{}` is not geodesic", g.gens.format_word(w)))?;
        hit.insert(x);
    }
    ensure(hit.len() == table.len(), format!("{} of {} elements hit", hit.len(), table.len()))?;
    Ok(format!("{} geodesic words reach all {} elements of the radius-10 ball", words.len(), table.len()))
}

fn minimization_safety() -> Outcome {
    let mut parts = Vec::new();
    for (name, _) in bundled::GROUPS {
        let g = group(name);
        let delta = g.delta.unwrap_or(2);
        let aut = build(&g.pres, &g.gens, delta).unwrap();
        let min = minimize(&aut);
        ensure(language_agreement(&min, &aut, 10).unwrap().agree, format!("{name}: languages differ"))?;
        ensure(minimize(&min).num_states() == min.num_states(), format!("{name}: not idempotent"))?;
        parts.push(format!("{name} {}->{}", aut.num_states(), min.num_states()));
    }
    Ok(parts.join(", "))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, oracle_equivalence),
        (2, growth_identity),
        (3, closed_forms),
        (4, fft_dichotomy),
        (5, non_regularity),
        (6, gauge_identity),
        (7, good_set_round_trip),
        (8, hemisphere_table),
        (9, cone_language_quadrants),
        (10, minimization_safety),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {n}: FAIL ({detail})");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
