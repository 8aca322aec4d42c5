//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semisim::census::{run_census, run_census_with};
use semisim::classify::{has_equilateral_triangle, is_rectangle_type};
use semisim::space::pair_count;
use semisim::{
    are_combinatorially_similar, enumerate_patterns, induced_value_map, is_weak_similarity,
    pseudolinear, random_space, rectangle_example, self_isometry_group, self_similarity_group,
    space_from_pattern, DistanceValue, PermGroup, Permutation, SearchConfig, SemimetricSpace,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn cs(space: &SemimetricSpace) -> PermGroup {
    self_similarity_group(space, &SearchConfig::default()).expect("within cap")
}

fn element_set(g: &PermGroup) -> BTreeSet<Permutation> {
    g.elements().cloned().collect()
}

/// Random space on `1..=max_n` points with a random number of values.
fn seeded_space(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> SemimetricSpace {
    let n = rng.gen_range(min_n..=max_n);
    let m = pair_count(n);
    let blocks = if m == 0 { 1 } else { rng.gen_range(1..=m) };
    random_space(n, blocks, rng.gen()).expect("valid parameters")
}

fn ac1_rectangle() -> Outcome {
    let start = Instant::now();
    let r = rectangle_example();
    let g = cs(&r);
    let iso = self_isometry_group(&r, &SearchConfig::default()).unwrap();
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(g.order() == 24 && g.is_symmetric_group(), || {
        format!("Cs order {}", g.order())
    })?;
    ensure(iso.order() == 4, || format!("Iso order {}", iso.order()))?;
    Ok(format!(
        "Cs order 24, Iso order 4 in {:.2?}",
        start.elapsed()
    ))
}

fn ac2_three_point_census() -> Outcome {
    let start = Instant::now();
    let census = run_census(3, &SearchConfig::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    let full: Vec<String> = census.full_sym.iter().map(ToString::to_string).collect();
    ensure(census.total == 5, || format!("total {}", census.total))?;
    // "000" is the single block, "012" the all-singleton pattern
    ensure(full == ["000", "012"], || {
        format!("full-Sym patterns {full:?}")
    })?;
    ensure(census.disagreements.is_empty(), || {
        format!("disagreements {:?}", census.disagreements)
    })?;
    Ok(format!("5 patterns, Cs=Sym for {full:?}, 0 disagreements"))
}

fn ac3_four_point_census() -> Outcome {
    let start = Instant::now();
    let census = run_census(4, &SearchConfig::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    let full: Vec<String> = census.full_sym.iter().map(ToString::to_string).collect();
    ensure(census.total == 203, || format!("total {}", census.total))?;
    // single block, 1-factorization of K4, all singletons
    ensure(full == ["000000", "012210", "012345"], || {
        format!("full-Sym patterns {full:?}")
    })?;
    ensure(census.disagreements.is_empty(), || {
        format!("disagreements {:?}", census.disagreements)
    })?;
    Ok(format!(
        "203 patterns, Cs=Sym for {full:?}, 0 disagreements in {:.2?}",
        start.elapsed()
    ))
}

fn ac4_five_point_census() -> Outcome {
    let start = Instant::now();
    let census = run_census(5, &SearchConfig::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(120))?;
    let full: Vec<String> = census.full_sym.iter().map(ToString::to_string).collect();
    ensure(census.total == 115_975, || {
        format!("total {}", census.total)
    })?;
    ensure(full == ["0000000000", "0123456789"], || {
        format!("full-Sym patterns {full:?}")
    })?;
    ensure(census.disagreements.is_empty(), || {
        format!("{} disagreements", census.disagreements.len())
    })?;
    Ok(format!(
        "115975 patterns, Cs=Sym for {full:?}, 0 disagreements in {:.2?}",
        start.elapsed()
    ))
}

fn ac5_rectangle_equivalence() -> Outcome {
    let rect = rectangle_example();
    let mut rect_type = 0;
    for p in enumerate_patterns(4).unwrap() {
        let s = space_from_pattern(&p).unwrap();
        let by_class = is_rectangle_type(&s);
        let by_search = are_combinatorially_similar(&s, &rect).is_some();
        ensure(by_class == by_search, || {
            format!("pattern {p}: rectangle_type {by_class}, similar {by_search}")
        })?;
        rect_type += by_class as usize;
    }
    Ok(format!("203 patterns agree ({rect_type} rectangle type)"))
}

fn ac6_pseudolinear() -> Outcome {
    let one = DistanceValue::from_integer(1);
    let two = DistanceValue::from_integer(2);
    let rect = rectangle_example();
    let distinct = pseudolinear(&one, &two).unwrap();
    let w = are_combinatorially_similar(&distinct, &rect).ok_or("pseudolinear(1,2) not similar")?;
    for x in 0..4 {
        for y in 0..4 {
            let image = w.f.get(rect.dist(w.psi.apply(x), w.psi.apply(y)));
            ensure(image == Some(distinct.dist(x, y)), || {
                format!("witness fails at ({x}, {y})")
            })?;
        }
    }
    let equal = pseudolinear(&one, &one).unwrap();
    ensure(are_combinatorially_similar(&equal, &rect).is_none(), || {
        "pseudolinear(1,1) similar".into()
    })?;
    let order = cs(&equal).order();
    ensure(order == 8, || format!("pseudolinear(1,1) Cs order {order}"))?;
    Ok(format!(
        "(1,2) similar via psi {}, (1,1) not similar, Cs order 8",
        w.psi
    ))
}

fn ac7_heredity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut spaces, mut subsets) = (0, 0);
    while spaces < 200 {
        let space = seeded_space(&mut rng, 1, 6);
        if !cs(&space).is_symmetric_group() {
            continue;
        }
        spaces += 1;
        let n = space.len();
        for mask in 1u32..(1 << n) {
            let points: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let sub = space.subspace(&points).unwrap();
            ensure(cs(&sub).is_symmetric_group(), || {
                format!(
                    "subspace {points:?} of\n{}loses Cs = Sym",
                    space.to_matrix_string()
                )
            })?;
            subsets += 1;
        }
    }
    Ok(format!(
        "200 spaces with Cs = Sym, {subsets} subspaces, 0 violations"
    ))
}

/// Relabels the points of `space` by a random permutation and replaces every
/// value by a random distinct rational.
fn relabeled_copy(space: &SemimetricSpace, rng: &mut ChaCha8Rng) -> SemimetricSpace {
    let n = space.len();
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let mut new_values: BTreeSet<DistanceValue> = BTreeSet::new();
    while new_values.len() < space.value_set().len() - 1 {
        new_values.insert(DistanceValue::from_ratio(
            rng.gen_range(1..1000),
            rng.gen_range(1..20),
        ));
    }
    let mut new_values: Vec<DistanceValue> = new_values.into_iter().collect();
    new_values.shuffle(rng);
    let inverse = Permutation::new(images).unwrap().inverse();
    SemimetricSpace::from_pairs(n, |i, j| {
        let old = space.dist(inverse.apply(i), inverse.apply(j));
        let k = space.value_set().binary_search(old).unwrap();
        new_values[k - 1].clone()
    })
    .unwrap()
}

fn ac8_similarity_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..100 {
        let a = seeded_space(&mut rng, 2, 6);
        let b = relabeled_copy(&a, &mut rng);
        let w = are_combinatorially_similar(&a, &b)
            .ok_or_else(|| format!("case {case}: no witness"))?;
        ensure(w.verify(&a, &b), || {
            format!("case {case}: witness does not verify")
        })?;
        let (ga, gb) = (cs(&a), cs(&b));
        ensure(ga.order() == gb.order(), || {
            format!("case {case}: orders {} vs {}", ga.order(), gb.order())
        })?;
        ensure(ga.is_symmetric_group() == gb.is_symmetric_group(), || {
            format!("case {case}: Sym verdicts differ")
        })?;
        let conj = ga.conjugate_by(&w.psi).unwrap();
        ensure(element_set(&conj) == element_set(&gb), || {
            format!("case {case}: Cs(B) != psi Cs(A) psi^-1")
        })?;
    }
    Ok("100 pairs, 0 violations".into())
}

fn ac9_containment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = SearchConfig::default();
    let mut weak = 0;
    for case in 0..200 {
        let space = seeded_space(&mut rng, 1, 5);
        let iso = self_isometry_group(&space, &cfg).unwrap();
        let group = cs(&space);
        ensure(iso.is_subgroup_of(&group), || {
            format!("case {case}: Iso not inside Cs")
        })?;
        for p in semisim::all_permutations(space.len(), cfg.cap).unwrap() {
            if is_weak_similarity(&space, &space, &p).unwrap() {
                weak += 1;
                ensure(
                    induced_value_map(&space, &space, &p).unwrap().is_some(),
                    || format!("case {case}: weak similarity {p} has no value map"),
                )?;
                ensure(group.contains(&p), || {
                    format!("case {case}: weak similarity {p} outside Cs")
                })?;
            }
        }
    }
    Ok(format!(
        "200 spaces, {weak} weak similarities, 0 violations"
    ))
}

fn ac10_equilateral() -> Outcome {
    let mut checked = 0;
    for n in 3..=5 {
        let mut violation = None;
        run_census_with(n, &SearchConfig::default(), |p, class, full| {
            if full && !class.discrete && violation.is_none() {
                let s = space_from_pattern(p).unwrap();
                if has_equilateral_triangle(&s) {
                    violation = Some(p.to_string());
                }
            }
            checked += 1;
        })
        .map_err(|e| e.to_string())?;
        if let Some(p) = violation {
            return Err(format!(
                "pattern {p} has an equilateral triangle and Cs = Sym but is not discrete"
            ));
        }
    }
    Ok(format!("{checked} patterns, 0 violations"))
}

fn ac11_oracle_equivalence() -> Outcome {
    let exhaustive = SearchConfig::default();
    let pruned = SearchConfig::pruned();
    let same = |s: &SemimetricSpace| {
        let a = self_similarity_group(s, &exhaustive).unwrap();
        let b = self_similarity_group(s, &pruned).unwrap();
        element_set(&a) == element_set(&b)
    };
    for p in enumerate_patterns(4).unwrap() {
        ensure(same(&space_from_pattern(&p).unwrap()), || {
            format!("pattern {p} differs")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..500 {
        let s = seeded_space(&mut rng, 5, 6);
        ensure(same(&s), || {
            format!("random case {case} differs:\n{}", s.to_matrix_string())
        })?;
    }
    Ok("203 patterns and 500 random spaces, 0 discrepancies".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1  rectangle group orders", ac1_rectangle),
        ("AC2  three-point census", ac2_three_point_census),
        ("AC3  four-point census", ac3_four_point_census),
        ("AC4  five-point census", ac4_five_point_census),
        ("AC5  rectangle-type equivalence", ac5_rectangle_equivalence),
        ("AC6  pseudolinear dichotomy", ac6_pseudolinear),
        ("AC7  heredity", ac7_heredity),
        ("AC8  similarity invariance", ac8_similarity_invariance),
        ("AC9  containment", ac9_containment),
        ("AC10 equilateral triangle", ac10_equilateral),
        ("AC11 oracle equivalence", ac11_oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
