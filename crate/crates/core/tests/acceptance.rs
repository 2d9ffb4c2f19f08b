//! Acceptance suite. Runs as a plain binary and prints one line per
//! criterion; exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use afree::cayley::{CayleyGraph, WalkMode};
use afree::graded::{
    self, construct_filiform_truncation, construct_metabelian_witness, derived_series, homogeneous_subalgebra,
    lower_central_series, project_to_finite, verify_collapse_identities, verify_grading, CollapseOptions, Grading,
    StructureAlgebra,
};
use afree::groups::{
    bounded_orbit_condition, full_orbit_condition, is_arithmetically_free, ElementSet, Group, GroupElement,
};
use afree::higman::{f_cap, f_closed, f_rec, Higman};
use afree::lie_words::{
    check_characterisation, expand_left_normed, expand_tree, is_lie_regular, is_lie_regular_with_cap, linearise,
    linearise_bare, CharacterisationReport, NcPoly, NestedWord, ProductTree, DEFAULT_ORACLE_ARITY,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// `(label, invariant factors)` for every abelian group of order at most
/// `n`, with some isomorphic duplicates in `Z/2 x Z/m` form.
fn small_abelian_groups(max_order: u64) -> Vec<(String, Vec<u64>)> {
    let mut out: Vec<(String, Vec<u64>)> = Vec::new();
    for n in 1..=max_order {
        let f = if n == 1 { vec![] } else { vec![n] };
        out.push((format!("Z/{n}"), f));
    }
    for m in 2..=max_order / 2 {
        out.push((format!("Z/2xZ/{m}"), vec![2, m]));
    }
    for f in [vec![2, 2, 2], vec![3, 3]] {
        if f.iter().product::<u64>() <= max_order {
            let label = f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("x");
            out.push((label, f));
        }
    }
    out
}

fn all_subsets(group: &Group) -> Vec<ElementSet> {
    let elems = group.elements().expect("finite");
    (0u32..1 << elems.len())
        .map(|mask| {
            let items = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone());
            ElementSet::new(group, items).unwrap()
        })
        .collect()
}

/// Coordinates of a finite abelian group element, for test-side arithmetic.
fn add(f: &[u64], a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).zip(f).map(|((x, y), &d)| (x + y).rem_euclid(d as i64)).collect()
}

/// Independent freeness oracle on raw coordinates: some `x, g` with every
/// `x + t g`, `t = 0..ord`, inside the set.
fn oracle_not_free(f: &[u64], set: &[Vec<i64>]) -> bool {
    let zero = vec![0i64; f.len()];
    set.iter().any(|x| {
        set.iter().any(|g| {
            let mut cur = x.clone();
            loop {
                if !set.contains(&cur) {
                    return false;
                }
                cur = add(f, &cur, g);
                if cur == *x {
                    return true;
                }
                // Guard against g = 0 looping: x + 0 = x returns above.
                let _ = &zero;
            }
        })
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut subsets = 0usize;
    for (label, f) in small_abelian_groups(12) {
        let group = Group::abelian(&f, 0).unwrap();
        for set in all_subsets(&group) {
            subsets += 1;
            let c1 = full_orbit_condition(&set);
            let c2 = bounded_orbit_condition(&set);
            ensure(c1 == c2, format!("{label} {set}: conditions disagree"))?;
            let raw: Vec<Vec<i64>> = set.iter().map(|e| e.coords()).collect();
            ensure(
                is_arithmetically_free(&set).is_free() == !oracle_not_free(&f, &raw),
                format!("{label} {set}: freeness disagrees with the oracle"),
            )?;
            ensure(is_arithmetically_free(&set).is_free() == c1, format!("{label} {set}: verdict vs condition"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!("{subsets} subsets agree, {:.1}s", t.as_secs_f64()))
}

fn cycles(tree: &ProductTree) -> Vec<(String, i8)> {
    let mut v: Vec<(String, i8)> = linearise(tree).unwrap().terms.iter().map(|t| (t.perm.to_string(), t.sign)).collect();
    v.sort();
    v
}

fn expected(items: &[(&str, i8)]) -> Vec<(String, i8)> {
    let mut v: Vec<(String, i8)> = items.iter().map(|(c, s)| (c.to_string(), *s)).collect();
    v.sort();
    v
}

fn leaf(i: usize) -> ProductTree {
    ProductTree::leaf(i)
}

fn br(a: ProductTree, b: ProductTree) -> ProductTree {
    ProductTree::bracket(a, b)
}

fn criterion_2() -> Outcome {
    let p = br(br(leaf(1), leaf(2)), br(leaf(3), leaf(4)));
    let want = expected(&[
        ("id", 1),
        ("(12)", -1),
        ("(34)", -1),
        ("(12)(34)", 1),
        ("(13)(24)", -1),
        ("(1324)", 1),
        ("(1423)", 1),
        ("(14)(23)", -1),
    ]);
    ensure(cycles(&p) == want, format!("four leaves: {:?}", cycles(&p)))?;
    let p = br(leaf(1), br(leaf(2), leaf(3)));
    let want = expected(&[("id", 1), ("(23)", -1), ("(123)", -1), ("(13)", 1)]);
    ensure(cycles(&p) == want, format!("[v1,[v2,v3]]: {:?}", cycles(&p)))?;
    let q = br(br(leaf(1), leaf(2)), leaf(3));
    let want = expected(&[("id", 1), ("(12)", -1), ("(132)", -1), ("(13)", 1)]);
    ensure(cycles(&q) == want, format!("[[v1,v2],v3]: {:?}", cycles(&q)))?;
    Ok("8 + 4 + 4 signed permutations match".into())
}

/// `[u?, P, ...]` against the signed sum of permuted left-normed words.
fn oracle_difference(tree: &ProductTree, prefix: bool) -> NcPoly {
    let l = tree.arity();
    let (labels, lin) = if prefix {
        ((1..=l).collect::<Vec<_>>(), linearise(tree).unwrap())
    } else {
        ((1..=l).collect::<Vec<_>>(), linearise_bare(tree).unwrap())
    };
    let p = expand_tree(tree, &labels, DEFAULT_ORACLE_ARITY).unwrap();
    let lhs = if prefix { NcPoly::generator(0).bracket(&p) } else { p };
    let mut rhs = NcPoly::zero();
    for term in &lin.terms {
        let mut word: Vec<usize> = if prefix { vec![0] } else { vec![] };
        word.extend(term.perm.apply(&labels));
        let e = expand_left_normed(&word, DEFAULT_ORACLE_ARITY).unwrap();
        rhs = &rhs + &e.scale(term.sign as i64);
    }
    &lhs - &rhs
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for l in 1..=5 {
        for tree in ProductTree::enumerate(l) {
            for prefix in [false, true] {
                let d = oracle_difference(&tree, prefix);
                ensure(d.is_zero(), format!("{tree} prefix={prefix}: residue {d}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities, all residues zero"))
}

fn criterion_4() -> Outcome {
    let (a, b, c) = (0, 1, 2);
    for (name, seq, want) in [("R", vec![a, b, c], true), ("S", vec![a, a, b], true), ("T", vec![a, b, b], true), ("U", vec![a, a, a], false)] {
        let got = is_lie_regular(&seq).unwrap().is_regular();
        ensure(got == want, format!("{name}: got {got}"))?;
    }
    Ok("R, S, T Lie-regular; U not".into())
}

fn naive_f(n: u64, alpha: u64, lambda: u64) -> BigUint {
    let mut v = BigUint::from(n);
    for _ in 1..alpha {
        v = BigUint::from(lambda) * (v + n);
    }
    v
}

fn naive_fcap(alpha: &BigUint, lambda: &BigUint) -> BigUint {
    let e: u32 = lambda.try_into().unwrap();
    lambda * alpha.pow(e)
}

/// Unmemoized recursion, straight from the definition.
fn naive_h(a: u64, b: u64, c: &BigUint) -> BigUint {
    if b == 1 {
        return BigUint::from(1u32);
    }
    if *c == BigUint::from(1u32) {
        return BigUint::from(a);
    }
    let ba = BigUint::from(a);
    let c1 = c - 1u32;
    let below = naive_h(a, b, &c1);
    let r = &ba * naive_fcap(&c1, &below);
    let lambda = &ba + naive_h(a, b - 1, &r) + 1u32;
    let main = &ba * naive_fcap(c, &lambda);
    main.max(naive_h(a, b - 1, c)).max(below)
}

fn criterion_5() -> Outcome {
    let h = Higman::default();
    // The two boundary rules overlap at (1, 1); the b = 1 rule wins there.
    for a in 1..=9 {
        for x in 1..=9 {
            ensure(h.eval(a, 1, x).unwrap() == BigUint::from(1u32), format!("H_{a}(1,{x})"))?;
            if x > 1 {
                ensure(h.eval(a, x, 1).unwrap() == BigUint::from(a), format!("H_{a}({x},1)"))?;
            }
        }
    }
    let oracle = naive_h(2, 2, &BigUint::from(2u32));
    ensure(oracle == BigUint::from(128u32), format!("oracle gives {oracle}"))?;
    ensure(h.eval(2, 2, 2).unwrap() == oracle, "H_2(2,2)")?;
    ensure(h.eval_single(2).unwrap() == oracle, "H(2)")?;
    for n in 1..=8 {
        for al in 1..=8 {
            for la in 1..=8 {
                let r = f_rec(n, al, la).unwrap();
                ensure(r == f_closed(n, al, la).unwrap(), format!("f_{n}({al},{la}) closed form"))?;
                ensure(r == naive_f(n, al, la), format!("f_{n}({al},{la}) oracle"))?;
                // f_w(u, v) <= w f(v, u), with (w, u, v) = (n, al, la).
                ensure(r <= BigUint::from(n) * f_cap(la, al), format!("f_{n}({al},{la}) bound"))?;
            }
        }
    }
    let h3 = Higman::default();
    ensure(h3.eval(3, 2, 2).unwrap() == BigUint::from(480u32), "H_3(2,2)")?;
    ensure(h3.eval(3, 2, 3).unwrap() == BigUint::from(3645u32), "H_3(2,3)")?;
    for a in 1..=3 {
        for b in 1..=2 {
            for c in 1..=3 {
                let _ = h3.eval(a, b, c);
            }
        }
    }
    ensure(h3.monotonicity_violation().is_none(), "monotonicity")?;
    ensure(h3.eval(3, 3, 3).is_err(), "H(3) should exceed the budget")?;
    Ok(format!("boundaries, H(2) = 128, f grid 8^3, {} cached triples monotone", h3.entries().len()))
}

/// All nested words of depth `d` over `letters` with underlying length in
/// `1..=max_len`.
fn nested_words(d: usize, letters: usize, max_len: usize, memo: &mut HashMap<(usize, usize), Vec<NestedWord>>) -> Vec<NestedWord> {
    if let Some(v) = memo.get(&(d, max_len)) {
        return v.clone();
    }
    let out = if d == 0 {
        if max_len == 0 {
            vec![]
        } else {
            (0..letters).map(NestedWord::Letter).collect()
        }
    } else {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<NestedWord>, usize)> = vec![(vec![], 0)];
        while let Some((items, used)) = stack.pop() {
            if !items.is_empty() {
                out.push(NestedWord::seq(items.clone()).unwrap());
            }
            for part in nested_words(d - 1, letters, max_len - used, memo) {
                let l = part.underlying().len();
                if used + l <= max_len {
                    let mut next = items.clone();
                    next.push(part);
                    stack.push((next, used + l));
                }
            }
        }
        out
    };
    memo.insert((d, max_len), out.clone());
    out
}

fn criterion_6() -> Outcome {
    let mut memo = HashMap::new();
    let mut lie: HashMap<Vec<usize>, bool> = HashMap::new();
    let (mut regular, mut total) = (0usize, 0usize);
    for d in 0..=3 {
        for w in nested_words(d, 3, 6, &mut memo) {
            total += 1;
            if !w.is_regular() {
                continue;
            }
            regular += 1;
            let u = w.underlying();
            let ok = *lie.entry(u.clone()).or_insert_with(|| is_lie_regular(&u).unwrap().is_regular());
            ensure(ok, format!("{w} is regular but {u:?} is not Lie-regular"))?;
        }
    }
    Ok(format!("{regular} regular of {total} nested words, all Lie-regular"))
}

fn criterion_7() -> Outcome {
    let mut sets = 0usize;
    for (label, f) in small_abelian_groups(8) {
        let group = Group::abelian(&f, 0).unwrap();
        for set in all_subsets(&group) {
            let Some((x, g)) = is_arithmetically_free(&set).witness().map(|(a, b)| (a.clone(), b.clone())) else {
                continue;
            };
            sets += 1;
            let report = check_characterisation(&set, 8).map_err(|e| e.to_string())?;
            ensure(report.passed(), format!("{label} {set}: {report:?}"))?;
            // Direct recount on raw coordinates.
            let ranks: Vec<usize> = set.to_vec().iter().map(|e| set.rank_of(e).unwrap()).collect();
            let _ = ranks;
            for k in 1..=8 {
                let seq: Vec<GroupElement> = std::iter::once(x.clone()).chain(std::iter::repeat_n(g.clone(), k)).collect();
                for s in 0..seq.len() {
                    for e in s + 1..=seq.len() {
                        let w = seq[s..e].iter().fold(vec![0i64; f.len()], |acc, el| add(&f, &acc, &el.coords()));
                        let inside = set.contains(&group.element(&w).unwrap());
                        if inside {
                            continue;
                        }
                        ensure(s != 0, format!("{label} {set}: initial segment of S_{k} leaves X"))?;
                        let lie = is_lie_regular_with_cap(&seq[s..e], 9).unwrap().is_regular();
                        ensure(!lie, format!("{label} {set}: Lie-regular segment {s}..{e} of S_{k} leaves X"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{sets} non-free sets, S_1..S_8, zero violations"))
}

fn criterion_8() -> Outcome {
    let h = Higman::default();
    let h1 = h.eval_single(1).unwrap();
    let h2 = h.eval_single(2).unwrap();
    let (h3_low, at) = h.lower_bound(3, 3, 3).unwrap();
    let mut records = Vec::new();
    for n in [5u64, 7] {
        let group = Group::cyclic(n).unwrap();
        for set in all_subsets(&group) {
            if set.is_empty() || set.len() > 3 || !is_arithmetically_free(&set).is_free() {
                continue;
            }
            let report = check_characterisation(&set, 8).map_err(|e| e.to_string())?;
            let CharacterisationReport::Free { bound, .. } = report else {
                return Err(format!("{set} reported as not free"));
            };
            let bound = bound.ok_or_else(|| format!("Z/{n} {set}: no bound within length 8"))?;
            // Every sequence of length H(|X|) + 1 qualifies.
            let limit = match set.len() {
                1 => &h1 + 1u32,
                2 => &h2 + 1u32,
                _ => &h3_low + 1u32,
            };
            ensure(BigUint::from(bound) <= limit, format!("Z/{n} {set}: N = {bound} above H(|X|) + 1"))?;
            records.push(format!("Z/{n}{set}={bound}"));
        }
    }
    let max = records.iter().filter_map(|r| r.rsplit('=').next()?.parse::<usize>().ok()).max().unwrap_or(0);
    println!("    N(X): {}", records.join(" "));
    Ok(format!("{} free sets, all N(X) <= {max}; H(3) >= H_3{at:?} = {h3_low}", records.len()))
}

fn witness_checks(label: &str, y: &ElementSet) -> Result<(), String> {
    let w = construct_metabelian_witness(y).map_err(|e| format!("{label} {y}: {e}"))?;
    let alg = &w.algebra;
    ensure(alg.jacobi_violation().is_none(), format!("{label} {y}: Jacobi"))?;
    ensure(verify_grading(alg, &w.grading).unwrap().passed(), format!("{label} {y}: grading"))?;
    ensure(w.grading.support() == *y, format!("{label} {y}: support"))?;
    ensure(alg.dim() == y.len(), format!("{label} {y}: dimension"))?;
    let ds = derived_series(alg, 2 * alg.dim());
    ensure(ds.class == Some(2), format!("{label} {y}: derived series {:?}", ds.dims))?;
    let lcs = lower_central_series(alg, 2 * alg.dim());
    ensure(lcs.stabilized && lcs.dims.last() != Some(&0), format!("{label} {y}: lower central series {:?}", lcs.dims))?;
    Ok(())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let (mut built, mut refused) = (0usize, 0usize);
    for (label, f) in small_abelian_groups(12) {
        let group = Group::abelian(&f, 0).unwrap();
        for y in all_subsets(&group) {
            if is_arithmetically_free(&y).is_free() {
                continue;
            }
            if y.contains(&group.identity()) {
                ensure(construct_metabelian_witness(&y).is_err(), format!("{label} {y}: identity not refused"))?;
                refused += 1;
                continue;
            }
            witness_checks(&label, &y)?;
            built += 1;
        }
    }
    let s3 = Group::symmetric(3);
    for y in all_subsets(&s3) {
        if !y.contains(&s3.identity()) && !is_arithmetically_free(&y).is_free() {
            witness_checks("S3", &y)?;
            built += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!("{built} witnesses verified, {refused} sets with identity refused, {:.1}s", t.as_secs_f64()))
}

fn class_of(alg: &StructureAlgebra) -> Option<usize> {
    lower_central_series(alg, 4 * alg.dim().max(1)).class
}

fn criterion_10() -> Outcome {
    let z3 = Group::cyclic(3).unwrap();
    let heis = StructureAlgebra::heisenberg();
    let deg = |n| z3.element(&[n]).unwrap();
    let gr = Grading::new(&z3, vec![deg(1), deg(1), deg(2)]).unwrap();
    ensure(verify_grading(&heis, &gr).unwrap().passed(), "Heisenberg grading")?;
    ensure(gr.support() == z3.parse_element_set("1,2").unwrap(), "Heisenberg support")?;
    ensure(is_arithmetically_free(&gr.support()).is_free(), "support {1,2} should be free")?;
    ensure(class_of(&heis) == Some(2), "Heisenberg class")?;
    let mut subs = 0;
    for h in ["0", "0,1,2"] {
        let h = z3.parse_element_set(h).unwrap();
        let (sub, _) = homogeneous_subalgebra(&heis, &gr, &h).unwrap();
        ensure(class_of(&sub).unwrap() <= 2, "Heisenberg subalgebra class")?;
        subs += 1;
    }

    let mut truncations = 0;
    for (f, x, g) in [
        (vec![2u64, 2], vec![0i64, 1], vec![1i64, 0]),
        (vec![6], vec![1], vec![2]),
        (vec![2, 4], vec![1, 0], vec![0, 1]),
        (vec![3, 3], vec![1, 0], vec![0, 1]),
        (vec![8], vec![1], vec![4]),
    ] {
        let group = Group::abelian(&f, 0).unwrap();
        let (x, g) = (group.element(&x).unwrap(), group.element(&g).unwrap());
        let n = g.order().finite().unwrap() as usize;
        for depth in [n, n + 2, 3 * n] {
            let (alg, grading) = construct_filiform_truncation(&x, &g, depth).unwrap();
            ensure(verify_grading(&alg, &grading).unwrap().passed(), format!("filiform {x:?} {g:?} {depth}"))?;
            let class = class_of(&alg).ok_or("truncation should be nilpotent")?;
            ensure(class == depth, format!("filiform class {class} vs {depth}"))?;
            truncations += 1;
            for h in subgroups(&group) {
                let (sub, _) = homogeneous_subalgebra(&alg, &grading, &h).unwrap();
                let c = class_of(&sub).ok_or("subalgebra should be nilpotent")?;
                ensure(c <= class, format!("class(L_H) = {c} > {class}"))?;
                subs += 1;
            }
        }
    }
    Ok(format!("Heisenberg class 2 on free support {{1,2}}; {truncations} filiform truncations graded; {subs} subalgebras"))
}

fn subgroups(group: &Group) -> Vec<ElementSet> {
    all_subsets(group).into_iter().filter(|h| graded::is_subgroup(h).unwrap()).collect()
}

fn criterion_11() -> Outcome {
    let mut algebras: Vec<(String, StructureAlgebra, Grading)> = Vec::new();
    for (label, f, y) in [
        ("Z/2xZ/2", vec![2u64, 2], "(1,0);(0,1);(1,1)"),
        ("Z/6", vec![6], "1,2,3,5"),
        ("Z/6", vec![6], "1,2,3,4,5"),
        ("Z/8", vec![8], "1,3,4,5,7"),
        ("Z/2xZ/4", vec![2, 4], "(0,1);(1,0);(1,1);(1,2);(1,3)"),
    ] {
        let group = Group::abelian(&f, 0).unwrap();
        let w = construct_metabelian_witness(&group.parse_element_set(y).unwrap()).map_err(|e| format!("{label} {y}: {e}"))?;
        algebras.push((format!("{label} {y}"), w.algebra, w.grading));
    }
    let v4 = Group::abelian(&[2, 2], 0).unwrap();
    let (alg, gr) =
        construct_filiform_truncation(&v4.element(&[0, 1]).unwrap(), &v4.element(&[1, 0]).unwrap(), 6).unwrap();
    algebras.push(("filiform".into(), alg, gr));

    let (mut tuples, mut prefix, mut segment) = (0, 0, 0);
    for (i, (label, alg, gr)) in algebras.iter().enumerate() {
        let opts = CollapseOptions { samples: 300, max_len: 6, seed: 1000 + i as u64 };
        let r = verify_collapse_identities(alg, gr, &opts).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{label}: {:?}", r.violations.first()))?;
        tuples += r.tuples_checked;
        prefix += r.prefix_checks;
        segment += r.segment_checks;
    }
    ensure(tuples >= 1000, format!("only {tuples} tuples"))?;
    Ok(format!("{tuples} tuples ({prefix} prefix, {segment} segment identities), all zero"))
}

fn criterion_12() -> Outcome {
    let z2 = Group::free_abelian(2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    let mut drawn = 0;
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = rng.random_range(-10i64..=10);
        if v != 0 {
            return v;
        }
    };
    while done < 50 {
        drawn += 1;
        let size = rng.random_range(1..=5);
        let items: Vec<GroupElement> =
            (0..size).map(|_| z2.element(&[nonzero(&mut rng), nonzero(&mut rng)]).unwrap()).collect();
        let set = ElementSet::new(&z2, items).unwrap();
        if !is_arithmetically_free(&set).is_free() {
            continue;
        }
        let p = project_to_finite(&set).map_err(|e| format!("{set}: {e}"))?;
        let r = p.modulus;
        let max = set.iter().flat_map(|e| e.coords()).map(i64::unsigned_abs).max().unwrap();
        ensure(3 * max < r && 3 * max >= r - 1, format!("{set}: modulus {r}"))?;
        let raw: Vec<Vec<i64>> = p.image.iter().map(|e| e.coords()).collect();
        ensure(raw.len() == set.len(), format!("{set}: projection not injective"))?;
        ensure(!oracle_not_free(&[r, r], &raw), format!("{set}: image {} not free", p.image))?;
        done += 1;
    }
    Ok(format!("50 free subsets of Z^2 (from {drawn} draws) project to free sets"))
}

/// Lyndon words: strictly smaller than every proper rotation. These are
/// the Lie-regular sequences, independently of any bracketing search.
fn lyndon(w: &[i64]) -> bool {
    (1..w.len()).all(|r| w.iter().cmp(w[r..].iter().chain(&w[..r])) == std::cmp::Ordering::Less)
}

struct WalkSearch {
    p: i64,
    /// Certificate-free walks by number of edges.
    free_counts: Vec<u64>,
    /// Walks that just acquired a certificate, by number of edges.
    closed: Vec<Vec<i64>>,
}

impl WalkSearch {
    fn dfs(&mut self, vertices: &mut Vec<i64>) {
        let edges = vertices.len() - 1;
        if self.free_counts.len() <= edges {
            self.free_counts.push(0);
        }
        self.free_counts[edges] += 1;
        for v in 1..self.p {
            if v == *vertices.last().unwrap() {
                continue;
            }
            vertices.push(v);
            let e: Vec<i64> = vertices.windows(2).map(|w| (w[1] - w[0]).rem_euclid(self.p)).collect();
            let n = e.len();
            let closes = (0..n).any(|s| vertices[s] == vertices[n] && lyndon(&e[s..]));
            if closes {
                self.closed.push(vertices.clone());
            } else {
                self.dfs(vertices);
            }
            vertices.pop();
        }
    }
}

fn criterion_13() -> Outcome {
    let z5 = Group::cyclic(5).unwrap();
    let x = z5.parse_element_set("1,2,3,4").unwrap();
    let report = check_characterisation(&x, 64).map_err(|e| e.to_string())?;
    let CharacterisationReport::Free { bound: Some(n), .. } = report else {
        return Err(format!("no empirical bound: {report:?}"));
    };
    let graph = CayleyGraph::new(x.clone()).unwrap();
    let to_walk = |vs: &[i64]| graph.walk(vs.iter().map(|&v| z5.element(&[v]).unwrap()).collect()).unwrap();

    // Walks without a certificate are closed under prefixes; list them all.
    let mut search = WalkSearch { p: 5, free_counts: Vec::new(), closed: Vec::new() };
    for v in 1..5 {
        search.dfs(&mut vec![v]);
    }
    let longest_free = search.free_counts.len() - 1;
    // A walk with m edges corresponds to a sequence of length m + 1 whose
    // partial sums are its vertices.
    ensure(longest_free + 2 == n, format!("longest certificate-free walk has {longest_free} edges, N(X) = {n}"))?;

    let mut verified = 0usize;
    let mut check = |vs: &[i64], want: bool| -> Result<(), String> {
        let walk = to_walk(vs);
        let found = graph.find_regular_cycle(&walk, WalkMode::LieRegular, true, walk.len()).map_err(|e| e.to_string())?;
        match found {
            Some(sub) if want => {
                ensure(sub.is_cycle, format!("{vs:?}: difference must be 0"))?;
                ensure(graph.verify(&walk, &sub).unwrap(), format!("{vs:?}: certificate does not re-verify"))?;
                verified += 1;
                Ok(())
            }
            None if !want => Ok(()),
            other => Err(format!("{vs:?}: library gives {other:?}")),
        }
    };
    for vs in search.closed.iter().filter(|vs| vs.len() >= 36) {
        check(vs, true)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for len in [n, n + 1] {
        for _ in 0..300 {
            let mut vs = vec![rng.random_range(1..5i64)];
            while vs.len() <= len {
                let last = *vs.last().unwrap();
                let next = (last + rng.random_range(1..4i64) - 1) % 4 + 1;
                vs.push(if next == last { last % 4 + 1 } else { next });
            }
            check(&vs, true)?;
        }
    }
    // Certificate-free walks of maximal length really have none.
    let mut longest = Vec::new();
    fn collect(p: i64, vs: &mut Vec<i64>, target: usize, out: &mut Vec<Vec<i64>>) {
        if vs.len() - 1 == target {
            out.push(vs.clone());
            return;
        }
        for v in 1..p {
            if v == *vs.last().unwrap() {
                continue;
            }
            vs.push(v);
            let e: Vec<i64> = vs.windows(2).map(|w| (w[1] - w[0]).rem_euclid(p)).collect();
            let k = e.len();
            if !(0..k).any(|s| vs[s] == vs[k] && lyndon(&e[s..])) {
                collect(p, vs, target, out);
            }
            vs.pop();
        }
    }
    for v in 1..5 {
        collect(5, &mut vec![v], longest_free, &mut longest);
    }
    for vs in &longest {
        check(vs, false)?;
    }
    Ok(format!(
        "N(X) = {n}; {} certificate-free walks, none beyond {longest_free} edges; {verified} certificates re-verified",
        search.free_counts.iter().sum::<u64>()
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("definition conditions agree on groups of order <= 12", criterion_1),
        ("linearisation examples reproduced", criterion_2),
        ("associative oracle identity, <= 5 leaves, with and without prefix", criterion_3),
        ("Lie-regularity of R, S, T, U", criterion_4),
        ("Higman map and f-maps", criterion_5),
        ("regular nested words have Lie-regular underlying sequences", criterion_6),
        ("non-free sets: segments of S_k stay in X", criterion_7),
        ("free sets in Z/5, Z/7: empirical N(X)", criterion_8),
        ("metabelian witnesses on groups of order <= 12", criterion_9),
        ("nilpotency instances, filiform truncations, subalgebras", criterion_10),
        ("collapse identities on witness algebras", criterion_11),
        ("projection of free subsets of Z^2", criterion_12),
        ("Cayley walks in units of Z/5 contain Lie-regular cycles", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
