//! Acceptance suite. Runs each criterion under its time budget and prints one
//! pass/fail line per criterion; exits nonzero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bks_geometry::magic::{
    complement_config, exhaustive_nchv_check, intersection_lines, parity_witness,
};
use bks_geometry::search::{
    find_hc_rectangles, find_mermin_squares, ovoid_census, rectangle_seed, SearchOptions, Shape,
};
use bks_geometry::{
    catalog, classify_set, projective_closure, GeometryKind, MagicConfiguration, PauliObservable,
    Sign, Subspace, SymplecticPoint,
};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn obs(word: &str) -> PauliObservable {
    word.parse().expect("valid word")
}

fn point(word: &str) -> SymplecticPoint {
    obs(word).to_point().expect("non-identity")
}

fn word_set<'a>(words: impl IntoIterator<Item = &'a str>) -> BTreeSet<String> {
    words.into_iter().map(|w| obs(w).to_string()).collect()
}

fn json_words(v: &Value) -> BTreeSet<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|w| obs(w.as_str().expect("string")).to_string())
        .collect()
}

fn json_sign(v: &Value) -> i64 {
    v.as_i64().expect("integer sign")
}

// 1: reproduction of the built-in rectangle through the binary.

fn ac1() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_bks"))
        .args(["reproduce", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "reproduce exited {:?}", out.status.code());
    let json: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;

    let contexts = json["contexts"].as_array().ok_or("no contexts")?;
    ensure!(contexts.len() == 5, "{} contexts", contexts.len());
    for (c, (name, words)) in contexts.iter().zip(catalog::HC_RECTANGLE) {
        ensure!(json_words(&c["observables"]) == word_set(words.iter().copied()), "{name} differs");
    }
    let signs: Vec<i64> = contexts.iter().map(|c| json_sign(&c["sign"])).collect();
    ensure!(signs == [1, 1, 1, 1, -1], "signs {signs:?}");

    for (i, generator) in catalog::HC_GENERATORS.iter().enumerate() {
        let got = json_words(&contexts[i]["closure"]["points"]);
        ensure!(got.len() == 15, "generator {} has {} points", i + 1, got.len());
        ensure!(got == word_set(generator.iter().copied()), "generator {} differs", i + 1);
    }
    let fano = json_words(&contexts[4]["closure"]["points"]);
    ensure!(fano == word_set(catalog::HC_FANO_PLANE), "Fano plane differs");

    let lines = json["lines"].as_array().ok_or("no lines")?;
    for ((i, j), words) in catalog::HC_LINES {
        let line = lines
            .iter()
            .find(|l| l["contexts"][0] == i - 1 && l["contexts"][1] == j - 1)
            .ok_or(format!("no line L{i}{j}"))?;
        ensure!(line["rank"] == 2, "L{i}{j} rank {}", line["rank"]);
        ensure!(json_words(&line["points"]) == word_set(words), "L{i}{j} differs");
    }
    ensure!(json["shared_point"] == catalog::HC_PERSPECTIVITY_POINT, "shared point {}", json["shared_point"]);

    let twin = json["twin"].as_array().ok_or("no twin")?;
    ensure!(twin.len() == 5, "twin has {} contexts", twin.len());
    for (c, (name, words)) in twin.iter().zip(catalog::HC_TWIN) {
        ensure!(json_words(&c["observables"]) == word_set(words.iter().copied()), "{name} differs");
    }
    ensure!(json["verdict"] == "contradiction_certified", "verdict {}", json["verdict"]);
    Ok("5 contexts, 4 generators, Fano plane, 6 lines, IXII and twin match".into())
}

// 2: classification of every context and its closure.

fn ac2() -> Check {
    let hc = catalog::hc_rectangle();
    for c in &hc.contexts()[..4] {
        let closure = projective_closure(&c.points()).map_err(|e| e.to_string())?;
        ensure!(
            closure.label.kind == GeometryKind::CapEllipticQuadric,
            "{:?} -> {:?}",
            c.name(),
            closure.label.kind
        );
        ensure!(closure.span.rank() == 4, "{:?} closure rank {}", c.name(), closure.span.rank());
        ensure!(closure.span.is_totally_isotropic(), "{:?} not isotropic", c.name());
    }
    let s5 = &hc.contexts()[4];
    let closure = projective_closure(&s5.points()).map_err(|e| e.to_string())?;
    ensure!(closure.label.kind == GeometryKind::AffinePlaneOrder2, "S5 -> {:?}", closure.label.kind);
    ensure!(closure.span.rank() == 3, "S5 closure rank {}", closure.span.rank());
    let rest: BTreeSet<SymplecticPoint> = closure.complement.iter().copied().collect();
    let line: BTreeSet<SymplecticPoint> = catalog::HC_DIAGONAL_LINE.iter().map(|w| point(w)).collect();
    ensure!(rest == line, "off-set points {:?}", closure.complement);
    ensure!(
        closure.complement_label.map(|l| l.kind) == Some(GeometryKind::Line),
        "off-set points are not a line"
    );
    Ok("S1..S4 elliptic quadrics of rank 4, S5 affine plane of rank 3, off-set line IIYY YIIY YIYI".into())
}

// 3: the parity contradiction and the exhaustive scan.

fn ac3() -> Check {
    let hc = catalog::hc_rectangle();
    let cert = parity_witness(&hc).map_err(|e| e.to_string())?;
    let anchor = point(catalog::HC_PERSPECTIVITY_POINT);
    let mult = hc.multiplicity();
    ensure!(mult.len() == 11, "{} points", mult.len());
    for (p, n) in &mult {
        let expected = if *p == anchor { 4 } else { 2 };
        ensure!(*n == expected, "{p} appears {n} times");
    }
    ensure!(cert.all_multiplicities_even, "parity flag not set");
    ensure!(cert.sign_product == Sign::Minus, "sign product {}", cert.sign_product);
    ensure!(cert.certified(), "not certified");

    let scan = exhaustive_nchv_check(&hc).map_err(|e| e.to_string())?;
    ensure!(!scan.satisfiable, "scan found {:?}", scan.witness);
    ensure!(hc.universe().len() == 11, "2^{} valuations", hc.universe().len());

    let four = MagicConfiguration::new(hc.contexts()[..4].to_vec()).map_err(|e| e.to_string())?;
    let scan = exhaustive_nchv_check(&four).map_err(|e| e.to_string())?;
    let witness = scan.witness.ok_or("S1..S4 unsatisfiable")?;
    ensure!(scan.satisfiable && witness.satisfies(&four), "witness does not satisfy S1..S4");
    let shown = witness.0.iter().map(|(p, s)| format!("{p}={s}")).join(" ");
    Ok(format!("2048 valuations rejected; without S5: {shown}"))
}

// 4: the twin.

fn ac4() -> Check {
    let hc = catalog::hc_rectangle();
    let twin = catalog::hc_twin();
    for (a, b) in hc.contexts()[..4].iter().zip(&twin.contexts()[..4]) {
        ensure!(a.span() == b.span(), "{:?} and {:?} span differently", a.name(), b.name());
    }
    let cert = parity_witness(&twin).map_err(|e| e.to_string())?;
    ensure!(cert.certified(), "twin not certified");
    let signs: Vec<Sign> = twin.contexts().iter().map(|c| c.sign()).collect();
    let original: Vec<Sign> = hc.contexts().iter().map(|c| c.sign()).collect();
    ensure!(signs == original, "twin signs {signs:?}");

    let anchor = point(catalog::HC_PERSPECTIVITY_POINT);
    let projected = complement_config(&hc, anchor).map_err(|e| e.to_string())?;
    ensure!(projected.canonical_key() == twin.canonical_key(), "projection is not the twin");
    let back = complement_config(&projected, anchor).map_err(|e| e.to_string())?;
    ensure!(back == hc, "double projection differs");

    let (s5, t5) = (&hc.contexts()[4], &twin.contexts()[4]);
    let line = Subspace::span(&catalog::HC_DIAGONAL_LINE.map(point)).map_err(|e| e.to_string())?;
    let shared = s5.span().intersect(&t5.span()).map_err(|e| e.to_string())?;
    let off_set = |c: &bks_geometry::Context| -> Result<Vec<SymplecticPoint>, String> {
        Ok(projective_closure(&c.points()).map_err(|e| e.to_string())?.complement)
    };
    let same_off_set = off_set(s5)? == off_set(t5)? && off_set(s5)? == line.points();
    ensure!(
        s5.span() == t5.span(),
        "span(S5') != span(S5): S5 spans {} and S5' spans {}; the planes meet in {shared} \
         (off-set lines equal: {same_off_set}); S1'..S4' spans, certification, signs and involution hold",
        s5.span(),
        t5.span()
    );
    Ok("spans agree, twin certified with signs (+,+,+,+,-), projection is an involution".into())
}

// 5: oracle agreements.

type Matrix = Vec<Vec<i32>>;

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n * m]; n * m];
    for (i, j, k, l) in itertools::iproduct!(0..n, 0..n, 0..m, 0..m) {
        out[i * m + k][j * m + l] = a[i][j] * b[k][l];
    }
    out
}

fn matrix_of(word: &str) -> Matrix {
    let (sign, letters) = match word.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, word),
    };
    let x: Matrix = vec![vec![0, 1], vec![1, 0]];
    let z: Matrix = vec![vec![1, 0], vec![0, -1]];
    let mut m: Matrix = vec![vec![sign]];
    for c in letters.chars() {
        let f = match c {
            'I' => vec![vec![1, 0], vec![0, 1]],
            'X' => x.clone(),
            'Z' => z.clone(),
            'Y' => matmul(&x, &z),
            _ => unreachable!(),
        };
        m = kron(&m, &f);
    }
    m
}

/// Letter-level commutation: count positions holding two different non-identity letters.
fn letters_commute(a: &str, b: &str) -> bool {
    let strip = |w: &str| w.trim_start_matches('-').chars().collect::<Vec<_>>();
    strip(a)
        .iter()
        .zip(strip(b))
        .filter(|(p, q)| **p != 'I' && *q != 'I' && **p != *q)
        .count()
        % 2
        == 0
}

fn random_word(rng: &mut StdRng, n: usize) -> String {
    let mut w = String::new();
    if rng.random_bool(0.5) {
        w.push('-');
    }
    for _ in 0..n {
        w.push(['I', 'X', 'Y', 'Z'][rng.random_range(0..4)]);
    }
    w
}

fn cap_oracle(pts: &[SymplecticPoint]) -> (usize, usize) {
    let bits: Vec<u32> = pts.iter().map(|p| p.bits()).collect();
    let (mut caps, mut quadrics) = (0, 0);
    for five in bits.iter().combinations(5) {
        let no_line = five.iter().combinations(3).all(|t| *t[0] ^ *t[1] ^ *t[2] != 0);
        if !no_line {
            continue;
        }
        caps += 1;
        let no_plane = five.iter().combinations(4).all(|q| *q[0] ^ *q[1] ^ *q[2] ^ *q[3] != 0);
        if no_plane {
            quadrics += 1;
        }
    }
    (caps, quadrics)
}

fn ac5() -> Check {
    let words: BTreeSet<String> = catalog::HC_RECTANGLE
        .iter()
        .chain(catalog::HC_TWIN.iter())
        .flat_map(|(_, ws)| ws.iter().map(|w| w.to_string()))
        .collect();
    let mut products = 0;
    for (a, b) in itertools::iproduct!(&words, &words) {
        for (sa, sb) in [("", ""), ("-", ""), ("", "-"), ("-", "-")] {
            let (wa, wb) = (format!("{sa}{a}"), format!("{sb}{b}"));
            let product = obs(&wa).multiply(&obs(&wb)).map_err(|e| e.to_string())?;
            let expected = matmul(&matrix_of(&wa), &matrix_of(&wb));
            ensure!(expected == matrix_of(&product.to_string()), "{wa} * {wb} gave {product}");
            products += 1;
        }
    }

    let mut pairs = 0;
    for n in [2usize, 4] {
        let all = bks_geometry::geometry::all_points(n).map_err(|e| e.to_string())?;
        for (p, q) in itertools::iproduct!(&all, &all) {
            let (a, b) = (p.word(), q.word());
            let form = p.symplectic_form(*q).map_err(|e| e.to_string())?;
            let commute = obs(&a).commutes(&obs(&b)).map_err(|e| e.to_string())?;
            ensure!(commute == !form && commute == letters_commute(&a, &b), "{a} {b}");
            pairs += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (a, b) = (random_word(&mut rng, 4), random_word(&mut rng, 4));
        let (oa, ob) = (obs(&a), obs(&b));
        let commute = oa.commutes(&ob).map_err(|e| e.to_string())?;
        ensure!(commute == letters_commute(&a, &b), "{a} {b}");
        if let (Some(p), Some(q)) = (oa.to_point().ok(), ob.to_point().ok()) {
            ensure!(commute == !p.symplectic_form(q).map_err(|e| e.to_string())?, "{a} {b}");
        }
    }

    let census = ovoid_census(&SearchOptions::new(Shape::OvoidCensus, 4).seed(rectangle_seed()))
        .map_err(|e| e.to_string())?;
    ensure!(census.len() == 4, "{} generators", census.len());
    let mut counts = HashSet::new();
    for (entry, generator) in census.iter().zip(catalog::HC_GENERATORS) {
        let pts: Vec<SymplecticPoint> = generator.iter().map(|w| point(w)).collect();
        let (caps, quadrics) = cap_oracle(&pts);
        ensure!(pts.iter().combinations(5).count() == 3003, "subset count");
        ensure!(entry.count == quadrics, "census {} but oracle {quadrics}", entry.count);
        counts.insert((caps, quadrics));
    }
    ensure!(counts.len() == 1, "counts differ across generators: {counts:?}");
    let (caps, quadrics) = counts.into_iter().next().unwrap();
    Ok(format!(
        "{products} signed products, {pairs}+10000 commutation pairs, {quadrics} quadrics ({caps} 5-caps) in each generator"
    ))
}

// 6: searches.

fn ac6() -> Check {
    let options = SearchOptions::new(Shape::MerminSquare, 2);
    let squares = find_mermin_squares(&options).map_err(|e| e.to_string())?;
    let again = find_mermin_squares(&options).map_err(|e| e.to_string())?;
    ensure!(!squares.is_empty(), "no Mermin squares");
    ensure!(squares == again, "Mermin search is not deterministic");
    for m in &squares {
        let label = classify_set(&m.universe()).map_err(|e| e.to_string())?;
        ensure!(label.kind == GeometryKind::HyperbolicQuadricGrid, "square classified {:?}", label.kind);
        ensure!(parity_witness(m).map_err(|e| e.to_string())?.certified(), "square not certified");
    }

    let anchor = point(catalog::HC_PERSPECTIVITY_POINT);
    let options = SearchOptions::new(Shape::HcRectangle, 4).anchor(anchor).seed(rectangle_seed());
    let found = find_hc_rectangles(&options).map_err(|e| e.to_string())?;
    let keys: HashSet<Vec<Vec<u32>>> = found.iter().map(|m| m.canonical_key()).collect();
    ensure!(keys.contains(&catalog::hc_rectangle().canonical_key()), "original not found");
    ensure!(keys.contains(&catalog::hc_twin().canonical_key()), "twin not found");
    for m in &found {
        let t = complement_config(m, anchor).map_err(|e| e.to_string())?;
        ensure!(keys.contains(&t.canonical_key()), "result set not closed under projection");
        ensure!(parity_witness(m).map_err(|e| e.to_string())?.certified(), "rectangle not certified");
    }
    Ok(format!("{} Mermin squares, {} rectangles through IXII", squares.len(), found.len()))
}

// 7: subspace algebra.

fn closure_points(pts: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::new();
    for p in pts {
        let mut next = set.clone();
        next.insert(p);
        for q in &set {
            next.insert(p ^ q);
        }
        next.remove(&0);
        set = next;
    }
    set
}

fn rank_of(count: usize) -> usize {
    (count + 1).trailing_zeros() as usize
}

fn ac7() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..500 {
        let mut draw = || {
            let k = rng.random_range(0..=5);
            let vectors: Vec<u32> = (0..k).map(|_| rng.random_range(1..256)).collect();
            Subspace::from_vectors(vectors, 4).unwrap()
        };
        let (a, b) = (draw(), draw());
        let pa: BTreeSet<u32> = a.points().iter().map(|p| p.bits()).collect();
        let pb: BTreeSet<u32> = b.points().iter().map(|p| p.bits()).collect();
        let meet_oracle = pa.intersection(&pb).count();
        let join_oracle = closure_points(pa.iter().chain(&pb).copied()).len();
        let meet = a.intersect(&b).map_err(|e| e.to_string())?;
        let join = a.join(&b).map_err(|e| e.to_string())?;
        ensure!(meet.point_count() == meet_oracle, "meet of {a} and {b}");
        ensure!(join.point_count() == join_oracle, "join of {a} and {b}");
        ensure!(
            rank_of(meet_oracle) + rank_of(join_oracle) == a.rank() + b.rank(),
            "dimension formula fails for {a} and {b}"
        );
    }

    let hc = catalog::hc_rectangle();
    let anchor = point(catalog::HC_PERSPECTIVITY_POINT);
    let lines = intersection_lines(&hc);
    for (i, j) in (0..4).tuple_combinations() {
        let line = lines.get(&(i, j)).ok_or(format!("no line for {i},{j}"))?;
        let through = line.contains(anchor).map_err(|e| e.to_string())?;
        ensure!(line.rank() == 2 && through, "L{}{} = {line}", i + 1, j + 1);
        let si: BTreeSet<_> = hc.contexts()[i].points().into_iter().collect();
        let sj: BTreeSet<_> = hc.contexts()[j].points().into_iter().collect();
        let shared = si.intersection(&sj).count();
        ensure!(shared == 2, "S{} and S{} share {shared} observables", i + 1, j + 1);
    }
    Ok("500 random pairs, six rank-2 lines through IXII, pairwise 2 shared observables".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, u64, fn() -> Check); 7] = [
        ("AC1", "reproduction", 1, ac1),
        ("AC2", "classification", 1, ac2),
        ("AC3", "contradiction", 1, ac3),
        ("AC4", "twin", 1, ac4),
        ("AC5", "oracles", 10, ac5),
        ("AC6", "search", 60, ac6),
        ("AC7", "subspace algebra", 5, ac7),
    ];
    let mut failed = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed >= Duration::from_secs(budget) => {
                Err(format!("{msg}; took {elapsed:.2?}, budget {budget} s"))
            }
            other => other,
        };
        match result {
            Ok(msg) => println!("[PASS] {id} {title} ({elapsed:.2?} < {budget} s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {id} {title} ({elapsed:.2?}): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
