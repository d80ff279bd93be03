//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N: PASS|FAIL` line and enforces its own time limit.
//!
//! Run with `cargo test -p mobius-tree-cli --test acceptance -- --nocapture`
//! to see the summary lines.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path as FsPath, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use mobius_tree::*;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Runs `body`, prints the verdict line, then re-raises any failure.
fn criterion(
    id: u32,
    name: &str,
    limit: Option<Duration>,
    body: impl FnOnce() + std::panic::UnwindSafe,
) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    let over = limit.is_some_and(|l| elapsed >= l);
    let verdict = if outcome.is_ok() && !over {
        "PASS"
    } else {
        "FAIL"
    };
    let limit_text = limit.map_or("none".to_string(), |l| format!("{l:?}"));
    println!("criterion {id}: {verdict} - {name} ({elapsed:.2?}, limit {limit_text})");
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(!over, "criterion {id} took {elapsed:?}, limit {limit_text}");
}

fn p(c: &[u64]) -> Path {
    Path::from_slice(c)
}

fn m(a: u64, b: u64, c: u64, d: u64) -> MobiusMatrix {
    MobiusMatrix::from_u64(a, b, c, d).unwrap()
}

fn r(a: u64, b: u64) -> Ratio {
    Ratio::from_u64(a, b).unwrap()
}

fn n(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Random paths: depth 0..=12, components 1..=30; every fourth one ends in 1.
fn random_paths(seed: u64, count: usize) -> Vec<Path> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let depth = rng.gen_range(0..=12);
            let mut comps: Vec<u64> = (0..depth).map(|_| rng.gen_range(1..=30)).collect();
            if i % 4 == 0 && !comps.is_empty() {
                *comps.last_mut().unwrap() = 1;
            }
            p(&comps)
        })
        .collect()
}

/// Continued fraction with machine integers, evaluated bottom-up.
fn cf_oracle(components: &[u64]) -> (u128, u128) {
    let (last, init) = components.split_last().unwrap();
    let (mut num, mut den) = (*last as u128, 1u128);
    for q in init.iter().rev() {
        (num, den) = (*q as u128 * num + den, num);
    }
    (num, den)
}

/// Random tree through the public store API, with automatic slots and a
/// fanout cap. Returns the inserted paths in insertion order.
fn random_tree(rng: &mut StdRng, nodes: usize, max_fanout: usize) -> (TreeStore, Vec<Path>) {
    let mut store = TreeStore::new();
    let mut paths = Vec::with_capacity(nodes);
    let mut open: Vec<(NodeRef, usize)> = vec![(NodeRef::Root, 0)];
    while store.len() < nodes {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot].0.clone();
        let rec = store
            .add_child(parent, format!("n{}", store.len()), None)
            .unwrap();
        open[slot].1 += 1;
        if open[slot].1 == max_fanout {
            open.swap_remove(slot);
        }
        paths.push(rec.path());
        open.push((NodeRef::from(&rec), 0));
    }
    (store, paths)
}

#[test]
fn criterion_1_worked_examples() {
    criterion(
        1,
        "worked examples reproduce exactly",
        Some(Duration::from_secs(1)),
        || {
            let ids: Vec<BigUint> = [3u64, 12, 5, 1, 21].into_iter().map(n).collect();
            assert_eq!(euclid_quotients(&n(4913), &n(1594)).unwrap(), ids);
            assert_eq!(
                path_to_ratio(&p(&[3, 12, 5, 1, 21])).unwrap(),
                r(4913, 1594)
            );

            let deep = path_to_matrix(&p(&[3, 12, 5, 1, 21]));
            assert_eq!(deep, m(4913, 225, 1594, 73));

            assert_eq!(
                matrix_to_interval(&deep).to_string(),
                "(4913/1594, 5138/1667]"
            );
            let mid = path_to_matrix(&p(&[3, 12]));
            assert_eq!(matrix_to_interval(&mid).to_string(), "[40/13, 37/12)");
            let chain = [r(40, 13), r(4913, 1594), r(5138, 1667), r(37, 12)];
            assert!(chain.windows(2).all(|w| ratio_cmp(&w[0], &w[1]).is_lt()));
            assert!(matrix_to_interval(&mid).contains_interval(&matrix_to_interval(&deep)));

            assert_eq!(parent(&deep).unwrap().label().unwrap(), r(225, 73));
            assert_eq!(next_sibling(&deep).unwrap(), m(5138, 225, 1667, 73));

            // 1594*225 - 4913*73 = 1, i.e. 4913*(-73) + 1594*225 = 1.
            let (g, x, y) = ext_gcd(&n(4913), &n(1594)).unwrap();
            assert_eq!((g, x, y), (n(1), (-73).into(), 225.into()));
            assert_eq!(ratio_to_matrix(&r(4913, 1594)).unwrap(), deep);

            let frag = relative(&m(37, 3, 12, 1), &deep).unwrap();
            assert_eq!(frag, m(131, 6, 22, 1));
            assert_eq!(concat(&m(29, 4, 7, 1), &frag), m(3887, 178, 939, 43));
        },
    );
}

#[test]
fn criterion_2_determinant_law() {
    criterion(
        2,
        "det = (-1)^depth on 10^4 random paths",
        Some(Duration::from_secs(5)),
        || {
            let paths = random_paths(2, 10_000);
            for path in &paths {
                let det = path_to_matrix(path).determinant();
                let expected: num_bigint::BigInt = if path.len() % 2 == 0 {
                    1.into()
                } else {
                    (-1).into()
                };
                assert_eq!(det, expected, "{path}");
            }
        },
    );
}

#[test]
fn criterion_3_roundtrips() {
    criterion(
        3,
        "path/matrix, ratio/path, interval/matrix roundtrips",
        Some(Duration::from_secs(5)),
        || {
            let paths = random_paths(3, 10_000);
            let mut trailing_ones = 0;
            for path in &paths {
                let mx = path_to_matrix(path);
                assert_eq!(matrix_to_path(&mx).unwrap(), *path);
                assert_eq!(interval_to_matrix(&matrix_to_interval(&mx)).unwrap(), mx);
                if !path.is_empty() {
                    let label = path_to_ratio(path).unwrap();
                    assert_eq!(ratio_to_path(&label).unwrap(), path.canonicalize());
                    if !path.is_canonical() {
                        trailing_ones += 1;
                    }
                }
            }
            assert!(
                trailing_ones > 1000,
                "only {trailing_ones} non-canonical paths"
            );
        },
    );
}

#[test]
fn criterion_4_laminar_family() {
    criterion(
        4,
        "containment <=> prefix on 50 forests of <=500 nodes",
        Some(Duration::from_secs(30)),
        || {
            let mut rng = StdRng::seed_from_u64(4);
            for _ in 0..50 {
                let size = rng.gen_range(100..=500);
                let (store, _) = random_tree(&mut rng, size, 8);
                let nodes: Vec<(String, NestedInterval)> = store
                    .records()
                    .map(|rec| (format!("{}.", rec.path()), rec.interval()))
                    .collect();
                for (pa, ia) in &nodes {
                    for (pb, ib) in &nodes {
                        let prefix = pa != pb && pb.starts_with(pa.as_str());
                        let nested = pa != pb && ia.contains_interval(ib);
                        assert_eq!(nested, prefix, "{pa} vs {pb}");
                        if !prefix && pa != pb && !pa.starts_with(pb.as_str()) {
                            assert!(ia.is_disjoint(ib), "{pa} vs {pb}");
                        }
                    }
                }
                // Siblings, grouped by their parent's string path.
                let mut families: HashMap<String, Vec<&NestedInterval>> = HashMap::new();
                for (path, iv) in &nodes {
                    let trimmed = &path[..path.len() - 1];
                    let parent = trimmed
                        .rsplit_once('.')
                        .map_or("", |(head, _)| head)
                        .to_string();
                    families.entry(parent).or_default().push(iv);
                }
                for kids in families.values() {
                    for (i, a) in kids.iter().enumerate() {
                        for b in &kids[i + 1..] {
                            assert!(a.is_disjoint(b));
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_5_relocation() {
    criterion(
        5,
        "move_subtree matches path surgery on 100 trees",
        Some(Duration::from_secs(30)),
        || {
            let mut rng = StdRng::seed_from_u64(5);
            for round in 0..100 {
                let size = rng.gen_range(2..=200);
                let (mut store, paths) = random_tree(&mut rng, size, 8);
                let payload_of: BTreeMap<Vec<BigUint>, String> = store
                    .records()
                    .map(|rec| (rec.path().components().to_vec(), rec.payload().to_string()))
                    .collect();
                let as_vecs: Vec<Vec<BigUint>> =
                    paths.iter().map(|q| q.components().to_vec()).collect();

                let src = as_vecs[rng.gen_range(0..as_vecs.len())].clone();
                let mut targets: Vec<Vec<BigUint>> = vec![Vec::new()];
                targets.extend(as_vecs.iter().filter(|q| !q.starts_with(&src)).cloned());
                let dest = targets[rng.gen_range(0..targets.len())].clone();

                // Oracle slot: explicit free index half the time, else max + 1.
                let used: Vec<BigUint> = as_vecs
                    .iter()
                    .filter(|q| q.len() == dest.len() + 1 && q.starts_with(&dest))
                    .map(|q| q.last().unwrap().clone())
                    .collect();
                let (index_arg, slot) = if round % 2 == 0 {
                    let mut k = n(rng.gen_range(1..=12));
                    while used.contains(&k)
                        && !(dest.len() + 1 == src.len()
                            && src.starts_with(&dest)
                            && *src.last().unwrap() == k)
                    {
                        k += 1u32;
                    }
                    (Some(k.clone()), k)
                } else {
                    (None, used.iter().max().cloned().unwrap_or_default() + 1u32)
                };
                let mut new_root = dest.clone();
                new_root.push(slot);

                let count = store
                    .move_subtree(
                        Path::new(src.clone()).unwrap(),
                        Path::new(dest.clone()).unwrap(),
                        index_arg,
                    )
                    .unwrap();

                let mut expected: BTreeMap<Vec<BigUint>, String> = BTreeMap::new();
                let mut moved = 0;
                for (old, payload) in &payload_of {
                    let new = if old.starts_with(&src) {
                        moved += 1;
                        let mut v = new_root.clone();
                        v.extend_from_slice(&old[src.len()..]);
                        v
                    } else {
                        old.clone()
                    };
                    expected.insert(new, payload.clone());
                }
                let actual: BTreeMap<Vec<BigUint>, String> = store
                    .records()
                    .map(|rec| (rec.path().components().to_vec(), rec.payload().to_string()))
                    .collect();
                assert_eq!(count, moved);
                assert_eq!(actual, expected, "round {round}");
                for path in actual.keys() {
                    let rec = store.resolve(&Path::new(path.clone()).unwrap()).unwrap();
                    assert_eq!(
                        rec.matrix(),
                        &path_to_matrix(&Path::new(path.clone()).unwrap())
                    );
                }
                store.check_integrity().unwrap();
            }
        },
    );
}

#[test]
fn criterion_6_ancestors_are_convergents() {
    criterion(
        6,
        "store ancestors = convergents for 10^3 canonical nodes",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = StdRng::seed_from_u64(6);
            let mut store = TreeStore::new();
            let mut targets = Vec::new();
            while targets.len() < 1000 {
                let depth = rng.gen_range(1..=12);
                let mut comps: Vec<u64> = (0..depth).map(|_| rng.gen_range(1..=30)).collect();
                if depth > 1 && *comps.last().unwrap() == 1 {
                    *comps.last_mut().unwrap() = rng.gen_range(2..=30);
                }
                let path = p(&comps);
                assert!(path.is_canonical());
                if store.resolve(&path).is_ok() {
                    continue;
                }
                let mut cur = Path::root();
                for q in path.components() {
                    let next = cur.child(q.clone()).unwrap();
                    if store.resolve(&next).is_err() {
                        store.add_child(&cur, "", Some(q.clone())).unwrap();
                    }
                    cur = next;
                }
                targets.push(path);
            }
            for path in &targets {
                let labels: Vec<Ratio> = store
                    .ancestors(path)
                    .unwrap()
                    .iter()
                    .map(NodeRecord::label)
                    .collect();
                let mut conv = convergents(&path_to_ratio(path).unwrap()).unwrap();
                assert_eq!(conv.pop().unwrap(), path_to_ratio(path).unwrap());
                assert_eq!(labels, conv, "{path}");
            }
        },
    );
}

#[test]
fn criterion_7_growth_bound() {
    criterion(
        7,
        "all-ones depth 40 gives Fibonacci(41) = 165580141",
        None,
        || {
            let (num, _) = cf_oracle(&[1; 40]);
            assert_eq!(num, 165_580_141);
            let deep = path_to_matrix(&p(&[1; 40]));
            assert_eq!(deep.a(), &BigUint::from(num));

            let mut store = TreeStore::new();
            let mut cur = NodeRef::Root;
            for _ in 0..40 {
                let rec = store.add_child(cur, "", None).unwrap();
                cur = NodeRef::from(&rec);
            }
            let stats = store.stats();
            assert_eq!(stats.max_depth, 40);
            assert_eq!(stats.max_numerator, BigUint::from(num));
            assert_eq!(stats.max_numerator_bits, 28);
        },
    );
}

#[test]
fn criterion_8_scale_smoke() {
    criterion(
        8,
        "100k-node store: build, save, load, descendants",
        Some(Duration::from_secs(30)),
        || {
            let mut rng = StdRng::seed_from_u64(8);
            let (store, paths) = random_tree(&mut rng, 100_000, 8);
            assert_eq!(store.len(), 100_000);

            let dir = tempfile::tempdir().unwrap();
            let file = dir.path().join("big.mt");
            store.save_file(&file).unwrap();
            let loaded = TreeStore::load_file(&file).unwrap();
            assert_eq!(loaded.len(), store.len());

            // Top-level node with the biggest subtree.
            let mut sizes: HashMap<&BigUint, usize> = HashMap::new();
            for path in &paths {
                *sizes.entry(&path.components()[0]).or_default() += 1;
            }
            let (&top, _) = sizes
                .iter()
                .max_by_key(|(k, v)| (**v, (**k).clone()))
                .unwrap();
            let top = Path::new(vec![top.clone()]).unwrap();

            let got = loaded.descendants(&top).unwrap();
            let mut got: Vec<Path> = got.iter().map(NodeRecord::path).collect();
            let mut expected: Vec<Path> = paths
                .iter()
                .filter(|q| **q != top && top.is_prefix_of(q))
                .cloned()
                .collect();
            got.sort();
            expected.sort();
            assert!(expected.len() > 1000);
            assert_eq!(got, expected);
        },
    );
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mobius-tree"))
        .args(args)
        .output()
        .expect("run mobius-tree");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn check_golden(args: &[&str], name: &str) {
    let (code, out) = cli(args);
    assert_eq!(code, 0, "{args:?}");
    assert_eq!(out, golden(name), "{args:?} vs {name}");
}

fn seed_example_store(file: &FsPath) {
    let f = file.to_str().unwrap();
    assert_eq!(cli(&["init", f]).0, 0);
    for (parent, index, payload) in [
        ("root", "3", "three"),
        ("3", "12", "a"),
        ("3.12", "5", "b"),
        ("3.12.5", "1", "c"),
        ("3.12.5.1", "21", "deep"),
        ("root", "4", "four"),
        ("4", "7", "target"),
    ] {
        let (code, _) = cli(&[
            "add",
            f,
            "--parent",
            parent,
            "--index",
            index,
            "--payload",
            payload,
        ]);
        assert_eq!(code, 0);
    }
}

#[test]
fn criterion_9_cli_golden_outputs() {
    criterion(9, "CLI output byte-matches golden files", None, || {
        check_golden(
            &["encode", "--path", "3.12.5.1.21"],
            "encode_path_3.12.5.1.21.out",
        );
        check_golden(
            &["encode", "--ratio", "4913/1594"],
            "encode_ratio_4913_1594.out",
        );
        check_golden(
            &["encode", "--matrix", "4913,225,1594,73"],
            "encode_matrix_4913_225_1594_73.out",
        );
        check_golden(
            &["encode", "--path", "3.12.5.1.22"],
            "encode_path_3.12.5.1.22.out",
        );
        check_golden(&["encode", "--path", "5.1.21"], "encode_path_5.1.21.out");
        check_golden(
            &["encode", "--matrix", "29,4,7,1"],
            "encode_matrix_29_4_7_1.out",
        );
        check_golden(&["encode", "--ratio", "1/1"], "encode_ratio_1_1.out");
        check_golden(
            &["encode", "--matrix", "3887,178,939,43"],
            "encode_matrix_3887_178_939_43.out",
        );
        check_golden(
            &["decode", "--interval", "(4913/1594, 5138/1667]"],
            "decode_4913_1594.out",
        );
        check_golden(
            &["decode", "--interval", "[40/13, 37/12)"],
            "decode_40_13.out",
        );
        check_golden(&["decode", "--interval", "[1/1, inf)"], "decode_root.out");

        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("example.mt");
        let f = file.to_str().unwrap();
        seed_example_store(&file);
        check_golden(
            &["ancestors", f, "--node", "3.12.5.1.21"],
            "ancestors_3.12.5.1.21.out",
        );
        check_golden(
            &["mv", f, "--node", "3.12.5", "--to", "4.7", "--index", "5"],
            "mv_3.12.5_to_4.7.out",
        );
        check_golden(
            &["descendants", f, "--node", "4.7"],
            "descendants_4.7_after_mv.out",
        );
        let moved = TreeStore::load_file(&file).unwrap();
        let deep = moved.resolve(&p(&[4, 7, 5, 1, 21])).unwrap();
        check_golden(
            &["encode", "--matrix", &deep.matrix().to_string()],
            "encode_matrix_3887_178_939_43.out",
        );
    });
}
