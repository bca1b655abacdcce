//! Independent oracles shared by the integration tests. Nothing here calls
//! into the cost functions under test.

#![allow(dead_code)]

use std::collections::HashSet;

/// Every permutation of `base`, in lexicographic index order.
pub fn permutations(base: &[u32]) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut base.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Differences are exactly {1..n-1}.
pub fn is_all_interval(notes: &[u32]) -> bool {
    let n = notes.len();
    let diffs: HashSet<u32> = notes.windows(2).map(|w| w[0].abs_diff(w[1])).collect();
    diffs.len() == n - 1 && (1..n as u32).all(|d| diffs.contains(&d))
}

/// Sum of |line sum - constant| over rows, columns and both diagonals.
pub fn magic_line_error(values: &[u32], side: usize) -> u64 {
    let constant = (side * (side * side + 1) / 2) as i64;
    let at = |r: usize, c: usize| values[r * side + c] as i64;
    let mut lines: Vec<i64> = Vec::new();
    for r in 0..side {
        lines.push((0..side).map(|c| at(r, c)).sum());
    }
    for c in 0..side {
        lines.push((0..side).map(|r| at(r, c)).sum());
    }
    lines.push((0..side).map(|i| at(i, i)).sum());
    lines.push((0..side).map(|i| at(i, side - 1 - i)).sum());
    lines.iter().map(|s| (s - constant).unsigned_abs()).sum()
}

pub fn is_magic(values: &[u32], side: usize) -> bool {
    magic_line_error(values, side) == 0
}

/// |sum A - target| + |sum of squares A - target|.
pub fn partition_error(values: &[u32]) -> u64 {
    let n = values.len() as i64;
    let half = &values[..values.len() / 2];
    let s: i64 = half.iter().map(|&v| v as i64).sum();
    let q: i64 = half.iter().map(|&v| (v as i64) * (v as i64)).sum();
    (s - n * (n + 1) / 4).unsigned_abs() + (q - n * (n + 1) * (2 * n + 1) / 12).unsigned_abs()
}

/// Axis-aligned squares (size, x, y) cover the master exactly, without
/// overlap, inside the boundary.
pub fn squares_tile(squares: &[(u32, u32, u32)], master: u32) -> bool {
    let inside = squares.iter().all(|&(s, x, y)| x + s <= master && y + s <= master);
    let disjoint = squares.iter().enumerate().all(|(i, a)| {
        squares[i + 1..].iter().all(|b| {
            a.1 + a.0 <= b.1 || b.1 + b.0 <= a.1 || a.2 + a.0 <= b.2 || b.2 + b.0 <= a.2
        })
    });
    let area: u64 = squares.iter().map(|&(s, _, _)| s as u64 * s as u64).sum();
    inside && disjoint && area == master as u64 * master as u64
}

/// Runs the command-line binary, returning exit code, stdout and stderr.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_adaptive-search"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// A `solve --json` document with the wall-clock fields removed.
pub fn untimed_json(stdout: &str) -> serde_json::Value {
    let mut doc: serde_json::Value = serde_json::from_str(stdout).expect("json output");
    let obj = doc.as_object_mut().unwrap();
    obj.remove("elapsed_ms");
    for w in obj["per_worker"].as_array_mut().unwrap() {
        w.as_object_mut().unwrap().remove("finished_after");
    }
    doc
}
