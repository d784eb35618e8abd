//! Depth two across the whole subgroup lattice of a permutation group.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::algebra::{subgroup_extension, AlgebraError, PermGroup};
use crate::depth_two::is_d2;
use crate::galois::{galois_verdict, Pipeline};
use crate::linalg::Field;
use crate::report::{Count, Verdict, TOOL, VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    /// a generating set, e.g. `<(1 2 3)>`
    pub subgroup: String,
    pub elements: Vec<String>,
    pub order: Count,
    pub normal: bool,
    pub d2: bool,
    /// decided only for right depth-two rows
    pub galois: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub tool: String,
    pub version: String,
    pub field: String,
    pub degree: Count,
    pub group_order: Count,
    pub rows: Vec<ScanRow>,
    pub normal_count: Count,
    pub d2_count: Count,
    /// d2 ⟺ normal on every row
    pub consistent: bool,
}

impl ScanDocument {
    pub fn exit_code(&self) -> i32 {
        Verdict::of(self.consistent).exit_code()
    }
}

/// Greedy generating set: walk the elements in order, keep those outside the closure so far.
pub fn label(group: &PermGroup, sub: &[usize]) -> String {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0];
    for &h in sub {
        if span.binary_search(&h).is_err() {
            gens.push(h);
            span = group.closure(&gens);
        }
    }
    if gens.is_empty() {
        return "<e>".into();
    }
    let names: Vec<String> = gens.iter().map(|&g| group.elements()[g].cycle_notation()).collect();
    format!("<{}>", names.join(", "))
}

fn row(group: &PermGroup, sub: &[usize], field: Field) -> Result<ScanRow, AlgebraError> {
    let ext = subgroup_extension(group, sub, field)?;
    let p = Pipeline::new(&ext);
    let d = is_d2(&ext, &p.ts, &p.t, &p.s);
    let galois = match &d.right {
        Ok(qb) => Some(galois_verdict(&ext, &p, qb).unwrap_or(false)),
        Err(_) => None,
    };
    Ok(ScanRow {
        subgroup: label(group, sub),
        elements: sub.iter().map(|&h| group.elements()[h].cycle_notation()).collect(),
        order: sub.len().into(),
        normal: group.is_normal(sub),
        d2: d.is_d2(),
        galois,
    })
}

/// Scans every subgroup; fails when the group is larger than `cap`.
pub fn subgroup_scan(group: &PermGroup, field: Field, cap: usize) -> Result<ScanDocument, AlgebraError> {
    if group.order() > cap {
        return Err(AlgebraError::OrderCapExceeded { cap });
    }
    let subs = group.subgroups();
    // no threads at all on targets without them (wasm32)
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(subs.len());
    let rows = if workers <= 1 {
        subs.iter().map(|h| row(group, h, field)).collect::<Result<Vec<_>, _>>()?
    } else {
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<Option<Result<ScanRow, AlgebraError>>>> = Mutex::new(vec![None; subs.len()]);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= subs.len() {
                        break;
                    }
                    let r = row(group, &subs[i], field);
                    results.lock().expect("no worker panicked")[i] = Some(r);
                });
            }
        });
        results
            .into_inner()
            .expect("no worker panicked")
            .into_iter()
            .map(|r| r.expect("every row computed"))
            .collect::<Result<Vec<_>, _>>()?
    };
    let normal_count = rows.iter().filter(|r| r.normal).count();
    let d2_count = rows.iter().filter(|r| r.d2).count();
    let consistent = rows.iter().all(|r| r.d2 == r.normal);
    Ok(ScanDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        field: field.to_string(),
        degree: group.degree().into(),
        group_order: group.order().into(),
        rows,
        normal_count: normal_count.into(),
        d2_count: d2_count.into(),
        consistent,
    })
}

pub fn render_scan_text(doc: &ScanDocument) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let width = doc.rows.iter().map(|r| r.subgroup.chars().count()).max().unwrap_or(0).max(8);
    let mut out = String::new();
    let _ = writeln!(out, "group of order {} on {} points, field {}", doc.group_order, doc.degree, doc.field);
    let _ = writeln!(out, "\n{:<width$}  {:>5}  {:<6}  {:<3}  galois", "subgroup", "order", "normal", "d2");
    for r in &doc.rows {
        let pad = width - r.subgroup.chars().count();
        let _ = writeln!(
            out,
            "{}{}  {:>5}  {:<6}  {:<3}  {}",
            r.subgroup,
            " ".repeat(pad),
            r.order.to_string(),
            yn(r.normal),
            yn(r.d2),
            r.galois.map_or("-", yn)
        );
    }
    let _ = writeln!(
        out,
        "\n{} subgroups, {} normal, {} depth two; d2 matches normality: {}",
        doc.rows.len(),
        doc.normal_count,
        doc.d2_count,
        yn(doc.consistent)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{named, DEFAULT_ORDER_CAP, DEFAULT_SCAN_CAP};

    fn group(spec: (usize, Vec<Vec<Vec<usize>>>)) -> PermGroup {
        PermGroup::from_cycle_lists(spec.0, &spec.1, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn labels() {
        let g = group(named::symmetric3());
        let subs = g.subgroups();
        assert_eq!(label(&g, &subs[0]), "<e>");
        assert_eq!(label(&g, &subs[4]), "<(1 2 3)>");
    }

    #[test]
    fn cap_is_enforced() {
        let g = group(named::symmetric3());
        assert!(matches!(subgroup_scan(&g, Field::Rational, 5), Err(AlgebraError::OrderCapExceeded { cap: 5 })));
        assert!(subgroup_scan(&g, Field::Rational, DEFAULT_SCAN_CAP).is_ok());
    }
}
