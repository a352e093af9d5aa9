//! JSON records for results and witnesses.

use serde_json::{json, Map, Value as Json};

use crate::comb::{CovResult, CovValue, FolnerBox, Homothety, PackResult, PackValue, PartitionReport, T92Report};
use crate::dens::{Column, DensityResult, Value, Witness};
use crate::grp::{Element, Group};
use crate::lang::print_element;
use crate::rational::{to_pq, Rational};

pub(crate) fn rat(r: &Rational) -> Json {
    Json::String(to_pq(r))
}

pub(crate) fn elem(g: &Group, e: &Element) -> Json {
    Json::String(print_element(g, e))
}

pub(crate) fn elems(g: &Group, es: &[Element]) -> Json {
    Json::Array(es.iter().map(|e| elem(g, e)).collect())
}

/// Record skeleton shared by every result line.
pub(crate) fn record(quantity: &str, group: &str, set: Json) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("quantity".into(), json!(quantity));
    m.insert("group".into(), json!(group));
    m.insert("set".into(), set);
    m
}

pub(crate) fn put_value(m: &mut Map<String, Json>, v: &Value) {
    m.insert("kind".into(), json!(v.kind()));
    match v {
        Value::Exact(x) | Value::UpperBound(x) | Value::LowerBound(x) => {
            m.insert("value".into(), rat(x));
        }
        Value::Interval(lo, hi) => {
            m.insert("lo".into(), rat(lo));
            m.insert("hi".into(), rat(hi));
        }
    }
}

fn witness_json(g: &Group, w: &Witness) -> Map<String, Json> {
    let mut m = Map::new();
    if let Some(mu) = &w.measure {
        m.insert(
            "measure".into(),
            Json::Array(mu.iter().map(|(x, p)| json!([print_element(g, x), to_pq(p)])).collect()),
        );
    }
    if !w.dual.is_empty() {
        let cols = w
            .dual
            .iter()
            .map(|(c, p)| match c {
                Column::Point(x) => json!([[print_element(g, x)], to_pq(p)]),
                Column::Pair(x, y) => json!([[print_element(g, x), print_element(g, y)], to_pq(p)]),
            })
            .collect();
        m.insert("dual".into(), Json::Array(cols));
    }
    if !w.points.is_empty() {
        m.insert("points".into(), elems(g, &w.points));
    }
    if !w.trace.is_empty() {
        m.insert("trace".into(), Json::Array(w.trace.iter().map(rat).collect()));
    }
    m
}

pub(crate) fn density(quantity: &str, group: &str, set: Json, g: &Group, r: &DensityResult) -> Map<String, Json> {
    let mut m = record(quantity, group, set);
    put_value(&mut m, &r.value);
    m.insert("method".into(), json!(r.method.tag()));
    let mut w = witness_json(g, &r.witness);
    if let Some(c) = &r.certificate {
        w.insert("certificate".into(), json!({"upper": to_pq(&c.upper), "lower": to_pq(&c.lower)}));
    }
    m.insert("witness".into(), Json::Object(w));
    m
}

pub(crate) fn pack_json(g: &Group, p: &PackResult) -> Json {
    let (kind, v) = match p.value {
        PackValue::Exact(k) => ("exact", k),
        PackValue::AtLeast(k) => ("lower", k),
    };
    json!({"kind": kind, "value": v, "witness": elems(g, &p.witness)})
}

pub(crate) fn cov_json(g: &Group, c: &CovResult) -> Json {
    match c.value {
        CovValue::Exact(k) => json!({"kind": "exact", "value": k, "witness": elems(g, &c.witness)}),
        CovValue::AtMost(k) => json!({"kind": "upper", "value": k, "witness": elems(g, &c.witness)}),
        CovValue::Infinite => json!({"kind": "infinite", "witness": []}),
    }
}

/// Lifts a `{kind, value, witness}` object into a result record.
pub(crate) fn index_record(quantity: &str, group: &str, set: Json, method: &str, inner: Json) -> Map<String, Json> {
    let mut m = record(quantity, group, set);
    let Json::Object(o) = inner else { unreachable!() };
    for (k, v) in o {
        m.insert(k, v);
    }
    m.insert("method".into(), json!(method));
    m
}

pub(crate) fn homothety_json(g: &Group, h: &Option<Homothety>) -> Json {
    match h {
        Some(h) => json!({"degree": h.degree, "constants": elems(g, &h.constants)}),
        None => Json::Null,
    }
}

pub(crate) fn folner_json(b: &FolnerBox) -> Json {
    json!({"side": b.side, "boundary": b.boundary, "volume": b.volume, "defect": to_pq(&b.defect)})
}

pub(crate) fn t92_json(g: &Group, r: &T92Report) -> Json {
    let mut sis = Map::new();
    put_value(&mut sis, &r.sis123);
    json!({
        "sis123": sis,
        "bound": r.bound,
        "strict_bound": r.strict_bound,
        "conjugators": elems(g, &r.conjugators),
        "cover": cov_json(g, &r.cover),
        "holds": r.holds,
        "holds_strict": r.holds_strict,
        "square_cover": cov_json(g, &r.square_cover),
    })
}

pub(crate) fn partition_json(g: &Group, r: &PartitionReport) -> Json {
    let cells: Vec<Json> = r
        .cells
        .iter()
        .map(|c| {
            json!({
                "cell": elems(g, &c.cell),
                "is12": to_pq(&c.is12),
                "iss213": to_pq(&c.iss213),
                "pack": pack_json(g, &c.pack),
                "difference_cover": cov_json(g, &c.difference_cover),
                "conjugation_invariant": c.conjugation_invariant,
            })
        })
        .collect();
    let conj = r.conjugate_cover.as_ref().map(|c| {
        json!({"cell": c.cell, "conjugators": elems(g, &c.conjugators), "cover": cov_json(g, &c.cover)})
    });
    json!({
        "cells": cells,
        "small_difference_cover": r.small_difference_cover,
        "best_cell": r.best_cell,
        "minimal_cover": cov_json(g, r.minimal_cover()),
        "brs_bound": r.brs_bound,
        "within_brs_bound": r.within_brs_bound,
        "conjugate_cover": conj,
        "invariant_cells_bound": r.invariant_cells_bound,
        "passed": r.passed(),
    })
}
