//! Round-trip properties shared by the fuzz targets and the corpus replay test.
#![allow(dead_code)]

use weyl_core::exactnum::{CycElem, CycField, Rat, TruncSeries};
use weyl_core::hcp::{parse_word, Hcpc};
use weyl_core::newton::Weight;
use weyl_core::normalform::GradedOp;
use weyl_core::pipeline::SuiteBounds;
use weyl_core::weyl::{parse_tame_word, parse_weyl, weyl_from_json, weyl_from_json_str, weyl_to_json};

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn rat(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(r) = s.parse::<Rat>() {
        assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }
}

pub fn cyc(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(e) = CycElem::parse(s) {
        assert_eq!(CycElem::parse(&e.to_string()).unwrap(), e);
    }
}

pub fn series(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(t) = TruncSeries::parse(s) {
        assert_eq!(TruncSeries::parse(&t.to_string()).unwrap(), t);
    }
}

pub fn weyl_text(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(p) = parse_weyl(s) {
        assert_eq!(parse_weyl(&p.to_string()).unwrap(), p);
        assert_eq!(weyl_from_json(&weyl_to_json(&p)).unwrap(), p);
    }
}

pub fn weyl_json(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(p) = weyl_from_json_str(s) {
        assert_eq!(weyl_from_json_str(&weyl_to_json(&p).to_string()).unwrap(), p);
        assert_eq!(parse_weyl(&p.to_string()).unwrap(), p);
    }
}

pub fn hcp_text(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(h) = Hcpc::parse(s) {
        assert_eq!(Hcpc::parse(&h.to_text()).unwrap(), h);
        assert_eq!(Hcpc::from_json(&h.to_json()).unwrap(), h);
    }
}

pub fn hcp_json(data: &[u8]) {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(h) = Hcpc::from_json(&v) {
        assert_eq!(Hcpc::from_json(&h.to_json()).unwrap(), h);
        assert_eq!(Hcpc::parse(&h.to_text()).unwrap(), h);
    }
}

pub fn graded_json(data: &[u8]) {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(g) = GradedOp::from_json(&v) {
        let back = GradedOp::from_json(&g.to_json()).unwrap();
        assert_eq!(back.to_json(), g.to_json());
    }
}

pub fn tame_word(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(w) = parse_tame_word(s) {
        let t: Vec<String> = w.iter().map(|g| g.to_string()).collect();
        assert_eq!(parse_tame_word(&t.join(" ")).unwrap(), w);
    }
}

/// First byte picks the conductor.
pub fn gen_word(data: &[u8]) {
    let Some((&k, rest)) = data.split_first() else { return };
    let Some(s) = text(rest) else { return };
    let f = CycField::new(k as u32 % 12 + 1).unwrap();
    if let Ok(w) = parse_word(s, &f) {
        let t: Vec<String> = w.iter().map(|g| g.to_string()).collect();
        assert_eq!(parse_word(&t.join(" "), &f).unwrap(), w);
    }
}

pub fn weight(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(w) = s.parse::<Weight>() {
        assert_eq!(format!("{},{}", w.sigma, w.rho).parse::<Weight>().unwrap(), w);
    }
}

pub fn suite_bounds(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let _ = s.parse::<SuiteBounds>();
}
